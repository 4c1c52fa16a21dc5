//! Test-local oracles built only on field arithmetic, so that they share no
//! code with the polynomial and Ore-ring routines under test.

#![allow(dead_code)]

use orecomp::{make_field, AdditivePoly, FieldCtx, FieldElement};

/// `(p, d0, d)` for every tower with `q ≤ 9`.
pub const SMALL_TOWERS: &[(u64, u32, u32)] = &[
    (2, 1, 1),
    (3, 1, 1),
    (2, 1, 2),
    (2, 2, 1),
    (5, 1, 1),
    (7, 1, 1),
    (2, 1, 3),
    (2, 3, 1),
    (3, 1, 2),
    (3, 2, 1),
];

pub fn field(p: u64, d0: u32, d: u32) -> FieldCtx {
    make_field(p, d0, d, None, 7).expect("valid tower")
}

/// Coefficients constant-first, trailing zeros trimmed.
pub type Coeffs = Vec<FieldElement>;

pub fn trim(mut c: Coeffs) -> Coeffs {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

pub fn naive_mul(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
    trim(out)
}

pub fn naive_add(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Coeffs {
    let mut out = vec![FieldElement::ZERO; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] = x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = ctx.add(out[i], y);
    }
    trim(out)
}

/// `g(h(x))` by Horner's rule.
pub fn naive_compose(ctx: &FieldCtx, g: &[FieldElement], h: &[FieldElement]) -> Coeffs {
    let mut acc: Coeffs = Vec::new();
    for &c in g.iter().rev() {
        acc = naive_mul(ctx, &acc, h);
        acc = naive_add(ctx, &acc, &[c]);
    }
    acc
}

pub fn naive_eval(ctx: &FieldCtx, f: &[FieldElement], x: FieldElement) -> FieldElement {
    f.iter()
        .rev()
        .fold(FieldElement::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

/// Ordinary coefficients of `Σ a_i x^{r^i}`.
pub fn expand(ctx: &FieldCtx, f: &AdditivePoly) -> Coeffs {
    let r = ctx.r() as usize;
    let mut out = Vec::new();
    let mut e = 1usize;
    for &c in f.coeffs() {
        if out.len() <= e {
            out.resize(e + 1, FieldElement::ZERO);
        }
        out[e] = c;
        e *= r;
    }
    trim(out)
}

/// Quotient and remainder by a monic divisor.
pub fn naive_divmod(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> (Coeffs, Coeffs) {
    let nb = b.len() - 1;
    assert!(b[nb].is_one());
    let mut rem = a.to_vec();
    if rem.len() <= nb {
        return (Vec::new(), trim(rem));
    }
    let mut quo = vec![FieldElement::ZERO; rem.len() - nb];
    for i in (nb..rem.len()).rev() {
        let c = rem[i];
        if c.is_zero() {
            continue;
        }
        quo[i - nb] = c;
        for (j, &bj) in b.iter().enumerate() {
            let k = i - nb + j;
            rem[k] = ctx.sub(rem[k], ctx.mul(c, bj));
        }
    }
    (trim(quo), trim(rem))
}

/// The `g` with `f = g ∘ h`, via the `h`-adic expansion of `f`, when every
/// digit is a constant. `h` must be monic of positive degree.
pub fn left_factor(ctx: &FieldCtx, f: &[FieldElement], h: &[FieldElement]) -> Option<Coeffs> {
    let mut rest = trim(f.to_vec());
    let mut g = Vec::new();
    while !rest.is_empty() {
        let (quo, rem) = naive_divmod(ctx, &rest, h);
        if rem.len() > 1 {
            return None;
        }
        g.push(rem.first().copied().unwrap_or(FieldElement::ZERO));
        rest = quo;
    }
    Some(trim(g))
}

/// Number of `c` with `x^r − cx` a right component of the additive `f`.
pub fn degree_r_components(ctx: &FieldCtx, f: &AdditivePoly) -> u128 {
    let dense = expand(ctx, f);
    let r = ctx.r() as usize;
    ctx.elements()
        .filter(|&c| {
            let mut h = vec![FieldElement::ZERO; r + 1];
            h[1] = ctx.neg(c);
            h[r] = ctx.one();
            left_factor(ctx, &dense, &h).is_some()
        })
        .count() as u128
}

/// Whether the monic additive `f` of skew degree `n` has a monic additive
/// right component of skew degree strictly between 0 and `n`.
pub fn is_decomposable(ctx: &FieldCtx, f: &AdditivePoly) -> bool {
    let n = f.skew_degree().expect("nonzero");
    let dense = expand(ctx, f);
    let q = ctx.q();
    for k in 1..n {
        let count = q.pow(k as u32);
        for mut idx in 0..count {
            let mut c = Vec::with_capacity(k + 1);
            for _ in 0..k {
                c.push(FieldElement::from_index(idx % q));
                idx /= q;
            }
            c.push(ctx.one());
            let h = expand(ctx, &AdditivePoly::new(c));
            if left_factor(ctx, &dense, &h).is_some() {
                return true;
            }
        }
    }
    false
}

/// All monic additive polynomials of skew degree `n`.
pub fn monic_additive(ctx: &FieldCtx, n: usize) -> Vec<AdditivePoly> {
    let q = ctx.q();
    (0..q.pow(n as u32))
        .map(|mut idx| {
            let mut c = Vec::with_capacity(n + 1);
            for _ in 0..n {
                c.push(FieldElement::from_index(idx % q));
                idx /= q;
            }
            c.push(ctx.one());
            AdditivePoly::new(c)
        })
        .collect()
}

/// Number of `x ∈ F_q` with `f(x) = 0`.
pub fn root_count(ctx: &FieldCtx, f: &[FieldElement]) -> u64 {
    ctx.elements()
        .filter(|&x| naive_eval(ctx, f, x).is_zero())
        .count() as u64
}
