//! The Frobenius action on root spaces of additive polynomials.
//!
//! For a squarefree `f ∈ F_q[x;r]` of skew degree `n`, the roots form an
//! `n`-dimensional `F_r`-space on which `a ↦ a^q` acts linearly. Its rational
//! Jordan form is read off from the degrees of `gcrc(τ⁻¹(u^j), f)` for the
//! irreducible factors `u` of `τ(mclc f)`; invariant lines correspond to
//! degree-`r` right components.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::ore::{AdditivePoly, CentralPoly};
use crate::poly::{BaseField, DensePoly};

/// Seed for factoring `τ(f*)`; the factorization itself is canonical.
const FACTOR_SEED: u64 = 0x6a0d;

/// One irreducible eigenfactor with the sizes of its companion blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    /// Monic irreducible polynomial over `F_r`.
    pub factor: DensePoly,
    /// Block multiplicities in increasing order.
    pub mults: Vec<usize>,
}

/// Block structure of the Frobenius matrix on an `F_r`-space of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalJordanForm {
    pub blocks: Vec<JordanBlock>,
    pub dim: usize,
}

impl RationalJordanForm {
    /// Checks that factors are distinct, multiplicities sorted and positive,
    /// and that the block sizes add up to `dim`.
    pub fn new(blocks: Vec<JordanBlock>, dim: usize) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for b in &blocks {
            let s = b.factor.degree().filter(|&s| s > 0).ok_or_else(|| {
                Error::InvalidParams("eigenfactor must have positive degree".into())
            })?;
            if !seen.insert(b.factor.clone()) {
                return Err(Error::InvalidParams("repeated eigenfactor".into()));
            }
            if b.mults.contains(&0) || b.mults.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidParams(
                    "multiplicities must be positive and sorted".into(),
                ));
            }
            total += s * b.mults.iter().sum::<usize>();
        }
        if total != dim {
            return Err(Error::InvalidParams(format!(
                "blocks cover dimension {total}, expected {dim}"
            )));
        }
        Ok(RationalJordanForm { blocks, dim })
    }

    /// Number of invariant `F_r`-lines: each linear eigenfactor with `k`
    /// blocks contributes the `(r^k − 1)/(r − 1)` lines of its eigenspace.
    pub fn invariant_line_count(&self, r: u64) -> u128 {
        self.blocks
            .iter()
            .filter(|b| b.factor.degree() == Some(1))
            .map(|b| phi(r, b.mults.len() as u32))
            .sum()
    }
}

/// `φ_{r,m} = (r^m − 1)/(r − 1) = 1 + r + … + r^{m−1}`.
pub fn phi(r: u64, m: u32) -> u128 {
    (0..m).map(|i| (r as u128).pow(i)).sum()
}

/// Rational Jordan form of the `q`-Frobenius on the roots of a squarefree `f`.
pub fn find_jordan(ctx: &FieldCtx, f: &AdditivePoly) -> Result<RationalJordanForm> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let (ore, pr) = (ctx.ore(), ctx.poly());
    let f = ore.monic(f);
    let n = f.skew_degree().expect("nonzero");
    if n == 0 {
        return RationalJordanForm::new(Vec::new(), 0);
    }
    let tau = ore.mclc(&f)?.into_y_poly();
    let mut blocks = Vec::new();
    for (u, omega) in pr.factor(&tau, BaseField::Fr, FACTOR_SEED)? {
        let s = u.degree().expect("irreducible factor");
        let omega = omega as usize;
        // xi[j] = dim ker u(S)^j / s, saturating after omega
        let mut xi = vec![0usize];
        let mut power = DensePoly::one();
        for _ in 0..omega {
            power = pr.mul(&power, &u);
            let lifted = ore.tau_inv(&CentralPoly::new(ctx, power.clone())?);
            let h = ore.gcrc(&lifted, &f)?;
            let deg = h.skew_degree().expect("gcrc of nonzero input");
            assert_eq!(deg % s, 0, "kernel dimension must be a multiple of deg u");
            xi.push(deg / s);
        }
        xi.push(xi[omega]);
        let mut mults = Vec::new();
        for j in 1..=omega {
            let exactly_j = (xi[j] - xi[j - 1]) - (xi[j + 1] - xi[j]);
            mults.extend(std::iter::repeat_n(j, exactly_j));
        }
        blocks.push(JordanBlock { factor: u, mults });
    }
    let form = RationalJordanForm::new(blocks, n);
    debug_assert!(form.is_ok(), "{form:?}");
    form
}

/// Number of monic right components of degree `r` (skew degree one).
pub fn right_component_count(ctx: &FieldCtx, f: &AdditivePoly) -> Result<u128> {
    let ore = ctx.ore();
    let (t, h) = ore.squarefree_split(f)?;
    if f.skew_degree() == Some(0) {
        return Ok(0);
    }
    // x^r itself is a right component exactly when f is not squarefree; every
    // other x^r − cx has a line of roots that must be a Frobenius-stable line of V_h
    let lines = find_jordan(ctx, &h)?.invariant_line_count(ctx.r());
    Ok(u128::from(t >= 1) + lines)
}

/// Exhaustive oracle: tries all `q` candidates `x^r − cx`.
pub fn brute_right_component_count(ctx: &FieldCtx, f: &AdditivePoly) -> Result<u128> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ore = ctx.ore();
    let mut count = 0;
    for c in ctx.elements() {
        let h = AdditivePoly::new(vec![ctx.neg(c), ctx.one()]);
        if ore.right_rem(f, &h)?.is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of decompositions of an additive `f` of skew degree two, following
/// Algorithm CollisionCounting step by step. The result is one of `0, 1, 2, r+1`.
pub fn collision_count_r2(ctx: &FieldCtx, f: &AdditivePoly) -> Result<u64> {
    if f.skew_degree() != Some(2) {
        return Err(Error::WrongSkewDegree {
            expected: 2,
            found: f.skew_degree().map_or(-1, |n| n as i64),
        });
    }
    let ore = ctx.ore();
    let f = ore.monic(f);
    if f.coeff(0).is_zero() {
        return Ok(if f.coeff(1).is_zero() { 1 } else { 2 });
    }
    let tau = ore.mclc(&f)?.into_y_poly();
    if tau.degree() == Some(1) {
        return Ok(ctx.r() + 1);
    }
    let factors = ctx.poly().factor(&tau, BaseField::Fr, FACTOR_SEED)?;
    Ok(match factors.as_slice() {
        [(u, 1)] if u.degree() == Some(2) => 0,
        [(u, 2)] if u.degree() == Some(1) => 1,
        _ => 2,
    })
}

/// `Ψ_m^{(a,b)} = x^{φ_{r,m}} + ax + b` as a dense polynomial.
pub fn projective_poly(ctx: &FieldCtx, m: u32, a: FieldElement, b: FieldElement) -> Result<DensePoly> {
    let deg = phi(ctx.r(), m);
    if deg > crate::ore::DENSE_DEGREE_LIMIT as u128 {
        return Err(Error::Overflow(format!("Ψ of degree {deg} is too large")));
    }
    Ok(DensePoly::from_terms(
        ctx,
        &[(deg as usize, ctx.one()), (1, a), (0, b)],
    ))
}

/// `x^{r^m} + ax^r + bx`.
pub fn projective_companion(ctx: &FieldCtx, m: u32, a: FieldElement, b: FieldElement) -> AdditivePoly {
    let mut c = vec![FieldElement::ZERO; m as usize + 1];
    c[0] = b;
    c[1] = ctx.add(c[1], a);
    c[m as usize] = ctx.add(c[m as usize], ctx.one());
    AdditivePoly::new(c)
}

/// Roots of `Ψ_m^{(a,b)}` in `F_q`, by direct root finding.
pub fn projective_roots_direct(ctx: &FieldCtx, m: u32, a: FieldElement, b: FieldElement) -> Result<u64> {
    Ok(ctx.poly().roots_in_field(&projective_poly(ctx, m, a, b)?)?.len() as u64)
}

/// Roots of `Ψ_m^{(a,b)}` in `F_q`, as the number of degree-`r` right
/// components of `x^{r^m} + ax^r + bx`.
pub fn projective_roots_via_components(
    ctx: &FieldCtx,
    m: u32,
    a: FieldElement,
    b: FieldElement,
) -> Result<u64> {
    Ok(right_component_count(ctx, &projective_companion(ctx, m, a, b))? as u64)
}

/// Root count of `Ψ_m^{(a,b)}` computed both ways; disagreement is an error.
pub fn projective_root_count(ctx: &FieldCtx, m: u32, a: FieldElement, b: FieldElement) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidParams("m must be at least 2".into()));
    }
    let direct = projective_roots_direct(ctx, m, a, b)?;
    let via = projective_roots_via_components(ctx, m, a, b)?;
    if direct != via {
        return Err(Error::RouteMismatch(format!(
            "Ψ_{m}: {direct} roots found directly, {via} right components"
        )));
    }
    Ok(direct)
}

/// The set `S_m` of possible maximal collision sizes at degree `r^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSet {
    pub m: u32,
    pub r: u64,
    pub sizes: BTreeSet<u128>,
}

/// Number of partitions `p(k)`.
pub fn partition_count(k: u32) -> u128 {
    let k = k as usize;
    let mut ways = vec![0u128; k + 1];
    ways[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            ways[total] += ways[total - part];
        }
    }
    ways[k]
}

/// All partitions of `k`, each as a nonincreasing list of parts.
pub fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// `S_m = S_{m−1} ∪ φ_r(Π_m)` with `φ_r(π) = Σ φ_{r,π_j}` over the parts of `π`.
///
/// When `r > m` the sums are base-`r` numerals with distinct digit patterns,
/// so `|S_m| = Σ_{k≤m} p(k)`; this is checked.
pub fn possible_collision_sizes(m: u32, r: u64) -> Result<PartitionSet> {
    if r < 2 {
        return Err(Error::InvalidParams("r must be at least 2".into()));
    }
    let mut sizes = BTreeSet::new();
    for k in 0..=m {
        for pi in partitions(k) {
            let mut total: u128 = 0;
            for &part in &pi {
                let v = (r as u128)
                    .checked_pow(part)
                    .map(|_| phi(r, part))
                    .ok_or_else(|| Error::Overflow(format!("φ_{{{r},{part}}}")))?;
                total = total
                    .checked_add(v)
                    .ok_or_else(|| Error::Overflow("partition sum".into()))?;
            }
            sizes.insert(total);
        }
    }
    let expected: u128 = (0..=m).map(partition_count).sum();
    if r > m as u64 {
        assert_eq!(sizes.len() as u128, expected);
    } else {
        assert!(sizes.len() as u128 <= expected);
    }
    Ok(PartitionSet { m, r, sizes })
}
