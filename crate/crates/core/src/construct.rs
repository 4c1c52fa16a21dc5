//! Explicit collisions: the non-additive `F/G/H` families with their shifts,
//! additive trinomials with a prescribed collision count, and random
//! indecomposable additive polynomials.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::predicted_counts;
use crate::error::{Error, Result};
use crate::frobenius::collision_count_r2;
use crate::gf::{FieldCtx, FieldElement};
use crate::ore::AdditivePoly;
use crate::poly::{BaseField, DensePoly, SecondDegree};

/// Parameters `(ε, u, ℓ, s, t, w)` of one member of a constructed collision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub epsilon: u8,
    pub u: FieldElement,
    pub ell: u64,
    pub s: FieldElement,
    pub t: FieldElement,
    pub w: FieldElement,
}

impl FamilyParams {
    /// Validates `ε ∈ {0,1}`, `u, s ≠ 0`, `ℓ | r − 1` and `t ∈ T`.
    pub fn new(
        ctx: &FieldCtx,
        epsilon: u8,
        u: FieldElement,
        ell: u64,
        s: FieldElement,
        t: FieldElement,
        w: FieldElement,
    ) -> Result<Self> {
        check_shape(ctx, epsilon, u, ell, s)?;
        if t.is_zero() || !t_poly_value(ctx, epsilon, u, t).is_zero() {
            return Err(Error::InvalidParams(format!(
                "t = {} is not a root of t^(r+1) - {}ut + u",
                ctx.format(t),
                epsilon
            )));
        }
        Ok(FamilyParams {
            epsilon,
            u,
            ell,
            s,
            t,
            w,
        })
    }

    /// `m = (r − 1)/ℓ`.
    pub fn m(&self, ctx: &FieldCtx) -> u64 {
        (ctx.r() - 1) / self.ell
    }
}

fn check_shape(ctx: &FieldCtx, epsilon: u8, u: FieldElement, ell: u64, s: FieldElement) -> Result<()> {
    if epsilon > 1 {
        return Err(Error::InvalidParams("epsilon must be 0 or 1".into()));
    }
    if u.is_zero() || s.is_zero() {
        return Err(Error::InvalidParams("u and s must be nonzero".into()));
    }
    if ell == 0 || !(ctx.r() - 1).is_multiple_of(ell) {
        return Err(Error::InvalidParams(format!(
            "ell = {ell} does not divide r - 1 = {}",
            ctx.r() - 1
        )));
    }
    Ok(())
}

fn t_poly_value(ctx: &FieldCtx, epsilon: u8, u: FieldElement, t: FieldElement) -> FieldElement {
    let lin = if epsilon == 1 { ctx.mul(u, t) } else { ctx.zero() };
    ctx.add(ctx.sub(ctx.pow(t, ctx.r() as u128 + 1), lin), u)
}

/// A decomposition `f = g ∘ h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub g: DensePoly,
    pub h: DensePoly,
    pub f: DensePoly,
}

/// `T = {t ∈ F_q : t^{r+1} − εut + u = 0}`, sorted.
pub fn enumerate_t(ctx: &FieldCtx, epsilon: u8, u: FieldElement) -> Result<Vec<FieldElement>> {
    if u.is_zero() {
        return Err(Error::InvalidParams("u must be nonzero".into()));
    }
    if epsilon > 1 {
        return Err(Error::InvalidParams("epsilon must be 0 or 1".into()));
    }
    let r = ctx.r() as usize;
    let lin = if epsilon == 1 { ctx.neg(u) } else { ctx.zero() };
    let poly = DensePoly::from_terms(ctx, &[(r + 1, ctx.one()), (1, lin), (0, u)]);
    ctx.poly().roots_in_field(&poly)
}

/// `x · base^m`.
fn x_times_power(ctx: &FieldCtx, base: &DensePoly, m: u64) -> DensePoly {
    let pr = ctx.poly();
    pr.mul(&DensePoly::x(), &pr.pow(base, m))
}

/// `p(x + a) − p(a)`, or `(x − c) ∘ p ∘ (x + a)` with `c = p(a)`.
fn shift(ctx: &FieldCtx, poly: &DensePoly, a: FieldElement, c: FieldElement) -> DensePoly {
    let pr = ctx.poly();
    let inner = DensePoly::new(vec![a, ctx.one()]);
    pr.sub(&pr.compose(poly, &inner), &DensePoly::constant(c))
}

/// `F(ε, u, ℓ, s)_{(w)}`.
pub fn family_f(
    ctx: &FieldCtx,
    epsilon: u8,
    u: FieldElement,
    ell: u64,
    s: FieldElement,
    w: FieldElement,
) -> Result<DensePoly> {
    check_shape(ctx, epsilon, u, ell, s)?;
    let r = ctx.r();
    let l = ell as usize;
    let m = (r - 1) / ell;
    let eps_term = if epsilon == 1 {
        ctx.neg(ctx.mul(u, ctx.pow(s, r as u128)))
    } else {
        ctx.zero()
    };
    let base = DensePoly::from_terms(
        ctx,
        &[
            (l * (r as usize + 1), ctx.one()),
            (l, eps_term),
            (0, ctx.mul(u, ctx.pow(s, r as u128 + 1))),
        ],
    );
    let f = x_times_power(ctx, &base, m);
    let fw = ctx.poly().eval(&f, w);
    Ok(shift(ctx, &f, w, fw))
}

/// `(g_{(w)}, h_{(w)}, f_{(w)})` for one `t ∈ T`, with the composition checked.
pub fn build_family(ctx: &FieldCtx, params: &FamilyParams) -> Result<Decomposition> {
    let pr = ctx.poly();
    let r = ctx.r();
    let l = params.ell as usize;
    let m = params.m(ctx);
    let FamilyParams { u, s, t, w, .. } = *params;
    let g0_const = ctx.div(ctx.mul(u, ctx.pow(s, r as u128)), t);
    let g = x_times_power(
        ctx,
        &DensePoly::from_terms(ctx, &[(l, ctx.one()), (0, ctx.neg(g0_const))]),
        m,
    );
    let h = x_times_power(
        ctx,
        &DensePoly::from_terms(ctx, &[(l, ctx.one()), (0, ctx.neg(ctx.mul(s, t)))]),
        m,
    );
    let f = family_f(ctx, params.epsilon, u, params.ell, s, w)?;
    let hw = pr.eval(&h, w);
    let fw = pr.eval(&pr.compose(&g, &h), w);
    let g_w = shift(ctx, &g, hw, fw);
    let h_w = shift(ctx, &h, w, hw);
    if pr.compose(&g_w, &h_w) != f {
        return Err(Error::RouteMismatch(
            "family components do not recompose to f".into(),
        ));
    }
    Ok(Decomposition { g: g_w, h: h_w, f })
}

/// The full collision `{(g_{(w)}, h_{(w)}) : t ∈ T}`, sorted by `h`.
pub fn build_collision(
    ctx: &FieldCtx,
    epsilon: u8,
    u: FieldElement,
    ell: u64,
    s: FieldElement,
    w: FieldElement,
) -> Result<Vec<Decomposition>> {
    check_shape(ctx, epsilon, u, ell, s)?;
    let mut out = enumerate_t(ctx, epsilon, u)?
        .into_iter()
        .map(|t| build_family(ctx, &FamilyParams::new(ctx, epsilon, u, ell, s, t, w)?))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.h.cmp(&b.h));
    Ok(out)
}

/// Parameters recovered from a family member `f`, normalized so that equal
/// polynomials give equal parameters, together with all its family decompositions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyClass {
    pub epsilon: u8,
    pub u: FieldElement,
    pub ell: u64,
    pub s: FieldElement,
    pub w: FieldElement,
    pub f: DensePoly,
    pub members: Vec<Decomposition>,
}

/// Reads `(ε, ℓ)` from the second degree of `f`, then `s`, `u`, `w` from its
/// coefficients, and confirms by rebuilding. For `ε = 0` only `u·s^{r+1}`
/// matters, and the representative with `s = 1` is returned.
pub fn recover_params(ctx: &FieldCtx, f: &DensePoly) -> Option<FamilyClass> {
    let r = ctx.r() as usize;
    if f.degree()? != r * r || !f.is_monic_original() {
        return None;
    }
    let SecondDegree::Finite(deg2) = f.second_degree() else {
        return None;
    };
    let (epsilon, ell) = if deg2 % r == 0 {
        (1u8, (r * r - deg2) / r)
    } else if (r * r - deg2).is_multiple_of(r + 1) {
        (0u8, (r * r - deg2) / (r + 1))
    } else {
        return None;
    };
    if ell == 0 || !(r - 1).is_multiple_of(ell) {
        return None;
    }
    let m = ctx.from_int(((r - 1) / ell) as i64);
    let low = f.coeff(r * r - ell * r - ell);
    let (u, s) = if epsilon == 1 {
        let high = f.coeff(r * r - ell * r);
        if low.is_zero() {
            return None;
        }
        let s = ctx.neg(ctx.div(low, high));
        let u = ctx.neg(ctx.div(high, ctx.mul(m, ctx.pow(s, r as u128))));
        (u, s)
    } else {
        // F(0, u, ℓ, s) depends on u·s^{r+1} only
        if low.is_zero() {
            return None;
        }
        (ctx.div(low, m), ctx.one())
    };
    let ell = ell as u64;
    let w = if ell == r as u64 - 1 {
        ctx.zero()
    } else {
        let e = r * r - ell as usize * r - ell as usize;
        let base = family_f(ctx, epsilon, u, ell, s, ctx.zero()).ok()?;
        let denom = ctx.mul(
            ctx.mul(ctx.from_int(e as i64), m),
            ctx.mul(u, ctx.pow(s, r as u128 + 1)),
        );
        ctx.div(ctx.sub(f.coeff(e - 1), base.coeff(e - 1)), denom)
    };
    if &family_f(ctx, epsilon, u, ell, s, w).ok()? != f {
        return None;
    }
    let members = build_collision(ctx, epsilon, u, ell, s, w).ok()?;
    Some(FamilyClass {
        epsilon,
        u,
        ell,
        s,
        w,
        f: f.clone(),
        members,
    })
}

/// Random `x^{r²} + ax^r + bx` with exactly `i` decompositions, by rejection.
pub fn sample_with_collision_count(ctx: &FieldCtx, i: u64, seed: u64) -> Result<AdditivePoly> {
    let r = ctx.r();
    if ![0, 1, 2, r + 1].contains(&i) {
        return Err(Error::InvalidParams(format!(
            "collision count {i} is not one of 0, 1, 2, {}",
            r + 1
        )));
    }
    let expected = predicted_counts(ctx.q(), r)?.get(i as u128);
    if expected == 0 {
        return Err(Error::EmptyClass(format!(
            "{i} collisions over F_{} with r = {r}",
            ctx.q()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let f = AdditivePoly::new(vec![ctx.random(&mut rng), ctx.random(&mut rng), ctx.one()]);
        if collision_count_r2(ctx, &f)? == i {
            return Ok(f);
        }
    }
}

/// Whether `τ(mclc f)` is irreducible of degree `n`, which certifies that a
/// monic `f` of skew degree `n` is indecomposable.
pub fn has_indecomposable_certificate(ctx: &FieldCtx, f: &AdditivePoly) -> Result<bool> {
    let n = f.skew_degree().ok_or(Error::ZeroPolynomial)?;
    let tau = ctx.ore().mclc(f)?.into_y_poly();
    Ok(tau.degree() == Some(n) && ctx.poly().is_irreducible(&tau, BaseField::Fr))
}

/// Random monic indecomposable `f` of skew degree `n`, with the number of tries used.
pub fn sample_indecomposable_counted(
    ctx: &FieldCtx,
    n: usize,
    seed: u64,
) -> Result<(AdditivePoly, u64)> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tries = 0;
    loop {
        tries += 1;
        let mut c: Vec<_> = (0..n).map(|_| ctx.random(&mut rng)).collect();
        c.push(ctx.one());
        let f = AdditivePoly::new(c);
        if has_indecomposable_certificate(ctx, &f)? {
            return Ok((f, tries));
        }
    }
}

pub fn sample_indecomposable(ctx: &FieldCtx, n: usize, seed: u64) -> Result<AdditivePoly> {
    Ok(sample_indecomposable_counted(ctx, n, seed)?.0)
}
