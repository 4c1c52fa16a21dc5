//! Closed-form collision counts and the exhaustive censuses that check them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::construct::recover_params;
use crate::error::{Error, Result};
use crate::frobenius::{
    brute_right_component_count, collision_count_r2, phi, possible_collision_sizes,
    projective_companion, projective_roots_direct, right_component_count,
};
use crate::gf::{FieldCtx, FieldElement};
use crate::par::par_map;
use crate::poly::{DensePoly, SecondDegree};

/// Largest number of `(g, h)` pairs [`general_census`] will enumerate.
pub const GENERAL_PAIR_LIMIT: u128 = 10_000_000;

/// Which `(a, b)` pairs a census ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    All,
    BNonzero,
    AbNonzero,
}

impl Variant {
    pub fn includes(self, a: FieldElement, b: FieldElement) -> bool {
        match self {
            Variant::All => true,
            Variant::BNonzero => !b.is_zero(),
            Variant::AbNonzero => !a.is_zero() && !b.is_zero(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::All => "all",
            Variant::BNonzero => "b_nonzero",
            Variant::AbNonzero => "ab_nonzero",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Variant::All),
            "b_nonzero" | "b-nonzero" => Ok(Variant::BNonzero),
            "ab_nonzero" | "ab-nonzero" => Ok(Variant::AbNonzero),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// Number of `(a, b)` with exactly `i` decompositions, for each `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusTable {
    pub p: u64,
    pub r: u64,
    pub q: u64,
    pub m: u32,
    pub variant: Variant,
    pub rows: BTreeMap<u128, u128>,
}

impl CensusTable {
    /// A table with a zero row for every size in `S_m`.
    fn empty(p: u64, r: u64, q: u64, m: u32, variant: Variant) -> Result<Self> {
        let rows = possible_collision_sizes(m, r)?
            .sizes
            .into_iter()
            .map(|i| (i, 0))
            .collect();
        Ok(CensusTable {
            p,
            r,
            q,
            m,
            variant,
            rows,
        })
    }

    pub fn get(&self, i: u128) -> u128 {
        self.rows.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.rows.values().sum()
    }

    fn add(&mut self, i: u128, n: u128) {
        *self.rows.entry(i).or_insert(0) += n;
    }
}

/// Splits `r` and `q = r^d` into `(p, d)`.
pub fn tower(q: u64, r: u64) -> Result<(u64, u32)> {
    let bad = || Error::InvalidParams(format!("q={q} is not a power of the prime power r={r}"));
    if r < 2 {
        return Err(bad());
    }
    let p = crate::gf::prime_factors(r)[0];
    let mut x = r;
    while x.is_multiple_of(p) {
        x /= p;
    }
    if x != 1 {
        return Err(bad());
    }
    let (mut x, mut d) = (q, 0u32);
    while x > 1 && x % r == 0 {
        x /= r;
        d += 1;
    }
    if x != 1 || d == 0 {
        return Err(bad());
    }
    Ok((p, d))
}

fn exact(num: i128, den: i128, what: &str) -> Result<u128> {
    if den == 0 || num % den != 0 || num / den < 0 {
        return Err(Error::InexactDivision(format!("{what}: {num}/{den}")));
    }
    Ok((num / den) as u128)
}

/// `c_0, c_1, c_2, c_{r+1}` for all `q²` trinomials `x^{r²} + ax^r + bx`.
pub fn predicted_counts(q: u64, r: u64) -> Result<CensusTable> {
    let (p, _) = tower(q, r)?;
    let (qi, ri) = (q as i128, r as i128);
    let c0 = exact(ri * (qi * qi - 1), 2 * (ri + 1), "c_0")?;
    let c1 = exact(qi * qi - qi, ri, "c_1")? + 1;
    let c2 = exact((qi - 1) * (qi - 1) * (ri - 2), 2 * (ri - 1), "c_2")? + (q as u128 - 1);
    let cr = exact((qi - 1) * (qi - ri), ri * (ri * ri - 1), "c_{r+1}")?;
    let mut t = CensusTable::empty(p, r, q, 2, Variant::All)?;
    t.add(0, c0);
    t.add(1, c1);
    t.add(2, c2);
    t.add(r as u128 + 1, cr);
    Ok(t)
}

/// The `ab ≠ 0` counts, in the parity case selected by `d` and `r`.
pub fn bluher_counts(q: u64, r: u64) -> Result<CensusTable> {
    let (p, d) = tower(q, r)?;
    let (qi, ri) = (q as i128, r as i128);
    let rows = if d % 2 == 0 {
        [
            exact(ri * (qi - 1) * (qi - 1), 2 * (ri + 1), "c_0")?,
            exact(qi * (qi - 1), ri, "c_1")?,
            exact((qi - 1) * (qi - 1) * (ri - 2), 2 * (ri - 1), "c_2")?,
            exact((qi - 1) * (qi - ri * ri), ri * (ri * ri - 1), "c_{r+1}")?,
        ]
    } else if r % 2 == 1 {
        [
            exact((qi * ri - 1) * (qi - 1), 2 * (ri + 1), "c_0")?,
            exact(qi * (qi - 1), ri, "c_1")?,
            exact(
                (qi - 1) * (qi * ri - 2 * qi - 2 * ri + 3),
                2 * (ri - 1),
                "c_2",
            )?,
            exact((qi - ri) * (qi - 1), ri * (ri * ri - 1), "c_{r+1}")?,
        ]
    } else {
        [
            exact(ri * (qi * qi - 1), 2 * (ri + 1), "c_0")?,
            exact((qi - 1) * (qi - ri), ri, "c_1")?,
            exact((qi - 1) * (qi - 1) * (ri - 2), 2 * (ri - 1), "c_2")?,
            exact((qi - ri) * (qi - 1), ri * (ri * ri - 1), "c_{r+1}")?,
        ]
    };
    let mut t = CensusTable::empty(p, r, q, 2, Variant::AbNonzero)?;
    for (i, c) in [0, 1, 2, r as u128 + 1].into_iter().zip(rows) {
        t.add(i, c);
    }
    Ok(t)
}

/// For each `i`, the number of `u ∈ F_q^×` such that `t^{r+1} − ut + u` has `i` roots.
pub fn single_parameter_counts(ctx: &FieldCtx) -> Result<BTreeMap<u128, u128>> {
    let pr = ctx.poly();
    let r = ctx.r() as usize;
    let mut out: BTreeMap<u128, u128> = [0, 1, 2, r as u128 + 1].into_iter().map(|i| (i, 0)).collect();
    for u in ctx.nonzero_elements() {
        let poly = DensePoly::from_terms(ctx, &[(r + 1, ctx.one()), (1, ctx.neg(u)), (0, u)]);
        *out.entry(pr.roots_in_field(&poly)?.len() as u128).or_insert(0) += 1;
    }
    Ok(out)
}

/// `γ_{q,r,m} = gcd(φ_{r,m}, q − 1)`.
pub fn gamma(q: u64, r: u64, m: u32) -> u128 {
    gcd(phi(r, m), q as u128 - 1)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Corrections relating the three census variants at degree `r^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionRelations {
    pub q: u64,
    pub r: u64,
    pub m: u32,
    /// `γ_{m−1}`: pairs `(a, 0)` with `a ≠ 0` have `1` or `γ_{m−1} + 1` roots.
    pub gamma_prev: u128,
    /// `γ_m`: pairs `(0, b)` with `b ≠ 0` have `0` or `γ_m` roots.
    pub gamma: u128,
}

pub fn restriction_counts(q: u64, r: u64, m: u32) -> Result<RestrictionRelations> {
    tower(q, r)?;
    if m < 2 {
        return Err(Error::InvalidParams("m must be at least 2".into()));
    }
    Ok(RestrictionRelations {
        q,
        r,
        m,
        gamma_prev: gamma(q, r, m - 1),
        gamma: gamma(q, r, m),
    })
}

impl RestrictionRelations {
    /// `c^{(1)}` from `c^{(2)}` by adding the pairs `(0, b)`, `b ≠ 0`.
    pub fn lift_to_b_nonzero(&self, ab: &CensusTable) -> CensusTable {
        let unit = self.q as u128 - 1;
        let mut t = ab.clone();
        t.variant = Variant::BNonzero;
        t.add(0, unit - unit / self.gamma);
        t.add(self.gamma, unit / self.gamma);
        t
    }

    /// `c` from `c^{(1)}` by adding the pairs `(a, 0)`, including `(0, 0)`.
    pub fn lift_to_all(&self, b: &CensusTable) -> CensusTable {
        let unit = self.q as u128 - 1;
        let mut t = b.clone();
        t.variant = Variant::All;
        t.add(1, unit - unit / self.gamma_prev + 1);
        t.add(self.gamma_prev + 1, unit / self.gamma_prev);
        t
    }
}

fn mobius(n: u64) -> i128 {
    let mut x = n;
    let mut sign = 1;
    for p in crate::gf::prime_factors(n) {
        x /= p;
        if x.is_multiple_of(p) {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `n` over `F_s`.
pub fn irreducible_count(s: u64, n: u32) -> Result<u128> {
    let mut total: i128 = 0;
    for k in 1..=n {
        if n.is_multiple_of(k) {
            let pow = (s as i128)
                .checked_pow(k)
                .ok_or_else(|| Error::Overflow(format!("{s}^{k}")))?;
            total += mobius((n / k) as u64) * pow;
        }
    }
    exact(total, n as i128, "I(n)")
}

/// Monic indecomposable elements of `F_q[x;r]` of skew degree `n`.
///
/// For `n ≥ 2` this is `(q^n − 1)/(r^n − 1)·I_r(n)`. At `n = 1` every one of
/// the `q` monic polynomials `x^r + ax` is indecomposable.
pub fn indecomposable_count(q: u64, r: u64, n: u32) -> Result<u128> {
    tower(q, r)?;
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    if n == 1 {
        return Ok(q as u128);
    }
    let qn = (q as i128)
        .checked_pow(n)
        .ok_or_else(|| Error::Overflow(format!("{q}^{n}")))?;
    let rn = (r as i128).pow(n);
    let ratio = exact(qn - 1, rn - 1, "(q^n-1)/(r^n-1)")?;
    ratio
        .checked_mul(irreducible_count(r, n)?)
        .ok_or_else(|| Error::Overflow("indecomposable count".into()))
}

fn divisor_count(n: u64) -> u128 {
    (1..=n).filter(|k| n.is_multiple_of(*k)).count() as u128
}

/// `N_2` and `N_{r+1}`, the numbers of constructed `i`-collisions at degree `r²`.
pub fn predicted_n_i(q: u64, r: u64) -> Result<BTreeMap<u128, u128>> {
    let ab = bluher_counts(q, r)?;
    let qi = q as i128;
    let prefactor = 1 - qi + qi * divisor_count(r - 1) as i128;
    let g = gcd(r as u128 + 1, q as u128 - 1);
    let mut out = BTreeMap::new();
    for i in [2u128, r as u128 + 1] {
        let delta = if g == i { (q as u128 - 1) / g } else { 0 };
        let n = prefactor as u128 * (ab.get(i) + delta);
        out.insert(i, n);
    }
    Ok(out)
}

/// How each trinomial's decompositions are counted in [`additive_census`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    /// CollisionCounting at `m = 2`, Jordan-form line counts otherwise.
    Algorithm,
    /// Trial right division by all `q` candidates.
    BruteForce,
    /// Direct root count of `Ψ_m^{(a,b)}`.
    ProjectiveRoots,
}

/// Exhaustive census over `x^{r^m} + ax^r + bx` for `(a, b)` in the variant's range.
pub fn additive_census(
    ctx: &FieldCtx,
    m: u32,
    variant: Variant,
    method: CountMethod,
    jobs: usize,
) -> Result<CensusTable> {
    if m < 2 {
        return Err(Error::InvalidParams("m must be at least 2".into()));
    }
    let elems: Vec<FieldElement> = ctx.elements().collect();
    let per_a = par_map(&elems, jobs, |&a| -> Result<Vec<u128>> {
        let mut counts = Vec::new();
        for b in ctx.elements().filter(|&b| variant.includes(a, b)) {
            let f = projective_companion(ctx, m, a, b);
            counts.push(match method {
                CountMethod::Algorithm if m == 2 => collision_count_r2(ctx, &f)? as u128,
                CountMethod::Algorithm => right_component_count(ctx, &f)?,
                CountMethod::BruteForce => brute_right_component_count(ctx, &f)?,
                CountMethod::ProjectiveRoots => projective_roots_direct(ctx, m, a, b)? as u128,
            });
        }
        Ok(counts)
    });
    let mut table = CensusTable::empty(ctx.p(), ctx.r(), ctx.q(), m, variant)?;
    for counts in per_a {
        for i in counts? {
            table.add(i, 1);
        }
    }
    Ok(table)
}

/// `g` with `g ∘ h = f`, monic original, if one exists.
pub fn decompose_given_h(ctx: &FieldCtx, f: &DensePoly, h: &DensePoly) -> Option<DensePoly> {
    let pr = ctx.poly();
    let (nf, nh) = (f.degree()?, h.degree()?);
    if nh == 0 || nf % nh != 0 || !h.is_monic_original() || !f.is_monic_original() {
        return None;
    }
    let n = nf / nh;
    let mut powers = vec![DensePoly::one()];
    for i in 1..=n {
        powers.push(pr.mul(&powers[i - 1], h));
    }
    let mut rem = f.clone();
    let mut g = vec![FieldElement::ZERO; n + 1];
    for i in (1..=n).rev() {
        let c = rem.coeff(i * nh);
        if c.is_zero() {
            continue;
        }
        g[i] = c;
        rem = pr.sub(&rem, &pr.scale(c, &powers[i]));
    }
    rem.is_zero().then(|| DensePoly::new(g))
}

/// How a collision class found by [`general_census`] is explained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Frobenius,
    ConstructedFamily,
    Unexplained,
}

/// All decompositions `(g, h)` of one `f`, sorted by `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionClass {
    pub f: DensePoly,
    pub decompositions: Vec<(DensePoly, DensePoly)>,
    pub classification: Classification,
    /// Common second degree of the components, for non-Frobenius classes.
    pub k: Option<usize>,
    /// Failed structural assertions; empty when all hold.
    pub violations: Vec<String>,
}

impl CollisionClass {
    pub fn size(&self) -> usize {
        self.decompositions.len()
    }
}

/// Result of enumerating all compositions of monic original degree-`p` polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralCensusReport {
    pub p: u64,
    pub q: u64,
    pub pairs: u128,
    /// Every `f` with at least two decompositions, sorted by `f`.
    pub classes: Vec<CollisionClass>,
    /// `N_2 + N_{p+1} + q^{p−1} − 1`.
    pub predicted_total: u128,
}

impl GeneralCensusReport {
    pub fn count(&self, c: Classification) -> usize {
        self.classes.iter().filter(|k| k.classification == c).count()
    }

    /// Number of classes of each size.
    pub fn by_size(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.size()).or_insert(0) += 1;
        }
        out
    }

    pub fn k_values(&self) -> BTreeSet<usize> {
        self.classes.iter().filter_map(|c| c.k).collect()
    }

    pub fn violation_count(&self) -> usize {
        self.classes.iter().map(|c| c.violations.len()).sum()
    }
}

fn monic_original(ctx: &FieldCtx, deg: usize) -> Vec<DensePoly> {
    let q = ctx.q();
    let count = q.pow(deg as u32 - 1);
    (0..count)
        .map(|mut idx| {
            let mut c = vec![FieldElement::ZERO];
            for _ in 1..deg {
                c.push(FieldElement::from_index(idx % q));
                idx /= q;
            }
            c.push(FieldElement::ONE);
            DensePoly::new(c)
        })
        .collect()
}

/// Enumerates every `g ∘ h` with `g, h` monic original of degree `p` over a
/// field with `r = p`, groups by composition, and classifies each collision.
pub fn general_census(ctx: &FieldCtx, jobs: usize) -> Result<GeneralCensusReport> {
    let (p, q) = (ctx.p(), ctx.q());
    if ctx.r() != p {
        return Err(Error::InvalidParams(
            "the general census needs r = p (d0 = 1)".into(),
        ));
    }
    let pairs = (q as u128)
        .checked_pow(2 * (p as u32 - 1))
        .unwrap_or(u128::MAX);
    if pairs > GENERAL_PAIR_LIMIT {
        return Err(Error::GuardExceeded {
            requested: pairs,
            limit: GENERAL_PAIR_LIMIT,
        });
    }
    let pr = ctx.poly();
    let comps = monic_original(ctx, p as usize);
    let per_h = par_map(&comps, jobs, |h| {
        comps
            .iter()
            .map(|g| (pr.compose(g, h), g.clone()))
            .collect::<Vec<_>>()
    });
    let mut groups: BTreeMap<DensePoly, Vec<(DensePoly, DensePoly)>> = BTreeMap::new();
    for (h, row) in comps.iter().zip(per_h) {
        for (f, g) in row {
            groups.entry(f).or_default().push((g, h.clone()));
        }
    }
    let collided: Vec<(DensePoly, Vec<(DensePoly, DensePoly)>)> = groups
        .into_iter()
        .filter(|(_, v)| v.len() >= 2)
        .map(|(f, mut v)| {
            v.sort_by(|a, b| a.1.cmp(&b.1));
            (f, v)
        })
        .collect();
    let classes = par_map(&collided, jobs, |(f, decs)| classify(ctx, f, decs));
    let n = predicted_n_i(q, p)?;
    let predicted_total = n.values().sum::<u128>() + (q as u128).pow(p as u32 - 1) - 1;
    Ok(GeneralCensusReport {
        p,
        q,
        pairs,
        classes,
        predicted_total,
    })
}

fn classify(ctx: &FieldCtx, f: &DensePoly, decs: &[(DensePoly, DensePoly)]) -> CollisionClass {
    let pr = ctx.poly();
    let p = ctx.p() as usize;
    let xp = DensePoly::monomial(ctx.one(), p);
    let mut violations = Vec::new();
    for (g, h) in decs {
        if &pr.compose(g, h) != f {
            violations.push("decomposition does not recompose".to_string());
        }
    }
    let sigma = |h: &DensePoly| {
        DensePoly::new(h.coeffs().iter().map(|&c| ctx.frobenius_p(c)).collect())
    };
    let is_frobenius = decs.len() == 2
        && decs.iter().any(|(g, h)| {
            g == &xp && decs.iter().any(|(g2, h2)| h2 == &xp && g2 == &sigma(h))
        });
    if is_frobenius {
        return CollisionClass {
            f: f.clone(),
            decompositions: decs.to_vec(),
            classification: Classification::Frobenius,
            k: None,
            violations,
        };
    }

    let k = arbitr_checks(ctx, f, decs, &mut violations);
    let classification = match recover_params(ctx, f) {
        Some(family)
            if family
                .members
                .iter()
                .map(|d| (d.g.clone(), d.h.clone()))
                .collect::<Vec<_>>()
                == decs =>
        {
            Classification::ConstructedFamily
        }
        _ => Classification::Unexplained,
    };
    CollisionClass {
        f: f.clone(),
        decompositions: decs.to_vec(),
        classification,
        k,
        violations,
    }
}

/// Checks the four structural assertions on non-Frobenius collisions and the
/// dichotomy `k = 1` or `k > p/2`; returns the common `k` when it exists.
fn arbitr_checks(
    ctx: &FieldCtx,
    f: &DensePoly,
    decs: &[(DensePoly, DensePoly)],
    violations: &mut Vec<String>,
) -> Option<usize> {
    let p = ctx.p() as usize;
    let k = match decs[0].1.second_degree() {
        SecondDegree::Finite(k) if k >= 1 => k,
        _ => {
            violations.push("h has no second degree".into());
            return None;
        }
    };
    for (g, h) in decs {
        if g.second_degree() != SecondDegree::Finite(k) || h.second_degree() != SecondDegree::Finite(k) {
            violations.push(format!("(i) second degrees differ from k={k}"));
            break;
        }
    }
    let gk: BTreeSet<_> = decs.iter().map(|(g, _)| g.coeff(k)).collect();
    let hk: BTreeSet<_> = decs.iter().map(|(_, h)| h.coeff(k)).collect();
    if gk.len() != decs.len() || hk.len() != decs.len() {
        violations.push("(ii) repeated g_k or h_k".into());
    }
    let a = ctx.neg(f.coeff(k * p));
    let kinv = ctx.inv(ctx.from_int(k as i64)).expect("k < p");
    let b = ctx.mul(kinv, f.coeff(k * p - p + k));
    for (g, h) in decs {
        let h_k = h.coeff(k);
        let g_k = g.coeff(k);
        if ctx.mul(b, h_k).is_zero() {
            violations.push("(iii) b·h_k = 0".into());
            continue;
        }
        let psi = ctx.add(
            ctx.add(ctx.pow(h_k, p as u128 + 1), ctx.mul(a, h_k)),
            b,
        );
        let alt1 = ctx.sub(ctx.neg(a), ctx.pow(h_k, p as u128));
        let alt2 = ctx.div(b, h_k);
        if !psi.is_zero() || g_k != alt1 || g_k != alt2 {
            violations.push("(iii) h_k equation fails".into());
        }
    }
    if decs.len() > p + 1 {
        violations.push(format!("(iv) {} > p+1 decompositions", decs.len()));
    }
    if k != 1 && 2 * k <= p {
        violations.push(format!("k={k} is neither 1 nor above p/2"));
    }
    Some(k)
}
