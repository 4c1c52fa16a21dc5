//! Dense univariate polynomials over `F_q`, with factorization over `F_r` or `F_q`.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};

/// Seed used where randomness only affects running time, never the result.
const INTERNAL_SEED: u64 = 0x005e_ed0f_2007;

/// Polynomial with coefficients constant-first. The leading coefficient is
/// nonzero unless the polynomial is zero (empty coefficient vector).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DensePoly {
    coeffs: Vec<FieldElement>,
}

/// Degree of `f − lc(f)·x^{deg f}`; monomials and zero have `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SecondDegree {
    NegInfinity,
    Finite(usize),
}

impl SecondDegree {
    pub fn finite(self) -> Option<usize> {
        match self {
            SecondDegree::Finite(k) => Some(k),
            SecondDegree::NegInfinity => None,
        }
    }
}

impl std::fmt::Display for SecondDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SecondDegree::NegInfinity => write!(f, "-inf"),
            SecondDegree::Finite(k) => write!(f, "{k}"),
        }
    }
}

/// Which field the coefficients of a polynomial are taken to lie in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseField {
    /// The subfield `F_r`.
    Fr,
    /// The full field `F_q`.
    Fq,
}

impl BaseField {
    pub fn size(self, ctx: &FieldCtx) -> u64 {
        match self {
            BaseField::Fr => ctx.r(),
            BaseField::Fq => ctx.q(),
        }
    }

    fn random(self, ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> FieldElement {
        match self {
            BaseField::Fr => ctx.random_subfield(rng),
            BaseField::Fq => ctx.random(rng),
        }
    }
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![FieldElement::ONE],
        }
    }

    pub fn x() -> Self {
        DensePoly::monomial(FieldElement::ONE, 1)
    }

    pub fn constant(c: FieldElement) -> Self {
        DensePoly::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        DensePoly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms; repeated exponents add.
    pub fn from_terms(ctx: &FieldCtx, terms: &[(usize, FieldElement)]) -> Self {
        let len = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut coeffs = vec![FieldElement::ZERO; len];
        for &(e, c) in terms {
            coeffs[e] = ctx.add(coeffs[e], c);
        }
        DensePoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    /// Monic with zero constant term.
    pub fn is_monic_original(&self) -> bool {
        self.is_monic() && self.coeff(0).is_zero()
    }

    pub fn second_degree(&self) -> SecondDegree {
        let Some(n) = self.degree() else {
            return SecondDegree::NegInfinity;
        };
        match (0..n).rev().find(|&i| !self.coeffs[i].is_zero()) {
            Some(k) => SecondDegree::Finite(k),
            None => SecondDegree::NegInfinity,
        }
    }
}

/// Polynomial arithmetic over a fixed field context.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<'a> {
    ctx: &'a FieldCtx,
}

impl FieldCtx {
    pub fn poly(&self) -> PolyRing<'_> {
        PolyRing { ctx: self }
    }
}

impl<'a> PolyRing<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    pub fn add(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        DensePoly::new(
            (0..n)
                .map(|i| self.ctx.add(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        DensePoly::new(
            (0..n)
                .map(|i| self.ctx.sub(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, a: &DensePoly) -> DensePoly {
        DensePoly::new(a.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }

    pub fn scale(&self, c: FieldElement, a: &DensePoly) -> DensePoly {
        DensePoly::new(a.coeffs.iter().map(|&x| self.ctx.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        if a.is_zero() || b.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![FieldElement::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.ctx.add(out[i + j], self.ctx.mul(x, y));
            }
        }
        DensePoly::new(out)
    }

    /// `(quotient, remainder)` with `a = quotient·b + remainder`.
    pub fn divmod(&self, a: &DensePoly, b: &DensePoly) -> Result<(DensePoly, DensePoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = self.ctx.inv(b.lead()).expect("nonzero lead");
        let mut rem = a.coeffs.clone();
        let qlen = rem.len().saturating_sub(db);
        let mut quot = vec![FieldElement::ZERO; qlen];
        for k in (db..rem.len()).rev() {
            let c = self.ctx.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - db] = c;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                rem[k - db + i] = self.ctx.sub(rem[k - db + i], self.ctx.mul(c, bc));
            }
        }
        rem.truncate(db);
        Ok((DensePoly::new(quot), DensePoly::new(rem)))
    }

    pub fn rem(&self, a: &DensePoly, b: &DensePoly) -> Result<DensePoly> {
        Ok(self.divmod(a, b)?.1)
    }

    /// Exact quotient; panics if `b` does not divide `a`.
    fn exact_div(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        let (q, r) = self.divmod(a, b).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }

    pub fn monic(&self, a: &DensePoly) -> DensePoly {
        match self.ctx.inv(a.lead()) {
            Some(li) => self.scale(li, a),
            None => DensePoly::zero(),
        }
    }

    /// Monic gcd. `gcd(0, 0)` is an error.
    pub fn gcd(&self, a: &DensePoly, b: &DensePoly) -> Result<DensePoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    pub fn eval(&self, f: &DensePoly, x: FieldElement) -> FieldElement {
        f.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| self.ctx.add(self.ctx.mul(acc, x), c))
    }

    /// `g ∘ h = g(h)`.
    pub fn compose(&self, g: &DensePoly, h: &DensePoly) -> DensePoly {
        g.coeffs.iter().rev().fold(DensePoly::zero(), |acc, &c| {
            self.add(&self.mul(&acc, h), &DensePoly::constant(c))
        })
    }

    pub fn pow(&self, f: &DensePoly, mut e: u64) -> DensePoly {
        let (mut base, mut acc) = (f.clone(), DensePoly::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn derivative(&self, f: &DensePoly) -> DensePoly {
        DensePoly::new(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.ctx.scale(i as u64, c))
                .collect(),
        )
    }

    pub fn mul_mod(&self, a: &DensePoly, b: &DensePoly, m: &DensePoly) -> DensePoly {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, f: &DensePoly, mut e: u128, m: &DensePoly) -> DensePoly {
        let mut base = self.rem(f, m).expect("nonzero modulus");
        let mut acc = self.rem(&DensePoly::one(), m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, m);
            }
        }
        acc
    }

    /// The distinct roots of `f` in `F_q`, sorted.
    pub fn roots_in_field(&self, f: &DensePoly) -> Result<Vec<FieldElement>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let f = self.monic(f);
        let x = DensePoly::x();
        let xq = self.pow_mod(&x, self.ctx.q() as u128, &f);
        let split = self.gcd(&f, &self.sub(&xq, &x))?;
        let mut rng = ChaCha8Rng::seed_from_u64(INTERNAL_SEED);
        let mut linear = Vec::new();
        self.equal_degree_split(&split, 1, BaseField::Fq, &mut rng, &mut linear);
        let mut roots: Vec<FieldElement> = linear
            .iter()
            .map(|l| self.ctx.neg(l.coeff(0)))
            .collect();
        roots.sort();
        debug_assert!(roots.iter().all(|&a| self.eval(&f, a).is_zero()));
        Ok(roots)
    }

    /// Whether `f` is irreducible over the chosen base field (Rabin's test).
    pub fn is_irreducible(&self, f: &DensePoly, base: BaseField) -> bool {
        let Some(n) = f.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let s = base.size(self.ctx);
        let f = self.monic(f);
        let x = DensePoly::x();
        // xs[k] = x^{s^k} mod f
        let mut xs = vec![self.rem(&x, &f).expect("nonzero")];
        for k in 0..n {
            xs.push(self.pow_mod(&xs[k], s as u128, &f));
        }
        if xs[n] != self.rem(&x, &f).expect("nonzero") {
            return false;
        }
        crate::gf::prime_factors(n as u64).into_iter().all(|l| {
            let g = self
                .gcd(&f, &self.sub(&xs[n / l as usize], &x))
                .expect("f nonzero");
            g.degree() == Some(0)
        })
    }

    /// Complete factorization over `F_r` or `F_q` into monic irreducibles with
    /// multiplicities, sorted by (degree, coefficients). The coefficients of `f`
    /// must lie in the chosen base field.
    pub fn factor(
        &self,
        f: &DensePoly,
        base: BaseField,
        seed: u64,
    ) -> Result<Vec<(DensePoly, u32)>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<(DensePoly, u32)> = Vec::new();
        for (sqf, mult) in self.squarefree_decomposition(&self.monic(f)) {
            for (part, k) in self.distinct_degree(&sqf, base) {
                let mut pieces = Vec::new();
                self.equal_degree_split(&part, k, base, &mut rng, &mut pieces);
                out.extend(pieces.into_iter().map(|g| (g, mult)));
            }
        }
        out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
        // a factor can appear from several squarefree parts only if the
        // decomposition were wrong; merge defensively anyway
        let mut merged: Vec<(DensePoly, u32)> = Vec::with_capacity(out.len());
        for (g, m) in out {
            match merged.last_mut() {
                Some(last) if last.0 == g => last.1 += m,
                _ => merged.push((g, m)),
            }
        }
        Ok(merged)
    }

    /// `f = Π g_i^{i}` with each `g_i` squarefree and pairwise coprime.
    fn squarefree_decomposition(&self, f: &DensePoly) -> Vec<(DensePoly, u32)> {
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = self.derivative(f);
        let mut c = self.gcd(f, &df).expect("f nonzero");
        let mut w = self.exact_div(f, &c);
        let mut i = 1;
        while w.degree() != Some(0) {
            let y = self.gcd(&w, &c).expect("w nonzero");
            let fac = self.exact_div(&w, &y);
            if fac.degree() != Some(0) {
                out.push((fac, i));
            }
            w = y;
            c = self.exact_div(&c, &w);
            i += 1;
        }
        if c.degree() != Some(0) {
            let p = self.ctx.p() as usize;
            let root = DensePoly::new(
                (0..=c.degree().unwrap() / p)
                    .map(|k| self.ctx.frobenius_p_power(c.coeff(k * p), -1))
                    .collect(),
            );
            for (g, e) in self.squarefree_decomposition(&root) {
                out.push((g, e * p as u32));
            }
        }
        out
    }

    fn distinct_degree(&self, f: &DensePoly, base: BaseField) -> Vec<(DensePoly, usize)> {
        let s = base.size(self.ctx) as u128;
        let x = DensePoly::x();
        let mut g = f.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut k = 0;
        while g.degree().unwrap_or(0) >= 2 * (k + 1) {
            k += 1;
            h = self.pow_mod(&h, s, &g);
            let z = self.gcd(&g, &self.sub(&h, &x)).expect("g nonzero");
            if z.degree() != Some(0) {
                g = self.exact_div(&g, &z);
                h = self.rem(&h, &g).expect("g nonzero");
                out.push((z, k));
            }
        }
        if let Some(dg) = g.degree().filter(|&dg| dg > 0) {
            out.push((g, dg));
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `k` (Cantor–Zassenhaus).
    fn equal_degree_split(
        &self,
        g: &DensePoly,
        k: usize,
        base: BaseField,
        rng: &mut ChaCha8Rng,
        out: &mut Vec<DensePoly>,
    ) {
        let Some(n) = g.degree() else { return };
        if n == 0 {
            return;
        }
        if n == k {
            out.push(self.monic(g));
            return;
        }
        let s = base.size(self.ctx);
        loop {
            let a = DensePoly::new((0..n).map(|_| base.random(self.ctx, rng)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if s % 2 == 1 {
                // a^{(s^k-1)/2} = (a · a^s ⋯ a^{s^{k-1}})^{(s-1)/2}
                let mut conj = a.clone();
                let mut norm = a.clone();
                for _ in 1..k {
                    conj = self.pow_mod(&conj, s as u128, g);
                    norm = self.mul_mod(&norm, &conj, g);
                }
                let t = self.pow_mod(&norm, ((s - 1) / 2) as u128, g);
                self.sub(&t, &DensePoly::one())
            } else {
                // absolute trace to F_2
                let steps = s.trailing_zeros() as usize * k;
                let mut cur = self.rem(&a, g).expect("nonzero");
                let mut acc = cur.clone();
                for _ in 1..steps {
                    cur = self.mul_mod(&cur, &cur, g);
                    acc = self.add(&acc, &cur);
                }
                acc
            };
            if b.is_zero() {
                continue;
            }
            let z = self.gcd(g, &b).expect("g nonzero");
            let dz = z.degree().unwrap();
            if dz > 0 && dz < n {
                let other = self.exact_div(g, &z);
                self.equal_degree_split(&z, k, base, rng, out);
                self.equal_degree_split(&other, k, base, rng, out);
                return;
            }
        }
    }

    /// A random monic irreducible polynomial of the given degree over the base field.
    pub fn random_irreducible(
        &self,
        degree: usize,
        base: BaseField,
        seed: u64,
    ) -> Result<DensePoly> {
        if degree == 0 {
            return Err(Error::InvalidParams("degree must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut coeffs: Vec<FieldElement> =
                (0..degree).map(|_| base.random(self.ctx, &mut rng)).collect();
            coeffs.push(FieldElement::ONE);
            let f = DensePoly::new(coeffs);
            if self.is_irreducible(&f, base) {
                return Ok(f);
            }
        }
    }
}

/// Canonical order: by degree, then by coefficients from the top down.
pub fn cmp_poly(a: &DensePoly, b: &DensePoly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}
