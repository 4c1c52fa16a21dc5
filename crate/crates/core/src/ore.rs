//! The skew polynomial ring `F_q[x;r]` of `r`-additive polynomials.
//!
//! Elements are stored by their skew coefficients: `(a_0, …, a_n)` stands for
//! `Σ a_i x^{r^i}`. Composition follows `x^{r^i} ∘ a x^{r^j} = a^{r^i} x^{r^{i+j}}`,
//! so `(g ∘ h)_k = Σ_{i+j=k} g_i · h_j^{r^i}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::poly::DensePoly;

/// Largest ordinary degree [`OreRing::to_dense`] will expand to.
pub const DENSE_DEGREE_LIMIT: u64 = 1 << 24;

/// `Σ a_i x^{r^i}`, trimmed so the top skew coefficient is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdditivePoly {
    coeffs: Vec<FieldElement>,
}

impl AdditivePoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        AdditivePoly { coeffs }
    }

    pub fn zero() -> Self {
        AdditivePoly { coeffs: Vec::new() }
    }

    /// The identity `x`.
    pub fn x() -> Self {
        AdditivePoly::frobenius(0)
    }

    /// `x^{r^t}`.
    pub fn frobenius(t: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; t + 1];
        coeffs[t] = FieldElement::ONE;
        AdditivePoly { coeffs }
    }

    /// `c·x^{r^t}`.
    pub fn term(c: FieldElement, t: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; t + 1];
        coeffs[t] = c;
        AdditivePoly::new(coeffs)
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

    /// `n` with ordinary degree `r^n`; `None` for zero.
    pub fn skew_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    /// Squarefree as an ordinary polynomial, i.e. the linear coefficient is nonzero.
    pub fn is_squarefree(&self) -> bool {
        !self.coeff(0).is_zero()
    }
}

/// An element of the center `F_r[x;q]`, kept as its image `τ(f) ∈ F_r[y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralPoly {
    y_poly: DensePoly,
}

impl CentralPoly {
    /// Wraps a polynomial in `y`; all coefficients must lie in `F_r`.
    pub fn new(ctx: &FieldCtx, y_poly: DensePoly) -> Result<Self> {
        if let Some(i) = y_poly.coeffs().iter().position(|&c| !ctx.in_subfield(c)) {
            return Err(Error::NotCentral(format!(
                "coefficient of y^{i} is not in F_{}",
                ctx.r()
            )));
        }
        Ok(CentralPoly { y_poly })
    }

    pub fn y_poly(&self) -> &DensePoly {
        &self.y_poly
    }

    pub fn into_y_poly(self) -> DensePoly {
        self.y_poly
    }
}

/// Arithmetic in `F_q[x;r]` over a fixed field context.
#[derive(Clone, Copy, Debug)]
pub struct OreRing<'a> {
    ctx: &'a FieldCtx,
}

impl FieldCtx {
    pub fn ore(&self) -> OreRing<'_> {
        OreRing { ctx: self }
    }
}

impl<'a> OreRing<'a> {
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }

    /// Reads the skew coefficients of an ordinary polynomial supported on exponents `r^i`.
    pub fn to_additive(&self, f: &DensePoly) -> Result<AdditivePoly> {
        let r = self.ctx.r() as usize;
        let mut skew = Vec::new();
        let mut next_power = 1usize;
        for (e, &c) in f.coeffs().iter().enumerate() {
            if e == next_power {
                skew.push(c);
                next_power = next_power.saturating_mul(r);
            } else if !c.is_zero() {
                return Err(Error::NotAdditive { exponent: e });
            }
        }
        Ok(AdditivePoly::new(skew))
    }

    /// Ordinary expansion; fails when the degree `r^n` exceeds [`DENSE_DEGREE_LIMIT`].
    pub fn to_dense(&self, f: &AdditivePoly) -> Result<DensePoly> {
        let Some(n) = f.skew_degree() else {
            return Ok(DensePoly::zero());
        };
        let deg = (self.ctx.r() as u128)
            .checked_pow(n as u32)
            .filter(|&d| d <= DENSE_DEGREE_LIMIT as u128)
            .ok_or_else(|| {
                Error::Overflow(format!("dense expansion of skew degree {n} is too large"))
            })? as usize;
        let mut coeffs = vec![FieldElement::ZERO; deg + 1];
        let mut e = 1usize;
        for &c in &f.coeffs {
            coeffs[e] = c;
            e *= self.ctx.r() as usize;
        }
        Ok(DensePoly::new(coeffs))
    }

    pub fn add(&self, a: &AdditivePoly, b: &AdditivePoly) -> AdditivePoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        AdditivePoly::new(
            (0..n)
                .map(|i| self.ctx.add(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &AdditivePoly, b: &AdditivePoly) -> AdditivePoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        AdditivePoly::new(
            (0..n)
                .map(|i| self.ctx.sub(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }

    /// `c ∘ f`, i.e. every coefficient multiplied by `c`.
    pub fn scale(&self, c: FieldElement, f: &AdditivePoly) -> AdditivePoly {
        AdditivePoly::new(f.coeffs.iter().map(|&a| self.ctx.mul(c, a)).collect())
    }

    pub fn monic(&self, f: &AdditivePoly) -> AdditivePoly {
        match self.ctx.inv(f.lead()) {
            Some(li) => self.scale(li, f),
            None => AdditivePoly::zero(),
        }
    }

    /// `g ∘ h`.
    pub fn compose(&self, g: &AdditivePoly, h: &AdditivePoly) -> AdditivePoly {
        if g.is_zero() || h.is_zero() {
            return AdditivePoly::zero();
        }
        let mut out = vec![FieldElement::ZERO; g.coeffs.len() + h.coeffs.len() - 1];
        for (i, &gi) in g.coeffs.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for (j, &hj) in h.coeffs.iter().enumerate() {
                let tw = self.ctx.frobenius_power(hj, i as i64);
                out[i + j] = self.ctx.add(out[i + j], self.ctx.mul(gi, tw));
            }
        }
        AdditivePoly::new(out)
    }

    /// `Σ f_i a^{r^i}`.
    pub fn eval(&self, f: &AdditivePoly, a: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut power = a;
        for &c in &f.coeffs {
            acc = self.ctx.add(acc, self.ctx.mul(c, power));
            power = self.ctx.frobenius_power(power, 1);
        }
        acc
    }

    /// Applies `a ↦ a^p` to every coefficient, so that `x^p ∘ h = σ_p(h) ∘ x^p`.
    pub fn sigma_p(&self, h: &AdditivePoly) -> AdditivePoly {
        AdditivePoly::new(h.coeffs.iter().map(|&c| self.ctx.frobenius_p(c)).collect())
    }

    /// `(quotient, remainder)` with `f = quotient ∘ h + remainder`.
    pub fn right_divmod(
        &self,
        f: &AdditivePoly,
        h: &AdditivePoly,
    ) -> Result<(AdditivePoly, AdditivePoly)> {
        let m = h.skew_degree().ok_or(Error::DivisionByZero)?;
        let hm = h.lead();
        let mut rem = f.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; rem.len().saturating_sub(m)];
        for k in (m..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let shift = (k - m) as i64;
            let c = self.ctx.div(rem[k], self.ctx.frobenius_power(hm, shift));
            quot[k - m] = c;
            for (j, &hj) in h.coeffs.iter().enumerate() {
                let t = self.ctx.mul(c, self.ctx.frobenius_power(hj, shift));
                rem[k - m + j] = self.ctx.sub(rem[k - m + j], t);
            }
        }
        rem.truncate(m);
        Ok((AdditivePoly::new(quot), AdditivePoly::new(rem)))
    }

    pub fn right_rem(&self, f: &AdditivePoly, h: &AdditivePoly) -> Result<AdditivePoly> {
        Ok(self.right_divmod(f, h)?.1)
    }

    /// `(quotient, remainder)` with `f = g ∘ quotient + remainder`.
    pub fn left_divmod(
        &self,
        f: &AdditivePoly,
        g: &AdditivePoly,
    ) -> Result<(AdditivePoly, AdditivePoly)> {
        let m = g.skew_degree().ok_or(Error::DivisionByZero)?;
        let gm_inv = self.ctx.inv(g.lead()).expect("nonzero lead");
        let mut rem = f.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; rem.len().saturating_sub(m)];
        for k in (m..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = self
                .ctx
                .frobenius_power(self.ctx.mul(rem[k], gm_inv), -(m as i64));
            quot[k - m] = c;
            for (i, &gi) in g.coeffs.iter().enumerate() {
                let t = self.ctx.mul(gi, self.ctx.frobenius_power(c, i as i64));
                rem[k - m + i] = self.ctx.sub(rem[k - m + i], t);
            }
        }
        rem.truncate(m);
        Ok((AdditivePoly::new(quot), AdditivePoly::new(rem)))
    }

    /// Greatest common right component, monic.
    pub fn gcrc(&self, f: &AdditivePoly, g: &AdditivePoly) -> Result<AdditivePoly> {
        if f.is_zero() && g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.right_rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    /// Least common left composition, monic.
    pub fn lclc(&self, f: &AdditivePoly, g: &AdditivePoly) -> Result<AdditivePoly> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // invariant: s_i ∘ f + t_i ∘ g = r_i; only s is needed
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (AdditivePoly::x(), AdditivePoly::zero());
        while !r1.is_zero() {
            let (quo, rem) = self.right_divmod(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.compose(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        Ok(self.monic(&self.compose(&s1, f)))
    }

    /// `f = x^{r^t} ∘ h` with `h` squarefree. Fails on zero.
    pub fn squarefree_split(&self, f: &AdditivePoly) -> Result<(usize, AdditivePoly)> {
        let t = f
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroPolynomial)?;
        let h = f.coeffs[t..]
            .iter()
            .map(|&c| self.ctx.frobenius_power(c, -(t as i64)))
            .collect();
        Ok((t, AdditivePoly::new(h)))
    }

    /// `τ(Σ a_i x^{q^i}) = Σ a_i y^i`; fails unless the input is central.
    pub fn tau(&self, f: &AdditivePoly) -> Result<CentralPoly> {
        let d = self.ctx.d() as usize;
        let mut y = Vec::with_capacity(f.coeffs.len() / d + 1);
        for (i, &c) in f.coeffs.iter().enumerate() {
            if i % d != 0 {
                if !c.is_zero() {
                    return Err(Error::NotCentral(format!(
                        "nonzero coefficient of x^(r^{i}) with {i} not a multiple of {d}"
                    )));
                }
                continue;
            }
            y.push(c);
        }
        CentralPoly::new(self.ctx, DensePoly::new(y))
    }

    pub fn tau_inv(&self, c: &CentralPoly) -> AdditivePoly {
        let d = self.ctx.d() as usize;
        let ys = c.y_poly.coeffs();
        let mut out = vec![FieldElement::ZERO; ys.len().saturating_sub(1) * d + 1];
        for (i, &a) in ys.iter().enumerate() {
            out[i * d] = a;
        }
        AdditivePoly::new(out)
    }

    /// Minimal central left composition `f*` of a nonzero `f`, returned as `τ(f*)`.
    ///
    /// The remainders of `x^{q^i}` modulo `f` are flattened into `F_r`-vectors
    /// and reduced incrementally; the first linear dependency gives `τ(f*)`.
    pub fn mclc(&self, f: &AdditivePoly) -> Result<CentralPoly> {
        let n = f.skew_degree().ok_or(Error::ZeroPolynomial)?;
        let d = self.ctx.d() as usize;
        let k = self.ctx;
        let mut basis: Vec<(usize, Vec<FieldElement>, Vec<FieldElement>)> = Vec::new();
        let mut rem = self.right_rem(&AdditivePoly::x(), f)?;
        for i in 0..=n * d {
            let mut v: Vec<FieldElement> = (0..n)
                .flat_map(|j| k.r_coords(rem.coeff(j)))
                .collect();
            let mut combo = vec![FieldElement::ZERO; i + 1];
            combo[i] = FieldElement::ONE;
            for (pivot, row, row_combo) in &basis {
                let c = v[*pivot];
                if c.is_zero() {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = k.sub(*x, k.mul(c, y));
                }
                for (x, &y) in combo.iter_mut().zip(row_combo) {
                    *x = k.sub(*x, k.mul(c, y));
                }
            }
            match v.iter().position(|c| !c.is_zero()) {
                None => return CentralPoly::new(k, DensePoly::new(combo)),
                Some(pivot) => {
                    let inv = k.inv(v[pivot]).expect("nonzero pivot");
                    let row: Vec<_> = v.iter().map(|&x| k.mul(inv, x)).collect();
                    let row_combo: Vec<_> = combo.iter().map(|&x| k.mul(inv, x)).collect();
                    basis.push((pivot, row, row_combo));
                }
            }
            // x^{q^{i+1}} = x^q ∘ x^{q^i}; composing with x^q on the left shifts by d
            let mut shifted = vec![FieldElement::ZERO; d];
            shifted.extend_from_slice(rem.coeffs());
            rem = self.right_rem(&AdditivePoly::new(shifted), f)?;
        }
        unreachable!("an F_r-space of dimension n·d has at most n·d independent vectors")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::poly::BaseField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_add(k: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> AdditivePoly {
        let mut c: Vec<_> = (0..n).map(|_| k.random(rng)).collect();
        c.push(k.random_nonzero(rng));
        AdditivePoly::new(c)
    }

    #[test]
    fn additive_conversion() {
        let k = make_field(3, 1, 2, None, 0).unwrap();
        let ore = k.ore();
        let (a, b) = (k.from_coords(&[1, 2]).unwrap(), k.from_coords(&[0, 1]).unwrap());
        let dense = DensePoly::from_terms(&k, &[(9, k.one()), (3, a), (1, b)]);
        let f = ore.to_additive(&dense).unwrap();
        assert_eq!(f.coeffs(), &[b, a, k.one()]);
        assert_eq!(ore.to_dense(&f).unwrap(), dense);
        assert_eq!(ore.to_additive(&DensePoly::x()).unwrap(), AdditivePoly::x());

        let k2 = make_field(2, 1, 1, None, 0).unwrap();
        let bad = DensePoly::new(vec![k2.one(), k2.one(), k2.one()]);
        assert_eq!(
            k2.ore().to_additive(&bad).unwrap_err(),
            Error::NotAdditive { exponent: 0 }
        );
    }

    #[test]
    fn compose_matches_dense_and_frobenius_identity() {
        let k = make_field(3, 1, 3, None, 2).unwrap();
        let (ore, pr) = (k.ore(), k.poly());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let g = rand_add(&k, 1, &mut rng);
            let h = rand_add(&k, 1, &mut rng);
            let lhs = ore.to_dense(&ore.compose(&g, &h)).unwrap();
            let rhs = pr.compose(&ore.to_dense(&g).unwrap(), &ore.to_dense(&h).unwrap());
            assert_eq!(lhs, rhs);
            let xp = AdditivePoly::frobenius(1); // r = p here
            assert_eq!(
                ore.compose(&xp, &h),
                ore.compose(&ore.sigma_p(&h), &xp)
            );
            assert_eq!(ore.compose(&g, &AdditivePoly::x()), g);
            assert_eq!(ore.compose(&AdditivePoly::x(), &g), g);
        }
        let a = k.generator();
        let lhs = ore.compose(&AdditivePoly::new(vec![a, k.one()]), &AdditivePoly::frobenius(1));
        assert_eq!(lhs, AdditivePoly::new(vec![k.zero(), a, k.one()]));
    }

    #[test]
    fn divisions_recompose() {
        let k = make_field(2, 1, 3, None, 5).unwrap();
        let ore = k.ore();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let f = rand_add(&k, 4, &mut rng);
            let h = rand_add(&k, 2, &mut rng);
            let (q, r) = ore.right_divmod(&f, &h).unwrap();
            assert_eq!(ore.add(&ore.compose(&q, &h), &r), f);
            assert!(r.skew_degree().is_none_or(|d| d < 2));
            let (q, r) = ore.left_divmod(&f, &h).unwrap();
            assert_eq!(ore.add(&ore.compose(&h, &q), &r), f);
            assert!(r.skew_degree().is_none_or(|d| d < 2));
            let gh = ore.compose(&f, &h);
            assert_eq!(ore.right_divmod(&gh, &h).unwrap(), (f.clone(), AdditivePoly::zero()));
            assert_eq!(ore.left_divmod(&gh, &f).unwrap(), (h.clone(), AdditivePoly::zero()));
            let (q, r) = ore.left_divmod(&h, &f).unwrap();
            assert!(q.is_zero());
            assert_eq!(r, h);
        }
        assert_eq!(
            ore.right_divmod(&AdditivePoly::x(), &AdditivePoly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn projective_lemma_division() {
        let k = make_field(3, 1, 3, Some(&[1, -1, 0, 1]), 0).unwrap();
        let ore = k.ore();
        let (a, b) = (k.from_int(-1), k.from_int(1));
        let f = AdditivePoly::new(vec![b, a, k.one()]);
        for h0 in k.elements() {
            let psi = k.add(k.add(k.pow(h0, 4), k.mul(a, h0)), b);
            let h = AdditivePoly::new(vec![k.neg(h0), k.one()]);
            let (quo, rem) = ore.right_divmod(&f, &h).unwrap();
            assert_eq!(rem.is_zero(), psi.is_zero());
            if psi.is_zero() {
                assert_eq!(quo.coeff(0), k.neg(k.div(b, h0)));
            }
        }
    }

    #[test]
    fn gcrc_lclc_basics() {
        let k = make_field(2, 1, 2, None, 0).unwrap();
        let (ore, pr) = (k.ore(), k.poly());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let f = rand_add(&k, 2, &mut rng);
            let g = rand_add(&k, 2, &mut rng);
            assert_eq!(ore.gcrc(&f, &f).unwrap(), ore.monic(&f));
            assert_eq!(ore.lclc(&f, &f).unwrap(), ore.monic(&f));
            let gc = ore.gcrc(&f, &g).unwrap();
            let dense_gcd = pr
                .gcd(&ore.to_dense(&f).unwrap(), &ore.to_dense(&g).unwrap())
                .unwrap();
            assert_eq!(ore.to_dense(&gc).unwrap(), dense_gcd);
            let lc = ore.lclc(&f, &g).unwrap();
            assert!(ore.right_rem(&lc, &f).unwrap().is_zero());
            assert!(ore.right_rem(&lc, &g).unwrap().is_zero());
            assert_eq!(
                lc.skew_degree().unwrap() + gc.skew_degree().unwrap(),
                4
            );
            let w = rand_add(&k, 1, &mut rng);
            let common = ore
                .gcrc(&ore.compose(&f, &w), &ore.compose(&g, &w))
                .unwrap();
            assert!(ore.right_rem(&common, &w).unwrap().is_zero());
        }
        // x^{r²} and x^r + x share only the root 0
        let f = AdditivePoly::frobenius(2);
        let g = AdditivePoly::new(vec![k.one(), k.one()]);
        assert_eq!(ore.gcrc(&f, &g).unwrap(), AdditivePoly::x());
    }

    #[test]
    fn squarefree_split_examples() {
        let k = make_field(3, 1, 2, None, 0).unwrap();
        let ore = k.ore();
        let f = AdditivePoly::frobenius(2);
        assert_eq!(ore.squarefree_split(&f).unwrap(), (2, AdditivePoly::x()));
        let a = k.generator();
        let f = AdditivePoly::new(vec![k.zero(), a, k.one()]);
        let (t, h) = ore.squarefree_split(&f).unwrap();
        assert_eq!(t, 1);
        assert!(h.is_squarefree());
        assert_eq!(ore.compose(&AdditivePoly::frobenius(1), &h), f);
        let g = AdditivePoly::new(vec![k.one(), a, k.one()]);
        assert_eq!(ore.squarefree_split(&g).unwrap(), (0, g.clone()));
    }

    #[test]
    fn tau_homomorphism_and_examples() {
        let k = make_field(2, 1, 2, None, 0).unwrap();
        let (ore, pr) = (k.ore(), k.poly());
        let c = k.one();
        let central = AdditivePoly::new(vec![k.neg(c), k.zero(), k.one()]);
        assert_eq!(
            ore.tau(&central).unwrap().y_poly(),
            &DensePoly::new(vec![k.neg(c), k.one()])
        );
        assert_eq!(ore.tau(&AdditivePoly::x()).unwrap().y_poly(), &DensePoly::one());
        assert!(ore.tau(&AdditivePoly::frobenius(1)).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let ya = DensePoly::new((0..3).map(|_| k.random_subfield(&mut rng)).collect());
            let yb = DensePoly::new((0..3).map(|_| k.random_subfield(&mut rng)).collect());
            let (ca, cb) = (CentralPoly::new(&k, ya.clone()).unwrap(), CentralPoly::new(&k, yb.clone()).unwrap());
            let prod = ore.compose(&ore.tau_inv(&ca), &ore.tau_inv(&cb));
            assert_eq!(ore.tau(&prod).unwrap().y_poly(), &pr.mul(&ya, &yb));
            assert_eq!(ore.tau(&ore.tau_inv(&ca)).unwrap(), ca);
        }
    }

    #[test]
    fn mclc_is_a_minimal_left_multiple() {
        let k = make_field(2, 1, 3, None, 1).unwrap();
        let (ore, pr) = (k.ore(), k.poly());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..=3 {
            for _ in 0..30 {
                let f = rand_add(&k, n, &mut rng);
                let tau = ore.mclc(&f).unwrap();
                assert!(tau.y_poly().is_monic());
                let lifted = ore.tau_inv(&tau);
                assert!(ore.right_rem(&lifted, &f).unwrap().is_zero());
                for (u, _) in pr.factor(tau.y_poly(), BaseField::Fr, 0).unwrap() {
                    let proper = pr.divmod(tau.y_poly(), &u).unwrap().0;
                    let c = CentralPoly::new(&k, proper).unwrap();
                    assert!(!ore.right_rem(&ore.tau_inv(&c), &f).unwrap().is_zero());
                }
            }
        }
        // central input is its own mclc
        let central = AdditivePoly::new(vec![k.one(), k.zero(), k.zero(), k.one()]);
        assert_eq!(ore.tau_inv(&ore.mclc(&central).unwrap()), central);
    }
}
