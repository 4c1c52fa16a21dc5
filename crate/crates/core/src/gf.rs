//! Arithmetic in the tower `F_p ⊆ F_r ⊆ F_q` with `r = p^d0` and `q = r^d`.
//!
//! `F_q` is represented once, as `F_p[y]/(m)` for a monic irreducible `m` of
//! degree `d0·d`. An element is stored as the integer `Σ c_i p^i` packing its
//! power-basis coordinates `c_i`, which makes elements `Copy` and gives a
//! canonical enumeration order. `F_r` is found inside `F_q` as the kernel of
//! the `F_p`-linear map `a ↦ a^r − a`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fields up to this size get discrete log tables for multiplication.
const TABLE_LIMIT: u64 = 1 << 16;

/// An element of `F_q`, packed as `Σ c_i p^i` over its power-basis coordinates.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Position of the element in the enumeration order.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn from_index(index: u64) -> Self {
        FieldElement(index)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u64>,
    log: Vec<u64>,
}

/// The field tower `F_p ⊆ F_r ⊆ F_q`. Immutable once built.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    d0: u32,
    d: u32,
    n: u32,
    r: u64,
    q: u64,
    modulus: Vec<u64>,
    radix: Vec<u64>,
    tables: Option<LogTables>,
    /// `F_p`-basis of `F_r`.
    fr_basis: Vec<FieldElement>,
    /// `F_r`-basis `1, y, …, y^{d-1}` of `F_q`.
    r_basis: Vec<FieldElement>,
    /// Maps power-basis coordinates to coordinates in the basis `β_k y^j`.
    coord_inverse: Vec<Vec<u64>>,
    subfield: Vec<FieldElement>,
}

/// Builds the field `F_q` with `q = p^{d0·d}`.
///
/// When `modulus` is absent a random monic irreducible polynomial is drawn
/// from a ChaCha stream seeded with `seed` (for degree one the modulus `y`
/// is used). A supplied modulus is given constant-first; entries are reduced
/// mod `p`.
pub fn make_field(
    p: u64,
    d0: u32,
    d: u32,
    modulus: Option<&[i64]>,
    seed: u64,
) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= 1 << 31 {
        return Err(Error::InvalidField(format!("characteristic {p} too large")));
    }
    if d0 == 0 || d == 0 {
        return Err(Error::InvalidField("d0 and d must be positive".into()));
    }
    let n = d0
        .checked_mul(d)
        .ok_or_else(|| Error::InvalidField("degree overflow".into()))?;
    let q = p
        .checked_pow(n)
        .filter(|&q| q < 1 << 62)
        .ok_or_else(|| Error::InvalidField(format!("{p}^{n} is too large")))?;
    let r = p.pow(d0);

    let modulus = match modulus {
        Some(coeffs) => {
            let m: Vec<u64> = coeffs.iter().map(|&c| reduce_i64(c, p)).collect();
            if m.len() != n as usize + 1 || m[n as usize] != 1 {
                return Err(Error::InvalidField(format!(
                    "modulus must be monic of degree {n}"
                )));
            }
            if !fp::is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus(p));
            }
            m
        }
        None if n == 1 => vec![0, 1],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let mut m: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                m.push(1);
                if m[0] != 0 && fp::is_irreducible(&m, p) {
                    break m;
                }
            }
        }
    };

    let radix: Vec<u64> = (0..=n).map(|i| p.pow(i)).collect();
    let mut ctx = FieldCtx {
        p,
        d0,
        d,
        n,
        r,
        q,
        modulus,
        radix,
        tables: None,
        fr_basis: Vec::new(),
        r_basis: Vec::new(),
        coord_inverse: Vec::new(),
        subfield: Vec::new(),
    };
    if q <= TABLE_LIMIT {
        ctx.tables = Some(ctx.build_tables());
    }
    ctx.build_subfield()?;
    Ok(ctx)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn d0(&self) -> u32 {
        self.d0
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    /// Degree of `F_q` over `F_p`.
    pub fn degree(&self) -> u32 {
        self.n
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Modulus coefficients over `F_p`, constant-first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    pub fn r_basis(&self) -> &[FieldElement] {
        &self.r_basis
    }
    /// The `r` elements of `F_r`, in enumeration order.
    pub fn subfield_elements(&self) -> &[FieldElement] {
        &self.subfield
    }

    /// Field spec string, e.g. `p=3,d0=1,d=3,mod=1,2,0,1`.
    pub fn spec_string(&self) -> String {
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!(
            "p={},d0={},d={},mod={}",
            self.p,
            self.d0,
            self.d,
            m.join(",")
        )
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of `y` in `F_p[y]/(m)`.
    pub fn generator(&self) -> FieldElement {
        if self.n == 1 {
            self.from_int(-(self.modulus[0] as i64))
        } else {
            FieldElement(self.p)
        }
    }

    /// The image of an integer under `Z → F_p ⊆ F_q`.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(reduce_i64(k, self.p))
    }

    /// Builds an element from power-basis coordinates (constant-first, reduced mod p).
    pub fn from_coords(&self, coords: &[i64]) -> Result<FieldElement> {
        if coords.len() > self.n as usize {
            return Err(Error::Parse(format!(
                "element has {} coordinates, field degree is {}",
                coords.len(),
                self.n
            )));
        }
        Ok(self.pack(coords.iter().map(|&c| reduce_i64(c, self.p))))
    }

    /// Power-basis coordinates over `F_p`, constant-first, always `degree()` long.
    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        let mut x = a.0;
        (0..self.n)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    fn pack(&self, coords: impl IntoIterator<Item = u64>) -> FieldElement {
        let mut v = 0;
        for (c, place) in coords.into_iter().zip(&self.radix) {
            v += c * place;
        }
        FieldElement(v)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.n == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x != 0 || y != 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x != 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let e = (t.log[a.0 as usize] + t.log[b.0 as usize]) % (self.q - 1);
                FieldElement(t.exp[e as usize])
            }
            None => self.slow_mul(a, b),
        }
    }

    /// Multiplication by an `F_p` scalar.
    pub fn scale(&self, k: u64, a: FieldElement) -> FieldElement {
        let k = k % self.p;
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x != 0 {
            out += ((x % self.p) * k % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    fn slow_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let n = self.n as usize;
        let p = self.p;
        let (ca, cb) = (self.coords(a), self.coords(b));
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let t = c * self.modulus[i] % p;
                prod[k - n + i] = (prod[k - n + i] + p - t) % p;
            }
        }
        self.pack(prod.into_iter().take(n))
    }

    pub fn pow(&self, a: FieldElement, e: u128) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let order = (self.q - 1) as u128;
            let l = (t.log[a.0 as usize] as u128 * (e % order)) % order;
            return FieldElement(t.exp[l as usize]);
        }
        let e = e % (self.q - 1) as u128;
        let e = if e == 0 { (self.q - 1) as u128 } else { e };
        let (mut base, mut acc, mut k) = (a, FieldElement::ONE, e);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let l = t.log[a.0 as usize];
                Some(FieldElement(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
            }
            None => Some(self.pow(a, (self.q - 2) as u128)),
        }
    }

    /// `a / b`. Panics when `b` is zero.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b).expect("division by zero in F_q"))
    }

    /// `a^{r^i}`. Negative `i` gives the inverse automorphism.
    pub fn frobenius_power(&self, a: FieldElement, i: i64) -> FieldElement {
        let k = i.rem_euclid(self.d as i64) as u32;
        if k == 0 || a.is_zero() || a.is_one() {
            return a;
        }
        // r^k < q fits in u64
        self.pow(a, self.r.pow(k) as u128)
    }

    /// `a^p`, the absolute Frobenius.
    pub fn frobenius_p(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u128)
    }

    /// Applies the absolute Frobenius `a ↦ a^{p^i}`; `i` may be negative.
    pub fn frobenius_p_power(&self, a: FieldElement, i: i64) -> FieldElement {
        let k = i.rem_euclid(self.n as i64) as u32;
        if k == 0 {
            return a;
        }
        self.pow(a, (self.p as u128).pow(k))
    }

    pub fn in_subfield(&self, a: FieldElement) -> bool {
        self.frobenius_power(a, 1) == a
    }

    /// Coordinates of `a` over `F_r` in `r_basis()`; each entry lies in `F_r`.
    pub fn r_coords(&self, a: FieldElement) -> Vec<FieldElement> {
        let c = self.coords(a);
        let p = self.p;
        let d0 = self.d0 as usize;
        let e: Vec<u64> = self
            .coord_inverse
            .iter()
            .map(|row| row.iter().zip(&c).map(|(x, y)| x * y % p).sum::<u64>() % p)
            .collect();
        (0..self.d as usize)
            .map(|j| {
                (0..d0).fold(FieldElement::ZERO, |acc, k| {
                    self.add(acc, self.scale(e[j * d0 + k], self.fr_basis[k]))
                })
            })
            .collect()
    }

    /// Inverse of [`FieldCtx::r_coords`].
    pub fn from_r_coords(&self, coords: &[FieldElement]) -> FieldElement {
        coords
            .iter()
            .zip(&self.r_basis)
            .fold(FieldElement::ZERO, |acc, (&c, &b)| {
                self.add(acc, self.mul(c, b))
            })
    }

    /// All `q` elements in lexicographic coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q).map(FieldElement)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.q))
    }

    pub fn random_subfield<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        self.subfield[rng.gen_range(0..self.subfield.len())]
    }

    /// Element written as comma-separated `F_p` coordinates, constant-first.
    pub fn format(&self, a: FieldElement) -> String {
        let c: Vec<String> = self.coords(a).iter().map(|x| x.to_string()).collect();
        c.join(",")
    }

    /// Like [`FieldCtx::format`], bracketed when the element has several coordinates.
    pub fn format_in_list(&self, a: FieldElement) -> String {
        if self.n == 1 {
            self.format(a)
        } else {
            format!("[{}]", self.format(a))
        }
    }

    /// Human-readable form as a polynomial in `y`, e.g. `2y^2+y+1`.
    pub fn format_pretty(&self, a: FieldElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coords(a).iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}y"),
                _ => format!("{coeff}y^{i}"),
            });
        }
        terms.join("+")
    }

    fn build_tables(&self) -> LogTables {
        let order = self.q - 1;
        let factors = prime_factors(order);
        let g = (1..self.q)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| !self.slow_pow(g, order / l).is_one())
            })
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u64; self.q as usize];
        let mut x = FieldElement::ONE;
        for i in 0..order {
            exp.push(x.0);
            log[x.0 as usize] = i;
            x = self.slow_mul(x, g);
        }
        LogTables { exp, log }
    }

    fn slow_pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_subfield(&mut self) -> Result<()> {
        let n = self.n as usize;
        let p = self.p;
        // matrix of a ↦ a^r − a on the power basis; columns are images of y^i
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let basis = FieldElement(self.radix[i]);
            let image = self.sub(self.pow(basis, self.r as u128), basis);
            cols.push(self.coords(image));
        }
        let rows: Vec<Vec<u64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let kernel = fp::kernel(rows, p);
        if kernel.len() != self.d0 as usize {
            return Err(Error::InvalidField(format!(
                "fixed field has dimension {} over F_p, expected {}",
                kernel.len(),
                self.d0
            )));
        }
        self.fr_basis = kernel.into_iter().map(|v| self.pack(v)).collect();

        let y = self.generator();
        self.r_basis = (0..self.d)
            .scan(FieldElement::ONE, |acc, _| {
                let cur = *acc;
                *acc = self.mul(*acc, y);
                Some(cur)
            })
            .collect();

        // columns coords(β_k y^j), column index j·d0 + k
        let mut m = vec![vec![0u64; n]; n];
        for (j, &yj) in self.r_basis.iter().enumerate() {
            for (k, &b) in self.fr_basis.iter().enumerate() {
                let c = self.coords(self.mul(b, yj));
                for (row, &v) in c.iter().enumerate() {
                    m[row][j * self.d0 as usize + k] = v;
                }
            }
        }
        self.coord_inverse = fp::inverse(m, p).ok_or_else(|| {
            Error::InvalidField("F_r-basis of F_q is degenerate".into())
        })?;

        let mut sub: Vec<FieldElement> = (0..self.r)
            .map(|mut idx| {
                let mut acc = FieldElement::ZERO;
                for &b in &self.fr_basis {
                    acc = self.add(acc, self.scale(idx % p, b));
                    idx /= p;
                }
                acc
            })
            .collect();
        sub.sort();
        self.subfield = sub;
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn reduce_i64(c: i64, p: u64) -> u64 {
    c.rem_euclid(p as i64) as u64
}

/// Dense `F_p` polynomial and matrix helpers used to validate the modulus and
/// to locate the subfield.
mod fp {
    use super::prime_factors;

    fn inv(a: u64, p: u64) -> u64 {
        let (mut acc, mut base, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        trim(&mut a);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while a.len() > dm {
            let k = a.len() - 1;
            let c = a[k] * lead_inv % p;
            for i in 0..=dm {
                let t = c * m[i] % p;
                a[k - dm + i] = (a[k - dm + i] + p - t) % p;
            }
            trim(&mut a);
        }
        a
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test: `x^{p^n} ≡ x` and `gcd(x^{p^{n/l}} − x, m) = 1` for primes `l | n`.
    pub(super) fn is_irreducible(m: &[u64], p: u64) -> bool {
        let n = m.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        // xs[k] = x^{p^k} mod m
        let mut xs = vec![rem(&x, m, p)];
        for k in 0..n {
            let next = powmod(&xs[k], p, m, p);
            xs.push(next);
        }
        let sub_x = |v: &[u64]| {
            let mut v = v.to_vec();
            if v.len() < 2 {
                v.resize(2, 0);
            }
            v[1] = (v[1] + p - 1) % p;
            trim(&mut v);
            v
        };
        if !sub_x(&xs[n]).is_empty() {
            return false;
        }
        prime_factors(n as u64).into_iter().all(|l| {
            let g = gcd(&sub_x(&xs[n / l as usize]), m, p);
            g.len() == 1
        })
    }

    /// Basis of the right kernel of `rows` over `F_p`.
    pub(super) fn kernel(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pr) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let iv = inv(rows[rank][col], p);
            for v in rows[rank].iter_mut() {
                *v = *v * iv % p;
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for j in 0..ncols {
                        let t = f * rows[rank][j] % p;
                        rows[i][j] = (rows[i][j] + p - t) % p;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; ncols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - rows[i][fc]) % p;
                }
                v
            })
            .collect()
    }

    pub(super) fn inverse(m: Vec<Vec<u64>>, p: u64) -> Option<Vec<Vec<u64>>> {
        let n = m.len();
        let mut a: Vec<Vec<u64>> = m
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        for col in 0..n {
            let pr = (col..n).find(|&i| a[i][col] != 0)?;
            a.swap(col, pr);
            let iv = inv(a[col][col], p);
            for v in a[col].iter_mut() {
                *v = *v * iv % p;
            }
            for i in 0..n {
                if i != col && a[i][col] != 0 {
                    let f = a[i][col];
                    for j in 0..2 * n {
                        let t = f * a[col][j] % p;
                        a[i][j] = (a[i][j] + p - t) % p;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f27() -> FieldCtx {
        make_field(3, 1, 3, Some(&[1, -1, 0, 1]), 0).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1, 1, None, 0).unwrap_err(), Error::NotPrime(4));
        // y^2 + 1 = (y+1)^2 over F_2
        assert_eq!(
            make_field(2, 1, 2, Some(&[1, 0, 1]), 0).unwrap_err(),
            Error::ReducibleModulus(2)
        );
        assert!(matches!(
            make_field(3, 1, 3, Some(&[1, 1, 1]), 0),
            Err(Error::InvalidField(_))
        ));
        assert!(make_field(2, 0, 1, None, 0).is_err());
    }

    #[test]
    fn prime_field_degenerate_tower() {
        let k = make_field(2, 1, 1, None, 0).unwrap();
        assert_eq!(k.modulus(), &[0, 1]);
        assert_eq!(k.q(), 2);
        assert_eq!(k.elements().collect::<Vec<_>>(), vec![FieldElement(0), FieldElement(1)]);
        assert_eq!(k.generator(), FieldElement::ZERO);
    }

    #[test]
    fn seeded_f16_modulus_is_irreducible() {
        let k = make_field(2, 2, 2, None, 1).unwrap();
        let m = k.modulus();
        assert_eq!(m.len(), 5);
        // trial division by every binary polynomial of degree 1 and 2
        for cand in 2u64..8 {
            let c: Vec<u64> = (0..3).map(|i| (cand >> i) & 1).collect();
            let dc = if c[2] == 1 { 2 } else { 1 };
            let mut rem = m.to_vec();
            for top in (dc..rem.len()).rev() {
                if rem[top] == 1 {
                    for i in 0..=dc {
                        rem[top - dc + i] ^= c[i];
                    }
                }
            }
            assert!(rem[..dc].iter().any(|&x| x != 0), "divisible by {c:?}");
        }
        // same seed, same modulus
        assert_eq!(make_field(2, 2, 2, None, 1).unwrap().modulus(), m);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, d0, d) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (3, 2, 2), (3, 1, 4), (2, 3, 1)] {
            let k = make_field(p, d0, d, None, 7).unwrap();
            let elems: Vec<_> = k.elements().collect();
            for &a in &elems {
                if !a.is_zero() {
                    assert!(k.mul(a, k.inv(a).unwrap()).is_one());
                }
                assert!(k.add(a, k.neg(a)).is_zero());
                for &b in &elems {
                    assert_eq!(k.mul(a, b), k.slow_mul(a, b));
                    assert_eq!(k.add(a, b), k.add(b, a));
                    let ar = k.frobenius_power(a, 1);
                    let br = k.frobenius_power(b, 1);
                    assert_eq!(k.frobenius_power(k.add(a, b), 1), k.add(ar, br));
                    assert_eq!(k.frobenius_power(k.mul(a, b), 1), k.mul(ar, br));
                }
            }
            // associativity and distributivity on a sample of triples
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..500 {
                let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
                assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
            }
        }
    }

    #[test]
    fn subfield_has_exactly_r_elements() {
        for (p, d0, d) in [(2, 1, 4), (3, 1, 3), (2, 2, 2), (3, 2, 2), (2, 2, 3)] {
            let k = make_field(p, d0, d, None, 11).unwrap();
            let fixed: Vec<_> = k.elements().filter(|&a| k.in_subfield(a)).collect();
            assert_eq!(fixed.len() as u64, k.r());
            assert_eq!(fixed, k.subfield_elements());
        }
    }

    #[test]
    fn r_coords_round_trip() {
        for (p, d0, d) in [(2, 2, 2), (3, 1, 4), (3, 2, 2), (2, 1, 3)] {
            let k = make_field(p, d0, d, None, 5).unwrap();
            let mut seen = std::collections::HashSet::new();
            for a in k.elements() {
                let c = k.r_coords(a);
                assert_eq!(c.len(), d as usize);
                assert!(c.iter().all(|&x| k.in_subfield(x)));
                assert_eq!(k.from_r_coords(&c), a);
                seen.insert(c);
            }
            assert_eq!(seen.len() as u64, k.q());
            let mut e0 = vec![FieldElement::ZERO; d as usize];
            e0[0] = FieldElement::ONE;
            assert_eq!(k.r_coords(k.r_basis()[0]), e0);
            assert!(k.r_coords(FieldElement::ZERO).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn f27_frobenius_of_minus_y_squared() {
        let k = f27();
        let a = k.from_coords(&[0, 0, -1]).unwrap();
        // y^3 = y - 1, so -y^6 = -(y-1)^2 = -y^2 - y - 1
        assert_eq!(k.coords(k.frobenius_power(a, 1)), vec![2, 2, 2]);
        assert_eq!(k.frobenius_power(FieldElement::ONE, 5), FieldElement::ONE);
        assert_eq!(k.frobenius_power(FieldElement::ZERO, 2), FieldElement::ZERO);
    }

    #[test]
    fn frobenius_orbits_close_after_d_steps() {
        let k = f27();
        for a in k.elements() {
            assert_eq!(k.pow(a, 27), a);
            let mut x = a;
            for _ in 0..3 {
                x = k.pow(x, 3);
            }
            assert_eq!(x, a);
            assert_eq!(k.frobenius_power(k.frobenius_power(a, 2), -2), a);
        }
        let sub = k.elements().filter(|&a| k.pow(a, 3) == a).count();
        assert_eq!(sub, 3);
    }

    #[test]
    fn f4_multiplicative_group_is_cyclic() {
        let k = make_field(2, 1, 2, None, 0).unwrap();
        let nz: Vec<_> = k.nonzero_elements().collect();
        assert_eq!(nz.len(), 3);
        let gens = nz
            .iter()
            .filter(|&&g| {
                let mut seen: Vec<_> = (0..3).map(|e| k.pow(g, e)).collect();
                seen.sort();
                seen == nz
            })
            .count();
        assert_eq!(gens, 2);
    }

    #[test]
    fn slow_path_matches_tables() {
        // 2^17 forces schoolbook multiplication
        let big = make_field(2, 1, 17, None, 2).unwrap();
        assert!(big.tables.is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let a = big.random_nonzero(&mut rng);
            assert!(big.mul(a, big.inv(a).unwrap()).is_one());
            assert_eq!(big.pow(a, big.q() as u128), a);
        }
    }
}
