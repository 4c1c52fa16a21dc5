mod common;

use std::sync::OnceLock;

use common::{expand, naive_add, naive_compose, naive_mul};
use orecomp::poly::cmp_poly;
use orecomp::text::{format_additive, format_poly, parse_additive, parse_poly};
use orecomp::{
    make_field, AdditivePoly, BaseField, CentralPoly, DensePoly, FieldCtx, FieldElement,
};
use proptest::prelude::*;

const TOWERS: &[(u64, u32, u32)] = &[
    (2, 1, 1),
    (3, 1, 1),
    (2, 1, 2),
    (2, 1, 3),
    (3, 1, 2),
    (2, 2, 2),
    (2, 1, 4),
    (5, 1, 2),
    (3, 1, 3),
    (3, 3, 1),
    (7, 1, 1),
];

fn fields() -> &'static [FieldCtx] {
    static FIELDS: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        TOWERS
            .iter()
            .map(|&(p, d0, d)| make_field(p, d0, d, None, 11).unwrap())
            .collect()
    })
}

fn elems(ctx: &FieldCtx, raw: &[u64]) -> Vec<FieldElement> {
    raw.iter()
        .map(|&x| FieldElement::from_index(x % ctx.q()))
        .collect()
}

fn additive(ctx: &FieldCtx, raw: &[u64]) -> AdditivePoly {
    AdditivePoly::new(elems(ctx, raw))
}

fn dense(ctx: &FieldCtx, raw: &[u64]) -> DensePoly {
    DensePoly::new(elems(ctx, raw))
}

fn raw(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), len)
}

fn field_index() -> impl Strategy<Value = usize> {
    0..TOWERS.len()
}

/// Fields small enough that composing skew degrees summing to 4 stays cheap densely.
fn small_r_index() -> impl Strategy<Value = usize> {
    prop::sample::select(
        (0..TOWERS.len())
            .filter(|&i| TOWERS[i].0.pow(TOWERS[i].1) <= 3)
            .collect::<Vec<_>>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn skew_composition_matches_dense_composition(
        fi in small_r_index(), g in raw(1..=3), h in raw(1..=3)
    ) {
        let ctx = &fields()[fi];
        let (g, h) = (additive(ctx, &g), additive(ctx, &h));
        let skew = ctx.ore().compose(&g, &h);
        let want = naive_compose(ctx, &expand(ctx, &g), &expand(ctx, &h));
        prop_assert_eq!(expand(ctx, &skew), want);
    }

    #[test]
    fn dense_multiplication_matches_schoolbook(
        fi in field_index(), a in raw(0..=12), b in raw(0..=12)
    ) {
        let ctx = &fields()[fi];
        let (a, b) = (dense(ctx, &a), dense(ctx, &b));
        let got = ctx.poly().mul(&a, &b);
        prop_assert_eq!(got.coeffs().to_vec(), naive_mul(ctx, a.coeffs(), b.coeffs()));
        let sum = ctx.poly().add(&a, &b);
        prop_assert_eq!(sum.coeffs().to_vec(), naive_add(ctx, a.coeffs(), b.coeffs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn skew_composition_is_associative(
        fi in field_index(), a in raw(1..=4), b in raw(1..=4), c in raw(1..=4)
    ) {
        let ctx = &fields()[fi];
        let ore = ctx.ore();
        let (a, b, c) = (additive(ctx, &a), additive(ctx, &b), additive(ctx, &c));
        prop_assert_eq!(
            ore.compose(&ore.compose(&a, &b), &c),
            ore.compose(&a, &ore.compose(&b, &c))
        );
    }

    #[test]
    fn composition_distributes_on_the_left(
        fi in field_index(), a in raw(1..=4), b in raw(1..=4), c in raw(1..=4)
    ) {
        let ctx = &fields()[fi];
        let ore = ctx.ore();
        let (a, b, c) = (additive(ctx, &a), additive(ctx, &b), additive(ctx, &c));
        prop_assert_eq!(
            ore.compose(&a, &ore.add(&b, &c)),
            ore.add(&ore.compose(&a, &b), &ore.compose(&a, &c))
        );
    }

    #[test]
    fn right_division_identity(fi in field_index(), f in raw(1..=7), h in raw(1..=4)) {
        let ctx = &fields()[fi];
        let ore = ctx.ore();
        let (f, h) = (additive(ctx, &f), additive(ctx, &h));
        prop_assume!(!h.is_zero());
        let (quo, rem) = ore.right_divmod(&f, &h).unwrap();
        prop_assert_eq!(ore.add(&ore.compose(&quo, &h), &rem), f);
        prop_assert!(rem.skew_degree() < h.skew_degree());
    }

    #[test]
    fn left_division_identity(fi in field_index(), f in raw(1..=7), g in raw(1..=4)) {
        let ctx = &fields()[fi];
        let ore = ctx.ore();
        let (f, g) = (additive(ctx, &f), additive(ctx, &g));
        prop_assume!(!g.is_zero());
        let (quo, rem) = ore.left_divmod(&f, &g).unwrap();
        prop_assert_eq!(ore.add(&ore.compose(&g, &quo), &rem), f);
        prop_assert!(rem.skew_degree() < g.skew_degree());
    }

    #[test]
    fn gcrc_and_lclc_degrees_add_up(fi in field_index(), f in raw(1..=5), g in raw(1..=5)) {
        let ctx = &fields()[fi];
        let ore = ctx.ore();
        let (f, g) = (additive(ctx, &f), additive(ctx, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let d = ore.gcrc(&f, &g).unwrap();
        let l = ore.lclc(&f, &g).unwrap();
        prop_assert!(d.is_monic() && l.is_monic());
        for x in [&f, &g] {
            prop_assert!(ore.right_rem(x, &d).unwrap().is_zero());
            prop_assert!(ore.right_rem(&l, x).unwrap().is_zero());
        }
        prop_assert_eq!(
            d.skew_degree().unwrap() + l.skew_degree().unwrap(),
            f.skew_degree().unwrap() + g.skew_degree().unwrap()
        );
    }

    #[test]
    fn squarefree_split_recomposes(fi in field_index(), f in raw(1..=6)) {
        let ctx = &fields()[fi];
        let ore = ctx.ore();
        let f = additive(ctx, &f);
        prop_assume!(!f.is_zero());
        let (t, h) = ore.squarefree_split(&f).unwrap();
        prop_assert!(h.is_squarefree());
        prop_assert_eq!(ore.compose(&AdditivePoly::frobenius(t), &h), f);
    }

    #[test]
    fn mclc_is_a_central_left_multiple(fi in field_index(), f in raw(1..=4)) {
        let ctx = &fields()[fi];
        let ore = ctx.ore();
        let f = additive(ctx, &f);
        prop_assume!(!f.is_zero());
        let central = ore.mclc(&f).unwrap();
        let lifted = ore.tau_inv(&central);
        prop_assert!(ore.right_rem(&lifted, &f).unwrap().is_zero());
        prop_assert_eq!(ore.tau(&lifted).unwrap(), central);
        // central elements commute with everything
        let probe = additive(ctx, &[3, 5, 7]);
        prop_assert_eq!(ore.compose(&lifted, &probe), ore.compose(&probe, &lifted));
    }

    #[test]
    fn dense_division_identity(fi in field_index(), a in raw(0..=14), b in raw(1..=6)) {
        let ctx = &fields()[fi];
        let pr = ctx.poly();
        let (a, b) = (dense(ctx, &a), dense(ctx, &b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = pr.divmod(&a, &b).unwrap();
        prop_assert_eq!(pr.add(&pr.mul(&quo, &b), &rem), a);
        prop_assert!(rem.degree() < b.degree() || rem.is_zero());
    }

    #[test]
    fn factorization_round_trips(fi in field_index(), f in raw(2..=9), seed in any::<u64>()) {
        let ctx = &fields()[fi];
        let pr = ctx.poly();
        let f = dense(ctx, &f);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let factors = pr.factor(&f, BaseField::Fq, seed).unwrap();
        let mut product = DensePoly::one();
        for (g, e) in &factors {
            prop_assert!(g.is_monic());
            prop_assert!(pr.is_irreducible(g, BaseField::Fq));
            product = pr.mul(&product, &pr.pow(g, u64::from(*e)));
        }
        prop_assert_eq!(product, pr.monic(&f));
        prop_assert!(factors.windows(2).all(|w| cmp_poly(&w[0].0, &w[1].0).is_lt()));
    }

    #[test]
    fn factorization_over_fr_round_trips(fi in field_index(), f in raw(2..=8), seed in any::<u64>()) {
        let ctx = &fields()[fi];
        let pr = ctx.poly();
        let sub = ctx.subfield_elements();
        let f = DensePoly::new(f.iter().map(|&x| sub[(x % sub.len() as u64) as usize]).collect());
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let factors = pr.factor(&f, BaseField::Fr, seed).unwrap();
        let mut product = DensePoly::one();
        for (g, e) in &factors {
            prop_assert!(g.coeffs().iter().all(|&c| ctx.in_subfield(c)));
            prop_assert!(pr.is_irreducible(g, BaseField::Fr));
            product = pr.mul(&product, &pr.pow(g, u64::from(*e)));
        }
        prop_assert!(CentralPoly::new(ctx, product.clone()).is_ok());
        prop_assert_eq!(product, pr.monic(&f));
    }

    #[test]
    fn r_coordinates_round_trip(fi in field_index(), x in any::<u64>(), y in any::<u64>()) {
        let ctx = &fields()[fi];
        let (a, b) = (FieldElement::from_index(x % ctx.q()), FieldElement::from_index(y % ctx.q()));
        let ca = ctx.r_coords(a);
        prop_assert_eq!(ca.len(), ctx.d() as usize);
        prop_assert!(ca.iter().all(|&c| ctx.in_subfield(c)));
        prop_assert_eq!(ctx.from_r_coords(&ca), a);
        // F_r-linearity
        let cs: Vec<_> = ca.iter().zip(ctx.r_coords(b)).map(|(&u, v)| ctx.add(u, v)).collect();
        prop_assert_eq!(ctx.r_coords(ctx.add(a, b)), cs);
    }

    #[test]
    fn field_axioms(fi in field_index(), x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
        let ctx = &fields()[fi];
        let [a, b, c] = [x, y, z].map(|v| FieldElement::from_index(v % ctx.q()));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        if let Some(inv) = ctx.inv(a) {
            prop_assert!(ctx.mul(a, inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        // Frobenius is a ring homomorphism fixing exactly F_r
        let fr = |v| ctx.frobenius_power(v, 1);
        prop_assert_eq!(fr(ctx.mul(a, b)), ctx.mul(fr(a), fr(b)));
        prop_assert_eq!(fr(a) == a, ctx.in_subfield(a));
        prop_assert_eq!(ctx.frobenius_power(fr(a), -1), a);
    }

    #[test]
    fn text_formats_round_trip(fi in field_index(), f in raw(0..=10)) {
        let ctx = &fields()[fi];
        let d = dense(ctx, &f);
        prop_assert_eq!(parse_poly(ctx, &format_poly(ctx, &d)).unwrap(), d);
        let a = additive(ctx, &f);
        prop_assert_eq!(parse_additive(ctx, &format_additive(ctx, &a)).unwrap(), a);
    }
}
