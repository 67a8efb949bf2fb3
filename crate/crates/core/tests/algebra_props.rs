use std::sync::Arc;

use ncg_core::algebra_core::{
    from_json, poly_normal_form, poly_normal_form_random, to_json, GeneratorSpec, Phase, TorusElement, TwistedPoly,
};
use ncg_core::{rat, Cyclotomic};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Poly = TwistedPoly<Cyclotomic>;
type Torus = TorusElement<Cyclotomic>;

const NAMES: [&str; 5] = ["a", "a*", "b", "b*", "t"];

fn phase_strategy() -> impl Strategy<Value = (i64, i64)> {
    // θ = 1/2 gives λ = −1, which the sphere excludes.
    (1i64..7).prop_flat_map(|q| (0..q, Just(q))).prop_filter("λ = −1", |&(p, q)| 2 * p != q)
}

/// `(word, p, q, k)`: coefficient `(p/q) ζ^k` in the field of the phase.
type RawTerm = (Vec<usize>, i64, i64, i64);

fn raw_poly() -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec((prop::collection::vec(0usize..5, 0..4), -3i64..4, 1i64..4, 0i64..6), 1..4)
}

fn build(spec: &Arc<GeneratorSpec>, raw: &[RawTerm]) -> Poly {
    let q = match spec.phase() {
        Phase::Rational { q, .. } => q as u32,
        _ => 1,
    };
    raw.iter().fold(Poly::zero(spec), |acc, (word, n, d, k)| {
        let c = Cyclotomic::rational(rat(*n, *d)) * Cyclotomic::zeta_pow(q, *k);
        let term = word.iter().fold(Poly::constant(spec, c), |p, &g| p.mul(&Poly::generator(spec, NAMES[g]).unwrap()));
        acc.add(&term)
    })
}

fn spec_for(p: i64, q: i64, reversed: bool) -> Arc<GeneratorSpec> {
    let phase = Phase::rational(p, q).unwrap();
    Arc::new(if reversed { GeneratorSpec::s4_theta_reversed(phase) } else { GeneratorSpec::s4_theta(phase) }.unwrap())
}

fn torus(phase: Phase, raw: &[(i64, i64, i64)]) -> Torus {
    Torus::from_terms(phase, raw.iter().map(|&(n, m, c)| ((n, m), Cyclotomic::rational(rat(c, 1)))))
}

fn torus_raw() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-2i64..3, -2i64..3, -3i64..4), 1..4)
}

#[test]
fn charges_give_the_exchange_rule() {
    let spec = spec_for(1, 3, false);
    let lam: Cyclotomic = spec.phase().lambda_pow(1).unwrap();
    let a = Poly::generator(&spec, "a").unwrap();
    let b = Poly::generator(&spec, "b").unwrap();
    assert_eq!(a.mul(&b), b.mul(&a).scale(&lam));
    let t = Poly::generator(&spec, "t").unwrap();
    assert!(t.commutator(&a).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn product_is_associative(pq in phase_strategy(), rev in any::<bool>(), x in raw_poly(), y in raw_poly(), z in raw_poly()) {
        let spec = spec_for(pq.0, pq.1, rev);
        let (x, y, z) = (build(&spec, &x), build(&spec, &y), build(&spec, &z));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        let left = x.mul(&y).reduce().unwrap().mul(&z).reduce().unwrap();
        let right = x.mul(&y.mul(&z).reduce().unwrap()).reduce().unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_is_an_anti_involution(pq in phase_strategy(), x in raw_poly(), y in raw_poly()) {
        let spec = spec_for(pq.0, pq.1, false);
        let (x, y) = (build(&spec, &x), build(&spec, &y));
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
        prop_assert_eq!(x.reduce().unwrap().star(), x.star().reduce().unwrap());
    }

    #[test]
    fn reduction_is_idempotent_and_linear(pq in phase_strategy(), x in raw_poly(), y in raw_poly()) {
        let spec = spec_for(pq.0, pq.1, true);
        let (x, y) = (build(&spec, &x), build(&spec, &y));
        let rx = x.reduce().unwrap();
        prop_assert_eq!(rx.reduce().unwrap(), rx.clone());
        prop_assert_eq!(x.add(&y).reduce().unwrap(), rx.add(&y.reduce().unwrap()));
    }

    #[test]
    fn normal_form_ignores_rewrite_order(pq in phase_strategy(), word in prop::collection::vec(0usize..5, 0..7), seed in any::<u64>()) {
        let spec = spec_for(pq.0, pq.1, false);
        let names: Vec<&str> = word.iter().map(|&g| NAMES[g]).collect();
        let fixed: Poly = poly_normal_form(&names, &spec).unwrap();
        let idx: Vec<usize> = names.iter().map(|n| spec.generator(n).unwrap()).collect();
        let random: Poly = poly_normal_form_random(&idx, &spec, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(fixed, random);
    }

    #[test]
    fn json_round_trip(pq in phase_strategy(), x in raw_poly()) {
        let spec = spec_for(pq.0, pq.1, false);
        let x = build(&spec, &x);
        let back: Poly = from_json(&to_json(&x).unwrap(), &spec).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn torus_trace_is_tracial(pq in phase_strategy(), x in torus_raw(), y in torus_raw(), z in torus_raw()) {
        let phase = Phase::rational(pq.0, pq.1).unwrap();
        let (x, y, z) = (torus(phase, &x), torus(phase, &y), torus(phase, &z));
        prop_assert_eq!(x.mul(&y).unwrap().trace(), y.mul(&x).unwrap().trace());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().star().unwrap(), y.star().unwrap().mul(&x.star().unwrap()).unwrap());
        // τ(x* x) is a sum of squared moduli.
        let n = x.star().unwrap().mul(&x).unwrap().trace();
        let want = x.terms().fold(Cyclotomic::zero(), |acc, (_, c)| acc + c.clone() * c.clone());
        prop_assert_eq!(n, want);
    }

    #[test]
    fn torus_unitaries(pq in phase_strategy(), n in -3i64..4, m in -3i64..4) {
        let phase = Phase::rational(pq.0, pq.1).unwrap();
        let w = Torus::monomial(phase, n, m, Cyclotomic::one());
        prop_assert_eq!(w.star().unwrap().mul(&w).unwrap(), Torus::one(phase));
        prop_assert_eq!(w.mul(&w.star().unwrap()).unwrap(), Torus::one(phase));
    }
}
