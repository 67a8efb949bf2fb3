use ncg_core::algebra_core::{Phase, TorusElement};
use ncg_core::cyclic::{
    algebra_by_name, check_identities, chern_character, hopf_cyclic_ops, pair, torus_cocycle_coboundary,
    torus_cocycle_value, trace_cochain, FinAlgebra, HopfData,
};
use ncg_core::linalg::Mat;
use ncg_core::{rat, Cyclotomic, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Torus = TorusElement<Cyclotomic>;

fn mat_mul(a: &Mat<Rational>, b: &Mat<Rational>) -> Mat<Rational> {
    (0..a.len())
        .map(|i| {
            (0..b[0].len()).map(|j| (0..b.len()).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect()
        })
        .collect()
}

fn is_identity(m: &Mat<Rational>) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| *x == if i == j { Rational::one() } else { Rational::zero() }))
}

fn torus(phase: Phase, raw: &[(i64, i64, i64)]) -> Torus {
    Torus::from_terms(phase, raw.iter().map(|&(n, m, c)| ((n, m), Cyclotomic::rational(rat(c, 1)))))
}

fn torus_raw() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-2i64..3, -2i64..3, -3i64..4), 1..4)
}

fn hopf_cases() -> Vec<(String, HopfData<Rational>)> {
    let mut out = Vec::new();
    for n in [2usize, 3] {
        for s in 0..n {
            let characters: Vec<Vec<Rational>> = if n == 2 {
                vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]]
            } else {
                vec![vec![rat(1, 1); 3]]
            };
            for delta in characters {
                if let Ok(h) = HopfData::cyclic_group(n, s, delta.clone()) {
                    out.push((format!("Z/{n} σ = g^{s} δ = {delta:?}"), h));
                }
            }
        }
        for point in 0..n {
            out.push((format!("fun Z/{n} at {point}"), HopfData::functions_on_cyclic(n, point).unwrap()));
        }
    }
    out
}

#[test]
fn hopf_cyclic_operator_is_periodic() {
    let cases = hopf_cases();
    assert!(cases.len() >= 6);
    for (name, h) in &cases {
        for n in 0..=3 {
            match hopf_cyclic_ops(h, n) {
                Ok(ops) => {
                    assert!(h.involution_witness().is_none());
                    let mut p = ops.tau.clone();
                    for _ in 0..n {
                        p = mat_mul(&p, &ops.tau);
                    }
                    assert!(is_identity(&p), "{name}: τ_{n}^{} ≠ id", n + 1);
                }
                Err(_) => assert!(h.involution_witness().is_some(), "{name} rejected without a witness"),
            }
        }
    }
}

#[test]
fn chern_zero_pairs_to_rank_minus_half_size() {
    let alg: FinAlgebra<Rational> = FinAlgebra::functions_on_cyclic(3).unwrap();
    let counting = vec![rat(1, 1); 3];
    let tau = trace_cochain(&alg, &counting, 0).unwrap();
    for mask in 0u32..8 {
        let e: Vec<Rational> = (0..3).map(|k| rat(((mask >> k) & 1) as i64, 1)).collect();
        let ch = chern_character(&alg, &vec![vec![e]], 0).unwrap();
        let want = rat(mask.count_ones() as i64, 1) - rat(3, 2);
        assert_eq!(pair(&tau, &ch).unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cyclic_identities_hold_exactly(seed in any::<u64>(), which in 0usize..4) {
        let name = ["m2", "z2", "z3", "fun2"][which];
        let alg = algebra_by_name(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let report = check_identities(name, &alg, 3, 3, &mut rng).unwrap();
        prop_assert!(report.all_pass(), "{:?}", report.identities.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn torus_cocycle_is_cyclic_and_closed(
        q in 2i64..7,
        x in torus_raw(), y in torus_raw(), z in torus_raw(), w in torus_raw(),
    ) {
        let phase = Phase::rational(1, q).unwrap();
        let (x, y, z, w) = (torus(phase, &x), torus(phase, &y), torus(phase, &z), torus(phase, &w));
        let v = torus_cocycle_value(&x, &y, &z).unwrap();
        prop_assert_eq!(torus_cocycle_value(&y, &z, &x).unwrap(), v);
        prop_assert!(torus_cocycle_coboundary([&x, &y, &z, &w]).unwrap().is_zero());
    }
}
