use proptest::prelude::*;

use esr_core::cohomology::{isotypic_betti, reduced_betti};
use esr_core::koszul::{verify_refined_hochster, Caps};
use esr_core::linalg::cyclotomic::field_degree;
use esr_core::linalg::{kernel_basis, rank, rat, Cyclotomic, Field, Rational, SparseMatrix};
use esr_core::sr::formulas::{fine_ring_dims, sr_hilbert_fine};
use esr_core::{validate_action, CyclicAction, SimplicialComplex};

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn cyclotomic(p: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-4i64..=4, field_degree(p))
        .prop_map(move |c| Cyclotomic::from_coeffs(p, c.into_iter().map(rat).collect()))
}

fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prime().prop_flat_map(|p| (cyclotomic(p), cyclotomic(p), cyclotomic(p)))
}

fn matrix() -> impl Strategy<Value = SparseMatrix<Rational>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, c), r).prop_map(|rows| {
            SparseMatrix::from_dense(
                &rows
                    .into_iter()
                    .map(|v| v.into_iter().map(rat).collect())
                    .collect::<Vec<_>>(),
            )
        })
    })
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..7).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(1..=n, 1..=n.min(4)), 1..6).prop_map(
            move |fs| {
                let facets: Vec<Vec<usize>> =
                    fs.into_iter().map(|s| s.into_iter().collect()).collect();
                SimplicialComplex::from_one_based(n, &facets).expect("valid facets")
            },
        )
    })
}

/// A complex on `b` blocks of `p` vertices closed under the rotation that
/// shifts every block by one. Faces never contain a whole block.
fn rotation_complex() -> impl Strategy<Value = (SimplicialComplex, CyclicAction)> {
    (prop::sample::select(vec![3u32, 5]), 1usize..=2).prop_flat_map(|(p, blocks)| {
        let n = p as usize * blocks;
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=3), 1..3).prop_map(
            move |gens| {
                let pu = p as usize;
                let shift = |v: usize, s: usize| (v / pu) * pu + (v % pu + s) % pu;
                let mut facets = Vec::new();
                for g in &gens {
                    for s in 0..pu {
                        facets.push(g.iter().map(|&v| shift(v, s) + 1).collect::<Vec<_>>());
                    }
                }
                for v in 0..n {
                    facets.push(vec![v + 1]);
                }
                let k = SimplicialComplex::from_one_based(n, &facets).expect("valid facets");
                let a =
                    CyclicAction::new(p, (0..n).map(|v| shift(v, 1)).collect()).expect("order p");
                (k, a)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn cyclotomic_inverses((a, _, _) in triple()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul_ref(&a.inv()).is_one());
    }

    #[test]
    fn galois_is_a_ring_map((a, b, _) in triple(), k in 1i64..7) {
        let p = a.order() as i64;
        prop_assume!(k % p != 0);
        prop_assert_eq!((a.clone() * b.clone()).galois(k), a.galois(k) * b.galois(k));
        prop_assert_eq!(Cyclotomic::zeta_pow(p as u32, 1).galois(k), Cyclotomic::zeta_pow(p as u32, k));
    }

    #[test]
    fn zeta_has_order_p(p in prime(), k in -20i64..20) {
        prop_assert!(Cyclotomic::zeta_pow(p, p as i64).is_one());
        prop_assert_eq!(Cyclotomic::zeta_pow(p, k), Cyclotomic::zeta_pow(p, k + p as i64));
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let r = rank(&m);
        let ker = kernel_basis(&m, &rat(1));
        prop_assert_eq!(r + ker.len(), m.cols());
        prop_assert_eq!(r, rank(&m.transpose()));
        for v in &ker {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn h_vector_and_euler(k in random_complex()) {
        let d = k.d();
        let h = k.h_vector();
        let f = k.f_vector();
        prop_assert_eq!(h.0.iter().sum::<i64>(), f.get(d as i64 - 1) as i64);
        let chi = k.reduced_euler_characteristic();
        let sign = if d % 2 == 1 { 1 } else { -1 };
        prop_assert_eq!(h.get(d), sign * chi);
        prop_assert_eq!(reduced_betti(&k).euler_characteristic(), chi);
    }

    #[test]
    fn orbit_closed_invariants((k, a) in rotation_complex()) {
        let report = validate_action(&k, &a).unwrap();
        prop_assert!(report.automorphism);
        prop_assume!(report.free);

        let beta = isotypic_betti(&k, &a).unwrap();
        prop_assert_eq!(beta.totals(), reduced_betti(&k));

        let ring = fine_ring_dims(&k, &a, 5).unwrap();
        let series = sr_hilbert_fine(&k.h_vector(), k.d(), a.p(), 5).to_integers();
        prop_assert_eq!(series, Some(ring));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn refined_hochster_on_small_grids((k, a) in rotation_complex()) {
        prop_assume!(validate_action(&k, &a).unwrap().free);
        let r = verify_refined_hochster(&k, &a, k.d() as i64, 1, &Caps::default()).unwrap();
        prop_assert!(r.all_match, "{:?}", r.points);
    }
}
