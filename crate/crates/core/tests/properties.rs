use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use odd_szabo::cube::{Complex, Flavor};
use odd_szabo::diagram::braid_closure;
use odd_szabo::fixtures;
use odd_szabo::invariants::{check_duality, check_face_parity, check_filtration, check_random_reorientation};
use odd_szabo::oracle::{enumerate_small_configs, even_khovanov_mod2, kauffman_jones};
use odd_szabo::signs::solve_edge_assignment;
use odd_szabo::zlinalg::snf::{from_i64, invariant_factors, matmul, smith_normal_form, Mat};
use odd_szabo::zlinalg::{bigraded, jones, uct_mod2, Coefficients, Filtered};
use odd_szabo::{Kind, PlanarDiagram};

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

/// A unimodular matrix as a product of elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Mat {
    let mut u = odd_szabo::zlinalg::snf::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            for x in &mut u[i] {
                *x = -x.clone();
            }
        } else {
            let row = u[j].clone();
            for (a, b) in u[i].iter_mut().zip(row) {
                *a += b * k;
            }
        }
    }
    u
}

fn det_is_unit(m: &Mat) -> bool {
    let n = m.len();
    let f = invariant_factors(m, n);
    f.len() == n && f.iter().all(|d| d.is_one())
}

fn braid() -> impl Strategy<Value = PlanarDiagram> {
    (2usize..=4)
        .prop_flat_map(|s| (Just(s), prop::collection::vec(prop_oneof![1..s as i32, -(s as i32 - 1)..0], 1..=6)))
        .prop_filter_map("valid closure", |(s, w)| braid_closure(s, &w).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_multiplies_back(m in matrix(6)) {
        let cols = m[0].len();
        let big = from_i64(&m);
        let s = smith_normal_form(&big, cols);
        prop_assert_eq!(matmul(&matmul(&s.u, &big, m.len()), &s.v, cols), s.s.clone());
        prop_assert!(det_is_unit(&s.u) && det_is_unit(&s.v));
        let f = s.factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(f.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn snf_ignores_unimodular_scrambling(
        m in matrix(5),
        left in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
        right in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
    ) {
        let (r, c) = (m.len(), m[0].len());
        let big = from_i64(&m);
        let scrambled = matmul(&matmul(&unimodular(r, &left), &big, r), &unimodular(c, &right), c);
        prop_assert_eq!(invariant_factors(&big, c), invariant_factors(&scrambled, c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_braids_agree_with_oracles(d in braid()) {
        let g = Complex::for_diagram(&d, Flavor::Gamma, Kind::Y, None).unwrap();
        let t = bigraded(g.chain(), Coefficients::Z).unwrap();
        prop_assert_eq!(jones(&t), kauffman_jones(&d).unwrap());
        let mut ours = uct_mod2(&t);
        ours.retain(|_, v| *v != 0);
        let mut theirs = even_khovanov_mod2(&d).unwrap().homology();
        theirs.retain(|_, v| *v != 0);
        prop_assert_eq!(ours, theirs);
        let x = Complex::for_diagram(&d, Flavor::Gamma, Kind::X, None).unwrap();
        prop_assert_eq!(bigraded(x.chain(), Coefficients::Z).unwrap(), t);
    }

    #[test]
    fn random_braids_have_consistent_pages(d in braid(), seed in any::<u64>()) {
        let om = Complex::for_diagram(&d, Flavor::Omega, Kind::Y, Some(seed)).unwrap();
        om.check_gradings().unwrap();
        let f = Filtered::new(om.chain()).unwrap();
        let pages = f.pages(4).unwrap();
        let e0 = pages.euler(0);
        for r in 1..=4 {
            prop_assert_eq!(pages.euler(r), e0);
        }
        for (&(p, q), &r) in &pages.stable_from {
            for s in r..=4 {
                prop_assert_eq!(&pages.entries[&(s, p, q)], &pages.infinity[&(p, q)]);
            }
        }
        prop_assert!(f.convergence(&pages).unwrap().iter().all(|r| r.agree));
        check_random_reorientation(&d, seed).unwrap();
    }

    #[test]
    fn small_configurations_obey_local_rules(index in any::<prop::sample::Index>()) {
        let ds: Vec<_> = fixtures::small(5).into_iter().map(|(_, d)| d).collect();
        let cs = enumerate_small_configs(&ds, 3);
        let c = index.get(&cs);
        if c.dim() == 3 {
            check_face_parity(c).unwrap();
        }
        for kind in [Kind::X, Kind::Y] {
            let s = solve_edge_assignment(c, kind).unwrap();
            s.validate(c).unwrap();
            check_filtration(c, &s).unwrap();
        }
        check_duality(c).unwrap();
    }
}

#[test]
fn two_by_two_example() {
    let f = invariant_factors(&from_i64(&[vec![1, 2], vec![3, 4]]), 2);
    assert_eq!(f, vec![BigInt::one(), BigInt::from(2)]);
}
