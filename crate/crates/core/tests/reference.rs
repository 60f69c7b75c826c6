//! Odd Khovanov homology of prime knots against published reduced tables
//! (KnotInfo, `khovanov_odd_integral_vector`). Over the integers the
//! unreduced theory is two copies of the reduced one, shifted by `q = ±1`.
//! The published diagrams may be mirror images of ours, so both are tried.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use odd_szabo::cube::{Complex, Flavor};
use odd_szabo::fixtures::{self, KNOTS};
use odd_szabo::zlinalg::snf::invariant_factors;
use odd_szabo::zlinalg::{bigraded, AbelianGroup, Coefficients, Table};
use odd_szabo::{Kind, PlanarDiagram};

fn expected(rows: &[[i64; 4]]) -> Table {
    let mut free: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut tors: BTreeMap<(i64, i64), Vec<BigInt>> = BTreeMap::new();
    for &[t, n, h, q] in rows {
        for shift in [-1, 1] {
            let key = (h, q + shift);
            free.entry(key).or_default();
            let list = tors.entry(key).or_default();
            for _ in 0..n {
                if t == 0 {
                    *free.get_mut(&key).unwrap() += 1;
                } else {
                    list.push(BigInt::from(t));
                }
            }
        }
    }
    free.iter()
        .map(|(&k, &f)| {
            // Diagonal presentation, brought to invariant factor form.
            let t = &tors[&k];
            let m: Vec<Vec<BigInt>> = (0..t.len())
                .map(|i| (0..t.len()).map(|j| if i == j { t[i].clone() } else { BigInt::from(0) }).collect())
                .collect();
            let factors = invariant_factors(&m, t.len());
            (k, AbelianGroup::from_factors(f + t.len(), &factors).unwrap())
        })
        .collect()
}

fn ours(d: &PlanarDiagram) -> Table {
    let g = Complex::for_diagram(d, Flavor::Gamma, Kind::Y, None).unwrap();
    let mut t = bigraded(g.chain(), Coefficients::Z).unwrap();
    t.retain(|_, g| !g.is_zero());
    t
}

#[test]
fn prime_knots_match_published_tables() {
    let data: BTreeMap<String, Vec<[i64; 4]>> =
        serde_json::from_str(include_str!("data/odd_reduced.json")).unwrap();
    assert_eq!(data.len(), KNOTS.len());
    for (name, pd) in KNOTS {
        let d = fixtures::parse(pd);
        let want = expected(&data[*name]);
        let got = ours(&d);
        if got != want {
            assert_eq!(ours(&d.mirror()), want, "{name}");
        }
    }
}

#[test]
fn torsion_of_8_19() {
    let d = fixtures::parse(KNOTS.iter().find(|k| k.0 == "8_19").unwrap().1);
    let t = ours(&d);
    assert_eq!(t[&(4, 11)].torsion, vec![2]);
    assert_eq!(t[&(5, 13)].torsion, vec![3]);
    assert_eq!(t[&(5, 15)], AbelianGroup { free: 1, torsion: vec![3] });
}
