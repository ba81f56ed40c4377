mod common;

use num::{BigInt, BigRational};
use proptest::prelude::*;
use straighten_core::polytope::{point_in_chain_polytope, point_in_order_polytope};
use straighten_core::{chain_polytope_vertices, generate_posets, order_polytope_vertices, IdealLattice, LatticePoint, Poset};

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    // for an antichain both polytopes are the unit cube
    #[test]
    fn antichain_cube(coords in proptest::collection::vec((-6i64..=18, 1i64..=12), 1..=6)) {
        let p = Poset::antichain(coords.len());
        let x = LatticePoint::new(coords.iter().map(|&(a, b)| rational(a, b)).collect());
        let in_cube = coords.iter().all(|&(a, b)| 0 <= a && a <= b);
        prop_assert_eq!(point_in_order_polytope(&p, &x).unwrap(), in_cube);
        prop_assert_eq!(point_in_chain_polytope(&p, &x).unwrap(), in_cube);
    }

    // for a chain, O(P) is the monotone simplex and C(P) the standard simplex
    #[test]
    fn chain_simplices(coords in proptest::collection::vec((0i64..=12, 1i64..=12), 1..=5)) {
        let p = Poset::chain(coords.len());
        let x = LatticePoint::new(coords.iter().map(|&(a, b)| rational(a, b)).collect());
        let vals: Vec<BigRational> = x.coords().to_vec();
        let monotone = vals.iter().all(|v| *v <= rational(1, 1)) && vals.windows(2).all(|w| w[0] >= w[1]);
        let sum: BigRational = vals.iter().cloned().sum();
        prop_assert_eq!(point_in_order_polytope(&p, &x).unwrap(), monotone);
        prop_assert_eq!(point_in_chain_polytope(&p, &x).unwrap(), sum <= rational(1, 1));
    }

    #[test]
    fn vertices_and_midpoints(p in common::arb_poset(6)) {
        let l = IdealLattice::new(&p).unwrap();
        let ov = order_polytope_vertices(&l);
        let cv = chain_polytope_vertices(&l);
        prop_assert_eq!(ov.len(), l.len());
        prop_assert_eq!(cv.len(), l.len());
        for (x, y) in ov.iter().zip(ov.iter().skip(1)) {
            prop_assert!(point_in_order_polytope(&p, &x.midpoint(y)).unwrap());
        }
        for (x, y) in cv.iter().zip(cv.iter().rev()) {
            prop_assert!(point_in_chain_polytope(&p, &x.midpoint(y)).unwrap());
        }
    }
}

#[test]
fn midpoint_convexity_exhaustive() {
    for n in 1..=4 {
        for c in generate_posets(n).unwrap() {
            let l = IdealLattice::new(&c.poset).unwrap();
            let ov = order_polytope_vertices(&l);
            let cv = chain_polytope_vertices(&l);
            for x in &ov {
                for y in &ov {
                    assert!(point_in_order_polytope(&c.poset, &x.midpoint(y)).unwrap());
                }
            }
            for x in &cv {
                for y in &cv {
                    assert!(point_in_chain_polytope(&c.poset, &x.midpoint(y)).unwrap());
                }
            }
        }
    }
}

#[test]
fn vertices_are_distinct_zero_one_points() {
    for c in generate_posets(5).unwrap() {
        let l = IdealLattice::new(&c.poset).unwrap();
        for vs in [order_polytope_vertices(&l), chain_polytope_vertices(&l)] {
            let set: std::collections::HashSet<_> = vs.iter().collect();
            assert_eq!(set.len(), vs.len());
            for v in &vs {
                assert!(v.coords().iter().all(|x| *x == rational(0, 1) || *x == rational(1, 1)));
            }
        }
    }
}

#[test]
fn dimension_mismatch() {
    let p = Poset::chain(3);
    assert!(point_in_order_polytope(&p, &LatticePoint::origin(2)).is_err());
    assert!(point_in_chain_polytope(&p, &LatticePoint::origin(4)).is_err());
}
