//! Property-based invariants of the variation, modulus and I/O routines.

use proptest::prelude::*;
use pvarlab::grid::{read_csv, write_csv, AnyGrid, Exponent, Grid1, Grid2, GridData};
use pvarlab::modulus::{modulus_1d, modulus_mixed};
use pvarlab::pvar1d::{pvar, pvar_cyclic, pvar_oracle, pvar_sum, CyclicPartition};
use pvarlab::smoothness::decompose_lp0;
use pvarlab::vitali2d::{vitali_ascent, vitali_finest, vitali_oracle, vitali_sum, Net};

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), 1.0f64..6.0]
        .prop_map(|p| Exponent::new(p).unwrap())
}

fn grid1(max: usize) -> impl Strategy<Value = Grid1> {
    prop::collection::vec(-10.0f64..10.0, 2..=max).prop_map(|v| Grid1::new(v).unwrap())
}

fn grid2(max: usize) -> impl Strategy<Value = Grid2> {
    (2..=max, 2..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-5.0f64..5.0, r * c).prop_map(move |v| Grid2::new(r, c, v).unwrap())
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dp_matches_oracle(g in grid1(10), p in exponent()) {
        prop_assert_eq!(pvar_cyclic(&g, p).value.to_bits(), pvar_oracle(&g, p).unwrap().to_bits());
    }

    #[test]
    fn optimal_partition_attains_value(g in grid1(40), p in exponent()) {
        let r = pvar_cyclic(&g, p);
        prop_assert_eq!(pvar_sum(&g, &r.partition, p).unwrap(), r.value);
    }

    #[test]
    fn homogeneous_and_translation_invariant(g in grid1(40), p in exponent(), lambda in -4.0f64..4.0, c in -100.0f64..100.0) {
        let v = pvar(&g, p);
        prop_assert!(close(pvar(&g.scale(lambda), p), lambda.abs() * v, 1e-12));
        prop_assert!(close(pvar(&g.map(|x| x + c), p), v, 1e-9));
    }

    #[test]
    fn rotation_invariant(g in grid1(40), p in exponent(), k in 0usize..40) {
        let n = g.len();
        let rotated = Grid1::new((0..n).map(|i| g.at((i + k) % n)).collect()).unwrap();
        prop_assert_eq!(pvar(&rotated, p), pvar(&g, p));
    }

    #[test]
    fn nonincreasing_in_p(g in grid1(30), p in 1.0f64..4.0, dq in 0.0f64..4.0) {
        let (a, b) = (Exponent::new(p).unwrap(), Exponent::new(p + dq).unwrap());
        prop_assert!(pvar(&g, b) <= pvar(&g, a) * (1.0 + 1e-12));
    }

    #[test]
    fn total_variation_grows_under_refinement(g in grid1(30), mask in prop::collection::vec(any::<bool>(), 30)) {
        let n = g.len();
        let mut idx: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
        if idx.is_empty() {
            idx.push(0);
        }
        let coarse = CyclicPartition::new(idx, n).unwrap();
        let fine = CyclicPartition::full(n);
        prop_assert!(coarse.is_refined_by(&fine));
        let one = Exponent::ONE;
        let (c, f) = (pvar_sum(&g, &coarse, one).unwrap(), pvar_sum(&g, &fine, one).unwrap());
        prop_assert!(c <= f);
        prop_assert_eq!(f, pvar(&g, one));
    }

    #[test]
    fn vitali_ascent_is_a_lower_bound(f in grid2(5), p in exponent()) {
        let oracle = vitali_oracle(&f, p).unwrap();
        prop_assert!(vitali_ascent(&f, p, 16).value <= oracle);
        prop_assert!(vitali_sum(&f, &Net::finest(f.rows(), f.cols()), p).unwrap() <= oracle);
        prop_assert_eq!(vitali_oracle(&f.transpose(), p).unwrap(), oracle);
    }

    #[test]
    fn finest_net_is_optimal_at_p1(f in grid2(5)) {
        prop_assert_eq!(vitali_finest(&f, Exponent::ONE), vitali_oracle(&f, Exponent::ONE).unwrap());
    }

    #[test]
    fn moduli_are_monotone(g in grid1(24), f in grid2(10), p in exponent()) {
        let t = modulus_1d(&g, p);
        prop_assert_eq!(t.at(0), 0.0);
        prop_assert!(t.values().windows(2).all(|w| w[0] <= w[1]));
        let m = modulus_mixed(&f, p).unwrap();
        for k in 0..=m.rows() {
            for l in 0..=m.cols() {
                if k < m.rows() { prop_assert!(m.at(k, l) <= m.at(k + 1, l)); }
                if l < m.cols() { prop_assert!(m.at(k, l) <= m.at(k, l + 1)); }
            }
            prop_assert_eq!(m.at(k, 0), 0.0);
        }
    }

    #[test]
    fn marginal_decomposition(f in grid2(12)) {
        let d = decompose_lp0(&f);
        let back = d.reconstruct();
        for (a, b) in back.samples().iter().zip(f.samples()) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
        for i in 0..f.rows() {
            let s: f64 = d.core.row(i).iter().sum();
            prop_assert!(s.abs() <= 1e-12 * f.cols() as f64 * 10.0);
        }
    }

    #[test]
    fn csv_round_trip_is_bit_exact(f in grid2(8), g in grid1(12)) {
        for grid in [AnyGrid::Two(f), AnyGrid::One(g)] {
            let mut buf = Vec::new();
            write_csv(&grid, &mut buf).unwrap();
            let back = read_csv(&buf[..]).unwrap();
            prop_assert_eq!(back.shape(), grid.shape());
            let bits = |x: &AnyGrid| x.samples().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
            prop_assert_eq!(bits(&back), bits(&grid));
        }
    }
}
