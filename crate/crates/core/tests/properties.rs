//! Randomized invariants over small tensor spaces.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use tencode_core::anticode::{all_anticodes, intersection_dim, Family};
use tencode_core::linalg;
use tencode_core::moments::{
    binomial_moments, bw_transform, macwilliams_moments, tbmd_classify, Direction, FamilyLattice,
};
use tencode_core::qcomb::{gaussian, qbinom};
use tencode_core::tensor::tensor_rank;
use tencode_core::{Budget, Field, Shape, Tensor, TensorCode};

use common::{random_code, random_vector, rng};

fn shape_for(p: u32, dims: &[usize]) -> Shape {
    Shape::new(&Field::prime(p).unwrap(), dims).unwrap()
}

fn small_shape() -> impl Strategy<Value = Shape> {
    (
        prop_oneof![Just(2u32), Just(3)],
        prop_oneof![Just(vec![2, 2]), Just(vec![2, 3]), Just(vec![2, 2, 2])],
    )
        .prop_map(|(p, d)| shape_for(p, &d))
}

fn code_in(shape: Shape, seed: u64) -> TensorCode {
    let mut r = rng(seed);
    let k = r.gen_range(1..shape.n().min(4));
    loop {
        let c = random_code(&mut r, &shape, k);
        if c.k() > 0 {
            return c;
        }
    }
}

fn invertible(rng: &mut impl Rng, f: &Field, n: usize) -> Vec<Vec<u8>> {
    loop {
        let m: Vec<Vec<u8>> = (0..n).map(|_| random_vector(rng, f.q(), n)).collect();
        if linalg::rank(f, &m) == n {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn qbinom_product_rule(q in prop_oneof![Just(2u64), Just(3)], a in 0i64..8, b in 0i64..8, c in 0i64..8) {
        prop_assume!(c <= b && b <= a);
        let lhs = qbinom(q, a, b).unwrap() * qbinom(q, b, c).unwrap();
        let rhs = qbinom(q, a, c).unwrap() * qbinom(q, a - c, a - b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn qbinom_pascal(q in prop_oneof![Just(2u64), Just(3)], a in 1usize..10, b in 1usize..10) {
        prop_assume!(b <= a);
        let shift = BigInt::from(q).pow(b as u32);
        prop_assert_eq!(gaussian(q, a, b), gaussian(q, a - 1, b - 1) + shift * gaussian(q, a - 1, b));
        prop_assert_eq!(BigRational::from(gaussian(q, a, b)), qbinom(q, a as i64, b as i64).unwrap());
    }

    #[test]
    fn dual_is_an_involution(shape in small_shape(), seed in any::<u64>()) {
        let c = code_in(shape, seed);
        let d = c.dual();
        prop_assert_eq!(c.k() + d.k(), c.n());
        prop_assert_eq!(d.dual(), c);
    }

    #[test]
    fn intersection_dimensions_are_dual(shape in small_shape(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let c = code_in(shape.clone(), seed);
        let b = Budget::default();
        let members = all_anticodes(&shape, Family::ClosureType, &b).unwrap();
        let m = &members[pick.index(members.len())];
        let a = m.dim();
        let lhs = intersection_dim(&c, m).unwrap() as i64;
        let rhs = intersection_dim(&c.dual(), &m.dual().unwrap()).unwrap() as i64;
        prop_assert_eq!(lhs - rhs, (c.k() + a) as i64 - c.n() as i64);
    }

    #[test]
    fn rank_is_invariant_under_isometries(p in prop_oneof![Just(2u32), Just(3)], seed in any::<u64>()) {
        let shape = shape_for(p, &[2, 3, 3]);
        let f = shape.field().clone();
        let mut r = rng(seed);
        let x = Tensor::new(&f, shape.dims(), random_vector(&mut r, f.q(), shape.n())).unwrap();
        let b = Budget::default();
        let (rk, dec) = tensor_rank(&x, &b).unwrap();
        prop_assert_eq!(dec.reconstruct(), x.clone());
        let mut y = x.clone();
        for (i, &n) in shape.dims().iter().enumerate() {
            y = y.apply_mode_map(i, &invertible(&mut r, &f, n)).unwrap();
        }
        prop_assert_eq!(tensor_rank(&y, &b).unwrap().0, rk);
        let swapped = y.permute_modes(&[0, 2, 1]).unwrap();
        prop_assert_eq!(tensor_rank(&swapped, &b).unwrap().0, rk);
    }

    #[test]
    fn tensor_rank_of_a_code_bounds(shape in small_shape(), seed in any::<u64>()) {
        let c = code_in(shape, seed);
        let b = Budget::default();
        let p = c.parameters(&b).unwrap();
        let (d, maxrk) = (p.d.unwrap(), p.maxrk.unwrap());
        prop_assert!(1 <= d && d <= maxrk);
        prop_assert!(c.k() <= p.trk);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(24) })]

    #[test]
    fn macwilliams_moments_hold(shape in small_shape(), seed in any::<u64>(), fam in 0usize..3) {
        let fam = [Family::ClosureType, Family::Delsarte, Family::Ravagnani][fam];
        let c = code_in(shape, seed);
        let r = macwilliams_moments(&c, fam, &Budget::default()).unwrap();
        prop_assert!(r.verified, "{:?}", r.first_counterexample);
        prop_assert!(r.dimension_violation.is_none());
    }

    #[test]
    fn bw_round_trip(shape in small_shape(), seed in any::<u64>(), fam in 0usize..3) {
        let fam = [Family::ClosureType, Family::Delsarte, Family::Ravagnani][fam];
        let b = Budget::default();
        let lattice = FamilyLattice::new(&shape, fam, &b).unwrap();
        let mut r = rng(seed);
        let table: Vec<Vec<BigInt>> =
            (0..lattice.len()).map(|_| (0..2).map(|_| BigInt::from(r.gen_range(-9i64..10))).collect()).collect();
        let b_side = bw_transform(&lattice, &table, Direction::ToMoments).unwrap();
        prop_assert_eq!(bw_transform(&lattice, &b_side, Direction::ToDistribution).unwrap(), table);
    }

    #[test]
    fn tbmd_is_upward_closed(shape in small_shape(), seed in any::<u64>(), fam in 0usize..3) {
        let fam = [Family::ClosureType, Family::Delsarte, Family::Ravagnani][fam];
        let c = code_in(shape, seed);
        let b = Budget::default();
        let r = tbmd_classify(&c, fam, &b).unwrap();
        for w in r.tbmd.windows(2) {
            prop_assert!(!w[0] || w[1]);
        }
        prop_assert_eq!(r.minimal, r.tbmd.iter().position(|&x| x).map(|i| i + 1));
        let table = binomial_moments(&c, fam, &b).unwrap();
        for a in 0..r.weights[0] {
            prop_assert!(table.values[a].iter().all(|v| *v == BigInt::from(0)));
        }
    }
}
