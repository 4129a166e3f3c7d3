//! Randomized and exhaustive structural invariants: identities that must
//! hold for every input, not just for the fixtures used in the end-to-end
//! checks.  Exact-arithmetic laws are compared exactly; floating-point
//! identities get absolute tolerances far below the scales involved.

use latnet_core::cocycle::CocycleData;
use latnet_core::exact::{Int, Mat, Rat};
use latnet_core::inner::SymmetricInnerFunction;
use latnet_core::lattice::Lattice;
use latnet_core::loops::{ModeSpace, TorusLoop};
use latnet_core::phase::{unit, wrap_angle};
use latnet_core::real::C;
use latnet_core::snf::smith_normal_form;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const ADE: [&str; 16] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "D4", "D5", "D6", "D7", "D8", "E6", "E7",
    "E8",
];

fn ade_label() -> impl Strategy<Value = String> {
    prop::sample::select(ADE.to_vec()).prop_map(str::to_string)
}

fn int_vec(rank: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, rank)
}

/// A label together with `count` integer vectors of the matching rank.
fn label_with_vectors(
    count: usize,
    bound: i64,
) -> impl Strategy<Value = (String, Vec<Vec<i64>>)> {
    ade_label().prop_flat_map(move |label| {
        let rank = Lattice::dynkin(&label).expect("label").rank();
        (
            Just(label),
            prop::collection::vec(int_vec(rank, bound), count),
        )
    })
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
    })
}

/// Oscillator data for a rank-2 loop: winding, zero mode, three complex
/// Fourier coefficients per component.
type LoopData = (Vec<i64>, Vec<f64>, Vec<Vec<(f64, f64)>>);

fn loop_data() -> impl Strategy<Value = LoopData> {
    (
        prop::collection::vec(-2i64..=2, 2),
        prop::collection::vec(-1.0f64..1.0, 2),
        prop::collection::vec(
            prop::collection::vec((-0.5f64..0.5, -0.5f64..0.5), 2),
            3,
        ),
    )
}

fn build_loop(data: &LoopData) -> TorusLoop<f64> {
    let modes = data
        .2
        .iter()
        .map(|row| row.iter().map(|&(re, im)| C::new(re, im)).collect())
        .collect();
    TorusLoop::new(data.0.clone(), data.1.clone(), modes)
}

fn zero_winding(data: &LoopData) -> TorusLoop<f64> {
    let mut d = data.clone();
    d.0 = vec![0, 0];
    build_loop(&d)
}

proptest! {
    #[test]
    fn snf_reconstructs_with_divisibility_chain(rows in small_matrix()) {
        let a = Mat::from_i64_rows(&rows);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.det().abs(), Int::one());
        prop_assert_eq!(snf.v.det().abs(), Int::one());
        let uav = snf.u.mul(&a).mul(&snf.v);
        for i in 0..uav.rows() {
            for j in 0..uav.cols() {
                let want = if i == j { snf.diag[i].clone() } else { Int::zero() };
                prop_assert_eq!(uav[(i, j)].clone(), want);
            }
        }
        let mut seen_zero = false;
        for w in snf.diag.windows(2) {
            if w[0].is_zero() {
                seen_zero = true;
            }
            if seen_zero {
                prop_assert!(w[1].is_zero(), "zeros must trail");
            } else if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
            }
        }
        if a.is_square() {
            let prod = snf.diag.iter().fold(Int::one(), |p, d| p * d);
            prop_assert_eq!(a.det().abs(), prod);
        }
    }

    #[test]
    fn sign_cocycle_is_bimultiplicative((label, vs) in label_with_vectors(3, 4)) {
        let lat = Lattice::dynkin(&label).expect("label");
        let data = CocycleData::new(&lat);
        let (a, b, c) = (&vs[0], &vs[1], &vs[2]);
        let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let bc: Vec<i64> = b.iter().zip(c).map(|(x, y)| x + y).collect();
        prop_assert_eq!(data.epsilon(&ab, c), data.epsilon(a, c) * data.epsilon(b, c));
        prop_assert_eq!(data.epsilon(a, &bc), data.epsilon(a, b) * data.epsilon(a, c));
        let gram_sign = if data.gram_pairing(a, b) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(data.epsilon(a, b) * data.epsilon(b, a), gram_sign);
    }

    #[test]
    fn quarter_phase_is_bimultiplicative((label, vs) in label_with_vectors(3, 3)) {
        let lat = Lattice::dynkin(&label).expect("label");
        let data = CocycleData::new(&lat);
        let (a, b, c) = (&vs[0], &vs[1], &vs[2]);
        let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let left = data.eta(&ab, c);
        let right = data.eta(a, c) * data.eta(b, c);
        prop_assert!((left - right).norm() < 1e-12, "{left} vs {right}");
    }

    #[test]
    fn oscillator_form_is_antisymmetric_and_additive(
        fd in loop_data(),
        gd in loop_data(),
        hd in loop_data(),
    ) {
        let lat = Lattice::dynkin("A2").expect("label");
        let space = ModeSpace::<f64>::from_lattice(&lat);
        let f = build_loop(&fd);
        let g = build_loop(&gd);
        let h = build_loop(&hd);
        let wfg = space.omega(&f, &g);
        prop_assert!((wfg + space.omega(&g, &f)).abs() < 1e-9);
        let additive = space.omega(&f.add(&h), &g) - (wfg + space.omega(&h, &g));
        prop_assert!(additive.abs() < 1e-9);
    }

    #[test]
    fn oscillator_form_matches_quadrature(fd in loop_data(), gd in loop_data()) {
        let lat = Lattice::dynkin("A2").expect("label");
        let space = ModeSpace::<f64>::from_lattice(&lat);
        let f = zero_winding(&fd);
        let g = zero_winding(&gd);
        let direct = space.omega(&f, &g);
        let quad = space.omega_quadrature(&f, &g, 64);
        prop_assert!((direct - quad).abs() < 1e-9, "{direct} vs {quad}");
    }

    #[test]
    fn commutation_phases_are_mutually_inverse(fd in loop_data(), gd in loop_data()) {
        let lat = Lattice::dynkin("A2").expect("label");
        let space = ModeSpace::<f64>::from_lattice(&lat);
        let f = build_loop(&fd);
        let g = build_loop(&gd);
        let z = space.commutation_phase(&f, &g) * space.commutation_phase(&g, &f);
        prop_assert!((z - C::new(1.0, 0.0)).norm() < 1e-9, "product {z}");
    }

    #[test]
    fn inner_functions_stay_symmetric_and_unimodular(
        zeros in prop::collection::vec((-2.0f64..2.0, 0.1f64..2.0), 0..3),
        t in 0.0f64..1.5,
        sign in prop::sample::select(vec![1i8, -1]),
        p in -20.0f64..20.0,
    ) {
        let zs: Vec<C<f64>> = zeros.iter().map(|&(re, im)| C::new(re, im)).collect();
        let phi = SymmetricInnerFunction::new(zs, t, sign).expect("upper zeros");
        let v = phi.eval_real(p);
        prop_assert!((v.norm() - 1.0).abs() < 1e-10);
        prop_assert!((phi.eval_real(-p) - v.conj()).norm() < 1e-10);
    }

    #[test]
    fn inner_product_evaluates_pointwise(
        a_im in 0.1f64..2.0,
        b_re in -2.0f64..2.0,
        b_im in 0.1f64..2.0,
        t in 0.0f64..1.0,
        p in -20.0f64..20.0,
    ) {
        let phi = SymmetricInnerFunction::blaschke(C::new(0.0, a_im)).expect("upper zero");
        let psi = SymmetricInnerFunction::new(vec![C::new(b_re, b_im)], t, 1).expect("upper zero");
        let prod = phi.multiply(&psi);
        let defect = (prod.eval_real(p) - phi.eval_real(p) * psi.eval_real(p)).norm();
        prop_assert!(defect < 1e-10, "pointwise defect {defect}");
    }

    #[test]
    fn wrapped_angles_stay_principal(theta in -1.0e4f64..1.0e4) {
        let w = wrap_angle(theta);
        prop_assert!(w > -std::f64::consts::PI - 1e-12);
        prop_assert!(w <= std::f64::consts::PI + 1e-12);
        prop_assert!((unit(w) - unit(theta)).norm() < 1e-9);
    }
}

/// Every discriminant group here has at most nine elements, so the full
/// group table is checked outright: identity, inverses, commutativity,
/// associativity, representative round-trips, and Lagrange divisibility.
#[test]
fn discriminant_group_laws_exhaustive() {
    for label in ADE {
        let lat = Lattice::dynkin(label).expect("label");
        let disc = lat.discriminant();
        let elems = disc.enumerate();
        assert_eq!(Int::from(elems.len()), disc.order(), "{label} order");
        assert_eq!(disc.order(), lat.det(), "{label} determinant route");
        let zero = disc.zero_class();
        let two = Rat::from_integer(Int::from(2));
        for a in &elems {
            assert_eq!(disc.fuse(a, &zero), *a, "{label} identity");
            assert!(disc.is_zero_class(&disc.fuse(a, &disc.neg(a))), "{label} inverse");
            assert_eq!(disc.class_of_dual(&disc.rep(a)).expect("in dual"), *a, "{label} rep");
            assert!((disc.order() % disc.sector_order(a)).is_zero(), "{label} lagrange");
            let spin = disc.spin_exponent(a);
            assert!(spin >= Rat::zero() && spin < two, "{label} spin window");
            for b in &elems {
                assert_eq!(disc.fuse(a, b), disc.fuse(b, a), "{label} commutativity");
                for c in &elems {
                    assert_eq!(
                        disc.fuse(&disc.fuse(a, b), c),
                        disc.fuse(a, &disc.fuse(b, c)),
                        "{label} associativity"
                    );
                }
            }
        }
    }
}
