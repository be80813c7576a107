use jetgauge_core::dynamics::{eta_dot, integrate_lorentz, ParticleState, UniformPotential};
use jetgauge_core::electroweak::apply_mixing;
use jetgauge_core::exactnum::{rat, trace_metric, ExactMatrix, QuadScalar};
use jetgauge_core::jetspace::{basis_count, enumerate_basis, signature};
use jetgauge_core::liealg::{generator_pairs, so_generator};
use jetgauge_core::octonion::{
    ad_matrix, apply, cross, g2_basis, is_derivation, oct_mul, ImOctonion, Octonion,
};
use jetgauge_core::pheno::{mass_scale, Constants};
use jetgauge_core::proca::{mode_census, SectorLabel};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = jetgauge_core::Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn quad() -> impl Strategy<Value = QuadScalar> {
    (small_rat(), small_rat(), small_rat(), small_rat())
        .prop_map(|(a, b, c, d)| QuadScalar::new(a, b, c, d))
}

fn im_oct() -> impl Strategy<Value = ImOctonion> {
    proptest::collection::vec(small_rat(), 7).prop_map(|v| {
        let mut x = ImOctonion::zero();
        x.a.clone_from_slice(&v);
        x
    })
}

fn octonion() -> impl Strategy<Value = Octonion> {
    (small_rat(), im_oct()).prop_map(|(r, v)| {
        let mut o = v.to_octonion();
        o.c[0] = r;
        o
    })
}

/// Random element of so(5) with small integer coefficients.
fn so5() -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(-3i64..=3, 10).prop_map(|c| {
        generator_pairs(5)
            .into_iter()
            .zip(c)
            .fold(ExactMatrix::zeros(5), |acc, ((i, j), k)| {
                acc.add(
                    &so_generator(5, i, j)
                        .unwrap()
                        .scale(&QuadScalar::from_int(k)),
                )
                .unwrap()
            })
    })
}

fn oct_eq_assoc(a: &Octonion, b: &Octonion, c: &Octonion) -> bool {
    oct_mul(&oct_mul(a, b), c) == oct_mul(a, &oct_mul(b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quad_field_axioms(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), QuadScalar::one());
            prop_assert_eq!((&y * &x).checked_div(&x).unwrap(), y.clone());
        }
        let f = (&x * &y).to_f64();
        prop_assert!((f - x.to_f64() * y.to_f64()).abs() <= 1e-9 * (1.0 + f.abs()));
    }

    #[test]
    fn commutator_antisymmetry_and_jacobi(a in so5(), b in so5(), c in so5()) {
        let ab = a.commutator(&b).unwrap();
        prop_assert_eq!(ab.neg(), b.commutator(&a).unwrap());
        prop_assert!(ab.is_antisymmetric());
        let jac = a.commutator(&b.commutator(&c).unwrap()).unwrap()
            .add(&b.commutator(&c.commutator(&a).unwrap()).unwrap()).unwrap()
            .add(&c.commutator(&a.commutator(&b).unwrap()).unwrap()).unwrap();
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn trace_metric_bilinear_symmetric(a in so5(), b in so5(), c in so5(), s in -4i64..=4) {
        let h: Vec<QuadScalar> = [1, -1, 0, 2, -1].into_iter().map(QuadScalar::from_int).collect();
        let k = QuadScalar::from_int(s);
        let lhs = trace_metric(&h, &a.add(&b.scale(&k)).unwrap(), &c).unwrap();
        let rhs = trace_metric(&h, &a, &c).unwrap() + &(&k * &trace_metric(&h, &b, &c).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(trace_metric(&h, &a, &b).unwrap(), trace_metric(&h, &b, &a).unwrap());
    }

    #[test]
    fn jet_counts(n in 2usize..=5, r in 1usize..=4) {
        let b = enumerate_basis(n, r).unwrap();
        prop_assert_eq!(b.len(), basis_count(n, r));
        let (p, q) = signature(n, r).unwrap();
        prop_assert_eq!(p + q, b.len());
        for w in b.entries.windows(2) {
            prop_assert!(w[0].index.degree() <= w[1].index.degree());
        }
    }

    #[test]
    fn octonions_are_alternative(a in octonion(), b in octonion()) {
        prop_assert!(oct_eq_assoc(&a, &a, &b));
        prop_assert!(oct_eq_assoc(&a, &b, &b));
        prop_assert!(oct_eq_assoc(&a, &b, &a));
    }

    #[test]
    fn cross_product_identities(a in im_oct(), b in im_oct()) {
        let mut ab = oct_mul(&a.to_octonion(), &b.to_octonion());
        ab.c[0] = &ab.c[0] + &a.dot(&b);
        let c = cross(&a, &b);
        prop_assert_eq!(c.to_octonion(), ab);
        prop_assert_eq!(cross(&b, &a), c.scale(&rat(-1, 1)));
        prop_assert!(c.dot(&a) == rat(0, 1) && c.dot(&b) == rat(0, 1));
        let ab_dot = a.dot(&b);
        prop_assert_eq!(c.dot(&c), a.dot(&a) * b.dot(&b) - &ab_dot * &ab_dot);
        let m = ad_matrix(&a);
        prop_assert!(m.is_antisymmetric());
        prop_assert_eq!(apply(&m, &b).unwrap(), c);
    }

    #[test]
    fn g2_combinations_are_derivations(c in proptest::collection::vec(-3i64..=3, 14)) {
        let x = g2_basis().iter().zip(&c).fold(ExactMatrix::zeros(7), |acc, (m, &k)| {
            acc.add(&m.scale(&QuadScalar::from_int(k))).unwrap()
        });
        prop_assert!(is_derivation(&x).unwrap());
    }

    #[test]
    fn mixing_preserves_trace_and_symmetry(entries in proptest::collection::vec(-5i64..=5, 10), flip in any::<bool>()) {
        let mut m = ExactMatrix::zeros(4);
        let mut it = entries.into_iter();
        for i in 0..4 {
            for j in i..4 {
                let v = QuadScalar::from_int(it.next().unwrap());
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        let (c, s) = if flip { (rat(3, 5), rat(4, 5)) } else { (rat(5, 13), rat(-12, 13)) };
        let out = apply_mixing(&c.into(), &s.into(), &m).unwrap();
        prop_assert_eq!(out.trace(), m.trace());
        prop_assert!(out.is_symmetric());
        prop_assert_eq!(out.mat_mul(&out).unwrap().trace(), m.mat_mul(&m).unwrap().trace());
    }

    #[test]
    fn mass_scale_depends_on_total_order(a in 1usize..=3, b in 1usize..=3) {
        let k = Constants::default();
        let m = mass_scale(&k, a, b).unwrap();
        let n = mass_scale(&k, b, a).unwrap();
        prop_assert_eq!(m, n);
        prop_assert!((m.gev / m.planck_units / k.m_p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn census_covers_sector(a in 1usize..=3, b in 1usize..=3) {
        let s = SectorLabel::new(a, b).unwrap();
        let c = mode_census(s).unwrap();
        prop_assert_eq!(c.positive + c.negative + c.zero, s.generators().len());
    }

    #[test]
    fn magnetic_motion_keeps_energy(vx in -0.8f64..0.8, vy in -0.8f64..0.8, bz in 0.1f64..3.0) {
        let u = [(1.0 + vx * vx + vy * vy).sqrt(), vx, vy, 0.0];
        let p = ParticleState { x: [0.0; 4], u, m: 1.0, q: 1.0, charge: vec![] };
        // fixed resolution per gyration: ω dλ = 0.01
        let t = integrate_lorentz(&p, &UniformPotential::magnetic([0.0, 0.0, bz]), 0.01 / bz, 200).unwrap();
        let l = t.last();
        prop_assert_eq!(l.u[0], u[0]);
        prop_assert!((eta_dot(&l.u, &l.u) + 1.0).abs() < 1e-9);
    }
}
