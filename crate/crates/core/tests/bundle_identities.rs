use dunkl_core::algebra::{Frac, HorizontalForm, Polynomial, RationalForm, Scalar};
use dunkl_core::bundle::{
    covariance_by_formula, radial_form, Bundle, EvenProfile, RationalConnection,
};
use dunkl_core::dunkl::{Dunkl, OddProfile, Profile};
use dunkl_core::rootsystem::MultiplicityFunction;
use dunkl_core::sample::Sampler;

fn setup(name: &str) -> (Bundle, MultiplicityFunction) {
    let b = Bundle::standard(name).unwrap();
    let k = MultiplicityFunction::symbolic(b.root_system());
    (b, k)
}

fn connections(b: &Bundle, k: &MultiplicityFunction) -> Vec<RationalConnection> {
    vec![
        b.make_standard_dunkl(k).unwrap(),
        b.make_profile_dunkl(k, &OddProfile::linear(k.orbit_count()))
            .unwrap(),
    ]
}

#[test]
fn square_of_covariant_derivative_is_curvature() {
    let (b, k) = setup("B2");
    let mut rng = Sampler::new(11);
    for conn in connections(&b, &k) {
        let curv = b.curvature_tensor(&conn).unwrap();
        for deg in 0..=1 {
            for _ in 0..3 {
                let phi = rng.form(2, conn.nvars(), deg, 2);
                let r = b.square_residual(&conn, &curv, &phi).unwrap();
                assert!(r.is_zero(), "degree {deg}: {r}");
            }
        }
    }
}

#[test]
fn covariant_partials_agree_across_modules() {
    let (b, k) = setup("B2");
    let conn = b.make_standard_dunkl(&k).unwrap();
    let pos = b.root_system().positive_subsystem(None).unwrap();
    let dunkl = Dunkl::new(b.root_system(), &k, &pos);
    let nvars = conn.nvars();
    let x1 = Polynomial::var(nvars, 0);
    let mut rng = Sampler::new(5);
    let mut inputs = vec![x1];
    inputs.extend((0..4).map(|_| rng.polynomial(nvars, &[0, 1], 4, 4)));
    for f in inputs {
        let from_bundle = b
            .covariant_partials(&conn, &Frac::from_poly(f.clone()))
            .unwrap();
        for (kk, p) in from_bundle.iter().enumerate() {
            let q = dunkl.covariant_partial(kk, &f).unwrap();
            assert_eq!(*p, Frac::from_poly(q), "k = {kk}, f = {f}");
        }
    }
}

#[test]
fn coordinate_forms_are_parallel() {
    let (b, k) = setup("A2");
    let conn = b.make_standard_dunkl(&k).unwrap();
    let n = conn.nvars();
    let mut rng = Sampler::new(8);
    for kk in 0..3 {
        let theta = HorizontalForm::theta(3, n, kk);
        assert!(b.covariant_derivative(&conn, &theta).unwrap().is_zero());
        let phi = rng.form(3, n, 1, 2);
        let lhs = b.covariant_derivative(&conn, &phi.wedge(&theta)).unwrap();
        let rhs = b.covariant_derivative(&conn, &phi).unwrap().wedge(&theta);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn invariant_forms_see_the_de_rham_differential() {
    let (b, k) = setup("B2");
    let n = 2 + k.nsymbols();
    let inv = Polynomial::from_terms(
        n,
        [
            (vec![2, 0, 0, 0], Scalar::one()),
            (vec![0, 2, 0, 0], Scalar::one()),
        ],
    );
    let phi = HorizontalForm::from_poly(2, inv);
    for g in 0..b.group().order() {
        assert_eq!(b.act(&phi, g).unwrap(), phi);
    }
    for conn in connections(&b, &k) {
        assert_eq!(b.covariant_derivative(&conn, &phi).unwrap(), phi.de_rham());
        for &s in b.group().reflections() {
            assert!(b.regularity_deviation(&conn, s, &phi).unwrap().is_zero());
        }
    }
}

#[test]
fn group_action_composes_on_the_right() {
    let (b, _) = setup("B2");
    let g = b.group();
    let mut rng = Sampler::new(2);
    let phi = rng.form(2, 2, 1, 2);
    let psi = rng.form(2, 2, 1, 2);
    for x in 0..g.order() {
        for y in 0..g.order() {
            let lhs = b.act(&b.act(&phi, x).unwrap(), y).unwrap();
            assert_eq!(lhs, b.act(&phi, g.mul(y, x)).unwrap());
        }
        let prod = b.act(&phi.wedge(&psi), x).unwrap();
        assert_eq!(
            prod,
            b.act(&phi, x).unwrap().wedge(&b.act(&psi, x).unwrap())
        );
        assert_eq!(
            b.act(&phi.de_rham(), x).unwrap(),
            b.act(&phi, x).unwrap().de_rham()
        );
    }
}

#[test]
fn coordinate_function_transforms_linearly() {
    let (b, _) = setup("B2");
    for g in 0..b.group().order() {
        let m = b.group().element(g);
        for kk in 0..2 {
            let xk = HorizontalForm::from_poly(2, Polynomial::var(2, kk));
            let expected = HorizontalForm::from_poly(2, Polynomial::linear_form(2, &m.column(kk)));
            assert_eq!(b.act(&xk, g).unwrap(), expected);
        }
    }
}

#[test]
fn displacement_covariance_matches_the_closed_formula() {
    let (b, k) = setup("B2");
    let conn = b.make_standard_dunkl(&k).unwrap();
    for g in 0..b.group().order() {
        for &s in b.group().reflections() {
            assert!(covariance_by_formula(&b, &conn, s, g).unwrap());
        }
    }
}

#[test]
fn covariant_derivative_is_equivariant_and_curvature_is_adjoint() {
    let (b, k) = setup("B2");
    let mut rng = Sampler::new(21);
    for conn in connections(&b, &k) {
        let phi = rng.form(2, conn.nvars(), 1, 2);
        let curv = b.curvature_tensor(&conn).unwrap();
        for g in 0..b.group().order() {
            let lhs = b
                .covariant_derivative(&conn, &b.act(&phi, g).unwrap())
                .unwrap();
            let rhs = b
                .act(&b.covariant_derivative(&conn, &phi).unwrap(), g)
                .unwrap();
            assert_eq!(lhs, rhs);
            for rot in b.proper_rotations() {
                let moved = b.act(curv.at(rot.element), g).unwrap();
                assert_eq!(moved, *curv.at(b.group().conjugate(g, rot.element)));
            }
        }
    }
}

#[test]
fn radial_displacement_is_valid() {
    let (b, k) = setup("B2");
    let conn = b
        .make_radial(&k, &EvenProfile::constant(k.orbit_count()))
        .unwrap();
    assert!(b.validate_displacement(&conn).unwrap().is_valid());
    let zeta = radial_form(2, conn.nvars());
    for g in 0..b.group().order() {
        assert_eq!(b.act(&zeta, g).unwrap(), zeta);
    }
    let squared =
        EvenProfile::new(vec![vec![Scalar::zero(), Scalar::zero(), Scalar::one()]; 2]).unwrap();
    let conn = b.make_radial(&k, &squared).unwrap();
    assert!(b.validate_displacement(&conn).unwrap().is_valid());
    assert!(EvenProfile::new(vec![vec![Scalar::zero(), Scalar::one()]]).is_err());
}

#[test]
fn non_covariant_displacement_is_reported() {
    let (b, k) = setup("B2");
    let conn = b.make_standard_dunkl(&k).unwrap();
    let mut lambda = conn.displacement().clone();
    let s = b.group().reflections()[0];
    let bumped = lambda[&s].add(&HorizontalForm::theta(2, conn.nvars(), 0).scale(&Scalar::i()));
    lambda.insert(s, bumped);
    let bad = RationalConnection::custom(2, conn.nvars(), lambda);
    let rep = b.validate_displacement(&bad).unwrap();
    assert!(!rep.is_covariant());
    assert!(rep.is_real());
}

#[test]
fn curvature_vanishes_iff_partials_commute() {
    let (b, k) = setup("B2");
    let pos = b.root_system().positive_subsystem(None).unwrap();
    let mut rng = Sampler::new(4);
    let linear = OddProfile::linear(k.orbit_count());
    for (profile, flat) in [(Profile::Standard, true), (Profile::Odd(linear), false)] {
        let conn = match &profile {
            Profile::Standard => b.make_standard_dunkl(&k).unwrap(),
            Profile::Odd(p) => b.make_profile_dunkl(&k, p).unwrap(),
        };
        let dunkl = Dunkl::with_profile(b.root_system(), &k, &pos, &profile).unwrap();
        let curv = b.curvature_tensor(&conn).unwrap();
        assert_eq!(curv.vanishes(), flat);
        let mut commute = true;
        for _ in 0..5 {
            let f = rng.polynomial(conn.nvars(), &[0, 1], 4, 4);
            let c = &dunkl
                .covariant_partial(0, &dunkl.covariant_partial(1, &f).unwrap())
                .unwrap()
                - &dunkl
                    .covariant_partial(1, &dunkl.covariant_partial(0, &f).unwrap())
                    .unwrap();
            commute &= c.is_zero();
            assert!(b.rcomm_residual(&dunkl, &curv, &f, 0, 1).unwrap().is_zero());
        }
        assert_eq!(commute, flat);
    }
}

#[test]
fn forms_leibniz_with_invariant_factor_is_classical() {
    let (b, k) = setup("B2");
    let n = 2 + k.nsymbols();
    let mut rng = Sampler::new(9);
    let inv = HorizontalForm::from_poly(
        2,
        Polynomial::from_terms(
            n,
            [
                (vec![2, 0, 0, 0], Scalar::one()),
                (vec![0, 2, 0, 0], Scalar::one()),
            ],
        ),
    )
    .wedge(&HorizontalForm::theta(2, n, 1));
    for conn in connections(&b, &k) {
        let phi: RationalForm = rng.form(2, n, 1, 2);
        let lhs = b.covariant_derivative(&conn, &phi.wedge(&inv)).unwrap();
        let rhs = b
            .covariant_derivative(&conn, &phi)
            .unwrap()
            .wedge(&inv)
            .sub(&phi.wedge(&b.covariant_derivative(&conn, &inv).unwrap()));
        assert_eq!(lhs, rhs);
    }
}
