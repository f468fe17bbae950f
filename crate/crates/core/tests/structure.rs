use dunkl_core::algebra::matrix::{int_vec, vec_neg};
use dunkl_core::algebra::{Polynomial, Scalar};
use dunkl_core::coxeter::{arithmetic_type_check, CoxeterGroup, Rank2Kind};
use dunkl_core::dunkl::{apply_full_sum, monomials_upto, Dunkl, OddProfile};
use dunkl_core::qcalc::{is_symmetric, Calculus};
use dunkl_core::rootsystem::{reflection_matrix, MultiplicityFunction, RootSystem};
use dunkl_core::sample::Sampler;

fn catalog() -> Vec<(RootSystem, CoxeterGroup)> {
    RootSystem::desk_catalog()
        .into_iter()
        .chain(["H3"])
        .map(|n| {
            let rs = RootSystem::standard(n).unwrap();
            let g = CoxeterGroup::generate(&rs).unwrap();
            (rs, g)
        })
        .collect()
}

#[test]
fn axioms_and_closure() {
    for (rs, _) in catalog() {
        rs.validate().unwrap();
        for i in 0..rs.len() {
            let s = rs.reflection(i);
            for b in rs.roots() {
                assert!(rs.index_of(&s.apply(b)).is_some(), "{}", rs.name());
            }
        }
    }
}

#[test]
fn positive_halves() {
    let mut rng = Sampler::new(3);
    for (rs, _) in catalog() {
        let w = rng.vector(rs.dim());
        let Ok(p) = rs.positive_subsystem(Some(&w)) else {
            continue;
        };
        assert_eq!(p.positives.len() * 2, rs.len());
        let q = rs.positive_subsystem(Some(&vec_neg(&w))).unwrap();
        let mut negs: Vec<usize> = p.positives.iter().map(|&i| rs.negative_of(i)).collect();
        negs.sort_unstable();
        let mut qs = q.positives.clone();
        qs.sort_unstable();
        assert_eq!(negs, qs);
    }
}

#[test]
fn conjugation_moves_roots() {
    for (rs, g) in catalog() {
        for x in 0..g.order() {
            let m = g.element(x);
            let minv = g.element(g.inv(x));
            for a in rs.roots() {
                let lhs = minv.mul(&reflection_matrix(a).unwrap()).mul(m);
                assert_eq!(lhs, reflection_matrix(&m.apply(a)).unwrap());
            }
        }
        for &s in g.reflections() {
            let a = rs.root(g.root_of_reflection(s));
            assert_eq!(*g.element(s), reflection_matrix(a).unwrap());
        }
    }
}

#[test]
fn tables_are_latin_squares() {
    for (_, g) in catalog() {
        let n = g.order();
        for a in 0..n {
            let mut row: Vec<usize> = (0..n).map(|b| g.mul(a, b)).collect();
            let mut col: Vec<usize> = (0..n).map(|b| g.mul(b, a)).collect();
            row.sort_unstable();
            col.sort_unstable();
            assert_eq!(row, (0..n).collect::<Vec<_>>());
            assert_eq!(col, (0..n).collect::<Vec<_>>());
        }
    }
}

#[test]
fn group_orders() {
    let orders: Vec<(String, usize)> = catalog()
        .iter()
        .map(|(r, g)| (r.name().to_string(), g.order()))
        .collect();
    for (name, expected) in [
        ("A1", 2),
        ("A2", 6),
        ("A3", 24),
        ("B2", 8),
        ("B3", 48),
        ("G2", 12),
        ("I2(5)", 10),
        ("H3", 120),
    ] {
        let got = orders.iter().find(|(n, _)| n == name).unwrap().1;
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn rotation_volumes_and_decompositions() {
    for (rs, g) in catalog() {
        for rot in g.two_rotations(&rs) {
            for &(s, t) in &rot.decompositions {
                assert_eq!(g.mul(s, t), rot.element);
            }
            let brute = g
                .reflections()
                .iter()
                .flat_map(|&s| g.reflections().iter().map(move |&t| (s, t)));
            assert_eq!(
                brute.filter(|&(s, t)| g.mul(s, t) == rot.element).count(),
                rot.decompositions.len()
            );
            if rot.proper {
                let inv = g
                    .two_rotations(&rs)
                    .into_iter()
                    .find(|r| r.element == g.inv(rot.element))
                    .unwrap();
                assert_eq!(inv.volume, vec_neg(&rot.volume));
            }
        }
    }
}

#[test]
fn rank_two_classification() {
    for (name, kind) in [("A2", Rank2Kind::Hexagonal), ("B2", Rank2Kind::Octagonal)] {
        let rs = RootSystem::standard(name).unwrap();
        let g = CoxeterGroup::generate(&rs).unwrap();
        for rot in g.two_rotations(&rs).iter().filter(|r| r.proper) {
            let c = g.classify_rank2(&rs, rot);
            assert_eq!(c.kind, kind);
            assert!(c.arithmetic_half.is_some());
        }
    }
    let rs = RootSystem::standard("G2").unwrap();
    let g = CoxeterGroup::generate(&rs).unwrap();
    let six = g
        .two_rotations(&rs)
        .into_iter()
        .find(|r| r.order == 6)
        .unwrap();
    assert_eq!(g.classify_rank2(&rs, &six).kind, Rank2Kind::Dodecagonal);
    assert!(
        !arithmetic_type_check(&[int_vec(&[1, 0]), int_vec(&[0, 3]), int_vec(&[5, 7])]).unwrap()
    );
    assert!(arithmetic_type_check(&[int_vec(&[1, 0])]).is_err());
}

#[test]
fn full_sum_matches_positive_sum() {
    let mut rng = Sampler::new(10);
    for name in ["A2", "B2", "G2", "I2(5)"] {
        let rs = RootSystem::standard(name).unwrap();
        let k = MultiplicityFunction::symbolic(&rs);
        let d = Dunkl::new(&rs, &k, &rs.positive_subsystem(None).unwrap());
        for _ in 0..4 {
            let f = rng.polynomial(d.nvars(), &rs.kept_variables(), 4, 4);
            let xi = rng.vector(rs.dim());
            assert_eq!(
                d.apply(&xi, &f).unwrap(),
                apply_full_sum(&rs, &k, &xi, &f).unwrap()
            );
        }
    }
}

#[test]
fn invariant_functions_have_classical_covariant_partials() {
    let rs = RootSystem::standard("B2").unwrap();
    let k = MultiplicityFunction::symbolic(&rs);
    let d = Dunkl::new(&rs, &k, &rs.positive_subsystem(None).unwrap());
    let n = d.nvars();
    let b = Polynomial::from_terms(
        n,
        [
            (vec![4, 0, 0, 0], Scalar::one()),
            (vec![0, 4, 0, 0], Scalar::one()),
        ],
    );
    for kk in 0..2 {
        assert_eq!(d.covariant_partial(kk, &b).unwrap(), b.partial(kk));
    }
}

#[test]
fn noncrystallographic_commutativity() {
    let mut rng = Sampler::new(12);
    for (name, degree) in [("I2(5)", 5), ("H3", 3)] {
        let rs = RootSystem::standard(name).unwrap();
        let k = MultiplicityFunction::symbolic(&rs);
        let d = Dunkl::new(&rs, &k, &rs.positive_subsystem(None).unwrap());
        let xi = rng.vector(rs.dim());
        let eta = rng.vector(rs.dim());
        for (m, r) in d.commutator_residuals(&xi, &eta, degree).unwrap() {
            assert!(r.is_zero(), "{name}: {m}");
        }
    }
}

#[test]
fn even_profile_rejected() {
    assert!(OddProfile::new(vec![vec![Scalar::zero(), Scalar::zero(), Scalar::one()]]).is_err());
    assert!(OddProfile::new(vec![vec![
        Scalar::zero(),
        Scalar::one(),
        Scalar::zero(),
        Scalar::int(4)
    ]])
    .is_ok());
}

#[test]
fn monomial_counts() {
    assert_eq!(monomials_upto(4, &[0, 1], 6).len(), 28);
    assert_eq!(monomials_upto(5, &[0, 1, 2], 6).len(), 84);
}

#[test]
fn calculus_on_h3_and_custom_sets() {
    let rs = RootSystem::standard("H3").unwrap();
    let g = CoxeterGroup::generate(&rs).unwrap();
    let c = Calculus::reflections(&g);
    assert_eq!(c.s().len(), 15);
    assert!(is_symmetric(&c.delta_map(0)));
    assert!(c.braid_is_bijective());
    // A union of conjugacy classes closed under inverses gives another calculus.
    let rs = RootSystem::standard("B2").unwrap();
    let g = CoxeterGroup::generate(&rs).unwrap();
    let short: Vec<usize> = g
        .reflections()
        .iter()
        .copied()
        .filter(|&s| {
            rs.root(g.root_of_reflection(s))
                .iter()
                .filter(|x| !x.is_zero())
                .count()
                == 1
        })
        .collect();
    let c = Calculus::new(&g, short).unwrap();
    for x in 0..g.order() {
        assert_eq!(c.delta_map(x), c.delta_closed_form(x));
    }
    assert!(c.braid_is_bijective());
}
