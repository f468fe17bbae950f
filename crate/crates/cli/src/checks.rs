//! Individual verification checks. Each returns `Err(witness)` on failure.

use std::fmt::Display;

use dunkl_core::algebra::matrix::{int_vec, vec_neg};
use dunkl_core::algebra::poly::{Poly, PolyKind};
use dunkl_core::algebra::PolyRing;
use dunkl_core::algebra::{Frac, HorizontalForm, Polynomial, Scalar};
use dunkl_core::bundle::{
    arithmetic_progression, coth_sum_check, three_vector_check, vxrho_identity_check, Bundle,
    CurvatureTensor, EvenProfile,
};
use dunkl_core::coxeter::CoxeterGroup;
use dunkl_core::dunkl::{monomials_upto, order_independence_check, Dunkl, OddProfile, Profile};
use dunkl_core::qcalc::{is_symmetric, Calculus};
use dunkl_core::rootsystem::{reflection_matrix, MultiplicityFunction, RootSystem};
use dunkl_core::sample::Sampler;

use crate::report::ensure;

pub fn text<E: Display>(e: E) -> String {
    e.to_string()
}

/// A generic order vector for `rs`, resampled until no root is orthogonal to it.
pub fn order_vector(rs: &RootSystem, rng: &mut Sampler) -> Vec<Scalar> {
    loop {
        let w = rng.vector(rs.dim());
        if rs.positive_subsystem(Some(&w)).is_ok() {
            return w;
        }
    }
}

/// The invariant `Σ x_k²`.
pub fn square_norm(dim: usize, nvars: usize) -> Polynomial {
    (0..dim).fold(Polynomial::zero(nvars), |acc, k| {
        let x = Polynomial::var(nvars, k);
        &acc + &(&x * &x)
    })
}

pub fn axioms(rs: &RootSystem) -> Result<(), String> {
    rs.validate().map_err(text)
}

pub fn positive_half(rs: &RootSystem, seed: u64) -> Result<(), String> {
    if rs.is_empty() {
        return Ok(());
    }
    let w = order_vector(rs, &mut Sampler::new(seed));
    let p = rs.positive_subsystem(Some(&w)).map_err(text)?;
    ensure(p.positives.len() * 2 == rs.len(), || {
        format!("|R+| = {} but |R| = {}", p.positives.len(), rs.len())
    })?;
    let q = rs.positive_subsystem(Some(&vec_neg(&w))).map_err(text)?;
    let mut negs: Vec<usize> = p.positives.iter().map(|&i| rs.negative_of(i)).collect();
    negs.sort_unstable();
    let mut qs = q.positives.clone();
    qs.sort_unstable();
    ensure(negs == qs, || "-w does not select -R+".into())
}

pub fn orbits_partition(rs: &RootSystem) -> Result<(), String> {
    let mut seen: Vec<usize> = rs.orbits().into_iter().flatten().collect();
    seen.sort_unstable();
    ensure(seen == (0..rs.len()).collect::<Vec<_>>(), || {
        "orbits do not partition the roots".into()
    })
}

pub fn group_table(g: &CoxeterGroup) -> Result<(), String> {
    g.check_table(g.order().min(48))?;
    for x in 0..g.order() {
        ensure(g.order().is_multiple_of(g.element_order(x)), || {
            format!("element {x} has order {}", g.element_order(x))
        })?;
        ensure(g.mul(x, g.inv(x)) == 0, || format!("element {x}: inverse"))?;
    }
    Ok(())
}

/// `g⁻¹σ_αg = σ_{αg}`, and every reflection in the table is some `σ_α`.
pub fn conjugation(rs: &RootSystem, g: &CoxeterGroup) -> Result<(), String> {
    for x in 0..g.order() {
        let m = g.element(x);
        let minv = g.element(g.inv(x));
        for a in rs.roots() {
            let lhs = minv.mul(&reflection_matrix(a).map_err(text)?).mul(m);
            let rhs = reflection_matrix(&m.apply(a)).map_err(text)?;
            ensure(lhs == rhs, || format!("g = {m}, alpha = {a:?}"))?;
        }
    }
    for &s in g.reflections() {
        let a = rs.root(g.root_of_reflection(s));
        ensure(*g.element(s) == reflection_matrix(a).map_err(text)?, || {
            format!("reflection {s}")
        })?;
    }
    Ok(())
}

pub fn rotations(rs: &RootSystem, g: &CoxeterGroup) -> Result<(), String> {
    let rots = g.two_rotations(rs);
    for rot in &rots {
        let brute = g
            .reflections()
            .iter()
            .flat_map(|&s| g.reflections().iter().map(move |&t| (s, t)))
            .filter(|&(s, t)| g.mul(s, t) == rot.element)
            .count();
        ensure(brute == rot.decompositions.len(), || {
            format!("rotation {}: decompositions", rot.element)
        })?;
        if rot.proper {
            let inv = rots
                .iter()
                .find(|r| r.element == g.inv(rot.element))
                .ok_or_else(|| format!("rotation {}: inverse missing", rot.element))?;
            ensure(inv.volume == vec_neg(&rot.volume), || {
                format!("rotation {}: w of the inverse", rot.element)
            })?;
        }
    }
    Ok(())
}

pub fn dunkl(rs: &RootSystem, k: &MultiplicityFunction) -> Result<Dunkl, String> {
    Ok(Dunkl::new(
        rs,
        k,
        &rs.positive_subsystem(None).map_err(text)?,
    ))
}

/// `[T_ξ, T_η]` on every monomial of degree `≤ degree`; returns the count checked.
pub fn commutator(d: &Dunkl, xi: &[Scalar], eta: &[Scalar], degree: u32) -> Result<usize, String> {
    let res = d.commutator_residuals(xi, eta, degree).map_err(text)?;
    match res.iter().find(|(_, r)| !r.is_zero()) {
        Some((m, r)) => Err(format!("[T_xi, T_eta]({m}) = {r}")),
        None => Ok(res.len()),
    }
}

pub fn leibniz_pair(
    d: &Dunkl,
    f: &Polynomial,
    g: &Polynomial,
    xi: &[Scalar],
) -> Result<(), String> {
    let r = d.leibniz_residual(f, g, xi).map_err(text)?;
    ensure(r.is_zero(), || format!("f = {f}, g = {g}, residual {r}"))
}

/// With an invariant factor the correction drops and the classical rule holds.
pub fn leibniz_invariant(d: &Dunkl, f: &Polynomial, xi: &[Scalar]) -> Result<(), String> {
    let inv = square_norm(d.dim(), d.nvars());
    let corr = d.leibniz_correction(f, &inv, xi).map_err(text)?;
    ensure(corr.is_zero(), || format!("correction {corr} for f = {f}"))?;
    let lhs = d.apply(xi, &(f * &inv)).map_err(text)?;
    let rhs = &(&d.apply(xi, f).map_err(text)? * &inv) + &(f * &d.apply(xi, &inv).map_err(text)?);
    ensure(lhs == rhs, || format!("classical rule fails for f = {f}"))
}

pub fn order_independence(
    rs: &RootSystem,
    k: &MultiplicityFunction,
    degree: u32,
    seed: u64,
) -> Result<(), String> {
    if rs.is_empty() {
        return Ok(());
    }
    let mut rng = Sampler::new(seed);
    let w1 = order_vector(rs, &mut rng);
    let w2 = order_vector(rs, &mut rng);
    let monos = monomials_upto(rs.dim() + k.nsymbols(), &rs.kept_variables(), degree);
    let ok = order_independence_check(rs, k, &w1, &w2, &monos).map_err(text)?;
    ensure(ok, || {
        format!("operators differ for w1 = {w1:?}, w2 = {w2:?}")
    })
}

pub fn displacements(b: &Bundle, k: &MultiplicityFunction) -> Result<(), String> {
    let std = b.make_standard_dunkl(k).map_err(text)?;
    let rep = b.validate_displacement(&std).map_err(text)?;
    ensure(rep.is_valid() && rep.is_closed(), || {
        format!("standard: {rep:?}")
    })?;
    let prof = b
        .make_profile_dunkl(k, &OddProfile::linear(k.orbit_count()))
        .map_err(text)?;
    let rep = b.validate_displacement(&prof).map_err(text)?;
    ensure(rep.is_valid() && rep.is_closed(), || {
        format!("profile: {rep:?}")
    })?;
    let radial = b
        .make_radial(k, &EvenProfile::constant(k.orbit_count()))
        .map_err(text)?;
    let rep = b.validate_displacement(&radial).map_err(text)?;
    ensure(rep.is_valid(), || format!("radial: {rep:?}"))?;
    if b.root_system().is_integral() {
        let coth = b.make_coth(k).map_err(text)?;
        let rep = b.validate_displacement(&coth).map_err(text)?;
        ensure(rep.is_valid(), || format!("coth: {rep:?}"))?;
    }
    Ok(())
}

pub fn zero_curvature(b: &Bundle, k: &MultiplicityFunction) -> Result<(), String> {
    let conn = b.make_standard_dunkl(k).map_err(text)?;
    let curv = b.curvature_tensor(&conn).map_err(text)?;
    match curv.entries.iter().find(|e| !e.form.is_zero()) {
        Some(e) => Err(format!("r({}) = {}", e.element, e.form)),
        None => Ok(()),
    }
}

/// `r_ω(ρ)` agrees with `−Σ* h_αh_β α∧β` and vanishes off proper rotations.
pub fn curvature_formula<K: PolyKind>(
    b: &Bundle,
    conn: &dunkl_core::bundle::Connection<Poly<K>>,
    curv: &CurvatureTensor<Poly<K>>,
) -> Result<(), String>
where
    Poly<K>: PolyRing,
{
    let bad = curv.support_violations();
    ensure(bad.is_empty(), || {
        format!("curvature off proper rotations at {bad:?}")
    })?;
    for rot in b.proper_rotations() {
        let Some(expected) = b.dunkl_curvature_formula(conn, rot) else {
            return Ok(());
        };
        ensure(*curv.at(rot.element) == expected, || {
            format!(
                "rho = {}: {} vs {}",
                rot.element,
                curv.at(rot.element),
                expected
            )
        })?;
    }
    Ok(())
}

/// `D_ω²φ + Σ_g φ_g r(g) = 0` on random forms, for the standard and linear-profile connections.
pub fn square(b: &Bundle, k: &MultiplicityFunction, seed: u64) -> Result<(), String> {
    let mut rng = Sampler::new(seed);
    let conns = [
        b.make_standard_dunkl(k).map_err(text)?,
        b.make_profile_dunkl(k, &OddProfile::linear(k.orbit_count()))
            .map_err(text)?,
    ];
    for conn in &conns {
        let curv = b.curvature_tensor(conn).map_err(text)?;
        for deg in 0..=1 {
            let phi = rng.form(b.dim(), conn.nvars(), deg, 2);
            let r = b.square_residual(conn, &curv, &phi).map_err(text)?;
            ensure(r.is_zero(), || {
                format!("{:?}: phi = {phi}, residual {r}", conn.kind())
            })?;
        }
    }
    Ok(())
}

/// Leibniz on forms and `ℓ_ω` computed two ways.
pub fn form_leibniz(b: &Bundle, k: &MultiplicityFunction, seed: u64) -> Result<(), String> {
    let mut rng = Sampler::new(seed);
    let conn = b
        .make_profile_dunkl(k, &OddProfile::linear(k.orbit_count()))
        .map_err(text)?;
    let n = conn.nvars();
    for _ in 0..2 {
        let phi = rng.form(b.dim(), n, 1, 2);
        let psi = rng.form(b.dim(), n, 0, 2);
        let r = b.leibniz_residual(&conn, &phi, &psi).map_err(text)?;
        ensure(r.is_zero(), || {
            format!("phi = {phi}, psi = {psi}, residual {r}")
        })?;
        for &s in b.group().reflections() {
            let l1 = b.regularity_deviation(&conn, s, &phi).map_err(text)?;
            let l2 = b
                .regularity_deviation_by_definition(&conn, s, &phi)
                .map_err(text)?;
            ensure(l1 == l2, || format!("ell at s = {s}: {l1} vs {l2}"))?;
        }
    }
    Ok(())
}

/// `[∂^k,∂^l]b + Σ_ρ b_ρ r^{kl}(ρ) = 0` for the linear profile.
pub fn rcomm(b: &Bundle, k: &MultiplicityFunction, seed: u64) -> Result<(), String> {
    let rs = b.root_system();
    let linear = OddProfile::linear(k.orbit_count());
    let conn = b.make_profile_dunkl(k, &linear).map_err(text)?;
    let curv = b.curvature_tensor(&conn).map_err(text)?;
    let pos = rs.positive_subsystem(None).map_err(text)?;
    let d = Dunkl::with_profile(rs, k, &pos, &Profile::Odd(linear)).map_err(text)?;
    let mut rng = Sampler::new(seed);
    for _ in 0..3 {
        let f = rng.polynomial(d.nvars(), &rs.kept_variables(), 3, 3);
        for kk in 0..b.dim() {
            for l in kk + 1..b.dim() {
                let r = b.rcomm_residual(&d, &curv, &f, kk, l).map_err(text)?;
                ensure(r.is_zero(), || {
                    format!("b = {f}, (k, l) = ({kk}, {l}): residual {r}")
                })?;
            }
        }
    }
    Ok(())
}

pub fn coth_constant(b: &Bundle, k: &MultiplicityFunction) -> Result<(), String> {
    let conn = b.make_coth(k).map_err(text)?;
    let consts = b.constant_curvature(&conn).map_err(text)?;
    ensure(consts.len() == b.proper_rotations().count(), || {
        "missing constants".into()
    })
}

pub fn hopf(c: &Calculus) -> Result<(), String> {
    (0..c.group().order()).try_for_each(|x| c.check_hopf(x))
}

/// `δ` agrees with the case analysis, respects its support and symmetry, and the
/// module structures agree with their defining formulas.
pub fn delta(c: &Calculus) -> Result<(), String> {
    let g = c.group();
    for (x, brute, closed) in c.delta_sweep() {
        ensure(brute == closed, || {
            format!("delta({x}) disagrees with the case analysis")
        })?;
        let allowed = x == 0 || c.in_s(x) || c.s().iter().any(|&s| c.in_s(g.mul(s, x)));
        ensure(allowed || brute.is_empty(), || {
            format!("delta({x}) off its support")
        })?;
        let involutive = g.element_order(x) == 2;
        if x == 0 || c.in_s(x) || involutive {
            ensure(is_symmetric(&brute), || format!("delta({x}) not symmetric"))?;
        }
    }
    let n = g.order();
    for a in 0..n.min(12) {
        let f = dunkl_core::qcalc::GroupFunction::delta(n, (a * 7 + 3) % n);
        for &s in c.s() {
            let germ = [(s, Scalar::one())].into_iter().collect();
            ensure(
                c.module_circ(&germ, &f) == c.module_circ_via_product(s, &f),
                || format!("circ at s = {s}"),
            )?;
            ensure(
                c.right_module(&germ, &f) == c.right_module_via_coproduct(&germ, &f),
                || format!("right module at s = {s}"),
            )?;
        }
    }
    Ok(())
}

pub fn braid(c: &Calculus) -> Result<(), String> {
    ensure(c.braid_is_bijective(), || "braid map not bijective".into())
}

pub fn vxrho(m: usize) -> Result<(), String> {
    ensure(vxrho_identity_check(m).map_err(text)?, || {
        format!("identity fails for m = {m}")
    })
}

pub fn three_vector() -> Result<(), String> {
    let a = int_vec(&[1, -1, 0]);
    let b = int_vec(&[-1, 0, 1]);
    let c = int_vec(&[0, 1, -1]);
    ensure(three_vector_check(&a, &b, &c), || {
        "three-vector identity".into()
    })
}

pub fn coth_sum(k: usize) -> Result<(), String> {
    let (v, v1) = match k {
        1 => (int_vec(&[1, -1, 0]), int_vec(&[1, 0, -1])),
        2 => (int_vec(&[1, -1]), int_vec(&[1, 1])),
        _ => (int_vec(&[1, -1, 0]), int_vec(&[1, 1, -2])),
    };
    let seq = arithmetic_progression(&v, &v1, k);
    ensure(coth_sum_check(&seq).map_err(text)?, || {
        format!("sum identity fails for k = {k}")
    })
}

/// Canonical text of a fraction's numerator and denominator.
pub fn frac_parts<K: PolyKind>(f: &Frac<Poly<K>>, names: &[String]) -> (String, String)
where
    Poly<K>: PolyRing,
{
    let r = f.reduced();
    (
        r.numerator().render_with(names),
        r.denominator().render_with(names),
    )
}

pub fn is_constant<K: PolyKind>(f: &Frac<Poly<K>>, dim: usize) -> bool
where
    Poly<K>: PolyRing,
{
    let r = f.reduced();
    let free = |p: &Poly<K>| p.terms().all(|(m, _)| m.0[..dim].iter().all(|&e| e == 0));
    free(r.numerator()) && free(&r.denominator())
}

pub fn form_is_constant<K: PolyKind>(phi: &HorizontalForm<Poly<K>>, dim: usize) -> bool
where
    Poly<K>: PolyRing,
{
    (0..dim).all(|k| (k + 1..dim).all(|l| is_constant(&phi.coeff2(k, l), dim)))
}
