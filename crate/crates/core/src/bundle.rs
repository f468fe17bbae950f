//! Connections on the bundle given by a Coxeter group acting on the complement of its
//! reflection arrangement.
//!
//! A connection is the canonical flat connection plus a displacement `λ`, a
//! horizontal 1-form `λ[s]` for every reflection `s`. Dunkl connections have
//! `λ[σ_α] = i·h_α·α` with `h_α` a function of `⟨x,α⟩`. Forms carry either
//! rational-function coefficients in `x` or Laurent coefficients in `t = e^x`.
//!
//! The group acts on forms by pullback along `x ↦ xg`, so `(φ_g)_h = φ_{hg}`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::frac::laurent_coth_half_scalar;
use crate::algebra::matrix::{dot, lex_cmp, Vector};
use crate::algebra::poly::{Laurent, Ordinary, Poly};
use crate::algebra::{
    AlgebraError, Frac, HorizontalForm, LaurentPolynomial, Matrix, PolyRing, Polynomial,
    RationalFunction, Scalar,
};
use crate::coxeter::{
    bivector, bivector_ratio, CoxeterError, CoxeterGroup, TwoRotation, DEFAULT_ORDER_CAP,
};
use crate::dunkl::{Dunkl, DunklError, OddProfile};
use crate::par;
use crate::qcalc::{Calculus, Germ, GroupFunction};
use crate::rootsystem::{MultiplicityFunction, RootSystem, RootSystemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Dunkl(#[from] DunklError),
    #[error("root {0} has non-integer coordinates")]
    NonIntegerRoots(String),
    #[error("profile for orbit {0} is not even")]
    ProfileNotEven(usize),
    #[error("multiplicity function is not constant on orbits")]
    InvalidMultiplicity,
    #[error("curvature at element {element} is not constant: {terms}")]
    NonConstant { element: usize, terms: String },
    #[error("no exact rotation of order {0} is available")]
    UnrepresentableRotation(usize),
}

/// Even polynomial profiles `ĥ_α = κ_α·e_o(⟨x,α⟩)` for radial displacements, as
/// coefficient lists of `r^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenProfile {
    per_orbit: Vec<Vec<Scalar>>,
}

impl EvenProfile {
    pub fn new(per_orbit: Vec<Vec<Scalar>>) -> Result<Self, BundleError> {
        for (o, q) in per_orbit.iter().enumerate() {
            if q.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
                return Err(BundleError::ProfileNotEven(o));
            }
        }
        Ok(EvenProfile { per_orbit })
    }

    /// `e(r) = 1` on every orbit.
    pub fn constant(norbits: usize) -> Self {
        EvenProfile {
            per_orbit: vec![vec![Scalar::one()]; norbits],
        }
    }

    pub fn eval(&self, orbit: usize, r: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(r.nvars());
        let mut power = Polynomial::one(r.nvars());
        for c in &self.per_orbit[orbit] {
            acc = &acc + &power.scale(c);
            power = &power * r;
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionKind {
    Flat,
    Standard,
    Profile,
    Radial,
    Coth,
    Custom,
}

/// `ω = ϖ + λ`, stored as the displacement.
#[derive(Clone, Debug)]
pub struct Connection<P: PolyRing> {
    kind: ConnectionKind,
    dim: usize,
    nvars: usize,
    lambda: BTreeMap<usize, HorizontalForm<P>>,
    /// `h_α` for every root index, when `λ[σ_α] = i·h_α·α`.
    h: Option<Vec<Frac<P>>>,
}

pub type RationalConnection = Connection<Poly<Ordinary>>;
pub type LaurentConnection = Connection<Poly<Laurent>>;

impl<P: PolyRing> Connection<P> {
    /// A connection from an arbitrary displacement, keyed by reflection element.
    pub fn custom(dim: usize, nvars: usize, lambda: BTreeMap<usize, HorizontalForm<P>>) -> Self {
        Connection {
            kind: ConnectionKind::Custom,
            dim,
            nvars,
            lambda,
            h: None,
        }
    }

    pub fn kind(&self) -> &ConnectionKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn displacement(&self) -> &BTreeMap<usize, HorizontalForm<P>> {
        &self.lambda
    }

    pub fn lambda(&self, s: usize) -> &HorizontalForm<P> {
        &self.lambda[&s]
    }

    /// `h_α` by root index, for Dunkl-type displacements.
    pub fn h(&self) -> Option<&[Frac<P>]> {
        self.h.as_deref()
    }

    pub fn is_flat(&self) -> bool {
        self.lambda.values().all(HorizontalForm::is_zero)
    }
}

/// Validation results for a displacement.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DisplacementReport {
    /// `(g, s)` with `λ[s]_g ≠ λ[gsg⁻¹]`.
    pub covariance_failures: Vec<(usize, usize)>,
    /// `s` with `(λ[s])* ≠ −λ[s]`.
    pub reality_failures: Vec<usize>,
    /// `s` with `Dλ[s] ≠ 0`.
    pub not_closed: Vec<usize>,
}

impl DisplacementReport {
    pub fn is_covariant(&self) -> bool {
        self.covariance_failures.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.reality_failures.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.not_closed.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.is_covariant() && self.is_real()
    }
}

/// `r_ω(g)` for one group element.
#[derive(Clone, Debug)]
pub struct CurvatureEntry<P: PolyRing> {
    pub element: usize,
    pub order: usize,
    pub proper: bool,
    pub form: HorizontalForm<P>,
}

/// `r_ω` on every group element.
#[derive(Clone, Debug)]
pub struct CurvatureTensor<P: PolyRing> {
    pub entries: Vec<CurvatureEntry<P>>,
}

impl<P: PolyRing> CurvatureTensor<P> {
    pub fn at(&self, g: usize) -> &HorizontalForm<P> {
        &self.entries[g].form
    }

    /// `r^{kl}(g)` with `r(g) = ½Σ r^{kl}θ_kθ_l`.
    pub fn component(&self, g: usize, k: usize, l: usize) -> Frac<P> {
        self.entries[g].form.coeff2(k, l)
    }

    pub fn proper(&self) -> impl Iterator<Item = &CurvatureEntry<P>> {
        self.entries.iter().filter(|e| e.proper)
    }

    /// Elements that are not proper 2-rotations but carry nonzero curvature.
    pub fn support_violations(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| !e.proper && !e.form.is_zero())
            .map(|e| e.element)
            .collect()
    }

    pub fn vanishes(&self) -> bool {
        self.entries.iter().all(|e| e.form.is_zero())
    }
}

/// A root system with its group and 2-rotations.
#[derive(Clone, Debug)]
pub struct Bundle {
    rs: RootSystem,
    group: CoxeterGroup,
    rotations: Vec<TwoRotation>,
    /// Rotation record per group element.
    rotation_index: BTreeMap<usize, usize>,
}

impl Bundle {
    pub fn new(rs: RootSystem) -> Result<Self, BundleError> {
        Self::with_order_cap(rs, DEFAULT_ORDER_CAP)
    }

    pub fn with_order_cap(rs: RootSystem, cap: usize) -> Result<Self, BundleError> {
        let group = CoxeterGroup::generate_with_cap(&rs, cap)?;
        let rotations = group.two_rotations(&rs);
        let rotation_index = rotations
            .iter()
            .enumerate()
            .map(|(i, r)| (r.element, i))
            .collect();
        Ok(Bundle {
            rs,
            group,
            rotations,
            rotation_index,
        })
    }

    pub fn standard(name: &str) -> Result<Self, BundleError> {
        Self::new(RootSystem::standard(name)?)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.rs.dim()
    }

    pub fn rotations(&self) -> &[TwoRotation] {
        &self.rotations
    }

    pub fn proper_rotations(&self) -> impl Iterator<Item = &TwoRotation> {
        self.rotations.iter().filter(|r| r.proper)
    }

    pub fn rotation(&self, g: usize) -> Option<&TwoRotation> {
        self.rotation_index.get(&g).map(|&i| &self.rotations[i])
    }

    fn check_kappa(&self, kappa: &MultiplicityFunction) -> Result<(), BundleError> {
        if kappa.is_invariant(&self.rs) {
            Ok(())
        } else {
            Err(BundleError::InvalidMultiplicity)
        }
    }

    /// `φ_g`, the pullback along `x ↦ xg`.
    pub fn act<P: PolyRing>(
        &self,
        phi: &HorizontalForm<P>,
        g: usize,
    ) -> Result<HorizontalForm<P>, BundleError> {
        if g == 0 {
            return Ok(phi.clone());
        }
        Ok(phi.pullback(self.group.element(g))?)
    }

    fn act_poly(&self, b: &Polynomial, g: usize) -> Result<Polynomial, BundleError> {
        Ok(b.substitute_linear(self.group.element(g))?)
    }

    fn dunkl_connection<P: PolyRing>(
        &self,
        kind: ConnectionKind,
        nvars: usize,
        h: Vec<Frac<P>>,
    ) -> Connection<P> {
        let dim = self.dim();
        let lambda = self
            .group
            .reflections()
            .iter()
            .map(|&s| {
                let a = self.group.root_of_reflection(s);
                let form = HorizontalForm::one_form(dim, nvars, self.rs.root(a))
                    .mul_fn(&h[a])
                    .scale(&Scalar::i());
                (s, form)
            })
            .collect();
        Connection {
            kind,
            dim,
            nvars,
            lambda,
            h: Some(h),
        }
    }

    /// `λ[σ_α] = i(κ_α/⟨x,α⟩)α`
    pub fn make_standard_dunkl(
        &self,
        kappa: &MultiplicityFunction,
    ) -> Result<RationalConnection, BundleError> {
        self.check_kappa(kappa)?;
        let dim = self.dim();
        let nvars = dim + kappa.nsymbols();
        let h = (0..self.rs.len())
            .map(|i| {
                Frac::new(
                    kappa.poly(i, dim, nvars),
                    Polynomial::linear_form(nvars, self.rs.root(i)),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.dunkl_connection(ConnectionKind::Standard, nvars, h))
    }

    /// `λ[σ_α] = iκ_α q(⟨x,α⟩)α` for odd polynomial `q`.
    pub fn make_profile_dunkl(
        &self,
        kappa: &MultiplicityFunction,
        profile: &OddProfile,
    ) -> Result<RationalConnection, BundleError> {
        self.check_kappa(kappa)?;
        if profile.orbits() != kappa.orbit_count() {
            return Err(DunklError::ProfileOrbitCount {
                expected: kappa.orbit_count(),
                found: profile.orbits(),
            }
            .into());
        }
        let dim = self.dim();
        let nvars = dim + kappa.nsymbols();
        let h = (0..self.rs.len())
            .map(|i| {
                let r = Polynomial::linear_form(nvars, self.rs.root(i));
                Frac::from_poly(&kappa.poly(i, dim, nvars) * &profile.eval(kappa.orbit_of(i), &r))
            })
            .collect();
        Ok(self.dunkl_connection(ConnectionKind::Profile, nvars, h))
    }

    /// `λ[σ_α] = iκ_α e(⟨x,α⟩)ζ` with `ζ = Σ x_kθ_k` and `e` even.
    pub fn make_radial(
        &self,
        kappa: &MultiplicityFunction,
        profile: &EvenProfile,
    ) -> Result<RationalConnection, BundleError> {
        self.check_kappa(kappa)?;
        let dim = self.dim();
        let nvars = dim + kappa.nsymbols();
        let zeta = radial_form(dim, nvars);
        let lambda = self
            .group
            .reflections()
            .iter()
            .map(|&s| {
                let a = self.group.root_of_reflection(s);
                let r = Polynomial::linear_form(nvars, self.rs.root(a));
                let coeff = &kappa.poly(a, dim, nvars) * &profile.eval(kappa.orbit_of(a), &r);
                (s, zeta.mul_fn(&Frac::from_poly(coeff)).scale(&Scalar::i()))
            })
            .collect();
        Ok(Connection {
            kind: ConnectionKind::Radial,
            dim,
            nvars,
            lambda,
            h: None,
        })
    }

    /// `λ[σ_α] = iκ_α(T^α+1)/(T^α−1)α` in Laurent coefficients `t = e^x`.
    pub fn make_coth(
        &self,
        kappa: &MultiplicityFunction,
    ) -> Result<LaurentConnection, BundleError> {
        self.check_kappa(kappa)?;
        if let Some(r) = self
            .rs
            .roots()
            .iter()
            .find(|r| r.iter().any(|c| c.as_i64().is_none()))
        {
            return Err(BundleError::NonIntegerRoots(
                crate::algebra::matrix::fmt_vec(r),
            ));
        }
        let dim = self.dim();
        let nvars = dim + kappa.nsymbols();
        let h = (0..self.rs.len())
            .map(|i| {
                let c = laurent_coth_half_scalar(self.rs.root(i), nvars)?;
                Ok(c.mul_poly(&kappa.poly(i, dim, nvars).to_laurent()))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(self.dunkl_connection(ConnectionKind::Coth, nvars, h))
    }

    /// The canonical flat connection, `λ = 0`.
    pub fn flat<P: PolyRing>(&self, nvars: usize) -> Connection<P> {
        let dim = self.dim();
        let lambda = self
            .group
            .reflections()
            .iter()
            .map(|&s| (s, HorizontalForm::zero(dim, nvars)))
            .collect();
        Connection {
            kind: ConnectionKind::Flat,
            dim,
            nvars,
            lambda,
            h: None,
        }
    }

    /// Covariance, reality and closedness of every `λ[s]`.
    pub fn validate_displacement<P: PolyRing>(
        &self,
        conn: &Connection<P>,
    ) -> Result<DisplacementReport, BundleError> {
        let refl = self.group.reflections();
        let per_g = par::map_range(
            self.group.order(),
            |g| -> Result<Vec<(usize, usize)>, BundleError> {
                let mut bad = Vec::new();
                for &s in refl {
                    let lhs = self.act(conn.lambda(s), g)?;
                    if lhs != *conn.lambda(self.group.conjugate(g, s)) {
                        bad.push((g, s));
                    }
                }
                Ok(bad)
            },
        );
        let mut report = DisplacementReport::default();
        for r in per_g {
            report.covariance_failures.extend(r?);
        }
        for &s in refl {
            let l = conn.lambda(s);
            if l.conj() != l.neg() {
                report.reality_failures.push(s);
            }
            if !l.de_rham().is_zero() {
                report.not_closed.push(s);
            }
        }
        Ok(report)
    }

    /// `D_ω(φ) = Dφ + Σ_s λ[s]∧(φ − φ_s)`
    pub fn covariant_derivative<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        phi: &HorizontalForm<P>,
    ) -> Result<HorizontalForm<P>, BundleError> {
        let mut out = phi.de_rham();
        for (&s, l) in &conn.lambda {
            let diff = phi.sub(&self.act(phi, s)?);
            out = out.add(&l.try_wedge(&diff)?);
        }
        Ok(out)
    }

    /// `ℓ_ω([s], φ) = λ[s](φ − φ_s)`
    pub fn regularity_deviation<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        s: usize,
        phi: &HorizontalForm<P>,
    ) -> Result<HorizontalForm<P>, BundleError> {
        let diff = phi.sub(&self.act(phi, s)?);
        Ok(conn.lambda(s).try_wedge(&diff)?)
    }

    /// `λ` extended linearly to invariant germs.
    pub fn lambda_of_germ<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        germ: &Germ,
    ) -> HorizontalForm<P> {
        germ.iter()
            .fold(HorizontalForm::zero(conn.dim, conn.nvars), |acc, (s, c)| {
                acc.add(&conn.lambda(*s).scale(c))
            })
    }

    /// `ℓ_ω([s], φ) = λ[s]φ − (−1)^p Σ_g φ_g λ([s]∘g)`, from the module structure of the
    /// calculus rather than the closed formula.
    pub fn regularity_deviation_by_definition<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        s: usize,
        phi: &HorizontalForm<P>,
    ) -> Result<HorizontalForm<P>, BundleError> {
        let calc = Calculus::reflections(&self.group);
        let germ: Germ = [(s, Scalar::one())].into_iter().collect();
        let mut out = conn.lambda(s).try_wedge(phi)?;
        for (p, part) in phi.homogeneous_parts() {
            for g in 0..self.group.order() {
                let circ = calc.module_circ(&germ, &GroupFunction::delta(self.group.order(), g));
                if circ.is_empty() {
                    continue;
                }
                let term = self
                    .act(&part, g)?
                    .try_wedge(&self.lambda_of_germ(conn, &circ))?;
                out = if p % 2 == 1 {
                    out.add(&term)
                } else {
                    out.sub(&term)
                };
            }
        }
        Ok(out)
    }

    /// `D_ω(φψ) − D_ω(φ)ψ − (−1)^p φD_ω(ψ) + Σ_s λ[s](φ−φ_s)(ψ−ψ_s)`, summed over the
    /// homogeneous parts of `φ`.
    pub fn leibniz_residual<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        phi: &HorizontalForm<P>,
        psi: &HorizontalForm<P>,
    ) -> Result<HorizontalForm<P>, BundleError> {
        let d_psi = self.covariant_derivative(conn, psi)?;
        let mut out = HorizontalForm::zero(phi.dim(), phi.nvars());
        for (p, part) in phi.homogeneous_parts() {
            let lhs = self.covariant_derivative(conn, &part.try_wedge(psi)?)?;
            let first = self.covariant_derivative(conn, &part)?.try_wedge(psi)?;
            let second = part.try_wedge(&d_psi)?;
            let second = if p % 2 == 1 { second.neg() } else { second };
            let mut correction = HorizontalForm::zero(phi.dim(), phi.nvars());
            for &s in conn.lambda.keys() {
                let dphi = self.regularity_deviation(conn, s, &part)?;
                let dpsi = psi.sub(&self.act(psi, s)?);
                correction = correction.add(&dphi.try_wedge(&dpsi)?);
            }
            out = out.add(&lhs.sub(&first).sub(&second).add(&correction));
        }
        Ok(out)
    }

    /// Coordinates of `D_ω(b)` for a function `b`: the covariant partials `∂_ω^k(b)`.
    pub fn covariant_partials<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        b: &Frac<P>,
    ) -> Result<Vec<Frac<P>>, BundleError> {
        let d =
            self.covariant_derivative(conn, &HorizontalForm::function(self.dim(), b.clone()))?;
        Ok((0..self.dim()).map(|k| d.component(1 << k)).collect())
    }

    /// `r_ω(g) = Σ_{st=g} λ[s]∧λ[t]`
    pub fn curvature_at<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        g: usize,
    ) -> Result<HorizontalForm<P>, BundleError> {
        let mut out = HorizontalForm::zero(conn.dim, conn.nvars);
        for &s in self.group.reflections() {
            let t = self.group.mul(self.group.inv(s), g);
            if let Some(lt) = conn.lambda.get(&t) {
                out = out.add(&conn.lambda(s).try_wedge(lt)?);
            }
        }
        Ok(out)
    }

    /// `r_ω` on every group element, computed per element in parallel.
    pub fn curvature_tensor<P: PolyRing>(
        &self,
        conn: &Connection<P>,
    ) -> Result<CurvatureTensor<P>, BundleError> {
        let entries = par::map_range(self.group.order(), |g| {
            let form = self.curvature_at(conn, g)?;
            let order = self.group.element_order(g);
            let proper = self.rotation(g).map(|r| r.proper).unwrap_or(false);
            Ok(CurvatureEntry {
                element: g,
                order,
                proper,
                form,
            })
        });
        Ok(CurvatureTensor {
            entries: entries.into_iter().collect::<Result<_, BundleError>>()?,
        })
    }

    /// `−Σ* h_αh_β α∧β` over the orientation-matched decompositions of `rot`, from the
    /// functions `h` alone.
    pub fn dunkl_curvature_formula<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        rot: &TwoRotation,
    ) -> Option<HorizontalForm<P>> {
        let h = conn.h()?;
        let mut out = HorizontalForm::zero(conn.dim, conn.nvars);
        for &(a, b) in &rot.oriented {
            let hh = &h[a] * &h[b];
            let ab = bivector_form::<P>(conn.dim, conn.nvars, self.rs.root(a), self.rs.root(b));
            out = out.sub(&ab.mul_fn(&hh));
        }
        Some(out)
    }

    /// `D_ω²(φ) + Σ_g φ_g r_ω(g)`
    pub fn square_residual<P: PolyRing>(
        &self,
        conn: &Connection<P>,
        curvature: &CurvatureTensor<P>,
        phi: &HorizontalForm<P>,
    ) -> Result<HorizontalForm<P>, BundleError> {
        let dd = self.covariant_derivative(conn, &self.covariant_derivative(conn, phi)?)?;
        let mut out = dd;
        for e in &curvature.entries {
            if e.form.is_zero() {
                continue;
            }
            out = out.add(&self.act(phi, e.element)?.try_wedge(&e.form)?);
        }
        Ok(out)
    }

    /// `[∂^k, ∂^l](b) + Σ_ρ b_ρ r^{kl}(ρ)`, with the covariant partials taken from the
    /// Dunkl operator module and the curvature from this one.
    pub fn rcomm_residual(
        &self,
        dunkl: &Dunkl,
        curvature: &CurvatureTensor<Poly<Ordinary>>,
        b: &Polynomial,
        k: usize,
        l: usize,
    ) -> Result<RationalFunction, BundleError> {
        let kl = dunkl.covariant_partial(k, &dunkl.covariant_partial(l, b)?)?;
        let lk = dunkl.covariant_partial(l, &dunkl.covariant_partial(k, b)?)?;
        let mut out = Frac::from_poly(&kl - &lk);
        for e in curvature.proper() {
            let r = e.form.coeff2(k, l);
            if r.is_zero() {
                continue;
            }
            out = &out + &r.mul_poly(&self.act_poly(b, e.element)?);
        }
        Ok(out)
    }

    /// Elements `h` whose quadratic relation `Σ_{gq=h} λ[g]λ[q]` does not vanish.
    pub fn multiplicativity_failures<P: PolyRing>(
        &self,
        conn: &Connection<P>,
    ) -> Result<Vec<usize>, BundleError> {
        let calc = Calculus::reflections(&self.group);
        let mut bad = Vec::new();
        for (h, tensor) in calc.quadratic_relations() {
            let mut acc = HorizontalForm::zero(conn.dim, conn.nvars);
            for ((g, q), c) in tensor {
                acc = acc.add(&conn.lambda(g).try_wedge(conn.lambda(q))?.scale(&c));
            }
            if !acc.is_zero() {
                bad.push(h);
            }
        }
        Ok(bad)
    }

    pub fn is_multiplicative<P: PolyRing>(
        &self,
        conn: &Connection<P>,
    ) -> Result<bool, BundleError> {
        Ok(self.multiplicativity_failures(conn)?.is_empty())
    }

    /// `c_ρ` with `r_ω(ρ) = −c_ρ w_ρ` for every proper 2-rotation, each required to be
    /// free of the coordinates `t`.
    pub fn constant_curvature(
        &self,
        conn: &LaurentConnection,
    ) -> Result<Vec<(usize, LaurentPolynomial)>, BundleError> {
        let proper: Vec<&TwoRotation> = self.proper_rotations().collect();
        let results = par::map(&proper, |rot| self.constant_at(conn, rot));
        results.into_iter().collect()
    }

    fn constant_at(
        &self,
        conn: &LaurentConnection,
        rot: &TwoRotation,
    ) -> Result<(usize, LaurentPolynomial), BundleError> {
        let r = self.curvature_at(conn, rot.element)?;
        let dim = self.dim();
        let pairs = crate::coxeter::bivector_pairs(dim);
        let nonconstant = |terms: String| BundleError::NonConstant {
            element: rot.element,
            terms,
        };
        let mut c: Option<LaurentPolynomial> = None;
        for ((k, l), w) in pairs.into_iter().zip(&rot.volume) {
            let comp = r.coeff2(k, l).reduced();
            if w.is_zero() {
                if !comp.is_zero() {
                    return Err(nonconstant(format!(
                        "off-plane component ({}, {}) = {}",
                        k + 1,
                        l + 1,
                        comp
                    )));
                }
                continue;
            }
            let poly = comp
                .as_poly()
                .ok_or_else(|| nonconstant(comp.to_string()))?;
            let value = poly.scale(&(-w.inv()?));
            match &c {
                None => c = Some(value),
                Some(prev) if *prev != value => {
                    return Err(nonconstant(format!(
                        "component ratios differ: {prev} vs {value}"
                    )));
                }
                _ => {}
            }
        }
        let c = c.unwrap_or_else(|| LaurentPolynomial::zero(conn.nvars));
        if c.terms().any(|(m, _)| m.0[..dim].iter().any(|&e| e != 0)) {
            return Err(nonconstant(c.to_string()));
        }
        Ok((rot.element, c))
    }
}

/// `ζ = Σ_k x_kθ_k`, half the differential of `⟨x,x⟩`.
pub fn radial_form(dim: usize, nvars: usize) -> HorizontalForm<Poly<Ordinary>> {
    let coeffs = (0..nvars.min(dim))
        .map(|k| Frac::from_poly(Polynomial::var(nvars, k)))
        .collect();
    HorizontalForm::one_form_from(dim, coeffs)
}

/// The constant 2-form `a∧b`.
pub fn bivector_form<P: PolyRing>(
    dim: usize,
    nvars: usize,
    a: &[Scalar],
    b: &[Scalar],
) -> HorizontalForm<P> {
    HorizontalForm::one_form(dim, nvars, a).wedge(&HorizontalForm::one_form(dim, nvars, b))
}

fn orientation(a: &[Scalar], b: &[Scalar], w: &[Scalar]) -> i8 {
    bivector_ratio(&bivector(a, b), w)
        .and_then(|c| c.signum().ok())
        .unwrap_or(0)
}

/// The roots of a rank-2 system in one open half-plane (closed on one side), in angular order.
pub fn angular_root_sequence(rs: &RootSystem) -> Vec<Vector> {
    let roots = rs.roots();
    let Some(first) = roots.iter().min_by(|a, b| lex_cmp(a, b)) else {
        return Vec::new();
    };
    let Some(w) = roots
        .iter()
        .map(|r| bivector(first, r))
        .find(|b| b.iter().any(|x| !x.is_zero()))
    else {
        return vec![first.clone()];
    };
    let mut half: Vec<Vector> = roots
        .iter()
        .filter(|r| orientation(first, r, &w) > 0)
        .cloned()
        .collect();
    half.push(first.clone());
    half.sort_by(|a, b| match orientation(a, b, &w) {
        1 => std::cmp::Ordering::Less,
        -1 => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    half
}

/// `v, vϱ, …, vϱ^{m−1}` for a rotation `ϱ` by `π/m` with exact coordinates: `m = 2` in the
/// plane, `m = 3` about `(1,1,1)`, `m = 5` about `(0,1,φ)` over `ℚ(√5)`.
pub fn half_rotation_sequence(m: usize) -> Result<Vec<Vector>, BundleError> {
    let (v, axis, cos, sin_over_norm): (Vector, Option<Vector>, Scalar, Scalar) = match m {
        2 => (
            vec![Scalar::one(), Scalar::zero()],
            None,
            Scalar::zero(),
            Scalar::one(),
        ),
        3 => (
            vec![Scalar::one(), Scalar::int(-1), Scalar::zero()],
            Some(vec![Scalar::one(); 3]),
            Scalar::frac(1, 2),
            Scalar::frac(1, 2),
        ),
        5 => (
            vec![Scalar::one(), Scalar::zero(), Scalar::zero()],
            Some(vec![Scalar::zero(), Scalar::one(), Scalar::phi()]),
            &Scalar::phi() * &Scalar::frac(1, 2),
            &(&Scalar::phi() - &Scalar::one()) * &Scalar::frac(1, 2),
        ),
        _ => return Err(BundleError::UnrepresentableRotation(m)),
    };
    let step = |u: &Vector| -> Vector {
        match &axis {
            None => vec![
                &(&cos * &u[0]) - &(&sin_over_norm * &u[1]),
                &(&sin_over_norm * &u[0]) + &(&cos * &u[1]),
            ],
            Some(a) => {
                let cross = [
                    &(&a[1] * &u[2]) - &(&a[2] * &u[1]),
                    &(&a[2] * &u[0]) - &(&a[0] * &u[2]),
                    &(&a[0] * &u[1]) - &(&a[1] * &u[0]),
                ];
                (0..3)
                    .map(|i| &(&cos * &u[i]) + &(&sin_over_norm * &cross[i]))
                    .collect()
            }
        }
    };
    let mut seq = vec![v];
    for _ in 1..m {
        let next = step(seq.last().expect("nonempty"));
        seq.push(next);
    }
    let last = step(seq.last().expect("nonempty"));
    let neg: Vector = seq[0].iter().map(|x| -x).collect();
    if last != neg || dot(&seq[1], &seq[1]) != dot(&seq[0], &seq[0]) {
        return Err(BundleError::UnrepresentableRotation(m));
    }
    Ok(seq)
}

fn product_except(forms: &[Polynomial], skip: &[usize]) -> Polynomial {
    let nvars = forms[0].nvars();
    forms
        .iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .fold(Polynomial::one(nvars), |acc, (_, f)| &acc * f)
}

/// `Σ_j c_j/(L_jL_{j+1}) − c_end/(L_{m−1}L_0)` with denominators cleared by `∏L_j`,
/// where `L_j = ⟨x,u_j⟩`.
fn cleared_sum(seq: &[Vector], weights: &[Scalar], end_weight: &Scalar) -> Polynomial {
    let dim = seq[0].len();
    let forms: Vec<Polynomial> = seq
        .iter()
        .map(|u| Polynomial::linear_form(dim, u))
        .collect();
    let m = seq.len();
    let mut acc = Polynomial::zero(dim);
    for (j, w) in weights.iter().enumerate().take(m - 1) {
        acc = &acc + &product_except(&forms, &[j, j + 1]).scale(w);
    }
    &acc - &product_except(&forms, &[0, m - 1]).scale(end_weight)
}

/// `Σ_{j<m−1} 1/(⟨x,u_j⟩⟨x,u_{j+1}⟩) = 1/(⟨x,u_{m−1}⟩⟨x,u_0⟩)` as a polynomial identity.
pub fn vxrho_unweighted_check(seq: &[Vector]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let ones = vec![Scalar::one(); seq.len() - 1];
    cleared_sum(seq, &ones, &Scalar::one()).is_zero()
}

/// The scale-free form for coplanar `u_j` of arbitrary lengths:
/// `Σ_j (u_j∧u_{j+1})/(L_jL_{j+1}) = (u_0∧u_{m−1})/(L_0L_{m−1})`.
pub fn vxrho_weighted_check(seq: &[Vector]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let m = seq.len();
    let reference = bivector(&seq[0], &seq[m - 1]);
    let weights: Option<Vec<Scalar>> = (0..m - 1)
        .map(|j| bivector_ratio(&bivector(&seq[j], &seq[j + 1]), &reference))
        .collect();
    match weights {
        Some(w) => cleared_sum(seq, &w, &Scalar::one()).is_zero(),
        None => false,
    }
}

/// The sum identity for half-turn rotation sequences of order `2m`: exact rotations for
/// `m ∈ {2, 3, 5}`, and the weighted form on the octagonal and dodecagonal root sequences
/// for `m ∈ {4, 6}`, where no rational rotation exists.
pub fn vxrho_identity_check(m: usize) -> Result<bool, BundleError> {
    match m {
        2 | 3 | 5 => Ok(vxrho_unweighted_check(&half_rotation_sequence(m)?)),
        4 => Ok(vxrho_weighted_check(&angular_root_sequence(
            &RootSystem::standard("B2")?,
        ))),
        6 => Ok(vxrho_weighted_check(&angular_root_sequence(
            &RootSystem::standard("G2")?,
        ))),
        _ => Err(BundleError::UnrepresentableRotation(m)),
    }
}

/// `1/(ab) + 1/(bc) + 1/(ca) = ⟨x,α+β+γ⟩/(abc)` with `a = ⟨x,α⟩` etc., cleared.
pub fn three_vector_check(a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> bool {
    let dim = a.len();
    let la = Polynomial::linear_form(dim, a);
    let lb = Polynomial::linear_form(dim, b);
    let lc = Polynomial::linear_form(dim, c);
    let lhs = &(&lc + &la) + &lb;
    let sum: Vector = (0..dim).map(|i| &(&a[i] + &b[i]) + &c[i]).collect();
    lhs == Polynomial::linear_form(dim, &sum)
}

/// `v, v_1, v_1 − v, …, v_1 − k·v`: the sequence `v_0 = v`, `v_{j+1} = v_1 − j·v`.
pub fn arithmetic_progression(v: &[Scalar], v1: &[Scalar], k: usize) -> Vec<Vector> {
    let mut seq = vec![v.to_vec(), v1.to_vec()];
    for _ in 1..k {
        let next: Vector = seq
            .last()
            .expect("nonempty")
            .iter()
            .zip(v)
            .map(|(a, b)| a - b)
            .collect();
        seq.push(next);
    }
    seq
}

/// `Σ_j C(u_j)C(u_{j+1}) = C(u_0)C(u_last) + (len − 2)` with `C(u) = (T^u+1)/(T^u−1)`,
/// in exact Laurent arithmetic.
pub fn coth_sum_check(seq: &[Vector]) -> Result<bool, BundleError> {
    if seq.len() < 2 {
        return Ok(false);
    }
    let nvars = seq[0].len();
    let c: Vec<Frac<Poly<Laurent>>> = seq
        .iter()
        .map(|u| laurent_coth_half_scalar(u, nvars))
        .collect::<Result<_, _>>()?;
    let mut lhs = Frac::zero(nvars);
    for j in 0..c.len() - 1 {
        lhs = &lhs + &(&c[j] * &c[j + 1]);
    }
    let rhs =
        &(&c[0] * &c[c.len() - 1]) + &Frac::constant(nvars, Scalar::int(seq.len() as i64 - 2));
    Ok(lhs == rhs)
}

/// Checks the matrix side convention: `(λ[σ_α])_g` against `i·h_α(xg)·αg⁻¹` built directly
/// from the formula, for one reflection and group element.
pub fn covariance_by_formula(
    bundle: &Bundle,
    conn: &RationalConnection,
    s: usize,
    g: usize,
) -> Result<bool, BundleError> {
    let Some(h) = conn.h() else { return Ok(false) };
    let gm: &Matrix = bundle.group().element(g);
    let a = bundle.group().root_of_reflection(s);
    let alpha_ginv = bundle
        .group()
        .element(bundle.group().inv(g))
        .apply(bundle.root_system().root(a));
    let expected = HorizontalForm::one_form(conn.dim(), conn.nvars(), &alpha_ginv)
        .mul_fn(&h[a].pullback(gm)?)
        .scale(&Scalar::i());
    Ok(bundle.act(conn.lambda(s), g)? == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::MultiplicityFunction;

    fn sym(name: &str) -> (Bundle, MultiplicityFunction) {
        let b = Bundle::standard(name).unwrap();
        let k = MultiplicityFunction::symbolic(b.root_system());
        (b, k)
    }

    fn line() -> (Bundle, MultiplicityFunction) {
        let rs = RootSystem::from_int_vectors("A1", 1, &[vec![1], vec![-1]]).unwrap();
        let k = MultiplicityFunction::symbolic(&rs);
        (Bundle::new(rs).unwrap(), k)
    }

    #[test]
    fn rank_one_displacement() {
        let (b, k) = line();
        let c = b.make_standard_dunkl(&k).unwrap();
        let s = b.group().reflections()[0];
        let lambda = c.lambda(s);
        // i(κ/x)·dx with κ the second variable.
        let expected = HorizontalForm::theta(1, 2, 0)
            .mul_fn(&Frac::new(Polynomial::var(2, 1), Polynomial::var(2, 0)).unwrap())
            .scale(&Scalar::i());
        assert_eq!(*lambda, expected);
    }

    #[test]
    fn regularity_deviation_rank_one() {
        let (b, k) = line();
        let c = b.make_standard_dunkl(&k).unwrap();
        let s = b.group().reflections()[0];
        let x = HorizontalForm::from_poly(1, Polynomial::var(2, 0));
        let l = b.regularity_deviation(&c, s, &x).unwrap();
        let expected = HorizontalForm::theta(1, 2, 0)
            .mul_fn(&Frac::from_poly(
                Polynomial::var(2, 1).scale(&Scalar::int(2)),
            ))
            .scale(&Scalar::i());
        assert_eq!(l, expected);
    }

    #[test]
    fn standard_b2_is_valid_and_flat() {
        let (b, k) = sym("B2");
        let c = b.make_standard_dunkl(&k).unwrap();
        let rep = b.validate_displacement(&c).unwrap();
        assert!(rep.is_valid() && rep.is_closed(), "{rep:?}");
        let curv = b.curvature_tensor(&c).unwrap();
        assert!(curv.vanishes());
        assert!(b.is_multiplicative(&c).unwrap());
    }

    #[test]
    fn linear_profile_b2_curves() {
        let (b, k) = sym("B2");
        let c = b
            .make_profile_dunkl(&k, &OddProfile::linear(k.orbit_count()))
            .unwrap();
        let rep = b.validate_displacement(&c).unwrap();
        assert!(rep.is_valid() && rep.is_closed());
        let curv = b.curvature_tensor(&c).unwrap();
        assert!(!curv.vanishes());
        assert!(curv.support_violations().is_empty());
        assert!(!b.is_multiplicative(&c).unwrap());
        for rot in b.proper_rotations() {
            assert_eq!(
                b.dunkl_curvature_formula(&c, rot).unwrap(),
                *curv.at(rot.element)
            );
        }
    }

    #[test]
    fn vxrho_orders() {
        for m in [2, 3, 4, 5, 6] {
            assert!(vxrho_identity_check(m).unwrap(), "m = {m}");
        }
        assert!(matches!(
            vxrho_identity_check(7),
            Err(BundleError::UnrepresentableRotation(7))
        ));
    }

    #[test]
    fn coth_a2_is_constant() {
        let (b, k) = sym("A2");
        let c = b.make_coth(&k).unwrap();
        let consts = b.constant_curvature(&c).unwrap();
        assert_eq!(consts.len(), 2);
        for (_, v) in consts {
            assert!(!v.is_zero());
        }
    }
}
