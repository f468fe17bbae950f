//! Dunkl operators on polynomials and the covariant partial derivatives of Dunkl connections.

use thiserror::Error;

use crate::algebra::matrix::{dot, Vector};
use crate::algebra::{AlgebraError, Matrix, Polynomial, Scalar};
use crate::par;
use crate::rootsystem::{MultiplicityFunction, PositiveSystem, RootSystem, RootSystemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DunklError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("profile for orbit {0} is not odd")]
    ProfileNotOdd(usize),
    #[error("profile has {found} orbits, expected {expected}")]
    ProfileOrbitCount { expected: usize, found: usize },
}

/// Odd polynomial profiles `ψ_α(r) = κ_α·q_o(r)`, one `q_o` per orbit, as
/// coefficient lists `[c_0, c_1, …]` of `r^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct OddProfile {
    per_orbit: Vec<Vec<Scalar>>,
}

impl OddProfile {
    pub fn new(per_orbit: Vec<Vec<Scalar>>) -> Result<Self, DunklError> {
        for (o, q) in per_orbit.iter().enumerate() {
            if q.iter().step_by(2).any(|c| !c.is_zero()) {
                return Err(DunklError::ProfileNotOdd(o));
            }
        }
        Ok(OddProfile { per_orbit })
    }

    /// `q(r) = r` on every orbit.
    pub fn linear(norbits: usize) -> Self {
        OddProfile {
            per_orbit: vec![vec![Scalar::zero(), Scalar::one()]; norbits],
        }
    }

    pub fn orbits(&self) -> usize {
        self.per_orbit.len()
    }

    /// `q_o(r)` with `r` replaced by a polynomial.
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

/// The function `h_α` of a Dunkl displacement `λ[σ_α] = i·h_α·α`.
#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    /// `h_α = κ_α/⟨x,α⟩`
    Standard,
    /// `h_α = κ_α·q(⟨x,α⟩)` with `q` odd
    Odd(OddProfile),
}

/// Dunkl operators and covariant partials for a fixed root system, multiplicity and positive half.
#[derive(Clone, Debug)]
pub struct Dunkl {
    dim: usize,
    nvars: usize,
    roots: Vec<Vector>,
    sigma: Vec<Matrix>,
    forms: Vec<Polynomial>,
    kappa: Vec<Polynomial>,
    psi: Option<Vec<Polynomial>>,
    kept: Vec<usize>,
}

/// All exponent vectors of total degree `≤ degree` in the listed variables, as monomials.
pub fn monomials_upto(nvars: usize, vars: &[usize], degree: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let mut exps = vec![0i32; nvars];
    fn rec(vars: &[usize], left: u32, exps: &mut Vec<i32>, out: &mut Vec<Polynomial>) {
        match vars.split_first() {
            None => out.push(Polynomial::from_terms(
                exps.len(),
                [(exps.clone(), Scalar::one())],
            )),
            Some((&v, rest)) => {
                for e in 0..=left {
                    exps[v] = e as i32;
                    rec(rest, left - e, exps, out);
                }
                exps[v] = 0;
            }
        }
    }
    rec(vars, degree, &mut exps, &mut out);
    out
}

impl Dunkl {
    pub fn new(rs: &RootSystem, kappa: &MultiplicityFunction, positives: &PositiveSystem) -> Self {
        Self::with_profile(rs, kappa, positives, &Profile::Standard).expect("standard profile")
    }

    pub fn with_profile(
        rs: &RootSystem,
        kappa: &MultiplicityFunction,
        positives: &PositiveSystem,
        profile: &Profile,
    ) -> Result<Self, DunklError> {
        let dim = rs.dim();
        let nvars = dim + kappa.nsymbols();
        let roots: Vec<Vector> = positives
            .positives
            .iter()
            .map(|&i| rs.root(i).clone())
            .collect();
        let sigma = positives
            .positives
            .iter()
            .map(|&i| rs.reflection(i))
            .collect();
        let forms: Vec<Polynomial> = roots
            .iter()
            .map(|r| Polynomial::linear_form(nvars, r))
            .collect();
        let kappa_polys: Vec<Polynomial> = positives
            .positives
            .iter()
            .map(|&i| kappa.poly(i, dim, nvars))
            .collect();
        let psi = match profile {
            Profile::Standard => None,
            Profile::Odd(p) => {
                if p.orbits() != kappa.orbit_count() {
                    return Err(DunklError::ProfileOrbitCount {
                        expected: kappa.orbit_count(),
                        found: p.orbits(),
                    });
                }
                Some(
                    positives
                        .positives
                        .iter()
                        .zip(&forms)
                        .zip(&kappa_polys)
                        .map(|((&i, r), k)| k * &p.eval(kappa.orbit_of(i), r))
                        .collect(),
                )
            }
        };
        Ok(Dunkl {
            dim,
            nvars,
            roots,
            sigma,
            forms,
            kappa: kappa_polys,
            psi,
            kept: rs.kept_variables(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates plus symbolic multiplicity parameters.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coordinates that carry all the information modulo invariant directions.
    pub fn kept_variables(&self) -> &[usize] {
        &self.kept
    }

    pub fn positive_roots(&self) -> &[Vector] {
        &self.roots
    }

    /// `∂_ξ f`
    pub fn directional(&self, xi: &[Scalar], f: &Polynomial) -> Polynomial {
        xi.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Polynomial::zero(self.nvars), |acc, (k, c)| {
                &acc + &f.partial(k).scale(c)
            })
    }

    /// `f − f∘σ_α` for the `i`-th positive root.
    pub fn reflection_difference(
        &self,
        i: usize,
        f: &Polynomial,
    ) -> Result<Polynomial, DunklError> {
        Ok(f - &f.substitute_linear(&self.sigma[i])?)
    }

    /// The difference quotient of the `i`-th positive root: `(f − f∘σ_α)/⟨α,x⟩` for the
    /// standard profile, `ψ_α(⟨α,x⟩)(f − f∘σ_α)` for an odd profile.
    fn root_term(&self, i: usize, f: &Polynomial) -> Result<Polynomial, DunklError> {
        let d = self.reflection_difference(i, f)?;
        Ok(match &self.psi {
            None => &self.kappa[i] * &d.divide_exact(&self.forms[i])?,
            Some(psi) => &psi[i] * &d,
        })
    }

    /// `T_ξ f = ∂_ξ f + Σ_{α∈R⁺} ⟨α,ξ⟩·h-term`, with no factor `i`.
    pub fn apply(&self, xi: &[Scalar], f: &Polynomial) -> Result<Polynomial, DunklError> {
        let mut acc = self.directional(xi, f);
        for (i, r) in self.roots.iter().enumerate() {
            let c = dot(r, xi);
            if !c.is_zero() {
                acc = &acc + &self.root_term(i, f)?.scale(&c);
            }
        }
        Ok(acc)
    }

    /// `∂_ω^k(b) = ∂^k b + i·Σ_{α∈R⁺} h_α(b − b∘σ_α)α_k` (zero-based `k`).
    pub fn covariant_partial(&self, k: usize, b: &Polynomial) -> Result<Polynomial, DunklError> {
        let mut corr = Polynomial::zero(self.nvars);
        for (i, r) in self.roots.iter().enumerate() {
            if !r[k].is_zero() {
                corr = &corr + &self.root_term(i, b)?.scale(&r[k]);
            }
        }
        Ok(&b.partial(k) + &corr.scale(&Scalar::i()))
    }

    /// `[T_ξ, T_η] f`
    pub fn commutator(
        &self,
        xi: &[Scalar],
        eta: &[Scalar],
        f: &Polynomial,
    ) -> Result<Polynomial, DunklError> {
        let a = self.apply(xi, &self.apply(eta, f)?)?;
        let b = self.apply(eta, &self.apply(xi, f)?)?;
        Ok(&a - &b)
    }

    /// `[T_ξ, T_η] m` for every monomial `m` of degree `≤ degree` in the kept variables.
    pub fn commutator_residuals(
        &self,
        xi: &[Scalar],
        eta: &[Scalar],
        degree: u32,
    ) -> Result<Vec<(Polynomial, Polynomial)>, DunklError> {
        let monos = monomials_upto(self.nvars, &self.kept, degree);
        par::map(&monos, |m| {
            self.commutator(xi, eta, m).map(|r| (m.clone(), r))
        })
        .into_iter()
        .collect()
    }

    /// `T(fg) − T(f)g − fT(g) + Σ_{α∈R⁺} κ_α⟨α,ξ⟩(f − f∘σ_α)(g − g∘σ_α)/⟨α,x⟩`, identically zero.
    pub fn leibniz_residual(
        &self,
        f: &Polynomial,
        g: &Polynomial,
        xi: &[Scalar],
    ) -> Result<Polynomial, DunklError> {
        let mut r = &(&self.apply(xi, &(f * g))? - &(&self.apply(xi, f)? * g))
            - &(f * &self.apply(xi, g)?);
        r = &r + &self.leibniz_correction(f, g, xi)?;
        Ok(r)
    }

    /// `Σ_{α∈R⁺} κ_α⟨α,ξ⟩(f − f∘σ_α)(g − g∘σ_α)/⟨α,x⟩` (standard profile).
    pub fn leibniz_correction(
        &self,
        f: &Polynomial,
        g: &Polynomial,
        xi: &[Scalar],
    ) -> Result<Polynomial, DunklError> {
        let mut acc = Polynomial::zero(self.nvars);
        for (i, r) in self.roots.iter().enumerate() {
            let c = dot(r, xi);
            if c.is_zero() {
                continue;
            }
            let prod = &self.reflection_difference(i, f)? * &self.reflection_difference(i, g)?;
            let q = match &self.psi {
                None => &self.kappa[i] * &prod.divide_exact(&self.forms[i])?,
                Some(psi) => &psi[i] * &prod,
            };
            acc = &acc + &q.scale(&c);
        }
        Ok(acc)
    }
}

/// `T_ξ f = ∂_ξ f + ½Σ_{α∈R} κ_α⟨α,ξ⟩(f − f∘σ_α)/⟨α,x⟩`, summed over all roots.
pub fn apply_full_sum(
    rs: &RootSystem,
    kappa: &MultiplicityFunction,
    xi: &[Scalar],
    f: &Polynomial,
) -> Result<Polynomial, DunklError> {
    let nvars = rs.dim() + kappa.nsymbols();
    let mut acc = xi
        .iter()
        .enumerate()
        .fold(Polynomial::zero(nvars), |acc, (k, c)| {
            &acc + &f.partial(k).scale(c)
        });
    let half = Scalar::frac(1, 2);
    for (i, r) in rs.roots().iter().enumerate() {
        let c = dot(r, xi);
        if c.is_zero() {
            continue;
        }
        let d = f - &f.substitute_linear(&rs.reflection(i))?;
        let q = d.divide_exact(&Polynomial::linear_form(nvars, r))?;
        acc = &acc + &(&kappa.poly(i, rs.dim(), nvars) * &q).scale(&(&c * &half));
    }
    Ok(acc)
}

/// Whether the positive halves cut out by `w1` and `w2` give identical operators
/// `T_{e_k}` on every sample.
pub fn order_independence_check(
    rs: &RootSystem,
    kappa: &MultiplicityFunction,
    w1: &[Scalar],
    w2: &[Scalar],
    samples: &[Polynomial],
) -> Result<bool, DunklError> {
    let d1 = Dunkl::new(rs, kappa, &rs.positive_subsystem(Some(w1))?);
    let d2 = Dunkl::new(rs, kappa, &rs.positive_subsystem(Some(w2))?);
    let dirs: Vec<Vector> = (0..rs.dim())
        .map(|k| {
            (0..rs.dim())
                .map(|j| {
                    if j == k {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let results = par::map(samples, |f| -> Result<bool, DunklError> {
        for xi in &dirs {
            if d1.apply(xi, f)? != d2.apply(xi, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::int_vec;
    use crate::rootsystem::KappaValue;

    fn a1(kappa: KappaValue) -> (RootSystem, MultiplicityFunction, Dunkl) {
        let rs = RootSystem::from_int_vectors("A1'", 1, &[vec![1], vec![-1]]).unwrap();
        let k = MultiplicityFunction::new(&rs, vec![kappa]).unwrap();
        let d = Dunkl::new(&rs, &k, &rs.positive_subsystem(None).unwrap());
        (rs, k, d)
    }

    #[test]
    fn rank_one_examples() {
        let (_, _, d) = a1(KappaValue::Symbolic);
        let x = Polynomial::var(2, 0);
        let kappa = Polynomial::var(2, 1);
        let one = [Scalar::one()];
        assert_eq!(d.apply(&one, &(&x * &x)).unwrap(), x.scale(&Scalar::int(2)));
        assert_eq!(
            d.apply(&one, &x).unwrap(),
            &Polynomial::one(2) + &kappa.scale(&Scalar::int(2))
        );
    }

    #[test]
    fn zero_multiplicity_is_derivative() {
        let rs = RootSystem::standard("B2").unwrap();
        let k = MultiplicityFunction::zero(&rs);
        let d = Dunkl::new(&rs, &k, &rs.positive_subsystem(None).unwrap());
        let f = &Polynomial::var(2, 0).pow(3) * &Polynomial::var(2, 1);
        let xi = int_vec(&[2, -1]);
        assert_eq!(d.apply(&xi, &f).unwrap(), d.directional(&xi, &f));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_upto(3, &[1, 2], 6).len(), 28);
        assert_eq!(monomials_upto(3, &[0, 1, 2], 6).len(), 84);
    }

    #[test]
    fn even_profile_rejected() {
        let even = OddProfile::new(vec![vec![Scalar::zero(), Scalar::zero(), Scalar::one()]]);
        assert_eq!(even.unwrap_err(), DunklError::ProfileNotOdd(0));
    }
}
