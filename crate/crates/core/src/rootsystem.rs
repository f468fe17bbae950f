//! Root systems, reflections, positive subsystems, orbits and multiplicities.

use std::cmp::Ordering;

use thiserror::Error;

use crate::algebra::matrix::{self, dot, fmt_vec, int_vec, is_zero_vec, lex_cmp, vec_neg, Vector};
use crate::algebra::{Matrix, Polynomial, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("invalid root system ({axiom}): {witness}")]
    InvalidRootSystem {
        axiom: &'static str,
        witness: String,
    },
    #[error("unknown root system '{0}'")]
    UnknownSystem(String),
    #[error("order vector is orthogonal to root {0}")]
    DegenerateOrderVector(String),
    #[error("expected {expected} multiplicity values, got {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("zero vector has no reflection")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A finite, reduced, reflection-closed set of nonzero vectors in `ℝ^n`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    name: String,
    dim: usize,
    roots: Vec<Vector>,
}

/// `σ_α = I − 2αᵀα/⟨α,α⟩`, acting on row vectors.
pub fn reflection_matrix(alpha: &[Scalar]) -> Result<Matrix, RootSystemError> {
    if is_zero_vec(alpha) {
        return Err(RootSystemError::ZeroVector);
    }
    let n = alpha.len();
    let c = Scalar::int(2) / dot(alpha, alpha);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let delta = if i == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    };
                    delta - &c * &(&alpha[i] * &alpha[j])
                })
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows).expect("square"))
}

/// `x σ_α = x − 2⟨x,α⟩/⟨α,α⟩ α`
pub fn reflect(x: &[Scalar], alpha: &[Scalar]) -> Vector {
    let c = Scalar::int(2) * dot(x, alpha) / dot(alpha, alpha);
    x.iter()
        .zip(alpha)
        .map(|(xi, ai)| xi - &(&c * ai))
        .collect()
}

/// Whether `b = r·a` for some scalar `r`, and the ratio if so.
fn ratio(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let k = a.iter().position(|x| !x.is_zero())?;
    let r = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| &(&r * x) == y).then_some(r)
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn pm_pairs(n: usize, long: bool, short: Option<i64>) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if let Some(c) = short {
        for i in 0..n {
            out.push(unit(n, i, c));
            out.push(unit(n, i, -c));
        }
    }
    if long {
        for i in 0..n {
            for j in i + 1..n {
                for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut v = vec![0; n];
                    v[i] = a;
                    v[j] = b;
                    out.push(v);
                }
            }
        }
    }
    out
}

impl RootSystem {
    /// Validates and builds a root system from explicit roots.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        roots: Vec<Vector>,
    ) -> Result<Self, RootSystemError> {
        let rs = RootSystem {
            name: name.into(),
            dim,
            roots,
        };
        rs.validate()?;
        Ok(rs)
    }

    pub fn from_int_vectors(
        name: impl Into<String>,
        dim: usize,
        roots: &[Vec<i64>],
    ) -> Result<Self, RootSystemError> {
        Self::new(name, dim, roots.iter().map(|r| int_vec(r)).collect())
    }

    /// The empty root system in `ℝ^dim`; every Dunkl structure on it is classical.
    pub fn empty(dim: usize) -> Self {
        RootSystem {
            name: "empty".into(),
            dim,
            roots: Vec::new(),
        }
    }

    /// Catalog lookup: `A<n>`, `B<n>`, `C<n>`, `D<n>`, `G2`, `H3`, `I2(<m>)` for
    /// `m ∈ {3,4,5,6}`, and `empty`.
    pub fn standard(name: &str) -> Result<Self, RootSystemError> {
        let key: String = name
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_uppercase();
        let unknown = || RootSystemError::UnknownSystem(name.to_string());
        if key == "EMPTY" {
            return Ok(Self::empty(1));
        }
        if key == "G2" {
            return Self::g2();
        }
        if key == "H3" {
            return Self::h3();
        }
        if let Some(m) = key.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            return match m.parse::<u32>().map_err(|_| unknown())? {
                3 => Self::rename(Self::type_a(2)?, "I2(3)"),
                4 => Self::rename(Self::type_b(2)?, "I2(4)"),
                5 => Self::i2_5(),
                6 => Self::rename(Self::g2()?, "I2(6)"),
                _ => Err(unknown()),
            };
        }
        let mut chars = key.chars();
        let family = chars.next().ok_or_else(unknown)?;
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
        if n == 0 || n > 8 {
            return Err(unknown());
        }
        match family {
            'A' => Self::type_a(n),
            'B' => Self::type_b(n),
            'C' => Self::type_c(n),
            'D' if n >= 2 => Self::type_d(n),
            _ => Err(unknown()),
        }
    }

    /// Catalog names exercised by the default suites.
    pub fn desk_catalog() -> Vec<&'static str> {
        vec!["A1", "A2", "A3", "B2", "B3", "G2", "I2(5)"]
    }

    fn rename(mut rs: Self, name: &str) -> Result<Self, RootSystemError> {
        rs.name = name.into();
        Ok(rs)
    }

    /// `e_i − e_j` in `ℝ^{n+1}`.
    pub fn type_a(n: usize) -> Result<Self, RootSystemError> {
        let d = n + 1;
        let mut roots = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    let mut v = vec![0; d];
                    v[i] = 1;
                    v[j] = -1;
                    roots.push(v);
                }
            }
        }
        Self::from_int_vectors(format!("A{n}"), d, &roots)
    }

    /// `±e_i`, `±e_i ± e_j`.
    pub fn type_b(n: usize) -> Result<Self, RootSystemError> {
        Self::from_int_vectors(format!("B{n}"), n, &pm_pairs(n, true, Some(1)))
    }

    /// `±2e_i`, `±e_i ± e_j`.
    pub fn type_c(n: usize) -> Result<Self, RootSystemError> {
        Self::from_int_vectors(format!("C{n}"), n, &pm_pairs(n, true, Some(2)))
    }

    /// `±e_i ± e_j`.
    pub fn type_d(n: usize) -> Result<Self, RootSystemError> {
        Self::from_int_vectors(format!("D{n}"), n, &pm_pairs(n, true, None))
    }

    /// `±(e_i − e_j)` and `±(2e_i − e_j − e_k)` in the plane `x_1 + x_2 + x_3 = 0`.
    pub fn g2() -> Result<Self, RootSystemError> {
        let mut roots = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let mut v = vec![0; 3];
                    v[i] = 1;
                    v[j] = -1;
                    roots.push(v);
                }
            }
            let mut v = vec![-1; 3];
            v[i] = 2;
            roots.push(v.clone());
            roots.push(v.iter().map(|x| -x).collect());
        }
        Self::from_int_vectors("G2", 3, &roots)
    }

    /// `±2e_i` and the cyclic permutations of `(±φ, ±1, ±φ⁻¹)`.
    pub fn h3() -> Result<Self, RootSystemError> {
        Self::new("H3", 3, Self::h3_roots())
    }

    fn h3_roots() -> Vec<Vector> {
        let phi = Scalar::phi();
        let phi_inv = phi.inv().expect("nonzero");
        let mut roots = Vec::new();
        for i in 0..3 {
            for s in [2, -2] {
                roots.push(int_vec(&unit(3, i, s)));
            }
        }
        let base = [phi, Scalar::one(), phi_inv];
        for shift in 0..3 {
            for signs in 0..8 {
                let v: Vector = (0..3)
                    .map(|k| {
                        let c = base[(k + 3 - shift) % 3].clone();
                        if signs & (1 << k) != 0 {
                            -c
                        } else {
                            c
                        }
                    })
                    .collect();
                roots.push(v);
            }
        }
        roots
    }

    /// The ten roots of `H3` orthogonal to the five-fold axis `(0, 1, φ)`.
    pub fn i2_5() -> Result<Self, RootSystemError> {
        let axis = vec![Scalar::zero(), Scalar::one(), Scalar::phi()];
        let roots = Self::h3_roots()
            .into_iter()
            .filter(|r| dot(r, &axis).is_zero())
            .collect();
        Self::new("I2(5)", 3, roots)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Vector {
        &self.roots[i]
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn index_of(&self, v: &[Scalar]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == v)
    }

    /// Index of `−α_i`.
    pub fn negative_of(&self, i: usize) -> usize {
        self.index_of(&vec_neg(&self.roots[i]))
            .expect("validated root system")
    }

    pub fn reflection(&self, i: usize) -> Matrix {
        reflection_matrix(&self.roots[i]).expect("nonzero root")
    }

    /// Whether all coordinates of all roots are integers.
    pub fn is_integral(&self) -> bool {
        self.roots.iter().all(|r| matrix::as_int_vec(r).is_some())
    }

    pub fn rank(&self) -> usize {
        matrix::rank(&self.roots)
    }

    /// Whether every root has the same squared length `2`.
    pub fn is_normalized(&self) -> bool {
        self.roots.iter().all(|r| dot(r, r) == Scalar::int(2))
    }

    /// Coordinates that, together with linear forms vanishing on every root, give a
    /// basis of all linear forms. Polynomials in these variables represent every
    /// polynomial modulo the invariant directions.
    pub fn kept_variables(&self) -> Vec<usize> {
        let complement = matrix::orthogonal_complement(&self.roots, self.dim);
        let (_, pivots) = matrix::row_reduce(&complement);
        (0..self.dim).filter(|k| !pivots.contains(k)).collect()
    }

    /// Checks the root system axioms exhaustively.
    pub fn validate(&self) -> Result<(), RootSystemError> {
        let err = |axiom, v: &[Scalar]| RootSystemError::InvalidRootSystem {
            axiom,
            witness: fmt_vec(v),
        };
        for r in &self.roots {
            if r.len() != self.dim {
                return Err(RootSystemError::DimensionMismatch {
                    expected: self.dim,
                    found: r.len(),
                });
            }
            if is_zero_vec(r) {
                return Err(err("nonzero", r));
            }
        }
        for (i, a) in self.roots.iter().enumerate() {
            if self.roots[..i].contains(a) {
                return Err(err("no duplicates", a));
            }
            if self.index_of(&vec_neg(a)).is_none() {
                return Err(err("closed under negation", a));
            }
            for b in &self.roots {
                if let Some(r) = ratio(a, b) {
                    if !(r.is_one() || r == Scalar::int(-1)) {
                        return Err(err("reduced", b));
                    }
                }
                if self.index_of(&reflect(b, a)).is_none() {
                    return Err(err("closed under reflections", &reflect(b, a)));
                }
            }
        }
        Ok(())
    }

    /// The positive half selected by `⟨α,w⟩ > 0`, or by the first nonzero coordinate
    /// when `w` is `None` (the order vector `(1, ε, ε², …)` for infinitesimal `ε`).
    pub fn positive_subsystem(
        &self,
        w: Option<&[Scalar]>,
    ) -> Result<PositiveSystem, RootSystemError> {
        let mut positives = Vec::new();
        for (i, r) in self.roots.iter().enumerate() {
            let s = match w {
                Some(w) => {
                    if w.len() != self.dim {
                        return Err(RootSystemError::DimensionMismatch {
                            expected: self.dim,
                            found: w.len(),
                        });
                    }
                    dot(r, w)
                        .signum()
                        .map_err(|_| RootSystemError::DegenerateOrderVector(fmt_vec(r)))?
                }
                None => match lex_cmp(r, &vec![Scalar::zero(); self.dim]) {
                    Ordering::Greater => 1,
                    _ => -1,
                },
            };
            if s == 0 {
                return Err(RootSystemError::DegenerateOrderVector(fmt_vec(r)));
            }
            if s > 0 {
                positives.push(i);
            }
        }
        Ok(PositiveSystem {
            order: w.map(|w| w.to_vec()),
            positives,
        })
    }

    /// Orbits under the reflection group, ordered by squared length then by the
    /// lexicographically largest member. Each orbit lists root indices ascending.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.roots.len();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < orbit.len() {
                let b = self.roots[orbit[k]].clone();
                for a in &self.roots {
                    let j = self.index_of(&reflect(&b, a)).expect("closed");
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(j);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        let key = |o: &Vec<usize>| {
            let norm = dot(&self.roots[o[0]], &self.roots[o[0]]);
            let top = o
                .iter()
                .map(|&i| &self.roots[i])
                .max_by(|a, b| lex_cmp(a, b))
                .cloned()
                .unwrap();
            (norm, top)
        };
        orbits.sort_by(|a, b| {
            let (na, ta) = key(a);
            let (nb, tb) = key(b);
            (&na - &nb)
                .signum()
                .unwrap_or(0)
                .cmp(&0)
                .then_with(|| lex_cmp(&ta, &tb))
        });
        orbits
    }

    /// Orbit names `k0, k1, …` in [`RootSystem::orbits`] order.
    pub fn orbit_names(&self) -> Vec<String> {
        (0..self.orbits().len()).map(|i| format!("k{i}")).collect()
    }
}

/// `R⁺ = {α : ⟨α,w⟩ > 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveSystem {
    pub order: Option<Vector>,
    pub positives: Vec<usize>,
}

/// A multiplicity value: a scalar, or `c·κ_j` for the `j`-th symbolic parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Kappa {
    Value(Scalar),
    Symbol(usize, Scalar),
}

/// Per-orbit input for [`MultiplicityFunction::new`].
#[derive(Clone, Debug, PartialEq)]
pub enum KappaValue {
    Symbolic,
    Value(Scalar),
}

/// A multiplicity function `κ: R → K`, where `K` may contain symbolic parameters.
///
/// Symbolic parameters are extra polynomial variables indexed after the `dim`
/// coordinates, so every identity involving `κ` is a polynomial identity.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityFunction {
    per_root: Vec<Kappa>,
    orbit_of: Vec<usize>,
    orbit_names: Vec<String>,
    symbols: Vec<String>,
}

impl MultiplicityFunction {
    pub fn new(rs: &RootSystem, values: Vec<KappaValue>) -> Result<Self, RootSystemError> {
        let orbits = rs.orbits();
        if values.len() != orbits.len() {
            return Err(RootSystemError::WrongValueCount {
                expected: orbits.len(),
                found: values.len(),
            });
        }
        let names = rs.orbit_names();
        let mut per_root = vec![Kappa::Value(Scalar::zero()); rs.len()];
        let mut orbit_of = vec![0; rs.len()];
        let mut symbols = Vec::new();
        for (o, (orbit, v)) in orbits.iter().zip(values).enumerate() {
            let k = match v {
                KappaValue::Value(c) => Kappa::Value(c),
                KappaValue::Symbolic => {
                    symbols.push(names[o].clone());
                    Kappa::Symbol(symbols.len() - 1, Scalar::one())
                }
            };
            for &i in orbit {
                per_root[i] = k.clone();
                orbit_of[i] = o;
            }
        }
        Ok(MultiplicityFunction {
            per_root,
            orbit_of,
            orbit_names: names,
            symbols,
        })
    }

    /// One symbolic parameter per orbit.
    pub fn symbolic(rs: &RootSystem) -> Self {
        Self::new(rs, vec![KappaValue::Symbolic; rs.orbits().len()]).expect("orbit count")
    }

    pub fn numeric(rs: &RootSystem, values: &[Scalar]) -> Result<Self, RootSystemError> {
        Self::new(rs, values.iter().cloned().map(KappaValue::Value).collect())
    }

    /// `κ ≡ 0`: the classical structure.
    pub fn zero(rs: &RootSystem) -> Self {
        Self::new(
            rs,
            vec![KappaValue::Value(Scalar::zero()); rs.orbits().len()],
        )
        .expect("orbit count")
    }

    /// An arbitrary per-root assignment, not checked for invariance.
    pub fn per_root(rs: &RootSystem, per_root: Vec<Kappa>, nsymbols: usize) -> Self {
        assert_eq!(per_root.len(), rs.len());
        let mut orbit_of = vec![0; rs.len()];
        for (o, orbit) in rs.orbits().iter().enumerate() {
            for &i in orbit {
                orbit_of[i] = o;
            }
        }
        MultiplicityFunction {
            per_root,
            orbit_of,
            orbit_names: rs.orbit_names(),
            symbols: (0..nsymbols).map(|j| format!("k{j}")).collect(),
        }
    }

    pub fn kappa(&self, i: usize) -> &Kappa {
        &self.per_root[i]
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_names.len()
    }

    pub fn orbit_names(&self) -> &[String] {
        &self.orbit_names
    }

    /// Names of the symbolic parameters, in variable order.
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn nsymbols(&self) -> usize {
        self.symbols.len()
    }

    /// `κ_{α_i}` as a polynomial in `nvars` variables, parameters starting at `dim`.
    pub fn poly(&self, i: usize, dim: usize, nvars: usize) -> Polynomial {
        match &self.per_root[i] {
            Kappa::Value(c) => Polynomial::constant(nvars, c.clone()),
            Kappa::Symbol(j, c) => Polynomial::var(nvars, dim + j).scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.per_root
            .iter()
            .all(|k| matches!(k, Kappa::Value(c) if c.is_zero()))
    }

    /// `κ_{βσ_α} = κ_β` and `κ_{−α} = κ_α` for all roots.
    pub fn is_invariant(&self, rs: &RootSystem) -> bool {
        (0..rs.len()).all(|i| {
            self.per_root[rs.negative_of(i)] == self.per_root[i]
                && rs.roots().iter().all(|a| {
                    let j = rs.index_of(&reflect(rs.root(i), a)).expect("closed");
                    self.per_root[j] == self.per_root[i]
                })
        })
    }

    /// Variable names for polynomials over this multiplicity: coordinates, then parameters.
    pub fn variable_names(&self, dim: usize, coordinate: &str) -> Vec<String> {
        (1..=dim)
            .map(|k| format!("{coordinate}{k}"))
            .chain(self.symbols.iter().cloned())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        for (name, size, dim) in [
            ("A1", 2, 2),
            ("A2", 6, 3),
            ("A3", 12, 4),
            ("B2", 8, 2),
            ("B3", 18, 3),
            ("C3", 18, 3),
            ("D4", 24, 4),
            ("G2", 12, 3),
            ("I2(5)", 10, 3),
            ("H3", 30, 3),
        ] {
            let rs = RootSystem::standard(name).unwrap();
            assert_eq!((rs.len(), rs.dim()), (size, dim), "{name}");
        }
        assert!(RootSystem::standard("Q7").is_err());
        assert!(RootSystem::standard("I2(7)").is_err());
    }

    #[test]
    fn reflection_examples() {
        let s = reflection_matrix(&int_vec(&[1, -1])).unwrap();
        assert_eq!(s.apply(&int_vec(&[1, 0])), int_vec(&[0, 1]));
        assert_eq!(s.apply(&int_vec(&[2, 2])), int_vec(&[2, 2]));
        assert_eq!(reflection_matrix(&int_vec(&[3, -3])).unwrap(), s);
        assert_eq!(s.det(), Scalar::int(-1));
        assert!(reflection_matrix(&int_vec(&[0, 0])).is_err());
    }

    #[test]
    fn positive_systems() {
        let b2 = RootSystem::standard("B2").unwrap();
        let w = int_vec(&[2, 1]);
        let p = b2.positive_subsystem(Some(&w)).unwrap();
        let mut pos: Vec<Vector> = p.positives.iter().map(|&i| b2.root(i).clone()).collect();
        pos.sort_by(|a, b| lex_cmp(a, b));
        let mut expected = vec![
            int_vec(&[1, 0]),
            int_vec(&[0, 1]),
            int_vec(&[1, 1]),
            int_vec(&[1, -1]),
        ];
        expected.sort_by(|a, b| lex_cmp(a, b));
        assert_eq!(pos, expected);
        match b2.positive_subsystem(Some(&int_vec(&[1, 1]))) {
            Err(RootSystemError::DegenerateOrderVector(w)) => {
                assert!(w == "(1, -1)" || w == "(-1, 1)")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(RootSystem::standard("A2").unwrap().orbits().len(), 1);
        let b2 = RootSystem::standard("B2").unwrap();
        let o = b2.orbits();
        assert_eq!(o.len(), 2);
        assert_eq!(b2.root(o[0][0]).iter().filter(|x| !x.is_zero()).count(), 1);
        assert_eq!(RootSystem::standard("H3").unwrap().orbits().len(), 1);
        assert_eq!(RootSystem::standard("G2").unwrap().orbits().len(), 2);
    }

    #[test]
    fn invalid_systems_rejected() {
        let missing_neg = RootSystem::from_int_vectors("x", 2, &[vec![1, 0]]);
        assert!(matches!(
            missing_neg,
            Err(RootSystemError::InvalidRootSystem {
                axiom: "closed under negation",
                ..
            })
        ));
        let non_reduced =
            RootSystem::from_int_vectors("x", 1, &[vec![1], vec![-1], vec![2], vec![-2]]);
        assert!(matches!(
            non_reduced,
            Err(RootSystemError::InvalidRootSystem {
                axiom: "reduced",
                ..
            })
        ));
        let not_closed = RootSystem::from_int_vectors(
            "x",
            2,
            &[vec![1, 0], vec![-1, 0], vec![1, 1], vec![-1, -1]],
        );
        assert!(matches!(
            not_closed,
            Err(RootSystemError::InvalidRootSystem {
                axiom: "closed under reflections",
                ..
            })
        ));
    }

    #[test]
    fn kept_variables_drop_invariant_directions() {
        assert_eq!(
            RootSystem::standard("A2").unwrap().kept_variables().len(),
            2
        );
        assert_eq!(
            RootSystem::standard("B3").unwrap().kept_variables(),
            vec![0, 1, 2]
        );
        assert_eq!(
            RootSystem::standard("I2(5)")
                .unwrap()
                .kept_variables()
                .len(),
            2
        );
    }
}
