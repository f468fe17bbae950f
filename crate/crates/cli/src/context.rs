//! Shared setup: root system, multiplicity function and runtime options.

use std::path::Path;

use dunkl_core::algebra::Scalar;
use dunkl_core::bundle::Bundle;
use dunkl_core::coxeter::CoxeterGroup;
use dunkl_core::rootsystem::{KappaValue, MultiplicityFunction, RootSystem, RootSystemError};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or inputs; exit code 2.
    Usage(String),
    /// A computation could not be carried out; exit code 1.
    Failure(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

/// Where the root system comes from.
#[derive(Clone, Debug)]
pub enum Source {
    Catalog(String),
    /// Integer roots read from a JSON file.
    Custom(Vec<Vec<i64>>),
}

impl Source {
    pub fn label(&self) -> String {
        match self {
            Source::Catalog(n) => n.clone(),
            Source::Custom(_) => "custom".into(),
        }
    }
}

pub fn read_roots(path: &Path) -> Result<Vec<Vec<i64>>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let roots: Vec<Vec<i64>> = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!(
            "{}: expected a list of integer vectors: {e}",
            path.display()
        ))
    })?;
    let dim = roots.first().map(|r| r.len()).unwrap_or(0);
    if dim == 0 || roots.iter().any(|r| r.len() != dim) {
        return Err(CliError::Usage(format!(
            "{}: vectors must be nonempty and of equal length",
            path.display()
        )));
    }
    Ok(roots)
}

/// Builds the system. Axiom violations of a custom system are reported as such.
pub fn load_system(src: &Source) -> Result<RootSystem, CliError> {
    match src {
        Source::Catalog(name) => {
            RootSystem::standard(name).map_err(|e| CliError::Usage(e.to_string()))
        }
        Source::Custom(roots) => RootSystem::from_int_vectors("custom", roots[0].len(), roots)
            .map_err(|e| match e {
                RootSystemError::InvalidRootSystem { .. } => CliError::Failure(e.to_string()),
                other => CliError::Usage(other.to_string()),
            }),
    }
}

pub fn parse_rational(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            (q != 0).then(|| Scalar::frac(p, q))
        }
        None => s.parse::<i64>().ok().map(Scalar::int),
    }
}

/// Parsed `--kappa orbit=value` overrides.
#[derive(Clone, Debug, Default)]
pub struct KappaSpec(pub Vec<(String, Scalar)>);

impl KappaSpec {
    pub fn parse(items: &[String]) -> Result<Self, CliError> {
        let mut out = Vec::new();
        for item in items {
            let (k, v) = item.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("--kappa expects orbit=value, got '{item}'"))
            })?;
            let v = parse_rational(v).ok_or_else(|| {
                CliError::Usage(format!("--kappa: '{v}' is not a rational number"))
            })?;
            out.push((k.trim().to_string(), v));
        }
        Ok(KappaSpec(out))
    }

    /// Orbits are named `k0, k1, …` (also `0, 1, …`); `short` is the first and `long` the last.
    fn orbit_index(name: &str, count: usize) -> Option<usize> {
        let idx = match name {
            "short" => Some(0),
            "long" => count.checked_sub(1),
            _ => name.strip_prefix('k').unwrap_or(name).parse().ok(),
        };
        idx.filter(|&i| i < count)
    }

    /// Symbolic on every orbit without an override.
    pub fn build(&self, rs: &RootSystem) -> Result<MultiplicityFunction, CliError> {
        let count = rs.orbits().len();
        let mut values = vec![KappaValue::Symbolic; count];
        for (name, v) in &self.0 {
            let i = Self::orbit_index(name, count).ok_or_else(|| {
                CliError::Usage(format!("--kappa: unknown orbit '{name}' ({count} orbits)"))
            })?;
            values[i] = KappaValue::Value(v.clone());
        }
        MultiplicityFunction::new(rs, values).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct Context {
    pub source: Source,
    pub kappa: KappaSpec,
    pub order_cap: Option<usize>,
    pub seed: u64,
}

impl Context {
    pub fn system(&self) -> Result<RootSystem, CliError> {
        load_system(&self.source)
    }

    pub fn group(&self, rs: &RootSystem) -> Result<CoxeterGroup, CliError> {
        match self.order_cap {
            Some(cap) => CoxeterGroup::generate_with_cap(rs, cap),
            None => CoxeterGroup::generate(rs),
        }
        .map_err(|e| CliError::Failure(e.to_string()))
    }

    pub fn bundle(&self, rs: &RootSystem) -> Result<Bundle, CliError> {
        match self.order_cap {
            Some(cap) => Bundle::with_order_cap(rs.clone(), cap),
            None => Bundle::new(rs.clone()),
        }
        .map_err(|e| CliError::Failure(e.to_string()))
    }

    pub fn multiplicity(&self, rs: &RootSystem) -> Result<MultiplicityFunction, CliError> {
        self.kappa.build(rs)
    }
}
