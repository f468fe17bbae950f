//! `suite all`: every invariant at desk-scale parameters.

use std::sync::Arc;
use std::time::Instant;

use dunkl_core::bundle::Bundle;
use dunkl_core::coxeter::CoxeterGroup;
use dunkl_core::qcalc::Calculus;
use dunkl_core::rootsystem::{MultiplicityFunction, RootSystem};
use dunkl_core::sample::Sampler;
use serde_json::json;

use crate::checks;
use crate::commands::finish;
use crate::context::{CliError, Context, Source};
use crate::report::{CaseSpec, SuiteReport};

struct System {
    rs: Arc<RootSystem>,
    k: Arc<MultiplicityFunction>,
    g: Arc<CoxeterGroup>,
    b: Arc<Bundle>,
}

fn system_cases(sys: &System, degree: u32, seed: u64) -> Vec<CaseSpec> {
    let name = sys.rs.name().to_string();
    let id = |s: &str| format!("{name}/{s}");
    let mut out = Vec::new();
    macro_rules! case {
        ($label:expr, [$($v:ident),*], $body:expr) => {{
            $(let $v = sys.$v.clone();)*
            out.push(CaseSpec::new(id($label), move || $body));
        }};
    }
    case!("rootsys/axioms", [rs], checks::axioms(&rs));
    case!(
        "rootsys/positive-half",
        [rs],
        checks::positive_half(&rs, seed)
    );
    case!("rootsys/orbits", [rs], checks::orbits_partition(&rs));
    case!("coxeter/table", [g], checks::group_table(&g));
    case!("coxeter/conjugation", [rs, g], checks::conjugation(&rs, &g));
    case!("coxeter/rotations", [rs, g], checks::rotations(&rs, &g));
    case!("dunkl/commutativity", [rs, k], {
        let d = checks::dunkl(&rs, &k)?;
        let mut rng = Sampler::new(seed);
        let (xi, eta) = (rng.vector(rs.dim()), rng.vector(rs.dim()));
        checks::commutator(&d, &xi, &eta, degree).map(|_| ())
    });
    case!("dunkl/leibniz", [rs, k], {
        let d = checks::dunkl(&rs, &k)?;
        let mut rng = Sampler::new(seed);
        let vars = rs.kept_variables();
        for _ in 0..10 {
            let f = rng.polynomial(d.nvars(), &vars, 4, 4);
            let g = rng.polynomial(d.nvars(), &vars, 4, 4);
            let xi = rng.vector(rs.dim());
            checks::leibniz_pair(&d, &f, &g, &xi)?;
        }
        let f = rng.polynomial(d.nvars(), &vars, 4, 4);
        checks::leibniz_invariant(&d, &f, &rng.vector(rs.dim()))
    });
    case!(
        "dunkl/order-independence",
        [rs, k],
        checks::order_independence(&rs, &k, degree.min(5), seed)
    );
    case!(
        "bundle/displacements",
        [b, k],
        checks::displacements(&b, &k)
    );
    case!(
        "bundle/zero-curvature",
        [b, k],
        checks::zero_curvature(&b, &k)
    );
    case!(
        "bundle/curvature-squared",
        [b, k],
        checks::square(&b, &k, seed)
    );
    case!(
        "bundle/forms-leibniz",
        [b, k],
        checks::form_leibniz(&b, &k, seed)
    );
    case!(
        "bundle/commutator-duality",
        [b, k],
        checks::rcomm(&b, &k, seed)
    );
    if sys.rs.is_integral() {
        case!(
            "bundle/coth-constant",
            [b, k],
            checks::coth_constant(&b, &k)
        );
    }
    case!("qcalc/hopf", [g], checks::hopf(&Calculus::reflections(&g)));
    case!(
        "qcalc/delta",
        [g],
        checks::delta(&Calculus::reflections(&g))
    );
    case!(
        "qcalc/braid",
        [g],
        checks::braid(&Calculus::reflections(&g))
    );
    out
}

pub fn suite_all(
    ctx: &Context,
    explicit_system: bool,
    degree: u32,
) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let sources: Vec<Source> = if explicit_system {
        vec![ctx.source.clone()]
    } else {
        RootSystem::desk_catalog()
            .into_iter()
            .map(|n| Source::Catalog(n.to_string()))
            .collect()
    };
    let mut specs = Vec::new();
    let mut names = Vec::new();
    for src in &sources {
        let c = Context {
            source: src.clone(),
            ..ctx.clone()
        };
        let rs = c.system()?;
        let k = c.multiplicity(&rs)?;
        let sys = System {
            g: Arc::new(c.group(&rs)?),
            b: Arc::new(c.bundle(&rs)?),
            rs: Arc::new(rs),
            k: Arc::new(k),
        };
        names.push(sys.rs.name().to_string());
        specs.extend(system_cases(&sys, degree, ctx.seed));
    }
    for m in 2..=6 {
        specs.push(CaseSpec::new(
            format!("lemma/rotation-sum/m={m}"),
            move || checks::vxrho(m),
        ));
    }
    specs.push(CaseSpec::new("lemma/three-vector", checks::three_vector));
    for k in 1..=3 {
        specs.push(CaseSpec::new(format!("lemma/coth-sum/k={k}"), move || {
            checks::coth_sum(k)
        }));
    }
    let summary = json!({ "systems": names, "degree": degree, "seed": ctx.seed });
    let label = if explicit_system {
        ctx.source.label()
    } else {
        "catalog".into()
    };
    let mut report = finish(label, "suite all", specs, summary, start);
    report.summary["passed"] = json!(report.cases.len() - report.failures());
    report.summary["failed"] = json!(report.failures());
    Ok(report)
}
