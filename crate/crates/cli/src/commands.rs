//! Subcommand implementations. Each builds its cases and a summary object.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use dunkl_core::algebra::poly::{Poly, PolyKind};
use dunkl_core::algebra::PolyRing;
use dunkl_core::algebra::{Polynomial, Scalar};
use dunkl_core::bundle::{Bundle, Connection, CurvatureTensor};
use dunkl_core::coxeter::{fmt_vectors, CoxeterGroup};
use dunkl_core::dunkl::{monomials_upto, Dunkl, OddProfile, Profile};
use dunkl_core::qcalc::Calculus;
use dunkl_core::rootsystem::MultiplicityFunction;
use dunkl_core::sample::Sampler;
use serde_json::{json, Value};

use crate::checks::{self, text};
use crate::context::{CliError, Context, Source};
use crate::report::{ensure, run_cases, CaseSpec, SuiteReport, Timings};

pub fn finish(
    system: String,
    suite: &str,
    specs: Vec<CaseSpec>,
    summary: Value,
    start: Instant,
) -> SuiteReport {
    let (cases, per_case) = run_cases(specs);
    SuiteReport {
        tool_version: env!("CARGO_PKG_VERSION"),
        system,
        suite: suite.into(),
        cases,
        summary,
        timings: Timings {
            total_secs: start.elapsed().as_secs_f64(),
            cases: per_case,
        },
    }
}

fn coords(dim: usize, k: usize) -> Vec<Scalar> {
    (0..dim)
        .map(|j| {
            if j == k {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

pub fn group_info(ctx: &Context) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let rs = Arc::new(ctx.system()?);
    let g = Arc::new(ctx.group(&rs)?);
    let rots = g.two_rotations(&rs);
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .map(|c| {
            json!({
                "size": c.len(),
                "element_order": g.element_order(c[0]),
                "reflections": g.is_reflection(c[0]),
            })
        })
        .collect();
    let mut by_order: BTreeMap<String, usize> = BTreeMap::new();
    for r in rots.iter().filter(|r| r.proper) {
        *by_order.entry(r.order.to_string()).or_default() += 1;
    }
    let summary = json!({
        "dim": rs.dim(),
        "order": g.order(),
        "reflections": g.reflections().len(),
        "classes": classes,
        "rotations": {
            "two_rotations": rots.len(),
            "proper": rots.iter().filter(|r| r.proper).count(),
            "proper_by_order": by_order,
            "decompositions": rots.iter().map(|r| r.decompositions.len()).sum::<usize>(),
        },
    });
    let specs = vec![
        {
            let g = g.clone();
            CaseSpec::new("coxeter/table", move || checks::group_table(&g))
        },
        {
            let (rs, g) = (rs.clone(), g.clone());
            CaseSpec::new("coxeter/conjugation", move || checks::conjugation(&rs, &g))
        },
        {
            let (rs, g) = (rs.clone(), g.clone());
            CaseSpec::new("coxeter/rotations", move || checks::rotations(&rs, &g))
        },
    ];
    Ok(finish(
        ctx.source.label(),
        "group info",
        specs,
        summary,
        start,
    ))
}

pub fn rootsys_validate(ctx: &Context) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let rs = match ctx.system() {
        Ok(rs) => rs,
        Err(CliError::Failure(w)) if matches!(ctx.source, Source::Custom(_)) => {
            let specs = vec![CaseSpec::new("rootsys/axioms", move || Err(w.clone()))];
            let summary = json!({ "valid": false });
            return Ok(finish(
                ctx.source.label(),
                "rootsys validate",
                specs,
                summary,
                start,
            ));
        }
        Err(e) => return Err(e),
    };
    let orbits: Vec<Value> = rs
        .orbits()
        .iter()
        .zip(rs.orbit_names())
        .map(|(o, name)| json!({ "name": name, "size": o.len() }))
        .collect();
    let summary = json!({
        "valid": rs.validate().is_ok(),
        "dim": rs.dim(),
        "rank": rs.rank(),
        "roots": rs.len(),
        "roots_list": fmt_vectors(rs.roots()),
        "orbits": orbits,
        "integral": rs.is_integral(),
        "normalized": rs.is_normalized(),
    });
    let rs = Arc::new(rs);
    let seed = ctx.seed;
    let specs = vec![
        {
            let rs = rs.clone();
            CaseSpec::new("rootsys/axioms", move || checks::axioms(&rs))
        },
        {
            let rs = rs.clone();
            CaseSpec::new("rootsys/positive-half", move || {
                checks::positive_half(&rs, seed)
            })
        },
        {
            let rs = rs.clone();
            CaseSpec::new("rootsys/orbits", move || checks::orbits_partition(&rs))
        },
    ];
    Ok(finish(
        rs.name().to_string(),
        "rootsys validate",
        specs,
        summary,
        start,
    ))
}

pub fn verify_commutativity(ctx: &Context, degree: u32) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let rs = ctx.system()?;
    let k = ctx.multiplicity(&rs)?;
    let d = Arc::new(checks::dunkl(&rs, &k).map_err(CliError::Failure)?);
    let monomials = monomials_upto(d.nvars(), &rs.kept_variables(), degree).len();
    let mut rng = Sampler::new(ctx.seed);
    let mut pairs = vec![(
        "random".to_string(),
        rng.vector(rs.dim()),
        rng.vector(rs.dim()),
    )];
    for a in 0..rs.dim() {
        for b in a + 1..rs.dim() {
            pairs.push((
                format!("e{}-e{}", a + 1, b + 1),
                coords(rs.dim(), a),
                coords(rs.dim(), b),
            ));
        }
    }
    let specs: Vec<CaseSpec> = pairs
        .into_iter()
        .map(|(id, xi, eta)| {
            let d = d.clone();
            CaseSpec::new(format!("commutator/{id}"), move || {
                checks::commutator(&d, &xi, &eta, degree).map(|_| ())
            })
        })
        .collect();
    let mut report = finish(
        rs.name().to_string(),
        "verify commutativity",
        specs,
        Value::Null,
        start,
    );
    report.summary = json!({
        "system": rs.name(),
        "degree": degree,
        "monomials_checked": monomials,
        "kappa": kappa_summary(&k),
        "residuals_zero": report.passed(),
    });
    Ok(report)
}

pub fn verify_leibniz(ctx: &Context, degree: u32, pairs: usize) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let rs = ctx.system()?;
    let k = ctx.multiplicity(&rs)?;
    let d = Arc::new(checks::dunkl(&rs, &k).map_err(CliError::Failure)?);
    let vars = rs.kept_variables();
    let mut rng = Sampler::new(ctx.seed);
    let mut specs = Vec::new();
    for i in 0..pairs {
        let f = rng.polynomial(d.nvars(), &vars, degree, 4);
        let g = rng.polynomial(d.nvars(), &vars, degree, 4);
        let xi = rng.vector(rs.dim());
        let d = d.clone();
        specs.push(CaseSpec::new(format!("leibniz/pair-{i:03}"), move || {
            checks::leibniz_pair(&d, &f, &g, &xi)
        }));
    }
    for i in 0..3 {
        let f = rng.polynomial(d.nvars(), &vars, degree, 4);
        let xi = rng.vector(rs.dim());
        let d = d.clone();
        specs.push(CaseSpec::new(format!("leibniz/invariant-{i}"), move || {
            checks::leibniz_invariant(&d, &f, &xi)
        }));
    }
    let summary = json!({
        "system": rs.name(),
        "degree": degree,
        "pairs": pairs,
        "kappa": kappa_summary(&k),
    });
    Ok(finish(
        rs.name().to_string(),
        "verify leibniz",
        specs,
        summary,
        start,
    ))
}

fn kappa_summary(k: &MultiplicityFunction) -> Value {
    json!({ "orbits": k.orbit_names(), "symbols": k.symbols() })
}

/// `standard`, `coth`, or `poly:<odd polynomial in r>` such as `poly:r` or `poly:r+2r^3`.
#[derive(Clone, Debug, PartialEq)]
pub enum ConnectionSpec {
    Standard,
    Coth,
    Poly(Vec<Scalar>),
}

impl ConnectionSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let bad = |m: &str| CliError::Usage(format!("--connection '{s}': {m}"));
        match s.trim() {
            "standard" => return Ok(ConnectionSpec::Standard),
            "coth" => return Ok(ConnectionSpec::Coth),
            _ => {}
        }
        let body = s
            .trim()
            .strip_prefix("poly:")
            .ok_or_else(|| bad("expected standard, coth or poly:<q(r)>"))?;
        let mut coeffs: Vec<Scalar> = Vec::new();
        let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        for (neg, term) in split_signed(&compact) {
            let (c, p) =
                parse_term(term).ok_or_else(|| bad(&format!("cannot read term '{term}'")))?;
            if coeffs.len() <= p {
                coeffs.resize(p + 1, Scalar::zero());
            }
            let c = if neg { -c } else { c };
            coeffs[p] = &coeffs[p] + &c;
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(bad("empty profile"));
        }
        Ok(ConnectionSpec::Poly(coeffs))
    }

    pub fn label(&self) -> String {
        match self {
            ConnectionSpec::Standard => "standard".into(),
            ConnectionSpec::Coth => "coth".into(),
            ConnectionSpec::Poly(c) => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(p, c)| {
                        if p == 1 {
                            format!("({c})r")
                        } else {
                            format!("({c})r^{p}")
                        }
                    })
                    .collect();
                format!("poly:{}", terms.join("+"))
            }
        }
    }
}

fn split_signed(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let mut neg = false;
    let mut begin = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > begin && !s[..i].ends_with('/') {
            out.push((neg, &s[begin..i]));
            neg = ch == '-';
            begin = i + 1;
        } else if (ch == '+' || ch == '-') && i == begin {
            neg = ch == '-';
            begin = i + 1;
        }
    }
    out.push((neg, &s[begin..]));
    out
}

/// `c*r^p`, `cr^p`, `r^p`, `c*r`, `r`, or a constant.
fn parse_term(t: &str) -> Option<(Scalar, usize)> {
    let Some(pos) = t.find('r') else {
        return crate::context::parse_rational(t).map(|c| (c, 0));
    };
    let coeff = t[..pos].trim_end_matches('*');
    let c = if coeff.is_empty() {
        Scalar::one()
    } else {
        crate::context::parse_rational(coeff)?
    };
    let rest = &t[pos + 1..];
    let p = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')?.parse().ok()?
    };
    Some((c, p))
}

fn rotation_entries<K: PolyKind>(
    b: &Bundle,
    curv: &CurvatureTensor<Poly<K>>,
    names: &[String],
    constants: &BTreeMap<usize, String>,
) -> Vec<Value>
where
    Poly<K>: PolyRing,
{
    let dim = b.dim();
    b.proper_rotations()
        .map(|rot| {
            let form = curv.at(rot.element);
            let mut comps = Vec::new();
            for k in 0..dim {
                for l in k + 1..dim {
                    let (num, den) = checks::frac_parts(&form.coeff2(k, l), names);
                    comps.push(
                        json!({ "k": k + 1, "l": l + 1, "numerator": num, "denominator": den }),
                    );
                }
            }
            let mut entry = json!({
                "element": rot.element,
                "order": rot.order,
                "matrix": b.group().element(rot.element).to_string(),
                "volume": rot.volume.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "components": comps,
                "zero": form.is_zero(),
                "constant": checks::form_is_constant(form, dim),
            });
            if let Some(c) = constants.get(&rot.element) {
                entry["c_rho"] = json!(c);
            }
            entry
        })
        .collect()
}

/// What a curvature report shows besides the tensor itself.
struct CurvatureView {
    label: String,
    names: Vec<String>,
    constants: BTreeMap<usize, String>,
}

fn curvature_report<K: PolyKind>(
    ctx: &Context,
    b: Arc<Bundle>,
    conn: Arc<Connection<Poly<K>>>,
    view: CurvatureView,
    mut specs: Vec<CaseSpec>,
    start: Instant,
) -> Result<SuiteReport, CliError>
where
    Poly<K>: PolyRing,
{
    let curv = Arc::new(
        b.curvature_tensor(&conn)
            .map_err(|e| CliError::Failure(e.to_string()))?,
    );
    let CurvatureView {
        label,
        names,
        constants,
    } = view;
    let rotations = rotation_entries(&b, &curv, &names, &constants);
    let dim = b.dim();
    let summary = json!({
        "system": b.root_system().name(),
        "connection": label,
        "variables": names,
        "zero": curv.vanishes(),
        "constant": curv.entries.iter().all(|e| checks::form_is_constant(&e.form, dim)),
        "proper_rotations": rotations,
    });
    {
        let (b, conn, curv) = (b.clone(), conn.clone(), curv.clone());
        specs.insert(
            0,
            CaseSpec::new("curvature/formula", move || {
                checks::curvature_formula(&b, &conn, &curv)
            }),
        );
    }
    Ok(finish(
        ctx.source.label(),
        "curvature",
        specs,
        summary,
        start,
    ))
}

pub fn curvature(ctx: &Context, spec: &ConnectionSpec) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let rs = ctx.system()?;
    let k = Arc::new(ctx.multiplicity(&rs)?);
    let b = Arc::new(ctx.bundle(&rs)?);
    let fail = |e: dunkl_core::bundle::BundleError| CliError::Failure(e.to_string());
    let names = k.variable_names(rs.dim(), "x");
    let seed = ctx.seed;
    match spec {
        ConnectionSpec::Standard => {
            let conn = Arc::new(b.make_standard_dunkl(&k).map_err(fail)?);
            let specs = vec![
                {
                    let (b, k) = (b.clone(), k.clone());
                    CaseSpec::new("curvature/zero", move || checks::zero_curvature(&b, &k))
                },
                rcomm_case(b.clone(), k.clone(), Profile::Standard, seed),
            ];
            curvature_report(
                ctx,
                b,
                conn,
                CurvatureView {
                    label: spec.label(),
                    names,
                    constants: BTreeMap::new(),
                },
                specs,
                start,
            )
        }
        ConnectionSpec::Poly(coeffs) => {
            let profile = OddProfile::new(vec![coeffs.clone(); k.orbit_count()])
                .map_err(|e| CliError::Usage(format!("--connection: {e}")))?;
            let conn = Arc::new(b.make_profile_dunkl(&k, &profile).map_err(fail)?);
            let specs = vec![
                {
                    let (b, conn) = (b.clone(), conn.clone());
                    CaseSpec::new("curvature/displacement", move || {
                        let rep = b.validate_displacement(&conn).map_err(text)?;
                        ensure(rep.is_valid() && rep.is_closed(), || format!("{rep:?}"))
                    })
                },
                rcomm_case(b.clone(), k.clone(), Profile::Odd(profile), seed),
            ];
            curvature_report(
                ctx,
                b,
                conn,
                CurvatureView {
                    label: spec.label(),
                    names,
                    constants: BTreeMap::new(),
                },
                specs,
                start,
            )
        }
        ConnectionSpec::Coth => {
            if !rs.is_integral() {
                return Err(CliError::Usage(format!(
                    "the coth connection needs integer roots; {} has none",
                    rs.name()
                )));
            }
            let conn = Arc::new(b.make_coth(&k).map_err(fail)?);
            let tnames = k.variable_names(rs.dim(), "t");
            let (constants, case): (BTreeMap<usize, String>, CaseSpec) =
                match b.constant_curvature(&conn) {
                    Ok(cs) => (
                        cs.into_iter()
                            .map(|(g, c)| (g, c.render_with(&tnames)))
                            .collect(),
                        CaseSpec::new("curvature/constant", || Ok(())),
                    ),
                    Err(e) => {
                        let w = e.to_string();
                        (
                            BTreeMap::new(),
                            CaseSpec::new("curvature/constant", move || Err(w.clone())),
                        )
                    }
                };
            curvature_report(
                ctx,
                b,
                conn,
                CurvatureView {
                    label: spec.label(),
                    names: tnames,
                    constants,
                },
                vec![case],
                start,
            )
        }
    }
}

fn rcomm_case(
    b: Arc<Bundle>,
    k: Arc<MultiplicityFunction>,
    profile: Profile,
    seed: u64,
) -> CaseSpec {
    CaseSpec::new("curvature/commutator-duality", move || {
        let rs = b.root_system();
        let conn = match &profile {
            Profile::Standard => b.make_standard_dunkl(&k),
            Profile::Odd(p) => b.make_profile_dunkl(&k, p),
        }
        .map_err(text)?;
        let curv = b.curvature_tensor(&conn).map_err(text)?;
        let pos = rs.positive_subsystem(None).map_err(text)?;
        let d = Dunkl::with_profile(rs, &k, &pos, &profile).map_err(text)?;
        let mut rng = Sampler::new(seed);
        for _ in 0..3 {
            let f: Polynomial = rng.polynomial(d.nvars(), &rs.kept_variables(), 3, 3);
            for kk in 0..b.dim() {
                for l in kk + 1..b.dim() {
                    let r = b.rcomm_residual(&d, &curv, &f, kk, l).map_err(text)?;
                    ensure(r.is_zero(), || {
                        format!("b = {f}, (k, l) = ({}, {}): residual {r}", kk + 1, l + 1)
                    })?;
                }
            }
        }
        Ok(())
    })
}

pub fn qcalc_delta(ctx: &Context, element: usize) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let rs = ctx.system()?;
    let g: Arc<CoxeterGroup> = Arc::new(ctx.group(&rs)?);
    if element >= g.order() {
        return Err(CliError::Usage(format!(
            "--element {element}: the group has {} elements",
            g.order()
        )));
    }
    let c = Calculus::reflections(&g);
    let tensor = c.delta_map(element);
    let root = |s: usize| {
        rs.root(g.root_of_reflection(s))
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    };
    let terms: Vec<Value> = tensor
        .iter()
        .map(|(&(s, t), coeff)| json!({ "s": s, "t": t, "s_root": root(s), "t_root": root(t), "coeff": coeff.to_string() }))
        .collect();
    let summary = json!({
        "system": rs.name(),
        "element": element,
        "matrix": g.element(element).to_string(),
        "element_order": g.element_order(element),
        "in_s": c.in_s(element),
        "terms": terms,
    });
    let symmetric_expected = element == 0 || c.in_s(element) || g.element_order(element) == 2;
    let mut specs = vec![{
        let g = g.clone();
        CaseSpec::new("qcalc/closed-form", move || {
            let c = Calculus::reflections(&g);
            ensure(c.delta_map(element) == c.delta_closed_form(element), || {
                format!("delta({element}) disagrees")
            })
        })
    }];
    if symmetric_expected {
        specs.push(CaseSpec::new("qcalc/symmetric", move || {
            ensure(dunkl_core::qcalc::is_symmetric(&tensor), || {
                format!("delta({element}) not symmetric")
            })
        }));
    }
    Ok(finish(
        rs.name().to_string(),
        "qcalc delta",
        specs,
        summary,
        start,
    ))
}
