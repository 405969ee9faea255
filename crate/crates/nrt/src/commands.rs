use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use nrt_core::codes::{
    box_duality_holds, character_sum_check, character_sum_sample, macwilliams_n1_check, BoxEnumerator,
};
use nrt_core::construct::{build_mds_code, build_optimum_distribution};
use nrt_core::geometry::{compositions, BoxRule, BoxViolation, Check};
use nrt_core::peano::{
    base_change_code, base_change_weights, base_p_code, build_composite, composite_base_p, dual_transport,
    peano_code, peano_distribution, peano_forward, peano_inverse, PeanoOrder,
};
use nrt_core::space::{rho_weight, CodeWord};
use nrt_core::spectra::{spectrum_bruteforce, spectrum_mds_formula, spectrum_net_formula, SpectrumVector};
use nrt_core::{Distribution, Field, LinearCode, Metric, Node, NodeSet, Space};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::format::{self, prime_power, Parsed};
use crate::report::{big, bigs, Report};
use crate::{Cli, Command, Format, Kind, Opts, Order};

/// Whether the checks of a command held.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// Runs a command; returns the rendered report and the outcome.
pub fn run(cli: &Cli) -> Result<(String, Outcome)> {
    let o = &cli.opts;
    let (report, outcome) = match cli.command {
        Command::Generate => generate(o)?,
        Command::Verify => verify(o)?,
        Command::Spectrum => spectrum(o)?,
        Command::Dual => dual(o)?,
        Command::Peano => peano(o)?,
        Command::Basechange => basechange(o)?,
        Command::Discrepancy => discrepancy(o)?,
        Command::FieldInfo => field_info(o, o.format == Format::Json)?,
    };
    Ok((report.render(o.format), outcome))
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| CliError::usage(format!("missing --{flag}")))
}

fn field_from(o: &Opts) -> Result<Arc<Field>> {
    let (p, e) = match (o.q, o.p) {
        (Some(q), p) => {
            let (qp, qe) = prime_power(q).ok_or_else(|| CliError::usage(format!("q = {q} is not a prime power")))?;
            if p.is_some_and(|p| p != qp) || o.e.is_some_and(|e| e != qe) {
                return Err(CliError::usage(format!("--q {q} disagrees with --p/--e")));
            }
            (qp, qe)
        }
        (None, Some(p)) => (p, o.e.unwrap_or(1)),
        (None, None) => return Err(CliError::usage("specify the field with --q or --p and --e")),
    };
    let field = match &o.modulus {
        Some(m) => {
            let coeffs: Vec<u32> = m
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| CliError::usage(format!("bad modulus coefficient {c:?}"))))
                .collect::<Result<_>>()?;
            if coeffs.len() != e as usize + 1 {
                return Err(CliError::usage(format!("--modulus needs {} coefficients", e + 1)));
            }
            Field::with_modulus(p, &coeffs)?
        }
        None => Field::new(p, e)?,
    };
    Ok(Arc::new(field))
}

fn parse_nodes(field: &Field, text: &str) -> Result<NodeSet> {
    let nodes = text
        .split(',')
        .map(|t| match t.trim() {
            "inf" => Ok(Node::Infinity),
            label => {
                let v: u64 = label.parse().map_err(|_| CliError::usage(format!("bad node {label:?}")))?;
                Ok(Node::Finite(field.elem_of(v)?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NodeSet::new(field, nodes)?)
}

fn node_list(nodes: &NodeSet) -> String {
    nodes.nodes().iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

enum Input {
    Points(Parsed<Distribution>),
    Code(Parsed<LinearCode>),
}

fn read_input(o: &Opts) -> Result<(PathBuf, Input)> {
    let path = o.input.clone().ok_or_else(|| CliError::usage("missing --in"))?;
    let text = read_text(&path)?;
    let name = path.display().to_string();
    let input = if format::is_code_path(&name) {
        Input::Code(format::read_code(&name, &text)?)
    } else {
        Input::Points(format::read_points(&name, &text)?)
    };
    Ok((path, input))
}

fn field_comment(field: &Field) -> String {
    format!("field {}", field.description())
}

fn shape_json(space: &Space) -> Value {
    json!({ "q": space.q(), "n": space.n(), "s": space.s(), "field": space.field().description() })
}

fn violation_json(v: &BoxViolation) -> Value {
    let expected = match v.expected {
        BoxRule::Exactly(c) => format!("exactly {c}"),
        BoxRule::AtMost(c) => format!("at most {c}"),
    };
    json!({ "a": v.region.a, "m": v.region.m, "count": v.count, "expected": expected })
}

fn violation_text(v: &BoxViolation) -> String {
    let expected = match v.expected {
        BoxRule::Exactly(c) => format!("exactly {c}"),
        BoxRule::AtMost(c) => format!("at most {c}"),
    };
    format!(
        "counterexample: box a = {:?}, m = {:?} holds {} points, expected {expected}",
        v.region.a, v.region.m, v.count
    )
}

/// Scans shapes in parallel and returns the first violation in shape order.
fn scan_parallel(d: &Distribution, shapes: &[Vec<usize>], rule: impl Fn(&[usize]) -> BoxRule + Sync) -> Result<Check> {
    let found: Vec<Option<BoxViolation>> = shapes
        .par_iter()
        .map(|a| d.scan_shape(a, rule(a)))
        .collect::<std::result::Result<_, _>>()?;
    Ok(Check { shapes: shapes.len() as u64, violation: found.into_iter().flatten().next() })
}

fn exact_log(q: u32, count: usize) -> Option<usize> {
    let mut k = 0;
    let mut v = 1usize;
    while v < count {
        v = v.checked_mul(q as usize)?;
        k += 1;
    }
    (v == count).then_some(k)
}

fn generate(o: &Opts) -> Result<(Report, Outcome)> {
    let field = field_from(o)?;
    let n = need(o.n, "n")?;
    let s = need(o.s, "s")?;
    if n == 0 || s == 0 {
        return Err(CliError::usage("n and s must be positive"));
    }
    if let Some(g) = o.g {
        return generate_composite(o, field, g, n, s);
    }
    let k = need(o.k, "k")?;
    if k == 0 || k > n * s {
        return Err(CliError::usage(format!("k = {k} outside 1..={}", n * s)));
    }
    if (field.q() as usize) + 1 < n {
        return Err(nrt_core::Error::ExistenceCondition { q: field.q(), n }.into());
    }
    let nodes = match &o.nodes {
        Some(t) => parse_nodes(&field, t)?,
        None => NodeSet::default_for(&field, n)?,
    };
    let space = Space::new(field.clone(), n, s)?;
    let code = build_mds_code(&space, k, Some(&nodes))?;
    let rho = code.weight_bounded(Metric::Rho, o.bound)?;
    let mds = rho == n * s - k + 1;
    let prefix = o.out.clone().unwrap_or_else(|| PathBuf::from(format!("nrt-q{}-n{n}-s{s}-k{k}", field.q())));
    let comments = vec![
        format!("nrt generate q={} n={n} s={s} k={k}", field.q()),
        field_comment(&field),
        format!("nodes {}", node_list(&nodes)),
    ];
    let code_path = prefix.with_extension("code");
    write_text(&code_path, &format::write_code(&code, &comments))?;
    let mut report = Report::new("generate");
    report
        .set("space", shape_json(&space))
        .set("k", k)
        .set("nodes", node_list(&nodes))
        .set("rho", rho)
        .set("mds", mds)
        .set("code_file", code_path.display().to_string());
    write_points_file(o, &mut report, &prefix, &comments, || build_optimum_distribution(&space, k, Some(&nodes), o.bound))?;
    report.line(if mds {
        format!("MDS verified: rho = {rho} = ns - k + 1")
    } else {
        format!("MDS check failed: rho = {rho}, expected {}", n * s - k + 1)
    });
    Ok((report, Outcome::from(mds)))
}

fn write_points_file(
    o: &Opts,
    report: &mut Report,
    prefix: &Path,
    comments: &[String],
    build: impl FnOnce() -> nrt_core::Result<Distribution>,
) -> Result<()> {
    match build() {
        Ok(d) => {
            let path = prefix.with_extension("points");
            write_text(&path, &format::write_points(&d, comments))?;
            report.set("points", d.len()).set("points_file", path.display().to_string());
        }
        Err(nrt_core::Error::TooLarge(what)) => {
            report.set("points_file", Value::Null);
            report.line(format!("point file skipped: {what} exceed --bound {}", o.bound));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn peano_order(o: &Opts) -> PeanoOrder {
    match o.order {
        Order::Interleave => PeanoOrder::Interleave,
        Order::Concatenate => PeanoOrder::Concatenate,
    }
}

fn generate_composite(o: &Opts, field: Arc<Field>, g: usize, n: usize, s: usize) -> Result<(Report, Outcome)> {
    let t = need(o.t, "t")?;
    if o.k.is_some_and(|k| k != s * t) {
        return Err(CliError::usage(format!("composite codes have k = st = {}", s * t)));
    }
    let nodes = o.nodes.as_deref().map(|t| parse_nodes(&field, t)).transpose()?;
    let order = peano_order(o);
    let comp = build_composite(&field, g, n, s, t, nodes.as_ref(), order)?;
    let nodes = match nodes {
        Some(ns) => ns,
        None => NodeSet::default_for(&field, g * n)?,
    };
    let prefix = o
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("nrt-q{}-g{g}-n{n}-s{s}-t{t}", field.q())));
    let comments = vec![
        format!("nrt generate q={} g={g} n={n} s={s} t={t} order={:?}", field.q(), o.order).to_lowercase(),
        field_comment(&field),
        format!("nodes {}", node_list(&nodes)),
    ];
    let code_path = prefix.with_extension("code");
    write_text(&code_path, &format::write_code(&comp.code, &comments))?;
    let r = &comp.report;
    let mut report = Report::new("generate");
    report
        .set("space", shape_json(comp.code.space()))
        .set("k", comp.code.k())
        .set("nodes", node_list(&nodes))
        .set("composite", composite_json(r))
        .set("code_file", code_path.display().to_string());
    let inner_space = comp.inner.space().clone();
    write_points_file(o, &mut report, &prefix, &comments, || {
        let d = build_optimum_distribution(&inner_space, g * s * t, Some(&nodes), o.bound)?;
        peano_distribution(&d, g, order)
    })?;
    report.line(if r.holds() {
        format!("composite verified: rho = {} = (ns - k)g + 1", r.rho)
    } else {
        "composite weight relations failed".to_string()
    });
    Ok((report, Outcome::from(r.holds())))
}

fn composite_json(r: &nrt_core::peano::CompositeReport) -> Value {
    json!({
        "g": r.g, "n": r.n, "s": r.s, "t": r.t,
        "rho": r.rho, "rho_expected": r.rho_expected,
        "kappa": r.kappa, "kappa_bound": r.kappa_bound,
        "dual_rho": r.dual_rho, "dual_rho_expected": r.dual_rho_expected,
        "dual_kappa": r.dual_kappa, "dual_kappa_bound": r.dual_kappa_bound,
        "holds": r.holds(),
    })
}

fn verify(o: &Opts) -> Result<(Report, Outcome)> {
    let (path, input) = read_input(o)?;
    let mut report = Report::new("verify");
    report.set("input", path.display().to_string());
    match input {
        Input::Points(parsed) => {
            let d = parsed.value;
            let space = d.space().clone();
            report.set("space", shape_json(&space)).set("points", d.len());
            let q = space.q();
            let (n, s) = (space.n(), space.s());
            let kind = o.kind.unwrap_or(Kind::Optimum);
            let skipped = Check { shapes: 0, violation: None };
            let count_ok;
            let check = match kind {
                Kind::Optimum | Kind::Counts => {
                    let k = match o.k {
                        Some(k) => k,
                        None => exact_log(q, d.len())
                            .ok_or_else(|| CliError::usage(format!("{} points is not a power of q = {q}; pass --k", d.len())))?,
                    };
                    report.set("k", k);
                    count_ok = k <= n * s && exact_log(q, d.len()) == Some(k);
                    if !count_ok {
                        skipped
                    } else if kind == Kind::Optimum {
                        scan_parallel(&d, &compositions(n, k, s), |_| BoxRule::Exactly(1))?
                    } else {
                        d.check_counts(k)?
                    }
                }
                Kind::Net => {
                    let depth = o.k.unwrap_or(s);
                    let delta = o.delta.unwrap_or(0);
                    if delta > depth {
                        return Err(CliError::usage(format!("delta = {delta} exceeds {depth}")));
                    }
                    report.set("delta", delta).set("depth", depth);
                    count_ok = exact_log(q, d.len()) == Some(depth);
                    if !count_ok {
                        skipped
                    } else {
                        let per_box = (q as u64).pow(delta as u32);
                        let shapes = compositions(n, depth - delta, depth - delta);
                        scan_parallel(&d, &shapes, |_| BoxRule::Exactly(per_box))?
                    }
                }
                Kind::Mds | Kind::Characters => {
                    return Err(CliError::usage("--kind mds and characters need a .code file"));
                }
            };
            report.set("kind", format!("{kind:?}").to_lowercase()).set("shapes", check.shapes);
            if !count_ok {
                report.line(format!("{} points do not match the requested parameters", d.len()));
            }
            let ok = check.passed() && count_ok;
            match &check.violation {
                Some(v) => {
                    report.set("counterexample", violation_json(v));
                    report.line(violation_text(v));
                }
                None => {
                    report.set("counterexample", Value::Null);
                }
            }
            report.set("pass", ok);
            report.line(if ok { "verdict: pass" } else { "verdict: fail" });
            Ok((report, Outcome::from(ok)))
        }
        Input::Code(parsed) => {
            let code = parsed.value;
            let space = code.space().clone();
            report.set("space", shape_json(&space)).set("k", code.k());
            let ok = match o.kind.unwrap_or(Kind::Mds) {
                Kind::Mds => {
                    let expected = space.dim() - code.k() + 1;
                    let rho = code.rho_or_infinity()?;
                    report.set("kind", "mds").set("rho", rho).set("rho_expected", expected);
                    if rho != expected {
                        if let Some(w) = min_rho_word(&code, o.bound)? {
                            report.line(format!("counterexample: word {:?} has rho = {}", labels(&w), rho_weight(&w)));
                            report.set("counterexample", json!(labels(&w)));
                        }
                    }
                    rho == expected
                }
                Kind::Characters => {
                    let r = match o.samples {
                        Some(samples) => {
                            let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
                            character_sum_sample(&code, &mut rng, samples, o.bound)?
                        }
                        None => character_sum_check(&code, o.bound)?,
                    };
                    report
                        .set("kind", "characters")
                        .set("evaluated", r.evaluated)
                        .set("full", r.full)
                        .set("vanishing", r.vanishing)
                        .set("failures", r.failures)
                        .set("box_duality", r.box_duality);
                    r.passed()
                }
                _ => return Err(CliError::usage("point-set checks need a point file")),
            };
            report.set("pass", ok);
            report.line(if ok { "verdict: pass" } else { "verdict: fail" });
            Ok((report, Outcome::from(ok)))
        }
    }
}

fn labels(w: &CodeWord) -> Vec<Vec<u32>> {
    w.rows().map(|r| r.iter().map(|e| e.0).collect()).collect()
}

fn min_rho_word(code: &LinearCode, bound: u64) -> Result<Option<CodeWord>> {
    match code.codewords(bound) {
        Ok(words) => Ok(words.into_iter().filter(|w| !w.is_zero()).min_by_key(rho_weight)),
        Err(nrt_core::Error::TooLarge(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn spectrum_json(spec: &SpectrumVector) -> Value {
    bigs(&spec.w)
}

fn spectrum(o: &Opts) -> Result<(Report, Outcome)> {
    let mut report = Report::new("spectrum");
    if o.input.is_none() {
        let field = field_from(o)?;
        let n = need(o.n, "n")?;
        let s = need(o.s, "s")?;
        let net = o.kind == Some(Kind::Net);
        let k = if net { s } else { need(o.k, "k")? };
        let spec = if net {
            spectrum_net_formula(n, s, field.q())?
        } else {
            spectrum_mds_formula(n, s, k, field.q())?
        };
        report
            .set("q", field.q())
            .set("n", n)
            .set("s", s)
            .set("k", k)
            .set("source", spec.source.as_str())
            .set("spectrum", spectrum_json(&spec))
            .set("total", big(&spec.total()))
            .set("realizable", nrt_core::spectra::is_realizable(&spec));
        return Ok((report, Outcome::Pass));
    }
    let (path, input) = read_input(o)?;
    report.set("input", path.display().to_string());
    let (space, words, anchor, k, code) = match input {
        Input::Code(p) => {
            let code = p.value;
            let words = code.codewords(o.bound)?;
            let anchor = code.space().zero();
            (code.space().clone(), words, anchor, Some(code.k()), Some(code))
        }
        Input::Points(p) => {
            let d = p.value;
            let anchor = d.points().first().cloned().ok_or_else(|| CliError::usage("empty point set"))?;
            let k = exact_log(d.q(), d.len());
            (d.space().clone(), d.points().to_vec(), anchor, k, None)
        }
    };
    let brute = spectrum_bruteforce(&space, &words, &anchor)?;
    report
        .set("space", shape_json(&space))
        .set("bruteforce", spectrum_json(&brute))
        .set("min_weight", brute.min_weight().map_or(Value::Null, |w| json!(w)));
    let mut ok = true;
    let dim = space.dim();
    match k {
        Some(k) if k >= 1 && brute.min_weight() == Some(dim - k + 1) => {
            let formula = spectrum_mds_formula(space.n(), space.s(), k, space.q())?;
            let equal = brute.same_values(&formula);
            ok &= equal;
            report
                .set("formula", spectrum_json(&formula))
                .set("formula_source", formula.source.as_str())
                .set("equal", equal);
        }
        _ => {
            report.set("warning", "input is not MDS; formula spectrum omitted");
        }
    }
    if let Some(code) = &code {
        if space.n() == 1 {
            let holds = macwilliams_n1_check(code, &code.dual(), o.bound)?;
            ok &= holds;
            report.set("macwilliams", holds);
        } else {
            report.set("macwilliams", "identity unavailable for n>1");
        }
    }
    Ok((report, Outcome::from(ok)))
}

fn box_json(e: &BoxEnumerator) -> Value {
    let map: serde_json::Map<String, Value> = e
        .terms()
        .map(|(a, c)| {
            let key = a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            (key, json!(c.to_string()))
        })
        .collect();
    Value::Object(map)
}

fn weight_json(code: &LinearCode, bound: u64) -> Result<Value> {
    match code.weight_enumerator(bound) {
        Ok(w) => Ok(Value::Array(w.iter().map(|c| json!(c.to_string())).collect())),
        Err(nrt_core::Error::TooLarge(_)) => Ok(Value::Null),
        Err(e) => Err(e.into()),
    }
}

fn dual(o: &Opts) -> Result<(Report, Outcome)> {
    let (path, input) = read_input(o)?;
    let Input::Code(parsed) = input else {
        return Err(CliError::usage("dual needs a .code file"));
    };
    let code = parsed.value;
    let space = code.space().clone();
    let dual = code.dual();
    let dim = space.dim();
    let mut report = Report::new("dual");
    let rho = code.rho_or_infinity()?;
    let dual_rho = dual.rho_or_infinity()?;
    let duality = box_duality_holds(&code, &dual)?;
    let mut ok = duality && dual.dual() == code;
    report
        .set("input", path.display().to_string())
        .set("space", shape_json(&space))
        .set("k", code.k())
        .set("dual_k", dual.k())
        .set("rho", rho)
        .set("dual_rho", dual_rho)
        .set("mds", rho == dim - code.k() + 1)
        .set("dual_mds", dual_rho == dim - dual.k() + 1)
        .set("box_enumerator", box_json(&code.box_enumerator()?))
        .set("dual_box_enumerator", box_json(&dual.box_enumerator()?))
        .set("box_duality", duality)
        .set("weight_enumerator", weight_json(&code, o.bound)?)
        .set("dual_weight_enumerator", weight_json(&dual, o.bound)?);
    if space.n() == 1 {
        let holds = macwilliams_n1_check(&code, &dual, o.bound)?;
        ok &= holds;
        report.set("macwilliams", holds);
    } else {
        report.set("macwilliams", "identity unavailable for n>1");
    }
    if let Some(samples) = o.samples {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
        let r = character_sum_sample(&code, &mut rng, samples, o.bound)?;
        ok &= r.passed();
        report.set(
            "characters",
            json!({ "seed": o.seed, "evaluated": r.evaluated, "full": r.full, "vanishing": r.vanishing, "failures": r.failures }),
        );
    }
    if let Some(out) = &o.out {
        let comments = vec![format!("dual of {}", path.display()), field_comment(space.field())];
        write_text(out, &format::write_code(&dual, &comments))?;
        report.set("output", out.display().to_string());
    }
    Ok((report, Outcome::from(ok)))
}

fn weights_or_null(code: &LinearCode, metric: Metric, bound: u64) -> Result<Value> {
    if code.k() == 0 {
        return Ok(Value::Null);
    }
    Ok(json!(code.weight_bounded(metric, bound)?))
}

fn peano(o: &Opts) -> Result<(Report, Outcome)> {
    let order = peano_order(o);
    let mut report = Report::new("peano");
    report.set("order", format!("{:?}", o.order).to_lowercase());
    if o.input.is_none() {
        let field = field_from(o)?;
        let g = need(o.g, "g")?;
        let n = need(o.n, "n")?;
        let s = need(o.s, "s")?;
        let t = need(o.t, "t")?;
        let nodes = o.nodes.as_deref().map(|t| parse_nodes(&field, t)).transpose()?;
        let comp = build_composite(&field, g, n, s, t, nodes.as_ref(), order)?;
        let mut ok = comp.report.holds();
        report.set("field", field.description()).set("composite", composite_json(&comp.report));
        if field.e() > 1 {
            let b = composite_base_p(&comp)?;
            ok &= b.holds();
            report.set(
                "base_p",
                json!({
                    "rho": b.image.rho_p, "rho_bound": b.rho_bound,
                    "kappa": b.image.kappa_p, "kappa_bound": b.kappa_bound,
                    "dual_rho": b.dual.rho_p, "dual_rho_bound": b.dual_rho_bound,
                    "dual_kappa": b.dual.kappa_p, "dual_kappa_bound": b.dual_kappa_bound,
                    "dual_kappa_teg_bound": b.dual_kappa_printed_bound,
                    "dual_kappa_teg_bound_holds": b.printed_dual_kappa_holds(),
                    "holds": b.holds(),
                }),
            );
        }
        return Ok((report, Outcome::from(ok)));
    }
    let g = need(o.g, "g")?;
    let (path, input) = read_input(o)?;
    report.set("input", path.display().to_string()).set("g", g).set("inverse", o.inverse);
    let apply = |w: &CodeWord| {
        if o.inverse {
            peano_inverse(w, g, order)
        } else {
            peano_forward(w, g, order)
        }
    };
    let target_space = |space: &Space| -> Result<Space> {
        if o.inverse {
            if space.s() % g != 0 {
                return Err(CliError::usage(format!("s = {} is not a multiple of g = {g}", space.s())));
            }
            Ok(Space::new(space.field().clone(), space.n() * g, space.s() / g)?)
        } else {
            Ok(nrt_core::peano::peano_space(space, g)?)
        }
    };
    let mut ok = true;
    let text = match input {
        Input::Code(p) => {
            let code = p.value;
            let target = target_space(code.space())?;
            let image = if o.inverse {
                let words = code.basis_words().iter().map(apply).collect::<nrt_core::Result<Vec<_>>>()?;
                LinearCode::from_words(target.clone(), &words)?
            } else {
                peano_code(&code, g, order)?
            };
            report
                .set("space", shape_json(&target))
                .set("k", image.k())
                .set("rho_before", weights_or_null(&code, Metric::Rho, o.bound)?)
                .set("rho_after", weights_or_null(&image, Metric::Rho, o.bound)?)
                .set("kappa_before", weights_or_null(&code, Metric::Kappa, o.bound)?)
                .set("kappa_after", weights_or_null(&image, Metric::Kappa, o.bound)?);
            if !o.inverse {
                let holds = dual_transport(&code, g, order)?.holds();
                ok &= holds;
                report.set("dual_transport", holds);
            }
            let comments = vec![format!("peano g={g} of {}", path.display()), field_comment(target.field())];
            format::write_code(&image, &comments)
        }
        Input::Points(p) => {
            let d = p.value;
            let target = target_space(d.space())?;
            let points = d.points().iter().map(apply).collect::<nrt_core::Result<Vec<_>>>()?;
            let image = Distribution::new(target.clone(), points)?;
            let kappa_ok = d
                .points()
                .iter()
                .zip(image.points())
                .all(|(a, b)| nrt_core::space::hamming_weight(a) == nrt_core::space::hamming_weight(b));
            ok &= kappa_ok;
            report.set("space", shape_json(&target)).set("points", image.len()).set("kappa_preserved", kappa_ok);
            let comments = vec![format!("peano g={g} of {}", path.display()), field_comment(target.field())];
            format::write_points(&image, &comments)
        }
    };
    if let Some(out) = &o.out {
        write_text(out, &text)?;
        report.set("output", out.display().to_string());
    }
    Ok((report, Outcome::from(ok)))
}

fn basechange(o: &Opts) -> Result<(Report, Outcome)> {
    let (path, input) = read_input(o)?;
    let mut report = Report::new("basechange");
    report.set("input", path.display().to_string());
    let mut ok = true;
    let text = match input {
        Input::Code(p) => {
            let code = p.value;
            let space = code.space();
            let (n, s, k) = (space.n(), space.s(), code.k());
            if k == 0 {
                return Err(CliError::usage("the zero code has no weights"));
            }
            let w = base_change_code(&code)?;
            let e = w.e;
            ok &= w.holds();
            report
                .set("space", shape_json(space))
                .set("e", e)
                .set("rho_q", w.rho_q)
                .set("rho_p", w.rho_p)
                .set("kappa_q", w.kappa_q)
                .set("kappa_p", w.kappa_p)
                .set("rho_p_range", json!([w.rho_lower(), e * w.rho_q]))
                .set("kappa_p_range", json!([w.kappa_q, e * w.kappa_q]))
                .set("bounds_hold", w.holds());
            if w.rho_q == n * s - k + 1 {
                let floor = ((n * s - k) * e + 1).saturating_sub((e - 1) * (n - 1));
                ok &= w.rho_p >= floor;
                report.set("mds_rho_p_bound", floor);
            }
            let pc = base_p_code(&code)?;
            let comments = vec![format!("base {} of {}", space.field().p(), path.display())];
            format::write_code(&pc, &comments)
        }
        Input::Points(p) => {
            let d = p.value;
            let field = d.space().field().clone();
            let points_ok = d.points().iter().all(|w| base_change_weights(&field, w).holds());
            ok &= points_ok;
            report.set("space", shape_json(d.space())).set("e", field.e()).set("point_bounds_hold", points_ok);
            if let Some(delta) = o.delta {
                let (params, check) = d.base_reduce_net(delta)?;
                ok &= check.passed();
                report
                    .set("net_delta", params.delta)
                    .set("net_depth", params.depth)
                    .set("net_holds", check.passed());
                if let Some(v) = &check.violation {
                    report.line(violation_text(v));
                }
            }
            let reduced = d.to_base_p()?;
            let comments = vec![format!("base {} of {}", field.p(), path.display())];
            format::write_points(&reduced, &comments)
        }
    };
    if let Some(out) = &o.out {
        write_text(out, &text)?;
        report.set("output", out.display().to_string());
    }
    Ok((report, Outcome::from(ok)))
}

fn ratio_f64(r: &num_rational::Ratio<BigInt>) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn discrepancy(o: &Opts) -> Result<(Report, Outcome)> {
    let (path, input) = read_input(o)?;
    let Input::Points(parsed) = input else {
        return Err(CliError::usage("discrepancy needs a point file"));
    };
    let d = parsed.value;
    if d.is_empty() {
        return Err(CliError::usage("empty point set"));
    }
    let star = d.star_discrepancy_bounded(o.bound as u128 * 4)?;
    let sup = d.local_discrepancy_sup()?;
    let mut report = Report::new("discrepancy");
    report
        .set("input", path.display().to_string())
        .set("space", shape_json(d.space()))
        .set("points", d.len())
        .set("star_discrepancy", star.to_string())
        .set("star_discrepancy_approx", ratio_f64(&star))
        .set("local_discrepancy_sup", sup.to_string());
    Ok((report, Outcome::Pass))
}

fn field_info(o: &Opts, table_as_json: bool) -> Result<(Report, Outcome)> {
    let field = field_from(o)?;
    let mut report = Report::new("field-info");
    report
        .set("description", field.description())
        .set("p", field.p())
        .set("e", field.e())
        .set("q", field.q())
        .set("modulus", json!(field.modulus()))
        .set("modulus_polynomial", polynomial_text(field.modulus()));
    if field.q() > 256 {
        return Ok((report, Outcome::Pass));
    }
    if table_as_json {
        let rows: Vec<Value> = field
            .elements()
            .map(|a| {
                json!({
                    "label": a.0,
                    "coords": field.coords(a),
                    "trace": field.trace(a).0,
                    "inverse": field.inv(a).ok().map(|i| i.0),
                })
            })
            .collect();
        report.set("elements", Value::Array(rows));
    } else {
        for a in field.elements() {
            let inv = field.inv(a).map(|i| i.0.to_string()).unwrap_or_else(|_| "-".into());
            report.line(format!("{:>4}  coords {:?}  trace {}  inverse {inv}", a.0, field.coords(a), field.trace(a).0));
        }
    }
    Ok((report, Outcome::Pass))
}

fn polynomial_text(modulus: &[u32]) -> String {
    let terms: Vec<String> = modulus
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}
