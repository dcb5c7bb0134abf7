//! The five subcommands, each rendering to text, JSON or CSV.

use std::fmt::Write as _;

use origami_core::arith::minimal_polynomial;
use origami_core::construction::generate;
use origami_core::preview::preview_generate;
use origami_core::ring::{
    classify, delta_set, ring_check_with, Certificate, Classification, CriterionResult, MembershipVerdict,
    MrContext, Outcome, PValueTable, RingReport, RingVerdict, Witness,
};
use origami_core::{Angle, CyclotomicReal, SlopeSet};
use serde_json::{json, Value as Json};

use crate::config::{Command, Format, JobConfig};
use crate::decimal;
use crate::expr::parse_value;
use crate::record::{
    FloatRecord, FrameRecord, GenerateDoc, LevelSummary, PointRecord, PreviewDoc, ValueRecord, SCHEMA_VERSION,
};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Decided,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Decided => 0,
            Status::Unknown => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Output {
    pub body: String,
    pub status: Status,
}

impl Output {
    fn decided(body: String) -> Self {
        Output { body, status: Status::Decided }
    }
}

const RADIANS_HINT: &str =
    "exact mode takes fractions of π such as 1/3 (meaning π/3); use `generate --float-preview` for slopes in radians";

/// Parses `k/n` tokens into a validated slope set.
pub fn exact_slopes(tokens: &[String]) -> Result<SlopeSet, CliError> {
    let mut angles = Vec::with_capacity(tokens.len());
    for t in tokens {
        match t.parse::<Angle>() {
            Ok(a) => angles.push(a),
            Err(_) if !t.contains('/') && t.parse::<f64>().is_ok() => {
                return Err(CliError::Slopes(format!("slope `{}` is not a fraction of π; {}", t, RADIANS_HINT)))
            }
            Err(e) => return Err(CliError::Slopes(e.to_string())),
        }
    }
    SlopeSet::new(angles).map_err(|e| CliError::Slopes(e.to_string()))
}

/// Float-preview slopes: `k/n` is a fraction of π, anything else is radians.
pub fn preview_slopes(tokens: &[String]) -> Result<Vec<f64>, CliError> {
    tokens
        .iter()
        .map(|t| {
            if t.contains('/') {
                t.parse::<Angle>().map(Angle::radians).map_err(|e| CliError::Slopes(e.to_string()))
            } else {
                t.parse::<f64>()
                    .map_err(|_| CliError::Slopes(format!("cannot parse slope `{}` as radians", t)))
            }
        })
        .collect()
}

pub fn execute(job: &JobConfig) -> Result<Output, CliError> {
    if job.command == Command::Generate && job.float_preview {
        return cmd_preview(job);
    }
    let u = exact_slopes(&job.slopes)?;
    match &job.command {
        Command::Classify => cmd_classify(job, &u),
        Command::Ring => cmd_ring(job, &u),
        Command::Generate => cmd_generate(job, &u),
        Command::Member(expr) => cmd_member(job, &u, expr),
        Command::PValues => cmd_pvalues(job, &u),
    }
}

fn no_csv(job: &JobConfig, what: &str) -> Result<(), CliError> {
    if job.format == Format::Csv {
        return Err(CliError::Usage(format!(
            "csv output is available for generate and pvalues, not {}",
            what
        )));
    }
    Ok(())
}

fn slope_strings(u: &SlopeSet) -> Vec<String> {
    u.slopes().iter().map(|a| a.to_string()).collect()
}

fn frame_record(alpha: Angle, beta: Angle) -> FrameRecord {
    FrameRecord { alpha: alpha.to_string(), beta: beta.to_string() }
}

fn header(u: &SlopeSet) -> String {
    format!("U = {{{}}} with α = {:?}, β = {:?}\n", describe(u.slopes()), u.alpha(), u.beta())
}

fn describe(angles: &[Angle]) -> String {
    angles.iter().map(|a| format!("{:?}", a)).collect::<Vec<_>>().join(", ")
}

fn pretty(x: &CyclotomicReal, digits: usize) -> String {
    match x.to_rational() {
        Some(q) => q.to_string(),
        None => format!("{} ≈ {}", x, decimal::real(x, digits)),
    }
}

fn json_string(doc: &impl serde::Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

fn cmd_classify(job: &JobConfig, u: &SlopeSet) -> Result<Output, CliError> {
    no_csv(job, "classify")?;
    let c = classify(u);
    let body = match job.format {
        Format::Json => {
            let z = match &c {
                Classification::Discrete { z } => {
                    let cart = z.to_cartesian();
                    json!({
                        "re": ValueRecord::new(&cart.x, job.precision),
                        "im": ValueRecord::new(&cart.y, job.precision),
                    })
                }
                Classification::Dense => Json::Null,
            };
            json_string(&json!({
                "schema": SCHEMA_VERSION,
                "command": "classify",
                "slopes": slope_strings(u),
                "frame": frame_record(u.alpha(), u.beta()),
                "classification": if c.is_discrete() { "discrete" } else { "dense" },
                "z": z,
            }))?
        }
        _ => {
            let mut s = header(u);
            match &c {
                Classification::Discrete { z } => {
                    let cart = z.to_cartesian();
                    writeln!(
                        s,
                        "discrete: M = Z + Z·z with z = {} + {}i",
                        decimal::real(&cart.x, job.precision),
                        decimal::real(&cart.y, job.precision)
                    )
                    .unwrap();
                }
                Classification::Dense => s.push_str("dense in the plane\n"),
            }
            s
        }
    };
    Ok(Output::decided(body))
}

fn exponent_name(j: usize) -> String {
    if j < 26 {
        ((b'a' + j as u8) as char).to_string()
    } else {
        format!("e{}", j + 1)
    }
}

fn witness_json(w: &Witness, digits: usize) -> Json {
    let names = w.variable_names();
    json!({
        "generators": w.generators.iter().zip(&names).map(|((g, v), n)| json!({
            "name": n,
            "slope": g.to_string(),
            "value": ValueRecord::new(v, digits),
        })).collect::<Vec<_>>(),
        "denominators": w.denominators.iter().zip(&w.exponents).enumerate().map(|(j, (d, e))| json!({
            "minuend": d.minuend.to_string(),
            "subtrahend": d.subtrahend.to_string(),
            "value": ValueRecord::new(&d.value, digits),
            "exponent_name": exponent_name(j),
            "exponent": e,
        })).collect::<Vec<_>>(),
        "exponents": w.exponents,
        "numerator": w.numerator.display_with(&names),
    })
}

fn membership_json(v: &MembershipVerdict, digits: usize) -> Json {
    match v {
        MembershipVerdict::ProvenIn(w) => json!({ "verdict": v.label(), "witness": witness_json(w, digits) }),
        MembershipVerdict::ProvenNotIn(Certificate::NotInteger) => {
            json!({ "verdict": v.label(), "certificate": { "kind": "not-integer" } })
        }
        MembershipVerdict::ProvenNotIn(Certificate::OutsideField { field_degree }) => json!({
            "verdict": v.label(),
            "certificate": { "kind": "outside-field", "field_degree": field_degree },
        }),
        MembershipVerdict::Unknown(b) => json!({
            "verdict": v.label(),
            "bounds": { "max_den_exp": b.max_den_exp, "max_num_deg": b.max_num_deg },
        }),
    }
}

fn membership_text(s: &mut String, v: &MembershipVerdict, digits: usize, indent: &str) {
    match v {
        MembershipVerdict::ProvenIn(w) => {
            let names = w.variable_names();
            for ((g, val), n) in w.generators.iter().zip(&names) {
                writeln!(s, "{}{} = p({:?}) ≈ {}", indent, n, g, decimal::real(val, digits)).unwrap();
            }
            let mut lhs = String::from("x");
            let mut assignments = Vec::new();
            for (j, (d, e)) in w.denominators.iter().zip(&w.exponents).enumerate() {
                let name = exponent_name(j);
                writeln!(
                    s,
                    "{}d{} = p({:?}) - p({:?}) ≈ {}",
                    indent,
                    j + 1,
                    d.minuend,
                    d.subtrahend,
                    decimal::real(&d.value, digits)
                )
                .unwrap();
                write!(lhs, " · d{}^{}", j + 1, name).unwrap();
                assignments.push(format!("{}={}", name, e));
            }
            writeln!(s, "{}{} = f({}) with {}", indent, lhs, names.join(", "), assignments.join(", ")).unwrap();
            writeln!(s, "{}f = {}", indent, w.numerator.display_with(&names)).unwrap();
        }
        MembershipVerdict::ProvenNotIn(Certificate::NotInteger) => {
            writeln!(s, "{}certificate: M_R = Z and the value is not an integer", indent).unwrap();
        }
        MembershipVerdict::ProvenNotIn(Certificate::OutsideField { field_degree }) => {
            writeln!(s, "{}certificate: outside Q(Δ), a field of degree {}", indent, field_degree).unwrap();
        }
        MembershipVerdict::Unknown(b) => {
            writeln!(
                s,
                "{}no witness with denominator exponents ≤ {} and numerator degree ≤ {}",
                indent, b.max_den_exp, b.max_num_deg
            )
            .unwrap();
        }
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::Fails => "fails",
        Outcome::Undecided => "undecided",
    }
}

fn criterion_json(c: &CriterionResult, digits: usize) -> Json {
    json!({
        "name": c.criterion.name(),
        "outcome": outcome_name(c.outcome()),
        "values": c.values.iter().map(|(label, x, v)| json!({
            "label": label,
            "value": ValueRecord::new(x, digits),
            "membership": membership_json(v, digits),
        })).collect::<Vec<_>>(),
    })
}

fn ring_text(r: &RingReport, digits: usize) -> String {
    let mut s = header(&r.slopes);
    if r.used_alternate_frame() {
        writeln!(s, "decided in the frame α = {:?}, β = {:?}", r.frame.0, r.frame.1).unwrap();
    }
    writeln!(s, "sin²α/sin²(α−β) = {}", pretty(&r.values.alpha_ratio, digits)).unwrap();
    writeln!(s, "sin²β/sin²(α−β) = {}", pretty(&r.values.beta_ratio, digits)).unwrap();
    writeln!(s, "2cosα·sinβ/sin(α−β) = {}", pretty(&r.values.trace_term, digits)).unwrap();
    for c in &r.criteria {
        writeln!(s, "{}: {}", c.criterion, outcome_name(c.outcome())).unwrap();
        for (label, x, v) in &c.values {
            writeln!(s, "  {} = {}: {}", label, pretty(x, digits), v.label()).unwrap();
        }
    }
    writeln!(s, "verdict: {}", r.verdict).unwrap();
    s
}

fn cmd_ring(job: &JobConfig, u: &SlopeSet) -> Result<Output, CliError> {
    no_csv(job, "ring")?;
    let ctx = MrContext::new(u);
    let r = ring_check_with(u, &ctx, job.bounds);
    let d = job.precision;
    let body = match job.format {
        Format::Json => json_string(&json!({
            "schema": SCHEMA_VERSION,
            "command": "ring",
            "slopes": slope_strings(u),
            "frame": frame_record(r.frame.0, r.frame.1),
            "alternate_frame": r.used_alternate_frame(),
            "values": {
                "alpha_ratio": ValueRecord::new(&r.values.alpha_ratio, d),
                "beta_ratio": ValueRecord::new(&r.values.beta_ratio, d),
                "trace_term": ValueRecord::new(&r.values.trace_term, d),
            },
            "criteria": r.criteria.iter().map(|c| criterion_json(c, d)).collect::<Vec<_>>(),
            "verdict": r.verdict.to_string(),
            "coherent": r.coherent(),
        }))?,
        _ => ring_text(&r, d),
    };
    let status = if r.verdict == RingVerdict::Unknown { Status::Unknown } else { Status::Decided };
    Ok(Output { body, status })
}

fn cmd_member(job: &JobConfig, u: &SlopeSet, expr: &str) -> Result<Output, CliError> {
    no_csv(job, "member")?;
    let x = parse_value(expr)?;
    let ctx = MrContext::new(u);
    let v = ctx.membership(&x, job.bounds);
    if let MembershipVerdict::ProvenIn(w) = &v {
        debug_assert!(w.verify(&x));
    }
    let body = match job.format {
        Format::Json => {
            let mut doc = json!({
                "schema": SCHEMA_VERSION,
                "command": "member",
                "slopes": slope_strings(u),
                "frame": frame_record(u.alpha(), u.beta()),
                "expression": expr,
                "value": ValueRecord::new(&x, job.precision),
            });
            let m = membership_json(&v, job.precision);
            doc.as_object_mut().unwrap().extend(m.as_object().unwrap().clone());
            json_string(&doc)?
        }
        _ => {
            let mut s = header(u);
            writeln!(s, "x = {} = {}", expr, pretty(&x, job.precision)).unwrap();
            writeln!(s, "verdict: {}", v.label()).unwrap();
            membership_text(&mut s, &v, job.precision, "  ");
            s
        }
    };
    let status = if v.is_unknown() { Status::Unknown } else { Status::Decided };
    Ok(Output { body, status })
}

fn cmd_pvalues(job: &JobConfig, u: &SlopeSet) -> Result<Output, CliError> {
    let table = PValueTable::new(u);
    let rows: Vec<(Angle, &CyclotomicReal, String)> = table
        .entries()
        .iter()
        .map(|(g, p)| (*g, p, minimal_polynomial(p).to_string()))
        .collect();
    let delta = delta_set(u);
    let d = job.precision;
    let body = match job.format {
        Format::Json => json_string(&json!({
            "schema": SCHEMA_VERSION,
            "command": "pvalues",
            "slopes": slope_strings(u),
            "frame": frame_record(u.alpha(), u.beta()),
            "pvalues": rows.iter().map(|(g, p, mu)| json!({
                "slope": g.to_string(),
                "value": ValueRecord::new(p, d),
                "minimal_polynomial": mu,
            })).collect::<Vec<_>>(),
            "delta": delta.values().iter().map(|x| ValueRecord::new(x, d)).collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["slope", "decimal", "conductor", "coeffs", "minimal_polynomial"])?;
            for (g, p, mu) in &rows {
                let v = ValueRecord::new(p, d);
                w.write_record([
                    g.to_string(),
                    v.decimal,
                    v.exact.conductor.to_string(),
                    v.exact.coeffs.join(";"),
                    mu.clone(),
                ])?;
            }
            csv_string(w)?
        }
        Format::Text => {
            let mut s = header(u);
            for (g, p, mu) in &rows {
                writeln!(s, "p({:?}) = {}", g, pretty(p, d)).unwrap();
                writeln!(s, "  minimal polynomial {}", mu).unwrap();
            }
            writeln!(s, "Δ has {} distinct values", delta.len()).unwrap();
            s
        }
    };
    Ok(Output::decided(body))
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn level_summaries(levels: impl Iterator<Item = (usize, usize, bool)>) -> Vec<LevelSummary> {
    levels.map(|(level, points, truncated)| LevelSummary { level, points, truncated }).collect()
}

fn cmd_generate(job: &JobConfig, u: &SlopeSet) -> Result<Output, CliError> {
    let levels = generate(u, job.levels, job.cap);
    let last = levels.last().expect("level 0 always exists");
    // tag each point with the first level containing it
    let mut points: Vec<PointRecord> = last
        .points()
        .iter()
        .map(|p| {
            let first = levels.iter().position(|l| l.contains(p)).unwrap_or(last.level());
            PointRecord::new(p, first, job.precision)
        })
        .collect();
    points.sort_by_key(|p| p.level);
    let summaries = level_summaries(levels.iter().map(|l| (l.level(), l.len(), l.truncated())));
    let body = match job.format {
        Format::Json => json_string(&GenerateDoc {
            schema: SCHEMA_VERSION,
            command: "generate".into(),
            certified: true,
            slopes: slope_strings(u),
            frame: frame_record(u.alpha(), u.beta()),
            levels: summaries,
            points,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["level", "re", "im", "conductor", "r", "s"])?;
            for p in &points {
                w.write_record([
                    p.level.to_string(),
                    p.re.clone(),
                    p.im.clone(),
                    p.conductor.to_string(),
                    p.r.join(";"),
                    p.s.join(";"),
                ])?;
            }
            csv_string(w)?
        }
        Format::Text => {
            let mut s = header(u);
            for l in &summaries {
                let flag = if l.truncated { " (truncated)" } else { "" };
                writeln!(s, "level {}: {} points{}", l.level, l.points, flag).unwrap();
            }
            for p in &points {
                writeln!(s, "{}\t{}\t{}", p.level, p.re, p.im).unwrap();
            }
            s
        }
    };
    Ok(Output::decided(body))
}

fn cmd_preview(job: &JobConfig) -> Result<Output, CliError> {
    let slopes = preview_slopes(&job.slopes)?;
    let levels = preview_generate(&slopes, job.levels, job.cap, job.epsilon)
        .map_err(|e| CliError::Slopes(e.to_string()))?;
    let last = levels.last().expect("level 0 always exists");
    // levels grow by appending, so a point's level is the first one long enough
    let points: Vec<FloatRecord> = last
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| FloatRecord {
            level: levels.iter().position(|l| l.points.len() > i).unwrap(),
            re: p.x,
            im: p.y,
        })
        .collect();
    let summaries = level_summaries(levels.iter().map(|l| (l.level, l.points.len(), l.truncated)));
    let body = match job.format {
        Format::Json => json_string(&PreviewDoc {
            schema: SCHEMA_VERSION,
            command: "generate".into(),
            certified: false,
            slopes,
            epsilon: job.epsilon,
            levels: summaries,
            points,
        })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["level", "re", "im", "conductor", "r", "s"])?;
            for p in &points {
                w.write_record([p.level.to_string(), p.re.to_string(), p.im.to_string(), String::new(), String::new(), String::new()])?;
            }
            csv_string(w)?
        }
        Format::Text => {
            let mut s = format!("float preview, NOT certified (f64, epsilon = {:e})\n", job.epsilon);
            for l in &summaries {
                let flag = if l.truncated { " (truncated)" } else { "" };
                writeln!(s, "level {}: {} points{}", l.level, l.points, flag).unwrap();
            }
            for p in &points {
                writeln!(s, "{}\t{}\t{}", p.level, p.re, p.im).unwrap();
            }
            s
        }
    };
    Ok(Output::decided(body))
}
