//! Job orchestration and serialization of reports.

use serde_json::{json, Map, Value};

use crate::error::HilbertError;
use crate::hilbert::{analyze, format_vector, infer_cohomology_dim2, Analysis, CohomologyEstimate, HilbertData, LengthSequence};
use crate::ring::RingSpec;
use crate::spec::{JobSpec, OutputFormat};
use crate::verdict::{fill_type, run_checks, CheckId, VerdictRecord};

#[derive(Clone, Debug)]
pub struct Report {
    pub job: JobSpec,
    pub analysis: Analysis,
    pub cohomology: Option<CohomologyEstimate>,
    pub verdicts: Vec<VerdictRecord>,
    pub diagnostics: Vec<String>,
}

/// A computation failure with a suggested remedy.
#[derive(Debug)]
pub struct RunError {
    pub source: HilbertError,
}

impl RunError {
    pub fn hint(&self) -> Option<&'static str> {
        match self.source {
            HilbertError::NotStabilized { .. } => Some("rerun with a larger --nmax"),
            HilbertError::NotPrimary(_) => {
                Some("the ideal must have finite colength and be supported only at the origin")
            }
            HilbertError::DegenerateColon => {
                Some("q:m is the unit ideal; the invariants need e0(m) > 1 and q strictly inside m")
            }
            HilbertError::DegreeMismatch(_) | HilbertError::DimensionMismatch { .. } => {
                Some("check the declared dimension against the number of parameters")
            }
            _ => None,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.source)?;
        if let Some(h) = self.hint() {
            write!(f, " (hint: {h})")?;
        }
        Ok(())
    }
}

impl std::error::Error for RunError {}

pub fn run(job: &JobSpec) -> Result<Report, RunError> {
    let mut analysis = analyze(&job.ideal, job.dim, job.nmax, job.r).map_err(|source| RunError { source })?;
    let mut diagnostics = Vec::new();
    if let Some(note) = fill_type(&mut analysis.report, &job.assertions) {
        diagnostics.push(note);
    }
    let rep = &analysis.report;
    if !rep.e0_agreement {
        diagnostics.push(format!(
            "e0(q) = {} differs from e0(q:m) = {}",
            rep.e_q.e(0),
            rep.e_colon.e(0)
        ));
    }
    let cohomology = if rep.dim == 2 {
        let c = infer_cohomology_dim2(rep).expect("dimension checked");
        if !c.valid {
            diagnostics.push("cohomology estimate is inconsistent with a generalized Cohen-Macaulay ring of dimension 2".into());
        }
        Some(c)
    } else {
        None
    };
    let (verdicts, notes) = run_checks(rep, &job.assertions);
    diagnostics.extend(notes);
    for v in &verdicts {
        if matches!(v.check, CheckId::Lemma31 | CheckId::GotoNishida) && !v.all_hold() && rep.e0_agreement {
            diagnostics.push(format!("{} does not hold", v.check));
        }
    }
    Ok(Report {
        job: job.clone(),
        analysis,
        cohomology,
        verdicts,
        diagnostics,
    })
}

fn num(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn opt_num<T: ToString>(v: Option<T>) -> Value {
    v.map_or(Value::Null, num)
}

fn job_value(job: &JobSpec) -> Value {
    let mut m = Map::new();
    match &job.ring {
        RingSpec::Polynomial(r) => {
            m.insert("mode".into(), json!("polynomial"));
            m.insert("vars".into(), json!(r.vars()));
            m.insert("order".into(), json!(r.order().name()));
            let q: Vec<String> = r.quotient().iter().map(|p| r.format(p)).collect();
            m.insert("quotient".into(), json!(q));
        }
        RingSpec::Semigroup(s) => {
            m.insert("mode".into(), json!("semigroup"));
            let g: Vec<String> = s.gens().iter().map(|v| format_vector(v)).collect();
            m.insert("gens".into(), json!(g));
        }
    }
    m.insert("dim".into(), num(job.dim));
    m.insert("ideal".into(), json!(job.ideal_src));
    m.insert("nmax".into(), num(job.nmax));
    m.insert("r".into(), opt_num(job.r));
    let a: Vec<&str> = job.assertions.iter().map(|a| a.name()).collect();
    m.insert("assertions".into(), json!(a));
    Value::Object(m)
}

fn lengths_value(seq: &LengthSequence) -> Value {
    json!({
        "backend": seq.backend.name(),
        "dim": num(seq.dim),
        "values": seq.values.iter().map(num).collect::<Vec<_>>(),
    })
}

fn hilbert_value(h: &HilbertData) -> Value {
    json!({
        "e": h.e.iter().map(num).collect::<Vec<_>>(),
        "n0": num(h.n0),
    })
}

fn verdict_value(v: &VerdictRecord) -> Value {
    let links: Vec<Value> = v
        .links
        .iter()
        .map(|l| {
            json!({
                "label": l.label,
                "lhs": num(l.lhs),
                "relation": l.relation.symbol(),
                "rhs": num(l.rhs),
                "holds": l.holds,
                "equality": l.equality,
            })
        })
        .collect();
    json!({
        "check": v.check.name(),
        "links": links,
        "assumptions_required": v.assumptions_required.iter().map(|a| a.name()).collect::<Vec<_>>(),
        "assumptions_asserted": v.assumptions_asserted.iter().map(|a| a.name()).collect::<Vec<_>>(),
        "conclusion": v.conclusion.map(|c| c.name()),
        "basis": v.basis,
        "notes": v.notes,
    })
}

impl Report {
    pub fn to_value(&self) -> Value {
        let a = &self.analysis;
        let rep = &a.report;
        let mut inv = json!({
            "dim": num(rep.dim),
            "len_q": num(rep.len_q),
            "len_colon": num(rep.len_colon),
            "sg_q": num(rep.sg_q),
            "sg_colon": num(rep.sg_colon),
            "i_q": num(rep.i_q),
            "ir": num(rep.ir),
            "r": opt_num(rep.r),
            "origin_supported": rep.origin_supported,
            "e0_agreement": rep.e0_agreement,
            "colon_gens": a.colon.ideal.describe(),
        });
        if let Some(socle) = &a.colon.socle {
            let s: Vec<String> = socle.iter().map(|v| format_vector(v)).collect();
            inv["socle"] = json!(s);
        }
        let cohomology = match &self.cohomology {
            None => Value::Null,
            Some(c) => json!({
                "h0": num(c.h0),
                "h1": num(c.h1),
                "r0": num(c.r0),
                "r1": num(c.r1),
                "r2": num(c.r2),
                "valid": c.valid,
            }),
        };
        json!({
            "job": job_value(&self.job),
            "lengths_q": lengths_value(&a.lengths_q),
            "lengths_colon": lengths_value(&a.lengths_colon),
            "hilbert_q": hilbert_value(&rep.e_q),
            "hilbert_colon": hilbert_value(&rep.e_colon),
            "invariants": inv,
            "cohomology": cohomology,
            "verdicts": self.verdicts.iter().map(verdict_value).collect::<Vec<_>>(),
            "diagnostics": self.diagnostics,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        value_to_csv(&self.to_value())
    }

    pub fn to_text(&self) -> String {
        let a = &self.analysis;
        let rep = &a.report;
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let lens = |s: &LengthSequence| s.values.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        out += &format!("lengths q:     {}\n", lens(&a.lengths_q));
        out += &format!("lengths q:m:   {}\n", lens(&a.lengths_colon));
        out += &format!("e(q)   = ({})  n0 = {}\n", join(&rep.e_q.e), rep.e_q.n0);
        out += &format!("e(q:m) = ({})  n0 = {}\n", join(&rep.e_colon.e), rep.e_colon.n0);
        out += &format!(
            "l(R/q) = {}  l(R/q:m) = {}  ir = {}  I(q) = {}\n",
            rep.len_q, rep.len_colon, rep.ir, rep.i_q
        );
        out += &format!("sg(q) = {}  sg(q:m) = {}", rep.sg_q, rep.sg_colon);
        if let Some(r) = rep.r {
            out += &format!("  r = {r}");
        }
        out.push('\n');
        if let Some(c) = &self.cohomology {
            out += &format!(
                "h0 = {}  h1 = {}  r0 = {}  r1 = {}  r2 = {}{}\n",
                c.h0,
                c.h1,
                c.r0,
                c.r1,
                c.r2,
                if c.valid { "" } else { "  (invalid)" }
            );
        }
        out += &verdicts_text(&self.verdicts);
        for d in &self.diagnostics {
            out += &format!("note: {d}\n");
        }
        out
    }
}

pub fn verdicts_text(verdicts: &[VerdictRecord]) -> String {
    let mut out = String::new();
    for v in verdicts {
        let links: Vec<String> = v
            .links
            .iter()
            .map(|l| {
                let mark = if !l.holds {
                    "fails"
                } else if l.equality {
                    "equal"
                } else {
                    "strict"
                };
                format!("{} {} {} [{mark}]", l.lhs, l.relation.symbol(), l.rhs)
            })
            .collect();
        let conclusion = v.conclusion.map_or("no conclusion", |c| c.name());
        out += &format!("{:<16}{}  => {conclusion}\n", v.check.name(), links.join("; "));
        for n in &v.notes {
            out += &format!("{:<16}  {n}\n", "");
        }
    }
    out
}

/// Flattens a JSON value into `(path, value)` rows.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let child = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(m) => {
                for (k, v) in m {
                    walk(&child(k), v, out);
                }
            }
            Value::Array(a) => {
                if a.is_empty() {
                    out.push((prefix.to_string(), String::new()));
                }
                for (i, v) in a.iter().enumerate() {
                    walk(&child(&i.to_string()), v, out);
                }
            }
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            Value::Null => out.push((prefix.to_string(), "null".into())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn value_to_csv(value: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["path", "value"]).expect("in-memory write");
    for (path, v) in flatten(value) {
        w.write_record([path, v]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Text => report.to_text(),
    }
}
