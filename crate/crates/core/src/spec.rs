//! Line-oriented job specification files.
//!
//! ```text
//! mode semigroup
//! dim 2
//! gens: 1 0; 1 2; 2 3; 3 1
//! ideal q: 6 0; 6 12
//! nmax 6
//! type r = 2
//! assert unmixed non_regular c_parameter deep_in_g_power
//! ```

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::SpecError;
use crate::hilbert::PrimaryIdeal;
use crate::ideal::Ideal;
use crate::poly::MonomialOrder;
use crate::ring::{PolyRing, RingSpec};
use crate::semigroup::{AffineSemigroup, SemigroupIdeal, Vector};
use crate::verdict::{Assumption, Assumptions};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl OutputFormat {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            "text" => Some(OutputFormat::Text),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub ring: RingSpec,
    pub dim: usize,
    pub ideal: PrimaryIdeal,
    /// Ideal generators as written.
    pub ideal_src: Vec<String>,
    pub nmax: usize,
    pub r: Option<u64>,
    pub assertions: Assumptions,
    pub format: OutputFormat,
}

impl JobSpec {
    pub fn default_nmax(dim: usize) -> usize {
        dim + 6
    }

    pub fn min_nmax(dim: usize) -> usize {
        dim + 3
    }
}

fn err(line: usize, message: impl Into<String>) -> SpecError {
    SpecError {
        line,
        message: message.into(),
    }
}

struct Entry<'a> {
    line: usize,
    value: &'a str,
}

const KEYS: &[&str] = &["mode", "vars", "order", "quotient:", "ideal q:", "dim", "gens:", "nmax", "type r =", "assert"];

fn split_key(line: &str) -> Option<(&'static str, &str)> {
    KEYS.iter().find_map(|&k| {
        let rest = line.strip_prefix(k)?;
        // bare words must be followed by whitespace or end of line
        if !k.ends_with([':', '=']) && !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
            return None;
        }
        Some((k, rest.trim()))
    })
}

fn parse_natural(e: &Entry, what: &str) -> Result<usize, SpecError> {
    e.value
        .parse::<usize>()
        .map_err(|_| err(e.line, format!("{what} must be a natural number, got {:?}", e.value)))
}

fn parse_vectors(e: &Entry, dim: usize) -> Result<Vec<Vector>, SpecError> {
    e.value
        .split(';')
        .map(|chunk| {
            let v = chunk
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err(e.line, format!("bad lattice vector {:?}", chunk.trim())))?;
            if v.len() != dim {
                return Err(err(
                    e.line,
                    format!("vector {:?} has {} entries, expected {dim}", chunk.trim(), v.len()),
                ));
            }
            Ok(v)
        })
        .collect()
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|s| s.trim().to_string())
        .collect()
}

pub fn parse_spec(src: &str) -> Result<JobSpec, SpecError> {
    let mut entries: HashMap<&'static str, Entry> = HashMap::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = split_key(line).ok_or_else(|| {
            let word = line.split_whitespace().next().unwrap_or(line);
            err(line_no, format!("unknown key {word:?}"))
        })?;
        if let Some(prev) = entries.get(key) {
            return Err(err(
                line_no,
                format!("duplicate key {:?} (first given on line {})", key.trim_end_matches([':', '=', ' ']), prev.line),
            ));
        }
        entries.insert(key, Entry { line: line_no, value });
    }

    let mode = entries.get("mode").ok_or_else(|| err(1, "missing \"mode\""))?;
    let job = match mode.value {
        "polynomial" => parse_polynomial_job(&entries)?,
        "semigroup" => parse_semigroup_job(&entries)?,
        other => return Err(err(mode.line, format!("mode must be polynomial or semigroup, got {other:?}"))),
    };
    Ok(job)
}

fn reject(entries: &HashMap<&'static str, Entry>, keys: &[&str], mode: &str) -> Result<(), SpecError> {
    for k in keys {
        if let Some(e) = entries.get(k) {
            return Err(err(e.line, format!("{:?} is not valid in {mode} mode", k.trim_end_matches(':'))));
        }
    }
    Ok(())
}

fn required<'a>(entries: &'a HashMap<&'static str, Entry<'a>>, key: &str) -> Result<&'a Entry<'a>, SpecError> {
    let mode_line = entries["mode"].line;
    entries
        .get(key)
        .ok_or_else(|| err(mode_line, format!("missing {:?}", key.trim_end_matches(':'))))
}

struct Common {
    nmax: usize,
    r: Option<u64>,
    assertions: Assumptions,
}

fn parse_common(entries: &HashMap<&'static str, Entry>, dim: usize) -> Result<Common, SpecError> {
    let nmax = match entries.get("nmax") {
        Some(e) => {
            let n = parse_natural(e, "nmax")?;
            if n < JobSpec::min_nmax(dim) {
                return Err(err(
                    e.line,
                    format!("nmax must be at least dimension + 3 = {}", JobSpec::min_nmax(dim)),
                ));
            }
            n
        }
        None => JobSpec::default_nmax(dim),
    };
    let r = match entries.get("type r =") {
        Some(e) => Some(parse_natural(e, "type r")? as u64),
        None => None,
    };
    let mut assertions = Assumptions::new();
    if let Some(e) = entries.get("assert") {
        for word in e.value.split_whitespace() {
            let a = Assumption::from_name(word).ok_or_else(|| err(e.line, format!("unknown assertion {word:?}")))?;
            assertions.insert(a);
        }
    }
    Ok(Common { nmax, r, assertions })
}

fn check_ideal_size(e: &Entry, count: usize, dim: usize) -> Result<(), SpecError> {
    if count != dim {
        return Err(err(
            e.line,
            format!("parameter ideal has {count} generators but dimension is {dim}"),
        ));
    }
    Ok(())
}

fn parse_polynomial_job(entries: &HashMap<&'static str, Entry>) -> Result<JobSpec, SpecError> {
    reject(entries, &["gens:"], "polynomial")?;
    let vars_e = required(entries, "vars")?;
    let vars: Vec<String> = vars_e.value.split_whitespace().map(str::to_string).collect();
    if vars.is_empty() {
        return Err(err(vars_e.line, "no variables declared"));
    }
    for (i, v) in vars.iter().enumerate() {
        if !v.chars().next().is_some_and(char::is_alphabetic) || !v.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(err(vars_e.line, format!("bad variable name {v:?}")));
        }
        if vars[..i].contains(v) {
            return Err(err(vars_e.line, format!("variable {v:?} declared twice")));
        }
    }
    let order = match entries.get("order") {
        None => MonomialOrder::DegRevLex,
        Some(e) => match e.value {
            "degrevlex" => MonomialOrder::DegRevLex,
            "lex" => MonomialOrder::Lex,
            other => return Err(err(e.line, format!("order must be degrevlex or lex, got {other:?}"))),
        },
    };
    let mut quotient = Vec::new();
    if let Some(e) = entries.get("quotient:") {
        for (i, s) in split_list(e.value).iter().enumerate() {
            let p = crate::poly::parse_polynomial(s, &vars, order)
                .map_err(|x| err(e.line, format!("quotient relation {}: {x}", i + 1)))?;
            quotient.push(p);
        }
    }
    let ring = Arc::new(PolyRing::new(vars.clone(), order, quotient).map_err(|x| err(vars_e.line, x.to_string()))?);
    let ideal_e = required(entries, "ideal q:")?;
    let ideal_src = split_list(ideal_e.value);
    let mut gens = Vec::new();
    for (i, s) in ideal_src.iter().enumerate() {
        let p = ring
            .parse_poly(s)
            .map_err(|x| err(ideal_e.line, format!("ideal generator {}: {x}", i + 1)))?;
        gens.push(p);
    }
    let dim = match entries.get("dim") {
        Some(e) => parse_natural(e, "dim")?,
        None => gens.len(),
    };
    if dim == 0 {
        return Err(err(entries.get("dim").map_or(ideal_e.line, |e| e.line), "dimension must be positive"));
    }
    check_ideal_size(ideal_e, gens.len(), dim)?;
    let ideal = Ideal::new(ring.clone(), gens).map_err(|x| err(ideal_e.line, x.to_string()))?;
    let common = parse_common(entries, dim)?;
    Ok(JobSpec {
        ring: RingSpec::Polynomial((*ring).clone()),
        dim,
        ideal: PrimaryIdeal::Polynomial(ideal),
        ideal_src,
        nmax: common.nmax,
        r: common.r,
        assertions: common.assertions,
        format: OutputFormat::default(),
    })
}

fn parse_semigroup_job(entries: &HashMap<&'static str, Entry>) -> Result<JobSpec, SpecError> {
    reject(entries, &["vars", "order", "quotient:"], "semigroup")?;
    let dim_e = required(entries, "dim")?;
    let dim = parse_natural(dim_e, "dim")?;
    if dim == 0 {
        return Err(err(dim_e.line, "dimension must be positive"));
    }
    let gens_e = required(entries, "gens:")?;
    let gens = parse_vectors(gens_e, dim)?;
    let s = Arc::new(AffineSemigroup::new(dim, gens).map_err(|x| err(gens_e.line, x.to_string()))?);
    let ideal_e = required(entries, "ideal q:")?;
    let ideal_gens = parse_vectors(ideal_e, dim)?;
    check_ideal_size(ideal_e, ideal_gens.len(), dim)?;
    let ideal_src = ideal_gens.iter().map(|v| crate::hilbert::format_vector(v)).collect();
    let ideal = SemigroupIdeal::new(s.clone(), ideal_gens).map_err(|x| err(ideal_e.line, x.to_string()))?;
    let common = parse_common(entries, dim)?;
    Ok(JobSpec {
        ring: RingSpec::Semigroup((*s).clone()),
        dim,
        ideal: PrimaryIdeal::Semigroup(ideal),
        ideal_src,
        nmax: common.nmax,
        r: common.r,
        assertions: common.assertions,
        format: OutputFormat::default(),
    })
}
