//! Subcommand implementations. Each returns the full stdout text and an exit
//! status, so output is assembled before anything is printed.

use std::fmt;
use std::path::Path;
use std::time::Duration;

use overlapfree::codecheck::{brute_force_max_code, expand_system, find_overlap};
use overlapfree::construct::{self, gilbert_levenshtein, m_minimum, zero_block};
use overlapfree::counting::{
    classic_bounds, fib_nstep, lower_bound_explicit, render_decimal, upper_bound_1k,
    upper_bound_graph, upper_bound_weak, ExplicitVariant,
};
use overlapfree::overlapgraph::{
    max_cardinality_search, max_product_search, product_optimal_cardinality, SearchOptions,
    EXACT_SEARCH_MAX_K,
};
use overlapfree::tables::{reproduce_table, TableId, TableSpec};
use overlapfree::{Code, Error, OverlapGraph, PrefixSuffixSystem, SymbolicSize};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::render::{self, ConstructionRecord};
use crate::{Format, ObjectiveArg};

const DEFAULT_LARGE_K_TIME_LIMIT: Duration = Duration::from_secs(60);
const DECIMAL_PLACES: u32 = 6;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Capacity(_)) => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, status: 0 }
    }
}

type CliResult = Result<Outcome, CliError>;

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_code(path: &Path, code: &Code) -> Result<(), CliError> {
    std::fs::write(path, code.to_text()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn words_text(code: &Code) -> Vec<String> {
    code.words().map(|w| w.to_string()).collect()
}

pub fn verify(file: &Path, t1: u32, t2: u32, fmt: Format) -> CliResult {
    let code = Code::parse(&read_file(file)?)?;
    let witness = find_overlap(&code, t1, t2)?;
    let status = u8::from(witness.is_some());
    let stdout = match fmt {
        Format::Json => render::json(&json!({
            "file": file.display().to_string(),
            "n": code.n(),
            "words": code.len(),
            "t1": t1,
            "t2": t2,
            "overlap_free": witness.is_none(),
            "witness": witness.map(|w| json!({"t": w.t, "u": w.u.to_string(), "v": w.v.to_string()})),
        })),
        Format::Tsv => match witness {
            None => render::key_values(&[
                ("result", "overlap-free".into()),
                ("n", code.n().to_string()),
                ("words", code.len().to_string()),
            ]),
            Some(w) => render::key_values(&[
                ("result", "overlap".into()),
                ("t", w.t.to_string()),
                ("u", w.u.to_string()),
                ("v", w.v.to_string()),
            ]),
        },
    };
    Ok(Outcome { stdout, status })
}

pub fn oracle(n: u32, t1: u32, t2: u32, canonical: bool, emit: Option<&Path>, fmt: Format) -> CliResult {
    let code = brute_force_max_code(n, t1, t2, canonical)?;
    if let Some(path) = emit {
        write_code(path, &code)?;
    }
    let stdout = match fmt {
        Format::Json => render::json(&json!({
            "n": n,
            "t1": t1,
            "t2": t2,
            "size": code.len(),
            "words": words_text(&code),
        })),
        Format::Tsv => {
            let mut out = render::key_values(&[
                ("n", n.to_string()),
                ("t1", t1.to_string()),
                ("t2", t2.to_string()),
                ("size", code.len().to_string()),
            ]);
            for w in code.words() {
                out.push_str(&format!("word\t{w}\n"));
            }
            out
        }
    };
    Ok(Outcome::ok(stdout))
}

fn record(
    k: u32,
    construction: &'static str,
    params: Value,
    sizes: Option<(usize, usize)>,
    size: &SymbolicSize,
) -> ConstructionRecord {
    ConstructionRecord {
        k,
        construction,
        params,
        p_size: sizes.map(|s| s.0),
        s_size: sizes.map(|s| s.1),
        coefficient: size.coefficient().to_string(),
        offset: size.offset(),
    }
}

fn emit_records(records: &[ConstructionRecord], fmt: Format) -> String {
    match fmt {
        Format::Json if records.len() == 1 => render::json(&records[0]),
        Format::Json => render::json(records),
        Format::Tsv => render::records_tsv(records),
    }
}

fn emit_system(sys: &PrefixSuffixSystem, path: Option<&Path>, n: Option<u32>) -> Result<(), CliError> {
    if let Some(path) = path {
        let code = expand_system(sys, n.unwrap_or(2 * sys.k()))?;
        write_code(path, &code)?;
    }
    Ok(())
}

fn system_sizes(sys: &PrefixSuffixSystem) -> (usize, usize) {
    (sys.prefix_values().len(), sys.suffix_values().len())
}

pub fn doubling(k_max: u32, fmt: Format) -> CliResult {
    let trace = construct::doubling(k_max)?;
    let records: Vec<_> = trace
        .steps()
        .iter()
        .map(|step| {
            record(
                step.k,
                "doubling",
                json!({"duplicates": step.duplicates.len()}),
                Some((step.p_len(), step.s_len())),
                &step.size(),
            )
        })
        .collect();
    Ok(Outcome::ok(emit_records(&records, fmt)))
}

pub fn mmin(k: u32, emit: Option<&Path>, n: Option<u32>, fmt: Format) -> CliResult {
    let res = m_minimum(k)?;
    emit_system(&res.system, emit, n)?;
    let rec = record(k, "m-minimum", json!({"m": res.m}), Some(system_sizes(&res.system)), &res.size);
    Ok(Outcome::ok(emit_records(&[rec], fmt)))
}

pub fn zeroblock(k: u32, emit: Option<&Path>, n: Option<u32>, fmt: Format) -> CliResult {
    let res = zero_block(k, emit.is_some())?;
    if let Some(sys) = &res.system {
        emit_system(sys, emit, n)?;
    }
    let sizes = res.system.as_ref().map(system_sizes).or_else(|| {
        let p_bits = k - res.z;
        let s_size = res.size.coefficient() >> p_bits as usize;
        let s_size = usize::try_from(&s_size).ok()?;
        Some((1usize.checked_shl(p_bits).filter(|_| p_bits < usize::BITS)?, s_size))
    });
    let rec = record(k, "zero-block", json!({"z": res.z}), sizes, &res.size);
    Ok(Outcome::ok(emit_records(&[rec], fmt)))
}

pub fn gl(n: u32, emit: Option<&Path>, fmt: Format) -> CliResult {
    let res = gilbert_levenshtein(n, emit.is_some())?;
    if let (Some(path), Some(code)) = (emit, &res.code) {
        write_code(path, code)?;
    }
    let size = SymbolicSize::new(res.size.clone(), n);
    let rec = record(n - 1, "gilbert-levenshtein", json!({"n": n, "z": res.z}), None, &size);
    Ok(Outcome::ok(emit_records(&[rec], fmt)))
}

#[derive(Serialize)]
struct GraphOptRecord {
    k: u32,
    objective: &'static str,
    x_size: usize,
    y_size: usize,
    product: u64,
    cardinality: usize,
    optimal: bool,
    x_set: Vec<String>,
    y_set: Vec<String>,
}

pub fn graph_opt(
    k: u32,
    objective: ObjectiveArg,
    canonical: bool,
    time_limit: Option<f64>,
    fmt: Format,
) -> CliResult {
    let time_limit = match time_limit {
        Some(secs) if secs.is_finite() && secs > 0.0 => Some(Duration::from_secs_f64(secs)),
        Some(secs) => return Err(CliError::Usage(format!("time limit must be positive, got {secs}"))),
        None if k > EXACT_SEARCH_MAX_K => Some(DEFAULT_LARGE_K_TIME_LIMIT),
        None => None,
    };
    let g = OverlapGraph::build(k)?;
    let opts = SearchOptions { canonical, time_limit };
    let (res, name) = match objective {
        ObjectiveArg::Product => (max_product_search(&g, opts)?, "product"),
        ObjectiveArg::Cardinality => (max_cardinality_search(&g, opts)?, "cardinality"),
        ObjectiveArg::Tabled => (product_optimal_cardinality(&g, opts)?, "tabled"),
    };
    let rec = GraphOptRecord {
        k,
        objective: name,
        x_size: res.x_set.len(),
        y_size: res.y_set.len(),
        product: res.product(),
        cardinality: res.cardinality(),
        optimal: res.optimal,
        x_set: res.x_set.iter().map(|w| w.to_string()).collect(),
        y_set: res.y_set.iter().map(|w| w.to_string()).collect(),
    };
    let stdout = match fmt {
        Format::Json => render::json(&rec),
        Format::Tsv => render::key_values(&[
            ("k", rec.k.to_string()),
            ("objective", rec.objective.into()),
            ("x_size", rec.x_size.to_string()),
            ("y_size", rec.y_size.to_string()),
            ("product", rec.product.to_string()),
            ("cardinality", rec.cardinality.to_string()),
            ("optimal", rec.optimal.to_string()),
            ("x_set", rec.x_set.join(",")),
            ("y_set", rec.y_set.join(",")),
        ]),
    };
    Ok(Outcome::ok(stdout))
}

#[derive(Serialize)]
struct BoundRecord {
    name: String,
    kind: &'static str,
    /// Value of `C(k, n)` (upper bounds) or the coefficient of `2^n` (lower).
    meaning: &'static str,
    num: String,
    den: String,
    decimal: String,
}

impl BoundRecord {
    fn new(name: impl Into<String>, kind: &'static str, meaning: &'static str, value: &BigRational) -> Self {
        Self {
            name: name.into(),
            kind,
            meaning,
            num: value.numer().to_string(),
            den: value.denom().to_string(),
            decimal: render_decimal(value, DECIMAL_PLACES),
        }
    }
}

pub fn bounds(n: u32, k: u32, q: u32, fmt: Format) -> CliResult {
    let mut out = Vec::new();
    let mut applicable = |r: Result<BigRational, Error>, f: &dyn Fn(&BigRational) -> BoundRecord| match r {
        Ok(v) => {
            out.push(f(&v));
            Ok(())
        }
        Err(Error::Domain(_)) => Ok(()),
        Err(e) => Err(e),
    };
    if k >= 1 && 2 * k <= n + 1 {
        applicable(upper_bound_weak(n, k, q), &|v| BoundRecord::new("weak", "upper", "size", v))?;
    }
    applicable(upper_bound_1k(n, k, q), &|v| BoundRecord::new("one_k", "upper", "size", v))?;
    if q == 2 {
        applicable(
            upper_bound_graph(n, k).map(|v| BigRational::from_integer(v.into())),
            &|v| BoundRecord::new("graph", "upper", "size", v),
        )?;
        for variant in ExplicitVariant::ALL {
            applicable(lower_bound_explicit(k, variant), &|v| {
                BoundRecord::new(variant.name(), "lower", "coefficient_of_2^n", v)
            })?;
        }
        let classic = match classic_bounds(n) {
            Ok(c) => Some(c),
            Err(Error::Domain(_)) => None,
            Err(e) => return Err(e.into()),
        };
        if let Some(c) = classic.filter(|_| k + 1 == n) {
            out.push(BoundRecord::new("nine_n", "lower", "size", &c.nine_n));
            if let Some(eight) = &c.eight_n {
                out.push(BoundRecord::new("eight_n", "lower", "size", eight));
            }
        }
    }
    let stdout = match fmt {
        Format::Json => render::json(&json!({"n": n, "k": k, "q": q, "bounds": out})),
        Format::Tsv => {
            let mut s = String::from("name\tkind\tmeaning\tnum\tden\tdecimal\n");
            for b in &out {
                s.push_str(&format!("{}\t{}\t{}\t{}\t{}\t{}\n", b.name, b.kind, b.meaning, b.num, b.den, b.decimal));
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

pub fn fib(z: u32, i: i64, fmt: Format) -> CliResult {
    let value = fib_nstep(z, i)?;
    let stdout = match fmt {
        Format::Json => render::json(&json!({"z": z, "i": i, "value": value.to_string()})),
        Format::Tsv => format!("{value}\n"),
    };
    Ok(Outcome::ok(stdout))
}

pub fn tables(id: &str, k_min: Option<u32>, k_max: Option<u32>, fmt: Format) -> CliResult {
    let id: TableId = id.parse()?;
    let spec = TableSpec::new(id, k_min, k_max)?;
    let report = reproduce_table(&spec)?;
    let stdout = match fmt {
        Format::Tsv => report.to_tsv(),
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|row| {
                    let cells: serde_json::Map<String, Value> = row
                        .cells
                        .iter()
                        .map(|c| (c.column.to_string(), json!({"got": c.got, "expected": c.expected})))
                        .collect();
                    json!({"k": row.k, "cells": cells, "status": row.status().to_string()})
                })
                .collect();
            render::json(&json!({
                "id": id.to_string(),
                "title": id.title(),
                "k_min": spec.k_min,
                "k_max": spec.k_max,
                "all_match": report.all_match(),
                "rows": rows,
            }))
        }
    };
    Ok(Outcome::ok(stdout))
}
