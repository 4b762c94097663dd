//! The subcommands, each rendering its result as text, CSV or JSON.

use chainpoly_core::asymptotics::{GrowthReport, GrowthSums};
use chainpoly_core::chain::{enumerate_chains, koch_family, parse_formula};
use chainpoly_core::oracle::realize;
use chainpoly_core::tripoly::{ChainCounts, Evaluator, Mode, PolyPair};
use chainpoly_core::BigUint;
use chainpoly_core::{Count, ExtNum, Formula};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, Config, Format, ModeArg};
use crate::error::CliError;
use crate::format::round_down;
use crate::verify::{Verifier, VerifyConfig};

/// Largest Koch level accepted by `koch` and `polytwin --koch`.
pub const KOCH_LIMIT: u32 = 23;

/// Rendered output; `failure` is set when the command should exit with a
/// mismatch after printing.
#[derive(Debug)]
pub struct Output {
    pub body: String,
    pub failure: Option<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            failure: None,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Poly { formula, coeffs } => cmd_poly(formula, *coeffs, cfg).map(Output::ok),
        Command::Koch { max_s } => cmd_koch(*max_s, cfg).map(Output::ok),
        Command::Polytwin { formula, koch } => {
            cmd_polytwin(formula.as_deref(), *koch, cfg).map(Output::ok)
        }
        Command::Verify {
            level,
            inject_fault,
            seed,
        } => cmd_verify(VerifyConfig::for_level(*level, *seed, *inject_fault), cfg),
        Command::Realize { formula } => cmd_realize(formula, cfg).map(Output::ok),
        Command::Enumerate { n, count } => cmd_enumerate(*n, *count, cfg).map(Output::ok),
    }
}

fn mode_for(cfg: &Config, edges: usize) -> Mode {
    match cfg.mode {
        Some(ModeArg::Exact) => Mode::Exact,
        Some(ModeArg::Float) => Mode::ExtFloat,
        None => Mode::auto(edges),
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::ExtFloat => "float",
    }
}

/// A JSON number read back from its printed form, so both agree exactly.
fn num(text: &str) -> Value {
    text.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(text.to_string()))
}

fn count_text(c: &Count, digits: usize) -> String {
    match c {
        Count::Exact(v) => v.to_string(),
        Count::Float(v) => v.to_decimal(digits.max(1)),
    }
}

fn count_json(c: &Count, digits: usize) -> Value {
    match c {
        Count::Exact(v) => match u64::try_from(v) {
            Ok(x) => json!(x),
            Err(_) => Value::String(v.to_string()),
        },
        Count::Float(v) => Value::String(v.to_decimal(digits.max(1))),
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn json_string(v: &Value) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Aligned columns with a header line.
fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn render_table(cfg: &Config, header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    match cfg.format {
        Format::Csv => csv_string(header, &rows),
        Format::Text => Ok(text_table(header, &rows)),
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let obj = header
                        .iter()
                        .zip(r)
                        .map(|(h, c)| {
                            (
                                h.to_string(),
                                if c.is_empty() { Value::Null } else { num(c) },
                            )
                        })
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            json_string(&Value::Array(items))
        }
    }
}

/// Shared evaluators, so that a family of chains reuses common subformulas.
struct Engines {
    exact: Evaluator<BigUint>,
    float: Evaluator<ExtNum>,
}

impl Engines {
    fn new() -> Self {
        Engines {
            exact: Evaluator::new(),
            float: Evaluator::new(),
        }
    }

    fn counts(&self, f: &Formula, mode: Mode) -> Result<ChainCounts, CliError> {
        Ok(match mode {
            Mode::Exact => ChainCounts::from_pair(&self.exact.eval(f)?)?,
            Mode::ExtFloat => ChainCounts::from_pair(&self.float.eval(f)?)?,
        })
    }

    fn growth(&self, f: &Formula, mode: Mode) -> Result<GrowthReport, CliError> {
        Ok(match mode {
            Mode::Exact => GrowthReport::from_sums(&GrowthSums::from_pair(&self.exact.eval(f)?)?)?,
            Mode::ExtFloat => {
                GrowthReport::from_sums(&GrowthSums::from_pair(&self.float.eval(f)?)?)?
            }
        })
    }
}

fn coeff_strings<C: chainpoly_core::tripoly::Coefficient>(
    p: &PolyPair<C>,
) -> (Vec<String>, Vec<String>) {
    (
        p.upper.coeffs().iter().map(|c| c.to_string()).collect(),
        p.lower.coeffs().iter().map(|c| c.to_string()).collect(),
    )
}

fn cmd_poly(text: &str, coeffs: bool, cfg: &Config) -> Result<String, CliError> {
    let f = parse_formula(text)?;
    let n = f.edges();
    let mode = mode_for(cfg, n);
    let digits = cfg.digits as usize;
    let (c, polys) = match mode {
        Mode::Exact => {
            let p = Evaluator::<BigUint>::new().eval(&f)?;
            (
                ChainCounts::from_pair(&p)?,
                coeffs.then(|| coeff_strings(&p)),
            )
        }
        Mode::ExtFloat => {
            let p = Evaluator::<ExtNum>::new().eval(&f)?;
            let (u, l) = (p.upper.map(|x| *x), p.lower.map(|x| *x));
            let strs = coeffs.then(|| {
                (
                    u.coeffs()
                        .iter()
                        .map(|x| x.to_decimal(digits.max(1)))
                        .collect(),
                    l.coeffs()
                        .iter()
                        .map(|x| x.to_decimal(digits.max(1)))
                        .collect(),
                )
            });
            (ChainCounts::from_pair(&p)?, strs)
        }
    };
    let roots = [c.root_upper, c.root_lower, c.root_total].map(|r| round_down(r, digits));
    let counts = [&c.upper, &c.lower, &c.total].map(|x| count_text(x, digits));
    match cfg.format {
        Format::Text => {
            let mut rows = vec![
                ("formula", text.trim().to_string()),
                ("n", n.to_string()),
                ("upward", f.is_upward().to_string()),
                ("mode", mode_name(mode).into()),
                ("U", counts[0].clone()),
                ("L", counts[1].clone()),
                ("tr", counts[2].clone()),
                ("rootU", roots[0].clone()),
                ("rootL", roots[1].clone()),
                ("rootT", roots[2].clone()),
            ];
            if let Some((u, l)) = &polys {
                rows.push(("T", u.join(" ")));
                rows.push(("T_flip", l.join(" ")));
            }
            Ok(rows.iter().map(|(k, v)| format!("{k:<8}{v}\n")).collect())
        }
        Format::Csv => {
            let mut header = vec![
                "formula", "n", "upward", "mode", "U", "L", "tr", "rootU", "rootL", "rootT",
            ];
            let mut row = vec![
                text.trim().to_string(),
                n.to_string(),
                f.is_upward().to_string(),
                mode_name(mode).into(),
            ];
            row.extend(counts.iter().cloned());
            row.extend(roots.iter().cloned());
            if let Some((u, l)) = &polys {
                header.extend(["T", "T_flip"]);
                row.push(u.join(" "));
                row.push(l.join(" "));
            }
            csv_string(&header, &[row])
        }
        Format::Json => {
            let mut v = json!({
                "formula": text.trim(),
                "n": n,
                "upward": f.is_upward(),
                "mode": mode_name(mode),
                "U": count_json(&c.upper, digits),
                "L": count_json(&c.lower, digits),
                "tr": count_json(&c.total, digits),
                "rootU": num(&roots[0]),
                "rootL": num(&roots[1]),
                "rootT": num(&roots[2]),
            });
            if let Some((u, l)) = polys {
                v["T"] = json!(u);
                v["T_flip"] = json!(l);
            }
            json_string(&v)
        }
    }
}

fn koch_levels(max_s: u32) -> Result<Vec<Formula>, CliError> {
    if max_s > KOCH_LIMIT {
        return Err(CliError::Resource(format!(
            "Koch level {max_s} exceeds the limit of {KOCH_LIMIT}"
        )));
    }
    Ok(koch_family(max_s)?)
}

pub const KOCH_HEADER: [&str; 5] = ["s", "n", "rootU", "rootL", "rootT"];
pub const POLYTWIN_HEADER: [&str; 7] = [
    "s",
    "m",
    "lambda",
    "tau",
    "lambda_tau",
    "lambda_bar",
    "lambda_lambda_bar",
];

fn cmd_koch(max_s: u32, cfg: &Config) -> Result<String, CliError> {
    let engines = Engines::new();
    let d = cfg.digits as usize;
    let mut rows = Vec::new();
    for (s, f) in koch_levels(max_s)?.iter().enumerate() {
        let c = engines.counts(f, mode_for(cfg, f.edges()))?;
        rows.push(vec![
            s.to_string(),
            f.edges().to_string(),
            round_down(c.root_upper, d),
            round_down(c.root_lower, d),
            round_down(c.root_total, d),
        ]);
    }
    render_table(cfg, &KOCH_HEADER, rows)
}

fn growth_row(s: String, r: &GrowthReport, d: usize) -> Vec<String> {
    vec![
        s,
        r.m.to_string(),
        round_down(r.lambda, d),
        round_down(r.tau, d),
        round_down(r.lambda_tau, d),
        round_down(r.lambda_bar, d),
        round_down(r.lambda_lambda_bar, d),
    ]
}

fn cmd_polytwin(
    formula: Option<&str>,
    koch: Option<u32>,
    cfg: &Config,
) -> Result<String, CliError> {
    let engines = Engines::new();
    let d = cfg.digits as usize;
    let rows = match (formula, koch) {
        (_, Some(max_s)) => koch_levels(max_s)?
            .iter()
            .enumerate()
            .map(|(s, f)| {
                Ok(growth_row(
                    s.to_string(),
                    &engines.growth(f, mode_for(cfg, f.edges()))?,
                    d,
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        (Some(text), None) => {
            let f = parse_formula(text)?;
            vec![growth_row(
                String::new(),
                &engines.growth(&f, mode_for(cfg, f.edges()))?,
                d,
            )]
        }
        (None, None) => return Err(CliError::Usage("give a formula or --koch MAX".into())),
    };
    render_table(cfg, &POLYTWIN_HEADER, rows)
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    level_max_n: usize,
    seed: u64,
    inject_fault: bool,
    passed: bool,
    suites: &'a [crate::verify::SuiteResult],
}

fn cmd_verify(vcfg: VerifyConfig, cfg: &Config) -> Result<Output, CliError> {
    let verifier = Verifier::new(vcfg.clone())?;
    let results = verifier.run_all()?;
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.name)
        .collect();
    let body = match cfg.format {
        Format::Json => json_string(&serde_json::to_value(VerifyReport {
            level_max_n: vcfg.max_n,
            seed: vcfg.seed,
            inject_fault: vcfg.inject_fault,
            passed: failed.is_empty(),
            suites: &results,
        })?)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        r.name.to_string(),
                        if r.passed() { "PASS" } else { "FAIL" }.to_string(),
                        r.checks.to_string(),
                        r.failures.to_string(),
                        r.details.join("; "),
                    ]
                })
                .collect();
            csv_string(&["suite", "status", "checks", "failures", "details"], &rows)?
        }
        Format::Text => {
            let mut out = String::new();
            for r in &results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                out += &format!(
                    "{status} {:<18} {:>7} checks {:>6} ms\n",
                    r.name, r.checks, r.millis
                );
                for d in &r.details {
                    out += &format!("     {d}\n");
                }
            }
            out += &format!(
                "{} of {} suites passed\n",
                results.len() - failed.len(),
                results.len()
            );
            out
        }
    };
    let failure =
        (!failed.is_empty()).then(|| format!("verification failed: {}", failed.join(", ")));
    Ok(Output { body, failure })
}

pub const REALIZE_HEADER: [&str; 4] = ["x_num", "x_den", "y_num", "y_den"];

fn cmd_realize(text: &str, cfg: &Config) -> Result<String, CliError> {
    let f = parse_formula(text)?;
    let pts = realize(&f)?;
    let rows: Vec<Vec<String>> = pts
        .rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect())
        .collect();
    match cfg.format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    Value::Object(
                        REALIZE_HEADER
                            .iter()
                            .zip(r)
                            .map(|(h, c)| (h.to_string(), Value::String(c.clone())))
                            .collect(),
                    )
                })
                .collect();
            json_string(&Value::Array(items))
        }
        Format::Csv | Format::Text => csv_string(&REALIZE_HEADER, &rows),
    }
}

fn cmd_enumerate(n: usize, count_only: bool, cfg: &Config) -> Result<String, CliError> {
    let mut formulas = Vec::new();
    let (mut total, mut upward) = (0u64, 0u64);
    for f in enumerate_chains(n)? {
        total += 1;
        upward += f.is_upward() as u64;
        if !count_only {
            formulas.push((f.to_string(), f.is_upward()));
        }
    }
    let downward = total - upward;
    match cfg.format {
        Format::Text => {
            let mut out = String::new();
            for (f, _) in &formulas {
                out += f;
                out.push('\n');
            }
            out += &format!("total {total} upward {upward} downward {downward}\n");
            Ok(out)
        }
        Format::Csv if count_only => csv_string(
            &["n", "total", "upward", "downward"],
            &[vec![
                n.to_string(),
                total.to_string(),
                upward.to_string(),
                downward.to_string(),
            ]],
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = formulas
                .iter()
                .map(|(f, up)| vec![f.clone(), up.to_string()])
                .collect();
            csv_string(&["formula", "upward"], &rows)
        }
        Format::Json => {
            let mut v = json!({"n": n, "total": total, "upward": upward, "downward": downward});
            if !count_only {
                v["formulas"] = json!(formulas.iter().map(|(f, _)| f).collect::<Vec<_>>());
            }
            json_string(&v)
        }
    }
}
