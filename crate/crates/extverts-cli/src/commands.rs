use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use extverts::algebra::{
    rat_from_str, rat_int, ratfun_to_json, MPoly, QSeries, Rat, RatFun, Var,
};
use extverts::geometry::{
    euler_class, ext_character_hooks, ext_character_ratfun, nekrasov_product, nekrasov_sum,
    serre_dual, Character,
};
use extverts::partitions::Partition;
use extverts::symfunc::{pieri_lhs, pieri_rhs, JackTable};
use extverts::vertex::{gamma_trace, w_matrix_element};

use crate::report::{CaseResult, Report};

/// Exact computations on Hilbert schemes of points: Jack polynomials,
/// Ext characters, vertex-operator matrix elements, and the
/// adjoint-matter partition function, with verification sweeps.
#[derive(Parser)]
#[command(name = "extverts", version)]
pub struct Cli {
    /// Jack cache directory (overrides the EXTVERTS_CACHE variable)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the power-sum expansion of the integral Jack polynomial J_μ
    Jack {
        /// Partition, e.g. "2,1" ("0" or "" for ∅)
        partition: String,
        /// Substitute an exact rational value for θ (default: symbolic)
        #[arg(long)]
        theta: Option<String>,
    },
    /// Run a verification sweep and write a report
    Verify {
        /// Which identity to sweep
        suite: Suite,
        /// Largest partition size in the sweep
        #[arg(long, default_value_t = 3)]
        max_size: u32,
        /// Series order for the trace suite
        #[arg(long)]
        order: Option<usize>,
        /// Write the JSON report to this path
        #[arg(long)]
        report: Option<PathBuf>,
        /// Only run the case with this key (as printed in reports)
        #[arg(long)]
        case: Option<String>,
        /// Self-test hook: negate the reference side so the failure path
        /// and witness emission can be exercised end to end
        #[arg(long, hide = true)]
        inject_failure: bool,
    },
    /// Print the instanton partition function (fixed-point sum and
    /// closed product form)
    Nekrasov {
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Exact rational value for the mass m
        #[arg(long)]
        m: Option<String>,
        /// Exact rational value for t1 (must keep t1·t2 ≠ 0)
        #[arg(long)]
        t1: Option<String>,
        /// Exact rational value for t2 (must keep t1·t2 ≠ 0)
        #[arg(long)]
        t2: Option<String>,
    },
    /// Print the Ext-bundle character at a fixed-point pair
    ExtChar { lambda: String, mu: String },
    /// Print the vertex-operator matrix element ⟨Γ f_λ, f_μ⟩
    MatrixElement { lambda: String, mu: String },
    /// Manage the Jack polynomial cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Pieri evaluation: lhs = rhs in ℚ(m, θ)
    Pieri,
    /// Ext character: ratio route = hook route, with the rank count
    Character,
    /// Serre duality at character and matrix-element level
    Serre,
    /// Specialization bridge: Euler class at t1=1, t2=−θ vs the Pieri rhs
    Bridge,
    /// Three-way trace identity: sum = product = operator trace
    Trace,
    /// Vertex-operator matrix elements = mass-twisted Euler classes
    Theorem,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Pieri => "pieri",
            Suite::Character => "character",
            Suite::Serre => "serre",
            Suite::Bridge => "bridge",
            Suite::Trace => "trace",
            Suite::Theorem => "theorem",
        }
    }
}

#[derive(Subcommand)]
enum CacheAction {
    /// Entry count and maximum cached degree
    Stats,
    /// Remove the cache file
    Clear,
    /// Print the cache file path
    Path,
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("EXTVERTS_CACHE").map(PathBuf::from));
    let table = match &cache_dir {
        Some(dir) => JackTable::with_cache_dir(dir.clone())
            .with_context(|| format!("loading Jack cache from {}", dir.display()))?,
        None => JackTable::new(),
    };

    match cli.command {
        Command::Jack { ref partition, ref theta } => {
            cmd_jack(partition, theta.as_deref(), cli.format, &table)?;
            table.persist()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_size,
            order,
            ref report,
            ref case,
            inject_failure,
        } => {
            let rep = cmd_verify(suite, max_size, order, case.as_deref(), inject_failure, &table)?;
            table.persist()?;
            match cli.format {
                Format::Text => print!("{}", rep.to_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&rep.to_json())?),
                Format::Csv => print!("{}", rep.to_csv()),
            }
            if let Some(path) = report {
                std::fs::write(path, serde_json::to_string_pretty(&rep.to_json())?)
                    .with_context(|| format!("writing report to {}", path.display()))?;
            }
            Ok(if rep.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Nekrasov { order, ref m, ref t1, ref t2 } => {
            cmd_nekrasov(order, m.as_deref(), t1.as_deref(), t2.as_deref(), cli.format)
        }
        Command::ExtChar { ref lambda, ref mu } => {
            cmd_ext_char(lambda, mu, cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::MatrixElement { ref lambda, ref mu } => {
            cmd_matrix_element(lambda, mu, cli.format, &table)?;
            table.persist()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cache { ref action } => {
            cmd_cache(action, &table)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition> {
    Partition::parse(s).map_err(|e| anyhow!("{e}"))
}

fn parse_rat(s: &str) -> Result<Rat> {
    rat_from_str(s).map_err(|e| anyhow!("{e}"))
}

fn cmd_jack(
    partition: &str,
    theta: Option<&str>,
    format: Format,
    table: &JackTable,
) -> Result<()> {
    let mu = parse_partition(partition)?;
    let jack = table.jack(&mu);
    let expansion = match theta {
        Some(value) => {
            let value = parse_rat(value)?;
            if value.numer() == &0.into() {
                bail!("θ = 0 is outside the coefficient field");
            }
            jack.expansion
                .substitute(Var::Theta, &RatFun::from_rat(value))?
        }
        None => jack.expansion.clone(),
    };
    match format {
        Format::Json | Format::Csv => {
            let coeffs: Vec<serde_json::Value> = expansion
                .terms()
                .map(|(l, c)| {
                    serde_json::json!({
                        "partition": l.serialize(),
                        "coeff": ratfun_to_json(c),
                        "coeff_text": format!("{c}"),
                    })
                })
                .collect();
            let obj = serde_json::json!({
                "partition": mu.serialize(),
                "expansion": coeffs,
                "text": format!("{expansion}"),
            });
            println!("{}", serde_json::to_string_pretty(&obj)?);
        }
        Format::Text => {
            println!("J_({}) = {}", mu.serialize(), expansion);
        }
    }
    Ok(())
}

fn size_pairs(max_size: u32) -> Vec<(Partition, Partition)> {
    let all = Partition::enumerate_up_to(max_size);
    let mut pairs = Vec::new();
    for l in &all {
        for u in &all {
            pairs.push((l.clone(), u.clone()));
        }
    }
    pairs
}

fn pair_key(l: &Partition, u: &Partition) -> String {
    format!("lambda={};mu={}", l.serialize(), u.serialize())
}

fn cmd_verify(
    suite: Suite,
    max_size: u32,
    order: Option<usize>,
    case_filter: Option<&str>,
    inject_failure: bool,
    table: &JackTable,
) -> Result<Report> {
    if max_size > 6 {
        eprintln!("warning: sweeps above size 6 may take a while");
    }
    let started = Instant::now();
    let mut cases = match suite {
        Suite::Pieri => {
            let pairs = size_pairs(max_size);
            pairs
                .par_iter()
                .map(|(l, u)| {
                    let lhs = pieri_lhs(l, u, table);
                    let mut rhs = pieri_rhs(l, u);
                    if inject_failure {
                        rhs = -&rhs;
                    }
                    CaseResult {
                        key: pair_key(l, u),
                        pass: lhs == rhs,
                        lhs: format!("{lhs}"),
                        rhs: format!("{rhs}"),
                        detail: None,
                    }
                })
                .collect()
        }
        Suite::Character => {
            let pairs = size_pairs(max_size);
            pairs
                .par_iter()
                .map(|(l, u)| {
                    let hooks = ext_character_hooks(l, u);
                    let via_ratio = ext_character_ratfun(l, u);
                    let expected_mass = (l.size() + u.size()) as i64;
                    match via_ratio {
                        Ok(c) => {
                            let pass = c == hooks && hooks.mass() == expected_mass;
                            CaseResult {
                                key: pair_key(l, u),
                                pass,
                                lhs: format!("{hooks}"),
                                rhs: format!("{c}"),
                                detail: Some(format!(
                                    "mass {} (expected {expected_mass})",
                                    hooks.mass()
                                )),
                            }
                        }
                        Err(e) => CaseResult {
                            key: pair_key(l, u),
                            pass: false,
                            lhs: format!("{hooks}"),
                            rhs: format!("error: {e}"),
                            detail: None,
                        },
                    }
                })
                .collect()
        }
        Suite::Serre => {
            let mut out: Vec<CaseResult> = Vec::new();
            let pairs = size_pairs(max_size);
            let char_level: Vec<CaseResult> = pairs
                .par_iter()
                .map(|(l, u)| {
                    let lhs = ext_character_hooks(l, u);
                    let rhs = serre_dual(&ext_character_hooks(u, l));
                    CaseResult {
                        key: format!("char:{}", pair_key(l, u)),
                        pass: lhs == rhs,
                        lhs: format!("{lhs}"),
                        rhs: format!("{rhs}"),
                        detail: None,
                    }
                })
                .collect();
            out.extend(char_level);
            let op_pairs = size_pairs(max_size.min(3));
            let op_level: Vec<CaseResult> = op_pairs
                .par_iter()
                .map(|(l, u)| serre_operator_case(l, u, table))
                .collect();
            out.extend(op_level);
            out
        }
        Suite::Bridge => {
            let pairs = size_pairs(max_size);
            pairs
                .par_iter()
                .map(|(l, u)| {
                    let case = bridge_case(l, u);
                    match case {
                        Ok(c) => c,
                        Err(e) => CaseResult {
                            key: pair_key(l, u),
                            pass: false,
                            lhs: String::new(),
                            rhs: format!("error: {e}"),
                            detail: None,
                        },
                    }
                })
                .collect()
        }
        Suite::Trace => {
            let order = order.unwrap_or(max_size as usize);
            let sum = nekrasov_sum(order);
            let product = nekrasov_product(order);
            let trace = gamma_trace(order);
            let width = order.to_string().len();
            let mut out = Vec::new();
            for k in 0..=order {
                out.push(CaseResult {
                    key: format!("sum=product;q^{k:0width$}"),
                    pass: sum.coeff(k) == product.coeff(k),
                    lhs: format!("{}", sum.coeff(k)),
                    rhs: format!("{}", product.coeff(k)),
                    detail: None,
                });
                out.push(CaseResult {
                    key: format!("trace=sum;q^{k:0width$}"),
                    pass: trace.coeff(k) == sum.coeff(k),
                    lhs: format!("{}", trace.coeff(k)),
                    rhs: format!("{}", sum.coeff(k)),
                    detail: None,
                });
            }
            out
        }
        Suite::Theorem => {
            let pairs = size_pairs(max_size);
            pairs
                .par_iter()
                .map(|(l, u)| theorem_case(l, u, table))
                .collect()
        }
    };

    if let Some(filter) = case_filter {
        cases.retain(|c| c.key == filter);
        if cases.is_empty() {
            bail!("no case matches key '{filter}'");
        }
    }
    // worker scheduling must not leak into the output
    cases.sort_by(|a, b| a.key.cmp(&b.key));

    Ok(Report {
        command: format!("verify {}", suite.name()),
        parameters: serde_json::json!({
            "suite": suite.name(),
            "max_size": max_size,
            "order": order,
            "case": case_filter,
            "inject_failure": inject_failure,
        }),
        cases,
        duration: started.elapsed(),
    })
}

/// Matrix-element Serre relation: w(λ,μ; m) at z^d equals
/// (−1)^{|λ|+|μ|} · w(μ,λ; −t1−t2−m) at z^{−d}.
fn serre_operator_case(l: &Partition, u: &Partition, table: &JackTable) -> CaseResult {
    let lhs = w_matrix_element(l, u, table);
    let rhs_raw = w_matrix_element(u, l, table);
    let minus_t1t2_m = {
        let t1 = RatFun::var(Var::T1);
        let t2 = RatFun::var(Var::T2);
        let m = RatFun::var(Var::M);
        &(&-&t1 - &t2) - &m
    };
    let sign = if (l.size() + u.size()).is_multiple_of(2) { 1 } else { -1 };
    let mut rhs: Vec<(i64, RatFun)> = Vec::new();
    for (zp, value) in &rhs_raw {
        let v = value
            .substitute(Var::M, &minus_t1t2_m)
            .expect("affine substitution");
        rhs.push((-zp, v.scale_rat(&rat_int(sign))));
    }
    rhs.sort_by_key(|(zp, _)| *zp);
    let lhs_vec: Vec<(i64, RatFun)> = lhs.into_iter().collect();
    let pass = lhs_vec == rhs;
    CaseResult {
        key: format!("op:{}", pair_key(l, u)),
        pass,
        lhs: graded_to_string(&lhs_vec),
        rhs: graded_to_string(&rhs),
        detail: None,
    }
}

/// Bridge: pieri_rhs(λ,μ) = (−1)^{|λ|} θ^{−|λ|−|μ|} ·
/// euler(ext(λ,μ), mass on) |_{t1=1, t2=−θ}.
fn bridge_case(l: &Partition, u: &Partition) -> Result<CaseResult> {
    let c = ext_character_hooks(l, u);
    let euler = euler_class(&c, true)?;
    let value = RatFun::from_mpoly(euler.value());
    let specialized = value
        .eval_var(Var::T1, &rat_int(1))?
        .substitute(Var::T2, &-&RatFun::var(Var::Theta))?;
    let theta_pow = RatFun::from_mpoly(MPoly::var_pow(
        Var::Theta,
        (l.size() + u.size()) as i32,
    ));
    let sign = if l.size().is_multiple_of(2) { 1 } else { -1 };
    let lhs = pieri_rhs(l, u);
    let rhs = specialized
        .scale_rat(&rat_int(sign))
        .try_div(&theta_pow)?;
    Ok(CaseResult {
        key: pair_key(l, u),
        pass: lhs == rhs,
        lhs: format!("{lhs}"),
        rhs: format!("{rhs}"),
        detail: None,
    })
}

/// Theorem 1 in equivariant form: ⟨Γ f_λ, f_μ⟩ equals the mass-twisted
/// Euler class, supported on exactly z^{|μ|−|λ|}.
fn theorem_case(l: &Partition, u: &Partition, table: &JackTable) -> CaseResult {
    let w = w_matrix_element(l, u, table);
    let expected_z = u.size() as i64 - l.size() as i64;
    let euler = euler_class(&ext_character_hooks(l, u), true)
        .expect("Ext characters are effective")
        .to_ratfun();
    let w_vec: Vec<(i64, RatFun)> = w.into_iter().collect();
    let pass = w_vec.len() == 1 && w_vec[0].0 == expected_z && w_vec[0].1 == euler;
    CaseResult {
        key: pair_key(l, u),
        pass,
        lhs: graded_to_string(&w_vec),
        rhs: format!("z^{expected_z}·({euler})"),
        detail: None,
    }
}

fn graded_to_string(graded: &[(i64, RatFun)]) -> String {
    if graded.is_empty() {
        return "0".to_string();
    }
    graded
        .iter()
        .map(|(zp, v)| format!("z^{zp}·({v})"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cmd_nekrasov(
    order: usize,
    m: Option<&str>,
    t1: Option<&str>,
    t2: Option<&str>,
    format: Format,
) -> Result<ExitCode> {
    let assignments: Vec<(Var, Rat)> = [(Var::M, m), (Var::T1, t1), (Var::T2, t2)]
        .into_iter()
        .filter_map(|(v, s)| s.map(|s| parse_rat(s).map(|r| (v, r))))
        .collect::<Result<_>>()?;
    for (v, value) in &assignments {
        if matches!(v, Var::T1 | Var::T2) && value.numer() == &0.into() {
            bail!("specialization {} = 0 annihilates t1·t2", v.name());
        }
    }
    let specialize = |s: &QSeries| -> Result<QSeries> {
        let mut s = s.clone();
        for (v, value) in &assignments {
            s = s.eval_var(*v, value)?;
        }
        Ok(s)
    };
    let sum = specialize(&nekrasov_sum(order))?;
    let product = specialize(&nekrasov_product(order))?;
    let matches = sum == product;
    match format {
        Format::Json | Format::Csv => {
            let obj = serde_json::json!({
                "order": order,
                "fixed_point_sum": format!("{sum}"),
                "product_form": format!("{product}"),
                "match": matches,
            });
            println!("{}", serde_json::to_string_pretty(&obj)?);
        }
        Format::Text => {
            println!("fixed-point sum: {sum}");
            println!("product form:    {product}");
            if !matches {
                println!("MISMATCH between the two forms");
            }
        }
    }
    Ok(if matches {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_ext_char(lambda: &str, mu: &str, format: Format) -> Result<()> {
    let l = parse_partition(lambda)?;
    let u = parse_partition(mu)?;
    let hooks = ext_character_hooks(&l, &u);
    let via_ratio = ext_character_ratfun(&l, &u)?;
    let agree = hooks == via_ratio;
    match format {
        Format::Json | Format::Csv => {
            let obj = serde_json::json!({
                "lambda": l.serialize(),
                "mu": u.serialize(),
                "character": hooks.to_json(),
                "mass": hooks.mass(),
                "routes_agree": agree,
            });
            println!("{}", serde_json::to_string_pretty(&obj)?);
        }
        Format::Text => {
            println!("[E|({},{})] = {}", l.serialize(), u.serialize(), hooks);
            println!("rank: {}", hooks.mass());
            if !agree {
                println!("MISMATCH between hook and ratio routes");
            }
        }
    }
    Ok(())
}

fn cmd_matrix_element(lambda: &str, mu: &str, format: Format, table: &JackTable) -> Result<()> {
    let l = parse_partition(lambda)?;
    let u = parse_partition(mu)?;
    let w = w_matrix_element(&l, &u, table);
    let w_vec: Vec<(i64, RatFun)> = w.into_iter().collect();
    match format {
        Format::Json | Format::Csv => {
            let elements: Vec<serde_json::Value> = w_vec
                .iter()
                .map(|(zp, v)| {
                    serde_json::json!({
                        "lambda": l.serialize(),
                        "mu": u.serialize(),
                        "zpower": zp,
                        "value": ratfun_to_json(v),
                        "value_text": format!("{v}"),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(elements))?
            );
        }
        Format::Text => {
            println!(
                "<Γ f_({}), f_({})> = {}",
                l.serialize(),
                u.serialize(),
                graded_to_string(&w_vec)
            );
        }
    }
    Ok(())
}

fn cmd_cache(action: &CacheAction, table: &JackTable) -> Result<()> {
    match action {
        CacheAction::Stats => match table.cache_file() {
            Some(path) => {
                let (entries, max_degree) = table.stats();
                println!("cache file: {}", path.display());
                println!("entries: {entries}");
                println!("max cached degree: {max_degree}");
            }
            None => {
                println!("no cache directory configured (set --cache-dir or EXTVERTS_CACHE)");
                println!("entries: 0");
            }
        },
        CacheAction::Clear => {
            table
                .clear_cache_file()
                .context("removing the cache file")?;
            println!("cache cleared");
        }
        CacheAction::Path => match table.cache_file() {
            Some(path) => println!("{}", path.display()),
            None => println!("(none)"),
        },
    }
    Ok(())
}

/// A character value is printable in every format the CLI offers.
#[allow(dead_code)]
fn character_text(c: &Character) -> String {
    format!("{c}")
}
