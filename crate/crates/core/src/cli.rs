//! The `kappa` command-line surface: divisor tables, single-query answers,
//! and the verification suites, with stable text/json/csv output.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::builder::TypedValueParser;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bernoulli::{bernoulli_paper, den_b_over_2i};
use crate::divisor::{
    adams_valuation_closed, adams_valuation_direct, akita_vanishes, resolve, DivisorReport,
    ValuationLemmaQuery,
};
use crate::dl::bss_report;
use crate::numtheory::{choose_k, is_prime, Valuation};
use crate::verify::{run_suite, Suite};
use crate::wu::wu_total_inverse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "kappa",
    version,
    about = "Exact divisibility invariants of the stable Miller-Morita-Mumford classes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for data commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Prepend a header row to CSV output.
    #[arg(long, global = true)]
    pub header: bool,

    /// Worker threads for table generation. Output order is by index
    /// regardless of scheduling.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=512))]
    pub jobs: Option<u64>,

    /// Print a provenance line to stderr, outside any data body.
    #[arg(long, global = true)]
    pub stamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Divisors D_i for i = 1..=max-i.
    #[command(name = "d-table")]
    DTable {
        /// Largest index; capped where exact Bernoulli arithmetic stays fast.
        #[arg(long = "max-i", value_parser = clap::value_parser!(u64).range(1..=999))]
        max_i: u64,
    },
    /// Mod-p vanishing of kappa_i for i = 1..=max-i.
    Akita {
        /// The prime modulus.
        #[arg(long)]
        p: u64,
        #[arg(long = "max-i", value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        max_i: u64,
    },
    /// Bernoulli numbers B_i (absolute-value convention) and den(B_i/2i).
    Bernoulli {
        /// Single index.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=500), conflicts_with = "max_i")]
        i: Option<u64>,
        /// Table up to this index.
        #[arg(long = "max-i", value_parser = clap::value_parser!(u64).range(1..=500))]
        max_i: Option<u64>,
    },
    /// nu_p(1 - (-k)^s), exact and (where the choice of k qualifies) by the
    /// closed form.
    Valuation {
        /// The prime p of the valuation.
        #[arg(long)]
        p: u64,
        /// Defaults to the canonical k(p).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
        /// The exponent in 1 - (-k)^s.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        s: u64,
    },
    /// Coefficients of the inverse total Wu class over F_p.
    Wu {
        /// The prime of the coefficient field.
        #[arg(long)]
        p: u64,
        /// Truncation degree of the series.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000).map(|v| v as usize))]
        trunc: usize,
    },
    /// The mod-2 spectral-sequence verification report.
    Bss {
        /// Truncation degree of the ambient basis.
        #[arg(long = "max-deg", default_value_t = 6, value_parser = clap::value_parser!(u32).range(5..=8))]
        max_deg: u32,
    },
    /// Run a verification suite and exit 0 only if every check passes.
    Verify {
        /// One of: divisor, akita, wu, bernoulli, bss, all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Entry point shared by the binary and the tests. Returns the process exit
/// code: 0 success, 1 verification failure, 2 usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.stamp {
        eprintln!(
            "# kappa {} :: {}",
            env!("CARGO_PKG_VERSION"),
            command_name(&cli.command)
        );
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::DTable { .. } => "d-table",
        Command::Akita { .. } => "akita",
        Command::Bernoulli { .. } => "bernoulli",
        Command::Valuation { .. } => "valuation",
        Command::Wu { .. } => "wu",
        Command::Bss { .. } => "bss",
        Command::Verify { .. } => "verify",
    }
}

fn require_prime(p: u64) -> Result<(), String> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(format!("--p {p}: not a prime"))
    }
}

fn dispatch(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::DTable { max_i } => {
            print!("{}", d_table_output(*max_i, cli)?);
            Ok(0)
        }
        Command::Akita { p, max_i } => {
            require_prime(*p)?;
            print!("{}", akita_output(*p, *max_i, cli));
            Ok(0)
        }
        Command::Bernoulli { i, max_i } => {
            let range = match (i, max_i) {
                (Some(i), None) => *i..=*i,
                (None, Some(m)) => 1..=*m,
                (None, None) => return Err("choose one of --i or --max-i".into()),
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            print!("{}", bernoulli_output(range, cli));
            Ok(0)
        }
        Command::Valuation { p, k, s } => {
            require_prime(*p)?;
            let k = match k {
                Some(k) => *k,
                None => choose_k(*p).map_err(|e| e.to_string())?.k,
            };
            if k % *p == 0 {
                return Err(format!("--k {k}: must be coprime to p = {p}"));
            }
            print!("{}", valuation_output(*p, k, *s, cli));
            Ok(0)
        }
        Command::Wu { p, trunc } => {
            require_prime(*p)?;
            print!("{}", wu_output(*p, *trunc, cli));
            Ok(0)
        }
        Command::Bss { max_deg } => {
            print!("{}", bss_output(*max_deg, cli)?);
            Ok(0)
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            Ok(verify_and_print(suite))
        }
    }
}

fn d_table_output(max_i: u64, cli: &Cli) -> Result<String, String> {
    let reports: Vec<DivisorReport> = match cli.jobs {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build()
                .map_err(|e| e.to_string())?;
            log::info!("d-table over {n} workers");
            pool.install(|| (1..=max_i).into_par_iter().map(resolve).collect())
        }
        _ => (1..=max_i).map(resolve).collect(),
    };
    let mut out = String::new();
    match cli.format {
        Format::Csv => {
            if cli.header {
                out.push_str("i,D_value\n");
            }
            for r in &reports {
                writeln!(out, "{},{}", r.index, r.d_value()).unwrap();
            }
        }
        Format::Json => {
            let array = Value::Array(reports.iter().map(DivisorReport::to_json).collect());
            out.push_str(&serde_json::to_string_pretty(&array).unwrap());
            out.push('\n');
        }
        Format::Text => {
            for r in &reports {
                writeln!(
                    out,
                    "D_{} = {} = {}  (lower {}, upper {})",
                    r.index,
                    r.d_value(),
                    r.factorization_string(),
                    r.lower,
                    r.upper
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

fn akita_output(p: u64, max_i: u64, cli: &Cli) -> String {
    let rows: Vec<(u64, bool)> = (1..=max_i).map(|i| (i, akita_vanishes(p, i))).collect();
    let mut out = String::new();
    match cli.format {
        Format::Csv => {
            if cli.header {
                out.push_str("i,vanishes\n");
            }
            for (i, v) in &rows {
                writeln!(out, "{i},{v}").unwrap();
            }
        }
        Format::Json => {
            let array = Value::Array(
                rows.iter()
                    .map(|(i, v)| json!({"p": p, "i": i, "vanishes": v}))
                    .collect(),
            );
            out.push_str(&serde_json::to_string_pretty(&array).unwrap());
            out.push('\n');
        }
        Format::Text => {
            for (i, v) in &rows {
                writeln!(
                    out,
                    "i={i}: kappa_i {} mod {p}",
                    if *v { "vanishes" } else { "is nonzero" }
                )
                .unwrap();
            }
        }
    }
    out
}

fn bernoulli_output(range: std::ops::RangeInclusive<u64>, cli: &Cli) -> String {
    let mut out = String::new();
    if cli.format == Format::Csv && cli.header {
        out.push_str("i,B,den_B_over_2i\n");
    }
    let mut json_rows = Vec::new();
    for i in range {
        let b = bernoulli_paper(i).paper_value;
        let den = den_b_over_2i(i);
        match cli.format {
            Format::Csv => writeln!(out, "{i},{b},{den}").unwrap(),
            Format::Text => writeln!(out, "B_{i} = {b}, den(B_{i}/{}) = {den}", 2 * i).unwrap(),
            Format::Json => json_rows.push(json!({
                "i": i,
                "B": b.to_string(),
                "den_B_over_2i": den.to_string(),
            })),
        }
    }
    if cli.format == Format::Json {
        out.push_str(&serde_json::to_string_pretty(&Value::Array(json_rows)).unwrap());
        out.push('\n');
    }
    out
}

fn valuation_output(p: u64, k: u64, s: u64, cli: &Cli) -> String {
    let q = ValuationLemmaQuery::new(p, k, s);
    let direct = adams_valuation_direct(q).expect("p prime and k coprime checked");
    let closed = adams_valuation_closed(q).ok();
    let fmt_val = |v: Valuation| v.to_string();
    let mut out = String::new();
    match cli.format {
        Format::Csv => {
            if cli.header {
                out.push_str("p,k,s,direct,closed\n");
            }
            writeln!(
                out,
                "{p},{k},{s},{},{}",
                fmt_val(direct),
                closed.map(fmt_val).unwrap_or_default()
            )
            .unwrap();
        }
        Format::Json => {
            let closed_json = match closed {
                Some(Valuation::Finite(v)) => json!(v),
                Some(Valuation::Infinite) => json!("inf"),
                None => Value::Null,
            };
            let direct_json = match direct {
                Valuation::Finite(v) => json!(v),
                Valuation::Infinite => json!("inf"),
            };
            let obj = json!({
                "p": p, "k": k, "s": s,
                "direct": direct_json,
                "closed": closed_json,
            });
            out.push_str(&serde_json::to_string_pretty(&obj).unwrap());
            out.push('\n');
        }
        Format::Text => {
            write!(out, "nu_{p}(1 - (-{k})^{s}) = {}", fmt_val(direct)).unwrap();
            match closed {
                Some(c) if c == direct => writeln!(out, "  (closed form agrees)").unwrap(),
                Some(c) => writeln!(out, "  (closed form: {})", fmt_val(c)).unwrap(),
                None => writeln!(out, "  (closed form n/a for this k)").unwrap(),
            }
        }
    }
    out
}

fn wu_output(p: u64, trunc: usize, cli: &Cli) -> String {
    let series = wu_total_inverse(p, trunc);
    let mut out = String::new();
    match cli.format {
        Format::Csv => {
            if cli.header {
                out.push_str("m,coeff\n");
            }
            for (m, c) in series.coeffs().iter().enumerate() {
                writeln!(out, "{m},{c}").unwrap();
            }
        }
        Format::Json => {
            let obj = json!({"p": p, "trunc": trunc, "coeffs": series.coeffs()});
            out.push_str(&serde_json::to_string_pretty(&obj).unwrap());
            out.push('\n');
        }
        Format::Text => {
            writeln!(out, "(1 + e^{})^-1 over F_{p}, through e^{trunc}:", p - 1).unwrap();
            writeln!(out, "{series}").unwrap();
        }
    }
    out
}

fn bss_output(max_deg: u32, cli: &Cli) -> Result<String, String> {
    let report = bss_report(max_deg).map_err(|e| e.to_string())?;
    let mut out = String::new();
    match cli.format {
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&report.to_json()).unwrap());
            out.push('\n');
        }
        Format::Csv => {
            if cli.header {
                out.push_str("key,value\n");
            }
            for ((d, c), n) in &report.basis_sizes {
                writeln!(out, "basis_size.{d}.{c},{n}").unwrap();
            }
            for (name, v) in &report.cycles {
                writeln!(out, "cycle.{name},{v}").unwrap();
            }
            for (name, v) in &report.primitive {
                writeln!(out, "primitive.{name},{v}").unwrap();
            }
            writeln!(
                out,
                "flag.h3_two_torsion_is_Z4,{}",
                report.flags.h3_two_torsion_is_z4
            )
            .unwrap();
            writeln!(
                out,
                "flag.squaring_map_not_injective,{}",
                report.flags.squaring_map_not_injective
            )
            .unwrap();
            writeln!(out, "flag.not_polynomial,{}", report.flags.not_polynomial).unwrap();
        }
        Format::Text => {
            writeln!(
                out,
                "ambient basis sizes (component 0), cap {}:",
                report.cap
            )
            .unwrap();
            for ((d, _), n) in &report.basis_sizes {
                writeln!(out, "  degree {d}: {n}").unwrap();
            }
            writeln!(out, "d1-cycles:").unwrap();
            for (name, v) in &report.cycles {
                writeln!(
                    out,
                    "  {name}: {}",
                    if *v { "cycle" } else { "NOT a cycle" }
                )
                .unwrap();
            }
            for b in &report.boundaries {
                writeln!(out, "boundary: {} = d1({})", b.element, b.witness).unwrap();
            }
            writeln!(out, "primitive:").unwrap();
            for (name, v) in &report.primitive {
                writeln!(out, "  {name}: {v}").unwrap();
            }
            writeln!(out, "free ranks (degrees 2..4): {:?}", report.free_ranks).unwrap();
            writeln!(out, "flags:").unwrap();
            writeln!(
                out,
                "  h3_two_torsion_is_Z4: {}",
                report.flags.h3_two_torsion_is_z4
            )
            .unwrap();
            writeln!(
                out,
                "  squaring_map_not_injective: {}",
                report.flags.squaring_map_not_injective
            )
            .unwrap();
            writeln!(out, "  not_polynomial: {}", report.flags.not_polynomial).unwrap();
        }
    }
    Ok(out)
}

fn verify_and_print(suite: Suite) -> i32 {
    let checks = run_suite(suite);
    let mut failed = 0;
    for c in &checks {
        if c.passed {
            println!("PASS  {:34} [{}]", c.id, c.rule);
        } else {
            failed += 1;
            println!("FAIL  {:34} [{}] {}", c.id, c.rule, c.detail);
        }
    }
    println!("verify {suite}: {} checks, {} failed", checks.len(), failed);
    if failed == 0 {
        0
    } else {
        1
    }
}
