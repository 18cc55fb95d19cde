use std::process::ExitCode;

use clap::error::ContextKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pierimaps::algebra::PolyMatrix;
use pierimaps::pieri::{pieri_map, saturated_zform, zform, RemovalPlan};
use pierimaps::resolution::{
    build_complex, coker_module_through, default_bound, herzog_kuhl_constant, pure_free, pure_free_betti, sweep,
    verify_exactness, BettiTable, DegreeSequence,
};
use pierimaps::schur::straighten;
use pierimaps::tableaux::{dimension, enumerate_ssyt, Filling, Partition, Tableau};
use pierimaps::Error;

/// Pieri inclusions, Schur modules and equivariant pure resolutions.
///
/// Parallel work honours RAYON_NUM_THREADS; output does not depend on it.
#[derive(Parser, Debug)]
#[command(name = "pierimaps", version)]
struct Cli {
    /// Output serialization.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Read and print tableau labels as 0..n-1.
    #[arg(long, global = true)]
    zero_based: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    M2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ZForm {
    /// Columns scaled to primitive integer vectors.
    Primitive,
    /// Primitive columns with the p-torsion of the cokernel removed.
    Saturated,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List semistandard tableaux of a shape.
    Ssyt(ShapeArgs),
    /// Dimension of a Schur module.
    Dim(ShapeArgs),
    /// Expand a filling in the semistandard basis.
    Straighten {
        /// Rows as JSON, e.g. [[2,3],[2]].
        #[arg(long, value_parser = parse_filling)]
        filling: Rows,
        #[arg(long)]
        n: usize,
    },
    /// Composite Pieri inclusion for an explicit removal order.
    Pieri {
        #[arg(long, value_parser = parse_partition)]
        shape: Partition,
        /// Rows to remove boxes from, in order.
        #[arg(long, value_delimiter = ',', required = true)]
        remove: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// The presentation of the module with pure resolution of degrees d.
    Purefree {
        #[command(flatten)]
        degrees: DegreeArgs,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// All differentials of the equivariant complex.
    Complex {
        #[command(flatten)]
        degrees: DegreeArgs,
    },
    /// Graded Betti table of the cokernel of the presentation.
    Betti {
        #[command(flatten)]
        degrees: DegreeArgs,
        #[command(flatten)]
        field: FieldArgs,
        /// Compute graded pieces through this degree.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Rank check of exactness in every graded degree up to a bound.
    Verify {
        #[command(flatten)]
        degrees: DegreeArgs,
        /// Defaults to the vanishing degree of the cokernel plus n.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Herzog-Kühl proportionality of a pure Betti table.
    Hk {
        #[command(flatten)]
        degrees: DegreeArgs,
        /// Betti numbers beta_{i,d_i}; computed in characteristic 0 when omitted.
        #[arg(long, value_delimiter = ',')]
        betti: Option<Vec<usize>>,
    },
    /// Betti tables for all degree sequences 0 = d_0 < ... < d_n <= top.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        top: i64,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
}

#[derive(Args, Debug)]
struct ShapeArgs {
    #[arg(long, value_parser = parse_partition)]
    shape: Partition,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct DegreeArgs {
    #[arg(long, value_parser = parse_degrees)]
    degrees: DegreeSequence,
    /// Number of variables; must be one less than the number of degrees.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Integral form used in positive characteristic.
    #[arg(long, value_enum, default_value_t = ZForm::Saturated)]
    zform: ZForm,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let parts = parse_list::<usize>(s)?;
    Partition::new(parts).map_err(|e| e.to_string())
}

fn parse_degrees(s: &str) -> Result<DegreeSequence, String> {
    DegreeSequence::new(parse_list::<i64>(s)?).map_err(|e| e.to_string())
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| format!("'{t}' is not a number")))
        .collect()
}

#[derive(Clone, Debug)]
struct Rows(Vec<Vec<u8>>);

fn parse_filling(s: &str) -> Result<Rows, String> {
    serde_json::from_str(s)
        .map(Rows)
        .map_err(|e| format!("expected rows such as [[1,2],[2]]: {e}"))
}

/// A failure attributed to one command-line option.
struct Failure {
    option: Option<String>,
    message: String,
    usage: bool,
}

impl Failure {
    fn usage(option: &str, message: impl Into<String>) -> Self {
        Failure {
            option: Some(option.into()),
            message: message.into(),
            usage: true,
        }
    }

    fn from_lib(option: &str, e: Error) -> Self {
        let usage = !matches!(e, Error::NotFiniteLength(_) | Error::StraighteningDiverged(_));
        Failure {
            option: usage.then(|| option.to_string()),
            message: e.to_string(),
            usage,
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let option = e
                .get(ContextKind::InvalidArg)
                .and_then(|v| v.to_string().split_whitespace().next().map(str::to_string));
            let message = e
                .render()
                .to_string()
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            return report(Failure {
                option,
                message,
                usage: true,
            });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    let kind = if f.usage { "usage" } else { "computation" };
    eprintln!(
        "{}",
        json!({"error": {"kind": kind, "option": f.option, "message": f.message}})
    );
    ExitCode::from(if f.usage { 2 } else { 1 })
}

fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Ssyt(a) => {
            check_rank(&a.shape, a.n)?;
            let ts = enumerate_ssyt(&a.shape, a.n);
            Ok(match fmt {
                Format::Json => json_string(&Value::Array(
                    ts.iter().map(|t| json!(labels(t.rows(), cli.zero_based))).collect(),
                )),
                Format::Text => ts
                    .iter()
                    .map(|t| format!("{}\n", show_tableau(t, cli.zero_based)))
                    .collect(),
                Format::M2 => ts
                    .iter()
                    .map(|t| format!("{}\n", m2_tableau(t, cli.zero_based)))
                    .collect(),
            })
        }
        Command::Dim(a) => {
            check_rank(&a.shape, a.n)?;
            let d = dimension(&a.shape, a.n);
            Ok(match fmt {
                Format::Json => json_string(&json!({"shape": a.shape.parts(), "n": a.n, "dimension": d})),
                _ => d.to_string(),
            })
        }
        Command::Straighten { filling, n } => {
            let rows = if cli.zero_based {
                filling.0.iter().map(|r| r.iter().map(|&e| e + 1).collect()).collect()
            } else {
                filling.0.clone()
            };
            let f = Filling::new(rows, *n).map_err(|e| Failure::from_lib("--filling", e))?;
            let v = straighten(&f).map_err(|e| Failure::from_lib("--filling", e))?;
            Ok(match fmt {
                Format::Json => {
                    let mut terms = v.to_json();
                    for term in &mut terms {
                        term.tableau = labels(&term.tableau, cli.zero_based);
                    }
                    serde_json::to_string(&terms).expect("serializable")
                }
                _ if v.is_zero() => "0".into(),
                _ => {
                    let parts: Vec<String> = v
                        .terms()
                        .map(|(t, c)| format!("{c}*{}", show_tableau(t, cli.zero_based)))
                        .collect();
                    parts.join(" + ").replace("+ -", "- ")
                }
            })
        }
        Command::Pieri {
            shape,
            remove,
            n,
            field,
        } => {
            check_rank(shape, *n)?;
            let plan =
                RemovalPlan::new(shape.clone(), remove.clone(), *n).map_err(|e| Failure::from_lib("--remove", e))?;
            let m = pieri_map(&plan).map_err(|e| Failure::from_lib("--remove", e))?;
            matrix_output(&reduce(&m, field)?, fmt)
        }
        Command::Purefree { degrees, field } => {
            let d = degree_sequence(degrees)?;
            let m = pure_free(&d, d.rank(), 0).map_err(|e| Failure::from_lib("--degrees", e))?;
            matrix_output(&reduce(&m, field)?, fmt)
        }
        Command::Complex { degrees } => {
            let d = degree_sequence(degrees)?;
            let c = build_complex(&d).map_err(|e| Failure::from_lib("--degrees", e))?;
            Ok(match fmt {
                Format::Json => json_string(&json!({
                    "degrees": d.degrees(),
                    "shapes": c.shapes().iter().map(|s| s.parts().to_vec()).collect::<Vec<_>>(),
                    "ranks": c.ranks(),
                    "maps": c.maps().iter().map(|m| serde_json::to_value(m.to_json()).expect("serializable")).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut out = String::new();
                    for (i, (s, r)) in c.shapes().iter().zip(c.ranks()).enumerate() {
                        let free = match d.get(i) {
                            0 => "A".to_string(),
                            e => format!("A(-{e})"),
                        };
                        out.push_str(&format!("F{i} = {free}^{r}  shape {s}\n"));
                    }
                    for (i, m) in c.maps().iter().enumerate() {
                        out.push_str(&format!("\nd{}: F{} -> F{i}\n", i + 1, i + 1));
                        out.push_str(&if fmt == Format::M2 { m.to_m2() } else { m.to_text() });
                    }
                    out
                }
            })
        }
        Command::Betti { degrees, field, bound } => {
            let d = degree_sequence(degrees)?;
            let table = match (bound, field.characteristic) {
                (None, 0) => pure_free_betti(&d, 0).map_err(|e| Failure::from_lib("--degrees", e))?,
                (None, _) if field.zform == ZForm::Saturated => {
                    pure_free_betti(&d, field.characteristic).map_err(|e| Failure::from_lib("--char", e))?
                }
                _ => {
                    let m = reduce(
                        &pure_free(&d, d.rank(), 0).map_err(|e| Failure::from_lib("--degrees", e))?,
                        field,
                    )?;
                    let top = bound.unwrap_or(d.get(d.rank()) + 2);
                    let module = coker_module_through(&m, top).map_err(|e| Failure::from_lib("--bound", e))?;
                    pierimaps::resolution::betti_table(&module)
                }
            };
            Ok(betti_output(&table, fmt))
        }
        Command::Verify { degrees, bound } => {
            let d = degree_sequence(degrees)?;
            let c = build_complex(&d).map_err(|e| Failure::from_lib("--degrees", e))?;
            let bound = match bound {
                Some(b) => *b,
                None => default_bound(&c).map_err(|e| Failure::from_lib("--bound", e))?,
            };
            let report = verify_exactness(&c, bound).map_err(|e| Failure::from_lib("--degrees", e))?;
            Ok(match fmt {
                Format::Json => serde_json::to_string(&report.entries).expect("serializable"),
                _ => {
                    let mut out = format!(
                        "bound {bound}  complex {}  minimal {}\n",
                        report.is_complex, report.minimal
                    );
                    out.push_str("i e expected actual\n");
                    for e in &report.entries {
                        out.push_str(&format!(
                            "{} {} {} {} {}\n",
                            e.i,
                            e.e,
                            e.expected_rank_sum,
                            e.actual,
                            if e.passed() { "ok" } else { "FAIL" }
                        ));
                    }
                    out.push_str(if report.passed() { "exact\n" } else { "NOT exact\n" });
                    out
                }
            })
        }
        Command::Hk { degrees, betti } => {
            let d = degree_sequence(degrees)?;
            let table = match betti {
                Some(v) if v.len() != d.degrees().len() => {
                    return Err(Failure::usage(
                        "--betti",
                        format!("expected {} values, got {}", d.degrees().len(), v.len()),
                    ))
                }
                Some(v) => BettiTable::pure(&d, v),
                None => pure_free_betti(&d, 0).map_err(|e| Failure::from_lib("--degrees", e))?,
            };
            let constant = herzog_kuhl_constant(&table, &d).map_err(|e| Failure::from_lib("--betti", e))?;
            let weights: Vec<String> = (0..d.degrees().len()).map(|i| d.hk_weight(i).to_string()).collect();
            Ok(match fmt {
                Format::Json => json_string(&json!({
                    "degrees": d.degrees(),
                    "betti": (0..d.degrees().len()).map(|i| table.get(i, d.get(i))).collect::<Vec<_>>(),
                    "weights": weights,
                    "holds": constant.is_some(),
                    "constant": constant.map(|c| c.to_string()),
                })),
                _ => match constant {
                    Some(c) => format!("true (constant {c})"),
                    None => "false".into(),
                },
            })
        }
        Command::Sweep { n, top, characteristic } => {
            let rows = sweep(*n, *top, *characteristic).map_err(|e| Failure::from_lib("--char", e))?;
            Ok(match fmt {
                Format::Json => serde_json::to_string(&rows).expect("serializable"),
                _ => {
                    let mut out = String::new();
                    for r in rows {
                        let hk = r.hk_constant.map_or(String::new(), |c| format!("  hk {c}"));
                        out.push_str(&format!(
                            "{}  {}{hk}\n",
                            r.degrees,
                            if r.pure { "pure" } else { "not pure" }
                        ));
                        let table = BettiTable::from_json(&r.betti);
                        for line in table.to_m2().lines() {
                            out.push_str(&format!("    {line}\n"));
                        }
                    }
                    out
                }
            })
        }
    }
}

fn json_string(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn labels(rows: &[Vec<u8>], zero_based: bool) -> Vec<Vec<u8>> {
    rows.iter()
        .map(|r| r.iter().map(|&e| if zero_based { e - 1 } else { e }).collect())
        .collect()
}

fn show_tableau(t: &Tableau, zero_based: bool) -> String {
    if zero_based {
        t.zero_based().to_string()
    } else {
        t.to_string()
    }
}

fn m2_tableau(t: &Tableau, zero_based: bool) -> String {
    let rows: Vec<String> = labels(t.rows(), zero_based)
        .iter()
        .map(|r| format!("{{{}}}", r.iter().map(u8::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("{{{}}}", rows.join(", "))
}

fn check_rank(shape: &Partition, n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::usage("--n", "n must be positive"));
    }
    if shape.length() > n {
        return Err(Failure::usage(
            "--shape",
            format!("shape {shape} has more than n = {n} rows"),
        ));
    }
    Ok(())
}

fn degree_sequence(a: &DegreeArgs) -> Result<DegreeSequence, Failure> {
    match a.n {
        Some(n) if n != a.degrees.rank() => Err(Failure::usage(
            "--n",
            format!(
                "{} degrees need n = {}, got {n}",
                a.degrees.degrees().len(),
                a.degrees.rank()
            ),
        )),
        _ => Ok(a.degrees.clone()),
    }
}

fn reduce(m: &PolyMatrix, field: &FieldArgs) -> Result<PolyMatrix, Failure> {
    let p = field.characteristic;
    if p == 0 {
        return Ok(m.clone());
    }
    match field.zform {
        ZForm::Saturated => saturated_zform(m, p),
        ZForm::Primitive => zform(m, Some(p)),
    }
    .map_err(|e| Failure::from_lib("--char", e))
}

fn matrix_output(m: &PolyMatrix, fmt: Format) -> Outcome {
    Ok(match fmt {
        Format::Json => serde_json::to_string(&m.to_json()).expect("serializable"),
        Format::Text => m.to_text(),
        Format::M2 => m.to_m2(),
    })
}

fn betti_output(t: &BettiTable, fmt: Format) -> String {
    match fmt {
        Format::Json => serde_json::to_string(&t.to_json()).expect("serializable"),
        _ => t.to_m2(),
    }
}
