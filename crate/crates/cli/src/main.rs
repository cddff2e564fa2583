use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ldiag::hopf::DEFAULT_MAX_LINES;
use ldiag::partitions::DEFAULT_MAX_N;
use ldiag::{
    antipode_explicit, codes_up_to, diagram_multiplicities, twist_product, verify_hopf, zeta_eval,
    zeta_word_of, DeformParams, DeformedAlgebra, DiagElement, DiagramCode, Hopf, LabeledDiagram,
    Param, TensorDisplay, ZetaEvaluator, ZetaWord,
};
use ldiag_cli::{
    code_to_json, element_to_json, format_element, parse_signs, read_code, tensor_to_json, CliError,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::json;

/// Exact computations with packed-matrix diagrams and the deformed
/// algebra LDIAG(qc, qs, qt).
///
/// Diagram arguments are code literals such as "[x1, x2^2*x3]" or paths
/// to matrix files (one row per line, space-separated entries).
#[derive(Parser, Debug)]
#[command(name = "ldiag", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size bound (number of lines) for exhaustive commands.
    #[arg(long, global = true, default_value_t = 3)]
    max_lines: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Crossing parameter: an integer polynomial or `sym`.
    #[arg(long, default_value = "sym")]
    qc: Param,
    /// Superposition parameter: an integer polynomial or `sym`.
    #[arg(long, default_value = "sym")]
    qs: Param,
    /// Coproduct selector, 0 or 1.
    #[arg(long, default_value_t = 0)]
    qt: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<DeformParams, CliError> {
        Ok(DeformParams::new(
            self.qc.clone(),
            self.qs.clone(),
            self.qt,
        )?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Deformed product of two diagrams.
    Product {
        a: String,
        b: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Use the unshifted law on the codes as words.
        #[arg(long)]
        unshifted: bool,
    },
    /// Coproduct of a diagram.
    Coproduct {
        code: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Antipode of a diagram.
    Antipode {
        code: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Use the alternating sum over set compositions (undeformed case).
        #[arg(long)]
        explicit: bool,
    },
    /// Check the Hopf axioms on all codes with at most --max-lines lines.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Additionally test the morphism property on this many random
        /// pairs of codes of size up to --max-lines each.
        #[arg(long, default_value_t = 0)]
        sample: usize,
    },
    /// Diagram classes of n lines with their multiplicities.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Factorization into irreducible codes.
    Factorize { code: String },
    /// Convert between a matrix and its code.
    Code { input: String },
    /// Truncated multiple zeta sum of a diagram.
    Zeta {
        #[arg(long)]
        code: String,
        /// Comma-separated signs, e.g. "+,-".
        #[arg(long)]
        signs: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        truncate: usize,
        /// Second diagram for the stuffle check.
        #[arg(long)]
        check_stuffle: Option<String>,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

enum Status {
    Ok,
    CheckFailed,
}

fn print_element(e: &DiagElement, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&element_to_json(e)).unwrap()
        );
    } else {
        let text = format_element(e);
        if !text.is_empty() {
            println!("{text}");
        }
    }
}

fn run(cli: &Cli) -> Result<Status, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Product {
            a,
            b,
            params,
            unshifted,
        } => {
            let p = params.params()?;
            let (a, b) = (read_code(a)?, read_code(b)?);
            let e = if *unshifted {
                let words = twist_product(a.word(), b.word()).map_coeffs(|c| p.specialize(c));
                words.map_keys(|w| w.compact())
            } else {
                DeformedAlgebra::new(p)
                    .product_codes(&a, &b)
                    .as_ref()
                    .clone()
            };
            print_element(&e, json);
        }
        Command::Coproduct { code, params } => {
            let h = Hopf::new(params.params()?);
            let d = h.coproduct(&read_code(code)?);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&tensor_to_json(&d)).unwrap()
                );
            } else if !d.is_zero() {
                println!("{}", TensorDisplay(&d));
            }
        }
        Command::Antipode {
            code,
            params,
            explicit,
        } => {
            let w = read_code(code)?;
            let e = if *explicit {
                antipode_explicit(&w)
            } else {
                Hopf::new(params.params()?).antipode(&w).as_ref().clone()
            };
            print_element(&e, json);
        }
        Command::Verify { params, sample } => {
            let p = params.params()?;
            let report = verify_hopf(&p, cli.max_lines, DEFAULT_MAX_LINES)?;
            let mut ok = report.all_passed();
            let mut sample_failure = None;
            if *sample > 0 {
                let h = Hopf::new(p);
                let codes: Vec<DiagramCode> = codes_up_to(cli.max_lines)
                    .into_iter()
                    .filter(|c| !c.is_empty())
                    .collect();
                let mut rng = StdRng::seed_from_u64(cli.seed);
                for _ in 0..*sample {
                    let x = codes.choose(&mut rng).expect("non-empty");
                    let y = codes.choose(&mut rng).expect("non-empty");
                    let lhs = h.coproduct_element(&h.algebra().product_codes(x, y));
                    let rhs = h.tensor_mul(&h.coproduct(x), &h.coproduct(y));
                    if lhs != rhs {
                        sample_failure = Some(format!("{x} * {y}"));
                        ok = false;
                        break;
                    }
                }
            }
            if json {
                let axioms: Vec<_> = report
                    .axioms
                    .iter()
                    .map(|a| {
                        json!({
                            "name": a.name,
                            "passed": a.passed(),
                            "checked": a.checked,
                            "counterexample": a.counterexample,
                        })
                    })
                    .collect();
                let doc = json!({
                    "params": report.params,
                    "max_lines": report.max_lines,
                    "axioms": axioms,
                    "sampled_pairs": sample,
                    "seed": cli.seed,
                    "sample_counterexample": sample_failure,
                    "passed": ok,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                println!("{report}");
                if *sample > 0 {
                    match &sample_failure {
                        None => {
                            println!("sampled morphism pairs: {sample} pass (seed {})", cli.seed)
                        }
                        Some(c) => {
                            println!("sampled morphism pairs: FAIL at {c} (seed {})", cli.seed)
                        }
                    }
                }
            }
            if !ok {
                return Ok(Status::CheckFailed);
            }
        }
        Command::Enumerate { n } => {
            let classes = diagram_multiplicities(*n, DEFAULT_MAX_N)?;
            if json {
                let doc: Vec<_> = classes
                    .iter()
                    .map(|(d, m)| json!({"mult": m.to_string(), "matrix": d.matrix().row_vecs()}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for (d, m) in &classes {
                    println!("{m}\t{}", d.matrix().to_row_string());
                }
            }
        }
        Command::Factorize { code } => {
            let factors = read_code(code)?.factorize();
            if json {
                let doc: Vec<_> = factors.iter().map(code_to_json).collect();
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for f in &factors {
                    println!("{f}");
                }
            }
        }
        Command::Code { input } => {
            let code = read_code(input)?;
            let matrix = LabeledDiagram::from_code(&code);
            if json {
                let doc = json!({"code": code_to_json(&code), "matrix": matrix.row_vecs()});
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else if input.trim().starts_with('[') {
                println!("{}", matrix.to_string().trim_end());
            } else {
                println!("{code}");
            }
        }
        Command::Zeta {
            code,
            signs,
            truncate,
            check_stuffle,
            tol,
        } => {
            let w = read_code(code)?;
            let mut zw = zeta_word_of(&w)?;
            if let Some(s) = signs {
                zw = ZetaWord::new(zw.exponents().to_vec(), parse_signs(s)?)?;
            }
            let v = zeta_eval(&zw, *truncate)?;
            let check = match check_stuffle {
                Some(other) => {
                    let other = read_code(other)?;
                    Some(ZetaEvaluator::new(*truncate).stuffle_sides(&w, &other)?)
                }
                None => None,
            };
            let passed = !matches!(check, Some(c) if c.difference() > *tol);
            if json {
                let mut doc = json!({
                    "word": zw.to_string(),
                    "value": v.value,
                    "truncation": v.truncation,
                    "tail_bound": v.tail_bound,
                });
                if let Some(c) = check {
                    doc["stuffle"] = json!({
                        "lhs": c.lhs, "rhs": c.rhs, "difference": c.difference(),
                        "tol": tol, "passed": passed,
                    });
                }
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                println!("word\t{zw}");
                println!("value\t{:.12}", v.value);
                println!("truncation\t{}", v.truncation);
                println!("tail_bound\t{:.3e}", v.tail_bound);
                if let Some(c) = check {
                    println!("stuffle_lhs\t{:.12}", c.lhs);
                    println!("stuffle_rhs\t{:.12}", c.rhs);
                    println!("stuffle_difference\t{:.3e}", c.difference());
                    println!("stuffle\t{}", if passed { "pass" } else { "FAIL" });
                }
            }
            if !passed {
                return Ok(Status::CheckFailed);
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
