//! `dio`: compile integer polynomial equations and c.e.-set descriptions into
//! exponential-Diophantine index programs, and poke at the resulting formulas.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use dio::compiler::{
    brute_force_verify, check_membership, compile_ce, compile_equation, pairing_j, q_code,
    CeSetProgram, CompiledEquation, MembershipResult, ProgramFile,
};
use dio::index::{classify, Index, IndexClass};
use dio::indicator::{
    f_value, inf_estimate, parse_rational, render_rational, BallFamily, FAssignment, FValue,
    InfEstimate, Point,
};
use dio::poly::{parse_polynomial, VarIndex};
use dio::render::{index_rendering, render, Constants, RenderTarget, Style, Target};
use dio::wf::{validate_prefix, AssignmentFile, DensePrefix, ValidationResult, WfAssignment};

#[derive(Parser)]
#[command(name = "dio", version, about = "Exponential-Diophantine program toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile an equation or a c.e.-set relation into an index program.
    Compile {
        /// Equation text, e.g. "y1 + y3 = 2*y1*y3".
        #[arg(long, conflicts_with_all = ["file", "ce_relation"])]
        equation: Option<String>,
        /// File containing the equation text.
        #[arg(long, conflicts_with = "ce_relation")]
        file: Option<PathBuf>,
        /// Relation r(w, z...) = 0 describing a c.e. set of codes.
        #[arg(long, requires = "w")]
        ce_relation: Option<String>,
        /// The coded variable of the relation, e.g. 1 for y1.
        #[arg(long)]
        w: Option<u64>,
        /// Comma-separated witness variables, e.g. "2,3".
        #[arg(long)]
        witnesses: Option<String>,
        /// Write the program file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check an equation against its compiled cells.
    Verify {
        #[arg(long)]
        equation: String,
        #[arg(long, default_value = "8")]
        max_val: u64,
    },
    /// Search for a membership witness for a 9-tuple.
    Membership {
        #[arg(long)]
        program: PathBuf,
        /// Comma-separated n1,...,n9.
        #[arg(long)]
        tuple: String,
        #[arg(long, default_value = "100")]
        witness_bound: u64,
    },
    /// J(x, y) = x + (x+y)^2.
    Pair { x: BigUint, y: BigUint },
    /// Classify a memory index.
    DecodeIndex { k: String },
    /// Evaluate the f bracket at a point.
    EvalF {
        #[arg(long)]
        program: PathBuf,
        /// Dense mode: JSON array of cells. Semantic mode: {"free": {...}}.
        #[arg(long)]
        assignment: PathBuf,
        /// Five comma-separated rationals.
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "0")]
        m: u64,
        #[arg(long, value_enum, default_value = "semantic")]
        mode: EvalMode,
    },
    /// Budgeted estimate of inf f over a ball family.
    Indicator {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "100000")]
        budget: u64,
    },
    /// Render one of the formula displays.
    Render {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, value_enum, default_value = "plain")]
        style: StyleArg,
        /// Substitute this program's constants instead of letters.
        #[arg(long)]
        program: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMode {
    Dense,
    Semantic,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Star,
    Dagger,
    F,
    Main,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Plain,
    Latex,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Star => Target::Star,
            TargetArg::Dagger => Target::Dagger,
            TargetArg::F => Target::FBody,
            TargetArg::Main => Target::MainTheorem,
        }
    }
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Style {
        match s {
            StyleArg::Plain => Style::Plain,
            StyleArg::Latex => Style::Latex,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Compile {
            equation,
            file,
            ce_relation,
            w,
            witnesses,
            out,
        } => {
            let program_file = if let Some(rel) = ce_relation {
                let r = parse_polynomial(&rel).map_err(|e| e.to_string())?;
                let w = VarIndex::from_u64(w.ok_or("--ce-relation requires --w")?)
                    .map_err(|e| e.to_string())?;
                let zs: Result<Vec<VarIndex>, String> = witnesses
                    .as_deref()
                    .unwrap_or("")
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        let k: u64 = s.trim().parse().map_err(|_| format!("bad witness {s:?}"))?;
                        VarIndex::from_u64(k).map_err(|e| e.to_string())
                    })
                    .collect();
                let prog = compile_ce(&r, &w, &zs?).map_err(|e| e.to_string())?;
                print_constants(&prog.compiled)?;
                prog.to_file()
            } else {
                let text = match (equation, file) {
                    (Some(t), None) => t,
                    (None, Some(path)) => std::fs::read_to_string(&path)
                        .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
                    _ => return Err("pass exactly one of --equation, --file, --ce-relation".into()),
                };
                let p = parse_polynomial(text.trim()).map_err(|e| e.to_string())?;
                let prog = compile_equation(&p).map_err(|e| e.to_string())?;
                print_constants(&prog)?;
                prog.to_file()
            };
            if let Some(path) = out {
                let json =
                    serde_json::to_string_pretty(&program_file).map_err(|e| e.to_string())?;
                std::fs::write(&path, json + "\n")
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { equation, max_val } => {
            let p = parse_polynomial(&equation).map_err(|e| e.to_string())?;
            let report = brute_force_verify(&p, max_val).map_err(|e| e.to_string())?;
            println!(
                "checked {} assignments, {} solutions, {} counterexamples",
                report.checked,
                report.solutions.len(),
                report.counterexamples.len()
            );
            for cx in &report.counterexamples {
                println!(
                    "  mismatch at {:?}: poly_vanishes={}, cells_equal={}",
                    cx.assignment, cx.poly_vanishes, cx.cells_equal
                );
            }
            if report.counterexamples.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Membership {
            program,
            tuple,
            witness_bound,
        } => {
            let prog = load_ce_program(&program)?;
            let tuple = parse_tuple(&tuple)?;
            println!("code: {}", q_code(&tuple));
            match check_membership(&prog, &tuple, witness_bound) {
                MembershipResult::Accept(witness) => {
                    let parts: Vec<String> = witness.iter().map(|w| w.to_string()).collect();
                    println!("accept: witness ({})", parts.join(", "));
                }
                MembershipResult::NoWitnessFound => {
                    println!("no witness found with values <= {witness_bound}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pair { x, y } => {
            println!("{}", pairing_j(&x, &y));
            Ok(ExitCode::SUCCESS)
        }
        Command::DecodeIndex { k } => {
            let idx: Index = k.parse().map_err(|e| format!("{e}"))?;
            match classify(&idx) {
                IndexClass::ReferenceCell => println!("reference cell: n_0 = 2"),
                IndexClass::Free => println!("free cell"),
                IndexClass::ReservedPower(i, j) => {
                    println!("reserved: n_k = n_i^n_j with i = {i}, j = {j}")
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EvalF {
            program,
            assignment,
            point,
            m,
            mode,
        } => {
            let prog = load_program(&program)?;
            let x = parse_point(&point)?;
            let text = std::fs::read_to_string(&assignment)
                .map_err(|e| format!("cannot read {}: {e}", assignment.display()))?;
            let value = match mode {
                EvalMode::Dense => {
                    let cells: Vec<u64> =
                        serde_json::from_str(&text).map_err(|e| format!("bad dense prefix: {e}"))?;
                    let prefix = DensePrefix::new(cells.into_iter().map(BigUint::from).collect())
                        .ok_or("dense prefix must be non-empty")?;
                    match validate_prefix(&prefix) {
                        ValidationResult::Valid | ValidationResult::BudgetExceeded { .. } => {}
                        ValidationResult::Violation { at, .. } => {
                            println!("note: prefix is not well-formed (first violation at {at})")
                        }
                    }
                    f_value(&x, m, &FAssignment::Dense(&prefix), &prog)
                        .map_err(|e| e.to_string())?
                }
                EvalMode::Semantic => {
                    let file: AssignmentFile =
                        serde_json::from_str(&text).map_err(|e| format!("bad assignment: {e}"))?;
                    let prefix = file.to_prefix()?;
                    let wf = WfAssignment::extend(&prefix).map_err(|e| e.to_string())?;
                    f_value(&x, m, &FAssignment::Semantic(&wf), &prog)
                        .map_err(|e| e.to_string())?
                }
            };
            match value {
                FValue::Exact(v) => println!("f = {}", render_rational(&v)),
                FValue::SymbolicLarge => println!("f >= 1 (cells differ; value symbolic)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Indicator {
            family,
            m,
            point,
            budget,
        } => {
            let text = std::fs::read_to_string(&family)
                .map_err(|e| format!("cannot read {}: {e}", family.display()))?;
            let fam = BallFamily::from_json(&text).map_err(|e| e.to_string())?;
            let x = parse_point(&point)?;
            if budget == 0 {
                return Err("--budget must be at least 1".into());
            }
            match inf_estimate(&fam, m, &x, budget) {
                InfEstimate::ExactOne => println!("inf = 1 (point outside U_{m})"),
                InfEstimate::UpperBound { value, witness } => {
                    let parts: Vec<String> =
                        witness.values().iter().map(|n| n.to_string()).collect();
                    println!(
                        "upper bound: {} (witness n1..n9 = {})",
                        render_rational(&value),
                        parts.join(",")
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            target,
            style,
            program,
        } => {
            let target: Target = target.into();
            let style: Style = style.into();
            let constants = match program {
                Some(path) => {
                    let prog = load_program(&path)?;
                    Constants::from_program(&prog, style).map_err(|e| e.to_string())?
                }
                None => Constants::letters(target),
            };
            print!(
                "{}",
                render(&RenderTarget {
                    target,
                    style,
                    constants
                })
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_constants(prog: &CompiledEquation) -> Result<(), String> {
    for (name, idx) in [("B", &prog.b), ("C", &prog.c), ("A", &prog.a)] {
        println!(
            "{name} = {}",
            index_rendering(idx, Style::Plain).map_err(|e| e.to_string())?
        );
    }
    Ok(())
}

fn read_program_file(path: &PathBuf) -> Result<ProgramFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad program file: {e}"))
}

fn load_program(path: &PathBuf) -> Result<CompiledEquation, String> {
    let file = read_program_file(path)?;
    if file.ce.is_some() {
        Ok(CeSetProgram::from_file(&file)
            .map_err(|e| e.to_string())?
            .compiled)
    } else {
        CompiledEquation::from_file(&file).map_err(|e| e.to_string())
    }
}

fn load_ce_program(path: &PathBuf) -> Result<CeSetProgram, String> {
    let file = read_program_file(path)?;
    CeSetProgram::from_file(&file).map_err(|e| e.to_string())
}

fn parse_tuple(s: &str) -> Result<[BigUint; 9], String> {
    let parts: Result<Vec<BigUint>, String> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| format!("bad tuple entry {p:?}"))
        })
        .collect();
    parts?
        .try_into()
        .map_err(|v: Vec<_>| format!("expected 9 tuple entries, got {}", v.len()))
}

fn parse_point(s: &str) -> Result<Point, String> {
    let parts: Result<Vec<_>, _> = s.split(',').map(|p| parse_rational(p.trim())).collect();
    let parts = parts.map_err(|e| e.to_string())?;
    parts
        .try_into()
        .map_err(|v: Vec<_>| format!("expected 5 coordinates, got {}", v.len()))
}
