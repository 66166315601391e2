//! Command-line frontend: build any algebra in the catalog, run verification
//! suites, and emit the Magic Square.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zorn::altsuper::{build_b12, build_b_gamma, build_divided_powers, check_d_simple};
use zorn::char3::{assign_bj_grading, build_char3_superalgebra};
use zorn::composition::{build_composition, CompositionKind};
use zorn::identities::{
    check_commutative_super, check_jacobi_a_identity, check_super_alternative,
    check_super_anticommutativity, check_super_jacobi,
};
use zorn::jordan::JordanWithTrace;
use zorn::meataxe::is_simple;
use zorn::serial::{algebra_from_json, algebra_to_json};
use zorn::tits::{build_tits, magic_square, MagicSquare};
use zorn::{FieldSpec, Superalgebra, VerificationReport};

#[derive(Parser)]
#[command(name = "zorn", version, about = "Exact constructions and verification of composition algebras, the Tits construction, and characteristic-3 Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog algebra and write its canonical JSON.
    Gen {
        /// cayley | quaternion | binarion | s | h3:<inner> | tits:<C>:<C'> |
        /// b12 | gamma:<N> | bgamma:<N> | bj | Bj:<N>
        /// (inner names: k, binarion, quaternion, cayley)
        target: String,
        #[arg(long, default_value = "gf3")]
        field: String,
        /// N for gamma/bgamma/Bj targets without an inline :N.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_parser = parse_seed, default_value = "0xC3A1")]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite against a catalog target or an algebra file.
    Verify {
        /// A catalog target (as in `gen`) or a path to an algebra JSON file.
        target: String,
        #[arg(long, default_value = "full")]
        suite: String,
        #[arg(long, default_value = "gf3")]
        field: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_parser = parse_seed, default_value = "0xC3A1")]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build all 16 Magic Square entries with their Jacobi status.
    MagicSquare {
        #[arg(long, default_value = "gf7")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16).map_err(|e| e.to_string())
    } else {
        s.parse().map_err(|e: std::num::ParseIntError| e.to_string())
    }
}

/// Anything that should terminate with exit code 2.
struct UsageError(String);

impl From<zorn::Error> for UsageError {
    fn from(e: zorn::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::Gen { target, field, n, seed, out } => {
            let field = parse_field(&field)?;
            let built = build_target(&target, field, n, seed)?;
            emit(out.as_deref(), &algebra_to_json(&built.algebra))?;
            Ok(true)
        }
        Command::Verify { target, suite, field, n, seed, out, format } => {
            let field = parse_field(&field)?;
            let built = if std::path::Path::new(&target).is_file() {
                let text = std::fs::read_to_string(&target)?;
                Built { algebra: algebra_from_json(&text)?, target: TargetKind::File, gamma: None }
            } else {
                build_target(&target, field, n, seed)?
            };
            let suites = resolve_suites(&suite, &built)?;
            let mut reports = Vec::new();
            for s in suites {
                reports.push(run_suite(s, &built, seed)?);
            }
            let pass = reports.iter().all(|r| r.pass);
            let text = match format {
                Format::Json => {
                    let body = serde_json::json!({
                        "target": target,
                        "suite": suite,
                        "seed": seed,
                        "pass": pass,
                        "reports": reports,
                    });
                    serde_json::to_string_pretty(&body).expect("report serialization")
                }
                Format::Text => {
                    let mut lines = Vec::new();
                    for r in &reports {
                        if r.pass {
                            lines.push(format!("PASS {} (checked {})", r.identity, r.checked));
                        } else {
                            let ce = r.counterexample.as_ref();
                            lines.push(format!(
                                "FAIL {} at {:?}",
                                r.identity,
                                ce.map(|c| c.indices.clone()).unwrap_or_default()
                            ));
                        }
                    }
                    lines.join("\n")
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(pass)
        }
        Command::MagicSquare { field, out, format } => {
            let field = parse_field(&field)?;
            if field.characteristic() == 3 {
                return Err(UsageError(
                    "the Magic Square needs characteristic ≠ 3; build `bj` or `Bj:<N>` for the characteristic-3 constructions"
                        .into(),
                ));
            }
            let square = magic_square(field)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&square).expect("square serialization"),
                Format::Text => render_square(&square),
            };
            emit(out.as_deref(), &text)?;
            Ok(true)
        }
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, UsageError> {
    match s {
        "q" | "Q" => Ok(FieldSpec::rationals()),
        "gf3" => Ok(FieldSpec::prime(3)?),
        "gf5" => Ok(FieldSpec::prime(5)?),
        "gf7" => Ok(FieldSpec::prime(7)?),
        other => {
            if let Some(p) = other.strip_prefix("gfp:") {
                let p: u64 = p.parse().map_err(|_| UsageError(format!("bad prime in field selector {other:?}")))?;
                Ok(FieldSpec::prime(p)?)
            } else {
                Err(UsageError(format!(
                    "unknown field selector {other:?}; expected gf3, gf5, gf7, gfp:<p>, or q"
                )))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TargetKind {
    Composition,
    BracketS,
    H3,
    Tits,
    B12,
    Gamma,
    BGamma,
    Bj,
    BjN,
    File,
}

struct Built {
    algebra: Superalgebra,
    target: TargetKind,
    /// Present for gamma targets: (Γ, D) for the D-simplicity suite.
    gamma: Option<zorn::altsuper::DividedPowerAlgebra>,
}

fn composition_kind(name: &str) -> Result<CompositionKind, UsageError> {
    match name {
        "k" => Ok(CompositionKind::GroundField),
        "binarion" => Ok(CompositionKind::Binarion),
        "quaternion" => Ok(CompositionKind::Matrix2),
        "cayley" => Ok(CompositionKind::SplitCayley),
        other => Err(UsageError(format!(
            "unknown composition algebra {other:?}; expected k, binarion, quaternion, cayley"
        ))),
    }
}

fn require_char3(field: FieldSpec, target: &str) -> Result<(), UsageError> {
    if field.characteristic() != 3 {
        return Err(UsageError(format!("target {target:?} requires --field gf3")));
    }
    Ok(())
}

fn require_not_char3(field: FieldSpec, target: &str) -> Result<(), UsageError> {
    if field.characteristic() == 3 {
        return Err(UsageError(format!(
            "target {target:?} needs characteristic ≠ 3; the characteristic-3 constructions are `bj` and `Bj:<N>`"
        )));
    }
    Ok(())
}

fn parse_n(inline: Option<&str>, flag: Option<u32>, target: &str) -> Result<u32, UsageError> {
    if let Some(s) = inline {
        return s.parse().map_err(|_| UsageError(format!("bad N in target {target:?}")));
    }
    flag.ok_or_else(|| UsageError(format!("target {target:?} needs an inline :N or --n")))
}

fn build_target(target: &str, field: FieldSpec, n: Option<u32>, _seed: u64) -> Result<Built, UsageError> {
    let parts: Vec<&str> = target.split(':').collect();
    let built = match parts.as_slice() {
        ["cayley"] => Built {
            algebra: build_composition(CompositionKind::SplitCayley, field)?.algebra,
            target: TargetKind::Composition,
            gamma: None,
        },
        ["quaternion"] => Built {
            algebra: build_composition(CompositionKind::Matrix2, field)?.algebra,
            target: TargetKind::Composition,
            gamma: None,
        },
        ["binarion"] => Built {
            algebra: build_composition(CompositionKind::Binarion, field)?.algebra,
            target: TargetKind::Composition,
            gamma: None,
        },
        ["s"] => {
            let c = build_composition(CompositionKind::SplitCayley, field)?;
            Built { algebra: c.bracket_algebra()?.algebra, target: TargetKind::BracketS, gamma: None }
        }
        ["h3", inner] => {
            require_not_char3(field, target)?;
            let c = build_composition(composition_kind(inner)?, field)?;
            Built { algebra: JordanWithTrace::h3(&c)?.algebra, target: TargetKind::H3, gamma: None }
        }
        ["tits", c_name, j_name] => {
            require_not_char3(field, target)?;
            let c = build_composition(composition_kind(c_name)?, field)?;
            let cp = build_composition(composition_kind(j_name)?, field)?;
            let j = JordanWithTrace::h3(&cp)?;
            Built { algebra: build_tits(&c, &j)?.algebra, target: TargetKind::Tits, gamma: None }
        }
        ["b12"] => {
            require_char3(field, target)?;
            Built { algebra: build_b12(field)?, target: TargetKind::B12, gamma: None }
        }
        ["gamma", rest @ ..] => {
            require_char3(field, target)?;
            let n = parse_n(rest.first().copied(), n, target)?;
            let g = build_divided_powers(n, field)?;
            Built { algebra: g.algebra.clone(), target: TargetKind::Gamma, gamma: Some(g) }
        }
        ["bgamma", rest @ ..] => {
            require_char3(field, target)?;
            let n = parse_n(rest.first().copied(), n, target)?;
            let g = build_divided_powers(n, field)?;
            Built { algebra: build_b_gamma(&g)?.algebra, target: TargetKind::BGamma, gamma: None }
        }
        ["bj"] => {
            require_char3(field, target)?;
            let s = build_composition(CompositionKind::SplitCayley, field)?.bracket_algebra()?;
            let a = build_b12(field)?;
            Built { algebra: build_char3_superalgebra(&s, &a)?.algebra, target: TargetKind::Bj, gamma: None }
        }
        ["Bj" | "bJ" | "BJ", rest @ ..] => {
            require_char3(field, target)?;
            let n = parse_n(rest.first().copied(), n, target)?;
            let g = build_divided_powers(n, field)?;
            let b = build_b_gamma(&g)?;
            let s = build_composition(CompositionKind::SplitCayley, field)?.bracket_algebra()?;
            let char3 = build_char3_superalgebra(&s, &b.algebra)?;
            let (graded, _) = assign_bj_grading(&char3, &b.algebra)?;
            Built { algebra: graded, target: TargetKind::BjN, gamma: None }
        }
        _ => return Err(UsageError(format!("unknown target {target:?}"))),
    };
    Ok(built)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Suite {
    Anticommutativity,
    Jacobi,
    Alternative,
    Commutative,
    JacobiA,
    Grading,
    Simplicity,
    DSimple,
}

fn resolve_suites(name: &str, built: &Built) -> Result<Vec<Suite>, UsageError> {
    use Suite::*;
    let named = match name.to_ascii_lowercase().as_str() {
        "anticommutativity" | "anticomm" => Some(Anticommutativity),
        "jacobi" => Some(Jacobi),
        "alternative" => Some(Alternative),
        "commutative" => Some(Commutative),
        "jacobia" => Some(JacobiA),
        "grading" => Some(Grading),
        "simplicity" => Some(Simplicity),
        "dsimple" | "d-simple" => Some(DSimple),
        "full" => None,
        other => return Err(UsageError(format!("unknown suite {other:?}"))),
    };
    if let Some(s) = named {
        if s == Grading && built.algebra.degree().is_none() {
            return Err(UsageError("grading suite needs a degree vector".into()));
        }
        if s == DSimple && built.gamma.is_none() {
            return Err(UsageError("dsimple suite applies to gamma:<N> targets".into()));
        }
        if matches!(s, Simplicity | DSimple) && built.algebra.field().characteristic() == 0 {
            return Err(UsageError("simplicity testing needs a prime field".into()));
        }
        return Ok(vec![s]);
    }
    let prime = built.algebra.field().characteristic() != 0;
    let graded = built.algebra.degree().is_some();
    let mut suites = match built.target {
        TargetKind::Composition => vec![Alternative],
        TargetKind::H3 => vec![Commutative],
        TargetKind::BracketS | TargetKind::Bj | TargetKind::BjN => vec![Anticommutativity, Jacobi],
        TargetKind::Tits | TargetKind::File => vec![Anticommutativity, Jacobi],
        TargetKind::B12 | TargetKind::BGamma => vec![Commutative, Alternative, JacobiA],
        TargetKind::Gamma => vec![Commutative, Alternative, JacobiA],
    };
    if graded {
        suites.push(Grading);
    }
    if prime {
        match built.target {
            TargetKind::BracketS | TargetKind::Bj | TargetKind::BjN | TargetKind::B12 | TargetKind::BGamma => {
                suites.push(Simplicity)
            }
            TargetKind::Gamma => suites.push(DSimple),
            _ => {}
        }
    }
    Ok(suites)
}

fn run_suite(suite: Suite, built: &Built, seed: u64) -> Result<VerificationReport, UsageError> {
    let alg = &built.algebra;
    let rep = match suite {
        Suite::Anticommutativity => check_super_anticommutativity(alg),
        Suite::Jacobi => check_super_jacobi(alg),
        Suite::Alternative => check_super_alternative(alg),
        Suite::Commutative => check_commutative_super(alg),
        Suite::JacobiA => check_jacobi_a_identity(alg),
        Suite::Grading => alg.check_grading()?,
        Suite::Simplicity => {
            let simple = is_simple(alg, seed)?;
            let mut r = if simple {
                VerificationReport::pass("simplicity", 1)
            } else {
                VerificationReport::fail(
                    "simplicity",
                    1,
                    zorn::Counterexample { indices: vec![], lhs: vec!["a proper ideal exists".into()], rhs: vec![] },
                )
            };
            r.seed = Some(seed);
            r
        }
        Suite::DSimple => {
            let g = built.gamma.as_ref().expect("resolve_suites checked this");
            let ok = check_d_simple(&g.algebra, &g.derivation, seed)?;
            let mut r = if ok {
                VerificationReport::pass("d-simplicity", 1)
            } else {
                VerificationReport::fail(
                    "d-simplicity",
                    1,
                    zorn::Counterexample { indices: vec![], lhs: vec!["a proper D-invariant ideal exists".into()], rhs: vec![] },
                )
            };
            r.seed = Some(seed);
            r
        }
    };
    Ok(rep)
}

fn render_square(square: &MagicSquare) -> String {
    let headers = ["H3(k)", "H3(k×k)", "H3(Mat2(k))", "H3(C(k))"];
    let rows = ["k", "k×k", "Mat2(k)", "C(k)"];
    let mut out = String::new();
    out.push_str(&format!("Magic Square over GF({})\n", square.field_char));
    out.push_str(&format!("{:<12}", ""));
    for h in headers {
        out.push_str(&format!("{h:>14}"));
    }
    out.push('\n');
    for (i, row) in square.entries.iter().enumerate() {
        out.push_str(&format!("{:<12}", rows[i]));
        for e in row {
            let status = if e.jacobi_pass && e.anticommutative_pass { "✓" } else { "✗" };
            out.push_str(&format!("{:>14}", format!("{} ({}){}", e.dim, e.type_label, status)));
        }
        out.push('\n');
    }
    out
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<(), UsageError> {
    match path {
        Some(p) => {
            let mut f = std::fs::File::create(p)?;
            writeln!(f, "{text}")?;
        }
        None => println!("{text}"),
    }
    Ok(())
}
