//! Command-line driver: JSON in, JSON report out, human summary on
//! standard error.
//!
//! Exit codes: 0 when every requested check verifies, 1 when a check is
//! refuted (the report carries a witness), 2 on usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::casestudies::{diagonal_entries_case, nilpotent_case, schur_case};
use crate::error::{Error, Result};
use crate::exactfield::GaussianRational;
use crate::family::{CoupledFamily, DerivedCoupling};
use crate::json::{
    algebra_spec_from_json, algebra_spec_to_json, block_toeplitz_from_json, block_toeplitz_to_json,
    case_outcome_to_json, field, matrix_to_json, maximality_report_to_json, scalar_from_json, subspace_to_json, usize_field,
};
use crate::linalg::ExactMatrix;
use crate::subalgebras::{
    algebra_basis, check_inverse_closed, commutant, is_maximal_commutative, AlgebraSpec,
    InverseClosure,
};
use crate::suite::{run_suite, suite_to_json};
use crate::toeplitz::{circulant_basis, find_alpha, AlphaScan, BlockToeplitz, CirculantParam};

#[derive(Parser)]
#[command(
    name = "btalg",
    version,
    about = "Exact verification of commutative block Toeplitz algebras"
)]
struct Cli {
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two block Toeplitz matrices and check the product
    /// structure criterion against the dense product.
    CheckProduct {
        /// JSON file with {"t": <block-toeplitz>, "u": <block-toeplitz>}.
        #[arg(long)]
        input: PathBuf,
    },
    /// Entry-algebra operations: basis, commutant, maximality,
    /// inverse closure.
    Algebra {
        #[command(flatten)]
        entry: EntryArgs,
        #[arg(long, value_enum, default_value_t = AlgebraOp::Maximal)]
        op: AlgebraOp,
        /// Sample count for inverse-closure checks.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Coupled block Toeplitz families.
    Fab {
        #[command(subcommand)]
        action: FabAction,
    },
    /// Scalar Toeplitz operations.
    Scalar {
        #[command(subcommand)]
        action: ScalarAction,
    },
    /// The worked case studies.
    Casestudy {
        #[command(subcommand)]
        action: CaseAction,
    },
    /// Run the whole verification battery for a seed.
    Suite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraOp {
    Basis,
    Commutant,
    Maximal,
    InverseClosed,
}

/// Entry algebra, inline or from a JSON spec file.
#[derive(Args, Clone)]
struct EntryArgs {
    /// JSON file holding an algebra spec.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Inline kind: diagonal | circulant | schur | poly | explicit.
    #[arg(long)]
    entry: Option<String>,
    /// Matrix size (diagonal) or block size context for factor tokens.
    #[arg(long)]
    d: Option<usize>,
    /// Order of a circulant entry algebra.
    #[arg(long)]
    entry_n: Option<usize>,
    /// Circulant parameter: a scalar in the text grammar, or "inf".
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    sigma: Option<usize>,
    #[arg(long)]
    tau: Option<usize>,
    /// Generator matrix for a polynomial entry algebra (matrix token).
    #[arg(long)]
    generator: Option<String>,
}

impl EntryArgs {
    fn resolve(&self) -> Result<AlgebraSpec> {
        if let Some(path) = &self.spec {
            let value = read_json(path)?;
            return algebra_spec_from_json(&value);
        }
        let kind = self
            .entry
            .as_deref()
            .ok_or_else(|| Error::Invalid("provide --spec FILE or --entry KIND".into()))?;
        let spec = match kind {
            "diagonal" => AlgebraSpec::Diagonal {
                d: self.d.ok_or_else(|| Error::Invalid("diagonal entry algebra needs --d".into()))?,
            },
            "circulant" => AlgebraSpec::Circulant {
                n: self
                    .entry_n
                    .ok_or_else(|| Error::Invalid("circulant entry algebra needs --entry-n".into()))?,
                alpha: self
                    .alpha
                    .as_deref()
                    .ok_or_else(|| Error::Invalid("circulant entry algebra needs --alpha".into()))?
                    .parse()?,
            },
            "schur" => AlgebraSpec::Schur {
                sigma: self
                    .sigma
                    .ok_or_else(|| Error::Invalid("schur entry algebra needs --sigma".into()))?,
                tau: self
                    .tau
                    .ok_or_else(|| Error::Invalid("schur entry algebra needs --tau".into()))?,
            },
            "poly" => {
                let token = self
                    .generator
                    .as_deref()
                    .ok_or_else(|| Error::Invalid("polynomial entry algebra needs --generator".into()))?;
                let d = self.d.ok_or_else(|| Error::Invalid("polynomial entry algebra needs --d".into()))?;
                AlgebraSpec::Polynomial { generator: parse_matrix_token(token, d)? }
            }
            other => {
                return Err(Error::Invalid(format!(
                    "unknown entry algebra kind '{other}' (use --spec for explicit bases)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// JSON file with {"entry": <spec>, "A": <matrix>, "B": <matrix>, "n": int}.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    entry: EntryArgs,
    /// Block order of the family.
    #[arg(long)]
    n: Option<usize>,
    /// Factor A (matrix token: I, 0, diag:…, @file, or inline JSON array).
    #[arg(long = "A")]
    a: Option<String>,
    /// Factor B (matrix token).
    #[arg(long = "B")]
    b: Option<String>,
}

impl FamilyArgs {
    fn resolve(&self) -> Result<CoupledFamily> {
        if let Some(path) = &self.input {
            let value = read_json(path)?;
            let entry = algebra_spec_from_json(field(&value, "entry")?)?;
            let d = entry.matrix_size();
            let a = crate::json::matrix_from_json(field(&value, "A")?, d, d, "field 'A'")?;
            let b = crate::json::matrix_from_json(field(&value, "B")?, d, d, "field 'B'")?;
            let n = usize_field(&value, "n")?;
            return CoupledFamily::build(entry, a, b, n);
        }
        let entry = self.entry.resolve()?;
        let d = entry.matrix_size();
        let n = self
            .n
            .ok_or_else(|| Error::Invalid("family construction needs --n".into()))?;
        let a = parse_matrix_token(
            self.a.as_deref().ok_or_else(|| Error::Invalid("family construction needs --A".into()))?,
            d,
        )?;
        let b = parse_matrix_token(
            self.b.as_deref().ok_or_else(|| Error::Invalid("family construction needs --B".into()))?,
            d,
        )?;
        CoupledFamily::build(entry, a, b, n)
    }
}

#[derive(Subcommand)]
enum FabAction {
    /// Solve the family constraints and emit the basis.
    Build(FamilyArgs),
    /// Check closure under multiplication.
    Closure(FamilyArgs),
    /// Run the maximality certificate.
    Maximality {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 3)]
        search_depth: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Derive a factor pair from a member with an invertible
    /// off-diagonal block.
    DeriveAb {
        /// JSON file with {"t": <block-toeplitz>, "entry": <spec>}.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum ScalarAction {
    /// Identify the circulant class of a scalar Toeplitz matrix.
    FindAlpha {
        /// JSON file with a block Toeplitz matrix of block size 1.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Inline coefficients, ascending index, comma separated.
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Emit the canonical basis of a circulant algebra.
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum CaseAction {
    /// Diagonal entries: containment in a coupled family.
    Diagonal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Comma-separated circulant parameters, one per coordinate.
        #[arg(long)]
        alphas: String,
    },
    /// Schur entries with noninvertible off-diagonal blocks.
    Schur {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: usize,
        #[arg(long)]
        tau: usize,
    },
    /// Entries generated by a 2×2 nilpotent matrix.
    Nilpotent {
        #[arg(long)]
        n: usize,
    },
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Invalid(format!("{} is not valid JSON: {e}", path.display())))
}

/// Matrix tokens accepted on the command line: `I`, `0`, `diag:…` with
/// scalar entries, `@file` with a flat JSON array, or an inline JSON
/// array.
fn parse_matrix_token(token: &str, d: usize) -> Result<ExactMatrix> {
    match token {
        "I" => Ok(ExactMatrix::identity(d)),
        "0" => Ok(ExactMatrix::zero(d, d)),
        _ if token.starts_with("diag:") => {
            let entries: Result<Vec<GaussianRational>> = token["diag:".len()..]
                .split(',')
                .map(|part| part.trim().parse())
                .collect();
            let entries = entries?;
            if entries.len() != d {
                return Err(Error::Invalid(format!(
                    "diag token needs {d} entries, got {}",
                    entries.len()
                )));
            }
            Ok(ExactMatrix::diagonal(&entries))
        }
        _ if token.starts_with('@') => {
            let value = read_json(Path::new(&token[1..]))?;
            crate::json::matrix_from_json(&value, d, d, "matrix file")
        }
        _ if token.starts_with('[') => {
            let value: Value = serde_json::from_str(token)
                .map_err(|e| Error::Invalid(format!("inline matrix is not valid JSON: {e}")))?;
            crate::json::matrix_from_json(&value, d, d, "inline matrix")
        }
        other => Err(Error::Invalid(format!(
            "unrecognized matrix token '{other}' (use I, 0, diag:…, @file, or a JSON array)"
        ))),
    }
}

fn parse_alphas(text: &str) -> Result<Vec<CirculantParam>> {
    text.split(',').map(|part| part.trim().parse()).collect()
}

struct Report {
    json: Value,
    verified: bool,
    summary: String,
}

fn family_header(family: &CoupledFamily) -> Value {
    json!({
        "entry": algebra_spec_to_json(&family.entry),
        "A": matrix_to_json(&family.a),
        "B": matrix_to_json(&family.b),
        "n": family.n,
        "dim": family.dim(),
    })
}

fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::CheckProduct { input } => {
            let value = read_json(input)?;
            let t = block_toeplitz_from_json(field(&value, "t")?)?;
            let u = block_toeplitz_from_json(field(&value, "u")?)?;
            let condition = t.product_condition(&u)?;
            let product = t.multiply(&u)?;
            let toeplitz = product.structured.is_some();
            let json = json!({
                "n": t.n(),
                "d": t.d(),
                "product_condition": condition,
                "toeplitz": toeplitz,
                "dense": matrix_to_json(&product.dense),
                "structured": product
                    .structured
                    .as_ref()
                    .map(block_toeplitz_to_json)
                    .unwrap_or(Value::Null),
            });
            Ok(Report {
                json,
                verified: toeplitz,
                summary: if toeplitz {
                    "product is block Toeplitz; criterion agrees".to_string()
                } else {
                    "product is not block Toeplitz; criterion agrees".to_string()
                },
            })
        }
        Command::Algebra { entry, op, samples, seed } => {
            let spec = entry.resolve()?;
            let d = spec.matrix_size();
            let basis = algebra_basis(&spec)?;
            match op {
                AlgebraOp::Basis => Ok(Report {
                    json: json!({
                        "spec": algebra_spec_to_json(&spec),
                        "basis": subspace_to_json(&basis),
                    }),
                    verified: true,
                    summary: format!("algebra basis has dimension {}", basis.dim()),
                }),
                AlgebraOp::Commutant => {
                    let comm = commutant(&basis, d)?;
                    Ok(Report {
                        json: json!({
                            "spec": algebra_spec_to_json(&spec),
                            "commutant": subspace_to_json(&comm),
                        }),
                        verified: true,
                        summary: format!("commutant has dimension {}", comm.dim()),
                    })
                }
                AlgebraOp::Maximal => {
                    let maximal = is_maximal_commutative(&basis, d)?;
                    Ok(Report {
                        json: json!({
                            "spec": algebra_spec_to_json(&spec),
                            "maximal_commutative": maximal,
                            "algebra_dim": basis.dim(),
                        }),
                        verified: maximal,
                        summary: if maximal {
                            "algebra equals its commutant: maximal commutative".to_string()
                        } else {
                            "commutant is strictly larger: not maximal".to_string()
                        },
                    })
                }
                AlgebraOp::InverseClosed => {
                    let outcome = check_inverse_closed(&basis, d, *samples, *seed)?;
                    let (closed, witness, tested) = match &outcome {
                        InverseClosure::Closed { tested } => (true, Value::Null, *tested),
                        InverseClosure::Violated { member, .. } => {
                            (false, matrix_to_json(member), 0)
                        }
                    };
                    Ok(Report {
                        json: json!({
                            "spec": algebra_spec_to_json(&spec),
                            "inverse_closed": closed,
                            "tested": tested,
                            "witness": witness,
                        }),
                        verified: closed,
                        summary: if closed {
                            format!("inverse closure held on {tested} invertible samples")
                        } else {
                            "found an invertible member whose inverse leaves the span".to_string()
                        },
                    })
                }
            }
        }
        Command::Fab { action } => match action {
            FabAction::Build(args) => {
                let family = args.resolve()?;
                Ok(Report {
                    json: json!({
                        "family": family_header(&family),
                        "basis": subspace_to_json(&family.basis),
                    }),
                    verified: true,
                    summary: format!("family basis has dimension {}", family.dim()),
                })
            }
            FabAction::Closure(args) => {
                let family = args.resolve()?;
                let violation = family.closure_violation()?;
                let closed = violation.is_none();
                Ok(Report {
                    json: json!({
                        "family": family_header(&family),
                        "closed": closed,
                        "violation": violation
                            .as_ref()
                            .map(|v| json!({
                                "left": v.left,
                                "right": v.right,
                                "reason": v.reason.to_string(),
                            }))
                            .unwrap_or(Value::Null),
                    }),
                    verified: closed,
                    summary: if closed {
                        "family is a closed commutative algebra".to_string()
                    } else {
                        "family is not closed under multiplication".to_string()
                    },
                })
            }
            FabAction::Maximality { family, search_depth, seed } => {
                let family = family.resolve()?;
                let report = family.maximality(*search_depth, *seed)?;
                let verified = report.verdict.is_maximal();
                let summary = match &report.verdict {
                    crate::family::MaximalityVerdict::Maximal => {
                        "relative commutant collapses onto the family: Maximal".to_string()
                    }
                    crate::family::MaximalityVerdict::NotMaximal { extension_dim, .. } => format!(
                        "found a commutative Toeplitz extension of dimension {extension_dim}: NotMaximal"
                    ),
                    crate::family::MaximalityVerdict::Inconclusive { .. } => {
                        "commutant is larger but no algebra extension stabilized: Inconclusive".to_string()
                    }
                };
                Ok(Report {
                    json: json!({
                        "family": family_header(&family),
                        "maximality": maximality_report_to_json(&report),
                    }),
                    verified,
                    summary,
                })
            }
            FabAction::DeriveAb { input } => {
                let value = read_json(input)?;
                let t = block_toeplitz_from_json(field(&value, "t")?)?;
                let entry = algebra_spec_from_json(field(&value, "entry")?)?;
                let outcome = crate::family::derive_coupling(&t, &entry)?;
                match outcome {
                    DerivedCoupling::Derived { a, b, pivot } => Ok(Report {
                        json: json!({
                            "derived": true,
                            "A": matrix_to_json(&a),
                            "B": matrix_to_json(&b),
                            "pivot": pivot,
                        }),
                        verified: true,
                        summary: format!("derived factors from invertible block at index {pivot}"),
                    }),
                    DerivedCoupling::NoInvertibleEntry => Ok(Report {
                        json: json!({"derived": false, "A": Value::Null, "B": Value::Null, "pivot": Value::Null}),
                        verified: false,
                        summary: "no off-diagonal block is invertible".to_string(),
                    }),
                }
            }
        },
        Command::Scalar { action } => match action {
            ScalarAction::FindAlpha { input, coeffs } => {
                let t = match (input, coeffs) {
                    (Some(path), None) => block_toeplitz_from_json(&read_json(path)?)?,
                    (None, Some(text)) => {
                        let parsed: Result<Vec<GaussianRational>> = text
                            .split(',')
                            .map(|part| {
                                scalar_from_json(&Value::String(part.trim().to_string()), "--coeffs")
                            })
                            .collect();
                        let parsed = parsed?;
                        if parsed.len() % 2 == 0 {
                            return Err(Error::Invalid(
                                "--coeffs needs an odd number of entries (2n−1)".into(),
                            ));
                        }
                        let n = parsed.len().div_ceil(2);
                        BlockToeplitz::scalar(n, &parsed)?
                    }
                    _ => {
                        return Err(Error::Invalid(
                            "provide exactly one of --input or --coeffs".into(),
                        ))
                    }
                };
                let scan = find_alpha(&t)?;
                let (kind, alpha) = match &scan {
                    AlphaScan::AllAlphas => ("all", Value::Null),
                    AlphaScan::Unique(param) => ("unique", Value::String(param.to_string())),
                    AlphaScan::NoAlpha => ("none", Value::Null),
                };
                Ok(Report {
                    json: json!({"scan": kind, "alpha": alpha, "n": t.n()}),
                    verified: true,
                    summary: match &scan {
                        AlphaScan::AllAlphas => "diagonal: member of every circulant class".to_string(),
                        AlphaScan::Unique(param) => format!("member of the circulant class alpha = {param}"),
                        AlphaScan::NoAlpha => "member of no circulant class".to_string(),
                    },
                })
            }
            ScalarAction::Circulant { n, alpha } => {
                let alpha: CirculantParam = alpha.parse()?;
                if *n == 0 {
                    return Err(Error::Invalid("order must be positive".into()));
                }
                let basis = circulant_basis(*n, &alpha);
                Ok(Report {
                    json: json!({
                        "n": n,
                        "alpha": alpha.to_string(),
                        "basis": subspace_to_json(&basis),
                    }),
                    verified: true,
                    summary: format!("circulant basis of dimension {}", basis.dim()),
                })
            }
        },
        Command::Casestudy { action } => {
            let outcome = match action {
                CaseAction::Diagonal { n, d, alphas } => {
                    diagonal_entries_case(*n, *d, &parse_alphas(alphas)?)?
                }
                CaseAction::Schur { n, sigma, tau } => schur_case(*n, *sigma, *tau)?,
                CaseAction::Nilpotent { n } => nilpotent_case(*n)?,
            };
            let verified = outcome.all_verified();
            let summary = format!(
                "{}: {}/{} claims verified",
                outcome.label,
                outcome.reports.iter().filter(|r| r.verified).count(),
                outcome.reports.len()
            );
            Ok(Report {
                json: case_outcome_to_json(&outcome),
                verified,
                summary,
            })
        }
        Command::Suite { seed } => {
            let report = run_suite(*seed);
            for criterion in &report.criteria {
                eprintln!(
                    "criterion {:>2}: {} — {}",
                    criterion.id,
                    if criterion.passed { "PASS" } else { "FAIL" },
                    criterion.label
                );
            }
            let verified = report.all_passed();
            Ok(Report {
                json: suite_to_json(&report),
                verified,
                summary: format!(
                    "suite seed {}: {}/{} criteria passed",
                    seed,
                    report.criteria.iter().filter(|c| c.passed).count(),
                    report.criteria.len()
                ),
            })
        }
    }
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let kind = err.kind();
            let _ = err.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                0
            } else {
                2
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let rendered =
                serde_json::to_string_pretty(&report.json).expect("reports are serializable");
            match &cli.output {
                Some(path) => {
                    if let Err(err) = fs::write(path, rendered + "\n") {
                        eprintln!("error: cannot write {}: {err}", path.display());
                        return 2;
                    }
                }
                None => println!("{rendered}"),
            }
            eprintln!("{}", report.summary);
            if report.verified {
                0
            } else {
                1
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}
