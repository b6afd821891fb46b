//! Command-line front end over the coding, proof checking, bounded search,
//! enumeration, and audit machinery.
//!
//! Exit status contract: 0 on success, including predicate evaluations that
//! come out false; 1 on domain errors (unparseable formulas, numbers that
//! decode to nothing, invalid proofs); 2 on usage errors, which clap
//! reports itself.

use std::fmt;
use std::fs::OpenOptions;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arithmos_core::calculus::parse_proof_text;
use arithmos_core::{
    audit_chain, audit_conditionals, audit_identity, decode_formula, diag_formula, formula_code,
    k_member_bounded, parse_formula, phi, scan_lemma1, search_coextensive, write_report,
    AuditRecord, Calculus, CodecError, GoedelNumber, KEvidence, PhiSequence, ProofObject,
    SearchBudget, Verdict,
};

#[derive(Parser)]
#[command(
    name = "arithmos",
    version,
    about = "Godel coding, proof predicates, bounded search, and claim audits \
             for a small arithmetic calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

/// Settings shared by every command.
#[derive(Args)]
struct RunConfig {
    /// Search budget: max lines, max formula size, term pool cap.
    #[arg(long, global = true, default_value = "4,12,4", value_parser = parse_budget)]
    budget: SearchBudget,
    /// How to print codes: decimal when the value is writable, or a product
    /// of prime powers.
    #[arg(long, global = true, value_enum, default_value_t = Render::Decimal)]
    render: Render,
    /// Append report records to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on the audit test universe: raw numbers joined into chain
    /// universes, or the line cap for lemma scans (full universe if omitted
    /// there).
    #[arg(long, global = true)]
    universe_cap: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Decimal,
    Factored,
}

fn parse_budget(s: &str) -> Result<SearchBudget, String> {
    s.parse()
}

fn parse_number(s: &str) -> Result<GoedelNumber, String> {
    s.parse().map_err(|e: CodecError| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Encode a formula into its code.
    Encode { formula: String },
    /// Decode a code back into its formula.
    Decode { number: String },
    /// Check a proof file, optionally against a target formula.
    CheckProof {
        file: PathBuf,
        /// Target formula the proof is measured against.
        #[arg(long)]
        of: Option<String>,
        /// Which predicate the target is measured with.
        #[arg(long = "as", value_enum, default_value_t = WitnessKind::Proof)]
        kind: WitnessKind,
    },
    /// Evaluate a predicate on two numbers.
    #[command(subcommand)]
    Check(Predicate),
    /// Decide a formula within the search budget.
    Decide { formula: String },
    /// List ranks of the certified enumeration.
    Enumerate {
        /// How many ranks to print.
        #[arg(long, default_value_t = 30)]
        count: usize,
        /// First rank to print.
        #[arg(long, default_value_t = 1)]
        start: usize,
    },
    /// Inspect one diagonal instance.
    Diag {
        #[arg(long)]
        n: usize,
    },
    /// Run an audit and write its records as a report.
    #[command(subcommand)]
    Audit(Audit),
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Proof,
    Refutation,
}

#[derive(Subcommand)]
enum Predicate {
    /// Does x code a proof of the formula coded by y?
    Xby {
        #[arg(value_parser = parse_number)]
        x: GoedelNumber,
        #[arg(value_parser = parse_number)]
        y: GoedelNumber,
    },
    /// Does x code a refutation of the formula coded by y?
    Xwy {
        #[arg(value_parser = parse_number)]
        x: GoedelNumber,
        #[arg(value_parser = parse_number)]
        y: GoedelNumber,
    },
}

#[derive(Subcommand)]
enum Audit {
    /// Scan proof sequences for a number that proves and refutes at once.
    Lemmas {
        /// Longest sequence length to scan.
        #[arg(long, default_value_t = 2)]
        len: usize,
    },
    /// Audit the unprovability-to-refutation chain at one rank.
    Chain {
        #[arg(long)]
        n: usize,
        /// The designated number particularization lands on.
        #[arg(long, default_value = "0", value_parser = parse_number)]
        m: GoedelNumber,
    },
    /// Audit the provability conditionals at one rank.
    Conditionals {
        #[arg(long)]
        n: usize,
        /// Also audit the self-equivalence claim at this rank.
        #[arg(long)]
        candidate: Option<usize>,
    },
    /// Audit the identity-law argument at a rank pair.
    Identity {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Compare enumerated formulas against bounded membership evidence.
    Coextensive {
        /// How many leading ranks to test.
        #[arg(long, default_value_t = 10)]
        first: usize,
        /// Sample points, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,30")]
        sample: Vec<usize>,
    },
}

/// Anything that ends a run with exit status 1.
#[derive(Debug)]
struct DomainError(String);

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

fn fail(msg: impl Into<String>) -> DomainError {
    DomainError(msg.into())
}

fn render(g: &GoedelNumber, mode: Render) -> String {
    match mode {
        Render::Decimal => g.to_decimal_string(),
        Render::Factored => g.to_factored_string(),
    }
    .unwrap_or_else(|| g.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, config: &RunConfig) -> Result<(), DomainError> {
    let calc = Calculus::standard();
    match command {
        Command::Encode { formula } => {
            let f = parse_formula(&formula)?;
            println!("{}", render(&formula_code(&f), config.render));
        }
        Command::Decode { number } => {
            let g = parse_number(&number).map_err(fail)?;
            let f = decode_formula(&g)?;
            println!("{f}");
        }
        Command::CheckProof { file, of, kind } => {
            let text = std::fs::read_to_string(&file)?;
            let (lines, justs) = parse_proof_text(&text)?;
            let proof = ProofObject::new(&calc, lines, justs)?;
            let code = proof.code();
            println!("proof code: {}", render(&code, config.render));
            println!("proves: {}", proof.last());
            if let Some(target) = of {
                let y = formula_code(&parse_formula(&target)?);
                match kind {
                    WitnessKind::Proof => println!("xBy: {}", calc.proves(&code, &y)),
                    WitnessKind::Refutation => println!("xWy: {}", calc.refutes(&code, &y)),
                }
            }
        }
        Command::Check(predicate) => match predicate {
            Predicate::Xby { x, y } => println!("xBy: {}", calc.proves(&x, &y)),
            Predicate::Xwy { x, y } => println!("xWy: {}", calc.refutes(&x, &y)),
        },
        Command::Decide { formula } => {
            let f = parse_formula(&formula)?;
            match calc.decide_bounded(&f, config.budget) {
                Verdict::Provable(w) => println!("provable, witness {}", render(&w, config.render)),
                Verdict::Refutable(w) => {
                    println!("refutable, witness {}", render(&w, config.render))
                }
                Verdict::Unknown(b) => println!("unknown within budget {b}"),
            }
        }
        Command::Enumerate { count, start } => {
            let seq = PhiSequence::certified();
            if start == 0 {
                return Err(fail("ranks start at 1"));
            }
            if start > seq.len() {
                return Err(fail(format!(
                    "rank {start} exceeds the certified enumeration ({} ranks)",
                    seq.len()
                )));
            }
            let end = start.saturating_add(count - 1).min(seq.len());
            for n in start..=end {
                let f = seq.phi(n).expect("rank in range");
                let code = seq.code(n).expect("rank in range");
                println!("{n}\t{f}\t{}", render(code, config.render));
            }
        }
        Command::Diag { n } => {
            let base = phi(n).ok_or_else(|| fail(format!("rank {n} is out of range")))?;
            let d = diag_formula(n).expect("same range as phi");
            println!("phi: {base}");
            println!("diagonal: {d}");
            println!("code: {}", render(&formula_code(&d), config.render));
            match k_member_bounded(&calc, n, config.budget).expect("same range as phi") {
                KEvidence::NotInK { proof } => println!(
                    "membership: not a member, proved by {}",
                    render(&proof, config.render)
                ),
                KEvidence::InKSuggested { refutation } => println!(
                    "membership: suggested member, refuted by {}",
                    render(&refutation, config.render)
                ),
                KEvidence::Unknown => println!("membership: unknown within budget"),
            }
        }
        Command::Audit(audit) => {
            let budget = config.budget;
            let (scope, mut records) = match audit {
                Audit::Lemmas { len } => {
                    let cap = config.universe_cap;
                    let scope = format!(
                        "lemmas len={len} cap={}",
                        cap.map_or_else(|| "none".to_string(), |c| c.to_string())
                    );
                    (scope, scan_lemma1(&calc, "standard", cap, len))
                }
                Audit::Chain { n, m } => {
                    let cap = config.universe_cap.unwrap_or(50);
                    let scope = format!("chain n={n} m={m} budget={budget} cap={cap}");
                    (scope, audit_chain(&calc, n, &m, budget, cap))
                }
                Audit::Conditionals { n, candidate } => {
                    let scope = match candidate {
                        Some(k) => format!("conditionals n={n} k={k} budget={budget}"),
                        None => format!("conditionals n={n} budget={budget}"),
                    };
                    (scope, audit_conditionals(&calc, n, budget, candidate))
                }
                Audit::Identity { k, n } => (
                    format!("identity k={k} n={n} budget={budget}"),
                    audit_identity(&calc, k, n, budget),
                ),
                Audit::Coextensive { first, sample } => {
                    let listed = sample
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    (
                        format!("coextensive M={first} sample={listed} budget={budget}"),
                        search_coextensive(&calc, first, &sample, budget),
                    )
                }
            };
            write_records(config, &scope, &mut records)?;
        }
    }
    Ok(())
}

fn write_records(
    config: &RunConfig,
    scope: &str,
    records: &mut [AuditRecord],
) -> Result<(), DomainError> {
    match &config.out {
        Some(path) => {
            let mut file = OpenOptions::new().create(true).append(true).open(path)?;
            write_report(&mut file, scope, records)?;
        }
        None => {
            let stdout = std::io::stdout();
            write_report(&mut stdout.lock(), scope, records)?;
        }
    }
    Ok(())
}
