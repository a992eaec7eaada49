//! Command-line front end. [`run`] takes the argument list and a writer and
//! returns the exit code, so the binary is a thin wrapper.
//!
//! Exit codes: 0 result as expected, 1 mismatch, 2 usage or parse error,
//! 3 inconclusive (budget or bounds exhausted).

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::gen::{corpus, random_cll, random_il, rng, GenConfig};
use crate::models::tables::{check_table, Bounds, Table};
use crate::models::{refute_sequent, render_algebra, render_valuation};
use crate::prover::{prove, Budget, NotFoundReason, ProofResult, Sequent, Theory};
use crate::rewrite::{apply_traced, SimplificationId, Strategy};
use crate::selftest;
use crate::syntax::{parse, parse_ill, print, print_cll, print_il, Lang};
use crate::xlate::{translate, TranslationId};

pub const OK: i32 = 0;
pub const MISMATCH: i32 = 1;
pub const USAGE: i32 = 2;
pub const INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lintrans", version, about = "Negative translations, Girard embeddings, simplification, proof search and countermodels")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// Tab-separated key=value lines.
    Records,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply a translation to each formula.
    Translate {
        #[arg(long)]
        translation: String,
        /// Input language; defaults to the translation's source language.
        #[arg(long)]
        from: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Rewrite formulas with a simplification rule set.
    Simplify {
        /// Rule set id, or `none` for the empty set.
        #[arg(long)]
        simplification: String,
        /// Overrides the rule set's own strategy (outside or inside).
        #[arg(long)]
        strategy: Option<String>,
        /// Print every rule firing.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Search for a proof of each sequent `A, B |- C` (a bare formula means `|- A`).
    Prove {
        #[arg(long, default_value = "ill")]
        theory: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Expected outcome.
        #[arg(long, value_enum, default_value_t = ProveExpect::Proved)]
        expect: ProveExpect,
        /// Print the proof tree.
        #[arg(long)]
        show_proof: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Search for a finite countermodel of each sequent.
    Refute {
        #[arg(long, default_value = "ill")]
        theory: String,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[arg(long, value_enum, default_value_t = RefuteExpect::Found)]
        expect: RefuteExpect,
        #[command(flatten)]
        input: Input,
    },
    /// Check the double-negation (prop4) and bang (prop5) equivalence tables.
    CheckTables {
        /// prop4, prop5 or all.
        #[arg(default_value = "all")]
        which: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Print each countermodel below its entry.
        #[arg(long)]
        models: bool,
    },
    /// Print seeded random formulas.
    Corpus {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "ill")]
        lang: String,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Read one item per line from this file (blank lines and `#` comments skipped).
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
    /// Inline items.
    pub items: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = Budget::default().max_depth)]
    pub depth: u32,
    #[arg(long, default_value_t = Budget::default().max_contractions)]
    pub contractions: u32,
    #[arg(long, default_value_t = Budget::default().fresh_constants)]
    pub fresh_constants: u32,
    #[arg(long, default_value_t = Budget::default().timeout_ms)]
    pub timeout_ms: u64,
    #[arg(long)]
    pub analytic_cut: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_depth: self.depth,
            max_contractions: self.contractions,
            fresh_constants: self.fresh_constants,
            timeout_ms: self.timeout_ms,
            analytic_cut: self.analytic_cut,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 6)]
    pub max_size: usize,
    #[arg(long, default_value_t = 3)]
    pub max_domain: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProveExpect {
    Proved,
    Unprovable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RefuteExpect {
    Found,
    None,
}

struct Fail(i32, String);

fn usage(msg: impl Into<String>) -> Fail {
    Fail(USAGE, msg.into())
}

impl Input {
    fn items(&self) -> Result<Vec<String>, Fail> {
        let mut v = self.items.clone();
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            v.extend(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from));
        }
        if v.is_empty() {
            return Err(usage("no input: give items inline or with --input"));
        }
        Ok(v)
    }
}

fn sequent(text: &str) -> Result<Sequent, Fail> {
    let text = if text.contains("|-") || text.contains('⊢') { text.to_string() } else { format!("|- {text}") };
    Sequent::parse(&text).map_err(|e| usage(format!("{text}: {e}")))
}

fn theory(s: &str) -> Result<Theory, Fail> {
    s.parse().map_err(usage)
}

/// Parses `args` (including the program name) and runs the command.
/// Results go to `out`, errors to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return USAGE;
            }
            let _ = write!(out, "{e}");
            return OK;
        }
    };
    let mut buf = String::new();
    let code = match execute(&cli, &mut buf) {
        Ok(c) => c,
        Err(Fail(c, msg)) => {
            eprintln!("error: {msg}");
            c
        }
    };
    let _ = out.write_all(buf.as_bytes());
    code
}

/// Runs with the process arguments, printing to stdout.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    run(std::env::args_os(), &mut lock)
}

fn execute(cli: &Cli, out: &mut String) -> Result<i32, Fail> {
    let rec = cli.format == Format::Records;
    match &cli.command {
        Command::Translate { translation, from, input } => {
            let id: TranslationId = translation.parse().map_err(|e: crate::xlate::XlateError| usage(e.to_string()))?;
            let lang = match from {
                Some(l) => l.parse::<Lang>().map_err(usage)?,
                None => id.source(),
            };
            for item in input.items()? {
                let a = parse(&item, lang).map_err(|e| usage(format!("{item}: {e}")))?;
                let b = translate(id, &a).map_err(|e| usage(e.to_string()))?;
                if rec {
                    let _ = writeln!(out, "input={a}\ttranslation={id}\toutput={b}");
                } else {
                    let _ = writeln!(out, "{b}");
                }
            }
            Ok(OK)
        }
        Command::Simplify { simplification, strategy, trace, input } => {
            let (rules, default) = if simplification == "none" {
                (Vec::new(), Strategy::Outside)
            } else {
                let id: SimplificationId = simplification.parse().map_err(usage)?;
                (id.rules(), id.strategy())
            };
            let strategy = match strategy {
                Some(s) => s.parse().map_err(usage)?,
                None => default,
            };
            for item in input.items()? {
                let a = parse_ill(&item).map_err(|e| usage(format!("{item}: {e}")))?;
                let (b, firings) = apply_traced(&a, &rules, strategy);
                if *trace {
                    for (i, f) in firings.iter().enumerate() {
                        if rec {
                            let _ = writeln!(
                                out,
                                "step={}\tposition={}\trule={}\tbefore={}\tafter={}",
                                i + 1,
                                f.path_string(),
                                rules[f.rule],
                                f.before,
                                f.after
                            );
                        } else {
                            let _ = writeln!(out, "step {} at {}: {}   [{}]", i + 1, f.path_string(), f.after, rules[f.rule]);
                        }
                    }
                }
                if rec {
                    let _ = writeln!(out, "input={a}\toutput={b}\tsteps={}", firings.len());
                } else {
                    let _ = writeln!(out, "{b}");
                }
            }
            Ok(OK)
        }
        Command::Prove { theory: th, budget, expect, show_proof, input } => {
            let th = theory(th)?;
            let b = budget.budget();
            let mut code = OK;
            for item in input.items()? {
                let s = sequent(&item)?;
                let r = prove(&s, th, &b);
                let (word, c) = match (&r, expect) {
                    (ProofResult::Proved(_), ProveExpect::Proved) => ("proved", OK),
                    (ProofResult::Proved(_), ProveExpect::Unprovable) => ("proved", MISMATCH),
                    (ProofResult::NotFound(NotFoundReason::Saturated), ProveExpect::Unprovable) => ("not-found", OK),
                    (ProofResult::NotFound(NotFoundReason::BudgetExhausted), ProveExpect::Unprovable) => ("not-found", INCONCLUSIVE),
                    (ProofResult::NotFound(NotFoundReason::Saturated), ProveExpect::Proved) => ("not-found", MISMATCH),
                    (ProofResult::NotFound(NotFoundReason::BudgetExhausted), ProveExpect::Proved) => ("not-found", INCONCLUSIVE),
                };
                code = code.max(c);
                let reason = match &r {
                    ProofResult::NotFound(NotFoundReason::Saturated) => "saturated",
                    ProofResult::NotFound(NotFoundReason::BudgetExhausted) => "budget-exhausted",
                    ProofResult::Proved(_) => "",
                };
                match (&r, rec) {
                    (ProofResult::Proved(p), true) => {
                        let _ = writeln!(out, "sequent={s}\ttheory={th}\tresult=proved\tsize={}\theight={}\tuses={}", p.size(), p.height(), p.theory_used());
                    }
                    (ProofResult::Proved(p), false) => {
                        let _ = writeln!(out, "{s}: proved in {th} ({} rules, uses {})", p.size(), p.theory_used());
                    }
                    (_, true) => {
                        let _ = writeln!(out, "sequent={s}\ttheory={th}\tresult={word}\treason={reason}");
                    }
                    (_, false) => {
                        let _ = writeln!(out, "{s}: not found in {th} ({reason})");
                    }
                }
                if *show_proof {
                    if let ProofResult::Proved(p) = &r {
                        out.push_str(&p.render());
                    }
                }
            }
            Ok(code)
        }
        Command::Refute { theory: th, bounds, expect, input } => {
            let th = theory(th)?;
            let mut code = OK;
            for item in input.items()? {
                let s = sequent(&item)?;
                let w = refute_sequent(&s, th, bounds.max_size, bounds.max_domain);
                code = code.max(match (&w, expect) {
                    (Some(_), RefuteExpect::Found) | (None, RefuteExpect::None) => OK,
                    (Some(_), RefuteExpect::None) => MISMATCH,
                    (None, RefuteExpect::Found) => INCONCLUSIVE,
                });
                match (w, rec) {
                    (Some(w), true) => {
                        let vals: Vec<String> = render_valuation(&w.algebra, &w.valuation).lines().skip(1).map(|l| l.trim().replace(' ', "")).collect();
                        let _ = writeln!(
                            out,
                            "sequent={s}\ttheory={th}\tresult=found\tsize={}\tdomain={}\tlhs={}\trhs={}\tvaluation={}",
                            w.algebra.size(),
                            w.valuation.domain,
                            w.algebra.label(w.lhs),
                            w.algebra.label(w.rhs),
                            vals.join(";")
                        );
                    }
                    (Some(w), false) => {
                        let _ = writeln!(out, "{s}: countermodel in {th} (hypotheses {} not below conclusion {})", w.algebra.label(w.lhs), w.algebra.label(w.rhs));
                        out.push_str(&render_algebra(&w.algebra));
                        out.push_str(&render_valuation(&w.algebra, &w.valuation));
                    }
                    (None, true) => {
                        let _ = writeln!(out, "sequent={s}\ttheory={th}\tresult=not-found\tmax_size={}\tmax_domain={}", bounds.max_size, bounds.max_domain);
                    }
                    (None, false) => {
                        let _ = writeln!(out, "{s}: no countermodel in {th} up to size {} and domain {}", bounds.max_size, bounds.max_domain);
                    }
                }
            }
            Ok(code)
        }
        Command::CheckTables { which, budget, bounds, models } => {
            let tables = match which.as_str() {
                "all" => vec![Table::DoubleNegation, Table::Bang],
                other => vec![other.parse::<Table>().map_err(usage)?],
            };
            let b = Bounds { budget: budget.budget(), max_size: bounds.max_size, max_domain: bounds.max_domain };
            let mut code = OK;
            for t in tables {
                let report = check_table(t, &b);
                if rec {
                    for (r, c) in report.cells() {
                        let status = if c.mismatch() {
                            "mismatch"
                        } else if c.inconclusive() {
                            "inconclusive"
                        } else {
                            "ok"
                        };
                        let _ = writeln!(
                            out,
                            "table={}\trow={}\ttheory={}\texpected={}\tgot={}\tstatus={status}",
                            t.name(),
                            r.row.label,
                            c.theory,
                            if c.expected { "yes" } else { "no" },
                            c.verdict.symbol()
                        );
                    }
                } else {
                    let _ = writeln!(out, "table {}", t.name());
                    out.push_str(&report.render(*models));
                    let _ = writeln!(out, "mismatches={} inconclusive={} (bounds: size {}, domain {})", report.mismatches(), report.inconclusive(), b.max_size, b.max_domain);
                }
                code = code.max(if report.mismatches() > 0 {
                    MISMATCH
                } else if report.inconclusive() > 0 {
                    INCONCLUSIVE
                } else {
                    OK
                });
            }
            Ok(code)
        }
        Command::Corpus { count, depth, atoms, seed, lang } => {
            let cfg = GenConfig { max_depth: *depth, atoms: *atoms, ..GenConfig::default() };
            let lines: Vec<String> = match lang.parse::<Lang>().map_err(usage)? {
                Lang::Ill => corpus(*seed, *count, &cfg).iter().map(print).collect(),
                Lang::Il => {
                    let mut g = rng(*seed);
                    (0..*count).map(|_| print_il(&random_il(&mut g, &cfg))).collect()
                }
                Lang::Cll => {
                    let mut g = rng(*seed);
                    (0..*count).map(|_| print_cll(&random_cll(&mut g, &cfg))).collect()
                }
            };
            for (i, l) in lines.iter().enumerate() {
                if rec {
                    let _ = writeln!(out, "index={i}\tformula={l}");
                } else {
                    let _ = writeln!(out, "{l}");
                }
            }
            Ok(OK)
        }
        Command::Selftest => {
            let outcomes = selftest::run_all(|o| {
                eprintln!("{o}");
            });
            for o in &outcomes {
                if rec {
                    let _ = writeln!(out, "criterion={}\tstatus={}\ttitle={}", o.number, if o.passed { "pass" } else { "fail" }, o.title);
                } else {
                    let _ = writeln!(out, "criterion {} {} {}: {}", o.number, if o.passed { "PASS" } else { "FAIL" }, o.title, o.detail);
                }
            }
            Ok(if outcomes.iter().all(|o| o.passed) { OK } else { MISMATCH })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("lintrans").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn translate_examples() {
        assert_eq!(run_str(&["translate", "--translation", "gg", "(P & Q) * R"]), (0, "(~~P & ~~Q) * ~~R\n".into()));
        assert_eq!(run_str(&["translate", "--translation", "kolm-outer", "(P & Q) * R"]), (0, "~~(~~(~~P & ~~Q) * ~~R)\n".into()));
        assert_eq!(run_str(&["translate", "--translation", "dagger", "--from", "il", "P /\\ Q"]), (0, "P & Q\n".into()));
        assert_eq!(run_str(&["translate", "--translation", "dagger", "--from", "ill", "P & Q"]).0, USAGE);
        assert_eq!(run_str(&["translate", "--translation", "nope", "P"]).0, USAGE);
        assert_eq!(run_str(&["translate", "--translation", "gg", "P &"]).0, USAGE);
    }

    #[test]
    fn simplify_trace() {
        let (code, out) = run_str(&["simplify", "--simplification", "gg-from-kolm", "--trace", "~~(~~(~~P & ~~Q) * ~~R)"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3, "{out}");
        assert!(lines[0].starts_with("step 1 at root: ~~(~~P & ~~Q) * ~~R"));
        assert_eq!(lines[2], "(~~P & ~~Q) * ~~R");
        let (_, out) = run_str(&["simplify", "--simplification", "gg-from-kolm", "--strategy", "inside", "~~(~~(~~P & ~~Q) * ~~R)"]);
        assert_eq!(out, "~~((~~P & ~~Q) * ~~R)\n");
        let (_, out) = run_str(&["simplify", "--simplification", "none", "~~(~~P * ~~Q)"]);
        assert_eq!(out, "~~(~~P * ~~Q)\n");
    }

    #[test]
    fn prove_and_refute_exit_codes() {
        assert_eq!(run_str(&["prove", "--theory", "cllb", "~~P |- P"]).0, OK);
        assert_ne!(run_str(&["prove", "--theory", "ill", "--timeout-ms", "2000", "~~P |- P"]).0, OK);
        assert_eq!(run_str(&["prove", "--theory", "ill", "--expect", "unprovable", "~~P |- P"]).0, OK);
        let (code, out) = run_str(&["refute", "--theory", "ill", "~~(~~P * ~~Q) -o ~~P * ~~Q"]);
        assert_eq!(code, OK, "{out}");
        assert!(out.contains("tensor:"));
        assert_eq!(run_str(&["refute", "--theory", "ill", "--max-size", "3", "--expect", "none", "P |- P"]).0, OK);
        assert_eq!(run_str(&["refute", "--theory", "ill", "--max-size", "3", "P |- P"]).0, INCONCLUSIVE);
        assert_eq!(run_str(&["prove", "--theory", "nope", "P |- P"]).0, USAGE);
    }

    #[test]
    fn records_and_determinism() {
        let args = ["--format", "records", "corpus", "--count", "5", "--seed", "3"];
        let (code, a) = run_str(&args);
        assert_eq!(code, 0);
        assert_eq!(a.lines().count(), 5);
        assert!(a.lines().all(|l| l.starts_with("index=") && l.contains("\tformula=")));
        assert_eq!(run_str(&args).1, a);
        let (_, r) = run_str(&["--format", "records", "prove", "--theory", "ilb", "A |- !A"]);
        assert!(r.starts_with("sequent=A |- !A\ttheory=ilb\tresult=proved"), "{r}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["frobnicate"]).0, USAGE);
        assert_eq!(run_str(&["prove"]).0, USAGE);
        assert_eq!(run_str(&["--help"]).0, OK);
    }
}
