//! The acceptance suite, shared by the `selftest` subcommand and the
//! `acceptance` test target. Every proof found along the way is replayed by
//! the independent checker and counted for the last criterion.

use std::fmt;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::formula::{alpha_eq, dneg, quest, Formula};
use crate::gen::{all_formulas, corpus, random_cll, random_il, random_ill, rng, GenConfig};
use crate::models::tables::{check_table, Bounds, Report, Table, Verdict};
use crate::models::{evaluate_sequent, refute_sequent, Countermodel, Witness};
use crate::prover::{check, prove, prove_with_axioms, Budget, Proof, ProofResult, Sequent, Theory};
use crate::rewrite::{apply, apply_traced, check_simplification, SimplificationId, Strategy};
use crate::syntax::{parse_cll, parse_il, parse_ill, print, print_cll, print_il};
use crate::xlate::{compose_literal, composed, girard_circ, translate_ill, Composed, TranslationId};

/// The worked example and its four stages.
pub const EXAMPLE: &str = "(P & Q) * R";
pub const KOLM_OUTER: &str = "~~(~~(~~P & ~~Q) * ~~R)";
pub const INSIDE: &str = "~~((~~P & ~~Q) * ~~R)";
pub const OUTSIDE_STEP: &str = "~~(~~P & ~~Q) * ~~R";
pub const OUTSIDE: &str = "(~~P & ~~Q) * ~~R";

/// Atom clause of each composed translation.
pub const COMPOSED_ATOM: [(Composed, &str); 4] =
    [(Composed::GCirc, "!?!P"), (Composed::GStar, "!?!P"), (Composed::KuCirc, "!?!P"), (Composed::KuStar, "!?!P")];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub number: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {} {} ({:.1}s): {}",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Replays proofs as they are produced.
#[derive(Default)]
pub struct Replays {
    checked: Mutex<(usize, Vec<String>)>,
}

impl Replays {
    pub fn record(&self, p: &Proof, th: Theory, axioms: &[Sequent]) {
        let r = check::replay(p, th, axioms);
        let mut g = self.checked.lock().unwrap();
        g.0 += 1;
        if let Err(e) = r {
            g.1.push(format!("{}: {e}", p.sequent()));
        }
    }

    pub fn checked(&self) -> usize {
        self.checked.lock().unwrap().0
    }

    pub fn failures(&self) -> Vec<String> {
        self.checked.lock().unwrap().1.clone()
    }

    /// Proves `s`, replaying the proof when there is one.
    pub fn prove(&self, s: &Sequent, th: Theory, b: &Budget) -> ProofResult {
        let r = prove(s, th, b);
        if let ProofResult::Proved(p) = &r {
            self.record(p, th, &[]);
        }
        r
    }

    pub fn equivalent(&self, a: &Formula, b: &Formula, th: Theory, bud: &Budget) -> bool {
        self.prove(&Sequent::new(vec![a.clone()], b.clone()), th, bud).is_proved()
            && self.prove(&Sequent::new(vec![b.clone()], a.clone()), th, bud).is_proved()
    }
}

fn ill(s: &str) -> Formula {
    parse_ill(s).expect("built-in formula parses")
}

fn timed(number: usize, title: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (passed, detail) = f();
    Outcome { number, title, passed, detail, elapsed: t.elapsed() }
}

/// Confirms a witness with a fresh evaluation.
fn revalidates(s: &Sequent, w: &Witness) -> bool {
    match evaluate_sequent(s, &w.algebra, &w.valuation) {
        Ok((l, r)) => !w.algebra.le(l, r),
        Err(_) => false,
    }
}

pub fn worked_example() -> Outcome {
    timed(1, "worked example", || {
        let a = ill(EXAMPLE);
        let k = translate_ill(TranslationId::KolmOuter, &a).unwrap();
        let rules = SimplificationId::GGfromKolmO.rules();
        let (out, trace) = apply_traced(&k, &rules, Strategy::Outside);
        let inside = apply(&k, &rules, Strategy::Inside);
        let inside_again = apply(&inside, &rules, Strategy::Inside);
        let got = [
            print(&k),
            trace.first().map(|f| print(&f.after)).unwrap_or_default(),
            print(&out),
            print(&inside),
        ];
        let want = [KOLM_OUTER, OUTSIDE_STEP, OUTSIDE, INSIDE];
        let ok = got.iter().zip(want).all(|(g, w)| g == w) && trace.len() == 2 && inside_again == inside;
        (ok, format!("outer={} step={} outside={} inside={}", got[0], got[1], got[2], got[3]))
    })
}

pub fn simplification_identities(count: usize) -> Outcome {
    timed(2, "simplification identities", || {
        let cfg = GenConfig { max_depth: 6, ..GenConfig::default() };
        let fs = corpus(2024, count, &cfg);
        let mut fails = 0;
        let mut first = String::new();
        for id in SimplificationId::ALL {
            let r = check_simplification(id, &fs);
            for e in r.failures() {
                if first.is_empty() {
                    first = format!("; first failure {id} on {}", e.formula);
                }
                fails += 1;
            }
        }
        (fails == 0, format!("{} formulas x 6 rule sets, {fails} failures{first}", fs.len()))
    })
}

fn table_outcome(number: usize, title: &'static str, t: Table, rp: &Replays, required: &[(&str, Theory)]) -> Outcome {
    timed(number, title, || {
        let bounds = Bounds::default();
        let report = check_table(t, &bounds);
        let mut problems = Vec::new();
        // Re-derive the proofs of the positive entries so they are replayed,
        // and time each one against the per-entry limit.
        for (r, c) in report.cells() {
            let label = format!("{} {}", r.row.label, c.theory.name());
            if c.mismatch() {
                problems.push(format!("{label} mismatch ({})", c.verdict.symbol()));
            }
            match &c.verdict {
                Verdict::Proved => {
                    let t0 = Instant::now();
                    if !rp.equivalent(&r.row.lhs, &r.row.rhs, c.theory, &bounds.budget) || t0.elapsed() > Duration::from_secs(10) {
                        problems.push(format!("{label} not re-proved within 10 s"));
                    }
                }
                Verdict::Refuted(cm) => {
                    if let Countermodel::Found { witness, direction } = cm.as_ref() {
                        let s = match direction {
                            crate::models::Direction::LeftToRight => Sequent::new(vec![r.row.lhs.clone()], r.row.rhs.clone()),
                            crate::models::Direction::RightToLeft => Sequent::new(vec![r.row.rhs.clone()], r.row.lhs.clone()),
                        };
                        if !revalidates(&s, witness) {
                            problems.push(format!("{label} countermodel does not re-validate"));
                        }
                    }
                }
                _ => {}
            }
        }
        for (label, th) in required {
            let refuted = report
                .cells()
                .any(|(r, c)| r.row.label == *label && c.theory == *th && matches!(c.verdict, Verdict::Refuted(_)));
            if !refuted {
                problems.push(format!("{label} {} must be refuted", th.name()));
            }
        }
        let vi_ok = t != Table::DoubleNegation
            || report.cells().filter(|(r, _)| r.row.label == "vi").all(|(_, c)| matches!(c.verdict, Verdict::InconclusiveNegative(_)));
        if !vi_ok {
            problems.push("row vi must be inconclusive-negative".into());
        }
        (problems.is_empty(), summary(&report, &problems))
    })
}

fn summary(report: &Report, problems: &[String]) -> String {
    let count = |f: fn(&Verdict) -> bool| report.cells().filter(|(_, c)| f(&c.verdict)).count();
    let mut s = format!(
        "proved={} refuted={} inconclusive-negative={} inconclusive={} mismatches={}",
        count(|v| matches!(v, Verdict::Proved)),
        count(|v| matches!(v, Verdict::Refuted(_))),
        count(|v| matches!(v, Verdict::InconclusiveNegative(_))),
        count(|v| matches!(v, Verdict::Inconclusive)),
        report.mismatches()
    );
    if !problems.is_empty() {
        s.push_str(&format!("; {}", problems.join(", ")));
    }
    s
}

pub fn double_negation_table(rp: &Replays) -> Outcome {
    let required = [("ix", Theory::ILL), ("xi", Theory::ILL), ("xi", Theory::IL_B), ("xiv", Theory::ILL), ("xiv", Theory::IL_B)];
    table_outcome(3, "double negation table", Table::DoubleNegation, rp, &required)
}

pub fn bang_table(rp: &Replays) -> Outcome {
    table_outcome(4, "bang table", Table::Bang, rp, &[])
}

pub fn lemmas(rp: &Replays) -> Outcome {
    timed(5, "lemma suite", || {
        let b = Budget::default().with_timeout(10_000);
        let mut bad = Vec::new();
        for (l, r) in [("A", "!A"), ("A & B", "A * B"), ("top", "1")] {
            if !rp.equivalent(&ill(l), &ill(r), Theory::IL_B, &b) {
                bad.push(format!("{l} <-> {r} in ilb"));
            }
        }
        let mut g = rng(7);
        let cfg = GenConfig { max_depth: 4, ..GenConfig::default() };
        for _ in 0..100 {
            let a = random_ill(&mut g, &cfg);
            if girard_circ(&dneg(a.clone()), false) != quest(Formula::bang(girard_circ(&a, false))) {
                bad.push(format!("circ of ~~({a})"));
            }
        }
        for (premise, conclusion) in [("!G, A |- ?B", "!G, ?A |- ?B"), ("G |- B", "G |- ?B")] {
            let (p, c) = (Sequent::parse(premise).unwrap(), Sequent::parse(conclusion).unwrap());
            match prove_with_axioms(&c, Theory::CLL_B, &b, std::slice::from_ref(&p)) {
                ProofResult::Proved(pf) => rp.record(&pf, Theory::CLL_B, std::slice::from_ref(&p)),
                ProofResult::NotFound(_) => bad.push(format!("{premise} => {conclusion}")),
            }
        }
        for (l, r) in [("!!A", "!A"), ("!?!?A", "!?A"), ("?!?!A", "?!A")] {
            if !rp.equivalent(&ill(l), &ill(r), Theory::CLL_B, &b) {
                bad.push(format!("{l} <-> {r} in cllb"));
            }
        }
        (bad.is_empty(), if bad.is_empty() { "lemmas 1-4 hold".into() } else { format!("failed: {}", bad.join(", ")) })
    })
}

pub fn composition(rp: &Replays, depth: usize) -> Outcome {
    timed(6, "composition theorems", || {
        let fs = all_formulas(depth, 2);
        let b = Budget::default().with_timeout(10_000);
        let mut bad: Vec<String> = Vec::new();
        for c in Composed::ALL {
            let (first, second) = c.parts();
            let fails: Vec<String> = fs
                .par_iter()
                .filter(|a| {
                    let lit = compose_literal(a, first, second).unwrap();
                    !rp.equivalent(&lit, &composed(a, c), Theory::CLL_B, &b)
                })
                .map(|a| format!("{c:?} on {a}"))
                .collect();
            bad.extend(fails);
        }
        for (c, want) in COMPOSED_ATOM {
            let got = print(&composed(&ill("P"), c));
            if got != want {
                bad.push(format!("{c:?} atom clause {got}"));
            }
        }
        let n = fs.len() * 4;
        (bad.is_empty(), format!("{n} equivalences over {} formulas, {} failures{}", fs.len(), bad.len(), first_of(&bad)))
    })
}

fn first_of(v: &[String]) -> String {
    v.first().map(|s| format!("; first: {s}")).unwrap_or_default()
}

/// Classical spot checks.
pub const SOUNDNESS_LIST: [&str; 5] = [
    "~~P -o P",
    "P + ~P",
    "((P -o Q) -o P) -o P",
    "~~(forall x. P(x)) -o forall x. P(x)",
    "(exists x. ~P(x)) -o ~(forall x. P(x))",
];

/// Translations that must fail in ILL.
pub const NEGATIVE_CONTROLS: [(TranslationId, &str); 2] =
    [(TranslationId::GG, "~~(P * Q) -o P * Q"), (TranslationId::Kuroda, "~~P -o P")];

pub fn soundness(rp: &Replays) -> Outcome {
    timed(7, "soundness spot checks", || {
        let b = Budget::default().with_timeout(10_000);
        let mut bad = Vec::new();
        let mut notes = Vec::new();
        let holds = |f: &Formula, th: Theory| rp.prove(&Sequent::new(vec![], f.clone()), th, &b).is_proved();
        for text in SOUNDNESS_LIST {
            let a = ill(text);
            if !holds(&a, Theory::CL_B) {
                bad.push(format!("{text} not proved in clb"));
            }
            for id in [TranslationId::Kuroda, TranslationId::GG] {
                if !holds(&translate_ill(id, &a).unwrap(), Theory::IL_B) {
                    bad.push(format!("{id} of {text} in ilb"));
                }
            }
            let k = translate_ill(TranslationId::KolmOuter, &a).unwrap();
            if !holds(&k, Theory::ILL) {
                let refuted = refute_sequent(&Sequent::new(vec![], k.clone()), Theory::ILL, 6, 2).is_some();
                bad.push(format!("kolm of {text} in ill{}", if refuted { " (has an ILL countermodel)" } else { "" }));
                if holds(&k, Theory::IL_B) {
                    notes.push(format!("kolm of {text} holds in ilb"));
                }
            }
            if holds(&a, Theory::CLL_B) && !holds(&translate_ill(TranslationId::LinKuroda, &a).unwrap(), Theory::ILL) {
                bad.push(format!("lkuroda of {text} in ill"));
            }
        }
        for (id, text) in NEGATIVE_CONTROLS {
            let s = Sequent::new(vec![], translate_ill(id, &ill(text)).unwrap());
            let proved = rp.prove(&s, Theory::ILL, &b).is_proved();
            let ok = !proved && refute_sequent(&s, Theory::ILL, 6, 1).is_some_and(|w| revalidates(&s, &w));
            if !ok {
                bad.push(format!("{id} of {text} not refuted in ill"));
            }
        }
        let mut detail = if bad.is_empty() { "all checks hold".to_string() } else { format!("failed: {}", bad.join(", ")) };
        if !notes.is_empty() {
            detail.push_str(&format!("; {}", notes.join(", ")));
        }
        (bad.is_empty(), detail)
    })
}

pub fn round_trip(count: usize) -> Outcome {
    timed(8, "parser round trip", || {
        let cfg = GenConfig::default();
        let mut g = rng(99);
        let mut fails = 0;
        for _ in 0..count {
            let a = random_ill(&mut g, &cfg);
            fails += usize::from(!parse_ill(&print(&a)).is_ok_and(|b| alpha_eq(&a, &b)));
            let a = random_il(&mut g, &cfg);
            fails += usize::from(!parse_il(&print_il(&a)).is_ok_and(|b| alpha_eq(&a, &b)));
            let a = random_cll(&mut g, &cfg);
            fails += usize::from(!parse_cll(&print_cll(&a)).is_ok_and(|b| alpha_eq(&a, &b)));
        }
        (fails == 0, format!("{count} formulas per language, {fails} failures"))
    })
}

pub fn replay_summary(rp: &Replays) -> Outcome {
    timed(9, "proof replay", || {
        let fails = rp.failures();
        let n = rp.checked();
        (n > 0 && fails.is_empty(), format!("{n} proofs replayed, {} rejected{}", fails.len(), first_of(&fails)))
    })
}

/// Runs every criterion in order at full size.
pub fn run_all(mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let rp = Replays::default();
    let steps: Vec<Box<dyn Fn(&Replays) -> Outcome>> = vec![
        Box::new(|_| worked_example()),
        Box::new(|_| simplification_identities(1000)),
        Box::new(double_negation_table),
        Box::new(bang_table),
        Box::new(lemmas),
        Box::new(|rp| composition(rp, 2)),
        Box::new(soundness),
        Box::new(|_| round_trip(10_000)),
        Box::new(replay_summary),
    ];
    steps
        .iter()
        .map(|s| {
            let o = s(&rp);
            report(&o);
            o
        })
        .collect()
}
