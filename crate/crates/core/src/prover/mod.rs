//! Bounded backward proof search for intuitionistic linear logic and its
//! extensions by promotion (`A |- !A`) and double negation elimination.
//!
//! Proofs are returned as explicit trees and can be replayed by
//! [`check::replay`], which shares no code with the search.

pub mod check;
mod search;

use std::fmt;
use std::str::FromStr;

use crate::formula::{Formula, Term};
use crate::syntax::{parse_sequent, print_sequent, ParseError};

/// Which extra principles are available on top of plain ILL.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Theory {
    pub pro: bool,
    pub dne: bool,
}

impl Theory {
    pub const ILL: Theory = Theory { pro: false, dne: false };
    pub const IL_B: Theory = Theory { pro: true, dne: false };
    pub const CLL_B: Theory = Theory { pro: false, dne: true };
    pub const CL_B: Theory = Theory { pro: true, dne: true };

    pub fn name(self) -> &'static str {
        match (self.pro, self.dne) {
            (false, false) => "ill",
            (true, false) => "ilb",
            (false, true) => "cllb",
            (true, true) => "clb",
        }
    }

    /// True when every rule of `self` is also a rule of `other`.
    pub fn is_sub(self, other: Theory) -> bool {
        (!self.pro || other.pro) && (!self.dne || other.dne)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "ill" => Ok(Theory::ILL),
            "ilb" | "il" => Ok(Theory::IL_B),
            "cllb" | "cll" => Ok(Theory::CLL_B),
            "clb" | "cl" => Ok(Theory::CL_B),
            other => Err(format!("unknown theory `{other}` (expected ill, ilb, cllb or clb)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Bound on the number of non-invertible steps along a branch.
    pub max_depth: u32,
    /// Bound on contractions of one `!`-formula along a branch.
    pub max_contractions: u32,
    /// Fresh constants added to the instantiation pool for `∀L` / `∃R`.
    pub fresh_constants: u32,
    pub timeout_ms: u64,
    /// Allow cuts on subformulas of the hypotheses.
    pub analytic_cut: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_depth: 24, max_contractions: 2, fresh_constants: 1, timeout_ms: 10_000, analytic_cut: false }
    }
}

impl Budget {
    pub fn with_timeout(mut self, ms: u64) -> Budget {
        self.timeout_ms = ms;
        self
    }

    pub fn with_depth(mut self, d: u32) -> Budget {
        self.max_depth = d;
        self
    }
}

/// `hyps |- goal`, with `hyps` read as a multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub hyps: Vec<Formula>,
    pub goal: Formula,
}

impl Sequent {
    pub fn new(hyps: Vec<Formula>, goal: Formula) -> Sequent {
        Sequent { hyps, goal }
    }

    pub fn parse(text: &str) -> Result<Sequent, ParseError> {
        let (hyps, goal) = parse_sequent(text)?;
        Ok(Sequent { hyps, goal })
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_sequent(&self.hyps, &self.goal))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Id,
    Cut,
    OneL,
    OneR,
    TopR,
    ZeroL,
    TensorL,
    TensorR,
    LolliL,
    LolliR,
    WithL1,
    WithL2,
    WithR,
    PlusL,
    PlusR1,
    PlusR2,
    ForallL,
    ForallR,
    ExistsL,
    ExistsR,
    Con,
    Wkn,
    BangL,
    BangR,
    Pro,
    ProL,
    DneR,
    DneL,
    Axiom,
}

impl Rule {
    pub fn name(self) -> &'static str {
        use Rule::*;
        match self {
            Id => "id",
            Cut => "cut",
            OneL => "1L",
            OneR => "1R",
            TopR => "⊤R",
            ZeroL => "0L",
            TensorL => "⊗L",
            TensorR => "⊗R",
            LolliL => "⊸L",
            LolliR => "⊸R",
            WithL1 | WithL2 => "&L",
            WithR => "&R",
            PlusL => "⊕L",
            PlusR1 | PlusR2 => "⊕R",
            ForallL => "∀L",
            ForallR => "∀R",
            ExistsL => "∃L",
            ExistsR => "∃R",
            Con => "con",
            Wkn => "wkn",
            BangL => "!L",
            BangR => "!R",
            Pro => "PRO",
            ProL => "PRO-L",
            DneR => "DNE-R",
            DneL => "DNE-L",
            Axiom => "AX",
        }
    }
}

/// A derivation: the conclusion, the rule that produced it, and the
/// premises. `principal` is the hypothesis a left rule acts on (or the cut
/// formula); `term` is the witness or eigenvariable of a quantifier rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub rule: Rule,
    pub hyps: Vec<Formula>,
    pub goal: Formula,
    pub principal: Option<Formula>,
    pub term: Option<Term>,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn sequent(&self) -> Sequent {
        Sequent::new(self.hyps.clone(), self.goal.clone())
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    /// Indented text, conclusion first, one sequent per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        out.push_str(&"  ".repeat(indent));
        out.push_str(&print_sequent(&self.hyps, &self.goal));
        out.push_str("   (");
        out.push_str(self.rule.name());
        out.push_str(")\n");
        for p in &self.premises {
            p.render_into(indent + 1, out);
        }
    }

    /// Every theory rule used, so a proof can be re-judged under another theory.
    pub fn theory_used(&self) -> Theory {
        let mut th = Theory::ILL;
        self.visit(&mut |p| match p.rule {
            Rule::Pro | Rule::ProL => th.pro = true,
            Rule::DneR | Rule::DneL => th.dne = true,
            _ => {}
        });
        th
    }

    fn visit(&self, f: &mut impl FnMut(&Proof)) {
        f(self);
        for p in &self.premises {
            p.visit(f);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotFoundReason {
    /// Some bound (depth, contractions, term pool, time) was reached.
    BudgetExhausted,
    /// The search space was exhausted without reaching any bound.
    Saturated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofResult {
    Proved(Proof),
    NotFound(NotFoundReason),
}

impl ProofResult {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            ProofResult::Proved(p) => Some(p),
            ProofResult::NotFound(_) => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, ProofResult::Proved(_))
    }
}

pub fn prove(s: &Sequent, th: Theory, b: &Budget) -> ProofResult {
    search::run(s, th, b, &[])
}

/// Proves `s` with the sequents in `axioms` available as extra closed axioms.
pub fn prove_with_axioms(s: &Sequent, th: Theory, b: &Budget, axioms: &[Sequent]) -> ProofResult {
    search::run(s, th, b, axioms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(Box<Proof>, Box<Proof>),
    Unknown,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        matches!(self, Equivalence::Equivalent(..))
    }
}

pub fn check_equiv(a: &Formula, b: &Formula, th: Theory, bud: &Budget) -> Equivalence {
    let fwd = prove(&Sequent::new(vec![a.clone()], b.clone()), th, bud);
    let ProofResult::Proved(p) = fwd else { return Equivalence::Unknown };
    match prove(&Sequent::new(vec![b.clone()], a.clone()), th, bud) {
        ProofResult::Proved(q) => Equivalence::Equivalent(Box::new(p), Box::new(q)),
        ProofResult::NotFound(_) => Equivalence::Unknown,
    }
}

/// Whether `conclusion` follows once `premise` is added as an axiom. The
/// metavariables of a rule schema are expected to be instantiated with fresh
/// atoms by the caller.
pub fn check_derived_rule(premise: &Sequent, conclusion: &Sequent, th: Theory, bud: &Budget) -> bool {
    prove_with_axioms(conclusion, th, bud, std::slice::from_ref(premise)).is_proved()
}
