//! Single-pass rewriting with the reduction rules that turn one modular
//! translation into a simpler one.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::formula::{dneg, Formula};
use crate::xlate::{translate_ill, TranslationId};

/// The prefix a rule set strips: `~~` or `!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marker {
    DNeg,
    Bang,
}

impl Marker {
    pub fn wrap(self, a: Formula) -> Formula {
        match self {
            Marker::DNeg => dneg(a),
            Marker::Bang => Formula::bang(a),
        }
    }

    pub fn strip(self, a: &Formula) -> Option<&Formula> {
        match self {
            Marker::DNeg => a.as_dneg(),
            Marker::Bang => a.as_bang(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinKind {
    Tensor,
    With,
    Plus,
    Lolli,
}

/// A formula scheme over the metavariables `A` (0) and `B` (1) and a single
/// bound variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pat {
    Meta(usize),
    Marked(Box<Pat>),
    Bin(BinKind, Box<Pat>, Box<Pat>),
    Bang(Box<Pat>),
    Forall(Box<Pat>),
    Exists(Box<Pat>),
}

#[derive(Default)]
struct Bindings {
    metas: [Option<Formula>; 2],
    var: Option<String>,
}

impl Pat {
    fn matches(&self, f: &Formula, m: Marker, b: &mut Bindings) -> bool {
        match (self, f) {
            (Pat::Meta(i), _) => match &b.metas[*i] {
                Some(g) => g == f,
                None => {
                    b.metas[*i] = Some(f.clone());
                    true
                }
            },
            (Pat::Marked(p), _) => m.strip(f).is_some_and(|g| p.matches(g, m, b)),
            (Pat::Bin(k, p, q), _) => {
                let (l, r) = match (k, f) {
                    (BinKind::Tensor, Formula::Tensor(l, r))
                    | (BinKind::With, Formula::With(l, r))
                    | (BinKind::Plus, Formula::Plus(l, r))
                    | (BinKind::Lolli, Formula::Lolli(l, r)) => (l, r),
                    _ => return false,
                };
                p.matches(l, m, b) && q.matches(r, m, b)
            }
            (Pat::Bang(p), Formula::Bang(g)) => p.matches(g, m, b),
            (Pat::Forall(p), Formula::Forall(x, g)) | (Pat::Exists(p), Formula::Exists(x, g)) => {
                if b.var.as_ref().is_some_and(|v| v != x) {
                    return false;
                }
                b.var = Some(x.clone());
                p.matches(g, m, b)
            }
            _ => false,
        }
    }

    fn build(&self, m: Marker, b: &Bindings) -> Formula {
        match self {
            Pat::Meta(i) => b.metas[*i].clone().expect("rhs metavariable bound by lhs"),
            Pat::Marked(p) => m.wrap(p.build(m, b)),
            Pat::Bin(k, p, q) => {
                let (l, r) = (p.build(m, b), q.build(m, b));
                match k {
                    BinKind::Tensor => Formula::tensor(l, r),
                    BinKind::With => Formula::with(l, r),
                    BinKind::Plus => Formula::plus(l, r),
                    BinKind::Lolli => Formula::lolli(l, r),
                }
            }
            Pat::Bang(p) => Formula::bang(p.build(m, b)),
            Pat::Forall(p) => Formula::Forall(b.var.clone().unwrap_or_else(|| "x".into()), Box::new(p.build(m, b))),
            Pat::Exists(p) => Formula::Exists(b.var.clone().unwrap_or_else(|| "x".into()), Box::new(p.build(m, b))),
        }
    }

    /// The scheme as a formula, with `A`, `B` as atoms and `x` as variable.
    pub fn display_formula(&self, m: Marker) -> Formula {
        let b = Bindings {
            metas: [Some(Formula::atom("A")), Some(Formula::atom("B"))],
            var: Some("x".into()),
        };
        self.build(m, &b)
    }

    fn metas(&self, out: &mut Vec<usize>) {
        match self {
            Pat::Meta(i) => out.push(*i),
            Pat::Marked(p) | Pat::Bang(p) | Pat::Forall(p) | Pat::Exists(p) => p.metas(out),
            Pat::Bin(_, p, q) => {
                p.metas(out);
                q.metas(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionRule {
    pub marker: Marker,
    pub lhs: Pat,
    pub rhs: Pat,
}

impl ReductionRule {
    pub fn new(marker: Marker, lhs: Pat, rhs: Pat) -> ReductionRule {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        lhs.metas(&mut l);
        rhs.metas(&mut r);
        assert!(r.iter().all(|i| l.contains(i)), "rhs metavariable not bound by lhs");
        ReductionRule { marker, lhs, rhs }
    }

    pub fn try_apply(&self, f: &Formula) -> Option<Formula> {
        let mut b = Bindings::default();
        self.lhs.matches(f, self.marker, &mut b).then(|| self.rhs.build(self.marker, &b))
    }
}

impl fmt::Display for ReductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} |-> {}",
            self.lhs.display_formula(self.marker),
            self.rhs.display_formula(self.marker)
        )
    }
}

// Pattern shorthands.
fn a() -> Pat {
    Pat::Meta(0)
}
fn b() -> Pat {
    Pat::Meta(1)
}
fn t(p: Pat) -> Pat {
    Pat::Marked(Box::new(p))
}
fn bin(k: BinKind, p: Pat, q: Pat) -> Pat {
    Pat::Bin(k, Box::new(p), Box::new(q))
}
fn bang(p: Pat) -> Pat {
    Pat::Bang(Box::new(p))
}
fn all(p: Pat) -> Pat {
    Pat::Forall(Box::new(p))
}
fn ex(p: Pat) -> Pat {
    Pat::Exists(Box::new(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Outside,
    Inside,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "outside" => Ok(Strategy::Outside),
            "inside" => Ok(Strategy::Inside),
            other => Err(format!("unknown strategy `{other}` (expected outside or inside)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimplificationId {
    GGfromKolmO,
    KurodaFromKolmI,
    StarFromGfO,
    CircFromGfI,
    LinGGfromKolmO,
    LinKurodaFromKolmI,
}

impl SimplificationId {
    pub const ALL: [SimplificationId; 6] = [
        SimplificationId::GGfromKolmO,
        SimplificationId::KurodaFromKolmI,
        SimplificationId::StarFromGfO,
        SimplificationId::CircFromGfI,
        SimplificationId::LinGGfromKolmO,
        SimplificationId::LinKurodaFromKolmI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SimplificationId::GGfromKolmO => "gg-from-kolm",
            SimplificationId::KurodaFromKolmI => "kuroda-from-kolm",
            SimplificationId::StarFromGfO => "star-from-gf",
            SimplificationId::CircFromGfI => "circ-from-gf",
            SimplificationId::LinGGfromKolmO => "lgg-from-kolm",
            SimplificationId::LinKurodaFromKolmI => "lkuroda-from-kolm",
        }
    }

    /// Translation the rules start from and the one they should reach.
    pub fn endpoints(self) -> (TranslationId, TranslationId) {
        use TranslationId::*;
        match self {
            SimplificationId::GGfromKolmO => (KolmOuter, GG),
            SimplificationId::KurodaFromKolmI => (KolmInner, Kuroda),
            SimplificationId::StarFromGfO => (GirardFullOuter, Star),
            SimplificationId::CircFromGfI => (GirardFullInner, Circ),
            SimplificationId::LinGGfromKolmO => (KolmOuter, LinGG),
            SimplificationId::LinKurodaFromKolmI => (KolmInner, LinKuroda),
        }
    }

    pub fn strategy(self) -> Strategy {
        match self {
            SimplificationId::GGfromKolmO | SimplificationId::StarFromGfO | SimplificationId::LinGGfromKolmO => {
                Strategy::Outside
            }
            _ => Strategy::Inside,
        }
    }

    pub fn rules(self) -> Vec<ReductionRule> {
        use BinKind::*;
        let (d, g) = (Marker::DNeg, Marker::Bang);
        let r = ReductionRule::new;
        // T(T A op T B) |-> T A op T B
        let out_bin = |m: Marker, k: BinKind| r(m, t(bin(k, t(a()), t(b()))), bin(k, t(a()), t(b())));
        // T(T A op T B) |-> T(A op B)
        let in_bin = |m: Marker, k: BinKind| r(m, t(bin(k, t(a()), t(b()))), t(bin(k, a(), b())));
        match self {
            SimplificationId::GGfromKolmO => vec![
                out_bin(d, Tensor),
                out_bin(d, With),
                out_bin(d, Lolli),
                r(d, t(all(t(a()))), all(t(a()))),
                r(d, t(bang(t(a()))), bang(t(a()))),
            ],
            SimplificationId::KurodaFromKolmI => vec![
                in_bin(d, Tensor),
                in_bin(d, With),
                in_bin(d, Plus),
                in_bin(d, Lolli),
                r(d, t(ex(t(a()))), t(ex(a()))),
                r(d, t(bang(t(a()))), t(bang(a()))),
            ],
            SimplificationId::StarFromGfO => vec![
                out_bin(g, Tensor),
                out_bin(g, Plus),
                r(g, t(ex(t(a()))), ex(t(a()))),
                r(g, t(t(t(a()))), t(t(a()))),
            ],
            SimplificationId::CircFromGfI => vec![
                in_bin(g, With),
                r(g, t(bin(Lolli, t(a()), t(b()))), t(bin(Lolli, t(a()), b()))),
                r(g, t(all(t(a()))), t(all(a()))),
                r(g, t(t(t(a()))), t(t(a()))),
            ],
            SimplificationId::LinGGfromKolmO => vec![
                out_bin(d, With),
                out_bin(d, Lolli),
                r(d, t(all(t(a()))), all(t(a()))),
            ],
            SimplificationId::LinKurodaFromKolmI => vec![
                in_bin(d, Tensor),
                in_bin(d, Plus),
                r(d, t(bin(Lolli, t(a()), t(b()))), t(bin(Lolli, a(), t(b())))),
                r(d, t(ex(t(a()))), t(ex(a()))),
            ],
        }
    }
}

impl fmt::Display for SimplificationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimplificationId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SimplificationId::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| format!("unknown simplification `{s}`"))
    }
}

/// One rule firing: where, which rule, and the subformula before and after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Firing {
    /// Child indices from the root of the current formula.
    pub path: Vec<usize>,
    pub rule: usize,
    pub before: Formula,
    pub after: Formula,
}

impl Firing {
    pub fn path_string(&self) -> String {
        if self.path.is_empty() {
            "root".to_string()
        } else {
            let p: Vec<String> = self.path.iter().map(|i| i.to_string()).collect();
            p.join(".")
        }
    }
}

struct Engine<'a> {
    rules: &'a [ReductionRule],
    trace: Vec<Firing>,
}

impl Engine<'_> {
    fn fire(&mut self, f: Formula, path: &[usize]) -> (Formula, bool) {
        for (i, r) in self.rules.iter().enumerate() {
            if let Some(g) = r.try_apply(&f) {
                self.trace.push(Firing { path: path.to_vec(), rule: i, before: f, after: g.clone() });
                return (g, true);
            }
        }
        (f, false)
    }

    fn map_children(&mut self, f: &Formula, path: &mut Vec<usize>, visit: fn(&mut Self, &Formula, &mut Vec<usize>) -> Formula) -> Formula {
        use Formula::*;
        let at = |e: &mut Self, i: usize, g: &Formula, path: &mut Vec<usize>| {
            path.push(i);
            let r = visit(e, g, path);
            path.pop();
            r
        };
        match f {
            Atom(..) | Top | Zero | One => f.clone(),
            Tensor(l, r) => Formula::tensor(at(self, 0, l, path), at(self, 1, r, path)),
            With(l, r) => Formula::with(at(self, 0, l, path), at(self, 1, r, path)),
            Plus(l, r) => Formula::plus(at(self, 0, l, path), at(self, 1, r, path)),
            Lolli(l, r) => Formula::lolli(at(self, 0, l, path), at(self, 1, r, path)),
            Bang(g) => Formula::bang(at(self, 0, g, path)),
            Forall(x, g) => Formula::Forall(x.clone(), Box::new(at(self, 0, g, path))),
            Exists(x, g) => Formula::Exists(x.clone(), Box::new(at(self, 0, g, path))),
        }
    }

    /// Tries the rules at this position, then descends into the result.
    fn outside(&mut self, f: &Formula, path: &mut Vec<usize>) -> Formula {
        let (g, _) = self.fire(f.clone(), path);
        self.map_children(&g, path, Self::outside)
    }

    /// Rewrites the subformulas first, then tries the rules here. A marker
    /// together with the connective right under it counts as one position,
    /// so in `!!!A` the middle `!!A` is not a position of its own.
    fn inside(&mut self, f: &Formula, path: &mut Vec<usize>) -> Formula {
        let marker = self.rules.iter().map(|r| r.marker).find(|m| m.strip(f).is_some());
        let g = match marker {
            Some(m) => {
                let core = m.strip(f).unwrap();
                let depth = match m {
                    Marker::DNeg => 2,
                    Marker::Bang => 1,
                };
                path.extend(std::iter::repeat(0).take(depth));
                let core = self.map_children(core, path, Self::inside);
                path.truncate(path.len() - depth);
                m.wrap(core)
            }
            None => self.map_children(f, path, Self::inside),
        };
        self.fire(g, path).0
    }
}

pub fn apply(a: &Formula, rules: &[ReductionRule], strategy: Strategy) -> Formula {
    apply_traced(a, rules, strategy).0
}

/// Like [`apply`], also returning every firing in order.
pub fn apply_traced(a: &Formula, rules: &[ReductionRule], strategy: Strategy) -> (Formula, Vec<Firing>) {
    let mut e = Engine { rules, trace: Vec::new() };
    let mut path = Vec::new();
    let out = match strategy {
        Strategy::Outside => e.outside(a, &mut path),
        Strategy::Inside => e.inside(a, &mut path),
    };
    (out, e.trace)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub formula: Formula,
    pub expected: Formula,
    pub got: Formula,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// One tab-separated `key=value` record per formula.
    pub fn records(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&format!(
                "formula={}\texpected={}\tgot={}\tstatus={}\n",
                e.formula,
                e.expected,
                e.got,
                if e.pass { "pass" } else { "fail" }
            ));
        }
        s
    }
}

/// Checks that rewriting the source translation of each formula yields the
/// target translation exactly.
pub fn check_simplification(id: SimplificationId, corpus: &[Formula]) -> Report {
    let rules = id.rules();
    let (src, dst) = id.endpoints();
    let entries = corpus
        .par_iter()
        .map(|f| {
            let from = translate_ill(src, f).expect("endo translation");
            let expected = translate_ill(dst, f).expect("endo translation");
            let got = apply(&from, &rules, id.strategy());
            ReportEntry { formula: f.clone(), pass: got == expected, expected, got }
        })
        .collect();
    Report { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_ill, print};

    fn f(s: &str) -> Formula {
        parse_ill(s).unwrap()
    }

    const EQ5: &str = "~~(~~(~~P & ~~Q) * ~~R)";

    #[test]
    fn worked_example_outside() {
        let rules = SimplificationId::GGfromKolmO.rules();
        let (out, trace) = apply_traced(&f(EQ5), &rules, Strategy::Outside);
        assert_eq!(print(&out), "(~~P & ~~Q) * ~~R");
        assert_eq!(trace.len(), 2);
        assert_eq!(print(&trace[0].after), "~~(~~P & ~~Q) * ~~R");
        assert_eq!(trace[0].path_string(), "root");
        assert_eq!(trace[1].path_string(), "0");
    }

    #[test]
    fn worked_example_inside() {
        let rules = SimplificationId::GGfromKolmO.rules();
        let out = apply(&f(EQ5), &rules, Strategy::Inside);
        assert_eq!(print(&out), "~~((~~P & ~~Q) * ~~R)");
    }

    #[test]
    fn atoms_and_empty_rule_sets_are_fixed_points() {
        for id in SimplificationId::ALL {
            assert_eq!(apply(&f("P"), &id.rules(), id.strategy()), f("P"));
        }
        assert_eq!(apply(&f(EQ5), &[], Strategy::Outside), f(EQ5));
    }

    #[test]
    fn named_examples() {
        let r = check_simplification(SimplificationId::KurodaFromKolmI, &[f("forall x. P(x)")]);
        assert!(r.passed());
        assert_eq!(print(&r.entries[0].got), "~~forall x. ~~P(x)");
        let r = check_simplification(SimplificationId::CircFromGfI, &[f("P -o Q")]);
        assert!(r.passed());
        assert_eq!(print(&r.entries[0].got), "!(!P -o Q)");
        assert!(check_simplification(SimplificationId::GGfromKolmO, &[f("(P & Q) * R")]).passed());
    }

    #[test]
    fn bang_chains_inside() {
        let r = check_simplification(SimplificationId::CircFromGfI, &[f("!!P"), f("!!!(P & !Q)")]);
        assert!(r.passed(), "{}", r.records());
    }

    #[test]
    fn rule_display() {
        let rules = SimplificationId::KurodaFromKolmI.rules();
        assert_eq!(rules[0].to_string(), "~~(~~A * ~~B) |-> ~~(A * B)");
        let rules = SimplificationId::StarFromGfO.rules();
        assert_eq!(rules[3].to_string(), "!!!A |-> !!A");
    }
}

#[cfg(test)]
mod corpus_tests {
    use super::*;
    use crate::gen::{corpus, GenConfig};

    #[test]
    fn random_corpus_all_six() {
        let cfg = GenConfig { max_depth: 6, atoms: 4, vars: 2, constants: true };
        let c = corpus(2024, 1000, &cfg);
        for id in SimplificationId::ALL {
            let r = check_simplification(id, &c);
            let bad: Vec<_> = r.failures().take(3).collect();
            assert!(bad.is_empty(), "{id}: {bad:#?}");
        }
    }
}
