//! Depth-bounded backward search with iterative deepening.
//!
//! Invertible rules are applied eagerly and cost nothing; every other step
//! costs one unit of depth. Failures are memoized together with the depth at
//! which they happened and whether any bound was hit below them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use crate::formula::{alpha_eq, fresh_var, free_vars, neg, substitute, Formula, Term};

use super::{Budget, NotFoundReason, Proof, ProofResult, Rule, Sequent, Theory};

type Counts = BTreeMap<Formula, u32>;
type Key = (Vec<Formula>, Formula, Counts);

pub(crate) fn run(s: &Sequent, th: Theory, b: &Budget, axioms: &[Sequent]) -> ProofResult {
    let mut search = Search {
        th,
        b,
        axioms,
        deadline: Instant::now() + Duration::from_millis(b.timeout_ms),
        nodes: 0,
        timed_out: false,
        limited: false,
        failed: HashMap::new(),
        proved: HashMap::new(),
    };
    let hyps = sorted(s.hyps.clone());
    for depth in 0..=b.max_depth {
        search.limited = false;
        if let Some(p) = search.prove(&hyps, &s.goal, &Counts::new(), depth) {
            return ProofResult::Proved(p);
        }
        if search.timed_out {
            break;
        }
        if !search.limited {
            return ProofResult::NotFound(NotFoundReason::Saturated);
        }
    }
    ProofResult::NotFound(NotFoundReason::BudgetExhausted)
}

struct Search<'a> {
    th: Theory,
    b: &'a Budget,
    axioms: &'a [Sequent],
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
    /// Set when some bound cut the search short below the current node.
    limited: bool,
    failed: HashMap<Key, (u32, bool)>,
    proved: HashMap<(Vec<Formula>, Formula), Proof>,
}

/// One way to share a context between two premises. `dup` lists the
/// formulas sent to both sides; the flag marks a formula that is promoted
/// before the contraction and derelicted again in each premise.
#[derive(Clone)]
struct Split {
    left: Vec<Formula>,
    right: Vec<Formula>,
    dup: Vec<(Formula, bool)>,
}

fn sorted(mut v: Vec<Formula>) -> Vec<Formula> {
    v.sort();
    v
}

fn with(hyps: &[Formula], extra: &[&Formula]) -> Vec<Formula> {
    let mut v = hyps.to_vec();
    v.extend(extra.iter().map(|f| (*f).clone()));
    sorted(v)
}

fn without(hyps: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = hyps.to_vec();
    v.remove(i);
    v
}

fn is_bang(f: &Formula) -> bool {
    matches!(f, Formula::Bang(_))
}

fn node(rule: Rule, hyps: &[Formula], goal: &Formula, premises: Vec<Proof>) -> Proof {
    Proof { rule, hyps: hyps.to_vec(), goal: goal.clone(), principal: None, term: None, premises }
}

fn left(rule: Rule, hyps: &[Formula], goal: &Formula, principal: &Formula, premises: Vec<Proof>) -> Proof {
    Proof { principal: Some(principal.clone()), ..node(rule, hyps, goal, premises) }
}

/// Removes `core` from `hyps` (up to alpha-equivalence) and returns the
/// remainder when it can be weakened away: `!`-formulas only, or anything
/// when promotion is available.
fn weakenable(hyps: &[Formula], core: &[Formula], pro: bool) -> Option<Vec<Formula>> {
    let mut rest = hyps.to_vec();
    for c in core {
        let i = rest.iter().position(|h| alpha_eq(h, c))?;
        rest.remove(i);
    }
    (pro || rest.iter().all(is_bang)).then_some(rest)
}

/// Wraps `p` in weakenings that add `extra` to its hypotheses. A formula
/// without `!` is first promoted (`PRO-L`).
fn weaken(mut p: Proof, extra: &[Formula]) -> Proof {
    for e in extra {
        let goal = p.goal.clone();
        if is_bang(e) {
            let hyps = with(&p.hyps, &[e]);
            p = left(Rule::Wkn, &hyps, &goal, e, vec![p]);
        } else {
            let hyps = with(&p.hyps, &[e]);
            let b = Formula::bang(e.clone());
            let w = left(Rule::Wkn, &with(&p.hyps, &[&b]), &goal, &b, vec![p]);
            p = left(Rule::ProL, &hyps, &goal, e, vec![w]);
        }
    }
    p
}

/// Wraps `p` in contractions that remove one copy of each duplicated
/// formula, undoing the promotion of those that were promoted.
fn contract(mut p: Proof, dup: &[(Formula, bool)]) -> Proof {
    for (f, promoted) in dup {
        let b = if *promoted { Formula::bang(f.clone()) } else { f.clone() };
        let goal = p.goal.clone();
        let i = p.hyps.iter().position(|h| *h == b).expect("duplicated formula present");
        let hyps = without(&p.hyps, i);
        p = left(Rule::Con, &hyps, &goal, &b, vec![p]);
        if *promoted {
            let i = p.hyps.iter().position(|h| *h == b).expect("promoted formula present");
            let hyps = with(&without(&p.hyps, i), &[f]);
            p = left(Rule::ProL, &hyps, &goal, f, vec![p]);
        }
    }
    p
}

/// Turns one hypothesis `f` of `p` into `!f` for each entry, by `!L`.
fn derelict(mut p: Proof, fs: &[&Formula]) -> Proof {
    for f in fs {
        let b = Formula::bang((*f).clone());
        let i = p.hyps.iter().position(|h| h == *f).expect("derelicted formula present");
        let hyps = with(&without(&p.hyps, i), &[&b]);
        let goal = p.goal.clone();
        p = left(Rule::BangL, &hyps, &goal, &b, vec![p]);
    }
    p
}

fn sequent_vars(hyps: &[Formula], goal: &Formula) -> BTreeSet<String> {
    let mut vs = free_vars(goal);
    for h in hyps {
        vs.extend(free_vars(h));
    }
    vs
}

fn consts_into(f: &Formula, out: &mut BTreeSet<String>) {
    fn term(t: &Term, out: &mut BTreeSet<String>) {
        match t {
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::Var(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| term(a, out)),
        }
    }
    match f {
        Formula::Atom(_, args) => args.iter().for_each(|a| term(a, out)),
        Formula::Top | Formula::Zero | Formula::One => {}
        Formula::Tensor(a, b) | Formula::With(a, b) | Formula::Plus(a, b) | Formula::Lolli(a, b) => {
            consts_into(a, out);
            consts_into(b, out);
        }
        Formula::Bang(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => consts_into(a, out),
    }
}

fn subformulas_into(f: &Formula, out: &mut BTreeSet<Formula>) {
    if !out.insert(f.clone()) {
        return;
    }
    match f {
        Formula::Tensor(a, b) | Formula::With(a, b) | Formula::Plus(a, b) | Formula::Lolli(a, b) => {
            subformulas_into(a, out);
            subformulas_into(b, out);
        }
        Formula::Bang(a) => subformulas_into(a, out),
        _ => {}
    }
}

impl Search<'_> {
    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 0 && Instant::now() >= self.deadline {
            self.timed_out = true;
            self.limited = true;
        }
        self.timed_out
    }

    fn prove(&mut self, hyps: &[Formula], goal: &Formula, counts: &Counts, depth: u32) -> Option<Proof> {
        if self.out_of_time() {
            return None;
        }
        let done_key = (hyps.to_vec(), goal.clone());
        if let Some(p) = self.proved.get(&done_key) {
            return Some(p.clone());
        }
        let key = (hyps.to_vec(), goal.clone(), counts.clone());
        if let Some(&(d, pure)) = self.failed.get(&key) {
            if pure {
                return None;
            }
            if d >= depth {
                self.limited = true;
                return None;
            }
        }
        let outer = std::mem::replace(&mut self.limited, false);
        let result = self.expand(hyps, goal, counts, depth);
        let hit = self.limited;
        self.limited = outer || hit;
        match &result {
            Some(p) => {
                self.proved.insert(done_key, p.clone());
            }
            None if !self.timed_out => {
                self.failed.insert(key, (depth, !hit));
            }
            None => {}
        }
        result
    }

    fn expand(&mut self, hyps: &[Formula], goal: &Formula, counts: &Counts, depth: u32) -> Option<Proof> {
        if let Some(p) = self.leaf(hyps, goal) {
            return Some(p);
        }
        if let [h] = hyps {
            if let Some(p) = self.congruence(h, goal, counts, depth) {
                return Some(p);
            }
        }
        if let Some(r) = self.invertible(hyps, goal, counts, depth) {
            return r;
        }
        if depth == 0 {
            self.limited = true;
            return None;
        }
        let d = depth - 1;
        self.right_rules(hyps, goal, counts, d)
            .or_else(|| self.left_rules(hyps, goal, counts, d))
            .or_else(|| self.dne_right(hyps, goal, counts, d))
            .or_else(|| self.analytic_cut(hyps, goal, counts, d))
    }

    /// `a |- b` where both sides have the same main connective, reduced to
    /// the components. Costs no depth since the formulas shrink.
    fn congruence(&mut self, a: &Formula, b: &Formula, counts: &Counts, depth: u32) -> Option<Proof> {
        use Formula::*;
        let h = std::slice::from_ref(a);
        let sub = |s: &mut Self, x: &Formula, y: &Formula| s.prove(std::slice::from_ref(x), y, counts, depth);
        match (a, b) {
            (Bang(x), Bang(y)) => {
                let p = sub(self, x, y)?;
                let d = left(Rule::BangL, h, y, a, vec![p]);
                Some(node(Rule::BangR, h, b, vec![d]))
            }
            (Tensor(x1, x2), Tensor(y1, y2)) => {
                let p = sub(self, x1, y1)?;
                let q = sub(self, x2, y2)?;
                let r = node(Rule::TensorR, &with(&[], &[x1, x2]), b, vec![p, q]);
                Some(left(Rule::TensorL, h, b, a, vec![r]))
            }
            (With(x1, x2), With(y1, y2)) => {
                let p = sub(self, x1, y1)?;
                let q = sub(self, x2, y2)?;
                let l1 = left(Rule::WithL1, h, y1, a, vec![p]);
                let l2 = left(Rule::WithL2, h, y2, a, vec![q]);
                Some(node(Rule::WithR, h, b, vec![l1, l2]))
            }
            (Plus(x1, x2), Plus(y1, y2)) => {
                let p = sub(self, x1, y1)?;
                let q = sub(self, x2, y2)?;
                let r1 = node(Rule::PlusR1, std::slice::from_ref(&**x1), b, vec![p]);
                let r2 = node(Rule::PlusR2, std::slice::from_ref(&**x2), b, vec![q]);
                Some(left(Rule::PlusL, h, b, a, vec![r1, r2]))
            }
            (Lolli(x1, x2), Lolli(y1, y2)) => {
                let p = sub(self, y1, x1)?;
                let q = sub(self, x2, y2)?;
                let l = left(Rule::LolliL, &with(h, &[y1]), y2, a, vec![p, q]);
                Some(node(Rule::LolliR, h, b, vec![l]))
            }
            (Forall(x, ba), Forall(y, bb)) | (Exists(x, ba), Exists(y, bb)) => {
                let z = fresh_var(x, &sequent_vars(h, b));
                let zt = Term::Var(z);
                let ia = substitute(ba, x, &zt);
                let ib = substitute(bb, y, &zt);
                let p = sub(self, &ia, &ib)?;
                let term = Some(zt);
                if matches!(a, Forall(..)) {
                    let l = Proof { term: term.clone(), ..left(Rule::ForallL, h, &ib, a, vec![p]) };
                    Some(Proof { term, ..node(Rule::ForallR, h, b, vec![l]) })
                } else {
                    let r = Proof { term: term.clone(), ..node(Rule::ExistsR, std::slice::from_ref(&ia), b, vec![p]) };
                    Some(Proof { term, ..left(Rule::ExistsL, h, b, a, vec![r]) })
                }
            }
            _ => None,
        }
    }

    /// Applies the first applicable invertible rule. `None` means no such rule
    /// applies; `Some(r)` is the final answer for this sequent.
    fn invertible(&mut self, hyps: &[Formula], goal: &Formula, counts: &Counts, depth: u32) -> Option<Option<Proof>> {
        if *goal == Formula::Top {
            return Some(Some(node(Rule::TopR, hyps, goal, vec![])));
        }
        if hyps.contains(&Formula::Zero) {
            return Some(Some(left(Rule::ZeroL, hyps, goal, &Formula::Zero, vec![])));
        }
        match goal {
            Formula::Lolli(a, b) => {
                let h = with(hyps, &[a]);
                return Some(self.prove(&h, b, counts, depth).map(|p| node(Rule::LolliR, hyps, goal, vec![p])));
            }
            Formula::With(a, b) => {
                let r = self.prove(hyps, a, counts, depth).and_then(|p| {
                    let q = self.prove(hyps, b, counts, depth)?;
                    Some(node(Rule::WithR, hyps, goal, vec![p, q]))
                });
                return Some(r);
            }
            Formula::Forall(x, body) => {
                let y = fresh_var(x, &sequent_vars(hyps, goal));
                let inst = substitute(body, x, &Term::Var(y.clone()));
                let r = self.prove(hyps, &inst, counts, depth).map(|p| Proof {
                    term: Some(Term::Var(y)),
                    ..node(Rule::ForallR, hyps, goal, vec![p])
                });
                return Some(r);
            }
            Formula::Bang(a) if self.th.pro || hyps.iter().all(is_bang) => {
                let rule = if hyps.iter().all(is_bang) { Rule::BangR } else { Rule::Pro };
                return Some(self.prove(hyps, a, counts, depth).map(|p| node(rule, hyps, goal, vec![p])));
            }
            _ => {}
        }
        for (i, h) in hyps.iter().enumerate() {
            let rest = without(hyps, i);
            let r = match h {
                Formula::One => self.prove(&rest, goal, counts, depth).map(|p| left(Rule::OneL, hyps, goal, h, vec![p])),
                Formula::Tensor(a, b) => {
                    let prem = with(&rest, &[a, b]);
                    self.prove(&prem, goal, counts, depth).map(|p| left(Rule::TensorL, hyps, goal, h, vec![p]))
                }
                Formula::Plus(a, b) => {
                    let pa = with(&rest, &[a]);
                    let pb = with(&rest, &[b]);
                    self.prove(&pa, goal, counts, depth).and_then(|p| {
                        let q = self.prove(&pb, goal, counts, depth)?;
                        Some(left(Rule::PlusL, hyps, goal, h, vec![p, q]))
                    })
                }
                Formula::Exists(x, body) => {
                    let y = fresh_var(x, &sequent_vars(hyps, goal));
                    let prem = with(&rest, &[&substitute(body, x, &Term::Var(y.clone()))]);
                    self.prove(&prem, goal, counts, depth).map(|p| Proof {
                        term: Some(Term::Var(y)),
                        ..left(Rule::ExistsL, hyps, goal, h, vec![p])
                    })
                }
                // Under promotion `!a` and `a` are interchangeable, and a
                // with-formula can be split into both components.
                Formula::Bang(a) if self.th.pro => {
                    let prem = with(&rest, &[a]);
                    self.prove(&prem, goal, counts, depth).map(|p| left(Rule::BangL, hyps, goal, h, vec![p]))
                }
                Formula::With(a, b) if self.th.pro => {
                    let prem = with(&rest, &[a, b]);
                    self.prove(&prem, goal, counts, depth).map(|p| {
                        let bh = Formula::bang(h.clone());
                        let l2 = left(Rule::WithL2, &with(&rest, &[a, h]), goal, h, vec![p]);
                        let l1 = left(Rule::WithL1, &with(&rest, &[h, h]), goal, h, vec![l2]);
                        let d2 = left(Rule::BangL, &with(&rest, &[h, &bh]), goal, &bh, vec![l1]);
                        let d1 = left(Rule::BangL, &with(&rest, &[&bh, &bh]), goal, &bh, vec![d2]);
                        let con = left(Rule::Con, &with(&rest, &[&bh]), goal, &bh, vec![d1]);
                        left(Rule::ProL, hyps, goal, h, vec![con])
                    })
                }
                _ if self.th.dne && h.as_dneg().is_some() => {
                    let prem = with(&rest, &[h.as_dneg().unwrap()]);
                    self.prove(&prem, goal, counts, depth).map(|p| left(Rule::DneL, hyps, goal, h, vec![p]))
                }
                _ if i > 0 && hyps[i - 1] == *h && (is_bang(h) || self.th.pro) => {
                    self.prove(&rest, goal, counts, depth).map(|p| weaken(p, std::slice::from_ref(h)))
                }
                _ => continue,
            };
            return Some(r);
        }
        None
    }

    /// Axiom-like closings that need no depth: identity, `1R` and supplied
    /// axioms, each after weakening surplus `!`-formulas.
    fn leaf(&mut self, hyps: &[Formula], goal: &Formula) -> Option<Proof> {
        let pro = self.th.pro;
        if let Some(extra) = weakenable(hyps, std::slice::from_ref(goal), pro) {
            let p = node(Rule::Id, &[goal.clone()], goal, vec![]);
            return Some(weaken(p, &extra));
        }
        if *goal == Formula::One && weakenable(hyps, &[], pro).is_some() {
            return Some(weaken(node(Rule::OneR, &[], goal, vec![]), hyps));
        }
        for ax in self.axioms {
            if !alpha_eq(&ax.goal, goal) {
                continue;
            }
            if let Some(extra) = weakenable(hyps, &ax.hyps, pro) {
                let p = node(Rule::Axiom, &sorted(ax.hyps.clone()), goal, vec![]);
                return Some(weaken(p, &extra));
            }
        }
        None
    }

    fn pool(&self, hyps: &[Formula], goal: &Formula) -> Vec<Term> {
        let mut consts = BTreeSet::new();
        consts_into(goal, &mut consts);
        hyps.iter().for_each(|h| consts_into(h, &mut consts));
        let mut terms: Vec<Term> = sequent_vars(hyps, goal).into_iter().map(Term::Var).collect();
        let mut fresh = 0;
        let mut added = 0;
        while added < self.b.fresh_constants {
            let name = format!("k{fresh}");
            fresh += 1;
            if !consts.contains(&name) {
                consts.insert(name);
                added += 1;
            }
        }
        terms.extend(consts.into_iter().map(Term::Const));
        terms
    }

    /// All ways to divide `ctx` between two premises. Formulas that can be
    /// contracted (`!`-formulas, and every formula under promotion) go to
    /// both sides, which is never worse since they can also be weakened.
    fn splits(&self, ctx: &[Formula]) -> Vec<Split> {
        let mut groups: Vec<(Formula, usize)> = Vec::new();
        for f in ctx {
            match groups.last_mut() {
                Some((g, n)) if g == f => *n += 1,
                _ => groups.push((f.clone(), 1)),
            }
        }
        let mut out = vec![Split { left: vec![], right: vec![], dup: vec![] }];
        for (f, n) in groups {
            let copies = std::iter::repeat(f.clone());
            if is_bang(&f) || self.th.pro {
                for s in &mut out {
                    s.left.extend(copies.clone().take(n));
                    s.right.extend(copies.clone().take(n));
                    s.dup.extend(std::iter::repeat((f.clone(), !is_bang(&f))).take(n));
                }
                continue;
            }
            let mut next = Vec::new();
            for s in out {
                for k in 0..=n {
                    let mut t = s.clone();
                    t.left.extend(copies.clone().take(k));
                    t.right.extend(copies.clone().take(n - k));
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }

    /// Proves a two-premise rule over every split of `ctx`; `build` receives
    /// the conclusion's hypotheses (with duplicates) and both premises.
    #[allow(clippy::too_many_arguments)]
    fn split_rule(
        &mut self,
        ctx: &[Formula],
        counts: &Counts,
        depth: u32,
        left_extra: Option<&Formula>,
        left_goal: &Formula,
        right_extra: Option<&Formula>,
        right_goal: &Formula,
        build: impl Fn(&[Formula], Proof, Proof) -> Proof,
    ) -> Option<Proof> {
        for s in self.splits(ctx) {
            let lh = sorted(s.left.iter().cloned().chain(left_extra.cloned()).collect());
            let Some(p) = self.prove(&lh, left_goal, counts, depth) else { continue };
            let rh = sorted(s.right.iter().cloned().chain(right_extra.cloned()).collect());
            let Some(q) = self.prove(&rh, right_goal, counts, depth) else { continue };
            let promoted: Vec<&Formula> = s.dup.iter().filter(|d| d.1).map(|d| &d.0).collect();
            let (p, q) = (derelict(p, &promoted), derelict(q, &promoted));
            let mut full: Vec<Formula> = s.left.iter().chain(s.right.iter()).cloned().collect();
            for f in &promoted {
                for _ in 0..2 {
                    let i = full.iter().position(|h| h == *f).expect("shared formula present");
                    full[i] = Formula::bang((*f).clone());
                }
            }
            let r = build(&sorted(full), p, q);
            return Some(contract(r, &s.dup));
        }
        None
    }

    fn right_rules(&mut self, hyps: &[Formula], goal: &Formula, counts: &Counts, d: u32) -> Option<Proof> {
        match goal {
            Formula::Plus(a, b) => {
                for (rule, x) in [(Rule::PlusR1, a), (Rule::PlusR2, b)] {
                    if let Some(p) = self.prove(hyps, x, counts, d) {
                        return Some(node(rule, hyps, goal, vec![p]));
                    }
                }
                None
            }
            Formula::Exists(x, body) => {
                self.limited = true;
                for t in self.pool(hyps, goal) {
                    let inst = substitute(body, x, &t);
                    if let Some(p) = self.prove(hyps, &inst, counts, d) {
                        return Some(Proof { term: Some(t), ..node(Rule::ExistsR, hyps, goal, vec![p]) });
                    }
                }
                None
            }
            Formula::Tensor(a, b) => self.split_rule(hyps, counts, d, None, a, None, b, |full, p, q| {
                node(Rule::TensorR, full, goal, vec![p, q])
            }),
            _ => None,
        }
    }

    /// `⊸L`, `&L` or `∀L` on `h`, with `ctx` the remaining hypotheses.
    fn left_on(&mut self, ctx: &[Formula], h: &Formula, goal: &Formula, counts: &Counts, d: u32) -> Option<Proof> {
        let hyps = with(ctx, &[h]);
        match h {
            Formula::Lolli(a, b) => self.split_rule(ctx, counts, d, None, a, Some(b), goal, |full, p, q| {
                left(Rule::LolliL, &with(full, &[h]), goal, h, vec![p, q])
            }),
            Formula::With(a, b) => {
                for (rule, x) in [(Rule::WithL1, a), (Rule::WithL2, b)] {
                    if let Some(p) = self.prove(&with(ctx, &[x]), goal, counts, d) {
                        return Some(left(rule, &hyps, goal, h, vec![p]));
                    }
                }
                None
            }
            Formula::Forall(x, body) => {
                self.limited = true;
                for t in self.pool(&hyps, goal) {
                    let inst = substitute(body, x, &t);
                    if let Some(p) = self.prove(&with(ctx, &[&inst]), goal, counts, d) {
                        return Some(Proof { term: Some(t), ..left(Rule::ForallL, &hyps, goal, h, vec![p]) });
                    }
                }
                None
            }
            _ => None,
        }
    }

    fn left_rules(&mut self, hyps: &[Formula], goal: &Formula, counts: &Counts, d: u32) -> Option<Proof> {
        for (i, h) in hyps.iter().enumerate() {
            if i > 0 && hyps[i - 1] == *h {
                continue;
            }
            let rest = without(hyps, i);
            let found = match h {
                Formula::Bang(a) => self.bang_left(hyps, &rest, h, a, goal, counts, d),
                _ => self.left_on(&rest, h, goal, counts, d),
            };
            if found.is_some() {
                return found;
            }
            if self.th.pro && matches!(h, Formula::Lolli(..) | Formula::Forall(..)) {
                if let Some(p) = self.promoted_copy(hyps, &rest, h, goal, counts, d) {
                    return Some(p);
                }
            }
        }
        for ax in self.axioms {
            if ax.hyps.is_empty() && hyps.iter().any(|h| alpha_eq(h, &ax.goal)) {
                continue;
            }
            let mut rest = hyps.to_vec();
            let fits = ax.hyps.iter().all(|c| match rest.iter().position(|h| alpha_eq(h, c)) {
                Some(i) => {
                    rest.remove(i);
                    true
                }
                None => false,
            });
            if !fits {
                continue;
            }
            if let Some(p) = self.prove(&with(&rest, &[&ax.goal]), goal, counts, d) {
                return Some(node(Rule::Axiom, hyps, goal, vec![p]));
            }
        }
        None
    }

    /// Dereliction. A copy of `!a` is kept (a contraction) while the budget
    /// allows; keeping never hurts since `!a` can be weakened later.
    #[allow(clippy::too_many_arguments)]
    fn bang_left(
        &mut self,
        hyps: &[Formula],
        rest: &[Formula],
        h: &Formula,
        a: &Formula,
        goal: &Formula,
        counts: &Counts,
        d: u32,
    ) -> Option<Proof> {
        let used = counts.get(h).copied().unwrap_or(0);
        if used >= self.b.max_contractions {
            self.limited = true;
            let p = self.prove(&with(rest, &[a]), goal, counts, d)?;
            return Some(left(Rule::BangL, hyps, goal, h, vec![p]));
        }
        let mut c2 = counts.clone();
        c2.insert(h.clone(), used + 1);
        let p = self.prove(&with(hyps, &[a]), goal, &c2, d)?;
        let doubled = with(hyps, &[h]);
        let der = left(Rule::BangL, &doubled, goal, h, vec![p]);
        Some(left(Rule::Con, hyps, goal, h, vec![der]))
    }

    /// Keeps a promoted copy of `h` while using it: `PRO-L`, `con`, `!L`.
    fn promoted_copy(
        &mut self,
        hyps: &[Formula],
        rest: &[Formula],
        h: &Formula,
        goal: &Formula,
        counts: &Counts,
        d: u32,
    ) -> Option<Proof> {
        let b = Formula::bang(h.clone());
        let used = counts.get(&b).copied().unwrap_or(0);
        if used >= self.b.max_contractions {
            self.limited = true;
            return None;
        }
        let mut c2 = counts.clone();
        c2.insert(b.clone(), used + 1);
        // The rule is applied straight away: going through `prove` would let
        // the invertible phase derelict and then drop the copy again.
        let p = self.left_on(&with(rest, &[&b]), h, goal, &c2, d)?;
        let der = left(Rule::BangL, &with(rest, &[&b, &b]), goal, &b, vec![p]);
        let con = left(Rule::Con, &with(rest, &[&b]), goal, &b, vec![der]);
        Some(left(Rule::ProL, hyps, goal, h, vec![con]))
    }

    /// `DNE-R` followed by `⊸R`: from `Γ, ~C |- 0` infer `Γ |- C`.
    fn dne_right(&mut self, hyps: &[Formula], goal: &Formula, counts: &Counts, d: u32) -> Option<Proof> {
        if !self.th.dne || *goal == Formula::Zero {
            return None;
        }
        let n = neg(goal.clone());
        let p = self.prove(&with(hyps, &[&n]), &Formula::Zero, counts, d)?;
        let nn = neg(n);
        let lr = node(Rule::LolliR, hyps, &nn, vec![p]);
        Some(node(Rule::DneR, hyps, goal, vec![lr]))
    }

    fn analytic_cut(&mut self, hyps: &[Formula], goal: &Formula, counts: &Counts, d: u32) -> Option<Proof> {
        if !self.b.analytic_cut {
            return None;
        }
        let mut subs = BTreeSet::new();
        hyps.iter().for_each(|h| subformulas_into(h, &mut subs));
        for c in subs {
            if hyps.contains(&c) {
                continue;
            }
            let found = self.split_rule(hyps, counts, d, None, &c, Some(&c), goal, |full, p, q| {
                left(Rule::Cut, full, goal, &c, vec![p, q])
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }
}
