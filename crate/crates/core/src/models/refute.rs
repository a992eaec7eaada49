//! Countermodel search. Formulas are compiled to trees over a flat vector of
//! atom slots so the inner loop does no map lookups; every model found is
//! then confirmed with the plain [`evaluate`](super::evaluate).

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{enumerate_algebras, evaluate_sequent, Algebra, Elem, Valuation, MAX_SIZE};
use crate::formula::{Formula, Term};
use crate::prover::{Sequent, Theory};

/// Which half of an equivalence a countermodel refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

/// An algebra and a valuation under which a sequent fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub algebra: Algebra,
    pub valuation: Valuation,
    /// Value of the product of the hypotheses.
    pub lhs: Elem,
    /// Value of the conclusion, not above `lhs`.
    pub rhs: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Countermodel {
    Found { witness: Box<Witness>, direction: Direction },
    NotFoundWithinBounds,
}

impl Countermodel {
    pub fn is_found(&self) -> bool {
        matches!(self, Countermodel::Found { .. })
    }
}

#[derive(Clone, Copy)]
enum Arg {
    Bound(usize),
    Param(usize),
}

enum Node {
    Atom { base: usize, args: Vec<Arg> },
    Const(bool),
    Bin(u8, Box<Node>, Box<Node>),
    Bang(Box<Node>),
    Quant(bool, Box<Node>),
}

/// Shape of the atom slots of a sequent over a fixed domain.
struct Layout {
    domain: usize,
    /// (predicate, arity, first slot)
    preds: Vec<(String, usize, usize)>,
    slots: usize,
    /// Constants and free variables.
    params: Vec<String>,
}

impl Layout {
    fn new(s: &Sequent, domain: usize) -> Option<Layout> {
        let mut arities: BTreeMap<String, usize> = BTreeMap::new();
        let mut params: BTreeSet<String> = BTreeSet::new();
        for f in s.hyps.iter().chain(std::iter::once(&s.goal)) {
            if !collect(f, &mut Vec::new(), &mut arities, &mut params) {
                return None;
            }
        }
        let mut preds = Vec::new();
        let mut slots = 0usize;
        for (p, k) in arities {
            preds.push((p, k, slots));
            slots = slots.checked_add(domain.checked_pow(k as u32)?)?;
        }
        Some(Layout { domain, preds, slots, params: params.into_iter().collect() })
    }

    fn compile(&self, f: &Formula, bound: &mut Vec<String>) -> Node {
        match f {
            Formula::Atom(p, args) => {
                let base = self.preds.iter().find(|(q, k, _)| q == p && *k == args.len()).map(|x| x.2).unwrap();
                let args = args
                    .iter()
                    .map(|t| {
                        let name = match t {
                            Term::Var(x) => x,
                            Term::Const(c) => c,
                            Term::App(..) => unreachable!("rejected by Layout::new"),
                        };
                        match (matches!(t, Term::Var(_)), bound.iter().rposition(|y| y == name)) {
                            (true, Some(i)) => Arg::Bound(i),
                            _ => Arg::Param(self.params.iter().position(|q| q == name).unwrap()),
                        }
                    })
                    .collect();
                Node::Atom { base, args }
            }
            Formula::Top | Formula::One => Node::Const(true),
            Formula::Zero => Node::Const(false),
            Formula::Tensor(a, b) => self.bin(0, a, b, bound),
            Formula::With(a, b) => self.bin(1, a, b, bound),
            Formula::Plus(a, b) => self.bin(2, a, b, bound),
            Formula::Lolli(a, b) => self.bin(3, a, b, bound),
            Formula::Bang(a) => Node::Bang(Box::new(self.compile(a, bound))),
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                bound.push(x.clone());
                let body = self.compile(a, bound);
                bound.pop();
                Node::Quant(matches!(f, Formula::Forall(..)), Box::new(body))
            }
        }
    }

    fn bin(&self, op: u8, a: &Formula, b: &Formula, bound: &mut Vec<String>) -> Node {
        Node::Bin(op, Box::new(self.compile(a, bound)), Box::new(self.compile(b, bound)))
    }

    fn valuation(&self, slots: &[Elem], params: &[usize]) -> Valuation {
        let mut atoms = BTreeMap::new();
        for (p, k, base) in &self.preds {
            for i in 0..self.domain.pow(*k as u32) {
                let mut tuple = vec![0; *k];
                let mut r = i;
                for d in tuple.iter_mut() {
                    *d = r % self.domain;
                    r /= self.domain;
                }
                atoms.insert((p.clone(), tuple), slots[base + i]);
            }
        }
        let constants = self.params.iter().cloned().zip(params.iter().copied()).collect();
        Valuation { domain: self.domain, constants, atoms }
    }
}

/// Records predicate arities and parameters; false on function symbols or
/// on a predicate used with two arities.
fn collect(f: &Formula, bound: &mut Vec<String>, arities: &mut BTreeMap<String, usize>, params: &mut BTreeSet<String>) -> bool {
    match f {
        Formula::Atom(p, args) => {
            if *arities.entry(p.clone()).or_insert(args.len()) != args.len() {
                return false;
            }
            args.iter().all(|t| match t {
                Term::Var(x) => {
                    if !bound.contains(x) {
                        params.insert(x.clone());
                    }
                    true
                }
                Term::Const(c) => {
                    params.insert(c.clone());
                    true
                }
                Term::App(..) => false,
            })
        }
        Formula::Top | Formula::One | Formula::Zero => true,
        Formula::Tensor(a, b) | Formula::With(a, b) | Formula::Plus(a, b) | Formula::Lolli(a, b) => {
            collect(a, bound, arities, params) && collect(b, bound, arities, params)
        }
        Formula::Bang(a) => collect(a, bound, arities, params),
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            bound.push(x.clone());
            let ok = collect(a, bound, arities, params);
            bound.pop();
            ok
        }
    }
}

struct Env<'a> {
    alg: &'a Algebra,
    domain: usize,
    slots: &'a [Elem],
    params: &'a [usize],
}

fn eval(node: &Node, e: &Env, stack: &mut Vec<usize>) -> Elem {
    match node {
        Node::Atom { base, args } => {
            let mut idx = 0;
            let mut scale = 1;
            for a in args {
                let d = match *a {
                    Arg::Bound(i) => stack[i],
                    Arg::Param(i) => e.params[i],
                };
                idx += d * scale;
                scale *= e.domain;
            }
            e.slots[base + idx]
        }
        Node::Const(t) => {
            if *t {
                e.alg.top()
            } else {
                e.alg.bot()
            }
        }
        Node::Bin(op, a, b) => {
            let (x, y) = (eval(a, e, stack), eval(b, e, stack));
            match op {
                0 => e.alg.tensor(x, y),
                1 => e.alg.meet(x, y),
                2 => e.alg.join(x, y),
                _ => e.alg.imp(x, y),
            }
        }
        Node::Bang(a) => e.alg.bang(eval(a, e, stack)),
        Node::Quant(all, body) => {
            let mut acc = if *all { e.alg.top() } else { e.alg.bot() };
            for d in 0..e.domain {
                stack.push(d);
                let r = eval(body, e, stack);
                stack.pop();
                acc = if *all { e.alg.meet(acc, r) } else { e.alg.join(acc, r) };
            }
            acc
        }
    }
}

/// Advances an odometer with digits below `base`; false after the last state.
fn step(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Upper bound on the valuations tried per algebra and domain.
const MAX_VALUATIONS: u128 = 1 << 22;

/// First valuation (in odometer order) falsifying `s` in `alg`.
pub(crate) fn first_violation(s: &Sequent, alg: &Algebra, domain: usize) -> Option<Witness> {
    let layout = Layout::new(s, domain)?;
    let hyps: Vec<Node> = s.hyps.iter().map(|h| layout.compile(h, &mut Vec::new())).collect();
    let goal = layout.compile(&s.goal, &mut Vec::new());
    let mut slots = vec![0usize; layout.slots];
    let mut params = vec![0usize; layout.params.len()];
    let mut stack = Vec::new();
    loop {
        let vals: Vec<Elem> = slots.iter().map(|&x| x as Elem).collect();
        loop {
            let e = Env { alg, domain, slots: &vals, params: &params };
            let lhs = hyps.iter().fold(alg.top(), |acc, h| alg.tensor(acc, eval(h, &e, &mut stack)));
            let rhs = eval(&goal, &e, &mut stack);
            if !alg.le(lhs, rhs) {
                return Some(Witness { algebra: alg.clone(), valuation: layout.valuation(&vals, &params), lhs, rhs });
            }
            if !step(&mut params, domain) {
                break;
            }
        }
        if !step(&mut slots, alg.size()) {
            return None;
        }
    }
}

fn valuation_count(s: &Sequent, n: usize, domain: usize) -> Option<u128> {
    let layout = Layout::new(s, domain)?;
    let a = (n as u128).checked_pow(layout.slots as u32)?;
    a.checked_mul((domain as u128).checked_pow(layout.params.len() as u32)?)
}

fn has_quantifier(f: &Formula) -> bool {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => true,
        Formula::Atom(..) | Formula::Top | Formula::One | Formula::Zero => false,
        Formula::Tensor(a, b) | Formula::With(a, b) | Formula::Plus(a, b) | Formula::Lolli(a, b) => has_quantifier(a) || has_quantifier(b),
        Formula::Bang(a) => has_quantifier(a),
    }
}

fn needs_domain(s: &Sequent) -> bool {
    let mut params = BTreeSet::new();
    let mut ar = BTreeMap::new();
    for f in s.hyps.iter().chain(std::iter::once(&s.goal)) {
        collect(f, &mut Vec::new(), &mut ar, &mut params);
    }
    !params.is_empty() || s.hyps.iter().chain(std::iter::once(&s.goal)).any(has_quantifier)
}

/// Searches models of `th` with carriers of 1..=`max_size` elements and
/// domains of 1..=`max_domain` individuals, smallest first. Each result is
/// confirmed with [`evaluate_sequent`](super::evaluate_sequent) before it is
/// returned.
pub fn refute_sequent(s: &Sequent, th: Theory, max_size: usize, max_domain: usize) -> Option<Witness> {
    let domains = if needs_domain(s) { max_domain.max(1) } else { 1 };
    for n in 1..=max_size.min(MAX_SIZE) {
        let algs = enumerate_algebras(n, th);
        for d in 1..=domains {
            if valuation_count(s, n, d).is_none_or(|c| c > MAX_VALUATIONS) {
                continue;
            }
            let found = algs.par_iter().find_map_first(|a| first_violation(s, a, d));
            if let Some(w) = found {
                let (lhs, rhs) = evaluate_sequent(s, &w.algebra, &w.valuation).expect("valuation covers the sequent");
                assert!(lhs == w.lhs && rhs == w.rhs && !w.algebra.le(lhs, rhs), "countermodel failed re-validation");
                return Some(w);
            }
        }
    }
    None
}

/// Looks for a model separating `a` and `b`, trying `a |- b` first.
pub fn find_countermodel(a: &Formula, b: &Formula, th: Theory, max_size: usize, max_domain: usize) -> Countermodel {
    for (dir, s) in [
        (Direction::LeftToRight, Sequent::new(vec![a.clone()], b.clone())),
        (Direction::RightToLeft, Sequent::new(vec![b.clone()], a.clone())),
    ] {
        if let Some(w) = refute_sequent(&s, th, max_size, max_domain) {
            return Countermodel::Found { witness: Box::new(w), direction: dir };
        }
    }
    Countermodel::NotFoundWithinBounds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::validates;
    use crate::syntax::parse_ill;

    fn seq(s: &str) -> Sequent {
        Sequent::parse(s).unwrap()
    }

    #[test]
    fn refutes_non_theorems() {
        assert!(refute_sequent(&seq("P |- P * P"), Theory::ILL, 3, 1).is_some());
        assert!(refute_sequent(&seq("~~P |- P"), Theory::IL_B, 3, 1).is_some());
        assert!(refute_sequent(&seq("|- P + ~P"), Theory::IL_B, 3, 1).is_some());
        assert!(refute_sequent(&seq("P |- !P"), Theory::ILL, 3, 1).is_some());
        let w = refute_sequent(&seq("exists x. P(x) |- forall x. P(x)"), Theory::ILL, 2, 2).unwrap();
        assert_eq!(w.valuation.domain, 2);
    }

    #[test]
    fn theorems_have_no_countermodel() {
        for s in ["P * Q |- Q * P", "!P |- !P * !P", "forall x. P(x) |- P(c)", "P(y) |- exists x. P(x)", "~~P |- P"] {
            let th = if s.starts_with("~~") { Theory::CLL_B } else { Theory::ILL };
            assert!(refute_sequent(&seq(s), th, 4, 2).is_none(), "{s}");
        }
    }

    #[test]
    fn witness_is_minimal_in_size() {
        let w = refute_sequent(&seq("P |- P * P"), Theory::ILL, 5, 1).unwrap();
        assert_eq!(w.algebra.size(), 3);
        assert!(!validates(&seq("P |- P * P"), &w.algebra, 1));
    }

    #[test]
    fn equivalence_directions() {
        let a = parse_ill("P").unwrap();
        let b = parse_ill("!P").unwrap();
        match find_countermodel(&a, &b, Theory::ILL, 3, 1) {
            Countermodel::Found { direction, .. } => assert_eq!(direction, Direction::LeftToRight),
            other => panic!("{other:?}"),
        }
        match find_countermodel(&b, &a, Theory::ILL, 3, 1) {
            Countermodel::Found { direction, .. } => assert_eq!(direction, Direction::RightToLeft),
            other => panic!("{other:?}"),
        }
        assert!(!find_countermodel(&a, &a, Theory::ILL, 3, 1).is_found());
    }

    #[test]
    fn function_symbols_are_not_refuted() {
        assert!(refute_sequent(&seq("P(f(x)) |- Q"), Theory::ILL, 3, 2).is_none());
    }
}
