//! Finite algebraic models of ILL: bounded commutative integral residuated
//! lattices with an interior operator for `!`, plus a finite domain for the
//! quantifiers. Used to refute sequents the prover cannot prove.

mod enumerate;
mod refute;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::formula::{Formula, Term};
use crate::prover::{Sequent, Theory};

pub use enumerate::{enumerate_algebras, MAX_SIZE};
pub use refute::{find_countermodel, refute_sequent, Countermodel, Direction, Witness};

/// Element of a finite algebra, an index into its carrier.
pub type Elem = u8;

/// A finite algebra. Elements are `0..n`; `0` is the bottom and `n - 1`
/// the top, which is also the monoid unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    n: usize,
    le: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    tensor: Vec<Elem>,
    imp: Vec<Elem>,
    bang: Vec<Elem>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("order is not a bounded lattice with 0 as bottom and {0} as top")]
    NotALattice(usize),
    #[error("law violated: {0}")]
    Law(String),
    #[error("table has the wrong size")]
    Shape,
}

impl Algebra {
    /// Builds an algebra from its order (`le[a][b]` iff a <= b), the
    /// multiplication table and the `!` table, checking every law.
    pub fn new(le: Vec<Vec<bool>>, tensor: Vec<Vec<Elem>>, bang: Vec<Elem>) -> Result<Algebra, AlgebraError> {
        let n = le.len();
        if n == 0 || tensor.len() != n || bang.len() != n || le.iter().chain(&[]).any(|r| r.len() != n) {
            return Err(AlgebraError::Shape);
        }
        if tensor.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Shape);
        }
        let flat_le: Vec<bool> = le.into_iter().flatten().collect();
        let (meet, join) = lattice_ops(n, &flat_le).ok_or(AlgebraError::NotALattice(n - 1))?;
        let tensor: Vec<Elem> = tensor.into_iter().flatten().collect();
        let imp = residual(n, &flat_le, &join, &tensor).ok_or_else(|| AlgebraError::Law("multiplication is not residuated".into()))?;
        let alg = Algebra { n, le: flat_le, meet, join, tensor, imp, bang };
        alg.check_laws(Theory::ILL)?;
        Ok(alg)
    }

    /// Assembles an algebra from flat tables already known to be consistent.
    pub(crate) fn from_parts(n: usize, le: Vec<bool>, meet: Vec<Elem>, join: Vec<Elem>, tensor: Vec<Elem>, imp: Vec<Elem>, bang: Vec<Elem>) -> Algebra {
        Algebra { n, le, meet, join, tensor, imp, bang }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bot(&self) -> Elem {
        0
    }

    pub fn top(&self) -> Elem {
        (self.n - 1) as Elem
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.le[a as usize * self.n + b as usize]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a as usize * self.n + b as usize]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a as usize * self.n + b as usize]
    }

    pub fn tensor(&self, a: Elem, b: Elem) -> Elem {
        self.tensor[a as usize * self.n + b as usize]
    }

    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a as usize * self.n + b as usize]
    }

    pub fn bang(&self, a: Elem) -> Elem {
        self.bang[a as usize]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.imp(a, 0)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.n as Elem).map(|a| a)
    }

    /// Checks every algebra law, plus the extra laws of `th`.
    pub fn check_laws(&self, th: Theory) -> Result<(), AlgebraError> {
        let law = |ok: bool, what: &str| if ok { Ok(()) } else { Err(AlgebraError::Law(what.to_string())) };
        let e: Vec<Elem> = self.elems().collect();
        let top = self.top();
        for &a in &e {
            law(self.le(0, a) && self.le(a, top), "0 is the bottom and 1 the top")?;
            law(self.tensor(top, a) == a, "1 is the unit")?;
            law(self.le(self.bang(a), a), "!a <= a")?;
            law(self.le(self.bang(a), self.bang(self.bang(a))), "!a <= !!a")?;
            law(self.le(self.bang(a), self.tensor(self.bang(a), self.bang(a))), "!a <= !a * !a")?;
            if th.pro {
                law(self.le(a, self.bang(a)), "a <= !a")?;
            }
            if th.dne {
                law(self.neg(self.neg(a)) == a, "~~a = a")?;
            }
            for &b in &e {
                law(self.tensor(a, b) == self.tensor(b, a), "commutativity")?;
                law(self.tensor(self.bang(a), self.bang(b)) == self.bang(self.meet(a, b)), "!a * !b = !(a & b)")?;
                if self.le(a, b) {
                    law(self.le(self.bang(a), self.bang(b)), "! is monotone")?;
                }
                for &c in &e {
                    law(self.tensor(a, self.tensor(b, c)) == self.tensor(self.tensor(a, b), c), "associativity")?;
                    law(self.le(self.tensor(a, b), c) == self.le(a, self.imp(b, c)), "residuation")?;
                    if self.le(a, b) {
                        law(self.le(self.tensor(a, c), self.tensor(b, c)), "multiplication is monotone")?;
                    }
                }
            }
        }
        law(self.bang(top) == top, "!1 = 1")
    }

    pub fn satisfies(&self, th: Theory) -> bool {
        self.check_laws(th).is_ok()
    }

    /// `"0"` for the bottom, `"1"` for the top, letters in between.
    pub fn label(&self, a: Elem) -> String {
        if a == self.top() {
            "1".into()
        } else if a == 0 {
            "0".into()
        } else {
            char::from(b'a' + a - 1).to_string()
        }
    }
}

/// Meets and joins of a finite order, if it is a lattice.
pub(crate) fn lattice_ops(n: usize, le: &[bool]) -> Option<(Vec<Elem>, Vec<Elem>)> {
    let l = |a: usize, b: usize| le[a * n + b];
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| l(c, a) && l(c, b)).collect();
            let glb = lower.iter().copied().find(|&c| lower.iter().all(|&d| l(d, c)))?;
            let upper: Vec<usize> = (0..n).filter(|&c| l(a, c) && l(b, c)).collect();
            let lub = upper.iter().copied().find(|&c| upper.iter().all(|&d| l(c, d)))?;
            meet[a * n + b] = glb as Elem;
            join[a * n + b] = lub as Elem;
        }
    }
    Some((meet, join))
}

/// `a -> b`, the largest `c` with `a * c <= b`, when it exists for all pairs.
pub(crate) fn residual(n: usize, le: &[bool], join: &[Elem], tensor: &[Elem]) -> Option<Vec<Elem>> {
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut best: Elem = 0;
            for c in 0..n {
                if le[tensor[a * n + c] as usize * n + b] {
                    best = join[best as usize * n + c];
                }
            }
            if !le[tensor[a * n + best as usize] as usize * n + b] {
                return None;
            }
            imp[a * n + b] = best;
        }
    }
    Some(imp)
}

/// Interpretation of atoms and constants over the domain `0..domain`.
/// Free variables of a sequent are interpreted like constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation {
    pub domain: usize,
    pub constants: BTreeMap<String, usize>,
    pub atoms: BTreeMap<(String, Vec<usize>), Elem>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("no value for atom {0}")]
    UnassignedAtom(String),
    #[error("no interpretation for term {0}")]
    UnassignedTerm(String),
    #[error("function symbols are not interpreted in finite models: {0}")]
    FunctionSymbol(String),
}

impl Valuation {
    fn term(&self, t: &Term, env: &[(String, usize)]) -> Result<usize, EvalError> {
        match t {
            Term::Var(x) => match env.iter().rev().find(|(y, _)| y == x) {
                Some((_, d)) => Ok(*d),
                None => self.constants.get(x).copied().ok_or_else(|| EvalError::UnassignedTerm(x.clone())),
            },
            Term::Const(c) => self.constants.get(c).copied().ok_or_else(|| EvalError::UnassignedTerm(c.clone())),
            Term::App(..) => Err(EvalError::FunctionSymbol(t.to_string())),
        }
    }
}

/// Homomorphic value of `a`: `-o` is the residual, `!` the bang operator,
/// the quantifiers are the meet and join over the domain.
pub fn evaluate(a: &Formula, alg: &Algebra, v: &Valuation) -> Result<Elem, EvalError> {
    eval_in(a, alg, v, &mut Vec::new())
}

fn eval_in(a: &Formula, alg: &Algebra, v: &Valuation, env: &mut Vec<(String, usize)>) -> Result<Elem, EvalError> {
    Ok(match a {
        Formula::Atom(p, args) => {
            let tuple = args.iter().map(|t| v.term(t, env)).collect::<Result<Vec<_>, _>>()?;
            *v.atoms.get(&(p.clone(), tuple)).ok_or_else(|| EvalError::UnassignedAtom(a.to_string()))?
        }
        Formula::Top | Formula::One => alg.top(),
        Formula::Zero => alg.bot(),
        Formula::Tensor(x, y) => alg.tensor(eval_in(x, alg, v, env)?, eval_in(y, alg, v, env)?),
        Formula::With(x, y) => alg.meet(eval_in(x, alg, v, env)?, eval_in(y, alg, v, env)?),
        Formula::Plus(x, y) => alg.join(eval_in(x, alg, v, env)?, eval_in(y, alg, v, env)?),
        Formula::Lolli(x, y) => alg.imp(eval_in(x, alg, v, env)?, eval_in(y, alg, v, env)?),
        Formula::Bang(x) => alg.bang(eval_in(x, alg, v, env)?),
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let all = matches!(a, Formula::Forall(..));
            let mut acc = if all { alg.top() } else { alg.bot() };
            for d in 0..v.domain {
                env.push((x.clone(), d));
                let r = eval_in(body, alg, v, env);
                env.pop();
                let r = r?;
                acc = if all { alg.meet(acc, r) } else { alg.join(acc, r) };
            }
            acc
        }
    })
}

/// Value of the hypotheses (their product) and of the conclusion.
pub fn evaluate_sequent(s: &Sequent, alg: &Algebra, v: &Valuation) -> Result<(Elem, Elem), EvalError> {
    let mut prod = alg.top();
    for h in &s.hyps {
        prod = alg.tensor(prod, evaluate(h, alg, v)?);
    }
    Ok((prod, evaluate(&s.goal, alg, v)?))
}

/// True iff every valuation over a domain of the given size makes the
/// product of the hypotheses lie below the conclusion.
pub fn validates(s: &Sequent, alg: &Algebra, domain: usize) -> bool {
    refute::first_violation(s, alg, domain.max(1)).is_none()
}

/// Text rendering: carrier, order pairs, the three operation tables.
pub fn render_algebra(alg: &Algebra) -> String {
    let mut out = String::new();
    let labels: Vec<String> = alg.elems().map(|a| alg.label(a)).collect();
    let _ = writeln!(out, "carrier: {}", labels.join(" "));
    let pairs: Vec<String> = alg
        .elems()
        .flat_map(|a| alg.elems().map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && alg.le(a, b))
        .map(|(a, b)| format!("{}<={}", alg.label(a), alg.label(b)))
        .collect();
    let _ = writeln!(out, "order: {}", pairs.join(" "));
    for (name, op) in [("tensor", Algebra::tensor as fn(&Algebra, Elem, Elem) -> Elem), ("implies", Algebra::imp)] {
        let _ = writeln!(out, "{name}:");
        let _ = writeln!(out, "    | {}", labels.join(" "));
        for a in alg.elems() {
            let row: Vec<String> = alg.elems().map(|b| alg.label(op(alg, a, b))).collect();
            let _ = writeln!(out, "  {} | {}", alg.label(a), row.join(" "));
        }
    }
    let bang: Vec<String> = alg.elems().map(|a| format!("{}->{}", alg.label(a), alg.label(alg.bang(a)))).collect();
    let _ = writeln!(out, "bang: {}", bang.join(" "));
    out
}

pub fn render_valuation(alg: &Algebra, v: &Valuation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "domain: {}", v.domain);
    for (c, d) in &v.constants {
        let _ = writeln!(out, "  {c} = {d}");
    }
    for ((p, args), val) in &v.atoms {
        if args.is_empty() {
            let _ = writeln!(out, "  {p} = {}", alg.label(*val));
        } else {
            let args: Vec<String> = args.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "  {p}({}) = {}", args.join(","), alg.label(*val));
        }
    }
    out
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_algebra(self))
    }
}
