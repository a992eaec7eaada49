//! Abstract syntax for the three formula languages.
//!
//! [`Formula`] is the intuitionistic linear language that every translation
//! targets. Negation and the why-not modality are not constructors: `~A` is
//! stored as `A -o 0` and `?A` as `~!~A`, and the printer folds them back.
//! [`IlFormula`] and [`CllFormula`] are the source languages of the two
//! embeddings.

use std::collections::BTreeSet;
use std::fmt;

/// First-order terms used as predicate arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn cst(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.free_vars_into(out)),
        }
    }

    pub fn has_var(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.has_var(x)),
        }
    }

    /// Replaces the variable `x` by `t` (terms have no binders).
    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == x => t.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A formula of intuitionistic linear logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Top,
    Zero,
    One,
    Tensor(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    Lolli(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// A formula of intuitionistic (or classical) logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IlFormula {
    Atom(String, Vec<Term>),
    Bot,
    Top,
    And(Box<IlFormula>, Box<IlFormula>),
    Or(Box<IlFormula>, Box<IlFormula>),
    Imp(Box<IlFormula>, Box<IlFormula>),
    Forall(String, Box<IlFormula>),
    Exists(String, Box<IlFormula>),
}

/// A formula of classical linear logic. `Par` and `Quest` are primitive here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CllFormula {
    Atom(String, Vec<Term>),
    Top,
    Zero,
    One,
    Bot,
    Tensor(Box<CllFormula>, Box<CllFormula>),
    With(Box<CllFormula>, Box<CllFormula>),
    Plus(Box<CllFormula>, Box<CllFormula>),
    Par(Box<CllFormula>, Box<CllFormula>),
    Lolli(Box<CllFormula>, Box<CllFormula>),
    Bang(Box<CllFormula>),
    Quest(Box<CllFormula>),
    Forall(String, Box<CllFormula>),
    Exists(String, Box<CllFormula>),
}

/// Uniform view of a syntax node, used by the binding-aware operations that
/// all three languages share.
pub enum View<'a, F> {
    Atom(&'a str, &'a [Term]),
    Leaf(u8),
    Unary(u8, &'a F),
    Binary(u8, &'a F, &'a F),
    Binder(u8, &'a str, &'a F),
}

pub trait Syntax: Sized {
    fn view(&self) -> View<'_, Self>;
}

impl Syntax for Formula {
    fn view(&self) -> View<'_, Self> {
        use Formula::*;
        match self {
            Atom(p, args) => View::Atom(p, args),
            Top => View::Leaf(0),
            Zero => View::Leaf(1),
            One => View::Leaf(2),
            Tensor(a, b) => View::Binary(0, a, b),
            With(a, b) => View::Binary(1, a, b),
            Plus(a, b) => View::Binary(2, a, b),
            Lolli(a, b) => View::Binary(3, a, b),
            Bang(a) => View::Unary(0, a),
            Forall(x, a) => View::Binder(0, x, a),
            Exists(x, a) => View::Binder(1, x, a),
        }
    }
}

impl Syntax for IlFormula {
    fn view(&self) -> View<'_, Self> {
        use IlFormula::*;
        match self {
            Atom(p, args) => View::Atom(p, args),
            Bot => View::Leaf(0),
            Top => View::Leaf(1),
            And(a, b) => View::Binary(0, a, b),
            Or(a, b) => View::Binary(1, a, b),
            Imp(a, b) => View::Binary(2, a, b),
            Forall(x, a) => View::Binder(0, x, a),
            Exists(x, a) => View::Binder(1, x, a),
        }
    }
}

impl Syntax for CllFormula {
    fn view(&self) -> View<'_, Self> {
        use CllFormula::*;
        match self {
            Atom(p, args) => View::Atom(p, args),
            Top => View::Leaf(0),
            Zero => View::Leaf(1),
            One => View::Leaf(2),
            Bot => View::Leaf(3),
            Tensor(a, b) => View::Binary(0, a, b),
            With(a, b) => View::Binary(1, a, b),
            Plus(a, b) => View::Binary(2, a, b),
            Par(a, b) => View::Binary(3, a, b),
            Lolli(a, b) => View::Binary(4, a, b),
            Bang(a) => View::Unary(0, a),
            Quest(a) => View::Unary(1, a),
            Forall(x, a) => View::Binder(0, x, a),
            Exists(x, a) => View::Binder(1, x, a),
        }
    }
}

/// True iff `a` and `b` differ only in the names of bound variables.
pub fn alpha_eq<F: Syntax>(a: &F, b: &F) -> bool {
    let mut env = Vec::new();
    alpha_eq_in(a, b, &mut env)
}

fn alpha_eq_in<F: Syntax>(a: &F, b: &F, env: &mut Vec<(String, String)>) -> bool {
    match (a.view(), b.view()) {
        (View::Atom(p, xs), View::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| terms_alpha_eq(s, t, env))
        }
        (View::Leaf(i), View::Leaf(j)) => i == j,
        (View::Unary(i, x), View::Unary(j, y)) => i == j && alpha_eq_in(x, y, env),
        (View::Binary(i, x1, x2), View::Binary(j, y1, y2)) => {
            i == j && alpha_eq_in(x1, y1, env) && alpha_eq_in(x2, y2, env)
        }
        (View::Binder(i, x, body1), View::Binder(j, y, body2)) => {
            if i != j {
                return false;
            }
            env.push((x.to_string(), y.to_string()));
            let r = alpha_eq_in(body1, body2, env);
            env.pop();
            r
        }
        _ => false,
    }
}

fn terms_alpha_eq(s: &Term, t: &Term, env: &[(String, String)]) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => {
            // innermost binder wins
            let lx = env.iter().rposition(|(l, _)| l == x);
            let ly = env.iter().rposition(|(_, r)| r == y);
            match (lx, ly) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| terms_alpha_eq(a, b, env))
        }
        _ => false,
    }
}

/// Free variables of any formula language.
pub fn free_vars<F: Syntax>(a: &F) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    free_vars_into(a, &mut out);
    out
}

fn free_vars_into<F: Syntax>(a: &F, out: &mut BTreeSet<String>) {
    match a.view() {
        View::Atom(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
        View::Leaf(_) => {}
        View::Unary(_, x) => free_vars_into(x, out),
        View::Binary(_, x, y) => {
            free_vars_into(x, out);
            free_vars_into(y, out);
        }
        View::Binder(_, v, body) => {
            let mut inner = BTreeSet::new();
            free_vars_into(body, &mut inner);
            inner.remove(v);
            out.extend(inner);
        }
    }
}

/// Number of AST nodes, counting `~` and `?` in expanded form.
pub fn size<F: Syntax>(a: &F) -> usize {
    match a.view() {
        View::Atom(..) | View::Leaf(_) => 1,
        View::Unary(_, x) | View::Binder(_, _, x) => 1 + size(x),
        View::Binary(_, x, y) => 1 + size(x) + size(y),
    }
}

/// Depth of the AST; leaves have depth 0.
pub fn depth<F: Syntax>(a: &F) -> usize {
    match a.view() {
        View::Atom(..) | View::Leaf(_) => 0,
        View::Unary(_, x) | View::Binder(_, _, x) => 1 + depth(x),
        View::Binary(_, x, y) => 1 + depth(x).max(depth(y)),
    }
}

/// Sorted multiset of predicate names occurring in `a`.
pub fn atom_names<F: Syntax>(a: &F) -> Vec<String> {
    fn go<F: Syntax>(a: &F, out: &mut Vec<String>) {
        match a.view() {
            View::Atom(p, _) => out.push(p.to_string()),
            View::Leaf(_) => {}
            View::Unary(_, x) | View::Binder(_, _, x) => go(x, out),
            View::Binary(_, x, y) => {
                go(x, out);
                go(y, out);
            }
        }
    }
    let mut out = Vec::new();
    go(a, &mut out);
    out.sort();
    out
}

/// Picks a variant of `base` (by appending primes) that is not in `avoid`.
pub fn fresh_var(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

macro_rules! boxed2 {
    ($name:ident, $ctor:ident) => {
        pub fn $name(a: Formula, b: Formula) -> Formula {
            Formula::$ctor(Box::new(a), Box::new(b))
        }
    };
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string(), Vec::new())
    }

    pub fn pred(name: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(name.to_string(), args)
    }

    boxed2!(tensor, Tensor);
    boxed2!(with, With);
    boxed2!(plus, Plus);
    boxed2!(lolli, Lolli);

    pub fn bang(a: Formula) -> Formula {
        Formula::Bang(Box::new(a))
    }

    pub fn forall(x: &str, a: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(a))
    }

    pub fn exists(x: &str, a: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(a))
    }

    /// `(a -o b) & (b -o a)`.
    pub fn equiv(a: Formula, b: Formula) -> Formula {
        Formula::with(Formula::lolli(a.clone(), b.clone()), Formula::lolli(b, a))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..))
    }

    /// Atoms and the constants `top`, `0`, `1`.
    pub fn is_leaf(&self) -> bool {
        matches!(self, Formula::Atom(..) | Formula::Top | Formula::Zero | Formula::One)
    }

    /// `Some(a)` when `self` is `a -o 0`.
    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Lolli(a, b) if **b == Formula::Zero => Some(a),
            _ => None,
        }
    }

    /// `Some(a)` when `self` is `~~a`.
    pub fn as_dneg(&self) -> Option<&Formula> {
        self.as_neg().and_then(Formula::as_neg)
    }

    /// `Some(a)` when `self` is `~!~a`.
    pub fn as_quest(&self) -> Option<&Formula> {
        match self.as_neg()? {
            Formula::Bang(inner) => inner.as_neg(),
            _ => None,
        }
    }

    pub fn as_bang(&self) -> Option<&Formula> {
        match self {
            Formula::Bang(a) => Some(a),
            _ => None,
        }
    }

    pub fn substitute(&self, x: &str, t: &Term) -> Formula {
        substitute(self, x, t)
    }
}

/// Linear negation `a -o 0`.
pub fn neg(a: Formula) -> Formula {
    Formula::lolli(a, Formula::Zero)
}

/// `~~a`.
pub fn dneg(a: Formula) -> Formula {
    neg(neg(a))
}

/// Why-not, `~!~a`.
pub fn quest(a: Formula) -> Formula {
    neg(Formula::bang(neg(a)))
}

/// Capture-avoiding substitution `a[t/x]`.
pub fn substitute(a: &Formula, x: &str, t: &Term) -> Formula {
    use Formula::*;
    match a {
        Atom(p, args) => Atom(p.clone(), args.iter().map(|s| s.substitute(x, t)).collect()),
        Top | Zero | One => a.clone(),
        Tensor(l, r) => Formula::tensor(substitute(l, x, t), substitute(r, x, t)),
        With(l, r) => Formula::with(substitute(l, x, t), substitute(r, x, t)),
        Plus(l, r) => Formula::plus(substitute(l, x, t), substitute(r, x, t)),
        Lolli(l, r) => Formula::lolli(substitute(l, x, t), substitute(r, x, t)),
        Bang(b) => Formula::bang(substitute(b, x, t)),
        Forall(y, body) | Exists(y, body) => {
            let rebuild = |v: String, b: Formula| match a {
                Forall(..) => Forall(v, Box::new(b)),
                _ => Exists(v, Box::new(b)),
            };
            if y == x || !free_vars(&**body).contains(x) {
                return a.clone();
            }
            if t.has_var(y) {
                let mut avoid = free_vars(&**body);
                t.free_vars_into(&mut avoid);
                avoid.insert(x.to_string());
                let y2 = fresh_var(y, &avoid);
                let renamed = substitute(body, y, &Term::Var(y2.clone()));
                rebuild(y2, substitute(&renamed, x, t))
            } else {
                rebuild(y.clone(), substitute(body, x, t))
            }
        }
    }
}

macro_rules! il_boxed2 {
    ($name:ident, $ctor:ident) => {
        pub fn $name(a: IlFormula, b: IlFormula) -> IlFormula {
            IlFormula::$ctor(Box::new(a), Box::new(b))
        }
    };
}

impl IlFormula {
    pub fn atom(name: &str) -> IlFormula {
        IlFormula::Atom(name.to_string(), Vec::new())
    }
    il_boxed2!(and, And);
    il_boxed2!(or, Or);
    il_boxed2!(imp, Imp);

    pub fn forall(x: &str, a: IlFormula) -> IlFormula {
        IlFormula::Forall(x.to_string(), Box::new(a))
    }

    pub fn exists(x: &str, a: IlFormula) -> IlFormula {
        IlFormula::Exists(x.to_string(), Box::new(a))
    }

    /// Intuitionistic negation `a -> bot`.
    pub fn not(a: IlFormula) -> IlFormula {
        IlFormula::imp(a, IlFormula::Bot)
    }
}

macro_rules! cll_boxed2 {
    ($name:ident, $ctor:ident) => {
        pub fn $name(a: CllFormula, b: CllFormula) -> CllFormula {
            CllFormula::$ctor(Box::new(a), Box::new(b))
        }
    };
}

impl CllFormula {
    pub fn atom(name: &str) -> CllFormula {
        CllFormula::Atom(name.to_string(), Vec::new())
    }
    cll_boxed2!(tensor, Tensor);
    cll_boxed2!(with, With);
    cll_boxed2!(plus, Plus);
    cll_boxed2!(par, Par);
    cll_boxed2!(lolli, Lolli);

    pub fn bang(a: CllFormula) -> CllFormula {
        CllFormula::Bang(Box::new(a))
    }

    pub fn quest(a: CllFormula) -> CllFormula {
        CllFormula::Quest(Box::new(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("P")
    }

    #[test]
    fn negation_is_lolli_zero() {
        assert_eq!(neg(p()), Formula::lolli(p(), Formula::Zero));
        assert_eq!(
            neg(neg(p())),
            Formula::lolli(Formula::lolli(p(), Formula::Zero), Formula::Zero)
        );
        assert_eq!(neg(Formula::Zero), Formula::lolli(Formula::Zero, Formula::Zero));
    }

    #[test]
    fn quest_expands() {
        let expected = Formula::lolli(Formula::bang(Formula::lolli(p(), Formula::Zero)), Formula::Zero);
        assert_eq!(quest(p()), expected);
        assert_eq!(quest(p()).as_quest(), Some(&p()));
        let one = Formula::lolli(
            Formula::bang(Formula::lolli(Formula::One, Formula::Zero)),
            Formula::Zero,
        );
        assert_eq!(quest(Formula::One), one);
    }

    #[test]
    fn substitution_examples() {
        let px = Formula::pred("P", vec![Term::var("x")]);
        let c = Term::cst("c");
        assert_eq!(px.substitute("x", &c), Formula::pred("P", vec![c.clone()]));

        let all = Formula::forall("x", px.clone());
        assert_eq!(all.substitute("x", &c), all);

        // (exists y. P(x, y))[y/x] renames the binder
        let pxy = Formula::pred("P", vec![Term::var("x"), Term::var("y")]);
        let ex = Formula::exists("y", pxy);
        let got = ex.substitute("x", &Term::var("y"));
        let expected = Formula::exists(
            "y'",
            Formula::pred("P", vec![Term::var("y"), Term::var("y'")]),
        );
        assert_eq!(got, expected);
    }

    #[test]
    fn alpha_equivalence_examples() {
        let px = Formula::pred("P", vec![Term::var("x")]);
        let py = Formula::pred("P", vec![Term::var("y")]);
        assert!(alpha_eq(&Formula::forall("x", px.clone()), &Formula::forall("y", py)));
        assert!(!alpha_eq(&Formula::forall("x", px.clone()), &Formula::exists("x", px)));
        let q = Formula::atom("Q");
        assert!(!alpha_eq(&Formula::tensor(p(), q.clone()), &Formula::tensor(q, p())));
    }

    #[test]
    fn alpha_eq_respects_shadowing() {
        // forall x. forall x. P(x)  vs  forall x. forall y. P(x)
        let a = Formula::forall("x", Formula::forall("x", Formula::pred("P", vec![Term::var("x")])));
        let b = Formula::forall("x", Formula::forall("y", Formula::pred("P", vec![Term::var("x")])));
        let c = Formula::forall("z", Formula::forall("y", Formula::pred("P", vec![Term::var("y")])));
        assert!(!alpha_eq(&a, &b));
        assert!(alpha_eq(&a, &c));
    }

    #[test]
    fn free_variables_and_atoms() {
        let f = Formula::tensor(
            Formula::forall("x", Formula::pred("P", vec![Term::var("x"), Term::var("y")])),
            Formula::atom("Q"),
        );
        assert_eq!(free_vars(&f).into_iter().collect::<Vec<_>>(), vec!["y".to_string()]);
        assert_eq!(atom_names(&f), vec!["P".to_string(), "Q".to_string()]);
        assert_eq!(size(&f), 4);
    }
}
