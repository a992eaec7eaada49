//! Oracles for the algebraic semantics that share no code with `models`.
//!
//! Algebras are rebuilt from their raw tables, laws are rechecked by brute
//! force, and formulas are evaluated by a separate evaluator.

use std::collections::{BTreeMap, BTreeSet};

use lintrans::formula::{Formula, Term};
use lintrans::models::tables::{rows, Table};
use lintrans::models::{enumerate_algebras, find_countermodel, Algebra, Countermodel, Direction};
use lintrans::prover::{prove, Budget, Sequent, Theory};

/// Raw tables of a finite algebra; bottom is 0 and top is `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Raw {
    le: Vec<Vec<bool>>,
    tensor: Vec<Vec<usize>>,
    bang: Vec<usize>,
}

impl Raw {
    fn of(a: &Algebra) -> Raw {
        let n = a.size();
        let e = |i: usize| i as u8;
        Raw {
            le: (0..n).map(|i| (0..n).map(|j| a.le(e(i), e(j))).collect()).collect(),
            tensor: (0..n).map(|i| (0..n).map(|j| a.tensor(e(i), e(j)) as usize).collect()).collect(),
            bang: (0..n).map(|i| a.bang(e(i)) as usize).collect(),
        }
    }

    fn n(&self) -> usize {
        self.bang.len()
    }

    fn bound(&self, x: usize, y: usize, upper: bool) -> usize {
        let n = self.n();
        let ok = |z: usize| if upper { self.le[x][z] && self.le[y][z] } else { self.le[z][x] && self.le[z][y] };
        let cands: Vec<usize> = (0..n).filter(|&z| ok(z)).collect();
        *cands
            .iter()
            .find(|&&z| cands.iter().all(|&w| if upper { self.le[z][w] } else { self.le[w][z] }))
            .expect("lattice")
    }

    fn meet(&self, x: usize, y: usize) -> usize {
        self.bound(x, y, false)
    }

    fn join(&self, x: usize, y: usize) -> usize {
        self.bound(x, y, true)
    }

    /// Largest `c` with `x * c <= y`, if that set has a largest element.
    fn imp(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.n();
        let cs: Vec<usize> = (0..n).filter(|&c| self.le[self.tensor[x][c]][y]).collect();
        cs.iter().copied().find(|&c| cs.iter().all(|&d| self.le[d][c]))
    }

    fn neg(&self, x: usize) -> usize {
        self.imp(x, 0).unwrap()
    }

    fn lawful(&self, th: Theory) -> bool {
        let n = self.n();
        let top = n - 1;
        let r = 0..n;
        for a in r.clone() {
            if self.tensor[top][a] != a || !self.le[self.bang[a]][a] || self.bang[self.bang[a]] != self.bang[a] {
                return false;
            }
            if th.pro && self.bang[a] != a {
                return false;
            }
            for b in r.clone() {
                if self.tensor[a][b] != self.tensor[b][a] || self.imp(a, b).is_none() {
                    return false;
                }
                if self.tensor[self.bang[a]][self.bang[b]] != self.bang[self.meet(a, b)] {
                    return false;
                }
                for c in r.clone() {
                    if self.tensor[a][self.tensor[b][c]] != self.tensor[self.tensor[a][b]][c] {
                        return false;
                    }
                    if self.le[a][b] && !self.le[self.tensor[a][c]][self.tensor[b][c]] {
                        return false;
                    }
                }
            }
        }
        if th.dne && r.clone().any(|a| self.neg(self.neg(a)) != a) {
            return false;
        }
        self.bang[top] == top
    }

    fn permuted(&self, p: &[usize]) -> Raw {
        let n = self.n();
        let mut out = self.clone();
        for i in 0..n {
            out.bang[p[i]] = p[self.bang[i]];
            for j in 0..n {
                out.tensor[p[i]][p[j]] = p[self.tensor[i][j]];
                out.le[p[i]][p[j]] = self.le[i][j];
            }
        }
        out
    }

    /// Least relabeling among the automorphisms of the order.
    fn canonical(&self) -> Raw {
        let n = self.n();
        permutations(n)
            .into_iter()
            .filter(|p| (0..n).all(|i| (0..n).all(|j| self.le[i][j] == self.le[p[i]][p[j]])))
            .map(|p| self.permuted(&p))
            .min()
            .unwrap()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn chain(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect()
}

fn diamond() -> Vec<Vec<bool>> {
    let up = [vec![0, 1, 2, 3], vec![1, 3], vec![2, 3], vec![3]];
    (0..4).map(|i| (0..4).map(|j| up[i].contains(&j)).collect()).collect()
}

/// Every model on `le` up to isomorphism, by trying all commutative tables
/// with the top as unit and every `!` map.
fn brute_force(le: Vec<Vec<bool>>, th: Theory) -> BTreeSet<Raw> {
    let n = le.len();
    let top = n - 1;
    let free: Vec<(usize, usize)> = (0..top).flat_map(|i| (i..top).map(move |j| (i, j))).collect();
    let mut out = BTreeSet::new();
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut tensor = vec![vec![0; n]; n];
        for a in 0..n {
            tensor[top][a] = a;
            tensor[a][top] = a;
        }
        for (&(i, j), &v) in free.iter().zip(&digits) {
            tensor[i][j] = v;
            tensor[j][i] = v;
        }
        for code in 0..n.pow(n as u32) {
            let bang: Vec<usize> = (0..n).map(|k| code / n.pow(k as u32) % n).collect();
            let raw = Raw { le: le.clone(), tensor: tensor.clone(), bang };
            if raw.lawful(th) {
                out.insert(raw.canonical());
            }
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return out;
            }
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn enumerated(n: usize, th: Theory) -> BTreeSet<Raw> {
    enumerate_algebras(n, th).iter().map(|a| Raw::of(a).canonical()).collect()
}

#[test]
fn three_element_models_by_brute_force() {
    let ill = brute_force(chain(3), Theory::ILL);
    assert_eq!(ill.len(), 3);
    assert_eq!(ill, enumerated(3, Theory::ILL));
    for th in [Theory::IL_B, Theory::CLL_B, Theory::CL_B] {
        assert_eq!(brute_force(chain(3), th), enumerated(3, th), "{th}");
    }
}

#[test]
fn four_element_models_by_brute_force() {
    for th in [Theory::ILL, Theory::IL_B, Theory::CLL_B, Theory::CL_B] {
        let mut expect = brute_force(chain(4), th);
        expect.extend(brute_force(diamond(), th));
        assert_eq!(expect, enumerated(4, th), "{th}");
    }
}

#[test]
fn enumeration_is_deterministic() {
    for n in 1..=5 {
        let a: Vec<Raw> = enumerate_algebras(n, Theory::ILL).iter().map(Raw::of).collect();
        let b: Vec<Raw> = enumerate_algebras(n, Theory::ILL).iter().map(Raw::of).collect();
        assert_eq!(a, b);
    }
}

type Env = Vec<(String, usize)>;

/// Value of `a` with atoms read from `atoms`; every constant denotes 0.
fn eval(a: &Formula, r: &Raw, atoms: &BTreeMap<(String, Vec<usize>), usize>, domain: usize, env: &mut Env) -> usize {
    let term = |t: &Term, env: &Env| match t {
        Term::Var(x) => env.iter().rev().find(|(y, _)| y == x).map(|p| p.1).expect("bound variable"),
        Term::Const(_) => 0,
        Term::App(..) => panic!("function symbols are not evaluated"),
    };
    let top = r.n() - 1;
    match a {
        Formula::Atom(p, args) => atoms[&(p.clone(), args.iter().map(|t| term(t, env)).collect())],
        Formula::Top | Formula::One => top,
        Formula::Zero => 0,
        Formula::Tensor(x, y) => {
            let (x, y) = (eval(x, r, atoms, domain, env), eval(y, r, atoms, domain, env));
            r.tensor[x][y]
        }
        Formula::With(x, y) => {
            let (x, y) = (eval(x, r, atoms, domain, env), eval(y, r, atoms, domain, env));
            r.meet(x, y)
        }
        Formula::Plus(x, y) => {
            let (x, y) = (eval(x, r, atoms, domain, env), eval(y, r, atoms, domain, env));
            r.join(x, y)
        }
        Formula::Lolli(x, y) => {
            let (x, y) = (eval(x, r, atoms, domain, env), eval(y, r, atoms, domain, env));
            r.imp(x, y).unwrap()
        }
        Formula::Bang(x) => r.bang[eval(x, r, atoms, domain, env)],
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let all = matches!(a, Formula::Forall(..));
            let mut acc = if all { top } else { 0 };
            for d in 0..domain {
                env.push((x.clone(), d));
                let v = eval(body, r, atoms, domain, env);
                env.pop();
                acc = if all { r.meet(acc, v) } else { r.join(acc, v) };
            }
            acc
        }
    }
}

fn arities(a: &Formula, out: &mut BTreeMap<String, usize>) {
    match a {
        Formula::Atom(p, args) => {
            out.insert(p.clone(), args.len());
        }
        Formula::Top | Formula::One | Formula::Zero => {}
        Formula::Tensor(x, y) | Formula::With(x, y) | Formula::Plus(x, y) | Formula::Lolli(x, y) => {
            arities(x, out);
            arities(y, out);
        }
        Formula::Bang(x) | Formula::Forall(_, x) | Formula::Exists(_, x) => arities(x, out),
    }
}

/// Whether `s` holds under every valuation over a domain of size `domain`.
fn holds_everywhere(s: &Sequent, r: &Raw, domain: usize) -> bool {
    let mut ar = BTreeMap::new();
    s.hyps.iter().chain([&s.goal]).for_each(|f| arities(f, &mut ar));
    let mut keys = Vec::new();
    for (p, &k) in &ar {
        for code in 0..domain.pow(k as u32) {
            keys.push((p.clone(), (0..k).map(|i| code / domain.pow(i as u32) % domain).collect::<Vec<_>>()));
        }
    }
    let n = r.n();
    let total = n.pow(keys.len() as u32);
    (0..total).all(|code| {
        let atoms: BTreeMap<_, _> = keys.iter().enumerate().map(|(i, k)| (k.clone(), code / n.pow(i as u32) % n)).collect();
        let mut lhs = n - 1;
        for h in &s.hyps {
            lhs = r.tensor[lhs][eval(h, r, &atoms, domain, &mut Vec::new())];
        }
        r.le[lhs][eval(&s.goal, r, &atoms, domain, &mut Vec::new())]
    })
}

#[test]
fn table_countermodels_revalidate() {
    let mut checked = 0;
    for t in [Table::DoubleNegation, Table::Bang] {
        for row in rows(t) {
            for &(th, holds) in &row.expected {
                if holds || row.no_finite_refutation.is_some() {
                    continue;
                }
                let Countermodel::Found { witness, direction } = find_countermodel(&row.lhs, &row.rhs, th, 5, 2) else {
                    continue;
                };
                let r = Raw::of(&witness.algebra);
                assert!(r.lawful(th), "row {} {th}: algebra breaks a law", row.label);
                let v = &witness.valuation;
                let mut atoms = v.atoms.iter().map(|(k, &e)| (k.clone(), e as usize)).collect::<BTreeMap<_, _>>();
                // atoms the witness leaves out do not occur, so any value will do
                let mut ar = BTreeMap::new();
                arities(&row.lhs, &mut ar);
                arities(&row.rhs, &mut ar);
                for (p, k) in ar {
                    for code in 0..v.domain.pow(k as u32) {
                        let args: Vec<usize> = (0..k).map(|i| code / v.domain.pow(i as u32) % v.domain).collect();
                        atoms.entry((p.clone(), args)).or_insert(0);
                    }
                }
                let l = eval(&row.lhs, &r, &atoms, v.domain, &mut Vec::new());
                let rr = eval(&row.rhs, &r, &atoms, v.domain, &mut Vec::new());
                let (from, to) = match direction {
                    Direction::LeftToRight => (l, rr),
                    Direction::RightToLeft => (rr, l),
                };
                assert!(!r.le[from][to], "row {} {th}: witness does not refute", row.label);
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "only {checked} countermodels found within 5/2");
}

const PROVABLE: [(&str, Theory); 10] = [
    ("A * (B + C) |- (A * B) + (A * C)", Theory::ILL),
    ("!A |- !A * !A", Theory::ILL),
    ("!(A & B) |- !A * !B", Theory::ILL),
    ("A -o B, B -o C |- A -o C", Theory::ILL),
    ("~~(A * B) |- ~~(~~A * ~~B)", Theory::ILL),
    ("forall x. A(x) |- exists x. A(x)", Theory::ILL),
    ("exists x. !A(x) |- !(exists x. A(x))", Theory::ILL),
    ("A |- A * A", Theory::IL_B),
    ("~~A |- A", Theory::CLL_B),
    ("|- A + ~A", Theory::CL_B),
];

#[test]
fn soundness_bridge() {
    let b = Budget::default().with_timeout(5_000);
    for (text, th) in PROVABLE {
        let s = Sequent::parse(text).unwrap();
        assert!(prove(&s, th, &b).is_proved(), "{text} in {th}");
        for n in 1..=4 {
            for a in enumerate_algebras(n, th) {
                let r = Raw::of(&a);
                for d in 1..=2 {
                    assert!(holds_everywhere(&s, &r, d), "{text} fails in a model of {th}:\n{a:?}");
                }
            }
        }
    }
}

#[test]
fn classical_laws_fail_in_some_ill_model() {
    for text in ["~~A |- A", "|- A + ~A", "A |- A * A", "A |- !A"] {
        let s = Sequent::parse(text).unwrap();
        let refuted = (1..=4).any(|n| enumerate_algebras(n, Theory::ILL).iter().any(|a| !holds_everywhere(&s, &Raw::of(a), 1)));
        assert!(refuted, "{text}");
    }
}
