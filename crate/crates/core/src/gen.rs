//! Seeded random formulas and exhaustive small corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{CllFormula, Formula, IlFormula, Term};

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub max_depth: usize,
    /// Number of distinct predicate names, drawn from `P`, `Q`, `R`, ...
    pub atoms: usize,
    /// Number of distinct bound-variable names; 0 disables quantifiers.
    pub vars: usize,
    pub constants: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_depth: 6, atoms: 4, vars: 2, constants: true }
    }
}

const ATOM_NAMES: [&str; 8] = ["P", "Q", "R", "S", "T", "U", "V", "W"];
const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    bound: Vec<&'static str>,
}

impl<R: Rng> Gen<'_, R> {
    fn atom_parts(&mut self) -> (String, Vec<Term>) {
        let name = ATOM_NAMES[self.rng.gen_range(0..self.cfg.atoms.clamp(1, ATOM_NAMES.len()))];
        let args = if self.cfg.vars > 0 && self.rng.gen_bool(0.5) {
            let t = match self.bound.choose(self.rng) {
                Some(x) if self.rng.gen_bool(0.8) => Term::var(x),
                _ => Term::cst("c"),
            };
            vec![t]
        } else {
            Vec::new()
        };
        (name.to_string(), args)
    }

    fn var(&mut self) -> &'static str {
        VAR_NAMES[self.rng.gen_range(0..self.cfg.vars.min(VAR_NAMES.len()))]
    }

    /// Picks a node kind: 0 = leaf, 1..=n_bin binary, then unary, then binders.
    fn pick(&mut self, depth: usize, n_bin: u32, n_un: u32) -> u32 {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return 0;
        }
        let n_q = if self.cfg.vars > 0 { 2 } else { 0 };
        self.rng.gen_range(1..=n_bin + n_un + n_q)
    }

    fn ill(&mut self, depth: usize) -> Formula {
        let k = self.pick(depth, 4, 1);
        let d = depth.saturating_sub(1);
        match k {
            0 => {
                if self.cfg.constants && self.rng.gen_bool(0.15) {
                    [Formula::Top, Formula::Zero, Formula::One][self.rng.gen_range(0..3)].clone()
                } else {
                    let (p, args) = self.atom_parts();
                    Formula::Atom(p, args)
                }
            }
            1 => Formula::tensor(self.ill(d), self.ill(d)),
            2 => Formula::with(self.ill(d), self.ill(d)),
            3 => Formula::plus(self.ill(d), self.ill(d)),
            4 => Formula::lolli(self.ill(d), self.ill(d)),
            5 => Formula::bang(self.ill(d)),
            _ => {
                let x = self.var();
                self.bound.push(x);
                let body = self.ill(d);
                self.bound.pop();
                if k == 6 {
                    Formula::forall(x, body)
                } else {
                    Formula::exists(x, body)
                }
            }
        }
    }

    fn il(&mut self, depth: usize) -> IlFormula {
        let k = self.pick(depth, 3, 0);
        let d = depth.saturating_sub(1);
        match k {
            0 => {
                if self.cfg.constants && self.rng.gen_bool(0.15) {
                    [IlFormula::Top, IlFormula::Bot][self.rng.gen_range(0..2)].clone()
                } else {
                    let (p, args) = self.atom_parts();
                    IlFormula::Atom(p, args)
                }
            }
            1 => IlFormula::and(self.il(d), self.il(d)),
            2 => IlFormula::or(self.il(d), self.il(d)),
            3 => IlFormula::imp(self.il(d), self.il(d)),
            _ => {
                let x = self.var();
                self.bound.push(x);
                let body = self.il(d);
                self.bound.pop();
                if k == 4 {
                    IlFormula::forall(x, body)
                } else {
                    IlFormula::exists(x, body)
                }
            }
        }
    }

    fn cll(&mut self, depth: usize) -> CllFormula {
        let k = self.pick(depth, 5, 2);
        let d = depth.saturating_sub(1);
        match k {
            0 => {
                if self.cfg.constants && self.rng.gen_bool(0.15) {
                    let cs = [CllFormula::Top, CllFormula::Zero, CllFormula::One, CllFormula::Bot];
                    cs[self.rng.gen_range(0..4)].clone()
                } else {
                    let (p, args) = self.atom_parts();
                    CllFormula::Atom(p, args)
                }
            }
            1 => CllFormula::tensor(self.cll(d), self.cll(d)),
            2 => CllFormula::with(self.cll(d), self.cll(d)),
            3 => CllFormula::plus(self.cll(d), self.cll(d)),
            4 => CllFormula::par(self.cll(d), self.cll(d)),
            5 => CllFormula::lolli(self.cll(d), self.cll(d)),
            6 => CllFormula::bang(self.cll(d)),
            7 => CllFormula::quest(self.cll(d)),
            _ => {
                let x = self.var();
                self.bound.push(x);
                let body = self.cll(d);
                self.bound.pop();
                if k == 8 {
                    CllFormula::Forall(x.to_string(), Box::new(body))
                } else {
                    CllFormula::Exists(x.to_string(), Box::new(body))
                }
            }
        }
    }
}

pub fn random_ill<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Formula {
    Gen { rng, cfg, bound: Vec::new() }.ill(cfg.max_depth)
}

pub fn random_il<R: Rng>(rng: &mut R, cfg: &GenConfig) -> IlFormula {
    Gen { rng, cfg, bound: Vec::new() }.il(cfg.max_depth)
}

pub fn random_cll<R: Rng>(rng: &mut R, cfg: &GenConfig) -> CllFormula {
    Gen { rng, cfg, bound: Vec::new() }.cll(cfg.max_depth)
}

/// `count` linear formulas from a fixed seed.
pub fn corpus(seed: u64, count: usize, cfg: &GenConfig) -> Vec<Formula> {
    let mut r = rng(seed);
    (0..count).map(|_| random_ill(&mut r, cfg)).collect()
}

/// Every quantifier-free formula over the first `atoms` atoms built with
/// `*`, `&`, `+`, `-o` and `!` up to the given depth, without constants.
pub fn all_formulas(depth: usize, atoms: usize) -> Vec<Formula> {
    let base: Vec<Formula> = ATOM_NAMES[..atoms].iter().map(|p| Formula::atom(p)).collect();
    let mut level = base.clone();
    for _ in 0..depth {
        let mut next = base.clone();
        for a in &level {
            for b in &level {
                next.push(Formula::tensor(a.clone(), b.clone()));
                next.push(Formula::with(a.clone(), b.clone()));
                next.push(Formula::plus(a.clone(), b.clone()));
                next.push(Formula::lolli(a.clone(), b.clone()));
            }
        }
        for a in &level {
            next.push(Formula::bang(a.clone()));
        }
        level = next;
    }
    level
}
