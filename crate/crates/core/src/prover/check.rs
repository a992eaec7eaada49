//! Replays a proof tree rule by rule. Hypotheses are compared as multisets
//! up to renaming of bound variables.

use std::collections::BTreeSet;

use crate::formula::{alpha_eq, free_vars, neg, substitute, Formula, Term};

use super::{Proof, Rule, Sequent, Theory};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayError {
    pub sequent: String,
    pub rule: &'static str,
    pub reason: String,
}

impl std::fmt::Display for ReplayError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "bad {} step at `{}`: {}", self.rule, self.sequent, self.reason)
    }
}

impl std::error::Error for ReplayError {}

/// Checks every node of `p` under `th`, with `axioms` allowed as extra
/// closed axioms.
pub fn replay(p: &Proof, th: Theory, axioms: &[Sequent]) -> Result<(), ReplayError> {
    check_node(p, th, axioms).map_err(|reason| ReplayError {
        sequent: p.sequent().to_string(),
        rule: p.rule.name(),
        reason,
    })?;
    p.premises.iter().try_for_each(|q| replay(q, th, axioms))
}

fn remove(ms: &[Formula], f: &Formula) -> Option<Vec<Formula>> {
    let i = ms.iter().position(|g| alpha_eq(g, f))?;
    let mut out = ms.to_vec();
    out.remove(i);
    Some(out)
}

fn remove_all(ms: &[Formula], fs: &[Formula]) -> Option<Vec<Formula>> {
    fs.iter().try_fold(ms.to_vec(), |acc, f| remove(&acc, f))
}

fn same_multiset(a: &[Formula], b: &[Formula]) -> bool {
    a.len() == b.len() && remove_all(a, b).is_some_and(|r| r.is_empty())
}

fn plus(ms: &[Formula], fs: &[&Formula]) -> Vec<Formula> {
    let mut out = ms.to_vec();
    out.extend(fs.iter().map(|f| (*f).clone()));
    out
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn sequent_free_vars(hyps: &[Formula], goal: &Formula) -> BTreeSet<String> {
    let mut vs = free_vars(goal);
    for h in hyps {
        vs.extend(free_vars(h));
    }
    vs
}

fn check_node(p: &Proof, th: Theory, axioms: &[Sequent]) -> Result<(), String> {
    let n = p.premises.len();
    let arity = |k: usize| ensure(n == k, &format!("expected {k} premises, found {n}"));
    let principal = || p.principal.as_ref().ok_or_else(|| "missing principal formula".to_string());
    // Hypotheses of the conclusion without the principal formula.
    let rest = || -> Result<Vec<Formula>, String> {
        remove(&p.hyps, principal()?).ok_or_else(|| "principal formula is not a hypothesis".to_string())
    };
    let prem = |i: usize| &p.premises[i];
    let same_goal = |q: &Proof| ensure(alpha_eq(&q.goal, &p.goal), "premise changes the conclusion");
    let hyps_are = |q: &Proof, expected: &[Formula]| ensure(same_multiset(&q.hyps, expected), "premise hypotheses do not match");

    match p.rule {
        Rule::Id => {
            arity(0)?;
            ensure(p.hyps.len() == 1 && alpha_eq(&p.hyps[0], &p.goal), "not of the form A |- A")
        }
        Rule::OneR => {
            arity(0)?;
            ensure(p.hyps.is_empty() && p.goal == Formula::One, "not |- 1")
        }
        Rule::TopR => {
            arity(0)?;
            ensure(p.goal == Formula::Top, "goal is not top")
        }
        Rule::ZeroL => {
            arity(0)?;
            ensure(p.hyps.contains(&Formula::Zero), "no 0 among the hypotheses")
        }
        Rule::OneL => {
            arity(1)?;
            ensure(*principal()? == Formula::One, "principal is not 1")?;
            same_goal(prem(0))?;
            hyps_are(prem(0), &rest()?)
        }
        Rule::TensorL => {
            arity(1)?;
            let Formula::Tensor(a, b) = principal()? else { return Err("principal is not a tensor".into()) };
            same_goal(prem(0))?;
            hyps_are(prem(0), &plus(&rest()?, &[a, b]))
        }
        Rule::TensorR => {
            arity(2)?;
            let Formula::Tensor(a, b) = &p.goal else { return Err("goal is not a tensor".into()) };
            ensure(alpha_eq(&prem(0).goal, a) && alpha_eq(&prem(1).goal, b), "premise goals are not the components")?;
            ensure(same_multiset(&plus(&prem(0).hyps, &prem(1).hyps.iter().collect::<Vec<_>>()), &p.hyps), "contexts do not split the conclusion")
        }
        Rule::LolliR => {
            arity(1)?;
            let Formula::Lolli(a, b) = &p.goal else { return Err("goal is not a linear implication".into()) };
            ensure(alpha_eq(&prem(0).goal, b), "premise goal is not the consequent")?;
            hyps_are(prem(0), &plus(&p.hyps, &[a]))
        }
        Rule::LolliL => {
            arity(2)?;
            let Formula::Lolli(a, b) = principal()? else { return Err("principal is not a linear implication".into()) };
            ensure(alpha_eq(&prem(0).goal, a), "left premise does not prove the antecedent")?;
            same_goal(prem(1))?;
            let right = remove(&prem(1).hyps, b).ok_or("right premise lacks the consequent")?;
            ensure(same_multiset(&plus(&prem(0).hyps, &right.iter().collect::<Vec<_>>()), &rest()?), "contexts do not split the conclusion")
        }
        Rule::WithL1 | Rule::WithL2 => {
            arity(1)?;
            let Formula::With(a, b) = principal()? else { return Err("principal is not a with".into()) };
            let pick = if p.rule == Rule::WithL1 { a } else { b };
            same_goal(prem(0))?;
            hyps_are(prem(0), &plus(&rest()?, &[pick]))
        }
        Rule::WithR => {
            arity(2)?;
            let Formula::With(a, b) = &p.goal else { return Err("goal is not a with".into()) };
            ensure(alpha_eq(&prem(0).goal, a) && alpha_eq(&prem(1).goal, b), "premise goals are not the components")?;
            hyps_are(prem(0), &p.hyps)?;
            hyps_are(prem(1), &p.hyps)
        }
        Rule::PlusL => {
            arity(2)?;
            let Formula::Plus(a, b) = principal()? else { return Err("principal is not a plus".into()) };
            same_goal(prem(0))?;
            same_goal(prem(1))?;
            let r = rest()?;
            hyps_are(prem(0), &plus(&r, &[a]))?;
            hyps_are(prem(1), &plus(&r, &[b]))
        }
        Rule::PlusR1 | Rule::PlusR2 => {
            arity(1)?;
            let Formula::Plus(a, b) = &p.goal else { return Err("goal is not a plus".into()) };
            let pick = if p.rule == Rule::PlusR1 { a } else { b };
            ensure(alpha_eq(&prem(0).goal, pick), "premise goal is not the chosen disjunct")?;
            hyps_are(prem(0), &p.hyps)
        }
        Rule::ForallL => {
            arity(1)?;
            let Formula::Forall(x, body) = principal()? else { return Err("principal is not universal".into()) };
            let t = p.term.as_ref().ok_or("missing instantiation term")?;
            same_goal(prem(0))?;
            hyps_are(prem(0), &plus(&rest()?, &[&substitute(body, x, t)]))
        }
        Rule::ExistsR => {
            arity(1)?;
            let Formula::Exists(x, body) = &p.goal else { return Err("goal is not existential".into()) };
            let t = p.term.as_ref().ok_or("missing witness term")?;
            ensure(alpha_eq(&prem(0).goal, &substitute(body, x, t)), "premise goal is not the instance")?;
            hyps_are(prem(0), &p.hyps)
        }
        Rule::ForallR => {
            arity(1)?;
            let Formula::Forall(x, body) = &p.goal else { return Err("goal is not universal".into()) };
            let Some(Term::Var(y)) = &p.term else { return Err("missing eigenvariable".into()) };
            ensure(!sequent_free_vars(&p.hyps, &p.goal).contains(y), "eigenvariable occurs free in the conclusion")?;
            ensure(alpha_eq(&prem(0).goal, &substitute(body, x, &Term::Var(y.clone()))), "premise goal is not the eigen-instance")?;
            hyps_are(prem(0), &p.hyps)
        }
        Rule::ExistsL => {
            arity(1)?;
            let Formula::Exists(x, body) = principal()? else { return Err("principal is not existential".into()) };
            let Some(Term::Var(y)) = &p.term else { return Err("missing eigenvariable".into()) };
            ensure(!sequent_free_vars(&p.hyps, &p.goal).contains(y), "eigenvariable occurs free in the conclusion")?;
            same_goal(prem(0))?;
            hyps_are(prem(0), &plus(&rest()?, &[&substitute(body, x, &Term::Var(y.clone()))]))
        }
        Rule::Con => {
            arity(1)?;
            let f = principal()?;
            ensure(matches!(f, Formula::Bang(_)), "contracted formula is not banged")?;
            rest()?;
            same_goal(prem(0))?;
            hyps_are(prem(0), &plus(&p.hyps, &[f]))
        }
        Rule::Wkn => {
            arity(1)?;
            ensure(matches!(principal()?, Formula::Bang(_)), "weakened formula is not banged")?;
            same_goal(prem(0))?;
            hyps_are(prem(0), &rest()?)
        }
        Rule::BangL => {
            arity(1)?;
            let Formula::Bang(a) = principal()? else { return Err("principal is not banged".into()) };
            same_goal(prem(0))?;
            hyps_are(prem(0), &plus(&rest()?, &[a]))
        }
        Rule::BangR => {
            arity(1)?;
            let Formula::Bang(a) = &p.goal else { return Err("goal is not banged".into()) };
            ensure(p.hyps.iter().all(|h| matches!(h, Formula::Bang(_))), "context is not all banged")?;
            ensure(alpha_eq(&prem(0).goal, a), "premise goal is not the body")?;
            hyps_are(prem(0), &p.hyps)
        }
        Rule::Pro => {
            arity(1)?;
            ensure(th.pro, "promotion axiom not in this theory")?;
            let Formula::Bang(a) = &p.goal else { return Err("goal is not banged".into()) };
            ensure(alpha_eq(&prem(0).goal, a), "premise goal is not the body")?;
            hyps_are(prem(0), &p.hyps)
        }
        Rule::ProL => {
            arity(1)?;
            ensure(th.pro, "promotion axiom not in this theory")?;
            let f = principal()?;
            same_goal(prem(0))?;
            hyps_are(prem(0), &plus(&rest()?, &[&Formula::bang(f.clone())]))
        }
        Rule::DneR => {
            arity(1)?;
            ensure(th.dne, "double negation elimination not in this theory")?;
            ensure(alpha_eq(&prem(0).goal, &neg(neg(p.goal.clone()))), "premise goal is not the double negation")?;
            hyps_are(prem(0), &p.hyps)
        }
        Rule::DneL => {
            arity(1)?;
            ensure(th.dne, "double negation elimination not in this theory")?;
            let f = principal()?;
            let inner = f.as_dneg().ok_or("principal is not a double negation")?;
            same_goal(prem(0))?;
            hyps_are(prem(0), &plus(&rest()?, &[inner]))
        }
        Rule::Cut => {
            arity(2)?;
            let c = principal()?;
            ensure(alpha_eq(&prem(0).goal, c), "left premise does not prove the cut formula")?;
            same_goal(prem(1))?;
            let right = remove(&prem(1).hyps, c).ok_or("right premise lacks the cut formula")?;
            ensure(same_multiset(&plus(&prem(0).hyps, &right.iter().collect::<Vec<_>>()), &p.hyps), "contexts do not split the conclusion")
        }
        Rule::Axiom => {
            // Either the axiom itself, or its use on a sub-multiset of the
            // hypotheses: from `D, C |- E` infer `D, G |- E` for axiom `G |- C`.
            let ok = axioms.iter().any(|ax| match n {
                0 => same_multiset(&ax.hyps, &p.hyps) && alpha_eq(&ax.goal, &p.goal),
                1 => {
                    let q = prem(0);
                    alpha_eq(&q.goal, &p.goal)
                        && remove_all(&p.hyps, &ax.hyps)
                            .is_some_and(|d| same_multiset(&q.hyps, &plus(&d, &[&ax.goal])))
                }
                _ => false,
            });
            ensure(ok, "not an instance of any supplied axiom")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(rule: Rule, hyps: Vec<Formula>, goal: Formula) -> Proof {
        Proof { rule, hyps, goal, principal: None, term: None, premises: vec![] }
    }

    #[test]
    fn rejects_bad_identity() {
        let p = Formula::atom("P");
        let q = Formula::atom("Q");
        assert!(replay(&leaf(Rule::Id, vec![p.clone()], p.clone()), Theory::ILL, &[]).is_ok());
        assert!(replay(&leaf(Rule::Id, vec![p.clone()], q.clone()), Theory::ILL, &[]).is_err());
        assert!(replay(&leaf(Rule::Id, vec![p.clone(), q], p), Theory::ILL, &[]).is_err());
    }

    #[test]
    fn rejects_theory_rules_outside_their_theory() {
        let p = Formula::atom("P");
        let id = leaf(Rule::Id, vec![p.clone()], p.clone());
        let pro = Proof {
            rule: Rule::Pro,
            hyps: vec![p.clone()],
            goal: Formula::bang(p.clone()),
            principal: None,
            term: None,
            premises: vec![id],
        };
        assert!(replay(&pro, Theory::IL_B, &[]).is_ok());
        assert!(replay(&pro, Theory::ILL, &[]).is_err());
    }

    #[test]
    fn rejects_bad_split() {
        let p = Formula::atom("P");
        let id = leaf(Rule::Id, vec![p.clone()], p.clone());
        let bad = Proof {
            rule: Rule::TensorR,
            hyps: vec![p.clone()],
            goal: Formula::tensor(p.clone(), p.clone()),
            principal: None,
            term: None,
            premises: vec![id.clone(), id],
        };
        assert!(replay(&bad, Theory::ILL, &[]).is_err());
    }

    #[test]
    fn eigenvariable_condition() {
        let px = Formula::pred("P", vec![Term::var("x")]);
        let id = leaf(Rule::Id, vec![px.clone()], px.clone());
        let bad = Proof {
            rule: Rule::ForallR,
            hyps: vec![px.clone()],
            goal: Formula::forall("x", px),
            principal: None,
            term: Some(Term::var("x")),
            premises: vec![id],
        };
        assert!(replay(&bad, Theory::ILL, &[]).is_err());
    }
}
