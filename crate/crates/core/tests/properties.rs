use std::collections::HashMap;

use proptest::prelude::*;

use lintrans::formula::{alpha_eq, atom_names, dneg, free_vars, neg, quest, size, Formula, IlFormula, Term};
use lintrans::gen::{corpus, random_cll, random_il, random_ill, rng, GenConfig};
use lintrans::prover::check::replay;
use lintrans::prover::{check_equiv, prove, Budget, Sequent, Theory};
use lintrans::rewrite::{apply, apply_traced, SimplificationId, Strategy};
use lintrans::selftest::{INSIDE, KOLM_OUTER, OUTSIDE};
use lintrans::syntax::{parse_cll, parse_il, parse_ill, print, print_cll, print_il, AnyFormula};
use lintrans::xlate::{girard_circ, girard_full, kolmogorov, translate, translate_ill, Presentation, TranslationId};

fn formula(seed: u64, depth: usize) -> Formula {
    random_ill(&mut rng(seed), &GenConfig { max_depth: depth, ..GenConfig::default() })
}

fn ill(s: &str) -> Formula {
    parse_ill(s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn round_trip_every_language(seed: u64) {
        let cfg = GenConfig::default();
        let mut g = rng(seed);
        let a = random_ill(&mut g, &cfg);
        prop_assert!(alpha_eq(&a, &parse_ill(&print(&a)).unwrap()));
        let a = random_il(&mut g, &cfg);
        prop_assert!(alpha_eq(&a, &parse_il(&print_il(&a)).unwrap()));
        let a = random_cll(&mut g, &cfg);
        prop_assert!(alpha_eq(&a, &parse_cll(&print_cll(&a)).unwrap()));
    }

    #[test]
    fn alpha_eq_is_an_equivalence(s1: u64, s2: u64) {
        let a = formula(s1, 4);
        let b = parse_ill(&print(&a)).unwrap();
        let c = formula(s2, 4);
        prop_assert!(alpha_eq(&a, &a));
        prop_assert!(alpha_eq(&a, &b) && alpha_eq(&b, &a));
        prop_assert_eq!(alpha_eq(&a, &c), alpha_eq(&c, &a));
        prop_assert_eq!(alpha_eq(&b, &c), alpha_eq(&a, &c));
    }

    #[test]
    fn substituting_a_variable_for_itself(seed: u64) {
        let a = formula(seed, 5);
        for x in ["x", "y", "z"] {
            prop_assert_eq!(a.substitute(x, &Term::var(x)), a.clone());
        }
        let fv = free_vars(&a);
        if !fv.contains("w") {
            prop_assert_eq!(a.substitute("w", &Term::cst("c")), a.clone());
        }
    }

    #[test]
    fn negation_and_why_not_are_abbreviations(seed: u64) {
        let a = formula(seed, 4);
        let p = print(&a);
        prop_assert_eq!(ill(&format!("~({p})")), neg(a.clone()));
        prop_assert_eq!(ill(&format!("({p}) -o 0")), neg(a.clone()));
        prop_assert_eq!(ill(&format!("?({p})")), quest(a.clone()));
        prop_assert_eq!(ill(&format!("~!~({p})")), quest(a));
    }

    #[test]
    fn translations_grow_linearly_and_keep_atoms(seed: u64) {
        let a = formula(seed, 5);
        let n = size(&a);
        for id in TranslationId::ALL.into_iter().filter(|id| id.is_endo()) {
            let b = translate_ill(id, &a).unwrap();
            let c = match id {
                TranslationId::GCirc | TranslationId::GStar | TranslationId::KuCirc | TranslationId::KuStar => 16,
                _ => 7,
            };
            prop_assert!(size(&b) <= c * n, "{}: {} > {} * {}", id.name(), size(&b), c, n);
            prop_assert_eq!(atom_names(&b), atom_names(&a), "{}", id.name());
        }
        let f = translate(TranslationId::Forget, &AnyFormula::Ill(a.clone())).unwrap();
        let AnyFormula::Il(f) = f else { panic!("forget yields IL") };
        prop_assert_eq!(atom_names(&f), atom_names(&a));
    }

    #[test]
    fn embeddings_keep_atoms(seed: u64) {
        let mut g = rng(seed);
        let a: IlFormula = random_il(&mut g, &GenConfig::default());
        let AnyFormula::Ill(b) = translate(TranslationId::Dagger, &AnyFormula::Il(a.clone())).unwrap() else { panic!() };
        prop_assert_eq!(atom_names(&b), atom_names(&a));
        let c = random_cll(&mut g, &GenConfig::default());
        let AnyFormula::Ill(d) = translate(TranslationId::DDagger, &AnyFormula::Cll(c.clone())).unwrap() else { panic!() };
        prop_assert_eq!(atom_names(&d), atom_names(&c));
    }

    #[test]
    fn outer_and_inner_presentations_agree(seed: u64) {
        let a = formula(seed, 5);
        prop_assert_eq!(kolmogorov(&a, Presentation::Outer), kolmogorov(&a, Presentation::Inner));
        prop_assert_eq!(girard_full(&a, Presentation::Outer), girard_full(&a, Presentation::Inner));
    }

    #[test]
    fn circ_of_a_double_negation(seed: u64) {
        let a = formula(seed, 4);
        prop_assert_eq!(girard_circ(&dneg(a.clone()), false), quest(Formula::bang(girard_circ(&a, false))));
    }

    #[test]
    fn rewriting_is_deterministic_and_bounded(seed: u64) {
        let a = formula(seed, 4);
        for id in SimplificationId::ALL {
            let start = translate_ill(id.endpoints().0, &a).unwrap();
            let rules = id.rules();
            for strategy in [Strategy::Outside, Strategy::Inside] {
                let (x, fx) = apply_traced(&start, &rules, strategy);
                let (y, fy) = apply_traced(&start, &rules, strategy);
                prop_assert_eq!(&x, &y);
                prop_assert_eq!(&fx, &fy);
                prop_assert!(fx.len() <= size(&start), "{}: {} firings on {} nodes", id.name(), fx.len(), size(&start));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ill_proofs_replay_in_every_extension(seed: u64) {
        let mut g = rng(seed);
        let cfg = GenConfig { max_depth: 3, vars: 0, ..GenConfig::default() };
        let a = random_ill(&mut g, &cfg);
        let b = random_ill(&mut g, &cfg);
        let s = Sequent::new(vec![Formula::tensor(a.clone(), b.clone())], Formula::tensor(b, a));
        let r = prove(&s, Theory::ILL, &Budget::default().with_timeout(2_000));
        if let Some(p) = r.proof() {
            for th in [Theory::ILL, Theory::IL_B, Theory::CLL_B, Theory::CL_B] {
                prop_assert!(replay(p, th, &[]).is_ok(), "{} in {}", s, th);
            }
        }
    }

    #[test]
    fn gg_and_kuroda_agree_intuitionistically(seed: u64) {
        let cfg = GenConfig { max_depth: 2, atoms: 2, vars: 0, constants: false };
        let a = random_ill(&mut rng(seed), &cfg);
        let p = print(&a);
        prop_assume!(!p.contains('!') && !p.contains('?'));
        let gg = translate_ill(TranslationId::GG, &a).unwrap();
        let ku = translate_ill(TranslationId::Kuroda, &a).unwrap();
        let e = check_equiv(&gg, &ku, Theory::IL_B, &Budget::default().with_timeout(5_000));
        prop_assert!(e.holds(), "{}: {} vs {}", p, print(&gg), print(&ku));
    }
}

#[test]
fn printing_is_injective_up_to_alpha() {
    let mut seen: HashMap<String, Formula> = HashMap::new();
    for a in corpus(5, 3000, &GenConfig { max_depth: 4, ..GenConfig::default() }) {
        let p = print(&a);
        if let Some(b) = seen.get(&p) {
            assert!(alpha_eq(&a, b), "{p} prints two different formulas");
        } else {
            seen.insert(p, a);
        }
    }
}

#[test]
fn bound_variables_can_be_renamed() {
    assert!(alpha_eq(&ill("forall x. P(x)"), &ill("forall y. P(y)")));
    assert!(alpha_eq(&ill("forall x. exists y. R(x, y)"), &ill("forall y. exists x. R(y, x)")));
    assert!(!alpha_eq(&ill("forall x. exists y. R(x, y)"), &ill("forall x. exists y. R(y, x)")));
    assert!(!alpha_eq(&ill("forall x. P(y)"), &ill("forall y. P(y)")));
}

#[test]
fn strategy_order_matters() {
    let id = SimplificationId::GGfromKolmO;
    let k = ill(KOLM_OUTER);
    assert_eq!(print(&apply(&k, &id.rules(), Strategy::Outside)), OUTSIDE);
    assert_eq!(print(&apply(&k, &id.rules(), Strategy::Inside)), INSIDE);
}
