//! Translations between the three languages and the negative / Girard
//! translations inside the linear language.
//!
//! The constants `top`, `0` and `1` are decorated exactly like atoms in
//! every translation: outer forms put the decoration on them, cores leave
//! them alone.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{dneg, quest, CllFormula, Formula, IlFormula};
use crate::syntax::{AnyFormula, Lang};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TranslationId {
    Dagger,
    DDagger,
    Forget,
    KolmOuter,
    KolmInner,
    GG,
    Kuroda,
    LinGG,
    LinKuroda,
    GirardFullOuter,
    GirardFullInner,
    Star,
    Circ,
    GCirc,
    GStar,
    KuCirc,
    KuStar,
}

impl TranslationId {
    pub const ALL: [TranslationId; 17] = [
        TranslationId::Dagger,
        TranslationId::DDagger,
        TranslationId::Forget,
        TranslationId::KolmOuter,
        TranslationId::KolmInner,
        TranslationId::GG,
        TranslationId::Kuroda,
        TranslationId::LinGG,
        TranslationId::LinKuroda,
        TranslationId::GirardFullOuter,
        TranslationId::GirardFullInner,
        TranslationId::Star,
        TranslationId::Circ,
        TranslationId::GCirc,
        TranslationId::GStar,
        TranslationId::KuCirc,
        TranslationId::KuStar,
    ];

    pub fn name(self) -> &'static str {
        use TranslationId::*;
        match self {
            Dagger => "dagger",
            DDagger => "ddagger",
            Forget => "forget",
            KolmOuter => "kolm-outer",
            KolmInner => "kolm-inner",
            GG => "gg",
            Kuroda => "kuroda",
            LinGG => "lgg",
            LinKuroda => "lkuroda",
            GirardFullOuter => "gf-outer",
            GirardFullInner => "gf-inner",
            Star => "star",
            Circ => "circ",
            GCirc => "g-circ",
            GStar => "g-star",
            KuCirc => "ku-circ",
            KuStar => "ku-star",
        }
    }

    pub fn source(self) -> Lang {
        match self {
            TranslationId::Dagger => Lang::Il,
            TranslationId::DDagger => Lang::Cll,
            _ => Lang::Ill,
        }
    }

    pub fn target(self) -> Lang {
        match self {
            TranslationId::Forget => Lang::Il,
            _ => Lang::Ill,
        }
    }

    pub fn is_endo(self) -> bool {
        self.source() == Lang::Ill && self.target() == Lang::Ill
    }
}

impl fmt::Display for TranslationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TranslationId {
    type Err = XlateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TranslationId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| XlateError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XlateError {
    #[error("translation `{id}` expects {expected} input, got {got}")]
    LanguageMismatch {
        id: TranslationId,
        expected: &'static str,
        got: &'static str,
    },
    #[error("unknown translation `{0}`")]
    UnknownId(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    Outer,
    Inner,
}

/// The four composed translations with a direct modular presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Composed {
    GCirc,
    GStar,
    KuCirc,
    KuStar,
}

impl Composed {
    pub const ALL: [Composed; 4] = [Composed::GCirc, Composed::GStar, Composed::KuCirc, Composed::KuStar];

    /// The two translations whose composition this is, first applied first.
    pub fn parts(self) -> (TranslationId, TranslationId) {
        use TranslationId::*;
        match self {
            Composed::GCirc => (GG, Circ),
            Composed::GStar => (GG, Star),
            Composed::KuCirc => (Kuroda, Circ),
            Composed::KuStar => (Kuroda, Star),
        }
    }

    pub fn id(self) -> TranslationId {
        match self {
            Composed::GCirc => TranslationId::GCirc,
            Composed::GStar => TranslationId::GStar,
            Composed::KuCirc => TranslationId::KuCirc,
            Composed::KuStar => TranslationId::KuStar,
        }
    }
}

// ------------------------------------------------------- cross-language

pub fn embed_il(a: &IlFormula) -> Formula {
    use IlFormula::*;
    match a {
        Atom(p, args) => Formula::Atom(p.clone(), args.clone()),
        Bot => Formula::Zero,
        Top => Formula::Top,
        And(a, b) => Formula::with(embed_il(a), embed_il(b)),
        Or(a, b) => Formula::plus(embed_il(a), embed_il(b)),
        Imp(a, b) => Formula::lolli(embed_il(a), embed_il(b)),
        Forall(x, a) => Formula::Forall(x.clone(), Box::new(embed_il(a))),
        Exists(x, a) => Formula::Exists(x.clone(), Box::new(embed_il(a))),
    }
}

pub fn embed_cll(a: &CllFormula) -> Formula {
    use crate::formula::neg;
    use CllFormula::*;
    match a {
        Atom(p, args) => Formula::Atom(p.clone(), args.clone()),
        Top => Formula::Top,
        Zero | Bot => Formula::Zero,
        One => Formula::One,
        Tensor(a, b) => Formula::tensor(embed_cll(a), embed_cll(b)),
        With(a, b) => Formula::with(embed_cll(a), embed_cll(b)),
        Plus(a, b) => Formula::plus(embed_cll(a), embed_cll(b)),
        Lolli(a, b) => Formula::lolli(embed_cll(a), embed_cll(b)),
        Par(a, b) => neg(Formula::tensor(neg(embed_cll(a)), neg(embed_cll(b)))),
        Bang(a) => Formula::bang(embed_cll(a)),
        Quest(a) => neg(Formula::bang(neg(embed_cll(a)))),
        Forall(x, a) => Formula::Forall(x.clone(), Box::new(embed_cll(a))),
        Exists(x, a) => Formula::Exists(x.clone(), Box::new(embed_cll(a))),
    }
}

pub fn forget(a: &Formula) -> IlFormula {
    use Formula::*;
    match a {
        Atom(p, args) => IlFormula::Atom(p.clone(), args.clone()),
        Top | One => IlFormula::Top,
        Zero => IlFormula::Bot,
        Tensor(a, b) | With(a, b) => IlFormula::and(forget(a), forget(b)),
        Plus(a, b) => IlFormula::or(forget(a), forget(b)),
        Lolli(a, b) => IlFormula::imp(forget(a), forget(b)),
        Bang(a) => forget(a),
        Forall(x, a) => IlFormula::Forall(x.clone(), Box::new(forget(a))),
        Exists(x, a) => IlFormula::Exists(x.clone(), Box::new(forget(a))),
    }
}

// ------------------------------------------------------------- helpers

fn bin(a: &Formula, l: Formula, r: Formula) -> Formula {
    match a {
        Formula::Tensor(..) => Formula::tensor(l, r),
        Formula::With(..) => Formula::with(l, r),
        Formula::Plus(..) => Formula::plus(l, r),
        Formula::Lolli(..) => Formula::lolli(l, r),
        _ => unreachable!("not a binary connective"),
    }
}

fn quant(a: &Formula, x: &str, body: Formula) -> Formula {
    match a {
        Formula::Forall(..) => Formula::forall(x, body),
        Formula::Exists(..) => Formula::exists(x, body),
        _ => unreachable!("not a quantifier"),
    }
}

fn bang(a: Formula) -> Formula {
    Formula::bang(a)
}

/// Rebuilds `a` with `f` applied to each immediate subformula.
fn map_children(a: &Formula, f: &impl Fn(&Formula) -> Formula) -> Formula {
    use Formula::*;
    match a {
        Atom(..) | Top | Zero | One => a.clone(),
        Tensor(l, r) | With(l, r) | Plus(l, r) | Lolli(l, r) => bin(a, f(l), f(r)),
        Bang(b) => bang(f(b)),
        Forall(x, b) | Exists(x, b) => quant(a, x, f(b)),
    }
}

/// Full outer decoration: `t` around every subformula, atoms included.
fn full_outer(a: &Formula, t: &impl Fn(Formula) -> Formula) -> Formula {
    t(map_children(a, &|b| full_outer(b, t)))
}

/// Full inner decoration: `t` around the whole formula and around every
/// argument of a connective, quantifier or `!`.
fn full_inner(a: &Formula, t: &impl Fn(Formula) -> Formula) -> Formula {
    fn core(a: &Formula, t: &impl Fn(Formula) -> Formula) -> Formula {
        map_children(a, &|b| t(core(b, t)))
    }
    t(core(a, t))
}

// ------------------------------------------------- negative translations

pub fn kolmogorov(a: &Formula, p: Presentation) -> Formula {
    match p {
        Presentation::Outer => full_outer(a, &dneg),
        Presentation::Inner => full_inner(a, &dneg),
    }
}

pub fn godel_gentzen(a: &Formula) -> Formula {
    use Formula::*;
    match a {
        Atom(..) | Top | Zero | One => dneg(a.clone()),
        Plus(..) | Exists(..) => dneg(map_children(a, &godel_gentzen)),
        _ => map_children(a, &godel_gentzen),
    }
}

pub fn kuroda(a: &Formula) -> Formula {
    fn core(a: &Formula) -> Formula {
        match a {
            Formula::Forall(x, b) => Formula::forall(x, dneg(core(b))),
            _ => map_children(a, &core),
        }
    }
    dneg(core(a))
}

pub fn linear_godel_gentzen(a: &Formula) -> Formula {
    use Formula::*;
    match a {
        Atom(..) | Top | Zero | One => dneg(a.clone()),
        Tensor(..) | Plus(..) | Exists(..) | Bang(..) => dneg(map_children(a, &linear_godel_gentzen)),
        With(..) | Lolli(..) | Forall(..) => map_children(a, &linear_godel_gentzen),
    }
}

pub fn linear_kuroda(a: &Formula) -> Formula {
    fn core(a: &Formula) -> Formula {
        use Formula::*;
        match a {
            With(l, r) => Formula::with(dneg(core(l)), dneg(core(r))),
            Lolli(l, r) => Formula::lolli(core(l), dneg(core(r))),
            Forall(x, b) => Formula::forall(x, dneg(core(b))),
            Bang(b) => bang(dneg(core(b))),
            _ => map_children(a, &core),
        }
    }
    dneg(core(a))
}

// ---------------------------------------------------- Girard translations

pub fn girard_full(a: &Formula, p: Presentation) -> Formula {
    match p {
        Presentation::Outer => full_outer(a, &bang),
        Presentation::Inner => full_inner(a, &bang),
    }
}

pub fn girard_star(a: &Formula) -> Formula {
    use Formula::*;
    match a {
        Atom(..) | Top | Zero | One => bang(a.clone()),
        With(..) | Lolli(..) | Forall(..) => bang(map_children(a, &girard_star)),
        Tensor(..) | Plus(..) | Exists(..) | Bang(..) => map_children(a, &girard_star),
    }
}

/// The core `A_∘`; `with_outer_bang` yields `!A_∘`, the translation proper.
pub fn girard_circ(a: &Formula, with_outer_bang: bool) -> Formula {
    fn core(a: &Formula) -> Formula {
        use Formula::*;
        match a {
            Atom(..) | Top | Zero | One => a.clone(),
            Tensor(l, r) | Plus(l, r) => bin(a, bang(core(l)), bang(core(r))),
            Lolli(l, r) => Formula::lolli(bang(core(l)), core(r)),
            Exists(x, b) => Formula::exists(x, bang(core(b))),
            With(..) | Forall(..) | Bang(..) => map_children(a, &core),
        }
    }
    let c = core(a);
    if with_outer_bang {
        bang(c)
    } else {
        c
    }
}

// --------------------------------------------------- composed translations

/// The direct modular presentations of the four compositions.
pub fn composed(a: &Formula, which: Composed) -> Formula {
    match which {
        Composed::GCirc => bang(g_circ_core(a)),
        Composed::GStar => g_star(a),
        Composed::KuCirc => bang(quest(bang(ku_circ_core(a)))),
        Composed::KuStar => bang(quest(ku_star_core(a))),
    }
}

fn g_circ_core(a: &Formula) -> Formula {
    use Formula::*;
    let c = g_circ_core;
    match a {
        Atom(..) | Top | Zero | One => quest(bang(a.clone())),
        Tensor(l, r) => Formula::tensor(bang(c(l)), bang(c(r))),
        Plus(l, r) => quest(Formula::plus(bang(c(l)), bang(c(r)))),
        Lolli(l, r) => Formula::lolli(bang(c(l)), c(r)),
        Exists(x, b) => quest(Formula::exists(x, bang(c(b)))),
        With(..) | Forall(..) | Bang(..) => map_children(a, &c),
    }
}

fn g_star(a: &Formula) -> Formula {
    use Formula::*;
    match a {
        Atom(..) | Top | Zero | One => bang(quest(bang(a.clone()))),
        Plus(..) | Exists(..) => bang(quest(map_children(a, &g_star))),
        With(..) | Lolli(..) | Forall(..) => bang(map_children(a, &g_star)),
        Tensor(..) | Bang(..) => map_children(a, &g_star),
    }
}

fn ku_circ_core(a: &Formula) -> Formula {
    use Formula::*;
    let c = ku_circ_core;
    match a {
        Atom(..) | Top | Zero | One => a.clone(),
        Tensor(l, r) | With(l, r) | Plus(l, r) => bin(a, bang(c(l)), bang(c(r))),
        Lolli(l, r) => Formula::lolli(bang(c(l)), c(r)),
        Forall(x, b) => Formula::forall(x, quest(bang(c(b)))),
        Exists(x, b) => Formula::exists(x, bang(c(b))),
        Bang(b) => bang(c(b)),
    }
}

fn ku_star_core(a: &Formula) -> Formula {
    use Formula::*;
    let c = ku_star_core;
    match a {
        Atom(..) | Top | Zero | One => bang(a.clone()),
        With(..) | Lolli(..) => bang(map_children(a, &c)),
        Forall(x, b) => bang(Formula::forall(x, quest(c(b)))),
        Tensor(..) | Plus(..) | Exists(..) | Bang(..) => map_children(a, &c),
    }
}

// ------------------------------------------------------------- dispatch

/// Applies an endo-translation of the linear language.
pub fn translate_ill(id: TranslationId, a: &Formula) -> Result<Formula, XlateError> {
    use TranslationId::*;
    Ok(match id {
        KolmOuter => kolmogorov(a, Presentation::Outer),
        KolmInner => kolmogorov(a, Presentation::Inner),
        GG => godel_gentzen(a),
        Kuroda => kuroda(a),
        LinGG => linear_godel_gentzen(a),
        LinKuroda => linear_kuroda(a),
        GirardFullOuter => girard_full(a, Presentation::Outer),
        GirardFullInner => girard_full(a, Presentation::Inner),
        Star => girard_star(a),
        Circ => girard_circ(a, true),
        GCirc => composed(a, Composed::GCirc),
        GStar => composed(a, Composed::GStar),
        KuCirc => composed(a, Composed::KuCirc),
        KuStar => composed(a, Composed::KuStar),
        Dagger | DDagger | Forget => {
            return Err(XlateError::LanguageMismatch {
                id,
                expected: id.source().name(),
                got: Lang::Ill.name(),
            })
        }
    })
}

/// Applies any translation, checking that the input language fits.
pub fn translate(id: TranslationId, a: &AnyFormula) -> Result<AnyFormula, XlateError> {
    if a.lang() != id.source() {
        return Err(XlateError::LanguageMismatch {
            id,
            expected: id.source().name(),
            got: a.lang().name(),
        });
    }
    Ok(match (id, a) {
        (TranslationId::Dagger, AnyFormula::Il(f)) => AnyFormula::Ill(embed_il(f)),
        (TranslationId::DDagger, AnyFormula::Cll(f)) => AnyFormula::Ill(embed_cll(f)),
        (TranslationId::Forget, AnyFormula::Ill(f)) => AnyFormula::Il(forget(f)),
        (_, AnyFormula::Ill(f)) => AnyFormula::Ill(translate_ill(id, f)?),
        _ => unreachable!("language checked above"),
    })
}

/// `second(first(a))`, for two endo-translations of the linear language.
pub fn compose_literal(a: &Formula, first: TranslationId, second: TranslationId) -> Result<Formula, XlateError> {
    for id in [first, second] {
        if !id.is_endo() {
            return Err(XlateError::LanguageMismatch {
                id,
                expected: id.source().name(),
                got: Lang::Ill.name(),
            });
        }
    }
    translate_ill(second, &translate_ill(first, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_cll, parse_il, parse_ill, print};

    fn t(s: &str) -> Formula {
        parse_ill(s).unwrap()
    }

    fn show(f: Formula) -> String {
        print(&f)
    }

    #[test]
    fn dagger_and_forget() {
        assert_eq!(show(embed_il(&parse_il("P /\\ Q").unwrap())), "P & Q");
        assert_eq!(embed_il(&IlFormula::Bot), Formula::Zero);
        assert_eq!(show(embed_il(&parse_il("forall x. P(x) -> Q").unwrap())), "forall x. P(x) -o Q");
        assert_eq!(forget(&t("!P -o Q")), parse_il("P -> Q").unwrap());
        assert_eq!(forget(&t("P * Q")), parse_il("P /\\ Q").unwrap());
    }

    #[test]
    fn ddagger_clauses() {
        assert_eq!(show(embed_cll(&parse_cll("P par Q").unwrap())), "~(~P * ~Q)");
        assert_eq!(show(embed_cll(&parse_cll("?P").unwrap())), "?P");
        assert_eq!(embed_cll(&parse_cll("?P").unwrap()), t("~!~P"));
        assert_eq!(show(embed_cll(&parse_cll("!(P * Q)").unwrap())), "!(P * Q)");
    }

    #[test]
    fn kolmogorov_worked_example() {
        let a = t("(P & Q) * R");
        assert_eq!(show(kolmogorov(&a, Presentation::Outer)), "~~(~~(~~P & ~~Q) * ~~R)");
        assert_eq!(kolmogorov(&a, Presentation::Inner), kolmogorov(&a, Presentation::Outer));
        assert_eq!(show(kolmogorov(&t("P"), Presentation::Inner)), "~~P");
    }

    #[test]
    fn negative_translation_examples() {
        assert_eq!(show(godel_gentzen(&t("(P & Q) * R"))), "(~~P & ~~Q) * ~~R");
        assert_eq!(show(godel_gentzen(&t("exists x. P(x)"))), "~~exists x. ~~P(x)");
        assert_eq!(show(godel_gentzen(&t("!P"))), "!~~P");
        assert_eq!(show(kuroda(&t("forall x. P(x)"))), "~~forall x. ~~P(x)");
        assert_eq!(show(kuroda(&t("P + Q"))), "~~(P + Q)");
        assert_eq!(show(kuroda(&t("!(P -o Q)"))), "~~!(P -o Q)");
        assert_eq!(show(linear_godel_gentzen(&t("P * Q"))), "~~(~~P * ~~Q)");
        assert_eq!(show(linear_godel_gentzen(&t("P & Q"))), "~~P & ~~Q");
        assert_eq!(show(linear_godel_gentzen(&t("!P"))), "~~!~~P");
        assert_eq!(show(linear_kuroda(&t("P -o Q"))), "~~(P -o ~~Q)");
        assert_eq!(show(linear_kuroda(&t("P & Q"))), "~~(~~P & ~~Q)");
        assert_eq!(show(linear_kuroda(&t("P + Q"))), "~~(P + Q)");
    }

    #[test]
    fn girard_examples() {
        assert_eq!(show(girard_full(&t("P -o Q"), Presentation::Outer)), "!(!P -o !Q)");
        assert_eq!(show(girard_full(&t("!P"), Presentation::Outer)), "!!!P");
        assert_eq!(show(girard_full(&t("!P"), Presentation::Inner)), "!!!P");
        assert_eq!(show(girard_star(&t("P"))), "!P");
        assert_eq!(show(girard_star(&t("P -o Q"))), "!(!P -o !Q)");
        assert_eq!(show(girard_star(&t("P + Q"))), "!P + !Q");
        assert_eq!(show(girard_circ(&t("P -o Q"), false)), "!P -o Q");
        assert_eq!(show(girard_circ(&t("exists x. P(x)"), false)), "exists x. !P(x)");
        assert_eq!(show(girard_circ(&t("~~P"), false)), "?!P");
    }

    #[test]
    fn composed_goldens() {
        let p = t("P");
        assert_eq!(show(composed(&p, Composed::GCirc)), "!?!P");
        assert_eq!(show(composed(&p, Composed::GStar)), "!?!P");
        assert_eq!(show(composed(&p, Composed::KuCirc)), "!?!P");
        assert_eq!(show(composed(&p, Composed::KuStar)), "!?!P");
        assert_eq!(show(composed(&t("P + Q"), Composed::KuStar)), "!?(!P + !Q)");
    }

    #[test]
    fn literal_compositions() {
        let p = t("P");
        let gc = compose_literal(&p, TranslationId::GG, TranslationId::Circ).unwrap();
        assert_eq!(show(gc), "!?!P");
        let ks = compose_literal(&p, TranslationId::Kuroda, TranslationId::Star).unwrap();
        assert_eq!(show(ks), "!(!(!P -o !0) -o !0)");
        let err = compose_literal(&p, TranslationId::KolmOuter, TranslationId::Forget).unwrap_err();
        assert!(matches!(err, XlateError::LanguageMismatch { .. }));
    }

    #[test]
    fn ids_round_trip_through_names() {
        for id in TranslationId::ALL {
            assert_eq!(id.name().parse::<TranslationId>().unwrap(), id);
        }
        assert!("glivenko".parse::<TranslationId>().is_err());
    }

    #[test]
    fn translate_checks_language() {
        let il = AnyFormula::Il(parse_il("P").unwrap());
        assert!(translate(TranslationId::GG, &il).is_err());
        assert!(translate(TranslationId::Dagger, &il).is_ok());
    }
}
