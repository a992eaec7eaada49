//! ASCII surface syntax for the three languages.
//!
//! Binding, tightest first: prefix `!`, `?`, `~`; `*`; `&`; `+`; `par`
//! (classical linear only); `-o` (right associative). The intuitionistic
//! language uses `~`, `/\`, `\/`, `->` instead. `forall x.` and `exists x.`
//! extend as far to the right as possible. Constants are `top`, `1`, `0`
//! and `bot`. A `#` starts a comment that runs to the end of the line.
//!
//! Term identifiers are variables when bound by an enclosing quantifier or
//! when they start with one of `u`..`z`; other lowercase identifiers are
//! constants. Predicate names start with an uppercase letter.

use std::fmt;

use thiserror::Error;

use crate::formula::{CllFormula, Formula, IlFormula, Term};

/// Which language a piece of text is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lang {
    Il,
    Cll,
    Ill,
}

impl Lang {
    pub fn name(self) -> &'static str {
        match self {
            Lang::Il => "il",
            Lang::Cll => "cll",
            Lang::Ill => "ill",
        }
    }
}

impl std::str::FromStr for Lang {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "il" | "cl" => Ok(Lang::Il),
            "cll" => Ok(Lang::Cll),
            "ill" => Ok(Lang::Ill),
            other => Err(format!("unknown language `{other}` (expected il, cll or ill)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("byte {offset}: `{token}` is not part of the {lang} language")]
    WrongLanguage {
        offset: usize,
        token: String,
        lang: &'static str,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::WrongLanguage { offset, .. } => *offset,
        }
    }
}

/// Any of the three formula kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyFormula {
    Il(IlFormula),
    Cll(CllFormula),
    Ill(Formula),
}

impl AnyFormula {
    pub fn lang(&self) -> Lang {
        match self {
            AnyFormula::Il(_) => Lang::Il,
            AnyFormula::Cll(_) => Lang::Cll,
            AnyFormula::Ill(_) => Lang::Ill,
        }
    }
}

impl fmt::Display for AnyFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyFormula::Il(a) => f.write_str(&print_il(a)),
            AnyFormula::Cll(a) => f.write_str(&print_cll(a)),
            AnyFormula::Ill(a) => f.write_str(&print(a)),
        }
    }
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Zero,
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Quest,
    Tilde,
    Star,
    Amp,
    Plus,
    Lolli,
    Par,
    And,
    Or,
    Imp,
    Forall,
    Exists,
    Top,
    Bot,
    Turnstile,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Ident(_) => "identifier",
            Tok::One => "1",
            Tok::Zero => "0",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Bang => "!",
            Tok::Quest => "?",
            Tok::Tilde => "~",
            Tok::Star => "*",
            Tok::Amp => "&",
            Tok::Plus => "+",
            Tok::Lolli => "-o",
            Tok::Par => "par",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Imp => "->",
            Tok::Forall => "forall",
            Tok::Exists => "exists",
            Tok::Top => "top",
            Tok::Bot => "bot",
            Tok::Turnstile => "|-",
            Tok::Eof => "",
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < text.len() {
        let c = text[i..].chars().next().unwrap();
        let start = i;
        let single = |t: Tok| (t, c.len_utf8());
        let (tok, len) = match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += c.len_utf8();
                continue;
            }
            '#' => {
                while i < text.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            ',' => single(Tok::Comma),
            '.' => single(Tok::Dot),
            '!' => single(Tok::Bang),
            '?' => single(Tok::Quest),
            '~' | '¬' => single(Tok::Tilde),
            '*' | '⊗' => single(Tok::Star),
            '&' => single(Tok::Amp),
            '+' | '⊕' => single(Tok::Plus),
            '⊸' => single(Tok::Lolli),
            '⅋' => single(Tok::Par),
            '∧' => single(Tok::And),
            '∨' => single(Tok::Or),
            '→' => single(Tok::Imp),
            '∀' => single(Tok::Forall),
            '∃' => single(Tok::Exists),
            '⊤' => single(Tok::Top),
            '⊥' => single(Tok::Bot),
            '⊢' => single(Tok::Turnstile),
            '0' => single(Tok::Zero),
            '1' => single(Tok::One),
            '-' if text[i + 1..].starts_with('o') && !continues_ident(text, i + 2) => (Tok::Lolli, 2),
            '-' if text[i + 1..].starts_with('>') => (Tok::Imp, 2),
            '/' if text[i + 1..].starts_with('\\') => (Tok::And, 2),
            '\\' if text[i + 1..].starts_with('/') => (Tok::Or, 2),
            '|' if text[i + 1..].starts_with('-') => (Tok::Turnstile, 2),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while continues_ident(text, j) {
                    j += 1;
                }
                let word = &text[i..j];
                let tok = match word {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    "par" => Tok::Par,
                    _ => Tok::Ident(word.to_string()),
                };
                (tok, j - i)
            }
            other => {
                return Err(ParseError::Syntax {
                    offset: start,
                    expected: "a formula token".to_string(),
                    found: format!("`{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += len;
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

fn continues_ident(text: &str, j: usize) -> bool {
    text.as_bytes()
        .get(j)
        .is_some_and(|&b| b.is_ascii_alphanumeric() || b == b'_' || b == b'\'')
}

// --------------------------------------------------------------- parser

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BinOp {
    Tensor,
    With,
    Plus,
    Par,
    Lolli,
    And,
    Or,
    Imp,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum UnOp {
    Bang,
    Quest,
    Neg,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Leaf {
    Top,
    Zero,
    One,
    Bot,
}

enum Raw {
    Atom(String, Vec<Term>),
    Leaf(Leaf),
    Un(UnOp, Box<Raw>),
    Bin(BinOp, Box<Raw>, Box<Raw>),
    Quant(bool, String, Box<Raw>),
}

/// Binding strength of infix operators; larger binds tighter.
fn precedence(op: BinOp) -> u8 {
    match op {
        BinOp::Lolli | BinOp::Imp => 1,
        BinOp::Par => 2,
        BinOp::Plus | BinOp::Or => 3,
        BinOp::With => 4,
        BinOp::And => 4,
        BinOp::Tensor => 5,
    }
}

fn right_assoc(op: BinOp) -> bool {
    matches!(op, BinOp::Lolli | BinOp::Imp)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    lang: Lang,
    bound: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{}`", tok.text())))
        }
    }

    fn wrong_language(&self) -> ParseError {
        ParseError::WrongLanguage {
            offset: self.offset(),
            token: self.peek().text().to_string(),
            lang: self.lang.name(),
        }
    }

    fn infix_op(&self) -> Result<Option<BinOp>, ParseError> {
        let op = match self.peek() {
            Tok::Star => BinOp::Tensor,
            Tok::Amp => BinOp::With,
            Tok::Plus => BinOp::Plus,
            Tok::Par => BinOp::Par,
            Tok::Lolli => BinOp::Lolli,
            Tok::And => BinOp::And,
            Tok::Or => BinOp::Or,
            Tok::Imp => BinOp::Imp,
            _ => return Ok(None),
        };
        let allowed = match self.lang {
            Lang::Il => matches!(op, BinOp::And | BinOp::Or | BinOp::Imp),
            Lang::Ill => matches!(op, BinOp::Tensor | BinOp::With | BinOp::Plus | BinOp::Lolli),
            Lang::Cll => !matches!(op, BinOp::And | BinOp::Or | BinOp::Imp),
        };
        if allowed {
            Ok(Some(op))
        } else {
            Err(self.wrong_language())
        }
    }

    /// Precedence climbing over the infix operators.
    fn formula(&mut self, min_prec: u8) -> Result<Raw, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.infix_op()? {
            let p = precedence(op);
            if p < min_prec {
                break;
            }
            self.bump();
            let next_min = if right_assoc(op) { p } else { p + 1 };
            let rhs = self.formula(next_min)?;
            lhs = Raw::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Raw, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                if self.lang == Lang::Il {
                    return Err(self.wrong_language());
                }
                self.bump();
                Ok(Raw::Un(UnOp::Bang, Box::new(self.unary()?)))
            }
            Tok::Quest => {
                if self.lang == Lang::Il {
                    return Err(self.wrong_language());
                }
                self.bump();
                Ok(Raw::Un(UnOp::Quest, Box::new(self.unary()?)))
            }
            Tok::Tilde => {
                self.bump();
                Ok(Raw::Un(UnOp::Neg, Box::new(self.unary()?)))
            }
            Tok::Forall | Tok::Exists => {
                let universal = *self.peek() == Tok::Forall;
                self.bump();
                let var = match self.bump() {
                    Tok::Ident(v) if v.starts_with(|c: char| c.is_ascii_lowercase()) => v,
                    _ => {
                        self.pos -= 1;
                        return Err(self.error("a variable name"));
                    }
                };
                self.expect(Tok::Dot)?;
                self.bound.push(var.clone());
                let body = self.formula(0);
                self.bound.pop();
                Ok(Raw::Quant(universal, var, Box::new(body?)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula(0)?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Top => {
                self.bump();
                Ok(Raw::Leaf(Leaf::Top))
            }
            Tok::Bot => {
                if self.lang == Lang::Ill {
                    return Err(self.wrong_language());
                }
                self.bump();
                Ok(Raw::Leaf(Leaf::Bot))
            }
            Tok::Zero | Tok::One => {
                if self.lang == Lang::Il {
                    return Err(self.wrong_language());
                }
                let leaf = if self.bump() == Tok::Zero { Leaf::Zero } else { Leaf::One };
                Ok(Raw::Leaf(leaf))
            }
            Tok::Ident(name) if name.starts_with(|c: char| c.is_ascii_uppercase()) => {
                self.bump();
                let args = if *self.peek() == Tok::LParen {
                    self.bump();
                    self.term_list()?
                } else {
                    Vec::new()
                };
                Ok(Raw::Atom(name, args))
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if name.starts_with(|c: char| c.is_ascii_lowercase()) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    return Ok(Term::App(name, self.term_list()?));
                }
                if self.bound.contains(&name) || is_variable_name(&name) {
                    Ok(Term::Var(name))
                } else {
                    Ok(Term::Const(name))
                }
            }
            _ => Err(self.error("a term")),
        }
    }
}

/// Free term identifiers starting with `u`..`z` are read as variables.
pub fn is_variable_name(name: &str) -> bool {
    name.starts_with(|c: char| ('u'..='z').contains(&c))
}

fn parse_raw(text: &str, lang: Lang) -> Result<Raw, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, lang, bound: Vec::new() };
    let raw = p.formula(0)?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("an operator or end of input"));
    }
    Ok(raw)
}

fn raw_to_ill(raw: Raw) -> Formula {
    use crate::formula::{neg, quest};
    match raw {
        Raw::Atom(p, args) => Formula::Atom(p, args),
        Raw::Leaf(Leaf::Top) => Formula::Top,
        Raw::Leaf(Leaf::Zero) => Formula::Zero,
        Raw::Leaf(Leaf::One) => Formula::One,
        Raw::Leaf(Leaf::Bot) => unreachable!("rejected by the parser"),
        Raw::Un(UnOp::Bang, a) => Formula::bang(raw_to_ill(*a)),
        Raw::Un(UnOp::Quest, a) => quest(raw_to_ill(*a)),
        Raw::Un(UnOp::Neg, a) => neg(raw_to_ill(*a)),
        Raw::Bin(op, a, b) => {
            let (a, b) = (raw_to_ill(*a), raw_to_ill(*b));
            match op {
                BinOp::Tensor => Formula::tensor(a, b),
                BinOp::With => Formula::with(a, b),
                BinOp::Plus => Formula::plus(a, b),
                BinOp::Lolli => Formula::lolli(a, b),
                _ => unreachable!("rejected by the parser"),
            }
        }
        Raw::Quant(true, x, a) => Formula::Forall(x, Box::new(raw_to_ill(*a))),
        Raw::Quant(false, x, a) => Formula::Exists(x, Box::new(raw_to_ill(*a))),
    }
}

fn raw_to_il(raw: Raw) -> IlFormula {
    match raw {
        Raw::Atom(p, args) => IlFormula::Atom(p, args),
        Raw::Leaf(Leaf::Top) => IlFormula::Top,
        Raw::Leaf(Leaf::Bot) => IlFormula::Bot,
        Raw::Leaf(_) => unreachable!("rejected by the parser"),
        Raw::Un(UnOp::Neg, a) => IlFormula::not(raw_to_il(*a)),
        Raw::Un(..) => unreachable!("rejected by the parser"),
        Raw::Bin(op, a, b) => {
            let (a, b) = (raw_to_il(*a), raw_to_il(*b));
            match op {
                BinOp::And => IlFormula::and(a, b),
                BinOp::Or => IlFormula::or(a, b),
                BinOp::Imp => IlFormula::imp(a, b),
                _ => unreachable!("rejected by the parser"),
            }
        }
        Raw::Quant(true, x, a) => IlFormula::Forall(x, Box::new(raw_to_il(*a))),
        Raw::Quant(false, x, a) => IlFormula::Exists(x, Box::new(raw_to_il(*a))),
    }
}

fn raw_to_cll(raw: Raw) -> CllFormula {
    match raw {
        Raw::Atom(p, args) => CllFormula::Atom(p, args),
        Raw::Leaf(Leaf::Top) => CllFormula::Top,
        Raw::Leaf(Leaf::Zero) => CllFormula::Zero,
        Raw::Leaf(Leaf::One) => CllFormula::One,
        Raw::Leaf(Leaf::Bot) => CllFormula::Bot,
        Raw::Un(UnOp::Bang, a) => CllFormula::bang(raw_to_cll(*a)),
        Raw::Un(UnOp::Quest, a) => CllFormula::quest(raw_to_cll(*a)),
        Raw::Un(UnOp::Neg, a) => CllFormula::lolli(raw_to_cll(*a), CllFormula::Zero),
        Raw::Bin(op, a, b) => {
            let (a, b) = (raw_to_cll(*a), raw_to_cll(*b));
            match op {
                BinOp::Tensor => CllFormula::tensor(a, b),
                BinOp::With => CllFormula::with(a, b),
                BinOp::Plus => CllFormula::plus(a, b),
                BinOp::Par => CllFormula::par(a, b),
                BinOp::Lolli => CllFormula::lolli(a, b),
                _ => unreachable!("rejected by the parser"),
            }
        }
        Raw::Quant(true, x, a) => CllFormula::Forall(x, Box::new(raw_to_cll(*a))),
        Raw::Quant(false, x, a) => CllFormula::Exists(x, Box::new(raw_to_cll(*a))),
    }
}

/// Parses `text` in the requested language.
pub fn parse(text: &str, lang: Lang) -> Result<AnyFormula, ParseError> {
    let raw = parse_raw(text, lang)?;
    Ok(match lang {
        Lang::Ill => AnyFormula::Ill(raw_to_ill(raw)),
        Lang::Il => AnyFormula::Il(raw_to_il(raw)),
        Lang::Cll => AnyFormula::Cll(raw_to_cll(raw)),
    })
}

pub fn parse_ill(text: &str) -> Result<Formula, ParseError> {
    parse_raw(text, Lang::Ill).map(raw_to_ill)
}

pub fn parse_il(text: &str) -> Result<IlFormula, ParseError> {
    parse_raw(text, Lang::Il).map(raw_to_il)
}

pub fn parse_cll(text: &str) -> Result<CllFormula, ParseError> {
    parse_raw(text, Lang::Cll).map(raw_to_cll)
}

/// Parses `A1, ..., An |- C` over the linear language.
pub fn parse_sequent(text: &str) -> Result<(Vec<Formula>, Formula), ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, lang: Lang::Ill, bound: Vec::new() };
    let mut hyps = Vec::new();
    if *p.peek() != Tok::Turnstile {
        loop {
            hyps.push(raw_to_ill(p.formula(0)?));
            match p.peek() {
                Tok::Comma => {
                    p.bump();
                }
                Tok::Turnstile => break,
                _ => return Err(p.error("`,` or `|-`")),
            }
        }
    }
    p.expect(Tok::Turnstile)?;
    let goal = raw_to_ill(p.formula(0)?);
    if *p.peek() != Tok::Eof {
        return Err(p.error("end of input"));
    }
    Ok((hyps, goal))
}

// -------------------------------------------------------------- printer

enum Node<'a> {
    Text(String),
    Prefix(&'static str, PNode<'a>),
    Infix(&'static str, u8, bool, PNode<'a>, PNode<'a>),
    Quant(&'static str, &'a str, PNode<'a>),
}

/// A formula of some language together with how to view it for printing.
enum PNode<'a> {
    Ill(&'a Formula),
    Il(&'a IlFormula),
    Cll(&'a CllFormula),
}

const UNARY_PREC: u8 = 10;

fn atom_text(p: &str, args: &[Term]) -> String {
    if args.is_empty() {
        p.to_string()
    } else {
        let a: Vec<String> = args.iter().map(|t| t.to_string()).collect();
        format!("{p}({})", a.join(", "))
    }
}

impl<'a> PNode<'a> {
    fn node(&self) -> Node<'a> {
        match *self {
            PNode::Ill(f) => {
                use Formula::*;
                // `~!~~A` stays as written so double negations read as such.
                if let Some(a) = f.as_quest().filter(|a| a.as_neg().is_none()) {
                    return Node::Prefix("?", PNode::Ill(a));
                }
                if let Some(a) = f.as_neg() {
                    return Node::Prefix("~", PNode::Ill(a));
                }
                match f {
                    Atom(p, args) => Node::Text(atom_text(p, args)),
                    Top => Node::Text("top".into()),
                    Zero => Node::Text("0".into()),
                    One => Node::Text("1".into()),
                    Tensor(a, b) => Node::Infix("*", 5, false, PNode::Ill(a), PNode::Ill(b)),
                    With(a, b) => Node::Infix("&", 4, false, PNode::Ill(a), PNode::Ill(b)),
                    Plus(a, b) => Node::Infix("+", 3, false, PNode::Ill(a), PNode::Ill(b)),
                    Lolli(a, b) => Node::Infix("-o", 1, true, PNode::Ill(a), PNode::Ill(b)),
                    Bang(a) => Node::Prefix("!", PNode::Ill(a)),
                    Forall(x, a) => Node::Quant("forall", x, PNode::Ill(a)),
                    Exists(x, a) => Node::Quant("exists", x, PNode::Ill(a)),
                }
            }
            PNode::Il(f) => {
                use IlFormula::*;
                match f {
                    Imp(a, b) if **b == Bot => Node::Prefix("~", PNode::Il(a)),
                    Atom(p, args) => Node::Text(atom_text(p, args)),
                    Top => Node::Text("top".into()),
                    Bot => Node::Text("bot".into()),
                    And(a, b) => Node::Infix("/\\", 4, false, PNode::Il(a), PNode::Il(b)),
                    Or(a, b) => Node::Infix("\\/", 3, false, PNode::Il(a), PNode::Il(b)),
                    Imp(a, b) => Node::Infix("->", 1, true, PNode::Il(a), PNode::Il(b)),
                    Forall(x, a) => Node::Quant("forall", x, PNode::Il(a)),
                    Exists(x, a) => Node::Quant("exists", x, PNode::Il(a)),
                }
            }
            PNode::Cll(f) => {
                use CllFormula::*;
                match f {
                    Lolli(a, b) if **b == Zero => Node::Prefix("~", PNode::Cll(a)),
                    Atom(p, args) => Node::Text(atom_text(p, args)),
                    Top => Node::Text("top".into()),
                    Zero => Node::Text("0".into()),
                    One => Node::Text("1".into()),
                    Bot => Node::Text("bot".into()),
                    Tensor(a, b) => Node::Infix("*", 5, false, PNode::Cll(a), PNode::Cll(b)),
                    With(a, b) => Node::Infix("&", 4, false, PNode::Cll(a), PNode::Cll(b)),
                    Plus(a, b) => Node::Infix("+", 3, false, PNode::Cll(a), PNode::Cll(b)),
                    Par(a, b) => Node::Infix("par", 2, false, PNode::Cll(a), PNode::Cll(b)),
                    Lolli(a, b) => Node::Infix("-o", 1, true, PNode::Cll(a), PNode::Cll(b)),
                    Bang(a) => Node::Prefix("!", PNode::Cll(a)),
                    Quest(a) => Node::Prefix("?", PNode::Cll(a)),
                    Forall(x, a) => Node::Quant("forall", x, PNode::Cll(a)),
                    Exists(x, a) => Node::Quant("exists", x, PNode::Cll(a)),
                }
            }
        }
    }
}

/// `open_right` is true when nothing follows this subformula in the output,
/// so a quantifier may extend to the end without parentheses.
fn write_node(n: &PNode<'_>, ctx: u8, open_right: bool, out: &mut String) {
    match n.node() {
        Node::Text(s) => out.push_str(&s),
        Node::Prefix(op, child) => {
            out.push_str(op);
            write_node(&child, UNARY_PREC, open_right, out);
        }
        Node::Infix(op, prec, rassoc, l, r) => {
            let parens = prec < ctx;
            let open = parens || open_right;
            if parens {
                out.push('(');
            }
            write_node(&l, if rassoc { prec + 1 } else { prec }, false, out);
            out.push(' ');
            out.push_str(op);
            out.push(' ');
            write_node(&r, if rassoc { prec } else { prec + 1 }, open, out);
            if parens {
                out.push(')');
            }
        }
        Node::Quant(kw, x, body) => {
            if !open_right {
                out.push('(');
            }
            out.push_str(kw);
            out.push(' ');
            out.push_str(x);
            out.push_str(". ");
            write_node(&body, 0, true, out);
            if !open_right {
                out.push(')');
            }
        }
    }
}

/// Prints a linear formula with minimal parentheses, folding `A -o 0` to
/// `~A` and `~!~A` to `?A` (unless `A` is itself a negation).
pub fn print(f: &Formula) -> String {
    let mut s = String::new();
    write_node(&PNode::Ill(f), 0, true, &mut s);
    s
}

pub fn print_il(f: &IlFormula) -> String {
    let mut s = String::new();
    write_node(&PNode::Il(f), 0, true, &mut s);
    s
}

pub fn print_cll(f: &CllFormula) -> String {
    let mut s = String::new();
    write_node(&PNode::Cll(f), 0, true, &mut s);
    s
}

pub fn print_sequent(hyps: &[Formula], goal: &Formula) -> String {
    let h: Vec<String> = hyps.iter().map(print).collect();
    if h.is_empty() {
        format!("|- {}", print(goal))
    } else {
        format!("{} |- {}", h.join(", "), print(goal))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Display for IlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_il(self))
    }
}

impl fmt::Display for CllFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_cll(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{alpha_eq, neg};

    fn p() -> Formula {
        Formula::atom("P")
    }
    fn q() -> Formula {
        Formula::atom("Q")
    }

    #[test]
    fn bang_binds_tighter_than_lolli() {
        assert_eq!(parse_ill("!P -o Q").unwrap(), Formula::lolli(Formula::bang(p()), q()));
    }

    #[test]
    fn tilde_is_sugar() {
        let f = parse_ill("~~(P * Q)").unwrap();
        assert_eq!(f, neg(neg(Formula::tensor(p(), q()))));
        assert_eq!(print(&f), "~~(P * Q)");
    }

    #[test]
    fn par_is_rejected_in_ill() {
        let err = parse("P par Q", Lang::Ill).unwrap_err();
        assert!(matches!(err, ParseError::WrongLanguage { offset: 2, .. }), "{err:?}");
        assert!(parse("P par Q", Lang::Cll).is_ok());
        assert!(matches!(parse("P * Q", Lang::Il), Err(ParseError::WrongLanguage { .. })));
        assert!(matches!(parse("bot", Lang::Ill), Err(ParseError::WrongLanguage { .. })));
    }

    #[test]
    fn printer_examples() {
        assert_eq!(print(&neg(p())), "~P");
        let f = Formula::tensor(Formula::with(p(), q()), Formula::atom("R"));
        assert_eq!(print(&f), "(P & Q) * R");
        assert_eq!(print(&crate::formula::quest(p())), "?P");
        assert_eq!(print(&Formula::lolli(p(), Formula::lolli(q(), p()))), "P -o Q -o P");
        assert_eq!(print(&Formula::lolli(Formula::lolli(p(), q()), p())), "(P -o Q) -o P");
    }

    #[test]
    fn associativity() {
        let f = parse_ill("P * Q * R").unwrap();
        assert_eq!(f, Formula::tensor(Formula::tensor(p(), q()), Formula::atom("R")));
        let g = parse_ill("P -o Q -o R").unwrap();
        assert_eq!(g, Formula::lolli(p(), Formula::lolli(q(), Formula::atom("R"))));
        assert_eq!(print(&Formula::tensor(p(), Formula::tensor(q(), p()))), "P * (Q * P)");
    }

    #[test]
    fn quantifier_scope_and_parens() {
        let f = parse_ill("forall x. P(x) -o Q").unwrap();
        assert!(matches!(f, Formula::Forall(..)));
        let g = Formula::lolli(Formula::forall("x", Formula::pred("P", vec![Term::var("x")])), q());
        assert_eq!(print(&g), "(forall x. P(x)) -o Q");
        assert_eq!(parse_ill(&print(&g)).unwrap(), g);
        let h = Formula::tensor(q(), Formula::exists("x", Formula::pred("P", vec![Term::var("x")])));
        assert_eq!(print(&h), "Q * exists x. P(x)");
        let k = Formula::lolli(h.clone(), q());
        assert_eq!(print(&k), "Q * (exists x. P(x)) -o Q");
        assert!(alpha_eq(&parse_ill(&print(&k)).unwrap(), &k));
    }

    #[test]
    fn terms_variables_and_constants() {
        let f = parse_ill("forall a. P(a, c, x, f(a))").unwrap();
        let Formula::Forall(_, body) = f else { panic!() };
        let Formula::Atom(_, args) = *body else { panic!() };
        assert_eq!(
            args,
            vec![
                Term::var("a"),
                Term::cst("c"),
                Term::var("x"),
                Term::App("f".into(), vec![Term::var("a")])
            ]
        );
    }

    #[test]
    fn il_and_cll_syntax() {
        let f = parse_il("P /\\ Q -> ~R").unwrap();
        assert_eq!(print_il(&f), "P /\\ Q -> ~R");
        let g = parse_cll("?P par !Q * bot").unwrap();
        assert_eq!(
            g,
            CllFormula::par(
                CllFormula::quest(CllFormula::atom("P")),
                CllFormula::tensor(CllFormula::bang(CllFormula::atom("Q")), CllFormula::Bot)
            )
        );
        assert_eq!(print_cll(&g), "?P par !Q * bot");
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse_ill("P * (Q").unwrap_err();
        assert_eq!(err.offset(), 6);
        let err = parse_ill("P Q").unwrap_err();
        assert_eq!(err.offset(), 2);
        assert!(parse_ill("P $ Q").is_err());
    }

    #[test]
    fn sequents() {
        let (h, g) = parse_sequent("!P, P -o Q |- Q").unwrap();
        assert_eq!(h, vec![Formula::bang(p()), Formula::lolli(p(), q())]);
        assert_eq!(g, q());
        let (h, g) = parse_sequent("|- 1").unwrap();
        assert!(h.is_empty());
        assert_eq!(g, Formula::One);
        assert_eq!(print_sequent(&[p(), q()], &Formula::One), "P, Q |- 1");
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(parse_ill("P # trailing\n").unwrap(), p());
    }
}
