//! C ABI over `lintrans`.
//!
//! Formulas cross the boundary as opaque `LtFormula` handles, strings as
//! NUL-terminated UTF-8. Every function returns an `LtStatus`; on failure
//! `lt_last_error` describes the problem. Strings returned by the library
//! are freed with `lt_string_free`, handles with `lt_formula_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lintrans::models::{refute_sequent, render_algebra, render_valuation};
use lintrans::prover::{prove, Budget, NotFoundReason, ProofResult, Sequent, Theory};
use lintrans::rewrite::{apply, SimplificationId};
use lintrans::syntax::{parse, AnyFormula, Lang};
use lintrans::xlate::{translate, TranslationId};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownId = 4,
    LanguageMismatch = 5,
    Panic = 6,
}

/// What `lt_prove` found.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LtProofOutcome {
    Proved = 0,
    /// The search space was exhausted without hitting a bound.
    Saturated = 1,
    /// A depth, contraction or time bound cut the search short.
    BudgetExhausted = 2,
}

/// Opaque formula handle.
pub struct LtFormula(AnyFormula);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(LtStatus, String);

type Res<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> Res<()>) -> LtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LtStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LtStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(Fail(LtStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(LtStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const LtFormula) -> Res<&'a AnyFormula> {
    p.as_ref().map(|f| &f.0).ok_or_else(|| Fail(LtStatus::NullPointer, "formula handle is null".into()))
}

fn check_out<T>(p: *mut T) -> Res<()> {
    if p.is_null() {
        Err(Fail(LtStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn theory(s: &str) -> Res<Theory> {
    s.parse().map_err(|e| Fail(LtStatus::UnknownId, e))
}

fn sequent(s: &str) -> Res<Sequent> {
    let s = if s.contains("|-") || s.contains('⊢') { s.to_string() } else { format!("|- {s}") };
    Sequent::parse(&s).map_err(|e| Fail(LtStatus::ParseError, e.to_string()))
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn lt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `text` in language `lang` ("il", "cll" or "ill").
///
/// # Safety
/// `text` and `lang` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_formula_parse(text: *const c_char, lang: *const c_char, out: *mut *mut LtFormula) -> LtStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let lang: Lang = self::text(lang, "lang")?.parse().map_err(|e| Fail(LtStatus::UnknownId, e))?;
        let f = parse(self::text(text, "text")?, lang).map_err(|e| Fail(LtStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(LtFormula(f)));
        Ok(())
    })
}

/// Frees a handle; null is ignored.
///
/// # Safety
/// `f` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lt_formula_free(f: *mut LtFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Prints a formula in its language's concrete syntax.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable. Free the result with
/// `lt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lt_formula_print(f: *const LtFormula, out: *mut *mut c_char) -> LtStatus {
    guard(|| {
        check_out(out)?;
        *out = owned(handle(f)?.to_string());
        Ok(())
    })
}

/// Applies translation `id` (for example "gg" or "kolm-outer").
///
/// # Safety
/// `f` must be a live handle, `id` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lt_translate(f: *const LtFormula, id: *const c_char, out: *mut *mut LtFormula) -> LtStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let a = handle(f)?;
        let id: TranslationId = text(id, "id")?.parse().map_err(|e: lintrans::xlate::XlateError| Fail(LtStatus::UnknownId, e.to_string()))?;
        let b = translate(id, a).map_err(|e| Fail(LtStatus::LanguageMismatch, e.to_string()))?;
        *out = Box::into_raw(Box::new(LtFormula(b)));
        Ok(())
    })
}

/// Rewrites a linear formula with rule set `id` under its own strategy.
///
/// # Safety
/// As for `lt_translate`.
#[no_mangle]
pub unsafe extern "C" fn lt_simplify(f: *const LtFormula, id: *const c_char, out: *mut *mut LtFormula) -> LtStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let AnyFormula::Ill(a) = handle(f)? else {
            return Err(Fail(LtStatus::LanguageMismatch, "simplification needs a linear formula".into()));
        };
        let id: SimplificationId = text(id, "id")?.parse().map_err(|e| Fail(LtStatus::UnknownId, e))?;
        *out = Box::into_raw(Box::new(LtFormula(AnyFormula::Ill(apply(a, &id.rules(), id.strategy())))));
        Ok(())
    })
}

/// Searches for a proof of `sequent` ("A, B |- C", or a bare formula) in
/// `theory` ("ill", "ilb", "cllb", "clb"). Zero `max_depth` or `timeout_ms`
/// select the defaults.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_prove(
    sequent: *const c_char,
    theory: *const c_char,
    max_depth: u32,
    timeout_ms: u64,
    out: *mut LtProofOutcome,
) -> LtStatus {
    guard(|| {
        check_out(out)?;
        let s = self::sequent(text(sequent, "sequent")?)?;
        let th = self::theory(text(theory, "theory")?)?;
        let mut b = Budget::default();
        if max_depth > 0 {
            b.max_depth = max_depth;
        }
        if timeout_ms > 0 {
            b.timeout_ms = timeout_ms;
        }
        *out = match prove(&s, th, &b) {
            ProofResult::Proved(_) => LtProofOutcome::Proved,
            ProofResult::NotFound(NotFoundReason::Saturated) => LtProofOutcome::Saturated,
            ProofResult::NotFound(NotFoundReason::BudgetExhausted) => LtProofOutcome::BudgetExhausted,
        };
        Ok(())
    })
}

/// Searches for a finite countermodel. On success `*model` is its text
/// rendering, or null when none exists within the bounds.
///
/// # Safety
/// String arguments must be NUL-terminated; `model` must be writable. Free
/// a non-null result with `lt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lt_refute(
    sequent: *const c_char,
    theory: *const c_char,
    max_size: u32,
    max_domain: u32,
    model: *mut *mut c_char,
) -> LtStatus {
    guard(|| {
        check_out(model)?;
        *model = ptr::null_mut();
        let s = self::sequent(text(sequent, "sequent")?)?;
        let th = self::theory(text(theory, "theory")?)?;
        if let Some(w) = refute_sequent(&s, th, max_size as usize, max_domain as usize) {
            *model = owned(format!("{}{}", render_algebra(&w.algebra), render_valuation(&w.algebra, &w.valuation)));
        }
        Ok(())
    })
}

/// Frees a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
