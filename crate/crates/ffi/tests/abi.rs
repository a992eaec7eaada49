use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use lintrans_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    lt_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(lt_last_error()).to_str().unwrap().to_string()
}

unsafe fn parse(text: &str, lang: &str) -> *mut LtFormula {
    let mut f = ptr::null_mut();
    assert_eq!(lt_formula_parse(c(text).as_ptr(), c(lang).as_ptr(), &mut f), LtStatus::Ok);
    f
}

#[test]
fn parse_print_translate_simplify() {
    unsafe {
        let f = parse("(P & Q) * R", "ill");
        let mut s = ptr::null_mut();
        assert_eq!(lt_formula_print(f, &mut s), LtStatus::Ok);
        assert_eq!(take(s), "(P & Q) * R");

        let mut k = ptr::null_mut();
        assert_eq!(lt_translate(f, c("kolm-outer").as_ptr(), &mut k), LtStatus::Ok);
        assert_eq!(lt_formula_print(k, &mut s), LtStatus::Ok);
        assert_eq!(take(s), "~~(~~(~~P & ~~Q) * ~~R)");

        let mut g = ptr::null_mut();
        assert_eq!(lt_simplify(k, c("gg-from-kolm").as_ptr(), &mut g), LtStatus::Ok);
        assert_eq!(lt_formula_print(g, &mut s), LtStatus::Ok);
        assert_eq!(take(s), "(~~P & ~~Q) * ~~R");
        assert_eq!(last_error(), "");

        for h in [f, k, g] {
            lt_formula_free(h);
        }
    }
}

#[test]
fn cross_language_translation() {
    unsafe {
        let f = parse("P /\\ Q", "il");
        let mut d = ptr::null_mut();
        assert_eq!(lt_translate(f, c("dagger").as_ptr(), &mut d), LtStatus::Ok);
        let mut s = ptr::null_mut();
        lt_formula_print(d, &mut s);
        assert_eq!(take(s), "P & Q");
        let mut bad = ptr::null_mut();
        assert_eq!(lt_translate(f, c("gg").as_ptr(), &mut bad), LtStatus::LanguageMismatch);
        assert!(bad.is_null());
        assert!(!last_error().is_empty());
        lt_formula_free(f);
        lt_formula_free(d);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(lt_formula_parse(c("P &").as_ptr(), c("ill").as_ptr(), &mut f), LtStatus::ParseError);
        assert!(f.is_null());
        assert!(last_error().contains("byte"));
        assert_eq!(lt_formula_parse(ptr::null(), c("ill").as_ptr(), &mut f), LtStatus::NullPointer);
        assert_eq!(lt_formula_parse(c("P").as_ptr(), c("klingon").as_ptr(), &mut f), LtStatus::UnknownId);
        assert_eq!(lt_formula_parse(c("P").as_ptr(), c("ill").as_ptr(), ptr::null_mut()), LtStatus::NullPointer);
        let bytes = [0xffu8, 0];
        assert_eq!(lt_formula_parse(bytes.as_ptr() as *const c_char, c("ill").as_ptr(), &mut f), LtStatus::InvalidUtf8);
        let p = parse("P", "ill");
        let mut out = ptr::null_mut();
        assert_eq!(lt_translate(p, c("nope").as_ptr(), &mut out), LtStatus::UnknownId);
        assert_eq!(lt_simplify(p, c("nope").as_ptr(), &mut out), LtStatus::UnknownId);
        assert_eq!(lt_translate(ptr::null(), c("gg").as_ptr(), &mut out), LtStatus::NullPointer);
        lt_formula_free(p);
        lt_formula_free(ptr::null_mut());
        lt_string_free(ptr::null_mut());
    }
}

#[test]
fn prove_and_refute() {
    unsafe {
        let mut o = LtProofOutcome::Saturated;
        assert_eq!(lt_prove(c("~~P |- P").as_ptr(), c("cllb").as_ptr(), 0, 0, &mut o), LtStatus::Ok);
        assert_eq!(o, LtProofOutcome::Proved);
        assert_eq!(lt_prove(c("~~P |- P").as_ptr(), c("ill").as_ptr(), 8, 2000, &mut o), LtStatus::Ok);
        assert_ne!(o, LtProofOutcome::Proved);
        assert_eq!(lt_prove(c("|-").as_ptr(), c("ill").as_ptr(), 0, 0, &mut o), LtStatus::ParseError);
        assert_eq!(lt_prove(c("P |- P").as_ptr(), c("xyz").as_ptr(), 0, 0, &mut o), LtStatus::UnknownId);

        let mut m = ptr::null_mut();
        assert_eq!(lt_refute(c("P |- P * P").as_ptr(), c("ill").as_ptr(), 4, 1, &mut m), LtStatus::Ok);
        assert!(!m.is_null());
        assert!(take(m).contains("tensor:"));
        assert_eq!(lt_refute(c("P |- P").as_ptr(), c("ill").as_ptr(), 3, 1, &mut m), LtStatus::Ok);
        assert!(m.is_null());
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut f = ptr::null_mut();
        lt_formula_parse(c("(").as_ptr(), c("ill").as_ptr(), &mut f);
        assert!(!last_error().is_empty());
        let other = std::thread::spawn(|| last_error()).join().unwrap();
        assert_eq!(other, "");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = format!("{dir}/include/lintrans.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["lt_formula_parse", "lt_formula_free", "lt_formula_print", "lt_translate", "lt_simplify", "lt_prove", "lt_refute", "lt_string_free", "lt_last_error", "LT_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let src = std::env::temp_dir().join("lintrans_header_check.c");
    std::fs::write(
        &src,
        "#include \"lintrans.h\"\n\
         int main(void) {\n\
           LtFormula *f = 0; char *s = 0; enum LtProofOutcome o;\n\
           if (lt_formula_parse(\"P * Q\", \"ill\", &f) != LT_STATUS_OK) return 1;\n\
           lt_formula_print(f, &s); lt_string_free(s); lt_formula_free(f);\n\
           lt_prove(\"P |- P\", \"ill\", 0, 0, &o);\n\
           return o == LT_PROOF_OUTCOME_PROVED ? 0 : 2;\n\
         }\n",
    )
    .unwrap();
    let status = match Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", &format!("{dir}/include")]).arg(&src).status() {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler found; header syntax check skipped");
            return;
        }
    };
    assert!(status.success());
}
