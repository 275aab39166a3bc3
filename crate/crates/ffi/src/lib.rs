//! C ABI over the `plausible` core.
//!
//! Fallible functions return a [`PlausibleStatus`]. On failure a message is
//! available from [`plausible_last_error`] until the next call on the same
//! thread. Strings handed out through `char **` parameters belong to the
//! caller and are released with [`plausible_string_free`]. Handles are
//! released with their own `_free` function; passing NULL to any `_free`
//! function is a no-op.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use plausible::formula::{Dialect, Formula};
use plausible::proof::{check_proof_with, verdict_report, CheckOptions, Proof};
use plausible::search::{find_countermodel, ModelClass, SearchBounds, SearchError, SearchReport, SearchVerdict};
use plausible::semantics::{Model, ModelFile};

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlausibleStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An argument was out of range or unrecognised.
    InvalidArgument = 3,
    /// Formula syntax error.
    Parse = 4,
    /// The formula uses operators the operation does not accept.
    Dialect = 5,
    /// Malformed or ill-formed model file.
    Model = 6,
    /// Evaluation failed, for example a world out of range.
    Eval = 7,
    /// Malformed proof file or structurally broken proof.
    Proof = 8,
    /// The search bounds were rejected.
    Search = 9,
    /// A Rust panic was caught at the boundary. This is a bug.
    Panic = 10,
}

/// Opaque parsed formula.
pub struct PlausibleFormula(Formula);

/// Opaque model: neighborhood, Kripke or universal.
pub struct PlausibleModel(ModelFile);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (PlausibleStatus, String);

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("NULs removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `body`, recording its error and catching panics.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PlausibleStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(None);
            PlausibleStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal panic".into()));
            PlausibleStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    (PlausibleStatus::NullArgument, format!("`{name}` is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (PlausibleStatus::InvalidUtf8, format!("`{name}`: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// The message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn plausible_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn plausible_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plausible_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` into a new formula handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plausible_formula_parse(
    text: *const c_char,
    out: *mut *mut PlausibleFormula,
) -> PlausibleStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let f: Formula = text.parse().map_err(|e| (PlausibleStatus::Parse, format!("{e}")))?;
        write_out(out, Box::into_raw(Box::new(PlausibleFormula(f))), "out")
    })
}

/// Writes the canonical rendering of `f` to `*out`.
///
/// # Safety
/// `f` must be a live formula handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plausible_formula_render(
    f: *const PlausibleFormula,
    out: *mut *mut c_char,
) -> PlausibleStatus {
    guard(|| {
        let f = ref_arg(f, "f")?;
        write_out(out, owned_string(f.0.to_string()), "out")
    })
}

/// Writes the formula's dialect name (`Classical`, `S5`, `NablaSystem` or
/// `BoxSystem`) to `*out` as a static string. Mixing box and nabla fails with
/// [`PlausibleStatus::Dialect`].
///
/// # Safety
/// `f` must be a live formula handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plausible_formula_dialect(
    f: *const PlausibleFormula,
    out: *mut *const c_char,
) -> PlausibleStatus {
    guard(|| {
        let f = ref_arg(f, "f")?;
        let d = Dialect::of(&f.0).map_err(|e| (PlausibleStatus::Dialect, e.to_string()))?;
        let name: &'static CStr = match d {
            Dialect::Classical => c"Classical",
            Dialect::S5 => c"S5",
            Dialect::NablaSystem => c"NablaSystem",
            Dialect::BoxSystem => c"BoxSystem",
        };
        write_out(out, name.as_ptr(), "out")
    })
}

/// Modal nesting depth of `f`, or 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn plausible_formula_modal_depth(f: *const PlausibleFormula) -> usize {
    f.as_ref().map_or(0, |f| f.0.modal_depth())
}

/// # Safety
/// `f` must be NULL or a formula handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plausible_formula_free(f: *mut PlausibleFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Reads a model file (neighborhood, Kripke or universal) from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plausible_model_from_json(
    json: *const c_char,
    out: *mut *mut PlausibleModel,
) -> PlausibleStatus {
    guard(|| {
        let json = str_arg(json, "json")?;
        let m = ModelFile::from_json(json).map_err(|e| (PlausibleStatus::Model, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(PlausibleModel(m))), "out")
    })
}

/// Writes the model's canonical JSON to `*out`.
///
/// # Safety
/// `m` must be a live model handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plausible_model_to_json(m: *const PlausibleModel, out: *mut *mut c_char) -> PlausibleStatus {
    guard(|| {
        let m = ref_arg(m, "m")?;
        write_out(out, owned_string(m.0.to_json()), "out")
    })
}

/// Number of worlds, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live model handle.
#[no_mangle]
pub unsafe extern "C" fn plausible_model_worlds(m: *const PlausibleModel) -> usize {
    m.as_ref().map_or(0, |m| match &m.0 {
        ModelFile::Neighborhood(m) => m.world_count(),
        ModelFile::Kripke(m) => m.world_count(),
        ModelFile::Universal(m) => m.world_count(),
    })
}

/// Evaluates `f` at `world` and writes the truth value to `*out`.
///
/// # Safety
/// `m` and `f` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn plausible_model_eval(
    m: *const PlausibleModel,
    world: usize,
    f: *const PlausibleFormula,
    out: *mut bool,
) -> PlausibleStatus {
    guard(|| {
        let m = ref_arg(m, "m")?;
        let f = ref_arg(f, "f")?;
        let value = match &m.0 {
            ModelFile::Neighborhood(m) => m.eval(world, &f.0),
            ModelFile::Kripke(m) => m.eval(world, &f.0),
            ModelFile::Universal(m) => m.eval(world, &f.0),
        }
        .map_err(|e| (PlausibleStatus::Eval, e.to_string()))?;
        write_out(out, value, "out")
    })
}

/// # Safety
/// `m` must be NULL or a model handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn plausible_model_free(m: *mut PlausibleModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Checks a proof given as JSON text. A rejected proof is not an error: the
/// call returns [`PlausibleStatus::Ok`] with `*accepted` false. `report` may
/// be NULL; otherwise it receives the verdict as JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string, `accepted` a writable pointer and
/// `report` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn plausible_check_proof(
    json: *const c_char,
    s5_primitive_re: bool,
    accepted: *mut bool,
    report: *mut *mut c_char,
) -> PlausibleStatus {
    guard(|| {
        let json = str_arg(json, "json")?;
        if accepted.is_null() {
            return Err(null("accepted"));
        }
        let proof = Proof::from_json(json).map_err(|e| (PlausibleStatus::Proof, e.to_string()))?;
        let verdict = check_proof_with(&proof, CheckOptions { s5_primitive_re })
            .map_err(|e| (PlausibleStatus::Proof, e.to_string()))?;
        accepted.write(verdict.is_accepted());
        if !report.is_null() {
            report.write(owned_string(verdict_report(&proof, &verdict).to_string()));
        }
        Ok(())
    })
}

/// Bounded countermodel search for `f` over `class` (`raw`, `constrained`,
/// `kripke-equiv`, `kripke` or `universal`) with up to `max_worlds` worlds,
/// varying the formula's own atoms. `*found` tells whether a countermodel
/// was found; `report` may be NULL, otherwise it receives the search report
/// as JSON. Finding nothing is not a validity claim.
///
/// # Safety
/// `f` must be a live formula handle, `class` a NUL-terminated string,
/// `found` writable and `report` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn plausible_find_countermodel(
    f: *const PlausibleFormula,
    class: *const c_char,
    max_worlds: usize,
    found: *mut bool,
    report: *mut *mut c_char,
) -> PlausibleStatus {
    guard(|| {
        let f = ref_arg(f, "f")?;
        let class: ModelClass = str_arg(class, "class")?
            .parse()
            .map_err(|e| (PlausibleStatus::InvalidArgument, e))?;
        if found.is_null() {
            return Err(null("found"));
        }
        let bounds = SearchBounds::new(class, max_worlds, f.0.atoms());
        let outcome = find_countermodel(&f.0, &bounds).map_err(|e| {
            let status = match e {
                SearchError::Dialect { .. } => PlausibleStatus::Dialect,
                _ => PlausibleStatus::Search,
            };
            (status, e.to_string())
        })?;
        found.write(matches!(outcome.verdict, SearchVerdict::CountermodelFound { .. }));
        if !report.is_null() {
            let r = SearchReport {
                formula: &f.0,
                premises: &[],
                bounds: &bounds,
                outcome: &outcome,
                sampling: None,
            };
            report.write(owned_string(r.to_json()));
        }
        Ok(())
    })
}
