//! C interface to `crossedcoh`.
//!
//! Objects cross the boundary as opaque handles created from JSON documents
//! and released with the matching `*_free`. Every call returns a
//! [`CcohStatus`]; on failure [`ccoh_last_error`] describes what went wrong.
//! Panics are caught at the boundary and reported as `CCOH_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crossedcoh::braided::h1_abelian_with;
use crossedcoh::cochain::DEFAULT_BUDGET;
use crossedcoh::crossed::{Braiding, CrossedModule};
use crossedcoh::hyper::{cr1, h1_pointed_with};
use crossedcoh::io::{parse_document, Document};
use crossedcoh::modules::{mod_h1_with, GammaModule};
use crossedcoh::scenario::{run_scenario, ScenarioOptions};
use crossedcoh::Error;

/// Result code of every `ccoh_*` call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcohStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Schema = 3,
    InvalidInput = 4,
    BoundExceeded = 5,
    NotACocycle = 6,
    StructureFailure = 7,
    UnknownScenario = 8,
    BufferTooSmall = 9,
    WrongKind = 10,
    Panic = 11,
}

/// A crossed module, possibly with a braiding.
pub struct CcohCrossedModule {
    cm: CrossedModule,
    braiding: Option<Braiding>,
}

/// A finitely generated Γ-module.
pub struct CcohModule {
    module: GammaModule,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CcohStatus {
    match e {
        Error::Schema { .. } => CcohStatus::Schema,
        Error::BoundExceeded { .. } => CcohStatus::BoundExceeded,
        Error::NotACocycle(_) => CcohStatus::NotACocycle,
        Error::StructureFailure(_) | Error::NonNormalImage(_) | Error::ExactnessFailure { .. } => {
            CcohStatus::StructureFailure
        }
        Error::UnknownScenario(_) => CcohStatus::UnknownScenario,
        _ => CcohStatus::InvalidInput,
    }
}

struct Fail(CcohStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CcohStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CcohStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CcohStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CcohStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(CcohStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

fn budget(b: u64) -> u128 {
    if b == 0 {
        DEFAULT_BUDGET
    } else {
        u128::from(b)
    }
}

/// Copies `values` into a caller buffer of `cap` entries. `len` always
/// receives the full length, so a too-small buffer can be resized.
unsafe fn fill(values: &[u64], buf: *mut u64, cap: usize, len: *mut usize) -> Result<(), Fail> {
    *out(len, "len")? = values.len();
    if values.len() > cap {
        return Err(Fail(
            CcohStatus::BufferTooSmall,
            format!("{} values do not fit in {cap}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Message for the most recent failed call on this thread; empty after a
/// success. Valid until the next `ccoh_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ccoh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ccoh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a crossed-module document (bare or wrapped in a fixture).
///
/// # Safety
/// `json` must be a NUL-terminated string and `handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccoh_crossed_module_from_json(
    json: *const c_char,
    handle: *mut *mut CcohCrossedModule,
) -> CcohStatus {
    guard(|| {
        let slot = out(handle, "handle")?;
        *slot = ptr::null_mut();
        match parse_document(text(json, "json")?)?.1 {
            Document::CrossedModule(cm, braiding) => {
                *slot = Box::into_raw(Box::new(CcohCrossedModule { cm, braiding }));
                Ok(())
            }
            _ => Err(Fail(
                CcohStatus::WrongKind,
                "document is not a crossed module".into(),
            )),
        }
    })
}

/// # Safety
/// `handle` must come from [`ccoh_crossed_module_from_json`] and not have
/// been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ccoh_crossed_module_free(handle: *mut CcohCrossedModule) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of classes of the pointed `H¹`. A `budget` of 0 means the default.
///
/// # Safety
/// `handle` must be a live handle and `count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccoh_h1_class_count(
    handle: *const CcohCrossedModule,
    budget_nodes: u64,
    count: *mut usize,
) -> CcohStatus {
    guard(|| {
        let h = handle.as_ref().ok_or_else(|| null("handle"))?;
        let n = h1_pointed_with(&h.cm, budget(budget_nodes))?.len();
        *out(count, "count")? = n;
        Ok(())
    })
}

/// Invariant factors of `H¹` as an abelian group; needs a braiding.
///
/// # Safety
/// `handle` must be live, `buf` must hold `cap` values, `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ccoh_h1_abelian_invariants(
    handle: *const CcohCrossedModule,
    budget_nodes: u64,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> CcohStatus {
    guard(|| {
        let h = handle.as_ref().ok_or_else(|| null("handle"))?;
        let b = h.braiding.as_ref().ok_or_else(|| {
            Fail(
                CcohStatus::WrongKind,
                "crossed module has no braiding".into(),
            )
        })?;
        let ab = h1_abelian_with(b, budget(budget_nodes))?;
        fill(&ab.invariant_factors, buf, cap, len)
    })
}

/// Class of `cr¹(ψ)` in the pointed `H¹`. `distinguished` receives the
/// index of the trivial class, which need not be 0.
///
/// # Safety
/// `psi` must point to `psi_len` indices; `class_index` and `distinguished`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn ccoh_cr1(
    handle: *const CcohCrossedModule,
    psi: *const usize,
    psi_len: usize,
    budget_nodes: u64,
    class_index: *mut usize,
    distinguished: *mut usize,
) -> CcohStatus {
    guard(|| {
        let h = handle.as_ref().ok_or_else(|| null("handle"))?;
        if psi.is_null() && psi_len > 0 {
            return Err(null("psi"));
        }
        let psi: &[usize] = if psi_len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(psi, psi_len)
        };
        let h1 = h1_pointed_with(&h.cm, budget(budget_nodes))?;
        let c = cr1(&h.cm, &h1, psi)?;
        *out(class_index, "class_index")? = c;
        *out(distinguished, "distinguished")? = h1.distinguished();
        Ok(())
    })
}

/// Parses a Γ-module document (bare or wrapped in a fixture).
///
/// # Safety
/// `json` must be a NUL-terminated string and `handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccoh_module_from_json(
    json: *const c_char,
    handle: *mut *mut CcohModule,
) -> CcohStatus {
    guard(|| {
        let slot = out(handle, "handle")?;
        *slot = ptr::null_mut();
        match parse_document(text(json, "json")?)?.1 {
            Document::Module(module) => {
                *slot = Box::into_raw(Box::new(CcohModule { module }));
                Ok(())
            }
            _ => Err(Fail(
                CcohStatus::WrongKind,
                "document is not a module".into(),
            )),
        }
    })
}

/// # Safety
/// `handle` must come from [`ccoh_module_from_json`] and not have been
/// freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ccoh_module_free(handle: *mut CcohModule) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Invariant factors of `H¹(Γ, M)`.
///
/// # Safety
/// `handle` must be live, `buf` must hold `cap` values, `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ccoh_module_h1_invariants(
    handle: *const CcohModule,
    budget_nodes: u64,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> CcohStatus {
    guard(|| {
        let h = handle.as_ref().ok_or_else(|| null("handle"))?;
        let h1 = mod_h1_with(&h.module, budget(budget_nodes))?;
        fill(h1.invariant_factors(), buf, cap, len)
    })
}

/// Runs a named scenario. `report` receives its JSON report, to be released
/// with [`ccoh_string_free`]; `passed` whether every expectation held.
/// Zero `n`, `random` or `budget_nodes` select the defaults.
///
/// # Safety
/// `name` must be a NUL-terminated string; `report` and `passed` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ccoh_scenario_run(
    name: *const c_char,
    n: usize,
    seed: u64,
    random: usize,
    budget_nodes: u64,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> CcohStatus {
    guard(|| {
        let slot = out(report, "report")?;
        *slot = ptr::null_mut();
        let d = ScenarioOptions::default();
        let opts = ScenarioOptions {
            n: if n == 0 { d.n } else { n },
            seed,
            random: if random == 0 { d.random } else { random },
            budget: budget(budget_nodes),
        };
        let r = run_scenario(text(name, "name")?, &opts)?;
        *out(passed, "passed")? = r.passed;
        *slot = CString::new(r.to_json())
            .map_err(|e| Fail(CcohStatus::InvalidInput, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ccoh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
