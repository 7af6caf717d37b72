//! C ABI for the `surgeon` library.
//!
//! Diagrams and surgery presentations are opaque handles created by
//! `surgeon_*` constructors and released with the matching `*_free`.
//! Every fallible call returns a [`SurgeonStatus`]; on failure the message
//! is available from [`surgeon_last_error`] on the same thread. Strings
//! handed out by the library are released with [`surgeon_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use surgeon::diagram::{parse_pd, serialize_pd, DiagramError, LinkDiagram};
use surgeon::surgery::{cable_surgery_reduction, rolfsen_twist, Cable, Slope, SurgeryError, SurgeryPresentation};
use surgeon::{family, invariants};

/// Result of a fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurgeonStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A PD code, slope or cable string could not be parsed.
    Parse = 3,
    /// The input was well formed but the operation does not apply to it.
    Domain = 4,
    /// The library panicked; this is a bug.
    Internal = 5,
}

/// Opaque oriented link diagram.
pub struct SurgeonDiagram(LinkDiagram);

/// Opaque surgery presentation.
pub struct SurgeonPresentation(SurgeryPresentation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SurgeonStatus, String);

impl From<DiagramError> for Failure {
    fn from(e: DiagramError) -> Self {
        let status =
            if matches!(e, DiagramError::Syntax { .. }) { SurgeonStatus::Parse } else { SurgeonStatus::Domain };
        Failure(status, e.to_string())
    }
}

impl From<SurgeryError> for Failure {
    fn from(e: SurgeryError) -> Self {
        let status = match e {
            SurgeryError::ZeroOverZero | SurgeryError::SlopeSyntax(_) | SurgeryError::CableSyntax(_) => {
                SurgeonStatus::Parse
            }
            _ => SurgeonStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

impl From<family::FamilyError> for Failure {
    fn from(e: family::FamilyError) -> Self {
        Failure(SurgeonStatus::Domain, e.to_string())
    }
}

impl From<invariants::InvariantError> for Failure {
    fn from(e: invariants::InvariantError) -> Self {
        Failure(SurgeonStatus::Domain, e.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, records any failure and converts it to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SurgeonStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SurgeonStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            SurgeonStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SurgeonStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `p` is null or points to a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(SurgeonStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or a live handle.
unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or writable.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `out` is null or writable.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(SurgeonStatus::Internal, "string with interior NUL".into()))?;
    put(out, c.into_raw())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn surgeon_version() -> *const c_char {
    concat!("surgeon ", env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn surgeon_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet released.
#[no_mangle]
pub unsafe extern "C" fn surgeon_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a PD code such as `X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]`.
///
/// # Safety
/// `pd` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_diagram_parse_pd(pd: *const c_char, out: *mut *mut SurgeonDiagram) -> SurgeonStatus {
    guard(|| {
        let d = parse_pd(text(pd, "pd")?)?;
        put(out, Box::into_raw(Box::new(SurgeonDiagram(d))))
    })
}

/// Diagram of the family knot `k_n^m`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_family_knot_diagram(m: i64, n: i64, out: *mut *mut SurgeonDiagram) -> SurgeonStatus {
    guard(|| {
        let d = family::knot_diagram(m, n)?;
        put(out, Box::into_raw(Box::new(SurgeonDiagram(d))))
    })
}

/// Releases a diagram. Null is ignored.
///
/// # Safety
/// `d` is null or a live diagram handle.
#[no_mangle]
pub unsafe extern "C" fn surgeon_diagram_free(d: *mut SurgeonDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` is a live diagram handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_diagram_num_components(d: *const SurgeonDiagram, out: *mut usize) -> SurgeonStatus {
    guard(|| put(out, borrow(d, "diagram")?.0.num_components()))
}

/// # Safety
/// `d` is a live diagram handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_diagram_num_crossings(d: *const SurgeonDiagram, out: *mut usize) -> SurgeonStatus {
    guard(|| put(out, borrow(d, "diagram")?.0.num_crossings()))
}

/// Linking number of components `i` and `j` (0-based).
///
/// # Safety
/// `d` is a live diagram handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_diagram_linking_number(
    d: *const SurgeonDiagram,
    i: usize,
    j: usize,
    out: *mut i64,
) -> SurgeonStatus {
    guard(|| put(out, borrow(d, "diagram")?.0.linking_number(i, j)?))
}

/// Canonical PD code; release with [`surgeon_string_free`].
///
/// # Safety
/// `d` is a live diagram handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_diagram_to_pd(d: *const SurgeonDiagram, out: *mut *mut c_char) -> SurgeonStatus {
    guard(|| put_string(out, serialize_pd(&borrow(d, "diagram")?.0)))
}

/// Normalized Alexander polynomial of a knot, e.g. `t - 1 + t^-1`; release
/// with [`surgeon_string_free`].
///
/// # Safety
/// `d` is a live diagram handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_diagram_alexander(d: *const SurgeonDiagram, out: *mut *mut c_char) -> SurgeonStatus {
    guard(|| put_string(out, invariants::alexander_polynomial(&borrow(d, "diagram")?.0)?.to_string()))
}

/// Knot determinant `|Δ(-1)|` in decimal; release with
/// [`surgeon_string_free`].
///
/// # Safety
/// `d` is a live diagram handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_diagram_determinant(d: *const SurgeonDiagram, out: *mut *mut c_char) -> SurgeonStatus {
    guard(|| put_string(out, invariants::determinant(&borrow(d, "diagram")?.0)?.to_string()))
}

/// Surgery presentation on a copy of `d` with comma-separated slopes
/// (`p/q`, `*` unfilled, `1/0` meridional), one per component.
///
/// # Safety
/// `d` is a live diagram handle; `slopes` is a NUL-terminated string; `out`
/// is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_presentation_from_diagram(
    d: *const SurgeonDiagram,
    slopes: *const c_char,
    out: *mut *mut SurgeonPresentation,
) -> SurgeonStatus {
    guard(|| {
        let d = borrow(d, "diagram")?.0.clone();
        let slopes = Slope::parse_list(text(slopes, "slopes")?)?;
        let p = SurgeryPresentation::from_diagram("ffi", d, slopes)?;
        put(out, Box::into_raw(Box::new(SurgeonPresentation(p))))
    })
}

/// The closed manifold obtained by `n`-surgery on `k_n^m`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_family_surgered_presentation(
    m: i64,
    n: i64,
    out: *mut *mut SurgeonPresentation,
) -> SurgeonStatus {
    guard(|| {
        let p = family::surgered_presentation(m, n)?;
        put(out, Box::into_raw(Box::new(SurgeonPresentation(p))))
    })
}

/// Releases a presentation. Null is ignored.
///
/// # Safety
/// `p` is null or a live presentation handle.
#[no_mangle]
pub unsafe extern "C" fn surgeon_presentation_free(p: *mut SurgeonPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// First homology of the surgered manifold, e.g. `Z/2` or `trivial`;
/// release with [`surgeon_string_free`].
///
/// # Safety
/// `p` is a live presentation handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_presentation_first_homology(
    p: *const SurgeonPresentation,
    out: *mut *mut c_char,
) -> SurgeonStatus {
    guard(|| put_string(out, borrow(p, "presentation")?.0.first_homology().to_string()))
}

/// # Safety
/// `p` is a live presentation handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_presentation_is_homology_sphere(
    p: *const SurgeonPresentation,
    out: *mut bool,
) -> SurgeonStatus {
    guard(|| put(out, borrow(p, "presentation")?.0.is_homology_sphere()))
}

/// Rolfsen twist with `t` full twists on component `c`; the result is a
/// new handle.
///
/// # Safety
/// `p` is a live presentation handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_presentation_rolfsen_twist(
    p: *const SurgeonPresentation,
    c: usize,
    t: i64,
    out: *mut *mut SurgeonPresentation,
) -> SurgeonStatus {
    guard(|| {
        let q = rolfsen_twist(&borrow(p, "presentation")?.0, c, t)?;
        put(out, Box::into_raw(Box::new(SurgeonPresentation(q))))
    })
}

/// Presentation as JSON without the diagram; release with
/// [`surgeon_string_free`].
///
/// # Safety
/// `p` is a live presentation handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_presentation_to_json(
    p: *const SurgeonPresentation,
    out: *mut *mut c_char,
) -> SurgeonStatus {
    guard(|| put_string(out, borrow(p, "presentation")?.0.to_json(false).to_string()))
}

/// Slope induced on `k_n^m` by the family's surgery description, as `p/q`;
/// release with [`surgeon_string_free`].
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_family_induced_slope(m: i64, n: i64, out: *mut *mut c_char) -> SurgeonStatus {
    guard(|| put_string(out, family::induced_surgery_slope(m, n)?.to_string()))
}

/// Companion slope for surgery along `slope` on the `(a,b)`-cable; release
/// with [`surgeon_string_free`].
///
/// # Safety
/// `slope` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn surgeon_cable_reduce(
    slope: *const c_char,
    a: i64,
    b: i64,
    out: *mut *mut c_char,
) -> SurgeonStatus {
    guard(|| {
        let s = Slope::parse(text(slope, "slope")?)?;
        put_string(out, cable_surgery_reduction(&s, Cable::new(a, b)?)?.to_string())
    })
}
