//! C ABI over `greenidx`.
//!
//! Every function returns a `GiStatus`; results go through out-pointers.
//! Handles are opaque and must be released with the matching `*_free`.
//! On failure the message is kept per thread and can be fetched with
//! `gi_last_error_message`.
//!
//! Elements are `size_t` indices `0..order`; the value `order` stands for
//! the adjoined identity wherever `S¹` is accepted. Class index `0` is the
//! extra index `1` of `I¹`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use greenidx::rewrite::{push_right, schreier_generators};
use greenidx::{
    connectors, rees_index, relative_green, ClassId, ConnectorTables, Error, FiniteSemigroup,
    SubSemigroup,
};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotAssociative = 3,
    InvalidElement = 4,
    NotClosed = 5,
    MalformedInput = 6,
    NotGenerating = 7,
    BoundExceeded = 8,
    BufferTooSmall = 9,
    Internal = 10,
    Panic = 11,
}

/// A validated finite semigroup.
pub struct GiSemigroup(FiniteSemigroup);

/// Relative Green data and connector tables for a pair `T ≤ S`.
pub struct GiGreen {
    conn: ConnectorTables,
    rees: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GiStatus {
    match e {
        Error::NotAssociative { .. } => GiStatus::NotAssociative,
        Error::InvalidElement(_) | Error::NotInSubsemigroup(_) => GiStatus::InvalidElement,
        Error::NotClosed { .. } => GiStatus::NotClosed,
        Error::OutOfRange { .. } | Error::NotSquare { .. } | Error::EmptyTable | Error::Input(_) => {
            GiStatus::MalformedInput
        }
        Error::NotGenerating(_) | Error::EmptyGenerators => GiStatus::NotGenerating,
        Error::BoundExceeded(_) | Error::BudgetExceeded(_) | Error::DelayExceeded { .. } => {
            GiStatus::BoundExceeded
        }
        Error::InternalInconsistency(_) => GiStatus::Internal,
        _ => GiStatus::InvalidArgument,
    }
}

struct Fail(GiStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null() -> Fail {
    Fail(GiStatus::NullPointer, "null pointer argument".into())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GiStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("panic inside greenidx".into());
            GiStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null())
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(null)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

fn check_s1(s: &FiniteSemigroup, x: usize) -> Result<(), Fail> {
    if x > s.order() {
        return Err(Error::InvalidElement(x).into());
    }
    Ok(())
}

fn check_class(g: &GiGreen, i: usize) -> Result<ClassId, Fail> {
    if i >= g.conn.green().width() {
        return Err(Fail(GiStatus::InvalidArgument, format!("class index {i} is out of range")));
    }
    Ok(ClassId(i))
}

/// Message of the last failed call on this thread, or NULL. Free with
/// `gi_string_free`.
#[no_mangle]
pub extern "C" fn gi_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn gi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a semigroup from a row-major `order × order` table.
///
/// # Safety
/// `entries` must point to `order * order` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_semigroup_from_table(
    entries: *const usize,
    order: usize,
    out_handle: *mut *mut GiSemigroup,
) -> GiStatus {
    guard(|| {
        let dst = out(out_handle)?;
        let cells = order
            .checked_mul(order)
            .ok_or_else(|| Fail(GiStatus::InvalidArgument, "order too large".into()))?;
        let flat = slice(entries, cells)?;
        let rows: Vec<Vec<usize>> = if order == 0 {
            Vec::new()
        } else {
            flat.chunks(order).map(<[usize]>::to_vec).collect()
        };
        let s = greenidx::validate_table(&rows)?;
        *dst = Box::into_raw(Box::new(GiSemigroup(s)));
        Ok(())
    })
}

/// Builds a semigroup from the JSON file format `{"order", "table", "names"?}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_semigroup_from_json(
    json: *const c_char,
    out_handle: *mut *mut GiSemigroup,
) -> GiStatus {
    guard(|| {
        let dst = out(out_handle)?;
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Fail(GiStatus::MalformedInput, e.to_string()))?;
        let s = greenidx::io::semigroup_from_json(text)?;
        *dst = Box::into_raw(Box::new(GiSemigroup(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gi_semigroup_free(s: *mut GiSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_semigroup_order(s: *const GiSemigroup, out_order: *mut usize) -> GiStatus {
    guard(|| {
        *out(out_order)? = handle(s)?.0.order();
        Ok(())
    })
}

/// Product in `S¹`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_semigroup_mul(
    s: *const GiSemigroup,
    x: usize,
    y: usize,
    out_product: *mut usize,
) -> GiStatus {
    guard(|| {
        let s = &handle(s)?.0;
        check_s1(s, x)?;
        check_s1(s, y)?;
        *out(out_product)? = s.mul1(x, y);
        Ok(())
    })
}

/// Relative Green data for the subsemigroup with the given members.
///
/// # Safety
/// `s` must be a live handle, `members` must point to `len` values, and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_green_new(
    s: *const GiSemigroup,
    members: *const usize,
    len: usize,
    out_handle: *mut *mut GiGreen,
) -> GiStatus {
    guard(|| {
        let dst = out(out_handle)?;
        let s = &handle(s)?.0;
        let t = SubSemigroup::new(s, slice(members, len)?)?;
        let rees = rees_index(s, &t);
        let conn = connectors(&relative_green(s, &t))?;
        *dst = Box::into_raw(Box::new(GiGreen { conn, rees }));
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gi_green_free(g: *mut GiGreen) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of complement classes plus one.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_green_index(g: *const GiGreen, out_index: *mut usize) -> GiStatus {
    guard(|| {
        *out(out_index)? = handle(g)?.conn.green().green_index();
        Ok(())
    })
}

/// Rees index `|S ∖ T|`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_green_rees_index(g: *const GiGreen, out_index: *mut usize) -> GiStatus {
    guard(|| {
        *out(out_index)? = handle(g)?.rees;
        Ok(())
    })
}

/// Class index of `u`: `0` for members of `T¹`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_green_class_of(g: *const GiGreen, u: usize, out_class: *mut usize) -> GiStatus {
    guard(|| {
        let g = handle(g)?;
        let s = g.conn.semigroup();
        check_s1(s, u)?;
        *out(out_class)? = if u == s.order() { 0 } else { g.conn.green().class_of(u).0 };
        Ok(())
    })
}

/// Representative of class `i`; class `0` gives the adjoined identity.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_green_rep(g: *const GiGreen, i: usize, out_rep: *mut usize) -> GiStatus {
    guard(|| {
        let g = handle(g)?;
        let i = check_class(g, i)?;
        *out(out_rep)? = g.conn.green().rep(i);
        Ok(())
    })
}

unsafe fn connector(
    g: *const GiGreen,
    s: usize,
    i: usize,
    out_value: *mut usize,
    f: impl FnOnce(&ConnectorTables, usize, ClassId) -> usize,
) -> GiStatus {
    guard(|| {
        let g = handle(g)?;
        check_s1(g.conn.semigroup(), s)?;
        let i = check_class(g, i)?;
        *out(out_value)? = f(&g.conn, s, i);
        Ok(())
    })
}

/// `ρ(s, i)`: the class index with `s·h_i = h_ρ·σ`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_connector_rho(g: *const GiGreen, s: usize, i: usize, out_value: *mut usize) -> GiStatus {
    connector(g, s, i, out_value, |c, s, i| c.rho(s, i).0)
}

/// `σ(s, i) ∈ T¹`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_connector_sigma(g: *const GiGreen, s: usize, i: usize, out_value: *mut usize) -> GiStatus {
    connector(g, s, i, out_value, |c, s, i| c.sigma(s, i))
}

/// `λ(i, s)`: the class index with `h_i·s = τ·h_λ`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_connector_lambda(g: *const GiGreen, i: usize, s: usize, out_value: *mut usize) -> GiStatus {
    connector(g, s, i, out_value, |c, s, i| c.lambda(i, s).0)
}

/// `τ(i, s) ∈ T¹`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gi_connector_tau(g: *const GiGreen, i: usize, s: usize, out_value: *mut usize) -> GiStatus {
    connector(g, s, i, out_value, |c, s, i| c.tau(i, s))
}

/// Rewrites `h_i·w` as `t₁…tₙ·h_j`. Writes the `n = len` letters `t_k`
/// to `out_word` and `j` to `out_class`.
///
/// # Safety
/// `word` and `out_word` must point to `len` values; `g` must be live.
#[no_mangle]
pub unsafe extern "C" fn gi_push_right(
    g: *const GiGreen,
    i: usize,
    word: *const usize,
    len: usize,
    out_word: *mut usize,
    out_class: *mut usize,
) -> GiStatus {
    guard(|| {
        let g = handle(g)?;
        let i = check_class(g, i)?;
        let w = slice(word, len)?;
        for &x in w {
            check_s1(g.conn.semigroup(), x)?;
        }
        let dst_class = out(out_class)?;
        if len > 0 && out_word.is_null() {
            return Err(null());
        }
        let trace = push_right(&g.conn, i, w);
        if len > 0 {
            std::slice::from_raw_parts_mut(out_word, len).copy_from_slice(&trace.output);
        }
        *dst_class = trace.output_class.0;
        Ok(())
    })
}

/// Generating set of `T` obtained from the generating set `gens` of `S`.
/// The count is always written to `out_len`; when it exceeds `capacity`
/// nothing else is written and `GI_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `gens` must point to `len` values, `buf` to `capacity` writable values.
#[no_mangle]
pub unsafe extern "C" fn gi_schreier_generators(
    g: *const GiGreen,
    gens: *const usize,
    len: usize,
    buf: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> GiStatus {
    guard(|| {
        let g = handle(g)?;
        let a = slice(gens, len)?;
        let dst_len = out(out_len)?;
        let sg = schreier_generators(&g.conn, a)?;
        let b = sg.generators();
        *dst_len = b.len();
        if b.len() > capacity {
            return Err(Fail(
                GiStatus::BufferTooSmall,
                format!("{} generators, buffer holds {capacity}", b.len()),
            ));
        }
        if !b.is_empty() {
            if buf.is_null() {
                return Err(null());
            }
            std::slice::from_raw_parts_mut(buf, b.len()).copy_from_slice(b);
        }
        Ok(())
    })
}
