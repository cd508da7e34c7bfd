//! C interface to `genarc`.
//!
//! Fields and planes are opaque handles created with `*_new` and released
//! with `*_free`. Every fallible call returns a [`GenarcStatus`] and writes
//! its result through an out-pointer; out-pointers are left untouched on
//! error unless stated otherwise. Points are plane indices.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use genarc::arcs::certificate::SearchMode;
use genarc::arcs::{is_complete, is_valid, ArcKind};
use genarc::bounds;
use genarc::gf::{FieldError, FieldSpec};
use genarc::plane::{Plane, PlaneError, ProjPoint};
use genarc::search::{self, SearchConfig, SearchError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenarcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrimePower = 3,
    TooLarge = 4,
    Parse = 5,
    BufferTooSmall = 6,
    /// The search stopped on its node budget; the outcome holds what was found.
    BudgetExhausted = 7,
    Panic = 100,
}

#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenarcKind {
    Arc = 0,
    Veronesian = 1,
    Generalized = 2,
}

#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenarcMode {
    MinComplete = 0,
    Max = 1,
}

/// Closed-form lower bounds for one q. Entries that do not apply are 0.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenarcBounds {
    pub ball_sqrt2: u32,
    pub ball_sqrt3: u32,
    pub t_prop: u32,
    pub ceil_t0: u32,
    pub ceil_t1: u32,
    pub ceil_t2: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenarcSearchOutcome {
    /// 0 when no answer was found.
    pub answer: u32,
    pub exhaustive: bool,
    pub nodes: u64,
}

/// A finite field GF(p^r).
pub struct GenarcField {
    inner: FieldSpec,
}

/// The projective plane PG(2,q).
pub struct GenarcPlane {
    inner: Plane,
}

fn guarded(f: impl FnOnce() -> GenarcStatus) -> GenarcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(GenarcStatus::Panic)
}

fn field_status(e: &FieldError) -> GenarcStatus {
    match e {
        FieldError::NotPrime(_) => GenarcStatus::NotPrimePower,
        FieldError::TooLarge { .. } => GenarcStatus::TooLarge,
        FieldError::Parse(_) => GenarcStatus::Parse,
        _ => GenarcStatus::InvalidArgument,
    }
}

fn plane_status(e: &PlaneError) -> GenarcStatus {
    match e {
        PlaneError::Field(f) => field_status(f),
        PlaneError::TooLarge(_) => GenarcStatus::TooLarge,
        PlaneError::Parse(_) => GenarcStatus::Parse,
        _ => GenarcStatus::InvalidArgument,
    }
}

fn kind_of(kind: u32) -> Option<ArcKind> {
    match kind {
        0 => Some(ArcKind::Arc),
        1 => Some(ArcKind::Veronesian),
        2 => Some(ArcKind::Generalized),
        _ => None,
    }
}

unsafe fn point_slice(plane: &Plane, points: *const u32, len: usize) -> Result<Vec<ProjPoint>, GenarcStatus> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if points.is_null() {
        return Err(GenarcStatus::NullPointer);
    }
    let idx = std::slice::from_raw_parts(points, len);
    let mut out = Vec::with_capacity(len);
    for &i in idx {
        out.push(plane.checked_point(i).map_err(|_| GenarcStatus::InvalidArgument)?);
    }
    out.sort();
    out.dedup();
    if out.len() != len {
        return Err(GenarcStatus::InvalidArgument);
    }
    Ok(out)
}

/// Static, NUL-terminated description of a status code; unknown codes get
/// a generic message.
#[no_mangle]
pub extern "C" fn genarc_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"invalid argument",
        3 => c"not a prime power",
        4 => c"order exceeds the supported cap",
        5 => c"cannot parse input",
        6 => c"buffer too small",
        7 => c"search budget exhausted",
        100 => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Creates GF(p^r). `modulus` holds r+1 coefficients, constant term first,
/// or is NULL for the default modulus.
///
/// # Safety
/// `modulus` must point to `modulus_len` readable values when non-NULL and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_field_new(
    p: u32,
    r: u32,
    modulus: *const u32,
    modulus_len: usize,
    out: *mut *mut GenarcField,
) -> GenarcStatus {
    guarded(|| {
        if out.is_null() {
            return GenarcStatus::NullPointer;
        }
        let m = if modulus.is_null() {
            None
        } else {
            Some(std::slice::from_raw_parts(modulus, modulus_len).to_vec())
        };
        match FieldSpec::new(p, r, m) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(GenarcField { inner }));
                GenarcStatus::Ok
            }
            Err(e) => field_status(&e),
        }
    })
}

/// Creates the field of order q with the default modulus.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_field_of_order(q: u32, out: *mut *mut GenarcField) -> GenarcStatus {
    guarded(|| {
        if out.is_null() {
            return GenarcStatus::NullPointer;
        }
        if genarc::gf::prime_power(q).is_none() {
            return GenarcStatus::NotPrimePower;
        }
        match FieldSpec::of_order(q) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(GenarcField { inner }));
                GenarcStatus::Ok
            }
            Err(e) => field_status(&e),
        }
    })
}

/// # Safety
/// `field` must come from `genarc_field_new` or `genarc_field_of_order` and
/// not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn genarc_field_free(field: *mut GenarcField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be a live handle; returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn genarc_field_order(field: *const GenarcField) -> u32 {
    field.as_ref().map_or(0, |f| f.inner.q())
}

/// Canonical encoding of the primitive element.
///
/// # Safety
/// `field` must be a live handle; returns 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn genarc_field_alpha(field: *const GenarcField) -> u32 {
    field.as_ref().map_or(0, |f| f.inner.alpha().value())
}

unsafe fn binary_op(
    field: *const GenarcField,
    a: u32,
    b: u32,
    out: *mut u32,
    op: fn(&FieldSpec, genarc::gf::FieldElement, genarc::gf::FieldElement) -> Result<genarc::gf::FieldElement, FieldError>,
) -> GenarcStatus {
    guarded(|| {
        let (Some(f), false) = (field.as_ref(), out.is_null()) else {
            return GenarcStatus::NullPointer;
        };
        let f = &f.inner;
        let r = f.element(a).and_then(|a| f.element(b).and_then(|b| op(f, a, b)));
        match r {
            Ok(v) => {
                *out = v.value();
                GenarcStatus::Ok
            }
            Err(FieldError::InverseOfZero) => GenarcStatus::InvalidArgument,
            Err(e) => field_status(&e),
        }
    })
}

/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_field_add(field: *const GenarcField, a: u32, b: u32, out: *mut u32) -> GenarcStatus {
    binary_op(field, a, b, out, |f, a, b| Ok(f.add(a, b)))
}

/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_field_mul(field: *const GenarcField, a: u32, b: u32, out: *mut u32) -> GenarcStatus {
    binary_op(field, a, b, out, |f, a, b| Ok(f.mul(a, b)))
}

/// Computes a / b; dividing by zero is `InvalidArgument`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_field_div(field: *const GenarcField, a: u32, b: u32, out: *mut u32) -> GenarcStatus {
    binary_op(field, a, b, out, |f, a, b| f.div(a, b))
}

/// Builds PG(2,q) over a copy of `field`; the field handle stays owned by
/// the caller.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_plane_new(field: *const GenarcField, out: *mut *mut GenarcPlane) -> GenarcStatus {
    guarded(|| {
        let (Some(f), false) = (field.as_ref(), out.is_null()) else {
            return GenarcStatus::NullPointer;
        };
        match Plane::new(f.inner.clone()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(GenarcPlane { inner }));
                GenarcStatus::Ok
            }
            Err(e) => plane_status(&e),
        }
    })
}

/// # Safety
/// `plane` must come from `genarc_plane_new` and not be used afterwards.
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn genarc_plane_free(plane: *mut GenarcPlane) {
    if !plane.is_null() {
        drop(Box::from_raw(plane));
    }
}

/// Number of points, q^2+q+1; 0 for NULL.
///
/// # Safety
/// `plane` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn genarc_plane_size(plane: *const GenarcPlane) -> u32 {
    plane.as_ref().map_or(0, |p| p.inner.size() as u32)
}

/// Parses "[a:b:c]" into a point index.
///
/// # Safety
/// `text` must be a NUL-terminated string, `plane` a live handle and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_plane_parse_point(
    plane: *const GenarcPlane,
    text: *const c_char,
    out: *mut u32,
) -> GenarcStatus {
    guarded(|| {
        let (Some(p), false, false) = (plane.as_ref(), text.is_null(), out.is_null()) else {
            return GenarcStatus::NullPointer;
        };
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return GenarcStatus::Parse;
        };
        match p.inner.parse_point(s) {
            Ok(pt) => {
                *out = pt.index;
                GenarcStatus::Ok
            }
            Err(e) => plane_status(&e),
        }
    })
}

/// Writes the canonical "[a:b:c]" text of a point, NUL-terminated. The
/// needed length without the NUL is stored in `out_len` even when the buffer
/// is too small.
///
/// # Safety
/// `buf` must have `cap` writable bytes (it may be NULL when `cap` is 0),
/// `plane` must be a live handle and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_plane_format_point(
    plane: *const GenarcPlane,
    index: u32,
    buf: *mut c_char,
    cap: usize,
    out_len: *mut usize,
) -> GenarcStatus {
    guarded(|| {
        let (Some(p), false) = (plane.as_ref(), out_len.is_null()) else {
            return GenarcStatus::NullPointer;
        };
        let Ok(pt) = p.inner.checked_point(index) else {
            return GenarcStatus::InvalidArgument;
        };
        let text = p.inner.format_point(&pt);
        *out_len = text.len();
        if cap < text.len() + 1 {
            return GenarcStatus::BufferTooSmall;
        }
        if buf.is_null() {
            return GenarcStatus::NullPointer;
        }
        std::ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
        *buf.add(text.len()) = 0;
        GenarcStatus::Ok
    })
}

/// Index of the line through two distinct points.
///
/// # Safety
/// `plane` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_plane_join(plane: *const GenarcPlane, a: u32, b: u32, out: *mut u32) -> GenarcStatus {
    guarded(|| {
        let (Some(p), false) = (plane.as_ref(), out.is_null()) else {
            return GenarcStatus::NullPointer;
        };
        let p = &p.inner;
        match (p.checked_point(a), p.checked_point(b)) {
            (Ok(x), Ok(y)) if a != b => match p.line_through(&x, &y) {
                Ok(l) => {
                    *out = l.index;
                    GenarcStatus::Ok
                }
                Err(e) => plane_status(&e),
            },
            _ => GenarcStatus::InvalidArgument,
        }
    })
}

/// Whether the points form a valid set of `kind` (a `GenarcKind` value).
///
/// # Safety
/// `points` must hold `len` readable indices, `plane` must be a live handle
/// and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_arc_is_valid(
    plane: *const GenarcPlane,
    points: *const u32,
    len: usize,
    kind: u32,
    out: *mut bool,
) -> GenarcStatus {
    guarded(|| {
        let (Some(p), false) = (plane.as_ref(), out.is_null()) else {
            return GenarcStatus::NullPointer;
        };
        let Some(kind) = kind_of(kind) else {
            return GenarcStatus::InvalidArgument;
        };
        match point_slice(&p.inner, points, len) {
            Ok(s) => {
                *out = is_valid(&p.inner, &s, kind);
                GenarcStatus::Ok
            }
            Err(st) => st,
        }
    })
}

/// Whether a valid set of `kind` is complete. An invalid set gives
/// `InvalidArgument`.
///
/// # Safety
/// As for `genarc_arc_is_valid`.
#[no_mangle]
pub unsafe extern "C" fn genarc_arc_is_complete(
    plane: *const GenarcPlane,
    points: *const u32,
    len: usize,
    kind: u32,
    out: *mut bool,
) -> GenarcStatus {
    guarded(|| {
        let (Some(p), false) = (plane.as_ref(), out.is_null()) else {
            return GenarcStatus::NullPointer;
        };
        let Some(kind) = kind_of(kind) else {
            return GenarcStatus::InvalidArgument;
        };
        let s = match point_slice(&p.inner, points, len) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match is_complete(&p.inner, &s, kind) {
            Ok(c) => {
                *out = c;
                GenarcStatus::Ok
            }
            Err(_) => GenarcStatus::InvalidArgument,
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_bounds(q: u32, out: *mut GenarcBounds) -> GenarcStatus {
    guarded(|| {
        if out.is_null() {
            return GenarcStatus::NullPointer;
        }
        if genarc::gf::prime_power(q).is_none() {
            return GenarcStatus::NotPrimePower;
        }
        let Ok((b2, b3)) = bounds::lower_t_ball(q) else {
            return GenarcStatus::InvalidArgument;
        };
        let g = bounds::lower_tg(q).ok();
        *out = GenarcBounds {
            ball_sqrt2: b2,
            ball_sqrt3: b3.unwrap_or(0),
            t_prop: bounds::lower_t_prop(q),
            ceil_t0: bounds::lower_tv(q).unwrap_or(0),
            ceil_t1: g.map_or(0, |g| g.ceil_t1),
            ceil_t2: g.map_or(0, |g| g.ceil_t2),
        };
        GenarcStatus::Ok
    })
}

/// Runs a frame-fixed search. `node_budget` and `time_budget_ms` of 0 mean
/// unlimited. On `BudgetExhausted` the outcome is still written.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn genarc_search(
    q: u32,
    kind: u32,
    mode: u32,
    workers: u32,
    node_budget: u64,
    time_budget_ms: u64,
    out: *mut GenarcSearchOutcome,
) -> GenarcStatus {
    guarded(|| {
        if out.is_null() {
            return GenarcStatus::NullPointer;
        }
        let Some(kind) = kind_of(kind) else {
            return GenarcStatus::InvalidArgument;
        };
        let mode = match mode {
            0 => SearchMode::MinComplete,
            1 => SearchMode::Max,
            _ => return GenarcStatus::InvalidArgument,
        };
        let mut cfg = SearchConfig::new(q, kind, mode).workers(workers.max(1) as usize);
        cfg.node_budget = (node_budget > 0).then_some(node_budget);
        cfg.time_budget = (time_budget_ms > 0).then(|| Duration::from_millis(time_budget_ms));
        match search::run(&cfg) {
            Ok(r) => {
                *out = GenarcSearchOutcome {
                    answer: r.answer.unwrap_or(0) as u32,
                    exhaustive: r.exhaustive,
                    nodes: r.nodes_explored,
                };
                if r.exhaustive {
                    GenarcStatus::Ok
                } else {
                    GenarcStatus::BudgetExhausted
                }
            }
            Err(SearchError::NotPrimePower(_)) => GenarcStatus::NotPrimePower,
            Err(SearchError::TooLarge { .. }) => GenarcStatus::TooLarge,
            Err(SearchError::Plane(e)) => plane_status(&e),
            Err(_) => GenarcStatus::InvalidArgument,
        }
    })
}
