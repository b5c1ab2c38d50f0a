//! C ABI over `graphcover`.
//!
//! Graphs and projections are opaque heap handles released with their
//! `_free` function. Every call returns a [`GcStatus`]; on failure
//! `gc_last_error_message` describes the error for the calling thread.
//! Strings returned by the library are released with `gc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use graphcover::analysis::{chromatic_index, has_perfect_matching};
use graphcover::catalog::catalog;
use graphcover::covers::{find_cover, fold_count, verify, CoverProjection, ProjectionKind};
use graphcover::format::{parse_mg, to_mg, write_certificate};
use graphcover::stronger::decide_stronger;
use graphcover::{Error, Multigraph};

/// Opaque graph handle.
pub struct GcGraph(Multigraph);

/// Opaque projection handle; owns copies of both graphs.
pub struct GcProjection(CoverProjection);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidGraph = 3,
    Parse = 4,
    UnknownGraph = 5,
    MalformedProjection = 6,
    Unsupported = 7,
    Precondition = 8,
    CapExceeded = 9,
    Anomaly = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcVerdict {
    NotStronger = 0,
    Stronger = 1,
    Unknown = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GcStatus {
    match e {
        Error::InvalidGraph(_) => GcStatus::InvalidGraph,
        Error::Parse { .. } => GcStatus::Parse,
        Error::UnknownGraph(_) => GcStatus::UnknownGraph,
        Error::MalformedProjection(_) => GcStatus::MalformedProjection,
        Error::Unsupported(_) => GcStatus::Unsupported,
        Error::Precondition(_) => GcStatus::Precondition,
        Error::CapExceeded(_) => GcStatus::CapExceeded,
        Error::Anomaly(_) => GcStatus::Anomaly,
    }
}

/// Failure inside a call, before translation to a status.
enum Fail {
    Null(&'static str),
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GcStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer passed as {what}"));
            GcStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("string argument is not valid UTF-8");
            GcStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            GcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("library text has no NUL").into_raw()
}

/// Message for the last failed call on this thread, or NULL after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `.mg` text into a new graph.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_parse(text: *const c_char, out: *mut *mut GcGraph) -> GcStatus {
    guard(|| {
        let g = parse_mg(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(GcGraph(g))), "out")
    })
}

/// Looks up a catalog graph such as `"Petersen"` or `"W(0,1,1,0,2)"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_catalog(name: *const c_char, out: *mut *mut GcGraph) -> GcStatus {
    guard(|| {
        let g = catalog(read_str(name, "name")?)?.graph;
        write_out(out, Box::into_raw(Box::new(GcGraph(g))), "out")
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_free(g: *mut GcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; the output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_counts(
    g: *const GcGraph,
    vertices: *mut usize,
    edges: *mut usize,
) -> GcStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        write_out(vertices, g.vertex_count(), "vertices")?;
        write_out(edges, g.edge_count(), "edges")
    })
}

/// Serializes to `.mg`; release the result with `gc_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_graph_to_mg(g: *const GcGraph, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        write_out(out, owned_string(to_mg(g)), "out")
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exhaustive search for a (semi-)covering projection `g -> h`. On success
/// `*out` is a new projection, or NULL when none exists.
///
/// # Safety
/// `g` and `h` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_find_cover(
    g: *const GcGraph,
    h: *const GcGraph,
    semi: bool,
    out: *mut *mut GcProjection,
) -> GcStatus {
    guard(|| {
        let (g, h) = (&deref(g, "g")?.0, &deref(h, "h")?.0);
        let kind = if semi {
            ProjectionKind::SemiCover
        } else {
            ProjectionKind::Cover
        };
        let p = find_cover(g, h, kind)?;
        let raw = p.map_or(ptr::null_mut(), |p| {
            Box::into_raw(Box::new(GcProjection(p)))
        });
        write_out(out, raw, "out")
    })
}

/// Checks every covering rule; `*ok` is false if any is violated.
///
/// # Safety
/// `p` must be a live handle and `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_projection_verify(
    p: *const GcProjection,
    semi: bool,
    ok: *mut bool,
) -> GcStatus {
    guard(|| {
        let p = &deref(p, "projection")?.0;
        let kind = if semi {
            ProjectionKind::SemiCover
        } else {
            ProjectionKind::Cover
        };
        write_out(ok, verify(p, kind).is_ok(), "ok")
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_projection_fold(p: *const GcProjection, out: *mut usize) -> GcStatus {
    guard(|| {
        let p = &deref(p, "projection")?.0;
        write_out(out, fold_count(p)?, "out")
    })
}

/// Certificate text (`v src dst` and `e src dst` lines).
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_projection_certificate(
    p: *const GcProjection,
    out: *mut *mut c_char,
) -> GcStatus {
    guard(|| {
        let p = &deref(p, "projection")?.0;
        write_out(out, owned_string(write_certificate(p)), "out")
    })
}

/// # Safety
/// `p` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gc_projection_free(p: *mut GcProjection) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Chromatic index, or -1 when the graph has a loop.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_chromatic_index(g: *const GcGraph, out: *mut i64) -> GcStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let v = chromatic_index(g).value().map_or(-1, |v| v as i64);
        write_out(out, v, "out")
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gc_has_perfect_matching(g: *const GcGraph, out: *mut bool) -> GcStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        write_out(out, has_perfect_matching(g).is_some(), "out")
    })
}

/// Decides whether `a` is stronger than `b`, searching witnesses with at
/// most `budget` vertices. When `witness` is not NULL it receives the
/// refuting witness as `.mg` text, or NULL if there is none.
///
/// # Safety
/// `a` and `b` must be live handles, `out` writable, `witness` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn gc_decide_stronger(
    a: *const GcGraph,
    b: *const GcGraph,
    budget: usize,
    out: *mut GcVerdict,
    witness: *mut *mut c_char,
) -> GcStatus {
    guard(|| {
        let (a, b) = (&deref(a, "a")?.0, &deref(b, "b")?.0);
        let ev = decide_stronger(a, b, budget)?;
        let verdict = match ev.verdict() {
            Some(true) => GcVerdict::Stronger,
            Some(false) => GcVerdict::NotStronger,
            None => GcVerdict::Unknown,
        };
        if !witness.is_null() {
            witness.write(
                ev.witness()
                    .map_or(ptr::null_mut(), |w| owned_string(to_mg(w))),
            );
        }
        write_out(out, verdict, "out")
    })
}
