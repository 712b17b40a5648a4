//! C interface to `interlace-core`.
//!
//! Graphs and polynomials are opaque heap handles released with
//! [`itp_graph_free`] and [`itp_poly_free`]. Every fallible call returns an
//! [`ItpStatus`]; on failure a description is available from
//! [`itp_last_error`] on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with [`itp_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use interlace_core::interlace::{interlace, q_evaluate};
use interlace_core::polyring::parse_rational;
use interlace_core::tutte::{
    param_rank_recursive_with, param_rank_subset_with, section_transversal_with, tutte_subset_with, EnumOptions,
    TransversalScheme,
};
use interlace_core::{BinaryMatroid, ElementKind, Error, LoopedGraph, Method, MultiPoly, ParameterAssignment};

pub const ITP_METHOD_SUBSET: u32 = 0;
pub const ITP_METHOD_RECURSIVE: u32 = 1;
pub const ITP_METHOD_SECTION: u32 = 2;

pub const ITP_MATROID_IA: u32 = 0;
pub const ITP_MATROID_IAS: u32 = 1;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    CapExceeded = 4,
    InvalidArgument = 5,
    ComputationFailed = 6,
    Panic = 7,
}

/// Opaque graph handle.
pub struct ItpGraph(LoopedGraph);

/// Opaque polynomial handle.
pub struct ItpPoly(MultiPoly);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(ItpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::CapExceeded { .. } => ItpStatus::CapExceeded,
            Error::GraphParse { .. }
            | Error::ParamParse { .. }
            | Error::PolyParse(_)
            | Error::BadRational(_) => ItpStatus::ParseError,
            Error::MissingAssignment(_) | Error::ForeignVariable(_) | Error::UnassignedVariable(_) => {
                ItpStatus::InvalidArgument
            }
            _ => ItpStatus::ComputationFailed,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ItpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            ItpStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ItpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(ItpStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ItpStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn graph_ref<'a>(g: *const ItpGraph) -> Result<&'a LoopedGraph, Failure> {
    g.as_ref()
        .map(|g| &g.0)
        .ok_or_else(|| Failure(ItpStatus::NullArgument, "graph is null".into()))
}

unsafe fn poly_ref<'a>(p: *const ItpPoly) -> Result<&'a MultiPoly, Failure> {
    p.as_ref()
        .map(|p| &p.0)
        .ok_or_else(|| Failure(ItpStatus::NullArgument, "polynomial is null".into()))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ItpStatus::NullArgument, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ItpStatus::NullArgument, "output pointer is null".into()));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

fn check_out<T>(out: *mut *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(ItpStatus::NullArgument, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn matroid(g: &LoopedGraph, kind: u32) -> Result<BinaryMatroid, Failure> {
    match kind {
        ITP_MATROID_IA => Ok(BinaryMatroid::build_ia(g)),
        ITP_MATROID_IAS => Ok(BinaryMatroid::build_ias(g)),
        _ => Err(Failure(ItpStatus::InvalidArgument, format!("unknown matroid kind {kind}"))),
    }
}

/// Last error message on this thread; empty after a successful call. The
/// pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn itp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses the text graph format.
#[no_mangle]
pub unsafe extern "C" fn itp_graph_parse(text: *const c_char, out: *mut *mut ItpGraph) -> ItpStatus {
    guard(|| {
        check_out(out)?;
        let g: LoopedGraph = read_str(text, "text")?.parse()?;
        store(out, ItpGraph(g))
    })
}

#[no_mangle]
pub unsafe extern "C" fn itp_graph_free(g: *mut ItpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn itp_graph_vertex_count(g: *const ItpGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Canonical text form of the graph.
#[no_mangle]
pub unsafe extern "C" fn itp_graph_to_text(g: *const ItpGraph, out: *mut *mut c_char) -> ItpStatus {
    guard(|| store_string(out, graph_ref(g)?.to_string()))
}

/// Interlace polynomial `q` in `x, y` by one of the `ITP_METHOD_*` methods.
#[no_mangle]
pub unsafe extern "C" fn itp_q(g: *const ItpGraph, method: u32, out: *mut *mut ItpPoly) -> ItpStatus {
    guard(|| {
        check_out(out)?;
        let g = graph_ref(g)?;
        let method = match method {
            ITP_METHOD_SUBSET => Method::Subset,
            ITP_METHOD_RECURSIVE => Method::Recursive,
            ITP_METHOD_SECTION => Method::Section,
            _ => return Err(Failure(ItpStatus::InvalidArgument, format!("unknown method {method}"))),
        };
        let r = interlace(g, method, &EnumOptions::default())?;
        store(out, ItpPoly(r.polynomial))
    })
}

/// Tutte polynomial in `s, z` of `M(IA(G))` or `M(IAS(G))` by subset
/// expansion.
#[no_mangle]
pub unsafe extern "C" fn itp_tutte(g: *const ItpGraph, matroid_kind: u32, out: *mut *mut ItpPoly) -> ItpStatus {
    guard(|| {
        check_out(out)?;
        let m = matroid(graph_ref(g)?, matroid_kind)?;
        store(out, ItpPoly(tutte_subset_with(&m, &EnumOptions::default())?))
    })
}

/// Transversal section with symbolic parameters `a_<v>_<kind>`,
/// `b_<v>_<kind>` and the variable `u` standing for `s*z`.
#[no_mangle]
pub unsafe extern "C" fn itp_section(g: *const ItpGraph, matroid_kind: u32, out: *mut *mut ItpPoly) -> ItpStatus {
    guard(|| {
        check_out(out)?;
        let m = matroid(graph_ref(g)?, matroid_kind)?;
        let scheme = TransversalScheme::from_matroid(&m)?;
        let asg = ParameterAssignment::symbolic(&m);
        store(out, ItpPoly(section_transversal_with(&m, &scheme, &asg, &EnumOptions::default())?))
    })
}

/// Parametrized rank polynomial for a parameter file's contents; the `IAS`
/// matroid is used when any `psi` entry is present. `method` is
/// `ITP_METHOD_SUBSET` or `ITP_METHOD_RECURSIVE`.
#[no_mangle]
pub unsafe extern "C" fn itp_param_rank(
    g: *const ItpGraph,
    params: *const c_char,
    method: u32,
    out: *mut *mut ItpPoly,
) -> ItpStatus {
    guard(|| {
        check_out(out)?;
        let g = graph_ref(g)?;
        let asg = ParameterAssignment::parse(read_str(params, "params")?)?;
        let ias = asg.iter().any(|(l, _)| l.kind == ElementKind::Psi);
        let m = matroid(g, if ias { ITP_MATROID_IAS } else { ITP_MATROID_IA })?;
        let opts = EnumOptions::default();
        let p = match method {
            ITP_METHOD_SUBSET => param_rank_subset_with(&m, &asg, &opts)?,
            ITP_METHOD_RECURSIVE => param_rank_recursive_with(&m, &asg, &opts)?,
            _ => return Err(Failure(ItpStatus::InvalidArgument, format!("unknown method {method}"))),
        };
        store(out, ItpPoly(p))
    })
}

/// Parses the text polynomial syntax.
#[no_mangle]
pub unsafe extern "C" fn itp_poly_parse(text: *const c_char, out: *mut *mut ItpPoly) -> ItpStatus {
    guard(|| {
        check_out(out)?;
        let p: MultiPoly = read_str(text, "text")?.parse()?;
        store(out, ItpPoly(p))
    })
}

/// Parses the polynomial JSON form.
#[no_mangle]
pub unsafe extern "C" fn itp_poly_from_json(json: *const c_char, out: *mut *mut ItpPoly) -> ItpStatus {
    guard(|| {
        check_out(out)?;
        let p = MultiPoly::from_json(read_str(json, "json")?)?;
        store(out, ItpPoly(p))
    })
}

#[no_mangle]
pub unsafe extern "C" fn itp_poly_free(p: *mut ItpPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn itp_poly_to_text(p: *const ItpPoly, out: *mut *mut c_char) -> ItpStatus {
    guard(|| store_string(out, poly_ref(p)?.to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn itp_poly_to_json(p: *const ItpPoly, out: *mut *mut c_char) -> ItpStatus {
    guard(|| store_string(out, poly_ref(p)?.to_json()))
}

/// 1 if the polynomials are equal, 0 if not or if either handle is null.
#[no_mangle]
pub unsafe extern "C" fn itp_poly_equal(a: *const ItpPoly, b: *const ItpPoly) -> i32 {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => i32::from(a.0 == b.0),
        _ => 0,
    }
}

/// Exact value of a polynomial in `x, y` at rationals given as `p/q` or
/// integer strings; the result is written as `p/q` or an integer.
#[no_mangle]
pub unsafe extern "C" fn itp_poly_eval_xy(
    p: *const ItpPoly,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> ItpStatus {
    guard(|| {
        check_out(out)?;
        let p = poly_ref(p)?;
        let x = parse_rational(read_str(x, "x")?)?;
        let y = parse_rational(read_str(y, "y")?)?;
        store_string(out, q_evaluate(p, &x, &y)?.to_string())
    })
}

#[no_mangle]
pub unsafe extern "C" fn itp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
