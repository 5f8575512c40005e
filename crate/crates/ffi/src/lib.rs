//! C ABI over `inscribed_tri`.
//!
//! Conventions:
//! * Every fallible function returns an [`ItStatus`]; results go through out
//!   pointers, which are written only on success.
//! * Curves and triangle lists are opaque handles, released with
//!   [`it_curve_free`] / [`it_triangles_free`] (both accept NULL).
//! * On failure, [`it_last_error_message`] returns a description valid until
//!   the next failing call on the same thread.
//! * Panics never cross the boundary; they surface as `IT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use inscribed_tri::curve::wrap;
use inscribed_tri::solvers::{self, WindingStatus};
use inscribed_tri::{Curve, CurveSpec, Error, InscribedTriangle, Point, SolverOptions, TriangleShape};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    InfeasibleShape = 4,
    NoBracket = 5,
    RefineFailed = 6,
    HypothesisViolation = 7,
    Parse = 8,
    Numerical = 9,
    BufferTooSmall = 10,
    Panic = 99,
}

/// Triangle angles in degrees at the base vertex o and at p, q.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct ItShape {
    pub theta_o_deg: f64,
    pub theta_p_deg: f64,
    pub theta_q_deg: f64,
}

/// Solver knobs; obtain defaults from [`it_options_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct ItOptions {
    pub grid_size: usize,
    pub residual_tol: f64,
    pub singular_tol: f64,
    pub max_iterations: usize,
}

/// One triangle. Parameters refer to the curve the solver was given, with
/// the base vertex at `base_param`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct ItTriangle {
    pub base_param: f64,
    pub t_p: f64,
    pub t_q: f64,
    pub residual_r: f64,
    pub residual_r_prime: f64,
}

/// Opaque closed polyline.
pub struct ItCurve(Curve);

/// Opaque list of triangles.
pub struct ItTriangleList {
    base_param: f64,
    triangles: Vec<InscribedTriangle>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ItStatus {
    match e {
        Error::InvalidArgument(_) => ItStatus::InvalidArgument,
        Error::Degenerate(_) => ItStatus::Degenerate,
        Error::InfeasibleShape(_) => ItStatus::InfeasibleShape,
        Error::SingularPath { .. } | Error::NumericalDegeneracy { .. } => ItStatus::Numerical,
        Error::NoBracket { .. } => ItStatus::NoBracket,
        Error::RefineFailed { .. } => ItStatus::RefineFailed,
        Error::HypothesisViolation(_) => ItStatus::HypothesisViolation,
        Error::Parse(_) | Error::Io(_) => ItStatus::Parse,
    }
}

struct Fail(ItStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ItStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, converting errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ItStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ItStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ItStatus::Panic
        }
    }
}

unsafe fn curve_ref<'a>(curve: *const ItCurve) -> Result<&'a Curve, Fail> {
    curve.as_ref().map(|c| &c.0).ok_or_else(|| null("curve"))
}

unsafe fn options_from(opts: *const ItOptions) -> Result<SolverOptions, Fail> {
    let mut o = SolverOptions::default();
    if let Some(user) = opts.as_ref() {
        o.grid_size = user.grid_size;
        o.residual_tol = user.residual_tol;
        o.singular_tol = user.singular_tol;
        o.max_iterations = user.max_iterations;
        if !(o.residual_tol > 0.0 && o.singular_tol > 0.0) {
            return Err(Fail(ItStatus::InvalidArgument, "tolerances must be positive".into()));
        }
    }
    Ok(o)
}

fn shape_from(shape: &ItShape) -> Result<TriangleShape, Fail> {
    Ok(TriangleShape::from_degrees(shape.theta_o_deg, shape.theta_p_deg, shape.theta_q_deg)?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn it_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread (empty if none).
#[no_mangle]
pub extern "C" fn it_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn it_options_default() -> ItOptions {
    let d = SolverOptions::default();
    ItOptions {
        grid_size: d.grid_size,
        residual_tol: d.residual_tol,
        singular_tol: d.singular_tol,
        max_iterations: d.max_iterations,
    }
}

/// Builds a curve from `count` vertices of dimension `dim`, stored row-major
/// in `coords` (`count * dim` doubles).
///
/// # Safety
/// `coords` must point to `count * dim` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn it_curve_from_points(coords: *const f64, count: usize, dim: usize, out: *mut *mut ItCurve) -> ItStatus {
    guard(|| {
        if coords.is_null() {
            return Err(null("coords"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        if dim == 0 || count.checked_mul(dim).is_none() {
            return Err(Fail(ItStatus::InvalidArgument, "bad vertex count or dimension".into()));
        }
        let data = std::slice::from_raw_parts(coords, count * dim);
        let points = data.chunks(dim).map(Point::from_slice).collect::<inscribed_tri::Result<Vec<_>>>()?;
        let curve = Curve::new(points)?;
        *out = Box::into_raw(Box::new(ItCurve(curve)));
        Ok(())
    })
}

/// Builds a curve from curve JSON or a `gen:name,key=value,...` shorthand.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn it_curve_parse(text: *const c_char, out: *mut *mut ItCurve) -> ItStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Fail(ItStatus::Parse, "input is not UTF-8".into()))?;
        let spec = if s.trim_start().starts_with("gen:") {
            CurveSpec::from_shorthand(s.trim())?
        } else {
            CurveSpec::from_json(s)?
        };
        *out = Box::into_raw(Box::new(ItCurve(spec.build()?)));
        Ok(())
    })
}

/// # Safety
/// `curve` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn it_curve_free(curve: *mut ItCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Dimension of the ambient space, or 0 for NULL.
///
/// # Safety
/// `curve` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn it_curve_dimension(curve: *const ItCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.0.dimension())
}

/// Number of distinct vertices, or 0 for NULL.
///
/// # Safety
/// `curve` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn it_curve_vertex_count(curve: *const ItCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.0.vertex_count())
}

/// Writes `γ(t)` (parameter taken mod 1) into `out[0..dim]`.
///
/// # Safety
/// `curve` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn it_curve_eval(curve: *const ItCurve, t: f64, out: *mut f64, len: usize) -> ItStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_point(&c.eval(t), out, len)
    })
}

unsafe fn write_point(p: &Point, out: *mut f64, len: usize) -> Result<(), Fail> {
    if len < p.dim() {
        return Err(Fail(ItStatus::BufferTooSmall, format!("need {} doubles, got {len}", p.dim())));
    }
    std::slice::from_raw_parts_mut(out, p.dim()).copy_from_slice(p.coords());
    Ok(())
}

/// Triangles similar to `shape` with vertex o = γ(base_param). `opts` may be NULL.
///
/// # Safety
/// `curve` and `shape` must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn it_solve_similar(
    curve: *const ItCurve,
    shape: *const ItShape,
    base_param: f64,
    opts: *const ItOptions,
    out: *mut *mut ItTriangleList,
) -> ItStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        let shape = shape_from(shape.as_ref().ok_or_else(|| null("shape"))?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = options_from(opts)?;
        let sol = solvers::solve_similar(c, &shape, base_param, &opts)?;
        *out = Box::into_raw(Box::new(ItTriangleList { base_param: sol.base_param, triangles: sol.triangles }));
        Ok(())
    })
}

/// An equilateral triangle with vertex o = γ(base_param), as a one-element list.
///
/// # Safety
/// `curve` must be valid; `out` must be writable; `opts` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn it_solve_equilateral(
    curve: *const ItCurve,
    base_param: f64,
    opts: *const ItOptions,
    out: *mut *mut ItTriangleList,
) -> ItStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = options_from(opts)?;
        let sol = solvers::solve_equilateral(c, base_param, &opts)?;
        *out = Box::into_raw(Box::new(ItTriangleList { base_param: sol.base_param, triangles: vec![sol.triangle] }));
        Ok(())
    })
}

/// Number of triangles, or 0 for NULL.
///
/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn it_triangles_len(list: *const ItTriangleList) -> usize {
    list.as_ref().map_or(0, |l| l.triangles.len())
}

/// # Safety
/// `list` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn it_triangles_get(list: *const ItTriangleList, index: usize, out: *mut ItTriangle) -> ItStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let t = l.triangles.get(index).ok_or_else(|| Fail(ItStatus::InvalidArgument, format!("index {index} out of range")))?;
        *out = ItTriangle {
            base_param: l.base_param,
            t_p: wrap(t.t_p + l.base_param),
            t_q: wrap(t.t_q + l.base_param),
            residual_r: t.residual_r,
            residual_r_prime: t.residual_r_prime,
        };
        Ok(())
    })
}

/// Coordinates of vertex `which` (0 = o, 1 = p, 2 = q) of triangle `index`.
///
/// # Safety
/// `list` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn it_triangles_vertex(
    list: *const ItTriangleList,
    index: usize,
    which: u32,
    out: *mut f64,
    len: usize,
) -> ItStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let t = l.triangles.get(index).ok_or_else(|| Fail(ItStatus::InvalidArgument, format!("index {index} out of range")))?;
        let p = match which {
            0 => &t.point_o,
            1 => &t.point_p,
            2 => &t.point_q,
            _ => return Err(Fail(ItStatus::InvalidArgument, format!("vertex {which} is not 0, 1 or 2"))),
        };
        write_point(p, out, len)
    })
}

/// # Safety
/// `list` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn it_triangles_free(list: *mut ItTriangleList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Strong monotonicity of γ(base_param) on the window of half-width `epsilon`.
///
/// # Safety
/// `curve` must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn it_check_strong_monotone(
    curve: *const ItCurve,
    base_param: f64,
    epsilon: f64,
    samples: usize,
    out: *mut bool,
) -> ItStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = solvers::check_strong_monotone(&c.rebased(base_param), epsilon, samples)?;
        Ok(())
    })
}

/// Sweep invariant at parameter `t` (relative to the base point). Sets
/// `*singular` to 1 when the curve meets the candidate sphere, in which case
/// `*winding` is left untouched.
///
/// # Safety
/// All pointers must be valid; `opts` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn it_sphere_winding(
    curve: *const ItCurve,
    shape: *const ItShape,
    base_param: f64,
    t: f64,
    opts: *const ItOptions,
    winding: *mut i64,
    singular: *mut bool,
) -> ItStatus {
    guard(|| {
        let c = curve_ref(curve)?;
        let shape = shape_from(shape.as_ref().ok_or_else(|| null("shape"))?)?;
        let winding = winding.as_mut().ok_or_else(|| null("winding"))?;
        let singular = singular.as_mut().ok_or_else(|| null("singular"))?;
        let opts = options_from(opts)?;
        match solvers::sphere_winding(&c.rebased(base_param), t, &shape, &opts)? {
            WindingStatus::Value { winding: w } => {
                *winding = w;
                *singular = false;
            }
            WindingStatus::Singular { .. } => *singular = true,
            WindingStatus::Skipped => return Err(Fail(ItStatus::Degenerate, "γ(t) coincides with the base point".into())),
        }
        Ok(())
    })
}
