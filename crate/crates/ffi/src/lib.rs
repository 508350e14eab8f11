//! C ABI over `opnorm`.
//!
//! Matrices cross the boundary as opaque `OpnMatrix` handles created with
//! `opn_matrix_new` (row-major `double` data) and released with
//! `opn_matrix_free`. Every fallible call returns an `OpnStatus`; on failure
//! `opn_last_error_message` describes the most recent error on the calling
//! thread. Panics are caught and reported as `OPN_STATUS_PANIC`.
//!
//! Norm indices are passed as `OPN_NORM_ONE`, `OPN_NORM_TWO` and
//! `OPN_NORM_INFINITY`. Vertex numbers in edge lists are 1-based.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use opnorm::hardness::{decide_threshold_via_norm, mc_from_graph, reduction_value};
use opnorm::spectral::psd_sqrt;
use opnorm::{Error, Graph, Matrix, NormIndex, NormOptions, NormPair};

pub const OPN_NORM_ONE: u32 = 1;
pub const OPN_NORM_TWO: u32 = 2;
pub const OPN_NORM_INFINITY: u32 = 3;

/// Result codes. `GUARD_EXCEEDED` and `NUMERICAL_FAILURE` share their values
/// with the command-line exit statuses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    GuardExceeded = 3,
    NumericalFailure = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque dense matrix.
pub struct OpnMatrix(Matrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let msg = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> OpnStatus {
    match e.exit_code() {
        3 => OpnStatus::GuardExceeded,
        4 => OpnStatus::NumericalFailure,
        _ => OpnStatus::InvalidArgument,
    }
}

fn fail(e: Error) -> OpnStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn guarded(f: impl FnOnce() -> OpnStatus) -> OpnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == OpnStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            status
        }
        Err(_) => {
            set_error("panic inside opnorm");
            OpnStatus::Panic
        }
    }
}

fn null(what: &str) -> OpnStatus {
    set_error(format!("{what} is null"));
    OpnStatus::NullPointer
}

fn norm_index(code: u32) -> Result<NormIndex, Error> {
    match code {
        OPN_NORM_ONE => Ok(NormIndex::One),
        OPN_NORM_TWO => Ok(NormIndex::Two),
        OPN_NORM_INFINITY => Ok(NormIndex::Infinity),
        other => Err(Error::Unsupported(format!("norm code {other}"))),
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `opn_*` call on the same thread.
#[no_mangle]
pub extern "C" fn opn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn opn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies `rows * cols` row-major values into a new matrix handle.
#[no_mangle]
pub unsafe extern "C" fn opn_matrix_new(
    rows: usize,
    cols: usize,
    data: *const f64,
    out: *mut *mut OpnMatrix,
) -> OpnStatus {
    guarded(|| {
        if out.is_null() {
            return null("out");
        }
        if data.is_null() {
            return null("data");
        }
        let Some(len) = rows.checked_mul(cols) else {
            return fail(Error::DimensionMismatch {
                expected: usize::MAX,
                found: 0,
            });
        };
        let values = std::slice::from_raw_parts(data, len).to_vec();
        match Matrix::new(rows, cols, values) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(OpnMatrix(m)));
                OpnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses matrix CSV text (one row per line, comma-separated).
#[no_mangle]
pub unsafe extern "C" fn opn_matrix_from_csv(text: *const c_char, out: *mut *mut OpnMatrix) -> OpnStatus {
    guarded(|| {
        if out.is_null() {
            return null("out");
        }
        if text.is_null() {
            return null("text");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            set_error("CSV text is not UTF-8");
            return OpnStatus::InvalidArgument;
        };
        match opnorm::io::parse_matrix_csv(s) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(OpnMatrix(m)));
                OpnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn opn_matrix_free(m: *mut OpnMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Row count, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn opn_matrix_rows(m: *const OpnMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// Column count, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn opn_matrix_cols(m: *const OpnMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Copies the row-major entries into `out`, which must hold `rows * cols`.
#[no_mangle]
pub unsafe extern "C" fn opn_matrix_copy_data(m: *const OpnMatrix, out: *mut f64, len: usize) -> OpnStatus {
    guarded(|| {
        let Some(m) = m.as_ref() else { return null("matrix") };
        if out.is_null() {
            return null("out");
        }
        let src = m.0.as_slice();
        if len < src.len() {
            set_error(format!("buffer holds {len} values, need {}", src.len()));
            return OpnStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
        OpnStatus::Ok
    })
}

/// `‖A‖_{p,q}`. Writes the value to `*value`; if `witness` is non-null it
/// receives the `cols` witness entries (`witness_len` must be at least
/// `cols`). `force` lifts the 2^30 enumeration guard; `threads` of 0 means 1.
#[no_mangle]
pub unsafe extern "C" fn opn_induced_norm(
    m: *const OpnMatrix,
    p: u32,
    q: u32,
    force: bool,
    threads: usize,
    value: *mut f64,
    witness: *mut f64,
    witness_len: usize,
) -> OpnStatus {
    guarded(|| {
        let Some(m) = m.as_ref() else { return null("matrix") };
        if value.is_null() {
            return null("value");
        }
        let pair = match (norm_index(p), norm_index(q)) {
            (Ok(p), Ok(q)) => NormPair::new(p, q),
            (Err(e), _) | (_, Err(e)) => return fail(e),
        };
        if !witness.is_null() && witness_len < m.0.cols() {
            set_error(format!("witness buffer holds {witness_len}, need {}", m.0.cols()));
            return OpnStatus::BufferTooSmall;
        }
        let opts = NormOptions {
            force,
            threads: threads.max(1),
        };
        match opnorm::induced_norm_with(&m.0, pair, &opts) {
            Ok(r) => {
                *value = r.value;
                if !witness.is_null() {
                    ptr::copy_nonoverlapping(r.witness.as_ptr(), witness, r.witness.len());
                }
                OpnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Symmetric PSD square root `U D^{1/2} Uᵀ` as a new handle.
#[no_mangle]
pub unsafe extern "C" fn opn_psd_sqrt(m: *const OpnMatrix, out: *mut *mut OpnMatrix) -> OpnStatus {
    guarded(|| {
        let Some(m) = m.as_ref() else { return null("matrix") };
        if out.is_null() {
            return null("out");
        }
        match psd_sqrt(&m.0) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(OpnMatrix(s)));
                OpnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Max-cut threshold through the norm: builds the MC-matrix of the graph on
/// `n` vertices with `edge_count` edges given as 1-based pairs in
/// `edges[2k], edges[2k+1]`, then reports `‖A^{1/2}‖²_{∞,2}` in
/// `*norm_squared` (if non-null) and whether it reaches `threshold`.
#[no_mangle]
pub unsafe extern "C" fn opn_maxcut_decide(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    threshold: u64,
    decision: *mut bool,
    norm_squared: *mut f64,
) -> OpnStatus {
    guarded(|| {
        if decision.is_null() {
            return null("decision");
        }
        if edges.is_null() && edge_count > 0 {
            return null("edges");
        }
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        if flat.contains(&0) {
            set_error("vertex numbers are 1-based");
            return OpnStatus::InvalidArgument;
        }
        let graph = match Graph::new(n, flat.chunks(2).map(|e| (e[0] - 1, e[1] - 1))) {
            Ok(g) => g,
            Err(e) => return fail(e),
        };
        let opts = NormOptions::default();
        let result = mc_from_graph(&graph).and_then(|a| {
            let v = reduction_value(&a, &opts)?;
            let d = decide_threshold_via_norm(&a, threshold, &opts)?;
            Ok((v, d))
        });
        match result {
            Ok((v, d)) => {
                *decision = d;
                if !norm_squared.is_null() {
                    *norm_squared = v;
                }
                OpnStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
