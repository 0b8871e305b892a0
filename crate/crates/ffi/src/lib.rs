//! C ABI for scoring with a trained classifier and computing kernel entries.
//!
//! # Safety
//!
//! Pointer arguments must be valid for the stated length for the duration of
//! the call. Null pointers are rejected with `VQC_STATUS_NULL_POINTER`.
//! Handles returned by `vqc_model_load*` must be released with
//! `vqc_model_free` exactly once.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use vqc_core::cli::ModelArtifact;
use vqc_core::featmap::{default_data_map, Entanglement, FeatureMapSpec};
use vqc_core::{metrics, qkernel, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VqcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Data = 4,
    Io = 5,
    Undefined = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque handle to a loaded model.
pub struct VqcModel {
    inner: ModelArtifact,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VqcStatus {
    match e {
        Error::Config(_) | Error::Binding(_) => VqcStatus::Config,
        Error::Encoding(_) | Error::Data(_) | Error::Csv(_) | Error::Json { .. } => VqcStatus::Data,
        Error::Io { .. } => VqcStatus::Io,
        Error::UndefinedAuroc(_) => VqcStatus::Undefined,
        Error::NonFiniteObjective { .. } | Error::Invariant(_) => VqcStatus::Internal,
    }
}

fn guard<F>(f: F) -> VqcStatus
where
    F: FnOnce() -> Result<(), (VqcStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VqcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside vqc".into());
            VqcStatus::Panic
        }
    }
}

fn core<T>(r: vqc_core::Result<T>) -> Result<T, (VqcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (VqcStatus, String) {
    (VqcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (VqcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (VqcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn input<'a, T>(
    p: *const T,
    len: usize,
    what: &str,
) -> Result<&'a [T], (VqcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

/// Message for the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vqc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn vqc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Loads `model.json` as written by `vqc train`.
#[no_mangle]
pub unsafe extern "C" fn vqc_model_load(path: *const c_char, out: *mut *mut VqcModel) -> VqcStatus {
    guard(|| {
        let path = c_str(path, "path")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text =
            std::fs::read_to_string(path).map_err(|e| (VqcStatus::Io, format!("{path}: {e}")))?;
        let inner = core(ModelArtifact::from_json(&text))?;
        *out = Box::into_raw(Box::new(VqcModel { inner }));
        Ok(())
    })
}

/// Same as `vqc_model_load` from an in-memory JSON document.
#[no_mangle]
pub unsafe extern "C" fn vqc_model_load_json(
    json: *const c_char,
    out: *mut *mut VqcModel,
) -> VqcStatus {
    guard(|| {
        let text = c_str(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = core(ModelArtifact::from_json(text))?;
        *out = Box::into_raw(Box::new(VqcModel { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn vqc_model_free(model: *mut VqcModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of encoded input columns a row must have (before PCA).
#[no_mangle]
pub unsafe extern "C" fn vqc_model_n_inputs(model: *const VqcModel) -> usize {
    model
        .as_ref()
        .map_or(0, |m| m.inner.preprocessor.pca.input_dim())
}

#[no_mangle]
pub unsafe extern "C" fn vqc_model_n_qubits(model: *const VqcModel) -> usize {
    model
        .as_ref()
        .map_or(0, |m| m.inner.classifier.feature_map.n_qubits)
}

/// Scores `n_rows` row-major rows of `n_cols` encoded features. Writes
/// P(AD) into `out_p_ad` and 1 (AD) / 0 (NON_AD) into `out_labels`; either
/// output may be null.
#[no_mangle]
pub unsafe extern "C" fn vqc_model_predict(
    model: *const VqcModel,
    rows: *const f64,
    n_rows: usize,
    n_cols: usize,
    out_p_ad: *mut f64,
    out_labels: *mut u8,
) -> VqcStatus {
    guard(|| {
        let m = model.as_ref().ok_or_else(|| null("model"))?;
        let expected = m.inner.preprocessor.pca.input_dim();
        if n_cols != expected {
            return Err((
                VqcStatus::InvalidArgument,
                format!("model expects {expected} columns, got {n_cols}"),
            ));
        }
        let flat = input(rows, n_rows * n_cols, "rows")?;
        let rows: Vec<Vec<f64>> = flat.chunks(n_cols.max(1)).map(<[f64]>::to_vec).collect();
        let preds = core(m.inner.predict_rows(&rows[..n_rows]))?;
        for (i, p) in preds.iter().enumerate() {
            if !out_p_ad.is_null() {
                *out_p_ad.add(i) = p.p_ad;
            }
            if !out_labels.is_null() {
                *out_labels.add(i) = p.label.as_u8();
            }
        }
        Ok(())
    })
}

/// Fidelity kernel `|<phi(x')|phi(x)>|^2` of the ZZ feature map with `n`
/// qubits. `entanglement` is 0 for full, 1 for linear.
#[no_mangle]
pub unsafe extern "C" fn vqc_kernel_entry(
    x: *const f64,
    x_prime: *const f64,
    n: usize,
    reps: usize,
    entanglement: u32,
    out: *mut f64,
) -> VqcStatus {
    guard(|| {
        let ent = match entanglement {
            0 => Entanglement::Full,
            1 => Entanglement::Linear,
            other => {
                return Err((
                    VqcStatus::InvalidArgument,
                    format!("unknown entanglement {other}"),
                ))
            }
        };
        let a = input(x, n, "x")?;
        let b = input(x_prime, n, "x_prime")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = FeatureMapSpec::new(n, reps, ent);
        *out = core(qkernel::kernel_entry(a, b, &spec, default_data_map()))?;
        Ok(())
    })
}

/// Area under the ROC curve of `scores` against 0/1 `labels`.
#[no_mangle]
pub unsafe extern "C" fn vqc_auroc(
    labels: *const u8,
    scores: *const f64,
    n: usize,
    out: *mut f64,
) -> VqcStatus {
    guard(|| {
        let y = input(labels, n, "labels")?;
        let s = input(scores, n, "scores")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = core(metrics::auroc(y, s))?;
        Ok(())
    })
}
