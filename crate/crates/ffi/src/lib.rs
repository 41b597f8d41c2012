//! C ABI over `qef-core`.
//!
//! Objects cross the boundary as opaque pointers owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`QefStatus`]; on failure [`qef_last_error_message`] describes what went
//! wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qef_core::circuit::CliffordCircuit;
use qef_core::code::{ea_extend, parse_matrix, EaCssCode, MatrixFormat};
use qef_core::encoder::{synth_nonft, verify_nonft};
use qef_core::faults::{bound_ft, bound_nonft, simulate, FaultModel, InjectionMode};
use qef_core::ftencoder::{plan_blocks, synth_ft};
use qef_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QefStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotDualContaining = 5,
    Synthesis = 6,
    Verification = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QefFormat {
    Dense = 0,
    Alist = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QefInjection {
    PerFanout = 0,
    PerGate = 1,
}

/// A code, extended with receiver columns if its checks do not commute.
pub struct QefCode {
    inner: EaCssCode,
}

/// A circuit plus the columns that never take injected faults.
pub struct QefCircuit {
    inner: CliffordCircuit,
    protected: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QefStatus {
    match e {
        Error::Parse { .. } => QefStatus::Parse,
        Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => QefStatus::InvalidArgument,
        Error::NotDualContaining { .. } => QefStatus::NotDualContaining,
        Error::Verification { .. } => QefStatus::Verification,
        _ => QefStatus::Synthesis,
    }
}

fn fail(status: QefStatus, msg: impl Into<String>) -> QefStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, recording errors and turning panics into [`QefStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), QefStatus>) -> QefStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QefStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(QefStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: qef_core::Result<T>) -> Result<T, QefStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, QefStatus> {
    if p.is_null() {
        return Err(fail(QefStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(QefStatus::InvalidUtf8, e.to_string()))
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, QefStatus> {
    p.as_ref().ok_or_else(|| fail(QefStatus::NullPointer, "null handle"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, QefStatus> {
    p.as_mut()
        .ok_or_else(|| fail(QefStatus::NullPointer, "null output pointer"))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qef_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses both check matrices and extends them if needed.
///
/// # Safety
///
/// `hx` and `hz` must be nul-terminated strings; `out_code` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_code_parse(
    hx: *const c_char,
    hz: *const c_char,
    format: QefFormat,
    out_code: *mut *mut QefCode,
) -> QefStatus {
    guard(|| {
        let slot = out(out_code)?;
        *slot = ptr::null_mut();
        let fmt = match format {
            QefFormat::Dense => MatrixFormat::Dense,
            QefFormat::Alist => MatrixFormat::Alist,
        };
        let hx = lift(parse_matrix(text(hx)?, fmt))?;
        let hz = lift(parse_matrix(text(hz)?, fmt))?;
        let inner = lift(ea_extend(&hx, &hz))?;
        *slot = Box::into_raw(Box::new(QefCode { inner }));
        Ok(())
    })
}

/// # Safety
///
/// `code` must come from [`qef_code_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qef_code_free(code: *mut QefCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Transmitter count, logical qubits, and preshared pairs.
///
/// # Safety
///
/// `code` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_code_params(
    code: *const QefCode,
    n: *mut usize,
    k: *mut usize,
    ebits: *mut usize,
) -> QefStatus {
    guard(|| {
        let c = &obj(code)?.inner;
        *out(n)? = c.n();
        *out(k)? = c.k();
        *out(ebits)? = c.c();
        Ok(())
    })
}

/// Verified non-fault-tolerant encoder.
///
/// # Safety
///
/// `code` must be a live handle; `out_circuit` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_synth_nonft(code: *const QefCode, out_circuit: *mut *mut QefCircuit) -> QefStatus {
    guard(|| {
        let slot = out(out_circuit)?;
        *slot = ptr::null_mut();
        let ea = &obj(code)?.inner;
        let enc = lift(synth_nonft(ea.code()))?;
        let sf = &enc.standard;
        lift(verify_nonft(
            ea.code(),
            &enc.encoder,
            &sf.column_perm[..sf.rho1() + sf.rho2()],
        ))?;
        *slot = Box::into_raw(Box::new(QefCircuit {
            inner: enc.encoder,
            protected: ea.receiver_cols(),
        }));
        Ok(())
    })
}

/// Verified block-transversal encoder over `blocks` near-equal blocks.
///
/// # Safety
///
/// `code` must be a live handle; `out_circuit` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_synth_ft(
    code: *const QefCode,
    blocks: usize,
    out_circuit: *mut *mut QefCircuit,
) -> QefStatus {
    guard(|| {
        let slot = out(out_circuit)?;
        *slot = ptr::null_mut();
        let ea = &obj(code)?.inner;
        let part = lift(plan_blocks(ea.n(), blocks))?;
        let enc = lift(synth_ft(ea, &part))?;
        *slot = Box::into_raw(Box::new(QefCircuit {
            protected: enc.layout.protected_cols(),
            inner: enc.encoder,
        }));
        Ok(())
    })
}

/// Parses the `QUBITS n` / `CX c t` / `H q` text form. No qubit is protected.
///
/// # Safety
///
/// `src` must be a nul-terminated string; `out_circuit` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_circuit_parse(src: *const c_char, out_circuit: *mut *mut QefCircuit) -> QefStatus {
    guard(|| {
        let slot = out(out_circuit)?;
        *slot = ptr::null_mut();
        let inner = lift(CliffordCircuit::parse(text(src)?))?;
        *slot = Box::into_raw(Box::new(QefCircuit {
            inner,
            protected: Vec::new(),
        }));
        Ok(())
    })
}

/// Text form of the circuit; release with [`qef_string_free`].
///
/// # Safety
///
/// `circuit` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_circuit_serialize(circuit: *const QefCircuit, out_text: *mut *mut c_char) -> QefStatus {
    guard(|| {
        let slot = out(out_text)?;
        *slot = ptr::null_mut();
        let s = obj(circuit)?.inner.serialize();
        *slot = CString::new(s).expect("serialized circuits contain no nul").into_raw();
        Ok(())
    })
}

/// # Safety
///
/// `circuit` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_circuit_shape(
    circuit: *const QefCircuit,
    qubits: *mut usize,
    gates: *mut usize,
) -> QefStatus {
    guard(|| {
        let c = &obj(circuit)?.inner;
        *out(qubits)? = c.qubits();
        *out(gates)? = c.len();
        Ok(())
    })
}

/// # Safety
///
/// `circuit` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qef_circuit_free(circuit: *mut QefCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// # Safety
///
/// `s` must come from [`qef_circuit_serialize`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qef_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Analytic bounds for the non-FT encoder and the FT encoder over `blocks` blocks.
///
/// # Safety
///
/// `code` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_bounds(
    code: *const QefCode,
    blocks: usize,
    p: f64,
    bound_nf: *mut f64,
    bound_ft_out: *mut f64,
) -> QefStatus {
    guard(|| {
        let ea = &obj(code)?.inner;
        lift(FaultModel::new(p))?;
        let nf = lift(synth_nonft(ea.code()))?;
        let ft = lift(synth_ft(ea, &lift(plan_blocks(ea.n(), blocks))?))?;
        *out(bound_nf)? = bound_nonft(&nf.standard, p);
        *out(bound_ft_out)? = bound_ft(&ft.trace, p);
        Ok(())
    })
}

/// Monte Carlo propagation-event estimate; deterministic in `seed`.
///
/// # Safety
///
/// `circuit` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qef_simulate(
    circuit: *const QefCircuit,
    p: f64,
    trials: u64,
    seed: u64,
    injection: QefInjection,
    estimate: *mut f64,
    stderr: *mut f64,
) -> QefStatus {
    guard(|| {
        let c = obj(circuit)?;
        let model = lift(FaultModel::new(p))?;
        let mode = match injection {
            QefInjection::PerFanout => InjectionMode::PerFanout,
            QefInjection::PerGate => InjectionMode::PerGate,
        };
        let mc = lift(simulate(&c.inner, model, trials, seed, &c.protected, mode))?;
        *out(estimate)? = mc.estimate;
        *out(stderr)? = mc.stderr;
        Ok(())
    })
}
