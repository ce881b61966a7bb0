//! C ABI over `twoside`.
//!
//! Transcripts are exposed as opaque [`TsTranscript`] handles. Every fallible
//! function returns a [`TsStatus`]; on failure a message is available from
//! [`ts_last_error`] on the same thread. Strings returned by the library must
//! be released with [`ts_string_free`], handles with [`ts_transcript_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twoside::digital::DigitalValue;
use twoside::digital_kex::DigitalExchange;
use twoside::field::{gauss_solve, FpMatrix, PrimeField};
use twoside::transcript::{attack_transcript, Transcript};
use twoside::twisted_kex::{HMode, TwistedExchange};
use twoside::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    NoSolution = 3,
    Parse = 4,
    Internal = 5,
}

/// An element of the digital semiring. When `infinite` is set, `value` is ignored.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TsDigital {
    pub value: u64,
    pub infinite: bool,
}

impl From<TsDigital> for DigitalValue {
    fn from(d: TsDigital) -> Self {
        if d.infinite {
            DigitalValue::Infinity
        } else {
            DigitalValue::Finite(d.value)
        }
    }
}

impl From<DigitalValue> for TsDigital {
    fn from(d: DigitalValue) -> Self {
        match d {
            DigitalValue::Finite(value) => TsDigital { value, infinite: false },
            DigitalValue::Infinity => TsDigital { value: 0, infinite: true },
        }
    }
}

/// Opaque transcript handle.
pub struct TsTranscript {
    inner: Transcript,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn fail(status: TsStatus, message: impl Into<String>) -> TsStatus {
    set_error(message);
    status
}

fn from_error(err: Error) -> TsStatus {
    let status = match err {
        Error::NoSolution(_) => TsStatus::NoSolution,
        Error::Parse(_) => TsStatus::Parse,
        _ => TsStatus::InvalidArgument,
    };
    fail(status, err.to_string())
}

fn guard(body: impl FnOnce() -> TsStatus) -> TsStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(TsStatus::Internal, "internal panic"))
}

fn into_c_string(text: String, out: *mut *mut c_char) -> TsStatus {
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            TsStatus::Ok
        }
        Err(_) => fail(TsStatus::Internal, "string contains an interior NUL"),
    }
}

fn publish(transcript: Transcript, out: *mut *mut TsTranscript) -> TsStatus {
    let handle = Box::new(TsTranscript { inner: transcript });
    unsafe { *out = Box::into_raw(handle) };
    TsStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string previously returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Semiring addition (maximum under the digit-sum order).
#[no_mangle]
pub extern "C" fn ts_digital_add(a: TsDigital, b: TsDigital) -> TsDigital {
    DigitalValue::from(a).add(b.into()).into()
}

/// Semiring multiplication (minimum under the digit-sum order).
#[no_mangle]
pub extern "C" fn ts_digital_mul(a: TsDigital, b: TsDigital) -> TsDigital {
    DigitalValue::from(a).mul(b.into()).into()
}

/// Whether `a` precedes or equals `b` in the digit-sum order.
#[no_mangle]
pub extern "C" fn ts_digital_leq(a: TsDigital, b: TsDigital) -> bool {
    DigitalValue::from(a).leq_w(b.into())
}

/// Runs a seeded digital exchange with `n x n` circulant keys and entries in `[0, bound]`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn ts_transcript_digital(n: usize, bound: u64, seed: u64, out: *mut *mut TsTranscript) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return fail(TsStatus::NullPointer, "out is NULL");
        }
        match DigitalExchange::seeded(n, bound, seed) {
            Ok(ex) => publish(Transcript::digital(&ex, seed, true), out),
            Err(e) => from_error(e),
        }
    })
}

/// Runs a seeded twisted exchange over `F_{p^fext}` with the dihedral group of order `2m`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn ts_transcript_twisted(
    p: u64,
    fext: usize,
    m: usize,
    seed: u64,
    out: *mut *mut TsTranscript,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return fail(TsStatus::NullPointer, "out is NULL");
        }
        match TwistedExchange::seeded(p, fext, m, seed, HMode::Full) {
            Ok(ex) => publish(Transcript::twisted(&ex, seed, true), out),
            Err(e) => from_error(e),
        }
    })
}

/// Parses a JSON transcript.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_transcript_from_json(json: *const c_char, out: *mut *mut TsTranscript) -> TsStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(TsStatus::NullPointer, "json or out is NULL");
        }
        let Ok(text) = unsafe { CStr::from_ptr(json) }.to_str() else {
            return fail(TsStatus::Parse, "transcript is not valid UTF-8");
        };
        match Transcript::from_json(text) {
            Ok(t) => publish(t, out),
            Err(e) => from_error(e),
        }
    })
}

/// Serializes a transcript. Private keys and the shared key are included only
/// when `insecure_dump` is set.
///
/// # Safety
/// `handle` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_transcript_to_json(
    handle: *const TsTranscript,
    insecure_dump: bool,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let (Some(t), false) = (unsafe { handle.as_ref() }, out.is_null()) else {
            return fail(TsStatus::NullPointer, "handle or out is NULL");
        };
        let text = if insecure_dump {
            t.inner.to_json_pretty()
        } else {
            t.inner.public_only().to_json_pretty()
        };
        into_c_string(text, out)
    })
}

/// Whether both parties derived the same key.
///
/// # Safety
/// `handle` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_transcript_keys_agree(handle: *const TsTranscript, out: *mut bool) -> TsStatus {
    guard(|| {
        let (Some(t), false) = (unsafe { handle.as_ref() }, out.is_null()) else {
            return fail(TsStatus::NullPointer, "handle or out is NULL");
        };
        unsafe { *out = t.inner.keys_agree() };
        TsStatus::Ok
    })
}

/// Recovers the shared key from the public part of a transcript.
///
/// `out_matches` receives 1 if the recovered key equals the stored shared
/// key, 0 if it differs, and -1 if the transcript carries no shared key.
///
/// # Safety
/// `handle` must be a live handle; `out_matches` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_transcript_attack(handle: *const TsTranscript, out_matches: *mut i32) -> TsStatus {
    guard(|| {
        let (Some(t), false) = (unsafe { handle.as_ref() }, out_matches.is_null()) else {
            return fail(TsStatus::NullPointer, "handle or out_matches is NULL");
        };
        match attack_transcript(&t.inner) {
            Ok(report) => {
                unsafe { *out_matches = report.attack_key_matches.map_or(-1, i32::from) };
                TsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a transcript handle. NULL is ignored.
///
/// # Safety
/// `handle` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_transcript_free(handle: *mut TsTranscript) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Solves `A z = b` over `F_p` with `A` given row-major as `rows x cols`.
/// Free variables are set to zero. `out_solvable` receives whether a
/// solution exists; `z` (length `cols`) is written only when it does.
///
/// # Safety
/// `a` must hold `rows * cols` values, `b` `rows` values and `z` room for
/// `cols` values; `out_solvable` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_gauss_solve(
    p: u64,
    a: *const u32,
    rows: usize,
    cols: usize,
    b: *const u32,
    z: *mut u32,
    out_solvable: *mut bool,
) -> TsStatus {
    guard(|| {
        if a.is_null() || b.is_null() || z.is_null() || out_solvable.is_null() {
            return fail(TsStatus::NullPointer, "a, b, z or out_solvable is NULL");
        }
        let fp = match PrimeField::new(p) {
            Ok(fp) => fp,
            Err(e) => return from_error(e),
        };
        let Some(len) = rows.checked_mul(cols) else {
            return fail(TsStatus::InvalidArgument, "matrix size overflows");
        };
        let entries = unsafe { std::slice::from_raw_parts(a, len) };
        let target = unsafe { std::slice::from_raw_parts(b, rows) };
        let matrix = match FpMatrix::from_rows(entries.chunks(cols.max(1)).map(|r| r.to_vec()).collect()) {
            Ok(m) if rows > 0 && cols > 0 => m,
            Ok(_) => return fail(TsStatus::InvalidArgument, "matrix must be non-empty"),
            Err(e) => return from_error(e),
        };
        match gauss_solve(fp, &matrix, target) {
            Ok(Some(solution)) => {
                unsafe {
                    std::slice::from_raw_parts_mut(z, cols).copy_from_slice(&solution);
                    *out_solvable = true;
                }
                TsStatus::Ok
            }
            Ok(None) => {
                unsafe { *out_solvable = false };
                TsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
