//! C ABI for the verification engine: opaque session handles, JSON in,
//! JSON out, integer error codes.
//!
//! Every returned string is owned by the session (or by the library for
//! session-free calls) and stays valid until the next call on the same
//! handle or `yd_string_free`. All functions are safe to call from any one
//! thread at a time per handle.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ydouble::suite::{self, SuiteConfig};

/// Error codes of the C interface.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum YdStatus {
    /// Success; for `yd_session_run` this also means every check passed.
    Ok = 0,
    /// The suite ran but at least one check failed.
    ChecksFailed = 1,
    /// Invalid configuration or unknown check id.
    ConfigError = 2,
    /// Null pointer or malformed UTF-8 argument.
    BadArgument = 3,
    /// Internal error.
    Internal = 4,
}

/// Opaque verification session: a parsed configuration plus the last report
/// and error message.
pub struct YdSession {
    config: SuiteConfig,
    report_json: Option<CString>,
    last_error: Option<CString>,
}

fn to_cstring(s: &str) -> CString {
    CString::new(s.replace('\0', " ")).unwrap_or_default()
}

/// Creates a session from a JSON configuration string. Returns null on
/// malformed input (use `yd_config_check` to learn why).
///
/// # Safety
/// `config_json` must be a valid NUL-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn yd_session_new(config_json: *const c_char) -> *mut YdSession {
    if config_json.is_null() {
        return ptr::null_mut();
    }
    let Ok(text) = CStr::from_ptr(config_json).to_str() else {
        return ptr::null_mut();
    };
    let Ok(config) = serde_json::from_str::<SuiteConfig>(text) else {
        return ptr::null_mut();
    };
    Box::into_raw(Box::new(YdSession {
        config,
        report_json: None,
        last_error: None,
    }))
}

/// Validates a configuration string without creating a session; writes a
/// diagnostic into `message` (if non-null) on failure.
///
/// # Safety
/// `config_json` must be a valid NUL-terminated C string; `message`, when
/// non-null, must point to a writable pointer slot. A returned message must
/// be freed with `yd_string_free`.
#[no_mangle]
pub unsafe extern "C" fn yd_config_check(
    config_json: *const c_char,
    message: *mut *mut c_char,
) -> YdStatus {
    if !message.is_null() {
        *message = ptr::null_mut();
    }
    if config_json.is_null() {
        return YdStatus::BadArgument;
    }
    let Ok(text) = CStr::from_ptr(config_json).to_str() else {
        return YdStatus::BadArgument;
    };
    let parsed: Result<SuiteConfig, _> = serde_json::from_str(text);
    let err = match parsed {
        Ok(cfg) => match cfg.validate() {
            Ok(()) => return YdStatus::Ok,
            Err(e) => e.to_string(),
        },
        Err(e) => e.to_string(),
    };
    if !message.is_null() {
        *message = to_cstring(&err).into_raw();
    }
    YdStatus::ConfigError
}

/// Runs the configured suite. The report can then be read with
/// `yd_session_report`.
///
/// # Safety
/// `session` must be a live pointer from `yd_session_new`.
#[no_mangle]
pub unsafe extern "C" fn yd_session_run(session: *mut YdSession) -> YdStatus {
    let Some(s) = session.as_mut() else {
        return YdStatus::BadArgument;
    };
    match suite::run_suite(&s.config) {
        Ok(report) => {
            let all_pass = report.all_pass();
            s.report_json = Some(to_cstring(&report.to_json()));
            s.last_error = None;
            if all_pass {
                YdStatus::Ok
            } else {
                YdStatus::ChecksFailed
            }
        }
        Err(e) => {
            s.last_error = Some(to_cstring(&e.to_string()));
            YdStatus::ConfigError
        }
    }
}

/// Returns the last report as JSON, or null when no run has completed. The
/// string is owned by the session.
///
/// # Safety
/// `session` must be a live pointer from `yd_session_new`.
#[no_mangle]
pub unsafe extern "C" fn yd_session_report(session: *const YdSession) -> *const c_char {
    let Some(s) = session.as_ref() else {
        return ptr::null();
    };
    s.report_json
        .as_ref()
        .map(|c| c.as_ptr())
        .unwrap_or(ptr::null())
}

/// Returns the last error message of the session, or null.
///
/// # Safety
/// `session` must be a live pointer from `yd_session_new`.
#[no_mangle]
pub unsafe extern "C" fn yd_session_error(session: *const YdSession) -> *const c_char {
    let Some(s) = session.as_ref() else {
        return ptr::null();
    };
    s.last_error
        .as_ref()
        .map(|c| c.as_ptr())
        .unwrap_or(ptr::null())
}

/// Frees a session and everything it owns.
///
/// # Safety
/// `session` must be null or a pointer from `yd_session_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yd_session_free(session: *mut YdSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// The check catalog as a JSON array (library-owned allocation; free with
/// `yd_string_free`).
#[no_mangle]
pub extern "C" fn yd_catalog_json() -> *mut c_char {
    let catalog = suite::catalog();
    let text = serde_json::to_string_pretty(&catalog).unwrap_or_default();
    to_cstring(&text).into_raw()
}

/// Frees a string returned by `yd_catalog_json` or `yd_config_check`.
///
/// # Safety
/// `s` must be null or a string pointer returned by this library's
/// allocating functions, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn yd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn session_round_trip() {
        let cfg = CString::new(
            r#"{"backend": "exact", "checks": ["heis"],
                "cutoffs": {"e_max": 2, "m_bound": 2, "u_lo": -4, "u_hi": 2,
                            "margin": 0, "k_lo": -1, "k_hi": 1, "h_depth": 3,
                            "gamma_degree": 1},
                "jobs": 1, "seed": 7}"#,
        )
        .unwrap();
        unsafe {
            let s = yd_session_new(cfg.as_ptr());
            assert!(!s.is_null());
            let status = yd_session_run(s);
            assert!(matches!(status, YdStatus::Ok));
            let rep = yd_session_report(s);
            assert!(!rep.is_null());
            let text = CStr::from_ptr(rep).to_str().unwrap();
            assert!(text.contains("\"schema\": 1"));
            assert!(text.contains("heis"));
            yd_session_free(s);
        }
    }

    #[test]
    fn config_errors_are_reported() {
        let bad = CString::new(r#"{"backend": "exact", "checks": ["zz"]}"#).unwrap();
        unsafe {
            let mut msg: *mut c_char = ptr::null_mut();
            let status = yd_config_check(bad.as_ptr(), &mut msg);
            assert!(matches!(status, YdStatus::ConfigError));
            assert!(!msg.is_null());
            let text = CStr::from_ptr(msg).to_str().unwrap().to_owned();
            assert!(text.contains("zz"), "{}", text);
            yd_string_free(msg);
        }
    }

    #[test]
    fn catalog_is_json() {
        let ptr = yd_catalog_json();
        unsafe {
            let text = CStr::from_ptr(ptr).to_str().unwrap();
            let v: serde_json::Value = serde_json::from_str(text).unwrap();
            assert!(v.as_array().unwrap().len() > 20);
            yd_string_free(ptr);
        }
    }

    #[test]
    fn null_safety() {
        unsafe {
            assert!(yd_session_new(ptr::null()).is_null());
            assert!(matches!(
                yd_session_run(ptr::null_mut()),
                YdStatus::BadArgument
            ));
            assert!(yd_session_report(ptr::null()).is_null());
            yd_session_free(ptr::null_mut());
            yd_string_free(ptr::null_mut());
        }
    }
}
