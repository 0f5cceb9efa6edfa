//! C interface to the classifier.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Every fallible call returns a
//! [`ChardegStatus`]; on failure [`chardeg_last_error`] describes the
//! problem on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chardeg::classifier::{verify_certificate, EngineConfig, Session, Verdict, Verification};
use chardeg::cli::{parse_graph_file, serialize_graph, CertificateDocument};
use chardeg::families::{gamma, FamilySpec};
use chardeg::graph::Graph;
use chardeg::rules::{EdgeFamily, SylowConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChardegStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Classify = 5,
    Document = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChardegVerdictKind {
    Occurs = 0,
    NotOccurs = 1,
    Unknown = 2,
}

pub struct ChardegGraph(Graph);

pub struct ChardegSession(Session);

/// A verdict together with the graph it was computed for.
pub struct ChardegVerdict {
    graph: Graph,
    verdict: Verdict,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(ChardegStatus, String);

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ChardegStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            ChardegStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&format!("internal error: {msg}"));
            ChardegStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ChardegStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(ChardegStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the most recent failed call on this thread, or an empty
/// string. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn chardeg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn chardeg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph in the `v NAME` / `e NAME NAME` text format.
///
/// # Safety
/// `source` is a NUL-terminated string; `out_graph` is writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_graph_parse(source: *const c_char, out_graph: *mut *mut ChardegGraph) -> ChardegStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        let g = parse_graph_file(text(source, "source")?).map_err(|e| Failure(ChardegStatus::Parse, e.to_string()))?;
        *slot = Box::into_raw(Box::new(ChardegGraph(g)));
        Ok(())
    })
}

/// Builds the two-clique family member with cliques of sizes `k` and `t`
/// joined by a matching of size `min(k, t)`.
///
/// # Safety
/// `out_graph` is writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_graph_gamma(k: usize, t: usize, out_graph: *mut *mut ChardegGraph) -> ChardegStatus {
    guard(|| {
        let slot = out(out_graph, "out_graph")?;
        let spec = FamilySpec::new(k, t).map_err(|e| Failure(ChardegStatus::InvalidArgument, e.to_string()))?;
        *slot = Box::into_raw(Box::new(ChardegGraph(gamma(spec))));
        Ok(())
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` is null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn chardeg_graph_order(graph: *const ChardegGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.order())
}

/// The graph in the text format accepted by [`chardeg_graph_parse`].
///
/// # Safety
/// `graph` is a live graph handle; `out_text` is writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_graph_to_text(graph: *const ChardegGraph, out_text: *mut *mut c_char) -> ChardegStatus {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = owned_string(serialize_graph(&handle(graph, "graph")?.0));
        Ok(())
    })
}

/// # Safety
/// `graph` is null or a live graph handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chardeg_graph_free(graph: *mut ChardegGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// A session with the default engine settings.
///
/// # Safety
/// `out_session` is writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_session_new(out_session: *mut *mut ChardegSession) -> ChardegStatus {
    guard(|| {
        let slot = out(out_session, "out_session")?;
        *slot = Box::into_raw(Box::new(ChardegSession(Session::default())));
        Ok(())
    })
}

/// A session with explicit Sylow branching limits. `narrow_edges` selects
/// the smaller edge family.
///
/// # Safety
/// `out_session` is writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_session_new_with(
    max_branches: u64,
    max_depth: usize,
    narrow_edges: bool,
    out_session: *mut *mut ChardegSession,
) -> ChardegStatus {
    guard(|| {
        let slot = out(out_session, "out_session")?;
        let config = EngineConfig {
            sylow: SylowConfig {
                max_branches,
                max_depth,
                edge_family: if narrow_edges { EdgeFamily::Narrow } else { EdgeFamily::Broad },
            },
            ..EngineConfig::default()
        };
        *slot = Box::into_raw(Box::new(ChardegSession(Session::new(config))));
        Ok(())
    })
}

/// Adds the results in a certificate document, or a JSON array of them,
/// to the session's knowledge base. Each certificate is checked first; one
/// bad entry rejects the whole call and leaves earlier entries in place.
///
/// # Safety
/// `session` is a live session handle; `json` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn chardeg_session_seed_json(session: *mut ChardegSession, json: *const c_char) -> ChardegStatus {
    guard(|| {
        let session = &mut out(session, "session")?.0;
        let docs = CertificateDocument::many_from_json(text(json, "json")?)
            .map_err(|e| Failure(ChardegStatus::Document, e.to_string()))?;
        for (i, doc) in docs.iter().enumerate() {
            let bad = |msg: String| Failure(ChardegStatus::Document, format!("entry {}: {msg}", i + 1));
            let verdict = doc.verdict().map_err(|e| bad(e.to_string()))?;
            if let Verification::Invalid(reason) = verify_certificate(&doc.graph, &verdict) {
                return Err(bad(format!("certificate rejected: {reason}")));
            }
            session.seed_verified(&doc.graph, &verdict).map_err(|e| bad(e.to_string()))?;
        }
        Ok(())
    })
}

/// # Safety
/// `session` is null or a live session handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chardeg_session_free(session: *mut ChardegSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Classifies `graph`. The verdict handle keeps its own copy of the graph.
///
/// # Safety
/// `session` and `graph` are live handles; `out_verdict` is writable. A
/// session must not be used from two threads at once.
#[no_mangle]
pub unsafe extern "C" fn chardeg_classify(
    session: *mut ChardegSession,
    graph: *const ChardegGraph,
    out_verdict: *mut *mut ChardegVerdict,
) -> ChardegStatus {
    guard(|| {
        let session = &mut out(session, "session")?.0;
        let g = &handle(graph, "graph")?.0;
        let slot = out(out_verdict, "out_verdict")?;
        let verdict = session
            .classify(g)
            .map_err(|e| Failure(ChardegStatus::Classify, e.to_string()))?;
        *slot = Box::into_raw(Box::new(ChardegVerdict { graph: g.clone(), verdict }));
        Ok(())
    })
}

/// # Safety
/// `verdict` is a live verdict handle; `out_kind` is writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_verdict_kind(verdict: *const ChardegVerdict, out_kind: *mut ChardegVerdictKind) -> ChardegStatus {
    guard(|| {
        let slot = out(out_kind, "out_kind")?;
        *slot = match handle(verdict, "verdict")?.verdict {
            Verdict::Occurs(_) => ChardegVerdictKind::Occurs,
            Verdict::NotOccurs(_) => ChardegVerdictKind::NotOccurs,
            Verdict::Unknown(_) => ChardegVerdictKind::Unknown,
        };
        Ok(())
    })
}

/// The rule or witness tag, e.g. `all_admissible` or `direct_product`.
///
/// # Safety
/// `verdict` is a live verdict handle; `out_rule` is writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_verdict_rule(verdict: *const ChardegVerdict, out_rule: *mut *mut c_char) -> ChardegStatus {
    guard(|| {
        let slot = out(out_rule, "out_rule")?;
        *slot = owned_string(handle(verdict, "verdict")?.verdict.rule().to_string());
        Ok(())
    })
}

/// The certificate document, the same bytes `chardeg classify --json`
/// prints.
///
/// # Safety
/// `verdict` is a live verdict handle; `out_json` is writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_verdict_to_json(verdict: *const ChardegVerdict, out_json: *mut *mut c_char) -> ChardegStatus {
    guard(|| {
        let slot = out(out_json, "out_json")?;
        let v = handle(verdict, "verdict")?;
        *slot = owned_string(CertificateDocument::new(&v.graph, &v.verdict).to_json());
        Ok(())
    })
}

/// # Safety
/// `verdict` is null or a live verdict handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chardeg_verdict_free(verdict: *mut ChardegVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

fn same_labeled_graph(a: &Graph, b: &Graph) -> bool {
    let mut x = a.names().to_vec();
    let mut y = b.names().to_vec();
    x.sort();
    y.sort();
    x == y && a.edge_names() == b.edge_names()
}

/// Checks a certificate document without consulting any knowledge base.
/// When `graph` is not null the document must also be about that exact
/// graph. On return `*out_valid` says whether it checked out; if not and
/// `out_reason` is not null, `*out_reason` receives an owned explanation.
///
/// # Safety
/// `json` is a NUL-terminated string; `graph` is null or a live handle;
/// `out_valid` is writable; `out_reason` is null or writable.
#[no_mangle]
pub unsafe extern "C" fn chardeg_verify_json(
    json: *const c_char,
    graph: *const ChardegGraph,
    out_valid: *mut bool,
    out_reason: *mut *mut c_char,
) -> ChardegStatus {
    guard(|| {
        let valid = out(out_valid, "out_valid")?;
        let doc = CertificateDocument::from_json(text(json, "json")?)
            .map_err(|e| Failure(ChardegStatus::Document, e.to_string()))?;
        let verdict = doc.verdict().map_err(|e| Failure(ChardegStatus::Document, e.to_string()))?;
        let reason = match graph.as_ref() {
            Some(g) if !same_labeled_graph(&g.0, &doc.graph) => Some("document describes a different graph".to_string()),
            _ => match verify_certificate(&doc.graph, &verdict) {
                Verification::Valid => None,
                Verification::Invalid(r) => Some(r),
            },
        };
        *valid = reason.is_none();
        if let Some(slot) = out_reason.as_mut() {
            *slot = reason.map_or(ptr::null_mut(), owned_string);
        }
        Ok(())
    })
}
