//! C interface to `primeage`.
//!
//! Graphs and words are opaque handles created by `primeage_*_new`-style
//! constructors and released with the matching `_free`. Every function
//! returns a [`PrimeageStatus`]; results are written through out-pointers.
//! On failure, `primeage_last_error` gives a description of the most recent
//! error on the calling thread.
//!
//! Strings are returned into caller buffers. When the buffer is too small the
//! call returns `PRIMEAGE_STATUS_BUFFER_TOO_SMALL` and stores the required
//! size, terminating NUL included, in `*needed`.

use primeage::graph::{canonical_key, embeds, from_graph6, to_graph6};
use primeage::prime::is_prime;
use primeage::realizer::{build_realizer, validate_realizer};
use primeage::word_graph::{graph_of_letters, graph_of_word};
use primeage::words::{mechanical_word, to_ascii, Ratio, Slope, Word};
use primeage::{Error, Graph};
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeageStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    TooLarge = 3,
    BufferTooSmall = 4,
    Invariant = 5,
    Panic = 6,
}

/// Opaque graph handle.
pub struct PrimeageGraph {
    inner: Graph,
}

/// Opaque word handle.
pub struct PrimeageWord {
    inner: Word,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> PrimeageStatus {
    match e {
        Error::TooLarge { .. } | Error::PatternTooLarge { .. } => PrimeageStatus::TooLarge,
        Error::Invariant(_) => PrimeageStatus::Invariant,
        _ => PrimeageStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F>(f: F) -> PrimeageStatus
where
    F: FnOnce() -> Result<(), PrimeageStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PrimeageStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside primeage".into());
            PrimeageStatus::Panic
        }
    }
}

fn fail(e: Error) -> PrimeageStatus {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn null(what: &str) -> PrimeageStatus {
    set_error(format!("{what} is null"));
    PrimeageStatus::NullPointer
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, PrimeageStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, PrimeageStatus> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, PrimeageStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not UTF-8"));
        PrimeageStatus::InvalidArgument
    })
}

unsafe fn write_str(
    s: &str,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> Result<(), PrimeageStatus> {
    let needed = out(needed, "needed")?;
    *needed = s.len() + 1;
    // The last error is left alone so that it can itself be read in two calls.
    if buf.is_null() || cap < s.len() + 1 {
        return Err(PrimeageStatus::BufferTooSmall);
    }
    std::ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

fn boxed_graph(g: Graph) -> *mut PrimeageGraph {
    Box::into_raw(Box::new(PrimeageGraph { inner: g }))
}

/// Copies the last error message of this thread into `buf`.
///
/// # Safety
/// `buf` must point to `cap` writable bytes (or be null with `cap` 0) and
/// `needed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_last_error(
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PrimeageStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    guard(|| write_str(&msg, buf, cap, needed))
}

/// Edgeless graph on `n` vertices.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_new(
    n: usize,
    result: *mut *mut PrimeageGraph,
) -> PrimeageStatus {
    guard(|| {
        *out(result, "result")? = boxed_graph(Graph::new(n));
        Ok(())
    })
}

/// Parses a NUL-terminated graph6 string.
///
/// # Safety
/// `graph6` must be a valid C string and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_from_graph6(
    graph6: *const c_char,
    result: *mut *mut PrimeageGraph,
) -> PrimeageStatus {
    guard(|| {
        let g = from_graph6(text(graph6, "graph6")?).map_err(fail)?;
        *out(result, "result")? = boxed_graph(g);
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_free(g: *mut PrimeageGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_add_edge(
    g: *mut PrimeageGraph,
    u: usize,
    v: usize,
) -> PrimeageStatus {
    guard(|| out(g, "graph")?.inner.add_edge(u, v).map_err(fail))
}

/// # Safety
/// `g` must be a live graph handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_order(
    g: *const PrimeageGraph,
    result: *mut usize,
) -> PrimeageStatus {
    guard(|| {
        *out(result, "result")? = deref(g, "graph")?.inner.order();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live graph handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_has_edge(
    g: *const PrimeageGraph,
    u: usize,
    v: usize,
    result: *mut bool,
) -> PrimeageStatus {
    guard(|| {
        let g = &deref(g, "graph")?.inner;
        if u >= g.order() || v >= g.order() {
            return Err(fail(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: g.order(),
            }));
        }
        *out(result, "result")? = g.has_edge(u, v);
        Ok(())
    })
}

/// New graph holding the complement of `g`.
///
/// # Safety
/// `g` must be a live graph handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_complement(
    g: *const PrimeageGraph,
    result: *mut *mut PrimeageGraph,
) -> PrimeageStatus {
    guard(|| {
        let c = deref(g, "graph")?.inner.complement();
        *out(result, "result")? = boxed_graph(c);
        Ok(())
    })
}

/// graph6 encoding of `g`.
///
/// # Safety
/// `g` must be a live graph handle, `buf` must point to `cap` writable bytes
/// and `needed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_to_graph6(
    g: *const PrimeageGraph,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PrimeageStatus {
    guard(|| write_str(&to_graph6(&deref(g, "graph")?.inner), buf, cap, needed))
}

/// Isomorphism invariant key: equal keys iff isomorphic. At most 64 vertices.
///
/// # Safety
/// As for [`primeage_graph_to_graph6`].
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_canonical_key(
    g: *const PrimeageGraph,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PrimeageStatus {
    guard(|| {
        let key = canonical_key(&deref(g, "graph")?.inner).map_err(fail)?;
        write_str(key.as_str(), buf, cap, needed)
    })
}

/// Whether `g` has no module other than the empty set, singletons and the
/// whole vertex set. At most 64 vertices.
///
/// # Safety
/// `g` must be a live graph handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_is_prime(
    g: *const PrimeageGraph,
    result: *mut bool,
) -> PrimeageStatus {
    guard(|| {
        *out(result, "result")? = is_prime(&deref(g, "graph")?.inner).map_err(fail)?;
        Ok(())
    })
}

/// Whether `pattern` is isomorphic to an induced subgraph of `host`.
///
/// # Safety
/// Both handles must be live and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_graph_embeds(
    pattern: *const PrimeageGraph,
    host: *const PrimeageGraph,
    result: *mut bool,
) -> PrimeageStatus {
    guard(|| {
        let (p, h) = (
            &deref(pattern, "pattern")?.inner,
            &deref(host, "host")?.inner,
        );
        *out(result, "result")? = embeds(p, h);
        Ok(())
    })
}

fn boxed_word(w: Word) -> *mut PrimeageWord {
    Box::into_raw(Box::new(PrimeageWord { inner: w }))
}

/// The Fibonacci word.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_word_fibonacci(result: *mut *mut PrimeageWord) -> PrimeageStatus {
    guard(|| {
        *out(result, "result")? = boxed_word(Word::fibonacci());
        Ok(())
    })
}

/// A finite word from a string of `0` and `1` characters.
///
/// # Safety
/// `bits` must be a valid C string and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_word_from_bits(
    bits: *const c_char,
    result: *mut *mut PrimeageWord,
) -> PrimeageStatus {
    guard(|| {
        let w = Word::explicit(text(bits, "bits")?).map_err(fail)?;
        *out(result, "result")? = boxed_word(w);
        Ok(())
    })
}

/// `head` followed by `period` repeated forever. `head` may be empty.
///
/// # Safety
/// Both strings must be valid C strings and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_word_periodic(
    head: *const c_char,
    period: *const c_char,
    result: *mut *mut PrimeageWord,
) -> PrimeageStatus {
    guard(|| {
        let w = Word::eventually_periodic(text(head, "head")?, text(period, "period")?)
            .map_err(fail)?;
        *out(result, "result")? = boxed_word(w);
        Ok(())
    })
}

/// Mechanical word with slope `num/den` and intercept `inum/iden`.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_word_mechanical(
    num: i64,
    den: i64,
    inum: i64,
    iden: i64,
    result: *mut *mut PrimeageWord,
) -> PrimeageStatus {
    guard(|| {
        let slope = Ratio::new(num, den).map_err(fail)?;
        let intercept = Ratio::new(inum, iden).map_err(fail)?;
        let w = mechanical_word(Slope::Rational(slope), intercept).map_err(fail)?;
        *out(result, "result")? = boxed_word(w);
        Ok(())
    })
}

/// Releases a word. Null is ignored.
///
/// # Safety
/// `w` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn primeage_word_free(w: *mut PrimeageWord) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// The first `len` letters as `0`/`1` characters.
///
/// # Safety
/// `w` must be a live word handle, `buf` must point to `cap` writable bytes
/// and `needed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_word_prefix(
    w: *const PrimeageWord,
    len: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> PrimeageStatus {
    guard(|| {
        let p = deref(w, "word")?.inner.prefix(len).map_err(fail)?;
        write_str(&to_ascii(&p), buf, cap, needed)
    })
}

/// Graph of the first `len` letters: vertex `i` carries label `i - 1`.
///
/// # Safety
/// `w` must be a live word handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_word_graph(
    w: *const PrimeageWord,
    len: usize,
    result: *mut *mut PrimeageGraph,
) -> PrimeageStatus {
    guard(|| {
        let g = graph_of_word(&deref(w, "word")?.inner, len).map_err(fail)?;
        *out(result, "result")? = boxed_graph(g);
        Ok(())
    })
}

/// Builds two linear orders for the graph of a finite word and checks that
/// their intersection is a transitive orientation of that graph.
///
/// # Safety
/// `bits` must be a valid C string and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn primeage_realizer_validates(
    bits: *const c_char,
    result: *mut bool,
) -> PrimeageStatus {
    guard(|| {
        let letters = primeage::words::from_ascii(text(bits, "bits")?).map_err(fail)?;
        let r = build_realizer(&letters).map_err(fail)?;
        *out(result, "result")? =
            validate_realizer(&r, &graph_of_letters(&letters)).map_err(fail)?;
        Ok(())
    })
}
