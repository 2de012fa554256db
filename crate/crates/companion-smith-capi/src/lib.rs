//! C ABI for the `companion-smith` exact linear algebra library.
//!
//! Every object crosses the boundary as an opaque handle; fallible calls
//! return a [`CsStatus`] and write their result through an out-pointer.
//! Arbitrary-precision values are exchanged as decimal strings, which the
//! caller releases with [`cs_string_free`]. The matching header is
//! generated into `include/companion_smith.h` at build time.
//!
//! Pointer contract, for every function here: handle arguments must be
//! null or values previously returned by this library that have not been
//! freed; text arguments must be null or NUL-terminated; out-pointers must
//! be null or writable. Null never crashes, it reports `NullArgument` or
//! returns null/zero.
#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr, CString};

use companion_smith::cli::{group_json, smith_json};
use companion_smith::matrix::{companion, poly_of_companion};
use companion_smith::smith::smith_form;
use companion_smith::structured::{
    cyclotomic_companion_smith, smith_via_reduction, torus_circulant_smith,
};
use companion_smith::topology::brieskorn_homology;
use companion_smith::{AbelianGroup, Error, IntMatrix, IntPolynomial, SmithDecomposition};

/// Status code returned by every fallible `cs_*` function.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NonMonicDivisor = 4,
    DivisionByZeroPolynomial = 5,
    OutOfRange = 6,
    NotSquare = 7,
    TooLarge = 8,
    InvalidDivisorChain = 9,
    AllZeroMatrix = 10,
    ResultantsNotCoprime = 11,
    NotCoprime = 12,
}

impl From<&Error> for CsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NonMonicDivisor => CsStatus::NonMonicDivisor,
            Error::DivisionByZeroPolynomial => CsStatus::DivisionByZeroPolynomial,
            Error::OutOfRange(_) => CsStatus::OutOfRange,
            Error::NotSquare { .. } => CsStatus::NotSquare,
            Error::TooLarge { .. } => CsStatus::TooLarge,
            Error::InvalidDivisorChain(_) => CsStatus::InvalidDivisorChain,
            Error::AllZeroMatrix => CsStatus::AllZeroMatrix,
            Error::ResultantsNotCoprime { .. } => CsStatus::ResultantsNotCoprime,
            Error::NotCoprime { .. } => CsStatus::NotCoprime,
            Error::Parse { .. } => CsStatus::ParseError,
        }
    }
}

/// Opaque handle to an integer polynomial.
pub struct CsPolynomial(IntPolynomial);

/// Opaque handle to a dense integer matrix.
pub struct CsMatrix(IntMatrix);

/// Opaque handle to a Smith decomposition.
pub struct CsSmith(SmithDecomposition);

/// Opaque handle to a finitely generated abelian group in canonical form.
pub struct CsGroup(AbelianGroup);

fn into_string(text: String) -> *mut c_char {
    CString::new(text)
        .expect("library strings contain no NUL")
        .into_raw()
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, CsStatus> {
    if text.is_null() {
        return Err(CsStatus::NullArgument);
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| CsStatus::InvalidUtf8)
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> CsStatus {
    if out.is_null() {
        return CsStatus::NullArgument;
    }
    *out = Box::into_raw(Box::new(value));
    CsStatus::Ok
}

macro_rules! try_ffi {
    ($expr:expr) => {
        match $expr {
            Ok(value) => value,
            Err(e) => return CsStatus::from(&e),
        }
    };
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static name of a status code; do not free.
#[no_mangle]
pub extern "C" fn cs_status_name(status: CsStatus) -> *const c_char {
    let name: &'static str = match status {
        CsStatus::Ok => "ok\0",
        CsStatus::NullArgument => "null argument\0",
        CsStatus::InvalidUtf8 => "invalid utf-8\0",
        CsStatus::ParseError => "parse error\0",
        CsStatus::NonMonicDivisor => "non-monic divisor\0",
        CsStatus::DivisionByZeroPolynomial => "division by zero polynomial\0",
        CsStatus::OutOfRange => "out of range\0",
        CsStatus::NotSquare => "not square\0",
        CsStatus::TooLarge => "too large\0",
        CsStatus::InvalidDivisorChain => "invalid divisor chain\0",
        CsStatus::AllZeroMatrix => "all-zero matrix\0",
        CsStatus::ResultantsNotCoprime => "resultants not coprime\0",
        CsStatus::NotCoprime => "not coprime\0",
    };
    name.as_ptr() as *const c_char
}

/// Frees a string returned by any `cs_*` function.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial from either a comma-separated coefficient list
/// (low-to-high) or a human string like `t^3 - 1`.
#[no_mangle]
pub unsafe extern "C" fn cs_polynomial_parse(
    text: *const c_char,
    out: *mut *mut CsPolynomial,
) -> CsStatus {
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let poly: IntPolynomial = try_ffi!(text.parse());
    write_out(out, CsPolynomial(poly))
}

/// Renders a polynomial as a human string with descending powers.
#[no_mangle]
pub unsafe extern "C" fn cs_polynomial_format(p: *const CsPolynomial) -> *mut c_char {
    if p.is_null() {
        return std::ptr::null_mut();
    }
    into_string((*p).0.to_string())
}

#[no_mangle]
pub unsafe extern "C" fn cs_polynomial_free(p: *mut CsPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses a matrix in the text format: a `rows cols` header line, then one
/// whitespace-separated row of decimal integers per line.
#[no_mangle]
pub unsafe extern "C" fn cs_matrix_parse(
    text: *const c_char,
    out: *mut *mut CsMatrix,
) -> CsStatus {
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let matrix: IntMatrix = try_ffi!(text.parse());
    write_out(out, CsMatrix(matrix))
}

/// Renders a matrix in the same text format that [`cs_matrix_parse`] reads.
#[no_mangle]
pub unsafe extern "C" fn cs_matrix_format(m: *const CsMatrix) -> *mut c_char {
    if m.is_null() {
        return std::ptr::null_mut();
    }
    into_string((*m).0.to_string())
}

#[no_mangle]
pub unsafe extern "C" fn cs_matrix_rows(m: *const CsMatrix) -> usize {
    if m.is_null() {
        0
    } else {
        (*m).0.rows()
    }
}

#[no_mangle]
pub unsafe extern "C" fn cs_matrix_cols(m: *const CsMatrix) -> usize {
    if m.is_null() {
        0
    } else {
        (*m).0.cols()
    }
}

/// Entry (i, j) as a decimal string, or null when out of bounds.
#[no_mangle]
pub unsafe extern "C" fn cs_matrix_entry(m: *const CsMatrix, i: usize, j: usize) -> *mut c_char {
    if m.is_null() || i >= (*m).0.rows() || j >= (*m).0.cols() {
        return std::ptr::null_mut();
    }
    into_string((&(*m).0)[(i, j)].to_string())
}

#[no_mangle]
pub unsafe extern "C" fn cs_matrix_free(m: *mut CsMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Companion matrix of a monic polynomial of degree >= 1.
#[no_mangle]
pub unsafe extern "C" fn cs_companion(
    g: *const CsPolynomial,
    out: *mut *mut CsMatrix,
) -> CsStatus {
    if g.is_null() {
        return CsStatus::NullArgument;
    }
    let matrix = try_ffi!(companion(&(*g).0));
    write_out(out, CsMatrix(matrix))
}

/// Evaluates `f(C_g)` for monic `g` of degree >= 1.
#[no_mangle]
pub unsafe extern "C" fn cs_polynomial_of_companion(
    f: *const CsPolynomial,
    g: *const CsPolynomial,
    out: *mut *mut CsMatrix,
) -> CsStatus {
    if f.is_null() || g.is_null() {
        return CsStatus::NullArgument;
    }
    let matrix = try_ffi!(poly_of_companion(&(*f).0, &(*g).0));
    write_out(out, CsMatrix(matrix))
}

/// Exact determinant of a square matrix, as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn cs_matrix_determinant(
    m: *const CsMatrix,
    out: *mut *mut c_char,
) -> CsStatus {
    if m.is_null() || out.is_null() {
        return CsStatus::NullArgument;
    }
    let det = try_ffi!((*m).0.determinant());
    *out = into_string(det.to_string());
    CsStatus::Ok
}

/// Smith normal form; transforms are tracked when `with_transforms` is set.
#[no_mangle]
pub unsafe extern "C" fn cs_smith_form(
    m: *const CsMatrix,
    with_transforms: bool,
    out: *mut *mut CsSmith,
) -> CsStatus {
    if m.is_null() {
        return CsStatus::NullArgument;
    }
    write_out(out, CsSmith(smith_form(&(*m).0, with_transforms)))
}

/// Smith form of `f(C_g)` through the gcd-reduction fast path.
#[no_mangle]
pub unsafe extern "C" fn cs_smith_via_reduction(
    f: *const CsPolynomial,
    g: *const CsPolynomial,
    out: *mut *mut CsSmith,
) -> CsStatus {
    if f.is_null() || g.is_null() {
        return CsStatus::NullArgument;
    }
    let decomposition = try_ffi!(smith_via_reduction(&(*f).0, &(*g).0));
    write_out(out, CsSmith(decomposition))
}

/// Closed-form Smith form of `Phi_m(C_(Phi_n))` for `m >= n >= 1`.
#[no_mangle]
pub unsafe extern "C" fn cs_cyclotomic_companion_smith(
    m: u64,
    n: u64,
    out: *mut *mut CsSmith,
) -> CsStatus {
    let decomposition = try_ffi!(cyclotomic_companion_smith(m, n));
    write_out(out, CsSmith(decomposition))
}

/// Closed-form Smith form of the `n x n` circulant of the Alexander
/// polynomial of the torus knot `K(r, s)`, for coprime `r, s >= 2`, `n >= 2`.
#[no_mangle]
pub unsafe extern "C" fn cs_torus_circulant_smith(
    r: u64,
    s: u64,
    n: u64,
    out: *mut *mut CsSmith,
) -> CsStatus {
    let decomposition = try_ffi!(torus_circulant_smith(r, s, n));
    write_out(out, CsSmith(decomposition))
}

#[no_mangle]
pub unsafe extern "C" fn cs_smith_factor_count(s: *const CsSmith) -> usize {
    if s.is_null() {
        0
    } else {
        (*s).0.invariant_factors().len()
    }
}

#[no_mangle]
pub unsafe extern "C" fn cs_smith_rank(s: *const CsSmith) -> usize {
    if s.is_null() {
        0
    } else {
        (*s).0.rank()
    }
}

/// Invariant factor at `index` as a decimal string, or null out of range.
#[no_mangle]
pub unsafe extern "C" fn cs_smith_factor(s: *const CsSmith, index: usize) -> *mut c_char {
    if s.is_null() {
        return std::ptr::null_mut();
    }
    match (*s).0.invariant_factors().get(index) {
        Some(f) => into_string(f.to_string()),
        None => std::ptr::null_mut(),
    }
}

/// Left unimodular transform, when one was computed.
#[no_mangle]
pub unsafe extern "C" fn cs_smith_left_transform(
    s: *const CsSmith,
    out: *mut *mut CsMatrix,
) -> CsStatus {
    if s.is_null() {
        return CsStatus::NullArgument;
    }
    match (*s).0.left_transform() {
        Some(m) => write_out(out, CsMatrix(m.clone())),
        None => CsStatus::OutOfRange,
    }
}

/// Right unimodular transform, when one was computed.
#[no_mangle]
pub unsafe extern "C" fn cs_smith_right_transform(
    s: *const CsSmith,
    out: *mut *mut CsMatrix,
) -> CsStatus {
    if s.is_null() {
        return CsStatus::NullArgument;
    }
    match (*s).0.right_transform() {
        Some(m) => write_out(out, CsMatrix(m.clone())),
        None => CsStatus::OutOfRange,
    }
}

/// The decomposition as the stable JSON document
/// `{"invariant_factors": [...], "rank": k, "left": ?, "right": ?}`.
#[no_mangle]
pub unsafe extern "C" fn cs_smith_to_json(s: *const CsSmith) -> *mut c_char {
    if s.is_null() {
        return std::ptr::null_mut();
    }
    into_string(smith_json(&(*s).0).to_string())
}

#[no_mangle]
pub unsafe extern "C" fn cs_smith_free(s: *mut CsSmith) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// First homology of the Brieskorn manifold `M(r, s, n)` with `r, s`
/// coprime, as a canonical abelian group.
#[no_mangle]
pub unsafe extern "C" fn cs_brieskorn_homology(
    r: u64,
    s: u64,
    n: u64,
    out: *mut *mut CsGroup,
) -> CsStatus {
    let group = try_ffi!(brieskorn_homology(r, s, n));
    write_out(out, CsGroup(group))
}

#[no_mangle]
pub unsafe extern "C" fn cs_group_betti(g: *const CsGroup) -> usize {
    if g.is_null() {
        0
    } else {
        (*g).0.betti()
    }
}

#[no_mangle]
pub unsafe extern "C" fn cs_group_torsion_count(g: *const CsGroup) -> usize {
    if g.is_null() {
        0
    } else {
        (*g).0.torsion().len()
    }
}

/// Torsion coefficient at `index` as a decimal string, or null out of range.
#[no_mangle]
pub unsafe extern "C" fn cs_group_torsion(g: *const CsGroup, index: usize) -> *mut c_char {
    if g.is_null() {
        return std::ptr::null_mut();
    }
    match (*g).0.torsion().get(index) {
        Some(t) => into_string(t.to_string()),
        None => std::ptr::null_mut(),
    }
}

/// Human rendering, e.g. `Z_2^2 + Z^2`, or `trivial`.
#[no_mangle]
pub unsafe extern "C" fn cs_group_format(g: *const CsGroup) -> *mut c_char {
    if g.is_null() {
        return std::ptr::null_mut();
    }
    into_string((*g).0.to_string())
}

/// The group as the JSON document `{"torsion": [...], "betti": k}`.
#[no_mangle]
pub unsafe extern "C" fn cs_group_to_json(g: *const CsGroup) -> *mut c_char {
    if g.is_null() {
        return std::ptr::null_mut();
    }
    into_string(group_json(&(*g).0).to_string())
}

#[no_mangle]
pub unsafe extern "C" fn cs_group_free(g: *mut CsGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}
