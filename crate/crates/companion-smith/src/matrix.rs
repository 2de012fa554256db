//! Dense matrices over arbitrary-precision integers and the companion-ring
//! construction `f(C_g)`.
//!
//! `f(C_g)` is evaluated without matrix powers: reduce `f` modulo `g`, then
//! read off the rows of the matrix as the canonical representatives of
//! `[t^j f(t)]`, which costs O(n^2) integer operations.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::util::bareiss_determinant;

/// A dense row-major matrix over the integers. 0x0 matrices are valid.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from a row-major entry vector.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Convenience constructor from nested rows.
    pub fn from_rows<R, T>(rows: Vec<R>) -> Self
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        IntMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        Ok(bareiss_determinant(rows))
    }

    /// True iff the determinant is +1 or -1, i.e. the matrix is invertible
    /// over the integers.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.determinant()?.abs().is_one())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

/// The companion matrix of a monic polynomial of degree `n >= 1`: first row
/// `(-g_(n-1), ..., -g_1, -g_0)`, ones on the subdiagonal.
pub fn companion(g: &IntPolynomial) -> Result<IntMatrix> {
    if !g.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let n = g.degree().unwrap();
    if n == 0 {
        return Err(Error::OutOfRange(
            "companion matrix requires deg g >= 1".to_string(),
        ));
    }
    let mut m = IntMatrix::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -g.coeff(n - 1 - j);
    }
    for i in 1..n {
        m[(i, i - 1)] = BigInt::one();
    }
    Ok(m)
}

/// A canonical element of the quotient ring `Z[t]/<g(t)>` for monic `g`:
/// the representative is the remainder of the defining polynomial mod `g`.
#[derive(Clone, PartialEq, Eq)]
pub struct CompanionRingElement {
    modulus: IntPolynomial,
    representative: IntPolynomial,
}

impl CompanionRingElement {
    /// Reduces `f` modulo the monic `modulus` (degree >= 1).
    pub fn new(f: &IntPolynomial, modulus: &IntPolynomial) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        if modulus.degree() == Some(0) {
            return Err(Error::OutOfRange(
                "quotient ring modulus requires deg g >= 1".to_string(),
            ));
        }
        Ok(CompanionRingElement {
            representative: f.rem_monic(modulus)?,
            modulus: modulus.clone(),
        })
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    pub fn representative(&self) -> &IntPolynomial {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    /// Multiplication by `[t]`: shift the representative and fold the
    /// overflowing leading term back with the modulus. O(n).
    pub fn times_t(&self) -> Self {
        let n = self.modulus.degree().unwrap();
        let mut coeffs = vec![BigInt::zero()];
        coeffs.extend(self.representative.coeffs().iter().cloned());
        if coeffs.len() == n + 1 {
            let lead = coeffs.pop().unwrap();
            for (i, c) in coeffs.iter_mut().enumerate() {
                *c -= &lead * &self.modulus.coeff(i);
            }
        }
        CompanionRingElement {
            modulus: self.modulus.clone(),
            representative: IntPolynomial::from_coeffs(coeffs),
        }
    }

    /// The matrix image of this element: row `n - j` (1-based) holds the
    /// coefficients of `[t^j f(t)]` laid out high-to-low, so the bottom row
    /// is `(f_(n-1), ..., f_1, f_0)`.
    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.modulus.degree().unwrap();
        let mut m = IntMatrix::zeros(n, n);
        let mut current = self.clone();
        for j in 0..n {
            let row = n - 1 - j;
            for col in 0..n {
                m[(row, col)] = current.representative.coeff(n - 1 - col);
            }
            if j + 1 < n {
                current = current.times_t();
            }
        }
        m
    }
}

impl std::ops::Add for &CompanionRingElement {
    type Output = CompanionRingElement;
    fn add(self, rhs: &CompanionRingElement) -> CompanionRingElement {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        CompanionRingElement {
            modulus: self.modulus.clone(),
            representative: &self.representative + &rhs.representative,
        }
    }
}

impl Mul for &CompanionRingElement {
    type Output = CompanionRingElement;
    fn mul(self, rhs: &CompanionRingElement) -> CompanionRingElement {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let product = &self.representative * &rhs.representative;
        CompanionRingElement::new(&product, &self.modulus).expect("modulus already validated")
    }
}

/// Evaluates `f(C_g)` for monic `g` of degree `n >= 1` via the quotient-ring
/// isomorphism, in O(n^2) integer operations.
pub fn poly_of_companion(f: &IntPolynomial, g: &IntPolynomial) -> Result<IntMatrix> {
    Ok(CompanionRingElement::new(f, g)?.to_matrix())
}

/// The circulant determined by the coefficient vector `(a_0, ..., a_(n-1))`,
/// i.e. `f(C_g)` with `f = sum a_i t^i` and `g = t^n - 1`. Every row is the
/// cyclic right-shift of the previous one.
pub fn circulant(coeffs: &[BigInt]) -> Result<IntMatrix> {
    let f = IntPolynomial::from_coeffs(coeffs.to_vec());
    let g = nonempty_modulus(coeffs.len(), IntPolynomial::power_minus_one)?;
    poly_of_companion(&f, &g)
}

/// As [`circulant`] but with modulus `t^n + 1` (skew-circulant).
pub fn skew_circulant(coeffs: &[BigInt]) -> Result<IntMatrix> {
    let f = IntPolynomial::from_coeffs(coeffs.to_vec());
    let g = nonempty_modulus(coeffs.len(), IntPolynomial::power_plus_one)?;
    poly_of_companion(&f, &g)
}

/// Lower triangular Toeplitz matrix with the given first column, i.e.
/// `f(C_g)` with modulus `t^n`.
pub fn lower_toeplitz(first_col: &[BigInt]) -> Result<IntMatrix> {
    let f = IntPolynomial::from_coeffs(first_col.to_vec());
    let g = nonempty_modulus(first_col.len(), IntPolynomial::monomial)?;
    poly_of_companion(&f, &g)
}

fn nonempty_modulus(
    n: usize,
    build: impl Fn(usize) -> IntPolynomial,
) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::OutOfRange(
            "structured matrix requires a nonempty first row".to_string(),
        ));
    }
    Ok(build(n))
}

impl fmt::Display for IntMatrix {
    /// Text format: first line `rows cols`, then one whitespace-separated
    /// row of decimal integers per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f)?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[{} {}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty matrix input"))?;
        let mut header_tokens = tokens_with_columns(header);
        let rows = parse_dimension(header_tokens.next(), 1, "row count")?;
        let cols = parse_dimension(header_tokens.next(), 1, "column count")?;
        if let Some((col, tok)) = header_tokens.next() {
            return Err(Error::parse(
                1,
                col,
                format!("unexpected token `{tok}` after dimensions"),
            ));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let (line_idx, line) = lines.next().ok_or_else(|| {
                Error::parse(i + 1, 1, format!("missing row {} of {rows}", i + 1))
            })?;
            let line_no = line_idx + 1;
            let mut count = 0;
            for (col, tok) in tokens_with_columns(line) {
                if count == cols {
                    return Err(Error::parse(
                        line_no,
                        col,
                        format!("row has more than {cols} entries"),
                    ));
                }
                let value = BigInt::from_str(tok).map_err(|_| {
                    Error::parse(line_no, col, format!("invalid integer `{tok}`"))
                })?;
                entries.push(value);
                count += 1;
            }
            if count < cols {
                return Err(Error::parse(
                    line_no,
                    line.len() + 1,
                    format!("row has {count} entries, expected {cols}"),
                ));
            }
        }
        for (line_idx, line) in lines {
            if let Some((col, tok)) = tokens_with_columns(line).next() {
                return Err(Error::parse(
                    line_idx + 1,
                    col,
                    format!("unexpected trailing token `{tok}`"),
                ));
            }
        }
        Ok(IntMatrix::new(rows, cols, entries))
    }
}

fn parse_dimension(
    token: Option<(usize, &str)>,
    line: usize,
    what: &str,
) -> Result<usize> {
    let (col, tok) = token.ok_or_else(|| Error::parse(line, 1, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, col, format!("invalid {what} `{tok}`")))
}

fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (offset + 1, tok)
    })
}
