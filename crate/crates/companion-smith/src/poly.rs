//! Exact univariate polynomial arithmetic over the integers.
//!
//! Polynomials are stored as dense coefficient vectors in canonical form:
//! the highest stored coefficient is nonzero and the zero polynomial is the
//! empty vector. All arithmetic is exact; division is only offered against
//! monic divisors, where integrality of the results is guaranteed.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::util::{bareiss_determinant, divisors, exact_div};

/// A polynomial in `Z[t]`, dense, canonical (no trailing zero coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    /// A constant polynomial.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPolynomial::from_coeffs([c.into()])
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// `t^n - 1`.
    pub fn power_minus_one(n: usize) -> Self {
        &IntPolynomial::monomial(n) - &IntPolynomial::one()
    }

    /// `t^n + 1`.
    pub fn power_plus_one(n: usize) -> Self {
        &IntPolynomial::monomial(n) + &IntPolynomial::one()
    }

    /// Builds a polynomial from coefficients, index `i` holding the
    /// coefficient of `t^i`. Trailing zeros are trimmed.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Coefficients low-to-high, canonical (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree; `None` is the degree of the zero polynomial and sorts below
    /// every other degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, if nonzero.
    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// True iff the leading coefficient is exactly 1.
    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Evaluation at an integer point (Horner).
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self^exp` by repeated multiplication.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = IntPolynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `t -> t^k`, spreading the coefficients. Requires `k >= 1`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1, "compose_power requires k >= 1");
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let deg = self.coeffs.len() - 1;
        let mut coeffs = vec![BigInt::zero(); deg * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPolynomial { coeffs }
    }

    /// Euclidean division by a monic divisor: `self = q*g + r` with
    /// `deg r < deg g`. Both outputs are integral because `g` is monic.
    pub fn divmod_monic(&self, g: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        if g.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if !g.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let n = g.coeffs.len() - 1;
        let Some(dp) = self.degree() else {
            return Ok((IntPolynomial::zero(), IntPolynomial::zero()));
        };
        if dp < n {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dp - n + 1];
        for k in (n..=dp).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut rem[k]);
            for (i, gi) in g.coeffs.iter().enumerate().take(n) {
                rem[k - n + i] -= &c * gi;
            }
            quot[k - n] = c;
        }
        rem.truncate(n);
        Ok((
            IntPolynomial::from_coeffs(quot),
            IntPolynomial::from_coeffs(rem),
        ))
    }

    /// Canonical remainder modulo a monic divisor.
    pub fn rem_monic(&self, g: &IntPolynomial) -> Result<IntPolynomial> {
        Ok(self.divmod_monic(g)?.1)
    }

    /// Content: the gcd of all coefficients, non-negative; `content(0) = 0`.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content(self)`; the zero polynomial stays zero.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let cont = self.content();
        self.div_exact_int(&cont)
    }

    /// Divides every coefficient by `d`, which must divide exactly.
    fn div_exact_int(&self, d: &BigInt) -> IntPolynomial {
        IntPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| exact_div(c.clone(), d))
                .collect(),
        }
    }

    /// Multiplies by `t^k`.
    fn shift(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

fn add_impl(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = a.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
        if let Some(bc) = b.coeffs.get(i) {
            c += bc;
        }
        coeffs.push(c);
    }
    IntPolynomial::from_coeffs(coeffs)
}

fn mul_impl(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() || b.is_zero() {
        return IntPolynomial::zero();
    }
    let mut coeffs = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            coeffs[i + j] += ai * bj;
        }
    }
    IntPolynomial::from_coeffs(coeffs)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        add_impl(self, rhs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        add_impl(self, &(-rhs))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        mul_impl(self, rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

/// Pseudo-remainder: the unique `r` with `lc(b)^(deg a - deg b + 1) * a = q*b + r`
/// and `deg r < deg b`. Requires `b` nonzero and `deg a >= deg b`.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("pseudo_rem: zero divisor");
    let da = a.degree().expect("pseudo_rem: zero dividend");
    debug_assert!(da >= db);
    let lc = b.leading().unwrap().clone();
    let mut r = a.clone();
    let mut e = (da - db + 1) as i64;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lead = r.leading().unwrap().clone();
        r = &r.scale(&lc) - &b.shift(dr - db).scale(&lead);
        e -= 1;
    }
    if e > 0 {
        let factor = num_traits::pow(lc, e as usize);
        r = r.scale(&factor);
    }
    r
}

/// Subresultant pseudo-remainder sequence; returns the gcd of the primitive
/// parts of `a` and `b`, itself primitive, up to sign. Both inputs nonzero.
fn subresultant_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut a = a.primitive_part();
    let mut b = b.primitive_part();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree() == Some(0) {
        return IntPolynomial::one();
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            return b.primitive_part();
        }
        if r.degree() == Some(0) {
            return IntPolynomial::one();
        }
        let denom = &g * num_traits::pow(h.clone(), delta);
        a = std::mem::replace(&mut b, r.div_exact_int(&denom));
        g = a.leading().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact_div(
                num_traits::pow(g.clone(), delta),
                &num_traits::pow(h, delta - 1),
            ),
        };
    }
}

/// Monic greatest common divisor of `f` and a monic `g` in `Z[t]`.
///
/// The result divides both arguments exactly and is divisible by every
/// common divisor; `gcd_with_monic(0, g) = g`. Because `g` is monic the gcd
/// has unit leading coefficient, so the monic normalization is canonical.
pub fn gcd_with_monic(f: &IntPolynomial, g: &IntPolynomial) -> Result<IntPolynomial> {
    if !g.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    if f.is_zero() {
        return Ok(g.clone());
    }
    if g.degree() == Some(0) {
        return Ok(IntPolynomial::one());
    }
    let d = subresultant_gcd(f, g);
    let lead = d.leading().expect("gcd of nonzero polynomials is nonzero");
    let monic = if lead.is_negative() { -&d } else { d };
    assert!(
        monic.is_monic(),
        "gcd with a monic divisor must have unit leading coefficient"
    );
    Ok(monic)
}

/// Resultant normalized as the product of `f` over the roots of `g`:
/// `res(f, g) = prod_(g(. )=0) f(.)`, an exact integer for monic `g`.
///
/// Computed as the fraction-free determinant of the Sylvester matrix of
/// `(g, h)` with `h = f mod g`; for monic `g` this equals the product over
/// the roots, including sign. Zero iff `f` and `g` share a root.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    if !g.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let n = g.degree().unwrap();
    if n == 0 {
        return Err(Error::OutOfRange(
            "resultant requires deg g >= 1".to_string(),
        ));
    }
    let h = f.rem_monic(g)?;
    let Some(k) = h.degree() else {
        return Ok(BigInt::zero());
    };
    if k == 0 {
        return Ok(num_traits::pow(h.coeffs[0].clone(), n));
    }
    let size = n + k;
    let mut sylvester = vec![vec![BigInt::zero(); size]; size];
    for i in 0..k {
        for j in 0..=n {
            sylvester[i][i + j] = g.coeffs[n - j].clone();
        }
    }
    for i in 0..n {
        for j in 0..=k {
            sylvester[k + i][i + j] = h.coeffs[k - j].clone();
        }
    }
    Ok(bareiss_determinant(sylvester))
}

/// The `n`-th cyclotomic polynomial, monic of degree `phi(n)`.
///
/// Computed by exact division of `t^n - 1` by the product of the cyclotomic
/// polynomials of the proper divisors of `n`; results are memoized.
pub fn cyclotomic(n: u64) -> Result<IntPolynomial> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    if n == 0 {
        return Err(Error::OutOfRange(
            "cyclotomic index must be positive".to_string(),
        ));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let phi = if n == 1 {
        IntPolynomial::from_coeffs([-1, 1])
    } else {
        let mut den = IntPolynomial::one();
        for d in divisors(n) {
            if d < n {
                den = &den * &cyclotomic(d)?;
            }
        }
        let (q, r) = IntPolynomial::power_minus_one(n as usize).divmod_monic(&den)?;
        debug_assert!(r.is_zero(), "cyclotomic division must be exact");
        q
    };
    cache.lock().unwrap().insert(n, phi.clone());
    Ok(phi)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                write!(f, "t")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Accepts either a comma-separated coefficient list low-to-high
    /// (`-1,0,0,1` for `t^3 - 1`) or a human string with terms `ct^k`, `c`,
    /// `t` (`t^3 - 1`). Whitespace-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        if s.contains(',') {
            parse_coeff_list(s)
        } else {
            parse_terms(s)
        }
    }
}

fn parse_coeff_list(s: &str) -> Result<IntPolynomial> {
    let mut coeffs = Vec::new();
    let mut offset = 0usize;
    for piece in s.split(',') {
        let trimmed = piece.trim();
        let col = offset + piece.len() - piece.trim_start().len() + 1;
        if trimmed.is_empty() {
            return Err(Error::parse(1, col, "empty coefficient"));
        }
        let value = BigInt::from_str(trimmed)
            .map_err(|_| Error::parse(1, col, format!("invalid integer `{trimmed}`")))?;
        coeffs.push(value);
        offset += piece.len() + 1;
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

struct TermScanner<'a> {
    chars: Vec<char>,
    pos: usize,
    _source: &'a str,
}

impl<'a> TermScanner<'a> {
    fn new(source: &'a str) -> Self {
        TermScanner {
            chars: source.chars().collect(),
            pos: 0,
            _source: source,
        }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn take_digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

fn parse_terms(s: &str) -> Result<IntPolynomial> {
    let mut scanner = TermScanner::new(s);
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        scanner.skip_ws();
        let Some(c) = scanner.peek() else {
            if first {
                return Err(Error::parse(1, scanner.col(), "empty polynomial"));
            }
            break;
        };
        let negative = match c {
            '+' => {
                scanner.pos += 1;
                false
            }
            '-' => {
                scanner.pos += 1;
                true
            }
            _ if first => false,
            _ => {
                return Err(Error::parse(
                    1,
                    scanner.col(),
                    format!("expected `+` or `-`, found `{c}`"),
                ));
            }
        };
        scanner.skip_ws();
        let term_col = scanner.col();
        let magnitude = scanner
            .take_digits()
            .map(|digits| BigInt::from_str(&digits).expect("digit run parses"));
        scanner.skip_ws();
        if scanner.peek() == Some('*') {
            scanner.pos += 1;
            scanner.skip_ws();
        }
        let exponent = if scanner.peek() == Some('t') {
            scanner.pos += 1;
            scanner.skip_ws();
            if scanner.peek() == Some('^') {
                scanner.pos += 1;
                scanner.skip_ws();
                let exp_col = scanner.col();
                let digits = scanner
                    .take_digits()
                    .ok_or_else(|| Error::parse(1, exp_col, "expected exponent digits"))?;
                let exp: usize = digits
                    .parse()
                    .map_err(|_| Error::parse(1, exp_col, "exponent too large"))?;
                exp
            } else {
                1
            }
        } else {
            if magnitude.is_none() {
                return Err(Error::parse(1, term_col, "expected a coefficient or `t`"));
            }
            0
        };
        let magnitude = magnitude.unwrap_or_else(BigInt::one);
        let signed = if negative { -magnitude } else { magnitude };
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, BigInt::zero());
        }
        coeffs[exponent] += signed;
        first = false;
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}
