//! Structure-backed computations of Smith forms of `f(C_g)`.
//!
//! The central reduction: if `z` is the monic gcd of `f` and `g`, with
//! `f = z*F` and `g = z*G`, then `f(C_g)` is equivalent to
//! `F(C_G) (+) 0_(m x m)` with `m = deg z`. The similarity witness behind it
//! conjugates `C_g` into a block triangular form by a banded unimodular
//! Toeplitz matrix. On top of that sit the factorization splittings (valid
//! when the relevant resultants are coprime) and two closed forms: the Smith
//! form of a cyclotomic polynomial evaluated at a cyclotomic companion
//! matrix, and the Smith form of the circulant of a torus-knot Alexander
//! polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{companion, poly_of_companion, IntMatrix};
use crate::poly::{gcd_with_monic, resultant, IntPolynomial};
use crate::smith::{smith_form, SmithDecomposition};
use crate::util::{euler_phi, prime_power};

/// The data of the reduction `f = z*F`, `g = z*G` by a monic common divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonDivisorReduction {
    z: IntPolynomial,
    f_quot: IntPolynomial,
    g_quot: IntPolynomial,
}

impl CommonDivisorReduction {
    /// The monic common divisor that was split off.
    pub fn z(&self) -> &IntPolynomial {
        &self.z
    }

    /// `F = f / z`.
    pub fn f_quot(&self) -> &IntPolynomial {
        &self.f_quot
    }

    /// `G = g / z`, monic.
    pub fn g_quot(&self) -> &IntPolynomial {
        &self.g_quot
    }

    /// `deg z`: the number of trailing zero invariant factors contributed
    /// by the reduction.
    pub fn zero_block_size(&self) -> usize {
        self.z.degree().expect("z is monic, hence nonzero")
    }
}

/// Splits the monic gcd `z` off `f` and `g`: returns `z`, `F = f/z`,
/// `G = g/z`. For `f = 0` this degenerates to `z = g`, `F = 0`, `G = 1`.
pub fn reduce_common_divisor(
    f: &IntPolynomial,
    g: &IntPolynomial,
) -> Result<CommonDivisorReduction> {
    require_modulus(g)?;
    let z = gcd_with_monic(f, g)?;
    split_by(f, g, z)
}

/// As [`reduce_common_divisor`] but with a caller-chosen monic common
/// divisor `z`, which must divide both `f` and `g` exactly.
pub fn reduce_with_divisor(
    f: &IntPolynomial,
    g: &IntPolynomial,
    z: &IntPolynomial,
) -> Result<CommonDivisorReduction> {
    require_modulus(g)?;
    if !z.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    split_by(f, g, z.clone())
}

fn require_modulus(g: &IntPolynomial) -> Result<()> {
    if !g.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    if g.degree() == Some(0) {
        return Err(Error::OutOfRange("modulus requires deg g >= 1".to_string()));
    }
    Ok(())
}

fn split_by(
    f: &IntPolynomial,
    g: &IntPolynomial,
    z: IntPolynomial,
) -> Result<CommonDivisorReduction> {
    let (f_quot, f_rem) = f.divmod_monic(&z)?;
    if !f_rem.is_zero() {
        return Err(Error::OutOfRange(format!("{z} does not divide f exactly")));
    }
    let (g_quot, g_rem) = g.divmod_monic(&z)?;
    if !g_rem.is_zero() {
        return Err(Error::OutOfRange(format!("{z} does not divide g exactly")));
    }
    debug_assert_eq!(&(&f_quot * &z), f);
    debug_assert_eq!(&(&g_quot * &z), g);
    Ok(CommonDivisorReduction { z, f_quot, g_quot })
}

/// Smith form of `f(C_g)` via the gcd reduction: the invariant factors of
/// `F(C_G)` followed by `deg z` zeros. When `G` is constant the nonzero part
/// is the Smith form of a 0x0 matrix, i.e. empty.
pub fn smith_via_reduction(f: &IntPolynomial, g: &IntPolynomial) -> Result<SmithDecomposition> {
    smith_from_reduction(&reduce_common_divisor(f, g)?)
}

/// The same equivalence with an arbitrary monic common divisor instead of
/// the full gcd.
pub fn smith_via_reduction_with(
    f: &IntPolynomial,
    g: &IntPolynomial,
    z: &IntPolynomial,
) -> Result<SmithDecomposition> {
    smith_from_reduction(&reduce_with_divisor(f, g, z)?)
}

fn smith_from_reduction(reduction: &CommonDivisorReduction) -> Result<SmithDecomposition> {
    let mut factors = if reduction.g_quot.degree() == Some(0) {
        Vec::new()
    } else {
        let matrix = poly_of_companion(&reduction.f_quot, &reduction.g_quot)?;
        smith_form(&matrix, false).invariant_factors().to_vec()
    };
    factors.resize(factors.len() + reduction.zero_block_size(), BigInt::zero());
    SmithDecomposition::from_factors(factors)
}

/// The last nonzero determinantal divisor of `f(C_g)`: `|res(F, G)|` after
/// reducing by the monic gcd. Fails with [`Error::AllZeroMatrix`] when `g`
/// divides `f`, since then `f(C_g) = 0`.
pub fn last_nonzero_determinantal_divisor(
    f: &IntPolynomial,
    g: &IntPolynomial,
) -> Result<BigInt> {
    let reduction = reduce_common_divisor(f, g)?;
    if reduction.g_quot.degree() == Some(0) {
        return Err(Error::AllZeroMatrix);
    }
    Ok(resultant(&reduction.f_quot, &reduction.g_quot)?.abs())
}

/// The first determinantal divisor of `f(C_g)`: the content of the
/// canonical remainder of `f` modulo `g`.
pub fn first_determinantal_divisor(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    require_modulus(g)?;
    Ok(f.rem_monic(g)?.content())
}

fn require_coprime_resultants(r1: &BigInt, r2: &BigInt) -> Result<()> {
    let gcd = r1.gcd(r2);
    if gcd.is_one() {
        Ok(())
    } else {
        Err(Error::ResultantsNotCoprime { gcd })
    }
}

/// Smith form of `(f1*f2)(C_g)` as the elementwise product of the Smith
/// forms of `f1(C_g)` and `f2(C_g)`; valid when `|res(f1, g)|` and
/// `|res(f2, g)|` are coprime, refused otherwise.
pub fn smith_product_split(
    f1: &IntPolynomial,
    f2: &IntPolynomial,
    g: &IntPolynomial,
) -> Result<SmithDecomposition> {
    let r1 = resultant(f1, g)?.abs();
    let r2 = resultant(f2, g)?.abs();
    require_coprime_resultants(&r1, &r2)?;
    let s1 = smith_form(&poly_of_companion(f1, g)?, false);
    let s2 = smith_form(&poly_of_companion(f2, g)?, false);
    let factors = s1
        .invariant_factors()
        .iter()
        .zip(s2.invariant_factors())
        .map(|(a, b)| a * b)
        .collect();
    SmithDecomposition::from_factors(factors)
}

/// Smith form of `f(C_(g1*g2))` as the merged Smith forms of `f(C_g1)` and
/// `f(C_g2)`; valid when `|res(f, g1)|` and `|res(f, g2)|` are coprime.
pub fn smith_direct_sum_split(
    f: &IntPolynomial,
    g1: &IntPolynomial,
    g2: &IntPolynomial,
) -> Result<SmithDecomposition> {
    let r1 = resultant(f, g1)?.abs();
    let r2 = resultant(f, g2)?.abs();
    require_coprime_resultants(&r1, &r2)?;
    let s1 = smith_form(&poly_of_companion(f, g1)?, false);
    let s2 = smith_form(&poly_of_companion(f, g2)?, false);
    let merged = merge_coprime_chains(s1.invariant_factors(), s2.invariant_factors());
    SmithDecomposition::from_factors(merged)
}

/// Merges two divisor chains whose nonzero parts have coprime products: pad
/// both nonzero parts with leading 1s to the combined length, multiply
/// slotwise, and append the zeros.
fn merge_coprime_chains(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let a_nz: Vec<&BigInt> = a.iter().filter(|v| !v.is_zero()).collect();
    let b_nz: Vec<&BigInt> = b.iter().filter(|v| !v.is_zero()).collect();
    let zeros = a.len() + b.len() - a_nz.len() - b_nz.len();
    let total = a_nz.len() + b_nz.len();
    let mut merged = Vec::with_capacity(total + zeros);
    for k in 0..total {
        let mut v = BigInt::one();
        if let Some(i) = (k + a_nz.len()).checked_sub(total) {
            v *= a_nz[i];
        }
        if let Some(i) = (k + b_nz.len()).checked_sub(total) {
            v *= b_nz[i];
        }
        merged.push(v);
    }
    merged.resize(total + zeros, BigInt::zero());
    merged
}

/// Closed-form Smith form of `Phi_m(C_(Phi_n))` for `m >= n >= 1`: all
/// zeros when `m = n`, `p * I` when `m = n * p^k` with `p` prime, the
/// identity otherwise; always of size `phi(n)`.
pub fn cyclotomic_companion_smith(m: u64, n: u64) -> Result<SmithDecomposition> {
    if n == 0 || m < n {
        return Err(Error::OutOfRange(format!(
            "cyclotomic smith form requires m >= n >= 1 (got m={m}, n={n})"
        )));
    }
    let value = if m == n {
        BigInt::zero()
    } else if m.is_multiple_of(n) {
        match prime_power(m / n) {
            Some((p, _)) => BigInt::from(p),
            None => BigInt::one(),
        }
    } else {
        BigInt::one()
    };
    let size = euler_phi(n) as usize;
    SmithDecomposition::from_factors(vec![value; size])
}

/// The Alexander polynomial of the torus knot `K(r, s)` for coprime
/// `r, s >= 2`: the exact quotient `((t^(rs) - 1)(t - 1)) / ((t^s - 1)(t^r - 1))`,
/// monic of degree `(r-1)(s-1)`.
pub fn alexander_polynomial(r: u64, s: u64) -> Result<IntPolynomial> {
    if r < 2 || s < 2 {
        return Err(Error::OutOfRange(format!(
            "torus knot parameters must be >= 2 (got r={r}, s={s})"
        )));
    }
    let gcd = r.gcd(&s);
    if gcd != 1 {
        return Err(Error::NotCoprime { a: r, b: s, gcd });
    }
    let rs = r.checked_mul(s).filter(|&rs| rs <= 1 << 20).ok_or_else(|| {
        Error::OutOfRange(format!("torus knot parameters too large (r*s = {r}*{s})"))
    })?;
    let numerator = &IntPolynomial::power_minus_one(rs as usize)
        * &IntPolynomial::power_minus_one(1);
    let denominator = &IntPolynomial::power_minus_one(s as usize)
        * &IntPolynomial::power_minus_one(r as usize);
    let (quotient, remainder) = numerator.divmod_monic(&denominator)?;
    assert!(
        remainder.is_zero(),
        "Alexander quotient must be exact for coprime r, s"
    );
    debug_assert_eq!(quotient.degree(), Some(((r - 1) * (s - 1)) as usize));
    Ok(quotient)
}

/// Closed-form Smith form of the `n x n` circulant of the Alexander
/// polynomial of `K(r, s)`: with `x = gcd(r, n) <= y = gcd(s, n)` (swapping
/// `r` and `s` otherwise), the non-unit invariant factors are `r/x` repeated
/// `y - x` times, then `rs/(xy)` repeated `x - 1` times, then `0` repeated
/// `(x-1)(y-1)` times, preceded by units.
pub fn torus_circulant_smith(r: u64, s: u64, n: u64) -> Result<SmithDecomposition> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "circulant order must be >= 2 (got n={n})"
        )));
    }
    if r < 2 || s < 2 {
        return Err(Error::OutOfRange(format!(
            "torus knot parameters must be >= 2 (got r={r}, s={s})"
        )));
    }
    let gcd = r.gcd(&s);
    if gcd != 1 {
        return Err(Error::NotCoprime { a: r, b: s, gcd });
    }
    let (mut r, mut s) = (r, s);
    let mut x = r.gcd(&n);
    let mut y = s.gcd(&n);
    if x > y {
        std::mem::swap(&mut r, &mut s);
        std::mem::swap(&mut x, &mut y);
    }
    let low_count = (y - x) as usize;
    let mid_count = (x - 1) as usize;
    let zero_count = ((x - 1) * (y - 1)) as usize;
    let unit_count = (n as usize)
        .checked_sub(low_count + mid_count + zero_count)
        .expect("x*y divides n, so the non-unit factors fit");
    let low = BigInt::from(r / x);
    let mid = BigInt::from((r / x) * (s / y));
    let mut factors = Vec::with_capacity(n as usize);
    factors.resize(unit_count, BigInt::one());
    factors.resize(unit_count + low_count, low);
    factors.resize(unit_count + low_count + mid_count, mid);
    factors.resize(n as usize, BigInt::zero());
    SmithDecomposition::from_factors(factors)
}

/// The witness pair behind the block triangularization of `C_(ab)`: the
/// banded unimodular upper triangular Toeplitz `U_a` built from the
/// coefficients of `a`, and the block matrix `X` with `C_b` in the upper
/// left, a single 1 linking the blocks, and the flipped transpose of `C_a`
/// in the lower right. They satisfy `U_a * C_(ab) = X * U_a` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityWitness {
    u_a: IntMatrix,
    x_ab: IntMatrix,
    a: IntPolynomial,
    b: IntPolynomial,
}

impl SimilarityWitness {
    pub fn u_a(&self) -> &IntMatrix {
        &self.u_a
    }

    pub fn x_ab(&self) -> &IntMatrix {
        &self.x_ab
    }

    pub fn a(&self) -> &IntPolynomial {
        &self.a
    }

    pub fn b(&self) -> &IntPolynomial {
        &self.b
    }

    /// Checks `U_a * C_(ab) = X * U_a` by exact multiplication.
    pub fn holds(&self) -> Result<bool> {
        let g = &self.a * &self.b;
        let c_g = companion(&g)?;
        Ok(&self.u_a * &c_g == &self.x_ab * &self.u_a)
    }
}

/// Builds the similarity witness for a monic factorization `g = a * b` with
/// `deg(a*b) >= 1`.
pub fn similarity_witness(a: &IntPolynomial, b: &IntPolynomial) -> Result<SimilarityWitness> {
    if !a.is_monic() || !b.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let m = a.degree().unwrap();
    let r = b.degree().unwrap();
    let n = m + r;
    if n == 0 {
        return Err(Error::OutOfRange(
            "similarity witness requires deg(a*b) >= 1".to_string(),
        ));
    }

    let mut u_a = IntMatrix::zeros(n, n);
    for i in 0..n {
        for k in 0..=m.min(n - 1 - i) {
            u_a[(i, i + k)] = a.coeff(m - k);
        }
    }

    let mut x_ab = IntMatrix::zeros(n, n);
    if r >= 1 {
        let c_b = companion(b)?;
        for i in 0..r {
            for j in 0..r {
                x_ab[(i, j)] = c_b[(i, j)].clone();
            }
        }
    }
    if m >= 1 {
        if r >= 1 {
            x_ab[(r, r - 1)] = BigInt::one();
        }
        let c_a = companion(a)?;
        for i in 0..m {
            for j in 0..m {
                // Lower-right block: flip of the transpose of C_a.
                x_ab[(r + i, r + j)] = c_a[(m - 1 - j, m - 1 - i)].clone();
            }
        }
    }
    Ok(SimilarityWitness {
        u_a,
        x_ab,
        a: a.clone(),
        b: b.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cyclotomic;
    use crate::smith::{determinantal_divisors, is_valid_chain};
    use proptest::prelude::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| big(x)).collect()
    }

    #[test]
    fn reduction_examples() {
        let red = reduce_common_divisor(&p("t - 1"), &p("t^3 - 1")).unwrap();
        assert_eq!(red.z(), &p("t - 1"));
        assert_eq!(red.f_quot(), &p("1"));
        assert_eq!(red.g_quot(), &p("t^2 + t + 1"));
        assert_eq!(red.zero_block_size(), 1);

        let red = reduce_common_divisor(&p("5"), &p("t^3 - 1")).unwrap();
        assert_eq!(red.z(), &p("1"));
        assert_eq!(red.f_quot(), &p("5"));
        assert_eq!(red.g_quot(), &p("t^3 - 1"));
        assert_eq!(red.zero_block_size(), 0);

        let g = p("t^4 + 3t - 1");
        let red = reduce_common_divisor(&IntPolynomial::zero(), &g).unwrap();
        assert_eq!(red.z(), &g);
        assert_eq!(red.f_quot(), &IntPolynomial::zero());
        assert_eq!(red.g_quot(), &p("1"));
        assert_eq!(red.zero_block_size(), 4);
    }

    #[test]
    fn reduction_with_chosen_divisor() {
        let f = &p("t - 1") * &p("t + 5");
        let g = &(&p("t - 1") * &p("t - 1")) * &p("t + 2");
        let red = reduce_with_divisor(&f, &g, &p("t - 1")).unwrap();
        assert_eq!(red.f_quot(), &p("t + 5"));
        assert!(reduce_with_divisor(&f, &g, &p("t - 3")).is_err());
        assert_eq!(
            reduce_with_divisor(&f, &g, &p("2t - 2")),
            Err(Error::NonMonicDivisor)
        );
    }

    #[test]
    fn smith_via_reduction_examples() {
        let d = smith_via_reduction(&p("t - 1"), &p("t^3 - 1")).unwrap();
        assert_eq!(d.invariant_factors(), bigs(&[1, 1, 0]));
        let g = p("t^3 - 1");
        let d = smith_via_reduction(&g, &g).unwrap();
        assert_eq!(d.invariant_factors(), bigs(&[0, 0, 0]));
        let d = smith_via_reduction(&p("1"), &p("t^4 + 1")).unwrap();
        assert_eq!(d.invariant_factors(), bigs(&[1, 1, 1, 1]));
    }

    #[test]
    fn last_divisor_examples() {
        assert_eq!(
            last_nonzero_determinantal_divisor(&p("t - 2"), &p("t^2 - 1")).unwrap(),
            big(3)
        );
        assert_eq!(
            last_nonzero_determinantal_divisor(&p("1"), &p("t^5 - 2")).unwrap(),
            big(1)
        );
        assert_eq!(
            last_nonzero_determinantal_divisor(&p("t - 1"), &p("t^3 - 1")).unwrap(),
            big(1)
        );
        assert_eq!(
            last_nonzero_determinantal_divisor(&p("t^3 - 1"), &p("t^3 - 1")),
            Err(Error::AllZeroMatrix)
        );
    }

    #[test]
    fn first_divisor_examples() {
        assert_eq!(
            first_determinantal_divisor(&p("2t + 2"), &p("t^2 - 1")).unwrap(),
            big(2)
        );
        assert_eq!(
            first_determinantal_divisor(&p("1"), &p("t^2 - 1")).unwrap(),
            big(1)
        );
        let g = p("t^2 - 1");
        assert_eq!(first_determinantal_divisor(&g, &g).unwrap(), big(0));
    }

    #[test]
    fn product_split_examples() {
        let g = p("t^2 - 1");
        // f1 = 1 leaves the other factor's Smith form unchanged.
        let d = smith_product_split(&p("1"), &p("t - 2"), &g).unwrap();
        assert_eq!(d.invariant_factors(), bigs(&[1, 3]));

        // |res| = 3 and 8, coprime; matches the direct engine on the product.
        let d = smith_product_split(&p("t - 2"), &p("t - 3"), &g).unwrap();
        let direct = smith_form(
            &poly_of_companion(&(&p("t - 2") * &p("t - 3")), &g).unwrap(),
            false,
        );
        assert_eq!(d.invariant_factors(), direct.invariant_factors());
        assert_eq!(d.invariant_factors(), bigs(&[1, 24]));

        // A unimodular factor leaves the Smith form unchanged.
        let unimodular = p("t"); // res(t, t^2 - 1) = -1... product of roots
        let base = smith_form(&poly_of_companion(&p("t - 3"), &g).unwrap(), false);
        let d = smith_product_split(&p("t - 3"), &unimodular, &g).unwrap();
        assert_eq!(d.invariant_factors(), base.invariant_factors());

        // Violating coprimality is refused loudly.
        assert_eq!(
            smith_product_split(&p("t - 2"), &p("t - 2"), &g),
            Err(Error::ResultantsNotCoprime { gcd: big(3) })
        );
    }

    #[test]
    fn direct_sum_split_examples() {
        let d = smith_direct_sum_split(&p("t - 2"), &p("t - 1"), &p("t + 1")).unwrap();
        assert_eq!(d.invariant_factors(), bigs(&[1, 3]));
        let direct = smith_form(
            &poly_of_companion(&p("t - 2"), &p("t^2 - 1")).unwrap(),
            false,
        );
        assert_eq!(d.invariant_factors(), direct.invariant_factors());

        let d = smith_direct_sum_split(&p("1"), &p("t^2 + 1"), &p("t - 4")).unwrap();
        assert_eq!(d.invariant_factors(), bigs(&[1, 1, 1]));

        // res(f, g2) = 1 pads the g1-side factors with ones.
        let f = p("t - 2");
        let g1 = p("t^2 + t + 1");
        let g2 = p("t - 1"); // res = f(1) = -1
        let d = smith_direct_sum_split(&f, &g1, &g2).unwrap();
        let base = smith_form(&poly_of_companion(&f, &g1).unwrap(), false);
        let mut expected = vec![BigInt::one()];
        expected.extend_from_slice(base.invariant_factors());
        // Units sort to the front of the merged chain.
        assert_eq!(d.invariant_factors(), expected);

        assert_eq!(
            smith_direct_sum_split(&p("t - 3"), &p("t - 1"), &p("t - 5")),
            Err(Error::ResultantsNotCoprime { gcd: big(2) })
        );
    }

    #[test]
    fn merge_handles_zeros_and_units() {
        assert_eq!(
            merge_coprime_chains(&bigs(&[2, 4]), &bigs(&[3, 9])),
            bigs(&[1, 1, 6, 36])
        );
        assert_eq!(
            merge_coprime_chains(&bigs(&[1, 0]), &bigs(&[1, 1])),
            bigs(&[1, 1, 1, 0])
        );
        assert_eq!(merge_coprime_chains(&[], &bigs(&[5])), bigs(&[5]));
    }

    #[test]
    fn cyclotomic_smith_examples() {
        assert_eq!(
            cyclotomic_companion_smith(5, 5).unwrap().invariant_factors(),
            bigs(&[0, 0, 0, 0])
        );
        assert_eq!(
            cyclotomic_companion_smith(6, 3).unwrap().invariant_factors(),
            bigs(&[2, 2])
        );
        assert_eq!(
            cyclotomic_companion_smith(7, 3).unwrap().invariant_factors(),
            bigs(&[1, 1])
        );
        assert!(matches!(
            cyclotomic_companion_smith(3, 7),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            cyclotomic_companion_smith(0, 0),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn cyclotomic_smith_matches_engine_small() {
        for n in 1..=16u64 {
            for m in n..=16 {
                let closed = cyclotomic_companion_smith(m, n).unwrap();
                let matrix =
                    poly_of_companion(&cyclotomic(m).unwrap(), &cyclotomic(n).unwrap()).unwrap();
                let engine = smith_form(&matrix, false);
                assert_eq!(
                    closed.invariant_factors(),
                    engine.invariant_factors(),
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander_polynomial(2, 3).unwrap(), p("t^2 - t + 1"));
        assert_eq!(
            alexander_polynomial(2, 5).unwrap(),
            p("t^4 - t^3 + t^2 - t + 1")
        );
        let a34 = alexander_polynomial(3, 4).unwrap();
        assert_eq!(a34.degree(), Some(6));
        assert_eq!(a34, p("t^6 - t^5 + t^3 - t + 1"));
        assert_eq!(
            alexander_polynomial(4, 6),
            Err(Error::NotCoprime { a: 4, b: 6, gcd: 2 })
        );
        assert!(matches!(
            alexander_polynomial(1, 3),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn torus_circulant_examples() {
        assert_eq!(
            torus_circulant_smith(2, 3, 5).unwrap().invariant_factors(),
            bigs(&[1, 1, 1, 1, 1])
        );
        assert_eq!(
            torus_circulant_smith(2, 9, 6).unwrap().invariant_factors(),
            bigs(&[1, 1, 1, 3, 0, 0])
        );
        assert_eq!(
            torus_circulant_smith(4, 3, 6).unwrap().invariant_factors(),
            bigs(&[1, 1, 2, 2, 0, 0])
        );
        assert_eq!(
            torus_circulant_smith(4, 6, 5),
            Err(Error::NotCoprime { a: 4, b: 6, gcd: 2 })
        );
        assert!(matches!(
            torus_circulant_smith(2, 3, 1),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn torus_circulant_swap_symmetry() {
        for (r, s) in [(2u64, 9u64), (4, 3), (3, 8), (5, 6)] {
            for n in 2..=12 {
                assert_eq!(
                    torus_circulant_smith(r, s, n).unwrap().invariant_factors(),
                    torus_circulant_smith(s, r, n).unwrap().invariant_factors(),
                    "r={r} s={s} n={n}"
                );
            }
        }
    }

    #[test]
    fn torus_circulant_matches_engine_small() {
        for (r, s) in [(2u64, 3u64), (2, 9), (4, 3), (3, 5)] {
            let f = alexander_polynomial(r, s).unwrap();
            for n in 2..=8u64 {
                let g = IntPolynomial::power_minus_one(n as usize);
                let engine = smith_form(&poly_of_companion(&f, &g).unwrap(), false);
                let closed = torus_circulant_smith(r, s, n).unwrap();
                assert_eq!(
                    closed.invariant_factors(),
                    engine.invariant_factors(),
                    "r={r} s={s} n={n}"
                );
            }
        }
    }

    #[test]
    fn witness_examples() {
        // a = 1: the witness degenerates to the companion matrix itself.
        let w = similarity_witness(&p("1"), &p("t^2 + 1")).unwrap();
        assert_eq!(w.u_a(), &IntMatrix::identity(2));
        assert_eq!(w.x_ab(), &companion(&p("t^2 + 1")).unwrap());
        assert!(w.holds().unwrap());

        let w = similarity_witness(&p("t - 1"), &p("t^2 + t + 1")).unwrap();
        assert!(w.holds().unwrap());
        assert!(w.u_a().is_unimodular().unwrap());
        assert_eq!(
            w.u_a(),
            &IntMatrix::from_rows(vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]])
        );
        // Blocks: C_b upper left, the linking 1 at (r, r-1), flipped C_a^T
        // lower right.
        assert_eq!(
            w.x_ab(),
            &IntMatrix::from_rows(vec![vec![-1, -1, 0], vec![1, 0, 0], vec![0, 1, 1]])
        );

        // b = 1: the block partition degenerates to the flipped transpose.
        let g = p("t^3 - 1");
        let w = similarity_witness(&g, &p("1")).unwrap();
        let c_g = companion(&g).unwrap();
        let n = 3;
        let mut flipped = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                flipped[(i, j)] = c_g[(n - 1 - j, n - 1 - i)].clone();
            }
        }
        assert_eq!(w.x_ab(), &flipped);
        assert!(w.holds().unwrap());

        assert_eq!(
            similarity_witness(&p("2t + 1"), &p("t - 1")),
            Err(Error::NonMonicDivisor)
        );
        assert!(matches!(
            similarity_witness(&p("1"), &p("1")),
            Err(Error::OutOfRange(_))
        ));
    }

    fn poly_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-bound..=bound, 0..=max_deg + 1).prop_map(IntPolynomial::from_coeffs)
    }

    fn monic_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
        (1..=max_deg).prop_flat_map(move |d| {
            prop::collection::vec(-bound..=bound, d).prop_map(|mut v| {
                v.push(1);
                IntPolynomial::from_coeffs(v)
            })
        })
    }

    fn monic_strategy_from_zero(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
        (0..=max_deg).prop_flat_map(move |d| {
            prop::collection::vec(-bound..=bound, d).prop_map(|mut v| {
                v.push(1);
                IntPolynomial::from_coeffs(v)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reduction_matches_engine(f in poly_strategy(12, 9), g in monic_strategy(8, 9)) {
            let fast = smith_via_reduction(&f, &g).unwrap();
            let engine = smith_form(&poly_of_companion(&f, &g).unwrap(), false);
            prop_assert_eq!(fast.invariant_factors(), engine.invariant_factors());
            // Rank law: rank of f(C_g) is deg g - deg gcd(f, g).
            let z = gcd_with_monic(&f, &g).unwrap();
            prop_assert_eq!(fast.rank(), g.degree().unwrap() - z.degree().unwrap());
        }

        #[test]
        fn reduction_with_partial_divisor_matches_engine(
            f0 in poly_strategy(4, 5),
            z in monic_strategy_from_zero(3, 5),
            g0 in monic_strategy(4, 5),
        ) {
            let f = &f0 * &z;
            let g = &g0 * &z;
            let fast = smith_via_reduction_with(&f, &g, &z).unwrap();
            let engine = smith_form(&poly_of_companion(&f, &g).unwrap(), false);
            prop_assert_eq!(fast.invariant_factors(), engine.invariant_factors());
        }

        #[test]
        fn last_divisor_matches_minor_oracle(f in poly_strategy(8, 9), g in monic_strategy(6, 9)) {
            let matrix = poly_of_companion(&f, &g).unwrap();
            let rank = smith_form(&matrix, false).rank();
            match last_nonzero_determinantal_divisor(&f, &g) {
                Ok(value) => {
                    let gammas = determinantal_divisors(&matrix, rank).unwrap();
                    prop_assert_eq!(&value, &gammas[rank - 1]);
                }
                Err(Error::AllZeroMatrix) => prop_assert_eq!(rank, 0),
                Err(e) => panic!("unexpected error {e}"),
            }
        }

        #[test]
        fn first_divisor_matches_minor_oracle(f in poly_strategy(8, 9), g in monic_strategy(6, 9)) {
            let matrix = poly_of_companion(&f, &g).unwrap();
            let gamma1 = determinantal_divisors(&matrix, 1).unwrap().remove(0);
            prop_assert_eq!(first_determinantal_divisor(&f, &g).unwrap(), gamma1);
        }

        #[test]
        fn witness_identity_holds(
            a in monic_strategy_from_zero(4, 9),
            b in monic_strategy_from_zero(4, 9),
        ) {
            prop_assume!(a.degree().unwrap() + b.degree().unwrap() >= 1);
            let w = similarity_witness(&a, &b).unwrap();
            prop_assert!(w.holds().unwrap());
            prop_assert!(w.u_a().is_unimodular().unwrap());
        }

        #[test]
        fn monic_divisor_smith_form(
            a in monic_strategy_from_zero(4, 4),
            q in monic_strategy_from_zero(4, 4),
        ) {
            // For monic a | g the Smith form of a(C_g) is I (+) 0.
            let g = &a * &q;
            prop_assume!(g.degree().unwrap() >= 1);
            let d = smith_form(&poly_of_companion(&a, &g).unwrap(), false);
            let n = g.degree().unwrap();
            let deg_a = a.degree().unwrap();
            let mut expected = vec![BigInt::one(); n - deg_a];
            expected.resize(n, BigInt::zero());
            prop_assert_eq!(d.invariant_factors(), &expected[..]);
            prop_assert!(is_valid_chain(d.invariant_factors()));
        }
    }
}
