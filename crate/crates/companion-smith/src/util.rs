//! Small shared numeric helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact integer division; the divisor is known to divide the dividend.
pub(crate) fn exact_div(a: BigInt, b: &BigInt) -> BigInt {
    debug_assert!(!b.is_zero(), "exact_div by zero");
    debug_assert!((&a % b).is_zero(), "exact_div is not exact: {a} / {b}");
    a / b
}

/// Fraction-free (Bareiss) determinant of a square matrix given as rows.
///
/// All intermediate values stay integral; the 0x0 determinant is 1.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(t, &prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if negate {
        -det
    } else {
        det
    }
}

/// Divisors of `n` in increasing order.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    debug_assert!(n >= 1);
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient by trial factorization.
pub(crate) fn euler_phi(mut n: u64) -> u64 {
    debug_assert!(n >= 1);
    let mut phi = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// Writes `q` as `p^k` with `p` prime and `k >= 1`, if possible.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            return if rest == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}
