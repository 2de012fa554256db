//! Smith normal form over the integers, with optional unimodular transform
//! tracking, plus a minor-enumeration oracle for the determinantal divisors
//! of small matrices.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::util::bareiss_determinant;

/// Upper bound on `min(rows, cols)` accepted by the minor oracle unless a
/// caller raises it; the enumeration cost grows binomially.
pub const DEFAULT_MINOR_CAP: usize = 8;

/// Invariant factors of a matrix, i.e. the diagonal of its Smith form,
/// normalized non-negative, with `factors[i]` dividing `factors[i+1]` and
/// all zeros trailing. Transforms satisfy `left * M * right = diag(factors)`
/// when present.
#[derive(Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    invariant_factors: Vec<BigInt>,
    rank: usize,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl SmithDecomposition {
    /// Wraps an already-normalized divisor chain (used by the closed-form
    /// fast paths). Fails if the chain conditions do not hold.
    pub fn from_factors(factors: Vec<BigInt>) -> Result<Self> {
        if let Some(message) = chain_violation(&factors) {
            return Err(Error::InvalidDivisorChain(message));
        }
        let rank = factors.iter().filter(|f| !f.is_zero()).count();
        Ok(SmithDecomposition {
            invariant_factors: factors,
            rank,
            left: None,
            right: None,
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn left_transform(&self) -> Option<&IntMatrix> {
        self.left.as_ref()
    }

    pub fn right_transform(&self) -> Option<&IntMatrix> {
        self.right.as_ref()
    }
}

impl std::fmt::Debug for SmithDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmithDecomposition{:?}", self.invariant_factors)
    }
}

/// True iff `factors` is a normalized divisor chain: non-negative entries,
/// each dividing the next, zeros only at the end.
pub fn is_valid_chain(factors: &[BigInt]) -> bool {
    chain_violation(factors).is_none()
}

fn chain_violation(factors: &[BigInt]) -> Option<String> {
    for (i, f) in factors.iter().enumerate() {
        if f.is_negative() {
            return Some(format!("negative entry {f} at position {i}"));
        }
    }
    for (i, w) in factors.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        if a.is_zero() {
            if !b.is_zero() {
                return Some(format!("nonzero entry {b} follows a zero at position {i}"));
            }
        } else if !(b % a).is_zero() {
            return Some(format!("{a} does not divide {b} at position {i}"));
        }
    }
    None
}

/// Computes the Smith normal form of `m` by exact pivot-driven reduction.
///
/// The pivot is always a nonzero entry of minimal absolute value in the
/// trailing submatrix (ties broken by lowest row, then column), cleared by
/// Euclidean row/column combinations; when a pivot fails to divide an entry
/// of the trailing block, that row is folded in and the reduction repeats.
/// Output is deterministic, factors are normalized non-negative, and the
/// unimodular transforms are tracked when requested.
pub fn smith_form(m: &IntMatrix, want_transforms: bool) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut left = want_transforms.then(|| IntMatrix::identity(rows));
    let mut right = want_transforms.then(|| IntMatrix::identity(cols));
    let limit = rows.min(cols);

    for k in 0..limit {
        let Some((pi, pj)) = min_abs_pivot(&a, k) else {
            break;
        };
        a.swap_rows(k, pi);
        if let Some(l) = left.as_mut() {
            l.swap_rows(k, pi);
        }
        a.swap_cols(k, pj);
        if let Some(r) = right.as_mut() {
            r.swap_cols(k, pj);
        }

        'refine: loop {
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&a[(i, k)], &a[(k, k)]);
                row_combine(&mut a, left.as_mut(), i, k, &q);
                if !a[(i, k)].is_zero() {
                    a.swap_rows(i, k);
                    if let Some(l) = left.as_mut() {
                        l.swap_rows(i, k);
                    }
                    continue 'refine;
                }
            }
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = rounded_quotient(&a[(k, j)], &a[(k, k)]);
                col_combine(&mut a, right.as_mut(), j, k, &q);
                if !a[(k, j)].is_zero() {
                    a.swap_cols(j, k);
                    if let Some(r) = right.as_mut() {
                        r.swap_cols(j, k);
                    }
                    continue 'refine;
                }
            }
            // Row and column are clear; restore the divisor chain if the
            // pivot misses an entry of the trailing block.
            if let Some(i) = find_nondivisible_row(&a, k) {
                row_fold(&mut a, left.as_mut(), k, i);
                continue 'refine;
            }
            break;
        }
    }

    // Sign normalization, compensated in the left transform.
    let mut factors = Vec::with_capacity(limit);
    for k in 0..limit {
        if a[(k, k)].is_negative() {
            negate_row(&mut a, k);
            if let Some(l) = left.as_mut() {
                negate_row(l, k);
            }
        }
        factors.push(a[(k, k)].clone());
    }
    debug_assert!(is_valid_chain(&factors), "engine produced {factors:?}");
    let rank = factors.iter().filter(|f| !f.is_zero()).count();
    SmithDecomposition {
        invariant_factors: factors,
        rank,
        left,
        right,
    }
}

/// Nonzero entry of minimal absolute value in the trailing submatrix,
/// lowest (row, col) on ties.
fn min_abs_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            match &best {
                Some((m, _, _)) if *m <= mag => {}
                _ => best = Some((mag, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Quotient minimizing the remainder magnitude (|r| <= |p|/2).
fn rounded_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(p);
    if (&r + &r).abs() > p.abs() {
        if r.is_negative() == p.is_negative() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// `row_i -= q * row_k`.
fn row_combine(a: &mut IntMatrix, l: Option<&mut IntMatrix>, i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..a.cols() {
        let t = q * &a[(k, j)];
        a[(i, j)] -= t;
    }
    if let Some(l) = l {
        for j in 0..l.cols() {
            let t = q * &l[(k, j)];
            l[(i, j)] -= t;
        }
    }
}

/// `col_j -= q * col_k`.
fn col_combine(a: &mut IntMatrix, r: Option<&mut IntMatrix>, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        let t = q * &a[(i, k)];
        a[(i, j)] -= t;
    }
    if let Some(r) = r {
        for i in 0..r.rows() {
            let t = q * &r[(i, k)];
            r[(i, j)] -= t;
        }
    }
}

/// `row_k += row_i` (the divisor-chain fix-up; leaves the pivot intact).
fn row_fold(a: &mut IntMatrix, l: Option<&mut IntMatrix>, k: usize, i: usize) {
    for j in 0..a.cols() {
        let t = a[(i, j)].clone();
        a[(k, j)] += t;
    }
    if let Some(l) = l {
        for j in 0..l.cols() {
            let t = l[(i, j)].clone();
            l[(k, j)] += t;
        }
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for j in 0..a.cols() {
        let v = -a[(i, j)].clone();
        a[(i, j)] = v;
    }
}

/// First row index `i > k` whose trailing entries are not all divisible by
/// the pivot `a[k][k]`.
fn find_nondivisible_row(a: &IntMatrix, k: usize) -> Option<usize> {
    let p = &a[(k, k)];
    for i in k + 1..a.rows() {
        for j in k + 1..a.cols() {
            if !(&a[(i, j)] % p).is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// Determinantal divisors `gamma_1 ... gamma_up_to` with the default size cap.
pub fn determinantal_divisors(m: &IntMatrix, up_to: usize) -> Result<Vec<BigInt>> {
    determinantal_divisors_with_cap(m, up_to, DEFAULT_MINOR_CAP)
}

/// `gamma_i` is the gcd of all order-`i` minors, normalized non-negative,
/// zero once every order-`i` minor vanishes. Enumerates all minors, so the
/// matrix's min dimension must not exceed `cap`.
pub fn determinantal_divisors_with_cap(
    m: &IntMatrix,
    up_to: usize,
    cap: usize,
) -> Result<Vec<BigInt>> {
    let min_dim = m.rows().min(m.cols());
    if up_to > min_dim {
        return Err(Error::OutOfRange(format!(
            "requested {up_to} divisors of a matrix with min dimension {min_dim}"
        )));
    }
    if min_dim > cap {
        return Err(Error::TooLarge { min_dim, cap });
    }
    let mut out = Vec::with_capacity(up_to);
    let mut vanished = false;
    for order in 1..=up_to {
        if vanished {
            out.push(BigInt::zero());
            continue;
        }
        let mut gcd = BigInt::zero();
        'minors: for row_set in (0..m.rows()).combinations(order) {
            for col_set in (0..m.cols()).combinations(order) {
                let sub: Vec<Vec<BigInt>> = row_set
                    .iter()
                    .map(|&i| col_set.iter().map(|&j| m[(i, j)].clone()).collect())
                    .collect();
                gcd = gcd.gcd(&bareiss_determinant(sub));
                if gcd.is_one() {
                    break 'minors;
                }
            }
        }
        vanished = gcd.is_zero();
        out.push(gcd);
    }
    Ok(out)
}

/// Recovers invariant factors from a determinantal-divisor sequence via
/// `s_i = gamma_i / gamma_(i-1)` (with `gamma_0 = 1`), `s_i = 0` once
/// `gamma_i = 0`.
pub fn invariant_factors_from_divisors(gammas: &[BigInt]) -> Result<Vec<BigInt>> {
    for (i, g) in gammas.iter().enumerate() {
        if g.is_negative() {
            return Err(Error::InvalidDivisorChain(format!(
                "negative divisor {g} at position {i}"
            )));
        }
    }
    let mut factors = Vec::with_capacity(gammas.len());
    let mut prev = BigInt::one();
    let mut seen_zero = false;
    for (i, g) in gammas.iter().enumerate() {
        if g.is_zero() {
            seen_zero = true;
            factors.push(BigInt::zero());
            continue;
        }
        if seen_zero {
            return Err(Error::InvalidDivisorChain(format!(
                "nonzero divisor {g} follows a zero at position {i}"
            )));
        }
        let (q, r) = g.div_rem(&prev);
        if !r.is_zero() {
            return Err(Error::InvalidDivisorChain(format!(
                "{prev} does not divide {g} at position {i}"
            )));
        }
        factors.push(q);
        prev = g.clone();
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{circulant, IntMatrix};
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| big(x)).collect()
    }

    fn diag(values: &[i64]) -> IntMatrix {
        let n = values.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = big(v);
        }
        m
    }

    /// Builds the rows x cols diagonal matrix carrying the factors.
    fn factor_diagonal(factors: &[BigInt], rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }

    #[test]
    fn zero_and_identity() {
        assert_eq!(
            smith_form(&IntMatrix::zeros(2, 3), false).invariant_factors(),
            bigs(&[0, 0])
        );
        assert_eq!(
            smith_form(&IntMatrix::identity(3), false).invariant_factors(),
            bigs(&[1, 1, 1])
        );
        let empty = smith_form(&IntMatrix::zeros(0, 0), true);
        assert!(empty.invariant_factors().is_empty());
        assert_eq!(empty.rank(), 0);
    }

    #[test]
    fn diagonal_examples() {
        let d = smith_form(&diag(&[4, 6]), false);
        assert_eq!(d.invariant_factors(), bigs(&[2, 12]));
        assert_eq!(d.rank(), 2);
    }

    #[test]
    fn circulant_example() {
        let m = circulant(&bigs(&[1, 1, 0])).unwrap();
        let d = smith_form(&m, false);
        assert_eq!(d.invariant_factors(), bigs(&[1, 1, 2]));
    }

    #[test]
    fn transforms_diagonalize() {
        let m = IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let d = smith_form(&m, true);
        let left = d.left_transform().unwrap();
        let right = d.right_transform().unwrap();
        assert!(left.is_unimodular().unwrap());
        assert!(right.is_unimodular().unwrap());
        assert_eq!(
            &(left * &m) * right,
            factor_diagonal(d.invariant_factors(), 3, 3)
        );
    }

    #[test]
    fn survives_coefficient_growth() {
        // Larger entries exercise the bignum paths and the minimal-pivot
        // heuristic together.
        let mut state: i64 = 7;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 100
        };
        let m = IntMatrix::new(
            8,
            8,
            (0..64).map(|_| BigInt::from(next())).collect(),
        );
        let d = smith_form(&m, true);
        assert!(is_valid_chain(d.invariant_factors()));
        let left = d.left_transform().unwrap();
        let right = d.right_transform().unwrap();
        assert!(left.is_unimodular().unwrap());
        assert!(right.is_unimodular().unwrap());
        assert_eq!(
            &(left * &m) * right,
            factor_diagonal(d.invariant_factors(), 8, 8)
        );
        let det = m.determinant().unwrap();
        if !det.is_zero() {
            let product: BigInt = d.invariant_factors().iter().product();
            assert_eq!(product, det.abs());
        }
    }

    #[test]
    fn deterministic_output() {
        let m = IntMatrix::from_rows(vec![vec![6, 10], vec![15, 4]]);
        let a = smith_form(&m, true);
        let b = smith_form(&m, true);
        assert_eq!(a.invariant_factors(), b.invariant_factors());
        assert_eq!(a.left_transform(), b.left_transform());
        assert_eq!(a.right_transform(), b.right_transform());
    }

    #[test]
    fn minor_oracle_examples() {
        assert_eq!(
            determinantal_divisors(&IntMatrix::identity(3), 3).unwrap(),
            bigs(&[1, 1, 1])
        );
        assert_eq!(
            determinantal_divisors(&diag(&[4, 6]), 2).unwrap(),
            bigs(&[2, 24])
        );
        assert_eq!(
            determinantal_divisors(&diag(&[2, 2]), 2).unwrap(),
            bigs(&[2, 4])
        );
        assert_eq!(
            determinantal_divisors(&IntMatrix::zeros(9, 9), 1),
            Err(Error::TooLarge { min_dim: 9, cap: 8 })
        );
        assert!(determinantal_divisors_with_cap(&IntMatrix::zeros(9, 9), 1, 9).is_ok());
        assert!(matches!(
            determinantal_divisors(&diag(&[1, 2]), 3),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn divisors_to_factors() {
        assert_eq!(
            invariant_factors_from_divisors(&bigs(&[2, 24])).unwrap(),
            bigs(&[2, 12])
        );
        assert_eq!(
            invariant_factors_from_divisors(&bigs(&[1, 1, 1])).unwrap(),
            bigs(&[1, 1, 1])
        );
        assert_eq!(
            invariant_factors_from_divisors(&bigs(&[3, 0])).unwrap(),
            bigs(&[3, 0])
        );
        assert!(matches!(
            invariant_factors_from_divisors(&bigs(&[0, 3])),
            Err(Error::InvalidDivisorChain(_))
        ));
        assert!(matches!(
            invariant_factors_from_divisors(&bigs(&[2, 3])),
            Err(Error::InvalidDivisorChain(_))
        ));
        assert!(matches!(
            invariant_factors_from_divisors(&bigs(&[-2])),
            Err(Error::InvalidDivisorChain(_))
        ));
    }

    #[test]
    fn chain_validity() {
        assert!(is_valid_chain(&bigs(&[1, 2, 6, 0, 0])));
        assert!(!is_valid_chain(&bigs(&[2, 3])));
        assert!(!is_valid_chain(&bigs(&[0, 1])));
        assert!(!is_valid_chain(&bigs(&[-1])));
        assert!(is_valid_chain(&[]));
    }

    /// Fraction-free row echelon rank; the independent rank oracle.
    fn rank_fraction_free(m: &IntMatrix) -> usize {
        let rows = m.rows();
        let cols = m.cols();
        let mut a: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| (0..cols).map(|j| m[(i, j)].clone()).collect())
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        let limit = rows.min(cols);
        for k in 0..limit {
            let pivot = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero());
            let Some((pi, pj)) = pivot else { break };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            for i in k + 1..rows {
                for j in k + 1..cols {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = crate::util::exact_div(t, &prev);
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
            rank += 1;
        }
        rank
    }

    fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
            prop::collection::vec(-bound..=bound, r * c)
                .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(Into::into).collect()))
        })
    }

    /// Applies a deterministic elementary-operation script to the identity.
    fn unimodular_from_script(n: usize, script: &[(u8, usize, usize, i64)]) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        for &(kind, i, j, c) in script {
            let (i, j) = (i % n, j % n);
            match kind % 3 {
                0 if i != j => {
                    for col in 0..n {
                        let t = &u[(j, col)] * BigInt::from(c);
                        u[(i, col)] += t;
                    }
                }
                1 => u.swap_rows(i, j),
                _ => negate_row(&mut u, i),
            }
        }
        u
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn engine_matches_minor_oracle(m in matrix_strategy(6, 9)) {
            let factors = smith_form(&m, false);
            let gammas =
                determinantal_divisors(&m, m.rows().min(m.cols())).unwrap();
            let expected = invariant_factors_from_divisors(&gammas).unwrap();
            prop_assert_eq!(factors.invariant_factors(), &expected[..]);
        }

        #[test]
        fn transforms_are_valid(m in matrix_strategy(6, 9)) {
            let d = smith_form(&m, true);
            let left = d.left_transform().unwrap();
            let right = d.right_transform().unwrap();
            prop_assert!(left.is_unimodular().unwrap());
            prop_assert!(right.is_unimodular().unwrap());
            let product = &(left * &m) * right;
            prop_assert_eq!(product, factor_diagonal(d.invariant_factors(), m.rows(), m.cols()));
            prop_assert!(is_valid_chain(d.invariant_factors()));
        }

        #[test]
        fn invariant_under_unimodular_equivalence(
            m in matrix_strategy(5, 9),
            left_script in prop::collection::vec((0u8..3, 0usize..5, 0usize..5, -3i64..=3), 1..10),
            right_script in prop::collection::vec((0u8..3, 0usize..5, 0usize..5, -3i64..=3), 1..10),
        ) {
            let u = unimodular_from_script(m.rows(), &left_script);
            let v = unimodular_from_script(m.cols(), &right_script);
            let equivalent = &(&u * &m) * &v;
            let transformed = smith_form(&equivalent, false);
            let original = smith_form(&m, false);
            prop_assert_eq!(transformed.invariant_factors(), original.invariant_factors());
        }

        #[test]
        fn factor_product_matches_determinant(
            m in (1usize..=6).prop_flat_map(|n| {
                prop::collection::vec(-9i64..=9, n * n)
                    .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(Into::into).collect()))
            }),
        ) {
            let d = smith_form(&m, false);
            let det = m.determinant().unwrap();
            if det.is_zero() {
                prop_assert!(d.rank() < m.rows());
            } else {
                let product: BigInt = d.invariant_factors().iter().product();
                prop_assert_eq!(product, det.abs());
            }
        }

        #[test]
        fn rank_matches_elimination(m in matrix_strategy(6, 9)) {
            let d = smith_form(&m, false);
            prop_assert_eq!(d.rank(), rank_fraction_free(&m));
            let zeros = d.invariant_factors().iter().filter(|f| f.is_zero()).count();
            prop_assert_eq!(d.rank() + zeros, d.invariant_factors().len());
        }
    }
}
