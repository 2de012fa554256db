//! Exact-arithmetic Smith normal forms for matrices in companion rings.
//!
//! A monic polynomial `g` determines its companion matrix `C_g`, and the
//! matrices `f(C_g)` (polynomials in `C_g` with integer coefficients) form a
//! commutative ring isomorphic to `Z[t]/<g(t)>`. Circulant, skew-circulant
//! and lower triangular Toeplitz matrices are the special cases
//! `g = t^n - 1`, `t^n + 1` and `t^n`.
//!
//! The crate provides:
//!
//! * [`poly`] — exact integer polynomial arithmetic: division by monic
//!   divisors, contents, monic gcds, resultants and cyclotomic polynomials;
//! * [`matrix`] — dense arbitrary-precision integer matrices, companion
//!   matrices, and the O(n^2) evaluation of `f(C_g)`;
//! * [`smith`] — the Smith normal form engine over the integers, with
//!   optional unimodular transform tracking and a minor-based
//!   determinantal-divisor oracle;
//! * [`structured`] — structural fast paths: reduction by the monic gcd,
//!   factorization splittings, closed-form Smith forms of cyclotomic
//!   companion matrices and of torus-knot circulants;
//! * [`topology`] — abelianizations of relation matrices, cyclic
//!   presentations, and the first homology of 3-dimensional Brieskorn
//!   manifolds `M(r, s, n)` with `r, s` coprime;
//! * [`verify`] — seeded verification sweeps comparing every fast path
//!   against the general engine;
//! * [`cli`] — the `companion-smith` command-line front end.

pub mod cli;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod smith;
pub mod structured;
pub mod topology;
mod util;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{CompanionRingElement, IntMatrix};
pub use poly::IntPolynomial;
pub use smith::SmithDecomposition;
pub use topology::AbelianGroup;
