//! Abelianizations of relation matrices, cyclic presentations, and the
//! first homology of 3-dimensional Brieskorn manifolds.
//!
//! The relation matrix of a cyclic presentation with exponent-sum vector
//! `(a_0, ..., a_(n-1))` is the circulant `f(C_(t^n - 1))` with
//! `f = sum a_i t^i`, so the homology of any manifold whose fundamental
//! group carries such a presentation is read off a circulant Smith form.
//! For the Brieskorn manifold `M(r, s, n)` with coprime `r, s` the
//! representer polynomial is the Alexander polynomial of the torus knot
//! `K(r, s)` reduced modulo `t^n - 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{circulant, IntMatrix};
use crate::smith::smith_form;
use crate::structured::torus_circulant_smith;

/// A finitely generated abelian group in canonical form: a torsion chain
/// (entries >= 2, each dividing the next) plus the Betti number. Two groups
/// are isomorphic iff the values are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    torsion: Vec<BigInt>,
    betti: usize,
}

impl AbelianGroup {
    /// The trivial group.
    pub fn trivial() -> Self {
        AbelianGroup {
            torsion: Vec::new(),
            betti: 0,
        }
    }

    /// Canonicalizes the Smith invariant factors of a relation matrix with
    /// the given number of generators: unit factors are dropped, zero
    /// factors count into the Betti number.
    pub fn from_invariant_factors(factors: &[BigInt], generators: usize) -> Self {
        let rank = factors.iter().filter(|f| !f.is_zero()).count();
        debug_assert!(rank <= generators);
        AbelianGroup {
            torsion: factors
                .iter()
                .filter(|f| !f.is_zero() && !f.is_one())
                .cloned()
                .collect(),
            betti: generators - rank,
        }
    }

    /// The torsion coefficients, a divisibility chain with entries >= 2.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// The torsion-free rank.
    pub fn betti(&self) -> usize {
        self.betti
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.betti == 0
    }
}

impl fmt::Display for AbelianGroup {
    /// Renders like `Z_2^2 + Z_6 + Z^2`; the trivial group is `trivial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.torsion.len() {
            let value = &self.torsion[i];
            let mut count = 1;
            while i + count < self.torsion.len() && &self.torsion[i + count] == value {
                count += 1;
            }
            if count == 1 {
                parts.push(format!("Z_{value}"));
            } else {
                parts.push(format!("Z_{value}^{count}"));
            }
            i += count;
        }
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exponent-sum data of a cyclic presentation: `n` generators and the
/// exponent sums `(a_0, ..., a_(n-1))` of the defining word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPresentation {
    exponent_sums: Vec<BigInt>,
}

impl CyclicPresentation {
    pub fn new(exponent_sums: Vec<BigInt>) -> Result<Self> {
        if exponent_sums.is_empty() {
            return Err(Error::OutOfRange(
                "cyclic presentation needs at least one generator".to_string(),
            ));
        }
        Ok(CyclicPresentation { exponent_sums })
    }

    /// Number of generators (= number of relators).
    pub fn generators(&self) -> usize {
        self.exponent_sums.len()
    }

    pub fn exponent_sums(&self) -> &[BigInt] {
        &self.exponent_sums
    }
}

/// The abelianization of the group presented by the `n x m` relation matrix
/// (generators x relators): torsion from the invariant factors exceeding 1,
/// Betti number `n - rank`.
pub fn abelianization(relation_matrix: &IntMatrix) -> AbelianGroup {
    let decomposition = smith_form(relation_matrix, false);
    AbelianGroup::from_invariant_factors(
        decomposition.invariant_factors(),
        relation_matrix.rows(),
    )
}

/// The relation matrix of a cyclic presentation: the circulant of the
/// exponent sums, equal to `f_w(C_(t^n - 1))` for the representer
/// polynomial `f_w`.
pub fn representer_circulant(presentation: &CyclicPresentation) -> IntMatrix {
    circulant(presentation.exponent_sums()).expect("presentation has at least one generator")
}

/// First homology of the Brieskorn manifold `M(r, s, n)` for coprime
/// `r, s >= 2` and `n >= 2`, computed from the closed-form Smith chain of
/// the Alexander circulant and canonicalized.
pub fn brieskorn_homology(r: u64, s: u64, n: u64) -> Result<AbelianGroup> {
    if r < 2 || s < 2 || n < 2 {
        return Err(Error::OutOfRange(format!(
            "Brieskorn parameters must be >= 2 (got r={r}, s={s}, n={n})"
        )));
    }
    let chain = torus_circulant_smith(r, s, n)?;
    Ok(AbelianGroup::from_invariant_factors(
        chain.invariant_factors(),
        n as usize,
    ))
}
