//! Character engine for GL(2)/SL(2): symmetric-power characters evaluated
//! from (trace, determinant) pairs, twisted algebraic characters, the
//! discrete-series character on elliptic classes, and the trace table of
//! the weight-k pseudo-coefficients.
//!
//! Characters are never evaluated from matrix entries or eigenvalues. The
//! symmetric-power trace satisfies `S_k = t*S_{k-1} - n*S_{k-2}` with
//! `S_0 = 1`, `S_1 = t`, which keeps every value inside the base scalar
//! domain.

use thiserror::Error;

use crate::exact::{int_pow, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharsError {
    #[error("(Alg) parity violated: k = {k} and w = {w} differ mod 2")]
    AlgViolation { k: i64, w: i64 },
    #[error("determinant parameter is zero")]
    ZeroDeterminant,
    #[error("weight vector must contain at least one weight")]
    EmptyWeight,
    #[error("weight entries must be at least 2 (got {k})")]
    WeightTooSmall { k: i64 },
}

/// An archimedean weight vector: one integer `k_v >= 2` per real place,
/// plus the central character exponent `w`. Construction enforces the
/// parity condition `k_v = w (mod 2)` at every place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<i64>,
    w: i64,
}

impl WeightVector {
    pub fn new(weights: Vec<i64>, w: i64) -> Result<Self, CharsError> {
        if weights.is_empty() {
            return Err(CharsError::EmptyWeight);
        }
        for &k in &weights {
            if k < 2 {
                return Err(CharsError::WeightTooSmall { k });
            }
            if (k - w).rem_euclid(2) != 0 {
                return Err(CharsError::AlgViolation { k, w });
            }
        }
        Ok(WeightVector { weights, w })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn central_exponent(&self) -> i64 {
        self.w
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Entries permuted by `perm` (entry `v` of the result is entry
    /// `perm[v]` of `self`); `w` unchanged, parity automatically kept.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, CharsError> {
        assert_eq!(perm.len(), self.weights.len(), "permutation length mismatch");
        let weights = perm.iter().map(|&i| self.weights[i]).collect();
        WeightVector::new(weights, self.w)
    }
}

/// Label of an irreducible archimedean representation as the trace table
/// sees it: a discrete series with lowest rotation type `n >= 2`, a
/// finite-dimensional algebraic representation of highest weight `n >= 0`,
/// or any principal series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepLabel {
    DiscreteSeries(u64),
    AlgebraicRep(u64),
    PrincipalSeries,
}

/// Trace of the k-th symmetric power at any matrix of trace `t` and
/// determinant `n`: the two-term recurrence gives the full homogeneous
/// power sum in the eigenvalues without ever splitting the field.
pub fn sym_char<S: Scalar>(k: u64, t: &S, n: &S) -> S {
    if k == 0 {
        return t.one_like();
    }
    let mut prev = t.one_like();
    let mut cur = t.clone();
    for _ in 2..=k {
        let next = t.clone() * cur.clone() - n.clone() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Character of the algebraic representation with highest weight pair
/// `((k+w)/2, (-k+w)/2)`: the symmetric-power trace times the exact
/// determinant power `n^{(w-k)/2}`.
pub fn ch_kw<S: Scalar>(k: u64, w: i64, t: &S, n: &S) -> Result<S, CharsError> {
    if (k as i64 - w).rem_euclid(2) != 0 {
        return Err(CharsError::AlgViolation { k: k as i64, w });
    }
    if n.is_zero() {
        return Err(CharsError::ZeroDeterminant);
    }
    let e = (w - k as i64) / 2;
    Ok(int_pow(n, e) * sym_char(k, t, n))
}

/// Discrete-series character value on elliptic classes: `-S_{m-2}(t, n)`.
/// Ellipticity (`t^2 - 4n < 0` at the relevant embedding) is the caller's
/// contract. Pre: `m >= 2`.
pub fn ds_char_elliptic<S: Scalar>(m: u64, t: &S, n: &S) -> S {
    debug_assert!(m >= 2, "discrete series parameter must be at least 2");
    -sym_char(m - 2, t, n)
}

/// The trace table of the weight-k pseudo-coefficient: +1 on the weight-k
/// discrete series, -1 on the algebraic representation of highest weight
/// k-2, 0 on everything else (in particular on every principal series).
pub fn pseudo_coeff_trace(k: u64, rep: &RepLabel) -> i8 {
    match rep {
        RepLabel::DiscreteSeries(n) if *n == k => 1,
        RepLabel::AlgebraicRep(n) if *n + 2 == k => -1,
        _ => 0,
    }
}

/// Central character value at -1: `(-1)^k`. Independent of `w`.
pub fn central_parity(k: i64, _w: i64) -> i8 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
