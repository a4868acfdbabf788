//! Geometric-side assembly: identity, elliptic and hyperbolic
//! distributions summing to the exact trace of `T_m` on the weight-k
//! level-one cusp space.
//!
//! - identity: `(k-1)/12 * m^{(k-2)/2}` when `m` is a perfect square,
//!   else 0;
//! - elliptic: `-(1/2) sum_{t^2 < 4m} S_{k-2}(t, m) H(4m - t^2)`, one
//!   summand per elliptic class `(t, m)`, weighted by the Hurwitz class
//!   number;
//! - hyperbolic: `-(1/2) sum_{d d' = m} min(d, d')^{k-1}` over ordered
//!   factorizations.
//!
//! Weight 2 is rejected: the residual spectrum contributes there and the
//! simple three-term expansion no longer closes.

use thiserror::Error;

use crate::chars::sym_char;
use crate::classnum::HurwitzTable;
use crate::exact::{int_pow, rat, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("weight k = {k} violates the domain: need even k >= 4")]
    UnsupportedWeight { k: u64 },
    #[error("Hecke index m must be at least 1")]
    InvalidHeckeIndex,
}

/// The per-distribution decomposition of one trace computation.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceBreakdown {
    pub k: u64,
    pub m: u64,
    pub identity: Rational,
    pub elliptic: Rational,
    pub hyperbolic: Rational,
    pub total: Rational,
}

/// A Hecke datum `T_m` at level one. Its values are rational, so every
/// field automorphism fixes it; conjugation acts trivially (see
/// [`crate::galois::conjugate_hecke`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeckeDatum {
    pub m: u64,
}

impl HeckeDatum {
    pub fn new(m: u64) -> Result<Self, EngineError> {
        if m < 1 {
            return Err(EngineError::InvalidHeckeIndex);
        }
        Ok(HeckeDatum { m })
    }

    /// Rational-valued in the supported scope, hence fixed by every
    /// automorphism of the complex numbers.
    pub fn is_rational_valued(&self) -> bool {
        true
    }
}

/// Geometric-side evaluator with a shared class-number cache.
#[derive(Debug, Default)]
pub struct TraceEngine {
    hurwitz: HurwitzTable,
}

impl TraceEngine {
    pub fn new() -> Self {
        TraceEngine::default()
    }

    /// Cache sized for a grid of Hecke indices up to `m_max`.
    pub fn for_hecke_bound(m_max: u64) -> Self {
        TraceEngine {
            hurwitz: HurwitzTable::for_hecke_bound(m_max),
        }
    }

    pub fn with_hurwitz_bound(bound: u64) -> Self {
        TraceEngine {
            hurwitz: HurwitzTable::with_bound(bound),
        }
    }

    fn validate(k: u64, m: u64) -> Result<(), EngineError> {
        if k % 2 != 0 || k < 4 {
            return Err(EngineError::UnsupportedWeight { k });
        }
        if m < 1 {
            return Err(EngineError::InvalidHeckeIndex);
        }
        Ok(())
    }

    /// `(k-1)/12 * m^{(k-2)/2}` for square `m`, else 0. The 1/12 is the
    /// level-one volume normalization.
    pub fn identity_term(&self, k: u64, m: u64) -> Result<Rational, EngineError> {
        Self::validate(k, m)?;
        let root = m.isqrt();
        if root * root != m {
            return Ok(rat(0));
        }
        let power = int_pow(&rat(m as i64), ((k - 2) / 2) as i64);
        Ok(ratio(k as i64 - 1, 12) * power)
    }

    /// The elliptic distribution: every integer trace `t` with
    /// `t^2 < 4m` contributes its symmetric-power character value times
    /// the Hurwitz class number of the discriminant `t^2 - 4m`.
    pub fn elliptic_term(&self, k: u64, m: u64) -> Result<Rational, EngineError> {
        Self::validate(k, m)?;
        let t_bound = (4 * m - 1).isqrt() as i64;
        let mut acc = rat(0);
        for t in -t_bound..=t_bound {
            let n = 4 * m - (t * t) as u64;
            let weight = self.hurwitz.get(n);
            acc = acc + sym_char(k - 2, &rat(t), &rat(m as i64)) * weight;
        }
        Ok(ratio(-1, 2) * acc)
    }

    /// The hyperbolic correction over ordered factorizations `d d' = m`.
    pub fn hyperbolic_term(&self, k: u64, m: u64) -> Result<Rational, EngineError> {
        Self::validate(k, m)?;
        let mut acc = rat(0);
        for d in 1..=m {
            if m % d != 0 {
                continue;
            }
            let small = d.min(m / d);
            acc = acc + int_pow(&rat(small as i64), (k - 1) as i64);
        }
        Ok(ratio(-1, 2) * acc)
    }

    /// Full breakdown; the total is the exact trace of `T_m` on the
    /// weight-k level-one cusp space.
    pub fn trace_cusp(&self, k: u64, m: u64) -> Result<TraceBreakdown, EngineError> {
        let identity = self.identity_term(k, m)?;
        let elliptic = self.elliptic_term(k, m)?;
        let hyperbolic = self.hyperbolic_term(k, m)?;
        let total = &identity + &elliptic + &hyperbolic;
        Ok(TraceBreakdown {
            k,
            m,
            identity,
            elliptic,
            hyperbolic,
            total,
        })
    }
}
