//! Hurwitz class numbers H(N) by exhaustive enumeration of reduced
//! positive-definite binary quadratic forms.
//!
//! H(N) weights the forms with extra automorphisms: multiples of
//! x^2 + y^2 count 1/2, multiples of x^2 + xy + y^2 count 1/3, everything
//! else counts 1. H(0) = -1/12, and H(N) = 0 for N = 1, 2 (mod 4).
//! These are the arithmetic weights of the elliptic conjugacy classes at
//! level one.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::exact::{rat, ratio, Rational};

/// A reduced positive-definite form `a x^2 + b xy + c y^2`:
/// `|b| <= a <= c`, with `b >= 0` whenever `|b| = a` or `a = c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Weight of this form class in the Hurwitz count.
    pub fn automorphism_weight(&self) -> Rational {
        if self.b == 0 && self.a == self.c {
            ratio(1, 2)
        } else if self.a == self.b && self.b == self.c {
            ratio(1, 3)
        } else {
            rat(1)
        }
    }
}

/// All reduced positive-definite forms of discriminant `-n`. Empty unless
/// `n = 0` or `3 (mod 4)`. Every reduced form has `a <= sqrt(n/3)`, so the
/// enumeration over `a` and `|b| <= a` visits every candidate.
pub fn reduced_forms(n: u64) -> Vec<ReducedForm> {
    assert!(n >= 1, "reduced_forms needs a positive discriminant -n");
    let mut forms = Vec::new();
    if n % 4 == 1 || n % 4 == 2 {
        return forms;
    }
    let n = n as i64;
    let a_bound = ((n / 3) as u64).isqrt() as i64;
    for a in 1..=a_bound {
        for b in -a..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue; // the b >= 0 representative is enumerated instead
            }
            forms.push(ReducedForm { a, b, c });
        }
    }
    forms
}

/// The Hurwitz class number H(n), exact.
pub fn hurwitz(n: u64) -> Rational {
    if n == 0 {
        return ratio(-1, 12);
    }
    reduced_forms(n)
        .iter()
        .map(ReducedForm::automorphism_weight)
        .fold(rat(0), |acc, w| acc + w)
}

/// Default memo bound used when no Hecke-grid hint is available.
pub const DEFAULT_CACHE_BOUND: u64 = 4 * 64 + 1;

/// A thread-safe read-mostly cache of Hurwitz class numbers.
///
/// Values with `n <= bound` are cached (the fill is idempotent, so
/// concurrent readers may race harmlessly); larger arguments are computed
/// fresh. A trace grid over `m <= m_max` reads exactly the values
/// `n <= 4 m_max + 1`, which is the bound `for_hecke_bound` installs.
#[derive(Debug)]
pub struct HurwitzTable {
    bound: u64,
    cache: RwLock<HashMap<u64, Rational>>,
}

impl HurwitzTable {
    pub fn with_bound(bound: u64) -> Self {
        HurwitzTable {
            bound,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Sized for a Hecke grid with indices up to `m_max`.
    pub fn for_hecke_bound(m_max: u64) -> Self {
        HurwitzTable::with_bound(4 * m_max + 1)
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn get(&self, n: u64) -> Rational {
        if n > self.bound {
            return hurwitz(n);
        }
        if let Some(v) = self.cache.read().unwrap().get(&n) {
            return v.clone();
        }
        let v = hurwitz(n);
        self.cache.write().unwrap().insert(n, v.clone());
        v
    }
}

impl Default for HurwitzTable {
    fn default() -> Self {
        HurwitzTable::with_bound(DEFAULT_CACHE_BOUND)
    }
}
