//! Elements of quadratic fields Q(sqrt(d)), exact.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{rat, rational_sign, Embedding, ExactError, Rational, Scalar, Sign, TotallyReal};

/// True if `d` has no repeated prime factor. `d = 0` counts as not
/// squarefree.
pub fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p: u64 = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Write `n = d0 * f^2` with `d0` squarefree; returns `(d0, f)`.
/// Pre: `n >= 1`.
pub fn squarefree_part(n: u64) -> (u64, u64) {
    assert!(n >= 1, "squarefree_part needs a positive integer");
    let mut rest = n;
    let mut d0 = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            f *= p.pow(e / 2);
            if e % 2 == 1 {
                d0 *= p;
            }
        }
        p += 1;
    }
    // rest is now 1 or a single leftover prime
    (d0 * rest, f)
}

/// An element `a + b*sqrt(d)` of the quadratic field Q(sqrt(d)).
///
/// `d` is a squarefree integer other than 0 and 1. Elements interoperate
/// arithmetically only when their `d` match; the operator impls assert
/// this, and [`super::quad_arith`] checks it fallibly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    d: i64,
    a: Rational,
    b: Rational,
}

impl QuadElem {
    pub fn new(d: i64, a: Rational, b: Rational) -> Result<Self, ExactError> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(ExactError::InvalidFieldSeed { d });
        }
        Ok(QuadElem { d, a, b })
    }

    pub fn from_rational(d: i64, a: Rational) -> Result<Self, ExactError> {
        QuadElem::new(d, a, Rational::zero())
    }

    pub fn from_int(d: i64, n: i64) -> Result<Self, ExactError> {
        QuadElem::from_rational(d, rat(n))
    }

    /// The element `sqrt(d)` itself.
    pub fn sqrt_of(d: i64) -> Result<Self, ExactError> {
        QuadElem::new(d, Rational::zero(), rat(1))
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Coefficient on 1.
    pub fn rational_part(&self) -> Rational {
        self.a.clone()
    }

    /// Coefficient on sqrt(d).
    pub fn sqrt_part(&self) -> Rational {
        self.b.clone()
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadElem {
            d: self.d,
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm `a^2 - d b^2`, a rational.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat(self.d) * &self.b * &self.b
    }

    /// Field trace `2a`, a rational.
    pub fn field_trace(&self) -> Rational {
        rat(2) * &self.a
    }

    pub fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }

    /// Fixed by conjugation, i.e. `b = 0`.
    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    /// Exact sign under a real embedding; errors when `d < 0`.
    ///
    /// Case analysis: when sign(a) and the embedded sign of b agree (or one
    /// vanishes) the answer is immediate; otherwise compare `a^2` against
    /// `d b^2`. A tie there means the element is zero.
    pub fn sign_at_embedding(&self, embedding: Embedding) -> Result<Sign, ExactError> {
        if self.d < 0 {
            return Err(ExactError::NoRealEmbedding { d: self.d });
        }
        let b_embedded = match embedding {
            Embedding::V1 => self.b.clone(),
            Embedding::V2 => -self.b.clone(),
        };
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&b_embedded);
        Ok(match (sa, sb) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (x, y) if x == y => x,
            _ => {
                let a_sq = &self.a * &self.a;
                let db_sq = rat(self.d) * &b_embedded * &b_embedded;
                if a_sq > db_sq {
                    sa
                } else if a_sq < db_sq {
                    sb
                } else {
                    Sign::Zero
                }
            }
        })
    }

    /// Parse the canonical rendering "a+b*sqrt(d)" (or a plain rational)
    /// as an element of Q(sqrt(d)). The written `d` must match.
    pub fn parse_in_field(s: &str, d: i64) -> Result<Self, ExactError> {
        let s = s.trim();
        let err = || ExactError::Parse {
            input: s.to_owned(),
            expected: "quadratic field element a+b*sqrt(d)",
        };
        let Some(star) = s.find("*sqrt(") else {
            let a = super::parse_rational(s)?;
            return QuadElem::from_rational(d, a);
        };
        let head = &s[..star];
        let tail = &s[star + "*sqrt(".len()..];
        let inner = tail.strip_suffix(')').ok_or_else(err)?;
        let written_d: i64 = inner.parse().map_err(|_| err())?;
        if written_d != d {
            return Err(ExactError::MismatchedField {
                left: d,
                right: written_d,
            });
        }
        // The separating sign is the last +/- of the head that is not the
        // leading sign of a.
        let mut sep = None;
        for (i, c) in head.char_indices().skip(1) {
            if c == '+' || c == '-' {
                sep = Some(i);
            }
        }
        let (a_str, b_str, b_negated) = match sep {
            Some(i) => (&head[..i], &head[i + 1..], head.as_bytes()[i] == b'-'),
            None => ("0", head, false),
        };
        let a = super::parse_rational(a_str)?;
        let mut b = super::parse_rational(b_str)?;
        if b_negated {
            b = -b;
        }
        QuadElem::new(d, a, b)
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.d, other.d,
            "quadratic field mismatch: d = {} vs d = {}",
            self.d, other.d
        );
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: QuadElem) -> QuadElem {
        self.assert_same_field(&rhs);
        QuadElem {
            d: self.d,
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: QuadElem) -> QuadElem {
        self.assert_same_field(&rhs);
        QuadElem {
            d: self.d,
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: QuadElem) -> QuadElem {
        self.assert_same_field(&rhs);
        let a = &self.a * &rhs.a + rat(self.d) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadElem { d: self.d, a, b }
    }
}

impl Div for QuadElem {
    type Output = QuadElem;
    fn div(self, rhs: QuadElem) -> QuadElem {
        self.assert_same_field(&rhs);
        assert!(!rhs.is_zero(), "division by zero in Q(sqrt({}))", self.d);
        let n = rhs.norm();
        let num = self * rhs.conj();
        QuadElem {
            d: num.d,
            a: num.a / n.clone(),
            b: num.b / n,
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            d: self.d,
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Scalar for QuadElem {
    fn zero_like(&self) -> Self {
        QuadElem {
            d: self.d,
            a: Rational::zero(),
            b: Rational::zero(),
        }
    }
    fn one_like(&self) -> Self {
        self.from_int_like(1)
    }
    fn from_int_like(&self, n: i64) -> Self {
        QuadElem {
            d: self.d,
            a: rat(n),
            b: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        QuadElem::is_zero(self)
    }
}

impl TotallyReal for QuadElem {
    fn real_places(&self) -> usize {
        2
    }
    fn sign_at(&self, place: usize) -> Sign {
        let e = match place {
            0 => Embedding::V1,
            1 => Embedding::V2,
            _ => panic!("quadratic field has two real places, got index {place}"),
        };
        self.sign_at_embedding(e)
            .expect("sign_at requires a real quadratic field (d > 0)")
    }
    fn place_conjugate(&self, place: usize) -> Self {
        match place {
            0 => self.clone(),
            1 => self.conj(),
            _ => panic!("quadratic field has two real places, got index {place}"),
        }
    }
    fn galois_conj(&self) -> Self {
        self.conj()
    }
    fn is_rational(&self) -> bool {
        QuadElem::is_rational(self)
    }
    fn same_domain(&self, other: &Self) -> bool {
        self.d == other.d
    }
    fn domain_check(&self) -> Result<(), ExactError> {
        if self.d > 0 {
            Ok(())
        } else {
            Err(ExactError::NoRealEmbedding { d: self.d })
        }
    }
}
