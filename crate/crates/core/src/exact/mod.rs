//! Exact arithmetic foundation: arbitrary-precision rationals and real
//! quadratic field elements with Galois conjugation and exact sign
//! computation at both real embeddings.
//!
//! Every value the rest of the crate produces is built from these scalars;
//! there is no floating point in any trusted path.

mod quad;

pub use quad::{is_squarefree, squarefree_part, QuadElem};

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// The universal exact scalar: an arbitrary-precision rational, always kept
/// in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("elements lie in different quadratic fields (d = {left} vs d = {right})")]
    MismatchedField { left: i64, right: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("d = {d} admits no real embedding distinction")]
    NoRealEmbedding { d: i64 },
    #[error("invalid field seed d = {d}: must be squarefree and not 0 or 1")]
    InvalidFieldSeed { d: i64 },
    #[error("cannot parse {input:?} as {expected}")]
    Parse { input: String, expected: &'static str },
}

/// Exact sign of a real algebraic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// The two real embeddings of a real quadratic field: `V1` sends
/// `sqrt(d)` to the positive square root, `V2` to the negative one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    V1,
    V2,
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n / d`. Panics if `d = 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_sign(x: &Rational) -> Sign {
    match x.numer().sign() {
        IntSign::Minus => Sign::Negative,
        IntSign::NoSign => Sign::Zero,
        IntSign::Plus => Sign::Positive,
    }
}

/// Parse the canonical rendering "p/q" (or "p" when q = 1).
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    s.trim().parse::<Rational>().map_err(|_| ExactError::Parse {
        input: s.to_owned(),
        expected: "rational number p/q",
    })
}

/// A scalar domain the character formulas can run in: exact field
/// arithmetic plus context-carrying constants (a `QuadElem` zero needs to
/// know its field, so constants are derived from an existing value).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
}

/// Exact integer power with negative exponents via exact division.
/// Panics if `base` is zero and `exp < 0`.
pub fn int_pow<S: Scalar>(base: &S, exp: i64) -> S {
    let mut acc = base.one_like();
    let mut b = base.clone();
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    if exp < 0 {
        base.one_like() / acc
    } else {
        acc
    }
}

/// A scalar with a full set of real embeddings: the rationals (one place)
/// or a real quadratic field (two places, ordered `V1`, `V2`).
pub trait TotallyReal: Scalar {
    fn real_places(&self) -> usize;
    /// Exact sign under the given real embedding. Pre: `domain_check` passed.
    fn sign_at(&self, place: usize) -> Sign;
    /// The field automorphism matching place `place` to the fixed first
    /// place: identity for place 0, the nontrivial conjugation for place 1.
    fn place_conjugate(&self, place: usize) -> Self;
    /// The nontrivial Galois conjugation (identity over the rationals).
    fn galois_conj(&self) -> Self;
    /// Fixed by every automorphism, i.e. lies in the rationals.
    fn is_rational(&self) -> bool;
    fn same_domain(&self, other: &Self) -> bool;
    /// Err if the scalar domain has no real embeddings (imaginary d).
    fn domain_check(&self) -> Result<(), ExactError>;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        rat(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl TotallyReal for Rational {
    fn real_places(&self) -> usize {
        1
    }
    fn sign_at(&self, _place: usize) -> Sign {
        rational_sign(self)
    }
    fn place_conjugate(&self, _place: usize) -> Self {
        self.clone()
    }
    fn galois_conj(&self) -> Self {
        self.clone()
    }
    fn is_rational(&self) -> bool {
        true
    }
    fn same_domain(&self, _other: &Self) -> bool {
        true
    }
    fn domain_check(&self) -> Result<(), ExactError> {
        Ok(())
    }
}

/// The four field operations, for the checked arithmetic entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic in a quadratic field: rejects mismatched fields and
/// division by zero instead of panicking.
pub fn quad_arith(op: QuadOp, x: &QuadElem, y: &QuadElem) -> Result<QuadElem, ExactError> {
    if x.d() != y.d() {
        return Err(ExactError::MismatchedField {
            left: x.d(),
            right: y.d(),
        });
    }
    match op {
        QuadOp::Add => Ok(x.clone() + y.clone()),
        QuadOp::Sub => Ok(x.clone() - y.clone()),
        QuadOp::Mul => Ok(x.clone() * y.clone()),
        QuadOp::Div => {
            if y.is_zero() {
                Err(ExactError::DivisionByZero)
            } else {
                Ok(x.clone() / y.clone())
            }
        }
    }
}

/// Galois conjugation `a + b*sqrt(d) -> a - b*sqrt(d)`, the nontrivial
/// automorphism of the quadratic field. Fixes exactly the rationals.
pub fn quad_conj(x: &QuadElem) -> QuadElem {
    x.conj()
}

/// Exact sign of `x` under a real embedding, by integer case analysis on
/// sign(a), sign(b) and the comparison of `a^2` against `d b^2`.
/// Never touches floating point. Requires `d > 0`.
pub fn quad_sign(x: &QuadElem, embedding: Embedding) -> Result<Sign, ExactError> {
    x.sign_at_embedding(embedding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn q(d: i64, a: (i64, i64), b: (i64, i64)) -> QuadElem {
        QuadElem::new(d, ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn rational_rendering_round_trips() {
        assert_eq!(ratio(22, 4).to_string(), "11/2");
        assert_eq!(rat(-7).to_string(), "-7");
        assert_eq!(parse_rational("11/2").unwrap(), ratio(11, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn quad_arith_known_values() {
        let one_plus = q(5, (1, 1), (1, 1));
        let one_minus = q(5, (1, 1), (-1, 1));
        let prod = quad_arith(QuadOp::Mul, &one_plus, &one_minus).unwrap();
        assert_eq!(prod, QuadElem::from_int(5, -4).unwrap());

        let x = q(5, (3, 1), (2, 1));
        let sum = quad_arith(QuadOp::Add, &x, &(-x.clone())).unwrap();
        assert!(sum.is_zero());

        let y = q(2, (1, 1), (1, 1));
        let sq = quad_arith(QuadOp::Mul, &y, &y).unwrap();
        assert_eq!(sq, q(2, (3, 1), (2, 1)));
    }

    #[test]
    fn quad_arith_rejects_bad_inputs() {
        let x = QuadElem::from_int(5, 1).unwrap();
        let y = QuadElem::from_int(2, 1).unwrap();
        assert_eq!(
            quad_arith(QuadOp::Add, &x, &y),
            Err(ExactError::MismatchedField { left: 5, right: 2 })
        );
        let zero = QuadElem::from_int(5, 0).unwrap();
        assert_eq!(
            quad_arith(QuadOp::Div, &x, &zero),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn conjugation_known_values() {
        let x = q(5, (3, 1), (2, 1));
        assert_eq!(quad_conj(&x), q(5, (3, 1), (-2, 1)));
        let seven = QuadElem::from_int(5, 7).unwrap();
        assert_eq!(quad_conj(&seven), seven);
        let y = q(2, (1, 1), (-1, 1));
        assert_eq!(quad_conj(&quad_conj(&y)), y);
    }

    #[test]
    fn sign_known_values() {
        // 1 - sqrt(2): negative at V1, positive at V2.
        let x = q(2, (1, 1), (-1, 1));
        assert_eq!(quad_sign(&x, Embedding::V1).unwrap(), Sign::Negative);
        assert_eq!(quad_sign(&x, Embedding::V2).unwrap(), Sign::Positive);
        let zero = QuadElem::from_int(2, 0).unwrap();
        assert_eq!(quad_sign(&zero, Embedding::V1).unwrap(), Sign::Zero);
    }

    #[test]
    fn sign_rejects_imaginary_fields() {
        let x = QuadElem::from_int(-1, 3).unwrap();
        assert_eq!(
            quad_sign(&x, Embedding::V1),
            Err(ExactError::NoRealEmbedding { d: -1 })
        );
    }

    #[test]
    fn field_seed_validation() {
        assert!(QuadElem::from_int(4, 1).is_err());
        assert!(QuadElem::from_int(12, 1).is_err());
        assert!(QuadElem::from_int(0, 1).is_err());
        assert!(QuadElem::from_int(1, 1).is_err());
        assert!(QuadElem::from_int(-4, 1).is_err());
        assert!(QuadElem::from_int(-1, 1).is_ok());
        assert!(QuadElem::from_int(13, 1).is_ok());
    }

    #[test]
    fn quad_rendering_round_trips() {
        let x = q(5, (1, 2), (-3, 4));
        assert_eq!(x.to_string(), "1/2-3/4*sqrt(5)");
        assert_eq!(QuadElem::parse_in_field("1/2-3/4*sqrt(5)", 5).unwrap(), x);
        assert_eq!(
            QuadElem::parse_in_field("7", 5).unwrap(),
            QuadElem::from_int(5, 7).unwrap()
        );
        assert!(QuadElem::parse_in_field("1+2*sqrt(3)", 5).is_err());
    }

    // A deliberately naive pair-of-integers rational, used as an
    // independent reference for the production Rational arithmetic.
    #[derive(Clone, Copy, Debug, PartialEq)]
    struct NaiveRat {
        n: i128,
        d: i128,
    }

    impl NaiveRat {
        fn new(n: i128, d: i128) -> Self {
            assert!(d != 0);
            let g = gcd_i128(n.abs(), d.abs());
            let s = if d < 0 { -1 } else { 1 };
            NaiveRat {
                n: s * n / g,
                d: s * d / g,
            }
        }
        fn add(self, o: Self) -> Self {
            NaiveRat::new(self.n * o.d + o.n * self.d, self.d * o.d)
        }
        fn sub(self, o: Self) -> Self {
            NaiveRat::new(self.n * o.d - o.n * self.d, self.d * o.d)
        }
        fn mul(self, o: Self) -> Self {
            NaiveRat::new(self.n * o.n, self.d * o.d)
        }
        fn div(self, o: Self) -> Self {
            assert!(o.n != 0);
            NaiveRat::new(self.n * o.d, self.d * o.n)
        }
    }

    fn gcd_i128(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.max(1)
        } else {
            gcd_i128(b, a % b)
        }
    }

    fn to_big(x: NaiveRat) -> Rational {
        Rational::new(BigInt::from(x.n), BigInt::from(x.d))
    }

    #[test]
    fn rational_matches_naive_reference_on_random_inputs() {
        let mut rng = StdRng::seed_from_u64(917);
        for _ in 0..1000 {
            let a = NaiveRat::new(rng.gen_range(-2000..=2000), rng.gen_range(1..=2000));
            let b = NaiveRat::new(rng.gen_range(-2000..=2000), rng.gen_range(1..=2000));
            let (ba, bb) = (to_big(a), to_big(b));
            assert_eq!(to_big(a.add(b)), ba.clone() + bb.clone());
            assert_eq!(to_big(a.sub(b)), ba.clone() - bb.clone());
            assert_eq!(to_big(a.mul(b)), ba.clone() * bb.clone());
            if b.n != 0 {
                assert_eq!(to_big(a.div(b)), ba / bb);
            }
        }
    }

    fn arb_quad(d: i64) -> impl Strategy<Value = QuadElem> {
        (
            -20i64..=20,
            1i64..=6,
            -20i64..=20,
            1i64..=6,
        )
            .prop_map(move |(an, ad, bn, bd)| q(d, (an, ad), (bn, bd)))
    }

    proptest! {
        #[test]
        fn conj_is_a_ring_homomorphism(x in arb_quad(5), y in arb_quad(5)) {
            prop_assert_eq!(quad_conj(&(x.clone() * y.clone())), quad_conj(&x) * quad_conj(&y));
            prop_assert_eq!(quad_conj(&(x.clone() + y.clone())), quad_conj(&x) + quad_conj(&y));
        }

        #[test]
        fn sign_swaps_with_conjugation(x in arb_quad(13)) {
            prop_assert_eq!(
                quad_sign(&x, Embedding::V1).unwrap(),
                quad_sign(&quad_conj(&x), Embedding::V2).unwrap()
            );
        }

        #[test]
        fn norm_is_self_times_conjugate(x in arb_quad(2)) {
            let prod = x.clone() * quad_conj(&x);
            prop_assert!(prod.is_rational());
            prop_assert_eq!(prod.rational_part(), x.norm());
        }

        #[test]
        fn quad_rendering_round_trip(x in arb_quad(3)) {
            let s = x.to_string();
            prop_assert_eq!(QuadElem::parse_in_field(&s, 3).unwrap(), x);
        }
    }
}
