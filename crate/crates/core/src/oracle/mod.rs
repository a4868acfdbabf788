//! Independent spectral oracle: q-expansions of Delta and the Eisenstein
//! series, monomial bases of the level-one cusp spaces, exact Hecke
//! matrices, traces and characteristic polynomials.
//!
//! Everything the geometric engine produces is tested against this module;
//! the two sides share only the exact scalar types.

mod hecke;
mod qseries;

pub use hecke::{CuspSpace, HeckeMatrix};
pub use qseries::QSeries;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("Eisenstein weight must be 4 or 6 (got {weight})")]
    UnsupportedEisensteinWeight { weight: u64 },
    #[error("weight k = {k} is not supported: need even k >= 4")]
    UnsupportedWeight { k: u64 },
    #[error("Hecke index m = {m} out of range (this space supports 1..={m_max})")]
    HeckeIndexOutOfRange { m: u64, m_max: u64 },
    #[error("working precision too small for an exact coordinate solve at (k = {k}, m = {m})")]
    Precision { k: u64, m: u64 },
    #[error("characteristic polynomial has a non-integer coefficient")]
    NonIntegralCharpoly,
}

/// Normalized Eisenstein series of weight 4 or 6:
/// `E4 = 1 + 240 sum sigma_3(n) q^n`, `E6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein(weight: u64, prec: usize) -> Result<QSeries, OracleError> {
    assert!(prec >= 1, "eisenstein needs precision at least 1");
    match weight {
        4 | 6 => Ok(QSeries::from_integer_coeffs(&qseries::eisenstein_z(
            weight, prec,
        ))),
        _ => Err(OracleError::UnsupportedEisensteinWeight { weight }),
    }
}

/// The discriminant cusp form `Delta = q prod (1 - q^n)^24`, truncated.
pub fn delta(prec: usize) -> QSeries {
    QSeries::from_integer_coeffs(&qseries::delta_z(prec))
}

/// Exponent triples `(a, b, c)` of the monomial basis
/// `Delta^a E4^b E6^c` of the weight-k cusp space, with `a >= 1`,
/// `12a + 4b + 6c = k` and `c` in {0, 1}, ordered by descending `a`.
/// One monomial per leading exponent; the list length is the dimension.
pub(crate) fn monomial_exponents(k: u64) -> Vec<(u64, u64, u64)> {
    let mut exps = Vec::new();
    if k % 2 != 0 {
        return exps;
    }
    for a in (1..=k / 12).rev() {
        let r = k - 12 * a;
        if r == 2 {
            continue; // 4b + 6c = 2 has no solution with c in {0, 1}
        }
        let c = if r % 4 == 2 { 1 } else { 0 };
        let b = (r - 6 * c) / 4;
        exps.push((a, b, c));
    }
    exps
}

/// Dimension of the weight-k level-one cusp space.
pub fn dim_cusp(k: u64) -> usize {
    monomial_exponents(k).len()
}

/// The monomial basis of the weight-k cusp space as q-expansions to the
/// requested precision, ordered by descending Delta-exponent.
pub fn cusp_basis(k: u64, prec: usize) -> Vec<QSeries> {
    assert!(prec >= 2, "cusp_basis needs precision at least 2");
    let exps = monomial_exponents(k);
    if exps.is_empty() {
        return Vec::new();
    }
    let d = delta(prec);
    let e4 = eisenstein(4, prec).expect("weight 4 is supported");
    let e6 = eisenstein(6, prec).expect("weight 6 is supported");
    exps.into_iter()
        .map(|(a, b, c)| {
            let mut f = d.pow(a);
            if b > 0 {
                f = f.mul(&e4.pow(b));
            }
            if c > 0 {
                f = f.mul(&e6.pow(c));
            }
            debug_assert!(f.is_cusp());
            f
        })
        .collect()
}

/// Matrix of `T_m` on the weight-k cusp space (self-contained; build a
/// [`CuspSpace`] once instead when sweeping many `m`).
pub fn hecke_matrix(k: u64, m: u64) -> Result<HeckeMatrix, OracleError> {
    CuspSpace::new(k, m)?.hecke_matrix(m)
}

/// Exact trace of `T_m` on the weight-k cusp space.
pub fn oracle_trace(k: u64, m: u64) -> Result<Rational, OracleError> {
    Ok(hecke_matrix(k, m)?.trace())
}

/// Monic integer characteristic polynomial of `T_m`, ascending degree.
pub fn charpoly(k: u64, m: u64) -> Result<Vec<BigInt>, OracleError> {
    hecke_matrix(k, m)?.charpoly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn eisenstein_known_values() {
        let e4 = eisenstein(4, 3).unwrap();
        assert_eq!(e4.coeff(0), &rat(1));
        assert_eq!(e4.coeff(1), &rat(240));
        let e6 = eisenstein(6, 3).unwrap();
        assert_eq!(e6.coeff(2), &rat(-16632));
        assert!(matches!(
            eisenstein(8, 3),
            Err(OracleError::UnsupportedEisensteinWeight { weight: 8 })
        ));
    }

    #[test]
    fn delta_known_values() {
        let d = delta(6);
        assert_eq!(d.coeff(1), &rat(1));
        assert_eq!(d.coeff(2), &rat(-24));
        assert_eq!(d.coeff(5), &rat(4830));
    }

    #[test]
    fn basis_shapes() {
        assert_eq!(monomial_exponents(12), vec![(1, 0, 0)]);
        assert_eq!(monomial_exponents(24), vec![(2, 0, 0), (1, 3, 0)]);
        assert_eq!(monomial_exponents(10), vec![]);
        assert_eq!(monomial_exponents(26), vec![(1, 2, 1)]);
        assert_eq!(monomial_exponents(30), vec![(2, 0, 1), (1, 3, 1)]);
        let basis = cusp_basis(24, 8);
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].coeff(1), &rat(0));
        assert_eq!(basis[0].coeff(2), &rat(1));
        assert_eq!(basis[1].coeff(1), &rat(1));
        assert!(basis.iter().all(QSeries::is_cusp));
    }

    #[test]
    fn dimensions_follow_the_classical_pattern() {
        let classical = |k: u64| -> usize {
            if k % 2 != 0 || k < 12 || k == 14 {
                0
            } else if k % 12 == 2 {
                (k / 12 - 1) as usize
            } else {
                (k / 12) as usize
            }
        };
        for k in (4..=60).step_by(2) {
            assert_eq!(dim_cusp(k), classical(k), "dimension mismatch at k = {k}");
        }
    }

    #[test]
    fn oracle_trace_known_values() {
        assert_eq!(oracle_trace(12, 5).unwrap(), rat(4830));
        assert_eq!(oracle_trace(16, 1).unwrap(), rat(1));
    }

    #[test]
    fn hecke_operators_commute() {
        for k in (4..=28).step_by(2) {
            let space = CuspSpace::new(k, 6).unwrap();
            let t2 = space.hecke_matrix(2).unwrap();
            let t3 = space.hecke_matrix(3).unwrap();
            let t6 = space.hecke_matrix(6).unwrap();
            assert_eq!(t2.mul(&t3), t6, "T2*T3 != T6 at k = {k}");
            assert_eq!(t3.mul(&t2), t6, "T3*T2 != T6 at k = {k}");
        }
    }

    #[test]
    fn hecke_prime_square_recursion() {
        // T_{p^2} = T_p^2 - p^{k-1} on level one
        for k in [12u64, 24] {
            let space = CuspSpace::new(k, 49).unwrap();
            for p in [2u64, 3, 5, 7] {
                let tp = space.hecke_matrix(p).unwrap();
                let tp2 = space.hecke_matrix(p * p).unwrap();
                let scale = crate::exact::int_pow(&rat(p as i64), (k - 1) as i64);
                let expected = tp.mul(&tp).sub(&HeckeMatrix::identity(space.dim()).scaled(&scale));
                assert_eq!(tp2, expected, "recursion fails at k = {k}, p = {p}");
            }
        }
    }

    #[test]
    fn eigenform_normalization_on_one_dimensional_spaces() {
        // For dim-1 spaces the matrix entry is a_m of the normalized form.
        let space = CuspSpace::new(16, 5).unwrap();
        let basis = cusp_basis(16, 8);
        assert_eq!(basis.len(), 1);
        for m in 2..=5u64 {
            let matrix = space.hecke_matrix(m).unwrap();
            assert_eq!(matrix.entry(0, 0), basis[0].coeff(m as usize));
        }
    }
}
