//! Exact Hecke matrices on the monomial cusp basis, traces and
//! characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{monomial_exponents, OracleError};
use super::qseries::{delta_z, eisenstein_z, zmul};
use crate::exact::{rat, Rational};

/// A square matrix of exact rationals, indexed by the monomial cusp basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeMatrix {
    entries: Vec<Vec<Rational>>,
}

impl HeckeMatrix {
    pub fn from_rows(entries: Vec<Vec<Rational>>) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n), "matrix must be square");
        HeckeMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim()).map(|i| self.entries[i][i].clone()).fold(rat(0), |a, b| a + b)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        let n = self.dim();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|l| &self.entries[i][l] * &rhs.entries[l][j])
                            .fold(rat(0), |a, b| a + b)
                    })
                    .collect()
            })
            .collect();
        HeckeMatrix { entries }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        HeckeMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        HeckeMatrix {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        HeckeMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| rat((i == j) as i64)).collect())
                .collect(),
        }
    }

    /// Monic characteristic polynomial by the Faddeev-LeVerrier recursion,
    /// returned with integer coefficients in ascending degree order
    /// (so the last entry is 1).
    pub fn charpoly(&self) -> Result<Vec<BigInt>, OracleError> {
        let n = self.dim();
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = HeckeMatrix::identity(n);
        for j in 1..=n {
            m = self.mul(&m);
            let c = -m.trace() / rat(j as i64);
            coeffs[n - j] = c.clone();
            for i in 0..n {
                m.entries[i][i] = &m.entries[i][i] + &c;
            }
        }
        coeffs
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(OracleError::NonIntegralCharpoly)
                }
            })
            .collect()
    }
}

/// The cusp space of one weight, with basis q-expansions long enough to
/// apply every Hecke operator `T_m`, `m <= m_max`.
///
/// Coordinates are extracted against the leading coefficients of the
/// monomial basis: the unique basis element with leading exponent `a` is
/// `Delta^a * (...)` with unit leading coefficient, so the solve is exact
/// back-substitution over the integers.
#[derive(Debug)]
pub struct CuspSpace {
    k: u64,
    m_max: u64,
    prec: usize,
    /// Leading exponents of the basis elements, descending.
    leading: Vec<usize>,
    /// Integer q-expansions, same order as `leading`.
    basis: Vec<Vec<BigInt>>,
}

impl CuspSpace {
    pub fn new(k: u64, m_max: u64) -> Result<Self, OracleError> {
        if k % 2 != 0 || k < 4 {
            return Err(OracleError::UnsupportedWeight { k });
        }
        if m_max < 1 {
            return Err(OracleError::HeckeIndexOutOfRange { m: 0, m_max });
        }
        let exps = monomial_exponents(k);
        let dim = exps.len();
        // Working precision: dim*(m+1) + 10 coordinate coefficients; the
        // Hecke action reads basis index m*n <= m*(prec-1).
        let prec = dim * (m_max as usize + 1) + 10;
        let series_len = m_max as usize * (prec - 1) + 1;
        let mut basis = Vec::with_capacity(dim);
        let mut leading = Vec::with_capacity(dim);
        if dim > 0 {
            let delta = delta_z(series_len);
            let e4 = eisenstein_z(4, series_len);
            let e6 = eisenstein_z(6, series_len);
            for &(a, b, c) in &exps {
                let mut f = zpow(&delta, a, series_len);
                if b > 0 {
                    f = zmul(&f, &zpow(&e4, b, series_len), series_len);
                }
                if c > 0 {
                    f = zmul(&f, &zpow(&e6, c, series_len), series_len);
                }
                debug_assert!(f[..a as usize].iter().all(Zero::is_zero));
                debug_assert!(f[a as usize].is_one());
                leading.push(a as usize);
                basis.push(f);
            }
        }
        Ok(CuspSpace {
            k,
            m_max,
            prec,
            leading,
            basis,
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinate_prec(&self) -> usize {
        self.prec
    }

    /// Basis q-expansions to coordinate precision, as rational series.
    pub fn basis_series(&self) -> Vec<super::QSeries> {
        self.basis
            .iter()
            .map(|f| super::QSeries::from_integer_coeffs(&f[..self.prec]))
            .collect()
    }

    /// The matrix of `T_m` in basis coordinates, via
    /// `a_n(T_m f) = sum_{e | gcd(m, n)} e^{k-1} a_{mn/e^2}(f)`.
    pub fn hecke_matrix(&self, m: u64) -> Result<HeckeMatrix, OracleError> {
        if m < 1 || m > self.m_max {
            return Err(OracleError::HeckeIndexOutOfRange {
                m,
                m_max: self.m_max,
            });
        }
        let dim = self.dim();
        let mut columns = Vec::with_capacity(dim);
        for f in &self.basis {
            let image = self.hecke_image(f, m);
            columns.push(self.coordinates(image, m)?);
        }
        let entries = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| Rational::from_integer(columns[j][i].clone()))
                    .collect()
            })
            .collect();
        Ok(HeckeMatrix::from_rows(entries))
    }

    pub fn trace(&self, m: u64) -> Result<Rational, OracleError> {
        Ok(self.hecke_matrix(m)?.trace())
    }

    pub fn charpoly(&self, m: u64) -> Result<Vec<BigInt>, OracleError> {
        self.hecke_matrix(m)?.charpoly()
    }

    fn hecke_image(&self, f: &[BigInt], m: u64) -> Vec<BigInt> {
        let mut image = vec![BigInt::zero(); self.prec];
        for (n, out) in image.iter_mut().enumerate().skip(1) {
            let g = (m).gcd(&(n as u64));
            let mut acc = BigInt::zero();
            for e in 1..=g {
                if g % e != 0 {
                    continue;
                }
                let idx = (m * n as u64 / (e * e)) as usize;
                acc += BigInt::from(e).pow((self.k - 1) as u32) * &f[idx];
            }
            *out = acc;
        }
        image
    }

    /// Exact triangular solve against the leading coefficients; the
    /// residual must vanish through the full working precision.
    fn coordinates(&self, mut image: Vec<BigInt>, m: u64) -> Result<Vec<BigInt>, OracleError> {
        let dim = self.dim();
        let mut coords = vec![BigInt::zero(); dim];
        // ascending leading exponent = reverse basis order
        for idx in (0..dim).rev() {
            let lead = self.leading[idx];
            if lead >= self.prec {
                return Err(OracleError::Precision { k: self.k, m });
            }
            let c = image[lead].clone();
            if !c.is_zero() {
                for (n, coeff) in image.iter_mut().enumerate() {
                    *coeff -= &c * &self.basis[idx][n];
                }
            }
            coords[idx] = c;
        }
        if image.iter().any(|c| !c.is_zero()) {
            return Err(OracleError::Precision { k: self.k, m });
        }
        Ok(coords)
    }
}

fn zpow(base: &[BigInt], e: u64, prec: usize) -> Vec<BigInt> {
    let mut acc = {
        let mut one = vec![BigInt::zero(); prec];
        one[0] = BigInt::one();
        one
    };
    let mut b = base.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = zmul(&acc, &b, prec);
        }
        e >>= 1;
        if e > 0 {
            b = zmul(&b, &b, prec);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use num_traits::Signed;

    fn is_monic(poly: &[BigInt]) -> bool {
        poly.last().map(|c| c.is_one()).unwrap_or(false)
    }

    #[test]
    fn weight_twelve_is_one_dimensional() {
        let space = CuspSpace::new(12, 2).unwrap();
        assert_eq!(space.dim(), 1);
        let t1 = space.hecke_matrix(1).unwrap();
        assert_eq!(t1, HeckeMatrix::identity(1));
        let t2 = space.hecke_matrix(2).unwrap();
        assert_eq!(t2.entry(0, 0), &rat(-24));
    }

    #[test]
    fn weight_twelve_hecke_values_match_delta_coefficients() {
        let space = CuspSpace::new(12, 7).unwrap();
        let delta = delta_z(8);
        for m in [2u64, 3, 5, 7] {
            let got = space.trace(m).unwrap();
            assert_eq!(got, Rational::from_integer(delta[m as usize].clone()));
        }
    }

    #[test]
    fn weight_twentyfour_trace_and_charpoly() {
        let space = CuspSpace::new(24, 2).unwrap();
        assert_eq!(space.dim(), 2);
        let t2 = space.hecke_matrix(2).unwrap();
        assert_eq!(t2.trace(), rat(1080));
        let poly = t2.charpoly().unwrap();
        assert!(is_monic(&poly));
        assert_eq!(poly.len(), 3);
        assert_eq!(poly[1], BigInt::from(-1080));
        // positive non-square discriminant
        let disc = &poly[1] * &poly[1] - BigInt::from(4) * &poly[0];
        assert!(disc.is_positive());
        let d64: u64 = disc.to_string().parse().unwrap();
        assert_ne!(d64.isqrt() * d64.isqrt(), d64);
    }

    #[test]
    fn empty_spaces_have_empty_matrices() {
        let space = CuspSpace::new(4, 5).unwrap();
        assert_eq!(space.dim(), 0);
        let t3 = space.hecke_matrix(3).unwrap();
        assert_eq!(t3.dim(), 0);
        assert_eq!(t3.trace(), rat(0));
        assert_eq!(t3.charpoly().unwrap(), vec![BigInt::one()]);
    }

    #[test]
    fn rejects_out_of_range_requests() {
        let space = CuspSpace::new(12, 3).unwrap();
        assert!(matches!(
            space.hecke_matrix(4),
            Err(OracleError::HeckeIndexOutOfRange { m: 4, m_max: 3 })
        ));
        assert!(matches!(
            CuspSpace::new(11, 3),
            Err(OracleError::UnsupportedWeight { k: 11 })
        ));
        assert!(matches!(
            CuspSpace::new(2, 3),
            Err(OracleError::UnsupportedWeight { k: 2 })
        ));
    }

    #[test]
    fn charpoly_of_known_two_by_two() {
        let m = HeckeMatrix::from_rows(vec![
            vec![rat(2), rat(1)],
            vec![rat(1), rat(2)],
        ]);
        // (x-1)(x-3) = x^2 - 4x + 3
        assert_eq!(
            m.charpoly().unwrap(),
            vec![BigInt::from(3), BigInt::from(-4), BigInt::one()]
        );
        let half = HeckeMatrix::from_rows(vec![vec![ratio(1, 2)]]);
        assert!(matches!(
            half.charpoly(),
            Err(OracleError::NonIntegralCharpoly)
        ));
    }
}
