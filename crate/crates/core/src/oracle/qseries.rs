//! Truncated power series in q with exact rational coefficients, plus the
//! integer-series kernels behind Delta and the Eisenstein series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::Rational;

/// A truncated q-expansion: coefficients are known for `q^0 .. q^{prec-1}`
/// and operations never read beyond that. Binary operations truncate to
/// the smaller precision.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series needs precision at least 1");
        QSeries { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        QSeries::from_coeffs(vec![Rational::zero(); prec])
    }

    pub fn one(prec: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); prec];
        coeffs[0] = Rational::one();
        QSeries { coeffs }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        assert!(
            n < self.coeffs.len(),
            "coefficient q^{n} is beyond precision {}",
            self.coeffs.len()
        );
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Constant term vanishes.
    pub fn is_cusp(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn truncated(&self, prec: usize) -> Self {
        assert!(prec >= 1 && prec <= self.prec());
        QSeries::from_coeffs(self.coeffs[..prec].to_vec())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec().min(rhs.prec());
        QSeries::from_coeffs(
            (0..prec)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let prec = self.prec().min(rhs.prec());
        QSeries::from_coeffs(
            (0..prec)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        )
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        QSeries::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Truncated convolution at the smaller precision.
    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec().min(rhs.prec());
        let mut acc = vec![Rational::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(prec - i) {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] = &acc[i + j] + a * b;
            }
        }
        QSeries::from_coeffs(acc)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = QSeries::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiply by `q^j`; the precision window grows with the shift.
    pub fn shifted(&self, j: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); j];
        coeffs.extend_from_slice(&self.coeffs);
        QSeries::from_coeffs(coeffs)
    }

    pub(crate) fn from_integer_coeffs(coeffs: &[BigInt]) -> Self {
        QSeries::from_coeffs(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }
}

// ---------------------------------------------------------------------------
// Integer-series kernels. The basis series all have integer coefficients,
// so the heavy convolutions stay in BigInt.
// ---------------------------------------------------------------------------

pub(crate) fn zmul(a: &[BigInt], b: &[BigInt], prec: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            if y.is_zero() {
                continue;
            }
            acc[i + j] += x * y;
        }
    }
    acc
}

/// `[sigma_r(n)]` for `n < prec`, with the n = 0 entry zero.
pub(crate) fn sigma_sums(r: u32, prec: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); prec];
    for d in 1..prec {
        let pd = BigInt::from(d).pow(r);
        let mut n = d;
        while n < prec {
            s[n] += &pd;
            n += d;
        }
    }
    s
}

/// Integer q-expansion of the weight-4 or weight-6 Eisenstein series.
pub(crate) fn eisenstein_z(weight: u64, prec: usize) -> Vec<BigInt> {
    let (r, scale) = match weight {
        4 => (3u32, BigInt::from(240)),
        6 => (5u32, BigInt::from(-504)),
        _ => unreachable!("eisenstein_z is only called with weight 4 or 6"),
    };
    let mut coeffs = sigma_sums(r, prec);
    for c in coeffs.iter_mut() {
        *c *= &scale;
    }
    coeffs[0] = BigInt::one();
    coeffs
}

/// `prod (1 - q^n)^3 = sum_{j >= 0} (-1)^j (2j+1) q^{j(j+1)/2}` (sparse).
fn eta_cubed_z(prec: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); prec];
    let mut j = 0usize;
    loop {
        let off = j * (j + 1) / 2;
        if off >= prec {
            break;
        }
        let c = (2 * j + 1) as i64;
        s[off] = BigInt::from(if j % 2 == 0 { c } else { -c });
        j += 1;
    }
    s
}

/// Integer q-expansion of Delta = q * prod (1 - q^n)^24, computed as the
/// eighth power of the sparse cube identity, then shifted by one.
pub(crate) fn delta_z(prec: usize) -> Vec<BigInt> {
    assert!(prec >= 2, "delta needs precision at least 2");
    let e3 = eta_cubed_z(prec);
    let p2 = zmul(&e3, &e3, prec);
    let p4 = zmul(&p2, &p2, prec);
    let p8 = zmul(&p4, &p4, prec);
    let mut out = vec![BigInt::zero(); prec];
    for n in 1..prec {
        out[n] = p8[n - 1].clone();
    }
    out
}
