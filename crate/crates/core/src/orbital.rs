//! Archimedean orbital integrals of the weight test functions.
//!
//! A group element over the rationals or over a real quadratic field is
//! classified exactly at every real embedding (elliptic / hyperbolic /
//! parabolic, determinant sign). On totally elliptic, totally positive
//! classes the orbital integral is a product of finite-dimensional
//! character values, one factor `-2 * ch_{k_v - 2, w}` per real place; it
//! vanishes identically on classes that are hyperbolic or of negative
//! determinant somewhere, and is undefined (rejected) on parabolic ones.

use thiserror::Error;

use crate::chars::{ch_kw, CharsError, WeightVector};
use crate::exact::{ExactError, Scalar, Sign, TotallyReal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitalError {
    #[error("matrix has determinant zero, not an element of GL2")]
    Singular,
    #[error("matrix entries lie in different scalar domains")]
    MixedScalarDomains,
    #[error("parabolic at a real embedding: orbital integrals are undefined on irregular classes")]
    Degenerate,
    #[error("weight vector has {weight_places} entries but the element has {element_places} real places")]
    PlaceMismatch {
        weight_places: usize,
        element_places: usize,
    },
    #[error(transparent)]
    Chars(#[from] CharsError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A 2x2 matrix over the rationals or over a fixed real quadratic field,
/// with nonzero determinant. Characters only ever read its trace and
/// determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<S: TotallyReal> {
    entries: [[S; 2]; 2],
}

impl<S: TotallyReal> GroupElement<S> {
    pub fn new(entries: [[S; 2]; 2]) -> Result<Self, OrbitalError> {
        let base = &entries[0][0];
        base.domain_check()?;
        for row in &entries {
            for e in row {
                if !base.same_domain(e) {
                    return Err(OrbitalError::MixedScalarDomains);
                }
            }
        }
        let g = GroupElement { entries };
        if g.det().is_zero() {
            return Err(OrbitalError::Singular);
        }
        Ok(g)
    }

    /// Companion matrix `[[0, -n], [1, t]]` with trace `t`, determinant `n`.
    pub fn from_trace_det(t: S, n: S) -> Result<Self, OrbitalError> {
        let zero = t.zero_like();
        let one = t.one_like();
        GroupElement::new([[zero, -n], [one, t]])
    }

    pub fn entries(&self) -> &[[S; 2]; 2] {
        &self.entries
    }

    pub fn trace(&self) -> S {
        self.entries[0][0].clone() + self.entries[1][1].clone()
    }

    pub fn det(&self) -> S {
        self.entries[0][0].clone() * self.entries[1][1].clone()
            - self.entries[0][1].clone() * self.entries[1][0].clone()
    }

    pub fn real_places(&self) -> usize {
        self.entries[0][0].real_places()
    }

    /// Conjugate `p * self * p^{-1}` by an invertible matrix `p`.
    pub fn conjugated_by(&self, p: &[[S; 2]; 2]) -> Result<Self, OrbitalError> {
        let det = p[0][0].clone() * p[1][1].clone() - p[0][1].clone() * p[1][0].clone();
        if det.is_zero() {
            return Err(OrbitalError::Singular);
        }
        let inv = [
            [p[1][1].clone() / det.clone(), -(p[0][1].clone() / det.clone())],
            [-(p[1][0].clone() / det.clone()), p[0][0].clone() / det.clone()],
        ];
        let pm = mat_mul(p, &self.entries);
        GroupElement::new(mat_mul(&pm, &inv))
    }
}

fn mat_mul<S: Scalar>(x: &[[S; 2]; 2], y: &[[S; 2]; 2]) -> [[S; 2]; 2] {
    let e = |i: usize, j: usize| {
        x[i][0].clone() * y[0][j].clone() + x[i][1].clone() * y[1][j].clone()
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Classification of a group element at one real embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaceClass {
    /// `t^2 - 4n < 0` and `n > 0`.
    EllipticPositive,
    /// `t^2 - 4n < 0` and `n < 0` (cannot occur over the reals; kept so the
    /// classification is total over its own vocabulary).
    EllipticNegativeDet,
    /// `t^2 - 4n > 0`.
    Hyperbolic,
    /// `t^2 - 4n = 0`: regularity fails.
    Parabolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregate {
    /// Elliptic with positive determinant at every real place.
    TotallyEllipticPositive,
    /// Parabolic somewhere: orbital integrals are undefined.
    Degenerate,
    /// Everything else: the orbital integral vanishes.
    Excluded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticityReport {
    pub per_place: Vec<PlaceClass>,
    pub aggregate: Aggregate,
}

/// Exact ellipticity/positivity classification at every real embedding.
pub fn classify<S: TotallyReal>(g: &GroupElement<S>) -> EllipticityReport {
    let t = g.trace();
    let n = g.det();
    let disc = t.clone() * t.clone() - n.from_int_like(4) * n.clone();
    let per_place: Vec<PlaceClass> = (0..g.real_places())
        .map(|v| match disc.sign_at(v) {
            Sign::Negative => match n.sign_at(v) {
                Sign::Positive => PlaceClass::EllipticPositive,
                _ => PlaceClass::EllipticNegativeDet,
            },
            Sign::Positive => PlaceClass::Hyperbolic,
            Sign::Zero => PlaceClass::Parabolic,
        })
        .collect();
    let aggregate = if per_place.iter().any(|c| *c == PlaceClass::Parabolic) {
        Aggregate::Degenerate
    } else if per_place.iter().all(|c| *c == PlaceClass::EllipticPositive) {
        Aggregate::TotallyEllipticPositive
    } else {
        Aggregate::Excluded
    };
    EllipticityReport {
        per_place,
        aggregate,
    }
}

/// The archimedean orbital integral of the weight test function at `g`:
/// zero unless `g` is totally elliptic and totally positive, in which case
/// it is the product over real places `v` of `-2 * ch_{k_v - 2, w}` at the
/// trace/determinant pushed through `v`. The value lies in the base field
/// and is reported through the first embedding.
pub fn arch_orbital<S: TotallyReal>(
    g: &GroupElement<S>,
    kw: &WeightVector,
) -> Result<S, OrbitalError> {
    let places = g.real_places();
    if kw.len() != places {
        return Err(OrbitalError::PlaceMismatch {
            weight_places: kw.len(),
            element_places: places,
        });
    }
    let report = classify(g);
    match report.aggregate {
        Aggregate::Degenerate => return Err(OrbitalError::Degenerate),
        Aggregate::Excluded => return Ok(g.trace().zero_like()),
        Aggregate::TotallyEllipticPositive => {}
    }
    let t = g.trace();
    let n = g.det();
    let w = kw.central_exponent();
    let mut acc = t.one_like();
    for (v, &k_v) in kw.weights().iter().enumerate() {
        let t_v = t.place_conjugate(v);
        let n_v = n.place_conjugate(v);
        let factor = ch_kw((k_v - 2) as u64, w, &t_v, &n_v)?;
        acc = acc * (t.from_int_like(-2) * factor);
    }
    Ok(acc)
}

/// Conjugation-equivariance of the orbital integral under the weight swap:
/// checks that the Galois conjugate of `I(g; k1, k2)` equals
/// `I(g; k2, k1)`. Exact equality; true identically on totally elliptic,
/// totally positive classes.
pub fn orbital_equivariance_check(
    g: &GroupElement<crate::exact::QuadElem>,
    kw: &WeightVector,
) -> Result<bool, OrbitalError> {
    if kw.len() != 2 {
        return Err(OrbitalError::PlaceMismatch {
            weight_places: kw.len(),
            element_places: 2,
        });
    }
    let swapped = kw.permuted(&[1, 0])?;
    let i1 = arch_orbital(g, kw)?;
    let i2 = arch_orbital(g, &swapped)?;
    Ok(i1.galois_conj() == i2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, QuadElem, Rational};

    fn rq(entries: [[i64; 2]; 2]) -> GroupElement<Rational> {
        GroupElement::new(entries.map(|row| row.map(rat))).unwrap()
    }

    fn quad(d: i64, entries: [[(i64, i64); 2]; 2]) -> GroupElement<QuadElem> {
        GroupElement::new(entries.map(|row| {
            row.map(|(a, b)| QuadElem::new(d, rat(a), rat(b)).unwrap())
        }))
        .unwrap()
    }

    #[test]
    fn classify_worked_examples() {
        let j = rq([[0, -1], [1, 0]]);
        assert_eq!(classify(&j).aggregate, Aggregate::TotallyEllipticPositive);

        let split = rq([[2, 0], [0, 1]]);
        let rep = classify(&split);
        assert_eq!(rep.aggregate, Aggregate::Excluded);
        assert_eq!(rep.per_place, vec![PlaceClass::Hyperbolic]);

        // [[0,-1],[1,sqrt(5)]]: disc = 5 - 4 = 1 > 0 at both embeddings
        let sqrt5_trace = quad(5, [[(0, 0), (-1, 0)], [(1, 0), (0, 1)]]);
        assert_eq!(classify(&sqrt5_trace).aggregate, Aggregate::Excluded);

        // t = 1 + sqrt(5), n = 1: disc = 2 + 2 sqrt(5) is positive at V1
        // but negative at V2, so the places genuinely disagree.
        let mixed = quad(5, [[(0, 0), (-1, 0)], [(1, 0), (1, 1)]]);
        let rep = classify(&mixed);
        assert_eq!(rep.per_place[0], PlaceClass::Hyperbolic);
        assert_eq!(rep.per_place[1], PlaceClass::EllipticPositive);
        assert_eq!(rep.aggregate, Aggregate::Excluded);
    }

    #[test]
    fn classify_marks_parabolic_degenerate() {
        let unipotent = rq([[1, 1], [0, 1]]);
        assert_eq!(classify(&unipotent).aggregate, Aggregate::Degenerate);
        let kw = WeightVector::new(vec![12], 0).unwrap();
        assert_eq!(
            arch_orbital(&unipotent, &kw),
            Err(OrbitalError::Degenerate)
        );
    }

    #[test]
    fn arch_orbital_worked_examples() {
        let j = rq([[0, -1], [1, 0]]);
        let kw = WeightVector::new(vec![12], 10).unwrap();
        assert_eq!(arch_orbital(&j, &kw).unwrap(), rat(2));

        let split = rq([[2, 0], [0, 1]]);
        assert_eq!(arch_orbital(&split, &kw).unwrap(), rat(0));

        let g = rq([[0, -1], [1, 1]]);
        let kw42 = WeightVector::new(vec![4], 2).unwrap();
        assert_eq!(arch_orbital(&g, &kw42).unwrap(), rat(0));
    }

    #[test]
    fn arch_orbital_rejects_place_mismatch() {
        let j = rq([[0, -1], [1, 0]]);
        let kw = WeightVector::new(vec![4, 6], 0).unwrap();
        assert_eq!(
            arch_orbital(&j, &kw),
            Err(OrbitalError::PlaceMismatch {
                weight_places: 2,
                element_places: 1
            })
        );
    }

    #[test]
    fn group_element_rejects_singular_matrices() {
        assert_eq!(
            GroupElement::new([[rat(1), rat(2)], [rat(2), rat(4)]]).unwrap_err(),
            OrbitalError::Singular
        );
    }

    #[test]
    fn group_element_rejects_imaginary_fields() {
        let e = QuadElem::from_int(-1, 1).unwrap();
        let res = GroupElement::new([
            [e.clone(), e.zero_like()],
            [e.zero_like(), e.clone()],
        ]);
        assert!(matches!(
            res,
            Err(OrbitalError::Exact(ExactError::NoRealEmbedding { d: -1 }))
        ));
    }

    #[test]
    fn rational_trace_elements_give_rational_equivariant_values() {
        // gamma = [[0,-1],[1,1]] over Q(sqrt(5)): rational trace and det
        let g = quad(5, [[(0, 0), (-1, 0)], [(1, 0), (1, 0)]]);
        let kw = WeightVector::new(vec![4, 6], 0).unwrap();
        assert!(orbital_equivariance_check(&g, &kw).unwrap());
        let v = arch_orbital(&g, &kw).unwrap();
        assert!(v.is_rational());
    }

    #[test]
    fn golden_ratio_trace_equivariance() {
        // t = (1 + sqrt(5))/2, n = 1: t^2 < 4 at both embeddings
        let t = QuadElem::new(5, ratio(1, 2), ratio(1, 2)).unwrap();
        let n = t.one_like();
        let g = GroupElement::from_trace_det(t, n).unwrap();
        assert_eq!(classify(&g).aggregate, Aggregate::TotallyEllipticPositive);
        let kw = WeightVector::new(vec![4, 6], 0).unwrap();
        assert!(orbital_equivariance_check(&g, &kw).unwrap());
    }

    #[test]
    fn symmetric_weights_give_rational_values() {
        let t = QuadElem::new(13, ratio(1, 2), ratio(1, 2)).unwrap();
        let n = QuadElem::from_int(13, 5).unwrap();
        let g = GroupElement::from_trace_det(t, n).unwrap();
        assert_eq!(classify(&g).aggregate, Aggregate::TotallyEllipticPositive);
        let kw = WeightVector::new(vec![8, 8], 0).unwrap();
        assert!(orbital_equivariance_check(&g, &kw).unwrap());
        let v = arch_orbital(&g, &kw).unwrap();
        assert!(v.is_rational(), "symmetric weight value must be rational, got {v}");
    }

    #[test]
    fn conjugation_invariance() {
        let g = rq([[0, -5], [1, 3]]); // t = 3, n = 5, disc = -11
        let kw = WeightVector::new(vec![6], 0).unwrap();
        let base = arch_orbital(&g, &kw).unwrap();
        let p = [[rat(2), rat(3)], [rat(1), rat(2)]];
        let conj = g.conjugated_by(&p).unwrap();
        assert_ne!(conj.entries(), g.entries());
        assert_eq!(conj.trace(), g.trace());
        assert_eq!(conj.det(), g.det());
        assert_eq!(arch_orbital(&conj, &kw).unwrap(), base);
    }

    #[test]
    fn conjugation_invariance_over_quadratic_fields() {
        // t = 1 + (1/4) sqrt(5), n = 1: elliptic positive at both places
        let t = QuadElem::new(5, rat(1), ratio(1, 4)).unwrap();
        let g = GroupElement::from_trace_det(t.clone(), t.one_like()).unwrap();
        assert_eq!(classify(&g).aggregate, Aggregate::TotallyEllipticPositive);
        let kw = WeightVector::new(vec![4, 6], 0).unwrap();
        let base = arch_orbital(&g, &kw).unwrap();
        assert!(!base.is_zero());
        let conjugators = [
            [[(1, 0), (2, 1)], [(0, 1), (1, 0)]],
            [[(0, 1), (1, 0)], [(1, 0), (3, -1)]],
            [[(2, 0), (0, 0)], [(5, 1), (1, 1)]],
        ];
        for p in conjugators {
            let p = p.map(|row| row.map(|(a, b)| QuadElem::new(5, rat(a), rat(b)).unwrap()));
            let conj = g.conjugated_by(&p).unwrap();
            assert_eq!(conj.trace(), g.trace());
            assert_eq!(conj.det(), g.det());
            assert_eq!(arch_orbital(&conj, &kw).unwrap(), base);
        }
    }

    #[test]
    fn central_twist_over_quadratic_fields_scales_per_place() {
        let t = QuadElem::new(5, rat(1), ratio(1, 4)).unwrap();
        let g = GroupElement::from_trace_det(t.clone(), t.one_like()).unwrap();
        let kw = WeightVector::new(vec![4, 6], 2).unwrap();
        let base = arch_orbital(&g, &kw).unwrap();
        let z = QuadElem::from_rational(5, ratio(3, 2)).unwrap();
        let scaled_entries = g
            .entries()
            .clone()
            .map(|row| row.map(|e| e * z.clone()));
        let scaled = GroupElement::new(scaled_entries).unwrap();
        // one factor z^w per real place
        let expected = crate::exact::int_pow(&z, 2 * 2) * base;
        assert_eq!(arch_orbital(&scaled, &kw).unwrap(), expected);
    }

    #[test]
    fn central_twist_scales_by_z_to_the_w() {
        // gamma elliptic positive over Q; z a positive rational scalar
        let g = rq([[0, -5], [1, 3]]);
        let kw = WeightVector::new(vec![6], 4).unwrap();
        let base = arch_orbital(&g, &kw).unwrap();
        for z in [rat(2), ratio(3, 2), rat(5)] {
            let scaled = GroupElement::new([
                [g.entries()[0][0].clone() * z.clone(), g.entries()[0][1].clone() * z.clone()],
                [g.entries()[1][0].clone() * z.clone(), g.entries()[1][1].clone() * z.clone()],
            ])
            .unwrap();
            let expected = crate::exact::int_pow(&z, 4) * base.clone();
            assert_eq!(arch_orbital(&scaled, &kw).unwrap(), expected);
        }
    }
}
