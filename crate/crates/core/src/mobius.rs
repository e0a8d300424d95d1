//! Möbius transformations as projective linear maps on `(a : b)` pairs.
//!
//! `f(z) = (az + b)/(cz + d)` acts on a point `(p_a : p_b)` by the matrix
//! product, so the point at infinity needs no special treatment.

use crate::error::{Error, Result};
use crate::mat2::{bracket, Mat2, C64};
use crate::model::{canonicalize_point, ProjectivePoint, TAU_POINT};

/// Entrywise tolerance for `f = ±I`.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Eigenvalue gap below which a map is treated as parabolic.
pub const PARABOLIC_TOL: f64 = 1e-9;

/// An invertible fractional-linear map, stored with determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap(Mat2);

#[derive(Debug, Clone, PartialEq)]
pub enum FixedPoints {
    /// The identity fixes every point.
    All,
    One(ProjectivePoint),
    Two(ProjectivePoint, ProjectivePoint),
}

impl FixedPoints {
    pub fn count(&self) -> Option<usize> {
        match self {
            FixedPoints::All => None,
            FixedPoints::One(_) => Some(1),
            FixedPoints::Two(..) => Some(2),
        }
    }
}

impl MobiusMap {
    /// Normalizes `(a, b; c, d)` to determinant one.
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        MobiusMap::from_matrix(Mat2::new(a, b, c, d))
    }

    pub fn from_matrix(m: Mat2) -> Result<Self> {
        let scale = m.frobenius();
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::domain("Möbius coefficients must be finite and nonzero"));
        }
        let unit = m.scale(C64::new(1.0 / scale, 0.0));
        if unit.det().norm() <= 1e-12 {
            return Err(Error::domain("Möbius map needs ad - bc != 0"));
        }
        Ok(MobiusMap(unit.normalized_det().expect("checked determinant")))
    }

    pub fn identity() -> Self {
        MobiusMap(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn coefficients(&self) -> [C64; 4] {
        let m = &self.0.m;
        [m[0][0], m[0][1], m[1][0], m[1][1]]
    }

    /// Unique map with `f(q) = q'`, `f(r) = r'`, `f(s) = s'`, using `tau_pt` for
    /// the distinctness check.
    pub fn from_three_points(
        source: [&ProjectivePoint; 3],
        target: [&ProjectivePoint; 3],
    ) -> Result<Self> {
        from_three_points_with(source, target, TAU_POINT)
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let v = self.0.apply(p.vector());
        canonicalize_point(v[0], v[1]).expect("invertible map sends nonzero vectors to nonzero vectors")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap(renormalize(self.0 * other.0))
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap(self.0.adjugate())
    }

    /// `f = ±I` entrywise within [`IDENTITY_TOL`].
    pub fn is_identity(&self) -> bool {
        let id = Mat2::identity();
        self.0.max_abs_diff(&id) <= IDENTITY_TOL
            || self.0.max_abs_diff(&id.scale(C64::new(-1.0, 0.0))) <= IDENTITY_TOL
    }

    pub fn fixed_points(&self) -> FixedPoints {
        if self.is_identity() {
            return FixedPoints::All;
        }
        let m = &self.0;
        let tr = m.trace();
        let disc = (tr * tr - m.det() * 4.0).sqrt();
        let mu1 = (tr + disc) * 0.5;
        let mu2 = (tr - disc) * 0.5;
        let p1 = eigenvector(m, mu1);
        if (mu1 - mu2).norm() < PARABOLIC_TOL {
            return FixedPoints::One(p1);
        }
        FixedPoints::Two(p1, eigenvector(m, mu2))
    }
}

fn renormalize(m: Mat2) -> Mat2 {
    m.normalized_det().expect("product of invertible maps is invertible")
}

/// Null direction of `m - mu I`, picking the better-conditioned row.
fn eigenvector(m: &Mat2, mu: C64) -> ProjectivePoint {
    let a = m.m[0][0] - mu;
    let b = m.m[0][1];
    let c = m.m[1][0];
    let d = m.m[1][1] - mu;
    // row (a, b) annihilates (b, -a); row (c, d) annihilates (d, -c)
    let v = if a.norm_sqr() + b.norm_sqr() >= c.norm_sqr() + d.norm_sqr() {
        [b, -a]
    } else {
        [d, -c]
    };
    canonicalize_point(v[0], v[1]).expect("non-identity map has a nonzero row")
}

/// Row form of the cross-ratio map sending `q -> 0`, `r -> 1`, `s -> inf`:
/// `z -> [z,q][r,s] / ([z,s][r,q])`.
fn cross_ratio_chart(q: &ProjectivePoint, r: &ProjectivePoint, s: &ProjectivePoint) -> Mat2 {
    let (qv, rv, sv) = (q.vector(), r.vector(), s.vector());
    let rs = bracket(rv, sv);
    let rq = bracket(rv, qv);
    // [z, q] = z_a q_b - z_b q_a
    Mat2::new(qv[1] * rs, -qv[0] * rs, sv[1] * rq, -sv[0] * rq)
}

pub fn from_three_points_with(
    source: [&ProjectivePoint; 3],
    target: [&ProjectivePoint; 3],
    tau_pt: f64,
) -> Result<MobiusMap> {
    for (label, pts) in [("source", source), ("target", target)] {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if pts[i].distance(pts[j]) <= tau_pt {
                return Err(Error::Degenerate(format!(
                    "{label} points {i} and {j} coincide"
                )));
            }
        }
    }
    let src = cross_ratio_chart(source[0], source[1], source[2]);
    let dst = cross_ratio_chart(target[0], target[1], target[2]);
    let dst_inv = dst.adjugate();
    MobiusMap::from_matrix(dst_inv * src)
}

/// Cross-ratio `[z,q][r,s] / ([z,s][r,q])` as a projective pair.
pub fn cross_ratio(
    z: &ProjectivePoint,
    q: &ProjectivePoint,
    r: &ProjectivePoint,
    s: &ProjectivePoint,
) -> ProjectivePoint {
    let v = cross_ratio_chart(q, r, s).apply(z.vector());
    canonicalize_point(v[0], v[1]).expect("distinct points give a nonzero pair")
}
