//! Shared value types, tolerances and equality semantics.

use crate::error::{Error, Result};
use crate::mat2::{bracket, Mat2, C64, ONE, ZERO};
use std::cmp::Ordering;

/// Default coincidence threshold on the normalized cross-determinant.
pub const TAU_POINT: f64 = 1e-8;
/// Relative cutoff below which a leading polynomial coefficient is treated as zero.
pub const EPS_DEGREE: f64 = 1e-10;
/// Dense residual a stabilizer certificate must meet.
pub const CERTIFICATE_TOL: f64 = 1e-9;

/// Numeric thresholds threaded through decomposition and search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub point: f64,
    pub degree: f64,
    pub certificate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            point: TAU_POINT,
            degree: EPS_DEGREE,
            certificate: CERTIFICATE_TOL,
        }
    }
}

/// An n-qubit permutation-symmetric pure state in the Dicke basis.
///
/// `amplitudes[k]` is the coefficient of the Dicke state with `k` excitations.
/// Always normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    amplitudes: Vec<C64>,
}

impl SymmetricState {
    /// Normalizes `amplitudes`; fails when every entry is below 1e-12 in modulus.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::domain("a symmetric state needs n >= 1 (n + 1 amplitudes)"));
        }
        if amplitudes.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::domain("non-finite amplitude"));
        }
        if amplitudes.iter().all(|x| x.norm() <= 1e-12) {
            return Err(Error::domain("all Dicke amplitudes vanish"));
        }
        let norm = amplitudes.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        Ok(SymmetricState {
            amplitudes: amplitudes.into_iter().map(|x| x / norm).collect(),
        })
    }

    /// The Dicke state `D(n, k)`.
    pub fn dicke(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::domain(format!("D({n},{k}) has k > n")));
        }
        let mut amps = vec![ZERO; n + 1];
        amps[k] = ONE;
        SymmetricState::new(amps)
    }

    /// `(D(n,0) + D(n,n)) / sqrt 2`.
    pub fn ghz(n: usize) -> Result<Self> {
        let mut amps = vec![ZERO; n + 1];
        amps[0] = ONE;
        amps[n] = ONE;
        SymmetricState::new(amps)
    }

    pub fn n(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &SymmetricState) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// `|<self|other>|`; 1 means equal up to global phase.
    pub fn fidelity(&self, other: &SymmetricState) -> f64 {
        if self.n() != other.n() {
            return 0.0;
        }
        self.inner(other).norm()
    }
}

/// A single-qubit state `a|0> + b|1>`, i.e. the extended-plane point `z = a/b`.
///
/// Canonical form: unit norm, and the larger component is real and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    a: C64,
    b: C64,
}

fn is_canonical(a: C64, b: C64) -> bool {
    let norm_sqr = a.norm_sqr() + b.norm_sqr();
    if (norm_sqr - 1.0).abs() > 8.0 * f64::EPSILON {
        return false;
    }
    let slack = 1.0 - 1e-12;
    (a.im == 0.0 && a.re > 0.0 && a.re >= b.norm() * slack)
        || (b.im == 0.0 && b.re > 0.0 && b.re >= a.norm() * slack)
}

/// Canonical representative of the ray through `(a, b)`.
pub fn canonicalize_point(a: C64, b: C64) -> Result<ProjectivePoint> {
    let (ma, mb) = (a.norm(), b.norm());
    let norm = ma.hypot(mb);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::domain("projective point (0, 0) is undefined"));
    }
    if is_canonical(a, b) {
        return Ok(ProjectivePoint { a, b });
    }
    let point = if ma >= mb {
        let phase = a.conj() / ma;
        ProjectivePoint {
            a: C64::new(ma / norm, 0.0),
            b: b * phase / norm,
        }
    } else {
        let phase = b.conj() / mb;
        ProjectivePoint {
            a: a * phase / norm,
            b: C64::new(mb / norm, 0.0),
        }
    };
    Ok(point)
}

/// `|a_p b_q - a_q b_p| <= tol`.
pub fn points_coincide(p: &ProjectivePoint, q: &ProjectivePoint, tol: f64) -> bool {
    p.distance(q) <= tol
}

impl ProjectivePoint {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        canonicalize_point(a, b)
    }

    /// `|0>`, the point at infinity.
    pub fn infinity() -> Self {
        ProjectivePoint { a: ONE, b: ZERO }
    }

    /// `|1>`, the origin of the plane.
    pub fn origin() -> Self {
        ProjectivePoint { a: ZERO, b: ONE }
    }

    pub fn from_plane(z: C64) -> Self {
        canonicalize_point(z, ONE).expect("b = 1 is never zero")
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn vector(&self) -> [C64; 2] {
        [self.a, self.b]
    }

    /// Plane coordinate `a/b`, or `None` at infinity.
    pub fn plane(&self) -> Option<C64> {
        if self.b == ZERO {
            None
        } else {
            Some(self.a / self.b)
        }
    }

    /// Chordal cross-determinant `|a_p b_q - a_q b_p|`, in `[0, 1]` for canonical points.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        bracket(self.vector(), other.vector()).norm()
    }

    /// Orthogonal single-qubit state, canonicalized.
    pub fn antipode(&self) -> ProjectivePoint {
        canonicalize_point(-self.b.conj(), self.a.conj()).expect("unit vector")
    }

    /// Lexicographic order on `(re a, im a, re b, im b)`.
    pub fn lex_cmp(&self, other: &ProjectivePoint) -> Ordering {
        self.a
            .re
            .total_cmp(&other.a.re)
            .then(self.a.im.total_cmp(&other.a.im))
            .then(self.b.re.total_cmp(&other.b.re))
            .then(self.b.im.total_cmp(&other.b.im))
    }
}

impl std::fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.plane() {
            None => write!(f, "inf"),
            Some(z) => write!(f, "{:.12}{:+.12}i", z.re, z.im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub point: ProjectivePoint,
    pub multiplicity: usize,
}

/// Majorana points of a symmetric state, grouped into coincident clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaSet {
    n: usize,
    clusters: Vec<Cluster>,
}

impl MajoranaSet {
    /// Builds a set, merging clusters whose points coincide under `tol`.
    pub fn new(clusters: Vec<Cluster>, tol: f64) -> Result<Self> {
        if clusters.is_empty() {
            return Err(Error::domain("empty Majorana set"));
        }
        if clusters.iter().any(|c| c.multiplicity == 0) {
            return Err(Error::domain("cluster multiplicity must be positive"));
        }
        let mut merged: Vec<Cluster> = Vec::with_capacity(clusters.len());
        for c in clusters {
            match merged
                .iter_mut()
                .find(|m| points_coincide(&m.point, &c.point, tol))
            {
                Some(m) => {
                    if c.multiplicity > m.multiplicity {
                        m.point = c.point;
                    }
                    m.multiplicity += c.multiplicity;
                }
                None => merged.push(c),
            }
        }
        let n = merged.iter().map(|c| c.multiplicity).sum();
        Ok(MajoranaSet { n, clusters: merged })
    }

    pub fn from_points(points: &[ProjectivePoint], tol: f64) -> Result<Self> {
        MajoranaSet::new(
            points
                .iter()
                .map(|&point| Cluster {
                    point,
                    multiplicity: 1,
                })
                .collect(),
            tol,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn diversity(&self) -> usize {
        self.clusters.len()
    }

    /// Every point repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<ProjectivePoint> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.point, c.multiplicity))
            .collect()
    }
}

/// Sorted multiplicities, their count, and the sizes of equal-multiplicity groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyConfiguration {
    pub multiplicities: Vec<usize>,
    pub diversity: usize,
    /// Group sizes, ordered by decreasing multiplicity value.
    pub partition: Vec<usize>,
}

impl DegeneracyConfiguration {
    pub fn from_multiplicities(mut multiplicities: Vec<usize>) -> Self {
        multiplicities.sort_unstable_by(|x, y| y.cmp(x));
        let mut partition: Vec<usize> = Vec::new();
        for (i, k) in multiplicities.iter().enumerate() {
            if i > 0 && multiplicities[i - 1] == *k {
                *partition.last_mut().unwrap() += 1;
            } else {
                partition.push(1);
            }
        }
        DegeneracyConfiguration {
            diversity: multiplicities.len(),
            multiplicities,
            partition,
        }
    }

    pub fn n(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

impl std::fmt::Display for DegeneracyConfiguration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// An invertible single-qubit operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOperator(Mat2);

impl LocalOperator {
    pub fn new(m: Mat2) -> Result<Self> {
        if !(m.det().norm() > 1e-12) {
            return Err(Error::domain("local operator is not invertible"));
        }
        Ok(LocalOperator(m))
    }

    pub fn identity() -> Self {
        LocalOperator(Mat2::identity())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn is_invertible(&self) -> bool {
        self.0.det().norm() > 1e-12
    }

    pub fn inverse(&self) -> LocalOperator {
        LocalOperator(self.0.inverse().expect("invertible by construction"))
    }

    /// `g = mu I` for some scalar, judged after determinant-one normalization.
    pub fn is_scalar(&self, tol: f64) -> bool {
        match self.0.normalized_det() {
            Some(m) => m.traceless_norm() <= tol,
            None => true,
        }
    }
}
