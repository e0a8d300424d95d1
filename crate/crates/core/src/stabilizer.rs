//! Local stabilizers of symmetric states.
//!
//! A symmetric state has a nontrivial stabilizer exactly when some
//! non-identity Möbius map permutes its Majorana points (respecting
//! multiplicities). Such a map is fixed by the images of three points, so for
//! diversity `m >= 3` we fix three anchor clusters and enumerate every ordered
//! triple of same-multiplicity target clusters. Diversity one and two have
//! explicit constructions.

use crate::error::{Error, Result};
use crate::majorana::{self, reduced_density_matrix};
use crate::mat2::{sqrt_binomial, Mat2, C64, ONE, ZERO};
use crate::mobius::{from_three_points_with, MobiusMap};
use crate::model::{
    DegeneracyConfiguration, LocalOperator, MajoranaSet, SymmetricState, Tolerances,
};
use crate::oracle::{self, DENSE_LIMIT};
use crate::par::{self, Schedule};
use std::f64::consts::TAU;

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    MobiusSearch,
    M1Construction,
    M2Construction,
    TwoQubitLinearSystem,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::MobiusSearch => "mobius-search",
            Method::M1Construction => "m1-construction",
            Method::M2Construction => "m2-construction",
            Method::TwoQubitLinearSystem => "two-qubit-linear-system",
        }
    }
}

/// `g` with `g^{⊗n}|psi> = |psi>` and `g` not a multiple of the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerCertificate {
    pub g: LocalOperator,
    /// Cluster `i` is sent onto cluster `permutation[i]`.
    pub permutation: Vec<usize>,
    /// `g |phi_i> = lambda_i |phi_sigma(i)>`, one entry per Majorana point
    /// (clusters expanded by multiplicity). Their product is one.
    pub lambdas: Vec<C64>,
    /// Dense residual `||g^{⊗n} psi - psi||`, absent above the dense limit.
    pub residual: Option<f64>,
    pub mobius: Option<MobiusMap>,
}

impl StabilizerCertificate {
    pub fn lambda_product(&self) -> C64 {
        self.lambdas.iter().product()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerVerdict {
    pub trivial: bool,
    pub certificate: Option<StabilizerCertificate>,
    pub method: Method,
    /// False when `n` exceeds the dense limit and the certificate was only
    /// checked at the Majorana level ("unverified-dense").
    pub dense_verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precheck {
    Trivial,
    Nontrivial,
    Unknown,
}

impl Precheck {
    pub fn tag(self) -> &'static str {
        match self {
            Precheck::Trivial => "trivial",
            Precheck::Nontrivial => "nontrivial",
            Precheck::Unknown => "unknown",
        }
    }
}

/// Indices of the three clusters with lexicographically smallest points.
pub(crate) fn anchor_indices(set: &MajoranaSet) -> [usize; 3] {
    let mut order: Vec<usize> = (0..set.diversity()).collect();
    order.sort_by(|&i, &j| set.clusters()[i].point.lex_cmp(&set.clusters()[j].point));
    [order[0], order[1], order[2]]
}

/// Ordered triples of distinct `dst` clusters whose multiplicities match the anchors.
pub(crate) fn candidate_triples(
    src: &MajoranaSet,
    anchors: [usize; 3],
    dst: &MajoranaSet,
) -> Vec<[usize; 3]> {
    let mult = |set: &MajoranaSet, i: usize| set.clusters()[i].multiplicity;
    let options: Vec<Vec<usize>> = anchors
        .iter()
        .map(|&a| {
            (0..dst.diversity())
                .filter(|&j| mult(dst, j) == mult(src, a))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for &q1 in &options[0] {
        for &q2 in options[1].iter().filter(|&&q| q != q1) {
            for &q3 in options[2].iter().filter(|&&q| q != q1 && q != q2) {
                out.push([q1, q2, q3]);
            }
        }
    }
    out
}

/// Bijection of clusters induced by `f`, if `f` maps `src` onto `dst` with
/// matching multiplicities (image-to-point coincidence under `tau_pt`).
pub(crate) fn induced_permutation(
    f: &MobiusMap,
    src: &MajoranaSet,
    dst: &MajoranaSet,
    tau_pt: f64,
) -> Option<Vec<usize>> {
    if src.diversity() != dst.diversity() {
        return None;
    }
    let mut used = vec![false; dst.diversity()];
    let mut perm = Vec::with_capacity(src.diversity());
    for cluster in src.clusters() {
        let image = f.apply(&cluster.point);
        let (j, dist) = dst
            .clusters()
            .iter()
            .enumerate()
            .filter(|(j, c)| !used[*j] && c.multiplicity == cluster.multiplicity)
            .map(|(j, c)| (j, image.distance(&c.point)))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        if dist > tau_pt {
            return None;
        }
        used[j] = true;
        perm.push(j);
    }
    Some(perm)
}

/// Möbius maps sending `src` onto `dst`, in enumeration order, filtered by `accept`.
pub(crate) fn search_maps<R, F>(
    src: &MajoranaSet,
    dst: &MajoranaSet,
    allow_identity: bool,
    tol: &Tolerances,
    schedule: Schedule,
    accept: F,
) -> Option<R>
where
    R: Send,
    F: Fn(MobiusMap, Vec<usize>) -> Option<R> + Sync + Send,
{
    let anchors = anchor_indices(src);
    let triples = candidate_triples(src, anchors, dst);
    let sources = anchors.map(|a| &src.clusters()[a].point);
    par::find_map_first(schedule, &triples, |t| {
        let targets = t.map(|j| &dst.clusters()[j].point);
        let f = from_three_points_with(sources, targets, tol.point).ok()?;
        if !allow_identity && f.is_identity() {
            return None;
        }
        let perm = induced_permutation(&f, src, dst, tol.point)?;
        accept(f, perm)
    })
}

/// Every Möbius map sending `src` onto `dst`, in enumeration order.
pub(crate) fn all_maps(
    src: &MajoranaSet,
    dst: &MajoranaSet,
    allow_identity: bool,
    tol: &Tolerances,
    schedule: Schedule,
) -> Vec<(MobiusMap, Vec<usize>)> {
    let anchors = anchor_indices(src);
    let triples = candidate_triples(src, anchors, dst);
    let sources = anchors.map(|a| &src.clusters()[a].point);
    par::map_indexed(schedule, triples.len() as u64, |i| {
        let targets = triples[i as usize].map(|j| &dst.clusters()[j].point);
        let f = from_three_points_with(sources, targets, tol.point).ok()?;
        if !allow_identity && f.is_identity() {
            return None;
        }
        let perm = induced_permutation(&f, src, dst, tol.point)?;
        Some((f, perm))
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn find_permuting_mobius(points: &MajoranaSet) -> Option<(MobiusMap, Vec<usize>)> {
    find_permuting_mobius_with(points, &Tolerances::default(), Schedule::default())
}

/// A non-identity Möbius map permuting the clusters of `points`. Needs `m >= 3`.
pub fn find_permuting_mobius_with(
    points: &MajoranaSet,
    tol: &Tolerances,
    schedule: Schedule,
) -> Option<(MobiusMap, Vec<usize>)> {
    if points.diversity() < 3 {
        return None;
    }
    search_maps(points, points, false, tol, schedule, |f, perm| Some((f, perm)))
}

/// `g |p_i> = lambda_i |p_sigma(i)>` using the larger component of the target.
fn eigen_ratio(g: &Mat2, src: [C64; 2], dst: [C64; 2]) -> C64 {
    let image = g.apply(src);
    if dst[0].norm() >= dst[1].norm() {
        image[0] / dst[0]
    } else {
        image[1] / dst[1]
    }
}

fn expand_lambdas(points: &MajoranaSet, per_cluster: &[C64]) -> Vec<C64> {
    points
        .clusters()
        .iter()
        .zip(per_cluster)
        .flat_map(|(c, &l)| std::iter::repeat_n(l, c.multiplicity))
        .collect()
}

fn symmetric_residual(g: &Mat2, state: &SymmetricState) -> (Vec<C64>, f64) {
    let r: Vec<C64> = majorana::apply_symmetric(g, state)
        .iter()
        .zip(state.amplitudes())
        .map(|(y, x)| y - x)
        .collect();
    let norm = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    (r, norm)
}

/// Gauss-Newton on `g^{⊗n} psi = psi` in the Dicke basis. A map built from
/// three computed points inherits their rounding error, which `g^{⊗n}`
/// amplifies about `n`-fold; a few steps bring the residual back to rounding
/// level. The result is still checked by the caller.
fn polish_stabilizer(g: Mat2, state: &SymmetricState) -> Mat2 {
    let (mut r, mut res) = symmetric_residual(&g, state);
    let mut g = g;
    for _ in 0..6 {
        if res <= 1e-14 {
            break;
        }
        let h = 1e-6 * g.frobenius();
        let rows = r.len();
        let mut jac = nalgebra::DMatrix::<C64>::zeros(rows, 4);
        for col in 0..4 {
            let mut e = Mat2::new(ZERO, ZERO, ZERO, ZERO);
            e.m[col / 2][col % 2] = C64::new(h, 0.0);
            let plus = majorana::apply_symmetric(&(g + e), state);
            let minus = majorana::apply_symmetric(&(g + e.scale(C64::new(-1.0, 0.0))), state);
            for row in 0..rows {
                jac[(row, col)] = (plus[row] - minus[row]) / (2.0 * h);
            }
        }
        let rhs = nalgebra::DVector::from_iterator(rows, r.iter().map(|z| -z));
        let Ok(step) = jac.svd(true, true).solve(&rhs, 1e-10) else {
            break;
        };
        let candidate = g + Mat2::new(step[0], step[1], step[2], step[3]);
        let (rc, resc) = symmetric_residual(&candidate, state);
        if resc >= res {
            break;
        }
        (g, r, res) = (candidate, rc, resc);
    }
    g
}

/// Dense check when `n` allows it; otherwise the Majorana-level product check.
fn verify(
    state: &SymmetricState,
    cert: &mut StabilizerCertificate,
    tol: &Tolerances,
) -> Result<bool> {
    if symmetric_residual(cert.g.matrix(), state).1 > 1e-14 {
        cert.g = LocalOperator::new(polish_stabilizer(*cert.g.matrix(), state))?;
    }
    if cert.g.is_scalar(1e-9) {
        return Err(Error::Inconsistency {
            message: "certificate operator is a multiple of the identity".into(),
            residual: 0.0,
        });
    }
    if state.n() <= DENSE_LIMIT {
        let residual = oracle::verify_certificate(state, &cert.g)?;
        cert.residual = Some(residual);
        if !(residual <= tol.certificate) {
            return Err(Error::Inconsistency {
                message: "certificate fails dense verification".into(),
                residual,
            });
        }
        Ok(true)
    } else {
        let residual = (cert.lambda_product() - ONE).norm();
        if !(residual <= tol.certificate) {
            return Err(Error::Inconsistency {
                message: "certificate eigenvalue product is not one".into(),
                residual,
            });
        }
        Ok(false)
    }
}

pub fn certificate_from_mobius(
    state: &SymmetricState,
    points: &MajoranaSet,
    f: &MobiusMap,
    permutation: &[usize],
) -> Result<StabilizerCertificate> {
    certificate_from_mobius_with(state, points, f, permutation, &Tolerances::default())
}

/// Lifts a permuting Möbius map to a verified stabilizer operator, rescaling
/// so the eigenvalue product is one.
pub fn certificate_from_mobius_with(
    state: &SymmetricState,
    points: &MajoranaSet,
    f: &MobiusMap,
    permutation: &[usize],
    tol: &Tolerances,
) -> Result<StabilizerCertificate> {
    let n = points.n();
    if permutation.len() != points.diversity() {
        return Err(Error::precondition("permutation length differs from cluster count"));
    }
    let g0 = *f.matrix();
    let clusters = points.clusters();
    let per_cluster: Vec<C64> = clusters
        .iter()
        .zip(permutation)
        .map(|(c, &j)| eigen_ratio(&g0, c.point.vector(), clusters[j].point.vector()))
        .collect();
    let total: C64 = clusters
        .iter()
        .zip(&per_cluster)
        .map(|(c, l)| l.powu(c.multiplicity as u32))
        .product();
    let root = total.powf(1.0 / n as f64);
    let g = LocalOperator::new(g0.scale(root.inv()))?;
    let per_cluster: Vec<C64> = per_cluster.iter().map(|l| l / root).collect();
    let mut cert = StabilizerCertificate {
        g,
        permutation: permutation.to_vec(),
        lambdas: expand_lambdas(points, &per_cluster),
        residual: None,
        mobius: Some(*f),
    };
    verify(state, &mut cert, tol)?;
    Ok(cert)
}

/// `m = 1`: the state is `|e>^{⊗n}`; any operator with eigenvector `|e>` at
/// eigenvalue one works. Uses `h^-1 diag(1, 2) h` with `h |e> = |0>`.
pub fn m1_certificate(points: &MajoranaSet) -> Result<StabilizerCertificate> {
    if points.diversity() != 1 {
        return Err(Error::precondition(format!(
            "m1 construction needs diversity 1, got {}",
            points.diversity()
        )));
    }
    let e = points.clusters()[0].point;
    let basis = Mat2::from_columns(e.vector(), e.antipode().vector());
    let h = basis.inverse().expect("orthonormal basis");
    let g = basis * Mat2::diag(ONE, C64::new(2.0, 0.0)) * h;
    Ok(StabilizerCertificate {
        g: LocalOperator::new(g)?,
        permutation: vec![0],
        lambdas: vec![ONE; points.n()],
        residual: None,
        mobius: None,
    })
}

/// `m = 2`: diagonal in the basis of the two points when multiplicities
/// differ, a swap of the two points when they agree.
pub fn m2_certificate(points: &MajoranaSet) -> Result<StabilizerCertificate> {
    if points.diversity() != 2 {
        return Err(Error::precondition(format!(
            "m2 construction needs diversity 2, got {}",
            points.diversity()
        )));
    }
    let cl = points.clusters();
    // first index carries the larger multiplicity
    let (i1, i2) = if cl[0].multiplicity >= cl[1].multiplicity { (0, 1) } else { (1, 0) };
    let (e1, k1) = (cl[i1].point, cl[i1].multiplicity);
    let (e2, k2) = (cl[i2].point, cl[i2].multiplicity);
    let basis = Mat2::from_columns(e1.vector(), e2.vector());
    let h = basis
        .inverse()
        .ok_or_else(|| Error::domain("m2 construction needs two distinct points"))?;

    let mut per_cluster = [ONE; 2];
    let mut permutation = vec![0, 1];
    let core = if k1 != k2 {
        let l1 = C64::from_polar(1.0, TAU / k1 as f64);
        let l2 = if k1 > 1 { ONE } else { C64::from_polar(1.0, TAU / k2 as f64) };
        per_cluster[i1] = l1;
        per_cluster[i2] = l2;
        Mat2::diag(l1, l2)
    } else {
        // g e1 = l1 e2, g e2 = l2 e1 with (l1 l2)^k = 1
        permutation = vec![1, 0];
        Mat2::new(ZERO, ONE, ONE, ZERO)
    };
    Ok(StabilizerCertificate {
        g: LocalOperator::new(basis * core * h)?,
        permutation,
        lambdas: expand_lambdas(points, &per_cluster),
        residual: None,
        mobius: None,
    })
}

pub fn decide_stabilizer(state: &SymmetricState) -> Result<StabilizerVerdict> {
    decide_stabilizer_with(state, &Tolerances::default(), Schedule::default())
}

pub fn decide_stabilizer_with(
    state: &SymmetricState,
    tol: &Tolerances,
    schedule: Schedule,
) -> Result<StabilizerVerdict> {
    let points = majorana::majorana_decompose_with(state, tol)?;
    decide_for_points(state, &points, tol, schedule)
}

/// Same as [`decide_stabilizer_with`] for an already decomposed state.
pub fn decide_for_points(
    state: &SymmetricState,
    points: &MajoranaSet,
    tol: &Tolerances,
    schedule: Schedule,
) -> Result<StabilizerVerdict> {
    let (method, mut cert) = match points.diversity() {
        1 => (Method::M1Construction, m1_certificate(points)?),
        2 => (Method::M2Construction, m2_certificate(points)?),
        _ => {
            // first candidate whose certificate verifies, in enumeration order
            let found = search_maps(points, points, false, tol, schedule, |f, perm| {
                certificate_from_mobius_with(state, points, &f, &perm, tol).ok()
            });
            return match found {
                Some(cert) => Ok(StabilizerVerdict {
                    trivial: false,
                    dense_verified: cert.residual.is_some(),
                    certificate: Some(cert),
                    method: Method::MobiusSearch,
                }),
                None => {
                    if let Some((f, perm)) = find_permuting_mobius_with(points, tol, schedule) {
                        // a permuting map exists but no certificate verified
                        certificate_from_mobius_with(state, points, &f, &perm, tol)?;
                    }
                    Ok(StabilizerVerdict {
                        trivial: true,
                        certificate: None,
                        method: Method::MobiusSearch,
                        dense_verified: state.n() <= DENSE_LIMIT,
                    })
                }
            };
        }
    };
    let dense_verified = verify(state, &mut cert, tol)?;
    Ok(StabilizerVerdict {
        trivial: false,
        certificate: Some(cert),
        method,
        dense_verified,
    })
}

/// Decision from the degeneracy configuration alone. Never contradicts
/// [`decide_stabilizer`]; returns `Unknown` whenever geometry matters.
pub fn config_precheck(config: &DegeneracyConfiguration) -> Precheck {
    let m = config.diversity;
    if m <= 2 {
        return Precheck::Nontrivial;
    }
    if m == 3 && config.partition.len() < 3 {
        // two equal multiplicities: the map swapping them and fixing the
        // third point is an involution
        return Precheck::Nontrivial;
    }
    // three clusters with unique multiplicities must all be fixed, and only
    // the identity fixes three points
    let singletons = config.partition.iter().filter(|&&s| s == 1).count();
    if singletons >= 3 {
        return Precheck::Trivial;
    }
    Precheck::Unknown
}

/// A stabilizer `A ⊗ B` of a two-qubit symmetric state, not necessarily of the
/// form `g ⊗ g`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairCertificate {
    pub a: LocalOperator,
    /// Normalized to determinant one.
    pub b: LocalOperator,
    pub residual: f64,
    /// Dimension of the solution space of `A X = X C`.
    pub solution_dimension: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairVerdict {
    pub trivial: bool,
    pub certificate: PairCertificate,
    pub method: Method,
}

/// Solves `A X = X C` (with `C = (B^T)^-1`) for the coefficient matrix `X` of a
/// two-qubit state, then picks a non-identity invertible solution.
pub fn two_qubit_stabilizer(state: &SymmetricState) -> Result<PairVerdict> {
    if state.n() != 2 {
        return Err(Error::precondition(format!(
            "two-qubit solver needs n = 2, got {}",
            state.n()
        )));
    }
    let x = state.amplitudes();
    let off = x[1] / sqrt_binomial(2, 1);
    let xm = [[x[0], off], [off, x[2]]];

    // unknowns: A00 A01 A10 A11 C00 C01 C10 C11
    // (AX - XC)_ij = sum_k A_ik X_kj - sum_k X_ik C_kj
    let mut sys = nalgebra::DMatrix::<C64>::zeros(4, 8);
    for i in 0..2 {
        for j in 0..2 {
            let row = 2 * i + j;
            for k in 0..2 {
                sys[(row, 2 * i + k)] += xm[k][j];
                sys[(row, 4 + 2 * k + j)] -= xm[i][k];
            }
        }
    }
    let gram = sys.adjoint() * &sys;
    let eig = gram.symmetric_eigen();
    let scale = eig.eigenvalues.iter().copied().fold(1.0, f64::max);
    let null: Vec<nalgebra::DVector<C64>> = (0..8)
        .filter(|&i| eig.eigenvalues[i] <= 1e-12 * scale)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    let solution_dimension = null.len();

    let identity = nalgebra::DVector::<C64>::from_vec(vec![
        ONE, ZERO, ZERO, ONE, ONE, ZERO, ZERO, ONE,
    ]) * C64::new(0.5, 0.0);
    let direction = null
        .iter()
        .map(|v| v - &identity * identity.dotc(v))
        .max_by(|u, v| u.norm().total_cmp(&v.norm()))
        .ok_or_else(|| Error::Numeric {
            message: "empty solution space".into(),
            residual: eig.eigenvalues.min(),
        })?;
    let direction = &direction / C64::new(direction.norm(), 0.0);
    let to_mat = |v: &nalgebra::DVector<C64>, off: usize| Mat2::new(v[off], v[off + 1], v[off + 2], v[off + 3]);
    let dense = oracle::dense_from_symmetric(state)?;

    let steps = [
        C64::new(0.5, 0.25),
        C64::new(0.3, -0.7),
        C64::new(1.0, 0.0),
        C64::new(-0.8, 0.4),
    ];
    let mut last_residual = f64::INFINITY;
    for t in steps {
        let a = Mat2::identity() + to_mat(&direction, 0).scale(t);
        let c = Mat2::identity() + to_mat(&direction, 4).scale(t);
        if a.det().norm() < 1e-6 || c.det().norm() < 1e-6 {
            continue;
        }
        let b = c.inverse().expect("checked determinant").transpose();
        let s = b.det().sqrt();
        let (a, b) = (a.scale(s), b.scale(s.inv()));
        let (a, b) = (LocalOperator::new(a)?, LocalOperator::new(b)?);
        if a.is_scalar(1e-9) && b.is_scalar(1e-9) {
            continue;
        }
        let out = oracle::apply_local(&[a, b], &dense)?;
        last_residual = out.distance(&dense);
        if last_residual <= CERT_TOL {
            return Ok(PairVerdict {
                trivial: false,
                certificate: PairCertificate {
                    a,
                    b,
                    residual: last_residual,
                    solution_dimension,
                },
                method: Method::TwoQubitLinearSystem,
            });
        }
    }
    Err(Error::Inconsistency {
        message: "no verified two-qubit stabilizer in the solution space".into(),
        residual: last_residual,
    })
}

const CERT_TOL: f64 = crate::model::CERTIFICATE_TOL;

/// `i^N sum_k (-1)^(N-k) u_k w_(N-k)`: the sigma_y bilinear form of two
/// symmetric `N`-qubit vectors given by Dicke coefficients.
fn dicke_sigma_y_form(u: &[C64], w: &[C64]) -> C64 {
    let nn = u.len() - 1;
    let sum: C64 = (0..=nn)
        .map(|k| {
            let sign = if (nn - k).is_multiple_of(2) { 1.0 } else { -1.0 };
            u[k] * w[nn - k] * sign
        })
        .sum();
    C64::new(0.0, 1.0).powu(nn as u32) * sum
}

/// `f2` from Dicke amplitudes.
pub fn f2_dicke(state: &SymmetricState) -> C64 {
    dicke_sigma_y_form(state.amplitudes(), state.amplitudes())
}

/// `f4` from Dicke amplitudes, via the first-qubit split
/// `psi_0 = sum_k x_k sqrt((n-k)/n) D(n-1,k)`, `psi_1 = sum_k x_(k+1) sqrt((k+1)/n) D(n-1,k)`.
pub fn f4_dicke(state: &SymmetricState) -> Result<C64> {
    let n = state.n();
    if n < 2 {
        return Err(Error::precondition("f4 needs n >= 2"));
    }
    let x = state.amplitudes();
    let nf = n as f64;
    let psi0: Vec<C64> = (0..n).map(|k| x[k] * ((n - k) as f64 / nf).sqrt()).collect();
    let psi1: Vec<C64> = (0..n).map(|k| x[k + 1] * ((k + 1) as f64 / nf).sqrt()).collect();
    let g00 = dicke_sigma_y_form(&psi0, &psi0);
    let g01 = dicke_sigma_y_form(&psi0, &psi1);
    let g10 = dicke_sigma_y_form(&psi1, &psi0);
    let g11 = dicke_sigma_y_form(&psi1, &psi1);
    Ok(g00 * g11 - g01 * g10)
}

/// Degree-2 SL-invariant `<psi*| sigma_y^{⊗n} |psi>`.
pub fn f2(state: &SymmetricState) -> C64 {
    match oracle::dense_from_symmetric(state) {
        Ok(v) => oracle::f2_dense(&v),
        Err(_) => f2_dicke(state),
    }
}

/// Degree-4 SL-invariant from the first-qubit split.
pub fn f4(state: &SymmetricState) -> Result<C64> {
    if state.n() < 2 {
        return Err(Error::precondition("f4 needs n >= 2"));
    }
    match oracle::dense_from_symmetric(state) {
        Ok(v) => oracle::f4_dense(&v),
        Err(_) => f4_dicke(state),
    }
}

/// Single-qubit marginals equal `I/2` within 1e-9.
pub fn is_critical(state: &SymmetricState) -> bool {
    let rho = reduced_density_matrix(state);
    rho.max_abs_diff(&Mat2::identity().scale(C64::new(0.5, 0.0))) <= 1e-9
}
