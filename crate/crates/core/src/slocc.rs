//! SLOCC equivalence of symmetric states and conversion probabilities.
//!
//! Two symmetric states are SLOCC equivalent iff some Möbius map carries the
//! Majorana points of one onto the other with multiplicities. The map's matrix,
//! rescaled, is the connecting operator `g` with `g^{⊗n} psi1 ∝ psi2`.

use crate::error::{Error, Result};
use crate::majorana::{self, apply_symmetric};
use crate::mat2::{Mat2, C64};
use crate::mobius::MobiusMap;
use crate::model::{LocalOperator, MajoranaSet, SymmetricState, Tolerances};
use crate::oracle::{self, DENSE_LIMIT};
use crate::par::Schedule;
use crate::stabilizer::{all_maps, search_maps};

/// Minimum overlap `|<psi2| g^{⊗n} |psi1>|` accepted for a connecting operator.
pub const OVERLAP_TOL: f64 = 1e-8;
/// `p_max` within this of one counts as deterministic conversion.
pub const UNIT_PROBABILITY_TOL: f64 = 1e-10;

pub fn slocc_equivalent(
    psi1: &SymmetricState,
    psi2: &SymmetricState,
) -> Result<Option<(MobiusMap, Vec<usize>)>> {
    slocc_equivalent_with(psi1, psi2, &Tolerances::default(), Schedule::default())
}

pub fn slocc_equivalent_with(
    psi1: &SymmetricState,
    psi2: &SymmetricState,
    tol: &Tolerances,
    schedule: Schedule,
) -> Result<Option<(MobiusMap, Vec<usize>)>> {
    if psi1.n() != psi2.n() {
        return Err(Error::precondition(format!(
            "qubit counts differ: {} vs {}",
            psi1.n(),
            psi2.n()
        )));
    }
    let src = majorana::majorana_decompose_with(psi1, tol)?;
    let dst = majorana::majorana_decompose_with(psi2, tol)?;
    Ok(match_point_sets(&src, &dst, tol, schedule))
}

/// A Möbius map taking `src` onto `dst` with multiplicities, if any.
pub fn match_point_sets(
    src: &MajoranaSet,
    dst: &MajoranaSet,
    tol: &Tolerances,
    schedule: Schedule,
) -> Option<(MobiusMap, Vec<usize>)> {
    let config = |s: &MajoranaSet| majorana::degeneracy_configuration(s).multiplicities;
    if config(src) != config(dst) {
        return None;
    }
    match src.diversity() {
        1 => {
            let (p, q) = (src.clusters()[0].point, dst.clusters()[0].point);
            let from = Mat2::from_columns(p.vector(), p.antipode().vector());
            let to = Mat2::from_columns(q.vector(), q.antipode().vector());
            let f = MobiusMap::from_matrix(to * from.inverse()?).ok()?;
            Some((f, vec![0]))
        }
        2 => {
            let (s, d) = (src.clusters(), dst.clusters());
            let perm = if s[0].multiplicity == d[0].multiplicity { vec![0, 1] } else { vec![1, 0] };
            let from = Mat2::from_columns(s[0].point.vector(), s[1].point.vector());
            let to = Mat2::from_columns(d[perm[0]].point.vector(), d[perm[1]].point.vector());
            let f = MobiusMap::from_matrix(to * from.inverse()?).ok()?;
            Some((f, perm))
        }
        _ => search_maps(src, dst, true, tol, schedule, |f, perm| Some((f, perm))),
    }
}

/// A verified connecting operator and the global phase it leaves behind.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    /// Scaled so that `g^{⊗n} psi1` has unit norm.
    pub g: LocalOperator,
    /// `<psi2| g^{⊗n} |psi1>`, unit modulus up to the overlap tolerance.
    pub phase: C64,
    pub overlap: f64,
    /// Checked on the dense vector rather than in the Dicke basis.
    pub dense_verified: bool,
}

pub fn connecting_operator(
    psi1: &SymmetricState,
    psi2: &SymmetricState,
    witness: &MobiusMap,
) -> Result<Connection> {
    if psi1.n() != psi2.n() {
        return Err(Error::precondition("qubit counts differ"));
    }
    let n = psi1.n();
    let g0 = *witness.matrix();
    let norm = apply_symmetric(&g0, psi1).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::Numeric {
            message: "image of the source state has no usable norm".into(),
            residual: norm,
        });
    }
    let g = LocalOperator::new(g0.scale(C64::new(norm.powf(-1.0 / n as f64), 0.0)))?;
    let (inner, dense_verified) = if n <= DENSE_LIMIT {
        let v1 = oracle::dense_from_symmetric(psi1)?;
        let v2 = oracle::dense_from_symmetric(psi2)?;
        let image = oracle::apply_uniform(g.matrix(), &v1);
        (v2.inner(&image), true)
    } else {
        let image = apply_symmetric(g.matrix(), psi1);
        let inner = psi2
            .amplitudes()
            .iter()
            .zip(&image)
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>();
        (inner, false)
    };
    let overlap = inner.norm();
    if !(overlap >= 1.0 - OVERLAP_TOL) {
        return Err(Error::Inconsistency {
            message: "connecting operator does not reproduce the target state".into(),
            residual: 1.0 - overlap,
        });
    }
    Ok(Connection {
        g,
        phase: inner / overlap,
        overlap,
        dense_verified,
    })
}

/// Largest eigenvalue of `g† g`.
pub fn lambda_max(g: &Mat2) -> f64 {
    (g.adjoint() * *g).hermitian_eigenvalues().0
}

/// `1 / lambda_max(g† g)^n`: the optimal probability of `psi -> g^{⊗n} psi`
/// when `g` is scaled to keep the output normalized.
pub fn p_max(g: &LocalOperator, n: usize) -> Result<f64> {
    if !g.is_invertible() {
        return Err(Error::precondition("p_max needs an invertible operator"));
    }
    let lambda = lambda_max(g.matrix());
    Ok(1.0 / lambda.powi(n as i32))
}

/// Every Möbius map carrying `src` onto `dst`. Finite for diversity >= 3;
/// for lower diversity the group of such maps is continuous and only the
/// canonical basis-change witness is returned.
pub fn all_witnesses(
    src: &MajoranaSet,
    dst: &MajoranaSet,
    tol: &Tolerances,
    schedule: Schedule,
) -> Vec<(MobiusMap, Vec<usize>)> {
    if src.diversity() < 3 {
        return match_point_sets(src, dst, tol, schedule).into_iter().collect();
    }
    let config = |s: &MajoranaSet| majorana::degeneracy_configuration(s).multiplicities;
    if config(src) != config(dst) {
        return Vec::new();
    }
    all_maps(src, dst, true, tol, schedule)
}

/// Everything `equiv` reports about a pair of states. Each direction uses
/// the witness with the largest conversion probability among those
/// enumerated; with a trivial source stabilizer there is exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversionReport {
    pub witness: MobiusMap,
    pub permutation: Vec<usize>,
    pub forward: Connection,
    pub backward: Connection,
    pub p_forward: f64,
    pub p_backward: f64,
    pub witnesses_considered: usize,
}

impl ConversionReport {
    /// Deterministic conversion in either direction means the states are
    /// related by local unitaries.
    pub fn lu_equivalent(&self) -> bool {
        (self.p_forward - 1.0).abs() <= UNIT_PROBABILITY_TOL
            || (self.p_backward - 1.0).abs() <= UNIT_PROBABILITY_TOL
    }
}

/// Connection with the largest `p_max`; ties keep the earliest witness.
fn best_connection(
    from: &SymmetricState,
    to: &SymmetricState,
    maps: impl Iterator<Item = MobiusMap>,
) -> Result<(MobiusMap, Connection, f64)> {
    let mut best: Option<(MobiusMap, Connection, f64)> = None;
    for f in maps {
        let conn = connecting_operator(from, to, &f)?;
        let p = p_max(&conn.g, from.n())?;
        if best.as_ref().is_none_or(|b| p > b.2) {
            best = Some((f, conn, p));
        }
    }
    best.ok_or_else(|| Error::precondition("no witness to evaluate"))
}

pub fn conversion_report(
    psi1: &SymmetricState,
    psi2: &SymmetricState,
    tol: &Tolerances,
) -> Result<Option<ConversionReport>> {
    if psi1.n() != psi2.n() {
        return Err(Error::precondition("qubit counts differ"));
    }
    let src = majorana::majorana_decompose_with(psi1, tol)?;
    let dst = majorana::majorana_decompose_with(psi2, tol)?;
    let witnesses = all_witnesses(&src, &dst, tol, Schedule::default());
    if witnesses.is_empty() {
        return Ok(None);
    }
    let (witness, forward, p_forward) = best_connection(psi1, psi2, witnesses.iter().map(|w| w.0))?;
    let permutation = witnesses.iter().find(|w| w.0 == witness).map(|w| w.1.clone()).unwrap_or_default();
    let (_, backward, p_backward) = best_connection(psi2, psi1, witnesses.iter().map(|w| w.0.inverse()))?;
    Ok(Some(ConversionReport {
        witness,
        permutation,
        forward,
        backward,
        p_forward,
        p_backward,
        witnesses_considered: witnesses.len(),
    }))
}
