//! Dicke ⇄ Majorana conversion, degeneracy configurations and single-qubit
//! marginals.
//!
//! A symmetric state `sum_k x_k |D(n,k)>` corresponds to the polynomial
//! `P(z) = sum_k (-1)^k x_k sqrt(C(n,k)) z^k`, which is proportional to
//! `prod_i (a_i - b_i z)` over its Majorana points `a_i|0> + b_i|1>`. A finite
//! root `z` is the point `(z : 1)`; each unit of degree deficiency is a copy of
//! `|0> = (1 : 0)`, the point at infinity.

use crate::error::{Error, Result};
use crate::mat2::{sqrt_binomial, Mat2, C64, ONE, ZERO};
use crate::model::{
    Cluster, DegeneracyConfiguration, MajoranaSet, ProjectivePoint, SymmetricState, Tolerances,
};
use crate::roots;

#[derive(Debug, Clone, PartialEq)]
pub struct RootPolynomial {
    /// `c_0 ..= c_n`, constant term first.
    pub coefficients: Vec<C64>,
    /// Largest `k` with `|c_k| > eps_deg * max_j |c_j|`.
    pub degree: usize,
}

impl RootPolynomial {
    pub fn n(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn max_coefficient(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `|sum_k c_k a^k b^(n-k)|`: the polynomial evaluated on the normalized
    /// homogeneous coordinates of `p`. Equals `|P(z)| |b|^n` for finite points.
    pub fn homogeneous_residual(&self, p: &ProjectivePoint) -> f64 {
        let (a, b) = (p.a(), p.b());
        let n = self.n();
        let mut acc = ZERO;
        let mut a_pow = ONE;
        for k in 0..=n {
            acc += self.coefficients[k] * a_pow * b.powu((n - k) as u32);
            a_pow *= a;
        }
        acc.norm()
    }
}

pub fn dicke_to_polynomial(state: &SymmetricState) -> RootPolynomial {
    dicke_to_polynomial_with(state, &Tolerances::default())
}

pub fn dicke_to_polynomial_with(state: &SymmetricState, tol: &Tolerances) -> RootPolynomial {
    let n = state.n();
    let coefficients: Vec<C64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            x * (sign * sqrt_binomial(n, k))
        })
        .collect();
    let max = coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let degree = (0..=n)
        .rev()
        .find(|&k| coefficients[k].norm() > tol.degree * max)
        .unwrap_or(0);
    RootPolynomial {
        coefficients,
        degree,
    }
}

pub fn majorana_decompose(state: &SymmetricState) -> Result<MajoranaSet> {
    majorana_decompose_with(state, &Tolerances::default())
}

/// Majorana points of `state`, clustered by coincidence.
pub fn majorana_decompose_with(state: &SymmetricState, tol: &Tolerances) -> Result<MajoranaSet> {
    let poly = dicke_to_polynomial_with(state, tol);
    let n = poly.n();
    let d = poly.degree;
    let max = poly.max_coefficient();
    // low-order coefficients below the cutoff are exact roots at z = 0,
    // mirroring the treatment of the leading ones
    let zeros = (0..d)
        .take_while(|&k| poly.coefficients[k].norm() <= tol.degree * max)
        .count();

    let mut clusters = Vec::new();
    if n > d {
        clusters.push(Cluster {
            point: ProjectivePoint::infinity(),
            multiplicity: n - d,
        });
    }
    if zeros > 0 {
        clusters.push(Cluster {
            point: ProjectivePoint::origin(),
            multiplicity: zeros,
        });
    }
    let reduced: Vec<C64> = poly.coefficients[zeros..=d].to_vec();
    for rc in roots::root_clusters(&reduced)? {
        clusters.push(Cluster {
            point: ProjectivePoint::from_plane(rc.root),
            multiplicity: rc.multiplicity,
        });
    }
    let set = MajoranaSet::new(clusters, tol.point)?;
    debug_assert_eq!(set.n(), n);
    Ok(set)
}

/// The normalized symmetric state with the given Majorana points. Global phase:
/// the first Dicke amplitude above 1e-12 is made real and positive.
pub fn majorana_compose(points: &MajoranaSet) -> Result<SymmetricState> {
    compose_points(&points.expanded())
}

pub(crate) fn compose_points(points: &[ProjectivePoint]) -> Result<SymmetricState> {
    let n = points.len();
    if n == 0 {
        return Err(Error::domain("cannot compose an empty point set"));
    }
    // expand prod_i (a_i - b_i z)
    let mut poly = vec![ONE];
    for p in points {
        let mut next = vec![ZERO; poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k] += c * p.a();
            next[k + 1] -= c * p.b();
        }
        poly = next;
    }
    let amps: Vec<C64> = poly
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            c * (sign / sqrt_binomial(n, k))
        })
        .collect();
    let state = SymmetricState::new(amps)?;
    Ok(fix_phase(state))
}

fn fix_phase(state: SymmetricState) -> SymmetricState {
    let lead = state
        .amplitudes()
        .iter()
        .copied()
        .find(|x| x.norm() > 1e-12)
        .expect("normalized state has a nonzero amplitude");
    let phase = lead.conj() / lead.norm();
    SymmetricState::new(state.amplitudes().iter().map(|&x| x * phase).collect())
        .expect("phase rotation keeps the state valid")
}

pub fn degeneracy_configuration(points: &MajoranaSet) -> DegeneracyConfiguration {
    DegeneracyConfiguration::from_multiplicities(
        points.clusters().iter().map(|c| c.multiplicity).collect(),
    )
}

/// Single-qubit marginal, identical for every qubit of a symmetric state.
pub fn reduced_density_matrix(state: &SymmetricState) -> Mat2 {
    let x = state.amplitudes();
    let n = state.n();
    let nf = n as f64;
    let mut rho00 = 0.0;
    let mut rho01 = ZERO;
    for k in 0..=n {
        rho00 += x[k].norm_sqr() * (n - k) as f64 / nf;
        if k < n {
            let w = (((k + 1) * (n - k)) as f64).sqrt() / nf;
            rho01 += x[k] * x[k + 1].conj() * w;
        }
    }
    let rho00 = C64::new(rho00, 0.0);
    Mat2::new(rho00, rho01, rho01.conj(), ONE - rho00)
}

/// Dicke amplitudes of `g^{⊗n}|state>`, unnormalized.
///
/// Works on the binary form `F(w0, w1) = sum_k x_k sqrt(C(n,k)) w0^(n-k) w1^k`,
/// which transforms by the substitution `w -> g^T w`.
pub fn apply_symmetric(g: &Mat2, state: &SymmetricState) -> Vec<C64> {
    let n = state.n();
    let u = [g.m[0][0], g.m[1][0]];
    let v = [g.m[0][1], g.m[1][1]];
    let powers = |f: [C64; 2]| -> Vec<Vec<C64>> {
        let mut out = vec![vec![ONE]];
        for _ in 0..n {
            let prev = out.last().unwrap();
            let mut next = vec![ZERO; prev.len() + 1];
            for (i, &c) in prev.iter().enumerate() {
                next[i] += c * f[0];
                next[i + 1] += c * f[1];
            }
            out.push(next);
        }
        out
    };
    let up = powers(u);
    let vp = powers(v);
    let mut form = vec![ZERO; n + 1];
    for (k, &x) in state.amplitudes().iter().enumerate() {
        if x == ZERO {
            continue;
        }
        let y = x * sqrt_binomial(n, k);
        let (left, right) = (&up[n - k], &vp[k]);
        for (i, &l) in left.iter().enumerate() {
            for (j, &r) in right.iter().enumerate() {
                form[i + j] += y * l * r;
            }
        }
    }
    form.iter()
        .enumerate()
        .map(|(j, &f)| f / sqrt_binomial(n, j))
        .collect()
}
