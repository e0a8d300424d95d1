//! Brute-force dense `2^n` state vectors, used as ground truth for the
//! closed forms elsewhere in the crate.
//!
//! Bit order: qubit 0 is the most significant bit of the basis index.

use crate::error::{Error, Result};
use crate::mat2::{sqrt_binomial, Mat2, C64, ONE, ZERO};
use crate::model::{LocalOperator, MajoranaSet, SymmetricState};
use crate::par::{pairwise_sum, Schedule};

/// Largest `n` for linear-time dense passes.
pub const DENSE_LIMIT: usize = 20;
/// Largest `n` for explicit symmetrization of a point product.
pub const SYMMETRIZE_LIMIT: usize = 12;
/// Largest `n` for the dense Hermitian eigen-solve.
pub const EIGEN_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<C64>,
}

fn guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Resource { what, limit, n });
    }
    Ok(())
}

fn mask(n: usize, qubit: usize) -> usize {
    1 << (n - 1 - qubit)
}

impl DenseState {
    pub fn new(n: usize, amps: Vec<C64>) -> Result<Self> {
        guard("dense state", n, DENSE_LIMIT)?;
        if amps.len() != 1 << n {
            return Err(Error::precondition(format!(
                "expected {} amplitudes, got {}",
                1usize << n,
                amps.len()
            )));
        }
        Ok(DenseState { n, amps })
    }

    /// Tensor product of single-qubit vectors, qubit 0 first.
    pub fn product(factors: &[[C64; 2]]) -> Result<Self> {
        let n = factors.len();
        guard("dense product", n, DENSE_LIMIT)?;
        let mut amps = vec![ONE];
        for f in factors {
            amps = amps.iter().flat_map(|&x| [x * f[0], x * f[1]]).collect();
        }
        Ok(DenseState { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn inner(&self, other: &DenseState) -> C64 {
        let terms: Vec<C64> = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .collect();
        pairwise_sum(Schedule::default(), &terms)
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    pub fn normalized(&self) -> DenseState {
        let s = 1.0 / self.norm();
        DenseState {
            n: self.n,
            amps: self.amps.iter().map(|x| x * s).collect(),
        }
    }

    pub fn distance(&self, other: &DenseState) -> f64 {
        let terms: Vec<C64> = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| C64::new((x - y).norm_sqr(), 0.0))
            .collect();
        pairwise_sum(Schedule::default(), &terms).re.sqrt()
    }

    /// Exchange qubits `i` and `j`.
    pub fn swap_qubits(&self, i: usize, j: usize) -> DenseState {
        let (mi, mj) = (mask(self.n, i), mask(self.n, j));
        let amps = (0..self.amps.len())
            .map(|s| {
                let (bi, bj) = (s & mi != 0, s & mj != 0);
                let t = if bi == bj { s } else { s ^ mi ^ mj };
                self.amps[t]
            })
            .collect();
        DenseState { n: self.n, amps }
    }

    /// Dicke amplitudes `<D(n,k)|v>`. Exact for symmetric `v`.
    pub fn dicke_projection(&self) -> Vec<C64> {
        let mut sums = vec![ZERO; self.n + 1];
        for (s, &x) in self.amps.iter().enumerate() {
            sums[s.count_ones() as usize] += x;
        }
        sums.iter()
            .enumerate()
            .map(|(k, &s)| s / sqrt_binomial(self.n, k))
            .collect()
    }

    pub fn to_symmetric(&self) -> Result<SymmetricState> {
        SymmetricState::new(self.dicke_projection())
    }
}

pub fn dense_from_symmetric(state: &SymmetricState) -> Result<DenseState> {
    let n = state.n();
    guard("dense_from_symmetric", n, DENSE_LIMIT)?;
    let scaled: Vec<C64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, &x)| x / sqrt_binomial(n, k))
        .collect();
    let amps = (0..1usize << n)
        .map(|s| scaled[s.count_ones() as usize])
        .collect();
    Ok(DenseState { n, amps })
}

/// Normalized symmetrization of the product of the Majorana points.
///
/// The full product state is averaged over each Hamming-weight class, which
/// equals averaging over all qubit permutations because the symmetric group
/// acts transitively on bit strings of fixed weight.
pub fn dense_symmetrize(points: &MajoranaSet) -> Result<DenseState> {
    let n = points.n();
    guard("dense_symmetrize", n, SYMMETRIZE_LIMIT)?;
    let factors: Vec<[C64; 2]> = points.expanded().iter().map(|p| p.vector()).collect();
    let product = DenseState::product(&factors)?;
    let mut class_sum = vec![ZERO; n + 1];
    let mut class_size = vec![0usize; n + 1];
    for (s, &x) in product.amps.iter().enumerate() {
        let w = s.count_ones() as usize;
        class_sum[w] += x;
        class_size[w] += 1;
    }
    let amps = (0..1usize << n)
        .map(|s| {
            let w = s.count_ones() as usize;
            class_sum[w] / class_size[w] as f64
        })
        .collect();
    let sym = DenseState { n, amps };
    if sym.norm() == 0.0 {
        return Err(Error::domain("symmetrized product vanished"));
    }
    Ok(sym.normalized())
}

/// Literal sum over all `n!` orderings of the point product (tiny `n` only).
pub fn dense_symmetrize_by_permutations(points: &MajoranaSet) -> Result<DenseState> {
    let n = points.n();
    guard("dense_symmetrize_by_permutations", n, 8)?;
    let pts: Vec<[C64; 2]> = points.expanded().iter().map(|p| p.vector()).collect();
    let mut acc = vec![ZERO; 1 << n];
    let mut order: Vec<usize> = (0..n).collect();
    // Heap's algorithm
    let mut counters = vec![0usize; n];
    let mut add = |order: &[usize]| {
        let factors: Vec<[C64; 2]> = order.iter().map(|&i| pts[i]).collect();
        let prod = DenseState::product(&factors).expect("guarded");
        for (a, b) in acc.iter_mut().zip(prod.amps) {
            *a += b;
        }
    };
    add(&order);
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(counters[i], i);
            }
            add(&order);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(DenseState { n, amps: acc }.normalized())
}

fn apply_single(v: &mut [C64], n: usize, qubit: usize, g: &Mat2, schedule: Schedule) {
    let stride = mask(n, qubit);
    let m = g.m;
    let kernel = |lo: &mut C64, hi: &mut C64| {
        let (x0, x1) = (*lo, *hi);
        *lo = m[0][0] * x0 + m[0][1] * x1;
        *hi = m[1][0] * x0 + m[1][1] * x1;
    };
    #[cfg(feature = "parallel")]
    if schedule.is_parallel() && v.len() >= 1 << 12 {
        use rayon::prelude::*;
        v.par_chunks_mut(2 * stride).for_each(|block| {
            let (lo, hi) = block.split_at_mut(stride);
            if stride >= 1 << 10 {
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .for_each(|(a, b)| kernel(a, b));
            } else {
                lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| kernel(a, b));
            }
        });
        return;
    }
    let _ = schedule;
    for block in v.chunks_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| kernel(a, b));
    }
}

/// `(ops[0] ⊗ ops[1] ⊗ ... ⊗ ops[n-1]) v`, one qubit at a time.
pub fn apply_local(ops: &[LocalOperator], v: &DenseState) -> Result<DenseState> {
    apply_local_with(ops, v, Schedule::default())
}

pub fn apply_local_with(ops: &[LocalOperator], v: &DenseState, schedule: Schedule) -> Result<DenseState> {
    apply_matrices(&ops.iter().map(|g| *g.matrix()).collect::<Vec<_>>(), v, schedule)
}

/// Like [`apply_local`] but accepts singular factors.
pub fn apply_matrices(ops: &[Mat2], v: &DenseState, schedule: Schedule) -> Result<DenseState> {
    if ops.len() != v.n {
        return Err(Error::precondition(format!(
            "need {} local operators, got {}",
            v.n,
            ops.len()
        )));
    }
    let mut amps = v.amps.clone();
    for (q, g) in ops.iter().enumerate() {
        apply_single(&mut amps, v.n, q, g, schedule);
    }
    Ok(DenseState { n: v.n, amps })
}

/// `g^{⊗n} v`.
pub fn apply_uniform(g: &Mat2, v: &DenseState) -> DenseState {
    apply_matrices(&vec![*g; v.n], v, Schedule::default()).expect("length matches")
}

/// `||g^{⊗n}|psi> - |psi>||`.
pub fn verify_certificate(state: &SymmetricState, g: &LocalOperator) -> Result<f64> {
    let v = dense_from_symmetric(state)?;
    Ok(apply_uniform(g.matrix(), &v).distance(&v))
}

/// Reduced state of one qubit: `rho_ab = sum_rest v[..a..] conj(v[..b..])`.
pub fn dense_partial_trace(v: &DenseState, qubit: usize) -> Result<Mat2> {
    if qubit >= v.n {
        return Err(Error::precondition(format!("qubit {qubit} out of range")));
    }
    let bit = mask(v.n, qubit);
    let mut rho = [[ZERO; 2]; 2];
    for s in (0..v.amps.len()).filter(|s| s & bit == 0) {
        let (x0, x1) = (v.amps[s], v.amps[s | bit]);
        rho[0][0] += x0 * x0.conj();
        rho[0][1] += x0 * x1.conj();
        rho[1][0] += x1 * x0.conj();
        rho[1][1] += x1 * x1.conj();
    }
    Ok(Mat2 { m: rho })
}

/// `(u, w) = <u*| sigma_y^{⊗N} |w>` over equal-length amplitude slices.
fn sigma_y_form(u: &[C64], w: &[C64]) -> C64 {
    let len = u.len();
    let nbits = len.trailing_zeros();
    let all = len - 1;
    let i = C64::new(0.0, 1.0);
    let terms: Vec<C64> = (0..len)
        .map(|t| {
            // sigma_y^{⊗N}|t> = i^{zeros(t)} (-i)^{ones(t)} |~t>
            let ones = t.count_ones();
            let zeros = nbits - ones;
            let phase = i.powu(zeros) * (-i).powu(ones);
            u[all ^ t] * w[t] * phase
        })
        .collect();
    pairwise_sum(Schedule::default(), &terms)
}

/// `<psi*| sigma_y^{⊗n} |psi>`.
pub fn f2_dense(v: &DenseState) -> C64 {
    sigma_y_form(&v.amps, &v.amps)
}

/// Determinant of the `sigma_y` bilinear forms of the first-qubit split.
pub fn f4_dense(v: &DenseState) -> Result<C64> {
    if v.n < 2 {
        return Err(Error::precondition("f4 needs n >= 2"));
    }
    let (psi0, psi1) = v.amps.split_at(v.amps.len() / 2);
    let g00 = sigma_y_form(psi0, psi0);
    let g01 = sigma_y_form(psi0, psi1);
    let g10 = sigma_y_form(psi1, psi0);
    let g11 = sigma_y_form(psi1, psi1);
    Ok(g00 * g11 - g01 * g10)
}

/// Largest eigenvalue of `(g^† g)^{⊗n}` by a dense Hermitian eigen-solve.
pub fn dense_lambda_max(g: &Mat2, n: usize) -> Result<f64> {
    guard("dense_lambda_max", n, EIGEN_LIMIT)?;
    let h = g.adjoint() * *g;
    let dim = 1usize << n;
    let mut big = nalgebra::DMatrix::<C64>::from_element(1, 1, ONE);
    let small = nalgebra::DMatrix::<C64>::from_fn(2, 2, |r, c| h.m[r][c]);
    for _ in 0..n {
        big = big.kronecker(&small);
    }
    debug_assert_eq!(big.nrows(), dim);
    let eig = big.symmetric_eigen();
    Ok(eig.eigenvalues.iter().copied().fold(f64::MIN, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Cluster, ProjectivePoint};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn dicke_21_dense() {
        let v = dense_from_symmetric(&SymmetricState::dicke(2, 1).unwrap()).unwrap();
        let h = FRAC_1_SQRT_2;
        assert_eq!(v.amplitudes().len(), 4);
        for (got, want) in v.amplitudes().iter().zip([0.0, h, h, 0.0]) {
            assert!((got - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn ghz_and_product_dense() {
        let v = dense_from_symmetric(&SymmetricState::ghz(3).unwrap()).unwrap();
        for (s, x) in v.amplitudes().iter().enumerate() {
            let want = if s == 0 || s == 7 { FRAC_1_SQRT_2 } else { 0.0 };
            assert!((x - c(want, 0.0)).norm() < 1e-15);
        }
        let v = dense_from_symmetric(&SymmetricState::dicke(3, 0).unwrap()).unwrap();
        assert_eq!(v.amplitudes()[0], ONE);
        assert!(v.amplitudes()[1..].iter().all(|x| *x == ZERO));
    }

    #[test]
    fn dense_limit_guard() {
        let s = SymmetricState::dicke(21, 3).unwrap();
        assert!(matches!(dense_from_symmetric(&s), Err(Error::Resource { .. })));
    }

    #[test]
    fn symmetrize_w3_and_product() {
        let set = MajoranaSet::new(
            vec![
                Cluster { point: ProjectivePoint::infinity(), multiplicity: 2 },
                Cluster { point: ProjectivePoint::origin(), multiplicity: 1 },
            ],
            1e-8,
        )
        .unwrap();
        let v = dense_symmetrize(&set).unwrap();
        let w = dense_from_symmetric(&SymmetricState::dicke(3, 1).unwrap()).unwrap();
        assert!(v.inner(&w).norm() > 1.0 - 1e-14);
        let lit = dense_symmetrize_by_permutations(&set).unwrap();
        assert!(lit.distance(&v) < 1e-14);

        let set = MajoranaSet::new(
            vec![Cluster { point: ProjectivePoint::infinity(), multiplicity: 4 }],
            1e-8,
        )
        .unwrap();
        let v = dense_symmetrize(&set).unwrap();
        assert!((v.amplitudes()[0] - ONE).norm() < 1e-15);
    }

    #[test]
    fn apply_examples() {
        let v = dense_from_symmetric(&SymmetricState::ghz(2).unwrap()).unwrap();
        let id = vec![LocalOperator::identity(); 2];
        assert_eq!(apply_local(&id, &v).unwrap(), v);
        let z = LocalOperator::new(Mat2::diag(ONE, c(-1.0, 0.0))).unwrap();
        let out = apply_local(&[z, z], &v).unwrap();
        assert!(out.distance(&v) < 1e-15);
        assert!(apply_local(&[z], &v).is_err());
    }

    #[test]
    fn w3_certificate_from_the_literature() {
        let g = LocalOperator::new(Mat2::diag(C64::from_polar(1.0, PI / 4.0), C64::from_polar(1.0, -PI / 2.0))).unwrap();
        let r = verify_certificate(&SymmetricState::dicke(3, 1).unwrap(), &g).unwrap();
        assert!(r <= 1e-12, "{r}");
    }

    #[test]
    fn sigma_z_does_not_fix_ghz3() {
        let z = LocalOperator::new(Mat2::diag(ONE, c(-1.0, 0.0))).unwrap();
        let r = verify_certificate(&SymmetricState::ghz(3).unwrap(), &z).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12, "{r}");
        let r = verify_certificate(&SymmetricState::ghz(3).unwrap(), &LocalOperator::identity()).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn partial_trace_examples() {
        let v = dense_from_symmetric(&SymmetricState::ghz(3).unwrap()).unwrap();
        for q in 0..3 {
            let rho = dense_partial_trace(&v, q).unwrap();
            assert!(rho.max_abs_diff(&Mat2::identity().scale(c(0.5, 0.0))) < 1e-15);
        }
        let v = dense_from_symmetric(&SymmetricState::dicke(4, 0).unwrap()).unwrap();
        let rho = dense_partial_trace(&v, 2).unwrap();
        assert!(rho.max_abs_diff(&Mat2::diag(ONE, ZERO)) < 1e-15);
    }

    #[test]
    fn f2_of_dicke_21_is_one() {
        let v = dense_from_symmetric(&SymmetricState::dicke(2, 1).unwrap()).unwrap();
        assert!((f2_dense(&v) - ONE).norm() < 1e-15);
    }

    #[test]
    fn f4_of_product_is_zero() {
        let v = dense_from_symmetric(&SymmetricState::dicke(4, 0).unwrap()).unwrap();
        assert_eq!(f4_dense(&v).unwrap(), ZERO);
    }

    #[test]
    fn eigen_oracle_diag() {
        let g = Mat2::diag(c(2.0, 0.0), c(0.5, 0.0));
        let l = dense_lambda_max(&g, 3).unwrap();
        assert!((l - 64.0).abs() < 1e-12);
    }
}
