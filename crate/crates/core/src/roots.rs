//! Simultaneous polynomial root finding (Aberth–Ehrlich) with a clustering
//! pass that recognizes multiple roots.
//!
//! Coefficient slices are ordered from the constant term upward.
//!
//! Aberth iterates converge only to about `eps^(1/k)` for a root of
//! multiplicity `k`, so a triple root comes back as three points roughly
//! `1e-5` apart. The clustering pass groups iterates hierarchically and
//! accepts a group of size `k` when its spread is consistent with the
//! perturbation radius `(eta / |P^(k)(c)/k!|)^(1/k)` of a `k`-fold root at the
//! group centroid `c`. Accepted groups are polished by Newton on `P^(k-1)`.

use crate::error::{Error, Result};
use crate::mat2::{C64, ZERO};
use std::f64::consts::TAU;

/// Stop refining a root once the update falls below this (relative to `1 + |z|`).
pub const UPDATE_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;

/// Backward-error multiplier for the evaluation noise floor.
const NOISE_FACTOR: f64 = 4.0;
/// How far beyond the predicted perturbation radius a cluster may spread.
const SPREAD_SLACK: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootCluster {
    pub root: C64,
    pub multiplicity: usize,
}

pub fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `sum |c_i| |z|^i`, the scale of rounding error in evaluating `P(z)`.
fn magnitude_bound(coeffs: &[C64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Taylor coefficients `t_j = P^(j)(c) / j!` of `P` about `c`.
pub fn taylor_shift(coeffs: &[C64], c: C64) -> Vec<C64> {
    let mut b = coeffs.to_vec();
    let d = b.len().saturating_sub(1);
    for i in 0..d {
        for j in (i..d).rev() {
            let next = b[j + 1];
            b[j] += c * next;
        }
    }
    b
}

/// All roots of a polynomial with nonzero constant and leading coefficients.
pub fn aberth(coeffs: &[C64]) -> Result<Vec<C64>> {
    let d = coeffs.len().saturating_sub(1);
    match d {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-coeffs[0] / coeffs[1]]),
        _ => {}
    }
    let lead = coeffs[d];
    let constant = coeffs[0];
    if lead == ZERO || constant == ZERO {
        return Err(Error::precondition(
            "aberth needs nonzero constant and leading coefficients",
        ));
    }
    let radius = (constant.norm() / lead.norm()).powf(1.0 / d as f64);
    let mut z: Vec<C64> = (0..d)
        .map(|i| {
            let r = radius * (1.0 + 0.05 * i as f64 / d as f64);
            C64::from_polar(r, TAU * i as f64 / d as f64 + 0.4)
        })
        .collect();
    let mut done = vec![false; d];

    for _ in 0..MAX_ITERATIONS {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let (p, dp) = horner_with_derivative(coeffs, zi);
            let floor = NOISE_FACTOR * d as f64 * f64::EPSILON * magnitude_bound(coeffs, zi.norm());
            if p.norm() <= floor {
                done[i] = true;
                continue;
            }
            if dp == ZERO {
                z[i] = zi + C64::new(1e-8, 1e-8) * (1.0 + zi.norm());
                continue;
            }
            let ratio = p / dp;
            let repulsion: C64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = zi - z[j];
                    if diff == ZERO {
                        ZERO
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                z[i] = zi + C64::new(1e-8, -1e-8) * (1.0 + zi.norm());
                continue;
            }
            z[i] = zi - step;
            if step.norm() <= UPDATE_TOL * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&x| x) {
            return Ok(z);
        }
    }

    let residual = z
        .iter()
        .map(|&zi| horner(coeffs, zi).norm() / magnitude_bound(coeffs, zi.norm()).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    Err(Error::Numeric {
        message: format!("Aberth iteration did not converge in {MAX_ITERATIONS} sweeps (degree {d})"),
        residual,
    })
}

fn chordal(z: C64, w: C64) -> f64 {
    (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
}

enum Node {
    Leaf(usize),
    Join(Box<Node>, Box<Node>),
}

impl Node {
    fn members(&self, out: &mut Vec<usize>) {
        match self {
            Node::Leaf(i) => out.push(*i),
            Node::Join(l, r) => {
                l.members(out);
                r.members(out);
            }
        }
    }
}

/// Single-linkage dendrogram over the roots (chordal metric).
fn dendrogram(roots: &[C64]) -> Node {
    let d = roots.len();
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(d * (d - 1) / 2);
    for i in 0..d {
        for j in i + 1..d {
            edges.push((chordal(roots[i], roots[j]), i, j));
        }
    }
    edges.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut parent: Vec<usize> = (0..d).collect();
    let mut nodes: Vec<Option<Node>> = (0..d).map(|i| Some(Node::Leaf(i))).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut root = 0;
    for (_, i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            continue;
        }
        let left = nodes[ri].take().unwrap();
        let right = nodes[rj].take().unwrap();
        parent[rj] = ri;
        nodes[ri] = Some(Node::Join(Box::new(left), Box::new(right)));
        root = ri;
    }
    nodes[root].take().unwrap()
}

/// Tests whether `members` look like the scattered iterates of one root of
/// multiplicity `members.len()`; returns the polished root when they do.
fn validate_group(coeffs: &[C64], roots: &[C64], members: &[usize]) -> Option<C64> {
    let k = members.len();
    let d = coeffs.len() - 1;
    let centroid = members.iter().map(|&i| roots[i]).sum::<C64>() / k as f64;
    let spread = members
        .iter()
        .map(|&i| (roots[i] - centroid).norm())
        .fold(0.0, f64::max);
    let t = taylor_shift(coeffs, centroid);
    let leading = t[k].norm();
    if leading == 0.0 {
        return None;
    }
    let eta = NOISE_FACTOR * d as f64 * f64::EPSILON * magnitude_bound(coeffs, centroid.norm());
    let radius = (eta / leading).powf(1.0 / k as f64);
    if spread > SPREAD_SLACK * radius {
        return None;
    }
    Some(polish(coeffs, centroid, k))
}

/// Newton on `P^(k-1)`, which has a simple root at a `k`-fold root of `P`.
fn polish(coeffs: &[C64], start: C64, k: usize) -> C64 {
    let mut z = start;
    let mut t = taylor_shift(coeffs, z);
    for _ in 0..8 {
        if t[k] == ZERO {
            break;
        }
        let step = t[k - 1] / (t[k] * k as f64);
        let candidate = z - step;
        let tc = taylor_shift(coeffs, candidate);
        if tc[k - 1].norm() < t[k - 1].norm() {
            z = candidate;
            t = tc;
        } else {
            break;
        }
    }
    z
}

fn split(node: Node, coeffs: &[C64], roots: &[C64], out: &mut Vec<RootCluster>) {
    let mut members = Vec::new();
    node.members(&mut members);
    if members.len() == 1 {
        out.push(RootCluster {
            root: polish(coeffs, roots[members[0]], 1),
            multiplicity: 1,
        });
        return;
    }
    if let Some(root) = validate_group(coeffs, roots, &members) {
        out.push(RootCluster {
            root,
            multiplicity: members.len(),
        });
        return;
    }
    match node {
        Node::Join(l, r) => {
            split(*l, coeffs, roots, out);
            split(*r, coeffs, roots, out);
        }
        Node::Leaf(_) => unreachable!("leaves have one member"),
    }
}

/// Roots grouped by multiplicity. Requires nonzero constant and leading
/// coefficients.
pub fn root_clusters(coeffs: &[C64]) -> Result<Vec<RootCluster>> {
    let roots = aberth(coeffs)?;
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    split(dendrogram(&roots), coeffs, &roots, &mut out);
    Ok(out)
}
