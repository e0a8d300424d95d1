//! Monte Carlo estimates of how often random symmetric states have a trivial
//! stabilizer.
//!
//! Trial `i` of a run with master seed `s` draws its state from
//! `ChaCha8Rng::seed_from_u64(trial_seed(s, i))`, so trials are independent of
//! each other and of the execution schedule.

use crate::error::{Error, Result};
use crate::majorana::compose_points;
use crate::mat2::C64;
use crate::model::{canonicalize_point, ProjectivePoint, SymmetricState, Tolerances};
use crate::oracle::DENSE_LIMIT;
use crate::par::{self, Schedule};
use crate::stabilizer::decide_stabilizer_with;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::fmt;
use std::io::Write;

pub const CSV_HEADER: &str = "n,mode,m,trials,trivial,fraction,seed";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// `m` distinct points on the sphere with a uniform random composition of
    /// `n` as multiplicities.
    ByPoints { m: usize },
    /// i.i.d. complex Gaussian Dicke amplitudes.
    ByAmplitudes,
}

impl fmt::Display for SampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleMode::ByPoints { .. } => f.write_str("points"),
            SampleMode::ByAmplitudes => f.write_str("amp"),
        }
    }
}

/// splitmix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`: one splitmix64 step from
/// `master + (index + 1) * golden_gamma`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_point<R: Rng>(rng: &mut R) -> ProjectivePoint {
    loop {
        let (a, b) = (complex_gaussian(rng), complex_gaussian(rng));
        if let Ok(p) = canonicalize_point(a, b) {
            return p;
        }
    }
}

/// Uniform composition of `n` into `m` positive parts.
fn random_composition<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = index::sample(rng, n - 1, m - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let part = c - prev;
            prev = c;
            part
        })
        .collect()
}

pub fn sample_symmetric(n: usize, mode: SampleMode, seed: u64) -> Result<SymmetricState> {
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mode {
        SampleMode::ByAmplitudes => {
            let amps = (0..=n).map(|_| complex_gaussian(&mut rng)).collect();
            SymmetricState::new(amps)
        }
        SampleMode::ByPoints { m } => {
            if m == 0 || m > n {
                return Err(Error::precondition(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
            }
            let parts = random_composition(&mut rng, n, m);
            let points: Vec<ProjectivePoint> = parts
                .iter()
                .flat_map(|&k| std::iter::repeat_n(random_point(&mut rng), k))
                .collect();
            compose_points(&points)
        }
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub mode: SampleMode,
    pub trials: u64,
    pub trivial: u64,
    pub seed: u64,
    /// Every nontrivial verdict was checked on the dense vector.
    pub dense_verified: bool,
}

impl ReportRow {
    pub fn fraction(&self) -> f64 {
        self.trivial as f64 / self.trials as f64
    }

    pub fn csv_line(&self) -> String {
        let mode = if self.dense_verified {
            self.mode.to_string()
        } else {
            format!("{}:unverified-dense", self.mode)
        };
        let m = match self.mode {
            SampleMode::ByPoints { m } => m.to_string(),
            SampleMode::ByAmplitudes => "-".to_string(),
        };
        format!(
            "{},{},{},{},{},{:.6},{}",
            self.n,
            mode,
            m,
            self.trials,
            self.trivial,
            self.fraction(),
            self.seed
        )
    }
}

pub fn write_csv<W: Write>(mut out: W, rows: &[ReportRow]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_line())?;
    }
    Ok(())
}

pub fn trivial_fraction(n: usize, mode: SampleMode, trials: u64, master_seed: u64) -> Result<ReportRow> {
    trivial_fraction_with(n, mode, trials, master_seed, Schedule::default())
}

pub fn trivial_fraction_with(
    n: usize,
    mode: SampleMode,
    trials: u64,
    master_seed: u64,
    schedule: Schedule,
) -> Result<ReportRow> {
    if trials == 0 {
        return Err(Error::precondition("trials must be at least 1"));
    }
    // validate parameters once so a bad m is not reported per trial
    sample_symmetric(n, mode, master_seed)?;
    let tol = Tolerances::default();
    let verdicts = par::map_indexed(schedule, trials, |i| {
        let state = sample_symmetric(n, mode, trial_seed(master_seed, i))?;
        decide_stabilizer_with(&state, &tol, Schedule::Sequential).map(|v| v.trivial)
    });
    let mut trivial = 0;
    for v in verdicts {
        trivial += u64::from(v?);
    }
    Ok(ReportRow {
        n,
        mode,
        trials,
        trivial,
        seed: master_seed,
        dense_verified: n <= DENSE_LIMIT,
    })
}
