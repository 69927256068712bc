//! Seeded sampling of noisy games.
//!
//! Streams come from ChaCha8 seeded with a 64-bit integer; Gaussian draws use
//! `rand_distr::StandardNormal`. Sweep rows use `seed ^ row_index` so the
//! output does not depend on how rows are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Bimatrix2x2, Matrix2, Player};
use crate::misinfo::{
    best_worst_nme, check_by_definition, is_epsilon_misinformed, is_inverse_epsilon_misinformed, MisinformationGame,
    NoiseLaw, NoiseSpec, Tolerance,
};
use crate::prob::{consistency_probabilities, ProbConfig};

/// Upper bound on consecutive degenerate draws before giving up.
const MAX_RESAMPLES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub reps: u64,
    pub seed: u64,
    pub resample_degenerate: bool,
    pub degeneracy_tol: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { reps: 3000, seed: 0, resample_degenerate: true, degeneracy_tol: 1e-12 }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidConfig("reps must be >= 1".into()));
        }
        if !(self.degeneracy_tol >= 0.0) {
            return Err(Error::InvalidConfig("degeneracy_tol must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub reps: u64,
    pub freq_mis: f64,
    pub freq_inv: f64,
    pub freq_best: f64,
    pub freq_worst: f64,
    pub se_mis: f64,
    pub se_inv: f64,
    pub se_best: f64,
    pub se_worst: f64,
    pub degenerate_resamples: u64,
}

/// Binomial standard error `√(p̂(1−p̂)/n)`.
pub fn binomial_se(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn perturb<R: Rng + ?Sized>(base: &Matrix2, mean: &Matrix2, std: &Matrix2, rng: &mut R) -> Matrix2 {
    let mut out = *base;
    for i in 0..2 {
        for j in 0..2 {
            let z: f64 = rng.sample(StandardNormal);
            out[i][j] += mean[i][j] + std[i][j] * z;
        }
    }
    out
}

fn sample_view<R: Rng + ?Sized>(g0: &Bimatrix2x2, law: &NoiseLaw, rng: &mut R) -> Bimatrix2x2 {
    Bimatrix2x2 {
        payoff_r: perturb(&g0.payoff_r, &law.mean_r, &law.std_r, rng),
        payoff_c: perturb(&g0.payoff_c, &law.mean_c, &law.std_c, rng),
    }
}

/// `⟨G⁰, G⁰+Δʳ, G⁰+Δᶜ⟩`. Draws eight normals for the row view, then eight
/// for the column view, in row-major order.
pub fn sample_noisy_game<R: Rng + ?Sized>(g0: &Bimatrix2x2, spec: &NoiseSpec, rng: &mut R) -> MisinformationGame {
    let view_r = sample_view(g0, &spec.view_r, rng);
    let view_c = sample_view(g0, &spec.view_c, rng);
    MisinformationGame::new(*g0, view_r, view_c)
}

fn near_degenerate(g: &Bimatrix2x2, tol: f64) -> bool {
    Player::BOTH.iter().flat_map(|&x| g.gains(x)).any(|u| u.abs() < tol)
}

/// Frequencies over `cfg.reps` sampled games, evaluated against the
/// definitions directly.
pub fn estimate(g0: &Bimatrix2x2, spec: &NoiseSpec, eps: Tolerance, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let direct = !g0.is_degenerate();
    let (mut mis, mut inv, mut best, mut worst, mut resamples) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for _ in 0..cfg.reps {
        let mut tries = 0;
        let mg = loop {
            let mg = sample_noisy_game(g0, spec, &mut rng);
            if !near_degenerate(&mg.view_r, cfg.degeneracy_tol) && !near_degenerate(&mg.view_c, cfg.degeneracy_tol) {
                break mg;
            }
            if !cfg.resample_degenerate {
                return Err(Error::DegenerateSample);
            }
            resamples += 1;
            tries += 1;
            if tries >= MAX_RESAMPLES {
                return Err(Error::DegenerateNoise(
                    "every sampled view is degenerate; add noise to the offending entries".into(),
                ));
            }
        };
        let (m, i) = if direct {
            check_by_definition(&mg, eps)?
        } else {
            (is_epsilon_misinformed(&mg, eps)?, is_inverse_epsilon_misinformed(&mg, eps)?)
        };
        let (b, w) = best_worst_nme(&mg)?;
        mis += m as u64;
        inv += i as u64;
        best += b as u64;
        worst += w as u64;
    }
    let n = cfg.reps;
    let f = |k: u64| k as f64 / n as f64;
    Ok(McEstimate {
        reps: n,
        freq_mis: f(mis),
        freq_inv: f(inv),
        freq_best: f(best),
        freq_worst: f(worst),
        se_mis: binomial_se(f(mis), n),
        se_inv: binomial_se(f(inv), n),
        se_best: binomial_se(f(best), n),
        se_worst: binomial_se(f(worst), n),
        degenerate_resamples: resamples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Theory,
    Mc,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: f64,
    pub p_mis_theory: Option<f64>,
    pub p_inv_theory: Option<f64>,
    pub mc: Option<McEstimate>,
}

/// One row per `d`, noise `d·shape`.
pub fn sweep(
    g0: &Bimatrix2x2,
    shape: &NoiseSpec,
    eps: Tolerance,
    d_values: &[f64],
    mc: &McConfig,
    prob: &ProbConfig,
    mode: SweepMode,
) -> Result<Vec<SweepRow>> {
    if let Some(d) = d_values.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(Error::InvalidConfig(format!("d values must be positive, got {d}")));
    }
    d_values
        .par_iter()
        .enumerate()
        .map(|(k, &d)| {
            let spec = shape.with_std_scaled(d);
            let mut row = SweepRow { d, p_mis_theory: None, p_inv_theory: None, mc: None };
            if mode != SweepMode::Mc {
                let r = consistency_probabilities(g0, &spec, eps, prob)?;
                row.p_mis_theory = Some(r.p_mis);
                row.p_inv_theory = Some(r.p_inv);
            }
            if mode != SweepMode::Theory {
                let cfg = McConfig { seed: mc.seed ^ k as u64, ..*mc };
                row.mc = Some(estimate(g0, &spec, eps, &cfg)?);
            }
            Ok(row)
        })
        .collect()
}
