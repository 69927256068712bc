//! Closed-form probabilities that a noisy game keeps players' equilibrium
//! behaviour within tolerance.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Bimatrix2x2, NeClass, Player, Pure};
use crate::misinfo::{NoiseSpec, Tolerance};
use crate::normal::{std_normal_cdf, std_normal_pdf, NormalDist};
use crate::quadrature::{integrate, QuadratureConfig};

/// Literal mode drops `|y| < LITERAL_EXCLUSION` from the outer integral.
pub const LITERAL_EXCLUSION: f64 = 1e-8;

/// Crossings are refined until their bracket is at most this wide.
pub const CROSSING_WIDTH: f64 = 1e-4;

/// Reduction used for the ratio integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioForm {
    /// `∫ (F_X(Ω₂y) − F_X(Ω₁y)) f_Y(y) dy`.
    #[default]
    Corrected,
    /// Same integrand with an extra `1/|y|`.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ProbConfig {
    pub quad: QuadratureConfig,
    pub mode: RatioForm,
}

impl ProbConfig {
    pub fn from_env(mode: RatioForm) -> Result<Self> {
        Ok(ProbConfig { quad: QuadratureConfig::from_env()?, mode })
    }
}

/// Probability window `(lo, hi)` on a mixed strategy. Membership is open.
/// `lo >= hi` is empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
            return Err(Error::InvalidWindow(lo, hi));
        }
        Ok(Window { lo, hi })
    }

    pub const FULL: Window = Window { lo: 0.0, hi: 1.0 };

    pub fn contains(&self, p: f64) -> bool {
        self.lo < p && p < self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }
}

/// `(max(0, p⁰−ε), min(1, p⁰+ε))`.
pub fn epsilon_window(p0: f64, eps: Tolerance) -> Window {
    let e = eps.value();
    Window { lo: (p0 - e).max(0.0), hi: (p0 + e).min(1.0) }
}

/// `(max(0, 1−ε), min(1, ε))`, empty for `ε <= 0.5`.
pub fn in_window(eps: Tolerance) -> Window {
    let e = eps.value();
    Window { lo: (1.0 - e).max(0.0), hi: e.min(1.0) }
}

/// `Ω = (ω−1)/ω`, with `0 ↦ −∞`.
pub fn omega(w: f64) -> f64 {
    if w == 0.0 {
        f64::NEG_INFINITY
    } else {
        (w - 1.0) / w
    }
}

/// Law of a utility gain of `subject` as perceived by `viewer`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UGainDist {
    pub viewer: Player,
    pub subject: Player,
    pub opponent_pure: Pure,
    pub dist: NormalDist,
}

pub fn ugain_distribution(
    g0: &Bimatrix2x2,
    spec: &NoiseSpec,
    viewer: Player,
    subject: Player,
    i: Pure,
) -> UGainDist {
    let law = spec.law(viewer);
    let p = g0.matrix(subject);
    let m = law.mean(subject);
    let d = law.std(subject);
    let k = i.idx();
    // entries compared: s1 vs s2 of the subject against opponent pure i
    let (a, b) = match subject {
        Player::Row => ((0, k), (1, k)),
        Player::Col => ((k, 0), (k, 1)),
    };
    let at = |m: &[[f64; 2]; 2], (r, c): (usize, usize)| m[r][c];
    let mu = (at(p, a) + at(m, a)) - (at(p, b) + at(m, b));
    let sd = at(d, a).hypot(at(d, b));
    UGainDist { viewer, subject, opponent_pure: i, dist: NormalDist { mu, sd } }
}

/// `P[lo <= X <= hi]` from whichever tail keeps precision.
fn interval_prob(x: &NormalDist, lo: f64, hi: f64) -> f64 {
    if !(lo < hi) {
        return 0.0;
    }
    if x.is_point_mass() {
        return if lo <= x.mu && x.mu <= hi { 1.0 } else { 0.0 };
    }
    let zl = (lo - x.mu) / x.sd;
    let zh = (hi - x.mu) / x.sd;
    if zl > 0.0 {
        (std_normal_cdf(-zl) - std_normal_cdf(-zh)).max(0.0)
    } else {
        (std_normal_cdf(zh) - std_normal_cdf(zl)).max(0.0)
    }
}

/// X-interval `{x : Ω₁ ≤ x/y ≤ Ω₂}` for a fixed `y` of the given sign.
fn x_band(y: f64, lower: f64, upper: f64, sign: YSign) -> (f64, f64) {
    let scaled = |w: f64| if w == f64::NEG_INFINITY { w * y.signum() } else { w * y };
    match sign {
        YSign::Positive => (scaled(lower), upper * y),
        YSign::Negative => (upper * y, scaled(lower)),
    }
}

fn sign_ok(y: f64, sign: YSign) -> bool {
    match sign {
        YSign::Positive => y > 0.0,
        YSign::Negative => y < 0.0,
    }
}

/// Y-interval of the band when X is a point mass at `c`.
fn y_band(c: f64, lower: f64, upper: f64, sign: YSign) -> Option<(f64, f64)> {
    let div = |w: f64, inf_if_zero: f64| {
        if w == f64::NEG_INFINITY {
            0.0
        } else if w == 0.0 {
            inf_if_zero
        } else {
            c / w
        }
    };
    match sign {
        YSign::Positive if c < 0.0 => Some((div(lower, 0.0), div(upper, f64::INFINITY))),
        YSign::Negative if c > 0.0 => Some((div(upper, f64::NEG_INFINITY), div(lower, 0.0))),
        YSign::Positive if c == 0.0 && upper == 0.0 => Some((0.0, f64::INFINITY)),
        YSign::Negative if c == 0.0 && upper == 0.0 => Some((f64::NEG_INFINITY, 0.0)),
        _ => None,
    }
}

/// `P[Ω₁ ≤ X/Y ≤ Ω₂, sign(Y) = sign]` for independent Gaussians `X`, `Y`.
pub fn ratio_region_integral(
    x: &NormalDist,
    y: &NormalDist,
    lower: f64,
    upper: f64,
    sign: YSign,
    mode: RatioForm,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if lower.is_nan() || upper.is_nan() || lower > upper || upper > 0.0 || lower == f64::INFINITY {
        return Err(Error::InvalidRatioBounds { lower, upper });
    }
    if lower == upper {
        return Ok(0.0);
    }
    let literal = mode == RatioForm::Literal;
    let cut = if literal { LITERAL_EXCLUSION } else { 0.0 };

    if y.is_point_mass() {
        let v = y.mu;
        if !sign_ok(v, sign) || v.abs() < cut {
            return Ok(0.0);
        }
        let (lo, hi) = x_band(v, lower, upper, sign);
        let p = if x.is_point_mass() {
            if lo <= x.mu && x.mu <= hi { 1.0 } else { 0.0 }
        } else {
            interval_prob(x, lo, hi)
        };
        return Ok(if literal { p / v.abs() } else { p });
    }

    // outer integral over y itself, on the sign half-line: going through a
    // standardized variable loses y to cancellation next to 0, where the
    // literal form's 1/|y| magnifies it
    let reach = cfg.truncation_sigmas * y.sd;
    let (mut y_lo, mut y_hi) = match sign {
        YSign::Positive => ((y.mu - reach).max(cut), y.mu + reach),
        YSign::Negative => (y.mu - reach, (y.mu + reach).min(-cut)),
    };
    let pdf = |v: f64| std_normal_pdf((v - y.mu) / y.sd) / y.sd;

    if x.is_point_mass() {
        let Some((ya, yb)) = y_band(x.mu, lower, upper, sign) else {
            return Ok(0.0);
        };
        if !literal {
            return Ok(interval_prob(y, ya, yb));
        }
        y_lo = y_lo.max(ya);
        y_hi = y_hi.min(yb);
        if y_lo >= y_hi {
            return Ok(0.0);
        }
        let f = |v: f64| pdf(v) / v.abs();
        return Ok(integrate(f, y_lo, y_hi, cfg.abs_tol, cfg.initial_segments, cfg.max_subdivisions)?.value);
    }

    if y_lo >= y_hi {
        return Ok(0.0);
    }
    let f = |v: f64| {
        let (lo, hi) = x_band(v, lower, upper, sign);
        let p = interval_prob(x, lo, hi) * pdf(v);
        if literal {
            p / v.abs()
        } else {
            p
        }
    };
    // a band edge b·y sweeps through X's bulk over a y-width of about
    // sd_x/|b|, which is narrow when |b| is large; split there
    let mut cuts = vec![y_lo, y_hi];
    for b in [lower, upper] {
        if b.is_finite() && b != 0.0 {
            for k in [-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0] {
                let v = (x.mu + k * x.sd) / b;
                if v > y_lo && v < y_hi {
                    cuts.push(v);
                }
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let width = y_hi - y_lo;
    let tol = cfg.abs_tol / (cuts.len() - 1) as f64;
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let share = ((w[1] - w[0]) / width * cfg.initial_segments as f64).ceil().max(1.0) as usize;
        total += integrate(f, w[0], w[1], tol, share, cfg.max_subdivisions)?.value;
    }
    Ok(total)
}

/// Class probabilities of `NEₓ(Gˣ)` under noise, for one player.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassProbabilities {
    pub player: Player,
    /// Own gains against opponent s1, s2.
    pub own: [NormalDist; 2],
    /// Opponent gains against x's s1, s2, as x perceives them.
    pub opp: [NormalDist; 2],
    /// `P[U < 0]` for `own`.
    pub f_own: [f64; 2],
    /// `P[U < 0]` for `opp`.
    pub f_opp: [f64; 2],
    pub p_op1: f64,
    pub p_op2: f64,
}

pub fn class_probabilities(g0: &Bimatrix2x2, spec: &NoiseSpec, x: Player) -> Result<ClassProbabilities> {
    spec.validate()?;
    let gain = |subject: Player, i: Pure| -> Result<NormalDist> {
        let u = ugain_distribution(g0, spec, x, subject, i);
        if u.dist.sd == 0.0 && u.dist.mu == 0.0 {
            return Err(Error::DegenerateNoise(format!(
                "utility gain of player {subject} against s{} in the view of player {x} is exactly 0 with no noise",
                i.number()
            )));
        }
        Ok(u.dist)
    };
    let own = [gain(x, Pure::S1)?, gain(x, Pure::S2)?];
    let opp = [gain(x.opponent(), Pure::S1)?, gain(x.opponent(), Pure::S2)?];
    let [f1, f2] = own.map(|d| d.prob_negative());
    let [g1, g2] = opp.map(|d| d.prob_negative());
    let p_op1 = (1.0 - f1) * (1.0 - f2)
        + (1.0 - f1) * f2 * (1.0 - g1) * (1.0 - g2)
        + f1 * (1.0 - f2) * g1 * g2;
    let p_op2 = f1 * f2 + f1 * (1.0 - f2) * (1.0 - g1) * (1.0 - g2) + (1.0 - f1) * f2 * g1 * g2;
    Ok(ClassProbabilities {
        player: x,
        own,
        opp,
        f_own: [f1, f2],
        f_opp: [g1, g2],
        p_op1,
        p_op2,
    })
}

impl ClassProbabilities {
    /// `(I₊, I₋)` over the window: the ratio of opponent gains lands in
    /// `[Ω(ω₁), Ω(ω₂)]` with the second gain positive or negative.
    pub fn integrals(&self, w: Window, cfg: &ProbConfig) -> Result<(f64, f64)> {
        if w.is_empty() {
            return Ok((0.0, 0.0));
        }
        let (lo, hi) = (omega(w.lo), omega(w.hi));
        let [xd, yd] = &self.opp;
        let pos = ratio_region_integral(xd, yd, lo, hi, YSign::Positive, cfg.mode, &cfg.quad)?;
        let neg = ratio_region_integral(xd, yd, lo, hi, YSign::Negative, cfg.mode, &cfg.quad)?;
        Ok((pos, neg))
    }

    fn weights(&self) -> (f64, f64) {
        let [f1, f2] = self.f_own;
        ((1.0 - f1) * f2, f1 * (1.0 - f2))
    }

    pub fn p_rom(&self, w: Window, cfg: &ProbConfig) -> Result<f64> {
        let (pos, neg) = self.integrals(w, cfg)?;
        let (a, b) = self.weights();
        Ok(a * pos + b * neg)
    }

    pub fn p_rpm(&self, w: Window, cfg: &ProbConfig) -> Result<f64> {
        let (pos, neg) = self.integrals(w, cfg)?;
        let (a, b) = self.weights();
        Ok(a * neg + b * pos)
    }

    pub fn p_op(&self, i: Pure) -> f64 {
        match i {
            Pure::S1 => self.p_op1,
            Pure::S2 => self.p_op2,
        }
    }
}

/// Per-player part of a [`ConsistencyReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlayerConsistency {
    pub player: Player,
    pub actual_class: NeClass,
    /// Window the mixed components are measured over; the full `(0, 1)` for
    /// only-pure classes.
    pub window: Window,
    pub f_own: [f64; 2],
    pub f_opp: [f64; 2],
    pub p_op1: f64,
    pub p_op2: f64,
    pub integral_pos: f64,
    pub integral_neg: f64,
    pub p_rom: f64,
    pub p_rpm: f64,
    pub factor_mis: f64,
    pub factor_inv: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub epsilon: f64,
    pub ratio_form: RatioForm,
    /// Probability that the noisy game is ε-misinformed.
    pub p_mis: f64,
    /// Product of the per-player misinformed factors. Equals `p_mis` except
    /// when both players of the actual game have pure and mixed equilibria.
    pub p_mis_factorized: f64,
    pub p_inv: f64,
    pub row: PlayerConsistency,
    pub col: PlayerConsistency,
}

impl ConsistencyReport {
    pub fn player(&self, x: Player) -> &PlayerConsistency {
        match x {
            Player::Row => &self.row,
            Player::Col => &self.col,
        }
    }
}

fn player_consistency(
    g0: &Bimatrix2x2,
    spec: &NoiseSpec,
    eps: Tolerance,
    x: Player,
    cfg: &ProbConfig,
) -> Result<(PlayerConsistency, ClassProbabilities)> {
    let actual_class = g0.classify_player(x)?;
    let cp = class_probabilities(g0, spec, x)?;
    let window = match actual_class {
        NeClass::OnlyPure(_) => Window::FULL,
        NeClass::OnlyMixed(p0) | NeClass::PureAndMixed(p0) => epsilon_window(p0, eps),
        NeClass::InfiniteNash => in_window(eps),
    };
    let (pos, neg) = cp.integrals(window, cfg)?;
    let (a, b) = cp.weights();
    let (p_rom, p_rpm) = (a * pos + b * neg, a * neg + b * pos);
    let (factor_mis, factor_inv) = match actual_class {
        NeClass::OnlyPure(i) => (cp.p_op(i), cp.p_op(i) + p_rpm),
        NeClass::OnlyMixed(_) => (p_rom, p_rom + p_rpm),
        NeClass::PureAndMixed(_) => (p_rpm + p_rom + cp.p_op1 + cp.p_op2, p_rpm),
        NeClass::InfiniteNash => (1.0, if eps.value() <= 0.5 { 0.0 } else { p_rpm }),
    };
    let pc = PlayerConsistency {
        player: x,
        actual_class,
        window,
        f_own: cp.f_own,
        f_opp: cp.f_opp,
        p_op1: cp.p_op1,
        p_op2: cp.p_op2,
        integral_pos: pos,
        integral_neg: neg,
        p_rom,
        p_rpm,
        factor_mis,
        factor_inv,
    };
    Ok((pc, cp))
}

/// Probabilities that the noisy game is ε-misinformed and inverse
/// ε-misinformed.
pub fn consistency_probabilities(
    g0: &Bimatrix2x2,
    spec: &NoiseSpec,
    eps: Tolerance,
    cfg: &ProbConfig,
) -> Result<ConsistencyReport> {
    spec.validate()?;
    if g0.is_degenerate() {
        // unclassifiable degenerate games error here
        for x in Player::BOTH {
            g0.classify_player(x)?;
        }
    }
    let (row, cp_r) = player_consistency(g0, spec, eps, Player::Row, cfg)?;
    let (col, cp_c) = player_consistency(g0, spec, eps, Player::Col, cfg)?;
    let p_mis_factorized = row.factor_mis * col.factor_mis;
    let p_mis = match (row.actual_class, col.actual_class) {
        (NeClass::PureAndMixed(_), NeClass::PureAndMixed(_)) => {
            // NE set is {pure pairs} ∪ {mixed}: views must agree on one pure
            // pair, or both be only-mixed within their windows
            let pure_pairs: f64 = g0
                .enumerate_nash()?
                .iter()
                .filter(|s| s.row.is_pure() && s.col.is_pure())
                .map(|s| {
                    let i = if s.row.p() == 1.0 { Pure::S1 } else { Pure::S2 };
                    let j = if s.col.p() == 1.0 { Pure::S1 } else { Pure::S2 };
                    cp_r.p_op(i) * cp_c.p_op(j)
                })
                .sum();
            pure_pairs + row.p_rom * col.p_rom
        }
        _ => p_mis_factorized,
    };
    Ok(ConsistencyReport {
        epsilon: eps.value(),
        ratio_form: cfg.mode,
        p_mis,
        p_mis_factorized,
        p_inv: row.factor_inv * col.factor_inv,
        row,
        col,
    })
}

/// A bracket `[lo, hi]` containing a crossing of the target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub lo: f64,
    pub hi: f64,
}

impl Crossing {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Every `d` in the grid range where `p_mis(d·shape)` crosses `target`.
pub fn noise_threshold_scan(
    g0: &Bimatrix2x2,
    shape: &NoiseSpec,
    eps: Tolerance,
    target: f64,
    grid: &[f64],
    cfg: &ProbConfig,
) -> Result<Vec<Crossing>> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("empty d grid".into()));
    }
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidProbability(target));
    }
    if grid[0] <= 0.0 || grid.windows(2).any(|w| !(w[0] < w[1])) || grid.iter().any(|d| !d.is_finite()) {
        return Err(Error::InvalidConfig("d grid must be positive and strictly increasing".into()));
    }
    let f = |d: f64| -> Result<f64> {
        Ok(consistency_probabilities(g0, &shape.with_std_scaled(d), eps, cfg)?.p_mis - target)
    };
    let values: Vec<f64> = grid.par_iter().map(|&d| f(d)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for k in 0..grid.len() {
        if values[k] == 0.0 {
            out.push(Crossing { lo: grid[k], hi: grid[k] });
            continue;
        }
        if k + 1 == grid.len() || values[k + 1] == 0.0 || (values[k] > 0.0) == (values[k + 1] > 0.0) {
            continue;
        }
        let (mut lo, mut hi, mut f_lo) = (grid[k], grid[k + 1], values[k]);
        while hi - lo > CROSSING_WIDTH {
            let mid = 0.5 * (lo + hi);
            let fm = f(mid)?;
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if (fm > 0.0) == (f_lo > 0.0) {
                lo = mid;
                f_lo = fm;
            } else {
                hi = mid;
            }
        }
        out.push(Crossing { lo, hi });
    }
    Ok(out)
}
