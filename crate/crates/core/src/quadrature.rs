//! Globally adaptive 7/15-point Gauss–Kronrod quadrature on finite intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable that overrides [`QuadratureConfig::abs_tol`].
pub const ABS_TOL_ENV: &str = "MISGAME_QUAD_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    /// Half-width of the integration range, in standard deviations.
    pub truncation_sigmas: f64,
    pub max_subdivisions: usize,
    /// Equal pieces the range is cut into before adaptive refinement, so a
    /// narrow peak cannot slip between the first set of nodes.
    pub initial_segments: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            truncation_sigmas: 12.0,
            max_subdivisions: 1_000_000,
            initial_segments: 24,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("abs_tol must be > 0, got {}", self.abs_tol)));
        }
        if !(self.truncation_sigmas >= 8.0 && self.truncation_sigmas.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "truncation_sigmas must be >= 8, got {}",
                self.truncation_sigmas
            )));
        }
        if self.max_subdivisions == 0 || self.initial_segments == 0 {
            return Err(Error::InvalidConfig("max_subdivisions and initial_segments must be >= 1".into()));
        }
        Ok(())
    }

    /// Defaults, with `abs_tol` taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = QuadratureConfig::default();
        if let Ok(v) = std::env::var(ABS_TOL_ENV) {
            cfg.abs_tol = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("{ABS_TOL_ENV}={v} is not a number")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Roundoff level of `error`; bisecting below it cannot help.
    floor: f64,
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (l, r) = (f(center - dx), f(center + dx));
        let pair = l + r;
        kronrod += WGK[j] * pair;
        abs += WGK[j] * (l.abs() + r.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        floor: 50.0 * f64::EPSILON * abs * half.abs(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub segments: usize,
}

/// Integrates `f` over `[a, b]`, starting from `initial` equal pieces and
/// bisecting the worst segment until the summed error estimate drops below
/// `abs_tol` or every remaining error is at roundoff level.
pub fn integrate(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    initial: usize,
    max_subdivisions: usize,
) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidConfig(format!("integration bounds must be finite: [{a}, {b}]")));
    }
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0, segments: 0 });
    }
    let n = initial.max(1);
    let at = |k: usize| if k == n { b } else { a + (b - a) * k as f64 / n as f64 };
    let mut segments: Vec<Segment> = (0..n).map(|k| gk15(&mut f, at(k), at(k + 1))).collect();
    loop {
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= abs_tol || segments.len() >= max_subdivisions {
            let value = segments.iter().map(|s| s.value).sum();
            return Ok(Integral { value, error, segments: segments.len() });
        }
        let worst = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.error > s.floor)
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(k, _)| k);
        let Some(worst) = worst else {
            let value = segments.iter().map(|s| s.value).sum();
            return Ok(Integral { value, error, segments: segments.len() });
        };
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // cannot split further in floating point
            let value = segments.iter().map(|s| s.value).sum::<f64>() + s.value;
            return Ok(Integral { value, error, segments: segments.len() + 1 });
        }
        segments.push(gk15(&mut f, s.a, mid));
        segments.push(gk15(&mut f, mid, s.b));
    }
}
