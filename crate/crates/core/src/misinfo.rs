//! Misinformation games: each player acts on a private view of the payoffs
//! while being paid by the actual game.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{welfare_ratio, Bimatrix2x2, Matrix2, NeClass, Player, Pure, Strategy, StrategyProfile};
use crate::prob::{epsilon_window, in_window, Window};

/// Absolute slack used when judging an nme best or worst by welfare.
pub const WELFARE_SLACK: f64 = 1e-9;

/// `⟨G⁰, Gʳ, Gᶜ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MisinformationGame {
    pub actual: Bimatrix2x2,
    pub view_r: Bimatrix2x2,
    pub view_c: Bimatrix2x2,
}

impl MisinformationGame {
    pub fn new(actual: Bimatrix2x2, view_r: Bimatrix2x2, view_c: Bimatrix2x2) -> Self {
        MisinformationGame { actual, view_r, view_c }
    }

    /// Every player sees the actual game.
    pub fn truthful(actual: Bimatrix2x2) -> Self {
        MisinformationGame::new(actual, actual, actual)
    }

    pub fn view(&self, x: Player) -> &Bimatrix2x2 {
        match x {
            Player::Row => &self.view_r,
            Player::Col => &self.view_c,
        }
    }

    fn view_class(&self, x: Player) -> Result<NeClass> {
        let v = self.view(x);
        if v.is_degenerate() {
            return Err(Error::Degenerate(format!("view game of player {x} is degenerate")));
        }
        v.classify_player(x)
    }
}

/// Gaussian noise law for one viewer: per-entry means and standard
/// deviations for both payoff matrices of that viewer's game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseLaw {
    #[serde(default)]
    pub mean_r: Matrix2,
    #[serde(default)]
    pub mean_c: Matrix2,
    pub std_r: Matrix2,
    pub std_c: Matrix2,
}

impl NoiseLaw {
    pub fn zero() -> Self {
        NoiseLaw {
            mean_r: [[0.0; 2]; 2],
            mean_c: [[0.0; 2]; 2],
            std_r: [[0.0; 2]; 2],
            std_c: [[0.0; 2]; 2],
        }
    }

    /// Zero mean, standard deviation `d` on every entry.
    pub fn isotropic(d: f64) -> Self {
        NoiseLaw { std_r: [[d; 2]; 2], std_c: [[d; 2]; 2], ..NoiseLaw::zero() }
    }

    pub fn mean(&self, x: Player) -> &Matrix2 {
        match x {
            Player::Row => &self.mean_r,
            Player::Col => &self.mean_c,
        }
    }

    pub fn std(&self, x: Player) -> &Matrix2 {
        match x {
            Player::Row => &self.std_r,
            Player::Col => &self.std_c,
        }
    }

    pub fn mean_bimatrix(&self) -> Bimatrix2x2 {
        Bimatrix2x2 { payoff_r: self.mean_r, payoff_c: self.mean_c }
    }

    pub fn validate(&self) -> Result<()> {
        for m in [&self.mean_r, &self.mean_c] {
            if m.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::InvalidNoise("means must be finite".into()));
            }
        }
        for m in [&self.std_r, &self.std_c] {
            if m.iter().flatten().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::InvalidNoise("standard deviations must be finite and >= 0".into()));
            }
        }
        Ok(())
    }

    fn scale_std(&self, d: f64) -> NoiseLaw {
        let s = |m: &Matrix2| [[m[0][0] * d, m[0][1] * d], [m[1][0] * d, m[1][1] * d]];
        NoiseLaw { std_r: s(&self.std_r), std_c: s(&self.std_c), ..*self }
    }
}

/// Noise for a noisy game: one law per viewer, drawn independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub view_r: NoiseLaw,
    pub view_c: NoiseLaw,
}

impl NoiseSpec {
    /// Both viewers receive noise with the same law.
    pub fn shared(law: NoiseLaw) -> Self {
        NoiseSpec { view_r: law, view_c: law }
    }

    pub fn zero() -> Self {
        NoiseSpec::shared(NoiseLaw::zero())
    }

    /// Zero mean, standard deviation `d` on every entry of every view.
    pub fn isotropic(d: f64) -> Self {
        NoiseSpec::shared(NoiseLaw::isotropic(d))
    }

    pub fn law(&self, viewer: Player) -> &NoiseLaw {
        match viewer {
            Player::Row => &self.view_r,
            Player::Col => &self.view_c,
        }
    }

    pub fn law_mut(&mut self, viewer: Player) -> &mut NoiseLaw {
        match viewer {
            Player::Row => &mut self.view_r,
            Player::Col => &mut self.view_c,
        }
    }

    /// Multiplies every standard deviation by `d`, leaving means alone.
    pub fn with_std_scaled(&self, d: f64) -> NoiseSpec {
        NoiseSpec { view_r: self.view_r.scale_std(d), view_c: self.view_c.scale_std(d) }
    }

    pub fn validate(&self) -> Result<()> {
        self.view_r.validate()?;
        self.view_c.validate()
    }
}

/// A closeness tolerance `ε >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Tolerance {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Tolerance::new(v)
    }
}

impl From<Tolerance> for f64 {
    fn from(t: Tolerance) -> f64 {
        t.0
    }
}

/// Same support and `|p - p'| <= ε`.
pub fn epsilon_close(a: Strategy, b: Strategy, eps: Tolerance) -> bool {
    a.support() == b.support() && (a.p() - b.p()).abs() <= eps.value()
}

pub fn profiles_close(a: &StrategyProfile, b: &StrategyProfile, eps: Tolerance) -> bool {
    epsilon_close(a.row, b.row, eps) && epsilon_close(a.col, b.col, eps)
}

/// `NE_r(Gʳ) × NE_c(Gᶜ)`.
pub fn natural_misinformed_equilibria(mg: &MisinformationGame) -> Result<Vec<StrategyProfile>> {
    let rows = mg.view_class(Player::Row)?.strategies().expect("finite");
    let cols = mg.view_class(Player::Col)?.strategies().expect("finite");
    Ok(rows
        .iter()
        .flat_map(|&r| cols.iter().map(move |&c| StrategyProfile::new(r, c)))
        .collect())
}

/// Per-player window implied by the actual game's class, if it has one.
fn class_window(class: NeClass, eps: Tolerance) -> Option<Window> {
    match class {
        NeClass::OnlyMixed(p0) | NeClass::PureAndMixed(p0) => Some(epsilon_window(p0, eps)),
        NeClass::InfiniteNash => Some(in_window(eps)),
        NeClass::OnlyPure(_) => None,
    }
}

fn mixed_in(view: NeClass, w: Window) -> bool {
    matches!(view, NeClass::OnlyMixed(p) if w.contains(p))
}

fn pm_in(view: NeClass, w: Window) -> bool {
    matches!(view, NeClass::PureAndMixed(p) if w.contains(p))
}

struct Classes {
    actual: [NeClass; 2],
    view: [NeClass; 2],
}

fn classes(mg: &MisinformationGame) -> Result<Classes> {
    let view = [mg.view_class(Player::Row)?, mg.view_class(Player::Col)?];
    let actual = [
        mg.actual.classify_player(Player::Row)?,
        mg.actual.classify_player(Player::Col)?,
    ];
    Ok(Classes { actual, view })
}

/// Every nme is ε-close to some equilibrium of the actual game.
///
/// Evaluated structurally from the equilibrium classes. When the actual game
/// has two pure equilibria and a mixed one, its equilibrium set is not a
/// product of per-player sets, so the condition there is joint: both views
/// single out the same pure equilibrium, or both are only-mixed inside their
/// windows.
pub fn is_epsilon_misinformed(mg: &MisinformationGame, eps: Tolerance) -> Result<bool> {
    let cls = classes(mg)?;
    if let [NeClass::PureAndMixed(_), NeClass::PureAndMixed(_)] = cls.actual {
        let w = [class_window(cls.actual[0], eps).unwrap(), class_window(cls.actual[1], eps).unwrap()];
        if mixed_in(cls.view[0], w[0]) && mixed_in(cls.view[1], w[1]) {
            return Ok(true);
        }
        let (NeClass::OnlyPure(i), NeClass::OnlyPure(j)) = (cls.view[0], cls.view[1]) else {
            return Ok(false);
        };
        return Ok(pure_equilibrium_pairs(&mg.actual)?.contains(&(i, j)));
    }
    Ok(Player::BOTH.iter().enumerate().all(|(k, _)| {
        let (actual, view) = (cls.actual[k], cls.view[k]);
        match actual {
            NeClass::OnlyPure(i) => view == NeClass::OnlyPure(i),
            NeClass::OnlyMixed(_) => mixed_in(view, class_window(actual, eps).unwrap()),
            NeClass::InfiniteNash => true,
            NeClass::PureAndMixed(_) => unreachable!("handled jointly"),
        }
    }))
}

/// Every equilibrium of the actual game has an ε-close nme.
pub fn is_inverse_epsilon_misinformed(mg: &MisinformationGame, eps: Tolerance) -> Result<bool> {
    let cls = classes(mg)?;
    Ok((0..2).all(|k| {
        let (actual, view) = (cls.actual[k], cls.view[k]);
        match actual {
            NeClass::OnlyPure(i) => {
                view == NeClass::OnlyPure(i) || matches!(view, NeClass::PureAndMixed(_))
            }
            NeClass::OnlyMixed(_) => {
                let w = class_window(actual, eps).unwrap();
                mixed_in(view, w) || pm_in(view, w)
            }
            NeClass::PureAndMixed(_) => pm_in(view, class_window(actual, eps).unwrap()),
            NeClass::InfiniteNash => {
                eps.value() > 0.5 && pm_in(view, class_window(actual, eps).unwrap())
            }
        }
    }))
}

fn pure_equilibrium_pairs(g: &Bimatrix2x2) -> Result<Vec<(Pure, Pure)>> {
    let pure_of = |s: Strategy| match s.p() {
        1.0 => Some(Pure::S1),
        0.0 => Some(Pure::S2),
        _ => None,
    };
    Ok(g.enumerate_nash()?
        .into_iter()
        .filter_map(|s| Some((pure_of(s.row)?, pure_of(s.col)?)))
        .collect())
}

/// Both predicates evaluated by brute force over the nme set and the
/// equilibrium set of the actual game, with closed ε-closeness. Needs a
/// non-degenerate actual game.
pub fn check_by_definition(mg: &MisinformationGame, eps: Tolerance) -> Result<(bool, bool)> {
    let nme = natural_misinformed_equilibria(mg)?;
    let ne = mg.actual.enumerate_nash()?;
    let mis = nme.iter().all(|s| ne.iter().any(|n| profiles_close(s, n, eps)));
    let inv = ne.iter().all(|n| nme.iter().any(|s| profiles_close(s, n, eps)));
    Ok((mis, inv))
}

/// Optimal welfare of the actual game over the worst nme welfare, both
/// measured with actual payoffs.
pub fn price_of_misinformation(mg: &MisinformationGame) -> Result<f64> {
    let (_, opt) = mg.actual.optimal_welfare();
    let worst = natural_misinformed_equilibria(mg)?
        .iter()
        .map(|s| mg.actual.social_welfare(s))
        .fold(f64::INFINITY, f64::min);
    welfare_ratio(opt, worst).ok_or(Error::UndefinedRatio("PoM"))
}

/// Whether some nme reaches the optimal welfare, and whether some nme sinks
/// to the minimum welfare, judged by value within [`WELFARE_SLACK`].
pub fn best_worst_nme(mg: &MisinformationGame) -> Result<(bool, bool)> {
    let (_, opt) = mg.actual.optimal_welfare();
    let floor = mg.actual.min_vertex_welfare();
    let welfare: Vec<f64> = natural_misinformed_equilibria(mg)?
        .iter()
        .map(|s| mg.actual.social_welfare(s))
        .collect();
    let best = welfare.iter().any(|&w| w >= opt - WELFARE_SLACK);
    let worst = welfare.iter().any(|&w| w <= floor + WELFARE_SLACK);
    Ok((best, worst))
}

/// `(n+1)×(n+1)` grid of `SW(opt) / SW(σ)` at `σ = ((a/n, ·), (b/n, ·))`.
/// Cells with zero welfare are `None`.
pub fn welfare_ratio_plane(g: &Bimatrix2x2, n: usize) -> Result<Vec<Vec<Option<f64>>>> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("plane resolution must be >= 2, got {n}")));
    }
    let (_, opt) = g.optimal_welfare();
    let at = |k: usize| Strategy::new(k as f64 / n as f64).expect("in [0,1]");
    Ok((0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| welfare_ratio(opt, g.social_welfare(&StrategyProfile::new(at(a), at(b)))))
                .collect()
        })
        .collect())
}
