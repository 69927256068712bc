//! 2×2 bimatrix games, their utility gains and equilibrium structure.
//!
//! Every equilibrium question about a 2×2 game reduces to the signs of four
//! utility gains: the advantage of `s1` over `s2` for each player against each
//! pure strategy of the opponent. Classification, pairing of pure equilibria
//! and the mixed-equilibrium value are all read off those four numbers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major 2×2 matrix, `m[i][j]` with `i` the row player's strategy.
pub type Matrix2 = [[f64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "r")]
    Row,
    #[serde(rename = "c")]
    Col,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::Row, Player::Col];

    pub fn opponent(self) -> Player {
        match self {
            Player::Row => Player::Col,
            Player::Col => Player::Row,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Row => "r",
            Player::Col => "c",
        })
    }
}

/// One of the two pure strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pure {
    S1,
    S2,
}

impl Pure {
    pub const BOTH: [Pure; 2] = [Pure::S1, Pure::S2];

    /// Zero-based matrix index.
    pub fn idx(self) -> usize {
        match self {
            Pure::S1 => 0,
            Pure::S2 => 1,
        }
    }

    /// One-based label, as used in `OnlyPure(1)`.
    pub fn number(self) -> u8 {
        self.idx() as u8 + 1
    }
}

impl fmt::Display for Pure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.number())
    }
}

/// A mixed strategy `(p, 1 - p)`, stored as the probability of `s1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Strategy(f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Support {
    First,
    Second,
    Both,
}

impl Strategy {
    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p) {
            Ok(Strategy(p))
        } else {
            Err(Error::InvalidProbability(p))
        }
    }

    pub fn pure(s: Pure) -> Self {
        match s {
            Pure::S1 => Strategy(1.0),
            Pure::S2 => Strategy(0.0),
        }
    }

    /// Probability of `s1`.
    pub fn p(self) -> f64 {
        self.0
    }

    pub fn weights(self) -> [f64; 2] {
        [self.0, 1.0 - self.0]
    }

    pub fn support(self) -> Support {
        if self.0 == 1.0 {
            Support::First
        } else if self.0 == 0.0 {
            Support::Second
        } else {
            Support::Both
        }
    }

    pub fn is_pure(self) -> bool {
        self.support() != Support::Both
    }
}

impl TryFrom<f64> for Strategy {
    type Error = Error;
    fn try_from(p: f64) -> Result<Self> {
        Strategy::new(p)
    }
}

impl From<Strategy> for f64 {
    fn from(s: Strategy) -> f64 {
        s.0
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, 1.0 - self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyProfile {
    pub row: Strategy,
    pub col: Strategy,
}

impl StrategyProfile {
    pub fn new(row: Strategy, col: Strategy) -> Self {
        StrategyProfile { row, col }
    }

    pub fn pure(i: Pure, j: Pure) -> Self {
        StrategyProfile::new(Strategy::pure(i), Strategy::pure(j))
    }

    pub fn of(&self, x: Player) -> Strategy {
        match x {
            Player::Row => self.row,
            Player::Col => self.col,
        }
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Shape of one player's set of equilibrium strategies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", content = "value")]
pub enum NeClass {
    OnlyPure(Pure),
    OnlyMixed(f64),
    PureAndMixed(f64),
    InfiniteNash,
}

impl NeClass {
    /// The finite strategy set, or `None` for `InfiniteNash`.
    pub fn strategies(&self) -> Option<Vec<Strategy>> {
        match *self {
            NeClass::OnlyPure(s) => Some(vec![Strategy::pure(s)]),
            NeClass::OnlyMixed(p) => Some(vec![Strategy(p)]),
            NeClass::PureAndMixed(p) => Some(vec![
                Strategy::pure(Pure::S1),
                Strategy::pure(Pure::S2),
                Strategy(p),
            ]),
            NeClass::InfiniteNash => None,
        }
    }

    /// Probability of the mixed member, if any.
    pub fn mixed(&self) -> Option<f64> {
        match *self {
            NeClass::OnlyMixed(p) | NeClass::PureAndMixed(p) => Some(p),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            NeClass::OnlyPure(s) => format!("OnlyPure({})", s.number()),
            NeClass::OnlyMixed(p) => format!("OnlyMixed({p})"),
            NeClass::PureAndMixed(p) => format!("PureAndMixed({p})"),
            NeClass::InfiniteNash => "InfiniteNash".to_string(),
        }
    }
}

impl fmt::Display for NeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The ten sign patterns of a non-degenerate game, seen from one player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignCase {
    C1a,
    C1b,
    C1c,
    C2a,
    C2b,
    C2c,
    C3a,
    C3b,
    C4a,
    C4b,
}

impl SignCase {
    pub const ALL: [SignCase; 10] = [
        SignCase::C1a,
        SignCase::C1b,
        SignCase::C1c,
        SignCase::C2a,
        SignCase::C2b,
        SignCase::C2c,
        SignCase::C3a,
        SignCase::C3b,
        SignCase::C4a,
        SignCase::C4b,
    ];

    /// Whether the pattern holds for own gains `(own1, own2)` and opponent
    /// gains `(opp1, opp2)`. Cases 1a/2a leave the opponent unconstrained.
    pub fn matches(self, own1: f64, own2: f64, opp1: f64, opp2: f64) -> bool {
        let (a1, a2, b1, b2) = (own1 > 0.0, own2 > 0.0, opp1 > 0.0, opp2 > 0.0);
        let (na1, na2, nb1, nb2) = (own1 < 0.0, own2 < 0.0, opp1 < 0.0, opp2 < 0.0);
        match self {
            SignCase::C1a => a1 && a2,
            SignCase::C1b => a1 && na2 && b1 && b2,
            SignCase::C1c => na1 && a2 && nb1 && nb2,
            SignCase::C2a => na1 && na2,
            SignCase::C2b => na1 && a2 && b1 && b2,
            SignCase::C2c => a1 && na2 && nb1 && nb2,
            SignCase::C3a => a1 && na2 && nb1 && b2,
            SignCase::C3b => na1 && a2 && b1 && nb2,
            SignCase::C4a => a1 && na2 && b1 && nb2,
            SignCase::C4b => na1 && a2 && nb1 && b2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bimatrix2x2 {
    pub payoff_r: Matrix2,
    pub payoff_c: Matrix2,
}

impl Bimatrix2x2 {
    pub fn new(payoff_r: Matrix2, payoff_c: Matrix2) -> Result<Self> {
        let g = Bimatrix2x2 { payoff_r, payoff_c };
        g.validate()?;
        Ok(g)
    }

    pub fn zero() -> Self {
        Bimatrix2x2 {
            payoff_r: [[0.0; 2]; 2],
            payoff_c: [[0.0; 2]; 2],
        }
    }

    /// Builds a game from `[i][j] -> (row payoff, column payoff)` cells.
    pub fn from_cells(cells: [[(f64, f64); 2]; 2]) -> Result<Self> {
        let mut r = [[0.0; 2]; 2];
        let mut c = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = cells[i][j].0;
                c[i][j] = cells[i][j].1;
            }
        }
        Bimatrix2x2::new(r, c)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self
            .payoff_r
            .iter()
            .chain(self.payoff_c.iter())
            .flatten()
            .all(|v| v.is_finite());
        if finite {
            Ok(())
        } else {
            Err(Error::Parse("payoff entries must be finite".into()))
        }
    }

    pub fn matrix(&self, x: Player) -> &Matrix2 {
        match x {
            Player::Row => &self.payoff_r,
            Player::Col => &self.payoff_c,
        }
    }

    /// Gain of `s1` over `s2` for `x` when the opponent plays `opp`.
    pub fn utility_gain(&self, x: Player, opp: Pure) -> f64 {
        let i = opp.idx();
        match x {
            Player::Row => self.payoff_r[0][i] - self.payoff_r[1][i],
            Player::Col => self.payoff_c[i][0] - self.payoff_c[i][1],
        }
    }

    /// `[ug(x,1), ug(x,2)]`.
    pub fn gains(&self, x: Player) -> [f64; 2] {
        [self.utility_gain(x, Pure::S1), self.utility_gain(x, Pure::S2)]
    }

    pub fn is_degenerate(&self) -> bool {
        Player::BOTH
            .iter()
            .any(|&x| self.gains(x).contains(&0.0))
    }

    /// The `s1` probability of `x`'s mixed equilibrium strategy, which is the
    /// one that makes the opponent indifferent.
    pub fn mixed_probability(&self, x: Player) -> Result<f64> {
        let [b1, b2] = self.gains(x.opponent());
        if self.is_degenerate() || (b1 > 0.0) == (b2 > 0.0) {
            return Err(Error::NoMixedEquilibrium(x));
        }
        Ok(b2 / (b2 - b1))
    }

    pub fn sign_case(&self, x: Player) -> Option<SignCase> {
        let [a1, a2] = self.gains(x);
        let [b1, b2] = self.gains(x.opponent());
        SignCase::ALL
            .into_iter()
            .find(|c| c.matches(a1, a2, b1, b2))
    }

    pub fn classify_player(&self, x: Player) -> Result<NeClass> {
        if self.is_degenerate() {
            return if self.every_strategy_is_equilibrium(x) {
                Ok(NeClass::InfiniteNash)
            } else {
                Err(Error::UnclassifiableDegenerate(x))
            };
        }
        let case = self
            .sign_case(x)
            .expect("every sign pattern of a non-degenerate game matches a case");
        Ok(match case {
            SignCase::C1a | SignCase::C1b | SignCase::C1c => NeClass::OnlyPure(Pure::S1),
            SignCase::C2a | SignCase::C2b | SignCase::C2c => NeClass::OnlyPure(Pure::S2),
            SignCase::C3a | SignCase::C3b => NeClass::OnlyMixed(self.mixed_probability(x)?),
            SignCase::C4a | SignCase::C4b => NeClass::PureAndMixed(self.mixed_probability(x)?),
        })
    }

    // NE_x(G) = Σ_x iff every interior p is a best response to some best
    // response of the opponent (closedness then adds the endpoints). The
    // opponent's gain is linear in p, so only its signs on (0,1) matter.
    fn every_strategy_is_equilibrium(&self, x: Player) -> bool {
        let [a1, a2] = self.gains(x);
        let [b1, b2] = self.gains(x.opponent());
        if b1 == 0.0 && b2 == 0.0 {
            // opponent indifferent: need some q making x indifferent
            return a1 * a2 <= 0.0;
        }
        let needs_s1 = b1 > 0.0 || b2 > 0.0;
        let needs_s2 = b1 < 0.0 || b2 < 0.0;
        (!needs_s1 || a1 == 0.0) && (!needs_s2 || a2 == 0.0)
    }

    /// Every Nash equilibrium of a non-degenerate game.
    pub fn enumerate_nash(&self) -> Result<Vec<StrategyProfile>> {
        if self.is_degenerate() {
            return Err(Error::Degenerate(
                "equilibrium enumeration needs a non-degenerate game".into(),
            ));
        }
        let r = self.classify_player(Player::Row)?;
        let c = self.classify_player(Player::Col)?;
        let mixed = |p: f64, q: f64| StrategyProfile::new(Strategy(p), Strategy(q));
        let out = match (r, c) {
            (NeClass::OnlyPure(i), NeClass::OnlyPure(j)) => vec![StrategyProfile::pure(i, j)],
            (NeClass::OnlyMixed(p), NeClass::OnlyMixed(q)) => vec![mixed(p, q)],
            (NeClass::PureAndMixed(p), NeClass::PureAndMixed(q)) => {
                let pure = match self.sign_case(Player::Row) {
                    Some(SignCase::C4a) => [(Pure::S1, Pure::S1), (Pure::S2, Pure::S2)],
                    _ => [(Pure::S1, Pure::S2), (Pure::S2, Pure::S1)],
                };
                vec![
                    StrategyProfile::pure(pure[0].0, pure[0].1),
                    StrategyProfile::pure(pure[1].0, pure[1].1),
                    mixed(p, q),
                ]
            }
            (r, c) => unreachable!("non-degenerate game with mismatched classes {r} / {c}"),
        };
        Ok(out)
    }

    /// Expected payoff of `x` under `sigma`.
    pub fn payoff(&self, x: Player, sigma: &StrategyProfile) -> f64 {
        bilinear(self.matrix(x), sigma)
    }

    pub fn social_welfare(&self, sigma: &StrategyProfile) -> f64 {
        self.payoff(Player::Row, sigma) + self.payoff(Player::Col, sigma)
    }

    /// Welfare-maximising pure profile; ties go to the first in `(i, j)` order.
    pub fn optimal_welfare(&self) -> (StrategyProfile, f64) {
        let mut best: Option<(StrategyProfile, f64)> = None;
        for i in Pure::BOTH {
            for j in Pure::BOTH {
                let s = StrategyProfile::pure(i, j);
                let w = self.social_welfare(&s);
                if best.is_none_or(|(_, bw)| w > bw) {
                    best = Some((s, w));
                }
            }
        }
        best.expect("four vertices")
    }

    /// Smallest welfare over the four pure profiles. Since welfare is
    /// bilinear this is also the minimum over all profiles.
    pub fn min_vertex_welfare(&self) -> f64 {
        Pure::BOTH
            .iter()
            .flat_map(|&i| Pure::BOTH.map(move |j| (i, j)))
            .map(|(i, j)| self.social_welfare(&StrategyProfile::pure(i, j)))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn price_of_anarchy(&self) -> Result<f64> {
        let (_, opt) = self.optimal_welfare();
        let worst = self
            .enumerate_nash()?
            .iter()
            .map(|s| self.social_welfare(s))
            .fold(f64::INFINITY, f64::min);
        welfare_ratio(opt, worst).ok_or(Error::UndefinedRatio("PoA"))
    }

    pub fn shift(&self, a: f64) -> Bimatrix2x2 {
        self.map(|v| v + a)
    }

    pub fn scale(&self, lambda: f64) -> Result<Bimatrix2x2> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidScale(lambda));
        }
        Ok(self.map(|v| v * lambda))
    }

    /// Entrywise sum with another bimatrix (e.g. a noise mean).
    pub fn add(&self, other: &Bimatrix2x2) -> Bimatrix2x2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.payoff_r[i][j] += other.payoff_r[i][j];
                out.payoff_c[i][j] += other.payoff_c[i][j];
            }
        }
        out
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Bimatrix2x2 {
        let m = |a: &Matrix2| [[f(a[0][0]), f(a[0][1])], [f(a[1][0]), f(a[1][1])]];
        Bimatrix2x2 {
            payoff_r: m(&self.payoff_r),
            payoff_c: m(&self.payoff_c),
        }
    }

    /// Best-response check: no pure deviation gains more than `tol`.
    pub fn is_nash(&self, sigma: &StrategyProfile, tol: f64) -> bool {
        Player::BOTH.iter().all(|&x| {
            let current = self.payoff(x, sigma);
            Pure::BOTH.iter().all(|&s| {
                let dev = match x {
                    Player::Row => StrategyProfile::new(Strategy::pure(s), sigma.col),
                    Player::Col => StrategyProfile::new(sigma.row, Strategy::pure(s)),
                };
                self.payoff(x, &dev) <= current + tol
            })
        })
    }
}

pub fn shift_game(g: &Bimatrix2x2, a: f64) -> Bimatrix2x2 {
    g.shift(a)
}

pub fn scale_game(g: &Bimatrix2x2, lambda: f64) -> Result<Bimatrix2x2> {
    g.scale(lambda)
}

/// `opt / worst`, or `None` when the denominator vanishes.
pub(crate) fn welfare_ratio(opt: f64, worst: f64) -> Option<f64> {
    const ZERO_WELFARE: f64 = 1e-12;
    (worst.abs() > ZERO_WELFARE).then(|| opt / worst)
}

fn bilinear(m: &Matrix2, sigma: &StrategyProfile) -> f64 {
    let p = sigma.row.weights();
    let q = sigma.col.weights();
    let mut acc = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            acc += p[i] * m[i][j] * q[j];
        }
    }
    acc
}

/// The four benchmark games, by name: `pd`, `mp`, `bos`, `ww`.
pub fn builtin(name: &str) -> Option<Bimatrix2x2> {
    let cells = match name.to_ascii_lowercase().as_str() {
        "pd" => [[(2.0, 2.0), (0.0, 3.0)], [(3.0, 0.0), (1.0, 1.0)]],
        "mp" => [[(1.0, -1.0), (-1.0, 1.0)], [(-1.0, 1.0), (1.0, -1.0)]],
        "bos" => [[(2.0, 1.0), (0.0, 0.0)], [(0.0, 0.0), (1.0, 2.0)]],
        "ww" => [[(3.0, 2.0), (4.0, 4.0)], [(1.0, 1.0), (2.0, 3.0)]],
        _ => return None,
    };
    Some(Bimatrix2x2::from_cells(cells).expect("finite"))
}

pub const BUILTIN_NAMES: [&str; 4] = ["pd", "mp", "bos", "ww"];

/// Battle-of-the-Sexes variant used as the worked example: `(3,2),(0,0);(0,0),(2,3)`.
pub fn running_example() -> Bimatrix2x2 {
    Bimatrix2x2::from_cells([[(3.0, 2.0), (0.0, 0.0)], [(0.0, 0.0), (2.0, 3.0)]]).expect("finite")
}
