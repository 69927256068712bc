//! One line per acceptance criterion. Runs every criterion, then exits
//! non-zero if any failed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use misgame::formats::{self, parse_report_json};
use misgame::game::{builtin, Bimatrix2x2, NeClass, Player, Pure, Strategy, StrategyProfile};
use misgame::misinfo::{price_of_misinformation, MisinformationGame};
use misgame::montecarlo::{binomial_se, sweep, McConfig, SweepMode};
use misgame::normal::NormalDist;
use misgame::prob::{
    class_probabilities, consistency_probabilities, ratio_region_integral, RatioForm, ProbConfig, Window,
    YSign,
};
use misgame::{Error, NoiseLaw, NoiseSpec, QuadratureConfig, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_misgame"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run_ok(cmd: &mut Command) -> Vec<u8> {
    let out = cmd.output().expect("spawn misgame");
    assert!(out.status.success(), "misgame failed: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn eps(v: f64) -> Tolerance {
    Tolerance::new(v).unwrap()
}

fn within(v: f64, want: f64, tol: f64) -> bool {
    (v - want).abs() <= tol
}

fn prob() -> ProbConfig {
    ProbConfig::default()
}

// 1
fn running_example() -> Outcome {
    let t = Instant::now();
    let out = run_ok(bin().arg("analyze").arg("--noisy").arg(data("running_example.json")));
    let elapsed = t.elapsed().as_secs_f64();
    let r = parse_report_json(std::str::from_utf8(&out).unwrap()).unwrap();
    let f = [r.row.f_own[0], r.row.f_own[1], r.row.f_opp[0], r.row.f_opp[1]];
    let f_ok = f.iter().zip([0.017, 0.921, 0.078, 0.983]).all(|(&v, w)| within(v, w, 1e-3));
    let factors = [r.row.factor_mis, r.row.factor_inv, r.col.factor_mis, r.col.factor_inv];
    let factors_ok = factors.iter().zip([0.386, 0.207, 0.349, 0.171]).all(|(&v, w)| within(v, w, 0.01));
    let p_ok = within(r.p_mis, 0.135, 0.005) && within(r.p_inv, 0.035, 0.005);
    let ok = f_ok && factors_ok && p_ok && elapsed < 1.0;
    let detail = format!(
        "p_mis {:.4} (factor product {:.4}) vs 0.135, p_inv {:.4} vs 0.035 [{}]; F {:.3?} [{}]; factors {:.3?} vs [0.386, 0.207, 0.349, 0.171] [{}]; {:.3}s",
        r.p_mis,
        r.p_mis_factorized,
        r.p_inv,
        if p_ok { "ok" } else { "off" },
        f,
        if f_ok { "ok" } else { "off" },
        factors,
        if factors_ok { "ok" } else { "off" },
        elapsed
    );
    (ok, detail)
}

// 2
fn ratio_gate() -> Outcome {
    let x = NormalDist::new(2.0, 2f64.sqrt()).unwrap();
    let y = NormalDist::new(-3.0, 2f64.sqrt()).unwrap();
    let (lo, hi) = (-1.0, -3.0 / 7.0);
    let n = 10_000_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut hits = 0u64;
    for _ in 0..n {
        let a = x.mu + x.sd * rng.sample::<f64, _>(StandardNormal);
        let b = y.mu + y.sd * rng.sample::<f64, _>(StandardNormal);
        if b < 0.0 && lo <= a / b && a / b <= hi {
            hits += 1;
        }
    }
    let mc = hits as f64 / n as f64;
    let se = (mc * (1.0 - mc) / n as f64).sqrt();
    let q = QuadratureConfig::default();
    let verdict = |mode| {
        let v = ratio_region_integral(&x, &y, lo, hi, YSign::Negative, mode, &q).unwrap();
        (v, (v - mc).abs() <= 4.0 * se)
    };
    let (corrected, c_ok) = verdict(RatioForm::Corrected);
    let (literal, l_ok) = verdict(RatioForm::Literal);
    let canonical = match (c_ok, l_ok) {
        (true, false) => "corrected",
        (false, true) => "literal",
        (true, true) => "both",
        (false, false) => "neither",
    };
    let detail = format!(
        "sampled {mc:.5} ± {se:.5}; corrected {corrected:.5} [{}], literal {literal:.5} [{}]; canonical: {canonical}; reproduces 0.229: {}",
        if c_ok { "agrees" } else { "rejected" },
        if l_ok { "agrees" } else { "rejected" },
        within(if c_ok { corrected } else { literal }, 0.229, 0.001)
    );
    (c_ok || l_ok, detail)
}

fn section_grid() -> Vec<f64> {
    formats::parse_grid("0.001,0.5:0.5:10").unwrap()
}

/// Within four binomial standard errors, taken at the theoretical value so a
/// rare event that never showed up in the sample still has a nonzero band.
fn agrees(theory: f64, freq: f64, reps: u64) -> bool {
    (theory - freq).abs() <= 4.0 * binomial_se(theory, reps)
}

// 3
fn theory_vs_mc() -> Outcome {
    let t = Instant::now();
    let (mut agree, mut total) = (0, 0);
    let mut parts = Vec::new();
    for name in ["pd", "mp", "bos", "ww"] {
        let g = builtin(name).unwrap();
        let (mut game_agree, mut game_total) = (0, 0);
        for (k, e) in [1e-2, 1e-3].into_iter().enumerate() {
            let mc = McConfig { reps: 3000, seed: 31 + k as u64, ..Default::default() };
            let rows =
                sweep(&g, &NoiseSpec::isotropic(1.0), eps(e), &section_grid(), &mc, &prob(), SweepMode::Both).unwrap();
            for r in rows {
                let m = r.mc.unwrap();
                game_total += 1;
                let mis = agrees(r.p_mis_theory.unwrap(), m.freq_mis, m.reps);
                let inv = agrees(r.p_inv_theory.unwrap(), m.freq_inv, m.reps);
                game_agree += (mis && inv) as usize;
            }
        }
        agree += game_agree;
        total += game_total;
        parts.push(format!("{name} {game_agree}/{game_total}"));
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = agree as f64 >= 0.95 * total as f64 && secs < 300.0;
    (ok, format!("{agree}/{total} grid points within 4 SE (need 95%); by game {}; {secs:.1}s", parts.join(", ")))
}

// 4
fn asymptotic_limits() -> Outcome {
    let big = NoiseSpec::isotropic(1000.0);
    let pd = consistency_probabilities(&builtin("pd").unwrap(), &big, eps(1e-2), &prob()).unwrap();
    let mp = consistency_probabilities(&builtin("mp").unwrap(), &big, eps(1e-2), &prob()).unwrap();
    let bos_g = builtin("bos").unwrap();
    let bos = consistency_probabilities(&bos_g, &big, eps(1e-2), &prob()).unwrap();
    let mc = McConfig { reps: 3000, seed: 4, ..Default::default() };
    let row = &sweep(&bos_g, &NoiseSpec::isotropic(1.0), eps(1e-2), &[1000.0], &mc, &prob(), SweepMode::Both).unwrap()[0];
    let m = row.mc.unwrap();
    let bos_mc_ok = agrees(row.p_mis_theory.unwrap(), m.freq_mis, m.reps);
    let pd_ok = within(pd.p_mis, 0.1406, 0.005) && within(pd.p_inv, 0.25, 0.005);
    let mp_ok = mp.p_mis <= 0.005;
    let detail = format!(
        "PD p_mis {:.4} p_inv {:.4} [{}]; MP p_mis {:.2e} [{}]; BoS plateau p_mis {:.4} (factor product {:.4}) vs reported 0.72, sampled {:.4} ± {:.4} [{}]",
        pd.p_mis,
        pd.p_inv,
        if pd_ok { "ok" } else { "off" },
        mp.p_mis,
        if mp_ok { "ok" } else { "off" },
        bos.p_mis,
        bos.p_mis_factorized,
        m.freq_mis,
        m.se_mis,
        if bos_mc_ok { "agrees" } else { "disagrees" }
    );
    (pd_ok && mp_ok && bos_mc_ok, detail)
}

fn random_matrix(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> [[f64; 2]; 2] {
    [[rng.random_range(lo..hi), rng.random_range(lo..hi)], [rng.random_range(lo..hi), rng.random_range(lo..hi)]]
}

fn random_game(rng: &mut ChaCha8Rng) -> Bimatrix2x2 {
    Bimatrix2x2::new(random_matrix(rng, -5.0, 5.0), random_matrix(rng, -5.0, 5.0)).unwrap()
}

fn random_law(rng: &mut ChaCha8Rng) -> NoiseLaw {
    NoiseLaw {
        mean_r: random_matrix(rng, -1.0, 1.0),
        mean_c: random_matrix(rng, -1.0, 1.0),
        std_r: random_matrix(rng, 0.1, 3.0),
        std_c: random_matrix(rng, 0.1, 3.0),
    }
}

fn random_spec(rng: &mut ChaCha8Rng) -> NoiseSpec {
    NoiseSpec { view_r: random_law(rng), view_c: random_law(rng) }
}

fn infinite_nash_game(rng: &mut ChaCha8Rng) -> Bimatrix2x2 {
    let (a, b) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
    let (g1, g2) = (rng.random_range(0.1..3.0), -rng.random_range(0.1..3.0));
    let (c0, c1) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
    Bimatrix2x2::new([[a, b], [a, b]], [[c0 + g1, c0], [c1 + g2, c1]]).unwrap()
}

fn map_law(law: &NoiseLaw, f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> NoiseLaw {
    let m = |a: &[[f64; 2]; 2], h: &dyn Fn(f64) -> f64| [[h(a[0][0]), h(a[0][1])], [h(a[1][0]), h(a[1][1])]];
    NoiseLaw { mean_r: m(&law.mean_r, &f), mean_c: m(&law.mean_c, &f), std_r: m(&law.std_r, &g), std_c: m(&law.std_c, &g) }
}

/// Returns the number of instances violating each property.
fn property_failures() -> Vec<(&'static str, usize)> {
    const N: usize = 1000;
    let c = prob();
    let full = Window::FULL;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Vec::new();

    let mut bad = 0;
    for _ in 0..N {
        let (g, s) = (random_game(&mut rng), random_spec(&mut rng));
        let cp = class_probabilities(&g, &s, Player::Row).unwrap();
        let total = cp.p_op1 + cp.p_op2 + cp.p_rom(full, &c).unwrap() + cp.p_rpm(full, &c).unwrap();
        bad += !within(total, 1.0, 1e-6) as usize;
    }
    out.push(("exhaustiveness", bad));

    let mut bad = 0;
    for _ in 0..N {
        let (g, s) = (random_game(&mut rng), random_spec(&mut rng));
        let mut k = [rng.random::<f64>(), rng.random(), rng.random()];
        k.sort_by(f64::total_cmp);
        let w = |a, b| Window::new(a, b).unwrap();
        let cp = class_probabilities(&g, &s, Player::Col).unwrap();
        let rom = cp.p_rom(w(k[0], k[2]), &c).unwrap() - cp.p_rom(w(k[0], k[1]), &c).unwrap() - cp.p_rom(w(k[1], k[2]), &c).unwrap();
        let rpm = cp.p_rpm(w(k[0], k[2]), &c).unwrap() - cp.p_rpm(w(k[0], k[1]), &c).unwrap() - cp.p_rpm(w(k[1], k[2]), &c).unwrap();
        bad += (rom.abs() > 1e-8 || rpm.abs() > 1e-8) as usize;
    }
    out.push(("additivity", bad));

    let grid = [0.0, 0.01, 0.1, 0.3, 0.5, 0.6, 0.9, 1.0];
    let mut bad = 0;
    for k in 0..N {
        let g = if k % 10 == 0 { infinite_nash_game(&mut rng) } else { random_game(&mut rng) };
        let s = random_spec(&mut rng);
        let reps: Vec<_> = grid.iter().map(|&e| consistency_probabilities(&g, &s, eps(e), &c).unwrap()).collect();
        let mut fail = reps.windows(2).any(|w| w[1].p_mis < w[0].p_mis - 1e-12 || w[1].p_inv < w[0].p_inv - 1e-12);
        let flat_from = |from: f64| {
            let i0 = grid.iter().position(|&e| e >= from).unwrap_or(grid.len() - 1);
            reps[i0..].iter().all(|r| within(r.p_mis, reps[i0].p_mis, 1e-12) && within(r.p_inv, reps[i0].p_inv, 1e-12))
        };
        match (g.classify_player(Player::Row).unwrap(), g.classify_player(Player::Col).unwrap()) {
            (NeClass::OnlyPure(_), _) => fail |= !flat_from(0.0),
            (NeClass::InfiniteNash, _) => {
                fail |= reps.iter().any(|r| !within(r.p_mis, reps[0].p_mis, 1e-12));
                fail |= grid.iter().zip(&reps).any(|(&e, r)| e <= 0.5 && r.p_inv != 0.0);
            }
            (r, cc) => {
                let (p, q) = (r.mixed().unwrap(), cc.mixed().unwrap());
                fail |= !flat_from(p.max(q).max(1.0 - p).max(1.0 - q));
            }
        }
        bad += fail as usize;
    }
    out.push(("epsilon monotonicity and constancy", bad));

    let (mut bad, mut seen) = (0, 0);
    while seen < N {
        let (g, s) = (random_game(&mut rng), random_spec(&mut rng));
        match g.classify_player(Player::Row).unwrap() {
            NeClass::OnlyMixed(_) => {
                let r = consistency_probabilities(&g, &s, eps(0.0), &c).unwrap();
                bad += (r.p_mis != 0.0 || r.p_inv != 0.0) as usize;
            }
            NeClass::PureAndMixed(_) => {
                let r = consistency_probabilities(&g, &s, eps(1.0), &c).unwrap();
                let fail = Player::BOTH.iter().any(|&x| {
                    let direct = class_probabilities(&g, &s, x).unwrap().p_rpm(full, &c).unwrap();
                    !within(r.player(x).factor_mis, 1.0, 1e-8) || !within(r.player(x).factor_inv, direct, 1e-8)
                });
                bad += fail as usize;
            }
            _ => continue,
        }
        seen += 1;
    }
    out.push(("extremal values", bad));

    let mut bad = 0;
    for _ in 0..N {
        let (g, s) = (random_game(&mut rng), random_spec(&mut rng));
        let a = rng.random_range(-10.0..10.0);
        let fail = Player::BOTH.iter().any(|&x| {
            let law = s.law(x);
            let folded = g.add(&law.mean_bimatrix());
            let zero = NoiseSpec::shared(map_law(law, |_| 0.0, |v| v));
            let lhs = class_probabilities(&g, &s, x).unwrap();
            [class_probabilities(&folded, &zero, x).unwrap(), class_probabilities(&folded.shift(a), &zero, x).unwrap()]
                .iter()
                .any(|rhs| {
                    !(within(lhs.p_op1, rhs.p_op1, 1e-8)
                        && within(lhs.p_op2, rhs.p_op2, 1e-8)
                        && within(lhs.p_rom(full, &c).unwrap(), rhs.p_rom(full, &c).unwrap(), 1e-8)
                        && within(lhs.p_rpm(full, &c).unwrap(), rhs.p_rpm(full, &c).unwrap(), 1e-8))
                })
        });
        bad += fail as usize;
    }
    out.push(("bias absorption", bad));

    let mut bad = 0;
    for _ in 0..N {
        let (g, s) = (random_game(&mut rng), random_spec(&mut rng));
        let e = eps(rng.random_range(0.0..1.0));
        let (a_g, a_r, a_c) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let shifted = NoiseSpec { view_r: map_law(&s.view_r, |v| v + a_r, |v| v), view_c: map_law(&s.view_c, |v| v + a_c, |v| v) };
        let (x, y) = (
            consistency_probabilities(&g, &s, e, &c).unwrap(),
            consistency_probabilities(&g.shift(a_g), &shifted, e, &c).unwrap(),
        );
        bad += !(within(x.p_mis, y.p_mis, 1e-8) && within(x.p_inv, y.p_inv, 1e-8)) as usize;
    }
    out.push(("global shift", bad));

    let mut bad = 0;
    for k in 0..N {
        let (g, s) = (random_game(&mut rng), random_spec(&mut rng));
        let e = eps(rng.random_range(0.0..1.0));
        let l = [0.1, 2.0, 17.0][k % 3];
        let scaled = NoiseSpec { view_r: map_law(&s.view_r, |v| v * l, |v| v * l), view_c: map_law(&s.view_c, |v| v * l, |v| v * l) };
        let (x, y) = (
            consistency_probabilities(&g, &s, e, &c).unwrap(),
            consistency_probabilities(&g.scale(l).unwrap(), &scaled, e, &c).unwrap(),
        );
        bad += !(within(x.p_mis, y.p_mis, 1e-8) && within(x.p_inv, y.p_inv, 1e-8)) as usize;
    }
    out.push(("scale (sd convention)", bad));
    out
}

// 5
fn properties() -> Outcome {
    let fails = property_failures();
    let ok = fails.iter().all(|(_, n)| *n == 0);
    let detail = fails.iter().map(|(name, n)| format!("{name} {}/1000", 1000 - n)).collect::<Vec<_>>().join(", ");
    (ok, detail)
}

// 6
fn equilibrium_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut games, mut mismatches, mut worst_residual) = (0, 0, 0.0f64);
    while games < 1000 {
        let m = |rng: &mut ChaCha8Rng| {
            let mut a = [[0.0; 2]; 2];
            a.iter_mut().flatten().for_each(|v| *v = rng.random_range(-5..=5) as f64);
            a
        };
        let g = Bimatrix2x2::new(m(&mut rng), m(&mut rng)).unwrap();
        if g.is_degenerate() {
            continue;
        }
        games += 1;
        let ne = g.enumerate_nash().unwrap();
        let on_grid = |p: f64| ((p * 100.0).round() - p * 100.0).abs() < 1e-9;
        let mut grid_ne = 0;
        for a in 0..=100 {
            for b in 0..=100 {
                let s = StrategyProfile::new(Strategy::new(a as f64 / 100.0).unwrap(), Strategy::new(b as f64 / 100.0).unwrap());
                if g.is_nash(&s, 1e-12) {
                    grid_ne += 1;
                    if !ne.iter().any(|e| (e.row.p() - s.row.p()).abs() < 1e-9 && (e.col.p() - s.col.p()).abs() < 1e-9) {
                        mismatches += 1;
                    }
                }
            }
        }
        let expected = ne.iter().filter(|s| on_grid(s.row.p()) && on_grid(s.col.p())).count();
        mismatches += (grid_ne != expected) as usize + ne.iter().filter(|s| !g.is_nash(s, 1e-12)).count();
        for x in Player::BOTH {
            if let Some(p) = g.classify_player(x).unwrap().mixed() {
                let s = Strategy::new(p).unwrap();
                let pay = |t: Pure| match x {
                    Player::Row => g.payoff(Player::Col, &StrategyProfile::new(s, Strategy::pure(t))),
                    Player::Col => g.payoff(Player::Row, &StrategyProfile::new(Strategy::pure(t), s)),
                };
                worst_residual = worst_residual.max((pay(Pure::S1) - pay(Pure::S2)).abs());
            }
        }
    }
    let ok = mismatches == 0 && worst_residual <= 1e-12;
    (ok, format!("{games} games, {mismatches} mismatches, max indifference residual {worst_residual:.1e}"))
}

fn interior_extrema(v: &[f64]) -> usize {
    v.windows(3)
        .filter(|w| {
            let (a, b) = (w[1] - w[0], w[2] - w[1]);
            a.abs() > 1e-12 && b.abs() > 1e-12 && (a > 0.0) != (b > 0.0)
        })
        .count()
}

// 7
fn non_monotonicity() -> Outcome {
    let curve = |file: &str| -> Vec<f64> {
        let ng = formats::load_noisy_game(&data(file)).unwrap();
        (1..1000)
            .map(|k| {
                let spec = ng.spec.with_std_scaled(k as f64 * 0.01);
                consistency_probabilities(&ng.game, &spec, ng.epsilon.unwrap(), &prob()).unwrap().p_mis
            })
            .collect()
    };
    let fig = curve("pd_upper_left.json");
    let n = interior_extrema(&fig);
    let other = interior_extrema(&curve("nonmonotone_shape.json"));
    let detail = format!(
        "PD with noise on the upper-left entries: {n} interior extrema over d in (0, 10), p_mis from {:.4} to {:.4}; (a non-PD configuration in data/nonmonotone_shape.json has {other})",
        fig[0],
        fig[fig.len() - 1]
    );
    (n >= 1, detail)
}

// 8
fn welfare_metrics() -> Outcome {
    let poa = |n: &str| builtin(n).unwrap().price_of_anarchy();
    let pd_ok = poa("pd") == Ok(2.0);
    let ww_ok = poa("ww") == Ok(1.0);
    let mut pom_parts = Vec::new();
    let mut pom_ok = true;
    for name in ["pd", "mp", "bos", "ww"] {
        let g = builtin(name).unwrap();
        let pom = price_of_misinformation(&MisinformationGame::truthful(g));
        let same = match (&pom, g.price_of_anarchy()) {
            (Ok(a), Ok(b)) => within(*a, b, 1e-12),
            (Err(Error::UndefinedRatio(_)), Err(Error::UndefinedRatio(_))) => true,
            _ => false,
        };
        pom_ok &= same;
        let show = |r: &Result<f64, Error>| r.as_ref().map(|v| format!("{v:.4}")).unwrap_or_else(|_| "undefined".into());
        pom_parts.push(format!("{name} PoM {} / PoA {}{}", show(&pom), show(&g.price_of_anarchy()), if same { "" } else { " (differ)" }));
    }
    let out = run_ok(bin().args(["pom-plane", "--game", "mp", "--shift", "2", "--resolution", "20"]));
    let plane = formats::read_plane_csv(out.as_slice()).unwrap();
    let cells: Vec<f64> = plane.cells.iter().flatten().map(|c| c.unwrap_or(f64::NAN)).collect();
    let spread = cells.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v)) - cells.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    let plane_ok = spread.is_finite() && spread <= 1e-12;
    let detail = format!(
        "PoA(PD) {:?}, PoA(WW) {:?}; {}; shifted MP plane spread {spread:.1e}",
        poa("pd"),
        poa("ww"),
        pom_parts.join(", ")
    );
    (pd_ok && ww_ok && pom_ok && plane_ok, detail)
}

// 9
fn determinism() -> Outcome {
    let sweep_args = ["sweep", "--game", "bos", "--epsilon", "0.01", "--d-grid", "0.5:0.5:3", "--mc", "400", "--seed", "9"];
    let a = run_ok(bin().args(sweep_args));
    let b = run_ok(bin().args(sweep_args));
    let mc = |seed: &str| run_ok(bin().arg("mc").arg("--noisy").arg(data("running_example.json")).args(["--reps", "2000", "--seed", seed]));
    let (c, d) = (mc("3"), mc("3"));
    let other = mc("4");
    let ok = a == b && c == d && other != c;
    (ok, format!("sweep identical: {}, mc identical: {}, different seed differs: {}", a == b, c == d, other != c))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("running example regression", running_example),
        ("ratio integral oracle gate", ratio_gate),
        ("theory vs Monte Carlo sweeps", theory_vs_mc),
        ("asymptotic limits", asymptotic_limits),
        ("property suites", properties),
        ("equilibrium oracle", equilibrium_oracle),
        ("non-monotone noise dependence", non_monotonicity),
        ("welfare metrics", welfare_metrics),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            (false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        failed += !ok as usize;
        println!("criterion {}: {} {name}: {detail}", k + 1, if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
