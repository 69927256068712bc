//! The worked example: the coordination game (3,2),(0,0);(0,0),(2,3) with
//! zero-mean, unit-sd noise on every entry of both views and ε = 0.1.

use std::fmt::Write;

use misgame::game::{running_example, Player, Pure};
use misgame::prob::{class_probabilities, consistency_probabilities, ProbConfig};
use misgame::{NoiseSpec, Result, Tolerance};

pub const EPSILON: f64 = 0.1;

fn line(out: &mut String, name: &str, computed: f64, reported: f64) {
    writeln!(out, "{name:<28} {computed:>12.6} {reported:>10.3} {:>+12.6}", computed - reported).unwrap();
}

pub fn render(cfg: &ProbConfig) -> Result<String> {
    let g = running_example();
    let spec = NoiseSpec::isotropic(1.0);
    let eps = Tolerance::new(EPSILON)?;
    let mut out = String::new();
    writeln!(out, "game (3,2) (0,0) / (0,0) (2,3); noise N(0, 1) per entry; epsilon {EPSILON}").unwrap();
    let gains: Vec<String> = Player::BOTH
        .iter()
        .flat_map(|&x| Pure::BOTH.map(|i| g.utility_gain(x, i)))
        .map(|v| v.to_string())
        .collect();
    writeln!(out, "utility gains r1 r2 c1 c2: {}  (reported 3, -2, 2, -3)", gains.join(", ")).unwrap();
    writeln!(out, "ratio reduction: {:?}", cfg.mode).unwrap();
    writeln!(out, "{:<28} {:>12} {:>10} {:>12}", "quantity", "computed", "reported", "deviation").unwrap();

    let r = class_probabilities(&g, &spec, Player::Row)?;
    for (name, v, want) in [
        ("F own 1 (r view)", r.f_own[0], 0.017),
        ("F own 2 (r view)", r.f_own[1], 0.921),
        ("F opp 1 (r view)", r.f_opp[0], 0.078),
        ("F opp 2 (r view)", r.f_opp[1], 0.983),
    ] {
        line(&mut out, name, v, want);
    }

    let report = consistency_probabilities(&g, &spec, eps, cfg)?;
    let reported = [(0.091, 0.085, 0.001, 0.207, 0.386, 0.207), (0.091, 0.085, 0.001, 0.171, 0.349, 0.171)];
    for (x, (op1, op2, rom, rpm, mis, inv)) in Player::BOTH.into_iter().zip(reported) {
        let p = report.player(x);
        let w = format!("({:.1},{:.1})", p.window.lo, p.window.hi);
        line(&mut out, &format!("{x}: P(OP 1)"), p.p_op1, op1);
        line(&mut out, &format!("{x}: P(OP 2)"), p.p_op2, op2);
        line(&mut out, &format!("{x}: P(ROM {w})"), p.p_rom, rom);
        line(&mut out, &format!("{x}: P(RPM {w})"), p.p_rpm, rpm);
        if x == Player::Row {
            line(&mut out, "r: integral, y > 0", p.integral_pos, 0.001);
            line(&mut out, "r: integral, y < 0", p.integral_neg, 0.229);
        }
        line(&mut out, &format!("{x}: misinformed factor"), p.factor_mis, mis);
        line(&mut out, &format!("{x}: inverse factor"), p.factor_inv, inv);
    }
    line(&mut out, "p_mis (factor product)", report.p_mis_factorized, 0.135);
    line(&mut out, "p_mis", report.p_mis, 0.135);
    line(&mut out, "p_inv", report.p_inv, 0.035);
    Ok(out)
}
