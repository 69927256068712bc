//! File formats: JSON games and noisy games, grid specs, and the CSV tables
//! the CLI writes.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{builtin, running_example, Bimatrix2x2, Matrix2};
use crate::misinfo::{NoiseLaw, NoiseSpec, Tolerance};
use crate::montecarlo::{McEstimate, SweepRow};
use crate::prob::ConsistencyReport;

/// Most points a grid spec may expand to.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// A built-in game, or the worked example under `running-example`.
pub fn named_game(name: &str) -> Option<Bimatrix2x2> {
    if name.eq_ignore_ascii_case("running-example") {
        return Some(running_example());
    }
    builtin(name)
}

pub fn parse_game_json(text: &str) -> Result<Bimatrix2x2> {
    let g: GameFile = serde_json::from_str(text)?;
    Bimatrix2x2::new(g.payoff_r, g.payoff_c)
}

pub fn game_to_json(g: &Bimatrix2x2) -> String {
    serde_json::to_string_pretty(g).expect("serializable")
}

/// Resolves a built-in name, else reads a game file.
pub fn load_game(arg: &str) -> Result<Bimatrix2x2> {
    if let Some(g) = named_game(arg) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
    parse_game_json(&text)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    payoff_r: Matrix2,
    payoff_c: Matrix2,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GameRef {
    Name(String),
    Inline(GameFile),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PerViewer {
    r: Option<NoiseLaw>,
    c: Option<NoiseLaw>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NoisyFile {
    game: GameRef,
    mean_r: Option<Matrix2>,
    mean_c: Option<Matrix2>,
    std_r: Option<Matrix2>,
    std_c: Option<Matrix2>,
    epsilon: Option<f64>,
    per_viewer: Option<PerViewer>,
}

/// Contents of a noisy-game file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyGame {
    pub game: Bimatrix2x2,
    pub spec: NoiseSpec,
    pub epsilon: Option<Tolerance>,
}

/// Parses a noisy-game file. `game` is a built-in name, an inline game
/// object, or a path resolved against `base_dir` (paths are refused when
/// `base_dir` is `None`).
///
/// Top-level `mean_*`/`std_*` apply to both viewers; `per_viewer.r` and
/// `per_viewer.c` replace them for one viewer.
pub fn parse_noisy_game(text: &str, base_dir: Option<&Path>) -> Result<NoisyGame> {
    let f: NoisyFile = serde_json::from_str(text)?;
    let game = match f.game {
        GameRef::Inline(g) => Bimatrix2x2::new(g.payoff_r, g.payoff_c)?,
        GameRef::Name(name) => match named_game(&name) {
            Some(g) => g,
            None => {
                let Some(dir) = base_dir else {
                    return Err(Error::Parse(format!("unknown game name {name:?}")));
                };
                let path: PathBuf = dir.join(&name);
                load_game(path.to_str().ok_or_else(|| Error::Parse("non-utf8 path".into()))?)?
            }
        },
    };
    let overrides = f.per_viewer.unwrap_or(PerViewer { r: None, c: None });
    let shared = match (f.std_r, f.std_c) {
        (Some(std_r), Some(std_c)) => Some(NoiseLaw {
            mean_r: f.mean_r.unwrap_or_default(),
            mean_c: f.mean_c.unwrap_or_default(),
            std_r,
            std_c,
        }),
        (None, None) if overrides.r.is_some() && overrides.c.is_some() => None,
        _ => return Err(Error::Parse("std_r and std_c are required".into())),
    };
    let pick = |o: Option<NoiseLaw>| o.or(shared).expect("checked above");
    let spec = NoiseSpec { view_r: pick(overrides.r), view_c: pick(overrides.c) };
    spec.validate()?;
    let epsilon = f.epsilon.map(Tolerance::new).transpose()?;
    Ok(NoisyGame { game, spec, epsilon })
}

pub fn load_noisy_game(path: &Path) -> Result<NoisyGame> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_noisy_game(&text, path.parent())
}

/// Expands `"0.001,0.5:0.5:10"`: comma-separated numbers or inclusive
/// `start:step:stop` ranges.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| -> Result<f64> {
        let v: f64 = s.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?} in grid")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Parse(format!("non-finite number {s:?} in grid")))
        }
    };
    let mut out = Vec::new();
    for item in spec.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(num(v)?),
            [a, s, b] => {
                let (start, step, stop) = (num(a)?, num(s)?, num(b)?);
                if !(step > 0.0) || stop < start {
                    return Err(Error::Parse(format!("bad range {item:?}: need step > 0 and stop >= start")));
                }
                let count = ((stop - start) / step + 1e-9).floor();
                if count >= MAX_GRID_POINTS as f64 {
                    return Err(Error::Parse(format!("range {item:?} is too long")));
                }
                out.extend((0..=count as usize).map(|k| start + k as f64 * step));
            }
            _ => return Err(Error::Parse(format!("bad grid item {item:?}"))),
        }
        if out.len() > MAX_GRID_POINTS {
            return Err(Error::Parse("grid is too long".into()));
        }
    }
    Ok(out)
}

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn parse_cell(s: &str) -> Result<Option<f64>> {
    match s.trim() {
        "" => Ok(None),
        "inf" => Ok(Some(f64::INFINITY)),
        "-inf" => Ok(Some(f64::NEG_INFINITY)),
        t => t.parse().map(Some).map_err(|_| Error::Parse(format!("bad number {t:?}"))),
    }
}

pub const SWEEP_COLUMNS: [&str; 10] = [
    "d",
    "p_mis_theory",
    "p_inv_theory",
    "freq_mis",
    "freq_inv",
    "se_mis",
    "se_inv",
    "freq_best",
    "freq_worst",
    "degenerate_resamples",
];

/// One line of the sweep CSV. Empty cells are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub d: f64,
    pub p_mis_theory: Option<f64>,
    pub p_inv_theory: Option<f64>,
    pub freq_mis: Option<f64>,
    pub freq_inv: Option<f64>,
    pub se_mis: Option<f64>,
    pub se_inv: Option<f64>,
    pub freq_best: Option<f64>,
    pub freq_worst: Option<f64>,
    pub degenerate_resamples: Option<u64>,
}

impl From<&SweepRow> for SweepRecord {
    fn from(r: &SweepRow) -> Self {
        SweepRecord {
            d: r.d,
            p_mis_theory: r.p_mis_theory,
            p_inv_theory: r.p_inv_theory,
            freq_mis: r.mc.map(|m| m.freq_mis),
            freq_inv: r.mc.map(|m| m.freq_inv),
            se_mis: r.mc.map(|m| m.se_mis),
            se_inv: r.mc.map(|m| m.se_inv),
            freq_best: r.mc.map(|m| m.freq_best),
            freq_worst: r.mc.map(|m| m.freq_worst),
            degenerate_resamples: r.mc.map(|m| m.degenerate_resamples),
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn write_sweep_csv<W: std::io::Write>(out: W, rows: &[SweepRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_COLUMNS).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            fmt_f64(r.d),
            fmt_opt(r.p_mis_theory),
            fmt_opt(r.p_inv_theory),
            fmt_opt(r.freq_mis),
            fmt_opt(r.freq_inv),
            fmt_opt(r.se_mis),
            fmt_opt(r.se_inv),
            fmt_opt(r.freq_best),
            fmt_opt(r.freq_worst),
            r.degenerate_resamples.map(|n| n.to_string()).unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep_csv<R: std::io::Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(csv_err)?.clone();
    if header.iter().ne(SWEEP_COLUMNS) {
        return Err(Error::Parse(format!("unexpected sweep header {:?}", header.iter().collect::<Vec<_>>())));
    }
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let c = |k: usize| parse_cell(&rec[k]);
        let d = c(0)?.ok_or_else(|| Error::Parse("missing d".into()))?;
        let resamples = match rec[9].trim() {
            "" => None,
            t => Some(t.parse().map_err(|_| Error::Parse(format!("bad count {t:?}")))?),
        };
        out.push(SweepRecord {
            d,
            p_mis_theory: c(1)?,
            p_inv_theory: c(2)?,
            freq_mis: c(3)?,
            freq_inv: c(4)?,
            se_mis: c(5)?,
            se_inv: c(6)?,
            freq_best: c(7)?,
            freq_worst: c(8)?,
            degenerate_resamples: resamples,
        });
    }
    Ok(out)
}

pub const MC_COLUMNS: [&str; 10] = [
    "reps",
    "freq_mis",
    "freq_inv",
    "se_mis",
    "se_inv",
    "freq_best",
    "freq_worst",
    "se_best",
    "se_worst",
    "degenerate_resamples",
];

/// One header line and one data line.
pub fn write_mc_csv<W: std::io::Write>(out: W, e: &McEstimate) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(MC_COLUMNS).map_err(csv_err)?;
    let mut line = vec![e.reps.to_string()];
    line.extend(
        [e.freq_mis, e.freq_inv, e.se_mis, e.se_inv, e.freq_best, e.freq_worst, e.se_best, e.se_worst].map(fmt_f64),
    );
    line.push(e.degenerate_resamples.to_string());
    w.write_record(&line).map_err(csv_err)?;
    w.flush()?;
    Ok(())
}

pub fn read_mc_csv<R: std::io::Read>(input: R) -> Result<McEstimate> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(csv_err)?.clone();
    if header.iter().ne(MC_COLUMNS) {
        return Err(Error::Parse("unexpected estimate header".into()));
    }
    let rec = rd
        .records()
        .next()
        .ok_or_else(|| Error::Parse("missing estimate line".into()))?
        .map_err(csv_err)?;
    let int = |k: usize| -> Result<u64> { rec[k].trim().parse().map_err(|_| Error::Parse(format!("bad count {:?}", &rec[k]))) };
    let num = |k: usize| -> Result<f64> { parse_cell(&rec[k])?.ok_or_else(|| Error::Parse("empty cell".into())) };
    Ok(McEstimate {
        reps: int(0)?,
        freq_mis: num(1)?,
        freq_inv: num(2)?,
        se_mis: num(3)?,
        se_inv: num(4)?,
        freq_best: num(5)?,
        freq_worst: num(6)?,
        se_best: num(7)?,
        se_worst: num(8)?,
        degenerate_resamples: int(9)?,
    })
}

/// Welfare-ratio plane: row `a` is `p = a/n`, column `b` is `q = b/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    pub n: usize,
    pub cells: Vec<Vec<Option<f64>>>,
}

/// Header `p,<q values>`, then one line per `p`. Undefined cells are `inf`.
pub fn write_plane_csv<W: std::io::Write>(out: W, plane: &Plane) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let coord = |k: usize| fmt_f64(k as f64 / plane.n as f64);
    let header: Vec<String> = std::iter::once("p".to_string()).chain((0..=plane.n).map(coord)).collect();
    w.write_record(&header).map_err(csv_err)?;
    for (a, row) in plane.cells.iter().enumerate() {
        let line: Vec<String> = std::iter::once(coord(a))
            .chain(row.iter().map(|v| v.map(fmt_f64).unwrap_or_else(|| "inf".into())))
            .collect();
        w.write_record(&line).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_plane_csv<R: std::io::Read>(input: R) -> Result<Plane> {
    let mut rd = csv::Reader::from_reader(input);
    let width = rd.headers().map_err(csv_err)?.len();
    if width < 3 {
        return Err(Error::Parse("plane needs at least 3 columns".into()));
    }
    let n = width - 2;
    let mut cells = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let row = rec
            .iter()
            .skip(1)
            .map(|s| Ok(parse_cell(s)?.filter(|v| v.is_finite())))
            .collect::<Result<Vec<_>>>()?;
        cells.push(row);
    }
    if cells.len() != n + 1 {
        return Err(Error::Parse(format!("plane has {} rows, expected {}", cells.len(), n + 1)));
    }
    Ok(Plane { n, cells })
}

pub fn report_to_json(r: &ConsistencyReport) -> String {
    serde_json::to_string_pretty(r).expect("serializable")
}

pub fn parse_report_json(text: &str) -> Result<ConsistencyReport> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;

    #[test]
    fn game_json() {
        let g = parse_game_json(r#"{"payoff_r": [[3, 0], [0, 2]], "payoff_c": [[2, 0], [0, 3]]}"#).unwrap();
        assert_eq!(g, running_example());
        assert_eq!(parse_game_json(&game_to_json(&g)).unwrap(), g);
        assert!(parse_game_json(r#"{"payoff_r": [[3, 0]], "payoff_c": [[2, 0], [0, 3]]}"#).is_err());
        assert!(parse_game_json(r#"{"payoff_r": [[3, 0], [0, 2]]}"#).is_err());
        assert!(load_game("PD").is_ok());
        assert!(load_game("/nonexistent/game.json").is_err());
    }

    #[test]
    fn noisy_json() {
        let text = r#"{"game": "running-example", "std_r": [[1,1],[1,1]], "std_c": [[1,1],[1,1]], "epsilon": 0.1}"#;
        let ng = parse_noisy_game(text, None).unwrap();
        assert_eq!(ng.game, running_example());
        assert_eq!(ng.spec, NoiseSpec::isotropic(1.0));
        assert_eq!(ng.epsilon.unwrap().value(), 0.1);

        let text = r#"{"game": {"payoff_r": [[2,0],[3,1]], "payoff_c": [[2,3],[0,1]]},
            "mean_r": [[0.5,0],[0,0]], "std_r": [[1,0],[0,0]], "std_c": [[0,0],[0,0]],
            "per_viewer": {"c": {"std_r": [[2,2],[2,2]], "std_c": [[2,2],[2,2]]}}}"#;
        let ng = parse_noisy_game(text, None).unwrap();
        assert_eq!(ng.spec.law(Player::Row).mean_r[0][0], 0.5);
        assert_eq!(ng.spec.law(Player::Col).mean_r[0][0], 0.0);
        assert_eq!(ng.spec.law(Player::Col).std_c[1][1], 2.0);
        assert!(ng.epsilon.is_none());

        for bad in [
            r#"{"game": "pd", "std_r": [[1,1],[1,1]]}"#,
            r#"{"game": "pd", "std_r": [[1,1],[1,1]], "std_c": [[1,1],[1,-1]]}"#,
            r#"{"game": "pd", "std_r": [[1,1],[1,1]], "std_c": [[1,1],[1,1]], "epsilon": -1}"#,
            r#"{"game": "nope.json", "std_r": [[1,1],[1,1]], "std_c": [[1,1],[1,1]]}"#,
            r#"{"game": "pd", "std_r": [[1,1],[1,1]], "std_c": [[1,1],[1,1]], "extra": 1}"#,
        ] {
            assert!(parse_noisy_game(bad, None).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_specs() {
        let g = parse_grid("0.001,0.5:0.5:10").unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.001);
        assert_eq!(g[20], 10.0);
        assert_eq!(parse_grid("1, 2,3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_grid("0.02:0.02:10").unwrap().len(), 500);
        for bad in ["", "a", "1:0:2", "2:1:1", "1:2", "1:1:1:1", "inf", "0:1e-12:1"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn sweep_csv_round_trip() {
        let rows = vec![
            SweepRecord {
                d: 0.001,
                p_mis_theory: Some(0.123456789012345678),
                p_inv_theory: Some(1.0),
                freq_mis: None,
                freq_inv: None,
                se_mis: None,
                se_inv: None,
                freq_best: None,
                freq_worst: None,
                degenerate_resamples: None,
            },
            SweepRecord {
                d: 0.5,
                p_mis_theory: None,
                p_inv_theory: None,
                freq_mis: Some(1.0 / 3.0),
                freq_inv: Some(0.0),
                se_mis: Some(1e-300),
                se_inv: Some(0.0),
                freq_best: Some(0.5),
                freq_worst: Some(0.25),
                degenerate_resamples: Some(3),
            },
        ];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        assert_eq!(read_sweep_csv(buf.as_slice()).unwrap(), rows);
        assert!(read_sweep_csv("x,y\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn mc_csv_round_trip() {
        let e = McEstimate {
            reps: 3000,
            freq_mis: 0.1,
            freq_inv: 2.0 / 3.0,
            freq_best: 1.0,
            freq_worst: 0.0,
            se_mis: 0.005,
            se_inv: 0.0086,
            se_best: 0.0,
            se_worst: 0.0,
            degenerate_resamples: 0,
        };
        let mut buf = Vec::new();
        write_mc_csv(&mut buf, &e).unwrap();
        assert_eq!(read_mc_csv(buf.as_slice()).unwrap(), e);
    }

    #[test]
    fn plane_csv_round_trip() {
        let plane = Plane { n: 2, cells: vec![vec![Some(2.0), None, Some(1.5)]; 3] };
        let mut buf = Vec::new();
        write_plane_csv(&mut buf, &plane).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("inf"));
        assert_eq!(read_plane_csv(buf.as_slice()).unwrap(), plane);
    }
}
