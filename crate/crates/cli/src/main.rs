use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use misgame::formats::{self, Plane, SweepRecord};
use misgame::game::Player;
use misgame::misinfo::{welfare_ratio_plane, NoiseSpec, Tolerance};
use misgame::montecarlo::{estimate, sweep, McConfig, SweepMode};
use misgame::prob::{consistency_probabilities, noise_threshold_scan, RatioForm, ProbConfig};
use misgame::{Bimatrix2x2, Error, Result};

mod example;
mod svg;

#[derive(Parser)]
#[command(name = "misgame", version, about = "2x2 games under Gaussian payoff noise")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Corrected,
    #[value(name = "paper")]
    Literal,
}

impl From<ModeArg> for RatioForm {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Corrected => RatioForm::Corrected,
            ModeArg::Literal => RatioForm::Literal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a game, list its equilibria and price of anarchy.
    Solve {
        /// Built-in name (pd, mp, bos, ww, running-example) or JSON game file.
        #[arg(long)]
        game: String,
    },
    /// Closed-form consistency probabilities of a noisy game, as JSON.
    Analyze {
        #[arg(long)]
        noisy: PathBuf,
        /// Overrides the file's epsilon.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, value_enum, default_value = "corrected")]
        lemma1_mode: ModeArg,
    },
    /// Monte Carlo estimate for a noisy game, as CSV.
    Mc {
        #[arg(long)]
        noisy: PathBuf,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 3000)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probabilities over a grid of noise scales `d`, as CSV.
    Sweep {
        /// Game to perturb with unit noise on every entry.
        #[arg(long, required_unless_present = "noisy_shape", conflicts_with = "noisy_shape")]
        game: Option<String>,
        /// Noisy-game file whose deviations are scaled by each `d`.
        #[arg(long)]
        noisy_shape: Option<PathBuf>,
        #[arg(long, default_value = "0.001,0.5:0.5:10")]
        d_grid: String,
        #[arg(long)]
        epsilon: f64,
        /// Add Monte Carlo columns with this many repetitions per row.
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a line plot.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Welfare ratio SW(opt)/SW(p, q) over the strategy square, as CSV.
    PomPlane {
        #[arg(long)]
        game: String,
        /// Constant added to every payoff first.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        shift: f64,
        #[arg(long)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Noise scales where p_mis crosses a target, as JSON.
    Threshold {
        #[arg(long)]
        noisy_shape: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        target: f64,
        #[arg(long)]
        d_grid: String,
    },
    /// Recompute every number of the worked example.
    Example {
        #[arg(long, value_enum, default_value = "corrected")]
        lemma1_mode: ModeArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn tolerance(flag: Option<f64>, file: Option<Tolerance>) -> Result<Tolerance> {
    match (flag, file) {
        (Some(e), _) => Tolerance::new(e),
        (None, Some(t)) => Ok(t),
        (None, None) => Err(Error::InvalidConfig("no epsilon: pass --epsilon or set it in the file".into())),
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Solve { game } => solve(&formats::load_game(&game)?),
        Command::Analyze { noisy, epsilon, lemma1_mode } => {
            let ng = formats::load_noisy_game(&noisy)?;
            let eps = tolerance(epsilon, ng.epsilon)?;
            let cfg = ProbConfig::from_env(lemma1_mode.into())?;
            let report = consistency_probabilities(&ng.game, &ng.spec, eps, &cfg)?;
            println!("{}", formats::report_to_json(&report));
            Ok(())
        }
        Command::Mc { noisy, epsilon, reps, seed, out } => {
            let ng = formats::load_noisy_game(&noisy)?;
            let eps = tolerance(epsilon, ng.epsilon)?;
            let cfg = McConfig { reps, seed, ..Default::default() };
            let est = estimate(&ng.game, &ng.spec, eps, &cfg)?;
            let mut w = output(&out)?;
            formats::write_mc_csv(&mut w, &est)?;
            w.flush()?;
            Ok(())
        }
        Command::Sweep { game, noisy_shape, d_grid, epsilon, mc, seed, out, svg } => {
            let (g, shape) = match (game, noisy_shape) {
                (Some(name), _) => (formats::load_game(&name)?, NoiseSpec::isotropic(1.0)),
                (None, Some(path)) => {
                    let ng = formats::load_noisy_game(&path)?;
                    (ng.game, ng.spec)
                }
                (None, None) => unreachable!("clap requires one"),
            };
            let grid = formats::parse_grid(&d_grid)?;
            let eps = Tolerance::new(epsilon)?;
            let mode = if mc.is_some() { SweepMode::Both } else { SweepMode::Theory };
            let mc_cfg = McConfig { reps: mc.unwrap_or(1), seed, ..Default::default() };
            let rows = sweep(&g, &shape, eps, &grid, &mc_cfg, &ProbConfig::from_env(RatioForm::Corrected)?, mode)?;
            let records: Vec<SweepRecord> = rows.iter().map(SweepRecord::from).collect();
            let mut w = output(&out)?;
            formats::write_sweep_csv(&mut w, &records)?;
            w.flush()?;
            if let Some(path) = svg {
                write_file(&path, &svg::sweep_plot(&records))?;
            }
            Ok(())
        }
        Command::PomPlane { game, shift, resolution, out } => {
            let g = formats::load_game(&game)?.shift(shift);
            let cells = welfare_ratio_plane(&g, resolution)?;
            let mut w = output(&out)?;
            formats::write_plane_csv(&mut w, &Plane { n: resolution, cells })?;
            w.flush()?;
            Ok(())
        }
        Command::Threshold { noisy_shape, epsilon, target, d_grid } => {
            let ng = formats::load_noisy_game(&noisy_shape)?;
            let grid = formats::parse_grid(&d_grid)?;
            let eps = Tolerance::new(epsilon)?;
            let cfg = ProbConfig::from_env(RatioForm::Corrected)?;
            let crossings = noise_threshold_scan(&ng.game, &ng.spec, eps, target, &grid, &cfg)?;
            let out = serde_json::json!({ "target": target, "epsilon": epsilon, "crossings": crossings });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            Ok(())
        }
        Command::Example { lemma1_mode } => {
            let cfg = ProbConfig::from_env(lemma1_mode.into())?;
            print!("{}", example::render(&cfg)?);
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn solve(g: &Bimatrix2x2) -> Result<()> {
    for x in Player::BOTH {
        println!("class {x}: {}", g.classify_player(x)?.label());
    }
    if g.is_degenerate() {
        println!("equilibria: every profile (degenerate game)");
    } else {
        let ne = g.enumerate_nash()?;
        println!("equilibria: {}", ne.len());
        for s in &ne {
            println!("  {s}  SW = {}", g.social_welfare(s));
        }
    }
    let (best, w) = g.optimal_welfare();
    println!("SW(opt) = {w} at {best}");
    match g.price_of_anarchy() {
        Ok(poa) => println!("PoA = {poa}"),
        Err(Error::UndefinedRatio(_)) => println!("PoA undefined: zero-sum"),
        Err(e) => return Err(e),
    }
    Ok(())
}
