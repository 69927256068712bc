#![allow(dead_code)]

use misgame::{Bimatrix2x2, Matrix2, NoiseLaw, NoiseSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn matrix(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Matrix2 {
    let mut m = [[0.0; 2]; 2];
    for v in m.iter_mut().flatten() {
        *v = rng.random_range(lo..hi);
    }
    m
}

pub fn int_matrix(rng: &mut ChaCha8Rng, k: i32) -> Matrix2 {
    let mut m = [[0.0; 2]; 2];
    for v in m.iter_mut().flatten() {
        *v = rng.random_range(-k..=k) as f64;
    }
    m
}

pub fn game(rng: &mut ChaCha8Rng) -> Bimatrix2x2 {
    Bimatrix2x2::new(matrix(rng, -5.0, 5.0), matrix(rng, -5.0, 5.0)).unwrap()
}

pub fn law(rng: &mut ChaCha8Rng) -> NoiseLaw {
    NoiseLaw {
        mean_r: matrix(rng, -1.0, 1.0),
        mean_c: matrix(rng, -1.0, 1.0),
        std_r: matrix(rng, 0.1, 3.0),
        std_c: matrix(rng, 0.1, 3.0),
    }
}

/// Independent random laws for the two viewers.
pub fn spec(rng: &mut ChaCha8Rng) -> NoiseSpec {
    NoiseSpec { view_r: law(rng), view_c: law(rng) }
}

/// Game where every strategy of both players is an equilibrium: row's rows
/// are equal, column's gains have opposite signs.
pub fn infinite_nash_game(rng: &mut ChaCha8Rng) -> Bimatrix2x2 {
    let a: f64 = rng.random_range(-5.0..5.0);
    let b: f64 = rng.random_range(-5.0..5.0);
    let g1: f64 = rng.random_range(0.1..3.0);
    let g2: f64 = -rng.random_range(0.1..3.0);
    let c0: f64 = rng.random_range(-5.0..5.0);
    let c1: f64 = rng.random_range(-5.0..5.0);
    Bimatrix2x2::new([[a, b], [a, b]], [[c0 + g1, c0], [c1 + g2, c1]]).unwrap()
}
