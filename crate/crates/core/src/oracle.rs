//! Brute-force reference implementations for cross-checking.
//!
//! Nothing here shares numeric code with [`quadrature`](crate::quadrature)
//! or [`radical`](crate::radical): the Riemann sum is a plain midpoint rule
//! with compensated summation, and the chord sampler tests the secant
//! inequality directly at random points. Random draws come from a seeded
//! ChaCha stream, so any failure replays exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::funcspec::FunctionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub panels: usize,
    pub chord_samples: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { panels: 1_000_000, chord_samples: 10_000, seed: 0 }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.panels < 10 {
            return Err(Error::invalid("oracle needs at least 10 panels"));
        }
        if self.chord_samples < 1 {
            return Err(Error::invalid("oracle needs at least one chord sample"));
        }
        Ok(())
    }
}

/// Midpoint-rule sum of `f` over `panels` equal panels of `[a, b]`.
pub fn riemann<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(a <= b, "riemann: a must not exceed b");
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    // Neumaier summation
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    for i in 0..panels {
        let v = f(a + (i as f64 + 0.5) * h);
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    (sum + comp) * (b - a) / panels as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordVerdict {
    pub pass: bool,
    /// Most negative `(1-t)g(a) + t g(b) - g((1-t)a + tb)`, divided by
    /// `max(1, g(x_max))`.
    pub worst: f64,
    pub witness: (f64, f64, f64),
}

/// Secant test of `g(u) = f(u^{1/p})` at `samples` random `(a, b, t)` in
/// `[0, x_max]² × [0, 1]`, with the same scaled tolerance as the grid test.
pub fn chord_convexity(
    f: &FunctionSpec,
    p: f64,
    x_max: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<ChordVerdict, Error> {
    if !(p >= 1.0) {
        return Err(Error::invalid("radical order p must be >= 1"));
    }
    let g = |u: f64| f.evaluate(libm::pow(u, 1.0 / p));
    let norm = g(x_max)?.abs().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut witness = (0.0, 0.0, 0.0);
    for _ in 0..samples.max(1) {
        let a: f64 = rng.gen::<f64>() * x_max;
        let b: f64 = rng.gen::<f64>() * x_max;
        let t: f64 = rng.gen();
        let gap = ((1.0 - t) * g(a)? + t * g(b)? - g((1.0 - t) * a + t * b)?) / norm;
        if gap < worst {
            worst = gap;
            witness = (a, b, t);
        }
    }
    Ok(ChordVerdict { pass: worst >= -tol, worst, witness })
}
