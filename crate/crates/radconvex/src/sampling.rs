//! Seeded random instances for `verify --samples`.
//!
//! All instances are drawn up front from one ChaCha8 stream, so a batch is
//! reproducible however the evaluation is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use radconvex_core::FunctionSpec;

use crate::args::Theorem;

/// Parameters of one instance; each theorem reads the fields it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub x: f64,
    pub weights: Vec<f64>,
    pub points: Vec<f64>,
    /// Bracket end for inverting `f` (AM-GM only).
    pub x_hi: f64,
}

const MAX_POINTS: usize = 8;
/// Interval ends and positive points keep at least this fraction of the range.
const MIN_GAP: f64 = 1e-3;

/// Symmetric Dirichlet(1) weights by normalised exponentials.
pub fn dirichlet<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln() + f64::MIN_POSITIVE).collect();
    let total: f64 = e.iter().sum();
    let mut w: Vec<f64> = e.iter().map(|v| v / total).collect();
    // Put the rounding residue on the last weight so the sum is 1 to an ulp.
    let head: f64 = w[..n - 1].iter().sum();
    w[n - 1] = (1.0 - head).max(0.0);
    w
}

fn interval<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> (f64, f64) {
    loop {
        let x1 = rng.gen_range(lo..hi);
        let x2 = rng.gen_range(lo..hi);
        let (a, b) = (x1.min(x2), x1.max(x2));
        if b - a > MIN_GAP * hi {
            return (a, b);
        }
    }
}

/// `n` instances for `theorem` with every argument in `[0, hi]`.
pub fn draw(theorem: Theorem, f: &FunctionSpec, hi: f64, n: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut i = Instance {
                a: 0.0,
                b: 0.0,
                t: rng.gen(),
                x: rng.gen_range(MIN_GAP * hi..hi),
                weights: Vec::new(),
                points: Vec::new(),
                x_hi: hi,
            };
            match theorem {
                Theorem::Jensen | Theorem::Amgm => {
                    let k = rng.gen_range(2..=MAX_POINTS);
                    i.weights = dirichlet(&mut rng, k);
                    i.points = (0..k).map(|_| rng.gen_range(0.0..hi)).collect();
                    if theorem == Theorem::Amgm {
                        // AM-GM points are values of f, so the inverse exists on [0, hi].
                        i.points = i
                            .points
                            .iter()
                            .map(|&y| f.evaluate(y.max(MIN_GAP * hi)).unwrap_or(f64::NAN))
                            .collect();
                    }
                }
                Theorem::Superadd => {
                    i.a = rng.gen_range(0.0..0.5 * hi);
                    i.b = rng.gen_range(0.0..0.5 * hi);
                }
                Theorem::Hardy | Theorem::Cjensen => (i.a, i.b) = interval(&mut rng, MIN_GAP * hi, hi),
                t if t.is_integral() => (i.a, i.b) = interval(&mut rng, 0.0, hi),
                _ => {
                    i.a = rng.gen_range(0.0..hi);
                    i.b = rng.gen_range(0.0..hi);
                }
            }
            i
        })
        .collect()
}
