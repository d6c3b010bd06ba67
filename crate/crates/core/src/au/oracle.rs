//! Direct numerical maximization of entropy over the credal set, used to
//! cross-check [`super::au`].
//!
//! * Grid mode searches a lattice on the probability simplex, accepting
//!   points whose dominance violations stay within the lattice resolution,
//!   then zooms in around the best point with a halving step.
//! * Ascent mode works on allocations (one simplex per focal element) and
//!   maximizes block by block: for each focal set, its mass is water-filled
//!   onto the currently least probable elements. Several random starts are
//!   run and the best value is kept.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::credal::sample_allocation;
use crate::error::{Error, Result};
use crate::evidence::{belief_from_mass, entropy_bits, MassFunction};
use crate::frame::SubsetMask;
use crate::lattice::subset_sums;

/// Largest frame the grid search accepts.
pub const GRID_MAX_FRAME: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridParams {
    /// Divisions of the unit interval on the initial full-simplex lattice.
    pub divisions: usize,
    /// Zooming stops once the step is at or below this.
    pub final_step: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            divisions: 40,
            final_step: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentParams {
    pub starts: usize,
    pub seed: u64,
    pub max_sweeps: usize,
    /// A start has converged when no probability moves by more than this in a sweep.
    pub tolerance: f64,
}

impl Default for AscentParams {
    fn default() -> Self {
        AscentParams {
            starts: 6,
            seed: 0,
            max_sweeps: 200_000,
            tolerance: 1e-14,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleMode {
    Grid(GridParams),
    Ascent(AscentParams),
}

impl OracleMode {
    pub fn grid() -> Self {
        OracleMode::Grid(GridParams::default())
    }

    pub fn ascent() -> Self {
        OracleMode::Ascent(AscentParams::default())
    }
}

pub fn au_oracle(m: &MassFunction, mode: OracleMode) -> Result<f64> {
    match mode {
        OracleMode::Grid(params) => grid_search(m, params),
        OracleMode::Ascent(params) => Ok(block_ascent(m, params)),
    }
}

struct GridProblem {
    bel: Vec<f64>,
}

impl GridProblem {
    /// Entropy of `q` when every dominance violation is within `slack`.
    fn score(&self, q: &[f64], slack: f64) -> Option<f64> {
        let sums = subset_sums(q);
        sums.iter()
            .zip(&self.bel)
            .all(|(p, b)| *p >= b - slack)
            .then(|| entropy_bits(q))
    }

    fn consider(&self, q: &[f64], slack: f64, best: &mut Option<(f64, Vec<f64>)>) {
        if let Some(h) = self.score(q, slack) {
            if best.as_ref().is_none_or(|(bh, _)| h > *bh) {
                *best = Some((h, q.to_vec()));
            }
        }
    }
}

fn grid_search(m: &MassFunction, params: GridParams) -> Result<f64> {
    let n = m.frame().len();
    if n > GRID_MAX_FRAME {
        return Err(Error::Capacity {
            size: n,
            limit: GRID_MAX_FRAME,
        });
    }
    if n == 1 {
        return Ok(0.0);
    }
    let problem = GridProblem {
        bel: belief_from_mass(m).values().to_vec(),
    };

    // Full lattice {c / k : Σ c = k}.
    let k = params.divisions.max(1);
    let mut step = 1.0 / k as f64;
    let mut best = None;
    let mut counts = vec![0usize; n];
    let mut q = vec![0.0; n];
    enumerate_compositions(k, 0, &mut counts, &mut |c| {
        for (qi, &ci) in q.iter_mut().zip(c) {
            *qi = ci as f64 / k as f64;
        }
        problem.consider(&q, n as f64 * step, &mut best);
    });
    let (mut value, mut center) = best.ok_or_else(no_point)?;

    // Zoom: the relaxed optimum at step h lies within (n+1)·h of the center.
    let reach = 2 * (n + 1) as i64;
    while step > params.final_step {
        step /= 2.0;
        let slack = n as f64 * step;
        let mut best = None;
        let mut offsets = vec![-reach; n - 1];
        loop {
            let mut rest = 1.0;
            let mut inside = true;
            for i in 0..n - 1 {
                q[i] = center[i] + offsets[i] as f64 * step;
                inside &= (0.0..=1.0).contains(&q[i]);
                rest -= q[i];
            }
            q[n - 1] = rest;
            if inside && (-1e-15..=1.0).contains(&rest) {
                q[n - 1] = rest.max(0.0);
                problem.consider(&q, slack, &mut best);
            }
            if !advance(&mut offsets, reach) {
                break;
            }
        }
        let (v, c) = best.ok_or_else(no_point)?;
        value = v;
        center = c;
    }
    Ok(value)
}

fn no_point() -> Error {
    Error::InvalidProbability("grid search found no admissible point".into())
}

fn enumerate_compositions(
    remaining: usize,
    index: usize,
    counts: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if index == counts.len() - 1 {
        counts[index] = remaining;
        visit(counts);
        return;
    }
    for c in 0..=remaining {
        counts[index] = c;
        enumerate_compositions(remaining - c, index + 1, counts, visit);
    }
}

/// Odometer over `[-reach, reach]^d`; false once it wraps around.
fn advance(offsets: &mut [i64], reach: i64) -> bool {
    for o in offsets.iter_mut() {
        if *o < reach {
            *o += 1;
            return true;
        }
        *o = -reach;
    }
    false
}

fn block_ascent(m: &MassFunction, params: AscentParams) -> f64 {
    let n = m.frame().len();
    let focal: Vec<(SubsetMask, f64)> = m.focal().collect();
    let members: Vec<Vec<usize>> = focal.iter().map(|(s, _)| s.indices().collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut best = 0.0f64;
    for _ in 0..params.starts.max(1) {
        let start = sample_allocation(m, &mut rng);
        // shares[k][j] is the share of focal k on its j-th element.
        let mut shares: Vec<Vec<f64>> = focal
            .iter()
            .zip(&members)
            .map(|((set, _), xs)| xs.iter().map(|&x| start.share(*set, x)).collect())
            .collect();
        let mut p = vec![0.0; n];
        for (xs, sh) in members.iter().zip(&shares) {
            for (&x, &a) in xs.iter().zip(sh) {
                p[x] += a;
            }
        }

        let mut base = Vec::new();
        for _ in 0..params.max_sweeps {
            let mut moved = 0.0f64;
            for (k, (_, mass)) in focal.iter().enumerate() {
                let xs = &members[k];
                base.clear();
                base.extend(xs.iter().zip(&shares[k]).map(|(&x, &a)| p[x] - a));
                let level = water_level(&base, *mass);
                for (j, &x) in xs.iter().enumerate() {
                    let share = (level - base[j]).max(0.0);
                    moved = moved.max((share - shares[k][j]).abs());
                    shares[k][j] = share;
                    p[x] = base[j] + share;
                }
            }
            if moved <= params.tolerance {
                break;
            }
        }
        best = best.max(entropy_bits(&p));
    }
    best
}

/// The level `λ` with `Σ max(0, λ − base_i) = mass`.
fn water_level(base: &[f64], mass: f64) -> f64 {
    let mut sorted = base.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut filled = 0.0;
    for (j, &b) in sorted.iter().enumerate() {
        filled += b;
        let level = (mass + filled) / (j + 1) as f64;
        if j + 1 == sorted.len() || level <= sorted[j + 1] {
            return level;
        }
    }
    unreachable!("non-empty focal set")
}
