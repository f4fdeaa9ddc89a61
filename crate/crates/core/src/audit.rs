//! Data-parallel drivers for the randomized inequality audit and the
//! radius sweeps. With the default `parallel` feature these fan out over
//! rayon; the `*_seq` entry points always run sequentially and exist both
//! as the fallback and for benchmark comparison. Outputs are identical
//! either way: every sample draws its own generator seeded by
//! `seed ^ index`, and results are reduced in index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::contact_frame::{standard_frame, ShapeOperator};
use crate::curvature::CurvaturePoint;
use crate::error::Error;
use crate::models::{validate_family, ModelKind, ModelSpec, Space};
use crate::numerics::SymMatrix;

/// Default audit seed; reproducibility is part of the output contract.
pub const DEFAULT_SEED: u64 = 0xDE17A;

/// Gap below which a sample counts as violating the bound. Strictly looser
/// than roundoff on O(1) data.
pub const VIOLATION_THRESHOLD: f64 = -1e-9;

/// Draws the `index`-th random shape operator of a seeded audit stream:
/// entries i.i.d. uniform on [-2, 2], symmetrized, generator seeded per
/// sample so parallel and sequential runs agree.
pub fn random_shape_operator(n: usize, seed: u64, index: u64) -> ShapeOperator {
    let frame = standard_frame(n).expect("audit dimensions are >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index);
    let a = SymMatrix::from_fn(frame.m(), |_, _| rng.gen_range(-2.0..=2.0))
        .expect("frame dimension is valid");
    ShapeOperator::new(frame, a).expect("dimensions agree")
}

/// Summary of a randomized inequality audit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditSummary {
    pub c: f64,
    pub samples: usize,
    pub min_gap: f64,
    pub violations: usize,
}

fn gap_sample(n: usize, c: f64, seed: u64, index: u64) -> f64 {
    let s = random_shape_operator(n, seed, index);
    CurvaturePoint::new(s, c).expect("audit c is +-1").delta_report(1e-9).gap
}

fn summarize(c: f64, gaps: &[f64]) -> AuditSummary {
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let violations = gaps.iter().filter(|&&gap| gap < VIOLATION_THRESHOLD).count();
    AuditSummary { c, samples: gaps.len(), min_gap, violations }
}

/// Audits `samples` random shape operators against the bound; parallel
/// under the `parallel` feature.
pub fn random_gap_audit(n: usize, c: f64, samples: usize, seed: u64) -> AuditSummary {
    #[cfg(feature = "parallel")]
    let gaps: Vec<f64> =
        (0..samples as u64).into_par_iter().map(|i| gap_sample(n, c, seed, i)).collect();
    #[cfg(not(feature = "parallel"))]
    let gaps: Vec<f64> = (0..samples as u64).map(|i| gap_sample(n, c, seed, i)).collect();
    summarize(c, &gaps)
}

/// Sequential twin of [`random_gap_audit`]; same output bit-for-bit.
pub fn random_gap_audit_seq(n: usize, c: f64, samples: usize, seed: u64) -> AuditSummary {
    let gaps: Vec<f64> = (0..samples as u64).map(|i| gap_sample(n, c, seed, i)).collect();
    summarize(c, &gaps)
}

/// Gap of a catalog model as a function of radius, over a uniform grid;
/// radii where the model is undefined (pole of the curvature functions)
/// report NaN. Parallel under the `parallel` feature, in index order.
pub fn radius_sweep(
    space: Space,
    kind: ModelKind,
    n: usize,
    r_min: f64,
    r_max: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>, Error> {
    validate_family(space, kind, n)?;
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) || steps < 1 {
        return Err(Error::InvalidModel(format!(
            "bad sweep range [{r_min}, {r_max}] with {steps} steps"
        )));
    }
    let grid_gap = move |i: usize| -> (f64, f64) {
        let r = r_min + (r_max - r_min) * i as f64 / steps as f64;
        let gap = ModelSpec::new(space, kind, n, Some(r))
            .map(|m| m.classify_ideal(1e-9).gap)
            .unwrap_or(f64::NAN);
        (r, gap)
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<(f64, f64)> = (0..=steps).into_par_iter().map(grid_gap).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<(f64, f64)> = (0..=steps).map(grid_gap).collect();
    Ok(rows)
}

/// Sequential twin of [`radius_sweep`].
pub fn radius_sweep_seq(
    space: Space,
    kind: ModelKind,
    n: usize,
    r_min: f64,
    r_max: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>, Error> {
    validate_family(space, kind, n)?;
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) || steps < 1 {
        return Err(Error::InvalidModel(format!(
            "bad sweep range [{r_min}, {r_max}] with {steps} steps"
        )));
    }
    Ok((0..=steps)
        .map(|i| {
            let r = r_min + (r_max - r_min) * i as f64 / steps as f64;
            let gap = ModelSpec::new(space, kind, n, Some(r))
                .map(|m| m.classify_ideal(1e-9).gap)
                .unwrap_or(f64::NAN);
            (r, gap)
        })
        .collect())
}
