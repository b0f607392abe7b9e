//! Finite check of the scaling step `n̄·x + T^j(n̄·z) = n̄·(x + T^j z)`.
//!
//! The identity holds whenever `n̄` is constant and fails in general.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tuple::{componentwise_add, componentwise_mul, tetris_shift_pow, KTuple};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ScalingCheck {
    Pass,
    Counterexample { left: KTuple, right: KTuple },
}

impl ScalingCheck {
    pub fn passed(&self) -> bool {
        matches!(self, ScalingCheck::Pass)
    }
}

pub fn check_scaling_identity(
    nbar: &KTuple,
    x: &KTuple,
    z: &KTuple,
    shift: usize,
) -> Result<ScalingCheck> {
    let k = nbar.dim();
    for t in [x, z] {
        if t.dim() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: t.dim(),
            });
        }
    }
    if shift >= k {
        return Err(Error::ShiftOutOfRange { shift, dim: k });
    }
    let left = componentwise_add(
        &componentwise_mul(nbar, x)?,
        &tetris_shift_pow(&componentwise_mul(nbar, z)?, shift),
    )?;
    let right = componentwise_mul(nbar, &componentwise_add(x, &tetris_shift_pow(z, shift))?)?;
    Ok(if left == right {
        ScalingCheck::Pass
    } else {
        ScalingCheck::Counterexample { left, right }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingCounterexample {
    pub nbar: KTuple,
    pub x: KTuple,
    pub z: KTuple,
    pub shift: usize,
    pub left: KTuple,
    pub right: KTuple,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScalingSweep {
    pub checked: usize,
    pub passed: usize,
    pub constant_checked: usize,
    pub constant_passed: usize,
    pub counterexamples: Vec<ScalingCounterexample>,
}

/// Exhaustive sweep: `n̄ ∈ {1..=max}^k`, `x, z ∈ {0..=max}^k`, and every shift
/// in `shifts` (all `0..k` when `None`). Counterexamples come out in
/// lexicographic order of `(n̄, x, z, j)`.
pub fn sweep_scaling_identity(
    k: usize,
    max: u64,
    shifts: Option<&[usize]>,
) -> Result<ScalingSweep> {
    if k == 0 {
        return Err(Error::EmptyTuple);
    }
    let all: Vec<usize> = (0..k).collect();
    let shifts = shifts.unwrap_or(&all);
    if let Some(&bad) = shifts.iter().find(|&&j| j >= k) {
        return Err(Error::ShiftOutOfRange { shift: bad, dim: k });
    }
    let scalings = grid(k, 1, max);
    let points = grid(k, 0, max);
    let mut sweep = ScalingSweep::default();
    for nbar in &scalings {
        let constant = nbar.is_constant();
        for x in &points {
            for z in &points {
                for &j in shifts {
                    let outcome = check_scaling_identity(nbar, x, z, j)?;
                    sweep.checked += 1;
                    if constant {
                        sweep.constant_checked += 1;
                    }
                    match outcome {
                        ScalingCheck::Pass => {
                            sweep.passed += 1;
                            if constant {
                                sweep.constant_passed += 1;
                            }
                        }
                        ScalingCheck::Counterexample { left, right } => {
                            sweep.counterexamples.push(ScalingCounterexample {
                                nbar: nbar.clone(),
                                x: x.clone(),
                                z: z.clone(),
                                shift: j,
                                left,
                                right,
                            })
                        }
                    }
                }
            }
        }
    }
    Ok(sweep)
}

/// `{lo..=hi}^k` in lexicographic order.
fn grid(k: usize, lo: u64, hi: u64) -> Vec<KTuple> {
    let mut out = Vec::new();
    if hi < lo {
        return out;
    }
    let mut cur = vec![lo; k];
    loop {
        out.push(KTuple::new(cur.clone()).expect("k > 0"));
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] < hi {
                cur[pos] += 1;
                break;
            }
            cur[pos] = lo;
        }
    }
}
