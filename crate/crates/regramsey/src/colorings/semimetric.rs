//! Orbit semi-metrics over a g-step hierarchy and the coloring `Pr(I, D)`.
//!
//! Fix a base point `mu` and a working interval `[mu, end)`. The level-i
//! orbit is the sequence `f_i^{(l)}(mu)`; the semi-metric `d_i(m, n)` counts
//! orbit points in the half-open range `(m, n]`. `I(m, n)` is the deepest
//! level with a positive count and `D(m, n)` that count; the coloring is the
//! pairing value `Pr(I, D)`.
//!
//! Levels are cached bottom-up. Every level-(i+1) orbit point is itself a
//! level-i orbit point, so each new orbit is built by index jumps inside the
//! previous one: from position `p`, the successor sits `step(x)` positions
//! further. Queries then reduce to binary searches over the cached tables.

use super::{assert_domain, BoundFn, ColoringError, ColoringSpec, PairColoring};
use crate::arith::{iroot, pair_encode};
use num_bigint::BigUint;
use num_traits::Zero;

/// Cached orbit tables for one bound function, base point and interval.
pub struct SemiMetricContext {
    g: BoundFn,
    mu: u64,
    end: u64,
    /// `orbits[i - 1]` holds the level-i orbit points within `[mu, end)`.
    orbits: Vec<Vec<u64>>,
}

impl SemiMetricContext {
    /// Build the orbit cache for `[mu, end)`.
    ///
    /// Levels are cached until an orbit's first move already leaves the
    /// interval. An orbit that stalls strictly inside the interval (step 0
    /// at a point above `mu`) would make the counts infinite and is
    /// rejected.
    pub fn build(g: BoundFn, mu: u64, end: u64) -> Result<Self, ColoringError> {
        if mu >= end {
            return Err(ColoringError::BadParams(format!(
                "empty working interval [{mu},{end})"
            )));
        }
        let mut orbits: Vec<Vec<u64>> = vec![(mu..end).collect()];
        loop {
            let prev = orbits.last().unwrap();
            let level = orbits.len() as u64 + 1;
            let mut orbit = vec![mu];
            let mut pos = 0usize;
            loop {
                let x = prev[pos];
                let step = step_count(&g, x);
                if step.is_zero() {
                    if pos == 0 {
                        // the whole orbit is the base point; harmless, the
                        // level contributes empty counts
                        break;
                    }
                    return Err(ColoringError::StalledOrbit { level, point: x });
                }
                let remaining = BigUint::from((prev.len() - 1 - pos) as u64);
                if step > remaining {
                    break; // next point lies beyond the interval
                }
                pos += u64::try_from(&step).unwrap() as usize;
                orbit.push(prev[pos]);
            }
            if orbit.len() <= 1 {
                break;
            }
            orbits.push(orbit);
        }
        Ok(SemiMetricContext { g, mu, end, orbits })
    }

    pub fn bound(&self) -> &BoundFn {
        &self.g
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn end(&self) -> u64 {
        self.end
    }

    /// Deepest level with a cached orbit reaching past the base point.
    pub fn max_level(&self) -> u64 {
        self.orbits.len() as u64
    }

    /// Cached level-i orbit points within the interval.
    pub fn orbit(&self, i: u64) -> &[u64] {
        &self.orbits[(i - 1) as usize]
    }

    /// `d_i(m, n)`: level-i orbit points in `(m, n]`; `mu <= m <= n < end`.
    pub fn d(&self, i: u64, m: u64, n: u64) -> Result<u64, ColoringError> {
        assert!(i >= 1, "semi-metric level must be >= 1");
        if !(self.mu <= m && m <= n && n < self.end) {
            return Err(ColoringError::OutOfDomain {
                m,
                n,
                lo: self.mu,
                hi: self.end,
            });
        }
        if i > self.max_level() {
            return Ok(0);
        }
        let orbit = self.orbit(i);
        let upto_n = orbit.partition_point(|&x| x <= n);
        let upto_m = orbit.partition_point(|&x| x <= m);
        Ok((upto_n - upto_m) as u64)
    }

    /// `(I, D)`: the deepest level with a positive count between `m` and
    /// `n`, and that count. `I >= 1` always, since the level-1 count is
    /// `n - m`.
    pub fn i_and_d(&self, m: u64, n: u64) -> Result<(u64, u64), ColoringError> {
        if !(self.mu <= m && m < n && n < self.end) {
            return Err(ColoringError::OutOfDomain {
                m,
                n,
                lo: self.mu,
                hi: self.end,
            });
        }
        for i in (1..=self.max_level()).rev() {
            let d = self.d(i, m, n)?;
            if d > 0 {
                return Ok((i, d));
            }
        }
        unreachable!("level-1 distance n - m is positive for m < n")
    }

    /// The color `Pr(I, D)`.
    pub fn color(&self, m: u64, n: u64) -> Result<u64, ColoringError> {
        let (i, d) = self.i_and_d(m, n)?;
        Ok(pair_encode(i, d))
    }
}

/// `floor(isqrt(g(x)) / 2)`, exactly.
fn step_count(g: &BoundFn, x: u64) -> BigUint {
    iroot(&g.eval_big(&BigUint::from(x)), 2) / 2u32
}

/// The orbit coloring as a [`PairColoring`] over `[mu, end)`.
pub struct OrbitColoring {
    ctx: SemiMetricContext,
    spec: ColoringSpec,
}

impl OrbitColoring {
    pub fn new(ctx: SemiMetricContext, spec: ColoringSpec) -> Self {
        OrbitColoring { ctx, spec }
    }

    pub fn semimetric(&self) -> &SemiMetricContext {
        &self.ctx
    }
}

impl PairColoring for OrbitColoring {
    fn domain(&self) -> (u64, u64) {
        (self.ctx.mu, self.ctx.end)
    }
    fn color(&self, m: u64, n: u64) -> u64 {
        assert_domain(self.ctx.mu, self.ctx.end, m, n);
        self.ctx.color(m, n).unwrap()
    }
    fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(&self.spec).unwrap()
    }
}
