//! Pair-coloring constructions and the bound-function mini-language.
//!
//! A [`PairColoring`] is a total, deterministic color rule on ordered pairs
//! `m < n` of a half-open domain interval. A coloring is *g-regressive* when
//! `color(m, n) <= g(m)` for every domain pair; [`verify_regressive`] checks
//! that exhaustively.

mod semimetric;
mod witness;

pub use semimetric::{OrbitColoring, SemiMetricContext};
pub use witness::{SmallIntervalColoring, WitnessGraph, WITNESS_VERTICES};

use crate::arith::{ilog, ilog_u64, iroot, iroot_u64, pair_encode};
use crate::hierarchy::{fg_eval, mu_g, EvalContext, EvalError, Schedule, ScheduleError};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("pair ({m},{n}) outside coloring domain [{lo},{hi})")]
    OutOfDomain { m: u64, n: u64, lo: u64, hi: u64 },
    #[error("orbit of level {level} stalls at {point}: step is 0 inside the working interval")]
    StalledOrbit { level: u64, point: u64 },
    #[error("no base point: g never reaches step {k} below {limit}")]
    NoBasePoint { k: u64, limit: u64 },
    #[error("interval end saturates the cap; choose a smaller k or a larger cap")]
    EndSaturates,
    #[error(
        "piece {index} covers [{got_lo},{got_hi}) but interval {index} is [{want_lo},{want_hi})"
    )]
    PieceDomainMismatch {
        index: usize,
        got_lo: u64,
        got_hi: u64,
        want_lo: u64,
        want_hi: u64,
    },
    #[error("witness file: {0}")]
    BadWitnessFile(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Inner slow-growing factor of the log-quotient bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlowFn {
    /// Iterated-logarithm count: times `lg` must be applied to fall to 1.
    LogStar,
    /// A fixed positive value.
    Constant(u64),
}

impl SlowFn {
    pub fn eval(&self, n: u64) -> u64 {
        match self {
            SlowFn::LogStar => {
                let mut v = n;
                let mut count = 0;
                while v > 1 {
                    v = ilog_u64(v, 2);
                    count += 1;
                }
                count.max(1)
            }
            SlowFn::Constant(c) => *c,
        }
    }
}

/// Symbolic description of a regressiveness bound `g`.
///
/// Every variant is total on the naturals and returns a natural, except
/// that the schedule-root bound is only defined inside its schedule range.
/// The log-quotient bound is `floor(lg n / (f(n) * floor(lg lg n)))` for
/// `n >= 4` and `0` below; the schedule-root bound is
/// `floor(n^(1/beta(n)))` for the schedule's step function `beta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFn {
    Constant(u64),
    Identity,
    /// `n -> floor(n^(1/t))`
    RootPower(u32),
    /// `n -> n^j`
    Power(u32),
    LogQuotient(SlowFn),
    ScheduleRoot(Schedule),
}

impl BoundFn {
    pub fn eval_u64(&self, n: u64) -> u64 {
        match self {
            BoundFn::Constant(c) => *c,
            BoundFn::Identity => n,
            BoundFn::RootPower(t) => iroot_u64(n, *t),
            BoundFn::Power(j) => n.checked_pow(*j).unwrap_or(u64::MAX),
            BoundFn::LogQuotient(f) => {
                if n < 4 {
                    return 0;
                }
                let lg = ilog_u64(n, 2);
                let lglg = ilog_u64(lg, 2);
                lg / (f.eval(n).max(1) * lglg.max(1))
            }
            BoundFn::ScheduleRoot(schedule) => {
                let beta = schedule
                    .beta_of(n)
                    .expect("schedule-root bound queried outside its schedule range");
                iroot_u64(n, u32::try_from(beta).expect("beta exceeds u32"))
            }
        }
    }

    pub fn eval_big(&self, n: &BigUint) -> BigUint {
        match self {
            BoundFn::Constant(c) => BigUint::from(*c),
            BoundFn::Identity => n.clone(),
            BoundFn::RootPower(t) => iroot(n, *t),
            BoundFn::Power(j) => n.pow(*j),
            BoundFn::LogQuotient(f) => {
                if *n < BigUint::from(4u32) {
                    return BigUint::zero();
                }
                let lg = ilog(n, 2);
                let lglg = ilog_u64(lg.max(1), 2);
                let inner = match f {
                    SlowFn::LogStar => {
                        // one application of lg lands in u64 range
                        let mut count = 1u64;
                        let mut v = lg;
                        while v > 1 {
                            v = ilog_u64(v, 2);
                            count += 1;
                        }
                        count
                    }
                    SlowFn::Constant(c) => *c,
                };
                BigUint::from(lg / (inner.max(1) * lglg.max(1)))
            }
            BoundFn::ScheduleRoot(_) => {
                let small = u64::try_from(n)
                    .expect("schedule-root bound queried outside its schedule range");
                BigUint::from(self.eval_u64(small))
            }
        }
    }

    /// Weakly increasing as a function of `n`? Log-quotient and
    /// schedule-root bounds dip at block boundaries, so they do not qualify.
    pub fn is_monotone(&self) -> bool {
        matches!(
            self,
            BoundFn::Constant(_) | BoundFn::Identity | BoundFn::RootPower(_) | BoundFn::Power(_)
        )
    }
}

/// A total deterministic color rule on the ordered pairs of `[lo, hi)`.
///
/// Implementations are immutable once built; queries are safe to issue from
/// any number of threads concurrently.
pub trait PairColoring: Send + Sync {
    /// Domain as a half-open interval.
    fn domain(&self) -> (u64, u64);

    /// Color of a pair `lo <= m < n < hi`. Out-of-domain pairs are a
    /// contract violation.
    fn color(&self, m: u64, n: u64) -> u64;

    /// Machine-readable construction descriptor for result documents.
    fn descriptor(&self) -> serde_json::Value;
}

pub(crate) fn assert_domain(lo: u64, hi: u64, m: u64, n: u64) {
    assert!(
        lo <= m && m < n && n < hi,
        "pair ({m},{n}) outside coloring domain [{lo},{hi})"
    );
}

/// Serializable recipe for rebuilding a coloring; witness and result
/// documents embed this so they can be independently re-verified later.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "kebab-case")]
pub enum ColoringSpec {
    /// Single fixed color on `[lo, hi)`.
    Constant { lo: u64, hi: u64, color: u64 },
    /// Explicit color table (row-major upper triangle) on `[lo, ...)`.
    Table { lo: u64, colors: Vec<Vec<u64>> },
    /// Base-10 difference coloring on `[43, 10^4)`.
    Base10,
    /// The bundled 42-vertex two-coloring on `[0, 43)`.
    SmallInterval,
    /// Base-s digit coloring on `[lo, hi)`, `lo >= 1`.
    BaseS { s: u64, lo: u64, hi: u64 },
    /// Orbit coloring `Pr(I, D)` for the g-step hierarchy.
    Orbit {
        g: BoundFn,
        k: u64,
        /// Base point; defaults to the least point where the step reaches k.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mu: Option<u64>,
        /// Domain end; defaults to `(f_g)_k(mu)`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end: Option<u64>,
    },
    /// Piecewise coloring along a schedule; cross-interval pairs get 0.
    Stitched {
        schedule: Schedule,
        pieces: Vec<ColoringSpec>,
    },
    /// Extend a coloring down to `[0, hi)`: pairs with minimum below `mu`
    /// are colored 0.
    ZeroPadded { mu: u64, inner: Box<ColoringSpec> },
}

impl ColoringSpec {
    /// Instantiate the coloring this recipe describes.
    pub fn build(&self, ctx: &EvalContext) -> Result<Box<dyn PairColoring>, ColoringError> {
        match self {
            ColoringSpec::Constant { lo, hi, color } => {
                if lo >= hi {
                    return Err(ColoringError::BadParams("empty domain".into()));
                }
                Ok(Box::new(ConstantColoring::new(*lo, *hi, *color)))
            }
            ColoringSpec::Table { lo, colors } => {
                Ok(Box::new(TableColoring::from_rows(*lo, colors.clone())?))
            }
            ColoringSpec::Base10 => Ok(Box::new(Base10Coloring)),
            ColoringSpec::SmallInterval => Ok(Box::new(SmallIntervalColoring::bundled()?)),
            ColoringSpec::BaseS { s, lo, hi } => {
                if *s < 2 {
                    return Err(ColoringError::BadParams("base must be >= 2".into()));
                }
                if *lo < 1 || lo >= hi {
                    return Err(ColoringError::BadParams(
                        "base-s domain must satisfy 1 <= lo < hi".into(),
                    ));
                }
                Ok(Box::new(BaseSColoring::new(*s, *lo, *hi)))
            }
            ColoringSpec::Orbit { g, k, mu, end } => {
                let base = match mu {
                    Some(b) => *b,
                    None => mu_g(g, *k, 1_000_000).ok_or(ColoringError::NoBasePoint {
                        k: *k,
                        limit: 1_000_000,
                    })?,
                };
                let stop = match end {
                    Some(e) => *e,
                    None => fg_eval(g, *k, base, ctx)?
                        .to_u64()
                        .ok_or(ColoringError::EndSaturates)?,
                };
                let smc = SemiMetricContext::build(g.clone(), base, stop)?;
                Ok(Box::new(OrbitColoring::new(smc, self.clone())))
            }
            ColoringSpec::Stitched { schedule, pieces } => {
                if pieces.len() != schedule.num_intervals() {
                    return Err(ColoringError::BadParams(format!(
                        "{} pieces for {} intervals",
                        pieces.len(),
                        schedule.num_intervals()
                    )));
                }
                let mut built = Vec::with_capacity(pieces.len());
                for (t, piece) in pieces.iter().enumerate() {
                    let b = piece.build(ctx)?;
                    let (lo, hi) = b.domain();
                    let (want_lo, want_hi) = schedule.interval(t);
                    if lo > want_lo || hi < want_hi {
                        return Err(ColoringError::PieceDomainMismatch {
                            index: t,
                            got_lo: lo,
                            got_hi: hi,
                            want_lo,
                            want_hi,
                        });
                    }
                    built.push(b);
                }
                Ok(Box::new(StitchedColoring {
                    schedule: schedule.clone(),
                    pieces: built,
                    spec: self.clone(),
                }))
            }
            ColoringSpec::ZeroPadded { mu, inner } => {
                let built = inner.build(ctx)?;
                let (lo, hi) = built.domain();
                if lo > *mu {
                    return Err(ColoringError::BadParams(format!(
                        "inner coloring starts at {lo}, above the padding point {mu}"
                    )));
                }
                if *mu >= hi {
                    return Err(ColoringError::BadParams(
                        "padding point at or beyond the domain end".into(),
                    ));
                }
                Ok(Box::new(ZeroPaddedColoring {
                    mu: *mu,
                    inner: built,
                    spec: self.clone(),
                }))
            }
        }
    }
}

pub struct ConstantColoring {
    lo: u64,
    hi: u64,
    value: u64,
}

impl ConstantColoring {
    pub fn new(lo: u64, hi: u64, value: u64) -> Self {
        assert!(lo < hi);
        ConstantColoring { lo, hi, value }
    }
}

impl PairColoring for ConstantColoring {
    fn domain(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }
    fn color(&self, m: u64, n: u64) -> u64 {
        assert_domain(self.lo, self.hi, m, n);
        self.value
    }
    fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(ColoringSpec::Constant {
            lo: self.lo,
            hi: self.hi,
            color: self.value,
        })
        .unwrap()
    }
}

/// Explicit table; row `r` holds the colors of pairs `(lo + r, n)` for
/// `n = lo + r + 1 .. hi`.
pub struct TableColoring {
    lo: u64,
    rows: Vec<Vec<u64>>,
}

impl TableColoring {
    pub fn from_rows(lo: u64, rows: Vec<Vec<u64>>) -> Result<Self, ColoringError> {
        let size = rows.len() + 1;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != size - 1 - r {
                return Err(ColoringError::BadParams(format!(
                    "table row {r} has {} entries, expected {}",
                    row.len(),
                    size - 1 - r
                )));
            }
        }
        Ok(TableColoring { lo, rows })
    }

    /// Build a table by evaluating a color rule on every pair of `[lo, hi)`.
    pub fn from_fn(lo: u64, hi: u64, mut f: impl FnMut(u64, u64) -> u64) -> Self {
        assert!(lo < hi);
        let size = (hi - lo) as usize;
        let rows = (0..size - 1)
            .map(|r| {
                let m = lo + r as u64;
                ((m + 1)..hi).map(|n| f(m, n)).collect()
            })
            .collect();
        TableColoring { lo, rows }
    }
}

impl PairColoring for TableColoring {
    fn domain(&self) -> (u64, u64) {
        (self.lo, self.lo + self.rows.len() as u64 + 1)
    }
    fn color(&self, m: u64, n: u64) -> u64 {
        let (lo, hi) = self.domain();
        assert_domain(lo, hi, m, n);
        self.rows[(m - lo) as usize][(n - m - 1) as usize]
    }
    fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(ColoringSpec::Table {
            lo: self.lo,
            colors: self.rows.clone(),
        })
        .unwrap()
    }
}

pub const BASE10_LO: u64 = 43;
pub const BASE10_HI: u64 = 10_000;

/// Base-10 difference coloring on `[43, 10^4)`: write `n - m` in base 10,
/// let `d1` be the maximal power index with `10^d1 < n - m` (0 when the
/// difference is 1) and `d2` the decimal digit at position `d1`; the color
/// is `Pr(d1, d2 + 1)`.
pub struct Base10Coloring;

impl PairColoring for Base10Coloring {
    fn domain(&self) -> (u64, u64) {
        (BASE10_LO, BASE10_HI)
    }
    fn color(&self, m: u64, n: u64) -> u64 {
        assert_domain(BASE10_LO, BASE10_HI, m, n);
        let diff = n - m;
        let d1: u64 = if diff > 1000 {
            3
        } else if diff > 100 {
            2
        } else if diff > 10 {
            1
        } else {
            0
        };
        let digit = (diff / 10u64.pow(d1 as u32)) % 10;
        pair_encode(d1, digit + 1)
    }
    fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(ColoringSpec::Base10).unwrap()
    }
}

/// Base-s digit coloring on `[lo, hi)`, `lo >= 1`: pairs from different
/// `log_s` blocks take the block index of the smaller element; pairs within
/// a block take the least significant digit position where they differ.
///
/// Digit indices count from the least significant digit, index 0. Either
/// orientation works for the homogeneity argument; least-significant-first
/// avoids padding questions and is pinned by the tests.
pub struct BaseSColoring {
    s: u64,
    lo: u64,
    hi: u64,
}

impl BaseSColoring {
    pub fn new(s: u64, lo: u64, hi: u64) -> Self {
        assert!(s >= 2 && lo >= 1 && lo < hi);
        BaseSColoring { s, lo, hi }
    }

    pub fn base(&self) -> u64 {
        self.s
    }

    pub fn block_of(&self, n: u64) -> u64 {
        ilog_u64(n, self.s)
    }
}

impl PairColoring for BaseSColoring {
    fn domain(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }
    fn color(&self, m: u64, n: u64) -> u64 {
        assert_domain(self.lo, self.hi, m, n);
        let bm = ilog_u64(m, self.s);
        if bm != ilog_u64(n, self.s) {
            return bm;
        }
        let (mut a, mut b) = (m, n);
        let mut idx = 0;
        while a % self.s == b % self.s {
            a /= self.s;
            b /= self.s;
            idx += 1;
        }
        idx
    }
    fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(ColoringSpec::BaseS {
            s: self.s,
            lo: self.lo,
            hi: self.hi,
        })
        .unwrap()
    }
}

/// Piecewise coloring along a schedule: pairs inside interval `t` delegate
/// to piece `t`, pairs straddling intervals are colored 0.
pub struct StitchedColoring {
    schedule: Schedule,
    pieces: Vec<Box<dyn PairColoring>>,
    spec: ColoringSpec,
}

impl StitchedColoring {
    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }
}

impl PairColoring for StitchedColoring {
    fn domain(&self) -> (u64, u64) {
        (0, self.schedule.limit())
    }
    fn color(&self, m: u64, n: u64) -> u64 {
        assert_domain(0, self.schedule.limit(), m, n);
        let tm = self.schedule.interval_index(m).unwrap();
        let tn = self.schedule.interval_index(n).unwrap();
        if tm == tn {
            self.pieces[tm].color(m, n)
        } else {
            0
        }
    }
    fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(&self.spec).unwrap()
    }
}

/// Downward zero-extension: pairs whose minimum lies below `mu` get color 0,
/// everything else delegates to the inner coloring. Color 0 is legal under
/// any bound, so this preserves g-regressiveness at minima the inner
/// construction does not cover.
pub struct ZeroPaddedColoring {
    mu: u64,
    inner: Box<dyn PairColoring>,
    spec: ColoringSpec,
}

impl ZeroPaddedColoring {
    pub fn wrap(mu: u64, spec: ColoringSpec, ctx: &EvalContext) -> Result<Self, ColoringError> {
        let inner = spec.build(ctx)?;
        let (lo, hi) = inner.domain();
        if lo > mu || mu >= hi {
            return Err(ColoringError::BadParams(format!(
                "padding point {mu} outside inner domain [{lo},{hi})"
            )));
        }
        Ok(ZeroPaddedColoring {
            mu,
            inner,
            spec: ColoringSpec::ZeroPadded {
                mu,
                inner: Box::new(spec),
            },
        })
    }
}

impl PairColoring for ZeroPaddedColoring {
    fn domain(&self) -> (u64, u64) {
        (0, self.inner.domain().1)
    }
    fn color(&self, m: u64, n: u64) -> u64 {
        assert_domain(0, self.inner.domain().1, m, n);
        if m < self.mu {
            0
        } else {
            self.inner.color(m, n)
        }
    }
    fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(&self.spec).unwrap()
    }
}

/// A g-regressivity counterexample: a domain pair whose color exceeds the
/// bound at its minimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegressivityViolation {
    pub m: u64,
    pub n: u64,
    pub color: u64,
    pub bound: u64,
}

/// Exhaustively check `color(m, n) <= g(m)` over every domain pair.
/// `None` means the coloring is g-regressive; otherwise the first violating
/// pair in lexicographic order is returned.
pub fn verify_regressive(
    coloring: &dyn PairColoring,
    g: &BoundFn,
) -> Option<RegressivityViolation> {
    let (lo, hi) = coloring.domain();
    for m in lo..hi {
        let bound = g.eval_u64(m);
        for n in (m + 1)..hi {
            let color = coloring.color(m, n);
            if color > bound {
                return Some(RegressivityViolation { m, n, color, bound });
            }
        }
    }
    None
}

/// JSON header accompanying an exported color matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExportHeader {
    pub domain: (u64, u64),
    pub construction: serde_json::Value,
    pub format: String,
    /// Pair order of the payload: ascending m, then ascending n.
    pub order: String,
}

impl ExportHeader {
    pub fn new(coloring: &dyn PairColoring, format: &str) -> Self {
        ExportHeader {
            domain: coloring.domain(),
            construction: coloring.descriptor(),
            format: format.to_string(),
            order: "pairs (m,n) with m<n, ascending m then n".to_string(),
        }
    }
}

/// CSV dump of the full color matrix: one `m,n,color` row per domain pair.
pub fn write_matrix_csv(coloring: &dyn PairColoring, out: &mut impl Write) -> std::io::Result<()> {
    let (lo, hi) = coloring.domain();
    writeln!(out, "m,n,color")?;
    for m in lo..hi {
        for n in (m + 1)..hi {
            writeln!(out, "{m},{n},{}", coloring.color(m, n))?;
        }
    }
    Ok(())
}

/// Binary dump: colors as little-endian u64 in the header's pair order.
/// Bit-exact across platforms.
pub fn write_matrix_bin(coloring: &dyn PairColoring, out: &mut impl Write) -> std::io::Result<()> {
    let (lo, hi) = coloring.domain();
    for m in lo..hi {
        for n in (m + 1)..hi {
            out.write_all(&coloring.color(m, n).to_le_bytes())?;
        }
    }
    Ok(())
}

/// The `log_s` blocks intersecting `[lo, hi)`, as half-open intervals.
///
/// Any homogeneous set whose extremes lie in different blocks satisfies the
/// block-growth property trivially, so checking that no single block holds a
/// homogeneous `(s+1)`-set is exactly the exhaustive form of that property.
pub fn base_s_block_intervals(s: u64, lo: u64, hi: u64) -> Vec<(u64, u64)> {
    assert!(s >= 2 && lo >= 1 && lo < hi);
    let mut out = Vec::new();
    let mut start = lo;
    let mut cur = ilog_u64(lo, s);
    for n in (lo + 1)..=hi {
        let b = if n == hi { u64::MAX } else { ilog_u64(n, s) };
        if b != cur {
            out.push((start, n));
            start = n;
            cur = b;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::EvalContext;

    #[test]
    fn bound_fn_log_quotient_values() {
        let g = BoundFn::LogQuotient(SlowFn::Constant(1));
        assert_eq!(g.eval_u64(0), 0);
        assert_eq!(g.eval_u64(3), 0);
        // lg 4 = 2, lg lg 4 = 1
        assert_eq!(g.eval_u64(4), 2);
        // lg 16 = 4, lg lg 16 = 2
        assert_eq!(g.eval_u64(16), 2);
        let gs = BoundFn::LogQuotient(SlowFn::LogStar);
        // log*(16) = 3: 16 -> 4 -> 2 -> 1
        assert_eq!(gs.eval_u64(16), 4 / (3 * 2));
    }

    #[test]
    fn log_star_values() {
        assert_eq!(SlowFn::LogStar.eval(1), 1);
        assert_eq!(SlowFn::LogStar.eval(2), 1);
        assert_eq!(SlowFn::LogStar.eval(4), 2);
        assert_eq!(SlowFn::LogStar.eval(16), 3);
        assert_eq!(SlowFn::LogStar.eval(65536), 4);
    }

    #[test]
    fn bound_fn_schedule_root() {
        let s = Schedule::new(vec![0, 10, 100], vec![1, 1]).unwrap();
        let g = BoundFn::ScheduleRoot(s);
        assert_eq!(g.eval_u64(5), 5); // beta = 1
        assert_eq!(g.eval_u64(64), 8); // beta = 2
        assert_eq!(g.eval_u64(99), 9);
    }

    #[test]
    fn bound_fn_big_matches_u64() {
        let bounds = [
            BoundFn::Constant(7),
            BoundFn::Identity,
            BoundFn::RootPower(3),
            BoundFn::Power(2),
            BoundFn::LogQuotient(SlowFn::LogStar),
        ];
        for g in &bounds {
            for n in (0..5000u64).step_by(37) {
                assert_eq!(
                    g.eval_big(&BigUint::from(n)),
                    BigUint::from(g.eval_u64(n)),
                    "{g:?} at {n}"
                );
            }
        }
    }

    #[test]
    fn base10_spec_values() {
        let c = Base10Coloring;
        assert_eq!(c.color(100, 101), pair_encode(0, 2));
        assert_eq!(c.color(100, 150), pair_encode(1, 6));
        assert_eq!(c.color(43, 9043), pair_encode(3, 10));
        // the same three pairs against hand-evaluated pairing values
        assert_eq!(c.color(100, 101), 5);
        assert_eq!(c.color(100, 150), 34);
        assert_eq!(c.color(43, 9043), 101);
        // boundary convention: difference 10 still reads the units digit
        assert_eq!(c.color(50, 60), pair_encode(0, 1));
        assert_eq!(c.color(50, 150), pair_encode(1, 1));
    }

    #[test]
    #[should_panic]
    fn base10_rejects_out_of_range() {
        Base10Coloring.color(10, 50);
    }

    #[test]
    fn base_s_spec_values() {
        let c = BaseSColoring::new(2, 1, 10_001);
        assert_eq!(c.color(2, 5), 1);
        assert_eq!(c.color(5, 7), 1);
        assert_eq!(c.color(4, 5), 0);
        // different blocks: block index of the smaller element
        assert_eq!(c.color(1, 9), 0);
        assert_eq!(c.color(9, 100), 3);
    }

    #[test]
    fn base_s_blocks_partition_domain() {
        let blocks = base_s_block_intervals(2, 1, 100);
        assert_eq!(blocks[0], (1, 2));
        assert_eq!(blocks[1], (2, 4));
        assert_eq!(blocks.last().unwrap().1, 100);
        let total: u64 = blocks.iter().map(|(a, b)| b - a).sum();
        assert_eq!(total, 99);
    }

    #[test]
    fn stitched_delegates_and_zeroes() {
        let ctx = EvalContext::default();
        let spec = ColoringSpec::Stitched {
            schedule: Schedule::new(vec![0, 10, 30], vec![2, 2]).unwrap(),
            pieces: vec![
                ColoringSpec::Constant {
                    lo: 0,
                    hi: 10,
                    color: 4,
                },
                ColoringSpec::Constant {
                    lo: 10,
                    hi: 30,
                    color: 9,
                },
            ],
        };
        let c = spec.build(&ctx).unwrap();
        assert_eq!(c.color(2, 7), 4);
        assert_eq!(c.color(12, 29), 9);
        assert_eq!(c.color(5, 15), 0);
    }

    #[test]
    fn stitched_rejects_bad_pieces() {
        let ctx = EvalContext::default();
        let spec = ColoringSpec::Stitched {
            schedule: Schedule::new(vec![0, 10], vec![2]).unwrap(),
            pieces: vec![ColoringSpec::Constant {
                lo: 0,
                hi: 5,
                color: 0,
            }],
        };
        assert!(matches!(
            spec.build(&ctx),
            Err(ColoringError::PieceDomainMismatch { .. })
        ));
    }

    #[test]
    fn zero_padding_colors_low_minima() {
        let ctx = EvalContext::default();
        let padded = ZeroPaddedColoring::wrap(
            5,
            ColoringSpec::Constant {
                lo: 5,
                hi: 20,
                color: 3,
            },
            &ctx,
        )
        .unwrap();
        assert_eq!(padded.domain(), (0, 20));
        assert_eq!(padded.color(1, 17), 0);
        assert_eq!(padded.color(3, 4), 0);
        assert_eq!(padded.color(5, 6), 3);
    }

    #[test]
    fn verify_regressive_reports_first_violation() {
        let c = ConstantColoring::new(0, 10, 5);
        let v = verify_regressive(&c, &BoundFn::Constant(3)).unwrap();
        assert_eq!((v.m, v.n, v.color, v.bound), (0, 1, 5, 3));
        assert!(verify_regressive(&c, &BoundFn::Constant(5)).is_none());
        let v = verify_regressive(&c, &BoundFn::Identity).unwrap();
        assert_eq!((v.m, v.n), (0, 1));
    }

    #[test]
    fn table_round_trip_through_spec() {
        let ctx = EvalContext::default();
        let t = TableColoring::from_fn(3, 8, |m, n| (m * n) % 4);
        let desc = t.descriptor();
        let spec: ColoringSpec = serde_json::from_value(desc).unwrap();
        let rebuilt = spec.build(&ctx).unwrap();
        for m in 3..8u64 {
            for n in (m + 1)..8 {
                assert_eq!(t.color(m, n), rebuilt.color(m, n));
            }
        }
    }

    #[test]
    fn matrix_export_formats() {
        let c = ConstantColoring::new(0, 4, 2);
        let mut csv = Vec::new();
        write_matrix_csv(&c, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("m,n,color\n0,1,2\n"));
        assert_eq!(text.lines().count(), 7); // header + 6 pairs
        let mut bin = Vec::new();
        write_matrix_bin(&c, &mut bin).unwrap();
        assert_eq!(bin.len(), 6 * 8);
        assert_eq!(u64::from_le_bytes(bin[0..8].try_into().unwrap()), 2);
    }
}
