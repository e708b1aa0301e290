//! Fast-growing function hierarchies.
//!
//! All families share the same shape: level 1 is the successor, and level
//! `i+1` at `n` applies level `i` exactly `step(n)` times to `n`. The step
//! rule distinguishes them:
//!
//! * [`StepRule::Ackermann`] — `step(n) = n`; level `i` is the classical
//!   Ackermann approximation `A_i`.
//! * [`StepRule::Root`]`(t)` — `step(n) = floor(n^(1/t))`.
//! * [`StepRule::GStep`]`(g)` — `step(n) = floor(isqrt(g(n)) / 2)`.
//!
//! Values explode past any usable precision almost immediately, so every
//! evaluation runs under an [`EvalContext`] carrying a saturation cap and a
//! cooperative cancellation token. Evaluation is exact below the cap; the
//! engine uses the proven per-level lower bound `f_i(n) >= n + step(n)^(i-1)`
//! (monotone step rules only) to detect saturation without unrolling, and
//! batches constant-step plateaus at level 3, where growth is additive.
//! Deeply nested finite values just under a large cap can still be genuinely
//! expensive; long evaluations poll the cancellation token.

use crate::arith::{iroot, Cap, CapCmp, CappedNat};
use crate::colorings::BoundFn;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("evaluation cancelled")]
    Cancelled,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("schedule must start at 0")]
    FirstNotZero,
    #[error("schedule thresholds must be strictly increasing")]
    NotIncreasing,
    #[error(
        "schedule needs exactly one size entry per interval ({intervals} intervals, {sizes} sizes)"
    )]
    SizeCountMismatch { intervals: usize, sizes: usize },
    #[error("argument {n} is outside the schedule range [0, {limit})")]
    OutOfRange { n: u64, limit: u64 },
}

/// Cooperative cancellation flag shared with long evaluations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }
    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Saturation cap plus cancellation token threaded through every evaluation.
#[derive(Clone, Debug)]
pub struct EvalContext {
    pub cap: Cap,
    cancel: CancelToken,
}

impl EvalContext {
    pub fn new(cap: Cap) -> Self {
        EvalContext {
            cap,
            cancel: CancelToken::new(),
        }
    }

    pub fn with_cancel(cap: Cap, cancel: CancelToken) -> Self {
        EvalContext { cap, cancel }
    }

    pub fn cancel_token(&self) -> CancelToken {
        self.cancel.clone()
    }

    #[inline]
    fn checkpoint(&self, ops: &mut u64) -> Result<(), EvalError> {
        *ops += 1;
        if *ops & 0xFFFF == 0 && self.cancel.is_cancelled() {
            return Err(EvalError::Cancelled);
        }
        Ok(())
    }
}

impl Default for EvalContext {
    fn default() -> Self {
        EvalContext::new(Cap::default_cap())
    }
}

/// How level `i+1` derives its iteration count from the argument.
#[derive(Clone, Debug)]
pub enum StepRule {
    Ackermann,
    Root(u32),
    GStep(BoundFn),
}

/// A hierarchy: successor at level 1, `step(n)`-fold iteration above.
#[derive(Clone, Debug)]
pub struct HierarchySpec {
    pub step: StepRule,
}

impl HierarchySpec {
    pub fn ackermann() -> Self {
        HierarchySpec {
            step: StepRule::Ackermann,
        }
    }

    pub fn root(t: u32) -> Self {
        assert!(t >= 1, "root step: t must be >= 1");
        HierarchySpec {
            step: StepRule::Root(t),
        }
    }

    pub fn g_step(g: BoundFn) -> Self {
        HierarchySpec {
            step: StepRule::GStep(g),
        }
    }

    pub fn step_of(&self, n: &BigUint) -> BigUint {
        match &self.step {
            StepRule::Ackermann => n.clone(),
            StepRule::Root(t) => iroot(n, *t),
            StepRule::GStep(g) => iroot(&g.eval_big(n), 2) / 2u32,
        }
    }

    /// Whether the step rule is weakly increasing in `n`; gates the
    /// saturation shortcuts, which are only sound for monotone steps.
    fn monotone_step(&self) -> bool {
        match &self.step {
            StepRule::Ackermann | StepRule::Root(_) => true,
            StepRule::GStep(g) => g.is_monotone(),
        }
    }
}

/// `A_i(n)`: the i-th Ackermann approximation, saturating at the cap.
pub fn ack_approx(i: u64, n: u64, ctx: &EvalContext) -> Result<CappedNat, EvalError> {
    hierarchy_eval(&HierarchySpec::ackermann(), i, n, ctx)
}

/// `(f_t)_i(n)`: the root-step hierarchy with exact integer root step counts.
pub fn ft_eval(t: u32, i: u64, n: u64, ctx: &EvalContext) -> Result<CappedNat, EvalError> {
    hierarchy_eval(&HierarchySpec::root(t), i, n, ctx)
}

/// `(f_g)_i(n)`: the g-step hierarchy, step count `floor(isqrt(g(n))/2)`.
pub fn fg_eval(g: &BoundFn, i: u64, n: u64, ctx: &EvalContext) -> Result<CappedNat, EvalError> {
    hierarchy_eval(&HierarchySpec::g_step(g.clone()), i, n, ctx)
}

/// Evaluate level `i` of a hierarchy at `n`. Level 0 does not exist; `i = 0`
/// is a contract violation.
pub fn hierarchy_eval(
    spec: &HierarchySpec,
    i: u64,
    n: u64,
    ctx: &EvalContext,
) -> Result<CappedNat, EvalError> {
    assert!(i >= 1, "hierarchy level must be >= 1");
    let start = BigUint::from(n);
    if start > *ctx.cap.limit() {
        return Ok(CappedNat::Top);
    }
    let mut ops = 0u64;
    eval_level(spec, i, start, ctx, &mut ops)
}

/// `f_i^{(times)}(n)`: explicit iterated application; saturation
/// short-circuits the remaining iterations.
pub fn apply_iterated(
    spec: &HierarchySpec,
    i: u64,
    times: u64,
    n: u64,
    ctx: &EvalContext,
) -> Result<CappedNat, EvalError> {
    assert!(i >= 1, "hierarchy level must be >= 1");
    let mut cur = BigUint::from(n);
    if cur > *ctx.cap.limit() {
        return Ok(CappedNat::Top);
    }
    let mut ops = 0u64;
    for _ in 0..times {
        match eval_level(spec, i, cur, ctx, &mut ops)? {
            CappedNat::Finite(v) => cur = v,
            CappedNat::Top => return Ok(CappedNat::Top),
        }
    }
    Ok(CappedNat::Finite(cur))
}

fn eval_level(
    spec: &HierarchySpec,
    i: u64,
    x: BigUint,
    ctx: &EvalContext,
    ops: &mut u64,
) -> Result<CappedNat, EvalError> {
    ctx.checkpoint(ops)?;
    if i == 1 {
        return Ok(ctx.cap.clamp(x + 1u32));
    }
    let step = spec.step_of(&x);
    if i == 2 {
        // level 2 is step(x) successor applications
        return Ok(ctx.cap.clamp(x + step));
    }
    if spec.monotone_step() {
        // f_i(x) >= x + step(x)^(i-1): saturation detectable without unrolling
        if lower_bound_exceeds_cap(&x, &step, i - 1, &ctx.cap) {
            return Ok(CappedNat::Top);
        }
        if i == 3 {
            return eval_level3_batched(spec, x, step, ctx, ops);
        }
    }
    let mut cur = x;
    let mut remaining = step;
    while !remaining.is_zero() {
        ctx.checkpoint(ops)?;
        if spec.monotone_step() {
            // each remaining application adds at least step(cur)^(i-2)
            let gain = spec.step_of(&cur);
            if lower_bound_exceeds_cap_scaled(&cur, &gain, i - 2, &remaining, &ctx.cap) {
                return Ok(CappedNat::Top);
            }
        }
        match eval_level(spec, i - 1, cur, ctx, ops)? {
            CappedNat::Finite(v) => cur = v,
            CappedNat::Top => return Ok(CappedNat::Top),
        }
        remaining -= 1u32;
    }
    Ok(CappedNat::Finite(cur))
}

/// Level 3 applies level 2 (`y -> y + step(y)`) `count` times. While `step`
/// is constant the growth is an arithmetic progression, so whole plateaus
/// are added in one move; monotonicity locates the next plateau boundary by
/// exponential plus binary search on the step function.
fn eval_level3_batched(
    spec: &HierarchySpec,
    x: BigUint,
    count: BigUint,
    ctx: &EvalContext,
    ops: &mut u64,
) -> Result<CappedNat, EvalError> {
    let mut cur = x;
    let mut remaining = count;
    while !remaining.is_zero() {
        ctx.checkpoint(ops)?;
        let s = spec.step_of(&cur);
        if s.is_zero() {
            // fixpoint: every remaining application leaves cur unchanged
            return Ok(CappedNat::Finite(cur));
        }
        // applications that still use step s, i.e. until cur reaches the
        // next point where the step grows (or crosses the cap)
        let apps: BigUint = match next_step_increase(spec, &cur, &s, ctx.cap.limit()) {
            Some(boundary) => {
                let gap = &boundary - &cur;
                (&gap + &s - 1u32) / &s
            }
            None => {
                let gap = ctx.cap.limit() - &cur + 1u32;
                (&gap + &s - 1u32) / &s
            }
        };
        let take = apps.min(remaining.clone()).max(BigUint::one());
        cur += &take * &s;
        remaining -= take;
        if cur > *ctx.cap.limit() {
            return Ok(CappedNat::Top);
        }
    }
    Ok(CappedNat::Finite(cur))
}

/// First `y` in `(cur, cap]` with `step(y) > s`, by doubling then bisecting.
/// Requires a monotone step rule. `None` when the step stays at `s` up to
/// the cap.
fn next_step_increase(
    spec: &HierarchySpec,
    cur: &BigUint,
    s: &BigUint,
    cap: &BigUint,
) -> Option<BigUint> {
    if cur >= cap {
        return None;
    }
    if spec.step_of(cap) <= *s {
        return None;
    }
    let mut hi_off = BigUint::one();
    loop {
        let probe = cur + &hi_off;
        if probe >= *cap || spec.step_of(&probe) > *s {
            break;
        }
        hi_off <<= 1;
    }
    // step(cur + lo) <= s, step(cur + hi) > s
    let mut lo = if hi_off.is_one() {
        BigUint::zero()
    } else {
        &hi_off >> 1
    };
    let mut hi = (cur + &hi_off).min(cap.clone()) - cur;
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if spec.step_of(&(cur + &mid)) > *s {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(cur + hi)
}

/// `x + s^e > cap`?
fn lower_bound_exceeds_cap(x: &BigUint, s: &BigUint, e: u64, cap: &Cap) -> bool {
    match CappedNat::Finite(s.clone()).pow(e, cap) {
        CappedNat::Top => true,
        CappedNat::Finite(p) => x + p > *cap.limit(),
    }
}

/// `x + times * s^e > cap`?
fn lower_bound_exceeds_cap_scaled(
    x: &BigUint,
    s: &BigUint,
    e: u64,
    times: &BigUint,
    cap: &Cap,
) -> bool {
    match CappedNat::Finite(s.clone()).pow(e, cap) {
        CappedNat::Top => !times.is_zero(),
        CappedNat::Finite(p) => {
            match CappedNat::Finite(p).mul(&CappedNat::Finite(times.clone()), cap) {
                CappedNat::Top => true,
                CappedNat::Finite(tp) => x + tp > *cap.limit(),
            }
        }
    }
}

/// Least `t <= limit` with `k <= floor(isqrt(g(t)) / 2)`, the base point of
/// the orbit coloring. `None` when no such `t` exists below the limit
/// (`g` may be bounded).
pub fn mu_g(g: &BoundFn, k: u64, limit: u64) -> Option<u64> {
    let want = BigUint::from(k);
    (0..=limit).find(|&t| iroot(&g.eval_big(&BigUint::from(t)), 2) / 2u32 >= want)
}

/// A finite interval schedule: thresholds `mu_0 < mu_1 < ... < mu_T` with
/// `mu_0 = 0`, and one forbidden-size entry per interval `[mu_t, mu_{t+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ScheduleRaw", into = "ScheduleRaw")]
pub struct Schedule {
    mu: Vec<u64>,
    k: Vec<u64>,
}

#[derive(Clone, Serialize, Deserialize)]
struct ScheduleRaw {
    mu: Vec<u64>,
    k: Vec<u64>,
}

impl TryFrom<ScheduleRaw> for Schedule {
    type Error = ScheduleError;
    fn try_from(raw: ScheduleRaw) -> Result<Self, ScheduleError> {
        Schedule::new(raw.mu, raw.k)
    }
}

impl From<Schedule> for ScheduleRaw {
    fn from(s: Schedule) -> ScheduleRaw {
        ScheduleRaw { mu: s.mu, k: s.k }
    }
}

impl Schedule {
    pub fn new(mu: Vec<u64>, k: Vec<u64>) -> Result<Self, ScheduleError> {
        if mu.first() != Some(&0) {
            return Err(ScheduleError::FirstNotZero);
        }
        if mu.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ScheduleError::NotIncreasing);
        }
        if k.len() + 1 != mu.len() {
            return Err(ScheduleError::SizeCountMismatch {
                intervals: mu.len().saturating_sub(1),
                sizes: k.len(),
            });
        }
        Ok(Schedule { mu, k })
    }

    pub fn mu(&self) -> &[u64] {
        &self.mu
    }

    pub fn sizes(&self) -> &[u64] {
        &self.k
    }

    pub fn num_intervals(&self) -> usize {
        self.mu.len() - 1
    }

    /// End of the schedule range (exclusive).
    pub fn limit(&self) -> u64 {
        *self.mu.last().unwrap()
    }

    /// Interval index `t` with `mu_t <= n < mu_{t+1}`.
    pub fn interval_index(&self, n: u64) -> Result<usize, ScheduleError> {
        if n >= self.limit() {
            return Err(ScheduleError::OutOfRange {
                n,
                limit: self.limit(),
            });
        }
        Ok(self.mu.partition_point(|&m| m <= n) - 1)
    }

    /// Interval `t` as a half-open range.
    pub fn interval(&self, t: usize) -> (u64, u64) {
        (self.mu[t], self.mu[t + 1])
    }

    /// The schedule's step function: `beta(n) = t + 1` on `[mu_t, mu_{t+1})`.
    pub fn beta_of(&self, n: u64) -> Result<u64, ScheduleError> {
        Ok(self.interval_index(n)? as u64 + 1)
    }
}

/// Least `n <= limit` with `beta(n) >= t`, for weakly increasing `beta`;
/// `None` when no such `n` exists below the limit.
pub fn beta_inverse(beta: impl Fn(u64) -> u64, t: u64, limit: u64) -> Option<u64> {
    if beta(limit) < t {
        return None;
    }
    let (mut lo, mut hi) = (0u64, limit);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if beta(mid) >= t {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

/// The Ackermannian interval schedule: thresholds 0, 10^4 and then the
/// diagonal values `A_{t+3}(t+3)`, with per-interval sizes 18 and then
/// `floor(mu_{t-1}^(1/(2(t-1))) / 2)`. Saturates almost immediately under
/// any usable cap; real runs use hand-written toy schedules instead.
pub fn ackermannian_schedule(
    intervals: usize,
    ctx: &EvalContext,
) -> Result<(Vec<CappedNat>, Vec<CappedNat>), EvalError> {
    let mut mu: Vec<CappedNat> = vec![CappedNat::zero()];
    let mut sizes: Vec<CappedNat> = Vec::new();
    for t in 1..=intervals as u64 {
        if t == 1 {
            mu.push(CappedNat::from_u64(10_000, &ctx.cap));
            sizes.push(CappedNat::from_u64(18, &ctx.cap));
            continue;
        }
        let prev = &mu[(t - 1) as usize];
        let k_t = match prev.finite() {
            Some(v) => ctx.cap.clamp(iroot(v, 2 * (t as u32 - 1)) / 2u32),
            None => CappedNat::Top,
        };
        sizes.push(k_t);
        mu.push(ack_approx(t + 3, t + 3, ctx)?);
    }
    Ok((mu, sizes))
}

/// Outcome of one growth-inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// Both sides saturated; the comparison carries no information.
    Indeterminate,
    /// The inequality's hypothesis does not cover these parameters;
    /// nothing is claimed.
    HypothesisNotMet,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthCheck {
    pub claim: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub outcome: CheckOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub t: u32,
    pub i: u64,
    pub n: u64,
    pub checks: Vec<GrowthCheck>,
}

impl GrowthReport {
    pub fn no_failures(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != CheckOutcome::Fail)
    }
}

fn strict_outcome(lhs: &CappedNat, rhs: &CappedNat) -> CheckOutcome {
    match lhs.compare(rhs) {
        CapCmp::Greater => CheckOutcome::Pass,
        CapCmp::Indeterminate => CheckOutcome::Indeterminate,
        CapCmp::Less | CapCmp::Equal => CheckOutcome::Fail,
    }
}

fn weak_outcome(lhs: &CappedNat, rhs: &CappedNat) -> CheckOutcome {
    match lhs.compare(rhs) {
        CapCmp::Greater | CapCmp::Equal => CheckOutcome::Pass,
        CapCmp::Indeterminate => CheckOutcome::Indeterminate,
        CapCmp::Less => CheckOutcome::Fail,
    }
}

/// Evaluate the three growth inequalities that drive the hierarchy
/// comparison argument, at concrete parameters:
///
/// 1. `level-lower-bound`: `(f_t)_i(n) >= n + floor(n^(1/t))^(i-1)`;
/// 2. `base-square-growth`: `(f_{t+1})_{2t+3}(n^2) > n^2 + 2n + 1`;
/// 3. `iteration-square-growth`: `(f_{t+1})_{i+2t+2}(n^2) > ((f_t)_i(n))^2`,
///    under the hypothesis `n > 2^t`.
///
/// A saturated side compares by the capped order (`Top` beats any finite
/// value); only `Top` vs `Top` is reported indeterminate.
pub fn check_growth_inequalities(
    t: u32,
    i: u64,
    n: u64,
    ctx: &EvalContext,
) -> Result<GrowthReport, EvalError> {
    assert!(t >= 1 && i >= 1, "growth checks need t >= 1, i >= 1");
    let mut checks = Vec::new();

    {
        let lhs = ft_eval(t, i, n, ctx)?;
        let root = crate::arith::iroot_u64(n, t);
        let rhs = CappedNat::from_u64(n, &ctx.cap).add(
            &CappedNat::from_u64(root, &ctx.cap).pow(i - 1, &ctx.cap),
            &ctx.cap,
        );
        checks.push(GrowthCheck {
            claim: "level-lower-bound",
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            outcome: weak_outcome(&lhs, &rhs),
        });
    }

    let n_sq = n.checked_mul(n).expect("n^2 overflows u64");

    {
        let lhs = ft_eval(t + 1, 2 * t as u64 + 3, n_sq, ctx)?;
        let rhs = CappedNat::from_u64(n_sq, &ctx.cap)
            .add(&CappedNat::from_u64(2 * n + 1, &ctx.cap), &ctx.cap);
        checks.push(GrowthCheck {
            claim: "base-square-growth",
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            outcome: strict_outcome(&lhs, &rhs),
        });
    }

    {
        let hypothesis = t < 63 && n > (1u64 << t);
        let (lhs, rhs, outcome) = if hypothesis {
            let lhs = ft_eval(t + 1, i + 2 * t as u64 + 2, n_sq, ctx)?;
            let inner = ft_eval(t, i, n, ctx)?;
            let rhs = inner.pow(2, &ctx.cap);
            let outcome = strict_outcome(&lhs, &rhs);
            (lhs.to_string(), rhs.to_string(), outcome)
        } else {
            (String::new(), String::new(), CheckOutcome::HypothesisNotMet)
        };
        checks.push(GrowthCheck {
            claim: "iteration-square-growth",
            lhs,
            rhs,
            outcome,
        });
    }

    Ok(GrowthReport { t, i, n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::BoundFn;

    fn ctx() -> EvalContext {
        EvalContext::default()
    }

    #[test]
    fn ackermann_base_cases() {
        let c = ctx();
        assert_eq!(ack_approx(1, 5, &c).unwrap().to_u64(), Some(6));
        assert_eq!(ack_approx(2, 3, &c).unwrap().to_u64(), Some(6));
        assert_eq!(ack_approx(3, 2, &c).unwrap().to_u64(), Some(8));
        // A_2 doubles, A_3(n) = n * 2^n
        assert_eq!(ack_approx(2, 10, &c).unwrap().to_u64(), Some(20));
        assert_eq!(ack_approx(3, 4, &c).unwrap().to_u64(), Some(64));
        assert_eq!(ack_approx(3, 5, &c).unwrap().to_u64(), Some(160));
    }

    #[test]
    #[should_panic]
    fn ackermann_level_zero_panics() {
        let _ = ack_approx(0, 3, &ctx());
    }

    #[test]
    fn ack_5_5_saturates_quickly() {
        let c = ctx();
        assert!(ack_approx(5, 5, &c).unwrap().is_top());
        assert!(ack_approx(4, 4, &c).unwrap().is_top());
    }

    #[test]
    fn ft_spec_values() {
        let c = ctx();
        assert_eq!(ft_eval(2, 1, 9, &c).unwrap().to_u64(), Some(10));
        // step = isqrt(9) = 3 successor applications
        assert_eq!(ft_eval(2, 2, 9, &c).unwrap().to_u64(), Some(12));
        // hand iteration: 16 -> 20 -> 24 -> 28 -> 33
        assert_eq!(ft_eval(2, 3, 16, &c).unwrap().to_u64(), Some(33));
    }

    #[test]
    fn ft_at_t1_matches_ackermann() {
        let c = ctx();
        for i in 1..=3u64 {
            for n in 0..=30u64 {
                let a = ack_approx(i, n, &c).unwrap();
                let f = ft_eval(1, i, n, &c).unwrap();
                assert_eq!(a.compare(&f), CapCmp::Equal, "i={i} n={n}");
            }
        }
    }

    #[test]
    fn fg_spec_values() {
        let c = ctx();
        let id = BoundFn::Identity;
        assert_eq!(fg_eval(&id, 1, 16, &c).unwrap().to_u64(), Some(17));
        assert_eq!(fg_eval(&id, 2, 16, &c).unwrap().to_u64(), Some(18));
        // step floor(isqrt(3)/2) = 0: zero applications is the identity
        assert_eq!(fg_eval(&id, 2, 3, &c).unwrap().to_u64(), Some(3));
        // 36 -> 39 -> 42 -> 45
        assert_eq!(fg_eval(&id, 3, 36, &c).unwrap().to_u64(), Some(45));
    }

    #[test]
    fn level_monotonicity_small_grid() {
        let c = ctx();
        for t in 1..=3u32 {
            for n in 1..=200u64 {
                let mut prev = ft_eval(t, 1, n, &c).unwrap();
                for i in 2..=4u64 {
                    let cur = ft_eval(t, i, n, &c).unwrap();
                    assert_ne!(
                        cur.compare(&prev),
                        CapCmp::Less,
                        "level monotonicity broke at t={t} i={i} n={n}"
                    );
                    prev = cur;
                }
            }
        }
    }

    #[test]
    fn weakly_increasing_in_argument() {
        let c = ctx();
        for t in 1..=3u32 {
            for i in 1..=4u64 {
                let mut prev = ft_eval(t, i, 1, &c).unwrap();
                for n in 2..=200u64 {
                    let cur = ft_eval(t, i, n, &c).unwrap();
                    assert_ne!(cur.compare(&prev), CapCmp::Less, "t={t} i={i} n={n}");
                    prev = cur;
                }
            }
        }
    }

    #[test]
    fn iterate_zero_times_is_identity() {
        let c = ctx();
        for spec in [
            HierarchySpec::ackermann(),
            HierarchySpec::root(2),
            HierarchySpec::g_step(BoundFn::Identity),
        ] {
            for i in 1..=3 {
                let r = apply_iterated(&spec, i, 0, 17, &c).unwrap();
                assert_eq!(r.to_u64(), Some(17));
            }
        }
    }

    #[test]
    fn batched_level3_matches_plain_iteration() {
        // cross-check the plateau batching against literal application of
        // level 2
        let c = ctx();
        for t in 2..=3u32 {
            let spec = HierarchySpec::root(t);
            for n in [5u64, 9, 17, 100, 1000, 4095, 4096] {
                let fast = ft_eval(t, 3, n, &c).unwrap();
                let count = crate::arith::iroot_u64(n, t);
                let slow = apply_iterated(&spec, 2, count, n, &c).unwrap();
                assert_eq!(fast.compare(&slow), CapCmp::Equal, "t={t} n={n}");
            }
        }
    }

    #[test]
    fn saturation_is_fast_for_large_arguments() {
        // values that blow far past a small cap saturate promptly
        let c = EvalContext::new(Cap::pow2(40));
        assert!(ft_eval(2, 4, 1 << 20, &c).unwrap().is_top());
        assert!(ft_eval(2, 6, 81, &c).unwrap().is_top());
        assert!(ack_approx(3, 1 << 35, &c).unwrap().is_top());
    }

    #[test]
    fn cancellation_interrupts_evaluation() {
        let cancel = CancelToken::new();
        let c = EvalContext::with_cancel(Cap::pow2(4096), cancel.clone());
        cancel.cancel();
        let err = ft_eval(2, 6, 1_000_000, &c);
        assert!(matches!(err, Err(EvalError::Cancelled)));
    }

    #[test]
    fn mu_spec_values() {
        assert_eq!(mu_g(&BoundFn::Identity, 3, 1000), Some(36));
        assert_eq!(mu_g(&BoundFn::Identity, 0, 1000), Some(0));
        assert_eq!(mu_g(&BoundFn::Power(2), 3, 1000), Some(6));
        // bounded g never reaches the threshold
        assert_eq!(mu_g(&BoundFn::Constant(3), 5, 10_000), None);
    }

    #[test]
    fn schedule_construction_and_beta() {
        let s = Schedule::new(vec![0, 10, 100], vec![4, 7]).unwrap();
        assert_eq!(s.beta_of(0).unwrap(), 1);
        assert_eq!(s.beta_of(9).unwrap(), 1);
        assert_eq!(s.beta_of(10).unwrap(), 2);
        assert_eq!(s.beta_of(99).unwrap(), 2);
        assert!(matches!(
            s.beta_of(100),
            Err(ScheduleError::OutOfRange { .. })
        ));
        assert!(Schedule::new(vec![1, 10], vec![3]).is_err());
        assert!(Schedule::new(vec![0, 10, 10], vec![3, 3]).is_err());
        assert!(Schedule::new(vec![0, 10], vec![3, 4]).is_err());
    }

    #[test]
    fn schedule_json_round_trip_validates() {
        let s = Schedule::new(vec![0, 43, 10_000], vec![12, 6]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let back: Schedule = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
        let bad: Result<Schedule, _> = serde_json::from_str(r#"{"mu":[5,2],"k":[1]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn beta_inverse_spec_values() {
        let s = Schedule::new(vec![0, 10, 100], vec![1, 1]).unwrap();
        let beta = |n: u64| s.beta_of(n).unwrap();
        assert_eq!(beta_inverse(beta, 1, 99), Some(0));
        assert_eq!(beta_inverse(beta, 2, 99), Some(10));
        assert_eq!(beta_inverse(|_| 0, 1, 50), None);
    }

    #[test]
    fn beta_galois_consistency() {
        let s = Schedule::new(vec![0, 7, 30, 500], vec![1, 1, 1]).unwrap();
        let beta = |n: u64| s.beta_of(n).unwrap();
        for t in 1..=3u64 {
            let n = beta_inverse(beta, t, 499).unwrap();
            assert!(beta(n) >= t);
            if n > 0 {
                assert!(beta(n - 1) < t);
            }
        }
    }

    #[test]
    fn ackermannian_schedule_saturates_beyond_first_interval() {
        let c = ctx();
        let (mu, sizes) = ackermannian_schedule(3, &c).unwrap();
        assert_eq!(mu[0].to_u64(), Some(0));
        assert_eq!(mu[1].to_u64(), Some(10_000));
        assert_eq!(sizes[0].to_u64(), Some(18));
        // floor(sqrt(10^4) / 2)
        assert_eq!(sizes[1].to_u64(), Some(50));
        assert!(mu[2].is_top());
    }

    #[test]
    fn growth_checks_spec_examples() {
        let c = ctx();
        // (f_2)_3(16) = 33 >= 16 + 4^2
        let r = check_growth_inequalities(2, 3, 16, &c).unwrap();
        assert_eq!(r.checks[0].claim, "level-lower-bound");
        assert_eq!(r.checks[0].outcome, CheckOutcome::Pass);
        assert_eq!(r.checks[0].lhs, "33");
        assert_eq!(r.checks[0].rhs, "32");
        // i = 1 base case holds with equality
        let r = check_growth_inequalities(1, 1, 7, &c).unwrap();
        assert_eq!(r.checks[0].outcome, CheckOutcome::Pass);
        assert_eq!(r.checks[0].lhs, "8");
        assert_eq!(r.checks[0].rhs, "8");
    }

    #[test]
    fn growth_iteration_square_passes_at_small_point() {
        // t=1, i=1, n=3: the left side saturates, the right side is 16;
        // Top > finite decides the strict inequality
        let c = ctx();
        let r = check_growth_inequalities(1, 1, 3, &c).unwrap();
        let step = r
            .checks
            .iter()
            .find(|ch| ch.claim == "iteration-square-growth")
            .unwrap();
        assert_eq!(step.outcome, CheckOutcome::Pass);
        assert_eq!(step.rhs, "16");
    }

    #[test]
    fn growth_hypothesis_gate() {
        let c = ctx();
        let r = check_growth_inequalities(2, 1, 4, &c).unwrap(); // 4 <= 2^2
        let step = r
            .checks
            .iter()
            .find(|ch| ch.claim == "iteration-square-growth")
            .unwrap();
        assert_eq!(step.outcome, CheckOutcome::HypothesisNotMet);
    }
}
