//! Exact natural-number arithmetic: saturating big naturals, integer roots
//! and logarithms, binomial coefficients and the pairing function `Pr`.
//!
//! Floating point is banned throughout the crate; every real-valued
//! expression (`n^{1/t}`, `sqrt(g(n))/2`, `lg n`, `log_s n`) is an exact
//! integer floor computed here.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;

/// Saturation ceiling for capped computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cap(BigUint);

impl Cap {
    pub fn new(limit: BigUint) -> Self {
        Cap(limit)
    }

    /// `2^bits`.
    pub fn pow2(bits: u32) -> Self {
        Cap(BigUint::one() << bits)
    }

    /// Default ceiling: `2^256`. Large enough for every bundled test, small
    /// enough to fail fast on runaway hierarchy values.
    pub fn default_cap() -> Self {
        Cap::pow2(256)
    }

    pub fn limit(&self) -> &BigUint {
        &self.0
    }

    /// Clamp an exact value to the ceiling.
    pub fn clamp(&self, value: BigUint) -> CappedNat {
        if value > self.0 {
            CappedNat::Top
        } else {
            CappedNat::Finite(value)
        }
    }

    pub fn clamp_u64(&self, value: u64) -> CappedNat {
        self.clamp(BigUint::from(value))
    }
}

/// A natural number below a saturation ceiling, or the absorbing sentinel
/// `Top` standing for "exceeded the ceiling".
///
/// `Top` is absorbing under every monotone operation. Comparisons involving
/// `Top` follow the saturation order: `Top` is greater than every finite
/// value, while `Top` vs `Top` is reported as [`CapCmp::Indeterminate`],
/// never as equal.
#[derive(Clone, Debug)]
pub enum CappedNat {
    Finite(BigUint),
    Top,
}

/// Outcome of comparing two capped values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapCmp {
    Less,
    Equal,
    Greater,
    /// Both sides saturated; the true order is unknown.
    Indeterminate,
}

impl CappedNat {
    pub fn from_u64(v: u64, cap: &Cap) -> Self {
        cap.clamp_u64(v)
    }

    pub fn zero() -> Self {
        CappedNat::Finite(BigUint::zero())
    }

    pub fn is_top(&self) -> bool {
        matches!(self, CappedNat::Top)
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            CappedNat::Finite(v) => Some(v),
            CappedNat::Top => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.finite().and_then(|v| u64::try_from(v).ok())
    }

    pub fn add(&self, other: &CappedNat, cap: &Cap) -> CappedNat {
        match (self, other) {
            (CappedNat::Finite(a), CappedNat::Finite(b)) => cap.clamp(a + b),
            _ => CappedNat::Top,
        }
    }

    pub fn mul(&self, other: &CappedNat, cap: &Cap) -> CappedNat {
        match (self, other) {
            (CappedNat::Finite(a), CappedNat::Finite(b)) => cap.clamp(a * b),
            _ => CappedNat::Top,
        }
    }

    pub fn pow(&self, exp: u64, cap: &Cap) -> CappedNat {
        match self {
            CappedNat::Top => {
                if exp == 0 {
                    CappedNat::Finite(BigUint::one())
                } else {
                    CappedNat::Top
                }
            }
            CappedNat::Finite(base) => pow_clamped(base, exp, cap),
        }
    }

    pub fn compare(&self, other: &CappedNat) -> CapCmp {
        match (self, other) {
            (CappedNat::Top, CappedNat::Top) => CapCmp::Indeterminate,
            (CappedNat::Top, CappedNat::Finite(_)) => CapCmp::Greater,
            (CappedNat::Finite(_), CappedNat::Top) => CapCmp::Less,
            (CappedNat::Finite(a), CappedNat::Finite(b)) => match a.cmp(b) {
                std::cmp::Ordering::Less => CapCmp::Less,
                std::cmp::Ordering::Equal => CapCmp::Equal,
                std::cmp::Ordering::Greater => CapCmp::Greater,
            },
        }
    }
}

impl fmt::Display for CappedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CappedNat::Finite(v) => write!(f, "{v}"),
            CappedNat::Top => write!(f, "TOP"),
        }
    }
}

/// `base^exp` clamped to the cap without materialising oversized powers:
/// square-and-multiply, saturating as soon as an intermediate crosses the cap.
fn pow_clamped(base: &BigUint, exp: u64, cap: &Cap) -> CappedNat {
    if exp == 0 {
        return cap.clamp(BigUint::one());
    }
    if base.is_zero() || base.is_one() {
        return cap.clamp(base.clone());
    }
    let mut acc = BigUint::one();
    let mut sq = base.clone();
    let mut e = exp;
    loop {
        if e & 1 == 1 {
            acc *= &sq;
            if acc > *cap.limit() {
                return CappedNat::Top;
            }
        }
        e >>= 1;
        if e == 0 {
            return CappedNat::Finite(acc);
        }
        sq = &sq * &sq;
        if sq > *cap.limit() {
            // still fine if no multiplications remain that use sq
            if acc.is_one() && e == 1 {
                return CappedNat::Top;
            }
            return CappedNat::Top;
        }
    }
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The pairing function `Pr(m, n) = C(m+n+1, 2) + n`, a bijection from
/// ordered pairs onto the naturals, strictly monotone in each argument.
pub fn pair_encode(m: u64, n: u64) -> u64 {
    let s = m.checked_add(n).expect("pair_encode: diagonal overflow");
    // C(s+1, 2) = s(s+1)/2
    let tri = if s % 2 == 0 {
        (s / 2).checked_mul(s + 1)
    } else {
        ((s + 1) / 2).checked_mul(s)
    }
    .expect("pair_encode: triangular overflow");
    tri.checked_add(n).expect("pair_encode: overflow")
}

/// `Pr` on capped big naturals; saturates to `Top` when the result would
/// exceed the cap.
pub fn pair_encode_capped(m: &CappedNat, n: &CappedNat, cap: &Cap) -> CappedNat {
    match (m, n) {
        (CappedNat::Finite(m), CappedNat::Finite(n)) => {
            let s: BigUint = m + n;
            let tri: BigUint = (&s * (&s + 1u32)) / 2u32;
            cap.clamp(tri + n)
        }
        _ => CappedNat::Top,
    }
}

/// Inverse of [`pair_encode`]: the unique `(m, n)` with `Pr(m, n) = p`.
pub fn pair_decode(p: u64) -> (u64, u64) {
    // Largest diagonal s with s(s+1)/2 <= p; isqrt(2p) is within one of it.
    let mut s = iroot_u64(p.saturating_mul(2).min(u64::MAX), 2);
    while s > 0 && triangular(s) > p {
        s -= 1;
    }
    while triangular(s + 1) <= p {
        s += 1;
    }
    let n = p - triangular(s);
    let m = s - n;
    (m, n)
}

fn triangular(s: u64) -> u64 {
    if s % 2 == 0 {
        s / 2 * (s + 1)
    } else {
        (s + 1) / 2 * s
    }
}

/// Exact `floor(n^(1/t))`: the largest `r` with `r^t <= n`. Pure integer
/// Newton iteration; no floating point.
///
/// `t = 0` is a contract violation and panics.
pub fn iroot_u64(n: u64, t: u32) -> u64 {
    assert!(t >= 1, "iroot: root degree must be >= 1");
    if t == 1 || n <= 1 {
        return n;
    }
    if t >= 64 {
        return 1; // n >= 2 and 2^64 > u64::MAX >= n
    }
    let bits = 64 - n.leading_zeros();
    // 2^ceil(bits/t) is an upper bound for the root.
    let mut r = 1u64 << bits.div_ceil(t);
    loop {
        // Newton step on r^t - n, staying in u128 to avoid overflow.
        let rp = pow_u128(r as u128, t - 1);
        let q = if rp == 0 { 0 } else { (n as u128 / rp) as u64 };
        let next = ((t as u64 - 1).saturating_mul(r).saturating_add(q)) / t as u64;
        if next >= r {
            break;
        }
        r = next;
    }
    // The iteration lands within one of the root; fix up exactly.
    while pow_le(r + 1, t, n) {
        r += 1;
    }
    while !pow_le(r, t, n) {
        r -= 1;
    }
    r
}

fn pow_u128(mut base: u128, mut exp: u32) -> u128 {
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.saturating_mul(base);
        }
        base = base.saturating_mul(base);
        exp >>= 1;
    }
    acc
}

/// `r^t <= n`, evaluated without overflow.
fn pow_le(r: u64, t: u32, n: u64) -> bool {
    let mut acc = 1u128;
    for _ in 0..t {
        acc *= r as u128;
        if acc > n as u128 {
            return false;
        }
    }
    acc <= n as u128
}

/// [`iroot_u64`] for big naturals.
pub fn iroot(n: &BigUint, t: u32) -> BigUint {
    assert!(t >= 1, "iroot: root degree must be >= 1");
    if t == 1 || n <= &BigUint::one() {
        return n.clone();
    }
    if let Ok(small) = u64::try_from(n) {
        return BigUint::from(iroot_u64(small, t));
    }
    let bits = n.bits();
    let mut r: BigUint = BigUint::one() << bits.div_ceil(t as u64);
    loop {
        let rp = r.pow(t - 1);
        let next: BigUint = ((&r * (t - 1)) + n / rp) / t;
        if next >= r {
            break;
        }
        r = next;
    }
    while (&r + 1u32).pow(t) <= *n {
        r += 1u32;
    }
    while r.pow(t) > *n {
        r -= 1u32;
    }
    r
}

/// Largest `e` with `base^e <= n`. `n = 0` is a contract violation.
pub fn ilog_u64(n: u64, base: u64) -> u64 {
    assert!(n >= 1, "ilog: argument must be >= 1");
    assert!(base >= 2, "ilog: base must be >= 2");
    let mut e = 0;
    let mut cur = 1u64;
    while cur <= n / base {
        cur *= base;
        e += 1;
    }
    // cur = base^e and base^(e+1) would exceed n/base*base; exact check:
    if cur.checked_mul(base).map(|x| x <= n).unwrap_or(false) {
        e + 1
    } else {
        e
    }
}

/// [`ilog_u64`] for big naturals.
pub fn ilog(n: &BigUint, base: u64) -> u64 {
    assert!(!n.is_zero(), "ilog: argument must be >= 1");
    assert!(base >= 2, "ilog: base must be >= 2");
    if let Ok(small) = u64::try_from(n) {
        return ilog_u64(small, base);
    }
    let mut e = 0u64;
    let mut cur = BigUint::one();
    let big_base = BigUint::from(base);
    loop {
        let next = &cur * &big_base;
        if next <= *n {
            cur = next;
            e += 1;
        } else {
            return e;
        }
    }
}
