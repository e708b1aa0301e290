//! Exact combinatorics of g-regressive pair colorings.
//!
//! A coloring `c` of pairs `{m, n}` of naturals is *g-regressive* when
//! `c(m, n) <= g(min(m, n))`. This crate provides, entirely in exact integer
//! arithmetic:
//!
//! * [`arith`] — saturating big naturals, integer roots/logs, the pairing
//!   function `Pr(m, n) = C(m+n+1, 2) + n`;
//! * [`hierarchy`] — fast-growing function hierarchies (Ackermann
//!   approximations, root-step and g-step families), interval schedules and
//!   their step functions;
//! * [`colorings`] — the bound-function mini-language, semi-metric machinery
//!   and the concrete colorings (orbit coloring `c_g`, base-10 difference
//!   coloring, the bundled 42-vertex Ramsey witness table, stitched piecewise
//!   colorings, base-s digit colorings);
//! * [`search`] — exhaustive branch-and-bound for min-homogeneous and
//!   homogeneous subsets, the greedy extraction procedures, exact computation
//!   of the least N forcing a min-homogeneous k-set, and DIMACS CNF export.

pub mod arith;
pub mod colorings;
pub mod hierarchy;
pub mod search;
