//! Forward growth processes and their time reversals.
//!
//! The forward process `X_{n+1} = X_n + Y_{n+1}` is the simple random walk,
//! the coupon collector, the Chinese restaurant process, or the descent
//! process of the random permutation process. Conditioned on `X_m = l`,
//! read backwards from `(m, l)`, it is the inhomogeneous chain with
//! transitions `p0(n,k) = b T(n-1,k) / T(n,k)` to `(n-1,k)` and
//! `p1(n,k) = a T(n-1,k-1) / T(n,k)` to `(n-1,k-1)`.

mod idla;
mod kernel;
mod law;
mod path;

pub use idla::{
    idla_histogram, idla_run, idla_simulate, tanny_draw, tanny_histogram, tanny_sample,
};
pub use kernel::{
    forward_kernel, forward_kernel_exact, reverse_transition, reverse_transition_exact,
    ExactTransitionPair, ExactTransitions, ForwardParams, Precision, ReversedChain, TransitionPair,
    EXACT_THRESHOLD,
};
pub use law::{conditioned_forward_law, reversed_law, PathLaw, ENUMERATION_BOUND};
pub use path::{simulate_forward, simulate_reversed, Direction, PathSample, State};
