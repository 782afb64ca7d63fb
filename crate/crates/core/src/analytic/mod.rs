//! Complex-plane evaluation: log-Gamma, Hurwitz and Riemann zeta,
//! Dirichlet L-functions and continued periodic Dirichlet series.

mod function;
mod gamma;
mod hurwitz;
mod series;

pub use function::{dirichlet_l, eval_f0, FunctionSpec};
pub use gamma::{gamma, log_gamma};
pub(crate) use gamma::{ln_cos, ln_sin};
pub use hurwitz::{hurwitz_regular, hurwitz_zeta, hurwitz_zeta_eval, riemann_zeta, Evaluation};
pub use series::{
    abscissa_of_convergence, direct_sum, periodic_l, periodic_sum, PeriodicSeries, QuadInt,
    POLE_EXCLUSION,
};
