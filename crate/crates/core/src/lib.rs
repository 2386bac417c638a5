pub mod error;
pub mod integrate;
pub mod real;
pub mod specfun;
pub mod fseries;
pub mod direct;
pub mod quadrature;
pub mod asymptotics;
pub mod harness;

pub use asymptotics::{
    eval_asymptotic, eval_form, leading_form, AsymptoticForm, Conventions, Osc, OscTerm, PhaseConvention, Regime,
    TableSign, Term,
};
pub use direct::{sum_derivative_series, sum_series, DerivKind, EvalResult, Method, SeriesSpec};
pub use error::{Error, Result};
pub use quadrature::{eval_exp2d, eval_hankel, eval_lifted, QuadratureConfig};
pub use real::Real;
