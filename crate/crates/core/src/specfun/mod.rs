//! Error-bounded special functions: Γ-quotients, unit-argument ₃F₂, Appell F₃,
//! and a quadrature oracle for the Euler double integral.

mod appell;
mod dixon;
mod gamma;
mod hyp3f2;
mod quadrature;
mod series;

pub use appell::{appell_f3_unit, AppellF3Params};
pub use dixon::{dixon_disagreement, dixon_expressions, dixon_family, gamma_hyp_product, DixonExpression, DixonMember};
pub use gamma::{bernoulli, gamma_quotient, gamma_quotient_bits, ln_gamma, ln_gamma_bits, ln_gamma_bounded};
pub use hyp3f2::{hyp3f2_unit, hyp3f2_unit_target, Hyp3F2Params};
pub use quadrature::{beta_quadrature, euler_double_integral, integrate, QuadResult, QuadratureSpec};
pub use series::{RatioSeries, SeriesSum};
