//! Special functions: the gamma function on the complex plane and the
//! two-parameter Mittag-Leffler function.

pub mod gamma;
pub mod mittag_leffler;

pub use gamma::{gamma, gamma_real, ln_abs_gamma_real, recip_gamma_real};
pub use mittag_leffler::{caputo_sin_closed_form, mittag_leffler, MLParams};
