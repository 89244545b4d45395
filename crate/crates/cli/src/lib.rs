//! IO formats, CSV emitters, and the Monte Carlo experiment harness around
//! `swcap-core`. The `swcap` binary is a thin argument layer over this.

pub mod csvfmt;
pub mod harness;
pub mod json;
