//! From F-tables to volumes, Siegel-Veech constants, Lyapunov sums and the
//! fixed-genus polynomials.

pub mod asymptotic;
pub mod hodge;
pub mod linalg;
pub mod poly;
pub mod siegel;
pub mod volume;

pub use asymptotic::{asymptotics, Asymptotic, AsymptoticMode};
pub use hodge::{
    hodge_constants, kappa_prime_extract, lplus_via_rs, pq_polynomials, rs_polynomials, theta_prime_extract, u_norm,
    HodgeConstants, LyapunovPolynomials, VolumePolynomials,
};
pub use linalg::solve_exact;
pub use poly::RationalPolynomial;
pub use siegel::{carea_lplus_g1_closed, carea_principal, lplus_principal};
pub use volume::{check_stratum, segre_number, v_norm, volume_g1_closed, volume_principal, volume_via_pq};
