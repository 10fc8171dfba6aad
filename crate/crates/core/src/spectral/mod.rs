//! Topological recursion on the curves `x = -z + a ln z`, `y = z^b`.

pub mod basis;
pub mod coefficients;
pub mod curve;
pub mod fg0;
pub mod ftable;
pub mod kernel;
pub mod monomial;
pub mod xi;

pub use basis::{check_basis_symmetry, f_table, memoized_f_tables, over_degree_entries, preload_f_table, tables_computed};
pub use coefficients::{tr_coefficients_closed, tr_coefficients_local, TrCoefficients};
pub use curve::{involution, sigma_hat_series, x_local_series, CurveParams};
pub use fg0::{f_g0, f_g0_residue};
pub use ftable::FTable;
pub use kernel::{kernel_on_xi, recursion_kernel_series};
pub use monomial::{
    decompose_amplitude, f_table_monomial, f_zero_residue, set_truncation_margin, tr_amplitude,
    tr_amplitude_at_order, tr_amplitude_family, truncation_margin,
};
pub use xi::{decompose_on_xi, xi_basis};
