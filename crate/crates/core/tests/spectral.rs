use qdvol_core::exact::{int, rat};
use qdvol_core::spectral::monomial::working_order;
use qdvol_core::spectral::{
    check_basis_symmetry, f_g0, f_g0_residue, f_table, f_zero_residue, over_degree_entries, tr_amplitude,
    tr_amplitude_at_order, tr_coefficients_closed, tr_coefficients_local, x_local_series, CurveParams,
};

#[test]
fn raising_the_working_order_changes_nothing() {
    let p = CurveParams::principal();
    for (g, n) in [(0, 5), (1, 2), (1, 3), (2, 1), (2, 2)] {
        let hi = tr_amplitude_at_order(&p, g, n, working_order(g, n) + 5).unwrap();
        assert_eq!(hi, *tr_amplitude(g, n).unwrap(), "({g}, {n})");
    }
}

#[test]
fn zero_residue_is_the_zero_entry() {
    assert_eq!(f_zero_residue(1, 2).unwrap(), rat(1, 32));
    assert_eq!(f_zero_residue(0, 4).unwrap(), rat(-1, 4));
    for (g, n) in [(0, 3), (0, 6), (1, 1), (1, 4), (2, 2), (3, 1)] {
        assert_eq!(f_zero_residue(g, n).unwrap(), f_table(g, n).unwrap().zero_entry(), "({g}, {n})");
    }
}

#[test]
fn tables_are_symmetric_and_bounded() {
    for (g, n) in [(0, 5), (0, 6), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)] {
        check_basis_symmetry(g, n).unwrap();
        assert!(over_degree_entries(g, n, 2).unwrap().is_empty(), "({g}, {n})");
    }
}

#[test]
fn n_zero_routes() {
    assert_eq!(f_g0(2).unwrap(), rat(-1, 384));
    assert_eq!(f_g0(3).unwrap(), f_g0_residue(3).unwrap());
}

#[test]
fn tr_coefficient_routes() {
    for (a, b, d) in [(int(-1), 2, 10), (int(-4), 3, 10), (int(-1), 1, 6)] {
        let p = CurveParams::new(a, b).unwrap();
        let closed = tr_coefficients_closed(&p, d).unwrap();
        assert_eq!(closed, tr_coefficients_local(&p, d).unwrap());
        // B_{d+1} vanishes for even d >= 2; odd d >= 3 is generically nonzero.
        for k in (2..=d).step_by(2) {
            assert_eq!(closed.r[k - 1], int(0));
        }
    }
    let principal = tr_coefficients_closed(&CurveParams::principal(), 3).unwrap();
    assert_eq!(principal.r[2], rat(-1, 360));
    // e^{t_0} = -i b^{-1} a^{1/2-b}: at (a, b) = (-1, 1), T(0)^2 = 1.
    let c = tr_coefficients_local(&CurveParams::new(int(-1), 1).unwrap(), 3).unwrap();
    assert_eq!(c.t0_squared, int(1));
}

#[test]
fn local_coordinate_squares_back() {
    let p = CurveParams::principal();
    let x = x_local_series(&p, 12).unwrap();
    let zeta = x.scale(&int(2)).sqrt().unwrap();
    assert_eq!(zeta.coeff(1).unwrap(), int(1));
    assert_eq!(zeta.coeff(2).unwrap(), rat(1, 3));
    assert_eq!(zeta.mul(&zeta).truncate(10), x.scale(&int(2)).truncate(10));
}
