use qdvol_core::exact::{int, pow, rat, Rational};
use qdvol_core::spectral::{f_table, tr_amplitude, tr_amplitude_family, CurveParams};
use qdvol_core::wk::{tau_correlator, TauIndex};

/// `W^{[a,b]}` coefficient of `prod t_i^{-p_i}` is `(-a)^{(b+1)(2-2g-n) - n + sum p_i}`
/// times the `a = -1` coefficient.
fn check_scaling(a: Rational, b: i64, g: u32, n: u32) {
    let base = tr_amplitude_family(&CurveParams::new(int(-1), b).unwrap(), g, n).unwrap();
    let fam = tr_amplitude_family(&CurveParams::new(a.clone(), b).unwrap(), g, n).unwrap();
    assert_eq!(base.len(), fam.len(), "({g}, {n})");
    let minus_a = -a;
    for (key, c) in base.terms() {
        let e = (b + 1) * (2 - 2 * g as i64 - n as i64) - n as i64 + key.iter().map(|&p| p as i64).sum::<i64>();
        let exps: Vec<i64> = key.iter().map(|&p| -(p as i64)).collect();
        assert_eq!(fam.coefficient(&exps).unwrap(), c * pow(&minus_a, e).unwrap(), "({g}, {n}) at {key:?}");
    }
}

#[test]
fn scaling_law_small_strata() {
    for (g, n) in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 1)] {
        check_scaling(int(-4), 2, g, n);
    }
}

#[test]
fn scaling_law_other_parameters() {
    for (g, n) in [(0, 3), (0, 4), (1, 1), (1, 2)] {
        check_scaling(rat(3, 2), 3, g, n);
        check_scaling(int(-4), -1, g, n);
    }
}

#[test]
fn family_specializes_to_principal() {
    let p = CurveParams::principal();
    assert_eq!(*tr_amplitude_family(&p, 1, 2).unwrap(), *tr_amplitude(1, 2).unwrap());
}

/// In top degree `sum k_i = 3g - 3 + n` only the trivial Segre term survives, so
/// `F_{g,n}[k] = 2^{2-2g-n} <tau_{k_1} ... tau_{k_n}>_g`.
#[test]
fn top_degree_entries_are_psi_intersections() {
    for (g, n) in [(0, 3), (0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 1)] {
        let f = f_table(g, n).unwrap();
        let top = (3 * g as i64 - 3 + n as i64) as usize;
        let scale = pow(&int(2), 2 - 2 * g as i64 - n as i64).unwrap();
        let mut seen = 0;
        for idx in qdvol_core::wk::dimension_compatible(g, n as usize) {
            let ks: Vec<usize> = idx.indices().iter().map(|&d| d as usize).collect();
            assert_eq!(ks.iter().sum::<usize>(), top);
            let tau = tau_correlator(&TauIndex::new(g, idx.indices())).unwrap();
            assert_eq!(f.get(&ks), &scale * tau, "({g}, {n}) at {ks:?}");
            seen += 1;
        }
        assert!(seen > 0);
    }
    // The printed table lists F_{1,2}[2,0] = -1/96; the psi intersection gives +1/96.
    assert_eq!(f_table(1, 2).unwrap().get(&[2, 0]), rat(1, 96));
}
