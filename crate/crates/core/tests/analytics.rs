use num_traits::Signed;
use qdvol_core::analytics::*;
use qdvol_core::exact::{gamma_k, int, rat};
use qdvol_core::wk::psi2_top_intersection;
use qdvol_core::PiScalar;

#[test]
fn genus_one_volume_routes_agree() {
    for n in 2..=10 {
        assert_eq!(volume_principal(1, n).unwrap(), volume_g1_closed(n).unwrap(), "n = {n}");
    }
    assert_eq!(volume_via_pq(1, 5).unwrap(), volume_g1_closed(5).unwrap());
}

#[test]
fn genus_one_siegel_veech_closed_loop() {
    for n in 2..=8 {
        let (c, l) = carea_lplus_g1_closed(n).unwrap();
        assert_eq!(carea_principal(1, n).unwrap(), c, "n = {n}");
        assert_eq!(lplus_principal(1, n).unwrap(), l, "n = {n}");
    }
}

#[test]
fn fixed_genus_polynomials_out_of_sample() {
    for g in 2..=3u32 {
        let pq = pq_polynomials(g).unwrap();
        assert_eq!(pq.p.degree(), Some((g as usize - 1) / 2));
        assert_eq!(pq.q.degree(), Some(g as usize / 2));
        for n in g + 1..=g + 4 {
            let x = int(n as i64);
            let fit = pq.p.eval(&x) + gamma_k(2 * g as i64 - 3 + n as i64).unwrap() * pq.q.eval(&x);
            assert_eq!(v_norm(g, n).unwrap(), fit, "(g, n) = ({g}, {n})");
            assert_eq!(volume_via_pq(g, n).unwrap(), volume_principal(g, n).unwrap());
        }
    }
}

#[test]
fn lyapunov_polynomials_agree_with_boundary_recursion() {
    for g in 2..=3u32 {
        let rs = rs_polynomials(g).unwrap();
        assert_eq!(rs.r.degree(), Some(g as usize / 2));
        assert_eq!(rs.s.degree(), Some((g as usize).div_ceil(2)));
        for n in 0..=g + 2 {
            assert_eq!(lplus_via_rs(g, n).unwrap(), lplus_principal(g, n).unwrap(), "(g, n) = ({g}, {n})");
        }
    }
}

#[test]
fn hodge_constants_positive_and_match_psi_intersections() {
    for g in 2..=3u32 {
        let h = hodge_constants(g).unwrap();
        assert!(h.kappa.iter().chain(&h.theta).all(|x| x.is_positive()), "g = {g}");
        assert_eq!(h.kappa[g as usize], psi2_top_intersection(g).unwrap());
    }
    let h = theta_prime_extract(2).unwrap();
    for n in 3..=4u32 {
        let b = 2 * n as i64;
        let mut sum = int(0);
        for (i, t) in h.theta_prime.iter().enumerate() {
            let r = qdvol_core::exact::double_factorial(b + i as i64).unwrap()
                / qdvol_core::exact::double_factorial(b).unwrap();
            sum += t * r;
        }
        assert_eq!(sum * int(64), u_norm(2, n).unwrap());
    }
}

#[test]
fn genus_two_chain() {
    assert_eq!(carea_principal(2, 0).unwrap(), PiScalar::new(rat(19, 6), -2));
    assert_eq!(lplus_principal(2, 0).unwrap(), rat(4, 3));
    assert_eq!(u_norm(2, 0).unwrap(), rat(4, 9));
}

#[test]
fn positivity() {
    for (g, n) in [(0, 4), (0, 7), (1, 2), (1, 6), (2, 0), (2, 3), (3, 0), (3, 2)] {
        assert!(volume_principal(g, n).unwrap().coefficient().is_positive(), "({g}, {n})");
        assert!(carea_principal(g, n).unwrap().coefficient().is_positive(), "({g}, {n})");
    }
}

#[test]
fn asymptotic_trend() {
    for g in 1..=2 {
        let a100 = asymptotics(g, 100, AsymptoticMode::Volume).unwrap();
        let a300 = asymptotics(g, 300, AsymptoticMode::Volume).unwrap();
        assert!((a300.ratio() - 1.0).abs() < 0.15, "g = {g}: {}", a300.ratio());
        assert!((a300.ratio() - 1.0).abs() < (a100.ratio() - 1.0).abs());
    }
    let l = asymptotics(1, 300, AsymptoticMode::Lplus).unwrap();
    let scaled = l.value() * 300f64.sqrt();
    assert!((scaled / (2.0 / std::f64::consts::PI.sqrt()) - 1.0).abs() < 0.1);
}
