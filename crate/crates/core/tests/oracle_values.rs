//! F-table values frozen from an independent exact implementation of the
//! recursion (plain rational arithmetic on monomials, written separately).

use qdvol_core::exact::rat;
use qdvol_core::spectral::{f_table_monomial, FTable};
use qdvol_core::Rational;

fn check(t: &FTable, rows: &[(&[usize], Rational)]) {
    for (k, v) in rows {
        assert_eq!(t.get(k), *v, "F_{{{},{}}}{:?}", t.g, t.n, k);
    }
    assert_eq!(t.len(), rows.len(), "F_{{{},{}}} has unexpected extra entries", t.g, t.n);
}

pub fn g2n2() -> Vec<(&'static [usize], Rational)> {
    vec![
        (&[0, 0], rat(-337, 18432)),
        (&[1, 0], rat(337, 18432)),
        (&[1, 1], rat(-89, 5760)),
        (&[2, 0], rat(-451, 46080)),
        (&[2, 1], rat(641, 92160)),
        (&[2, 2], rat(-109, 46080)),
        (&[3, 0], rat(293, 92160)),
        (&[3, 1], rat(-19, 11520)),
        (&[3, 2], rat(29, 92160)),
        (&[4, 0], rat(-7, 11520)),
        (&[4, 1], rat(1, 6144)),
        (&[5, 0], rat(1, 18432)),
    ]
}

pub fn g3n1() -> Vec<(&'static [usize], Rational)> {
    let v = [
        rat(-20555, 2654208),
        rat(20555, 2654208),
        rat(-81785, 18579456),
        rat(30035, 18579456),
        rat(-18833, 46448640),
        rat(6427, 92897280),
        rat(-49, 6635520),
        rat(1, 2654208),
    ];
    const K: [&[usize]; 8] = [&[0], &[1], &[2], &[3], &[4], &[5], &[6], &[7]];
    K.iter().copied().zip(v).collect()
}

pub fn g0n6() -> Vec<(&'static [usize], Rational)> {
    vec![
        (&[0, 0, 0, 0, 0, 0], rat(-15, 16)),
        (&[1, 0, 0, 0, 0, 0], rat(15, 16)),
        (&[1, 1, 0, 0, 0, 0], rat(-3, 4)),
        (&[1, 1, 1, 0, 0, 0], rat(3, 8)),
        (&[2, 0, 0, 0, 0, 0], rat(-3, 8)),
        (&[2, 1, 0, 0, 0, 0], rat(3, 16)),
        (&[3, 0, 0, 0, 0, 0], rat(1, 16)),
    ]
}

pub fn g1n4() -> Vec<(&'static [usize], Rational)> {
    vec![
        (&[0, 0, 0, 0], rat(21, 128)),
        (&[1, 0, 0, 0], rat(-21, 128)),
        (&[1, 1, 0, 0], rat(13, 96)),
        (&[1, 1, 1, 0], rat(-5, 64)),
        (&[1, 1, 1, 1], rat(1, 64)),
        (&[2, 0, 0, 0], rat(5, 64)),
        (&[2, 1, 0, 0], rat(-19, 384)),
        (&[2, 1, 1, 0], rat(1, 64)),
        (&[2, 2, 0, 0], rat(1, 96)),
        (&[3, 0, 0, 0], rat(-1, 48)),
        (&[3, 1, 0, 0], rat(1, 128)),
        (&[4, 0, 0, 0], rat(1, 384)),
    ]
}

#[test]
fn monomial_route_matches_oracle() {
    check(&f_table_monomial(2, 2).unwrap(), &g2n2());
    check(&f_table_monomial(3, 1).unwrap(), &g3n1());
    check(&f_table_monomial(0, 6).unwrap(), &g0n6());
    check(&f_table_monomial(1, 4).unwrap(), &g1n4());
}
