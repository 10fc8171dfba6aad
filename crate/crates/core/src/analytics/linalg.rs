//! Fraction-free (Bareiss) elimination for small exact systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Solves `a x = b` for a square nonsingular rational matrix.
///
/// Rows are cleared of denominators, eliminated over the integers with the
/// Bareiss update and then back-substituted in rationals.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Domain("solve_exact needs a square system".into()));
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let l = row.iter().chain(std::iter::once(rhs)).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().chain(std::iter::once(rhs)).map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero()).ok_or(Error::Singular)?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Ok(x)
}
