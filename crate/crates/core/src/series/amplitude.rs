use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Sparse Laurent polynomial in `1/t_1, ..., 1/t_n`.
///
/// Keys are pole orders, so the stored key `[2, 3]` is the monomial
/// `t_1^{-2} t_2^{-3}`. Every stored term has all pole orders at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amplitude {
    arity: usize,
    terms: HashMap<Vec<u16>, Rational>,
}

impl Amplitude {
    pub fn new(arity: usize) -> Self {
        Amplitude { arity, terms: HashMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` to the coefficient at the given pole orders.
    pub fn add_term(&mut self, poles: Vec<u16>, c: Rational) -> Result<()> {
        if poles.len() != self.arity {
            return Err(Error::Domain(format!("expected {} pole orders, got {}", self.arity, poles.len())));
        }
        if poles.contains(&0) {
            return Err(Error::Domain("amplitude terms need a pole in every variable".into()));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(poles) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
        Ok(())
    }

    /// Coefficient of `prod t_i^{exponents_i}`; zero if absent.
    pub fn coefficient(&self, exponents: &[i64]) -> Result<Rational> {
        if exponents.len() != self.arity {
            return Err(Error::Domain(format!(
                "exponent tuple has length {}, amplitude has arity {}",
                exponents.len(),
                self.arity
            )));
        }
        if exponents.iter().any(|&e| e >= 0 || e < -(u16::MAX as i64)) {
            return Ok(Rational::zero());
        }
        let key: Vec<u16> = exponents.iter().map(|&e| (-e) as u16).collect();
        Ok(self.terms.get(&key).cloned().unwrap_or_else(Rational::zero))
    }

    /// `(pole orders, coefficient)` pairs in unspecified order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Terms sorted by key, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(Vec<u16>, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        v.sort();
        v
    }

    /// Checks invariance under every transposition of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (1..self.arity).all(|i| {
            self.terms.iter().all(|(k, c)| {
                let mut swapped = k.clone();
                swapped.swap(i - 1, i);
                self.terms.get(&swapped) == Some(c)
            })
        })
    }

    /// Highest pole order in any variable.
    pub fn max_pole(&self) -> u16 {
        self.terms.keys().flat_map(|k| k.iter().copied()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn lookup_and_arity() {
        let mut w = Amplitude::new(2);
        w.add_term(vec![2, 3], rat(1, 2)).unwrap();
        w.add_term(vec![3, 2], rat(1, 2)).unwrap();
        assert_eq!(w.coefficient(&[-2, -3]).unwrap(), rat(1, 2));
        assert_eq!(w.coefficient(&[0, -3]).unwrap(), int(0));
        assert!(w.coefficient(&[-2]).is_err());
        assert!(w.is_symmetric());
        w.add_term(vec![1, 1], int(1)).unwrap();
        w.add_term(vec![4, 1], int(1)).unwrap();
        assert!(!w.is_symmetric());
        assert!(w.add_term(vec![0, 1], int(1)).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut w = Amplitude::new(1);
        w.add_term(vec![2], int(1)).unwrap();
        w.add_term(vec![2], int(-1)).unwrap();
        assert!(w.is_empty());
    }
}
