use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::poly::{Monomial, Polynomial, VarId};
use crate::{Error, Result, Shape};

/// The four variable enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderFamily {
    /// Row-wise: `z_{1,1}, ..., z_{1,n}, z_{2,1}, ..., z_{p,n}`.
    SsFinite,
    /// By row, then cyclically from `z_{i,i}` within row `i`.
    PbwFinite,
    /// Lexicographic in `(k, i, j)`.
    SsSemiInfinite,
    /// By `k`, then `i`, then cyclically from column `kp + i mod n`.
    PbwSemiInfinite,
}

/// A degree reverse lexicographic order on the variables `z_{i,j}^{(k)}`.
///
/// The finite orders only ever see `k = 0`; on positive shifts they agree
/// with their semi-infinite extensions, which restrict to them at `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    family: OrderFamily,
    shape: Shape,
}

impl MonomialOrder {
    pub fn new(family: OrderFamily, shape: Shape) -> Self {
        MonomialOrder { family, shape }
    }

    pub fn family(&self) -> OrderFamily {
        self.family
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// First column of row `i` at shift `k`, in `[1, n]`.
    pub fn row_start(&self, i: u32, k: u32) -> u32 {
        match self.family {
            OrderFamily::SsFinite | OrderFamily::SsSemiInfinite => 1,
            OrderFamily::PbwFinite | OrderFamily::PbwSemiInfinite => {
                self.shape.modn((k * self.shape.p() + i) as i64)
            }
        }
    }

    /// Position of `v` in the enumeration; smaller means earlier.
    pub fn rank(&self, v: VarId) -> u64 {
        let (p, n) = (self.shape.p() as u64, self.shape.n() as u64);
        let start = self.row_start(v.i, v.k) as i64;
        let pos = (v.j as i64 - start).rem_euclid(n as i64) as u64;
        (v.k as u64 * p + (v.i as u64 - 1)) * n + pos
    }

    /// Degree first; on equal degree `a < b` iff the exponent difference
    /// `a - b` at the latest variable where they differ is positive.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (a.degree(), b.degree());
        if da != db {
            return da.cmp(&db);
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        let (mut x, mut y) = (0, 0);
        let mut last: Option<(u64, i64)> = None;
        let mut note = |v: VarId, diff: i64| {
            let r = self.rank(v);
            if last.is_none_or(|(lr, _)| r > lr) {
                last = Some((r, diff));
            }
        };
        while x < ea.len() || y < eb.len() {
            let take_a = y >= eb.len() || (x < ea.len() && ea[x].0 < eb[y].0);
            let take_b = x >= ea.len() || (y < eb.len() && eb[y].0 < ea[x].0);
            if take_a {
                note(ea[x].0, ea[x].1 as i64);
                x += 1;
            } else if take_b {
                note(eb[y].0, -(eb[y].1 as i64));
                y += 1;
            } else {
                let diff = ea[x].1 as i64 - eb[y].1 as i64;
                if diff != 0 {
                    note(ea[x].0, diff);
                }
                x += 1;
                y += 1;
            }
        }
        match last {
            None => Ordering::Equal,
            Some((_, d)) if d > 0 => Ordering::Less,
            Some(_) => Ordering::Greater,
        }
    }

    /// The maximal term of `f`.
    pub fn initial_term(&self, f: &Polynomial) -> Result<(BigRational, Monomial)> {
        f.terms()
            .max_by(|(a, _), (b, _)| self.compare(a, b))
            .map(|(m, c)| (c.clone(), m.clone()))
            .ok_or_else(|| Error::Domain("the zero polynomial has no initial term".into()))
    }

    /// Sorts monomials from largest to smallest.
    pub fn sort_descending(&self, monomials: &mut [Monomial]) {
        monomials.sort_by(|a, b| self.compare(b, a));
    }

    /// Realizes the order by weights `-(M+1)^r`, where `r` is the 1-based
    /// position among the occurring variables, and checks that every
    /// generator's unique heaviest term is its initial term.
    pub fn weight_check(&self, max_degree: u32, generators: &[Polynomial]) -> Result<WeightReport> {
        let mut vars: BTreeSet<VarId> = BTreeSet::new();
        for g in generators {
            if g.is_zero() {
                return Err(Error::Domain("zero generator".into()));
            }
            for m in g.monomials() {
                if m.degree() > max_degree {
                    return Err(Error::Domain(format!(
                        "generator term {m} has degree above M = {max_degree}"
                    )));
                }
                vars.extend(m.vars());
            }
        }
        let mut ordered: Vec<VarId> = vars.into_iter().collect();
        ordered.sort_by_key(|&v| self.rank(v));
        let base = BigInt::from(max_degree + 1);
        let weights: Vec<(VarId, BigInt)> = ordered
            .iter()
            .enumerate()
            .map(|(ix, &v)| (v, -num_traits::pow(base.clone(), ix + 1)))
            .collect();
        let lookup: std::collections::BTreeMap<VarId, &BigInt> =
            weights.iter().map(|(v, w)| (*v, w)).collect();
        let weight_of = |m: &Monomial| -> BigInt {
            m.exponents()
                .iter()
                .map(|&(v, e)| lookup[&v] * BigInt::from(e))
                .sum()
        };

        let mut failures = Vec::new();
        for (ix, g) in generators.iter().enumerate() {
            let scored: Vec<(BigInt, &Monomial)> = g.monomials().map(|m| (weight_of(m), m)).collect();
            let best = scored.iter().map(|(w, _)| w).max().cloned().unwrap();
            let heaviest: Vec<&Monomial> = scored
                .iter()
                .filter(|(w, _)| *w == best)
                .map(|&(_, m)| m)
                .collect();
            let (_, initial) = self.initial_term(g)?;
            if heaviest.len() != 1 {
                failures.push(format!("generator {ix}: {} terms tie for the top weight", heaviest.len()));
            } else if heaviest[0] != &initial {
                failures.push(format!(
                    "generator {ix}: heaviest term {} differs from initial term {initial}",
                    heaviest[0]
                ));
            }
        }
        Ok(WeightReport {
            max_degree,
            variables: weights.into_iter().map(|(v, w)| (v, w.to_string())).collect(),
            checked: generators.len(),
            failures,
        })
    }
}

/// Outcome of [`MonomialOrder::weight_check`].
#[derive(Debug, Clone, Serialize)]
pub struct WeightReport {
    pub max_degree: u32,
    /// Each occurring variable with its weight as a decimal string.
    pub variables: Vec<(VarId, String)>,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl WeightReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sign of a permutation of `0..len` given as a slice of images.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn sign_rat(s: i32) -> BigRational {
    if s > 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: u32, j: u32, k: u32) -> VarId {
        VarId::new(i, j, k)
    }

    fn shape(p: u32, n: u32) -> Shape {
        Shape::new(p, n).unwrap()
    }

    #[test]
    fn pbw_semi_infinite_rows_start_cyclically() {
        let ord = MonomialOrder::new(OrderFamily::PbwSemiInfinite, shape(3, 7));
        assert_eq!(ord.row_start(1, 1), 4);
        let row: Vec<u32> = {
            let mut js: Vec<u32> = (1..=7).collect();
            js.sort_by_key(|&j| ord.rank(z(1, j, 1)));
            js
        };
        assert_eq!(row, vec![4, 5, 6, 7, 1, 2, 3]);
        assert_eq!(ord.row_start(2, 1), 5);
    }

    #[test]
    fn pbw_finite_row_pattern() {
        let ord = MonomialOrder::new(OrderFamily::PbwFinite, shape(3, 7));
        let mut js: Vec<u32> = (1..=7).collect();
        js.sort_by_key(|&j| ord.rank(z(2, j, 0)));
        assert_eq!(js.first(), Some(&2));
        assert_eq!(js.last(), Some(&1));
        assert!(ord.rank(z(1, 1, 0)) < ord.rank(z(2, 2, 0)));
    }

    #[test]
    fn ss_semi_infinite_first_variable() {
        let ord = MonomialOrder::new(OrderFamily::SsSemiInfinite, shape(2, 4));
        assert_eq!(ord.rank(z(1, 1, 0)), 0);
        assert!(ord.rank(z(2, 4, 0)) < ord.rank(z(1, 1, 1)));
    }

    #[test]
    fn degrevlex_on_a_two_by_two_minor() {
        let ord = MonomialOrder::new(OrderFamily::SsFinite, shape(2, 4));
        let a = Monomial::product_of([z(1, 1, 0), z(2, 2, 0)]);
        let b = Monomial::product_of([z(1, 2, 0), z(2, 1, 0)]);
        assert_eq!(ord.compare(&a, &b), Ordering::Less);
        let x = Monomial::var(z(1, 3, 0));
        assert_eq!(ord.compare(&a, &(&a * &x)), Ordering::Less);
        assert_eq!(ord.compare(&a, &a), Ordering::Equal);
    }

    #[test]
    fn initial_term_of_zero_is_an_error() {
        let ord = MonomialOrder::new(OrderFamily::SsFinite, shape(2, 4));
        assert!(matches!(ord.initial_term(&Polynomial::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn weight_check_on_a_single_variable() {
        let ord = MonomialOrder::new(OrderFamily::SsFinite, shape(2, 4));
        let r = ord.weight_check(1, &[Polynomial::var(z(1, 1, 0))]).unwrap();
        assert!(r.passed());
        assert_eq!(r.variables[0].1, "-2");
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
        assert_eq!(permutation_sign(&[3, 2, 1, 0]), 1);
    }
}
