//! Exact combinatorics and commutative algebra behind the toric degenerations of
//! the Grassmannian `Gr(p, n)` and of its semi-infinite (quantum) counterpart.
//!
//! The crate builds the posets `Q(p, n)` and `Q̃(p, n)`, their interpolating
//! poset polytopes, the Plücker generators `D_I^(k)` together with four
//! degree reverse lexicographic monomial orders, and checks at small scale
//! that the generators form sagbi bases whose initial algebras are the
//! (generalized) Hibi rings of `Q̃`.
//!
//! Everything is exact: coefficients are arbitrary precision rationals and no
//! floating point value is used anywhere.

pub mod degen;
pub mod exec;
pub mod pluecker;
pub mod polytope;
pub mod poset;
pub mod symalg;
pub mod tableaux;

use std::fmt;

pub use exec::Exec;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("invalid cell coordinates: {0}")]
    Coordinate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("partition error: {0}")]
    Partition(String),
    #[error("point is not a lattice point of the {k}-th dilation")]
    NotInDilation { k: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("resource cap exceeded: {what} would exceed {cap} items")]
    ResourceCap { what: &'static str, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

/// The pair `(p, n)` with `1 <= p < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Shape {
    p: u32,
    n: u32,
}

impl Shape {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if p == 0 || p >= n {
            return Err(Error::Params(format!("need 1 <= p < n, got p={p}, n={n}")));
        }
        Ok(Shape { p, n })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `a mod n` with values in `[1, n]`.
    #[inline]
    pub fn modn(&self, a: i64) -> u32 {
        modn(a, self.n)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, n={})", self.p, self.n)
    }
}

/// `a mod n` taking values in `[1, n]`.
#[inline]
pub fn modn(a: i64, n: u32) -> u32 {
    ((a - 1).rem_euclid(n as i64) + 1) as u32
}

/// Caps on the size of enumerations. Exceeding a cap is an error, never a
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_items: usize,
}

impl Limits {
    pub const DEFAULT_MAX_ITEMS: usize = 1_000_000;

    pub fn new(max_items: usize) -> Self {
        Limits { max_items }
    }

    pub(crate) fn check(&self, what: &'static str, count: usize) -> Result<()> {
        if count > self.max_items {
            Err(Error::ResourceCap { what, cap: self.max_items })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_items: Self::DEFAULT_MAX_ITEMS }
    }
}

/// Binomial coefficient, exact for the small arguments used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modn_takes_values_in_one_to_n() {
        assert_eq!(modn(7, 7), 7);
        assert_eq!(modn(0, 7), 7);
        assert_eq!(modn(8, 7), 1);
        assert_eq!(modn(-3, 9), 6);
        assert_eq!(modn(3 + 1, 7), 4);
    }

    #[test]
    fn shape_rejects_degenerate_parameters() {
        assert!(Shape::new(0, 3).is_err());
        assert!(Shape::new(3, 3).is_err());
        assert!(Shape::new(4, 3).is_err());
        assert!(Shape::new(2, 4).is_ok());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(2, 3), 0);
    }
}
