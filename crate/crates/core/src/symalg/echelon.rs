use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use super::order::MonomialOrder;
use super::poly::{Monomial, Polynomial};

/// A sparse row: `(column, coefficient)` pairs with increasing columns and
/// nonzero coefficients. Column 0 is the largest monomial.
type Row = Vec<(usize, BigRational)>;

/// Row echelon form of a set of polynomials, with columns indexed by
/// monomials sorted from largest to smallest in a monomial order.
///
/// Pivots are taken at the first nonzero entry of each row, so the pivot
/// columns are exactly the initial monomials of the nonzero elements of the span.
#[derive(Debug, Clone)]
pub struct Echelon {
    columns: Vec<Monomial>,
    pivots: HashMap<usize, Row>,
}

impl Echelon {
    pub fn new(order: &MonomialOrder, polys: &[Polynomial]) -> Self {
        let occurring: BTreeSet<&Monomial> = polys.iter().flat_map(|f| f.monomials()).collect();
        let mut columns: Vec<Monomial> = occurring.into_iter().cloned().collect();
        order.sort_descending(&mut columns);
        let index: HashMap<&Monomial, usize> =
            columns.iter().enumerate().map(|(ix, m)| (m, ix)).collect();

        let mut pivots: HashMap<usize, Row> = HashMap::new();
        for f in polys {
            let mut row: Row = f.terms().map(|(m, c)| (index[m], c.clone())).collect();
            row.sort_by_key(|&(col, _)| col);
            while let Some((lead, c)) = row.first().cloned() {
                match pivots.get(&lead) {
                    Some(pivot) => row = axpy(&row, &-c, pivot),
                    None => {
                        let inv = c.recip();
                        let normalized: Row = row.iter().map(|(col, v)| (*col, v * &inv)).collect();
                        pivots.insert(lead, normalized);
                        break;
                    }
                }
            }
        }
        Echelon { columns, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot monomials, from largest to smallest.
    pub fn pivot_monomials(&self) -> Vec<Monomial> {
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable();
        cols.into_iter().map(|c| self.columns[c].clone()).collect()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }
}

/// `row + scale * other`.
fn axpy(row: &Row, scale: &BigRational, other: &Row) -> Row {
    let mut out = Row::with_capacity(row.len() + other.len());
    let (mut x, mut y) = (0, 0);
    while x < row.len() || y < other.len() {
        if y >= other.len() || (x < row.len() && row[x].0 < other[y].0) {
            out.push(row[x].clone());
            x += 1;
        } else if x >= row.len() || other[y].0 < row[x].0 {
            out.push((other[y].0, scale * &other[y].1));
            y += 1;
        } else {
            let v = &row[x].1 + scale * &other[y].1;
            if !v.is_zero() {
                out.push((row[x].0, v));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

/// The initial monomials of all nonzero elements of the span of `polys`,
/// from largest to smallest. Its size is the dimension of the span.
pub fn initial_space(order: &MonomialOrder, polys: &[Polynomial]) -> Vec<Monomial> {
    Echelon::new(order, polys).pivot_monomials()
}

/// Dimension of the span of `polys`.
pub fn span_rank(order: &MonomialOrder, polys: &[Polynomial]) -> usize {
    Echelon::new(order, polys).rank()
}
