//! Semi-infinite tableaux: `m` columns of height `p`, column `i` raised by
//! `k_i` boxes, with `k_1 <= ... <= k_m`.
//!
//! Boxes are addressed by absolute position `k_i + j`, `j in [1, p]`, counted
//! from the bottom. A column is stored in ascending position. Reading "top to
//! bottom" therefore means descending position: for ss tableaux the column
//! tuple `(α_1, ..., α_p)` sits with `α_j` at position `k_i + p + 1 - j`,
//! while for pbw tableaux `α_j` determines the content at position `k_i + j`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::degen::gen_leq_unchecked;
use crate::pluecker::{is_pbw_tuple, Family, GeneratorIndex};
use crate::{Error, Limits, Result, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemiInfiniteTableau {
    shifts: Vec<u32>,
    columns: Vec<Vec<u32>>,
}

impl SemiInfiniteTableau {
    /// Checks the shape: weakly increasing shifts, one column of height `p` per shift.
    pub fn new(p: u32, shifts: Vec<u32>, columns: Vec<Vec<u32>>) -> Result<Self> {
        if shifts.len() != columns.len() {
            return Err(Error::Domain(format!("{} shifts but {} columns", shifts.len(), columns.len())));
        }
        if shifts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!("shifts {shifts:?} are not weakly increasing")));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != p as usize) {
            return Err(Error::Domain(format!("column {c:?} does not have height {p}")));
        }
        Ok(SemiInfiniteTableau { shifts, columns })
    }

    /// Builds an ss tableau from columns read top to bottom.
    pub fn from_top_down(p: u32, shifts: Vec<u32>, columns: &[Vec<u32>]) -> Result<Self> {
        let stored = columns.iter().map(|c| c.iter().rev().copied().collect()).collect();
        SemiInfiniteTableau::new(p, shifts, stored)
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }

    /// Columns in ascending box position.
    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn height(&self) -> u32 {
        self.columns.first().map_or(0, |c| c.len() as u32)
    }

    /// Content at absolute position `pos` of column `col`, if that box exists.
    pub fn content(&self, col: usize, pos: u32) -> Option<u32> {
        let k = self.shifts[col];
        if pos > k && pos <= k + self.height() {
            Some(self.columns[col][(pos - k - 1) as usize])
        } else {
            None
        }
    }

    fn check_height(&self, shape: Shape) -> Result<()> {
        if !self.columns.is_empty() && self.height() != shape.p() {
            return Err(Error::Domain(format!("columns have height {}, expected {}", self.height(), shape.p())));
        }
        Ok(())
    }

    /// Strictly decreasing contents up each column, all in `[1, n]`, and weakly
    /// increasing contents from each column to the next at every shared position.
    pub fn is_semistandard(&self, shape: Shape) -> Result<bool> {
        self.check_height(shape)?;
        Ok((0..self.width()).all(|c| ss_column_ok(shape, &self.columns[c]))
            && (1..self.width()).all(|c| ss_rows_ok(self, c)))
    }

    /// Every column minus its shift is a PBW tuple, and every box `(i, j)`
    /// with a right neighbour `(i+1, j)` is dominated by some box `(i+1, j')`,
    /// `j' >= j`.
    pub fn is_pbw_semistandard(&self, shape: Shape) -> Result<bool> {
        self.check_height(shape)?;
        Ok((0..self.width()).all(|c| pbw_column_ok(shape, self.shifts[c], &self.columns[c]))
            && (1..self.width()).all(|c| pbw_rows_ok(self, c)))
    }

    pub fn is_valid(&self, family: Family, shape: Shape) -> Result<bool> {
        match family {
            Family::Ss => self.is_semistandard(shape),
            Family::Pbw => self.is_pbw_semistandard(shape),
        }
    }

    /// The decorated column tuples `I_i^(k_i)`. For ss these are the columns
    /// read top to bottom; for pbw the contents reduced mod `n`.
    pub fn to_chain(&self, family: Family, shape: Shape) -> Result<Vec<GeneratorIndex>> {
        self.check_height(shape)?;
        self.shifts
            .iter()
            .zip(&self.columns)
            .map(|(&k, col)| {
                let tuple: Vec<u32> = match family {
                    Family::Ss => col.iter().rev().copied().collect(),
                    Family::Pbw => {
                        if col.iter().any(|&c| c <= k || c > k + shape.n()) {
                            return Err(Error::Domain(format!(
                                "column {col:?} at shift {k} leaves [{}, {}]",
                                k + 1,
                                k + shape.n()
                            )));
                        }
                        col.iter().map(|&c| shape.modn(c as i64)).collect()
                    }
                };
                GeneratorIndex::new(shape, family, tuple, k)
            })
            .collect()
    }

    /// The tableau of a weakly increasing chain of one family.
    pub fn from_chain(shape: Shape, chain: &[GeneratorIndex]) -> Result<Self> {
        let Some(family) = chain.first().map(|u| u.family()) else {
            return SemiInfiniteTableau::new(shape.p(), Vec::new(), Vec::new());
        };
        for u in chain {
            if u.family() != family {
                return Err(Error::Domain("chain mixes generator families".into()));
            }
            GeneratorIndex::new(shape, family, u.tuple().to_vec(), u.shift())?;
        }
        if let Some(w) = chain.windows(2).find(|w| !gen_leq_unchecked(shape, &w[0], &w[1])) {
            return Err(Error::Domain(format!("{} is not below {} in the {family} order", w[0], w[1])));
        }
        let shifts = chain.iter().map(|u| u.shift()).collect();
        let columns = chain
            .iter()
            .map(|u| match family {
                Family::Ss => u.tuple().iter().rev().copied().collect(),
                Family::Pbw => u.reduced(shape).iter().map(|&b| u.shift() + b).collect(),
            })
            .collect();
        SemiInfiniteTableau::new(shape.p(), shifts, columns)
    }

    /// Text grid, top row first. Skipped positions below a column show `*`,
    /// positions above it show `.`.
    pub fn render(&self) -> String {
        let top = self
            .shifts
            .iter()
            .map(|&k| k + self.height())
            .max()
            .unwrap_or(0);
        let width = self
            .columns
            .iter()
            .flatten()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for pos in (1..=top).rev() {
            let cells: Vec<String> = (0..self.width())
                .map(|c| match self.content(c, pos) {
                    Some(v) => format!("{v:>width$}"),
                    None if pos <= self.shifts[c] => format!("{:>width$}", "*"),
                    None => format!("{:>width$}", "."),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

fn ss_column_ok(shape: Shape, col: &[u32]) -> bool {
    col.iter().all(|&c| c >= 1 && c <= shape.n()) && col.windows(2).all(|w| w[0] > w[1])
}

fn ss_rows_ok(t: &SemiInfiniteTableau, right: usize) -> bool {
    let left = right - 1;
    let lo = t.shifts[right] + 1;
    let hi = t.shifts[left] + t.height();
    (lo..=hi).all(|pos| match (t.content(left, pos), t.content(right, pos)) {
        (Some(a), Some(b)) => a <= b,
        _ => true,
    })
}

fn pbw_column_ok(shape: Shape, k: u32, col: &[u32]) -> bool {
    if col.iter().any(|&c| c <= k || c > k + shape.n()) {
        return false;
    }
    let reduced: Vec<u32> = col.iter().map(|&c| c - k).collect();
    is_pbw_tuple(shape, &reduced)
}

fn pbw_rows_ok(t: &SemiInfiniteTableau, right: usize) -> bool {
    let left = right - 1;
    let (kl, kr, p) = (t.shifts[left], t.shifts[right], t.height());
    (kl + 1..=kl + p)
        .filter(|&pos| t.content(right, pos).is_some())
        .all(|pos| {
            let c = t.content(left, pos).unwrap();
            (pos..=kr + p).any(|pos2| t.content(right, pos2).is_some_and(|d| d >= c))
        })
}

/// Weakly increasing sequences of `m` nonnegative shifts summing to `e`.
fn shift_sequences(m: usize, e: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = (m - cur.len()) as u32;
        for k in min..=left {
            if k * slots > left {
                break;
            }
            cur.push(k);
            rec(m, left - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, e, 0, &mut Vec::new(), &mut out);
    out
}

/// Every column that passes the single-column test at shift `k`, by scanning
/// all tuples of candidate contents.
fn candidate_columns(family: Family, shape: Shape, k: u32) -> Vec<Vec<u32>> {
    let (p, n) = (shape.p() as usize, shape.n());
    let (lo, hi) = match family {
        Family::Ss => (1, n),
        Family::Pbw => (k + 1, k + n),
    };
    let mut out = Vec::new();
    let mut cur = vec![lo; p];
    loop {
        let ok = match family {
            Family::Ss => ss_column_ok(shape, &cur),
            Family::Pbw => pbw_column_ok(shape, k, &cur),
        };
        if ok {
            out.push(cur.clone());
        }
        let mut pos = 0;
        while pos < p && cur[pos] == hi {
            cur[pos] = lo;
            pos += 1;
        }
        if pos == p {
            break;
        }
        cur[pos] += 1;
    }
    out.sort();
    out
}

/// All valid tableaux with `m` columns and shift sum `e`, sorted.
pub fn enumerate_tableaux(family: Family, shape: Shape, m: usize, e: u32, limits: &Limits) -> Result<Vec<SemiInfiniteTableau>> {
    let mut out = Vec::new();
    let mut by_shift = std::collections::BTreeMap::new();
    for shifts in shift_sequences(m, e) {
        for &k in &shifts {
            by_shift
                .entry(k)
                .or_insert_with(|| candidate_columns(family, shape, k));
        }
        let mut t = SemiInfiniteTableau { shifts: shifts.clone(), columns: Vec::new() };
        extend(family, &by_shift, &mut t, &mut out, limits)?;
    }
    out.sort();
    Ok(out)
}

fn extend(
    family: Family,
    by_shift: &std::collections::BTreeMap<u32, Vec<Vec<u32>>>,
    t: &mut SemiInfiniteTableau,
    out: &mut Vec<SemiInfiniteTableau>,
    limits: &Limits,
) -> Result<()> {
    let c = t.columns.len();
    if c == t.shifts.len() {
        out.push(t.clone());
        return limits.check("tableaux", out.len());
    }
    for col in &by_shift[&t.shifts[c]] {
        t.columns.push(col.clone());
        let ok = c == 0
            || match family {
                Family::Ss => ss_rows_ok(&prefix(t), c),
                Family::Pbw => pbw_rows_ok(&prefix(t), c),
            };
        if ok {
            extend(family, by_shift, t, out, limits)?;
        }
        t.columns.pop();
    }
    Ok(())
}

/// The tableau formed by the columns placed so far.
fn prefix(t: &SemiInfiniteTableau) -> SemiInfiniteTableau {
    SemiInfiniteTableau {
        shifts: t.shifts[..t.columns.len()].to_vec(),
        columns: t.columns.clone(),
    }
}
