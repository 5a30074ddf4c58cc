//! The finite poset `Q(p, n)` and the semi-infinite poset `Q̃(p, n)`.
//!
//! `Q̃` is infinite and is only ever described by predicates; order ideals are
//! finite and always materialized as sorted cell sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::{Error, Limits, Result, Shape};

/// A poset element `q_{i,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub i: u32,
    pub j: u32,
}

impl Cell {
    #[inline]
    pub const fn new(i: u32, j: u32) -> Self {
        Cell { i, j }
    }

    #[inline]
    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }

    /// Translation by `k` steps along the diagonal: `q_{i,j} -> q_{i+k,j+k}`.
    #[inline]
    pub fn shifted(&self, k: u32) -> Cell {
        Cell::new(self.i + k, self.j + k)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q_{{{},{}}}", self.i, self.j)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.i)?;
        t.serialize_element(&self.j)?;
        t.end()
    }
}

/// Which of the two posets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosetKind {
    /// `Q(p, n)`: cells with `1 <= i <= p < j <= n`.
    Finite,
    /// `Q̃(p, n)`: cells with `i >= 1`, `j >= p + 1`, `j - i in [0, n - 1]`.
    SemiInfinite,
}

/// A poset `Q(p, n)` or `Q̃(p, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    kind: PosetKind,
    shape: Shape,
}

/// A covering relation `lower ⋖ upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct Cover {
    pub lower: Cell,
    pub upper: Cell,
    /// The relation does not come from the coordinatewise clause.
    pub dashed: bool,
}

impl Poset {
    pub fn new(kind: PosetKind, shape: Shape) -> Self {
        Poset { kind, shape }
    }

    pub fn finite(shape: Shape) -> Self {
        Poset::new(PosetKind::Finite, shape)
    }

    pub fn semi_infinite(shape: Shape) -> Self {
        Poset::new(PosetKind::SemiInfinite, shape)
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn contains(&self, c: Cell) -> bool {
        let (p, n) = (self.shape.p(), self.shape.n());
        match self.kind {
            PosetKind::Finite => (1..=p).contains(&c.i) && (p + 1..=n).contains(&c.j),
            PosetKind::SemiInfinite => c.i >= 1 && c.j > p && c.j >= c.i && c.j - c.i < n,
        }
    }

    pub fn check(&self, c: Cell) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::Coordinate(format!("{c} is not an element of {self}")))
        }
    }

    /// `a ⪯ b`, checking that both are elements.
    pub fn leq(&self, a: Cell, b: Cell) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.leq_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn leq_unchecked(&self, a: Cell, b: Cell) -> bool {
        let coordinatewise = a.i <= b.i && a.j <= b.j;
        match self.kind {
            PosetKind::Finite => coordinatewise,
            PosetKind::SemiInfinite => {
                let (p, n) = (self.shape.p(), self.shape.n());
                coordinatewise || a.i + p <= b.i || a.j + n - p <= b.j
            }
        }
    }

    /// All elements `c' ⪯ c`, sorted.
    pub fn principal_ideal(&self, c: Cell) -> Result<BTreeSet<Cell>> {
        self.check(c)?;
        let n = self.shape.n();
        let imax = c.i.max(c.j);
        let jmax = c.j.max(c.i + n - 1);
        let mut out = BTreeSet::new();
        for i in 1..=imax {
            for j in self.shape.p() + 1..=jmax {
                let d = Cell::new(i, j);
                if self.contains(d) && self.leq_unchecked(d, c) {
                    out.insert(d);
                }
            }
        }
        Ok(out)
    }

    pub fn is_order_ideal<'a, I>(&self, cells: I) -> Result<bool>
    where
        I: IntoIterator<Item = &'a Cell>,
    {
        let set: BTreeSet<Cell> = cells.into_iter().copied().collect();
        for &c in &set {
            self.check(c)?;
        }
        for &c in &set {
            if !self.principal_ideal(c)?.is_subset(&set) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The smallest order ideal containing `cells`.
    pub fn downward_closure<'a, I>(&self, cells: I) -> Result<OrderIdeal>
    where
        I: IntoIterator<Item = &'a Cell>,
    {
        let mut out = BTreeSet::new();
        for &c in cells {
            if !out.contains(&c) {
                out.extend(self.principal_ideal(c)?);
            }
        }
        Ok(OrderIdeal::from_closed(*self, out))
    }

    /// Wraps `cells` after checking downward closure.
    pub fn ideal(&self, cells: impl IntoIterator<Item = Cell>) -> Result<OrderIdeal> {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        if !self.is_order_ideal(&set)? {
            return Err(Error::Domain(format!("cells are not downward closed in {self}")));
        }
        Ok(OrderIdeal::from_closed(*self, set))
    }

    /// The `⪯`-maximal elements of an ideal.
    pub fn max_elements(&self, ideal: &OrderIdeal) -> BTreeSet<Cell> {
        ideal
            .cells
            .iter()
            .copied()
            .filter(|&c| {
                !ideal
                    .cells
                    .iter()
                    .any(|&d| d != c && self.leq_unchecked(c, d))
            })
            .collect()
    }

    /// The finite region holding every ideal of level at most `kmax`:
    /// all of `Q`, or the cells of `Q̃` with `i <= kmax + p` and `j <= kmax + n`.
    /// This region is itself an order ideal.
    pub fn window(&self, kmax: u32) -> Vec<Cell> {
        let (p, n) = (self.shape.p(), self.shape.n());
        let (imax, jmax) = match self.kind {
            PosetKind::Finite => (p, n),
            PosetKind::SemiInfinite => (kmax + p, kmax + n),
        };
        let mut cells = Vec::new();
        for i in 1..=imax {
            for j in p + 1..=jmax {
                let c = Cell::new(i, j);
                if self.contains(c) {
                    cells.push(c);
                }
            }
        }
        cells
    }

    /// Cells of `Q̃` lying "to the left" of the level-`k` rectangle: `i <= k` or `j <= k + p`.
    fn left_part(&self, k: u32) -> Vec<Cell> {
        let p = self.shape.p();
        self.window(k)
            .into_iter()
            .filter(|c| c.i <= k || c.j <= k + p)
            .collect()
    }

    /// All order ideals (for `Q̃`: those of level at most `kmax`) in canonical
    /// order, by level and then by sorted cell list.
    ///
    /// For `Q̃` each ideal of level `k` is the left part of the level-`k`
    /// rectangle `Q^(k)` united with a translated ideal of `Q`, and is emitted
    /// only at its own level.
    pub fn enumerate_ideals(&self, kmax: u32, limits: &Limits) -> Result<Vec<OrderIdeal>> {
        let finite = Poset::finite(self.shape);
        let base = downsets(&finite.window(0), |a, b| finite.leq_unchecked(a, b), limits)?;
        let mut out = Vec::new();
        match self.kind {
            PosetKind::Finite => {
                out.extend(base.into_iter().map(|s| OrderIdeal::from_closed(*self, s)));
            }
            PosetKind::SemiInfinite => {
                for k in 0..=kmax {
                    let left = self.left_part(k);
                    for small in &base {
                        let mut cells: BTreeSet<Cell> = left.iter().copied().collect();
                        cells.extend(small.iter().map(|c| c.shifted(k)));
                        let ideal = OrderIdeal::from_closed(*self, cells);
                        if ideal.level() == k {
                            out.push(ideal);
                            limits.check("order ideals", out.len())?;
                        }
                    }
                }
            }
        }
        limits.check("order ideals", out.len())?;
        out.sort();
        Ok(out)
    }

    /// Covering relations among the cells of [`Poset::window`], sorted.
    pub fn hasse_edges(&self, kmax: u32) -> Vec<Cover> {
        let cells = self.window(kmax);
        let lt = |a: Cell, b: Cell| a != b && self.leq_unchecked(a, b);
        let mut covers = Vec::new();
        for &a in &cells {
            for &b in &cells {
                if lt(a, b) && !cells.iter().any(|&c| lt(a, c) && lt(c, b)) {
                    let dashed = !(a.i <= b.i && a.j <= b.j);
                    covers.push(Cover { lower: a, upper: b, dashed });
                }
            }
        }
        covers.sort();
        covers
    }

    /// Graphviz rendering of the window's Hasse diagram. Arrows point towards
    /// the lesser element; covers coming from the wrap-around clauses are dashed.
    pub fn to_dot(&self, kmax: u32) -> String {
        let name = match self.kind {
            PosetKind::Finite => "Q",
            PosetKind::SemiInfinite => "Qtilde",
        };
        let mut s = format!(
            "digraph {name} {{\n  // p={}, n={}, levels 0..={}\n  node [shape=plaintext];\n",
            self.shape.p(),
            self.shape.n(),
            if self.kind == PosetKind::Finite { 0 } else { kmax }
        );
        for c in self.window(kmax) {
            s.push_str(&format!("  \"{c}\" [label=\"{c}\"];\n"));
        }
        for e in self.hasse_edges(kmax) {
            let style = if e.dashed { " [style=dashed, color=gray]" } else { "" };
            s.push_str(&format!("  \"{}\" -> \"{}\"{};\n", e.upper, e.lower, style));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PosetKind::Finite => write!(f, "Q({}, {})", self.shape.p(), self.shape.n()),
            PosetKind::SemiInfinite => write!(f, "Q~({}, {})", self.shape.p(), self.shape.n()),
        }
    }
}

/// A finite order ideal, with its level cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderIdeal {
    poset: Poset,
    cells: BTreeSet<Cell>,
    level: u32,
}

impl OrderIdeal {
    /// The caller guarantees that `cells` is downward closed.
    pub(crate) fn from_closed(poset: Poset, cells: BTreeSet<Cell>) -> Self {
        let p = poset.shape().p();
        let level = cells
            .iter()
            .filter(|c| c.is_diagonal())
            .map(|c| c.i - p)
            .max()
            .unwrap_or(0);
        OrderIdeal { poset, cells, level }
    }

    pub fn empty(poset: Poset) -> Self {
        OrderIdeal::from_closed(poset, BTreeSet::new())
    }

    pub fn poset(&self) -> Poset {
        self.poset
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Largest `k` with `q_{k+p,k+p}` in the ideal, or 0.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.cells.is_subset(&other.cells)
    }

    /// `(J1 ∩ J2, J1 ∪ J2)`.
    pub fn meet_join(&self, other: &OrderIdeal) -> Result<(OrderIdeal, OrderIdeal)> {
        if self.poset != other.poset {
            return Err(Error::Domain(format!(
                "ideals live in different posets {} and {}",
                self.poset, other.poset
            )));
        }
        let meet = self.cells.intersection(&other.cells).copied().collect();
        let join = self.cells.union(&other.cells).copied().collect();
        Ok((
            OrderIdeal::from_closed(self.poset, meet),
            OrderIdeal::from_closed(self.poset, join),
        ))
    }
}

impl PartialOrd for OrderIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.level, &self.cells, self.poset).cmp(&(other.level, &other.cells, other.poset))
    }
}

impl Serialize for OrderIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.cells.serialize(s)
    }
}

/// All down-sets of the finite poset `(elements, leq)`.
///
/// Elements are processed along a linear extension; an element may join only
/// when everything strictly below it already has.
pub fn downsets<F>(elements: &[Cell], leq: F, limits: &Limits) -> Result<Vec<BTreeSet<Cell>>>
where
    F: Fn(Cell, Cell) -> bool,
{
    let below: Vec<Vec<usize>> = elements
        .iter()
        .map(|&e| {
            (0..elements.len())
                .filter(|&k| elements[k] != e && leq(elements[k], e))
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by_key(|&k| (below[k].len(), elements[k]));

    let mut out = Vec::new();
    let mut chosen = vec![false; elements.len()];
    fn rec(
        pos: usize,
        order: &[usize],
        below: &[Vec<usize>],
        elements: &[Cell],
        chosen: &mut Vec<bool>,
        out: &mut Vec<BTreeSet<Cell>>,
        limits: &Limits,
    ) -> Result<()> {
        if pos == order.len() {
            out.push(
                (0..elements.len())
                    .filter(|&k| chosen[k])
                    .map(|k| elements[k])
                    .collect(),
            );
            return limits.check("down-sets", out.len());
        }
        let e = order[pos];
        rec(pos + 1, order, below, elements, chosen, out, limits)?;
        if below[e].iter().all(|&b| chosen[b]) {
            chosen[e] = true;
            rec(pos + 1, order, below, elements, chosen, out, limits)?;
            chosen[e] = false;
        }
        Ok(())
    }
    rec(0, &order, &below, elements, &mut chosen, &mut out, limits)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(i: u32, j: u32) -> Cell {
        Cell::new(i, j)
    }

    fn qt(p: u32, n: u32) -> Poset {
        Poset::semi_infinite(Shape::new(p, n).unwrap())
    }

    fn qf(p: u32, n: u32) -> Poset {
        Poset::finite(Shape::new(p, n).unwrap())
    }

    #[test]
    fn wraparound_clause_relates_far_rows() {
        let poset = qt(3, 7);
        assert!(poset.leq(q(1, 4), q(4, 4)).unwrap());
        assert!(poset.leq(q(1, 7), q(2, 8)).unwrap());
        assert!(!poset.leq(q(2, 8), q(1, 7)).unwrap());
        assert!(poset.leq(q(4, 4), q(2, 8)).unwrap());
    }

    #[test]
    fn coordinate_errors() {
        assert!(matches!(qf(3, 7).leq(q(4, 5), q(1, 5)), Err(Error::Coordinate(_))));
        assert!(matches!(qt(3, 7).leq(q(1, 3), q(1, 5)), Err(Error::Coordinate(_))));
        assert!(matches!(qt(3, 7).leq(q(1, 8), q(1, 5)), Err(Error::Coordinate(_))));
    }

    #[test]
    fn partial_order_axioms_on_windows() {
        for (p, n) in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 4)] {
            for poset in [qf(p, n), qt(p, n)] {
                let w = poset.window(3);
                for &a in &w {
                    assert!(poset.leq_unchecked(a, a));
                    for &b in &w {
                        if a != b && poset.leq_unchecked(a, b) {
                            assert!(!poset.leq_unchecked(b, a), "{poset}: {a} {b}");
                        }
                        for &c in &w {
                            if poset.leq_unchecked(a, b) && poset.leq_unchecked(b, c) {
                                assert!(poset.leq_unchecked(a, c), "{poset}: {a} {b} {c}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn q_is_a_subposet_of_qtilde() {
        for (p, n) in [(2, 4), (3, 7), (2, 5)] {
            let (f, s) = (qf(p, n), qt(p, n));
            for a in f.window(0) {
                assert!(s.contains(a));
                for b in f.window(0) {
                    assert_eq!(f.leq_unchecked(a, b), s.leq_unchecked(a, b));
                }
            }
        }
    }

    #[test]
    fn ideal_checks() {
        let poset = qf(3, 7);
        let cyan = [q(3, 4), q(2, 4), q(1, 4), q(1, 5), q(1, 6)];
        assert!(poset.is_order_ideal(&cyan).unwrap());
        assert!(poset.is_order_ideal(&[]).unwrap());
        assert!(!poset.is_order_ideal(&[q(1, 5)]).unwrap());
    }

    #[test]
    fn closure_from_antichain() {
        let poset = qf(3, 7);
        let j = poset.downward_closure(&[q(3, 4), q(1, 6)]).unwrap();
        let expected: BTreeSet<_> = [q(3, 4), q(2, 4), q(1, 4), q(1, 5), q(1, 6)].into();
        assert_eq!(j.cells(), &expected);
        assert_eq!(poset.max_elements(&j), [q(3, 4), q(1, 6)].into());
        let again = poset.downward_closure(j.cells()).unwrap();
        assert_eq!(again, j);
        assert!(poset.max_elements(&OrderIdeal::empty(poset)).is_empty());
    }

    #[test]
    fn semi_infinite_closure_of_example_generators() {
        let poset = qt(3, 7);
        let j = poset.downward_closure(&[q(4, 4), q(5, 6), q(3, 8)]).unwrap();
        // The worked-example ideal, listed row by row.
        let expected: BTreeSet<_> = [
            q(4, 4), q(5, 5), q(3, 4), q(4, 5), q(5, 6), q(2, 4), q(3, 5), q(4, 6),
            q(1, 4), q(2, 5), q(3, 6), q(1, 5), q(2, 6), q(3, 7), q(1, 6), q(2, 7),
            q(3, 8), q(1, 7), q(2, 8),
        ]
        .into();
        assert_eq!(j.cells(), &expected);
        assert_eq!(j.len(), 19);
        assert_eq!(j.level(), 2);
        assert_eq!(poset.max_elements(&j), [q(5, 6), q(3, 8)].into());
    }

    #[test]
    fn ideal_counts() {
        let l = Limits::default();
        assert_eq!(qf(2, 4).enumerate_ideals(0, &l).unwrap().len(), 6);
        assert_eq!(qf(1, 2).enumerate_ideals(0, &l).unwrap().len(), 2);
        assert_eq!(qf(3, 7).enumerate_ideals(0, &l).unwrap().len(), 35);
        assert_eq!(qt(2, 4).enumerate_ideals(1, &l).unwrap().len(), 12);
        assert!(matches!(
            qt(2, 4).enumerate_ideals(3, &Limits::new(10)),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn structural_enumeration_matches_brute_force_downsets() {
        let l = Limits::default();
        for (p, n) in [(1, 2), (1, 3), (2, 4), (2, 5), (3, 5)] {
            for kmax in 0..=2 {
                let poset = qt(p, n);
                let fast: Vec<_> = poset
                    .enumerate_ideals(kmax, &l)
                    .unwrap()
                    .into_iter()
                    .map(|j| j.cells().clone())
                    .collect();
                let mut brute = downsets(&poset.window(kmax), |a, b| poset.leq_unchecked(a, b), &l)
                    .unwrap();
                let key = |s: &BTreeSet<Cell>| {
                    (OrderIdeal::from_closed(poset, s.clone()).level(), s.clone())
                };
                brute.sort_by_key(key);
                assert_eq!(fast, brute, "{poset} kmax={kmax}");
                assert_eq!(fast.len() as u64, (kmax as u64 + 1) * crate::binomial(n as u64, p as u64));
            }
        }
    }

    #[test]
    fn ideals_are_determined_by_their_rectangle() {
        let l = Limits::default();
        let poset = qt(2, 4);
        let finite = qf(2, 4);
        for j in poset.enumerate_ideals(2, &l).unwrap() {
            let k = j.level();
            let (p, n) = (2, 4);
            for c in poset.window(k + 1) {
                if c.i <= k || c.j <= k + p {
                    assert!(j.contains(c));
                }
                if c.i > k + p || c.j > k + n {
                    assert!(!j.contains(c));
                }
            }
            let back: Vec<Cell> = j
                .cells()
                .iter()
                .filter(|c| c.i > k && c.j > k + p)
                .map(|c| Cell::new(c.i - k, c.j - k))
                .collect();
            assert!(finite.is_order_ideal(&back).unwrap());
        }
    }

    #[test]
    fn meet_and_join() {
        let poset = qf(2, 4);
        let a = poset.ideal([q(1, 3), q(1, 4)]).unwrap();
        let b = poset.ideal([q(1, 3), q(2, 3)]).unwrap();
        let (m, j) = a.meet_join(&b).unwrap();
        assert_eq!(m.cells(), &[q(1, 3)].into());
        assert_eq!(j.cells(), &[q(1, 3), q(1, 4), q(2, 3)].into());
        let (mm, jj) = a.meet_join(&a).unwrap();
        assert_eq!((mm, jj), (a.clone(), a.clone()));

        // The meet is the largest ideal below both.
        let all = poset.enumerate_ideals(0, &Limits::default()).unwrap();
        for x in &all {
            for y in &all {
                let (m, _) = x.meet_join(y).unwrap();
                let best = all
                    .iter()
                    .filter(|z| z.is_subset(x) && z.is_subset(y))
                    .max_by_key(|z| z.len())
                    .unwrap();
                assert_eq!(&m, best);
            }
        }
    }

    #[test]
    fn hasse_diagrams() {
        assert_eq!(qf(2, 4).hasse_edges(0).len(), 4);
        assert!(qf(1, 2).hasse_edges(0).is_empty());
        let covers = qt(3, 7).hasse_edges(1);
        assert!(covers.iter().any(|c| c.dashed && c.lower == q(1, 7) && c.upper == q(4, 4)));
        assert!(covers.iter().any(|c| c.dashed && c.lower == q(4, 4) && c.upper == q(2, 8)));
        assert!(covers.iter().filter(|c| !c.dashed).all(|c| c.lower.i <= c.upper.i));
        let dot = qt(3, 7).to_dot(1);
        assert!(dot.starts_with("digraph Qtilde {"));
        assert!(dot.contains("\"q_{4,4}\" -> \"q_{1,7}\" [style=dashed, color=gray];"));
    }

    #[test]
    fn levels() {
        let poset = qt(3, 7);
        assert_eq!(OrderIdeal::empty(poset).level(), 0);
        let j = poset.downward_closure(&[q(5, 5)]).unwrap();
        assert_eq!(j.level(), 2);
    }
}
