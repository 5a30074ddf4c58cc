//! Interpolating poset polytopes `Π_{O,C}`: the 0/1 vertices `v_{O,C}(J)`,
//! lattice points of dilations via chains of ideals, and the monomials of the
//! generalized Hibi ring.
//!
//! Polytopes are never written down as inequality systems. Every integer point
//! of the `k`-th dilation is the vertex sum of a unique weakly increasing chain
//! `J_1 ⊆ ... ⊆ J_k` of finite ideals, and membership is decided by finding it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};

use crate::poset::{Cell, OrderIdeal, Poset, PosetKind};
use crate::{Error, Limits, Result};

/// A partition `O ⊔ C` of the poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Partition {
    /// `O = P`: the order polytope.
    Order,
    /// `C = P`: the chain polytope.
    Chain,
    /// `O` = the diagonal cells `q_{i,i}` of `Q̃`.
    Diagonal,
    /// `O` given explicitly; every other cell lies in `C`.
    Explicit(BTreeSet<Cell>),
}

impl Partition {
    pub fn in_o(&self, c: Cell) -> bool {
        match self {
            Partition::Order => true,
            Partition::Chain => false,
            Partition::Diagonal => c.is_diagonal(),
            Partition::Explicit(o) => o.contains(&c),
        }
    }

    pub fn validate(&self, poset: &Poset) -> Result<()> {
        match self {
            Partition::Diagonal if poset.kind() == PosetKind::Finite => Err(Error::Partition(format!(
                "the diagonal partition needs the semi-infinite poset, not {poset}"
            ))),
            Partition::Explicit(o) => o.iter().try_for_each(|&c| poset.check(c)),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Partition::Order => "order",
            Partition::Chain => "chain",
            Partition::Diagonal => "diagonal",
            Partition::Explicit(_) => "explicit",
        }
    }
}

/// A point of `Ω` with nonnegative integer coordinates and finite support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticePoint(BTreeMap<Cell, u32>);

impl LatticePoint {
    pub fn zero() -> Self {
        LatticePoint::default()
    }

    pub fn indicator<'a>(cells: impl IntoIterator<Item = &'a Cell>) -> Self {
        LatticePoint(cells.into_iter().map(|&c| (c, 1)).collect())
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (Cell, u32)>) -> Self {
        let mut out = LatticePoint::zero();
        for (c, v) in coords {
            *out.0.entry(c).or_default() += v;
        }
        out.0.retain(|_, v| *v > 0);
        out
    }

    pub fn get(&self, c: Cell) -> u32 {
        self.0.get(&c).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.keys().copied()
    }

    pub fn coords(&self) -> impl Iterator<Item = (Cell, u32)> + '_ {
        self.0.iter().map(|(&c, &v)| (c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        let mut out = self.clone();
        for (&c, &v) in &other.0 {
            *out.0.entry(c).or_default() += v;
        }
        out
    }

    /// `self - other` when `other <= self` coordinatewise.
    pub fn checked_sub(&self, other: &LatticePoint) -> Option<LatticePoint> {
        let mut out = self.clone();
        for (&c, &v) in &other.0 {
            let slot = out.0.get_mut(&c)?;
            if *slot < v {
                return None;
            }
            *slot -= v;
            if *slot == 0 {
                out.0.remove(&c);
            }
        }
        Some(out)
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), &self.0).cmp(&(other.total(), &other.0))
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for pair in &self.0 {
            seq.serialize_element(&pair)?;
        }
        seq.end()
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (ix, (c, v)) in self.0.iter().enumerate() {
            if ix > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}: {v}")?;
        }
        write!(f, "}}")
    }
}

/// `v_{O,C}(J)`: 1 on `(J ∩ O) ∪ (max J ∩ C)`, 0 elsewhere.
pub fn vertex_point(ideal: &OrderIdeal, part: &Partition) -> Result<LatticePoint> {
    let poset = ideal.poset();
    part.validate(&poset)?;
    let maxima = poset.max_elements(ideal);
    Ok(LatticePoint::indicator(
        ideal
            .cells()
            .iter()
            .filter(|&&c| part.in_o(c) || maxima.contains(&c)),
    ))
}

/// A monomial `s^a y^u` of `C[P][s]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HibiMonomial {
    pub s_degree: u32,
    pub y: LatticePoint,
}

impl HibiMonomial {
    pub fn one() -> Self {
        HibiMonomial { s_degree: 0, y: LatticePoint::zero() }
    }

    pub fn mul(&self, other: &HibiMonomial) -> HibiMonomial {
        HibiMonomial { s_degree: self.s_degree + other.s_degree, y: self.y.add(&other.y) }
    }
}

impl Serialize for HibiMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HibiMonomial", 2)?;
        st.serialize_field("s", &self.s_degree)?;
        st.serialize_field("y", &self.y)?;
        st.end()
    }
}

/// The generator `s · y^{v_{O,C}(J)}` of the generalized Hibi ring.
pub fn hibi_generator(ideal: &OrderIdeal, part: &Partition) -> Result<HibiMonomial> {
    Ok(HibiMonomial { s_degree: 1, y: vertex_point(ideal, part)? })
}

/// All weakly increasing chains of length `k` in `ideals`, as index lists.
pub fn weak_chains(ideals: &[OrderIdeal], k: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    let above: Vec<Vec<usize>> = ideals
        .iter()
        .map(|a| (0..ideals.len()).filter(|&b| a.is_subset(&ideals[b])).collect())
        .collect();
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    fn rec(
        above: &[Vec<usize>],
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<()> {
        if cur.len() == k {
            out.push(cur.clone());
            return limits.check("chains", out.len());
        }
        let choices: Vec<usize> = match cur.last() {
            None => (0..above.len()).collect(),
            Some(&last) => above[last].clone(),
        };
        for c in choices {
            cur.push(c);
            rec(above, k, cur, out, limits)?;
            cur.pop();
        }
        Ok(())
    }
    rec(&above, k, &mut Vec::new(), &mut out, limits)?;
    Ok(out)
}

/// The unique weakly increasing chain `J_1 ⊆ ... ⊆ J_k` with vertex sum `u`.
///
/// The support of `u` lies in `J_k` and contains every maximal element of
/// `J_k`, so `J_k` is the downward closure of the support. Peeling off
/// `v(J_k)` leaves a `(k-1)`-chain inside `J_k`; every step is forced, which
/// also shows uniqueness.
pub fn decompose_point(
    poset: &Poset,
    u: &LatticePoint,
    k: usize,
    part: &Partition,
    limits: &Limits,
) -> Result<Vec<OrderIdeal>> {
    part.validate(poset)?;
    for c in u.support() {
        poset.check(c)?;
    }
    limits.check("chain length", k)?;
    let mut chain = Vec::with_capacity(k);
    let mut rest = u.clone();
    for _ in 0..k {
        let top = poset.downward_closure(&rest.support().collect::<Vec<_>>())?;
        if chain.last().is_some_and(|above: &OrderIdeal| !top.is_subset(above)) {
            return Err(Error::NotInDilation { k });
        }
        rest = rest
            .checked_sub(&vertex_point(&top, part)?)
            .ok_or(Error::NotInDilation { k })?;
        chain.push(top);
    }
    if !rest.is_zero() {
        return Err(Error::NotInDilation { k });
    }
    chain.reverse();
    Ok(chain)
}

/// Rewrites `v(J1) + v(J2)` as the vertex sum of a chain `J1' ⊆ J2'`.
pub fn straighten_pair(
    a: &OrderIdeal,
    b: &OrderIdeal,
    part: &Partition,
    limits: &Limits,
) -> Result<(OrderIdeal, OrderIdeal)> {
    if a.poset() != b.poset() {
        return Err(Error::Domain("ideals live in different posets".into()));
    }
    let u = vertex_point(a, part)?.add(&vertex_point(b, part)?);
    let mut chain = decompose_point(&a.poset(), &u, 2, part, limits)?;
    let top = chain.pop().unwrap();
    let bottom = chain.pop().unwrap();
    Ok((bottom, top))
}

/// All lattice points of the `k`-th dilation supported on ideals of level at
/// most `kmax`, sorted. Distinct chains must give distinct points.
pub fn enumerate_dilation(
    poset: &Poset,
    k: usize,
    part: &Partition,
    kmax: u32,
    limits: &Limits,
) -> Result<Vec<LatticePoint>> {
    part.validate(poset)?;
    let ideals = poset.enumerate_ideals(kmax, limits)?;
    let vertices: Vec<LatticePoint> = ideals
        .iter()
        .map(|j| vertex_point(j, part))
        .collect::<Result<_>>()?;
    let chains = weak_chains(&ideals, k, limits)?;
    let mut seen = BTreeSet::new();
    for chain in &chains {
        let sum = chain
            .iter()
            .fold(LatticePoint::zero(), |acc, &ix| acc.add(&vertices[ix]));
        if !seen.insert(sum) {
            return Err(Error::Invariant(format!(
                "two {k}-chains share a vertex sum in {poset} ({})",
                part.name()
            )));
        }
    }
    Ok(seen.into_iter().collect())
}
