//! Plücker generators: finite minors `D_I` and the coefficients `D_I^(k)` of
//! `t^k` in the determinant of the power-series matrix `Z_I(t)`, their index
//! families, closed-form initial terms, and the spanning products of the
//! bigraded components.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::symalg::{permutation_sign, sign_rat, Monomial, MonomialOrder, OrderFamily, Polynomial, VarId};
use crate::{binomial, Error, Exec, Limits, Result, Shape};

/// Largest `p` for which determinants are expanded.
pub const MAX_P: u32 = 6;

/// Which generating set of the Plücker algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Increasing column tuples, paired with the semistandard orders.
    Ss,
    /// Shifted PBW tuples, paired with the PBW orders.
    Pbw,
}

impl Family {
    pub const BOTH: [Family; 2] = [Family::Ss, Family::Pbw];

    /// The semi-infinite monomial order this family is a sagbi basis for.
    pub fn order_family(self) -> OrderFamily {
        match self {
            Family::Ss => OrderFamily::SsSemiInfinite,
            Family::Pbw => OrderFamily::PbwSemiInfinite,
        }
    }

    pub fn order(self, shape: Shape) -> MonomialOrder {
        MonomialOrder::new(self.order_family(), shape)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Ss => "ss",
            Family::Pbw => "pbw",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A decorated column tuple `I^(k)` belonging to a generator family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneratorIndex {
    #[serde(rename = "k")]
    shift: u32,
    #[serde(rename = "I")]
    tuple: Vec<u32>,
    family: Family,
}

impl GeneratorIndex {
    /// Checks membership in `Ĩ_ss` (increasing tuple) or `Ĩ_pbw`
    /// (`(α_i - k mod n)` is a PBW tuple).
    pub fn new(shape: Shape, family: Family, tuple: Vec<u32>, shift: u32) -> Result<Self> {
        check_tuple(shape, &tuple)?;
        let ok = match family {
            Family::Ss => tuple.windows(2).all(|w| w[0] < w[1]),
            Family::Pbw => is_pbw_tuple(shape, &reduce(shape, &tuple, shift)),
        };
        if !ok {
            return Err(Error::Domain(format!(
                "{}^({shift}) is not in the {family} generator family for {shape}",
                fmt_tuple(&tuple)
            )));
        }
        Ok(GeneratorIndex { shift, tuple, family })
    }

    pub fn tuple(&self) -> &[u32] {
        &self.tuple
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `(α_1 - k mod n, ..., α_p - k mod n)`.
    pub fn reduced(&self, shape: Shape) -> Vec<u32> {
        reduce(shape, &self.tuple, self.shift)
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^({})", fmt_tuple(&self.tuple), self.shift)
    }
}

fn fmt_tuple(t: &[u32]) -> String {
    format!("({})", t.iter().join(","))
}

fn check_tuple(shape: Shape, tuple: &[u32]) -> Result<()> {
    if tuple.len() != shape.p() as usize || tuple.iter().any(|&a| a == 0 || a > shape.n()) {
        return Err(Error::Domain(format!(
            "{} is not a {}-tuple over [1, {}]",
            fmt_tuple(tuple),
            shape.p(),
            shape.n()
        )));
    }
    Ok(())
}

fn reduce(shape: Shape, tuple: &[u32], k: u32) -> Vec<u32> {
    tuple.iter().map(|&a| shape.modn(a as i64 - k as i64)).collect()
}

/// Pairwise distinct entries, entries `<= p` sitting at their own position,
/// and the remaining entries decreasing.
pub fn is_pbw_tuple(shape: Shape, tuple: &[u32]) -> bool {
    let p = shape.p();
    if tuple.len() != p as usize || tuple.iter().any(|&a| a == 0 || a > shape.n()) {
        return false;
    }
    if !tuple.iter().all_unique() {
        return false;
    }
    let small_fixed = tuple
        .iter()
        .enumerate()
        .all(|(pos, &a)| a > p || a == pos as u32 + 1);
    let large: Vec<u32> = tuple.iter().copied().filter(|&a| a > p).collect();
    small_fixed && large.windows(2).all(|w| w[0] > w[1])
}

/// The PBW ordering of a set of `p` distinct values.
fn pbw_arrange(shape: Shape, values: &[u32]) -> Vec<u32> {
    let p = shape.p();
    let mut out = vec![0; p as usize];
    let mut large: Vec<u32> = values.iter().copied().filter(|&v| v > p).collect();
    large.sort_unstable_by(|a, b| b.cmp(a));
    for &v in values.iter().filter(|&&v| v <= p) {
        out[v as usize - 1] = v;
    }
    let mut it = large.into_iter();
    for slot in out.iter_mut().filter(|s| **s == 0) {
        *slot = it.next().unwrap();
    }
    out
}

/// Sign of the permutation carrying `from` onto `to` (same distinct entries).
fn rearrangement_sign(from: &[u32], to: &[u32]) -> i32 {
    let perm: Vec<usize> = to
        .iter()
        .map(|v| from.iter().position(|w| w == v).unwrap())
        .collect();
    permutation_sign(&perm)
}

/// The unique reordering of `tuple` lying in `Ĩ_pbw` at shift `k`, and the
/// sign `s` with `D_tuple^(k) = s * D_normalized^(k)`.
pub fn pbw_normalize(shape: Shape, tuple: &[u32], k: u32) -> Result<(GeneratorIndex, i32)> {
    check_tuple(shape, tuple)?;
    if !tuple.iter().all_unique() {
        return Err(Error::Domain(format!("{} has repeated values", fmt_tuple(tuple))));
    }
    let reduced = reduce(shape, tuple, k);
    let arranged = pbw_arrange(shape, &reduced);
    let normalized: Vec<u32> = arranged.iter().map(|&b| shape.modn(b as i64 + k as i64)).collect();
    let sign = rearrangement_sign(tuple, &normalized);
    Ok((GeneratorIndex::new(shape, Family::Pbw, normalized, k)?, sign))
}

/// The increasing reordering of `tuple` and the matching sign.
pub fn ss_normalize(shape: Shape, tuple: &[u32], k: u32) -> Result<(GeneratorIndex, i32)> {
    check_tuple(shape, tuple)?;
    if !tuple.iter().all_unique() {
        return Err(Error::Domain(format!("{} has repeated values", fmt_tuple(tuple))));
    }
    let sorted: Vec<u32> = tuple.iter().copied().sorted().collect();
    let sign = rearrangement_sign(tuple, &sorted);
    Ok((GeneratorIndex::new(shape, Family::Ss, sorted, k)?, sign))
}

/// All weak compositions of `total` into `parts` parts.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `D_I^(k)`: the coefficient of `t^k` in `det Z_I(t)`, where column `c` of
/// `Z_I(t)` is column `α_c` of the `p x n` matrix of series
/// `z_{i,j}(t) = Σ_k z_{i,j}^{(k)} t^k`. Expanded over all permutations and
/// all weak compositions of `k`.
pub fn plucker_coeff(shape: Shape, tuple: &[u32], k: u32) -> Result<Polynomial> {
    check_tuple(shape, tuple)?;
    let p = shape.p() as usize;
    if shape.p() > MAX_P {
        return Err(Error::Params(format!("determinant expansion supports p <= {MAX_P}")));
    }
    let comps = compositions(k, p);
    let mut out = Polynomial::zero();
    for perm in (0..p).permutations(p) {
        let sign = sign_rat(permutation_sign(&perm));
        for comp in &comps {
            let m = Monomial::product_of(
                (0..p).map(|row| VarId::new(row as u32 + 1, tuple[perm[row]], comp[row])),
            );
            out.add_term(m, sign.clone());
        }
    }
    Ok(out)
}

/// The generator polynomial of a family index.
pub fn generator(shape: Shape, idx: &GeneratorIndex) -> Result<Polynomial> {
    plucker_coeff(shape, idx.tuple(), idx.shift())
}

/// All family members with shift at most `kmax`, ordered by shift and then
/// lexicographically by tuple.
pub fn gen_family(shape: Shape, family: Family, kmax: u32, limits: &Limits) -> Result<Vec<GeneratorIndex>> {
    let per_shift = binomial(shape.n() as u64, shape.p() as u64) as usize;
    limits.check("generator indices", per_shift.saturating_mul(kmax as usize + 1))?;
    let mut out = Vec::new();
    for k in 0..=kmax {
        let mut level: Vec<GeneratorIndex> = (1..=shape.n())
            .combinations(shape.p() as usize)
            .map(|set| match family {
                Family::Ss => GeneratorIndex::new(shape, Family::Ss, set, k),
                Family::Pbw => {
                    let shifted: Vec<u32> = set.iter().map(|&b| shape.modn(b as i64 + k as i64)).collect();
                    pbw_normalize(shape, &shifted, k).map(|(g, _)| g)
                }
            })
            .collect::<Result<_>>()?;
        level.sort();
        out.extend(level);
    }
    Ok(out)
}

/// The closed-form initial term of a family member together with the sign data.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedInitial {
    pub index: GeneratorIndex,
    pub monomial: Monomial,
    /// The row-to-column-position assignment producing the monomial, 1-based.
    pub permutation: Vec<usize>,
    /// Parity of that permutation, as `±1`.
    pub permutation_sign: i32,
    /// The exponent `e` in the printed sign `(-1)^e`.
    pub printed_exponent: u64,
    pub printed_sign: i32,
}

/// The closed-form initial monomial of `D_I^(k)`, with `k = lp + r`.
///
/// ss: `z_{r+1,α_p}^(l) ... z_{p,α_{r+1}}^(l) z_{1,α_r}^(l+1) ... z_{r,α_1}^(l+1)`.
/// pbw: `z_{1,α_{p-r+1}}^(l+1) ... z_{r,α_p}^(l+1) z_{r+1,α_1}^(l) ... z_{p,α_{p-r}}^(l)`.
pub fn closed_initial(shape: Shape, idx: &GeneratorIndex) -> ClosedInitial {
    let (p, n) = (shape.p() as usize, shape.n() as u64);
    let k = idx.shift() as usize;
    let (l, r) = ((k / p) as u32, k % p);
    let alpha = idx.tuple();
    // position[row - 1] = 1-based column position used in that row
    let position: Vec<usize> = match idx.family() {
        Family::Ss => (1..=p)
            .map(|row| if row <= r { r + 1 - row } else { p + 1 - (row - r) })
            .collect(),
        Family::Pbw => (1..=p)
            .map(|row| if row <= r { p - r + row } else { row - r })
            .collect(),
    };
    let monomial = Monomial::product_of(position.iter().enumerate().map(|(row0, &pos)| {
        let level = if row0 < r { l + 1 } else { l };
        VarId::new(row0 as u32 + 1, alpha[pos - 1], level)
    }));
    let zero_based: Vec<usize> = position.iter().map(|x| x - 1).collect();
    let printed_exponent = match idx.family() {
        Family::Ss => binomial(n, 2) + r as u64 * (n - 1),
        Family::Pbw => r as u64 * (n - 1),
    };
    ClosedInitial {
        index: idx.clone(),
        monomial,
        permutation: position,
        permutation_sign: permutation_sign(&zero_based),
        printed_exponent,
        printed_sign: if printed_exponent % 2 == 0 { 1 } else { -1 },
    }
}

/// One row of the sign comparison between printed and computed initial terms.
#[derive(Debug, Clone, Serialize)]
pub struct SignRow {
    pub p: u32,
    pub n: u32,
    pub index: GeneratorIndex,
    pub computed_monomial: Monomial,
    pub closed_monomial: Monomial,
    pub monomial_matches: bool,
    pub computed_sign: i32,
    pub permutation_sign: i32,
    pub printed_exponent: u64,
    pub printed_sign: i32,
    pub printed_agrees: bool,
}

impl SignRow {
    /// Monomial equal and computed sign equal to the permutation parity.
    pub fn is_consistent(&self) -> bool {
        self.monomial_matches && self.computed_sign == self.permutation_sign
    }
}

/// Compares the symbolic initial term of every family member with shift at
/// most `kmax` against its closed form.
pub fn sign_table(shape: Shape, family: Family, kmax: u32, limits: &Limits, exec: Exec) -> Result<Vec<SignRow>> {
    let order = family.order(shape);
    let indices = gen_family(shape, family, kmax, limits)?;
    exec.try_map(&indices, |idx| {
        let f = generator(shape, idx)?;
        let (c, m) = order.initial_term(&f)?;
        let closed = closed_initial(shape, idx);
        let computed_sign = if c == BigRational::one() {
            1
        } else if c == -BigRational::one() {
            -1
        } else {
            return Err(Error::Invariant(format!("initial coefficient {c} of D_{idx} is not ±1")));
        };
        Ok(SignRow {
            p: shape.p(),
            n: shape.n(),
            index: idx.clone(),
            monomial_matches: m == closed.monomial,
            computed_monomial: m,
            closed_monomial: closed.monomial,
            computed_sign,
            permutation_sign: closed.permutation_sign,
            printed_exponent: closed.printed_exponent,
            printed_sign: closed.printed_sign,
            printed_agrees: computed_sign == closed.printed_sign,
        })
    })
}

/// A product of generators spanning part of a bigraded component.
#[derive(Debug, Clone, Serialize)]
pub struct Product {
    pub factors: Vec<GeneratorIndex>,
    #[serde(skip)]
    pub poly: Polynomial,
}

/// Multisets of `m` family members (sorted, in family order) whose shifts sum to `e`.
pub fn index_multisets(indices: &[GeneratorIndex], m: usize, e: u32, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    fn rec(
        indices: &[GeneratorIndex],
        start: usize,
        left: usize,
        budget: u32,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<()> {
        if left == 0 {
            if budget == 0 {
                out.push(cur.clone());
                limits.check("generator products", out.len())?;
            }
            return Ok(());
        }
        for ix in start..indices.len() {
            let k = indices[ix].shift();
            if k > budget {
                continue;
            }
            cur.push(ix);
            rec(indices, ix, left - 1, budget - k, cur, out, limits)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(indices, 0, m, e, &mut Vec::new(), &mut out, limits)?;
    Ok(out)
}

/// All products `π_d(D_{I_1}^(k_1)) ... π_d(D_{I_m}^(k_m))` over multisets of
/// family members with `k_1 + ... + k_m = e`, zero products dropped. They
/// span the bidegree `(mp, e)` component of `π_d` of the algebra.
pub fn component_products(
    shape: Shape,
    family: Family,
    m: usize,
    e: u32,
    d: u32,
    limits: &Limits,
    exec: Exec,
) -> Result<Vec<Product>> {
    let indices = gen_family(shape, family, e, limits)?;
    let gens: Vec<Polynomial> = exec
        .try_map(&indices, |idx| generator(shape, idx))?
        .into_iter()
        .map(|f| f.truncate(d))
        .collect();
    let multisets = index_multisets(&indices, m, e, limits)?;
    let products = exec.map(&multisets, |ms| {
        let poly = ms.iter().fold(Polynomial::one(), |acc, &ix| &acc * &gens[ix]);
        Product { factors: ms.iter().map(|&ix| indices[ix].clone()).collect(), poly }
    });
    Ok(products.into_iter().filter(|pr| !pr.poly.is_zero()).collect())
}

/// Generator polynomials keyed by index, for repeated lookups.
pub fn generator_table(shape: Shape, indices: &[GeneratorIndex], exec: Exec) -> Result<BTreeMap<GeneratorIndex, Polynomial>> {
    let polys = exec.try_map(indices, |idx| generator(shape, idx))?;
    Ok(indices.iter().cloned().zip(polys).collect())
}
