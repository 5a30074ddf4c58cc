//! The bijections `φ_ss`, `φ_pbw` between generator indices and order ideals,
//! the generator orders `⪯_ss`, `⪯_pbw`, the Hibi ring correspondences
//! (including the embedding `ψ`), and component-wise checks of the sagbi and
//! basis properties.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::pluecker::{
    closed_initial, component_products, gen_family, generator, index_multisets, Family, GeneratorIndex,
};
use crate::polytope::{decompose_point, hibi_generator, weak_chains, HibiMonomial, Partition};
use crate::poset::{Cell, OrderIdeal, Poset, PosetKind};
use crate::symalg::{initial_space, Monomial, Polynomial, VarId};
use crate::{Error, Exec, Limits, Result, Shape};

/// Outcome of an exhaustive check: how many cases were examined and which failed.
#[derive(Debug, Clone, Default, PartialEq, Eq, DeriveSerialize)]
pub struct IsoReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: IsoReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// `φ(I^(k))` in `Q̃`, or in `Q` when the poset is finite and `k = 0`.
///
/// ss: rows `i <= k` in full, and rows `i in [k+1, k+p]` up to column
/// `i + α_{p+1-(i-k)} - 1`. pbw: the ideal generated by the cells
/// `q_{k+i, k+β_i}` with `k + β_i > p`, where `β_i = α_i - k mod n`.
pub fn phi(poset: &Poset, idx: &GeneratorIndex) -> Result<OrderIdeal> {
    let shape = poset.shape();
    let (p, n) = (shape.p(), shape.n());
    // Re-validate against this shape.
    let idx = &GeneratorIndex::new(shape, idx.family(), idx.tuple().to_vec(), idx.shift())?;
    let k = idx.shift();
    if poset.kind() == PosetKind::Finite && k != 0 {
        return Err(Error::Domain(format!("{idx} has positive shift; {poset} only has level 0")));
    }
    let alpha = idx.tuple();
    match idx.family() {
        Family::Ss => {
            let mut cells = Vec::new();
            for i in 1..=k + p {
                let last = if i <= k {
                    i + n - 1
                } else {
                    i + alpha[(p + 1 - (i - k)) as usize - 1] - 1
                };
                cells.extend((i.max(p + 1)..=last).map(|j| Cell::new(i, j)));
            }
            poset.ideal(cells)
        }
        Family::Pbw => {
            let gens: Vec<Cell> = idx
                .reduced(shape)
                .iter()
                .enumerate()
                .map(|(i0, &b)| Cell::new(k + i0 as u32 + 1, k + b))
                .filter(|c| c.j > p)
                .collect();
            poset.downward_closure(&gens)
        }
    }
}

/// The unique index `I^(k)` with `φ(I^(k)) = J`; `k` is the level of `J`.
pub fn phi_inverse(family: Family, ideal: &OrderIdeal) -> Result<GeneratorIndex> {
    let poset = ideal.poset();
    let shape = poset.shape();
    let (p, n) = (shape.p(), shape.n());
    let k = ideal.level();
    let tuple: Vec<u32> = match family {
        Family::Ss => (1..=p)
            .map(|slot| {
                // slot = p + 1 - (i - k)
                let i = k + p + 1 - slot;
                let count = ideal.cells().iter().filter(|c| c.i == i).count() as u32;
                count + i.max(p + 1) - i
            })
            .collect(),
        Family::Pbw => {
            let finite = Poset::finite(shape);
            let inner: BTreeSet<Cell> = ideal
                .cells()
                .iter()
                .filter(|c| c.i > k && c.j > k + p)
                .map(|c| Cell::new(c.i - k, c.j - k))
                .collect();
            let inner = finite.ideal(inner)?;
            let mut beta: Vec<u32> = (1..=p).collect();
            for c in finite.max_elements(&inner) {
                beta[c.i as usize - 1] = c.j;
            }
            beta.iter().map(|&b| shape.modn(b as i64 + k as i64)).collect()
        }
    };
    let bad = || Error::Invariant(format!("no {family} index maps onto the ideal {:?} in {poset}", ideal.cells()));
    if tuple.iter().any(|&a| a == 0 || a > n) {
        return Err(bad());
    }
    let idx = GeneratorIndex::new(shape, family, tuple, k).map_err(|_| bad())?;
    if &phi(&poset, &idx)? != ideal {
        return Err(bad());
    }
    Ok(idx)
}

/// `u ⪯ u'` in the generator order of the family of `u`.
pub fn gen_leq(shape: Shape, u: &GeneratorIndex, v: &GeneratorIndex) -> Result<bool> {
    if u.family() != v.family() {
        return Err(Error::Domain(format!("cannot compare {} index {u} with {} index {v}", u.family(), v.family())));
    }
    for w in [u, v] {
        GeneratorIndex::new(shape, w.family(), w.tuple().to_vec(), w.shift())?;
    }
    Ok(gen_leq_unchecked(shape, u, v))
}

pub(crate) fn gen_leq_unchecked(shape: Shape, u: &GeneratorIndex, v: &GeneratorIndex) -> bool {
    let p = shape.p() as usize;
    let (k, k2) = (u.shift(), v.shift());
    if k > k2 {
        return false;
    }
    let gap = (k2 - k) as usize;
    if gap >= p {
        return true;
    }
    match u.family() {
        Family::Ss => {
            let (a, b) = (u.tuple(), v.tuple());
            (0..p - gap).all(|i| a[i] <= b[i + gap])
        }
        Family::Pbw => {
            let (a, b) = (u.reduced(shape), v.reduced(shape));
            // 0-based: i in [gap, p), i' in [i - gap, p)
            (gap..p).all(|i| (i - gap..p).any(|i2| k + a[i] <= k2 + b[i2]))
        }
    }
}

/// Checks that `φ` is a bijection from the indices with shift at most `kmax`
/// onto the ideals of level at most `kmax`, round-tripping both ways.
pub fn check_bijection(family: Family, shape: Shape, kmax: u32, limits: &Limits) -> Result<IsoReport> {
    let poset = Poset::semi_infinite(shape);
    let indices = gen_family(shape, family, kmax, limits)?;
    let ideals = poset.enumerate_ideals(kmax, limits)?;
    let mut report = IsoReport::default();
    if indices.len() != ideals.len() {
        report.failures.push(format!("{} indices but {} ideals", indices.len(), ideals.len()));
    }
    let mut images = BTreeSet::new();
    for idx in &indices {
        report.checked += 1;
        let j = phi(&poset, idx)?;
        if j.level() != idx.shift() {
            report.failures.push(format!("phi({idx}) has level {}", j.level()));
        }
        match phi_inverse(family, &j) {
            Ok(back) if &back == idx => {}
            Ok(back) => report.failures.push(format!("phi_inverse(phi({idx})) = {back}")),
            Err(e) => report.failures.push(format!("phi_inverse(phi({idx})): {e}")),
        }
        images.insert(j);
    }
    for j in &ideals {
        report.checked += 1;
        match phi_inverse(family, j) {
            Ok(idx) if &phi(&poset, &idx)? == j => {}
            Ok(idx) => report.failures.push(format!("phi({idx}) differs from the ideal it came from")),
            Err(e) => report.failures.push(e.to_string()),
        }
        if !images.contains(j) {
            report.failures.push(format!("ideal {:?} is not an image of phi", j.cells()));
        }
    }
    Ok(report)
}

/// Checks `u ⪯ u' ⟺ φ(u) ⊆ φ(u')` for all pairs with shifts at most `kmax`.
pub fn check_order_isomorphism(family: Family, shape: Shape, kmax: u32, limits: &Limits) -> Result<IsoReport> {
    let poset = Poset::semi_infinite(shape);
    let indices = gen_family(shape, family, kmax, limits)?;
    limits.check("generator pairs", indices.len().saturating_mul(indices.len()))?;
    let images: Vec<OrderIdeal> = indices.iter().map(|u| phi(&poset, u)).collect::<Result<_>>()?;
    let mut report = IsoReport::default();
    for (a, ia) in indices.iter().zip(&images) {
        for (b, ib) in indices.iter().zip(&images) {
            report.checked += 1;
            let leq = gen_leq_unchecked(shape, a, b);
            let sub = ia.is_subset(ib);
            if leq != sub {
                report.failures.push(format!("{a} vs {b}: order says {leq}, inclusion says {sub}"));
            }
        }
    }
    Ok(report)
}

/// A monomial with integer exponents in the variables `z_{i,j}^{(k)}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentMonomial(BTreeMap<VarId, i64>);

impl LaurentMonomial {
    pub fn one() -> Self {
        LaurentMonomial::default()
    }

    pub fn var(v: VarId, e: i64) -> Self {
        let mut out = LaurentMonomial::one();
        out.mul_var(v, e);
        out
    }

    pub fn mul_var(&mut self, v: VarId, e: i64) {
        let slot = self.0.entry(v).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&v);
        }
    }

    pub fn mul(&self, other: &LaurentMonomial) -> LaurentMonomial {
        let mut out = self.clone();
        for (&v, &e) in &other.0 {
            out.mul_var(v, e);
        }
        out
    }

    pub fn pow(&self, e: i64) -> LaurentMonomial {
        let mut out = LaurentMonomial::one();
        for (&v, &x) in &self.0 {
            out.mul_var(v, x * e);
        }
        out
    }

    pub fn exponent(&self, v: VarId) -> i64 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// The ordinary monomial, when no exponent is negative.
    pub fn to_monomial(&self) -> Option<Monomial> {
        if self.0.values().any(|&e| e < 0) {
            return None;
        }
        Some(Monomial::from_pairs(self.0.iter().map(|(&v, &e)| (v, e as u32))))
    }
}

impl From<&Monomial> for LaurentMonomial {
    fn from(m: &Monomial) -> Self {
        LaurentMonomial(m.exponents().iter().map(|&(v, e)| (v, e as i64)).collect())
    }
}

impl Serialize for LaurentMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for pair in &self.0 {
            seq.serialize_element(&pair)?;
        }
        seq.end()
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (ix, (v, e)) in self.0.iter().enumerate() {
            if ix > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `ζ_{i,j} = z_{t, j mod n}^{(m)}` for `i = mp + t`, `t in [1, p]`.
pub fn zeta(shape: Shape, c: Cell) -> VarId {
    let p = shape.p();
    let (m, t) = ((c.i - 1) / p, (c.i - 1) % p + 1);
    VarId::new(t, shape.modn(c.j as i64), m)
}

/// `ψ` on one `y` variable.
fn psi_y(shape: Shape, c: Cell) -> LaurentMonomial {
    let p = shape.p();
    let mut out = LaurentMonomial::var(zeta(shape, c), 1);
    let denominator = if c.is_diagonal() {
        Cell::new(c.i - p, c.i - p)
    } else {
        Cell::new(c.i, c.i)
    };
    out.mul_var(zeta(shape, denominator), -1);
    out
}

/// The multiplicative map `ψ` from monomials of `C[Q̃][s]` to Laurent monomials.
pub fn psi_image(shape: Shape, g: &HibiMonomial) -> Result<LaurentMonomial> {
    let poset = Poset::semi_infinite(shape);
    let mut out = LaurentMonomial::one();
    let s_image: LaurentMonomial = (1..=shape.p())
        .fold(LaurentMonomial::one(), |acc, i| acc.mul(&LaurentMonomial::var(VarId::new(i, i, 0), 1)));
    out = out.mul(&s_image.pow(g.s_degree as i64));
    for (c, e) in g.y.coords() {
        poset.check(c).map_err(|_| Error::Domain(format!("{c} is not a cell of {poset}")))?;
        out = out.mul(&psi_y(shape, c).pow(e as i64));
    }
    Ok(out)
}

/// The Hibi side of one generator, with its translation back to `z` variables.
#[derive(Debug, Clone, DeriveSerialize)]
pub struct HibiRecord {
    pub index: GeneratorIndex,
    pub ideal: OrderIdeal,
    pub hibi: HibiMonomial,
    /// ss: read off the vertex via `φ_ss^{-1}`; pbw: the `ψ`-image.
    pub translated: Option<Monomial>,
    pub closed_monomial: Monomial,
    pub matches: bool,
    pub printed_sign: i32,
    pub computed_sign: i32,
}

/// The partition under which a family's initial algebra is a Hibi ring.
pub fn family_partition(family: Family) -> Partition {
    match family {
        Family::Ss => Partition::Order,
        Family::Pbw => Partition::Diagonal,
    }
}

/// Translates a Hibi monomial of the family's ring back to a `z` monomial.
///
/// ss: decompose the exponent vector into its chain of ideals, map each back
/// through `φ_ss^{-1}` and multiply the closed-form initial monomials.
/// pbw: apply `ψ`; the result must be an ordinary monomial.
pub fn hibi_to_monomial(family: Family, shape: Shape, g: &HibiMonomial, limits: &Limits) -> Result<Option<Monomial>> {
    match family {
        Family::Ss => {
            let poset = Poset::semi_infinite(shape);
            let chain = decompose_point(&poset, &g.y, g.s_degree as usize, &Partition::Order, limits)?;
            let mut out = Monomial::one();
            for j in &chain {
                let idx = phi_inverse(Family::Ss, j)?;
                out = &out * &closed_initial(shape, &idx).monomial;
            }
            Ok(Some(out))
        }
        Family::Pbw => Ok(psi_image(shape, g)?.to_monomial()),
    }
}

/// The Hibi generator attached to `idx` and the check that it translates back
/// to the closed-form initial monomial.
pub fn hibi_correspondence(shape: Shape, idx: &GeneratorIndex, limits: &Limits) -> Result<HibiRecord> {
    let family = idx.family();
    let ideal = phi(&Poset::semi_infinite(shape), idx)?;
    let hibi = hibi_generator(&ideal, &family_partition(family))?;
    let translated = hibi_to_monomial(family, shape, &hibi, limits)?;
    let closed = closed_initial(shape, idx);
    Ok(HibiRecord {
        index: idx.clone(),
        ideal,
        matches: translated.as_ref() == Some(&closed.monomial),
        hibi,
        translated,
        closed_monomial: closed.monomial,
        printed_sign: closed.printed_sign,
        computed_sign: closed.permutation_sign,
    })
}

/// Checks `ψ` on every pbw generator with shift at most `kmax`, and injectivity
/// of `ψ` on all products of at most `max_s` Hibi generators of the window.
pub fn check_psi(shape: Shape, kmax: u32, max_s: usize, limits: &Limits) -> Result<IsoReport> {
    let mut report = IsoReport::default();
    for idx in gen_family(shape, Family::Pbw, kmax, limits)? {
        report.checked += 1;
        let rec = hibi_correspondence(shape, &idx, limits)?;
        if !rec.matches {
            report.failures.push(format!(
                "psi of the Hibi generator of {idx} is {}, closed form is {}",
                psi_image(shape, &rec.hibi)?,
                rec.closed_monomial
            ));
        }
    }
    let poset = Poset::semi_infinite(shape);
    let ideals = poset.enumerate_ideals(kmax, limits)?;
    let gens: Vec<HibiMonomial> = ideals
        .iter()
        .map(|j| hibi_generator(j, &Partition::Diagonal))
        .collect::<Result<_>>()?;
    let mut monomials: BTreeSet<HibiMonomial> = BTreeSet::from([HibiMonomial::one()]);
    let mut frontier = monomials.clone();
    for _ in 0..max_s {
        let mut next = BTreeSet::new();
        for a in &frontier {
            for g in &gens {
                next.insert(a.mul(g));
            }
        }
        limits.check("Hibi monomials", monomials.len() + next.len())?;
        monomials.extend(next.iter().cloned());
        frontier = next;
    }
    let mut seen: BTreeMap<LaurentMonomial, HibiMonomial> = BTreeMap::new();
    for g in &monomials {
        report.checked += 1;
        let image = psi_image(shape, g)?;
        if let Some(prev) = seen.insert(image.clone(), g.clone()) {
            report.failures.push(format!(
                "psi identifies s^{} y^{} and s^{} y^{} (image {image})",
                prev.s_degree, prev.y, g.s_degree, g.y
            ));
        }
    }
    Ok(report)
}

/// A bigraded component `(mp, e)` together with the truncation degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, DeriveSerialize)]
pub struct Bidegree {
    pub m: usize,
    pub e: u32,
    pub d: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, DeriveSerialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// A witness that a component check failed.
#[derive(Debug, Clone, DeriveSerialize)]
pub struct Counterexample {
    pub reason: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<GeneratorIndex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Polynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Monomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<Monomial>,
}

impl Counterexample {
    fn monomial(reason: impl Into<String>, m: &Monomial) -> Self {
        Counterexample { reason: reason.into(), chain: Vec::new(), polynomial: None, expected: None, actual: Some(m.clone()) }
    }
}

/// Result of checking one component.
#[derive(Debug, Clone, DeriveSerialize)]
pub struct CellReport {
    pub family: Family,
    pub cell: Bidegree,
    /// Dimension of the component.
    pub dim: usize,
    /// Size predicted by the Hibi ring or the chain count.
    pub expected: usize,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
}

impl CellReport {
    fn new(family: Family, cell: Bidegree, dim: usize, expected: usize, counterexamples: Vec<Counterexample>) -> Self {
        let status = if counterexamples.is_empty() && dim == expected { Status::Ok } else { Status::Fail };
        CellReport { family, cell, dim, expected, status, counterexamples }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Ok
    }
}

fn check_cell(cell: Bidegree) -> Result<()> {
    if cell.d < cell.e {
        return Err(Error::Domain(format!(
            "truncation degree d = {} is below the shift sum e = {}",
            cell.d, cell.e
        )));
    }
    Ok(())
}

/// Weakly increasing `m`-chains of ideals of `Q̃` whose levels sum to `e`.
pub fn ideal_chains(shape: Shape, m: usize, e: u32, limits: &Limits) -> Result<Vec<Vec<OrderIdeal>>> {
    let ideals = Poset::semi_infinite(shape).enumerate_ideals(e, limits)?;
    Ok(weak_chains(&ideals, m, limits)?
        .into_iter()
        .filter(|ch| ch.iter().map(|&ix| ideals[ix].level()).sum::<u32>() == e)
        .map(|ch| ch.into_iter().map(|ix| ideals[ix].clone()).collect())
        .collect())
}

/// Weakly increasing `m`-chains of family indices, in the generator order,
/// whose shifts sum to `e`.
pub fn generator_chains(family: Family, shape: Shape, m: usize, e: u32, limits: &Limits) -> Result<Vec<Vec<GeneratorIndex>>> {
    let indices = gen_family(shape, family, e, limits)?;
    let mut out = Vec::new();
    fn rec(
        shape: Shape,
        indices: &[GeneratorIndex],
        m: usize,
        budget: u32,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<GeneratorIndex>>,
        limits: &Limits,
    ) -> Result<()> {
        if cur.len() == m {
            if budget == 0 {
                out.push(cur.iter().map(|&ix| indices[ix].clone()).collect());
                limits.check("generator chains", out.len())?;
            }
            return Ok(());
        }
        for ix in 0..indices.len() {
            let u = &indices[ix];
            if u.shift() > budget {
                continue;
            }
            if let Some(&last) = cur.last() {
                if !gen_leq_unchecked(shape, &indices[last], u) {
                    continue;
                }
            }
            cur.push(ix);
            rec(shape, indices, m, budget - u.shift(), cur, out, limits)?;
            cur.pop();
        }
        Ok(())
    }
    rec(shape, &indices, m, e, &mut Vec::new(), &mut out, limits)?;
    Ok(out)
}

/// Component-wise sagbi check.
///
/// `S1` is the initial space of the bidegree `(mp, e)` component of the
/// truncated algebra. `S2` translates the Hibi monomials `Π s y^{v(J_i)}`
/// over weakly increasing chains of ideals with level sum `e` back to `z`
/// monomials. The check demands `S1 = S2`, and also that `S2` is exactly the
/// set of products of `m` closed-form initial monomials.
pub fn sagbi_verify(family: Family, shape: Shape, cell: Bidegree, limits: &Limits, exec: Exec) -> Result<CellReport> {
    check_cell(cell)?;
    let Bidegree { m, e, d } = cell;
    let order = family.order(shape);
    let products = component_products(shape, family, m, e, d, limits, exec)?;
    let polys: Vec<Polynomial> = products.into_iter().map(|pr| pr.poly).collect();
    let s1: BTreeSet<Monomial> = initial_space(&order, &polys).into_iter().collect();

    let part = family_partition(family);
    let chains = ideal_chains(shape, m, e, limits)?;
    let translated = exec.try_map(&chains, |chain| {
        let g = chain.iter().try_fold(HibiMonomial::one(), |acc, j| {
            Ok::<_, Error>(acc.mul(&hibi_generator(j, &part)?))
        })?;
        hibi_to_monomial(family, shape, &g, limits)
    })?;
    let mut counterexamples = Vec::new();
    let mut s2 = BTreeSet::new();
    for (chain, t) in chains.iter().zip(translated) {
        match t {
            Some(mono) => {
                if !s2.insert(mono.clone()) {
                    counterexamples.push(Counterexample::monomial("two chains translate to the same monomial", &mono));
                }
            }
            None => counterexamples.push(Counterexample {
                reason: format!("Hibi monomial of the chain {:?} has no monomial image", chain.iter().map(|j| j.cells()).collect::<Vec<_>>()),
                chain: Vec::new(),
                polynomial: None,
                expected: None,
                actual: None,
            }),
        }
    }

    let indices = gen_family(shape, family, e, limits)?;
    let closed: Vec<Monomial> = indices.iter().map(|idx| closed_initial(shape, idx).monomial).collect();
    let generated: BTreeSet<Monomial> = index_multisets(&indices, m, e, limits)?
        .iter()
        .map(|ms| ms.iter().fold(Monomial::one(), |acc, &ix| &acc * &closed[ix]))
        .collect();

    for mono in s1.difference(&s2) {
        counterexamples.push(Counterexample::monomial("initial monomial of the component missing from the Hibi side", mono));
    }
    for mono in s2.difference(&s1) {
        counterexamples.push(Counterexample::monomial("Hibi monomial is not an initial monomial of the component", mono));
    }
    for mono in generated.symmetric_difference(&s2) {
        counterexamples.push(Counterexample::monomial(
            "products of initial monomials and chain monomials disagree here",
            mono,
        ));
    }
    Ok(CellReport::new(family, cell, s1.len(), s2.len(), counterexamples))
}

/// Component-wise basis check: the chain-indexed products have pairwise
/// distinct initial monomials and there are as many as the component's
/// dimension.
pub fn basis_verify(family: Family, shape: Shape, cell: Bidegree, limits: &Limits, exec: Exec) -> Result<CellReport> {
    check_cell(cell)?;
    let Bidegree { m, e, d } = cell;
    let order = family.order(shape);
    let chains = generator_chains(family, shape, m, e, limits)?;
    let indices = gen_family(shape, family, e, limits)?;
    let gens: BTreeMap<GeneratorIndex, Polynomial> = indices
        .iter()
        .cloned()
        .zip(exec.try_map(&indices, |idx| Ok::<_, Error>(generator(shape, idx)?.truncate(d)))?)
        .collect();
    let products: Vec<Polynomial> = exec.map(&chains, |chain| {
        chain.iter().fold(Polynomial::one(), |acc, idx| &acc * &gens[idx])
    });
    let mut counterexamples = Vec::new();
    let mut leads: BTreeMap<Monomial, usize> = BTreeMap::new();
    for (ix, (chain, f)) in chains.iter().zip(&products).enumerate() {
        let expected = chain
            .iter()
            .fold(Monomial::one(), |acc, idx| &acc * &closed_initial(shape, idx).monomial);
        let actual = match order.initial_term(f) {
            Ok((_, mono)) => mono,
            Err(_) => {
                counterexamples.push(Counterexample {
                    reason: "chain product vanishes".into(),
                    chain: chain.clone(),
                    polynomial: Some(f.clone()),
                    expected: Some(expected),
                    actual: None,
                });
                continue;
            }
        };
        if actual != expected {
            counterexamples.push(Counterexample {
                reason: "initial monomial differs from the product of closed forms".into(),
                chain: chain.clone(),
                polynomial: Some(f.clone()),
                expected: Some(expected),
                actual: Some(actual.clone()),
            });
        }
        if let Some(prev) = leads.insert(actual.clone(), ix) {
            counterexamples.push(Counterexample {
                reason: format!("shares its initial monomial with the chain {}", fmt_chain(&chains[prev])),
                chain: chain.clone(),
                polynomial: Some(f.clone()),
                expected: None,
                actual: Some(actual),
            });
        }
    }
    let spanning = component_products(shape, family, m, e, d, limits, exec)?;
    let polys: Vec<Polynomial> = spanning.into_iter().map(|pr| pr.poly).collect();
    let dim = crate::symalg::span_rank(&order, &polys);
    Ok(CellReport::new(family, cell, dim, chains.len(), counterexamples))
}

fn fmt_chain(chain: &[GeneratorIndex]) -> String {
    chain.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(" <= ")
}

/// Number of weakly increasing `m`-chains of family indices with shift sum `e`.
pub fn hilbert_count(family: Family, shape: Shape, m: usize, e: u32, limits: &Limits) -> Result<u64> {
    if m == 0 {
        return Ok(u64::from(e == 0));
    }
    let indices = gen_family(shape, family, e, limits)?;
    let len = indices.len();
    limits.check("generator pairs", len.saturating_mul(len))?;
    let leq: Vec<Vec<bool>> = indices
        .iter()
        .map(|a| indices.iter().map(|b| gen_leq_unchecked(shape, a, b)).collect())
        .collect();
    // ways[ix][b]: chains of the current length ending at ix with shift sum b
    let budget = e as usize;
    let mut ways = vec![vec![0u64; budget + 1]; len];
    for (ix, u) in indices.iter().enumerate() {
        if u.shift() as usize <= budget {
            ways[ix][u.shift() as usize] = 1;
        }
    }
    for _ in 1..m {
        let mut next = vec![vec![0u64; budget + 1]; len];
        for (ix, row) in ways.iter().enumerate() {
            for (b, &w) in row.iter().enumerate().filter(|(_, w)| **w > 0) {
                for (jx, u) in indices.iter().enumerate() {
                    let nb = b + u.shift() as usize;
                    if leq[ix][jx] && nb <= budget {
                        next[jx][nb] += w;
                    }
                }
            }
        }
        ways = next;
    }
    Ok(ways.iter().map(|row| row[budget]).sum())
}

/// Runs `check` on every cell `m <= m_max`, `e <= e_max` in canonical order.
pub fn sweep<F>(m_max: usize, e_max: u32, d: u32, exec: Exec, check: F) -> Result<Vec<CellReport>>
where
    F: Fn(Bidegree) -> Result<CellReport> + Sync + Send,
{
    let cells: Vec<Bidegree> = (0..=m_max)
        .flat_map(|m| (0..=e_max).map(move |e| Bidegree { m, e, d }))
        .collect();
    exec.try_map(&cells, |&c| check(c))
}
