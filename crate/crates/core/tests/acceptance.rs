//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use toricgrass::degen::{
    basis_verify, check_bijection, check_order_isomorphism, check_psi, gen_leq, hilbert_count, phi, sagbi_verify,
    Bidegree,
};
use toricgrass::pluecker::{component_products, gen_family, generator, sign_table, Family, GeneratorIndex};
use toricgrass::polytope::{decompose_point, vertex_point, weak_chains, LatticePoint, Partition};
use toricgrass::poset::{Cell, Poset, PosetKind};
use toricgrass::symalg::{span_rank, Polynomial};
use toricgrass::tableaux::enumerate_tableaux;
use toricgrass::{Exec, Limits, Shape};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn shape(p: u32, n: u32) -> Shape {
    Shape::new(p, n).unwrap()
}

fn cells(list: &[(u32, u32)]) -> BTreeSet<Cell> {
    list.iter().map(|&(i, j)| Cell::new(i, j)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: toricgrass::Error) -> String {
    e.to_string()
}

fn worked_examples() -> Outcome {
    let s = shape(3, 7);
    let q = Poset::finite(s);
    let qt = Poset::semi_infinite(s);
    let small = cells(&[(3, 4), (2, 4), (1, 4), (1, 5), (1, 6)]);
    let ss0 = phi(&q, &GeneratorIndex::new(s, Family::Ss, vec![2, 3, 6], 0).map_err(err)?).map_err(err)?;
    let pbw0 = phi(&q, &GeneratorIndex::new(s, Family::Pbw, vec![6, 2, 4], 0).map_err(err)?).map_err(err)?;
    ensure(ss0.cells() == &small, || format!("finite ss ideal {:?}", ss0.cells()))?;
    ensure(pbw0.cells() == &small, || format!("finite pbw ideal {:?}", pbw0.cells()))?;
    ensure(q.max_elements(&pbw0) == cells(&[(3, 4), (1, 6)]), || "finite pbw antichain".into())?;

    let big = cells(&[
        (1, 4), (1, 5), (1, 6), (1, 7),
        (2, 4), (2, 5), (2, 6), (2, 7), (2, 8),
        (3, 4), (3, 5), (3, 6), (3, 7), (3, 8),
        (4, 4), (4, 5), (4, 6),
        (5, 5), (5, 6),
    ]);
    let ss2 = phi(&qt, &GeneratorIndex::new(s, Family::Ss, vec![2, 3, 6], 2).map_err(err)?).map_err(err)?;
    let pbw2 = phi(&qt, &GeneratorIndex::new(s, Family::Pbw, vec![1, 4, 6], 2).map_err(err)?).map_err(err)?;
    ensure(ss2.cells() == &big, || format!("level-2 ss ideal {:?}", ss2.cells()))?;
    ensure(pbw2.cells() == &big, || format!("level-2 pbw ideal {:?}", pbw2.cells()))?;
    let generated = qt.downward_closure(&cells(&[(4, 4), (5, 6), (3, 8)])).map_err(err)?;
    ensure(generated == pbw2, || "level-2 pbw generators".into())?;

    let s = shape(4, 9);
    let members = [(vec![1, 2, 6, 5], 0), (vec![3, 8, 7, 6], 2), (vec![5, 1, 7, 9], 4), (vec![2, 3, 4, 5], 1)];
    let mut idx = Vec::new();
    for (t, k) in members {
        idx.push(GeneratorIndex::new(s, Family::Pbw, t.clone(), k).map_err(|e| format!("{t:?}^({k}): {e}"))?);
    }
    ensure(GeneratorIndex::new(s, Family::Pbw, vec![3, 8, 7, 6], 0).is_err(), || "non-member accepted".into())?;
    let leq = |a: usize, b: usize| gen_leq(s, &idx[a], &idx[b]).unwrap();
    ensure(leq(0, 1) && !leq(1, 0), || "(1,2,6,5)^(0) < (3,8,7,6)^(2)".into())?;
    ensure(leq(1, 2) && !leq(2, 1), || "(3,8,7,6)^(2) < (5,1,7,9)^(4)".into())?;
    ensure(!leq(0, 3) && !leq(3, 0), || "(1,2,6,5)^(0) and (2,3,4,5)^(1) incomparable".into())?;
    Ok("4 ideals, 4 memberships, 3 comparisons".into())
}

fn closed_forms() -> Outcome {
    let l = Limits::default();
    let mut rows = 0;
    let mut printed_disagree = 0;
    let mut summary = Vec::new();
    for s in [shape(2, 4), shape(2, 5), shape(3, 5)] {
        for f in Family::BOTH {
            let table = sign_table(s, f, 4, &l, Exec::Parallel).map_err(err)?;
            for row in &table {
                ensure(row.monomial_matches, || {
                    format!("{s} {f} {}: computed {} vs closed {}", row.index, row.computed_monomial, row.closed_monomial)
                })?;
                ensure(row.computed_sign == row.permutation_sign, || {
                    format!("{s} {f} {}: sign {} vs permutation parity {}", row.index, row.computed_sign, row.permutation_sign)
                })?;
            }
            let bad = table.iter().filter(|r| !r.printed_agrees).count();
            summary.push(format!("{f}({},{}) {bad}/{}", s.p(), s.n(), table.len()));
            rows += table.len();
            printed_disagree += bad;
        }
    }
    Ok(format!(
        "{rows} generators, all monomials exact, signs = permutation parity; printed sign differs in {printed_disagree} [{}]",
        summary.join(", ")
    ))
}

fn bijections() -> Outcome {
    let l = Limits::default();
    let mut checked = 0;
    for s in [shape(2, 4), shape(2, 5), shape(3, 5)] {
        for f in Family::BOTH {
            for r in [check_bijection(f, s, 3, &l).map_err(err)?, check_order_isomorphism(f, s, 3, &l).map_err(err)?] {
                ensure(r.passed(), || format!("{s} {f}: {:?}", &r.failures[..r.failures.len().min(3)]))?;
                checked += r.checked;
            }
        }
    }
    Ok(format!("{checked} cases"))
}

fn lattice_points() -> Outcome {
    let l = Limits::default();
    let mut checked = 0;
    let posets = [
        (Poset::finite(shape(2, 4)), 0),
        (Poset::finite(shape(2, 5)), 0),
        (Poset::finite(shape(3, 5)), 0),
        (Poset::semi_infinite(shape(2, 4)), 2),
        (Poset::semi_infinite(shape(2, 5)), 2),
        (Poset::semi_infinite(shape(3, 5)), 2),
    ];
    for (poset, kmax) in posets {
        let third = match poset.kind() {
            PosetKind::SemiInfinite => Partition::Diagonal,
            PosetKind::Finite => Partition::Explicit(
                poset.window(0).into_iter().filter(|c| (c.i + c.j) % 2 == 0).collect(),
            ),
        };
        let ideals = poset.enumerate_ideals(kmax, &l).map_err(err)?;
        for part in [Partition::Order, Partition::Chain, third] {
            let vertices: Vec<LatticePoint> =
                ideals.iter().map(|j| vertex_point(j, &part)).collect::<Result<_, _>>().map_err(err)?;
            for k in 0..=3 {
                let mut seen = BTreeSet::new();
                for chain in weak_chains(&ideals, k, &l).map_err(err)? {
                    checked += 1;
                    let u = chain.iter().fold(LatticePoint::zero(), |acc, &ix| acc.add(&vertices[ix]));
                    ensure(seen.insert(u.clone()), || format!("{poset} {} k={k}: repeated point {u}", part.name()))?;
                    let back = decompose_point(&poset, &u, k, &part, &l).map_err(err)?;
                    let expected: Vec<_> = chain.iter().map(|&ix| ideals[ix].clone()).collect();
                    ensure(back == expected, || format!("{poset} {} k={k}: wrong chain for {u}", part.name()))?;
                }
            }
        }
    }
    Ok(format!("{checked} chains decomposed"))
}

const SWEEP: [(u32, u32); 2] = [(2, 4), (3, 5)];

fn sweep_cells() -> Vec<Bidegree> {
    (0..=2usize).flat_map(|m| (0..=2u32).map(move |e| Bidegree { m, e, d: 2 })).collect()
}

fn sagbi() -> Outcome {
    let l = Limits::default();
    let mut anchor = None;
    let mut total = 0;
    for (p, n) in SWEEP {
        let s = shape(p, n);
        for f in Family::BOTH {
            for cell in sweep_cells() {
                let r = sagbi_verify(f, s, cell, &l, Exec::Parallel).map_err(err)?;
                ensure(r.passed(), || {
                    format!("{s} {f} {cell:?}: dim {} expected {} {:?}", r.dim, r.expected, r.counterexamples.first())
                })?;
                if (p, n, cell.m, cell.e) == (2, 4, 2, 0) {
                    anchor = Some(r.dim);
                }
                total += 1;
            }
        }
    }
    ensure(anchor == Some(20), || format!("anchor dimension {anchor:?}"))?;
    Ok(format!("{total} cells, anchor dim 20"))
}

fn bases() -> Outcome {
    let l = Limits::default();
    let mut total = 0;
    for (p, n) in SWEEP {
        let s = shape(p, n);
        for f in Family::BOTH {
            for cell in sweep_cells() {
                let r = basis_verify(f, s, cell, &l, Exec::Parallel).map_err(err)?;
                ensure(r.passed(), || {
                    format!("{s} {f} {cell:?}: {} products, rank {} {:?}", r.expected, r.dim, r.counterexamples.first())
                })?;
                total += r.expected;
            }
        }
    }
    Ok(format!("{total} chain products, all leading monomials distinct"))
}

fn psi() -> Outcome {
    let l = Limits::default();
    let mut checked = 0;
    for s in [shape(2, 4), shape(3, 5), shape(3, 7)] {
        let r = check_psi(s, 3, 2, &l).map_err(err)?;
        ensure(r.passed(), || format!("{s}: {:?}", &r.failures[..r.failures.len().min(3)]))?;
        checked += r.checked;
    }
    Ok(format!("{checked} cases"))
}

fn weights() -> Outcome {
    let l = Limits::default();
    let s = shape(2, 4);
    for f in Family::BOTH {
        let gens: Vec<Polynomial> = gen_family(s, f, 2, &l)
            .map_err(err)?
            .iter()
            .map(|u| generator(s, u))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let r = f.order(s).weight_check(2, &gens).map_err(err)?;
        ensure(r.passed(), || format!("{f}: {:?}", r.failures))?;
    }
    Ok("both orders".into())
}

fn hilbert() -> Outcome {
    let l = Limits::default();
    let mut cells_checked = 0;
    for (p, n) in SWEEP {
        let s = shape(p, n);
        for cell in sweep_cells() {
            let (m, e) = (cell.m, cell.e);
            let mut counts = vec![
                ("hilbert ss", hilbert_count(Family::Ss, s, m, e, &l).map_err(err)?),
                ("hilbert pbw", hilbert_count(Family::Pbw, s, m, e, &l).map_err(err)?),
            ];
            for f in Family::BOTH {
                counts.push(("tableaux", enumerate_tableaux(f, s, m, e, &l).map_err(err)?.len() as u64));
                let polys: Vec<Polynomial> = component_products(s, f, m, e, cell.d, &l, Exec::Parallel)
                    .map_err(err)?
                    .into_iter()
                    .map(|pr| pr.poly)
                    .collect();
                counts.push(("rank", span_rank(&f.order(s), &polys) as u64));
            }
            ensure(counts.iter().all(|c| c.1 == counts[0].1), || format!("{s} m={m} e={e}: {counts:?}"))?;
            cells_checked += 1;
        }
    }
    Ok(format!("{cells_checked} cells"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("worked examples", 1, worked_examples),
        ("closed-form initial terms", 60, closed_forms),
        ("bijections and order isomorphisms", 60, bijections),
        ("lattice points of dilations", 120, lattice_points),
        ("sagbi components", 300, sagbi),
        ("basis components", 300, bases),
        ("psi cancellation and injectivity", 60, psi),
        ("weight realization", 1, weights),
        ("Hilbert count agreement", 300, hilbert),
    ];
    let mut failed = 0;
    for (ix, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let line = match (&outcome, over) {
            (Ok(detail), false) => format!("PASS  {}. {name}: {detail}", ix + 1),
            (Ok(detail), true) => format!("FAIL  {}. {name}: {detail}; over the {budget}s budget", ix + 1),
            (Err(why), _) => format!("FAIL  {}. {name}: {why}", ix + 1),
        };
        if outcome.is_err() || over {
            failed += 1;
        }
        println!("{line} ({:.2}s)", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
