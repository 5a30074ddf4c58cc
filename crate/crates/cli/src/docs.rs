//! Golden files for the worked examples, written by `--seed-docs`.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use toricgrass::degen::{gen_leq, hibi_correspondence, phi, psi_image};
use toricgrass::pluecker::{closed_initial, generator, Family, GeneratorIndex};
use toricgrass::polytope::{HibiMonomial, LatticePoint};
use toricgrass::poset::{Cell, Poset};
use toricgrass::tableaux::SemiInfiniteTableau;
use toricgrass::Shape;

use crate::commands::{ideal_json, to_json};
use crate::{CliError, Ctx};

fn shape(p: u32, n: u32) -> Result<Shape, CliError> {
    Ok(Shape::new(p, n)?)
}

fn idx(s: Shape, f: Family, t: &[u32], k: u32) -> Result<GeneratorIndex, CliError> {
    Ok(GeneratorIndex::new(s, f, t.to_vec(), k)?)
}

fn ideal_example(poset: &Poset, g: &GeneratorIndex) -> Result<Value, CliError> {
    let j = phi(poset, g)?;
    let mut v = ideal_json(&j);
    v["generator"] = json!(g.to_string());
    v["maximal"] = serde_json::to_value(poset.max_elements(&j)).expect("cells serialize");
    Ok(v)
}

fn initial_example(s: Shape, g: &GeneratorIndex, ctx: &Ctx) -> Result<Value, CliError> {
    let (c, m) = g.family().order(s).initial_term(&generator(s, g)?)?;
    let closed = closed_initial(s, g);
    let rec = hibi_correspondence(s, g, &ctx.limits)?;
    Ok(json!({
        "generator": g.to_string(),
        "initial_coefficient": c.to_string(),
        "initial_monomial": m.to_string(),
        "closed_monomial": closed.monomial.to_string(),
        "hibi": serde_json::to_value(&rec.hibi).expect("hibi monomials serialize"),
        "hibi_image": rec.translated.as_ref().map(|m| m.to_string()),
        "image_matches": rec.matches,
    }))
}

fn tableau_files(name: &str, t: &SemiInfiniteTableau, s: Shape, f: Family) -> Result<Vec<(String, String)>, CliError> {
    let chain: Vec<String> = t.to_chain(f, s)?.iter().map(|g| g.to_string()).collect();
    let json = json!({
        "tableau": serde_json::to_value(t).expect("tableaux serialize"),
        "valid": t.is_valid(f, s)?,
        "chain": chain,
    });
    Ok(vec![(format!("{name}.txt"), t.render()), (format!("{name}.json"), to_json(&json))])
}

/// Every golden file as (file name, contents), in a fixed order.
pub fn golden_files(ctx: &Ctx) -> Result<Vec<(String, String)>, CliError> {
    let mut files = Vec::new();
    let s37 = shape(3, 7)?;
    let s49 = shape(4, 9)?;
    let q = Poset::finite(s37);
    let qt = Poset::semi_infinite(s37);

    files.push(("q_3_7.dot".to_string(), q.to_dot(0)));
    files.push(("qtilde_3_7_k1.dot".to_string(), qt.to_dot(1)));

    let ideals = json!({
        "p": 3,
        "n": 7,
        "finite": [
            ideal_example(&q, &idx(s37, Family::Ss, &[2, 3, 6], 0)?)?,
            ideal_example(&q, &idx(s37, Family::Pbw, &[6, 2, 4], 0)?)?,
        ],
        "semi_infinite": [
            ideal_example(&qt, &idx(s37, Family::Ss, &[2, 3, 6], 2)?)?,
            ideal_example(&qt, &idx(s37, Family::Pbw, &[1, 4, 6], 2)?)?,
        ],
    });
    files.push(("ideals_3_7.json".to_string(), to_json(&ideals)));

    let a = idx(s49, Family::Pbw, &[1, 2, 6, 5], 0)?;
    let b = idx(s49, Family::Pbw, &[3, 8, 7, 6], 2)?;
    let c = idx(s49, Family::Pbw, &[5, 1, 7, 9], 4)?;
    let x = idx(s49, Family::Pbw, &[2, 3, 4, 5], 1)?;
    let membership: Vec<Value> = [(vec![1, 2, 6, 5], 0), (vec![3, 8, 7, 6], 2), (vec![5, 1, 7, 9], 4), (vec![2, 3, 4, 5], 1), (vec![3, 8, 7, 6], 0)]
        .into_iter()
        .map(|(t, k)| {
            let ok = GeneratorIndex::new(s49, Family::Pbw, t.clone(), k).is_ok();
            json!({ "tuple": t, "shift": k, "member": ok })
        })
        .collect();
    let mut comparisons = Vec::new();
    for (u, v) in [(&a, &b), (&b, &c), (&a, &x)] {
        comparisons.push(json!({
            "left": u.to_string(),
            "right": v.to_string(),
            "left_leq_right": gen_leq(s49, u, v)?,
            "right_leq_left": gen_leq(s49, v, u)?,
        }));
    }
    let columns = json!({ "p": 4, "n": 9, "membership": membership, "comparisons": comparisons });
    files.push(("pbw_columns_4_9.json".to_string(), to_json(&columns)));

    let ss = SemiInfiniteTableau::from_top_down(3, vec![0, 1, 3], &[vec![1, 3, 5], vec![1, 2, 3], vec![2, 5, 7]])?;
    files.extend(tableau_files("tableau_ss_3_7", &ss, s37, Family::Ss)?);
    let pbw = SemiInfiniteTableau::from_chain(s49, &[a, b, c])?;
    files.extend(tableau_files("tableau_pbw_4_9", &pbw, s49, Family::Pbw)?);

    let initial = json!({
        "p": 3,
        "n": 7,
        "examples": [
            initial_example(s37, &idx(s37, Family::Pbw, &[1, 4, 6], 2)?, ctx)?,
            initial_example(s37, &idx(s37, Family::Ss, &[2, 3, 6], 2)?, ctx)?,
            initial_example(s37, &idx(s37, Family::Pbw, &[6, 2, 4], 0)?, ctx)?,
        ],
    });
    files.push(("initial_terms_3_7.json".to_string(), to_json(&initial)));

    let mut psi = Vec::new();
    let s_gen = HibiMonomial { s_degree: 1, y: LatticePoint::zero() };
    psi.push(json!({ "input": "s", "image": psi_image(s37, &s_gen)?.to_string() }));
    for (i, j) in [(1, 4), (3, 4), (4, 4), (5, 6), (3, 8)] {
        let cell = Cell::new(i, j);
        let g = HibiMonomial { s_degree: 0, y: LatticePoint::indicator(&[cell]) };
        psi.push(json!({ "input": format!("y_{{{i},{j}}}"), "image": psi_image(s37, &g)?.to_string() }));
    }
    files.push(("psi_3_7.json".to_string(), to_json(&json!({ "p": 3, "n": 7, "images": psi }))));
    Ok(files)
}

pub fn seed(dir: &Path, ctx: &Ctx) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, contents) in golden_files(ctx)? {
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}
