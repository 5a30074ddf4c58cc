use serde_json::{json, Value};
use toricgrass::degen::{
    basis_verify, check_bijection, check_order_isomorphism, check_psi, hilbert_count, sagbi_verify, sweep,
};
use toricgrass::pluecker::{closed_initial, gen_family, generator, sign_table, Family};
use toricgrass::poset::{OrderIdeal, Poset};
use toricgrass::tableaux::enumerate_tableaux;

use crate::{CliError, Ctx, FamilyChoice, Format, GensArgs, HilbertArgs, Outcome, PosetArgs, PosetChoice, TableauxArgs, VerifyArgs};

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types always serialize")
}

pub fn ideal_json(j: &OrderIdeal) -> Value {
    json!({ "level": j.level(), "cells": value(j) })
}

pub fn poset(a: &PosetArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let shape = a.shape.shape()?;
    let (poset, name, kmax) = match a.kind {
        PosetChoice::Q => (Poset::finite(shape), "Q", 0),
        PosetChoice::Qtilde => (Poset::semi_infinite(shape), "Qtilde", a.kmax),
    };
    match a.format {
        Format::Dot if a.ideals => Err(CliError::Usage("--ideals needs --format json".into())),
        Format::Dot => Ok(Outcome::ok(poset.to_dot(kmax))),
        Format::Text => Err(CliError::Usage("poset supports --format json or dot".into())),
        Format::Json => {
            let cells = poset.window(kmax);
            let edges = poset.hasse_edges(kmax);
            let mut out = json!({
                "poset": name,
                "p": shape.p(),
                "n": shape.n(),
                "kmax": kmax,
                "cells": value(&cells),
                "edges": value(&edges),
                "cell_count": cells.len(),
                "edge_count": edges.len(),
            });
            if a.ideals {
                let ideals = poset.enumerate_ideals(kmax, &ctx.limits)?;
                out["ideal_count"] = json!(ideals.len());
                out["ideals"] = Value::Array(ideals.iter().map(ideal_json).collect());
            }
            Ok(Outcome::ok(to_json(&out)))
        }
    }
}

pub fn verify(a: &VerifyArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let shape = a.shape.shape()?;
    let d = a.d.unwrap_or(a.e_max);
    if d < a.e_max {
        return Err(CliError::Usage(format!("--d {d} is below --e-max {}", a.e_max)));
    }
    let families = a.family.families();
    let (limits, exec) = (&ctx.limits, ctx.exec);
    let mut ok = true;

    let mut signs = Vec::new();
    let mut sign_summary = Vec::new();
    for &f in &families {
        let table = sign_table(shape, f, a.kmax, limits, exec)?;
        let monomial_mismatches = table.iter().filter(|r| !r.monomial_matches).count();
        let parity_mismatches = table.iter().filter(|r| r.computed_sign != r.permutation_sign).count();
        let printed = table.iter().filter(|r| !r.printed_agrees).count();
        ok &= monomial_mismatches == 0 && parity_mismatches == 0;
        sign_summary.push(json!({
            "family": f,
            "generators": table.len(),
            "monomial_mismatches": monomial_mismatches,
            "sign_vs_permutation_parity_mismatches": parity_mismatches,
            "printed_sign_disagreements": printed,
        }));
        signs.extend(table.iter().map(value));
    }

    let mut structure = Vec::new();
    for &f in &families {
        let bij = check_bijection(f, shape, a.kmax, limits)?;
        let iso = check_order_isomorphism(f, shape, a.kmax, limits)?;
        ok &= bij.passed() && iso.passed();
        structure.push(json!({ "family": f, "bijection": value(&bij), "order_isomorphism": value(&iso) }));
    }
    let psi = if families.contains(&Family::Pbw) {
        let r = check_psi(shape, a.kmax, 2, limits)?;
        ok &= r.passed();
        value(&r)
    } else {
        Value::Null
    };

    let mut cells = Vec::new();
    let mut dims = std::collections::BTreeMap::new();
    for &f in &families {
        let sagbi = sweep(a.m_max, a.e_max, d, exec, |c| sagbi_verify(f, shape, c, limits, exec))?;
        let basis = sweep(a.m_max, a.e_max, d, exec, |c| basis_verify(f, shape, c, limits, exec))?;
        for (s, b) in sagbi.iter().zip(&basis) {
            ok &= s.passed() && b.passed();
            dims.insert((f, s.cell.m, s.cell.e), b.dim as u64);
            cells.push(json!({ "check": "sagbi", "report": value(s) }));
            cells.push(json!({ "check": "basis", "report": value(b) }));
        }
    }

    let mut hilbert = Vec::new();
    for m in 0..=a.m_max {
        for e in 0..=a.e_max {
            let mut counts = serde_json::Map::new();
            let mut all = Vec::new();
            for &f in &families {
                let h = hilbert_count(f, shape, m, e, limits)?;
                let t = enumerate_tableaux(f, shape, m, e, limits)?.len() as u64;
                let r = dims[&(f, m, e)];
                counts.insert(format!("hilbert_{f}"), json!(h));
                counts.insert(format!("tableaux_{f}"), json!(t));
                counts.insert(format!("rank_{f}"), json!(r));
                all.extend([h, t, r]);
            }
            let agree = all.iter().all(|&x| x == all[0]);
            ok &= agree;
            hilbert.push(json!({ "m": m, "e": e, "counts": counts, "agree": agree }));
        }
    }

    let out = json!({
        "p": shape.p(),
        "n": shape.n(),
        "families": value(&families),
        "kmax": a.kmax,
        "m_max": a.m_max,
        "e_max": a.e_max,
        "d": d,
        "status": if ok { "ok" } else { "fail" },
        "sign_summary": sign_summary,
        "sign_table": signs,
        "structure": structure,
        "psi": psi,
        "cells": cells,
        "hilbert": hilbert,
    });
    Ok(Outcome { output: to_json(&out), ok })
}

pub fn gens(a: &GensArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let shape = a.shape.shape()?;
    let mut by_family = serde_json::Map::new();
    for f in a.family.families() {
        let order = f.order(shape);
        let mut list = Vec::new();
        for idx in gen_family(shape, f, a.kmax, &ctx.limits)? {
            let mut entry = json!({ "index": value(&idx), "name": idx.to_string() });
            if a.initial {
                let (c, m) = order.initial_term(&generator(shape, &idx)?)?;
                let closed = closed_initial(shape, &idx);
                entry["initial"] = json!({
                    "coefficient": c.to_string(),
                    "monomial": value(&m),
                    "text": m.to_string(),
                });
                entry["closed_form"] = json!({
                    "monomial": value(&closed.monomial),
                    "permutation": closed.permutation,
                    "permutation_sign": closed.permutation_sign,
                    "printed_exponent": closed.printed_exponent,
                    "printed_sign": closed.printed_sign,
                });
            }
            list.push(entry);
        }
        by_family.insert(f.name().to_string(), Value::Array(list));
    }
    let out = json!({ "p": shape.p(), "n": shape.n(), "kmax": a.kmax, "generators": by_family });
    Ok(Outcome::ok(to_json(&out)))
}

pub fn tableaux(a: &TableauxArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let shape = a.shape.shape()?;
    if a.format == Format::Dot {
        return Err(CliError::Usage("tableaux supports --format json or text".into()));
    }
    let mut sections = Vec::new();
    let mut text = String::new();
    for f in a.kind.families() {
        let list = enumerate_tableaux(f, shape, a.m, a.e, &ctx.limits)?;
        let mut obj = json!({ "kind": f, "p": shape.p(), "n": shape.n(), "m": a.m, "e": a.e, "count": list.len() });
        if !a.count {
            obj["tableaux"] = value(&list);
        }
        sections.push(obj);
        text.push_str(&format!("# {f} tableaux, p={}, n={}, m={}, e={}: {}\n", shape.p(), shape.n(), a.m, a.e, list.len()));
        if !a.count {
            for t in &list {
                text.push_str(&format!("\nshift {:?}\n{}", t.shifts(), t.render()));
            }
        }
    }
    let output = match (a.format, a.kind) {
        (Format::Text, _) => text,
        (_, FamilyChoice::Both) => to_json(&Value::Array(sections)),
        _ => to_json(&sections.pop().unwrap()),
    };
    Ok(Outcome::ok(output))
}

pub fn hilbert(a: &HilbertArgs, ctx: &Ctx) -> Result<Outcome, CliError> {
    let shape = a.shape.shape()?;
    let mut counts = serde_json::Map::new();
    let mut values = Vec::new();
    for f in a.family.families() {
        let c = hilbert_count(f, shape, a.m, a.e, &ctx.limits)?;
        counts.insert(f.name().to_string(), json!(c));
        values.push(c);
    }
    let agree = values.iter().all(|&c| c == values[0]);
    let out = json!({
        "p": shape.p(),
        "n": shape.n(),
        "m": a.m,
        "e": a.e,
        "count": if agree { json!(values[0]) } else { Value::Null },
        "counts": counts,
    });
    Ok(Outcome { output: to_json(&out), ok: agree })
}
