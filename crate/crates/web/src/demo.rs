use posetlab::error::{Error, Result};
use posetlab::families::{generate, Family, Generated};
use posetlab::labelling::{check_el_labelling, check_interpolating, check_sn_el_labelling};
use posetlab::order::{find_left_modular_chains, left_modular_elements};
use posetlab::report::{CheckReport, Witness};
use posetlab::supersolvable::{is_distributive_lattice, is_supersolvable};
use serde_json::{json, Value};

/// Size cap for the browser; larger members make unreadable pictures.
pub const DEMO_CAP: usize = 6;

pub const PROPERTIES: [&str; 6] = ["el", "interpolating", "sn-el", "left-modular", "distributive", "supersolvable"];

fn member(family: &str, n: usize) -> Result<Generated> {
    if n > DEMO_CAP {
        return Err(Error::SizeLimit(format!("the demo stops at n = {DEMO_CAP}")));
    }
    generate(family.parse::<Family>()?, n)
}

/// Nodes get `x` in `[0, 1]` and `y` = height. Rows are ordered by the mean
/// position of lower covers, one sweep upward.
pub fn hasse(family: &str, n: usize) -> Result<String> {
    let g = member(family, n)?;
    let p = &g.poset;
    let heights = p.heights();
    let rows = heights.iter().copied().max().unwrap_or(0) + 1;
    let mut x = vec![0.5f64; p.len()];
    for h in 0..rows {
        let mut row: Vec<usize> = p.elements().filter(|&e| heights[e] == h).collect();
        let key = |e: usize| {
            let below = p.lower_covers(e);
            if below.is_empty() {
                e as f64
            } else {
                below.iter().map(|&b| x[b]).sum::<f64>() / below.len() as f64
            }
        };
        let keys: Vec<f64> = row.iter().map(|&e| key(e)).collect();
        let mut order: Vec<usize> = (0..row.len()).collect();
        order.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]).then(row[a].cmp(&row[b])));
        row = order.into_iter().map(|i| row[i]).collect();
        for (i, &e) in row.iter().enumerate() {
            x[e] = (i as f64 + 1.0) / (row.len() as f64 + 1.0);
        }
    }
    let lm = left_modular_elements(p)?;
    let nodes: Vec<Value> = p
        .elements()
        .map(|e| json!({"name": p.name(e), "x": x[e], "y": heights[e], "leftModular": lm[e]}))
        .collect();
    let edges: Vec<Value> = g
        .labelling
        .edges(p)
        .map(|(a, b, l)| json!({"from": a, "to": b, "label": l}))
        .collect();
    Ok(json!({
        "name": g.name,
        "nodes": nodes,
        "edges": edges,
        "rows": rows,
        "mChain": g.m_chain.nodes(),
    })
    .to_string())
}

pub fn check(family: &str, n: usize, property: &str) -> Result<String> {
    let g = member(family, n)?;
    let p = &g.poset;
    let r = match property {
        "el" => check_el_labelling(p, &g.labelling)?,
        "interpolating" => check_interpolating(p, &g.labelling)?,
        "sn-el" => {
            // Partition labels start at 2.
            let shift = 1 - g.labelling.edges(p).map(|(_, _, l)| l).min().unwrap_or(1);
            match check_sn_el_labelling(p, &g.labelling.shifted(shift)) {
                Err(Error::NotGraded) => CheckReport::fail(Witness::Elements(Vec::new()), "not graded"),
                other => other?,
            }
        }
        "left-modular" => {
            let chains = find_left_modular_chains(p)?;
            match chains.first() {
                Some(c) => CheckReport::pass(format!("{} left modular maximal chains", chains.len()))
                    .with_witness(Witness::Chain(c.clone())),
                None => CheckReport::fail(Witness::Elements(Vec::new()), "no left modular maximal chain"),
            }
        }
        "distributive" => is_distributive_lattice(p),
        "supersolvable" => is_supersolvable(p)?,
        other => {
            return Err(Error::PreconditionViolated(format!(
                "unknown property `{other}`; expected one of {}",
                PROPERTIES.join(", ")
            )))
        }
    };
    let mut v = r.to_json(p);
    v["chain"] = json!(r.witness.as_ref().and_then(|w| w.primary_chain()).map(|c| c.nodes().to_vec()));
    Ok(v.to_string())
}

pub fn left_modular_chains(family: &str, n: usize) -> Result<String> {
    let g = member(family, n)?;
    let chains: Vec<Vec<usize>> = find_left_modular_chains(&g.poset)?
        .into_iter()
        .map(|c| c.into_nodes())
        .collect();
    Ok(json!(chains).to_string())
}
