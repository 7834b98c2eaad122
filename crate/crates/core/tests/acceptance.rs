//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::time::Instant;

use posetlab::document::PosetDocument;
use posetlab::dot::export_dot;
use posetlab::enumerate::{canonical_form, enumerate_bounded_posets, enumerate_posets};
use posetlab::families::{
    check_gamma_definitions, gamma_via_pi, generate, ideal_lattice, natural_extension, noncrossing_lattice,
    nonstraddling_lattice, ns_join_closure, partition_lattice, tamari_lattice, Family, PartitionLattice,
};
use posetlab::labelling::{
    basic_replacement_reduce, check_el_labelling, check_interpolating, check_sn_el_labelling, edge_indices,
    increasing_chain, induce_labelling, search_sn_el_labelling, EdgeLabelling, LabelSet,
};
use posetlab::order::{check_chain_left_modular, find_left_modular_chains};
use posetlab::poset::{Chain, Poset, Reduction};
use posetlab::supersolvable::{increasing_extension, is_distributive_lattice, is_supersolvable, q_closure, r_closure};
use posetlab::verify::has_sn_el_labelling;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn pentagon() -> Poset {
    Poset::build(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        Reduction::Strict,
    )
    .unwrap()
}

fn family_sanity() -> Check {
    let pi3 = e(partition_lattice(3))?;
    ensure(pi3.poset.len() == 5, || format!("|Pi_3| = {}", pi3.poset.len()))?;
    ensure(e(pi3.poset.graded_rank())? == Some(2), || "Pi_3 rank".into())?;
    let sizes = [
        ("Pi_4", e(partition_lattice(4))?.poset.len(), 15),
        ("NC_4", e(noncrossing_lattice(4))?.poset.len(), 14),
        ("T_4", e(tamari_lattice(4))?.len(), 14),
        ("NS_3", e(nonstraddling_lattice(3))?.poset.len(), 5),
        ("NS_4", e(nonstraddling_lattice(4))?.poset.len(), 14),
    ];
    for (name, got, want) in sizes {
        ensure(got == want, || format!("|{name}| = {got}, expected {want}"))?;
    }
    let ns6 = e(nonstraddling_lattice(6))?;
    ensure(e(ns6.poset.graded_rank())?.is_none(), || "NS_6 is graded".into())?;
    let t3 = e(tamari_lattice(3))?;
    ensure(canonical_form(&t3) == canonical_form(&pentagon()), || "T_3 is not the pentagon".into())?;
    Ok(format!("9 checks; |NS_6| = {}", ns6.poset.len()))
}

/// Least `δ`-label of `[y, z]` in `Π_n`; exactly one bottom edge of
/// `[y, z]` in `NS_n` carries it, and every maximal chain of `[y, z]` does.
fn least_label_holds(ns: &PartitionLattice, pi: &PartitionLattice) -> Result<usize, String> {
    let p = &ns.poset;
    let mut count = 0;
    for y in p.elements() {
        for z in p.above(y).ones().filter(|&z| z != y) {
            let least = e(gamma_via_pi(pi, ns.partition(y), ns.partition(z)))?;
            let hits = p
                .upper_covers(y)
                .iter()
                .filter(|&&w| p.leq(w, z) && ns.labelling.label(p, y, w) == Some(least))
                .count();
            ensure(hits == 1, || format!("[{}, {}]: {hits} bottom edges with {least}", p.name(y), p.name(z)))?;
            for ch in e(p.maximal_chains(y, z))? {
                ensure(ns.labelling.word(p, &ch).unwrap().contains(&least), || {
                    format!("{} misses {least}", ch.display(p))
                })?;
            }
            count += 1;
        }
    }
    Ok(count)
}

fn gamma_suite() -> Check {
    let mut intervals = 0;
    for n in [3, 4, 5, 6] {
        let ns = e(nonstraddling_lattice(n))?;
        let pi = e(partition_lattice(n))?;
        let p = &ns.poset;
        let el = e(check_el_labelling(p, &ns.labelling))?;
        ensure(el.verdict, || format!("NS_{n} EL: {}", el.note))?;
        let int = e(check_interpolating(p, &ns.labelling))?;
        ensure(int.verdict, || format!("NS_{n} interpolating: {}", int.note))?;
        let defs = e(check_gamma_definitions(&ns, &pi))?;
        ensure(defs.verdict, || format!("NS_{n}: {}", defs.note))?;
        intervals += least_label_holds(&ns, &pi)?;
        let (bot, top) = e(p.bounds())?;
        let inc = e(increasing_chain(p, &ns.labelling, bot, top))?;
        ensure(inc.as_ref() == Some(&ns.m_chain()), || format!("NS_{n}: increasing chain {inc:?}"))?;
    }
    Ok(format!("n = 3..6, {intervals} intervals"))
}

fn ns_left_modular() -> Check {
    for n in 1..=6 {
        let ns = e(nonstraddling_lattice(n))?;
        let r = e(check_chain_left_modular(&ns.poset, &ns.m_chain()))?;
        ensure(r.verdict, || format!("NS_{n}: {}", r.note))?;
    }
    Ok("n = 1..6".into())
}

struct Subject {
    name: String,
    poset: Poset,
    labelling: Option<EdgeLabelling>,
}

fn round_trip_universe() -> Result<Vec<Subject>, String> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for fam in [e(partition_lattice(n))?, e(noncrossing_lattice(n))?] {
            out.push(Subject {
                name: format!("{}_{n}", fam.kind),
                poset: fam.poset,
                labelling: Some(fam.labelling),
            });
        }
    }
    for n in 1..=5 {
        let fam = e(nonstraddling_lattice(n))?;
        out.push(Subject {
            name: format!("NS_{n}"),
            poset: fam.poset,
            labelling: Some(fam.labelling),
        });
    }
    for n in [3, 4] {
        out.push(Subject {
            name: format!("T_{n}"),
            poset: e(tamari_lattice(n))?,
            labelling: None,
        });
    }
    for k in 1..=4 {
        for (i, q) in e(enumerate_posets(k))?.into_iter().enumerate() {
            let j = e(ideal_lattice(&q, &natural_extension(&q)))?;
            out.push(Subject {
                name: format!("J(Q{k}.{i})"),
                poset: j.poset,
                labelling: Some(j.labelling),
            });
        }
    }
    Ok(out)
}

fn round_trips() -> Check {
    let universe = round_trip_universe()?;
    let mut chains = 0;
    for s in &universe {
        let p = &s.poset;
        let (bot, top) = e(p.bounds())?;
        let lm = e(find_left_modular_chains(p))?;
        ensure(!lm.is_empty(), || format!("{}: no left modular chain", s.name))?;
        let mut labellings: Vec<EdgeLabelling> = s.labelling.iter().cloned().collect();
        for c in &lm {
            let lab = e(induce_labelling(p, c, &LabelSet::standard(c.length())))?;
            let r = e(check_interpolating(p, &lab))?;
            ensure(r.verdict, || format!("{}: induced from {} not interpolating", s.name, c.display(p)))?;
            let inc = e(increasing_chain(p, &lab, bot, top))?;
            ensure(inc.as_ref() == Some(c), || format!("{}: increasing chain is not {}", s.name, c.display(p)))?;
            labellings.push(lab);
            chains += 1;
        }
        for lab in &labellings {
            let inc = e(increasing_chain(p, lab, bot, top))?.ok_or(format!("{}: no increasing chain", s.name))?;
            let r = e(check_chain_left_modular(p, &inc))?;
            ensure(r.verdict, || format!("{}: {}", s.name, r.note))?;
        }
    }
    Ok(format!("{} posets, {chains} left modular chains", universe.len()))
}

fn three_way() -> Check {
    let posets = e(enumerate_bounded_posets(6, true))?;
    let mut yes = 0;
    for (i, p) in posets.iter().enumerate() {
        let sn = e(has_sn_el_labelling(p))?;
        let searched = e(search_sn_el_labelling(p, 50_000_000))?;
        if let Some(lab) = &searched {
            ensure(e(check_sn_el_labelling(p, lab))?.verdict, || format!("#{i}: search result fails"))?;
        }
        let lm = !e(find_left_modular_chains(p))?.is_empty();
        let ss = e(is_supersolvable(p))?.verdict;
        ensure(sn == lm && lm == ss && searched.is_some() == sn, || {
            format!("#{i} {:?}: sn {sn}, search {}, lm {lm}, ss {ss}", p.names(), searched.is_some())
        })?;
        yes += sn as usize;
    }
    Ok(format!("{} posets, {yes} with all three true", posets.len()))
}

fn reinduction() -> Check {
    let mut cases: Vec<(String, Poset, EdgeLabelling)> = Vec::new();
    for n in 1..=5 {
        let ns = e(nonstraddling_lattice(n))?;
        cases.push((format!("NS_{n}"), ns.poset, ns.labelling));
    }
    let t4 = e(tamari_lattice(4))?;
    for c in e(find_left_modular_chains(&t4))? {
        let ls = e(LabelSet::new((1..=c.length() as i64).map(|i| 10 * i).collect()))?;
        let lab = e(induce_labelling(&t4, &c, &ls))?;
        cases.push(("T_4".into(), t4.clone(), lab));
    }
    for (name, p, lab) in &cases {
        let (bot, top) = e(p.bounds())?;
        let m = e(increasing_chain(p, lab, bot, top))?.ok_or(format!("{name}: no increasing chain"))?;
        let ls = e(LabelSet::new(lab.word(p, &m).unwrap()))?;
        let again = e(induce_labelling(p, &m, &ls))?;
        ensure(&again == lab, || format!("{name}: labelling changes"))?;
    }
    Ok(format!("{} labellings", cases.len()))
}

fn closure_identity() -> Check {
    let mut count = 0;
    for fam in [e(partition_lattice(4))?, e(noncrossing_lattice(4))?] {
        let p = &fam.poset;
        let m_chain = fam.m_chain();
        let (bot, top) = e(p.bounds())?;
        for c in e(p.maximal_chains(bot, top))? {
            let m = e(increasing_extension(p, &fam.labelling, &c))?;
            let r = e(r_closure(p, &m_chain, &c))?;
            let q = e(q_closure(p, &fam.labelling, &m_chain, &m))?;
            ensure(r.elements == q.elements, || format!("{}: R != Q for {}", fam.kind, c.display(p)))?;
            ensure(is_distributive_lattice(&r.subposet.poset).verdict, || "R not distributive".into())?;
            ensure(is_distributive_lattice(&q.subposet.poset).verdict, || "Q not distributive".into())?;
            count += 1;
        }
    }
    Ok(format!("{count} maximal chains over Pi_4 and NC_4"))
}

fn oracles() -> Check {
    let mut pairs = 0;
    for n in 1..=5 {
        let ns = e(nonstraddling_lattice(n))?;
        let parts = ns.partitions();
        for y in parts {
            for z in parts {
                let uppers: Vec<_> = parts.iter().filter(|u| y.refines(u) && z.refines(u)).collect();
                let least = uppers.iter().find(|u| uppers.iter().all(|v| u.refines(v)));
                let got = e(ns_join_closure(y, z))?;
                ensure(least == Some(&&got), || format!("{y} v {z}: {got} vs {least:?}"))?;
                pairs += 1;
            }
        }
    }
    let mut reductions = 0;
    for fam in [e(partition_lattice(4))?, e(nonstraddling_lattice(4))?] {
        let p = &fam.poset;
        for y in p.elements() {
            for z in p.above(y).ones() {
                let inc = e(increasing_chain(p, &fam.labelling, y, z))?;
                for ch in e(p.maximal_chains(y, z))? {
                    let red = e(basic_replacement_reduce(p, &fam.labelling, &ch))?;
                    ensure(Some(&red.chain) == inc.as_ref(), || format!("reduction of {}", ch.display(p)))?;
                    reductions += 1;
                }
            }
        }
    }
    let mut edges = 0;
    for s in round_trip_universe()? {
        for c in e(find_left_modular_chains(&s.poset))? {
            for (y, z) in s.poset.cover_pairs() {
                let ix = e(edge_indices(&s.poset, &c, y, z))?;
                ensure(ix.defining == ix.join_form && ix.join_form == ix.meet_form, || {
                    format!("{}: {ix:?}", s.name)
                })?;
                edges += 1;
            }
        }
    }
    Ok(format!("{pairs} join pairs, {reductions} reductions, {edges} edge indices"))
}

fn random_document(rng: &mut StdRng) -> (Poset, Option<EdgeLabelling>, Vec<(String, Chain)>) {
    let k = rng.gen_range(1..=9);
    let names: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            if rng.gen_bool(0.3) {
                pairs.push((a, b));
            }
        }
    }
    let p = Poset::from_pairs(names, &pairs, Reduction::Auto).unwrap();
    let lab = rng
        .gen_bool(0.7)
        .then(|| EdgeLabelling::from_fn(&p, |_, _| rng.gen_range(-3..10)));
    let mut chains = Vec::new();
    if rng.gen_bool(0.5) {
        let start = rng.gen_range(0..k);
        let mut nodes = vec![start];
        while let Some(&next) = p.upper_covers(*nodes.last().unwrap()).first() {
            nodes.push(next);
        }
        chains.push(("walk".to_string(), Chain::new(&p, nodes).unwrap()));
    }
    (p, lab, chains)
}

fn plumbing() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let (p, lab, chains) = random_document(&mut rng);
        let doc = PosetDocument::from_poset(&format!("random-{i}"), &p, lab.as_ref(), &chains);
        let text = doc.serialize();
        let parsed = e(PosetDocument::parse(&text))?;
        ensure(parsed == doc, || format!("document {i} changes on parse"))?;
        ensure(parsed.serialize() == text, || format!("document {i} changes on reserialize"))?;
        let loaded = e(parsed.load())?;
        ensure(loaded.poset == p && loaded.labelling == lab, || format!("document {i} loads differently"))?;
    }
    let mut dots = 0;
    for family in ["pi", "nc", "ns", "tamari", "chain", "boolean"] {
        let f: Family = family.parse().unwrap();
        for n in 1..=4 {
            let a = e(generate(f, n))?;
            let b = e(generate(f, n))?;
            ensure(export_dot(&a.poset, Some(&a.labelling)) == export_dot(&b.poset, Some(&b.labelling)), || {
                format!("{family} {n}: DOT differs")
            })?;
            dots += 1;
        }
    }
    Ok(format!("200 documents, {dots} DOT exports"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("family sanity", family_sanity),
        ("gamma suite on NS_n", gamma_suite),
        ("NS_n chain is left modular", ns_left_modular),
        ("induced labelling round trips", round_trips),
        ("S_n EL / left modular / supersolvable agree", three_way),
        ("re-induction reproduces labelling", reinduction),
        ("closure identity on Pi_4 and NC_4", closure_identity),
        ("oracle equivalence", oracles),
        ("plumbing", plumbing),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
