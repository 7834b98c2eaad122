//! Closures generated by an M-chain, distributivity and supersolvability.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::labelling::{increasing_chain, EdgeLabelling};
use crate::order::{find_viable_chains, lower_expr, upper_expr};
use crate::poset::{Chain, Elem, Poset, Subposet};
use crate::report::{CheckReport, Witness};

/// Default cap on the number of chains `c` examined per candidate M-chain.
pub const CHAIN_CAP: usize = 200_000;

/// A closed element set and the subposet it induces.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// Sorted element indices of the parent poset.
    pub elements: Vec<Elem>,
    pub subposet: Subposet,
    /// Rounds of the fixed-point iteration, including the final idle one.
    pub steps: usize,
}

impl ClosureResult {
    fn from_set(p: &Poset, set: &FixedBitSet, steps: usize) -> Self {
        let elements: Vec<Elem> = set.ones().collect();
        let subposet = p.induced(&elements);
        ClosureResult {
            elements,
            subposet,
            steps,
        }
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elements.binary_search(&e).is_ok()
    }
}

fn seed(p: &Poset, chains: &[&Chain]) -> Result<FixedBitSet> {
    let mut set = FixedBitSet::with_capacity(p.len());
    for c in chains {
        for &e in c.nodes() {
            p.check_elem(e)?;
            set.insert(e);
        }
    }
    Ok(set)
}

fn comparable_in(p: &Poset, set: &FixedBitSet) -> Vec<(Elem, Elem)> {
    set.ones()
        .flat_map(|y| p.above(y).ones().filter(|&z| set.contains(z)).map(move |z| (y, z)))
        .collect()
}

/// Least set containing `m` and `c` that holds `(x ∨ y) ∧_y z` and
/// `(x ∧ z) ∨^z y` for every `x` in `m` and `y <= z` in the set.
pub fn r_closure(p: &Poset, m: &Chain, c: &Chain) -> Result<ClosureResult> {
    if !m.is_maximal(p) {
        return Err(Error::InvalidChain("the M-chain must be maximal".into()));
    }
    let mut set = seed(p, &[m, c])?;
    let mut steps = 0;
    loop {
        steps += 1;
        let mut added = Vec::new();
        for (y, z) in comparable_in(p, &set) {
            for &x in m.nodes() {
                for value in [lower_expr(p, x, y, z), upper_expr(p, x, y, z)] {
                    let e = value.map_err(|kind| {
                        Error::NotViable(format!(
                            "{} for x = `{}`, y = `{}`, z = `{}`",
                            kind.as_str(),
                            p.name(x),
                            p.name(y),
                            p.name(z)
                        ))
                    })?;
                    if !set.contains(e) {
                        added.push(e);
                    }
                }
            }
        }
        if added.is_empty() {
            return Ok(ClosureResult::from_set(p, &set, steps));
        }
        for e in added {
            set.insert(e);
        }
    }
}

/// Least set containing `m_chain` and `m` that holds the increasing chain of
/// every interval `[y, z]` between two of its elements.
pub fn q_closure(p: &Poset, lab: &EdgeLabelling, m_chain: &Chain, m: &Chain) -> Result<ClosureResult> {
    for c in [m_chain, m] {
        if !c.is_maximal(p) {
            return Err(Error::InvalidChain(format!("`{}` is not maximal", c.display(p))));
        }
    }
    let (bot, top) = p.bounds()?;
    if increasing_chain(p, lab, bot, top)?.as_ref() != Some(m_chain) {
        return Err(Error::PreconditionViolated(
            "the M-chain is not the increasing maximal chain of the labelling".into(),
        ));
    }
    let mut set = seed(p, &[m_chain, m])?;
    let mut steps = 0;
    loop {
        steps += 1;
        let mut added = Vec::new();
        for (y, z) in comparable_in(p, &set) {
            let chain = increasing_chain(p, lab, y, z)?.ok_or_else(|| {
                Error::NotElLabelled(format!("no unique increasing chain from `{}` to `{}`", p.name(y), p.name(z)))
            })?;
            added.extend(chain.nodes().iter().copied().filter(|&e| !set.contains(e)));
        }
        if added.is_empty() {
            return Ok(ClosureResult::from_set(p, &set, steps));
        }
        for e in added {
            set.insert(e);
        }
    }
}

/// The maximal chain through `c` whose labels increase between consecutive
/// elements of `c ∪ {0̂, 1̂}`.
pub fn increasing_extension(p: &Poset, lab: &EdgeLabelling, c: &Chain) -> Result<Chain> {
    let (bot, top) = p.bounds()?;
    let mut stops = vec![bot];
    stops.extend(c.nodes().iter().copied().filter(|&e| e != bot && e != top));
    stops.push(top);
    let mut nodes = vec![bot];
    for w in stops.windows(2) {
        if !p.lt(w[0], w[1]) {
            return Err(Error::InvalidChain(format!("`{}` is not a chain", c.display(p))));
        }
        let seg = increasing_chain(p, lab, w[0], w[1])?.ok_or_else(|| {
            Error::NotElLabelled(format!(
                "no unique increasing chain from `{}` to `{}`",
                p.name(w[0]),
                p.name(w[1])
            ))
        })?;
        nodes.extend_from_slice(&seg.nodes()[1..]);
    }
    Chain::unrefinable(p, nodes)
}

/// Every pair has a join and a meet.
pub fn is_lattice(p: &Poset) -> bool {
    p.elements()
        .all(|a| (a + 1..p.len()).all(|b| p.join(a, b).is_some() && p.meet(a, b).is_some()))
}

/// Lattice check followed by `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` on all triples.
pub fn is_distributive_lattice(p: &Poset) -> CheckReport {
    let n = p.len();
    for a in 0..n {
        for b in a + 1..n {
            if p.join(a, b).is_none() {
                return CheckReport::fail(Witness::Elements(vec![a, b]), "a pair has no join");
            }
            if p.meet(a, b).is_none() {
                return CheckReport::fail(Witness::Elements(vec![a, b]), "a pair has no meet");
            }
        }
    }
    let bad = (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in y + 1..n {
                let lhs = p.meet(x, p.join(y, z)?)?;
                let rhs = p.join(p.meet(x, y)?, p.meet(x, z)?)?;
                if lhs != rhs {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    });
    match bad {
        Some(t) => CheckReport::fail(Witness::Elements(t), "x ∧ (y ∨ z) differs from (x ∧ y) ∨ (x ∧ z)"),
        None => CheckReport::pass("distributive lattice"),
    }
}

/// Which chains `c` are tried against each candidate M-chain.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChainScope {
    /// Maximal chains from `0̂` to `1̂`.
    #[default]
    Maximal,
    /// Every chain, including the empty one.
    All,
}

/// All chains of `p` (totally ordered subsets), empty chain first.
pub fn all_chains(p: &Poset, cap: usize) -> Result<Vec<Chain>> {
    let mut out = vec![Chain::from_vec(Vec::new())];
    let mut path = Vec::new();
    fn grow(p: &Poset, path: &mut Vec<Elem>, out: &mut Vec<Chain>, cap: usize) -> Result<()> {
        let last = path.last().copied();
        for e in p.elements() {
            if last.is_none_or(|l| p.lt(l, e)) {
                path.push(e);
                out.push(Chain::from_vec(path.clone()));
                if out.len() > cap {
                    return Err(Error::SizeLimit(format!("more than {cap} chains")));
                }
                grow(p, path, out, cap)?;
                path.pop();
            }
        }
        Ok(())
    }
    grow(p, &mut path, &mut out, cap)?;
    Ok(out)
}

fn candidate_chains(p: &Poset, scope: ChainScope, cap: usize) -> Result<Vec<Chain>> {
    match scope {
        ChainScope::Maximal => {
            let (bot, top) = p.bounds()?;
            if p.count_chains(bot, top)? > cap as u64 {
                return Err(Error::SizeLimit(format!("more than {cap} maximal chains")));
            }
            p.maximal_chains(bot, top)
        }
        ChainScope::All => all_chains(p, cap),
    }
}

/// Why `m` fails as an M-chain, if it does.
fn reject(p: &Poset, m: &Chain, chains: &[Chain]) -> Result<Option<Witness>> {
    let found = chains.par_iter().map(|c| -> Result<Option<Witness>> {
        let closure = r_closure(p, m, c)?;
        let report = is_distributive_lattice(&closure.subposet.poset);
        Ok(match report.witness {
            None => None,
            Some(Witness::Elements(es)) => Some(Witness::Rejected {
                chain: c.clone(),
                reason: Box::new(Witness::Elements(es.into_iter().map(|e| closure.subposet.to_parent(e)).collect())),
            }),
            Some(other) => Some(other),
        })
    });
    found.find_map_first(|r| r.transpose()).transpose()
}

/// Searches viable maximal chains in index order for one whose closures
/// `R(c)` are all distributive lattices. On success the witness is that chain.
pub fn is_supersolvable_with(p: &Poset, scope: ChainScope, cap: usize) -> Result<CheckReport> {
    p.bounds()?;
    let candidates = find_viable_chains(p)?;
    if candidates.is_empty() {
        return Ok(CheckReport::fail(Witness::Elements(Vec::new()), "no viable maximal chain"));
    }
    let chains = candidate_chains(p, scope, cap)?;
    let mut first_rejection = None;
    for m in &candidates {
        match reject(p, m, &chains)? {
            None => {
                return Ok(CheckReport::pass(format!("supersolvable with M-chain {}", m.display(p)))
                    .with_witness(Witness::Chain(m.clone())))
            }
            Some(w) if first_rejection.is_none() => {
                first_rejection = Some(Witness::Rejected {
                    chain: m.clone(),
                    reason: Box::new(w),
                })
            }
            Some(_) => {}
        }
    }
    Ok(CheckReport::fail(
        first_rejection.expect("at least one candidate"),
        format!("none of the {} viable maximal chains works", candidates.len()),
    ))
}

pub fn is_supersolvable(p: &Poset) -> Result<CheckReport> {
    is_supersolvable_with(p, ChainScope::Maximal, CHAIN_CAP)
}
