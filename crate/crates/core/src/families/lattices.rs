//! The partition lattice `Π_n` and its non-crossing and non-straddling
//! subposets, with their standard edge-labellings.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::families::partition::SetPartition;
use crate::labelling::{EdgeLabelling, LabelSet};
use crate::poset::{Chain, Elem, Poset};
use crate::report::{CheckReport, Witness};

/// Largest `n` accepted by the partition-family generators.
pub const PARTITION_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    All,
    NonCrossing,
    NonStraddling,
}

impl PartitionKind {
    fn admits(self, x: &SetPartition) -> bool {
        match self {
            PartitionKind::All => true,
            PartitionKind::NonCrossing => !x.is_crossing(),
            PartitionKind::NonStraddling => !x.is_straddling(),
        }
    }
}

impl fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionKind::All => "Pi",
            PartitionKind::NonCrossing => "NC",
            PartitionKind::NonStraddling => "NS",
        })
    }
}

/// A family of set partitions ordered by refinement, with its labelling.
#[derive(Clone, Debug)]
pub struct PartitionLattice {
    pub kind: PartitionKind,
    pub n: usize,
    pub poset: Poset,
    pub labelling: EdgeLabelling,
    parts: Vec<SetPartition>,
    index: HashMap<SetPartition, Elem>,
}

impl PartitionLattice {
    pub fn partition(&self, e: Elem) -> &SetPartition {
        &self.parts[e]
    }

    pub fn partitions(&self) -> &[SetPartition] {
        &self.parts
    }

    pub fn elem(&self, x: &SetPartition) -> Option<Elem> {
        self.index.get(x).copied()
    }

    /// `0̂ < [2] < [3] < ... < [n]`, each `[i]` the only non-singleton block.
    pub fn m_chain(&self) -> Chain {
        let nodes = (1..=self.n.max(1))
            .map(|i| self.index[&SetPartition::initial_segment(self.n, i)])
            .collect();
        Chain::new(&self.poset, nodes).expect("initial segments form a chain")
    }

    /// `{2, ..., n}`.
    pub fn label_set(&self) -> LabelSet {
        LabelSet::starting_at(2, self.n.saturating_sub(1))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be at least 1".into()));
    }
    if n > PARTITION_CAP {
        return Err(Error::SizeLimit(format!("n = {n} exceeds the cap {PARTITION_CAP}")));
    }
    Ok(())
}

fn build(kind: PartitionKind, n: usize) -> Result<(Poset, Vec<SetPartition>, HashMap<SetPartition, Elem>)> {
    check_size(n)?;
    let mut parts: Vec<SetPartition> = SetPartition::all(n).into_iter().filter(|x| kind.admits(x)).collect();
    parts.sort_by(|a, b| b.block_count().cmp(&a.block_count()).then_with(|| a.cmp(b)));
    let names = parts.iter().map(|x| x.to_string()).collect();
    // Covers come from reducing the restricted refinement order; they are
    // not lifted from Π_n.
    let poset = Poset::from_order(names, |a, b| parts[a].refines(&parts[b]))?;
    let index = parts.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    Ok((poset, parts, index))
}

/// The block minima of `y` that stop being block minima in `z`.
fn lost_minima(y: &SetPartition, z: &SetPartition) -> Vec<usize> {
    let kept = z.block_minima();
    y.block_minima().into_iter().filter(|m| !kept.contains(m)).collect()
}

/// `δ(y, z) = max{min B, min B'}` when `z` merges exactly two blocks of `y`.
pub fn delta(y: &SetPartition, z: &SetPartition) -> Result<i64> {
    if !y.refines(z) || y.block_count() != z.block_count() + 1 {
        return Err(Error::PreconditionViolated(format!("`{z}` does not merge two blocks of `{y}`")));
    }
    let owner = z.owners();
    let merged: Vec<usize> = y
        .block_minima()
        .into_iter()
        .filter(|&m| {
            let k = owner[m];
            y.block_minima().iter().filter(|&&o| owner[o] == k).count() == 2
        })
        .collect();
    Ok(*merged.iter().max().expect("two merged blocks") as i64)
}

/// Second smallest minimum among the blocks of `y` merged into one block of `z`.
pub fn gamma_second_smallest(y: &SetPartition, z: &SetPartition) -> Result<i64> {
    if !y.refines(z) || y == z {
        return Err(Error::PreconditionViolated(format!("`{y}` is not strictly below `{z}`")));
    }
    let owner = z.owners();
    let merged_blocks: Vec<usize> = {
        let mut ks: Vec<usize> = y.blocks().iter().map(|b| owner[b[0]]).collect();
        ks.sort_unstable();
        let mut multi = Vec::new();
        for w in ks.chunk_by(|a, b| a == b) {
            if w.len() > 1 {
                multi.push(w[0]);
            }
        }
        multi
    };
    let [target] = merged_blocks.as_slice() else {
        return Err(Error::PreconditionViolated(format!(
            "`{z}` does not merge blocks of `{y}` into a single block"
        )));
    };
    let mut minima: Vec<usize> = y.block_minima().into_iter().filter(|&m| owner[m] == *target).collect();
    minima.sort_unstable();
    Ok(minima[1] as i64)
}

/// Smallest block minimum of `y` that is not a block minimum of `z`.
pub fn gamma_lost_minimum(y: &SetPartition, z: &SetPartition) -> Result<i64> {
    lost_minima(y, z)
        .into_iter()
        .min()
        .map(|m| m as i64)
        .ok_or_else(|| Error::PreconditionViolated(format!("`{y}` and `{z}` have the same block minima")))
}

/// Smallest `δ`-label on the edges of the interval `[y, z]` of `Π_n`.
pub fn gamma_via_pi(pi: &PartitionLattice, y: &SetPartition, z: &SetPartition) -> Result<i64> {
    if pi.kind != PartitionKind::All {
        return Err(Error::PreconditionViolated("expected the full partition lattice".into()));
    }
    let (ey, ez) = (
        pi.elem(y).ok_or_else(|| Error::UnknownElement(y.to_string()))?,
        pi.elem(z).ok_or_else(|| Error::UnknownElement(z.to_string()))?,
    );
    let interval = pi.poset.interval(ey, ez)?;
    interval
        .poset
        .cover_pairs()
        .map(|(a, b)| {
            pi.labelling
                .label(&pi.poset, interval.to_parent(a), interval.to_parent(b))
                .expect("interval covers are covers")
        })
        .min()
        .ok_or_else(|| Error::PreconditionViolated("empty interval".into()))
}

/// `Π_n` with `δ` on the label set `{2, ..., n}`.
pub fn partition_lattice(n: usize) -> Result<PartitionLattice> {
    let (poset, parts, index) = build(PartitionKind::All, n)?;
    let labelling = EdgeLabelling::try_from_fn(&poset, |a, b| delta(&parts[a], &parts[b]))?;
    Ok(PartitionLattice {
        kind: PartitionKind::All,
        n,
        poset,
        labelling,
        parts,
        index,
    })
}

/// `NC_n` with `δ` restricted to its edges.
pub fn noncrossing_lattice(n: usize) -> Result<PartitionLattice> {
    let (poset, parts, index) = build(PartitionKind::NonCrossing, n)?;
    let labelling = EdgeLabelling::try_from_fn(&poset, |a, b| delta(&parts[a], &parts[b]))?;
    Ok(PartitionLattice {
        kind: PartitionKind::NonCrossing,
        n,
        poset,
        labelling,
        parts,
        index,
    })
}

/// `NS_n` with `γ` = second smallest merged block minimum.
pub fn nonstraddling_lattice(n: usize) -> Result<PartitionLattice> {
    let (poset, parts, index) = build(PartitionKind::NonStraddling, n)?;
    let labelling = EdgeLabelling::try_from_fn(&poset, |a, b| gamma_second_smallest(&parts[a], &parts[b]))?;
    Ok(PartitionLattice {
        kind: PartitionKind::NonStraddling,
        n,
        poset,
        labelling,
        parts,
        index,
    })
}

/// Compares the three descriptions of `γ` on every edge of `ns`.
pub fn check_gamma_definitions(ns: &PartitionLattice, pi: &PartitionLattice) -> Result<CheckReport> {
    if ns.kind != PartitionKind::NonStraddling || pi.kind != PartitionKind::All || ns.n != pi.n {
        return Err(Error::PreconditionViolated("expected NS_n and Π_n for the same n".into()));
    }
    for (a, b, label) in ns.labelling.edges(&ns.poset) {
        let (y, z) = (ns.partition(a), ns.partition(b));
        let lost = gamma_lost_minimum(y, z)?;
        let via_pi = gamma_via_pi(pi, y, z)?;
        if lost != label || via_pi != label {
            return Ok(CheckReport::fail(
                Witness::Elements(vec![a, b]),
                format!("γ({y}, {z}): second smallest {label}, lost minimum {lost}, via Π {via_pi}"),
            ));
        }
    }
    Ok(CheckReport::pass("all three descriptions of γ agree"))
}

/// Least non-straddling partition refined by `x`: straddling pairs of
/// blocks are merged until none is left.
pub fn force_non_straddling(x: &SetPartition) -> SetPartition {
    let mut cur = x.clone();
    while let Some((i, j)) = cur.straddle() {
        cur = cur.merge_blocks(&[i, j]);
    }
    cur
}

/// Join of two non-straddling partitions in `NS_n`.
pub fn ns_join_closure(y: &SetPartition, z: &SetPartition) -> Result<SetPartition> {
    for x in [y, z] {
        if x.is_straddling() {
            return Err(Error::NotNonStraddling(x.to_string()));
        }
    }
    if y.n() != z.n() {
        return Err(Error::PreconditionViolated("partitions of different sets".into()));
    }
    Ok(force_non_straddling(&y.pi_join(z)))
}

/// `y ∨ (B_{l_0} ∪ ... ∪ B_{l_r})`: the least non-straddling partition above
/// `y` with the blocks of `y` whose minima are `minima` in one block.
pub fn ns_merge(y: &SetPartition, minima: &[usize]) -> Result<SetPartition> {
    if y.is_straddling() {
        return Err(Error::NotNonStraddling(y.to_string()));
    }
    let mins = y.block_minima();
    if let Some(m) = minima.iter().find(|m| !mins.contains(m)) {
        return Err(Error::PreconditionViolated(format!("{m} is not a block minimum of `{y}`")));
    }
    Ok(force_non_straddling(&y.merge_containing(minima)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(partition_lattice(3).unwrap().poset.len(), 5);
        assert_eq!(partition_lattice(4).unwrap().poset.len(), 15);
        assert_eq!(noncrossing_lattice(4).unwrap().poset.len(), 14);
        assert_eq!(nonstraddling_lattice(3).unwrap().poset.len(), 5);
        assert_eq!(nonstraddling_lattice(4).unwrap().poset.len(), 14);
        assert!(matches!(partition_lattice(8), Err(Error::SizeLimit(_))));
        assert!(matches!(partition_lattice(0), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn small_nc_equals_pi() {
        for n in 1..=3 {
            let a = partition_lattice(n).unwrap();
            let b = noncrossing_lattice(n).unwrap();
            assert_eq!(a.poset, b.poset);
            assert_eq!(a.labelling, b.labelling);
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(&p("1/2/3"), &p("1,3/2")).unwrap(), 3);
        assert_eq!(delta(&p("1/2/3"), &p("1,2/3")).unwrap(), 2);
        assert_eq!(delta(&p("1,2/3"), &p("1,2,3")).unwrap(), 3);
        assert_eq!(delta(&p("1,3/2"), &p("1,2,3")).unwrap(), 2);
        assert!(delta(&p("1/2/3"), &p("1,2,3")).is_err());
    }

    #[test]
    fn gamma_equals_delta_for_two_block_merges() {
        let y = p("1,4/2/3/5");
        let z = p("1,4/2,5/3");
        assert_eq!(gamma_second_smallest(&y, &z).unwrap(), delta(&y, &z).unwrap());
        let y = p("1,4/2,5/3/6");
        let z = p("1,2,3,4,5,6");
        assert_eq!(gamma_second_smallest(&y, &z).unwrap(), 2);
        assert_eq!(gamma_lost_minimum(&y, &z).unwrap(), 2);
    }

    #[test]
    fn forced_merges() {
        assert_eq!(ns_join_closure(&p("1,4/2/3"), &p("1/2,3/4")).unwrap(), p("1,2,3,4"));
        assert_eq!(ns_join_closure(&p("1,2/3/4"), &p("1/2/3,4")).unwrap(), p("1,2/3,4"));
        let y = p("1,4/2,5/3,6");
        assert_eq!(ns_merge(&y, &[1, 2]).unwrap(), SetPartition::full(6));
        assert!(matches!(
            ns_join_closure(&p("1,3,5/2,4"), &p("1/2/3/4/5")),
            Err(Error::NotNonStraddling(_))
        ));
    }

    #[test]
    fn ns6_cover_of_three_pairs_is_top() {
        let ns = nonstraddling_lattice(6).unwrap();
        let y = ns.elem(&p("1,4/2,5/3,6")).unwrap();
        let top = ns.elem(&SetPartition::full(6)).unwrap();
        assert_eq!(ns.poset.upper_covers(y), &[top]);
        assert_eq!(ns.poset.graded_rank().unwrap(), None);
    }
}
