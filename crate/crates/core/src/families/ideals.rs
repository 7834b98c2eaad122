//! Distributive lattices of order ideals, labelled by a linear extension.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::labelling::EdgeLabelling;
use crate::poset::{Elem, Poset};

/// Largest `|Q|` accepted by [`ideal_lattice`].
pub const IDEAL_CAP: usize = 16;

/// `J(Q)` with its ideals as bitsets over `Q`.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub poset: Poset,
    pub labelling: EdgeLabelling,
    pub ideals: Vec<FixedBitSet>,
}

/// A linear extension of `q` read off its topological order, as `omega[a]` in `1..=n`.
pub fn natural_extension(q: &Poset) -> Vec<i64> {
    let mut omega = vec![0; q.len()];
    for (i, &a) in q.topological_order().iter().enumerate() {
        omega[a] = i as i64 + 1;
    }
    omega
}

fn check_extension(q: &Poset, omega: &[i64]) -> Result<()> {
    let n = q.len();
    if omega.len() != n {
        return Err(Error::NotLinearExtension(format!("{} values for {n} elements", omega.len())));
    }
    let mut seen = vec![false; n + 1];
    for &w in omega {
        if w < 1 || w as usize > n || std::mem::replace(&mut seen[w as usize], true) {
            return Err(Error::NotLinearExtension(format!("{w} is not a fresh value in 1..={n}")));
        }
    }
    for (a, b) in q.cover_pairs() {
        if omega[a] >= omega[b] {
            return Err(Error::NotLinearExtension(format!(
                "{} < {} but {} >= {}",
                q.name(a),
                q.name(b),
                omega[a],
                omega[b]
            )));
        }
    }
    Ok(())
}

fn ideal_name(q: &Poset, ideal: &FixedBitSet) -> String {
    let inner: Vec<&str> = ideal.ones().map(|a| q.name(a)).collect();
    format!("{{{}}}", inner.join(","))
}

/// Order ideals of `q` under inclusion; `I ⋖ I ∪ {a}` is labelled `omega[a]`.
pub fn ideal_lattice(q: &Poset, omega: &[i64]) -> Result<IdealLattice> {
    if q.len() > IDEAL_CAP {
        return Err(Error::SizeLimit(format!("|Q| = {} exceeds the cap {IDEAL_CAP}", q.len())));
    }
    check_extension(q, omega)?;
    let n = q.len();
    let mut ideals = vec![FixedBitSet::with_capacity(n)];
    let mut frontier = ideals.clone();
    let mut seen: std::collections::HashSet<FixedBitSet> = frontier.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for ideal in &frontier {
            for a in 0..n {
                if !ideal.contains(a) && q.lower_covers(a).iter().all(|&b| ideal.contains(b)) {
                    let mut bigger = ideal.clone();
                    bigger.insert(a);
                    if seen.insert(bigger.clone()) {
                        next.push(bigger);
                    }
                }
            }
        }
        next.sort_by(|x, y| x.ones().cmp(y.ones()));
        ideals.extend(next.iter().cloned());
        frontier = next;
    }
    let names = ideals.iter().map(|i| ideal_name(q, i)).collect();
    let poset = Poset::from_order(names, |a, b| ideals[a].is_subset(&ideals[b]))?;
    let added = |a: Elem, b: Elem| -> Elem {
        ideals[b].difference(&ideals[a]).next().expect("a cover adds one element")
    };
    let labelling = EdgeLabelling::from_fn(&poset, |a, b| omega[added(a, b)]);
    Ok(IdealLattice { poset, labelling, ideals })
}
