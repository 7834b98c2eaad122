//! Small posets up to isomorphism.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::poset::{Poset, Reduction};

/// Largest ground set for [`enumerate_posets`].
pub const POSET_CAP: usize = 6;
/// Largest poset size for [`enumerate_bounded_posets`].
pub const BOUNDED_CAP: usize = 7;

/// Strict down-sets of a naturally labelled poset: `down[k] ⊆ {0, ..., k-1}`.
type DownSets = Vec<FixedBitSet>;

fn natural_posets(m: usize) -> Vec<DownSets> {
    let mut out = Vec::new();
    let mut cur: DownSets = Vec::new();
    fn rec(m: usize, cur: &mut DownSets, out: &mut Vec<DownSets>) {
        let k = cur.len();
        if k == m {
            out.push(cur.clone());
            return;
        }
        for mask in 0u32..(1 << k) {
            let mut d = FixedBitSet::with_capacity(m);
            for i in 0..k {
                if mask >> i & 1 == 1 {
                    d.insert(i);
                }
            }
            if d.ones().all(|i| cur[i].is_subset(&d)) {
                cur.push(d);
                rec(m, cur, out);
                cur.pop();
            }
        }
    }
    rec(m, &mut cur, &mut out);
    out
}

/// Lexicographically least strict-order matrix over all relabellings, as bits.
pub fn canonical_form(p: &Poset) -> Vec<bool> {
    let n = p.len();
    (0..n)
        .permutations(n)
        .map(|perm| {
            perm.iter()
                .flat_map(|&a| perm.iter().map(move |&b| p.lt(a, b)))
                .collect::<Vec<bool>>()
        })
        .min()
        .unwrap_or_default()
}

fn inner_name(i: usize) -> String {
    char::from(b'a' + i as u8).to_string()
}

fn from_down_sets(down: &DownSets, bounded: bool) -> Poset {
    let m = down.len();
    let mut names: Vec<String> = (0..m).map(inner_name).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (k, d) in down.iter().enumerate() {
        pairs.extend(d.ones().map(|i| (i, k)));
    }
    if bounded {
        let (bot, top) = (m, m + 1);
        names.push("0".into());
        names.push("1".into());
        pairs.push((bot, top));
        for k in 0..m {
            pairs.push((bot, k));
            pairs.push((k, top));
        }
        // Reorder so the bottom comes first and the top last.
        let order: Vec<usize> = std::iter::once(bot).chain(0..m).chain(std::iter::once(top)).collect();
        let mut pos = vec![0; m + 2];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        let names = order.iter().map(|&e| names[e].clone()).collect();
        let pairs: Vec<_> = pairs.iter().map(|&(a, b)| (pos[a], pos[b])).collect();
        return Poset::from_pairs(names, &pairs, Reduction::Auto).expect("acyclic by construction");
    }
    Poset::from_pairs(names, &pairs, Reduction::Auto).expect("acyclic by construction")
}

fn up_to_iso(m: usize) -> Vec<DownSets> {
    let mut seen: BTreeMap<Vec<bool>, DownSets> = BTreeMap::new();
    for d in natural_posets(m) {
        let key = canonical_form(&from_down_sets(&d, false));
        seen.entry(key).or_insert(d);
    }
    seen.into_values().collect()
}

/// Every poset on `m` elements, one per isomorphism class, named `a, b, ...`.
pub fn enumerate_posets(m: usize) -> Result<Vec<Poset>> {
    if m > POSET_CAP {
        return Err(Error::SizeLimit(format!("{m} elements exceeds the cap {POSET_CAP}")));
    }
    Ok(up_to_iso(m).iter().map(|d| from_down_sets(d, false)).collect())
}

/// Bounded posets with `2..=max_elements` elements up to isomorphism, by
/// size. Elements are `0`, `a, b, ...`, `1`.
pub fn enumerate_bounded_posets(max_elements: usize, graded_only: bool) -> Result<Vec<Poset>> {
    if max_elements > BOUNDED_CAP {
        return Err(Error::SizeLimit(format!(
            "{max_elements} elements exceeds the cap {BOUNDED_CAP}"
        )));
    }
    let mut out = Vec::new();
    for size in 2..=max_elements {
        for d in up_to_iso(size - 2) {
            let p = from_down_sets(&d, true);
            if !graded_only || p.graded_rank().expect("bounded").is_some() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlabelled_poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|m| enumerate_posets(m).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        assert_eq!(natural_posets(4).len(), 40);
    }

    #[test]
    fn bounded_small_cases() {
        let two = enumerate_bounded_posets(2, false).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].names(), &["0", "1"]);
        let three = enumerate_bounded_posets(3, true).unwrap();
        assert_eq!(three.len(), 2);
        assert_eq!(three[1].names(), &["0", "a", "1"]);
        assert!(three.iter().all(|p| p.is_bounded()));
        assert!(matches!(enumerate_bounded_posets(8, false), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn canonical_form_ignores_names_and_order() {
        let a = Poset::build(&["x", "y", "z"], &[("x", "y")], Reduction::Strict).unwrap();
        let b = Poset::build(&["p", "q", "r"], &[("r", "p")], Reduction::Strict).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let c = Poset::build(&["p", "q", "r"], &[("r", "p"), ("p", "q")], Reduction::Strict).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&c));
    }
}
