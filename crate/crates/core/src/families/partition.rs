//! Set partitions of `[n] = {1, ..., n}` in canonical form.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition of `{1, ..., n}`: blocks sorted by minimum, each block ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &i in block.iter() {
                if i == 0 || i > n {
                    return Err(Error::InvalidPartition(format!("{i} is outside 1..={n}")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!("{i} appears twice")));
                }
            }
        }
        if let Some(i) = (1..=n).find(|&i| !seen[i]) {
            return Err(Error::InvalidPartition(format!("{i} is missing")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// One block (empty for `n = 0`).
    pub fn full(n: usize) -> Self {
        SetPartition {
            n,
            blocks: if n == 0 { vec![] } else { vec![(1..=n).collect()] },
        }
    }

    /// `[i]` as a block, everything else singletons.
    pub fn initial_segment(n: usize, i: usize) -> Self {
        let mut blocks = vec![(1..=i.max(1).min(n)).collect::<Vec<_>>()];
        blocks.extend((i.max(1) + 1..=n).map(|j| vec![j]));
        if n == 0 {
            blocks.clear();
        }
        SetPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `owner[i]` is the index of the block containing `i` (slot 0 unused).
    pub fn owners(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.n + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                owner[i] = k;
            }
        }
        owner
    }

    /// Index of the block containing `i`.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&i).is_ok())
    }

    pub fn block_minima(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        let owner = other.owners();
        self.n == other.n
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&i| owner[i] == owner[b[0]]))
    }

    /// Blocks `(outer, inner)` with `a < b < c < d`, `a, d` in outer, `b, c` in inner.
    pub fn straddle(&self) -> Option<(usize, usize)> {
        for (i, outer) in self.blocks.iter().enumerate() {
            let (lo, hi) = (outer[0], *outer.last().unwrap());
            for (j, inner) in self.blocks.iter().enumerate() {
                if i != j && inner.iter().filter(|&&x| lo < x && x < hi).count() >= 2 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_straddling(&self) -> bool {
        self.straddle().is_some()
    }

    /// Blocks `(B, B')` with `a < b < c < d`, `a, c` in `B`, `b, d` in `B'`.
    pub fn crossing(&self) -> Option<(usize, usize)> {
        let owner = self.owners();
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if owner[a] == owner[b] {
                    continue;
                }
                for c in b + 1..=self.n {
                    if owner[c] != owner[a] {
                        continue;
                    }
                    if (c + 1..=self.n).any(|d| owner[d] == owner[b]) {
                        return Some((owner[a], owner[b]));
                    }
                }
            }
        }
        None
    }

    pub fn is_crossing(&self) -> bool {
        self.crossing().is_some()
    }

    /// Merges the blocks with the given indices into one.
    pub fn merge_blocks(&self, indices: &[usize]) -> SetPartition {
        let mut merged = Vec::new();
        let mut rest = Vec::new();
        for (k, b) in self.blocks.iter().enumerate() {
            if indices.contains(&k) {
                merged.extend_from_slice(b);
            } else {
                rest.push(b.clone());
            }
        }
        if !merged.is_empty() {
            rest.push(merged);
        }
        SetPartition::new(self.n, rest).expect("merging keeps a partition")
    }

    /// Merges every block containing one of `elems`.
    pub fn merge_containing(&self, elems: &[usize]) -> SetPartition {
        let owner = self.owners();
        let idx: Vec<usize> = elems.iter().map(|&i| owner[i]).collect();
        self.merge_blocks(&idx)
    }

    /// Join in the full partition lattice.
    pub fn pi_join(&self, other: &SetPartition) -> SetPartition {
        assert_eq!(self.n, other.n);
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                let (ra, rb) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 1..=self.n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        SetPartition::new(self.n, groups.into_values().collect()).expect("union-find partition")
    }

    /// Meet in the full partition lattice.
    pub fn pi_meet(&self, other: &SetPartition) -> SetPartition {
        assert_eq!(self.n, other.n);
        let (oa, ob) = (self.owners(), other.owners());
        let mut groups: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for i in 1..=self.n {
            groups.entry((oa[i], ob[i])).or_default().push(i);
        }
        SetPartition::new(self.n, groups.into_values().collect()).expect("intersection partition")
    }

    /// Every partition of `[n]`, generated from restricted growth strings.
    pub fn all(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        fn rec(n: usize, pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
            if pos == n {
                let k = rgs.iter().max().map_or(0, |m| m + 1);
                let mut blocks = vec![Vec::new(); k];
                for (i, &b) in rgs.iter().enumerate() {
                    blocks[b].push(i + 1);
                }
                out.push(SetPartition::new(n, blocks).expect("rgs partition"));
                return;
            }
            let limit = if pos == 0 { 0 } else { max + 1 };
            for b in 0..=limit {
                rgs[pos] = b;
                rec(n, pos + 1, max.max(b), rgs, out);
            }
        }
        rec(n, 0, 0, &mut rgs, &mut out);
        out
    }
}

impl fmt::Display for SetPartition {
    /// `1,4/2,5/3/6` for `{1,4}{2,5}{3}{6}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("/")?;
            }
            for (j, i) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Accepts `1,4/2,5/3,6` with optional braces around blocks; `n` is the
    /// largest element mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return SetPartition::new(0, vec![]);
        }
        let mut blocks = Vec::new();
        for part in s.split('/') {
            let part = part.trim().trim_start_matches('{').trim_end_matches('}');
            let block = part
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPartition(format!("bad element `{}`", t.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::new(n, blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_and_display() {
        let x = p("{3,6}/{2,5}/{4,1}");
        assert_eq!(x.to_string(), "1,4/2,5/3,6");
        assert_eq!(x, p("1,4/2,5/3,6"));
        assert!("1,2/2,3".parse::<SetPartition>().is_err());
        assert!("1,3".parse::<SetPartition>().is_err());
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=6).map(|n| SetPartition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn straddles() {
        assert!(p("1,3,5/2,4").is_straddling());
        assert!(p("1,2,4,5/3,6").is_straddling());
        assert!(p("1,3,4,6/2,5").is_straddling());
        assert!(p("1,4/2,3,5,6").is_straddling());
        assert!(!p("1,4/2,5/3,6").is_straddling());
        assert!(SetPartition::all(3).iter().all(|x| !x.is_straddling()));
    }

    #[test]
    fn crossings() {
        assert!(p("1,3/2,4").is_crossing());
        assert!(!p("1,4/2,3").is_crossing());
        let crossing_4: Vec<_> = SetPartition::all(4).into_iter().filter(|x| x.is_crossing()).collect();
        assert_eq!(crossing_4, vec![p("1,3/2,4")]);
    }

    #[test]
    fn lattice_operations() {
        let a = p("1,2/3/4");
        let b = p("1/2/3,4");
        assert_eq!(a.pi_join(&b), p("1,2/3,4"));
        assert_eq!(a.pi_meet(&b), SetPartition::discrete(4));
        assert!(a.refines(&a.pi_join(&b)));
        assert_eq!(SetPartition::initial_segment(4, 3), p("1,2,3/4"));
        assert_eq!(SetPartition::initial_segment(4, 1), SetPartition::discrete(4));
        assert_eq!(a.merge_containing(&[3, 4]), p("1,2/3,4"));
    }
}
