//! Finite posets stored as a cover relation plus a cached order relation.
//!
//! Elements are addressed by dense indices ([`Elem`]); the string name of an
//! element is only used at the boundary (documents, DOT, error messages).
//! A [`Poset`] is immutable once built.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Index of an element inside its owning [`Poset`].
pub type Elem = usize;

/// How [`Poset::build`] treats a cover list that is not transitively reduced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Reduction {
    /// Reject pairs implied by transitivity.
    #[default]
    Strict,
    /// Accept an arbitrary relation and keep only its covers.
    Auto,
}

#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    upper: Vec<Vec<Elem>>,
    lower: Vec<Vec<Elem>>,
    // up[a] = { b : a <= b }, down[b] = { a : a <= b }
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    topo: Vec<Elem>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.upper == other.upper
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from named elements and named cover pairs.
    pub fn build<S: AsRef<str>>(
        elements: &[S],
        cover_pairs: &[(S, S)],
        mode: Reduction,
    ) -> Result<Poset> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
        };
        let pairs = cover_pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::from_pairs(names, &pairs, mode)
    }

    /// Builds a poset from names and index pairs; see [`Poset::build`].
    pub fn from_pairs(names: Vec<String>, pairs: &[(Elem, Elem)], mode: Reduction) -> Result<Poset> {
        let n = names.len();
        let mut seen = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::UnknownElement(format!("#{a}")));
            }
            if b >= n {
                return Err(Error::UnknownElement(format!("#{b}")));
            }
            if a == b {
                return Err(Error::Cycle(names[a].clone()));
            }
            succ[a].push(b);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }

        // Kahn's algorithm; leftover vertices lie on or behind a cycle.
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut order: Vec<Elem> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &b in &succ[v] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    order.push(b);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(Error::Cycle(names[stuck].clone()));
        }

        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(a);
                row
            })
            .collect();
        for &a in order.iter().rev() {
            let mut row = up[a].clone();
            for &b in &succ[a] {
                row.union_with(&up[b]);
            }
            up[a] = row;
        }

        if mode == Reduction::Strict {
            for a in 0..n {
                for &b in &succ[a] {
                    let implied = succ[a].iter().any(|&c| c != b && up[c].contains(b));
                    if implied {
                        return Err(Error::NotReduced(names[a].clone(), names[b].clone()));
                    }
                }
            }
        }
        Ok(Poset::from_closure(names, up))
    }

    /// Builds a poset from a reflexive order relation given as a predicate.
    ///
    /// The relation is closed transitively before the covers are extracted.
    pub fn from_order(names: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Result<Poset> {
        let n = names.len();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Poset::from_pairs(names, &pairs, Reduction::Auto)
    }

    /// `up` must already be a reflexive, transitive, antisymmetric relation.
    fn from_closure(names: Vec<String>, up: Vec<FixedBitSet>) -> Poset {
        let n = names.len();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for a in 0..n {
            for b in up[a].ones() {
                if a != b && up[a].intersection_count(&down[b]) == 2 {
                    upper[a].push(b);
                    lower[b].push(a);
                }
            }
        }
        let mut topo: Vec<Elem> = (0..n).collect();
        topo.sort_by_key(|&a| (down[a].count_ones(..), a));
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Poset {
            names,
            index,
            upper,
            lower,
            up,
            down,
            topo,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn check_elem(&self, e: Elem) -> Result<()> {
        if e < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("#{e}")))
        }
    }

    /// `a <= b`. Panics if either index is out of range.
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `a ⋖ b`.
    pub fn covers(&self, a: Elem, b: Elem) -> bool {
        self.upper[a].binary_search(&b).is_ok()
    }

    /// Elements covering `a`, ascending by index.
    pub fn upper_covers(&self, a: Elem) -> &[Elem] {
        &self.upper[a]
    }

    /// Elements covered by `a`, ascending by index.
    pub fn lower_covers(&self, a: Elem) -> &[Elem] {
        &self.lower[a]
    }

    /// All cover pairs, ordered by lower then upper element.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    pub fn cover_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    /// `{ b : a <= b }` as a bit set.
    pub fn above(&self, a: Elem) -> &FixedBitSet {
        &self.up[a]
    }

    /// `{ b : b <= a }` as a bit set.
    pub fn below(&self, a: Elem) -> &FixedBitSet {
        &self.down[a]
    }

    /// A linear extension of the order.
    pub fn topological_order(&self) -> &[Elem] {
        &self.topo
    }

    pub fn minimal_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.lower[a].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.upper[a].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<Elem> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<Elem> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom().is_some() && self.top().is_some()
    }

    /// `(0̂, 1̂)`, or [`Error::NotBounded`].
    pub fn bounds(&self) -> Result<(Elem, Elem)> {
        match (self.bottom(), self.top()) {
            (Some(b), Some(t)) => Ok((b, t)),
            _ => Err(Error::NotBounded),
        }
    }

    fn require_leq(&self, y: Elem, z: Elem) -> Result<()> {
        self.check_elem(y)?;
        self.check_elem(z)?;
        if self.leq(y, z) {
            Ok(())
        } else {
            Err(Error::NotComparable(self.names[y].clone(), self.names[z].clone()))
        }
    }

    /// The induced subposet on `elems`; covers are recomputed inside it.
    pub fn induced(&self, elems: &[Elem]) -> Subposet {
        let mut embed = elems.to_vec();
        embed.sort_unstable();
        embed.dedup();
        let k = embed.len();
        let names = embed.iter().map(|&e| self.names[e].clone()).collect();
        let up = embed
            .iter()
            .map(|&a| {
                let mut row = FixedBitSet::with_capacity(k);
                for (j, &b) in embed.iter().enumerate() {
                    if self.leq(a, b) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let local = embed.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Subposet {
            poset: Poset::from_closure(names, up),
            embed,
            local,
        }
    }

    /// The interval `[y, z]` as an induced subposet.
    pub fn interval(&self, y: Elem, z: Elem) -> Result<Subposet> {
        self.require_leq(y, z)?;
        let elems: Vec<Elem> = self.up[y].intersection(&self.down[z]).collect();
        Ok(self.induced(&elems))
    }

    /// Every unrefinable chain from `y` to `z`, lexicographic by index.
    pub fn maximal_chains(&self, y: Elem, z: Elem) -> Result<Vec<Chain>> {
        self.require_leq(y, z)?;
        let mut out = Vec::new();
        let mut path = vec![y];
        self.chains_dfs(z, &mut path, &mut out);
        Ok(out)
    }

    fn chains_dfs(&self, z: Elem, path: &mut Vec<Elem>, out: &mut Vec<Chain>) {
        let v = *path.last().expect("path is never empty");
        if v == z {
            out.push(Chain(path.clone()));
            return;
        }
        for &w in &self.upper[v] {
            if self.leq(w, z) {
                path.push(w);
                self.chains_dfs(z, path, out);
                path.pop();
            }
        }
    }

    /// Number of unrefinable chains from `y` to `z`, without materializing them.
    pub fn count_chains(&self, y: Elem, z: Elem) -> Result<u64> {
        self.require_leq(y, z)?;
        let mut ways = vec![0u64; self.len()];
        ways[y] = 1;
        for &v in &self.topo {
            if ways[v] == 0 || !self.leq(v, z) {
                continue;
            }
            for &w in &self.upper[v] {
                if self.leq(w, z) {
                    ways[w] += ways[v];
                }
            }
        }
        Ok(ways[z])
    }

    /// The common length of all maximal chains, if there is one.
    pub fn graded_rank(&self) -> Result<Option<usize>> {
        let (bot, top) = self.bounds()?;
        let mut shortest = vec![usize::MAX; self.len()];
        let mut longest = vec![0usize; self.len()];
        shortest[bot] = 0;
        for &v in &self.topo {
            if shortest[v] == usize::MAX {
                continue;
            }
            for &w in &self.upper[v] {
                shortest[w] = shortest[w].min(shortest[v] + 1);
                longest[w] = longest[w].max(longest[v] + 1);
            }
        }
        Ok((shortest[top] == longest[top]).then_some(longest[top]))
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.len()];
        for &v in &self.topo {
            for &w in &self.upper[v] {
                h[w] = h[w].max(h[v] + 1);
            }
        }
        h
    }

    /// Recomputes the order relation from the covers and compares it with the cache.
    pub fn closure_is_consistent(&self) -> bool {
        let n = self.len();
        let mut reach = vec![vec![false; n]; n];
        for (a, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![a];
            while let Some(v) = stack.pop() {
                if row[v] {
                    continue;
                }
                row[v] = true;
                stack.extend(self.upper[v].iter().copied());
            }
        }
        (0..n).all(|a| (0..n).all(|b| reach[a][b] == self.leq(a, b)))
    }
}

/// A strictly increasing sequence of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(Vec<Elem>);

impl Chain {
    pub fn new(p: &Poset, nodes: Vec<Elem>) -> Result<Chain> {
        for &e in &nodes {
            p.check_elem(e)?;
        }
        if let Some(w) = nodes.windows(2).find(|w| !p.lt(w[0], w[1])) {
            return Err(Error::InvalidChain(format!(
                "`{}` is not strictly below `{}`",
                p.name(w[0]),
                p.name(w[1])
            )));
        }
        Ok(Chain(nodes))
    }

    /// Builds an unrefinable chain, checking every step is a cover.
    pub fn unrefinable(p: &Poset, nodes: Vec<Elem>) -> Result<Chain> {
        let chain = Chain::new(p, nodes)?;
        if !chain.is_unrefinable(p) {
            return Err(Error::InvalidChain("consecutive elements must be covers".into()));
        }
        Ok(chain)
    }

    /// Unchecked constructor for internally produced chains.
    pub(crate) fn from_vec(nodes: Vec<Elem>) -> Chain {
        Chain(nodes)
    }

    pub fn nodes(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_nodes(self) -> Vec<Elem> {
        self.0
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn first(&self) -> Option<Elem> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Elem> {
        self.0.last().copied()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.0.contains(&e)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn is_unrefinable(&self, p: &Poset) -> bool {
        self.edges().all(|(a, b)| p.covers(a, b))
    }

    pub fn is_maximal(&self, p: &Poset) -> bool {
        match p.bounds() {
            Ok((bot, top)) => {
                self.first() == Some(bot) && self.last() == Some(top) && self.is_unrefinable(p)
            }
            Err(_) => false,
        }
    }

    pub fn display<'a>(&'a self, p: &'a Poset) -> ChainDisplay<'a> {
        ChainDisplay { chain: self, poset: p }
    }
}

pub struct ChainDisplay<'a> {
    chain: &'a Chain,
    poset: &'a Poset,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &e) in self.chain.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" < ")?;
            }
            f.write_str(self.poset.name(e))?;
        }
        Ok(())
    }
}

/// An induced subposet together with its embedding into the parent.
#[derive(Clone, Debug)]
pub struct Subposet {
    pub poset: Poset,
    embed: Vec<Elem>,
    local: HashMap<Elem, Elem>,
}

impl Subposet {
    /// Parent index of a local element.
    pub fn to_parent(&self, e: Elem) -> Elem {
        self.embed[e]
    }

    pub fn to_local(&self, e: Elem) -> Option<Elem> {
        self.local.get(&e).copied()
    }

    /// Parent indices of all elements, ascending.
    pub fn parent_elements(&self) -> &[Elem] {
        &self.embed
    }

    pub fn chain_to_local(&self, c: &Chain) -> Option<Chain> {
        c.0.iter()
            .map(|&e| self.to_local(e))
            .collect::<Option<Vec<_>>>()
            .map(Chain)
    }

    pub fn chain_to_parent(&self, c: &Chain) -> Chain {
        Chain(c.0.iter().map(|&e| self.embed[e]).collect())
    }
}
