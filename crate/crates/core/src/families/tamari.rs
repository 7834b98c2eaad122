//! The Tamari lattice on full binary trees, ordered by right rotation.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::poset::{Poset, Reduction};

/// Largest `n` accepted by [`tamari_lattice`].
pub const TAMARI_CAP: usize = 7;

/// A full binary tree; `n` counts internal nodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryTree {
    Leaf,
    Node(Rc<BinaryTree>, Rc<BinaryTree>),
}

impl BinaryTree {
    pub fn node(l: BinaryTree, r: BinaryTree) -> Self {
        BinaryTree::Node(Rc::new(l), Rc::new(r))
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Every tree with `n` internal nodes.
    pub fn all(n: usize) -> Vec<BinaryTree> {
        let mut memo: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Leaf]];
        for k in 1..=n {
            let mut out = Vec::new();
            for i in 0..k {
                for l in &memo[i] {
                    for r in &memo[k - 1 - i] {
                        out.push(BinaryTree::node(l.clone(), r.clone()));
                    }
                }
            }
            memo.push(out);
        }
        memo.swap_remove(n)
    }

    /// Trees obtained by one right rotation `((A,B),C) -> (A,(B,C))` at any node.
    pub fn right_rotations(&self) -> Vec<BinaryTree> {
        let BinaryTree::Node(l, r) = self else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if let BinaryTree::Node(a, b) = l.as_ref() {
            out.push(BinaryTree::Node(a.clone(), Rc::new(BinaryTree::Node(b.clone(), r.clone()))));
        }
        for l2 in l.right_rotations() {
            out.push(BinaryTree::Node(Rc::new(l2), r.clone()));
        }
        for r2 in r.right_rotations() {
            out.push(BinaryTree::Node(l.clone(), Rc::new(r2)));
        }
        out
    }
}

impl fmt::Display for BinaryTree {
    /// Dyck word: `(` left `)` right.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => Ok(()),
            BinaryTree::Node(l, r) => write!(f, "({l}){r}"),
        }
    }
}

/// `T_n`: binary trees with `n` internal nodes; `t ⋖ t'` when `t'` is a
/// right rotation of `t`. The left comb is the bottom.
pub fn tamari_lattice(n: usize) -> Result<Poset> {
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be at least 1".into()));
    }
    if n > TAMARI_CAP {
        return Err(Error::SizeLimit(format!("n = {n} exceeds the cap {TAMARI_CAP}")));
    }
    let trees = BinaryTree::all(n);
    let names: Vec<String> = trees.iter().map(|t| t.to_string()).collect();
    let index: HashMap<&BinaryTree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut pairs = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        for s in t.right_rotations() {
            pairs.push((i, index[&s]));
        }
    }
    Poset::from_pairs(names, &pairs, Reduction::Strict)
}
