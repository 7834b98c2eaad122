//! Verdicts returned by the decision procedures.

use serde_json::{json, Value};

use crate::order::LmWitness;
use crate::poset::{Chain, Elem, Poset};

/// A counterexample produced by a failing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Left-modularity or viability failure of `x` at the pair `y <= z`.
    LeftModular(LmWitness),
    /// An interval whose chains violate the EL conditions.
    Interval { y: Elem, z: Elem, chains: Vec<Chain> },
    /// A length-two chain `y ⋖ u ⋖ z` violating the interpolation condition.
    Triple { y: Elem, u: Elem, z: Elem },
    /// A chain with an offending label word (or a non-closed chain).
    Chain(Chain),
    /// A tuple of elements, e.g. a pair with no join or a non-distributive triple.
    Elements(Vec<Elem>),
    /// Why a candidate chain was rejected.
    Rejected { chain: Chain, reason: Box<Witness> },
}

impl Witness {
    pub fn to_json(&self, p: &Poset) -> Value {
        let names = |es: &[Elem]| es.iter().map(|&e| p.name(e).to_string()).collect::<Vec<_>>();
        match self {
            Witness::LeftModular(w) => json!({
                "kind": "left-modular",
                "failure": w.kind.as_str(),
                "x": p.name(w.x),
                "y": p.name(w.y),
                "z": p.name(w.z),
                "lhs": w.lhs.map(|e| p.name(e).to_string()),
                "rhs": w.rhs.map(|e| p.name(e).to_string()),
            }),
            Witness::Interval { y, z, chains } => json!({
                "kind": "interval",
                "y": p.name(*y),
                "z": p.name(*z),
                "chains": chains.iter().map(|c| names(c.nodes())).collect::<Vec<_>>(),
            }),
            Witness::Triple { y, u, z } => json!({
                "kind": "triple",
                "chain": names(&[*y, *u, *z]),
            }),
            Witness::Chain(c) => json!({ "kind": "chain", "chain": names(c.nodes()) }),
            Witness::Elements(es) => json!({ "kind": "elements", "elements": names(es) }),
            Witness::Rejected { chain, reason } => json!({
                "kind": "rejected",
                "chain": names(chain.nodes()),
                "reason": reason.to_json(p),
            }),
        }
    }

    /// A chain that can be stored alongside a counterexample document.
    pub fn primary_chain(&self) -> Option<Chain> {
        match self {
            Witness::Interval { chains, .. } => chains.first().cloned(),
            Witness::Triple { y, u, z } => Some(Chain::from_vec(vec![*y, *u, *z])),
            Witness::Chain(c) | Witness::Rejected { chain: c, .. } => Some(c.clone()),
            _ => None,
        }
    }
}

/// Verdict of a decision procedure; a failing verdict always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub note: String,
}

impl CheckReport {
    pub fn pass(note: impl Into<String>) -> Self {
        CheckReport {
            verdict: true,
            witness: None,
            note: note.into(),
        }
    }

    pub fn fail(witness: Witness, note: impl Into<String>) -> Self {
        CheckReport {
            verdict: false,
            witness: Some(witness),
            note: note.into(),
        }
    }

    /// Attaches supporting evidence, e.g. the chain behind a passing verdict.
    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn to_json(&self, p: &Poset) -> Value {
        json!({
            "verdict": self.verdict,
            "note": self.note,
            "witness": self.witness.as_ref().map(|w| w.to_json(p)),
        })
    }
}
