//! The JSON poset file format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::labelling::EdgeLabelling;
use crate::poset::{Chain, Poset, Reduction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chains: Option<BTreeMap<String, Vec<String>>>,
    pub covers: Vec<(String, String)>,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, i64>>,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Validation(#[from] Error),
}

/// A validated document.
#[derive(Clone, Debug)]
pub struct LoadedPoset {
    pub name: String,
    pub poset: Poset,
    pub labelling: Option<EdgeLabelling>,
    pub chains: BTreeMap<String, Chain>,
}

pub fn label_key(a: &str, b: &str) -> String {
    format!("{a}->{b}")
}

impl PosetDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn serialize(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_poset(name: &str, p: &Poset, lab: Option<&EdgeLabelling>, chains: &[(String, Chain)]) -> Self {
        let covers = p
            .cover_pairs()
            .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
            .collect();
        let labels = lab.map(|l| {
            l.edges(p)
                .map(|(a, b, v)| (label_key(p.name(a), p.name(b)), v))
                .collect()
        });
        let chains = (!chains.is_empty()).then(|| {
            chains
                .iter()
                .map(|(k, c)| (k.clone(), c.nodes().iter().map(|&e| p.name(e).to_string()).collect()))
                .collect()
        });
        PosetDocument {
            chains,
            covers,
            elements: p.names().to_vec(),
            labels,
            name: name.to_string(),
        }
    }

    /// Builds the poset (covers must be a transitive reduction), the labelling
    /// (exactly one label per cover) and the named chains.
    pub fn load(&self) -> Result<LoadedPoset, Error> {
        let poset = Poset::build(&self.elements, &self.covers, Reduction::Strict)?;
        let labelling = match &self.labels {
            None => None,
            Some(map) => {
                let mut remaining = map.clone();
                let mut edges = Vec::new();
                let mut seen = std::collections::BTreeSet::new();
                for (a, b) in poset.cover_pairs() {
                    let key = label_key(poset.name(a), poset.name(b));
                    if !seen.insert(key.clone()) {
                        return Err(Error::InvalidLabelling(format!("label key `{key}` names two covers")));
                    }
                    let v = remaining
                        .remove(&key)
                        .ok_or_else(|| Error::InvalidLabelling(format!("no label for `{key}`")))?;
                    edges.push((a, b, v));
                }
                if let Some(key) = remaining.keys().next() {
                    return Err(Error::InvalidLabelling(format!("`{key}` is not a cover")));
                }
                Some(EdgeLabelling::from_edges(&poset, edges)?)
            }
        };
        let mut chains = BTreeMap::new();
        for (k, names) in self.chains.iter().flatten() {
            let nodes = names.iter().map(|s| poset.elem(s)).collect::<Result<Vec<_>, _>>()?;
            let chain = Chain::new(&poset, nodes).map_err(|e| Error::InvalidChain(format!("chain `{k}`: {e}")))?;
            chains.insert(k.clone(), chain);
        }
        Ok(LoadedPoset {
            name: self.name.clone(),
            poset,
            labelling,
            chains,
        })
    }
}

/// Parses and validates in one step.
pub fn load_document(text: &str) -> Result<LoadedPoset, DocumentError> {
    Ok(PosetDocument::parse(text)?.load()?)
}
