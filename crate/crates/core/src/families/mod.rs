//! Generators for the classical lattice families.

pub mod ideals;
pub mod lattices;
pub mod partition;
pub mod tamari;

pub use ideals::{ideal_lattice, natural_extension, IdealLattice};
pub use lattices::{
    check_gamma_definitions, delta, force_non_straddling, gamma_lost_minimum, gamma_second_smallest, gamma_via_pi,
    noncrossing_lattice, nonstraddling_lattice, ns_join_closure, ns_merge, partition_lattice, PartitionKind,
    PartitionLattice,
};
pub use partition::SetPartition;
pub use tamari::{tamari_lattice, BinaryTree};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::labelling::{induce_labelling, EdgeLabelling, LabelSet};
use crate::order::find_left_modular_chains;
use crate::poset::{Chain, Poset, Reduction};

/// Families that can be generated by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Pi,
    Nc,
    Ns,
    Tamari,
    Chain,
    Boolean,
}

impl Family {
    pub const NAMES: [&'static str; 6] = ["pi", "nc", "ns", "tamari", "chain", "boolean"];
    const ALL: [Family; 6] = [
        Family::Pi,
        Family::Nc,
        Family::Ns,
        Family::Tamari,
        Family::Chain,
        Family::Boolean,
    ];
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::NAMES
            .iter()
            .position(|&n| n == s)
            .map(|i| Family::ALL[i])
            .ok_or_else(|| {
                Error::PreconditionViolated(format!(
                    "unknown family `{s}`; expected one of {}",
                    Family::NAMES.join(", ")
                ))
            })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = Family::ALL.iter().position(|x| x == self).unwrap();
        f.write_str(Family::NAMES[i])
    }
}

/// A generated family member with its labelling and increasing chain.
#[derive(Clone, Debug)]
pub struct Generated {
    pub name: String,
    pub poset: Poset,
    pub labelling: EdgeLabelling,
    pub m_chain: Chain,
}

/// `chain` and `boolean` are `J(Q)` for `Q` an `n`-chain or `n`-antichain;
/// Tamari lattices carry the labelling induced by their first left modular chain.
pub fn generate(family: Family, n: usize) -> Result<Generated> {
    let from_partitions = |fam: PartitionLattice, tag: &str| Generated {
        name: format!("{tag}_{n}"),
        m_chain: fam.m_chain(),
        poset: fam.poset,
        labelling: fam.labelling,
    };
    Ok(match family {
        Family::Pi => from_partitions(partition_lattice(n)?, "Pi"),
        Family::Nc => from_partitions(noncrossing_lattice(n)?, "NC"),
        Family::Ns => from_partitions(nonstraddling_lattice(n)?, "NS"),
        Family::Tamari => {
            let poset = tamari_lattice(n)?;
            let m_chain = find_left_modular_chains(&poset)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::NotLeftModular("no left modular chain".into()))?;
            let labelling = induce_labelling(&poset, &m_chain, &LabelSet::standard(m_chain.length()))?;
            Generated {
                name: format!("T_{n}"),
                poset,
                labelling,
                m_chain,
            }
        }
        Family::Chain | Family::Boolean => {
            if n > ideals::IDEAL_CAP {
                return Err(Error::SizeLimit(format!("n = {n} exceeds the cap {}", ideals::IDEAL_CAP)));
            }
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let covers: Vec<(String, String)> = match family {
                Family::Chain => names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect(),
                _ => Vec::new(),
            };
            let q = Poset::build(&names, &covers, Reduction::Strict)?;
            let j = ideal_lattice(&q, &natural_extension(&q))?;
            let (bot, top) = j.poset.bounds()?;
            let m_chain = crate::labelling::increasing_chain(&j.poset, &j.labelling, bot, top)?
                .expect("order ideal labellings are EL");
            Generated {
                name: format!("{family}_{n}"),
                poset: j.poset,
                labelling: j.labelling,
                m_chain,
            }
        }
    })
}
