//! Runs the named claims over the family universe and small posets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::document::PosetDocument;
use crate::enumerate::{enumerate_bounded_posets, enumerate_posets};
use crate::error::{Error, Result};
use crate::families::{
    gamma_via_pi, ideal_lattice, natural_extension, noncrossing_lattice, nonstraddling_lattice, ns_join_closure,
    ns_merge, partition_lattice, tamari_lattice, PartitionKind, PartitionLattice, SetPartition,
};
use crate::labelling::{
    basic_replacement_reduce, check_el_labelling, check_interpolating, check_sn_el_labelling, edge_indices,
    increasing_chain, induce_labelling, search_sn_el_labelling, EdgeLabelling, LabelSet,
};
use crate::order::{check_chain_left_modular, find_left_modular_chains};
use crate::poset::{Chain, Poset};
use crate::report::CheckReport;
use crate::supersolvable::{
    all_chains, increasing_extension, is_distributive_lattice, is_lattice, is_supersolvable, q_closure, r_closure,
    CHAIN_CAP,
};

/// Node cap handed to [`search_sn_el_labelling`].
pub const SEARCH_CAP: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    /// `NS_3`, `NS_4`, `NS_5`.
    Ns,
    /// `NS_6`.
    Ns6,
    /// `Π_n` and `NC_n` for `n <= 4`.
    Partitions,
    /// `T_3`, `T_4`.
    Tamari,
    /// `J(Q)` for every `Q` with at most four elements.
    Ideals,
    /// Bounded graded posets with at most six elements.
    Small,
    /// Every preset above.
    All,
}

impl Preset {
    pub const NAMES: [&'static str; 7] = ["ns", "ns6", "partitions", "tamari", "ideals", "small", "all"];

    fn expand(self) -> Vec<Preset> {
        match self {
            Preset::All => vec![Preset::Ns, Preset::Ns6, Preset::Partitions, Preset::Tamari, Preset::Ideals, Preset::Small],
            p => vec![p],
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ns" => Preset::Ns,
            "ns6" => Preset::Ns6,
            "partitions" => Preset::Partitions,
            "tamari" => Preset::Tamari,
            "ideals" => Preset::Ideals,
            "small" => Preset::Small,
            "all" => Preset::All,
            _ => {
                return Err(Error::PreconditionViolated(format!(
                    "unknown scope `{s}`; expected one of {}",
                    Preset::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Preset::Ns,
            Preset::Ns6,
            Preset::Partitions,
            Preset::Tamari,
            Preset::Ideals,
            Preset::Small,
            Preset::All,
        ]
        .iter()
        .position(|p| p == self)
        .unwrap();
        f.write_str(Preset::NAMES[i])
    }
}

/// A poset under test, with the labelling its family comes with.
#[derive(Clone, Debug)]
pub struct Subject {
    pub name: String,
    pub poset: Poset,
    pub labelling: Option<EdgeLabelling>,
    pub family: Option<PartitionLattice>,
}

impl Subject {
    fn plain(name: String, poset: Poset) -> Self {
        Subject {
            name,
            poset,
            labelling: None,
            family: None,
        }
    }

    fn partitions(family: PartitionLattice) -> Self {
        Subject {
            name: format!("{}_{}", family.kind, family.n),
            poset: family.poset.clone(),
            labelling: Some(family.labelling.clone()),
            family: Some(family),
        }
    }

    fn family(&self) -> std::result::Result<&PartitionLattice, Failure> {
        self.family.as_ref().ok_or_else(|| Failure::plain("not a partition family"))
    }

    fn labelling(&self) -> std::result::Result<&EdgeLabelling, Failure> {
        self.labelling.as_ref().ok_or_else(|| Failure::plain("no family labelling"))
    }

    /// A counterexample document carrying `lab` and an optional witness chain.
    fn document(&self, lab: Option<&EdgeLabelling>, chains: &[(&str, &Chain)]) -> Box<PosetDocument> {
        let chains: Vec<(String, Chain)> = chains.iter().map(|(k, c)| (k.to_string(), (*c).clone())).collect();
        Box::new(PosetDocument::from_poset(&self.name, &self.poset, lab, &chains))
    }
}

/// A failed claim: what went wrong and, when available, a document that
/// reproduces it.
#[derive(Debug)]
pub struct Failure {
    pub detail: String,
    pub document: Option<Box<PosetDocument>>,
}

impl Failure {
    fn plain(detail: impl Into<String>) -> Self {
        Failure {
            detail: detail.into(),
            document: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::plain(format!("error: {e}"))
    }
}

type Outcome = std::result::Result<String, Failure>;

#[derive(Debug)]
pub struct ClaimResult {
    pub claim: &'static str,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<PosetDocument>,
}

impl ClaimResult {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "claim": self.claim,
            "subject": self.subject,
            "passed": self.passed,
            "detail": self.detail,
        });
        if let Some(doc) = &self.counterexample {
            v["counterexample"] = serde_json::to_value(doc).expect("documents serialize");
        }
        v
    }
}

fn failing_report(s: &Subject, lab: &EdgeLabelling, r: &CheckReport) -> Failure {
    let chain = r.witness.as_ref().and_then(|w| w.primary_chain());
    let chains: Vec<(&str, &Chain)> = chain.iter().map(|c| ("witness", c)).collect();
    Failure {
        detail: format!("{}: {}", r.note, r.witness.as_ref().map(|w| w.to_json(&s.poset)).unwrap_or(Value::Null)),
        document: Some(s.document(Some(lab), &chains)),
    }
}

fn require(s: &Subject, lab: &EdgeLabelling, r: CheckReport) -> std::result::Result<(), Failure> {
    if r.verdict {
        Ok(())
    } else {
        Err(failing_report(s, lab, &r))
    }
}

// ---------------------------------------------------------------------------
// Labellings and left modular chains

/// Each left modular maximal chain induces an interpolating labelling whose
/// increasing maximal chain is that chain.
fn lm_chain_induces_interpolating(s: &Subject) -> Outcome {
    let p = &s.poset;
    let (bot, top) = p.bounds()?;
    let chains = find_left_modular_chains(p)?;
    if chains.is_empty() {
        return Err(Failure::plain("no left modular maximal chain"));
    }
    for c in &chains {
        let lab = induce_labelling(p, c, &LabelSet::standard(c.length()))?;
        require(s, &lab, check_interpolating(p, &lab)?)?;
        if increasing_chain(p, &lab, bot, top)?.as_ref() != Some(c) {
            return Err(Failure {
                detail: format!("increasing chain differs from {}", c.display(p)),
                document: Some(s.document(Some(&lab), &[("M", c)])),
            });
        }
    }
    Ok(format!("{} chains", chains.len()))
}

/// The increasing maximal chain of the family labelling, or of every
/// induced labelling, is left modular.
fn increasing_chain_is_left_modular(s: &Subject) -> Outcome {
    let p = &s.poset;
    let (bot, top) = p.bounds()?;
    let mut labellings = Vec::new();
    if let Some(lab) = &s.labelling {
        labellings.push(lab.clone());
    }
    for c in find_left_modular_chains(p)? {
        labellings.push(induce_labelling(p, &c, &LabelSet::standard(c.length()))?);
    }
    for lab in &labellings {
        let m = increasing_chain(p, lab, bot, top)?.ok_or_else(|| Failure {
            detail: "no unique increasing maximal chain".into(),
            document: Some(s.document(Some(lab), &[])),
        })?;
        let r = check_chain_left_modular(p, &m)?;
        if !r.verdict {
            return Err(Failure {
                detail: r.note,
                document: Some(s.document(Some(lab), &[("M", &m)])),
            });
        }
    }
    Ok(format!("{} labellings", labellings.len()))
}

/// Re-inducing from the increasing chain with its own labels gives back the
/// labelling.
fn reinduction_reproduces_labelling(s: &Subject) -> Outcome {
    let p = &s.poset;
    let (bot, top) = p.bounds()?;
    let mut labellings = Vec::new();
    if let Some(lab) = &s.labelling {
        labellings.push(lab.clone());
    } else {
        for c in find_left_modular_chains(p)? {
            let n = c.length();
            let ls = LabelSet::new((1..=n as i64).map(|i| 10 * i).collect())?;
            labellings.push(induce_labelling(p, &c, &ls)?);
        }
    }
    for lab in &labellings {
        let m = increasing_chain(p, lab, bot, top)?.ok_or_else(|| Failure::plain("no increasing chain"))?;
        let word = lab.word(p, &m).expect("chain edges are covers");
        let again = induce_labelling(p, &m, &LabelSet::new(word)?)?;
        if &again != lab {
            let (a, b, _) = lab
                .edges(p)
                .zip(again.edges(p))
                .find(|(x, y)| x != y)
                .map(|(x, _)| x)
                .expect("labellings differ somewhere");
            return Err(Failure {
                detail: format!("edge `{}` -> `{}` changes", p.name(a), p.name(b)),
                document: Some(s.document(Some(lab), &[("M", &m)])),
            });
        }
    }
    Ok(format!("{} labellings", labellings.len()))
}

/// The three descriptions of the induced label index agree on every edge.
fn index_formulas_agree(s: &Subject) -> Outcome {
    let p = &s.poset;
    let chains = find_left_modular_chains(p)?;
    let mut edges = 0;
    for c in &chains {
        for (y, z) in p.cover_pairs() {
            let ix = edge_indices(p, c, y, z)?;
            if ix.defining != ix.join_form || ix.defining != ix.meet_form {
                return Err(Failure {
                    detail: format!("edge `{}` -> `{}`: {ix:?}", p.name(y), p.name(z)),
                    document: Some(s.document(None, &[("M", c)])),
                });
            }
            edges += 1;
        }
    }
    Ok(format!("{edges} edges over {} chains", chains.len()))
}

/// Basic replacements take every maximal chain of every interval to the
/// interval's increasing chain.
fn basic_replacement_reaches_increasing(s: &Subject) -> Outcome {
    let p = &s.poset;
    let lab = s.labelling()?;
    let mut count = 0;
    for y in p.elements() {
        for z in p.above(y).ones() {
            let target = increasing_chain(p, lab, y, z)?;
            for ch in p.maximal_chains(y, z)? {
                let reduced = basic_replacement_reduce(p, lab, &ch)?;
                if Some(&reduced.chain) != target.as_ref() {
                    return Err(Failure {
                        detail: format!("{} reduces to {}", ch.display(p), reduced.chain.display(p)),
                        document: Some(s.document(Some(lab), &[("start", &ch)])),
                    });
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} chains"))
}

/// `δ`, shifted down by one, is an `S_{n-1}` EL-labelling.
fn shifted_delta_is_sn_el(s: &Subject) -> Outcome {
    let lab = s.labelling()?.shifted(-1);
    require(s, &lab, check_sn_el_labelling(&s.poset, &lab)?)?;
    Ok("S_n EL".into())
}

// ---------------------------------------------------------------------------
// Non-straddling partitions

fn gamma_is_interpolating(s: &Subject) -> Outcome {
    let lab = s.labelling()?;
    require(s, lab, check_el_labelling(&s.poset, lab)?)?;
    require(s, lab, check_interpolating(&s.poset, lab)?)?;
    Ok("EL and interpolating".into())
}

fn gamma_definitions_agree(s: &Subject) -> Outcome {
    let ns = s.family()?;
    let pi = partition_lattice(ns.n)?;
    let r = crate::families::check_gamma_definitions(ns, &pi)?;
    if r.verdict {
        Ok(format!("{} edges", ns.poset.cover_count()))
    } else {
        Err(Failure::plain(r.note))
    }
}

/// The increasing maximal chain is `0̂ < [2] < ... < [n]`.
fn increasing_chain_is_initial_segments(s: &Subject) -> Outcome {
    let fam = s.family()?;
    let (bot, top) = fam.poset.bounds()?;
    let got = increasing_chain(&fam.poset, &fam.labelling, bot, top)?;
    if got.as_ref() == Some(&fam.m_chain()) {
        Ok(fam.m_chain().display(&fam.poset).to_string())
    } else {
        Err(Failure::plain(format!(
            "increasing chain is {:?}",
            got.map(|c| c.display(&fam.poset).to_string())
        )))
    }
}

fn initial_segment_chain_is_left_modular(s: &Subject) -> Outcome {
    let fam = s.family()?;
    let r = check_chain_left_modular(&fam.poset, &fam.m_chain())?;
    if r.verdict {
        Ok(r.note)
    } else {
        Err(Failure::plain(r.note))
    }
}

/// For `y < z`, with `l` the least `δ`-label of `[y, z]` in `Π_n`: exactly
/// one upper cover `w <= z` of `y` has `γ(y, w) = l`, and `l` appears on
/// every maximal chain of `[y, z]`.
fn least_label_properties(s: &Subject) -> Outcome {
    let ns = s.family()?;
    let pi = partition_lattice(ns.n)?;
    let p = &ns.poset;
    let lab = &ns.labelling;
    let mut intervals = 0;
    for y in p.elements() {
        for z in p.above(y).ones().filter(|&z| z != y) {
            let least = gamma_via_pi(&pi, ns.partition(y), ns.partition(z))?;
            let hits = p
                .upper_covers(y)
                .iter()
                .filter(|&&w| p.leq(w, z) && lab.label(p, y, w) == Some(least))
                .count();
            if hits != 1 {
                return Err(Failure::plain(format!(
                    "[{}, {}]: {hits} edges from the bottom carry {least}",
                    p.name(y),
                    p.name(z)
                )));
            }
            for ch in p.maximal_chains(y, z)? {
                if !lab.word(p, &ch).unwrap().contains(&least) {
                    return Err(Failure {
                        detail: format!("{} misses label {least}", ch.display(p)),
                        document: Some(s.document(Some(lab), &[("witness", &ch)])),
                    });
                }
            }
            intervals += 1;
        }
    }
    Ok(format!("{intervals} intervals"))
}

/// `ns_join_closure` equals the least common upper bound found by scanning
/// every non-straddling partition.
fn ns_join_matches_oracle(s: &Subject) -> Outcome {
    let ns = s.family()?;
    let parts = ns.partitions();
    let mut pairs = 0;
    for y in parts {
        for z in parts {
            let uppers: Vec<&SetPartition> = parts.iter().filter(|u| y.refines(u) && z.refines(u)).collect();
            let least = uppers.iter().find(|u| uppers.iter().all(|v| u.refines(v)));
            let got = ns_join_closure(y, z)?;
            if least != Some(&&got) {
                return Err(Failure::plain(format!("{y} ∨ {z}: closure {got}, oracle {least:?}")));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

/// The `Π_n` meet of two non-straddling partitions is non-straddling and is
/// their meet in `NS_n`.
fn ns_meet_is_pi_meet(s: &Subject) -> Outcome {
    let ns = s.family()?;
    let p = &ns.poset;
    for a in p.elements() {
        for b in p.elements() {
            let m = ns.partition(a).pi_meet(ns.partition(b));
            if m.is_straddling() || p.meet(a, b) != ns.elem(&m) {
                return Err(Failure::plain(format!("{} ∧ {}", p.name(a), p.name(b))));
            }
        }
    }
    Ok(format!("{} pairs", p.len() * p.len()))
}

/// If merging the first two of a set of blocks forces all of them together,
/// merging any two of them does.
fn merging_any_two_forces_all(s: &Subject) -> Outcome {
    let ns = s.family()?;
    let mut cases = 0;
    for y in ns.partitions() {
        let minima = y.block_minima();
        for mask in 0u32..(1 << minima.len()) {
            let ls: Vec<usize> = (0..minima.len()).filter(|i| mask >> i & 1 == 1).map(|i| minima[i]).collect();
            if ls.len() < 3 {
                continue;
            }
            let all = ns_merge(y, &ls)?;
            if ns_merge(y, &ls[..2])? != all {
                continue;
            }
            for i in 0..ls.len() {
                for j in i + 1..ls.len() {
                    if ns_merge(y, &[ls[i], ls[j]])? != all {
                        return Err(Failure::plain(format!(
                            "y = {y}, minima {ls:?}: merging {} and {} gives {}",
                            ls[i],
                            ls[j],
                            ns_merge(y, &[ls[i], ls[j]])?
                        )));
                    }
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} block sets"))
}

// ---------------------------------------------------------------------------
// Closures and supersolvability

/// For every chain `c`, `R(c)` equals `Q(m)` for the increasing extension
/// `m` of `c`, and is a distributive lattice.
fn closure_identity(s: &Subject) -> Outcome {
    let fam = s.family()?;
    let p = &fam.poset;
    let lab = &fam.labelling;
    let m_chain = fam.m_chain();
    let chains = all_chains(p, CHAIN_CAP)?;
    for c in &chains {
        let m = increasing_extension(p, lab, c)?;
        let r = r_closure(p, &m_chain, c)?;
        let q = q_closure(p, lab, &m_chain, &m)?;
        let dist = is_distributive_lattice(&r.subposet.poset);
        if r.elements != q.elements || !dist.verdict {
            return Err(Failure {
                detail: format!(
                    "chain {}: |R| = {}, |Q| = {}, distributive = {}",
                    c.display(p),
                    r.elements.len(),
                    q.elements.len(),
                    dist.verdict
                ),
                document: Some(s.document(Some(lab), &[("M", &m_chain), ("c", c)])),
            });
        }
    }
    Ok(format!("{} chains", chains.len()))
}

fn supersolvable(s: &Subject) -> Outcome {
    let r = is_supersolvable(&s.poset)?;
    if r.verdict {
        Ok(r.note)
    } else {
        Err(Failure {
            detail: r.note,
            document: Some(s.document(None, &[])),
        })
    }
}

fn not_supersolvable(s: &Subject) -> Outcome {
    let r = is_supersolvable(&s.poset)?;
    if r.verdict {
        Err(Failure::plain(r.note))
    } else {
        Ok(r.note)
    }
}

/// Reports, as data, whether each `Q(m)` built from a left modular chain is
/// a lattice and whether it is distributive.
fn q_closure_lattice_data(s: &Subject) -> Outcome {
    let p = &s.poset;
    let (bot, top) = p.bounds()?;
    let chains = find_left_modular_chains(p)?;
    let m_chain = chains.first().ok_or_else(|| Failure::plain("no left modular chain"))?;
    let lab = induce_labelling(p, m_chain, &LabelSet::standard(m_chain.length()))?;
    let (mut total, mut lattices, mut distributive) = (0, 0, 0);
    for m in p.maximal_chains(bot, top)? {
        let q = q_closure(p, &lab, m_chain, &m)?;
        total += 1;
        lattices += is_lattice(&q.subposet.poset) as usize;
        distributive += is_distributive_lattice(&q.subposet.poset).verdict as usize;
    }
    Ok(format!("{total} closures: {lattices} lattices, {distributive} distributive"))
}

/// `S_n` EL-labelling decided from induced labellings with a search fallback.
pub fn has_sn_el_labelling(p: &Poset) -> Result<bool> {
    let n = p.graded_rank()?.ok_or(Error::NotGraded)?;
    for c in find_left_modular_chains(p)? {
        let lab = induce_labelling(p, &c, &LabelSet::standard(n))?;
        if check_sn_el_labelling(p, &lab)?.verdict {
            return Ok(true);
        }
    }
    Ok(search_sn_el_labelling(p, SEARCH_CAP)?.is_some())
}

/// `S_n` EL-labellable, left modular and supersolvable agree.
fn three_way_equivalence(s: &Subject) -> Outcome {
    let p = &s.poset;
    let sn = has_sn_el_labelling(p)?;
    let lm = !find_left_modular_chains(p)?.is_empty();
    let ss = is_supersolvable(p)?.verdict;
    let detail = format!("sn-el {sn}, left modular {lm}, supersolvable {ss}");
    if sn == lm && lm == ss {
        Ok(detail)
    } else {
        Err(Failure {
            detail,
            document: Some(s.document(None, &[])),
        })
    }
}

// ---------------------------------------------------------------------------

type Claim = (&'static str, fn(&Subject) -> Outcome);

const ROUND_TRIPS: [Claim; 3] = [
    ("left-modular-chain-induces-interpolating", lm_chain_induces_interpolating),
    ("increasing-chain-is-left-modular", increasing_chain_is_left_modular),
    ("index-formulas-agree", index_formulas_agree),
];

fn tasks_for(preset: Preset) -> Result<Vec<(Subject, Vec<Claim>)>> {
    let mut out = Vec::new();
    match preset {
        Preset::Ns | Preset::Ns6 => {
            let sizes: Vec<usize> = if preset == Preset::Ns { vec![3, 4, 5] } else { vec![6] };
            for n in sizes {
                let s = Subject::partitions(nonstraddling_lattice(n)?);
                let mut claims: Vec<Claim> = vec![
                    ("gamma-is-interpolating", gamma_is_interpolating),
                    ("gamma-definitions-agree", gamma_definitions_agree),
                    ("least-label-properties", least_label_properties),
                    ("increasing-chain-is-initial-segments", increasing_chain_is_initial_segments),
                    ("reinduction-reproduces-labelling", reinduction_reproduces_labelling),
                ];
                claims.extend(ROUND_TRIPS);
                claims.extend([
                    ("initial-segment-chain-is-left-modular", initial_segment_chain_is_left_modular as fn(&Subject) -> Outcome),
                    ("ns-join-matches-oracle", ns_join_matches_oracle),
                    ("ns-meet-is-pi-meet", ns_meet_is_pi_meet),
                    ("merging-any-two-forces-all", merging_any_two_forces_all),
                ]);
                if n == 4 {
                    claims.push(("basic-replacement-reaches-increasing", basic_replacement_reaches_increasing));
                }
                out.push((s, claims));
            }
        }
        Preset::Partitions => {
            for n in 1..=4 {
                for fam in [partition_lattice(n)?, noncrossing_lattice(n)?] {
                    let kind = fam.kind;
                    let s = Subject::partitions(fam);
                    let mut claims: Vec<Claim> = ROUND_TRIPS.to_vec();
                    claims.extend([
                        ("shifted-delta-is-sn-el", shifted_delta_is_sn_el as fn(&Subject) -> Outcome),
                        ("increasing-chain-is-initial-segments", increasing_chain_is_initial_segments),
                        ("reinduction-reproduces-labelling", reinduction_reproduces_labelling),
                        ("supersolvable", supersolvable),
                    ]);
                    if n == 4 {
                        claims.push(("closure-identity", closure_identity));
                        if kind == PartitionKind::All {
                            claims.push(("basic-replacement-reaches-increasing", basic_replacement_reaches_increasing));
                        }
                    }
                    out.push((s, claims));
                }
            }
        }
        Preset::Tamari => {
            for n in [3, 4] {
                let s = Subject::plain(format!("T_{n}"), tamari_lattice(n)?);
                let mut claims: Vec<Claim> = ROUND_TRIPS.to_vec();
                claims.extend([
                    ("not-supersolvable", not_supersolvable as fn(&Subject) -> Outcome),
                    ("q-closure-lattice-data", q_closure_lattice_data),
                ]);
                if n == 4 {
                    claims.push(("reinduction-reproduces-labelling", reinduction_reproduces_labelling));
                }
                out.push((s, claims));
            }
        }
        Preset::Ideals => {
            for k in 1..=4 {
                for (i, q) in enumerate_posets(k)?.into_iter().enumerate() {
                    let j = ideal_lattice(&q, &natural_extension(&q))?;
                    let s = Subject {
                        name: format!("J(Q{k}.{i})"),
                        poset: j.poset,
                        labelling: Some(j.labelling),
                        family: None,
                    };
                    let mut claims: Vec<Claim> = ROUND_TRIPS.to_vec();
                    claims.extend([
                        ("ideal-labelling-is-sn-el", ideal_labelling_is_sn_el as fn(&Subject) -> Outcome),
                        ("reinduction-reproduces-labelling", reinduction_reproduces_labelling),
                    ]);
                    out.push((s, claims));
                }
            }
        }
        Preset::Small => {
            for (i, p) in enumerate_bounded_posets(6, true)?.into_iter().enumerate() {
                let s = Subject::plain(format!("B{}.{i}", p.len()), p);
                out.push((s, vec![("three-way-equivalence", three_way_equivalence as fn(&Subject) -> Outcome)]));
            }
        }
        Preset::All => unreachable!("expanded before use"),
    }
    Ok(out)
}

fn ideal_labelling_is_sn_el(s: &Subject) -> Outcome {
    let lab = s.labelling()?;
    require(s, lab, check_sn_el_labelling(&s.poset, lab)?)?;
    Ok("S_n EL".into())
}

/// Runs every claim of every preset; results are sorted by claim, then subject.
pub fn run_claims(presets: &[Preset]) -> Result<Vec<ClaimResult>> {
    let mut expanded: Vec<Preset> = presets.iter().flat_map(|p| p.expand()).collect();
    expanded.sort();
    expanded.dedup();
    let mut tasks = Vec::new();
    for preset in expanded {
        for (subject, claims) in tasks_for(preset)? {
            let subject = std::sync::Arc::new(subject);
            for claim in claims {
                tasks.push((subject.clone(), claim));
            }
        }
    }
    let mut results: Vec<ClaimResult> = tasks
        .par_iter()
        .map(|(subject, (name, run))| {
            let (passed, detail, counterexample) = match run(subject) {
                Ok(detail) => (true, detail, None),
                Err(f) => (false, f.detail, f.document.map(|d| *d)),
            };
            ClaimResult {
                claim: name,
                subject: subject.name.clone(),
                passed,
                detail,
                counterexample,
            }
        })
        .collect();
    results.sort_by(|a, b| (a.claim, &a.subject).cmp(&(b.claim, &b.subject)));
    results.dedup_by(|a, b| a.claim == b.claim && a.subject == b.subject);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_names_round_trip() {
        for name in Preset::NAMES {
            assert_eq!(name.parse::<Preset>().unwrap().to_string(), name);
        }
        assert!("nope".parse::<Preset>().is_err());
    }

    fn subject(covers: &[(&str, &str, i64)]) -> Subject {
        let mut names: Vec<&str> = covers.iter().flat_map(|&(a, b, _)| [a, b]).collect();
        names.sort();
        names.dedup();
        let pairs: Vec<(&str, &str)> = covers.iter().map(|&(a, b, _)| (a, b)).collect();
        let poset = Poset::build(&names, &pairs, crate::poset::Reduction::Strict).unwrap();
        let labelling = EdgeLabelling::from_fn(&poset, |a, b| {
            covers
                .iter()
                .find(|&&(x, y, _)| poset.name(a) == x && poset.name(b) == y)
                .unwrap()
                .2
        });
        Subject {
            name: "broken".into(),
            poset,
            labelling: Some(labelling),
            family: None,
        }
    }

    #[test]
    fn counterexamples_replay() {
        let square = subject(&[("0", "a", 1), ("0", "b", 1), ("a", "1", 1), ("b", "1", 1)]);
        let doc = ideal_labelling_is_sn_el(&square).unwrap_err().document.unwrap();
        let loaded = PosetDocument::parse(&doc.serialize()).unwrap().load().unwrap();
        let lab = loaded.labelling.unwrap();
        assert!(!check_sn_el_labelling(&loaded.poset, &lab).unwrap().verdict);

        let pentagon = subject(&[("0", "a", 3), ("a", "b", 1), ("b", "1", 2), ("0", "c", 1), ("c", "1", 2)]);
        let doc = increasing_chain_is_left_modular(&pentagon).unwrap_err().document.unwrap();
        let loaded = PosetDocument::parse(&doc.serialize()).unwrap().load().unwrap();
        let m = &loaded.chains["M"];
        assert_eq!(m.length(), 2);
        assert!(!check_chain_left_modular(&loaded.poset, m).unwrap().verdict);
    }

    #[test]
    fn tamari_preset() {
        let results = run_claims(&[Preset::Tamari]).unwrap();
        assert!(results.iter().all(|r| r.passed), "{results:#?}");
        assert!(results.iter().any(|r| r.claim == "not-supersolvable" && r.subject == "T_4"));
    }
}
