//! Edge-labellings of Hasse diagrams: EL, `S_n` EL and interpolating checks,
//! basic replacements, and the labelling induced by a left modular chain.
//!
//! Increasing chains for the EL conditions are *weakly* increasing; the
//! interpolation condition separately demands *strictly* increasing labels.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poset::{Chain, Elem, Poset, Subposet};
use crate::report::{CheckReport, Witness};

/// An integer label on every cover edge of a poset.
///
/// Labels are stored aligned with [`Poset::upper_covers`], so a labelling is
/// only meaningful together with the poset it was built for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLabelling {
    labels: Vec<Vec<i64>>,
}

impl EdgeLabelling {
    pub fn from_fn(p: &Poset, mut f: impl FnMut(Elem, Elem) -> i64) -> Self {
        EdgeLabelling {
            labels: p
                .elements()
                .map(|a| p.upper_covers(a).iter().map(|&b| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn try_from_fn(p: &Poset, mut f: impl FnMut(Elem, Elem) -> Result<i64>) -> Result<Self> {
        let labels = p
            .elements()
            .map(|a| p.upper_covers(a).iter().map(|&b| f(a, b)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Ok(EdgeLabelling { labels })
    }

    /// Builds a labelling from `(lower, upper, label)` triples, which must
    /// cover every edge exactly once and nothing else.
    pub fn from_edges(p: &Poset, edges: impl IntoIterator<Item = (Elem, Elem, i64)>) -> Result<Self> {
        let mut slots: Vec<Vec<Option<i64>>> =
            p.elements().map(|a| vec![None; p.upper_covers(a).len()]).collect();
        for (a, b, l) in edges {
            p.check_elem(a)?;
            p.check_elem(b)?;
            let k = p.upper_covers(a).binary_search(&b).map_err(|_| {
                Error::InvalidLabelling(format!("`{}` -> `{}` is not a cover", p.name(a), p.name(b)))
            })?;
            if slots[a][k].replace(l).is_some() {
                return Err(Error::InvalidLabelling(format!(
                    "edge `{}` -> `{}` labelled twice",
                    p.name(a),
                    p.name(b)
                )));
            }
        }
        let labels = slots
            .into_iter()
            .enumerate()
            .map(|(a, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(k, l)| {
                        l.ok_or_else(|| {
                            Error::InvalidLabelling(format!(
                                "edge `{}` -> `{}` has no label",
                                p.name(a),
                                p.name(p.upper_covers(a)[k])
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeLabelling { labels })
    }

    /// Whether the storage shape matches the covers of `p`.
    pub fn fits(&self, p: &Poset) -> bool {
        self.labels.len() == p.len()
            && p.elements().all(|a| self.labels[a].len() == p.upper_covers(a).len())
    }

    fn ensure_fits(&self, p: &Poset) -> Result<()> {
        if self.fits(p) {
            Ok(())
        } else {
            Err(Error::InvalidLabelling("labelling does not match the poset".into()))
        }
    }

    /// Label of the edge `a ⋖ b`.
    pub fn label(&self, p: &Poset, a: Elem, b: Elem) -> Option<i64> {
        let k = p.upper_covers(a).binary_search(&b).ok()?;
        Some(self.labels[a][k])
    }

    fn at(&self, p: &Poset, a: Elem, b: Elem) -> i64 {
        self.label(p, a, b).expect("not a cover edge")
    }

    pub fn edges<'a>(&'a self, p: &'a Poset) -> impl Iterator<Item = (Elem, Elem, i64)> + 'a {
        p.cover_pairs().map(move |(a, b)| (a, b, self.at(p, a, b)))
    }

    /// Labels read bottom to top along an unrefinable chain.
    pub fn word(&self, p: &Poset, chain: &Chain) -> Option<Vec<i64>> {
        chain.edges().map(|(a, b)| self.label(p, a, b)).collect()
    }

    pub fn shifted(&self, delta: i64) -> Self {
        EdgeLabelling {
            labels: self
                .labels
                .iter()
                .map(|row| row.iter().map(|l| l + delta).collect())
                .collect(),
        }
    }

    /// The labelling of an induced subposet whose covers are all covers of
    /// the parent (true for intervals).
    pub fn restrict(&self, parent: &Poset, sub: &Subposet) -> Result<Self> {
        EdgeLabelling::try_from_fn(&sub.poset, |a, b| {
            let (pa, pb) = (sub.to_parent(a), sub.to_parent(b));
            self.label(parent, pa, pb).ok_or_else(|| {
                Error::InvalidLabelling(format!(
                    "`{}` -> `{}` is not a cover of the parent",
                    parent.name(pa),
                    parent.name(pb)
                ))
            })
        })
    }
}

/// A strictly increasing label set `l_1 < ... < l_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSet(Vec<i64>);

impl LabelSet {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::PreconditionViolated(
                "label set must be strictly increasing".into(),
            ));
        }
        Ok(LabelSet(values))
    }

    /// `1, 2, ..., n`.
    pub fn standard(n: usize) -> Self {
        LabelSet((1..=n as i64).collect())
    }

    /// `start, start + 1, ..., start + n - 1`.
    pub fn starting_at(start: i64, n: usize) -> Self {
        LabelSet((0..n as i64).map(|i| start + i).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `l_i`, one-based.
    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

/// Outcome of searching an interval for weakly increasing chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncreasingChains {
    None,
    Unique(Chain),
    Many(Chain, Chain),
}

/// All weakly increasing unrefinable chains from `y` to `z`, up to two.
pub fn increasing_chains(p: &Poset, lab: &EdgeLabelling, y: Elem, z: Elem) -> Result<IncreasingChains> {
    lab.ensure_fits(p)?;
    p.check_elem(y)?;
    p.check_elem(z)?;
    if !p.leq(y, z) {
        return Err(Error::NotComparable(p.name(y).into(), p.name(z).into()));
    }
    let mut found = Vec::new();
    let mut path = vec![y];
    inc_dfs(p, lab, z, i64::MIN, &mut path, &mut found);
    let mut it = found.into_iter().map(Chain::from_vec);
    Ok(match (it.next(), it.next()) {
        (None, _) => IncreasingChains::None,
        (Some(c), None) => IncreasingChains::Unique(c),
        (Some(a), Some(b)) => IncreasingChains::Many(a, b),
    })
}

fn inc_dfs(
    p: &Poset,
    lab: &EdgeLabelling,
    z: Elem,
    floor: i64,
    path: &mut Vec<Elem>,
    found: &mut Vec<Vec<Elem>>,
) {
    if found.len() >= 2 {
        return;
    }
    let v = *path.last().unwrap();
    if v == z {
        found.push(path.clone());
        return;
    }
    for &w in p.upper_covers(v) {
        let l = lab.at(p, v, w);
        if l >= floor && p.leq(w, z) {
            path.push(w);
            inc_dfs(p, lab, z, l, path, found);
            path.pop();
        }
    }
}

/// The unique weakly increasing chain from `y` to `z`, if exactly one exists.
pub fn increasing_chain(p: &Poset, lab: &EdgeLabelling, y: Elem, z: Elem) -> Result<Option<Chain>> {
    Ok(match increasing_chains(p, lab, y, z)? {
        IncreasingChains::Unique(c) => Some(c),
        _ => None,
    })
}

/// Per-target summary of every unrefinable chain starting at a fixed `y`.
#[derive(Clone, Debug, Default)]
struct Reach {
    min_word: Vec<i64>,
    min_paths: Vec<Vec<Elem>>, // at most two
    min_count: u64,
    inc_paths: Vec<Vec<Elem>>, // at most two
}

fn scan_from(p: &Poset, lab: &EdgeLabelling, y: Elem) -> Vec<Option<Reach>> {
    let mut reach: Vec<Option<Reach>> = vec![None; p.len()];
    let mut path = vec![y];
    let mut word = Vec::new();
    scan_dfs(p, lab, &mut path, &mut word, true, &mut reach);
    reach
}

fn scan_dfs(
    p: &Poset,
    lab: &EdgeLabelling,
    path: &mut Vec<Elem>,
    word: &mut Vec<i64>,
    increasing: bool,
    reach: &mut [Option<Reach>],
) {
    let v = *path.last().unwrap();
    if path.len() > 1 {
        let r = reach[v].get_or_insert_with(Reach::default);
        if r.min_count == 0 || *word < r.min_word {
            r.min_word = word.clone();
            r.min_paths = vec![path.clone()];
            r.min_count = 1;
        } else if *word == r.min_word {
            r.min_count += 1;
            if r.min_paths.len() < 2 {
                r.min_paths.push(path.clone());
            }
        }
        if increasing && r.inc_paths.len() < 2 {
            r.inc_paths.push(path.clone());
        }
    }
    for &w in p.upper_covers(v) {
        let l = lab.at(p, v, w);
        let still = increasing && word.last().is_none_or(|&prev| prev <= l);
        path.push(w);
        word.push(l);
        scan_dfs(p, lab, path, word, still, reach);
        word.pop();
        path.pop();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ElFault {
    NoIncreasing,
    ManyIncreasing,
    NotLexFirst,
}

impl ElFault {
    fn note(self) -> &'static str {
        match self {
            ElFault::NoIncreasing => "interval has no increasing chain",
            ElFault::ManyIncreasing => "interval has two increasing chains",
            ElFault::NotLexFirst => "increasing chain is not strictly lexicographically first",
        }
    }
}

fn el_failure(y: Elem, z: Elem, r: &Reach) -> Option<(ElFault, Witness)> {
    let chains = |ps: &[Vec<Elem>]| ps.iter().cloned().map(Chain::from_vec).collect::<Vec<_>>();
    match r.inc_paths.len() {
        0 => Some((
            ElFault::NoIncreasing,
            Witness::Interval { y, z, chains: chains(&r.min_paths[..1]) },
        )),
        1 => {
            let inc = &r.inc_paths[0];
            if r.min_count == 1 && r.min_paths[0] == *inc {
                None
            } else {
                let other = r.min_paths.iter().find(|c| *c != inc).cloned().unwrap_or_default();
                Some((
                    ElFault::NotLexFirst,
                    Witness::Interval { y, z, chains: chains(&[inc.clone(), other]) },
                ))
            }
        }
        _ => Some((
            ElFault::ManyIncreasing,
            Witness::Interval { y, z, chains: chains(&r.inc_paths) },
        )),
    }
}

fn triple_ok(p: &Poset, lab: &EdgeLabelling, y: Elem, u: Elem, z: Elem, inc: Option<&[Elem]>) -> bool {
    let lower = lab.at(p, y, u);
    let upper = lab.at(p, u, z);
    if lower < upper {
        return true;
    }
    let Some(inc) = inc else { return false };
    let word: Vec<i64> = inc.windows(2).map(|w| lab.at(p, w[0], w[1])).collect();
    word.windows(2).all(|w| w[0] < w[1])
        && word.first() == Some(&upper)
        && word.last() == Some(&lower)
}

struct ScanOutcome {
    el: Option<(ElFault, Witness)>,
    triple: Option<Witness>,
}

fn scan_all(p: &Poset, lab: &EdgeLabelling, with_triples: bool) -> Vec<ScanOutcome> {
    p.elements()
        .into_par_iter()
        .map(|y| {
            let reach = scan_from(p, lab, y);
            let el = p
                .above(y)
                .ones()
                .filter(|&z| z != y)
                .find_map(|z| el_failure(y, z, reach[z].as_ref().expect("reachable")));
            let mut triple = None;
            if with_triples {
                'outer: for &u in p.upper_covers(y) {
                    for &z in p.upper_covers(u) {
                        let r = reach[z].as_ref().expect("reachable");
                        let inc = (r.inc_paths.len() == 1).then(|| r.inc_paths[0].as_slice());
                        if !triple_ok(p, lab, y, u, z, inc) {
                            triple = Some(Witness::Triple { y, u, z });
                            break 'outer;
                        }
                    }
                }
            }
            ScanOutcome { el, triple }
        })
        .collect()
}

/// Unique increasing chain per interval, strictly lexicographically first.
pub fn check_el_labelling(p: &Poset, lab: &EdgeLabelling) -> Result<CheckReport> {
    lab.ensure_fits(p)?;
    p.bounds()?;
    let outcomes = scan_all(p, lab, false);
    Ok(match outcomes.into_iter().find_map(|o| o.el) {
        Some((fault, w)) => CheckReport::fail(w, fault.note()),
        None => CheckReport::pass("EL-labelling"),
    })
}

/// EL plus: every `y ⋖ u ⋖ z` has increasing labels or is explained by a
/// strictly increasing chain running from `γ(u,z)` to `γ(y,u)`.
pub fn check_interpolating(p: &Poset, lab: &EdgeLabelling) -> Result<CheckReport> {
    lab.ensure_fits(p)?;
    p.bounds()?;
    let outcomes = scan_all(p, lab, true);
    if let Some((fault, w)) = outcomes.iter().find_map(|o| o.el.clone()) {
        return Ok(CheckReport::fail(w, fault.note()));
    }
    Ok(match outcomes.into_iter().find_map(|o| o.triple) {
        Some(w) => CheckReport::fail(w, "descent not explained by a strictly increasing chain"),
        None => CheckReport::pass("interpolating EL-labelling"),
    })
}

/// Re-checks the interpolation condition for one length-two chain.
pub fn triple_is_interpolating(p: &Poset, lab: &EdgeLabelling, y: Elem, u: Elem, z: Elem) -> Result<bool> {
    lab.ensure_fits(p)?;
    if !p.covers(y, u) || !p.covers(u, z) {
        return Err(Error::InvalidChain("expected y ⋖ u ⋖ z".into()));
    }
    let inc = increasing_chain(p, lab, y, z)?;
    Ok(triple_ok(p, lab, y, u, z, inc.as_ref().map(|c| c.nodes())))
}

/// Every maximal chain reads a permutation of `1..=n` and every interval has
/// a unique increasing chain.
pub fn check_sn_el_labelling(p: &Poset, lab: &EdgeLabelling) -> Result<CheckReport> {
    lab.ensure_fits(p)?;
    let (bot, top) = p.bounds()?;
    let n = p.graded_rank()?.ok_or(Error::NotGraded)?;
    let want: Vec<i64> = (1..=n as i64).collect();
    let mut bad = None;
    let mut path = vec![bot];
    let mut word = Vec::new();
    perm_dfs(p, lab, top, &want, &mut path, &mut word, &mut bad);
    if let Some(c) = bad {
        return Ok(CheckReport::fail(
            Witness::Chain(Chain::from_vec(c)),
            format!("maximal chain is not labelled by a permutation of 1..={n}"),
        ));
    }
    let outcomes = scan_all(p, lab, false);
    // the lexicographic condition is implied here, so only uniqueness is checked
    let unique_failure = outcomes.into_iter().find_map(|o| match o.el {
        Some((fault, w)) if fault != ElFault::NotLexFirst => Some((fault, w)),
        _ => None,
    });
    Ok(match unique_failure {
        Some((fault, w)) => CheckReport::fail(w, fault.note()),
        None => CheckReport::pass(format!("S_{n} EL-labelling")),
    })
}

fn perm_dfs(
    p: &Poset,
    lab: &EdgeLabelling,
    top: Elem,
    want: &[i64],
    path: &mut Vec<Elem>,
    word: &mut Vec<i64>,
    bad: &mut Option<Vec<Elem>>,
) {
    if bad.is_some() {
        return;
    }
    let v = *path.last().unwrap();
    if v == top {
        let mut sorted = word.clone();
        sorted.sort_unstable();
        if sorted != want {
            *bad = Some(path.clone());
        }
        return;
    }
    for &w in p.upper_covers(v) {
        path.push(w);
        word.push(lab.at(p, v, w));
        perm_dfs(p, lab, top, want, path, word, bad);
        word.pop();
        path.pop();
    }
}

/// Result of repeatedly applying basic replacements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub chain: Chain,
    pub steps: usize,
}

/// Replaces descents by increasing chains until none is left.
///
/// Each step must strictly decrease the label word lexicographically; a
/// violation means the labelling is not EL and is reported as such.
pub fn basic_replacement_reduce(p: &Poset, lab: &EdgeLabelling, ch: &Chain) -> Result<Reduction> {
    lab.ensure_fits(p)?;
    if !ch.is_unrefinable(p) {
        return Err(Error::InvalidChain("expected an unrefinable chain".into()));
    }
    let mut nodes = ch.nodes().to_vec();
    let mut word = lab.word(p, ch).expect("unrefinable");
    let mut steps = 0;
    while let Some(i) = (1..nodes.len().saturating_sub(1)).find(|&i| word[i - 1] > word[i]) {
        let (lo, hi) = (nodes[i - 1], nodes[i + 1]);
        let inc = match increasing_chains(p, lab, lo, hi)? {
            IncreasingChains::Unique(c) => c,
            _ => {
                return Err(Error::NotElLabelled(format!(
                    "[{}, {}] has no unique increasing chain",
                    p.name(lo),
                    p.name(hi)
                )))
            }
        };
        let mut next = nodes[..i - 1].to_vec();
        next.extend_from_slice(inc.nodes());
        next.extend_from_slice(&nodes[i + 2..]);
        let next_word = lab.word(p, &Chain::from_vec(next.clone())).expect("unrefinable");
        if next_word >= word {
            return Err(Error::NotElLabelled(format!(
                "replacement at `{}` did not decrease the label word",
                p.name(nodes[i])
            )));
        }
        nodes = next;
        word = next_word;
        steps += 1;
    }
    Ok(Reduction {
        chain: Chain::from_vec(nodes),
        steps,
    })
}

fn require_maximal(p: &Poset, m: &Chain) -> Result<()> {
    if m.is_maximal(p) {
        Ok(())
    } else {
        Err(Error::InvalidChain("expected a maximal chain".into()))
    }
}

fn not_lm(p: &Poset, what: &str, a: Elem, b: Elem) -> Error {
    Error::NotLeftModular(format!("{what} of `{}` and `{}` is undefined", p.name(a), p.name(b)))
}

/// `(x ∨ y) ∧_y z` with undefined operands reported as [`Error::NotLeftModular`].
fn lower_or_err(p: &Poset, x: Elem, y: Elem, z: Elem) -> Result<Elem> {
    let j = p.join(x, y).ok_or_else(|| not_lm(p, "join", x, y))?;
    p.rel_meet_unchecked(y, j, z)
        .ok_or_else(|| not_lm(p, "relative meet", j, z))
}

/// The three characterizations of the induced label index of an edge `y ⋖ z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeIndices {
    /// Least `i` with `(x_i ∨ y) ∧_y z = z`.
    pub defining: usize,
    /// `min { j : x_j ∨ y >= z }`.
    pub join_form: usize,
    /// `max { j + 1 : x_j ∧ z <= y }`.
    pub meet_form: usize,
}

/// Index computations behind [`induce_labelling`] for a single edge.
pub fn edge_indices(p: &Poset, m: &Chain, y: Elem, z: Elem) -> Result<EdgeIndices> {
    if !p.covers(y, z) {
        return Err(Error::PreconditionViolated(format!(
            "`{}` -> `{}` is not a cover",
            p.name(y),
            p.name(z)
        )));
    }
    let xs = m.nodes();
    let mut values = Vec::with_capacity(xs.len());
    for &x in xs {
        values.push(lower_or_err(p, x, y, z)?);
    }
    let defining = values
        .iter()
        .position(|&v| v == z)
        .ok_or_else(|| Error::NotLeftModular("edge never reached by the chain".into()))?;
    if values[defining..].iter().any(|&v| v != z) {
        return Err(Error::NotLeftModular(format!(
            "induced sequence on `{}` -> `{}` is not monotone",
            p.name(y),
            p.name(z)
        )));
    }
    let mut join_form = None;
    let mut meet_form = None;
    for (j, &x) in xs.iter().enumerate() {
        let jn = p.join(x, y).ok_or_else(|| not_lm(p, "join", x, y))?;
        if join_form.is_none() && p.leq(z, jn) {
            join_form = Some(j);
        }
        let mt = p.meet(x, z).ok_or_else(|| not_lm(p, "meet", x, z))?;
        if p.leq(mt, y) {
            meet_form = Some(j + 1);
        }
    }
    Ok(EdgeIndices {
        defining,
        join_form: join_form.unwrap_or(usize::MAX),
        meet_form: meet_form.unwrap_or(0),
    })
}

/// The labelling induced by a left modular maximal chain `m` and label set `ls`:
/// `y ⋖ z` gets `l_i` where `i` is the first index with `(x_i ∨ y) ∧_y z = z`.
///
/// Every edge is also checked against the join and meet characterizations
/// of the same index; any disagreement or undefined operand is an error.
pub fn induce_labelling(p: &Poset, m: &Chain, ls: &LabelSet) -> Result<EdgeLabelling> {
    require_maximal(p, m)?;
    if ls.len() != m.length() {
        return Err(Error::PreconditionViolated(format!(
            "label set has {} labels but the chain has length {}",
            ls.len(),
            m.length()
        )));
    }
    let pairs: Vec<(Elem, Elem)> = p.cover_pairs().collect();
    let indices = pairs
        .par_iter()
        .map(|&(y, z)| edge_indices(p, m, y, z))
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::with_capacity(pairs.len());
    for (&(y, z), ix) in pairs.iter().zip(indices) {
        if ix.defining != ix.join_form || ix.defining != ix.meet_form {
            return Err(Error::NotLeftModular(format!(
                "edge `{}` -> `{}`: indices {} / {} / {} disagree",
                p.name(y),
                p.name(z),
                ix.defining,
                ix.join_form,
                ix.meet_form
            )));
        }
        edges.push((y, z, ls.get(ix.defining)));
    }
    EdgeLabelling::from_edges(p, edges)
}

/// The chain `(x_i ∨ y) ∧_y z` of `[y, z]` with repeats removed, and the
/// indices `c_1 < ... < c_r` at which it steps up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedChain {
    pub chain: Chain,
    pub jumps: Vec<usize>,
}

pub fn induced_interval_chain(p: &Poset, m: &Chain, y: Elem, z: Elem) -> Result<InducedChain> {
    require_maximal(p, m)?;
    p.check_elem(y)?;
    p.check_elem(z)?;
    if !p.leq(y, z) {
        return Err(Error::NotComparable(p.name(y).into(), p.name(z).into()));
    }
    let mut nodes = vec![y];
    let mut jumps = Vec::new();
    for (i, &x) in m.nodes().iter().enumerate() {
        let v = lower_or_err(p, x, y, z)?;
        let last = *nodes.last().unwrap();
        if v != last {
            if !p.covers(last, v) {
                return Err(Error::NotLeftModular(format!(
                    "induced sequence jumps from `{}` to `{}`",
                    p.name(last),
                    p.name(v)
                )));
            }
            nodes.push(v);
            jumps.push(i);
        }
    }
    if *nodes.last().unwrap() != z {
        return Err(Error::NotLeftModular("induced sequence does not end at z".into()));
    }
    Ok(InducedChain {
        chain: Chain::from_vec(nodes),
        jumps,
    })
}

/// Exhaustive search for an `S_n` EL-labelling of a graded bounded poset.
///
/// Labels are assigned edge by edge with every maximal chain kept free of
/// repeated labels; complete assignments are checked with
/// [`check_sn_el_labelling`]. `node_cap` bounds the search tree.
pub fn search_sn_el_labelling(p: &Poset, node_cap: u64) -> Result<Option<EdgeLabelling>> {
    let (bot, top) = p.bounds()?;
    let n = p.graded_rank()?.ok_or(Error::NotGraded)?;
    let mut edges: Vec<(Elem, Elem)> = Vec::new();
    for &a in p.topological_order() {
        for &b in p.upper_covers(a) {
            edges.push((a, b));
        }
    }
    let edge_id = |a: Elem, b: Elem| edges.iter().position(|&e| e == (a, b)).unwrap();
    let chains = p.maximal_chains(bot, top)?;
    let chain_edges: Vec<Vec<usize>> = chains
        .iter()
        .map(|c| c.edges().map(|(a, b)| edge_id(a, b)).collect())
        .collect();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (ci, ce) in chain_edges.iter().enumerate() {
        for &e in ce {
            through[e].push(ci);
        }
    }

    struct Search<'a> {
        p: &'a Poset,
        n: i64,
        edges: &'a [(Elem, Elem)],
        chain_edges: &'a [Vec<usize>],
        through: &'a [Vec<usize>],
        assigned: Vec<i64>,
        nodes: u64,
        cap: u64,
    }

    impl Search<'_> {
        fn run(&mut self, k: usize) -> Result<Option<EdgeLabelling>> {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::SizeLimit("S_n EL-labelling search exceeded its node cap".into()));
            }
            if k == self.edges.len() {
                let lab = EdgeLabelling::from_edges(
                    self.p,
                    self.edges.iter().zip(&self.assigned).map(|(&(a, b), &l)| (a, b, l)),
                )?;
                return Ok(check_sn_el_labelling(self.p, &lab)?.verdict.then_some(lab));
            }
            for l in 1..=self.n {
                let clash = self.through[k].iter().any(|&ci| {
                    self.chain_edges[ci]
                        .iter()
                        .any(|&e| e != k && self.assigned[e] == l)
                });
                if clash {
                    continue;
                }
                self.assigned[k] = l;
                if let Some(found) = self.run(k + 1)? {
                    return Ok(Some(found));
                }
                self.assigned[k] = 0;
            }
            Ok(None)
        }
    }

    let mut search = Search {
        p,
        n: n as i64,
        edges: &edges,
        chain_edges: &chain_edges,
        through: &through,
        assigned: vec![0; edges.len()],
        nodes: 0,
        cap: node_cap,
    };
    search.run(0)
}
