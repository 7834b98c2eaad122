//! Joins, meets, the relative operations `∧_y` / `∨^z`, viability and left
//! modularity for arbitrary finite posets.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poset::{Chain, Elem, Poset};
use crate::report::{CheckReport, Witness};

fn least(p: &Poset, set: &FixedBitSet) -> Option<Elem> {
    set.ones().find(|&u| set.is_subset(p.above(u)))
}

fn greatest(p: &Poset, set: &FixedBitSet) -> Option<Elem> {
    set.ones().find(|&u| set.is_subset(p.below(u)))
}

impl Poset {
    /// Least common upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        if self.leq(a, b) {
            return Some(b);
        }
        if self.leq(b, a) {
            return Some(a);
        }
        let mut common = self.above(a).clone();
        common.intersect_with(self.above(b));
        least(self, &common)
    }

    /// Greatest common lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: Elem, b: Elem) -> Option<Elem> {
        if self.leq(a, b) {
            return Some(a);
        }
        if self.leq(b, a) {
            return Some(b);
        }
        let mut common = self.below(a).clone();
        common.intersect_with(self.below(b));
        greatest(self, &common)
    }

    /// `w ∧_y z`: the greatest `u` with `y <= u <= w` and `u <= z`.
    pub fn rel_meet(&self, y: Elem, w: Elem, z: Elem) -> Result<Option<Elem>> {
        for e in [y, w, z] {
            self.check_elem(e)?;
        }
        if !self.leq(y, w) || !self.leq(y, z) {
            return Err(Error::PreconditionViolated(format!(
                "`{}` must lie below `{}` and `{}`",
                self.name(y),
                self.name(w),
                self.name(z)
            )));
        }
        Ok(self.rel_meet_unchecked(y, w, z))
    }

    /// `w ∨^z y`: the least `u` with `w, y <= u <= z`.
    pub fn rel_join(&self, z: Elem, w: Elem, y: Elem) -> Result<Option<Elem>> {
        for e in [z, w, y] {
            self.check_elem(e)?;
        }
        if !self.leq(w, z) || !self.leq(y, z) {
            return Err(Error::PreconditionViolated(format!(
                "`{}` and `{}` must lie below `{}`",
                self.name(w),
                self.name(y),
                self.name(z)
            )));
        }
        Ok(self.rel_join_unchecked(z, w, y))
    }

    pub(crate) fn rel_meet_unchecked(&self, y: Elem, w: Elem, z: Elem) -> Option<Elem> {
        // A global meet, when present, is automatically above y.
        if let Some(m) = self.meet(w, z) {
            return Some(m);
        }
        let mut set = self.above(y).clone();
        set.intersect_with(self.below(w));
        set.intersect_with(self.below(z));
        greatest(self, &set)
    }

    pub(crate) fn rel_join_unchecked(&self, z: Elem, w: Elem, y: Elem) -> Option<Elem> {
        if let Some(j) = self.join(w, y) {
            return Some(j);
        }
        let mut set = self.below(z).clone();
        set.intersect_with(self.above(w));
        set.intersect_with(self.above(y));
        least(self, &set)
    }
}

/// Which requirement of viability / left modularity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LmFailure {
    JoinUndefined,
    MeetUndefined,
    RelMeetUndefined,
    RelJoinUndefined,
    NotEqual,
}

impl LmFailure {
    pub fn as_str(self) -> &'static str {
        match self {
            LmFailure::JoinUndefined => "JoinUndefined",
            LmFailure::MeetUndefined => "MeetUndefined",
            LmFailure::RelMeetUndefined => "RelMeetUndefined",
            LmFailure::RelJoinUndefined => "RelJoinUndefined",
            LmFailure::NotEqual => "NotEqual",
        }
    }

    /// Viability failures, as opposed to a failed equation.
    pub fn is_viability(self) -> bool {
        self != LmFailure::NotEqual
    }
}

/// Operands of `(x ∨ y) ∧_y z = (x ∧ z) ∨^z y` at a failing pair `y <= z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmWitness {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
    pub lhs: Option<Elem>,
    pub rhs: Option<Elem>,
    pub kind: LmFailure,
}

/// `(x ∨ y) ∧_y z` for `y <= z`.
pub fn lower_expr(p: &Poset, x: Elem, y: Elem, z: Elem) -> Result<Elem, LmFailure> {
    let j = p.join(x, y).ok_or(LmFailure::JoinUndefined)?;
    p.rel_meet_unchecked(y, j, z).ok_or(LmFailure::RelMeetUndefined)
}

/// `(x ∧ z) ∨^z y` for `y <= z`.
pub fn upper_expr(p: &Poset, x: Elem, y: Elem, z: Elem) -> Result<Elem, LmFailure> {
    let m = p.meet(x, z).ok_or(LmFailure::MeetUndefined)?;
    p.rel_join_unchecked(z, m, y).ok_or(LmFailure::RelJoinUndefined)
}

fn comparable_pairs(p: &Poset) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    p.elements().flat_map(move |y| p.above(y).ones().map(move |z| (y, z)))
}

/// First pair at which `x` fails viability, then first pair at which the
/// equation fails. A `NotEqual` witness therefore implies `x` is viable.
fn left_modular_witness(p: &Poset, x: Elem, require_equal: bool) -> Option<LmWitness> {
    let mut first_unequal = None;
    for (y, z) in comparable_pairs(p) {
        let lhs = lower_expr(p, x, y, z);
        let rhs = upper_expr(p, x, y, z);
        let fail = |kind| LmWitness {
            x,
            y,
            z,
            lhs: lhs.ok(),
            rhs: rhs.ok(),
            kind,
        };
        match (lhs, rhs) {
            (Err(kind), _) | (_, Err(kind)) => return Some(fail(kind)),
            (Ok(l), Ok(r)) if l != r && require_equal && first_unequal.is_none() => {
                first_unequal = Some(fail(LmFailure::NotEqual));
            }
            _ => {}
        }
    }
    first_unequal
}

pub fn check_viable(p: &Poset, x: Elem) -> Result<CheckReport> {
    p.bounds()?;
    p.check_elem(x)?;
    Ok(match left_modular_witness(p, x, false) {
        None => CheckReport::pass(format!("`{}` is viable", p.name(x))),
        Some(w) => CheckReport::fail(
            Witness::LeftModular(w.clone()),
            format!("`{}` is not viable: {}", p.name(x), w.kind.as_str()),
        ),
    })
}

/// Viability plus `(x ∨ y) ∧_y z = (x ∧ z) ∨^z y` for every `y <= z`.
pub fn check_left_modular_element(p: &Poset, x: Elem) -> Result<CheckReport> {
    p.bounds()?;
    p.check_elem(x)?;
    Ok(match left_modular_witness(p, x, true) {
        None => CheckReport::pass(format!("`{}` is left modular", p.name(x))),
        Some(w) => CheckReport::fail(
            Witness::LeftModular(w.clone()),
            format!("`{}` is not left modular: {}", p.name(x), w.kind.as_str()),
        ),
    })
}

pub fn is_left_modular_element(p: &Poset, x: Elem) -> Result<bool> {
    Ok(check_left_modular_element(p, x)?.verdict)
}

/// Left-modularity verdict for every element, indexed by element.
pub fn left_modular_elements(p: &Poset) -> Result<Vec<bool>> {
    p.bounds()?;
    Ok(p.elements()
        .into_par_iter()
        .map(|x| left_modular_witness(p, x, true).is_none())
        .collect())
}

/// Viability verdict for every element, indexed by element.
pub fn viable_elements(p: &Poset) -> Result<Vec<bool>> {
    p.bounds()?;
    Ok(p.elements()
        .into_par_iter()
        .map(|x| left_modular_witness(p, x, false).is_none())
        .collect())
}

/// Checks every element of `chain`; the witness names the first failure.
pub fn check_chain_left_modular(p: &Poset, chain: &Chain) -> Result<CheckReport> {
    if !chain.is_maximal(p) {
        return Err(Error::InvalidChain("expected a maximal chain".into()));
    }
    for &x in chain.nodes() {
        let r = check_left_modular_element(p, x)?;
        if !r.verdict {
            return Ok(r);
        }
    }
    Ok(CheckReport::pass("every element of the chain is left modular"))
}

pub fn check_chain_viable(p: &Poset, chain: &Chain) -> Result<CheckReport> {
    if !chain.is_maximal(p) {
        return Err(Error::InvalidChain("expected a maximal chain".into()));
    }
    for &x in chain.nodes() {
        let r = check_viable(p, x)?;
        if !r.verdict {
            return Ok(r);
        }
    }
    Ok(CheckReport::pass("every element of the chain is viable"))
}

fn chains_through(p: &Poset, allowed: &[bool]) -> Result<Vec<Chain>> {
    let (bot, top) = p.bounds()?;
    let mut out = Vec::new();
    if !allowed[bot] {
        return Ok(out);
    }
    let mut path = vec![bot];
    fn dfs(p: &Poset, allowed: &[bool], top: Elem, path: &mut Vec<Elem>, out: &mut Vec<Chain>) {
        let v = *path.last().unwrap();
        if v == top {
            out.push(Chain::from_vec(path.clone()));
            return;
        }
        for &w in p.upper_covers(v) {
            if allowed[w] {
                path.push(w);
                dfs(p, allowed, top, path, out);
                path.pop();
            }
        }
    }
    dfs(p, allowed, top, &mut path, &mut out);
    Ok(out)
}

/// All maximal chains made of left modular elements, lexicographic by index.
pub fn find_left_modular_chains(p: &Poset) -> Result<Vec<Chain>> {
    let lm = left_modular_elements(p)?;
    chains_through(p, &lm)
}

/// All maximal chains made of viable elements.
pub fn find_viable_chains(p: &Poset) -> Result<Vec<Chain>> {
    let v = viable_elements(p)?;
    chains_through(p, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Reduction;

    fn pentagon() -> Poset {
        Poset::build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
            Reduction::Strict,
        )
        .unwrap()
    }

    fn bowtie() -> Poset {
        Poset::build(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
            Reduction::Strict,
        )
        .unwrap()
    }

    #[test]
    fn bowtie_joins_and_relative_operations() {
        let p = bowtie();
        let e = |s| p.elem(s).unwrap();
        assert_eq!(p.join(e("a"), e("b")), None);
        assert_eq!(p.meet(e("c"), e("d")), None);
        assert_eq!(p.join(e("0"), e("c")), Some(e("c")));
        assert_eq!(p.meet(e("1"), e("b")), Some(e("b")));
        assert_eq!(p.rel_meet(e("a"), e("c"), e("d")).unwrap(), Some(e("a")));
        assert_eq!(p.rel_join(e("c"), e("a"), e("b")).unwrap(), Some(e("c")));
        assert_eq!(p.rel_meet(e("a"), e("d"), e("d")).unwrap(), Some(e("d")));
        assert!(matches!(
            p.rel_meet(e("c"), e("a"), e("d")),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn pentagon_left_modularity() {
        let p = pentagon();
        let e = |s| p.elem(s).unwrap();
        let r = check_left_modular_element(&p, e("c")).unwrap();
        assert!(!r.verdict);
        match r.witness {
            Some(Witness::LeftModular(w)) => {
                assert_eq!(w.kind, LmFailure::NotEqual);
                assert_eq!((w.y, w.z), (e("a"), e("b")));
                assert_eq!((w.lhs, w.rhs), (Some(e("b")), Some(e("a"))));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(is_left_modular_element(&p, e("a")).unwrap());
        assert!(is_left_modular_element(&p, e("b")).unwrap());
        // c is still viable in a lattice
        assert!(check_viable(&p, e("c")).unwrap().verdict);
        let chains = find_left_modular_chains(&p).unwrap();
        let want = Chain::new(&p, vec![e("0"), e("a"), e("b"), e("1")]).unwrap();
        assert_eq!(chains, vec![want]);
    }

    #[test]
    fn bowtie_atoms_not_viable() {
        let p = bowtie();
        let r = check_viable(&p, p.elem("a").unwrap()).unwrap();
        assert!(!r.verdict);
        match r.witness {
            Some(Witness::LeftModular(w)) => assert!(w.kind.is_viability()),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(find_left_modular_chains(&p).unwrap().is_empty());
    }

    #[test]
    fn bounds_always_left_modular() {
        for p in [pentagon(), bowtie()] {
            let (b, t) = p.bounds().unwrap();
            assert!(is_left_modular_element(&p, b).unwrap());
            assert!(is_left_modular_element(&p, t).unwrap());
        }
    }
}
