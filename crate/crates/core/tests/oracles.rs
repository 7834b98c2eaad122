//! Library routines against naive reimplementations on random bounded posets.

#![allow(clippy::needless_range_loop)]

use posetlab::enumerate::{canonical_form, enumerate_bounded_posets, enumerate_posets};
use posetlab::labelling::{
    check_el_labelling, check_interpolating, check_sn_el_labelling, edge_indices, increasing_chain,
    induce_labelling, EdgeLabelling, LabelSet,
};
use posetlab::order::{find_left_modular_chains, is_left_modular_element, left_modular_elements};
use posetlab::poset::{Chain, Poset};
use posetlab::supersolvable::{is_distributive_lattice, is_lattice, r_closure};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Matrix = Vec<Vec<bool>>;

fn random_bounded(rng: &mut StdRng, max_inner: usize, density: f64) -> (Poset, Matrix) {
    let k = rng.gen_range(0..=max_inner);
    let n = k + 2;
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        rel[i][i] = true;
        rel[0][i] = true;
        rel[i][n - 1] = true;
    }
    for a in 1..=k {
        for b in a + 1..=k {
            rel[a][b] = rng.gen_bool(density);
        }
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if rel[a][m] && rel[m][b] {
                    rel[a][b] = true;
                }
            }
        }
    }
    let names = (0..n).map(|i| format!("e{i}")).collect();
    let r = rel.clone();
    (Poset::from_order(names, move |a, b| r[a][b]).unwrap(), rel)
}

fn lt(m: &Matrix, a: usize, b: usize) -> bool {
    a != b && m[a][b]
}

fn covers(m: &Matrix, a: usize, b: usize) -> bool {
    lt(m, a, b) && (0..m.len()).all(|c| !(lt(m, a, c) && lt(m, c, b)))
}

fn least_of(m: &Matrix, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&u| set.iter().all(|&v| m[u][v]))
}

fn greatest_of(m: &Matrix, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&u| set.iter().all(|&v| m[v][u]))
}

fn join(m: &Matrix, a: usize, b: usize) -> Option<usize> {
    let ub: Vec<_> = (0..m.len()).filter(|&u| m[a][u] && m[b][u]).collect();
    least_of(m, &ub)
}

fn meet(m: &Matrix, a: usize, b: usize) -> Option<usize> {
    let lb: Vec<_> = (0..m.len()).filter(|&u| m[u][a] && m[u][b]).collect();
    greatest_of(m, &lb)
}

fn rel_meet(m: &Matrix, y: usize, w: usize, z: usize) -> Option<usize> {
    let set: Vec<_> = (0..m.len()).filter(|&u| m[y][u] && m[u][w] && m[u][z]).collect();
    greatest_of(m, &set)
}

fn rel_join(m: &Matrix, z: usize, w: usize, y: usize) -> Option<usize> {
    let set: Vec<_> = (0..m.len()).filter(|&u| m[w][u] && m[y][u] && m[u][z]).collect();
    least_of(m, &set)
}

fn left_modular(m: &Matrix, x: usize) -> bool {
    let n = m.len();
    (0..n).all(|y| {
        (0..n).filter(|&z| m[y][z]).all(|z| {
            let lhs = join(m, x, y).and_then(|j| rel_meet(m, y, j, z));
            let rhs = meet(m, x, z).and_then(|k| rel_join(m, z, k, y));
            lhs.is_some() && lhs == rhs
        })
    })
}

fn chains_between(m: &Matrix, y: usize, z: usize) -> Vec<Vec<usize>> {
    if y == z {
        return vec![vec![y]];
    }
    let mut out = Vec::new();
    for w in (0..m.len()).filter(|&w| covers(m, y, w) && m[w][z]) {
        for mut rest in chains_between(m, w, z) {
            rest.insert(0, y);
            out.push(rest);
        }
    }
    out
}

fn word(p: &Poset, lab: &EdgeLabelling, c: &[usize]) -> Vec<i64> {
    c.windows(2).map(|w| lab.label(p, w[0], w[1]).unwrap()).collect()
}

fn is_weakly_increasing(w: &[i64]) -> bool {
    w.windows(2).all(|v| v[0] <= v[1])
}

/// The increasing chain of `[y, z]` when it is unique and strictly lexicographically first.
fn el_interval(p: &Poset, m: &Matrix, lab: &EdgeLabelling, y: usize, z: usize) -> Option<Vec<usize>> {
    let chains = chains_between(m, y, z);
    let inc: Vec<_> = chains.iter().filter(|c| is_weakly_increasing(&word(p, lab, c))).collect();
    if inc.len() != 1 {
        return None;
    }
    let w = word(p, lab, inc[0]);
    chains
        .iter()
        .filter(|c| *c != inc[0])
        .all(|c| w < word(p, lab, c))
        .then(|| inc[0].clone())
}

fn naive_el(p: &Poset, m: &Matrix, lab: &EdgeLabelling) -> bool {
    let n = m.len();
    (0..n).all(|y| (0..n).filter(|&z| lt(m, y, z)).all(|z| el_interval(p, m, lab, y, z).is_some()))
}

fn naive_interpolating(p: &Poset, m: &Matrix, lab: &EdgeLabelling) -> bool {
    if !naive_el(p, m, lab) {
        return false;
    }
    let n = m.len();
    for y in 0..n {
        for u in (0..n).filter(|&u| covers(m, y, u)) {
            for z in (0..n).filter(|&z| covers(m, u, z)) {
                let (lo, hi) = (lab.label(p, y, u).unwrap(), lab.label(p, u, z).unwrap());
                if lo < hi {
                    continue;
                }
                let inc = el_interval(p, m, lab, y, z).unwrap();
                let w = word(p, lab, &inc);
                let strict = w.windows(2).all(|v| v[0] < v[1]);
                if !(strict && w[0] == hi && *w.last().unwrap() == lo) {
                    return false;
                }
            }
        }
    }
    true
}

fn random_labelling(rng: &mut StdRng, p: &Poset, top: i64) -> EdgeLabelling {
    EdgeLabelling::from_fn(p, |_, _| rng.gen_range(1..=top))
}

#[test]
fn order_and_operations_match() {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..300 {
        let (p, m) = random_bounded(&mut rng, 7, 0.35);
        let n = m.len();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(p.leq(a, b), m[a][b]);
                assert_eq!(p.covers(a, b), covers(&m, a, b));
                assert_eq!(p.join(a, b), join(&m, a, b));
                assert_eq!(p.meet(a, b), meet(&m, a, b));
                for c in 0..n {
                    if m[a][b] && m[a][c] {
                        assert_eq!(p.rel_meet(a, b, c).unwrap(), rel_meet(&m, a, b, c));
                    }
                    if m[b][a] && m[c][a] {
                        assert_eq!(p.rel_join(a, b, c).unwrap(), rel_join(&m, a, b, c));
                    }
                }
            }
            assert_eq!(is_left_modular_element(&p, a).unwrap(), left_modular(&m, a), "{a} in {:?}", m);
        }
        let total: usize = (0..n).map(|a| chains_between(&m, a, n - 1).len()).sum();
        let counted: u64 = (0..n).map(|a| p.count_chains(a, n - 1).unwrap()).sum();
        assert_eq!(total as u64, counted);
    }
}

#[test]
fn el_and_interpolation_match() {
    let mut rng = StdRng::seed_from_u64(2);
    let (mut el_yes, mut int_yes) = (0, 0);
    for round in 0..600 {
        let (p, m) = random_bounded(&mut rng, 5, 0.4);
        let lab = if round % 3 == 0 {
            match find_left_modular_chains(&p).unwrap().first() {
                Some(c) => induce_labelling(&p, c, &LabelSet::standard(c.length())).unwrap(),
                None => random_labelling(&mut rng, &p, 3),
            }
        } else {
            random_labelling(&mut rng, &p, 3)
        };
        let el = naive_el(&p, &m, &lab);
        let int = naive_interpolating(&p, &m, &lab);
        assert_eq!(check_el_labelling(&p, &lab).unwrap().verdict, el);
        assert_eq!(check_interpolating(&p, &lab).unwrap().verdict, int);
        el_yes += el as usize;
        int_yes += int as usize;
    }
    assert!(el_yes > 50 && int_yes > 30, "{el_yes} {int_yes}");
}

#[test]
fn sn_el_matches_definition() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut hits = 0;
    for _ in 0..400 {
        let (p, m) = random_bounded(&mut rng, 5, 0.4);
        let Some(rank) = p.graded_rank().unwrap() else { continue };
        let lab = random_labelling(&mut rng, &p, rank.max(1) as i64);
        let perms = chains_between(&m, 0, m.len() - 1).iter().all(|c| {
            let mut w = word(&p, &lab, c);
            w.sort_unstable();
            w == (1..=rank as i64).collect::<Vec<_>>()
        });
        let expected = perms && naive_el(&p, &m, &lab);
        assert_eq!(check_sn_el_labelling(&p, &lab).unwrap().verdict, expected);
        hits += expected as usize;
    }
    assert!(hits > 10, "{hits}");
}

#[test]
fn induced_labels_follow_the_defining_index() {
    let mut rng = StdRng::seed_from_u64(4);
    let mut edges = 0;
    for _ in 0..300 {
        let (p, m) = random_bounded(&mut rng, 6, 0.35);
        for c in find_left_modular_chains(&p).unwrap() {
            let lab = induce_labelling(&p, &c, &LabelSet::standard(c.length())).unwrap();
            let xs = c.nodes();
            for (y, z) in p.cover_pairs() {
                let i = (1..xs.len())
                    .find(|&i| join(&m, xs[i], y).and_then(|j| rel_meet(&m, y, j, z)) == Some(z))
                    .unwrap();
                assert_eq!(lab.label(&p, y, z), Some(i as i64));
                let ix = edge_indices(&p, &c, y, z).unwrap();
                assert_eq!((ix.defining, ix.join_form, ix.meet_form), (i, i, i));
                edges += 1;
            }
            let (bot, top) = p.bounds().unwrap();
            assert_eq!(increasing_chain(&p, &lab, bot, top).unwrap().as_ref(), Some(&c));
        }
    }
    assert!(edges > 500, "{edges}");
}

fn naive_closure(m: &Matrix, chain_m: &[usize], chain_c: &[usize]) -> Vec<usize> {
    let mut set: Vec<usize> = chain_m.iter().chain(chain_c).copied().collect();
    set.sort_unstable();
    set.dedup();
    loop {
        let mut next = set.clone();
        for &x in chain_m {
            for &y in &set {
                for &z in set.iter().filter(|&&z| m[y][z]) {
                    for v in [
                        join(m, x, y).and_then(|j| rel_meet(m, y, j, z)),
                        meet(m, x, z).and_then(|k| rel_join(m, z, k, y)),
                    ]
                    .into_iter()
                    .flatten()
                    {
                        next.push(v);
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        if next == set {
            return set;
        }
        set = next;
    }
}

#[test]
fn closure_matches_fixed_point() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..200 {
        let (p, m) = random_bounded(&mut rng, 6, 0.3);
        let lm = find_left_modular_chains(&p).unwrap();
        let Some(mc) = lm.first() else { continue };
        let (bot, top) = p.bounds().unwrap();
        for c in p.maximal_chains(bot, top).unwrap().iter().take(6) {
            let Ok(r) = r_closure(&p, mc, c) else { continue };
            let naive = naive_closure(&m, mc.nodes(), c.nodes());
            assert_eq!(r.elements, naive);
            let again = r_closure(&p, mc, c).unwrap();
            assert_eq!(again.elements, r.elements);
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}

fn naive_distributive(m: &Matrix) -> bool {
    let n = m.len();
    for a in 0..n {
        for b in 0..n {
            if join(m, a, b).is_none() || meet(m, a, b).is_none() {
                return false;
            }
        }
    }
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let lhs = meet(m, a, join(m, b, c).unwrap()).unwrap();
                let rhs = join(m, meet(m, a, b).unwrap(), meet(m, a, c).unwrap()).unwrap();
                lhs == rhs
            })
        })
    })
}

#[test]
fn lattice_and_distributivity_match() {
    let mut rng = StdRng::seed_from_u64(6);
    let (mut lattices, mut distributive) = (0, 0);
    for _ in 0..400 {
        let (p, m) = random_bounded(&mut rng, 6, 0.45);
        let n = m.len();
        let lat = (0..n).all(|a| (0..n).all(|b| join(&m, a, b).is_some() && meet(&m, a, b).is_some()));
        assert_eq!(is_lattice(&p), lat);
        let d = naive_distributive(&m);
        assert_eq!(is_distributive_lattice(&p).verdict, d);
        lattices += lat as usize;
        distributive += d as usize;
    }
    assert!(lattices > 40 && distributive > 20, "{lattices} {distributive}");
}

fn labelled_poset_count(k: usize) -> (usize, Vec<Matrix>) {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut found = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut m = vec![vec![false; k]; k];
        for i in 0..k {
            m[i][i] = true;
        }
        for (bit, &(a, b)) in pairs.iter().enumerate() {
            m[a][b] = mask >> bit & 1 == 1;
        }
        let antisym = (0..k).all(|a| (0..k).all(|b| a == b || !(m[a][b] && m[b][a])));
        let trans = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| !(m[a][b] && m[b][c]) || m[a][c])));
        if antisym && trans {
            found.push(m);
        }
    }
    (found.len(), found)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, k - 1);
            out.push(v);
        }
    }
    out
}

fn naive_canonical(m: &Matrix) -> Vec<bool> {
    permutations(m.len())
        .iter()
        .map(|s| {
            let mut key = Vec::new();
            for a in 0..m.len() {
                for b in 0..m.len() {
                    key.push(a != b && m[s[a]][s[b]]);
                }
            }
            key
        })
        .min()
        .unwrap()
}

#[test]
fn enumeration_counts_match_brute_force() {
    for k in 0..=4 {
        let (labelled, all) = labelled_poset_count(k);
        assert_eq!(labelled, [1, 1, 3, 19, 219][k]);
        let mut classes: Vec<Vec<bool>> = all.iter().map(naive_canonical).collect();
        classes.sort();
        classes.dedup();
        let ours = enumerate_posets(k).unwrap();
        assert_eq!(ours.len(), classes.len(), "k = {k}");
        let mut forms: Vec<Vec<bool>> = ours.iter().map(canonical_form).collect();
        forms.sort();
        forms.dedup();
        assert_eq!(forms.len(), ours.len());
    }
}

#[test]
fn bounded_enumeration_is_inner_enumeration_plus_bounds() {
    let bounded = enumerate_bounded_posets(6, false).unwrap();
    let expected: usize = (0..=4).map(|k| enumerate_posets(k).unwrap().len()).sum();
    assert_eq!(bounded.len(), expected);
    for p in &bounded {
        let (bot, top) = p.bounds().unwrap();
        assert_eq!((bot, top), (0, p.len() - 1));
    }
    let graded = enumerate_bounded_posets(6, true).unwrap();
    let filtered = bounded.iter().filter(|p| p.graded_rank().unwrap().is_some()).count();
    assert_eq!(graded.len(), filtered);
}

#[test]
fn left_modular_elements_agree_with_pointwise_checks() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let (p, _) = random_bounded(&mut rng, 7, 0.3);
        let all = left_modular_elements(&p).unwrap();
        for x in p.elements() {
            assert_eq!(all[x], is_left_modular_element(&p, x).unwrap());
        }
        for c in find_left_modular_chains(&p).unwrap() {
            assert!(c.is_maximal(&p));
            assert!(c.nodes().iter().all(|&x| all[x]));
        }
        let (bot, top) = p.bounds().unwrap();
        assert!(all[bot] && all[top]);
        let chains: Vec<Chain> = p.maximal_chains(bot, top).unwrap();
        let through = chains.iter().filter(|c| c.nodes().iter().all(|&x| all[x])).count();
        assert_eq!(through, find_left_modular_chains(&p).unwrap().len());
    }
}
