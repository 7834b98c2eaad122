//! Graphviz export of Hasse diagrams.

use std::fmt::Write;

use crate::labelling::EdgeLabelling;
use crate::poset::Poset;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Bottom-up Hasse diagram; nodes at equal height share a rank.
pub fn export_dot(p: &Poset, lab: Option<&EdgeLabelling>) -> String {
    let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for e in p.elements() {
        writeln!(s, "  n{e} [label={}];", quote(p.name(e))).unwrap();
    }
    let heights = p.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let row: Vec<String> = p.elements().filter(|&e| heights[e] == h).map(|e| format!("n{e};")).collect();
        if !row.is_empty() {
            writeln!(s, "  {{ rank=same; {} }}", row.join(" ")).unwrap();
        }
    }
    for (a, b) in p.cover_pairs() {
        match lab.and_then(|l| l.label(p, a, b)) {
            Some(v) => writeln!(s, "  n{a} -> n{b} [label=\"{v}\", dir=none];").unwrap(),
            None => writeln!(s, "  n{a} -> n{b} [dir=none];").unwrap(),
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Reduction;

    #[test]
    fn singleton_and_diamond() {
        let one = Poset::build(&["x"], &[], Reduction::Strict).unwrap();
        let d = export_dot(&one, None);
        assert_eq!(d.matches("[label=").count(), 1);
        assert!(!d.contains("->"));
        let diamond = Poset::build(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
            Reduction::Strict,
        )
        .unwrap();
        let lab = EdgeLabelling::from_fn(&diamond, |a, b| (a + b) as i64);
        let d = export_dot(&diamond, Some(&lab));
        assert_eq!(d.matches(" -> ").count(), 4);
        assert!(d.contains("n0 -> n1 [label=\"1\", dir=none];"));
        assert!(d.contains("{ rank=same; n1; n2; }"));
        assert_eq!(d, export_dot(&diamond, Some(&lab)));
    }

    #[test]
    fn names_are_escaped() {
        let p = Poset::build(&["a\"b"], &[], Reduction::Strict).unwrap();
        assert!(export_dot(&p, None).contains(r#"[label="a\"b"]"#));
    }
}
