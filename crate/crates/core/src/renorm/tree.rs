//! Rooted trees in canonical form and forests of them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{NcgError, Result};

/// A rooted tree stored as a parent array in canonical preorder.
///
/// Node 0 is the root. Children of every node appear in decreasing order of
/// their subtree encoding, so isomorphic trees have identical arrays.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    parent: Vec<Option<usize>>,
    /// Preorder bracket word, `1` on entering a node and `0` on leaving it.
    code: Vec<u8>,
}

impl Tree {
    /// The single node `•`.
    pub fn single() -> Self {
        Tree { parent: vec![None], code: vec![1, 0] }
    }

    /// Grafts the trees of `forest` onto a new root.
    pub fn b_plus(forest: &Forest) -> Self {
        let mut parent = vec![None];
        let mut code = vec![1];
        for t in forest.trees() {
            let off = parent.len();
            parent.extend(t.parent.iter().map(|p| Some(p.map_or(0, |q| q + off))));
            code.extend_from_slice(&t.code);
        }
        code.push(0);
        Tree { parent, code }
    }

    /// The ladder `ℓ_n`, a path of `n ≥ 1` nodes.
    pub fn ladder(n: usize) -> Self {
        assert!(n >= 1, "a ladder has at least one node");
        (1..n).fold(Tree::single(), |t, _| Tree::b_plus(&Forest::new(vec![t])))
    }

    /// A root with `n − 1` leaves.
    pub fn corolla(n: usize) -> Self {
        assert!(n >= 1, "a corolla has at least one node");
        Tree::b_plus(&Forest::new(vec![Tree::single(); n - 1]))
    }

    /// Canonical tree from an arbitrary labelled parent array with exactly one root.
    pub fn from_parents(parent: &[Option<usize>]) -> Result<Self> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        let mut root = None;
        for (v, p) in parent.iter().enumerate() {
            match p {
                None if root.is_none() => root = Some(v),
                None => return Err(NcgError::Parameter("more than one root".into())),
                Some(q) if *q < n && *q != v => children[*q].push(v),
                Some(q) => return Err(NcgError::Parameter(format!("bad parent {q} for node {v}"))),
            }
        }
        let root = root.ok_or_else(|| NcgError::Parameter("no root".into()))?;
        let mut seen = 0;
        let t = build(root, &children, &mut seen);
        if seen != n {
            return Err(NcgError::Parameter("parent array has a cycle".into()));
        }
        Ok(t)
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Node count `|t|`, the grading.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Subtree sizes indexed by node.
    pub fn sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for v in (1..self.len()).rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// The subtree rooted at `v`, which occupies `v..v + size(v)` in preorder.
    pub fn subtree(&self, v: usize) -> Tree {
        let end = v + self.sizes()[v];
        let parent = (v..end).map(|w| if w == v { None } else { self.parent[w].map(|p| p - v) }).collect();
        let start = self.code_offset(v);
        let len = 2 * (end - v);
        Tree { parent, code: self.code[start..start + len].to_vec() }
    }

    fn code_offset(&self, v: usize) -> usize {
        // Each earlier node opened once; closed ones are those whose subtree ended before v.
        let sizes = self.sizes();
        let closed = (0..v).filter(|&w| w + sizes[w] <= v).count();
        v + closed
    }

    /// Subtrees hanging from the root, i.e. `t = B₊(children)`.
    pub fn children(&self) -> Forest {
        Forest::new(self.parent.iter().enumerate().filter(|(_, p)| **p == Some(0)).map(|(v, _)| self.subtree(v)).collect())
    }

    /// `t! = Π_v |t_v|` over all nodes.
    pub fn factorial(&self) -> u64 {
        self.sizes().iter().map(|&s| s as u64).product()
    }

    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        while let Some(p) = self.parent[v] {
            if p == a {
                return true;
            }
            v = p;
        }
        false
    }

    /// All trees with exactly `n` nodes, in increasing order.
    pub fn enumerate(n: usize) -> Vec<Tree> {
        if n == 0 {
            return Vec::new();
        }
        forests(n - 1).iter().map(Tree::b_plus).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// All trees with `1..=n` nodes.
    pub fn enumerate_up_to(n: usize) -> Vec<Tree> {
        (1..=n).flat_map(Tree::enumerate).collect()
    }

    pub fn parse(s: &str) -> Result<Tree> {
        let f = Forest::parse(s)?;
        match f.trees() {
            [t] => Ok(t.clone()),
            _ => Err(NcgError::Parse { pos: 0, msg: format!("expected one tree, found {}", f.trees().len()) }),
        }
    }
}

fn build(v: usize, children: &[Vec<usize>], seen: &mut usize) -> Tree {
    *seen += 1;
    let kids: Vec<Tree> = children[v].iter().map(|&c| build(c, children, seen)).collect();
    Tree::b_plus(&Forest::new(kids))
}

/// Every multiset of trees with `m` nodes in total.
fn forests(m: usize) -> BTreeSet<Forest> {
    let mut out = BTreeSet::new();
    if m == 0 {
        out.insert(Forest::empty());
        return out;
    }
    for k in 1..=m {
        let rest = forests(m - k);
        for t in Tree::enumerate(k) {
            for f in &rest {
                out.insert(f.mul(&Forest::new(vec![t.clone()])));
            }
        }
    }
    out
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.code.cmp(&other.code))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() == 1 {
            return write!(f, "•");
        }
        write!(f, "B+[{}]", self.children())
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Tree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A commutative monomial `t₁⋯t_k` of the tree Hopf algebra; the empty forest is `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest(Vec<Tree>);

impl Forest {
    pub fn new(mut trees: Vec<Tree>) -> Self {
        trees.sort_by(|a, b| b.code.cmp(&a.code));
        Forest(trees)
    }

    pub fn empty() -> Self {
        Forest(Vec::new())
    }

    pub fn single(t: Tree) -> Self {
        Forest(vec![t])
    }

    pub fn trees(&self) -> &[Tree] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Total node count.
    pub fn degree(&self) -> usize {
        self.0.iter().map(Tree::len).sum()
    }

    pub fn mul(&self, other: &Forest) -> Forest {
        Forest::new(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Space-separated trees, e.g. `B+[•] •`.
    pub fn parse(s: &str) -> Result<Forest> {
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut pos = 0;
        let f = parse_forest(&chars, &mut pos)?;
        if pos < chars.len() {
            return Err(NcgError::Parse { pos: chars[pos].0, msg: format!("unexpected '{}'", chars[pos].1) });
        }
        Ok(f)
    }
}

fn skip_ws(c: &[(usize, char)], pos: &mut usize) {
    while *pos < c.len() && (c[*pos].1.is_whitespace() || c[*pos].1 == ',') {
        *pos += 1;
    }
}

fn parse_forest(c: &[(usize, char)], pos: &mut usize) -> Result<Forest> {
    let mut trees = Vec::new();
    loop {
        skip_ws(c, pos);
        match c.get(*pos).map(|x| x.1) {
            None | Some(']') => return Ok(Forest::new(trees)),
            Some('•' | '*' | 'o') => {
                *pos += 1;
                trees.push(Tree::single());
            }
            Some('B') => {
                let at = c[*pos].0;
                let head: String = c[*pos..].iter().take(3).map(|x| x.1).collect();
                if head != "B+[" {
                    return Err(NcgError::Parse { pos: at, msg: "expected 'B+['".into() });
                }
                *pos += 3;
                let inner = parse_forest(c, pos)?;
                if c.get(*pos).map(|x| x.1) != Some(']') {
                    return Err(NcgError::Parse { pos: c.get(*pos).map_or(at, |x| x.0), msg: "unclosed 'B+['".into() });
                }
                *pos += 1;
                trees.push(Tree::b_plus(&inner));
            }
            Some(ch) => return Err(NcgError::Parse { pos: c[*pos].0, msg: format!("unexpected '{ch}'") }),
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(Tree::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Forest {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_tree_counts() {
        // Unlabelled rooted trees: 1, 1, 2, 4, 9, 20, 48.
        let counts: Vec<usize> = (1..=7).map(|n| Tree::enumerate(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48]);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Tree::from_parents(&[None, Some(0), Some(0), Some(2)]).unwrap();
        let b = Tree::from_parents(&[Some(2), Some(3), Some(3), None]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "B+[B+[•] •]");
    }

    #[test]
    fn parse_roundtrip() {
        for t in Tree::enumerate_up_to(5) {
            assert_eq!(Tree::parse(&t.to_string()).unwrap(), t);
        }
        assert_eq!(Tree::parse("B+[• B+[•]]").unwrap(), Tree::parse("B+[B+[•] •]").unwrap());
        assert_eq!(Tree::parse("B+[]").unwrap(), Tree::single());
        assert_eq!(Tree::parse("B+[B+[*]]").unwrap(), Tree::ladder(3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Tree::parse("B+[•"), Err(NcgError::Parse { .. })));
        assert!(matches!(Tree::parse("• •"), Err(NcgError::Parse { .. })));
        assert!(matches!(Tree::parse("Bx"), Err(NcgError::Parse { .. })));
        assert!(matches!(Tree::parse("•]"), Err(NcgError::Parse { .. })));
    }

    #[test]
    fn factorials() {
        assert_eq!(Tree::ladder(4).factorial(), 24);
        assert_eq!(Tree::corolla(4).factorial(), 4);
        assert_eq!(Tree::parse("B+[B+[•] •]").unwrap().factorial(), 8);
    }

    #[test]
    fn subtrees_and_children() {
        let t = Tree::parse("B+[B+[•] •]").unwrap();
        assert_eq!(t.children(), Forest::parse("B+[•] •").unwrap());
        assert_eq!(t.subtree(1), Tree::ladder(2));
        assert_eq!(t.subtree(3), Tree::single());
        assert!(t.is_ancestor(0, 2) && t.is_ancestor(1, 2) && !t.is_ancestor(3, 2));
    }

    #[test]
    fn bad_parent_arrays() {
        assert!(Tree::from_parents(&[None, None]).is_err());
        assert!(Tree::from_parents(&[Some(1), Some(0)]).is_err());
        assert!(Tree::from_parents(&[None, Some(2), Some(1)]).is_err());
    }

    #[test]
    fn forest_display() {
        assert_eq!(Forest::empty().to_string(), "1");
        let f = Forest::new(vec![Tree::single(), Tree::ladder(2)]);
        assert_eq!(f.to_string(), "B+[•] •");
        assert_eq!(f.degree(), 3);
    }
}
