//! The rooted-tree Hopf algebra: admissible cuts, coproduct and antipode.

use std::collections::BTreeMap;

use crate::renorm::tree::{Forest, Tree};

/// An element of `H` with integer coefficients on forests.
pub type HopfElement = BTreeMap<Forest, i64>;

/// `P_c(t) ⊗ R_c(t)` for one admissible cut; `root` is `None` for the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CutTerm {
    pub pruned: Forest,
    pub root: Option<Tree>,
}

/// Nonempty sets of non-root nodes with no node above another.
pub fn admissible_cuts(t: &Tree) -> Vec<Vec<usize>> {
    let sizes = t.sizes();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    walk(1, t.len(), &sizes, &mut chosen, &mut out);
    out
}

fn walk(v: usize, n: usize, sizes: &[usize], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if v >= n {
        if !chosen.is_empty() {
            out.push(chosen.clone());
        }
        return;
    }
    chosen.push(v);
    walk(v + sizes[v], n, sizes, chosen, out);
    chosen.pop();
    walk(v + 1, n, sizes, chosen, out);
}

/// Cuts `t` at the given nodes, returning the pruned forest and the trunk.
pub fn cut(t: &Tree, nodes: &[usize]) -> (Forest, Tree) {
    let sizes = t.sizes();
    let mut removed = vec![false; t.len()];
    for &v in nodes {
        removed[v..v + sizes[v]].iter_mut().for_each(|r| *r = true);
    }
    let pruned = Forest::new(nodes.iter().map(|&v| t.subtree(v)).collect());
    let kept: Vec<usize> = (0..t.len()).filter(|&v| !removed[v]).collect();
    let index: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let parents: Vec<Option<usize>> = kept.iter().map(|&v| t.parents()[v].map(|p| index[&p])).collect();
    let trunk = Tree::from_parents(&parents).expect("a trunk is a tree");
    (pruned, trunk)
}

/// `Δt = t ⊗ 1 + 1 ⊗ t + Σ_c P_c(t) ⊗ R_c(t)`, with repeated terms listed separately.
pub fn coproduct(t: &Tree) -> Vec<CutTerm> {
    let mut out = vec![
        CutTerm { pruned: Forest::single(t.clone()), root: None },
        CutTerm { pruned: Forest::empty(), root: Some(t.clone()) },
    ];
    out.extend(proper_cuts(t).into_iter().map(|(p, r)| CutTerm { pruned: p, root: Some(r) }));
    out
}

/// The admissible-cut terms only, as `(P_c, R_c)` pairs.
pub fn proper_cuts(t: &Tree) -> Vec<(Forest, Tree)> {
    admissible_cuts(t).iter().map(|c| cut(t, c)).collect()
}

/// `Δ` extended multiplicatively to a forest.
pub fn coproduct_forest(f: &Forest) -> BTreeMap<(Forest, Forest), i64> {
    let mut acc: BTreeMap<(Forest, Forest), i64> = BTreeMap::new();
    acc.insert((Forest::empty(), Forest::empty()), 1);
    for t in f.trees() {
        let mut next = BTreeMap::new();
        for ((l, r), c) in &acc {
            for term in coproduct(t) {
                let right = term.root.map_or_else(Forest::empty, Forest::single);
                *next.entry((l.mul(&term.pruned), r.mul(&right))).or_insert(0) += c;
            }
        }
        acc = next;
    }
    acc.retain(|_, c| *c != 0);
    acc
}

type Triple = BTreeMap<(Forest, Forest, Forest), i64>;

/// `((Δ ⊗ id)Δt, (id ⊗ Δ)Δt)`.
pub fn coassociativity_sides(t: &Tree) -> (Triple, Triple) {
    let once = coproduct_forest(&Forest::single(t.clone()));
    let mut left = Triple::new();
    let mut right = Triple::new();
    for ((a, b), c) in &once {
        for ((x, y), d) in coproduct_forest(a) {
            *left.entry((x, y, b.clone())).or_insert(0) += c * d;
        }
        for ((x, y), d) in coproduct_forest(b) {
            *right.entry((a.clone(), x, y)).or_insert(0) += c * d;
        }
    }
    left.retain(|_, c| *c != 0);
    right.retain(|_, c| *c != 0);
    (left, right)
}

pub fn is_coassociative_on(t: &Tree) -> bool {
    let (l, r) = coassociativity_sides(t);
    l == r
}

fn add_into(acc: &mut HopfElement, x: &HopfElement, c: i64) {
    for (f, v) in x {
        *acc.entry(f.clone()).or_insert(0) += c * v;
    }
    acc.retain(|_, v| *v != 0);
}

pub fn element_mul(a: &HopfElement, b: &HopfElement) -> HopfElement {
    let mut out = HopfElement::new();
    for (f, x) in a {
        for (g, y) in b {
            *out.entry(f.mul(g)).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Memo table for [`antipode`].
#[derive(Default)]
pub struct AntipodeCache(BTreeMap<Tree, HopfElement>);

/// `S(t) = −t − Σ_c S(P_c(t)) R_c(t)`.
pub fn antipode(t: &Tree, cache: &mut AntipodeCache) -> HopfElement {
    if let Some(s) = cache.0.get(t) {
        return s.clone();
    }
    let mut out = HopfElement::new();
    out.insert(Forest::single(t.clone()), -1);
    for (p, r) in proper_cuts(t) {
        let sp = antipode_forest(&p, cache);
        let term = element_mul(&sp, &HopfElement::from([(Forest::single(r), 1)]));
        add_into(&mut out, &term, -1);
    }
    cache.0.insert(t.clone(), out.clone());
    out
}

pub fn antipode_forest(f: &Forest, cache: &mut AntipodeCache) -> HopfElement {
    f.trees().iter().fold(HopfElement::from([(Forest::empty(), 1)]), |acc, t| element_mul(&acc, &antipode(t, cache)))
}

/// `m(S ⊗ id)Δt`, which is zero for every tree.
pub fn antipode_left_defect(t: &Tree, cache: &mut AntipodeCache) -> HopfElement {
    let mut out = HopfElement::new();
    for ((a, b), c) in coproduct_forest(&Forest::single(t.clone())) {
        let term = element_mul(&antipode_forest(&a, cache), &HopfElement::from([(b, 1)]));
        add_into(&mut out, &term, c);
    }
    out
}

/// `m(id ⊗ S)Δt`, which is zero for every tree.
pub fn antipode_right_defect(t: &Tree, cache: &mut AntipodeCache) -> HopfElement {
    let mut out = HopfElement::new();
    for ((a, b), c) in coproduct_forest(&Forest::single(t.clone())) {
        let term = element_mul(&HopfElement::from([(a, 1)]), &antipode_forest(&b, cache));
        add_into(&mut out, &term, c);
    }
    out
}
