//! The cyclic category Λ: morphism words, their normal form, and operator
//! checks of the defining relations on any module over it.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::cyclic::{cochain, Cochain, FinAlgebra};
use crate::error::{NcgError, Result};
use crate::scalar::{Field, Scalar};

/// Generators, indexed by their target object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LambdaGen {
    /// `δ_i : [n−1] → [n]`, `0 ≤ i ≤ n`.
    Face { n: usize, i: usize },
    /// `σ_j : [n+1] → [n]`, `0 ≤ j ≤ n`.
    Degen { n: usize, j: usize },
    /// `τ_n : [n] → [n]`.
    Cyc { n: usize },
}

impl LambdaGen {
    pub fn source(&self) -> usize {
        match *self {
            LambdaGen::Face { n, .. } => n - 1,
            LambdaGen::Degen { n, .. } => n + 1,
            LambdaGen::Cyc { n } => n,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            LambdaGen::Face { n, .. } | LambdaGen::Degen { n, .. } | LambdaGen::Cyc { n } => n,
        }
    }

    fn valid(&self) -> bool {
        match *self {
            LambdaGen::Face { n, i } => n >= 1 && i <= n,
            LambdaGen::Degen { n, j } => j <= n,
            LambdaGen::Cyc { .. } => true,
        }
    }
}

impl fmt::Display for LambdaGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaGen::Face { i, .. } => write!(f, "δ{i}"),
            LambdaGen::Degen { j, .. } => write!(f, "σ{j}"),
            LambdaGen::Cyc { n } => write!(f, "τ{n}"),
        }
    }
}

/// A composite `g₀ ∘ g₁ ∘ … ∘ g_k` (the last generator acts first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LambdaMorphism {
    source: usize,
    target: usize,
    word: Vec<LambdaGen>,
}

impl fmt::Display for LambdaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "id[{}]", self.source);
        }
        let parts: Vec<String> = self.word.iter().map(|g| g.to_string()).collect();
        write!(f, "{}: [{}]→[{}]", parts.join("∘"), self.source, self.target)
    }
}

impl LambdaMorphism {
    pub fn identity(n: usize) -> Self {
        LambdaMorphism { source: n, target: n, word: vec![] }
    }

    /// Type-checks the composite.
    pub fn new(word: Vec<LambdaGen>) -> Result<Self> {
        let last = word.last().ok_or_else(|| NcgError::Type("empty word has no object; use identity".into()))?;
        let source = last.source();
        let target = word[0].target();
        for g in &word {
            if !g.valid() {
                return Err(NcgError::Type(format!("generator {g} is not defined at [{}]", g.target())));
            }
        }
        for w in word.windows(2) {
            if w[0].source() != w[1].target() {
                return Err(NcgError::Type(format!(
                    "cannot compose {} after {}: [{}] ≠ [{}]",
                    w[0],
                    w[1],
                    w[0].source(),
                    w[1].target()
                )));
            }
        }
        Ok(LambdaMorphism { source, target, word })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn word(&self) -> &[LambdaGen] {
        &self.word
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.source != other.target {
            return Err(NcgError::Type(format!("[{}] ≠ [{}]", self.source, other.target)));
        }
        Ok(LambdaMorphism { source: other.source, target: self.target, word: [self.word.clone(), other.word.clone()].concat() })
    }

    /// Normal form `δ…δ σ…σ τ^k`: faces in decreasing index, degeneracies in
    /// increasing index, then a power `k ≤ source` of the cyclic operator on the source.
    pub fn normal_form(&self) -> Self {
        let mut w = self.word.clone();
        while let Some(pos) = redexes(&w).first().copied() {
            rewrite_at(&mut w, pos);
        }
        LambdaMorphism { word: w, ..self.clone() }
    }

    /// Normal form reached by rewriting at random positions.
    pub fn normal_form_random(&self, rng: &mut impl Rng) -> Self {
        let mut w = self.word.clone();
        loop {
            let r = redexes(&w);
            if r.is_empty() {
                break;
            }
            rewrite_at(&mut w, r[rng.gen_range(0..r.len())]);
        }
        LambdaMorphism { word: w, ..self.clone() }
    }

    pub fn is_normal(&self) -> bool {
        redexes(&self.word).is_empty()
    }

    /// The underlying map of finite ordinals `{0..source} → {0..target}`, when
    /// the word contains no cyclic generator.
    pub fn simplicial_map(&self) -> Option<Vec<usize>> {
        let mut f: Vec<usize> = (0..=self.source).collect();
        for g in self.word.iter().rev() {
            for x in f.iter_mut() {
                *x = match *g {
                    LambdaGen::Face { i, .. } => {
                        if *x < i {
                            *x
                        } else {
                            *x + 1
                        }
                    }
                    LambdaGen::Degen { j, .. } => {
                        if *x <= j {
                            *x
                        } else {
                            *x - 1
                        }
                    }
                    LambdaGen::Cyc { .. } => return None,
                };
            }
        }
        Some(f)
    }
}

/// A maximal run of `τ_n` of length at least `n + 1`.
fn cyc_run(w: &[LambdaGen], pos: usize) -> Option<usize> {
    if let LambdaGen::Cyc { n } = w[pos] {
        if pos > 0 && w[pos - 1] == w[pos] {
            return None;
        }
        let len = w[pos..].iter().take_while(|g| **g == LambdaGen::Cyc { n }).count();
        if len > n {
            return Some(n + 1);
        }
    }
    None
}

fn redexes(w: &[LambdaGen]) -> Vec<usize> {
    let mut out = Vec::new();
    for p in 0..w.len() {
        if cyc_run(w, p).is_some() {
            out.push(p);
            continue;
        }
        if p + 1 >= w.len() {
            continue;
        }
        use LambdaGen::*;
        let hit = match (w[p], w[p + 1]) {
            (Face { i: a, .. }, Face { i: b, .. }) => a <= b,
            (Degen { j: a, .. }, Degen { j: b, .. }) => a >= b,
            (Degen { .. }, Face { .. }) => true,
            (Cyc { .. }, Face { .. }) | (Cyc { .. }, Degen { .. }) => true,
            _ => false,
        };
        if hit {
            out.push(p);
        }
    }
    out
}

fn rewrite_at(w: &mut Vec<LambdaGen>, p: usize) {
    use LambdaGen::*;
    if let Some(len) = cyc_run(w, p) {
        w.drain(p..p + len);
        return;
    }
    let rep: Vec<LambdaGen> = match (w[p], w[p + 1]) {
        // δ_jδ_i = δ_iδ_{j−1}, read from right to left.
        (Face { n, i: a }, Face { i: b, .. }) => vec![Face { n, i: b + 1 }, Face { n: n - 1, i: a }],
        // σ_jσ_i = σ_iσ_{j+1} for i ≤ j.
        (Degen { n, j: a }, Degen { j: b, .. }) => vec![Degen { n, j: b }, Degen { n: n + 1, j: a + 1 }],
        (Degen { n, j }, Face { i, .. }) => {
            if i < j {
                vec![Face { n, i }, Degen { n: n - 1, j: j - 1 }]
            } else if i == j || i == j + 1 {
                vec![]
            } else {
                vec![Face { n, i: i - 1 }, Degen { n: n - 1, j }]
            }
        }
        (Cyc { n }, Face { i, .. }) => {
            if i >= 1 {
                vec![Face { n, i: i - 1 }, Cyc { n: n - 1 }]
            } else {
                vec![Face { n, i: n }]
            }
        }
        (Cyc { n }, Degen { j, .. }) => {
            if j >= 1 {
                vec![Degen { n, j: j - 1 }, Cyc { n: n + 1 }]
            } else {
                vec![Degen { n, j: n }, Cyc { n: n + 1 }, Cyc { n: n + 1 }]
            }
        }
        _ => unreachable!("not a redex"),
    };
    w.splice(p..p + 2, rep);
}

/// `lambda_normal_form` as a free function.
pub fn lambda_normal_form(m: &LambdaMorphism) -> LambdaMorphism {
    m.normal_form()
}

fn strictly_increasing(k: usize, max_exclusive: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..max {
            cur.push(x);
            go(x + 1, k, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, max_exclusive, &mut Vec::new(), &mut out);
    out
}

/// Every normal form in `Hom_Δ([m], [n])`.
pub fn enumerate_delta(m: usize, n: usize) -> Vec<LambdaMorphism> {
    let mut out = Vec::new();
    for s in 0..=m {
        if n + s < m {
            continue;
        }
        let r = n + s - m;
        // Degeneracies j₁ < … < j_s ≤ m − 1, faces i₁ > … > i_r ≥ 0 with i₁ ≤ n.
        for js in strictly_increasing(s, m) {
            for mut is in strictly_increasing(r, n + 1) {
                is.reverse();
                let mut word = Vec::with_capacity(r + s);
                for (k, &i) in is.iter().enumerate() {
                    word.push(LambdaGen::Face { n: n - k, i });
                }
                for (k, &j) in js.iter().enumerate() {
                    word.push(LambdaGen::Degen { n: m - s + k, j });
                }
                out.push(if word.is_empty() { LambdaMorphism::identity(m) } else { LambdaMorphism::new(word).expect("well typed") });
            }
        }
    }
    out
}

/// Every normal form in `Hom_Λ([m], [n])`: a simplicial part after `τ_m^k`.
pub fn enumerate_lambda(m: usize, n: usize) -> Vec<LambdaMorphism> {
    let mut out = Vec::new();
    for d in enumerate_delta(m, n) {
        for k in 0..=m {
            let mut word = d.word.clone();
            word.extend(std::iter::repeat(LambdaGen::Cyc { n: m }).take(k));
            out.push(if word.is_empty() { LambdaMorphism::identity(m) } else { LambdaMorphism::new(word).expect("well typed") });
        }
    }
    out
}

/// A covariant module over Λ with objects realised as coordinate vectors.
pub trait CyclicModule {
    type Scalar: Field;

    /// Dimension of the object `[n]`.
    fn object_dim(&self, n: usize) -> usize;
    /// `δ_i : [n−1] → [n]`.
    fn face(&self, n: usize, i: usize, x: &[Self::Scalar]) -> Vec<Self::Scalar>;
    /// `σ_j : [n+1] → [n]`.
    fn degeneracy(&self, n: usize, j: usize, x: &[Self::Scalar]) -> Vec<Self::Scalar>;
    /// `τ_n : [n] → [n]`.
    fn cyclic(&self, n: usize, x: &[Self::Scalar]) -> Vec<Self::Scalar>;

    fn apply(&self, g: LambdaGen, x: &[Self::Scalar]) -> Vec<Self::Scalar> {
        match g {
            LambdaGen::Face { n, i } => self.face(n, i, x),
            LambdaGen::Degen { n, j } => self.degeneracy(n, j, x),
            LambdaGen::Cyc { n } => self.cyclic(n, x),
        }
    }

    fn apply_morphism(&self, m: &LambdaMorphism, x: &[Self::Scalar]) -> Vec<Self::Scalar> {
        m.word.iter().rev().fold(x.to_vec(), |acc, g| self.apply(*g, &acc))
    }
}

/// How the cyclic operator on algebra cochains is realised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauVariant {
    Standard,
    /// Swaps the first two arguments instead of rotating; a negative control.
    NoWrap,
}

/// Cochains `Cⁿ(A)` with the face, degeneracy and cyclic operators of the cyclic category.
pub struct AlgebraCochains<'a, F> {
    pub alg: &'a FinAlgebra<F>,
    pub tau: TauVariant,
}

impl<'a, F: Field> AlgebraCochains<'a, F> {
    pub fn new(alg: &'a FinAlgebra<F>) -> Self {
        AlgebraCochains { alg, tau: TauVariant::Standard }
    }

    fn wrap(&self, n: usize, x: &[F]) -> Cochain<F> {
        Cochain::from_values(self.alg.dim(), n, x.to_vec()).expect("module vectors have cochain shape")
    }
}

impl<F: Field> CyclicModule for AlgebraCochains<'_, F> {
    type Scalar = F;

    fn object_dim(&self, n: usize) -> usize {
        self.alg.dim().pow(n as u32 + 1)
    }

    fn face(&self, n: usize, i: usize, x: &[F]) -> Vec<F> {
        cochain::face(self.alg, &self.wrap(n - 1, x), i).expect("valid face").values().to_vec()
    }

    fn degeneracy(&self, n: usize, j: usize, x: &[F]) -> Vec<F> {
        cochain::degeneracy(self.alg, &self.wrap(n + 1, x), j).expect("valid degeneracy").values().to_vec()
    }

    fn cyclic(&self, n: usize, x: &[F]) -> Vec<F> {
        let phi = self.wrap(n, x);
        match self.tau {
            TauVariant::Standard => cochain::cyclic_shift(&phi).values().to_vec(),
            TauVariant::NoWrap => {
                if n == 0 {
                    return x.to_vec();
                }
                Cochain::from_fn(phi.dim(), n, |t| {
                    let mut s = t.to_vec();
                    s.swap(0, 1);
                    phi.get(&s)
                })
                .expect("same shape")
                .values()
                .to_vec()
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    /// The relation as written, e.g. `τ3δ2 = δ1τ2`.
    pub relation: String,
    /// Object on which the composite lands.
    pub degree: usize,
    pub pass: bool,
    /// First coordinate where the two sides differ.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub checks: Vec<RelationCheck>,
}

impl LambdaReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Every defining relation with both sides landing in objects `≤ n_max`,
/// as pairs of words (left side, right side).
pub fn defining_relations(n_max: usize) -> Vec<(LambdaMorphism, LambdaMorphism)> {
    use LambdaGen::*;
    let mut out = Vec::new();
    let mk = |w: Vec<LambdaGen>, src: usize| if w.is_empty() { LambdaMorphism::identity(src) } else { LambdaMorphism::new(w).expect("well typed") };
    for n in 0..=n_max {
        // δ_jδ_i = δ_iδ_{j−1}, i < j, on [n−2] → [n].
        if n >= 2 {
            for j in 0..=n {
                for i in 0..j {
                    out.push((mk(vec![Face { n, i: j }, Face { n: n - 1, i }], n - 2), mk(vec![Face { n, i }, Face { n: n - 1, i: j - 1 }], n - 2)));
                }
            }
        }
        // σ_jσ_i = σ_iσ_{j+1}, i ≤ j, on [n+2] → [n].
        if n + 2 <= n_max {
            for j in 0..=n {
                for i in 0..=j {
                    out.push((mk(vec![Degen { n, j }, Degen { n: n + 1, j: i }], n + 2), mk(vec![Degen { n, j: i }, Degen { n: n + 1, j: j + 1 }], n + 2)));
                }
            }
        }
        // σ_jδ_i on [n] → [n] through [n+1].
        if n < n_max {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = mk(vec![Degen { n, j }, Face { n: n + 1, i }], n);
                    let rhs = if i < j {
                        mk(vec![Face { n, i }, Degen { n: n - 1, j: j - 1 }], n)
                    } else if i == j || i == j + 1 {
                        LambdaMorphism::identity(n)
                    } else {
                        mk(vec![Face { n, i: i - 1 }, Degen { n: n - 1, j }], n)
                    };
                    out.push((lhs, rhs));
                }
            }
        }
        if n >= 1 {
            // τ_nδ_i = δ_{i−1}τ_{n−1}, τ_nδ₀ = δ_n.
            for i in 0..=n {
                let lhs = mk(vec![Cyc { n }, Face { n, i }], n - 1);
                let rhs = if i >= 1 { mk(vec![Face { n, i: i - 1 }, Cyc { n: n - 1 }], n - 1) } else { mk(vec![Face { n, i: n }], n - 1) };
                out.push((lhs, rhs));
            }
        }
        if n < n_max {
            // τ_nσ_i = σ_{i−1}τ_{n+1}, τ_nσ₀ = σ_nτ²_{n+1}.
            for i in 0..=n {
                let lhs = mk(vec![Cyc { n }, Degen { n, j: i }], n + 1);
                let rhs = if i >= 1 {
                    mk(vec![Degen { n, j: i - 1 }, Cyc { n: n + 1 }], n + 1)
                } else {
                    mk(vec![Degen { n, j: n }, Cyc { n: n + 1 }, Cyc { n: n + 1 }], n + 1)
                };
                out.push((lhs, rhs));
            }
        }
        // τ_n^{n+1} = 1.
        out.push((mk(vec![Cyc { n }; n + 1], n), LambdaMorphism::identity(n)));
    }
    out
}

fn relation_label(l: &LambdaMorphism, r: &LambdaMorphism) -> String {
    let side = |m: &LambdaMorphism| {
        if m.word.is_empty() {
            format!("id{}", m.source)
        } else {
            m.word.iter().map(|g| g.to_string()).collect::<String>()
        }
    };
    format!("{} = {}", side(l), side(r))
}

/// Checks every defining relation up to object `n_max` as an operator identity,
/// on `samples` random vectors with small integer entries.
pub fn check_lambda_relations<M: CyclicModule>(
    module: &M,
    n_max: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> LambdaReport {
    let mut checks = Vec::new();
    for (l, r) in defining_relations(n_max) {
        let dim = module.object_dim(l.source);
        let mut witness = None;
        for _ in 0..samples {
            let x: Vec<M::Scalar> = (0..dim).map(|_| M::Scalar::from_i64(rng.gen_range(-5..=5))).collect();
            let a = module.apply_morphism(&l, &x);
            let b = module.apply_morphism(&r, &x);
            if let Some(p) = a.iter().zip(&b).position(|(u, v)| !(u.clone() - v.clone()).is_negligible(1e-9)) {
                witness = Some(p);
                break;
            }
        }
        checks.push(RelationCheck { relation: relation_label(&l, &r), degree: l.target, pass: witness.is_none(), witness });
    }
    LambdaReport { checks }
}

/// `lambda_module_check`: builds the cochain operators over `alg` and checks all relations up to `n_max ≤ 4`.
pub fn lambda_module_check<F: Field>(alg: &FinAlgebra<F>, n_max: usize, rng: &mut impl Rng) -> Result<LambdaReport> {
    if n_max > 4 {
        return Err(NcgError::Size { size: n_max, budget: 4 });
    }
    Ok(check_lambda_relations(&AlgebraCochains::new(alg), n_max, 2, rng))
}
