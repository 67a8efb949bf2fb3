use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra_core::Phase;
use crate::error::{NcgError, Result};
use crate::scalar::{rat, Rational};

/// Exponent vector over the ordered generator list.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    /// Index of `g*`.
    pub star: usize,
    /// Extra spellings accepted by the parser.
    pub aliases: Vec<String>,
}

/// `coeff · λ^lambda_exp · mono`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelTerm {
    pub mono: Monomial,
    pub coeff: Rational,
    pub lambda_exp: i64,
}

/// A rewrite rule `lead → Σ rhs`, with `lead` larger than every rhs monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub lead: Monomial,
    pub rhs: Vec<RelTerm>,
}

/// Generators, their exchange table, and the polynomial relations of a
/// λ-twisted *-algebra.
///
/// `table[i][j] = k` means `g_i g_j = λ^k g_j g_i`; the table is
/// antisymmetric. Normal monomials list generators in declared order.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    gens: Vec<Generator>,
    table: Vec<Vec<i64>>,
    relations: Vec<Relation>,
    /// Generator indices, most significant first, used to break degree ties.
    priority: Vec<usize>,
    phase: Phase,
    budget: usize,
}

/// Rule-application strategy for word rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

impl GeneratorSpec {
    /// Builds a spec and runs the critical-pair check on the exchange rules.
    pub fn new(gens: Vec<Generator>, table: Vec<Vec<i64>>, phase: Phase) -> Result<Self> {
        let n = gens.len();
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(NcgError::Parameter("exchange table must be square".into()));
        }
        for i in 0..n {
            if table[i][i] != 0 {
                return Err(NcgError::Parameter(format!("generator {} must commute with itself", gens[i].name)));
            }
            for j in 0..n {
                if table[i][j] != -table[j][i] {
                    return Err(NcgError::Parameter("exchange table must be antisymmetric".into()));
                }
            }
            let s = gens[i].star;
            if s >= n || gens[s].star != i {
                return Err(NcgError::Parameter(format!("star partner of {} is not an involution", gens[i].name)));
            }
        }
        let spec = GeneratorSpec {
            priority: (0..n).rev().collect(),
            gens,
            table,
            relations: Vec::new(),
            phase,
            budget: 1_000_000,
        };
        spec.check_critical_pairs()?;
        Ok(spec)
    }

    /// Generators carrying charges in `ℤ²` with `x·y = λ^{χ(x,y)} y·x`, `χ(a,b) = a₁b₂ − a₂b₁`.
    pub fn from_charges(names: &[(&str, usize, (i64, i64))], phase: Phase) -> Result<Self> {
        let gens = names
            .iter()
            .map(|(name, star, _)| Generator { name: name.to_string(), star: *star, aliases: Vec::new() })
            .collect();
        let table = names
            .iter()
            .map(|(_, _, a)| names.iter().map(|(_, _, b)| a.0 * b.1 - a.1 * b.0).collect())
            .collect();
        Self::new(gens, table, phase)
    }

    /// Coordinates `α, α*, β, β*, t` of the θ-deformed four-sphere, with the
    /// sphere relation oriented as `t² → t − αα* − ββ*`.
    pub fn s4_theta(phase: Phase) -> Result<Self> {
        Self::s4_with_order(phase, false)
    }

    /// Same algebra with the generator order reversed (`t, β*, β, α*, α`).
    pub fn s4_theta_reversed(phase: Phase) -> Result<Self> {
        Self::s4_with_order(phase, true)
    }

    fn s4_with_order(phase: Phase, reversed: bool) -> Result<Self> {
        if phase.is_minus_one() {
            return Err(NcgError::Parameter("λ = −1 is excluded".into()));
        }
        let mut names = vec![
            ("a", (1, 0), "α"),
            ("a*", (-1, 0), "α*"),
            ("b", (0, 1), "β"),
            ("b*", (0, -1), "β*"),
            ("t", (0, 0), "t"),
        ];
        if reversed {
            names.reverse();
        }
        let idx = |n: &str| names.iter().position(|x| x.0 == n).unwrap();
        let star_of = |n: &str| match n {
            "a" => idx("a*"),
            "a*" => idx("a"),
            "b" => idx("b*"),
            "b*" => idx("b"),
            _ => idx("t"),
        };
        let spec_names: Vec<(&str, usize, (i64, i64))> =
            names.iter().map(|(n, c, _)| (*n, star_of(n), *c)).collect();
        let mut spec = Self::from_charges(&spec_names, phase)?;
        for (g, (_, _, alias)) in spec.gens.iter_mut().zip(&names) {
            if *alias != g.name {
                g.aliases.push(alias.to_string());
            }
        }
        let t = idx("t");
        let mut prio = vec![t];
        prio.extend((0..names.len()).filter(|&i| i != t));
        spec.priority = prio;
        let mono = |pairs: &[(usize, u32)]| {
            let mut m = vec![0; names.len()];
            for &(g, e) in pairs {
                m[g] += e;
            }
            m
        };
        let term = |m: Monomial, c: i64| RelTerm { mono: m, coeff: rat(c, 1), lambda_exp: 0 };
        let rel = Relation {
            lead: mono(&[(t, 2)]),
            rhs: vec![
                term(mono(&[(t, 1)]), 1),
                term(mono(&[(idx("a"), 1), (idx("a*"), 1)]), -1),
                term(mono(&[(idx("b"), 1), (idx("b*"), 1)]), -1),
            ],
        };
        spec.add_relation(rel)?;
        Ok(spec)
    }

    pub fn add_relation(&mut self, rel: Relation) -> Result<()> {
        if rel.lead.len() != self.gens.len() || rel.rhs.iter().any(|t| t.mono.len() != self.gens.len()) {
            return Err(NcgError::Parameter("relation monomial has wrong arity".into()));
        }
        if let Some(bad) = rel.rhs.iter().find(|t| self.cmp_monomials(&t.mono, &rel.lead) != Ordering::Less) {
            return Err(NcgError::Parameter(format!(
                "relation is not decreasing: {} is not below {}",
                self.monomial_string(&bad.mono),
                self.monomial_string(&rel.lead)
            )));
        }
        self.relations.push(rel);
        Ok(())
    }

    /// Copy of this spec with every polynomial relation dropped.
    pub fn without_relations(&self) -> Self {
        GeneratorSpec { relations: Vec::new(), ..self.clone() }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn exchange(&self, i: usize, j: usize) -> i64 {
        self.table[i][j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens
            .iter()
            .position(|g| g.name == name || g.aliases.iter().any(|a| a == name))
    }

    pub fn generator(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| NcgError::Parse { pos: 0, msg: format!("unknown generator {name:?}") })
    }

    /// Graded order; ties broken by exponents of the priority generators.
    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        da.cmp(&db).then_with(|| {
            for &g in &self.priority {
                match a[g].cmp(&b[g]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// λ-exponent `k` with `x^a · x^b = λ^k x^{a+b}`.
    pub fn product_exponent(&self, a: &[u32], b: &[u32]) -> i64 {
        let mut k = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate().take(i) {
                if bj != 0 {
                    k += ai as i64 * bj as i64 * self.table[i][j];
                }
            }
        }
        k
    }

    pub fn word_of(&self, m: &[u32]) -> Vec<usize> {
        m.iter()
            .enumerate()
            .flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize))
            .collect()
    }

    /// Bubble-sorts a word, returning the monomial and the accumulated λ-exponent.
    pub fn rewrite_word(&self, word: &[usize], strategy: Strategy) -> (Monomial, i64) {
        let mut w = word.to_vec();
        let mut k = 0i64;
        loop {
            let pos = match strategy {
                Strategy::Leftmost => (0..w.len().saturating_sub(1)).find(|&p| w[p] > w[p + 1]),
                Strategy::Rightmost => (0..w.len().saturating_sub(1)).rev().find(|&p| w[p] > w[p + 1]),
            };
            let Some(p) = pos else { break };
            k += self.table[w[p]][w[p + 1]];
            w.swap(p, p + 1);
        }
        (self.monomial_of_sorted(&w), k)
    }

    /// Bubble-sorts a word applying rules at random positions.
    pub fn rewrite_word_random<R: Rng>(&self, word: &[usize], rng: &mut R) -> (Monomial, i64) {
        let mut w = word.to_vec();
        let mut k = 0i64;
        loop {
            let mut sites: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]).collect();
            if sites.is_empty() {
                break;
            }
            sites.shuffle(rng);
            let p = sites[0];
            k += self.table[w[p]][w[p + 1]];
            w.swap(p, p + 1);
        }
        (self.monomial_of_sorted(&w), k)
    }

    fn monomial_of_sorted(&self, w: &[usize]) -> Monomial {
        let mut m = vec![0u32; self.gens.len()];
        for &g in w {
            m[g] += 1;
        }
        m
    }

    /// Every overlap `g_i g_j g_k` with `i > j > k` must resolve to one phase.
    fn check_critical_pairs(&self) -> Result<()> {
        let n = self.gens.len();
        for i in 0..n {
            for j in 0..i {
                for k in 0..j {
                    let w = [i, j, k];
                    let (_, a) = self.rewrite_word(&w, Strategy::Leftmost);
                    let (_, b) = self.rewrite_word(&w, Strategy::Rightmost);
                    let same = match self.phase {
                        Phase::Rational { q, .. } => (a - b).rem_euclid(q) == 0,
                        Phase::Float(_) => a == b,
                    };
                    if !same {
                        return Err(NcgError::Parameter(format!(
                            "critical pair {}{}{} does not resolve",
                            self.gens[i].name, self.gens[j].name, self.gens[k].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn monomial_string(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| match e {
                1 => self.gens[g].name.clone(),
                _ => format!("{}^{e}", self.gens[g].name),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}
