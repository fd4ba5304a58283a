//! Walks in arrows and inverse arrows, the string conditions, and string
//! enumeration.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::algebra::{Algebra, ArrowId, VertexId};
use crate::error::{Error, Result};

/// An arrow or its formal inverse. Derived order puts `a` before `a-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Self {
        Self {
            arrow,
            inverse: false,
        }
    }

    pub fn inverse_of(arrow: ArrowId) -> Self {
        Self {
            arrow,
            inverse: true,
        }
    }

    pub fn flip(self) -> Self {
        Self {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn source(self, alg: &Algebra) -> VertexId {
        if self.inverse {
            alg.target(self.arrow)
        } else {
            alg.source(self.arrow)
        }
    }

    pub fn target(self, alg: &Algebra) -> VertexId {
        if self.inverse {
            alg.source(self.arrow)
        } else {
            alg.target(self.arrow)
        }
    }

    pub fn display(self, alg: &Algebra) -> String {
        if self.inverse {
            format!("{}-", alg.arrow_name(self.arrow))
        } else {
            alg.arrow_name(self.arrow).to_string()
        }
    }
}

/// A composable word of letters with explicit endpoints.
///
/// Length-0 walks stand for the trivial path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    start: VertexId,
    end: VertexId,
    letters: Vec<Letter>,
}

impl Ord for Walk {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for Walk {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Walk {
    pub fn trivial(v: VertexId) -> Self {
        Self {
            start: v,
            end: v,
            letters: Vec::new(),
        }
    }

    /// Builds a walk, checking that consecutive letters compose.
    pub fn new(alg: &Algebra, letters: Vec<Letter>) -> Result<Self> {
        let first = letters.first().ok_or(Error::EmptyWalk)?;
        let start = first.source(alg);
        for (i, pair) in letters.windows(2).enumerate() {
            if pair[0].target(alg) != pair[1].source(alg) {
                return Err(Error::NotComposable { position: i + 1 });
            }
        }
        let end = letters.last().expect("nonempty").target(alg);
        Ok(Self {
            start,
            end,
            letters,
        })
    }

    /// Parses `g2 b2 a2- g2 b1-` or `e:<vertex>`.
    pub fn parse(alg: &Algebra, literal: &str) -> Result<Self> {
        let bad = |message: &str| Error::WalkLiteral {
            literal: literal.to_string(),
            message: message.to_string(),
        };
        let trimmed = literal.trim();
        if let Some(vertex) = trimmed.strip_prefix("e:") {
            let v = alg
                .vertex_by_name(vertex.trim())
                .ok_or_else(|| bad("unknown vertex"))?;
            return Ok(Self::trivial(v));
        }
        let mut letters = Vec::new();
        for token in trimmed.split_whitespace() {
            let (name, inverse) = match token.strip_suffix('-') {
                Some(name) => (name, true),
                None => (token, false),
            };
            let arrow = alg
                .arrow_by_name(name)
                .ok_or_else(|| bad(&format!("unknown arrow `{name}`")))?;
            letters.push(Letter { arrow, inverse });
        }
        if letters.is_empty() {
            return Err(bad("empty literal"));
        }
        Self::new(alg, letters).map_err(|e| bad(&e.to_string()))
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.start == self.end
    }

    /// Visited vertices x_0, ..., x_d.
    pub fn vertices(&self, alg: &Algebra) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.letters.len() + 1);
        out.push(self.start);
        out.extend(self.letters.iter().map(|l| l.target(alg)));
        out
    }

    pub fn inverse(&self) -> Self {
        Self {
            start: self.end,
            end: self.start,
            letters: self.letters.iter().rev().map(|l| l.flip()).collect(),
        }
    }

    /// Letters `from..to` as a walk; `from == to` gives the trivial walk at
    /// vertex position `from`.
    pub fn factor(&self, alg: &Algebra, from: usize, to: usize) -> Self {
        assert!(from <= to && to <= self.letters.len());
        if from == to {
            let v = if from == 0 {
                self.start
            } else {
                self.letters[from - 1].target(alg)
            };
            return Self::trivial(v);
        }
        let letters = self.letters[from..to].to_vec();
        Self {
            start: letters[0].source(alg),
            end: letters[letters.len() - 1].target(alg),
            letters,
        }
    }

    /// Concatenation; panics if the endpoints do not meet.
    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.end, other.start, "walks do not compose");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self {
            start: self.start,
            end: other.end,
            letters,
        }
    }

    pub fn power(&self, k: usize) -> Self {
        assert!(self.is_cyclic() || k <= 1, "only cyclic walks have powers");
        let mut letters = Vec::with_capacity(self.letters.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        if k == 0 {
            return Self::trivial(self.start);
        }
        Self {
            start: self.start,
            end: self.end,
            letters,
        }
    }

    /// Cyclic rotation by `shift` letters.
    pub fn rotate(&self, alg: &Algebra, shift: usize) -> Self {
        assert!(self.is_cyclic());
        if self.letters.is_empty() {
            return self.clone();
        }
        let shift = shift % self.letters.len();
        let mut letters = self.letters[shift..].to_vec();
        letters.extend_from_slice(&self.letters[..shift]);
        let start = letters[0].source(alg);
        Self {
            start,
            end: start,
            letters,
        }
    }

    pub fn rotations(&self, alg: &Algebra) -> Vec<Self> {
        (0..self.letters.len().max(1))
            .map(|i| self.rotate(alg, i))
            .collect()
    }

    /// Smallest `p` such that the letters are `p`-periodic with `p | len`.
    pub fn primitive_period(&self) -> usize {
        let n = self.letters.len();
        (1..=n)
            .find(|&p| {
                n.is_multiple_of(p) && (p..n).all(|i| self.letters[i] == self.letters[i - p])
            })
            .unwrap_or(0)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_period() == self.letters.len()
    }

    /// True iff every letter has the same orientation.
    pub fn is_directed(&self) -> Result<bool> {
        let first = self.letters.first().ok_or(Error::EmptyWalk)?;
        Ok(self.letters.iter().all(|l| l.inverse == first.inverse))
    }

    pub fn display(&self, alg: &Algebra) -> String {
        if self.letters.is_empty() {
            return format!("e:{}", alg.vertex_name(self.start));
        }
        self.letters
            .iter()
            .map(|l| l.display(alg))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// The string conditions: no backtracking and no relation read in either
    /// direction.
    pub fn is_string(&self, alg: &Algebra) -> bool {
        (1..self.letters.len()).all(|i| appendable(alg, &self.letters[..i], self.letters[i]))
    }

    /// Representative of `{w, w^-1}` under the walk order.
    pub fn canonical_string(&self) -> Self {
        let inv = self.inverse();
        if inv < *self {
            inv
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.inverse() >= *self
    }
}

/// Whether `next` may follow the string `prefix` without breaking the string
/// conditions. Assumes `prefix` is a string and composes with `next`.
pub fn appendable(alg: &Algebra, prefix: &[Letter], next: Letter) -> bool {
    let Some(&last) = prefix.last() else {
        return true;
    };
    if last == next.flip() {
        return false;
    }
    if last.inverse != next.inverse {
        return true;
    }
    // Trailing run of equal orientation, bounded by the longest relation.
    let window = alg.max_relation_length();
    let mut run: Vec<ArrowId> = prefix
        .iter()
        .rev()
        .take_while(|l| l.inverse == next.inverse)
        .take(window - 1)
        .map(|l| l.arrow)
        .collect();
    run.reverse();
    run.push(next.arrow);
    if next.inverse {
        // Inverse letters trace the underlying path backwards.
        run.reverse();
    }
    !alg.path_is_zero(&run)
}

/// All strings up to `max_len`, one per inverse pair, in walk order.
pub fn enumerate_strings(alg: &Algebra, max_len: usize) -> Vec<Walk> {
    let mut out: BTreeSet<Walk> = BTreeSet::new();
    let all_letters: Vec<Letter> = alg
        .arrows()
        .flat_map(|a| [Letter::direct(a), Letter::inverse_of(a)])
        .collect();
    let mut stack: Vec<Walk> = alg.vertices().map(Walk::trivial).collect();
    while let Some(w) = stack.pop() {
        if w.len() < max_len {
            for &l in &all_letters {
                if l.source(alg) != w.end || !appendable(alg, &w.letters, l) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(l);
                stack.push(Walk {
                    start: w.start,
                    end: l.target(alg),
                    letters,
                });
            }
        }
        if w.is_canonical() {
            out.insert(w);
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ex21() -> Algebra {
        Algebra::parse(include_str!("../data/ex21.alg")).unwrap()
    }

    fn gentle5() -> Algebra {
        Algebra::parse(include_str!("../data/gentle5.alg")).unwrap()
    }

    #[test]
    fn string_conditions() {
        let alg = ex21();
        let w = Walk::parse(&alg, "alpha beta gamma- beta-").unwrap();
        assert!(w.is_string(&alg));
        assert!(!Walk::parse(&alg, "alpha alpha").unwrap().is_string(&alg));
        assert!(!Walk::parse(&alg, "beta beta-").unwrap().is_string(&alg));
        assert!(!Walk::parse(&alg, "gamma- gamma-").unwrap().is_string(&alg));
        assert!(Walk::parse(&alg, "e:2").unwrap().is_string(&alg));
        assert!(matches!(
            Walk::parse(&alg, "gamma beta"),
            Err(Error::WalkLiteral { .. })
        ));
    }

    #[test]
    fn canonical_form_uses_direct_before_inverse() {
        let alg = ex21();
        let w = Walk::parse(&alg, "beta gamma- beta-").unwrap();
        let c = w.canonical_string();
        assert_eq!(c.display(&alg), "beta gamma beta-");
        assert_eq!(w.inverse().canonical_string(), c);
        let e = Walk::parse(&alg, "e:1").unwrap();
        assert_eq!(e.canonical_string(), e);
    }

    #[test]
    fn enumeration_small_cases() {
        let alg = ex21();
        let zero: Vec<String> = enumerate_strings(&alg, 0)
            .iter()
            .map(|w| w.display(&alg))
            .collect();
        assert_eq!(zero, ["e:1", "e:2"]);
        let one: Vec<String> = enumerate_strings(&alg, 1)
            .iter()
            .map(|w| w.display(&alg))
            .collect();
        assert_eq!(one, ["e:1", "e:2", "alpha", "beta", "gamma"]);
        let a2 = Algebra::parse(include_str!("../data/a2.alg")).unwrap();
        assert_eq!(enumerate_strings(&a2, 5).len(), 3);
    }

    #[test]
    fn directedness() {
        let alg = gentle5();
        assert!(!Walk::parse(&alg, "b2 a2-").unwrap().is_directed().unwrap());
        assert!(Walk::parse(&alg, "c2 b2").unwrap().is_directed().unwrap());
        assert_eq!(
            Walk::parse(&alg, "e:1").unwrap().is_directed(),
            Err(Error::EmptyWalk)
        );
    }

    #[test]
    fn rotation_and_primitivity() {
        let alg = gentle5();
        let w2 = Walk::parse(&alg, "b2 a2- c2").unwrap();
        assert_eq!(w2.rotate(&alg, 1).display(&alg), "a2- c2 b2");
        assert!(w2.is_primitive());
        assert!(!w2.power(2).is_primitive());
        assert_eq!(w2.power(3).primitive_period(), 3);
    }

    fn strings_of(alg: &Algebra, max: usize) -> Vec<Walk> {
        enumerate_strings(alg, max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn canonical_is_inverse_invariant(idx in 0usize..10_000) {
            let alg = gentle5();
            let all = strings_of(&alg, 6);
            let w = &all[idx % all.len()];
            prop_assert_eq!(w.canonical_string(), w.inverse().canonical_string());
            prop_assert_eq!(w.canonical_string().canonical_string(), w.canonical_string());
            prop_assert!(w.inverse().is_string(&alg));
        }

        #[test]
        fn directedness_is_inverse_invariant(idx in 0usize..10_000) {
            let alg = gentle5();
            let all: Vec<Walk> = strings_of(&alg, 6).into_iter().filter(|w| !w.is_empty()).collect();
            let w = &all[idx % all.len()];
            prop_assert_eq!(w.is_directed().unwrap(), w.inverse().is_directed().unwrap());
        }

        #[test]
        fn factors_of_strings_are_strings(idx in 0usize..10_000, a in 0usize..8, b in 0usize..8) {
            let alg = ex21();
            let all = strings_of(&alg, 6);
            let w = &all[idx % all.len()];
            let (lo, hi) = (a.min(b).min(w.len()), a.max(b).min(w.len()));
            prop_assert!(w.factor(&alg, lo, hi).is_string(&alg));
        }
    }
}
