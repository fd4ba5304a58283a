//! Bands: detection, canonical rotation, enumeration, minimality, support and
//! maximal band substrings.

use std::collections::BTreeSet;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::occurrence::Occurrence;
use crate::walk::{appendable, Letter, Walk};

/// True iff `w` is cyclic, primitive and all of its powers are strings.
pub fn is_band(alg: &Algebra, w: &Walk) -> bool {
    if w.is_empty() || !w.is_cyclic() || !w.is_primitive() {
        return false;
    }
    let l = w.len();
    let k = 2.max(alg.max_relation_length().div_ceil(l) + 1);
    w.power(k).is_string(alg)
}

/// Smallest rotation of `w` or of `w^-1`.
pub fn canonical_rotation(alg: &Algebra, w: &Walk) -> Walk {
    w.rotations(alg)
        .into_iter()
        .chain(w.inverse().rotations(alg))
        .min()
        .expect("at least one rotation")
}

pub fn band_equivalent(alg: &Algebra, w: &Walk, other: &Walk) -> bool {
    w.len() == other.len() && canonical_rotation(alg, w) == canonical_rotation(alg, other)
}

fn contains_cyclic(word: &[Letter], pattern: &[Letter]) -> bool {
    let n = word.len();
    if pattern.len() > n {
        return false;
    }
    (0..n).any(|i| {
        pattern
            .iter()
            .enumerate()
            .all(|(j, l)| word[(i + j) % n] == *l)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandRecord {
    /// Canonical rotation.
    pub walk: Walk,
    pub is_minimal: bool,
}

/// Every band class of length at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandPool {
    pub bound: usize,
    pub bands: Vec<BandRecord>,
}

impl BandPool {
    pub fn walks(&self) -> impl Iterator<Item = &Walk> {
        self.bands.iter().map(|b| &b.walk)
    }

    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    /// Heuristic domesticity evidence: no class first appears in the upper
    /// half of the length range. Not a proof.
    pub fn looks_saturated(&self) -> bool {
        self.bands.iter().all(|b| 2 * b.walk.len() <= self.bound)
    }

    /// The pool restricted to lengths at most `bound`.
    pub fn truncate(&self, bound: usize) -> Self {
        Self {
            bound: bound.min(self.bound),
            bands: self
                .bands
                .iter()
                .filter(|b| b.walk.len() <= bound)
                .cloned()
                .collect(),
        }
    }
}

/// Band classes up to `max_len`, ordered by canonical rotation.
pub fn enumerate_bands(alg: &Algebra, max_len: usize) -> BandPool {
    let mut classes: BTreeSet<Walk> = BTreeSet::new();
    let letters: Vec<Letter> = alg
        .arrows()
        .flat_map(|a| [Letter::direct(a), Letter::inverse_of(a)])
        .collect();
    for v in alg.vertices() {
        let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
        while let Some(word) = stack.pop() {
            let end = word.last().map_or(v, |l| l.target(alg));
            if !word.is_empty() && end == v {
                let w = Walk::new(alg, word.clone()).expect("composable by construction");
                if is_band(alg, &w) {
                    classes.insert(canonical_rotation(alg, &w));
                }
            }
            if word.len() == max_len {
                continue;
            }
            for &l in &letters {
                if l.source(alg) == end && appendable(alg, &word, l) {
                    let mut next = word.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }
    let walks: Vec<Walk> = classes.into_iter().collect();
    let bands = walks
        .iter()
        .map(|w| BandRecord {
            walk: w.clone(),
            is_minimal: minimal_against(alg, w, walks.iter()),
        })
        .collect();
    BandPool {
        bound: max_len,
        bands,
    }
}

fn minimal_against<'a>(alg: &Algebra, w: &Walk, pool: impl Iterator<Item = &'a Walk>) -> bool {
    let fwd = w.letters().to_vec();
    let bwd = w.inverse().letters().to_vec();
    for v in pool {
        if 2 * v.len() > w.len() || band_equivalent(alg, v, w) {
            continue;
        }
        for rot in v
            .rotations(alg)
            .into_iter()
            .chain(v.inverse().rotations(alg))
        {
            let square = rot.power(2);
            if contains_cyclic(&fwd, square.letters()) || contains_cyclic(&bwd, square.letters()) {
                return false;
            }
        }
    }
    true
}

/// No rotation of `w` contains the square of another band as a factor.
pub fn is_minimal_band(alg: &Algebra, w: &Walk, pool: &BandPool) -> Result<bool> {
    let need = w.len() / 2;
    if pool.bound < need {
        return Err(Error::PoolTooSmall {
            have: pool.bound,
            need,
        });
    }
    if !is_band(alg, w) {
        return Err(Error::NotABand(w.display(alg)));
    }
    Ok(minimal_against(alg, w, pool.walks()))
}

/// A maximal factor of an ambient string that reads along `w^N` or
/// `(w^-1)^N`, factored as `u^k v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandRun {
    pub occurrence: Occurrence,
    /// Rotation of `w` or `w^-1` that the run starts with.
    pub u: Walk,
    pub k: usize,
    /// Proper prefix of `u` ending the run.
    pub v: Walk,
}

impl BandRun {
    pub fn word(&self) -> Walk {
        self.u.power(self.k).concat(&self.v)
    }
}

/// Maximal runs of `gamma` along `w^∞` or `(w^-1)^∞`, in either orientation.
fn runs(alg: &Algebra, gamma: &Walk, w: &Walk) -> Vec<BandRun> {
    let l = w.len();
    let g = gamma.letters();
    let mut out: Vec<BandRun> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for orient in [w.clone(), w.inverse()] {
        let u = orient.letters();
        for phase in 0..l {
            for i in 0..g.len() {
                if g[i] != u[phase] {
                    continue;
                }
                if i > 0 && g[i - 1] == u[(phase + l - 1) % l] {
                    continue;
                }
                let mut r = 0;
                while i + r < g.len() && g[i + r] == u[(phase + r) % l] {
                    r += 1;
                }
                if !seen.insert((i, i + r)) {
                    continue;
                }
                let rot = orient.rotate(alg, phase);
                let k = r / l;
                let v = rot.factor(alg, 0, r % l);
                out.push(BandRun {
                    occurrence: Occurrence::at(gamma, i, i + r, false),
                    u: rot,
                    k,
                    v,
                });
            }
        }
    }
    out.sort_by(|a, b| a.occurrence.cmp(&b.occurrence));
    out
}

/// Some rotation of `w` or `w^-1`, raised to the `k`-th power, is a factor of
/// `gamma`.
pub fn supported_on(alg: &Algebra, gamma: &Walk, w: &Walk, k: usize) -> bool {
    assert!(k >= 1);
    runs(alg, gamma, w).iter().any(|r| r.k >= k)
}

/// Largest `k` such that `gamma` is supported on `w^k` (0 if not supported).
pub fn support_power(alg: &Algebra, gamma: &Walk, w: &Walk) -> usize {
    runs(alg, gamma, w).iter().map(|r| r.k).max().unwrap_or(0)
}

/// Maximal `w`-substrings of `gamma`.
pub fn maximal_w_substrings(alg: &Algebra, gamma: &Walk, w: &Walk) -> Vec<BandRun> {
    let mut out: Vec<BandRun> = runs(alg, gamma, w)
        .into_iter()
        .filter(|r| r.k >= 1)
        .collect();
    out.dedup_by(|a, b| {
        a.occurrence.from == b.occurrence.from && a.occurrence.to == b.occurrence.to
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::enumerate_strings;

    fn alg(src: &str) -> Algebra {
        Algebra::parse(src).unwrap()
    }

    fn gentle5() -> Algebra {
        alg(include_str!("../data/gentle5.alg"))
    }

    fn w(a: &Algebra, s: &str) -> Walk {
        Walk::parse(a, s).unwrap()
    }

    #[test]
    fn loop_algebra_bands() {
        let a = alg(include_str!("../data/ex21.alg"));
        assert!(is_band(&a, &w(&a, "alpha beta gamma- beta-")));
        assert!(!is_band(&a, &w(&a, "beta gamma- beta-")));
        assert!(!is_band(&a, &w(&a, "alpha")));
    }

    #[test]
    fn example_bands_and_minimality() {
        let a = gentle5();
        let w1 = w(&a, "b1- a1 c1-");
        let w2 = w(&a, "b2 a2- c2");
        let w21 = w2.concat(&w1);
        let w221 = w2.power(2).concat(&w1);
        for b in [&w1, &w2, &w21, &w221] {
            assert!(is_band(&a, b), "{}", b.display(&a));
        }
        let pool = enumerate_bands(&a, 4);
        assert!(!is_minimal_band(&a, &w221, &pool).unwrap());
        assert!(is_minimal_band(&a, &w2, &pool).unwrap());
        assert!(is_minimal_band(&a, &w21, &pool).unwrap());
        assert_eq!(
            is_minimal_band(&a, &w221, &enumerate_bands(&a, 3)),
            Err(Error::PoolTooSmall { have: 3, need: 4 })
        );
    }

    #[test]
    fn enumeration_contains_family() {
        let a = gentle5();
        let pool = enumerate_bands(&a, 9);
        let w1 = w(&a, "b1- a1 c1-");
        let w2 = w(&a, "b2 a2- c2");
        let targets = [
            w1.clone(),
            w2.clone(),
            w2.concat(&w1),
            w2.power(2).concat(&w1),
            w1.concat(&w2.concat(&w1)),
        ];
        for t in &targets {
            assert!(
                pool.walks().any(|b| band_equivalent(&a, b, t)),
                "{}",
                t.display(&a)
            );
        }
        assert!(!pool.looks_saturated());
    }

    #[test]
    fn kronecker_and_a2() {
        let k = alg(include_str!("../data/kronecker.alg"));
        let pool = enumerate_bands(&k, 6);
        assert_eq!(pool.len(), 1);
        assert!(band_equivalent(&k, &pool.bands[0].walk, &w(&k, "b- a")));
        assert!(pool.looks_saturated());
        let a2 = alg(include_str!("../data/a2.alg"));
        assert!(enumerate_bands(&a2, 6).is_empty());
    }

    #[test]
    fn equivalence() {
        let a = gentle5();
        let w2 = w(&a, "b2 a2- c2");
        assert!(band_equivalent(&a, &w2, &w(&a, "a2- c2 b2")));
        assert!(band_equivalent(&a, &w2, &w2.inverse()));
        assert!(!band_equivalent(&a, &w2, &w(&a, "b1- a1 c1-")));
    }

    #[test]
    fn support_and_maximal_runs() {
        let a = gentle5();
        let gamma = w(&a, "c2 b2 a2- c2 b1-");
        let w2 = w(&a, "b2 a2- c2");
        assert!(supported_on(&a, &gamma, &w2, 1));
        assert!(!supported_on(&a, &gamma, &w2, 2));
        let runs = maximal_w_substrings(&a, &gamma, &w2);
        assert_eq!(runs.len(), 1);
        assert_eq!(
            runs[0].occurrence.word(&a, &gamma).display(&a),
            "c2 b2 a2- c2"
        );
        assert_eq!(runs[0].word(), runs[0].occurrence.word(&a, &gamma));
        assert_eq!(runs[0].k, 1);
        let sq = w2.power(2).concat(&w(&a, "b1- a1 c1-"));
        assert!(supported_on(&a, &sq, &w2, 2));
        let whole = maximal_w_substrings(&a, &w2, &w2);
        assert_eq!(whole.len(), 1);
        assert_eq!((whole[0].occurrence.from, whole[0].occurrence.to), (0, 3));
        let e1 = w(&a, "e:1");
        assert!(!supported_on(&a, &e1, &w2, 1));
        assert!(maximal_w_substrings(&a, &w(&a, "b1"), &w2).is_empty());
    }

    #[test]
    fn undirected_square_strings_are_band_powers() {
        for src in [
            include_str!("../data/gentle5.alg"),
            include_str!("../data/ex21.alg"),
            include_str!("../data/surrogate43.alg"),
        ] {
            let a = alg(src);
            let pool = enumerate_bands(&a, 8);
            for u in enumerate_strings(&a, 8) {
                if u.is_empty() || u.is_directed().unwrap() || !u.is_cyclic() {
                    continue;
                }
                if !u.power(2).is_string(&a) {
                    continue;
                }
                let p = u.primitive_period();
                let root = u.factor(&a, 0, p);
                assert!(
                    pool.walks().any(|b| band_equivalent(&a, b, &root)),
                    "{}",
                    u.display(&a)
                );
            }
        }
    }

    #[test]
    fn canonical_rotation_is_class_invariant() {
        let a = gentle5();
        let pool = enumerate_bands(&a, 7);
        for b in pool.walks() {
            for r in b.rotations(&a).into_iter().chain(b.inverse().rotations(&a)) {
                assert_eq!(canonical_rotation(&a, &r), *b);
                assert!(is_band(&a, &r));
            }
        }
    }
}
