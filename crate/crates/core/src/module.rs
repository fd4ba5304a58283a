//! String and band modules, tops and socles, and the combinatorial Hom count.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Algebra, ArrowId, VertexId};
use crate::band::{enumerate_bands, is_band, supported_on, BandPool};
use crate::error::{Error, Result};
use crate::occurrence::Occurrence;
use crate::walk::{enumerate_strings, Walk};

/// `M(w)`: basis `x_0..x_d` along the walk, one basis move per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringModuleRep {
    pub walk: Walk,
    /// Vertex of each basis vector.
    pub basis: Vec<VertexId>,
    pub dim_vector: Vec<usize>,
    /// `(arrow, from, to)`: the arrow sends basis vector `from` to `to`.
    pub actions: Vec<(ArrowId, usize, usize)>,
}

pub fn string_module(alg: &Algebra, w: &Walk) -> Result<StringModuleRep> {
    if !w.is_string(alg) {
        return Err(Error::NotAString(w.display(alg)));
    }
    let basis = w.vertices(alg);
    let mut dim_vector = vec![0; alg.vertex_count()];
    for v in &basis {
        dim_vector[v.0] += 1;
    }
    let actions = w
        .letters()
        .iter()
        .enumerate()
        .map(|(i, l)| {
            if l.inverse {
                (l.arrow, i + 1, i)
            } else {
                (l.arrow, i, i + 1)
            }
        })
        .collect();
    Ok(StringModuleRep {
        walk: w.clone(),
        basis,
        dim_vector,
        actions,
    })
}

/// `M(w, λ, k)`: `k`-dimensional blocks at each position of the cyclic walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandModuleRep {
    pub band: Walk,
    pub lambda: BigRational,
    pub k: usize,
    /// Vertex of each block position `0..d`.
    pub positions: Vec<VertexId>,
    pub dim_vector: Vec<usize>,
}

impl BandModuleRep {
    /// Block matrix carried by letter `i`, mapping block `from` to block `to`.
    pub fn letter_block(&self, i: usize) -> (ArrowId, usize, usize, Vec<Vec<BigRational>>) {
        let d = self.band.len();
        let l = self.band.letters()[i];
        let k = self.k;
        let mut m = vec![vec![BigRational::zero(); k]; k];
        let diag = if i + 1 == d {
            if l.inverse {
                self.lambda.recip()
            } else {
                self.lambda.clone()
            }
        } else {
            BigRational::one()
        };
        for r in 0..k {
            m[r][r] = diag.clone();
            if i + 1 == d && r > 0 {
                m[r][r - 1] = BigRational::one();
            }
        }
        let (from, to) = if l.inverse {
            ((i + 1) % d, i)
        } else {
            (i, (i + 1) % d)
        };
        (l.arrow, from, to, m)
    }
}

pub fn band_module(
    alg: &Algebra,
    w: &Walk,
    lambda: BigRational,
    k: usize,
) -> Result<BandModuleRep> {
    if !is_band(alg, w) {
        return Err(Error::NotABand(w.display(alg)));
    }
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    if k == 0 {
        return Err(Error::ZeroMultiplicity);
    }
    let mut positions = w.vertices(alg);
    positions.pop();
    let mut dim_vector = vec![0; alg.vertex_count()];
    for v in &positions {
        dim_vector[v.0] += k;
    }
    Ok(BandModuleRep {
        band: w.clone(),
        lambda,
        k,
        positions,
        dim_vector,
    })
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Every factor occurrence of `w`, length-0 ones included.
pub fn occurrences_with_flags(w: &Walk) -> Vec<Occurrence> {
    let d = w.len();
    let mut out = Vec::with_capacity((d + 1) * (d + 2) / 2);
    for from in 0..=d {
        for to in from..=d {
            out.push(Occurrence::at(w, from, to, false));
        }
    }
    out
}

/// Simples in the top and socle, as vertex multisets in position order.
pub fn top_socle(alg: &Algebra, w: &Walk) -> (Vec<VertexId>, Vec<VertexId>) {
    let verts = w.vertices(alg);
    let mut top = Vec::new();
    let mut socle = Vec::new();
    for (p, &v) in verts.iter().enumerate() {
        let occ = Occurrence::at(w, p, p, false);
        if occ.is_quotient() {
            top.push(v);
        }
        if occ.is_submodule() {
            socle.push(v);
        }
    }
    (top, socle)
}

/// Top and socle of `M(w, λ, 1)`, read cyclically around the band.
pub fn band_top_socle(alg: &Algebra, w: &Walk) -> (Vec<VertexId>, Vec<VertexId>) {
    let verts = w.vertices(alg);
    let mut top = Vec::new();
    let mut socle = Vec::new();
    for (p, &v) in verts.iter().enumerate().take(w.len()) {
        let occ = Occurrence::cyclic(w.letters(), p, p);
        if occ.is_quotient() {
            top.push(v);
        }
        if occ.is_submodule() {
            socle.push(v);
        }
    }
    (top, socle)
}

fn keyed_counts(alg: &Algebra, w: &Walk, quotient: bool) -> HashMap<Walk, usize> {
    let mut counts = HashMap::new();
    for occ in occurrences_with_flags(w) {
        let keep = if quotient {
            occ.is_quotient()
        } else {
            occ.is_submodule()
        };
        if keep {
            *counts
                .entry(occ.word(alg, w).canonical_string())
                .or_insert(0) += 1;
        }
    }
    counts
}

/// Factors giving quotients of `M(w)`, keyed by canonical word.
pub fn quotient_factors(alg: &Algebra, w: &Walk) -> HashMap<Walk, usize> {
    keyed_counts(alg, w, true)
}

/// Factors giving submodules of `M(w)`, keyed by canonical word.
pub fn submodule_factors(alg: &Algebra, w: &Walk) -> HashMap<Walk, usize> {
    keyed_counts(alg, w, false)
}

/// `dim Hom(M(w), M(w'))`: pairs of a quotient factor of `w` and a
/// submodule factor of `w'` with the same word up to inversion.
///
/// A nonempty string never equals its own inverse, so each matching pair is
/// counted once.
pub fn hom_dim(alg: &Algebra, w: &Walk, w2: &Walk) -> usize {
    let q = quotient_factors(alg, w);
    let s = submodule_factors(alg, w2);
    q.iter()
        .map(|(word, n)| n * s.get(word).copied().unwrap_or(0))
        .sum()
}

pub fn is_brick(alg: &Algebra, w: &Walk) -> bool {
    hom_dim(alg, w, w) == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrickInfo {
    pub walk: Walk,
    /// Bands from the pool whose square supports this brick.
    pub square_bands: Vec<Walk>,
}

/// String bricks up to `max_len` with their band-square annotations over the
/// given pool.
pub fn enumerate_bricks_with_pool(
    alg: &Algebra,
    max_len: usize,
    pool: &BandPool,
) -> Vec<BrickInfo> {
    enumerate_strings(alg, max_len)
        .into_iter()
        .filter(|w| is_brick(alg, w))
        .map(|w| {
            let square_bands = pool
                .walks()
                .filter(|b| 2 * b.len() <= w.len() && supported_on(alg, &w, b, 2))
                .cloned()
                .collect();
            BrickInfo {
                walk: w,
                square_bands,
            }
        })
        .collect()
}

/// String bricks up to `max_len`, annotated against bands of length at most
/// `max_len / 2`.
pub fn enumerate_bricks(alg: &Algebra, max_len: usize) -> Vec<BrickInfo> {
    let pool = enumerate_bands(alg, max_len / 2);
    enumerate_bricks_with_pool(alg, max_len, &pool)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagram(pub Vec<String>);

/// Peak/valley picture: direct letters step down-right, inverse letters
/// step up-right. Layout is advisory.
pub fn diagram(alg: &Algebra, w: &Walk) -> Diagram {
    let verts = w.vertices(alg);
    let width = verts
        .iter()
        .map(|v| alg.vertex_name(*v).chars().count())
        .max()
        .unwrap_or(1);
    let mut level: i64 = 0;
    let mut levels = vec![0i64];
    for l in w.letters() {
        level += if l.inverse { -1 } else { 1 };
        levels.push(level);
    }
    let min = *levels.iter().min().expect("nonempty");
    let max = *levels.iter().max().expect("nonempty");
    let rows = (2 * (max - min) + 1) as usize;
    let cols = verts.len() * (width + 1) + width;
    let mut grid = vec![vec![' '; cols]; rows];
    for (i, v) in verts.iter().enumerate() {
        let row = (2 * (levels[i] - min)) as usize;
        let col = i * (width + 1);
        for (j, ch) in alg.vertex_name(*v).chars().enumerate() {
            grid[row][col + j] = ch;
        }
        if i < w.len() {
            let down = !w.letters()[i].inverse;
            let r = (2 * (levels[i].min(levels[i + 1]) - min) + 1) as usize;
            grid[r][col + width] = if down { '\\' } else { '/' };
        }
    }
    Diagram(
        grid.into_iter()
            .map(|r| r.into_iter().collect::<String>().trim_end().to_string())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::maximal_w_substrings;

    fn alg(src: &str) -> Algebra {
        Algebra::parse(src).unwrap()
    }

    fn w(a: &Algebra, s: &str) -> Walk {
        Walk::parse(a, s).unwrap()
    }

    #[test]
    fn example_dimension_vectors() {
        let a = alg(include_str!("../data/gentle5.alg"));
        let m = string_module(&a, &w(&a, "c2 b2 a2- c2 b1-")).unwrap();
        assert_eq!(m.dim_vector, vec![1, 2, 1, 0, 2]);
        let s = string_module(&a, &w(&a, "e:3")).unwrap();
        assert_eq!(s.dim_vector, vec![0, 0, 1, 0, 0]);
        let b = alg(include_str!("../data/mgs5.alg"));
        let m = string_module(&b, &w(&b, "a1 b2 d b1- a2-")).unwrap();
        assert_eq!(m.dim_vector, vec![2, 1, 1, 1, 1]);
        assert!(string_module(&a, &w(&a, "b1 b2")).is_err());
    }

    #[test]
    fn band_module_shape() {
        let a = alg(include_str!("../data/gentle5.alg"));
        let w2 = w(&a, "b2 a2- c2");
        let m = band_module(&a, &w2, rational(2), 2).unwrap();
        assert_eq!(m.dim_vector, vec![0, 2, 2, 0, 2]);
        let (arrow, _, _, block) = m.letter_block(2);
        assert_eq!(a.arrow_name(arrow), "c2");
        assert_eq!(
            block,
            vec![
                vec![rational(2), rational(0)],
                vec![rational(1), rational(2)]
            ]
        );
        assert_eq!(band_module(&a, &w2, rational(0), 1), Err(Error::ZeroLambda));
        assert_eq!(
            band_module(&a, &w2, rational(1), 0),
            Err(Error::ZeroMultiplicity)
        );
    }

    #[test]
    fn tops_and_socles() {
        let at = alg(include_str!("../data/atilde12.alg"));
        let (top, socle) = top_socle(&at, &w(&at, "b1"));
        assert_eq!(top, vec![VertexId(0)]);
        assert_eq!(socle, vec![VertexId(2)]);
        let (top, socle) = top_socle(&at, &w(&at, "e:2"));
        assert_eq!((top, socle), (vec![VertexId(1)], vec![VertexId(1)]));
        let s = alg(include_str!("../data/surrogate43.alg"));
        let (top, socle) = top_socle(&s, &w(&s, "a1- a2"));
        assert_eq!(top, vec![VertexId(0)]);
        assert_eq!(socle, vec![VertexId(1), VertexId(1)]);
        let (top, socle) = band_top_socle(&at, &w(&at, "b1 b2 a-"));
        assert_eq!((top, socle), (vec![VertexId(0)], vec![VertexId(1)]));
    }

    #[test]
    fn hom_counts() {
        let at = alg(include_str!("../data/atilde12.alg"));
        let b1 = w(&at, "b1");
        assert_eq!(hom_dim(&at, &b1, &w(&at, "e:3")), 0);
        assert_eq!(hom_dim(&at, &b1, &w(&at, "e:1")), 1);
        for v in ["e:1", "e:2", "e:3"] {
            for u in ["e:1", "e:2", "e:3"] {
                assert_eq!(hom_dim(&at, &w(&at, v), &w(&at, u)), usize::from(u == v));
            }
        }
        let g = alg(include_str!("../data/gentle5.alg"));
        let gamma = w(&g, "c2 b2 a2- c2 b1-");
        assert_eq!(hom_dim(&g, &gamma, &gamma), 1);
        assert_eq!(hom_dim(&g, &gamma.inverse(), &gamma), 1);
        let b = alg(include_str!("../data/mgs5.alg"));
        assert!(is_brick(&b, &w(&b, "a1 b2 d b1- a2-")));
    }

    #[test]
    fn brick_enumeration() {
        let a2 = alg(include_str!("../data/a2.alg"));
        let bricks = enumerate_bricks(&a2, 4);
        assert_eq!(bricks.len(), 3);
        let at = alg(include_str!("../data/atilde12.alg"));
        let bricks = enumerate_bricks(&at, 8);
        let sq = w(&at, "b1 b2 a- b1 b2 a-").canonical_string();
        let found = bricks
            .iter()
            .find(|b| b.walk == sq)
            .expect("square brick present");
        assert_eq!(found.square_bands.len(), 1);
    }

    #[test]
    fn band_square_bricks() {
        let g = alg(include_str!("../data/gentle5.alg"));
        let w2 = w(&g, "b2 a2- c2");
        assert!(!is_brick(&g, &w2.power(2)));
        assert!(is_brick(&g, &w2.power(2).concat(&w(&g, "b2"))));
    }

    #[test]
    fn diagram_shape() {
        let at = alg(include_str!("../data/atilde12.alg"));
        let d = diagram(&at, &w(&at, "b1 b2 a-"));
        assert_eq!(d.0, vec!["1", " \\", "  3   1", "   \\ /", "    2"]);
    }

    #[test]
    fn dimension_total_and_maximal_substrings_are_subs_or_quotients() {
        let g = alg(include_str!("../data/gentle5.alg"));
        let pool = enumerate_bands(&g, 6);
        for s in enumerate_strings(&g, 8) {
            let m = string_module(&g, &s).unwrap();
            assert_eq!(m.dim_vector.iter().sum::<usize>(), s.len() + 1);
            if !is_brick(&g, &s) {
                continue;
            }
            for b in pool.walks() {
                for run in maximal_w_substrings(&g, &s, b) {
                    assert!(run.occurrence.is_quotient() || run.occurrence.is_submodule());
                }
            }
        }
    }
}
