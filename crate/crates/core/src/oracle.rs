//! Hom spaces between explicit representations by exact linear algebra.
//!
//! Independent of the combinatorial Hom count: the intertwiner equations
//! `f_t A_a = B_a f_s` are assembled and solved over the rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::module::{BandModuleRep, StringModuleRep};

pub type Q = BigRational;

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Q>> = (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for r in rank + 1..self.rows {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &pivot;
                let (upper, lower) = m.split_at_mut(r);
                for (x, y) in lower[0][c..].iter_mut().zip(&upper[rank][c..]) {
                    *x -= &f * y;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rows as strings, for JSON output.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }
}

/// A representation: vector space dimensions and one matrix per arrow
/// (`dim target × dim source`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl ExplicitRep {
    pub fn zero_on(alg: &Algebra, dims: Vec<usize>) -> Self {
        let maps = alg
            .arrows()
            .map(|a| Matrix::zeros(dims[alg.target(a).0], dims[alg.source(a).0]))
            .collect();
        Self { dims, maps }
    }

    /// Checks that every relation acts as zero.
    pub fn check_relations(&self, alg: &Algebra) -> Result<()> {
        for rel in alg.relations() {
            let mut acc = self.maps[rel[0].0].clone();
            for a in &rel[1..] {
                acc = self.maps[a.0].mul(&acc);
            }
            if !acc.is_zero() {
                return Err(Error::RelationNotZero {
                    relation: alg.relation_names(rel),
                });
            }
        }
        Ok(())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Local index of each basis vector inside its vertex space.
fn local_indices(vertex_of: &[usize], n_vertices: usize) -> (Vec<usize>, Vec<usize>) {
    let mut counts = vec![0; n_vertices];
    let mut local = Vec::with_capacity(vertex_of.len());
    for &v in vertex_of {
        local.push(counts[v]);
        counts[v] += 1;
    }
    (local, counts)
}

pub fn string_to_explicit(alg: &Algebra, m: &StringModuleRep) -> Result<ExplicitRep> {
    let vertex_of: Vec<usize> = m.basis.iter().map(|v| v.0).collect();
    let (local, dims) = local_indices(&vertex_of, alg.vertex_count());
    let mut rep = ExplicitRep::zero_on(alg, dims);
    for &(arrow, from, to) in &m.actions {
        rep.maps[arrow.0].set(local[to], local[from], Q::one());
    }
    rep.check_relations(alg)?;
    Ok(rep)
}

pub fn band_to_explicit(alg: &Algebra, m: &BandModuleRep) -> Result<ExplicitRep> {
    let k = m.k;
    let vertex_of: Vec<usize> = m.positions.iter().map(|v| v.0).collect();
    let (local, counts) = local_indices(&vertex_of, alg.vertex_count());
    let dims: Vec<usize> = counts.iter().map(|c| c * k).collect();
    let mut rep = ExplicitRep::zero_on(alg, dims);
    for i in 0..m.band.len() {
        let (arrow, from, to, block) = m.letter_block(i);
        for (r, row) in block.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    rep.maps[arrow.0].set(local[to] * k + r, local[from] * k + c, x.clone());
                }
            }
        }
    }
    rep.check_relations(alg)?;
    Ok(rep)
}

/// Sparse row: strictly increasing column indices, nonzero values.
type Row = Vec<(usize, Q)>;

fn axpy(row: &Row, factor: &Q, pivot: &Row) -> Row {
    // row - factor * pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelon form built row by row; pivots have leading coefficient 1.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    fn insert(&mut self, mut row: Row) {
        while let Some((lead, coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &coeff, p),
                None => {
                    let inv = coeff.recip();
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    /// Basis of the solution space of the inserted homogeneous system.
    fn nullspace(&self, n: usize) -> Vec<Vec<Q>> {
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Q::zero(); n];
                x[f] = Q::one();
                for (&p, row) in self.pivots.iter().rev() {
                    let mut s = Q::zero();
                    for (c, v) in &row[1..] {
                        if !x[*c].is_zero() {
                            s += v * &x[*c];
                        }
                    }
                    x[p] = -s;
                }
                x
            })
            .collect()
    }
}

/// A basis of `Hom(A, B)`; each element is one matrix per vertex
/// (`dim B_v × dim A_v`).
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<Vec<Matrix>>,
    source_dims: Vec<usize>,
    target_dims: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The map `Σ c_j f_j` at vertex `v`.
    pub fn combine(&self, coeffs: &[Q], v: usize) -> Matrix {
        let mut out = Matrix::zeros(self.target_dims[v], self.source_dims[v]);
        for (c, f) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.data.iter_mut().zip(&f[v].data) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }
}

pub fn hom_space(alg: &Algebra, a: &ExplicitRep, b: &ExplicitRep) -> Result<HomSpace> {
    if a.dims.len() != b.dims.len() {
        return Err(Error::DimensionMismatch {
            left: a.dims.len(),
            right: b.dims.len(),
        });
    }
    let nv = a.dims.len();
    // Variable offsets: f_v[i][j] for i < dim B_v, j < dim A_v.
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + a.dims[v] * b.dims[v];
    }
    let n = offset[nv];
    let var = |v: usize, i: usize, j: usize| offset[v] + i * a.dims[v] + j;
    let mut ech = Echelon::default();
    for arrow in alg.arrows() {
        let s = alg.source(arrow).0;
        let t = alg.target(arrow).0;
        let am = &a.maps[arrow.0];
        let bm = &b.maps[arrow.0];
        // (f_t A)[i][j] - (B f_s)[i][j] = 0 for i < dim B_t, j < dim A_s.
        for i in 0..b.dims[t] {
            for j in 0..a.dims[s] {
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for k in 0..a.dims[t] {
                    let x = am.get(k, j);
                    if !x.is_zero() {
                        *acc.entry(var(t, i, k)).or_insert_with(Q::zero) += x;
                    }
                }
                for k in 0..b.dims[s] {
                    let x = bm.get(i, k);
                    if !x.is_zero() {
                        *acc.entry(var(s, k, j)).or_insert_with(Q::zero) -= x;
                    }
                }
                let row: Row = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    let basis = ech
        .nullspace(n)
        .into_iter()
        .map(|x| {
            (0..nv)
                .map(|v| Matrix {
                    rows: b.dims[v],
                    cols: a.dims[v],
                    data: x[offset[v]..offset[v + 1]].to_vec(),
                })
                .collect()
        })
        .collect();
    Ok(HomSpace {
        basis,
        source_dims: a.dims.clone(),
        target_dims: b.dims.clone(),
    })
}

pub fn hom_dim_linalg(alg: &Algebra, a: &ExplicitRep, b: &ExplicitRep) -> Result<usize> {
    Ok(hom_space(alg, a, b)?.dim())
}

/// How "some intertwiner is injective/surjective" is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    /// Eight random rational points; a negative answer may be wrong.
    Sampled,
    /// Exhaustive grid search per vertex, exact; bounded by `cap` points.
    Certified { cap: u128 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Injective,
    Surjective,
}

const SAMPLES: usize = 8;

fn random_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<Q> {
    (0..m)
        .map(|_| {
            let num: i64 = rng.gen_range(-1000..=1000);
            let den: i64 = rng.gen_range(1..=97);
            Q::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

fn target_rank(space: &HomSpace, v: usize, target: Target) -> usize {
    match target {
        Target::Injective => space.source_dims[v],
        Target::Surjective => space.target_dims[v],
    }
}

fn reaches(space: &HomSpace, point: &[Q], v: usize, target: Target) -> bool {
    space.combine(point, v).rank() == target_rank(space, v, target)
}

/// Whether some element of `space` is injective (surjective) at every vertex.
pub fn exists_with_full_rank(
    space: &HomSpace,
    target: Target,
    mode: RankMode,
    seed: u64,
) -> Result<bool> {
    let nv = space.source_dims.len();
    for v in 0..nv {
        let (s, t) = (space.source_dims[v], space.target_dims[v]);
        let impossible = match target {
            Target::Injective => s > t,
            Target::Surjective => t > s,
        };
        if impossible {
            return Ok(false);
        }
    }
    let relevant: Vec<usize> = (0..nv)
        .filter(|&v| target_rank(space, v, target) > 0)
        .collect();
    if relevant.is_empty() {
        return Ok(true);
    }
    if space.dim() == 0 {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLES {
        let p = random_point(&mut rng, space.dim());
        if relevant.iter().all(|&v| reaches(space, &p, v, target)) {
            return Ok(true);
        }
    }
    let RankMode::Certified { cap } = mode else {
        return Ok(false);
    };
    // A nonzero minor of order r is a polynomial of degree r in the
    // coefficients, so it cannot vanish on all of {0..r}^m. The per-vertex
    // open sets are nonempty together iff each is nonempty.
    for &v in &relevant {
        let r = target_rank(space, v, target);
        let active: Vec<usize> = (0..space.dim())
            .filter(|&j| !space.basis[j][v].is_zero())
            .collect();
        let m = active.len();
        let needed = (r as u128 + 1).checked_pow(m as u32).unwrap_or(u128::MAX);
        if needed > cap {
            return Err(Error::CertificationTooLarge { needed, cap });
        }
        let mut digits = vec![0u64; m];
        let mut found = false;
        loop {
            let mut coeffs = vec![Q::zero(); space.dim()];
            for (d, &j) in digits.iter().zip(&active) {
                coeffs[j] = Q::from_integer(BigInt::from(*d));
            }
            if reaches(space, &coeffs, v, target) {
                found = true;
                break;
            }
            let mut pos = 0;
            while pos < m && digits[pos] == r as u64 {
                digits[pos] = 0;
                pos += 1;
            }
            if pos == m {
                break;
            }
            digits[pos] += 1;
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience: display a rational in lowest terms with a positive
/// denominator.
pub fn q_to_string(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.denom().is_negative() {
        format!("{}/{}", -q.numer(), -q.denom())
    } else {
        q.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{band_module, hom_dim, rational, string_module};
    use crate::walk::{enumerate_strings, Walk};

    fn alg(src: &str) -> Algebra {
        Algebra::parse(src).unwrap()
    }

    fn srep(a: &Algebra, s: &str) -> ExplicitRep {
        string_to_explicit(a, &string_module(a, &Walk::parse(a, s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn example_string_matrices() {
        let g = alg(include_str!("../data/gentle5.alg"));
        let rep = srep(&g, "c2 b2 a2- c2 b1-");
        assert_eq!(rep.dims, vec![1, 2, 1, 0, 2]);
        let b2 = g.arrow_by_name("b2").unwrap();
        assert_eq!(rep.maps[b2.0].to_strings(), vec![vec!["1", "0"]]);
        let c2 = g.arrow_by_name("c2").unwrap();
        assert_eq!(
            rep.maps[c2.0].to_strings(),
            vec![vec!["1", "0"], vec!["0", "1"]]
        );
        let b1 = g.arrow_by_name("b1").unwrap();
        assert_eq!(rep.maps[b1.0].to_strings(), vec![vec!["0"], vec!["1"]]);
        let e = srep(&g, "e:2");
        assert_eq!(e.dims, vec![0, 1, 0, 0, 0]);
        assert!(e.maps.iter().all(Matrix::is_zero));
    }

    #[test]
    fn band_matrices_and_endomorphisms() {
        let g = alg(include_str!("../data/gentle5.alg"));
        let w2 = Walk::parse(&g, "b2 a2- c2").unwrap();
        let m = band_to_explicit(&g, &band_module(&g, &w2, rational(2), 2).unwrap()).unwrap();
        let c2 = g.arrow_by_name("c2").unwrap();
        assert_eq!(
            m.maps[c2.0].to_strings(),
            vec![vec!["2", "0"], vec!["1", "2"]]
        );
        let a2 = g.arrow_by_name("a2").unwrap();
        assert_eq!(
            m.maps[a2.0].to_strings(),
            vec![vec!["1", "0"], vec!["0", "1"]]
        );
        assert!(hom_dim_linalg(&g, &m, &m).unwrap() >= 2);
        let m1 = band_to_explicit(&g, &band_module(&g, &w2, rational(1), 1).unwrap()).unwrap();
        assert_eq!(hom_dim_linalg(&g, &m1, &m1).unwrap(), 1);
        let m12 = band_to_explicit(&g, &band_module(&g, &w2, rational(1), 2).unwrap()).unwrap();
        assert_eq!(hom_dim_linalg(&g, &m12, &m12).unwrap(), 2);
    }

    #[test]
    fn kronecker_band_scalars() {
        let k = alg(include_str!("../data/kronecker.alg"));
        let w = Walk::parse(&k, "b- a").unwrap();
        let m = band_to_explicit(&k, &band_module(&k, &w, rational(3), 1).unwrap()).unwrap();
        assert_eq!(m.dims, vec![1, 1]);
        let a = k.arrow_by_name("a").unwrap();
        let b = k.arrow_by_name("b").unwrap();
        assert_eq!(m.maps[a.0].to_strings(), vec![vec!["3"]]);
        assert_eq!(m.maps[b.0].to_strings(), vec![vec!["1"]]);
    }

    #[test]
    fn simples() {
        let at = alg(include_str!("../data/atilde12.alg"));
        let s1 = srep(&at, "e:1");
        let s2 = srep(&at, "e:2");
        assert_eq!(hom_dim_linalg(&at, &s1, &s1).unwrap(), 1);
        assert_eq!(hom_dim_linalg(&at, &s1, &s2).unwrap(), 0);
        let b1 = srep(&at, "b1");
        assert_eq!(hom_dim_linalg(&at, &b1, &srep(&at, "e:3")).unwrap(), 0);
        assert_eq!(hom_dim_linalg(&at, &b1, &s1).unwrap(), 1);
        let other = alg(include_str!("../data/a2.alg"));
        let x = srep(&other, "e:1");
        assert!(matches!(
            hom_dim_linalg(&at, &s1, &x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn relation_violation_is_reported() {
        let ex = alg(include_str!("../data/ex21.alg"));
        let mut rep = ExplicitRep::zero_on(&ex, vec![2, 0]);
        let alpha = ex.arrow_by_name("alpha").unwrap();
        rep.maps[alpha.0] = Matrix {
            rows: 2,
            cols: 2,
            data: vec![rational(1), rational(0), rational(0), rational(1)],
        };
        assert!(matches!(
            rep.check_relations(&ex),
            Err(Error::RelationNotZero { .. })
        ));
    }

    #[test]
    fn injective_and_surjective_maps() {
        let at = alg(include_str!("../data/atilde12.alg"));
        let b1 = srep(&at, "b1");
        let s1 = srep(&at, "e:1");
        let s3 = srep(&at, "e:3");
        let onto = hom_space(&at, &b1, &s1).unwrap();
        for mode in [RankMode::Sampled, RankMode::Certified { cap: 1 << 20 }] {
            assert!(exists_with_full_rank(&onto, Target::Surjective, mode, 7).unwrap());
            assert!(!exists_with_full_rank(&onto, Target::Injective, mode, 7).unwrap());
        }
        let into = hom_space(&at, &s3, &b1).unwrap();
        assert!(exists_with_full_rank(&into, Target::Injective, RankMode::Sampled, 1).unwrap());
        let g = alg(include_str!("../data/gentle5.alg"));
        let w2 = Walk::parse(&g, "b2 a2- c2").unwrap();
        let band = band_to_explicit(&g, &band_module(&g, &w2, rational(2), 3).unwrap()).unwrap();
        let sub = srep(&g, "c2 b2 a2- c2 b2 a2- c2");
        let space = hom_space(&g, &sub, &band).unwrap();
        let certified = exists_with_full_rank(
            &space,
            Target::Injective,
            RankMode::Certified { cap: 1 << 24 },
            3,
        );
        let sampled = exists_with_full_rank(&space, Target::Injective, RankMode::Sampled, 3);
        assert_eq!(certified.unwrap(), sampled.unwrap());
        let tiny = exists_with_full_rank(
            &hom_space(&g, &sub, &sub).unwrap(),
            Target::Surjective,
            RankMode::Certified { cap: 0 },
            3,
        );
        assert!(tiny.is_ok());
    }

    #[test]
    fn oracle_matches_combinatorics_small() {
        let g = alg(include_str!("../data/gentle5.alg"));
        let strings = enumerate_strings(&g, 3);
        let reps: Vec<ExplicitRep> = strings
            .iter()
            .map(|s| string_to_explicit(&g, &string_module(&g, s).unwrap()).unwrap())
            .collect();
        for (i, s) in strings.iter().enumerate() {
            for (j, t) in strings.iter().enumerate() {
                assert_eq!(
                    hom_dim(&g, s, t),
                    hom_dim_linalg(&g, &reps[i], &reps[j]).unwrap(),
                    "{} -> {}",
                    s.display(&g),
                    t.display(&g)
                );
            }
        }
    }

    #[test]
    fn inverse_walks_give_isomorphic_modules() {
        let g = alg(include_str!("../data/gentle5.alg"));
        for s in enumerate_strings(&g, 4) {
            let a = string_to_explicit(&g, &string_module(&g, &s).unwrap()).unwrap();
            let b = string_to_explicit(&g, &string_module(&g, &s.inverse()).unwrap()).unwrap();
            assert_eq!(
                hom_dim_linalg(&g, &a, &a).unwrap(),
                hom_dim_linalg(&g, &b, &b).unwrap()
            );
            assert_eq!(
                hom_dim_linalg(&g, &a, &b).unwrap(),
                hom_dim_linalg(&g, &b, &a).unwrap()
            );
        }
    }
}
