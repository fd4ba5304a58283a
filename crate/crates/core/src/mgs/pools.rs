use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::{brick_hom_dim, brick_is_brick, Brick};
use crate::algebra::Algebra;
use crate::band::enumerate_bands;
use crate::error::Result;
use crate::module::enumerate_bricks_with_pool;
use crate::walk::Walk;

/// Bounds that every completeness claim is relative to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoolBounds {
    pub max_string_len: usize,
    pub band_bound: usize,
    pub lambdas: Vec<i64>,
    /// Member pool keeps band-square-supported strings.
    pub unfiltered: bool,
    /// Shorter length bound for members; insertion witnesses still range
    /// up to `max_string_len`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member_len: Option<usize>,
}

impl PoolBounds {
    pub fn new(max_string_len: usize) -> Self {
        Self {
            max_string_len,
            band_bound: max_string_len / 2,
            lambdas: vec![1, 2],
            unfiltered: false,
            member_len: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoolEntry {
    pub brick: Brick,
    pub member: bool,
    /// Band whose square supports this string brick, if any.
    pub square_band: Option<Walk>,
}

/// Insertion pool with a distinguished member sub-pool, and the nonvanishing
/// pattern of Hom between entries whenever one side is a member.
#[derive(Clone, Debug)]
pub struct BrickPools {
    pub bounds: PoolBounds,
    pub entries: Vec<PoolEntry>,
    /// `from[i]` = entries `j` with `Hom(i, j) != 0`.
    pub(crate) from: Vec<FixedBitSet>,
    /// `to[i]` = entries `j` with `Hom(j, i) != 0`.
    pub(crate) to: Vec<FixedBitSet>,
    pub(crate) members: FixedBitSet,
}

impl BrickPools {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = &PoolEntry> {
        self.entries.iter().filter(|e| e.member)
    }

    pub fn excluded(&self) -> impl Iterator<Item = &PoolEntry> {
        self.entries.iter().filter(|e| e.square_band.is_some())
    }

    pub fn index_of(&self, b: &Brick) -> Option<usize> {
        self.entries.iter().position(|e| e.brick == *b)
    }

    /// Hom pattern; only meaningful when `i` or `j` is a member.
    pub fn hom_nonzero(&self, i: usize, j: usize) -> bool {
        self.from[i].contains(j)
    }
}

/// Builds the member and insertion pools for string length `L`.
///
/// Members are the string bricks not supported on the square of a band of
/// length at most `L / 2`; the insertion pool adds those and the band
/// families `M(w, λ, 1)` that are bricks, up to the band bound. Band
/// families are never members.
pub fn build_brick_pools(alg: &Algebra, bounds: &PoolBounds) -> Result<BrickPools> {
    alg.require_string_algebra()?;
    let l = bounds.max_string_len;
    let square_pool = enumerate_bands(alg, l / 2);
    let mut entries: Vec<PoolEntry> = enumerate_bricks_with_pool(alg, l, &square_pool)
        .into_iter()
        .map(|b| {
            let square_band = b.square_bands.first().cloned();
            PoolEntry {
                member: (bounds.unfiltered || square_band.is_none())
                    && bounds.member_len.is_none_or(|m| b.walk.len() <= m),
                brick: Brick::String(b.walk),
                square_band,
            }
        })
        .collect();
    let bands = if bounds.band_bound <= l / 2 {
        square_pool.truncate(bounds.band_bound)
    } else {
        enumerate_bands(alg, bounds.band_bound)
    };
    let band_bricks: Vec<Brick> = bands.walks().map(|w| Brick::Band(w.clone())).collect();
    let flags: Vec<bool> = band_bricks
        .par_iter()
        .map(|b| brick_is_brick(alg, b, &bounds.lambdas))
        .collect::<Result<_>>()?;
    for (b, ok) in band_bricks.into_iter().zip(flags) {
        if ok {
            entries.push(PoolEntry {
                brick: b,
                member: false,
                square_band: None,
            });
        }
    }

    let n = entries.len();
    let mut members = FixedBitSet::with_capacity(n);
    for (i, e) in entries.iter().enumerate() {
        members.set(i, e.member);
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| members.contains(i) || members.contains(j))
        .collect();
    let nonzero: Vec<bool> = pairs
        .par_iter()
        .map(|&(i, j)| {
            brick_hom_dim(alg, &entries[i].brick, &entries[j].brick, &bounds.lambdas)
                .map(|d| d != 0)
        })
        .collect::<Result<_>>()?;
    let mut from = vec![FixedBitSet::with_capacity(n); n];
    let mut to = vec![FixedBitSet::with_capacity(n); n];
    for (&(i, j), nz) in pairs.iter().zip(nonzero) {
        if nz {
            from[i].insert(j);
            to[j].insert(i);
        }
    }
    Ok(BrickPools {
        bounds: bounds.clone(),
        entries,
        from,
        to,
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(src: &str) -> Algebra {
        Algebra::parse(src).unwrap()
    }

    #[test]
    fn a2_pools() {
        let a = alg(include_str!("../../data/a2.alg"));
        let pools = build_brick_pools(&a, &PoolBounds::new(4)).unwrap();
        assert_eq!(pools.len(), 3);
        assert_eq!(pools.members().count(), 3);
    }

    #[test]
    fn atilde_pools_flag_the_square() {
        let a = alg(include_str!("../../data/atilde12.alg"));
        let pools = build_brick_pools(&a, &PoolBounds::new(8)).unwrap();
        let sq = Brick::string(&Walk::parse(&a, "b1 b2 a- b1 b2 a-").unwrap());
        let idx = pools.index_of(&sq).unwrap();
        assert!(!pools.entries[idx].member);
        assert!(pools.entries[idx].square_band.is_some());
        let band = Brick::Band(Walk::parse(&a, "b1 b2 a-").unwrap());
        let band = Brick::Band(crate::band::canonical_rotation(&a, band.walk()));
        assert!(pools.index_of(&band).is_some());
        for (i, e) in pools.entries.iter().enumerate() {
            if e.member {
                assert!(pools.hom_nonzero(i, i));
            }
        }
    }

    #[test]
    fn loop_algebra_keeps_band_families() {
        let g = alg(include_str!("../../data/gentle5.alg"));
        let mut bounds = PoolBounds::new(6);
        bounds.band_bound = 3;
        let pools = build_brick_pools(&g, &bounds).unwrap();
        let bands: Vec<&Walk> = pools
            .entries
            .iter()
            .filter(|e| e.brick.is_band())
            .map(|e| e.brick.walk())
            .collect();
        assert_eq!(bands.len(), 2);
    }
}
