use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::{brick_hom_dim, first_fho_violation, Brick, BrickPools, Completeness, FhoSequence};
use crate::algebra::Algebra;
use crate::band::{enumerate_bands, supported_on};
use crate::error::{Error, Result};
use crate::walk::Walk;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    pub node_budget: u64,
    pub max_length: Option<usize>,
    pub stop_at_first: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            node_budget: 20_000_000,
            max_length: None,
            stop_at_first: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub sequences: Vec<FhoSequence>,
    /// The same sequences as pool bricks, so band entries stay visible.
    pub bricks: Vec<Vec<Brick>>,
    pub nodes: u64,
    pub budget_exhausted: bool,
    /// Emitted sequences that miss some simple module. Expected empty.
    pub missing_simple_sequences: usize,
}

type MemoKey = (FixedBitSet, FixedBitSet, usize, usize);

struct Searcher<'a> {
    pools: &'a BrickPools,
    limits: SearchLimits,
    /// Position of each entry in the order constraint.
    rank: Vec<Option<usize>>,
    order_len: usize,
    nodes: u64,
    exhausted: bool,
    dead: HashSet<MemoKey>,
    path: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Searcher<'_> {
    /// `c`: entries with `Hom(prefix, B) = 0` (end insertions);
    /// `w`: entries with a pending interior insertion slot.
    fn dfs(&mut self, c: &FixedBitSet, w: &FixedBitSet, placed: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.limits.node_budget {
            self.exhausted = true;
            return false;
        }
        let depth = if self.limits.max_length.is_some() {
            self.path.len()
        } else {
            0
        };
        let key = (c.clone(), w.clone(), placed, depth);
        if self.dead.contains(&key) {
            return false;
        }
        let mut open = c.clone();
        open.intersect_with(&self.pools.members);
        if open.is_clear() {
            if c.is_clear() && w.is_clear() && placed == self.order_len {
                self.found.push(self.path.clone());
                return true;
            }
            self.dead.insert(key);
            return false;
        }
        // Every pending witness must be killed by a later entry, and every
        // end candidate outside the member pool must be pushed out of C.
        let doomed = w.ones().any(|b| self.pools.from[b].is_disjoint(&open))
            || c.ones()
                .any(|b| !self.pools.members.contains(b) && self.pools.to[b].is_disjoint(&open));
        let too_long = self.limits.max_length.is_some_and(|m| self.path.len() >= m);
        if doomed || too_long {
            self.dead.insert(key);
            return false;
        }
        let mut any = false;
        for x in open.ones() {
            let next_placed = match self.rank[x] {
                Some(r) if r != placed => continue,
                Some(_) => placed + 1,
                None => placed,
            };
            let mut c2 = c.clone();
            c2.set(x, false);
            let mut w2 = w.clone();
            w2.union_with(&c2);
            w2.difference_with(&self.pools.to[x]);
            c2.difference_with(&self.pools.from[x]);
            self.path.push(x);
            let hit = self.dfs(&c2, &w2, next_placed);
            self.path.pop();
            any |= hit;
            if self.exhausted || (any && self.limits.stop_at_first) {
                return any;
            }
        }
        if !any {
            self.dead.insert(key);
        }
        any
    }
}

/// Depth-first search over member bricks; `order` optionally forces a
/// relative order on some entries (all of which must appear).
pub(crate) fn run_search(
    alg: &Algebra,
    pools: &BrickPools,
    limits: SearchLimits,
    order: &[usize],
) -> SearchOutcome {
    let n = pools.len();
    let mut rank = vec![None; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = Some(r);
    }
    let mut searcher = Searcher {
        pools,
        limits,
        rank,
        order_len: order.len(),
        nodes: 0,
        exhausted: false,
        dead: HashSet::new(),
        path: Vec::new(),
        found: Vec::new(),
    };
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    searcher.dfs(&all, &FixedBitSet::with_capacity(n), 0);
    let mut seqs: Vec<Vec<Brick>> = searcher
        .found
        .iter()
        .map(|p| p.iter().map(|&i| pools.entries[i].brick.clone()).collect())
        .collect();
    seqs.sort();
    seqs.dedup();
    let mut missing = 0;
    let sequences = seqs
        .iter()
        .map(|s| {
            let entries: Vec<Walk> = s.iter().map(|b| b.walk().clone()).collect();
            if alg.vertices().any(|v| !entries.contains(&Walk::trivial(v))) {
                missing += 1;
            }
            FhoSequence {
                entries,
                completeness: Completeness::CompleteRelative {
                    bounds: pools.bounds.clone(),
                },
            }
        })
        .collect();
    SearchOutcome {
        sequences,
        bricks: seqs,
        nodes: searcher.nodes,
        budget_exhausted: searcher.exhausted,
        missing_simple_sequences: missing,
    }
}

/// All sequences of member bricks that are complete relative to the
/// insertion pool, in canonical order.
pub fn enumerate_mgs(alg: &Algebra, pools: &BrickPools, limits: SearchLimits) -> SearchOutcome {
    run_search(alg, pools, limits, &[])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub verdict: Completeness,
    /// Simple modules absent from the sequence.
    pub missing_simples: Vec<String>,
    /// The only refinement witnesses are band families.
    pub band_only_witness: bool,
    /// Entries supported on the square of a band, as `(index, band)`. Such
    /// entries rule out completion to a maximal green sequence.
    pub square_supported: Vec<(usize, String)>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        matches!(self.verdict, Completeness::CompleteRelative { .. })
    }
}

/// Looks for a brick of the insertion pool that refines `seq`.
pub fn is_complete_relative(
    alg: &Algebra,
    seq: &[Walk],
    pools: &BrickPools,
) -> Result<CompletenessReport> {
    if let Some((left, right)) = first_fho_violation(alg, seq)? {
        return Err(Error::NotWeaklyFho { left, right });
    }
    let entries: Vec<Brick> = seq.iter().map(Brick::string).collect();
    let lambdas = &pools.bounds.lambdas;
    let slots: Vec<Option<usize>> = pools
        .entries
        .par_iter()
        .map(|e| -> Result<Option<usize>> {
            if entries.contains(&e.brick) {
                return Ok(None);
            }
            let mut first_left = entries.len();
            for (i, s) in entries.iter().enumerate() {
                if brick_hom_dim(alg, s, &e.brick, lambdas)? != 0 {
                    first_left = i;
                    break;
                }
            }
            let mut min_slot = 0;
            for (i, s) in entries.iter().enumerate().rev() {
                if brick_hom_dim(alg, &e.brick, s, lambdas)? != 0 {
                    min_slot = i + 1;
                    break;
                }
            }
            Ok((min_slot <= first_left).then_some(min_slot))
        })
        .collect::<Result<_>>()?;
    let witness = |band: bool| {
        pools
            .entries
            .iter()
            .zip(&slots)
            .find(|(e, s)| e.brick.is_band() == band && s.is_some())
            .map(|(e, s)| (e.brick.display(alg), s.expect("checked")))
    };
    let string_witness = witness(false);
    let band_witness = witness(true);
    let band_only_witness = string_witness.is_none() && band_witness.is_some();
    let verdict = match string_witness.or(band_witness) {
        Some((brick, position)) => Completeness::Refinable { brick, position },
        None => Completeness::CompleteRelative {
            bounds: pools.bounds.clone(),
        },
    };
    let missing_simples = alg
        .vertices()
        .filter(|&v| !seq.contains(&Walk::trivial(v)))
        .map(|v| alg.vertex_name(v).to_string())
        .collect();
    let longest = seq.iter().map(Walk::len).max().unwrap_or(0);
    let bands = enumerate_bands(alg, longest / 2);
    let square_supported = seq
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            bands
                .walks()
                .find(|b| supported_on(alg, s, b, 2))
                .map(|b| (i, b.display(alg)))
        })
        .collect();
    Ok(CompletenessReport {
        verdict,
        missing_simples,
        band_only_witness,
        square_supported,
    })
}
