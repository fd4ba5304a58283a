use serde::Serialize;

use super::search::{run_search, SearchLimits};
use super::{Brick, BrickPools, FhoSequence};
use crate::algebra::{Algebra, ArrowId, VertexId};
use crate::band::BandPool;
use crate::error::{Error, Result};
use crate::module::band_top_socle;
use crate::occurrence::Occurrence;
use crate::walk::Walk;

/// A simple in the top of one band module and the socle of another (possibly
/// the same) band module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopSocleWitness {
    pub simple: String,
    pub top_band: String,
    pub socle_band: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleOrder {
    /// No simple sits in a band top and a band socle.
    pub holds: bool,
    pub witnesses: Vec<TopSocleWitness>,
    /// Simples appearing in some band socle first, then the rest.
    #[serde(skip)]
    pub order: Vec<VertexId>,
}

/// Reads band tops and socles over the pool and orders the simples with the
/// socle-appearing ones first.
pub fn simple_order_socle_first(alg: &Algebra, pool: &BandPool) -> SimpleOrder {
    let n = alg.vertex_count();
    let mut top_band: Vec<Option<&Walk>> = vec![None; n];
    let mut socle_band: Vec<Option<&Walk>> = vec![None; n];
    for w in pool.walks() {
        let (top, socle) = band_top_socle(alg, w);
        for v in top {
            top_band[v.0].get_or_insert(w);
        }
        for v in socle {
            socle_band[v.0].get_or_insert(w);
        }
    }
    let witnesses: Vec<TopSocleWitness> = alg
        .vertices()
        .filter_map(|v| {
            let (t, s) = (top_band[v.0]?, socle_band[v.0]?);
            Some(TopSocleWitness {
                simple: alg.vertex_name(v).to_string(),
                top_band: t.display(alg),
                socle_band: s.display(alg),
            })
        })
        .collect();
    let (mut order, rest): (Vec<VertexId>, Vec<VertexId>) =
        alg.vertices().partition(|v| socle_band[v.0].is_some());
    order.extend(rest);
    SimpleOrder {
        holds: witnesses.is_empty(),
        witnesses,
        order,
    }
}

/// Directed path of a band from a peak down to a valley.
struct Descent {
    peak: VertexId,
    valley: VertexId,
    arrows: Vec<ArrowId>,
}

/// Both descents from every peak of `w`.
fn descents(alg: &Algebra, w: &Walk) -> Vec<Descent> {
    let letters = w.letters();
    let verts = w.vertices(alg);
    let l = letters.len();
    let mut out = Vec::new();
    for p in 0..l {
        if !Occurrence::cyclic(letters, p, p).is_quotient() {
            continue;
        }
        let mut forward = Vec::new();
        let mut i = p;
        while !letters[i % l].inverse {
            forward.push(letters[i % l].arrow);
            i += 1;
        }
        out.push(Descent {
            peak: verts[p],
            valley: verts[i % l],
            arrows: forward,
        });
        let mut backward = Vec::new();
        let mut i = p + l;
        while letters[(i - 1) % l].inverse {
            backward.push(letters[(i - 1) % l].arrow);
            i -= 1;
        }
        out.push(Descent {
            peak: verts[p],
            valley: verts[i % l],
            arrows: backward,
        });
    }
    out
}

fn composes(alg: &Algebra, first: &[ArrowId], second: &[ArrowId]) -> bool {
    let mut path = first.to_vec();
    path.extend_from_slice(second);
    !alg.path_is_zero(&path)
}

/// One chain of distinct simples built from band descents whose
/// compositions stay nonzero. Returned in sequence order, last socle first.
fn chain(alg: &Algebra, bands: &[(Walk, Vec<Descent>)]) -> Result<Vec<VertexId>> {
    let name = |v: VertexId| alg.vertex_name(v).to_string();
    let start = &bands[0].1[0];
    let mut forward = vec![start.peak, start.valley];
    let mut path = start.arrows.clone();
    loop {
        let here = *forward.last().expect("nonempty");
        let from_here: Vec<(&Walk, &Descent)> = bands
            .iter()
            .flat_map(|(w, ds)| ds.iter().map(move |d| (w, d)))
            .filter(|(_, d)| d.peak == here)
            .collect();
        let Some((w, _)) = from_here.first() else {
            break;
        };
        let Some((_, next)) = from_here
            .iter()
            .find(|(_, d)| composes(alg, &path, &d.arrows))
        else {
            return Err(Error::NoNonzeroContinuation {
                vertex: name(here),
                band: w.display(alg),
            });
        };
        if forward.contains(&next.valley) {
            return Err(Error::RepeatedSimple {
                vertex: name(next.valley),
            });
        }
        forward.push(next.valley);
        path = next.arrows.clone();
    }
    let mut backward = Vec::new();
    let mut path = start.arrows.clone();
    let mut here = start.peak;
    loop {
        let into_here: Vec<(&Walk, &Descent)> = bands
            .iter()
            .flat_map(|(w, ds)| ds.iter().map(move |d| (w, d)))
            .filter(|(_, d)| d.valley == here)
            .collect();
        let Some((w, _)) = into_here.first() else {
            break;
        };
        let Some((_, prev)) = into_here
            .iter()
            .find(|(_, d)| composes(alg, &d.arrows, &path))
        else {
            return Err(Error::NoNonzeroContinuation {
                vertex: name(here),
                band: w.display(alg),
            });
        };
        if forward.contains(&prev.peak) || backward.contains(&prev.peak) {
            return Err(Error::RepeatedSimple {
                vertex: name(prev.peak),
            });
        }
        backward.push(prev.peak);
        path = prev.arrows.clone();
        here = prev.peak;
    }
    forward.reverse();
    forward.extend(backward);
    Ok(forward)
}

/// Simple order for a gentle algebra from chains of band descents.
///
/// Bands with a simple in both their top and socle are ignored. Each chain
/// starts at the first peak of the first remaining band, runs forward along
/// nonzero compositions, then backward; bands touching the chain are then
/// retired. Simples on no chain follow in vertex order.
pub fn domestic_gentle_order(alg: &Algebra, pool: &BandPool) -> Result<Vec<VertexId>> {
    let report = alg.validate_axioms();
    if !report.is_gentle {
        return Err(Error::NotGentle(format!("{:?}", report.violations)));
    }
    let mut remaining: Vec<(Walk, Vec<Descent>)> = pool
        .walks()
        .filter(|w| {
            let (top, socle) = band_top_socle(alg, w);
            top.iter().all(|v| !socle.contains(v))
        })
        .map(|w| (w.clone(), descents(alg, w)))
        .collect();
    let mut order: Vec<VertexId> = Vec::new();
    while !remaining.is_empty() {
        let xs = chain(alg, &remaining)?;
        remaining.retain(|(w, _)| {
            let (top, socle) = band_top_socle(alg, w);
            !top.iter().chain(&socle).any(|v| xs.contains(v))
        });
        for v in xs {
            if order.contains(&v) {
                return Err(Error::RepeatedSimple {
                    vertex: alg.vertex_name(v).to_string(),
                });
            }
            order.push(v);
        }
    }
    let rest: Vec<VertexId> = alg.vertices().filter(|v| !order.contains(v)).collect();
    order.extend(rest);
    Ok(order)
}

#[derive(Clone, Debug)]
pub struct PrefixCompletion {
    pub sequence: Option<FhoSequence>,
    pub nodes: u64,
    pub budget_exhausted: bool,
}

/// First complete sequence containing the simples `x` in the given relative
/// order; other bricks may interleave.
pub fn complete_from_prefix(
    alg: &Algebra,
    pools: &BrickPools,
    x: &[VertexId],
    limits: SearchLimits,
) -> Result<PrefixCompletion> {
    let order: Vec<usize> = x
        .iter()
        .map(|&v| {
            pools
                .index_of(&Brick::String(Walk::trivial(v)))
                .ok_or_else(|| Error::NotABrick(Walk::trivial(v).display(alg)))
        })
        .collect::<Result<_>>()?;
    let limits = SearchLimits {
        stop_at_first: true,
        ..limits
    };
    let out = run_search(alg, pools, limits, &order);
    Ok(PrefixCompletion {
        sequence: out.sequences.into_iter().next(),
        nodes: out.nodes,
        budget_exhausted: out.budget_exhausted,
    })
}
