//! Maximal green sequences as complete forward hom-orthogonal sequences of
//! bricks, searched relative to finite brick pools.

mod existence;
mod lemmas;
mod pools;
mod search;

pub use existence::{
    complete_from_prefix, domestic_gentle_order, simple_order_socle_first, PrefixCompletion,
    SimpleOrder, TopSocleWitness,
};
pub use lemmas::{
    lemma_property_suite, LemmaBounds, LemmaCheck, LemmaReport, BAND_POWER, EMBEDS_IN_BAND,
    EXTENSION_BRICK, POWER_SUBSTRING_BRICK, SQUARE_EXCLUSION, SQUARE_PREFIX, SUB_OR_QUOTIENT,
};
pub use pools::{build_brick_pools, BrickPools, PoolBounds, PoolEntry};
pub use search::{
    enumerate_mgs, is_complete_relative, CompletenessReport, SearchLimits, SearchOutcome,
};

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::module::{band_module, hom_dim, is_brick, rational, string_module};
use crate::oracle::{band_to_explicit, hom_dim_linalg, string_to_explicit, ExplicitRep};
use crate::walk::Walk;

/// A brick: a string module, or the family `M(w, λ, 1)` of a band.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Brick {
    String(Walk),
    Band(Walk),
}

impl Brick {
    pub fn string(w: &Walk) -> Self {
        Brick::String(w.canonical_string())
    }

    pub fn walk(&self) -> &Walk {
        match self {
            Brick::String(w) | Brick::Band(w) => w,
        }
    }

    pub fn is_band(&self) -> bool {
        matches!(self, Brick::Band(_))
    }

    pub fn display(&self, alg: &Algebra) -> String {
        match self {
            Brick::String(w) => w.display(alg),
            Brick::Band(w) => format!("band({})", w.display(alg)),
        }
    }

    fn explicit(&self, alg: &Algebra, lambda: &BigRational) -> Result<ExplicitRep> {
        match self {
            Brick::String(w) => string_to_explicit(alg, &string_module(alg, w)?),
            Brick::Band(w) => band_to_explicit(alg, &band_module(alg, w, lambda.clone(), 1)?),
        }
    }
}

/// `dim Hom(a, b)`. String pairs use the substring count; anything involving
/// a band family is solved by the oracle at every sampled parameter, and the
/// samples must agree.
pub fn brick_hom_dim(alg: &Algebra, a: &Brick, b: &Brick, lambdas: &[i64]) -> Result<usize> {
    if let (Brick::String(x), Brick::String(y)) = (a, b) {
        return Ok(hom_dim(alg, x, y));
    }
    let mut seen: Option<usize> = None;
    for &l in lambdas {
        let lambda = rational(l);
        let d = hom_dim_linalg(alg, &a.explicit(alg, &lambda)?, &b.explicit(alg, &lambda)?)?;
        match seen {
            Some(prev) if prev != d => {
                return Err(Error::LambdaDisagreement(format!(
                    "Hom({}, {}) has dimension {prev} and {d}",
                    a.display(alg),
                    b.display(alg)
                )))
            }
            _ => seen = Some(d),
        }
    }
    Ok(seen.unwrap_or(0))
}

/// Brick status; band families are checked at every sampled parameter.
pub fn brick_is_brick(alg: &Algebra, b: &Brick, lambdas: &[i64]) -> Result<bool> {
    match b {
        Brick::String(w) => Ok(is_brick(alg, w)),
        Brick::Band(_) => Ok(brick_hom_dim(alg, b, b, lambdas)? == 1),
    }
}

/// Verdict on whether a sequence can be refined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Completeness {
    Unverified,
    CompleteRelative {
        bounds: PoolBounds,
    },
    /// Inserting `brick` so that `position` entries precede it keeps the
    /// sequence weakly forward hom-orthogonal.
    Refinable {
        brick: String,
        position: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FhoSequence {
    pub entries: Vec<Walk>,
    pub completeness: Completeness,
}

/// `Hom(M_i, M_j) = 0` for all `i < j`. Returns the first offending pair.
pub fn first_fho_violation(alg: &Algebra, seq: &[Walk]) -> Result<Option<(usize, usize)>> {
    for (i, w) in seq.iter().enumerate() {
        if !w.is_string(alg) {
            return Err(Error::NotAString(w.display(alg)));
        }
        if !is_brick(alg, w) {
            return Err(Error::NonBrickEntry { index: i });
        }
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if hom_dim(alg, &seq[i], &seq[j]) != 0 {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_weakly_fho(alg: &Algebra, seq: &[Walk]) -> Result<bool> {
    Ok(first_fho_violation(alg, seq)?.is_none())
}

/// Whether `b` can be placed after the first `p` entries of `seq` keeping
/// the sequence weakly forward hom-orthogonal.
pub fn insertable(
    alg: &Algebra,
    seq: &[Walk],
    p: usize,
    b: &Brick,
    lambdas: &[i64],
) -> Result<bool> {
    assert!(p <= seq.len());
    let entries: Vec<Brick> = seq.iter().map(Brick::string).collect();
    let b = match b {
        Brick::String(w) => Brick::string(w),
        other => other.clone(),
    };
    if entries.contains(&b) {
        return Ok(false);
    }
    for e in &entries[..p] {
        if brick_hom_dim(alg, e, &b, lambdas)? != 0 {
            return Ok(false);
        }
    }
    for e in &entries[p..] {
        if brick_hom_dim(alg, &b, e, lambdas)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parses a sequence file: one walk literal per line, `#` comments.
pub fn parse_sequence(alg: &Algebra, text: &str) -> Result<Vec<Walk>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| Walk::parse(alg, l))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(src: &str) -> Algebra {
        Algebra::parse(src).unwrap()
    }

    fn seq(a: &Algebra, lits: &[&str]) -> Vec<Walk> {
        lits.iter().map(|l| Walk::parse(a, l).unwrap()).collect()
    }

    #[test]
    fn fho_on_a2() {
        let a = alg(include_str!("../../data/a2.alg"));
        assert!(is_weakly_fho(&a, &seq(&a, &["e:2", "e:1"])).unwrap());
        assert!(is_weakly_fho(&a, &seq(&a, &["e:1", "e:2"])).unwrap());
        assert!(is_weakly_fho(&a, &seq(&a, &["a", "e:2"])).unwrap());
        assert!(!is_weakly_fho(&a, &seq(&a, &["e:2", "a"])).unwrap());
        assert!(is_weakly_fho(&a, &seq(&a, &["a"])).unwrap());
    }

    #[test]
    fn printed_sequence_is_fho() {
        let a = alg(include_str!("../../data/mgs5.alg"));
        let s = parse_sequence(&a, include_str!("../../data/mgs5_seq.txt")).unwrap();
        assert_eq!(s.len(), 14);
        assert!(is_weakly_fho(&a, &s).unwrap());
    }

    #[test]
    fn non_brick_entry_is_rejected() {
        let g = alg(include_str!("../../data/gentle5.alg"));
        let s = seq(&g, &["e:1", "b2 a2- c2 b2 a2- c2"]);
        assert_eq!(
            is_weakly_fho(&g, &s),
            Err(Error::NonBrickEntry { index: 1 })
        );
    }

    #[test]
    fn insertion_of_square_brick() {
        let a = alg(include_str!("../../data/atilde12.alg"));
        let s = seq(&a, &["e:1", "b1"]);
        let sq = Brick::string(&Walk::parse(&a, "b1 b2 a- b1 b2 a-").unwrap());
        assert!(insertable(&a, &s, 2, &sq, &[1, 2]).unwrap());
        let b1 = Brick::string(&s[1]);
        assert!(!insertable(&a, &s, 2, &b1, &[1, 2]).unwrap());
    }

    #[test]
    fn band_family_homs_agree_across_parameters() {
        let a = alg(include_str!("../../data/atilde12.alg"));
        let band = Brick::Band(Walk::parse(&a, "b1 b2 a-").unwrap());
        assert!(brick_is_brick(&a, &band, &[1, 2, 3]).unwrap());
        let s1 = Brick::string(&Walk::parse(&a, "e:1").unwrap());
        let s2 = Brick::string(&Walk::parse(&a, "e:2").unwrap());
        assert_eq!(brick_hom_dim(&a, &band, &s1, &[1, 2]).unwrap(), 1);
        assert_eq!(brick_hom_dim(&a, &s2, &band, &[1, 2]).unwrap(), 1);
        assert_eq!(brick_hom_dim(&a, &s1, &band, &[1, 2]).unwrap(), 0);
    }
}
