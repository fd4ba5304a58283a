//! Located substrings with their boundary letters.

use crate::algebra::Algebra;
use crate::walk::{Letter, Walk};

/// A factor of an ambient walk between vertex positions `from` and `to`.
///
/// `reversed` records that the factor matched the inverse of the searched
/// word. Boundary letters are read in the ambient orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub from: usize,
    pub to: usize,
    pub reversed: bool,
    pub left: Option<Letter>,
    pub right: Option<Letter>,
}

impl Occurrence {
    /// Occurrence of the factor `from..to` of `ambient`.
    pub fn at(ambient: &Walk, from: usize, to: usize, reversed: bool) -> Self {
        let letters = ambient.letters();
        Self {
            from,
            to,
            reversed,
            left: from.checked_sub(1).map(|i| letters[i]),
            right: letters.get(to).copied(),
        }
    }

    /// Occurrence inside a cyclic word, where both neighbours always exist.
    pub fn cyclic(letters: &[Letter], from: usize, to: usize) -> Self {
        let n = letters.len();
        Self {
            from,
            to,
            reversed: false,
            left: Some(letters[(from + n - 1) % n]),
            right: Some(letters[to % n]),
        }
    }

    pub fn len(&self) -> usize {
        self.to - self.from
    }

    pub fn is_empty(&self) -> bool {
        self.to == self.from
    }

    /// The factor induces a quotient of the ambient string module.
    pub fn is_quotient(&self) -> bool {
        self.left.is_none_or(|l| l.inverse) && self.right.is_none_or(|r| !r.inverse)
    }

    /// The factor induces a submodule of the ambient string module.
    pub fn is_submodule(&self) -> bool {
        self.left.is_none_or(|l| !l.inverse) && self.right.is_none_or(|r| r.inverse)
    }

    pub fn word(&self, alg: &Algebra, ambient: &Walk) -> Walk {
        ambient.factor(alg, self.from, self.to)
    }
}

/// Every occurrence of `u` or `u^-1` in `gamma`.
pub fn substring_occurrences(alg: &Algebra, gamma: &Walk, u: &Walk) -> Vec<Occurrence> {
    if u.is_empty() {
        return gamma
            .vertices(alg)
            .into_iter()
            .enumerate()
            .filter(|&(_, v)| v == u.start())
            .map(|(p, _)| Occurrence::at(gamma, p, p, false))
            .collect();
    }
    let n = u.len();
    let forward = u.letters();
    let backward = u.inverse();
    let g = gamma.letters();
    let mut out = Vec::new();
    if n > g.len() {
        return out;
    }
    for i in 0..=g.len() - n {
        let window = &g[i..i + n];
        if window == forward {
            out.push(Occurrence::at(gamma, i, i + n, false));
        } else if window == backward.letters() {
            out.push(Occurrence::at(gamma, i, i + n, true));
        }
    }
    out
}
