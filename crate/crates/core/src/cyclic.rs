//! Cyclically reduced representatives of conjugacy classes.

use std::collections::HashSet;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rewrite::RewriteSystem;
use crate::word::{cmp_lenlex, Genus, Letter, Word};

/// A word every rotation of which is reduced, read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    word: Word,
}

impl CyclicWord {
    /// Wraps `word`, rejecting it unless it is cyclically reduced.
    pub fn new(word: Word) -> Result<Self> {
        if !is_cyclically_reduced(&word) {
            return Err(Error::NotCyclicallyReduced(word.to_string()));
        }
        Ok(CyclicWord { word })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn genus(&self) -> Genus {
        self.word.genus()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        self.word.letters()
    }

    /// The `k`-th letter with 1-based cyclic indexing: `at(0) == at(len)`.
    /// Panics on the empty word.
    pub fn at(&self, k: i64) -> Letter {
        let m = self.len() as i64;
        self.word.letters()[(k - 1).rem_euclid(m) as usize]
    }

    /// Literal `q`-th power; stays cyclically reduced.
    pub fn pow(&self, q: usize) -> CyclicWord {
        CyclicWord {
            word: self.word.pow(q),
        }
    }
}

impl std::fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.word.fmt(f)
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(serializer)
    }
}

/// `cw = root^exponent` with `root` primitive as a literal cyclic word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeDecomposition {
    pub root: Word,
    pub exponent: usize,
}

/// True iff `w·w` is reduced. The empty word counts as cyclically reduced.
pub fn is_cyclically_reduced(w: &Word) -> bool {
    RewriteSystem::new(w.genus()).is_reduced_letters(&[w.letters(), w.letters()].concat())
}

fn rotate(letters: &[Letter], r: usize) -> Vec<Letter> {
    [&letters[r..], &letters[..r]].concat()
}

/// A cyclically reduced word conjugate to `w`, canonicalized to its
/// lenlex-least rotation.
///
/// Rotating and re-reducing does not always make progress on its own: a
/// rotation may reduce to another word of the same length. Same-length
/// candidates are explored depth-first with a visited set, and any strictly
/// shorter candidate restarts the search.
pub fn cyclic_normal_form(w: &Word) -> CyclicWord {
    let g = w.genus();
    let sys = RewriteSystem::new(g);
    let doubled_reduced = |x: &[Letter]| sys.is_reduced_letters(&[x, x].concat());

    let mut current = sys.normal_form(w).into_letters();
    'outer: while !current.is_empty() && !doubled_reduced(&current) {
        let mut visited: HashSet<Vec<Letter>> = HashSet::new();
        visited.insert(current.clone());
        let mut stack = vec![current.clone()];
        while let Some(x) = stack.pop() {
            if doubled_reduced(&x) {
                current = x;
                break 'outer;
            }
            for r in 0..x.len() {
                let y = rotate(&x, r);
                if sys.is_reduced_letters(&y) {
                    continue;
                }
                let c = sys
                    .normal_form(&Word::from_letters_unchecked(g, y))
                    .into_letters();
                if c.len() < x.len() {
                    current = c;
                    continue 'outer;
                }
                if visited.insert(c.clone()) {
                    stack.push(c);
                }
            }
        }
        unreachable!("rotation search exhausted without finding a cyclically reduced word");
    }

    let best = (0..current.len())
        .map(|r| rotate(&current, r))
        .min_by(|a, b| cmp_lenlex(a, b))
        .unwrap_or_default();
    CyclicWord {
        word: Word::from_letters_unchecked(g, best),
    }
}

/// Largest `q` such that `cw` is the `q`-th power of a literal word.
pub fn prime_decomposition(cw: &CyclicWord) -> Result<PrimeDecomposition> {
    let letters = cw.letters();
    let m = letters.len();
    if m == 0 {
        return Err(Error::TrivialClass);
    }
    let period = (1..=m)
        .filter(|p| m.is_multiple_of(*p))
        .find(|&p| letters[p..] == letters[..m - p])
        .unwrap_or(m);
    Ok(PrimeDecomposition {
        root: Word::from_letters_unchecked(cw.genus(), letters[..period].to_vec()),
        exponent: m / period,
    })
}
