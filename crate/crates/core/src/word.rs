//! Alphabet, words and the length-lexicographic order for the surface group
//! presentation `<c_1, ..., c_2g | c_1 c_2 ... c_2g = c_2g ... c_2 c_1>`.
//!
//! Letters are 1-indexed. The external text form of a word is a list of
//! signed integers separated by whitespace or commas, `-j` standing for
//! `c_j^{-1}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Genus of a closed orientable hyperbolic surface, always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidGenus(g));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of generators, `2g`.
    pub fn generators(self) -> u32 {
        2 * self.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One signed generator `c_j` or `c_j^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    index: u32,
    inverse: bool,
}

impl Letter {
    /// `c_j`. Panics if `j == 0`.
    pub fn gen(j: u32) -> Self {
        assert!(j >= 1, "generator indices start at 1");
        Letter {
            index: j,
            inverse: false,
        }
    }

    /// `c_j^{-1}`. Panics if `j == 0`.
    pub fn inv(j: u32) -> Self {
        assert!(j >= 1, "generator indices start at 1");
        Letter {
            index: j,
            inverse: true,
        }
    }

    /// From the signed-integer encoding; `None` for zero.
    pub fn from_signed(v: i32) -> Option<Self> {
        match v.cmp(&0) {
            Ordering::Greater => Some(Letter::gen(v as u32)),
            Ordering::Less => Some(Letter::inv(v.unsigned_abs())),
            Ordering::Equal => None,
        }
    }

    pub fn signed(self) -> i32 {
        if self.inverse {
            -(self.index as i32)
        } else {
            self.index as i32
        }
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    /// Rank in the generator order
    /// `c_2g^{-1} > ... > c_1^{-1} > c_1 > c_2 > ... > c_2g`.
    fn order_key(self) -> i64 {
        -(self.signed() as i64)
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

/// Length-lexicographic comparison of two letter sequences.
pub fn cmp_lenlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A finite word in the letters `c_j^{±1}`, `1 <= j <= 2g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    genus: Genus,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(genus: Genus, letters: Vec<Letter>) -> Result<Self> {
        let max = genus.generators();
        if let Some(bad) = letters.iter().find(|l| l.index > max) {
            return Err(Error::LetterOutOfRange {
                token: bad.to_string(),
                max,
            });
        }
        Ok(Word { genus, letters })
    }

    /// Caller guarantees every index is within `1..=2g`.
    pub(crate) fn from_letters_unchecked(genus: Genus, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index <= genus.generators()));
        Word { genus, letters }
    }

    pub fn empty(genus: Genus) -> Self {
        Word {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn from_signed(genus: Genus, values: &[i32]) -> Result<Self> {
        let letters = values
            .iter()
            .map(|&v| Letter::from_signed(v).ok_or_else(|| Error::ZeroToken(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Word::new(genus, letters)
    }

    /// Parses the signed-integer text format. Blank text gives the empty word.
    pub fn parse(text: &str, genus: Genus) -> Result<Self> {
        let max = genus.generators();
        let mut letters = Vec::new();
        for token in text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let v: i32 = token
                .parse()
                .map_err(|_| Error::MalformedToken(token.to_string()))?;
            let letter =
                Letter::from_signed(v).ok_or_else(|| Error::ZeroToken(token.to_string()))?;
            if letter.index > max {
                return Err(Error::LetterOutOfRange {
                    token: token.to_string(),
                    max,
                });
            }
            letters.push(letter);
        }
        Ok(Word { genus, letters })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    /// `a_k^{-1} ... a_1^{-1}` for `a_1 ... a_k`.
    pub fn invert(&self) -> Word {
        Word {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Left rotation by `r` (taken modulo the length).
    pub fn rotate(&self, r: isize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let r = r.rem_euclid(self.letters.len() as isize) as usize;
        let mut letters = Vec::with_capacity(self.letters.len());
        letters.extend_from_slice(&self.letters[r..]);
        letters.extend_from_slice(&self.letters[..r]);
        Word {
            genus: self.genus,
            letters,
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_genus(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            genus: self.genus,
            letters,
        })
    }

    /// The literal word repeated `n` times.
    pub fn pow(&self, n: usize) -> Word {
        Word {
            genus: self.genus,
            letters: self.letters.repeat(n),
        }
    }

    pub fn compare_lenlex(&self, other: &Word) -> Result<Ordering> {
        self.check_genus(other)?;
        Ok(cmp_lenlex(&self.letters, &other.letters))
    }

    pub fn check_genus(&self, other: &Word) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus.0, other.genus.0));
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Free-function form of [`Word::parse`].
pub fn parse_word(text: &str, genus: Genus) -> Result<Word> {
    Word::parse(text, genus)
}

/// Canonical text form: signed integers separated by single spaces.
pub fn format_word(w: &Word) -> String {
    w.to_string()
}
