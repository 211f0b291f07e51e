//! The Gröbner–Shirshov rewriting system `D` for the surface group and the
//! normal-form procedure built on it.
//!
//! `D` has eight rule families. Families 1 and 2 are infinite (one rule for
//! each repetition count `s >= 1`) and are never materialized: they are
//! recognised by scanning for the periodic block at match time.
//!
//! | family | leading word                                   | replacement                                  |
//! |--------|------------------------------------------------|----------------------------------------------|
//! | 1      | `c_j (c_{j-1}..c_1 c_2g^-1..c_{j+1}^-1)^s c_j^-1` | `(c_{j+1}^-1..c_2g^-1 c_1..c_{j-1})^s`      |
//! | 2      | `c_j (c_{j+1}..c_2g c_1^-1..c_{j-1}^-1)^s c_j^-1` | `(c_{j-1}^-1..c_1^-1 c_2g..c_{j+1})^s`      |
//! | 3      | `c_2g^-1 .. c_1^-1`                              | `c_1^-1 .. c_2g^-1`                          |
//! | 4      | `c_1 .. c_2g`                                    | `c_2g .. c_1`                                |
//! | 5      | `c_i^-1..c_2g^-1 c_1..c_{i-1}`                   | `c_{i-1}..c_1 c_2g^-1..c_i^-1`               |
//! | 6      | `c_{i-1}^-1..c_1^-1 c_2g..c_i`                   | `c_i..c_2g c_1^-1..c_{i-1}^-1`               |
//! | 7      | `c_i^-1 c_i`                                     | empty                                        |
//! | 8      | `c_i c_i^-1`                                     | empty                                        |

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{cmp_lenlex, Genus, Letter, Word};

/// One element of the basis, identified by family and parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family_name")]
pub enum Rule {
    /// Family 1, `j in 2..=2g`, `s >= 1`.
    DescendingConjugate { j: u32, s: u32 },
    /// Family 2, `j in 2..=2g`, `s >= 1`.
    AscendingConjugate { j: u32, s: u32 },
    /// Family 3.
    InverseRelator,
    /// Family 4, the defining relation itself.
    Relator,
    /// Family 5, `i in 2..=2g`.
    InverseShift { i: u32 },
    /// Family 6, `i in 2..=2g`.
    PositiveShift { i: u32 },
    /// Family 7, `c_i^-1 c_i`.
    LeftCancel { i: u32 },
    /// Family 8, `c_i c_i^-1`.
    RightCancel { i: u32 },
}

impl Rule {
    /// Builds a rule from its family number and parameters, checking the
    /// legal ranges for genus `g`.
    pub fn new(family: u8, j: Option<u32>, s: Option<u32>, g: Genus) -> Result<Rule> {
        let n = g.generators();
        let illegal = || Error::IllegalRule { family, j, s };
        let rule = match (family, j, s) {
            (1, Some(j), Some(s)) if (2..=n).contains(&j) && s >= 1 => {
                Rule::DescendingConjugate { j, s }
            }
            (2, Some(j), Some(s)) if (2..=n).contains(&j) && s >= 1 => {
                Rule::AscendingConjugate { j, s }
            }
            (3, None, None) => Rule::InverseRelator,
            (4, None, None) => Rule::Relator,
            (5, Some(i), None) if (2..=n).contains(&i) => Rule::InverseShift { i },
            (6, Some(i), None) if (2..=n).contains(&i) => Rule::PositiveShift { i },
            (7, Some(i), None) if (1..=n).contains(&i) => Rule::LeftCancel { i },
            (8, Some(i), None) if (1..=n).contains(&i) => Rule::RightCancel { i },
            _ => return Err(illegal()),
        };
        Ok(rule)
    }

    pub fn family(&self) -> u8 {
        match self {
            Rule::DescendingConjugate { .. } => 1,
            Rule::AscendingConjugate { .. } => 2,
            Rule::InverseRelator => 3,
            Rule::Relator => 4,
            Rule::InverseShift { .. } => 5,
            Rule::PositiveShift { .. } => 6,
            Rule::LeftCancel { .. } => 7,
            Rule::RightCancel { .. } => 8,
        }
    }

    /// The generator parameter (`j` or `i`), absent for families 3 and 4.
    pub fn generator(&self) -> Option<u32> {
        match *self {
            Rule::DescendingConjugate { j, .. } | Rule::AscendingConjugate { j, .. } => Some(j),
            Rule::InverseRelator | Rule::Relator => None,
            Rule::InverseShift { i }
            | Rule::PositiveShift { i }
            | Rule::LeftCancel { i }
            | Rule::RightCancel { i } => Some(i),
        }
    }

    pub fn repetitions(&self) -> Option<u32> {
        match *self {
            Rule::DescendingConjugate { s, .. } | Rule::AscendingConjugate { s, .. } => Some(s),
            _ => None,
        }
    }

    pub fn leading_len(&self, g: Genus) -> usize {
        let n = g.generators() as usize;
        match *self {
            Rule::DescendingConjugate { s, .. } | Rule::AscendingConjugate { s, .. } => {
                s as usize * (n - 1) + 2
            }
            Rule::InverseRelator
            | Rule::Relator
            | Rule::InverseShift { .. }
            | Rule::PositiveShift { .. } => n,
            Rule::LeftCancel { .. } | Rule::RightCancel { .. } => 2,
        }
    }

    pub fn leading(&self, g: Genus) -> Vec<Letter> {
        let n = g.generators();
        match *self {
            Rule::DescendingConjugate { j, s } => conjugate(j, &descending_block(j, n), s),
            Rule::AscendingConjugate { j, s } => conjugate(j, &ascending_block(j, n), s),
            Rule::InverseRelator => (1..=n).rev().map(Letter::inv).collect(),
            Rule::Relator => (1..=n).map(Letter::gen).collect(),
            Rule::InverseShift { i } => (i..=n)
                .map(Letter::inv)
                .chain((1..i).map(Letter::gen))
                .collect(),
            Rule::PositiveShift { i } => (1..i)
                .rev()
                .map(Letter::inv)
                .chain((i..=n).rev().map(Letter::gen))
                .collect(),
            Rule::LeftCancel { i } => vec![Letter::inv(i), Letter::gen(i)],
            Rule::RightCancel { i } => vec![Letter::gen(i), Letter::inv(i)],
        }
    }

    pub fn replacement(&self, g: Genus) -> Vec<Letter> {
        let n = g.generators();
        match *self {
            Rule::DescendingConjugate { j, s } => {
                let block: Vec<Letter> = ((j + 1)..=n)
                    .map(Letter::inv)
                    .chain((1..j).map(Letter::gen))
                    .collect();
                block.repeat(s as usize)
            }
            Rule::AscendingConjugate { j, s } => {
                let block: Vec<Letter> = (1..j)
                    .rev()
                    .map(Letter::inv)
                    .chain(((j + 1)..=n).rev().map(Letter::gen))
                    .collect();
                block.repeat(s as usize)
            }
            Rule::InverseRelator => (1..=n).map(Letter::inv).collect(),
            Rule::Relator => (1..=n).rev().map(Letter::gen).collect(),
            Rule::InverseShift { i } => (1..i)
                .rev()
                .map(Letter::gen)
                .chain((i..=n).rev().map(Letter::inv))
                .collect(),
            Rule::PositiveShift { i } => (i..=n)
                .map(Letter::gen)
                .chain((1..i).map(Letter::inv))
                .collect(),
            Rule::LeftCancel { .. } | Rule::RightCancel { .. } => Vec::new(),
        }
    }

    pub fn instance(&self, g: Genus) -> RuleInstance {
        RuleInstance {
            rule: *self,
            leading: Word::from_letters_unchecked(g, self.leading(g)),
            replacement: Word::from_letters_unchecked(g, self.replacement(g)),
        }
    }

    /// Every rule of the basis for genus `g`, with families 1 and 2 cut off
    /// at `s <= max_s`.
    pub fn enumerate(g: Genus, max_s: u32) -> Vec<Rule> {
        let n = g.generators();
        let mut rules = Vec::new();
        for j in 2..=n {
            for s in 1..=max_s {
                rules.push(Rule::DescendingConjugate { j, s });
            }
        }
        for j in 2..=n {
            for s in 1..=max_s {
                rules.push(Rule::AscendingConjugate { j, s });
            }
        }
        rules.push(Rule::InverseRelator);
        rules.push(Rule::Relator);
        rules.extend((2..=n).map(|i| Rule::InverseShift { i }));
        rules.extend((2..=n).map(|i| Rule::PositiveShift { i }));
        rules.extend((1..=n).map(|i| Rule::LeftCancel { i }));
        rules.extend((1..=n).map(|i| Rule::RightCancel { i }));
        rules
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.generator(), self.repetitions()) {
            (Some(j), Some(s)) => write!(f, "D({},{},{})", self.family(), j, s),
            (Some(i), None) => write!(f, "D({},{})", self.family(), i),
            _ => write!(f, "D({})", self.family()),
        }
    }
}

fn descending_block(j: u32, n: u32) -> Vec<Letter> {
    (1..j)
        .rev()
        .map(Letter::gen)
        .chain(((j + 1)..=n).rev().map(Letter::inv))
        .collect()
}

fn ascending_block(j: u32, n: u32) -> Vec<Letter> {
    ((j + 1)..=n)
        .map(Letter::gen)
        .chain((1..j).map(Letter::inv))
        .collect()
}

fn conjugate(j: u32, block: &[Letter], s: u32) -> Vec<Letter> {
    let mut out = Vec::with_capacity(block.len() * s as usize + 2);
    out.push(Letter::gen(j));
    for _ in 0..s {
        out.extend_from_slice(block);
    }
    out.push(Letter::inv(j));
    out
}

/// Explicit binomial `leading - replacement` of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: Rule,
    pub leading: Word,
    pub replacement: Word,
}

pub fn rule_instance(family: u8, j: Option<u32>, s: Option<u32>, g: Genus) -> Result<RuleInstance> {
    Ok(Rule::new(family, j, s, g)?.instance(g))
}

/// An occurrence of a leading word inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuleMatch {
    pub rule: Rule,
    pub start: usize,
    pub span: usize,
}

impl RuleMatch {
    pub fn family(&self) -> u8 {
        self.rule.family()
    }
}

/// Precomputed leading-word patterns for one genus.
///
/// Families 3-6 are keyed by their first letter. Families 1 and 2 are stored
/// as their repeating block, keyed by the conjugating generator `c_j`.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    genus: Genus,
    fixed: Vec<Vec<(Rule, Vec<Letter>)>>,
    periodic: Vec<Vec<(bool, Vec<Letter>)>>,
}

impl RewriteSystem {
    pub fn new(genus: Genus) -> Self {
        let n = genus.generators();
        let mut fixed = vec![Vec::new(); 2 * n as usize];
        let mut periodic = vec![Vec::new(); n as usize];
        let mut add = |rule: Rule| {
            let lw = rule.leading(genus);
            fixed[slot(lw[0], n)].push((rule, lw));
        };
        add(Rule::InverseRelator);
        add(Rule::Relator);
        for i in 2..=n {
            add(Rule::InverseShift { i });
            add(Rule::PositiveShift { i });
        }
        for j in 2..=n {
            periodic[(j - 1) as usize].push((false, descending_block(j, n)));
            periodic[(j - 1) as usize].push((true, ascending_block(j, n)));
        }
        RewriteSystem {
            genus,
            fixed,
            periodic,
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    /// Appends every match starting at offset `p`, in priority order:
    /// cancellations, then the length-2g rules, then families 1 and 2.
    fn matches_at(&self, w: &[Letter], p: usize, out: &mut Vec<RuleMatch>) {
        let n = self.genus.generators();
        let first = w[p];
        let rest = &w[p..];

        if rest.len() >= 2 && rest[1] == first.inverse() {
            let i = first.index();
            let rule = if first.is_inverse() {
                Rule::LeftCancel { i }
            } else {
                Rule::RightCancel { i }
            };
            out.push(RuleMatch {
                rule,
                start: p,
                span: 2,
            });
        }

        for (rule, lw) in &self.fixed[slot(first, n)] {
            if rest.starts_with(lw) {
                out.push(RuleMatch {
                    rule: *rule,
                    start: p,
                    span: lw.len(),
                });
            }
        }

        if !first.is_inverse() && first.index() >= 2 {
            let j = first.index();
            let closing = first.inverse();
            for (ascending, block) in &self.periodic[(j - 1) as usize] {
                let mut pos = 1;
                let mut s = 0u32;
                while rest.len() >= pos + block.len() && rest[pos..pos + block.len()] == block[..] {
                    pos += block.len();
                    s += 1;
                }
                if s >= 1 && rest.get(pos) == Some(&closing) {
                    let rule = if *ascending {
                        Rule::AscendingConjugate { j, s }
                    } else {
                        Rule::DescendingConjugate { j, s }
                    };
                    out.push(RuleMatch {
                        rule,
                        start: p,
                        span: pos + 1,
                    });
                }
            }
        }
    }

    pub fn find_leftmost_match(&self, w: &Word) -> Option<RuleMatch> {
        self.leftmost_in(w.letters())
    }

    fn leftmost_in(&self, letters: &[Letter]) -> Option<RuleMatch> {
        let mut buf = Vec::new();
        for p in 0..letters.len() {
            self.matches_at(letters, p, &mut buf);
            if let Some(m) = buf.first() {
                return Some(*m);
            }
        }
        None
    }

    /// All matches, ordered by start offset and then by priority.
    pub fn find_all_matches(&self, w: &Word) -> Vec<RuleMatch> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            self.matches_at(w.letters(), p, &mut out);
        }
        out
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        self.leftmost_in(w.letters()).is_none()
    }

    pub fn is_reduced_letters(&self, letters: &[Letter]) -> bool {
        self.leftmost_in(letters).is_none()
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        let mut letters = w.letters().to_vec();
        while let Some(m) = self.leftmost_in(&letters) {
            splice(&mut letters, &m, self.genus);
        }
        Word::from_letters_unchecked(self.genus, letters)
    }

    /// Rewrites until irreducible, letting `choose` pick which of the current
    /// matches (as listed by [`find_all_matches`](Self::find_all_matches)) fires.
    pub fn normal_form_by<F>(&self, w: &Word, mut choose: F) -> Word
    where
        F: FnMut(&[RuleMatch]) -> usize,
    {
        let mut current = w.clone();
        loop {
            let all = self.find_all_matches(&current);
            if all.is_empty() {
                return current;
            }
            let m = all[choose(&all)];
            let mut letters = current.into_letters();
            splice(&mut letters, &m, self.genus);
            current = Word::from_letters_unchecked(self.genus, letters);
        }
    }
}

fn slot(l: Letter, n: u32) -> usize {
    if l.is_inverse() {
        (n + l.index() - 1) as usize
    } else {
        (l.index() - 1) as usize
    }
}

fn splice(letters: &mut Vec<Letter>, m: &RuleMatch, g: Genus) {
    letters.splice(m.start..m.start + m.span, m.rule.replacement(g));
}

pub fn find_leftmost_match(w: &Word) -> Option<RuleMatch> {
    RewriteSystem::new(w.genus()).find_leftmost_match(w)
}

pub fn find_all_matches(w: &Word) -> Vec<RuleMatch> {
    RewriteSystem::new(w.genus()).find_all_matches(w)
}

/// Replaces the matched span by the rule's replacement.
pub fn apply_match(w: &Word, m: &RuleMatch) -> Result<Word> {
    let g = w.genus();
    let lw = m.rule.leading(g);
    let end = m.start + m.span;
    if m.span != lw.len() || end > w.len() || w.letters()[m.start..end] != lw[..] {
        return Err(Error::StaleMatch { start: m.start });
    }
    let mut letters = w.letters().to_vec();
    splice(&mut letters, m, g);
    debug_assert!(cmp_lenlex(w.letters(), &letters).is_gt());
    Ok(Word::from_letters_unchecked(g, letters))
}

/// The unique `D`-reduced word representing the same group element as `w`.
pub fn normal_form(w: &Word) -> Word {
    RewriteSystem::new(w.genus()).normal_form(w)
}

/// True iff `w` contains no leading word of the basis.
pub fn is_reduced(w: &Word) -> bool {
    RewriteSystem::new(w.genus()).is_reduced(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn w(genus: u32, v: &[i32]) -> Word {
        Word::from_signed(g(genus), v).unwrap()
    }

    #[test]
    fn rule_instance_examples() {
        let r = rule_instance(1, Some(2), Some(1), g(2)).unwrap();
        assert_eq!(r.leading, w(2, &[2, 1, -4, -3, -2]));
        assert_eq!(r.replacement, w(2, &[-3, -4, 1]));

        let r = rule_instance(7, Some(1), None, g(2)).unwrap();
        assert_eq!(r.leading, w(2, &[-1, 1]));
        assert!(r.replacement.is_empty());

        let r = rule_instance(4, None, None, g(2)).unwrap();
        assert_eq!(r.leading, w(2, &[1, 2, 3, 4]));
        assert_eq!(r.replacement, w(2, &[4, 3, 2, 1]));

        let r = rule_instance(3, None, None, g(2)).unwrap();
        assert_eq!(r.leading, w(2, &[-4, -3, -2, -1]));
        assert_eq!(r.replacement, w(2, &[-1, -2, -3, -4]));
    }

    #[test]
    fn rule_instance_shapes() {
        let r = rule_instance(2, Some(4), Some(2), g(2)).unwrap();
        assert_eq!(r.leading, w(2, &[4, -1, -2, -3, -1, -2, -3, -4]));
        assert_eq!(r.replacement, w(2, &[-3, -2, -1, -3, -2, -1]));

        let r = rule_instance(5, Some(3), None, g(2)).unwrap();
        assert_eq!(r.leading, w(2, &[-3, -4, 1, 2]));
        assert_eq!(r.replacement, w(2, &[2, 1, -4, -3]));

        let r = rule_instance(6, Some(2), None, g(2)).unwrap();
        assert_eq!(r.leading, w(2, &[-1, 4, 3, 2]));
        assert_eq!(r.replacement, w(2, &[2, 3, 4, -1]));
    }

    #[test]
    fn illegal_rules() {
        assert!(rule_instance(1, Some(1), Some(1), g(2)).is_err());
        assert!(rule_instance(1, Some(2), Some(0), g(2)).is_err());
        assert!(rule_instance(1, Some(5), Some(1), g(2)).is_err());
        assert!(rule_instance(3, Some(1), None, g(2)).is_err());
        assert!(rule_instance(5, Some(1), None, g(2)).is_err());
        assert!(rule_instance(7, Some(0), None, g(2)).is_err());
        assert!(rule_instance(9, None, None, g(2)).is_err());
    }

    #[test]
    fn leading_lengths_match_span_contract() {
        for genus in 2..=4 {
            for rule in Rule::enumerate(g(genus), 3) {
                assert_eq!(rule.leading(g(genus)).len(), rule.leading_len(g(genus)));
            }
        }
    }

    #[test]
    fn leading_words_dominate_replacements() {
        for genus in 2..=4 {
            for rule in Rule::enumerate(g(genus), 3) {
                let inst = rule.instance(g(genus));
                assert_eq!(
                    inst.leading.compare_lenlex(&inst.replacement).unwrap(),
                    Ordering::Greater,
                    "{rule}"
                );
            }
        }
    }

    #[test]
    fn leading_words_are_closed_under_inversion() {
        let genus = g(3);
        let leads: std::collections::HashSet<Vec<Letter>> = Rule::enumerate(genus, 4)
            .iter()
            .map(|r| r.leading(genus))
            .collect();
        for rule in Rule::enumerate(genus, 3) {
            let inv = Word::from_letters_unchecked(genus, rule.leading(genus)).invert();
            assert!(leads.contains(inv.letters()), "{rule}");
        }
    }

    #[test]
    fn leftmost_examples() {
        let m = find_leftmost_match(&w(2, &[-1, 1, 2])).unwrap();
        assert_eq!(m.rule, Rule::LeftCancel { i: 1 });
        assert_eq!((m.start, m.span), (0, 2));

        let m = find_leftmost_match(&w(2, &[2, 1, -4, -3, -2])).unwrap();
        assert_eq!(m.rule, Rule::DescendingConjugate { j: 2, s: 1 });
        assert_eq!((m.start, m.span), (0, 5));

        assert_eq!(find_leftmost_match(&w(2, &[4, 3])), None);
    }

    #[test]
    fn periodic_match_takes_maximal_s() {
        // c2 (c1 c4^-1 c3^-1)^3 c2^-1
        let word = w(2, &[4, 2, 1, -4, -3, 1, -4, -3, 1, -4, -3, -2]);
        let m = find_leftmost_match(&word).unwrap();
        assert_eq!(m.rule, Rule::DescendingConjugate { j: 2, s: 3 });
        assert_eq!((m.start, m.span), (1, 11));
    }

    #[test]
    fn apply_examples() {
        let word = w(2, &[3, -1, 1, 2]);
        let m = RuleMatch {
            rule: Rule::LeftCancel { i: 1 },
            start: 1,
            span: 2,
        };
        assert_eq!(apply_match(&word, &m).unwrap(), w(2, &[3, 2]));

        let word = w(2, &[1, 2, 3, 4]);
        let m = find_leftmost_match(&word).unwrap();
        assert_eq!(apply_match(&word, &m).unwrap(), w(2, &[4, 3, 2, 1]));

        let word = w(2, &[2, 1, -4, -3, -2]);
        let m = find_leftmost_match(&word).unwrap();
        assert_eq!(apply_match(&word, &m).unwrap(), w(2, &[-3, -4, 1]));
    }

    #[test]
    fn stale_match_rejected() {
        let m = RuleMatch {
            rule: Rule::LeftCancel { i: 1 },
            start: 1,
            span: 2,
        };
        assert_eq!(
            apply_match(&w(2, &[3, 2, 1]), &m),
            Err(Error::StaleMatch { start: 1 })
        );
        assert_eq!(
            apply_match(&w(2, &[3]), &m),
            Err(Error::StaleMatch { start: 1 })
        );
    }

    #[test]
    fn normal_form_examples() {
        assert!(normal_form(&w(2, &[-1, 1])).is_empty());
        assert_eq!(normal_form(&w(2, &[1, 2, 3, 4])), w(2, &[4, 3, 2, 1]));
        assert_eq!(
            normal_form(&w(2, &[-4, -3, -2, -1])),
            w(2, &[-1, -2, -3, -4])
        );
        // defining relator collapses
        assert!(normal_form(&w(2, &[1, 2, 3, 4, -1, -2, -3, -4])).is_empty());
    }

    #[test]
    fn is_reduced_examples() {
        assert!(is_reduced(&w(2, &[4, 3, 4, -1])));
        assert!(!is_reduced(&w(2, &[-1, 1])));
        assert!(!is_reduced(&w(2, &[1, 2, 3, 4])));
        assert!(is_reduced(&w(2, &[])));
    }
}
