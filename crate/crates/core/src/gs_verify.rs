//! Mechanical check that the rewriting system is closed under composition
//! for a bounded repetition count `s`.
//!
//! For rules `f = A - a` and `f' = A' - a'` with `A = γw`, `A' = wδ` and `w`
//! nonempty, the composition of intersection is `aδ - γa'`. Closure means
//! both sides have the same normal form.

use serde::Serialize;

use crate::rewrite::{RewriteSystem, Rule};
use crate::word::{Genus, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionKind {
    Intersection,
    Inclusion,
}

/// Where a composition came from: the two rules and the shared subword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub first: Rule,
    pub second: Rule,
    pub overlap: Word,
    pub kind: CompositionKind,
}

/// A composition, as the difference `left_word - right_word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub left_word: Word,
    pub right_word: Word,
    pub provenance: Provenance,
}

/// Intersection compositions of every ordered pair of rules with
/// `s <= max_s`, including a rule with itself.
pub fn enumerate_compositions(g: Genus, max_s: u32) -> Vec<Composition> {
    let rules = Rule::enumerate(g, max_s);
    let instances: Vec<_> = rules
        .iter()
        .map(|r| (*r, r.leading(g), r.replacement(g)))
        .collect();
    let mut out = Vec::new();
    for (f, lead, repl) in &instances {
        for (f2, lead2, repl2) in &instances {
            out.extend(intersections(g, (*f, lead, repl), (*f2, lead2, repl2)));
        }
    }
    out
}

type RuleParts<'a> = (Rule, &'a Vec<Letter>, &'a Vec<Letter>);

fn intersections(g: Genus, first: RuleParts, second: RuleParts) -> Vec<Composition> {
    let (f, lead, repl) = first;
    let (f2, lead2, repl2) = second;
    let mut out = Vec::new();
    for k in 1..lead.len().min(lead2.len()) {
        if lead[lead.len() - k..] != lead2[..k] {
            continue;
        }
        let gamma = &lead[..lead.len() - k];
        let delta = &lead2[k..];
        let left = [repl.as_slice(), delta].concat();
        let right = [gamma, repl2.as_slice()].concat();
        out.push(Composition {
            left_word: Word::from_letters_unchecked(g, left),
            right_word: Word::from_letters_unchecked(g, right),
            provenance: Provenance {
                first: f,
                second: f2,
                overlap: Word::from_letters_unchecked(g, lead2[..k].to_vec()),
                kind: CompositionKind::Intersection,
            },
        });
    }
    out
}

/// Compositions of inclusion: `A = γA'δ` for distinct rules `f`, `f'`.
/// The composition is `a - γa'δ`.
pub fn enumerate_inclusions(g: Genus, max_s: u32) -> Vec<Composition> {
    let rules = Rule::enumerate(g, max_s);
    let mut out = Vec::new();
    for f in &rules {
        let lead = f.leading(g);
        for f2 in &rules {
            if f == f2 {
                continue;
            }
            let lead2 = f2.leading(g);
            if lead2.len() > lead.len() {
                continue;
            }
            for p in 0..=lead.len() - lead2.len() {
                if lead[p..p + lead2.len()] != lead2[..] {
                    continue;
                }
                let right = [
                    &lead[..p],
                    f2.replacement(g).as_slice(),
                    &lead[p + lead2.len()..],
                ]
                .concat();
                out.push(Composition {
                    left_word: Word::from_letters_unchecked(g, f.replacement(g)),
                    right_word: Word::from_letters_unchecked(g, right),
                    provenance: Provenance {
                        first: *f,
                        second: *f2,
                        overlap: Word::from_letters_unchecked(g, lead2.clone()),
                        kind: CompositionKind::Inclusion,
                    },
                });
            }
        }
    }
    out
}

/// True iff both sides of `c` have the same normal form.
pub fn composition_reduces_to_zero(c: &Composition) -> bool {
    if c.left_word.genus() != c.right_word.genus() {
        return false;
    }
    let sys = RewriteSystem::new(c.left_word.genus());
    sys.normal_form(&c.left_word) == sys.normal_form(&c.right_word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionFailure {
    pub first: String,
    pub second: String,
    pub kind: CompositionKind,
    pub overlap: Word,
    pub left_word: Word,
    pub right_word: Word,
    pub left_normal_form: Word,
    pub right_normal_form: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub genus: Genus,
    pub max_s: u32,
    pub pairs_checked: usize,
    pub compositions_found: usize,
    pub inclusions_found: usize,
    pub failures: Vec<CompositionFailure>,
}

impl VerifyReport {
    /// No failing composition and no composition of inclusion.
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inclusions_found == 0
    }
}

/// Runs every composition check for genus `g` and `s <= max_s`.
pub fn verify_basis(g: Genus, max_s: u32) -> VerifyReport {
    let rules = Rule::enumerate(g, max_s).len();
    let sys = RewriteSystem::new(g);
    let compositions = enumerate_compositions(g, max_s);
    let inclusions = enumerate_inclusions(g, max_s);
    let failures = compositions
        .iter()
        .chain(&inclusions)
        .filter_map(|c| {
            let left_nf = sys.normal_form(&c.left_word);
            let right_nf = sys.normal_form(&c.right_word);
            (left_nf != right_nf).then(|| CompositionFailure {
                first: c.provenance.first.to_string(),
                second: c.provenance.second.to_string(),
                kind: c.provenance.kind,
                overlap: c.provenance.overlap.clone(),
                left_word: c.left_word.clone(),
                right_word: c.right_word.clone(),
                left_normal_form: left_nf,
                right_normal_form: right_nf,
            })
        })
        .collect();
    VerifyReport {
        genus: g,
        max_s,
        pairs_checked: rules * rules,
        compositions_found: compositions.len(),
        inclusions_found: inclusions.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn between(g: Genus, f: Rule, f2: Rule) -> Vec<Composition> {
        let (a, ra) = (f.leading(g), f.replacement(g));
        let (b, rb) = (f2.leading(g), f2.replacement(g));
        intersections(g, (f, &a, &ra), (f2, &b, &rb))
    }

    #[test]
    fn inverse_relator_against_positive_shift() {
        let genus = g(2);
        let cs = between(genus, Rule::InverseRelator, Rule::PositiveShift { i: 2 });
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].provenance.overlap.to_signed(), vec![-1]);
        assert!(composition_reduces_to_zero(&cs[0]));
    }

    #[test]
    fn disjoint_cancellations_do_not_compose() {
        let genus = g(2);
        let cs = between(genus, Rule::LeftCancel { i: 1 }, Rule::RightCancel { i: 2 });
        assert!(cs.is_empty());
    }

    #[test]
    fn top_conjugate_meets_inverse_relator_once() {
        let genus = g(2);
        for s in 1..=3 {
            let cs = between(
                genus,
                Rule::DescendingConjugate { j: 4, s },
                Rule::InverseRelator,
            );
            assert_eq!(cs.len(), 1, "s = {s}");
            assert!(composition_reduces_to_zero(&cs[0]));
        }
    }

    #[test]
    fn synthetic_composition_fails() {
        let genus = g(2);
        let c = Composition {
            left_word: Word::from_signed(genus, &[1]).unwrap(),
            right_word: Word::from_signed(genus, &[2]).unwrap(),
            provenance: Provenance {
                first: Rule::Relator,
                second: Rule::Relator,
                overlap: Word::from_signed(genus, &[1]).unwrap(),
                kind: CompositionKind::Intersection,
            },
        };
        assert!(!composition_reduces_to_zero(&c));
    }

    #[test]
    fn genus_two_closes() {
        let report = verify_basis(g(2), 3);
        assert!(report.compositions_found > 0);
        assert_eq!(report.inclusions_found, 0);
        assert!(report.failures.is_empty(), "{:?}", report.failures.first());
    }

    #[test]
    fn genus_three_closes() {
        let report = verify_basis(g(3), 2);
        assert_eq!(report.inclusions_found, 0);
        assert!(report.failures.is_empty(), "{:?}", report.failures.first());
    }
}
