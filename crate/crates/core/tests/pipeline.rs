use proptest::prelude::*;

use surfint::cvp::{enumerate_components, self_components};
use surfint::cyclic::{cyclic_normal_form, is_cyclically_reduced, prime_decomposition, CyclicWord};
use surfint::hyperbolic::{precise_word_matrix, word_matrix_distance};
use surfint::index::{
    component_index, essential_class_count, geometric_intersection, geometric_self_intersection,
    self_intersection_report,
};
use surfint::rewrite::normal_form;
use surfint::{Genus, Word};

fn signed_letters(g: u32, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    let n = g as i32 * 2;
    prop::collection::vec(
        (1..=n, any::<bool>()).prop_map(|(j, neg)| if neg { -j } else { j }),
        0..=max_len,
    )
}

/// Two words and a conjugator of the same genus.
fn triple(max_len: usize) -> impl Strategy<Value = (Word, Word, Word)> {
    (2u32..=4).prop_flat_map(move |g| {
        (
            signed_letters(g, max_len),
            signed_letters(g, max_len),
            signed_letters(g, 4),
        )
            .prop_map(move |(a, b, c)| {
                let g = Genus::new(g).unwrap();
                (
                    Word::from_signed(g, &a).unwrap(),
                    Word::from_signed(g, &b).unwrap(),
                    Word::from_signed(g, &c).unwrap(),
                )
            })
    })
}

fn conj(gamma: &Word, w: &Word) -> Word {
    gamma.concat(w).unwrap().concat(&gamma.invert()).unwrap()
}

fn trace(w: &Word) -> f64 {
    precise_word_matrix(w).trace().abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cyclic_normal_form_is_cyclically_reduced((a, _, gamma) in triple(14)) {
        let cw = cyclic_normal_form(&a);
        prop_assert!(is_cyclically_reduced(cw.word()));
        // every rotation of the representative is reduced
        for r in 0..cw.len() as isize {
            prop_assert!(surfint::rewrite::is_reduced(&cw.word().rotate(r)));
        }
        prop_assert_eq!(cyclic_normal_form(cw.word()), cw.clone());
        // conjugating never changes the length of the representative
        prop_assert_eq!(cyclic_normal_form(&conj(&gamma, &a)).len(), cw.len());
    }

    #[test]
    fn cyclic_normal_form_preserves_trace((a, _, gamma) in triple(12)) {
        let t = trace(&a);
        let rel = |x: f64| (x - t).abs() / t.max(1.0);
        prop_assert!(rel(trace(cyclic_normal_form(&a).word())) < 1e-12);
        prop_assert!(rel(trace(&conj(&gamma, &a))) < 1e-12);
    }

    #[test]
    fn normal_form_preserves_matrix((a, _, _) in triple(12)) {
        prop_assert!(word_matrix_distance(&a, &normal_form(&a)) < 1e-6);
    }

    #[test]
    fn prime_decomposition_reassembles((a, _, _) in triple(10), q in 1usize..=3) {
        let cw = cyclic_normal_form(&a);
        prop_assume!(!cw.is_empty());
        let pd = prime_decomposition(&cw).unwrap();
        prop_assert_eq!(&pd.root.pow(pd.exponent), cw.word());
        let root = CyclicWord::new(pd.root.clone()).unwrap();
        prop_assert_eq!(prime_decomposition(&root).unwrap().exponent, 1);
        let power = CyclicWord::new(cw.word().pow(q)).unwrap();
        prop_assert_eq!(prime_decomposition(&power).unwrap().exponent, q * pd.exponent);
    }

    #[test]
    fn components_partition_the_grid((a, b, _) in triple(10)) {
        let (mu, nu) = (cyclic_normal_form(&a), cyclic_normal_form(&b));
        prop_assume!(!mu.is_empty() && !nu.is_empty());
        let (m, n) = (mu.len(), nu.len());
        let comps = enumerate_components(&mu, &nu).unwrap();
        let mut seen = std::collections::HashSet::new();
        for c in &comps {
            for p in c.grid_points(m, n) {
                prop_assert!(seen.insert(p), "{} covered twice", c);
            }
            if let Some(q) = c.kind.signed_q() {
                let lcm = m * n / gcd(m, n);
                prop_assert!((q.unsigned_abs() as usize) < lcm);
            }
            let idx = component_index(&mu, &nu, c).value();
            prop_assert!((-1..=1).contains(&idx));
        }
        prop_assert_eq!(seen.len(), m * n);

        let mut swapped: Vec<_> = comps.iter().map(|c| c.transposed(m, n)).collect();
        swapped.sort_by(|x, y| x.display_cmp(y));
        prop_assert_eq!(swapped, enumerate_components(&nu, &mu).unwrap());
    }

    #[test]
    fn self_components_are_symmetric((a, _, _) in triple(10)) {
        let mu = cyclic_normal_form(&a);
        prop_assume!(!mu.is_empty());
        let m = mu.len();
        let comps = self_components(&mu).unwrap();
        let mut t: Vec<_> = comps.iter().map(|c| c.transposed(m, m)).collect();
        t.sort_by(|x, y| x.display_cmp(y));
        prop_assert_eq!(&t, &comps);
        let essential = comps
            .iter()
            .filter(|c| component_index(&mu, &mu, c).is_essential())
            .count();
        prop_assert_eq!(essential % 2, 0);
    }

    #[test]
    fn intersection_is_a_class_invariant((a, b, gamma) in triple(8)) {
        let base = geometric_intersection(&a, &b).unwrap();
        prop_assert_eq!(geometric_intersection(&b, &a).unwrap(), base);
        prop_assert_eq!(geometric_intersection(&conj(&gamma, &a), &b).unwrap(), base);
        prop_assert_eq!(geometric_intersection(&a, &conj(&gamma, &b)).unwrap(), base);
        prop_assert_eq!(geometric_intersection(&a.invert(), &b).unwrap(), base);
        prop_assert_eq!(geometric_intersection(&a, &b.invert()).unwrap(), base);
    }

    #[test]
    fn self_intersection_is_a_class_invariant((a, _, gamma) in triple(8)) {
        let base = geometric_self_intersection(&a);
        prop_assert_eq!(geometric_self_intersection(&conj(&gamma, &a)), base);
        prop_assert_eq!(geometric_self_intersection(&a.invert()), base);
    }

    #[test]
    fn powers_scale_the_count((a, b, _) in triple(6), s in 1usize..=3, t in 1usize..=3) {
        let (mu, nu) = (cyclic_normal_form(&a), cyclic_normal_form(&b));
        prop_assume!(!mu.is_empty() && !nu.is_empty());
        let base = essential_class_count(&mu, &nu).unwrap();
        let scaled = essential_class_count(&mu.pow(s), &nu.pow(t)).unwrap();
        prop_assert_eq!(scaled, s * t * base);
    }

    #[test]
    fn self_intersection_power_law((a, _, _) in triple(6), q in 1usize..=3) {
        let cw = cyclic_normal_form(&a);
        prop_assume!(!cw.is_empty());
        let pd = prime_decomposition(&cw).unwrap();
        prop_assume!(pd.exponent == 1);
        let n1 = self_intersection_report(cw.word()).essential_count;
        let direct = geometric_self_intersection(&cw.word().pow(q));
        prop_assert_eq!(direct, q * q * n1 / 2 + q - 1);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn worked_example_is_stable_under_rotation() {
    let g = Genus::new(2).unwrap();
    let mu = Word::from_signed(g, &[4, 3, 4, -1]).unwrap();
    let nu = Word::from_signed(g, &[-4, 3, 4, -3]).unwrap();
    for r in 0..4 {
        for s in 0..4 {
            assert_eq!(
                geometric_intersection(&mu.rotate(r), &nu.rotate(s)).unwrap(),
                2
            );
        }
    }
}

#[test]
fn distinct_generators_meet_once() {
    let g = Genus::new(2).unwrap();
    let w = |v: &[i32]| Word::from_signed(g, v).unwrap();
    assert_eq!(geometric_intersection(&w(&[1]), &w(&[2])).unwrap(), 1);
    assert_eq!(geometric_intersection(&w(&[1]), &w(&[1])).unwrap(), 0);
    assert_eq!(geometric_self_intersection(&w(&[1, 1, 1])), 2);
}
