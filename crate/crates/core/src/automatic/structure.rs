//! Automatic structures: a regular language of representatives together
//! with regular multiplier relations, checked against a finite semigroup.

use serde::Serialize;

use super::nfa::Nfa;
use super::padded::PaddedRelationNfa;
use crate::error::{Error, Result};
use crate::semigroup::{Elem, Factorizer, FiniteSemigroup};

/// `(A, L)` with `L_a` for every letter and `L_ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomaticStructure {
    /// letter ↦ element of the target semigroup
    pub generators: Vec<Elem>,
    pub letter_names: Vec<String>,
    pub language: Nfa<usize>,
    pub multipliers: Vec<PaddedRelationNfa>,
    pub equality: PaddedRelationNfa,
}

impl AutomaticStructure {
    pub fn eval(&self, s: &FiniteSemigroup, word: &[usize]) -> Option<Elem> {
        let (&first, rest) = word.split_first()?;
        Some(
            rest.iter()
                .fold(self.generators[first], |acc, &a| s.mul(acc, self.generators[a])),
        )
    }

    /// Longest accepted word, if the language is finite.
    pub fn max_word_length(&self) -> Option<usize> {
        let d = self.language.remove_epsilon().trim();
        let mut memo = vec![None; d.state_count()];
        let mut on_stack = vec![false; d.state_count()];
        d.initial()
            .iter()
            .try_fold(0, |acc, &q| longest(&d, q, &mut memo, &mut on_stack).map(|l| acc.max(l)))
    }
}

// Longest path from `q` in a trimmed automaton; `None` on a cycle.
fn longest(d: &Nfa<usize>, q: usize, memo: &mut [Option<Option<usize>>], on_stack: &mut [bool]) -> Option<usize> {
    if let Some(v) = memo[q] {
        return v;
    }
    if on_stack[q] {
        return None;
    }
    on_stack[q] = true;
    let mut best = Some(0);
    for &(_, t) in d.raw_transitions(q) {
        best = match (best, longest(d, t, memo, on_stack)) {
            (Some(b), Some(l)) => Some(b.max(l + 1)),
            _ => None,
        };
    }
    on_stack[q] = false;
    memo[q] = Some(best);
    best
}

/// Shortlex normal forms as `L`, with finite multiplier relations.
pub fn structure_for_finite(s: &FiniteSemigroup, gens: &[Elem]) -> Result<AutomaticStructure> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for &a in gens {
        s.check_element(a)?;
    }
    if !s.is_generated_by(gens) {
        return Err(Error::NotGenerating("A does not generate S".into()));
    }
    let fact = Factorizer::new(s, gens)?;
    let k = gens.len();
    let normal: Vec<Vec<usize>> = s.elements().map(|x| fact.word(x).unwrap()).collect();
    let language = Nfa::from_words(0..k, normal.iter().map(|w| w.as_slice()))?;
    let multipliers = (0..k)
        .map(|a| {
            let pairs: Vec<(&[usize], &[usize])> = s
                .elements()
                .map(|x| (normal[x].as_slice(), normal[s.mul(x, gens[a])].as_slice()))
                .collect();
            PaddedRelationNfa::from_pairs(k, k, pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    let equality = PaddedRelationNfa::from_pairs(k, k, normal.iter().map(|w| (w.as_slice(), w.as_slice())))?;
    Ok(AutomaticStructure {
        generators: gens.to_vec(),
        letter_names: gens.iter().map(|&g| format!("a{g}")).collect(),
        language,
        multipliers,
        equality,
    })
}

/// First disagreement found by [`verify_structure`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureDefect {
    EmptyWordAccepted,
    /// no representative of this element up to the length bound
    NotOnto { element: Elem },
    /// accepted pair that is not in the multiplier (`letter = None` for `L_ε`)
    SpuriousPair { letter: Option<usize>, u: Vec<usize>, v: Vec<usize> },
    /// semantic pair the multiplier rejects
    MissingPair { letter: Option<usize>, u: Vec<usize>, v: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub valid: bool,
    pub language_size: usize,
    pub pairs_checked: usize,
    pub defect: Option<StructureDefect>,
}

/// Checks, on all words up to `max_len`, that `L` maps onto `s` and that
/// every multiplier accepts exactly the pairs `(u, v)` of `L`-words with
/// `u·a = v` (`u = v` for `L_ε`).
pub fn verify_structure(st: &AutomaticStructure, s: &FiniteSemigroup, max_len: usize) -> StructureReport {
    let words = st.language.enumerate(max_len);
    let mut report = StructureReport {
        valid: false,
        language_size: words.len(),
        pairs_checked: 0,
        defect: None,
    };
    if words.iter().any(|w| w.is_empty()) {
        report.defect = Some(StructureDefect::EmptyWordAccepted);
        return report;
    }
    if st.generators.iter().any(|&g| g >= s.order()) {
        report.defect = Some(StructureDefect::NotOnto { element: s.order() });
        return report;
    }
    let values: Vec<Elem> = words.iter().map(|w| st.eval(s, w).unwrap()).collect();
    let mut hit = vec![false; s.order()];
    for &x in &values {
        hit[x] = true;
    }
    if let Some(x) = hit.iter().position(|&h| !h) {
        report.defect = Some(StructureDefect::NotOnto { element: x });
        return report;
    }
    let relations = st
        .multipliers
        .iter()
        .enumerate()
        .map(|(a, r)| (Some(a), r))
        .chain([(None, &st.equality)]);
    for (letter, rel) in relations {
        let target = |x: Elem| match letter {
            Some(a) => s.mul(x, st.generators[a]),
            None => x,
        };
        for (u, v) in rel.enumerate(max_len) {
            report.pairs_checked += 1;
            let ok = match (words.binary_search_by(|w| shortlex(w, &u)), words.binary_search_by(|w| shortlex(w, &v))) {
                (Ok(i), Ok(j)) => target(values[i]) == values[j],
                _ => false,
            };
            if !ok {
                report.defect = Some(StructureDefect::SpuriousPair { letter, u, v });
                return report;
            }
        }
        for (i, u) in words.iter().enumerate() {
            for (j, v) in words.iter().enumerate() {
                if target(values[i]) == values[j] {
                    report.pairs_checked += 1;
                    if !rel.accepts(u, v) {
                        report.defect = Some(StructureDefect::MissingPair {
                            letter,
                            u: u.clone(),
                            v: v.clone(),
                        });
                        return report;
                    }
                }
            }
        }
    }
    report.valid = true;
    report
}

fn shortlex(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::semigroup::validate_table;

    #[test]
    fn trivial_semigroup_structure() {
        let s = validate_table(&[vec![0]]).unwrap();
        let st = structure_for_finite(&s, &[0]).unwrap();
        assert_eq!(st.language.enumerate(4), vec![vec![0]]);
        assert_eq!(st.multipliers[0].enumerate(4), vec![(vec![0], vec![0])]);
        assert!(verify_structure(&st, &s, 4).valid);
    }

    #[test]
    fn z6_structure() {
        let s = catalog::cyclic_group(6);
        let st = structure_for_finite(&s, &[1]).unwrap();
        let words = st.language.enumerate(8);
        assert_eq!(words.len(), 6);
        assert_eq!(words.iter().map(|w| w.len()).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(st.equality.enumerate(8).len(), 6);
        assert_eq!(st.max_word_length(), Some(6));
        assert!(verify_structure(&st, &s, 6).valid);
    }

    #[test]
    fn fixed_instances_verify() {
        for inst in catalog::fixed_instances() {
            let s = &inst.semigroup;
            let all: Vec<Elem> = s.elements().collect();
            let st = structure_for_finite(s, &all).unwrap();
            assert!(verify_structure(&st, s, 6).valid, "{}", inst.name);
        }
    }

    #[test]
    fn projection_of_multiplier_lies_in_language() {
        let s = catalog::cyclic_group(6);
        let st = structure_for_finite(&s, &[1]).unwrap();
        let lang = st.language.enumerate(8);
        for w in st.multipliers[0].project(2).unwrap().enumerate(8) {
            assert!(lang.contains(&w));
        }
    }

    #[test]
    fn deleted_pair_is_detected() {
        let s = catalog::cyclic_group(3);
        let mut st = structure_for_finite(&s, &[1]).unwrap();
        let words = st.language.enumerate(5);
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = st.multipliers[0]
            .enumerate(5)
            .into_iter()
            .skip(1)
            .collect();
        st.multipliers[0] =
            PaddedRelationNfa::from_pairs(1, 1, pairs.iter().map(|(u, v)| (u.as_slice(), v.as_slice())))
                .unwrap();
        let report = verify_structure(&st, &s, 5);
        assert!(!report.valid);
        assert!(matches!(report.defect, Some(StructureDefect::MissingPair { letter: Some(0), .. })));
        assert_eq!(words.len(), 3);
    }

    #[test]
    fn missing_representative_is_detected() {
        let s = catalog::cyclic_group(3);
        let mut st = structure_for_finite(&s, &[1]).unwrap();
        st.language = Nfa::from_words(0..1, [&[0usize][..], &[0, 0]]).unwrap();
        let report = verify_structure(&st, &s, 5);
        assert_eq!(report.defect, Some(StructureDefect::NotOnto { element: 0 }));
    }
}
