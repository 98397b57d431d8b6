//! Synchronous relations on words as automata over padded letter pairs.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::nfa::Nfa;
use crate::error::{Error, Result};

/// A letter of the pair alphabet; `None` on a track is the padding symbol `$`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PairLetter {
    pub left: Option<usize>,
    pub right: Option<usize>,
}

impl PairLetter {
    pub fn new(left: Option<usize>, right: Option<usize>) -> Self {
        PairLetter { left, right }
    }
}

/// `δ(u, v)`: the shorter word is padded with `$` on the right.
pub fn convolve(u: &[usize], v: &[usize]) -> Vec<PairLetter> {
    (0..u.len().max(v.len()))
        .map(|k| PairLetter::new(u.get(k).copied(), v.get(k).copied()))
        .collect()
}

/// Inverse of [`convolve`]; `None` if the string is not a valid image.
pub fn deconvolve(w: &[PairLetter]) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut u = Vec::new();
    let mut v = Vec::new();
    let (mut u_done, mut v_done) = (false, false);
    for p in w {
        match p.left {
            Some(a) if !u_done => u.push(a),
            Some(_) => return None,
            None => u_done = true,
        }
        match p.right {
            Some(b) if !v_done => v.push(b),
            Some(_) => return None,
            None => v_done = true,
        }
        if u_done && v_done {
            return None;
        }
    }
    Some((u, v))
}

/// `(A ∪ {$}) × (B ∪ {$}) ∖ {($, $)}` for alphabet sizes `left` and `right`.
pub fn pair_alphabet(left: usize, right: usize) -> Vec<PairLetter> {
    let l = (0..left).map(Some).chain([None]);
    l.flat_map(|a| (0..right).map(Some).chain([None]).map(move |b| PairLetter::new(a, b)))
        .filter(|p| p.left.is_some() || p.right.is_some())
        .collect()
}

/// A rational relation recognised synchronously: an automaton over the pair
/// alphabet all of whose accepted strings are valid convolutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddedRelationNfa {
    nfa: Nfa<PairLetter>,
    left: usize,
    right: usize,
}

impl PaddedRelationNfa {
    /// Wraps an automaton, intersecting with the well-formedness guard.
    pub fn new(nfa: Nfa<PairLetter>, left: usize, right: usize) -> Result<Self> {
        let guard = Self::guard(left, right);
        if nfa.alphabet() != guard.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let nfa = nfa.intersect(&guard)?.trim();
        Ok(PaddedRelationNfa { nfa, left, right })
    }

    /// Wraps an automaton already known to accept only valid convolutions.
    pub(crate) fn from_well_formed(nfa: Nfa<PairLetter>, left: usize, right: usize) -> Self {
        PaddedRelationNfa { nfa, left, right }
    }

    /// Accepts exactly the valid convolutions.
    pub fn guard(left: usize, right: usize) -> Nfa<PairLetter> {
        let mut n = Nfa::new(pair_alphabet(left, right));
        let both = n.add_state(true);
        let left_only = n.add_state(true);
        let right_only = n.add_state(true);
        n.set_initial(both);
        for p in pair_alphabet(left, right) {
            let (from, to): (&[usize], usize) = match (p.left, p.right) {
                (Some(_), Some(_)) => (&[both], both),
                (Some(_), None) => (&[both, left_only], left_only),
                (None, Some(_)) => (&[both, right_only], right_only),
                (None, None) => unreachable!(),
            };
            for &q in from {
                n.add_transition(q, &p, to).unwrap();
            }
        }
        n
    }

    pub fn nfa(&self) -> &Nfa<PairLetter> {
        &self.nfa
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    /// Finite relation as a trie.
    pub fn from_pairs<'a>(
        left: usize,
        right: usize,
        pairs: impl IntoIterator<Item = (&'a [usize], &'a [usize])>,
    ) -> Result<Self> {
        let strings: Vec<Vec<PairLetter>> = pairs.into_iter().map(|(u, v)| convolve(u, v)).collect();
        let nfa = Nfa::from_words(pair_alphabet(left, right), strings.iter().map(|w| w.as_slice()))?;
        Ok(PaddedRelationNfa { nfa, left, right })
    }

    /// `{(u, u) : u ∈ L}`.
    pub fn diagonal(language: &Nfa<usize>, size: usize) -> Result<Self> {
        let nfa = language.map_letters(pair_alphabet(size, size), |&a| {
            Some(PairLetter::new(Some(a), Some(a)))
        })?;
        Ok(PaddedRelationNfa {
            nfa,
            left: size,
            right: size,
        })
    }

    pub fn accepts(&self, u: &[usize], v: &[usize]) -> bool {
        self.nfa.accepts(&convolve(u, v))
    }

    /// `{(v, u) : (u, v) ∈ R}`.
    pub fn invert(&self) -> Self {
        let nfa = self
            .nfa
            .map_letters(pair_alphabet(self.right, self.left), |p| {
                Some(PairLetter::new(p.right, p.left))
            })
            .expect("swapped pair alphabet");
        PaddedRelationNfa {
            nfa,
            left: self.right,
            right: self.left,
        }
    }

    /// Projection onto track 1 or 2 as a language.
    pub fn project(&self, track: usize) -> Result<Nfa<usize>> {
        let size = match track {
            1 => self.left,
            2 => self.right,
            _ => return Err(Error::Input(format!("track {track} does not exist"))),
        };
        self.nfa.map_letters(0..size, |p| if track == 1 { p.left } else { p.right })
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self::from_well_formed(self.nfa.intersect(&other.nfa)?, self.left, self.right))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self::from_well_formed(self.nfa.union(&other.nfa)?, self.left, self.right))
    }

    /// Pairs not in the relation, among valid convolutions.
    pub fn complement(&self) -> Self {
        let c = self.nfa.complement();
        let nfa = c
            .intersect(&Self::guard(self.left, self.right))
            .expect("same alphabet")
            .trim();
        Self::from_well_formed(nfa, self.left, self.right)
    }

    /// Accepted pairs whose convolution has length at most `max_len`, in
    /// shortlex order of the convolution.
    pub fn enumerate(&self, max_len: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.nfa
            .enumerate(max_len)
            .into_iter()
            .filter_map(|w| deconvolve(&w))
            .collect()
    }

    pub fn trim(&self) -> Self {
        Self::from_well_formed(self.nfa.trim(), self.left, self.right)
    }
}

/// Outcome of the trailing-move closure for one product state.
fn joint_finality(
    r1: &Nfa<PairLetter>,
    r2: &Nfa<PairLetter>,
    p: usize,
    q: usize,
    depth: Option<usize>,
) -> bool {
    // moves reading ($, y) on the first relation and (y, $) on the second
    let mut seen = HashSet::from([(p, q)]);
    let mut frontier = vec![(p, q)];
    let mut level = 0;
    loop {
        if frontier
            .iter()
            .any(|&(a, b)| r1.is_accepting(a) && r2.is_accepting(b))
        {
            return true;
        }
        if depth.is_some_and(|d| level >= d) || frontier.is_empty() {
            return false;
        }
        let mut next = Vec::new();
        for &(a, b) in &frontier {
            for &(k1, a2) in r1.raw_transitions(a) {
                let l1 = r1.alphabet()[k1];
                if l1.left.is_some() || l1.right.is_none() {
                    continue;
                }
                for &(k2, b2) in r2.raw_transitions(b) {
                    let l2 = r2.alphabet()[k2];
                    if l2.left == l1.right && l2.right.is_none() && seen.insert((a2, b2)) {
                        next.push((a2, b2));
                    }
                }
            }
        }
        frontier = next;
        level += 1;
    }
}

/// `{(u, w) : ∃v (u, v) ∈ R₁, (v, w) ∈ R₂}`.
///
/// Reads `δ(u, w)` while guessing `v` one letter per position. A relation
/// whose convolution has ended moves to a finished state. Positions where
/// `v` outlasts both `u` and `w` are folded into acceptance; that closure is
/// computed exhaustively and also to depth `delay_bound`, and any
/// disagreement between the two is reported as [`Error::DelayExceeded`].
pub fn compose_relations(
    r1: &PaddedRelationNfa,
    r2: &PaddedRelationNfa,
    delay_bound: usize,
) -> Result<PaddedRelationNfa> {
    if r1.right != r2.left {
        return Err(Error::AlphabetMismatch);
    }
    let a = r1.nfa.remove_epsilon();
    let b = r2.nfa.remove_epsilon();
    let (left, right) = (r1.left, r2.right);
    let mut out = Nfa::new(pair_alphabet(left, right));

    // group second-relation transitions by their first track
    let by_first = |q: usize| -> HashMap<Option<usize>, Vec<(Option<usize>, usize)>> {
        let mut m: HashMap<Option<usize>, Vec<(Option<usize>, usize)>> = HashMap::new();
        for &(k, t) in b.raw_transitions(q) {
            let l = b.alphabet()[k];
            m.entry(l.left).or_default().push((l.right, t));
        }
        m
    };

    type State = (Option<usize>, Option<usize>);
    let mut ids: HashMap<State, usize> = HashMap::new();
    let mut queue: VecDeque<(State, usize)> = VecDeque::new();
    let finality = |st: State| -> Result<bool> {
        match st {
            (None, None) => Ok(true),
            (Some(p), None) => Ok(a.is_accepting(p)),
            (None, Some(q)) => Ok(b.is_accepting(q)),
            (Some(p), Some(q)) => {
                let full = joint_finality(&a, &b, p, q, None);
                let bounded = joint_finality(&a, &b, p, q, Some(delay_bound));
                if full != bounded {
                    return Err(Error::DelayExceeded { bound: delay_bound });
                }
                Ok(full)
            }
        }
    };
    let mut intern = |st: State, out: &mut Nfa<PairLetter>, queue: &mut VecDeque<(State, usize)>| -> Result<usize> {
        if let Some(&id) = ids.get(&st) {
            return Ok(id);
        }
        let id = out.add_state(finality(st)?);
        ids.insert(st, id);
        queue.push_back((st, id));
        Ok(id)
    };
    for &p in a.initial() {
        for &q in b.initial() {
            let id = intern((Some(p), Some(q)), &mut out, &mut queue)?;
            out.set_initial(id);
        }
    }
    while let Some((st, from)) = queue.pop_front() {
        let mut edges: Vec<(PairLetter, State)> = Vec::new();
        match st {
            (Some(p), Some(q)) => {
                let table = by_first(q);
                for &(k, p2) in a.raw_transitions(p) {
                    let l1 = a.alphabet()[k];
                    if let Some(moves) = table.get(&l1.right) {
                        for &(z, q2) in moves {
                            if l1.left.is_some() || z.is_some() {
                                edges.push((PairLetter::new(l1.left, z), (Some(p2), Some(q2))));
                            }
                        }
                    }
                }
                // a relation whose string has ended
                if a.is_accepting(p) {
                    edges.extend(done_edges(&b, (None, Some(q))));
                }
                if b.is_accepting(q) {
                    edges.extend(done_edges(&a, (Some(p), None)));
                }
            }
            (Some(_), None) => edges.extend(done_edges(&a, st)),
            (None, Some(_)) => edges.extend(done_edges(&b, st)),
            (None, None) => {}
        }
        for (letter, to) in edges {
            let t = intern(to, &mut out, &mut queue)?;
            let k = out.letter_index(&letter)?;
            out.add_transition_index(from, k, t);
        }
    }
    Ok(PaddedRelationNfa::from_well_formed(out.trim(), left, right))
}

// Moves available when one of the two relations has finished: the
// intermediate word is over, so the other relation reads `(x, $)` (first
// relation running) or `($, z)` (second relation running).
fn done_edges(
    running: &Nfa<PairLetter>,
    st: (Option<usize>, Option<usize>),
) -> Vec<(PairLetter, (Option<usize>, Option<usize>))> {
    let mut out = Vec::new();
    match st {
        (Some(p), None) => {
            for &(k, p2) in running.raw_transitions(p) {
                let l = running.alphabet()[k];
                if l.right.is_none() {
                    out.push((PairLetter::new(l.left, None), (Some(p2), None)));
                }
            }
        }
        (None, Some(q)) => {
            for &(k, q2) in running.raw_transitions(q) {
                let l = running.alphabet()[k];
                if l.left.is_none() {
                    out.push((PairLetter::new(None, l.right), (None, Some(q2))));
                }
            }
        }
        _ => {}
    }
    out
}
