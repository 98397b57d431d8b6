//! Automatic structure for `T` from one for `S`.
//!
//! Letters are triples `b_{j,a,i}` valued `τ(j, σ(a, i))`. A word
//! `a₁…aₙ` with value in `T` is rewritten by choosing `iₙ = 1`,
//! `i_{k-1} = ρ(a_k, i_k)`, `j₁ = ρ(a₁, i₁)` and
//! `j_{k+1} = λ(j_k, σ(a_k, i_k))`, ending with `j_{n+1} = 1`; the triples
//! `(j_k, a_k, i_k)` then spell a word over the new alphabet with the same
//! value. Triples valued at the adjoined identity are not letters and are
//! skipped, so the new word can be shorter than the old one.

use std::collections::{HashMap, VecDeque};

use super::nfa::Nfa;
use super::padded::{compose_relations, pair_alphabet, PaddedRelationNfa, PairLetter};
use super::structure::AutomaticStructure;
use crate::error::{Error, Result};
use crate::green::{ClassId, ConnectorTables};
use crate::semigroup::{Elem, FiniteSemigroup};

/// `(j, a, i)`: `a` is a letter of the structure for `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub j: ClassId,
    pub a: usize,
    pub i: ClassId,
}

/// The transferred structure and the relation it was built from.
#[derive(Debug, Clone)]
pub struct Transfer {
    /// structure over `T`, with element indices local to `T`
    pub structure: AutomaticStructure,
    pub t_semigroup: FiniteSemigroup,
    /// letter ↦ triple
    pub letters: Vec<Triple>,
    /// `R` from words over `A` to words over the new alphabet
    pub relation: PaddedRelationNfa,
    /// the `L`-word chosen for each new letter
    pub witness_words: Vec<Vec<usize>>,
}

const STATE_CAP: usize = 500_000;

/// The triples along the rewriting of `u`, or `None` if `⟦u⟧ ∉ T`.
pub fn rewrite_triples(conn: &ConnectorTables, gens: &[Elem], u: &[usize]) -> Option<Vec<Triple>> {
    let n = u.len();
    if n == 0 {
        return None;
    }
    let mut is = vec![ClassId::ONE; n];
    for k in (1..n).rev() {
        is[k - 1] = conn.rho(gens[u[k]], is[k]);
    }
    let mut j = conn.rho(gens[u[0]], is[0]);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(Triple { j, a: u[k], i: is[k] });
        j = conn.lambda(j, conn.sigma(gens[u[k]], is[k]));
    }
    j.is_one().then_some(out)
}

/// Whether a sequence of triples satisfies the recursion for its middle
/// letters (it then equals [`rewrite_triples`] of them).
pub fn triples_consistent(conn: &ConnectorTables, gens: &[Elem], word: &[Triple]) -> bool {
    let Some((first, _)) = word.split_first() else {
        return false;
    };
    let n = word.len();
    if first.j != conn.rho(gens[first.a], first.i) || !word[n - 1].i.is_one() {
        return false;
    }
    for k in 1..n {
        if word[k - 1].i != conn.rho(gens[word[k].a], word[k].i) {
            return false;
        }
        let prev = word[k - 1];
        if word[k].j != conn.lambda(prev.j, conn.sigma(gens[prev.a], prev.i)) {
            return false;
        }
    }
    let last = word[n - 1];
    conn.lambda(last.j, conn.sigma(gens[last.a], last.i)).is_one()
}

pub fn triple_value(conn: &ConnectorTables, gens: &[Elem], t: Triple) -> Elem {
    conn.tau(t.j, conn.sigma(gens[t.a], t.i))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct RState {
    started: bool,
    prev_i: ClassId,
    j: ClassId,
    queue: Vec<usize>,
    v_ended: bool,
}

fn build_relation(
    conn: &ConnectorTables,
    gens: &[Elem],
    letter_of: &HashMap<Triple, usize>,
    b_count: usize,
    queue_bound: usize,
) -> Result<PaddedRelationNfa> {
    let g = conn.green();
    let k = gens.len();
    let mut nfa = Nfa::new(pair_alphabet(k, b_count));
    let mut ids: HashMap<RState, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let accepting =
        |st: &RState| st.started && st.prev_i.is_one() && st.j.is_one() && st.queue.is_empty();
    let start = RState {
        started: false,
        prev_i: ClassId::ONE,
        j: ClassId::ONE,
        queue: Vec::new(),
        v_ended: false,
    };
    let q0 = nfa.add_state(false);
    nfa.set_initial(q0);
    ids.insert(start.clone(), q0);
    queue.push_back(start);
    while let Some(st) = queue.pop_front() {
        let from = ids[&st];
        for a in 0..k {
            for y in (0..b_count).map(Some).chain([None]) {
                let mut base = st.clone();
                match y {
                    Some(b) => {
                        if st.v_ended || st.queue.len() >= queue_bound {
                            continue;
                        }
                        base.queue.push(b);
                    }
                    None => base.v_ended = true,
                }
                for i in g.class_ids() {
                    let r = conn.rho(gens[a], i);
                    if st.started && r != st.prev_i {
                        continue;
                    }
                    let j = if st.started { st.j } else { r };
                    let sigma = conn.sigma(gens[a], i);
                    let mut next = base.clone();
                    if let Some(&b) = letter_of.get(&Triple { j, a, i }) {
                        if next.queue.first() != Some(&b) {
                            continue;
                        }
                        next.queue.remove(0);
                    }
                    next.started = true;
                    next.prev_i = i;
                    next.j = conn.lambda(j, sigma);
                    let to = match ids.get(&next) {
                        Some(&t) => t,
                        None => {
                            if ids.len() >= STATE_CAP {
                                return Err(Error::BoundExceeded(format!(
                                    "rewriting relation exceeds {STATE_CAP} states"
                                )));
                            }
                            let t = nfa.add_state(accepting(&next));
                            ids.insert(next.clone(), t);
                            queue.push_back(next);
                            t
                        }
                    };
                    nfa.add_transition(from, &PairLetter::new(Some(a), y), to)?;
                }
            }
        }
    }
    Ok(PaddedRelationNfa::from_well_formed(nfa, k, b_count).trim())
}

/// The letters `b_{j,a,i}` whose value lies in `T`, in `(j, a, i)` order.
pub fn transfer_letters(conn: &ConnectorTables, gens: &[Elem]) -> Vec<Triple> {
    let g = conn.green();
    let mut letters = Vec::new();
    for j in g.class_ids() {
        for a in 0..gens.len() {
            for i in g.class_ids() {
                let tr = Triple { j, a, i };
                if g.in_t(triple_value(conn, gens, tr)) {
                    letters.push(tr);
                }
            }
        }
    }
    letters
}

fn letter_map(letters: &[Triple]) -> HashMap<Triple, usize> {
    letters.iter().enumerate().map(|(k, &t)| (t, k)).collect()
}

/// `R` on all of `A⁺`, over the letters of [`transfer_letters`]. Output
/// letters can run ahead of the triples they stand for by up to
/// `queue_bound` positions.
pub fn rewriting_relation(conn: &ConnectorTables, gens: &[Elem], queue_bound: usize) -> Result<PaddedRelationNfa> {
    let letters = transfer_letters(conn, gens);
    build_relation(conn, gens, &letter_map(&letters), letters.len(), queue_bound)
}

// `R` restricted to a finite set of input words.
fn relation_on_words(
    conn: &ConnectorTables,
    gens: &[Elem],
    letter_of: &HashMap<Triple, usize>,
    b_count: usize,
    words: &[Vec<usize>],
) -> Result<PaddedRelationNfa> {
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = words
        .iter()
        .filter_map(|u| {
            let v = rewrite_triples(conn, gens, u)?
                .iter()
                .filter_map(|t| letter_of.get(t).copied())
                .collect();
            Some((u.clone(), v))
        })
        .collect();
    PaddedRelationNfa::from_pairs(gens.len(), b_count, pairs.iter().map(|(u, v)| (u.as_slice(), v.as_slice())))
}

/// Builds `(B, M, {M_b})` for `T`, evaluated in `T` as a semigroup in its
/// own right. When `L` is finite, `R` is only built on `L`, which is all
/// the compositions use.
pub fn transfer(st: &AutomaticStructure, conn: &ConnectorTables, delay_bound: usize) -> Result<Transfer> {
    let g = conn.green();
    let s = g.semigroup();
    let t = g.sub();
    let gens = &st.generators;
    let k = gens.len();
    for &a in gens {
        s.check_element(a)?;
    }
    if st.multipliers.len() != k {
        return Err(Error::AlphabetMismatch);
    }

    let letters = transfer_letters(conn, gens);
    let letter_of = letter_map(&letters);
    let b_count = letters.len();
    if b_count == 0 {
        return Err(Error::NotGenerating("no triple takes a value in T".into()));
    }
    let max_len = st.max_word_length();
    let search = max_len.unwrap_or(2 * s.order() + 2);
    let l_words = st.language.enumerate(search);
    let relation = match max_len {
        Some(_) => relation_on_words(conn, gens, &letter_of, b_count, &l_words)?,
        None => build_relation(conn, gens, &letter_of, b_count, delay_bound)?,
    };
    let inverse = relation.invert();

    let diag = PaddedRelationNfa::diagonal(&st.language, k)?;
    let language = compose_relations(&diag, &relation, delay_bound)?
        .project(2)?
        .remove_epsilon()
        .trim();

    let lift = |w: &AutomaticStructure, x: Elem| -> Option<Vec<usize>> {
        l_words.iter().find(|u| w.eval(s, u) == Some(x)).cloned()
    };
    let mut witness_words = Vec::with_capacity(b_count);
    let mut multipliers = Vec::with_capacity(b_count);
    for &tr in &letters {
        let x = triple_value(conn, gens, tr);
        let w = lift(st, x).ok_or_else(|| {
            Error::NotGenerating(format!("no word of the language represents {}", s.name(x)))
        })?;
        let mut lw = st.multipliers[w[0]].clone();
        for &a in &w[1..] {
            lw = compose_relations(&lw, &st.multipliers[a], delay_bound)?;
        }
        let inner = compose_relations(&lw, &relation, delay_bound)?;
        multipliers.push(compose_relations(&inverse, &inner, delay_bound)?.trim());
        witness_words.push(w);
    }
    let inner = compose_relations(&st.equality, &relation, delay_bound)?;
    let equality = compose_relations(&inverse, &inner, delay_bound)?.trim();

    let t_semigroup = t.to_semigroup(s);
    let generators = letters
        .iter()
        .map(|&tr| t.local_index(triple_value(conn, gens, tr)).unwrap())
        .collect();
    let letter_names = letters
        .iter()
        .map(|tr| format!("b_{}_{}_{}", tr.j, st.letter_names[tr.a], tr.i))
        .collect();
    Ok(Transfer {
        structure: AutomaticStructure {
            generators,
            letter_names,
            language,
            multipliers,
            equality,
        },
        t_semigroup,
        letters,
        relation,
        witness_words,
    })
}


#[cfg(test)]
mod fixed {
    use super::*;
    use crate::automatic::structure::{structure_for_finite, verify_structure};
    use crate::catalog;
    use crate::green::{connectors, relative_green};

    #[test]
    fn fixed_instances_transfer() {
        for inst in catalog::fixed_instances() {
            let s = &inst.semigroup;
            let all: Vec<Elem> = s.elements().collect();
            let conn = connectors(&relative_green(s, &inst.sub)).unwrap();
            let st = structure_for_finite(s, &s.greedy_generators(&all)).unwrap();
            let tr = transfer(&st, &conn, s.order() + 1).unwrap();
            let rep = verify_structure(&tr.structure, &tr.t_semigroup, 6);
            assert!(rep.valid, "{}: {rep:?}", inst.name);
        }
    }
}
