//! Nondeterministic finite automata with ε-moves over an arbitrary ordered
//! alphabet, and the usual regular operations.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

pub trait Symbol: Clone + Eq + Ord + Hash + Debug {}
impl<T: Clone + Eq + Ord + Hash + Debug> Symbol for T {}

#[derive(Debug, Clone)]
pub struct Nfa<L> {
    alphabet: Vec<L>,
    index: HashMap<L, usize>,
    transitions: Vec<Vec<(usize, usize)>>,
    epsilon: Vec<Vec<usize>>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
}

impl<L: Symbol> PartialEq for Nfa<L> {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.transitions == other.transitions
            && self.epsilon == other.epsilon
            && self.initial == other.initial
            && self.accepting == other.accepting
    }
}

impl<L: Symbol> Eq for Nfa<L> {}

impl<L: Symbol> Nfa<L> {
    /// Automaton with no states over the given alphabet (sorted, deduplicated).
    pub fn new(alphabet: impl IntoIterator<Item = L>) -> Self {
        let alphabet: Vec<L> = alphabet
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = alphabet
            .iter()
            .enumerate()
            .map(|(k, a)| (a.clone(), k))
            .collect();
        Nfa {
            alphabet,
            index,
            transitions: Vec::new(),
            epsilon: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
        }
    }

    /// A single state and no transitions: the empty word or nothing.
    pub fn trivial(alphabet: impl IntoIterator<Item = L>, accept_empty: bool) -> Self {
        let mut n = Nfa::new(alphabet);
        let q = n.add_state(accept_empty);
        n.set_initial(q);
        n
    }

    /// Accepts every word over the alphabet.
    pub fn universal(alphabet: impl IntoIterator<Item = L>) -> Self {
        let mut n = Nfa::new(alphabet);
        let q = n.add_state(true);
        n.set_initial(q);
        for a in 0..n.alphabet.len() {
            n.transitions[q].push((a, q));
        }
        n
    }

    /// Trie of a finite set of words.
    pub fn from_words<'a>(alphabet: impl IntoIterator<Item = L>, words: impl IntoIterator<Item = &'a [L]>) -> Result<Self>
    where
        L: 'a,
    {
        let mut n = Nfa::new(alphabet);
        let root = n.add_state(false);
        n.set_initial(root);
        let mut children: HashMap<(usize, usize), usize> = HashMap::new();
        for w in words {
            let mut q = root;
            for a in w {
                let k = n.letter_index(a)?;
                q = match children.get(&(q, k)) {
                    Some(&c) => c,
                    None => {
                        let c = n.add_state(false);
                        n.transitions[q].push((k, c));
                        children.insert((q, k), c);
                        c
                    }
                };
            }
            n.accepting[q] = true;
        }
        Ok(n)
    }

    pub fn alphabet(&self) -> &[L] {
        &self.alphabet
    }

    pub fn letter_index(&self, a: &L) -> Result<usize> {
        self.index
            .get(a)
            .copied()
            .ok_or_else(|| Error::InvalidLetter(format!("{a:?}")))
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.transitions.push(Vec::new());
        self.epsilon.push(Vec::new());
        self.accepting.push(accepting);
        self.accepting.len() - 1
    }

    pub fn set_accepting(&mut self, q: usize, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub fn set_initial(&mut self, q: usize) {
        if !self.initial.contains(&q) {
            self.initial.push(q);
        }
    }

    pub fn add_transition(&mut self, from: usize, a: &L, to: usize) -> Result<()> {
        let k = self.letter_index(a)?;
        self.add_transition_index(from, k, to);
        Ok(())
    }

    pub(crate) fn add_transition_index(&mut self, from: usize, k: usize, to: usize) {
        if !self.transitions[from].contains(&(k, to)) {
            self.transitions[from].push((k, to));
        }
    }

    pub fn add_epsilon(&mut self, from: usize, to: usize) {
        if from != to && !self.epsilon[from].contains(&to) {
            self.epsilon[from].push(to);
        }
    }

    /// `(from, letter, to)` triples, sorted.
    pub fn transitions(&self) -> Vec<(usize, L, usize)> {
        let mut out: Vec<(usize, L, usize)> = self
            .transitions
            .iter()
            .enumerate()
            .flat_map(|(q, ts)| ts.iter().map(move |&(k, t)| (q, k, t)))
            .map(|(q, k, t)| (q, self.alphabet[k].clone(), t))
            .collect();
        out.sort();
        out
    }

    pub fn has_epsilon(&self) -> bool {
        self.epsilon.iter().any(|e| !e.is_empty())
    }

    pub(crate) fn raw_transitions(&self, q: usize) -> &[(usize, usize)] {
        &self.transitions[q]
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &r in &self.epsilon[q] {
                if set.insert(r) {
                    stack.push(r);
                }
            }
        }
    }

    fn step(&self, set: &BTreeSet<usize>, k: usize) -> BTreeSet<usize> {
        let mut next: BTreeSet<usize> = set
            .iter()
            .flat_map(|&q| self.transitions[q].iter())
            .filter(|&&(a, _)| a == k)
            .map(|&(_, t)| t)
            .collect();
        self.closure(&mut next);
        next
    }

    fn start_set(&self) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = self.initial.iter().copied().collect();
        self.closure(&mut s);
        s
    }

    pub fn accepts(&self, word: &[L]) -> bool {
        let mut cur = self.start_set();
        for a in word {
            let Some(&k) = self.index.get(a) else {
                return false;
            };
            cur = self.step(&cur, k);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    /// Equivalent automaton without ε-moves and with the same states.
    pub fn remove_epsilon(&self) -> Self {
        if !self.has_epsilon() {
            return self.clone();
        }
        let mut out = Nfa::new(self.alphabet.iter().cloned());
        for _ in 0..self.state_count() {
            out.add_state(false);
        }
        for q in 0..self.state_count() {
            let mut c = BTreeSet::from([q]);
            self.closure(&mut c);
            out.accepting[q] = c.iter().any(|&r| self.accepting[r]);
            for &r in &c {
                for &(k, t) in &self.transitions[r] {
                    out.add_transition_index(q, k, t);
                }
            }
        }
        out.initial = self.initial.clone();
        out
    }

    /// Complete deterministic automaton (single initial state, one
    /// transition per letter from every state) for the same language.
    pub fn determinize(&self) -> Self {
        let mut out = Nfa::new(self.alphabet.iter().cloned());
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let start = self.start_set();
        let q0 = out.add_state(start.iter().any(|&q| self.accepting[q]));
        out.set_initial(q0);
        ids.insert(start.clone(), q0);
        let mut queue = VecDeque::from([start]);
        while let Some(set) = queue.pop_front() {
            let from = ids[&set];
            for k in 0..self.alphabet.len() {
                let next = self.step(&set, k);
                let to = match ids.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = out.add_state(next.iter().any(|&q| self.accepting[q]));
                        ids.insert(next.clone(), t);
                        queue.push_back(next);
                        t
                    }
                };
                out.transitions[from].push((k, to));
            }
        }
        out
    }

    /// Words over the alphabet not accepted.
    pub fn complement(&self) -> Self {
        let mut d = self.determinize();
        for a in d.accepting.iter_mut() {
            *a = !*a;
        }
        d
    }

    fn check_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Product construction on the reachable part.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let a = self.remove_epsilon();
        let b = other.remove_epsilon();
        let mut out = Nfa::new(self.alphabet.iter().cloned());
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &p in &a.initial {
            for &q in &b.initial {
                let id = out.add_state(a.accepting[p] && b.accepting[q]);
                out.set_initial(id);
                ids.insert((p, q), id);
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let from = ids[&(p, q)];
            for &(k, p2) in &a.transitions[p] {
                for &(k2, q2) in &b.transitions[q] {
                    if k != k2 {
                        continue;
                    }
                    let to = *ids.entry((p2, q2)).or_insert_with(|| {
                        queue.push_back((p2, q2));
                        out.add_state(a.accepting[p2] && b.accepting[q2])
                    });
                    out.add_transition_index(from, k, to);
                }
            }
        }
        Ok(out)
    }

    fn append_disjoint(&mut self, other: &Self) -> usize {
        let offset = self.state_count();
        for q in 0..other.state_count() {
            self.add_state(other.accepting[q]);
            for &(k, t) in &other.transitions[q] {
                self.transitions[offset + q].push((k, offset + t));
            }
            for &t in &other.epsilon[q] {
                self.epsilon[offset + q].push(offset + t);
            }
        }
        offset
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        let offset = out.append_disjoint(other);
        for &q in &other.initial {
            out.set_initial(offset + q);
        }
        Ok(out)
    }

    pub fn concatenate(&self, other: &Self) -> Result<Self> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        let offset = out.append_disjoint(other);
        for q in 0..self.state_count() {
            if self.accepting[q] {
                out.accepting[q] = false;
                for &i in &other.initial {
                    out.add_epsilon(q, offset + i);
                }
            }
        }
        Ok(out)
    }

    /// Relabels letters; `None` turns the transition into an ε-move.
    pub fn map_letters<M: Symbol>(&self, alphabet: impl IntoIterator<Item = M>, f: impl Fn(&L) -> Option<M>) -> Result<Nfa<M>> {
        let mut out = Nfa::new(alphabet);
        for q in 0..self.state_count() {
            out.add_state(self.accepting[q]);
        }
        let images: Vec<Option<usize>> = self
            .alphabet
            .iter()
            .map(|a| f(a).map(|m| out.letter_index(&m)).transpose())
            .collect::<Result<_>>()?;
        for q in 0..self.state_count() {
            for &(k, t) in &self.transitions[q] {
                match images[k] {
                    Some(m) => out.add_transition_index(q, m, t),
                    None => out.add_epsilon(q, t),
                }
            }
            for &t in &self.epsilon[q] {
                out.add_epsilon(q, t);
            }
        }
        out.initial = self.initial.clone();
        Ok(out)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack: Vec<usize> = self.initial.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            let next = self.transitions[q]
                .iter()
                .map(|&(_, t)| t)
                .chain(self.epsilon[q].iter().copied());
            for t in next {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for &(_, t) in &self.transitions[q] {
                rev[t].push(q);
            }
            for &t in &self.epsilon[q] {
                rev[t].push(q);
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        let r = self.reachable();
        !(0..self.state_count()).any(|q| r[q] && self.accepting[q])
    }

    /// Removes states that are unreachable or cannot reach acceptance.
    pub fn trim(&self) -> Self {
        let r = self.reachable();
        let c = self.coreachable();
        let keep: Vec<usize> = (0..self.state_count()).filter(|&q| r[q] && c[q]).collect();
        let mut map = vec![usize::MAX; self.state_count()];
        let mut out = Nfa::new(self.alphabet.iter().cloned());
        for &q in &keep {
            map[q] = out.add_state(self.accepting[q]);
        }
        for &q in &keep {
            for &(k, t) in &self.transitions[q] {
                if map[t] != usize::MAX {
                    out.add_transition_index(map[q], k, map[t]);
                }
            }
            for &t in &self.epsilon[q] {
                if map[t] != usize::MAX {
                    out.add_epsilon(map[q], map[t]);
                }
            }
        }
        for &q in &self.initial {
            if map[q] != usize::MAX {
                out.set_initial(map[q]);
            }
        }
        if out.state_count() == 0 {
            let q = out.add_state(false);
            out.set_initial(q);
        }
        out
    }

    /// Accepted words of length at most `max_len`, in shortlex order.
    pub fn enumerate(&self, max_len: usize) -> Vec<Vec<L>> {
        let d = self.determinize();
        let n = d.state_count();
        let k = d.alphabet.len();
        // succ[q * k + a]
        let mut succ = vec![0; n * k];
        for q in 0..n {
            for &(a, t) in &d.transitions[q] {
                succ[q * k + a] = t;
            }
        }
        // live[r][q]: some word of length exactly r is accepted from q
        let mut live = vec![d.accepting.clone()];
        for r in 1..=max_len {
            let prev = &live[r - 1];
            let row = (0..n).map(|q| (0..k).any(|a| prev[succ[q * k + a]])).collect();
            live.push(row);
        }
        let mut out = Vec::new();
        let q0 = d.initial[0];
        let mut word = Vec::new();
        for len in 0..=max_len {
            if live[len][q0] {
                collect(&d, &succ, &live, q0, len, &mut word, &mut out);
            }
        }
        return out;

        fn collect<L: Symbol>(
            d: &Nfa<L>,
            succ: &[usize],
            live: &[Vec<bool>],
            q: usize,
            remaining: usize,
            word: &mut Vec<usize>,
            out: &mut Vec<Vec<L>>,
        ) {
            if remaining == 0 {
                out.push(word.iter().map(|&a| d.alphabet[a].clone()).collect());
                return;
            }
            let k = d.alphabet.len();
            for a in 0..k {
                let t = succ[q * k + a];
                if live[remaining - 1][t] {
                    word.push(a);
                    collect(d, succ, live, t, remaining - 1, word, out);
                    word.pop();
                }
            }
        }
    }
}
