//! Coset enumeration for finite semigroup presentations.
//!
//! The enumerator works on the right Cayley graph of the monoid `A*/η`,
//! with coset 0 standing for the empty word. Since no relation involves the
//! empty word, the non-zero cosets are exactly the elements of `A⁺/η`.

use std::collections::VecDeque;

use super::{Presentation, Word};

/// A completed enumeration: classes numbered in shortlex order of their
/// least representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    representatives: Vec<Word>,
    table: Vec<usize>,
    letter_class: Vec<usize>,
    // right action of letters on classes
    action: Vec<usize>,
    letters: usize,
}

impl Enumeration {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Word] {
        &self.representatives
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order() + y]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub fn letter_class(&self, a: usize) -> usize {
        self.letter_class[a]
    }

    /// Class of a nonempty word.
    pub fn class_of(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        let mut c = self.letter_class[first];
        for &a in rest {
            c = self.action[c * self.letters + a];
        }
        Some(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationOutcome {
    Complete(Enumeration),
    /// The bounds were hit before the quotient closed; the reason is kept.
    BoundExceeded(String),
}

impl EnumerationOutcome {
    pub fn complete(self) -> Option<Enumeration> {
        match self {
            EnumerationOutcome::Complete(e) => Some(e),
            EnumerationOutcome::BoundExceeded(_) => None,
        }
    }
}

struct CosetTable {
    letters: usize,
    table: Vec<Option<usize>>,
    parent: Vec<usize>,
    live: usize,
}

impl CosetTable {
    fn new(letters: usize) -> Self {
        CosetTable {
            letters,
            table: vec![None; letters],
            parent: vec![0],
            live: 1,
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            self.parent[c] = self.parent[self.parent[c]];
            c = self.parent[c];
        }
        c
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn get(&mut self, c: usize, a: usize) -> Option<usize> {
        let t = self.table[c * self.letters + a]?;
        let t = self.find(t);
        self.table[c * self.letters + a] = Some(t);
        Some(t)
    }

    fn define(&mut self, c: usize, a: usize) -> usize {
        let new = self.len();
        self.parent.push(new);
        self.table.extend(std::iter::repeat_n(None, self.letters));
        self.table[c * self.letters + a] = Some(new);
        self.live += 1;
        new
    }

    // Follows `word` from `c`, defining cosets on the way.
    fn trace_defining(&mut self, mut c: usize, word: &[usize]) -> usize {
        for &a in word {
            c = match self.get(c, a) {
                Some(t) => t,
                None => self.define(c, a),
            };
        }
        c
    }

    // Follows `word` from `c` without defining; returns where it stopped and
    // how many letters were consumed.
    fn trace(&mut self, mut c: usize, word: &[usize]) -> (usize, usize) {
        for (k, &a) in word.iter().enumerate() {
            match self.get(c, a) {
                Some(t) => c = t,
                None => return (c, k),
            }
        }
        (c, word.len())
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((x, y)) = queue.pop_front() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            let (keep, drop) = if x < y { (x, y) } else { (y, x) };
            self.parent[drop] = keep;
            self.live -= 1;
            for l in 0..self.letters {
                if let Some(td) = self.table[drop * self.letters + l] {
                    match self.table[keep * self.letters + l] {
                        Some(tk) => queue.push_back((tk, td)),
                        None => self.table[keep * self.letters + l] = Some(td),
                    }
                }
            }
        }
    }

    // Traces every relation at every live coset without defining, merging
    // complete traces that disagree and filling single missing last letters.
    fn lookahead(&mut self, relations: &[(Word, Word)]) {
        loop {
            let mut changed = false;
            for c in 0..self.len() {
                if !self.is_live(c) {
                    continue;
                }
                for (u, v) in relations {
                    let c = self.find(c);
                    let (eu, ku) = self.trace(c, u);
                    let (ev, kv) = self.trace(c, v);
                    if ku == u.len() && kv == v.len() {
                        if eu != ev {
                            self.coincidence(eu, ev);
                            changed = true;
                        }
                    } else if ku == u.len() && kv + 1 == v.len() {
                        self.table[ev * self.letters + v[kv]] = Some(eu);
                        changed = true;
                    } else if kv == v.len() && ku + 1 == u.len() {
                        self.table[eu * self.letters + u[ku]] = Some(ev);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
}

/// Enumerates `A⁺/η` for the presentation. `max_classes` bounds the number
/// of live cosets (excluding the empty word) at any time, and `max_len`
/// bounds the length of the shortlex representatives of the result.
pub fn enumerate_presentation(p: &Presentation, max_classes: usize, max_len: usize) -> EnumerationOutcome {
    let letters = p.alphabet.len();
    if letters == 0 {
        return EnumerationOutcome::BoundExceeded("empty alphabet".into());
    }
    if let Err(e) = p.validate() {
        return EnumerationOutcome::BoundExceeded(e.to_string());
    }
    let total_cap = max_classes.saturating_mul(1000).max(100_000);
    let mut ct = CosetTable::new(letters);
    let longest = p
        .relations
        .iter()
        .map(|(u, v)| u.len() + v.len())
        .max()
        .unwrap_or(0);

    loop {
        let mut c = 0;
        while c < ct.len() {
            if ct.is_live(c) {
                // room for the worst-case definitions of one coset
                if ct.live + longest + letters > max_classes + 1 {
                    ct.lookahead(&p.relations);
                    if ct.live + longest + letters > max_classes + 1 {
                        return EnumerationOutcome::BoundExceeded(format!(
                            "more than {max_classes} live classes"
                        ));
                    }
                }
                if ct.len() > total_cap {
                    return EnumerationOutcome::BoundExceeded(format!(
                        "more than {total_cap} coset definitions"
                    ));
                }
                for (u, v) in &p.relations {
                    if !ct.is_live(c) {
                        break;
                    }
                    let eu = ct.trace_defining(c, u);
                    let c2 = ct.find(c);
                    let ev = ct.trace_defining(c2, v);
                    ct.coincidence(eu, ev);
                }
                if ct.is_live(c) {
                    for a in 0..letters {
                        if ct.get(c, a).is_none() {
                            ct.define(c, a);
                        }
                    }
                }
            }
            c += 1;
        }
        // certificate: complete table and every relation holds everywhere
        let mut sound = true;
        'check: for c in 0..ct.len() {
            if !ct.is_live(c) {
                continue;
            }
            for a in 0..letters {
                if ct.get(c, a).is_none() {
                    sound = false;
                    break 'check;
                }
            }
            for (u, v) in &p.relations {
                if ct.trace(c, u).0 != ct.trace(c, v).0 {
                    sound = false;
                    break 'check;
                }
            }
        }
        if sound {
            break;
        }
    }

    // shortlex representatives by breadth-first search in letter order
    let mut class_of = vec![usize::MAX; ct.len()];
    let mut reps: Vec<Word> = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([(0usize, Vec::new())]);
    let mut seen = vec![false; ct.len()];
    seen[0] = true;
    while let Some((c, w)) = queue.pop_front() {
        for a in 0..letters {
            let t = ct.get(c, a).expect("complete table");
            if !seen[t] {
                seen[t] = true;
                let mut w2 = w.clone();
                w2.push(a);
                if w2.len() > max_len {
                    return EnumerationOutcome::BoundExceeded(format!(
                        "a representative is longer than {max_len}"
                    ));
                }
                class_of[t] = reps.len();
                reps.push(w2.clone());
                order.push(t);
                queue.push_back((t, w2));
            }
        }
    }
    let n = reps.len();
    let mut action = vec![0; n * letters];
    for (k, &c) in order.iter().enumerate() {
        for a in 0..letters {
            action[k * letters + a] = class_of[ct.get(c, a).unwrap()];
        }
    }
    let letter_class: Vec<usize> = (0..letters).map(|a| class_of[ct.get(0, a).unwrap()]).collect();
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let mut c = x;
            for &a in &reps[y] {
                c = action[c * letters + a];
            }
            table[x * n + y] = c;
        }
    }
    EnumerationOutcome::Complete(Enumeration {
        representatives: reps,
        table,
        letter_class,
        action,
        letters,
    })
}
