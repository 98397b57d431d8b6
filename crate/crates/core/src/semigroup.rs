//! Finite semigroups given by Cayley tables.
//!
//! Elements are dense indices `0..n`. Whenever a formula needs `S¹`, the
//! adjoined identity is the fresh index `n`, even if `S` already has an
//! identity of its own; see [`FiniteSemigroup::one`].

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Element index into a Cayley table. Index `n` stands for the adjoined
/// identity of `S¹`.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<Elem>,
    identity: Option<Elem>,
    names: Option<Vec<String>>,
}

/// Checks a Cayley table and returns the semigroup it defines.
pub fn validate_table(rows: &[Vec<usize>]) -> Result<FiniteSemigroup> {
    let order = rows.len();
    if order == 0 {
        return Err(Error::EmptyTable);
    }
    let mut table = Vec::with_capacity(order * order);
    for (row, entries) in rows.iter().enumerate() {
        if entries.len() != order {
            return Err(Error::NotSquare {
                row,
                len: entries.len(),
                order,
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= order {
                return Err(Error::OutOfRange {
                    row,
                    col,
                    value,
                    order,
                });
            }
            table.push(value);
        }
    }
    FiniteSemigroup::from_flat(order, table)
}

impl FiniteSemigroup {
    /// Builds from a row-major table of length `order²`.
    pub fn from_flat(order: usize, table: Vec<Elem>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if table.len() != order * order {
            return Err(Error::NotSquare {
                row: 0,
                len: table.len(),
                order: order * order,
            });
        }
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(Error::OutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos],
                order,
            });
        }
        let mut s = FiniteSemigroup {
            order,
            table,
            identity: None,
            names: None,
        };
        if let Some(witness) = s.associativity_witness() {
            return Err(Error::NotAssociative { witness });
        }
        s.identity = s.find_identity();
        Ok(s)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Input(format!(
                "{} names given for {} elements",
                names.len(),
                self.order
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Option<Elem> {
        self.identity
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Printable name of an element of `S¹`.
    pub fn name(&self, x: Elem) -> String {
        if x == self.order {
            return "1".to_string();
        }
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.order + y]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// The adjoined identity of `S¹`.
    #[inline]
    pub fn one(&self) -> Elem {
        self.order
    }

    /// Multiplication in `S¹`.
    #[inline]
    pub fn mul1(&self, x: Elem, y: Elem) -> Elem {
        if x == self.order {
            y
        } else if y == self.order {
            x
        } else {
            self.mul(x, y)
        }
    }

    /// Evaluates a word over `S¹`; the empty word gives the adjoined identity.
    pub fn product1(&self, word: &[Elem]) -> Elem {
        word.iter().fold(self.one(), |acc, &x| self.mul1(acc, x))
    }

    /// Evaluates a nonempty word over `S`.
    pub fn product(&self, word: &[Elem]) -> Option<Elem> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }

    pub fn check_element(&self, x: Elem) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::InvalidElement(x))
        }
    }

    /// A triple violating associativity: diagonal triples `(x, x, x)` are
    /// tried first, then all triples in lexicographic order.
    pub fn associativity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        let n = self.order;
        if let Some(x) = (0..n).find(|&x| {
            let xx = self.mul(x, x);
            self.mul(xx, x) != self.mul(x, xx)
        }) {
            return Some((x, x, x));
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn find_identity(&self) -> Option<Elem> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Every row and every column of the table is a permutation.
    pub fn is_cancellative(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        for x in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..n {
                let v = self.mul(x, y);
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..n {
                let v = self.mul(y, x);
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }

    pub fn is_group(&self) -> bool {
        match self.identity {
            None => false,
            Some(e) => self
                .elements()
                .all(|x| self.elements().any(|y| self.mul(x, y) == e && self.mul(y, x) == e)),
        }
    }

    /// Smallest subsemigroup containing `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Result<SubSemigroup> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for &g in gens {
            self.check_element(g)?;
        }
        let mut mask = vec![false; self.order];
        let mut queue = VecDeque::new();
        for &g in gens {
            if !mask[g] {
                mask[g] = true;
                queue.push_back(g);
            }
        }
        // Right multiplication by generators reaches every product of generators.
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(SubSemigroup::from_mask(mask))
    }

    pub fn is_generated_by(&self, gens: &[Elem]) -> bool {
        self.closure(gens)
            .map(|c| c.len() == self.order)
            .unwrap_or(false)
    }

    /// Generating set built greedily from `within`: each element not yet
    /// reached is added in order.
    pub fn greedy_generators(&self, within: &[Elem]) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut reached = vec![false; self.order];
        for &x in within {
            if !reached[x] {
                gens.push(x);
                for &y in self.closure(&gens).unwrap().members() {
                    reached[y] = true;
                }
            }
        }
        gens
    }

    pub fn monoid_completion(&self) -> MonoidCompletion {
        MonoidCompletion::new(self)
    }
}

/// `S¹` as a semigroup in its own right: the base table plus a fresh
/// identity at index `n`.
#[derive(Debug, Clone)]
pub struct MonoidCompletion {
    semigroup: FiniteSemigroup,
    adjoined: Elem,
}

impl MonoidCompletion {
    pub fn new(base: &FiniteSemigroup) -> Self {
        let n = base.order();
        let mut table = Vec::with_capacity((n + 1) * (n + 1));
        for x in 0..=n {
            for y in 0..=n {
                table.push(base.mul1(x, y));
            }
        }
        let names = (0..=n).map(|x| base.name(x)).collect();
        let semigroup = FiniteSemigroup {
            order: n + 1,
            table,
            identity: Some(n),
            names: Some(names),
        };
        MonoidCompletion {
            semigroup,
            adjoined: n,
        }
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn adjoined(&self) -> Elem {
        self.adjoined
    }
}

/// A subset of a parent semigroup closed under multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubSemigroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl SubSemigroup {
    pub fn new(parent: &FiniteSemigroup, members: &[Elem]) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut mask = vec![false; parent.order()];
        for &m in members {
            parent.check_element(m)?;
            mask[m] = true;
        }
        let sub = SubSemigroup::from_mask(mask);
        for &x in &sub.members {
            for &y in &sub.members {
                let product = parent.mul(x, y);
                if !sub.mask[product] {
                    return Err(Error::NotClosed { x, y, product });
                }
            }
        }
        Ok(sub)
    }

    fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        SubSemigroup { members, mask }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Membership in `T`; the adjoined identity (index `n`) is not a member.
    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    /// Members of `T¹` listed as the adjoined identity first, then `T`.
    pub fn with_one(&self, parent: &FiniteSemigroup) -> Vec<Elem> {
        std::iter::once(parent.one())
            .chain(self.members.iter().copied())
            .collect()
    }

    /// Complement `S ∖ T`.
    pub fn complement(&self) -> Vec<Elem> {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| (!m).then_some(i))
            .collect()
    }

    /// Position of `x` among the members.
    pub fn local_index(&self, x: Elem) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// `T` as a standalone semigroup; element `k` is `members()[k]`.
    pub fn to_semigroup(&self, parent: &FiniteSemigroup) -> FiniteSemigroup {
        let k = self.members.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in &self.members {
            for &y in &self.members {
                table.push(self.local_index(parent.mul(x, y)).expect("closed"));
            }
        }
        let names = self.members.iter().map(|&x| parent.name(x)).collect();
        let mut t = FiniteSemigroup {
            order: k,
            table,
            identity: None,
            names: Some(names),
        };
        t.identity = t.find_identity();
        t
    }
}

/// A structure-preserving map between two finite semigroups.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: FiniteSemigroup,
    target: FiniteSemigroup,
    map: Vec<Elem>,
}

impl Homomorphism {
    pub fn new(source: &FiniteSemigroup, target: &FiniteSemigroup, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::DomainMismatch);
        }
        for &m in &map {
            target.check_element(m)?;
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotHomomorphism { x, y });
                }
            }
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn source(&self) -> &FiniteSemigroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteSemigroup {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }
}

/// The two-element-chain strong semilattice `T ∪ U`: products inside `T` or
/// `U` are taken there, mixed products push the `T` factor through `φ`.
///
/// Elements of `T` keep their indices, `U`'s element `k` becomes `|T| + k`.
pub fn strong_semilattice(
    t: &FiniteSemigroup,
    u: &FiniteSemigroup,
    phi: &Homomorphism,
) -> Result<(FiniteSemigroup, SubSemigroup)> {
    if phi.source() != t || phi.target() != u {
        return Err(Error::DomainMismatch);
    }
    let nt = t.order();
    let n = nt + u.order();
    let to_u = |x: Elem| if x < nt { phi.apply(x) } else { x - nt };
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let v = if x < nt && y < nt {
                t.mul(x, y)
            } else {
                nt + u.mul(to_u(x), to_u(y))
            };
            table.push(v);
        }
    }
    let names = (0..nt)
        .map(|x| format!("T:{}", t.name(x)))
        .chain((0..u.order()).map(|y| format!("U:{}", u.name(y))))
        .collect();
    let s = FiniteSemigroup::from_flat(n, table)?.with_names(names)?;
    let sub = SubSemigroup::new(&s, &(0..nt).collect::<Vec<_>>())?;
    Ok((s, sub))
}

/// Shortlex-minimal words over a list of generators, one per reachable
/// element, computed by a breadth-first search in generator order.
#[derive(Debug, Clone)]
pub struct Factorizer {
    gens: Vec<Elem>,
    // (prefix element, last letter) for each reached element
    parent: Vec<Option<(Option<Elem>, usize)>>,
    order_reached: Vec<Elem>,
}

impl Factorizer {
    pub fn new(s: &FiniteSemigroup, gens: &[Elem]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for &g in gens {
            s.check_element(g)?;
        }
        let mut parent = vec![None; s.order()];
        let mut order_reached = Vec::new();
        let mut queue = VecDeque::new();
        for (letter, &g) in gens.iter().enumerate() {
            if parent[g].is_none() {
                parent[g] = Some((None, letter));
                order_reached.push(g);
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for (letter, &g) in gens.iter().enumerate() {
                let y = s.mul(x, g);
                if parent[y].is_none() {
                    parent[y] = Some((Some(x), letter));
                    order_reached.push(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(Factorizer {
            gens: gens.to_vec(),
            parent,
            order_reached,
        })
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    /// Word of generator positions for `x`, if reachable.
    pub fn word(&self, x: Elem) -> Option<Vec<usize>> {
        let mut word = Vec::new();
        let mut cur = x;
        loop {
            let (prefix, letter) = (*self.parent.get(cur)?)?;
            word.push(letter);
            match prefix {
                Some(p) => cur = p,
                None => break,
            }
        }
        word.reverse();
        Some(word)
    }

    /// Word for an element of `T¹`: the adjoined identity maps to the empty word.
    pub fn word1(&self, x: Elem) -> Option<Vec<usize>> {
        if x == self.parent.len() {
            Some(Vec::new())
        } else {
            self.word(x)
        }
    }

    pub fn length(&self, x: Elem) -> Option<usize> {
        self.word1(x).map(|w| w.len())
    }

    /// Reached elements in shortlex order of their representatives.
    pub fn reached(&self) -> &[Elem] {
        &self.order_reached
    }
}
