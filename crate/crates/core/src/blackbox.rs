//! Semigroups given only by a multiplication on opaque elements.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

use crate::semigroup::{Elem, FiniteSemigroup};

pub trait BlackBoxSemigroup {
    type Element: Clone + Eq + Hash + Ord + Debug;

    fn multiply(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;

    /// Default generators used when a caller supplies none.
    fn seed_generators(&self) -> Vec<Self::Element>;

    /// Canonical text form; equal elements encode identically.
    fn encode(&self, x: &Self::Element) -> String {
        format!("{x:?}")
    }
}

impl BlackBoxSemigroup for FiniteSemigroup {
    type Element = Elem;

    fn multiply(&self, x: &Elem, y: &Elem) -> Elem {
        self.mul(*x, *y)
    }

    fn seed_generators(&self) -> Vec<Elem> {
        self.elements().collect()
    }
}

/// `(ℕ, +)` generated by `1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Naturals;

impl BlackBoxSemigroup for Naturals {
    type Element = u64;

    fn multiply(&self, x: &u64, y: &u64) -> u64 {
        x + y
    }

    fn seed_generators(&self) -> Vec<u64> {
        vec![1]
    }
}

/// Samples products of up to `depth` generators and checks associativity on
/// random triples drawn from them. Returns the first failing triple. A
/// `None` result is evidence, not proof.
pub fn spot_check_associativity<B, R>(
    sem: &B,
    depth: usize,
    samples: usize,
    rng: &mut R,
) -> Option<(B::Element, B::Element, B::Element)>
where
    B: BlackBoxSemigroup,
    R: Rng,
{
    let gens = sem.seed_generators();
    if gens.is_empty() {
        return None;
    }
    let mut pool: Vec<B::Element> = gens.clone();
    let mut seen: HashSet<B::Element> = pool.iter().cloned().collect();
    let mut frontier = pool.clone();
    for _ in 1..depth {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let p = sem.multiply(x, g);
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
            if seen.len() > 4096 {
                break;
            }
        }
        pool.extend(next.iter().cloned());
        frontier = next;
    }
    for _ in 0..samples {
        let x = &pool[rng.gen_range(0..pool.len())];
        let y = &pool[rng.gen_range(0..pool.len())];
        let z = &pool[rng.gen_range(0..pool.len())];
        let left = sem.multiply(&sem.multiply(x, y), z);
        let right = sem.multiply(x, &sem.multiply(y, z));
        if left != right {
            return Some((x.clone(), y.clone(), z.clone()));
        }
    }
    None
}
