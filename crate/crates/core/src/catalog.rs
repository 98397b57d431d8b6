//! Small named semigroups and random instance generators used by the CLI
//! demos and the test suites.

use std::collections::HashMap;

use rand::Rng;

use crate::semigroup::{strong_semilattice, FiniteSemigroup, Homomorphism, SubSemigroup};

/// Additive group `Z_n`.
pub fn cyclic_group(n: usize) -> FiniteSemigroup {
    let table = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x + y) % n))
        .collect();
    FiniteSemigroup::from_flat(n, table).expect("Z_n is a group")
}

/// A transformation of `{0..d-1}`; composition acts on the right, so
/// `(f * g)(p) = g(f(p))`.
pub type Transformation = Vec<u8>;

fn compose(f: &Transformation, g: &Transformation) -> Transformation {
    f.iter().map(|&p| g[p as usize]).collect()
}

/// The semigroup generated by a set of transformations, with elements
/// numbered in breadth-first order from the generators.
pub fn transformation_semigroup(gens: &[Transformation]) -> (FiniteSemigroup, Vec<Transformation>) {
    transformation_semigroup_capped(gens, usize::MAX).expect("uncapped")
}

fn transformation_semigroup_capped(
    gens: &[Transformation],
    cap: usize,
) -> Option<(FiniteSemigroup, Vec<Transformation>)> {
    let mut elems: Vec<Transformation> = Vec::new();
    let mut index: HashMap<Transformation, usize> = HashMap::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), elems.len());
            elems.push(g.clone());
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = compose(&elems[i], g);
            if !index.contains_key(&p) {
                if elems.len() >= cap {
                    return None;
                }
                index.insert(p.clone(), elems.len());
                elems.push(p);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            table.push(index[&compose(x, y)]);
        }
    }
    let names = elems
        .iter()
        .map(|t| t.iter().map(|p| p.to_string()).collect::<String>())
        .collect();
    let s = FiniteSemigroup::from_flat(n, table)
        .expect("transformation composition is associative")
        .with_names(names)
        .expect("one name per element");
    Some((s, elems))
}

/// Symmetric group on three points, generated by a transposition and a 3-cycle.
pub fn symmetric_group_3() -> (FiniteSemigroup, Vec<Transformation>) {
    transformation_semigroup(&[vec![1, 0, 2], vec![1, 2, 0]])
}

/// `S₃` together with the non-normal subgroup generated by a transposition.
pub fn s3_with_transposition() -> (FiniteSemigroup, SubSemigroup) {
    let (s, elems) = symmetric_group_3();
    let swap = elems.iter().position(|t| t == &vec![1, 0, 2]).unwrap();
    let sub = s.closure(&[swap]).unwrap();
    (s, sub)
}

/// `S₃` together with its normal subgroup `A₃`.
pub fn s3_with_alternating() -> (FiniteSemigroup, SubSemigroup) {
    let (s, elems) = symmetric_group_3();
    let cycle = elems.iter().position(|t| t == &vec![1, 2, 0]).unwrap();
    let sub = s.closure(&[cycle]).unwrap();
    (s, sub)
}

/// Full transformation monoid on two points.
pub fn full_transformation_monoid_2() -> (FiniteSemigroup, Vec<Transformation>) {
    transformation_semigroup(&[vec![0, 1], vec![1, 0], vec![0, 0], vec![1, 1]])
}

/// `Z₆` with the subgroup `{0, 3}`.
pub fn z6_with_order_two() -> (FiniteSemigroup, SubSemigroup) {
    let s = cyclic_group(6);
    let t = SubSemigroup::new(&s, &[0, 3]).unwrap();
    (s, t)
}

/// `𝒮(Z₂, trivial, φ)`: a group of Green index 2 in a monoid of order 3.
pub fn z2_over_trivial() -> (FiniteSemigroup, SubSemigroup) {
    let t = cyclic_group(2);
    let u = cyclic_group(1);
    let phi = Homomorphism::new(&t, &u, vec![0, 0]).unwrap();
    strong_semilattice(&t, &u, &phi).unwrap()
}

/// `𝒮(Z₄, Z₂, reduction mod 2)`.
pub fn z4_over_z2() -> (FiniteSemigroup, SubSemigroup) {
    let t = cyclic_group(4);
    let u = cyclic_group(2);
    let phi = Homomorphism::new(&t, &u, vec![0, 1, 0, 1]).unwrap();
    strong_semilattice(&t, &u, &phi).unwrap()
}

/// A named fixed instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: &'static str,
    pub semigroup: FiniteSemigroup,
    pub sub: SubSemigroup,
}

/// The fixed instances exercised throughout the test suites.
pub fn fixed_instances() -> Vec<Instance> {
    let mk = |name, (semigroup, sub): (FiniteSemigroup, SubSemigroup)| Instance {
        name,
        semigroup,
        sub,
    };
    vec![
        mk("Z6/{0,3}", z6_with_order_two()),
        mk("S(Z2,1,phi)", z2_over_trivial()),
        mk("S(Z4,Z2,mod2)", z4_over_z2()),
        mk("S3/<(01)>", s3_with_transposition()),
    ]
}

fn random_transformation<R: Rng>(rng: &mut R, degree: usize) -> Transformation {
    (0..degree).map(|_| rng.gen_range(0..degree) as u8).collect()
}

/// A random transformation semigroup of order at most `max_order` together
/// with a random subsemigroup generated by one or two of its elements.
pub fn random_instance<R: Rng>(rng: &mut R, max_order: usize) -> (FiniteSemigroup, SubSemigroup) {
    loop {
        let degree = rng.gen_range(2..=4);
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<_> = (0..ngens).map(|_| random_transformation(rng, degree)).collect();
        let Some((s, _)) = transformation_semigroup_capped(&gens, max_order) else {
            continue;
        };
        let k = rng.gen_range(1..=2);
        let tgens: Vec<_> = (0..k).map(|_| rng.gen_range(0..s.order())).collect();
        let t = s.closure(&tgens).unwrap();
        return (s, t);
    }
}
