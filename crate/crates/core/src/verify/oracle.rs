//! Brute-force group arithmetic on explicit element sets. Nothing here uses
//! stabilizer chains or transversals.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::perm::Permutation;

/// All elements generated by `gens`, or `None` once more than `bound`
/// elements have been found.
pub fn closure(gens: &[Permutation], degree: usize, bound: usize) -> Option<Vec<Permutation>> {
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                if elements.len() >= bound {
                    return None;
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(elements)
}

/// Key of the right coset `Hg`: its least element.
pub fn coset_key(h: &[Permutation], g: &Permutation) -> Permutation {
    h.iter()
        .map(|x| x.then(g))
        .min()
        .expect("subgroups are nonempty")
}

/// Right cosets of `h` in `g`, as a map from each element of `g` to the
/// index of its coset (numbered by first appearance).
pub fn coset_partition(
    g: &[Permutation],
    h: &[Permutation],
) -> (HashMap<Permutation, usize>, usize) {
    let mut keys: HashMap<Permutation, usize> = HashMap::new();
    let mut of = HashMap::with_capacity(g.len());
    for x in g {
        let next = keys.len();
        let idx = *keys.entry(coset_key(h, x)).or_insert(next);
        of.insert(x.clone(), idx);
    }
    let count = keys.len();
    (of, count)
}

/// Elements of `h` whose conjugates by every element of `g` stay in `h`.
pub fn core_by_conjugation(g: &[Permutation], h: &[Permutation]) -> Vec<Permutation> {
    let set: HashSet<&Permutation> = h.iter().collect();
    h.iter()
        .filter(|x| g.iter().all(|y| set.contains(&x.conjugate_by(y))))
        .cloned()
        .collect()
}
