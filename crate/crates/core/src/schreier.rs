//! Deterministic Schreier-Sims.
//!
//! The base always covers every point: an optional prefix followed by the
//! remaining points in ascending order. Levels whose basic orbit is trivial
//! carry no data, so the full base costs only one comparison per point when
//! sifting.

use std::collections::HashMap;

use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    /// Basic orbit in discovery order; `orbit[0]` is the base point.
    orbit: Vec<usize>,
    /// point -> (u, u⁻¹) with `u(base) = point`.
    transversal: HashMap<usize, (Permutation, Permutation)>,
    /// Indices into `StabChain::gens` of strong generators fixing all earlier
    /// base points.
    gen_ids: Vec<usize>,
    /// Per orbit position, how many of `gen_ids` have had their Schreier
    /// generator sifted.
    checked: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let id = Permutation::identity(degree);
        let mut transversal = HashMap::new();
        transversal.insert(base_point, (id.clone(), id));
        Level {
            orbit: vec![base_point],
            transversal,
            gen_ids: Vec::new(),
            checked: vec![0],
        }
    }
}

/// Base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    base: Vec<usize>,
    gens: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Chain for the trivial group with base `prefix ++ rest-ascending`.
    pub(crate) fn trivial(degree: usize, prefix: &[usize]) -> Self {
        let mut in_prefix = vec![false; degree];
        let mut base = Vec::with_capacity(degree);
        for &p in prefix {
            if !in_prefix[p] {
                in_prefix[p] = true;
                base.push(p);
            }
        }
        base.extend((0..degree).filter(|&p| !in_prefix[p]));
        let levels = base.iter().map(|&b| Level::new(degree, b)).collect();
        StabChain {
            degree,
            base,
            gens: Vec::new(),
            levels,
        }
    }

    pub(crate) fn new(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain::trivial(degree, prefix);
        for g in generators {
            chain.extend(g);
        }
        chain
    }

    pub(crate) fn base(&self) -> &[usize] {
        &self.base
    }

    /// Number of leading base points fixed by `g`.
    fn depth_of(&self, g: &Permutation) -> usize {
        self.base
            .iter()
            .position(|&b| g.apply(b) != b)
            .unwrap_or(self.base.len())
    }

    /// Sifts `g` from base position `from`. On failure returns the residue and
    /// the position where it dropped out of the basic orbit.
    fn strip(&self, g: &Permutation, from: usize) -> Result<(), (usize, Permutation)> {
        let mut h = g.clone();
        for pos in from..self.base.len() {
            let b = self.base[pos];
            let x = h.apply(b);
            if x == b {
                continue;
            }
            match self.levels[pos].transversal.get(&x) {
                Some((_, u_inv)) => h = h.then(u_inv),
                None => return Err((pos, h)),
            }
        }
        debug_assert!(h.is_identity());
        Ok(())
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.strip(g, 0).is_ok()
    }

    fn add_strong_generator(&mut self, h: Permutation) -> usize {
        let depth = self.depth_of(&h);
        debug_assert!(depth < self.base.len());
        let id = self.gens.len();
        self.gens.push(h);
        for level in &mut self.levels[..=depth] {
            level.gen_ids.push(id);
        }
        depth
    }

    fn close_orbit(&mut self, pos: usize) {
        let level = &mut self.levels[pos];
        let mut k = 0;
        while k < level.orbit.len() {
            let x = level.orbit[k];
            for &gid in &level.gen_ids {
                let s = &self.gens[gid];
                let y = s.apply(x);
                if !level.transversal.contains_key(&y) {
                    let u = level.transversal[&x].0.then(s);
                    let u_inv = u.inverse();
                    level.transversal.insert(y, (u, u_inv));
                    level.orbit.push(y);
                    level.checked.push(0);
                }
            }
            k += 1;
        }
    }

    /// Completes the structure for every level at or above `start`.
    fn saturate(&mut self, start: usize) {
        let mut pos = start;
        loop {
            if !self.levels[pos].gen_ids.is_empty() {
                self.close_orbit(pos);
                if let Some(depth) = self.check_schreier_generators(pos) {
                    pos = depth;
                    continue;
                }
            }
            if pos == 0 {
                break;
            }
            pos -= 1;
        }
    }

    /// Sifts unchecked Schreier generators at `pos`; returns the depth of the
    /// first new strong generator, if one was needed.
    fn check_schreier_generators(&mut self, pos: usize) -> Option<usize> {
        for k in 0..self.levels[pos].orbit.len() {
            while self.levels[pos].checked[k] < self.levels[pos].gen_ids.len() {
                let level = &self.levels[pos];
                let gid = level.gen_ids[level.checked[k]];
                let x = level.orbit[k];
                let s = &self.gens[gid];
                let y = s.apply(x);
                let schreier = level.transversal[&x]
                    .0
                    .then(s)
                    .then(&level.transversal[&y].1);
                self.levels[pos].checked[k] += 1;
                if schreier.is_identity() {
                    continue;
                }
                if let Err((_, residue)) = self.strip(&schreier, pos + 1) {
                    return Some(self.add_strong_generator(residue));
                }
            }
        }
        None
    }

    /// Adds `g` to the group. Returns false when `g` was already a member.
    pub(crate) fn extend(&mut self, g: &Permutation) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        match self.strip(g, 0) {
            Ok(()) => false,
            Err((_, residue)) => {
                let depth = self.add_strong_generator(residue);
                self.saturate(depth);
                true
            }
        }
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, level| {
            acc.checked_mul(level.orbit.len() as u128)
                .expect("group order overflows u128")
        })
    }

    /// Strong generators fixing the first `count` base points; together with
    /// the deeper levels they form a stabilizer chain for that stabilizer.
    pub(crate) fn stabilizer_generators(&self, count: usize) -> Vec<Permutation> {
        match self.levels.get(count) {
            Some(level) => level
                .gen_ids
                .iter()
                .map(|&i| self.gens[i].clone())
                .collect(),
            None => Vec::new(),
        }
    }

    /// Basic orbit at position `pos` in discovery order.
    pub(crate) fn orbit(&self, pos: usize) -> &[usize] {
        &self.levels[pos].orbit
    }

    /// Transversal element `u` with `u(base[pos]) = point`, if `point` is in
    /// the basic orbit.
    pub(crate) fn transversal_element(&self, pos: usize, point: usize) -> Option<&Permutation> {
        self.levels[pos].transversal.get(&point).map(|(u, _)| u)
    }

    /// Uniformly random element: one transversal element per level, deepest
    /// level applied first.
    pub(crate) fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            if level.orbit.len() > 1 {
                let x = level.orbit[rng.gen_range(0..level.orbit.len())];
                g = g.then(&level.transversal[&x].0);
            }
        }
        g
    }

    /// The least element of the right coset `H·g` (H being this group) under
    /// comparison of images at base points in base order. Equal for two
    /// inputs exactly when they lie in the same right coset.
    pub(crate) fn coset_canonical(&self, g: &Permutation) -> Permutation {
        let mut current = g.clone();
        for level in &self.levels {
            if level.orbit.len() == 1 {
                continue;
            }
            let best = level
                .orbit
                .iter()
                .copied()
                .min_by_key(|&x| current.apply(x))
                .expect("orbit is never empty");
            if best != level.orbit[0] {
                current = level.transversal[&best].0.then(&current);
            }
        }
        current
    }
}
