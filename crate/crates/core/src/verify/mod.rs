//! Checks of the decomposition's algebraic claims against brute force.
//!
//! Ground truth comes from [`oracle`], which works on explicit element sets.
//! Every failing check carries a concrete counterexample. Checks that would
//! exceed the configured [`Bounds`] are reported as skipped, never silently
//! dropped.

pub mod oracle;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cascade::{
    CascadedState, DependencyTable, LagrangeDecomposition, TransitiveDecomposition,
};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Seed used for sampled checks unless another is configured.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group order enumerated element by element.
    pub exhaustive_order: u128,
    /// Largest number of element pairs swept exhaustively.
    pub exhaustive_pairs: u128,
    /// Sample count when a pair sweep is too large.
    pub samples: usize,
    pub seed: u64,
    /// Largest dependency-table prefix count.
    pub max_table: u128,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            exhaustive_order: 5000,
            exhaustive_pairs: 200_000,
            samples: 10_000,
            seed: DEFAULT_SEED,
            max_table: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail { counterexample: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub instance: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub detail: String,
}

impl CheckResult {
    fn new(
        name: &str,
        instance: impl Into<String>,
        outcome: Outcome,
        detail: impl Into<String>,
    ) -> Self {
        CheckResult {
            name: name.into(),
            instance: instance.into(),
            outcome,
            detail: detail.into(),
        }
    }

    fn pass(name: &str, instance: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, instance, Outcome::Pass, detail)
    }

    fn fail(name: &str, instance: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Self::new(
            name,
            instance,
            Outcome::Fail {
                counterexample: counterexample.into(),
            },
            "",
        )
    }

    fn skipped(name: &str, instance: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::new(
            name,
            instance,
            Outcome::Skipped {
                reason: reason.into(),
            },
            "",
        )
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail { .. })
    }

    pub fn counterexample(&self) -> Option<&str> {
        match &self.outcome {
            Outcome::Fail { counterexample } => Some(counterexample),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.failed()).count()
    }

    pub fn skipped(&self) -> usize {
        self.checks.len() - self.passed() - self.failed()
    }

    /// No check failed (skipped checks do not count against).
    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn find(&self, name: &str) -> impl Iterator<Item = &CheckResult> + '_ {
        let name = name.to_string();
        self.checks.iter().filter(move |c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = match &c.outcome {
                Outcome::Pass => writeln!(out, "PASS {} [{}] {}", c.name, c.instance, c.detail),
                Outcome::Fail { counterexample } => {
                    writeln!(
                        out,
                        "FAIL {} [{}] counterexample: {}",
                        c.name, c.instance, counterexample
                    )
                }
                Outcome::Skipped { reason } => {
                    writeln!(out, "SKIP {} [{}] {}", c.name, c.instance, reason)
                }
            };
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.passed(),
            self.failed(),
            self.skipped()
        );
        out
    }

    /// One JSON object per check.
    pub fn to_json_lines(&self) -> String {
        self.checks
            .iter()
            .map(|c| serde_json::to_string(c).expect("reports serialize") + "\n")
            .collect()
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn describe(d: &LagrangeDecomposition) -> String {
    format!("widths {}", join(d.widths()))
}

/// Explicit elements of `g`, unless its order exceeds the bound.
fn elements(g: &PermGroup, bounds: &Bounds) -> Option<Vec<Permutation>> {
    if g.order() > bounds.exhaustive_order {
        return None;
    }
    oracle::closure(g.generators(), g.degree(), bounds.exhaustive_order as usize)
}

fn rng(bounds: &Bounds) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(bounds.seed)
}

/// Engine orders of every chain member against the size of its closure.
pub fn check_group_orders(d: &LagrangeDecomposition, bounds: &Bounds) -> CheckResult {
    const NAME: &str = "group-order";
    let mut checked = 0;
    for (i, g) in d.chain().groups().iter().enumerate() {
        let Some(elems) = elements(g, bounds) else {
            continue;
        };
        if elems.len() as u128 != g.order() {
            return CheckResult::fail(
                NAME,
                describe(d),
                format!(
                    "group {} has order {} but closure has {} elements",
                    i + 1,
                    g.order(),
                    elems.len()
                ),
            );
        }
        checked += 1;
    }
    if checked == 0 {
        return CheckResult::skipped(
            NAME,
            describe(d),
            "every group exceeds the exhaustive bound",
        );
    }
    CheckResult::pass(NAME, describe(d), format!("{checked} groups"))
}

/// Raising is injective (on cosets of the bottom group), flattening inverts
/// it, and the number of states equals the product of the widths.
pub fn check_bijection(d: &LagrangeDecomposition, bounds: &Bounds) -> CheckResult {
    const NAME: &str = "bijection";
    let instance = describe(d);
    let Some(elems) = elements(d.top(), bounds) else {
        return CheckResult::skipped(
            NAME,
            instance,
            format!(
                "order {} exceeds the exhaustive bound {}",
                d.top().order(),
                bounds.exhaustive_order
            ),
        );
    };
    let bottom = d.chain().bottom();
    let Some(bottom) = oracle::closure(bottom.generators(), bottom.degree(), elems.len()) else {
        return CheckResult::fail(NAME, instance, "bottom group is larger than the top group");
    };
    let bottom: HashSet<Permutation> = bottom.into_iter().collect();
    let same_coset = |a: &Permutation, b: &Permutation| bottom.contains(&a.then(&b.inverse()));
    let mut by_state: HashMap<CascadedState, &Permutation> = HashMap::new();
    for g in &elems {
        let s = match d.raise_state(g) {
            Ok(s) => s,
            Err(e) => return CheckResult::fail(NAME, instance, format!("raising {g} failed: {e}")),
        };
        if let Some(&g0) = by_state.get(&s) {
            if !same_coset(g, g0) {
                return CheckResult::fail(
                    NAME,
                    instance,
                    format!("{g0} and {g} both raise to state ({s})"),
                );
            }
            continue;
        }
        let f = match d.flatten_state(&s) {
            Ok(f) => f,
            Err(e) => {
                return CheckResult::fail(NAME, instance, format!("flattening ({s}) failed: {e}"))
            }
        };
        if !same_coset(g, &f) {
            return CheckResult::fail(
                NAME,
                instance,
                format!("{g} raises to ({s}) which flattens to {f}"),
            );
        }
        by_state.insert(s, g);
    }
    let product = d.chain().report().index_product();
    let expected = elems.len() / bottom.len();
    if by_state.len() as u128 != product || by_state.len() != expected || d.state_count() != product
    {
        return CheckResult::fail(
            NAME,
            instance,
            format!(
                "{} states reached, index product {}, |G1|/|Gn| = {}",
                by_state.len(),
                product,
                expected
            ),
        );
    }
    CheckResult::pass(
        NAME,
        instance,
        format!("{} states, index product {}", by_state.len(), product),
    )
}

fn homomorphism_pair(
    d: &LagrangeDecomposition,
    g: &Permutation,
    h: &Permutation,
) -> Option<String> {
    let lhs = d.raise_state(g).and_then(|s| d.act(&s, h));
    let rhs = d.raise_state(&g.then(h));
    match (lhs, rhs) {
        (Ok(a), Ok(b)) if a == b => None,
        (Ok(a), Ok(b)) => Some(format!(
            "g = {g}, h = {h}: acting gives ({a}) but raising g·h gives ({b})"
        )),
        (Err(e), _) | (_, Err(e)) => Some(format!("g = {g}, h = {h}: {e}")),
    }
}

/// `act(raise(g), h) = raise(g·h)` over all pairs, or sampled pairs when
/// the sweep is too large.
pub fn check_homomorphism(d: &LagrangeDecomposition, bounds: &Bounds) -> CheckResult {
    const NAME: &str = "homomorphism";
    let instance = describe(d);
    let order = d.top().order();
    let exhaustive = order
        .checked_mul(order)
        .is_some_and(|pairs| pairs <= bounds.exhaustive_pairs);
    if exhaustive {
        if let Some(elems) = elements(d.top(), bounds) {
            for g in &elems {
                for h in &elems {
                    if let Some(ce) = homomorphism_pair(d, g, h) {
                        return CheckResult::fail(NAME, instance, ce);
                    }
                }
            }
            return CheckResult::pass(
                NAME,
                instance,
                format!("all {} pairs", elems.len() * elems.len()),
            );
        }
    }
    let mut rng = rng(bounds);
    for _ in 0..bounds.samples {
        let g = d.top().random_element(&mut rng);
        let h = d.top().random_element(&mut rng);
        if let Some(ce) = homomorphism_pair(d, &g, &h) {
            return CheckResult::fail(NAME, instance, ce);
        }
    }
    CheckResult::pass(
        NAME,
        instance,
        format!("{} sampled pairs, seed {}", bounds.samples, bounds.seed),
    )
}

/// Per level: the component order is `|G_i| / |core|`, and two elements act
/// alike on the cosets exactly when they lie in the same coset of the core.
pub fn check_core_factoring(d: &LagrangeDecomposition, bounds: &Bounds) -> Vec<CheckResult> {
    const NAME: &str = "core-factoring";
    let groups = d.chain().groups();
    (0..d.length())
        .map(|level| {
            let instance = format!("level {}", level + 1);
            let (gi, hi) = (&groups[level], &groups[level + 1]);
            let cost = gi.order().saturating_mul(hi.order());
            if gi.order() > bounds.exhaustive_order || cost > bounds.exhaustive_pairs {
                return CheckResult::skipped(
                    NAME,
                    instance,
                    format!("orders {} and {} exceed the exhaustive bounds", gi.order(), hi.order()),
                );
            }
            let g = elements(gi, bounds).expect("order checked");
            let h = elements(hi, bounds).expect("order checked");
            let core = oracle::core_by_conjugation(&g, &h);
            let component = &d.components()[level];
            let expected = (g.len() / core.len()) as u128;
            if component.order() != expected || component.image_group().order() != expected {
                return CheckResult::fail(
                    NAME,
                    instance,
                    format!(
                        "component order {} (image group {}) but |G_i|/|core| = {}/{}",
                        component.order(),
                        component.image_group().order(),
                        g.len(),
                        core.len()
                    ),
                );
            }
            if component.core().order() != core.len() as u128 {
                return CheckResult::fail(
                    NAME,
                    instance,
                    format!("engine core has order {}, oracle core {}", component.core().order(), core.len()),
                );
            }
            let t = &d.transversals()[level];
            let mut by_image: HashMap<Permutation, (&Permutation, Permutation)> = HashMap::new();
            let mut by_core_coset: HashMap<Permutation, (&Permutation, Permutation)> = HashMap::new();
            for x in &g {
                let image = match t.coset_permutation(x) {
                    Ok(p) => p,
                    Err(e) => return CheckResult::fail(NAME, instance, format!("action of {x}: {e}")),
                };
                let key = oracle::coset_key(&core, x);
                if let Some((x0, k0)) = by_image.get(&image) {
                    if *k0 != key {
                        return CheckResult::fail(
                            NAME,
                            instance,
                            format!("{x0} and {x} act alike on cosets but lie in different cosets of the core"),
                        );
                    }
                }
                if let Some((x0, i0)) = by_core_coset.get(&key) {
                    if *i0 != image {
                        return CheckResult::fail(
                            NAME,
                            instance,
                            format!("{x0} and {x} differ by a core element but act differently on cosets"),
                        );
                    }
                }
                by_image.insert(image.clone(), (x, key.clone()));
                by_core_coset.insert(key, (x, image));
            }
            CheckResult::pass(
                NAME,
                instance,
                format!("{} = {} / {}", expected, g.len(), core.len()),
            )
        })
        .collect()
}

/// Every located element and every component element at level `i` lies in
/// `G_i`.
pub fn check_containment(d: &LagrangeDecomposition, bounds: &Bounds) -> CheckResult {
    const NAME: &str = "containment";
    let instance = describe(d);
    let groups = d.chain().groups();
    let (pairs, mode): (Vec<(Permutation, Permutation)>, String) = match elements(d.top(), bounds) {
        Some(elems) => {
            let n = elems.len();
            let pairs = (0..n)
                .map(|i| (elems[i].clone(), elems[(i + 1) % n].clone()))
                .collect();
            (pairs, format!("all {n} elements"))
        }
        None => {
            let mut rng = rng(bounds);
            let pairs = (0..bounds.samples)
                .map(|_| {
                    (
                        d.top().random_element(&mut rng),
                        d.top().random_element(&mut rng),
                    )
                })
                .collect();
            (
                pairs,
                format!("{} sampled elements, seed {}", bounds.samples, bounds.seed),
            )
        }
    };
    for (g, k) in &pairs {
        let located = match d.locate(g) {
            Ok(l) => l,
            Err(e) => return CheckResult::fail(NAME, instance, format!("locating {g}: {e}")),
        };
        for (level, gi) in located.iter().enumerate() {
            if !groups[level].contains(gi).unwrap_or(false) {
                return CheckResult::fail(
                    NAME,
                    instance,
                    format!("located element {gi} of {g} is not in group {}", level + 1),
                );
            }
        }
        let s = match d.raise_state(k) {
            Ok(s) => s,
            Err(e) => return CheckResult::fail(NAME, instance, format!("raising {k}: {e}")),
        };
        let hs = match d.component_elements(g, &s) {
            Ok(hs) => hs,
            Err(e) => {
                return CheckResult::fail(
                    NAME,
                    instance,
                    format!("components of {g} at ({s}): {e}"),
                )
            }
        };
        for (level, hi) in hs.iter().enumerate() {
            if !groups[level].contains(hi).unwrap_or(false) {
                return CheckResult::fail(
                    NAME,
                    instance,
                    format!(
                        "component {hi} of {g} at ({s}) is not in group {}",
                        level + 1
                    ),
                );
            }
        }
    }
    CheckResult::pass(NAME, instance, mode)
}

/// Whether the `lower` level's dependency function ignores the coordinate
/// at `upper` (0-based levels). Passes when independent; fails with a
/// witnessing element and prefix pair when dependent. A level never
/// depends on itself or on levels below it.
pub fn check_independence(
    d: &LagrangeDecomposition,
    upper: usize,
    lower: usize,
    bounds: &Bounds,
) -> Result<CheckResult> {
    const NAME: &str = "independence";
    for level in [upper, lower] {
        if level >= d.length() {
            return Err(Error::LevelOutOfRange {
                level,
                length: d.length(),
            });
        }
    }
    let instance = format!("levels {} and {}", upper + 1, lower + 1);
    if upper >= lower {
        return Ok(CheckResult::pass(
            NAME,
            instance,
            format!(
                "independent: level {} does not precede level {}",
                upper + 1,
                lower + 1
            ),
        ));
    }
    let prefixes: u128 = d.widths()[..lower].iter().map(|&w| w as u128).product();
    if prefixes > bounds.max_table {
        return Ok(CheckResult::skipped(
            NAME,
            instance,
            format!(
                "{prefixes} prefixes exceed the table bound {}",
                bounds.max_table
            ),
        ));
    }
    let Some(elems) = elements(d.top(), bounds) else {
        return Ok(CheckResult::skipped(
            NAME,
            instance,
            format!(
                "order {} exceeds the exhaustive bound {}",
                d.top().order(),
                bounds.exhaustive_order
            ),
        ));
    };
    let width = d.widths()[upper];
    for g in &elems {
        let table = d.materialize_dependencies(g)?;
        for (prefix, image) in table.level_entries(lower) {
            for v in prefix[upper] + 1..width {
                let mut other = prefix.clone();
                other[upper] = v;
                let other_image = table.entry(lower, &other)?;
                if other_image != image {
                    return Ok(CheckResult::fail(
                        NAME,
                        instance,
                        format!(
                            "dependent: for {g} the level {} entry is {image} at prefix ({}) but {other_image} at prefix ({})",
                            lower + 1,
                            join(&prefix),
                            join(&other)
                        ),
                    ));
                }
            }
        }
    }
    Ok(CheckResult::pass(
        NAME,
        instance,
        format!("independent over all {} elements", elems.len()),
    ))
}

/// The state-to-point map is a bijection onto the orbit and commutes with
/// every generator.
pub fn check_transitive(t: &TransitiveDecomposition, bounds: &Bounds) -> CheckResult {
    const NAME: &str = "transitive";
    let d = t.decomposition();
    let instance = format!("{} points, base {}", t.points().len(), t.base() + 1);
    let gens = d.top().generators();
    let cost = (t.points().len() as u128) * (gens.len().max(1) as u128);
    if cost > bounds.exhaustive_pairs || d.state_count() > bounds.exhaustive_pairs {
        return CheckResult::skipped(NAME, instance, "point set exceeds the exhaustive bound");
    }
    let members: HashSet<usize> = t.points().iter().copied().collect();
    let mut seen: HashMap<usize, CascadedState> = HashMap::new();
    for s in d.states() {
        let x = match t.flatten_point(&s) {
            Ok(x) => x,
            Err(e) => return CheckResult::fail(NAME, instance, format!("flattening ({s}): {e}")),
        };
        if !members.contains(&x) {
            return CheckResult::fail(
                NAME,
                instance,
                format!("state ({s}) flattens to point {} outside the orbit", x + 1),
            );
        }
        if let Some(s0) = seen.get(&x) {
            return CheckResult::fail(
                NAME,
                instance,
                format!("states ({s0}) and ({s}) both flatten to point {}", x + 1),
            );
        }
        seen.insert(x, s);
    }
    if seen.len() != members.len() {
        return CheckResult::fail(
            NAME,
            instance,
            format!("{} states for {} points", seen.len(), members.len()),
        );
    }
    for &x in t.points() {
        let s = match t.raise_point(x) {
            Ok(s) => s,
            Err(e) => {
                return CheckResult::fail(NAME, instance, format!("raising point {}: {e}", x + 1))
            }
        };
        if seen.get(&x) != Some(&s) {
            return CheckResult::fail(NAME, instance, format!("point {} raises to ({s})", x + 1));
        }
        for k in gens {
            let moved = t.act(&s, k).map_err(|e| e.to_string());
            let expected = t.raise_point(k.apply(x)).map_err(|e| e.to_string());
            if moved != expected {
                return CheckResult::fail(
                    NAME,
                    instance,
                    format!(
                        "generator {k} at point {}: coordinates and points disagree",
                        x + 1
                    ),
                );
            }
        }
    }
    CheckResult::pass(
        NAME,
        instance,
        format!("{} points, {} generators", members.len(), gens.len()),
    )
}

/// Every stored table entry equals the component image computed directly.
pub fn check_dependency_table(
    d: &LagrangeDecomposition,
    h: &Permutation,
    table: &DependencyTable,
) -> CheckResult {
    const NAME: &str = "dependency-table";
    let instance = format!("element {h}");
    if table.widths() != d.widths() {
        return CheckResult::fail(
            NAME,
            instance,
            "table shape does not match the decomposition",
        );
    }
    let mut entries = 0usize;
    for level in 0..table.length() {
        for (prefix, stored) in table.level_entries(level) {
            let mut coords = prefix.clone();
            coords.resize(d.length(), 0);
            let computed = d
                .component_elements(h, &CascadedState::new(coords))
                .and_then(|hs| d.transversals()[level].coset_permutation(&hs[level]));
            match computed {
                Ok(img) if &img == stored => entries += 1,
                Ok(img) => {
                    return CheckResult::fail(
                        NAME,
                        instance,
                        format!(
                        "level {} prefix ({}): table has {stored}, direct evaluation gives {img}",
                        level + 1,
                        join(&prefix)
                    ),
                    )
                }
                Err(e) => {
                    return CheckResult::fail(
                        NAME,
                        instance,
                        format!("level {} prefix ({}): {e}", level + 1, join(&prefix)),
                    )
                }
            }
        }
    }
    CheckResult::pass(NAME, instance, format!("{entries} entries"))
}

/// Tables of the top group's generators, checked entry by entry.
fn check_generator_tables(d: &LagrangeDecomposition, bounds: &Bounds) -> CheckResult {
    const NAME: &str = "dependency-table";
    let prefixes: u128 = d
        .widths()
        .iter()
        .take(d.length().saturating_sub(1))
        .map(|&w| w as u128)
        .product();
    let total = prefixes.saturating_mul(d.top().generators().len() as u128);
    if prefixes > bounds.max_table || total > bounds.exhaustive_pairs {
        return CheckResult::skipped(
            NAME,
            "generators",
            format!("{prefixes} prefixes per table exceed the table bounds"),
        );
    }
    let mut entries = 0;
    for g in d.top().generators() {
        let table = match d.materialize_dependencies(g) {
            Ok(t) => t,
            Err(e) => {
                return CheckResult::fail(NAME, "generators", format!("materializing {g}: {e}"))
            }
        };
        let c = check_dependency_table(d, g, &table);
        if !c.passed() {
            return c;
        }
        entries += (0..table.length())
            .map(|l| table.level_entries(l).count())
            .sum::<usize>();
    }
    CheckResult::pass(
        NAME,
        "generators",
        format!("{} tables, {entries} entries", d.top().generators().len()),
    )
}

/// Runs every check that applies to a decomposition.
pub fn verify_all(d: &LagrangeDecomposition, bounds: &Bounds) -> VerificationReport {
    let mut report = VerificationReport::default();
    report.push(check_group_orders(d, bounds));
    report.push(check_bijection(d, bounds));
    report.push(check_homomorphism(d, bounds));
    for c in check_core_factoring(d, bounds) {
        report.push(c);
    }
    report.push(check_containment(d, bounds));
    report.push(check_generator_tables(d, bounds));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::SubgroupChain;
    use crate::coset::Transversal;
    use crate::perm::parse_cycles;
    use crate::Limits;

    fn group(degree: usize, cycles: &[&str]) -> PermGroup {
        let gens = cycles
            .iter()
            .map(|c| parse_cycles(c, degree).unwrap())
            .collect();
        PermGroup::from_generators(gens, degree).unwrap()
    }

    fn decompose(groups: Vec<PermGroup>) -> LagrangeDecomposition {
        let chain = SubgroupChain::new(groups, false).unwrap();
        LagrangeDecomposition::new(chain, &Limits::default()).unwrap()
    }

    fn a4() -> PermGroup {
        group(4, &["(1,2,3)", "(1,2)(3,4)"])
    }

    fn v4() -> PermGroup {
        group(4, &["(1,2)(3,4)", "(1,3)(2,4)"])
    }

    #[test]
    fn a4_chief_series_passes_everything() {
        let d = decompose(vec![a4(), v4(), group(4, &[])]);
        let report = verify_all(&d, &Bounds::default());
        assert!(report.all_passed(), "{}", report.to_text());
        assert_eq!(report.skipped(), 0);
        let bij = report.find("bijection").next().unwrap();
        assert_eq!(bij.detail, "12 states, index product 12");
        let hom = report.find("homomorphism").next().unwrap();
        assert_eq!(hom.detail, "all 144 pairs");
    }

    #[test]
    fn stabilizer_terminated_chain_passes() {
        let s4 = group(4, &["(1,2,3,4)", "(1,2)"]);
        let d = decompose(vec![s4.clone(), s4.pointwise_stabilizer(&[0]).unwrap()]);
        let report = verify_all(&d, &Bounds::default());
        assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn core_factoring_examples() {
        let d = decompose(vec![a4(), v4(), group(4, &[])]);
        let checks = check_core_factoring(&d, &Bounds::default());
        assert!(checks.iter().all(CheckResult::passed));
        assert_eq!(checks[0].detail, "3 = 12 / 4");
        let s3 = group(3, &["(1,2,3)", "(1,2)"]);
        let d = decompose(vec![s3, group(3, &["(1,2)"])]);
        let checks = check_core_factoring(&d, &Bounds::default());
        assert_eq!(checks[0].detail, "6 = 6 / 1");
    }

    #[test]
    fn sampling_is_deterministic() {
        let a5 = group(5, &["(1,2,3,4,5)", "(1,2,3)"]);
        let d = decompose(vec![
            a5.clone(),
            a5.pointwise_stabilizer(&[0]).unwrap(),
            group(5, &[]),
        ]);
        let bounds = Bounds {
            exhaustive_pairs: 10,
            samples: 200,
            ..Bounds::default()
        };
        let a = check_homomorphism(&d, &bounds);
        assert!(a.passed());
        assert!(a.detail.contains("200 sampled pairs"));
        assert_eq!(a, check_homomorphism(&d, &bounds));
    }

    #[test]
    fn bounds_produce_skips() {
        let d = decompose(vec![a4(), v4(), group(4, &[])]);
        let bounds = Bounds {
            exhaustive_order: 5,
            ..Bounds::default()
        };
        assert!(matches!(
            check_bijection(&d, &bounds).outcome,
            Outcome::Skipped { .. }
        ));
        let tight = Bounds {
            max_table: 1,
            ..Bounds::default()
        };
        let c = check_independence(&d, 0, 1, &tight).unwrap();
        assert!(matches!(c.outcome, Outcome::Skipped { .. }));
    }

    #[test]
    fn independence() {
        let d = decompose(vec![a4(), v4(), group(4, &["(1,2)(3,4)"]), group(4, &[])]);
        let b = Bounds::default();
        assert!(check_independence(&d, 1, 2, &b).unwrap().passed());
        let dep = check_independence(&d, 0, 1, &b).unwrap();
        assert!(dep.failed());
        assert!(dep.counterexample().unwrap().starts_with("dependent"));
        assert!(check_independence(&d, 2, 1, &b).unwrap().passed());
        assert!(check_independence(&d, 0, 3, &b).is_err());
        let flat = decompose(vec![a4(), group(4, &[])]);
        assert!(check_independence(&flat, 0, 0, &b).unwrap().passed());
    }

    #[test]
    fn corrupted_transversal_is_caught() {
        let mut d = decompose(vec![a4(), v4(), group(4, &[])]);
        let t = d.transversals()[0].clone();
        let mut reps = t.reps().to_vec();
        reps[2] = reps[1].clone();
        d.replace_transversal_unchecked(
            0,
            Transversal::from_reps_unchecked(t.supergroup(), t.subgroup(), reps),
        );
        let report = verify_all(&d, &Bounds::default());
        let bij = report.find("bijection").next().unwrap();
        assert!(bij.failed());
        assert!(bij.counterexample().is_some());
        assert!(report.find("core-factoring").any(CheckResult::failed));
    }

    #[test]
    fn corrupted_table_is_caught() {
        let d = decompose(vec![a4(), v4(), group(4, &[])]);
        let h = parse_cycles("(1,2,3)", 4).unwrap();
        let mut table = d.materialize_dependencies(&h).unwrap();
        assert!(check_dependency_table(&d, &h, &table).passed());
        let wrong = parse_cycles("(1,2)", 4).unwrap();
        table.set_entry(1, &[2], wrong).unwrap();
        let c = check_dependency_table(&d, &h, &table);
        assert!(c.failed());
        assert!(
            c.counterexample().unwrap().contains("prefix (2)"),
            "{:?}",
            c
        );
    }

    #[test]
    fn transitive_checks() {
        let t = crate::cascade::decompose_transitive(&a4(), &[0, 1, 2, 3], 0, &Limits::default())
            .unwrap();
        assert!(check_transitive(&t, &Bounds::default()).passed());
    }

    #[test]
    fn report_formats() {
        let d = decompose(vec![group(3, &["(1,2,3)", "(1,2)"]), group(3, &[])]);
        let report = verify_all(&d, &Bounds::default());
        let text = report.to_text();
        assert!(text
            .lines()
            .next()
            .unwrap()
            .starts_with("PASS group-order [widths 6]"));
        assert!(text.ends_with("6 passed, 0 failed, 0 skipped\n"), "{text}");
        let json = report.to_json_lines();
        assert_eq!(json.lines().count(), report.checks.len());
        let first: serde_json::Value = serde_json::from_str(json.lines().next().unwrap()).unwrap();
        assert_eq!(first["status"], "pass");
        assert_eq!(first["name"], "group-order");
    }
}
