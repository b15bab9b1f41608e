//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails or overruns its time limit.

use std::collections::HashSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lagrange_core::io::parse_chain;
use lagrange_core::verify::{self, oracle, Bounds};
use lagrange_core::{
    stabilizer_descent, LagrangeDecomposition, Limits, PermGroup, Permutation, Transversal,
};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn load(name: &str) -> Result<LagrangeDecomposition, String> {
    let file = parse_chain(&fixture(name)).map_err(|e| format!("{name}: {e}"))?;
    let chain = file.to_chain().map_err(|e| format!("{name}: {e}"))?;
    LagrangeDecomposition::new(chain, &Limits::default()).map_err(|e| format!("{name}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(
    what: &str,
    found: T,
    expected: T,
) -> Result<(), String> {
    ensure(found == expected, || {
        format!("{what}: expected {expected:?}, found {found:?}")
    })
}

fn closure(g: &PermGroup) -> Vec<Permutation> {
    oracle::closure(g.generators(), g.degree(), 1_000_000).expect("small group")
}

fn attributes(
    name: &str,
    widths: &[usize],
    orders: &[u128],
) -> Result<LagrangeDecomposition, String> {
    let d = load(name)?;
    expect_eq("length", d.length(), widths.len())?;
    expect_eq("widths", d.widths(), widths.to_vec())?;
    expect_eq("component orders", d.component_orders(), orders.to_vec())?;
    Ok(d)
}

fn a4_chief_series() -> Check {
    attributes("a4_chief.chain", &[3, 4], &[3, 4])?;
    Ok("length 2, widths 3 4, component orders 3 4".into())
}

fn a4_composition_series() -> Check {
    let d = attributes("a4_composition.chain", &[3, 2, 2], &[3, 2, 2])?;
    let bounds = Bounds::default();
    let lower = verify::check_independence(&d, 1, 2, &bounds).map_err(|e| e.to_string())?;
    ensure(lower.passed(), || {
        format!("levels 2,3 should be independent: {lower:?}")
    })?;
    let upper = verify::check_independence(&d, 0, 1, &bounds).map_err(|e| e.to_string())?;
    ensure(upper.failed() && upper.counterexample().is_some(), || {
        format!("levels 1,2 should be dependent: {upper:?}")
    })?;
    Ok("widths 3 2 2; levels 2,3 independent; levels 1,2 dependent".into())
}

/// Raise/flatten round trip over every element, by explicit closure.
fn round_trip(name: &str) -> Result<usize, String> {
    let d = load(name)?;
    let elements = closure(d.top());
    let mut states = HashSet::new();
    for g in &elements {
        let s = d
            .raise_state(g)
            .map_err(|e| format!("{name}: raise {g}: {e}"))?;
        let back = d.flatten_state(&s).map_err(|e| e.to_string())?;
        expect_eq(&format!("{name}: flatten(raise({g}))"), &back, g)?;
        ensure(states.insert(s.clone()), || {
            format!("{name}: state ({s}) reached twice")
        })?;
    }
    let product = d.chain().report().index_product();
    expect_eq(
        &format!("{name}: state count"),
        states.len() as u128,
        product,
    )?;
    expect_eq(
        &format!("{name}: group order"),
        elements.len() as u128,
        product,
    )?;
    expect_eq(
        &format!("{name}: enumerated states"),
        d.states().count(),
        elements.len(),
    )?;
    Ok(elements.len())
}

fn bijection() -> Check {
    let mut parts = Vec::new();
    for name in [
        "s3.chain",
        "a4_chief.chain",
        "a4_composition.chain",
        "a4_trivial.chain",
        "d4.chain",
        "s4.chain",
    ] {
        let start = Instant::now();
        let n = round_trip(name)?;
        ensure(start.elapsed() < Duration::from_secs(1), || {
            format!("{name} took {:?}", start.elapsed())
        })?;
        parts.push(format!("{}={n}", name.trim_end_matches(".chain")));
    }
    Ok(format!("round trips {}", parts.join(" ")))
}

fn homomorphism() -> Check {
    let mut total = 0;
    for name in ["s4.chain", "a5.chain"] {
        let d = load(name)?;
        let elements = closure(d.top());
        for g in &elements {
            let s = d.raise_state(g).map_err(|e| e.to_string())?;
            for h in &elements {
                let lhs = d.act(&s, h).map_err(|e| e.to_string())?;
                let rhs = d.raise_state(&g.then(h)).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || {
                    format!("{name}: g = {g}, h = {h}: ({lhs}) vs ({rhs})")
                })?;
            }
        }
        total += elements.len() * elements.len();
    }
    expect_eq("pairs", total, 576 + 3600)?;
    Ok(format!("{total} pairs, 0 failures"))
}

fn core_factoring() -> Check {
    let mut levels = 0;
    for name in [
        "s3.chain",
        "a4_chief.chain",
        "a4_composition.chain",
        "a4_trivial.chain",
        "d4.chain",
        "s4.chain",
        "a5.chain",
    ] {
        let d = load(name)?;
        let groups = d.chain().groups();
        for (level, c) in verify::check_core_factoring(&d, &Bounds::default())
            .into_iter()
            .enumerate()
        {
            ensure(c.passed(), || format!("{name}: {c:?}"))?;
            let g = closure(&groups[level]);
            let h = closure(&groups[level + 1]);
            let core = oracle::core_by_conjugation(&g, &h);
            let image = d.components()[level].image_group().order();
            expect_eq(
                &format!("{name} level {}: image order x core order", level + 1),
                image * core.len() as u128,
                g.len() as u128,
            )?;
            levels += 1;
        }
    }
    Ok(format!("{levels} levels"))
}

fn transitive() -> Check {
    let cases = [
        ("A4", vec!["(1,2,3)", "(1,2)(3,4)"], 4),
        ("S3", vec!["(1,2,3)", "(1,2)"], 3),
    ];
    for (label, gens, n) in cases {
        let gens = gens
            .iter()
            .map(|c| lagrange_core::parse_cycles(c, n).unwrap())
            .collect();
        let g = PermGroup::from_generators(gens, n).unwrap();
        let points: Vec<usize> = (0..n).collect();
        let t = lagrange_core::cascade::decompose_transitive(&g, &points, 0, &Limits::default())
            .map_err(|e| e.to_string())?;
        expect_eq(
            &format!("{label} widths"),
            t.decomposition().widths(),
            vec![n],
        )?;
        let c = verify::check_transitive(&t, &Bounds::default());
        ensure(c.passed(), || format!("{label}: {c:?}"))?;
        let mut seen = HashSet::new();
        for s in t.decomposition().states() {
            let x = t.flatten_point(&s).map_err(|e| e.to_string())?;
            ensure(seen.insert(x), || {
                format!("{label}: point {} reached twice", x + 1)
            })?;
            for k in g.generators() {
                let moved = t.act(&s, k).map_err(|e| e.to_string())?;
                let y = t.flatten_point(&moved).map_err(|e| e.to_string())?;
                expect_eq(
                    &format!("{label}: generator {k} at point {}", x + 1),
                    y,
                    k.apply(x),
                )?;
            }
        }
        expect_eq(&format!("{label}: points covered"), seen.len(), n)?;
    }
    Ok("A4 on 4 points, S3 on 3 points".into())
}

fn pocket_cube() -> Check {
    let file = parse_chain(&fixture("pocket_cube_two_level.chain")).map_err(|e| e.to_string())?;
    let cube = file.groups[0].clone();
    let order = cube.order();
    expect_eq("order", order, 88_179_840)?;
    expect_eq(
        "8!·3^7",
        order,
        (1..=8u128).product::<u128>() * 3u128.pow(7),
    )?;

    let chain = stabilizer_descent(&cube, &[0, 3, 6, 9, 12, 15, 18]).map_err(|e| e.to_string())?;
    expect_eq(
        "descent widths",
        chain.widths().to_vec(),
        vec![24, 21, 18, 15, 12, 9, 6],
    )?;
    expect_eq("index product", chain.report().index_product(), order)?;
    let d = LagrangeDecomposition::new(chain, &Limits::default()).map_err(|e| e.to_string())?;
    let bounds = Bounds::default();
    let hom = verify::check_homomorphism(&d, &bounds);
    ensure(hom.passed(), || format!("{hom:?}"))?;
    expect_eq(
        "sampled pairs",
        hom.detail.starts_with("10000 sampled pairs"),
        true,
    )?;

    let step = load("pocket_cube_step.chain")?;
    expect_eq("step chain index product", step.state_count(), order)?;
    let two = LagrangeDecomposition::new(
        file.to_chain().map_err(|e| e.to_string())?,
        &Limits::default(),
    )
    .map_err(|e| e.to_string())?;
    expect_eq("two-level widths", two.widths(), vec![40320, 2187])?;
    expect_eq(
        "two-level component orders",
        two.component_orders(),
        vec![40320, 2187],
    )?;
    let positions = load("pocket_cube_positions.chain")?;
    expect_eq(
        "positions chain index product",
        positions.state_count(),
        order,
    )?;
    Ok(format!("order {order}; {}", hom.detail))
}

fn fault_injection() -> Check {
    let mut d = load("a4_chief.chain")?;
    let t = d.transversals()[0].clone();
    let mut reps = t.reps().to_vec();
    reps[2] = reps[1].clone();
    d.replace_transversal_unchecked(
        0,
        Transversal::from_reps_unchecked(t.supergroup(), t.subgroup(), reps),
    );
    let bij = verify::check_bijection(&d, &Bounds::default());
    ensure(bij.failed() && bij.counterexample().is_some(), || {
        format!("bijection should fail: {bij:?}")
    })?;

    let d = load("a4_chief.chain")?;
    let h = lagrange_core::parse_cycles("(1,2,3)", 4).unwrap();
    let mut table = d.materialize_dependencies(&h).map_err(|e| e.to_string())?;
    let wrong = lagrange_core::parse_cycles("(1,2)(3,4)", 4).unwrap();
    let old = table.entry(1, &[0]).unwrap().clone();
    ensure(old != wrong, || {
        "replacement equals the original entry".into()
    })?;
    table.set_entry(1, &[0], wrong).map_err(|e| e.to_string())?;
    let tab = verify::check_dependency_table(&d, &h, &table);
    ensure(tab.failed() && tab.counterexample().is_some(), || {
        format!("table check should fail: {tab:?}")
    })?;

    let file = parse_chain(&fixture("a4_corrupted.chain")).map_err(|e| e.to_string())?;
    let mut d = LagrangeDecomposition::new(file.to_chain().unwrap(), &Limits::default()).unwrap();
    file.apply_reps(&mut d, false).map_err(|e| e.to_string())?;
    let report = verify::verify_all(&d, &Bounds::default());
    ensure(report.failed() > 0, || "corrupted fixture passed".into())?;
    Ok(format!("{} / {}", bij.name, tab.name))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("A4 chief series", Duration::from_secs(1), a4_chief_series),
        (
            "A4 composition series and level independence",
            Duration::from_secs(1),
            a4_composition_series,
        ),
        (
            "raise/flatten bijection and index product",
            Duration::from_secs(6),
            bijection,
        ),
        (
            "homomorphism over S4 and A5",
            Duration::from_secs(5),
            homomorphism,
        ),
        ("core factoring", Duration::from_secs(5), core_factoring),
        ("transitive actions", Duration::from_secs(1), transitive),
        ("Pocket Cube", Duration::from_secs(60), pocket_cube),
        ("injected faults", Duration::from_secs(1), fault_injection),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if elapsed > *limit => ("FAIL", format!("took longer than {limit:?}")),
            Ok(detail) => ("PASS", detail),
            Err(msg) => ("FAIL", msg),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {}: {status} {name} ({:.1} ms): {detail}",
            i + 1,
            elapsed.as_secs_f64() * 1e3
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
