//! Acceptance run: one PASS/FAIL line per criterion. Each criterion is
//! checked against values computed here (formulas, brute-force counts,
//! hand-rolled graph searches) rather than only against the library's own
//! verdicts.

use std::process::{Command, ExitCode};
use std::time::Instant;

use finspace::construction::{add_basepoint, build_base, build_space, collapse_between, ConstructionSpec, GadgetMode};
use finspace::group::{
    generator_list_unchecked, groups_isomorphic, parse_builtin, validate_generating_set, FiniteGroup, DEFAULT_ISO_LIMIT,
};
use finspace::homotopy::{
    automorphism_group, core, enumerate_continuous_selfmaps, example_space_a, extension_isomorphism_check,
    homotopy_classes, AutOptions, AutomorphismGroup, MapLimits,
};
use finspace::iso::are_isomorphic;
use finspace::mccord::{induced_h1_action, low_homology, mat_mul, order_complex, CycleBasis, DEFAULT_MAX_SIMPLICES};
use finspace::poset::{PointLabel, PosetMap};
use finspace::FinitePoset;

const ZOO: &[(&str, &str, &[&str])] = &[
    ("C2", "cyclic:2", &["a"]),
    ("C3", "cyclic:3", &["a"]),
    ("C4", "cyclic:4", &["a"]),
    ("C5", "cyclic:5", &["a"]),
    ("Klein4", "klein4", &["a", "b"]),
    ("S3", "symmetric:3", &["a", "b"]),
    ("D4", "dihedral:4", &["a", "b"]),
    ("Q8", "quaternion8", &["i", "j"]),
];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(group: &str, gens: &[&str], mode: GadgetMode) -> ConstructionSpec {
    let g = parse_builtin(group).unwrap();
    let idx: Vec<usize> = gens.iter().map(|l| g.element_by_label(l).unwrap()).collect();
    ConstructionSpec::new(g.clone(), validate_generating_set(&g, &idx).unwrap(), mode, false)
}

fn zoo(mode: GadgetMode) -> impl Iterator<Item = (&'static str, ConstructionSpec)> {
    ZOO.iter().map(move |(name, g, gens)| (*name, spec(g, gens, mode)))
}

fn aut(x: &FinitePoset) -> Result<AutomorphismGroup, String> {
    automorphism_group(x, &AutOptions::default()).map_err(|e| e.to_string())
}

/// Sorted element orders from a Cayley table, by repeated multiplication.
fn order_profile(table: &[Vec<usize>], e: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..table.len())
        .map(|x| {
            let (mut y, mut k) = (x, 1);
            while y != e {
                y = table[y][x];
                k += 1;
            }
            k
        })
        .collect();
    out.sort_unstable();
    out
}

/// Connected components of the comparability graph by depth-first search.
fn components(p: &FinitePoset) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if !seen[y] && p.comparable(x, y) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// `E - V + c` of the undirected Hasse diagram.
fn hasse_cycle_rank(p: &FinitePoset) -> usize {
    p.hasse_edges().len() + components(p) - p.len()
}

fn realization() -> Outcome {
    let start = Instant::now();
    for (name, sp) in zoo(GadgetMode::None) {
        let x = build_base(&sp).map_err(|e| e.to_string())?;
        let a = aut(&x)?;
        ensure(a.order() == sp.n(), || format!("{name}: |Aut| = {} != {}", a.order(), sp.n()))?;
        let table = a.to_finite_group().map_err(|e| e.to_string())?;
        let iso = groups_isomorphic(&table, &sp.group, DEFAULT_ISO_LIMIT).map_err(|e| e.to_string())?;
        ensure(iso, || format!("{name}: composition table not isomorphic to G"))?;
        let profile = order_profile(&a.table, 0);
        let want = order_profile(sp.group.cayley(), sp.group.identity());
        ensure(profile == want, || format!("{name}: element orders {profile:?} vs {want:?}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s"))?;
    Ok(format!("8 groups, |Aut(X_G)| = |G| and isomorphic, {secs:.2}s"))
}

fn point_counts() -> Outcome {
    for (name, sp) in zoo(GadgetMode::SAndT(1)) {
        let (n, r) = (sp.n(), sp.r());
        let base = build_base(&sp).map_err(|e| e.to_string())?;
        let bar = build_space(&sp).map_err(|e| e.to_string())?;
        ensure(base.len() == n * (r + 2), || format!("{name}: |X_G| = {}", base.len()))?;
        ensure(bar.len() == n * (r + 2) + 10 * n * r, || format!("{name}: |X̄_G| = {}", bar.len()))?;
    }
    Ok("n(r+2) and n(r+2)+10nr for all 8 groups".into())
}

fn core_rigidity() -> Outcome {
    for (name, sp) in zoo(GadgetMode::SAndT(1)) {
        let bar = build_space(&sp).map_err(|e| e.to_string())?;
        let beats = bar.beat_points();
        ensure(beats.is_empty(), || format!("{name}: beat point {}", bar.label(beats[0].point)))?;
    }
    let sp = spec("cyclic:3", &["a"], GadgetMode::SAndT(1));
    let bar = build_space(&sp).map_err(|e| e.to_string())?;
    let base_aut = aut(&build_base(&sp).map_err(|e| e.to_string())?)?;
    let s_edges: Vec<(usize, usize)> = bar
        .hasse_edges()
        .iter()
        .copied()
        .filter(|&(a, b)| {
            matches!(bar.label(a), PointLabel::GadgetS { .. }) || matches!(bar.label(b), PointLabel::GadgetS { .. })
        })
        .collect();
    ensure(s_edges.len() == 15, || format!("{} S-gadget edges", s_edges.len()))?;
    let mut by_beat = 0;
    for &(a, b) in &s_edges {
        let broken = bar.without_hasse_edge(a, b).map_err(|e| e.to_string())?;
        if !broken.beat_points().is_empty() {
            by_beat += 1;
            continue;
        }
        let broken_aut = aut(&broken)?;
        let noticed = broken_aut.order() != 3 || !extension_isomorphism_check(&base_aut, &broken_aut).all_passed();
        ensure(noticed, || format!("deleting {} < {} went unnoticed", bar.label(a), bar.label(b)))?;
    }
    Ok(format!("no beat points in 8 decorated spaces; 15/15 S-edge deletions detected ({by_beat} by beat points)"))
}

/// Restriction of each automorphism of `full` to the base labels, computed
/// from labels alone.
fn restrictions(full: &FinitePoset, a: &AutomorphismGroup, base: &FinitePoset) -> Option<Vec<PosetMap>> {
    a.elements
        .iter()
        .map(|f| {
            let images: Option<Vec<usize>> = (0..base.len())
                .map(|bx| {
                    let fx = f.apply(full.index_of(base.label(bx))?);
                    base.index_of(full.label(fx))
                })
                .collect();
            images.map(PosetMap::new)
        })
        .collect()
}

fn extension() -> Outcome {
    for (name, g, gens) in [("C3", "cyclic:3", &["a"][..]), ("D4", "dihedral:4", &["a", "b"][..])] {
        let sp = spec(g, gens, GadgetMode::SAndT(1));
        let base = build_base(&sp).map_err(|e| e.to_string())?;
        let bar = build_space(&sp).map_err(|e| e.to_string())?;
        let (base_aut, bar_aut) = (aut(&base)?, aut(&bar)?);
        let report = extension_isomorphism_check(&base_aut, &bar_aut);
        ensure(report.all_passed(), || format!("{name}: {}", report.render(false).trim()))?;
        let mut rs =
            restrictions(&bar, &bar_aut, &base).ok_or_else(|| format!("{name}: restriction leaves the base"))?;
        ensure(rs.iter().all(|r| r.is_isomorphism(&base, &base)), || {
            format!("{name}: restriction not an automorphism")
        })?;
        rs.sort();
        rs.dedup();
        ensure(rs.len() == bar_aut.order() && rs.len() == base_aut.order(), || {
            format!("{name}: {} distinct restrictions, |Aut| {} and {}", rs.len(), bar_aut.order(), base_aut.order())
        })?;
    }
    Ok("restriction is a bijection for C3 (3) and D4 (8)".into())
}

fn pointed() -> Outcome {
    for (name, g, gens) in [("C3", "cyclic:3", &["a"][..]), ("D4", "dihedral:4", &["a", "b"][..])] {
        let sp = spec(g, gens, GadgetMode::SAndT(1));
        let x = add_basepoint(&build_space(&sp).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let star = x.index_of(&PointLabel::Star).ok_or("no star")?;
        let a = aut(&x)?;
        ensure(a.elements.iter().all(|f| f.apply(star) == star), || format!("{name}: * moved"))?;
        ensure(a.order() == sp.n(), || format!("{name}: |Aut| = {}", a.order()))?;
    }
    Ok("* fixed, |Aut(X̄*)| = 3 and 8".into())
}

fn homology() -> Outcome {
    for (name, sp) in zoo(GadgetMode::SAndT(1)) {
        let (n, r) = (sp.n(), sp.r());
        let start = Instant::now();
        let bar = build_space(&sp).map_err(|e| e.to_string())?;
        let (h0, h1) = low_homology(&bar).map_err(|e| e.to_string())?;
        let want = 3 * n * r - n + 1;
        ensure(h0.betti == 1 && h1.betti == want && h1.torsion.is_empty(), || {
            format!("{name}: b0={} b1={} torsion={:?}, want b1={want}", h0.betti, h1.betti, h1.torsion)
        })?;
        ensure(hasse_cycle_rank(&bar) == want, || format!("{name}: Hasse cycle rank {}", hasse_cycle_rank(&bar)))?;
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 60.0, || format!("{name}: {secs:.1}s"))?;
    }
    let c3 = low_homology(&build_space(&spec("cyclic:3", &["a"], GadgetMode::SAndT(1))).unwrap())
        .map_err(|e| e.to_string())?;
    let d4 = low_homology(&build_space(&spec("dihedral:4", &["a", "b"], GadgetMode::SAndT(1))).unwrap())
        .map_err(|e| e.to_string())?;
    let s =
        low_homology(&build_space(&spec("cyclic:3", &["a"], GadgetMode::SOnly)).unwrap()).map_err(|e| e.to_string())?;
    ensure((c3.1.betti, d4.1.betti, s.1.betti) == (7, 41, 4), || {
        format!("C3 {}, D4 {}, C3 sonly {}", c3.1.betti, d4.1.betti, s.1.betti)
    })?;
    Ok("b0 = 1, b1 = 3nr-n+1, no torsion for 8 groups; C3 7, D4 41, C3 sonly 4".into())
}

fn family() -> Outcome {
    let base = spec("cyclic:3", &["a"], GadgetMode::SAndT(1));
    let mut spaces = Vec::new();
    let mut betti = Vec::new();
    for n in 1..=3u32 {
        let x = build_space(&base.with_mode(GadgetMode::SAndT(n), false)).map_err(|e| e.to_string())?;
        ensure(x.beat_points().is_empty(), || format!("n={n}: beat point"))?;
        let a = aut(&x)?;
        ensure(a.order() == 3, || format!("n={n}: |Aut| = {}", a.order()))?;
        let (h0, h1) = low_homology(&x).map_err(|e| e.to_string())?;
        betti.push((h0.betti, h1.betti));
        let (src, tgt, f) = collapse_between(n, &base).map_err(|e| e.to_string())?;
        ensure(f.is_order_preserving(&src, &tgt), || format!("n={n}: collapse not order-preserving"))?;
        let mut hit = vec![false; tgt.len()];
        for x in 0..src.len() {
            hit[f.apply(x)] = true;
        }
        ensure(hit.iter().all(|&h| h), || format!("n={n}: collapse not onto"))?;
        spaces.push(x);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let iso = are_isomorphic(&spaces[i], &spaces[j]).map_err(|e| e.to_string())?;
            ensure(iso.is_none(), || format!("n={} and n={} isomorphic", i + 1, j + 1))?;
        }
    }
    ensure(betti.iter().all(|b| *b == betti[0]), || format!("Betti numbers vary: {betti:?}"))?;
    Ok(format!("n = 1,2,3 pairwise non-isomorphic cores with |Aut| = 3, (b0,b1) = {:?}", betti[0]))
}

fn brute_force_example() -> Outcome {
    let start = Instant::now();
    let a = example_space_a();
    let g = aut(&a)?;
    ensure(g.order() == 2, || format!("|Aut(A)| = {}", g.order()))?;
    let c = core(&a);
    ensure(c.core.len() == 4, || format!("core has {} points", c.core.len()))?;
    let maps = enumerate_continuous_selfmaps(&a, MapLimits::default()).map_err(|e| e.to_string())?;
    // Brute-force count of order-preserving self-maps over all 5^5 functions.
    let n = a.len();
    let mut count = 0;
    for code in 0..n.pow(n as u32) {
        let f: Vec<usize> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
        if (0..n).all(|x| (0..n).all(|y| !a.leq(x, y) || a.leq(f[x], f[y]))) {
            count += 1;
        }
    }
    ensure(maps.len() == count, || format!("{} maps enumerated, {count} by brute force", maps.len()))?;
    let h = homotopy_classes(&a, &maps).map_err(|e| e.to_string())?;
    let e = &h.group;
    ensure(e.order() == 4, || format!("E(A) has order {}", e.order()))?;
    let profile = order_profile(e.cayley(), e.identity());
    ensure(profile == [1, 2, 2, 2], || format!("element orders {profile:?}"))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("took {secs:.2}s"))?;
    Ok(format!("|Aut(A)| = 2, core 4 points, {count} maps, E(A) Klein four, {secs:.3}s"))
}

fn connectivity() -> Outcome {
    for (name, sp) in zoo(GadgetMode::None) {
        let x = build_base(&sp).map_err(|e| e.to_string())?;
        ensure(components(&x) == 1, || format!("{name}: {} components", components(&x)))?;
        ensure(x.is_path_connected(), || format!("{name}: library disagrees"))?;
    }
    let g: FiniteGroup = parse_builtin("cyclic:4").unwrap();
    let a2 = g.element_by_label("a^2").unwrap();
    let gens = generator_list_unchecked(&g, &[a2]).map_err(|e| e.to_string())?;
    let x = build_base(&ConstructionSpec::new(g.clone(), gens, GadgetMode::None, false)).map_err(|e| e.to_string())?;
    // Index of <a^2>: count its elements by powering.
    let (mut y, mut sub) = (a2, 1);
    while y != g.identity() {
        y = g.mul(y, a2);
        sub += 1;
    }
    let index = g.order() / sub;
    ensure(components(&x) == index && index == 2, || format!("{} components, index {index}", components(&x)))?;
    ensure(x.components().len() == 2, || "library component count differs".into())?;
    Ok("8 base spaces connected; C4 with [a^2] has 2 = [G:<a^2>] components".into())
}

fn h1_action() -> Outcome {
    let mut summary = Vec::new();
    for (name, g, gens) in [("C3", "cyclic:3", &["a"][..]), ("D4", "dihedral:4", &["a", "b"][..])] {
        let sp = spec(g, gens, GadgetMode::SAndT(1));
        let x = build_space(&sp).map_err(|e| e.to_string())?;
        let a = aut(&x)?;
        let k = order_complex(&x, 2, DEFAULT_MAX_SIMPLICES).map_err(|e| e.to_string())?;
        let basis = CycleBasis::from_hasse(&x, &k).map_err(|e| e.to_string())?;
        let mats: Vec<Vec<Vec<i64>>> = a
            .elements
            .iter()
            .map(|f| induced_h1_action(&x, f, &basis))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(mats.len() == sp.n(), || format!("{name}: {} matrices", mats.len()))?;
        for i in 0..mats.len() {
            for j in 0..mats.len() {
                ensure(i == j || mats[i] != mats[j], || format!("{name}: matrices {i} and {j} coincide"))?;
                // The composite automorphism, located by composing maps here.
                let fg = a.elements[i].compose(&a.elements[j]);
                let k = a.elements.iter().position(|h| *h == fg).ok_or("not closed")?;
                ensure(mat_mul(&mats[i], &mats[j]) == mats[k], || format!("{name}: M({i})M({j}) != M({i}{j})"))?;
            }
        }
        summary.push(format!("{name} {} distinct {}x{}", mats.len(), basis.len(), basis.len()));
    }
    Ok(format!("{}, multiplicative", summary.join(", ")))
}

fn strip_timing(report: &str) -> String {
    report.lines().map(|l| l.rsplit_once(" time=").map_or(l, |(head, _)| head)).collect::<Vec<_>>().join("\n")
}

fn determinism() -> Outcome {
    let run = |args: &[&str]| -> Result<String, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_finspace")).args(args).output().map_err(|e| e.to_string())?;
        String::from_utf8(out.stdout).map_err(|e| e.to_string())
    };
    for group in ["cyclic:3", "dihedral:4"] {
        let args = ["verify-all", "--group", group, "--timing"];
        let (a, b) = (run(&args)?, run(&args)?);
        ensure(!a.is_empty() && a.lines().all(|l| l.contains(" time=")), || format!("{group}: unexpected report"))?;
        ensure(strip_timing(&a) == strip_timing(&b), || format!("{group}: reports differ"))?;
        let json = ["verify-all", "--group", group, "--json"];
        ensure(run(&json)? == run(&json)?, || format!("{group}: JSON reports differ"))?;
    }
    Ok("verify-all text and JSON reports identical across runs for C3 and D4".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("realization", realization),
        ("point-count formulas", point_counts),
        ("core rigidity", core_rigidity),
        ("extension isomorphism", extension),
        ("pointed rigidity", pointed),
        ("homotopy-type prediction", homology),
        ("fence family", family),
        ("brute-force oracle", brute_force_example),
        ("path-connectivity", connectivity),
        ("H1-action injectivity", h1_action),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failures, failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
