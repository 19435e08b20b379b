//! The `verify-all` harness: a fixed registry of checks run in order against
//! one group, generator list and gadget mode.
//!
//! Checks share lazily built spaces and automorphism groups. A construction
//! or search error turns the check that needed it into a failure with the
//! error as witness; it never aborts the run.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::time::Instant;

use finspace::construction::{build_base, build_space, collapse_between, translation, ConstructionSpec, GadgetMode};
use finspace::group::{groups_isomorphic, validate_generating_set, FiniteGroup, DEFAULT_ISO_LIMIT};
use finspace::homotopy::{automorphism_group, extension_isomorphism_check, AutOptions, AutomorphismGroup};
use finspace::iso::{find_isomorphism, SearchOptions};
use finspace::mccord::{
    induced_h1_action, low_homology, mat_mul, order_complex, CycleBasis, HomologyGroup, DEFAULT_DIM_CAP,
    DEFAULT_MAX_SIMPLICES,
};
use finspace::poset::PointLabel;
use finspace::report::{CheckRecord, CheckStatus, VerificationReport};
use finspace::{FinitePoset, GeneratingSet};
use serde_json::{json, Value};

/// Check names in registry order, each with the statement it verifies.
pub const CHECKS: &[(&str, &str)] = &[
    ("gens.validate", "the generator list avoids the identity, has no repeats and generates G"),
    ("base.point_count", "X_G has n(r+2) points"),
    ("base.path_connected", "X_G is path-connected"),
    ("base.aut_realizes_group", "|Aut(X_G)| = |G| and Aut(X_G) is isomorphic to G"),
    ("base.free_action", "every automorphism of X_G is a left translation, and non-identity translations fix no point"),
    ("base.level_preservation", "every automorphism of X_G maps level l to level l"),
    ("bar.point_count", "the decorated space has n(r+2) + k n r points, k the gadget size at one point"),
    ("bar.no_beat_points", "the decorated space has no beat points"),
    (
        "bar.extension_bijection",
        "restriction Aut(decorated) -> Aut(X_G) is a bijection with the natural extension as inverse",
    ),
    ("pointed.star_fixed", "every automorphism of the pointed space fixes *, and that group is isomorphic to G"),
    ("family.rigid", "each fence-decorated space in the family has no beat points and |Aut| = |G|"),
    ("family.non_isomorphic", "the fence-decorated spaces of the family are pairwise non-isomorphic"),
    ("family.collapse_maps", "each collapse onto the shortest fence is an order-preserving surjection"),
    ("homology.betti", "b0 = 1, b1 matches the gadget formula, H_1 is torsion-free"),
    ("homology.n_independence", "b0, b1 and torsion agree across the family"),
    ("homology.h1_injective", "Aut -> GL(H_1) is an injective homomorphism; this certifies, but does not decide, injectivity into the self-equivalences of the order complex"),
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(n, _)| *n)
}

pub fn describe(name: &str) -> Option<&'static str> {
    CHECKS.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

/// Harness configuration.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Fence lengths used by the `family.*` and `homology.n_independence` checks.
    pub family: Vec<u32>,
    pub aut: AutOptions,
    /// When set, only these checks run; the rest are reported as skipped.
    pub only: Option<Vec<String>>,
    pub skip: Vec<String>,
    pub max_simplices: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            family: vec![1, 2, 3],
            aut: AutOptions::default(),
            only: None,
            skip: Vec::new(),
            max_simplices: DEFAULT_MAX_SIMPLICES,
        }
    }
}

impl VerifyOptions {
    fn selected(&self, name: &str) -> bool {
        !self.skip.iter().any(|s| s == name) && self.only.as_ref().is_none_or(|o| o.iter().any(|s| s == name))
    }
}

/// Input of one harness run: the generator list is validated by the first check.
#[derive(Clone, Debug)]
pub struct VerifyInput {
    pub group: FiniteGroup,
    pub gens: Vec<usize>,
    pub mode: GadgetMode,
}

type Cached<T> = OnceCell<Result<T, String>>;

struct Context<'a> {
    spec: ConstructionSpec,
    opts: &'a VerifyOptions,
    base: Cached<FinitePoset>,
    base_aut: Cached<AutomorphismGroup>,
    bar: Cached<FinitePoset>,
    bar_aut: Cached<AutomorphismGroup>,
    family: Cached<Vec<(u32, FinitePoset)>>,
    family_homology: Cached<Vec<(u32, HomologyGroup, HomologyGroup)>>,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

impl<'a> Context<'a> {
    fn new(spec: ConstructionSpec, opts: &'a VerifyOptions) -> Self {
        Context {
            spec,
            opts,
            base: OnceCell::new(),
            base_aut: OnceCell::new(),
            bar: OnceCell::new(),
            bar_aut: OnceCell::new(),
            family: OnceCell::new(),
            family_homology: OnceCell::new(),
        }
    }

    fn base(&self) -> Result<&FinitePoset, String> {
        self.base.get_or_init(|| build_base(&self.spec).map_err(err)).as_ref().map_err(Clone::clone)
    }

    fn base_aut(&self) -> Result<&AutomorphismGroup, String> {
        self.base_aut
            .get_or_init(|| automorphism_group(self.base()?, &self.opts.aut).map_err(err))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn bar(&self) -> Result<&FinitePoset, String> {
        self.bar.get_or_init(|| build_space(&self.spec).map_err(err)).as_ref().map_err(Clone::clone)
    }

    fn bar_aut(&self) -> Result<&AutomorphismGroup, String> {
        self.bar_aut
            .get_or_init(|| automorphism_group(self.bar()?, &self.opts.aut).map_err(err))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn family(&self) -> Result<&[(u32, FinitePoset)], String> {
        self.family
            .get_or_init(|| {
                let mut out = Vec::new();
                for &k in &self.opts.family {
                    let sp = self.spec.with_mode(GadgetMode::SAndT(k), false);
                    out.push((k, build_space(&sp).map_err(err)?));
                }
                Ok(out)
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    fn family_homology(&self) -> Result<&[(u32, HomologyGroup, HomologyGroup)], String> {
        self.family_homology
            .get_or_init(|| {
                let mut out = Vec::new();
                for (k, x) in self.family()? {
                    let (h0, h1) = low_homology(x).map_err(err)?;
                    out.push((*k, h0, h1));
                }
                Ok(out)
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    fn has_gadgets(&self) -> bool {
        self.spec.mode != GadgetMode::None
    }

    fn has_fences(&self) -> bool {
        matches!(self.spec.mode, GadgetMode::SAndT(_))
    }
}

enum Outcome {
    Record(CheckRecord),
    Skip(String),
}

fn pass(name: &str, summary: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome::Record(CheckRecord::pass(name, summary)))
}

fn fail(name: &str, summary: impl Into<String>, witness: Value) -> Result<Outcome, String> {
    Ok(Outcome::Record(CheckRecord::fail(name, summary, witness)))
}

fn skip(reason: &str) -> Result<Outcome, String> {
    Ok(Outcome::Skip(reason.to_string()))
}

fn labels_of(g: &FiniteGroup, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&x| g.label(x).to_string()).collect()
}

/// Runs every registered check in order.
pub fn verify_all(input: &VerifyInput, opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::new();
    let start = Instant::now();
    let gens = validate_generating_set(&input.group, &input.gens);
    let gens_record = match &gens {
        Ok(s) => CheckRecord::pass(
            "gens.validate",
            format!("{} generators, span has order {}", s.len(), input.group.order()),
        ),
        Err(e) => {
            let subgroup = input.group.subgroup_generated(&input.gens);
            CheckRecord::fail(
                "gens.validate",
                e.to_string(),
                json!({
                    "generators": labels_of(&input.group, &input.gens),
                    "subgroup": labels_of(&input.group, &subgroup),
                }),
            )
        }
    };
    if opts.selected("gens.validate") {
        report.push(gens_record.timed(start.elapsed()));
    } else {
        report.push(CheckRecord::skipped("gens.validate", "not selected"));
    }
    let gens: GeneratingSet = match gens {
        Ok(s) => s,
        Err(_) => {
            for name in check_names().skip(1) {
                report.push(CheckRecord::skipped(name, "generating-set validation failed"));
            }
            return report;
        }
    };
    let ctx = Context::new(ConstructionSpec::new(input.group.clone(), gens, input.mode, false), opts);
    for name in check_names().skip(1) {
        if !opts.selected(name) {
            report.push(CheckRecord::skipped(name, "not selected"));
            continue;
        }
        let start = Instant::now();
        let record = match run_check(&ctx, name) {
            Ok(Outcome::Record(r)) => r,
            Ok(Outcome::Skip(reason)) => CheckRecord::skipped(name, reason),
            Err(e) => CheckRecord::fail(name, "computation failed", json!({ "error": e })),
        };
        report.push(record.timed(start.elapsed()));
    }
    report
}

fn run_check(ctx: &Context, name: &str) -> Result<Outcome, String> {
    match name {
        "base.point_count" => {
            point_count(name, ctx.base()?, ctx.spec.with_mode(GadgetMode::None, false).expected_points())
        }
        "base.path_connected" => path_connected(ctx),
        "base.aut_realizes_group" => realizes_group(name, ctx.base_aut()?, &ctx.spec.group),
        "base.free_action" => free_action(ctx),
        "base.level_preservation" => level_preservation(ctx),
        "bar.point_count" if ctx.has_gadgets() => {
            point_count(name, ctx.bar()?, ctx.spec.with_mode(ctx.spec.mode, false).expected_points())
        }
        "bar.no_beat_points" if ctx.has_gadgets() => no_beat_points(name, ctx.bar()?),
        "bar.extension_bijection" if ctx.has_gadgets() => extension(ctx),
        "pointed.star_fixed" if ctx.has_gadgets() => star_fixed(ctx),
        "family.rigid" if ctx.has_fences() => family_rigid(ctx),
        "family.non_isomorphic" if ctx.has_fences() => family_non_isomorphic(ctx),
        "family.collapse_maps" if ctx.has_fences() => collapse_maps(ctx),
        "homology.betti" => betti_check(ctx),
        "homology.n_independence" if ctx.has_fences() => n_independence(ctx),
        "homology.h1_injective" if ctx.has_gadgets() => h1_injective(ctx),
        "bar.point_count"
        | "bar.no_beat_points"
        | "bar.extension_bijection"
        | "pointed.star_fixed"
        | "homology.h1_injective" => skip("gadget mode none builds no decorated space"),
        "family.rigid" | "family.non_isomorphic" | "family.collapse_maps" | "homology.n_independence" => {
            skip("the fence family needs gadget mode sandt:N")
        }
        other => Err(format!("unknown check `{}`", other)),
    }
}

fn point_count(name: &str, x: &FinitePoset, expected: usize) -> Result<Outcome, String> {
    if x.len() == expected {
        pass(name, format!("{} points", x.len()))
    } else {
        fail(name, "point count mismatch", json!({ "expected": expected, "got": x.len() }))
    }
}

fn path_connected(ctx: &Context) -> Result<Outcome, String> {
    let x = ctx.base()?;
    let comps = x.components();
    if comps.len() == 1 {
        pass("base.path_connected", "one component")
    } else {
        let reps: Vec<String> = comps.iter().map(|c| x.label(c[0]).to_string()).collect();
        fail(
            "base.path_connected",
            format!("{} components", comps.len()),
            json!({ "components": comps.len(), "representatives": reps }),
        )
    }
}

fn realizes_group(name: &str, aut: &AutomorphismGroup, g: &FiniteGroup) -> Result<Outcome, String> {
    if aut.order() != g.order() {
        return fail(
            name,
            "automorphism group has the wrong order",
            json!({ "aut_order": aut.order(), "group_order": g.order() }),
        );
    }
    let table = aut.to_finite_group().map_err(err)?;
    if groups_isomorphic(&table, g, DEFAULT_ISO_LIMIT).map_err(err)? {
        pass(name, format!("|Aut| = {} and the composition table is isomorphic to G", aut.order()))
    } else {
        fail(name, "composition table is not isomorphic to G", json!({ "aut_order_profile": table.order_profile() }))
    }
}

fn free_action(ctx: &Context) -> Result<Outcome, String> {
    let name = "base.free_action";
    let x = ctx.base()?;
    let aut = ctx.base_aut()?;
    let g = &ctx.spec.group;
    let mut hit = vec![false; aut.order()];
    for e in 0..g.order() {
        let t = translation(x, g, e).map_err(err)?;
        let Some(k) = aut.index_of(&t) else {
            return fail(name, "a translation is not an automorphism", json!({ "element": g.label(e) }));
        };
        hit[k] = true;
        if e != g.identity() {
            if let Some(&p) = t.fixed_points().first() {
                return fail(
                    name,
                    "a non-identity translation fixes a point",
                    json!({ "element": g.label(e), "point": x.label(p).to_string() }),
                );
            }
        }
    }
    if let Some(k) = hit.iter().position(|h| !h) {
        return fail(name, "an automorphism is not a translation", json!({ "automorphism": aut.elements[k].images() }));
    }
    pass(name, format!("Aut(X_G) is the {} left translations, acting freely", g.order()))
}

fn level_preservation(ctx: &Context) -> Result<Outcome, String> {
    let name = "base.level_preservation";
    let x = ctx.base()?;
    for (i, f) in ctx.base_aut()?.elements.iter().enumerate() {
        for p in 0..x.len() {
            let (a, b) = (x.label(p).as_base(), x.label(f.apply(p)).as_base());
            if a.map(|b| b.level) != b.map(|b| b.level) {
                return fail(
                    name,
                    "an automorphism changes a level",
                    json!({ "automorphism": i, "point": x.label(p).to_string(), "image": x.label(f.apply(p)).to_string() }),
                );
            }
        }
    }
    pass(name, "levels are preserved")
}

fn no_beat_points(name: &str, x: &FinitePoset) -> Result<Outcome, String> {
    let beats = x.beat_points();
    match beats.first() {
        None => pass(name, "no beat points"),
        Some(b) => fail(
            name,
            format!("{} beat points", beats.len()),
            json!({
                "point": x.label(b.point).to_string(),
                "kind": format!("{:?}", b.kind).to_lowercase(),
                "dominated_by": x.label(b.dominated_by).to_string(),
            }),
        ),
    }
}

fn extension(ctx: &Context) -> Result<Outcome, String> {
    let name = "bar.extension_bijection";
    let sub = extension_isomorphism_check(ctx.base_aut()?, ctx.bar_aut()?);
    if let Some(bad) = sub.checks.iter().find(|c| c.status != CheckStatus::Pass) {
        let witness = json!({ "step": bad.name, "detail": bad.summary, "witness": bad.witness });
        return fail(name, "restriction to the base is not a bijection", witness);
    }
    pass(name, format!("restriction is a bijection between groups of order {}", ctx.bar_aut()?.order()))
}

fn star_fixed(ctx: &Context) -> Result<Outcome, String> {
    let name = "pointed.star_fixed";
    let x = build_space(&ctx.spec.with_mode(ctx.spec.mode, true)).map_err(err)?;
    let star = x.index_of(&PointLabel::Star).ok_or("pointed space has no basepoint")?;
    let aut = automorphism_group(&x, &ctx.opts.aut).map_err(err)?;
    for f in &aut.elements {
        if f.apply(star) != star {
            return fail(name, "an automorphism moves *", json!({ "image": x.label(f.apply(star)).to_string() }));
        }
    }
    match realizes_group(name, &aut, &ctx.spec.group)? {
        Outcome::Record(r) if r.status == CheckStatus::Pass => {
            pass(name, format!("all {} automorphisms fix *, group isomorphic to G", aut.order()))
        }
        other => Ok(other),
    }
}

fn family_rigid(ctx: &Context) -> Result<Outcome, String> {
    let name = "family.rigid";
    for (k, x) in ctx.family()? {
        if let Some(b) = x.beat_points().first() {
            return fail(
                name,
                format!("n = {} has a beat point", k),
                json!({ "n": k, "point": x.label(b.point).to_string() }),
            );
        }
        let aut = automorphism_group(x, &ctx.opts.aut).map_err(err)?;
        if aut.order() != ctx.spec.n() {
            return fail(
                name,
                format!("n = {} has the wrong automorphism count", k),
                json!({ "n": k, "aut_order": aut.order() }),
            );
        }
    }
    pass(name, format!("n in {:?}: beat-point-free with |Aut| = {}", ctx.opts.family, ctx.spec.n()))
}

fn family_non_isomorphic(ctx: &Context) -> Result<Outcome, String> {
    let name = "family.non_isomorphic";
    let fam = ctx.family()?;
    let search = SearchOptions { node_budget: ctx.opts.aut.node_budget, ..SearchOptions::default() };
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            if find_isomorphism(&fam[i].1, &fam[j].1, &search).map_err(err)?.is_some() {
                return fail(name, "two members are isomorphic", json!({ "n": [fam[i].0, fam[j].0] }));
            }
        }
    }
    let sizes: BTreeMap<u32, usize> = fam.iter().map(|(k, x)| (*k, x.len())).collect();
    pass(name, format!("{} members pairwise non-isomorphic, sizes {:?}", fam.len(), sizes))
}

fn collapse_maps(ctx: &Context) -> Result<Outcome, String> {
    let name = "family.collapse_maps";
    for &k in &ctx.opts.family {
        let (src, tgt, f) = collapse_between(k, &ctx.spec).map_err(err)?;
        if !f.is_order_preserving(&src, &tgt) {
            return fail(name, format!("collapse from n = {} is not order-preserving", k), json!({ "n": k }));
        }
        if !f.is_surjective(tgt.len()) {
            return fail(name, format!("collapse from n = {} is not onto", k), json!({ "n": k }));
        }
    }
    pass(name, format!("collapses from n in {:?} are order-preserving surjections", ctx.opts.family))
}

/// `b_1` predicted for the decorated space: one circle per independent cycle
/// of the base plus one per gadget circle.
pub fn expected_b1(mode: GadgetMode, n: usize, r: usize) -> usize {
    match mode {
        GadgetMode::None => n * (r - 1) + 1,
        GadgetMode::SOnly => 2 * n * r - n + 1,
        GadgetMode::SAndT(_) => 3 * n * r - n + 1,
    }
}

fn betti_check(ctx: &Context) -> Result<Outcome, String> {
    let name = "homology.betti";
    let x = if ctx.has_gadgets() { ctx.bar()? } else { ctx.base()? };
    let k = order_complex(x, DEFAULT_DIM_CAP, ctx.opts.max_simplices).map_err(err)?;
    let c = k.chain_complex();
    let h0 = finspace::mccord::betti(&c, 0).map_err(err)?;
    let h1 = finspace::mccord::betti(&c, 1).map_err(err)?;
    let want = expected_b1(ctx.spec.mode, ctx.spec.n(), ctx.spec.r());
    if h0.betti != 1 || h1.betti != want || !h1.torsion.is_empty() {
        let torsion: Vec<String> = h1.torsion.iter().map(|t| t.to_string()).collect();
        return fail(
            name,
            "homology differs from the prediction",
            json!({ "expected": [1, want], "got": [h0.betti, h1.betti], "torsion": torsion }),
        );
    }
    pass(name, format!("b0=1, b1={}, torsion-free", want))
}

fn n_independence(ctx: &Context) -> Result<Outcome, String> {
    let name = "homology.n_independence";
    let hs = ctx.family_homology()?;
    if let Some((k0, a0, a1)) = hs.first() {
        for (k, h0, h1) in &hs[1..] {
            if (h0, h1) != (a0, a1) {
                return fail(
                    name,
                    "Betti numbers depend on the fence length",
                    json!({ "n": [k0, k], "b1": [a1.betti, h1.betti], "b0": [a0.betti, h0.betti] }),
                );
            }
        }
        pass(name, format!("b0={}, b1={} for n in {:?}", a0.betti, a1.betti, ctx.opts.family))
    } else {
        skip("empty family")
    }
}

fn h1_injective(ctx: &Context) -> Result<Outcome, String> {
    let name = "homology.h1_injective";
    let x = ctx.bar()?;
    let aut = ctx.bar_aut()?;
    let k = order_complex(x, DEFAULT_DIM_CAP, ctx.opts.max_simplices).map_err(err)?;
    let basis = CycleBasis::from_hasse(x, &k).map_err(err)?;
    let mats =
        aut.elements.iter().map(|f| induced_h1_action(x, f, &basis)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    for i in 0..mats.len() {
        for j in 0..mats.len() {
            if i < j && mats[i] == mats[j] {
                return fail(name, "two automorphisms act identically on H_1", json!({ "automorphisms": [i, j] }));
            }
            if mat_mul(&mats[i], &mats[j]) != mats[aut.table[i][j]] {
                return fail(name, "the action is not multiplicative", json!({ "automorphisms": [i, j] }));
            }
        }
    }
    pass(
        name,
        format!(
            "{} distinct {}x{} matrices, closed under products (an H_1 certificate, not a test of injectivity up to homotopy)",
            mats.len(),
            basis.len(),
            basis.len()
        ),
    )
}

/// Matrices of the `H_1` action of every automorphism of `x`, in the
/// fundamental-cycle basis of its Hasse diagram.
pub fn h1_action_matrices(x: &FinitePoset, aut: &AutOptions) -> anyhow::Result<Vec<Vec<Vec<i64>>>> {
    let group = automorphism_group(x, aut)?;
    let k = order_complex(x, DEFAULT_DIM_CAP, DEFAULT_MAX_SIMPLICES)?;
    let basis = CycleBasis::from_hasse(x, &k)?;
    Ok(group.elements.iter().map(|f| induced_h1_action(x, f, &basis)).collect::<Result<_, _>>()?)
}
