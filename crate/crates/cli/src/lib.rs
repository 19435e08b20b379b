//! Command-line front end for `finspace`: argument parsing, space
//! selection, the subcommands and the `verify-all` harness.
//!
//! Every subcommand renders to a string so the binary and the tests share
//! one code path.

pub mod dot;
pub mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use finspace::construction::{build_space, ConstructionSpec, GadgetMode};
use finspace::format::{complex_to_json, group_from_json, poset_from_json, poset_to_json};
use finspace::group::{
    groups_isomorphic, parse_builtin, standard_generators, validate_generating_set, FiniteGroup, DEFAULT_ISO_LIMIT,
};
use finspace::homotopy::{
    automorphism_group, core, enumerate_continuous_selfmaps, homotopy_classes, AutOptions, MapLimits,
    DEFAULT_MAP_BUDGET, DEFAULT_MAX_MAP_POINTS,
};
use finspace::iso::DEFAULT_AUT_BUDGET;
use finspace::mccord::{betti, order_complex, DEFAULT_DIM_CAP, DEFAULT_MAX_SIMPLICES};
use finspace::FinitePoset;

use crate::verify::{VerifyInput, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "finspace", version, about = "Finite spaces realizing finite groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Built-in group, e.g. `cyclic:3`, `dihedral:4`, `klein4`, `quaternion8`.
    #[arg(long, global = true, conflicts_with = "group_file")]
    pub group: Option<String>,
    /// Group document (JSON Cayley table).
    #[arg(long, global = true)]
    pub group_file: Option<PathBuf>,
    /// Comma-separated generator labels; defaults to the group's standard generators.
    #[arg(long, global = true, value_delimiter = ',')]
    pub gens: Option<Vec<String>>,
    /// Gadget decoration: `none`, `sonly` or `sandt:N`.
    #[arg(long, global = true, default_value = "sandt:1")]
    pub mode: GadgetMode,
    /// Add the basepoint `*` above the bottom level.
    #[arg(long, global = true)]
    pub pointed: bool,
    /// Poset document to use instead of building from a group.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Node budget for map enumeration.
    #[arg(long, global = true, env = "FINSPACE_BUDGET_MAPS", default_value_t = DEFAULT_MAP_BUDGET)]
    pub budget_maps: u64,
    /// Node budget for automorphism and isomorphism search.
    #[arg(long, global = true, env = "FINSPACE_BUDGET_AUT", default_value_t = DEFAULT_AUT_BUDGET)]
    pub budget_aut: u64,
    /// Accepted for interface stability; every algorithm is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Build the space and print its poset document.
    Build,
    /// Automorphism group of the space.
    Aut {
        /// Also print every automorphism as an image list.
        #[arg(long)]
        list: bool,
    },
    /// Beat-point reduction to a core.
    Core {
        /// Print the core as a poset document.
        #[arg(long)]
        json: bool,
    },
    /// Continuous self-maps and their homotopy classes (small spaces only).
    Selfmaps {
        #[arg(long, default_value_t = DEFAULT_MAX_MAP_POINTS)]
        max_points: usize,
    },
    /// Order complex of the space.
    Complex {
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
        /// Print the complex document instead of simplex counts.
        #[arg(long)]
        json: bool,
    },
    /// b0, b1 and the torsion of H_1.
    Homology,
    /// Matrices of the automorphism action on H_1.
    H1Action,
    /// Graphviz DOT of the Hasse diagram.
    ExportDot,
    /// Run a single harness check.
    Verify {
        check: String,
        #[command(flatten)]
        harness: HarnessArgs,
    },
    /// Run the whole harness.
    VerifyAll {
        #[command(flatten)]
        harness: HarnessArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct HarnessArgs {
    /// Fence lengths for the family checks.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub family: Vec<u32>,
    /// Checks to skip.
    #[arg(long, value_delimiter = ',')]
    pub skip: Vec<String>,
    /// Print the JSON report.
    #[arg(long)]
    pub json: bool,
    /// Include per-check timings.
    #[arg(long)]
    pub timing: bool,
}

/// Rendered output and whether the run counts as a success.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, success: true }
    }
}

impl GlobalArgs {
    fn aut_options(&self) -> AutOptions {
        AutOptions { node_budget: self.budget_aut, ..AutOptions::default() }
    }

    pub fn load_group(&self) -> Result<FiniteGroup> {
        match (&self.group, &self.group_file) {
            (Some(spec), None) => Ok(parse_builtin(spec)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(group_from_json(&text)?)
            }
            _ => bail!("pass --group family:param or --group-file FILE"),
        }
    }

    /// Generator indices, unvalidated.
    pub fn generator_list(&self, g: &FiniteGroup) -> Result<Vec<usize>> {
        match &self.gens {
            None => Ok(standard_generators(g)),
            Some(tokens) => tokens.iter().map(|t| g.resolve(t.trim()).map_err(Into::into)).collect(),
        }
    }

    pub fn spec(&self) -> Result<ConstructionSpec> {
        let g = self.load_group()?;
        let gens = validate_generating_set(&g, &self.generator_list(&g)?)?;
        Ok(ConstructionSpec::new(g, gens, self.mode, self.pointed))
    }

    /// The space to operate on: the `--input` document, or the built space.
    pub fn space(&self) -> Result<FinitePoset> {
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(poset_from_json(&text)?);
        }
        Ok(build_space(&self.spec()?)?)
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Build => Ok(Outcome::ok(poset_to_json(&g.space()?) + "\n")),
        Command::Aut { list } => aut(g, *list),
        Command::Core { json } => core_cmd(g, *json),
        Command::Selfmaps { max_points } => selfmaps(g, *max_points),
        Command::Complex { dim_cap, json } => {
            let x = g.space()?;
            let k = order_complex(&x, *dim_cap, DEFAULT_MAX_SIMPLICES)?;
            if *json {
                return Ok(Outcome::ok(complex_to_json(&k, &x) + "\n"));
            }
            let mut out = String::new();
            for d in 0..=*dim_cap {
                let _ = write!(out, "dim{}={} ", d, k.count(d));
            }
            let _ = writeln!(out, "euler={}", k.euler_characteristic());
            Ok(Outcome::ok(out))
        }
        Command::Homology => {
            let x = g.space()?;
            let c = order_complex(&x, DEFAULT_DIM_CAP, DEFAULT_MAX_SIMPLICES)?.chain_complex();
            let (h0, h1) = (betti(&c, 0)?, betti(&c, 1)?);
            let torsion: Vec<String> = h1.torsion.iter().map(ToString::to_string).collect();
            Ok(Outcome::ok(format!("b0={}, b1={}, torsion=[{}]\n", h0.betti, h1.betti, torsion.join(", "))))
        }
        Command::H1Action => {
            let mats = verify::h1_action_matrices(&g.space()?, &g.aut_options())?;
            Ok(Outcome::ok(serde_json::to_string(&mats)? + "\n"))
        }
        Command::ExportDot => Ok(Outcome::ok(dot::export_dot(&g.space()?))),
        Command::Verify { check, harness } => {
            if verify::describe(check).is_none() {
                let known: Vec<&str> = verify::check_names().collect();
                bail!("unknown check `{}`; known checks: {}", check, known.join(", "));
            }
            harness_run(g, harness, Some(vec![check.clone()]))
        }
        Command::VerifyAll { harness } => harness_run(g, harness, None),
    }
}

fn aut(g: &GlobalArgs, list: bool) -> Result<Outcome> {
    let x = g.space()?;
    let a = automorphism_group(&x, &g.aut_options())?;
    let mut out = format!("order={}\n", a.order());
    if g.input.is_none() {
        let group = g.load_group()?;
        let iso = groups_isomorphic(&a.to_finite_group()?, &group, DEFAULT_ISO_LIMIT)?;
        let _ = writeln!(out, "isomorphic_to_group={}", iso);
    }
    if list {
        for (i, f) in a.elements.iter().enumerate() {
            let _ = writeln!(out, "f{}: {:?}", i, f.images());
        }
    }
    Ok(Outcome::ok(out))
}

fn core_cmd(g: &GlobalArgs, json: bool) -> Result<Outcome> {
    let x = g.space()?;
    let red = core(&x);
    if json {
        return Ok(Outcome::ok(poset_to_json(&red.core) + "\n"));
    }
    let mut out = format!("points={} core_points={} removed={}\n", x.len(), red.core.len(), red.trace.len());
    for r in &red.trace {
        let _ =
            writeln!(out, "remove {} ({:?} beat, dominated by {})", x.label(r.point), r.kind, x.label(r.dominated_by));
    }
    Ok(Outcome::ok(out))
}

fn selfmaps(g: &GlobalArgs, max_points: usize) -> Result<Outcome> {
    let x = g.space()?;
    let maps = enumerate_continuous_selfmaps(&x, MapLimits { max_points, node_budget: g.budget_maps })?;
    let h = homotopy_classes(&x, &maps)?;
    let profile = h.group.order_profile();
    Ok(Outcome::ok(format!(
        "maps={} classes={} equivalence_classes={} group_order={} element_orders={:?}\n",
        maps.len(),
        h.classes.len(),
        h.equivalence_classes.len(),
        h.group.order(),
        profile
    )))
}

fn harness_run(g: &GlobalArgs, h: &HarnessArgs, only: Option<Vec<String>>) -> Result<Outcome> {
    let group = g.load_group()?;
    let gens = g.generator_list(&group)?;
    let input = VerifyInput { group, gens, mode: g.mode };
    let opts = VerifyOptions {
        family: h.family.clone(),
        aut: g.aut_options(),
        only: only.clone(),
        skip: h.skip.clone(),
        ..VerifyOptions::default()
    };
    let mut report = verify::verify_all(&input, &opts);
    if let Some(names) = only {
        report.checks.retain(|c| names.contains(&c.name));
    }
    let stdout = if h.json { report.to_json(h.timing) + "\n" } else { report.render(h.timing) };
    Ok(Outcome { stdout, success: !report.has_failures() })
}
