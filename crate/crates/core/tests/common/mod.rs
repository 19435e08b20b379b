#![allow(dead_code)]

use finspace::construction::{build_space, ConstructionSpec, GadgetMode};
use finspace::group::{self, FiniteGroup};
use finspace::FinitePoset;

/// The test zoo: builtin spec string and generator labels.
pub const ZOO: &[(&str, &str, &[&str])] = &[
    ("C2", "cyclic:2", &["a"]),
    ("C3", "cyclic:3", &["a"]),
    ("C4", "cyclic:4", &["a"]),
    ("C5", "cyclic:5", &["a"]),
    ("Klein4", "klein4", &["a", "b"]),
    ("S3", "symmetric:3", &["a", "b"]),
    ("D4", "dihedral:4", &["a", "b"]),
    ("Q8", "quaternion8", &["i", "j"]),
];

pub fn spec_for(group_spec: &str, gens: &[&str], mode: GadgetMode, pointed: bool) -> ConstructionSpec {
    let g: FiniteGroup = group::parse_builtin(group_spec).unwrap();
    let idx: Vec<usize> = gens.iter().map(|l| g.element_by_label(l).unwrap()).collect();
    let s = group::validate_generating_set(&g, &idx).unwrap();
    ConstructionSpec::new(g, s, mode, pointed)
}

pub fn c3(mode: GadgetMode) -> ConstructionSpec {
    spec_for("cyclic:3", &["a"], mode, false)
}

pub fn d4(mode: GadgetMode) -> ConstructionSpec {
    spec_for("dihedral:4", &["a", "b"], mode, false)
}

pub fn space(spec: &ConstructionSpec) -> FinitePoset {
    build_space(spec).unwrap()
}

/// Comparability-graph components by plain BFS over the `leq` relation.
pub fn brute_force_components(p: &FinitePoset) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut comps = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        comps += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if !seen[y] && (p.leq(x, y) || p.leq(y, x)) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    comps
}
