//! Scene files: the group action, the branches or divisors, and the bound.

use std::path::Path;

use gpoincare::algebra::{AbelianGroup, Character};
use gpoincare::blowup::Mode;
use gpoincare::curves::{Branch, GroupAction2};
use gpoincare::expr::parse_poly;
use gpoincare::poincare::ValuationSet;
use gpoincare::{Error, Result};
use serde::Deserialize;

pub const SCENE_VERSION: u32 = 1;
pub const DEFAULT_DEGREE_BOUND: u64 = 10;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorSpec {
    pub name: String,
    pub curvettes: [BranchSpec; 2],
}

/// The raw contents of a scene file.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub version: u32,
    #[serde(default)]
    pub group: Vec<u64>,
    #[serde(default)]
    pub chi_x: Vec<u64>,
    #[serde(default)]
    pub chi_y: Vec<u64>,
    #[serde(default)]
    pub cyclotomic_modulus: Option<u32>,
    pub mode: Mode,
    #[serde(default)]
    pub branches: Vec<BranchSpec>,
    #[serde(default)]
    pub divisors: Vec<DivisorSpec>,
    #[serde(default)]
    pub degree_bound: Option<u64>,
}

/// A validated scene.
#[derive(Clone, Debug)]
pub struct Scene {
    pub valuations: ValuationSet,
    pub degree_bound: u64,
    /// Names of the valuations, in index order.
    pub names: Vec<String>,
}

impl Scene {
    pub fn load(path: &Path, mode: Option<Mode>) -> Result<Scene> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Scene::parse(&text, mode)
    }

    pub fn parse(text: &str, mode: Option<Mode>) -> Result<Scene> {
        let raw: SceneFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if raw.version != SCENE_VERSION {
            return Err(Error::Input(format!("unsupported scene version {}", raw.version)));
        }
        let action = build_action(&raw)?;
        let mode = mode.unwrap_or(raw.mode);
        let field = action.field().clone();
        let branch = |spec: &BranchSpec, default: String| -> Result<Branch> {
            let x = parse_poly(&spec.x, &field).map_err(|e| locate(text, &spec.x, e))?;
            let y = parse_poly(&spec.y, &field).map_err(|e| locate(text, &spec.y, e))?;
            Branch::new(spec.name.clone().unwrap_or(default), x, y)
        };
        let mut names = Vec::new();
        let mut branches = Vec::new();
        let use_divisors = match mode {
            Mode::Divisorial => !raw.divisors.is_empty(),
            Mode::Curves => raw.branches.is_empty(),
        };
        if use_divisors {
            for d in &raw.divisors {
                match mode {
                    Mode::Divisorial => names.push(d.name.clone()),
                    Mode::Curves => names.extend([format!("{}.a", d.name), format!("{}.b", d.name)]),
                }
                branches.push(branch(&d.curvettes[0], format!("{}.a", d.name))?);
                branches.push(branch(&d.curvettes[1], format!("{}.b", d.name))?);
            }
        } else {
            for (k, s) in raw.branches.iter().enumerate() {
                branches.push(branch(s, format!("C{}", k + 1))?);
            }
            match mode {
                Mode::Curves => names.extend(branches.iter().map(|b| b.name().to_string())),
                Mode::Divisorial => {
                    names.extend(branches.chunks(2).map(|p| p.iter().map(|b| b.name()).collect::<Vec<_>>().join("+")))
                }
            }
        }
        if branches.is_empty() {
            return Err(Error::Input("scene has no branches".into()));
        }
        let valuations = ValuationSet::new(action, mode, branches)?;
        Ok(Scene { valuations, degree_bound: raw.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND), names })
    }
}

fn build_action(raw: &SceneFile) -> Result<GroupAction2> {
    if raw.group.is_empty() {
        if !raw.chi_x.is_empty() || !raw.chi_y.is_empty() {
            return Err(Error::Input("characters given for the trivial group".into()));
        }
        let g = AbelianGroup::trivial();
        let c = Character::trivial(&g);
        return GroupAction2::new(g, c.clone(), c, raw.cyclotomic_modulus);
    }
    let g = AbelianGroup::new(raw.group.clone())?;
    let cx = Character::new(&g, raw.chi_x.clone())?;
    let cy = Character::new(&g, raw.chi_y.clone())?;
    GroupAction2::new(g, cx, cy, raw.cyclotomic_modulus)
}

/// Moves an expression parse error to the position of the expression in the
/// scene text.
fn locate(text: &str, expr: &str, err: Error) -> Error {
    let Error::Parse { column, message, .. } = err else { return err };
    let quoted = serde_json::to_string(expr).unwrap_or_default();
    match text.find(&quoted) {
        Some(off) => {
            let before = &text[..off];
            let line = before.matches('\n').count() + 1;
            let start = before.rfind('\n').map_or(0, |p| p + 1);
            let col = before[start..].chars().count() + 1 + column;
            Error::Parse { line, column: col, message }
        }
        None => Error::Parse { line: 0, column, message },
    }
}
