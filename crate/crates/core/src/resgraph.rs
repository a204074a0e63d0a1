//! Decorated dual graphs of equivariant resolutions: the intersection
//! matrix of the expanded graph, valuation vectors, stratification of the
//! exceptional divisor, and the characters attached to strata.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num::{BigInt, One, Signed};

use crate::algebra::linalg::{invert_integer_matrix, is_positive_definite};
use crate::algebra::{Elem, LocalChar, Subgroup};
use crate::blowup::{Centre, EqResolution, Mode, Position};
use crate::curves::{
    act_on_branch, branch_isotropy, germ_character, implicitize, meets_origin_again, order_on, semi_invariant_character, Branch,
};
use crate::error::{Error, Result};

/// A resolution together with its expanded graph and −M⁻¹.
#[derive(Clone, Debug)]
pub struct ResolutionGraph {
    pub res: EqResolution,
    /// Expanded vertices: (representative component, coset representative).
    pub vertices: Vec<(usize, Elem)>,
    index: HashMap<(usize, Elem), usize>,
    /// Expanded intersection matrix.
    pub matrix: Vec<Vec<i64>>,
    /// −M⁻¹, an integer matrix with positive entries.
    pub neg_inverse: Vec<Vec<i64>>,
}

/// The expanded intersection matrix and its negated inverse, checked to be
/// negative definite, unimodular and with positive integral −M⁻¹.
pub fn intersection_matrix(matrix: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let neg: Vec<Vec<i64>> = matrix.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
    if !is_positive_definite(&neg) {
        return Err(Error::CrossCheck("intersection matrix is not negative definite".into()));
    }
    let (inv, det) = invert_integer_matrix(matrix)
        .ok_or_else(|| Error::CrossCheck("intersection matrix is singular".into()))?;
    if !det.is_integer() || det.to_integer().abs() != BigInt::one() {
        return Err(Error::CrossCheck(format!("intersection matrix has determinant {det}")));
    }
    let mut out = Vec::with_capacity(inv.len());
    for row in inv {
        let mut r = Vec::with_capacity(row.len());
        for q in row {
            let v = -q;
            if !v.is_integer() || !v.is_positive() {
                return Err(Error::CrossCheck(format!("-M^-1 has entry {v}")));
            }
            r.push(i64::try_from(v.to_integer()).map_err(|_| Error::CrossCheck("-M^-1 entry overflow".into()))?);
        }
        out.push(r);
    }
    Ok(out)
}

impl ResolutionGraph {
    pub fn new(res: EqResolution) -> Result<Self> {
        let grp = res.action.group().clone();
        let mut vertices = Vec::new();
        for c in &res.components {
            for g in c.stabilizer.coset_reps(&grp) {
                vertices.push((c.id, g));
            }
        }
        let index: HashMap<(usize, Elem), usize> = vertices.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let n = vertices.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (k, (c, _)) in vertices.iter().enumerate() {
            matrix[k][k] = res.components[*c].self_intersection;
        }
        for x in &res.crossings {
            let sa = &res.components[x.a].stabilizer;
            let sb = &res.components[x.b].stabilizer;
            let mut edges = BTreeSet::new();
            for g in grp.elements() {
                edges.insert((index[&(x.a, sa.coset_rep(&grp, g))], index[&(x.b, sb.coset_rep(&grp, g))]));
            }
            for (i, j) in edges {
                if matrix[i][j] != 0 {
                    return Err(Error::CrossCheck("two exceptional components meet twice".into()));
                }
                matrix[i][j] = 1;
                matrix[j][i] = 1;
            }
        }
        let neg_inverse = intersection_matrix(&matrix)?;
        Ok(ResolutionGraph { res, vertices, index, matrix, neg_inverse })
    }

    /// Expanded index of the copy g·E_σ.
    pub fn vertex(&self, comp: usize, g: Elem) -> usize {
        let grp = self.res.action.group();
        self.index[&(comp, self.res.components[comp].stabilizer.coset_rep(grp, g))]
    }

    /// (−M⁻¹) between the copies g·E_σ and h·E_τ.
    pub fn neg_inv(&self, sigma: usize, g: Elem, tau: usize, h: Elem) -> i64 {
        self.neg_inverse[self.vertex(sigma, g)][self.vertex(tau, h)]
    }

    /// Number of valuations: branches in mode curves, pairs in mode divisorial.
    pub fn r(&self) -> usize {
        match self.res.mode {
            Mode::Curves => self.res.branches.len(),
            Mode::Divisorial => self.res.marked.len(),
        }
    }

    /// The parent of a component in the tree of infinitely near points.
    pub fn parent(&self, comp: usize) -> Option<usize> {
        match &self.res.components[comp].centre {
            Centre::Origin => None,
            Centre::On(list) => Some(list[0].0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StratumKind {
    Point,
    Generic,
}

/// A stratum of the quotient of the smooth part of the divisor.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub kind: StratumKind,
    pub component: usize,
    /// The special point, or a sample generic point.
    pub position: Position,
    pub chi: i64,
    pub stabilizer: Subgroup,
}

/// One stratum per unremoved special point orbit and one generic stratum per
/// component orbit.
pub fn stratify(graph: &ResolutionGraph) -> Result<Vec<Stratum>> {
    let res = &graph.res;
    let field = res.action.field();
    let mut out = Vec::new();
    for c in &res.components {
        let removed = res.removed_positions(c.id);
        let removed_count: usize = removed.iter().map(|p| c.orbit_size(p)).sum();
        let mut specials = Vec::new();
        if c.has_special_points() {
            for p in [Position::Finite(crate::algebra::CycloNum::zero(field)), Position::Infinity] {
                if !removed.contains(&p) {
                    specials.push(p);
                }
            }
        }
        let rest = 2 - removed_count as i64 - specials.len() as i64;
        let idx = c.generic_index() as i64;
        if rest % idx != 0 {
            return Err(Error::CrossCheck(format!("E{}: Euler characteristic {rest} not divisible by {idx}", c.id + 1)));
        }
        for p in specials {
            out.push(Stratum {
                kind: StratumKind::Point,
                component: c.id,
                position: p,
                chi: 1,
                stabilizer: c.stabilizer.clone(),
            });
        }
        out.push(Stratum {
            kind: StratumKind::Generic,
            component: c.id,
            position: Position::Finite(res.generic_position(c.id)),
            chi: rest / idx,
            stabilizer: c.generic_stabilizer.clone(),
        });
    }
    Ok(out)
}

/// w on the orbit of the point, indexed by the coset representatives of its
/// stabilizer. Computed through curvette intersections and cross-checked
/// against −M⁻¹.
pub fn w_vector(graph: &ResolutionGraph, comp: usize, pos: &Position) -> Result<Vec<Vec<u64>>> {
    let res = &graph.res;
    let grp = res.action.group();
    let stab = res.components[comp].point_stabilizer(pos);
    let curvette = res.pushdown_curvette(comp, pos)?;
    let along = |b: &Branch| -> Result<Option<usize>> { Ok(order_on(implicitize(b)?.equation(), &curvette)) };
    let mut out = Vec::new();
    for g in stab.coset_reps(grp) {
        let mut w = Vec::with_capacity(graph.r());
        for k in 0..graph.r() {
            let (by_graph, by_curves) = match res.mode {
                Mode::Curves => {
                    let (tau, h) = res.attachment_of(k, grp.identity());
                    let moved = act_on_branch(grp.neg(g), &res.branches[k], &res.action);
                    (graph.neg_inv(comp, g, tau, h), along(&moved)?)
                }
                Mode::Divisorial => {
                    let (tau, h) = res.marked[k];
                    let i1 = along(&act_on_branch(grp.neg(g), &res.branches[2 * k], &res.action))?;
                    let i2 = along(&act_on_branch(grp.neg(g), &res.branches[2 * k + 1], &res.action))?;
                    let m = match (i1, i2) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (a, b) => a.or(b),
                    };
                    (graph.neg_inv(comp, g, tau, h), m)
                }
            };
            if by_curves != Some(by_graph as usize) {
                return Err(Error::CrossCheck(format!(
                    "w at E{} {} (shift {}): graph gives {}, curvettes give {:?}",
                    comp + 1,
                    pos,
                    g,
                    by_graph,
                    by_curves
                )));
            }
            w.push(by_graph as u64);
        }
        out.push(w);
    }
    Ok(out)
}

/// α by semi-invariance of the curvette's local equation under the
/// stabilizer. When the pushed-down parametrization meets the origin only
/// once, its implicit equation is that local equation and must agree.
pub fn alpha_direct(graph: &ResolutionGraph, comp: usize, pos: &Position) -> Result<LocalChar> {
    let res = &graph.res;
    let stab = res.components[comp].point_stabilizer(pos);
    let curvette = res.pushdown_curvette(comp, pos)?;
    let alpha = germ_character(&curvette, stab, &res.action)?;
    if !meets_origin_again(curvette.x(), curvette.y()) {
        let eq = implicitize(&curvette)?;
        let global = semi_invariant_character(eq.equation(), stab, &res.action)?;
        if global != alpha {
            return Err(Error::CrossCheck(format!("curvette equation at E{} {} has character {:?}", comp + 1, pos, global.values())));
        }
    }
    Ok(alpha)
}

/// α = m·γ_u + γ_v, with γ_v solved from χx + χy = (ν + 1)·γ_u + γ_v and
/// m = (−M⁻¹)_{σσ}.
pub fn alpha_from_graph(graph: &ResolutionGraph, comp: usize, pos: &Position) -> Result<LocalChar> {
    let res = &graph.res;
    let act = &res.action;
    let grp = act.group();
    let c = &res.components[comp];
    let stab = c.point_stabilizer(pos);
    let (gu, gv) = c.point_chars(pos, act);
    let form = act.chi_x().add(grp, act.chi_y());
    let solved = form.sub(grp, &gu.scale(grp, c.nu as i64 + 1));
    if solved.restrict(grp, stab) != gv.restrict(grp, stab) {
        return Err(Error::CrossCheck(format!("tangent character at E{} {} disagrees with the 2-form", comp + 1, pos)));
    }
    let m = graph.neg_inv(comp, 0, comp, 0);
    Ok(gu.scale(grp, m).add(grp, &solved).restrict(grp, stab))
}

/// Both α routes, which must agree.
pub fn alpha_checked(graph: &ResolutionGraph, comp: usize, pos: &Position) -> Result<LocalChar> {
    let direct = alpha_direct(graph, comp, pos)?;
    let via_graph = alpha_from_graph(graph, comp, pos)?;
    if direct != via_graph {
        return Err(Error::CrossCheck(format!(
            "alpha at E{} {}: direct {:?}, from graph {:?}",
            comp + 1,
            pos,
            direct.values(),
            via_graph.values()
        )));
    }
    Ok(direct)
}

/// A stratum with its orbit data.
#[derive(Clone, Debug)]
pub struct EvaluatedStratum {
    pub stratum: Stratum,
    pub w: Vec<Vec<u64>>,
    pub alpha: LocalChar,
}

/// Stratifies and evaluates w and α on every stratum with χ ≠ 0.
pub fn evaluate_strata(graph: &ResolutionGraph) -> Result<Vec<EvaluatedStratum>> {
    let mut out = Vec::new();
    for s in stratify(graph)? {
        if s.chi == 0 {
            continue;
        }
        let w = w_vector(graph, s.component, &s.position)?;
        let alpha = alpha_checked(graph, s.component, &s.position)?;
        out.push(EvaluatedStratum { stratum: s, w, alpha });
    }
    Ok(out)
}

/// Local data of a point of a component, comparable across resolutions of
/// the same action.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointSig {
    pub fixed: bool,
    pub normal: LocalChar,
    pub tangent: LocalChar,
}

impl PointSig {
    fn of(res: &EqResolution, comp: usize, pos: &Position) -> PointSig {
        let c = &res.components[comp];
        let grp = res.action.group();
        let stab = c.point_stabilizer(pos);
        let (gu, gv) = c.point_chars(pos, &res.action);
        PointSig { fixed: pos.is_fixed() && c.has_special_points(), normal: gu.restrict(grp, stab), tangent: gv.restrict(grp, stab) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct VertexSig {
    stabilizer: Subgroup,
    generic: Subgroup,
    nu: u64,
    self_intersection: i64,
    centre: (LocalChar, LocalChar),
    centre_point: Option<PointSig>,
    arrows: Vec<(usize, PointSig)>,
    marks: Vec<usize>,
}

fn vertex_sig(res: &EqResolution, comp: usize) -> VertexSig {
    let c = &res.components[comp];
    let grp = res.action.group();
    let centre_point = match &c.centre {
        Centre::Origin => None,
        Centre::On(list) => Some(PointSig::of(res, list[0].0, &list[0].1)),
    };
    let mut arrows: Vec<(usize, PointSig)> = res
        .attachments_on(comp)
        .flat_map(|a| {
            let sig = PointSig::of(res, comp, &a.position);
            let mut idx: Vec<usize> = a.labels.iter().map(|l| l.0).collect();
            idx.dedup();
            idx.into_iter().map(move |i| (i, sig.clone()))
        })
        .collect();
    arrows.sort();
    arrows.dedup();
    let marks = res.marked.iter().enumerate().filter(|(_, m)| m.0 == comp).map(|(k, _)| k).collect();
    VertexSig {
        stabilizer: c.stabilizer.clone(),
        generic: c.generic_stabilizer.clone(),
        nu: c.nu,
        self_intersection: c.self_intersection,
        centre: (c.centre_chars.0.restrict(grp, &c.stabilizer), c.centre_chars.1.restrict(grp, &c.stabilizer)),
        centre_point,
        arrows,
        marks,
    }
}

fn describe_sig(s: &VertexSig) -> String {
    let arrows: Vec<String> = s
        .arrows
        .iter()
        .map(|(i, p)| {
            format!(
                "C{} at {} point ({:?},{:?})",
                i + 1,
                if p.fixed { "special" } else { "generic" },
                p.normal.values(),
                p.tangent.values()
            )
        })
        .collect();
    format!(
        "|G_s|={} |G*|={} nu={} self={} centre chars ({:?},{:?}) arrows [{}] marks {:?}",
        s.stabilizer.order(),
        s.generic.order(),
        s.nu,
        s.self_intersection,
        s.centre.0.values(),
        s.centre.1.values(),
        arrows.join(", "),
        s.marks
    )
}

/// Outcome of [`compare_topology`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologyVerdict {
    /// Witness: component k of the first resolution maps to witness[k].
    Equivalent { witness: Vec<usize> },
    NotEquivalent { obstruction: String },
}

/// Searches for an isomorphism of quotient graphs fixing E₁ and preserving
/// the tree of infinitely near points, all decorations, the position type and
/// local characters of every centre, every crossing, and the arrows.
pub fn compare_topology(a: &ResolutionGraph, b: &ResolutionGraph) -> Result<TopologyVerdict> {
    let (ra, rb) = (&a.res, &b.res);
    if ra.action.group() != rb.action.group()
        || ra.action.chi_x() != rb.action.chi_x()
        || ra.action.chi_y() != rb.action.chi_y()
    {
        return Err(Error::Precondition("compare_topology needs the same action".into()));
    }
    if ra.mode != rb.mode || a.r() != b.r() {
        return Ok(TopologyVerdict::NotEquivalent { obstruction: "different modes or numbers of valuations".into() });
    }
    let n = ra.components.len();
    if n != rb.components.len() {
        return Ok(TopologyVerdict::NotEquivalent {
            obstruction: format!("{} component orbits vs {}", n, rb.components.len()),
        });
    }
    let sa: Vec<VertexSig> = (0..n).map(|k| vertex_sig(ra, k)).collect();
    let sb: Vec<VertexSig> = (0..n).map(|k| vertex_sig(rb, k)).collect();
    let pa: Vec<Option<usize>> = (0..n).map(|k| a.parent(k)).collect();
    let pb: Vec<Option<usize>> = (0..n).map(|k| b.parent(k)).collect();

    let crossing_set = |g: &ResolutionGraph, map: &dyn Fn(usize) -> usize| -> BTreeSet<(usize, PointSig, usize, PointSig)> {
        g.res
            .crossings
            .iter()
            .map(|x| {
                let ea = (map(x.a), PointSig::of(&g.res, x.a, &x.pos_a));
                let eb = (map(x.b), PointSig::of(&g.res, x.b, &x.pos_b));
                let (p, q) = if ea <= eb { (ea, eb) } else { (eb, ea) };
                (p.0, p.1, q.0, q.1)
            })
            .collect()
    };
    let target = crossing_set(b, &|k| k);

    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let mut obstruction: Option<(usize, String)> = None;

    #[allow(clippy::too_many_arguments)]
    fn search(
        k: usize,
        n: usize,
        sa: &[VertexSig],
        sb: &[VertexSig],
        pa: &[Option<usize>],
        pb: &[Option<usize>],
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        accept: &dyn Fn(&[Option<usize>]) -> bool,
        obstruction: &mut Option<(usize, String)>,
    ) -> bool {
        if k == n {
            if accept(map) {
                return true;
            }
            if obstruction.as_ref().map_or(true, |o| o.0 <= k) {
                *obstruction = Some((k, "crossings between components do not correspond".into()));
            }
            return false;
        }
        let mut tried = false;
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let parent_ok = match (pa[k], pb[cand]) {
                (None, None) => true,
                (Some(p), Some(q)) => map[p] == Some(q),
                _ => false,
            };
            if !parent_ok {
                continue;
            }
            tried = true;
            if sa[k] != sb[cand] {
                if obstruction.as_ref().map_or(true, |o| o.0 < k) {
                    *obstruction = Some((
                        k,
                        format!("E{} vs E{}: {} / {}", k + 1, cand + 1, describe_sig(&sa[k]), describe_sig(&sb[cand])),
                    ));
                }
                continue;
            }
            map[k] = Some(cand);
            used[cand] = true;
            if search(k + 1, n, sa, sb, pa, pb, map, used, accept, obstruction) {
                return true;
            }
            map[k] = None;
            used[cand] = false;
        }
        if !tried && obstruction.as_ref().map_or(true, |o| o.0 < k) {
            *obstruction = Some((k, format!("E{} has no counterpart in the tree of infinitely near points", k + 1)));
        }
        false
    }

    let accept = |m: &[Option<usize>]| crossing_set(a, &|k| m[k].unwrap()) == target;
    if search(0, n, &sa, &sb, &pa, &pb, &mut map, &mut used, &accept, &mut obstruction) {
        Ok(TopologyVerdict::Equivalent { witness: map.into_iter().map(|m| m.unwrap()).collect() })
    } else {
        Ok(TopologyVerdict::NotEquivalent { obstruction: obstruction.map(|o| o.1).unwrap_or_default() })
    }
}

/// DOT rendering of the quotient graph; arrows are drawn as arrowheads.
pub fn quotient_dot(graph: &ResolutionGraph) -> String {
    let res = &graph.res;
    let mut s = String::from("graph quotient {\n  node [shape=circle];\n");
    for c in &res.components {
        let marked = if res.marked.iter().any(|m| m.0 == c.id) { ", style=filled" } else { "" };
        let _ = writeln!(
            s,
            "  E{0} [label=\"E{0}\\n|G|={1}\\nnu={2}\\n{3}\"{4}];",
            c.id + 1,
            c.stabilizer.order(),
            c.nu,
            c.self_intersection,
            marked
        );
    }
    for x in &res.crossings {
        let _ = writeln!(s, "  E{} -- E{};", x.a.min(x.b) + 1, x.a.max(x.b) + 1);
    }
    for (k, att) in res.attachments.iter().enumerate() {
        let names: Vec<String> = att.labels.iter().map(|l| format!("{}", l.0 + 1)).collect::<BTreeSet<_>>().into_iter().collect();
        let iso = branch_isotropy(&att.branch, &res.action).map(|h| h.order()).unwrap_or(1);
        let orbit = res.action.group().order() / iso;
        let _ = writeln!(s, "  A{k} [shape=none, label=\"C{} x{}\"];", names.join(","), orbit);
        let _ = writeln!(s, "  E{} -- A{k} [dir=forward, arrowhead=normal];", att.component + 1);
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of the expanded graph.
pub fn expanded_dot(graph: &ResolutionGraph) -> String {
    let mut s = String::from("graph expanded {\n  node [shape=point];\n");
    for (k, (c, g)) in graph.vertices.iter().enumerate() {
        let _ = writeln!(s, "  v{k} [xlabel=\"E{}.{}\"];", c + 1, g);
    }
    for i in 0..graph.vertices.len() {
        for j in i + 1..graph.vertices.len() {
            if graph.matrix[i][j] != 0 {
                let _ = writeln!(s, "  v{i} -- v{j};");
            }
        }
    }
    s.push_str("}\n");
    s
}
