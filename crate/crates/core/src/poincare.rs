//! Equivariant and plain Poincaré series of valuation filtrations, the
//! shift extension of a collection, the jets oracle, representation
//! inference and the determination hypotheses.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{linalg, Character, CycloNum, LocalChar, Poly1};
use crate::blowup::{resolve, Mode, Position};
use crate::curves::{act_on_branch, branch_isotropy, implicitize, Branch, GroupAction2};
use crate::error::{Error, Result};
use crate::grring::{AcampoForm, GRClass, GRSeries, GrRing, PlainFactors, PlainSeries};
use crate::resgraph::{evaluate_strata, w_vector, ResolutionGraph, StratumKind};

/// Curve valuations of the branches, or divisorial valuations given by
/// consecutive curvette pairs.
#[derive(Clone, Debug)]
pub struct ValuationSet {
    pub action: GroupAction2,
    pub mode: Mode,
    pub branches: Vec<Branch>,
}

impl ValuationSet {
    pub fn new(action: GroupAction2, mode: Mode, branches: Vec<Branch>) -> Result<Self> {
        if mode == Mode::Divisorial && branches.len() % 2 != 0 {
            return Err(Error::Input("divisorial mode needs an even number of curvettes".into()));
        }
        for b in &branches {
            implicitize(b)?;
        }
        Ok(ValuationSet { action, mode, branches })
    }

    pub fn r(&self) -> usize {
        match self.mode {
            Mode::Curves => self.branches.len(),
            Mode::Divisorial => self.branches.len() / 2,
        }
    }

    pub fn resolve(&self) -> Result<ResolutionGraph> {
        ResolutionGraph::new(resolve(&self.action, &self.branches, self.mode)?)
    }
}

/// P^G = ∏ (1 − T_Ξ)^{−χ(Ξ)} over the strata, as a finite product and as
/// its expansion up to `bound`.
pub fn equivariant_poincare(graph: &ResolutionGraph, bound: u64) -> Result<(AcampoForm, GRSeries)> {
    let grp = graph.res.action.group().clone();
    let ring = GrRing::new(grp.clone(), graph.r(), bound);
    let mut form = AcampoForm::new();
    for e in evaluate_strata(graph)? {
        let t = GRClass::new(&grp, e.stratum.stabilizer.clone(), e.w, e.alpha)?;
        form.push(t, -e.stratum.chi);
    }
    let series = ring.expand(&form)?;
    Ok((form, series))
}

/// Expanded vertex of every valuation, and the number of distinct strict
/// transforms removed from each expanded vertex.
fn targets(graph: &ResolutionGraph, shifted: bool) -> Result<(Vec<usize>, Vec<usize>)> {
    let res = &graph.res;
    let grp = res.action.group();
    let shifts: Vec<usize> = if shifted { grp.elements().collect() } else { vec![grp.identity()] };
    let mut tgt = Vec::new();
    let mut removed = vec![0usize; graph.vertices.len()];
    match res.mode {
        Mode::Curves => {
            let mut seen: Vec<crate::algebra::Poly2> = Vec::new();
            for (k, b) in res.branches.iter().enumerate() {
                for &g in &shifts {
                    let (c, h) = res.attachment_of(k, g);
                    let v = graph.vertex(c, h);
                    tgt.push(v);
                    let eq = implicitize(&act_on_branch(g, b, &res.action))?.equation().clone();
                    if !seen.contains(&eq) {
                        seen.push(eq);
                        removed[v] += 1;
                    }
                }
            }
        }
        Mode::Divisorial => {
            for &(c, h) in &res.marked {
                for &g in &shifts {
                    tgt.push(graph.vertex(c, grp.add(h, g)));
                }
            }
        }
    }
    Ok((tgt, removed))
}

fn plain_factors(graph: &ResolutionGraph, shifted: bool) -> Result<PlainFactors> {
    let (tgt, removed) = targets(graph, shifted)?;
    let n = graph.vertices.len();
    let mut out = PlainFactors::new(tgt.len());
    for v in 0..n {
        let crossings = (0..n).filter(|&u| u != v && graph.matrix[v][u] != 0).count();
        let chi = 2 - crossings as i64 - removed[v] as i64;
        if chi == 0 {
            continue;
        }
        let w: Vec<u64> = tgt.iter().map(|&t| graph.neg_inverse[v][t] as u64).collect();
        out.push(w, -chi);
    }
    Ok(out)
}

/// The usual series ∏_v (1 − t^{w_v})^{−χ(E°_v)} over the expanded graph,
/// as factors and expansion.
pub fn plain_poincare(graph: &ResolutionGraph, bound: u64) -> Result<(PlainFactors, PlainSeries)> {
    let f = plain_factors(graph, false)?;
    let s = f.expand(bound)?;
    Ok((f, s))
}

/// The usual series of the shift-extended collection {g·C_i}, indexed
/// i-major then by group element.
pub fn plain_poincare_shifted(graph: &ResolutionGraph, bound: u64) -> Result<(PlainFactors, PlainSeries)> {
    let f = plain_factors(graph, true)?;
    let s = f.expand(bound)?;
    Ok((f, s))
}

/// Transforms P^G of a collection into P^G of its shift extension:
/// w_{ig}(x) = w_i(g⁻¹·x), indices i-major then by group element.
pub fn extend_to_shifts(graph: &ResolutionGraph, form: &AcampoForm) -> Result<AcampoForm> {
    let grp = graph.res.action.group();
    let mut out = AcampoForm::new();
    for (t, s) in form.factors() {
        let h = t.stabilizer();
        let reps = h.coset_reps(grp);
        let w: Vec<Vec<u64>> = reps
            .iter()
            .map(|&x| {
                let mut row = Vec::with_capacity(graph.r() * grp.order());
                for k in 0..graph.r() {
                    for g in grp.elements() {
                        row.push(t.w()[h.coset_index(grp, &reps, grp.sub(x, g))][k]);
                    }
                }
                row
            })
            .collect();
        out.push(GRClass::new(grp, h.clone(), w, t.alpha().clone())?, s);
    }
    Ok(out)
}

/// Incremental row echelon form over the field.
#[derive(Clone)]
struct Echelon {
    rows: Vec<(usize, Vec<CycloNum>)>,
}

impl Echelon {
    fn insert(&mut self, row: &[CycloNum]) {
        let mut r = row.to_vec();
        for (p, b) in &self.rows {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[p].inverse().unwrap();
            for x in r.iter_mut() {
                *x = &*x * &inv;
            }
            self.rows.push((p, r));
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Largest jet degree the oracle will use.
pub const JET_CAP: usize = 64;

/// The usual series computed from codimensions ℓ(v) = dim O/J(v) of the
/// filtration ideals, by linear algebra on jets:
/// p(v) = −Σ_{I ⊆ [r]} (−1)^{|I|} ℓ(v + e_I).
pub fn jets_oracle(branches: &[Branch], bound: u64) -> Result<PlainSeries> {
    if branches.is_empty() {
        return Err(Error::Input("no branches".into()));
    }
    let r = branches.len();
    let field = branches[0].field().clone();
    let vmax = bound as usize + 1;
    let mult = branches.iter().map(|b| b.multiplicity()).min().unwrap();
    // Monomials of degree ≥ k lie in every J(v) with v ≤ vmax.
    let k = vmax.div_ceil(mult);
    if k + 1 > JET_CAP {
        return Err(Error::JetBound(JET_CAP));
    }
    let monomials = |deg: usize| -> Vec<(u32, u32)> {
        (0..deg).flat_map(|d| (0..=d).map(move |a| (a as u32, (d - a) as u32))).collect()
    };
    let rows_for = |deg: usize| -> Vec<Vec<Vec<CycloNum>>> {
        let mons = monomials(deg);
        branches
            .iter()
            .map(|b| {
                let vals: Vec<Poly1> = mons.iter().map(|&(a, c)| truncated_pow(b, a, c, vmax)).collect();
                (0..vmax).map(|j| vals.iter().map(|p| p.coeff(j)).collect()).collect()
            })
            .collect()
    };
    let rows = rows_for(k);
    // Certify the degree bound: one more degree adds no constraint.
    let full_rank = |rows: &[Vec<Vec<CycloNum>>]| linalg::rank(rows.iter().flatten().cloned().collect());
    if full_rank(&rows) != full_rank(&rows_for(k + 1)) {
        return Err(Error::JetBound(k));
    }

    let limit = bound as usize + r;
    let mut ell: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut v = vec![0usize; r];
    walk(0, Echelon { rows: vec![] }, &rows, &mut v, vmax, limit, &mut ell);

    let mut out = PlainSeries::zero(r, bound);
    for (vv, _) in ell.iter().filter(|(vv, _)| vv.iter().sum::<usize>() as u64 <= bound) {
        let mut p: i64 = 0;
        for mask in 0u32..(1 << r) {
            let shifted: Vec<usize> = (0..r).map(|i| vv[i] + ((mask >> i) & 1) as usize).collect();
            let l = ell[&shifted] as i64;
            p += if mask.count_ones() % 2 == 0 { l } else { -l };
        }
        out.add_term(vv.iter().map(|&x| x as u64).collect(), -p);
    }
    let _ = field;
    Ok(out)
}

fn walk(
    level: usize,
    ech: Echelon,
    rows: &[Vec<Vec<CycloNum>>],
    v: &mut Vec<usize>,
    vmax: usize,
    limit: usize,
    out: &mut HashMap<Vec<usize>, usize>,
) {
    let r = v.len();
    let used: usize = v[..level].iter().sum();
    let mut e = ech;
    for k in 0..=vmax {
        if used + k > limit {
            break;
        }
        if k > 0 {
            e.insert(&rows[level][k - 1]);
        }
        v[level] = k;
        if level + 1 == r {
            out.insert(v.clone(), e.rank());
        } else {
            walk(level + 1, e.clone(), rows, v, vmax, limit, out);
        }
    }
    v[level] = 0;
}

fn truncated_pow(b: &Branch, a: u32, c: u32, n: usize) -> Poly1 {
    let trunc = |p: Poly1| Poly1::new(p.field(), p.coeffs().iter().take(n).cloned().collect());
    let mut acc = Poly1::constant(CycloNum::one(b.field()));
    for _ in 0..a {
        acc = trunc(acc.mul(b.x()));
    }
    for _ in 0..c {
        acc = trunc(acc.mul(b.y()));
    }
    acc
}

/// Which coordinate a tail of E₁ recovers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TailLabel {
    /// Points infinitely near the y-axis direction; curvettes have linear part x.
    X,
    /// Points infinitely near the x-axis direction; curvettes have linear part y.
    Y,
    /// E₁ has no special points: the action is scalar.
    Scalar,
}

/// Output of [`infer_representation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inferred {
    pub chi_x: Option<Character>,
    pub chi_y: Option<Character>,
    /// Set when E₁ has no special points.
    pub scalar: Option<Character>,
    /// (factor index, component, label) for every factor used.
    pub evidence: Vec<(usize, usize, TailLabel)>,
    /// Set when w does not tell the two tails apart, so χx and χy are
    /// only known as a pair.
    pub ambiguous: bool,
}

/// Reads the characters of the plane representation off the one-point
/// factors (1 − T)^{s}, s < 0, that belong to points with a smooth curvette.
pub fn infer_representation(form: &AcampoForm, graph: &ResolutionGraph) -> Result<Inferred> {
    let res = &graph.res;
    let grp = res.action.group();
    let e1 = &res.components[0];
    let field = res.action.field();

    // Points fixed by G whose curvette is smooth, with their labels.
    let mut candidates: Vec<(usize, Position, TailLabel)> = Vec::new();
    for c in &res.components {
        if c.stabilizer.order() != grp.order() || graph.neg_inv(c.id, 0, 0, 0) != 1 {
            continue;
        }
        let removed = res.removed_positions(c.id);
        let mut pts: Vec<Position> = Vec::new();
        if c.has_special_points() {
            pts.push(Position::Finite(CycloNum::zero(field)));
            pts.push(Position::Infinity);
        } else {
            pts.push(Position::Finite(res.generic_position(c.id)));
        }
        for p in pts {
            if removed.contains(&p) {
                continue;
            }
            let anchor = if c.id == 0 { Some(p.clone()) } else { c.e1_position.clone() };
            let label = if !e1.has_special_points() {
                TailLabel::Scalar
            } else {
                match anchor {
                    Some(Position::Infinity) => TailLabel::X,
                    Some(Position::Finite(z)) if z.is_zero() => TailLabel::Y,
                    _ => continue,
                }
            };
            candidates.push((c.id, p, label));
        }
    }

    // Labels each qualifying factor could belong to, judged by w.
    let mut options: Vec<(usize, &GRClass, Vec<(usize, TailLabel)>)> = Vec::new();
    for (idx, (t, s)) in form.factors().enumerate() {
        if s >= 0 || t.stabilizer().order() != grp.order() {
            continue;
        }
        let mut labels = Vec::new();
        for (comp, pos, label) in &candidates {
            if w_vector(graph, *comp, pos)?[0] == t.w()[0] && !labels.iter().any(|(_, l)| l == label) {
                labels.push((*comp, *label));
            }
        }
        if !labels.is_empty() {
            options.push((idx, t, labels));
        }
    }
    let mut found: BTreeMap<TailLabel, LocalChar> = BTreeMap::new();
    let mut evidence = Vec::new();
    for (idx, t, labels) in options.iter().filter(|o| o.2.len() == 1) {
        let (comp, label) = labels[0];
        if found.get(&label).is_some_and(|prev| prev != t.alpha()) {
            return Err(Error::Inference(format!("conflicting characters for tail {label:?}")));
        }
        found.insert(label, t.alpha().clone());
        evidence.push((*idx, comp, label));
    }
    let mut ambiguous = false;
    for (idx, t, labels) in options.iter().filter(|o| o.2.len() > 1) {
        if let Some(&(comp, label)) = labels.iter().find(|(_, l)| found.get(l) == Some(t.alpha())) {
            evidence.push((*idx, comp, label));
            continue;
        }
        let open: Vec<&(usize, TailLabel)> = labels.iter().filter(|(_, l)| !found.contains_key(l)).collect();
        let Some(&&(comp, label)) = open.first() else {
            return Err(Error::Inference(format!("factor {idx} fits no remaining tail")));
        };
        ambiguous |= open.len() > 1;
        found.insert(label, t.alpha().clone());
        evidence.push((*idx, comp, label));
    }
    evidence.sort();
    if found.is_empty() {
        return Err(Error::Inference(
            "no factor (1 - T)^s with s < 0 and a one-point class matches a point with a smooth curvette".into(),
        ));
    }
    let to_char = |l: TailLabel| found.get(&l).map(|a| Character::from_values(grp, a)).transpose();
    let scalar = to_char(TailLabel::Scalar)?;
    let (chi_x, chi_y) = match &scalar {
        Some(c) => (Some(c.clone()), Some(c.clone())),
        None => (to_char(TailLabel::X)?, to_char(TailLabel::Y)?),
    };
    Ok(Inferred { chi_x, chi_y, scalar, evidence, ambiguous })
}

/// Reasons why a collection of branches falls outside the hypotheses under
/// which the equivariant series determines the topology; empty means pass.
pub fn check_determination_hypotheses(branches: &[Branch], action: &GroupAction2) -> Result<Vec<String>> {
    let grp = action.group();
    let mut reasons = Vec::new();
    let eqs: Vec<_> = branches.iter().map(|b| implicitize(b).map(|f| f.equation().clone())).collect::<Result<_>>()?;
    for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            let same_orbit = grp.elements().any(|g| {
                implicitize(&act_on_branch(g, &branches[i], action)).map(|f| f.equation() == &eqs[j]).unwrap_or(false)
            });
            if same_orbit {
                reasons.push(format!("branches {} and {} lie in one G-orbit", branches[i].name(), branches[j].name()));
            }
        }
    }
    for b in branches {
        if !b.is_smooth() {
            continue;
        }
        let iso = branch_isotropy(b, action)?;
        if let Some(&g) = iso.elements().iter().find(|&&g| !action.is_scalar(g)) {
            reasons.push(format!(
                "smooth invariant branch {} under non-scalar element {}",
                b.name(),
                grp.decode(g).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
    }
    Ok(reasons)
}

/// Outcome of [`compare_series`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesVerdict {
    Equal,
    /// The first class, in canonical order, whose exponents differ.
    Different { class: GRClass, left: i64, right: i64 },
}

/// Compares two finite products exactly.
pub fn compare_series(a: &AcampoForm, b: &AcampoForm) -> SeriesVerdict {
    let ea: BTreeMap<&GRClass, i64> = a.factors().collect();
    let eb: BTreeMap<&GRClass, i64> = b.factors().collect();
    let mut keys: Vec<&GRClass> = ea.keys().chain(eb.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    for k in keys {
        let (l, r) = (ea.get(k).copied().unwrap_or(0), eb.get(k).copied().unwrap_or(0));
        if l != r {
            return SeriesVerdict::Different { class: k.clone(), left: l, right: r };
        }
    }
    SeriesVerdict::Equal
}

/// True if `graph` has a point stratum; used by callers that want to report
/// special-point data.
pub fn has_point_strata(graph: &ResolutionGraph) -> Result<bool> {
    Ok(crate::resgraph::stratify(graph)?.iter().any(|s| s.kind == StratumKind::Point))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_branch(name: &str, x: &[i64], y: &[i64]) -> Branch {
        Branch::from_ints(name, &crate::algebra::CycloField::new(1), x, y).unwrap()
    }

    fn coeffs(s: &PlainSeries, n: u64) -> Vec<i64> {
        (0..=n).map(|k| s.coeff(&[k])).collect()
    }

    #[test]
    fn cusp_plain_and_oracle() {
        let cusp = q_branch("C", &[0, 0, 1], &[0, 0, 0, 1]);
        let vs = ValuationSet::new(GroupAction2::trivial(), Mode::Curves, vec![cusp.clone()]).unwrap();
        let g = vs.resolve().unwrap();
        let (f, s) = plain_poincare(&g, 12).unwrap();
        assert_eq!(f.factors().get(&vec![2]), Some(&-1));
        assert_eq!(f.factors().get(&vec![3]), Some(&-1));
        assert_eq!(f.factors().get(&vec![6]), Some(&1));
        assert_eq!(coeffs(&s, 12), vec![1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(jets_oracle(&[cusp], 12).unwrap(), s);
    }

    #[test]
    fn transversal_lines() {
        let a = q_branch("A", &[0, 1], &[]);
        let b = q_branch("B", &[], &[0, 1]);
        let vs = ValuationSet::new(GroupAction2::trivial(), Mode::Curves, vec![a.clone(), b.clone()]).unwrap();
        let (_, s) = plain_poincare(&vs.resolve().unwrap(), 8).unwrap();
        assert_eq!(s, PlainSeries::one(2, 8));
        assert_eq!(jets_oracle(&[a, b], 8).unwrap(), s);
    }

    #[test]
    fn smooth_line() {
        let a = q_branch("A", &[0, 1], &[0, 0, 3]);
        let vs = ValuationSet::new(GroupAction2::trivial(), Mode::Curves, vec![a.clone()]).unwrap();
        let (_, s) = plain_poincare(&vs.resolve().unwrap(), 6).unwrap();
        assert_eq!(coeffs(&s, 6), vec![1; 7]);
        assert_eq!(jets_oracle(&[a], 6).unwrap(), s);
    }

    fn example1(primed: bool) -> ValuationSet {
        let act = GroupAction2::cyclic(15, 3, 5).unwrap();
        let f = act.field().clone();
        let bs = if primed {
            vec![
                Branch::from_ints("C1", &f, &[], &[0, 1]).unwrap(),
                Branch::from_ints("C2", &f, &[0, 1], &[]).unwrap(),
                Branch::from_ints("C3", &f, &[0, 0, 1], &[0, 1]).unwrap(),
            ]
        } else {
            vec![
                Branch::from_ints("C1", &f, &[0, 1], &[]).unwrap(),
                Branch::from_ints("C2", &f, &[], &[0, 1]).unwrap(),
                Branch::from_ints("C3", &f, &[0, 1], &[0, 0, 1]).unwrap(),
            ]
        };
        ValuationSet::new(act, Mode::Curves, bs).unwrap()
    }

    #[test]
    fn example1_series() {
        let g = example1(false).resolve().unwrap();
        let (form, _) = equivariant_poincare(&g, 10).unwrap();
        let grp = g.res.action.group().clone();
        let mut expected = AcampoForm::new();
        expected.push(GRClass::free(&grp, vec![2, 1, 2]), 1);
        assert_eq!(form, expected);
        let gp = example1(true).resolve().unwrap();
        let (form_p, _) = equivariant_poincare(&gp, 10).unwrap();
        assert_eq!(compare_series(&form, &form_p), SeriesVerdict::Equal);
    }

    #[test]
    fn shift_extension_reduces_to_plain() {
        let g = example1(false).resolve().unwrap();
        let (form, _) = equivariant_poincare(&g, 10).unwrap();
        let ext = extend_to_shifts(&g, &form).unwrap();
        let grp = g.res.action.group().clone();
        let ring = GrRing::new(grp, 45, 10);
        let (plain, _) = plain_poincare_shifted(&g, 10).unwrap();
        assert_eq!(ring.reduce_acampo(&ext), plain);
        assert_eq!(plain.factors().values().copied().collect::<Vec<_>>(), vec![15]);
    }

    #[test]
    fn example3_inference() {
        let act = GroupAction2::cyclic(15, 3, 5).unwrap();
        let f = act.field().clone();
        let bs = vec![
            Branch::from_ints("L1", &f, &[0, 1], &[0, 0, 1]).unwrap(),
            Branch::from_ints("L2", &f, &[0, 1], &[0, 0, -1]).unwrap(),
        ];
        let vs = ValuationSet::new(act.clone(), Mode::Divisorial, bs).unwrap();
        let g = vs.resolve().unwrap();
        let (form, _) = equivariant_poincare(&g, 6).unwrap();
        assert_eq!(form.len(), 2);
        assert!(form.factors().all(|(t, s)| s == -1 && t.size() == 1));
        let inf = infer_representation(&form, &g).unwrap();
        assert_eq!(inf.chi_x.as_ref(), Some(act.chi_x()));
        assert_eq!(inf.chi_y.as_ref(), Some(act.chi_y()));
    }

    #[test]
    fn scalar_inference() {
        let act = GroupAction2::cyclic(3, 1, 1).unwrap();
        let f = act.field().clone();
        let bs = vec![
            Branch::from_ints("L1", &f, &[0, 1], &[0, 0, 1]).unwrap(),
            Branch::from_ints("L2", &f, &[0, 1], &[0, 0, -1]).unwrap(),
        ];
        let vs = ValuationSet::new(act.clone(), Mode::Divisorial, bs).unwrap();
        let g = vs.resolve().unwrap();
        let (form, _) = equivariant_poincare(&g, 6).unwrap();
        let inf = infer_representation(&form, &g).unwrap();
        assert_eq!(inf.scalar.as_ref(), Some(act.chi_x()));
    }

    #[test]
    fn determination_hypotheses() {
        let act = GroupAction2::cyclic(15, 3, 5).unwrap();
        let f = act.field().clone();
        let bs = example1(false).branches;
        let reasons = check_determination_hypotheses(&bs, &act).unwrap();
        assert!(reasons.iter().any(|r| r.contains("C1")));
        let cusp = Branch::from_ints("K", &f, &[0, 0, 1], &[0, 0, 0, 1]).unwrap();
        assert!(check_determination_hypotheses(&[cusp], &act).unwrap().is_empty());
        let sc = GroupAction2::cyclic(3, 1, 1).unwrap();
        let line = Branch::from_ints("L", sc.field(), &[0, 1], &[]).unwrap();
        assert!(check_determination_hypotheses(&[line], &sc).unwrap().is_empty());
        let p = Branch::from_ints("P", &f, &[0, 1], &[0, 0, 1]).unwrap();
        let moved = act_on_branch(1, &p, &act).with_name("Q");
        assert!(check_determination_hypotheses(&[p, moved], &act).unwrap()[0].contains("one G-orbit"));
    }
}
