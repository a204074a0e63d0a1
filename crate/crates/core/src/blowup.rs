//! The equivariant resolution engine.
//!
//! Only one representative of every orbit of infinitely near points is
//! tracked. A point with local coordinates (u, v), on which the stabilizer H
//! acts by the characters (a, b), blows up to a component E' with coordinate
//! v/u. The fixed points 0 and ∞ of E' carry the characters (a, b − a) and
//! (b, a − b); every other point carries (a, b − a) and is fixed exactly by
//! the kernel of b − a in H.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Character, CycloNum, Elem, Poly1, Poly2, RatFunc, Subgroup};
use crate::curves::{branch_orbit, implicitize, Branch, GroupAction2};
use crate::error::{Error, Result};

/// Hard cap on the number of orbit blow-ups in one run.
pub const MAX_BLOWUPS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Curves,
    Divisorial,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Curves => "curves",
            Mode::Divisorial => "divisorial",
        })
    }
}

/// A point of an exceptional component, in the coordinate v/u it was
/// created with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Finite(CycloNum),
    Infinity,
}

impl Position {
    pub fn is_fixed(&self) -> bool {
        match self {
            Position::Finite(c) => c.is_zero(),
            Position::Infinity => true,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Finite(c) => write!(f, "{c}"),
            Position::Infinity => f.write_str("inf"),
        }
    }
}

/// How a component's centre sits on the earlier divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Centre {
    Origin,
    /// The centre lay on these components, at these positions.
    On(Vec<(usize, Position)>),
}

/// A representative of an orbit of exceptional components.
#[derive(Clone, Debug)]
pub struct Component {
    pub id: usize,
    /// G_σ, the stabilizer of the centre.
    pub stabilizer: Subgroup,
    /// G*_σ, the pointwise stabilizer of the component.
    pub generic_stabilizer: Subgroup,
    /// Characters (a, b) of the centre's local coordinates.
    pub centre_chars: (Character, Character),
    pub nu: u64,
    pub self_intersection: i64,
    pub centre: Centre,
    /// The map from the centre's local coordinates down to (x, y).
    pub chart: (Poly2, Poly2),
    /// Position on E₁ of the point this component descends from.
    pub e1_position: Option<Position>,
}

impl Component {
    /// Character of the stabilizer on the coordinate v/u of the component.
    pub fn tangent_char(&self, action: &GroupAction2) -> Character {
        let g = action.group();
        self.centre_chars.1.sub(g, &self.centre_chars.0)
    }

    pub fn has_special_points(&self) -> bool {
        self.generic_stabilizer != self.stabilizer
    }

    /// [G_σ : G*_σ].
    pub fn generic_index(&self) -> usize {
        self.stabilizer.order() / self.generic_stabilizer.order()
    }

    /// Characters (γ_u, γ_v) of the normal and tangent coordinates at a point.
    pub fn point_chars(&self, pos: &Position, action: &GroupAction2) -> (Character, Character) {
        let g = action.group();
        let (a, b) = &self.centre_chars;
        match pos {
            Position::Infinity => (b.clone(), a.sub(g, b)),
            Position::Finite(_) => (a.clone(), b.sub(g, a)),
        }
    }

    pub fn point_stabilizer(&self, pos: &Position) -> &Subgroup {
        if pos.is_fixed() {
            &self.stabilizer
        } else {
            &self.generic_stabilizer
        }
    }

    /// Number of points in the G_σ-orbit of `pos` on this component.
    pub fn orbit_size(&self, pos: &Position) -> usize {
        if pos.is_fixed() {
            1
        } else {
            self.generic_index()
        }
    }

    /// The G_σ-orbit of a finite position.
    pub fn position_orbit(&self, c: &CycloNum, action: &GroupAction2) -> Vec<CycloNum> {
        let t = self.tangent_char(action);
        orbit_of(c, &t, &self.stabilizer, action)
    }
}

fn orbit_of(c: &CycloNum, chi: &Character, h: &Subgroup, action: &GroupAction2) -> Vec<CycloNum> {
    let mut out: Vec<CycloNum> =
        h.elements().iter().map(|&g| c * &action.zeta(chi.eval(action.group(), g) as i64)).collect();
    out.sort();
    out.dedup();
    out
}

/// Two representative components meeting at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub a: usize,
    pub pos_a: Position,
    pub b: usize,
    pub pos_b: Position,
}

impl Crossing {
    pub fn position_on(&self, comp: usize) -> Option<&Position> {
        if self.a == comp {
            Some(&self.pos_a)
        } else if self.b == comp {
            Some(&self.pos_b)
        } else {
            None
        }
    }

    pub fn other(&self, comp: usize) -> usize {
        if self.a == comp {
            self.b
        } else {
            self.a
        }
    }
}

/// A resolved strict transform meeting a representative component.
#[derive(Clone, Debug)]
pub struct Attachment {
    /// Labels (i, g): this germ equals g·C_i.
    pub labels: Vec<(usize, Elem)>,
    pub component: usize,
    pub position: Position,
    pub branch: Branch,
}

/// The output of [`resolve`].
#[derive(Clone, Debug)]
pub struct EqResolution {
    pub action: GroupAction2,
    pub mode: Mode,
    /// Input branches; in divisorial mode the curvettes of pair k are 2k, 2k+1.
    pub branches: Vec<Branch>,
    pub components: Vec<Component>,
    pub crossings: Vec<Crossing>,
    pub attachments: Vec<Attachment>,
    /// Marked expanded vertex (component, coset representative) per pair.
    pub marked: Vec<(usize, Elem)>,
}

impl EqResolution {
    /// Where g·C_i attaches: representative component and coset representative.
    pub fn attachment_of(&self, i: usize, g: Elem) -> (usize, Elem) {
        let grp = self.action.group();
        for att in &self.attachments {
            if let Some(&(_, g0)) = att.labels.iter().find(|(j, _)| *j == i) {
                let comp = &self.components[att.component];
                return (att.component, comp.stabilizer.coset_rep(grp, grp.sub(g, g0)));
            }
        }
        unreachable!("every input branch has a tracked translate")
    }

    /// Orbit size |G| / |G_σ|.
    pub fn orbit_size(&self, comp: usize) -> usize {
        self.action.group().order() / self.components[comp].stabilizer.order()
    }

    pub fn crossings_of(&self, comp: usize) -> impl Iterator<Item = &Crossing> {
        self.crossings.iter().filter(move |c| c.a == comp || c.b == comp)
    }

    pub fn attachments_on(&self, comp: usize) -> impl Iterator<Item = &Attachment> {
        self.attachments.iter().filter(move |a| a.component == comp)
    }

    /// Positions on a component that are not in its smooth part for the
    /// current mode: crossings, and strict transforms in mode curves.
    pub fn removed_positions(&self, comp: usize) -> Vec<Position> {
        let mut out: Vec<Position> = self.crossings_of(comp).map(|c| c.position_on(comp).unwrap().clone()).collect();
        if self.mode == Mode::Curves {
            out.extend(self.attachments_on(comp).map(|a| a.position.clone()));
        }
        out.sort();
        out
    }

    /// A nonzero integer position outside the orbits of every marked point.
    pub fn generic_position(&self, comp: usize) -> CycloNum {
        let field = self.action.field();
        let c = &self.components[comp];
        let mut bad: Vec<CycloNum> = Vec::new();
        let marks = self
            .crossings_of(comp)
            .map(|x| x.position_on(comp).unwrap().clone())
            .chain(self.attachments_on(comp).map(|a| a.position.clone()));
        for p in marks {
            if let Position::Finite(v) = p {
                bad.extend(c.position_orbit(&v, &self.action));
            }
        }
        (1..)
            .map(|k| CycloNum::from_int(field, k))
            .find(|v| !bad.contains(v))
            .expect("finitely many bad values")
    }

    /// Pushes the curvette through `pos`, transversal to the component, down
    /// to (C², 0).
    pub fn pushdown_curvette(&self, comp: usize, pos: &Position) -> Result<Branch> {
        if self.crossings_of(comp).any(|c| c.position_on(comp) == Some(pos)) {
            return Err(Error::NotSmoothPoint(format!("E{} at {}", comp + 1, pos)));
        }
        let field = self.action.field();
        let (xm, ym) = &self.components[comp].chart;
        let t = Poly1::var(field);
        let zero = Poly1::zero(field);
        let (u, v) = match pos {
            Position::Finite(c) => (t.clone(), t.scale(c)),
            Position::Infinity => (zero, t),
        };
        let name = format!("L(E{},{})", comp + 1, pos);
        Ok(Branch::local(name, eval2(xm, &u, &v), eval2(ym, &u, &v)))
    }
}

fn eval2(f: &Poly2, u: &Poly1, v: &Poly1) -> Poly1 {
    f.eval_param(u, v)
}

struct Tracked {
    id: usize,
    u: RatFunc,
    v: RatFunc,
}

struct CurveInfo {
    labels: Vec<(usize, Elem)>,
    branch: Branch,
}

struct Point {
    on_u: Option<(usize, Position)>,
    on_v: Option<(usize, Position)>,
    stab: Subgroup,
    a: Character,
    b: Character,
    chart: (Poly2, Poly2),
    curves: Vec<Tracked>,
}

impl Point {
    fn resolved(&self) -> bool {
        self.on_u.is_some()
            && self.on_v.is_none()
            && self.curves.len() == 1
            && self.curves[0].u.ord() == Some(1)
    }
}

/// Resolves the orbit-closed union of the branches to normal crossings.
///
/// In mode divisorial the branches are consecutive curvette pairs, and the
/// component on which both curvettes of a pair end is marked.
pub fn resolve(action: &GroupAction2, branches: &[Branch], mode: Mode) -> Result<EqResolution> {
    let field = action.field().clone();
    let grp = action.group();
    for b in branches {
        if b.field() != &field {
            return Err(Error::ModulusMismatch(b.field().modulus(), field.modulus()));
        }
    }
    if branches.is_empty() {
        return Err(Error::Input("no branches".into()));
    }
    if mode == Mode::Divisorial && branches.len() % 2 != 0 {
        return Err(Error::Input("divisorial mode needs curvette pairs".into()));
    }

    // All distinct germs g·C_i, with their labels.
    let mut curves: Vec<CurveInfo> = Vec::new();
    let mut equations: Vec<Poly2> = Vec::new();
    for (i, b) in branches.iter().enumerate() {
        let own = implicitize(b)?;
        if mode == Mode::Curves {
            if let Some(j) = equations.iter().position(|e| e == own.equation()) {
                let other = curves[j].labels.iter().find(|l| l.1 == 0).map(|l| l.0);
                if let Some(j) = other {
                    return Err(Error::CoincidentBranches(branches[j].name().into(), b.name().into()));
                }
            }
        }
        for (g, moved) in branch_orbit(b, action)? {
            let eq = implicitize(&moved)?.equation().clone();
            match equations.iter().position(|e| *e == eq) {
                Some(k) => curves[k].labels.push((i, g)),
                None => {
                    equations.push(eq);
                    curves.push(CurveInfo { labels: vec![(i, g)], branch: moved });
                }
            }
        }
    }

    let origin = Point {
        on_u: None,
        on_v: None,
        stab: grp.whole(),
        a: action.chi_x().clone(),
        b: action.chi_y().clone(),
        chart: (Poly2::x(&field), Poly2::y(&field)),
        curves: curves
            .iter()
            .enumerate()
            .map(|(id, c)| Tracked {
                id,
                u: RatFunc::from_poly(c.branch.x().clone()),
                v: RatFunc::from_poly(c.branch.y().clone()),
            })
            .collect(),
    };

    let mut components: Vec<Component> = Vec::new();
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut attachments: Vec<Attachment> = Vec::new();
    let mut queue: VecDeque<Point> = VecDeque::from([origin]);
    let mut first = true;

    while let Some(p) = queue.pop_front() {
        if !first && p.resolved() {
            let (comp, pos) = p.on_u.clone().unwrap();
            let info = &curves[p.curves[0].id];
            attachments.push(Attachment {
                labels: info.labels.clone(),
                component: comp,
                position: pos,
                branch: info.branch.clone(),
            });
            continue;
        }
        first = false;
        if components.len() >= MAX_BLOWUPS {
            return Err(Error::Precondition(format!("resolution exceeded {MAX_BLOWUPS} blow-ups")));
        }
        let children = blow_up(action, p, &mut components, &mut crossings)?;
        queue.extend(children);
    }

    let mut res = EqResolution {
        action: action.clone(),
        mode,
        branches: branches.to_vec(),
        components,
        crossings,
        attachments,
        marked: Vec::new(),
    };
    if mode == Mode::Divisorial {
        for k in 0..branches.len() / 2 {
            let (c1, g1) = res.attachment_of(2 * k, grp.identity());
            let (c2, g2) = res.attachment_of(2 * k + 1, grp.identity());
            if (c1, g1) != (c2, g2) {
                return Err(Error::CurvettePair(
                    format!("({}, {})", branches[2 * k].name(), branches[2 * k + 1].name()),
                    "strict transforms end on different components".into(),
                ));
            }
            res.marked.push((c1, g1));
        }
    }
    Ok(res)
}

/// Blows up the orbit of `p`, returning the tracked points on the new
/// component that still carry strict transforms.
fn blow_up(
    action: &GroupAction2,
    p: Point,
    components: &mut Vec<Component>,
    crossings: &mut Vec<Crossing>,
) -> Result<Vec<Point>> {
    let grp = action.group();
    let field = action.field();
    let id = components.len();
    let h = p.stab.clone();
    let tangent = p.b.sub(grp, &p.a);
    let generic = tangent.kernel_in(grp, &h);

    let mut nu = 1;
    let mut on = Vec::new();
    for (c, pos) in p.on_u.iter().chain(p.on_v.iter()) {
        nu += components[*c].nu;
        let drop = components[*c].stabilizer.index_of(&h)?;
        components[*c].self_intersection -= drop as i64;
        on.push((*c, pos.clone()));
    }
    let e1_position = match (&p.on_u, &p.on_v) {
        (None, _) => None,
        (Some((0, pos)), _) | (_, Some((0, pos))) => Some(pos.clone()),
        (Some((c, _)), _) => components[*c].e1_position.clone(),
    };

    // The centre stops being a crossing; both old components now meet E'.
    crossings.retain(|x| {
        !(p.on_u.as_ref().is_some_and(|u| x.position_on(u.0) == Some(&u.1))
            && p.on_v.as_ref().is_some_and(|v| x.position_on(v.0) == Some(&v.1)))
    });
    let zero = Position::Finite(CycloNum::zero(field));
    if let Some((c, pos)) = &p.on_v {
        crossings.push(Crossing { a: *c, pos_a: pos.clone(), b: id, pos_b: zero.clone() });
    }
    if let Some((c, pos)) = &p.on_u {
        crossings.push(Crossing { a: *c, pos_a: pos.clone(), b: id, pos_b: Position::Infinity });
    }

    components.push(Component {
        id,
        stabilizer: h.clone(),
        generic_stabilizer: generic.clone(),
        centre_chars: (p.a.clone(), p.b.clone()),
        nu,
        self_intersection: -1,
        centre: if on.is_empty() { Centre::Origin } else { Centre::On(on) },
        chart: p.chart.clone(),
        e1_position,
    });

    // Split the strict transforms among the points of E'.
    let (xm, ym) = &p.chart;
    let mut at_zero = Vec::new();
    let mut at_inf = Vec::new();
    let mut at_generic: BTreeMap<CycloNum, Vec<Tracked>> = BTreeMap::new();
    for c in p.curves {
        let ou = c.u.ord();
        let ov = c.v.ord();
        let cmp = match (ou, ov) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => unreachable!("strict transform vanishes identically"),
        };
        match cmp {
            std::cmp::Ordering::Less => {
                let v1 = c.v.div(&c.u)?;
                at_zero.push(Tracked { id: c.id, u: c.u, v: v1 });
            }
            std::cmp::Ordering::Greater => {
                let v1 = c.u.div(&c.v)?;
                at_inf.push(Tracked { id: c.id, u: c.v, v: v1 });
            }
            std::cmp::Ordering::Equal => {
                let slope = c.v.div(&c.u)?;
                let s = slope.leading_coeff().unwrap();
                let canon = orbit_of(&s, &tangent, &h, action).into_iter().next().unwrap();
                if canon == s {
                    let v1 = slope.sub_const(&s);
                    at_generic.entry(s).or_default().push(Tracked { id: c.id, u: c.u, v: v1 });
                }
            }
        }
    }

    let u = Poly2::x(field);
    let v = Poly2::y(field);
    let mut out = Vec::new();
    if !at_zero.is_empty() {
        out.push(Point {
            on_u: Some((id, zero.clone())),
            on_v: p.on_v.clone(),
            stab: h.clone(),
            a: p.a.clone(),
            b: tangent.clone(),
            chart: (xm.compose(&u, &u.mul(&v)), ym.compose(&u, &u.mul(&v))),
            curves: at_zero,
        });
    }
    if !at_inf.is_empty() {
        out.push(Point {
            on_u: Some((id, Position::Infinity)),
            on_v: p.on_u.clone(),
            stab: h.clone(),
            a: p.b.clone(),
            b: p.a.sub(grp, &p.b),
            chart: (xm.compose(&u.mul(&v), &u), ym.compose(&u.mul(&v), &u)),
            curves: at_inf,
        });
    }
    for (c, list) in at_generic {
        let shifted = u.mul(&v).add(&u.scale(&c));
        out.push(Point {
            on_u: Some((id, Position::Finite(c.clone()))),
            on_v: None,
            stab: generic.clone(),
            a: p.a.clone(),
            b: tangent.clone(),
            chart: (xm.compose(&u, &shifted), ym.compose(&u, &shifted)),
            curves: list,
        });
    }
    Ok(out)
}
