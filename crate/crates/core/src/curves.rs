//! Plane branches given by polynomial parametrizations, and the diagonal
//! group action on them.

use std::fmt;
use std::sync::Arc;

use crate::algebra::poly::small_rational;
use crate::algebra::{resultant, AbelianGroup, Character, CycloField, CycloNum, Elem, LocalChar, Poly1, Poly2, Subgroup};
use crate::error::{Error, Result};

/// An irreducible germ at the origin, t ↦ (x(t), y(t)).
#[derive(Clone, PartialEq, Eq)]
pub struct Branch {
    name: String,
    x: Poly1,
    y: Poly1,
}

impl Branch {
    pub fn new(name: impl Into<String>, x: Poly1, y: Poly1) -> Result<Self> {
        let name = name.into();
        if x.is_zero() && y.is_zero() {
            return Err(Error::Input(format!("branch {name}: both coordinates vanish identically")));
        }
        if !x.coeff(0).is_zero() || !y.coeff(0).is_zero() {
            return Err(Error::Input(format!("branch {name}: parametrization does not pass through the origin")));
        }
        if x.field() != y.field() {
            return Err(Error::ModulusMismatch(x.field().modulus(), y.field().modulus()));
        }
        if meets_origin_again(&x, &y) {
            return Err(Error::Precondition(format!(
                "branch {name}: parametrization passes through the origin at a nonzero parameter"
            )));
        }
        Ok(Branch { name, x, y })
    }

    /// A germ whose global parametrization may return to the origin; its
    /// implicit equation is then not the germ's equation.
    pub(crate) fn local(name: impl Into<String>, x: Poly1, y: Poly1) -> Self {
        Branch { name: name.into(), x, y }
    }

    /// Convenience constructor from integer coefficient lists.
    pub fn from_ints(name: &str, field: &Arc<CycloField>, x: &[i64], y: &[i64]) -> Result<Self> {
        Branch::new(name, Poly1::from_ints(field, x), Poly1::from_ints(field, y))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn x(&self) -> &Poly1 {
        &self.x
    }

    pub fn y(&self) -> &Poly1 {
        &self.y
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.x.field()
    }

    pub fn with_name(&self, name: impl Into<String>) -> Branch {
        Branch { name: name.into(), ..self.clone() }
    }

    /// min(ord x, ord y).
    pub fn multiplicity(&self) -> usize {
        match (self.x.ord(), self.y.ord()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.multiplicity() == 1
    }
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({}, {})", self.name, self.x, self.y)
    }
}

/// The reduced implicit equation of a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitCurve {
    equation: Poly2,
    branch: String,
}

impl ImplicitCurve {
    pub fn equation(&self) -> &Poly2 {
        &self.equation
    }

    pub fn branch_name(&self) -> &str {
        &self.branch
    }
}

/// Computes the implicit equation as the resultant Res_t(x − X(t), y − Y(t)),
/// normalized so its least monomial has coefficient 1.
///
/// Proper powers are rejected, which certifies that the parametrization is
/// primitive.
pub fn implicitize(b: &Branch) -> Result<ImplicitCurve> {
    let field = b.field().clone();
    let equation = if b.x.is_zero() || b.y.is_zero() {
        let (var, other) = if b.x.is_zero() { (Poly2::x(&field), &b.y) } else { (Poly2::y(&field), &b.x) };
        if other.ord() != Some(1) {
            return Err(Error::NonPrimitive(b.name.clone()));
        }
        var
    } else {
        let f = resultant_equation(&b.x, &b.y)?;
        if !certify_reduced(&f) {
            return Err(Error::NonPrimitive(b.name.clone()));
        }
        f.normalized()
    };
    Ok(ImplicitCurve { equation, branch: b.name.clone() })
}

/// Res_t(X(t) − x, Y(t) − y) by evaluation on an integer grid followed by
/// bivariate interpolation.
fn resultant_equation(x: &Poly1, y: &Poly1) -> Result<Poly2> {
    let field = x.field().clone();
    let dx = x.degree().unwrap();
    let dy = y.degree().unwrap();
    let xs: Vec<CycloNum> = (0..=dy as i64).map(|k| small_rational(&field, k)).collect();
    let ys: Vec<CycloNum> = (0..=dx as i64).map(|k| small_rational(&field, k)).collect();
    // For each x0, the univariate polynomial in y.
    let mut rows = Vec::with_capacity(xs.len());
    for x0 in &xs {
        let fx = x.sub(&Poly1::constant(x0.clone()));
        let mut pts = Vec::with_capacity(ys.len());
        for y0 in &ys {
            let gy = y.sub(&Poly1::constant(y0.clone()));
            pts.push((y0.clone(), resultant(&fx, &gy)?));
        }
        rows.push(crate::algebra::poly::interpolate(&pts));
    }
    let mut terms = Vec::new();
    for j in 0..=dx {
        let pts: Vec<(CycloNum, CycloNum)> = xs.iter().zip(&rows).map(|(x0, r)| (x0.clone(), r.coeff(j))).collect();
        let col = crate::algebra::poly::interpolate(&pts);
        for (i, c) in col.coeffs().iter().enumerate() {
            terms.push(((i as u32, j as u32), c.clone()));
        }
    }
    let f = Poly2::from_terms(&field, terms);
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f)
}

/// True if f(x0, y) is squarefree of full y-degree for some integer x0 among
/// enough samples to avoid every root of the discriminant.
fn certify_reduced(f: &Poly2) -> bool {
    let field = f.field().clone();
    let dy = f.degree_y() as i64;
    let dx = f.degree_x() as i64;
    if dy == 0 {
        return f.terms().len() == 1 && f.degree_x() == 1;
    }
    let samples = (2 * dy) * (dx + 1) + 2;
    for k in 1..=samples {
        let p = f.eval_x(&small_rational(&field, k));
        if p.degree() != Some(dy as usize) {
            continue;
        }
        if p.gcd(&p.derivative()).degree() == Some(0) {
            return true;
        }
    }
    false
}

/// True if x and y have a common nonzero root.
pub fn meets_origin_again(x: &Poly1, y: &Poly1) -> bool {
    if x.is_zero() || y.is_zero() {
        return false;
    }
    let g = x.gcd(y);
    g.degree() != g.ord()
}

/// The character of H on the germ's local equation, read off its
/// Weierstrass monomial y^{ord x} (or x^{ord y}, which must agree).
pub fn germ_character(b: &Branch, h: &Subgroup, action: &GroupAction2) -> Result<LocalChar> {
    let grp = &action.group;
    let lambda = match (b.x.ord(), b.y.ord()) {
        (None, _) => action.chi_x.clone(),
        (_, None) => action.chi_y.clone(),
        (Some(a), Some(c)) => {
            let via_y = action.chi_y.scale(grp, a as i64);
            let via_x = action.chi_x.scale(grp, c as i64);
            if via_y.restrict(grp, h) != via_x.restrict(grp, h) {
                return Err(Error::NotSemiInvariant(format!("germ {} under its stabilizer", b.name)));
            }
            via_y
        }
    };
    Ok(lambda.restrict(grp, h))
}

/// ord_t F₂(x₁(t), y₁(t)); `None` means the branches coincide.
pub fn intersection_multiplicity(b1: &Branch, b2: &Branch) -> Result<Option<usize>> {
    let f2 = implicitize(b2)?;
    Ok(order_on(&f2.equation, b1))
}

/// Order of a bivariate polynomial along a branch.
pub fn order_on(f: &Poly2, b: &Branch) -> Option<usize> {
    f.eval_param(&b.x, &b.y).ord()
}

/// A diagonal action g·(x, y) = (ζ^{χx(g)} x, ζ^{χy(g)} y) of a finite
/// abelian group.
#[derive(Clone, Debug)]
pub struct GroupAction2 {
    group: AbelianGroup,
    chi_x: Character,
    chi_y: Character,
    field: Arc<CycloField>,
}

impl GroupAction2 {
    /// Builds a faithful action. The cyclotomic modulus defaults to the
    /// group exponent and must be a multiple of it.
    pub fn new(group: AbelianGroup, chi_x: Character, chi_y: Character, modulus: Option<u32>) -> Result<Self> {
        let e = group.exponent() as u32;
        let n = modulus.unwrap_or(e);
        if n == 0 || n % e != 0 {
            return Err(Error::Input(format!("cyclotomic modulus {n} is not a multiple of the group exponent {e}")));
        }
        let whole = group.whole();
        let kernel = chi_y.kernel_in(&group, &chi_x.kernel_in(&group, &whole));
        if kernel.order() != 1 {
            return Err(Error::NotFaithful(kernel.order()));
        }
        Ok(GroupAction2 { field: CycloField::new(n), group, chi_x, chi_y })
    }

    /// Cyclic group of order n acting with weights (a, b).
    pub fn cyclic(n: u64, a: u64, b: u64) -> Result<Self> {
        let group = AbelianGroup::cyclic(n);
        let cx = Character::new(&group, vec![a])?;
        let cy = Character::new(&group, vec![b])?;
        GroupAction2::new(group, cx, cy, None)
    }

    pub fn trivial() -> Self {
        let group = AbelianGroup::trivial();
        let c = Character::trivial(&group);
        GroupAction2::new(group, c.clone(), c, None).unwrap()
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn chi_x(&self) -> &Character {
        &self.chi_x
    }

    pub fn chi_y(&self) -> &Character {
        &self.chi_y
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn exponent(&self) -> u64 {
        self.group.exponent()
    }

    /// ζ_e^k embedded in the working field.
    pub fn zeta(&self, k: i64) -> CycloNum {
        let step = (self.field.modulus() as u64 / self.exponent()) as i64;
        CycloNum::root_of_unity(&self.field, k * step)
    }

    /// χx(g)·i + χy(g)·j modulo the exponent.
    pub fn weight(&self, g: Elem, i: u32, j: u32) -> u64 {
        let e = self.exponent();
        (self.chi_x.eval(&self.group, g) * i as u64 + self.chi_y.eval(&self.group, g) * j as u64) % e
    }

    /// f ∘ g, i.e. (x, y) ↦ f(g·(x, y)).
    pub fn pull_back(&self, f: &Poly2, g: Elem) -> Poly2 {
        f.twist(|i, j| self.zeta(self.weight(g, i, j) as i64))
    }

    pub fn is_scalar(&self, g: Elem) -> bool {
        self.chi_x.eval(&self.group, g) == self.chi_y.eval(&self.group, g)
    }
}

/// g·B = (ζ^{χx(g)} x(t), ζ^{χy(g)} y(t)).
pub fn act_on_branch(g: Elem, b: &Branch, action: &GroupAction2) -> Branch {
    let cx = action.zeta(action.chi_x.eval(&action.group, g) as i64);
    let cy = action.zeta(action.chi_y.eval(&action.group, g) as i64);
    Branch { name: b.name.clone(), x: b.x.scale(&cx), y: b.y.scale(&cy) }
}

/// Elements g with g·B = B as germs. Since the implicit equation is
/// irreducible, this happens exactly when it is semi-invariant under g.
pub fn branch_isotropy(b: &Branch, action: &GroupAction2) -> Result<Subgroup> {
    let f = implicitize(b)?;
    Ok(equation_isotropy(f.equation(), action))
}

/// Elements under which f is semi-invariant.
pub fn equation_isotropy(f: &Poly2, action: &GroupAction2) -> Subgroup {
    let elems = action.group.elements().filter(|&g| weight_on_support(f, action, g).is_some()).collect();
    Subgroup::from_elements(&action.group, elems).expect("isotropy is a subgroup")
}

fn weight_on_support(f: &Poly2, action: &GroupAction2, g: Elem) -> Option<u64> {
    let mut it = f.support().map(|(i, j)| action.weight(g, i, j));
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

/// The character λ of H with f(h·p) = ζ^{λ(h)} f(p).
pub fn semi_invariant_character(f: &Poly2, h: &Subgroup, action: &GroupAction2) -> Result<LocalChar> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut values = Vec::with_capacity(h.order());
    for &g in h.elements() {
        match weight_on_support(f, action, g) {
            Some(w) => values.push(w),
            None => return Err(Error::NotSemiInvariant(format!("{f} under element {g}"))),
        }
    }
    Ok(LocalChar::from_values(values))
}

/// True if the two branches define the same germ.
pub fn same_germ(a: &Branch, b: &Branch) -> Result<bool> {
    Ok(implicitize(a)?.equation == implicitize(b)?.equation)
}

/// Representatives of the G-orbit of a branch: one element per coset of
/// its isotropy, with the translated branches.
pub fn branch_orbit(b: &Branch, action: &GroupAction2) -> Result<Vec<(Elem, Branch)>> {
    let iso = branch_isotropy(b, action)?;
    Ok(iso.coset_reps(&action.group).into_iter().map(|g| (g, act_on_branch(g, b, action))).collect())
}
