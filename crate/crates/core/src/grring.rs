//! The Grothendieck ring of (G, r)-sets for a finite abelian group:
//! transitive classes, truncated series, products, and A'Campo factorization.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AbelianGroup, Elem, LocalChar, Subgroup};
use crate::error::{Error, Result};

/// Isomorphism class of a transitive (G, r)-set G/H.
///
/// `w[k]` is the weight of the point g_k·x₀, where g_k runs over the
/// canonical coset representatives of H; the base point x₀ is chosen to make
/// this list lexicographically least.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GRClass {
    stabilizer: Subgroup,
    w: Vec<Vec<u64>>,
    alpha: LocalChar,
}

impl GRClass {
    /// Builds the canonical class from weights indexed by `H.coset_reps(G)`.
    pub fn new(group: &AbelianGroup, stabilizer: Subgroup, w: Vec<Vec<u64>>, alpha: LocalChar) -> Result<Self> {
        let reps = stabilizer.coset_reps(group);
        if w.len() != reps.len() {
            return Err(Error::Input(format!("class has {} weights for {} points", w.len(), reps.len())));
        }
        if alpha.values().len() != stabilizer.order() {
            return Err(Error::Input("character does not match the stabilizer".into()));
        }
        let best = reps
            .iter()
            .map(|&d| {
                reps.iter()
                    .map(|&g| w[stabilizer.coset_index(group, &reps, group.add(g, d))].clone())
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap();
        Ok(GRClass { stabilizer, w: best, alpha })
    }

    /// The one-point class with weight `w` and character `alpha` of G.
    pub fn point(group: &AbelianGroup, w: Vec<u64>, alpha: LocalChar) -> Result<Self> {
        GRClass::new(group, group.whole(), vec![w], alpha)
    }

    /// The free orbit with constant weight.
    pub fn free(group: &AbelianGroup, w: Vec<u64>) -> Self {
        let h = group.trivial_subgroup();
        let n = group.order();
        GRClass::new(group, h, vec![w; n], LocalChar::from_values(vec![0])).unwrap()
    }

    pub fn stabilizer(&self) -> &Subgroup {
        &self.stabilizer
    }

    pub fn w(&self) -> &[Vec<u64>] {
        &self.w
    }

    pub fn alpha(&self) -> &LocalChar {
        &self.alpha
    }

    /// Number of points of the orbit.
    pub fn size(&self) -> usize {
        self.w.len()
    }

    /// Least total weight over the orbit.
    pub fn min_degree(&self) -> u64 {
        self.w.iter().map(|v| v.iter().sum::<u64>()).min().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.w.len() == 1 && self.w[0].iter().all(|&v| v == 0) && self.alpha.is_trivial()
    }

    /// Weight of the point g·x₀.
    fn weight_at(&self, group: &AbelianGroup, reps: &[Elem], g: Elem) -> &Vec<u64> {
        &self.w[self.stabilizer.coset_index(group, reps, g)]
    }

    pub fn is_constant_weight(&self) -> bool {
        self.w.iter().all(|v| v == &self.w[0])
    }
}

impl fmt::Display for GRClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.is_constant_weight() {
            format!("{:?}", self.w[0])
        } else {
            format!("{:?}", self.w)
        };
        write!(f, "[G/H |H|={} w={} alpha={:?}]", self.stabilizer.order(), w, self.alpha.values())
    }
}

/// Truncation context: group, number of valuations, degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrRing {
    pub group: AbelianGroup,
    pub r: usize,
    pub bound: u64,
}

/// A truncated element of the ring: integer coefficients on classes of
/// minimal total degree at most the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRSeries {
    ring: GrRing,
    coeffs: BTreeMap<GRClass, i64>,
}

/// A finite product ∏ (1 − T)^{s_T}.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AcampoForm {
    factors: BTreeMap<GRClass, i64>,
}

impl AcampoForm {
    pub fn new() -> Self {
        AcampoForm::default()
    }

    /// Multiplies by (1 − T)^s.
    pub fn push(&mut self, t: GRClass, s: i64) {
        let e = self.factors.entry(t.clone()).or_insert(0);
        *e += s;
        if *e == 0 {
            self.factors.remove(&t);
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (&GRClass, i64)> {
        self.factors.iter().map(|(t, s)| (t, *s))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for AcampoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(t, s)| format!("(1 - {t})^{s}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl GrRing {
    pub fn new(group: AbelianGroup, r: usize, bound: u64) -> Self {
        GrRing { group, r, bound }
    }

    pub fn unit_class(&self) -> GRClass {
        GRClass::point(&self.group, vec![0; self.r], LocalChar::from_values(vec![0; self.group.order()])).unwrap()
    }

    pub fn zero(&self) -> GRSeries {
        GRSeries { ring: self.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(&self) -> GRSeries {
        self.from_class(self.unit_class(), 1)
    }

    pub fn from_class(&self, t: GRClass, c: i64) -> GRSeries {
        let mut s = self.zero();
        s.add_term(t, c);
        s
    }

    /// Decomposes the diagonal product of two transitive classes into orbits.
    pub fn class_product(&self, a: &GRClass, b: &GRClass) -> Vec<GRClass> {
        let g = &self.group;
        let h = a.stabilizer.intersect(&b.stabilizer);
        let joint = a.stabilizer.join(g, &b.stabilizer);
        let ra = a.stabilizer.coset_reps(g);
        let rb = b.stabilizer.coset_reps(g);
        let rh = h.coset_reps(g);
        let alpha = LocalChar::from_values(
            h.elements()
                .iter()
                .map(|&x| {
                    (a.alpha.value_at(&a.stabilizer, x).unwrap() + b.alpha.value_at(&b.stabilizer, x).unwrap())
                        % g.exponent()
                })
                .collect(),
        );
        joint
            .coset_reps(g)
            .into_iter()
            .map(|d| {
                let w = rh
                    .iter()
                    .map(|&x| {
                        let wa = a.weight_at(g, &ra, x);
                        let wb = b.weight_at(g, &rb, g.add(x, d));
                        wa.iter().zip(wb).map(|(p, q)| p + q).collect()
                    })
                    .collect();
                GRClass::new(g, h.clone(), w, alpha.clone()).unwrap()
            })
            .collect()
    }

    /// Expansion of (1 − T)^s up to the bound.
    pub fn expand_factor(&self, t: &GRClass, s: i64) -> Result<GRSeries> {
        if t.min_degree() == 0 {
            return Err(Error::Precondition(format!("factor {t} has zero weight")));
        }
        let mut out = self.one();
        let mut power = self.one();
        let mut binom: i128 = 1;
        let base = self.from_class(t.clone(), 1);
        for k in 1.. {
            power = power.mul(&base)?;
            if power.is_zero() {
                break;
            }
            // binom(s, k) = binom(s, k-1)·(s − k + 1)/k
            binom = binom * (s as i128 - k as i128 + 1) / k as i128;
            if binom == 0 {
                break;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            out = out.add(&power.scale(sign * binom as i64))?;
        }
        Ok(out)
    }

    /// Expands a finite product up to the bound.
    pub fn expand(&self, form: &AcampoForm) -> Result<GRSeries> {
        let mut acc = self.one();
        for (t, s) in form.factors() {
            acc = acc.mul(&self.expand_factor(t, s)?)?;
        }
        Ok(acc)
    }

    /// The unique finite product whose expansion agrees with `s` up to the
    /// bound, found by peeling off one total degree at a time.
    pub fn acampo_factor(&self, s: &GRSeries) -> Result<AcampoForm> {
        if s.coeff(&self.unit_class()) != 1 || s.coeffs.keys().any(|t| t.min_degree() == 0 && !t.is_unit()) {
            return Err(Error::Precondition("series is not in 1 + M".into()));
        }
        let mut form = AcampoForm::new();
        let mut current = self.one();
        for d in 1..=self.bound {
            let residual = s.sub(&current)?;
            let layer: Vec<(GRClass, i64)> =
                residual.coeffs.iter().filter(|(t, _)| t.min_degree() == d).map(|(t, c)| (t.clone(), -c)).collect();
            if let Some((t, _)) = residual.coeffs.iter().find(|(t, _)| t.min_degree() < d) {
                return Err(Error::CrossCheck(format!("A'Campo peeling left residue {t} below degree {d}")));
            }
            for (t, e) in layer {
                current = current.mul(&self.expand_factor(&t, e)?)?;
                form.push(t, e);
            }
        }
        if &current != s {
            return Err(Error::CrossCheck("A'Campo factorization does not expand back".into()));
        }
        Ok(form)
    }

    /// Orbit sum of a class: Σ over its points of t^{w(x)}.
    pub fn forget_class(&self, t: &GRClass) -> PlainSeries {
        let mut p = PlainSeries::zero(self.r, self.bound);
        for w in &t.w {
            p.add_term(w.clone(), 1);
        }
        p
    }

    /// The ring homomorphism to integer series given by orbit sums.
    pub fn forget(&self, s: &GRSeries) -> PlainSeries {
        let mut p = PlainSeries::zero(self.r, self.bound);
        for (t, c) in &s.coeffs {
            p = p.add(&self.forget_class(t).scale(*c));
        }
        p
    }

    /// Replaces every factor (1 − T)^s by ∏_{x ∈ T} (1 − t^{w(x)})^s.
    pub fn reduce_acampo(&self, form: &AcampoForm) -> PlainFactors {
        let mut out = PlainFactors::new(self.r);
        for (t, s) in form.factors() {
            for w in &t.w {
                out.push(w.clone(), s);
            }
        }
        out
    }
}

impl GRSeries {
    pub fn ring(&self) -> &GrRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &BTreeMap<GRClass, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, t: &GRClass) -> i64 {
        self.coeffs.get(t).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, t: GRClass, c: i64) {
        if c == 0 || t.min_degree() > self.ring.bound {
            return;
        }
        let e = self.coeffs.entry(t.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&t);
        }
    }

    fn check(&self, other: &GRSeries) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Precondition("series over different groups, ranks or bounds".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GRSeries) -> Result<GRSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(t.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GRSeries) -> Result<GRSeries> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> GRSeries {
        let mut out = self.ring.zero();
        for (t, c) in &self.coeffs {
            out.add_term(t.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &GRSeries) -> Result<GRSeries> {
        self.check(other)?;
        let mut out = self.ring.zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.min_degree() + b.min_degree() > self.ring.bound {
                    continue;
                }
                for t in self.ring.class_product(a, b) {
                    out.add_term(t, ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Σ coefficient · orbit size.
    pub fn cardinality(&self) -> i64 {
        self.coeffs.iter().map(|(t, c)| c * t.size() as i64).sum()
    }
}

impl fmt::Display for GRSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(t, c)| format!("{c}*{t}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A truncated integer power series in t₁, …, t_r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainSeries {
    pub r: usize,
    pub bound: u64,
    coeffs: BTreeMap<Vec<u64>, i64>,
}

impl PlainSeries {
    pub fn zero(r: usize, bound: u64) -> Self {
        PlainSeries { r, bound, coeffs: BTreeMap::new() }
    }

    pub fn one(r: usize, bound: u64) -> Self {
        let mut p = PlainSeries::zero(r, bound);
        p.add_term(vec![0; r], 1);
        p
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u64>, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, e: &[u64]) -> i64 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<u64>, c: i64) {
        if c == 0 || e.iter().sum::<u64>() > self.bound {
            return;
        }
        let v = self.coeffs.entry(e.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &PlainSeries) -> PlainSeries {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> PlainSeries {
        let mut out = PlainSeries::zero(self.r, self.bound);
        for (e, c) in &self.coeffs {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &PlainSeries) -> PlainSeries {
        let mut out = PlainSeries::zero(self.r, self.bound.min(other.bound));
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }

    /// Restricts to total degree at most `bound`.
    pub fn truncate(&self, bound: u64) -> PlainSeries {
        let mut out = PlainSeries::zero(self.r, bound);
        for (e, c) in &self.coeffs {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl fmt::Display for PlainSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{}", i + 1, k) })
                    .collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A finite product ∏ (1 − t^w)^{s_w} of integer series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainFactors {
    pub r: usize,
    factors: BTreeMap<Vec<u64>, i64>,
}

impl PlainFactors {
    pub fn new(r: usize) -> Self {
        PlainFactors { r, factors: BTreeMap::new() }
    }

    pub fn push(&mut self, w: Vec<u64>, s: i64) {
        let e = self.factors.entry(w.clone()).or_insert(0);
        *e += s;
        if *e == 0 {
            self.factors.remove(&w);
        }
    }

    pub fn factors(&self) -> &BTreeMap<Vec<u64>, i64> {
        &self.factors
    }

    /// Expansion up to total degree `bound`.
    pub fn expand(&self, bound: u64) -> Result<PlainSeries> {
        let mut acc = PlainSeries::one(self.r, bound);
        for (w, &s) in &self.factors {
            let d: u64 = w.iter().sum();
            if d == 0 {
                return Err(Error::Precondition("factor with zero weight".into()));
            }
            let mut f = PlainSeries::one(self.r, bound);
            let mut binom: i128 = 1;
            let mut k: u64 = 1;
            while k * d <= bound {
                binom = binom * (s as i128 - k as i128 + 1) / k as i128;
                if binom == 0 {
                    break;
                }
                let sign = if k % 2 == 0 { 1 } else { -1 };
                f.add_term(w.iter().map(|x| x * k).collect(), sign * binom as i64);
                k += 1;
            }
            acc = acc.mul(&f);
        }
        Ok(acc)
    }
}

impl fmt::Display for PlainFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|(w, s)| format!("(1 - t^{w:?})^{s}")).collect();
        f.write_str(&parts.join(" "))
    }
}
