//! Univariate and bivariate polynomials over Q(ζ_N), local rational
//! functions in t, and resultants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational};

use super::cyclo::{CycloField, CycloNum};
use crate::error::{Error, Result};

/// Dense polynomial in one variable `t`; no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly1 {
    field: Arc<CycloField>,
    coeffs: Vec<CycloNum>,
}

impl Poly1 {
    pub fn new(field: &Arc<CycloField>, mut coeffs: Vec<CycloNum>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        Poly1 { field: field.clone(), coeffs: vec![] }
    }

    pub fn constant(c: CycloNum) -> Self {
        let field = c.field().clone();
        Poly1::new(&field, vec![c])
    }

    pub fn monomial(c: CycloNum, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![CycloNum::zero(&field); k];
        coeffs.push(c);
        Poly1::new(&field, coeffs)
    }

    /// The polynomial `t`.
    pub fn var(field: &Arc<CycloField>) -> Self {
        Poly1::monomial(CycloNum::one(field), 1)
    }

    /// Polynomial with rational integer coefficients.
    pub fn from_ints(field: &Arc<CycloField>, coeffs: &[i64]) -> Self {
        Poly1::new(field, coeffs.iter().map(|&c| CycloNum::from_int(field, c)).collect())
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Least exponent with nonzero coefficient; `None` for zero.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> CycloNum {
        self.coeffs.get(k).cloned().unwrap_or_else(|| CycloNum::zero(&self.field))
    }

    pub fn leading(&self) -> Option<&CycloNum> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Poly1::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Poly1::new(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly1 {
        Poly1 { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero(&self.field);
        }
        let mut out = vec![CycloNum::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly1::new(&self.field, out)
    }

    pub fn scale(&self, c: &CycloNum) -> Poly1 {
        Poly1::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly1 {
        let mut out = Poly1::constant(CycloNum::one(&self.field));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &CycloNum) -> CycloNum {
        let mut acc = CycloNum::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// p(q(t)).
    pub fn compose(&self, q: &Poly1) -> Poly1 {
        let mut acc = Poly1::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Poly1::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Poly1 {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&BigRational::from_integer(BigInt::from(k))))
            .collect();
        Poly1::new(&self.field, coeffs)
    }

    /// Divides by t^k; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Poly1 {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly1::new(&self.field, self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn div_rem(&self, other: &Poly1) -> Result<(Poly1, Poly1)> {
        let lc = other.leading().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = lc.inverse()?;
        let db = other.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly1::zero(&self.field), self.clone()));
        }
        let mut quot = vec![CycloNum::zero(&self.field); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in other.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * bj);
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Poly1::new(&self.field, quot), Poly1::new(&self.field, rem)))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        match a.leading() {
            Some(lc) => {
                let inv = lc.inverse().expect("nonzero");
                a.scale(&inv)
            }
            None => a,
        }
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format_term(c, &[("t", k as u32)]))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn format_term(c: &CycloNum, vars: &[(&str, u32)]) -> String {
    let mono: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
        .collect();
    if mono.is_empty() {
        return format!("{}", c);
    }
    let cs = c.to_string();
    if c.is_one() {
        mono.join("*")
    } else if cs == "-1" {
        format!("-{}", mono.join("*"))
    } else if cs.contains(' ') {
        format!("({})*{}", cs, mono.join("*"))
    } else {
        format!("{}*{}", cs, mono.join("*"))
    }
}

/// Sparse polynomial in (x, y); keys are exponent pairs (i, j) for x^i y^j.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly2 {
    field: Arc<CycloField>,
    terms: BTreeMap<(u32, u32), CycloNum>,
}

impl Poly2 {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Poly2 { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(c: CycloNum, i: u32, j: u32) -> Self {
        let field = c.field().clone();
        let mut p = Poly2::zero(&field);
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn x(field: &Arc<CycloField>) -> Self {
        Poly2::monomial(CycloNum::one(field), 1, 0)
    }

    pub fn y(field: &Arc<CycloField>) -> Self {
        Poly2::monomial(CycloNum::one(field), 0, 1)
    }

    pub fn from_terms(field: &Arc<CycloField>, terms: impl IntoIterator<Item = ((u32, u32), CycloNum)>) -> Self {
        let mut p = Poly2::zero(field);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: (u32, u32), c: CycloNum) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(|| CycloNum::zero(&c.field().clone()));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), CycloNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> CycloNum {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| CycloNum::zero(&self.field))
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.keys().copied()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero(&self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term((a.0 + b.0, a.1 + b.1), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> Poly2 {
        Poly2::from_terms(&self.field, self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    /// Multiplies the coefficient of x^i y^j by `f(i, j)`.
    pub fn twist(&self, f: impl Fn(u32, u32) -> CycloNum) -> Poly2 {
        Poly2::from_terms(&self.field, self.terms.iter().map(|(k, a)| (*k, a * &f(k.0, k.1))))
    }

    /// Scales so the coefficient of the least monomial (in exponent order) is 1.
    pub fn normalized(&self) -> Poly2 {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.inverse().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// f(X(t), Y(t)).
    pub fn eval_param(&self, x: &Poly1, y: &Poly1) -> Poly1 {
        let dx = self.degree_x();
        let dy = self.degree_y();
        let xp = powers(x, dx);
        let yp = powers(y, dy);
        let mut acc = Poly1::zero(&self.field);
        for ((i, j), c) in &self.terms {
            acc = acc.add(&xp[*i as usize].mul(&yp[*j as usize]).scale(c));
        }
        acc
    }

    /// f(X(u, v), Y(u, v)).
    pub fn compose(&self, x: &Poly2, y: &Poly2) -> Poly2 {
        let xp = powers2(x, self.degree_x());
        let yp = powers2(y, self.degree_y());
        let mut acc = Poly2::zero(&self.field);
        for ((i, j), c) in &self.terms {
            acc = acc.add(&xp[*i as usize].mul(&yp[*j as usize]).scale(c));
        }
        acc
    }

    /// The univariate polynomial f(x0, y) in y.
    pub fn eval_x(&self, x0: &CycloNum) -> Poly1 {
        let mut coeffs = vec![CycloNum::zero(&self.field); self.degree_y() as usize + 1];
        for ((i, j), c) in &self.terms {
            let j = *j as usize;
            coeffs[j] = &coeffs[j] + &(c * &x0.pow(*i as i64));
        }
        Poly1::new(&self.field, coeffs)
    }
}

fn powers(p: &Poly1, n: u32) -> Vec<Poly1> {
    let mut out = vec![Poly1::constant(CycloNum::one(p.field()))];
    for k in 0..n as usize {
        let next = out[k].mul(p);
        out.push(next);
    }
    out
}

fn powers2(p: &Poly2, n: u32) -> Vec<Poly2> {
    let mut out = vec![Poly2::monomial(CycloNum::one(p.field()), 0, 0)];
    for k in 0..n as usize {
        let next = out[k].mul(p);
        out.push(next);
    }
    out
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.terms.iter().map(|((i, j), c)| format_term(c, &[("x", *i), ("y", *j)])).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Resultant of two univariate polynomials over the field, via the
/// Euclidean remainder sequence.
pub fn resultant(f: &Poly1, g: &Poly1) -> Result<CycloNum> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = CycloNum::one(&field);
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            return Ok(&acc * &b.coeffs[0].pow(da as i64));
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = a.div_rem(&b)?.1;
        if r.is_zero() {
            return Ok(CycloNum::zero(&field));
        }
        let dr = r.degree().unwrap();
        // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc = &acc * &b.leading().unwrap().pow((da - dr) as i64);
        a = b;
        b = r;
    }
}

/// A quotient of polynomials in t representing a local power series.
///
/// Stored normalized: the numerator and denominator share no power of t, so a
/// value with nonnegative order has a denominator that is a unit at 0.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly1,
    den: Poly1,
}

impl RatFunc {
    pub fn new(num: Poly1, den: Poly1) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let field = den.field().clone();
            return Ok(RatFunc { num, den: Poly1::constant(CycloNum::one(&field)) });
        }
        let k = num.ord().unwrap().min(den.ord().unwrap());
        Ok(RatFunc { num: num.shift_down(k), den: den.shift_down(k) })
    }

    pub fn from_poly(p: Poly1) -> Self {
        let field = p.field().clone();
        RatFunc::new(p, Poly1::constant(CycloNum::one(&field))).unwrap()
    }

    pub fn num(&self) -> &Poly1 {
        &self.num
    }

    pub fn den(&self) -> &Poly1 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// ord(num) − ord(den); `None` for zero.
    pub fn ord(&self) -> Option<i64> {
        Some(self.num.ord()? as i64 - self.den.ord().unwrap() as i64)
    }

    /// Coefficient of t^{ord} in the Laurent expansion.
    pub fn leading_coeff(&self) -> Option<CycloNum> {
        let a = self.num.coeff(self.num.ord()?);
        let b = self.den.coeff(self.den.ord().unwrap());
        Some(&a * &b.inverse().unwrap())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn sub_const(&self, c: &CycloNum) -> RatFunc {
        RatFunc::new(self.num.sub(&self.den.scale(c)), self.den.clone()).unwrap()
    }

    pub fn scale(&self, c: &CycloNum) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).unwrap()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Lagrange interpolation: the polynomial of degree < n through (x_k, v_k).
pub fn interpolate(points: &[(CycloNum, CycloNum)]) -> Poly1 {
    let field = points[0].0.field().clone();
    let mut acc = Poly1::zero(&field);
    for (k, (xk, vk)) in points.iter().enumerate() {
        let mut basis = Poly1::constant(CycloNum::one(&field));
        let mut denom = CycloNum::one(&field);
        for (m, (xm, _)) in points.iter().enumerate() {
            if m == k {
                continue;
            }
            basis = basis.mul(&Poly1::new(&field, vec![-xm, CycloNum::one(&field)]));
            denom = &denom * &(xk - xm);
        }
        acc = acc.add(&basis.scale(&(vk * &denom.inverse().unwrap())));
    }
    acc
}

pub(crate) fn small_rational(field: &Arc<CycloField>, n: i64) -> CycloNum {
    CycloNum::from_rational(field, BigRational::from_integer(BigInt::from(n)))
}
