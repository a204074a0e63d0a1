//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored densely in the power basis 1, ζ, …, ζ^{φ(N)-1}
//! of Q[x]/Φ_N(x). Fields are interned per modulus, so two numbers with the
//! same modulus always share the same reduction polynomial.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num::{BigInt, BigRational, One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// The field Q(ζ_N) together with its reduction polynomial Φ_N.
#[derive(Debug)]
pub struct CycloField {
    modulus: u32,
    /// Monic Φ_N, coefficients from low to high degree.
    phi: Vec<BigInt>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for CycloField {}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<CycloField>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

impl CycloField {
    /// Returns the interned field for modulus `n` (n ≥ 1).
    pub fn new(n: u32) -> Arc<CycloField> {
        assert!(n >= 1, "cyclotomic modulus must be positive");
        let mut fields = FIELDS.lock().unwrap();
        if let Some(f) = fields.get(&n) {
            return f.clone();
        }
        let f = Arc::new(CycloField { modulus: n, phi: cyclotomic_polynomial(n) });
        fields.insert(n, f.clone());
        f
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// φ(N), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }
}

/// Integer coefficients of Φ_n, low to high.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = int_exact_div(&num, &div);
        }
    }
    num
}

fn int_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()));
    quot
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNum { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<CycloField>, q: BigRational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    /// ζ_N^k for any integer k.
    pub fn root_of_unity(field: &Arc<CycloField>, k: i64) -> Self {
        let n = field.modulus as i64;
        let k = k.rem_euclid(n) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Self::reduce(field, raw)
    }

    /// Builds an element from an arbitrary-length coefficient vector in ζ.
    pub fn from_power_coeffs(field: &Arc<CycloField>, raw: Vec<BigRational>) -> Self {
        Self::reduce(field, raw)
    }

    fn reduce(field: &Arc<CycloField>, mut raw: Vec<BigRational>) -> Self {
        let d = field.degree();
        if raw.len() > d {
            for k in (d..raw.len()).rev() {
                let c = std::mem::take(&mut raw[k]);
                if c.is_zero() {
                    continue;
                }
                for (j, pj) in field.phi[..d].iter().enumerate() {
                    let t = &c * BigRational::from_integer(pj.clone());
                    raw[k - d + j] -= t;
                }
            }
            raw.truncate(d);
        }
        raw.resize(d, BigRational::zero());
        CycloNum { field: field.clone(), coeffs: raw }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field.modulus != other.field.modulus {
            return Err(Error::ModulusMismatch(self.field.modulus, other.field.modulus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloNum { field: self.field.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloNum { field: self.field.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let d = self.field.degree();
        if d == 1 {
            return Ok(CycloNum { field: self.field.clone(), coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] });
        }
        let mut raw = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(Self::reduce(&self.field, raw))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.recip()));
        }
        // Extended Euclid of a(x) against Φ_N(x) over Q.
        let phi: Vec<BigRational> = self.field.phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let a = qpoly_trim(self.coeffs.clone());
        let (g, s) = qpoly_ext_gcd(&a, &phi);
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * &ginv).collect();
        Ok(Self::reduce(&self.field, s))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inverse().expect("negative power of zero").pow(-e);
        }
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }
}

/// Arithmetic operation selector for [`cyclo_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with explicit error reporting for modulus mismatch and
/// division by zero.
pub fn cyclo_arith(a: &CycloNum, b: &CycloNum, op: ArithOp) -> Result<CycloNum> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

fn qpoly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], qpoly_trim(rem));
    }
    let lc_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lc_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    (qpoly_trim(quot), qpoly_trim(rem))
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qpoly_trim(out)
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    qpoly_trim(out)
}

/// Returns (g, s) with s·a ≡ g (mod m), g = gcd(a, m) (not normalized).
fn qpoly_ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &'a CycloNum) -> CycloNum {
                self.$checked(rhs).expect("cyclotomic modulus mismatch")
            }
        }
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$checked(&rhs).expect("cyclotomic modulus mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.modulus == other.field.modulus && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.modulus.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on power-basis coordinates. Not compatible with the field
/// structure; only used for deterministic choices.
impl Ord for CycloNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.modulus.cmp(&other.field.modulus).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Renders in the scene coefficient grammar, e.g. `1/2 - z^3`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{}", k),
            };
            if k == 0 {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", abs, mono)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
