//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! A [`Field`] is a cheap handle to a precomputed context (the `m`-th
//! cyclotomic polynomial and a table of roots of unity). A [`Scalar`] is a
//! coordinate vector in the power basis `1, ζ, …, ζ^{φ(m)-1}`, always kept
//! reduced modulo the cyclotomic polynomial, so structural equality is field
//! equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order must be at least 1")]
    ZeroOrder,
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("expected {expected} power-basis coordinates, found {found}")]
    WrongArity { expected: usize, found: usize },
}

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn cyclotomic_polynomial(m: u32) -> Poly {
    // x^m - 1 = prod_{d | m} Phi_d(x)
    let mut num: Poly = vec![BigRational::zero(); m as usize + 1];
    num[0] = -BigRational::one();
    num[m as usize] = BigRational::one();
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = poly_divmod(&num, &cyclotomic_polynomial(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

#[derive(Debug)]
struct FieldContext {
    order: u32,
    modulus: Poly,
    /// Coordinates of `γ^k` for `k < unity_order`, where `γ` generates the
    /// roots of unity of the field.
    unity_powers: Vec<Poly>,
}

/// Handle to the cyclotomic field `Q(ζ_m)`.
#[derive(Clone)]
pub struct Field {
    ctx: Arc<FieldContext>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.ctx.order)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(order: u32) -> Result<Self, FieldError> {
        if order == 0 {
            return Err(FieldError::ZeroOrder);
        }
        let modulus = cyclotomic_polynomial(order);
        let mut ctx = FieldContext {
            order,
            modulus,
            unity_powers: Vec::new(),
        };
        let degree = ctx.modulus.len() - 1;
        let unity_order = if order % 2 == 0 { order } else { 2 * order };
        let mut gamma = vec![BigRational::zero(); 2];
        if order % 2 == 0 {
            gamma[1] = BigRational::one();
        } else {
            gamma[1] = -BigRational::one();
        }
        let gamma = reduce(&ctx.modulus, gamma);
        let mut cur = reduce(&ctx.modulus, vec![BigRational::one()]);
        for _ in 0..unity_order {
            ctx.unity_powers.push(pad(cur.clone(), degree));
            cur = reduce(&ctx.modulus, poly_mul(&cur, &gamma));
        }
        Ok(Field { ctx: Arc::new(ctx) })
    }

    /// The cyclotomic order `m`.
    pub fn order(&self) -> u32 {
        self.ctx.order
    }

    /// Dimension of the field over `Q`, that is `φ(m)`.
    pub fn degree(&self) -> usize {
        self.ctx.modulus.len() - 1
    }

    /// The cyclotomic polynomial as integer coefficients, constant term first.
    pub fn modulus(&self) -> Vec<BigInt> {
        self.ctx.modulus.iter().map(|c| c.to_integer()).collect()
    }

    /// Order of the group of roots of unity in the field (`m` or `2m`).
    pub fn unity_order(&self) -> u32 {
        self.ctx.unity_powers.len() as u32
    }

    fn wrap(&self, coeffs: Poly) -> Scalar {
        Scalar {
            field: self.clone(),
            coeffs: pad(reduce(&self.ctx.modulus, coeffs), self.degree()),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.wrap(Vec::new())
    }

    pub fn one(&self) -> Scalar {
        self.wrap(vec![BigRational::one()])
    }

    pub fn integer(&self, n: i64) -> Scalar {
        self.wrap(vec![BigRational::from_integer(n.into())])
    }

    pub fn rational(&self, value: BigRational) -> Scalar {
        self.wrap(vec![value])
    }

    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.rational(BigRational::new(num.into(), den.into())))
    }

    /// The primitive root `ζ_m`.
    pub fn zeta(&self) -> Scalar {
        self.zeta_pow(1)
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> Scalar {
        let m = self.ctx.order as i64;
        let e = k.rem_euclid(m) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        self.wrap(c)
    }

    /// `γ^k` where `γ` generates all roots of unity in the field: `ζ_m` for
    /// even `m`, `-ζ_m` for odd `m`.
    pub fn unity_pow(&self, k: i64) -> Scalar {
        let n = self.unity_order() as i64;
        Scalar {
            field: self.clone(),
            coeffs: self.ctx.unity_powers[k.rem_euclid(n) as usize].clone(),
        }
    }

    /// Exponent `k` with `x = γ^k`, if `x` is a root of unity.
    pub fn unity_log(&self, x: &Scalar) -> Option<u32> {
        self.ctx
            .unity_powers
            .iter()
            .position(|p| *p == x.coeffs)
            .map(|k| k as u32)
    }

    /// Builds a scalar from power-basis coordinates of any length; the vector
    /// is reduced modulo the cyclotomic polynomial.
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> Scalar {
        self.wrap(coeffs)
    }

    pub fn parse(&self, repr: &ScalarRepr) -> Result<Scalar, FieldError> {
        match repr {
            ScalarRepr::Rational(s) => Ok(self.rational(parse_rational(s)?)),
            ScalarRepr::Coords(v) => {
                if v.len() != self.degree() {
                    return Err(FieldError::WrongArity {
                        expected: self.degree(),
                        found: v.len(),
                    });
                }
                let coeffs = v
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self.wrap(coeffs))
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

fn pad(mut p: Poly, len: usize) -> Poly {
    p.resize(len, BigRational::zero());
    p
}

fn reduce(modulus: &[BigRational], mut p: Poly) -> Poly {
    trim(&mut p);
    let d = modulus.len() - 1;
    // modulus is monic
    while p.len() > d {
        let top = p.len() - 1;
        let c = p[top].clone();
        for (i, y) in modulus.iter().enumerate() {
            p[top - d + i] -= &c * y;
        }
        trim(&mut p);
    }
    p
}

/// JSON form of a scalar: `"p/q"` for rationals or an array of `"p/q"`
/// power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Rational(String),
    Coords(Vec<String>),
}

/// Element of a cyclotomic field.
#[derive(Clone)]
pub struct Scalar {
    field: Field,
    coeffs: Poly,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let modulus = &self.field.ctx.modulus;
        let mut a = self.coeffs.clone();
        trim(&mut a);
        // extended Euclid in Q[x]: track s with s * a = r (mod modulus)
        let (mut r0, mut r1) = (modulus.clone(), a);
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let inv: Poly = s0.into_iter().map(|x| x / &c).collect();
        Ok(self.field.wrap(inv))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_repr(&self) -> ScalarRepr {
        match self.as_rational() {
            Some(q) => ScalarRepr::Rational(q.to_string()),
            None => ScalarRepr::Coords(self.coeffs.iter().map(|c| c.to_string()).collect()),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let zeta = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&zeta)?;
            } else {
                write!(f, "({mag})*{zeta}")?;
            }
        }
        Ok(())
    }
}

fn assert_same(a: &Scalar, b: &Scalar) {
    assert!(
        a.field == b.field,
        "mixing scalars from Q(zeta_{}) and Q(zeta_{})",
        a.field.order(),
        b.field.order()
    );
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Scalar {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(x, y)| x - y)
            .collect();
        Scalar {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        assert_same(self, rhs);
        if self.field.degree() == 1 {
            return Scalar {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        self.field.wrap(poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
