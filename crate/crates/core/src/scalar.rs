//! Exact coefficient rings and their elements.
//!
//! Five backends are supported: the integers, the rationals, prime fields,
//! the integers localized at a prime, and graded polynomial rings over the
//! rationals. Every [`Scalar`] carries its ring, and every value is kept in a
//! canonical form so that structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exponent vector, one entry per declared variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Integers,
    Rationals,
    Finite(u64),
    Local(u64),
    Graded(Arc<[String]>),
}

/// Descriptor of a coefficient ring. Construction checks primality and
/// variable names, so every `Ring` value is well formed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Kind);

/// Borrowed view of a [`Ring`] for matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind<'a> {
    Integers,
    Rationals,
    Finite(u64),
    Local(u64),
    Graded(&'a [String]),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn integers() -> Self {
        Ring(Kind::Integers)
    }

    pub fn rationals() -> Self {
        Ring(Kind::Rationals)
    }

    pub fn finite_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring(Kind::Finite(p)))
    }

    pub fn localized(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring(Kind::Local(p)))
    }

    pub fn graded<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
            names.push(v.to_string());
        }
        if names.is_empty() {
            return Err(Error::InvalidRing("graded ring needs at least one variable".into()));
        }
        Ok(Ring(Kind::Graded(names.into())))
    }

    pub fn kind(&self) -> RingKind<'_> {
        match &self.0 {
            Kind::Integers => RingKind::Integers,
            Kind::Rationals => RingKind::Rationals,
            Kind::Finite(p) => RingKind::Finite(*p),
            Kind::Local(p) => RingKind::Local(*p),
            Kind::Graded(v) => RingKind::Graded(v),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self.0, Kind::Rationals | Kind::Finite(_))
    }

    /// Rings on which Smith normal form is available (ZZ, ZLoc(p)).
    pub fn is_pid(&self) -> bool {
        matches!(self.0, Kind::Integers | Kind::Local(_))
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.0, Kind::Graded(_))
    }

    /// Local (or graded-local) rings, including fields.
    pub fn is_local(&self) -> bool {
        !matches!(self.0, Kind::Integers)
    }

    pub fn two_is_unit(&self) -> bool {
        match self.0 {
            Kind::Integers => false,
            Kind::Rationals | Kind::Graded(_) => true,
            Kind::Finite(p) | Kind::Local(p) => p != 2,
        }
    }

    pub fn variables(&self) -> &[String] {
        match &self.0 {
            Kind::Graded(v) => v,
            _ => &[],
        }
    }

    pub fn nvars(&self) -> usize {
        self.variables().len()
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_int(self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_int(self, 1)
    }
}

/// `two_is_unit` as a free function.
pub fn two_is_unit(ring: &Ring) -> bool {
    ring.two_is_unit()
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Kind::Integers => write!(f, "ZZ"),
            Kind::Rationals => write!(f, "QQ"),
            Kind::Finite(p) => write!(f, "GF({p})"),
            Kind::Local(p) => write!(f, "ZLoc({p})"),
            Kind::Graded(v) => write!(f, "QQ[{}]", v.join(",")),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = |prefix: &str| -> Option<&str> {
            s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')).map(str::trim)
        };
        let prime = |t: &str| -> Result<u64> {
            t.parse::<u64>().map_err(|_| Error::InvalidRing(format!("bad prime `{t}`")))
        };
        match s {
            "ZZ" | "Z" => return Ok(Ring::integers()),
            "QQ" | "Q" => return Ok(Ring::rationals()),
            _ => {}
        }
        if let Some(p) = inner("GF(") {
            return Ring::finite_field(prime(p)?);
        }
        if let Some(p) = inner("ZLoc(") {
            return Ring::localized(prime(p)?);
        }
        if let Some(rest) = s.strip_prefix("QQ[").and_then(|r| r.strip_suffix(']')) {
            let vars: Vec<&str> = rest.split(',').map(str::trim).collect();
            return Ring::graded(&vars);
        }
        Err(Error::InvalidRing(format!("unknown ring `{s}`")))
    }
}

/// A polynomial over QQ: exponent vector to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    /// Terms in serialization order: total degree descending, then lex descending.
    fn sorted_terms(&self) -> Vec<(&Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    fn write(&self, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = m
                .iter()
                .zip(vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Value {
    Int(BigInt),
    Frac(BigRational),
    Residue(u64),
    Poly(Poly),
}

/// An element of one of the supported rings, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: Ring,
    value: Value,
}

fn p_valuation(n: &BigInt, p: u64) -> u64 {
    if n.is_zero() {
        return u64::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(p as i128));
    Some(e.x.rem_euclid(p as i128) as u64)
}

fn residue_of(q: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64().unwrap();
    let d = q.denom().mod_floor(&pb).to_u64().unwrap();
    let inv = mod_inverse(d, p).ok_or_else(|| Error::NonUnit(format!("denominator {} mod {p}", q.denom())))?;
    Ok(((n as u128 * inv as u128) % p as u128) as u64)
}

impl Scalar {
    pub fn from_int(ring: &Ring, n: i64) -> Scalar {
        Scalar::from_bigint(ring, BigInt::from(n))
    }

    pub fn from_bigint(ring: &Ring, n: BigInt) -> Scalar {
        let value = match &ring.0 {
            Kind::Integers => Value::Int(n),
            Kind::Rationals | Kind::Local(_) => Value::Frac(BigRational::from_integer(n)),
            Kind::Finite(p) => Value::Residue(n.mod_floor(&BigInt::from(*p)).to_u64().unwrap()),
            Kind::Graded(v) => Value::Poly(Poly::constant(v.len(), BigRational::from_integer(n))),
        };
        Scalar { ring: ring.clone(), value }
    }

    /// Embeds a rational number; fails when the ring cannot contain it.
    pub fn from_rational(ring: &Ring, q: BigRational) -> Result<Scalar> {
        let value = match &ring.0 {
            Kind::Integers => {
                if !q.is_integer() {
                    return Err(Error::Invalid(format!("{} is not an integer", fmt_rational(&q))));
                }
                Value::Int(q.to_integer())
            }
            Kind::Rationals => Value::Frac(q),
            Kind::Local(p) => {
                if p_valuation(q.denom(), *p) > 0 {
                    return Err(Error::Invalid(format!(
                        "denominator of {} is divisible by {p}",
                        fmt_rational(&q)
                    )));
                }
                Value::Frac(q)
            }
            Kind::Finite(p) => Value::Residue(residue_of(&q, *p)?),
            Kind::Graded(v) => Value::Poly(Poly::constant(v.len(), q)),
        };
        Ok(Scalar { ring: ring.clone(), value })
    }

    pub fn from_fraction(ring: &Ring, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Scalar::from_rational(ring, BigRational::new(num.into(), den.into()))
    }

    /// The i-th variable of a graded ring (degree one).
    pub fn variable(ring: &Ring, name: &str) -> Result<Scalar> {
        let vars = ring.variables();
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Invalid(format!("unknown variable `{name}` in {ring}")))?;
        let mut m = vec![0; vars.len()];
        m[idx] = 1;
        Ok(Scalar { ring: ring.clone(), value: Value::Poly(Poly::from_terms([(m, BigRational::one())])) })
    }

    pub fn from_poly(ring: &Ring, poly: Poly) -> Result<Scalar> {
        match &ring.0 {
            Kind::Graded(v) => {
                if poly.terms.keys().any(|m| m.len() != v.len()) {
                    return Err(Error::Invalid("monomial arity does not match ring".into()));
                }
                Ok(Scalar { ring: ring.clone(), value: Value::Poly(poly) })
            }
            _ => match poly.as_constant() {
                Some(c) => Scalar::from_rational(ring, c),
                None => Err(Error::Invalid(format!("polynomial in non-polynomial ring {ring}"))),
            },
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_zero(),
            Value::Frac(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_one(),
            Value::Frac(q) => q.is_one(),
            Value::Residue(r) => *r == 1,
            Value::Poly(p) => p.as_constant().is_some_and(|c| c.is_one()),
        }
    }

    pub fn is_unit(&self) -> bool {
        match (&self.ring.0, &self.value) {
            (Kind::Integers, Value::Int(n)) => n.abs().is_one(),
            (Kind::Rationals, Value::Frac(q)) => !q.is_zero(),
            (Kind::Finite(_), Value::Residue(r)) => *r != 0,
            (Kind::Local(p), Value::Frac(q)) => !q.is_zero() && p_valuation(q.numer(), *p) == 0,
            (Kind::Graded(_), Value::Poly(poly)) => poly.as_constant().is_some_and(|c| !c.is_zero()),
            _ => unreachable!("scalar value does not match its ring"),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        let value = match (&self.ring.0, &self.value) {
            (Kind::Integers, Value::Int(n)) => Value::Int(n.clone()),
            (_, Value::Frac(q)) => Value::Frac(q.recip()),
            (Kind::Finite(p), Value::Residue(r)) => Value::Residue(mod_inverse(*r, *p).unwrap()),
            (Kind::Graded(v), Value::Poly(poly)) => {
                Value::Poly(Poly::constant(v.len(), poly.as_constant().unwrap().recip()))
            }
            _ => unreachable!(),
        };
        Ok(Scalar { ring: self.ring.clone(), value })
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::mismatch(&self.ring, &other.ring));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg_value()))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Frac(a), Value::Frac(b)) => Value::Frac(a + b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.modulus();
                Value::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.add(b)),
            _ => panic!("ring mismatch: {} vs {}", self.ring, other.ring),
        };
        Scalar { ring: self.ring.clone(), value }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Frac(a), Value::Frac(b)) => Value::Frac(a * b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.modulus();
                Value::Residue(((*a as u128 * *b as u128) % p as u128) as u64)
            }
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.mul(b)),
            _ => panic!("ring mismatch: {} vs {}", self.ring, other.ring),
        };
        Scalar { ring: self.ring.clone(), value }
    }

    fn neg_value(&self) -> Scalar {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Frac(a) => Value::Frac(-a),
            Value::Residue(a) => {
                let p = self.modulus();
                Value::Residue(if *a == 0 { 0 } else { p - a })
            }
            Value::Poly(a) => Value::Poly(a.neg()),
        };
        Scalar { ring: self.ring.clone(), value }
    }

    fn modulus(&self) -> u64 {
        match self.ring.0 {
            Kind::Finite(p) => p,
            _ => unreachable!(),
        }
    }

    /// Multiplies by a rational constant; only meaningful where the constant
    /// lives in the ring (callers use it with units such as 1/2).
    pub fn scale_rational(&self, q: &BigRational) -> Result<Scalar> {
        let c = Scalar::from_rational(&self.ring, q.clone())?;
        Ok(self.mul_unchecked(&c))
    }

    /// Exact quotient `self / d` when it exists in the ring. Over the graded
    /// backend only division by nonzero constants is supported.
    pub fn div_exact(&self, d: &Scalar) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.ring.zero());
        }
        match (&self.ring.0, &self.value, &d.value) {
            (Kind::Integers, Value::Int(a), Value::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then(|| Scalar { ring: self.ring.clone(), value: Value::Int(q) })
            }
            (Kind::Rationals, Value::Frac(a), Value::Frac(b)) => {
                Some(Scalar { ring: self.ring.clone(), value: Value::Frac(a / b) })
            }
            (Kind::Local(p), Value::Frac(a), Value::Frac(b)) => (p_valuation(b.numer(), *p)
                <= p_valuation(a.numer(), *p))
            .then(|| Scalar { ring: self.ring.clone(), value: Value::Frac(a / b) }),
            (Kind::Finite(_), _, _) => Some(self.mul_unchecked(&d.inverse().ok()?)),
            (Kind::Graded(_), Value::Poly(a), Value::Poly(b)) => {
                let c = b.as_constant()?;
                Some(Scalar { ring: self.ring.clone(), value: Value::Poly(a.scale(&c.recip())) })
            }
            _ => None,
        }
    }

    /// Euclidean size used for pivot selection: |n| over ZZ, the p-adic
    /// valuation over ZLoc(p), 0 for nonzero field elements. `None` for zero
    /// or for the graded backend.
    pub fn euclid_size(&self) -> Option<BigInt> {
        if self.is_zero() {
            return None;
        }
        match (&self.ring.0, &self.value) {
            (Kind::Integers, Value::Int(n)) => Some(n.abs()),
            (Kind::Local(p), Value::Frac(q)) => Some(BigInt::from(p_valuation(q.numer(), *p))),
            (Kind::Rationals, _) | (Kind::Finite(_), _) => Some(BigInt::zero()),
            _ => None,
        }
    }

    /// Division with remainder; the remainder is zero or strictly smaller
    /// than `d` in [`euclid_size`](Self::euclid_size).
    pub fn div_rem(&self, d: &Scalar) -> (Scalar, Scalar) {
        if let (Value::Int(a), Value::Int(b)) = (&self.value, &d.value) {
            let (q, r) = a.div_mod_floor(b);
            return (
                Scalar { ring: self.ring.clone(), value: Value::Int(q) },
                Scalar { ring: self.ring.clone(), value: Value::Int(r) },
            );
        }
        match self.div_exact(d) {
            Some(q) => (q, self.ring.zero()),
            None => (self.ring.zero(), self.clone()),
        }
    }

    /// p-adic valuation of the numerator (ZLoc only).
    pub fn valuation(&self) -> Option<u64> {
        match (&self.ring.0, &self.value) {
            (Kind::Local(p), Value::Frac(q)) if !q.is_zero() => Some(p_valuation(q.numer(), *p)),
            _ => None,
        }
    }

    /// Canonical associate: nonnegative over ZZ, p^v over ZLoc(p), 1 over a
    /// field, monic leading coefficient over the graded ring. Returns the
    /// unit `u` with `self * u` canonical.
    pub fn normalizing_unit(&self) -> Scalar {
        if self.is_zero() {
            return self.ring.one();
        }
        match (&self.ring.0, &self.value) {
            (Kind::Integers, Value::Int(n)) => Scalar::from_int(&self.ring, if n.is_negative() { -1 } else { 1 }),
            (Kind::Local(p), Value::Frac(q)) => {
                let v = p_valuation(q.numer(), *p);
                let pv = num_traits::pow(BigInt::from(*p), v as usize);
                let target = BigRational::from_integer(pv);
                Scalar { ring: self.ring.clone(), value: Value::Frac(target / q) }
            }
            (Kind::Graded(_), Value::Poly(poly)) => {
                let (_, c) = poly.sorted_terms()[0];
                let v = Value::Poly(Poly::constant(self.ring.nvars(), c.recip()));
                Scalar { ring: self.ring.clone(), value: v }
            }
            _ => self.inverse().unwrap(),
        }
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Int(n) => Some(n),
            _ => None,
        }
    }

    /// The value as a rational number when it is one (ZZ, QQ, ZLoc, constants).
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Int(n) => Some(BigRational::from_integer(n.clone())),
            Value::Frac(q) => Some(q.clone()),
            Value::Residue(_) => None,
            Value::Poly(p) => p.as_constant(),
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.value {
            Value::Residue(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match &self.value {
            Value::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Total degree for homogeneous nonzero polynomials; 0 for nonzero
    /// elements of the ungraded rings.
    pub fn degree(&self) -> Option<i64> {
        match &self.value {
            Value::Poly(p) => p.homogeneous_degree().map(i64::from),
            _ => (!self.is_zero()).then_some(0),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match &self.value {
            Value::Poly(p) => p.is_homogeneous(),
            _ => true,
        }
    }

    /// Canonical re-normalization; the identity on every valid scalar.
    pub fn normalized(&self) -> Scalar {
        let value = match (&self.ring.0, &self.value) {
            (_, Value::Frac(q)) => Value::Frac(BigRational::new(q.numer().clone(), q.denom().clone())),
            (Kind::Finite(p), Value::Residue(r)) => Value::Residue(r % p),
            (_, Value::Poly(poly)) => Value::Poly(Poly::from_terms(poly.terms.iter().map(|(m, c)| (m.clone(), c.clone())))),
            (_, v) => v.clone(),
        };
        Scalar { ring: self.ring.clone(), value }
    }

    /// Image under a supported ring map (see [`crate::sym2::RingMap`]).
    pub fn map_to(&self, target: &Ring) -> Result<Scalar> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        match (&self.ring.0, &target.0) {
            (Kind::Integers | Kind::Local(_), Kind::Rationals | Kind::Finite(_) | Kind::Local(_)) => {
                Scalar::from_rational(target, self.as_rational().unwrap())
            }
            _ => Err(Error::UnsupportedRingMap {
                source_ring: self.ring.to_string(),
                target_ring: target.to_string(),
            }),
        }
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Scalar> {
        let poly = parse::parse_poly(text, ring.variables())?;
        Scalar::from_poly(ring, poly).map_err(|e| match e {
            Error::Invalid(m) => Error::Parse { line: 1, column: 1, message: format!("`{text}`: {m}") },
            e => e,
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{n}"),
            Value::Frac(q) => write!(f, "{}", fmt_rational(q)),
            Value::Residue(r) => write!(f, "{r}"),
            Value::Poly(p) => p.write(self.ring.variables(), f),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_unchecked(rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_unchecked(&rhs.neg_value())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_value()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_value()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

/// Ring operation with ring-tag checking. `Neg` ignores `b`.
pub fn arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Neg => {
            a.check_same(b)?;
            Ok(-a)
        }
    }
}

/// Lexicographic comparison of monomials in declared variable order.
pub fn monomial_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.cmp(b)
}

mod parse {
    use super::*;

    struct Parser<'a> {
        src: &'a [u8],
        pos: usize,
        vars: &'a [String],
    }

    impl Parser<'_> {
        fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
            Err(Error::Parse { line: 1, column: self.pos + 1, message: msg.into() })
        }

        fn skip_ws(&mut self) {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.src.get(self.pos).copied()
        }

        fn number(&mut self) -> Result<BigInt> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected a number");
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            Ok(s.parse().unwrap())
        }

        fn factor(&mut self, nvars: usize) -> Result<(Monomial, BigRational)> {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let d = self.number()?;
                        if d.is_zero() {
                            return self.err("zero denominator");
                        }
                        return Ok((vec![0; nvars], BigRational::new(n, d)));
                    }
                    Ok((vec![0; nvars], BigRational::from_integer(n)))
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let Some(idx) = self.vars.iter().position(|v| v == name) else {
                        self.pos = start;
                        return self.err(format!("unknown variable `{name}`"));
                    };
                    let mut exp = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let e = self.number()?;
                        exp = match e.to_u32() {
                            Some(e) => e,
                            None => return self.err("exponent too large"),
                        };
                    }
                    let mut m = vec![0; nvars];
                    m[idx] = exp;
                    Ok((m, BigRational::one()))
                }
                Some(c) => self.err(format!("unexpected `{}`", c as char)),
                None => self.err("unexpected end of input"),
            }
        }

        fn term(&mut self, nvars: usize) -> Result<(Monomial, BigRational)> {
            let (mut m, mut c) = self.factor(nvars)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                let (m2, c2) = self.factor(nvars)?;
                for (a, b) in m.iter_mut().zip(&m2) {
                    *a += b;
                }
                c *= c2;
            }
            Ok((m, c))
        }

        fn expr(&mut self) -> Result<Poly> {
            let nvars = self.vars.len();
            let mut out = Poly::zero();
            let mut sign = BigRational::one();
            match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(b'+') => self.pos += 1,
                _ => {}
            }
            loop {
                let (m, c) = self.term(nvars)?;
                out.add_term(m, c * &sign);
                match self.peek() {
                    Some(b'+') => {
                        self.pos += 1;
                        sign = BigRational::one();
                    }
                    Some(b'-') => {
                        self.pos += 1;
                        sign = -BigRational::one();
                    }
                    None => break,
                    Some(c) => return self.err(format!("unexpected `{}`", c as char)),
                }
            }
            Ok(out)
        }
    }

    pub(super) fn parse_poly(text: &str, vars: &[String]) -> Result<Poly> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
        p.expr()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(&Ring::rationals(), n, d).unwrap()
    }

    #[test]
    fn fraction_addition() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn polynomial_product_is_homogeneous() {
        let r = Ring::graded(&["x", "y"]).unwrap();
        let x = Scalar::variable(&r, "x").unwrap();
        let y = Scalar::variable(&r, "y").unwrap();
        let xy = &x * &y;
        assert_eq!(xy.degree(), Some(2));
        assert_eq!(xy.to_string(), "x*y");
    }

    #[test]
    fn finite_field_product() {
        let r = Ring::finite_field(5).unwrap();
        let p = &Scalar::from_int(&r, 2) * &Scalar::from_int(&r, 3);
        assert!(p.is_one());
    }

    #[test]
    fn unit_detection() {
        assert!(!Scalar::from_int(&Ring::integers(), 2).is_unit());
        let z3 = Ring::localized(3).unwrap();
        let two = Scalar::from_int(&z3, 2);
        assert!(two.is_unit());
        assert_eq!(two.inverse().unwrap(), Scalar::from_fraction(&z3, 1, 2).unwrap());
        assert!(!Scalar::from_int(&z3, 6).is_unit());
        let r = Ring::graded(&["x", "y"]).unwrap();
        assert!(!Scalar::variable(&r, "x").unwrap().is_unit());
        assert!(matches!(Scalar::variable(&r, "x").unwrap().inverse(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn two_unit_table() {
        assert!(!Ring::integers().two_is_unit());
        assert!(Ring::localized(3).unwrap().two_is_unit());
        assert!(!Ring::finite_field(2).unwrap().two_is_unit());
        assert!(!Ring::localized(2).unwrap().two_is_unit());
        assert!(Ring::rationals().two_is_unit());
        assert!(Ring::graded(&["x"]).unwrap().two_is_unit());
        assert!(Ring::finite_field(7).unwrap().two_is_unit());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(Ring::finite_field(6), Err(Error::NotPrime(6)));
        assert_eq!(Ring::localized(1), Err(Error::NotPrime(1)));
        assert!(Ring::graded(&["x", "x"]).is_err());
        assert!(Ring::graded(&["1x"]).is_err());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Scalar::from_int(&Ring::integers(), 1);
        let b = Scalar::from_int(&Ring::rationals(), 1);
        assert!(matches!(arith(ArithOp::Add, &a, &b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn local_denominators_must_avoid_p() {
        let z3 = Ring::localized(3).unwrap();
        assert!(Scalar::from_fraction(&z3, 1, 3).is_err());
        assert!(Scalar::from_fraction(&z3, 1, 6).is_err());
        assert!(Scalar::from_fraction(&z3, 3, 4).is_ok());
    }

    #[test]
    fn polynomial_text_round_trip() {
        let r = Ring::graded(&["x", "y"]).unwrap();
        let s = Scalar::parse(&r, "-y^3 + 3*x^2*y").unwrap();
        assert_eq!(s.to_string(), "3*x^2*y - y^3");
        assert_eq!(Scalar::parse(&r, &s.to_string()).unwrap(), s);
        let t = Scalar::parse(&r, "1/2*x - 2").unwrap();
        assert_eq!(t.to_string(), "1/2*x - 2");
    }

    #[test]
    fn malformed_scalar_reports_column() {
        let r = Ring::graded(&["x"]).unwrap();
        match Scalar::parse(&r, "x^") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Scalar::parse(&Ring::integers(), "x").is_err());
        assert!(Scalar::parse(&Ring::integers(), "1/2").is_err());
    }

    #[test]
    fn integer_division_with_remainder() {
        let z = Ring::integers();
        for (a, b) in [(7, 3), (-7, 3), (7, -3), (-7, -3), (6, 3), (1, 5)] {
            let a = Scalar::from_int(&z, a);
            let b = Scalar::from_int(&z, b);
            let (q, r) = a.div_rem(&b);
            assert_eq!(&(&q * &b) + &r, a);
            assert!(r.is_zero() || r.euclid_size().unwrap() < b.euclid_size().unwrap());
        }
    }

    #[test]
    fn ring_descriptor_text() {
        for s in ["ZZ", "QQ", "GF(5)", "ZLoc(3)", "QQ[x,y]"] {
            assert_eq!(s.parse::<Ring>().unwrap().to_string(), s);
        }
        assert!("GF(4)".parse::<Ring>().is_err());
    }
}
