use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A polynomial ring F[x_1..x_n] with named variables. Shared by reference.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub field: Field,
    pub vars: Vec<String>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(field: Field, vars: &[&str]) -> RingRef {
        Arc::new(Ring { field, vars: vars.iter().map(|s| s.to_string()).collect() })
    }

    pub fn with_vars(field: Field, vars: Vec<String>) -> RingRef {
        Arc::new(Ring { field, vars })
    }

    /// The field itself as a ring with no variables.
    pub fn field_only(field: Field) -> RingRef {
        Arc::new(Ring { field, vars: Vec::new() })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_field(&self) -> bool {
        self.vars.is_empty()
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector ordered by graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: RingRef,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &RingRef) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> Poly {
        Poly::constant(ring, ring.field.one())
    }

    pub fn from_i64(ring: &RingRef, v: i64) -> Poly {
        Poly::constant(ring, ring.field.from_i64(v))
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Poly {
        let mut p = Poly::zero(ring);
        p.add_term(Monomial::one(ring.nvars()), c);
        p
    }

    pub fn var(ring: &RingRef, i: usize) -> Poly {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        let mut p = Poly::zero(ring);
        p.add_term(Monomial(e), ring.field.one());
        p
    }

    /// Variable by name; panics if absent.
    pub fn named(ring: &RingRef, name: &str) -> Poly {
        let i = ring.var_index(name).unwrap_or_else(|| panic!("no variable {name}"));
        Poly::var(ring, i)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.degree() == 0 {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars(), "evaluation point arity");
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(&m.0) {
                if *e > 0 {
                    t = &t * &x.pow(*e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Partial derivative with respect to variable i.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * &self.ring.field.from_i64(e as i64));
        }
        out
    }

    /// Exact quotient self / d, or None if d does not divide self.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(same_ring(&self.ring, &d.ring), "ring mismatch");
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut q = Poly::zero(&self.ring);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let tm = m.div(lm);
            let tc = c * &lc_inv;
            let mut t = Poly::zero(&self.ring);
            t.add_term(tm, tc);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Rescaled so the graded-lex leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Reinterprets the polynomial in another ring by variable name.
    pub fn embed(&self, target: &RingRef) -> Result<Poly> {
        if self.ring.field != target.field {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring.field, target.field)));
        }
        let mut map = Vec::with_capacity(self.ring.nvars());
        for v in &self.ring.vars {
            map.push(target.var_index(v).ok_or_else(|| Error::RingMismatch(format!("variable {v} missing")))?);
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn parse(ring: &RingRef, s: &str) -> Result<Poly> {
        super::parse::parse_poly(ring, s)
    }

    /// Sort key: compares leading terms first, in descending graded-lex order.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        let a = self.terms.iter().rev();
        let b = other.terms.iter().rev();
        for ((ma, ca), (mb, cb)) in a.zip(b) {
            let o = mb.cmp(ma).then_with(|| ca.to_string().cmp(&cb.to_string()));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                parts.push(abs.to_string());
            }
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ring.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Integer constant helper used by parsers.
pub(crate) fn scalar_from_decimal(field: Field, digits: &str) -> Result<Scalar> {
    let v: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad integer {digits}")))?;
    Ok(field.from_bigint(&v))
}
