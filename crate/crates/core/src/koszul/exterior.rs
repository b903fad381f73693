use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Poly, RingRef};

/// Increasing 0-based index lists of size t from 0..n, in lexicographic order.
pub fn exterior_basis(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t <= n {
        rec(0, n, t, &mut Vec::new(), &mut out);
    }
    out
}

/// Position of an increasing index list in `exterior_basis(n, list.len())`.
pub fn exterior_index(n: usize, set: &[usize]) -> usize {
    exterior_basis(n, set.len()).iter().position(|b| b == set).expect("index list is a basis element")
}

/// e_a ∧ e_b for increasing lists: None if they overlap, else the sign and the merged list.
pub fn wedge_basis(a: &[usize], b: &[usize]) -> Option<(i64, Vec<usize>)> {
    if a.iter().any(|i| b.contains(i)) {
        return None;
    }
    // each pair (i in a, j in b) with i > j needs one transposition
    let inversions: usize = a.iter().map(|i| b.iter().filter(|j| *j < i).count()).sum();
    let mut merged: Vec<usize> = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((if inversions % 2 == 0 { 1 } else { -1 }, merged))
}

/// An element of the exterior algebra ∧(R^n) with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exterior {
    ring: RingRef,
    n: usize,
    terms: BTreeMap<Vec<usize>, Poly>,
}

impl Exterior {
    pub fn zero(ring: &RingRef, n: usize) -> Exterior {
        Exterior { ring: ring.clone(), n, terms: BTreeMap::new() }
    }

    /// The basis element e_{i1}∧…∧e_{it} (0-based, increasing).
    pub fn basis(ring: &RingRef, n: usize, set: &[usize]) -> Exterior {
        let mut e = Exterior::zero(ring, n);
        let mut s = set.to_vec();
        s.sort_unstable();
        e.terms.insert(s, Poly::one(ring));
        e
    }

    pub fn one(ring: &RingRef, n: usize) -> Exterior {
        Exterior::basis(ring, n, &[])
    }

    pub fn add_term(&mut self, set: Vec<usize>, c: Poly) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&set) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(set, v);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn wedge(&self, other: &Exterior) -> Exterior {
        let mut out = Exterior::zero(&self.ring, self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((s, m)) = wedge_basis(a, b) {
                    let c = ca * cb;
                    out.add_term(m, if s > 0 { c } else { -&c });
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Exterior) -> Exterior {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, r: &Poly) -> Exterior {
        let mut out = Exterior::zero(&self.ring, self.n);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * r);
        }
        out
    }

    /// Koszul differential on the sequence xs: ∂(e_{j1}∧…∧e_{jt}) = Σ_p (-1)^{p+1} x_{jp} (…ê_{jp}…).
    pub fn koszul_diff(&self, xs: &[Poly]) -> Exterior {
        let mut out = Exterior::zero(&self.ring, self.n);
        for (set, c) in &self.terms {
            for (p, &j) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(p);
                let t = c * &xs[j];
                out.add_term(rest, if p % 2 == 0 { t } else { -&t });
            }
        }
        out
    }

    /// Homogeneous degree, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Vec::len);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

impl fmt::Display for Exterior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (set, c) in &self.terms {
            let name = if set.is_empty() {
                "1".to_string()
            } else {
                set.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
            };
            let cs = c.to_string();
            let (sign, body) = match cs.strip_prefix('-') {
                Some(rest) if c.nterms() == 1 => ("-", rest.to_string()),
                _ => ("+", cs.clone()),
            };
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let coef = if c.nterms() > 1 {
                format!("({body}) ")
            } else if body == "1" {
                String::new()
            } else {
                format!("{body} ")
            };
            write!(f, "{sign} {coef}{name}")?;
        }
        Ok(())
    }
}
