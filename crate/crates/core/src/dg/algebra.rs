use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Poly, RingRef};
use crate::complex::Complex;
use crate::error::{Error, Result};

/// Structure constants keyed by degree pair (i, j). The entry for (i, j) lists, for each
/// basis pair (p in degree i, q in degree j) in p-major order, the coordinate vector of
/// the product in degree i + j. Missing keys mean zero products.
pub type ProductTable = BTreeMap<(i64, i64), Vec<Vec<Poly>>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Shape,
    Positive,
    Unital,
    Associative,
    GradedCommutative,
    OddSquareZero,
    Leibniz,
    Linear,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Shape => "shape",
            Axiom::Positive => "positively graded",
            Axiom::Unital => "unital",
            Axiom::Associative => "associative",
            Axiom::GradedCommutative => "graded commutative",
            Axiom::OddSquareZero => "odd squares vanish",
            Axiom::Leibniz => "Leibniz rule",
            Axiom::Linear => "linearity",
        };
        write!(f, "{s}")
    }
}

/// One failed axiom instance: the degrees and basis indices of the witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub degrees: Vec<i64>,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at degrees {:?}, basis {:?}", self.axiom, self.degrees, self.indices)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub(crate) fn push(&mut self, axiom: Axiom, degrees: Vec<i64>, indices: Vec<usize>) {
        self.violations.push(Violation { axiom, degrees, indices });
    }

    pub(crate) fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Axiom(v.to_string())),
        }
    }
}

pub(crate) fn zero_vec(ring: &RingRef, n: usize) -> Vec<Poly> {
    vec![Poly::zero(ring); n]
}

pub(crate) fn add_vec(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale_vec(a: &[Poly], c: &Poly) -> Vec<Poly> {
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn neg_vec(a: &[Poly]) -> Vec<Poly> {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn unit_vec(ring: &RingRef, n: usize, k: usize) -> Vec<Poly> {
    let mut v = zero_vec(ring, n);
    v[k] = Poly::one(ring);
    v
}

/// Candidate DG algebra data, verified by `verify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebraData {
    pub complex: Complex,
    /// Index of the unit in the degree-0 basis.
    pub unit: usize,
    pub products: ProductTable,
}

/// A verified finite DG algebra: associative, unital, graded commutative with odd
/// squares zero, non-negatively graded, satisfying Leibniz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgAlgebra {
    data: DgAlgebraData,
}

impl DgAlgebraData {
    pub fn ring(&self) -> &RingRef {
        self.complex.ring()
    }

    pub fn rank(&self, i: i64) -> usize {
        self.complex.rank(i)
    }

    /// Product of basis elements p ∈ A_i and q ∈ A_j.
    pub fn basis_product(&self, i: i64, p: usize, j: i64, q: usize) -> Vec<Poly> {
        let n = self.rank(i + j);
        match self.products.get(&(i, j)) {
            Some(t) => t.get(p * self.rank(j) + q).cloned().unwrap_or_else(|| zero_vec(self.ring(), n)),
            None => zero_vec(self.ring(), n),
        }
    }

    /// Product of homogeneous elements a ∈ A_i, b ∈ A_j given by coordinates.
    pub fn mul(&self, i: i64, a: &[Poly], j: i64, b: &[Poly]) -> Vec<Poly> {
        let n = self.rank(i + j);
        let mut out = zero_vec(self.ring(), n);
        if n == 0 {
            return out;
        }
        for (p, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (q, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                let v = self.basis_product(i, p, j, q);
                out = add_vec(&out, &scale_vec(&v, &c));
            }
        }
        out
    }

    pub fn diff_vec(&self, i: i64, a: &[Poly]) -> Vec<Poly> {
        self.complex.diff(i).mul_vec(a)
    }

    fn check_shapes(&self, rep: &mut VerificationReport) {
        if self.complex.lo() < 0 && self.complex.degrees().any(|i| i < 0 && self.rank(i) > 0) {
            rep.push(Axiom::Positive, vec![self.complex.lo()], vec![]);
        }
        if self.unit >= self.rank(0) {
            rep.push(Axiom::Shape, vec![0], vec![self.unit]);
        }
        for (&(i, j), t) in &self.products {
            let ok = t.len() == self.rank(i) * self.rank(j) && t.iter().all(|v| v.len() == self.rank(i + j));
            if !ok {
                rep.push(Axiom::Shape, vec![i, j], vec![]);
            }
        }
    }

    /// Checks every axiom on basis elements, with Leibniz sign ε in
    /// ∂(ab) = ∂a·b + ε(-1)^{|a|} a·∂b (ε = 1 is the correct rule).
    pub fn verify_with_leibniz_sign(&self, eps: i64) -> VerificationReport {
        let mut rep = VerificationReport::default();
        self.check_shapes(&mut rep);
        if !rep.ok() {
            return rep;
        }
        let ring = self.ring().clone();
        let degs: Vec<i64> = self.complex.degrees().filter(|&i| i >= 0).collect();
        let u = unit_vec(&ring, self.rank(0), self.unit);
        for &i in &degs {
            for p in 0..self.rank(i) {
                let e = unit_vec(&ring, self.rank(i), p);
                if self.mul(0, &u, i, &e) != e {
                    rep.push(Axiom::Unital, vec![0, i], vec![self.unit, p]);
                }
            }
        }
        for &i in &degs {
            for &j in &degs {
                for p in 0..self.rank(i) {
                    for q in 0..self.rank(j) {
                        let ab = self.basis_product(i, p, j, q);
                        let ba = self.basis_product(j, q, i, p);
                        let s = if (i * j) % 2 == 0 { ab.clone() } else { neg_vec(&ab) };
                        if ba != s {
                            rep.push(Axiom::GradedCommutative, vec![i, j], vec![p, q]);
                        }
                        if i == j && p == q && i % 2 != 0 && ab.iter().any(|c| !c.is_zero()) {
                            rep.push(Axiom::OddSquareZero, vec![i, i], vec![p, p]);
                        }
                        let ea = unit_vec(&ring, self.rank(i), p);
                        let eb = unit_vec(&ring, self.rank(j), q);
                        let lhs = self.diff_vec(i + j, &ab);
                        let t1 = self.mul(i - 1, &self.diff_vec(i, &ea), j, &eb);
                        let t2 = self.mul(i, &ea, j - 1, &self.diff_vec(j, &eb));
                        let sign = if i % 2 == 0 { eps } else { -eps };
                        let rhs = add_vec(&t1, &scale_vec(&t2, &Poly::from_i64(&ring, sign)));
                        if lhs != rhs {
                            rep.push(Axiom::Leibniz, vec![i, j], vec![p, q]);
                        }
                    }
                }
            }
        }
        for &i in &degs {
            for &j in &degs {
                for &k in &degs {
                    if i + j + k > self.complex.hi() {
                        continue;
                    }
                    for p in 0..self.rank(i) {
                        for q in 0..self.rank(j) {
                            for r in 0..self.rank(k) {
                                let ea = unit_vec(&ring, self.rank(i), p);
                                let ec = unit_vec(&ring, self.rank(k), r);
                                let left = self.mul(i + j, &self.basis_product(i, p, j, q), k, &ec);
                                let right = self.mul(i, &ea, j + k, &self.basis_product(j, q, k, r));
                                if left != right {
                                    rep.push(Axiom::Associative, vec![i, j, k], vec![p, q, r]);
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }

    pub fn verify(&self) -> VerificationReport {
        self.verify_with_leibniz_sign(1)
    }
}

impl DgAlgebra {
    pub fn new(complex: Complex, unit: usize, products: ProductTable) -> Result<DgAlgebra> {
        DgAlgebra::from_data(DgAlgebraData { complex, unit, products })
    }

    pub fn from_data(data: DgAlgebraData) -> Result<DgAlgebra> {
        data.verify().into_result()?;
        Ok(DgAlgebra { data })
    }

    pub fn data(&self) -> &DgAlgebraData {
        &self.data
    }

    pub fn complex(&self) -> &Complex {
        &self.data.complex
    }

    pub fn ring(&self) -> &RingRef {
        self.data.ring()
    }

    pub fn unit(&self) -> usize {
        self.data.unit
    }

    pub fn unit_vec(&self) -> Vec<Poly> {
        unit_vec(self.ring(), self.rank(0), self.data.unit)
    }

    pub fn rank(&self, i: i64) -> usize {
        self.data.rank(i)
    }

    pub fn top(&self) -> i64 {
        self.data.complex.hi()
    }

    pub fn products(&self) -> &ProductTable {
        &self.data.products
    }

    pub fn basis_product(&self, i: i64, p: usize, j: i64, q: usize) -> Vec<Poly> {
        self.data.basis_product(i, p, j, q)
    }

    pub fn mul(&self, i: i64, a: &[Poly], j: i64, b: &[Poly]) -> Vec<Poly> {
        self.data.mul(i, a, j, b)
    }

    pub fn diff_vec(&self, i: i64, a: &[Poly]) -> Vec<Poly> {
        self.data.diff_vec(i, a)
    }

    /// All basis elements as (degree, index) pairs, degree-major.
    pub fn basis(&self) -> Vec<(i64, usize)> {
        self.complex().degrees().flat_map(|i| (0..self.rank(i)).map(move |p| (i, p))).collect()
    }

    /// Basis elements other than the unit.
    pub fn non_unit_basis(&self) -> Vec<(i64, usize)> {
        self.basis().into_iter().filter(|&(i, p)| !(i == 0 && p == self.data.unit)).collect()
    }
}
