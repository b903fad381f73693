use std::sync::Arc;

use super::algebra::{
    add_vec, neg_vec, scale_vec, unit_vec, zero_vec, Axiom, DgAlgebra, ProductTable, VerificationReport,
};
use crate::arith::{same_ring, Matrix, Poly, RingRef};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};

/// Candidate DG module data over a fixed DG algebra. The action table is keyed by
/// (i, j) = (algebra degree, module degree), entries in p-major order over (a, m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModuleData {
    pub algebra: Arc<DgAlgebra>,
    pub complex: Complex,
    pub action: ProductTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgModule {
    data: DgModuleData,
}

impl DgModuleData {
    pub fn ring(&self) -> &RingRef {
        self.complex.ring()
    }

    pub fn rank(&self, j: i64) -> usize {
        self.complex.rank(j)
    }

    pub fn basis_act(&self, i: i64, p: usize, j: i64, m: usize) -> Vec<Poly> {
        let n = self.rank(i + j);
        match self.action.get(&(i, j)) {
            Some(t) => t.get(p * self.rank(j) + m).cloned().unwrap_or_else(|| zero_vec(self.ring(), n)),
            None => zero_vec(self.ring(), n),
        }
    }

    /// a·m for a ∈ A_i, m ∈ M_j given by coordinates.
    pub fn act(&self, i: i64, a: &[Poly], j: i64, m: &[Poly]) -> Vec<Poly> {
        let n = self.rank(i + j);
        let mut out = zero_vec(self.ring(), n);
        if n == 0 {
            return out;
        }
        for (p, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (q, cm) in m.iter().enumerate() {
                if cm.is_zero() {
                    continue;
                }
                let v = self.basis_act(i, p, j, q);
                out = add_vec(&out, &scale_vec(&v, &(ca * cm)));
            }
        }
        out
    }

    pub fn diff_vec(&self, j: i64, m: &[Poly]) -> Vec<Poly> {
        self.complex.diff(j).mul_vec(m)
    }

    /// Unital, associative and Leibniz checks on basis elements.
    pub fn verify(&self) -> VerificationReport {
        let mut rep = VerificationReport::default();
        let a = &self.algebra;
        if !same_ring(a.ring(), self.ring()) {
            rep.push(Axiom::Shape, vec![], vec![]);
            return rep;
        }
        for (&(i, j), t) in &self.action {
            let ok = t.len() == a.rank(i) * self.rank(j) && t.iter().all(|v| v.len() == self.rank(i + j));
            if !ok {
                rep.push(Axiom::Shape, vec![i, j], vec![]);
            }
        }
        if !rep.ok() {
            return rep;
        }
        let ring = self.ring().clone();
        let adeg: Vec<i64> = a.complex().degrees().collect();
        let mdeg: Vec<i64> = self.complex.degrees().collect();
        let u = a.unit_vec();
        for &j in &mdeg {
            for m in 0..self.rank(j) {
                let e = unit_vec(&ring, self.rank(j), m);
                if self.act(0, &u, j, &e) != e {
                    rep.push(Axiom::Unital, vec![0, j], vec![a.unit(), m]);
                }
            }
        }
        for &i in &adeg {
            for &j in &mdeg {
                for p in 0..a.rank(i) {
                    let ea = unit_vec(&ring, a.rank(i), p);
                    for m in 0..self.rank(j) {
                        let em = unit_vec(&ring, self.rank(j), m);
                        let am = self.basis_act(i, p, j, m);
                        let lhs = self.diff_vec(i + j, &am);
                        let t1 = self.act(i - 1, &a.diff_vec(i, &ea), j, &em);
                        let t2 = self.act(i, &ea, j - 1, &self.diff_vec(j, &em));
                        let rhs = if i % 2 == 0 { add_vec(&t1, &t2) } else { add_vec(&t1, &neg_vec(&t2)) };
                        if lhs != rhs {
                            rep.push(Axiom::Leibniz, vec![i, j], vec![p, m]);
                        }
                    }
                }
            }
        }
        for &i in &adeg {
            for &k in &adeg {
                for &j in &mdeg {
                    if self.rank(i + k + j) == 0 {
                        continue;
                    }
                    for p in 0..a.rank(i) {
                        let ea = unit_vec(&ring, a.rank(i), p);
                        for q in 0..a.rank(k) {
                            let ab = a.basis_product(i, p, k, q);
                            for m in 0..self.rank(j) {
                                let em = unit_vec(&ring, self.rank(j), m);
                                let left = self.act(i + k, &ab, j, &em);
                                let right = self.act(i, &ea, k + j, &self.basis_act(k, q, j, m));
                                if left != right {
                                    rep.push(Axiom::Associative, vec![i, k, j], vec![p, q, m]);
                                }
                            }
                        }
                    }
                }
            }
        }
        rep
    }
}

impl DgModule {
    pub fn new(algebra: Arc<DgAlgebra>, complex: Complex, action: ProductTable) -> Result<DgModule> {
        DgModule::from_data(DgModuleData { algebra, complex, action })
    }

    pub fn from_data(data: DgModuleData) -> Result<DgModule> {
        data.verify().into_result()?;
        Ok(DgModule { data })
    }

    /// A's complex as a module over itself.
    pub fn regular(algebra: &Arc<DgAlgebra>) -> DgModule {
        DgModule {
            data: DgModuleData {
                algebra: algebra.clone(),
                complex: algebra.complex().clone(),
                action: algebra.products().clone(),
            },
        }
    }

    pub fn data(&self) -> &DgModuleData {
        &self.data
    }

    pub fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.data.algebra
    }

    pub fn complex(&self) -> &Complex {
        &self.data.complex
    }

    pub fn ring(&self) -> &RingRef {
        self.data.ring()
    }

    pub fn rank(&self, j: i64) -> usize {
        self.data.rank(j)
    }

    pub fn action(&self) -> &ProductTable {
        &self.data.action
    }

    pub fn basis_act(&self, i: i64, p: usize, j: i64, m: usize) -> Vec<Poly> {
        self.data.basis_act(i, p, j, m)
    }

    pub fn act(&self, i: i64, a: &[Poly], j: i64, m: &[Poly]) -> Vec<Poly> {
        self.data.act(i, a, j, m)
    }

    /// Matrix of m ↦ a·m from M_j to M_{i+j} for basis element a = (i, p).
    pub fn action_matrix(&self, i: i64, p: usize, j: i64) -> Matrix {
        let ring = self.ring();
        let mut mat = Matrix::zeros(ring, self.rank(i + j), self.rank(j));
        for m in 0..self.rank(j) {
            for (r, v) in self.basis_act(i, p, j, m).into_iter().enumerate() {
                mat.set(r, m, v);
            }
        }
        mat
    }
}

/// Whether a degree-n graded map f satisfies f(am) = (-1)^{n|a|} a f(m) on basis elements.
pub fn is_a_linear(m: &DgModule, n_mod: &DgModule, f: &ChainMap) -> bool {
    let a = m.algebra();
    let n = f.degree();
    for i in a.complex().degrees() {
        for p in 0..a.rank(i) {
            for j in m.complex().degrees() {
                let fj = f.component(j);
                let fij = f.component(i + j);
                for k in 0..m.rank(j) {
                    let am = m.basis_act(i, p, j, k);
                    let lhs = fij.mul_vec(&am);
                    let fm = fj.column(k);
                    let mut rhs = n_mod.act(i, &unit_vec(m.ring(), a.rank(i), p), j + n, &fm);
                    if (n * i) % 2 != 0 {
                        rhs = neg_vec(&rhs);
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A morphism of DG modules: an A-linear chain map of degree 0.
#[derive(Clone, Debug)]
pub struct DgModuleMorphism {
    pub source: DgModule,
    pub target: DgModule,
    pub map: ChainMap,
}

impl DgModuleMorphism {
    pub fn new(source: &DgModule, target: &DgModule, map: ChainMap) -> Result<Self> {
        if map.degree() != 0 {
            return Err(Error::Precondition("DG module morphisms have degree 0".into()));
        }
        map.check_commutes()?;
        if !is_a_linear(source, target, &map) {
            return Err(Error::Axiom("map is not A-linear".into()));
        }
        Ok(DgModuleMorphism { source: source.clone(), target: target.clone(), map })
    }
}

/// A morphism of DG algebras: a unital, multiplicative chain map of degree 0.
#[derive(Clone, Debug)]
pub struct DgAlgebraMorphism {
    pub source: Arc<DgAlgebra>,
    pub target: Arc<DgAlgebra>,
    pub map: ChainMap,
}

impl DgAlgebraMorphism {
    pub fn new(source: &Arc<DgAlgebra>, target: &Arc<DgAlgebra>, map: ChainMap) -> Result<Self> {
        if map.degree() != 0 {
            return Err(Error::Precondition("algebra morphisms have degree 0".into()));
        }
        map.check_commutes()?;
        let f0 = map.component(0);
        if f0.mul_vec(&source.unit_vec()) != target.unit_vec() {
            return Err(Error::Axiom("unit is not preserved".into()));
        }
        let ring = source.ring();
        for (i, p) in source.basis() {
            for (j, q) in source.basis() {
                let ab = source.basis_product(i, p, j, q);
                let lhs = map.component(i + j).mul_vec(&ab);
                let fa = map.component(i).mul_vec(&unit_vec(ring, source.rank(i), p));
                let fb = map.component(j).mul_vec(&unit_vec(ring, source.rank(j), q));
                if lhs != target.mul(i, &fa, j, &fb) {
                    return Err(Error::Axiom(format!("products not preserved at ({i},{j})")));
                }
            }
        }
        Ok(DgAlgebraMorphism { source: source.clone(), target: target.clone(), map })
    }
}
