use std::collections::BTreeMap;

use super::instance::{ModuliInstance, Slot};
use crate::arith::{FieldMatrix, Matrix, Poly, Scalar};
use crate::complex::{ChainMap, Complex};
use crate::dg::{to_polys, DgModule, DgModuleMorphism, ProductTable};
use crate::error::{Error, Result};

/// Field values for every unknown of an instance.
#[derive(Clone, Debug)]
pub struct ModuliPoint {
    pub instance: ModuliInstance,
    pub values: Vec<Scalar>,
}

/// A degree-0 automorphism of W: one invertible block per degree 0..=s.
pub type GradedAutomorphism = BTreeMap<i64, FieldMatrix>;

impl ModuliPoint {
    /// A point; fails if some constraint does not vanish.
    pub fn new(instance: &ModuliInstance, values: Vec<Scalar>) -> Result<ModuliPoint> {
        let p = ModuliPoint::unchecked(instance, values)?;
        if let Some(c) = p.violated().first() {
            return Err(Error::Axiom(format!("constraint {c} does not vanish")));
        }
        Ok(p)
    }

    pub fn unchecked(instance: &ModuliInstance, values: Vec<Scalar>) -> Result<ModuliPoint> {
        if values.len() != instance.nunknowns() {
            return Err(Error::Dimension(format!("expected {} values, got {}", instance.nunknowns(), values.len())));
        }
        if values.iter().any(|v| v.field() != instance.ring.field) {
            return Err(Error::RingMismatch("point values over the wrong field".into()));
        }
        Ok(ModuliPoint { instance: instance.clone(), values })
    }

    pub fn zero(instance: &ModuliInstance) -> ModuliPoint {
        let field = instance.ring.field;
        ModuliPoint { instance: instance.clone(), values: vec![field.zero(); instance.nunknowns()] }
    }

    /// Constraints not vanishing at this point.
    pub fn violated(&self) -> Vec<Poly> {
        self.instance.constraints.iter().filter(|c| !c.eval(&self.values).is_zero()).cloned().collect()
    }

    pub fn is_valid(&self) -> bool {
        self.violated().is_empty()
    }

    pub fn value(&self, name: &str) -> Option<&Scalar> {
        self.instance.unknown_index(name).map(|k| &self.values[k])
    }

    pub fn diff(&self, i: i64) -> FieldMatrix {
        let inst = &self.instance;
        let field = inst.ring.field;
        let rows = inst.diff_block(i, &|k| self.values[k].clone(), field.zero());
        to_field(field, rows, inst.dim(i - 1), inst.dim(i))
    }

    /// Action of the non-unit element t on W_j.
    pub fn action(&self, t: usize, j: i64) -> FieldMatrix {
        let inst = &self.instance;
        let field = inst.ring.field;
        let rows = inst.action_block(t, j, &|k| self.values[k].clone(), field.zero());
        to_field(field, rows, inst.dim(inst.elements[t].0 + j), inst.dim(j))
    }

    /// The complex and action table defined by the point; fails if ∂∂ ≠ 0.
    pub fn module_data(&self) -> Result<(Complex, ProductTable)> {
        let inst = &self.instance;
        let a = &inst.algebra;
        let ring = a.ring().clone();
        let s = inst.top();
        let ranks = inst.dims.clone();
        let diffs = (1..=s).map(|i| Matrix::from_field(&ring, &self.diff(i))).collect();
        let complex = Complex::new(&ring, 0, ranks, diffs)?;
        let mut table = ProductTable::new();
        for i in a.complex().degrees() {
            for j in 0..=s {
                let mut tab = Vec::new();
                for p in 0..a.rank(i) {
                    let m = if i == 0 && p == a.unit() {
                        FieldMatrix::identity(ring.field, inst.dim(j))
                    } else {
                        let t = inst.elements.iter().position(|&e| e == (i, p)).unwrap();
                        self.action(t, j)
                    };
                    for c in 0..inst.dim(j) {
                        tab.push(to_polys(&ring, &m.column(c)));
                    }
                }
                table.insert((i, j), tab);
            }
        }
        Ok((complex, table))
    }

    pub fn to_module(&self) -> Result<DgModule> {
        let (complex, table) = self.module_data()?;
        DgModule::new(self.instance.algebra.clone(), complex, table)
    }

    /// Whether the module axioms hold, checked directly on the structure.
    pub fn module_axioms_hold(&self) -> bool {
        self.to_module().is_ok()
    }
}

fn to_field(field: crate::arith::Field, rows: Vec<Vec<Scalar>>, r: usize, c: usize) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(field, r, c);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

fn check_alpha(inst: &ModuliInstance, alpha: &GradedAutomorphism) -> Result<BTreeMap<i64, FieldMatrix>> {
    let mut inv = BTreeMap::new();
    for j in 0..=inst.top() {
        let n = inst.dim(j);
        let b = alpha.get(&j).ok_or_else(|| Error::Dimension(format!("missing block in degree {j}")))?;
        if b.rows() != n || b.cols() != n {
            return Err(Error::Dimension(format!("block {j} must be {n}×{n}")));
        }
        let bi = b.inverse().map_err(|_| Error::Precondition(format!("block {j} is singular")))?;
        inv.insert(j, bi);
    }
    Ok(inv)
}

/// α·(∂, μ): ∂̃_i = α_{i-1} ∂_i α_i^{-1}, μ̃ = α_{|a|+j} μ_a α_j^{-1}; the unit still acts as 1.
pub fn act_on(point: &ModuliPoint, alpha: &GradedAutomorphism) -> Result<ModuliPoint> {
    let inst = &point.instance;
    let inv = check_alpha(inst, alpha)?;
    let field = inst.ring.field;
    let mut values = vec![field.zero(); inst.nunknowns()];
    let mut diffs = BTreeMap::new();
    for i in 1..=inst.top() {
        diffs.insert(i, alpha[&(i - 1)].mul(&point.diff(i)).mul(&inv[&i]));
    }
    let mut acts = BTreeMap::new();
    for (t, &(deg, _)) in inst.elements.iter().enumerate() {
        for j in 0..=inst.top() {
            if inst.dim(deg + j) * inst.dim(j) == 0 {
                continue;
            }
            acts.insert((t, j), alpha[&(deg + j)].mul(&point.action(t, j)).mul(&inv[&j]));
        }
    }
    for (k, s) in inst.slots.iter().enumerate() {
        values[k] = match s {
            Slot::Diff { degree, row, col } => diffs[degree].get(*row, *col).clone(),
            Slot::Action { element, source, row, col } => acts[&(*element, *source)].get(*row, *col).clone(),
        };
    }
    ModuliPoint::new(inst, values)
}

/// α as a DG-module isomorphism from the module at p to the module at α·p.
pub fn orbit_isomorphism(point: &ModuliPoint, alpha: &GradedAutomorphism) -> Result<DgModuleMorphism> {
    let moved = act_on(point, alpha)?;
    let src = point.to_module()?;
    let tgt = moved.to_module()?;
    let ring = src.ring().clone();
    let comps = (0..=point.instance.top()).map(|j| Matrix::from_field(&ring, &alpha[&j])).collect();
    let map = ChainMap::new(src.complex(), tgt.complex(), 0, comps)?;
    DgModuleMorphism::new(&src, &tgt, map)
}

/// Product βα of graded automorphisms (apply α first).
pub fn compose(beta: &GradedAutomorphism, alpha: &GradedAutomorphism) -> GradedAutomorphism {
    alpha.iter().map(|(j, a)| (*j, beta[j].mul(a))).collect()
}
