use std::ops::{Add, Mul};

use super::instance::Slot;
use super::point::ModuliPoint;
use crate::arith::{same_span, span_rank, FieldMatrix, Poly, Scalar};

/// a + bε with ε² = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    pub re: Scalar,
    pub eps: Scalar,
}

impl Add for &Dual {
    type Output = Dual;
    fn add(self, o: &Dual) -> Dual {
        Dual { re: &self.re + &o.re, eps: &self.eps + &o.eps }
    }
}

impl Mul for &Dual {
    type Output = Dual;
    fn mul(self, o: &Dual) -> Dual {
        Dual { re: &self.re * &o.re, eps: &(&self.re * &o.eps) + &(&self.eps * &o.re) }
    }
}

/// Evaluates p at the dual point x + εv.
pub fn eval_dual(p: &Poly, x: &[Scalar], v: &[Scalar]) -> Dual {
    let field = p.field();
    let mut acc = Dual { re: field.zero(), eps: field.zero() };
    for (m, c) in p.terms() {
        let mut t = Dual { re: c.clone(), eps: field.zero() };
        for (k, &e) in m.0.iter().enumerate() {
            let xk = Dual { re: x[k].clone(), eps: v[k].clone() };
            for _ in 0..e {
                t = &t * &xk;
            }
        }
        acc = &acc + &t;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct TangentReport {
    pub ambient: usize,
    pub tangent_dim: usize,
    pub orbit_dim: usize,
    pub yext_dim: usize,
    /// Jacobian of the constraints at the point (rows: constraints).
    pub jacobian: FieldMatrix,
    pub tangent_basis: Vec<Vec<Scalar>>,
    /// Images of the matrix units of End(W)_0 under the orbit map.
    pub orbit_span: Vec<Vec<Scalar>>,
}

/// Jacobian of the normalized constraints at the point.
pub fn jacobian(point: &ModuliPoint) -> FieldMatrix {
    let inst = &point.instance;
    let field = inst.ring.field;
    let n = inst.nunknowns();
    let rows = inst.constraints.len();
    let mut j = FieldMatrix::zeros(field, rows, n);
    for (r, c) in inst.constraints.iter().enumerate() {
        for k in 0..n {
            j.set(r, k, c.derivative(k).eval(&point.values));
        }
    }
    j
}

fn kernel_or_all(m: &FieldMatrix, n: usize) -> Vec<Vec<Scalar>> {
    if m.rows() == 0 {
        FieldMatrix::identity(m.field(), n).columns()
    } else {
        m.kernel()
    }
}

/// Kernel of the Jacobian: first-order deformations of the structure.
pub fn tangent_space(point: &ModuliPoint) -> Vec<Vec<Scalar>> {
    kernel_or_all(&jacobian(point), point.instance.nunknowns())
}

/// The same space from the dual-number description: directions v such that every
/// constraint vanishes at x + εv over F[ε].
pub fn tangent_space_dual(point: &ModuliPoint) -> Vec<Vec<Scalar>> {
    let inst = &point.instance;
    let field = inst.ring.field;
    let n = inst.nunknowns();
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut v = vec![field.zero(); n];
            v[k] = field.one();
            inst.constraints.iter().map(|c| eval_dual(c, &point.values, &v).eps).collect()
        })
        .collect();
    kernel_or_all(&FieldMatrix::from_columns(field, inst.constraints.len(), &cols), n)
}

/// Derivative at the identity of the orbit map: h ↦ (h∂ - ∂h, hμ - μh) for each matrix
/// unit h of End(W)_0.
pub fn orbit_tangent(point: &ModuliPoint) -> Vec<Vec<Scalar>> {
    let inst = &point.instance;
    let field = inst.ring.field;
    let mut out = Vec::new();
    for j in 0..=inst.top() {
        let n = inst.dim(j);
        for r in 0..n {
            for c in 0..n {
                let h = |deg: i64| {
                    let mut m = FieldMatrix::zeros(field, inst.dim(deg), inst.dim(deg));
                    if deg == j {
                        m.set(r, c, field.one());
                    }
                    m
                };
                let v = inst
                    .slots
                    .iter()
                    .map(|s| match s {
                        Slot::Diff { degree, row, col } => {
                            let d = point.diff(*degree);
                            let m = h(degree - 1).mul(&d).sub(&d.mul(&h(*degree)));
                            m.get(*row, *col).clone()
                        }
                        Slot::Action { element, source, row, col } => {
                            let deg = inst.elements[*element].0;
                            let mu = point.action(*element, *source);
                            let m = h(deg + source).mul(&mu).sub(&mu.mul(&h(*source)));
                            m.get(*row, *col).clone()
                        }
                    })
                    .collect();
                out.push(v);
            }
        }
    }
    out
}

/// dim T_M - dim (orbit tangent), with the supporting data. Also checks that the
/// Jacobian and dual-number tangent spaces agree and contain the orbit tangent.
pub fn yext_dimension(point: &ModuliPoint) -> TangentReport {
    let inst = &point.instance;
    let field = inst.ring.field;
    let n = inst.nunknowns();
    let jac = jacobian(point);
    let tangent = kernel_or_all(&jac, n);
    let dual = tangent_space_dual(point);
    assert!(same_span(field, n, &tangent, &dual), "Jacobian and dual-number tangent spaces differ");
    let orbit = orbit_tangent(point);
    let orbit_dim = span_rank(field, n, &orbit);
    let mut both = tangent.clone();
    both.extend(orbit.iter().cloned());
    assert_eq!(span_rank(field, n, &both), tangent.len(), "orbit tangent leaves the tangent space");
    TangentReport {
        ambient: n,
        tangent_dim: tangent.len(),
        orbit_dim,
        yext_dim: tangent.len() - orbit_dim,
        jacobian: jac,
        tangent_basis: tangent,
        orbit_span: orbit,
    }
}
