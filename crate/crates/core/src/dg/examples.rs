use std::sync::Arc;

use super::algebra::{unit_vec, zero_vec, DgAlgebra, ProductTable};
use super::module::DgModule;
use crate::arith::{Field, Matrix, Poly, Ring, RingRef};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::koszul::koszul_dg_algebra;

/// The ground ring as a DG algebra concentrated in degree 0.
pub fn base_field_algebra(ring: &RingRef) -> Arc<DgAlgebra> {
    let c = Complex::concentrated(ring, 0, 1);
    let mut products = ProductTable::new();
    products.insert((0, 0), vec![vec![Poly::one(ring)]]);
    Arc::new(DgAlgebra::new(c, 0, products).expect("the ground ring is a DG algebra"))
}

/// K^F(0): the exterior algebra on one degree-1 generator e with zero differential.
pub fn exterior_one(field: Field) -> Arc<DgAlgebra> {
    let ring = Ring::field_only(field);
    Arc::new(koszul_dg_algebra(&[Poly::zero(&ring)]).expect("K(0) is a DG algebra"))
}

/// A commutative algebra in degree 0 from structure constants: `mult[p][q]` is the
/// coordinate vector of b_p·b_q, and basis element 0 is the unit.
pub fn degree_zero_algebra(ring: &RingRef, mult: &[Vec<Vec<i64>>]) -> Result<Arc<DgAlgebra>> {
    let n = mult.len();
    if n == 0 {
        return Err(Error::Dimension("empty basis".into()));
    }
    let mut table = Vec::new();
    for row in mult {
        if row.len() != n {
            return Err(Error::Dimension("structure constants are not square".into()));
        }
        for v in row {
            if v.len() != n {
                return Err(Error::Dimension("product vector has the wrong length".into()));
            }
            table.push(v.iter().map(|&c| Poly::from_i64(ring, c)).collect());
        }
    }
    let mut products = ProductTable::new();
    products.insert((0, 0), table);
    let c = Complex::concentrated(ring, 0, n);
    Ok(Arc::new(DgAlgebra::new(c, 0, products)?))
}

/// F[X]/(X^k) with basis 1, X, …, X^{k-1}.
pub fn truncated_polynomial_algebra(field: Field, k: usize) -> Arc<DgAlgebra> {
    let ring = Ring::field_only(field);
    let mult: Vec<Vec<Vec<i64>>> = (0..k)
        .map(|p| {
            (0..k)
                .map(|q| {
                    let mut v = vec![0; k];
                    if p + q < k {
                        v[p + q] = 1;
                    }
                    v
                })
                .collect()
        })
        .collect();
    degree_zero_algebra(&ring, &mult).expect("truncated polynomial ring")
}

/// F[X_1..X_n]/(X_1..X_n)^2 with basis 1, X_1, …, X_n.
pub fn square_zero_algebra(field: Field, n: usize) -> Arc<DgAlgebra> {
    let ring = Ring::field_only(field);
    let d = n + 1;
    let mult: Vec<Vec<Vec<i64>>> = (0..d)
        .map(|p| {
            (0..d)
                .map(|q| {
                    let mut v = vec![0; d];
                    if p == 0 {
                        v[q] = 1;
                    } else if q == 0 {
                        v[p] = 1;
                    }
                    v
                })
                .collect()
        })
        .collect();
    degree_zero_algebra(&ring, &mult).expect("square-zero extension")
}

/// The residue field A_0/m viewed as a DG module over A, where every non-unit basis
/// element acts as zero. Requires the remaining basis to span an ideal.
pub fn residue_module(a: &Arc<DgAlgebra>) -> Result<DgModule> {
    let ring = a.ring().clone();
    let c = Complex::concentrated(&ring, 0, 1);
    let mut action = ProductTable::new();
    let tab =
        (0..a.rank(0)).map(|p| if p == a.unit() { vec![Poly::one(&ring)] } else { vec![Poly::zero(&ring)] }).collect();
    action.insert((0, 0), tab);
    DgModule::new(a.clone(), c, action)
}

/// Over K^F(0) = F⟨e⟩: the module with basis 1_{2k} in even and e_{2k+1} in odd degrees
/// 0..=top, ∂1_{2k} = e_{2k-1}, e·1_{2k} = e_{2k+1}, e·e_{2k+1} = 0.
pub fn periodic_module(u: &Arc<DgAlgebra>, top: i64) -> Result<DgModule> {
    if u.top() != 1 || u.rank(0) != 1 || u.rank(1) != 1 {
        return Err(Error::Precondition("expected the exterior algebra on one generator".into()));
    }
    let ring = u.ring().clone();
    let ranks = vec![1usize; (top + 1) as usize];
    let diffs = (1..=top)
        .map(|d| {
            let mut m = Matrix::zeros(&ring, 1, 1);
            if d % 2 == 0 {
                m.set(0, 0, Poly::one(&ring));
            }
            m
        })
        .collect();
    let c = Complex::new(&ring, 0, ranks, diffs)?;
    let mut action = ProductTable::new();
    for j in 0..=top {
        action.insert((0, j), vec![unit_vec(&ring, 1, 0)]);
        if j < top {
            let v = if j % 2 == 0 { unit_vec(&ring, 1, 0) } else { zero_vec(&ring, 1) };
            action.insert((1, j), vec![v]);
        }
    }
    DgModule::new(u.clone(), c, action)
}
