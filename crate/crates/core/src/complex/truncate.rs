use std::collections::BTreeMap;

use super::{ChainMap, Complex};
use crate::arith::{FieldMatrix, Matrix, Scalar};
use crate::error::{Error, Result};

/// A quotient complex X/S with the projection and a degreewise linear section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Complex,
    pub projection: ChainMap,
    /// lift[i]: columns are the chosen complement basis vectors in X_i.
    pub lift: BTreeMap<i64, FieldMatrix>,
    /// proj[i]: coordinates in the complement basis of any vector of X_i, modulo S_i.
    pub proj: BTreeMap<i64, FieldMatrix>,
}

/// Complement of span(S) in F^n spanned by standard vectors, and the projection
/// onto complement coordinates that kills S.
pub(crate) fn complement(field: crate::arith::Field, n: usize, sub: &[Vec<Scalar>]) -> (FieldMatrix, FieldMatrix) {
    let s = FieldMatrix::from_columns(field, n, sub);
    let all = s.hcat(&FieldMatrix::identity(field, n));
    let piv = all.column_basis();
    let indep: Vec<usize> = piv.iter().copied().filter(|&j| j < sub.len()).collect();
    let comp: Vec<usize> = piv.iter().copied().filter(|&j| j >= sub.len()).map(|j| j - sub.len()).collect();
    let basis = s.select_columns(&indep).hcat(&FieldMatrix::identity(field, n).select_columns(&comp));
    let inv = basis.inverse().expect("complement basis is invertible");
    let rows: Vec<usize> = (indep.len()..n).collect();
    let lift = FieldMatrix::identity(field, n).select_columns(&comp);
    (lift, inv.select_rows(&rows))
}

/// X/S for a subcomplex S given by spanning vectors per degree (field coefficients).
pub fn quotient_complex(x: &Complex, sub: &BTreeMap<i64, Vec<Vec<Scalar>>>) -> Result<Quotient> {
    if !x.is_constant() {
        return Err(Error::NonConstant("quotient needs field coefficients".into()));
    }
    let field = x.ring().field;
    let ring = x.ring();
    let mut lift = BTreeMap::new();
    let mut proj = BTreeMap::new();
    for i in x.degrees() {
        let s = sub.get(&i).cloned().unwrap_or_default();
        let (l, p) = complement(field, x.rank(i), &s);
        lift.insert(i, l);
        proj.insert(i, p);
    }
    let empty = |i: i64| FieldMatrix::zeros(field, 0, x.rank(i));
    let get_p = |i: i64| proj.get(&i).cloned().unwrap_or_else(|| empty(i));
    for i in x.degrees() {
        let d = x.field_diff(i)?;
        for v in sub.get(&i).into_iter().flatten() {
            if !get_p(i - 1).mul_vec(&d.mul_vec(v)).iter().all(Scalar::is_zero) {
                return Err(Error::Precondition(format!("subspace is not closed under ∂ in degree {i}")));
            }
        }
    }
    let ranks: Vec<usize> = x.degrees().map(|i| lift[&i].cols()).collect();
    let diffs = (x.lo() + 1..=x.hi())
        .map(|i| {
            let d = x.field_diff(i).unwrap();
            Matrix::from_field(ring, &get_p(i - 1).mul(&d).mul(&lift[&i]))
        })
        .collect();
    let q = Complex::new(ring, x.lo(), ranks, diffs)?;
    let comps = x.degrees().map(|i| Matrix::from_field(ring, &proj[&i])).collect();
    let projection = ChainMap::new(x, &q, 0, comps)?;
    Ok(Quotient { complex: q, projection, lift, proj })
}

/// τ_{≤n} M together with the natural surjection M → τ_{≤n} M.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub complex: Complex,
    pub map: ChainMap,
}

/// Soft truncation 0 → M_n/Im ∂_{n+1} → M_{n-1} → ⋯.
///
/// Over a polynomial ring this is only available when ∂_{n+1} = 0.
pub fn soft_truncate(m: &Complex, n: i64) -> Result<Truncation> {
    let ring = m.ring();
    if n < m.lo() {
        let z = Complex::concentrated(ring, m.lo(), 0);
        let map = ChainMap::zero(m, &z, 0);
        return Ok(Truncation { complex: z, map });
    }
    if n >= m.hi() {
        return Ok(Truncation { complex: m.clone(), map: ChainMap::identity(m) });
    }
    let top = n;
    if m.diff(n + 1).is_zero() {
        let ranks = (m.lo()..=top).map(|i| m.rank(i)).collect();
        let diffs = (m.lo() + 1..=top).map(|i| m.diff(i)).collect();
        let t = Complex::new(ring, m.lo(), ranks, diffs)?;
        let comps = m
            .degrees()
            .map(|i| if i <= top { Matrix::identity(ring, m.rank(i)) } else { Matrix::zeros(ring, 0, m.rank(i)) })
            .collect();
        let map = ChainMap::new(m, &t, 0, comps)?;
        return Ok(Truncation { complex: t, map });
    }
    if !m.is_constant() {
        return Err(Error::NonConstant("soft truncation with nonzero ∂_{n+1} needs field coefficients".into()));
    }
    let mut sub = BTreeMap::new();
    for i in n + 1..=m.hi() {
        let r = m.rank(i);
        let id = FieldMatrix::identity(ring.field, r);
        sub.insert(i, id.columns());
    }
    let dn = m.field_diff(n + 1)?;
    sub.insert(n, dn.columns());
    let q = quotient_complex(m, &sub)?;
    let ranks = (m.lo()..=top).map(|i| q.complex.rank(i)).collect();
    let diffs = (m.lo() + 1..=top).map(|i| q.complex.diff(i)).collect();
    let t = Complex::new(ring, m.lo(), ranks, diffs)?;
    let comps = m.degrees().map(|i| q.projection.component(i)).collect();
    let map = ChainMap::new(m, &t, 0, comps)?;
    Ok(Truncation { complex: t, map })
}
