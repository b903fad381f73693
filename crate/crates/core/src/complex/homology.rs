use std::collections::BTreeMap;

use super::{ChainMap, Complex};
use crate::arith::{span_rank, Field, FieldMatrix, Scalar};
use crate::error::{Error, Result};

/// Homology in one degree: cycle and boundary bases and chosen class representatives.
#[derive(Clone, Debug)]
pub struct HomologyDegree {
    pub degree: i64,
    pub dim: usize,
    pub cycles: Vec<Vec<Scalar>>,
    pub boundaries: Vec<Vec<Scalar>>,
    /// Cycles whose classes form a basis of H_i; drawn from `cycles` in order.
    pub representatives: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub field: Field,
    pub degrees: BTreeMap<i64, HomologyDegree>,
}

impl Homology {
    pub fn dim(&self, i: i64) -> usize {
        self.degrees.get(&i).map(|h| h.dim).unwrap_or(0)
    }

    /// Coordinates of the class of cycle z in the representative basis of H_i.
    pub fn class_of(&self, i: i64, z: &[Scalar]) -> Result<Vec<Scalar>> {
        let Some(h) = self.degrees.get(&i) else {
            return Ok(vec![]);
        };
        if h.dim == 0 {
            return Ok(vec![]);
        }
        let mut cols = h.representatives.clone();
        cols.extend(h.boundaries.iter().cloned());
        let m = FieldMatrix::from_columns(self.field, z.len(), &cols);
        let x = m.solve(z).ok_or_else(|| Error::Precondition(format!("vector is not a cycle in degree {i}")))?;
        Ok(x[..h.dim].to_vec())
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.values().all(|h| h.dim == 0)
    }
}

fn require_field(c: &Complex) -> Result<Field> {
    if !c.ring().is_field() && !c.is_constant() {
        return Err(Error::NonConstant("homology needs field coefficients (constant differentials)".into()));
    }
    Ok(c.ring().field)
}

/// Homology over the coefficient field; representatives are the pivot cycles
/// not already spanned by boundaries.
pub fn homology(c: &Complex) -> Result<Homology> {
    let field = require_field(c)?;
    let mut degrees = BTreeMap::new();
    for i in c.degrees() {
        let n = c.rank(i);
        let d = c.field_diff(i)?;
        let cycles = if n == 0 { vec![] } else { d.kernel() };
        let dn = c.field_diff(i + 1)?;
        let boundaries: Vec<Vec<Scalar>> =
            if n == 0 { vec![] } else { dn.column_basis().into_iter().map(|j| dn.column(j)).collect() };
        let mut reps: Vec<Vec<Scalar>> = Vec::new();
        let mut span = boundaries.clone();
        let mut r = span_rank(field, n, &span);
        for z in &cycles {
            span.push(z.clone());
            let r2 = span_rank(field, n, &span);
            if r2 > r {
                reps.push(z.clone());
                r = r2;
            } else {
                span.pop();
            }
        }
        degrees.insert(i, HomologyDegree { degree: i, dim: reps.len(), cycles, boundaries, representatives: reps });
    }
    Ok(Homology { field, degrees })
}

/// Matrices of H_i(f) : H_i(X) → H_{i+n}(Y) in representative bases.
pub fn induced_on_homology(f: &ChainMap) -> Result<BTreeMap<i64, FieldMatrix>> {
    f.check_commutes()?;
    let hx = homology(f.source())?;
    let hy = homology(f.target())?;
    let field = hx.field;
    let mut out = BTreeMap::new();
    for i in f.source().degrees() {
        let fi = f.component(i).to_field()?;
        let tgt = hy.dim(i + f.degree());
        let mut cols = Vec::new();
        for rep in &hx.degrees[&i].representatives {
            let img = fi.mul_vec(rep);
            cols.push(if tgt == 0 { vec![] } else { hy.class_of(i + f.degree(), &img)? });
        }
        out.insert(i, FieldMatrix::from_columns(field, tgt, &cols));
    }
    Ok(out)
}

/// Whether a degree-0 chain map induces isomorphisms in every degree. Field only.
pub fn is_quasi_isomorphism(f: &ChainMap) -> Result<bool> {
    if f.degree() != 0 {
        return Err(Error::Precondition("quasi-isomorphism test needs a degree-0 map".into()));
    }
    if !f.source().ring().is_field() || !f.target().ring().is_field() {
        return Err(Error::Precondition("quasi-isomorphism test is only implemented over a field".into()));
    }
    let hx = homology(f.source())?;
    let hy = homology(f.target())?;
    let lo = f.source().lo().min(f.target().lo());
    let hi = f.source().hi().max(f.target().hi());
    let maps = induced_on_homology(f)?;
    for i in lo..=hi {
        if hx.dim(i) != hy.dim(i) {
            return Ok(false);
        }
        if let Some(m) = maps.get(&i) {
            if m.rows() > 0 && !m.is_invertible() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
