use std::sync::Arc;

use super::ext::resolution_homothety;
use super::resolution::semifree_resolution;
use crate::arith::{Field, FieldMatrix, Scalar};
use crate::complex::{homology, induced_on_homology};
use crate::dg::{to_scalars, unit_vec, DgAlgebra, DgModule};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemidualizingVerdict {
    /// H(χ) is an isomorphism in every degree ≥ `certified_from`, which covers all of A.
    YesUpToCap {
        certified_from: i64,
    },
    No {
        degree: i64,
        reason: String,
    },
}

impl SemidualizingVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, SemidualizingVerdict::YesUpToCap { .. })
    }
}

/// Whether χ: A → Hom_A(C, C) is a quasi-isomorphism in the degrees the cap certifies.
/// C is replaced by a semifree resolution F → C and Hom_A(F, C) is used.
pub fn is_semidualizing_dg(c: &DgModule, cap: i64) -> Result<SemidualizingVerdict> {
    let a = c.algebra();
    let hc = homology(c.complex())?;
    if hc.is_acyclic() {
        return Ok(SemidualizingVerdict::No {
            degree: 0,
            reason: "C is acyclic, so the homothety kills H_0(A)".into(),
        });
    }
    let chi = c.complex().support().map(|(_, h)| h).unwrap_or(0);
    let from = -(cap - 1 - chi);
    if from > 0 {
        return Err(Error::Precondition(format!("cap {cap} is too small for any certified degree")));
    }
    let res = semifree_resolution(c, cap)?;
    let (hom, map) = resolution_homothety(&res, c)?;
    let ha = homology(a.complex())?;
    let hh = homology(&hom.complex)?;
    let induced = induced_on_homology(&map)?;
    let top = a.top().max(hom.complex.hi());
    for n in from..=top {
        let (da, dh) = (ha.dim(n), hh.dim(n));
        if da != dh {
            return Ok(SemidualizingVerdict::No {
                degree: n,
                reason: format!("dim H_{n}(A) = {da} but dim H_{n}(Hom_A(C,C)) = {dh}"),
            });
        }
        if da > 0 && induced[&n].rank() != da {
            return Ok(SemidualizingVerdict::No { degree: n, reason: format!("homothety is not bijective on H_{n}") });
        }
    }
    Ok(SemidualizingVerdict::YesUpToCap { certified_from: from })
}

fn require_degree_zero(a: &DgAlgebra) -> Result<()> {
    if a.complex().degrees().any(|i| i != 0 && a.rank(i) > 0) {
        return Err(Error::Precondition("expected an algebra concentrated in degree 0".into()));
    }
    Ok(())
}

/// Classical semidualizing test for a module C over a finite-dimensional algebra in
/// degree 0, through the DG machinery.
pub fn is_semidualizing_module(c: &DgModule, cap: i64) -> Result<SemidualizingVerdict> {
    require_degree_zero(c.algebra())?;
    if c.complex().degrees().any(|i| i != 0 && c.rank(i) > 0) {
        return Err(Error::Precondition("expected a module concentrated in degree 0".into()));
    }
    is_semidualizing_dg(c, cap)
}

/// Matrix of left multiplication by basis element p on A_0.
fn mult_matrix(a: &DgAlgebra, p: usize) -> Result<FieldMatrix> {
    let ring = a.ring();
    let n = a.rank(0);
    let field = ring.field;
    let cols = (0..n).map(|q| to_scalars(&a.basis_product(0, p, 0, q))).collect::<Result<Vec<_>>>()?;
    Ok(FieldMatrix::from_columns(field, n, &cols))
}

fn is_nilpotent(m: &FieldMatrix) -> bool {
    let n = m.rows();
    let mut pow = FieldMatrix::identity(m.field(), n);
    for _ in 0..n {
        pow = pow.mul(m);
    }
    pow.is_zero()
}

fn unique_eigenvalue(m: &FieldMatrix) -> Option<Scalar> {
    let field = m.field();
    let n = m.rows();
    let candidates: Vec<Scalar> = match field {
        Field::Prime(p) if (p as usize) <= n => (0..p as i64).map(|c| field.from_i64(c)).collect(),
        _ => {
            let mut tr = field.zero();
            for i in 0..n {
                tr = &tr + m.get(i, i);
            }
            field.from_i64(n as i64).inv().map(|inv| vec![&tr * &inv]).unwrap_or_default()
        }
    };
    candidates.into_iter().find(|c| {
        let shifted = m.sub(&FieldMatrix::identity(field, n).scale(c));
        is_nilpotent(&shifted)
    })
}

/// For a local algebra with residue field F: the residue map A → F on the basis.
/// A is local in this sense iff each basis element b has a single eigenvalue λ(b) with
/// b - λ(b) nilpotent; then ker λ is the maximal ideal.
pub fn residue_functional(a: &DgAlgebra) -> Result<Vec<Scalar>> {
    require_degree_zero(a)?;
    if !a.complex().is_constant() {
        return Err(Error::NonConstant("algebra must be over a field".into()));
    }
    (0..a.rank(0))
        .map(|p| {
            unique_eigenvalue(&mult_matrix(a, p)?)
                .ok_or_else(|| Error::Precondition(format!("algebra is not local: basis element {p}")))
        })
        .collect()
}

/// A basis of the maximal ideal: b_p - λ(b_p)·1 for the non-unit basis elements.
pub fn maximal_ideal(a: &DgAlgebra) -> Result<Vec<Vec<Scalar>>> {
    let lambda = residue_functional(a)?;
    let field = a.ring().field;
    let one = to_scalars(&unit_vec(a.ring(), a.rank(0), a.unit()))?;
    Ok((0..a.rank(0))
        .filter(|&p| p != a.unit())
        .map(|p| {
            let mut v = vec![field.zero(); a.rank(0)];
            v[p] = field.one();
            v.iter().zip(&one).map(|(x, u)| x - &(u * &lambda[p])).collect()
        })
        .collect())
}

/// μ⁰ = dim Hom(k, A) = dimension of the socle {a : m·a = 0}.
pub fn socle_dimension(a: &DgAlgebra) -> Result<usize> {
    let n = a.rank(0);
    let field = a.ring().field;
    let ideal = maximal_ideal(a)?;
    if ideal.is_empty() {
        return Ok(n);
    }
    let mut stacked: Option<FieldMatrix> = None;
    for v in &ideal {
        let mut lm = FieldMatrix::zeros(field, n, n);
        for (p, c) in v.iter().enumerate() {
            if !c.is_zero() {
                lm = lm.add(&mult_matrix(a, p)?.scale(c));
            }
        }
        stacked = Some(match stacked {
            None => lm,
            Some(s) => s.vcat(&lm),
        });
    }
    Ok(stacked.map(|s| s.kernel().len()).unwrap_or(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthBound {
    pub mu0: usize,
    pub length_r: usize,
    pub rho: usize,
    pub length_c: usize,
    pub holds: bool,
}

/// ρ = len(R)·μ⁰ against len(C) = dim_F C, for a local algebra with residue field F.
pub fn semidualizing_length_bound(a: &Arc<DgAlgebra>, c: &DgModule) -> Result<LengthBound> {
    let mu0 = socle_dimension(a)?;
    let length_r = a.rank(0);
    let rho = length_r * mu0;
    let length_c = c.complex().total_rank();
    Ok(LengthBound { mu0, length_r, rho, length_c, holds: length_c <= rho })
}
