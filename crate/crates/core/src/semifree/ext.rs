use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::resolution::{semifree_resolution_with, GeneratorOrder, Layout, Resolution, SemifreeModule};
use crate::arith::{FieldMatrix, Matrix};
use crate::complex::{homology, ChainMap, Complex};
use crate::dg::{to_polys, to_scalars, unit_vec, DgModule};
use crate::error::{Error, Result};

/// Hom_A(F, N) for semifree F: an element of degree t is determined by the values
/// f(g_k) ∈ N_{|g_k|+t}; basis generator-major, then the basis of N.
#[derive(Clone, Debug)]
pub struct SemifreeHom {
    pub complex: Complex,
    /// Generator degrees of F.
    pub degrees: Vec<i64>,
}

impl SemifreeHom {
    pub fn offset(&self, n: &DgModule, t: i64, k: usize) -> usize {
        self.degrees[..k].iter().map(|&d| n.rank(d + t)).sum()
    }
}

/// The complex Hom_A(F, N) with (∂f)(g) = ∂f(g) - (-1)^t f(∂g) and
/// f(a g') = (-1)^{t|a|} a f(g').
pub fn semifree_hom(f: &SemifreeModule, n: &DgModule) -> Result<SemifreeHom> {
    let ring = n.ring().clone();
    let field = ring.field;
    let a = f.module.algebra();
    let degrees: Vec<i64> = f.generators.iter().map(|g| g.degree).collect();
    let (Some(&dmin), Some(&dmax), Some((nlo, nhi))) =
        (degrees.iter().min(), degrees.iter().max(), n.complex().support())
    else {
        return Ok(SemifreeHom { complex: Complex::zero(&ring), degrees });
    };
    let lo = nlo - dmax;
    let hi = nhi - dmin;
    let lay = Layout { a, gens: f.generators.clone() };
    let rank = |t: i64| -> usize { degrees.iter().map(|&d| n.rank(d + t)).sum() };
    let offset = |t: i64, k: usize| -> usize { degrees[..k].iter().map(|&d| n.rank(d + t)).sum() };
    let mut diffs = Vec::new();
    for t in lo + 1..=hi {
        let mut mat = FieldMatrix::zeros(field, rank(t - 1), rank(t));
        let sign_t = if t % 2 == 0 { 1 } else { -1 };
        for (k, &dk) in degrees.iter().enumerate() {
            let nd = n.complex().field_diff(dk + t)?;
            for r in 0..n.rank(dk + t) {
                let col = offset(t, k) + r;
                let e = unit_vec(&ring, n.rank(dk + t), r);
                // ∂^N f(g_k)
                for (row, x) in nd.column(r).into_iter().enumerate() {
                    let rr = offset(t - 1, k) + row;
                    let cur = mat.get(rr, col).clone();
                    mat.set(rr, col, &cur + &x);
                }
                // -(-1)^t f(∂g_{k2}) for generators whose boundary involves g_k
                for (k2, g2) in f.generators.iter().enumerate() {
                    let below = lay.basis(g2.degree - 1);
                    for (pos, c) in g2.boundary.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (kk, i, p) = below[pos];
                        if kk != k {
                            continue;
                        }
                        let s = if (t * i) % 2 == 0 { sign_t } else { -sign_t };
                        let act = to_scalars(&n.act(i, &unit_vec(&ring, a.rank(i), p), dk + t, &e))?;
                        let coef = &field.from_i64(-s) * c;
                        for (row, x) in act.into_iter().enumerate() {
                            if !x.is_zero() {
                                let rr = offset(t - 1, k2) + row;
                                let cur = mat.get(rr, col).clone();
                                mat.set(rr, col, &cur + &(&coef * &x));
                            }
                        }
                    }
                }
            }
        }
        diffs.push(Matrix::from_field(&ring, &mat));
    }
    let ranks = (lo..=hi).map(rank).collect();
    Ok(SemifreeHom { complex: Complex::new(&ring, lo, ranks, diffs)?, degrees })
}

/// The homothety A → Hom_A(F, M), a ↦ (g ↦ a·φ(g)), for a resolution φ: F → M.
pub fn resolution_homothety(res: &Resolution, m: &DgModule) -> Result<(SemifreeHom, ChainMap)> {
    let f = &res.semifree;
    let hom = semifree_hom(f, m)?;
    let a = m.algebra();
    let ring = m.ring().clone();
    let mut comps = Vec::new();
    for i in a.complex().degrees() {
        let mut mat = Matrix::zeros(&ring, hom.complex.rank(i), a.rank(i));
        for p in 0..a.rank(i) {
            for (k, g) in f.generators.iter().enumerate() {
                let v = m.act(i, &unit_vec(&ring, a.rank(i), p), g.degree, &to_polys(&ring, &g.image));
                let off = hom.offset(m, i, k);
                for (r, x) in v.into_iter().enumerate() {
                    mat.set(off + r, p, x);
                }
            }
        }
        comps.push(mat);
    }
    let map = ChainMap::new(a.complex(), &hom.complex, 0, comps)?;
    Ok((hom, map))
}

/// Dimensions of Ext^i, i = 0..=certified_through.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub ext: BTreeMap<i64, usize>,
    pub certified_through: i64,
}

impl ExtTable {
    pub fn get(&self, i: i64) -> Option<usize> {
        self.ext.get(&i).copied()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.certified_through).filter_map(|i| self.get(i)).collect()
    }
}

fn ext_dims(res: &Resolution, n: &DgModule, upto: i64) -> Result<Vec<usize>> {
    let hom = semifree_hom(&res.semifree, n)?;
    let h = homology(&hom.complex)?;
    Ok((0..=upto).map(|i| h.dim(-i)).collect())
}

/// Ext^i_A(M, N) = H_{-i}(Hom_A(F, N)) for a semifree resolution F of M.
/// Entry i depends only on generators of degree ≤ i + 1 + sup N, so entries up to
/// cap - 1 - sup N are exact; each is also checked against a resolution one stage longer.
pub fn ext(m: &DgModule, n: &DgModule, cap: i64) -> Result<ExtTable> {
    ext_with(m, n, cap, GeneratorOrder::Canonical)
}

pub fn ext_with(m: &DgModule, n: &DgModule, cap: i64, order: GeneratorOrder) -> Result<ExtTable> {
    let nhi = n.complex().support().map(|(_, h)| h).unwrap_or(0);
    let limit = cap - 1 - nhi;
    if limit < 0 {
        return Err(Error::Precondition(format!("cap {cap} is too small to certify any Ext entry")));
    }
    let r1 = semifree_resolution_with(m, cap, order)?;
    let r2 = semifree_resolution_with(m, cap + 1, order)?;
    let d1 = ext_dims(&r1, n, limit)?;
    let d2 = ext_dims(&r2, n, limit)?;
    let agree = d1.iter().zip(&d2).take_while(|(x, y)| x == y).count() as i64;
    let certified = agree - 1;
    if certified < 0 {
        return Err(Error::Precondition("no Ext entry is stable under a longer resolution".into()));
    }
    let ext = (0..=certified).map(|i| (i, d1[i as usize])).collect();
    Ok(ExtTable { ext, certified_through: certified })
}
