use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{neg_vec, unit_vec, zero_vec, DgAlgebra, ProductTable};
use super::module::{DgAlgebraMorphism, DgModule};
use crate::arith::{FieldMatrix, Matrix, Poly, RingRef, Scalar};
use crate::complex::{quotient_complex, suspend, tensor_complex, ChainMap, Complex, HomLayout, TensorLayout};
use crate::error::{Error, Result};

pub(crate) fn to_scalars(v: &[Poly]) -> Result<Vec<Scalar>> {
    v.iter().map(|p| p.constant_value().ok_or_else(|| Error::NonConstant(format!("entry {p}")))).collect()
}

pub(crate) fn to_polys(ring: &RingRef, v: &[Scalar]) -> Vec<Poly> {
    v.iter().map(|c| Poly::constant(ring, c.clone())).collect()
}

/// Σ^s M with the twisted action a∗m = (-1)^{s|a|} a m.
pub fn suspend_module(m: &DgModule, s: i64) -> Result<DgModule> {
    let complex = suspend(m.complex(), s);
    let mut action = ProductTable::new();
    for (&(i, j), t) in m.action() {
        let t2 = if (s * i) % 2 != 0 { t.iter().map(|v| neg_vec(v)).collect() } else { t.clone() };
        action.insert((i, j + s), t2);
    }
    DgModule::new(m.algebra().clone(), complex, action)
}

/// A module over the source of φ via a·m = φ(a)·m.
pub fn restrict_scalars(phi: &DgAlgebraMorphism, m: &DgModule) -> Result<DgModule> {
    let a = &phi.source;
    let ring = m.ring().clone();
    let mut action = ProductTable::new();
    for i in a.complex().degrees() {
        for j in m.complex().degrees() {
            let mut t = Vec::new();
            for p in 0..a.rank(i) {
                let img = phi.map.component(i).column(p);
                for k in 0..m.rank(j) {
                    t.push(m.act(i, &img, j, &unit_vec(&ring, m.rank(j), k)));
                }
            }
            action.insert((i, j), t);
        }
    }
    DgModule::new(a.clone(), m.complex().clone(), action)
}

/// A ⊗_R X with a·(b⊗x) = (ab)⊗x, for an R-complex X over A's ring.
pub fn base_change(a: &Arc<DgAlgebra>, x: &Complex) -> Result<DgModule> {
    let t = tensor_complex(a.complex(), x)?;
    let lay = TensorLayout::new(a.complex(), x);
    let ring = a.ring().clone();
    let mut action = ProductTable::new();
    for i in a.complex().degrees() {
        for n in t.degrees() {
            let mut tab = Vec::new();
            for p in 0..a.rank(i) {
                for k in 0..t.rank(n) {
                    let (pd, b, xi) = lay.locate(n, k);
                    let ab = a.basis_product(i, p, pd, b);
                    let mut v = zero_vec(&ring, t.rank(n + i));
                    for (c, coef) in ab.into_iter().enumerate() {
                        if !coef.is_zero() {
                            v[lay.index(n + i, pd + i, c, xi)] = coef;
                        }
                    }
                    tab.push(v);
                }
            }
            action.insert((i, n), tab);
        }
    }
    DgModule::new(a.clone(), t, action)
}

/// M/S for a sub-DG-module S spanned degreewise by the given vectors. Field coefficients.
pub fn quotient_module(m: &DgModule, sub: &BTreeMap<i64, Vec<Vec<Scalar>>>) -> Result<(DgModule, ChainMap)> {
    let q = quotient_complex(m.complex(), sub)?;
    let a = m.algebra();
    let ring = m.ring().clone();
    let field = ring.field;
    let proj = |j: i64| q.proj.get(&j).cloned().unwrap_or_else(|| FieldMatrix::zeros(field, 0, m.rank(j)));
    for i in a.complex().degrees() {
        for p in 0..a.rank(i) {
            for (j, vs) in sub {
                let am = m.action_matrix(i, p, *j).to_field()?;
                for v in vs {
                    if !proj(i + j).mul_vec(&am.mul_vec(v)).iter().all(Scalar::is_zero) {
                        return Err(Error::Precondition(format!("subspace not closed under the action in degree {j}")));
                    }
                }
            }
        }
    }
    let mut action = ProductTable::new();
    for i in a.complex().degrees() {
        for j in m.complex().degrees() {
            let lift = &q.lift[&j];
            let mut tab = Vec::new();
            for p in 0..a.rank(i) {
                let am = m.action_matrix(i, p, j).to_field()?;
                let img = proj(i + j).mul(&am).mul(lift);
                for k in 0..lift.cols() {
                    tab.push(to_polys(&ring, &img.column(k)));
                }
            }
            action.insert((i, j), tab);
        }
    }
    let module = DgModule::new(a.clone(), q.complex.clone(), action)?;
    Ok((module, q.projection))
}

/// Hom_A(M,N) as a DG module, with each degree embedded in Hom(M,N)_n.
#[derive(Clone, Debug)]
pub struct DgHom {
    pub module: DgModule,
    pub layout: HomLayout,
    /// Columns: the chosen basis of Hom_A(M,N)_n in Hom(M,N)_n coordinates.
    pub embedding: BTreeMap<i64, FieldMatrix>,
}

impl DgHom {
    /// The graded map represented by coordinates in degree n.
    pub fn to_map(&self, n: i64, coords: &[Scalar]) -> ChainMap {
        let ring = self.module.ring();
        let v = self.embedding[&n].mul_vec(coords);
        self.layout.to_map(n, &to_polys(ring, &v))
    }

    /// Coordinates of an A-linear graded map of degree n.
    pub fn coordinates(&self, f: &ChainMap) -> Result<Vec<Scalar>> {
        let v = to_scalars(&self.layout.from_map(f))?;
        self.embedding[&f.degree()].solve(&v).ok_or_else(|| Error::Precondition("map is not A-linear".into()))
    }
}

/// Hom_A(M,N): graded maps f of degree n with f(am) = (-1)^{n|a|} a f(m),
/// differential from Hom(M,N), action (af)(m) = a f(m). Field coefficients.
pub fn dg_hom(m: &DgModule, nm: &DgModule) -> Result<DgHom> {
    if !Arc::ptr_eq(m.algebra(), nm.algebra()) && m.algebra() != nm.algebra() {
        return Err(Error::Precondition("modules over different algebras".into()));
    }
    if !m.complex().is_constant() || !nm.complex().is_constant() {
        return Err(Error::NonConstant("Hom_A needs field coefficients".into()));
    }
    let a = m.algebra();
    let ring = m.ring().clone();
    let field = ring.field;
    let lay = HomLayout::new(m.complex(), nm.complex());
    let (lo, hi) = (lay.lo(), lay.hi());
    let mut embedding = BTreeMap::new();
    for n in lo..=hi {
        let dim = lay.rank(n);
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for b in 0..dim {
            let e = unit_vec(&ring, dim, b);
            let f = lay.to_map(n, &e);
            let mut cons = Vec::new();
            for i in a.complex().degrees() {
                for p in 0..a.rank(i) {
                    let ea = unit_vec(&ring, a.rank(i), p);
                    for j in m.complex().degrees() {
                        for k in 0..m.rank(j) {
                            let lhs = f.component(i + j).mul_vec(&m.basis_act(i, p, j, k));
                            let mut rhs = nm.act(i, &ea, j + n, &f.component(j).column(k));
                            if (n * i) % 2 != 0 {
                                rhs = neg_vec(&rhs);
                            }
                            for (x, y) in lhs.iter().zip(&rhs) {
                                cons.push(to_scalars(&[x - y])?.remove(0));
                            }
                        }
                    }
                }
            }
            cols.push(cons);
        }
        let basis = if dim == 0 {
            vec![]
        } else {
            let rows = cols.first().map(Vec::len).unwrap_or(0);
            if rows == 0 {
                FieldMatrix::identity(field, dim).columns()
            } else {
                FieldMatrix::from_columns(field, rows, &cols).kernel()
            }
        };
        embedding.insert(n, FieldMatrix::from_columns(field, dim, &basis));
    }
    let ranks: Vec<usize> = (lo..=hi).map(|n| embedding[&n].cols()).collect();
    let express = |n: i64, v: &[Scalar]| -> Result<Vec<Scalar>> {
        match embedding.get(&n) {
            None => Ok(vec![]),
            Some(e) if e.cols() == 0 => Ok(vec![]),
            Some(e) => e.solve(v).ok_or_else(|| Error::Precondition(format!("not A-linear in degree {n}"))),
        }
    };
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let d = lay.diff_matrix(n).to_field()?;
        let e = &embedding[&n];
        let mut mat = Matrix::zeros(&ring, ranks[(n - 1 - lo) as usize], e.cols());
        for c in 0..e.cols() {
            let img = d.mul_vec(&e.column(c));
            for (r, v) in express(n - 1, &img)?.into_iter().enumerate() {
                mat.set(r, c, Poly::constant(&ring, v));
            }
        }
        diffs.push(mat);
    }
    let complex = Complex::new(&ring, lo, ranks.clone(), diffs)?;
    let mut action = ProductTable::new();
    for i in a.complex().degrees() {
        for n in lo..=hi {
            let e = &embedding[&n];
            let mut tab = Vec::new();
            for p in 0..a.rank(i) {
                for c in 0..e.cols() {
                    let f = lay.to_map(n, &to_polys(&ring, &e.column(c)));
                    let af = lay.pack(n + i, &|q| nm.action_matrix(i, p, q + n).mul(&f.component(q)));
                    let v = if n + i > hi { vec![] } else { express(n + i, &to_scalars(&af)?)? };
                    tab.push(to_polys(&ring, &v));
                }
            }
            action.insert((i, n), tab);
        }
    }
    let module = DgModule::new(a.clone(), complex, action)?;
    Ok(DgHom { module, layout: lay, embedding })
}

/// The homothety A → Hom_A(M,M), a ↦ (m ↦ a m), as a chain map.
pub fn homothety_morphism(m: &DgModule, hom: &DgHom) -> Result<ChainMap> {
    let a = m.algebra();
    let ring = m.ring().clone();
    let target = hom.module.complex();
    let mut comps = Vec::new();
    for i in a.complex().degrees() {
        let mut mat = Matrix::zeros(&ring, target.rank(i), a.rank(i));
        for p in 0..a.rank(i) {
            let v = hom.layout.pack(i, &|q| m.action_matrix(i, p, q));
            let coords = match hom.embedding.get(&i) {
                Some(e) if e.cols() > 0 => {
                    e.solve(&to_scalars(&v)?).ok_or_else(|| Error::Precondition("homothety not A-linear".into()))?
                }
                _ => vec![],
            };
            for (r, c) in coords.into_iter().enumerate() {
                mat.set(r, p, Poly::constant(&ring, c));
            }
        }
        comps.push(mat);
    }
    ChainMap::new(a.complex(), target, 0, comps)
}

/// Hom_A(A, L) → L, f ↦ f(1).
pub fn evaluate_at_unit(hom: &DgHom, l: &DgModule) -> Result<ChainMap> {
    let a = hom.module.algebra();
    let ring = l.ring().clone();
    let src = hom.module.complex();
    let mut comps = Vec::new();
    for n in src.degrees() {
        let mut mat = Matrix::zeros(&ring, l.rank(n), src.rank(n));
        for c in 0..src.rank(n) {
            let mut e = vec![ring.field.zero(); src.rank(n)];
            e[c] = ring.field.one();
            let g = hom.to_map(n, &e);
            let v = g.component(0).column(a.unit());
            for (r, x) in v.into_iter().enumerate() {
                mat.set(r, c, x);
            }
        }
        comps.push(mat);
    }
    ChainMap::new(src, l.complex(), 0, comps)
}

/// M ⊗_A N: the quotient of M ⊗ N by (am)⊗n - (-1)^{|a||m|} m⊗(an), with a(m⊗n) = (am)⊗n.
pub fn dg_tensor(m: &DgModule, nm: &DgModule) -> Result<DgModule> {
    let a = m.algebra();
    let ring = m.ring().clone();
    let t = tensor_complex(m.complex(), nm.complex())?;
    let lay = TensorLayout::new(m.complex(), nm.complex());
    let tm = DgModule::new(a.clone(), t.clone(), tensor_action(a, m, &lay, &t))?;
    let mut sub: BTreeMap<i64, Vec<Vec<Scalar>>> = BTreeMap::new();
    for i in a.complex().degrees() {
        for p in 0..a.rank(i) {
            let ea = unit_vec(&ring, a.rank(i), p);
            for j in m.complex().degrees() {
                for k in nm.complex().degrees() {
                    let deg = i + j + k;
                    if t.rank(deg) == 0 {
                        continue;
                    }
                    for mi in 0..m.rank(j) {
                        for ni in 0..nm.rank(k) {
                            let mut v = zero_vec(&ring, t.rank(deg));
                            for (c, x) in m.basis_act(i, p, j, mi).into_iter().enumerate() {
                                if !x.is_zero() {
                                    let idx = lay.index(deg, i + j, c, ni);
                                    v[idx] = &v[idx] + &x;
                                }
                            }
                            let an = nm.act(i, &ea, k, &unit_vec(&ring, nm.rank(k), ni));
                            let neg = (i * j) % 2 == 0;
                            for (c, x) in an.into_iter().enumerate() {
                                if !x.is_zero() {
                                    let idx = lay.index(deg, j, mi, c);
                                    v[idx] = if neg { &v[idx] - &x } else { &v[idx] + &x };
                                }
                            }
                            sub.entry(deg).or_default().push(to_scalars(&v)?);
                        }
                    }
                }
            }
        }
    }
    Ok(quotient_module(&tm, &sub)?.0)
}

fn tensor_action(a: &Arc<DgAlgebra>, m: &DgModule, lay: &TensorLayout, t: &Complex) -> ProductTable {
    let ring = m.ring().clone();
    let mut action = ProductTable::new();
    for i in a.complex().degrees() {
        for n in t.degrees() {
            let mut tab = Vec::new();
            for p in 0..a.rank(i) {
                for k in 0..t.rank(n) {
                    let (pd, mi, ni) = lay.locate(n, k);
                    let am = m.basis_act(i, p, pd, mi);
                    let mut v = zero_vec(&ring, t.rank(n + i));
                    for (c, x) in am.into_iter().enumerate() {
                        if !x.is_zero() {
                            v[lay.index(n + i, pd + i, c, ni)] = x;
                        }
                    }
                    tab.push(v);
                }
            }
            action.insert((i, n), tab);
        }
    }
    action
}
