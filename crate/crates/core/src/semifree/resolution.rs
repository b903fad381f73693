use std::collections::HashMap;
use std::sync::Arc;

use crate::arith::{span_rank, Field, FieldMatrix, Matrix, Poly, RingRef, Scalar};
use crate::complex::{homology, ChainMap, Complex};
use crate::dg::{to_polys, to_scalars, unit_vec, DgAlgebra, DgModule, ProductTable};
use crate::error::{Error, Result};

/// Order in which candidate generators are tried at each stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GeneratorOrder {
    #[default]
    Canonical,
    Reversed,
}

/// A semifree generator g: its degree, ∂g in the basis of F_{|g|-1} at the time it
/// was adjoined, and its image in the resolved module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub degree: i64,
    pub boundary: Vec<Scalar>,
    pub image: Vec<Scalar>,
}

/// F = ⊕ A·g_k. Basis of F_n: pairs (k, a) with |g_k| + |a| = n, generator-major,
/// then the algebra basis in degree-major order.
#[derive(Clone, Debug)]
pub struct SemifreeModule {
    pub module: DgModule,
    pub generators: Vec<Generator>,
    /// (degree, index) of 1·g_k for each generator.
    pub semibasis: Vec<(i64, usize)>,
    pub cap: i64,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub semifree: SemifreeModule,
    /// F → M, inducing isomorphisms on H_i for i < cap and a surjection at cap.
    pub map: ChainMap,
}

/// Whether the A-multiples of the candidate elements form a basis of every M_n in the
/// module's degree window. Candidates are (degree, basis index) pairs.
pub fn check_semibasis(m: &DgModule, candidate: &[(i64, usize)]) -> Result<bool> {
    let a = m.algebra();
    let field = m.ring().field;
    for &(j, k) in candidate {
        if k >= m.rank(j) {
            return Err(Error::Dimension(format!("no basis element {k} in degree {j}")));
        }
    }
    for n in m.complex().degrees() {
        let mut vecs = Vec::new();
        for &(j, k) in candidate {
            for p in 0..a.rank(n - j) {
                vecs.push(to_scalars(&m.basis_act(n - j, p, j, k))?);
            }
        }
        if vecs.len() != m.rank(n) || span_rank(field, m.rank(n), &vecs) != m.rank(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) struct Layout<'a> {
    pub a: &'a Arc<DgAlgebra>,
    pub gens: Vec<Generator>,
}

impl<'a> Layout<'a> {
    pub fn basis(&self, n: i64) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        for (k, g) in self.gens.iter().enumerate() {
            let i = n - g.degree;
            for p in 0..self.a.rank(i) {
                out.push((k, i, p));
            }
        }
        out
    }

    pub fn rank(&self, n: i64) -> usize {
        self.gens.iter().map(|g| self.a.rank(n - g.degree)).sum()
    }

    fn positions(&self, n: i64) -> HashMap<(usize, i64, usize), usize> {
        self.basis(n).into_iter().enumerate().map(|(t, b)| (b, t)).collect()
    }

    pub fn lo(&self) -> Option<i64> {
        self.gens.iter().map(|g| g.degree).min()
    }

    pub fn hi(&self) -> Option<i64> {
        self.gens.iter().map(|g| g.degree).max().map(|d| d + self.a.top())
    }

    fn field(&self) -> Field {
        self.a.ring().field
    }

    /// ∂(a g) = ∂a·g + (-1)^{|a|} a·∂g as a matrix F_n → F_{n-1}.
    pub fn diff(&self, n: i64) -> Result<FieldMatrix> {
        let src = self.basis(n);
        let pos = self.positions(n - 1);
        let rows = pos.len();
        let ring = self.a.ring();
        let mut cols = Vec::with_capacity(src.len());
        for &(k, i, p) in &src {
            let mut v = vec![self.field().zero(); rows];
            let da = to_scalars(&self.a.diff_vec(i, &unit_vec(ring, self.a.rank(i), p)))?;
            for (q, c) in da.into_iter().enumerate() {
                if !c.is_zero() {
                    let t = pos[&(k, i - 1, q)];
                    v[t] = &v[t] + &c;
                }
            }
            let g = &self.gens[k];
            let below = self.basis(g.degree - 1);
            for (t, c) in g.boundary.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (k2, i2, p2) = below[t];
                let prod = to_scalars(&self.a.basis_product(i, p, i2, p2))?;
                let c = if i % 2 == 0 { c.clone() } else { -c };
                for (q, x) in prod.into_iter().enumerate() {
                    if !x.is_zero() {
                        let s = pos[&(k2, i + i2, q)];
                        v[s] = &v[s] + &(&c * &x);
                    }
                }
            }
            cols.push(v);
        }
        Ok(FieldMatrix::from_columns(self.field(), rows, &cols))
    }

    /// a·v for a basis element a = (i, p) of A and v ∈ F_n.
    pub fn act_vec(&self, i: i64, p: usize, n: i64, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let src = self.basis(n);
        let pos = self.positions(n + i);
        let mut out = vec![self.field().zero(); pos.len()];
        for (t, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (k, i2, p2) = src[t];
            for (q, x) in to_scalars(&self.a.basis_product(i, p, i2, p2))?.into_iter().enumerate() {
                if !x.is_zero() {
                    let s = pos[&(k, i + i2, q)];
                    out[s] = &out[s] + &(c * &x);
                }
            }
        }
        Ok(out)
    }

    /// φ(a g) = a·φ(g) as a matrix F_n → M_n.
    pub fn phi(&self, m: &DgModule, n: i64) -> Result<FieldMatrix> {
        let ring = self.a.ring();
        let mut cols = Vec::new();
        for (k, i, p) in self.basis(n) {
            let g = &self.gens[k];
            let img = m.act(i, &unit_vec(ring, self.a.rank(i), p), g.degree, &to_polys(ring, &g.image));
            cols.push(to_scalars(&img)?);
        }
        Ok(FieldMatrix::from_columns(self.field(), m.rank(n), &cols))
    }

    fn action(&self, lo: i64, hi: i64) -> Result<ProductTable> {
        let ring = self.a.ring();
        let mut table = ProductTable::new();
        for j in self.a.complex().degrees() {
            for n in lo..=hi {
                let pos = self.positions(n + j);
                let mut tab = Vec::new();
                for q in 0..self.a.rank(j) {
                    for &(k, i, p) in &self.basis(n) {
                        let mut v = vec![Poly::zero(ring); pos.len()];
                        for (r, x) in self.a.basis_product(j, q, i, p).into_iter().enumerate() {
                            if !x.is_zero() {
                                v[pos[&(k, i + j, r)]] = x;
                            }
                        }
                        tab.push(v);
                    }
                }
                table.insert((j, n), tab);
            }
        }
        Ok(table)
    }

    pub fn build(&self, m: &DgModule, cap: i64) -> Result<Resolution> {
        let ring: &RingRef = m.ring();
        let (lo, hi) = match (self.lo(), self.hi()) {
            (Some(l), Some(h)) => (l, h),
            _ => {
                let f = DgModule::new(self.a.clone(), Complex::zero(ring), ProductTable::new())?;
                let map = ChainMap::zero(f.complex(), m.complex(), 0);
                return Ok(Resolution {
                    semifree: SemifreeModule { module: f, generators: vec![], semibasis: vec![], cap },
                    map,
                });
            }
        };
        let ranks = (lo..=hi).map(|n| self.rank(n)).collect();
        let diffs =
            (lo + 1..=hi).map(|n| self.diff(n).map(|d| Matrix::from_field(ring, &d))).collect::<Result<Vec<_>>>()?;
        let complex = Complex::new(ring, lo, ranks, diffs)?;
        let module = DgModule::new(self.a.clone(), complex, self.action(lo, hi)?)?;
        let comps =
            (lo..=hi).map(|n| self.phi(m, n).map(|p| Matrix::from_field(ring, &p))).collect::<Result<Vec<_>>>()?;
        let map = ChainMap::new(module.complex(), m.complex(), 0, comps)?;
        let unit = self.a.unit();
        let semibasis =
            self.gens.iter().enumerate().map(|(k, g)| (g.degree, self.positions(g.degree)[&(k, 0, unit)])).collect();
        Ok(Resolution { semifree: SemifreeModule { module, generators: self.gens.clone(), semibasis, cap }, map })
    }
}

fn ordered<T>(v: Vec<T>, order: GeneratorOrder) -> Vec<T> {
    match order {
        GeneratorOrder::Canonical => v,
        GeneratorOrder::Reversed => v.into_iter().rev().collect(),
    }
}

/// Semifree resolution by cycle killing: at stage d, first kill the kernel of
/// H_{d-1}(F) → H_{d-1}(M), then add cycle generators covering H_d(M).
pub fn semifree_resolution(m: &DgModule, cap: i64) -> Result<Resolution> {
    semifree_resolution_with(m, cap, GeneratorOrder::Canonical)
}

pub fn semifree_resolution_with(m: &DgModule, cap: i64, order: GeneratorOrder) -> Result<Resolution> {
    if !m.complex().is_constant() || !m.algebra().complex().is_constant() {
        return Err(Error::NonConstant("semifree resolutions need field coefficients".into()));
    }
    let a = m.algebra();
    let field = m.ring().field;
    let hm = homology(m.complex())?;
    let low = hm.degrees.iter().find(|(_, h)| h.dim > 0).map(|(i, _)| *i);
    if let Some(l) = low {
        if cap < l {
            return Err(Error::Precondition(format!("cap {cap} is below the lowest nonvanishing homology degree {l}")));
        }
    }
    let mut lay = Layout { a, gens: vec![] };
    for d in m.complex().lo()..=cap {
        // injectivity in degree d-1
        let r1 = lay.rank(d - 1);
        if r1 > 0 {
            let z = lay.diff(d - 1)?.kernel();
            if !z.is_empty() {
                let zm = FieldMatrix::from_columns(field, r1, &z);
                let phiz = lay.phi(m, d - 1)?.mul(&zm);
                let dm = m.complex().field_diff(d)?;
                let sys = phiz.hcat(&dm.scale(&field.from_i64(-1)));
                let sols =
                    if sys.rows() == 0 { FieldMatrix::identity(field, sys.cols()).columns() } else { sys.kernel() };
                let dfd = lay.diff(d)?;
                let mut span: Vec<Vec<Scalar>> = dfd.columns();
                let mut rank = span_rank(field, r1, &span);
                let mut new = Vec::new();
                for s in ordered(sols, order) {
                    let zc = zm.mul_vec(&s[..z.len()]);
                    span.push(zc.clone());
                    let r = span_rank(field, r1, &span);
                    if r > rank {
                        for p in 0..a.rank(0) {
                            span.push(lay.act_vec(0, p, d - 1, &zc)?);
                        }
                        rank = span_rank(field, r1, &span);
                        new.push(Generator { degree: d, boundary: zc, image: s[z.len()..].to_vec() });
                    } else {
                        span.pop();
                    }
                }
                lay.gens.extend(new);
            }
        }
        // surjectivity in degree d
        let Some(h) = hm.degrees.get(&d) else { continue };
        if h.dim == 0 {
            continue;
        }
        let rm = m.rank(d);
        let mut span = h.boundaries.clone();
        if lay.rank(d) > 0 {
            let zf = lay.diff(d)?.kernel();
            let phi = lay.phi(m, d)?;
            span.extend(zf.iter().map(|v| phi.mul_vec(v)));
        }
        let mut rank = span_rank(field, rm, &span);
        let r0 = lay.rank(d - 1);
        let mut new = Vec::new();
        for rep in ordered(h.representatives.clone(), order) {
            span.push(rep.clone());
            let r = span_rank(field, rm, &span);
            if r > rank {
                let ring = m.ring();
                for p in 0..a.rank(0) {
                    let az = m.act(0, &unit_vec(ring, a.rank(0), p), d, &to_polys(ring, &rep));
                    span.push(to_scalars(&az)?);
                }
                rank = span_rank(field, rm, &span);
                new.push(Generator { degree: d, boundary: vec![field.zero(); r0], image: rep });
            } else {
                span.pop();
            }
        }
        lay.gens.extend(new);
    }
    lay.build(m, cap)
}
