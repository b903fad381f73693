use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{span_rank, Matrix, Poly, Ring, RingRef, Scalar};
use crate::dg::{to_scalars, DgAlgebra};
use crate::error::{Error, Result};

/// Where an unknown lives: an entry of ∂_i or of the action of a non-unit basis
/// element of U from W_j to W_{|a|+j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Diff { degree: i64, row: usize, col: usize },
    Action { element: usize, source: i64, row: usize, col: usize },
}

/// The affine scheme of DG U-module structures on a graded vector space W with
/// dimensions r_0..r_s. Multiplication by the unit is fixed to the identity.
#[derive(Clone, Debug)]
pub struct ModuliInstance {
    pub algebra: Arc<DgAlgebra>,
    pub dims: Vec<usize>,
    /// Polynomial ring in the unknowns, variables sorted by name.
    pub ring: RingRef,
    pub slots: Vec<Slot>,
    /// Non-unit basis elements of U, in the order used by `Slot::Action`.
    pub elements: Vec<(i64, usize)>,
    /// Normalized generators of the constraint ideal.
    pub constraints: Vec<Poly>,
}

fn block_name(prefix: &str, rows: usize, cols: usize, r: usize, c: usize) -> String {
    match (rows, cols) {
        (1, 1) => prefix.to_string(),
        (1, _) => format!("{prefix}_{}", c + 1),
        (_, 1) => format!("{prefix}_{}", r + 1),
        _ => format!("{prefix}_{}_{}", r + 1, c + 1),
    }
}

fn name_key(name: &str) -> (String, Vec<u64>) {
    let letters: String = name.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let nums = name[letters.len()..].split('_').filter(|s| !s.is_empty()).map(|s| s.parse().unwrap_or(0)).collect();
    (letters, nums)
}

/// Normalization: expand, make monic, drop zeros, sort and deduplicate, then drop
/// every generator lying in the span of generators with strictly fewer terms.
pub fn normalize_constraints(polys: Vec<Poly>) -> Vec<Poly> {
    let mut v: Vec<Poly> = polys.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    v.sort_by(|a, b| a.canonical_cmp(b));
    v.dedup();
    if v.is_empty() {
        return v;
    }
    let field = v[0].field();
    let mut monos: Vec<crate::arith::Monomial> = v.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let coords = |p: &Poly| -> Vec<Scalar> {
        let mut out = vec![field.zero(); monos.len()];
        for (m, c) in p.terms() {
            out[monos.binary_search(m).unwrap()] = c.clone();
        }
        out
    };
    let keep: Vec<bool> = v
        .iter()
        .map(|p| {
            let sparser: Vec<Vec<Scalar>> = v.iter().filter(|q| q.nterms() < p.nterms()).map(coords).collect();
            if sparser.is_empty() {
                return true;
            }
            let r = span_rank(field, monos.len(), &sparser);
            let mut with = sparser;
            with.push(coords(p));
            span_rank(field, monos.len(), &with) > r
        })
        .collect();
    v.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect()
}

impl ModuliInstance {
    /// Unknowns and constraints (∂∂ = 0, Leibniz for each non-unit basis element,
    /// associativity for each ordered pair of non-unit basis elements).
    pub fn new(algebra: &Arc<DgAlgebra>, dims: &[usize]) -> Result<ModuliInstance> {
        if !algebra.complex().is_constant() || !algebra.ring().is_field() {
            return Err(Error::Precondition("U must be a DG algebra over a field".into()));
        }
        let field = algebra.ring().field;
        let s = dims.len() as i64 - 1;
        let r = |j: i64| if (0..=s).contains(&j) { dims[j as usize] } else { 0 };
        let elements = algebra.non_unit_basis();
        // (slot, provisional name)
        let mut raw: Vec<(Slot, String)> = Vec::new();
        let mut blocks_1x1 = true;
        let mut diff_idx = Vec::new();
        let mut act_idx = Vec::new();
        for i in 1..=s {
            let (rows, cols) = (r(i - 1), r(i));
            if rows * cols == 0 {
                continue;
            }
            blocks_1x1 &= rows == 1 && cols == 1;
            diff_idx.push(i);
            for row in 0..rows {
                for col in 0..cols {
                    raw.push((Slot::Diff { degree: i, row, col }, block_name(&format!("a{i}"), rows, cols, row, col)));
                }
            }
        }
        for (t, &(deg, _)) in elements.iter().enumerate() {
            for j in 0..=s {
                let (rows, cols) = (r(deg + j), r(j));
                if rows * cols == 0 {
                    continue;
                }
                blocks_1x1 &= rows == 1 && cols == 1;
                act_idx.push(j);
                let prefix = if elements.len() == 1 { format!("b{j}") } else { format!("b{}_{j}", t + 1) };
                for row in 0..rows {
                    for col in 0..cols {
                        raw.push((
                            Slot::Action { element: t, source: j, row, col },
                            block_name(&prefix, rows, cols, row, col),
                        ));
                    }
                }
            }
        }
        if blocks_1x1 && elements.len() == 1 {
            let act_letter = if diff_idx.iter().any(|i| act_idx.contains(i)) { "y" } else { "x" };
            for (slot, name) in raw.iter_mut() {
                *name = match slot {
                    Slot::Diff { degree, .. } => format!("x{degree}"),
                    Slot::Action { source, .. } => format!("{act_letter}{source}"),
                };
            }
        }
        raw.sort_by_key(|(_, n)| name_key(n));
        let names: Vec<String> = raw.iter().map(|(_, n)| n.clone()).collect();
        let ring = Ring::with_vars(field, names);
        let slots: Vec<Slot> = raw.into_iter().map(|(s, _)| s).collect();
        let mut inst = ModuliInstance {
            algebra: algebra.clone(),
            dims: dims.to_vec(),
            ring,
            slots,
            elements,
            constraints: vec![],
        };
        inst.constraints = normalize_constraints(inst.raw_constraints()?);
        Ok(inst)
    }

    pub fn top(&self) -> i64 {
        self.dims.len() as i64 - 1
    }

    pub fn dim(&self, j: i64) -> usize {
        if (0..=self.top()).contains(&j) {
            self.dims[j as usize]
        } else {
            0
        }
    }

    pub fn unknowns(&self) -> &[String] {
        &self.ring.vars
    }

    pub fn nunknowns(&self) -> usize {
        self.slots.len()
    }

    /// d = Σ r_i r_{i-1}.
    pub fn d(&self) -> usize {
        (1..=self.top()).map(|i| self.dim(i) * self.dim(i - 1)).sum()
    }

    /// d' = Σ_{i,j} n_i r_j r_{i+j}, counting the unit.
    pub fn d_prime_full(&self) -> usize {
        let a = &self.algebra;
        a.complex()
            .degrees()
            .flat_map(|i| (0..=self.top()).map(move |j| (i, j)))
            .map(|(i, j)| a.rank(i) * self.dim(j) * self.dim(i + j))
            .sum()
    }

    /// Number of action unknowns (non-unit elements only).
    pub fn d_prime_reduced(&self) -> usize {
        self.slots.iter().filter(|s| matches!(s, Slot::Action { .. })).count()
    }

    /// ∂_i with entries taken from `entry(k)` for the unknown k.
    pub(crate) fn diff_block<T: Clone>(&self, i: i64, entry: &dyn Fn(usize) -> T, zero: T) -> Vec<Vec<T>> {
        let mut m = vec![vec![zero; self.dim(i)]; self.dim(i - 1)];
        for (k, s) in self.slots.iter().enumerate() {
            if let Slot::Diff { degree, row, col } = s {
                if *degree == i {
                    m[*row][*col] = entry(k);
                }
            }
        }
        m
    }

    pub(crate) fn action_block<T: Clone>(&self, t: usize, j: i64, entry: &dyn Fn(usize) -> T, zero: T) -> Vec<Vec<T>> {
        let deg = self.elements[t].0;
        let mut m = vec![vec![zero; self.dim(j)]; self.dim(deg + j)];
        for (k, s) in self.slots.iter().enumerate() {
            if let Slot::Action { element, source, row, col } = s {
                if *element == t && *source == j {
                    m[*row][*col] = entry(k);
                }
            }
        }
        m
    }

    fn sym(&self, rows: Vec<Vec<Poly>>, r: usize, c: usize) -> Matrix {
        if rows.is_empty() {
            return Matrix::zeros(&self.ring, r, c);
        }
        Matrix::from_rows(&self.ring, rows).expect("rectangular block")
    }

    fn sym_diff(&self, i: i64) -> Matrix {
        let z = Poly::zero(&self.ring);
        let rows = self.diff_block(i, &|k| Poly::var(&self.ring, k), z);
        self.sym(rows, self.dim(i - 1), self.dim(i))
    }

    /// Multiplication by basis element (deg, p) of U on W_j, symbolic.
    fn sym_mu(&self, deg: i64, p: usize, j: i64) -> Matrix {
        let (rows, cols) = (self.dim(deg + j), self.dim(j));
        if deg == 0 && p == self.algebra.unit() {
            return Matrix::identity(&self.ring, cols);
        }
        let t = self.elements.iter().position(|&e| e == (deg, p)).expect("basis element");
        let z = Poly::zero(&self.ring);
        self.sym(self.action_block(t, j, &|k| Poly::var(&self.ring, k), z), rows, cols)
    }

    fn sym_mu_vec(&self, deg: i64, coords: &[Scalar], j: i64) -> Matrix {
        let mut out = Matrix::zeros(&self.ring, self.dim(deg + j), self.dim(j));
        for (p, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.sym_mu(deg, p, j).scale(&Poly::constant(&self.ring, c.clone())));
            }
        }
        out
    }

    fn raw_constraints(&self) -> Result<Vec<Poly>> {
        let a = &self.algebra;
        let s = self.top();
        let mut out = Vec::new();
        let mut push = |m: Matrix| {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    out.push(m.get(r, c).clone());
                }
            }
        };
        for i in 2..=s {
            push(self.sym_diff(i - 1).mul(&self.sym_diff(i)));
        }
        for &(deg, p) in &self.elements {
            let e = crate::dg::unit_vec(a.ring(), a.rank(deg), p);
            let da = to_scalars(&a.diff_vec(deg, &e))?;
            for j in 0..=s {
                let lhs = self.sym_diff(deg + j).mul(&self.sym_mu(deg, p, j));
                let t1 = self.sym_mu_vec(deg - 1, &da, j);
                let t2 = self.sym_mu(deg, p, j - 1).mul(&self.sym_diff(j));
                let rhs = if deg % 2 == 0 { t1.add(&t2) } else { t1.sub(&t2) };
                push(lhs.sub(&rhs));
            }
        }
        for &(da, p) in &self.elements {
            for &(db, q) in &self.elements {
                let ab = to_scalars(&a.basis_product(da, p, db, q))?;
                for j in 0..=s {
                    let lhs = self.sym_mu_vec(da + db, &ab, j);
                    let rhs = self.sym_mu(da, p, db + j).mul(&self.sym_mu(db, q, j));
                    push(lhs.sub(&rhs));
                }
            }
        }
        Ok(out)
    }

    /// Constraint strings in normalized order.
    pub fn constraint_strings(&self) -> Vec<String> {
        self.constraints.iter().map(|p| p.to_string()).collect()
    }

    /// Index of an unknown by name.
    pub fn unknown_index(&self, name: &str) -> Option<usize> {
        self.ring.var_index(name)
    }

    /// Values by name, for building points.
    pub fn values_from_map(&self, vals: &BTreeMap<String, Scalar>) -> Result<Vec<Scalar>> {
        let field = self.ring.field;
        for k in vals.keys() {
            if self.unknown_index(k).is_none() {
                return Err(Error::Parse(format!("unknown {k} is not a coordinate of this instance")));
            }
        }
        Ok(self.unknowns().iter().map(|n| vals.get(n).cloned().unwrap_or_else(|| field.zero())).collect())
    }
}
