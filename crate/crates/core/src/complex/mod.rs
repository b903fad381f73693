//! Bounded complexes of finite free modules, chain maps, Hom and tensor complexes,
//! homology over a field, truncation and null-homotopies.

mod hom;
mod homology;
mod ops;
mod tensor;
mod truncate;

pub use hom::{hom_complex, HomLayout};
pub use homology::{homology, induced_on_homology, is_quasi_isomorphism, Homology, HomologyDegree};
pub use ops::{
    constant_chain_maps, dual_sign_isomorphism, homothety, is_chain_isomorphism, mapping_cone, null_homotopy_holds,
    shift_unsigned, solve_null_homotopy, suspend, unsigned_dual,
};
pub use tensor::{tensor_complex, tensor_maps, TensorLayout};
pub use truncate::{quotient_complex, soft_truncate, Quotient, Truncation};

use crate::arith::{same_ring, FieldMatrix, Matrix, RingRef};
use crate::error::{Error, Result};

/// A bounded complex C_lo ← … ← C_hi of free modules with d_i : C_i → C_{i-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    ring: RingRef,
    lo: i64,
    ranks: Vec<usize>,
    // diffs[k] is d_{lo+k}; d_lo maps to the zero module
    diffs: Vec<Matrix>,
    labels: Option<Vec<Vec<String>>>,
}

impl Complex {
    /// Builds a complex from ranks in degrees lo..=lo+len-1 and differentials d_{lo+1}..d_hi.
    /// Rejects wrong shapes and d∘d ≠ 0.
    pub fn new(ring: &RingRef, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Complex> {
        if ranks.is_empty() {
            return Err(Error::NotAComplex("no degrees".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::NotAComplex(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        let mut all = vec![Matrix::zeros(ring, 0, ranks[0])];
        for (k, d) in diffs.into_iter().enumerate() {
            let i = lo + k as i64 + 1;
            if !same_ring(d.ring(), ring) {
                return Err(Error::RingMismatch(format!("d_{i} over another ring")));
            }
            if d.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::NotAComplex(format!(
                    "d_{i} has shape {:?}, expected {}x{}",
                    d.shape(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
            all.push(d);
        }
        let c = Complex { ring: ring.clone(), lo, ranks, diffs: all, labels: None };
        for i in c.lo + 2..=c.hi() {
            if !c.diff(i - 1).mul(&c.diff(i)).is_zero() {
                return Err(Error::NotAComplex(format!("d_{} d_{} != 0", i - 1, i)));
            }
        }
        Ok(c)
    }

    /// Builds from a differential map keyed by degree; missing differentials are zero.
    pub fn from_map(
        ring: &RingRef,
        lo: i64,
        ranks: Vec<usize>,
        diffs: &std::collections::BTreeMap<i64, Matrix>,
    ) -> Result<Complex> {
        let hi = lo + ranks.len() as i64 - 1;
        for k in diffs.keys() {
            if *k <= lo || *k > hi {
                return Err(Error::NotAComplex(format!("differential d_{k} outside degrees")));
            }
        }
        let ds = (lo + 1..=hi)
            .map(|i| {
                let k = (i - lo) as usize;
                diffs.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(ring, ranks[k - 1], ranks[k]))
            })
            .collect();
        Complex::new(ring, lo, ranks, ds)
    }

    pub fn zero(ring: &RingRef) -> Complex {
        Complex::new(ring, 0, vec![0], vec![]).unwrap()
    }

    /// A single free module of the given rank placed in one degree.
    pub fn concentrated(ring: &RingRef, degree: i64, rank: usize) -> Complex {
        Complex::new(ring, degree, vec![rank], vec![]).unwrap()
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Complex> {
        if labels.len() != self.ranks.len() || labels.iter().zip(&self.ranks).any(|(l, r)| l.len() != *r) {
            return Err(Error::Dimension("labels do not match ranks".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn label(&self, i: i64, k: usize) -> Option<&str> {
        let l = self.labels.as_ref()?;
        l.get((i - self.lo) as usize)?.get(k).map(String::as_str)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank in degree i; zero outside the stored range.
    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// d_i : C_i → C_{i-1}, a zero matrix outside the stored range.
    pub fn diff(&self, i: i64) -> Matrix {
        if i > self.lo && i <= self.hi() {
            self.diffs[(i - self.lo) as usize].clone()
        } else {
            Matrix::zeros(&self.ring, self.rank(i - 1), self.rank(i))
        }
    }

    pub fn diff_ref(&self, i: i64) -> Option<&Matrix> {
        if i > self.lo && i <= self.hi() {
            Some(&self.diffs[(i - self.lo) as usize])
        } else {
            None
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Smallest and largest degrees with nonzero rank.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = self.degrees().filter(|&i| self.rank(i) > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    /// Same complex over a larger degree window, padding with zero modules.
    pub fn widen(&self, lo: i64, hi: i64) -> Complex {
        let lo = lo.min(self.lo);
        let hi = hi.max(self.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|i| self.rank(i)).collect();
        let ds = (lo + 1..=hi).map(|i| self.diff(i)).collect();
        let mut c = Complex::new(&self.ring, lo, ranks, ds).expect("widening keeps d∘d = 0");
        if let Some(l) = &self.labels {
            let labels = (lo..=hi)
                .map(|i| if i < self.lo || i > self.hi() { vec![] } else { l[(i - self.lo) as usize].clone() })
                .collect();
            c.labels = Some(labels);
        }
        c
    }

    /// All differentials are constant, so field linear algebra applies.
    pub fn is_constant(&self) -> bool {
        self.diffs.iter().all(Matrix::is_constant)
    }

    pub fn field_diff(&self, i: i64) -> Result<FieldMatrix> {
        self.diff(i).to_field()
    }
}

/// A degree-n graded map f_i : X_i → Y_{i+n}. `ChainMap::new` additionally requires
/// ∂f = (-1)^n f∂; homotopies are built with `ChainMap::graded`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    degree: i64,
    // comps[k] is f_{source.lo + k}
    comps: Vec<Matrix>,
}

impl ChainMap {
    /// Components indexed by source degree lo..=hi; shapes are checked.
    pub fn graded(source: &Complex, target: &Complex, degree: i64, comps: Vec<Matrix>) -> Result<ChainMap> {
        if !same_ring(source.ring(), target.ring()) {
            return Err(Error::RingMismatch("chain map between different rings".into()));
        }
        if comps.len() != source.ranks.len() {
            return Err(Error::Dimension(format!("expected {} components, got {}", source.ranks.len(), comps.len())));
        }
        for (k, m) in comps.iter().enumerate() {
            let i = source.lo + k as i64;
            let want = (target.rank(i + degree), source.rank(i));
            if m.shape() != want {
                return Err(Error::Dimension(format!("component {i} has shape {:?}, expected {want:?}", m.shape())));
            }
        }
        Ok(ChainMap { source: source.clone(), target: target.clone(), degree, comps })
    }

    /// Graded map from components keyed by source degree; missing ones are zero.
    pub fn graded_from_map(
        source: &Complex,
        target: &Complex,
        degree: i64,
        comps: &std::collections::BTreeMap<i64, Matrix>,
    ) -> Result<ChainMap> {
        let cs = source
            .degrees()
            .map(|i| {
                comps
                    .get(&i)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zeros(source.ring(), target.rank(i + degree), source.rank(i)))
            })
            .collect();
        ChainMap::graded(source, target, degree, cs)
    }

    pub fn new(source: &Complex, target: &Complex, degree: i64, comps: Vec<Matrix>) -> Result<ChainMap> {
        let f = ChainMap::graded(source, target, degree, comps)?;
        f.check_commutes()?;
        Ok(f)
    }

    pub fn identity(x: &Complex) -> ChainMap {
        let comps = x.degrees().map(|i| Matrix::identity(x.ring(), x.rank(i))).collect();
        ChainMap::graded(x, x, 0, comps).unwrap()
    }

    pub fn zero(source: &Complex, target: &Complex, degree: i64) -> ChainMap {
        ChainMap::graded_from_map(source, target, degree, &Default::default()).unwrap()
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// f_i; a zero matrix outside the source range.
    pub fn component(&self, i: i64) -> Matrix {
        if i >= self.source.lo && i <= self.source.hi() {
            self.comps[(i - self.source.lo) as usize].clone()
        } else {
            Matrix::zeros(self.source.ring(), self.target.rank(i + self.degree), self.source.rank(i))
        }
    }

    /// The defect ∂f - (-1)^n f∂ in each degree; all zero for a chain map.
    pub fn commutator(&self, i: i64) -> Matrix {
        let n = self.degree;
        let left = self.target.diff(i + n).mul(&self.component(i));
        let right = self.component(i - 1).mul(&self.source.diff(i));
        if n % 2 == 0 {
            left.sub(&right)
        } else {
            left.add(&right)
        }
    }

    pub fn check_commutes(&self) -> Result<()> {
        for i in self.source.lo..=self.source.hi() + 1 {
            if !self.commutator(i).is_zero() {
                return Err(Error::NotAChainMap(format!("square at source degree {i} does not commute")));
            }
        }
        Ok(())
    }

    pub fn is_chain_map(&self) -> bool {
        self.check_commutes().is_ok()
    }

    /// g ∘ f for f = self.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap> {
        let lo = self.target.lo.min(g.source.lo);
        let hi = self.target.hi().max(g.source.hi());
        if (lo..=hi).any(|i| self.target.rank(i) != g.source.rank(i)) {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        let comps = self.source.degrees().map(|i| g.component(i + self.degree).mul(&self.component(i))).collect();
        ChainMap::graded(&self.source, &g.target, self.degree + g.degree, comps)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.degree != other.degree {
            return Err(Error::Dimension("sum of maps of different degrees".into()));
        }
        let comps = self.source.degrees().map(|i| self.component(i).add(&other.component(i))).collect();
        ChainMap::graded(&self.source, &self.target, self.degree, comps)
    }

    pub fn scale(&self, r: &crate::arith::Poly) -> ChainMap {
        let comps = self.comps.iter().map(|m| m.scale(r)).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), degree: self.degree, comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }
}
