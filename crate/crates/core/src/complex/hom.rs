use super::{ChainMap, Complex};
use crate::arith::{same_ring, Matrix, Poly};
use crate::error::{Error, Result};

/// Basis bookkeeping for Hom(X,Y)_n = ⊕_p Hom(X_p, Y_{p+n}).
///
/// Summands are ordered by ascending p; inside a summand the matrix units E_{r,c}
/// (target basis r, source basis c) are ordered row-major.
#[derive(Clone, Debug)]
pub struct HomLayout {
    pub x: Complex,
    pub y: Complex,
}

impl HomLayout {
    pub fn new(x: &Complex, y: &Complex) -> HomLayout {
        HomLayout { x: x.clone(), y: y.clone() }
    }

    pub fn lo(&self) -> i64 {
        self.y.lo() - self.x.hi()
    }

    pub fn hi(&self) -> i64 {
        self.y.hi() - self.x.lo()
    }

    /// Source degrees p contributing to Hom_n, with their offsets.
    pub fn summands(&self, n: i64) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in self.x.degrees() {
            let sz = self.x.rank(p) * self.y.rank(p + n);
            if sz > 0 {
                out.push((p, off));
                off += sz;
            }
        }
        out
    }

    pub fn rank(&self, n: i64) -> usize {
        self.x.degrees().map(|p| self.x.rank(p) * self.y.rank(p + n)).sum()
    }

    pub fn offset(&self, n: i64, p: i64) -> usize {
        self.x.degrees().take_while(|&q| q < p).map(|q| self.x.rank(q) * self.y.rank(q + n)).sum()
    }

    /// Coordinate of the matrix unit E_{r,c} in Hom(X_p, Y_{p+n}).
    pub fn index(&self, n: i64, p: i64, r: usize, c: usize) -> usize {
        self.offset(n, p) + r * self.x.rank(p) + c
    }

    /// Splits a coordinate vector of Hom_n into its component matrices f_p.
    pub fn unpack(&self, n: i64, v: &[Poly]) -> Vec<(i64, Matrix)> {
        let ring = self.x.ring();
        self.x
            .degrees()
            .map(|p| {
                let (rr, cc) = (self.y.rank(p + n), self.x.rank(p));
                let mut m = Matrix::zeros(ring, rr, cc);
                let off = self.offset(n, p);
                for r in 0..rr {
                    for c in 0..cc {
                        m.set(r, c, v[off + r * cc + c].clone());
                    }
                }
                (p, m)
            })
            .collect()
    }

    /// Flattens component matrices f_p (p = source degree) into Hom_n coordinates.
    pub fn pack(&self, n: i64, f: &dyn Fn(i64) -> Matrix) -> Vec<Poly> {
        let ring = self.x.ring();
        let mut v = vec![Poly::zero(ring); self.rank(n)];
        for p in self.x.degrees() {
            let m = f(p);
            let off = self.offset(n, p);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    v[off + r * m.cols() + c] = m.get(r, c).clone();
                }
            }
        }
        v
    }

    /// The graded map of degree n with the given coordinates.
    pub fn to_map(&self, n: i64, v: &[Poly]) -> ChainMap {
        let comps = self.unpack(n, v).into_iter().map(|(_, m)| m).collect();
        ChainMap::graded(&self.x, &self.y, n, comps).expect("layout shapes")
    }

    pub fn from_map(&self, f: &ChainMap) -> Vec<Poly> {
        self.pack(f.degree(), &|p| f.component(p))
    }

    /// (∂f)_p = ∂^Y_{p+n} f_p - (-1)^n f_{p-1} ∂^X_p for f of degree n.
    pub fn apply_diff(&self, n: i64, f: &dyn Fn(i64) -> Matrix) -> Vec<Poly> {
        let sign_neg = n % 2 == 0;
        self.pack(n - 1, &|p| {
            let a = self.y.diff(p + n).mul(&f(p));
            let b = f(p - 1).mul(&self.x.diff(p));
            if sign_neg {
                a.sub(&b)
            } else {
                a.add(&b)
            }
        })
    }

    fn get_component(&self, n: i64, v: &[Poly], p: i64) -> Matrix {
        let ring = self.x.ring();
        let (rr, cc) = (self.y.rank(p + n), self.x.rank(p));
        let mut m = Matrix::zeros(ring, rr, cc);
        if cc == 0 || rr == 0 || p < self.x.lo() || p > self.x.hi() {
            return m;
        }
        let off = self.offset(n, p);
        for r in 0..rr {
            for c in 0..cc {
                m.set(r, c, v[off + r * cc + c].clone());
            }
        }
        m
    }

    /// Differential matrix Hom_n → Hom_{n-1}.
    pub fn diff_matrix(&self, n: i64) -> Matrix {
        let ring = self.x.ring();
        let (src, tgt) = (self.rank(n), self.rank(n - 1));
        let mut d = Matrix::zeros(ring, tgt, src);
        for j in 0..src {
            let mut e = vec![Poly::zero(ring); src];
            e[j] = Poly::one(ring);
            let img = self.apply_diff(n, &|p| self.get_component(n, &e, p));
            for (i, v) in img.into_iter().enumerate() {
                d.set(i, j, v);
            }
        }
        d
    }
}

/// The Hom complex Hom(X,Y) with the layout of `HomLayout`.
pub fn hom_complex(x: &Complex, y: &Complex) -> Result<Complex> {
    if !same_ring(x.ring(), y.ring()) {
        return Err(Error::RingMismatch("Hom of complexes over different rings".into()));
    }
    let lay = HomLayout::new(x, y);
    let (lo, hi) = (lay.lo(), lay.hi());
    let ranks: Vec<usize> = (lo..=hi).map(|n| lay.rank(n)).collect();
    let diffs = (lo + 1..=hi).map(|n| lay.diff_matrix(n)).collect();
    let labels = (lo..=hi)
        .map(|n| {
            let mut l = Vec::new();
            for p in x.degrees() {
                for r in 0..y.rank(p + n) {
                    for c in 0..x.rank(p) {
                        l.push(format!("({p},{c},{r})"));
                    }
                }
            }
            l
        })
        .collect();
    Complex::new(x.ring(), lo, ranks, diffs)?.with_labels(labels)
}
