use super::{ChainMap, Complex};
use crate::arith::{same_ring, Matrix, Poly};
use crate::error::{Error, Result};

/// Basis bookkeeping for (X⊗Y)_n = ⊕_p X_p ⊗ Y_{n-p}.
///
/// Summands run over descending p, so K(x)⊗K(y) has degree-1 basis e⊗1, 1⊗e.
/// Inside a summand, x_a ⊗ y_b is ordered a-major.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    pub x: Complex,
    pub y: Complex,
}

impl TensorLayout {
    pub fn new(x: &Complex, y: &Complex) -> TensorLayout {
        TensorLayout { x: x.clone(), y: y.clone() }
    }

    pub fn lo(&self) -> i64 {
        self.x.lo() + self.y.lo()
    }

    pub fn hi(&self) -> i64 {
        self.x.hi() + self.y.hi()
    }

    pub fn rank(&self, n: i64) -> usize {
        self.x.degrees().map(|p| self.x.rank(p) * self.y.rank(n - p)).sum()
    }

    pub fn offset(&self, n: i64, p: i64) -> usize {
        self.x.degrees().rev().take_while(|&q| q > p).map(|q| self.x.rank(q) * self.y.rank(n - q)).sum()
    }

    /// Coordinate of x_a ⊗ y_b with x_a ∈ X_p, y_b ∈ Y_{n-p}.
    pub fn index(&self, n: i64, p: i64, a: usize, b: usize) -> usize {
        self.offset(n, p) + a * self.y.rank(n - p) + b
    }

    /// Inverse of `index`: (p, a, b) for a coordinate in degree n.
    pub fn locate(&self, n: i64, k: usize) -> (i64, usize, usize) {
        let mut off = 0;
        for p in self.x.degrees().rev() {
            let ry = self.y.rank(n - p);
            let sz = self.x.rank(p) * ry;
            if k < off + sz {
                let r = k - off;
                return (p, r / ry, r % ry);
            }
            off += sz;
        }
        panic!("tensor coordinate {k} out of range in degree {n}")
    }

    pub fn diff_matrix(&self, n: i64) -> Matrix {
        let ring = self.x.ring();
        let mut d = Matrix::zeros(ring, self.rank(n - 1), self.rank(n));
        for p in self.x.degrees() {
            let q = n - p;
            let (rx, ry) = (self.x.rank(p), self.y.rank(q));
            if rx == 0 || ry == 0 {
                continue;
            }
            let dx = self.x.diff(p);
            let dy = self.y.diff(q);
            let sign = if p % 2 == 0 { 1 } else { -1 };
            for a in 0..rx {
                for b in 0..ry {
                    let col = self.index(n, p, a, b);
                    for a2 in 0..self.x.rank(p - 1) {
                        let c = dx.get(a2, a);
                        if !c.is_zero() {
                            let row = self.index(n - 1, p - 1, a2, b);
                            let v = d.get(row, col) + c;
                            d.set(row, col, v);
                        }
                    }
                    for b2 in 0..self.y.rank(q - 1) {
                        let c = dy.get(b2, b);
                        if !c.is_zero() {
                            let row = self.index(n - 1, p, a, b2);
                            let t = if sign > 0 { c.clone() } else { -c };
                            let v = d.get(row, col) + &t;
                            d.set(row, col, v);
                        }
                    }
                }
            }
        }
        d
    }
}

/// X ⊗ Y with ∂(x⊗y) = ∂x⊗y + (-1)^{|x|} x⊗∂y.
pub fn tensor_complex(x: &Complex, y: &Complex) -> Result<Complex> {
    if !same_ring(x.ring(), y.ring()) {
        return Err(Error::RingMismatch("tensor of complexes over different rings".into()));
    }
    let lay = TensorLayout::new(x, y);
    let (lo, hi) = (lay.lo(), lay.hi());
    let ranks = (lo..=hi).map(|n| lay.rank(n)).collect();
    let diffs = (lo + 1..=hi).map(|n| lay.diff_matrix(n)).collect();
    let c = Complex::new(x.ring(), lo, ranks, diffs)?;
    let labels = (lo..=hi)
        .map(|n| {
            (0..lay.rank(n))
                .map(|k| {
                    let (p, a, b) = lay.locate(n, k);
                    let la = x.label(p, a).map(str::to_string).unwrap_or(format!("x{p}_{a}"));
                    let lb = y.label(n - p, b).map(str::to_string).unwrap_or(format!("y{}_{b}", n - p));
                    format!("{la}⊗{lb}")
                })
                .collect()
        })
        .collect();
    c.with_labels(labels)
}

/// f ⊗ g : X⊗Y → X'⊗Y' with (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y).
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let src = TensorLayout::new(f.source(), g.source());
    let tgt = TensorLayout::new(f.target(), g.target());
    let source = tensor_complex(f.source(), g.source())?;
    let target = tensor_complex(f.target(), g.target())?;
    let deg = f.degree() + g.degree();
    let ring = source.ring().clone();
    let mut comps = Vec::new();
    for n in source.degrees() {
        let mut m = Matrix::zeros(&ring, target.rank(n + deg), source.rank(n));
        for col in 0..source.rank(n) {
            let (p, a, b) = src.locate(n, col);
            let fp = f.component(p);
            let gq = g.component(n - p);
            let neg = (g.degree() * p) % 2 != 0;
            let p2 = p + f.degree();
            for a2 in 0..fp.rows() {
                let fa = fp.get(a2, a);
                if fa.is_zero() {
                    continue;
                }
                for b2 in 0..gq.rows() {
                    let gb = gq.get(b2, b);
                    if gb.is_zero() {
                        continue;
                    }
                    let mut v: Poly = fa * gb;
                    if neg {
                        v = -&v;
                    }
                    let row = tgt.index(n + deg, p2, a2, b2);
                    let cur = m.get(row, col) + &v;
                    m.set(row, col, cur);
                }
            }
        }
        comps.push(m);
    }
    ChainMap::graded(&source, &target, deg, comps)
}
