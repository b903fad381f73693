//! Structured free resolutions with DG algebra products: Hilbert–Burch (length 2)
//! and Buchsbaum–Eisenbud (length 3), and the alternating family M_n.
//!
//! The builders check the algebraic identities (B·A = 0, d∘d = 0 and every DG
//! axiom). Grade and perfection hypotheses are not checked.

use crate::arith::{principal_pfaffian, signed_submaximal_pfaffians, Field, Matrix, Poly, Ring, RingRef, SignFlag};
use crate::complex::Complex;
use crate::dg::{DgAlgebra, ProductTable};
use crate::error::{Error, Result};

fn labels(m: usize, n: usize, top: bool) -> Vec<Vec<String>> {
    let mut out = vec![
        vec!["1".to_string()],
        (1..=m).map(|i| format!("e{i}")).collect(),
        (1..=n).map(|i| format!("f{i}")).collect(),
    ];
    if top {
        out.push(vec!["g".to_string()]);
    }
    out
}

fn unit_products(ring: &RingRef, ranks: &[usize]) -> ProductTable {
    let mut t = ProductTable::new();
    for (i, &r) in ranks.iter().enumerate() {
        let id: Vec<Vec<Poly>> =
            (0..r).map(|q| (0..r).map(|s| if s == q { Poly::one(ring) } else { Poly::zero(ring) }).collect()).collect();
        t.insert((0, i as i64), id.clone());
        t.insert((i as i64, 0), id);
    }
    t
}

/// B_i = (-1)^{i-1} a det(A_i), A_i = A without row i (1-based).
pub fn hilbert_burch_row(a: &Poly, m: &Matrix) -> Result<Matrix> {
    let (r, c) = m.shape();
    if r != c + 1 {
        return Err(Error::Dimension(format!("expected an (n+1)×n matrix, got {r}×{c}")));
    }
    let mut b = Matrix::zeros(m.ring(), 1, r);
    for i in 0..r {
        let d = &m.delete(&[i], &[])?.det()? * a;
        b.set(0, i, if i % 2 == 0 { d } else { -&d });
    }
    Ok(b)
}

#[derive(Clone, Debug)]
pub struct HilbertBurch {
    pub a: Poly,
    pub matrix: Matrix,
    pub row: Matrix,
    pub algebra: DgAlgebra,
}

/// The complex 0 → ⊕Rf → ⊕Re → R with products
/// e_ie_j = -e_je_i = a Σ_k (-1)^{i+j+k} det(A^k_{i,j}) f_k, all others zero.
pub fn build_hilbert_burch(a: &Poly, m: &Matrix) -> Result<HilbertBurch> {
    let ring = m.ring().clone();
    let b = hilbert_burch_row(a, m)?;
    if !b.mul(m).is_zero() {
        return Err(Error::Axiom("B·A is not zero".into()));
    }
    let (r, n) = m.shape();
    let complex =
        Complex::new(&ring, 0, vec![1, r, n], vec![b.clone(), m.clone()])?.with_labels(labels(r, n, false))?;
    let mut products = unit_products(&ring, &[1, r, n]);
    let mut ee = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let mut v = vec![Poly::zero(&ring); n];
            if i != j {
                let (lo, hi) = (i.min(j), i.max(j));
                for (k, slot) in v.iter_mut().enumerate() {
                    let d = &m.delete(&[lo, hi], &[k])?.det()? * a;
                    // 1-based exponent i+j+k has the parity of the 0-based sum plus one
                    let neg = (lo + hi + k + 1) % 2 == 1;
                    let d = if neg { -&d } else { d };
                    *slot = if i < j { d } else { -&d };
                }
            }
            ee.push(v);
        }
    }
    products.insert((1, 1), ee);
    let algebra = DgAlgebra::new(complex, 0, products)?;
    Ok(HilbertBurch { a: a.clone(), matrix: m.clone(), row: b, algebra })
}

#[derive(Clone, Debug)]
pub struct BuchsbaumEisenbud {
    pub matrix: Matrix,
    pub row: Matrix,
    pub flag: SignFlag,
    pub algebra: DgAlgebra,
}

/// The complex 0 → Rg → ⊕Rf → ⊕Re → R with d = (B, A, Bᵀ) and products
/// e_ie_j = -e_je_i = Σ_k (-1)^{i+j+k} ρ_{ijk} Pf(A^{ijk}_{ijk}) f_k (ρ = -1 iff i<k<j),
/// e_if_j = f_je_i = δ_{ij} g. Under sign flag A, B changes sign and so do the e·e products.
/// Pf(A^{ijk}_{ijk}) deletes the index set {i,j,k}; it vanishes when k ∈ {i,j}.
pub fn build_buchsbaum_eisenbud(m: &Matrix, flag: SignFlag) -> Result<BuchsbaumEisenbud> {
    let ring = m.ring().clone();
    let n = m.rows();
    if !m.is_alternating() {
        return Err(Error::Precondition("matrix is not alternating".into()));
    }
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("size {n} is even")));
    }
    let pf = signed_submaximal_pfaffians(m, flag)?;
    let b = Matrix::from_rows(&ring, vec![pf])?;
    let complex = Complex::new(&ring, 0, vec![1, n, n, 1], vec![b.clone(), m.clone(), b.transpose()])?
        .with_labels(labels(n, n, true))?;
    let mut products = unit_products(&ring, &[1, n, n, 1]);
    let flip = flag == SignFlag::A;
    let mut ee = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = vec![Poly::zero(&ring); n];
            if i != j {
                let (lo, hi) = (i.min(j), i.max(j));
                for (k, slot) in v.iter_mut().enumerate() {
                    if k == lo || k == hi {
                        continue;
                    }
                    let p = principal_pfaffian(m, &[lo, hi, k]);
                    let rho = lo < k && k < hi;
                    // 0-based indices: (-1)^{i+j+k} with 1-based indices is (-1)^{lo+hi+k+1}
                    let neg = ((lo + hi + k + 1) % 2 == 1) ^ rho ^ (i > j) ^ flip;
                    *slot = if neg { -&p } else { p };
                }
            }
            ee.push(v);
        }
    }
    products.insert((1, 1), ee);
    let delta: Vec<Vec<Poly>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| vec![if i == j { Poly::one(&ring) } else { Poly::zero(&ring) }])
        .collect();
    products.insert((1, 2), delta.clone());
    products.insert((2, 1), delta);
    let algebra = DgAlgebra::new(complex, 0, products)?;
    Ok(BuchsbaumEisenbud { matrix: m.clone(), row: b, flag, algebra })
}

/// The n×n alternating matrix over Q[x,y,z] with entries above the diagonal
/// x at (i, i+1) for odd i, y at (i, i+1) for even i, z at (i, n-i+1) (1-based).
pub fn alternating_family(n: usize) -> Result<Matrix> {
    alternating_family_over(&Ring::new(Field::Rational, &["x", "y", "z"]), n)
}

pub fn alternating_family_over(ring: &RingRef, n: usize) -> Result<Matrix> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Precondition(format!("size must be odd and at least 3, got {n}")));
    }
    let var = |name: &str| {
        ring.var_index(name)
            .map(|_| Poly::named(ring, name))
            .ok_or_else(|| Error::Parse(format!("ring has no variable {name}")))
    };
    let (x, y, z) = (var("x")?, var("y")?, var("z")?);
    let mut m = Matrix::zeros(ring, n, n);
    for i in 1..=n {
        for j in i + 1..=n {
            let e = if j == i + 1 && i % 2 == 1 {
                x.clone()
            } else if j == i + 1 {
                y.clone()
            } else if j == n - i + 1 {
                z.clone()
            } else {
                continue;
            };
            m.set(i - 1, j - 1, e.clone());
            m.set(j - 1, i - 1, -&e);
        }
    }
    Ok(m)
}

/// Human-readable nonzero products among basis elements of positive degree,
/// one line per unordered pair, e.g. "e1*e2 = y*f1".
pub fn product_table_text(alg: &DgAlgebra) -> String {
    let c = alg.complex();
    let label = |i: i64, p: usize| c.label(i, p).map(str::to_string).unwrap_or_else(|| format!("b{i}_{p}"));
    let mut out = String::new();
    let basis: Vec<(i64, usize)> = alg.basis().into_iter().filter(|&(i, _)| i > 0).collect();
    for (s, &(i, p)) in basis.iter().enumerate() {
        for &(j, q) in &basis[s..] {
            let v = alg.basis_product(i, p, j, q);
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(r, x)| format_term(x, &label(i + j, r)))
                .collect();
            if terms.is_empty() {
                continue;
            }
            let mut rhs = terms.join(" + ").replace("+ -", "- ");
            if rhs.is_empty() {
                rhs = "0".into();
            }
            out.push_str(&format!("{}*{} = {}\n", label(i, p), label(j, q), rhs));
        }
    }
    out
}

fn format_term(c: &Poly, name: &str) -> String {
    if c.is_one() {
        return name.to_string();
    }
    if (-c).is_one() {
        return format!("-{name}");
    }
    if c.nterms() == 1 {
        format!("{c}*{name}")
    } else {
        format!("({c})*{name}")
    }
}
