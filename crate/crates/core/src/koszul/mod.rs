//! Koszul complexes: exterior and iterated-tensor constructions, the comparison
//! isomorphism, self-duality and the annihilation homotopies.

mod exterior;

pub use exterior::{exterior_basis, exterior_index, wedge_basis, Exterior};

use std::collections::BTreeMap;

use crate::arith::{same_ring, Matrix, Poly, RingRef};
use crate::complex::{
    constant_chain_maps, dual_sign_isomorphism, is_chain_isomorphism, suspend, tensor_complex, tensor_maps,
    unsigned_dual, ChainMap, Complex, TensorLayout,
};
use crate::dg::DgAlgebra;
use crate::error::{Error, Result};

fn check_seq(xs: &[Poly]) -> Result<RingRef> {
    let ring = xs.first().ok_or_else(|| Error::Precondition("empty sequence".into()))?.ring().clone();
    if xs.iter().any(|x| !same_ring(x.ring(), &ring)) {
        return Err(Error::RingMismatch("sequence elements from different rings".into()));
    }
    Ok(ring)
}

/// Label of an exterior basis element: "1" or "e1^e3".
pub fn exterior_label(set: &[usize]) -> String {
    if set.is_empty() {
        "1".into()
    } else {
        set.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
    }
}

/// K(x_1..x_n) as the exterior algebra with the Koszul differential; degrees 0..n,
/// basis lexicographic on increasing index lists.
pub fn koszul_complex(xs: &[Poly]) -> Result<Complex> {
    let ring = check_seq(xs)?;
    let n = xs.len();
    let ranks: Vec<usize> = (0..=n).map(|t| exterior_basis(n, t).len()).collect();
    let mut diffs = Vec::new();
    for t in 1..=n {
        let src = exterior_basis(n, t);
        let tgt = exterior_basis(n, t - 1);
        let mut d = Matrix::zeros(&ring, tgt.len(), src.len());
        for (c, set) in src.iter().enumerate() {
            let img = Exterior::basis(&ring, n, set).koszul_diff(xs);
            for (s, v) in img.terms() {
                let r = tgt.iter().position(|b| b == s).unwrap();
                d.set(r, c, v.clone());
            }
        }
        diffs.push(d);
    }
    let labels = (0..=n).map(|t| exterior_basis(n, t).iter().map(|s| exterior_label(s)).collect()).collect();
    Complex::new(&ring, 0, ranks, diffs)?.with_labels(labels)
}

/// K(x) = 0 → R →x R → 0 in degrees 1, 0.
pub fn koszul_two_term(x: &Poly) -> Complex {
    let ring = x.ring();
    let d = Matrix::from_rows(ring, vec![vec![x.clone()]]).unwrap();
    Complex::new(ring, 0, vec![1, 1], vec![d]).unwrap().with_labels(vec![vec!["1".into()], vec!["e".into()]]).unwrap()
}

/// K(x_1) ⊗ ⋯ ⊗ K(x_n), folded from the left.
pub fn koszul_via_tensor(xs: &[Poly]) -> Result<Complex> {
    check_seq(xs)?;
    let mut k = koszul_two_term(&xs[0]);
    for x in &xs[1..] {
        k = tensor_complex(&k, &koszul_two_term(x))?;
    }
    Ok(k)
}

/// For each degree, the index set of each basis element of the iterated tensor presentation.
fn tensor_subsets(xs: &[Poly]) -> Result<BTreeMap<i64, Vec<Vec<usize>>>> {
    let mut k = koszul_two_term(&xs[0]);
    let mut sets: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    sets.insert(0, vec![vec![]]);
    sets.insert(1, vec![vec![0]]);
    for (idx, x) in xs.iter().enumerate().skip(1) {
        let kx = koszul_two_term(x);
        let lay = TensorLayout::new(&k, &kx);
        let mut next = BTreeMap::new();
        for t in lay.lo()..=lay.hi() {
            let v: Vec<Vec<usize>> = (0..lay.rank(t))
                .map(|c| {
                    let (p, a, b) = lay.locate(t, c);
                    let _ = b;
                    let mut s = sets[&p].get(a).cloned().unwrap();
                    if t - p == 1 {
                        s.push(idx);
                    }
                    s
                })
                .collect();
            next.insert(t, v);
        }
        sets = next;
        k = tensor_complex(&k, &kx)?;
    }
    Ok(sets)
}

/// The comparison isomorphism from the iterated tensor presentation to the exterior one.
/// Every pure tensor maps to +e_J; only the basis order differs (from n = 4 on).
pub fn tensor_to_exterior(xs: &[Poly]) -> Result<ChainMap> {
    let ring = check_seq(xs)?;
    let n = xs.len();
    let src = koszul_via_tensor(xs)?;
    let tgt = koszul_complex(xs)?;
    let sets = tensor_subsets(xs)?;
    let comps = src
        .degrees()
        .map(|t| {
            let mut m = Matrix::zeros(&ring, tgt.rank(t), src.rank(t));
            for (c, s) in sets[&t].iter().enumerate() {
                m.set(exterior_index(n, s), c, Poly::one(&ring));
            }
            m
        })
        .collect();
    ChainMap::new(&src, &tgt, 0, comps)
}

/// An isomorphism Σ^{-n}K → K^† (unsigned dual), found by solving for constant
/// chain maps and normalized to 1 in degree 0.
pub fn self_duality_unsigned(xs: &[Poly]) -> Result<ChainMap> {
    let n = xs.len() as i64;
    let k = koszul_complex(xs)?;
    let src = suspend(&k, -n);
    let tgt = unsigned_dual(&k);
    let maps = constant_chain_maps(&src, &tgt)?;
    let ring = k.ring();
    let mut candidates: Vec<ChainMap> = maps.clone();
    // the space is one-dimensional for a regular-looking sequence; otherwise try sums
    if maps.len() > 1 {
        let mut acc = maps[0].clone();
        for m in &maps[1..] {
            acc = acc.add(m)?;
        }
        candidates.insert(0, acc);
    }
    for f in candidates {
        let top = f.component(0);
        let Some(c) = top.get(0, 0).constant_value() else { continue };
        let Some(inv) = c.inv() else { continue };
        let g = f.scale(&Poly::constant(ring, inv));
        if is_chain_isomorphism(&g) {
            return Ok(g);
        }
    }
    Err(Error::Precondition("no constant self-duality isomorphism found".into()))
}

/// An isomorphism Σ^{-n}K → Hom(K,R): the unsigned witness followed by the sign change K^† ≅ Hom(K,R).
pub fn self_duality_witness(xs: &[Poly]) -> Result<ChainMap> {
    let f = self_duality_unsigned(xs)?;
    let k = koszul_complex(xs)?;
    let to_dag = dual_sign_isomorphism(&k)?;
    // the sign isomorphism is diagonal ±1, hence its own inverse
    let back_comps = to_dag.target().degrees().map(|i| to_dag.component(i)).collect();
    let back = ChainMap::new(to_dag.target(), to_dag.source(), 0, back_comps)?;
    f.then(&back)
}

/// The degree-1 map s = e_j ∧ − on K(xs), with x_j·id = ∂s + s∂.
pub fn annihilation_homotopy(xs: &[Poly], j: usize) -> Result<ChainMap> {
    let ring = check_seq(xs)?;
    let n = xs.len();
    if j >= n {
        return Err(Error::Dimension(format!("index {j} out of range")));
    }
    let k = koszul_complex(xs)?;
    let ej = Exterior::basis(&ring, n, &[j]);
    let comps = (0..=n as i64)
        .map(|t| {
            let src = exterior_basis(n, t as usize);
            let tgt = exterior_basis(n, t as usize + 1);
            let mut m = Matrix::zeros(&ring, tgt.len(), src.len());
            for (c, s) in src.iter().enumerate() {
                let img = ej.wedge(&Exterior::basis(&ring, n, s));
                for (set, v) in img.terms() {
                    let r = tgt.iter().position(|b| b == set).unwrap();
                    m.set(r, c, v.clone());
                }
            }
            m
        })
        .collect();
    ChainMap::graded(&k, &k, 1, comps)
}

/// The same homotopy built on the tensor presentation: id ⊗ ⋯ ⊗ h ⊗ ⋯ ⊗ id with
/// h : K(x_j) → K(x_j), h(1) = e, tensored with the Koszul sign rule.
pub fn annihilation_homotopy_tensor(xs: &[Poly], j: usize) -> Result<ChainMap> {
    check_seq(xs)?;
    if j >= xs.len() {
        return Err(Error::Dimension(format!("index {j} out of range")));
    }
    let factor = |i: usize| -> Result<ChainMap> {
        let k = koszul_two_term(&xs[i]);
        if i == j {
            let ring = k.ring().clone();
            let one = Matrix::from_rows(&ring, vec![vec![Poly::one(&ring)]])?;
            ChainMap::graded(&k, &k, 1, vec![one, Matrix::zeros(&ring, 0, 1)])
        } else {
            Ok(ChainMap::identity(&k))
        }
    };
    let mut acc = factor(0)?;
    for i in 1..xs.len() {
        acc = tensor_maps(&acc, &factor(i)?)?;
    }
    Ok(acc)
}

/// The isomorphism K(x_{σ(1)},…,x_{σ(n)}) → K(x_1,…,x_n) induced by e_i ↦ e_{σ(i)}.
pub fn koszul_permutation_iso(xs: &[Poly], perm: &[usize]) -> Result<ChainMap> {
    let ring = check_seq(xs)?;
    let n = xs.len();
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(Error::Precondition("not a permutation".into()));
    }
    let ys: Vec<Poly> = perm.iter().map(|&i| xs[i].clone()).collect();
    let src = koszul_complex(&ys)?;
    let tgt = koszul_complex(xs)?;
    let comps = (0..=n)
        .map(|t| {
            let basis = exterior_basis(n, t);
            let mut m = Matrix::zeros(&ring, basis.len(), basis.len());
            for (c, s) in basis.iter().enumerate() {
                let mut img = Exterior::one(&ring, n);
                for &i in s {
                    img = img.wedge(&Exterior::basis(&ring, n, &[perm[i]]));
                }
                for (set, v) in img.terms() {
                    m.set(exterior_index(n, set), c, v.clone());
                }
            }
            m
        })
        .collect();
    ChainMap::new(&src, &tgt, 0, comps)
}

/// Exhaustive check of ∂(α∧β) = ∂α∧β + (-1)^{|α|} α∧∂β on basis pairs.
pub fn koszul_leibniz_check(xs: &[Poly]) -> Result<bool> {
    let ring = check_seq(xs)?;
    let n = xs.len();
    for ta in 0..=n {
        for a in exterior_basis(n, ta) {
            let ea = Exterior::basis(&ring, n, &a);
            for tb in 0..=n {
                for b in exterior_basis(n, tb) {
                    let eb = Exterior::basis(&ring, n, &b);
                    let lhs = ea.wedge(&eb).koszul_diff(xs);
                    let t1 = ea.koszul_diff(xs).wedge(&eb);
                    let t2 = ea.wedge(&eb.koszul_diff(xs));
                    let rhs = if ta % 2 == 0 { t1.add(&t2) } else { t1.add(&t2.scale(&-&Poly::one(&ring))) };
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// K(xs) as a DG algebra with the wedge product.
pub fn koszul_dg_algebra(xs: &[Poly]) -> Result<DgAlgebra> {
    let ring = check_seq(xs)?;
    let n = xs.len();
    let k = koszul_complex(xs)?;
    let mut products = BTreeMap::new();
    for i in 0..=n {
        for j in 0..=n - i {
            let bi = exterior_basis(n, i);
            let bj = exterior_basis(n, j);
            let tgt = exterior_basis(n, i + j);
            let mut table = Vec::new();
            for a in &bi {
                for b in &bj {
                    let mut v = vec![Poly::zero(&ring); tgt.len()];
                    if let Some((s, m)) = wedge_basis(a, b) {
                        let pos = tgt.iter().position(|x| *x == m).unwrap();
                        v[pos] = Poly::from_i64(&ring, s);
                    }
                    table.push(v);
                }
            }
            products.insert((i as i64, j as i64), table);
        }
    }
    DgAlgebra::new(k, 0, products)
}
