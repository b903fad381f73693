use super::hom::HomLayout;
use super::{hom_complex, ChainMap, Complex};
use crate::arith::{Matrix, Poly, Scalar};
use crate::error::{Error, Result};

fn reindex(x: &Complex, n: i64, signed: bool) -> Complex {
    let neg = signed && n % 2 != 0;
    let diffs = (x.lo() + 1..=x.hi()).map(|i| if neg { x.diff(i).neg() } else { x.diff(i) }).collect();
    let c = Complex::new(x.ring(), x.lo() + n, x.ranks().to_vec(), diffs).expect("reindexing keeps d∘d = 0");
    match x.labels() {
        Some(l) => c.with_labels(l.clone()).unwrap(),
        None => c,
    }
}

/// Σⁿ X: (ΣⁿX)_i = X_{i-n} with differential (-1)ⁿ ∂.
pub fn suspend(x: &Complex, n: i64) -> Complex {
    reindex(x, n, true)
}

/// Degree shift without the sign on the differential. Distinct from `suspend` for odd n.
pub fn shift_unsigned(x: &Complex, n: i64) -> Complex {
    reindex(x, n, false)
}

/// X^†: (X^†)_n = (X_{-n})^* with differential the plain transpose of ∂_{1-n}.
pub fn unsigned_dual(x: &Complex) -> Complex {
    let lo = -x.hi();
    let hi = -x.lo();
    let ranks = (lo..=hi).map(|n| x.rank(-n)).collect();
    let diffs = (lo + 1..=hi).map(|n| x.diff(1 - n).transpose()).collect();
    Complex::new(x.ring(), lo, ranks, diffs).expect("transpose of a complex is a complex")
}

/// The diagonal ±1 isomorphism Hom(X,R) → X^†, normalized to +1 in the top degree.
pub fn dual_sign_isomorphism(x: &Complex) -> Result<ChainMap> {
    let ring = x.ring();
    let r = Complex::concentrated(ring, 0, 1);
    let hom = hom_complex(x, &r)?;
    let dag = unsigned_dual(x);
    // c_{n-1} = (-1)^{n+1} c_n going down from the top degree
    let mut signs = std::collections::BTreeMap::new();
    let mut c: i64 = 1;
    for n in (hom.lo()..=hom.hi()).rev() {
        signs.insert(n, c);
        if (n + 1) % 2 != 0 {
            c = -c;
        }
    }
    let comps = hom.degrees().map(|n| Matrix::identity(ring, hom.rank(n)).scale_i64(signs[&n])).collect();
    ChainMap::new(&hom, &dag, 0, comps)
}

/// r·id_X.
pub fn homothety(x: &Complex, r: &Poly) -> ChainMap {
    let comps = x.degrees().map(|i| Matrix::scalar_identity(x.ring(), x.rank(i), r)).collect();
    ChainMap::new(x, x, 0, comps).expect("homothety commutes with ∂")
}

/// A degree-0 chain map whose components are invertible over the ring
/// (determinant a nonzero constant).
pub fn is_chain_isomorphism(f: &ChainMap) -> bool {
    if f.degree() != 0 || !f.is_chain_map() {
        return false;
    }
    let lo = f.source().lo().min(f.target().lo());
    let hi = f.source().hi().max(f.target().hi());
    (lo..=hi).all(|i| {
        let m = f.component(i);
        if !m.is_square() {
            return false;
        }
        if m.rows() == 0 {
            return true;
        }
        match m.det().ok().and_then(|d| d.constant_value()) {
            Some(c) => !c.is_zero(),
            None => false,
        }
    })
}

/// Whether f = ∂s - (-1)^{|s|} s∂ with |s| = |f| + 1; for degree-0 f this reads f = ∂s + s∂.
pub fn null_homotopy_holds(f: &ChainMap, s: &ChainMap) -> bool {
    if s.degree() != f.degree() + 1 {
        return false;
    }
    let lay = HomLayout::new(f.source(), f.target());
    let ds = lay.apply_diff(s.degree(), &|p| s.component(p));
    ds == lay.from_map(f)
}

/// Solves f = ∂s + s∂ (with the Hom-complex signs for general degree). Field coefficients.
pub fn solve_null_homotopy(f: &ChainMap) -> Result<Option<ChainMap>> {
    if !f.source().is_constant() || !f.target().is_constant() {
        return Err(Error::NonConstant("null-homotopy solve needs field coefficients".into()));
    }
    f.check_commutes()?;
    let lay = HomLayout::new(f.source(), f.target());
    let n = f.degree();
    let d = lay.diff_matrix(n + 1).to_field()?;
    let b: Vec<Scalar> = lay
        .from_map(f)
        .iter()
        .map(|p| p.constant_value().ok_or_else(|| Error::NonConstant("map entry".into())))
        .collect::<Result<_>>()?;
    if b.is_empty() {
        return Ok(Some(ChainMap::zero(f.source(), f.target(), n + 1)));
    }
    let sol = if d.cols() == 0 {
        if b.iter().all(Scalar::is_zero) {
            Some(vec![])
        } else {
            None
        }
    } else {
        d.solve(&b)
    };
    Ok(sol.map(|x| {
        let ring = f.source().ring();
        let v: Vec<Poly> = x.into_iter().map(|c| Poly::constant(ring, c)).collect();
        lay.to_map(n + 1, &v)
    }))
}

/// A basis of the space of degree-0 chain maps X → Y with constant entries, found by
/// solving the commuting-square equations monomial by monomial over the coefficient field.
pub fn constant_chain_maps(x: &Complex, y: &Complex) -> Result<Vec<ChainMap>> {
    use std::collections::BTreeMap;
    let ring = x.ring();
    let field = ring.field;
    let degs: Vec<i64> = x.degrees().collect();
    let mut slots = Vec::new();
    for &i in &degs {
        for r in 0..y.rank(i) {
            for c in 0..x.rank(i) {
                slots.push((i, r, c));
            }
        }
    }
    let mut eqs: BTreeMap<(i64, usize, usize, Vec<u32>), Vec<(usize, Scalar)>> = BTreeMap::new();
    for (k, &(i, r, c)) in slots.iter().enumerate() {
        let mut comps = BTreeMap::new();
        let mut unit = Matrix::zeros(ring, y.rank(i), x.rank(i));
        unit.set(r, c, Poly::one(ring));
        comps.insert(i, unit);
        let f = ChainMap::graded_from_map(x, y, 0, &comps)?;
        for j in x.lo()..=x.hi() + 1 {
            let defect = f.commutator(j);
            for a in 0..defect.rows() {
                for b in 0..defect.cols() {
                    for (m, v) in defect.get(a, b).terms() {
                        eqs.entry((j, a, b, m.0.clone())).or_default().push((k, v.clone()));
                    }
                }
            }
        }
    }
    let mut sys = crate::arith::FieldMatrix::zeros(field, eqs.len(), slots.len());
    for (row, (_, entries)) in eqs.iter().enumerate() {
        for (k, v) in entries {
            let cur = sys.get(row, *k) + v;
            sys.set(row, *k, cur);
        }
    }
    let kernel = if slots.is_empty() { vec![] } else { sys.kernel() };
    kernel
        .into_iter()
        .map(|v| {
            let mut comps: BTreeMap<i64, Matrix> = BTreeMap::new();
            for (k, &(i, r, c)) in slots.iter().enumerate() {
                let m = comps.entry(i).or_insert_with(|| Matrix::zeros(ring, y.rank(i), x.rank(i)));
                m.set(r, c, Poly::constant(ring, v[k].clone()));
            }
            ChainMap::graded_from_map(x, y, 0, &comps)
        })
        .collect()
}

/// Cone(f) for a degree-0 chain map f: X → Y: Cone_n = X_{n-1} ⊕ Y_n with
/// ∂(x, y) = (-∂x, f(x) + ∂y).
pub fn mapping_cone(f: &ChainMap) -> Result<Complex> {
    if f.degree() != 0 {
        return Err(Error::Precondition("mapping cone needs a degree-0 map".into()));
    }
    let (x, y) = (f.source(), f.target());
    let ring = x.ring();
    let lo = (x.lo() + 1).min(y.lo());
    let hi = (x.hi() + 1).max(y.hi());
    let ranks = (lo..=hi).map(|n| x.rank(n - 1) + y.rank(n)).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let mut m = Matrix::zeros(ring, x.rank(n - 2) + y.rank(n - 1), x.rank(n - 1) + y.rank(n));
            m.paste(0, 0, &x.diff(n - 1).neg());
            m.paste(x.rank(n - 2), 0, &f.component(n - 1));
            m.paste(x.rank(n - 2), x.rank(n - 1), &y.diff(n));
            m
        })
        .collect();
    Complex::new(ring, lo, ranks, diffs)
}
