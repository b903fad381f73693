//! Seed-driven invariant checks shared by the property suite and the acceptance run.
//! Each check draws its inputs from a ChaCha stream and returns Err with a short
//! description on the first mismatch.

use std::collections::BTreeMap;

use dgc_core::complex::{
    hom_complex, homology, induced_on_homology, is_quasi_isomorphism, null_homotopy_holds, soft_truncate,
    solve_null_homotopy, tensor_complex, ChainMap, Complex,
};
use dgc_core::dg::{
    exterior_one, residue_module, square_zero_algebra, suspend_module, truncated_polynomial_algebra, DgAlgebra,
    DgModule,
};
use dgc_core::koszul::{exterior_basis, koszul_dg_algebra, Exterior};
use dgc_core::moduli::{act_on, compose, GradedAutomorphism, ModuliInstance, ModuliPoint};
use dgc_core::semifree::{ext_with, GeneratorOrder};
use dgc_core::{Field, FieldMatrix, Matrix, Poly, Ring, RingRef, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

pub fn f101() -> Field {
    Field::prime(101).unwrap()
}

fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(0..field.characteristic() as i64))
}

fn random_nonzero(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    field.from_i64(rng.gen_range(1..field.characteristic() as i64))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: Field, rows: usize, cols: usize) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_scalar(rng, field));
        }
    }
    m
}

pub fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> FieldMatrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random complex together with the homology it was built to have.
pub struct Sample {
    pub complex: Complex,
    pub homology: BTreeMap<i64, usize>,
}

/// Direct sum of copies of F in single degrees and of exact pieces F → F, written
/// in a random basis. Ranks stay at most 3 and at most four degrees are used.
pub fn random_complex(rng: &mut ChaCha8Rng, field: Field, exact: bool) -> Sample {
    let ring = Ring::field_only(field);
    let lo: i64 = rng.gen_range(-2..=2);
    let len = rng.gen_range(1..=4usize);
    let (h, c) = loop {
        let h: Vec<usize> = (0..len).map(|_| if exact { 0 } else { rng.gen_range(0..=2) }).collect();
        // c[k] counts pieces from degree lo+k to lo+k-1; c[0] = 0
        let c: Vec<usize> = (0..len).map(|k| if k == 0 { 0 } else { rng.gen_range(0..=2) }).collect();
        let fits = (0..len).all(|k| h[k] + c[k] + c.get(k + 1).copied().unwrap_or(0) <= 3);
        if fits {
            break (h, c);
        }
    };
    let ranks: Vec<usize> = (0..len).map(|k| h[k] + c[k] + c.get(k + 1).copied().unwrap_or(0)).collect();
    let change: Vec<FieldMatrix> = ranks.iter().map(|&r| random_invertible(rng, field, r)).collect();
    let diffs = (1..len)
        .map(|k| {
            let mut d = FieldMatrix::zeros(field, ranks[k - 1], ranks[k]);
            for t in 0..c[k] {
                d.set(h[k - 1] + c[k - 1] + t, h[k] + t, field.one());
            }
            let d = change[k - 1].mul(&d).mul(&change[k].inverse().unwrap());
            Matrix::from_field(&ring, &d)
        })
        .collect();
    let complex = Complex::new(&ring, lo, ranks, diffs).unwrap();
    let homology = (0..len).map(|k| (lo + k as i64, h[k])).collect();
    Sample { complex, homology }
}

fn h_at(s: &Sample, i: i64) -> usize {
    s.homology.get(&i).copied().unwrap_or(0)
}

fn squares_to_zero(c: &Complex) -> bool {
    (c.lo() + 2..=c.hi()).all(|n| c.diff(n - 1).mul(&c.diff(n)).is_zero())
}

/// Hom and tensor differentials square to zero, and their homology is the one
/// predicted by the Künneth formula over a field.
pub fn hom_tensor_complexes(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_complex(&mut rng, f5(), false);
    let y = random_complex(&mut rng, f5(), false);
    for s in [&x, &y] {
        let h = homology(&s.complex).map_err(|e| e.to_string())?;
        ensure(s.complex.degrees().all(|i| h.dim(i) == h_at(s, i)), || "sample homology".into())?;
    }
    let hom = hom_complex(&x.complex, &y.complex).map_err(|e| e.to_string())?;
    let ten = tensor_complex(&x.complex, &y.complex).map_err(|e| e.to_string())?;
    ensure(squares_to_zero(&hom), || "Hom differential does not square to zero".into())?;
    ensure(squares_to_zero(&ten), || "tensor differential does not square to zero".into())?;
    let hh = homology(&hom).map_err(|e| e.to_string())?;
    let ht = homology(&ten).map_err(|e| e.to_string())?;
    for n in -10..=10 {
        let want_t: usize = x.complex.degrees().map(|p| h_at(&x, p) * h_at(&y, n - p)).sum();
        let want_h: usize = x.complex.degrees().map(|p| h_at(&x, p) * h_at(&y, p + n)).sum();
        ensure(ht.dim(n) == want_t, || format!("H_{n}(X⊗Y) = {} expected {want_t}", ht.dim(n)))?;
        ensure(hh.dim(n) == want_h, || format!("H_{n}(Hom) = {} expected {want_h}", hh.dim(n)))?;
    }
    Ok(())
}

/// X ⊗ E is acyclic whenever E is.
pub fn tensor_with_exact_factor(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_complex(&mut rng, f5(), false);
    let e = random_complex(&mut rng, f5(), true);
    for t in [tensor_complex(&x.complex, &e.complex), tensor_complex(&e.complex, &x.complex)] {
        let t = t.map_err(|e| e.to_string())?;
        ensure(homology(&t).map_err(|e| e.to_string())?.is_acyclic(), || "X⊗E has homology".into())?;
    }
    Ok(())
}

/// τ_{≤n} M → M is a quasi-isomorphism exactly when n ≥ sup H(M), and H(τ_{≤n} M)
/// agrees with H(M) up to degree n.
pub fn truncation(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_complex(&mut rng, f5(), false);
    let (lo, hi) = (m.complex.lo(), m.complex.hi());
    let n = rng.gen_range(lo - 1..=hi + 1);
    let sup = m.homology.iter().filter(|(_, &d)| d > 0).map(|(&i, _)| i).max();
    let t = soft_truncate(&m.complex, n).map_err(|e| e.to_string())?;
    let qi = is_quasi_isomorphism(&t.map).map_err(|e| e.to_string())?;
    let want = sup.is_none_or(|s| n >= s);
    ensure(qi == want, || format!("n = {n}, sup = {sup:?}: quasi-iso {qi}"))?;
    let h = homology(&t.complex).map_err(|e| e.to_string())?;
    for i in lo - 1..=hi + 1 {
        let want = if i <= n { h_at(&m, i) } else { 0 };
        ensure(h.dim(i) == want, || format!("H_{i}(τ≤{n}) = {} expected {want}", h.dim(i)))?;
    }
    Ok(())
}

/// f = ∂s + s∂ is a chain map inducing zero on homology.
pub fn null_homotopic_maps(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = f5();
    let ring = Ring::field_only(field);
    let x = random_complex(&mut rng, field, false).complex;
    let y = random_complex(&mut rng, field, false).complex;
    let s_comps = x
        .degrees()
        .map(|i| Matrix::from_field(&ring, &random_matrix(&mut rng, field, y.rank(i + 1), x.rank(i))))
        .collect();
    let s = ChainMap::graded(&x, &y, 1, s_comps).map_err(|e| e.to_string())?;
    let f_comps =
        x.degrees().map(|i| y.diff(i + 1).mul(&s.component(i)).add(&s.component(i - 1).mul(&x.diff(i)))).collect();
    let f = ChainMap::new(&x, &y, 0, f_comps).map_err(|e| format!("∂s + s∂ is not a chain map: {e}"))?;
    ensure(null_homotopy_holds(&f, &s), || "homotopy identity fails".into())?;
    let induced = induced_on_homology(&f).map_err(|e| e.to_string())?;
    ensure(induced.values().all(FieldMatrix::is_zero), || "nonzero on homology".into())?;
    let found = solve_null_homotopy(&f).map_err(|e| e.to_string())?;
    ensure(found.is_some_and(|t| null_homotopy_holds(&f, &t)), || "solver found no homotopy".into())
}

pub fn moduli_instance(field: Field, dims: &[usize]) -> ModuliInstance {
    ModuliInstance::new(&exterior_one(field), dims).unwrap()
}

fn random_automorphism(rng: &mut ChaCha8Rng, inst: &ModuliInstance) -> GradedAutomorphism {
    let field = inst.ring.field;
    inst.dims.iter().enumerate().map(|(j, &d)| (j as i64, random_invertible(rng, field, d))).collect()
}

/// A point of Mod(W) drawn by rejection from sparse coordinate vectors; for
/// W‴ also from the orbit of a known nondegenerate point.
pub fn random_point(rng: &mut ChaCha8Rng, inst: &ModuliInstance) -> ModuliPoint {
    let field = inst.ring.field;
    if inst.dims == [1, 2, 1] && rng.gen_bool(0.5) {
        let mut base = ModuliPoint::zero(inst);
        for (name, v) in [("a1_1", 1), ("a2_2", 1), ("b0_2", 1), ("b1_1", -1)] {
            base.values[inst.unknown_index(name).unwrap()] = field.from_i64(v);
        }
        let t = random_nonzero(rng, field);
        for (v, name) in base.values.iter_mut().zip(inst.unknowns()) {
            if name.starts_with('b') {
                *v = &*v * &t;
            }
        }
        return act_on(&base, &random_automorphism(rng, inst)).unwrap();
    }
    loop {
        let vals = (0..inst.nunknowns())
            .map(|_| if rng.gen_bool(0.6) { field.zero() } else { random_nonzero(rng, field) })
            .collect();
        let p = ModuliPoint::unchecked(inst, vals).unwrap();
        if p.is_valid() {
            return p;
        }
    }
}

/// (p·α)·β = p·(βα), the identity acts trivially, and α⁻¹ undoes α.
pub fn group_action(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: &[usize] = [&[1usize, 1][..], &[1, 1, 1], &[1, 2, 1]][rng.gen_range(0..3)];
    let inst = moduli_instance(f101(), dims);
    let p = random_point(&mut rng, &inst);
    let a = random_automorphism(&mut rng, &inst);
    let b = random_automorphism(&mut rng, &inst);
    let act = |q: &ModuliPoint, g: &GradedAutomorphism| act_on(q, g).map_err(|e| e.to_string());
    let pa = act(&p, &a)?;
    ensure(pa.is_valid(), || format!("{dims:?}: p·α left the variety"))?;
    let lhs = act(&pa, &b)?;
    let rhs = act(&p, &compose(&b, &a))?;
    ensure(lhs.values == rhs.values, || format!("{dims:?}: composition law fails"))?;
    let id: GradedAutomorphism =
        inst.dims.iter().enumerate().map(|(j, &d)| (j as i64, FieldMatrix::identity(inst.ring.field, d))).collect();
    ensure(act(&p, &id)?.values == p.values, || format!("{dims:?}: identity moves p"))?;
    let inv: GradedAutomorphism = a.iter().map(|(j, m)| (*j, m.inverse().unwrap())).collect();
    ensure(act(&pa, &inv)?.values == p.values, || format!("{dims:?}: α⁻¹ does not undo α"))
}

/// The constraint polynomials vanish at a coordinate vector exactly when the
/// corresponding data satisfy the DG module axioms.
pub fn constraints_match_axioms(inst: &ModuliInstance, values: Vec<Scalar>) -> Result<bool, String> {
    let p = ModuliPoint::unchecked(inst, values).map_err(|e| e.to_string())?;
    let by_constraints = p.violated().is_empty();
    let by_axioms = p.module_axioms_hold();
    ensure(by_constraints == by_axioms, || {
        format!("{:?} at {:?}: constraints {by_constraints}, axioms {by_axioms}", inst.dims, p.values)
    })?;
    Ok(by_axioms)
}

/// Every coordinate vector over a prime field; returns (vectors checked, valid structures).
pub fn constraints_match_axioms_exhaustive(field: Field, dims: &[usize]) -> Result<(usize, usize), String> {
    let inst = moduli_instance(field, dims);
    let q = field.characteristic() as usize;
    let n = inst.nunknowns();
    let total = q.pow(n as u32);
    let mut valid = 0;
    for code in 0..total {
        let mut c = code;
        let vals = (0..n)
            .map(|_| {
                let v = field.from_i64((c % q) as i64);
                c /= q;
                v
            })
            .collect();
        valid += constraints_match_axioms(&inst, vals)? as usize;
    }
    Ok((total, valid))
}

/// A random coordinate vector of W‴ over F_3.
pub fn constraints_match_axioms_random(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = Field::prime(3).unwrap();
    let inst = moduli_instance(field, &[1, 2, 1]);
    let vals = (0..inst.nunknowns()).map(|_| random_scalar(&mut rng, field)).collect();
    constraints_match_axioms(&inst, vals).map(|_| ())
}

fn random_exterior(rng: &mut ChaCha8Rng, r: &RingRef, n: usize, t: usize) -> Exterior {
    let mut e = Exterior::zero(r, n);
    for s in exterior_basis(n, t) {
        e.add_term(s, Poly::from_i64(r, rng.gen_range(0..7)));
    }
    e
}

/// Graded commutativity and associativity of the wedge product on four generators.
pub fn wedge_laws(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = Ring::field_only(Field::prime(7).unwrap());
    let n = 4;
    let (ta, tb, tc) = (rng.gen_range(0..=n), rng.gen_range(0..=n), rng.gen_range(0..=n));
    let a = random_exterior(&mut rng, &r, n, ta);
    let b = random_exterior(&mut rng, &r, n, tb);
    let c = random_exterior(&mut rng, &r, n, tc);
    let sign = if (ta * tb) % 2 == 0 { 1 } else { -1 };
    ensure(a.wedge(&b) == b.wedge(&a).scale(&Poly::from_i64(&r, sign)), || format!("ab vs ba in degrees {ta}, {tb}"))?;
    ensure(a.wedge(&b).wedge(&c) == a.wedge(&b.wedge(&c)), || "wedge is not associative".into())
}

/// Ext computed from resolutions built in either generator order agrees.
pub fn ext_order_independence(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = [Field::Rational, Field::prime(3).unwrap(), f5()][rng.gen_range(0..3)];
    let algebra: std::sync::Arc<DgAlgebra> = match rng.gen_range(0..4) {
        0 => exterior_one(field),
        1 => truncated_polynomial_algebra(field, 2),
        2 => truncated_polynomial_algebra(field, 3),
        _ => square_zero_algebra(field, 2),
    };
    let residue = residue_module(&algebra).map_err(|e| e.to_string())?;
    let m = if rng.gen_bool(0.5) { residue.clone() } else { DgModule::regular(&algebra) };
    let shift = rng.gen_range(0..=1);
    let m = suspend_module(&m, shift).map_err(|e| e.to_string())?;
    let cap = 4 + shift;
    let a = ext_with(&m, &residue, cap, GeneratorOrder::Canonical).map_err(|e| e.to_string())?;
    let b = ext_with(&m, &residue, cap, GeneratorOrder::Reversed).map_err(|e| e.to_string())?;
    ensure(a.dims() == b.dims() && a.certified_through == b.certified_through, || {
        format!("{field}: {:?} vs {:?}", a.dims(), b.dims())
    })
}

/// Adding a nonzero constant to any single structure constant of K(x, y, z) over
/// F_5 breaks one of the DG algebra axioms.
pub fn perturbed_koszul_is_rejected(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = f5();
    let r = Ring::new(field, &["x", "y", "z"]);
    let xs: Vec<Poly> = (0..3).map(|i| Poly::var(&r, i)).collect();
    let k = koszul_dg_algebra(&xs).unwrap();
    let data = k.data();
    let c = Poly::from_i64(&r, rng.gen_range(1..5));
    let cx = &data.complex;
    let mut sites: Vec<Option<(i64, usize, usize)>> = Vec::new();
    for i in cx.lo() + 1..=cx.hi() {
        let d = cx.diff(i);
        for row in 0..d.rows() {
            for col in 0..d.cols() {
                sites.push(Some((i, row, col)));
            }
        }
    }
    let product_sites: Vec<((i64, i64), usize, usize)> = data
        .products
        .iter()
        .flat_map(|(key, table)| {
            table.iter().enumerate().flat_map(move |(v, vec)| (0..vec.len()).map(move |k| (*key, v, k)))
        })
        .collect();
    sites.extend(std::iter::repeat_n(None, product_sites.len()));
    let pick = rng.gen_range(0..sites.len());
    let (label, result) = match sites[pick] {
        Some((i, row, col)) => {
            let mut d = cx.diff(i);
            d.set(row, col, d.get(row, col) + &c);
            let diffs = (cx.lo() + 1..=cx.hi()).map(|j| if j == i { d.clone() } else { cx.diff(j) }).collect();
            let res = Complex::new(&r, cx.lo(), cx.ranks().to_vec(), diffs)
                .and_then(|cc| DgAlgebra::new(cc, data.unit, data.products.clone()));
            (format!("d{i}[{row}][{col}]"), res)
        }
        None => {
            let (key, v, idx) = product_sites[pick - (sites.len() - product_sites.len())];
            let mut products = data.products.clone();
            let entry = &mut products.get_mut(&key).unwrap()[v][idx];
            *entry = &*entry + &c;
            (format!("m{key:?}[{v}][{idx}]"), DgAlgebra::new(cx.clone(), data.unit, products))
        }
    };
    ensure(result.is_err(), || format!("perturbation at {label} by {c} was accepted"))
}
