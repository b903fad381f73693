//! Shared test helpers. The worked tables below are typed in by hand; the library
//! never sees them except through the assertions.
#![allow(dead_code)]

pub mod props;

use dgc_core::complex::{suspend, unsigned_dual, ChainMap, Complex};
use dgc_core::dg::{DgAlgebra, DgAlgebraData};
use dgc_core::koszul::{koszul_complex, wedge_basis};
use dgc_core::{Field, Matrix, Poly, Ring, RingRef};

pub fn qxyz() -> RingRef {
    Ring::new(Field::Rational, &["x", "y", "z"])
}

pub fn p(r: &RingRef, s: &str) -> Poly {
    Poly::parse(r, s).unwrap()
}

pub fn polys(r: &RingRef, xs: &[&str]) -> Vec<Poly> {
    xs.iter().map(|s| p(r, s)).collect()
}

pub fn mat(r: &RingRef, rows: &[&[&str]]) -> Matrix {
    Matrix::from_strs(r, rows).unwrap()
}

/// Basis labels of the exterior algebra on n generators, in table order.
pub fn table_labels(n: usize) -> Vec<&'static str> {
    match n {
        1 => vec!["1", "e1"],
        2 => vec!["1", "e1", "e2", "e1^e2"],
        3 => vec!["1", "e1", "e2", "e3", "e1^e2", "e1^e3", "e2^e3", "e1^e2^e3"],
        _ => unreachable!(),
    }
}

/// Multiplication tables: row label times column label.
pub fn wedge_table(n: usize) -> Vec<Vec<&'static str>> {
    let t: &[&[&str]] = match n {
        1 => &[&["1", "e1"], &["e1", "0"]],
        2 => &[
            &["1", "e1", "e2", "e1^e2"],
            &["e1", "0", "e1^e2", "0"],
            &["e2", "-e1^e2", "0", "0"],
            &["e1^e2", "0", "0", "0"],
        ],
        3 => &[
            &["1", "e1", "e2", "e3", "e1^e2", "e1^e3", "e2^e3", "e1^e2^e3"],
            &["e1", "0", "e1^e2", "e1^e3", "0", "0", "e1^e2^e3", "0"],
            &["e2", "-e1^e2", "0", "e2^e3", "0", "-e1^e2^e3", "0", "0"],
            &["e3", "-e1^e3", "-e2^e3", "0", "e1^e2^e3", "0", "0", "0"],
            &["e1^e2", "0", "0", "e1^e2^e3", "0", "0", "0", "0"],
            &["e1^e3", "0", "-e1^e2^e3", "0", "0", "0", "0", "0"],
            &["e2^e3", "e1^e2^e3", "0", "0", "0", "0", "0", "0"],
            &["e1^e2^e3", "0", "0", "0", "0", "0", "0", "0"],
        ],
        _ => unreachable!(),
    };
    t.iter().map(|r| r.to_vec()).collect()
}

pub fn parse_label(s: &str) -> Vec<usize> {
    if s == "1" {
        return vec![];
    }
    s.split('^').map(|e| e[1..].parse::<usize>().unwrap() - 1).collect()
}

pub fn render_label(set: &[usize]) -> String {
    if set.is_empty() {
        "1".into()
    } else {
        set.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
    }
}

/// The computed table in the same textual form as `wedge_table`.
pub fn computed_wedge_table(n: usize) -> Vec<Vec<String>> {
    let labels = table_labels(n);
    labels
        .iter()
        .map(|a| {
            labels
                .iter()
                .map(|b| match wedge_basis(&parse_label(a), &parse_label(b)) {
                    None => "0".to_string(),
                    Some((1, s)) => render_label(&s),
                    Some((_, s)) => format!("-{}", render_label(&s)),
                })
                .collect()
        })
        .collect()
}

/// The printed isomorphism from the suspended Koszul complex (degrees -n..0) to its
/// unsigned dual, components listed from degree -n up to 0. Not checked for commuting.
pub fn printed_duality(n: usize) -> ChainMap {
    let r = qxyz();
    let xs = &polys(&r, &["x", "y", "z"])[..n];
    let k = koszul_complex(xs).unwrap();
    let src: Complex = suspend(&k, -(n as i64));
    let tgt = unsigned_dual(&k);
    let anti = [["0", "0", "-1"], ["0", "1", "0"], ["-1", "0", "0"]];
    let anti: Vec<&[&str]> = anti.iter().map(|r| &r[..]).collect();
    let comps = match n {
        1 => vec![mat(&r, &[&["1"]]), mat(&r, &[&["-1"]])],
        2 => vec![mat(&r, &[&["1"]]), mat(&r, &[&["0", "1"], &["-1", "0"]]), mat(&r, &[&["1"]])],
        3 => vec![mat(&r, &[&["1"]]), mat(&r, &anti), mat(&r, &anti), mat(&r, &[&["1"]])],
        _ => unreachable!(),
    };
    ChainMap::graded(&src, &tgt, 0, comps).unwrap()
}

/// The printed product table for the 3×3 Buchsbaum–Eisenbud example, as coordinate
/// vectors in the bases (f1, f2, f3) and g.
pub fn printed_be_products() -> Vec<((usize, usize), [i64; 3])> {
    vec![((0, 1), [1, -1, 1]), ((0, 2), [-1, -1, -1]), ((1, 2), [1, -1, 1])]
}

/// Every way of negating a single nonzero structure constant (differential entry or
/// product coordinate) of the given algebra data.
pub fn single_sign_flips(data: &DgAlgebraData) -> Vec<(String, Result<DgAlgebra, dgc_core::Error>)> {
    let mut out = Vec::new();
    let c = &data.complex;
    let ring = c.ring().clone();
    for i in c.lo() + 1..=c.hi() {
        let d = c.diff(i);
        for r in 0..d.rows() {
            for k in 0..d.cols() {
                if d.get(r, k).is_zero() {
                    continue;
                }
                let mut d2 = d.clone();
                d2.set(r, k, -d.get(r, k));
                let diffs = (c.lo() + 1..=c.hi()).map(|j| if j == i { d2.clone() } else { c.diff(j) }).collect();
                let res = Complex::new(&ring, c.lo(), c.ranks().to_vec(), diffs)
                    .and_then(|cc| DgAlgebra::new(cc, data.unit, data.products.clone()));
                out.push((format!("d{i}[{r}][{k}]"), res));
            }
        }
    }
    for (key, table) in &data.products {
        for (v, vec) in table.iter().enumerate() {
            for (k, x) in vec.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut products = data.products.clone();
                products.get_mut(key).unwrap()[v][k] = -x;
                out.push((format!("m{key:?}[{v}][{k}]"), DgAlgebra::new(c.clone(), data.unit, products)));
            }
        }
    }
    out
}
