//! Plain-text renderings for `--format text`.

use dgc_core::complex::{ChainMap, Complex};
use dgc_core::moduli::{ModuliInstance, ModuliPoint, TangentReport};
use dgc_core::semifree::ExtTable;
use dgc_core::Matrix;

fn matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.row_strings().iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn complex(c: &Complex) -> String {
    let mut s = String::new();
    for i in c.degrees() {
        s.push_str(&format!("C_{i}: rank {}", c.rank(i)));
        if let Some(l) = c.labels().and_then(|l| l.get((i - c.lo()) as usize)) {
            if !l.is_empty() {
                s.push_str(&format!(" ({})", l.join(", ")));
            }
        }
        s.push('\n');
    }
    for i in c.lo() + 1..=c.hi() {
        s.push_str(&format!("d_{i} = {}\n", matrix(&c.diff(i))));
    }
    s
}

pub fn chain_map(f: &ChainMap) -> String {
    f.source().degrees().map(|i| format!("f_{i} = {}\n", matrix(&f.component(i)))).collect()
}

pub fn ext(t: &ExtTable) -> String {
    let dims: Vec<String> = t.dims().iter().map(usize::to_string).collect();
    format!("{}\ncertified through {}\n", dims.join(","), t.certified_through)
}

pub fn moduli(inst: &ModuliInstance, report: Option<&TangentReport>) -> String {
    let mut s = format!("unknowns: {}\n", inst.unknowns().join(", "));
    s.push_str(&format!(
        "d = {}, d' = {} (non-unit action coordinates: {})\n",
        inst.d(),
        inst.d_prime_full(),
        inst.d_prime_reduced()
    ));
    for c in inst.constraint_strings() {
        s.push_str(&format!("{c} = 0\n"));
    }
    if let Some(r) = report {
        s.push_str(&tangent(r));
    }
    s
}

pub fn tangent(r: &TangentReport) -> String {
    format!("tangent dim = {}\norbit tangent dim = {}\nYExt^1 dim = {}\n", r.tangent_dim, r.orbit_dim, r.yext_dim)
}

pub fn point(p: &ModuliPoint) -> String {
    p.instance.unknowns().iter().zip(&p.values).map(|(n, v)| format!("{n} = {v}\n")).collect()
}
