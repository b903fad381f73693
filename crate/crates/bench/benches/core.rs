use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dgc_core::complex::homology;
use dgc_core::dg::{exterior_one, residue_module, square_zero_algebra};
use dgc_core::koszul::{koszul_complex, koszul_dg_algebra};
use dgc_core::moduli::{yext_dimension, ModuliInstance, ModuliPoint};
use dgc_core::semifree::ext;
use dgc_core::structres::{alternating_family, build_buchsbaum_eisenbud};
use dgc_core::{Field, Matrix, Poly, Ring, SignFlag};

fn koszul(c: &mut Criterion) {
    let r = Ring::new(Field::Rational, &["a", "b", "c", "d", "e"]);
    let xs: Vec<Poly> = (0..5).map(|i| Poly::var(&r, i)).collect();
    c.bench_function("koszul complex, 5 variables", |b| b.iter(|| koszul_complex(black_box(&xs)).unwrap()));
    let three = &xs[..3];
    c.bench_function("koszul dg algebra with verification, 3 variables", |b| {
        b.iter(|| koszul_dg_algebra(black_box(three)).unwrap())
    });
    // K(0,...,0) over a field: every differential vanishes, homology is the whole complex
    let f = Ring::field_only(Field::prime(101).unwrap());
    let zeros = vec![Poly::zero(&f); 6];
    let k = koszul_complex(&zeros).unwrap();
    c.bench_function("homology of K(0^6) over F_101", |b| b.iter(|| homology(black_box(&k)).unwrap()));
}

fn resolutions(c: &mut Criterion) {
    let u = exterior_one(Field::Rational);
    let f = residue_module(&u).unwrap();
    c.bench_function("Ext_U(F,F) through degree 7", |b| b.iter(|| ext(black_box(&f), &f, 8).unwrap()));
    let a = square_zero_algebra(Field::prime(3).unwrap(), 2);
    let fa = residue_module(&a).unwrap();
    c.bench_function("Ext over F_3[X,Y]/(X,Y)^2 through degree 3", |b| b.iter(|| ext(black_box(&fa), &fa, 4).unwrap()));
}

fn structured(c: &mut Criterion) {
    let m5: Matrix = alternating_family(5).unwrap();
    c.bench_function("Buchsbaum-Eisenbud algebra from M5", |b| {
        b.iter(|| build_buchsbaum_eisenbud(black_box(&m5), SignFlag::B).unwrap())
    });
}

fn moduli(c: &mut Criterion) {
    let field = Field::prime(101).unwrap();
    let inst = ModuliInstance::new(&exterior_one(field), &[1, 2, 1]).unwrap();
    let mut vals = vec![field.zero(); inst.nunknowns()];
    for (name, v) in [("a1_1", 1), ("a2_2", 1), ("b0_2", 1), ("b1_1", -1)] {
        vals[inst.unknown_index(name).unwrap()] = field.from_i64(v);
    }
    let p = ModuliPoint::new(&inst, vals).unwrap();
    c.bench_function("tangent and orbit dimensions on W(1,2,1)", |b| b.iter(|| yext_dimension(black_box(&p))));
}

criterion_group!(benches, koszul, resolutions, structured, moduli);
criterion_main!(benches);
