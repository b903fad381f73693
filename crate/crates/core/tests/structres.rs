use dgc_core::complex::{constant_chain_maps, is_chain_isomorphism};
use dgc_core::koszul::koszul_complex;
use dgc_core::structres::{alternating_family, build_buchsbaum_eisenbud, build_hilbert_burch, product_table_text};
use dgc_core::{submaximal_pfaffians, Field, Matrix, Poly, Ring, RingRef, SignFlag};

fn ring() -> RingRef {
    Ring::new(Field::Rational, &["x", "y", "z"])
}

fn p(r: &RingRef, s: &str) -> Poly {
    Poly::parse(r, s).unwrap()
}

fn v(r: &RingRef, xs: &[&str]) -> Vec<Poly> {
    xs.iter().map(|s| p(r, s)).collect()
}

#[test]
fn hilbert_burch_worked_example() {
    let r = ring();
    let a = Matrix::from_strs(&r, &[&["x", "0"], &["y", "x"], &["0", "y"]]).unwrap();
    let hb = build_hilbert_burch(&Poly::one(&r), &a).unwrap();
    assert_eq!(hb.row.row_strings()[0], vec!["y^2", "-x*y", "x^2"]);
    let alg = &hb.algebra;
    assert_eq!(alg.basis_product(1, 0, 1, 1), v(&r, &["y", "0"]));
    assert_eq!(alg.basis_product(1, 0, 1, 2), v(&r, &["-x", "y"]));
    assert_eq!(alg.basis_product(1, 1, 1, 2), v(&r, &["0", "-x"]));
    assert_eq!(alg.basis_product(1, 2, 1, 1), v(&r, &["0", "x"]));
    assert_eq!(product_table_text(alg), "e1*e2 = y*f1\ne1*e3 = -x*f1 + y*f2\ne2*e3 = -x*f2\n");
}

#[test]
fn hilbert_burch_with_multiplier() {
    let r = ring();
    let a = Matrix::from_strs(&r, &[&["x", "z"], &["y", "x"], &["z", "y"]]).unwrap();
    let hb = build_hilbert_burch(&p(&r, "x+z"), &a).unwrap();
    assert!(hb.row.mul(&a).is_zero());
}

#[test]
fn buchsbaum_eisenbud_three_by_three() {
    let r = ring();
    let a = Matrix::from_strs(&r, &[&["0", "x", "y"], &["-x", "0", "z"], &["-y", "-z", "0"]]).unwrap();
    let be = build_buchsbaum_eisenbud(&a, SignFlag::B).unwrap();
    assert_eq!(be.row.row_strings()[0], vec!["z", "-y", "x"]);
    let c = be.algebra.complex();
    assert_eq!(c.diff(3).transpose().row_strings()[0], vec!["z", "-y", "x"]);
    assert_eq!(
        product_table_text(&be.algebra),
        "e1*e2 = f3\ne1*e3 = -f2\ne1*f1 = g\ne2*e3 = f1\ne2*f2 = g\ne3*f3 = g\n"
    );
    // isomorphic to the Koszul complex on the entries of B
    let k = koszul_complex(&v(&r, &["z", "-y", "x"])).unwrap();
    let maps = constant_chain_maps(c, &k).unwrap();
    assert!(maps.iter().any(is_chain_isomorphism));
}

#[test]
fn sign_flag_a_also_gives_a_dg_algebra() {
    let r = ring();
    let a = Matrix::from_strs(&r, &[&["0", "x", "y"], &["-x", "0", "z"], &["-y", "-z", "0"]]).unwrap();
    let be = build_buchsbaum_eisenbud(&a, SignFlag::A).unwrap();
    assert_eq!(be.row.row_strings()[0], vec!["-z", "y", "-x"]);
}

#[test]
fn family_m3_and_m5() {
    let r = ring();
    let m3 = alternating_family(3).unwrap();
    let want = Matrix::from_strs(&r, &[&["0", "x", "z"], &["-x", "0", "y"], &["-z", "-y", "0"]]).unwrap();
    assert_eq!(m3, want);
    let m5 = alternating_family(5).unwrap();
    let want5 = Matrix::from_strs(
        &r,
        &[
            &["0", "x", "0", "0", "z"],
            &["-x", "0", "y", "z", "0"],
            &["0", "-y", "0", "x", "0"],
            &["0", "-z", "-x", "0", "y"],
            &["-z", "0", "0", "-y", "0"],
        ],
    )
    .unwrap();
    assert_eq!(m5, want5);
    let pf: Vec<String> = submaximal_pfaffians(&m5).unwrap().iter().map(|q| q.to_string()).collect();
    assert_eq!(pf, vec!["y^2", "x*z", "x*y + z^2", "y*z", "x^2"]);
    let be = build_buchsbaum_eisenbud(&m5, SignFlag::B).unwrap();
    assert!(be.algebra.complex().diff(1).mul(&be.algebra.complex().diff(2)).is_zero());
    assert!(alternating_family(7).unwrap().is_alternating());
    assert!(alternating_family(4).is_err());
}
