//! Versioned JSON encodings. Every document carries a "schema" tag; polynomials are
//! strings in the ASCII grammar, matrices are row-major arrays of strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{Field, FieldMatrix, Matrix, Poly, Ring, RingRef, Scalar};
use crate::complex::{ChainMap, Complex};
use crate::dg::{DgAlgebra, DgAlgebraData, DgModuleData, ProductTable};
use crate::error::{Error, Result};
use crate::moduli::{GradedAutomorphism, ModuliInstance, ModuliPoint, TangentReport};
use crate::semifree::ExtTable;

pub const COMPLEX: &str = "complex.v1";
pub const CHAINMAP: &str = "chainmap.v1";
pub const DGALGEBRA: &str = "dgalgebra.v1";
pub const DGMODULE: &str = "dgmodule.v1";
pub const EXT: &str = "ext.v1";
pub const MODULI: &str = "moduli.v1";
pub const POINT: &str = "point.v1";
pub const AUTOMORPHISM: &str = "automorphism.v1";

type Rows = Vec<Vec<String>>;

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(deny_unknown_fields)]
struct Degrees {
    lo: i64,
    hi: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    schema: String,
    ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
    #[serde(default)]
    variables: Vec<String>,
    degrees: Degrees,
    ranks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<Vec<String>>>,
    differentials: BTreeMap<i64, Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainMapDoc {
    schema: String,
    source: ComplexDoc,
    target: ComplexDoc,
    degree: i64,
    components: BTreeMap<i64, Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DgAlgebraDoc {
    schema: String,
    complex: ComplexDoc,
    unit: usize,
    products: BTreeMap<String, Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DgModuleDoc {
    schema: String,
    algebra: DgAlgebraDoc,
    complex: ComplexDoc,
    action: BTreeMap<String, Rows>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtDoc {
    schema: String,
    ext: BTreeMap<i64, usize>,
    certified_through: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    schema: String,
    dims: Vec<usize>,
    values: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomorphismDoc {
    schema: String,
    blocks: BTreeMap<i64, Rows>,
}

fn check_schema(found: &str, want: &str) -> Result<()> {
    if found != want {
        return Err(Error::Schema(format!("expected schema {want}, found {found}")));
    }
    Ok(())
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Schema(e.to_string()))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("documents serialize")
}

/// Parses JSON text; syntax errors become `Error::Parse`.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// The "schema" tag of a document, if present.
pub fn schema_of(v: &Value) -> Option<&str> {
    v.get("schema").and_then(Value::as_str)
}

pub fn field_from_name(ring: &str, prime: Option<u64>) -> Result<Field> {
    match (ring, prime) {
        ("Q", None) => Ok(Field::Rational),
        ("Q", Some(_)) => Err(Error::Schema("prime given for ring Q".into())),
        ("Fp", Some(p)) => Field::prime(p),
        ("Fp", None) => Err(Error::Schema("ring Fp needs a prime".into())),
        (other, _) => Err(Error::Schema(format!("unknown ring {other:?}; use Q or Fp"))),
    }
}

fn field_name(f: Field) -> (String, Option<u64>) {
    match f {
        Field::Rational => ("Q".into(), None),
        Field::Prime(p) => ("Fp".into(), Some(p)),
    }
}

fn rows_of(m: &Matrix) -> Rows {
    m.row_strings()
}

fn complex_doc(c: &Complex) -> ComplexDoc {
    let (ring, prime) = field_name(c.ring().field);
    ComplexDoc {
        schema: COMPLEX.into(),
        ring,
        prime,
        variables: c.ring().vars.clone(),
        degrees: Degrees { lo: c.lo(), hi: c.hi() },
        ranks: c.ranks().to_vec(),
        labels: c.labels().cloned(),
        differentials: (c.lo() + 1..=c.hi()).map(|i| (i, rows_of(&c.diff(i)))).collect(),
    }
}

fn complex_from_doc(d: &ComplexDoc) -> Result<Complex> {
    check_schema(&d.schema, COMPLEX)?;
    let field = field_from_name(&d.ring, d.prime)?;
    let ring = Ring::with_vars(field, d.variables.clone());
    let Degrees { lo, hi } = d.degrees;
    if hi < lo || (hi - lo + 1) as usize != d.ranks.len() {
        return Err(Error::Schema("degrees and ranks disagree".into()));
    }
    if let Some(k) = d.differentials.keys().find(|k| **k <= lo || **k > hi) {
        return Err(Error::Schema(format!("differential d_{k} outside degrees {lo}..{hi}")));
    }
    let diffs = (lo + 1..=hi)
        .map(|i| {
            let cols = d.ranks[(i - lo) as usize];
            let rows = d.ranks[(i - lo - 1) as usize];
            match d.differentials.get(&i) {
                Some(r) => Matrix::parse(&ring, r, cols),
                None => Ok(Matrix::zeros(&ring, rows, cols)),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let c = Complex::new(&ring, lo, d.ranks.clone(), diffs)?;
    match &d.labels {
        Some(l) => c.with_labels(l.clone()),
        None => Ok(c),
    }
}

pub fn complex_to_json(c: &Complex) -> Value {
    to_value(&complex_doc(c))
}

pub fn complex_from_json(v: &Value) -> Result<Complex> {
    complex_from_doc(&from_value(v)?)
}

pub fn chainmap_to_json(f: &ChainMap) -> Value {
    to_value(&ChainMapDoc {
        schema: CHAINMAP.into(),
        source: complex_doc(f.source()),
        target: complex_doc(f.target()),
        degree: f.degree(),
        components: f.source().degrees().map(|i| (i, rows_of(&f.component(i)))).collect(),
    })
}

/// Reads a chain map; components must commute with the differentials.
pub fn chainmap_from_json(v: &Value) -> Result<ChainMap> {
    let f = graded_map_from_json(v)?;
    f.check_commutes()?;
    Ok(f)
}

/// Reads a graded map in the chain map schema without the commuting check
/// (homotopies, for instance).
pub fn graded_map_from_json(v: &Value) -> Result<ChainMap> {
    let d: ChainMapDoc = from_value(v)?;
    check_schema(&d.schema, CHAINMAP)?;
    let (x, y) = (complex_from_doc(&d.source)?, complex_from_doc(&d.target)?);
    let mut comps = BTreeMap::new();
    for (i, rows) in &d.components {
        if !x.degrees().contains(i) {
            return Err(Error::Schema(format!("component {i} outside the source degrees")));
        }
        comps.insert(*i, Matrix::parse(x.ring(), rows, x.rank(*i))?);
    }
    ChainMap::graded_from_map(&x, &y, d.degree, &comps)
}

fn table_doc(t: &ProductTable) -> BTreeMap<String, Rows> {
    t.iter()
        .map(|((i, j), entries)| {
            let rows = entries.iter().map(|v| v.iter().map(Poly::to_string).collect()).collect();
            (format!("{i},{j}"), rows)
        })
        .collect()
}

fn table_from_doc(ring: &RingRef, doc: &BTreeMap<String, Rows>) -> Result<ProductTable> {
    let mut out = ProductTable::new();
    for (key, rows) in doc {
        let bad = || Error::Schema(format!("table key {key:?} is not of the form \"i,j\""));
        let (a, b) = key.split_once(',').ok_or_else(bad)?;
        let i: i64 = a.trim().parse().map_err(|_| bad())?;
        let j: i64 = b.trim().parse().map_err(|_| bad())?;
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        out.insert((i, j), entries);
    }
    Ok(out)
}

fn dgalgebra_doc(a: &DgAlgebraData) -> DgAlgebraDoc {
    DgAlgebraDoc {
        schema: DGALGEBRA.into(),
        complex: complex_doc(&a.complex),
        unit: a.unit,
        products: table_doc(&a.products),
    }
}

fn dgalgebra_from_doc(d: &DgAlgebraDoc) -> Result<DgAlgebraData> {
    check_schema(&d.schema, DGALGEBRA)?;
    let complex = complex_from_doc(&d.complex)?;
    let products = table_from_doc(complex.ring(), &d.products)?;
    Ok(DgAlgebraData { complex, unit: d.unit, products })
}

pub fn dgalgebra_to_json(a: &DgAlgebraData) -> Value {
    to_value(&dgalgebra_doc(a))
}

/// Reads algebra data without checking the axioms.
pub fn dgalgebra_data_from_json(v: &Value) -> Result<DgAlgebraData> {
    dgalgebra_from_doc(&from_value(v)?)
}

/// Reads and verifies a DG algebra.
pub fn dgalgebra_from_json(v: &Value) -> Result<Arc<DgAlgebra>> {
    Ok(Arc::new(DgAlgebra::from_data(dgalgebra_data_from_json(v)?)?))
}

pub fn dgmodule_to_json(m: &DgModuleData) -> Value {
    to_value(&DgModuleDoc {
        schema: DGMODULE.into(),
        algebra: dgalgebra_doc(m.algebra.data()),
        complex: complex_doc(&m.complex),
        action: table_doc(&m.action),
    })
}

/// Reads module data; the algebra is verified, the module axioms are not.
pub fn dgmodule_data_from_json(v: &Value) -> Result<DgModuleData> {
    let d: DgModuleDoc = from_value(v)?;
    check_schema(&d.schema, DGMODULE)?;
    let algebra = Arc::new(DgAlgebra::from_data(dgalgebra_from_doc(&d.algebra)?)?);
    let complex = complex_from_doc(&d.complex)?;
    let action = table_from_doc(complex.ring(), &d.action)?;
    Ok(DgModuleData { algebra, complex, action })
}

pub fn ext_to_json(t: &ExtTable) -> Value {
    to_value(&ExtDoc { schema: EXT.into(), ext: t.ext.clone(), certified_through: t.certified_through })
}

pub fn ext_from_json(v: &Value) -> Result<ExtTable> {
    let d: ExtDoc = from_value(v)?;
    check_schema(&d.schema, EXT)?;
    Ok(ExtTable { ext: d.ext, certified_through: d.certified_through })
}

fn scalar_string(s: &Scalar) -> String {
    s.to_string()
}

fn parse_scalar(field: Field, s: &str) -> Result<Scalar> {
    let ring = Ring::field_only(field);
    Poly::parse(&ring, s)?.constant_value().ok_or_else(|| Error::Parse(format!("{s:?} is not a scalar")))
}

fn field_matrix_rows(m: &FieldMatrix) -> Rows {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| scalar_string(m.get(i, j))).collect()).collect()
}

fn field_matrix_from_rows(field: Field, rows: &Rows, n: usize) -> Result<FieldMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("expected a {n}×{n} block")));
    }
    let mut m = FieldMatrix::zeros(field, n, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            m.set(i, j, parse_scalar(field, s)?);
        }
    }
    Ok(m)
}

/// Constraint data of an instance, optionally with a tangent report at a point.
pub fn moduli_to_json(inst: &ModuliInstance, report: Option<&TangentReport>) -> Value {
    let mut v = serde_json::json!({
        "schema": MODULI,
        "dims": inst.dims,
        "unknowns": inst.unknowns(),
        "constraints": inst.constraint_strings(),
        "d": inst.d(),
        "d_prime_full": inst.d_prime_full(),
        "d_prime_reduced": inst.d_prime_reduced(),
    });
    if let Some(r) = report {
        v["tangent"] = tangent_to_json(r);
    }
    v
}

pub fn tangent_to_json(r: &TangentReport) -> Value {
    let vecs =
        |vs: &[Vec<Scalar>]| -> Vec<Vec<String>> { vs.iter().map(|v| v.iter().map(scalar_string).collect()).collect() };
    serde_json::json!({
        "ambient": r.ambient,
        "tangent_dim": r.tangent_dim,
        "orbit_dim": r.orbit_dim,
        "yext_dim": r.yext_dim,
        "jacobian": field_matrix_rows(&r.jacobian),
        "tangent_basis": vecs(&r.tangent_basis),
        "orbit_span": vecs(&r.orbit_span),
    })
}

pub fn point_to_json(p: &ModuliPoint) -> Value {
    to_value(&PointDoc {
        schema: POINT.into(),
        dims: p.instance.dims.clone(),
        values: p.instance.unknowns().iter().zip(&p.values).map(|(n, v)| (n.clone(), scalar_string(v))).collect(),
    })
}

/// Reads a point of `inst`; unknowns not listed are zero. The constraints must vanish.
pub fn point_from_json(inst: &ModuliInstance, v: &Value) -> Result<ModuliPoint> {
    let d: PointDoc = from_value(v)?;
    check_schema(&d.schema, POINT)?;
    if d.dims != inst.dims {
        return Err(Error::Dimension(format!("point is for dims {:?}, instance has {:?}", d.dims, inst.dims)));
    }
    let field = inst.ring.field;
    let vals =
        d.values.iter().map(|(k, s)| Ok((k.clone(), parse_scalar(field, s)?))).collect::<Result<BTreeMap<_, _>>>()?;
    ModuliPoint::new(inst, inst.values_from_map(&vals)?)
}

pub fn automorphism_to_json(a: &GradedAutomorphism) -> Value {
    to_value(&AutomorphismDoc {
        schema: AUTOMORPHISM.into(),
        blocks: a.iter().map(|(j, m)| (*j, field_matrix_rows(m))).collect(),
    })
}

pub fn automorphism_from_json(inst: &ModuliInstance, v: &Value) -> Result<GradedAutomorphism> {
    let d: AutomorphismDoc = from_value(v)?;
    check_schema(&d.schema, AUTOMORPHISM)?;
    let field = inst.ring.field;
    (0..=inst.top())
        .map(|j| {
            let rows = d.blocks.get(&j).ok_or_else(|| Error::Dimension(format!("missing block in degree {j}")))?;
            Ok((j, field_matrix_from_rows(field, rows, inst.dim(j))?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::koszul_complex;

    #[test]
    fn complex_round_trip() {
        let ring = Ring::new(Field::Rational, &["x", "y"]);
        let k = koszul_complex(&[Poly::named(&ring, "x"), Poly::named(&ring, "y")]).unwrap();
        let v = complex_to_json(&k);
        let back = complex_from_json(&v).unwrap();
        assert_eq!(back, k);
        assert_eq!(render(&complex_to_json(&back)), render(&v));
    }

    #[test]
    fn schema_tag_is_checked() {
        let ring = Ring::field_only(Field::Rational);
        let mut v = complex_to_json(&Complex::concentrated(&ring, 0, 1));
        v["schema"] = "complex.v0".into();
        assert!(matches!(complex_from_json(&v), Err(Error::Schema(_))));
    }

    #[test]
    fn prime_field_header() {
        assert_eq!(field_from_name("Fp", Some(7)).unwrap(), Field::Prime(7));
        assert!(field_from_name("Fp", Some(8)).is_err());
        assert!(field_from_name("Fp", None).is_err());
        assert!(field_from_name("Z", None).is_err());
    }
}
