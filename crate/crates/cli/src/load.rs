//! Reading inputs. Readers also accept the composite documents the CLI itself
//! writes, so outputs can be fed back in (e.g. `hb` output as an algebra).

use std::path::Path;
use std::sync::Arc;

use dgc_core::complex::{ChainMap, Complex};
use dgc_core::dg::{residue_module, DgAlgebra, DgAlgebraData, DgModule, DgModuleData};
use dgc_core::io;
use dgc_core::{Error, Field, Matrix, Ring, RingRef};
use serde_json::Value;

use crate::commands::{Failure, RingArgs};

pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(io::parse_json(&text)?)
}

/// The document itself if its schema matches, else its `field` entry.
fn pick<'a>(v: &'a Value, schema: &str, field: &str) -> &'a Value {
    if io::schema_of(v) == Some(schema) {
        return v;
    }
    match v.get(field) {
        Some(inner) if io::schema_of(inner) == Some(schema) => inner,
        _ => v,
    }
}

pub fn complex(path: &Path) -> Result<Complex, Failure> {
    let v = read_json(path)?;
    Ok(io::complex_from_json(pick(&v, io::COMPLEX, "complex"))?)
}

pub fn chain_map(path: &Path) -> Result<ChainMap, Failure> {
    let v = read_json(path)?;
    Ok(io::chainmap_from_json(pick(&v, io::CHAINMAP, "map"))?)
}

pub fn graded_map(path: &Path) -> Result<ChainMap, Failure> {
    let v = read_json(path)?;
    Ok(io::graded_map_from_json(pick(&v, io::CHAINMAP, "map"))?)
}

pub fn algebra_data(path: &Path) -> Result<DgAlgebraData, Failure> {
    let v = read_json(path)?;
    Ok(io::dgalgebra_data_from_json(pick(&v, io::DGALGEBRA, "algebra"))?)
}

pub fn algebra(path: &Path) -> Result<Arc<DgAlgebra>, Failure> {
    Ok(Arc::new(DgAlgebra::from_data(algebra_data(path)?)?))
}

pub fn module_data(path: &Path) -> Result<DgModuleData, Failure> {
    let v = read_json(path)?;
    Ok(io::dgmodule_data_from_json(pick(&v, io::DGMODULE, "module"))?)
}

/// A module file, or the keywords `residue` / `regular` over `algebra`.
pub fn module(spec: &Path, algebra: Option<&Arc<DgAlgebra>>) -> Result<DgModule, Failure> {
    let keyword = spec.to_str().filter(|s| matches!(*s, "residue" | "regular"));
    if let Some(k) = keyword {
        let a = algebra
            .ok_or_else(|| Failure::Core(Error::Precondition(format!("module keyword {k:?} needs --algebra"))))?;
        return Ok(if k == "residue" { residue_module(a)? } else { DgModule::regular(a) });
    }
    let m = DgModule::from_data(module_data(spec)?)?;
    if let Some(a) = algebra {
        if m.algebra().data() != a.data() {
            return Err(Failure::Core(Error::Precondition(
                "the module is over a different algebra than --algebra".into(),
            )));
        }
    }
    Ok(m)
}

pub fn ring(args: &RingArgs, default_vars: &[&str]) -> Result<RingRef, Failure> {
    let field = field(args)?;
    let vars: Vec<String> =
        if args.vars.is_empty() { default_vars.iter().map(|s| s.to_string()).collect() } else { args.vars.clone() };
    for (k, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || vars[..k].contains(v) {
            return Err(Failure::Core(Error::Precondition(format!("bad variable name {v:?}"))));
        }
    }
    Ok(Ring::with_vars(field, vars))
}

pub fn field(args: &RingArgs) -> Result<Field, Failure> {
    let name = match args.ring.as_str() {
        "Q" | "q" => "Q",
        "Fp" | "fp" | "F" => "Fp",
        other => other,
    };
    io::field_from_name(name, if name == "Q" { None } else { args.prime })
        .map_err(|e| Failure::Core(Error::Precondition(e.to_string())))
}

/// A matrix given inline as JSON (`[["x","0"],…]`) or as a path to such a file.
pub fn matrix(spec: &str, ring: &RingRef) -> Result<Matrix, Failure> {
    let v = if spec.trim_start().starts_with('[') { io::parse_json(spec)? } else { read_json(Path::new(spec))? };
    let rows: Vec<Vec<String>> = serde_json::from_value(v)
        .map_err(|e| Failure::Core(Error::Schema(format!("matrix must be an array of string rows: {e}"))))?;
    Ok(Matrix::parse(ring, &rows, 0)?)
}
