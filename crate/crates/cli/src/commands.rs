use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dgc_core::complex::{
    hom_complex, homology, is_quasi_isomorphism, null_homotopy_holds, soft_truncate, solve_null_homotopy, suspend,
    tensor_complex,
};
use dgc_core::dg::{base_change, dg_hom, dg_tensor, DgAlgebra, DgModule};
use dgc_core::io;
use dgc_core::koszul::koszul_complex;
use dgc_core::moduli::{act_on, tangent_space, tangent_space_dual, yext_dimension, ModuliInstance, ModuliPoint};
use dgc_core::semifree::{
    ext, is_semidualizing_dg, is_semidualizing_module, semidualizing_length_bound, semifree_resolution,
    SemidualizingVerdict,
};
use dgc_core::structres::{alternating_family_over, build_buchsbaum_eisenbud, build_hilbert_burch, product_table_text};
use dgc_core::{same_span, signed_submaximal_pfaffians, submaximal_pfaffians, Error, Poly, Scalar, SignFlag};
use serde_json::{json, Value};

use crate::load;
use crate::text;

#[derive(Parser, Debug)]
#[command(name = "dgc", version, about = "Exact DG commutative algebra on JSON inputs")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flag {
    A,
    B,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Auto,
    Dg,
    Module,
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Coefficient field: Q or Fp.
    #[arg(long, default_value = "Q")]
    pub ring: String,
    /// The prime for --ring Fp.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Polynomial variables, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ModuliArgs {
    /// DG algebra U (dgalgebra.v1).
    #[arg(long)]
    pub algebra: PathBuf,
    /// Dimension vector r_0,…,r_s.
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Koszul complex on the given elements (default: the variables).
    Koszul {
        #[command(flatten)]
        ring: RingArgs,
        /// Sequence of polynomials, comma separated.
        #[arg(long, value_delimiter = ',')]
        elements: Vec<String>,
    },
    /// Hom complex Hom(X, Y).
    Hom {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Tensor product X ⊗ Y.
    Tensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Σⁿ X.
    Suspend {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        shift: i64,
    },
    /// Soft truncation at degree n with its comparison map.
    Truncate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        degree: i64,
    },
    /// Homology dimensions (field coefficients).
    Homology {
        #[arg(long)]
        input: PathBuf,
    },
    /// Whether a degree-0 chain map is a quasi-isomorphism.
    Quasiiso {
        #[arg(long)]
        map: PathBuf,
    },
    /// Check a given null-homotopy, or solve for one.
    Nullhomotopy {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        homotopy: Option<PathBuf>,
    },
    /// Check the DG algebra axioms.
    VerifyDga {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check the DG module axioms.
    VerifyDgm {
        #[arg(long)]
        input: PathBuf,
    },
    /// A ⊗ X as a DG A-module.
    Basechange {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// Hom_A(M, N) as a DG A-module.
    Dghom {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// M ⊗_A N (field coefficients).
    Dgtensor {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Semifree resolution up to the cap.
    Semifree {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 6)]
        cap: i64,
    },
    /// Ext_A(M, N) from a semifree resolution of M (N defaults to M).
    Ext {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        cap: i64,
    },
    /// Semidualizing test for C, plus the length bound for modules over a degree-0 algebra.
    Semidualizing {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 6)]
        cap: i64,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Hilbert–Burch resolution of an (n+1)×n matrix with its DG algebra structure.
    Hb {
        #[command(flatten)]
        ring: RingArgs,
        /// Matrix as inline JSON rows or a file.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value = "1")]
        multiplier: String,
    },
    /// Buchsbaum–Eisenbud resolution of an odd alternating matrix.
    Be3 {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, conflicts_with = "family")]
        matrix: Option<String>,
        /// Use the alternating family M_n over x, y, z.
        #[arg(long)]
        family: Option<usize>,
        #[arg(long, value_enum, default_value_t = Flag::B)]
        sign_flag: Flag,
    },
    /// Pfaffian, or the (signed) submaximal Pfaffians of an alternating matrix.
    Pfaffian {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, conflicts_with = "family")]
        matrix: Option<String>,
        #[arg(long)]
        family: Option<usize>,
        /// Sign the submaximal Pfaffians with this flag; unsigned when absent.
        #[arg(long, value_enum)]
        sign_flag: Option<Flag>,
    },
    /// Unknowns and constraints of the variety of DG U-module structures on W.
    Moduli {
        #[command(flatten)]
        args: ModuliArgs,
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Apply a graded automorphism to a point.
    Act {
        #[command(flatten)]
        args: ModuliArgs,
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
    },
    /// Tangent space at a point (Jacobian kernel and dual numbers).
    Tangent {
        #[command(flatten)]
        args: ModuliArgs,
        #[arg(long)]
        point: PathBuf,
    },
    /// Tangent modulo orbit tangent; with --cap, also Ext¹ from a semifree resolution.
    Yext {
        #[command(flatten)]
        args: ModuliArgs,
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        cap: Option<i64>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(String),
    /// The input was read but fails the check being asked for.
    Rejected {
        kind: String,
        message: String,
        output: Option<String>,
    },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = Result<String, Failure>;

fn emit(fmt: Format, v: &Value, text: impl FnOnce() -> String) -> String {
    match fmt {
        Format::Json => io::render(v),
        Format::Text => text(),
    }
}

fn sign_flag(f: Flag) -> SignFlag {
    match f {
        Flag::A => SignFlag::A,
        Flag::B => SignFlag::B,
    }
}

fn opt_algebra(p: &Option<PathBuf>) -> Result<Option<Arc<DgAlgebra>>, Failure> {
    p.as_deref().map(load::algebra).transpose()
}

fn scalars(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

pub fn run(cli: &Cli) -> Out {
    let fmt = cli.format;
    match &cli.command {
        Command::Koszul { ring, elements } => {
            let r = load::ring(ring, &[])?;
            if r.vars.is_empty() && elements.is_empty() {
                return Err(Error::Precondition("koszul needs --vars or --elements".into()).into());
            }
            let xs = if elements.is_empty() {
                (0..r.nvars()).map(|i| Poly::var(&r, i)).collect()
            } else {
                elements.iter().map(|s| Poly::parse(&r, s)).collect::<Result<Vec<_>, _>>()?
            };
            let k = koszul_complex(&xs)?;
            Ok(emit(fmt, &io::complex_to_json(&k), || text::complex(&k)))
        }
        Command::Hom { source, target } => {
            let h = hom_complex(&load::complex(source)?, &load::complex(target)?)?;
            Ok(emit(fmt, &io::complex_to_json(&h), || text::complex(&h)))
        }
        Command::Tensor { left, right } => {
            let t = tensor_complex(&load::complex(left)?, &load::complex(right)?)?;
            Ok(emit(fmt, &io::complex_to_json(&t), || text::complex(&t)))
        }
        Command::Suspend { input, shift } => {
            let s = suspend(&load::complex(input)?, *shift);
            Ok(emit(fmt, &io::complex_to_json(&s), || text::complex(&s)))
        }
        Command::Truncate { input, degree } => {
            let x = load::complex(input)?;
            let t = soft_truncate(&x, *degree)?;
            let qi = if x.ring().is_field() { Some(is_quasi_isomorphism(&t.map)?) } else { None };
            let v = json!({
                "schema": "truncation.v1",
                "degree": degree,
                "complex": io::complex_to_json(&t.complex),
                "map": io::chainmap_to_json(&t.map),
                "quasi_isomorphism": qi,
            });
            Ok(emit(fmt, &v, || {
                let mut s = text::complex(&t.complex);
                if let Some(q) = qi {
                    s.push_str(&format!("quasi-isomorphism: {q}\n"));
                }
                s
            }))
        }
        Command::Homology { input } => {
            let x = load::complex(input)?;
            let h = homology(&x)?;
            let dims: serde_json::Map<String, Value> = x.degrees().map(|i| (i.to_string(), json!(h.dim(i)))).collect();
            let v = json!({ "schema": "homology.v1", "dims": dims });
            Ok(emit(fmt, &v, || x.degrees().map(|i| format!("H_{i} = {}\n", h.dim(i))).collect()))
        }
        Command::Quasiiso { map } => {
            let f = load::chain_map(map)?;
            let q = is_quasi_isomorphism(&f)?;
            let v = json!({ "quasi_isomorphism": q });
            Ok(emit(fmt, &v, || format!("quasi-isomorphism: {q}\n")))
        }
        Command::Nullhomotopy { map, homotopy } => {
            let f = load::chain_map(map)?;
            match homotopy {
                Some(path) => {
                    let s = load::graded_map(path)?;
                    let ok = null_homotopy_holds(&f, &s);
                    let v = json!({ "holds": ok });
                    let out = emit(fmt, &v, || format!("null-homotopy holds: {ok}\n"));
                    if ok {
                        Ok(out)
                    } else {
                        Err(Failure::Rejected {
                            kind: "not-a-null-homotopy".into(),
                            message: "f ≠ ∂s ± s∂".into(),
                            output: Some(out),
                        })
                    }
                }
                None => {
                    let s = solve_null_homotopy(&f)?;
                    let v = json!({
                        "schema": "nullhomotopy.v1",
                        "null_homotopic": s.is_some(),
                        "map": s.as_ref().map(io::chainmap_to_json),
                    });
                    Ok(emit(fmt, &v, || match &s {
                        Some(s) => format!("null-homotopic: true\n{}", text::chain_map(s)),
                        None => "null-homotopic: false\n".into(),
                    }))
                }
            }
        }
        Command::VerifyDga { input } => {
            let rep = load::algebra_data(input)?.verify();
            verdict(fmt, &rep)
        }
        Command::VerifyDgm { input } => {
            let rep = load::module_data(input)?.verify();
            verdict(fmt, &rep)
        }
        Command::Basechange { algebra, input } => {
            let m = base_change(&load::algebra(algebra)?, &load::complex(input)?)?;
            Ok(module_out(fmt, &m))
        }
        Command::Dghom { algebra, module, target } => {
            let a = opt_algebra(algebra)?;
            let m = load::module(module, a.as_ref())?;
            let n = load::module(target, Some(a.as_ref().unwrap_or(m.algebra())))?;
            let h = dg_hom(&m, &n)?;
            Ok(module_out(fmt, &h.module))
        }
        Command::Dgtensor { algebra, module, target } => {
            let a = opt_algebra(algebra)?;
            let m = load::module(module, a.as_ref())?;
            let n = load::module(target, Some(a.as_ref().unwrap_or(m.algebra())))?;
            Ok(module_out(fmt, &dg_tensor(&m, &n)?))
        }
        Command::Semifree { algebra, module, cap } => {
            let a = opt_algebra(algebra)?;
            let m = load::module(module, a.as_ref())?;
            let res = semifree_resolution(&m, *cap)?;
            let gens: Vec<Value> = res
                .semifree
                .generators
                .iter()
                .map(|g| json!({ "degree": g.degree, "boundary": scalars(&g.boundary), "image": scalars(&g.image) }))
                .collect();
            let v = json!({
                "schema": "semifree.v1",
                "cap": cap,
                "generators": gens,
                "module": io::dgmodule_to_json(res.semifree.module.data()),
                "map": io::chainmap_to_json(&res.map),
            });
            Ok(emit(fmt, &v, || {
                let degs: Vec<String> = res.semifree.generators.iter().map(|g| g.degree.to_string()).collect();
                format!("generators in degrees: {}\n{}", degs.join(","), text::complex(res.semifree.module.complex()))
            }))
        }
        Command::Ext { algebra, module, target, cap } => {
            let a = opt_algebra(algebra)?;
            let m = load::module(module, a.as_ref())?;
            let n = match target {
                Some(t) => load::module(t, Some(a.as_ref().unwrap_or(m.algebra())))?,
                None => m.clone(),
            };
            let t = ext(&m, &n, *cap)?;
            Ok(emit(fmt, &io::ext_to_json(&t), || text::ext(&t)))
        }
        Command::Semidualizing { algebra, module, cap, mode } => {
            let a = opt_algebra(algebra)?;
            let c = load::module(module, a.as_ref())?;
            let degree_zero = c.algebra().complex().degrees().all(|i| i == 0 || c.algebra().rank(i) == 0)
                && c.complex().degrees().all(|i| i == 0 || c.rank(i) == 0);
            let use_module = match mode {
                Mode::Auto => degree_zero,
                Mode::Dg => false,
                Mode::Module => true,
            };
            let verdict = if use_module { is_semidualizing_module(&c, *cap)? } else { is_semidualizing_dg(&c, *cap)? };
            let bound = if use_module { Some(semidualizing_length_bound(c.algebra(), &c)?) } else { None };
            let mut v = match &verdict {
                SemidualizingVerdict::YesUpToCap { certified_from } => {
                    json!({ "schema": "semidualizing.v1", "semidualizing": true, "certified_from": certified_from })
                }
                SemidualizingVerdict::No { degree, reason } => {
                    json!({ "schema": "semidualizing.v1", "semidualizing": false, "degree": degree, "reason": reason })
                }
            };
            if let Some(b) = &bound {
                v["length_bound"] = json!({
                    "mu0": b.mu0, "length_r": b.length_r, "rho": b.rho, "length_c": b.length_c, "holds": b.holds,
                });
            }
            Ok(emit(fmt, &v, || {
                let mut s = match &verdict {
                    SemidualizingVerdict::YesUpToCap { certified_from } => {
                        format!("semidualizing: yes (certified from degree {certified_from})\n")
                    }
                    SemidualizingVerdict::No { degree, reason } => {
                        format!("semidualizing: no (degree {degree}: {reason})\n")
                    }
                };
                if let Some(b) = &bound {
                    s.push_str(&format!(
                        "mu0 = {}, len(R) = {}, rho = {}, len(C) = {}, bound holds: {}\n",
                        b.mu0, b.length_r, b.rho, b.length_c, b.holds
                    ));
                }
                s
            }))
        }
        Command::Hb { ring, matrix, multiplier } => {
            let r = load::ring(ring, &["x", "y"])?;
            let m = load::matrix(matrix, &r)?;
            let a = Poly::parse(&r, multiplier)?;
            let hb = build_hilbert_burch(&a, &m)?;
            Ok(structured(fmt, "hb.v1", &hb.row, &hb.algebra))
        }
        Command::Be3 { ring, matrix, family, sign_flag: flag } => {
            let r = load::ring(ring, &["x", "y", "z"])?;
            let m = alternating_input(&r, matrix, family)?;
            let be = build_buchsbaum_eisenbud(&m, sign_flag(*flag))?;
            Ok(structured(fmt, "be3.v1", &be.row, &be.algebra))
        }
        Command::Pfaffian { ring, matrix, family, sign_flag: flag } => {
            let r = load::ring(ring, &["x", "y", "z"])?;
            let m = alternating_input(&r, matrix, family)?;
            let (kind, pfs) = if m.rows() % 2 == 0 {
                ("pfaffian", vec![dgc_core::pfaffian(&m)?])
            } else {
                match flag {
                    Some(f) => ("signed_submaximal", signed_submaximal_pfaffians(&m, sign_flag(*f))?),
                    None => ("submaximal", submaximal_pfaffians(&m)?),
                }
            };
            let strs: Vec<String> = pfs.iter().map(Poly::to_string).collect();
            let v = json!({ "schema": "pfaffian.v1", "kind": kind, "values": strs });
            Ok(emit(fmt, &v, || strs.iter().map(|s| format!("{s}\n")).collect()))
        }
        Command::Moduli { args, point } => {
            let inst = instance(args)?;
            let report = match point {
                Some(p) => Some(yext_dimension(&load_point(&inst, p)?)),
                None => None,
            };
            let v = io::moduli_to_json(&inst, report.as_ref());
            Ok(emit(fmt, &v, || text::moduli(&inst, report.as_ref())))
        }
        Command::Act { args, point, alpha } => {
            let inst = instance(args)?;
            let p = load_point(&inst, point)?;
            let a = io::automorphism_from_json(&inst, &load::read_json(alpha)?)?;
            let q = act_on(&p, &a)?;
            Ok(emit(fmt, &io::point_to_json(&q), || text::point(&q)))
        }
        Command::Tangent { args, point } => {
            let inst = instance(args)?;
            let p = load_point(&inst, point)?;
            let t = tangent_space(&p);
            let agree = same_span(inst.ring.field, inst.nunknowns(), &t, &tangent_space_dual(&p));
            let basis: Vec<Vec<String>> = t.iter().map(|v| scalars(v)).collect();
            let v = json!({
                "schema": "tangent.v1",
                "unknowns": inst.unknowns(),
                "tangent_dim": t.len(),
                "basis": basis,
                "dual_numbers_agree": agree,
            });
            Ok(emit(fmt, &v, || {
                format!("tangent dim = {} (of {})\ndual numbers agree: {agree}\n", t.len(), inst.nunknowns())
            }))
        }
        Command::Yext { args, point, cap } => {
            let inst = instance(args)?;
            let p = load_point(&inst, point)?;
            let r = yext_dimension(&p);
            let mut v = io::tangent_to_json(&r);
            v["schema"] = json!("yext.v1");
            let ext1 = match cap {
                Some(c) => {
                    let m = p.to_module()?;
                    let t = ext(&m, &m, *c)?;
                    v["ext1"] = json!(t.get(1));
                    v["ext_certified_through"] = json!(t.certified_through);
                    Some(t.get(1))
                }
                None => None,
            };
            Ok(emit(fmt, &v, || {
                let mut s = text::tangent(&r);
                if let Some(e) = ext1 {
                    s.push_str(&format!("Ext^1 = {}\n", e.map_or("uncertified".into(), |d| d.to_string())));
                }
                s
            }))
        }
    }
}

fn verdict(fmt: Format, rep: &dgc_core::dg::VerificationReport) -> Out {
    let vs: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| json!({ "axiom": v.axiom.to_string(), "degrees": v.degrees, "indices": v.indices }))
        .collect();
    let v = json!({ "schema": "verification.v1", "ok": rep.ok(), "violations": vs });
    let out =
        emit(
            fmt,
            &v,
            || {
                if rep.ok() {
                    "ok\n".into()
                } else {
                    rep.violations.iter().map(|v| format!("{v}\n")).collect()
                }
            },
        );
    match rep.first() {
        None => Ok(out),
        Some(first) => Err(Failure::Rejected {
            kind: "axiom".into(),
            message: format!("{} violation(s); first: {first}", rep.violations.len()),
            output: Some(out),
        }),
    }
}

fn module_out(fmt: Format, m: &DgModule) -> String {
    emit(fmt, &io::dgmodule_to_json(m.data()), || text::complex(m.complex()))
}

fn structured(fmt: Format, schema: &str, row: &dgc_core::Matrix, alg: &DgAlgebra) -> String {
    let table = product_table_text(alg);
    let v = json!({
        "schema": schema,
        "row": row.row_strings()[0],
        "complex": io::complex_to_json(alg.complex()),
        "algebra": io::dgalgebra_to_json(alg.data()),
        "products": table.lines().collect::<Vec<_>>(),
    });
    emit(fmt, &v, || format!("{}{}", text::complex(alg.complex()), table))
}

fn alternating_input(
    r: &dgc_core::RingRef,
    matrix: &Option<String>,
    family: &Option<usize>,
) -> Result<dgc_core::Matrix, Failure> {
    match (matrix, family) {
        (Some(m), None) => load::matrix(m, r),
        (None, Some(n)) => Ok(alternating_family_over(r, *n)?),
        _ => Err(Error::Precondition("give --matrix or --family".into()).into()),
    }
}

fn instance(args: &ModuliArgs) -> Result<ModuliInstance, Failure> {
    Ok(ModuliInstance::new(&load::algebra(&args.algebra)?, &args.dims)?)
}

fn load_point(inst: &ModuliInstance, path: &std::path::Path) -> Result<ModuliPoint, Failure> {
    Ok(io::point_from_json(inst, &load::read_json(path)?)?)
}
