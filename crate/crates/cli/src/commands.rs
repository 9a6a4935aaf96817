//! Subcommand implementations. Every command is a pure function from its
//! inputs to a JSON value plus an exit code; identical inputs produce
//! byte-identical output.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use superpoint_core::{
    carlson_module, equivalent, minimal_resolution, normalize, standard_restriction,
    variety::{
        self, enumeration_module, enumeration_size, point_from_encoding, rank_variety_form,
        MatrixForm, RankVariety,
    },
    coefficient_tuple, pipoint::coords_len, CohomologyClassRep, FiniteField, GradedModule,
    PiPointRep, ProjectivityVerdict,
};

use crate::io;
use crate::random::{module_random, RandomModuleSpec};
use crate::suite;
use crate::{CliError, Output};

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    /// Odd prime characteristic.
    #[arg(long)]
    pub p: u64,
    /// Family: witt, exterior, or elem_abelian.
    #[arg(long)]
    pub family: String,
    /// Number of even generators.
    #[arg(long)]
    pub n: u32,
    /// Witt height parameter (witt family only, m >= 2).
    #[arg(long)]
    pub m: Option<u32>,
    /// Extension degree of the coefficient field.
    #[arg(long, default_value_t = 1)]
    pub field_degree: u32,
}

impl AlgebraArgs {
    fn build(&self) -> Result<(superpoint_core::AlgebraPresentation, FiniteField), CliError> {
        let alg = io::build_algebra(self.p, &self.family, self.n, self.m)?;
        let field = FiniteField::new(self.p, self.field_degree, None).map_err(CliError::domain)?;
        Ok((alg, field))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExteriorMatrixArg {
    Thm,
    Paper,
}

impl From<ExteriorMatrixArg> for MatrixForm {
    fn from(a: ExteriorMatrixArg) -> MatrixForm {
        match a {
            ExteriorMatrixArg::Thm => MatrixForm::Theorem,
            ExteriorMatrixArg::Paper => MatrixForm::PaperExterior,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the presentation data of an elementary group algebra.
    AlgebraInfo(AlgebraArgs),
    /// Check every module invariant and list the violations.
    ModuleValidate {
        #[arg(long)]
        module: PathBuf,
    },
    /// Deterministically generate a valid random module.
    ModuleRandom {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        seed: u64,
        /// Upper bound for the module dimension.
        #[arg(long)]
        dim: usize,
        /// Percent chance of parity-shifting each summand.
        #[arg(long, default_value_t = 50)]
        parity_split: u32,
    },
    /// Tensor product of two modules over the same algebra.
    Tensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Internal Hom of two modules over the same algebra.
    Hom {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Restrict a module along a standard pi-point representative.
    Restrict {
        #[arg(long)]
        module: PathBuf,
        /// Point literal, e.g. `"[0,1]"`.
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "thm")]
        exterior_matrix: ExteriorMatrixArg,
    },
    /// Enumerate the rank variety over F_{p^e}.
    RankVariety {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        ext_degree: u32,
        #[arg(long, default_value_t = variety::DEFAULT_BUDGET)]
        budget: u64,
        /// Evaluate points in parallel; output is identical either way.
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "thm")]
        exterior_matrix: ExteriorMatrixArg,
    },
    /// Projective support set: Frobenius images of nonzero variety points.
    Support {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        ext_degree: u32,
        #[arg(long, default_value_t = variety::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Projectivity detection: freeness oracle plus witness search.
    IsProjective {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        max_ext: u32,
        #[arg(long, default_value_t = variety::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Minimal free resolution out to the given length.
    Resolve {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        length: usize,
    },
    /// The Carlson module of a cohomology class of even degree.
    Carlson {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Cohomological degree (even, >= 2).
        #[arg(long)]
        degree: usize,
        /// Class coordinates on the resolution generators, e.g. `"[1,0,0]"`.
        #[arg(long)]
        xi: String,
    },
    /// Normalize a general (f, g) spec to a standard representative.
    PiNormalize {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Equivalence of two standard pi-point representatives.
    PiEquiv {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Run the full property battery; exits 0 only when every suite passes.
    CheckSuite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Symbolic generators of the prime ideal attached to a pi-point.
    PrimeIdeal {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        point: String,
    },
}

fn load_json(path: &PathBuf) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))
}

fn load_module(path: &PathBuf) -> Result<GradedModule, CliError> {
    io::module_from_value(&load_json(path)?)
}

fn variety_to_value(v: &RankVariety, form: MatrixForm) -> Value {
    let points: Vec<Value> = v.points.iter().map(|p| io::point_to_value(&v.field, p)).collect();
    let mut out = json!({
        "field": io::field_to_value(&v.field, true),
        "points": points,
    });
    if form == MatrixForm::PaperExterior {
        out["matrix_form"] = json!("paper");
    }
    out
}

/// Parallel twin of the sequential enumeration in the core crate; the merge
/// is sorted by encoding so scheduling cannot show in the output.
fn rank_variety_parallel(
    m: &GradedModule,
    e: u32,
    budget: u64,
    form: MatrixForm,
) -> Result<RankVariety, CliError> {
    let (m_big, field) = enumeration_module(m, e).map_err(CliError::domain)?;
    let len = coords_len(m.algebra());
    let total = enumeration_size(&field, len, budget).map_err(CliError::domain)?;
    let hits: Result<Vec<u64>, superpoint_core::Error> = (1..total)
        .into_par_iter()
        .map(|enc| {
            let coords = point_from_encoding(&field, len, enc);
            let a = PiPointRep { field: field.clone(), coords };
            variety::in_rank_variety(&m_big, &a, form).map(|hit| hit.then_some(enc))
        })
        .filter_map(|r| r.transpose())
        .collect();
    let mut encs = hits.map_err(CliError::domain)?;
    encs.sort_unstable();
    let mut points = vec![point_from_encoding(&field, len, 0)];
    points.extend(encs.into_iter().map(|enc| point_from_encoding(&field, len, enc)));
    Ok(RankVariety { field, coords_len: len, points })
}

pub fn run(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::AlgebraInfo(args) => {
            let (alg, _) = args.build()?;
            let value = json!({
                "algebra": io::algebra_to_value(&alg),
                "dim": alg.dim(),
                "generators": alg.generator_names(),
            });
            Ok(Output::ok(value))
        }
        Command::ModuleValidate { module } => {
            let m = load_module(&module)?;
            let violations = m.validate();
            let ok = violations.is_empty();
            let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            let value = json!({"ok": ok, "violations": list});
            Ok(Output { value, code: if ok { 0 } else { 1 } })
        }
        Command::ModuleRandom { algebra, seed, dim, parity_split } => {
            let (alg, field) = algebra.build()?;
            if dim == 0 {
                return Err(CliError::usage("--dim must be at least 1"));
            }
            let spec = RandomModuleSpec { seed, target_dim: dim, parity_split_percent: parity_split };
            let m = module_random(&alg, &field, &spec);
            Ok(Output::ok(io::module_to_value(&m)))
        }
        Command::Tensor { left, right } => {
            let a = load_module(&left)?;
            let b = load_module(&right)?;
            let t = a.tensor(&b).map_err(CliError::domain)?;
            Ok(Output::ok(io::module_to_value(&t)))
        }
        Command::Hom { left, right } => {
            let a = load_module(&left)?;
            let b = load_module(&right)?;
            let h = a.internal_hom(&b).map_err(CliError::domain)?;
            Ok(Output::ok(io::module_to_value(&h)))
        }
        Command::Restrict { module, point, exterior_matrix } => {
            let m = load_module(&module)?;
            let field = m.field().clone();
            let coords = io::point_from_str(&field, &point, coords_len(m.algebra()))?;
            let a = PiPointRep { field: field.clone(), coords };
            let r = standard_restriction(&m, &a).map_err(CliError::domain)?;
            let max_image = variety::max_image_test_form(
                &r,
                &field,
                m.algebra().p() as u64,
                exterior_matrix.into(),
            )
            .map_err(CliError::domain)?;
            let value = json!({
                "t": io::matrix_to_value(&field, &r.t),
                "tau": io::matrix_to_value(&field, &r.tau),
                "max_image": max_image,
            });
            Ok(Output::ok(value))
        }
        Command::RankVariety { module, ext_degree, budget, parallel, exterior_matrix } => {
            let m = load_module(&module)?;
            let form = exterior_matrix.into();
            let v = if parallel {
                rank_variety_parallel(&m, ext_degree, budget, form)?
            } else {
                rank_variety_form(&m, ext_degree, budget, form).map_err(CliError::domain)?
            };
            Ok(Output::ok(variety_to_value(&v, form)))
        }
        Command::Support { module, ext_degree, budget } => {
            let m = load_module(&module)?;
            let s = variety::support_set(&m, ext_degree, budget).map_err(CliError::domain)?;
            let points: Vec<Value> =
                s.points.iter().map(|p| io::point_to_value(&s.field, p)).collect();
            let value = json!({
                "field": io::field_to_value(&s.field, true),
                "projective_points": points,
            });
            Ok(Output::ok(value))
        }
        Command::IsProjective { module, max_ext, budget } => {
            let m = load_module(&module)?;
            let verdict = variety::is_projective(&m, max_ext, budget).map_err(CliError::domain)?;
            let value = match verdict {
                ProjectivityVerdict::Projective => json!({
                    "max_ext": max_ext,
                    "verdict": "projective",
                    "witness": Value::Null,
                    "ext_degree": Value::Null,
                }),
                ProjectivityVerdict::NotProjective { witness, ext_degree } => {
                    let wf = FiniteField::new(m.field().p() as u64, ext_degree, None)
                        .map_err(CliError::domain)?;
                    json!({
                        "max_ext": max_ext,
                        "verdict": "not_projective",
                        "witness": io::point_to_value(&wf, &witness),
                        "ext_degree": ext_degree,
                    })
                }
                ProjectivityVerdict::NoWitnessUpTo(e) => json!({
                    "max_ext": e,
                    "verdict": "no_witness_up_to",
                    "witness": Value::Null,
                    "ext_degree": Value::Null,
                }),
            };
            Ok(Output::ok(value))
        }
        Command::Resolve { module, length } => {
            let m = load_module(&module)?;
            let res = minimal_resolution(&m, length);
            Ok(Output::ok(io::resolution_to_value(&res)))
        }
        Command::Carlson { algebra, degree, xi } => {
            let (alg, field) = algebra.build()?;
            let k = GradedModule::trivial(&alg, &field);
            if degree == 0 || degree % 2 != 0 {
                return Err(CliError::domain(superpoint_core::Error::OddCohomologicalDegree));
            }
            let res = minimal_resolution(&k, degree);
            let coords = io::point_from_str(&field, &xi, res.betti(degree))?;
            let class = CohomologyClassRep { degree, coeffs: coords };
            let l = carlson_module(&res, &class).map_err(CliError::domain)?;
            Ok(Output::ok(io::module_to_value(&l)))
        }
        Command::PiNormalize { spec } => {
            let (alg, field, spec) = io::spec_from_value(&load_json(&spec)?)?;
            let b = coefficient_tuple(&alg, &field, &spec).map_err(CliError::domain)?;
            let rep = normalize(&alg, &field, &spec).map_err(CliError::domain)?;
            let value = json!({
                "coefficient_tuple": io::point_to_value(&field, &b),
                "point": io::point_to_value(&rep.field, &rep.coords),
                "field": io::field_to_value(&rep.field, true),
            });
            Ok(Output::ok(value))
        }
        Command::PiEquiv { algebra, a, b } => {
            let (alg, field) = algebra.build()?;
            let len = coords_len(&alg);
            let pa = PiPointRep { field: field.clone(), coords: io::point_from_str(&field, &a, len)? };
            let pb = PiPointRep { field: field.clone(), coords: io::point_from_str(&field, &b, len)? };
            let eq = equivalent(&alg, &pa, &pb).map_err(CliError::domain)?;
            Ok(Output::ok(json!({"equivalent": eq})))
        }
        Command::PrimeIdeal { algebra, point } => {
            let (alg, field) = algebra.build()?;
            let coords = io::point_from_str(&field, &point, coords_len(&alg))?;
            let a = PiPointRep { field, coords };
            let gens =
                superpoint_core::prime_ideal_generators(&alg, &a).map_err(CliError::domain)?;
            Ok(Output::ok(json!({"generators": gens})))
        }
        Command::CheckSuite { seed } => {
            let results = suite::run_all(seed);
            let ok = results.iter().all(|r| r.passed);
            let mut suites = serde_json::Map::new();
            for r in &results {
                suites.insert(r.name.clone(), json!({"passed": r.passed, "detail": r.detail}));
            }
            let value = json!({"ok": ok, "suites": Value::Object(suites)});
            Ok(Output { value, code: if ok { 0 } else { 1 } })
        }
    }
}
