//! The `cmvar` command line front end: JSON in, JSON out, one subcommand
//! per library operation. Exit codes: 0 success, 2 malformed input, 3
//! domain errors surfaced from the library, 4 incomplete solver results.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use cmvar_core::algebras::{
    associator, oct_herm_det2, oct_herm_det3, oct_mul, quat_mul, sigma_map, HyperHermitianGram,
    OctHermitian3, Octonion, Quaternion,
};
use cmvar_core::distances::{
    cayley_from_configuration, cayley_from_gram, cayley_matrix, embed, gram_from_cayley,
    rank_det_check, realizability, CayleyVector, Configuration, GramForm,
};
use cmvar_core::lorentz::{cone_classify, hyperbolic_distance, lorentz_l};
use cmvar_core::polygons::{
    is_admissible, polygon_space_dimension, standardize, torus_point, wall_report,
    EdgeLengthVector,
};
use cmvar_core::rigidity::{
    enumerate_realizations, is_laman, realization_bound, LinkageSpec, SolverOptions,
};
use cmvar_core::varieties::{
    defining_minors, dual, evaluate_minors, invariants, Family, MinorSource, VarietyId,
};

#[derive(Parser)]
#[command(
    name = "cmvar",
    version,
    about = "Distance geometry, determinantal variety invariants, and linkage realization tools"
)]
struct Cli {
    /// Numerical tolerance threaded to every predicate.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Read the input document from this file instead of stdin.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Accepted for compatibility; JSON is the only output format.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvertTarget {
    Cayley,
    Gram,
    Bordered,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum FamilyArg {
    #[value(alias = "r")]
    R,
    #[value(alias = "c")]
    C,
    #[value(alias = "h")]
    H,
    #[value(alias = "o")]
    O,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::R => Family::R,
            FamilyArg::C => Family::C,
            FamilyArg::H => Family::H,
            FamilyArg::O => Family::O,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MinorSourceArg {
    Gram,
    Cayley,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraOp {
    Qmul,
    Qconj,
    Qnorm,
    Qblock,
    Omul,
    Oconj,
    Onorm,
    Associator,
    Det2,
    Det3,
    Sigma,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between squared-distance, Gram, and bordered-matrix forms.
    Convert {
        #[arg(long, value_enum)]
        to: ConvertTarget,
    },
    /// Recover a point configuration in R^d from squared distances.
    Embed {
        #[arg(long)]
        d: usize,
    },
    /// Ranks and determinants of the bordered and Gram matrices, with the
    /// rank and determinant identities checked.
    Rank,
    /// Positive-semidefiniteness test of the Gram form with certificate.
    Realizable,
    /// Closed-form invariants of one determinantal family member.
    Variety {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Invariants of the projective dual within the family.
    Dual {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// The defining minor system of a real family member; with --eval,
    /// evaluate it on a matrix read from input.
    Minors {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        source: MinorSourceArg,
        #[arg(long)]
        eval: bool,
    },
    /// Lorentz form value and cone membership of Gram forms.
    Cone {
        /// Also report the hyperbolic distance (needs two matrices in the
        /// negative cone).
        #[arg(long)]
        hyperbolic: bool,
    },
    /// Pebble-game Laman test of a graph.
    Laman,
    /// Upper bound on the realization count of a generic n-vertex linkage.
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// Enumerate planar realizations of a linkage modulo rigid motions
    /// and reflection.
    Realize {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of solver starts.
        #[arg(long)]
        budget: Option<u64>,
        /// Accept non-Laman linkages (positive-dimensional fibers give
        /// non-generic warnings instead of errors).
        #[arg(long)]
        allow_non_laman: bool,
    },
    /// Standardize polygon edge lengths and scan the wall arrangement.
    Polygon {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
    },
    /// Evaluate the octic torus polynomial at a point or at torus angles.
    Octic {
        #[arg(long)]
        r: f64,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        point: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, default_value_t = 0.0)]
        phi1: f64,
        #[arg(long, default_value_t = 0.0)]
        phi2: f64,
    },
    /// Quaternion and octonion arithmetic, block representations, the
    /// skew transform of quaternionic Gram matrices, and octonionic
    /// Hermitian determinants.
    Algebra {
        #[arg(long, value_enum)]
        op: AlgebraOp,
    },
}

enum CmdError {
    Input(String),
    Domain(String),
}

fn input_err(e: impl Display) -> CmdError {
    CmdError::Input(e.to_string())
}

fn domain_err(e: impl Display) -> CmdError {
    CmdError::Domain(e.to_string())
}

struct Outcome {
    payload: String,
    diagnostics: Vec<String>,
    incomplete: bool,
}

fn ok(value: &impl Serialize) -> Result<Outcome, CmdError> {
    Ok(Outcome {
        payload: serde_json::to_string(value).map_err(domain_err)?,
        diagnostics: Vec::new(),
        incomplete: false,
    })
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CmdError> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CmdError::Input(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(input_err)?;
            Ok(buf)
        }
    }
}

fn parse_input<T: serde::de::DeserializeOwned>(path: &Option<PathBuf>) -> Result<T, CmdError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(input_err)
}

#[derive(Deserialize)]
struct RawCayley {
    n: usize,
    s: BTreeMap<String, f64>,
}

fn parse_pair_key(key: &str) -> Result<(usize, usize), CmdError> {
    let mut parts = key.split(',');
    let pair = parts
        .next()
        .zip(parts.next())
        .filter(|_| parts.next().is_none())
        .and_then(|(a, b)| {
            a.trim()
                .parse::<usize>()
                .ok()
                .zip(b.trim().parse::<usize>().ok())
        });
    pair.ok_or_else(|| CmdError::Input(format!("key {key:?} is not of the form \"i,j\"")))
}

fn cayley_from_raw(raw: RawCayley) -> Result<CayleyVector, CmdError> {
    let mut entries = BTreeMap::new();
    for (key, value) in raw.s {
        entries.insert(parse_pair_key(&key)?, value);
    }
    CayleyVector::new(raw.n, entries).map_err(domain_err)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DistanceInput {
    Cayley(RawCayley),
    Config { dim: usize, points: Vec<Vec<f64>> },
    Gram { gram: Vec<Vec<f64>> },
}

fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>, CmdError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(CmdError::Input(
            "matrix rows must be nonempty and of equal length".to_string(),
        ));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |r, c| rows[r][c]))
}

fn rows_from_matrix(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

fn cayley_from_any(input: DistanceInput) -> Result<CayleyVector, CmdError> {
    match input {
        DistanceInput::Cayley(raw) => cayley_from_raw(raw),
        DistanceInput::Config { dim, points } => {
            let cfg = Configuration::new(dim, points).map_err(domain_err)?;
            cayley_from_configuration(&cfg).map_err(domain_err)
        }
        DistanceInput::Gram { gram } => {
            let mat = matrix_from_rows(&gram)?;
            let form = GramForm::from_matrix(mat).map_err(domain_err)?;
            cayley_from_gram(&form).map_err(domain_err)
        }
    }
}

#[derive(Deserialize)]
struct RawLinkage {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    sigma: BTreeMap<String, f64>,
}

fn linkage_from_raw(raw: RawLinkage) -> Result<LinkageSpec, CmdError> {
    let mut sigma = BTreeMap::new();
    for (key, value) in raw.sigma {
        sigma.insert(parse_pair_key(&key)?, value);
    }
    LinkageSpec::new(raw.n, raw.edges, sigma).map_err(domain_err)
}

fn cx(z: Complex<f64>) -> [f64; 2] {
    [z.re + 0.0, z.im + 0.0]
}

fn complex_rows(m: &DMatrix<Complex<f64>>) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| cx(m[(r, c)])).collect())
        .collect()
}

fn quat_components(x: &Quaternion<f64>) -> [f64; 4] {
    [x.a, x.b, x.c, x.d]
}

fn quat_from_components(v: [f64; 4]) -> Quaternion<f64> {
    Quaternion::new(v[0], v[1], v[2], v[3])
}

fn oct_components(x: &Octonion<f64>) -> [[f64; 4]; 2] {
    [quat_components(&x.x1), quat_components(&x.x2)]
}

fn oct_from_components(v: [[f64; 4]; 2]) -> Octonion<f64> {
    Octonion::new(quat_from_components(v[0]), quat_from_components(v[1]))
}

#[derive(Serialize)]
struct VarietyPayload {
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    ambient: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<i128>,
    dual_d: usize,
}

fn variety_payload(v: VarietyId) -> Result<VarietyPayload, CmdError> {
    let inv = invariants(v);
    let genus = match inv.sectional_genus {
        Some(g) => Some(g.to_i128().ok_or_else(|| {
            CmdError::Domain("sectional genus exceeds the JSON numeric range".to_string())
        })?),
        None => None,
    };
    Ok(VarietyPayload {
        dim: inv.dim,
        ambient: inv.ambient_dim,
        degree: inv.degree.map(|d| d.to_string()),
        genus,
        dual_d: inv.dual_d,
    })
}

fn configure_threads() -> Result<(), CmdError> {
    if let Ok(raw) = std::env::var("CMVAR_THREADS") {
        let threads: usize = raw
            .parse()
            .map_err(|_| CmdError::Input(format!("CMVAR_THREADS={raw:?} is not a thread count")))?;
        if threads == 0 {
            return Err(CmdError::Input(
                "CMVAR_THREADS must be at least 1".to_string(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(domain_err)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, CmdError> {
    let tol = cli.tol;
    match cli.command {
        Command::Convert { to } => {
            let input: DistanceInput = parse_input(&cli.input)?;
            let s = cayley_from_any(input)?;
            match to {
                ConvertTarget::Cayley => ok(&s),
                ConvertTarget::Gram => {
                    #[derive(Serialize)]
                    struct Payload {
                        gram: Vec<Vec<f64>>,
                    }
                    ok(&Payload {
                        gram: rows_from_matrix(gram_from_cayley(&s).matrix()),
                    })
                }
                ConvertTarget::Bordered => {
                    #[derive(Serialize)]
                    struct Payload {
                        bordered: Vec<Vec<f64>>,
                    }
                    ok(&Payload {
                        bordered: rows_from_matrix(cayley_matrix(&s).matrix()),
                    })
                }
            }
        }
        Command::Embed { d } => {
            let input: DistanceInput = parse_input(&cli.input)?;
            let s = cayley_from_any(input)?;
            let cfg = embed(&s, d, tol).map_err(domain_err)?;
            ok(&cfg)
        }
        Command::Rank => {
            let input: DistanceInput = parse_input(&cli.input)?;
            let s = cayley_from_any(input)?;
            let report = rank_det_check(&s, tol).map_err(domain_err)?;
            ok(&report)
        }
        Command::Realizable => {
            let input: DistanceInput = parse_input(&cli.input)?;
            let s = cayley_from_any(input)?;
            ok(&realizability(&s, tol))
        }
        Command::Variety { family, d, n } => {
            let v = VarietyId::new(family.into(), d, n).map_err(domain_err)?;
            ok(&variety_payload(v)?)
        }
        Command::Dual { family, d, n } => {
            let v = VarietyId::new(family.into(), d, n).map_err(domain_err)?;
            let w = dual(v).map_err(domain_err)?;
            #[derive(Serialize)]
            struct Payload {
                family: Family,
                d: usize,
                n: usize,
                #[serde(flatten)]
                invariants: VarietyPayload,
            }
            ok(&Payload {
                family: w.family,
                d: w.d,
                n: w.n,
                invariants: variety_payload(w)?,
            })
        }
        Command::Minors {
            family,
            d,
            n,
            source,
            eval,
        } => {
            let v = VarietyId::new(family.into(), d, n).map_err(domain_err)?;
            let source = match source {
                MinorSourceArg::Gram => MinorSource::Gram,
                MinorSourceArg::Cayley => MinorSource::Cayley,
            };
            let system = defining_minors(v, source).map_err(domain_err)?;
            if eval {
                #[derive(Deserialize)]
                struct MatrixInput {
                    matrix: Vec<Vec<f64>>,
                }
                let input: MatrixInput = parse_input(&cli.input)?;
                let mat = matrix_from_rows(&input.matrix)?;
                let report = evaluate_minors(&system, &mat, tol).map_err(domain_err)?;
                ok(&report)
            } else {
                #[derive(Serialize)]
                struct Payload<'a> {
                    source: MinorSource,
                    size: usize,
                    count: usize,
                    minors: &'a [cmvar_core::varieties::Minor],
                }
                ok(&Payload {
                    source: system.source,
                    size: system.size,
                    count: system.minors.len(),
                    minors: &system.minors,
                })
            }
        }
        Command::Cone { hyperbolic } => {
            #[derive(Deserialize)]
            struct ConeInput {
                a: Vec<Vec<f64>>,
                #[serde(default)]
                b: Option<Vec<Vec<f64>>>,
            }
            let input: ConeInput = parse_input(&cli.input)?;
            let a = GramForm::from_matrix(matrix_from_rows(&input.a)?).map_err(domain_err)?;
            match input.b {
                None => {
                    if hyperbolic {
                        return Err(CmdError::Input(
                            "--hyperbolic needs two matrices \"a\" and \"b\"".to_string(),
                        ));
                    }
                    ok(&cone_classify(&a, tol))
                }
                Some(b_rows) => {
                    let b =
                        GramForm::from_matrix(matrix_from_rows(&b_rows)?).map_err(domain_err)?;
                    let value = lorentz_l(&a, &b).map_err(domain_err)?;
                    #[derive(Serialize)]
                    struct Payload {
                        value: f64,
                        #[serde(skip_serializing_if = "Option::is_none")]
                        hyperbolic_distance: Option<f64>,
                    }
                    let distance = if hyperbolic {
                        Some(hyperbolic_distance(&a, &b, tol).map_err(domain_err)?)
                    } else {
                        None
                    };
                    ok(&Payload {
                        value,
                        hyperbolic_distance: distance,
                    })
                }
            }
        }
        Command::Laman => {
            let raw: RawLinkage = parse_input(&cli.input)?;
            let report = is_laman(raw.n, &raw.edges).map_err(domain_err)?;
            ok(&report)
        }
        Command::Bound { n } => {
            let bound = realization_bound(n).map_err(domain_err)?;
            #[derive(Serialize)]
            struct Payload {
                n: usize,
                bound: String,
            }
            ok(&Payload {
                n,
                bound: bound.to_string(),
            })
        }
        Command::Realize {
            seed,
            budget,
            allow_non_laman,
        } => {
            let raw: RawLinkage = parse_input(&cli.input)?;
            let spec = linkage_from_raw(raw)?;
            let opts = SolverOptions {
                seed,
                budget,
                require_laman: !allow_non_laman,
                ..SolverOptions::default()
            };
            let set = enumerate_realizations(&spec, &opts).map_err(domain_err)?;
            #[derive(Serialize)]
            struct Payload<'a> {
                count: usize,
                bound: String,
                lower_bound_only: bool,
                non_generic_warning: bool,
                reflections_quotiented: bool,
                solver_stats: &'a cmvar_core::rigidity::SolverStats,
                representatives: &'a [Configuration],
            }
            let mut outcome = ok(&Payload {
                count: set.count,
                bound: set.bound.to_string(),
                lower_bound_only: set.lower_bound_only,
                non_generic_warning: set.non_generic_warning,
                reflections_quotiented: set.reflections_quotiented,
                solver_stats: &set.solver_stats,
                representatives: &set.representatives,
            })?;
            if set.non_generic_warning {
                outcome.diagnostics.push(
                    "a representative has a rank-deficient edge Jacobian; the linkage is not \
                     generic and the class count may not be isolated"
                        .to_string(),
                );
            }
            if set.lower_bound_only {
                outcome.diagnostics.push(format!(
                    "solver budget exhausted after {} starts; the count is a lower bound",
                    set.solver_stats.attempts
                ));
                outcome.incomplete = true;
            }
            Ok(outcome)
        }
        Command::Polygon { q } => {
            let lengths = EdgeLengthVector::new(q).map_err(domain_err)?;
            let standardized = standardize(&lengths);
            let report = wall_report(&standardized, tol).map_err(domain_err)?;
            #[derive(Serialize)]
            struct Payload {
                on_wall: bool,
                witnesses: Vec<Vec<i32>>,
                distance_to_nearest_wall: f64,
                dimension: usize,
                admissible: bool,
            }
            ok(&Payload {
                on_wall: report.on_wall,
                witnesses: report.witnesses,
                distance_to_nearest_wall: report.distance_to_nearest_wall,
                dimension: polygon_space_dimension(standardized.n()).map_err(domain_err)?,
                admissible: is_admissible(&standardized),
            })
        }
        Command::Octic {
            r,
            point,
            theta,
            phi1,
            phi2,
        } => match point {
            Some(coords) => {
                let [a, b, c, d]: [f64; 4] = coords.try_into().map_err(|v: Vec<f64>| {
                    CmdError::Input(format!("--point needs 4 coordinates, got {}", v.len()))
                })?;
                #[derive(Serialize)]
                struct Payload {
                    value: f64,
                }
                ok(&Payload {
                    value: cmvar_core::polygons::octic_value(a, b, c, d, r),
                })
            }
            None => {
                let p = torus_point(r, theta, phi1, phi2).map_err(domain_err)?;
                #[derive(Serialize)]
                struct Payload {
                    point: [f64; 4],
                    value: f64,
                }
                ok(&Payload {
                    point: p,
                    value: cmvar_core::polygons::octic_value(p[0], p[1], p[2], p[3], r),
                })
            }
        },
        Command::Algebra { op } => run_algebra(op, &cli.input, tol),
    }
}

fn run_algebra(op: AlgebraOp, input: &Option<PathBuf>, tol: f64) -> Result<Outcome, CmdError> {
    match op {
        AlgebraOp::Qmul => {
            #[derive(Deserialize)]
            struct In {
                x: [f64; 4],
                y: [f64; 4],
            }
            let v: In = parse_input(input)?;
            #[derive(Serialize)]
            struct Payload {
                product: [f64; 4],
            }
            ok(&Payload {
                product: quat_components(&quat_mul(
                    &quat_from_components(v.x),
                    &quat_from_components(v.y),
                )),
            })
        }
        AlgebraOp::Qconj => {
            #[derive(Deserialize)]
            struct In {
                x: [f64; 4],
            }
            let v: In = parse_input(input)?;
            #[derive(Serialize)]
            struct Payload {
                conjugate: [f64; 4],
            }
            ok(&Payload {
                conjugate: quat_components(&quat_from_components(v.x).conj()),
            })
        }
        AlgebraOp::Qnorm => {
            #[derive(Deserialize)]
            struct In {
                x: [f64; 4],
            }
            let v: In = parse_input(input)?;
            let x = quat_from_components(v.x);
            #[derive(Serialize)]
            struct Payload {
                norm: f64,
                norm_sqr: f64,
            }
            ok(&Payload {
                norm: x.norm(),
                norm_sqr: x.norm_sqr(),
            })
        }
        AlgebraOp::Qblock => {
            #[derive(Deserialize)]
            struct In {
                x: [f64; 4],
            }
            let v: In = parse_input(input)?;
            let block = quat_from_components(v.x).complex_block();
            #[derive(Serialize)]
            struct Payload {
                block: [[[f64; 2]; 2]; 2],
            }
            ok(&Payload {
                block: [
                    [cx(block[0][0]), cx(block[0][1])],
                    [cx(block[1][0]), cx(block[1][1])],
                ],
            })
        }
        AlgebraOp::Omul => {
            #[derive(Deserialize)]
            struct In {
                x: [[f64; 4]; 2],
                y: [[f64; 4]; 2],
            }
            let v: In = parse_input(input)?;
            #[derive(Serialize)]
            struct Payload {
                product: [[f64; 4]; 2],
            }
            ok(&Payload {
                product: oct_components(&oct_mul(
                    &oct_from_components(v.x),
                    &oct_from_components(v.y),
                )),
            })
        }
        AlgebraOp::Oconj => {
            #[derive(Deserialize)]
            struct In {
                x: [[f64; 4]; 2],
            }
            let v: In = parse_input(input)?;
            #[derive(Serialize)]
            struct Payload {
                conjugate: [[f64; 4]; 2],
            }
            ok(&Payload {
                conjugate: oct_components(&oct_from_components(v.x).conj()),
            })
        }
        AlgebraOp::Onorm => {
            #[derive(Deserialize)]
            struct In {
                x: [[f64; 4]; 2],
            }
            let v: In = parse_input(input)?;
            let x = oct_from_components(v.x);
            #[derive(Serialize)]
            struct Payload {
                norm: f64,
                norm_sqr: f64,
            }
            ok(&Payload {
                norm: x.norm(),
                norm_sqr: x.norm_sqr(),
            })
        }
        AlgebraOp::Associator => {
            #[derive(Deserialize)]
            struct In {
                x: [[f64; 4]; 2],
                y: [[f64; 4]; 2],
                z: [[f64; 4]; 2],
            }
            let v: In = parse_input(input)?;
            let assoc = associator(
                &oct_from_components(v.x),
                &oct_from_components(v.y),
                &oct_from_components(v.z),
            );
            #[derive(Serialize)]
            struct Payload {
                associator: [[f64; 4]; 2],
                norm: f64,
            }
            ok(&Payload {
                associator: oct_components(&assoc),
                norm: assoc.norm(),
            })
        }
        AlgebraOp::Det2 => {
            #[derive(Deserialize)]
            struct In {
                alpha: f64,
                beta: f64,
                x: [[f64; 4]; 2],
            }
            let v: In = parse_input(input)?;
            #[derive(Serialize)]
            struct Payload {
                det: f64,
            }
            ok(&Payload {
                det: oct_herm_det2(v.alpha, v.beta, &oct_from_components(v.x)),
            })
        }
        AlgebraOp::Det3 => {
            #[derive(Deserialize)]
            struct In {
                diag: [f64; 3],
                x: [[f64; 4]; 2],
                y: [[f64; 4]; 2],
                z: [[f64; 4]; 2],
            }
            let v: In = parse_input(input)?;
            let m = OctHermitian3::new(
                v.diag,
                oct_from_components(v.x),
                oct_from_components(v.y),
                oct_from_components(v.z),
            );
            #[derive(Serialize)]
            struct Payload {
                det: f64,
            }
            ok(&Payload {
                det: oct_herm_det3(&m),
            })
        }
        AlgebraOp::Sigma => {
            #[derive(Deserialize)]
            struct In {
                entries: Vec<Vec<[f64; 4]>>,
            }
            let v: In = parse_input(input)?;
            let entries: Vec<Vec<Quaternion<f64>>> = v
                .entries
                .iter()
                .map(|row| row.iter().map(|&q| quat_from_components(q)).collect())
                .collect();
            let gram = HyperHermitianGram::from_entries(entries).map_err(domain_err)?;
            let skew = sigma_map(&gram, tol).map_err(domain_err)?;
            let rank = cmvar_core::algebras::pfaffian_rank(&skew, tol).map_err(domain_err)?;
            #[derive(Serialize)]
            struct Payload {
                size: usize,
                matrix: Vec<Vec<[f64; 2]>>,
                rank: usize,
                quaternionic_rank: usize,
            }
            ok(&Payload {
                size: skew.size(),
                matrix: complex_rows(skew.matrix()),
                rank,
                quaternionic_rank: gram.quaternionic_rank(tol),
            })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(outcome) => {
            for d in &outcome.diagnostics {
                eprintln!("warning: {d}");
            }
            println!("{}", outcome.payload);
            std::process::exit(if outcome.incomplete { 4 } else { 0 });
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CmdError::Domain(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
    }
}
