use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use greengrade_core::a0::{
    a0_cartan, a0_global_dimension, extract_a0, recover_quiver, simple_projective_dimensions,
    trivial_extension_check, A0Error,
};
use greengrade_core::cartan::{
    cartan_closed_form, cartan_determinant, cartan_from_paths, CartanError,
};
use greengrade_core::corpus::random_tree;
use greengrade_core::exactmath::{format_rational, Field, Fp32003};
use greengrade_core::green::{resolve_start, GreenNumbering};
use greengrade_core::hm::{hm_decompose, hm_inv, hm_mul, DecompositionOrder, HmElement};
use greengrade_core::quiver::{degrees_by_id, green_graded_quiver, GradedQuiver, RelationSet};
use greengrade_core::regrading::{
    apply_shifts, grading_from_ids, morita_solve, positive_shifts, ShiftVector,
};
use greengrade_core::render;
use greengrade_core::tree::BrauerTree;
use greengrade_core::verify::verify_tree;

#[derive(Parser)]
#[command(
    name = "greengrade",
    version,
    about = "Gradings of Brauer tree algebras from Green's walk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TreeArgs {
    /// Brauer tree in JSON
    tree: PathBuf,
    /// Start edge at the exceptional vertex
    #[arg(long)]
    start: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Green numbering
    Walk(TreeArgs),
    /// Print the graded quiver
    Grade {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, group = "format")]
        dot: bool,
        #[arg(long, group = "format")]
        json: bool,
        #[arg(long, group = "format")]
        latex: bool,
    },
    /// Print the graded Cartan matrix
    Cartan {
        #[command(flatten)]
        tree: TreeArgs,
        /// Enumerate paths instead of using the closed form
        #[arg(long, conflicts_with = "closed")]
        paths: bool,
        #[arg(long)]
        closed: bool,
        /// Also print and check the determinant
        #[arg(long)]
        det: bool,
        #[arg(long)]
        latex: bool,
        /// Show composition factors along columns instead of rows
        #[arg(long)]
        transpose: bool,
    },
    /// Describe the degree-zero subalgebra
    A0 {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        recover: bool,
        #[arg(long)]
        cartan: bool,
        #[arg(long)]
        gldim: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check T(A0) against the algebra of a Brauer line
    Trivext { tree: PathBuf },
    /// Shift the grading by a vector indexed by Green index
    Shifts {
        #[command(flatten)]
        tree: TreeArgs,
        /// n1,...,ne
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "positive",
            required_unless_present = "positive"
        )]
        vector: Vec<i64>,
        /// Use n_i = 1 + level(i)
        #[arg(long)]
        positive: bool,
    },
    /// Solve for a shift vector between two gradings
    Morita {
        #[command(flatten)]
        tree: TreeArgs,
        /// Grading as {"arrow-id": degree}
        #[arg(long)]
        other: PathBuf,
        #[arg(long)]
        rescale: bool,
    },
    /// Arithmetic in the group H_m
    Hm {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = FieldChoice::Rational)]
        field: FieldChoice,
        #[command(subcommand)]
        op: HmOp,
    },
    /// Run every cross-check on a tree
    Verify {
        tree: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random Brauer tree
    Random {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 1)]
        multiplicity: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldChoice {
    Rational,
    F32003,
}

#[derive(Subcommand)]
enum HmOp {
    /// a ∗ b
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Inv {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    Decompose {
        #[arg(allow_hyphen_values = true)]
        a: String,
        /// Put the torus factor first: a = t ∗ u
        #[arg(long)]
        torus_first: bool,
    },
}

/// How a command ended.
enum Failure {
    /// A check did not hold.
    Check(String),
    /// Bad input.
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn load_tree(path: &Path) -> Result<BrauerTree, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    BrauerTree::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

struct Loaded {
    tree: BrauerTree,
    numbering: GreenNumbering,
    graded: GradedQuiver,
    relations: RelationSet,
}

fn load(args: &TreeArgs) -> Result<Loaded, Failure> {
    let tree = load_tree(&args.tree)?;
    let start = resolve_start(&tree, args.start.as_deref()).map_err(usage)?;
    let numbering = greengrade_core::green::green_number(&tree, start).map_err(usage)?;
    let (graded, relations) = green_graded_quiver(&tree, &numbering);
    Ok(Loaded {
        tree,
        numbering,
        graded,
        relations,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Walk(args) => {
            let l = load(&args)?;
            print!("{}", render::walk_table(&l.tree, &l.numbering));
            Ok(())
        }
        Command::Grade {
            tree,
            dot,
            json,
            latex,
        } => {
            let l = load(&tree)?;
            let (t, n, g) = (&l.tree, &l.numbering, &l.graded);
            if dot {
                print!("{}", render::graded_quiver_dot(t, n, g));
            } else if json {
                println!("{:#}", render::graded_quiver_json(t, n, g, &l.relations));
            } else if latex {
                print!("{}", render::graded_quiver_latex(t, n, g));
            } else {
                print!("{}", render::graded_quiver_text(t, n, g));
            }
            Ok(())
        }
        Command::Cartan {
            tree,
            paths,
            closed: _,
            det,
            latex,
            transpose,
        } => cartan(&load(&tree)?, paths, det, latex, transpose),
        Command::A0 {
            tree,
            recover,
            cartan,
            gldim,
            json,
        } => a0(&load(&tree)?, recover, cartan, gldim, json),
        Command::Trivext { tree } => {
            let t = load_tree(&tree)?;
            let report = trivial_extension_check(&t).map_err(|e| match e {
                A0Error::Unsupported(_) => usage(e),
                other => Failure::Check(other.to_string()),
            })?;
            println!("dim A0\t{}", report.a0_dim);
            println!("dim T(A0)\t{}", report.extension_dim);
            println!("dim A\t{}", report.algebra_dim);
            println!("rank\t{}", report.rank);
            println!("products checked\t{}", report.products_checked);
            println!("product failures\t{}", report.product_failures);
            println!("grading failures\t{}", report.grading_failures);
            if report.passed() {
                println!("isomorphism: PASS");
                Ok(())
            } else {
                Err(Failure::Check("T(A0) is not isomorphic to A".into()))
            }
        }
        Command::Shifts {
            tree,
            vector,
            positive,
        } => {
            let l = load(&tree)?;
            let n = if positive {
                let a = extract_a0(&l.graded, &l.relations)
                    .map_err(|e| Failure::Check(e.to_string()))?;
                positive_shifts(&a)
            } else {
                ShiftVector(vector)
            };
            let shifted = apply_shifts(&l.graded, &n).map_err(usage)?;
            let by_id = degrees_by_id(&l.tree, &l.numbering, &shifted);
            println!(
                "{}",
                serde_json::to_string_pretty(&by_id).expect("serializable")
            );
            Ok(())
        }
        Command::Morita {
            tree,
            other,
            rescale,
        } => {
            let l = load(&tree)?;
            let text = std::fs::read_to_string(&other)
                .map_err(|e| usage(format!("{}: {e}", other.display())))?;
            let degrees: BTreeMap<String, i64> = serde_json::from_str(&text)
                .map_err(|e| usage(format!("{}: {e}", other.display())))?;
            let target =
                grading_from_ids(&l.tree, &l.numbering, &l.graded, &degrees).map_err(usage)?;
            match morita_solve(&l.graded, &target, rescale) {
                Some(sol) => {
                    println!("scale\t{}", sol.scale_string());
                    for (i, s) in sol.shifts.0.iter().enumerate() {
                        println!("{}\t{s}", l.tree.edge_id(l.numbering.edge(i + 1)));
                    }
                    Ok(())
                }
                None => Err(Failure::Check(
                    "no shift vector relates the two gradings".into(),
                )),
            }
        }
        Command::Hm { m, field, op } => match field {
            FieldChoice::Rational => hm::<BigRational>(m, op, |s| s.parse().ok(), format_rational),
            FieldChoice::F32003 => hm::<Fp32003>(
                m,
                op,
                |s| s.parse::<i64>().ok().map(Fp32003::new),
                |x| x.to_string(),
            ),
        },
        Command::Verify { tree, json } => {
            let t = load_tree(&tree)?;
            let report = verify_tree(&t);
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                );
            } else {
                print!("{}", report.to_text());
            }
            let failed: Vec<&str> = report.failures().map(|c| c.name).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Check(failed.join(", ")))
            }
        }
        Command::Random {
            seed,
            edges,
            multiplicity,
        } => {
            if edges == 0 || multiplicity == 0 {
                return Err(usage("edges and multiplicity must be positive"));
            }
            let seed = seed.unwrap_or_else(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map_or(0, |d| d.as_nanos() as u64)
            });
            eprintln!("seed: {seed}");
            println!("{}", random_tree(seed, edges, multiplicity).to_json());
            Ok(())
        }
    }
}

fn cartan(l: &Loaded, paths: bool, det: bool, latex: bool, transpose: bool) -> Outcome {
    let m = l.tree.multiplicity();
    let matrix = if paths {
        cartan_from_paths(&l.graded, &l.relations).map_err(|e| Failure::Check(e.to_string()))?
    } else {
        cartan_closed_form(&l.graded, m)
    };
    let shown = if transpose {
        matrix.transpose()
    } else {
        matrix.clone()
    };
    if latex {
        print!("{}", render::matrix_latex(&shown, render::laurent_latex));
    } else {
        print!("{}", render::matrix_text(&shown, |p| p.to_string()));
    }
    if det {
        match cartan_determinant(&matrix, m) {
            Ok(d) => println!("det = {d}"),
            Err(CartanError::DeterminantMismatch {
                determinant,
                residual,
            }) => {
                println!("det = {determinant}");
                return Err(Failure::Check(format!("determinant residual {residual}")));
            }
            Err(e) => return Err(Failure::Check(e.to_string())),
        }
    }
    Ok(())
}

fn a0(l: &Loaded, recover: bool, cartan: bool, gldim: bool, as_json: bool) -> Outcome {
    let a = extract_a0(&l.graded, &l.relations).map_err(|e| Failure::Check(e.to_string()))?;
    let label = |v: usize| l.tree.edge_id(l.numbering.edge(v)).to_string();
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&a).expect("serializable")
        );
    } else {
        for (k, c) in a.components.iter().enumerate() {
            let members: Vec<String> = c
                .vertices
                .iter()
                .map(|&v| format!("{}@{}", label(v), a.level(v)))
                .collect();
            println!(
                "component {}: root {}; vertices {}",
                k + 1,
                label(c.root),
                members.join(" ")
            );
            for &x in &c.arrows {
                let arrow = &a.arrows[x];
                println!("  arrow {}->{}", label(arrow.source), label(arrow.target));
            }
            for &(x, y) in a.zero.iter().filter(|(x, _)| c.arrows.contains(x)) {
                let (p, q) = (&a.arrows[x], &a.arrows[y]);
                println!(
                    "  zero {}->{}->{}",
                    label(p.source),
                    label(p.target),
                    label(q.target)
                );
            }
        }
    }
    if recover {
        let rec = recover_quiver(&a).map_err(|e| Failure::Check(e.to_string()))?;
        for (v, w) in &rec.added {
            println!("added {}->{}", label(*v), label(*w));
        }
        if rec.graded != l.graded || rec.relations != l.relations {
            return Err(Failure::Check(
                "recovered quiver differs from the original".into(),
            ));
        }
        println!("recovery: PASS");
    }
    if cartan {
        let c = a0_cartan(&a);
        print!("{}", render::matrix_text(&c, |x| x.to_string()));
        println!(
            "det = {}",
            c.determinant().map_err(|e| Failure::Check(e.to_string()))?
        );
    }
    if gldim {
        let pds = simple_projective_dimensions(&a);
        let gl = a0_global_dimension(&a);
        if as_json {
            println!(
                "{}",
                json!({ "projective_dimensions": pds, "global_dimension": gl, "max_level": a.max_level() })
            );
        } else {
            println!("gl.dim = {gl} (max level {})", a.max_level());
        }
        if gl > a.max_level() {
            return Err(Failure::Check(
                "global dimension exceeds the level bound".into(),
            ));
        }
    }
    Ok(())
}

fn parse_element<F: Field>(
    text: &str,
    m: usize,
    parse: &impl Fn(&str) -> Option<F>,
) -> Result<HmElement<F>, Failure> {
    let coeffs = text
        .split(',')
        .map(|s| parse(s.trim()).ok_or_else(|| usage(format!("cannot parse `{s}`"))))
        .collect::<Result<Vec<F>, _>>()?;
    if coeffs.len() != m {
        return Err(usage(format!(
            "`{text}` has {} coordinates, expected {m}",
            coeffs.len()
        )));
    }
    HmElement::new(coeffs).map_err(usage)
}

fn hm<F: Field>(
    m: usize,
    op: HmOp,
    parse: impl Fn(&str) -> Option<F>,
    show: impl Fn(&F) -> String,
) -> Outcome {
    if m == 0 {
        return Err(usage("m must be positive"));
    }
    let show_all = |x: &HmElement<F>| x.coeffs().iter().map(&show).collect::<Vec<_>>().join(",");
    match op {
        HmOp::Mul { a, b } => {
            let (a, b) = (parse_element(&a, m, &parse)?, parse_element(&b, m, &parse)?);
            println!("{}", show_all(&hm_mul(&a, &b).map_err(usage)?));
        }
        HmOp::Inv { a } => {
            let a = parse_element(&a, m, &parse)?;
            let inv = hm_inv(&a).map_err(usage)?;
            if hm_mul(&inv, &a).map_err(usage)? != HmElement::identity(m) {
                return Err(Failure::Check(
                    "inverse does not multiply to the identity".into(),
                ));
            }
            println!("{}", show_all(&inv));
        }
        HmOp::Decompose { a, torus_first } => {
            let a = parse_element(&a, m, &parse)?;
            let order = if torus_first {
                DecompositionOrder::TorusUnipotent
            } else {
                DecompositionOrder::UnipotentTorus
            };
            let d = hm_decompose(&a, order).map_err(usage)?;
            println!("torus\t{}", show_all(&d.torus));
            println!("unipotent\t{}", show_all(&d.unipotent));
        }
    }
    Ok(())
}
