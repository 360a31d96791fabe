mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use momentcone::models::{load_model, DivisorClass, ModelError, VarietyModel, CATALOG};
use momentcone::polyhedra::{Cone, Polytope};
use momentcone::semigroup::{
    build_JY_KY, build_J_K, build_tilde_sets, enumerate_moment_semigroup, moment_cone, moment_polytope, okounkov_body,
    okounkov_cone,
};
use momentcone::verification::{run_check, Report, CHECKS, DEFAULT_SEED, REPORT_HEADER};

use output::{moment_point, strings, ComputeDocument, ModelList, ModelSummary, SliceDocument, VerifyDocument};

const OUTPUT_DIR_VAR: &str = "MOMENTCONE_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "momentcone",
    version,
    about = "Moment semigroups, Okounkov cones and their verification on spherical varieties",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.\n\
                  Without --output, compute and slice write to $MOMENTCONE_OUTPUT_DIR when set, else stdout."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Semigroup,
    Cone,
    MomentCone,
    #[value(name = "K")]
    K,
    #[value(name = "KY")]
    Ky,
    #[value(name = "Ktilde")]
    Ktilde,
    #[value(name = "KtildeY")]
    KtildeY,
}

impl What {
    fn name(self) -> &'static str {
        match self {
            What::Semigroup => "semigroup",
            What::Cone => "cone",
            What::MomentCone => "moment-cone",
            What::K => "K",
            What::Ky => "KY",
            What::Ktilde => "Ktilde",
            What::KtildeY => "KtildeY",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Body {
    Okounkov,
    Moment,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog models.
    Models {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate a semigroup or restriction set and the cone it generates.
    Compute {
        #[arg(value_enum)]
        what: What,
        model: String,
        /// Divisor classes range over the box [0, bound]^rho.
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Slice the Okounkov or moment cone at a divisor class.
    Slice {
        model: String,
        /// Comma-separated class coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        divisor: Vec<i64>,
        #[arg(long, value_enum, default_value = "okounkov")]
        body: Body,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run verification checks; exits 0 iff every check passes.
    Verify {
        /// Catalog model name or `all`; omit with --model-file.
        model: Option<String>,
        /// Comma-separated subset of the checks; all by default.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Verify a model record read from a JSON file.
        #[arg(long)]
        model_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn domain(e: impl ToString) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::UnknownModel(_) => Failure::Usage(e.to_string()),
            ModelError::Malformed(_) => Failure::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Models { format } => models(format),
        Command::Compute {
            model,
            what,
            bound,
            output,
        } => compute(&model, what, bound, output.as_deref()),
        Command::Slice {
            model,
            divisor,
            body,
            bound,
            output,
        } => slice(&model, &divisor, body, bound, output.as_deref()),
        Command::Verify {
            model,
            checks,
            bound,
            seed,
            model_file,
            format,
            output,
        } => verify(model, model_file, &checks, bound, seed, format, output.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn write_output(text: &str, output: Option<&Path>, default_name: &str) -> Result<(), Failure> {
    let path = match output {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(OUTPUT_DIR_VAR).map(|dir| PathBuf::from(dir).join(default_name)),
    };
    match path {
        Some(p) => fs::write(&p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn models(format: Format) -> Result<ExitCode, Failure> {
    let list = ModelList {
        models: CATALOG
            .iter()
            .map(|name| load_model(name).map(|m| ModelSummary::of(&m)))
            .collect::<Result<_, _>>()?,
    };
    match format {
        Format::Json => print!("{}", to_json(&list)),
        Format::Text => {
            println!("{:<16} {:>3} {:>3} {:>3}  group", "name", "n", "r", "rho");
            for m in &list.models {
                println!(
                    "{:<16} {:>3} {:>3} {:>3}  {}",
                    m.name, m.dimension, m.boundary_divisors, m.picard_rank, m.group
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn compute_document(model: &VarietyModel, what: What, bound: u32) -> Result<ComputeDocument, Failure> {
    let moment_blocks = || vec!["value".to_string(), "divisor".to_string(), "weight".to_string()];
    let (block_names, points, cone): (Vec<String>, Vec<Vec<Vec<String>>>, Option<Cone>) = match what {
        What::Semigroup | What::MomentCone => {
            let s = enumerate_moment_semigroup(model, bound).map_err(Failure::domain)?;
            let points = s
                .points
                .iter()
                .map(moment_point)
                .collect();
            let cone = if what == What::MomentCone {
                Some(moment_cone(model, &s.points).map_err(Failure::domain)?)
            } else {
                None
            };
            (moment_blocks(), points, cone)
        }
        What::Cone => {
            let s = enumerate_moment_semigroup(model, bound).map_err(Failure::domain)?;
            let okounkov = s.okounkov_points();
            let points = okounkov
                .iter()
                .map(|p| vec![strings(&p.value.0), strings(&p.divisor.0)])
                .collect();
            let cone = okounkov_cone(model, &okounkov).map_err(Failure::domain)?;
            (vec!["value".into(), "divisor".into()], points, Some(cone))
        }
        What::K | What::Ky => {
            let sets = build_J_K(model, bound).map_err(Failure::domain)?;
            let names = vec!["divisor".to_string(), "weight".to_string()];
            if what == What::K {
                let points = sets.j.iter().map(|p| vec![strings(&p.divisor.0), strings(&p.weight.0)]).collect();
                (names, points, Some(sets.k))
            } else {
                let (jy, ky) = build_JY_KY(model, &sets).map_err(Failure::domain)?;
                let points = jy.iter().map(|(d, w)| vec![strings(&d.0), strings(&w.0)]).collect();
                (names, points, Some(ky))
            }
        }
        What::Ktilde | What::KtildeY => {
            let t = build_tilde_sets(model, bound).map_err(Failure::domain)?;
            let (set, cone) = if what == What::Ktilde {
                (t.j_tilde, t.k_tilde)
            } else {
                (t.j_tilde_y, t.k_tilde_y)
            };
            let points = set
                .iter()
                .map(moment_point)
                .collect();
            (moment_blocks(), points, Some(cone))
        }
    };
    Ok(ComputeDocument {
        model: model.name.clone(),
        what: what.name().to_string(),
        bound,
        blocks: block_names,
        points,
        cone: cone.map(|c| c.to_record()),
    })
}

fn compute(name: &str, what: What, bound: u32, output: Option<&Path>) -> Result<ExitCode, Failure> {
    let model = load_model(name)?;
    let doc = compute_document(&model, what, bound)?;
    write_output(&to_json(&doc), output, &format!("{name}-{}-b{bound}.json", what.name()))?;
    Ok(ExitCode::SUCCESS)
}

fn slice_body(model: &VarietyModel, divisor: &[i64], body: Body, bound: u32) -> Result<Polytope, Failure> {
    let s = enumerate_moment_semigroup(model, bound).map_err(Failure::domain)?;
    let class = DivisorClass(divisor.to_vec());
    match body {
        Body::Okounkov => okounkov_body(model, &s, &class),
        Body::Moment => moment_polytope(model, &s, &class),
    }
    .map_err(Failure::domain)
}

fn slice(name: &str, divisor: &[i64], body: Body, bound: u32, output: Option<&Path>) -> Result<ExitCode, Failure> {
    let model = load_model(name)?;
    let polytope = slice_body(&model, divisor, body, bound)?;
    let body_name = match body {
        Body::Okounkov => "okounkov",
        Body::Moment => "moment",
    };
    let doc = SliceDocument {
        model: model.name.clone(),
        body: body_name.to_string(),
        bound,
        divisor: strings(divisor),
        polytope: polytope.to_record(),
    };
    let class: Vec<String> = divisor.iter().map(ToString::to_string).collect();
    write_output(&to_json(&doc), output, &format!("{name}-{body_name}-{}.json", class.join("_")))?;
    Ok(ExitCode::SUCCESS)
}

fn verify(
    model: Option<String>,
    model_file: Option<PathBuf>,
    checks: &[String],
    bound: u32,
    seed: u64,
    format: Format,
    output: Option<&Path>,
) -> Result<ExitCode, Failure> {
    let models: Vec<VarietyModel> = match (&model, &model_file) {
        (_, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            vec![VarietyModel::from_json(&text)?]
        }
        (Some(name), None) if name == "all" => CATALOG.iter().map(|n| load_model(n)).collect::<Result<_, _>>()?,
        (Some(name), None) => vec![load_model(name)?],
        (None, None) => return Err(Failure::Usage("give a model name, `all`, or --model-file".into())),
    };
    let mut selected: Vec<&str> = if checks.is_empty() {
        CHECKS.to_vec()
    } else {
        let mut v = Vec::new();
        for c in checks {
            let known = CHECKS
                .iter()
                .find(|k| **k == c.as_str())
                .ok_or_else(|| Failure::Usage(format!("unknown check `{c}`; known: {}", CHECKS.join(", "))))?;
            v.push(*known);
        }
        v
    };
    selected.sort_unstable();
    selected.dedup();

    let jobs: Vec<(&VarietyModel, &str)> = models
        .iter()
        .flat_map(|m| selected.iter().map(move |c| (m, *c)))
        .collect();
    let reports: Vec<Report> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(m, c)| scope.spawn(move || run_check(c, m, bound, seed).expect("check names validated")))
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });

    let passed = reports.iter().all(Report::passed);
    let text = match format {
        Format::Json => to_json(&VerifyDocument {
            header: REPORT_HEADER.to_string(),
            passed,
            reports,
        }),
        Format::Text => {
            let mut s: String = reports.iter().map(Report::render_text).collect();
            s.push_str(if passed { "all checks passed\n" } else { "verification FAILED\n" });
            s
        }
    };
    match output {
        Some(p) => fs::write(p, &text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
