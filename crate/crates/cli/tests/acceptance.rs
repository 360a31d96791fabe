//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p momentcone-cli --test acceptance`.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use momentcone::exactalg::{BigInt, Rational};
use momentcone::models::{load_model, VarietyModel, CATALOG};
use momentcone::polyhedra::{polytope_volume, Cone};
use momentcone::semigroup::{enumerate_moment_semigroup, moment_cone, okounkov_body};
use momentcone::verification::{
    check_cone_lemmas, check_inductive_formula, check_semigroup, check_sepvalues, check_stabilization, Report,
    COMBINATIONS_PER_PIECE, DEFAULT_SEED,
};

/// Wall-clock budget for the stabilization criterion.
const STABILIZATION_BUDGET: Duration = Duration::from_secs(60);
/// Bound at which the stabilized cones are compared with the cone identities.
const STABILIZED_BOUND: u32 = 6;
const SEPVALUES_BOUND: u32 = 4;
const CLOSURE_BOUND: u32 = 3;
const CLOSURE_SAMPLES: usize = 50;
/// Bound of the enumeration the Okounkov bodies are sliced from.
const VOLUME_BOUND: u32 = 4;
const RANDOM_CONES: usize = 200;
const RANDOM_CONE_SEED: u64 = 7;
/// Cone equalities and volumes are exact: zero tolerance.
const EXACT: i64 = 0;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn model(name: &str) -> VarietyModel {
    load_model(name).expect("catalog model")
}

fn first_failure(reports: &[Report]) -> Option<String> {
    reports.iter().find(|r| !r.passed()).map(|r| {
        let f = r.failures().next().expect("a failing entry");
        format!("{} on {}: {}: {}", r.check, r.model, f.label, f.detail)
    })
}

fn stabilization() -> Outcome {
    let start = Instant::now();
    let reports: Vec<Report> = [("p1_sl2", 1), ("p1xp1_sl2sl2", 1), ("p2_sl3", 1), ("pgl2_wonderful", 2)]
        .iter()
        .map(|&(name, b)| check_stabilization(&model(name), &[b, b + 2]))
        .collect();
    let elapsed = start.elapsed();
    let compared = reports
        .iter()
        .all(|r| r.entries.iter().any(|e| e.label.starts_with("Delta~ bounds")));
    match first_failure(&reports) {
        Some(f) => outcome(false, f),
        None if !compared => outcome(false, "a model was not compared"),
        None => outcome(
            elapsed < STABILIZATION_BUDGET,
            format!("4 models stable, {:.2}s of {}s", elapsed.as_secs_f64(), STABILIZATION_BUDGET.as_secs()),
        ),
    }
}

fn inductive_formula() -> Outcome {
    let m = model("pgl2_wonderful");
    let report = check_inductive_formula(&m, STABILIZED_BOUND);
    if let Some(f) = first_failure(std::slice::from_ref(&report)) {
        return outcome(false, f);
    }
    let expected: Vec<Vec<i64>> = vec![
        vec![0, 0, 0, 1, 1, 1],
        vec![0, 1, 0, 1, 1, 1],
        vec![0, 0, 1, 1, 1, 1],
        vec![0, 1, 1, 1, 1, 1],
        vec![1, 0, 0, 2, 0, 0],
    ];
    let semigroup = enumerate_moment_semigroup(&m, STABILIZED_BOUND).expect("enumeration");
    let cone = moment_cone(&m, &semigroup.points).expect("cone");
    let mut rays: Vec<Vec<i64>> = cone
        .rays()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string().parse::<i64>().expect("small")).collect())
        .collect();
    let mut want = expected;
    rays.sort();
    want.sort();
    outcome(
        rays == want && cone.lineality().is_empty(),
        format!("{} rays, equal to the expected set: {}", rays.len(), rays == want),
    )
}

fn cone_identities() -> Outcome {
    let report = check_cone_lemmas(&model("pgl2_wonderful"), STABILIZED_BOUND);
    let identities = ["K_Y = phi(K)", "K~_Y = Delta~(Y)", "K~ = ((0 x"];
    let found = identities
        .iter()
        .all(|id| report.entries.iter().any(|e| e.label.starts_with(id) && e.passed));
    match first_failure(std::slice::from_ref(&report)) {
        Some(f) => outcome(false, f),
        None => outcome(found, format!("3 identities at bound {STABILIZED_BOUND}, all found: {found}")),
    }
}

fn sepvalues() -> Outcome {
    let reports: Vec<Report> = CATALOG
        .iter()
        .map(|n| check_sepvalues(&model(n), SEPVALUES_BOUND, DEFAULT_SEED))
        .collect();
    let pieces: usize = reports
        .iter()
        .map(|r| r.entries.iter().filter(|e| e.label.starts_with("constant")).count())
        .sum();
    match first_failure(&reports) {
        Some(f) => outcome(false, f),
        None => outcome(
            COMBINATIONS_PER_PIECE == 20,
            format!("{pieces} pieces, {COMBINATIONS_PER_PIECE} combinations each, zero failures"),
        ),
    }
}

fn closure() -> Outcome {
    let reports: Vec<Report> = CATALOG
        .iter()
        .map(|n| check_semigroup(&model(n), CLOSURE_BOUND, CLOSURE_SAMPLES, DEFAULT_SEED))
        .collect();
    let pairs: usize = reports.iter().map(|r| r.entries.len()).sum();
    match first_failure(&reports) {
        Some(f) => outcome(false, f),
        None => outcome(true, format!("{pairs} pairs over {} models", reports.len())),
    }
}

fn volumes() -> Outcome {
    let mut checked = Vec::new();
    for name in CATALOG {
        let m = model(name);
        let semigroup = enumerate_moment_semigroup(&m, VOLUME_BOUND).expect("enumeration");
        let factorial: i64 = (1..=m.dimension as i64).product();
        for (class, degree) in &m.degrees {
            let body = match okounkov_body(&m, &semigroup, class) {
                Ok(b) => b,
                Err(e) => return outcome(false, format!("{name} {class}: {e}")),
            };
            let scaled = polytope_volume(&body) * Rational::from_integer(BigInt::from(factorial));
            let diff = &scaled - Rational::from_integer(BigInt::from(*degree));
            let tolerance = Rational::from_integer(BigInt::from(EXACT));
            if diff > tolerance || -diff > tolerance {
                return outcome(false, format!("{name} {class}: n! vol = {scaled}, degree {degree}"));
            }
            checked.push(format!("{name}{class}={degree}"));
        }
    }
    let required = ["p1_sl2[1]=1", "p1xp1_sl2sl2[1,1]=2", "pgl2_wonderful[1]=1"];
    let all = required.iter().all(|r| checked.iter().any(|c| c == r));
    outcome(all, format!("{} classes: {}", checked.len(), checked.join(" ")))
}

fn random_generators(rng: &mut ChaCha8Rng) -> (usize, Vec<Vec<i64>>) {
    let dim = rng.gen_range(2..=6);
    let count = rng.gen_range(1..=dim + 4);
    let rays = (0..count)
        .map(|_| (0..dim).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    (dim, rays)
}

/// `r` is a positive multiple of `g`.
fn same_direction(r: &[BigInt], g: &[i64]) -> bool {
    let g: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();
    let Some(i) = r.iter().position(|x| *x != BigInt::from(0)) else {
        return false;
    };
    if g[i] == BigInt::from(0) || (g[i] > BigInt::from(0)) != (r[i] > BigInt::from(0)) {
        return false;
    }
    r.iter().zip(&g).all(|(a, b)| a * &g[i] == b * &r[i])
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_CONE_SEED);
    for i in 0..RANDOM_CONES {
        let (dim, gens) = random_generators(&mut rng);
        let cone = Cone::from_integer_rays(dim, &gens).expect("consistent dimension");
        let generators_inside = gens
            .iter()
            .all(|g| cone.contains_integer(&g.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()));
        let rays_from_generators =
            !cone.is_pointed() || cone.rays().iter().all(|r| gens.iter().any(|g| same_direction(r, g)));
        if !generators_inside || !rays_from_generators {
            return outcome(false, format!("cone {i} does not match its generators"));
        }
        let back = Cone::from_inequalities(cone.ambient_dimension(), cone.facets(), cone.equations())
            .expect("consistent dimension");
        let again = Cone::from_rays_and_lineality(cone.ambient_dimension(), back.rays(), back.lineality())
            .expect("consistent dimension");
        if back != cone || again != cone {
            return outcome(false, format!("cone {i} differs after V -> H -> V"));
        }
    }
    outcome(true, format!("{RANDOM_CONES} cones, seed {RANDOM_CONE_SEED}"))
}

fn mutation_sensitivity() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    let mut fixtures: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("fixtures directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    fixtures.sort();
    if fixtures.is_empty() {
        return outcome(false, "no fixtures found");
    }
    for f in &fixtures {
        let status = Command::new(env!("CARGO_BIN_EXE_momentcone"))
            .args(["verify", "--bound", "2", "--model-file"])
            .arg(f)
            .output()
            .expect("binary runs")
            .status;
        if status.code() != Some(1) {
            return outcome(false, format!("{} exited with {status}", f.display()));
        }
    }
    outcome(true, format!("{} fixtures, each exits 1", fixtures.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("stabilization of the cones", stabilization),
        ("inductive generator formula", inductive_formula),
        ("cone identities on pgl2_wonderful", cone_identities),
        ("separation of values", sepvalues),
        ("semigroup closure", closure),
        ("degree and volume consistency", volumes),
        ("polyhedral round trip", round_trip),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("[{mark}] {}. {name}: {}", i + 1, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
