//! Command-line front end: classification, reduction, graded brackets, and
//! the full verification suite over JSON instance files.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition/hypothesis failure,
//! 4 witness mismatch, 1 anything else (including failed verification).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use multisym::error::Error;
use multisym::exterior::Variance;
use multisym::formats::{alt_to_records, parse_poly_alt, BracketFile, InstanceFile};
use multisym::graded::{check_witness, graded_bracket, GradedClass};
use multisym::verify::{self, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "multisym",
    about = "Exact multisymplectic linear algebra: classify subspaces, reduce coisotropic ones, compute graded brackets, and run the verification suite",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a named subspace of an instance with respect to the
    /// jth-orthogonal.
    Classify {
        /// Instance JSON path.
        #[arg(long)]
        instance: PathBuf,
        /// Name of the subspace inside the instance.
        #[arg(long)]
        subspace: String,
        /// Orthogonal index, 1..=k.
        #[arg(long)]
        j: usize,
        /// Also write the result as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Coisotropic reduction of a named subspace, with optional projections
    /// of further subspaces into the quotient.
    Reduce {
        #[arg(long)]
        instance: PathBuf,
        /// The k-coisotropic subspace to reduce.
        #[arg(long)]
        subspace: String,
        /// Comma-separated names of subspaces to project into the quotient.
        #[arg(long, value_delimiter = ',')]
        project: Vec<String>,
        /// Orthogonal index for classifying projections (defaults to k).
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build a canonical model L ⊕ Λ^k_r L* and emit it as an instance file
    /// with subspaces L, W, and E.
    Model {
        /// Base dimension m = dim L.
        #[arg(long)]
        m: usize,
        /// Order k of the multisymplectic structure.
        #[arg(long)]
        k: usize,
        /// Vanishing order r (0 = no vertical constraint).
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Dimension of the vertical subspace E (spanned by the last axes).
        #[arg(long, default_value_t = 0)]
        e_dim: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Graded bracket of two Hamiltonian classes given with witnesses.
    Bracket {
        /// Bracket input JSON path (textual grammar inside).
        #[arg(long)]
        forms: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the verification suite.
    VerifyPaper {
        /// Regular expression selecting claim ids.
        #[arg(long)]
        scope: Option<String>,
        /// Seed for the randomized cases.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on random coefficient degrees.
        #[arg(long, default_value_t = 3)]
        max_poly_degree: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Io(_) => 2,
        Error::Precondition(_) | Error::Hypothesis(_) => 3,
        Error::WitnessMismatch(_) => 4,
        _ => 1,
    }
}

fn dispatch(cli: Cli) -> multisym::Result<ExitCode> {
    match cli.command {
        Command::Classify {
            instance,
            subspace,
            j,
            json,
        } => cmd_classify(&instance, &subspace, j, json.as_deref()),
        Command::Reduce {
            instance,
            subspace,
            project,
            j,
            json,
        } => cmd_reduce(&instance, &subspace, &project, j, json.as_deref()),
        Command::Model { m, k, r, e_dim, json } => cmd_model(m, k, r, e_dim, json.as_deref()),
        Command::Bracket { forms, json } => cmd_bracket(&forms, json.as_deref()),
        Command::VerifyPaper {
            scope,
            seed,
            max_poly_degree,
            json,
        } => cmd_verify_paper(scope, seed, max_poly_degree, json.as_deref()),
    }
}

fn load_instance(path: &std::path::Path) -> multisym::Result<InstanceFile> {
    let text = std::fs::read_to_string(path)?;
    InstanceFile::from_json(&text)
}

fn write_json(path: Option<&std::path::Path>, value: &serde_json::Value) -> multisym::Result<()> {
    if let Some(path) = path {
        std::fs::write(
            path,
            serde_json::to_string_pretty(value).expect("serializable"),
        )?;
    }
    Ok(())
}

fn subspace_rows(s: &multisym::Subspace) -> Vec<Vec<String>> {
    s.basis()
        .iter()
        .map(|row| row.iter().map(multisym::scalar::format_rat).collect())
        .collect()
}

fn cmd_classify(
    instance: &std::path::Path,
    name: &str,
    j: usize,
    json: Option<&std::path::Path>,
) -> multisym::Result<ExitCode> {
    let inst = load_instance(instance)?;
    let ms = inst.space()?;
    let w = inst.subspace(name)?;
    let class = ms.classify(&w, j)?;
    println!("subspace {name} (rank {}) at j = {j}:", w.rank());
    println!("  {j}-isotropic:   {}", class.isotropic);
    println!("  {j}-coisotropic: {}", class.coisotropic);
    println!("  {j}-lagrangian:  {}", class.lagrangian);
    println!("  non-degenerate: {}", class.nondegenerate);
    println!("  orthogonal rank: {}", class.orthogonal.rank());
    print!("{}", class.orthogonal);
    let payload = serde_json::json!({
        "subspace": name,
        "j": j,
        "isotropic": class.isotropic,
        "coisotropic": class.coisotropic,
        "lagrangian": class.lagrangian,
        "nondegenerate": class.nondegenerate,
        "orthogonal": subspace_rows(&class.orthogonal),
    });
    write_json(json, &payload)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(
    instance: &std::path::Path,
    name: &str,
    project: &[String],
    j: Option<usize>,
    json: Option<&std::path::Path>,
) -> multisym::Result<ExitCode> {
    let inst = load_instance(instance)?;
    let ms = inst.space()?;
    let n = inst.subspace(name)?;
    let red = multisym::reduction::reduce(&ms, &n)?;
    let j = j.unwrap_or(ms.order());
    println!(
        "reduced {name}: quotient dimension {}, kernel rank {}",
        red.quotient_dim(),
        red.kernel.rank()
    );
    println!("omega_N = {}", red.quotient.omega());
    let mut projections = Vec::new();
    for pname in project {
        let l = inst.subspace(pname)?;
        let projected = red.project_subspace(&l)?;
        let class = red.quotient.classify(&projected, j)?;
        println!(
            "projection of {pname}: rank {}, {j}-lagrangian: {}",
            projected.rank(),
            class.lagrangian
        );
        projections.push(serde_json::json!({
            "name": pname,
            "rows": subspace_rows(&projected),
            "isotropic": class.isotropic,
            "coisotropic": class.coisotropic,
            "lagrangian": class.lagrangian,
        }));
    }
    let payload = serde_json::json!({
        "coisotropic": name,
        "quotient_dim": red.quotient_dim(),
        "kernel": subspace_rows(&red.kernel),
        "omega_N": alt_to_records(red.quotient.omega()),
        "projected_subspaces": projections,
    });
    write_json(json, &payload)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_model(
    m: usize,
    k: usize,
    r: usize,
    e_dim: usize,
    json: Option<&std::path::Path>,
) -> multisym::Result<ExitCode> {
    use multisym::canonical::{build_canonical, VerticalData};
    let vd = VerticalData::coordinate(m, e_dim, r)?;
    vd.validate_for(k)?;
    let cm = build_canonical(vd, k)?;
    let mut subspaces = std::collections::BTreeMap::new();
    subspaces.insert("L".to_string(), cm.base.clone());
    subspaces.insert("W".to_string(), cm.fiber.clone());
    if !cm.vertical_embedded.is_zero() {
        subspaces.insert("E".to_string(), cm.vertical_embedded.clone());
    }
    let instance = InstanceFile::from_parts(&cm.space, &subspaces);
    println!(
        "canonical model: total dimension {}, fiber dimension {}, {}",
        cm.total_dim(),
        cm.fiber_dim(),
        if cm.space.is_regular() {
            "regular"
        } else {
            "degenerate (ker ♭1 = E)"
        }
    );
    println!("omega = {}", cm.space.omega());
    match json {
        Some(path) => std::fs::write(path, instance.to_json())?,
        None => println!("{}", instance.to_json()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bracket(
    forms: &std::path::Path,
    json: Option<&std::path::Path>,
) -> multisym::Result<ExitCode> {
    let text = std::fs::read_to_string(forms)?;
    let file = BracketFile::from_json(&text)?;
    let omega = parse_poly_alt(&file.omega, file.n, Some(file.k + 1), Some(Variance::Covariant))?;
    let parse_entry = |entry: &multisym::formats::BracketEntry,
                       label: &str|
     -> multisym::Result<(GradedClass, multisym::polyalt::PolyAlt)> {
        let rep = parse_poly_alt(&entry.rep, file.n, None, Some(Variance::Covariant))?;
        let class = GradedClass::new(file.k, rep)?;
        let witness = parse_poly_alt(
            &entry.witness,
            file.n,
            Some(file.k - class.order()),
            Some(Variance::Contravariant),
        )?;
        check_witness(&omega, &class, &witness).map_err(|_| {
            Error::WitnessMismatch(format!("witness for {label} does not realize the class"))
        })?;
        Ok((class, witness))
    };
    let (a, ua) = parse_entry(&file.a, "a")?;
    let (b, ub) = parse_entry(&file.b, "b")?;
    let (bracket, witness) = graded_bracket(&omega, &a, &ua, &b, &ub)?;
    println!(
        "deg a = {}, deg b = {}, deg bracket = {} (orders {}, {} -> {})",
        a.deg(),
        b.deg(),
        bracket.deg(),
        a.order(),
        b.order(),
        bracket.order()
    );
    println!("representative: {}", bracket.representative());
    println!("witness field:  {witness}");
    let payload = serde_json::json!({
        "deg_a": a.deg(),
        "deg_b": b.deg(),
        "deg_bracket": bracket.deg(),
        "order": bracket.order(),
        "representative": bracket.representative().to_string(),
        "witness": witness.to_string(),
        "zero_class": bracket.is_zero_class()?,
    });
    write_json(json, &payload)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_paper(
    scope: Option<String>,
    seed: u64,
    max_poly_degree: u32,
    json: Option<&std::path::Path>,
) -> multisym::Result<ExitCode> {
    let opts = VerifyOptions {
        seed,
        scope,
        max_poly_degree,
    };
    let results = verify::run(&opts)?;
    print!("{}", verify::render_table(&results));
    let payload = serde_json::to_value(&results).expect("serializable");
    write_json(json, &payload)?;
    if verify::all_pass(&results) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}
