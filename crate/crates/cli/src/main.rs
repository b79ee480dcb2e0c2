//! `latori`: command-line frontend over latori-core.
//!
//! Exit codes: 0 success, 1 usage error, 2 verified property violation, 3 inconclusive or unknown.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use latori_core::classgroup::{max_order_class_group, rationality_reports, TotalOrder};
use latori_core::cyclo::{class_number_record, devissage_schedule, parse_table};
use latori_core::devissage::{psi_isomorphism, verify_tower};
use latori_core::groups::{build_group, sylow_profile, theorem14_classify, FamilySpec, FiniteGroup};
use latori_core::homalg::{flabby_coflabby, h1, tate_h0, tate_hm1};
use latori_core::lattices::{LatticeFile, PiLattice};
use latori_core::resolutions::{
    certify_stably_permutation, coflabby_embedding, coflasque_resolution, flabby_resolution, ExactTriple,
};
use latori_core::selftest::{run_all, run_criterion};
use latori_core::{Error, Result};

#[derive(Parser)]
#[command(name = "latori", version, about = "Exact lattices over integral group rings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Seed for every randomized search.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Order, generators, subgroup classes, Sylow profile and classification of a family group.
    Group { spec: String },
    /// Emit a lattice as JSON, or validate one read with --lattice.
    Lattice(LatticeArgs),
    /// Tate cohomology on every subgroup class and the flabby/coflabby verdicts.
    Cohomology(LatticeArgs),
    /// Coflasque and flabby resolutions, the coflabby embedding, and a stable-permutation search on E.
    Resolve {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value_t = 4)]
        budget: u32,
    },
    /// Devissage schedule for n; with a lattice, also the psi isomorphism.
    Devissage {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        lattice: LatticeArgs,
    },
    /// Verify the devissage tower of a lattice.
    Tower {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Defaults to the order of sigma.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Class group of a maximal order in the rational group algebra.
    Classgroup {
        spec: String,
        /// Class-number TSV to audit against the computed values.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Classification conditions, class group and rationality verdicts.
    Classify { spec: String },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Args)]
struct LatticeArgs {
    /// Group such as D15, Q12, C9xD5, SD32.
    spec: Option<String>,
    /// trivial, sign, regular, or perm=<generator names separated by commas>.
    #[arg(long, default_value = "regular")]
    kind: String,
    /// Lattice JSON file; overrides --kind.
    #[arg(long)]
    lattice: Option<PathBuf>,
}

struct Outcome {
    code: u8,
    human: String,
    data: Value,
}

impl Outcome {
    fn ok(human: String, data: Value) -> Self {
        Outcome { code: 0, human, data }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameters(_)
        | Error::NotEpsilonGroup(_)
        | Error::UnsupportedFamily(_)
        | Error::GroupMismatch
        | Error::BadPolynomial(_)
        | Error::BadDivisor(_)
        | Error::Dimension(_)
        | Error::Parse(_)
        | Error::ZeroClass => 1,
        Error::Overflow(_) => 3,
        _ => 2,
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn group(spec: &str) -> Result<Arc<FiniteGroup>> {
    let spec: FamilySpec = spec.parse()?;
    Ok(Arc::new(build_group(&spec)?))
}

fn load_lattice(args: &LatticeArgs) -> Result<PiLattice> {
    if let Some(path) = &args.lattice {
        let m = PiLattice::from_json(&read(path)?)?;
        if let Some(spec) = &args.spec {
            let want: FamilySpec = spec.parse()?;
            if &want != m.group().family() {
                return Err(usage(format!("lattice file is over {}, not {want}", m.group().family())));
            }
        }
        return Ok(m);
    }
    let spec = args.spec.as_deref().ok_or_else(|| usage("a group spec or --lattice is required"))?;
    let g = group(spec)?;
    match args.kind.as_str() {
        "trivial" => Ok(PiLattice::trivial(g)),
        "sign" => PiLattice::sign(g),
        "regular" => Ok(PiLattice::regular(g)),
        kind => {
            let names = kind.strip_prefix("perm=").ok_or_else(|| usage(format!("unknown lattice kind {kind:?}")))?;
            let gens = names
                .split(',')
                .map(|n| g.generator(n.trim()).ok_or_else(|| usage(format!("no generator {n:?} in {spec}"))))
                .collect::<Result<Vec<_>>>()?;
            let sub = g.closure(&gens);
            Ok(PiLattice::permutation(g, &sub)?.with_label(format!("Z[π/<{names}>]")))
        }
    }
}

fn lattice_json(m: &PiLattice) -> Value {
    serde_json::to_value(LatticeFile::from_lattice(m)).expect("lattice serializes")
}

fn cmd_group(spec: &str) -> Result<Outcome> {
    let g = group(spec)?;
    let reps: Vec<Value> = g
        .subgroups()
        .representatives()
        .map(|h| json!({"name": h.describe(&g), "order": h.order(), "cyclic": h.cyclic, "normal": h.normal}))
        .collect();
    let gens: Vec<Value> =
        g.generators().iter().map(|(n, x)| json!({"name": n, "order": g.element_order(*x)})).collect();
    let profile = sylow_profile(&g);
    let class = theorem14_classify(g.family())?;
    let mut human = format!("{}: order {}\n", g.family(), g.order());
    for (n, x) in g.generators() {
        human.push_str(&format!("  generator {n} of order {}\n", g.element_order(*x)));
    }
    human.push_str(&format!("  abelian: {}, epsilon-group: {}\n", g.is_abelian(), g.is_epsilon_group()));
    human.push_str(&format!("  {} subgroup classes:", reps.len()));
    for h in g.subgroups().representatives() {
        human.push_str(&format!(" {} ({})", h.describe(&g), h.order()));
    }
    human.push_str(&format!(
        "\n  Sylow: all cyclic {}, odd cyclic {}, 2-Sylow cyclic or dihedral {}\n",
        profile.all_sylow_cyclic, profile.odd_sylow_cyclic, profile.two_sylow_cyclic_or_dihedral
    ));
    human.push_str(&format!("  classification list: {} ({})\n", class.in_list, class.witness));
    let data = json!({
        "group": g.family().to_string(),
        "order": g.order(),
        "generators": gens,
        "abelian": g.is_abelian(),
        "epsilon_group": g.is_epsilon_group(),
        "subgroup_classes": reps,
        "sylow": profile,
        "classification": class,
    });
    Ok(Outcome::ok(human, data))
}

fn cmd_lattice(args: &LatticeArgs) -> Result<Outcome> {
    let m = load_lattice(args)?;
    m.validate()?;
    Ok(Outcome::ok(format!("{}\n", m.to_json()), lattice_json(&m)))
}

fn cmd_cohomology(args: &LatticeArgs) -> Result<Outcome> {
    let m = load_lattice(args)?;
    let g = m.group();
    let mut rows = Vec::new();
    let mut human = format!("{} of rank {} over {}\n", m.label(), m.rank(), g.family());
    for h in g.subgroups().representatives() {
        let (h0, hm1, h1v) = (tate_h0(&m, &h.elements)?, tate_hm1(&m, &h.elements)?, h1(&m, h)?);
        human.push_str(&format!("  {:<16} H^0 = {h0}, H^-1 = {hm1}, H^1 = {h1v}\n", h.describe(g)));
        rows.push(json!({"subgroup": h.describe(g), "order": h.order(), "h0": h0, "hm1": hm1, "h1": h1v}));
    }
    let report = flabby_coflabby(&m)?;
    human.push_str(&format!(
        "flabby: {}, coflabby: {}, invertible: {:?}\n",
        report.flabby, report.coflabby, report.invertible
    ));
    Ok(Outcome::ok(human, json!({"lattice": m.label(), "rank": m.rank(), "subgroups": rows, "report": report})))
}

fn triple_summary(t: &ExactTriple) -> Value {
    json!({
        "left": lattice_json(&t.left),
        "middle": lattice_json(&t.middle),
        "right": lattice_json(&t.right),
        "inject": t.inject.matrix.to_rows(),
        "project": t.project.matrix.to_rows(),
    })
}

fn cmd_resolve(args: &LatticeArgs, budget: u32, seed: u64) -> Result<Outcome> {
    let m = load_lattice(args)?;
    let cover = coflasque_resolution(&m)?;
    let flabby = flabby_resolution(&m)?;
    let embed = coflabby_embedding(&m)?;
    let e = &flabby.right;
    let report = flabby_coflabby(e)?;
    let cert = certify_stably_permutation(e, budget, seed)?;
    let mut human = format!("{} of rank {}\n", m.label(), m.rank());
    human.push_str(&format!(
        "coflasque: 0 -> Q ({}) -> P ({}) -> M -> 0\n",
        cover.left.rank(),
        cover.middle.rank()
    ));
    human.push_str(&format!("flabby:    0 -> M -> P ({}) -> E ({}) -> 0\n", flabby.middle.rank(), e.rank()));
    human.push_str(&format!(
        "coflabby embedding: 0 -> M -> C ({}) -> P ({}) -> 0\n",
        embed.middle.rank(),
        embed.right.rank()
    ));
    human.push_str(&format!("E flabby: {}, coflabby: {}\n", report.flabby, report.coflabby));
    let (code, stable) = match &cert {
        Some(c) => {
            c.certificate.verify()?;
            let comp: Vec<usize> = c.complement.iter().map(Vec::len).collect();
            let target: Vec<usize> = c.target.iter().map(Vec::len).collect();
            human.push_str(&format!(
                "E is stably permutation: E + P1 = P2 with coset subgroups of orders {comp:?} and {target:?}\n"
            ));
            (0, json!({"complement": c.complement, "target": c.target}))
        }
        None => {
            human.push_str(&format!("no stable-permutation certificate within budget {budget}\n"));
            (3, Value::Null)
        }
    };
    let data = json!({
        "coflasque": triple_summary(&cover),
        "flabby": triple_summary(&flabby),
        "coflabby_embedding": triple_summary(&embed),
        "e_report": report,
        "stably_permutation": stable,
    });
    Ok(Outcome { code, human, data })
}

fn cmd_devissage(n: u64, args: &LatticeArgs) -> Result<Outcome> {
    let s = devissage_schedule(n)?;
    s.check()?;
    let mut human = format!("schedule for n = {n}, primes {:?}\n", s.primes);
    for k in 0..s.len() {
        human.push_str(&format!("  k = {k}: d = {}, e = {}, E = {}", s.d[k], s.e[k], s.big_e(k)));
        if k >= 1 {
            human.push_str(&format!(", F = {}, G = {}", s.big_f(k), s.big_g(k)));
        }
        human.push('\n');
    }
    let mut data = json!({"schedule": s});
    if args.spec.is_some() || args.lattice.is_some() {
        let m = load_lattice(args)?;
        let psi = psi_isomorphism(&m, n)?;
        psi.certificate.verify()?;
        human.push_str(&format!(
            "psi: ({}) rank {} -> ({}) rank {} certified, u = {:?}\n",
            psi.source.label(),
            psi.source.rank(),
            psi.target.label(),
            psi.target.rank(),
            psi.u
        ));
        data["psi"] = json!({"u": psi.u, "rank": psi.source.rank(), "matrix": psi.certificate.forward.matrix.to_rows()});
    }
    Ok(Outcome::ok(human, data))
}

fn cmd_tower(args: &LatticeArgs, n: Option<u64>) -> Result<Outcome> {
    let m = load_lattice(args)?;
    let n = match n {
        Some(n) => n,
        None => {
            let s = m.group().sigma().ok_or_else(|| usage("group has no sigma; pass --n"))?;
            m.group().element_order(s) as u64
        }
    };
    let report = verify_tower(&m, n)?;
    for c in &report.certificates {
        c.verify()?;
    }
    let code = if report.all_true() { 0 } else { 2 };
    Ok(Outcome { code, human: report.to_text(), data: serde_json::to_value(&report).expect("report serializes") })
}

fn cmd_classgroup(spec: &str, table: Option<&PathBuf>) -> Result<Outcome> {
    let spec: FamilySpec = spec.parse()?;
    let report = max_order_class_group(&spec)?;
    let mut human = report.to_text();
    human.push_str(&report.table());
    let mut mismatches = Vec::new();
    if let Some(path) = table {
        for row in parse_table(&read(path)?)? {
            let rec = class_number_record(row.m)?;
            if rec.h_minus != row.h_minus || rec.h_plus != row.h_plus {
                mismatches.push(format!(
                    "m = {}: table h- = {}, h+ = {}; computed h- = {}, h+ = {}",
                    row.m, row.h_minus, row.h_plus, rec.h_minus, rec.h_plus
                ));
            }
        }
        for m in &mismatches {
            human.push_str(&format!("table mismatch: {m}\n"));
        }
    }
    let code = if !mismatches.is_empty() {
        2
    } else if report.total == TotalOrder::Unknown {
        3
    } else {
        0
    };
    let data = json!({"report": report, "tsv": report.table(), "table_mismatches": mismatches});
    Ok(Outcome { code, human, data })
}

fn cmd_classify(spec: &str) -> Result<Outcome> {
    let spec: FamilySpec = spec.parse()?;
    let class = theorem14_classify(&spec)?;
    let report = max_order_class_group(&spec)?;
    let verdicts = rationality_reports(&spec)?;
    let mut human = format!("{spec}: classification list {} ({})\n", class.in_list, class.witness);
    human.push_str(&report.to_text());
    for v in &verdicts {
        human.push_str(&format!("verdict {}: {}\n", v.statement, v.verdict));
        for j in &v.justification {
            human.push_str(&format!("    {j}\n"));
        }
    }
    Ok(Outcome::ok(human, json!({"classification": class, "class_group": report, "verdicts": verdicts})))
}

fn cmd_selftest(criterion: Option<u8>) -> Result<Outcome> {
    let results = match criterion {
        Some(id) => vec![run_criterion(id)?],
        None => run_all(),
    };
    let human: String = results.iter().map(|r| format!("{}\n", r.line())).collect();
    let code = if results.iter().all(|r| r.passed) { 0 } else { 2 };
    Ok(Outcome { code, human, data: json!({"criteria": results}) })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Group { spec } => cmd_group(spec),
        Command::Lattice(args) => cmd_lattice(args),
        Command::Cohomology(args) => cmd_cohomology(args),
        Command::Resolve { lattice, budget } => cmd_resolve(lattice, *budget, cli.seed),
        Command::Devissage { n, lattice } => cmd_devissage(*n, lattice),
        Command::Tower { lattice, n } => cmd_tower(lattice, *n),
        Command::Classgroup { spec, table } => cmd_classgroup(spec, table.as_ref()),
        Command::Classify { spec } => cmd_classify(spec),
        Command::Selftest { criterion } => cmd_selftest(*criterion),
    }
}

fn verb(c: &Command) -> &'static str {
    match c {
        Command::Group { .. } => "group",
        Command::Lattice(_) => "lattice",
        Command::Cohomology(_) => "cohomology",
        Command::Resolve { .. } => "resolve",
        Command::Devissage { .. } => "devissage",
        Command::Tower { .. } => "tower",
        Command::Classgroup { .. } => "classgroup",
        Command::Classify { .. } => "classify",
        Command::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (code, human, data) = match run(&cli) {
        Ok(o) => (o.code, o.human, json!({"result": o.data})),
        Err(e) => {
            let code = exit_code(&e);
            (code, format!("error: {e}\n"), json!({"error": e.to_string()}))
        }
    };
    match cli.format {
        Format::Human if code == 1 || (code == 2 && data.get("error").is_some()) => eprint!("{human}"),
        Format::Human => {
            let _ = std::io::stdout().write_all(human.as_bytes());
        }
        Format::Structured => {
            let mut doc = json!({"command": verb(&cli.command), "exit_code": code});
            if let (Value::Object(d), Value::Object(extra)) = (&mut doc, data) {
                d.extend(extra);
            }
            let text = serde_json::to_string_pretty(&doc).expect("document serializes");
            let _ = writeln!(std::io::stdout(), "{text}");
        }
    }
    ExitCode::from(code)
}
