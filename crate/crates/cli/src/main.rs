use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use sqtile::criterion::{
    counterexample_report, mmy_check, search_hyperbolic_pair, AffineWord, MmyCertificate, SearchBudget, Verdict,
};
use sqtile::cylinders::forni_hypothesis_on;
use sqtile::enumerate::{enumerate_origamis, filter_candidates, render_enumeration, SearchSpec};
use sqtile::galois::{Certification, ReciprocalAnalysis, SquareClass};
use sqtile::homology::{express_in_basis, intersection_form, kz_action, parse_basis, Homology};
use sqtile::lyapunov::{convergence_diagnostics, estimate_exponents, LyapunovConfig, LyapunovEstimate};
use sqtile::orbit::orbit_with_cap;
use sqtile::poly::IntPolynomial;
use sqtile::report::{CertificationLevel, ReportEnvelope, SectionStatus};
use sqtile::{Error, Origami, Sl2Matrix, Word};

const EXIT_INVALID: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "sqtile", version, about = "Invariants, Veech groups and Lyapunov spectra of square-tiled surfaces")]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Exit with status 4 when a certificate is inconclusive.
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "SQTILE_THREADS")]
    threads: Option<usize>,
    /// Maximum orbit size explored.
    #[arg(long, global = true, env = "SQTILE_ORBIT_CAP", default_value_t = sqtile::orbit::DEFAULT_ORBIT_CAP)]
    orbit_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Origami file (`r=`/`u=` lines, optional `n=`).
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Args, Clone)]
struct Words {
    /// First hyperbolic word, e.g. L8R2L2R2.
    #[arg(long, requires = "phi2")]
    phi1: Option<String>,
    /// Second hyperbolic word; its square enters the test.
    #[arg(long, requires = "phi1")]
    phi2: Option<String>,
    /// Largest block exponent when searching for words.
    #[arg(long, default_value_t = 8)]
    budget: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Stratum, genus, commutator, automorphisms and blocks.
    Stratum(Input),
    /// SL(2,Z)-orbit; optionally export the edge list.
    Orbit {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "PATH")]
        edges: Option<PathBuf>,
    },
    /// Veech group data; optionally test membership of matrices `a,b,c,d`.
    Veech {
        #[command(flatten)]
        input: Input,
        #[arg(long = "member", value_name = "A,B,C,D")]
        member: Vec<String>,
    },
    /// Cusps of the Teichmüller curve.
    Cusps(Input),
    /// Cylinder decompositions at each cusp and the Forni rank test.
    Cylinders(Input),
    /// KZ matrix of an affine word on the zero part.
    Kz {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        word: String,
        /// Basis file for the zero part (`n=` then one chain per line).
        #[arg(long, value_name = "PATH")]
        basis: Option<PathBuf>,
    },
    /// Simplicity criterion for two hyperbolic words, searched if not given.
    Mmy {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        words: Words,
    },
    /// Monte-Carlo Lyapunov exponents.
    Lyapunov {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exhaustive enumeration by degree and stratum.
    Enumerate {
        #[arg(long)]
        degree: usize,
        /// Zero orders, comma separated; empty for the torus.
        #[arg(long, default_value = "", value_name = "K1,K2,..")]
        stratum: String,
        #[arg(long)]
        max_rank: Option<usize>,
        /// Also require a passing simplicity certificate.
        #[arg(long)]
        mmy: bool,
        #[arg(long, default_value_t = 8)]
        budget: u32,
        #[arg(long, env = "SQTILE_MAX_ORIGAMIS", default_value_t = 10_000_000)]
        max_origamis: usize,
    },
    /// Forni rank test and simplicity certificate, with the combined verdict.
    Counterexample {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        words: Words,
        /// Lyapunov steps; 0 skips the Monte-Carlo section.
        #[arg(long, default_value_t = 0)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1_000_000)]
    steps: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    chains: usize,
    /// Multiplications between re-orthonormalizations.
    #[arg(long, default_value_t = 32)]
    cadence: u64,
}

struct Outcome {
    text: String,
    report: ReportEnvelope,
    inconclusive: bool,
    capped: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, out.report.to_json()) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(EXIT_INVALID);
                }
            }
            if out.capped {
                eprintln!("error: resource cap reached; results are partial");
                return ExitCode::from(EXIT_CAP);
            }
            if cli.strict && out.inconclusive {
                eprintln!("error: certificate is inconclusive");
                return ExitCode::from(EXIT_INCONCLUSIVE);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::OrbitCap { .. } | Error::ResourceCap(_)) => EXIT_CAP,
        Some(Error::NonIntegralCharPoly(_) | Error::NotReciprocal(_)) => 1,
        _ => EXIT_INVALID,
    }
}

fn load(path: &Path) -> Result<Origami> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Origami::parse(&text).map_err(|e| anyhow::Error::new(e).context(format!("parsing {}", path.display())))
}

fn with_input(command: &str, o: &Origami) -> ReportEnvelope {
    let mut r = ReportEnvelope::new(command);
    r.inputs.push(o.to_text());
    r
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Stratum(i) => stratum(&load(&i.input)?),
        Command::Orbit { input, edges } => orbit_cmd(&load(&input.input)?, cli.orbit_cap, edges.as_deref()),
        Command::Veech { input, member } => veech(&load(&input.input)?, cli.orbit_cap, member),
        Command::Cusps(i) => cusps(&load(&i.input)?, cli.orbit_cap),
        Command::Cylinders(i) => cylinders(&load(&i.input)?, cli.orbit_cap),
        Command::Kz { input, word, basis } => kz(&load(&input.input)?, word, basis.as_deref()),
        Command::Mmy { input, words } => mmy(&load(&input.input)?, words),
        Command::Lyapunov { input, run } => lyapunov(&load(&input.input)?, run),
        Command::Enumerate { degree, stratum, max_rank, mmy, budget, max_origamis } => {
            enumerate(*degree, stratum, *max_rank, *mmy, *budget, *max_origamis, cli.orbit_cap)
        }
        Command::Counterexample { input, words, steps, seed } => {
            counterexample(&load(&input.input)?, words, *steps, *seed)
        }
    }
}

fn stratum(o: &Origami) -> Result<Outcome> {
    let s = o.stratum();
    let kappa: Vec<String> = s.zero_orders.iter().map(|k| k.to_string()).collect();
    let blocks: Vec<String> = o.blocks().iter().map(|b| b.to_string()).collect();
    let mut text = String::new();
    writeln!(text, "kappa: ({})", kappa.join(","))?;
    writeln!(text, "genus: {}", s.genus)?;
    writeln!(text, "marked points: {}", s.marked_points)?;
    writeln!(text, "commutator: {}", o.commutator())?;
    writeln!(text, "automorphisms: {}", o.automorphism_count())?;
    writeln!(text, "blocks: {}", if blocks.is_empty() { "none".to_string() } else { blocks.join(" ") })?;
    writeln!(text, "canonical: {}", o.canonical_form())?;
    let mut report = with_input("stratum", o);
    let data = serde_json::json!({
        "stratum": s,
        "commutator": o.commutator().to_string(),
        "automorphisms": o.automorphism_count(),
        "blocks": blocks,
        "canonical": o.canonical_form().to_string(),
    });
    report.push("stratum", CertificationLevel::Exact, SectionStatus::Ok, &data)?;
    Ok(Outcome { text, report, inconclusive: false, capped: false })
}

fn orbit_cmd(o: &Origami, cap: usize, edges: Option<&Path>) -> Result<Outcome> {
    let g = orbit_with_cap(o, cap)?;
    let mut text = format!("orbit size: {}\n", g.len());
    for (i, n) in g.nodes.iter().enumerate() {
        writeln!(text, "{i}: {n}  L->{} R->{}  via {}", g.l_edges[i], g.r_edges[i], g.tree_words[i])?;
    }
    if let Some(path) = edges {
        std::fs::write(path, g.edge_list()).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut report = with_input("orbit", o);
    report.push("orbit", CertificationLevel::Exact, SectionStatus::Ok, &g)?;
    Ok(Outcome { text, report, inconclusive: false, capped: false })
}

fn parse_matrix(text: &str) -> Result<Sl2Matrix> {
    let v: Vec<i64> = text
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| anyhow::Error::new(Error::Precondition(format!("matrix {text:?}: {e}"))))?;
    let [a, b, c, d] = v[..] else {
        return Err(Error::Precondition(format!("matrix {text:?} needs four entries")).into());
    };
    Ok(Sl2Matrix::new(a, b, c, d)?)
}

fn veech(o: &Origami, cap: usize, members: &[String]) -> Result<Outcome> {
    let g = orbit_with_cap(o, cap)?;
    let v = g.veech_data();
    let mut text = String::new();
    writeln!(text, "index: {}", v.index)?;
    writeln!(text, "projective index: {}", v.projective_index)?;
    writeln!(text, "contains -I: {}", v.contains_minus_identity)?;
    writeln!(text, "cusps: {} (projective {})", v.cusps.len(), v.projective_cusps)?;
    writeln!(text, "elliptic points: order 2: {}, order 3: {}", v.e2, v.e3)?;
    writeln!(text, "curve genus: {}", v.curve_genus)?;
    if v.projective_index_only {
        writeln!(text, "note: {} automorphisms; indices refer to the projective action", v.automorphism_count)?;
    }
    writeln!(text, "generators: {}", v.generator_words.len())?;
    for w in &v.generator_words {
        writeln!(text, "  {w}")?;
    }
    let mut checks = Vec::new();
    for m in members {
        let m = parse_matrix(m)?;
        let res = g.membership(&m);
        writeln!(text, "member {m}: {} (word {})", res.member, res.word)?;
        checks.push(serde_json::json!({"matrix": m.entries(), "member": res.member, "word": res.word}));
    }
    let mut report = with_input("veech", o);
    report.push("veech", CertificationLevel::Exact, SectionStatus::Ok, &v)?;
    if !checks.is_empty() {
        report.push("membership", CertificationLevel::Exact, SectionStatus::Ok, &checks)?;
    }
    Ok(Outcome { text, report, inconclusive: false, capped: false })
}

fn cusps(o: &Origami, cap: usize) -> Result<Outcome> {
    let g = orbit_with_cap(o, cap)?;
    let cusps = g.cusps();
    let mut text = format!("cusps: {}\n", cusps.len());
    for (k, c) in cusps.iter().enumerate() {
        writeln!(text, "{}: width {} direction {} node {}", k + 1, c.width, c.direction_label, g.nodes[c.representative])?;
    }
    let mut report = with_input("cusps", o);
    report.push("cusps", CertificationLevel::Exact, SectionStatus::Ok, &cusps)?;
    Ok(Outcome { text, report, inconclusive: false, capped: false })
}

fn cylinders(o: &Origami, cap: usize) -> Result<Outcome> {
    let g = orbit_with_cap(o, cap)?;
    let f = forni_hypothesis_on(&g);
    let mut text = String::new();
    for (k, c) in f.cusps.iter().enumerate() {
        let shape: Vec<String> = c.decomposition.shape().iter().map(|(w, h)| format!("{w}x{h}")).collect();
        writeln!(text, "cusp {} (width {}, {}): {} cylinders [{}]", k + 1, c.cusp.width, c.cusp.direction_label, shape.len(), shape.join(" "))?;
        for (j, class) in c.core_classes.iter().enumerate() {
            writeln!(text, "  core {}: {}", j + 1, class)?;
        }
        for (a, b) in &c.homologous_pairs {
            writeln!(text, "  cylinders {} and {} have homologous cores", a + 1, b + 1)?;
        }
        writeln!(text, "  isotropic rank: {}", c.rank)?;
    }
    writeln!(text, "genus: {}", f.genus)?;
    writeln!(text, "max isotropic rank: {}", f.max_rank)?;
    writeln!(text, "forni hypothesis applicable: {}", f.applicable)?;
    let mut report = with_input("cylinders", o);
    report.push("cylinders", CertificationLevel::Exact, SectionStatus::Ok, &f)?;
    Ok(Outcome { text, report, inconclusive: false, capped: false })
}

fn kz(o: &Origami, word: &str, basis: Option<&Path>) -> Result<Outcome> {
    let word = Word::parse(word)?;
    let h = Homology::new(o);
    let mut m = kz_action(&h, &word)?;
    let mut basis_vectors = h.basis.zero_part_basis.clone();
    if let Some(path) = basis {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        basis_vectors = parse_basis(&text)?;
        m = express_in_basis(&h, &m, &basis_vectors)?;
    }
    let omega = intersection_form(&h, &basis_vectors);
    let chi = IntPolynomial::charpoly(&m.matrix)?;
    let mut text = String::new();
    writeln!(text, "word: {word}  sl2: {}", word.matrix())?;
    writeln!(text, "matrix on the zero part:\n{}", m.matrix.to_text())?;
    writeln!(text, "intersection form:\n{}", omega.to_text())?;
    writeln!(text, "char poly: {chi}")?;
    writeln!(text, "symplectic: {}", m.is_symplectic(&omega))?;
    writeln!(text, "unipotent: {}", m.is_unipotent())?;
    match m.quasi_unipotent_order() {
        Some(k) => writeln!(text, "quasi-unipotent: power {k} is unipotent")?,
        None => writeln!(text, "quasi-unipotent: no")?,
    }
    let mut report = with_input("kz", o);
    let data = serde_json::json!({
        "word": word,
        "matrix": m.matrix,
        "intersection_form": omega,
        "char_poly": chi,
        "symplectic": m.is_symplectic(&omega),
        "unipotent": m.is_unipotent(),
        "quasi_unipotent_order": m.quasi_unipotent_order(),
    });
    report.push("kz", CertificationLevel::Exact, SectionStatus::Ok, &data)?;
    Ok(Outcome { text, report, inconclusive: false, capped: false })
}

fn classes(v: &[SquareClass]) -> String {
    let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", s.join(", "))
}

fn describe_analysis(text: &mut String, label: &str, a: &Option<ReciprocalAnalysis>) -> Result<()> {
    match a {
        None => writeln!(text, "{label}: reducible")?,
        Some(a) => {
            writeln!(text, "{label}: irreducible, totally real: {}, trace poly {}", a.totally_real, a.trace_poly)?;
            writeln!(text, "  galois type {:?}, splitting degree {:?} ({:?})", a.galois_type, a.splitting_degree, a.certification)?;
            writeln!(text, "  quadratic subfields {}", classes(&a.quadratic_subfields))?;
            if let Some(p) = &a.shifted_norm_subfields {
                writeln!(text, "  classes of (b-2)^2-4a^2, a^2-4(b-2), product: {}", classes(p))?;
            }
        }
    }
    Ok(())
}

fn describe_certificate(text: &mut String, c: &MmyCertificate) -> Result<()> {
    writeln!(text, "phi1 = {} (trace {}), phi2 = {} (trace {})", c.phi1, c.phi1.trace, c.phi2, c.phi2.trace)?;
    writeln!(text, "char poly of phi1: {}", c.char_poly1)?;
    writeln!(text, "char poly of phi2^2: {}", c.char_poly2)?;
    describe_analysis(text, "K1", &c.analysis1)?;
    describe_analysis(text, "K2", &c.analysis2)?;
    writeln!(text, "condition 1 (irreducible): {}", c.conditions.irreducible)?;
    writeln!(text, "condition 2 (totally real, full degree): {}", c.conditions.totally_real_full_degree)?;
    writeln!(text, "condition 3 (disjoint fields): {}", c.conditions.no_common_invariant_subspace)?;
    writeln!(text, "verdict: {:?} ({:?})", c.verdict, c.certification_level)?;
    Ok(())
}

fn certificate(o: &Origami, words: &Words) -> Result<Option<MmyCertificate>> {
    Ok(match (&words.phi1, &words.phi2) {
        (Some(a), Some(b)) => Some(mmy_check(o, &AffineWord::parse(a)?, &AffineWord::parse(b)?)?),
        _ => search_hyperbolic_pair(o, &SearchBudget::new(words.budget))?,
    })
}

fn mmy(o: &Origami, words: &Words) -> Result<Outcome> {
    let cert = certificate(o, words)?;
    let mut text = String::new();
    let mut report = with_input("mmy", o);
    let inconclusive = match &cert {
        Some(c) => {
            describe_certificate(&mut text, c)?;
            let status = match c.verdict {
                Verdict::Pass => SectionStatus::Ok,
                Verdict::Fail => SectionStatus::Failed,
                Verdict::Inconclusive => SectionStatus::Inconclusive,
            };
            report.push("certificate", c.certification_level.into(), status, c)?;
            c.verdict == Verdict::Inconclusive
        }
        None => {
            writeln!(text, "no passing pair within block exponent {}", words.budget)?;
            report.push("certificate", CertificationLevel::Evidence, SectionStatus::Inconclusive, &serde_json::Value::Null)?;
            true
        }
    };
    Ok(Outcome { text, report, inconclusive, capped: false })
}

fn describe_exponents(text: &mut String, e: &LyapunovEstimate) -> Result<()> {
    writeln!(text, "nu1 = 1")?;
    for (k, (x, err)) in e.exponents.iter().zip(&e.std_errors).enumerate() {
        writeln!(text, "nu{} = {:.4} +- {:.4}", k + 2, x, err)?;
    }
    writeln!(text, "steps {} x {} chain(s), seed {}, cadence {}", e.steps, e.chains, e.seed, e.cadence)?;
    Ok(())
}

fn lyapunov(o: &Origami, run: &RunArgs) -> Result<Outcome> {
    let cfg = LyapunovConfig { steps: run.steps, seed: run.seed, chains: run.chains, cadence: run.cadence, batches: 20 };
    let e = estimate_exponents(o, &cfg)?;
    let diag = convergence_diagnostics(&e);
    let mut text = String::new();
    describe_exponents(&mut text, &e)?;
    writeln!(text, "converged: {}", diag.converged)?;
    let mut report = with_input("lyapunov", o);
    let status = if diag.converged { SectionStatus::Ok } else { SectionStatus::Partial };
    report.push("exponents", CertificationLevel::MonteCarlo, status, &e)?;
    report.push("diagnostics", CertificationLevel::MonteCarlo, status, &diag)?;
    Ok(Outcome { text, report, inconclusive: false, capped: false })
}

fn enumerate(
    degree: usize,
    stratum: &str,
    max_rank: Option<usize>,
    mmy: bool,
    budget: u32,
    max_origamis: usize,
    orbit_cap: usize,
) -> Result<Outcome> {
    let kappa: Vec<usize> = stratum
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| anyhow::Error::new(Error::Precondition(format!("stratum {stratum:?}: {e}"))))?;
    let mut spec = SearchSpec::new(degree, kappa)?;
    spec.max_rank = max_rank;
    spec.require_mmy = mmy;
    spec.mmy_budget = budget;
    spec.max_origamis = max_origamis;
    spec.orbit_cap = orbit_cap;
    let result = enumerate_origamis(&spec)?;
    let candidates = filter_candidates(&result, &spec)?;
    let mut text = render_enumeration(&result);
    writeln!(text, "# candidates (max isotropic rank < genus): {}", candidates.len())?;
    for c in &candidates {
        write!(text, "# rank {} genus {} orbit size {}", c.max_rank, c.genus, c.orbit.size)?;
        if let Some((a, b)) = &c.mmy_words {
            write!(text, " mmy {a} {b}")?;
        }
        writeln!(text, " [{}]\n{}", c.status, c.orbit.representative.to_text())?;
    }
    let mut report = ReportEnvelope::new("enumerate");
    let status = if result.partial { SectionStatus::Partial } else { SectionStatus::Ok };
    report.push("enumeration", CertificationLevel::Exact, status, &result)?;
    report.push("candidates", CertificationLevel::Exact, status, &candidates)?;
    let inconclusive = candidates.iter().any(|c| c.mmy_verdict == Some(Verdict::Inconclusive));
    Ok(Outcome { text, report, inconclusive, capped: result.partial })
}

fn counterexample(o: &Origami, words: &Words, steps: u64, seed: u64) -> Result<Outcome> {
    let pair = match (&words.phi1, &words.phi2) {
        (Some(a), Some(b)) => Some((AffineWord::parse(a)?, AffineWord::parse(b)?)),
        _ => None,
    };
    let r = counterexample_report(o, pair, &SearchBudget::new(words.budget))?;
    let mut text = String::new();
    writeln!(text, "genus: {}", r.genus)?;
    writeln!(text, "max isotropic rank over cusps: {}", r.forni.max_rank)?;
    writeln!(text, "forni hypothesis applicable: {}", r.forni.applicable)?;
    if let Some(c) = &r.mmy {
        describe_certificate(&mut text, c)?;
    }
    for s in &r.status {
        writeln!(text, "note: {s}")?;
    }
    let mut report = with_input("counterexample", o);
    report.push("forni", CertificationLevel::Exact, SectionStatus::Ok, &r.forni)?;
    let level = r.mmy.as_ref().map_or(Certification::Inconclusive, |c| c.certification_level);
    let inconclusive = r.genus >= 2 && r.mmy.as_ref().is_none_or(|c| c.verdict == Verdict::Inconclusive);
    report.push(
        "mmy",
        level.into(),
        if inconclusive { SectionStatus::Inconclusive } else { SectionStatus::Ok },
        &r.mmy,
    )?;
    if steps > 0 && r.genus >= 2 {
        let e = estimate_exponents(o, &LyapunovConfig::new(steps, seed))?;
        describe_exponents(&mut text, &e)?;
        report.push("exponents", CertificationLevel::MonteCarlo, SectionStatus::Ok, &e)?;
    }
    writeln!(
        text,
        "verdict: {}",
        if r.counterexample_to_converse { "counterexample to converse" } else { "not a counterexample" }
    )?;
    report.push(
        "verdict",
        level.into(),
        SectionStatus::Ok,
        &serde_json::json!({"counterexample_to_converse": r.counterexample_to_converse}),
    )?;
    Ok(Outcome { text, report, inconclusive, capped: false })
}
