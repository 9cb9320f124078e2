use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use semnet::pipeline::{
    export_bundle, load_bundle, run_stages, to_canonical_json, ExportFormats, ModularityTable, Stages,
};
use semnet::resources::Resources;
use semnet::{
    load_corpus, role_analysis_eligibility, AnalysisConfig, CommunityMethod, Error, PairMode, ReportBundle, Role,
    Subcase, Threshold,
};

#[derive(Parser)]
#[command(name = "semnet", version, about = "Sentiment tests and word co-occurrence networks over testimony transcripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sentiment, tests and networks for every scope.
    Analyze(RunArgs),
    /// Sentiment summaries and the test cascade only.
    Sentiment(RunArgs),
    /// Pair counts, thresholds and graphs only.
    Network(RunArgs),
    /// Re-emit the files of a saved report.
    Export(ExportArgs),
    /// Print document counts and role eligibility.
    Inspect(InspectArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with analysis settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Transcript file or directory of JSON Lines files.
    #[arg(long)]
    corpus: Option<String>,
    /// Pair mode; repeat for both.
    #[arg(long, value_parser = parse_mode)]
    mode: Vec<PairMode>,
    #[arg(long)]
    max_skip: Option<usize>,
    /// `auto` or a fixed minimum pair count.
    #[arg(long, value_parser = parse_threshold)]
    threshold: Option<Threshold>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    min_docs: Option<usize>,
    /// Community methods, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<CommunityMethod>,
    /// Strip accents before matching (ñ is kept).
    #[arg(long)]
    fold_diacritics: bool,
    #[arg(long)]
    lemmas: Option<String>,
    #[arg(long)]
    valence: Option<String>,
    #[arg(long)]
    polarity_positive: Option<String>,
    #[arg(long)]
    polarity_negative: Option<String>,
    #[arg(long)]
    stopwords: Option<String>,
    /// Output directory; without it the JSON report goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the summary tables instead of JSON when no output directory is given.
    #[arg(long)]
    summary: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// A report.json written earlier.
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    no_csv: bool,
    #[arg(long)]
    no_graphs: bool,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value_t = 3)]
    min_docs: usize,
}

fn parse_mode(s: &str) -> Result<PairMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_threshold(s: &str) -> Result<Threshold, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<CommunityMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl RunArgs {
    fn config(&self) -> semnet::Result<AnalysisConfig> {
        let mut c = match &self.config {
            Some(p) => AnalysisConfig::from_file(p)?,
            None => AnalysisConfig::default(),
        };
        let set = |slot: &mut Option<String>, v: &Option<String>| {
            if v.is_some() {
                slot.clone_from(v);
            }
        };
        set(&mut c.corpus, &self.corpus);
        set(&mut c.lexicons.lemmas, &self.lemmas);
        set(&mut c.lexicons.valence, &self.valence);
        set(&mut c.lexicons.polarity_positive, &self.polarity_positive);
        set(&mut c.lexicons.polarity_negative, &self.polarity_negative);
        set(&mut c.lexicons.stopwords, &self.stopwords);
        if !self.mode.is_empty() {
            c.modes.clone_from(&self.mode);
        }
        if !self.methods.is_empty() {
            c.methods.clone_from(&self.methods);
        }
        c.max_skip = self.max_skip.unwrap_or(c.max_skip);
        c.threshold = self.threshold.unwrap_or(c.threshold);
        c.seed = self.seed.unwrap_or(c.seed);
        c.alpha = self.alpha.unwrap_or(c.alpha);
        c.min_docs = self.min_docs.unwrap_or(c.min_docs);
        c.fold_diacritics |= self.fold_diacritics;
        if let Some(out) = &self.out {
            c.out = Some(out.display().to_string());
        }
        c.validate()?;
        Ok(c)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_data_error() { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> semnet::Result<()> {
    match cli.command {
        Command::Analyze(a) => analyse(&a, Stages::All),
        Command::Sentiment(a) => analyse(&a, Stages::SentimentOnly),
        Command::Network(a) => analyse(&a, Stages::NetworksOnly),
        Command::Export(a) => {
            let bundle = load_bundle(&a.from)?;
            let formats = ExportFormats {
                json: true,
                csv: !a.no_csv,
                graphs: !a.no_graphs,
            };
            let files = export_bundle(&bundle, &a.out, formats)?;
            eprintln!("wrote {} files to {}", files.len(), a.out.display());
            Ok(())
        }
        Command::Inspect(a) => inspect(&a),
    }
}

fn analyse(args: &RunArgs, stages: Stages) -> semnet::Result<()> {
    let config = args.config()?;
    let path = config
        .corpus
        .clone()
        .ok_or_else(|| Error::Config("no corpus given; use --corpus or set `corpus` in the config".into()))?;
    let corpus = load_corpus(&path)?;
    let resources = Resources::load(&config)?;
    let bundle = run_stages(&config, &resources, &corpus, stages)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let written = match &args.out {
        Some(dir) => {
            let files = export_bundle(&bundle, dir, ExportFormats::default())?;
            eprintln!("wrote {} files to {}", files.len(), dir.display());
            print_summary(&bundle, &mut out)
        }
        None if args.summary => print_summary(&bundle, &mut out),
        None => out.write_all(to_canonical_json(&bundle)?.as_bytes()),
    };
    match written {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Error::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn print_summary(bundle: &ReportBundle, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "{:<28} {:>5}  {:<10} {:<10} networks", "scope", "docs", "magnitude", "proportion")?;
    for s in &bundle.scopes {
        if let Some(reason) = &s.skipped {
            writeln!(out, "{:<28} {:>5}  skipped: {reason}", s.scope, s.documents.len())?;
            continue;
        }
        let verdict = |o: Option<&semnet::pipeline::CascadeOutcome>| match o.and_then(|o| o.decision.as_ref()) {
            Some(d) if d.degenerate.is_some() => "degenerate".to_string(),
            Some(d) => match (&d.main, d.reject_null) {
                (Some(m), true) => format!("reject {:.3}", m.p_value),
                (Some(m), false) => format!("keep {:.3}", m.p_value),
                (None, _) => "n/a".into(),
            },
            None => "-".into(),
        };
        let sent = s.sentiment.as_ref();
        let nets: Vec<String> = s
            .networks
            .iter()
            .map(|n| match &n.graph {
                Some(g) => format!(
                    "{} v={} n={} Q={:.3}",
                    n.mode, n.threshold.applied, g.summary.vertices, g.best.modularity
                ),
                None => format!("{} none", n.mode),
            })
            .collect();
        writeln!(
            out,
            "{:<28} {:>5}  {:<10} {:<10} {}",
            s.scope,
            s.documents.len(),
            verdict(sent.map(|x| &x.magnitude)),
            verdict(sent.map(|x| &x.proportion)),
            nets.join("; ")
        )?;
    }
    for table in &bundle.modularity_tables {
        print_table(table, out)?;
    }
    Ok(())
}

fn print_table(table: &ModularityTable, out: &mut impl Write) -> io::Result<()> {
    let cell = |q: Option<f64>| q.map_or_else(|| "-".to_string(), |q| format!("{q:.3}"));
    writeln!(out)?;
    writeln!(out, "modularity ({})", table.mode)?;
    writeln!(out, "{:<20} {:>8} {:>10} {:>8}", "", "all", "appearers", "victims")?;
    for r in &table.rows {
        writeln!(
            out,
            "{:<20} {:>8} {:>10} {:>8}",
            r.row,
            cell(r.all),
            cell(r.appearers),
            cell(r.victims)
        )?;
    }
    Ok(())
}

fn inspect(args: &InspectArgs) -> semnet::Result<()> {
    let corpus = load_corpus(&args.corpus)?;
    let skipped = corpus.documents.iter().filter(|d| d.skipped).count();
    println!("{} documents ({skipped} with empty text)", corpus.len());
    println!("{:<20} {:>6} {:>10} {:>8} {:>8}", "subcase", "total", "appearers", "victims", "unknown");
    for s in Subcase::REGIONS.into_iter().chain([Subcase::Unassigned]) {
        let total = corpus.count(Some(s), None);
        if s == Subcase::Unassigned && total == 0 {
            continue;
        }
        println!(
            "{:<20} {:>6} {:>10} {:>8} {:>8}",
            s.to_string(),
            total,
            corpus.count(Some(s), Some(Role::Appearer)),
            corpus.count(Some(s), Some(Role::Victim)),
            corpus.count(Some(s), Some(Role::Unknown))
        );
    }
    println!(
        "{:<20} {:>6} {:>10} {:>8} {:>8}",
        "General",
        corpus.len(),
        corpus.count(None, Some(Role::Appearer)),
        corpus.count(None, Some(Role::Victim)),
        corpus.count(None, Some(Role::Unknown))
    );
    println!();
    println!("role analysis (min_docs = {})", args.min_docs);
    for c in role_analysis_eligibility(&corpus, args.min_docs) {
        let mark = if c.eligible { "eligible" } else { "excluded" };
        println!("{:<20} {:<10} {:>4}  {mark}", c.subcase.to_string(), c.role.to_string(), c.documents);
    }
    Ok(())
}
