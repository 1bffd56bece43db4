use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use infodensity::corpus_io::{ingest, read_corpus, write_corpus, CorpusLayout};
use infodensity::posts_io::{load_accounts, load_posts, PostFormat};
use infodensity::records::{
    per_unit_table, ratio_table, read_labelled_values, read_length_means, read_ratio_table,
    read_ric_means, read_stats_table, ric_table, stats_table,
};
use infodensity::stages::{
    analyze_posts, compute_ratios, compute_ric_rows, grouped_series, labelled_series,
};
use infodensity::svg::{write_boxplot, SecondaryAxis};
use infodensity::table::{emit_table, Table, TableFormat};
use infodensity::{run_pipeline, PipelineConfig};
use infodensity_core::corpus::CorpusFilterPolicy;
use infodensity_core::lang::LanguageTag;
use infodensity_core::limits::{check_fit, LimitSpec};
use infodensity_core::measure::SpaceMeasure;
use infodensity_core::microblog::DEFAULT_MIN_POSTS;

/// Cross-language information density from parallel corpora and microblog posts.
#[derive(Debug, Parser)]
#[command(name = "infodensity", version)]
struct Cli {
    /// Format of tables written to stdout or --out.
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Only print errors.
    #[arg(long, short)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parallel corpus operations.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Per-unit space ratios against a base language.
    Ratios(RatiosArgs),
    /// Microblog post operations.
    #[command(subcommand)]
    Posts(PostsCommand),
    /// Relative information content per account.
    Ric(RicArgs),
    /// Platform length limits.
    #[command(subcommand)]
    Limit(LimitCommand),
    /// SVG plots.
    #[command(subcommand)]
    Plot(PlotCommand),
    /// Multi-stage runs from a config file.
    #[command(subcommand)]
    Pipeline(PipelineCommand),
}

#[derive(Debug, Subcommand)]
enum CorpusCommand {
    /// Read a directory of texts or subtitles into a corpus document.
    Ingest(IngestArgs),
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[arg(long, value_enum)]
    format: CorpusLayout,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    langs: Vec<LanguageTag>,
    /// Minimum reference-language length in characters. Defaults to 0 for
    /// udhr and 1000 for ted.
    #[arg(long)]
    min_chars: Option<usize>,
    /// Language the minimum length applies to. Defaults to eng when listed.
    #[arg(long)]
    reference: Option<LanguageTag>,
    /// Keep units missing some languages.
    #[arg(long)]
    allow_partial: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct RatiosArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    base: LanguageTag,
    #[arg(long, value_delimiter = ',', required = true)]
    others: Vec<LanguageTag>,
    #[arg(long, default_value = "characters")]
    measure: SpaceMeasure,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write `label,unit_id,value` rows for plotting.
    #[arg(long)]
    per_unit: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum PostsCommand {
    /// Per-account length statistics.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PostsFormatArg {
    Jsonl,
    Csv,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    posts: PathBuf,
    /// Defaults to the file extension.
    #[arg(long, value_enum)]
    posts_format: Option<PostsFormatArg>,
    #[arg(long)]
    accounts: PathBuf,
    /// Accounts need more than this many posts.
    #[arg(long, default_value_t = DEFAULT_MIN_POSTS)]
    min_posts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RicArgs {
    #[arg(long)]
    stats: PathBuf,
    #[arg(long)]
    ratios: PathBuf,
    #[arg(long)]
    base: LanguageTag,
    /// Which ratio rows to use.
    #[arg(long, default_value = "characters")]
    measure: SpaceMeasure,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum LimitCommand {
    /// Check whether a text fits a platform limit.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// twitter, weibo or sms.
    #[arg(long)]
    platform: LimitSpec,
    #[arg(long, conflicts_with = "file")]
    text: Option<String>,
    /// Read the text from a file, `-` for stdin.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum PlotCommand {
    /// Boxplot of labelled values, account lengths or account RIC.
    Box(BoxArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlotKind {
    /// `label,value` rows.
    Values,
    /// Stats table, grouped by platform, language and org type.
    Lengths,
    /// RIC table, grouped likewise.
    Ric,
}

#[derive(Debug, Args)]
struct BoxArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: PlotKind,
    #[arg(long, default_value = "")]
    title: String,
    /// Left-axis value drawn at --target on a secondary axis.
    #[arg(long)]
    reference: Option<f64>,
    #[arg(long, default_value_t = 140.0, requires = "reference")]
    target: f64,
    #[arg(long, default_value = "")]
    secondary_label: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum PipelineCommand {
    /// Run every configured stage.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn read_input_text(args: &CheckArgs) -> anyhow::Result<String> {
    match (&args.text, &args.file) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(p)) if p == Path::new("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| anyhow::anyhow!("reading stdin: {e}"))?;
            Ok(s)
        }
        (None, Some(p)) => {
            std::fs::read_to_string(p).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))
        }
        (None, None) => anyhow::bail!("one of --text or --file is required"),
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let format = cli.format;
    match cli.command {
        Command::Corpus(CorpusCommand::Ingest(a)) => {
            let mut policy = CorpusFilterPolicy {
                require_all_languages: !a.allow_partial,
                min_length_chars: a.min_chars.unwrap_or(a.format.default_min_chars()),
                ..CorpusFilterPolicy::default()
            };
            match a.reference {
                Some(r) => policy.reference = r,
                None if !a.langs.contains(&policy.reference) => {
                    policy.reference = a.langs[0].clone()
                }
                None => {}
            }
            let (corpus, report) = ingest(a.format, &a.input, &a.langs, &policy)?;
            write_corpus(&corpus, &a.out)?;
            log::info!(
                "kept {} of {} units ({} missing a language, {} too short)",
                report.kept,
                report.input_units,
                report.missing_languages,
                report.below_min_length
            );
        }
        Command::Ratios(a) => {
            let corpus = read_corpus(&a.corpus)?;
            let rows = compute_ratios(&corpus, &a.base, &a.others, a.measure)?;
            for r in &rows {
                if r.skipped > 0 {
                    log::warn!("{}/{}: skipped {} units", r.lang_b, r.lang_a, r.skipped);
                }
            }
            if let Some(p) = &a.per_unit {
                emit_table(&per_unit_table(&rows), format, Some(p))?;
            }
            emit_table(&ratio_table(&rows), format, a.out.as_deref())?;
        }
        Command::Posts(PostsCommand::Analyze(a)) => {
            let pf = match a.posts_format {
                Some(PostsFormatArg::Jsonl) => PostFormat::Jsonl,
                Some(PostsFormatArg::Csv) => PostFormat::Csv,
                None => PostFormat::from_path(&a.posts),
            };
            let posts = load_posts(&a.posts, pf)?;
            let accounts = load_accounts(&a.accounts)?;
            let analysis = analyze_posts(&posts, &accounts, a.min_posts)?;
            log::info!(
                "{} accounts included, {} excluded",
                analysis.included.len(),
                analysis.excluded.len()
            );
            emit_table(&stats_table(&analysis.included), format, a.out.as_deref())?;
        }
        Command::Ric(a) => {
            let stats = read_stats_table(&a.stats)?;
            let ratios = read_ratio_table(&a.ratios, a.measure)?;
            let rows = compute_ric_rows(&stats, &ratios, &a.base)?;
            emit_table(&ric_table(&rows), format, a.out.as_deref())?;
        }
        Command::Limit(LimitCommand::Check(a)) => {
            let text = read_input_text(&a)?;
            let fit = check_fit(&text, &a.platform);
            let mut t = Table::new(&[
                "platform",
                "fits",
                "units_used",
                "units_max",
                "unit_kind",
                "encoding",
            ]);
            t.push(vec![
                a.platform.name().into(),
                fit.fits.into(),
                fit.units_used.into(),
                fit.units_max.into(),
                fit.unit_kind.name().into(),
                fit.encoding_chosen
                    .map(|e| e.to_string())
                    .unwrap_or_default()
                    .into(),
            ])?;
            emit_table(&t, format, None)?;
        }
        Command::Plot(PlotCommand::Box(a)) => {
            let series = match a.kind {
                PlotKind::Values => labelled_series(&read_labelled_values(&a.input)?),
                PlotKind::Lengths => grouped_series(read_length_means(&a.input)?),
                PlotKind::Ric => grouped_series(read_ric_means(&a.input)?),
            };
            let secondary = a.reference.map(|reference_mean| SecondaryAxis {
                label: a.secondary_label.clone(),
                reference_mean,
                target: a.target,
            });
            write_boxplot(&a.out, &series, &a.title, secondary.as_ref())?;
        }
        Command::Pipeline(PipelineCommand::Run { config }) => {
            let cfg = PipelineConfig::load(&config)?;
            let outputs = run_pipeline(&cfg)?;
            for p in outputs.all() {
                log::info!("wrote {}", p.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "info" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
