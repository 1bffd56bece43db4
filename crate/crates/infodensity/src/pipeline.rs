//! Runs ingest, ratios, post analysis, RIC and plots from one TOML file.
//!
//! ```toml
//! [output]
//! dir = "out"
//! format = "csv"
//!
//! [corpus]
//! format = "udhr"
//! input = "data/udhr"
//! langs = ["eng", "jpn", "cmn_hans", "cmn_hant"]
//!
//! [ratios]
//! base = "cmn_hant"
//! others = ["eng", "jpn", "cmn_hans"]
//! measure = "characters"
//!
//! [posts]
//! posts = "posts.jsonl"
//! accounts = "accounts.csv"
//!
//! [ric]
//! base = "eng"
//! ```
//!
//! Relative paths are resolved against the config file's directory. The
//! `[posts]` and `[ric]` sections are optional.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use infodensity_core::corpus::CorpusFilterPolicy;
use infodensity_core::lang::{LanguageRegistry, LanguageTag};
use infodensity_core::measure::SpaceMeasure;
use infodensity_core::microblog::DEFAULT_MIN_POSTS;

use crate::corpus_io::{ingest, write_corpus, CorpusLayout};
use crate::error::{Error, Result};
use crate::posts_io::{load_accounts, load_posts, PostFormat};
use crate::records::{ratio_table, ric_table, stats_table};
use crate::stages::{
    analyze_posts, compute_ratios, compute_ric_rows, grouped_series, ratio_series, ratio_table_for,
};
use crate::svg::write_boxplot;
use crate::table::{emit_table, TableFormat};

pub const STAGES: [&str; 5] = [
    "corpus ingest",
    "ratios",
    "posts analyze",
    "ric",
    "plot box",
];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub output: OutputSection,
    pub corpus: CorpusSection,
    pub ratios: RatiosSection,
    pub posts: Option<PostsSection>,
    pub ric: Option<RicSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    #[serde(default = "default_format")]
    pub format: String,
}

fn default_format() -> String {
    "csv".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSection {
    pub format: CorpusLayout,
    pub input: PathBuf,
    pub langs: Vec<String>,
    pub min_chars: Option<usize>,
    pub reference: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatiosSection {
    pub base: String,
    pub others: Vec<String>,
    #[serde(default = "default_measure")]
    pub measure: String,
}

fn default_measure() -> String {
    "characters".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostsSection {
    pub posts: PathBuf,
    pub accounts: PathBuf,
    #[serde(default = "default_min_posts")]
    pub min_posts: usize,
}

fn default_min_posts() -> usize {
    DEFAULT_MIN_POSTS
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RicSection {
    pub base: String,
    #[serde(default = "default_measure")]
    pub measure: String,
}

impl PipelineConfig {
    pub fn from_toml(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::data(path, e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::from_toml(&text, path)?;
        let root = path.parent().unwrap_or(Path::new("."));
        config.resolve_paths(root);
        Ok(config)
    }

    fn resolve_paths(&mut self, root: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = root.join(&*p);
            }
        };
        fix(&mut self.output.dir);
        fix(&mut self.corpus.input);
        if let Some(posts) = &mut self.posts {
            fix(&mut posts.posts);
            fix(&mut posts.accounts);
        }
    }
}

/// Files written by a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutputs {
    pub corpus: PathBuf,
    pub ratios: PathBuf,
    pub ratios_plot: PathBuf,
    pub stats: Option<PathBuf>,
    pub ric: Option<PathBuf>,
    pub ric_plot: Option<PathBuf>,
}

impl PipelineOutputs {
    pub fn all(&self) -> Vec<&Path> {
        let mut v = vec![
            self.corpus.as_path(),
            self.ratios.as_path(),
            self.ratios_plot.as_path(),
        ];
        v.extend(
            [&self.stats, &self.ric, &self.ric_plot]
                .into_iter()
                .flatten()
                .map(PathBuf::as_path),
        );
        v
    }
}

fn parse_langs(reg: &LanguageRegistry, codes: &[String]) -> Result<Vec<LanguageTag>> {
    codes
        .iter()
        .map(|c| reg.parse(c).map_err(Error::from))
        .collect()
}

fn parse_measure(s: &str) -> Result<SpaceMeasure> {
    s.parse().map_err(Error::from)
}

/// Runs every configured stage in order. Errors name the failing stage.
pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineOutputs> {
    let reg = LanguageRegistry::default();
    let format: TableFormat = config.output.format.parse()?;
    let ext = match format {
        TableFormat::Csv => "csv",
        TableFormat::Json => "json",
    };
    let out = &config.output.dir;
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;

    let stage = STAGES[0];
    let corpus_path = out.join("corpus.jsonl");
    let corpus = (|| {
        let c = &config.corpus;
        let langs = parse_langs(&reg, &c.langs)?;
        let mut policy = CorpusFilterPolicy {
            min_length_chars: c.min_chars.unwrap_or(c.format.default_min_chars()),
            ..CorpusFilterPolicy::default()
        };
        if let Some(r) = &c.reference {
            policy.reference = reg.parse(r)?;
        } else if !langs.contains(&policy.reference) {
            policy.reference = langs[0].clone();
        }
        let (corpus, report) = ingest(c.format, &c.input, &langs, &policy)?;
        log::info!(
            "{stage}: kept {} of {} units",
            report.kept,
            report.input_units
        );
        write_corpus(&corpus, &corpus_path)?;
        Ok(corpus)
    })()
    .map_err(|e: Error| e.in_stage(stage))?;

    let stage = STAGES[1];
    let ratios_path = out.join(format!("ratios.{ext}"));
    let ratios = (|| {
        let r = &config.ratios;
        let base = reg.parse(&r.base)?;
        let others = parse_langs(&reg, &r.others)?;
        let rows = compute_ratios(&corpus, &base, &others, parse_measure(&r.measure)?)?;
        emit_table(&ratio_table(&rows), format, Some(&ratios_path))?;
        Ok(rows)
    })()
    .map_err(|e: Error| e.in_stage(stage))?;

    let mut outputs = PipelineOutputs {
        corpus: corpus_path,
        ratios: ratios_path,
        ratios_plot: out.join("ratios.svg"),
        stats: None,
        ric: None,
        ric_plot: None,
    };

    let mut ric_rows = None;
    if let Some(p) = &config.posts {
        let stage = STAGES[2];
        let stats_path = out.join(format!("stats.{ext}"));
        let analysis = (|| {
            let posts = load_posts(&p.posts, PostFormat::from_path(&p.posts))?;
            let accounts = load_accounts(&p.accounts)?;
            let analysis = analyze_posts(&posts, &accounts, p.min_posts)?;
            emit_table(&stats_table(&analysis.included), format, Some(&stats_path))?;
            Ok(analysis)
        })()
        .map_err(|e: Error| e.in_stage(stage))?;
        outputs.stats = Some(stats_path);

        if let Some(ric) = &config.ric {
            let stage = STAGES[3];
            let ric_path = out.join(format!("ric.{ext}"));
            let rows = (|| {
                let base = reg.parse(&ric.base)?;
                let table = ratio_table_for(
                    &corpus,
                    &analysis.included,
                    &base,
                    parse_measure(&ric.measure)?,
                )?;
                let rows = compute_ric_rows(&analysis.included, &table, &base)?;
                emit_table(&ric_table(&rows), format, Some(&ric_path))?;
                Ok(rows)
            })()
            .map_err(|e: Error| e.in_stage(stage))?;
            outputs.ric = Some(ric_path);
            ric_rows = Some(rows);
        }
    }

    let stage = STAGES[4];
    (|| {
        let title = format!(
            "{} ratios against {}",
            config.ratios.measure, config.ratios.base
        );
        write_boxplot(&outputs.ratios_plot, &ratio_series(&ratios), &title, None)?;
        if let Some(rows) = &ric_rows {
            let path = out.join("ric.svg");
            let series = grouped_series(rows.iter().map(|(_, r)| (r.meta.clone(), r.mean_ric)));
            if series.is_empty() {
                log::warn!("{stage}: no accounts to plot");
            } else {
                write_boxplot(&path, &series, "Mean RIC per account", None)?;
                outputs.ric_plot = Some(path);
            }
        }
        Ok(())
    })()
    .map_err(|e: Error| e.in_stage(stage))?;

    Ok(outputs)
}
