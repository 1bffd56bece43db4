//! Analysis steps shared by the CLI subcommands and the pipeline runner.

use std::collections::BTreeMap;

use infodensity_core::corpus::ParallelCorpus;
use infodensity_core::lang::LanguageTag;
use infodensity_core::measure::SpaceMeasure;
use infodensity_core::microblog::{
    account_length_stats, assign_posts, compute_ric, AccountMeta, AccountOutcome, AccountStats,
    GroupKey, Post, RatioTable, RicResult,
};
use infodensity_core::ratio::{aggregate_ratios, RatioStats};
use infodensity_core::stats::DescriptiveStats;

use crate::error::{Error, Result};
use crate::svg::BoxplotSeries;

/// `ratio(other, base)` for each other language, in the order given.
pub fn compute_ratios(
    corpus: &ParallelCorpus,
    base: &LanguageTag,
    others: &[LanguageTag],
    measure: SpaceMeasure,
) -> Result<Vec<RatioStats>> {
    if others.is_empty() {
        return Err(Error::Usage(
            "no languages to compare against the base".into(),
        ));
    }
    others
        .iter()
        .map(|b| aggregate_ratios(corpus, b, base, measure).map_err(Error::from))
        .collect()
}

/// Ratio table holding `ratio(lang, base)` for every account language other
/// than `base`.
pub fn ratio_table_for(
    corpus: &ParallelCorpus,
    accounts: &[AccountStats],
    base: &LanguageTag,
    measure: SpaceMeasure,
) -> Result<RatioTable> {
    let mut table = RatioTable::new();
    for s in accounts {
        let lang = &s.meta.language;
        let key = (lang.clone(), base.clone());
        if lang == base || table.contains_key(&key) {
            continue;
        }
        let r = aggregate_ratios(corpus, lang, base, measure)?;
        table.insert(key, r.stats.mean);
    }
    Ok(table)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PostsAnalysis {
    pub included: Vec<AccountStats>,
    pub excluded: Vec<(AccountMeta, usize)>,
    pub unknown_account: usize,
    pub unassigned_language: usize,
}

pub fn analyze_posts(
    posts: &[Post],
    accounts: &[AccountMeta],
    min_posts: usize,
) -> Result<PostsAnalysis> {
    let assignment = assign_posts(posts, accounts)?;
    let mut out = PostsAnalysis {
        unknown_account: assignment.unknown_account,
        unassigned_language: assignment.unassigned_language,
        ..Default::default()
    };
    if out.unknown_account > 0 {
        log::warn!("{} posts belong to no listed account", out.unknown_account);
    }
    if out.unassigned_language > 0 {
        log::warn!(
            "{} posts could not be assigned a language",
            out.unassigned_language
        );
    }
    for (meta, posts) in &assignment.accounts {
        match account_length_stats(posts, meta, min_posts)? {
            AccountOutcome::Included(s) => out.included.push(s),
            AccountOutcome::Excluded { meta, n_posts } => {
                log::info!(
                    "excluding {}/{} ({n_posts} posts)",
                    meta.platform,
                    meta.screen_name
                );
                out.excluded.push((meta, n_posts));
            }
        }
    }
    Ok(out)
}

pub fn compute_ric_rows(
    stats: &[AccountStats],
    ratios: &RatioTable,
    base: &LanguageTag,
) -> Result<Vec<(AccountStats, RicResult)>> {
    stats
        .iter()
        .map(|s| Ok((s.clone(), compute_ric(s, ratios, base)?)))
        .collect()
}

pub fn group_label(key: &GroupKey) -> String {
    format!("{}/{}/{}", key.0, key.1, key.2)
}

fn series(label: String, values: &[f64]) -> Option<BoxplotSeries> {
    DescriptiveStats::from_values(values).map(|stats| BoxplotSeries { label, stats })
}

/// One series per language, from per-unit ratios.
pub fn ratio_series(rows: &[RatioStats]) -> Vec<BoxplotSeries> {
    rows.iter()
        .map(|r| BoxplotSeries {
            label: format!("{}/{}", r.lang_b, r.lang_a),
            stats: r.stats.clone(),
        })
        .collect()
}

/// One series per (platform, language, org type) cell.
pub fn grouped_series(rows: impl IntoIterator<Item = (AccountMeta, f64)>) -> Vec<BoxplotSeries> {
    let mut groups: BTreeMap<GroupKey, Vec<f64>> = BTreeMap::new();
    for (meta, v) in rows {
        groups
            .entry(infodensity_core::microblog::group_key(&meta))
            .or_default()
            .push(v);
    }
    groups
        .iter()
        .filter_map(|(k, v)| series(group_label(k), v))
        .collect()
}

/// One series per label.
pub fn labelled_series(rows: &[(String, Vec<f64>)]) -> Vec<BoxplotSeries> {
    rows.iter()
        .filter_map(|(l, v)| series(l.clone(), v))
        .collect()
}
