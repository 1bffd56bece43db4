//! Result tables written and read by the CLI.

use std::collections::BTreeMap;
use std::path::Path;

use infodensity_core::lang::LanguageTag;
use infodensity_core::measure::SpaceMeasure;
use infodensity_core::microblog::{AccountMeta, AccountStats, RatioTable, RicResult};
use infodensity_core::ratio::RatioStats;

use crate::error::{Error, Result};
use crate::table::{format_real, read_table, Cell, Table};

pub const RATIO_COLUMNS: [&str; 11] = [
    "lang_b",
    "lang_a",
    "measure",
    "n",
    "mean",
    "median",
    "q1",
    "q3",
    "whisker_low",
    "whisker_high",
    "outlier_count",
];

pub fn ratio_table(rows: &[RatioStats]) -> Table {
    let mut t = Table::new(&RATIO_COLUMNS);
    for r in rows {
        let s = &r.stats;
        t.push(vec![
            r.lang_b.code().into(),
            r.lang_a.code().into(),
            r.measure.name().into(),
            s.n.into(),
            s.mean.into(),
            s.median.into(),
            s.q1.into(),
            s.q3.into(),
            s.whisker_low.into(),
            s.whisker_high.into(),
            s.outliers.len().into(),
        ])
        .expect("fixed width");
    }
    t
}

/// Per-unit ratios as `label,unit_id,value` rows, label being `lang_b`.
pub fn per_unit_table(rows: &[RatioStats]) -> Table {
    let mut t = Table::new(&["label", "unit_id", "value"]);
    for r in rows {
        for (id, v) in &r.per_unit {
            t.push(vec![
                r.lang_b.code().into(),
                id.as_str().into(),
                (*v).into(),
            ])
            .expect("fixed width");
        }
    }
    t
}

fn parse_f64(path: &Path, line: usize, s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::data(path, format!("line {line}: `{s}` is not a number")))
}

fn parse_usize(path: &Path, line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::data(path, format!("line {line}: `{s}` is not a count")))
}

/// Mean ratios from a ratios table, keyed by `(lang_b, lang_a)`, for one measure.
pub fn read_ratio_table(path: &Path, measure: SpaceMeasure) -> Result<RatioTable> {
    let t = read_table(path)?;
    let c = t.require_columns(path, &["lang_b", "lang_a", "measure", "mean"])?;
    let mut out = BTreeMap::new();
    for (i, row) in t.rows.iter().enumerate() {
        let line = i + 2;
        let m: SpaceMeasure = row[c[2]]
            .parse()
            .map_err(|e| Error::data(path, format!("line {line}: {e}")))?;
        if m != measure {
            continue;
        }
        let lang = |s: &str| {
            s.parse::<LanguageTag>()
                .map_err(|e| Error::data(path, format!("line {line}: {e}")))
        };
        out.insert(
            (lang(&row[c[0]])?, lang(&row[c[1]])?),
            parse_f64(path, line, &row[c[3]])?,
        );
    }
    Ok(out)
}

pub const STATS_COLUMNS: [&str; 9] = [
    "screen_name",
    "platform",
    "language",
    "org_type",
    "n_posts",
    "mean_chars_with_urls",
    "mean_chars_without_urls",
    "url_count_histogram",
    "per_post_lengths",
];

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn meta_cells(m: &AccountMeta) -> Vec<Cell> {
    vec![
        m.screen_name.as_str().into(),
        m.platform.name().into(),
        m.language.code().into(),
        m.org_type.name().into(),
    ]
}

pub fn stats_table(rows: &[AccountStats]) -> Table {
    let mut t = Table::new(&STATS_COLUMNS);
    for s in rows {
        let mut row = meta_cells(&s.meta);
        row.extend([
            s.n_posts.into(),
            s.mean_chars_with_urls.into(),
            s.mean_chars_without_urls.into(),
            join(
                s.url_count_histogram
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}")),
            )
            .into(),
            join(&s.per_post_lengths).into(),
        ]);
        t.push(row).expect("fixed width");
    }
    t
}

fn read_meta(path: &Path, line: usize, row: &[String], c: &[usize]) -> Result<AccountMeta> {
    let at = |e: String| Error::data(path, format!("line {line}: {e}"));
    Ok(AccountMeta {
        screen_name: row[c[0]].clone(),
        platform: row[c[1]]
            .parse()
            .map_err(|e: infodensity_core::MicroblogError| at(e.to_string()))?,
        language: row[c[2]]
            .parse()
            .map_err(|e: infodensity_core::LanguageError| at(e.to_string()))?,
        org_type: row[c[3]]
            .parse()
            .map_err(|e: infodensity_core::MicroblogError| at(e.to_string()))?,
    })
}

/// Reads a stats table. The URL-free mean is recomputed from the exact
/// per-post lengths rather than taken from its rounded column.
pub fn read_stats_table(path: &Path) -> Result<Vec<AccountStats>> {
    let t = read_table(path)?;
    let c = t.require_columns(path, &STATS_COLUMNS)?;
    let mut out = Vec::with_capacity(t.rows.len());
    for (i, row) in t.rows.iter().enumerate() {
        let line = i + 2;
        let meta = read_meta(path, line, row, &c)?;
        let per_post_lengths = row[c[8]]
            .split(';')
            .filter(|s| !s.is_empty())
            .map(|s| parse_usize(path, line, s))
            .collect::<Result<Vec<_>>>()?;
        let mut url_count_histogram = BTreeMap::new();
        for pair in row[c[7]].split(';').filter(|s| !s.is_empty()) {
            let (k, v) = pair.split_once(':').ok_or_else(|| {
                Error::data(path, format!("line {line}: bad histogram entry `{pair}`"))
            })?;
            url_count_histogram.insert(parse_usize(path, line, k)?, parse_usize(path, line, v)?);
        }
        let n_posts = parse_usize(path, line, &row[c[4]])?;
        if per_post_lengths.len() != n_posts {
            return Err(Error::data(
                path,
                format!(
                    "line {line}: n_posts is {n_posts} but {} lengths are listed",
                    per_post_lengths.len()
                ),
            ));
        }
        let mean_without = if n_posts == 0 {
            0.0
        } else {
            per_post_lengths.iter().sum::<usize>() as f64 / n_posts as f64
        };
        out.push(AccountStats {
            meta,
            n_posts,
            mean_chars_with_urls: parse_f64(path, line, &row[c[5]])?,
            mean_chars_without_urls: mean_without,
            per_post_lengths,
            url_count_histogram,
        });
    }
    Ok(out)
}

pub const RIC_COLUMNS: [&str; 10] = [
    "screen_name",
    "platform",
    "language",
    "org_type",
    "base_lang",
    "ratio_used",
    "n_posts",
    "mean_chars_without_urls",
    "mean_ric",
    "per_post_ric",
];

pub fn ric_table(rows: &[(AccountStats, RicResult)]) -> Table {
    let mut t = Table::new(&RIC_COLUMNS);
    for (s, r) in rows {
        let mut row = meta_cells(&r.meta);
        row.extend([
            r.base_lang.code().into(),
            r.ratio_used.into(),
            s.n_posts.into(),
            s.mean_chars_without_urls.into(),
            r.mean_ric.into(),
            join(r.per_post_ric.iter().map(|v| format_real(*v))).into(),
        ]);
        t.push(row).expect("fixed width");
    }
    t
}

/// `(meta, mean_ric)` rows of a RIC table.
pub fn read_ric_means(path: &Path) -> Result<Vec<(AccountMeta, f64)>> {
    let t = read_table(path)?;
    let c = t.require_columns(
        path,
        &[
            "screen_name",
            "platform",
            "language",
            "org_type",
            "mean_ric",
        ],
    )?;
    t.rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            Ok((
                read_meta(path, i + 2, row, &c)?,
                parse_f64(path, i + 2, &row[c[4]])?,
            ))
        })
        .collect()
}

/// `(meta, mean_chars_without_urls)` rows of a stats table.
pub fn read_length_means(path: &Path) -> Result<Vec<(AccountMeta, f64)>> {
    Ok(read_stats_table(path)?
        .into_iter()
        .map(|s| (s.meta, s.mean_chars_without_urls))
        .collect())
}

/// `label,value` rows (extra columns ignored), labels in first-seen order.
pub fn read_labelled_values(path: &Path) -> Result<Vec<(String, Vec<f64>)>> {
    let t = read_table(path)?;
    let c = t.require_columns(path, &["label", "value"])?;
    let mut out: Vec<(String, Vec<f64>)> = Vec::new();
    for (i, row) in t.rows.iter().enumerate() {
        let v = parse_f64(path, i + 2, &row[c[1]])?;
        match out.iter_mut().find(|(l, _)| *l == row[c[0]]) {
            Some((_, vals)) => vals.push(v),
            None => out.push((row[c[0]].clone(), vec![v])),
        }
    }
    Ok(out)
}
