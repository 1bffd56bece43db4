//! Posts and account metadata files.
//!
//! Posts come as JSON Lines or CSV with the fields `id`, `account`,
//! `platform`, `text` and `created_at` (ISO-8601). Accounts come as CSV with
//! `screen_name, platform, language, org_type`.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use chrono::{DateTime, NaiveDateTime};
use infodensity_core::lang::LanguageTag;
use infodensity_core::microblog::{AccountMeta, OrgType, Platform, Post, Timestamp};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::table::read_table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PostFormat {
    Jsonl,
    Csv,
}

impl PostFormat {
    /// `.csv` files are CSV, anything else JSON Lines.
    pub fn from_path(path: &Path) -> PostFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => PostFormat::Csv,
            _ => PostFormat::Jsonl,
        }
    }
}

pub fn parse_timestamp(s: &str) -> Option<Timestamp> {
    let s = s.trim();
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(Timestamp(t.timestamp()));
    }
    [
        "%Y-%m-%dT%H:%M:%S",
        "%Y-%m-%d %H:%M:%S",
        "%Y-%m-%dT%H:%M:%S%.f",
    ]
    .iter()
    .find_map(|f| NaiveDateTime::parse_from_str(s, f).ok())
    .map(|t| Timestamp(t.and_utc().timestamp()))
}

struct RawPost {
    line: usize,
    id: Option<String>,
    account: Option<String>,
    platform: Option<String>,
    text: Option<String>,
    created_at: Option<String>,
}

fn field(map: &Map<String, Value>, key: &str) -> Option<String> {
    match map.get(key)? {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn raw_from_jsonl(text: &str, problems: &mut Vec<String>) -> Vec<RawPost> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Map<String, Value>>(line) {
            Ok(map) => out.push(RawPost {
                line: i + 1,
                id: field(&map, "id"),
                account: field(&map, "account"),
                platform: field(&map, "platform"),
                text: field(&map, "text"),
                created_at: field(&map, "created_at"),
            }),
            Err(e) => problems.push(format!("line {}: {e}", i + 1)),
        }
    }
    out
}

fn raw_from_csv(text: &str, problems: &mut Vec<String>) -> Vec<RawPost> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = match reader.headers() {
        Ok(h) => h.clone(),
        Err(e) => {
            problems.push(format!("line 1: {e}"));
            return Vec::new();
        }
    };
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let cols = [
        col("id"),
        col("account"),
        col("platform"),
        col("text"),
        col("created_at"),
    ];
    let mut out = Vec::new();
    for rec in reader.records() {
        match rec {
            Ok(rec) => {
                let line = rec.position().map_or(0, |p| p.line() as usize);
                let get = |c: Option<usize>| c.and_then(|c| rec.get(c)).map(str::to_owned);
                out.push(RawPost {
                    line,
                    id: get(cols[0]).filter(|s| !s.is_empty()),
                    account: get(cols[1]),
                    platform: get(cols[2]),
                    text: get(cols[3]),
                    created_at: get(cols[4]),
                });
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    out
}

/// Reads posts in file order. Every offending record is reported, by line.
pub fn load_posts(path: &Path, format: PostFormat) -> Result<Vec<Post>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|e| {
        Error::data(
            path,
            format!(
                "invalid UTF-8 at byte offset {}",
                e.utf8_error().valid_up_to()
            ),
        )
    })?;
    let mut problems = Vec::new();
    let raw = match format {
        PostFormat::Jsonl => raw_from_jsonl(&text, &mut problems),
        PostFormat::Csv => raw_from_csv(&text, &mut problems),
    };
    let mut posts = Vec::with_capacity(raw.len());
    let mut seen = BTreeSet::new();
    for r in raw {
        let mut missing = Vec::new();
        for (name, v) in [
            ("id", &r.id),
            ("account", &r.account),
            ("platform", &r.platform),
            ("text", &r.text),
            ("created_at", &r.created_at),
        ] {
            if v.is_none() {
                missing.push(name);
            }
        }
        if !missing.is_empty() {
            problems.push(format!("line {}: missing {}", r.line, missing.join(", ")));
            continue;
        }
        let platform: Platform = match r.platform.as_deref().unwrap_or_default().parse() {
            Ok(p) => p,
            Err(e) => {
                problems.push(format!("line {}: {e}", r.line));
                continue;
            }
        };
        let Some(created_at) = parse_timestamp(r.created_at.as_deref().unwrap_or_default()) else {
            problems.push(format!(
                "line {}: created_at is not an ISO-8601 timestamp",
                r.line
            ));
            continue;
        };
        let post_id = r.id.unwrap_or_default();
        if !seen.insert((platform, post_id.clone())) {
            problems.push(format!(
                "line {}: duplicate id {post_id} on {platform}",
                r.line
            ));
            continue;
        }
        posts.push(Post {
            post_id,
            account: r.account.unwrap_or_default(),
            platform,
            text: r.text.unwrap_or_default(),
            created_at,
        });
    }
    if problems.is_empty() {
        Ok(posts)
    } else {
        Err(Error::data(path, problems.join("; ")))
    }
}

pub fn load_accounts(path: &Path) -> Result<Vec<AccountMeta>> {
    let table = read_table(path)?;
    let cols = table.require_columns(path, &["screen_name", "platform", "language", "org_type"])?;
    let mut out = Vec::with_capacity(table.rows.len());
    for (i, row) in table.rows.iter().enumerate() {
        let at = |e: String| Error::data(path, format!("line {}: {e}", i + 2));
        out.push(AccountMeta {
            screen_name: row[cols[0]].clone(),
            platform: row[cols[1]]
                .parse()
                .map_err(|e: infodensity_core::MicroblogError| at(e.to_string()))?,
            language: row[cols[2]]
                .parse::<LanguageTag>()
                .map_err(|e| at(e.to_string()))?,
            org_type: row[cols[3]]
                .parse::<OrgType>()
                .map_err(|e| at(e.to_string()))?,
        });
    }
    Ok(out)
}
