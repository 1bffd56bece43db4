//! Synthetic microblog fixture with lengths and URL counts fixed by design.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const PLATFORMS: [&str; 2] = ["twitter", "weibo"];
pub const LANGS: [&str; 3] = ["eng", "jpn", "cmn_hans"];
pub const ORGS: [&str; 2] = ["embassy", "news"];
pub const ACCOUNTS_PER_CELL: usize = 2;
pub const POSTS_PER_ACCOUNT: usize = 100;
pub const SHORT_ACCOUNT: &str = "tiny_weibo_news";
pub const SHORT_ACCOUNT_POSTS: usize = 50;

/// Share of posts carrying at least one URL, out of 100.
pub fn url_share(lang: &str) -> usize {
    match lang {
        "cmn_hans" => 67,
        "eng" => 69,
        _ => 72,
    }
}

fn base_length(lang: &str) -> usize {
    match lang {
        "eng" => 96,
        "jpn" => 58,
        _ => 41,
    }
}

fn filler(lang: &str, n: usize) -> String {
    let unit: Vec<char> = match lang {
        "eng" => "embassy news today ".chars().collect(),
        "jpn" => "大使館のお知らせです".chars().collect(),
        _ => "大使馆今日新闻发布会".chars().collect(),
    };
    // no trailing whitespace, so the design length is exact after URL removal
    (0..n)
        .map(|i| {
            if unit[i % unit.len()] == ' ' {
                '_'
            } else {
                unit[i % unit.len()]
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct DesignedAccount {
    pub screen_name: String,
    pub platform: String,
    pub lang: String,
    pub org: String,
    /// Lengths with URLs removed, in post order.
    pub lengths: Vec<usize>,
    pub url_counts: Vec<usize>,
}

impl DesignedAccount {
    pub fn mean_length(&self) -> f64 {
        self.lengths.iter().sum::<usize>() as f64 / self.lengths.len() as f64
    }

    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &k in &self.url_counts {
            *h.entry(k).or_insert(0) += 1;
        }
        h
    }
}

pub struct Fixture {
    pub posts: PathBuf,
    pub accounts: PathBuf,
    pub design: Vec<DesignedAccount>,
}

fn design_account(
    platform: &str,
    lang: &str,
    org: &str,
    idx: usize,
    n_posts: usize,
) -> DesignedAccount {
    let base = base_length(lang) + 3 * idx;
    let share = url_share(lang);
    let lengths = (0..n_posts).map(|i| base + (i * 7) % 11 - 5).collect();
    let url_counts = (0..n_posts)
        .map(|i| {
            if i < share * n_posts / 100 {
                1 + usize::from(i % 5 == 0)
            } else {
                0
            }
        })
        .collect();
    DesignedAccount {
        screen_name: format!("{platform}_{lang}_{org}_{idx}"),
        platform: platform.into(),
        lang: lang.into(),
        org: org.into(),
        lengths,
        url_counts,
    }
}

/// Writes `posts.jsonl` and `accounts.csv` into `dir`.
pub fn microblog_fixture(dir: &Path) -> Fixture {
    let mut design = Vec::new();
    for platform in PLATFORMS {
        for lang in LANGS {
            for org in ORGS {
                for idx in 0..ACCOUNTS_PER_CELL {
                    design.push(design_account(platform, lang, org, idx, POSTS_PER_ACCOUNT));
                }
            }
        }
    }
    let mut short = design_account("weibo", "cmn_hans", "news", 9, SHORT_ACCOUNT_POSTS);
    short.screen_name = SHORT_ACCOUNT.into();
    design.push(short);

    let mut accounts = String::from("screen_name,platform,language,org_type\n");
    let mut posts = String::new();
    let mut id = 0;
    for a in &design {
        writeln!(
            accounts,
            "{},{},{},{}",
            a.screen_name, a.platform, a.lang, a.org
        )
        .unwrap();
        for (&len, &k) in a.lengths.iter().zip(&a.url_counts) {
            let mut text = filler(&a.lang, len - k);
            for j in 0..k {
                write!(text, " https://t.co/x{id}y{j}").unwrap();
            }
            let line = serde_json::json!({
                "id": id.to_string(),
                "account": a.screen_name,
                "platform": a.platform,
                "text": text,
                "created_at": format!("2015-03-{:02}T12:00:00Z", 1 + id % 28),
            });
            writeln!(posts, "{line}").unwrap();
            id += 1;
        }
    }
    let posts_path = dir.join("posts.jsonl");
    let accounts_path = dir.join("accounts.csv");
    fs::write(&posts_path, posts).unwrap();
    fs::write(&accounts_path, accounts).unwrap();
    Fixture {
        posts: posts_path,
        accounts: accounts_path,
        design,
    }
}

pub fn udhr_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/udhr")
}
