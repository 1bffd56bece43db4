//! Microblog post lengths and relative information content (RIC).
//!
//! RIC re-expresses a post's length in a baseline language: a post of `S`
//! characters in language B carries the content of `S / ratio(B, base)`
//! baseline characters.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lang::LanguageTag;
use crate::script::detect_language;
use crate::text::{nfc_char_count, strip_urls, url_count};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Platform {
    Twitter,
    Weibo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrgType {
    Embassy,
    News,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MicroblogError {
    #[error("unknown platform `{0}` (expected twitter or weibo)")]
    UnknownPlatform(String),
    #[error("unknown organization type `{0}` (expected embassy or news)")]
    UnknownOrgType(String),
    #[error("post {post_id} belongs to {platform}/{account}, not to {expected}")]
    ForeignPost {
        post_id: String,
        account: String,
        platform: Platform,
        expected: String,
    },
    #[error("account {screen_name} on {platform} is listed twice for {language}")]
    DuplicateAccount {
        screen_name: String,
        platform: Platform,
        language: LanguageTag,
    },
    #[error("no ratio for ({lang_b}, {lang_a})")]
    MissingRatio {
        lang_b: LanguageTag,
        lang_a: LanguageTag,
    },
    #[error("ratio ({lang_b}, {lang_a}) = {value} is not positive")]
    BadRatio {
        lang_b: LanguageTag,
        lang_a: LanguageTag,
        value: f64,
    },
}

impl Platform {
    pub fn name(self) -> &'static str {
        match self {
            Platform::Twitter => "twitter",
            Platform::Weibo => "weibo",
        }
    }
}

impl fmt::Display for Platform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Platform {
    type Err = MicroblogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "twitter" => Ok(Platform::Twitter),
            "weibo" => Ok(Platform::Weibo),
            _ => Err(MicroblogError::UnknownPlatform(s.into())),
        }
    }
}

impl OrgType {
    pub fn name(self) -> &'static str {
        match self {
            OrgType::Embassy => "embassy",
            OrgType::News => "news",
        }
    }
}

impl fmt::Display for OrgType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrgType {
    type Err = MicroblogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "embassy" => Ok(OrgType::Embassy),
            "news" => Ok(OrgType::News),
            _ => Err(MicroblogError::UnknownOrgType(s.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AccountMeta {
    pub screen_name: String,
    pub platform: Platform,
    pub language: LanguageTag,
    pub org_type: OrgType,
}

/// Seconds since the Unix epoch, UTC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(pub i64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Post {
    pub post_id: String,
    pub account: String,
    pub platform: Platform,
    pub text: String,
    pub created_at: Timestamp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccountStats {
    pub meta: AccountMeta,
    pub n_posts: usize,
    pub mean_chars_with_urls: f64,
    pub mean_chars_without_urls: f64,
    /// NFC character counts after URL removal, in post order.
    pub per_post_lengths: Vec<usize>,
    /// Number of URLs per post → number of posts.
    pub url_count_histogram: BTreeMap<usize, usize>,
}

impl AccountStats {
    /// Fraction of posts containing exactly `k` URLs.
    pub fn url_fraction(&self, k: usize) -> f64 {
        if self.n_posts == 0 {
            return 0.0;
        }
        *self.url_count_histogram.get(&k).unwrap_or(&0) as f64 / self.n_posts as f64
    }
}

fn mean(values: impl ExactSizeIterator<Item = usize>) -> f64 {
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    values.sum::<usize>() as f64 / n as f64
}

#[derive(Debug, Clone, PartialEq)]
pub enum AccountOutcome {
    Included(AccountStats),
    /// Too few posts: `n_posts` did not exceed the minimum.
    Excluded {
        meta: AccountMeta,
        n_posts: usize,
    },
}

impl AccountOutcome {
    pub fn included(self) -> Option<AccountStats> {
        match self {
            AccountOutcome::Included(s) => Some(s),
            AccountOutcome::Excluded { .. } => None,
        }
    }
}

/// Default minimum: accounts need more than this many posts.
pub const DEFAULT_MIN_POSTS: usize = 50;

/// Per-account length statistics. Accounts with `n_posts <= min_posts` are
/// excluded.
pub fn account_length_stats(
    posts: &[Post],
    meta: &AccountMeta,
    min_posts: usize,
) -> Result<AccountOutcome, MicroblogError> {
    if let Some(p) = posts
        .iter()
        .find(|p| p.account != meta.screen_name || p.platform != meta.platform)
    {
        return Err(MicroblogError::ForeignPost {
            post_id: p.post_id.clone(),
            account: p.account.clone(),
            platform: p.platform,
            expected: alloc::format!("{}/{}", meta.platform, meta.screen_name),
        });
    }
    if posts.len() <= min_posts {
        return Ok(AccountOutcome::Excluded {
            meta: meta.clone(),
            n_posts: posts.len(),
        });
    }
    let raw: Vec<usize> = posts.iter().map(|p| nfc_char_count(&p.text)).collect();
    let stripped: Vec<usize> = posts
        .iter()
        .map(|p| nfc_char_count(&strip_urls(&p.text)))
        .collect();
    let mut url_count_histogram = BTreeMap::new();
    for p in posts {
        *url_count_histogram.entry(url_count(&p.text)).or_insert(0) += 1;
    }
    Ok(AccountOutcome::Included(AccountStats {
        meta: meta.clone(),
        n_posts: posts.len(),
        mean_chars_with_urls: mean(raw.iter().copied()),
        mean_chars_without_urls: mean(stripped.iter().copied()),
        per_post_lengths: stripped,
        url_count_histogram,
    }))
}

/// `(lang_b, lang_a) → ratio(lang_b, lang_a)`.
pub type RatioTable = BTreeMap<(LanguageTag, LanguageTag), f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct RicResult {
    pub meta: AccountMeta,
    pub base_lang: LanguageTag,
    pub ratio_used: f64,
    pub mean_ric: f64,
    pub per_post_ric: Vec<f64>,
}

/// Divides an account's post lengths by the ratio of its language to
/// `base_lang`; the ratio is 1 when the languages match.
pub fn compute_ric(
    stats: &AccountStats,
    ratios: &RatioTable,
    base_lang: &LanguageTag,
) -> Result<RicResult, MicroblogError> {
    let lang = &stats.meta.language;
    let ratio_used = if lang == base_lang {
        1.0
    } else {
        let key = (lang.clone(), base_lang.clone());
        let value = *ratios
            .get(&key)
            .ok_or_else(|| MicroblogError::MissingRatio {
                lang_b: key.0.clone(),
                lang_a: key.1.clone(),
            })?;
        if value <= 0.0 || !value.is_finite() {
            return Err(MicroblogError::BadRatio {
                lang_b: key.0,
                lang_a: key.1,
                value,
            });
        }
        value
    };
    Ok(RicResult {
        meta: stats.meta.clone(),
        base_lang: base_lang.clone(),
        ratio_used,
        mean_ric: stats.mean_chars_without_urls / ratio_used,
        per_post_ric: stats
            .per_post_lengths
            .iter()
            .map(|&n| n as f64 / ratio_used)
            .collect(),
    })
}

/// The cell an account falls in when plotting: platform, language, type.
pub type GroupKey = (Platform, LanguageTag, OrgType);

pub fn group_key(meta: &AccountMeta) -> GroupKey {
    (meta.platform, meta.language.clone(), meta.org_type)
}

/// Per-account mean lengths (URLs removed), grouped by cell.
pub fn group_account_means(stats: &[AccountStats]) -> BTreeMap<GroupKey, Vec<f64>> {
    let mut out: BTreeMap<GroupKey, Vec<f64>> = BTreeMap::new();
    for s in stats {
        out.entry(group_key(&s.meta))
            .or_default()
            .push(s.mean_chars_without_urls);
    }
    out
}

/// Per-account mean RIC, grouped by cell.
pub fn group_ric_means(results: &[RicResult]) -> BTreeMap<GroupKey, Vec<f64>> {
    let mut out: BTreeMap<GroupKey, Vec<f64>> = BTreeMap::new();
    for r in results {
        out.entry(group_key(&r.meta)).or_default().push(r.mean_ric);
    }
    out
}

/// Posts assigned to accounts, plus the posts that matched no account.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PostAssignment {
    pub accounts: Vec<(AccountMeta, Vec<Post>)>,
    pub unknown_account: usize,
    pub unassigned_language: usize,
}

/// Groups posts by account. When one screen name is listed in several
/// languages, each post goes to the language detected from its text; a
/// post detected as Han-only goes to Japanese if the account has no Chinese
/// entry (kanji-only Japanese posts).
pub fn assign_posts(
    posts: &[Post],
    accounts: &[AccountMeta],
) -> Result<PostAssignment, MicroblogError> {
    let mut index: BTreeMap<(Platform, &str), Vec<usize>> = BTreeMap::new();
    for (i, a) in accounts.iter().enumerate() {
        let slots = index
            .entry((a.platform, a.screen_name.as_str()))
            .or_default();
        if slots.iter().any(|&j| accounts[j].language == a.language) {
            return Err(MicroblogError::DuplicateAccount {
                screen_name: a.screen_name.clone(),
                platform: a.platform,
                language: a.language.clone(),
            });
        }
        slots.push(i);
    }
    let mut buckets: Vec<Vec<Post>> = accounts.iter().map(|_| Vec::new()).collect();
    let mut out = PostAssignment::default();
    for p in posts {
        let Some(slots) = index.get(&(p.platform, p.account.as_str())) else {
            out.unknown_account += 1;
            continue;
        };
        let target = if let [only] = slots.as_slice() {
            Some(*only)
        } else {
            let detected = detect_language(&p.text);
            let by_lang = |lang: &LanguageTag| {
                slots
                    .iter()
                    .copied()
                    .find(|&j| accounts[j].language == *lang)
            };
            match detected {
                Some(lang) => by_lang(&lang).or_else(|| {
                    (lang == LanguageTag::CMN_HANS)
                        .then(|| by_lang(&LanguageTag::JPN))
                        .flatten()
                }),
                None => None,
            }
        };
        match target {
            Some(j) => buckets[j].push(p.clone()),
            None => out.unassigned_language += 1,
        }
    }
    out.accounts = accounts.iter().cloned().zip(buckets).collect();
    Ok(out)
}
