//! Cross-lingual information density of length-limited messages.
//!
//! Measures how much room the same content takes in different languages
//! (from parallel corpora), turns microblog post lengths into relative
//! information content against a baseline language, and models the length
//! rules of Twitter, Weibo and single SMS messages.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, plotting and
//! the command line live in the `infodensity` crate.

#![no_std]

extern crate alloc;

pub mod corpus;
pub mod gsm7;
pub mod lang;
pub mod limits;
pub mod measure;
pub mod microblog;
pub mod ratio;
pub mod script;
pub mod stats;
pub mod subtitle;
pub mod text;
pub mod udhr;

pub use corpus::{
    align_positional, build_parallel_corpus, AlignedUnit, CorpusError, CorpusFilterPolicy,
    FilterReport, ParallelCorpus,
};
pub use lang::{LanguageError, LanguageRegistry, LanguageTag};
pub use limits::{
    capacity_for_language, check_fit, CharClass, FitResult, LimitRule, LimitSpec, SmsEncoding,
};
pub use measure::{count_units, GbkFallback, MeasureError, MeasuredLength, SpaceMeasure};
pub use microblog::{
    account_length_stats, compute_ric, AccountMeta, AccountOutcome, AccountStats, MicroblogError,
    OrgType, Platform, Post, RatioTable, RicResult,
};
pub use ratio::{aggregate_ratios, equivalent_length, unit_ratio, RatioError, RatioStats};
pub use script::detect_language;
pub use stats::DescriptiveStats;
pub use subtitle::{parse_subtitle, SubtitleError, SubtitleFormat};
pub use text::{strip_urls, url_count};
pub use udhr::parse_udhr_language_file;
