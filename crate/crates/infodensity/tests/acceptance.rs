//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.
//!
//! The subtitle corpus is read from `$INFODENSITY_TED_DIR` (layout
//! `<dir>/<talk>/<lang>.(srt|vtt|json)`). Without it the subtitle parts of
//! criteria 2 to 4 fail.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use infodensity::corpus_io::{ingest_ted, ingest_udhr};
use infodensity::pipeline::{run_pipeline, PipelineConfig};
use infodensity::posts_io::{load_accounts, load_posts, PostFormat};
use infodensity::records::{read_stats_table, stats_table};
use infodensity::stages::{analyze_posts, compute_ric_rows};
use infodensity::table::{emit_table, TableFormat};
use infodensity_core::corpus::{AlignedUnit, CorpusFilterPolicy, ParallelCorpus};
use infodensity_core::gsm7::BASIC_TABLE;
use infodensity_core::lang::LanguageTag;
use infodensity_core::limits::{check_fit, LimitSpec};
use infodensity_core::measure::SpaceMeasure;
use infodensity_core::microblog::{RatioTable, DEFAULT_MIN_POSTS};
use infodensity_core::ratio::{aggregate_ratios, equivalent_lengths, unit_ratio};
use infodensity_core::text::{nfc, nfc_char_count, strip_urls};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const TED_ENV: &str = "INFODENSITY_TED_DIR";

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(x: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&x)
}

fn udhr() -> Result<ParallelCorpus, String> {
    let langs = [
        LanguageTag::ENG,
        LanguageTag::JPN,
        LanguageTag::CMN_HANS,
        LanguageTag::CMN_HANT,
    ];
    ingest_udhr(&common::udhr_dir(), &langs, &CorpusFilterPolicy::keep_all())
        .map(|(c, _)| c)
        .map_err(|e| e.to_string())
}

fn mean_ratio(
    c: &ParallelCorpus,
    b: &LanguageTag,
    a: &LanguageTag,
    m: SpaceMeasure,
) -> Result<f64, String> {
    aggregate_ratios(c, b, a, m)
        .map(|r| r.stats.mean)
        .map_err(|e| e.to_string())
}

/// The subtitle corpus, if one has been provided.
fn ted() -> Result<ParallelCorpus, String> {
    let dir = std::env::var_os(TED_ENV)
        .map(PathBuf::from)
        .ok_or_else(|| format!("subtitle corpus not available (set {TED_ENV})"))?;
    let langs = [LanguageTag::ENG, LanguageTag::JPN, LanguageTag::CMN_HANS];
    ingest_ted(&dir, &langs, &CorpusFilterPolicy::default())
        .map(|(c, _)| c)
        .map_err(|e| e.to_string())
}

fn c1() -> Outcome {
    let start = Instant::now();
    let c = udhr()?;
    let base = LanguageTag::CMN_HANT;
    let eng = mean_ratio(&c, &LanguageTag::ENG, &base, SpaceMeasure::Characters)?;
    let jpn = mean_ratio(&c, &LanguageTag::JPN, &base, SpaceMeasure::Characters)?;
    let hans = mean_ratio(&c, &LanguageTag::CMN_HANS, &base, SpaceMeasure::Characters)?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(
        within(eng, 3.75, 4.15) && within(jpn, 1.48, 1.72) && within(hans, 0.95, 1.05) && elapsed < 5.0,
        format!(
            "udhr characters vs cmn_hant: eng={eng:.4} jpn={jpn:.4} cmn_hans={hans:.4} in {elapsed:.3}s"
        ),
    )
}

fn c2() -> Outcome {
    let c = ted()?;
    let base = LanguageTag::CMN_HANS;
    let eng = mean_ratio(&c, &LanguageTag::ENG, &base, SpaceMeasure::Characters)?;
    let jpn = mean_ratio(&c, &LanguageTag::JPN, &base, SpaceMeasure::Characters)?;
    let (scale, te, tj) = if c.len() >= 1500 {
        ("full", 0.15, 0.10)
    } else if c.len() >= 200 {
        ("subset", 0.30, 0.15)
    } else {
        return Err(format!("only {} talks; at least 200 are needed", c.len()));
    };
    ensure(
        (eng - 3.21).abs() <= te && (jpn - 1.30).abs() <= tj,
        format!(
            "{} talks ({scale}) vs cmn_hans: eng={eng:.4} jpn={jpn:.4}",
            c.len()
        ),
    )
}

fn c3() -> Outcome {
    let c = udhr()?;
    let langs = [
        LanguageTag::CMN_HANT,
        LanguageTag::CMN_HANS,
        LanguageTag::JPN,
    ];
    let eq = equivalent_lengths(
        &c,
        &LanguageTag::ENG,
        &LanguageTag::CMN_HANT,
        &langs,
        SpaceMeasure::Characters,
        140.0,
    )
    .map_err(|e| e.to_string())?;
    let mut detail = String::from("udhr 140 eng chars:");
    for e in &eq {
        let _ = write!(
            detail,
            " {}={:.2} (per-unit {:.2})",
            e.lang, e.of_means, e.per_unit_mean
        );
    }
    let udhr_ok = within(eq[0].of_means, 34.5, 36.5)
        && within(eq[1].of_means, 34.5, 36.5)
        && within(eq[2].of_means, 54.0, 58.0);
    match ted() {
        Ok(t) => {
            let eq = equivalent_lengths(
                &t,
                &LanguageTag::ENG,
                &LanguageTag::CMN_HANS,
                &[LanguageTag::CMN_HANS, LanguageTag::JPN],
                SpaceMeasure::Characters,
                140.0,
            )
            .map_err(|e| e.to_string())?;
            let _ = write!(
                detail,
                "; subtitles: cmn_hans={:.2} jpn={:.2}",
                eq[0].of_means, eq[1].of_means
            );
            ensure(
                udhr_ok
                    && (eq[0].of_means - 43.61).abs() <= 1.5
                    && (eq[1].of_means - 56.70).abs() <= 2.0,
                detail,
            )
        }
        Err(e) => Err(format!("{detail}; {e}")),
    }
}

fn contrast(
    c: &ParallelCorpus,
    chinese: &LanguageTag,
    detail: &mut String,
) -> Result<bool, String> {
    let chars = mean_ratio(c, &LanguageTag::ENG, chinese, SpaceMeasure::Characters)?;
    let bytes = mean_ratio(c, &LanguageTag::ENG, chinese, SpaceMeasure::Utf8Bytes)?;
    let _ = write!(detail, " eng/{chinese}: chars={chars:.4} utf8={bytes:.4}");
    Ok(bytes.ln().abs() < 0.5 * chars.ln().abs())
}

fn c4() -> Outcome {
    let c = udhr()?;
    let mut detail = String::from("udhr");
    let udhr_ok = contrast(&c, &LanguageTag::CMN_HANT, &mut detail)?
        & contrast(&c, &LanguageTag::CMN_HANS, &mut detail)?;
    match ted() {
        Ok(t) => {
            detail.push_str("; subtitles");
            let ted_ok = contrast(&t, &LanguageTag::CMN_HANS, &mut detail)?;
            ensure(udhr_ok && ted_ok, detail)
        }
        Err(e) => Err(format!("{detail}; {e}")),
    }
}

fn boundary(limit: &LimitSpec, c: char, fits: usize, failures: &mut Vec<String>) {
    let a = check_fit(&c.to_string().repeat(fits), limit).fits;
    let b = check_fit(&c.to_string().repeat(fits + 1), limit).fits;
    if !a || b {
        failures.push(format!("{} U+{:04X} x{fits}", limit.name(), c as u32));
    }
}

fn c5() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    // every NFC-stable scalar on a stride through all planes
    for c in (0x20u32..=0x10FFFF).step_by(61).filter_map(char::from_u32) {
        let s: String = [c, c].iter().collect();
        if c.is_control() || nfc(&s) != s {
            continue;
        }
        boundary(&LimitSpec::TWITTER, c, 140, &mut failures);
        checked += 1;
    }
    for c in (0x21u8..=0x7E).map(char::from) {
        boundary(&LimitSpec::WEIBO, c, 280, &mut failures);
        checked += 1;
    }
    let cjk = || (0x4E00u32..=0x9FA5).filter_map(char::from_u32);
    for c in cjk() {
        boundary(&LimitSpec::WEIBO, c, 140, &mut failures);
        boundary(&LimitSpec::SMS, c, 70, &mut failures);
        checked += 2;
    }
    // 0x1B is the escape to the extension table, not a character
    for &c in BASIC_TABLE.iter().filter(|&&c| c != '\u{1B}') {
        boundary(&LimitSpec::SMS, c, 160, &mut failures);
        checked += 1;
    }
    ensure(
        failures.is_empty(),
        format!(
            "{checked} boundary pairs, {} wrong {:?}",
            failures.len(),
            &failures[..failures.len().min(5)]
        ),
    )
}

fn c6() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let fx = common::microblog_fixture(dir.path());
    let posts = load_posts(&fx.posts, PostFormat::Jsonl).map_err(|e| e.to_string())?;
    let accounts = load_accounts(&fx.accounts).map_err(|e| e.to_string())?;
    let analysis =
        analyze_posts(&posts, &accounts, DEFAULT_MIN_POSTS).map_err(|e| e.to_string())?;

    let excluded_ok = analysis.excluded.len() == 1
        && analysis.excluded[0].0.screen_name == common::SHORT_ACCOUNT
        && analysis.excluded[0].1 == common::SHORT_ACCOUNT_POSTS;

    // RIC both straight from the analysis and after a trip through a stats file
    let stats_path = dir.path().join("stats.csv");
    emit_table(
        &stats_table(&analysis.included),
        TableFormat::Csv,
        Some(&stats_path),
    )
    .map_err(|e| e.to_string())?;
    let reread = read_stats_table(&stats_path).map_err(|e| e.to_string())?;
    let ratio_of = |lang: &str| match lang {
        "jpn" => 0.4,
        "cmn_hans" => 0.25,
        _ => 1.0,
    };
    let table: RatioTable = BTreeMap::from([
        ((LanguageTag::JPN, LanguageTag::ENG), ratio_of("jpn")),
        (
            (LanguageTag::CMN_HANS, LanguageTag::ENG),
            ratio_of("cmn_hans"),
        ),
    ]);
    let mut max_err = 0f64;
    let mut matched = 0;
    let mut cells: BTreeMap<(String, String, String), (usize, usize)> = BTreeMap::new();
    let mut hist_ok = true;
    for stats in [&analysis.included, &reread] {
        let rows = compute_ric_rows(stats, &table, &LanguageTag::ENG).map_err(|e| e.to_string())?;
        for (s, r) in &rows {
            let Some(d) = fx
                .design
                .iter()
                .find(|d| d.screen_name == s.meta.screen_name)
            else {
                return Err(format!("unexpected account {}", s.meta.screen_name));
            };
            let expected = d.mean_length() / ratio_of(&d.lang);
            max_err = max_err.max((r.mean_ric - expected).abs());
            hist_ok &= s.per_post_lengths == d.lengths && s.url_count_histogram == d.histogram();
            for (k, n) in d.histogram() {
                hist_ok &= s.url_fraction(k) == n as f64 / d.lengths.len() as f64;
            }
            if std::ptr::eq(stats, &analysis.included) {
                let with_url = d.url_counts.iter().filter(|&&k| k > 0).count();
                let cell = cells
                    .entry((d.platform.clone(), d.lang.clone(), d.org.clone()))
                    .or_default();
                cell.0 += with_url;
                cell.1 += d.lengths.len();
            }
            matched += 1;
        }
    }
    for ((_, lang, _), (with_url, n)) in &cells {
        hist_ok &=
            *n == 200 && *with_url as f64 / *n as f64 == common::url_share(lang) as f64 / 100.0;
    }
    ensure(
        excluded_ok && hist_ok && max_err <= 1e-6 && matched == 48 && cells.len() == 12,
        format!(
            "{} cells x 200 posts: max |RIC error|={max_err:.1e}, short account excluded={excluded_ok}, histograms exact={hist_ok}",
            cells.len()
        ),
    )
}

fn prop<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn two_lang_unit(b: &str, a: &str) -> AlignedUnit {
    AlignedUnit {
        unit_id: "u".into(),
        texts: BTreeMap::from([
            (LanguageTag::ENG, b.to_owned()),
            (LanguageTag::CMN_HANS, a.to_owned()),
        ]),
    }
}

fn c7() -> Outcome {
    let text = "[a-zé中文あ😀 ]{1,40}";
    let measures = prop_oneof![
        Just(SpaceMeasure::Characters),
        Just(SpaceMeasure::Utf8Bytes),
        Just(SpaceMeasure::GbkUnits)
    ];
    prop(
        "ratio invariants",
        (text, text, 1usize..6, measures),
        |(b, a, k, m)| {
            let u = two_lang_unit(&b, &a);
            let (e, z) = (LanguageTag::ENG, LanguageTag::CMN_HANS);
            let (Ok(ba), Ok(ab)) = (unit_ratio(&u, &e, &z, m), unit_ratio(&u, &z, &e, m)) else {
                return Err(TestCaseError::fail("ratio failed"));
            };
            prop_assert!((ba * ab - 1.0).abs() < 1e-9);
            prop_assert!((unit_ratio(&u, &e, &e, m).unwrap() - 1.0).abs() < 1e-9);
            prop_assert!((unit_ratio(&u.repeated(k), &e, &z, m).unwrap() - ba).abs() < 1e-9);
            Ok(())
        },
    )?;
    prop(
        "strip_urls idempotence",
        "(\\PC|https?://[a-z./]{0,8}| ){0,30}",
        |s| {
            let once = strip_urls(&s);
            prop_assert_eq!(strip_urls(&once), once);
            Ok(())
        },
    )?;
    prop(
        "nfc stability",
        "(\\PC|e\u{301}|\u{1100}\u{1161}){0,30}",
        |s| {
            prop_assert_eq!(nfc_char_count(&nfc(&s)), nfc_char_count(&s));
            prop_assert_eq!(nfc(&nfc(&s)), nfc(&s));
            Ok(())
        },
    )?;
    prop(
        "limit prefix monotonicity",
        "[a-z {}€中文😀é]{0,300}",
        |s| {
            for limit in LimitSpec::PRESETS {
                if check_fit(&s, &limit).fits {
                    for (i, _) in s.char_indices() {
                        prop_assert!(check_fit(&s[..i], &limit).fits);
                    }
                }
            }
            Ok(())
        },
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    common::microblog_fixture(dir.path());
    let config = format!(
        "[output]\ndir = \"out\"\n[corpus]\nformat = \"udhr\"\ninput = \"{}\"\nlangs = [\"eng\", \"jpn\", \"cmn_hans\", \"cmn_hant\"]\n[ratios]\nbase = \"cmn_hant\"\nothers = [\"eng\", \"jpn\", \"cmn_hans\"]\n[posts]\nposts = \"posts.jsonl\"\naccounts = \"accounts.csv\"\n[ric]\nbase = \"eng\"\n",
        common::udhr_dir().display()
    );
    let path = dir.path().join("p.toml");
    std::fs::write(&path, config).map_err(|e| e.to_string())?;
    let cfg = PipelineConfig::load(&path).map_err(|e| e.to_string())?;
    let read_all = |cfg: &PipelineConfig| -> Result<Vec<Vec<u8>>, String> {
        let out = run_pipeline(cfg).map_err(|e| e.to_string())?;
        out.all()
            .iter()
            .map(|p| std::fs::read(p).map_err(|e| e.to_string()))
            .collect()
    };
    let first = read_all(&cfg)?;
    let second = read_all(&cfg)?;
    ensure(
        first == second && first.len() == 6,
        "ratio invariants, strip_urls idempotence, NFC stability, prefix monotonicity, byte-identical pipeline reruns"
            .into(),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("C1 udhr character ratios", c1),
        ("C2 subtitle character ratios", c2),
        ("C3 equivalent lengths", c3),
        ("C4 bytes vs characters", c4),
        ("C5 limit boundaries", c5),
        ("C6 microblog RIC fixture", c6),
        ("C7 property suites", c7),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
