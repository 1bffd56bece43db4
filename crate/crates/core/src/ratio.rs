//! Cross-lingual space ratios over a parallel corpus.
//!
//! `ratio(B, A)` is the space the language-B text takes divided by the space
//! the language-A text takes for the same content. With characters,
//! `ratio(eng, cmn_hans)` is about 3 to 4: English needs three to four times
//! as many characters. It is also the information-per-unit of A relative to
//! B, the only form in which information content is observable.

use alloc::string::String;
use alloc::vec::Vec;

use crate::corpus::{AlignedUnit, ParallelCorpus};
use crate::lang::LanguageTag;
use crate::measure::{measure, MeasureError, SpaceMeasure};
use crate::stats::DescriptiveStats;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RatioError {
    #[error("unit `{unit_id}` has no {lang} text")]
    MissingLanguage { unit_id: String, lang: LanguageTag },
    #[error("unit `{unit_id}` has a zero-length {lang} text")]
    ZeroLength { unit_id: String, lang: LanguageTag },
    #[error("unit `{unit_id}`: {source}")]
    Measure {
        unit_id: String,
        #[source]
        source: MeasureError,
    },
    #[error("corpus does not contain {0}")]
    LanguageNotInCorpus(LanguageTag),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("no unit of the corpus has measurable {lang_b} and {lang_a} texts")]
    NoUsableUnits {
        lang_b: LanguageTag,
        lang_a: LanguageTag,
    },
    #[error("ratio must be positive and finite, got {0}")]
    NonPositiveRatio(f64),
}

fn unit_space(
    unit: &AlignedUnit,
    lang: &LanguageTag,
    m: SpaceMeasure,
) -> Result<usize, RatioError> {
    let text = unit.text(lang).ok_or_else(|| RatioError::MissingLanguage {
        unit_id: unit.unit_id.clone(),
        lang: lang.clone(),
    })?;
    measure(text, m).map_err(|source| RatioError::Measure {
        unit_id: unit.unit_id.clone(),
        source,
    })
}

/// Space of the `lang_b` text divided by space of the `lang_a` text.
pub fn unit_ratio(
    unit: &AlignedUnit,
    lang_b: &LanguageTag,
    lang_a: &LanguageTag,
    m: SpaceMeasure,
) -> Result<f64, RatioError> {
    let s_b = unit_space(unit, lang_b, m)?;
    let s_a = unit_space(unit, lang_a, m)?;
    for (s, lang) in [(s_a, lang_a), (s_b, lang_b)] {
        if s == 0 {
            return Err(RatioError::ZeroLength {
                unit_id: unit.unit_id.clone(),
                lang: lang.clone(),
            });
        }
    }
    if lang_b == lang_a {
        return Ok(1.0);
    }
    Ok(s_b as f64 / s_a as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioStats {
    pub lang_b: LanguageTag,
    pub lang_a: LanguageTag,
    pub measure: SpaceMeasure,
    pub per_unit: Vec<(String, f64)>,
    pub stats: DescriptiveStats,
    /// Units left out because a text was missing or measured zero.
    pub skipped: usize,
}

impl RatioStats {
    pub fn values(&self) -> Vec<f64> {
        self.per_unit.iter().map(|(_, r)| *r).collect()
    }
}

fn check_pair(
    corpus: &ParallelCorpus,
    lang_b: &LanguageTag,
    lang_a: &LanguageTag,
) -> Result<(), RatioError> {
    for lang in [lang_b, lang_a] {
        if !corpus.contains_language(lang) {
            return Err(RatioError::LanguageNotInCorpus(lang.clone()));
        }
    }
    if corpus.is_empty() {
        return Err(RatioError::EmptyCorpus);
    }
    Ok(())
}

/// Per-unit ratios in corpus order plus their boxplot statistics (the mean
/// is a mean of per-unit ratios).
///
/// Units missing either language or measuring zero in either are skipped
/// with a warning; measurement failures (e.g. GSM-7 on Chinese text) abort.
pub fn aggregate_ratios(
    corpus: &ParallelCorpus,
    lang_b: &LanguageTag,
    lang_a: &LanguageTag,
    m: SpaceMeasure,
) -> Result<RatioStats, RatioError> {
    check_pair(corpus, lang_b, lang_a)?;
    let mut per_unit = Vec::with_capacity(corpus.len());
    let mut skipped = 0;
    for unit in corpus.units() {
        match unit_ratio(unit, lang_b, lang_a, m) {
            Ok(r) => per_unit.push((unit.unit_id.clone(), r)),
            Err(e @ (RatioError::MissingLanguage { .. } | RatioError::ZeroLength { .. })) => {
                log::warn!("skipping unit: {e}");
                skipped += 1;
            }
            Err(e) => return Err(e),
        }
    }
    let values: Vec<f64> = per_unit.iter().map(|(_, r)| *r).collect();
    let stats =
        DescriptiveStats::from_values(&values).ok_or_else(|| RatioError::NoUsableUnits {
            lang_b: lang_b.clone(),
            lang_a: lang_a.clone(),
        })?;
    Ok(RatioStats {
        lang_b: lang_b.clone(),
        lang_a: lang_a.clone(),
        measure: m,
        per_unit,
        stats,
        skipped,
    })
}

/// Total `lang_b` space over total `lang_a` space across the corpus.
///
/// A diagnostic alongside [`aggregate_ratios`], which averages per unit.
pub fn pooled_ratio(
    corpus: &ParallelCorpus,
    lang_b: &LanguageTag,
    lang_a: &LanguageTag,
    m: SpaceMeasure,
) -> Result<f64, RatioError> {
    check_pair(corpus, lang_b, lang_a)?;
    let (mut total_b, mut total_a) = (0usize, 0usize);
    for unit in corpus.units() {
        match (unit_space(unit, lang_b, m), unit_space(unit, lang_a, m)) {
            (Ok(b), Ok(a)) if a > 0 && b > 0 => {
                total_b += b;
                total_a += a;
            }
            (Err(e @ RatioError::Measure { .. }), _) | (_, Err(e @ RatioError::Measure { .. })) => {
                return Err(e)
            }
            _ => {}
        }
    }
    if total_a == 0 {
        return Err(RatioError::NoUsableUnits {
            lang_b: lang_b.clone(),
            lang_a: lang_a.clone(),
        });
    }
    Ok(total_b as f64 / total_a as f64)
}

/// Space in the baseline language carrying the content of `base_length`
/// units of a language whose ratio to the baseline is `ratio`.
pub fn equivalent_length(base_length: f64, ratio: f64) -> Result<f64, RatioError> {
    if ratio <= 0.0 || !ratio.is_finite() {
        return Err(RatioError::NonPositiveRatio(ratio));
    }
    Ok(base_length / ratio)
}

/// How many `lang` units carry the content of `base_length` reference units.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalentLength {
    pub lang: LanguageTag,
    /// `base_length × mean ratio(lang, baseline) / mean ratio(reference, baseline)`:
    /// the right-hand axis obtained by rescaling the boxplot so the
    /// reference mean sits at `base_length`.
    pub of_means: f64,
    /// `base_length × mean over units of ratio(lang, reference)`.
    pub per_unit_mean: f64,
}

/// Equivalent lengths of `base_length` reference-language units in each of
/// `langs`, computed both ways.
pub fn equivalent_lengths(
    corpus: &ParallelCorpus,
    reference: &LanguageTag,
    baseline: &LanguageTag,
    langs: &[LanguageTag],
    m: SpaceMeasure,
    base_length: f64,
) -> Result<Vec<EquivalentLength>, RatioError> {
    let ref_mean = aggregate_ratios(corpus, reference, baseline, m)?.stats.mean;
    langs
        .iter()
        .map(|lang| {
            let lang_mean = aggregate_ratios(corpus, lang, baseline, m)?.stats.mean;
            let of_means = equivalent_length(base_length, ref_mean / lang_mean)?;
            let per_unit_mean =
                base_length * aggregate_ratios(corpus, lang, reference, m)?.stats.mean;
            Ok(EquivalentLength {
                lang: lang.clone(),
                of_means,
                per_unit_mean,
            })
        })
        .collect()
}
