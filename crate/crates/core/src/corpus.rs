//! Aligned multilingual corpora.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::lang::LanguageTag;
use crate::text::nfc_char_count;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("a parallel corpus needs at least two languages, got {0}")]
    TooFewLanguages(usize),
    #[error("language {0} listed twice")]
    DuplicateLanguage(LanguageTag),
    #[error("duplicate unit id `{unit_id}` in {lang}")]
    DuplicateUnitId { lang: LanguageTag, unit_id: String },
    #[error("reference language {0} is not one of the corpus languages")]
    ReferenceNotInCorpus(LanguageTag),
    #[error("{lang} has {found} paragraphs but {expected_lang} has {expected}")]
    ParagraphCountMismatch {
        lang: LanguageTag,
        found: usize,
        expected_lang: LanguageTag,
        expected: usize,
    },
    #[error("unit `{unit_id}` has a language set different from the corpus")]
    LanguageSetMismatch { unit_id: String },
    #[error("unit `{unit_id}` has an empty {lang} text")]
    EmptyText { unit_id: String, lang: LanguageTag },
}

/// The same content in several languages: one UDHR paragraph or one talk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedUnit {
    pub unit_id: String,
    pub texts: BTreeMap<LanguageTag, String>,
}

impl AlignedUnit {
    pub fn text(&self, lang: &LanguageTag) -> Option<&str> {
        self.texts.get(lang).map(String::as_str)
    }

    /// Repeats every text `k` times.
    pub fn repeated(&self, k: usize) -> AlignedUnit {
        AlignedUnit {
            unit_id: self.unit_id.clone(),
            texts: self
                .texts
                .iter()
                .map(|(l, t)| (l.clone(), t.repeat(k)))
                .collect(),
        }
    }
}

/// An immutable, validated parallel corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelCorpus {
    name: String,
    languages: Vec<LanguageTag>,
    units: Vec<AlignedUnit>,
    provenance: String,
    complete: bool,
}

fn check_languages(languages: &[LanguageTag]) -> Result<(), CorpusError> {
    if languages.len() < 2 {
        return Err(CorpusError::TooFewLanguages(languages.len()));
    }
    let mut seen = BTreeSet::new();
    for l in languages {
        if !seen.insert(l) {
            return Err(CorpusError::DuplicateLanguage(l.clone()));
        }
    }
    Ok(())
}

impl ParallelCorpus {
    /// Validates and assembles a corpus in which every unit carries every
    /// language.
    pub fn new(
        name: impl Into<String>,
        languages: Vec<LanguageTag>,
        units: Vec<AlignedUnit>,
        provenance: impl Into<String>,
    ) -> Result<Self, CorpusError> {
        Self::assemble(name.into(), languages, units, provenance.into(), true)
    }

    /// Like [`ParallelCorpus::new`] but units may lack some of the languages.
    pub fn new_partial(
        name: impl Into<String>,
        languages: Vec<LanguageTag>,
        units: Vec<AlignedUnit>,
        provenance: impl Into<String>,
    ) -> Result<Self, CorpusError> {
        Self::assemble(name.into(), languages, units, provenance.into(), false)
    }

    fn assemble(
        name: String,
        languages: Vec<LanguageTag>,
        units: Vec<AlignedUnit>,
        provenance: String,
        complete: bool,
    ) -> Result<Self, CorpusError> {
        check_languages(&languages)?;
        let lang_set: BTreeSet<&LanguageTag> = languages.iter().collect();
        let mut ids = BTreeSet::new();
        for unit in &units {
            if !ids.insert(unit.unit_id.as_str()) {
                return Err(CorpusError::DuplicateUnitId {
                    lang: languages[0].clone(),
                    unit_id: unit.unit_id.clone(),
                });
            }
            let keys: BTreeSet<&LanguageTag> = unit.texts.keys().collect();
            let ok = if complete {
                keys == lang_set
            } else {
                !keys.is_empty() && keys.is_subset(&lang_set)
            };
            if !ok {
                return Err(CorpusError::LanguageSetMismatch {
                    unit_id: unit.unit_id.clone(),
                });
            }
            if let Some((lang, _)) = unit.texts.iter().find(|(_, t)| t.trim().is_empty()) {
                return Err(CorpusError::EmptyText {
                    unit_id: unit.unit_id.clone(),
                    lang: lang.clone(),
                });
            }
        }
        Ok(ParallelCorpus {
            name,
            languages,
            units,
            provenance,
            complete,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn languages(&self) -> &[LanguageTag] {
        &self.languages
    }

    pub fn units(&self) -> &[AlignedUnit] {
        &self.units
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// True when every unit carries every corpus language.
    pub fn is_complete(&self) -> bool {
        self.complete
            || self
                .units
                .iter()
                .all(|u| u.texts.len() == self.languages.len())
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn contains_language(&self, lang: &LanguageTag) -> bool {
        self.languages.contains(lang)
    }

    /// A copy renamed and re-attributed.
    pub fn with_name(mut self, name: impl Into<String>, provenance: impl Into<String>) -> Self {
        self.name = name.into();
        self.provenance = provenance.into();
        self
    }

    /// The first `n` units (or fewer).
    pub fn truncated(&self, n: usize) -> ParallelCorpus {
        let mut out = self.clone();
        out.units.truncate(n);
        out
    }

    /// Keeps the units whose position satisfies `keep`.
    pub fn select(&self, mut keep: impl FnMut(usize, &AlignedUnit) -> bool) -> ParallelCorpus {
        let mut out = self.clone();
        out.units = self
            .units
            .iter()
            .enumerate()
            .filter(|(i, u)| keep(*i, u))
            .map(|(_, u)| u.clone())
            .collect();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFilterPolicy {
    pub require_all_languages: bool,
    /// Minimum NFC character count of the reference-language text.
    pub min_length_chars: usize,
    pub reference: LanguageTag,
}

impl Default for CorpusFilterPolicy {
    fn default() -> Self {
        CorpusFilterPolicy {
            require_all_languages: true,
            min_length_chars: 1000,
            reference: LanguageTag::ENG,
        }
    }
}

impl CorpusFilterPolicy {
    /// Keeps every unit that has all languages, whatever its length.
    pub fn keep_all() -> Self {
        CorpusFilterPolicy {
            min_length_chars: 0,
            ..Self::default()
        }
    }
}

/// Counts of units seen and dropped while building a corpus.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FilterReport {
    pub input_units: usize,
    pub missing_languages: usize,
    pub below_min_length: usize,
    pub kept: usize,
}

/// Per-language lists of `(unit_id, text)`, in the order the languages
/// should appear in the corpus.
pub type PerLanguageUnits = Vec<(LanguageTag, Vec<(String, String)>)>;

/// Aligns per-language unit lists into a corpus, applying `policy`.
///
/// Units keep the order in which their ids first appear, scanning languages
/// in the given order. Texts that are blank after trimming count as missing.
pub fn build_parallel_corpus(
    per_language: &[(LanguageTag, Vec<(String, String)>)],
    policy: &CorpusFilterPolicy,
) -> Result<(ParallelCorpus, FilterReport), CorpusError> {
    let languages: Vec<LanguageTag> = per_language.iter().map(|(l, _)| l.clone()).collect();
    check_languages(&languages)?;
    if !languages.contains(&policy.reference) {
        return Err(CorpusError::ReferenceNotInCorpus(policy.reference.clone()));
    }

    let mut order: Vec<&str> = Vec::new();
    let mut table: BTreeMap<&str, BTreeMap<LanguageTag, String>> = BTreeMap::new();
    for (lang, units) in per_language {
        let mut seen = BTreeSet::new();
        for (id, text) in units {
            if !seen.insert(id.as_str()) {
                return Err(CorpusError::DuplicateUnitId {
                    lang: lang.clone(),
                    unit_id: id.clone(),
                });
            }
            let entry = table.entry(id.as_str()).or_insert_with(|| {
                order.push(id.as_str());
                BTreeMap::new()
            });
            let trimmed = text.trim();
            if !trimmed.is_empty() {
                entry.insert(lang.clone(), String::from(trimmed));
            }
        }
    }

    let mut report = FilterReport {
        input_units: order.len(),
        ..FilterReport::default()
    };
    let mut units = Vec::new();
    for id in order {
        let texts = table.remove(id).unwrap_or_default();
        if texts.is_empty() || (policy.require_all_languages && texts.len() != languages.len()) {
            report.missing_languages += 1;
            continue;
        }
        let ref_len = texts
            .get(&policy.reference)
            .map_or(0, |t| nfc_char_count(t));
        if ref_len < policy.min_length_chars {
            report.below_min_length += 1;
            continue;
        }
        units.push(AlignedUnit {
            unit_id: String::from(id),
            texts,
        });
    }
    report.kept = units.len();
    let corpus = if policy.require_all_languages {
        ParallelCorpus::new("", languages, units, "")?
    } else {
        ParallelCorpus::new_partial("", languages, units, "")?
    };
    Ok((corpus, report))
}

/// Pairs paragraph `i` of every language with paragraph `i` of the others.
///
/// Differing paragraph counts are an error: positional alignment would
/// silently pair unrelated text.
pub fn align_positional(
    per_language: Vec<(LanguageTag, Vec<(usize, String)>)>,
) -> Result<PerLanguageUnits, CorpusError> {
    if let Some((first_lang, first)) = per_language.first() {
        for (lang, paras) in &per_language[1..] {
            if paras.len() != first.len() {
                return Err(CorpusError::ParagraphCountMismatch {
                    lang: lang.clone(),
                    found: paras.len(),
                    expected_lang: first_lang.clone(),
                    expected: first.len(),
                });
            }
        }
    }
    Ok(per_language
        .into_iter()
        .map(|(lang, paras)| {
            let units = paras
                .into_iter()
                .map(|(i, text)| (alloc::format!("{i}"), text))
                .collect();
            (lang, units)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;
    use proptest::prelude::*;

    fn units(ids: &[(&str, &str)]) -> Vec<(String, String)> {
        ids.iter()
            .map(|(i, t)| (String::from(*i), String::from(*t)))
            .collect()
    }

    #[test]
    fn unit_missing_a_language_is_dropped() {
        let input = vec![
            (
                LanguageTag::ENG,
                units(&[("a", "hello"), ("b", "only eng")]),
            ),
            (LanguageTag::CMN_HANS, units(&[("a", "你好")])),
        ];
        let (corpus, report) =
            build_parallel_corpus(&input, &CorpusFilterPolicy::keep_all()).unwrap();
        assert_eq!(corpus.len(), 1);
        assert_eq!(corpus.units()[0].unit_id, "a");
        assert_eq!(report.missing_languages, 1);
    }

    #[test]
    fn zero_threshold_keeps_everything() {
        let input = vec![
            (LanguageTag::ENG, units(&[("a", "x"), ("b", "y")])),
            (LanguageTag::JPN, units(&[("b", "い"), ("a", "あ")])),
        ];
        let (corpus, report) =
            build_parallel_corpus(&input, &CorpusFilterPolicy::keep_all()).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(report.kept, 2);
        assert_eq!(report.input_units, 2);
        assert_eq!(corpus.units()[0].unit_id, "a");
    }

    #[test]
    fn ted_style_filter_counts() {
        // 1847 talks: 209 lack at least one language, 116 are short.
        let langs = LanguageTag::BUILTIN;
        let mut per_lang: Vec<(LanguageTag, Vec<(String, String)>)> =
            langs.iter().map(|l| (l.clone(), Vec::new())).collect();
        for talk in 0..1847usize {
            let short = (209..325).contains(&talk);
            for (li, (_, list)) in per_lang.iter_mut().enumerate() {
                if talk < 209 && li == 1 + talk % 3 {
                    continue;
                }
                let len = if short { 300 } else { 2000 };
                list.push((format!("talk{talk}"), "x".repeat(len)));
            }
        }
        let (corpus, report) =
            build_parallel_corpus(&per_lang, &CorpusFilterPolicy::default()).unwrap();
        assert_eq!(report.missing_languages, 209);
        assert_eq!(report.below_min_length, 116);
        assert_eq!(corpus.len(), 1522);
        assert!(corpus.units().iter().all(|u| u.texts.len() == 4));
    }

    #[test]
    fn duplicate_ids_are_data_errors() {
        let input = vec![
            (LanguageTag::ENG, units(&[("a", "x"), ("a", "y")])),
            (LanguageTag::JPN, units(&[("a", "あ")])),
        ];
        assert_eq!(
            build_parallel_corpus(&input, &CorpusFilterPolicy::keep_all()).unwrap_err(),
            CorpusError::DuplicateUnitId {
                lang: LanguageTag::ENG,
                unit_id: "a".into()
            }
        );
    }

    #[test]
    fn needs_two_languages_and_reference() {
        let one = vec![(LanguageTag::ENG, units(&[("a", "x")]))];
        assert_eq!(
            build_parallel_corpus(&one, &CorpusFilterPolicy::keep_all()).unwrap_err(),
            CorpusError::TooFewLanguages(1)
        );
        let no_eng = vec![
            (LanguageTag::JPN, units(&[("a", "あ")])),
            (LanguageTag::CMN_HANS, units(&[("a", "啊")])),
        ];
        assert!(matches!(
            build_parallel_corpus(&no_eng, &CorpusFilterPolicy::keep_all()),
            Err(CorpusError::ReferenceNotInCorpus(_))
        ));
    }

    #[test]
    fn blank_text_counts_as_missing() {
        let input = vec![
            (LanguageTag::ENG, units(&[("a", "x")])),
            (LanguageTag::JPN, units(&[("a", "  \n")])),
        ];
        let (corpus, report) =
            build_parallel_corpus(&input, &CorpusFilterPolicy::keep_all()).unwrap();
        assert!(corpus.is_empty());
        assert_eq!(report.missing_languages, 1);
    }

    #[test]
    fn partial_units_allowed_when_not_required() {
        let input = vec![
            (LanguageTag::ENG, units(&[("a", "x"), ("b", "y")])),
            (LanguageTag::JPN, units(&[("a", "あ"), ("c", "う")])),
        ];
        let policy = CorpusFilterPolicy {
            require_all_languages: false,
            ..CorpusFilterPolicy::keep_all()
        };
        let (corpus, _) = build_parallel_corpus(&input, &policy).unwrap();
        assert_eq!(corpus.len(), 3);
        assert!(!corpus.is_complete());
        // without an English text the unit cannot meet a positive threshold
        let policy = CorpusFilterPolicy {
            min_length_chars: 1,
            ..policy
        };
        let (corpus, report) = build_parallel_corpus(&input, &policy).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(report.below_min_length, 1);
    }

    #[test]
    fn positional_alignment_rejects_count_mismatch() {
        let per_lang = vec![
            (LanguageTag::ENG, vec![(0, "a".into()), (1, "b".into())]),
            (LanguageTag::JPN, vec![(0, "あ".into())]),
        ];
        assert!(matches!(
            align_positional(per_lang),
            Err(CorpusError::ParagraphCountMismatch {
                found: 1,
                expected: 2,
                ..
            })
        ));
    }

    #[test]
    fn corpus_validation() {
        let unit = |id: &str, langs: &[LanguageTag]| AlignedUnit {
            unit_id: id.into(),
            texts: langs
                .iter()
                .map(|l| (l.clone(), String::from("t")))
                .collect(),
        };
        let langs = vec![LanguageTag::ENG, LanguageTag::JPN];
        assert!(ParallelCorpus::new("c", langs.clone(), vec![unit("1", &langs)], "").is_ok());
        assert!(matches!(
            ParallelCorpus::new("c", langs.clone(), vec![unit("1", &langs[..1])], ""),
            Err(CorpusError::LanguageSetMismatch { .. })
        ));
        assert!(matches!(
            ParallelCorpus::new(
                "c",
                langs.clone(),
                vec![unit("1", &langs), unit("1", &langs)],
                ""
            ),
            Err(CorpusError::DuplicateUnitId { .. })
        ));
        assert!(matches!(
            ParallelCorpus::new("c", vec![LanguageTag::ENG, LanguageTag::ENG], vec![], ""),
            Err(CorpusError::DuplicateLanguage(_))
        ));
    }

    proptest! {
        #[test]
        fn raising_threshold_never_adds_units(
            lens in proptest::collection::vec(1usize..50, 1..30),
            lo in 0usize..50,
            extra in 0usize..50,
        ) {
            let eng: Vec<(String, String)> =
                lens.iter().enumerate().map(|(i, &n)| (format!("{i}"), "e".repeat(n))).collect();
            let jpn: Vec<(String, String)> =
                lens.iter().enumerate().map(|(i, _)| (format!("{i}"), String::from("あ"))).collect();
            let input = vec![(LanguageTag::ENG, eng), (LanguageTag::JPN, jpn)];
            let count = |min| {
                let policy = CorpusFilterPolicy { min_length_chars: min, ..CorpusFilterPolicy::default() };
                build_parallel_corpus(&input, &policy).unwrap().0.len()
            };
            prop_assert!(count(lo + extra) <= count(lo));
        }
    }
}
