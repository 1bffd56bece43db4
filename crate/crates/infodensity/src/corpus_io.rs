//! Corpus ingestion from directory layouts and the corpus document format.
//!
//! A corpus document is UTF-8 JSON Lines. The first line is a header:
//!
//! ```text
//! {"corpus":"udhr","languages":["eng","cmn_hant"],"provenance":"...","complete":true}
//! ```
//!
//! and every following line is one unit: `unit_id` first, then one field per
//! corpus language in header order (absent when a partial unit lacks it).

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use infodensity_core::corpus::{
    align_positional, build_parallel_corpus, AlignedUnit, CorpusFilterPolicy, FilterReport,
    ParallelCorpus,
};
use infodensity_core::lang::LanguageTag;
use infodensity_core::subtitle::{parse_subtitle, SubtitleFormat};
use infodensity_core::udhr::{decode_utf8, split_paragraphs};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusLayout {
    /// `<dir>/<lang>.txt`, paragraphs aligned by position.
    Udhr,
    /// `<dir>/<talk_id>/<lang>.(srt|vtt|json)`, one unit per talk.
    Ted,
}

impl CorpusLayout {
    pub fn name(self) -> &'static str {
        match self {
            CorpusLayout::Udhr => "udhr",
            CorpusLayout::Ted => "ted",
        }
    }

    /// UDHR paragraphs are short; talks shorter than 1000 English
    /// characters are treated as performances and dropped.
    pub fn default_min_chars(self) -> usize {
        match self {
            CorpusLayout::Udhr => 0,
            CorpusLayout::Ted => 1000,
        }
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = read_bytes(path)?;
    decode_utf8(&bytes)
        .map(str::to_owned)
        .map_err(|source| Error::Decode {
            path: path.to_owned(),
            source,
        })
}

/// Reads `<dir>/<lang>.txt` for each language and aligns paragraphs by position.
pub fn ingest_udhr(
    dir: &Path,
    langs: &[LanguageTag],
    policy: &CorpusFilterPolicy,
) -> Result<(ParallelCorpus, FilterReport)> {
    let mut per_lang = Vec::with_capacity(langs.len());
    for lang in langs {
        let path = dir.join(format!("{lang}.txt"));
        per_lang.push((lang.clone(), split_paragraphs(&read_text(&path)?)));
    }
    let aligned = align_positional(per_lang)?;
    let (corpus, report) = build_parallel_corpus(&aligned, policy)?;
    Ok((
        corpus.with_name("udhr", format!("UDHR paragraphs from {}", dir.display())),
        report,
    ))
}

fn subtitle_file(talk_dir: &Path, lang: &LanguageTag) -> Option<(PathBuf, SubtitleFormat)> {
    SubtitleFormat::ALL.into_iter().find_map(|f| {
        let p = talk_dir.join(format!("{lang}.{}", f.extension()));
        p.is_file().then_some((p, f))
    })
}

/// Reads one transcript per talk and language from `<dir>/<talk_id>/`.
pub fn ingest_ted(
    dir: &Path,
    langs: &[LanguageTag],
    policy: &CorpusFilterPolicy,
) -> Result<(ParallelCorpus, FilterReport)> {
    let mut talks: Vec<(String, PathBuf)> = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        if entry.path().is_dir() {
            talks.push((
                entry.file_name().to_string_lossy().into_owned(),
                entry.path(),
            ));
        }
    }
    talks.sort();
    let mut per_lang: Vec<(LanguageTag, Vec<(String, String)>)> =
        langs.iter().map(|l| (l.clone(), Vec::new())).collect();
    for (talk_id, talk_dir) in &talks {
        for (lang, units) in per_lang.iter_mut() {
            let Some((path, format)) = subtitle_file(talk_dir, lang) else {
                continue;
            };
            let content = read_text(&path)?;
            let transcript =
                parse_subtitle(&content, format).map_err(|source| Error::Subtitle {
                    path: path.clone(),
                    source,
                })?;
            units.push((talk_id.clone(), transcript));
        }
    }
    let (corpus, report) = build_parallel_corpus(&per_lang, policy)?;
    Ok((
        corpus.with_name(
            "ted",
            format!("subtitle transcripts from {}", dir.display()),
        ),
        report,
    ))
}

pub fn ingest(
    layout: CorpusLayout,
    dir: &Path,
    langs: &[LanguageTag],
    policy: &CorpusFilterPolicy,
) -> Result<(ParallelCorpus, FilterReport)> {
    match layout {
        CorpusLayout::Udhr => ingest_udhr(dir, langs, policy),
        CorpusLayout::Ted => ingest_ted(dir, langs, policy),
    }
}

/// Serializes a corpus document.
pub fn corpus_to_string(corpus: &ParallelCorpus) -> String {
    let mut header = Map::new();
    header.insert("corpus".into(), corpus.name().into());
    header.insert(
        "languages".into(),
        corpus
            .languages()
            .iter()
            .map(|l| Value::from(l.code()))
            .collect(),
    );
    header.insert("provenance".into(), corpus.provenance().into());
    header.insert("complete".into(), corpus.is_complete().into());
    let mut out = Value::Object(header).to_string();
    out.push('\n');
    for unit in corpus.units() {
        let mut rec = Map::new();
        rec.insert("unit_id".into(), unit.unit_id.as_str().into());
        for lang in corpus.languages() {
            if let Some(text) = unit.text(lang) {
                rec.insert(lang.code().into(), text.into());
            }
        }
        out.push_str(&Value::Object(rec).to_string());
        out.push('\n');
    }
    out
}

pub fn write_corpus(corpus: &ParallelCorpus, path: &Path) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(corpus_to_string(corpus).as_bytes())
        .map_err(|e| Error::io(path, e))
}

#[derive(serde::Deserialize)]
struct Header {
    corpus: String,
    languages: Vec<LanguageTag>,
    #[serde(default)]
    provenance: String,
    #[serde(default = "yes")]
    complete: bool,
}

fn yes() -> bool {
    true
}

pub fn read_corpus(path: &Path) -> Result<ParallelCorpus> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut lines = BufReader::new(file).lines().enumerate();
    let bad = |line: usize, msg: String| Error::data(path, format!("line {line}: {msg}"));
    let header_line = match lines.next() {
        Some((_, line)) => line.map_err(|e| Error::io(path, e))?,
        None => return Err(Error::data(path, "empty corpus document")),
    };
    let header: Header = serde_json::from_str(&header_line).map_err(|e| bad(1, e.to_string()))?;
    let mut units = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Map<String, Value> =
            serde_json::from_str(&line).map_err(|e| bad(i + 1, e.to_string()))?;
        let unit_id = rec
            .get("unit_id")
            .and_then(Value::as_str)
            .ok_or_else(|| bad(i + 1, "missing unit_id".into()))?
            .to_owned();
        let mut texts = std::collections::BTreeMap::new();
        for (key, value) in &rec {
            if key == "unit_id" {
                continue;
            }
            let lang = header
                .languages
                .iter()
                .find(|l| l.code() == key)
                .ok_or_else(|| bad(i + 1, format!("field `{key}` is not a corpus language")))?;
            let text = value
                .as_str()
                .ok_or_else(|| bad(i + 1, format!("field `{key}` is not a string")))?;
            texts.insert(lang.clone(), text.to_owned());
        }
        units.push(AlignedUnit { unit_id, texts });
    }
    let corpus = if header.complete {
        ParallelCorpus::new(header.corpus, header.languages, units, header.provenance)
    } else {
        ParallelCorpus::new_partial(header.corpus, header.languages, units, header.provenance)
    };
    corpus.map_err(|e| Error::data(path, e.to_string()))
}
