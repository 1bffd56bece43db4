//! Caption transcript extraction for SRT, WebVTT and JSON captions.
//!
//! All formats reduce to the cue payloads in cue order, with markup removed,
//! joined by single spaces.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubtitleFormat {
    Srt,
    WebVtt,
    /// `{"captions": [{"content": "...", "startTime": 0, "duration": 0}, ...]}`
    JsonCaptions,
}

impl SubtitleFormat {
    pub const ALL: [SubtitleFormat; 3] = [
        SubtitleFormat::Srt,
        SubtitleFormat::WebVtt,
        SubtitleFormat::JsonCaptions,
    ];

    pub fn extension(self) -> &'static str {
        match self {
            SubtitleFormat::Srt => "srt",
            SubtitleFormat::WebVtt => "vtt",
            SubtitleFormat::JsonCaptions => "json",
        }
    }

    pub fn from_extension(ext: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.extension() == ext)
    }
}

impl FromStr for SubtitleFormat {
    type Err = SubtitleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "srt" => Ok(SubtitleFormat::Srt),
            "webvtt" | "vtt" => Ok(SubtitleFormat::WebVtt),
            "json" | "json_captions" => Ok(SubtitleFormat::JsonCaptions),
            other => Err(SubtitleError::UnknownFormat(other.into())),
        }
    }
}

impl fmt::Display for SubtitleFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubtitleFormat::Srt => "srt",
            SubtitleFormat::WebVtt => "webvtt",
            SubtitleFormat::JsonCaptions => "json_captions",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubtitleError {
    #[error("unknown subtitle format `{0}` (expected srt, webvtt or json_captions)")]
    UnknownFormat(String),
    #[error("line {line}: malformed cue timing `{text}`")]
    BadTiming { line: usize, text: String },
    #[error("line {line}: expected a cue timing line")]
    MissingTiming { line: usize },
    #[error("missing WEBVTT header")]
    MissingHeader,
    #[error("line {line}: invalid caption JSON: {message}")]
    Json { line: usize, message: String },
}

/// Parses `[HH:]MM:SS(,|.)mmm` into milliseconds.
fn parse_timestamp(s: &str) -> Option<u64> {
    let (clock, millis) = s.rsplit_once([',', '.'])?;
    if millis.len() != 3 || !millis.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut fields = [0u64; 3];
    let parts: Vec<&str> = clock.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        return None;
    }
    let offset = 3 - parts.len();
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        fields[offset + i] = p.parse().ok()?;
    }
    let [h, m, sec] = fields;
    if m >= 60 || sec >= 60 {
        return None;
    }
    Some(((h * 60 + m) * 60 + sec) * 1000 + millis.parse::<u64>().ok()?)
}

/// Validates a `start --> end [settings]` line.
fn parse_timing(line: &str, line_no: usize) -> Result<(u64, u64), SubtitleError> {
    let bad = || SubtitleError::BadTiming {
        line: line_no,
        text: line.into(),
    };
    let (start, rest) = line.split_once("-->").ok_or_else(bad)?;
    let end = rest.split_whitespace().next().ok_or_else(bad)?;
    let start = parse_timestamp(start.trim()).ok_or_else(bad)?;
    let end = parse_timestamp(end).ok_or_else(bad)?;
    Ok((start, end))
}

fn decode_entity(entity: &str) -> Option<char> {
    match entity {
        "amp" => Some('&'),
        "lt" => Some('<'),
        "gt" => Some('>'),
        "quot" => Some('"'),
        "apos" => Some('\''),
        "nbsp" => Some('\u{A0}'),
        "lrm" => Some('\u{200E}'),
        "rlm" => Some('\u{200F}'),
        _ => {
            let num = entity.strip_prefix('#')?;
            let code = match num.strip_prefix(['x', 'X']) {
                Some(hex) => u32::from_str_radix(hex, 16).ok()?,
                None => num.parse().ok()?,
            };
            char::from_u32(code)
        }
    }
}

/// Removes `<...>` tags and decodes character references.
pub fn strip_markup(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(i) = rest.find(['<', '&']) {
        out.push_str(&rest[..i]);
        let tail = &rest[i..];
        if tail.starts_with('<') {
            match tail.find('>') {
                Some(end) => rest = &tail[end + 1..],
                None => {
                    out.push_str(tail);
                    rest = "";
                }
            }
        } else {
            let decoded = tail[1..]
                .find(';')
                .filter(|&end| end <= 10)
                .and_then(|end| decode_entity(&tail[1..end + 1]).map(|c| (c, end + 2)));
            match decoded {
                Some((c, len)) => {
                    out.push(c);
                    rest = &tail[len..];
                }
                None => {
                    out.push('&');
                    rest = &tail[1..];
                }
            }
        }
    }
    out.push_str(rest);
    out
}

fn push_payload(out: &mut String, line: &str) {
    let cleaned = strip_markup(line);
    for word in cleaned.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
}

/// Blocks of non-blank lines, each line tagged with its 1-based number.
fn blocks(content: &str) -> Vec<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for (i, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                out.push(core::mem::take(&mut current));
            }
        } else {
            current.push((i + 1, line));
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

fn strip_bom(content: &str) -> &str {
    content.strip_prefix('\u{FEFF}').unwrap_or(content)
}

pub fn parse_srt(content: &str) -> Result<String, SubtitleError> {
    let mut out = String::new();
    for block in blocks(strip_bom(content)) {
        let mut lines = block.into_iter().peekable();
        let &(first_no, first) = lines.peek().expect("blocks are non-empty");
        if !first.contains("-->") && first.trim().bytes().all(|b| b.is_ascii_digit()) {
            lines.next();
        }
        let (line_no, timing) = lines.next().unwrap_or((first_no + 1, ""));
        if !timing.contains("-->") {
            return Err(SubtitleError::MissingTiming { line: line_no });
        }
        parse_timing(timing, line_no)?;
        for (_, line) in lines {
            push_payload(&mut out, line);
        }
    }
    Ok(out)
}

pub fn parse_webvtt(content: &str) -> Result<String, SubtitleError> {
    let content = strip_bom(content);
    let header = content.lines().next().unwrap_or("");
    if header != "WEBVTT" && !header.starts_with("WEBVTT ") && !header.starts_with("WEBVTT\t") {
        return Err(SubtitleError::MissingHeader);
    }
    let mut out = String::new();
    for (idx, block) in blocks(content).into_iter().enumerate() {
        if idx == 0 {
            // header block, possibly with metadata lines
            continue;
        }
        let (first_no, first) = block[0];
        if first.starts_with("NOTE") || first == "STYLE" || first == "REGION" {
            continue;
        }
        let timing_at = if first.contains("-->") { 0 } else { 1 };
        let Some(&(line_no, timing)) = block.get(timing_at) else {
            return Err(SubtitleError::MissingTiming { line: first_no + 1 });
        };
        if !timing.contains("-->") {
            return Err(SubtitleError::MissingTiming { line: line_no });
        }
        parse_timing(timing, line_no)?;
        for &(_, line) in &block[timing_at + 1..] {
            push_payload(&mut out, line);
        }
    }
    Ok(out)
}

#[derive(Deserialize)]
struct CaptionDoc {
    captions: Vec<Caption>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct Caption {
    content: String,
    #[serde(default)]
    start_time: Option<f64>,
    #[serde(default)]
    duration: Option<f64>,
}

pub fn parse_json_captions(content: &str) -> Result<String, SubtitleError> {
    let doc: CaptionDoc =
        serde_json::from_str(strip_bom(content)).map_err(|e| SubtitleError::Json {
            line: e.line(),
            message: alloc::format!("{e}"),
        })?;
    let mut out = String::new();
    for (i, cap) in doc.captions.iter().enumerate() {
        let valid = |v: Option<f64>| v.is_none_or(|t| t.is_finite() && t >= 0.0);
        if !valid(cap.start_time) || !valid(cap.duration) {
            return Err(SubtitleError::Json {
                line: 1,
                message: alloc::format!("caption {i} has a negative or non-finite timing"),
            });
        }
        for line in cap.content.lines() {
            push_payload(&mut out, line);
        }
    }
    Ok(out)
}

/// Extracts the transcript text of a caption file.
pub fn parse_subtitle(content: &str, format: SubtitleFormat) -> Result<String, SubtitleError> {
    match format {
        SubtitleFormat::Srt => parse_srt(content),
        SubtitleFormat::WebVtt => parse_webvtt(content),
        SubtitleFormat::JsonCaptions => parse_json_captions(content),
    }
}
