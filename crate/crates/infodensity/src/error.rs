use std::io;
use std::path::PathBuf;

use infodensity_core::corpus::CorpusError;
use infodensity_core::lang::LanguageError;
use infodensity_core::measure::MeasureError;
use infodensity_core::microblog::MicroblogError;
use infodensity_core::ratio::RatioError;
use infodensity_core::subtitle::SubtitleError;
use infodensity_core::udhr::DecodeError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Decode {
        path: PathBuf,
        #[source]
        source: DecodeError,
    },
    #[error("{path}: {source}")]
    Subtitle {
        path: PathBuf,
        #[source]
        source: SubtitleError,
    },
    #[error("{path}: {message}")]
    Data { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Ratio(#[from] RatioError),
    #[error(transparent)]
    Microblog(#[from] MicroblogError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn data(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Data {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
