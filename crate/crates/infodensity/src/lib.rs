//! File formats, corpus ingestion, SVG boxplots and the pipeline runner
//! built on `infodensity-core`.

pub mod corpus_io;
pub mod error;
pub mod pipeline;
pub mod posts_io;
pub mod records;
pub mod stages;
pub mod svg;
pub mod table;

pub use error::{Error, Result};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineOutputs};
