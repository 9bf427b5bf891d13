//! On-device natural-language search over time-stamped personal-sensor
//! records.
//!
//! The pipeline has two phases. Preprocessing ingests sensor records and
//! builds two artifacts: a [`bloom::BitCatalogue`] mapping each calendar day
//! to a Bloom filter over that day's tokens, and a [`clstore::CompressedStore`]
//! holding Huffman-encoded payloads keyed by day and sensor. Query execution
//! parses a natural-language question ([`nlq`]), prunes the date range through
//! the catalogue, searches the compressed store without decompressing
//! non-matches, and renders the result back into a sentence.
//!
//! [`engine::Engine`] ties the phases together and also provides the
//! brute-force baseline plus the Bloom-only / compression-only ablation modes.

pub mod bits;
pub mod bloom;
pub mod clstore;
pub mod codecs;
pub mod engine;
pub mod nlq;
pub mod records;

pub mod alloc_track;

pub use engine::{Engine, EngineConfig, EngineMode, QueryOutcome};
pub use records::{DayKey, SensorKind, SensorRecord};
