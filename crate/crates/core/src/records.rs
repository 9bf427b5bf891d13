//! Record data model, on-disk format parsers, and synthetic dataset
//! construction.
//!
//! Three line formats are accepted:
//!
//! * heart-rate / step objects:
//!   `{"sensor_name":"HeartRate","timestamp":"Mon Apr 17 15:00:35 EDT 2017","sensor_data":{"bpm": 60}}`
//! * activity objects:
//!   `{"Activity": {"start":"4-2-2017 19:41:00","end":...,"type":"onfoot","condfidence":"80"}}`
//! * the canonical one-object-per-line form this crate emits.
//!
//! Timezone abbreviations in timestamps are skipped; all instants are naive
//! local time. Short activity dates like `4-2-2017` default to month-first
//! (the data this layout comes from is US-formatted); [`DateOrder`] flips it.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use chrono::{Datelike, Duration, NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Activity classes produced by the upstream activity-recognition stack.
/// Anything else is accepted and stored verbatim, flagged nonstandard.
pub const STANDARD_ACTIVITIES: [&str; 5] = ["still", "tilting", "onfoot", "invehicle", "unknown"];

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("unknown sensor: {0}")]
    UnknownSensor(String),
    #[error("bad timestamp: {0}")]
    BadTimestamp(String),
    #[error("empty seed")]
    EmptySeed,
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

/// The three sensor kinds this engine indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SensorKind {
    HeartRate,
    StepCount,
    Activity,
}

impl SensorKind {
    pub const ALL: [SensorKind; 3] = [
        SensorKind::HeartRate,
        SensorKind::StepCount,
        SensorKind::Activity,
    ];

    /// Canonical lowercase token, used as map key and catalogue token.
    pub fn token(self) -> &'static str {
        match self {
            SensorKind::HeartRate => "heartrate",
            SensorKind::StepCount => "stepcount",
            SensorKind::Activity => "activity",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "heartrate" => Some(SensorKind::HeartRate),
            "stepcount" => Some(SensorKind::StepCount),
            "activity" => Some(SensorKind::Activity),
            _ => None,
        }
    }

    /// Stable one-byte tag for binary persistence.
    pub fn tag(self) -> u8 {
        match self {
            SensorKind::HeartRate => 0,
            SensorKind::StepCount => 1,
            SensorKind::Activity => 2,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(SensorKind::HeartRate),
            1 => Some(SensorKind::StepCount),
            2 => Some(SensorKind::Activity),
            _ => None,
        }
    }
}

impl fmt::Display for SensorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Sensor reading attached to a record.
///
/// Activity `end` and `confidence` are carried through parsing and
/// serialization but take no part in indexing or search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Bpm(u32),
    Steps { counts: u64, delta: Option<u64> },
    Activity {
        kind: String,
        end: Option<NaiveDateTime>,
        confidence: Option<String>,
    },
}

impl Payload {
    /// Text form stored in the compressed store and scanned by keyword
    /// search. Steps render as `"<counts>"` or `"<counts> <delta>"`.
    pub fn text(&self) -> String {
        match self {
            Payload::Bpm(bpm) => bpm.to_string(),
            Payload::Steps { counts, delta: None } => counts.to_string(),
            Payload::Steps { counts, delta: Some(d) } => format!("{counts} {d}"),
            Payload::Activity { kind, .. } => kind.clone(),
        }
    }

    /// The single token this payload contributes to the day's Bloom filter:
    /// the decimal primary value for numeric sensors, the lowercased class
    /// for activities.
    pub fn value_token(&self) -> String {
        match self {
            Payload::Bpm(bpm) => bpm.to_string(),
            Payload::Steps { counts, .. } => counts.to_string(),
            Payload::Activity { kind, .. } => kind.to_lowercase(),
        }
    }

    pub fn is_standard_activity(&self) -> bool {
        match self {
            Payload::Activity { kind, .. } => {
                STANDARD_ACTIVITIES.contains(&kind.to_lowercase().as_str())
            }
            _ => false,
        }
    }
}

/// One time-stamped sensor observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SensorRecord {
    pub sensor: SensorKind,
    pub timestamp: NaiveDateTime,
    pub payload: Payload,
}

impl SensorRecord {
    pub fn day(&self) -> DayKey {
        DayKey(self.timestamp.date())
    }

    pub fn payload_text(&self) -> String {
        self.payload.text()
    }

    /// Canonical one-line JSON form.
    pub fn to_canonical_json(&self) -> String {
        let ts = self.timestamp.format("%Y-%m-%dT%H:%M:%S").to_string();
        let v = match &self.payload {
            Payload::Bpm(bpm) => serde_json::json!({
                "sensor": "heartrate", "timestamp": ts, "bpm": bpm,
            }),
            Payload::Steps { counts, delta } => {
                let mut v = serde_json::json!({
                    "sensor": "stepcount", "timestamp": ts, "step_counts": counts,
                });
                if let Some(d) = delta {
                    v["step_delta"] = (*d).into();
                }
                v
            }
            Payload::Activity { kind, end, confidence } => {
                let mut v = serde_json::json!({
                    "sensor": "activity", "timestamp": ts, "type": kind,
                });
                if let Some(e) = end {
                    v["end"] = e.format("%Y-%m-%dT%H:%M:%S").to_string().into();
                }
                if let Some(c) = confidence {
                    v["confidence"] = c.clone().into();
                }
                v
            }
        };
        v.to_string()
    }

    /// Serialization in the record's source shape, used when sizing
    /// synthetic datasets so byte targets correspond to realistic line
    /// widths. The zone token is rendered as `UTC`; instants are naive.
    pub fn to_original_json(&self) -> String {
        let long_ts = self.timestamp.format("%a %b %d %H:%M:%S UTC %Y").to_string();
        match &self.payload {
            Payload::Bpm(bpm) => format!(
                r#"{{"sensor_name":"HeartRate","timestamp":"{long_ts}","sensor_data":{{"bpm": {bpm}}}}}"#
            ),
            Payload::Steps { counts, delta } => {
                let delta = delta.unwrap_or(0);
                format!(
                    r#"{{"sensor_name":"ActivFit","timestamp":"{long_ts}","time_stamp":"{long_ts}","sensor_data":{{"step_counts":{counts},"step_delta":{delta}}}}}"#
                )
            }
            Payload::Activity { kind, end, confidence } => {
                let start = self.timestamp.format("%-m-%-d-%Y %H:%M:%S").to_string();
                let end = end
                    .unwrap_or(self.timestamp)
                    .format("%-m-%-d-%Y %H:%M:%S")
                    .to_string();
                let conf = confidence.as_deref().unwrap_or("100");
                format!(
                    r#"{{"Activity": {{"start":"{start}","end": "{end}","type":"{kind}","condfidence":"{conf}"}}}}"#
                )
            }
        }
    }
}

/// Calendar day identifying one Bloom filter and one store partition.
/// Canonical text form is ISO `YYYY-MM-DD`, which sorts chronologically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DayKey(pub NaiveDate);

impl DayKey {
    pub fn date(self) -> NaiveDate {
        self.0
    }

    pub fn next(self) -> DayKey {
        DayKey(self.0.succ_opt().expect("date overflow"))
    }

    pub fn parse(s: &str) -> Option<DayKey> {
        NaiveDate::parse_from_str(s, "%Y-%m-%d").ok().map(DayKey)
    }
}

impl fmt::Display for DayKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.format("%Y-%m-%d"))
    }
}

impl From<NaiveDateTime> for DayKey {
    fn from(ts: NaiveDateTime) -> Self {
        DayKey(ts.date())
    }
}

/// Inclusive range of days.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DayRange {
    pub start: DayKey,
    pub end: DayKey,
}

impl DayRange {
    pub fn new(start: DayKey, end: DayKey) -> Option<DayRange> {
        (start <= end).then_some(DayRange { start, end })
    }

    pub fn single(day: DayKey) -> DayRange {
        DayRange { start: day, end: day }
    }

    pub fn is_valid(&self) -> bool {
        self.start <= self.end
    }

    pub fn len_days(&self) -> i64 {
        (self.end.0 - self.start.0).num_days() + 1
    }

    pub fn contains(&self, day: DayKey) -> bool {
        self.start <= day && day <= self.end
    }

    pub fn iter(&self) -> impl Iterator<Item = DayKey> {
        let mut cur = self.start;
        let end = self.end;
        std::iter::from_fn(move || {
            if cur > end {
                None
            } else {
                let out = cur;
                cur = cur.next();
                Some(out)
            }
        })
    }
}

impl fmt::Display for DayRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Per-kind and total instance counts for a loaded dataset.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub heart_rate: u64,
    pub step_count: u64,
    pub activity: u64,
    pub total: u64,
    /// Bytes of input consumed, including skipped lines.
    pub byte_size: u64,
    /// Lines that failed to parse and were dropped.
    pub skipped: u64,
}

impl DatasetStats {
    fn count(&mut self, kind: SensorKind) {
        match kind {
            SensorKind::HeartRate => self.heart_rate += 1,
            SensorKind::StepCount => self.step_count += 1,
            SensorKind::Activity => self.activity += 1,
        }
        self.total += 1;
    }
}

/// Which line shape to expect when parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecordFormat {
    /// `sensor_name`/`timestamp`/`sensor_data` objects (heart rate, steps).
    Sensor,
    /// `{"Activity": {...}}` objects.
    Activity,
    /// The canonical form emitted by this crate.
    Canonical,
    /// Sniff each line.
    #[default]
    Auto,
}

impl FromStr for RecordFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sensor" => Ok(RecordFormat::Sensor),
            "activity" => Ok(RecordFormat::Activity),
            "canonical" => Ok(RecordFormat::Canonical),
            "auto" => Ok(RecordFormat::Auto),
            other => Err(format!("unknown record format `{other}`")),
        }
    }
}

/// Interpretation of short numeric dates such as `4-2-2017`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DateOrder {
    #[default]
    MonthFirst,
    DayFirst,
}

impl FromStr for DateOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mdy" | "month-first" => Ok(DateOrder::MonthFirst),
            "dmy" | "day-first" => Ok(DateOrder::DayFirst),
            other => Err(format!("unknown date order `{other}` (use mdy or dmy)")),
        }
    }
}

const LONG_TS: &str = "%a %b %d %H:%M:%S %Z %Y";
const ISO_TS: &str = "%Y-%m-%dT%H:%M:%S";

fn parse_long_timestamp(s: &str) -> Result<NaiveDateTime, RecordError> {
    NaiveDateTime::parse_from_str(s, LONG_TS)
        .or_else(|_| NaiveDateTime::parse_from_str(s, ISO_TS))
        .map_err(|_| RecordError::BadTimestamp(s.to_string()))
}

fn parse_short_timestamp(s: &str, order: DateOrder) -> Result<NaiveDateTime, RecordError> {
    let pattern = match order {
        DateOrder::MonthFirst => "%m-%d-%Y %H:%M:%S",
        DateOrder::DayFirst => "%d-%m-%Y %H:%M:%S",
    };
    NaiveDateTime::parse_from_str(s, pattern)
        .or_else(|_| NaiveDateTime::parse_from_str(s, ISO_TS))
        .map_err(|_| RecordError::BadTimestamp(s.to_string()))
}

/// Parses one line in the given format with month-first short dates.
pub fn parse_record(line: &str, format: RecordFormat) -> Result<SensorRecord, RecordError> {
    parse_record_with(line, format, DateOrder::MonthFirst)
}

pub fn parse_record_with(
    line: &str,
    format: RecordFormat,
    order: DateOrder,
) -> Result<SensorRecord, RecordError> {
    let line = line.trim();
    if line.is_empty() {
        return Err(RecordError::Malformed("empty line".into()));
    }
    let value: Value = serde_json::from_str(line)
        .map_err(|e| RecordError::Malformed(format!("not a JSON object: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| RecordError::Malformed("top-level value is not an object".into()))?;

    match format {
        RecordFormat::Sensor => parse_sensor_obj(obj),
        RecordFormat::Activity => parse_activity_obj(obj, order),
        RecordFormat::Canonical => parse_canonical_obj(obj),
        RecordFormat::Auto => {
            if obj.contains_key("Activity") {
                parse_activity_obj(obj, order)
            } else if obj.contains_key("sensor_name") {
                parse_sensor_obj(obj)
            } else if obj.contains_key("sensor") {
                parse_canonical_obj(obj)
            } else {
                Err(RecordError::Malformed(
                    "no recognizable record shape".into(),
                ))
            }
        }
    }
}

fn str_field<'a>(
    obj: &'a serde_json::Map<String, Value>,
    key: &str,
) -> Result<&'a str, RecordError> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| RecordError::Malformed(format!("missing string field `{key}`")))
}

fn uint_field(data: &serde_json::Map<String, Value>, key: &str) -> Result<u64, RecordError> {
    let v = data
        .get(key)
        .ok_or_else(|| RecordError::Malformed(format!("missing field `{key}`")))?;
    v.as_u64()
        .ok_or_else(|| RecordError::Malformed(format!("field `{key}` is not a non-negative integer")))
}

fn parse_sensor_obj(obj: &serde_json::Map<String, Value>) -> Result<SensorRecord, RecordError> {
    let name = str_field(obj, "sensor_name")?;
    let ts_text = obj
        .get("timestamp")
        .or_else(|| obj.get("time_stamp"))
        .and_then(Value::as_str)
        .ok_or_else(|| RecordError::Malformed("missing string field `timestamp`".into()))?;
    let timestamp = parse_long_timestamp(ts_text)?;
    let data = obj
        .get("sensor_data")
        .and_then(Value::as_object)
        .ok_or_else(|| RecordError::Malformed("missing object field `sensor_data`".into()))?;

    let payload = match name.to_lowercase().as_str() {
        "heartrate" => {
            let bpm = uint_field(data, "bpm")?;
            let bpm = u32::try_from(bpm)
                .map_err(|_| RecordError::Malformed("bpm out of range".into()))?;
            Payload::Bpm(bpm)
        }
        "activfit" | "stepcount" | "steps" | "stepcounter" => Payload::Steps {
            counts: uint_field(data, "step_counts")?,
            delta: match data.get("step_delta") {
                None => None,
                Some(v) => Some(v.as_u64().ok_or_else(|| {
                    RecordError::Malformed("field `step_delta` is not a non-negative integer".into())
                })?),
            },
        },
        other => return Err(RecordError::UnknownSensor(other.to_string())),
    };
    Ok(SensorRecord {
        sensor: match payload {
            Payload::Bpm(_) => SensorKind::HeartRate,
            _ => SensorKind::StepCount,
        },
        timestamp,
        payload,
    })
}

fn parse_activity_obj(
    obj: &serde_json::Map<String, Value>,
    order: DateOrder,
) -> Result<SensorRecord, RecordError> {
    let inner = obj
        .get("Activity")
        .and_then(Value::as_object)
        .ok_or_else(|| RecordError::Malformed("missing object field `Activity`".into()))?;
    let timestamp = parse_short_timestamp(str_field(inner, "start")?, order)?;
    let end = match inner.get("end").and_then(Value::as_str) {
        Some(s) => Some(parse_short_timestamp(s, order)?),
        None => None,
    };
    let kind = str_field(inner, "type")?.to_string();
    // The source data spells it "condfidence"; accept the corrected key too.
    let confidence = inner
        .get("condfidence")
        .or_else(|| inner.get("confidence"))
        .map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        });
    Ok(SensorRecord {
        sensor: SensorKind::Activity,
        timestamp,
        payload: Payload::Activity { kind, end, confidence },
    })
}

fn parse_canonical_obj(obj: &serde_json::Map<String, Value>) -> Result<SensorRecord, RecordError> {
    let sensor = str_field(obj, "sensor")?;
    let sensor = SensorKind::from_token(sensor)
        .ok_or_else(|| RecordError::UnknownSensor(sensor.to_string()))?;
    let ts_text = str_field(obj, "timestamp")?;
    let timestamp = NaiveDateTime::parse_from_str(ts_text, ISO_TS)
        .map_err(|_| RecordError::BadTimestamp(ts_text.to_string()))?;
    let payload = match sensor {
        SensorKind::HeartRate => {
            let bpm = uint_field(obj, "bpm")?;
            Payload::Bpm(
                u32::try_from(bpm).map_err(|_| RecordError::Malformed("bpm out of range".into()))?,
            )
        }
        SensorKind::StepCount => Payload::Steps {
            counts: uint_field(obj, "step_counts")?,
            delta: obj.get("step_delta").and_then(Value::as_u64),
        },
        SensorKind::Activity => Payload::Activity {
            kind: str_field(obj, "type")?.to_string(),
            end: match obj.get("end").and_then(Value::as_str) {
                Some(s) => Some(
                    NaiveDateTime::parse_from_str(s, ISO_TS)
                        .map_err(|_| RecordError::BadTimestamp(s.to_string()))?,
                ),
                None => None,
            },
            confidence: obj
                .get("confidence")
                .and_then(Value::as_str)
                .map(str::to_string),
        },
    };
    Ok(SensorRecord { sensor, timestamp, payload })
}

/// Loads a newline-delimited record file.
///
/// Malformed lines are counted and skipped, never fatal; the result is
/// sorted by timestamp ascending (stable, so equal timestamps keep file
/// order).
pub fn load_dataset(
    path: &Path,
    format: RecordFormat,
    order: DateOrder,
) -> Result<(Vec<SensorRecord>, DatasetStats), RecordError> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_dataset(&text, format, order))
}

/// In-memory variant of [`load_dataset`].
pub fn parse_dataset(
    text: &str,
    format: RecordFormat,
    order: DateOrder,
) -> (Vec<SensorRecord>, DatasetStats) {
    let mut stats = DatasetStats {
        byte_size: text.len() as u64,
        ..Default::default()
    };
    let mut records = Vec::new();
    for line in text.lines() {
        match parse_record_with(line, format, order) {
            Ok(rec) => {
                stats.count(rec.sensor);
                records.push(rec);
            }
            Err(_) => stats.skipped += 1,
        }
    }
    records.sort_by_key(|r| r.timestamp);
    (records, stats)
}

/// Serialized size of one record as a dataset line (original shape plus
/// newline), the unit in which synthetic dataset targets are measured.
pub fn serialized_line_len(record: &SensorRecord) -> usize {
    record.to_original_json().len() + 1
}

/// Builds a synthetic dataset of at least `target_bytes` by cyclically
/// repeating `seed`. Each full pass over the seed shifts every timestamp
/// forward by the seed's span in whole days plus one, so day keys from
/// different passes never collide. The construction is pure repetition;
/// `rng_seed` is accepted for interface stability but no randomness is
/// consumed.
pub fn synthesize(
    seed: &[SensorRecord],
    target_bytes: usize,
    _rng_seed: u64,
) -> Result<Vec<SensorRecord>, RecordError> {
    if seed.is_empty() {
        return Err(RecordError::EmptySeed);
    }
    let min_day = seed.iter().map(|r| r.day().0).min().unwrap();
    let max_day = seed.iter().map(|r| r.day().0).max().unwrap();
    let shift_days = (max_day - min_day).num_days() + 1;

    let mut out = Vec::new();
    let mut bytes = 0usize;
    let mut pass = 0i64;
    'outer: loop {
        let offset = Duration::days(pass * shift_days);
        for rec in seed {
            let mut rec = rec.clone();
            rec.timestamp += offset;
            if let Payload::Activity { end: Some(end), .. } = &mut rec.payload {
                *end += offset;
            }
            bytes += serialized_line_len(&rec);
            out.push(rec);
            if bytes >= target_bytes {
                break 'outer;
            }
        }
        pass += 1;
    }
    Ok(out)
}

/// Groups records by day key. Every record lands in exactly one group.
pub fn group_by_day(records: &[SensorRecord]) -> BTreeMap<DayKey, Vec<&SensorRecord>> {
    let mut map: BTreeMap<DayKey, Vec<&SensorRecord>> = BTreeMap::new();
    for rec in records {
        map.entry(rec.day()).or_default().push(rec);
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    const HR_LINE: &str = r#"{"sensor_name":"HeartRate","timestamp":"Mon Apr 17 15:00:35 EDT 2017","sensor_data":{"bpm": 60}}"#;
    const STEP_LINE: &str = r#"{"sensor_name":"ActivFit","timestamp":"Thu Apr 06 23:50:24 EDT 2017","time_stamp":"Thu Apr 6 23:50:24 EDT 2017","sensor_data":{"step_counts":755,"step_delta":13}}"#;
    const ACT_LINE: &str = r#"{"Activity": {"start":"4-2-2017 19:41:00","end": "4-2-2017 19:41:00","type":"onfoot","condfidence":"80"}}"#;

    fn ts(s: &str) -> NaiveDateTime {
        NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S").unwrap()
    }

    #[test]
    fn parses_heart_rate_line() {
        let rec = parse_record(HR_LINE, RecordFormat::Sensor).unwrap();
        assert_eq!(rec.sensor, SensorKind::HeartRate);
        assert_eq!(rec.timestamp, ts("2017-04-17T15:00:35"));
        assert_eq!(rec.payload, Payload::Bpm(60));
    }

    #[test]
    fn parses_step_line() {
        let rec = parse_record(STEP_LINE, RecordFormat::Auto).unwrap();
        assert_eq!(rec.sensor, SensorKind::StepCount);
        assert_eq!(rec.timestamp, ts("2017-04-06T23:50:24"));
        assert_eq!(rec.payload, Payload::Steps { counts: 755, delta: Some(13) });
        assert_eq!(rec.payload_text(), "755 13");
    }

    #[test]
    fn parses_activity_line_month_first() {
        let rec = parse_record(ACT_LINE, RecordFormat::Activity).unwrap();
        assert_eq!(rec.sensor, SensorKind::Activity);
        assert_eq!(rec.timestamp, ts("2017-04-02T19:41:00"));
        assert_eq!(rec.payload.value_token(), "onfoot");
        assert!(rec.payload.is_standard_activity());

        let rec = parse_record_with(ACT_LINE, RecordFormat::Activity, DateOrder::DayFirst).unwrap();
        assert_eq!(rec.timestamp, ts("2017-02-04T19:41:00"));
    }

    #[test]
    fn nonstandard_activity_kept_verbatim() {
        let line = r#"{"Activity": {"start":"4-2-2017 19:41:00","type":"Skydiving"}}"#;
        let rec = parse_record(line, RecordFormat::Auto).unwrap();
        assert_eq!(rec.payload.text(), "Skydiving");
        assert!(!rec.payload.is_standard_activity());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_record("", RecordFormat::Auto),
            Err(RecordError::Malformed(_))
        ));
        assert!(matches!(
            parse_record("{not json", RecordFormat::Auto),
            Err(RecordError::Malformed(_))
        ));
        let unknown = r#"{"sensor_name":"Gyroscope","timestamp":"Mon Apr 17 15:00:35 EDT 2017","sensor_data":{}}"#;
        assert!(matches!(
            parse_record(unknown, RecordFormat::Sensor),
            Err(RecordError::UnknownSensor(_))
        ));
        let bad_ts = r#"{"sensor_name":"HeartRate","timestamp":"sometime","sensor_data":{"bpm": 60}}"#;
        assert!(matches!(
            parse_record(bad_ts, RecordFormat::Sensor),
            Err(RecordError::BadTimestamp(_))
        ));
        let neg = r#"{"sensor_name":"HeartRate","timestamp":"Mon Apr 17 15:00:35 EDT 2017","sensor_data":{"bpm": -4}}"#;
        assert!(matches!(
            parse_record(neg, RecordFormat::Sensor),
            Err(RecordError::Malformed(_))
        ));
    }

    #[test]
    fn round_trip_through_both_serializations() {
        for line in [HR_LINE, STEP_LINE, ACT_LINE] {
            let rec = parse_record(line, RecordFormat::Auto).unwrap();
            let canon = parse_record(&rec.to_canonical_json(), RecordFormat::Canonical).unwrap();
            assert_eq!(rec, canon);
            let orig = parse_record(&rec.to_original_json(), RecordFormat::Auto).unwrap();
            assert_eq!(rec.sensor, orig.sensor);
            assert_eq!(rec.timestamp, orig.timestamp);
            assert_eq!(rec.payload.text(), orig.payload.text());
        }
    }

    #[test]
    fn dataset_skips_and_counts_malformed_lines() {
        let text = format!("{HR_LINE}\nnot a record\n{STEP_LINE}\n");
        let (records, stats) = parse_dataset(&text, RecordFormat::Auto, DateOrder::MonthFirst);
        assert_eq!(records.len(), 2);
        assert_eq!(stats.total, 2);
        assert_eq!(stats.skipped, 1);
        assert_eq!(stats.heart_rate + stats.step_count + stats.activity, stats.total);
        // sorted ascending
        assert!(records[0].timestamp <= records[1].timestamp);
    }

    #[test]
    fn day_key_orders_and_formats() {
        let a = DayKey::parse("2017-04-02").unwrap();
        let b = DayKey::parse("2017-04-17").unwrap();
        assert!(a < b);
        assert_eq!(a.to_string(), "2017-04-02");
        assert_eq!(a.next().to_string(), "2017-04-03");
        let range = DayRange::new(a, b).unwrap();
        assert_eq!(range.len_days(), 16);
        assert_eq!(range.iter().count(), 16);
        assert!(DayRange::new(b, a).is_none());
    }

    #[test]
    fn synthesize_shifts_passes_onto_fresh_days() {
        let rec = parse_record(HR_LINE, RecordFormat::Sensor).unwrap();
        let one = serialized_line_len(&rec);
        let out = synthesize(std::slice::from_ref(&rec), 3 * one, 9).unwrap();
        assert_eq!(out.len(), 3);
        let days: std::collections::BTreeSet<_> = out.iter().map(|r| r.day()).collect();
        assert_eq!(days.len(), 3, "single-record passes land on distinct days");

        // span of 7 days => second pass shifted by 8 days
        let mut seed = vec![rec.clone(), rec.clone()];
        seed[1].timestamp += Duration::days(7);
        let out = synthesize(&seed, 3 * one, 0).unwrap();
        assert_eq!(out[2].timestamp, seed[0].timestamp + Duration::days(8));
    }

    #[test]
    fn synthesize_is_deterministic() {
        let seed: Vec<_> = [HR_LINE, STEP_LINE, ACT_LINE]
            .iter()
            .map(|l| parse_record(l, RecordFormat::Auto).unwrap())
            .collect();
        let a = synthesize(&seed, 10_000, 1).unwrap();
        let b = synthesize(&seed, 10_000, 1).unwrap();
        assert_eq!(a, b);
        assert!(matches!(synthesize(&[], 10, 0), Err(RecordError::EmptySeed)));
    }

    #[test]
    fn grouping_by_day_is_a_partition() {
        let seed: Vec<_> = [HR_LINE, STEP_LINE, ACT_LINE]
            .iter()
            .map(|l| parse_record(l, RecordFormat::Auto).unwrap())
            .collect();
        let records = synthesize(&seed, 5_000, 0).unwrap();
        let groups = group_by_day(&records);
        let grouped: usize = groups.values().map(Vec::len).sum();
        assert_eq!(grouped, records.len());
        for (day, members) in groups {
            assert!(members.iter().all(|r| r.day() == day));
        }
    }
}
