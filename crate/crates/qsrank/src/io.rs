//! CSV and JSON formats.
//!
//! Score and feature files are comma separated with a header line and
//! labels `1` (positive) / `0` (negative). Line numbers in errors count
//! the header as line 1.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use qsrank_core::learner::{Dataset, Label, LinearModel, Sample};
use qsrank_core::{Scored, ScoredInstance};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rows of a score file, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreFile {
    pub ids: Vec<String>,
    pub labels: Vec<Label>,
    pub scores: Vec<f64>,
}

impl ScoreFile {
    /// Inference problem over the rows; sample ids are row indices, so
    /// equal scores are ordered as in the file.
    pub fn instance(&self) -> Result<ScoredInstance> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, (&label, &score)) in self.labels.iter().zip(&self.scores).enumerate() {
            match label {
                Label::Positive => pos.push(Scored::new(score, i)),
                Label::Negative => neg.push(Scored::new(score, i)),
            }
        }
        Ok(ScoredInstance::new(pos, neg)?)
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(reader)
}

fn parse_label(field: &str, line: u64) -> Result<Label> {
    match field {
        "1" => Ok(Label::Positive),
        "0" => Ok(Label::Negative),
        other => Err(Error::row(line, format!("label must be 1 or 0, found {other:?}"))),
    }
}

fn parse_real(field: &str, what: &str, line: u64) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::row(line, format!("{what}: cannot parse {field:?} as a number")))?;
    if !v.is_finite() {
        return Err(Error::row(line, format!("{what}: value {field:?} is not finite")));
    }
    Ok(v)
}

fn check_classes(labels: &[Label]) -> Result<()> {
    if !labels.contains(&Label::Positive) {
        return Err(Error::MissingClass("positive", 1));
    }
    if !labels.contains(&Label::Negative) {
        return Err(Error::MissingClass("negative", 0));
    }
    Ok(())
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

pub fn parse_score_file<R: Read>(reader: R) -> Result<ScoreFile> {
    let mut rdr = csv_reader(reader);
    let header = rdr.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != ["id", "label", "score"] {
        return Err(Error::row(1, "header must be `id,label,score`"));
    }
    let mut file = ScoreFile { ids: Vec::new(), labels: Vec::new(), scores: Vec::new() };
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        if record.len() != 3 {
            return Err(Error::row(line, format!("expected 3 fields, found {}", record.len())));
        }
        let id = record[0].to_string();
        if !seen.insert(id.clone()) {
            return Err(Error::row(line, format!("duplicate id {id:?}")));
        }
        file.labels.push(parse_label(&record[1], line)?);
        file.scores.push(parse_real(&record[2], "score", line)?);
        file.ids.push(id);
    }
    check_classes(&file.labels)?;
    Ok(file)
}

pub fn read_score_file(path: impl AsRef<Path>) -> Result<ScoreFile> {
    parse_score_file(open(path.as_ref())?)
}

pub fn write_scores<W: Write>(writer: W, file: &ScoreFile) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["id", "label", "score"])?;
    for ((id, label), score) in file.ids.iter().zip(&file.labels).zip(&file.scores) {
        w.write_record([id.as_str(), label_str(*label), &score.to_string()])?;
    }
    w.flush().map_err(|e| Error::io("<scores>", e))?;
    Ok(())
}

pub fn write_score_file(path: impl AsRef<Path>, file: &ScoreFile) -> Result<()> {
    write_scores(create(path.as_ref())?, file)
}

fn label_str(label: Label) -> &'static str {
    match label {
        Label::Positive => "1",
        Label::Negative => "0",
    }
}

pub fn parse_feature_file<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv_reader(reader);
    let header = rdr.headers()?.clone();
    if header.len() < 3 || &header[0] != "id" || &header[1] != "label" {
        return Err(Error::row(1, "header must be `id,label,f1,...,fd` with at least one feature"));
    }
    let d = header.len() - 2;
    let mut samples = Vec::new();
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        if record.len() != d + 2 {
            return Err(Error::row(line, format!("expected {d} features, found {}", record.len().saturating_sub(2))));
        }
        let id = record[0].to_string();
        if !seen.insert(id.clone()) {
            return Err(Error::row(line, format!("duplicate id {id:?}")));
        }
        let label = parse_label(&record[1], line)?;
        let features = (2..d + 2)
            .map(|k| parse_real(&record[k], &header[k], line))
            .collect::<Result<Vec<f64>>>()?;
        samples.push(Sample { id, label, features });
    }
    let labels: Vec<Label> = samples.iter().map(|s| s.label).collect();
    check_classes(&labels)?;
    Ok(Dataset::new(samples)?)
}

pub fn read_feature_file(path: impl AsRef<Path>) -> Result<Dataset> {
    parse_feature_file(open(path.as_ref())?)
}

pub fn write_features<W: Write>(writer: W, data: &Dataset) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["id".to_string(), "label".to_string()];
    header.extend((1..=data.dim()).map(|k| format!("f{k}")));
    w.write_record(&header)?;
    for s in data.samples() {
        let mut row = vec![s.id.clone(), label_str(s.label).to_string()];
        row.extend(s.features.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io("<features>", e))?;
    Ok(())
}

pub fn write_feature_file(path: impl AsRef<Path>, data: &Dataset) -> Result<()> {
    write_features(create(path.as_ref())?, data)
}

/// Serialized linear model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub dimension: usize,
    pub weights: Vec<f64>,
    /// `ap`, `ndcg` or `zero-one`.
    pub loss_kind: String,
    pub trained_epochs: usize,
    pub seed: u64,
    /// The last weight multiplies a constant feature of 1 appended to every
    /// sample.
    #[serde(default)]
    pub intercept: bool,
}

impl ModelDocument {
    pub fn model(&self) -> Result<LinearModel> {
        if self.weights.len() != self.dimension {
            return Err(Error::Model(format!(
                "dimension is {} but {} weights are stored",
                self.dimension,
                self.weights.len()
            )));
        }
        if self.intercept && self.dimension == 0 {
            return Err(Error::Model("an intercept model needs at least one weight".into()));
        }
        Ok(LinearModel::new(self.weights.clone())?)
    }

    /// Feature count the model expects in a data file.
    pub fn data_dimension(&self) -> usize {
        self.dimension - usize::from(self.intercept)
    }
}

pub fn write_model(path: impl AsRef<Path>, doc: &ModelDocument) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, doc)?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

pub fn read_model(path: impl AsRef<Path>) -> Result<ModelDocument> {
    let doc: ModelDocument = serde_json::from_reader(open(path.as_ref())?)?;
    doc.model()?;
    Ok(doc)
}

/// One timed run in a benchmark report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub algo: String,
    pub loss: String,
    pub p: usize,
    pub n: usize,
    pub repeat: usize,
    pub wall_ns: u64,
    pub comparisons: u64,
}

pub fn write_bench_rows<W: Write>(writer: W, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io("<report>", e))?;
    Ok(())
}

pub fn parse_bench_rows<R: Read>(reader: R) -> Result<Vec<BenchRow>> {
    let mut rdr = csv::Reader::from_reader(reader);
    Ok(rdr.deserialize().collect::<std::result::Result<Vec<BenchRow>, _>>()?)
}

pub fn write_bench_report(path: impl AsRef<Path>, rows: &[BenchRow]) -> Result<()> {
    write_bench_rows(create(path.as_ref())?, rows)
}

pub fn read_bench_report(path: impl AsRef<Path>) -> Result<Vec<BenchRow>> {
    parse_bench_rows(open(path.as_ref())?)
}
