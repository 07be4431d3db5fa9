//! Feature vectors as CSV: `path,label` then one column per scalar.

use std::collections::HashMap;
use std::io::{Read, Write};

use sonoprint_core::features::{canonical, FeatureId};
use sonoprint_core::FeatureVector;

use crate::error::{AppError, AppResult};

pub struct Row {
    pub path: String,
    pub vector: FeatureVector,
}

fn csv_err(e: csv::Error) -> AppError {
    AppError::data(format!("feature table: {e}"))
}

/// Rows must all carry the same features.
pub fn write_features<W: Write>(out: W, rows: &[Row]) -> AppResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let names = rows.first().map(|r| r.vector.scalar_names()).unwrap_or_default();
    let mut header = vec!["path".to_string(), "label".to_string()];
    header.extend(names.iter().cloned());
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        if row.vector.scalar_names() != names {
            return Err(AppError::data(format!("{}: features differ from the first row", row.path)));
        }
        let mut record = vec![row.path.clone(), row.vector.label.clone().unwrap_or_default()];
        record.extend(row.vector.flatten().iter().map(|v| format!("{v:?}")));
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush().map_err(|e| AppError::data(format!("feature table: {e}")))
}

pub fn read_features<R: Read>(input: R) -> AppResult<Vec<Row>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.get(0) != Some("path") || header.get(1) != Some("label") {
        return Err(AppError::data("feature table must start with path,label columns"));
    }
    let names: HashMap<String, FeatureId> = FeatureId::ALL
        .iter()
        .flat_map(|&id| id.scalar_names().into_iter().map(move |n| (n, id)))
        .collect();
    let mut ids = Vec::new();
    for col in header.iter().skip(2) {
        let id = *names
            .get(col)
            .ok_or_else(|| AppError::data(format!("unknown feature column {col:?}")))?;
        if ids.last() != Some(&id) {
            ids.push(id);
        }
    }
    let ids = canonical(&ids);
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_err)?;
        let label = Some(record[1].to_string()).filter(|l| !l.is_empty());
        let mut values = record.iter().skip(2).map(|v| {
            v.parse::<f64>()
                .map_err(|_| AppError::data(format!("{v:?} is not a number")))
        });
        let mut vector = FeatureVector::new(label);
        for &id in &ids {
            let chunk = (&mut values).take(id.dimension()).collect::<AppResult<Vec<f64>>>()?;
            vector.insert(id, chunk)?;
        }
        rows.push(Row {
            path: record[0].to_string(),
            vector,
        });
    }
    Ok(rows)
}
