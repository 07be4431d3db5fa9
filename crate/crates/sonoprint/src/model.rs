//! Trained models as versioned JSON documents.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sonoprint_core::classify::Model;

use crate::error::{AppError, AppResult};

pub const FORMAT: &str = "sonoprint-model";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub format: String,
    pub version: u32,
    pub model: Model,
}

impl ModelDocument {
    pub fn new(model: Model) -> Self {
        Self {
            format: FORMAT.into(),
            version: VERSION,
            model,
        }
    }
}

pub fn save_model(model: &Model, path: impl AsRef<Path>) -> AppResult<()> {
    let text = serde_json::to_string_pretty(&ModelDocument::new(model.clone()))
        .map_err(|e| AppError::data(format!("cannot serialize model: {e}")))?;
    fs::write(path.as_ref(), text).map_err(|e| AppError::io(path.as_ref(), e))
}

/// Unreadable files are IO errors; readable ones that are not a model
/// document of a known version are data errors.
pub fn load_model(path: impl AsRef<Path>) -> AppResult<Model> {
    let text = fs::read_to_string(path.as_ref()).map_err(|e| AppError::io(path.as_ref(), e))?;
    let doc: ModelDocument = serde_json::from_str(&text)
        .map_err(|e| AppError::data(format!("{}: not a model document: {e}", path.as_ref().display())))?;
    if doc.format != FORMAT || doc.version != VERSION {
        return Err(AppError::data(format!(
            "{}: {} version {} is not supported",
            path.as_ref().display(),
            doc.format,
            doc.version
        )));
    }
    Ok(doc.model)
}
