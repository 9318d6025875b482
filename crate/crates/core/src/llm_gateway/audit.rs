use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::{BackendKind, CompletionBackend, CompletionRequest, CompletionResponse};
use crate::error::{Error, Result};

/// One line of the JSON-lines audit log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub model: String,
    pub prompt: String,
    pub response: Option<String>,
    pub error: Option<String>,
    pub backend: Option<BackendKind>,
    pub latency_ms: Option<f64>,
}

/// Wraps a backend and appends every exchange to a JSON-lines file.
pub struct AuditedBackend<B> {
    inner: B,
    sink: Mutex<BufWriter<File>>,
}

impl<B: CompletionBackend> AuditedBackend<B> {
    pub fn new(inner: B, path: &Path) -> Result<Self> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| Error::io(path, e))?;
        Ok(Self {
            inner,
            sink: Mutex::new(BufWriter::new(file)),
        })
    }

    fn append(&self, record: &AuditRecord) -> Result<()> {
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        // whole line under one lock so concurrent exchanges never interleave
        let mut sink = self.sink.lock().unwrap_or_else(|p| p.into_inner());
        sink.write_all(line.as_bytes())
            .and_then(|_| sink.flush())
            .map_err(|e| Error::io("audit log", e))
    }
}

impl<B: CompletionBackend> CompletionBackend for AuditedBackend<B> {
    fn complete(&self, request: &CompletionRequest) -> Result<CompletionResponse> {
        let result = self.inner.complete(request);
        let record = match &result {
            Ok(resp) => AuditRecord {
                model: request.model_name.clone(),
                prompt: request.prompt.clone(),
                response: Some(resp.text.clone()),
                error: None,
                backend: Some(resp.backend),
                latency_ms: Some(resp.latency.as_secs_f64() * 1e3),
            },
            Err(e) => AuditRecord {
                model: request.model_name.clone(),
                prompt: request.prompt.clone(),
                response: None,
                error: Some(e.to_string()),
                backend: None,
                latency_ms: None,
            },
        };
        self.append(&record)?;
        result
    }
}
