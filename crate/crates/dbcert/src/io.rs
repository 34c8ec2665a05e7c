use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use dbcert_core::proof::ProofCertificate;

pub fn write_certificate(path: &Path, cert: &ProofCertificate) -> anyhow::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(f);
    serde_json::to_writer(&mut w, cert)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

#[derive(Debug)]
pub enum ReadError {
    Io(std::io::Error),
    Format(serde_json::Error),
}

impl std::fmt::Display for ReadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReadError::Io(e) => write!(f, "{e}"),
            ReadError::Format(e) => write!(f, "malformed certificate: {e}"),
        }
    }
}

pub fn read_certificate(path: &Path) -> Result<ProofCertificate, ReadError> {
    let f = File::open(path).map_err(ReadError::Io)?;
    serde_json::from_reader(BufReader::new(f)).map_err(ReadError::Format)
}
