use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};

/// Bumped whenever a column is added, removed or reinterpreted.
pub const SCHEMA_VERSION: u32 = 1;

/// CSV sink with a leading `# symsq <command> schema v<N>` comment line and
/// optional trailing comment lines.
pub struct CsvOut {
    inner: csv::Writer<Box<dyn Write>>,
}

impl CsvOut {
    pub fn open(path: Option<&Path>, command: &str, header: &[&str]) -> Result<Self> {
        let mut sink: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        writeln!(sink, "# symsq {command} schema v{SCHEMA_VERSION}")?;
        let mut inner = csv::Writer::from_writer(sink);
        inner.write_record(header)?;
        Ok(Self { inner })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.inner.write_record(fields)?;
        Ok(())
    }

    /// Appends `# key=value` lines after the table and flushes.
    pub fn finish(self, notes: &[(&str, String)]) -> Result<()> {
        let mut sink = self.inner.into_inner().map_err(|e| anyhow::anyhow!("flushing csv: {}", e.error()))?;
        for (k, v) in notes {
            writeln!(sink, "# {k}={v}")?;
        }
        sink.flush()?;
        Ok(())
    }
}

/// Shortest round-trip formatting.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
