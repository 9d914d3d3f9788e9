use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::MultiGzDecoder;

use super::{IngestError, PaperRecord};

/// Why a single input line was skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDiagnostic {
    /// 1-based line number.
    pub line: usize,
    pub reason: String,
}

/// Outcome of one non-blank input line.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedLine {
    Record(PaperRecord),
    Skipped(LineDiagnostic),
}

/// Lazy line-by-line record reader.
///
/// A single line buffer is reused for the whole stream, so peak memory is
/// proportional to the longest line. Blank lines are ignored. An I/O error is
/// yielded once and ends the stream.
pub struct RecordReader<R> {
    inner: R,
    buf: String,
    line: usize,
    done: bool,
}

impl<R: BufRead> RecordReader<R> {
    pub fn new(inner: R) -> Self {
        Self {
            inner,
            buf: String::new(),
            line: 0,
            done: false,
        }
    }

    /// Consumes the stream, splitting records from diagnostics.
    pub fn collect_all(self) -> Result<(Vec<PaperRecord>, Vec<LineDiagnostic>), IngestError> {
        let mut records = Vec::new();
        let mut diagnostics = Vec::new();
        for item in self {
            match item? {
                ParsedLine::Record(r) => records.push(r),
                ParsedLine::Skipped(d) => diagnostics.push(d),
            }
        }
        Ok((records, diagnostics))
    }
}

impl<R: BufRead> Iterator for RecordReader<R> {
    type Item = Result<ParsedLine, IngestError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            self.buf.clear();
            match self.inner.read_line(&mut self.buf) {
                Ok(0) => self.done = true,
                Ok(_) => {
                    self.line += 1;
                    let text = self.buf.trim();
                    if text.is_empty() {
                        continue;
                    }
                    return Some(Ok(parse_line(self.line, text)));
                }
                Err(source) => {
                    self.done = true;
                    return Some(Err(IngestError::Io { path: None, source }));
                }
            }
        }
        None
    }
}

fn parse_line(line: usize, text: &str) -> ParsedLine {
    let record = serde_json::from_str::<PaperRecord>(text)
        .map_err(|e| e.to_string())
        .and_then(|r| r.validate().map(|()| r));
    match record {
        Ok(r) => ParsedLine::Record(r),
        Err(reason) => ParsedLine::Skipped(LineDiagnostic { line, reason }),
    }
}

/// Parses records from any reader, transparently decompressing gzip input
/// (detected by its magic bytes).
pub fn parse_records<R: Read + 'static>(
    reader: R,
) -> Result<RecordReader<Box<dyn BufRead>>, IngestError> {
    let mut buffered = BufReader::with_capacity(64 * 1024, reader);
    let is_gzip = {
        let head = buffered
            .fill_buf()
            .map_err(|source| IngestError::Io { path: None, source })?;
        head.len() >= 2 && head[0] == 0x1f && head[1] == 0x8b
    };
    let inner: Box<dyn BufRead> = if is_gzip {
        Box::new(BufReader::new(MultiGzDecoder::new(buffered)))
    } else {
        Box::new(buffered)
    };
    Ok(RecordReader::new(inner))
}

pub fn open_records(path: &Path) -> Result<RecordReader<Box<dyn BufRead>>, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: Some(path.to_path_buf()),
        source,
    })?;
    parse_records(file)
}
