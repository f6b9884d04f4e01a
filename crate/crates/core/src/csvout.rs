//! Output emission: CSV with '#'-prefixed metadata lines, or JSON.
//! Floating-point cells always carry 17 significant digits so identical
//! runs produce byte-identical files.

use std::io::Write;

use crate::error::Result;

pub fn f64_cell(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn int_cell(x: impl std::fmt::Display) -> String {
    x.to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFormat {
    Csv,
    Json,
}

impl OutFormat {
    pub fn parse(s: &str) -> crate::error::Result<OutFormat> {
        match s {
            "csv" => Ok(OutFormat::Csv),
            "json" => Ok(OutFormat::Json),
            other => Err(crate::error::Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Streaming table writer: metadata first, then a header, then rows.
pub struct TableSink<'a> {
    out: &'a mut dyn Write,
    format: OutFormat,
    wrote_header: bool,
    wrote_row: bool,
}

impl<'a> TableSink<'a> {
    pub fn new(out: &'a mut dyn Write, format: OutFormat, config_json: &str) -> Result<Self> {
        let sink = TableSink {
            out,
            format,
            wrote_header: false,
            wrote_row: false,
        };
        match format {
            OutFormat::Csv => {
                writeln!(sink.out, "# artifact: furstenberg-lab {}", env!("CARGO_PKG_VERSION"))?;
                writeln!(sink.out, "# config: {config_json}")?;
            }
            OutFormat::Json => {
                write!(sink.out, "{{\"artifact\":\"furstenberg-lab {}\",", env!("CARGO_PKG_VERSION"))?;
                write!(sink.out, "\"config\":{config_json},")?;
            }
        }
        Ok(sink)
    }

    pub fn comment(&mut self, line: &str) -> Result<()> {
        if self.format == OutFormat::Csv {
            writeln!(self.out, "# {line}")?;
        }
        Ok(())
    }

    pub fn header(&mut self, cols: &[&str]) -> Result<()> {
        match self.format {
            OutFormat::Csv => writeln!(self.out, "{}", cols.join(","))?,
            OutFormat::Json => {
                let quoted: Vec<String> = cols.iter().map(|c| format!("\"{c}\"")).collect();
                write!(self.out, "\"columns\":[{}],\"rows\":[", quoted.join(","))?;
            }
        }
        self.wrote_header = true;
        Ok(())
    }

    pub fn row(&mut self, cells: &[String]) -> Result<()> {
        debug_assert!(self.wrote_header, "header before rows");
        match self.format {
            OutFormat::Csv => writeln!(self.out, "{}", cells.join(","))?,
            OutFormat::Json => {
                if self.wrote_row {
                    write!(self.out, ",")?;
                }
                let quoted: Vec<String> =
                    cells.iter().map(|c| serde_json::to_string(c).unwrap()).collect();
                write!(self.out, "[{}]", quoted.join(","))?;
            }
        }
        self.wrote_row = true;
        Ok(())
    }

    pub fn finish(self) -> Result<()> {
        if self.format == OutFormat::Json {
            if !self.wrote_header {
                write!(self.out, "\"columns\":[],\"rows\":[")?;
            }
            writeln!(self.out, "]}}")?;
        }
        self.out.flush()?;
        Ok(())
    }
}
