//! Minimal CSV output: comma-separated, LF endings, `#` comment lines.

use std::io::{self, Write};

/// Shortest representation that parses back to the same f64. Non-finite
/// values have no decimal form and become empty cells.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        String::new()
    }
}

pub fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

pub struct CsvWriter<W: Write> {
    inner: W,
    columns: usize,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut inner: W, comment: Option<&str>, header: &[&str]) -> io::Result<Self> {
        if let Some(c) = comment {
            writeln!(inner, "# {c}")?;
        }
        writeln!(inner, "{}", header.join(","))?;
        Ok(CsvWriter {
            inner,
            columns: header.len(),
        })
    }

    pub fn row(&mut self, cells: &[String]) -> io::Result<()> {
        debug_assert_eq!(cells.len(), self.columns);
        writeln!(self.inner, "{}", cells.join(","))
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.inner.flush()?;
        Ok(self.inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.0, 1.0, -2.5e-5, 1.5828016471, 6.6356e300, f64::MIN_POSITIVE] {
            assert_eq!(number(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(number(f64::INFINITY), "");
        assert_eq!(number(f64::NAN), "");
        assert_eq!(optional(None), "");
    }

    #[test]
    fn writes_comment_header_rows() {
        let mut w = CsvWriter::new(Vec::new(), Some("a=1"), &["x", "y"]).unwrap();
        w.row(&[number(1.0), String::new()]).unwrap();
        let text = String::from_utf8(w.finish().unwrap()).unwrap();
        assert_eq!(text, "# a=1\nx,y\n1.0,\n");
    }
}
