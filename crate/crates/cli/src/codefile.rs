//! The line-oriented code-file format:
//!
//! ```text
//! # comment
//! q: 2
//! f: x^5+x^2
//! rows:
//! x | x   | 0
//! 0 | x^2 | 1
//! ```

use quotient_codes::{CodeMatrix, FieldCtx, ParseError, Poly, QuotRing};

#[derive(Debug)]
pub struct CodeFile {
    pub ring: QuotRing,
    pub matrix: CodeMatrix,
    pub warnings: Vec<String>,
}

/// A line with its comment removed, keeping original column positions.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| Line {
            number: i + 1,
            text: raw.split('#').next().unwrap_or(""),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect()
}

/// Splits `key: value`, returning the value and its 1-based column.
fn keyed<'a>(line: &Line<'a>, key: &str) -> Result<(&'a str, usize), ParseError> {
    let lead = line.text.len() - line.text.trim_start().len();
    let body = &line.text[lead..];
    let rest = body
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| ParseError::new(line.number, lead + 1, format!("expected `{key}:`")))?;
    let value_lead = rest.len() - rest.trim_start().len();
    let col = lead + key.len() + 1 + value_lead + 1;
    Ok((rest.trim(), col))
}

pub fn parse_prime(text: &str, line: usize, col: usize) -> Result<FieldCtx, ParseError> {
    let q: u64 = text
        .parse()
        .map_err(|_| ParseError::new(line, col, format!("`{text}` is not an integer")))?;
    FieldCtx::prime(q).map_err(|_| ParseError::new(line, col, format!("q = {q} is not a prime")))
}

pub fn parse_modulus(
    field: &FieldCtx,
    text: &str,
    line: usize,
    col: usize,
) -> Result<QuotRing, ParseError> {
    let f = Poly::parse_at(field, text, line, col)?;
    QuotRing::new(f).map_err(|_| ParseError::new(line, col, "f must be monic of degree at least 1"))
}

pub fn parse_code_file(text: &str) -> Result<CodeFile, ParseError> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let eof = |what: &str| {
        ParseError::new(
            text.lines().count() + 1,
            1,
            format!("missing `{what}:` line"),
        )
    };

    let line = it.next().ok_or_else(|| eof("q"))?;
    let (qtext, col) = keyed(line, "q")?;
    let field = parse_prime(qtext, line.number, col)?;

    let line = it.next().ok_or_else(|| eof("f"))?;
    let (ftext, col) = keyed(line, "f")?;
    let ring = parse_modulus(&field, ftext, line.number, col)?;

    let line = it.next().ok_or_else(|| eof("rows"))?;
    let (rest, col) = keyed(line, "rows")?;
    if !rest.is_empty() {
        return Err(ParseError::new(
            line.number,
            col,
            "rows start on the next line",
        ));
    }

    let mut rows: Vec<Vec<Poly>> = Vec::new();
    let mut warnings = Vec::new();
    let mut width = None;
    for line in it {
        let mut row = Vec::new();
        let mut offset = 0;
        for cell in line.text.split('|') {
            let lead = cell.len() - cell.trim_start().len();
            let col = offset + lead + 1;
            let entry = cell.trim();
            if entry.is_empty() {
                return Err(ParseError::new(line.number, col, "empty entry"));
            }
            let p = Poly::parse_at(&field, entry, line.number, col)?;
            if p.deg_i() >= ring.degree() as isize {
                warnings.push(format!(
                    "line {}, column {col}: entry `{entry}` reduced modulo f",
                    line.number
                ));
            }
            row.push(ring.reduce(&p));
            offset += cell.len() + 1;
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(ParseError::new(
                    line.number,
                    1,
                    format!("row has {} entries, expected {w}", row.len()),
                ))
            }
            _ => {}
        }
        rows.push(row);
    }
    let width =
        width.ok_or_else(|| ParseError::new(text.lines().count() + 1, 1, "no rows given"))?;
    let matrix = CodeMatrix::new(&ring, width, rows).expect("rows are reduced and rectangular");
    Ok(CodeFile {
        ring,
        matrix,
        warnings,
    })
}

/// Renders a complete code file for `matrix`.
pub fn render_code_file(matrix: &CodeMatrix) -> String {
    let r = matrix.ring();
    format!(
        "q: {}\nf: {}\nrows:\n{}",
        r.q(),
        r.modulus(),
        crate::render::text(matrix)
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_file() {
        let text = "# over F2\nq: 2\nf: x^5+x^2\nrows:\nx | x   | 0\n0 | x^2 | 1  # second\n\n0 | 0 | x^3+1\n";
        let cf = parse_code_file(text).unwrap();
        assert_eq!(cf.matrix.nrows(), 3);
        assert_eq!(
            cf.matrix.to_text(),
            "x | x   | 0\n0 | x^2 | 1\n0 | 0   | x^3+1\n"
        );
        assert!(cf.warnings.is_empty());
    }

    #[test]
    fn error_positions() {
        let err = parse_code_file("q: 2\nf: x^3+1\nrows:\nx | x^ | 1\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(err.column >= 5 && err.column <= 7, "{err}");
        let err = parse_code_file("q: 4\nf: x\nrows:\n1\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 4));
        let err = parse_code_file("q: 2\nf: x^2\nrows:\n1 | 0\n1\n").unwrap_err();
        assert_eq!(err.line, 5);
        let err = parse_code_file("q: 3\nf: 2x^2\nrows:\n1\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 4));
        let err = parse_code_file("q: 2\nrows:\n1\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn reduction_warning() {
        let cf = parse_code_file("q: 2\nf: x^2+1\nrows:\nx^3 | 1\n").unwrap();
        assert_eq!(cf.warnings.len(), 1);
        assert_eq!(cf.matrix.to_text(), "x | 1\n");
    }

    #[test]
    fn render_round_trip() {
        let cf = parse_code_file("q: 3\nf: x^3+2\nrows:\nx^2+x+1 | 2\n0 | x+2\n").unwrap();
        let again = parse_code_file(&render_code_file(&cf.matrix)).unwrap();
        assert_eq!(again.matrix, cf.matrix);
    }
}
