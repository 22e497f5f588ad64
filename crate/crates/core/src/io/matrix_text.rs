//! Plain-text matrices: one row per line, whitespace-separated rationals.
//! Blank lines and `#` comments are ignored.

use crate::algebra::{parse_rational, RatMatrix};
use crate::error::{Error, Result};

pub fn parse_matrix(text: &str, expected: Option<(usize, usize)>) -> Result<RatMatrix> {
    let mut rows = Vec::new();
    let mut first_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        let mut col = 0;
        for token in line.split_whitespace() {
            // byte offset of this token, searched from the previous token end
            let at = line[col..].find(token).expect("token comes from line") + col;
            col = at + token.len();
            let value = parse_rational(token).map_err(|_| Error::Parse {
                line: idx + 1,
                column: at + 1,
                message: format!("malformed rational `{token}`"),
            })?;
            row.push(value);
        }
        if row.is_empty() {
            continue;
        }
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(Error::Parse {
                    line: idx + 1,
                    column: 1,
                    message: format!(
                        "ragged row: {} entries, line {} has {}",
                        row.len(),
                        first_line,
                        first
                    ),
                });
            }
        } else {
            first_line = idx + 1;
        }
        rows.push(row);
    }
    let m = RatMatrix::from_rows(rows)?;
    if let Some((r, c)) = expected {
        if (m.rows(), m.cols()) != (r, c) {
            return Err(Error::Shape(format!(
                "expected a {r}x{c} matrix, found {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(m)
}

/// Inverse of [`parse_matrix`].
pub fn format_matrix(m: &RatMatrix) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn basic() {
        assert_eq!(
            parse_matrix("1 2\n3 4", None).unwrap(),
            RatMatrix::from_i64(&[&[1, 2], &[3, 4]])
        );
        let row = parse_matrix("1 -3 1 1", Some((1, 4))).unwrap();
        assert_eq!(row.row(0), &[int(1), int(-3), int(1), int(1)]);
    }

    #[test]
    fn malformed_token_position() {
        let err = parse_matrix("1/2 x", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 5, .. }), "{err}");
    }

    #[test]
    fn ragged_and_shape_errors() {
        assert!(matches!(parse_matrix("1 2\n3", None), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            parse_matrix("1 2\n3 4", Some((2, 4))),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn round_trip() {
        let m = parse_matrix("# zero\n1 1 1 1\n\n1 -3 1 1/2\n", None).unwrap();
        assert_eq!(parse_matrix(&format_matrix(&m), None).unwrap(), m);
    }
}
