//! Line-oriented poset description language.
//!
//! ```text
//! # comment
//! elem <id> rank <r>
//! cover <lower-id> <upper-id> label <affine-expr>
//! ```
//!
//! `affine-expr := term ('+' term)*`, `term := rational | rational '*' var | var`,
//! `var := 'x[' int ',' int ']'` where the second index may be negative.

use std::collections::HashMap;
use std::fmt::Write;

use crate::algebra::{parse_rational, AffineForm, VarId};
use crate::error::{Error, Result};
use crate::poset::GradedLabeledPoset;

/// A parsed poset plus the line each element and cover came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetDoc {
    pub poset: GradedLabeledPoset,
    pub element_lines: HashMap<String, usize>,
    pub cover_lines: Vec<usize>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_poset(text: &str) -> Result<PosetDoc> {
    let mut poset = GradedLabeledPoset::new();
    let mut element_lines = HashMap::new();
    let mut cover_lines = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(kw_col, keyword)) = toks.first() else {
            continue;
        };
        let expect = |pos: usize, word: &str| -> Result<()> {
            match toks.get(pos) {
                Some(&(_, t)) if t == word => Ok(()),
                Some(&(col, t)) => Err(parse_err(line_no, col, format!("expected `{word}`, found `{t}`"))),
                None => Err(parse_err(line_no, line.len() + 1, format!("expected `{word}`"))),
            }
        };
        let arg = |pos: usize, what: &str| -> Result<(usize, &str)> {
            toks.get(pos)
                .copied()
                .ok_or_else(|| parse_err(line_no, line.len() + 1, format!("missing {what}")))
        };
        match keyword {
            "elem" => {
                let (_, id) = arg(1, "element id")?;
                expect(2, "rank")?;
                let (rank_col, rank_text) = arg(3, "rank value")?;
                let rank: usize = rank_text.parse().map_err(|_| {
                    parse_err(line_no, rank_col, format!("rank must be a non-negative integer, found `{rank_text}`"))
                })?;
                if let Some(&(col, extra)) = toks.get(4) {
                    return Err(parse_err(line_no, col, format!("unexpected `{extra}`")));
                }
                if let Some(first) = element_lines.get(id) {
                    return Err(parse_err(
                        line_no,
                        toks[1].0,
                        format!("duplicate element id `{id}` (first declared on line {first})"),
                    ));
                }
                poset.add_element(id, rank)?;
                element_lines.insert(id.to_string(), line_no);
            }
            "cover" => {
                let (lo_col, lower) = arg(1, "lower element id")?;
                let (hi_col, upper) = arg(2, "upper element id")?;
                expect(3, "label")?;
                let (expr_col, _) = arg(4, "label expression")?;
                for (col, id) in [(lo_col, lower), (hi_col, upper)] {
                    if poset.index_of(id).is_none() {
                        return Err(parse_err(line_no, col, format!("unknown element id `{id}`")));
                    }
                }
                let label = parse_affine_at(&line[expr_col - 1..], line_no, expr_col)?;
                poset.add_cover(lower, upper, label)?;
                cover_lines.push(line_no);
            }
            other => {
                return Err(parse_err(
                    line_no,
                    kw_col,
                    format!("expected `elem` or `cover`, found `{other}`"),
                ))
            }
        }
    }
    Ok(PosetDoc {
        poset,
        element_lines,
        cover_lines,
    })
}

/// Parses a standalone affine expression.
pub fn parse_affine(text: &str) -> Result<AffineForm> {
    parse_affine_at(text, 1, 1)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Cursor<'a> {
    fn column(&self) -> usize {
        self.col0 + self.pos
    }

    fn err(&self, message: impl Into<String>) -> Error {
        parse_err(self.line, self.column(), message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, ch: char) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{ch}`")))
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn integer(&mut self) -> Result<i64> {
        let col = self.column();
        let digits = self.take_while(|c| c == '-' || c.is_ascii_digit());
        digits
            .parse()
            .map_err(|_| parse_err(self.line, col, format!("expected an integer, found `{digits}`")))
    }

    fn var(&mut self) -> Result<VarId> {
        let col = self.column();
        self.eat('x')?;
        self.eat('[')?;
        let row = self.integer()?;
        self.eat(',')?;
        let c = self.integer()?;
        self.eat(']')?;
        if row < 1 || c == 0 || row > u32::MAX as i64 || c.unsigned_abs() > i32::MAX as u64 {
            return Err(parse_err(
                self.line,
                col,
                format!("invalid variable x[{row},{c}]: need row >= 1 and column != 0"),
            ));
        }
        Ok(VarId::new(row as u32, c as i32))
    }
}

fn parse_affine_at(text: &str, line: usize, col0: usize) -> Result<AffineForm> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line,
        col0,
    };
    let mut form = AffineForm::zero();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('x') => form.add_term(cur.var()?, crate::algebra::rational::int(1)),
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let col = cur.column();
                let token = cur.take_while(|c| c == '-' || c == '/' || c.is_ascii_digit());
                let value = parse_rational(token)
                    .map_err(|_| parse_err(line, col, format!("malformed rational `{token}`")))?;
                cur.skip_ws();
                if cur.peek() == Some('*') {
                    cur.pos += 1;
                    cur.skip_ws();
                    let v = cur.var()?;
                    form.add_term(v, value);
                } else {
                    form.add_constant(&value);
                }
            }
            Some(c) => return Err(cur.err(format!("unexpected `{c}` in affine expression"))),
            None => return Err(cur.err("expected a term")),
        }
        cur.skip_ws();
        match cur.peek() {
            None => return Ok(form),
            Some('+') => cur.pos += 1,
            Some(c) => return Err(cur.err(format!("expected `+` or end of expression, found `{c}`"))),
        }
    }
}

/// Writes the poset in the DSL; [`parse_poset`] reads it back unchanged.
pub fn serialize_poset(poset: &GradedLabeledPoset) -> String {
    let mut out = String::new();
    for e in poset.elements() {
        writeln!(out, "elem {} rank {}", e.id, e.rank).unwrap();
    }
    for c in poset.covers() {
        let (lo, hi) = (&poset.elements()[c.lower].id, &poset.elements()[c.upper].id);
        writeln!(out, "cover {lo} {hi} label {}", c.label).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};
    use crate::poset::{boolean_lattice, cube_face_lattice};

    #[test]
    fn two_element_chain() {
        let doc = parse_poset("elem a rank 0\nelem b rank 1\ncover a b label x[1,1]").unwrap();
        assert_eq!(doc.poset.len(), 2);
        assert_eq!(doc.poset.covers()[0].label, AffineForm::var(VarId::new(1, 1)));
        assert_eq!(doc.cover_lines, [3]);
    }

    #[test]
    fn affine_label() {
        let form = parse_affine("2 + 3/2*x[1,-2]").unwrap();
        assert_eq!(*form.constant_term(), int(2));
        assert_eq!(form.coefficient(&VarId::new(1, -2)), frac(3, 2));
        assert_eq!(parse_affine("x[2,1] + -1 * x[2,1] + 0").unwrap(), AffineForm::zero());
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# chain\n\nelem a rank 0   # bottom\nelem b rank 1\ncover a b label 7\n";
        assert_eq!(parse_poset(text).unwrap().poset.covers().len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_poset("elem a rank 0\nelem a rank 1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 6, .. }), "{err}");

        let err = parse_poset("elem a rank 0\ncover a z label 1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 9, .. }), "{err}");

        let err = parse_poset("elem a rank 0\nelem b rank 1\ncover a b label 2 * y").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 21, .. }), "{err}");

        let err = parse_poset("elem a rank 0\nelem b rank 1\ncover a b label x[1,1] x[1,2]").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 24, .. }), "{err}");

        let err = parse_poset("node a").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));

        assert!(parse_poset("elem a rank -1").is_err());
        assert!(parse_affine("x[0,1]").is_err());
        assert!(parse_affine("x[1,0]").is_err());
        assert!(parse_affine("1/0").is_err());
        assert!(parse_affine("").is_err());
    }

    #[test]
    fn lattices_round_trip() {
        for poset in [boolean_lattice(2).unwrap(), cube_face_lattice(2).unwrap()] {
            let text = serialize_poset(&poset);
            assert_eq!(parse_poset(&text).unwrap().poset, poset);
        }
    }
}
