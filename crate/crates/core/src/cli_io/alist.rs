use std::fmt::Write as _;

use crate::construct::BinaryMatrix;
use crate::{Error, Result};

/// Parsed alist file. Index lists are 0-based here and 1-based on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlistDocument {
    pub cols: usize,
    pub rows: usize,
    pub max_col_weight: usize,
    pub max_row_weight: usize,
    pub col_weights: Vec<usize>,
    pub row_weights: Vec<usize>,
    pub col_lists: Vec<Vec<usize>>,
    pub row_lists: Vec<Vec<usize>>,
}

impl AlistDocument {
    pub fn from_matrix(h: &BinaryMatrix) -> Self {
        let col_lists: Vec<Vec<usize>> = (0..h.cols()).map(|c| h.col(c).to_vec()).collect();
        let row_lists: Vec<Vec<usize>> = (0..h.rows()).map(|r| h.row(r).to_vec()).collect();
        let col_weights: Vec<usize> = col_lists.iter().map(Vec::len).collect();
        let row_weights: Vec<usize> = row_lists.iter().map(Vec::len).collect();
        AlistDocument {
            cols: h.cols(),
            rows: h.rows(),
            max_col_weight: col_weights.iter().copied().max().unwrap_or(0),
            max_row_weight: row_weights.iter().copied().max().unwrap_or(0),
            col_weights,
            row_weights,
            col_lists,
            row_lists,
        }
    }

    /// `N M`, the two maximum weights, column weights, row weights, then
    /// 1-based row indices per column and column indices per row, each list
    /// padded with `0` to the maximum weight.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.cols, self.rows);
        let _ = writeln!(out, "{} {}", self.max_col_weight, self.max_row_weight);
        push_line(&mut out, self.col_weights.iter().copied());
        push_line(&mut out, self.row_weights.iter().copied());
        for list in &self.col_lists {
            let ones = list.iter().map(|r| r + 1);
            push_line(&mut out, ones.chain(std::iter::repeat(0)).take(self.max_col_weight));
        }
        for list in &self.row_lists {
            let ones = list.iter().map(|c| c + 1);
            push_line(&mut out, ones.chain(std::iter::repeat(0)).take(self.max_row_weight));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines {
            inner: text.lines().enumerate(),
        };
        let (_, dims) = lines.exact("dimensions", 2)?;
        let (cols, rows) = (dims[0], dims[1]);
        let (max_line, maxes) = lines.exact("maximum weights", 2)?;
        let (cw_line, col_weights) = lines.exact("column weights", cols)?;
        let (rw_line, row_weights) = lines.exact("row weights", rows)?;
        if col_weights.iter().copied().max().unwrap_or(0) != maxes[0]
            || row_weights.iter().copied().max().unwrap_or(0) != maxes[1]
        {
            return Err(Error::Parse {
                line: max_line,
                msg: "maximum weights disagree with the weight lists".into(),
            });
        }
        if let Some(&w) = col_weights.iter().find(|&&w| w > rows) {
            return Err(Error::Parse {
                line: cw_line,
                msg: format!("column weight {w} exceeds {rows} rows"),
            });
        }
        if let Some(&w) = row_weights.iter().find(|&&w| w > cols) {
            return Err(Error::Parse {
                line: rw_line,
                msg: format!("row weight {w} exceeds {cols} columns"),
            });
        }

        let mut col_lists = Vec::with_capacity(cols);
        for (c, &w) in col_weights.iter().enumerate() {
            let (line, v) = lines.next_numbers(&format!("column {}", c + 1))?;
            col_lists.push(index_list(line, &v, w, rows)?);
        }
        let mut row_lists = Vec::with_capacity(rows);
        for (r, &w) in row_weights.iter().enumerate() {
            let (line, v) = lines.next_numbers(&format!("row {}", r + 1))?;
            row_lists.push(index_list(line, &v, w, cols)?);
        }
        for (i, text) in lines.inner {
            if !text.trim().is_empty() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "trailing content".into(),
                });
            }
        }
        Ok(AlistDocument {
            cols,
            rows,
            max_col_weight: maxes[0],
            max_row_weight: maxes[1],
            col_weights,
            row_weights,
            col_lists,
            row_lists,
        })
    }

    /// Builds the matrix from the row lists and checks the column lists against it.
    pub fn to_matrix(&self) -> Result<BinaryMatrix> {
        let h = BinaryMatrix::from_row_supports(self.rows, self.cols, &self.row_lists)?;
        for (c, list) in self.col_lists.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if h.col(c) != sorted.as_slice() {
                return Err(Error::Consistency(format!(
                    "column {} lists rows {:?} but the row lists give {:?}",
                    c + 1,
                    sorted.iter().map(|r| r + 1).collect::<Vec<_>>(),
                    h.col(c).iter().map(|r| r + 1).collect::<Vec<_>>()
                )));
            }
        }
        Ok(h)
    }
}

pub fn write_alist(h: &BinaryMatrix) -> String {
    AlistDocument::from_matrix(h).to_text()
}

pub fn read_alist(text: &str) -> Result<BinaryMatrix> {
    AlistDocument::parse(text)?.to_matrix()
}

fn push_line(out: &mut String, values: impl Iterator<Item = usize>) {
    for (i, v) in values.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl Lines<'_> {
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        let Some((i, text)) = self.inner.next() else {
            return Err(Error::Parse {
                line: 0,
                msg: format!("unexpected end of input, expected {what}"),
            });
        };
        let line = i + 1;
        let values = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("{what}: '{t}' is not a non-negative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((line, values))
    }

    fn exact(&mut self, what: &str, count: usize) -> Result<(usize, Vec<usize>)> {
        let (line, v) = self.next_numbers(what)?;
        if v.len() != count {
            return Err(Error::Parse {
                line,
                msg: format!("{what}: expected {count} values, found {}", v.len()),
            });
        }
        Ok((line, v))
    }
}

/// Index list for one column or row: the nonzero entries, which must be
/// distinct and in range, with padding zeros only at the end.
fn index_list(line: usize, values: &[usize], weight: usize, bound: usize) -> Result<Vec<usize>> {
    let err = |msg: String| Error::Parse { line, msg };
    let (ones, pad) = values.split_at(weight.min(values.len()));
    if ones.len() != weight || ones.contains(&0) {
        return Err(err(format!("expected {weight} nonzero indices")));
    }
    if pad.iter().any(|&x| x != 0) {
        return Err(err("more indices than the declared weight".into()));
    }
    let idx: Vec<usize> = ones.iter().map(|&x| x - 1).collect();
    if let Some(&bad) = idx.iter().find(|&&x| x >= bound) {
        return Err(err(format!("index {} exceeds {bound}", bad + 1)));
    }
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(err("repeated index".into()));
    }
    Ok(idx)
}
