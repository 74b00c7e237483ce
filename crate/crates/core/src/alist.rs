//! The alist sparse parity-check format.
//!
//! ```text
//! n m                 columns, rows
//! dc dr               largest column and row degree
//! d_1 .. d_n          column degrees
//! e_1 .. e_m          row degrees
//! n lines             1-based rows of each column, zero-padded to dc
//! m lines             1-based columns of each row, zero-padded to dr
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// Next non-blank line as numbers, with its 1-based line number.
    fn next(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        self.take(what, false)
    }

    /// With `raw`, a blank line is returned as an empty list instead of
    /// skipped; lists of a zero-degree-only matrix are blank.
    fn take(&mut self, what: &str, raw: bool) -> Result<(usize, Vec<usize>)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            if line.trim().is_empty() && !raw {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("{what}: '{t}' is not a non-negative integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((i + 1, nums));
        }
        Err(Error::Parse {
            line: self.last + 1,
            message: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn fail<T>(line: usize, message: String) -> Result<T> {
    Err(Error::Parse { line, message })
}

fn expect_len(line: usize, what: &str, nums: &[usize], len: usize) -> Result<()> {
    if nums.len() != len {
        return fail(line, format!("{what}: expected {len} values, found {}", nums.len()));
    }
    Ok(())
}

/// Reads one neighbour list: `degree` indices in `1..=bound`, then zeros.
fn neighbours(
    line: usize,
    what: &str,
    nums: &[usize],
    degree: usize,
    max_degree: usize,
    bound: usize,
) -> Result<Vec<usize>> {
    if nums.len() != degree && nums.len() != max_degree {
        return fail(
            line,
            format!("{what}: expected {degree} entries (or {max_degree} with padding), found {}", nums.len()),
        );
    }
    let (list, pad) = nums.split_at(degree.min(nums.len()));
    if pad.iter().any(|&x| x != 0) {
        return fail(line, format!("{what}: more nonzero entries than its degree {degree}"));
    }
    let mut out = Vec::with_capacity(degree);
    for &x in list {
        if x == 0 || x > bound {
            return fail(line, format!("{what}: index {x} outside 1..={bound}"));
        }
        if out.contains(&(x - 1)) {
            return fail(line, format!("{what}: index {x} repeated"));
        }
        out.push(x - 1);
    }
    Ok(out)
}

pub fn parse_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };
    let (l, dims) = lines.next("header 'n m'")?;
    expect_len(l, "header 'n m'", &dims, 2)?;
    let (n, m) = (dims[0], dims[1]);
    let (l, maxes) = lines.next("maximum degrees")?;
    expect_len(l, "maximum degrees", &maxes, 2)?;
    let (max_col, max_row) = (maxes[0], maxes[1]);

    let (l, col_deg) = lines.next("column degrees")?;
    expect_len(l, "column degrees", &col_deg, n)?;
    if let Some(&d) = col_deg.iter().find(|&&d| d > max_col) {
        return fail(l, format!("column degree {d} exceeds the stated maximum {max_col}"));
    }
    let (l, row_deg) = lines.next("row degrees")?;
    expect_len(l, "row degrees", &row_deg, m)?;
    if let Some(&d) = row_deg.iter().find(|&&d| d > max_row) {
        return fail(l, format!("row degree {d} exceeds the stated maximum {max_row}"));
    }
    if col_deg.iter().sum::<usize>() != row_deg.iter().sum::<usize>() {
        return fail(l, "column and row degrees have different totals".into());
    }

    let mut h = BitMatrix::zeros(m, n);
    for (j, &d) in col_deg.iter().enumerate() {
        let what = format!("column {}", j + 1);
        let (l, nums) = lines.take(&what, max_col == 0)?;
        for r in neighbours(l, &what, &nums, d, max_col, m)? {
            h.set(r, j, true);
        }
    }
    for (i, &d) in row_deg.iter().enumerate() {
        let what = format!("row {}", i + 1);
        let (l, nums) = lines.take(&what, max_row == 0)?;
        let mut cols = neighbours(l, &what, &nums, d, max_row, n)?;
        cols.sort_unstable();
        let expected: Vec<usize> = (0..n).filter(|&j| h.get(i, j)).collect();
        if cols != expected {
            return fail(l, format!("{what} disagrees with the column lists"));
        }
    }
    Ok(h)
}

/// Writes the alist text for `h`, zero-padding every list to the maximum
/// degree.
pub fn write_alist(h: &BitMatrix) -> String {
    let (m, n) = (h.num_rows(), h.num_cols());
    let cols: Vec<Vec<usize>> = (0..n).map(|j| (0..m).filter(|&i| h.get(i, j)).collect()).collect();
    let rows: Vec<Vec<usize>> = (0..m).map(|i| h.row(i).support()).collect();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let join = |xs: &mut dyn Iterator<Item = usize>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");

    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&mut cols.iter().map(Vec::len)));
    let _ = writeln!(out, "{}", join(&mut rows.iter().map(Vec::len)));
    for (lists, width) in [(&cols, max_col), (&rows, max_row)] {
        for list in lists {
            let padded = list.iter().map(|x| x + 1).chain(std::iter::repeat(0)).take(width);
            let _ = writeln!(out, "{}", join(&mut padded.into_iter()));
        }
    }
    out
}
