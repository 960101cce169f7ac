//! Line-oriented interchange format for gyrogroup tables.
//!
//! ```text
//! gyrotable 1
//! order 8
//! name K1
//! cayley
//! 0 1 2 3 4 5 6 7
//! …                  (n rows of n integers)
//! perms              (optional)
//! A: 0 1 2 3 5 4 7 6
//! I: 0 1 2 3 4 5 6 7
//! gyr                (optional)
//! I I I I I I I I
//! …                  (n rows of n permutation names)
//! ```
//!
//! Lines starting with `#` are comments; blank lines and trailing
//! whitespace are tolerated; anything else is rejected with its line and
//! column. Rendering is canonical: one space between cells, rows in element
//! order, permutations sorted by name, no trailing whitespace.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gyrogroup::{DeclaredGyr, FiniteGyrogroup};
use crate::perm::Permutation;

/// The parsed form of a table file, before semantic validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFile {
    pub order: usize,
    pub name: Option<String>,
    pub cayley: Vec<Vec<usize>>,
    /// named permutations from the `perms` block, in file order
    pub perms: Vec<(String, Vec<usize>)>,
    /// permutation names from the `gyr` block
    pub gyr: Option<Vec<Vec<String>>>,
}

fn parse_err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// (1-based column, token) pairs of one line.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate().peekable(),
        }
    }

    fn skip_noise(&mut self) {
        while let Some((_, line)) = self.inner.peek() {
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                self.inner.next();
            } else {
                break;
            }
        }
    }

    /// Next meaningful line as (1-based line number, text).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        self.skip_noise();
        self.inner.next().map(|(i, l)| (i + 1, l))
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        self.skip_noise();
        self.inner.peek().map(|&(i, l)| (i + 1, l))
    }
}

fn parse_number_row(lineno: usize, line: &str, n: usize, what: &str) -> Result<Vec<usize>> {
    let toks = tokens(line);
    if toks.len() != n {
        return Err(parse_err(
            lineno,
            1,
            format!("{what} row has {} entries, expected {n}", toks.len()),
        ));
    }
    let mut row = Vec::with_capacity(n);
    for (col, tok) in toks {
        let v: usize = tok
            .parse()
            .map_err(|_| parse_err(lineno, col, format!("non-numeric cell {tok:?}")))?;
        if v >= n {
            return Err(parse_err(
                lineno,
                col,
                format!("entry {v} out of range for order {n}"),
            ));
        }
        row.push(v);
    }
    Ok(row)
}

/// Strict parse of the table grammar.
pub fn parse(text: &str) -> Result<TableFile> {
    let mut lines = Lines::new(text);

    let (lineno, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty file"))?;
    let toks = tokens(header);
    match toks.as_slice() {
        [(_, "gyrotable"), (_, "1")] => {}
        [(_, "gyrotable"), (col, v)] => {
            return Err(parse_err(
                lineno,
                *col,
                format!("unsupported format version {v:?}"),
            ))
        }
        _ => return Err(parse_err(lineno, 1, "expected header \"gyrotable 1\"")),
    }

    let (lineno, order_line) = lines
        .next()
        .ok_or_else(|| parse_err(lineno + 1, 1, "expected \"order <n>\""))?;
    let toks = tokens(order_line);
    let order = match toks.as_slice() {
        [(_, "order"), (col, v)] => {
            let n: usize = v
                .parse()
                .map_err(|_| parse_err(lineno, *col, format!("non-numeric order {v:?}")))?;
            if n == 0 {
                return Err(parse_err(lineno, *col, "order must be at least 1"));
            }
            n
        }
        _ => return Err(parse_err(lineno, 1, "expected \"order <n>\"")),
    };

    let mut name = None;
    if let Some((lineno, line)) = lines.peek() {
        let toks = tokens(line);
        if toks.first().map(|&(_, t)| t) == Some("name") {
            let label = line.trim_start().strip_prefix("name").unwrap_or("").trim();
            if label.is_empty() {
                return Err(parse_err(lineno, 1, "name line has no label"));
            }
            name = Some(label.to_string());
            lines.next();
        }
    }

    let (lineno, cayley_line) = lines
        .next()
        .ok_or_else(|| parse_err(lineno + 1, 1, "expected \"cayley\""))?;
    if tokens(cayley_line)
        .iter()
        .map(|&(_, t)| t)
        .collect::<Vec<_>>()
        != ["cayley"]
    {
        return Err(parse_err(lineno, 1, "expected \"cayley\""));
    }

    let mut cayley = Vec::with_capacity(order);
    for _ in 0..order {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| parse_err(lineno + 1, 1, format!("expected {order} cayley rows")))?;
        cayley.push(parse_number_row(lineno, line, order, "cayley")?);
    }

    let mut perms: Vec<(String, Vec<usize>)> = Vec::new();
    let mut gyr = None;

    if let Some((_, line)) = lines.peek() {
        if tokens(line).iter().map(|&(_, t)| t).collect::<Vec<_>>() == ["perms"] {
            lines.next();
            while let Some((lineno, line)) = lines.peek() {
                if tokens(line).iter().map(|&(_, t)| t).collect::<Vec<_>>() == ["gyr"] {
                    break;
                }
                lines.next();
                let Some(colon) = line.find(':') else {
                    return Err(parse_err(lineno, 1, "expected \"<name>: i0 i1 …\""));
                };
                let pname = line[..colon].trim();
                if pname.is_empty() || pname.contains(char::is_whitespace) {
                    return Err(parse_err(
                        lineno,
                        1,
                        format!("invalid permutation name {pname:?}"),
                    ));
                }
                if perms.iter().any(|(existing, _)| existing == pname) {
                    return Err(parse_err(
                        lineno,
                        1,
                        format!("duplicate permutation name {pname:?}"),
                    ));
                }
                let images = parse_number_row(lineno, &line[colon + 1..], order, "permutation")?;
                // catch non-bijections here, with a location
                Permutation::from_images(images.clone())
                    .map_err(|e| parse_err(lineno, colon + 2, e.to_string()))?;
                perms.push((pname.to_string(), images));
            }
        }
    }

    if let Some((_, line)) = lines.peek() {
        if tokens(line).iter().map(|&(_, t)| t).collect::<Vec<_>>() == ["gyr"] {
            lines.next();
            let mut grid = Vec::with_capacity(order);
            for _ in 0..order {
                let (lineno, line) = lines.next().ok_or_else(|| {
                    parse_err(lineno + 1, 1, format!("expected {order} gyr rows"))
                })?;
                let toks = tokens(line);
                if toks.len() != order {
                    return Err(parse_err(
                        lineno,
                        1,
                        format!("gyr row has {} entries, expected {order}", toks.len()),
                    ));
                }
                let mut row = Vec::with_capacity(order);
                for (col, tok) in toks {
                    if !perms.iter().any(|(pname, _)| pname == tok) {
                        return Err(parse_err(
                            lineno,
                            col,
                            format!("undeclared perm name {tok:?}"),
                        ));
                    }
                    row.push(tok.to_string());
                }
                grid.push(row);
            }
            gyr = Some(grid);
        }
    }

    if let Some((lineno, line)) = lines.next() {
        return Err(parse_err(
            lineno,
            1,
            format!("unexpected content {:?}", line.trim()),
        ));
    }

    Ok(TableFile {
        order,
        name,
        cayley,
        perms,
        gyr,
    })
}

impl TableFile {
    /// Semantic validation: Latin square with identity row, bijective
    /// permutations, resolvable gyration names.
    pub fn to_gyrogroup(&self) -> Result<FiniteGyrogroup> {
        let mut g = FiniteGyrogroup::from_rows(self.cayley.clone())?;
        if let Some(name) = &self.name {
            g = g.with_name(name.clone());
        }
        if let Some(gyr) = &self.gyr {
            let perms: Vec<(String, Permutation)> = self
                .perms
                .iter()
                .map(|(n, images)| Ok((n.clone(), Permutation::from_images(images.clone())?)))
                .collect::<Result<_>>()?;
            let mut grid = Vec::with_capacity(self.order * self.order);
            for row in gyr {
                for pname in row {
                    let ix = perms
                        .iter()
                        .position(|(n, _)| n == pname)
                        .ok_or_else(|| Error::Internal(format!("unresolved perm {pname:?}")))?;
                    grid.push(ix as u32);
                }
            }
            g = g.with_declared_gyr(DeclaredGyr::new(self.order, perms, grid)?)?;
        }
        Ok(g)
    }

    pub fn from_gyrogroup(g: &FiniteGyrogroup) -> TableFile {
        let n = g.order();
        let cayley = (0..n)
            .map(|a| (0..n).map(|b| g.op(a, b)).collect())
            .collect();
        let (perms, gyr) = match g.declared_gyr() {
            None => (Vec::new(), None),
            Some(declared) => {
                let perms = declared
                    .perms()
                    .iter()
                    .map(|(name, p)| (name.clone(), p.images().collect()))
                    .collect();
                let gyr = (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| declared.entry_name(n, a, b).to_string())
                            .collect()
                    })
                    .collect();
                (perms, Some(gyr))
            }
        };
        TableFile {
            order: n,
            name: g.name().map(String::from),
            cayley,
            perms,
            gyr,
        }
    }
}

/// Parses a file straight into a validated gyrogroup.
pub fn parse_gyrogroup(text: &str) -> Result<FiniteGyrogroup> {
    parse(text)?.to_gyrogroup()
}

/// Canonical rendering; a pure function of the table contents.
pub fn render(g: &FiniteGyrogroup) -> String {
    let file = TableFile::from_gyrogroup(g);
    let mut out = String::new();
    out.push_str("gyrotable 1\n");
    let _ = writeln!(out, "order {}", file.order);
    if let Some(name) = &file.name {
        let _ = writeln!(out, "name {name}");
    }
    out.push_str("cayley\n");
    for row in &file.cayley {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    if let Some(gyr) = &file.gyr {
        out.push_str("perms\n");
        for (name, images) in &file.perms {
            let cells: Vec<String> = images.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{name}: {}", cells.join(" "));
        }
        out.push_str("gyr\n");
        for row in gyr {
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

/// Splits a multi-table stream on `gyrotable` headers and parses each part.
pub fn parse_stream(text: &str) -> Result<Vec<TableFile>> {
    let mut segments: Vec<String> = Vec::new();
    for line in text.lines() {
        let is_header = tokens(line).first().map(|&(_, t)| t) == Some("gyrotable");
        if is_header || segments.is_empty() {
            segments.push(String::new());
        }
        let segment = segments.last_mut().expect("pushed above");
        segment.push_str(line);
        segment.push('\n');
    }
    segments
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse(s))
        .collect()
}
