//! The `hgf` text format.
//!
//! ```text
//! hgf 1
//! n r m [c]
//! v_1 ... v_r [color]     (m lines)
//! ```
//!
//! Vertices on an edge line are strictly increasing and 1-based. When the
//! counts line carries `c`, every edge line ends with a color in `[1, c]`.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{ColoredHypergraph, Hypergraph};
use crate::vset::{VertexSet, MAX_VERTICES};

pub const MAGIC: &str = "hgf 1";

/// A parsed file: the hypergraph, plus colors aligned with its canonical
/// edge order when the file is colored. Colors are not required to be proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HgfFile {
    pub hypergraph: Hypergraph,
    pub coloring: Option<Coloring>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub num_colors: u32,
    pub colors: Vec<u32>,
}

impl HgfFile {
    pub fn plain(hypergraph: Hypergraph) -> Self {
        HgfFile {
            hypergraph,
            coloring: None,
        }
    }

    /// The colored view, validating that the coloring is proper.
    pub fn into_colored(self) -> Result<ColoredHypergraph> {
        let coloring = self.coloring.ok_or_else(|| Error::invalid("file carries no colors"))?;
        ColoredHypergraph::new(self.hypergraph, coloring.colors)
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| perr(line, format!("expected {what}, found `{tok}`")))
}

pub fn parse(text: &str) -> Result<HgfFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, magic) = lines.next().ok_or_else(|| perr(1, "missing `hgf 1` header"))?;
    if magic.split_whitespace().collect::<Vec<_>>() != ["hgf", "1"] {
        return Err(perr(ln, format!("bad magic `{magic}`, expected `{MAGIC}`")));
    }

    let (ln, counts) = lines.next().ok_or_else(|| perr(ln + 1, "missing counts line"))?;
    let toks: Vec<&str> = counts.split_whitespace().collect();
    if toks.len() != 3 && toks.len() != 4 {
        return Err(perr(ln, "counts line must be `n r m` or `n r m c`"));
    }
    let n = parse_usize(toks[0], ln, "n")?;
    let r = parse_usize(toks[1], ln, "r")?;
    let m = parse_usize(toks[2], ln, "m")?;
    let num_colors = match toks.get(3) {
        Some(t) => Some(parse_usize(t, ln, "c")? as u32),
        None => None,
    };
    if n > MAX_VERTICES {
        return Err(perr(ln, format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    if r > n {
        return Err(perr(ln, format!("r = {r} exceeds n = {n}")));
    }

    let width = r + usize::from(num_colors.is_some());
    let mut pairs: Vec<(VertexSet, u32, usize)> = Vec::with_capacity(m);
    for (ln, body) in lines {
        if pairs.len() == m {
            return Err(perr(ln, format!("more than m = {m} edge lines")));
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != width {
            return Err(perr(
                ln,
                format!("edge line has {} fields, expected {width}", toks.len()),
            ));
        }
        let mut set = VertexSet::EMPTY;
        let mut prev = 0usize;
        for tok in &toks[..r] {
            let v = parse_usize(tok, ln, "vertex")?;
            if v == 0 || v > n {
                return Err(perr(ln, format!("vertex {v} outside [1, {n}]")));
            }
            if v <= prev {
                return Err(perr(ln, "vertices must be strictly increasing"));
            }
            prev = v;
            set.insert(v);
        }
        let color = match num_colors {
            Some(c) => {
                let col = parse_usize(toks[r], ln, "color")? as u32;
                if col == 0 || col > c {
                    return Err(perr(ln, format!("color {col} outside [1, {c}]")));
                }
                col
            }
            None => 0,
        };
        pairs.push((set, color, ln));
    }
    if pairs.len() != m {
        return Err(perr(
            text.lines().count().max(1),
            format!("expected {m} edge lines, found {}", pairs.len()),
        ));
    }

    pairs.sort_unstable_by_key(|p| (p.0, p.2));
    for w in pairs.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(perr(w[1].2, format!("duplicate edge {}", w[1].0)));
        }
    }
    let edges: Vec<VertexSet> = pairs.iter().map(|p| p.0).collect();
    let hypergraph = Hypergraph::from_canonical(n, r, edges);
    let coloring = num_colors.map(|c| Coloring {
        num_colors: c,
        colors: pairs.iter().map(|p| p.1).collect(),
    });
    Ok(HgfFile { hypergraph, coloring })
}

fn write_edges(out: &mut String, h: &Hypergraph, colors: Option<&[u32]>) {
    for (i, e) in h.edges().iter().enumerate() {
        let mut first = true;
        for v in e.iter() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        if let Some(cols) = colors {
            let _ = write!(out, " {}", cols[i]);
        }
        out.push('\n');
    }
}

pub fn serialize(h: &Hypergraph) -> String {
    let mut out = format!("{MAGIC}\n{} {} {}\n", h.n(), h.r(), h.len());
    write_edges(&mut out, h, None);
    out
}

/// Colored form; `c` is the largest color present (at least 1).
pub fn serialize_colored(h: &Hypergraph, colors: &[u32]) -> Result<String> {
    if colors.len() != h.len() {
        return Err(Error::ColorLengthMismatch {
            found: colors.len(),
            expected: h.len(),
        });
    }
    if colors.contains(&0) {
        return Err(Error::invalid("colors must be positive"));
    }
    let c = colors.iter().copied().max().unwrap_or(1);
    let mut out = format!("{MAGIC}\n{} {} {} {c}\n", h.n(), h.r(), h.len());
    write_edges(&mut out, h, Some(colors));
    Ok(out)
}

pub fn serialize_file(f: &HgfFile) -> String {
    match &f.coloring {
        None => serialize(&f.hypergraph),
        Some(col) => {
            let mut out = format!(
                "{MAGIC}\n{} {} {} {}\n",
                f.hypergraph.n(),
                f.hypergraph.r(),
                f.hypergraph.len(),
                col.num_colors
            );
            write_edges(&mut out, &f.hypergraph, Some(&col.colors));
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano, one_star};

    #[test]
    fn round_trip_plain() {
        let h = one_star(6, 3, 1).unwrap();
        let text = serialize(&h);
        assert!(text.starts_with("hgf 1\n6 3 10\n1 2 3\n"));
        let back = parse(&text).unwrap();
        assert_eq!(back.hypergraph, h);
        assert_eq!(serialize_file(&back), text);
    }

    #[test]
    fn round_trip_colored() {
        let h = fano();
        let colors: Vec<u32> = (1..=7).collect();
        let text = serialize_colored(&h, &colors).unwrap();
        let back = parse(&text).unwrap();
        assert_eq!(back.coloring.as_ref().unwrap().colors, colors);
        assert_eq!(serialize_file(&back), text);
        assert!(back.into_colored().is_ok());
    }

    #[test]
    fn reorders_to_canonical_and_keeps_colors() {
        let back = parse("hgf 1\n5 2 2 2\n3 4 2\n1 2 1\n").unwrap();
        assert_eq!(back.hypergraph.edges()[0].to_vec(), vec![1, 2]);
        assert_eq!(back.coloring.unwrap().colors, vec![1, 2]);
    }

    #[test]
    fn empty_body() {
        let back = parse("hgf 1\n4 2 0\n").unwrap();
        assert!(back.hypergraph.is_empty());
    }

    fn line_of(text: &str) -> usize {
        match parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejections_carry_line_numbers() {
        assert_eq!(line_of("hgf 2\n4 2 0\n"), 1);
        assert_eq!(line_of("hgf 1\n4 2 1\n2 1\n"), 3);
        assert_eq!(line_of("hgf 1\n4 2 1\n1 2 3\n"), 3);
        assert_eq!(line_of("hgf 1\n4 2 1\n1 5\n"), 3);
        assert_eq!(line_of("hgf 1\n4 2 1 2\n1 2 3\n"), 3);
        assert_eq!(line_of("hgf 1\n4 2 2\n1 2\n\n1 2\n"), 5);
        assert_eq!(line_of("hgf 1\n4 2 1\n1 2\n3 4\n"), 4);
        assert!(parse("hgf 1\n4 2 2\n1 2\n").is_err());
        assert!(parse("").is_err());
    }
}
