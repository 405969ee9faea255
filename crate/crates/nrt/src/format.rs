//! Text formats for point sets and codes.
//!
//! A point-set file is
//!
//! ```text
//! # comments anywhere
//! 2 2 1 1 1          <- field line "p e c_0 .. c_e", only when e > 1
//! 4 2 1 4            <- "q n s N"
//! 0 0                <- N lines of n digit strings, most significant digit first
//! 1 1
//! ```
//!
//! Digits are single characters `0-9a-z` when `q <= 36` and dot-separated labels
//! otherwise. A code file has the header `q n s k` followed by `k` basis rows of `ns`
//! labels each, laid out row-major over the `n × s` matrix with `ξ_1` first in each row.

use std::fmt::Write as _;
use std::sync::Arc;

use nrt_core::gf::{is_prime, Elem, Field};
use nrt_core::{CodeWord, Distribution, LinearCode, Space};

use crate::error::{CliError, Result};

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// `q = p^e` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, e))
}

/// A parsed file together with its comment lines.
#[derive(Clone, Debug)]
pub struct Parsed<T> {
    pub value: T,
    pub comments: Vec<String>,
}

struct Lines<'a> {
    path: &'a str,
    items: Vec<(usize, &'a str)>,
    pos: usize,
    comments: Vec<String>,
}

impl<'a> Lines<'a> {
    fn new(path: &'a str, text: &'a str) -> Self {
        let mut comments = Vec::new();
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let t = l.trim();
                if let Some(c) = t.strip_prefix('#') {
                    comments.push(c.trim().to_string());
                    None
                } else if t.is_empty() {
                    None
                } else {
                    Some((i + 1, t))
                }
            })
            .collect();
        Lines { path, items, pos: 0, comments }
    }

    fn err(&self, line: usize, msg: impl Into<String>) -> CliError {
        CliError::Parse { path: self.path.to_string(), line, msg: msg.into() }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.items.last().map_or(1, |l| l.0);
        let item = self.items.get(self.pos).copied();
        self.pos += 1;
        item.ok_or_else(|| self.err(last, format!("unexpected end of file, expected {what}")))
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn ints(&self, line: usize, text: &str) -> Result<Vec<u64>> {
        text.split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| self.err(line, format!("not an integer: {t:?}"))))
            .collect()
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Some((line, _)) => Err(self.err(line, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

fn small(v: u64, line: usize, lines: &Lines) -> Result<u32> {
    u32::try_from(v).map_err(|_| lines.err(line, format!("{v} is too large")))
}

/// Field line and `q n s X` header.
fn read_header(lines: &mut Lines) -> Result<(Arc<Field>, [usize; 3])> {
    let (line, text) = lines.next("a header")?;
    let mut nums = lines.ints(line, text)?;
    let mut field = None;
    let mut header_line = line;
    if nums.len() != 4 {
        if nums.len() < 4 {
            return Err(lines.err(line, "expected the header \"q n s N\" or a field line \"p e c_0 .. c_e\""));
        }
        let p = small(nums[0], line, lines)?;
        let e = small(nums[1], line, lines)?;
        let modulus: Vec<u32> = nums[2..].iter().map(|&c| small(c, line, lines)).collect::<Result<_>>()?;
        if modulus.len() != e as usize + 1 {
            return Err(lines.err(line, format!("field line needs {} modulus coefficients", e + 1)));
        }
        let f = Field::with_modulus(p, &modulus).map_err(|err| lines.err(line, err.to_string()))?;
        field = Some(Arc::new(f));
        let (l, t) = lines.next("the header \"q n s N\"")?;
        header_line = l;
        nums = lines.ints(l, t)?;
        if nums.len() != 4 {
            return Err(lines.err(l, "expected the header \"q n s N\""));
        }
    }
    let q = small(nums[0], header_line, lines)?;
    let field = match field {
        Some(f) if f.q() == q => f,
        Some(f) => return Err(lines.err(header_line, format!("header q = {q} but the field has order {}", f.q()))),
        None => {
            let (p, e) = prime_power(q).ok_or_else(|| lines.err(header_line, format!("q = {q} is not a prime power")))?;
            Arc::new(Field::new(p, e).map_err(|err| lines.err(header_line, err.to_string()))?)
        }
    };
    let dims = [nums[1] as usize, nums[2] as usize, nums[3] as usize];
    if dims[0] == 0 || dims[1] == 0 {
        return Err(lines.err(header_line, "n and s must be positive"));
    }
    Ok((field, dims))
}

fn digit(c: char, q: u32) -> Option<u32> {
    let v = c.to_digit(36)?;
    (v < q).then_some(v)
}

fn parse_digits(text: &str, q: u32, s: usize) -> Option<Vec<u32>> {
    let out: Option<Vec<u32>> = if q <= 36 {
        text.chars().map(|c| digit(c, q)).collect()
    } else {
        text.split('.').map(|t| t.parse::<u32>().ok().filter(|&v| v < q)).collect()
    };
    out.filter(|d| d.len() == s)
}

pub fn read_points(path: &str, text: &str) -> Result<Parsed<Distribution>> {
    let mut lines = Lines::new(path, text);
    let (field, [n, s, count]) = read_header(&mut lines)?;
    let q = field.q();
    let space = Space::new(field, n, s)?;
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, text) = lines.next("a point")?;
        let rows: Vec<Vec<Elem>> = text
            .split_whitespace()
            .map(|t| {
                parse_digits(t, q, s)
                    .map(|d| d.into_iter().map(Elem).collect())
                    .ok_or_else(|| lines.err(line, format!("bad digit string {t:?} for q = {q}, s = {s}")))
            })
            .collect::<Result<_>>()?;
        if rows.len() != n {
            return Err(lines.err(line, format!("expected {n} coordinates, found {}", rows.len())));
        }
        points.push(CodeWord::from_eta_rows(&rows)?);
    }
    lines.finish()?;
    let comments = lines.comments;
    Ok(Parsed { value: Distribution::new(space, points)?, comments })
}

pub fn read_code(path: &str, text: &str) -> Result<Parsed<LinearCode>> {
    let mut lines = Lines::new(path, text);
    let (field, [n, s, k]) = read_header(&mut lines)?;
    let space = Space::new(field.clone(), n, s)?;
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, text) = lines.next("a basis row")?;
        let row: Vec<Elem> = lines
            .ints(line, text)?
            .into_iter()
            .map(|v| field.elem_of(v).map_err(|err| lines.err(line, err.to_string())))
            .collect::<Result<_>>()?;
        if row.len() != n * s {
            return Err(lines.err(line, format!("expected {} labels, found {}", n * s, row.len())));
        }
        rows.push(row);
    }
    lines.finish()?;
    let code = LinearCode::new(space, &rows)?;
    if code.k() != k {
        return Err(CliError::Parse {
            path: path.to_string(),
            line: 1,
            msg: format!("the {k} basis rows span a code of dimension {}", code.k()),
        });
    }
    Ok(Parsed { value: code, comments: lines.comments })
}

fn write_preamble(out: &mut String, field: &Field, comments: &[String]) {
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    if field.e() > 1 {
        let _ = writeln!(out, "{}", field.description());
    }
}

fn digit_string(row: &[Elem], q: u32) -> String {
    if q <= 36 {
        row.iter().map(|d| DIGITS[d.0 as usize] as char).collect()
    } else {
        row.iter().map(|d| d.0.to_string()).collect::<Vec<_>>().join(".")
    }
}

pub fn write_points(d: &Distribution, comments: &[String]) -> String {
    let space = d.space();
    let mut out = String::new();
    write_preamble(&mut out, space.field(), comments);
    let _ = writeln!(out, "{} {} {} {}", space.q(), space.n(), space.s(), d.len());
    for w in d.points() {
        let coords: Vec<String> = (0..w.n()).map(|j| digit_string(&w.eta_row(j), space.q())).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    out
}

pub fn write_code(code: &LinearCode, comments: &[String]) -> String {
    let space = code.space();
    let mut out = String::new();
    write_preamble(&mut out, space.field(), comments);
    let _ = writeln!(out, "{} {} {} {}", space.q(), space.n(), space.s(), code.k());
    for row in code.basis() {
        let labels: Vec<String> = row.iter().map(|e| e.0.to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}

/// Whether a file holds a code rather than a point set, judged by its extension.
pub fn is_code_path(path: &str) -> bool {
    path.ends_with(".code")
}

#[cfg(test)]
mod tests {
    use super::*;
    use nrt_core::construct::{build_mds_code, build_optimum_distribution};

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn points_round_trip() {
        for (p, e) in [(3, 1), (2, 2), (41, 1)] {
            let f = Arc::new(Field::new(p, e).unwrap());
            let space = Space::new(f, 2, 2).unwrap();
            let d = build_optimum_distribution(&space, 2, None, 1 << 20).unwrap();
            let text = write_points(&d, &["nodes 0,1".to_string()]);
            let back = read_points("mem", &text).unwrap();
            assert_eq!(back.value, d);
            assert_eq!(back.comments, vec!["nodes 0,1".to_string()]);
            if e > 1 {
                assert!(text.lines().nth(1).unwrap().starts_with("2 2 1 1 1"));
            }
        }
    }

    #[test]
    fn point_digits_most_significant_first() {
        let f = Arc::new(Field::new(3, 1).unwrap());
        let space = Space::new(f, 1, 2).unwrap();
        let w = CodeWord::from_labels(&[&[1, 2]]).unwrap();
        let d = Distribution::new(space, vec![w]).unwrap();
        assert_eq!(write_points(&d, &[]), "3 1 2 1\n21\n");
    }

    #[test]
    fn code_round_trip() {
        let f = Arc::new(Field::new(2, 2).unwrap());
        let space = Space::new(f, 3, 1).unwrap();
        let code = build_mds_code(&space, 2, None).unwrap();
        let text = write_code(&code, &[]);
        assert_eq!(read_code("mem", &text).unwrap().value, code);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = read_points("f", "").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }));
        let err = read_points("f", "3 1 2 2\n00\n# c\n0x\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }), "{err}");
        let err = read_points("f", "6 1 1 1\n0\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }));
        let err = read_points("f", "2 2 1 1 1\n8 1 1 0\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
        let err = read_code("f", "2 1 2 2\n1 0\n1 0\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
        let err = read_points("f", "2 1 1 1\n0\n1\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }));
    }
}
