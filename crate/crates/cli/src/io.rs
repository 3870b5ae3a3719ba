//! Front-file reading and writing, plus the decimal formatting used for
//! every numeric value the CLI prints.
//!
//! A front file holds one point per line, coordinates as whitespace-
//! separated decimal text. Lines starting with `#` are comments; blank
//! lines separate fronts. A file with no point lines at all holds one
//! empty front.

use std::path::Path;

use hvkit::{Front, Point, ReferencePoint};

use crate::Failure;

/// Parse every front in a file's text. Errors carry the 1-based line.
pub fn parse_fronts(text: &str) -> Result<Vec<Vec<Vec<f64>>>, String> {
    let mut fronts: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut current: Vec<Vec<f64>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !current.is_empty() {
                fronts.push(std::mem::take(&mut current));
            }
            continue;
        }
        let mut coords = Vec::new();
        for token in line.split_whitespace() {
            let value: f64 = token
                .parse()
                .map_err(|_| format!("line {lineno}: cannot parse `{token}` as a number"))?;
            if !value.is_finite() {
                return Err(format!("line {lineno}: non-finite coordinate `{token}`"));
            }
            coords.push(value);
        }
        if coords.len() < 2 {
            return Err(format!(
                "line {lineno}: points need at least 2 coordinates, got {}",
                coords.len()
            ));
        }
        if let Some(first) = current.first() {
            if coords.len() != first.len() {
                return Err(format!(
                    "line {lineno}: expected {} coordinates, got {}",
                    first.len(),
                    coords.len()
                ));
            }
        }
        current.push(coords);
    }
    if !current.is_empty() {
        fronts.push(current);
    }
    if fronts.is_empty() {
        fronts.push(Vec::new());
    }
    Ok(fronts)
}

pub fn read_fronts(path: &Path) -> Result<Vec<Vec<Vec<f64>>>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_fronts(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

pub fn parse_reference(spec: &str) -> Result<ReferencePoint, Failure> {
    let mut coords = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        let value: f64 = token
            .parse()
            .map_err(|_| Failure::parse(format!("cannot parse reference coordinate `{token}`")))?;
        if !value.is_finite() {
            return Err(Failure::parse(format!(
                "non-finite reference coordinate `{token}`"
            )));
        }
        coords.push(value);
    }
    ReferencePoint::new(coords).map_err(|e| Failure::parse(format!("invalid reference point: {e}")))
}

/// Build a front of the reference's dimension from parsed rows. An empty
/// row set becomes an empty front of that dimension.
pub fn build_front(rows: &[Vec<f64>], reference: &ReferencePoint) -> Result<Front, Failure> {
    if rows.is_empty() {
        return Front::empty(reference.dim())
            .map_err(|e| Failure::parse(format!("cannot build empty front: {e}")));
    }
    let d = rows[0].len();
    if d != reference.dim() {
        return Err(Failure::dimension(format!(
            "front has {d}-dimensional points but the reference point has {} coordinates",
            reference.dim()
        )));
    }
    let points: Result<Vec<Point>, _> = rows.iter().map(|r| Point::new(r.clone())).collect();
    let points = points.map_err(|e| Failure::parse(format!("invalid point: {e}")))?;
    Front::from_points(points, d).map_err(|e| Failure::parse(format!("invalid front: {e}")))
}

/// Format with 17 significant digits, in plain decimal for moderate
/// exponents and scientific form otherwise, trailing zeros trimmed. The
/// precision makes parsing the output reproduce the exact bits.
pub fn fmt17(v: f64) -> String {
    debug_assert!(v.is_finite());
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-4..17).contains(&exp) {
        let prec = (16 - exp).max(0) as usize;
        let fixed = format!("{v:.prec$}");
        trim_fraction(&fixed).to_string()
    } else {
        format!("{}e{}", trim_fraction(mantissa), exp)
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn format_point(coords: &[f64]) -> String {
    coords
        .iter()
        .map(|&c| fmt17(c))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_front(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&format_point(row));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_front_breaks() {
        let text = "# a front file\n1 2\n 3\t4 \n\n# second front\n5 6\n";
        let fronts = parse_fronts(text).unwrap();
        assert_eq!(
            fronts,
            vec![vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![vec![5.0, 6.0]],]
        );
    }

    #[test]
    fn empty_input_is_one_empty_front() {
        assert_eq!(parse_fronts("").unwrap(), vec![Vec::<Vec<f64>>::new()]);
        assert_eq!(
            parse_fronts("# nothing\n\n\n").unwrap(),
            vec![Vec::<Vec<f64>>::new()]
        );
    }

    #[test]
    fn rejects_bad_tokens_with_line_numbers() {
        assert!(parse_fronts("1 2\n1 x\n").unwrap_err().contains("line 2"));
        assert!(parse_fronts("1 2\n1 nan\n").unwrap_err().contains("line 2"));
        assert!(parse_fronts("inf 2\n").unwrap_err().contains("line 1"));
        assert!(parse_fronts("1 2\n1 2 3\n").unwrap_err().contains("line 2"));
        assert!(parse_fronts("7\n").unwrap_err().contains("at least 2"));
    }

    #[test]
    fn printing_then_parsing_restores_exact_bits() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut rows = Vec::new();
        for _ in 0..500 {
            let mut coords = Vec::new();
            for _ in 0..3 {
                let v = loop {
                    let bits = next();
                    let v = f64::from_bits(bits);
                    if v.is_finite() {
                        break v;
                    }
                };
                coords.push(v);
            }
            rows.push(coords);
        }
        let text = format_front(&rows);
        let back = parse_fronts(&text).unwrap();
        assert_eq!(back.len(), 1);
        for (a, b) in rows.iter().zip(&back[0]) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(x.to_bits(), y.to_bits(), "{x:e} printed as {}", fmt17(*x));
            }
        }
    }

    #[test]
    fn format_has_plain_decimals_for_round_numbers() {
        assert_eq!(fmt17(6.0), "6");
        assert_eq!(fmt17(425.0), "425");
        assert_eq!(fmt17(0.0), "0");
        assert_eq!(fmt17(-0.0), "-0");
        assert_eq!(fmt17(0.5), "0.5");
        assert_eq!(fmt17(-2.25), "-2.25");
        assert_eq!(fmt17(1e20), "1e20");
        // 2^-20 is exact in binary, so its decimal form is short.
        assert_eq!(fmt17(9.5367431640625e-7), "9.5367431640625e-7");
        // The double nearest 1e-7 sits just below it; 17 significant
        // digits expose that.
        assert_eq!(fmt17(1e-7), "9.9999999999999995e-8");
        assert_eq!(fmt17(0.1), "0.10000000000000001");
    }
}
