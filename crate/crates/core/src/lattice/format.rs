//! Family file formats.
//!
//! Text: a header line `n=<int>`, then one set per line given as a
//! whitespace-separated element list (`1 3 4`), `{}` for the empty set, or a
//! level shorthand `L<k>` / `L<k>+L<j>` that expands to whole levels. Blank
//! lines and lines starting with `#` are ignored.
//!
//! JSON: `{"n": <int>, "masks": [<int>, ...]}`.

use serde::Deserialize;

use super::{elements, full_mask, level_family, Mask, SetFamily, MAX_ENUM_N};
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_family_text(text: &str) -> Result<SetFamily> {
    let mut n: Option<usize> = None;
    let mut masks: Vec<Mask> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(dim) = n else {
            let rest = line
                .strip_prefix("n=")
                .or_else(|| line.strip_prefix("n ="))
                .ok_or_else(|| parse_err(line_no, 1, "expected header `n=<int>`"))?;
            let dim: usize = rest
                .trim()
                .parse()
                .map_err(|_| parse_err(line_no, 3, format!("bad dimension `{}`", rest.trim())))?;
            if dim > MAX_ENUM_N {
                return Err(parse_err(line_no, 3, format!("n={dim} exceeds {MAX_ENUM_N}")));
            }
            n = Some(dim);
            continue;
        };
        if line == "{}" {
            masks.push(0);
        } else if line.starts_with('L') {
            let mut levels = Vec::new();
            for part in line.split('+') {
                let part = part.trim();
                let k = part
                    .strip_prefix('L')
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(line_no, 1, format!("bad level shorthand `{part}`")))?;
                if k > dim {
                    return Err(parse_err(line_no, 1, format!("level {k} exceeds n={dim}")));
                }
                levels.push(k);
            }
            masks.extend(level_family(dim, &levels)?.iter());
        } else {
            let mut m: Mask = 0;
            for tok in raw.split_whitespace() {
                let col = tok.as_ptr() as usize - raw.as_ptr() as usize + 1;
                let e: usize = tok
                    .parse()
                    .map_err(|_| parse_err(line_no, col, format!("bad element `{tok}`")))?;
                if e == 0 || e > dim {
                    return Err(parse_err(line_no, col, format!("element {e} not in [{dim}]")));
                }
                m |= 1 << (e - 1);
            }
            masks.push(m);
        }
    }
    let n = n.ok_or_else(|| parse_err(1, 1, "missing header `n=<int>`"))?;
    SetFamily::new(n, masks)
}

/// Canonical text rendering: header plus one set per line, ascending by mask.
pub fn write_family_text(family: &SetFamily) -> String {
    let mut out = format!("n={}\n", family.n());
    for m in family.iter() {
        if m == 0 {
            out.push_str("{}");
        } else {
            let elems: Vec<String> = elements(m).iter().map(|e| e.to_string()).collect();
            out.push_str(&elems.join(" "));
        }
        out.push('\n');
    }
    out
}

#[derive(Deserialize)]
struct FamilyJson {
    n: usize,
    masks: Vec<u64>,
}

pub fn parse_family_json(text: &str) -> Result<SetFamily> {
    let raw: FamilyJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.n > MAX_ENUM_N {
        return Err(Error::DimensionOutOfRange {
            op: "family json",
            n: raw.n,
            min: 0,
            max: MAX_ENUM_N,
        });
    }
    let full = full_mask(raw.n) as u64;
    let mut masks = Vec::with_capacity(raw.masks.len());
    for m in raw.masks {
        if m & !full != 0 {
            return Err(Error::MaskOutOfRange { mask: m, n: raw.n });
        }
        masks.push(m as Mask);
    }
    SetFamily::new(raw.n, masks)
}

pub fn write_family_json(family: &SetFamily) -> String {
    serde_json::to_string(family).expect("family serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_all_line_forms() {
        let f = parse_family_text("n=3\n{}\n1 2\n# comment\n\n3\n").unwrap();
        assert_eq!(f.masks(), &[0, 3, 4]);
        let g = parse_family_text("n=4\nL1+L3\n").unwrap();
        assert_eq!(g, level_family(4, &[1, 3]).unwrap());
        let h = parse_family_text("n=5\nL2\n").unwrap();
        assert_eq!(h.len(), 10);
    }

    #[test]
    fn reports_positions() {
        let err = parse_family_text("n=3\n1 4\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 3,
                message: "element 4 not in [3]".into()
            }
        );
        assert!(matches!(
            parse_family_text("1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_family_text("n=3\nL5\n").is_err());
    }

    #[test]
    fn json_form() {
        let f = parse_family_json(r#"{"n": 3, "masks": [7, 0, 1]}"#).unwrap();
        assert_eq!(f.masks(), &[0, 1, 7]);
        assert_eq!(write_family_json(&f), r#"{"n":3,"masks":[0,1,7]}"#);
        assert!(matches!(
            parse_family_json(r#"{"n": 2, "masks": [4]}"#),
            Err(Error::MaskOutOfRange { .. })
        ));
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(n in 0usize..8, raw in proptest::collection::vec(any::<u32>(), 0..20)) {
            let full = full_mask(n);
            let f = SetFamily::new(n, raw.into_iter().map(|m| m & full)).unwrap();
            prop_assert_eq!(parse_family_text(&write_family_text(&f)).unwrap(), f.clone());
            prop_assert_eq!(parse_family_json(&write_family_json(&f)).unwrap(), f);
        }
    }
}
