//! Plain-text facet lists: one facet per line, labels separated by spaces,
//! `#` comments and blank lines ignored.

use super::{validate_label, Complex};
use crate::error::{Error, Result};

pub fn parse_facet_list(text: &str) -> Result<Complex> {
    let mut facets: Vec<Vec<&str>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let labels: Vec<&str> = line.split_whitespace().collect();
        for l in &labels {
            validate_label(l).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                line: i + 1,
                message: "repeated vertex in facet".into(),
            });
        }
        facets.push(labels);
    }
    Complex::from_facets(facets)
}

/// Canonical text: labels sorted within each line, lines sorted.
pub fn emit_facet_list(complex: &Complex) -> String {
    let mut lines: Vec<String> = complex
        .canonical_key()
        .into_iter()
        .map(|f| f.join(" "))
        .collect();
    lines.sort();
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let c = parse_facet_list("# fan\n1 2\n\n1 3\n 1 4 \n").unwrap();
        assert_eq!(c.num_facets(), 3);
        assert_eq!(emit_facet_list(&c), "1 2\n1 3\n1 4\n");
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_facet_list("a b\nc c\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, message: "repeated vertex in facet".into() });
        assert!(matches!(parse_facet_list("a b\nc {d\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_facet_list("a b\nc d e\n"), Err(Error::Purity { .. })));
        assert_eq!(parse_facet_list("# nothing\n").unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn emission_is_canonical() {
        let c = parse_facet_list("b a\na c\n").unwrap();
        let text = emit_facet_list(&c);
        assert_eq!(text, "a b\na c\n");
        assert_eq!(emit_facet_list(&parse_facet_list(&text).unwrap()), text);
    }
}
