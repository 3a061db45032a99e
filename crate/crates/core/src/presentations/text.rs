//! Plain-text presentation format.
//!
//! ```text
//! # comment
//! gens: a b c
//! rel: abAB
//! rel: cc
//! ```
//!
//! Generator names are single lowercase letters; inside relators an
//! uppercase letter is the inverse generator.

use super::presentation::FinitePresentation;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

pub fn parse_presentation(text: &str) -> Result<FinitePresentation> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected 'gens:' or 'rel:', got '{line}'"),
        })?;
        match key.trim() {
            "gens" => {
                if names.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "second 'gens:' line".into(),
                    });
                }
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = list.iter().find(|n| n.len() != 1 || !n.as_bytes()[0].is_ascii_lowercase()) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("generator name '{bad}' is not a single lowercase letter"),
                    });
                }
                names = Some(list);
            }
            "rel" => {
                let names = names.as_ref().ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: "'rel:' before 'gens:'".into(),
                })?;
                let mut letters = Vec::new();
                for c in rest.chars().filter(|c| !c.is_whitespace()) {
                    let lower = c.to_ascii_lowercase().to_string();
                    match names.iter().position(|n| *n == lower) {
                        Some(g) if c.is_ascii_alphabetic() => letters.push(Letter::new(g, c.is_ascii_uppercase())),
                        _ => return Err(Error::UnknownLetter { line: line_no, letter: c }),
                    }
                }
                relators.push(Word::from_letters(letters));
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unknown key '{other}'"),
                })
            }
        }
    }
    let names = names.ok_or_else(|| Error::Parse {
        line: text.lines().count().max(1),
        message: "missing 'gens:' line".into(),
    })?;
    FinitePresentation::new(names, relators).map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })
}

pub fn to_text(p: &FinitePresentation) -> Result<String> {
    if !p.uses_letter_syntax() {
        return Err(Error::Unsupported(
            "text format needs single-letter generator names".into(),
        ));
    }
    let mut out = format!("gens: {}\n", p.names().join(" "));
    for r in p.relators() {
        out.push_str(&format!("rel: {}\n", p.format_word(r)));
    }
    Ok(out)
}
