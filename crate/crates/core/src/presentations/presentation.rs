use std::collections::HashSet;

use super::automorphism::GroupAutomorphism;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A finite presentation `⟨x_0, …, x_{r-1} | R_1, …, R_m⟩`.
///
/// Relators are stored freely reduced; relators that reduce to the empty
/// word are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePresentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

/// `a, b, …, z` for up to 26 generators, `x0, x1, …` beyond.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

impl FinitePresentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || !seen.insert(name.as_str()) {
                return Err(Error::Input(format!("duplicate or empty generator name '{name}'")));
            }
        }
        for r in &relators {
            r.check_range(names.len())?;
        }
        Ok(FinitePresentation {
            names,
            relators: relators.into_iter().filter(|r| !r.is_empty()).collect(),
        })
    }

    pub fn with_default_names(num_generators: usize, relators: Vec<Word>) -> Result<Self> {
        FinitePresentation::new(default_names(num_generators), relators)
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// No relators: a free group on the generators.
    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Free of rank at least two.
    pub fn is_noncyclic_free(&self) -> bool {
        self.is_free() && self.num_generators() >= 2
    }

    pub fn is_trivial_presentation(&self) -> bool {
        self.num_generators() == 0
    }

    /// True when every generator name is a single lowercase ASCII letter,
    /// which is what the text format and letter syntax need.
    pub fn uses_letter_syntax(&self) -> bool {
        self.names
            .iter()
            .all(|n| n.len() == 1 && n.as_bytes()[0].is_ascii_lowercase())
    }

    /// Parses a word in letter syntax: a generator's name is the letter, its
    /// inverse the uppercase letter.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        if !self.uses_letter_syntax() {
            return Err(Error::Unsupported(
                "letter syntax needs single-letter generator names".into(),
            ));
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            let lower = c.to_ascii_lowercase().to_string();
            match self.generator_index(&lower) {
                Some(g) if c.is_ascii_alphabetic() => letters.push(Letter::new(g, c.is_ascii_uppercase())),
                _ => return Err(Error::UnknownLetter { line: 1, letter: c }),
            }
        }
        Ok(Word::from_letters(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        if self.uses_letter_syntax() {
            w.letters()
                .iter()
                .map(|l| {
                    let c = self.names[l.generator].chars().next().unwrap_or('?');
                    if l.inverse {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect()
        } else {
            w.letters()
                .iter()
                .map(|l| {
                    let n = &self.names[l.generator];
                    if l.inverse {
                        format!("{n}^-1")
                    } else {
                        n.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// Recognizes the shapes produced by [`mk_surface_group`]: a free group,
    /// or a single relator `∏ [x_{2i}, x_{2i+1}]` using every generator.
    pub fn is_surface_presentation(&self) -> bool {
        if self.is_free() {
            return true;
        }
        if self.relators.len() != 1 || !self.num_generators().is_multiple_of(2) {
            return false;
        }
        let expected = surface_relator(self.num_generators() / 2);
        let r = &self.relators[0];
        (0..r.len()).any(|k| r.rotate(k) == expected)
    }
}

fn surface_relator(genus: usize) -> Word {
    let mut r = Word::identity();
    for i in 0..genus {
        let c = Word::commutator(&Word::generator(2 * i), &Word::generator(2 * i + 1));
        r = &r * &c;
    }
    r
}

/// Free group of rank `r ≥ 1`.
pub fn mk_free_group(r: usize) -> Result<FinitePresentation> {
    if r == 0 {
        return Err(Error::Input("free group of rank 0 is excluded".into()));
    }
    FinitePresentation::with_default_names(r, Vec::new())
}

/// Fundamental group of the orientable surface of the given genus with
/// `punctures` boundary components.
///
/// Closed surfaces get the one-relator presentation `∏ [a_i, b_i]`; with at
/// least one puncture the group is free of rank `2g + punctures − 1`. The
/// sphere and the disk come back as the trivial (generator-free)
/// presentation.
pub fn mk_surface_group(genus: usize, punctures: usize) -> FinitePresentation {
    let built = if punctures == 0 {
        let relators = if genus == 0 { vec![] } else { vec![surface_relator(genus)] };
        FinitePresentation::with_default_names(2 * genus, relators)
    } else {
        FinitePresentation::with_default_names(2 * genus + punctures - 1, vec![])
    };
    built.expect("surface presentation is well formed")
}

/// `Z ⋉_φ G`: the generators of `G`, a stable letter `t`, the relators of `G`
/// and `t g_j t⁻¹ φ(g_j)⁻¹` for every generator `g_j`.
pub fn mk_semidirect_z(g: &FinitePresentation, phi: &GroupAutomorphism) -> Result<FinitePresentation> {
    let r = g.num_generators();
    if phi.arity() != r {
        return Err(Error::Input(format!(
            "automorphism has {} images, fiber has {} generators",
            phi.arity(),
            r
        )));
    }
    let mut names = g.names().to_vec();
    names.push(stable_letter_name(g));
    let t = Word::generator(r);
    let mut relators = g.relators().to_vec();
    for j in 0..r {
        let conj = &(&t * &Word::generator(j)) * &t.inverse();
        relators.push(&conj * &phi.image(j).inverse());
    }
    FinitePresentation::new(names, relators)
}

fn stable_letter_name(g: &FinitePresentation) -> String {
    let taken = |s: &str| g.generator_index(s).is_some();
    "tsuvwxyzrqponmlkjihgfedcba"
        .chars()
        .map(|c| c.to_string())
        .find(|c| !taken(c))
        .unwrap_or_else(|| {
            (0..)
                .map(|i| format!("t{i}"))
                .find(|c| !taken(c))
                .unwrap()
        })
}
