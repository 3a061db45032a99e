use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub const fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub const fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word in the generators of some presentation.
///
/// Every constructor reduces, so a `Word` never contains an adjacent pair
/// `x x⁻¹` or `x⁻¹ x`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::pos(g)])
    }

    /// Reduces an arbitrary letter sequence. No range check.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Builds a word from `(generator, ±1)` pairs.
    pub fn from_signed(pairs: &[(usize, i8)]) -> Self {
        Word::from_letters(pairs.iter().map(|&(g, s)| Letter::new(g, s < 0)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push(&mut self, l: Letter) {
        match self.0.last() {
            Some(&last) if last.cancels(l) => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        &(&(a * b) * &a.inverse()) * &b.inverse()
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == g)
            .map(|l| l.sign())
            .sum()
    }

    pub fn exponent_vector(&self, num_generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; num_generators];
        for l in &self.0 {
            v[l.generator] += l.sign();
        }
        v
    }

    pub fn check_range(&self, num_generators: usize) -> Result<()> {
        match self.0.iter().find(|l| l.generator >= num_generators) {
            Some(l) => Err(Error::GeneratorOutOfRange {
                index: l.generator,
                count: num_generators,
            }),
            None => Ok(()),
        }
    }

    /// Strips inverse pairs from the two ends; the result is conjugate to
    /// `self`.
    pub fn cyclically_reduced(&self) -> Word {
        let s = &self.0;
        let (mut lo, mut hi) = (0usize, s.len());
        while hi - lo >= 2 && s[lo].cancels(s[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(s[lo..hi].to_vec())
    }

    /// Replaces generator `g` by `images[g]` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for l in &self.0 {
            let img = &images[l.generator];
            if l.inverse {
                for &m in img.0.iter().rev() {
                    out.push(m.inv());
                }
            } else {
                for &m in &img.0 {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Cyclic rotation by `k` letters, reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        Word::from_letters(self.0[k..].iter().chain(&self.0[..k]).copied())
    }
}

/// Free reduction of a raw letter sequence, checking generator indices.
pub fn free_reduce(raw: &[Letter], num_generators: usize) -> Result<Word> {
    if let Some(l) = raw.iter().find(|l| l.generator >= num_generators) {
        return Err(Error::GeneratorOutOfRange {
            index: l.generator,
            count: num_generators,
        });
    }
    Ok(Word::from_letters(raw.iter().copied()))
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.clone();
        for &l in &rhs.0 {
            out.push(l);
        }
        out
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl fmt::Display for Word {
    /// Letter syntax for the first 26 generators: `a` is generator 0, `A` its
    /// inverse. Larger indices print as `x12` / `X12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let small = self.0.iter().all(|l| l.generator < 26);
        for (k, l) in self.0.iter().enumerate() {
            if small {
                let c = (b'a' + l.generator as u8) as char;
                let c = if l.inverse { c.to_ascii_uppercase() } else { c };
                write!(f, "{c}")?;
            } else {
                if k > 0 {
                    write!(f, " ")?;
                }
                let x = if l.inverse { 'X' } else { 'x' };
                write!(f, "{x}{}", l.generator)?;
            }
        }
        Ok(())
    }
}
