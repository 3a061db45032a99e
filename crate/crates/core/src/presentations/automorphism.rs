use super::presentation::FinitePresentation;
use super::word::Word;
use crate::error::{Error, Result};

/// How strongly an automorphism's invertibility was verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    /// Both compositions reduce to the generators in the free group.
    Exact,
    /// Checked on `H_1` only (the domain has relators, and deciding equality
    /// there would need a word-problem solver).
    Abelianized,
}

/// An automorphism given by the images of the generators together with the
/// images of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAutomorphism {
    images: Vec<Word>,
    inverse_images: Vec<Word>,
    verification: Verification,
}

impl GroupAutomorphism {
    /// Validates arity, index ranges and invertibility on `domain`.
    pub fn new(domain: &FinitePresentation, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Self> {
        let r = domain.num_generators();
        if images.len() != r || inverse_images.len() != r {
            return Err(Error::Input(format!(
                "automorphism needs {r} images and {r} inverse images, got {} and {}",
                images.len(),
                inverse_images.len()
            )));
        }
        for w in images.iter().chain(&inverse_images) {
            w.check_range(r)?;
        }
        let mut phi = GroupAutomorphism {
            images,
            inverse_images,
            verification: Verification::Exact,
        };
        if domain.is_free() {
            for g in 0..r {
                let there_and_back = phi.apply(&phi.inverse_images[g]);
                let back_and_there = phi.apply_inverse(&phi.images[g]);
                if there_and_back != Word::generator(g) || back_and_there != Word::generator(g) {
                    return Err(Error::Witness(format!(
                        "inverse images do not invert the automorphism at generator {}",
                        domain.names()[g]
                    )));
                }
            }
        } else {
            if domain.relators().iter().any(|rel| rel.exponent_vector(r).iter().any(|&e| e != 0)) {
                return Err(Error::Unsupported(
                    "automorphism check needs relators with trivial abelianization".into(),
                ));
            }
            let m = phi.abelianization();
            let minv = phi.inverse().abelianization();
            if !is_identity(&mat_mul(&m, &minv)) || !is_identity(&mat_mul(&minv, &m)) {
                return Err(Error::Witness(
                    "automorphism is not invertible on the abelianization".into(),
                ));
            }
            phi.verification = Verification::Abelianized;
        }
        Ok(phi)
    }

    pub fn identity(r: usize) -> Self {
        let images: Vec<Word> = (0..r).map(Word::generator).collect();
        GroupAutomorphism {
            inverse_images: images.clone(),
            images,
            verification: Verification::Exact,
        }
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, g: usize) -> &Word {
        &self.images[g]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn verification(&self) -> Verification {
        self.verification
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(g, w)| *w == Word::generator(g))
    }

    /// Generator-wise substitution followed by free reduction.
    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    pub fn apply_inverse(&self, w: &Word) -> Word {
        w.substitute(&self.inverse_images)
    }

    pub fn inverse(&self) -> Self {
        GroupAutomorphism {
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
            verification: self.verification,
        }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &GroupAutomorphism) -> Self {
        let verification = match (self.verification, other.verification) {
            (Verification::Exact, Verification::Exact) => Verification::Exact,
            _ => Verification::Abelianized,
        };
        GroupAutomorphism {
            images: other.images.iter().map(|w| self.apply(w)).collect(),
            inverse_images: self.inverse_images.iter().map(|w| other.apply_inverse(w)).collect(),
            verification,
        }
    }

    /// Action on `H_1` of the free group: entry `[i][j]` is the exponent sum
    /// of generator `i` in the image of generator `j`.
    pub fn abelianization(&self) -> Vec<Vec<i64>> {
        let r = self.arity();
        let cols: Vec<Vec<i64>> = self.images.iter().map(|w| w.exponent_vector(r)).collect();
        (0..r).map(|i| (0..r).map(|j| cols[j][i]).collect()).collect()
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
}
