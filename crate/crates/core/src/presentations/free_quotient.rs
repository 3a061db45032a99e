use std::collections::HashMap;

use super::presentation::FinitePresentation;
use super::word::Word;
use crate::error::{Error, Result};

/// Folded Stallings graph of a finitely generated subgroup of a free group.
///
/// Membership of a reduced word is decided by reading it from the
/// basepoint.
#[derive(Clone, Debug)]
pub struct FoldedGraph {
    rank: usize,
    forward: HashMap<(usize, usize), usize>,
    backward: HashMap<(usize, usize), usize>,
}

impl FoldedGraph {
    /// Folds the bouquet of petals spelled by `words` (basepoint 0).
    pub fn from_words(rank: usize, words: &[Word]) -> Self {
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut next = 1usize;
        for w in words {
            let mut at = 0usize;
            for (k, l) in w.letters().iter().enumerate() {
                let to = if k + 1 == w.len() {
                    0
                } else {
                    next += 1;
                    next - 1
                };
                if l.inverse {
                    edges.push((to, l.generator, at));
                } else {
                    edges.push((at, l.generator, to));
                }
                at = to;
            }
        }

        let mut uf = UnionFind::new(next);
        loop {
            let mut changed = false;
            let mut fwd: HashMap<(usize, usize), usize> = HashMap::new();
            let mut bwd: HashMap<(usize, usize), usize> = HashMap::new();
            for &(u, g, v) in &edges {
                let (u, v) = (uf.find(u), uf.find(v));
                if let Some(&w) = fwd.get(&(u, g)) {
                    changed |= uf.union(w, v);
                } else {
                    fwd.insert((u, g), v);
                }
                if let Some(&w) = bwd.get(&(v, g)) {
                    changed |= uf.union(w, u);
                } else {
                    bwd.insert((v, g), u);
                }
            }
            if !changed {
                let base = uf.find(0);
                let relabel = |x: usize| if x == base { 0 } else { x + 1 };
                return FoldedGraph {
                    rank,
                    forward: fwd.into_iter().map(|((u, g), v)| ((relabel(u), g), relabel(v))).collect(),
                    backward: bwd.into_iter().map(|((v, g), u)| ((relabel(v), g), relabel(u))).collect(),
                };
            }
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        let mut at = 0usize;
        for l in w.letters() {
            let next = if l.inverse {
                self.backward.get(&(at, l.generator))
            } else {
                self.forward.get(&(at, l.generator))
            };
            match next {
                Some(&v) => at = v,
                None => return false,
            }
        }
        at == 0
    }

    /// The subgroup is the whole free group.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|g| self.contains(&Word::generator(g)))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

/// Largeness witness: an epimorphism from a presented group onto the free
/// group of rank `rank ≥ 2`, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeQuotient {
    rank: usize,
    images: Vec<Word>,
}

impl FreeQuotient {
    /// Checks that the images define a homomorphism (relators map to the
    /// identity in the free group) and that they generate the free group.
    pub fn new(domain: &FinitePresentation, rank: usize, images: Vec<Word>) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Witness(format!("target free group has rank {rank}, need at least 2")));
        }
        if images.len() != domain.num_generators() {
            return Err(Error::Witness(format!(
                "{} images for {} generators",
                images.len(),
                domain.num_generators()
            )));
        }
        for w in &images {
            w.check_range(rank)?;
        }
        for (k, rel) in domain.relators().iter().enumerate() {
            if !rel.substitute(&images).is_empty() {
                return Err(Error::Witness(format!("relator {k} does not map to the identity")));
            }
        }
        if !FoldedGraph::from_words(rank, &images).is_everything() {
            return Err(Error::Witness("generator images do not generate the free group".into()));
        }
        Ok(FreeQuotient { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        FreeQuotient {
            rank,
            images: (0..rank).map(Word::generator).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// Exponent sum of the first free generator in the image of each domain
    /// generator: the map `φ ∘ α` onto `Z`.
    pub fn first_coordinate(&self) -> Vec<i64> {
        self.images.iter().map(|w| w.exponent_sum(0)).collect()
    }
}
