use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::{FinitePresentation, Letter, Word};

/// A finite-index subgroup `H ≤ G`, stored as the right action of `G`'s
/// generators on the cosets `H\G`. Coset 0 is `H` itself.
///
/// Invariants, checked whenever a table is built: every generator acts by a
/// bijection, the action is transitive, and every relator of the parent acts
/// trivially on every coset.
#[derive(Clone, Debug)]
pub struct CosetTable {
    parent: Arc<FinitePresentation>,
    degree: usize,
    forward: Vec<Vec<u32>>,
    backward: Vec<Vec<u32>>,
}

/// JSON form used by `--dump`.
#[derive(Clone, Debug, Serialize)]
pub struct TableDump {
    pub degree: usize,
    pub generators: Vec<String>,
    pub action: Vec<Vec<u32>>,
}

impl CosetTable {
    /// The whole group: one coset.
    pub fn trivial(parent: Arc<FinitePresentation>) -> Self {
        let r = parent.num_generators();
        CosetTable {
            parent,
            degree: 1,
            forward: vec![vec![0]; r],
            backward: vec![vec![0]; r],
        }
    }

    /// Builds the table of the stabilizer of `basepoint` from one
    /// permutation per generator. Points outside the basepoint's orbit are
    /// discarded and the orbit is relabelled in breadth-first order.
    pub fn from_permutations(parent: Arc<FinitePresentation>, perms: Vec<Vec<usize>>, basepoint: usize) -> Result<Self> {
        if perms.len() != parent.num_generators() {
            return Err(Error::Input(format!(
                "{} permutations for {} generators",
                perms.len(),
                parent.num_generators()
            )));
        }
        let n = perms.first().map_or(basepoint + 1, Vec::len);
        if basepoint >= n {
            return Err(Error::Input(format!("basepoint {basepoint} outside 0..{n}")));
        }
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Input(format!("action of generator {g} is not a permutation of 0..{n}")));
            }
        }
        let table = CosetTable::from_orbit(parent, basepoint, |&x, g| perms[g][x], usize::MAX)?;
        if let Some((rel, point)) = table.first_relator_violation() {
            return Err(Error::Input(format!("relator {rel} acts nontrivially on point {point}")));
        }
        Ok(table)
    }

    /// Explores the orbit of `start` under `step` (which must be a group
    /// action) in breadth-first order and returns the stabilizer table.
    pub(crate) fn from_orbit<S, F>(parent: Arc<FinitePresentation>, start: S, mut step: F, cap: usize) -> Result<Self>
    where
        S: Clone + Eq + Hash,
        F: FnMut(&S, usize) -> S,
    {
        let r = parent.num_generators();
        let mut index: HashMap<S, u32> = HashMap::new();
        let mut states = vec![start.clone()];
        index.insert(start, 0);
        let mut forward: Vec<Vec<u32>> = vec![Vec::new(); r];
        let mut head = 0;
        while head < states.len() {
            let s = states[head].clone();
            for (g, fw) in forward.iter_mut().enumerate() {
                let t = step(&s, g);
                let k = match index.get(&t) {
                    Some(&k) => k,
                    None => {
                        if states.len() >= cap {
                            return Err(Error::resource("orbit size", cap));
                        }
                        let k = states.len() as u32;
                        index.insert(t.clone(), k);
                        states.push(t);
                        k
                    }
                };
                fw.push(k);
            }
            head += 1;
        }
        let degree = states.len();
        let mut backward = vec![vec![u32::MAX; degree]; r];
        for g in 0..r {
            for (x, &y) in forward[g].iter().enumerate() {
                if backward[g][y as usize] != u32::MAX {
                    return Err(Error::Internal(format!("generator {g} does not act bijectively")));
                }
                backward[g][y as usize] = x as u32;
            }
        }
        let table = CosetTable {
            parent,
            degree,
            forward,
            backward,
        };
        if let Some((rel, point)) = table.first_relator_violation() {
            return Err(Error::Internal(format!("relator {rel} acts nontrivially on coset {point}")));
        }
        Ok(table)
    }

    fn first_relator_violation(&self) -> Option<(usize, usize)> {
        for (k, rel) in self.parent.relators().iter().enumerate() {
            for x in 0..self.degree {
                if self.trace(x, rel) != x {
                    return Some((k, x));
                }
            }
        }
        None
    }

    pub fn parent(&self) -> &Arc<FinitePresentation> {
        &self.parent
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `[G : H]`.
    pub fn index(&self) -> usize {
        self.degree
    }

    pub fn num_generators(&self) -> usize {
        self.forward.len()
    }

    /// Image of generator `g` as a permutation of the cosets.
    pub fn generator_action(&self, g: usize) -> &[u32] {
        &self.forward[g]
    }

    #[inline]
    pub fn act(&self, point: usize, l: Letter) -> usize {
        if l.inverse {
            self.backward[l.generator][point] as usize
        } else {
            self.forward[l.generator][point] as usize
        }
    }

    pub fn trace(&self, point: usize, w: &Word) -> usize {
        w.letters().iter().fold(point, |x, &l| self.act(x, l))
    }

    /// `w ∈ H`: the word fixes the basepoint.
    pub fn contains_word(&self, w: &Word) -> bool {
        self.trace(0, w) == 0
    }

    pub(crate) fn same_parent(&self, other: &CosetTable) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent
    }

    /// Exact subgroup equality: a label-preserving isomorphism of the two
    /// actions fixing the basepoint.
    pub fn same_subgroup(&self, other: &CosetTable) -> bool {
        if self.degree != other.degree || !self.same_parent(other) {
            return false;
        }
        let mut map = vec![u32::MAX; self.degree];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in 0..self.num_generators() {
                let y = self.forward[g][x] as usize;
                let image = other.forward[g][map[x] as usize];
                if map[y] == u32::MAX {
                    map[y] = image;
                    queue.push_back(y);
                } else if map[y] != image {
                    return false;
                }
            }
        }
        true
    }

    /// Agreement of `contains_word` on a fixed pseudo-random sample: random
    /// words plus products of Schreier generators of both tables, so that
    /// members are represented as well as non-members.
    pub fn agrees_on_sample(&self, other: &CosetTable, samples: usize, seed: u64) -> bool {
        if self.degree != other.degree || !self.same_parent(other) {
            return false;
        }
        let r = self.num_generators();
        if r == 0 {
            return true;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pool = crate::schreier::schreier_generators(self);
        pool.extend(crate::schreier::schreier_generators(other));
        (0..samples).all(|k| {
            let w = if k % 2 == 0 || pool.is_empty() {
                let len = rng.gen_range(0..=16);
                Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..r), rng.gen())))
            } else {
                (0..rng.gen_range(1..=3)).fold(Word::identity(), |acc, _| {
                    let s = &pool[rng.gen_range(0..pool.len())];
                    &acc * &if rng.gen() { s.clone() } else { s.inverse() }
                })
            };
            self.contains_word(&w) == other.contains_word(&w)
        })
    }

    /// Pulls the table back along the homomorphism `new_parent → parent`
    /// given by generator images; the result is the preimage subgroup.
    pub fn pullback(&self, new_parent: Arc<FinitePresentation>, images: &[Word]) -> Result<CosetTable> {
        if images.len() != new_parent.num_generators() {
            return Err(Error::Input("one image per generator required".into()));
        }
        for w in images {
            w.check_range(self.num_generators())?;
        }
        let perms: Vec<Vec<u32>> = images
            .iter()
            .map(|w| (0..self.degree).map(|x| self.trace(x, w) as u32).collect())
            .collect();
        CosetTable::from_orbit(new_parent, 0u32, |&x, g| perms[g][x as usize], usize::MAX)
    }

    pub fn dump(&self) -> TableDump {
        TableDump {
            degree: self.degree,
            generators: self.parent.names().to_vec(),
            action: self.forward.clone(),
        }
    }
}
