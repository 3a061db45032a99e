//! Schreier transversals and Reidemeister–Schreier presentations of
//! finite-index subgroups, plus the two elementary rank bounds.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::coset_actions::CosetTable;
use crate::error::{Error, Result};
use crate::homology::HomologySummary;
use crate::presentations::{default_names, tietze_reduce, FinitePresentation, Letter, Word};

/// Prefix-closed coset representatives. `reps[0]` is the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    reps: Vec<Word>,
    /// Tree edge through which each coset was first reached.
    via: Vec<Option<(usize, Letter)>>,
}

impl Transversal {
    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    pub fn representative(&self, c: usize) -> &Word {
        &self.reps[c]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Whether the edge `c --g--> c·g` (for generator `g`) lies in the tree.
    fn is_tree_edge(&self, h: &CosetTable, c: usize, g: usize) -> bool {
        let d = h.act(c, Letter::pos(g));
        self.via[d] == Some((c, Letter::pos(g))) || self.via[c] == Some((d, Letter::neg(g)))
    }
}

/// Letter order used by the default breadth-first search: `a, A, b, B, …`.
pub fn default_letter_order(num_generators: usize) -> Vec<Letter> {
    (0..num_generators).flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect()
}

pub fn schreier_transversal(h: &CosetTable) -> Transversal {
    schreier_transversal_with_order(h, &default_letter_order(h.num_generators()))
        .expect("default letter order covers every letter")
}

/// Breadth-first transversal exploring letters in the given order. The order
/// must contain every generator and inverse exactly once.
pub fn schreier_transversal_with_order(h: &CosetTable, order: &[Letter]) -> Result<Transversal> {
    let mut expected = default_letter_order(h.num_generators());
    let mut given = order.to_vec();
    expected.sort();
    given.sort();
    if expected != given {
        return Err(Error::Input("letter order must list every letter exactly once".into()));
    }
    let n = h.degree();
    let mut reps: Vec<Option<Word>> = vec![None; n];
    let mut via = vec![None; n];
    reps[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for &l in order {
            let d = h.act(c, l);
            if reps[d].is_none() {
                let mut w = reps[c].clone().expect("visited");
                w.push(l);
                reps[d] = Some(w);
                via[d] = Some((c, l));
                queue.push_back(d);
            }
        }
    }
    Ok(Transversal {
        reps: reps.into_iter().map(|w| w.expect("transitive action")).collect(),
        via,
    })
}

/// The Reidemeister–Schreier rewriting process for one subgroup and one
/// transversal. Subgroup generators are the non-tree edges `(c, g)`, numbered
/// with `c` major and `g` minor.
#[derive(Clone, Debug)]
pub struct Rewriting {
    table: CosetTable,
    transversal: Transversal,
    /// `edge_gen[g][c]`: subgroup generator of the edge `(c, g)`, if any.
    edge_gen: Vec<Vec<Option<u32>>>,
    edges: Vec<(usize, usize)>,
    presentation: Arc<FinitePresentation>,
}

impl Rewriting {
    pub fn new(h: &CosetTable) -> Self {
        Rewriting::with_transversal(h, schreier_transversal(h))
    }

    pub fn with_transversal(h: &CosetTable, transversal: Transversal) -> Self {
        let (n, r) = (h.degree(), h.num_generators());
        let mut edge_gen = vec![vec![None; n]; r];
        let mut edges = Vec::new();
        for c in 0..n {
            for (g, slot) in edge_gen.iter_mut().enumerate() {
                if !transversal.is_tree_edge(h, c, g) {
                    slot[c] = Some(edges.len() as u32);
                    edges.push((c, g));
                }
            }
        }
        let mut rw = Rewriting {
            table: h.clone(),
            transversal,
            edge_gen,
            edges,
            presentation: Arc::new(FinitePresentation::with_default_names(0, vec![]).expect("empty presentation")),
        };
        let relators = (0..n)
            .flat_map(|c| h.parent().relators().iter().map(move |rel| (c, rel)))
            .map(|(c, rel)| rw.rewrite_from(c, rel))
            .collect();
        rw.presentation = Arc::new(
            FinitePresentation::new(default_names(rw.edges.len()), relators).expect("rewritten relators in range"),
        );
        rw
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    /// Presentation of the subgroup on the Schreier generators.
    pub fn presentation(&self) -> &Arc<FinitePresentation> {
        &self.presentation
    }

    /// Subgroup generator attached to the edge leaving coset `c` along
    /// generator `g`, or `None` for tree edges.
    pub fn edge_generator(&self, c: usize, g: usize) -> Option<usize> {
        self.edge_gen[g][c].map(|k| k as usize)
    }

    /// Rewrites the path of `w` starting at coset `c` in the subgroup
    /// generators.
    pub fn rewrite_from(&self, c: usize, w: &Word) -> Word {
        let mut out = Word::identity();
        let mut x = c;
        for &l in w.letters() {
            if l.inverse {
                let y = self.table.act(x, l);
                if let Some(k) = self.edge_gen[l.generator][y] {
                    out.push(Letter::neg(k as usize));
                }
                x = y;
            } else {
                if let Some(k) = self.edge_gen[l.generator][x] {
                    out.push(Letter::pos(k as usize));
                }
                x = self.table.act(x, l);
            }
        }
        out
    }

    /// Rewrites an element of the subgroup; errors if `w` is not in it.
    pub fn rewrite_word(&self, w: &Word) -> Result<Word> {
        w.check_range(self.table.num_generators())?;
        if !self.table.contains_word(w) {
            return Err(Error::Input("word is not in the subgroup".into()));
        }
        Ok(self.rewrite_from(0, w))
    }

    /// Subgroup generator `k` as a word in the parent: `rep(c)·g·rep(c·g)⁻¹`.
    pub fn schreier_generator(&self, k: usize) -> Word {
        let (c, g) = self.edges[k];
        let d = self.table.act(c, Letter::pos(g));
        &(self.transversal.representative(c) * &Word::generator(g)) * &self.transversal.representative(d).inverse()
    }

    pub fn num_subgroup_generators(&self) -> usize {
        self.edges.len()
    }
}

/// All Schreier generators of `H` as parent words, in subgroup-generator
/// order.
pub fn schreier_generators(h: &CosetTable) -> Vec<Word> {
    let rw = Rewriting::new(h);
    (0..rw.num_subgroup_generators()).map(|k| rw.schreier_generator(k)).collect()
}

/// Presentation of `H` with `n(r − 1) + 1` generators and one rewritten
/// relator per (coset, relator) pair, empty ones dropped.
pub fn rewrite_presentation(h: &CosetTable) -> FinitePresentation {
    Rewriting::new(h).presentation().as_ref().clone()
}

/// `n·(d_G − 1) + 1`.
pub fn rs_rank_bound(d_g: u64, n: u64) -> Result<u128> {
    if d_g == 0 || n == 0 {
        return Err(Error::Input("rank bound needs d_G ≥ 1 and n ≥ 1".into()));
    }
    Ok(u128::from(n) * u128::from(d_g - 1) + 1)
}

/// `(b_1, generators after Tietze reduction)`; the rank lies in between.
pub fn rank_interval(p_sub: &FinitePresentation, hom: &HomologySummary) -> Result<(usize, usize)> {
    let upper = tietze_reduce(p_sub).num_generators();
    if hom.b1 > upper {
        return Err(Error::Internal(format!("b1 = {} exceeds generator count {upper}", hom.b1)));
    }
    Ok((hom.b1, upper))
}

/// Lifts `K ≤ H` to a table over `H`'s parent, where `outer` is `H ≤ P`,
/// `rw` its rewriting and `inner` is `K` over `rw`'s presentation. States are
/// pairs `(coset of H, coset of K in H)`.
pub fn induce(rw: &Rewriting, inner: &CosetTable, cap: usize) -> Result<CosetTable> {
    if inner.parent().as_ref() != rw.presentation().as_ref() {
        return Err(Error::Input("inner table is not over the rewritten presentation".into()));
    }
    let outer = rw.table();
    CosetTable::from_orbit(
        outer.parent().clone(),
        (0u32, 0u32),
        |&(c, x), g| {
            let d = outer.generator_action(g)[c as usize];
            let y = match rw.edge_gen[g][c as usize] {
                Some(k) => inner.generator_action(k as usize)[x as usize],
                None => x,
            };
            (d, y)
        },
        cap,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset_actions::{subgroup_from_abelian_quotient, AbelianTargetMap};
    use crate::homology::homology_summary;
    use crate::presentations::{mk_free_group, mk_surface_group};

    fn kernel(p: &Arc<FinitePresentation>, moduli: Vec<u64>, images: Vec<Vec<i64>>) -> CosetTable {
        subgroup_from_abelian_quotient(p, &AbelianTargetMap::new(moduli, images).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn transversal_examples() {
        let f2 = Arc::new(mk_free_group(2).unwrap());
        let t = schreier_transversal(&CosetTable::trivial(f2.clone()));
        assert_eq!(t.representatives(), &[Word::identity()]);

        let k = kernel(&f2, vec![2], vec![vec![1], vec![0]]);
        let t = schreier_transversal(&k);
        assert_eq!(t.representatives(), &[Word::identity(), Word::generator(0)]);

        let k = kernel(&f2, vec![2, 2], vec![vec![1, 0], vec![0, 1]]);
        let t = schreier_transversal(&k);
        let mut got: Vec<String> = t.representatives().iter().map(|w| f2.format_word(w)).collect();
        got.sort();
        // BFS over a, A, b, B reaches the fourth coset through a·b
        assert_eq!(got, vec!["1", "a", "ab", "b"]);
    }

    #[test]
    fn transversal_is_prefix_closed_and_correct() {
        let s2 = Arc::new(mk_surface_group(2, 0));
        let k = kernel(&s2, vec![2; 4], (0..4).map(|g| (0..4).map(|j| i64::from(g == j)).collect()).collect());
        let t = schreier_transversal(&k);
        for (c, w) in t.representatives().iter().enumerate() {
            assert_eq!(k.trace(0, w), c);
            for cut in 0..w.len() {
                let prefix = Word::from_letters(w.letters()[..cut].iter().copied());
                assert!(t.representatives().contains(&prefix));
            }
        }
    }

    #[test]
    fn nielsen_schreier_counts() {
        let f2 = Arc::new(mk_free_group(2).unwrap());
        let p = rewrite_presentation(&kernel(&f2, vec![2], vec![vec![1], vec![0]]));
        assert_eq!((p.num_generators(), p.relators().len()), (3, 0));
        let p = rewrite_presentation(&kernel(&f2, vec![4], vec![vec![1], vec![0]]));
        assert_eq!((p.num_generators(), p.relators().len()), (5, 0));
    }

    #[test]
    fn surface_cover_betti() {
        let s2 = Arc::new(mk_surface_group(2, 0));
        let k = kernel(&s2, vec![2; 4], (0..4).map(|g| (0..4).map(|j| i64::from(g == j)).collect()).collect());
        let p = rewrite_presentation(&k);
        assert_eq!(p.num_generators(), 16 * 3 + 1);
        assert_eq!(p.relators().len(), 16);
        let h = homology_summary(&p, &[2]).unwrap();
        // Euler characteristic: 2 − 16·(2 − 2·2)
        assert_eq!(h.b1, (2 - 16 * (2 - 2 * 2)) as usize);
        assert_eq!(h.torsion_order, 1u32.into());
    }

    #[test]
    fn schreier_generators_lie_in_subgroup_and_rewrite_back() {
        let f2 = Arc::new(mk_free_group(2).unwrap());
        let h = CosetTable::from_permutations(f2, vec![vec![1, 0, 2], vec![1, 2, 0]], 0).unwrap();
        let rw = Rewriting::new(&h);
        for k in 0..rw.num_subgroup_generators() {
            let s = rw.schreier_generator(k);
            assert!(h.contains_word(&s));
            assert_eq!(rw.rewrite_word(&s).unwrap(), Word::generator(k));
        }
        assert!(rw.rewrite_word(&Word::generator(0)).is_err());
    }

    #[test]
    fn homology_independent_of_transversal() {
        let s2 = Arc::new(mk_surface_group(2, 0));
        let k = kernel(&s2, vec![3], vec![vec![1], vec![2], vec![0], vec![1]]);
        let mut order = default_letter_order(4);
        order.reverse();
        let other = Rewriting::with_transversal(&k, schreier_transversal_with_order(&k, &order).unwrap());
        let h1 = homology_summary(&rewrite_presentation(&k), &[2, 3]).unwrap();
        let h2 = homology_summary(other.presentation(), &[2, 3]).unwrap();
        assert_eq!(h1, h2);
        assert!(schreier_transversal_with_order(&k, &order[1..]).is_err());
    }

    #[test]
    fn rank_bounds() {
        assert_eq!(rs_rank_bound(2, 3).unwrap(), 4);
        assert_eq!(rs_rank_bound(1, 10).unwrap(), 1);
        assert_eq!(rs_rank_bound(4, 16).unwrap(), 49);
        assert!(rs_rank_bound(0, 1).is_err());

        let f3 = mk_free_group(3).unwrap();
        assert_eq!(rank_interval(&f3, &homology_summary(&f3, &[]).unwrap()).unwrap(), (3, 3));
        let s2 = mk_surface_group(2, 0);
        assert_eq!(rank_interval(&s2, &homology_summary(&s2, &[]).unwrap()).unwrap(), (4, 4));
        let fig8 = crate::presentations::catalog_entry("fig8").unwrap().presentation;
        assert_eq!(rank_interval(&fig8, &homology_summary(&fig8, &[]).unwrap()).unwrap(), (1, 2));
    }

    #[test]
    fn induced_kernel_matches_direct_meet() {
        // K = kernel of H → Z/2 sending every Schreier generator to 1, lifted
        // to F2, is contained in H and has index 2·[F2 : H]
        let f2 = Arc::new(mk_free_group(2).unwrap());
        let h = kernel(&f2, vec![3], vec![vec![1], vec![0]]);
        let rw = Rewriting::new(&h);
        let sub = rw.presentation().clone();
        let inner = kernel(&sub, vec![2], vec![vec![1]; sub.num_generators()]);
        let lifted = induce(&rw, &inner, 1000).unwrap();
        assert_eq!(lifted.degree(), 6);
        for s in schreier_generators(&lifted) {
            assert!(h.contains_word(&s));
            assert!(inner.contains_word(&rw.rewrite_word(&s).unwrap()));
        }
    }
}
