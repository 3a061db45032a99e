use super::presentation::FinitePresentation;
use super::word::Word;

/// Eliminates generators that occur exactly once in some relator and drops
/// relators that become trivial.
///
/// Relators are cyclically reduced first. Among the available eliminations
/// the shortest relator wins, then the smallest generator index, so the
/// output is deterministic. Every step removes a generator, so the loop
/// terminates; the output generator count bounds the rank from above.
pub fn tietze_reduce(p: &FinitePresentation) -> FinitePresentation {
    let mut num = p.num_generators();
    let mut names: Vec<String> = p.names().to_vec();
    let mut rels: Vec<Word> = p
        .relators()
        .iter()
        .map(Word::cyclically_reduced)
        .filter(|r| !r.is_empty())
        .collect();

    while let Some((ri, pos)) = find_elimination(&rels, num) {
        let rel = rels.swap_remove(ri);
        let l = rel.letters()[pos];
        let x = l.generator;
        // rel = u x^{±1} v  ⇒  x = u⁻¹ v⁻¹  or  x = v u
        let u = Word::from_letters(rel.letters()[..pos].iter().copied());
        let v = Word::from_letters(rel.letters()[pos + 1..].iter().copied());
        let value = if l.inverse { &v * &u } else { (&v * &u).inverse() };

        // the last generator takes over slot x
        let last = num - 1;
        let mut relabel: Vec<Word> = (0..num).map(Word::generator).collect();
        relabel[last] = Word::generator(x);
        let mut subst = relabel.clone();
        subst[x] = value.substitute(&relabel);

        rels = rels
            .iter()
            .map(|r| r.substitute(&subst).cyclically_reduced())
            .filter(|r| !r.is_empty())
            .collect();
        names.swap(x, last);
        names.pop();
        num -= 1;
    }

    FinitePresentation::new(names, rels).expect("tietze output is well formed")
}

fn find_elimination(rels: &[Word], num: usize) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..rels.len()).collect();
    order.sort_by_key(|&i| (rels[i].len(), i));
    let mut count = vec![0usize; num];
    for ri in order {
        let r = &rels[ri];
        for l in r.letters() {
            count[l.generator] += 1;
        }
        let best = r
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, l)| count[l.generator] == 1)
            .min_by_key(|(_, l)| l.generator)
            .map(|(pos, _)| pos);
        for l in r.letters() {
            count[l.generator] = 0;
        }
        if best.is_some() {
            return best.map(|pos| (ri, pos));
        }
    }
    None
}
