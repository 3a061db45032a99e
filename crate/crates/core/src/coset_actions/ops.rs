use super::table::CosetTable;
use crate::error::{Error, Result};

/// Default cap on the order of permutation groups enumerated by
/// [`normal_core`].
pub const DEFAULT_MAX_IMAGE: usize = 1_000_000;

/// `A ∩ B`, as the orbit of `(0, 0)` in the product action.
pub fn meet(a: &CosetTable, b: &CosetTable, cap: usize) -> Result<CosetTable> {
    if !a.same_parent(b) {
        return Err(Error::Input("meet of subgroups of different groups".into()));
    }
    CosetTable::from_orbit(
        a.parent().clone(),
        (0u32, 0u32),
        |&(x, y), g| (a.generator_action(g)[x as usize], b.generator_action(g)[y as usize]),
        cap,
    )
}

/// `H` is normal iff for every coset `c` the action admits a
/// label-preserving automorphism sending the basepoint to `c` (all point
/// stabilizers coincide).
pub fn is_normal(h: &CosetTable) -> bool {
    let n = h.degree();
    let r = h.num_generators();
    let mut map = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    (1..n).all(|c| {
        map.fill(u32::MAX);
        map[0] = c as u32;
        queue.clear();
        queue.push(0usize);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for g in 0..r {
                let act = h.generator_action(g);
                let y = act[x] as usize;
                let image = act[map[x] as usize];
                if map[y] == u32::MAX {
                    map[y] = image;
                    queue.push(y);
                } else if map[y] != image {
                    return false;
                }
            }
        }
        true
    })
}

/// Largest normal subgroup contained in `H`: the kernel of the coset action,
/// realized as the right regular action of the image permutation group.
/// Enumeration stops with a resource error once the group exceeds `cap`
/// elements.
pub fn normal_core(h: &CosetTable, cap: usize) -> Result<CosetTable> {
    if is_normal(h) {
        return Ok(h.clone());
    }
    let n = h.degree() as u32;
    let identity: Vec<u32> = (0..n).collect();
    CosetTable::from_orbit(
        h.parent().clone(),
        identity,
        |perm, g| {
            let act = h.generator_action(g);
            perm.iter().map(|&x| act[x as usize]).collect()
        },
        cap,
    )
    .map_err(|e| match e {
        Error::Resource { .. } => Error::resource("image permutation group order", cap),
        other => other,
    })
}
