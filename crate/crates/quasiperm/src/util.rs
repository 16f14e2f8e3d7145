//! Small bitmask, union-find, and permutation helpers used across modules.
//!
//! Ground sets are subsets of {1..n} stored as `u32` bitmasks where bit
//! `i` (0-based) represents element `i + 1`.

/// Elements of a mask as a sorted 1-based list.
pub(crate) fn mask_elements(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out.push(b + 1);
        m &= m - 1;
    }
    out
}

/// Mask built from 1-based elements. Returns `None` on a zero or oversized element.
pub(crate) fn mask_from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Option<u32> {
    let mut mask = 0u32;
    for e in elements {
        if e == 0 || e > 32 {
            return None;
        }
        mask |= 1 << (e - 1);
    }
    Some(mask)
}

/// Scatter the bits of `t` into the set-bit positions of `mask`, LSB first.
///
/// As `t` runs over `1..(1 << mask.count_ones())`, this enumerates every
/// nonempty submask of `mask` in binary-mask order over compressed indices.
pub(crate) fn expand_submask(t: u32, mask: u32) -> u32 {
    let mut sub = 0u32;
    let mut bits = mask;
    let mut tt = t;
    while tt != 0 && bits != 0 {
        let low = bits & bits.wrapping_neg();
        if tt & 1 != 0 {
            sub |= low;
        }
        bits &= bits - 1;
        tt >>= 1;
    }
    sub
}

/// Plain union-find over `0..n`.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Group the bits of `mask` into connected classes: every mask in `links`
/// glues all of its elements together. Returns the class masks sorted by
/// lowest element.
pub(crate) fn mask_components(mask: u32, links: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut uf = UnionFind::new(32);
    for link in links {
        let l = link & mask;
        if l == 0 {
            continue;
        }
        let first = l.trailing_zeros() as usize;
        let mut m = l & (l - 1);
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            uf.union(first, b);
            m &= m - 1;
        }
    }
    let mut classes: Vec<(usize, u32)> = Vec::new();
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        let root = uf.find(b);
        match classes.iter_mut().find(|(r, _)| *r == root) {
            Some((_, class)) => *class |= 1 << b,
            None => classes.push((root, 1 << b)),
        }
        m &= m - 1;
    }
    let mut out: Vec<u32> = classes.into_iter().map(|(_, c)| c).collect();
    out.sort_by_key(|c| c.trailing_zeros());
    out
}

/// Call `f` with every relabeling consistent with the given groups.
///
/// `groups` partitions old indices `0..m`; new labels are assigned so the
/// i-th group occupies the consecutive block of new indices following the
/// groups before it. `f` receives `perm` with `perm[old] = new`.
pub(crate) fn for_each_grouped_permutation(groups: &[Vec<usize>], f: &mut impl FnMut(&[usize])) {
    let m: usize = groups.iter().map(|g| g.len()).sum();
    let mut perm = vec![0usize; m];
    fn rec(
        groups: &[Vec<usize>],
        gi: usize,
        base: usize,
        perm: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if gi == groups.len() {
            f(perm);
            return;
        }
        let group = &groups[gi];
        let k = group.len();
        // Permute this group's members over new labels base..base+k.
        let mut order: Vec<usize> = (0..k).collect();
        permute_rec(&mut order, 0, &mut |ord: &[usize]| {
            for (slot, &pos) in ord.iter().enumerate() {
                perm[group[pos]] = base + slot;
            }
            rec(groups, gi + 1, base + k, perm, f);
        });
    }
    fn permute_rec(order: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize])) {
        if at == order.len() {
            f(order);
            return;
        }
        for i in at..order.len() {
            order.swap(at, i);
            permute_rec(order, at + 1, f);
            order.swap(at, i);
        }
    }
    rec(groups, 0, 0, &mut perm, f);
}

/// Remap the set bits of `mask` through `perm` (`perm[old] = new`, 0-based).
pub(crate) fn remap_mask(mask: u32, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    let mut m = mask;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        out |= 1 << perm[b];
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_expansion_orders_subsets() {
        let mask = 0b1011u32; // elements 1,2,4
        let subs: Vec<u32> = (1..8).map(|t| expand_submask(t, mask)).collect();
        assert_eq!(subs, vec![0b0001, 0b0010, 0b0011, 0b1000, 0b1001, 0b1010, 0b1011]);
    }

    #[test]
    fn components_glue_links() {
        let comps = mask_components(0b11111, [0b00011, 0b00110].into_iter());
        assert_eq!(comps, vec![0b00111, 0b01000, 0b10000]);
    }

    #[test]
    fn grouped_permutations_respect_groups() {
        let groups = vec![vec![0, 2], vec![1]];
        let mut seen = Vec::new();
        for_each_grouped_permutation(&groups, &mut |perm| seen.push(perm.to_vec()));
        assert_eq!(seen.len(), 2);
        // Old index 1 always maps to new label 2 (its group is second).
        assert!(seen.iter().all(|p| p[1] == 2));
    }
}
