//! Building sets and their nestohedra.
//!
//! A building set on a ground set is a family of nonempty subsets containing
//! every singleton and closed under unions of intersecting members. It
//! encodes the nestohedron `P_B = sum of simplices over members`. The
//! weighted enumerator is computed two ways: a literal flag sum (ranks via
//! chain minors) and a recurrence over restrictions, memoized under
//! canonical relabeling. Minors keep their original labels; the ground set
//! of a minor is an arbitrary subset of {1..32} stored as a bitmask.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flags::Flag;
use crate::invariants::{fq_from_provider, FaceKey, FaceProvider, RankProvider};
use crate::qsym::{Composition, QPolynomial, QSymExpr};
use crate::util::{
    for_each_grouped_permutation, mask_components, mask_elements, mask_from_elements, remap_mask,
};

/// Memo key: ground size plus canonically relabeled, sorted member masks.
pub type CanonicalKey = (usize, Vec<u32>);

/// A building set over a bitmask ground set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BuildingSet {
    ground: u32,
    members: Vec<u32>, // sorted ascending as integers, deduplicated
}

impl BuildingSet {
    /// Build and validate a building set on {1..n} from 1-based subsets.
    pub fn new(n: usize, members: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidBuildingSet(format!(
                "unsupported ground size {n}"
            )));
        }
        let ground = ((1u64 << n) - 1) as u32;
        let mut masks = Vec::with_capacity(members.len());
        for m in members {
            let mask = mask_from_elements(m.iter().copied())
                .filter(|&x| x <= ground)
                .ok_or_else(|| {
                    Error::InvalidBuildingSet(format!("member {m:?} outside ground set 1..={n}"))
                })?;
            masks.push(mask);
        }
        BuildingSet::from_masks(ground, masks)
    }

    /// Build and validate a building set with an explicit bitmask ground.
    pub fn from_masks(ground: u32, mut members: Vec<u32>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.first() == Some(&0) {
            return Err(Error::InvalidBuildingSet("empty member".into()));
        }
        for &m in &members {
            if m & !ground != 0 {
                return Err(Error::InvalidBuildingSet(format!(
                    "member {:?} outside ground set",
                    mask_elements(m)
                )));
            }
        }
        let bs = BuildingSet { ground, members };
        bs.validate()?;
        Ok(bs)
    }

    fn validate(&self) -> Result<()> {
        let mut g = self.ground;
        while g != 0 {
            let single = g & g.wrapping_neg();
            if !self.contains(single) {
                return Err(Error::InvalidBuildingSet(format!(
                    "missing singleton {{{}}}",
                    single.trailing_zeros() + 1
                )));
            }
            g &= g - 1;
        }
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                if a & b != 0 && !self.contains(a | b) {
                    return Err(Error::InvalidBuildingSet(format!(
                        "union closure fails for {:?} and {:?}",
                        mask_elements(a),
                        mask_elements(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn from_masks_unchecked(ground: u32, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        BuildingSet { ground, members }
    }

    /// The empty building set (ground and member lists empty).
    pub fn empty() -> Self {
        BuildingSet {
            ground: 0,
            members: Vec::new(),
        }
    }

    /// Singletons only: the nestohedron is a point.
    pub fn discrete(n: usize) -> Result<Self> {
        BuildingSet::new(n, &(1..=n).map(|i| vec![i]).collect::<Vec<_>>())
    }

    /// Every nonempty subset of {1..n}: the permutohedron.
    pub fn boolean(n: usize) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(Error::InvalidBuildingSet(format!(
                "unsupported ground size {n}"
            )));
        }
        let ground = ((1u64 << n) - 1) as u32;
        Ok(BuildingSet::from_masks_unchecked(
            ground,
            (1..=ground).collect(),
        ))
    }

    /// Singletons plus the full ground set: the simplex.
    pub fn simplex(n: usize) -> Result<Self> {
        let mut members: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
        members.push((1..=n).collect());
        BuildingSet::new(n, &members)
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.count_ones() as usize
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    /// Members as sorted 1-based element lists.
    pub fn member_sets(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|&m| mask_elements(m)).collect()
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    /// Whether only singletons are present.
    pub fn is_discrete(&self) -> bool {
        self.members.len() == self.ground_size()
    }

    /// Connected components: the inclusion-maximal members, pairwise
    /// disjoint and covering the ground set. Sorted by lowest element.
    pub fn components(&self) -> Vec<u32> {
        mask_components(self.ground, self.members.iter().copied())
    }

    pub fn connected(&self) -> bool {
        self.ground != 0 && self.contains(self.ground)
    }

    /// Number of connected components.
    pub fn c(&self) -> usize {
        self.components().len()
    }

    /// Rank: ground size minus number of components (the dimension of the
    /// nestohedron).
    pub fn rk(&self) -> usize {
        self.ground_size() - self.c()
    }

    /// Restriction `B|_S = { I in B : I ⊆ S }`, keeping original labels.
    pub fn restriction(&self, s: u32) -> Result<BuildingSet> {
        if s == 0 {
            return Err(Error::InvalidArgument("restriction to empty set".into()));
        }
        if s & !self.ground != 0 {
            return Err(Error::InvalidArgument(
                "restriction set is not a subset of the ground set".into(),
            ));
        }
        Ok(BuildingSet {
            ground: s,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| m & !s == 0)
                .collect(),
        })
    }

    /// Contraction `B/S` on ground `V \ S`: all nonempty traces `I \ S` of
    /// members. `B/∅ = B`.
    pub fn contraction(&self, s: u32) -> Result<BuildingSet> {
        if s & !self.ground != 0 {
            return Err(Error::InvalidArgument(
                "contraction set is not a subset of the ground set".into(),
            ));
        }
        if s == self.ground {
            return Err(Error::InvalidArgument(
                "contraction by the whole ground set".into(),
            ));
        }
        let mut members: Vec<u32> = self
            .members
            .iter()
            .map(|&m| m & !s)
            .filter(|&m| m != 0)
            .collect();
        members.sort_unstable();
        members.dedup();
        Ok(BuildingSet {
            ground: self.ground & !s,
            members,
        })
    }

    /// The chain minors `B|_{I_j} / I_{j-1}` of a flag on {1..n}, listed in
    /// block order. Requires the ground set to be exactly {1..n}.
    pub fn quotient_by_chain(&self, flag: &Flag) -> Result<Vec<BuildingSet>> {
        let n = self.ground_size();
        if flag.n() != n || self.ground != ((1u64 << n) - 1) as u32 {
            return Err(Error::InvalidArgument(
                "flag does not match the ground set".into(),
            ));
        }
        let prefixes = flag.prefix_unions();
        let mut minors = Vec::with_capacity(prefixes.len());
        let mut prev = 0u32;
        for &pref in &prefixes {
            let restricted = self.restriction(pref)?;
            let minor = if prev == 0 {
                restricted
            } else {
                restricted.contraction(prev)?
            };
            minors.push(minor);
            prev = pref;
        }
        Ok(minors)
    }

    /// Rank of a flag: the sum of the chain minor ranks, equivalently
    /// `n - c(B/flag)`.
    pub fn chain_rank(&self, flag: &Flag) -> Result<usize> {
        Ok(self
            .quotient_by_chain(flag)?
            .iter()
            .map(BuildingSet::rk)
            .sum())
    }

    /// The weighted enumerator as a literal flag sum.
    pub fn fq_flag_sum(&self) -> Result<QSymExpr> {
        if self.ground == 0 {
            return Ok(QSymExpr::unit());
        }
        let relabeled;
        let base = if self.is_contiguous() {
            self
        } else {
            relabeled = self.relabeled();
            &relabeled
        };
        let provider = BuildingSetProvider::new(base)?;
        fq_from_provider(&provider)
    }

    /// The weighted enumerator via the restriction recurrence
    /// `F_q(B) = sum over proper subsets I of q^(n-|I|-1) (F_q(B|_I))_(n-|I|)`
    /// for connected `B`, with multiplicativity over components. Memoized
    /// under canonical relabeling.
    pub fn fq_recurrence(&self) -> Result<QSymExpr> {
        let mut memo = HashMap::new();
        Ok(fq_recurrence_impl(self, &mut memo))
    }

    /// The f-polynomial via the same recurrence with `M` erased:
    /// `f(B, q) = sum over proper subsets I of q^(n-|I|-1) f(B|_I, q)`,
    /// multiplicative over components, `f = 1` for ground size <= 1.
    pub fn fpoly_recurrence(&self) -> QPolynomial {
        let mut memo = HashMap::new();
        fpoly_recurrence_impl(self, &mut memo)
    }

    /// Count flags of the given type all of whose chain minors are discrete
    /// (these are exactly the rank-zero flags, i.e. the vertices).
    pub fn splitting_chain_count(&self, alpha: &Composition) -> BigInt {
        fn rec(b: &BuildingSet, parts: &[u32]) -> BigInt {
            if parts.is_empty() {
                return if b.ground == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::zero()
                };
            }
            let want = parts[0];
            let mut acc = BigInt::zero();
            // Enumerate submasks of the ground set of the right size.
            let ground = b.ground;
            let mut s = ground;
            loop {
                if s != 0 && s.count_ones() == want {
                    let restricted = b.restriction(s).expect("submask of ground");
                    if restricted.is_discrete() {
                        let rest = if s == ground {
                            BuildingSet::empty()
                        } else {
                            b.contraction(s).expect("proper submask")
                        };
                        acc += rec(&rest, &parts[1..]);
                    }
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & ground;
            }
            acc
        }
        if alpha.weight() as usize != self.ground_size() {
            return BigInt::zero();
        }
        rec(self, alpha.parts())
    }

    /// 1-skeleton of the dual of the nestohedron boundary: vertices are the
    /// proper members, with an edge when one contains the other or they are
    /// disjoint with union outside the building set. Requires connectivity.
    pub fn nested_complex_skeleton(&self) -> Result<Skeleton> {
        if !self.connected() {
            return Err(Error::InvalidArgument(
                "skeleton requires a connected building set".into(),
            ));
        }
        let vertices: Vec<u32> = self
            .members
            .iter()
            .copied()
            .filter(|&m| m != self.ground)
            .collect();
        let k = vertices.len();
        let mut adjacency = vec![Vec::new(); k];
        for i in 0..k {
            for j in (i + 1)..k {
                let (a, b) = (vertices[i], vertices[j]);
                let compatible = (a & b == a)
                    || (a & b == b)
                    || (a & b == 0 && !self.contains(a | b));
                if compatible {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        Ok(Skeleton {
            vertices,
            adjacency,
        })
    }

    fn is_contiguous(&self) -> bool {
        let n = self.ground_size();
        self.ground == ((1u64 << n) - 1) as u32
    }

    /// Order-preserving relabeling of the ground set onto {1..m}.
    pub fn relabeled(&self) -> BuildingSet {
        let elements = mask_elements(self.ground);
        let mut map = [0usize; 32];
        for (new, &old) in elements.iter().enumerate() {
            map[old - 1] = new;
        }
        let mut members: Vec<u32> = self
            .members
            .iter()
            .map(|&m| remap_mask(m, &map))
            .collect();
        members.sort_unstable();
        BuildingSet {
            ground: ((1u64 << elements.len()) - 1) as u32,
            members,
        }
    }

    /// Canonical form under ground relabeling: the lexicographically least
    /// sorted member list over all relabelings, found by brute force over
    /// permutations refined by a per-element invariant.
    pub fn canonical_key(&self) -> CanonicalKey {
        let b = self.relabeled();
        let m = b.ground_size();
        if m == 0 {
            return (0, Vec::new());
        }
        // Group elements by the multiset of sizes of members containing them.
        let mut invariants: Vec<(Vec<u32>, usize)> = (0..m)
            .map(|e| {
                let mut sizes: Vec<u32> = b
                    .members
                    .iter()
                    .filter(|&&mem| mem >> e & 1 == 1)
                    .map(|mem| mem.count_ones())
                    .collect();
                sizes.sort_unstable();
                (sizes, e)
            })
            .collect();
        invariants.sort();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut prev: Option<&Vec<u32>> = None;
        for (inv, e) in &invariants {
            if prev == Some(inv) {
                groups.last_mut().unwrap().push(*e);
            } else {
                groups.push(vec![*e]);
                prev = Some(inv);
            }
        }
        let mut best: Option<Vec<u32>> = None;
        for_each_grouped_permutation(&groups, &mut |perm| {
            let mut relabeled: Vec<u32> =
                b.members.iter().map(|&mem| remap_mask(mem, perm)).collect();
            relabeled.sort_unstable();
            if best.as_ref().is_none_or(|cur| relabeled < *cur) {
                best = Some(relabeled);
            }
        });
        (m, best.unwrap())
    }

    /// Parse the text format: first line `n`, then one member per line as
    /// space-separated 1-based elements.
    pub fn parse(text: &str) -> Result<BuildingSet> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: "empty input".into(),
            })?;
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("expected ground size, found {first:?}"),
        })?;
        let mut members = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut member = Vec::new();
            for tok in line.split_whitespace() {
                let e: usize = tok.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("expected element, found {tok:?}"),
                })?;
                member.push(e);
            }
            members.push(member);
        }
        BuildingSet::new(n, &members)
    }
}

/// Adjacency structure of a dual 1-skeleton.
pub struct Skeleton {
    /// Vertex labels: the proper members of the building set.
    pub vertices: Vec<u32>,
    /// Adjacency lists by vertex index.
    pub adjacency: Vec<Vec<usize>>,
}

impl Skeleton {
    /// Degrees sorted descending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Histogram `(degree, multiplicity)` sorted by descending degree.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for d in self.degrees() {
            match out.last_mut() {
                Some((deg, count)) if *deg == d => *count += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

fn fq_recurrence_impl(b: &BuildingSet, memo: &mut HashMap<CanonicalKey, QSymExpr>) -> QSymExpr {
    if b.ground == 0 {
        return QSymExpr::unit();
    }
    let key = b.canonical_key();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let comps = b.components();
    let n = b.ground_size();
    let result = if comps.len() > 1 {
        let mut acc = QSymExpr::unit();
        for comp in comps {
            let part = fq_recurrence_impl(&b.restriction(comp).expect("component"), memo);
            acc = acc.quasi_shuffle(&part);
        }
        acc
    } else if n == 1 {
        QSymExpr::monomial(Composition::single(1))
    } else {
        let ground = b.ground;
        let mut acc = QSymExpr::zero();
        let mut s = (ground - 1) & ground;
        loop {
            let co_size = (n - s.count_ones() as usize) as u32;
            let inner = if s == 0 {
                QSymExpr::unit()
            } else {
                fq_recurrence_impl(&b.restriction(s).expect("submask"), memo)
            };
            let shifted = inner.shift(co_size).expect("positive shift");
            acc = acc.add(&shifted.scale(&QPolynomial::q_power(co_size as usize - 1)));
            if s == 0 {
                break;
            }
            s = (s - 1) & ground;
        }
        acc
    };
    memo.insert(key, result.clone());
    result
}

pub(crate) fn fpoly_recurrence_impl(
    b: &BuildingSet,
    memo: &mut HashMap<CanonicalKey, QPolynomial>,
) -> QPolynomial {
    if b.ground == 0 {
        return QPolynomial::one();
    }
    let key = b.canonical_key();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let comps = b.components();
    let n = b.ground_size();
    let result = if comps.len() > 1 {
        let mut acc = QPolynomial::one();
        for comp in comps {
            acc = acc.mul(&fpoly_recurrence_impl(
                &b.restriction(comp).expect("component"),
                memo,
            ));
        }
        acc
    } else if n == 1 {
        QPolynomial::one()
    } else {
        let ground = b.ground;
        let mut acc = QPolynomial::zero();
        let mut s = (ground - 1) & ground;
        loop {
            let co_size = n - s.count_ones() as usize;
            let inner = if s == 0 {
                QPolynomial::one()
            } else {
                fpoly_recurrence_impl(&b.restriction(s).expect("submask"), memo)
            };
            acc = acc.add(&inner.mul(&QPolynomial::q_power(co_size - 1)));
            if s == 0 {
                break;
            }
            s = (s - 1) & ground;
        }
        acc
    };
    memo.insert(key, result.clone());
    result
}

/// Flag-rank oracle for a nestohedron, with per-subset component tables and
/// face f-polynomial memoization.
pub struct BuildingSetProvider<'a> {
    bs: &'a BuildingSet,
    n: usize,
    comps_by_subset: Vec<Vec<u32>>,
    face_memo: RefCell<HashMap<FaceKey, QPolynomial>>,
    fpoly_memo: RefCell<HashMap<CanonicalKey, QPolynomial>>,
}

impl<'a> BuildingSetProvider<'a> {
    pub fn new(bs: &'a BuildingSet) -> Result<Self> {
        if !bs.is_contiguous() || bs.ground == 0 {
            return Err(Error::InvalidArgument(
                "provider requires a ground set {1..n}".into(),
            ));
        }
        let n = bs.ground_size();
        let full = bs.ground;
        let mut comps_by_subset = Vec::with_capacity(full as usize + 1);
        for s in 0..=full {
            comps_by_subset.push(mask_components(
                s,
                bs.members.iter().copied().filter(|&m| m & !s == 0),
            ));
        }
        Ok(BuildingSetProvider {
            bs,
            n,
            comps_by_subset,
            face_memo: RefCell::new(HashMap::new()),
            fpoly_memo: RefCell::new(HashMap::new()),
        })
    }
}

impl RankProvider for BuildingSetProvider<'_> {
    fn degree(&self) -> usize {
        self.n
    }

    /// Chain rank via the component tables: for each block, its size minus
    /// the number of components of `B` restricted to the partial union that
    /// meet it.
    fn rank(&self, flag: &Flag) -> usize {
        let mut prefix = 0u32;
        let mut rank = 0usize;
        for &block in flag.block_masks() {
            prefix |= block;
            let meeting = self.comps_by_subset[prefix as usize]
                .iter()
                .filter(|&&c| c & block != 0)
                .count();
            rank += block.count_ones() as usize - meeting;
        }
        rank
    }
}

impl FaceProvider for BuildingSetProvider<'_> {
    /// The face of the flag as a Minkowski sum datum: each member paired
    /// with its trace in the last block it meets (the member's vertex-
    /// maximizing subset for any weight vector realizing the flag).
    fn face_key(&self, flag: &Flag) -> FaceKey {
        let blocks = flag.block_masks();
        self.bs
            .members
            .iter()
            .map(|&member| {
                let last = blocks
                    .iter()
                    .rev()
                    .find(|&&b| b & member != 0)
                    .expect("blocks cover the ground set");
                ((member as u64) << 32) | (member & last) as u64
            })
            .collect()
    }

    /// f-polynomial of the face: the product of the chain-minor
    /// f-polynomials, memoized by face key and by canonical minor.
    fn face_fpoly(&self, flag: &Flag) -> QPolynomial {
        let key = self.face_key(flag);
        if let Some(hit) = self.face_memo.borrow().get(&key) {
            return hit.clone();
        }
        let minors = self
            .bs
            .quotient_by_chain(flag)
            .expect("flag matches ground set");
        let mut acc = QPolynomial::one();
        {
            let mut memo = self.fpoly_memo.borrow_mut();
            for minor in &minors {
                acc = acc.mul(&fpoly_recurrence_impl(minor, &mut memo));
            }
        }
        self.face_memo.borrow_mut().insert(key, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{antipode_face_expansion, euler_fiber_report, fpolynomial};

    fn path3() -> BuildingSet {
        // Connected subsets of the path 1-2-3.
        BuildingSet::new(3, &[vec![1], vec![2], vec![3], vec![1, 2], vec![2, 3], vec![1, 2, 3]])
            .unwrap()
    }

    #[test]
    fn validation_reports_failing_axiom() {
        let err = BuildingSet::new(2, &[vec![1]]).unwrap_err();
        assert!(err.to_string().contains("singleton {2}"), "{err}");
        let err =
            BuildingSet::new(3, &[vec![1], vec![2], vec![3], vec![1, 2], vec![2, 3]]).unwrap_err();
        assert!(err.to_string().contains("union closure"), "{err}");
    }

    #[test]
    fn restriction_and_contraction_examples() {
        let b = path3();
        let restricted = b.restriction(0b101).unwrap();
        assert_eq!(restricted.members(), &[0b001, 0b100]);
        let contracted = b.contraction(0b010).unwrap();
        assert_eq!(contracted.members(), &[0b001, 0b100, 0b101]);
        assert!(b.restriction(0).is_err());
        assert!(b.contraction(0b111).is_err());
        assert_eq!(b.contraction(0).unwrap(), b);
    }

    #[test]
    fn components_and_rank() {
        let b = BuildingSet::discrete(3).unwrap();
        assert_eq!(b.components(), vec![0b001, 0b010, 0b100]);
        assert_eq!(b.rk(), 0);
        assert!(!b.connected());
        let p = path3();
        assert_eq!(p.components(), vec![0b111]);
        assert_eq!(p.rk(), 2);
        assert!(p.connected());
    }

    #[test]
    fn chain_minors_of_the_simplex() {
        // For the simplex building set, a flag's rank is the size of its
        // last block minus one.
        let b = BuildingSet::simplex(4).unwrap();
        for flag in crate::flags::enumerate_flags(4).unwrap() {
            let minors = b.quotient_by_chain(&flag).unwrap();
            assert_eq!(minors.len(), flag.num_blocks());
            let last = *flag.block_masks().last().unwrap();
            assert_eq!(
                b.chain_rank(&flag).unwrap(),
                last.count_ones() as usize - 1
            );
        }
    }

    #[test]
    fn fq_of_the_square() {
        // Boolean building set on two elements: a segment.
        let b = BuildingSet::boolean(2).unwrap();
        let f = b.fq_flag_sum().unwrap();
        let mut expected = QSymExpr::term(
            Composition::new(vec![1, 1]).unwrap(),
            QPolynomial::constant(2),
        );
        expected.add_term(Composition::single(2), &QPolynomial::q_power(1));
        assert_eq!(f, expected);
        assert_eq!(b.fq_recurrence().unwrap(), expected);
    }

    #[test]
    fn recurrence_matches_flag_sum_on_small_corpus() {
        let corpus = vec![
            BuildingSet::discrete(4).unwrap(),
            BuildingSet::simplex(4).unwrap(),
            BuildingSet::boolean(4).unwrap(),
            path3(),
        ];
        for b in &corpus {
            assert_eq!(b.fq_recurrence().unwrap(), b.fq_flag_sum().unwrap());
        }
    }

    #[test]
    fn fq_is_multiplicative_over_disjoint_supports() {
        // Discrete union of a path on {1,2} and a singleton {3}.
        let b = BuildingSet::new(3, &[vec![1], vec![2], vec![3], vec![1, 2]]).unwrap();
        let f = b.fq_flag_sum().unwrap();
        let seg = BuildingSet::boolean(2).unwrap().fq_flag_sum().unwrap();
        let point = QSymExpr::m1_pow(1);
        assert_eq!(f, seg.quasi_shuffle(&point));
    }

    #[test]
    fn hexagon_fpolynomial() {
        // The permutohedron on three elements is a hexagon: f = 6 + 6q + q^2.
        let b = BuildingSet::boolean(3).unwrap();
        assert_eq!(
            b.fpoly_recurrence(),
            QPolynomial::from_i64_coeffs(&[6, 6, 1])
        );
        assert_eq!(
            fpolynomial(&b.fq_flag_sum().unwrap()).unwrap(),
            QPolynomial::from_i64_coeffs(&[6, 6, 1])
        );
    }

    #[test]
    fn splitting_chain_counts() {
        let b = BuildingSet::boolean(2).unwrap();
        assert_eq!(
            b.splitting_chain_count(&Composition::single(2)),
            BigInt::zero()
        );
        assert_eq!(
            b.splitting_chain_count(&Composition::new(vec![1, 1]).unwrap()),
            BigInt::from(2)
        );
        // Wrong weight: no chains.
        assert_eq!(
            b.splitting_chain_count(&Composition::single(3)),
            BigInt::zero()
        );
    }

    #[test]
    fn splitting_chains_match_q0_coefficients() {
        for b in [BuildingSet::boolean(4).unwrap(), BuildingSet::simplex(4).unwrap(), path3()] {
            let f = b.fq_flag_sum().unwrap();
            let at0 = f.eval_q(0);
            for alpha in crate::qsym::compositions(b.ground_size() as u32) {
                let count = b.splitting_chain_count(&alpha);
                let coeff = at0.get(&alpha).cloned().unwrap_or_else(BigInt::zero);
                assert_eq!(count, coeff, "type {alpha}");
            }
        }
    }

    #[test]
    fn simplex_skeleton_is_a_triangle() {
        let b = BuildingSet::simplex(3).unwrap();
        let sk = b.nested_complex_skeleton().unwrap();
        assert_eq!(sk.vertices.len(), 3);
        assert_eq!(sk.degree_histogram(), vec![(2, 3)]);
    }

    #[test]
    fn skeleton_requires_connected() {
        assert!(BuildingSet::discrete(2)
            .unwrap()
            .nested_complex_skeleton()
            .is_err());
    }

    #[test]
    fn canonical_key_identifies_relabelings() {
        // Path 1-2-3 relabeled by swapping 1 and 2 gives the path 2-1-3.
        let a = path3();
        let b = BuildingSet::new(
            3,
            &[vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![1, 2, 3]],
        )
        .unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        let star = BuildingSet::simplex(3).unwrap();
        assert_ne!(a.canonical_key(), star.canonical_key());
    }

    #[test]
    fn provider_rank_matches_chain_rank() {
        for b in [path3(), BuildingSet::boolean(4).unwrap(), BuildingSet::simplex(4).unwrap()] {
            let provider = BuildingSetProvider::new(&b).unwrap();
            for flag in crate::flags::enumerate_flags(b.ground_size()).unwrap() {
                assert_eq!(provider.rank(&flag), b.chain_rank(&flag).unwrap());
            }
        }
    }

    #[test]
    fn euler_fibers_hold_on_small_corpus() {
        for b in [path3(), BuildingSet::boolean(3).unwrap(), BuildingSet::simplex(4).unwrap()] {
            let provider = BuildingSetProvider::new(&b).unwrap();
            let report = euler_fiber_report(&provider).unwrap();
            assert!(report.ok);
        }
    }

    #[test]
    fn face_count_matches_fpolynomial_at_one() {
        for b in [path3(), BuildingSet::boolean(3).unwrap(), BuildingSet::simplex(4).unwrap()] {
            let provider = BuildingSetProvider::new(&b).unwrap();
            let report = euler_fiber_report(&provider).unwrap();
            let total = b.fpoly_recurrence().eval_int(1);
            assert_eq!(BigInt::from(report.faces), total);
        }
    }

    #[test]
    fn antipode_expansion_matches_closed_form() {
        for b in [path3(), BuildingSet::boolean(4).unwrap(), BuildingSet::simplex(4).unwrap()] {
            let provider = BuildingSetProvider::new(&b).unwrap();
            let direct = antipode_face_expansion(&provider).unwrap();
            let viaclosed = b.fq_flag_sum().unwrap().antipode();
            assert_eq!(direct, viaclosed);
        }
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let text = "3\n1\n2\n3\n1 2\n2 3\n1 2 3\n";
        let b = BuildingSet::parse(text).unwrap();
        assert_eq!(b, path3());
        let err = BuildingSet::parse("3\n1\nx 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(BuildingSet::parse("").is_err());
    }
}
