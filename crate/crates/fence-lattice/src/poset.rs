//! Fence, circular-fence, and gate posets.
//!
//! Elements are labeled `x_1..x_n` left to right along the zigzag, matching
//! the usual drawings. Covers are stored as explicit `(lower, upper)` pairs,
//! and segment membership is precomputed so validation queries are cheap.

use std::cmp::Ordering;
use std::fmt;

use serde_json::json;

use crate::composition::Composition;
use crate::error::{Error, Result};

/// A subset of a ground set `{x_1, ..., x_n}` with `n <= 64`, stored as a
/// bitmask (bit `i-1` holds membership of `x_i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet {
    bits: u64,
}

impl ElementSet {
    pub const MAX_ELEMENTS: usize = 64;

    pub fn empty() -> Self {
        Self { bits: 0 }
    }

    /// Set of `{x_1, ..., x_n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_ELEMENTS);
        Self {
            bits: if n == 64 { !0 } else { (1u64 << n) - 1 },
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Result<Self> {
        let mut s = Self::empty();
        for x in elems {
            if x == 0 || x > Self::MAX_ELEMENTS {
                return Err(Error::ElementOutOfRange(x));
            }
            s.bits |= 1u64 << (x - 1);
        }
        Ok(s)
    }

    pub fn contains(&self, x: usize) -> bool {
        x >= 1 && x <= Self::MAX_ELEMENTS && self.bits >> (x - 1) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x >= 1 && x <= Self::MAX_ELEMENTS);
        self.bits |= 1u64 << (x - 1);
    }

    pub fn remove(&mut self, x: usize) {
        assert!(x >= 1 && x <= Self::MAX_ELEMENTS);
        self.bits &= !(1u64 << (x - 1));
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self {
            bits: self.bits & !other.bits,
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Complement within `{x_1, ..., x_n}`.
    pub fn complement(&self, n: usize) -> Self {
        Self {
            bits: Self::full(n).bits & !self.bits,
        }
    }

    /// The image under `x_i -> x_{n+1-i}`.
    pub fn mirrored(&self, n: usize) -> Self {
        let mut out = Self::empty();
        for x in self.iter() {
            out.insert(n + 1 - x);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=Self::MAX_ELEMENTS).filter(move |&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn bits(&self) -> u64 {
        self.bits
    }

    /// Lexicographic order on the indicator vector `(m_1, ..., m_n)`. This is
    /// the canonical enumeration order for ideals.
    pub fn indicator_cmp(&self, other: &Self) -> Ordering {
        self.bits.reverse_bits().cmp(&other.bits.reverse_bits())
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for x in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "x{x}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// A finite poset on `{x_1, ..., x_n}` given by its cover relations.
///
/// Only the fence family is constructed by this crate, but the type itself is
/// generic: it is the substrate for the brute-force oracles (ideal
/// enumeration, rowmotion) that cross-check every structured algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    uppers: Vec<Vec<usize>>,
    lowers: Vec<Vec<usize>>,
}

impl Poset {
    /// Builds a poset from `(lower, upper)` cover pairs. Duplicate pairs
    /// collapse. The pairs are trusted to form a Hasse diagram.
    pub fn from_covers(n: usize, covers: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut cv: Vec<(usize, usize)> = Vec::new();
        for (l, u) in covers {
            if l == 0 || l > n {
                return Err(Error::ElementOutOfRange(l));
            }
            if u == 0 || u > n {
                return Err(Error::ElementOutOfRange(u));
            }
            if l == u {
                return Err(Error::InvalidComposition(format!(
                    "cover relates x{l} to itself"
                )));
            }
            cv.push((l, u));
        }
        cv.sort_unstable();
        cv.dedup();
        let mut uppers = vec![Vec::new(); n];
        let mut lowers = vec![Vec::new(); n];
        for &(l, u) in &cv {
            uppers[l - 1].push(u);
            lowers[u - 1].push(l);
        }
        Ok(Self {
            n,
            covers: cv,
            uppers,
            lowers,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn has_cover(&self, lower: usize, upper: usize) -> bool {
        self.covers.binary_search(&(lower, upper)).is_ok()
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.uppers[x - 1]
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lowers[x - 1]
    }

    /// Validates element ids and packs them into a set.
    pub fn subset(&self, elems: &[usize]) -> Result<ElementSet> {
        for &x in elems {
            if x == 0 || x > self.n {
                return Err(Error::ElementOutOfRange(x));
            }
        }
        ElementSet::from_elements(elems.iter().copied())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// True iff `s` is a subset of the ground set closed downward under the
    /// order generated by the covers.
    pub fn is_ideal(&self, s: &ElementSet) -> bool {
        if self.n < ElementSet::MAX_ELEMENTS && s.bits() >> self.n != 0 {
            return false;
        }
        self.covers
            .iter()
            .all(|&(l, u)| !s.contains(u) || s.contains(l))
    }

    /// True iff `s` is closed upward.
    pub fn is_filter(&self, s: &ElementSet) -> bool {
        if self.n < ElementSet::MAX_ELEMENTS && s.bits() >> self.n != 0 {
            return false;
        }
        self.covers
            .iter()
            .all(|&(l, u)| !s.contains(l) || s.contains(u))
    }

    /// The poset dual, relabeled by the mirror `x_i -> x_{n+1-i}` so that
    /// reversal identities hold as label-level equalities (for instance the
    /// dual of a gate over `delta` equals the gate over reversed `delta`).
    pub fn dual(&self) -> Poset {
        let n = self.n;
        let covers = self
            .covers
            .iter()
            .map(|&(l, u)| (n + 1 - u, n + 1 - l))
            .collect::<Vec<_>>();
        Poset::from_covers(n, covers).expect("dual of a valid poset is valid")
    }

    /// One `"lower upper"` pair per line.
    pub fn edge_list_text(&self) -> String {
        let mut out = String::new();
        for &(l, u) in &self.covers {
            out.push_str(&format!("{l} {u}\n"));
        }
        out
    }
}

/// One ascending or descending run of a zigzag poset. Shared endpoints belong
/// to two segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub ascending: bool,
    /// Elements in reading order (left to right along the zigzag).
    pub elements: Vec<usize>,
}

fn zigzag(parts: &[u32], first_ascending: bool) -> (usize, Vec<(usize, usize)>, Vec<Segment>) {
    let total: u32 = parts.iter().sum();
    let n = total as usize + 1;
    let mut covers = Vec::with_capacity(total as usize);
    let mut segments = Vec::with_capacity(parts.len());
    let mut pos = 1usize;
    let mut ascending = first_ascending;
    for &p in parts {
        let p = p as usize;
        let elements: Vec<usize> = (pos..=pos + p).collect();
        for j in 0..p {
            let (a, b) = (pos + j, pos + j + 1);
            covers.push(if ascending { (a, b) } else { (b, a) });
        }
        segments.push(Segment {
            ascending,
            elements,
        });
        pos += p;
        ascending = !ascending;
    }
    (n, covers, segments)
}

fn segment_map(n: usize, segments: &[Segment]) -> Vec<Vec<usize>> {
    let mut map = vec![Vec::new(); n];
    for (si, seg) in segments.iter().enumerate() {
        for &x in &seg.elements {
            map[x - 1].push(si);
        }
    }
    map
}

/// The alpha/delta parameters of a fence or circular fence:
/// `delta_i + 1` is the size of the i-th descending segment and `alpha_i - 1`
/// the number of unshared elements on the i-th ascending segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaDeltaParams {
    pub alpha: Vec<u32>,
    pub delta: Vec<u32>,
}

/// Parameters for a linear fence with an odd number of parts `s = 2l+1`:
/// `delta_i = b_{2i}`, `alpha_i = b_{2i-1}` for `2 <= i <= l`, and
/// `alpha_1 = b_1 + 1`, `alpha_{l+1} = b_s + 1`.
pub fn alpha_delta_linear(beta: &Composition) -> Result<AlphaDeltaParams> {
    let s = beta.num_parts();
    if s % 2 == 0 {
        return Err(Error::Parity {
            expected: "odd",
            got: s,
        });
    }
    let b = beta.parts();
    let l = s / 2;
    let mut alpha = Vec::with_capacity(l + 1);
    for i in 1..=l + 1 {
        let mut a = b[2 * i - 2];
        // both end rules apply to the lone segment of a single-part fence
        if i == 1 {
            a += 1;
        }
        if i == l + 1 {
            a += 1;
        }
        alpha.push(a);
    }
    let delta = (1..=l).map(|i| b[2 * i - 1]).collect();
    Ok(AlphaDeltaParams { alpha, delta })
}

/// Parameters for a circular fence with `s = 2l` parts: `alpha_i = b_{2i-1}`
/// and `delta_i = b_{2i}` with no boundary exceptions.
pub fn alpha_delta_circular(beta: &Composition) -> Result<AlphaDeltaParams> {
    let s = beta.num_parts();
    if s % 2 != 0 {
        return Err(Error::Parity {
            expected: "even",
            got: s,
        });
    }
    let b = beta.parts();
    let l = s / 2;
    let alpha = (1..=l).map(|i| b[2 * i - 2]).collect();
    let delta = (1..=l).map(|i| b[2 * i - 1]).collect();
    Ok(AlphaDeltaParams { alpha, delta })
}

/// The fence over a composition: a zigzag path whose first run ascends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FencePoset {
    beta: Composition,
    poset: Poset,
    segments: Vec<Segment>,
    seg_map: Vec<Vec<usize>>,
}

impl FencePoset {
    pub fn new(beta: &Composition) -> Self {
        let (n, covers, segments) = zigzag(beta.parts(), true);
        let poset = Poset::from_covers(n, covers).expect("zigzag covers are valid");
        let seg_map = segment_map(n, &segments);
        Self {
            beta: beta.clone(),
            poset,
            segments,
            seg_map,
        }
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Indices of the segments containing `x` (two for shared elements).
    pub fn segments_containing(&self, x: usize) -> &[usize] {
        &self.seg_map[x - 1]
    }

    pub fn alpha_delta(&self) -> Result<AlphaDeltaParams> {
        alpha_delta_linear(&self.beta)
    }

    /// The chains of unshared elements on the ascending segments, bottom to
    /// top. Defined for fences with an odd number of parts.
    pub fn ascending_unshared(&self) -> Result<Vec<Vec<usize>>> {
        if self.beta.num_parts() % 2 == 0 {
            return Err(Error::Parity {
                expected: "odd",
                got: self.beta.num_parts(),
            });
        }
        let mut out = Vec::new();
        for (si, seg) in self.segments.iter().enumerate() {
            if !seg.ascending {
                continue;
            }
            let mut elems = seg.elements.clone();
            if si + 1 < self.segments.len() {
                elems.pop(); // the top is shared with the next descending run
            }
            if si > 0 {
                elems.remove(0); // the bottom is shared with the previous one
            }
            out.push(elems);
        }
        Ok(out)
    }

    /// The descending segments in full, each read top to bottom.
    pub fn descending_chains(&self) -> Vec<Vec<usize>> {
        self.segments
            .iter()
            .filter(|seg| !seg.ascending)
            .map(|seg| seg.elements.clone())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "beta": self.beta.parts(),
            "n": self.n(),
            "covers": self.poset.covers(),
            "segments": segments_json(&self.segments),
        })
    }
}

/// The circular fence over an even-parts composition: the zigzag closed into
/// a cycle by identifying `x_{n+1}` with `x_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularFencePoset {
    beta: Composition,
    poset: Poset,
    segments: Vec<Segment>,
    seg_map: Vec<Vec<usize>>,
    degenerate: bool,
}

impl CircularFencePoset {
    pub fn new(beta: &Composition) -> Result<Self> {
        let s = beta.num_parts();
        if s % 2 != 0 {
            return Err(Error::Parity {
                expected: "even",
                got: s,
            });
        }
        let n = beta.total() as usize;
        let wrap = |x: usize| if x > n { x - n } else { x };
        let (_, covers, mut segments) = zigzag(beta.parts(), true);
        let covers: Vec<_> = covers.iter().map(|&(l, u)| (wrap(l), wrap(u))).collect();
        for seg in &mut segments {
            for x in &mut seg.elements {
                *x = wrap(*x);
            }
        }
        // The only composition producing parallel covers is (1,1), whose
        // two-cycle collapses to a single cover; the order used everywhere
        // downstream is the one generated by the distinct covers.
        let degenerate = n == 2;
        let num_covers = covers.len();
        let poset = Poset::from_covers(n, covers)?;
        let degenerate = degenerate || poset.covers().len() < num_covers;
        let seg_map = segment_map(n, &segments);
        Ok(Self {
            beta: beta.clone(),
            poset,
            segments,
            seg_map,
            degenerate,
        })
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segments_containing(&self, x: usize) -> &[usize] {
        &self.seg_map[x - 1]
    }

    /// True for the collapsed two-element case `(1,1)`.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn alpha_delta(&self) -> Result<AlphaDeltaParams> {
        alpha_delta_circular(&self.beta)
    }

    /// Interior (unshared) elements of each ascending segment, bottom to top.
    pub fn ascending_unshared(&self) -> Vec<Vec<usize>> {
        self.segments
            .iter()
            .filter(|seg| seg.ascending)
            .map(|seg| seg.elements[1..seg.elements.len() - 1].to_vec())
            .collect()
    }

    /// The descending segments in full, each read top to bottom.
    pub fn descending_chains(&self) -> Vec<Vec<usize>> {
        self.segments
            .iter()
            .filter(|seg| !seg.ascending)
            .map(|seg| seg.elements.clone())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "beta": self.beta.parts(),
            "circular": true,
            "degenerate": self.degenerate,
            "n": self.n(),
            "covers": self.poset.covers(),
            "segments": segments_json(&self.segments),
        })
    }
}

/// The gate over `delta`: the dual of `F(d_1,1,d_2,1,...,1,d_l)`, a zigzag
/// that begins and ends with a descending run. Its descending segments
/// partition the ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatePoset {
    delta: Composition,
    poset: Poset,
    segments: Vec<Segment>,
    seg_map: Vec<Vec<usize>>,
}

impl GatePoset {
    pub fn new(delta: &Composition) -> Self {
        let mut parts = Vec::with_capacity(2 * delta.num_parts() - 1);
        for (i, &d) in delta.parts().iter().enumerate() {
            if i > 0 {
                parts.push(1);
            }
            parts.push(d);
        }
        let (n, covers, segments) = zigzag(&parts, false);
        let poset = Poset::from_covers(n, covers).expect("zigzag covers are valid");
        let seg_map = segment_map(n, &segments);
        Self {
            delta: delta.clone(),
            poset,
            segments,
            seg_map,
        }
    }

    pub fn delta(&self) -> &Composition {
        &self.delta
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segments_containing(&self, x: usize) -> &[usize] {
        &self.seg_map[x - 1]
    }

    /// The descending segments, each read top to bottom; segment `i` has
    /// `delta_i + 1` elements and together they partition the ground set.
    pub fn descending_chains(&self) -> Vec<Vec<usize>> {
        self.segments
            .iter()
            .filter(|seg| !seg.ascending)
            .map(|seg| seg.elements.clone())
            .collect()
    }

    /// The dual gate, which equals the gate over the reversed composition.
    pub fn dual(&self) -> GatePoset {
        GatePoset::new(&self.delta.reversed())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "delta": self.delta.parts(),
            "n": self.n(),
            "covers": self.poset.covers(),
            "segments": segments_json(&self.segments),
        })
    }
}

fn segments_json(segments: &[Segment]) -> serde_json::Value {
    segments
        .iter()
        .map(|seg| {
            json!({
                "ascending": seg.ascending,
                "elements": seg.elements,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(p: &Poset) -> Vec<usize> {
        let mut deg = vec![0usize; p.n()];
        for &(l, u) in p.covers() {
            deg[l - 1] += 1;
            deg[u - 1] += 1;
        }
        deg
    }

    #[test]
    fn fence_2_4_1_matches_the_picture() {
        let f = FencePoset::new(&Composition::of(&[2, 4, 1]));
        assert_eq!(f.n(), 8);
        assert_eq!(
            f.poset().covers(),
            &[(1, 2), (2, 3), (4, 3), (5, 4), (6, 5), (7, 6), (7, 8)]
        );
        assert_eq!(f.segments()[0].elements, vec![1, 2, 3]);
        assert_eq!(f.segments()[1].elements, vec![3, 4, 5, 6, 7]);
        assert_eq!(f.segments()[2].elements, vec![7, 8]);
        assert_eq!(f.segments_containing(3), &[0, 1]);
    }

    #[test]
    fn single_part_fence_is_a_chain() {
        let f = FencePoset::new(&Composition::of(&[1]));
        assert_eq!(f.n(), 2);
        assert_eq!(f.poset().covers(), &[(1, 2)]);
    }

    #[test]
    fn large_fence_has_expected_size() {
        let f = FencePoset::new(&Composition::of(&[6, 2, 1, 2, 3, 1, 6]));
        assert_eq!(f.n(), 22);
        assert_eq!(f.segments().len(), 7);
    }

    #[test]
    fn circular_fence_2_1_1_2() {
        let cf = CircularFencePoset::new(&Composition::of(&[2, 1, 1, 2])).unwrap();
        assert_eq!(cf.n(), 6);
        assert!(!cf.is_degenerate());
        assert_eq!(
            cf.poset().covers(),
            &[(1, 2), (1, 6), (2, 3), (4, 3), (4, 5), (6, 5)]
        );
        // cycle: every element has degree two
        assert!(degrees(cf.poset()).iter().all(|&d| d == 2));
    }

    #[test]
    fn circular_fence_rejects_odd_parts() {
        assert!(matches!(
            CircularFencePoset::new(&Composition::of(&[2, 1, 1])),
            Err(Error::Parity { .. })
        ));
    }

    #[test]
    fn degenerate_two_cycle_collapses() {
        let cf = CircularFencePoset::new(&Composition::of(&[1, 1])).unwrap();
        assert!(cf.is_degenerate());
        assert_eq!(cf.n(), 2);
        assert_eq!(cf.poset().covers(), &[(1, 2)]);
    }

    #[test]
    fn fences_are_paths_and_circular_fences_are_cycles() {
        for beta in crate::composition::compositions(12) {
            let f = FencePoset::new(&beta);
            assert_eq!(f.n(), beta.total() as usize + 1);
            let deg = degrees(f.poset());
            if f.n() >= 2 {
                assert_eq!(deg.iter().filter(|&&d| d == 1).count(), 2, "beta {beta}");
                assert!(deg.iter().all(|&d| d <= 2));
            }
            if beta.num_parts() % 2 == 0 && beta.total() > 2 {
                let cf = CircularFencePoset::new(&beta).unwrap();
                assert_eq!(cf.n(), beta.total() as usize);
                assert!(degrees(cf.poset()).iter().all(|&d| d == 2), "beta {beta}");
            }
        }
    }

    #[test]
    fn gate_2_3_1_matches_the_picture() {
        let g = GatePoset::new(&Composition::of(&[2, 3, 1]));
        assert_eq!(g.n(), 9);
        assert_eq!(
            g.poset().covers(),
            &[(2, 1), (3, 2), (3, 4), (5, 4), (6, 5), (7, 6), (7, 8), (9, 8)]
        );
        assert_eq!(
            g.descending_chains(),
            vec![vec![1, 2, 3], vec![4, 5, 6, 7], vec![8, 9]]
        );
    }

    #[test]
    fn gate_of_single_part() {
        let g = GatePoset::new(&Composition::of(&[1]));
        assert_eq!(g.n(), 2);
        assert_eq!(g.poset().covers(), &[(2, 1)]);
    }

    #[test]
    fn gate_descending_chains_partition_the_ground_set() {
        let g = GatePoset::new(&Composition::of(&[2, 2, 1]));
        assert_eq!(g.n(), 8);
        let chains = g.descending_chains();
        let total: usize = chains.iter().map(|c| c.len()).sum();
        assert_eq!(total, g.n());
        assert_eq!(chains[0].len(), 3);
    }

    #[test]
    fn dual_of_gate_equals_gate_of_reversed_composition() {
        let g = GatePoset::new(&Composition::of(&[2, 3, 1]));
        let dual = g.poset().dual();
        let expected = GatePoset::new(&Composition::of(&[1, 3, 2]));
        assert_eq!(dual.covers(), expected.poset().covers());
        assert_eq!(g.dual().delta().parts(), &[1, 3, 2]);
        assert_eq!(g.dual().poset(), &dual);
    }

    #[test]
    fn dual_is_an_involution_and_two_chain_is_self_dual() {
        let f = FencePoset::new(&Composition::of(&[2, 4, 1]));
        assert_eq!(&f.poset().dual().dual(), f.poset());
        let chain = FencePoset::new(&Composition::of(&[1]));
        assert_eq!(&chain.poset().dual(), chain.poset());
    }

    #[test]
    fn ideal_and_filter_checks() {
        let f = FencePoset::new(&Composition::of(&[2, 4, 1]));
        let ideal = f.poset().subset(&[1, 6, 7, 8]).unwrap();
        assert!(f.poset().is_ideal(&ideal));
        assert!(!f.poset().is_filter(&ideal));

        let not_ideal = f.poset().subset(&[2]).unwrap();
        assert!(!f.poset().is_ideal(&not_ideal));

        let empty = ElementSet::empty();
        assert!(f.poset().is_ideal(&empty));
        assert!(f.poset().is_filter(&empty));

        assert!(matches!(
            f.poset().subset(&[9]),
            Err(Error::ElementOutOfRange(9))
        ));
    }

    #[test]
    fn ideal_of_dual_is_mirrored_filter() {
        // over all subsets of a small fence and a small gate
        for beta in [
            Composition::of(&[2, 1]),
            Composition::of(&[1, 2, 1]),
            Composition::of(&[2, 1, 2]),
        ] {
            let p = FencePoset::new(&beta);
            let p = p.poset();
            let d = p.dual();
            let n = p.n();
            for bits in 0u64..(1 << n) {
                let s = ElementSet { bits };
                assert_eq!(p.is_ideal(&s), d.is_filter(&s.mirrored(n)));
                assert_eq!(p.is_filter(&s), d.is_ideal(&s.mirrored(n)));
            }
        }
    }

    #[test]
    fn alpha_delta_parameters() {
        let f = FencePoset::new(&Composition::of(&[6, 2, 1, 2, 3, 1, 6]));
        let p = f.alpha_delta().unwrap();
        assert_eq!(p.alpha, vec![7, 1, 3, 7]);
        assert_eq!(p.delta, vec![2, 2, 1]);

        let cf = CircularFencePoset::new(&Composition::of(&[2, 1, 2, 3, 1, 2, 2, 1])).unwrap();
        let p = cf.alpha_delta().unwrap();
        assert_eq!(p.alpha, vec![2, 2, 1, 2]);
        assert_eq!(p.delta, vec![1, 3, 2, 1]);

        let f = FencePoset::new(&Composition::of(&[1, 1, 1]));
        let p = f.alpha_delta().unwrap();
        assert_eq!(p.alpha, vec![2, 2]);
        assert_eq!(p.delta, vec![1]);

        assert!(FencePoset::new(&Composition::of(&[1, 1]))
            .alpha_delta()
            .is_err());
    }

    #[test]
    fn alpha_delta_accounts_for_every_element() {
        for beta in crate::composition::compositions(12) {
            if beta.num_parts() % 2 == 1 {
                let f = FencePoset::new(&beta);
                let p = f.alpha_delta().unwrap();
                let total: u32 = p.alpha.iter().map(|&a| a - 1).sum::<u32>()
                    + p.delta.iter().map(|&d| d + 1).sum::<u32>();
                assert_eq!(total as usize, f.n());

                let unshared = f.ascending_unshared().unwrap();
                let desc = f.descending_chains();
                for (i, c) in unshared.iter().enumerate() {
                    assert_eq!(c.len(), (p.alpha[i] - 1) as usize);
                }
                for (i, c) in desc.iter().enumerate() {
                    assert_eq!(c.len(), (p.delta[i] + 1) as usize);
                }
            } else if beta.total() > 2 {
                let cf = CircularFencePoset::new(&beta).unwrap();
                let p = cf.alpha_delta().unwrap();
                let total: u32 = p.alpha.iter().map(|&a| a - 1).sum::<u32>()
                    + p.delta.iter().map(|&d| d + 1).sum::<u32>();
                assert_eq!(total as usize, cf.n());
            }
        }
    }

    #[test]
    fn fence_unshared_chains_for_the_large_example() {
        let f = FencePoset::new(&Composition::of(&[6, 2, 1, 2, 3, 1, 6]));
        let unshared = f.ascending_unshared().unwrap();
        assert_eq!(unshared[0], vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(unshared[1], Vec::<usize>::new());
        assert_eq!(unshared[2], vec![13, 14]);
        assert_eq!(unshared[3], vec![17, 18, 19, 20, 21, 22]);
        let desc = f.descending_chains();
        assert_eq!(desc[0], vec![7, 8, 9]);
        assert_eq!(desc[1], vec![10, 11, 12]);
        assert_eq!(desc[2], vec![15, 16]);
    }

    #[test]
    fn circular_chains_for_the_worked_fence() {
        let cf = CircularFencePoset::new(&Composition::of(&[2, 1, 2, 3, 1, 2, 2, 1])).unwrap();
        assert_eq!(cf.n(), 14);
        let unshared = cf.ascending_unshared();
        assert_eq!(unshared, vec![vec![2], vec![5], vec![], vec![13]]);
        let desc = cf.descending_chains();
        assert_eq!(
            desc,
            vec![vec![3, 4], vec![6, 7, 8, 9], vec![10, 11, 12], vec![14, 1]]
        );
    }

    #[test]
    fn indicator_order_is_lexicographic() {
        let a = ElementSet::from_elements([3]).unwrap();
        let b = ElementSet::from_elements([1]).unwrap();
        // (0,0,1) before (1,0,0)
        assert_eq!(a.indicator_cmp(&b), Ordering::Less);
        let c = ElementSet::from_elements([1, 3]).unwrap();
        assert_eq!(b.indicator_cmp(&c), Ordering::Less);
    }

    #[test]
    fn edge_list_export() {
        let f = FencePoset::new(&Composition::of(&[1, 1]));
        assert_eq!(f.poset().edge_list_text(), "1 2\n3 2\n");
        let v = f.to_json();
        assert_eq!(v["n"], 3);
        assert_eq!(v["covers"][0][0], 1);
    }
}
