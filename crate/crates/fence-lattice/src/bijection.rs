//! The cardinality-preserving ideal-to-filter bijections.
//!
//! All four maps share two sequence passes over blocks of positive entries:
//!
//! * P1 exchanges each factor of trailing ones with the zero to its right;
//! * P2 moves one unit from the tail of each remaining block head `B'` (of
//!   length at least two) to its head.
//!
//! The gate map applies P1-P2 directly. The fence map wraps them in PH1-PH3:
//! a pre-pass moving isolated descending units up into ascending slack, a
//! split of `d` into factors wherever an ascending segment has slack, and a
//! post-pass pushing leftovers back down. The circular maps are the same with
//! wrapping indices. Inverses are implemented literally as
//! reverse-conjugates: `inverse(x) = forward(x^R)^R`.
//!
//! Every map validates its input conditions before any step runs, and (in
//! debug builds) asserts the step-local claims: each factor handed to the
//! gate map satisfies I1-I3, and each output satisfies its filter conditions.

use crate::composition::Composition;
use crate::encoding::{
    validate_narrow_circular_filter, validate_narrow_circular_ideal, CircularFilterEncoding,
    CircularIdealEncoding, FenceFilterEncoding, FenceIdealEncoding, GateFilterSeq, GateIdealSeq,
};
use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// blocks and the two shared passes
// ---------------------------------------------------------------------------

/// A maximal factor of positive entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    /// 0-based index of the first entry.
    pub start: usize,
    /// Number of entries; circular blocks may wrap past the end.
    pub len: usize,
    /// Length of the all-ones suffix (the factor of trailing ones).
    pub trailing_ones: usize,
}

impl Block {
    /// 0-based index of the last entry.
    pub fn end(&self, seq_len: usize) -> usize {
        (self.start + self.len - 1) % seq_len
    }

    pub fn values(&self, seq: &[u32]) -> Vec<u32> {
        (0..self.len)
            .map(|o| seq[(self.start + o) % seq.len()])
            .collect()
    }
}

/// The blocks of a sequence. In circular mode an all-positive sequence has no
/// blocks: the whole circle is the degenerate case handled by the identity
/// branch of the narrow map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub blocks: Vec<Block>,
    pub circular: bool,
    /// All entries positive.
    pub positive: bool,
}

pub fn block_structure(seq: &[u32], circular: bool) -> BlockStructure {
    let len = seq.len();
    let positive = !seq.is_empty() && seq.iter().all(|&x| x > 0);
    let mut blocks = Vec::new();
    if circular && positive {
        return BlockStructure {
            blocks,
            circular,
            positive,
        };
    }
    let push_block = |blocks: &mut Vec<Block>, start: usize, blen: usize| {
        let mut t = 0;
        while t < blen && seq[(start + blen - 1 - t) % len] == 1 {
            t += 1;
        }
        blocks.push(Block {
            start,
            len: blen,
            trailing_ones: t,
        });
    };
    if circular {
        let zero = (0..len).find(|&i| seq[i] == 0).expect("not positive");
        let mut run_start = None;
        for off in 1..=len {
            let i = (zero + off) % len;
            if seq[i] > 0 {
                if run_start.is_none() {
                    run_start = Some(i);
                }
            } else if let Some(start) = run_start.take() {
                let blen = (i + len - start) % len;
                push_block(&mut blocks, start, blen);
            }
        }
        // the scan ends on `zero` itself, so every run has been closed
    } else {
        let mut run_start = None;
        for i in 0..=len {
            if i < len && seq[i] > 0 {
                if run_start.is_none() {
                    run_start = Some(i);
                }
            } else if let Some(start) = run_start.take() {
                push_block(&mut blocks, start, i - start);
            }
        }
    }
    BlockStructure {
        blocks,
        circular,
        positive,
    }
}

/// P1: exchange every nonempty factor of trailing ones with the zero to its
/// right. Valid inputs guarantee that zero exists.
fn exchange_trailing_ones(seq: &mut [u32], blocks: &BlockStructure) {
    let len = seq.len();
    for b in &blocks.blocks {
        if b.trailing_ones == 0 {
            continue;
        }
        let first_one = (b.start + b.len - b.trailing_ones) % len;
        let after = b.start + b.len;
        assert!(
            blocks.circular || after < len,
            "trailing ones must be followed by an entry"
        );
        let zero_pos = after % len;
        assert_eq!(seq[zero_pos], 0, "trailing ones must be followed by a zero");
        seq[first_one] = 0;
        seq[zero_pos] = 1;
    }
}

/// P2: for every block head `B'` (the block minus its trailing ones) of
/// length at least two, move one unit from its last entry to its first.
fn rebalance_block_heads(seq: &mut [u32], blocks: &BlockStructure) {
    let len = seq.len();
    for b in &blocks.blocks {
        let head_len = b.len - b.trailing_ones;
        if head_len < 2 {
            continue;
        }
        let head = b.start;
        let tail = (b.start + head_len - 1) % len;
        seq[tail] -= 1;
        seq[head] += 1;
    }
}

/// Both passes over a fresh copy; returns the sequence after P1 and after P2.
fn run_steps(input: &[u32], circular: bool) -> (Vec<u32>, Vec<u32>) {
    let blocks = block_structure(input, circular);
    let mut seq = input.to_vec();
    exchange_trailing_ones(&mut seq, &blocks);
    let after_p1 = seq.clone();
    rebalance_block_heads(&mut seq, &blocks);
    (after_p1, seq)
}

#[cfg(debug_assertions)]
fn factor_is_restricted_ideal(factor: &[u32], delta_parts: &[u32]) -> bool {
    let delta = match Composition::new(delta_parts.to_vec()) {
        Ok(c) => c,
        Err(_) => return false,
    };
    match GateIdealSeq::new(&delta, factor.to_vec()) {
        Ok(seq) => seq.validate(true).is_valid(),
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// gates
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct GatePhiTrace {
    pub input: GateIdealSeq,
    pub after_p1: Vec<u32>,
    pub output: GateFilterSeq,
}

/// The gate bijection: restricted ideals to restricted filters of equal
/// size, by P1 then P2. The result does not depend on the segment lengths.
pub fn phi(d: &GateIdealSeq) -> Result<GateFilterSeq> {
    phi_traced(d).map(|t| t.output)
}

pub fn phi_traced(d: &GateIdealSeq) -> Result<GatePhiTrace> {
    d.validate(true).into_result()?;
    let (after_p1, out) = run_steps(d.d(), false);
    let output = GateFilterSeq::new(d.delta(), out)?;
    debug_assert!(output.validate(true).is_valid(), "{output}");
    Ok(GatePhiTrace {
        input: d.clone(),
        after_p1,
        output,
    })
}

/// The inverse, as the reverse-conjugate of the forward map.
pub fn phi_inverse(e: &GateFilterSeq) -> Result<GateIdealSeq> {
    phi_inverse_traced(e).map(|(out, _)| out)
}

/// Returns the inverse image together with the trace of the inner forward
/// application (which runs on the reversed sequence).
pub fn phi_inverse_traced(e: &GateFilterSeq) -> Result<(GateIdealSeq, GatePhiTrace)> {
    e.validate(true).into_result()?;
    let inner = phi_traced(&e.reversed())?;
    let out = inner.output.reversed();
    Ok((out, inner))
}

// ---------------------------------------------------------------------------
// fences
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct FencePhiTrace {
    pub input: FenceIdealEncoding,
    /// `(a, d)` after the PH1 pre-pass.
    pub after_ph1: (Vec<u32>, Vec<u32>),
    /// 1-based indices `i` where `d` was cut between `d_{i-1}` and `d_i`.
    pub splits: Vec<usize>,
    /// `(b, e)` after applying the gate steps to each factor.
    pub after_ph2: (Vec<u32>, Vec<u32>),
    pub output: FenceFilterEncoding,
}

/// The fence bijection on encodings. Admission requires IF1-IF4 plus one of
/// the two gates: total size at most `min(b_1, b_s)`, or the restriction
/// IF5-IF6.
pub fn big_phi(enc: &FenceIdealEncoding) -> Result<FenceFilterEncoding> {
    big_phi_traced(enc).map(|t| t.output)
}

pub fn big_phi_traced(enc: &FenceIdealEncoding) -> Result<FencePhiTrace> {
    enc.validate(false).into_result()?;
    let params = enc.params();
    let parts = enc.beta().parts();
    let bound = parts[0].min(parts[parts.len() - 1]);
    if enc.size() > bound && !enc.is_restricted() {
        let violated = enc
            .validate(true)
            .violations
            .into_iter()
            .filter(|v| v.label == "IF5" || v.label == "IF6")
            .map(|v| format!("{}: {}", v.label, v.message))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::OutsideBijectionDomain {
            size: enc.size(),
            bound,
            violated,
        });
    }
    let restricted_input = enc.is_restricted();

    let mut a = enc.a().to_vec();
    let mut d = enc.d().to_vec();
    let l = d.len();
    let alpha = &params.alpha;

    // PH1: absorb isolated units into ascending slack to their right.
    for i in 0..l {
        if d[i] == 1 && a[i + 1] < alpha[i + 1] - 1 {
            d[i] = 0;
            a[i + 1] += 1;
        }
    }
    let after_ph1 = (a.clone(), d.clone());

    // PH2: cut d before every interior ascending segment with slack, then run
    // the gate steps on each factor.
    let cuts: Vec<usize> = (1..l).filter(|&j| a[j] < alpha[j] - 1).collect();
    let mut e = d.clone();
    {
        let mut starts = Vec::with_capacity(cuts.len() + 1);
        starts.push(0);
        starts.extend_from_slice(&cuts);
        for (idx, &st) in starts.iter().enumerate() {
            if l == 0 {
                break;
            }
            let en = if idx + 1 < starts.len() {
                starts[idx + 1]
            } else {
                l
            };
            let factor = &d[st..en];
            #[cfg(debug_assertions)]
            debug_assert!(
                factor_is_restricted_ideal(factor, &params.delta[st..en]),
                "factor {factor:?} of {d:?} must satisfy I1-I3"
            );
            let (_, done) = run_steps(factor, false);
            e[st..en].copy_from_slice(&done);
        }
    }
    let b = a;
    let after_ph2 = (b.clone(), e.clone());

    // PH3: push leftover ascending units back down where a slot freed up.
    let (mut b, mut e) = (b, e);
    for i in 0..l {
        if e[i] == 0 && b[i] > 0 {
            e[i] = 1;
            b[i] -= 1;
        }
    }

    let output = FenceFilterEncoding::new(enc.beta(), b, e)?;
    debug_assert!(output.validate(false).is_valid(), "{output}");
    debug_assert!(
        !restricted_input || output.validate(true).is_valid(),
        "restricted input must map to a restricted filter: {output}"
    );
    debug_assert_eq!(output.size(), enc.size());
    Ok(FencePhiTrace {
        input: enc.clone(),
        after_ph1,
        splits: cuts.iter().map(|&j| j + 1).collect(),
        after_ph2,
        output,
    })
}

pub fn big_phi_inverse(u: &FenceFilterEncoding) -> Result<FenceIdealEncoding> {
    big_phi_inverse_traced(u).map(|(out, _)| out)
}

pub fn big_phi_inverse_traced(
    u: &FenceFilterEncoding,
) -> Result<(FenceIdealEncoding, FencePhiTrace)> {
    u.validate(false).into_result()?;
    let parts = u.beta().parts();
    let bound = parts[0].min(parts[parts.len() - 1]);
    if u.size() > bound && !u.is_restricted() {
        let violated = u
            .validate(true)
            .violations
            .into_iter()
            .filter(|v| v.label == "UF5" || v.label == "UF6")
            .map(|v| format!("{}: {}", v.label, v.message))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::OutsideBijectionDomain {
            size: u.size(),
            bound,
            violated,
        });
    }
    let inner = big_phi_traced(&u.reversed())?;
    let out = inner.output.reversed();
    Ok((out, inner))
}

// ---------------------------------------------------------------------------
// narrow circular fences
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct NarrowPhiTrace {
    pub input: Vec<u32>,
    /// True when the sequence is positive and the map is the identity.
    pub positive: bool,
    pub after_p1: Vec<u32>,
    pub output: Vec<u32>,
}

/// The narrow circular bijection: P1-P2 on the circular sequence, or the
/// identity when every entry is positive.
pub fn phi_bar(d: &[u32], delta: &Composition) -> Result<Vec<u32>> {
    phi_bar_traced(d, delta).map(|t| t.output)
}

pub fn phi_bar_traced(d: &[u32], delta: &Composition) -> Result<NarrowPhiTrace> {
    validate_narrow_circular_ideal(d, delta).into_result()?;
    let positive = !d.is_empty() && d.iter().all(|&x| x > 0);
    let (after_p1, output) = if positive {
        (d.to_vec(), d.to_vec())
    } else {
        run_steps(d, true)
    };
    debug_assert!(
        validate_narrow_circular_filter(&output, delta).is_valid(),
        "{output:?}"
    );
    debug_assert_eq!(
        output.iter().sum::<u32>(),
        d.iter().sum::<u32>(),
        "size must be preserved"
    );
    Ok(NarrowPhiTrace {
        input: d.to_vec(),
        positive,
        after_p1,
        output,
    })
}

pub fn phi_bar_inverse(e: &[u32], delta: &Composition) -> Result<Vec<u32>> {
    validate_narrow_circular_filter(e, delta).into_result()?;
    let rev: Vec<u32> = e.iter().rev().copied().collect();
    let out = phi_bar(&rev, &delta.reversed())?;
    Ok(out.into_iter().rev().collect())
}

// ---------------------------------------------------------------------------
// circular fences
// ---------------------------------------------------------------------------

/// How PHC2 handled the descending row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircularStepMode {
    /// Cut before each listed 1-based index and ran the gate steps per factor.
    Split { cuts: Vec<usize> },
    /// No ascending slack anywhere: ran the narrow map on the whole circle.
    WholeCircle { positive: bool },
}

#[derive(Debug, Clone)]
pub struct CircularPhiTrace {
    pub input: CircularIdealEncoding,
    pub after_phc1: (Vec<u32>, Vec<u32>),
    pub mode: CircularStepMode,
    pub after_phc2: (Vec<u32>, Vec<u32>),
    pub output: CircularFilterEncoding,
}

/// The circular fence bijection, defined on every circular ideal encoding.
pub fn big_phi_bar(enc: &CircularIdealEncoding) -> Result<CircularFilterEncoding> {
    big_phi_bar_traced(enc).map(|t| t.output)
}

pub fn big_phi_bar_traced(enc: &CircularIdealEncoding) -> Result<CircularPhiTrace> {
    enc.validate().into_result()?;
    let params = enc.params();
    let alpha = &params.alpha;
    let mut a = enc.a().to_vec();
    let mut d = enc.d().to_vec();
    let l = d.len();

    // PHC1, indices modulo l.
    for i in 0..l {
        let next = (i + 1) % l;
        if d[i] == 1 && a[next] < alpha[next] - 1 {
            d[i] = 0;
            a[next] += 1;
        }
    }
    let after_phc1 = (a.clone(), d.clone());

    // PHC2.
    let cuts: Vec<usize> = (0..l).filter(|&j| a[j] < alpha[j] - 1).collect();
    let mut e = d.clone();
    let mode;
    if cuts.is_empty() {
        let positive = d.iter().all(|&x| x > 0);
        if !positive {
            let (_, done) = run_steps(&d, true);
            e = done;
        }
        mode = CircularStepMode::WholeCircle { positive };
    } else {
        for (idx, &st) in cuts.iter().enumerate() {
            let next = cuts[(idx + 1) % cuts.len()];
            let flen = if next > st { next - st } else { next + l - st };
            let factor: Vec<u32> = (0..flen).map(|o| d[(st + o) % l]).collect();
            #[cfg(debug_assertions)]
            {
                let dfac: Vec<u32> = (0..flen).map(|o| params.delta[(st + o) % l]).collect();
                debug_assert!(
                    factor_is_restricted_ideal(&factor, &dfac),
                    "factor {factor:?} of {d:?} must satisfy I1-I3"
                );
            }
            let (_, done) = run_steps(&factor, false);
            for (o, v) in done.into_iter().enumerate() {
                e[(st + o) % l] = v;
            }
        }
        mode = CircularStepMode::Split {
            cuts: cuts.iter().map(|&j| j + 1).collect(),
        };
    }
    let b = a;
    let after_phc2 = (b.clone(), e.clone());

    // PHC3.
    let (mut b, mut e) = (b, e);
    for i in 0..l {
        if e[i] == 0 && b[i] > 0 {
            e[i] = 1;
            b[i] -= 1;
        }
    }

    let output = CircularFilterEncoding::new(enc.beta(), b, e)?;
    debug_assert!(output.validate().is_valid(), "{output}");
    debug_assert_eq!(output.size(), enc.size());
    Ok(CircularPhiTrace {
        input: enc.clone(),
        after_phc1,
        mode,
        after_phc2,
        output,
    })
}

pub fn big_phi_bar_inverse(u: &CircularFilterEncoding) -> Result<CircularIdealEncoding> {
    big_phi_bar_inverse_traced(u).map(|(out, _)| out)
}

pub fn big_phi_bar_inverse_traced(
    u: &CircularFilterEncoding,
) -> Result<(CircularIdealEncoding, CircularPhiTrace)> {
    u.validate().into_result()?;
    let inner = big_phi_bar_traced(&u.reversed())?;
    let out = inner.output.reversed();
    Ok((out, inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Composition;

    fn gate_seq(delta: &[u32], d: &[u32]) -> GateIdealSeq {
        GateIdealSeq::new(&Composition::of(delta), d.to_vec()).unwrap()
    }

    #[test]
    fn blocks_of_the_long_example() {
        let seq = [6, 1, 1, 1, 0, 4, 5, 1, 1, 0, 0, 3, 1, 2];
        let bs = block_structure(&seq, false);
        let summary: Vec<(Vec<u32>, usize)> = bs
            .blocks
            .iter()
            .map(|b| (b.values(&seq), b.trailing_ones))
            .collect();
        assert_eq!(
            summary,
            vec![
                (vec![6, 1, 1, 1], 3),
                (vec![4, 5, 1, 1], 2),
                (vec![3, 1, 2], 0)
            ]
        );
    }

    #[test]
    fn circular_blocks_may_wrap() {
        let seq = [7, 1, 1, 0, 5, 1, 0, 0, 3];
        let bs = block_structure(&seq, true);
        let summary: Vec<(Vec<u32>, usize)> = bs
            .blocks
            .iter()
            .map(|b| (b.values(&seq), b.trailing_ones))
            .collect();
        assert_eq!(summary, vec![(vec![5, 1], 1), (vec![3, 7, 1, 1], 2)]);
    }

    #[test]
    fn all_zero_sequences_have_no_blocks() {
        assert!(block_structure(&[0, 0, 0], false).blocks.is_empty());
        assert!(block_structure(&[0, 0, 0], true).blocks.is_empty());
        let bs = block_structure(&[2, 1, 3], true);
        assert!(bs.positive && bs.blocks.is_empty());
    }

    #[test]
    fn phi_worked_example_with_trace() {
        // delta large enough to admit the sequence as a restricted ideal
        let delta = [6, 1, 1, 1, 1, 4, 5, 1, 1, 1, 1, 3, 1, 2];
        let d = gate_seq(&delta, &[6, 1, 1, 1, 0, 4, 5, 1, 1, 0, 0, 3, 1, 2]);
        let t = phi_traced(&d).unwrap();
        assert_eq!(t.after_p1, vec![6, 0, 1, 1, 1, 4, 5, 0, 1, 1, 0, 3, 1, 2]);
        assert_eq!(
            t.output.e(),
            &[6, 0, 1, 1, 1, 5, 4, 0, 1, 1, 0, 4, 1, 1]
        );
        assert_eq!(t.output.size(), d.size());
        // the inverse recovers the input
        let back = phi_inverse(&t.output).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn phi_of_zeros_is_zeros() {
        let d = gate_seq(&[2, 2, 2], &[0, 0, 0]);
        let out = phi(&d).unwrap();
        assert_eq!(out.e(), &[0, 0, 0]);
        let back = phi_inverse(&out).unwrap();
        assert_eq!(back.d(), &[0, 0, 0]);
    }

    #[test]
    fn phi_rejects_unrestricted_input() {
        // d_l = 1 violates I3
        let d = gate_seq(&[2, 2], &[0, 1]);
        assert!(matches!(phi(&d), Err(Error::InvalidEncoding(_))));
    }

    #[test]
    fn phi_does_not_depend_on_delta() {
        let d1 = gate_seq(&[6, 1, 1, 1, 1, 4, 5, 1, 1, 1, 1, 3, 1, 2], &[6, 1, 1, 1, 0, 4, 5, 1, 1, 0, 0, 3, 1, 2]);
        let d2 = gate_seq(&[9, 3, 2, 2, 2, 9, 9, 2, 2, 3, 1, 9, 2, 2], &[6, 1, 1, 1, 0, 4, 5, 1, 1, 0, 0, 3, 1, 2]);
        assert_eq!(phi(&d1).unwrap().e(), phi(&d2).unwrap().e());
    }

    #[test]
    fn phi_exhaustive_on_a_small_gate() {
        // every restricted ideal of the gate over (2,2) maps bijectively,
        // preserving size, onto the restricted filters
        let delta = Composition::of(&[2, 2]);
        let mut images = std::collections::HashSet::new();
        let mut count = 0;
        for d1 in 0..=3u32 {
            for d2 in 0..=3u32 {
                let seq = GateIdealSeq::new(&delta, vec![d1, d2]).unwrap();
                if !seq.validate(true).is_valid() {
                    continue;
                }
                count += 1;
                let out = phi(&seq).unwrap();
                assert!(out.validate(true).is_valid());
                assert_eq!(out.size(), seq.size());
                assert!(images.insert(out.e().to_vec()));
                assert_eq!(phi_inverse(&out).unwrap(), seq);
            }
        }
        // the image is exactly the set of valid restricted filters
        let mut filters = 0;
        for e1 in 0..=3u32 {
            for e2 in 0..=3u32 {
                let seq = GateFilterSeq::new(&delta, vec![e1, e2]).unwrap();
                if seq.validate(true).is_valid() {
                    filters += 1;
                    assert!(images.contains(&vec![e1, e2]));
                }
            }
        }
        assert_eq!(count, filters);
    }

    fn fence_enc(beta: &[u32], a: &[u32], d: &[u32]) -> FenceIdealEncoding {
        FenceIdealEncoding::new(&Composition::of(beta), a.to_vec(), d.to_vec()).unwrap()
    }

    #[test]
    fn big_phi_worked_example_with_all_intermediates() {
        let enc = fence_enc(&[6, 2, 1, 2, 3, 1, 6], &[0, 0, 1, 0], &[1, 3, 1]);
        let t = big_phi_traced(&enc).unwrap();
        assert_eq!(t.after_ph1, (vec![0, 0, 1, 1], vec![1, 3, 0]));
        assert_eq!(t.splits, vec![3]);
        assert_eq!(t.after_ph2, (vec![0, 0, 1, 1], vec![2, 2, 0]));
        assert_eq!(t.output.b(), &[0, 0, 0, 1]);
        assert_eq!(t.output.e(), &[2, 2, 1]);

        let back = big_phi_inverse(&t.output).unwrap();
        assert_eq!(back, enc);
    }

    #[test]
    fn big_phi_maps_the_worked_subsets() {
        use crate::poset::FencePoset;
        let beta = Composition::of(&[6, 2, 1, 2, 3, 1, 6]);
        let fence = FencePoset::new(&beta);
        let ideal = fence
            .poset()
            .subset(&[9, 10, 11, 12, 13, 16])
            .unwrap();
        let enc = FenceIdealEncoding::from_ideal(&fence, &ideal).unwrap();
        let out = big_phi(&enc).unwrap();
        let filter = out.decode().unwrap();
        assert_eq!(filter.to_vec(), vec![7, 8, 10, 11, 15, 22]);
        assert!(fence.poset().is_filter(&filter));
    }

    #[test]
    fn big_phi_on_the_empty_ideal() {
        let enc = fence_enc(&[2, 1, 2], &[0, 0], &[0]);
        let out = big_phi(&enc).unwrap();
        assert_eq!(out.size(), 0);
    }

    #[test]
    fn big_phi_rejects_out_of_domain_input() {
        // size 4 > min(2,2) = 2 and d_1 = 2 > delta_1 = 1 violates IF5
        let enc = fence_enc(&[2, 1, 2], &[2, 0], &[2]);
        match big_phi(&enc) {
            Err(Error::OutsideBijectionDomain { size, bound, violated }) => {
                assert_eq!(size, 4);
                assert_eq!(bound, 2);
                assert!(violated.contains("IF5"));
            }
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn big_phi_bounded_size_bijection_on_a_small_fence() {
        use crate::poset::FencePoset;
        use crate::rank::enumerate_ideals;
        let beta = Composition::of(&[2, 1, 2]);
        let fence = FencePoset::new(&beta);
        let n = fence.n();
        let mut filters_by_size = vec![std::collections::HashSet::new(); n + 1];
        let mut ideals_by_size = vec![Vec::new(); n + 1];
        for ideal in enumerate_ideals(fence.poset()).unwrap() {
            ideals_by_size[ideal.len()].push(ideal);
            let f = ideal.complement(n);
            filters_by_size[f.len()].insert(f);
        }
        for k in 0..=2usize {
            let mut image = std::collections::HashSet::new();
            for ideal in &ideals_by_size[k] {
                let enc = FenceIdealEncoding::from_ideal(&fence, ideal).unwrap();
                let out = big_phi(&enc).unwrap();
                assert_eq!(out.size() as usize, k);
                assert!(image.insert(out.decode().unwrap()));
            }
            assert_eq!(image, filters_by_size[k]);
        }
    }

    #[test]
    fn phi_bar_worked_example() {
        let delta = Composition::of(&[7, 1, 1, 1, 5, 1, 1, 1, 3]);
        let d = [7, 1, 1, 0, 5, 1, 0, 0, 3];
        let t = phi_bar_traced(&d, &delta).unwrap();
        assert!(!t.positive);
        assert_eq!(t.after_p1, vec![7, 0, 1, 1, 5, 0, 1, 0, 3]);
        assert_eq!(t.output, vec![6, 0, 1, 1, 5, 0, 1, 0, 4]);
        assert_eq!(t.output.len(), d.len());
        assert_eq!(t.output.iter().sum::<u32>(), 18);
        assert_eq!(d.iter().sum::<u32>(), 18);
        // round trip
        let back = phi_bar_inverse(&t.output, &delta).unwrap();
        assert_eq!(back, d.to_vec());
    }

    #[test]
    fn phi_bar_is_identity_on_positive_sequences() {
        let delta = Composition::of(&[2, 1, 3]);
        let out = phi_bar(&[2, 1, 3], &delta).unwrap();
        assert_eq!(out, vec![2, 1, 3]);
    }

    fn circ_enc(beta: &[u32], a: &[u32], d: &[u32]) -> CircularIdealEncoding {
        CircularIdealEncoding::new(&Composition::of(beta), a.to_vec(), d.to_vec()).unwrap()
    }

    #[test]
    fn big_phi_bar_first_worked_example() {
        let enc = circ_enc(&[2, 1, 2, 3, 1, 2, 2, 1], &[1, 1, 0, 0], &[2, 1, 1, 1]);
        let t = big_phi_bar_traced(&enc).unwrap();
        assert_eq!(t.after_phc1, (vec![1, 1, 0, 1], vec![2, 1, 0, 1]));
        assert_eq!(
            t.mode,
            CircularStepMode::WholeCircle { positive: false }
        );
        assert_eq!(t.after_phc2, (vec![1, 1, 0, 1], vec![1, 0, 1, 2]));
        assert_eq!(t.output.b(), &[1, 0, 0, 1]);
        assert_eq!(t.output.e(), &[1, 1, 1, 2]);

        let back = big_phi_bar_inverse(&t.output).unwrap();
        assert_eq!(back, enc);
    }

    #[test]
    fn big_phi_bar_second_worked_example_has_idle_last_step() {
        let enc = circ_enc(&[2, 1, 2, 3, 1, 2, 2, 1], &[1, 0, 0, 0], &[2, 1, 1, 1]);
        let t = big_phi_bar_traced(&enc).unwrap();
        assert_eq!(t.after_phc1, (vec![1, 0, 0, 1], vec![2, 1, 0, 1]));
        assert_eq!(t.mode, CircularStepMode::Split { cuts: vec![2] });
        assert_eq!(t.after_phc2, (vec![1, 0, 0, 1], vec![1, 0, 1, 2]));
        // PHC3 changes nothing here
        assert_eq!(
            (t.output.b().to_vec(), t.output.e().to_vec()),
            t.after_phc2
        );
        let back = big_phi_bar_inverse(&t.output).unwrap();
        assert_eq!(back, enc);
    }

    #[test]
    fn big_phi_bar_worked_subsets() {
        use crate::poset::CircularFencePoset;
        let beta = Composition::of(&[2, 1, 2, 3, 1, 2, 2, 1]);
        let cf = CircularFencePoset::new(&beta).unwrap();
        let ideal = cf.poset().subset(&[1, 2, 3, 4, 5, 9, 12]).unwrap();
        let enc = CircularIdealEncoding::from_ideal(&cf, &ideal).unwrap();
        let out = big_phi_bar(&enc).unwrap();
        assert_eq!(out.decode().unwrap().to_vec(), vec![1, 2, 3, 6, 10, 13, 14]);

        let ideal = cf.poset().subset(&[1, 2, 3, 4, 9, 12]).unwrap();
        let enc = CircularIdealEncoding::from_ideal(&cf, &ideal).unwrap();
        let out = big_phi_bar(&enc).unwrap();
        assert_eq!(out.decode().unwrap().to_vec(), vec![1, 2, 3, 10, 13, 14]);
    }

    #[test]
    fn big_phi_bar_on_the_empty_ideal() {
        let enc = circ_enc(&[2, 1, 1, 2], &[0, 0], &[0, 0]);
        let out = big_phi_bar(&enc).unwrap();
        assert_eq!(out.size(), 0);
    }

    #[test]
    fn ph1_sequential_equals_simultaneous() {
        // the PH1 pass touches (d_i, a_{i+1}) only, so evaluating conditions
        // on the original values and applying all updates at once must agree
        // with the sequential loop
        for beta in crate::composition::compositions(9) {
            if beta.num_parts() % 2 == 0 {
                continue;
            }
            let fence = crate::poset::FencePoset::new(&beta);
            let params = match fence.alpha_delta() {
                Ok(p) => p,
                Err(_) => continue,
            };
            for ideal in crate::rank::enumerate_ideals(fence.poset()).unwrap() {
                let enc = FenceIdealEncoding::from_ideal(&fence, &ideal).unwrap();
                let l = enc.d().len();
                // simultaneous evaluation
                let mut sim_a = enc.a().to_vec();
                let mut sim_d = enc.d().to_vec();
                let fire: Vec<usize> = (0..l)
                    .filter(|&i| enc.d()[i] == 1 && enc.a()[i + 1] < params.alpha[i + 1] - 1)
                    .collect();
                for &i in &fire {
                    sim_d[i] = 0;
                    sim_a[i + 1] += 1;
                }
                // sequential evaluation
                let mut seq_a = enc.a().to_vec();
                let mut seq_d = enc.d().to_vec();
                for i in 0..l {
                    if seq_d[i] == 1 && seq_a[i + 1] < params.alpha[i + 1] - 1 {
                        seq_d[i] = 0;
                        seq_a[i + 1] += 1;
                    }
                }
                assert_eq!((sim_a, sim_d), (seq_a, seq_d), "beta {beta}");
            }
        }
    }
}
