//! Bounded-sequence encodings of ideals and filters.
//!
//! An ideal of a gate is written `|_ d_1, ..., d_l _|`: take the smallest
//! `d_i` elements of each descending segment. For fences the encoding is the
//! interlaced pair `|_ a ; d _|` counting unshared ascending elements and
//! descending elements per segment; filters use `|^ b ; e ^|` and take the
//! largest elements instead. Every labeled admission condition from the
//! underlying characterizations (I1-I3, U1-U3, IF1-IF6, UF1-UF6, IC1-IC4,
//! UC1-UC4, ICN/UCN) is validated individually so a report can name exactly
//! which condition fails.

use std::fmt;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::poset::{
    alpha_delta_circular, alpha_delta_linear, AlphaDeltaParams, CircularFencePoset, ElementSet,
    FencePoset, GatePoset,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingMode {
    GateIdeal,
    GateFilter,
    FenceIdeal,
    FenceFilter,
    CircularIdeal,
    CircularFilter,
    NarrowCircularIdeal,
    NarrowCircularFilter,
}

impl fmt::Display for EncodingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EncodingMode::GateIdeal => "gate-ideal",
            EncodingMode::GateFilter => "gate-filter",
            EncodingMode::FenceIdeal => "fence-ideal",
            EncodingMode::FenceFilter => "fence-filter",
            EncodingMode::CircularIdeal => "circular-ideal",
            EncodingMode::CircularFilter => "circular-filter",
            EncodingMode::NarrowCircularIdeal => "narrow-circular-ideal",
            EncodingMode::NarrowCircularFilter => "narrow-circular-filter",
        };
        f.write_str(s)
    }
}

/// One failed admission condition, named by its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub label: &'static str,
    /// The 1-based segment index at which the condition fails.
    pub index: usize,
    pub message: String,
}

/// The outcome of validating an encoding against its full condition set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub mode: EncodingMode,
    pub restricted: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated_labels(&self) -> Vec<&'static str> {
        self.violations.iter().map(|v| v.label).collect()
    }

    /// Converts into an error carrying the report when any condition failed.
    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidEncoding(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid {} encoding", self.mode);
        }
        write!(f, "invalid {} encoding:", self.mode)?;
        for v in &self.violations {
            write!(f, " {} at i={} ({});", v.label, v.index, v.message)?;
        }
        Ok(())
    }
}

struct Checker {
    report: ValidationReport,
}

impl Checker {
    fn new(mode: EncodingMode, restricted: bool) -> Self {
        Self {
            report: ValidationReport {
                mode,
                restricted,
                violations: Vec::new(),
            },
        }
    }

    fn require(&mut self, ok: bool, label: &'static str, index: usize, message: impl Fn() -> String) {
        if !ok {
            self.report.violations.push(Violation {
                label,
                index,
                message: message(),
            });
        }
    }
}

fn rev(v: &[u32]) -> Vec<u32> {
    v.iter().rev().copied().collect()
}

/// Reversal of the repeated-`a_1` circular row: the anchor entry stays first
/// and the rest reverse.
fn circular_rev(v: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(v.len());
    out.push(v[0]);
    out.extend(v[1..].iter().rev().copied());
    out
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        Err(Error::LengthMismatch { expected, got })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// gates
// ---------------------------------------------------------------------------

/// `|_ d _|` over a gate: the smallest `d_i` elements on each descending
/// segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateIdealSeq {
    d: Vec<u32>,
    delta: Composition,
}

impl GateIdealSeq {
    pub fn new(delta: &Composition, d: Vec<u32>) -> Result<Self> {
        check_len(delta.num_parts(), d.len())?;
        Ok(Self {
            d,
            delta: delta.clone(),
        })
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn delta(&self) -> &Composition {
        &self.delta
    }

    pub fn size(&self) -> u32 {
        self.d.iter().sum()
    }

    /// Checks the existence and ideal conditions I1-I2, plus the restriction
    /// I3 when `restricted` is set.
    pub fn validate(&self, restricted: bool) -> ValidationReport {
        let mut c = Checker::new(EncodingMode::GateIdeal, restricted);
        let d = &self.d;
        let delta = self.delta.parts();
        let l = d.len();
        for i in 0..l {
            c.require(d[i] <= delta[i] + 1, "I1", i + 1, || {
                format!("d_{} = {} exceeds delta_{} + 1 = {}", i + 1, d[i], i + 1, delta[i] + 1)
            });
        }
        for i in 1..l {
            c.require(d[i] != delta[i] + 1 || d[i - 1] > 0, "I2", i + 1, || {
                format!("d_{} = delta_{} + 1 but d_{} = 0", i + 1, i + 1, i)
            });
        }
        if restricted {
            c.require(d[0] <= delta[0], "I3", 1, || {
                format!("d_1 = {} exceeds delta_1 = {}", d[0], delta[0])
            });
            c.require(d[l - 1] != 1, "I3", l, || format!("d_{l} = 1"));
        }
        c.report
    }

    /// Materializes the subset, provided I1-I2 hold.
    pub fn decode(&self) -> Result<ElementSet> {
        self.validate(false).into_result()?;
        let gate = GatePoset::new(&self.delta);
        decode_take(gate.descending_chains(), &self.d, Take::Back)
    }

    /// Counts an ideal of the gate into its encoding.
    pub fn from_ideal(gate: &GatePoset, subset: &ElementSet) -> Result<Self> {
        if !gate.poset().is_ideal(subset) {
            return Err(Error::NotAnIdeal);
        }
        let d = count_chains(&gate.descending_chains(), subset);
        Ok(Self {
            d,
            delta: gate.delta().clone(),
        })
    }

    /// `|_ d _|^R = |^ d^R ^|` over the reversed composition.
    pub fn reversed(&self) -> GateFilterSeq {
        GateFilterSeq {
            e: rev(&self.d),
            delta: self.delta.reversed(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "d": self.d })
    }
}

impl fmt::Display for GateIdealSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{230a}{}\u{230b}", join(&self.d))
    }
}

/// `|^ e ^|` over a gate: the largest `e_i` elements on each descending
/// segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateFilterSeq {
    e: Vec<u32>,
    delta: Composition,
}

impl GateFilterSeq {
    pub fn new(delta: &Composition, e: Vec<u32>) -> Result<Self> {
        check_len(delta.num_parts(), e.len())?;
        Ok(Self {
            e,
            delta: delta.clone(),
        })
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    pub fn delta(&self) -> &Composition {
        &self.delta
    }

    pub fn size(&self) -> u32 {
        self.e.iter().sum()
    }

    pub fn validate(&self, restricted: bool) -> ValidationReport {
        let mut c = Checker::new(EncodingMode::GateFilter, restricted);
        let e = &self.e;
        let delta = self.delta.parts();
        let l = e.len();
        for i in 0..l {
            c.require(e[i] <= delta[i] + 1, "U1", i + 1, || {
                format!("e_{} = {} exceeds delta_{} + 1 = {}", i + 1, e[i], i + 1, delta[i] + 1)
            });
        }
        for i in 0..l.saturating_sub(1) {
            c.require(e[i] != delta[i] + 1 || e[i + 1] > 0, "U2", i + 1, || {
                format!("e_{} = delta_{} + 1 but e_{} = 0", i + 1, i + 1, i + 2)
            });
        }
        if restricted {
            c.require(e[0] != 1, "U3", 1, || "e_1 = 1".to_string());
            c.require(e[l - 1] <= delta[l - 1], "U3", l, || {
                format!("e_{} = {} exceeds delta_{} = {}", l, e[l - 1], l, delta[l - 1])
            });
        }
        c.report
    }

    pub fn decode(&self) -> Result<ElementSet> {
        self.validate(false).into_result()?;
        let gate = GatePoset::new(&self.delta);
        decode_take(gate.descending_chains(), &self.e, Take::Front)
    }

    pub fn from_filter(gate: &GatePoset, subset: &ElementSet) -> Result<Self> {
        if !gate.poset().is_filter(subset) {
            return Err(Error::NotAFilter);
        }
        let e = count_chains(&gate.descending_chains(), subset);
        Ok(Self {
            e,
            delta: gate.delta().clone(),
        })
    }

    pub fn reversed(&self) -> GateIdealSeq {
        GateIdealSeq {
            d: rev(&self.e),
            delta: self.delta.reversed(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "e": self.e })
    }
}

impl fmt::Display for GateFilterSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{2308}{}\u{2309}", join(&self.e))
    }
}

// ---------------------------------------------------------------------------
// linear fences (odd number of parts)
// ---------------------------------------------------------------------------

/// `|_ a ; d _|` over a fence with an odd number of parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FenceIdealEncoding {
    a: Vec<u32>,
    d: Vec<u32>,
    beta: Composition,
}

impl FenceIdealEncoding {
    pub fn new(beta: &Composition, a: Vec<u32>, d: Vec<u32>) -> Result<Self> {
        let params = alpha_delta_linear(beta)?;
        check_len(params.alpha.len(), a.len())?;
        check_len(params.delta.len(), d.len())?;
        Ok(Self {
            a,
            d,
            beta: beta.clone(),
        })
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn params(&self) -> AlphaDeltaParams {
        alpha_delta_linear(&self.beta).expect("parity checked at construction")
    }

    pub fn size(&self) -> u32 {
        self.a.iter().sum::<u32>() + self.d.iter().sum::<u32>()
    }

    /// Checks IF1-IF4, plus the restriction IF5-IF6 when `restricted`.
    pub fn validate(&self, restricted: bool) -> ValidationReport {
        let mut c = Checker::new(EncodingMode::FenceIdeal, restricted);
        let (a, d) = (&self.a, &self.d);
        let p = self.params();
        let (alpha, delta) = (&p.alpha, &p.delta);
        let l = d.len();
        for i in 0..=l {
            c.require(a[i] <= alpha[i] - 1, "IF1", i + 1, || {
                format!("a_{} = {} exceeds alpha_{} - 1 = {}", i + 1, a[i], i + 1, alpha[i] - 1)
            });
        }
        for i in 0..l {
            c.require(d[i] <= delta[i] + 1, "IF2", i + 1, || {
                format!("d_{} = {} exceeds delta_{} + 1 = {}", i + 1, d[i], i + 1, delta[i] + 1)
            });
        }
        for i in 0..l {
            if d[i] == delta[i] + 1 {
                c.require(a[i] == alpha[i] - 1, "IF3", i + 1, || {
                    format!("d_{} = delta_{} + 1 but a_{} < alpha_{} - 1", i + 1, i + 1, i + 1, i + 1)
                });
                if i > 0 {
                    c.require(d[i - 1] > 0, "IF3", i + 1, || {
                        format!("d_{} = delta_{} + 1 but d_{} = 0", i + 1, i + 1, i)
                    });
                }
            }
        }
        for i in 0..l {
            c.require(a[i + 1] == 0 || d[i] > 0, "IF4", i + 1, || {
                format!("a_{} > 0 but d_{} = 0", i + 2, i + 1)
            });
        }
        if restricted && l > 0 {
            c.require(d[0] <= delta[0], "IF5", 1, || {
                format!("d_1 = {} exceeds delta_1 = {}", d[0], delta[0])
            });
            c.require(d[l - 1] != 1 || a[l] < alpha[l] - 1, "IF6", l, || {
                format!("d_{l} = 1 and a_{} = alpha_{} - 1", l + 1, l + 1)
            });
        }
        c.report
    }

    /// True when IF5-IF6 hold (the encodings on which the fence bijection is
    /// total for every size).
    pub fn is_restricted(&self) -> bool {
        let l = self.d.len();
        if l == 0 {
            return true;
        }
        let p = self.params();
        self.d[0] <= p.delta[0] && (self.d[l - 1] != 1 || self.a[l] < p.alpha[l] - 1)
    }

    pub fn decode(&self) -> Result<ElementSet> {
        self.validate(false).into_result()?;
        let fence = FencePoset::new(&self.beta);
        let mut set = decode_take(fence.ascending_unshared()?, &self.a, Take::Front)?;
        let desc = decode_take(fence.descending_chains(), &self.d, Take::Back)?;
        set = set.union(&desc);
        debug_assert!(fence.poset().is_ideal(&set));
        Ok(set)
    }

    pub fn from_ideal(fence: &FencePoset, subset: &ElementSet) -> Result<Self> {
        if !fence.poset().is_ideal(subset) {
            return Err(Error::NotAnIdeal);
        }
        let a = count_chains(&fence.ascending_unshared()?, subset);
        let d = count_chains(&fence.descending_chains(), subset);
        Ok(Self {
            a,
            d,
            beta: fence.beta().clone(),
        })
    }

    /// `|_ a ; d _|^R = |^ a^R ; d^R ^|` over the reversed composition.
    pub fn reversed(&self) -> FenceFilterEncoding {
        FenceFilterEncoding {
            b: rev(&self.a),
            e: rev(&self.d),
            beta: self.beta.reversed(),
        }
    }

    /// The two-row interlaced layout, `a` on top.
    pub fn interlaced(&self) -> String {
        interlaced(&self.a, &self.d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "a": self.a, "d": self.d })
    }
}

impl fmt::Display for FenceIdealEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{230a}a: {}; d: {}\u{230b}", join(&self.a), join(&self.d))
    }
}

/// `|^ b ; e ^|` over a fence with an odd number of parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FenceFilterEncoding {
    b: Vec<u32>,
    e: Vec<u32>,
    beta: Composition,
}

impl FenceFilterEncoding {
    pub fn new(beta: &Composition, b: Vec<u32>, e: Vec<u32>) -> Result<Self> {
        let params = alpha_delta_linear(beta)?;
        check_len(params.alpha.len(), b.len())?;
        check_len(params.delta.len(), e.len())?;
        Ok(Self {
            b,
            e,
            beta: beta.clone(),
        })
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn params(&self) -> AlphaDeltaParams {
        alpha_delta_linear(&self.beta).expect("parity checked at construction")
    }

    pub fn size(&self) -> u32 {
        self.b.iter().sum::<u32>() + self.e.iter().sum::<u32>()
    }

    /// Checks UF1-UF4, plus the restriction UF5-UF6 when `restricted`.
    pub fn validate(&self, restricted: bool) -> ValidationReport {
        let mut c = Checker::new(EncodingMode::FenceFilter, restricted);
        let (b, e) = (&self.b, &self.e);
        let p = self.params();
        let (alpha, delta) = (&p.alpha, &p.delta);
        let l = e.len();
        for i in 0..=l {
            c.require(b[i] <= alpha[i] - 1, "UF1", i + 1, || {
                format!("b_{} = {} exceeds alpha_{} - 1 = {}", i + 1, b[i], i + 1, alpha[i] - 1)
            });
        }
        for i in 0..l {
            c.require(e[i] <= delta[i] + 1, "UF2", i + 1, || {
                format!("e_{} = {} exceeds delta_{} + 1 = {}", i + 1, e[i], i + 1, delta[i] + 1)
            });
        }
        for i in 0..l {
            if e[i] == delta[i] + 1 {
                c.require(b[i + 1] == alpha[i + 1] - 1, "UF3", i + 1, || {
                    format!("e_{} = delta_{} + 1 but b_{} < alpha_{} - 1", i + 1, i + 1, i + 2, i + 2)
                });
                if i + 1 < l {
                    c.require(e[i + 1] > 0, "UF3", i + 1, || {
                        format!("e_{} = delta_{} + 1 but e_{} = 0", i + 1, i + 1, i + 2)
                    });
                }
            }
        }
        for i in 0..l {
            c.require(b[i] == 0 || e[i] > 0, "UF4", i + 1, || {
                format!("b_{} > 0 but e_{} = 0", i + 1, i + 1)
            });
        }
        if restricted && l > 0 {
            c.require(e[l - 1] <= delta[l - 1], "UF5", l, || {
                format!("e_{} = {} exceeds delta_{} = {}", l, e[l - 1], l, delta[l - 1])
            });
            c.require(e[0] != 1 || b[0] < alpha[0] - 1, "UF6", 1, || {
                "e_1 = 1 and b_1 = alpha_1 - 1".to_string()
            });
        }
        c.report
    }

    pub fn is_restricted(&self) -> bool {
        let l = self.e.len();
        if l == 0 {
            return true;
        }
        let p = self.params();
        self.e[l - 1] <= p.delta[l - 1] && (self.e[0] != 1 || self.b[0] < p.alpha[0] - 1)
    }

    pub fn decode(&self) -> Result<ElementSet> {
        self.validate(false).into_result()?;
        let fence = FencePoset::new(&self.beta);
        let mut set = decode_take(fence.ascending_unshared()?, &self.b, Take::Back)?;
        let desc = decode_take(fence.descending_chains(), &self.e, Take::Front)?;
        set = set.union(&desc);
        debug_assert!(fence.poset().is_filter(&set));
        Ok(set)
    }

    pub fn from_filter(fence: &FencePoset, subset: &ElementSet) -> Result<Self> {
        if !fence.poset().is_filter(subset) {
            return Err(Error::NotAFilter);
        }
        let b = count_chains(&fence.ascending_unshared()?, subset);
        let e = count_chains(&fence.descending_chains(), subset);
        Ok(Self {
            b,
            e,
            beta: fence.beta().clone(),
        })
    }

    pub fn reversed(&self) -> FenceIdealEncoding {
        FenceIdealEncoding {
            a: rev(&self.b),
            d: rev(&self.e),
            beta: self.beta.reversed(),
        }
    }

    pub fn interlaced(&self) -> String {
        interlaced(&self.b, &self.e)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "b": self.b, "e": self.e })
    }
}

impl fmt::Display for FenceFilterEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{2308}b: {}; e: {}\u{2309}", join(&self.b), join(&self.e))
    }
}

// ---------------------------------------------------------------------------
// circular fences
// ---------------------------------------------------------------------------

/// `|_ a ; d _|` over a circular fence; `a` and `d` both have `l` entries and
/// all subscripts wrap modulo `l`. The repeated `a_1` of the written form is
/// reproduced only in formatting.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircularIdealEncoding {
    a: Vec<u32>,
    d: Vec<u32>,
    beta: Composition,
}

impl CircularIdealEncoding {
    pub fn new(beta: &Composition, a: Vec<u32>, d: Vec<u32>) -> Result<Self> {
        let params = alpha_delta_circular(beta)?;
        check_len(params.alpha.len(), a.len())?;
        check_len(params.delta.len(), d.len())?;
        Ok(Self {
            a,
            d,
            beta: beta.clone(),
        })
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn params(&self) -> AlphaDeltaParams {
        alpha_delta_circular(&self.beta).expect("parity checked at construction")
    }

    pub fn size(&self) -> u32 {
        self.a.iter().sum::<u32>() + self.d.iter().sum::<u32>()
    }

    /// Checks IC1-IC4 (subscripts modulo `l`).
    pub fn validate(&self) -> ValidationReport {
        let mut c = Checker::new(EncodingMode::CircularIdeal, false);
        let (a, d) = (&self.a, &self.d);
        let p = self.params();
        let (alpha, delta) = (&p.alpha, &p.delta);
        let l = d.len();
        for i in 0..l {
            c.require(a[i] <= alpha[i] - 1, "IC1", i + 1, || {
                format!("a_{} = {} exceeds alpha_{} - 1 = {}", i + 1, a[i], i + 1, alpha[i] - 1)
            });
            c.require(d[i] <= delta[i] + 1, "IC2", i + 1, || {
                format!("d_{} = {} exceeds delta_{} + 1 = {}", i + 1, d[i], i + 1, delta[i] + 1)
            });
        }
        for i in 0..l {
            let prev = (i + l - 1) % l;
            if d[i] == delta[i] + 1 {
                c.require(a[i] == alpha[i] - 1 && d[prev] > 0, "IC3", i + 1, || {
                    format!("d_{} = delta_{} + 1 without a full a_{} and positive d_{}", i + 1, i + 1, i + 1, prev + 1)
                });
            }
            c.require(a[i] == 0 || d[prev] > 0, "IC4", i + 1, || {
                format!("a_{} > 0 but d_{} = 0", i + 1, prev + 1)
            });
        }
        c.report
    }

    pub fn decode(&self) -> Result<ElementSet> {
        self.validate().into_result()?;
        let cf = CircularFencePoset::new(&self.beta)?;
        let mut set = decode_take(cf.ascending_unshared(), &self.a, Take::Front)?;
        let desc = decode_take(cf.descending_chains(), &self.d, Take::Back)?;
        set = set.union(&desc);
        debug_assert!(cf.poset().is_ideal(&set));
        Ok(set)
    }

    pub fn from_ideal(cf: &CircularFencePoset, subset: &ElementSet) -> Result<Self> {
        if !cf.poset().is_ideal(subset) {
            return Err(Error::NotAnIdeal);
        }
        let a = count_chains(&cf.ascending_unshared(), subset);
        let d = count_chains(&cf.descending_chains(), subset);
        Ok(Self {
            a,
            d,
            beta: cf.beta().clone(),
        })
    }

    /// Reversal with the `a_1` anchor fixed: `a -> (a_1, a_l, ..., a_2)`,
    /// `d -> d^R`, over the circular reversal of the composition.
    pub fn reversed(&self) -> CircularFilterEncoding {
        CircularFilterEncoding {
            b: circular_rev(&self.a),
            e: rev(&self.d),
            beta: self.beta.circular_reversed(),
        }
    }

    /// Two-row layout with `a_1` repeated at the end of the top row.
    pub fn interlaced(&self) -> String {
        let mut top = self.a.clone();
        top.push(self.a[0]);
        interlaced(&top, &self.d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "a": self.a, "d": self.d })
    }
}

impl fmt::Display for CircularIdealEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{230a}a: {}; d: {}\u{230b}", join(&self.a), join(&self.d))
    }
}

/// `|^ b ; e ^|` over a circular fence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircularFilterEncoding {
    b: Vec<u32>,
    e: Vec<u32>,
    beta: Composition,
}

impl CircularFilterEncoding {
    pub fn new(beta: &Composition, b: Vec<u32>, e: Vec<u32>) -> Result<Self> {
        let params = alpha_delta_circular(beta)?;
        check_len(params.alpha.len(), b.len())?;
        check_len(params.delta.len(), e.len())?;
        Ok(Self {
            b,
            e,
            beta: beta.clone(),
        })
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn params(&self) -> AlphaDeltaParams {
        alpha_delta_circular(&self.beta).expect("parity checked at construction")
    }

    pub fn size(&self) -> u32 {
        self.b.iter().sum::<u32>() + self.e.iter().sum::<u32>()
    }

    /// Checks UC1-UC4 (subscripts modulo `l`).
    pub fn validate(&self) -> ValidationReport {
        let mut c = Checker::new(EncodingMode::CircularFilter, false);
        let (b, e) = (&self.b, &self.e);
        let p = self.params();
        let (alpha, delta) = (&p.alpha, &p.delta);
        let l = e.len();
        for i in 0..l {
            c.require(b[i] <= alpha[i] - 1, "UC1", i + 1, || {
                format!("b_{} = {} exceeds alpha_{} - 1 = {}", i + 1, b[i], i + 1, alpha[i] - 1)
            });
            c.require(e[i] <= delta[i] + 1, "UC2", i + 1, || {
                format!("e_{} = {} exceeds delta_{} + 1 = {}", i + 1, e[i], i + 1, delta[i] + 1)
            });
        }
        for i in 0..l {
            let next = (i + 1) % l;
            if e[i] == delta[i] + 1 {
                c.require(b[next] == alpha[next] - 1 && e[next] > 0, "UC3", i + 1, || {
                    format!("e_{} = delta_{} + 1 without a full b_{} and positive e_{}", i + 1, i + 1, next + 1, next + 1)
                });
            }
            c.require(b[i] == 0 || e[i] > 0, "UC4", i + 1, || {
                format!("b_{} > 0 but e_{} = 0", i + 1, i + 1)
            });
        }
        c.report
    }

    pub fn decode(&self) -> Result<ElementSet> {
        self.validate().into_result()?;
        let cf = CircularFencePoset::new(&self.beta)?;
        let mut set = decode_take(cf.ascending_unshared(), &self.b, Take::Back)?;
        let desc = decode_take(cf.descending_chains(), &self.e, Take::Front)?;
        set = set.union(&desc);
        debug_assert!(cf.poset().is_filter(&set));
        Ok(set)
    }

    pub fn from_filter(cf: &CircularFencePoset, subset: &ElementSet) -> Result<Self> {
        if !cf.poset().is_filter(subset) {
            return Err(Error::NotAFilter);
        }
        let b = count_chains(&cf.ascending_unshared(), subset);
        let e = count_chains(&cf.descending_chains(), subset);
        Ok(Self {
            b,
            e,
            beta: cf.beta().clone(),
        })
    }

    pub fn reversed(&self) -> CircularIdealEncoding {
        CircularIdealEncoding {
            a: circular_rev(&self.b),
            d: rev(&self.e),
            beta: self.beta.circular_reversed(),
        }
    }

    pub fn interlaced(&self) -> String {
        let mut top = self.b.clone();
        top.push(self.b[0]);
        interlaced(&top, &self.e)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "b": self.b, "e": self.e })
    }
}

impl fmt::Display for CircularFilterEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{2308}b: {}; e: {}\u{2309}", join(&self.b), join(&self.e))
    }
}

// ---------------------------------------------------------------------------
// narrow circular fences
// ---------------------------------------------------------------------------

/// ICN1-ICN2: admission for `|_ d _|` in a narrow circular fence
/// `(1, d_1, 1, d_2, ..., 1, d_l)`.
pub fn validate_narrow_circular_ideal(d: &[u32], delta: &Composition) -> ValidationReport {
    let mut c = Checker::new(EncodingMode::NarrowCircularIdeal, false);
    let l = delta.num_parts();
    if d.len() != l {
        c.report.violations.push(Violation {
            label: "ICN1",
            index: 0,
            message: format!("sequence has {} entries, expected {}", d.len(), l),
        });
        return c.report;
    }
    let delta = delta.parts();
    for i in 0..l {
        c.require(d[i] <= delta[i] + 1, "ICN1", i + 1, || {
            format!("d_{} = {} exceeds delta_{} + 1 = {}", i + 1, d[i], i + 1, delta[i] + 1)
        });
    }
    for i in 0..l {
        let prev = (i + l - 1) % l;
        c.require(d[i] != delta[i] + 1 || d[prev] > 0, "ICN2", i + 1, || {
            format!("d_{} = delta_{} + 1 but d_{} = 0", i + 1, i + 1, prev + 1)
        });
    }
    c.report
}

/// UCN1-UCN2: admission for `|^ e ^|` in a narrow circular fence.
pub fn validate_narrow_circular_filter(e: &[u32], delta: &Composition) -> ValidationReport {
    let mut c = Checker::new(EncodingMode::NarrowCircularFilter, false);
    let l = delta.num_parts();
    if e.len() != l {
        c.report.violations.push(Violation {
            label: "UCN1",
            index: 0,
            message: format!("sequence has {} entries, expected {}", e.len(), l),
        });
        return c.report;
    }
    let delta = delta.parts();
    for i in 0..l {
        c.require(e[i] <= delta[i] + 1, "UCN1", i + 1, || {
            format!("e_{} = {} exceeds delta_{} + 1 = {}", i + 1, e[i], i + 1, delta[i] + 1)
        });
    }
    for i in 0..l {
        let next = (i + 1) % l;
        c.require(e[i] != delta[i] + 1 || e[next] > 0, "UCN2", i + 1, || {
            format!("e_{} = delta_{} + 1 but e_{} = 0", i + 1, i + 1, next + 1)
        });
    }
    c.report
}

// ---------------------------------------------------------------------------
// shared plumbing
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum Take {
    /// The leading elements of each chain in reading order.
    Front,
    /// The trailing elements.
    Back,
}

/// Chains are supplied in reading order: ascending chains run bottom-to-top,
/// descending chains top-to-bottom. Ideals take the poset-smallest elements
/// (front of an ascending chain, back of a descending one); filters take the
/// poset-largest.
fn decode_take(chains: Vec<Vec<usize>>, counts: &[u32], take: Take) -> Result<ElementSet> {
    let mut set = ElementSet::empty();
    for (chain, &k) in chains.iter().zip(counts) {
        let k = k as usize;
        if k > chain.len() {
            return Err(Error::LengthMismatch {
                expected: chain.len(),
                got: k,
            });
        }
        let slice: Box<dyn Iterator<Item = &usize>> = match take {
            Take::Front => Box::new(chain.iter().take(k)),
            Take::Back => Box::new(chain.iter().rev().take(k)),
        };
        for &x in slice {
            set.insert(x);
        }
    }
    Ok(set)
}

fn count_chains(chains: &[Vec<usize>], subset: &ElementSet) -> Vec<u32> {
    chains
        .iter()
        .map(|chain| chain.iter().filter(|&&x| subset.contains(x)).count() as u32)
        .collect()
}

fn join(v: &[u32]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders two interlaced rows: `top` entries at even columns, `bottom`
/// entries at odd columns, as in the written form of the encodings.
pub fn interlaced(top: &[u32], bottom: &[u32]) -> String {
    let total = top.len() + bottom.len();
    let mut r1 = String::new();
    let mut r2 = String::new();
    for k in 0..total {
        let (v, is_top) = if k % 2 == 0 {
            (top[k / 2], true)
        } else {
            (bottom[k / 2], false)
        };
        let s = v.to_string();
        let pad = " ".repeat(s.len());
        if is_top {
            r1.push_str(&s);
            r2.push_str(&pad);
        } else {
            r2.push_str(&s);
            r1.push_str(&pad);
        }
        if k + 1 < total {
            r1.push_str("  ");
            r2.push_str("  ");
        }
    }
    format!("{}\n{}", r1.trim_end(), r2.trim_end())
}
