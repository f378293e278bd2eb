//! Exact finite unions of rational-endpoint intervals.
//!
//! Endpoints are unbounded rationals or ±∞, each finite endpoint open or
//! closed. A union is kept in normal form — parts sorted, pairwise
//! disjoint and non-touching — so set equality is structural equality.
//!
//! Comparisons go through *cuts*: `Below(q)` sits immediately below the
//! number `q` and `Above(q)` immediately above it, so `[a,b]` is the cut
//! pair `(Below(a), Above(b))` and `(a,b)` is `(Above(a), Below(b))`.
//! Every overlap/touch/subset question becomes a total-order comparison.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval is empty: lower bound must be below upper (or a closed singleton)")]
    EmptyInterval,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

/// A position strictly between numbers on the extended line; borrows its
/// endpoint so comparisons never clone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cut<'a> {
    NegInf,
    Below(&'a BigRational),
    Above(&'a BigRational),
    PosInf,
}

impl Cut<'_> {
    fn rank(&self) -> u8 {
        match self {
            Cut::NegInf => 0,
            Cut::Below(_) | Cut::Above(_) => 1,
            Cut::PosInf => 2,
        }
    }
}

impl Ord for Cut<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cut::Below(a), Cut::Below(b)) | (Cut::Above(a), Cut::Above(b)) => a.cmp(b),
            (Cut::Below(a), Cut::Above(b)) => a.cmp(b).then(Ordering::Less),
            (Cut::Above(a), Cut::Below(b)) => a.cmp(b).then(Ordering::Greater),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Cut<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A nonempty interval. Infinite endpoints are open by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Option<BigRational>,
    hi: Option<BigRational>,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(
        lo: Option<BigRational>,
        lo_closed: bool,
        hi: Option<BigRational>,
        hi_closed: bool,
    ) -> Result<Self, IntervalError> {
        let iv = Interval {
            lo_closed: lo_closed && lo.is_some(),
            hi_closed: hi_closed && hi.is_some(),
            lo,
            hi,
        };
        if iv.lower_cut() < iv.upper_cut() {
            Ok(iv)
        } else {
            Err(IntervalError::EmptyInterval)
        }
    }

    pub fn open(lo: BigRational, hi: BigRational) -> Result<Self, IntervalError> {
        Interval::new(Some(lo), false, Some(hi), false)
    }

    pub fn closed(lo: BigRational, hi: BigRational) -> Result<Self, IntervalError> {
        Interval::new(Some(lo), true, Some(hi), true)
    }

    pub fn point(q: BigRational) -> Self {
        Interval {
            lo: Some(q.clone()),
            hi: Some(q),
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// `(lo, ∞)` or `[lo, ∞)`.
    pub fn ray_above(lo: BigRational, closed: bool) -> Self {
        Interval {
            lo: Some(lo),
            hi: None,
            lo_closed: closed,
            hi_closed: false,
        }
    }

    /// `(-∞, hi)` or `(-∞, hi]`.
    pub fn ray_below(hi: BigRational, closed: bool) -> Self {
        Interval {
            lo: None,
            hi: Some(hi),
            lo_closed: false,
            hi_closed: closed,
        }
    }

    pub fn all() -> Self {
        Interval {
            lo: None,
            hi: None,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn lo(&self) -> Option<&BigRational> {
        self.lo.as_ref()
    }

    pub fn hi(&self) -> Option<&BigRational> {
        self.hi.as_ref()
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_singleton(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// Finite width, or `None` when an endpoint is infinite.
    pub fn width(&self) -> Option<BigRational> {
        match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => Some(b - a),
            _ => None,
        }
    }

    fn lower_cut(&self) -> Cut<'_> {
        match &self.lo {
            None => Cut::NegInf,
            Some(q) if self.lo_closed => Cut::Below(q),
            Some(q) => Cut::Above(q),
        }
    }

    fn upper_cut(&self) -> Cut<'_> {
        match &self.hi {
            None => Cut::PosInf,
            Some(q) if self.hi_closed => Cut::Above(q),
            Some(q) => Cut::Below(q),
        }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lower_cut() <= Cut::Below(q) && Cut::Above(q) <= self.upper_cut()
    }

    fn from_cuts(lo: Cut<'_>, hi: Cut<'_>) -> Option<Interval> {
        if lo >= hi {
            return None;
        }
        let (lo, lo_closed) = match lo {
            Cut::NegInf => (None, false),
            Cut::Below(q) => (Some(q.clone()), true),
            Cut::Above(q) => (Some(q.clone()), false),
            Cut::PosInf => return None,
        };
        let (hi, hi_closed) = match hi {
            Cut::NegInf => return None,
            Cut::Below(q) => (Some(q.clone()), false),
            Cut::Above(q) => (Some(q.clone()), true),
            Cut::PosInf => (None, false),
        };
        Some(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    /// Elementwise sum `{a + b}`. Closed+closed endpoints stay closed,
    /// anything else is open; infinite endpoints absorb.
    pub fn sum(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => (Some(a + b), self.lo_closed && other.lo_closed),
            _ => (None, false),
        };
        let (hi, hi_closed) = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => (Some(a + b), self.hi_closed && other.hi_closed),
            _ => (None, false),
        };
        Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn translate(&self, q: &BigRational) -> Interval {
        Interval {
            lo: self.lo.as_ref().map(|a| a + q),
            hi: self.hi.as_ref().map(|a| a + q),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }

    /// Image under multiplication by a positive rational.
    pub fn scale(&self, q: &BigRational) -> Interval {
        assert!(q.is_positive(), "scale expects a positive factor");
        Interval {
            lo: self.lo.as_ref().map(|a| a * q),
            hi: self.hi.as_ref().map(|a| a * q),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            None => write!(f, "(-inf,")?,
            Some(q) => write!(f, "{}{},", if self.lo_closed { '[' } else { '(' }, fmt_rat(q))?,
        }
        match &self.hi {
            None => write!(f, "inf)"),
            Some(q) => write!(f, "{}{}", fmt_rat(q), if self.hi_closed { ']' } else { ')' }),
        }
    }
}

use crate::expr::format_rational as fmt_rat;

/// A finite union of intervals in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion::default()
    }

    /// Normalize an arbitrary list of intervals: sort by lower cut and
    /// merge everything that overlaps or touches.
    pub fn normalize(parts: Vec<Interval>) -> Self {
        let mut parts = parts;
        parts.sort_by(|a, b| {
            a.lower_cut()
                .cmp(&b.lower_cut())
                .then_with(|| a.upper_cut().cmp(&b.upper_cut()))
        });
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len().min(16));
        for iv in parts {
            push_merging(&mut out, iv);
        }
        IntervalUnion { parts: out }
    }

    pub fn from_interval(iv: Interval) -> Self {
        IntervalUnion { parts: vec![iv] }
    }

    /// Normalize a list already sorted by lower cut: one sweep, no sort.
    pub(crate) fn from_sorted(parts: Vec<Interval>) -> Self {
        debug_assert!(parts
            .windows(2)
            .all(|w| w[0].lower_cut() <= w[1].lower_cut()));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len().min(16));
        for iv in parts {
            push_merging(&mut out, iv);
        }
        IntervalUnion { parts: out }
    }

    /// Union of two unions exploiting their normal form: a linear
    /// two-pointer merge instead of a sort.
    pub(crate) fn merge_sorted(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out: Vec<Interval> = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let take_left = match (self.parts.get(i), other.parts.get(j)) {
                (Some(a), Some(b)) => a.lower_cut() <= b.lower_cut(),
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                push_merging(&mut out, self.parts[i].clone());
                i += 1;
            } else {
                push_merging(&mut out, other.parts[j].clone());
                j += 1;
            }
        }
        IntervalUnion { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.parts.iter().any(|iv| iv.contains(q))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        IntervalUnion::normalize(parts)
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let mut j = 0;
        for a in &self.parts {
            // no rewind needed: a part of other left behind ends before
            // the previous self-part did, so it cannot reach this one
            while j < other.parts.len() {
                let b = &other.parts[j];
                if b.upper_cut() < a.lower_cut() {
                    j += 1;
                    continue;
                }
                if b.lower_cut() > a.upper_cut() {
                    break;
                }
                let lo = a.lower_cut().max(b.lower_cut());
                let hi = a.upper_cut().min(b.upper_cut());
                if let Some(iv) = Interval::from_cuts(lo, hi) {
                    out.push(iv);
                }
                if b.upper_cut() <= a.upper_cut() {
                    j += 1;
                } else {
                    break;
                }
            }
        }
        IntervalUnion { parts: out }
    }

    /// Exact set inclusion `self ⊆ other`.
    pub fn is_subset(&self, other: &IntervalUnion) -> bool {
        let mut j = 0;
        'parts: for a in &self.parts {
            while j < other.parts.len() {
                let b = &other.parts[j];
                if b.upper_cut() < a.lower_cut() {
                    j += 1;
                    continue;
                }
                // a connected part must fit inside a single part of other
                if b.lower_cut() <= a.lower_cut() && a.upper_cut() <= b.upper_cut() {
                    continue 'parts;
                }
                return false;
            }
            return false;
        }
        true
    }

    pub fn translate(&self, q: &BigRational) -> IntervalUnion {
        IntervalUnion {
            parts: self.parts.iter().map(|iv| iv.translate(q)).collect(),
        }
    }

    /// Image under multiplication by a positive rational.
    pub fn scale(&self, q: &BigRational) -> IntervalUnion {
        IntervalUnion {
            parts: self.parts.iter().map(|iv| iv.scale(q)).collect(),
        }
    }
}

/// Append to a sweep in lower-cut order, merging overlap and touch.
fn push_merging(out: &mut Vec<Interval>, iv: Interval) {
    let merges = out
        .last()
        .is_some_and(|last| iv.lower_cut() <= last.upper_cut());
    if merges {
        let last = out.last_mut().unwrap();
        if iv.upper_cut() > last.upper_cut() {
            last.hi = iv.hi;
            last.hi_closed = iv.hi_closed;
        }
    } else {
        out.push(iv);
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("empty");
        }
        for (i, iv) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// Parse the interval syntax: `(lo,hi)`, `[lo,hi]`, half-open mixes,
/// `inf`/`-inf` endpoints, parts joined by `u`, or `empty`.
pub fn parse_union(src: &str) -> Result<IntervalUnion, IntervalError> {
    let trimmed = src.trim();
    if trimmed == "empty" {
        return Ok(IntervalUnion::empty());
    }
    let mut parts = Vec::new();
    let mut pos = 0;
    let bytes = src.as_bytes();
    let err = |pos: usize, msg: &str| IntervalError::Syntax {
        pos,
        msg: msg.to_owned(),
    };

    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let lo_closed = match bytes.get(pos) {
            Some(b'[') => true,
            Some(b'(') => false,
            _ => return Err(err(pos, "expected '(' or '['")),
        };
        pos += 1;
        let epos = pos;
        let (lo, next) = parse_endpoint(src, pos)?;
        pos = next;
        let lo = match lo {
            Endpoint::NegInf => None,
            Endpoint::PosInf => return Err(err(epos, "a lower endpoint cannot be inf")),
            Endpoint::Finite(q) => Some(q),
        };
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if bytes.get(pos) != Some(&b',') {
            return Err(err(pos, "expected ','"));
        }
        pos += 1;
        let epos = pos;
        let (hi, next) = parse_endpoint(src, pos)?;
        pos = next;
        let hi = match hi {
            Endpoint::PosInf => None,
            Endpoint::NegInf => return Err(err(epos, "an upper endpoint cannot be -inf")),
            Endpoint::Finite(q) => Some(q),
        };
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let hi_closed = match bytes.get(pos) {
            Some(b']') => true,
            Some(b')') => false,
            _ => return Err(err(pos, "expected ')' or ']'")),
        };
        pos += 1;
        parts.push(Interval::new(lo, lo_closed, hi, hi_closed)?);

        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'u' {
            return Err(err(pos, "expected 'u' between intervals"));
        }
        pos += 1;
    }
    Ok(IntervalUnion::normalize(parts))
}

enum Endpoint {
    NegInf,
    Finite(BigRational),
    PosInf,
}

/// One endpoint: a rational, `inf`, or `-inf`; returns it with the next
/// byte offset.
fn parse_endpoint(src: &str, mut pos: usize) -> Result<(Endpoint, usize), IntervalError> {
    let bytes = src.as_bytes();
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    if src[pos..].starts_with("inf") {
        return Ok((Endpoint::PosInf, pos + 3));
    }
    if src[pos..].starts_with("-inf") {
        return Ok((Endpoint::NegInf, pos + 4));
    }
    let start = pos;
    if matches!(bytes.get(pos), Some(b'+' | b'-')) {
        pos += 1;
    }
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start || (pos == start + 1 && !bytes[start].is_ascii_digit()) {
        return Err(IntervalError::Syntax {
            pos,
            msg: "expected a rational or inf".to_owned(),
        });
    }
    let numer: num_bigint::BigInt = src[start..pos].parse().unwrap();
    if bytes.get(pos) == Some(&b'/') {
        pos += 1;
        let dstart = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == dstart {
            return Err(IntervalError::Syntax {
                pos,
                msg: "expected a positive denominator".to_owned(),
            });
        }
        let denom: num_bigint::BigInt = src[dstart..pos].parse().unwrap();
        if denom == num_bigint::BigInt::from(0) {
            return Err(IntervalError::Syntax {
                pos: dstart,
                msg: "denominator must be positive".to_owned(),
            });
        }
        Ok((Endpoint::Finite(BigRational::new(numer, denom)), pos))
    } else {
        Ok((Endpoint::Finite(BigRational::from_integer(numer)), pos))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn u(src: &str) -> IntervalUnion {
        parse_union(src).unwrap()
    }

    #[test]
    fn empty_intervals_are_rejected() {
        assert!(Interval::open(rat(1, 1), rat(1, 1)).is_err());
        assert!(Interval::new(Some(rat(2, 1)), true, Some(rat(1, 1)), true).is_err());
        assert!(Interval::new(Some(rat(1, 1)), true, Some(rat(1, 1)), false).is_err());
        assert!(Interval::closed(rat(1, 1), rat(1, 1)).is_ok());
    }

    #[test]
    fn normalize_examples() {
        // touching open endpoints leave the shared point out
        assert_eq!(u("(0,1) u (1,2)").parts().len(), 2);
        // a closed end glues them
        let glued = u("(0,1] u [1,2)");
        assert_eq!(glued.parts().len(), 1);
        assert_eq!(glued.to_string(), "(0,2)");
        assert!(u("empty").is_empty());
        // containment collapses
        assert_eq!(u("[0,10] u (2,3)").to_string(), "[0,10]");
        // normal form is idempotent and order-independent
        let a = u("(5,6) u [0,1] u (1,2)");
        let b = u("(1,2) u (5,6) u [0,1]");
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "[0,2) u (5,6)");
    }

    #[test]
    fn subset_examples() {
        assert!(IntervalUnion::empty().is_subset(&u("[0,1]")));
        assert!(u("(0,1)").is_subset(&u("[0,1]")));
        assert!(!u("[0,1]").is_subset(&u("(0,1)")));
        assert!(u("[1,2] u [5,6]").is_subset(&u("[0,3] u [4,7]")));
        assert!(!u("[1,5]").is_subset(&u("[0,3] u [4,7]")));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(u("[0,2]").intersect(&u("[1,3]")), u("[1,2]"));
        assert_eq!(u("[0,2)").intersect(&u("(2,3]")), IntervalUnion::empty());
        assert_eq!(
            u("[0,10]").intersect(&u("(1,2) u [3,4]")),
            u("(1,2) u [3,4]")
        );
        assert_eq!(
            u("(-inf,0) u (5,inf)").intersect(&u("[-2,6]")),
            u("[-2,0) u (5,6]")
        );
    }

    #[test]
    fn interval_sum_endpoint_algebra() {
        let open = Interval::open(rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(open.sum(&open).to_string(), "(0,2)");
        let closed = Interval::closed(rat(0, 1), rat(1, 1)).unwrap();
        assert_eq!(closed.sum(&closed).to_string(), "[0,2]");
        let ray = Interval::ray_above(rat(1, 1), false);
        assert_eq!(ray.sum(&closed).to_string(), "(1,inf)");
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "empty",
            "[0,1]",
            "(0,1)",
            "(-inf,-1)",
            "[1/3,2/3) u (1,inf)",
            "[5,5]",
        ] {
            let a = u(src);
            assert_eq!(parse_union(&a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_union("").is_err());
        assert!(parse_union("[1,0]").is_err());
        assert!(parse_union("[0 1]").is_err());
        assert!(parse_union("{0,1}").is_err());
        assert!(parse_union("[0,1] [2,3]").is_err());
        assert!(parse_union("[1/0,2]").is_err());
        // the infinities are position-specific
        assert!(parse_union("(inf,3)").is_err());
        assert!(parse_union("(3,-inf)").is_err());
        assert!(parse_union("(-inf,inf)").is_ok());
    }

    prop_compose! {
        fn arb_interval()(a in -24i64..=24, w in 0i64..=12, lc in any::<bool>(), hc in any::<bool>())
            -> Interval
        {
            let lo = rat(a, 2);
            let hi = rat(a + w, 2);
            if w == 0 {
                Interval::point(lo)
            } else {
                Interval::new(Some(lo), lc, Some(hi), hc).unwrap()
            }
        }
    }

    prop_compose! {
        pub(crate) fn arb_union()(parts in prop::collection::vec(arb_interval(), 0..5)) -> IntervalUnion {
            IntervalUnion::normalize(parts)
        }
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(a in arb_union()) {
            prop_assert_eq!(IntervalUnion::normalize(a.parts().to_vec()), a);
        }

        #[test]
        fn parts_are_sorted_and_separated(a in arb_union()) {
            for w in a.parts().windows(2) {
                prop_assert!(w[0].upper_cut() < w[1].lower_cut());
            }
        }

        #[test]
        fn union_and_subset_agree(a in arb_union(), b in arb_union()) {
            let joined = a.union(&b);
            prop_assert!(a.is_subset(&joined));
            prop_assert!(b.is_subset(&joined));
            prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
        }

        #[test]
        fn intersection_is_the_meet(a in arb_union(), b in arb_union()) {
            let met = a.intersect(&b);
            prop_assert!(met.is_subset(&a));
            prop_assert!(met.is_subset(&b));
            prop_assert_eq!(a.intersect(&b), b.intersect(&a));
            // points agree on a grid
            for n in -60..=60i64 {
                let q = rat(n, 2);
                prop_assert_eq!(met.contains(&q), a.contains(&q) && b.contains(&q));
            }
        }

        #[test]
        fn printed_form_parses_back(a in arb_union()) {
            prop_assert_eq!(parse_union(&a.to_string()).unwrap(), a);
        }
    }
}
