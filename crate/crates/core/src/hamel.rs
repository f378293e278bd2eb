//! Symbolic model of the rational span of a Hamel basis.
//!
//! A basis element is a pair (piece index, Cantor point): the index is a
//! natural number standing in for an ordinal, and the point is a finite
//! binary string `s` denoting the eventually-zero sequence `s·0^ω`. The
//! string is kept canonical (empty or ending in `1`) so that equality of
//! points is equality of strings.
//!
//! A symbolic real is a finite map from basis elements to nonzero
//! rational coefficients; the empty map is 0. Since the model is free,
//! the representation is unique by construction and addition is
//! coefficientwise.
//!
//! Each piece carries a countable base of cylinders enumerated in
//! length-lexicographic order, `k = 1` being the cylinder of the empty
//! string (the whole piece). Any finite set of distinct points is
//! separated by some cylinder within a computable index bound, which is
//! what makes the partition classifier a terminating loop.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Longest admissible point string. Keeps every cylinder index that the
/// classifier can visit within `u64` range.
pub const MAX_POINT_LEN: usize = 60;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HamelError {
    #[error("point string contains a character other than 0 or 1")]
    BadPointChar,
    #[error("point string is not canonical (trailing zero)")]
    NonCanonicalPoint,
    #[error("point string longer than {MAX_POINT_LEN} characters")]
    PointTooLong,
}

/// A canonical Cantor point: a finite binary string that is empty or ends
/// in `1`, denoting the sequence `s·0^ω`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(String);

impl Point {
    pub fn new(s: &str) -> Result<Self, HamelError> {
        if !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(HamelError::BadPointChar);
        }
        if s.ends_with('0') {
            return Err(HamelError::NonCanonicalPoint);
        }
        if s.len() > MAX_POINT_LEN {
            return Err(HamelError::PointTooLong);
        }
        Ok(Point(s.to_owned()))
    }

    /// The empty string: the point `0^ω`.
    pub fn root() -> Self {
        Point(String::new())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The first `n` characters of `s·0^ω`.
    pub fn expand(&self, n: usize) -> String {
        let mut out = String::with_capacity(n);
        out.push_str(&self.0[..self.0.len().min(n)]);
        while out.len() < n {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One Hamel-basis symbol: a point of the Cantor piece `piece`.
///
/// Ordered by `(piece, point)`; this is the linear order used wherever a
/// "first" or "largest" basis element is needed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElement {
    pub piece: u32,
    pub point: Point,
}

impl BasisElement {
    pub fn new(piece: u32, point: &str) -> Result<Self, HamelError> {
        Ok(BasisElement {
            piece,
            point: Point::new(point)?,
        })
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({},{})", self.piece, self.point)
    }
}

/// A symbolic real: a finite rational combination of basis elements.
///
/// Invariant: no stored coefficient is zero. The empty map is the number
/// zero, and equal maps are equal reals.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HamelReal {
    terms: BTreeMap<BasisElement, BigRational>,
}

impl HamelReal {
    pub fn zero() -> Self {
        HamelReal::default()
    }

    /// Canonicalizing constructor: coefficients of repeated basis
    /// elements are summed and zero sums are dropped.
    pub fn from_terms<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (BasisElement, BigRational)>,
    {
        let mut terms: BTreeMap<BasisElement, BigRational> = BTreeMap::new();
        for (b, q) in pairs {
            let entry = terms.entry(b).or_insert_with(BigRational::zero);
            *entry += q;
        }
        terms.retain(|_, q| !q.is_zero());
        HamelReal { terms }
    }

    /// Single-term real `q·b`; zero if `q = 0`.
    pub fn term(b: BasisElement, q: BigRational) -> Self {
        HamelReal::from_terms([(b, q)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &BasisElement) -> Option<&BigRational> {
        self.terms.get(b)
    }

    /// The set B(x) of basis elements with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &BasisElement> {
        self.terms.keys()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Largest piece index occurring in the support; `None` for 0.
    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|b| b.piece)
    }

    /// Least term in the `(piece, point)` order; `None` for 0.
    pub fn leading_term(&self) -> Option<(&BasisElement, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn add(&self, other: &HamelReal) -> HamelReal {
        let mut terms = self.terms.clone();
        for (b, q) in &other.terms {
            let entry = terms.entry(b.clone()).or_insert_with(BigRational::zero);
            *entry += q;
        }
        terms.retain(|_, q| !q.is_zero());
        HamelReal { terms }
    }

    pub fn scale(&self, q: &BigRational) -> HamelReal {
        if q.is_zero() {
            return HamelReal::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(b, c)| (b.clone(), c * q))
            .collect();
        HamelReal { terms }
    }

    pub fn neg(&self) -> HamelReal {
        let terms = self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect();
        HamelReal { terms }
    }

    pub fn sub(&self, other: &HamelReal) -> HamelReal {
        self.add(&other.neg())
    }

    /// The coefficient sum S(x, J) over basis elements satisfying `pred`.
    pub fn coeff_sum<F>(&self, mut pred: F) -> BigRational
    where
        F: FnMut(&BasisElement) -> bool,
    {
        let mut sum = BigRational::zero();
        for (b, q) in &self.terms {
            if pred(b) {
                sum += q;
            }
        }
        sum
    }

    /// S(x, B_piece^k): the sum of coefficients of piece-`piece` points
    /// lying in cylinder `k`.
    pub fn cylinder_sum(&self, piece: u32, k: u64) -> BigRational {
        let t = cylinder_string(k);
        self.coeff_sum(|b| b.piece == piece && cylinder_contains(&b.point, &t))
    }

    /// Holds by construction; exposed so harnesses can assert it.
    pub fn is_canonical(&self) -> bool {
        self.terms.values().all(|q| !q.is_zero())
    }
}

impl std::ops::Add for &HamelReal {
    type Output = HamelReal;
    fn add(self, rhs: &HamelReal) -> HamelReal {
        HamelReal::add(self, rhs)
    }
}

impl std::ops::Sub for &HamelReal {
    type Output = HamelReal;
    fn sub(self, rhs: &HamelReal) -> HamelReal {
        HamelReal::sub(self, rhs)
    }
}

impl std::ops::Neg for &HamelReal {
    type Output = HamelReal;
    fn neg(self) -> HamelReal {
        HamelReal::neg(self)
    }
}

/// The k-th binary string in length-lexicographic order, k ≥ 1:
/// 1 ↦ ε, 2 ↦ "0", 3 ↦ "1", 4 ↦ "00", …
///
/// Strings of length ℓ occupy indices 2^ℓ .. 2^(ℓ+1)-1.
pub fn cylinder_string(k: u64) -> String {
    assert!(k >= 1, "cylinder indices start at 1");
    let level = 63 - u64::from(k.leading_zeros());
    let offset = k - (1u64 << level);
    let mut s = String::with_capacity(level as usize);
    for i in (0..level).rev() {
        s.push(if offset >> i & 1 == 1 { '1' } else { '0' });
    }
    s
}

/// Inverse of [`cylinder_string`] extended to arbitrary binary strings,
/// as a 128-bit index (bound computations can exceed `u64`).
pub fn string_index(s: &str) -> u128 {
    let mut value: u128 = 0;
    for b in s.bytes() {
        value = (value << 1) | u128::from(b == b'1');
    }
    (1u128 << s.len()) + value
}

/// Membership of the point `p·0^ω` in the cylinder of the string `t`.
pub fn cylinder_contains(p: &Point, t: &str) -> bool {
    let ps = p.as_str();
    if t.len() <= ps.len() {
        ps.starts_with(t)
    } else {
        t.starts_with(ps) && t[ps.len()..].bytes().all(|b| b == b'0')
    }
}

/// An index bound below which some cylinder isolates a single member of
/// any nonempty set of distinct points: the largest length-lex index of
/// `p·0^M` over `p` in the set, with `M = 1 + max length`.
///
/// The cylinder of `p·0^M` contains `p` and, having length exceeding
/// every point in the set, no other member.
pub fn lex_index_bound<'a, I>(points: I) -> u128
where
    I: IntoIterator<Item = &'a Point> + Clone,
{
    let max_len = points
        .clone()
        .into_iter()
        .map(Point::len)
        .max()
        .expect("lex_index_bound needs at least one point");
    let pad = 1 + max_len;
    points
        .into_iter()
        .map(|p| {
            let mut s = p.as_str().to_owned();
            s.extend(std::iter::repeat_n('0', pad));
            string_index(&s)
        })
        .max()
        .unwrap()
}
