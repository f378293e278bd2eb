//! The seven-atom algebra of multiplicative pieces.
//!
//! The line splits into seven atoms — `(-∞,-1)`, `{-1}`, `(-1,0)`, `{0}`,
//! `(0,1)`, `{1}`, `(1,∞)` — chosen so that the product of any two atoms
//! is again a union of atoms. The four generators of interest are
//!
//! ```text
//! I1 = (-1,0) ∪ (0,1)    I2 = (-∞,-1) ∪ (1,∞)    P = {-1,1}    Z = {0}
//! ```
//!
//! Of their sixteen unions, exactly ten are closed under multiplication
//! and contain one of the two fat generators; [`enumerate_closed_generator_unions`]
//! lists them. The negative big atom is not closed but its triple
//! products stay inside, which under `x ↦ log(-x)` is exactly 3-fold
//! additive closure on `(0, ∞)` — [`neg_log_atom`] records that bridge,
//! and [`PosRealExp`] carries the full multiplicative-to-additive
//! equivalence at the symbolic level.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::hamel::HamelReal;
use crate::interval::Interval;
use crate::partition::{classify, Label};
use crate::report::{Report, Violation};
use crate::sample::{sample_real, SampleConfig};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MultError {
    #[error("the log transform is only defined on the negative-big atom")]
    OutsideLogDomain,
    #[error("unknown atom name {0:?}")]
    UnknownAtom(String),
}

/// The seven atoms, in line order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    NegBig,
    NegOne,
    NegSmall,
    Zero,
    PosSmall,
    PosOne,
    PosBig,
}

pub const ATOMS: [Atom; 7] = [
    Atom::NegBig,
    Atom::NegOne,
    Atom::NegSmall,
    Atom::Zero,
    Atom::PosSmall,
    Atom::PosOne,
    Atom::PosBig,
];

impl Atom {
    fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn name(self) -> &'static str {
        match self {
            Atom::NegBig => "nbig",
            Atom::NegOne => "none",
            Atom::NegSmall => "nsmall",
            Atom::Zero => "zero",
            Atom::PosSmall => "psmall",
            Atom::PosOne => "pone",
            Atom::PosBig => "pbig",
        }
    }

    pub fn parse(name: &str) -> Result<Atom, MultError> {
        ATOMS
            .iter()
            .copied()
            .find(|a| a.name() == name)
            .ok_or_else(|| MultError::UnknownAtom(name.to_owned()))
    }

    /// The subset of the line this atom denotes.
    pub fn interval(self) -> Interval {
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::zero();
        match self {
            Atom::NegBig => Interval::ray_below(-one, false),
            Atom::NegOne => Interval::point(-one),
            Atom::NegSmall => Interval::open(-one, zero).unwrap(),
            Atom::Zero => Interval::point(zero),
            Atom::PosSmall => Interval::open(zero, one).unwrap(),
            Atom::PosOne => Interval::point(one),
            Atom::PosBig => Interval::ray_above(one, false),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A union of atoms, as a 7-bit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PieceSet(u8);

/// `I1 = (-1,0) ∪ (0,1)`.
pub const GEN_SMALL: PieceSet = PieceSet(1 << 2 | 1 << 4);
/// `I2 = (-∞,-1) ∪ (1,∞)`.
pub const GEN_BIG: PieceSet = PieceSet(1 << 0 | 1 << 6);
/// `P = {-1, 1}`.
pub const GEN_UNITS: PieceSet = PieceSet(1 << 1 | 1 << 5);
/// `Z = {0}`.
pub const GEN_ZERO: PieceSet = PieceSet(1 << 3);

impl PieceSet {
    pub fn empty() -> Self {
        PieceSet(0)
    }

    pub fn singleton(a: Atom) -> Self {
        PieceSet(a.bit())
    }

    pub fn from_atoms(atoms: &[Atom]) -> Self {
        PieceSet(atoms.iter().fold(0, |m, a| m | a.bit()))
    }

    pub fn contains(self, a: Atom) -> bool {
        self.0 & a.bit() != 0
    }

    pub fn union(self, other: PieceSet) -> PieceSet {
        PieceSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: PieceSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn atoms(self) -> impl Iterator<Item = Atom> {
        ATOMS.into_iter().filter(move |a| self.contains(*a))
    }

    pub fn parse(src: &str) -> Result<PieceSet, MultError> {
        let mut set = PieceSet::empty();
        for part in src.split(',') {
            let part = part.trim();
            if !part.is_empty() {
                set = set.union(PieceSet::singleton(Atom::parse(part)?));
            }
        }
        Ok(set)
    }
}

impl fmt::Display for PieceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        let mut first = true;
        for a in self.atoms() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
            first = false;
        }
        Ok(())
    }
}

/// Exact product `{xy : x ∈ a, y ∈ b}` as a union of atoms.
pub fn atom_product(a: Atom, b: Atom) -> PieceSet {
    use Atom::*;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let set = |atoms: &[Atom]| PieceSet::from_atoms(atoms);
    match (a, b) {
        (Zero, _) | (_, Zero) => set(&[Zero]),
        (PosOne, x) | (x, PosOne) => PieceSet::singleton(x),
        // multiplication by -1 reflects the line
        (NegBig, NegOne) => set(&[PosBig]),
        (NegOne, NegOne) => set(&[PosOne]),
        (NegOne, NegSmall) => set(&[PosSmall]),
        (NegOne, PosSmall) => set(&[NegSmall]),
        (NegOne, PosBig) => set(&[NegBig]),
        // two factors below -1 multiply past +1
        (NegBig, NegBig) => set(&[PosBig]),
        // magnitudes straddle 1, so the product sweeps a full ray
        (NegBig, NegSmall) => set(&[PosSmall, PosOne, PosBig]),
        (NegBig, PosSmall) => set(&[NegBig, NegOne, NegSmall]),
        (NegBig, PosBig) => set(&[NegBig]),
        (NegSmall, NegSmall) => set(&[PosSmall]),
        (NegSmall, PosSmall) => set(&[NegSmall]),
        (NegSmall, PosBig) => set(&[NegBig, NegOne, NegSmall]),
        (PosSmall, PosSmall) => set(&[PosSmall]),
        (PosSmall, PosBig) => set(&[PosSmall, PosOne, PosBig]),
        (PosBig, PosBig) => set(&[PosBig]),
        _ => unreachable!("pairs are ordered"),
    }
}

/// `⋃ { atom_product(a, b) : a ∈ s, b ∈ t }`.
pub fn product_set(s: PieceSet, t: PieceSet) -> PieceSet {
    let mut out = PieceSet::empty();
    for a in s.atoms() {
        for b in t.atoms() {
            out = out.union(atom_product(a, b));
        }
    }
    out
}

/// `S · S ⊆ S`.
pub fn is_mult_closed(s: PieceSet) -> bool {
    product_set(s, s).is_subset(s)
}

/// `S · S · S ⊆ S`.
pub fn is_triple_mult_closed(s: PieceSet) -> bool {
    product_set(product_set(s, s), s).is_subset(s)
}

/// The generator unions that are closed under multiplication and contain
/// a fat generator, in canonical order: the I1 family, the I2 family,
/// then the unions containing both.
pub fn enumerate_closed_generator_unions() -> Vec<PieceSet> {
    let fat_combos = [GEN_SMALL, GEN_BIG, GEN_SMALL.union(GEN_BIG)];
    let thin_combos = [
        PieceSet::empty(),
        GEN_UNITS,
        GEN_ZERO,
        GEN_UNITS.union(GEN_ZERO),
    ];
    let mut out = Vec::new();
    for fat in fat_combos {
        for thin in thin_combos {
            let s = fat.union(thin);
            if is_mult_closed(s) {
                out.push(s);
            }
        }
    }
    out
}

/// Descriptor of the image of the negative-big atom under `x ↦ log(-x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogBridge {
    /// The image `(0, ∞)`.
    pub image: Interval,
    /// Fold order carried across: products of this many factors stay in
    /// the atom, and sums of this many images stay in the image.
    pub fold_order: u32,
}

/// The atom-level log transform `(-∞,-1) ↦ (0,∞)`. Triple multiplicative
/// closure of the atom corresponds to triple additive closure of the
/// image; no other atom is in this transform's domain.
pub fn neg_log_atom(a: Atom) -> Result<LogBridge, MultError> {
    match a {
        Atom::NegBig => Ok(LogBridge {
            image: Interval::ray_above(BigRational::zero(), false),
            fold_order: 3,
        }),
        _ => Err(MultError::OutsideLogDomain),
    }
}

/// A positive real `e^x` represented by its symbolic exponent.
/// Multiplication of values is addition of exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PosRealExp {
    pub exponent: HamelReal,
}

impl PosRealExp {
    pub fn new(exponent: HamelReal) -> Self {
        PosRealExp { exponent }
    }

    /// The unit `1 = e^0`.
    pub fn one() -> Self {
        PosRealExp::default()
    }

    pub fn mul(&self, other: &PosRealExp) -> PosRealExp {
        PosRealExp {
            exponent: self.exponent.add(&other.exponent),
        }
    }

    pub fn inverse(&self) -> PosRealExp {
        PosRealExp {
            exponent: self.exponent.neg(),
        }
    }
}

impl std::ops::Mul for &PosRealExp {
    type Output = PosRealExp;
    fn mul(self, rhs: &PosRealExp) -> PosRealExp {
        PosRealExp::mul(self, rhs)
    }
}

/// Classify a positive real by the multiplicative partition induced from
/// the additive one through the logarithm.
pub fn mult_classify(u: &PosRealExp) -> Label {
    classify(&u.exponent)
}

/// Property suite: product-table laws, enumeration soundness, and the
/// multiplicative/additive bridge on sampled exponents.
pub fn verify_mult(cfg: &SampleConfig) -> Report {
    let mut report = Report::new("mult");

    for a in ATOMS {
        for b in ATOMS {
            report.bump_check("table-laws", 1);
            let ab = atom_product(a, b);
            if ab != atom_product(b, a) {
                report.push_violation(Violation::new(
                    "commutativity",
                    a.to_string(),
                    b.to_string(),
                    "symmetric table",
                    "asymmetric entry",
                ));
            }
            // magnitude laws: products of small atoms stay small, products
            // of big atoms stay big
            if GEN_SMALL.contains(a) && GEN_SMALL.contains(b) && !ab.is_subset(GEN_SMALL) {
                report.push_violation(Violation::new(
                    "magnitude-small",
                    a.to_string(),
                    b.to_string(),
                    "|xy| < 1",
                    ab.to_string(),
                ));
            }
            if GEN_BIG.contains(a) && GEN_BIG.contains(b) && !ab.is_subset(GEN_BIG) {
                report.push_violation(Violation::new(
                    "magnitude-big",
                    a.to_string(),
                    b.to_string(),
                    "|xy| > 1",
                    ab.to_string(),
                ));
            }
        }
        report.bump_check("identity-absorbing", 1);
        if atom_product(Atom::PosOne, a) != PieceSet::singleton(a)
            || atom_product(Atom::Zero, a) != PieceSet::singleton(Atom::Zero)
        {
            report.push_violation(Violation::new(
                "identity-absorbing",
                a.to_string(),
                "-",
                "1 is neutral, 0 absorbs",
                "violated",
            ));
        }
    }

    report.bump_check("enumeration", 1);
    let closed = enumerate_closed_generator_unions();
    if closed.len() != 10 {
        report.push_violation(Violation::new(
            "enumeration",
            "generator unions",
            "-",
            "10 sets",
            closed.len().to_string(),
        ));
    }
    for s in &closed {
        if !is_mult_closed(*s) || !(GEN_SMALL.is_subset(*s) || GEN_BIG.is_subset(*s)) {
            report.push_violation(Violation::new(
                "enumeration-soundness",
                s.to_string(),
                "-",
                "closed and containing a fat generator",
                "violated",
            ));
        }
    }
    report.bump_check("log-bridge-atom", 1);
    if neg_log_atom(Atom::NegBig).is_err() || neg_log_atom(Atom::NegSmall).is_ok() {
        report.push_violation(Violation::new(
            "log-bridge-atom",
            "nbig",
            "-",
            "defined exactly on nbig",
            "violated",
        ));
    }

    // bridge: multiply-then-classify equals add-exponents-then-classify
    let mut rng = cfg.rng();
    for _ in 0..cfg.count {
        let u = PosRealExp::new(sample_real(&mut rng, cfg));
        let v = PosRealExp::new(sample_real(&mut rng, cfg));
        report.bump_check("bridge", 1);
        let via_product = mult_classify(&u.mul(&v));
        let via_sum = classify(&u.exponent.add(&v.exponent));
        if via_product != via_sum {
            report.push_violation(Violation::new(
                "bridge",
                u.exponent.to_string(),
                v.exponent.to_string(),
                via_sum.to_string(),
                via_product.to_string(),
            ));
        }
        let li = mult_classify(&u.inverse());
        if li != mult_classify(&u).dual() {
            report.push_violation(Violation::new(
                "bridge-inverse",
                u.exponent.to_string(),
                "-",
                mult_classify(&u).dual().to_string(),
                li.to_string(),
            ));
        }
    }
    report
}
