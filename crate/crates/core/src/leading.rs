//! The κ-piece decomposition by leading Hamel coordinate.
//!
//! Order the support of a nonzero real by `(piece, point)` and let
//! `f(x)` be the piece index of the least basis element and `g(x)` its
//! coefficient. For a cap κ the pieces are
//!
//! ```text
//! Piece(alpha) = { x : f(x) = alpha, g(x) > 0 },   alpha < κ' ,
//! Remainder    = { x : f(x) >= κ' or g(x) < 0 or x = 0 },
//! ```
//!
//! with `κ' = κ - 1` for finite κ and no cutoff for [`Kappa::All`].
//! Every piece is closed under addition: leading coefficients of a sum
//! either come from the smaller leading element untouched or add up
//! without cancelling (same sign), and when equal leading terms do
//! cancel, everything that remains sits at or above that position.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::hamel::{BasisElement, HamelReal};
use crate::report::{Report, Violation};
use crate::sample::{sample_basis, sample_pos_coeff, sample_real, SampleConfig};

/// Number of pieces requested; `All` stands in for an unbounded κ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kappa {
    Finite(u32),
    All,
}

impl Kappa {
    pub fn new_finite(k: u32) -> Result<Self, LeadingError> {
        if k == 0 {
            Err(LeadingError::ZeroKappa)
        } else {
            Ok(Kappa::Finite(k))
        }
    }

    /// The piece cutoff κ': indices `alpha < κ'` get their own piece.
    pub fn cutoff(&self) -> Option<u32> {
        match *self {
            Kappa::Finite(k) => Some(k - 1),
            Kappa::All => None,
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::Finite(k) => write!(f, "{k}"),
            Kappa::All => f.write_str("all"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LeadingError {
    #[error("kappa must be at least 1")]
    ZeroKappa,
    #[error("piece index {alpha} is not below the cutoff {cutoff}")]
    InvalidPiece { alpha: u32, cutoff: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeadingLabel {
    Piece(u32),
    Remainder,
}

impl fmt::Display for LeadingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeadingLabel::Piece(alpha) => write!(f, "Piece {alpha}"),
            LeadingLabel::Remainder => f.write_str("Remainder"),
        }
    }
}

/// `(f(x), g(x))`: piece index and coefficient of the least basis
/// element of a nonzero `x`. `None` for zero.
pub fn leading_coordinate(x: &HamelReal) -> Option<(u32, &BigRational)> {
    x.leading_term().map(|(b, q)| (b.piece, q))
}

/// Assign `x` its piece in the κ-piece decomposition.
pub fn classify_leading(x: &HamelReal, kappa: Kappa) -> LeadingLabel {
    let Some((f, g)) = leading_coordinate(x) else {
        return LeadingLabel::Remainder;
    };
    if *g < BigRational::zero() {
        return LeadingLabel::Remainder;
    }
    match kappa.cutoff() {
        Some(cutoff) if f >= cutoff => LeadingLabel::Remainder,
        _ => LeadingLabel::Piece(f),
    }
}

/// A canonical inhabitant of the given piece.
pub fn witness(label: LeadingLabel, kappa: Kappa) -> Result<HamelReal, LeadingError> {
    match label {
        LeadingLabel::Remainder => Ok(HamelReal::zero()),
        LeadingLabel::Piece(alpha) => {
            if let Some(cutoff) = kappa.cutoff() {
                if alpha >= cutoff {
                    return Err(LeadingError::InvalidPiece { alpha, cutoff });
                }
            }
            Ok(HamelReal::term(
                BasisElement::new(alpha, "").unwrap(),
                BigRational::from_integer(1.into()),
            ))
        }
    }
}

/// Draw a real conditioned to land in `label`: a signed leading term plus
/// noise strictly above it in the `(piece, point)` order.
fn sample_in_label(
    rng: &mut rand_chacha::ChaCha8Rng,
    cfg: &SampleConfig,
    label: LeadingLabel,
    kappa: Kappa,
) -> HamelReal {
    let (lead_piece, positive) = match label {
        LeadingLabel::Piece(alpha) => (alpha, true),
        LeadingLabel::Remainder => match (kappa.cutoff(), rng.gen_range(0..3u8)) {
            // x = 0
            (_, 0) => return HamelReal::zero(),
            // f(x) >= cutoff, either sign
            (Some(cutoff), 1) => (cutoff + rng.gen_range(0..=cfg.max_index), rng.gen()),
            // g(x) < 0
            _ => (rng.gen_range(0..=cfg.max_index), false),
        },
    };
    let lead = sample_basis(rng, cfg, 0);
    let lead = BasisElement {
        piece: lead_piece,
        point: lead.point,
    };
    let coeff = sample_pos_coeff(rng, cfg.coeff_bound);
    let coeff = if positive { coeff } else { -coeff };

    let noise = sample_real(rng, cfg);
    let above = noise
        .terms()
        .filter(|(b, _)| *b > &lead)
        .map(|(b, q)| (b.clone(), q.clone()));
    HamelReal::from_terms(above.chain([(lead.clone(), coeff)]))
}

/// Property suite: witness soundness, totality, and closure of every
/// piece under addition, for κ ∈ `kappas` (plus [`Kappa::All`]).
pub fn verify_leading(cfg: &SampleConfig, kappas: &[u32]) -> Report {
    let mut report = Report::new("leading");
    let mut rng = cfg.rng();

    let mut all: Vec<Kappa> = Vec::new();
    for &k in kappas {
        match Kappa::new_finite(k) {
            Ok(k) => all.push(k),
            Err(_) => report.push_violation(Violation::new(
                "kappa",
                k.to_string(),
                "-",
                "kappa >= 1",
                "0",
            )),
        }
    }
    all.push(Kappa::All);

    for &kappa in &all {
        // nonempty pieces via witnesses
        let cutoff = kappa.cutoff().unwrap_or(cfg.max_index + 1);
        for alpha in 0..cutoff.min(cfg.max_index + 1) {
            report.bump_check("witness", 1);
            let w = witness(LeadingLabel::Piece(alpha), kappa).unwrap();
            let got = classify_leading(&w, kappa);
            if got != LeadingLabel::Piece(alpha) {
                report.push_violation(Violation::new(
                    "witness",
                    w.to_string(),
                    format!("kappa={kappa}"),
                    LeadingLabel::Piece(alpha).to_string(),
                    got.to_string(),
                ));
            }
        }
        report.bump_check("witness", 1);
        let w = witness(LeadingLabel::Remainder, kappa).unwrap();
        if classify_leading(&w, kappa) != LeadingLabel::Remainder {
            report.push_violation(Violation::new(
                "witness",
                w.to_string(),
                format!("kappa={kappa}"),
                LeadingLabel::Remainder.to_string(),
                classify_leading(&w, kappa).to_string(),
            ));
        }

        for _ in 0..cfg.count {
            // totality / determinism on an unconditioned sample
            let x = sample_real(&mut rng, cfg);
            let label = classify_leading(&x, kappa);
            let (a, _) = match label {
                LeadingLabel::Piece(alpha) => (Some(u64::from(alpha)), None::<u64>),
                LeadingLabel::Remainder => (None, None),
            };
            report.bump_label(
                match label {
                    LeadingLabel::Piece(_) => "Piece",
                    LeadingLabel::Remainder => "Remainder",
                },
                a,
                None,
            );
            report.bump_check("totality", 1);

            // closure on a conditioned same-label pair
            let target = match (kappa.cutoff(), label) {
                (Some(0), _) => LeadingLabel::Remainder,
                (Some(cutoff), LeadingLabel::Piece(alpha)) if alpha < cutoff => {
                    LeadingLabel::Piece(alpha)
                }
                (None, LeadingLabel::Piece(alpha)) => LeadingLabel::Piece(alpha),
                _ => {
                    if rng.gen::<bool>() {
                        LeadingLabel::Remainder
                    } else {
                        match kappa.cutoff() {
                            Some(cutoff) => LeadingLabel::Piece(rng.gen_range(0..cutoff)),
                            None => LeadingLabel::Piece(rng.gen_range(0..=cfg.max_index)),
                        }
                    }
                }
            };
            let x = sample_in_label(&mut rng, cfg, target, kappa);
            let y = sample_in_label(&mut rng, cfg, target, kappa);
            report.bump_check("closure", 1);
            let lx = classify_leading(&x, kappa);
            let ly = classify_leading(&y, kappa);
            if lx != target || ly != target {
                report.push_violation(Violation::new(
                    "conditioned-sample",
                    x.to_string(),
                    y.to_string(),
                    target.to_string(),
                    format!("{lx} / {ly}"),
                ));
                continue;
            }
            let ls = classify_leading(&x.add(&y), kappa);
            if ls != target {
                report.push_violation(Violation::new(
                    "closure",
                    x.to_string(),
                    y.to_string(),
                    target.to_string(),
                    ls.to_string(),
                ));
            }
        }
    }
    report
}
