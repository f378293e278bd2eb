//! Sum arithmetic on interval unions.
//!
//! Minkowski sums and n-fold sums `(n)A` are computed exactly; on top of
//! them sit the additive-closure decisions, the certified even-sum
//! halfline (if `A + A` contains an interval `(a, b)` then `(2k)A`
//! contains `(ka, kb)`, and once consecutive images overlap their union
//! swallows a halfline), the odd-sum containment that triple closure
//! forces, and the middle-thirds Cantor approximants whose self-sums
//! collapse to `[0, 2]`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::interval::{Interval, IntervalUnion};
use crate::report::{Report, Violation};
use crate::sample::SampleConfig;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SumsetError {
    #[error("the sum A+A has empty interior (every part is a singleton)")]
    NoInterval,
    #[error("the sum A+A contains no interval of positive numbers")]
    UnsupportedInput,
    #[error("the even-sum union has no least halfline threshold (it covers a left ray)")]
    NoLeastThreshold,
    #[error("even_sum_halfline needs a nonempty input")]
    EmptyInput,
    #[error("odd_sums_contained requires a triple-closed input")]
    NotTripleClosed,
}

/// Exact Minkowski sum `{a + b : a ∈ A, b ∈ B}`.
///
/// Each translated row `a_i + B` inherits B's ordering, so rows need a
/// single sweep instead of a sort, and the rows are then merged pairwise.
pub fn minkowski_sum(a: &IntervalUnion, b: &IntervalUnion) -> IntervalUnion {
    if a.is_empty() || b.is_empty() {
        return IntervalUnion::empty();
    }
    // A + A needs only the upper triangle of the part grid
    let same = a == b;
    let mut rows: Vec<IntervalUnion> = a
        .parts()
        .iter()
        .enumerate()
        .map(|(i, pa)| {
            let start = if same { i } else { 0 };
            IntervalUnion::from_sorted(b.parts()[start..].iter().map(|pb| pa.sum(pb)).collect())
        })
        .collect();
    while rows.len() > 1 {
        rows = rows
            .chunks(2)
            .map(|pair| match pair {
                [one] => one.clone(),
                [left, right] => left.merge_sorted(right),
                _ => unreachable!(),
            })
            .collect();
    }
    rows.pop().unwrap()
}

/// The n-fold sum `(n)A`, n ≥ 1.
pub fn n_fold(a: &IntervalUnion, n: u32) -> IntervalUnion {
    assert!(n >= 1, "(n)A needs n >= 1");
    let mut acc = a.clone();
    for _ in 1..n {
        acc = minkowski_sum(&acc, a);
    }
    acc
}

/// `A + A ⊆ A`.
pub fn is_additively_closed(a: &IntervalUnion) -> bool {
    n_fold(a, 2).is_subset(a)
}

/// `A + A + A ⊆ A`.
pub fn is_triple_closed(a: &IntervalUnion) -> bool {
    n_fold(a, 3).is_subset(a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalflineResult {
    /// Least `t` with `(t, ∞)` inside the certified even-sum union.
    pub threshold: BigRational,
    /// Whether both certificate checks passed: the chosen interval
    /// really sits inside `A + A`, and consecutive `(ka, kb)` images
    /// overlap from the truncation point on.
    pub certified: bool,
}

/// Certified halfline threshold for `⋃_{k≥1} (2k)A`.
///
/// Picks the widest positive-interior component `(a, b)` of `A + A`,
/// computes the explicit union of `(2k)A` up to `K = ⌈a/(b-a)⌉ + 1`,
/// appends the analytic tail `(K·a, ∞)` that the overlapping images
/// `(ka, kb)` justify, and reads the least threshold off the result.
pub fn even_sum_halfline(a: &IntervalUnion) -> Result<HalflineResult, SumsetError> {
    if a.is_empty() {
        return Err(SumsetError::EmptyInput);
    }
    let two_a = minkowski_sum(a, a);
    if two_a.parts().iter().all(Interval::is_singleton) {
        return Err(SumsetError::NoInterval);
    }
    let positive = two_a.intersect(&IntervalUnion::from_interval(Interval::ray_above(
        BigRational::zero(),
        false,
    )));
    // widest component with interior; unbounded width wins outright
    let mut best: Option<&Interval> = None;
    for part in positive.parts() {
        if part.is_singleton() {
            continue;
        }
        best = match (best, part.width()) {
            (None, _) => Some(part),
            (Some(b), None) => {
                if b.width().is_none() {
                    Some(b)
                } else {
                    Some(part)
                }
            }
            (Some(b), Some(w)) => match b.width() {
                Some(bw) if w > bw => Some(part),
                _ => Some(b),
            },
        };
    }
    let Some(comp) = best else {
        return Err(SumsetError::UnsupportedInput);
    };
    let lo = comp.lo().cloned().expect("positive component has a finite lower end");

    let truncation: u32 = match comp.hi() {
        None => 1,
        Some(_) if lo.is_zero() => 1,
        Some(hi) => {
            let ratio = &lo / (hi - &lo);
            let k = ratio.ceil().to_integer() + 1;
            u32::try_from(&k).expect("certification constant fits in u32")
        }
    };

    let mut even = two_a.clone();
    let mut total = two_a.clone();
    for _ in 2..=truncation {
        even = minkowski_sum(&even, &two_a);
        total = total.union(&even);
    }
    let tail_start = &lo * BigRational::from_integer(truncation.into());
    total = total.union(&IntervalUnion::from_interval(Interval::ray_above(
        tail_start, false,
    )));

    // certificate: (a,b) ⊆ A+A, and images chain from the truncation on
    let chosen = IntervalUnion::from_interval(
        Interval::new(Some(lo.clone()), false, comp.hi().cloned(), false)
            .expect("component has interior"),
    );
    let mut certified = chosen.is_subset(&two_a);
    if let Some(hi) = comp.hi() {
        let k = BigRational::from_integer(truncation.into());
        certified = certified && lo < &k * (hi - &lo);
    }

    let last = total.parts().last().expect("tail keeps the union nonempty");
    debug_assert!(last.hi().is_none());
    match last.lo() {
        None => Err(SumsetError::NoLeastThreshold),
        Some(t) => Ok(HalflineResult {
            threshold: t.clone(),
            certified,
        }),
    }
}

/// Reference route for the even-sum union: accumulate `(2k)A` for
/// `k = 1..=kmax` directly. Used to cross-check [`even_sum_halfline`].
pub fn even_sum_union_bruteforce(a: &IntervalUnion, kmax: u32) -> IntervalUnion {
    let two_a = minkowski_sum(a, a);
    let mut even = two_a.clone();
    let mut total = two_a.clone();
    for _ in 2..=kmax {
        even = minkowski_sum(&even, &two_a);
        total = total.union(&even);
    }
    total
}

/// Whether `(2k+1)A ⊆ A` for all `1 ≤ k ≤ kmax`. Requires triple
/// closure, which forces the answer to be true.
pub fn odd_sums_contained(a: &IntervalUnion, kmax: u32) -> Result<bool, SumsetError> {
    if !is_triple_closed(a) {
        return Err(SumsetError::NotTripleClosed);
    }
    let two_a = n_fold(a, 2);
    let mut odd = n_fold(a, 3);
    for _ in 1..=kmax {
        if !odd.is_subset(a) {
            return Ok(false);
        }
        odd = minkowski_sum(&odd, &two_a);
    }
    Ok(true)
}

/// Stage-n middle-thirds approximant of the Cantor set: 2^n closed
/// intervals of length 3^-n inside [0, 1].
pub fn cantor_stage(n: u32) -> IntervalUnion {
    let third = BigRational::new(1.into(), 3.into());
    let two_thirds = BigRational::new(2.into(), 3.into());
    let mut stage = IntervalUnion::from_interval(
        Interval::closed(BigRational::zero(), BigRational::one()).unwrap(),
    );
    for _ in 0..n {
        let shrunk = stage.scale(&third);
        stage = shrunk.union(&shrunk.translate(&two_thirds));
    }
    stage
}

fn rat_u(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Draw a positive union inside the certificate's domain of validity.
///
/// One anchor interval dominates: it is the lowest part of the union, it
/// is at least twice as wide as any other part (so the widest component
/// of `A + A` is the anchor's self-sum, with truncation constant at most
/// 3), and its upper end is at least `1 + lo/4` (so a brute-force union
/// with kmax = 50 reaches a hundred past any computed threshold). Extra
/// parts sit above the anchor's lower end and therefore cannot create
/// coverage below the certified threshold.
pub fn sample_positive_union(rng: &mut rand_chacha::ChaCha8Rng) -> IntervalUnion {
    let lo = rat_u(rng.gen_range(0..=32i64), 8); // in [0, 4]
    let min_hi = (&lo + &lo / rat_u(2, 1)).max(rat_u(1, 1) + &lo / rat_u(4, 1));
    let hi = min_hi + rat_u(rng.gen_range(0..=16i64), 8);
    let width = &hi - &lo;
    let lo_closed = !lo.is_zero() && rng.gen::<bool>();
    let mut parts = vec![
        Interval::new(Some(lo.clone()), lo_closed, Some(hi), rng.gen::<bool>())
            .expect("anchor has positive width"),
    ];
    for _ in 0..rng.gen_range(0..=2u32) {
        let extra_lo = &lo + rat_u(rng.gen_range(1..=48i64), 8);
        let extra_width = &width * rat_u(rng.gen_range(1..=4i64), 8);
        parts.push(
            Interval::new(
                Some(extra_lo.clone()),
                rng.gen(),
                Some(extra_lo + extra_width),
                rng.gen(),
            )
            .expect("positive width"),
        );
    }
    IntervalUnion::normalize(parts)
}

/// Draw a bounded nonempty union inside (0, ∞).
pub fn sample_bounded_positive_union(rng: &mut rand_chacha::ChaCha8Rng) -> IntervalUnion {
    let n = rng.gen_range(1..=3u32);
    let mut parts = Vec::new();
    for _ in 0..n {
        let lo = rat_u(rng.gen_range(1..=64i64), 8);
        if rng.gen_range(0..4u8) == 0 {
            parts.push(Interval::point(lo));
        } else {
            let hi = &lo + rat_u(rng.gen_range(1..=32i64), 8);
            parts.push(Interval::new(Some(lo), rng.gen(), Some(hi), rng.gen()).unwrap());
        }
    }
    IntervalUnion::normalize(parts)
}

/// Draw from a family of triple-closed unions: rays anchored at or
/// beyond zero on either side, optionally with `{0}` adjoined, a bounded
/// launch pad `[b, c]` with `2b` inside the ray, the whole line, `{0}`.
pub fn sample_triple_closed_union(rng: &mut rand_chacha::ChaCha8Rng) -> IntervalUnion {
    let anchor = rat_u(rng.gen_range(0..=40i64), 4);
    let closed = rng.gen::<bool>();
    match rng.gen_range(0..8u8) {
        0 => IntervalUnion::from_interval(Interval::all()),
        1 => IntervalUnion::from_interval(Interval::point(BigRational::zero())),
        2 | 3 => {
            let ray = Interval::ray_above(anchor, closed && !rng.gen::<bool>());
            let mut u = IntervalUnion::from_interval(ray);
            if rng.gen::<bool>() {
                u = u.union(&IntervalUnion::from_interval(Interval::point(
                    BigRational::zero(),
                )));
            }
            u
        }
        4 | 5 => {
            let ray = Interval::ray_below(-anchor, closed);
            let mut u = IntervalUnion::from_interval(ray);
            if rng.gen::<bool>() {
                u = u.union(&IntervalUnion::from_interval(Interval::point(
                    BigRational::zero(),
                )));
            }
            u
        }
        _ => {
            // [b, b+w] ∪ [a, ∞) with 2b ≥ a ≥ b+w: sums of pad points
            // land in the ray, pad+ray and ray+ray stay in the ray
            let b = &anchor + rat_u(1, 1);
            let w = rat_u(rng.gen_range(0..=4i64), 4);
            let a_lo = (&b + &w).max(rat_u(3, 2) * &b);
            let pad = Interval::new(Some(b.clone()), true, Some(&b + &w), true).unwrap();
            let ray = Interval::ray_above(a_lo, true);
            IntervalUnion::normalize(vec![pad, ray])
        }
    }
}

/// Property suite for the sum engine: algebraic laws of the Minkowski
/// sum, the even-sum halfline against the brute-force union, odd-sum
/// containment under triple closure, Cantor self-sums, and the
/// impossibility of bounded positive closed sets.
pub fn verify_sumset(cfg: &SampleConfig) -> Report {
    let mut report = Report::new("sumset");
    let mut rng = cfg.rng();
    let small = (cfg.count / 10).clamp(1, 200);

    for _ in 0..small {
        let a = sample_positive_union(&mut rng);
        let b = sample_bounded_positive_union(&mut rng);
        let c = sample_positive_union(&mut rng);

        report.bump_check("minkowski-laws", 1);
        let ab = minkowski_sum(&a, &b);
        let ba = minkowski_sum(&b, &a);
        let assoc_l = minkowski_sum(&ab, &c);
        let assoc_r = minkowski_sum(&a, &minkowski_sum(&b, &c));
        if ab != ba || assoc_l != assoc_r {
            report.push_violation(Violation::new(
                "minkowski-laws",
                a.to_string(),
                b.to_string(),
                "commutative and associative",
                "law failure",
            ));
        }

        report.bump_check("nfold-additive", 1);
        let m = rng.gen_range(1..=3u32);
        let n = rng.gen_range(1..=3u32);
        if n_fold(&a, m + n) != minkowski_sum(&n_fold(&a, m), &n_fold(&a, n)) {
            report.push_violation(Violation::new(
                "nfold-additive",
                a.to_string(),
                format!("m={m} n={n}"),
                "(m+n)A = (m)A + (n)A",
                "mismatch",
            ));
        }

        report.bump_check("normalize-idempotent", 1);
        let renorm = IntervalUnion::normalize(ab.parts().to_vec());
        if renorm != ab {
            report.push_violation(Violation::new(
                "normalize-idempotent",
                ab.to_string(),
                "-",
                "fixed point",
                renorm.to_string(),
            ));
        }

        // even-sum halfline vs brute force
        report.bump_check("halfline", 1);
        match even_sum_halfline(&a) {
            Err(e) => report.push_violation(Violation::new(
                "halfline",
                a.to_string(),
                "-",
                "certified threshold",
                e.to_string(),
            )),
            Ok(res) => {
                if !res.certified {
                    report.push_violation(Violation::new(
                        "halfline-certificate",
                        a.to_string(),
                        "-",
                        "certified",
                        "uncertified",
                    ));
                }
                let brute = even_sum_union_bruteforce(&a, 50);
                let t = res.threshold.clone();
                let probe = IntervalUnion::from_interval(
                    Interval::open(t.clone(), &t + rat_u(100, 1)).unwrap(),
                );
                if !probe.is_subset(&brute) {
                    report.push_violation(Violation::new(
                        "halfline-coverage",
                        a.to_string(),
                        "-",
                        format!("({t}, {t}+100) inside the brute union"),
                        "not covered",
                    ));
                }
                // minimality: some point below t is missing, unless t
                // is the very bottom of the union
                let bottom = brute
                    .parts()
                    .first()
                    .and_then(|p| p.lo().cloned())
                    .expect("brute union of a positive set is nonempty and bounded below");
                if bottom < t {
                    let mut excluded = !brute.contains(&t);
                    let mut step = rat_u(1, 2);
                    for _ in 0..12 {
                        if excluded {
                            break;
                        }
                        let probe_pt = &t - &step;
                        if probe_pt > bottom && !brute.contains(&probe_pt) {
                            excluded = true;
                        }
                        step /= rat_u(2, 1);
                    }
                    if !excluded {
                        report.push_violation(Violation::new(
                            "halfline-minimality",
                            a.to_string(),
                            "-",
                            format!("a gap at or just below {t}"),
                            "no gap found",
                        ));
                    }
                }
            }
        }

        // bounded nonempty positive sets are never closed
        report.bump_check("bounded-never-closed", 1);
        if is_additively_closed(&b) || is_triple_closed(&b) {
            report.push_violation(Violation::new(
                "bounded-never-closed",
                b.to_string(),
                "-",
                "not closed under 2- or 3-fold sums",
                "closed",
            ));
        }

        // triple-closed inputs keep all odd sums inside
        report.bump_check("odd-sums", 1);
        let t = sample_triple_closed_union(&mut rng);
        match odd_sums_contained(&t, 8) {
            Ok(true) => {}
            Ok(false) => report.push_violation(Violation::new(
                "odd-sums",
                t.to_string(),
                "-",
                "(2k+1)A inside A for k <= 8",
                "escaped",
            )),
            Err(e) => report.push_violation(Violation::new(
                "odd-sums-precondition",
                t.to_string(),
                "-",
                "triple closed by construction",
                e.to_string(),
            )),
        }
    }

    // Cantor self-sums collapse exactly
    let segment = IntervalUnion::from_interval(
        Interval::closed(BigRational::zero(), rat_u(2, 1)).unwrap(),
    );
    for n in 0..=6 {
        report.bump_check("cantor-sum", 1);
        let stage = cantor_stage(n);
        if minkowski_sum(&stage, &stage) != segment {
            report.push_violation(Violation::new(
                "cantor-sum",
                format!("stage {n}"),
                "-",
                "[0,2]",
                "mismatch",
            ));
        }
    }
    report
}
