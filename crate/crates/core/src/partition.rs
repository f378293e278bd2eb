//! The partition of the symbolic reals into additive semigroups.
//!
//! A nonzero real `x` is labeled by the largest piece index `alpha` in
//! its support together with the least cylinder index `k` at which the
//! piece-`alpha` coefficient sum is nonzero; the sign of that sum picks
//! `Pos(alpha, k)` or `Neg(alpha, k)`. Zero forms its own piece.
//!
//! Each labeled piece is closed under addition: coefficient sums are
//! additive, the leading sums cannot cancel when they share a sign, and
//! lower pieces cannot raise the top index. [`verify_partition_sample`]
//! checks totality, closure, positive-rational homogeneity and negation
//! duality on seeded sample streams and reports violations instead of
//! panicking.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::hamel::{HamelReal, Point};
use crate::report::{Report, Violation};
use crate::sample::{
    sample_nonzero_real, sample_pos_coeff, sample_real, sample_real_over, SampleConfig,
};

/// Partition class of a symbolic real.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Zero,
    Pos { alpha: u32, k: u64 },
    Neg { alpha: u32, k: u64 },
}

impl Label {
    pub fn tag(&self) -> &'static str {
        match self {
            Label::Zero => "Zero",
            Label::Pos { .. } => "Pos",
            Label::Neg { .. } => "Neg",
        }
    }

    /// Swap Pos and Neg, fixing Zero.
    pub fn dual(&self) -> Label {
        match *self {
            Label::Zero => Label::Zero,
            Label::Pos { alpha, k } => Label::Neg { alpha, k },
            Label::Neg { alpha, k } => Label::Pos { alpha, k },
        }
    }

    pub fn alpha_k(&self) -> Option<(u32, u64)> {
        match *self {
            Label::Zero => None,
            Label::Pos { alpha, k } | Label::Neg { alpha, k } => Some((alpha, k)),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Label::Zero => f.write_str("Zero"),
            Label::Pos { alpha, k } => write!(f, "Pos alpha={alpha} k={k}"),
            Label::Neg { alpha, k } => write!(f, "Neg alpha={alpha} k={k}"),
        }
    }
}

/// Assign `x` its partition label.
///
/// The scan over cylinders visits levels in length-lex order but only
/// the cylinders that actually contain support points; skipped cylinders
/// have coefficient sum zero, so the first nonzero group sum found is
/// the least index overall. Distinct canonical points have distinct
/// `level = max_len + 1` truncations, so a nonzero sum must appear by
/// then; running past it means the enumeration is broken and panics.
pub fn classify(x: &HamelReal) -> Label {
    let Some(alpha) = x.max_index() else {
        return Label::Zero;
    };
    // piece-alpha support, already sorted by point
    let top: Vec<(&Point, &BigRational)> = x
        .terms()
        .filter(|(b, _)| b.piece == alpha)
        .map(|(b, q)| (&b.point, q))
        .collect();
    let max_len = top.iter().map(|(p, _)| p.len()).max().unwrap();

    for level in 0..=(max_len + 1) {
        let mut i = 0;
        while i < top.len() {
            let prefix = top[i].0.expand(level);
            let mut sum = top[i].1.clone();
            let mut j = i + 1;
            while j < top.len() && top[j].0.expand(level) == prefix {
                sum += top[j].1;
                j += 1;
            }
            if !sum.is_zero() {
                let k = (1u64 << level) + prefix_value(&prefix);
                return if sum > BigRational::zero() {
                    Label::Pos { alpha, k }
                } else {
                    Label::Neg { alpha, k }
                };
            }
            i = j;
        }
    }
    panic!("cylinder enumeration failed to separate the support of a nonzero real")
}

fn prefix_value(prefix: &str) -> u64 {
    let mut v = 0u64;
    for b in prefix.bytes() {
        v = (v << 1) | u64::from(b == b'1');
    }
    v
}

/// Split a nonzero real into its strictly-below-top part `d` and its
/// top-piece part `e`, so that `x = d + e`.
pub fn split_below_top(x: &HamelReal) -> Option<(HamelReal, HamelReal)> {
    let alpha = x.max_index()?;
    let d = HamelReal::from_terms(
        x.terms()
            .filter(|(b, _)| b.piece < alpha)
            .map(|(b, q)| (b.clone(), q.clone())),
    );
    let e = HamelReal::from_terms(
        x.terms()
            .filter(|(b, _)| b.piece == alpha)
            .map(|(b, q)| (b.clone(), q.clone())),
    );
    Some((d, e))
}

/// Whether `x` and `y` lie on the same positive rational ray: both zero,
/// or `y = q·x` for some rational `q > 0`.
pub fn same_ray(x: &HamelReal, y: &HamelReal) -> bool {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => return true,
        (false, false) => {}
        _ => return false,
    }
    if x.support_len() != y.support_len() {
        return false;
    }
    let (b0, c0) = x.leading_term().unwrap();
    let Some(d0) = y.coeff(b0) else {
        return false;
    };
    let q = d0 / c0;
    if q <= BigRational::zero() {
        return false;
    }
    y == &x.scale(&q)
}

/// Draw a pair `(x, y)` guaranteed to share a nonzero label: `y = q·x + d`
/// with `q > 0` rational and `d` supported strictly below `max_index(x)`.
/// Scaling by `q > 0` preserves the label and adding `d` cannot disturb
/// the top piece.
pub fn sample_same_label_pair(
    rng: &mut rand_chacha::ChaCha8Rng,
    cfg: &SampleConfig,
) -> (HamelReal, HamelReal) {
    let x = sample_nonzero_real(rng, cfg);
    let q = sample_pos_coeff(rng, cfg.coeff_bound);
    let alpha = x.max_index().unwrap();
    let d = if alpha == 0 {
        HamelReal::zero()
    } else {
        sample_real_over(rng, cfg, alpha - 1)
    };
    let y = x.scale(&q).add(&d);
    (x, y)
}

fn label_fields(label: Label) -> (Option<u64>, Option<u64>) {
    match label.alpha_k() {
        None => (None, None),
        Some((a, k)) => (Some(u64::from(a)), Some(k)),
    }
}

/// Run the partition property suite on seeded samples.
///
/// Checks, per drawn sample: (a) totality — every real gets exactly one
/// label and relabeling a re-canonicalized copy agrees; (b) closure on
/// constructed same-label pairs; (c) homogeneity under positive rational
/// scaling; (d) Pos/Neg duality under negation. Violations become report
/// entries.
pub fn verify_partition_sample(cfg: &SampleConfig) -> Report {
    let mut report = Report::new("partition");
    let mut rng = cfg.rng();

    for _ in 0..cfg.count {
        // (a) totality and stability
        let x = sample_real(&mut rng, cfg);
        let label = classify(&x);
        let (alpha, k) = label_fields(label);
        report.bump_label(label.tag(), alpha, k);
        report.bump_check("totality", 1);
        let again = classify(&HamelReal::from_terms(
            x.terms().map(|(b, q)| (b.clone(), q.clone())),
        ));
        if again != label {
            report.push_violation(Violation::new(
                "stability",
                x.to_string(),
                "-",
                label.to_string(),
                again.to_string(),
            ));
        }

        // (b) closure on a constructed same-label pair
        let (x, y) = sample_same_label_pair(&mut rng, cfg);
        let lx = classify(&x);
        let ly = classify(&y);
        report.bump_check("closure", 1);
        if lx != ly {
            report.push_violation(Violation::new(
                "pair-label",
                x.to_string(),
                y.to_string(),
                lx.to_string(),
                ly.to_string(),
            ));
        } else {
            let sum = classify(&x.add(&y));
            if sum != lx {
                report.push_violation(Violation::new(
                    "closure",
                    x.to_string(),
                    y.to_string(),
                    lx.to_string(),
                    sum.to_string(),
                ));
            }
        }

        // (c) homogeneity under q ∈ Q+
        let x = sample_real(&mut rng, cfg);
        let q = sample_pos_coeff(&mut rng, cfg.coeff_bound);
        report.bump_check("homogeneity", 1);
        let lx = classify(&x);
        let lq = classify(&x.scale(&q));
        if lq != lx {
            report.push_violation(Violation::new(
                "homogeneity",
                x.to_string(),
                format!("{q}"),
                lx.to_string(),
                lq.to_string(),
            ));
        }

        // (d) negation duality
        report.bump_check("duality", 1);
        let ln = classify(&x.neg());
        if ln != lx.dual() {
            report.push_violation(Violation::new(
                "duality",
                x.to_string(),
                "-",
                lx.dual().to_string(),
                ln.to_string(),
            ));
        }
    }
    report
}

/// Property suite for the underlying symbolic model: vector-space axioms
/// on sampled triples, additivity of cylinder sums, and separation of
/// sampled point sets within the certified index bound.
pub fn verify_hamel(cfg: &SampleConfig) -> Report {
    use crate::hamel::{cylinder_contains, cylinder_string, lex_index_bound};
    use crate::sample::{sample_coeff, sample_point};

    let mut report = Report::new("hamel");
    let mut rng = cfg.rng();

    for _ in 0..cfg.count {
        let x = sample_real(&mut rng, cfg);
        let y = sample_real(&mut rng, cfg);
        let z = sample_real(&mut rng, cfg);
        let p = sample_coeff(&mut rng, cfg.coeff_bound);
        let q = sample_coeff(&mut rng, cfg.coeff_bound);

        report.bump_check("vector-axioms", 1);
        let ok = x.add(&y) == y.add(&x)
            && x.add(&y).add(&z) == x.add(&y.add(&z))
            && x.add(&y).scale(&p) == x.scale(&p).add(&y.scale(&p))
            && x.scale(&(&p + &q)) == x.scale(&p).add(&x.scale(&q))
            && x.scale(&(&p * &q)) == x.scale(&q).scale(&p)
            && x.sub(&x).is_zero();
        if !ok {
            report.push_violation(Violation::new(
                "vector-axioms",
                x.to_string(),
                y.to_string(),
                "axioms hold",
                "axiom failure",
            ));
        }

        report.bump_check("canonical", 1);
        if !(x.add(&y).is_canonical() && x.scale(&p).is_canonical()) {
            report.push_violation(Violation::new(
                "canonical",
                x.to_string(),
                y.to_string(),
                "no zero coefficients",
                "zero coefficient stored",
            ));
        }

        report.bump_check("coeff-sum-additive", 1);
        let sum = x.add(&y);
        let pieces: std::collections::BTreeSet<u32> =
            x.support().chain(y.support()).map(|b| b.piece).collect();
        for piece in pieces {
            for k in 1..=32u64 {
                if sum.cylinder_sum(piece, k)
                    != x.cylinder_sum(piece, k) + y.cylinder_sum(piece, k)
                {
                    report.push_violation(Violation::new(
                        "coeff-sum-additive",
                        x.to_string(),
                        y.to_string(),
                        format!("additive at piece {piece} cylinder {k}"),
                        "sum mismatch",
                    ));
                }
            }
        }

        // separation of a sampled point set within the bound
        report.bump_check("separation", 1);
        let n_points = rng.gen_range(1..=4u32);
        let points: std::collections::BTreeSet<Point> = (0..n_points)
            .map(|_| sample_point(&mut rng, cfg.max_point_len))
            .collect();
        let bound = lex_index_bound(points.iter());
        let mut separated = false;
        for k in 1..=u64::try_from(bound).unwrap_or(u64::MAX) {
            let t = cylinder_string(k);
            if points.iter().filter(|p| cylinder_contains(p, &t)).count() == 1 {
                separated = true;
                break;
            }
        }
        if !separated {
            let listing = points
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",");
            report.push_violation(Violation::new(
                "separation",
                listing,
                "-",
                format!("separating cylinder at most {bound}"),
                "none found",
            ));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamel::{cylinder_string, lex_index_bound, BasisElement};
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn b(piece: u32, point: &str) -> BasisElement {
        BasisElement::new(piece, point).unwrap()
    }

    fn real(pairs: &[(u32, &str, i64, i64)]) -> HamelReal {
        HamelReal::from_terms(
            pairs
                .iter()
                .map(|&(piece, point, n, d)| (b(piece, point), rat(n, d))),
        )
    }

    /// Literal scan straight off the definition: try cylinders
    /// k = 1, 2, 3, … up to the separation bound. Kept as an oracle for
    /// the grouped-prefix scan in `classify`.
    fn classify_naive(x: &HamelReal) -> Label {
        let Some(alpha) = x.max_index() else {
            return Label::Zero;
        };
        let points: Vec<_> = x
            .support()
            .filter(|b| b.piece == alpha)
            .map(|b| &b.point)
            .collect();
        let bound = u64::try_from(lex_index_bound(points.iter().copied())).unwrap();
        for k in 1..=bound {
            let s = x.cylinder_sum(alpha, k);
            if s > BigRational::zero() {
                return Label::Pos { alpha, k };
            }
            if s < BigRational::zero() {
                return Label::Neg { alpha, k };
            }
        }
        unreachable!("separation bound exhausted");
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&HamelReal::zero()), Label::Zero);
        assert_eq!(
            classify(&real(&[(2, "", 3, 1)])),
            Label::Pos { alpha: 2, k: 1 }
        );
        // cancellation at the full piece pushes k to the "0" cylinder
        assert_eq!(
            classify(&real(&[(0, "01", 1, 1), (0, "1", -1, 1)])),
            Label::Pos { alpha: 0, k: 2 }
        );
        assert_eq!(
            classify(&real(&[(0, "01", -1, 1), (0, "1", 1, 1)])),
            Label::Neg { alpha: 0, k: 2 }
        );
    }

    #[test]
    fn classify_scans_in_length_lex_order() {
        // all three points share the prefix "01", so sums cancel on every
        // cylinder shorter than three characters; the points first part
        // ways at level three, where cylinder "010" isolates "01"
        let x = real(&[(1, "01", 2, 1), (1, "011", 3, 1), (1, "0111", -5, 1)]);
        let got = classify(&x);
        assert_eq!(got, classify_naive(&x));
        assert_eq!(got, Label::Pos { alpha: 1, k: 10 });
        assert_eq!(cylinder_string(10), "010");
    }

    #[test]
    fn split_examples() {
        let x = real(&[(1, "", 1, 1)]);
        let (d, e) = split_below_top(&x).unwrap();
        assert!(d.is_zero());
        assert_eq!(e, x);

        let x = real(&[(0, "", 2, 1), (3, "1", 5, 1)]);
        let (d, e) = split_below_top(&x).unwrap();
        assert_eq!(d, real(&[(0, "", 2, 1)]));
        assert_eq!(e, real(&[(3, "1", 5, 1)]));
        assert_eq!(d.add(&e), x);

        assert!(split_below_top(&HamelReal::zero()).is_none());
    }

    #[test]
    fn same_ray_examples() {
        let zero = HamelReal::zero();
        assert!(same_ray(&zero, &zero));
        let x = real(&[(0, "", 1, 1), (2, "1", -3, 2)]);
        assert!(same_ray(&x, &x.scale(&rat(3, 2))));
        assert!(!same_ray(&x, &x.scale(&rat(-1, 1))));
        assert!(!same_ray(&x, &zero));
        assert!(!same_ray(&real(&[(0, "", 1, 1)]), &real(&[(1, "", 1, 1)])));
    }

    #[test]
    fn vacuous_run_is_clean() {
        let cfg = SampleConfig::new(1).with_count(0);
        let report = verify_partition_sample(&cfg);
        assert!(report.ok());
        assert_eq!(report.checks, 0);
        assert!(report.label_counts.is_empty());
    }

    #[test]
    fn small_runs_are_clean_and_deterministic() {
        let cfg = SampleConfig::new(11).with_count(300);
        let a = verify_partition_sample(&cfg);
        let b = verify_partition_sample(&cfg);
        assert!(a.ok(), "violations: {:?}", a.violations);
        assert_eq!(a.records(), b.records());
        assert!(verify_hamel(&cfg).ok());
    }

    #[test]
    fn attainable_cylinder_indices_form_the_left_sibling_tree() {
        // cylinder sums refine along the tree: S(u) = S(u0) + S(u1). If
        // every index before k vanishes and k's string ends in 1, the
        // parent and the left sibling force S at k to vanish too. So the
        // attainable k are 1 and the strings ending in 0; a witness for
        // "10" (k = 6) puts opposite coefficients on "1" and "11":
        let x = real(&[(0, "1", 1, 1), (0, "11", -1, 1)]);
        assert_eq!(classify(&x), Label::Pos { alpha: 0, k: 6 });
        assert_eq!(cylinder_string(6), "10");

        // whereas single points always land at k = 1
        let deep = real(&[(4, "0101", 1, 1)]);
        assert_eq!(classify(&deep), Label::Pos { alpha: 4, k: 1 });
    }

    #[test]
    fn closure_example_by_hand() {
        let x = real(&[(0, "", 1, 1)]);
        let y = real(&[(0, "", 2, 1)]);
        let expected = Label::Pos { alpha: 0, k: 1 };
        assert_eq!(classify(&x), expected);
        assert_eq!(classify(&y), expected);
        assert_eq!(classify(&x.add(&y)), expected);
        // opposite labels may cancel; that is not a closure counterexample
        assert_eq!(classify(&x.add(&x.neg())), Label::Zero);
    }

    prop_compose! {
        fn arb_real()(pairs in prop::collection::vec(
            (0u32..5, "[01]{0,6}", -30i64..=30, 1i64..=10), 0..6)) -> HamelReal
        {
            HamelReal::from_terms(pairs.into_iter().map(|(piece, bits, n, d)| {
                (b(piece, bits.trim_end_matches('0')), rat(n, d))
            }))
        }
    }

    proptest! {
        #[test]
        fn grouped_scan_matches_naive_scan(x in arb_real()) {
            prop_assert_eq!(classify(&x), classify_naive(&x));
        }

        #[test]
        fn duality_and_homogeneity(x in arb_real(), n in 1i64..=20, d in 1i64..=20) {
            let q = rat(n, d);
            prop_assert_eq!(classify(&x.neg()), classify(&x).dual());
            prop_assert_eq!(classify(&x.scale(&q)), classify(&x));
        }

        #[test]
        fn lower_noise_keeps_the_label(x in arb_real(), noise in arb_real()) {
            prop_assume!(!x.is_zero());
            let alpha = x.max_index().unwrap();
            let d = HamelReal::from_terms(
                noise
                    .terms()
                    .filter(|(b, _)| b.piece < alpha)
                    .map(|(b, q)| (b.clone(), q.clone())),
            );
            prop_assert_eq!(classify(&x.add(&d)), classify(&x));
        }

        #[test]
        fn split_parts_explain_the_label(x in arb_real()) {
            prop_assume!(!x.is_zero());
            let label = classify(&x);
            let (alpha, k) = label.alpha_k().unwrap();
            let (d, e) = split_below_top(&x).unwrap();
            prop_assert!(d.support().all(|b| b.piece < alpha));
            prop_assert!(e.support().all(|b| b.piece == alpha));
            prop_assert_eq!(d.add(&e), x.clone());
            // e alone reproduces (k, sign)
            prop_assert_eq!(classify(&e), label);
            for i in 1..k {
                prop_assert!(e.cylinder_sum(alpha, i).is_zero());
            }
        }

        #[test]
        fn rays_respect_labels(x in arb_real(), n in 1i64..=15, d in 1i64..=15) {
            let y = x.scale(&rat(n, d));
            prop_assert!(same_ray(&x, &y));
            if !x.is_zero() {
                prop_assert_eq!(classify(&x), classify(&y));
            }
        }
    }
}
