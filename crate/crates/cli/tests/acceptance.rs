//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measurements (visible with `--nocapture`).
//!
//! Run with `cargo test -p semilab-cli --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use semilab::expr::parse_real;
use semilab::group::{find_covers, test_set, verify_cover_bounds, FiniteGroup, SubgroupCover};
use semilab::interval::{parse_union, Interval, IntervalUnion};
use semilab::leading::verify_leading;
use semilab::mult::{
    atom_product, enumerate_closed_generator_unions, Atom, PieceSet, ATOMS, GEN_BIG, GEN_SMALL,
    GEN_UNITS, GEN_ZERO,
};
use semilab::partition::{classify, sample_same_label_pair, split_below_top, Label};
use semilab::sample::{
    sample_nonzero_real, sample_pos_coeff, sample_real,
};
use semilab::sumset::{
    cantor_stage, even_sum_halfline, even_sum_union_bruteforce, is_additively_closed,
    is_triple_closed, minkowski_sum, odd_sums_contained, sample_bounded_positive_union,
    sample_positive_union, sample_triple_closed_union,
};
use semilab::SampleConfig;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The configuration fixed by the acceptance criteria.
fn acceptance_config() -> SampleConfig {
    SampleConfig {
        seed: 1,
        count: 100_000,
        max_terms: 8,
        max_index: 20,
        max_point_len: 8,
        coeff_bound: 100,
    }
}

fn pass(criterion: u32, name: &str, detail: String) {
    println!("acceptance {criterion:02} {name}: PASS ({detail})");
}

#[test]
fn acceptance_01_totality() {
    let cfg = acceptance_config();
    let mut rng = cfg.rng();
    let started = Instant::now();
    let mut zeros = 0u64;
    let mut pos = 0u64;
    let mut neg = 0u64;
    for _ in 0..cfg.count {
        let x = sample_real(&mut rng, &cfg);
        // classify totally orders the sample into exactly one label and
        // panics on any internal enumeration defect
        match classify(&x) {
            Label::Zero => {
                assert!(x.is_zero());
                zeros += 1;
            }
            Label::Pos { .. } => pos += 1,
            Label::Neg { .. } => neg += 1,
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(zeros + pos + neg, cfg.count);
    assert!(
        elapsed < Duration::from_secs(10),
        "totality run took {elapsed:?}"
    );
    pass(
        1,
        "totality",
        format!("100000 labels ({zeros} zero, {pos} pos, {neg} neg) in {elapsed:?}"),
    );
}

#[test]
fn acceptance_02_closure() {
    let cfg = acceptance_config();
    let mut rng = cfg.rng();
    let started = Instant::now();
    for i in 0..cfg.count {
        let (x, y) = sample_same_label_pair(&mut rng, &cfg);
        let lx = classify(&x);
        assert_eq!(classify(&y), lx, "pair {i}: sampler broke the label");
        assert_eq!(classify(&x.add(&y)), lx, "pair {i}: closure violated");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(20),
        "closure run took {elapsed:?}"
    );
    pass(2, "closure", format!("100000 same-label pairs in {elapsed:?}"));
}

#[test]
fn acceptance_03_homogeneity_duality() {
    let cfg = acceptance_config();
    let mut rng = cfg.rng();
    for i in 0..10_000u32 {
        let x = sample_real(&mut rng, &cfg);
        let label = classify(&x);
        let q = sample_pos_coeff(&mut rng, cfg.coeff_bound);
        assert_eq!(classify(&x.scale(&q)), label, "case {i}: homogeneity");
        assert_eq!(classify(&x.neg()), label.dual(), "case {i}: duality");
        if x.is_zero() {
            assert_eq!(label, Label::Zero);
        }
    }
    pass(3, "homogeneity+duality", "10000 cases each, 0 violations".into());
}

#[test]
fn acceptance_04_split() {
    let cfg = acceptance_config();
    let mut rng = cfg.rng();
    for i in 0..10_000u32 {
        let x = sample_nonzero_real(&mut rng, &cfg);
        let label = classify(&x);
        let (alpha, k) = label.alpha_k().expect("nonzero real");
        let (d, e) = split_below_top(&x).expect("nonzero real");
        assert!(
            d.support().all(|b| b.piece < alpha),
            "case {i}: d reaches the top piece"
        );
        assert_eq!(d.add(&e), x, "case {i}: split does not reassemble");
        // the top part alone reproduces (k, sign)
        for low in 1..k {
            assert!(
                e.cylinder_sum(alpha, low).is_zero(),
                "case {i}: nonzero sum below k"
            );
        }
        let lead = e.cylinder_sum(alpha, k);
        match label {
            Label::Pos { .. } => assert!(lead > BigRational::from_integer(0.into())),
            Label::Neg { .. } => assert!(lead < BigRational::from_integer(0.into())),
            Label::Zero => unreachable!(),
        }
    }
    pass(4, "split", "10000 cases, 0 violations".into());
}

#[test]
fn acceptance_05_leading_pieces() {
    let cfg = SampleConfig {
        count: 10_000,
        ..acceptance_config()
    };
    let report = verify_leading(&cfg, &[1, 2, 3, 4, 5, 6, 7, 8]);
    assert!(report.ok(), "violations: {:?}", report.violations);
    let closure_pairs = report
        .check_counts
        .iter()
        .find(|(n, _)| n == "closure")
        .map(|(_, n)| *n)
        .unwrap_or(0);
    // 8 finite kappas plus the unbounded one
    assert_eq!(closure_pairs, 9 * 10_000);
    pass(
        5,
        "leading-pieces",
        format!("witnesses sound, {closure_pairs} closure pairs, 0 violations"),
    );
}

#[test]
fn acceptance_06_even_sum_halflines() {
    // pinned values, matched against the brute-force union oracle
    let unit = parse_union("(1,2)").unwrap();
    let res = even_sum_halfline(&unit).unwrap();
    assert_eq!(res.threshold, rat(4, 1));
    assert!(res.certified);
    let brute = even_sum_union_bruteforce(&unit, 50);
    assert_eq!(
        brute.intersect(&parse_union("(0,100)").unwrap()),
        parse_union("(2,4) u (4,100)").unwrap()
    );
    assert!(!brute.contains(&rat(4, 1)));

    let low = parse_union("(0,1)").unwrap();
    let res = even_sum_halfline(&low).unwrap();
    assert_eq!(res.threshold, rat(0, 1));
    assert!(res.certified);
    assert_eq!(even_sum_union_bruteforce(&low, 50), parse_union("(0,100)").unwrap());

    // odd sums stay inside on sampled triple-closed inputs
    let cfg = acceptance_config();
    let mut rng = cfg.rng();
    for i in 0..100u32 {
        let a = sample_triple_closed_union(&mut rng);
        assert!(is_triple_closed(&a), "sample {i} not triple closed: {a}");
        assert_eq!(odd_sums_contained(&a, 8), Ok(true), "sample {i}: {a}");
    }

    // bounded nonempty positive sets are never 2- or 3-closed
    for i in 0..1000u32 {
        let a = sample_bounded_positive_union(&mut rng);
        assert!(!a.is_empty());
        assert!(
            !is_additively_closed(&a) && !is_triple_closed(&a),
            "sample {i} closed: {a}"
        );
    }
    pass(
        6,
        "even-sum-halflines",
        "thresholds 4 and 0 match brute force; 100 odd-sum and 1000 bounded samples clean".into(),
    );
}

#[test]
fn acceptance_07_cantor_sums() {
    let segment = parse_union("[0,2]").unwrap();
    let started = Instant::now();
    for n in 0..=10 {
        let stage = cantor_stage(n);
        assert_eq!(stage.parts().len(), 1usize << n);
        assert_eq!(minkowski_sum(&stage, &stage), segment, "stage {n}");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(5),
        "cantor sums took {elapsed:?}"
    );
    pass(7, "cantor-sums", format!("stages 0..=10 exact in {elapsed:?}"));
}

/// Exact product of two sign-pure-or-singleton intervals, by endpoint
/// products with closure flags. Independent of the atom table.
fn mul_intervals(a: &Interval, b: &Interval) -> Interval {
    let zero = BigRational::from_integer(0.into());
    let is_zero_point = |iv: &Interval| iv.lo() == Some(&zero) && iv.hi() == Some(&zero);
    if is_zero_point(a) || is_zero_point(b) {
        return Interval::point(zero);
    }
    let negative = |iv: &Interval| iv.hi().is_some_and(|h| *h <= zero);
    let reflect = |iv: &Interval| {
        Interval::new(
            iv.hi().map(|q| -q),
            iv.hi_closed(),
            iv.lo().map(|q| -q),
            iv.lo_closed(),
        )
        .unwrap()
    };
    if negative(a) {
        return reflect(&mul_intervals(&reflect(a), b));
    }
    if negative(b) {
        return reflect(&mul_intervals(a, &reflect(b)));
    }
    // both positive: endpoints multiply monotonically
    let lo = a.lo().unwrap() * b.lo().unwrap();
    let lo_closed = a.lo_closed() && b.lo_closed();
    let (hi, hi_closed) = match (a.hi(), b.hi()) {
        (Some(x), Some(y)) => (Some(x * y), a.hi_closed() && b.hi_closed()),
        _ => (None, false),
    };
    Interval::new(Some(lo), lo_closed, hi, hi_closed).unwrap()
}

#[test]
fn acceptance_08_mult_pieces() {
    // the ten closed generator unions, pinned
    let got = enumerate_closed_generator_unions();
    let expected = vec![
        GEN_SMALL,
        GEN_SMALL.union(GEN_UNITS),
        GEN_SMALL.union(GEN_ZERO),
        GEN_SMALL.union(GEN_UNITS).union(GEN_ZERO),
        GEN_BIG,
        GEN_BIG.union(GEN_UNITS),
        GEN_BIG.union(GEN_ZERO),
        GEN_BIG.union(GEN_UNITS).union(GEN_ZERO),
        GEN_SMALL.union(GEN_BIG).union(GEN_UNITS),
        GEN_SMALL.union(GEN_BIG).union(GEN_UNITS).union(GEN_ZERO),
    ];
    assert_eq!(got, expected);

    // every table entry equals the interval-multiplication oracle
    for a in ATOMS {
        for b in ATOMS {
            let product = mul_intervals(&a.interval(), &b.interval());
            let product = IntervalUnion::from_interval(product);
            let covered: Vec<Atom> = ATOMS
                .into_iter()
                .filter(|atom| {
                    IntervalUnion::from_interval(atom.interval()).is_subset(&product)
                })
                .collect();
            let oracle_set = PieceSet::from_atoms(&covered);
            // the covered atoms must tile the product exactly
            let tiled = IntervalUnion::normalize(
                covered.iter().map(|atom| atom.interval()).collect(),
            );
            assert_eq!(tiled, product, "oracle tiling broke at {a} * {b}");
            assert_eq!(
                atom_product(a, b),
                oracle_set,
                "table disagrees with the oracle at {a} * {b}"
            );
        }
    }
    pass(8, "mult-pieces", "10-set enumeration pinned; 49 table entries match the oracle".into());
}

#[test]
fn acceptance_09_group_covers() {
    let groups = test_set(64);
    assert!(groups.len() >= 30, "test set unexpectedly small");
    let mut covers_checked = 0u64;
    for group in &groups {
        for cover in find_covers(group, false) {
            let bounds = verify_cover_bounds(group, &cover).unwrap();
            assert!(
                bounds.ok(),
                "{}: inequalities failed: {bounds}",
                group.name()
            );
            covers_checked += 1;
        }
    }

    for p in [2u32, 3, 5] {
        let group = FiniteGroup::new(vec![p, p]).unwrap();
        let covers = find_covers(&group, false);
        let min_kappa = covers.iter().map(SubgroupCover::kappa).min().unwrap();
        assert_eq!(min_kappa, p as usize + 1, "Z{p}xZ{p}");
    }
    for p in [2u32, 3, 5, 7, 11, 13] {
        let group = FiniteGroup::new(vec![p]).unwrap();
        assert!(find_covers(&group, false).is_empty(), "Z{p}");
    }
    pass(
        9,
        "group-covers",
        format!(
            "{covers_checked} covers over {} groups pass all inequalities; spreads and primes pinned",
            groups.len()
        ),
    );
}

#[test]
fn acceptance_10_cli() {
    // parse/print round trips on sampled expressions and interval unions
    let cfg = acceptance_config();
    let mut rng = cfg.rng();
    for i in 0..10_000u32 {
        let x = sample_real(&mut rng, &cfg);
        let printed = x.to_string();
        assert_eq!(
            parse_real(&printed).expect("canonical form parses"),
            x,
            "expression round trip {i} failed: {printed}"
        );
    }
    for i in 0..10_000u32 {
        let u = match i % 3 {
            0 => sample_positive_union(&mut rng),
            1 => sample_bounded_positive_union(&mut rng),
            _ => sample_triple_closed_union(&mut rng),
        };
        let printed = u.to_string();
        assert_eq!(
            parse_union(&printed).expect("canonical form parses"),
            u,
            "union round trip {i} failed: {printed}"
        );
    }

    // seeded full verification exits 0
    let out = Command::new(env!("CARGO_BIN_EXE_semilab"))
        .args(["verify", "all", "--seed", "1"])
        .output()
        .expect("binary runs");
    assert_eq!(
        out.status.code(),
        Some(0),
        "verify all failed:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );

    // golden files
    for (args, golden) in [
        (vec!["enum10"], include_str!("golden/enum10.txt")),
        (vec!["covers", "Z2xZ2"], include_str!("golden/covers_z2xz2.txt")),
        (vec!["cantor-sum", "3"], include_str!("golden/cantor_sum_3.txt")),
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_semilab"))
            .args(&args)
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden, "{args:?}");
    }
    pass(
        10,
        "cli",
        "20000 round trips, verify-all exit 0, three golden files match".into(),
    );
}
