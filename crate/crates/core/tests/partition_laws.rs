//! Cross-module laws through the public API.

use num_rational::BigRational;
use semilab::expr::parse_real;
use semilab::interval::parse_union;
use semilab::leading::{classify_leading, Kappa, LeadingLabel};
use semilab::mult::{mult_classify, PosRealExp};
use semilab::partition::{classify, split_below_top, Label};
use semilab::sample::{sample_nonzero_real, sample_real};
use semilab::sumset::{cantor_stage, even_sum_halfline, minkowski_sum, n_fold};
use semilab::SampleConfig;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn text_round_trips_through_the_grammar() {
    let cfg = SampleConfig::new(202);
    let mut rng = cfg.rng();
    for _ in 0..2000 {
        let x = sample_real(&mut rng, &cfg);
        let printed = x.to_string();
        assert_eq!(parse_real(&printed).unwrap(), x, "echo of {printed}");
    }
}

#[test]
fn splitting_then_adding_is_the_identity_and_labels_travel() {
    let cfg = SampleConfig::new(303);
    let mut rng = cfg.rng();
    for _ in 0..2000 {
        let x = sample_nonzero_real(&mut rng, &cfg);
        let label = classify(&x);
        let (d, e) = split_below_top(&x).unwrap();
        assert_eq!(d.add(&e), x);
        assert_eq!(classify(&e), label);
        // the below-top part alone always sits in a strictly lower piece
        if let (Some((alpha, _)), Some(da)) = (label.alpha_k(), d.max_index()) {
            assert!(da < alpha);
        }
    }
}

#[test]
fn multiplicative_labels_are_additive_labels_of_exponents() {
    let cfg = SampleConfig::new(404);
    let mut rng = cfg.rng();
    for _ in 0..1000 {
        let u = PosRealExp::new(sample_real(&mut rng, &cfg));
        let v = PosRealExp::new(sample_real(&mut rng, &cfg));
        if mult_classify(&u) == mult_classify(&v) && mult_classify(&u) != Label::Zero {
            assert_eq!(mult_classify(&u.mul(&v)), mult_classify(&u));
        }
        assert_eq!(mult_classify(&u.mul(&u.inverse())), Label::Zero);
    }
}

#[test]
fn kappa_pieces_refine_to_rays() {
    // two reals on the same positive ray land in the same leading piece
    // for every kappa
    let cfg = SampleConfig::new(505);
    let mut rng = cfg.rng();
    for _ in 0..500 {
        let x = sample_nonzero_real(&mut rng, &cfg);
        let y = x.scale(&rat(7, 3));
        for k in 1..=6u32 {
            let kappa = Kappa::new_finite(k).unwrap();
            assert_eq!(classify_leading(&x, kappa), classify_leading(&y, kappa));
        }
    }
}

#[test]
fn leading_pieces_partition_small_inventory() {
    // a fixed inventory hits every label kind for kappa = 3
    let kappa = Kappa::new_finite(3).unwrap();
    let inventory = [
        ("0", LeadingLabel::Remainder),
        ("1*b(0,)", LeadingLabel::Piece(0)),
        ("1*b(1,01) + 5*b(4,)", LeadingLabel::Piece(1)),
        ("-1*b(0,)", LeadingLabel::Remainder),
        ("1*b(2,)", LeadingLabel::Remainder),
        ("3/2*b(1,1) - 9*b(3,)", LeadingLabel::Piece(1)),
    ];
    for (src, expected) in inventory {
        let x = parse_real(src).unwrap();
        assert_eq!(classify_leading(&x, kappa), expected, "{src}");
    }
}

#[test]
fn interval_text_and_sums_cooperate() {
    let a = parse_union("[0,1/3] u [2/3,1]").unwrap();
    assert_eq!(a, cantor_stage(1));
    assert_eq!(minkowski_sum(&a, &a), parse_union("[0,2]").unwrap());
    assert_eq!(
        n_fold(&parse_union("(1,2)").unwrap(), 4),
        parse_union("(4,8)").unwrap()
    );
    let res = even_sum_halfline(&parse_union("(1,2)").unwrap()).unwrap();
    assert_eq!(res.threshold, rat(4, 1));
}
