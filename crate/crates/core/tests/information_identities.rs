use proptest::prelude::*;
use softprob::information::*;
use softprob::moments::{soft_expectation_of, soft_variance};
use softprob::{
    BivariateGaussian, ContinuousDistribution, Gaussian, GaussianParams, InfoConfig, MiForm,
    MixedSet, QuadratureConfig, SoftNumber, ZlogzMode,
};

fn gaussian() -> impl Strategy<Value = Gaussian> {
    (-2.0..2.0f64, 0.2..3.0f64)
        .prop_map(|(mean, variance)| Gaussian::new(GaussianParams { mean, variance }).unwrap())
}

fn bivariate() -> impl Strategy<Value = BivariateGaussian> {
    (gaussian(), gaussian(), -0.9..0.9f64).prop_map(|(x, y, rho)| {
        let cov = rho * (x.variance() * y.variance()).sqrt();
        BivariateGaussian::new(x.params(), y.params(), cov).unwrap()
    })
}

/// Up to three disjoint intervals and up to three points outside them.
fn mixed_set() -> impl Strategy<Value = MixedSet> {
    (
        prop::collection::vec(-4.0..4.0f64, 0..=6),
        prop::collection::vec(-4.0..4.0f64, 0..=3),
    )
        .prop_filter_map("needs a valid set", |(mut edges, points)| {
            edges.sort_by(f64::total_cmp);
            let intervals: Vec<(f64, f64)> = edges
                .chunks_exact(2)
                .map(|c| (c[0], c[1]))
                .filter(|(a, b)| b - a > 1e-3)
                .collect();
            let mut pts: Vec<f64> = points
                .into_iter()
                .filter(|p| !intervals.iter().any(|&(a, b)| *p >= a && *p <= b))
                .collect();
            pts.sort_by(f64::total_cmp);
            pts.dedup();
            let ms = MixedSet::new(pts, intervals).ok()?;
            (!ms.is_empty()).then_some(ms)
        })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn self_kld_is_absolute_zero(d in gaussian(), ms in mixed_set()) {
        let k = soft_kld(&d, &d, &ms, &InfoConfig::default()).unwrap();
        prop_assert!(k.is_absolute_zero(), "{}", k);
    }

    #[test]
    fn cross_entropy_keeps_h1_and_splits_kld(d in gaussian(), e in gaussian(), ms in mixed_set()) {
        let cfg = InfoConfig::default();
        let h = soft_entropy(&d, &ms, &cfg).unwrap();
        let ce = soft_cross_entropy(&d, &e, &ms, &cfg).unwrap();
        let k = soft_kld(&d, &e, &ms, &cfg).unwrap();
        prop_assert_eq!(ce.zlogz(), h.zlogz());
        prop_assert!(close(k.soft(), ce.soft() - h.soft(), 1e-9), "{} vs {}", k.soft(), ce.soft() - h.soft());
        prop_assert!(close(k.real(), ce.real() - h.real(), 1e-9), "{} vs {}", k.real(), ce.real() - h.real());
    }

    #[test]
    fn collapse_mode_zeroes_h1(d in gaussian(), ms in mixed_set()) {
        let cfg = InfoConfig::default().with_zlogz_mode(ZlogzMode::Collapse);
        let h = soft_entropy(&d, &ms, &cfg).unwrap();
        prop_assert_eq!(h.zlogz(), 0.0);
        let axis = soft_entropy(&d, &ms, &InfoConfig::default()).unwrap();
        prop_assert_eq!(h.soft_part(), axis.soft_part());
    }

    #[test]
    fn full_support_kld_is_nonnegative(d in gaussian(), e in gaussian()) {
        let (lo, hi) = (
            (d.mean() - 10.0 * d.variance().sqrt()).min(e.mean() - 10.0 * e.variance().sqrt()),
            (d.mean() + 10.0 * d.variance().sqrt()).max(e.mean() + 10.0 * e.variance().sqrt()),
        );
        let ms = MixedSet::new(vec![], vec![(lo, hi)]).unwrap();
        let k = soft_kld(&d, &e, &ms, &InfoConfig::default()).unwrap();
        prop_assert!(k.real() >= -1e-9, "{}", k);
        prop_assert_eq!(k.soft(), 0.0);
        // closed form for two Gaussians
        let (m1, v1, m2, v2) = (d.mean(), d.variance(), e.mean(), e.variance());
        let exact = 0.5 * ((v2 / v1).ln() + (v1 + (m1 - m2).powi(2)) / v2 - 1.0);
        prop_assert!((k.real() - exact).abs() <= 1e-7 * exact.max(1.0), "{} vs {}", k.real(), exact);
    }

    #[test]
    fn base_change_divides_by_ln_base(d in gaussian(), e in gaussian(), ms in mixed_set()) {
        let ln2 = std::f64::consts::LN_2;
        let nat = InfoConfig::default();
        let bits = nat.with_log_base(2.0);
        let (ke, k2) = (soft_kld(&d, &e, &ms, &nat).unwrap(), soft_kld(&d, &e, &ms, &bits).unwrap());
        prop_assert!(close(k2.soft(), ke.soft() / ln2, 1e-12));
        prop_assert!(close(k2.real(), ke.real() / ln2, 1e-12));
        let (he, h2) = (soft_entropy(&d, &ms, &nat).unwrap(), soft_entropy(&d, &ms, &bits).unwrap());
        prop_assert!(close(h2.soft(), he.soft() / ln2, 1e-12));
        prop_assert!(close(h2.real(), he.real() / ln2, 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn mi_forms_agree(j in bivariate(), sx in mixed_set(), sy in mixed_set()) {
        let cfg = InfoConfig::default();
        let s = soft_mutual_information(&j, &sx, &sy, &cfg, MiForm::Symmetric).unwrap();
        let c = soft_mutual_information(&j, &sx, &sy, &cfg, MiForm::Conditional).unwrap();
        prop_assert!((s.soft() - c.soft()).abs() <= 1e-8f64.max(1e-6 * s.soft().abs()), "{} vs {}", s, c);
        prop_assert!((s.real() - c.real()).abs() <= 1e-8f64.max(1e-6 * s.real().abs()), "{} vs {}", s, c);
    }

    #[test]
    fn mi_is_symmetric(j in bivariate(), sx in mixed_set(), sy in mixed_set()) {
        let cfg = InfoConfig::default();
        let swapped = BivariateGaussian::new(j.y().params(), j.x().params(), j.covariance()).unwrap();
        let a = soft_mutual_information(&j, &sx, &sy, &cfg, MiForm::Symmetric).unwrap();
        let b = soft_mutual_information(&swapped, &sy, &sx, &cfg, MiForm::Symmetric).unwrap();
        prop_assert!((a.soft() - b.soft()).abs() <= 1e-8f64.max(1e-6 * a.soft().abs()), "{} vs {}", a, b);
        prop_assert!((a.real() - b.real()).abs() <= 1e-8f64.max(1e-6 * a.real().abs()), "{} vs {}", a, b);
    }

    #[test]
    fn independent_mi_vanishes(x in gaussian(), y in gaussian(), sx in mixed_set(), sy in mixed_set()) {
        let j = BivariateGaussian::new(x.params(), y.params(), 0.0).unwrap();
        for form in [MiForm::Symmetric, MiForm::Conditional] {
            let v = soft_mutual_information(&j, &sx, &sy, &InfoConfig::default(), form).unwrap();
            prop_assert!(v.is_absolute_zero(), "{}", v);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expectation_is_linear(d in gaussian(), ms in mixed_set(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let cfg = QuadratureConfig::default_1d();
        let g1 = |x: f64| x * x;
        let g2 = |x: f64| x.sin();
        let lhs = soft_expectation_of(&d, &ms, |x| a * g1(x) + b * g2(x), &cfg).unwrap();
        let rhs = soft_expectation_of(&d, &ms, g1, &cfg).unwrap().scale(a)
            + soft_expectation_of(&d, &ms, g2, &cfg).unwrap().scale(b);
        prop_assert!((lhs.soft() - rhs.soft()).abs() <= 1e-9);
        prop_assert!((lhs.real() - rhs.real()).abs() <= 1e-9);
    }

    #[test]
    fn variance_components(d in gaussian(), ms in mixed_set()) {
        let (v, m) = soft_variance(&d, &ms, &QuadratureConfig::default_1d()).unwrap();
        prop_assert!(m.lambda_sq >= 0.0);
        if ms.intervals().is_empty() {
            prop_assert_eq!(m.lambda_sq, 0.0);
        }
        prop_assert!((0.0..=1.0 + 1e-12).contains(&m.coverage));
        prop_assert!((m.gamma2 + m.kappa * (1.0 - m.coverage)).abs() <= 1e-9);
        prop_assert_eq!(v, SoftNumber::new(m.gamma, m.lambda_sq));
        prop_assert_eq!(m.gamma, m.gamma1_sq + 2.0 * m.nu * m.gamma2);
    }
}

/// Midpoint rule with `cells` cells per interval.
fn riemann(f: impl Fn(f64) -> f64, a: f64, b: f64, cells: usize) -> f64 {
    let h = (b - a) / cells as f64;
    (0..cells).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

#[test]
fn moments_match_riemann_oracle() {
    let d = Gaussian::new(GaussianParams { mean: 0.4, variance: 1.7 }).unwrap();
    let ms = MixedSet::new(vec![-2.0, 3.5], vec![(-1.5, 0.25), (1.0, 3.0)]).unwrap();
    let cfg = QuadratureConfig::default_1d();
    let (_, m) = soft_variance(&d, &ms, &cfg).unwrap();
    let kappa: f64 = ms.intervals().iter().map(|&(a, b)| riemann(|x| x * d.pdf(x), a, b, 100_000)).sum();
    let lambda: f64 = ms
        .intervals()
        .iter()
        .map(|&(a, b)| riemann(|x| (kappa - x).powi(2) * d.pdf(x), a, b, 100_000))
        .sum();
    assert!((m.kappa - kappa).abs() < 1e-5, "{} vs {kappa}", m.kappa);
    assert!((m.lambda_sq - lambda).abs() < 1e-5, "{} vs {lambda}", m.lambda_sq);
}

#[test]
fn soft_variance_can_be_negative() {
    // points at κ make γ₁² vanish, leaving 2νγ₂ = −2νκ(1 − coverage) < 0
    let d = Gaussian::standard();
    let probe = MixedSet::new(vec![], vec![(0.5, 1.5)]).unwrap();
    let (_, m0) = soft_variance(&d, &probe, &QuadratureConfig::default_1d()).unwrap();
    let ms = MixedSet::new(vec![m0.kappa], vec![(0.5, 1.5)]).unwrap();
    let (v, m) = soft_variance(&d, &ms, &QuadratureConfig::default_1d()).unwrap();
    assert!(m.gamma1_sq < 1e-30);
    assert!(v.soft() < 0.0, "{v}");
}

#[test]
fn spec_entropy_examples() {
    use softprob::{Uniform, UniformParams};
    let cfg = InfoConfig::default();
    let u1 = Uniform::new(UniformParams { lo: 0.0, hi: 1.0 }).unwrap();
    let u2 = Uniform::new(UniformParams { lo: 0.0, hi: 2.0 }).unwrap();
    let h = soft_entropy(&u1, &MixedSet::empty(), &cfg).unwrap();
    assert_eq!((h.zlogz(), h.soft(), h.real()), (0.0, 0.0, 0.0));
    let unit = MixedSet::new(vec![], vec![(0.0, 1.0)]).unwrap();
    let ce = soft_cross_entropy(&u1, &u2, &unit, &cfg).unwrap();
    assert!((ce.real() - std::f64::consts::LN_2).abs() < 1e-12);
    assert_eq!(soft_cross_entropy(&u1, &u1, &unit, &cfg).unwrap(), soft_entropy(&u1, &unit, &cfg).unwrap());
}
