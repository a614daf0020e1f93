use backhaul_secrecy::fading::{outage_probabilities, realization, realized_secrecy};
use backhaul_secrecy::{FadingAverages, RateBps, StrategyKind};

fn fig6_averages() -> FadingAverages {
    FadingAverages::from_db(15.0, 15.0, 15.0, 15.0, 15.0).unwrap()
}

fn rate(v: f64) -> RateBps {
    RateBps::new(v).unwrap()
}

/// `P[(C(a) - C(e))^+ < target]` for independent exponential `a` (mean
/// `mean_ab`) and `e` (mean `mean_ae`), by midpoint rule over the quantile of
/// `e` and composite Simpson over `a` below the outage boundary.
fn no_downlink_outage_quadrature(mean_ab: f64, mean_ae: f64, target: f64) -> f64 {
    const OUTER: usize = 20_000;
    const INNER: usize = 64;
    let k = target.exp2();
    let density = |x: f64| (-x / mean_ab).exp() / mean_ab;
    let mut total = 0.0;
    for i in 0..OUTER {
        let v = (i as f64 + 0.5) / OUTER as f64;
        let e = -mean_ae * (1.0 - v).ln();
        let upper = k * (1.0 + e) - 1.0;
        let h = upper / INNER as f64;
        let mut s = density(0.0) + density(upper);
        for j in 1..INNER {
            s += density(j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
        }
        total += s * h / 3.0;
    }
    total / OUTER as f64
}

#[test]
fn quadrature_oracle_matches_closed_form() {
    let m = 10f64.powf(1.5);
    let q = no_downlink_outage_quadrature(m, m, 1.0);
    let closed = 1.0 - (-1.0 / m).exp() / 3.0;
    assert!((q - closed).abs() < 1e-6, "{q} vs {closed}");
}

#[test]
fn no_downlink_estimate_matches_quadrature() {
    let avg = fig6_averages();
    let est = outage_probabilities(&[StrategyKind::NoDownlink], rate(1.0), &avg, rate(0.0), 200_000, 11).unwrap()[0];
    let m = avg.mean_ab.get();
    let oracle = no_downlink_outage_quadrature(m, avg.mean_ae.get(), 1.0);
    assert!((est.p_out - oracle).abs() <= est.half_width_95, "{} ± {} vs {oracle}", est.p_out, est.half_width_95);
}

#[test]
fn wyner_ziv_never_in_outage_when_elementary_quantization_is_not() {
    let avg = fig6_averages();
    for c_l in [0.5, 2.0, 4.0] {
        for i in 0..20_000 {
            let g = realization(&avg, 3, i);
            let wz = realized_secrecy(StrategyKind::WynerZiv, &g, rate(c_l));
            let eq = realized_secrecy(StrategyKind::ElemQuant, &g, rate(c_l));
            assert!(wz >= eq, "realization {i}, c_l {c_l}");
        }
    }
}

#[test]
fn outage_orderings_at_default_averages() {
    use StrategyKind::*;
    let avg = fig6_averages();
    let kinds = [ElemQuant, WynerZiv, Superposition, FullTransfer, NoiseJamBound];
    let mut previous: Option<Vec<f64>> = None;
    for c_l in [0.0, 1.0, 2.0, 4.0, 10.0] {
        let est = outage_probabilities(&kinds, rate(1.0), &avg, rate(c_l), 50_000, 5).unwrap();
        let [eq, wz, sup, ft, njb] = [0, 1, 2, 3, 4].map(|i| est[i]);
        assert!(wz.outages <= eq.outages);
        assert!(njb.p_out <= ft.p_out + ft.half_width_95);
        for backbone in [eq, wz, sup] {
            assert!(ft.p_out <= backbone.p_out + backbone.half_width_95);
        }
        if c_l == 10.0 {
            for backbone in [eq, wz, sup] {
                assert!((backbone.p_out - ft.p_out).abs() <= ft.half_width_95);
            }
        }
        // More backhaul never hurts beyond sampling noise.
        let p: Vec<f64> = est.iter().map(|e| e.p_out).collect();
        if let Some(prev) = &previous {
            for (k, (now, before)) in p.iter().zip(prev).enumerate() {
                assert!(*now <= before + est[k].half_width_95, "{:?}: {now} > {before}", kinds[k]);
            }
        }
        previous = Some(p);
    }
}
