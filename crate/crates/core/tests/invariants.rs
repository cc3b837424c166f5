use proptest::prelude::*;

use stablehit::hitting_laws::{self as hl, HittingLaw};
use stablehit::resolvent::{density_p, h_q, resolvent_u, StableIndex};
use stablehit::sampling::{
    sample_beta, sample_gamma, sample_sym_stable, AlphaRayleigh, HittingTime, Overshoot, RandomStream,
};
use stablehit::verify::{parse_csv, parse_json, report_to_csv, report_to_json, VerificationReport};

fn idx(alpha: f64) -> StableIndex {
    StableIndex::hitting(alpha).unwrap()
}

fn near(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn density_is_even_and_positive(al in 1.05f64..=2.0, t in 0.1f64..5.0, x in 0.0f64..8.0) {
        let s = idx(al);
        let p = density_p(&s, t, x).unwrap();
        prop_assert!(p > 0.0);
        prop_assert_eq!(p, density_p(&s, t, -x).unwrap());
    }

    #[test]
    fn resolvent_peaks_at_origin(al in 1.05f64..=2.0, q in 0.05f64..5.0, x in 0.01f64..5.0) {
        let s = idx(al);
        let u0 = resolvent_u(&s, q, 0.0).unwrap();
        let ux = resolvent_u(&s, q, x).unwrap();
        prop_assert!(ux > 0.0 && ux < u0);
        prop_assert!(near(ux, resolvent_u(&s, q, -x).unwrap(), 1e-14));
        prop_assert!(near(h_q(&s, q, x).unwrap(), u0 - ux, 1e-12));
    }

    #[test]
    fn transforms_are_decreasing_in_rate(al in 1.1f64..=2.0, q in 0.05f64..4.0, a in 0.2f64..3.0) {
        let s = idx(al);
        for law in HittingLaw::ALL {
            let lo = law.eval(&s, q, a).unwrap();
            let hi = law.eval(&s, 1.5 * q, a).unwrap();
            prop_assert!(lo > 0.0 && lo <= 1.0, "{law} = {lo}");
            prop_assert!(hi < lo, "{law}: {hi} !< {lo}");
        }
    }

    #[test]
    fn products_and_scaling(al in 1.1f64..=2.0, q in 0.1f64..4.0, a in 0.2f64..3.0, c in 0.3f64..4.0) {
        let s = idx(al);
        let g = hl::lt_g_point(&s, q, a).unwrap();
        let xi = hl::lt_xi_point(&s, q, a).unwrap();
        prop_assert!(near(g * xi, hl::lt_t_point(&s, q, 0.0, a).unwrap(), 1e-12));
        let g = hl::lt_g_abs(&s, q, a).unwrap();
        let xi = hl::lt_xi_abs(&s, q, a).unwrap();
        prop_assert!(near(g * xi, hl::lt_t_abs(&s, q, a).unwrap(), 1e-12));
        let q2 = q / c.powf(al);
        for law in HittingLaw::ALL {
            prop_assert!(near(law.eval(&s, q, a).unwrap(), law.eval(&s, q2, c * a).unwrap(), 1e-9), "{law}");
        }
    }

    #[test]
    fn first_target_decomposition(al in 1.1f64..=2.0, q in 0.1f64..4.0, x in -2.0f64..2.0, a in 0.3f64..2.0, b in -2.0f64..-0.3) {
        let s = idx(al);
        let ab = hl::lt_t_a_before_b(&s, q, x, a, b).unwrap();
        let ba = hl::lt_t_a_before_b(&s, q, x, b, a).unwrap();
        prop_assert!(near(ab + ba, hl::lt_t_two_points(&s, q, x, a, b).unwrap(), 1e-12));
        prop_assert!(ab <= hl::lt_t_point(&s, q, x, a).unwrap() + 1e-15);
        let p = hl::prob_hit_a_before_b(&s, x, a, b).unwrap();
        prop_assert!(near(p + hl::prob_hit_a_before_b(&s, x, b, a).unwrap(), 1.0, 1e-12));
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn absolute_level_dominates_point(al in 1.1f64..=2.0, q in 0.1f64..4.0, a in 0.2f64..3.0) {
        let s = idx(al);
        prop_assert!(hl::lt_t_abs(&s, q, a).unwrap() >= hl::lt_t_point(&s, q, 0.0, a).unwrap());
        prop_assert!(hl::dn_gap(&s, q, a, 1).unwrap() >= -1e-12);
    }

    #[test]
    fn reports_round_trip(
        rows in prop::collection::vec(
            ("[a-z_.\\[\\]=,0-9]{1,24}", any::<f64>(), -1e300f64..1e300, 0.0f64..1.0, any::<bool>(),
             prop::option::of(0u64..u64::MAX), "[ -~]{0,30}"),
            0..6,
        )
    ) {
        let reports: Vec<VerificationReport> = rows
            .into_iter()
            .map(|(id, l, r, tol, rel, n, notes)| {
                let mut rep = VerificationReport::new(id, l, r, tol, rel).with_notes(notes);
                rep.n_samples = n;
                rep
            })
            .collect();
        let csv_back = parse_csv(&report_to_csv(&reports)).unwrap();
        let json_back = parse_json(&report_to_json(&reports)).unwrap();
        prop_assert_eq!(csv_back.len(), reports.len());
        prop_assert_eq!(json_back.len(), reports.len());
        for ((a, b), c) in reports.iter().zip(&csv_back).zip(&json_back) {
            prop_assert_eq!(&a.check_id, &b.check_id);
            prop_assert_eq!(&a.notes, &b.notes);
            prop_assert_eq!(a.pass, b.pass);
            prop_assert_eq!(a.n_samples, c.n_samples);
            prop_assert_eq!(a.rhs.to_bits(), b.rhs.to_bits());
            prop_assert_eq!(a.rhs.to_bits(), c.rhs.to_bits());
            // NaN and infinities survive CSV as text; JSON has no spelling for them.
            prop_assert!(a.lhs.to_bits() == b.lhs.to_bits() || (a.lhs.is_nan() && b.lhs.is_nan()));
            prop_assert!(a.lhs.to_bits() == c.lhs.to_bits() || (!a.lhs.is_finite() && c.lhs.is_nan()));
        }
    }

    #[test]
    fn streams_reproduce(seed in any::<u64>(), stream in any::<u64>(), al in 1.1f64..2.0) {
        let draw = |sd: u64, st: u64| {
            let mut s = RandomStream::new(sd, st);
            (0..8).map(|_| sample_sym_stable(al, &mut s).unwrap()).collect::<Vec<_>>()
        };
        prop_assert_eq!(draw(seed, stream), draw(seed, stream));
        prop_assert_ne!(draw(seed, stream), draw(seed, stream ^ 1));
    }

    #[test]
    fn sampler_ranges(seed in any::<u64>(), al in 1.1f64..2.0, a in 0.1f64..3.0, b in 0.1f64..3.0) {
        let mut s = RandomStream::new(seed, 0);
        let t = HittingTime::new(&idx(al), a).unwrap();
        let r = AlphaRayleigh::new(al).unwrap();
        let o = Overshoot::new(al, a).unwrap();
        for _ in 0..64 {
            prop_assert!(t.sample(&mut s) > 0.0);
            prop_assert!(r.sample(&mut s) >= 0.0);
            prop_assert!(o.sample(&mut s) > 0.0);
            prop_assert!(sample_gamma(a, &mut s).unwrap() > 0.0);
            let x = sample_beta(a, b, &mut s).unwrap();
            prop_assert!((0.0..=1.0).contains(&x));
        }
    }
}
