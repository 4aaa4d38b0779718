use permdistill::characters::{irrep_character, perm_character};
use permdistill::combinatorics::{binom, cycle_classes, CycleClass};
use permdistill::oracle::{hamming, WeightBasis};
use permdistill::rates::{
    evaluate, partial_rate_qubit_n, total_rate, total_rate_expanded, Protocol, ProtocolParams,
};
use permdistill::spectra::{
    alpha_hahn, alpha_young, multiplicity, multiplicity_by_difference, rho_spectrum, sector_entropy,
};
use permdistill::{MixParam, SectorIndex};
use proptest::prelude::*;

fn b(a: u32, k: u32) -> u64 {
    binom(a as i64, k as i64).unwrap()
}

fn sector_strategy(max_n: u32) -> impl Strategy<Value = SectorIndex> {
    (1..=max_n).prop_flat_map(|n| (0..=n).prop_map(move |l| SectorIndex::new(n, l).unwrap()))
}

#[test]
fn binomial_rows_sum_to_powers_of_two() {
    for a in 0..=20u32 {
        let sum: u64 = (0..=a).map(|k| b(a, k)).sum();
        assert_eq!(sum, 1 << a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vandermonde(s in sector_strategy(20)) {
        let sum: u64 = (0..=s.l).map(|k| b(s.n - s.l, k) * b(s.l, k)).sum();
        prop_assert_eq!(sum, b(s.n, s.l));
    }

    #[test]
    fn multiplicity_forms_agree(n in 0..=30u32, j_frac in 0.0..=1.0f64) {
        let j = ((n / 2) as f64 * j_frac).floor() as u32;
        let f = multiplicity(n, j).unwrap();
        prop_assert_eq!(f, multiplicity_by_difference(n, j).unwrap());
        let lhs = b(n, j) as u128 * (n - 2 * j + 1) as u128;
        prop_assert_eq!(lhs % (n - j + 1) as u128, 0);
        prop_assert_eq!(lhs / (n - j + 1) as u128, f as u128);
    }

    #[test]
    fn young_and_hahn_tables_agree(s in sector_strategy(20)) {
        for k in 0..=s.max_j() {
            for j in 0..=s.max_j() {
                prop_assert_eq!(alpha_young(s, k, j).unwrap(), alpha_hahn(s, k, j).unwrap(), "k={} j={}", k, j);
            }
        }
    }

    #[test]
    fn spectrum_completeness(s in sector_strategy(16), p in 0.0..=1.0f64) {
        let spec = rho_spectrum(s, MixParam::new(p).unwrap()).unwrap();
        let dim = b(s.n, s.l);
        prop_assert_eq!(spec.total_multiplicity(), dim);
        let trace: f64 = spec.entries.iter().map(|e| e.multiplicity as f64 * e.eigenvalue).sum();
        let want = dim as f64 * 0.5f64.powi(s.n as i32);
        prop_assert!((trace - want).abs() <= 1e-12 * want.max(1.0), "{} vs {}", trace, want);
        prop_assert!(spec.entries.iter().all(|e| e.eigenvalue >= 0.0));
    }

    #[test]
    fn entropy_nonincreasing_in_p(s in sector_strategy(16)) {
        let mut last = f64::INFINITY;
        for i in 0..=100 {
            let e = sector_entropy(s, MixParam::new(i as f64 / 100.0).unwrap()).unwrap();
            prop_assert!(e <= last + 1e-12, "p={}: {} > {}", i as f64 / 100.0, e, last);
            last = e;
        }
    }

    #[test]
    fn complementary_sectors_share_spectra(s in sector_strategy(12), p in 0.0..=1.0f64) {
        let mix = MixParam::new(p).unwrap();
        let mirror = SectorIndex::new(s.n, s.n - s.l).unwrap();
        let (a, c) = (rho_spectrum(s, mix).unwrap(), rho_spectrum(mirror, mix).unwrap());
        prop_assert_eq!(a.sorted_eigenvalues(), c.sorted_eigenvalues());
    }

    #[test]
    fn sector_distances_are_even_and_bounded(s in sector_strategy(10)) {
        let basis = WeightBasis::new(s.n, s.l).unwrap();
        let bound = 2 * s.l.min(s.n - s.l);
        for &x in basis.strings() {
            for &y in basis.strings() {
                let d = hamming(x, y);
                prop_assert!(d % 2 == 0 && d <= bound);
            }
        }
    }

    #[test]
    fn telescoped_and_expanded_totals_agree(
        k in 1..=6u32,
        x in 0.0..=1.0f64,
        qudit in any::<bool>(),
        raw in prop::collection::vec(0.0..4.0f64, 6),
    ) {
        let params = ProtocolParams::qubit(x, 0.5, 0.5, k).unwrap();
        let len = if qudit { k } else { k - 1 } as usize;
        let partials = &raw[..len];
        let a = total_rate(&params, partials).unwrap();
        let c = total_rate_expanded(&params, partials).unwrap();
        prop_assert!((a - c).abs() <= 1e-12);
    }

    #[test]
    fn wrong_partials_length_is_rejected(k in 2..=6u32, extra in 1..3usize) {
        let params = ProtocolParams::qubit(0.5, 0.5, 0.5, k).unwrap();
        let too_long = vec![0.0; k as usize + extra];
        prop_assert!(total_rate(&params, &too_long).is_err());
        let too_short = vec![0.0; k as usize - 2];
        prop_assert!(total_rate(&params, &too_short).is_err());
    }

    #[test]
    fn qubit_rate_symmetries(x in 0.0..=1.0f64, q in 0.0..=1.0f64, a in 0.0..=1.0f64, k in 1..=4u32) {
        let total = |q: f64, a: f64| evaluate(Protocol::Qubit, &ProtocolParams::qubit(x, q, a, k).unwrap()).unwrap().total;
        let r = total(q, a);
        prop_assert!((r - total(1.0 - q, a)).abs() <= 1e-12);
        prop_assert!((r - total(q, 1.0 - a)).abs() <= 1e-12);
    }

    #[test]
    fn separable_inputs_give_zero(n_exp in 0..=4u32, a in 0.0..=1.0f64) {
        prop_assert!(partial_rate_qubit_n(1 << n_exp, 0.5, a).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn permutation_character_decomposes(n in 1..=14usize, pick in any::<prop::sample::Index>()) {
        let classes = cycle_classes(n);
        let cls: &CycleClass = pick.get(&classes);
        for l in 0..=(n / 2) as u32 {
            let sum: i128 = (0..=l).map(|j| irrep_character(n, j, cls).unwrap()).sum();
            prop_assert_eq!(perm_character(n, l, cls).unwrap(), sum);
        }
    }
}

#[test]
fn irrep_dimensions_match_multiplicities() {
    for n in 1..=16usize {
        let id = CycleClass::identity(n);
        for j in 0..=(n / 2) as u32 {
            assert_eq!(irrep_character(n, j, &id).unwrap(), multiplicity(n as u32, j).unwrap() as i128);
        }
    }
}
