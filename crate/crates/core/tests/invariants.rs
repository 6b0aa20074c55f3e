//! Structural invariants over random inputs drawn from the sweep.

use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tenfold::clifford::{abs_group, Field};
use tenfold::cohomology::classify_cocycle;
use tenfold::kgroup::{k_group, SymmetryData};
use tenfold::sweep::{twist_configs, TwistConfig};
use tenfold::{AbelianGroupPresentation, Cochain};

fn configs() -> &'static [TwistConfig] {
    static CONFIGS: OnceLock<Vec<TwistConfig>> = OnceLock::new();
    CONFIGS.get_or_init(|| twist_configs(8, |_| true).expect("sweep configurations"))
}

fn config(i: usize) -> &'static TwistConfig {
    let all = configs();
    &all[i % all.len()]
}

/// τ + ∂β for a random β with values in μ_M, M = lcm(modulus, 4).
fn moved(cfg: &TwistConfig, seed: u64) -> (Cochain, Cochain) {
    let tau = cfg.tau.lift(cfg.tau.modulus().lcm(&4)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beta = Cochain::random(tau.module(), 1, &mut rng);
    let shifted = tau.add(&beta.coboundary()).unwrap();
    (tau, shifted)
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::R), Just(Field::C)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundary_squares_to_zero(i in any::<usize>(), degree in 0usize..3, seed in any::<u64>()) {
        let cfg = config(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Cochain::random(cfg.tau.module(), degree, &mut rng);
        prop_assert!(x.coboundary().coboundary().is_zero());
    }

    #[test]
    fn moved_cocycles_stay_cocycles_in_the_same_class(i in any::<usize>(), seed in any::<u64>()) {
        let cfg = config(i);
        let (tau, shifted) = moved(cfg, seed);
        prop_assert!(shifted.is_cocycle());
        let before = classify_cocycle(&tau).unwrap();
        let after = classify_cocycle(&shifted).unwrap();
        prop_assert_eq!(before.coordinates, after.coordinates);
    }

    #[test]
    fn central_extensions_are_groups(i in any::<usize>(), seed in any::<u64>()) {
        let cfg = config(i);
        let (_, shifted) = moved(cfg, seed);
        let e = shifted.central_extension().unwrap();
        prop_assert_eq!(e.total.order(), cfg.group.order() * shifted.modulus() as usize);
        prop_assert!(e.total.is_associative());
        for g in cfg.group.elements() {
            prop_assert_eq!(e.projection[e.section[g]], g);
        }
    }

    #[test]
    fn k_groups_are_periodic(i in any::<usize>(), n in -24i64..24) {
        let cfg = config(i);
        let s = SymmetryData::point(cfg.group.clone(), cfg.phi.clone(), cfg.c.clone(), cfg.tau.clone()).unwrap();
        let period = s.period();
        prop_assert_eq!(k_group(&s, n).unwrap(), k_group(&s, n + period).unwrap());
    }

    #[test]
    fn abs_groups_depend_on_p_minus_q(p in 0usize..10, q in 0usize..10, f in field()) {
        let period = match f { Field::R => 8, Field::C => 2 };
        let base = abs_group(p, q, f).unwrap();
        prop_assert_eq!(&base, &abs_group(p + 1, q + 1, f).unwrap());
        prop_assert_eq!(&base, &abs_group(p + period, q, f).unwrap());
    }

    #[test]
    fn presentations_round_trip(rank in 0usize..4, factors in prop::collection::vec(2u64..40, 0..5)) {
        let a = AbelianGroupPresentation::from_cyclic_factors(rank, &factors);
        prop_assert_eq!(AbelianGroupPresentation::parse(&a.to_string()), Some(a.clone()));
        prop_assert_eq!(AbelianGroupPresentation::parse(&a.ascii()), Some(a));
    }
}
