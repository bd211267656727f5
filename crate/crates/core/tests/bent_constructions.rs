use boolsep::classify::{is_bent, max_pc_degree, plateaued_order, satisfies_sac, BentVerdict};
use boolsep::dyadic::Dyadic;
use boolsep::generate::{mm_bent, padded_plateaued, MmSpec};
use boolsep::influence::total_influence;
use boolsep::spectral::wht;

#[test]
fn random_mm_instances_are_bent() {
    for m in 1..=4 {
        let n = 2 * m;
        for seed in 0..100 {
            let f = mm_bent(&MmSpec::random(m, seed).unwrap()).unwrap();
            let spec = wht(&f);
            assert_eq!(is_bent(&spec), BentVerdict::Yes, "m={m} seed={seed}");
            assert_eq!(plateaued_order(&spec), Some(0));
            assert_eq!(total_influence(&f), Dyadic::from_int(m as i128));
            assert!(satisfies_sac(&f));
            assert_eq!(max_pc_degree(&f), n as u32);
        }
    }
}

#[test]
fn padding_gives_plateaued_order() {
    for m in 1..=3 {
        for k in 0..=12 - 2 * m {
            let g = mm_bent(&MmSpec::random(m, k as u64).unwrap()).unwrap();
            let f = padded_plateaued(&g, k).unwrap();
            assert_eq!(f.n(), 2 * m + k);
            assert_eq!(plateaued_order(&wht(&f)), Some(k as u32));
            assert_eq!(total_influence(&f), Dyadic::from_int(m as i128));
        }
    }
}

#[test]
fn negation_and_dummy_variables() {
    let f = mm_bent(&MmSpec::identity(3)).unwrap();
    assert_eq!(is_bent(&wht(&f.negated())), BentVerdict::Yes);
    let padded = padded_plateaued(&f, 2).unwrap();
    assert_eq!(is_bent(&wht(&padded)), BentVerdict::No);
}
