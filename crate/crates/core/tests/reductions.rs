use std::hint::black_box;
use std::time::Instant;

use qpad_core::gen::{random_message_exact, seeded};
use qpad_core::reduction::all_words;
use qpad_core::{
    builtin_source, check_injective, clifford_t, compose_one_one, decode_word, encode_word,
    pairing_f, sdcs_oracle, Membership, Word,
};

fn median_secs(samples: usize, mut f: impl FnMut()) -> f64 {
    let mut xs: Vec<f64> = (0..samples)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_secs_f64()
        })
        .collect();
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

#[test]
fn composed_cost_tracks_its_parts() {
    let g = builtin_source("parity").unwrap().reduction;
    let h = compose_one_one(&g, clifford_t());
    let mut rng = seeded(11);
    let inputs: Vec<Word> = (0..32)
        .map(|_| random_message_exact(&mut rng, 256))
        .collect();
    let instances: Vec<Word> = inputs.iter().map(|x| g.apply(x).unwrap()).collect();

    let run_h = || {
        for x in &inputs {
            black_box(h.apply(black_box(x)).unwrap());
        }
    };
    let run_g = || {
        for x in &inputs {
            black_box(g.apply(black_box(x)).unwrap());
        }
    };
    let run_f = || {
        for (w, x) in instances.iter().zip(&inputs) {
            let c = decode_word(black_box(w), clifford_t()).unwrap();
            black_box(encode_word(&pairing_f(&c, x).unwrap()));
        }
    };
    run_h();
    let t_h = median_secs(15, run_h);
    let t_parts = median_secs(15, run_g) + median_secs(15, run_f);
    let ratio = t_h / t_parts;
    assert!(
        (0.5..2.0).contains(&ratio),
        "h took {t_h:.3e}s, g + f took {t_parts:.3e}s (ratio {ratio:.2})"
    );
}

#[test]
fn composed_reductions_are_injective_and_faithful() {
    for name in ["parity", "last-bit", "constant"] {
        let src = builtin_source(name).unwrap();
        let h = compose_one_one(&src.reduction, clifford_t());
        let domain: Vec<Word> = (0..=10).flat_map(all_words).collect();
        assert!(check_injective(&h, &domain).unwrap(), "{name}");
        for x in domain.iter().step_by(37) {
            let c = decode_word(&h.apply(x).unwrap(), clifford_t()).unwrap();
            let expected = if (src.contains)(x) {
                Membership::In
            } else {
                Membership::Out
            };
            assert_eq!(
                sdcs_oracle(&c).unwrap().membership,
                expected,
                "{name} on {x}"
            );
        }
    }
}

#[test]
fn degree_tag_is_at_least_linear() {
    let g = builtin_source("constant").unwrap().reduction;
    assert_eq!(g.cost_degree(), 0);
    assert_eq!(compose_one_one(&g, clifford_t()).cost_degree(), 1);
}

#[test]
fn identity_g_stays_injective_on_framed_instances() {
    let src = builtin_source("identity").unwrap();
    let h = compose_one_one(&src.reduction, clifford_t());
    let (x_in, x_out) = qpad_core::canonical_witnesses(2).unwrap();
    let mut domain = Vec::new();
    for base in [&x_in, &x_out] {
        domain.push(encode_word(base));
        for y in (0..=4).flat_map(all_words) {
            domain.push(encode_word(&qpad_core::pad(base, &y).unwrap()));
        }
    }
    assert!(check_injective(&h, &domain).unwrap());
    for x in &domain {
        let inner = decode_word(x, clifford_t()).unwrap();
        let z = decode_word(&h.apply(x).unwrap(), clifford_t()).unwrap();
        assert_eq!(qpad_core::unpad(&z), inner);
        assert_eq!(
            sdcs_oracle(&z).unwrap().membership,
            sdcs_oracle(&inner).unwrap().membership
        );
    }
}
