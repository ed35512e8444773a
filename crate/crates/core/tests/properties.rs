mod support;

#[test]
fn ring_axioms() {
    support::ring_axioms().unwrap();
}

#[test]
fn precision_soundness() {
    support::precision_soundness().unwrap();
}

#[test]
fn invert_round_trip() {
    support::invert_round_trip().unwrap();
}

#[test]
fn euler_factor_brute_force() {
    support::euler_factor_brute_force().unwrap();
}

#[test]
fn u_p_linearity() {
    support::u_p_linearity().unwrap();
}

#[test]
fn decompose_evaluate_round_trip() {
    support::decompose_evaluate_round_trip().unwrap();
}

#[test]
fn p_contains_soundness() {
    support::p_contains_soundness().unwrap();
}

#[test]
fn r_product_lemma() {
    support::r_product_lemma().unwrap();
}

#[test]
fn json_round_trips() {
    support::json_round_trips().unwrap();
}
