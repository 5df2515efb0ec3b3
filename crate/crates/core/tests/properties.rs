//! Property suites over random geometries, design points and probabilities.

mod common;

#[test]
fn global_pancake_reduces_to_intact() {
    common::pancake_reduction(1000).unwrap();
}

#[test]
fn reliability_increases_with_capacity() {
    common::beta_increasing(1000).unwrap();
}

#[test]
fn expected_cost_bounds() {
    common::expected_cost_bounds(300).unwrap();
}

#[test]
fn emitters_are_deterministic() {
    common::emitters_deterministic().unwrap();
}
