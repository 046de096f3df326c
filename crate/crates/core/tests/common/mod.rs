#![allow(dead_code)]

use lenscape::numbers::{normalize_lens, LensSpace, NegCF};
use num_integer::Integer;
use proptest::prelude::*;

/// Coefficient lists with entries in `[lo, hi]`, length `1..=max_len`.
pub fn chain(lo: i64, hi: i64, max_len: usize) -> impl Strategy<Value = NegCF> {
    prop::collection::vec(lo..=hi, 1..=max_len).prop_map(|c| NegCF::from_i64(&c).unwrap())
}

/// Random `L(p, q)` with `2 <= p < max_p`.
pub fn lens(max_p: u64) -> impl Strategy<Value = LensSpace> {
    (2..max_p)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter("coprime", |(p, q)| p.gcd(q) == 1)
        .prop_map(|(p, q)| normalize_lens(p, q).unwrap())
}
