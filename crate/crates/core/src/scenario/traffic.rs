use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{RoadNetwork, TrafficPattern};

/// Perturbs every segment's vehicle count by an independent multiplicative
/// factor drawn from the pattern's range. `Normal` returns an exact copy.
///
/// Draws are taken in segment order from a stream seeded by `seed`.
pub fn apply_traffic_pattern(network: &RoadNetwork, pattern: TrafficPattern, seed: u64) -> RoadNetwork {
    let mut out = network.clone();
    if pattern == TrafficPattern::Normal {
        return out;
    }
    let (lo, hi) = pattern.factor_range();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for seg in &mut out.segments {
        let factor: f64 = rng.random_range(lo..=hi);
        seg.vehicles_per_period *= factor;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{generate_instance, GeometryParams, TrafficParams};
    use proptest::prelude::*;

    fn net(seed: u64) -> RoadNetwork {
        generate_instance(40, &GeometryParams::default(), &TrafficParams::default(), seed).unwrap()
    }

    #[test]
    fn normal_is_identity() {
        let n = net(1);
        assert_eq!(apply_traffic_pattern(&n, TrafficPattern::Normal, 99), n);
    }

    #[test]
    fn deterministic_per_seed() {
        let n = net(2);
        let a = apply_traffic_pattern(&n, TrafficPattern::High, 5);
        let b = apply_traffic_pattern(&n, TrafficPattern::High, 5);
        for (x, y) in a.segments.iter().zip(&b.segments) {
            assert_eq!(x.vehicles_per_period.to_bits(), y.vehicles_per_period.to_bits());
        }
        let c = apply_traffic_pattern(&n, TrafficPattern::High, 6);
        assert_ne!(a, c);
    }

    proptest! {
        #[test]
        fn perturbation_stays_in_band(seed in any::<u64>(), net_seed in 0u64..50) {
            let n = net(net_seed);
            let low = apply_traffic_pattern(&n, TrafficPattern::Low, seed);
            let high = apply_traffic_pattern(&n, TrafficPattern::High, seed);
            for ((orig, l), h) in n.segments.iter().zip(&low.segments).zip(&high.segments) {
                let nv = orig.vehicles_per_period;
                prop_assert!(l.vehicles_per_period >= 0.8 * nv && l.vehicles_per_period <= nv);
                prop_assert!(h.vehicles_per_period >= nv && h.vehicles_per_period <= 1.2 * nv);
                prop_assert_eq!(l.length_m, orig.length_m);
            }
        }
    }
}
