//! Every point of each theorem's hypothesis region reaches a settled
//! region through the reduction steps.

use dbcert_core::proof::{classify_coverage, Primitive, ReductionStep, VolumeTriple};
use dbcert_core::SpaceTag;
use proptest::prelude::*;

struct SplitMix(u64);

impl SplitMix {
    fn unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Uniform on the simplex `v + w + u = 1` with every part at least 0.1.
fn s3_point(rng: &mut SplitMix) -> VolumeTriple {
    let (a, b) = (rng.unit(), rng.unit());
    let (lo, hi) = (a.min(b), a.max(b));
    let v = 0.1 + 0.7 * lo;
    let w = 0.1 + 0.7 * (hi - lo);
    VolumeTriple { v, w, u: 1.0 - v - w }
}

fn h3_point(rng: &mut SplitMix) -> VolumeTriple {
    let big = 10f64.powf(-4.0 + 10.0 * rng.unit());
    let small = big * (0.85 + 0.15 * rng.unit());
    let (v, w) = if rng.unit() < 0.5 { (small, big) } else { (big, small) };
    VolumeTriple { v, w, u: 0.0 }
}

#[test]
fn s3_random_points_covered() {
    let mut rng = SplitMix(1);
    let mut seen = [0usize; 6];
    for _ in 0..10_000 {
        let p = s3_point(&mut rng);
        let c = classify_coverage(SpaceTag::S3, p).unwrap_or_else(|e| panic!("{p:?}: {e}"));
        seen[c.terminal as usize] += 1;
    }
    assert!(seen[Primitive::S3Computer as usize] > 0 && seen[Primitive::HutchingsBalancing as usize] > 0);
}

#[test]
fn h3_random_points_covered() {
    let mut rng = SplitMix(2);
    let mut seen = [0usize; 6];
    for _ in 0..10_000 {
        let p = h3_point(&mut rng);
        let c = classify_coverage(SpaceTag::H3, p).unwrap_or_else(|e| panic!("{p:?}: {e}"));
        seen[c.terminal as usize] += 1;
    }
    for k in [Primitive::H3Small, Primitive::H3Computer, Primitive::H3RayPlusDerivative, Primitive::H3Large] {
        assert!(seen[k as usize] > 0, "{k:?} never reached");
    }
}

#[test]
fn outside_hypotheses_uncovered() {
    let t = |v, w, u| VolumeTriple { v, w, u };
    assert!(classify_coverage(SpaceTag::S3, t(0.05, 0.3, 0.65)).is_err());
    assert!(classify_coverage(SpaceTag::S3, t(0.2, 0.2, 0.5)).is_err());
    assert!(classify_coverage(SpaceTag::H3, t(1.0, 1.5, 0.0)).is_err());
    assert!(classify_coverage(SpaceTag::R3, t(1.0, 1.0, 0.0)).is_err());
}

proptest! {
    #[test]
    fn balancing_keeps_total(seed in any::<u64>()) {
        let mut rng = SplitMix(seed);
        let p = s3_point(&mut rng);
        let c = classify_coverage(SpaceTag::S3, p).unwrap();
        for s in &c.steps {
            if let ReductionStep::SBalancing { v, w } = s {
                prop_assert_eq!(v, w);
                prop_assert!(*v >= 0.1 - 1e-12);
            }
        }
        prop_assert!(c.steps.len() <= 8);
    }

    #[test]
    fn h3_balanced_chains_land_on_diagonal(seed in any::<u64>()) {
        let mut rng = SplitMix(seed);
        let p = h3_point(&mut rng);
        let c = classify_coverage(SpaceTag::H3, p).unwrap();
        prop_assert_eq!(c.steps.is_empty(), p.v <= p.w);
        if let Some(ReductionStep::SBalancing { v, w }) = c.steps.first() {
            prop_assert!(v == w && (2.0 * v - (p.v + p.w)).abs() <= 1e-12 * v);
        }
    }
}
