//! Certificates: the checker accepts what the prover emits, rejects
//! single-leaf tampering, and the tree does not depend on scheduling.

use dbcert_core::proof::h3::{claim, sample_band_h3, sweep_band_h3, H3Options};
use dbcert_core::proof::s3::{domain_rectangle, domain_triangle, verify_rectangle_s3, verify_triangle_s3, S3Options, S3Rect};
use dbcert_core::proof::*;
use dbcert_core::{SlackConfig, SpaceTag};

/// Evaluates in reverse and restores the order, as an out-of-order pool would.
struct Reversed;

impl Executor for Reversed {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        let mut out: Vec<R> = items.into_iter().rev().map(f).collect();
        out.reverse();
        out
    }
}

/// Scoped threads, one per item.
struct Threads;

impl Executor for Threads {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        let f = &f;
        std::thread::scope(|s| {
            let hs: Vec<_> = items.into_iter().map(|t| s.spawn(move || f(t))).collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        })
    }
}

fn s3_opts() -> S3Options {
    S3Options::new(SlackConfig::default())
}

fn h3_opts() -> H3Options {
    H3Options::new(SlackConfig::default())
}

fn json(c: &ProofCertificate) -> String {
    serde_json::to_string(c).unwrap()
}

#[test]
fn s3_domain_proves_and_verifies() {
    let r = verify_rectangle_s3(domain_rectangle(), &s3_opts(), &Sequential);
    let t = verify_triangle_s3(domain_triangle(), &s3_opts(), &Sequential).unwrap();
    for c in [&r, &t] {
        assert!(c.is_proved(), "{:?}", c.root.failures());
        let rep = verify_certificate(c).unwrap();
        assert!(rep.proved && rep.leaves > 10);
    }
}

#[test]
fn schedule_does_not_change_certificates() {
    let a = json(&verify_rectangle_s3(domain_rectangle(), &s3_opts(), &Sequential));
    let b = json(&verify_rectangle_s3(domain_rectangle(), &s3_opts(), &Reversed));
    let c = json(&verify_rectangle_s3(domain_rectangle(), &s3_opts(), &Threads));
    assert!(a == b && a == c);
    let h = claim("5.12").unwrap();
    let x = json(&sample_band_h3(&h, 4, &h3_opts(), &Sequential).unwrap());
    let y = json(&sample_band_h3(&h, 4, &h3_opts(), &Threads).unwrap());
    assert_eq!(x, y);
}

#[test]
fn round_trip_through_json() {
    let c = verify_triangle_s3(domain_triangle(), &s3_opts(), &Sequential).unwrap();
    let back: ProofCertificate = serde_json::from_str(&json(&c)).unwrap();
    assert_eq!(back, c);
    assert_eq!(json(&back), json(&c));
}

/// Paths to every node carrying a stored bound, and to every sweep box.
fn bound_sites(n: &CheckNode, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Option<usize>)>) {
    if n.g_min.is_some() {
        out.push((path.clone(), None));
    }
    for i in 0..n.boxes.len() {
        out.push((path.clone(), Some(i)));
    }
    for (i, c) in n.children.iter().enumerate() {
        path.push(i);
        bound_sites(c, path, out);
        path.pop();
    }
}

fn node_mut<'a>(mut n: &'a mut CheckNode, path: &[usize]) -> &'a mut CheckNode {
    for &i in path {
        n = &mut n.children[i];
    }
    n
}

/// Push `g_min` to just below `h_max` at one site.
fn tamper(c: &mut ProofCertificate, site: &(Vec<usize>, Option<usize>)) {
    let n = node_mut(&mut c.root, &site.0);
    let (g, h) = match site.1 {
        None => (n.g_min.as_mut().unwrap(), n.h_max.clone().unwrap()),
        Some(i) => {
            let b = &mut n.boxes[i];
            (&mut b.g_min, b.h_max.clone())
        }
    };
    let h: f64 = h.parse().unwrap();
    *g = format!("{:?}", h.next_down());
}

fn assert_tamper_rejected(c: &ProofCertificate, stride: usize) {
    let mut sites = Vec::new();
    bound_sites(&c.root, &mut Vec::new(), &mut sites);
    assert!(!sites.is_empty());
    for site in sites.iter().step_by(stride) {
        let mut t = c.clone();
        tamper(&mut t, site);
        let e = verify_certificate(&t).expect_err("tampered certificate accepted");
        assert!(e.reason.contains("g_min"), "{e:?}");
    }
}

#[test]
fn s3_tampering_rejected() {
    let c = verify_rectangle_s3(domain_rectangle(), &s3_opts(), &Sequential);
    assert_tamper_rejected(&c, 1);
}

#[test]
fn h3_tampering_rejected() {
    let c = sample_band_h3(&claim("5.10").unwrap(), 2, &h3_opts(), &Sequential).unwrap();
    assert_tamper_rejected(&c, 7);
}

#[test]
fn structural_tampering_rejected() {
    let c = verify_rectangle_s3(domain_rectangle(), &s3_opts(), &Sequential);
    // Drop a child of the first split.
    let mut t = c.clone();
    let n = t.root.children.iter().position(|k| !k.children.is_empty());
    if let Some(i) = n {
        t.root.children[i].children.pop();
    } else {
        t.root.children.pop();
    }
    assert!(verify_certificate(&t).is_err());
    // Move the region.
    let mut t = c.clone();
    t.root.region = Region::Rect {
        v_lo: Coord::frac(1, 20),
        w_lo: Coord::frac(1, 10),
        v_hi: Coord::frac(1, 3),
        w_hi: Coord::frac(1, 3),
    };
    assert!(verify_certificate(&t).is_err());
    // Claim a failed certificate is proved.
    let bad = verify_rectangle_s3(adversarial(), &s3_opts(), &Sequential);
    let mut t = bad.clone();
    t.root.outcome = Outcome::Proved;
    assert!(verify_certificate(&t).is_err());
}

/// A rectangle of small `v` and large `w`, where the Hutchings function is negative.
fn adversarial() -> S3Rect {
    S3Rect { x1: Coord::frac(1, 200), y1: Coord::frac(1, 5), x3: Coord::frac(1, 100), y3: Coord::frac(3, 10) }
}

#[test]
fn adversarial_rectangle_fails() {
    let c = verify_rectangle_s3(adversarial(), &s3_opts(), &Sequential);
    assert!(!c.is_proved());
    let rep = verify_certificate(&c).unwrap();
    assert!(!rep.proved && !rep.failures.is_empty());
}

#[test]
fn h3_spot_claims_prove() {
    for id in ["5.9", "5.20"] {
        let c = sweep_band_h3(&claim(id).unwrap(), &h3_opts(), &Sequential).unwrap();
        assert!(c.is_proved(), "claim {id}: {:?}", c.root.failures().first());
        assert!(verify_certificate(&c).unwrap().proved);
    }
}

#[test]
fn oversized_slack_breaks_the_sweep() {
    let slack = SlackConfig { delta: 10.0, ..SlackConfig::default() };
    let opts = H3Options::new(slack);
    if let Ok(c) = sample_band_h3(&claim("5.12").unwrap(), 2, &opts, &Sequential) {
        assert!(!c.is_proved());
    }
    let c = prove_theorem(SpaceTag::S3, &ProveMode::Full, slack, &Sequential);
    assert!(c.map_or(true, |c| !c.is_proved()));
}

#[test]
fn unknown_claims_and_modes_rejected() {
    let spot = ProveMode::Spot { claims: vec!["4.1".into()], sampled: vec![], sample_rows: 1 };
    assert!(prove_theorem(SpaceTag::H3, &spot, SlackConfig::default(), &Sequential).is_err());
    assert!(prove_theorem(SpaceTag::S3, &ProveMode::Ray, SlackConfig::default(), &Sequential).is_err());
}
