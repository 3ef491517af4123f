//! Oracles computed from scratch, without the library's h-vector code.
#![allow(dead_code)]

use cellball::certify::{certify_ball, Certificate};
use cellball::realizer::{glue_step, realize, seed_ball, WindowedBall};
use cellball::{HVector, SimplicialPoset};
use rand::Rng;

pub fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// `(f_{-1}, ..., f_{d-1})` by counting ranks directly.
pub fn f_counts(p: &SimplicialPoset) -> Vec<i128> {
    let mut f = vec![0i128; p.d() + 1];
    f[0] = 1;
    for e in p.elements() {
        f[e.rank] += 1;
    }
    f
}

/// `h_k = sum_i (-1)^(k-i) C(d-i, k-i) f_{i-1}`.
pub fn h_of_f(f: &[i128]) -> Vec<i128> {
    let d = f.len() as i128 - 1;
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, k - i) * f[i as usize]
                })
                .sum()
        })
        .collect()
}

pub fn h_of(p: &SimplicialPoset) -> Vec<i128> {
    h_of_f(&f_counts(p))
}

/// `∂h_i = (h_0 + ... + h_i) - (h_d + ... + h_{d-i})`.
pub fn boundary_of(h: &[i128]) -> Vec<i128> {
    let d = h.len() - 1;
    (0..d)
        .map(|i| h[..=i].iter().sum::<i128>() - h[d - i..].iter().sum::<i128>())
        .collect()
}

pub fn wide(h: &HVector) -> Vec<i128> {
    h.entries().iter().map(|&x| x as i128).collect()
}

pub fn facets_of(p: &SimplicialPoset) -> usize {
    if p.d() == 0 {
        return 1;
    }
    p.elements().iter().filter(|e| e.rank == p.d()).count()
}

/// Every `(1, h_1, ..., h_{d-1}, 0)` with nonnegative entries and sum at
/// most `total`, for `1 <= d <= d_max`.
pub fn small_vectors(d_max: usize, total: i64) -> Vec<HVector> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        let mut cur = vec![0i64; d - 1];
        loop {
            if cur.iter().sum::<i64>() < total {
                let mut v = vec![1];
                v.extend(&cur);
                v.push(0);
                out.push(HVector::new(v).unwrap());
            }
            // Odometer increment over [0, total - 1]^(d - 1).
            let mut pos = 0;
            loop {
                if pos == cur.len() {
                    break;
                }
                cur[pos] += 1;
                if cur[pos] < total {
                    break;
                }
                cur[pos] = 0;
                pos += 1;
            }
            if pos == cur.len() {
                break;
            }
        }
    }
    out
}

pub fn certificate(h: &HVector) -> Certificate {
    let r = realize(h).unwrap_or_else(|e| panic!("realize({h}): {e}"));
    Certificate {
        poset: r.poset,
        trace: r.trace,
        h: h.clone(),
    }
}

pub fn certifies(h: &HVector) -> bool {
    certify_ball(&certificate(h)).passed()
}

/// A ball with a window, grown from a simplex by random pair gluings.
pub fn random_windowed_ball(rng: &mut impl Rng, d: usize, steps: usize) -> WindowedBall {
    let mut w = seed_ball(d);
    for _ in 0..steps {
        let m = w.window.k();
        if m == 0 || d < 2 {
            break;
        }
        let i = rng.gen_range(1..=m.min(d - 1));
        let j = rng.gen_range(1..=d - i);
        w = glue_step(&w, i, j).expect("step within range");
    }
    w
}
