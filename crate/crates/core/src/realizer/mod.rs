//! Builds a simplicial cell ball with a prescribed admissible h-vector.
//!
//! Every construction carries a [`ConstructionTrace`] that replays to the
//! returned poset, and every window claim is checked against the actual
//! boundary rather than assumed.

mod special;
mod steps;
mod trace;
mod window;

use std::fmt;

use thiserror::Error;

use crate::hcalc::{
    boundary_h, check_ball, sorted_indices, width, ConditionReport, HError, HVector,
};
use crate::poset::{GlueError, GlueMap, SimplicialPoset};

pub use special::{
    build_d, build_omega, s_sequence, special_ball, special_params, Omega, SpecialParams,
};
pub use steps::{glue_step, realize_even, seed_ball};
pub use trace::{ConstructionTrace, Step, TraceError};
pub use window::{delta_faces, TwoWindowBall, Window, WindowError, WindowedBall};

use steps::attach_boolean;

/// Largest rank accepted by [`realize`].
pub const MAX_D: usize = 12;
/// Largest facet count (sum of entries) accepted by [`realize`].
pub const MAX_FACETS: i128 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("not a ball h-vector: {0}")]
    Inadmissible(ConditionReport),
    #[error("d = {d} with {facets} facets exceeds the supported size (d <= {MAX_D}, facets <= {MAX_FACETS})")]
    TooLarge { d: usize, facets: i128 },
    #[error("glue_step({i}, {j}) needs 1 <= i <= {m} and 1 <= j <= {d} - i")]
    StepRange {
        i: usize,
        j: usize,
        m: usize,
        d: usize,
    },
    #[error("vector has d = {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("h_0 = {0}, expected 0")]
    NonzeroConstant(i64),
    #[error("{0}")]
    Pairing(#[from] HError),
    #[error("∂h_{0} is negative")]
    NegativeBoundary(usize),
    #[error("window Delta_d({window}) is smaller than init = {init}")]
    WindowTooSmall { window: usize, init: usize },
    #[error("special ball hypothesis fails: {0}")]
    SpecialHypothesis(&'static str),
    #[error("s-sequence precondition fails: {0}")]
    SequencePrecondition(&'static str),
    #[error("gluing failed: {0}")]
    Glue(#[from] GlueError),
    #[error("window check failed: {0}")]
    Window(#[from] WindowError),
    #[error("construction claim failed: {0}")]
    Claim(String),
}

/// Which branch of the construction produced the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofCase {
    /// `∂h > 0`, odd sum.
    Case1Odd,
    /// `∂h > 0`, even sum.
    Case1Even,
    /// `∂h` has a zero, even sum.
    Case2,
    /// `∂h` has a zero, odd sum.
    Case3,
}

impl fmt::Display for ProofCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofCase::Case1Odd => "Case 1 (∂h positive, odd sum)",
            ProofCase::Case1Even => "Case 1 (∂h positive, even sum)",
            ProofCase::Case2 => "Case 2 (∂h has a zero, even sum)",
            ProofCase::Case3 => "Case 3 (∂h has a zero, odd sum)",
        })
    }
}

/// Intermediate values of the odd-sum case with a zero in `∂h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case3Data {
    pub n: usize,
    pub m: usize,
    pub s: Vec<usize>,
    pub gamma: HVector,
    pub delta: HVector,
    pub delta_bar: HVector,
    /// `h'`
    pub h_prime: HVector,
    /// `h''`
    pub h_double_prime: HVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub poset: SimplicialPoset,
    pub trace: ConstructionTrace,
    pub case: ProofCase,
    pub case3: Option<Case3Data>,
}

/// Builds a ball with h-vector `h`, refusing vectors that fail
/// [`check_ball`].
pub fn realize(h: &HVector) -> Result<Realization, RealizeError> {
    let report = check_ball(h);
    if !report.is_admissible() {
        return Err(RealizeError::Inadmissible(report));
    }
    let d = h.d();
    if d > MAX_D || h.sum() > MAX_FACETS {
        return Err(RealizeError::TooLarge { d, facets: h.sum() });
    }
    let dh = boundary_h(h);
    let odd = h.sum() % 2 != 0;
    let e = |i: usize| HVector::unit(d, i);

    let (poset, trace, case, case3) = if dh.iter().all(|&x| x > 0) {
        let rest = h - &e(0);
        if odd {
            let ball = realize_even(seed_ball(d), &rest)?;
            (ball.poset, ball.trace, ProofCase::Case1Odd, None)
        } else {
            let idx = sorted_indices(&rest)?;
            let mid = idx[idx.len().div_ceil(2) - 1];
            let ball = realize_even(seed_ball(d), &(&rest - &e(mid)))?;
            let (poset, trace) = close_with_boolean(ball, mid)?;
            (poset, trace, ProofCase::Case1Even, None)
        }
    } else if !odd {
        let n = first_zero(&dh);
        let rest = &(h - &e(0)) - &e(d - n);
        let w = width(&rest)?;
        if w < d - n {
            return Err(RealizeError::Claim(format!(
                "width(h') = {w} is below d - n = {}",
                d - n
            )));
        }
        let ball = realize_even(seed_ball(d), &rest)?;
        let (poset, trace) = close_with_boolean(ball, d - n)?;
        (poset, trace, ProofCase::Case2, None)
    } else {
        let (ball, data) = case3(h, &dh)?;
        (ball.poset, ball.trace, ProofCase::Case3, Some(data))
    };

    let actual = poset.h_vector();
    if &actual != h {
        return Err(RealizeError::Claim(format!(
            "constructed ball has h = {actual}, expected {h}"
        )));
    }
    Ok(Realization {
        poset,
        trace,
        case,
        case3,
    })
}

fn first_zero(dh: &[i128]) -> usize {
    dh.iter()
        .position(|&x| x == 0)
        .expect("caller found a zero")
}

/// Glues one more Boolean algebra along `Delta_d(t)` inside the window.
fn close_with_boolean(
    ball: WindowedBall,
    t: usize,
) -> Result<(SimplicialPoset, ConstructionTrace), RealizeError> {
    if ball.window.k() < t {
        return Err(RealizeError::WindowTooSmall {
            window: ball.window.k(),
            init: t,
        });
    }
    let d = ball.poset.d();
    let (glued, trace, _) = attach_boolean(&ball.poset, ball.trace, delta_faces(d, t), |f| {
        ball.window.id(f)
    })?;
    Ok((glued.poset, trace))
}

fn case3(h: &HVector, dh: &[i128]) -> Result<(WindowedBall, Case3Data), RealizeError> {
    let d = h.d();
    let claim = |s: String| Err(RealizeError::Claim(s));
    let n = first_zero(dh);
    if d % 2 != 0 || 2 * n >= d {
        return claim(format!(
            "odd sum with ∂h_{n} = 0 needs even d > 2n (d = {d})"
        ));
    }
    let m = h.entries().iter().position(|&x| x == 0).expect("h_d = 0") - 1;
    if m < d - n {
        return claim(format!("m = {m} is below d - n = {}", d - n));
    }
    let s = s_sequence(dh, d, m, n)?;
    if s.last() != Some(&n) {
        return claim(format!("s-sequence {s:?} does not end at n = {n}"));
    }

    let mut gamma = vec![0i128; d + 1];
    let mut prev = (d - m) as i128;
    for &sj in &s {
        gamma[d - sj] += prev - dh[sj];
        prev = dh[sj];
    }
    let mut delta = gamma.clone();
    for x in delta.iter_mut().take(m + 1) {
        *x += 1;
    }
    if delta.iter().sum::<i128>() != (d + 1) as i128 {
        return claim(format!("sum of delta is not d + 1 = {}", d + 1));
    }
    if delta[d - n] < 2 {
        return claim(format!("delta_(d-n) = {} is below 2", delta[d - n]));
    }
    let mut delta_bar = delta.clone();
    delta_bar[d - n] -= 1;

    let w = h.wide();
    let h1: Vec<i128> = (0..=d)
        .map(|k| if k > n && k + n < d { w[k] - 1 } else { 0 })
        .collect();
    let h2: Vec<i128> = (0..=d)
        .map(|k| {
            let base = if k <= n || (k + n >= d && k <= m) {
                w[k] - 1
            } else if k > m {
                w[k]
            } else {
                0
            };
            base - gamma[k]
        })
        .collect();

    let to_h = |v: Vec<i128>| HVector::try_from_wide(v);
    let gamma = to_h(gamma)?;
    let delta = to_h(delta)?;
    let delta_bar = to_h(delta_bar)?;
    let h_prime = to_h(h1)?;
    let h_double_prime = to_h(h2)?;

    // (i)
    if &(&(&h_prime + &h_double_prime) + &delta_bar) + &HVector::unit(d, d - n) != *h {
        return claim("h != h' + h'' + delta_bar + e_(d-n)".into());
    }
    // (ii), (iii)
    for (name, v) in [("h'", &h_prime), ("h''", &h_double_prime)] {
        if !v.is_nonnegative() {
            return claim(format!("{name} = {v} has a negative entry"));
        }
        if v.sum() % 2 != 0 {
            return claim(format!("{name} = {v} has an odd sum"));
        }
    }
    // (iv)
    let dh1 = boundary_h(&h_prime);
    let dh2 = boundary_h(&h_double_prime);
    if dh1.iter().chain(&dh2).any(|&x| x < 0) || dh2[n] != 0 {
        return claim(format!(
            "∂h' = {dh1:?}, ∂h'' = {dh2:?} must be nonnegative with ∂h''_{n} = 0"
        ));
    }
    // (v)
    let w1 = width(&h_prime)?;
    if w1 < d - n {
        return claim(format!("width(h') = {w1} is below d - n = {}", d - n));
    }

    let p = special_ball(n, &delta_bar)?;
    let q = realize_even(seed_ball(d), &h_prime)?;
    let map = GlueMap::new(
        delta_faces(d, d - n)
            .map(|f| (q.window.id(f), p.window2.id(f)))
            .collect(),
    );
    let r = q.poset.glue(&p.poset, &map)?;
    let window = p.window1.remap(&r.right_map);
    window.check(&r.poset)?;
    let joined = WindowedBall {
        poset: r.poset,
        window,
        trace: q.trace.glue(p.trace, map, None),
    };
    let ball = realize_even(joined, &h_double_prime)?;

    Ok((
        ball,
        Case3Data {
            n,
            m,
            s,
            gamma,
            delta,
            delta_bar,
            h_prime,
            h_double_prime,
        },
    ))
}
