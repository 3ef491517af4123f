//! The two-window ball built from `Delta_{d+1}(n)` and `Delta_{d+1}(d-n)`
//! glued along a shellable ball `Ω`.

use std::collections::BTreeSet;

use crate::hcalc::HVector;
use crate::label::FaceLabel;
use crate::poset::{delta, shelling_h_vector, ElementId, GlueMap, LabeledPoset};

use super::trace::ConstructionTrace;
use super::window::{TwoWindowBall, Window};
use super::RealizeError;

/// Parameters derived from a vector satisfying the special-ball hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialParams {
    pub d: usize,
    pub n: usize,
    /// Largest index with a positive entry.
    pub m: usize,
    /// `alpha[l - 1] = h_{d-n+l-1} + ... + h_d` for `l = 1, ..., n + 1`.
    pub alpha: Vec<usize>,
}

/// Checks the hypotheses on `(n, h)` and derives `m` and the `alpha_l`.
pub fn special_params(n: usize, h: &HVector) -> Result<SpecialParams, RealizeError> {
    let d = h.d();
    let fail = |what: &'static str| Err(RealizeError::SpecialHypothesis(what));
    if n == 0 || 2 * n > d {
        return fail("need 1 <= n <= d/2");
    }
    if h.sum() != d as i128 {
        return fail("entries must sum to d");
    }
    if (0..d - n).any(|i| h.get(i) != 1) {
        return fail("h_i = 1 for i < d - n");
    }
    let Some(m) = (0..=d).rev().find(|&i| h.get(i) > 0) else {
        return fail("h has no positive entry");
    };
    if m < d - n || m >= d {
        return fail("need d - n <= m < d");
    }
    if (d - n..=m).any(|i| h.get(i) <= 0) || (m + 1..=d).any(|i| h.get(i) != 0) {
        return fail("h_i > 0 for d - n <= i <= m and h_i = 0 above m");
    }
    let alpha: Vec<usize> = (1..=n + 1)
        .map(|l| (d - n + l - 1..=d).map(|i| h.get(i) as usize).sum())
        .collect();
    if alpha[0] != n {
        return Err(RealizeError::Claim(format!(
            "alpha_1 = {}, expected {n}",
            alpha[0]
        )));
    }
    if let Some(l) = (1..=n + 1).find(|&l| alpha[l - 1] + l > n + 1) {
        return Err(RealizeError::Claim(format!(
            "alpha_{l} = {} exceeds n - (l - 1)",
            alpha[l - 1]
        )));
    }
    Ok(SpecialParams { d, n, m, alpha })
}

/// The pair set `D`: all `{p, q}` with `p ∈ [n]`, `q ∈ {n+1..d}`,
/// `p + q <= d`, plus `{p, d + l - p}` for `p = l, ..., l + alpha_l - 1`
/// and `l = 1, ..., m - (d - n) + 1`. Pairs are `(p, q)` with `p < q`.
pub fn build_d(n: usize, h: &HVector) -> Result<BTreeSet<(usize, usize)>, RealizeError> {
    let SpecialParams { d, m, alpha, .. } = special_params(n, h)?;
    let mut set = BTreeSet::new();
    for p in 1..=n {
        for q in n + 1..=d - p {
            set.insert((p, q));
        }
    }
    for l in 1..=m - (d - n) + 1 {
        for p in l..l + alpha[l - 1] {
            set.insert((p, d + l - p));
        }
    }
    if let Some(&(p, q)) = set.iter().find(|&&(p, q)| p > n || q <= n || q > d) {
        return Err(RealizeError::Claim(format!(
            "pair {{{p},{q}}} outside [n] x {{n+1..d}}"
        )));
    }
    Ok(set)
}

/// `Ω = ⟨[d+1] ∖ {p, q} : {p, q} ∈ D⟩` with a verified shelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Omega {
    /// Rank `d - 1`, labeled by subsets of `[d + 1]`.
    pub complex: LabeledPoset,
    pub pairs: Vec<(usize, usize)>,
    /// Facets in shelling order (lexicographic in `(p, q)`).
    pub order: Vec<ElementId>,
    pub shelling_numbers: Vec<usize>,
    pub h: HVector,
}

pub fn build_omega(n: usize, h: &HVector) -> Result<Omega, RealizeError> {
    let d = h.d();
    let pairs: Vec<(usize, usize)> = build_d(n, h)?.into_iter().collect();
    let ground = FaceLabel::full(d + 1);
    let facets: Vec<FaceLabel> = pairs
        .iter()
        .map(|&(p, q)| ground.without(p).without(q))
        .collect();
    let complex =
        LabeledPoset::from_faces(d - 1, facets.iter().flat_map(|f| f.subsets()).collect());
    let order: Vec<ElementId> = facets.iter().map(|&f| complex.id(f)).collect();
    let ks = complex
        .poset
        .verify_shelling(&order)
        .map_err(|e| RealizeError::Claim(format!("Ω order is not a shelling: {e}")))?;
    for (step, (&k, &(p, q))) in ks.iter().zip(&pairs[1..]).enumerate() {
        if k + n + 2 != p + q {
            return Err(RealizeError::Claim(format!(
                "shelling step {} for {{{p},{q}}} meets earlier facets in Delta({k})",
                step + 1
            )));
        }
    }
    let h_omega = shelling_h_vector(d - 1, &ks);
    if h_omega != complex.poset.h_vector() {
        return Err(RealizeError::Claim(
            "Ω h-vector from shelling differs from f-count".into(),
        ));
    }
    // g = h - Σ_{i<n} e_i - Σ_{i<d-n} e_i must equal -h_i(Ω) + h_{i-1}(Ω).
    for i in 0..=d {
        let g = h.get(i) as i128 - i128::from(i < n) - i128::from(i < d - n);
        let at = |j: usize| if j < d { h_omega.get(j) as i128 } else { 0 };
        let rhs = -at(i) + if i > 0 { at(i - 1) } else { 0 };
        if g != rhs {
            return Err(RealizeError::Claim(format!(
                "g_{i} = {g} but -h_i(Ω) + h_(i-1)(Ω) = {rhs}"
            )));
        }
    }
    Ok(Omega {
        complex,
        pairs,
        order,
        shelling_numbers: ks,
        h: h_omega,
    })
}

/// Glues `Delta_{d+1}(n)` and `Delta_{d+1}(d-n)` along `Ω`. The result has
/// h-vector `h`, with windows `Delta_d(n)` and `Delta_d(d-n)` in its
/// boundary sharing no facet.
pub fn special_ball(n: usize, h: &HVector) -> Result<TwoWindowBall, RealizeError> {
    let d = h.d();
    let omega = build_omega(n, h)?;
    let claim = |e: crate::poset::DeltaError| RealizeError::Claim(e.to_string());
    let a = delta(d + 1, n).map_err(claim)?;
    let b = delta(d + 1, d - n).map_err(claim)?;
    // Sends {n+1..d} onto [d-n] and [n] onto {d-n+1..d}, fixing d+1.
    let pi = |x: usize| {
        if x <= n {
            x + d - n
        } else if x <= d {
            x - n
        } else {
            x
        }
    };
    let b_id = |f: FaceLabel| b.id(f.map(pi));

    let map = GlueMap::new(
        omega
            .complex
            .labels()
            .map(|(f, _)| (a.id(f), b_id(f)))
            .collect(),
    );
    let shelling: Vec<ElementId> = omega
        .order
        .iter()
        .map(|&id| a.id(omega.complex.label(id)))
        .collect();
    let glued = a.poset.glue(&b.poset, &map)?;

    let window1 = Window::from_fn(d, n, |f| a.id(f));
    // F ⊆ [d] with F ⊉ {n+1..d} is relabeled pi(F) ⊉ [d-n].
    let window2 = Window::from_fn(d, d - n, |f| glued.right_map[b.id(f)]);
    window1.check(&glued.poset)?;
    window2.check(&glued.poset)?;
    if window1
        .facet_ids()
        .intersection(&window2.facet_ids())
        .next()
        .is_some()
    {
        return Err(RealizeError::Claim("the two windows share a facet".into()));
    }
    let actual = glued.poset.h_vector();
    if &actual != h {
        return Err(RealizeError::Claim(format!(
            "special ball has h = {actual}, expected {h}"
        )));
    }
    let trace = ConstructionTrace::delta(d + 1, n).glue(
        ConstructionTrace::delta(d + 1, d - n),
        map,
        Some(shelling),
    );
    Ok(TwoWindowBall {
        poset: glued.poset,
        window1,
        window2,
        trace,
    })
}

/// Strict running minima of `j ↦ ∂h_j` over `j = d-m, ..., n`, starting
/// from the threshold `d - m`.
pub fn s_sequence(dh: &[i128], d: usize, m: usize, n: usize) -> Result<Vec<usize>, RealizeError> {
    let fail = |what: &'static str| Err(RealizeError::SequencePrecondition(what));
    if m >= d || d - m > n || n >= dh.len() {
        return fail("need d - m <= n < d");
    }
    if dh[n] != 0 {
        return fail("∂h_n must be 0");
    }
    if dh[d - m - 1] < (d - m) as i128 {
        return fail("∂h_(d-m-1) must be at least d - m");
    }
    let mut threshold = (d - m) as i128;
    let mut s = Vec::new();
    for (j, &x) in dh.iter().enumerate().take(n + 1).skip(d - m) {
        if x < threshold {
            s.push(j);
            threshold = x;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(s: &str) -> HVector {
        s.parse().unwrap()
    }

    #[test]
    fn d_examples() {
        let d = build_d(2, &hv("1,1,2,0,0")).unwrap();
        assert_eq!(
            d.into_iter().collect::<Vec<_>>(),
            vec![(1, 3), (1, 4), (2, 3)]
        );
        assert_eq!(
            special_params(2, &hv("1,1,2,0,0")).unwrap().alpha,
            vec![2, 0, 0]
        );
        let d = build_d(1, &hv("1,1,1,1,0")).unwrap();
        assert_eq!(
            d.into_iter().collect::<Vec<_>>(),
            vec![(1, 2), (1, 3), (1, 4)]
        );
        let p = special_params(1, &hv("1,1,1,1,0")).unwrap();
        assert_eq!((p.m, p.alpha), (3, vec![1, 0]));
    }

    #[test]
    fn hypotheses_rejected() {
        for (n, h) in [
            (0, "1,1,1,1,0"),
            (3, "1,1,1,1,0"),
            (1, "1,1,1,2,0"),
            (1, "1,1,2,0,0"),
            (2, "1,1,1,0,1"),
            (2, "1,2,1,0,0"),
        ] {
            assert!(
                matches!(
                    special_params(n, &hv(h)),
                    Err(RealizeError::SpecialHypothesis(_))
                ),
                "n = {n}, h = {h}"
            );
        }
    }

    #[test]
    fn omega_examples() {
        let o = build_omega(2, &hv("1,1,2,0,0")).unwrap();
        let facets: Vec<String> = o
            .order
            .iter()
            .map(|&id| o.complex.label(id).to_string())
            .collect();
        assert_eq!(facets, vec!["{2,4,5}", "{2,3,5}", "{1,4,5}"]);
        assert_eq!(o.h.entries(), &[1, 2, 0, 0]);

        let o = build_omega(1, &hv("1,1,1,1,0")).unwrap();
        let facets: Vec<String> = o
            .order
            .iter()
            .map(|&id| o.complex.label(id).to_string())
            .collect();
        assert_eq!(facets, vec!["{3,4,5}", "{2,4,5}", "{2,3,5}"]);
        assert_eq!(o.h.entries(), &[1, 1, 1, 0]);
    }

    #[test]
    fn special_ball_examples() {
        let p = special_ball(2, &hv("1,1,2,0,0")).unwrap();
        assert_eq!(p.poset.h_vector(), hv("1,1,2,0,0"));
        assert_eq!((p.window1.k(), p.window2.k()), (2, 2));

        let p = special_ball(1, &hv("1,1,1,1,0")).unwrap();
        assert_eq!(p.poset.h_vector(), hv("1,1,1,1,0"));
        assert_eq!((p.window1.k(), p.window2.k()), (1, 3));
        assert_eq!(p.trace.glue_count(), 1);
    }

    #[test]
    fn s_sequence_examples() {
        assert_eq!(s_sequence(&[1, 0, 0, 1], 4, 3, 1).unwrap(), vec![1]);
        // Constant d - m until a single zero.
        assert_eq!(
            s_sequence(&[3, 2, 2, 0, 0, 2, 2, 3], 8, 6, 3).unwrap(),
            vec![3]
        );
        // Two strict drops below the threshold d - m = 2.
        assert_eq!(
            s_sequence(&[6, 5, 2, 1, 0, 0, 1, 2, 5, 6], 10, 8, 4).unwrap(),
            vec![3, 4]
        );
        assert_eq!(
            s_sequence(&[5, 4, 3, 2, 1, 0, 1, 2, 3, 4, 5], 11, 7, 5),
            Err(RealizeError::SequencePrecondition(
                "∂h_(d-m-1) must be at least d - m"
            ))
        );
        assert!(s_sequence(&[1, 1, 1, 1], 4, 3, 1).is_err());
    }
}
