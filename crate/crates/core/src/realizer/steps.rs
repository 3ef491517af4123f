use crate::hcalc::{boundary_h, init_number, pairing_decomposition, width, HVector};
use crate::label::FaceLabel;
use crate::poset::{boolean, ElementId, GlueMap, Glued, LabeledPoset, SimplicialPoset};

use super::trace::ConstructionTrace;
use super::window::{delta_faces, Window, WindowedBall};
use super::RealizeError;

/// `boolean(d)` with its whole boundary as the window `Delta_d(d)`.
pub fn seed_ball(d: usize) -> WindowedBall {
    let b = boolean(d);
    let window = Window::from_fn(d, d, |f| b.id(f));
    WindowedBall {
        poset: b.poset,
        window,
        trace: ConstructionTrace::boolean(d),
    }
}

/// Glues a fresh `boolean(d)` onto `poset`, identifying `id(F)` with the
/// Boolean's `F` for each label in `faces`.
pub(crate) fn attach_boolean(
    poset: &SimplicialPoset,
    trace: ConstructionTrace,
    faces: impl Iterator<Item = FaceLabel>,
    id: impl Fn(FaceLabel) -> ElementId,
) -> Result<(Glued, ConstructionTrace, LabeledPoset), RealizeError> {
    let d = poset.d();
    let b = boolean(d);
    let map = GlueMap::new(faces.map(|f| (id(f), b.id(f))).collect());
    let glued = poset.glue(&b.poset, &map)?;
    let trace = trace.glue(ConstructionTrace::boolean(d), map, None);
    Ok((glued, trace, b))
}

/// Adds `e_i + e_j` to the h-vector by gluing two Boolean algebras through
/// the window; the new window is `Delta_d(min(k, i + j))`.
pub fn glue_step(w: &WindowedBall, i: usize, j: usize) -> Result<WindowedBall, RealizeError> {
    let d = w.poset.d();
    let m = w.window.k();
    if i == 0 || i > m || m > d || j == 0 || i + j > d {
        return Err(RealizeError::StepRange { i, j, m, d });
    }

    // A along {L(F) : F ⊉ [i]}.
    let (g1, trace, a) = attach_boolean(&w.poset, w.trace.clone(), delta_faces(d, i), |f| {
        w.window.id(f)
    })?;
    // B along {A(F) : F ⊉ {i+1, ..., i+j}}.
    let core = FaceLabel::range(i + 1, i + j);
    let faces = FaceLabel::full(d)
        .subsets()
        .filter(|f| !f.is_empty() && !f.is_superset_of(core));
    let (g2, trace, b) = attach_boolean(&g1.poset, trace, faces, |f| g1.right_map[a.id(f)])?;

    let l = m.min(i + j);
    let lower = FaceLabel::full(i);
    let window = Window::from_fn(d, l, |f| {
        if f.is_superset_of(lower) {
            w.window.id(f)
        } else {
            g2.right_map[b.id(f)]
        }
    });
    window.check(&g2.poset)?;

    let expected = &(&w.poset.h_vector() + &HVector::unit(d, i)) + &HVector::unit(d, j);
    let actual = g2.poset.h_vector();
    if actual != expected {
        return Err(RealizeError::Claim(format!(
            "glue_step({i}, {j}) produced h = {actual}, expected {expected}"
        )));
    }
    Ok(WindowedBall {
        poset: g2.poset,
        window,
        trace,
    })
}

/// Adds `h` (with `h_0 = 0`, `∂h >= 0` and even sum) by one [`glue_step`]
/// per pair of the outer-to-inner pairing.
pub fn realize_even(w: WindowedBall, h: &HVector) -> Result<WindowedBall, RealizeError> {
    let d = w.poset.d();
    if h.d() != d {
        return Err(RealizeError::DimensionMismatch {
            expected: d,
            found: h.d(),
        });
    }
    if h.get(0) != 0 {
        return Err(RealizeError::NonzeroConstant(h.get(0)));
    }
    let pairs = pairing_decomposition(h)?;
    if let Some(k) = boundary_h(h).iter().position(|&x| x < 0) {
        return Err(RealizeError::NegativeBoundary(k));
    }
    let init = init_number(h)?;
    if w.window.k() < init {
        return Err(RealizeError::WindowTooSmall {
            window: w.window.k(),
            init,
        });
    }
    let target_k = w.window.k().min(width(h)?);
    let expected = &w.poset.h_vector() + h;

    let mut cur = w;
    for (i, j) in pairs {
        cur = glue_step(&cur, i, j)?;
    }
    if cur.window.k() != target_k {
        return Err(RealizeError::Claim(format!(
            "window ended at Delta_{d}({}), expected Delta_{d}({target_k})",
            cur.window.k()
        )));
    }
    let actual = cur.poset.h_vector();
    if actual != expected {
        return Err(RealizeError::Claim(format!(
            "pair gluings produced h = {actual}, expected {expected}"
        )));
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(s: &str) -> HVector {
        s.parse().unwrap()
    }

    #[test]
    fn seed_examples() {
        let s = seed_ball(3);
        assert_eq!(s.poset.f_vector(), vec![1, 3, 3, 1]);
        assert_eq!(s.window.labels().count(), 6);
        assert_eq!(s.window.check(&s.poset), Ok(()));
        assert_eq!(s.poset.boundary().unwrap().len(), 6);
        for d in 1..=6 {
            assert_eq!(seed_ball(d).poset.h_vector(), HVector::simplex(d));
        }
    }

    #[test]
    fn glue_step_examples() {
        let q = glue_step(&seed_ball(4), 1, 3).unwrap();
        assert_eq!(q.poset.h_vector(), hv("1,1,0,1,0"));
        assert_eq!(q.window.k(), 4);
        assert_eq!(q.trace.glue_count(), 2);

        let q = glue_step(&seed_ball(3), 1, 1).unwrap();
        assert_eq!(q.poset.h_vector(), hv("1,2,0,0"));
        assert_eq!(q.window.k(), 2);
    }

    #[test]
    fn glue_step_range() {
        let s = seed_ball(3);
        assert!(matches!(
            glue_step(&s, 0, 1),
            Err(RealizeError::StepRange { .. })
        ));
        assert!(matches!(
            glue_step(&s, 2, 2),
            Err(RealizeError::StepRange { .. })
        ));
        // Window shrinks to Delta_4(2), so i = 3 is out of range.
        let narrow = glue_step(&seed_ball(4), 1, 1).unwrap();
        assert!(glue_step(&narrow, 2, 2).is_ok());
        assert!(matches!(
            glue_step(&narrow, 3, 1),
            Err(RealizeError::StepRange { .. })
        ));
    }

    #[test]
    fn realize_even_examples() {
        let same = realize_even(seed_ball(4), &HVector::zero(4)).unwrap();
        assert_eq!(same, seed_ball(4));

        let q = realize_even(seed_ball(4), &hv("0,1,0,1,0")).unwrap();
        assert_eq!(q.poset.h_vector(), hv("1,1,0,1,0"));
        assert_eq!(q.window.k(), 4);

        let q = realize_even(seed_ball(4), &hv("0,2,1,1,0")).unwrap();
        assert_eq!(q.poset.h_vector(), hv("1,2,1,1,0"));
        assert_eq!(q.window.k(), 3);
    }

    #[test]
    fn realize_even_preconditions() {
        let s = || seed_ball(3);
        assert!(matches!(
            realize_even(s(), &hv("1,1,0,0")),
            Err(RealizeError::NonzeroConstant(1))
        ));
        assert!(matches!(
            realize_even(s(), &hv("0,1,0,0")),
            Err(RealizeError::Pairing(_))
        ));
        assert!(matches!(
            realize_even(s(), &hv("0,0,2,0")),
            Err(RealizeError::NegativeBoundary(_))
        ));
        assert!(matches!(
            realize_even(s(), &hv("0,1,1")),
            Err(RealizeError::DimensionMismatch { .. })
        ));
        // init((0,0,0,2,0,0,0)) = 3 but the window has shrunk to Delta_6(2).
        let narrow = glue_step(&seed_ball(6), 1, 1).unwrap();
        assert!(matches!(
            realize_even(narrow, &hv("0,0,0,2,0,0,0")),
            Err(RealizeError::WindowTooSmall { window: 2, init: 3 })
        ));
    }
}
