//! Exact arithmetic on h-vectors.
//!
//! Entries are stored as `i64`; every derived quantity (partial sums, the
//! boundary operator, window sums) is computed in `i128`, which cannot
//! overflow for any vector that fits in memory.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HError {
    #[error("h-vector must have at least one entry")]
    Empty,
    #[error("invalid integer {0:?} in h-vector")]
    BadEntry(String),
    #[error("entry h_{index} = {value} is negative")]
    NegativeEntry { index: usize, value: i64 },
    #[error("entries sum to {0}, which is odd")]
    OddSum(i128),
    #[error("value {0} does not fit in an h-vector entry")]
    Overflow(i128),
}

/// An integer vector `(h_0, ..., h_d)`; `d` is the length minus one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HVector(Vec<i64>);

impl HVector {
    pub fn new(entries: Vec<i64>) -> Result<Self, HError> {
        if entries.is_empty() {
            return Err(HError::Empty);
        }
        Ok(HVector(entries))
    }

    pub fn zero(d: usize) -> Self {
        HVector(vec![0; d + 1])
    }

    /// The unit vector `e_i` of length `d + 1`.
    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = Self::zero(d);
        v.0[i] = 1;
        v
    }

    /// `(1, 0, ..., 0)`, the h-vector of a simplex.
    pub fn simplex(d: usize) -> Self {
        Self::unit(d, 0)
    }

    pub fn try_from_wide(entries: Vec<i128>) -> Result<Self, HError> {
        let narrow = entries
            .into_iter()
            .map(|x| i64::try_from(x).map_err(|_| HError::Overflow(x)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(narrow)
    }

    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn wide(&self) -> Vec<i128> {
        self.0.iter().map(|&x| x as i128).collect()
    }

    pub fn sum(&self) -> i128 {
        self.0.iter().map(|&x| x as i128).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Adds `delta` to entry `i`, returning a new vector.
    pub fn bumped(&self, i: usize, delta: i64) -> Self {
        let mut v = self.clone();
        v.0[i] += delta;
        v
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for HVector {
    type Err = HError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(HError::Empty);
        }
        let entries = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i64>()
                    .map_err(|_| HError::BadEntry(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        HVector::new(entries)
    }
}

impl Add for &HVector {
    type Output = HVector;

    fn add(self, rhs: &HVector) -> HVector {
        assert_eq!(self.0.len(), rhs.0.len(), "h-vector length mismatch");
        HVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &HVector {
    type Output = HVector;

    fn sub(self, rhs: &HVector) -> HVector {
        assert_eq!(self.0.len(), rhs.0.len(), "h-vector length mismatch");
        HVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as i128 / (t + 1) as i128;
    }
    acc
}

/// h-vector from the f-vector `(f_{-1}, ..., f_{d-1})`, using
/// `sum_i f_{i-1} (t-1)^{d-i} = sum_i h_i t^{d-i}`.
pub fn h_from_f(f: &[i128]) -> Vec<i128> {
    let d = f.len() - 1;
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, k - i) * f[i]
                })
                .sum()
        })
        .collect()
}

/// Inverse of [`h_from_f`]: `f_{j-1} = sum_i C(d-i, j-i) h_i`.
pub fn f_from_h(h: &[i128]) -> Vec<i128> {
    let d = h.len() - 1;
    (0..=d)
        .map(|j| (0..=j).map(|i| binomial(d - i, j - i) * h[i]).sum())
        .collect()
}

/// The boundary operator:
/// `dh_i = (h_0 + ... + h_i) - (h_d + ... + h_{d-i})` for `i = 0..d-1`.
pub fn boundary_h(h: &HVector) -> Vec<i128> {
    let w = h.wide();
    let d = h.d();
    (0..d)
        .map(|i| {
            let low: i128 = w[..=i].iter().sum();
            let high: i128 = w[d - i..].iter().sum();
            low - high
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Sphere,
    Ball,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Sphere => f.write_str("sphere"),
            Target::Ball => f.write_str("ball"),
        }
    }
}

/// One violated condition together with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionFailure {
    pub condition: u8,
    pub witness: Vec<(&'static str, usize)>,
}

impl ConditionFailure {
    fn new(condition: u8, witness: &[(&'static str, usize)]) -> Self {
        ConditionFailure {
            condition,
            witness: witness.to_vec(),
        }
    }
}

impl fmt::Display for ConditionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.condition)?;
        for (i, (name, value)) in self.witness.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{name}={value}")?;
        }
        Ok(())
    }
}

/// Outcome of evaluating every condition for a target. Failures are listed
/// in condition order, so the first entry is the first failing condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub target: Target,
    pub failures: Vec<ConditionFailure>,
}

impl ConditionReport {
    pub fn is_admissible(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&ConditionFailure> {
        self.failures.first()
    }

    /// Distinct failing condition numbers, ascending.
    pub fn failed_conditions(&self) -> Vec<u8> {
        let mut c: Vec<u8> = self.failures.iter().map(|f| f.condition).collect();
        c.dedup();
        c
    }

    pub fn fails(&self, condition: u8) -> bool {
        self.failures.iter().any(|f| f.condition == condition)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_admissible() {
            return write!(f, "{}: admissible", self.target);
        }
        writeln!(f, "{}: inadmissible", self.target)?;
        let first = self.failures[0].condition;
        write!(f, "first failing condition: ({first})")?;
        for failure in &self.failures {
            write!(f, "\n  fails {failure}")?;
        }
        Ok(())
    }
}

/// Conditions (1)-(3) characterising h-vectors of simplicial cell spheres.
pub fn check_sphere(h: &HVector) -> ConditionReport {
    let w = h.wide();
    let d = h.d();
    let total: i128 = w.iter().sum();
    let mut failures = Vec::new();

    if w[0] != 1 {
        failures.push(ConditionFailure::new(1, &[("i", 0)]));
    }
    if d > 0 && w[d] != 1 {
        failures.push(ConditionFailure::new(1, &[("i", d)]));
    }
    for i in 1..d {
        if w[i] != w[d - i] && i <= d - i {
            failures.push(ConditionFailure::new(1, &[("i", i), ("j", d - i)]));
        }
    }

    for (i, &x) in w.iter().enumerate() {
        if x < 0 {
            failures.push(ConditionFailure::new(2, &[("i", i)]));
        }
    }

    if total % 2 != 0 {
        for n in 1..d {
            if w[n] == 0 {
                failures.push(ConditionFailure::new(3, &[("n", n)]));
            }
        }
    }

    ConditionReport {
        target: Target::Sphere,
        failures,
    }
}

/// Conditions (1)-(7) characterising h-vectors of simplicial cell balls.
/// Every condition is evaluated over its full index range; nothing is
/// short-circuited. (5)-(7) are implied by (1) and (3) for odd `d`, so they
/// are only reported for even `d`.
pub fn check_ball(h: &HVector) -> ConditionReport {
    let w = h.wide();
    let d = h.d();
    let dh = boundary_h(h);
    let odd = w.iter().sum::<i128>() % 2 != 0;
    // h_k + h_{k-1} + ... + h_{k-n+1}
    let window = |k: usize, n: usize| -> i128 { w[k + 1 - n..=k].iter().sum() };
    let mut failures = Vec::new();

    // (1)
    if w[0] != 1 {
        failures.push(ConditionFailure::new(1, &[("k", 0)]));
    }
    if w[d] != 0 {
        failures.push(ConditionFailure::new(1, &[("k", d)]));
    }
    for k in 1..d {
        if w[k] < 0 {
            failures.push(ConditionFailure::new(1, &[("k", k)]));
        }
    }

    // (2)
    for (k, &x) in dh.iter().enumerate() {
        if x < 0 {
            failures.push(ConditionFailure::new(2, &[("k", k)]));
        }
    }

    // (3)
    if d % 2 == 1 && odd {
        for n in 1..d.saturating_sub(1) {
            if dh[n] == 0 {
                failures.push(ConditionFailure::new(3, &[("n", n)]));
            }
        }
    }

    // (4)
    for n in 1..d.saturating_sub(1) {
        if dh[n] != 0 {
            continue;
        }
        for k in n..d {
            if window(k, n) < dh[k] {
                failures.push(ConditionFailure::new(4, &[("n", n), ("k", k)]));
            }
        }
    }

    // (5)-(7) follow from (3) when d is odd and are only evaluated for even d.
    let even_d_odd_sum = odd && d % 2 == 0;

    // (5)
    if even_d_odd_sum {
        for i in 1..d {
            if dh[i] != 0 {
                continue;
            }
            for j in 1..=d - i {
                if w[j] == 0 {
                    failures.push(ConditionFailure::new(5, &[("i", i), ("j", j)]));
                }
            }
        }
    }

    // (6)
    if even_d_odd_sum {
        let mut n = 1;
        while 2 * n < d {
            if dh[n] == 0 {
                for l in n..=d - n {
                    if window(l, n) - dh[l] < n as i128 {
                        failures.push(ConditionFailure::new(6, &[("n", n), ("l", l)]));
                    }
                }
            }
            n += 1;
        }
    }

    // (7)
    if even_d_odd_sum {
        let mut i = 1;
        while 2 * i < d {
            if dh[i] == 0 {
                for j in d - i + 1..d {
                    if w[j] != 0 {
                        continue;
                    }
                    for l in 0..=d - j {
                        if dh[l] <= l as i128 {
                            failures
                                .push(ConditionFailure::new(7, &[("i", i), ("j", j), ("l", l)]));
                        }
                    }
                }
            }
            i += 1;
        }
    }

    ConditionReport {
        target: Target::Ball,
        failures,
    }
}

fn require_pairable(h: &HVector) -> Result<(), HError> {
    if let Some((index, &value)) = h.entries().iter().enumerate().find(|(_, &x)| x < 0) {
        return Err(HError::NegativeEntry { index, value });
    }
    let total = h.sum();
    if total % 2 != 0 {
        return Err(HError::OddSum(total));
    }
    Ok(())
}

/// The indices `i_1 <= ... <= i_a` with `h = e_{i_1} + ... + e_{i_a}`.
pub fn sorted_indices(h: &HVector) -> Result<Vec<usize>, HError> {
    if let Some((index, &value)) = h.entries().iter().enumerate().find(|(_, &x)| x < 0) {
        return Err(HError::NegativeEntry { index, value });
    }
    Ok(h.entries()
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| std::iter::repeat_n(i, x as usize))
        .collect())
}

/// Outer-to-inner pairs `(i_1, i_a), (i_2, i_{a-1}), ...` of a nonnegative
/// even-sum vector.
pub fn pairing_decomposition(h: &HVector) -> Result<Vec<(usize, usize)>, HError> {
    require_pairable(h)?;
    let idx = sorted_indices(h)?;
    let a = idx.len();
    Ok((0..a / 2).map(|k| (idx[k], idx[a - 1 - k])).collect())
}

/// `i_{a/2}`, the smaller index of the innermost pair; `0` for the zero vector.
pub fn init_number(h: &HVector) -> Result<usize, HError> {
    let pairs = pairing_decomposition(h)?;
    Ok(pairs.last().map_or(0, |&(i, _)| i))
}

/// Minimum index sum over the pairs; `d` for the zero vector.
pub fn width(h: &HVector) -> Result<usize, HError> {
    let pairs = pairing_decomposition(h)?;
    Ok(pairs.iter().map(|&(i, j)| i + j).min().unwrap_or(h.d()))
}

/// The largest `l` with `h_0 + ... + h_k <= h_d + ... + h_{l-k}` for all `k`.
pub fn width_formula(h: &HVector) -> Result<usize, HError> {
    require_pairable(h)?;
    let d = h.d();
    if h.is_zero() {
        return Ok(d);
    }
    let w = h.wide();
    let mut prefix = vec![0i128; d + 1];
    let mut acc = 0;
    for k in 0..=d {
        acc += w[k];
        prefix[k] = acc;
    }
    // tail(t) = h_d + ... + h_t, clamped to the valid index range.
    let total = acc;
    let tail = |t: isize| -> i128 {
        if t <= 0 {
            total
        } else if t as usize > d {
            0
        } else {
            total - prefix[t as usize - 1]
        }
    };
    let holds = |l: usize| (0..=d).all(|k| prefix[k] <= tail(l as isize - k as isize));
    // For l > 2d the k = d inequality reads total <= 0.
    Ok((0..=2 * d).rev().find(|&l| holds(l)).unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(s: &str) -> HVector {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let h = hv("1, 0,0,1,0");
        assert_eq!(h.d(), 4);
        assert_eq!(h.to_string(), "1,0,0,1,0");
        assert!(matches!("1,x".parse::<HVector>(), Err(HError::BadEntry(_))));
        assert!(matches!("".parse::<HVector>(), Err(HError::Empty)));
        assert!("1,99999999999999999999".parse::<HVector>().is_err());
    }

    #[test]
    fn boundary_operator_examples() {
        assert_eq!(boundary_h(&hv("1,0,0,0")), vec![1, 1, 1]);
        assert_eq!(boundary_h(&hv("1,1,0,0")), vec![1, 2, 1]);
        assert_eq!(boundary_h(&hv("1,0,1,0,1,0")), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn f_h_transform_small_cases() {
        // Two triangles sharing an edge.
        assert_eq!(h_from_f(&[1, 4, 5, 2]), vec![1, 1, 0, 0]);
        assert_eq!(f_from_h(&[1, 1, 0, 0]), vec![1, 4, 5, 2]);
        // Boolean algebra of rank 4.
        assert_eq!(h_from_f(&[1, 4, 6, 4, 1]), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn sphere_examples() {
        assert!(check_sphere(&hv("1,1,1,1")).is_admissible());
        assert!(check_sphere(&hv("1,0,1")).is_admissible());
        // Asymmetric, and odd total with h_1 = 0.
        let r = check_sphere(&hv("1,0,1,1"));
        assert_eq!(r.failed_conditions(), vec![1, 3]);
        // Odd total with an interior zero.
        assert_eq!(
            check_sphere(&hv("1,0,0,1,0,0,1")).failed_conditions(),
            vec![3]
        );
        assert!(check_sphere(&hv("1,2,0,2,1")).is_admissible());
        assert_eq!(check_sphere(&hv("1,0,1,0,1")).failed_conditions(), vec![3]);
        assert!(check_sphere(&hv("1")).is_admissible());
    }

    #[test]
    fn ball_examples() {
        for d in 1..8 {
            assert!(check_ball(&HVector::simplex(d)).is_admissible());
        }
        assert!(check_ball(&hv("1,0,0,1,0")).is_admissible());
        assert!(check_ball(&hv("1,1,1,2,0")).is_admissible());
        let r = check_ball(&hv("1,0,1,0,1,0"));
        assert_eq!(r.failed_conditions(), vec![3]);
        assert_eq!(r.first_failure().unwrap().witness, vec![("n", 1)]);
    }

    #[test]
    fn ball_condition_one_and_two() {
        // h_0 = 2, h_3 = 3 and dh_0 = 2 - 3 < 0.
        let r = check_ball(&hv("2,0,0,3"));
        assert!(r.fails(1));
        assert!(r.fails(2));
        assert_eq!(r.first_failure().unwrap().condition, 1);
        // dh = (1, 0, 1) with an even total.
        assert!(check_ball(&hv("1,0,1,0")).is_admissible());
        // dh_1 = 1 - 2 < 0
        assert_eq!(check_ball(&hv("1,0,2,0")).failed_conditions(), vec![2]);
    }

    #[test]
    fn ball_condition_five() {
        let h = hv("1,0,1,1,0");
        assert_eq!(boundary_h(&h), vec![1, 0, 0, 1]);
        let r = check_ball(&h);
        assert!(r.fails(5));
        assert!(r
            .failures
            .iter()
            .any(|f| f.condition == 5 && f.witness == vec![("i", 1), ("j", 1)]));
        // Same boundary zeros with an even total pass.
        assert!(!check_ball(&hv("1,1,0,2,0")).fails(5));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(
            pairing_decomposition(&hv("0,2,1,1,0")).unwrap(),
            vec![(1, 3), (1, 2)]
        );
        assert!(pairing_decomposition(&hv("0,0,0")).unwrap().is_empty());
        assert_eq!(
            pairing_decomposition(&hv("0,1,0,1,0")).unwrap(),
            vec![(1, 3)]
        );
        assert_eq!(pairing_decomposition(&hv("0,1,0")), Err(HError::OddSum(1)));
        assert!(matches!(
            pairing_decomposition(&hv("0,-1,1")),
            Err(HError::NegativeEntry { index: 1, .. })
        ));
    }

    #[test]
    fn init_and_width_examples() {
        assert_eq!(init_number(&hv("0,2,1,1,0")).unwrap(), 1);
        assert_eq!(init_number(&hv("0,1,0,1,0")).unwrap(), 1);
        assert_eq!(init_number(&hv("0,0,2,0,0")).unwrap(), 2);
        assert_eq!(width(&hv("0,2,1,1,0")).unwrap(), 3);
        assert_eq!(width(&hv("0,1,0,1,0")).unwrap(), 4);
        assert_eq!(width(&hv("0,0,2,0,0")).unwrap(), 4);
        assert_eq!(width_formula(&hv("0,2,1,1,0")).unwrap(), 3);
        assert_eq!(width_formula(&hv("0,1,0,1,0,0,0")).unwrap(), 4);
    }

    #[test]
    fn zero_vector_conventions() {
        let z = HVector::zero(5);
        assert_eq!(init_number(&z).unwrap(), 0);
        assert_eq!(width(&z).unwrap(), 5);
        assert_eq!(width_formula(&z).unwrap(), 5);
    }
}
