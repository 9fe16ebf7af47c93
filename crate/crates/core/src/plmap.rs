//! Canonical breakpoint representation of orientation-preserving
//! piecewise-linear homeomorphisms of `[0,1]`, with exact group arithmetic.
//!
//! A [`PLMap`] stores the ordered breakpoints of its graph, first `(0,0)`,
//! last `(1,1)`, both coordinate sequences strictly increasing, and no three
//! consecutive breakpoints collinear. The canonical form is the sole basis
//! of equality and hashing, which keeps word deduplication sound.
//!
//! All actions are right actions and compositions read left to right:
//! `compose(g, h)` sends `x` to `(x·g)·h`.

use crate::rational::{self, format_rational, one, parse_rational, zero, Rational};
use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A vertex of the graph of a [`PLMap`]; both coordinates lie in `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Breakpoint {
    pub x: Rational,
    pub y: Rational,
}

impl Breakpoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Breakpoint { x, y }
    }
}

/// Errors from constructing or evaluating a [`PLMap`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PLMapError {
    /// The breakpoint list does not start at `(0,0)` and end at `(1,1)`.
    #[error("breakpoint list must start at (0,0) and end at (1,1)")]
    EndpointError,
    /// A coordinate sequence is not strictly increasing.
    #[error("breakpoint coordinates must be strictly increasing in x and y")]
    MonotonicityError,
    /// An evaluation point lies outside `[0,1]`.
    #[error("evaluation point outside [0,1]")]
    DomainError,
}

/// An element of the group of orientation-preserving piecewise-linear
/// homeomorphisms of `[0,1]` with finitely many slope breaks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    points: Vec<Breakpoint>,
}

impl PLMap {
    /// Builds the canonical map through the given points.
    ///
    /// Collinear interior points are merged. Fails with
    /// [`PLMapError::EndpointError`] if the list does not run from `(0,0)`
    /// to `(1,1)`, and with [`PLMapError::MonotonicityError`] if either
    /// coordinate sequence fails to increase strictly.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self, PLMapError> {
        if points.len() < 2 {
            return Err(PLMapError::EndpointError);
        }
        let first = &points[0];
        let last = &points[points.len() - 1];
        if first.0 != zero() || first.1 != zero() || last.0 != one() || last.1 != one() {
            return Err(PLMapError::EndpointError);
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(PLMapError::MonotonicityError);
            }
        }
        let bps = points
            .into_iter()
            .map(|(x, y)| Breakpoint::new(x, y))
            .collect();
        Ok(PLMap {
            points: canonicalize(bps),
        })
    }

    /// The identity map, two breakpoints.
    pub fn identity() -> Self {
        PLMap {
            points: vec![
                Breakpoint::new(zero(), zero()),
                Breakpoint::new(one(), one()),
            ],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    /// The canonical breakpoint sequence, including `(0,0)` and `(1,1)`.
    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.points
    }

    /// Interior break x-coordinates, the points of `(0,1)` where the
    /// derivative is undefined.
    pub fn interior_breakpoints(&self) -> Vec<Rational> {
        self.points[1..self.points.len() - 1]
            .iter()
            .map(|p| p.x.clone())
            .collect()
    }

    /// Affine segments as consecutive breakpoint pairs.
    pub fn segments(&self) -> impl Iterator<Item = (&Breakpoint, &Breakpoint)> {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Exact image of `x`, failing outside `[0,1]`.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational, PLMapError> {
        if x.is_negative() || *x > one() {
            return Err(PLMapError::DomainError);
        }
        Ok(self.apply(x))
    }

    /// Exact image of `x`; the caller guarantees `0 <= x <= 1`.
    pub fn apply(&self, x: &Rational) -> Rational {
        debug_assert!(rational::in_unit_interval(x));
        let i = self.segment_index(x);
        let a = &self.points[i];
        if a.x == *x {
            return a.y.clone();
        }
        let b = &self.points[i + 1];
        // y = y_a + (x - x_a) * (y_b - y_a) / (x_b - x_a)
        &a.y + (x - &a.x) * (&b.y - &a.y) / (&b.x - &a.x)
    }

    /// Index of the segment `[x_i, x_{i+1}]` with `x_i <= x` (and
    /// `x < x_{i+1}` unless `x = 1`).
    fn segment_index(&self, x: &Rational) -> usize {
        let n = self.points.len();
        let count = self.points.partition_point(|p| p.x <= *x);
        count.clamp(1, n - 1) - 1
    }

    /// Slope of the affine segment starting at index `i`.
    pub fn segment_slope(&self, i: usize) -> Rational {
        let a = &self.points[i];
        let b = &self.points[i + 1];
        (&b.y - &a.y) / (&b.x - &a.x)
    }

    /// Slope immediately to the right of `x`; requires `x < 1`.
    pub fn slope_right_of(&self, x: &Rational) -> Rational {
        debug_assert!(*x < one());
        self.segment_slope(self.segment_index(x))
    }

    /// Slope immediately to the left of `x`; requires `x > 0`.
    pub fn slope_left_of(&self, x: &Rational) -> Rational {
        debug_assert!(*x > zero());
        let count = self.points.partition_point(|p| p.x < *x);
        self.segment_slope(count - 1)
    }

    /// Composition as right actions: the result sends `x` to `(x·self)·other`.
    ///
    /// Breakpoints of the result are drawn from the breaks of `self` together
    /// with the pullback of the breaks of `other` through `self`, then
    /// canonicalized, so growth stays additive.
    pub fn compose(&self, other: &PLMap) -> PLMap {
        let inv = self.inverse();
        let mut xs: Vec<Rational> = self.points.iter().map(|p| p.x.clone()).collect();
        xs.extend(other.points.iter().map(|p| inv.apply(&p.x)));
        xs.sort();
        xs.dedup();
        let bps = xs
            .into_iter()
            .map(|x| {
                let y = other.apply(&self.apply(&x));
                Breakpoint::new(x, y)
            })
            .collect();
        PLMap {
            points: canonicalize(bps),
        }
    }

    /// Group inverse; the breakpoints are the coordinate swaps of `self`.
    pub fn inverse(&self) -> PLMap {
        PLMap {
            points: self
                .points
                .iter()
                .map(|p| Breakpoint::new(p.y.clone(), p.x.clone()))
                .collect(),
        }
    }

    /// `n`-fold composition by repeated squaring; `power(g, 0)` is the
    /// identity and `power(g, -n) = inverse(power(g, n))`.
    pub fn power(&self, n: i64) -> PLMap {
        if n < 0 {
            self.inverse().power_u(n.unsigned_abs())
        } else {
            self.power_u(n as u64)
        }
    }

    fn power_u(&self, mut n: u64) -> PLMap {
        let mut acc = PLMap::identity();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// The conjugate `self^h = h⁻¹ · self · h`.
    pub fn conjugate(&self, h: &PLMap) -> PLMap {
        h.inverse().compose(self).compose(h)
    }

    /// The commutator `[self, h] = self⁻¹ h⁻¹ self h`.
    pub fn commutator(&self, h: &PLMap) -> PLMap {
        self.inverse()
            .compose(&h.inverse())
            .compose(self)
            .compose(h)
    }

    /// The double commutator `[[self, k], k]`.
    pub fn double_commutator(&self, k: &PLMap) -> PLMap {
        self.commutator(k).commutator(k)
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|p| format!("({},{})", format_rational(&p.x), format_rational(&p.y)))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Removes interior points where the adjacent segments share a slope.
/// The input must already be strictly increasing in both coordinates.
fn canonicalize(points: Vec<Breakpoint>) -> Vec<Breakpoint> {
    let mut out: Vec<Breakpoint> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    out
}

fn collinear(a: &Breakpoint, b: &Breakpoint, c: &Breakpoint) -> bool {
    (&b.y - &a.y) * (&c.x - &b.x) == (&c.y - &b.y) * (&b.x - &a.x)
}

#[derive(Serialize, Deserialize)]
struct RawPLMap {
    breakpoints: Vec<(String, String)>,
}

impl Serialize for PLMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawPLMap {
            breakpoints: self
                .points
                .iter()
                .map(|p| (format_rational(&p.x), format_rational(&p.y)))
                .collect(),
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PLMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPLMap::deserialize(d)?;
        let mut points = Vec::with_capacity(raw.breakpoints.len());
        for (xs, ys) in &raw.breakpoints {
            let x = parse_rational(xs).map_err(serde::de::Error::custom)?;
            let y = parse_rational(ys).map_err(serde::de::Error::custom)?;
            points.push((x, y));
        }
        PLMap::new(points).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pts(raw: &[(i64, i64, i64, i64)]) -> Vec<(Rational, Rational)> {
        raw.iter()
            .map(|(xn, xd, yn, yd)| (rat(*xn, *xd), rat(*yn, *yd)))
            .collect()
    }

    /// The six-point table of the left generator from the construction.
    pub(crate) fn alpha_table() -> PLMap {
        PLMap::new(pts(&[
            (0, 1, 0, 1),
            (1, 4, 1, 16),
            (7, 16, 1, 4),
            (9, 16, 3, 4),
            (3, 4, 15, 16),
            (1, 1, 1, 1),
        ]))
        .unwrap()
    }

    pub(crate) fn beta0_table() -> PLMap {
        PLMap::new(pts(&[
            (0, 1, 0, 1),
            (7, 16, 7, 16),
            (15, 32, 1, 2),
            (1, 2, 17, 32),
            (9, 16, 9, 16),
            (1, 1, 1, 1),
        ]))
        .unwrap()
    }

    pub(crate) fn beta1_table() -> PLMap {
        PLMap::new(pts(&[
            (0, 1, 0, 1),
            (1, 4, 1, 4),
            (3, 8, 1, 2),
            (1, 2, 5, 8),
            (3, 4, 3, 4),
            (1, 1, 1, 1),
        ]))
        .unwrap()
    }

    #[test]
    fn make_identity() {
        let id = PLMap::new(pts(&[(0, 1, 0, 1), (1, 1, 1, 1)])).unwrap();
        assert_eq!(id, PLMap::identity());
        assert_eq!(id.breakpoints().len(), 2);
    }

    #[test]
    fn collinear_points_merge() {
        let id = PLMap::new(pts(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 1, 1, 1)])).unwrap();
        assert_eq!(id, PLMap::identity());
        assert_eq!(id.breakpoints().len(), 2);
        let id2 = PLMap::new(pts(&[(0, 1, 0, 1), (1, 3, 1, 3), (1, 1, 1, 1)])).unwrap();
        assert_eq!(id2, PLMap::identity());
    }

    #[test]
    fn alpha_has_expected_breakpoints() {
        let a = alpha_table();
        assert_eq!(
            a.interior_breakpoints(),
            vec![rat(1, 4), rat(7, 16), rat(9, 16), rat(3, 4)]
        );
    }

    #[test]
    fn beta0_has_expected_breakpoints() {
        let b = beta0_table();
        assert_eq!(
            b.interior_breakpoints(),
            vec![rat(7, 16), rat(15, 32), rat(1, 2), rat(9, 16)]
        );
    }

    #[test]
    fn endpoint_errors() {
        assert_eq!(
            PLMap::new(pts(&[(0, 1, 0, 1), (1, 2, 1, 1)])),
            Err(PLMapError::EndpointError)
        );
        assert_eq!(
            PLMap::new(pts(&[(0, 1, 1, 16), (1, 1, 1, 1)])),
            Err(PLMapError::EndpointError)
        );
        assert_eq!(PLMap::new(vec![]), Err(PLMapError::EndpointError));
    }

    #[test]
    fn monotonicity_errors() {
        assert_eq!(
            PLMap::new(pts(&[
                (0, 1, 0, 1),
                (1, 2, 3, 4),
                (1, 4, 7, 8),
                (1, 1, 1, 1)
            ])),
            Err(PLMapError::MonotonicityError)
        );
        assert_eq!(
            PLMap::new(pts(&[
                (0, 1, 0, 1),
                (1, 4, 3, 4),
                (1, 2, 1, 2),
                (1, 1, 1, 1)
            ])),
            Err(PLMapError::MonotonicityError)
        );
        // duplicate x
        assert_eq!(
            PLMap::new(pts(&[
                (0, 1, 0, 1),
                (1, 2, 1, 4),
                (1, 2, 1, 3),
                (1, 1, 1, 1)
            ])),
            Err(PLMapError::MonotonicityError)
        );
    }

    #[test]
    fn evaluate_on_alpha_pieces() {
        let a = alpha_table();
        assert_eq!(a.evaluate(&rat(1, 8)).unwrap(), rat(1, 32));
        assert_eq!(a.evaluate(&rat(1, 2)).unwrap(), rat(1, 2));
        assert_eq!(a.evaluate(&rat(3, 4)).unwrap(), rat(15, 16));
        assert_eq!(a.evaluate(&rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(a.evaluate(&rat(1, 1)).unwrap(), rat(1, 1));
    }

    #[test]
    fn evaluate_on_beta0_pieces() {
        let b = beta0_table();
        assert_eq!(b.evaluate(&rat(15, 32)).unwrap(), rat(1, 2));
        assert_eq!(b.evaluate(&rat(1, 2)).unwrap(), rat(17, 32));
        assert_eq!(b.evaluate(&rat(1, 4)).unwrap(), rat(1, 4));
    }

    #[test]
    fn evaluate_outside_domain_fails() {
        let a = alpha_table();
        assert_eq!(a.evaluate(&rat(-1, 8)), Err(PLMapError::DomainError));
        assert_eq!(a.evaluate(&rat(9, 8)), Err(PLMapError::DomainError));
    }

    #[test]
    fn compose_with_identity() {
        let a = alpha_table();
        assert_eq!(a.compose(&PLMap::identity()), a);
        assert_eq!(PLMap::identity().compose(&a), a);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let a = alpha_table();
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
        let b = beta0_table();
        assert!(b.compose(&b.inverse()).is_identity());
    }

    #[test]
    fn compose_acts_left_to_right() {
        let a = alpha_table();
        let b = beta0_table();
        let ab = a.compose(&b);
        let x = rat(1, 2);
        assert_eq!(ab.apply(&x), b.apply(&a.apply(&x)));
    }

    #[test]
    fn conjugate_by_alpha_gives_beta1_table() {
        let a = alpha_table();
        let b0 = beta0_table();
        let b1 = b0.conjugate(&a);
        assert_eq!(b1, beta1_table());
        // and via explicit composition
        assert_eq!(a.inverse().compose(&b0).compose(&a), beta1_table());
    }

    #[test]
    fn inverse_properties() {
        let a = alpha_table();
        assert!(PLMap::identity().inverse().is_identity());
        assert_eq!(a.inverse().inverse(), a);
        assert_eq!(a.inverse().evaluate(&rat(1, 4)).unwrap(), rat(7, 16));
        let b = beta0_table();
        assert_eq!(b.inverse().inverse(), b);
    }

    #[test]
    fn power_laws() {
        let b0 = beta0_table();
        let b1 = beta1_table();
        assert!(b0.power(0).is_identity());
        assert_eq!(b0.power(-1), b0.inverse());
        assert_eq!(b0.power(3), b0.compose(&b0).compose(&b0));
        assert_eq!(b0.power(-2), b0.inverse().compose(&b0.inverse()));
        assert_eq!(b1.power(2).apply(&rat(7, 16)), rat(21, 32));
        let a = alpha_table();
        assert_eq!(a.power(-1), a.inverse());
    }

    #[test]
    fn commutator_trivial_cases() {
        let b = beta0_table();
        assert!(b.commutator(&b).is_identity());
        assert!(b.commutator(&PLMap::identity()).is_identity());
        assert!(PLMap::identity().commutator(&b).is_identity());
        assert!(b.double_commutator(&PLMap::identity()).is_identity());
    }

    #[test]
    fn conjugate_trivial_cases() {
        let b = beta0_table();
        assert_eq!(b.conjugate(&PLMap::identity()), b);
    }

    #[test]
    fn equality_is_extensional() {
        let a = alpha_table();
        let b = beta0_table();
        assert_ne!(a, b);
        let rebuilt = PLMap::new(
            a.breakpoints()
                .iter()
                .map(|p| (p.x.clone(), p.y.clone()))
                .collect(),
        )
        .unwrap();
        assert_eq!(rebuilt, a);
    }

    #[test]
    fn identity_has_no_interior_breakpoints() {
        assert!(PLMap::identity().interior_breakpoints().is_empty());
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let a = alpha_table();
        let s1 = serde_json::to_string(&a).unwrap();
        let back: PLMap = serde_json::from_str(&s1).unwrap();
        assert_eq!(back, a);
        let s2 = serde_json::to_string(&back).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn json_deserialize_recanonicalizes_and_revalidates() {
        // collinear interior point collapses on read
        let j = r#"{"breakpoints":[["0/1","0/1"],["1/2","1/2"],["1/1","1/1"]]}"#;
        let m: PLMap = serde_json::from_str(j).unwrap();
        assert!(m.is_identity());
        // non-monotone rejected
        let bad = r#"{"breakpoints":[["0/1","0/1"],["3/4","1/4"],["1/2","1/2"],["1/1","1/1"]]}"#;
        assert!(serde_json::from_str::<PLMap>(bad).is_err());
        // bad endpoints rejected
        let bad2 = r#"{"breakpoints":[["0/1","1/16"],["1/1","1/1"]]}"#;
        assert!(serde_json::from_str::<PLMap>(bad2).is_err());
    }

    #[test]
    fn slope_queries() {
        let a = alpha_table();
        assert_eq!(a.slope_right_of(&rat(0, 1)), rat(1, 4));
        assert_eq!(a.slope_left_of(&rat(1, 1)), rat(1, 4));
        assert_eq!(a.slope_right_of(&rat(7, 16)), rat(4, 1));
        assert_eq!(a.slope_left_of(&rat(7, 16)), rat(1, 1));
        assert_eq!(a.slope_right_of(&rat(1, 2)), rat(4, 1));
    }
}
