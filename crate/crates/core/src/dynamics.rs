//! Supports, orbitals, fixed sets, fundamental domains, realization
//! predicates, and transitivity searches for piecewise-linear maps.
//!
//! The support of `g` is the open set of points it moves; its connected
//! components are the *orbitals* of `g`. On each orbital `g` moves every
//! point the same way, left or right. Everything here is computed exactly
//! by solving `xg = x` piece by piece.

use crate::plmap::PLMap;
use crate::rational::{self, format_rational, one, parse_rational, rat, zero, Rational};
use crate::word::{alphabet, extend_word, Word};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// An open rational interval `(left, right)` inside `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    left: Rational,
    right: Rational,
}

impl Interval {
    /// Requires `0 <= left < right <= 1`.
    pub fn new(left: Rational, right: Rational) -> Result<Self, DynamicsError> {
        if left >= right
            || !rational::in_unit_interval(&left)
            || !rational::in_unit_interval(&right)
        {
            return Err(DynamicsError::BadInterval);
        }
        Ok(Interval { left, right })
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn midpoint(&self) -> Rational {
        (&self.left + &self.right) / rat(2, 1)
    }

    /// Strict membership in the open interval.
    pub fn contains_point(&self, x: &Rational) -> bool {
        self.left < *x && *x < self.right
    }

    /// Interval inclusion `other ⊆ self` (ends may coincide).
    pub fn contains(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    /// Closure inclusion: `[other.left, other.right] ⊂ (self.left, self.right)`.
    pub fn properly_contains_closure(&self, other: &Interval) -> bool {
        self.left < other.left && other.right < self.right
    }

    /// Whether the closed hull `[lo, hi]` lies strictly inside this interval.
    pub fn contains_closed(&self, lo: &Rational, hi: &Rational) -> bool {
        self.left < *lo && *hi < self.right
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.left < other.right && other.left < self.right
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            format_rational(&self.left),
            format_rational(&self.right)
        )
    }
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    left: String,
    right: String,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawInterval {
            left: format_rational(&self.left),
            right: format_rational(&self.right),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawInterval::deserialize(d)?;
        let left = parse_rational(&raw.left).map_err(serde::de::Error::custom)?;
        let right = parse_rational(&raw.right).map_err(serde::de::Error::custom)?;
        Interval::new(left, right).map_err(serde::de::Error::custom)
    }
}

/// Which way an element moves points on one of its orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Right,
    Left,
}

/// A finite union of disjoint closed intervals (points when degenerate),
/// sorted left to right. Fixed sets are clipped to the closure of the
/// queried interval; the all-fixed case over `(0,1)` is represented by the
/// single component `[0,1]`, read as `[0,1] ∩ (0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FixedSet {
    components: Vec<(Rational, Rational)>,
}

impl FixedSet {
    pub fn components(&self) -> &[(Rational, Rational)] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Smallest closed interval containing the set, if nonempty.
    pub fn hull(&self) -> Option<(Rational, Rational)> {
        if self.components.is_empty() {
            return None;
        }
        Some((
            self.components[0].0.clone(),
            self.components[self.components.len() - 1].1.clone(),
        ))
    }
}

impl Serialize for FixedSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<(String, String)> = self
            .components
            .iter()
            .map(|(a, b)| (format_rational(a), format_rational(b)))
            .collect();
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FixedSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(String, String)> = Vec::deserialize(d)?;
        let mut components = Vec::with_capacity(raw.len());
        for (a, b) in &raw {
            let lo = parse_rational(a).map_err(serde::de::Error::custom)?;
            let hi = parse_rational(b).map_err(serde::de::Error::custom)?;
            if lo > hi {
                return Err(serde::de::Error::custom("fixed-set component reversed"));
            }
            components.push((lo, hi));
        }
        Ok(FixedSet { components })
    }
}

/// A signed orbital `(A, g)`: an orbital `A` together with an element `g`
/// having `A` among its orbitals. The pairing is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedOrbital {
    orbital: Interval,
    signature: PLMap,
}

impl SignedOrbital {
    pub fn new(orbital: Interval, signature: PLMap) -> Result<Self, DynamicsError> {
        if !orbitals_of(&signature).contains(&orbital) {
            return Err(DynamicsError::NotAnOrbital);
        }
        Ok(SignedOrbital { orbital, signature })
    }

    pub fn orbital(&self) -> &Interval {
        &self.orbital
    }

    pub fn signature(&self) -> &PLMap {
        &self.signature
    }
}

#[derive(Serialize, Deserialize)]
struct RawSignedOrbital {
    orbital: Interval,
    signature: PLMap,
}

impl Serialize for SignedOrbital {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawSignedOrbital {
            orbital: self.orbital.clone(),
            signature: self.signature.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedOrbital {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawSignedOrbital::deserialize(d)?;
        SignedOrbital::new(raw.orbital, raw.signature).map_err(serde::de::Error::custom)
    }
}

/// Which ends of an interval an element realizes with its own orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndRealization {
    pub left: bool,
    pub right: bool,
}

/// How an element that realizes both ends of an interval sits on it:
/// inconsistently when its edge slopes are both above or both below one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Consistency {
    Consistent,
    Inconsistent,
    NotBothEnds,
}

/// A fundamental domain of an element in one of its orbitals: a maximal
/// subinterval mapped entirely off itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FundamentalDomain {
    /// `[a, b)`, anchored at `a`, for right-movers.
    ClosedOpen(Rational, Rational),
    /// `(a, b]`, anchored at `b`, for left-movers.
    OpenClosed(Rational, Rational),
}

/// Errors from the dynamics operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynamicsError {
    #[error("interval endpoints must satisfy 0 <= left < right <= 1")]
    BadInterval,
    #[error("the given interval is not an orbital of the element")]
    NotAnOrbital,
    #[error("point lies outside the given orbital")]
    PointOutside,
    #[error("the two points do not lie in a common orbital")]
    NoOrbital,
    #[error("points are ordered against the required direction")]
    WrongDirection,
    #[error("the identity element has no support")]
    IdentityInput,
    #[error("search budget exhausted; best point reached {}", format_rational(.best))]
    SearchExhausted { best: Rational },
}

/// Closed components of the fixed set of `g` in `[0,1]`, merged and sorted.
fn fixed_components(g: &PLMap) -> Vec<(Rational, Rational)> {
    let mut comps: Vec<(Rational, Rational)> = Vec::new();
    for (a, b) in g.segments() {
        let slope_num = &b.y - &a.y;
        let slope_den = &b.x - &a.x;
        // the segment is y = a.y + (x - a.x) * slope; fixed points solve
        // (slope_den - slope_num) * x = a.y*slope_den - a.x*slope_num
        let coeff = &slope_den - &slope_num;
        let rhs = &a.y * &slope_den - &a.x * &slope_num;
        if coeff == zero() {
            if rhs == zero() {
                comps.push((a.x.clone(), b.x.clone()));
            }
            continue;
        }
        let x_star = rhs / coeff;
        if a.x <= x_star && x_star <= b.x {
            comps.push((x_star.clone(), x_star));
        }
    }
    let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(comps.len());
    for (lo, hi) in comps {
        match merged.last_mut() {
            Some(last) if last.1 >= lo => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    merged
}

/// The maximal open intervals on which `xg ≠ x`, sorted left to right.
pub fn orbitals_of(g: &PLMap) -> Vec<Interval> {
    let fixed = fixed_components(g);
    // 0 and 1 are always fixed, so orbitals are exactly the gaps.
    let mut out = Vec::new();
    for w in fixed.windows(2) {
        let l = w[0].1.clone();
        let r = w[1].0.clone();
        debug_assert!(l < r);
        out.push(Interval { left: l, right: r });
    }
    out
}

/// The fixed set of `g` within the closure of `a`, clipped to `(0,1)`:
/// components are stored closed, and isolated fixed points at 0 or 1 fall
/// outside `(0,1)` and are dropped.
pub fn fixed_set_in(g: &PLMap, a: &Interval) -> FixedSet {
    let mut components = Vec::new();
    for (lo, hi) in fixed_components(g) {
        let l = if lo < a.left { a.left.clone() } else { lo };
        let r = if hi > a.right { a.right.clone() } else { hi };
        if l > r {
            continue;
        }
        if l == r && (l == zero() || l == one()) {
            continue;
        }
        components.push((l, r));
    }
    FixedSet { components }
}

/// Which way `g` moves points on its orbital `a`; decided at the midpoint.
pub fn direction_on(g: &PLMap, a: &Interval) -> Result<Direction, DynamicsError> {
    if !orbitals_of(g).contains(a) {
        return Err(DynamicsError::NotAnOrbital);
    }
    let m = a.midpoint();
    if g.apply(&m) > m {
        Ok(Direction::Right)
    } else {
        Ok(Direction::Left)
    }
}

/// Merges a collection of open intervals into the components of their union.
pub fn merge_components(mut intervals: Vec<Interval>) -> Vec<Interval> {
    intervals.sort();
    let mut out: Vec<Interval> = Vec::new();
    for iv in intervals {
        match out.last_mut() {
            // strict overlap required: touching open intervals stay separate
            Some(last) if iv.left < last.right => {
                if iv.right > last.right {
                    last.right = iv.right;
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

/// Components of the union of the generators' supports. Supports of
/// products stay inside this union, so this is the support of the whole
/// generated group.
pub fn group_support(gens: &[PLMap]) -> Vec<Interval> {
    let mut all = Vec::new();
    for g in gens {
        all.extend(orbitals_of(g));
    }
    merge_components(all)
}

/// The orbital `Ah` of `g^h` induced from an orbital `A` of `g` by `h`.
pub fn induced_orbital(a: &Interval, h: &PLMap) -> Interval {
    Interval {
        left: h.apply(&a.left),
        right: h.apply(&a.right),
    }
}

/// Whether `g` has an orbital sharing the left (right) end of `a`.
pub fn realizes_end(g: &PLMap, a: &Interval) -> EndRealization {
    let mut left = false;
    let mut right = false;
    for o in orbitals_of(g) {
        if o.left == a.left {
            left = true;
        }
        if o.right == a.right {
            right = true;
        }
    }
    EndRealization { left, right }
}

/// Classifies the realization of `a` by `g` from the slopes of the leftmost
/// and rightmost affine components of `g` meeting `a`: inconsistent when
/// both are above one or both below one.
pub fn realization_consistency(g: &PLMap, a: &Interval) -> Consistency {
    let ends = realizes_end(g, a);
    if !ends.left || !ends.right {
        return Consistency::NotBothEnds;
    }
    let s_l = g.slope_right_of(&a.left);
    let s_r = g.slope_left_of(&a.right);
    let unit = one();
    if (s_l > unit && s_r > unit) || (s_l < unit && s_r < unit) {
        Consistency::Inconsistent
    } else {
        Consistency::Consistent
    }
}

/// The fundamental domain of `g` in its orbital `a` anchored at `x`:
/// `[x, xg)` for right-movers, `(xg, x]` for left-movers.
pub fn fundamental_domain_at(
    g: &PLMap,
    a: &Interval,
    x: &Rational,
) -> Result<FundamentalDomain, DynamicsError> {
    let dir = direction_on(g, a)?;
    if !a.contains_point(x) {
        return Err(DynamicsError::PointOutside);
    }
    let image = g.apply(x);
    Ok(match dir {
        Direction::Right => FundamentalDomain::ClosedOpen(x.clone(), image),
        Direction::Left => FundamentalDomain::OpenClosed(image, x.clone()),
    })
}

/// The orbital of `g` containing `x` strictly, if any.
pub fn orbital_containing(g: &PLMap, x: &Rational) -> Option<Interval> {
    orbitals_of(g).into_iter().find(|o| o.contains_point(x))
}

/// Closed hull `[inf, sup]` of the support of `g`, `None` for the identity.
pub fn support_hull(g: &PLMap) -> Option<(Rational, Rational)> {
    let obs = orbitals_of(g);
    let first = obs.first()?;
    let last = obs.last()?;
    Some((first.left.clone(), last.right.clone()))
}

/// Whether the supports of `a` and `b` are disjoint.
pub fn supports_disjoint(a: &PLMap, b: &PLMap) -> bool {
    let oa = orbitals_of(a);
    let ob = orbitals_of(b);
    for x in &oa {
        for y in &ob {
            if x.overlaps(y) {
                return false;
            }
        }
    }
    true
}

/// Least `n ≥ 1` clearing `[x, y]` past itself under `g`: for right-movers
/// `x·gⁿ > y` (strictly), mirrored to `y·gⁿ < x` for left-movers. Found by
/// doubling then binary search on exact evaluations.
pub fn min_clearing_power(g: &PLMap, x: &Rational, y: &Rational) -> Result<u64, DynamicsError> {
    if x > y {
        return Err(DynamicsError::WrongDirection);
    }
    let a = orbital_containing(g, x).ok_or(DynamicsError::NoOrbital)?;
    if !a.contains_point(y) {
        return Err(DynamicsError::NoOrbital);
    }
    let dir = direction_on(g, &a).expect("orbital of g");
    let cleared = |n: u64| -> bool {
        let gp = g.power(n as i64);
        match dir {
            Direction::Right => gp.apply(x) > *y,
            Direction::Left => gp.apply(y) < *x,
        }
    };
    let mut hi = 1u64;
    while !cleared(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2 + 1;
    // invariant: lo <= answer <= hi
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if cleared(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(hi)
}

/// Checks that the closed hull of the support of `lower` lies inside a
/// single orbital of `upper` and is carried past itself by one application
/// of `upper` (non-strictly: `x·upper ≥ y` for right-movers, mirrored for
/// left-movers). Supports are open, so equality at the hull endpoint still
/// places the support inside one fundamental domain, and this boundary
/// convention is load-bearing for every certificate built on top.
pub fn hull_cleared_by(lower: &PLMap, upper: &PLMap) -> Result<bool, DynamicsError> {
    if lower.is_identity() {
        return Err(DynamicsError::IdentityInput);
    }
    let (x, y) = support_hull(lower).expect("non-identity support");
    let host = orbitals_of(upper)
        .into_iter()
        .find(|o| o.contains_closed(&x, &y));
    let host = match host {
        Some(h) => h,
        None => return Ok(false),
    };
    let dir = direction_on(upper, &host).expect("orbital of upper");
    Ok(match dir {
        Direction::Right => upper.apply(&x) >= y,
        Direction::Left => upper.apply(&y) <= x,
    })
}

/// Shortlex-first word `θ` over the generators with `x·θ > y`, together
/// with its realization. The search enumerates freely reduced words of
/// length at most `max_len` in shortlex order (generators in the given
/// order, each before its inverse), so the witness is deterministic.
pub fn spanning_element(
    gens: &[PLMap],
    a: &Interval,
    x: &Rational,
    y: &Rational,
    max_len: usize,
) -> Result<(Word, PLMap), DynamicsError> {
    if x >= y {
        return Err(DynamicsError::WrongDirection);
    }
    if !a.contains_point(x) || !a.contains_point(y) {
        return Err(DynamicsError::PointOutside);
    }
    if !group_support(gens).contains(a) {
        return Err(DynamicsError::NotAnOrbital);
    }
    let letters = alphabet(gens.len());
    let mut letter_maps = Vec::with_capacity(letters.len());
    for l in &letters {
        letter_maps.push(if l.inverse {
            gens[l.gen].inverse()
        } else {
            gens[l.gen].clone()
        });
    }

    let mut best = x.clone();
    let mut frontier: Vec<(Word, Option<usize>, Rational)> = vec![(Word::empty(), None, x.clone())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (word, last, point) in &frontier {
            for (idx, l) in letters.iter().enumerate() {
                if let Some(prev) = last {
                    if letters[*prev].cancels(l) {
                        continue;
                    }
                }
                let moved = letter_maps[idx].apply(point);
                let w = extend_word(word, l);
                if moved > *y {
                    return Ok((w.clone(), w.realize(gens)));
                }
                if moved > best {
                    best = moved.clone();
                }
                next.push((w, Some(idx), moved));
            }
        }
        frontier = next;
    }
    Err(DynamicsError::SearchExhausted { best })
}
