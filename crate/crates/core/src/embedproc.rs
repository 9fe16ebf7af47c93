//! Constructive embedding procedures: orbital-type classification, the
//! commutator mechanism, chain splitting, extraction of the two-generator
//! group with its recognition certificate, and improvement of finite
//! exemplary towers to certified iterated wreath products.
//!
//! Every "sufficiently high power" step of the underlying arguments becomes
//! a verified escalation loop: try a power, check the claimed postcondition
//! exactly, double on failure, and give up loudly (with the accumulated
//! trace) at the configured cap. A driver never returns an unverified pair.

use crate::builders::{bcert_check, BCertificate, FamilyLabel, FamilyMember, GeneratorFamily};
use crate::dynamics::{
    direction_on, fixed_set_in, group_support, orbital_containing, orbitals_of, realizes_end,
    spanning_element, support_hull, Consistency, Direction, DynamicsError, Interval, SignedOrbital,
};
use crate::plmap::PLMap;
use crate::rational::{rat, Rational};
use crate::structures::{efficiency_powers_capped, find_transition_chain2, StructureError, Tower};
use crate::word::enumerate_ball_words;
use serde::{Deserialize, Serialize};

/// The six realization patterns of a two-generator group orbital. `First`
/// refers to the first element of the pair, `Second` to the second;
/// `Consistent`/`Inconsistent` name an element realizing both ends, and an
/// element absent from the name realizes neither end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitalType {
    #[serde(rename = "AB")]
    BothConsistent,
    #[serde(rename = "Ab")]
    FirstConsistent,
    #[serde(rename = "aB")]
    SecondConsistent,
    #[serde(rename = "aabb")]
    BothInconsistent,
    #[serde(rename = "aab")]
    FirstInconsistent,
    #[serde(rename = "abb")]
    SecondInconsistent,
}

impl OrbitalType {
    pub fn is_inconsistent(&self) -> bool {
        matches!(
            self,
            OrbitalType::BothInconsistent
                | OrbitalType::FirstInconsistent
                | OrbitalType::SecondInconsistent
        )
    }
}

/// Orbital census of a two-generator group, sorted left to right.
pub type Census = Vec<(Interval, OrbitalType)>;

/// One verified stage of a pipeline run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub label: String,
    pub powers: Vec<i64>,
    pub census_before: Census,
    pub census_after: Census,
}

/// Audit trail of a pipeline: the stages actually executed, with the powers
/// chosen and the censuses they transformed.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub stages: Vec<StageRecord>,
}

impl PipelineTrace {
    fn push(&mut self, label: &str, powers: Vec<i64>, before: Census, after: Census) {
        self.stages.push(StageRecord {
            label: label.to_string(),
            powers,
            census_before: before,
            census_after: after,
        });
    }

    fn extend(&mut self, other: PipelineTrace) {
        self.stages.extend(other.stages);
    }
}

/// Budgets for the verified escalation loops.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbedConfig {
    /// Cumulative cap on any escalated power.
    pub max_power: u64,
    /// Cap on normalization stages.
    pub max_stages: usize,
    /// Word-length budget for spanning searches.
    pub spanning_word_len: usize,
    /// Ball radius for conjugate fallback searches.
    pub ball_radius: usize,
    /// Ball radius for the transition-chain precondition.
    pub chain_radius: usize,
    /// Cap for mutual-efficiency power searches.
    pub efficiency_cap: u64,
    /// Iteration cap for the tower improvement loop.
    pub tower_iterations: usize,
    /// Ball radius for tower harvesting.
    pub tower_radius: usize,
    /// Ball element budget.
    pub element_cap: Option<usize>,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig {
            max_power: 1 << 20,
            max_stages: 12,
            spanning_word_len: 8,
            ball_radius: 3,
            chain_radius: 2,
            efficiency_cap: 64,
            tower_iterations: 64,
            tower_radius: 5,
            element_cap: Some(100_000),
        }
    }
}

/// Errors from the embedding pipelines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbedError {
    #[error("no inconsistent orbital to work on")]
    NoInconsistentOrbital,
    #[error("escalation budget exceeded after {} recorded stages", trace.stages.len())]
    BudgetExceeded { trace: PipelineTrace },
    #[error("search budget exhausted without a verified witness")]
    SearchExhausted,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("the given tower is not exemplary")]
    NotExemplary,
    #[error("stage verification failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Components of the fixed set of `g` strictly inside the open interval
/// `z`; end-touching components are excluded.
fn interior_fixed_components(g: &PLMap, z: &Interval) -> Vec<(Rational, Rational)> {
    fixed_set_in(g, z)
        .components()
        .iter()
        .filter(|(lo, hi)| lo > z.left() && hi < z.right())
        .cloned()
        .collect()
}

/// Closed hull of the interior fixed set of `g` in `z`.
fn interior_fix_hull(g: &PLMap, z: &Interval) -> Option<(Rational, Rational)> {
    let comps = interior_fixed_components(g, z);
    let first = comps.first()?;
    let last = comps.last()?;
    Some((first.0.clone(), last.1.clone()))
}

/// Orbitals of `g` overlapping the open interval `z`.
fn orbitals_in(g: &PLMap, z: &Interval) -> Vec<Interval> {
    orbitals_of(g)
        .into_iter()
        .filter(|o| o.overlaps(z))
        .collect()
}

/// Orbital of `g` strictly containing the closed span `[lo, hi]`.
fn orbital_over(g: &PLMap, lo: &Rational, hi: &Rational) -> Option<Interval> {
    orbitals_of(g)
        .into_iter()
        .find(|o| o.contains_closed(lo, hi))
}

/// Least `n ≥ 1` with `gⁿ` carrying `[x, y]` at least onto its own end:
/// `gⁿ(x) ≥ y` for right-movers on the hosting orbital, mirrored for
/// left-movers. The non-strict comparison matches the open-support
/// fundamental-domain convention.
fn nonstrict_clearing(
    g: &PLMap,
    host: &Interval,
    x: &Rational,
    y: &Rational,
    cap: u64,
) -> Result<u64, EmbedError> {
    let dir = direction_on(g, host)?;
    let cleared = |n: u64| -> bool {
        let gp = g.power(n as i64);
        match dir {
            Direction::Right => gp.apply(x) >= *y,
            Direction::Left => gp.apply(y) <= *x,
        }
    };
    let mut hi = 1u64;
    while !cleared(hi) {
        hi *= 2;
        if hi > cap {
            return Err(EmbedError::BudgetExceeded {
                trace: PipelineTrace::default(),
            });
        }
    }
    let mut lo = hi / 2 + 1;
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

/// Classifies each component of the support of `⟨a, b⟩` into one of the six
/// realization types, from the end realizations and edge slopes of `a` and
/// `b` on it.
pub fn classify_orbital_types(a: &PLMap, b: &PLMap) -> Result<Census, EmbedError> {
    let mut census = Vec::new();
    for z in group_support(&[a.clone(), b.clone()]) {
        let ca = crate::dynamics::realization_consistency(a, &z);
        let cb = crate::dynamics::realization_consistency(b, &z);
        let kind = match (ca, cb) {
            (Consistency::Consistent, Consistency::Consistent) => OrbitalType::BothConsistent,
            (Consistency::Consistent, Consistency::NotBothEnds) => OrbitalType::FirstConsistent,
            (Consistency::NotBothEnds, Consistency::Consistent) => OrbitalType::SecondConsistent,
            (Consistency::Inconsistent, Consistency::Inconsistent) => OrbitalType::BothInconsistent,
            (Consistency::Inconsistent, Consistency::NotBothEnds) => OrbitalType::FirstInconsistent,
            (Consistency::NotBothEnds, Consistency::Inconsistent) => {
                OrbitalType::SecondInconsistent
            }
            (ca, cb) => {
                return Err(EmbedError::CheckFailed(format!(
                    "orbital {z} has mixed realization ({ca:?}, {cb:?}): group is not balanced"
                )))
            }
        };
        census.push((z, kind));
    }
    Ok(census)
}

fn census_is_normalized(census: &Census) -> bool {
    !census.is_empty()
        && census.iter().all(|(_, t)| {
            matches!(
                t,
                OrbitalType::FirstConsistent | OrbitalType::FirstInconsistent
            )
        })
        && census
            .iter()
            .any(|(_, t)| *t == OrbitalType::FirstInconsistent)
}

/// Clearing data for a family of closed spans, each of which must sit
/// inside a single orbital of the mover; returns the largest per-orbital
/// hull clearing power (strict version).
fn clearing_power_for_spans(
    mover: &PLMap,
    spans: &[(Rational, Rational)],
    cap: u64,
) -> Result<u64, EmbedError> {
    use std::collections::BTreeMap;
    let mut hulls: BTreeMap<Interval, (Rational, Rational)> = BTreeMap::new();
    for (lo, hi) in spans {
        let host = orbital_over(mover, lo, hi).ok_or_else(|| {
            EmbedError::CheckFailed(format!(
                "span [{}, {}] is not inside a single orbital of the mover",
                crate::rational::format_rational(lo),
                crate::rational::format_rational(hi)
            ))
        })?;
        hulls
            .entry(host)
            .and_modify(|(l, h)| {
                if *lo < *l {
                    *l = lo.clone();
                }
                if *hi > *h {
                    *h = hi.clone();
                }
            })
            .or_insert_with(|| (lo.clone(), hi.clone()));
    }
    let mut worst = 0u64;
    for (host, (lo, hi)) in &hulls {
        let dir = direction_on(mover, host)?;
        let cleared = |n: u64| -> bool {
            let gp = mover.power(n as i64);
            match dir {
                Direction::Right => gp.apply(lo) > *hi,
                Direction::Left => gp.apply(hi) < *lo,
            }
        };
        let mut hi_pow = 1u64;
        while !cleared(hi_pow) {
            hi_pow *= 2;
            if hi_pow > cap {
                return Err(EmbedError::BudgetExceeded {
                    trace: PipelineTrace::default(),
                });
            }
        }
        let mut lo_pow = hi_pow / 2 + 1;
        while lo_pow < hi_pow {
            let mid = lo_pow + (hi_pow - lo_pow) / 2;
            if cleared(mid) {
                hi_pow = mid;
            } else {
                lo_pow = mid + 1;
            }
        }
        worst = worst.max(hi_pow);
    }
    Ok(worst)
}

/// One application of the commutator mechanism: computes the clearing
/// powers demanded by the fixed sets and supports of the current census,
/// forms `b' = [a^j, b^k]`, spot-verifies that the fixed set of `a` in the
/// inconsistent orbitals landed inside the support of `b'`, and escalates
/// on failure.
pub fn mechanism_step(
    a: &PLMap,
    b: &PLMap,
    config: &EmbedConfig,
) -> Result<(PLMap, u64, u64), EmbedError> {
    let census = classify_orbital_types(a, b)?;
    if !census.iter().any(|(_, t)| t.is_inconsistent()) {
        return Err(EmbedError::NoInconsistentOrbital);
    }

    // fixed set of `a` in both-inconsistent and first-inconsistent
    // orbitals, plus the interior components in second-inconsistent ones
    let mut fix_a: Vec<(Rational, Rational)> = Vec::new();
    let mut fix_a_primary: Vec<(Rational, Rational)> = Vec::new();
    let mut fix_b: Vec<(Rational, Rational)> = Vec::new();
    let mut second_consistent_hulls: Vec<(Rational, Rational)> = Vec::new();
    for (z, t) in &census {
        match t {
            OrbitalType::BothInconsistent | OrbitalType::FirstInconsistent => {
                let comps = interior_fixed_components(a, z);
                fix_a.extend(comps.clone());
                fix_a_primary.extend(comps);
            }
            OrbitalType::SecondInconsistent => {
                fix_a.extend(interior_fixed_components(a, z));
                fix_b.extend(interior_fixed_components(b, z));
            }
            OrbitalType::SecondConsistent => {
                if let Some(hull) = crate::structures::support_hull_in(a, z) {
                    second_consistent_hulls.push(hull);
                }
            }
            _ => {}
        }
    }

    let n1 = if fix_a.is_empty() {
        0
    } else {
        clearing_power_for_spans(b, &fix_a, config.max_power)?
    };
    let n2 = if second_consistent_hulls.is_empty() {
        0
    } else {
        clearing_power_for_spans(b, &second_consistent_hulls, config.max_power)?
    };
    let m = if fix_b.is_empty() {
        0
    } else {
        clearing_power_for_spans(a, &fix_b, config.max_power)?
    };
    let base_j = m.max(1);
    let base_k = n1.max(n2).max(1);

    let mut factor = 1u64;
    loop {
        let j = base_j * factor;
        let k = base_k * factor;
        if j > config.max_power || k > config.max_power {
            return Err(EmbedError::BudgetExceeded {
                trace: PipelineTrace::default(),
            });
        }
        let candidate = a.power(j as i64).commutator(&b.power(k as i64));
        let verified = fix_a_primary
            .iter()
            .all(|(lo, hi)| orbital_over(&candidate, lo, hi).is_some());
        if verified {
            return Ok((candidate, j, k));
        }
        factor *= 2;
    }
}

/// Iterates the mechanism with the fixed sign schedule (three plain steps,
/// one inverted, two plain, repeating) until the census consists of
/// first-consistent orbitals plus at least one first-inconsistent orbital.
pub fn normalize_orbital_types(
    a: &PLMap,
    b: &PLMap,
    config: &EmbedConfig,
) -> Result<(PLMap, PLMap, PipelineTrace), EmbedError> {
    const SIGNS: [i64; 6] = [1, 1, 1, -1, 1, 1];
    let mut trace = PipelineTrace::default();
    let mut current = b.clone();
    for stage in 0..config.max_stages {
        let census = classify_orbital_types(a, &current)?;
        if census_is_normalized(&census) {
            return Ok((a.clone(), current, trace));
        }
        let sign = SIGNS[stage % SIGNS.len()];
        let base = if sign < 0 { a.inverse() } else { a.clone() };
        let (next, j, k) = mechanism_step(&base, &current, config)?;
        let after = classify_orbital_types(a, &next)?;
        trace.push("mechanism", vec![sign * j as i64, k as i64], census, after);
        current = next;
    }
    Err(EmbedError::BudgetExceeded { trace })
}

/// True iff some single orbital of `gamma`, lying inside `z`, strictly
/// contains the interior fixed set of `a` in `z`.
fn spans_fixed_set(gamma: &PLMap, a: &PLMap, z: &Interval) -> bool {
    match interior_fix_hull(a, z) {
        None => true,
        Some((lo, hi)) => orbitals_of(gamma)
            .iter()
            .any(|o| z.contains(o) && o.contains_closed(&lo, &hi)),
    }
}

/// Finds a conjugate of `b` in `⟨a, b⟩` with a single orbital inside `z`
/// containing the whole interior fixed set of `a` in `z`.
///
/// Tries `b` itself, then the transitivity construction (a spanning word
/// `θ`, a power of `a` dragging an orbital of `b` below the pulled-back
/// start, and conjugation by `θ`), then falls back to a shortlex ball
/// search over conjugators. The postcondition is checked exactly on every
/// candidate.
pub fn spanning_conjugate(
    a: &PLMap,
    b: &PLMap,
    z: &Interval,
    config: &EmbedConfig,
) -> Result<PLMap, EmbedError> {
    let (fix_lo, fix_hi) = match interior_fix_hull(a, z) {
        None => return Ok(b.clone()),
        Some(h) => h,
    };
    if spans_fixed_set(b, a, z) {
        return Ok(b.clone());
    }

    if let Some(candidate) = spanning_via_transitivity(a, b, z, &fix_lo, &fix_hi, config) {
        return Ok(candidate);
    }

    // fallback: conjugators from the ball, in shortlex order
    let gens = [a.clone(), b.clone()];
    if config.ball_radius > 0 {
        let ball = enumerate_ball_words(&gens, config.ball_radius, config.element_cap)
            .map_err(|_| EmbedError::SearchExhausted)?;
        for (w, _) in ball {
            let candidate = b.conjugate(&w);
            if spans_fixed_set(&candidate, a, z) {
                return Ok(candidate);
            }
        }
    }
    Err(EmbedError::SearchExhausted)
}

fn spanning_via_transitivity(
    a: &PLMap,
    b: &PLMap,
    z: &Interval,
    fix_lo: &Rational,
    fix_hi: &Rational,
    config: &EmbedConfig,
) -> Option<PLMap> {
    let gens = [a.clone(), b.clone()];
    let (_, theta) = spanning_element(&gens, z, fix_lo, fix_hi, config.spanning_word_len).ok()?;
    // x1 < fix_lo with x1·θ still past fix_hi, pulled back exactly
    let image = theta.apply(fix_lo);
    let mid = (fix_hi + &image) / rat(2, 1);
    let theta_inv = theta.inverse();
    let x1 = theta_inv.apply(&mid);
    let z_pt = theta_inv.apply(&x1);

    let host = orbital_containing(b, fix_lo)?;
    let r = host.left().clone();
    let s = host.right().clone();
    let k: i64 = if r < z_pt {
        0
    } else {
        let o = orbital_containing(a, &r)?;
        if *o.left() >= z_pt {
            return None;
        }
        let dir = direction_on(a, &o).ok()?;
        let sign: i64 = match dir {
            Direction::Left => 1,
            Direction::Right => -1,
        };
        let mut p = 1u64;
        loop {
            if p > config.max_power {
                return None;
            }
            if a.power(sign * p as i64).apply(&r) < z_pt {
                break sign * p as i64;
            }
            p *= 2;
        }
    };
    if a.power(k).apply(&s) <= *fix_lo {
        return None;
    }
    let candidate = b.conjugate(&a.power(k)).conjugate(&theta);
    spans_fixed_set(&candidate, a, z).then_some(candidate)
}

/// Escalates signed powers `±1, ±2, ±4, …` of `conjugator` applied to
/// `base` until `accept` passes, preferring the sign given first.
fn escalate_conjugation<F: Fn(&PLMap) -> bool>(
    base: &PLMap,
    conjugator: &PLMap,
    first_sign: i64,
    cap: u64,
    accept: F,
) -> Option<(PLMap, i64)> {
    let mut p = 1u64;
    while p <= cap {
        for sign in [first_sign, -first_sign] {
            let power = sign * p as i64;
            let candidate = base.conjugate(&conjugator.power(power));
            if accept(&candidate) {
                return Some((candidate, power));
            }
        }
        p *= 2;
    }
    None
}

/// The chain-splitting pipeline: orients `a`, spans the fixed sets of the
/// oriented generator in every inconsistent orbital with a single conjugate
/// of `b` per class, aligns them, and corrects with powers so that each
/// inconsistent orbital is covered by a three-orbital interlocked pattern
/// (one orbital of the new `b` bridging the leading and trailing orbitals
/// of the new `a`). The four output properties are verified exactly.
pub fn chain_split(
    a: &PLMap,
    b: &PLMap,
    config: &EmbedConfig,
) -> Result<(PLMap, PLMap, PipelineTrace), EmbedError> {
    let mut trace = PipelineTrace::default();
    let census = classify_orbital_types(a, b)?;
    for (z, _) in &census {
        let r = realizes_end(b, z);
        if r.left || r.right {
            return Err(EmbedError::PreconditionFailed(format!(
                "second generator realizes an end of the orbital {z}"
            )));
        }
    }
    let inconsistent: Vec<Interval> = census
        .iter()
        .filter(|(_, t)| t.is_inconsistent())
        .map(|(z, _)| z.clone())
        .collect();
    if inconsistent.is_empty() {
        return Err(EmbedError::NoInconsistentOrbital);
    }

    // orient: the oriented generator moves points left on its leading
    // orbital inside the first inconsistent orbital
    let designated = inconsistent[0].clone();
    let leading = leading_orbital(a, &designated)
        .ok_or_else(|| EmbedError::CheckFailed("no leading orbital in designated".into()))?;
    let a1 = match direction_on(a, &leading)? {
        Direction::Left => a.clone(),
        Direction::Right => a.inverse(),
    };
    let flipped = a1 != *a;
    trace.push(
        "orient",
        vec![if flipped { -1 } else { 1 }],
        census.clone(),
        census.clone(),
    );

    // partition the inconsistent orbitals by the lead direction of a1
    let mut left_led: Vec<Interval> = Vec::new();
    let mut right_led: Vec<Interval> = Vec::new();
    for z in &inconsistent {
        let lead = leading_orbital(&a1, z)
            .ok_or_else(|| EmbedError::CheckFailed(format!("no leading orbital in {z}")))?;
        match direction_on(&a1, &lead)? {
            Direction::Left => left_led.push(z.clone()),
            Direction::Right => right_led.push(z.clone()),
        }
    }

    let (rho, _) = build_spanning_element(&a1, b, &left_led, -1, config)?;
    let psi = if right_led.is_empty() {
        None
    } else {
        Some(build_spanning_element(&a1, b, &right_led, 1, config)?.0)
    };

    // power corrections between the two spanning elements
    let b1 = match &psi {
        None => rho.clone(),
        Some(psi_el) => {
            let (rho2, p) = correct_rho(&a1, &rho, psi_el, &left_led, &right_led, config)?;
            let (b1, q) = correct_with_psi(&a1, &rho2, psi_el, &left_led, &right_led, config)?;
            trace.push("power-correct", vec![p, q], census.clone(), census.clone());
            b1
        }
    };

    verify_chain_split(&a1, &b1, &designated)?;
    let after = classify_orbital_types(&a1, &b1)?;
    trace.push("split-verified", vec![], census, after);
    Ok((a1, b1, trace))
}

fn leading_orbital(g: &PLMap, z: &Interval) -> Option<Interval> {
    orbitals_of(g).into_iter().find(|o| o.left() == z.left())
}

fn trailing_orbital(g: &PLMap, z: &Interval) -> Option<Interval> {
    orbitals_of(g)
        .into_iter()
        .rev()
        .find(|o| o.right() == z.right())
}

/// Builds one element spanning the interior fixed set of `a1` in each of
/// the given orbitals, by the inductive conjugate-and-merge procedure.
/// `compress_sign` is the power sign of `a1` that compresses supports
/// toward the interior fixed sets on these orbitals.
fn build_spanning_element(
    a1: &PLMap,
    b: &PLMap,
    orbitals: &[Interval],
    compress_sign: i64,
    config: &EmbedConfig,
) -> Result<(PLMap, Vec<Interval>), EmbedError> {
    if orbitals.is_empty() {
        return Ok((PLMap::identity(), Vec::new()));
    }
    let mut gammas: Vec<PLMap> = Vec::new();
    for z in orbitals {
        gammas.push(spanning_conjugate(a1, b, z, config)?);
    }
    let span_of = |g: &PLMap, z: &Interval| -> Result<Interval, EmbedError> {
        let (lo, hi) = match interior_fix_hull(a1, z) {
            Some(h) => h,
            None => {
                return Err(EmbedError::CheckFailed(format!(
                    "no interior fixed set of the oriented generator in {z}"
                )))
            }
        };
        orbitals_of(g)
            .into_iter()
            .find(|o| z.contains(o) && o.contains_closed(&lo, &hi))
            .ok_or_else(|| EmbedError::CheckFailed(format!("lost the spanning orbital in {z}")))
    };

    // alignment: conjugate each later element so its orbitals inside every
    // earlier class orbital sit strictly inside the earlier spanning orbital
    for i in 1..gammas.len() {
        let aligned = {
            let earlier_spans: Vec<(Interval, Interval)> = (0..i)
                .map(|j| Ok((orbitals[j].clone(), span_of(&gammas[j], &orbitals[j])?)))
                .collect::<Result<_, EmbedError>>()?;
            let ok = |g: &PLMap| -> bool {
                earlier_spans.iter().all(|(z, span)| {
                    orbitals_in(g, z)
                        .iter()
                        .all(|o| span.contains_closed(o.left(), o.right()))
                }) && span_of(g, &orbitals[i]).is_ok()
            };
            if ok(&gammas[i]) {
                gammas[i].clone()
            } else {
                let mut p = 1u64;
                loop {
                    if p > config.max_power {
                        return Err(EmbedError::BudgetExceeded {
                            trace: PipelineTrace::default(),
                        });
                    }
                    let candidate = gammas[i].conjugate(&a1.power(compress_sign * p as i64));
                    if ok(&candidate) {
                        break candidate;
                    }
                    p *= 2;
                }
            }
        };
        gammas[i] = aligned;
    }

    // merge: fold the aligned conjugates into one element whose spanning
    // orbitals survive in every class orbital
    let mut rho = gammas[0].clone();
    let mut spans: Vec<Interval> = vec![span_of(&rho, &orbitals[0])?];
    let mut k = 1;
    let mut resplits = 0u32;
    while k < gammas.len() {
        let keeps_spans = |candidate: &PLMap| -> bool {
            spans.iter().all(|s| orbitals_of(candidate).contains(s))
                && span_of(candidate, &orbitals[k]).is_ok()
        };
        if keeps_spans(&rho) {
            // the running element already spans this class
            spans.push(span_of(&rho, &orbitals[k])?);
            k += 1;
            continue;
        }
        let d_k = span_of(&gammas[k], &orbitals[k])?;
        let rho_orbitals = orbitals_of(&rho);
        let has_end_of_dk = rho_orbitals
            .iter()
            .any(|o| o.contains_point(d_k.left()) || o.contains_point(d_k.right()));
        let shares_end_of_dk = rho_orbitals
            .iter()
            .any(|o| d_k.contains(o) && (o.left() == d_k.left() || o.right() == d_k.right()));
        if !has_end_of_dk && shares_end_of_dk {
            // an orbital of the running element ends exactly at an end of
            // the current spanning orbital; compress the remaining
            // conjugates further until the tie breaks one way or the other
            resplits += 1;
            if resplits > 32 {
                return Err(EmbedError::BudgetExceeded {
                    trace: PipelineTrace::default(),
                });
            }
            let shift = a1.power(compress_sign * (1 << resplits.min(20)));
            for gamma in gammas.iter_mut().skip(k) {
                *gamma = gamma.conjugate(&shift);
            }
            continue;
        }
        let accept = |candidate: &PLMap| -> bool {
            // keeps all earlier spans and spans the current class
            spans.iter().all(|s| orbitals_of(candidate).contains(s))
                && span_of(candidate, &orbitals[k]).is_ok()
        };
        let next = if has_end_of_dk {
            match escalate_conjugation(&rho, &gammas[k], 1, config.max_power, accept) {
                Some((next, _)) => next,
                None => {
                    return Err(EmbedError::BudgetExceeded {
                        trace: PipelineTrace::default(),
                    })
                }
            }
        } else {
            let product = rho.compose(&gammas[k]);
            if accept(&product) {
                product
            } else {
                match escalate_conjugation(&rho, &gammas[k], 1, config.max_power, accept) {
                    Some((next, _)) => next,
                    None => {
                        return Err(EmbedError::BudgetExceeded {
                            trace: PipelineTrace::default(),
                        })
                    }
                }
            }
        };
        rho = next;
        spans.push(span_of(&rho, &orbitals[k])?);
        k += 1;
    }
    Ok((rho, spans))
}

/// Conjugates `rho` by a positive power of `a1` until the orbitals of
/// `psi` in each left-led orbital sit inside the grown spanning orbitals
/// of `rho`, and the orbitals of `rho` in each right-led orbital sit
/// inside the spanning orbitals of `psi`.
fn correct_rho(
    a1: &PLMap,
    rho: &PLMap,
    psi: &PLMap,
    left_led: &[Interval],
    right_led: &[Interval],
    config: &EmbedConfig,
) -> Result<(PLMap, i64), EmbedError> {
    let ok = |candidate: &PLMap| -> bool {
        for z in left_led {
            let span = match orbitals_of(candidate)
                .into_iter()
                .find(|o| z.contains(o) && spans_hull(a1, z, o))
            {
                Some(s) => s,
                None => return false,
            };
            if !orbitals_in(psi, z)
                .iter()
                .all(|o| span.contains_closed(o.left(), o.right()))
            {
                return false;
            }
        }
        for z in right_led {
            let span = match orbitals_of(psi)
                .into_iter()
                .find(|o| z.contains(o) && spans_hull(a1, z, o))
            {
                Some(s) => s,
                None => return false,
            };
            if !orbitals_in(candidate, z)
                .iter()
                .all(|o| span.contains_closed(o.left(), o.right()))
            {
                return false;
            }
        }
        true
    };
    if ok(rho) {
        return Ok((rho.clone(), 0));
    }
    let mut p = 1u64;
    while p <= config.max_power {
        let candidate = rho.conjugate(&a1.power(p as i64));
        if ok(&candidate) {
            return Ok((candidate, p as i64));
        }
        p *= 2;
    }
    Err(EmbedError::BudgetExceeded {
        trace: PipelineTrace::default(),
    })
}

fn spans_hull(a1: &PLMap, z: &Interval, o: &Interval) -> bool {
    match interior_fix_hull(a1, z) {
        Some((lo, hi)) => o.contains_closed(&lo, &hi),
        None => false,
    }
}

/// Conjugates `rho` by a power of `psi` so that its orbitals leave the
/// fixed set of `a1` in every right-led orbital, without disturbing its
/// spanning orbitals in the left-led ones.
fn correct_with_psi(
    a1: &PLMap,
    rho: &PLMap,
    psi: &PLMap,
    left_led: &[Interval],
    right_led: &[Interval],
    config: &EmbedConfig,
) -> Result<(PLMap, i64), EmbedError> {
    let ok = |candidate: &PLMap| -> bool {
        for z in right_led {
            let fixed = interior_fixed_components(a1, z);
            for o in orbitals_in(candidate, z) {
                for (lo, hi) in &fixed {
                    if o.left() < hi && lo < o.right() {
                        return false;
                    }
                }
            }
        }
        left_led.iter().all(|z| {
            orbitals_of(candidate)
                .iter()
                .any(|o| z.contains(o) && spans_hull(a1, z, o))
        })
    };
    if ok(rho) {
        return Ok((rho.clone(), 0));
    }
    match escalate_conjugation(rho, psi, 1, config.max_power, ok) {
        Some((b1, q)) => Ok((b1, q)),
        None => Err(EmbedError::BudgetExceeded {
            trace: PipelineTrace::default(),
        }),
    }
}

/// Checks the four output properties of the chain-splitting pipeline.
fn verify_chain_split(a1: &PLMap, b1: &PLMap, designated: &Interval) -> Result<(), EmbedError> {
    let census = classify_orbital_types(a1, b1)?;
    if !census
        .iter()
        .any(|(z, t)| z == designated && t.is_inconsistent())
    {
        return Err(EmbedError::CheckFailed(
            "designated orbital lost or no longer inconsistent".into(),
        ));
    }
    for (z, t) in &census {
        let r = realizes_end(b1, z);
        if r.left || r.right {
            return Err(EmbedError::CheckFailed(format!(
                "output second generator realizes an end of {z}"
            )));
        }
        if !t.is_inconsistent() {
            continue;
        }
        // interlocked three-orbital cover: a1-leading, b1-bridge, a1-trailing
        let lead = leading_orbital(a1, z)
            .ok_or_else(|| EmbedError::CheckFailed(format!("no leading orbital in {z}")))?;
        let trail = trailing_orbital(a1, z)
            .ok_or_else(|| EmbedError::CheckFailed(format!("no trailing orbital in {z}")))?;
        let c = lead.right();
        let d = trail.left();
        let bridged = orbitals_of(b1)
            .into_iter()
            .any(|m| z.left() < m.left() && m.left() < c && d < m.right() && m.right() < z.right());
        if !bridged {
            return Err(EmbedError::CheckFailed(format!(
                "no bridging orbital of the second generator in {z}"
            )));
        }
        if direction_on(a1, &lead)? != Direction::Left {
            return Err(EmbedError::CheckFailed(format!(
                "oriented generator does not lead left in {z}"
            )));
        }
    }
    Ok(())
}

/// Result of the full extraction pipeline: the two generators, the passing
/// recognition certificate, and the audit trail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BExtraction {
    /// The conjugating generator (the stable letter of the pair).
    pub conjugator: PLMap,
    /// The bump generator whose conjugates form the wreath levels.
    pub base: PLMap,
    pub certificate: BCertificate,
    pub trace: PipelineTrace,
}

/// Full extraction driver: normalization, chain splitting, the cleanup
/// commutator confining the second generator to the inconsistent orbitals,
/// and the final powers yielding a pair whose recognition certificate
/// passes. The certificate is re-verified before returning.
pub fn extract_b(a: &PLMap, b: &PLMap, config: &EmbedConfig) -> Result<BExtraction, EmbedError> {
    if find_transition_chain2(&[a.clone(), b.clone()], config.chain_radius).is_none() {
        return Err(EmbedError::PreconditionFailed(format!(
            "no transition chain of length two within radius {}",
            config.chain_radius
        )));
    }
    let mut trace = PipelineTrace::default();
    let (a, b, t) = normalize_orbital_types(a, b, config)?;
    trace.extend(t);
    let (a1, b1, t) = chain_split(&a, &b, config)?;
    trace.extend(t);

    let census = classify_orbital_types(&a1, &b1)?;
    let inconsistent: Vec<Interval> = census
        .iter()
        .filter(|(_, t)| t.is_inconsistent())
        .map(|(z, _)| z.clone())
        .collect();
    let consistent: Vec<Interval> = census
        .iter()
        .filter(|(_, t)| !t.is_inconsistent())
        .map(|(z, _)| z.clone())
        .collect();

    // cleanup: confine the second generator to the inconsistent orbitals
    let (b2, n, mpow) = cleanup_consistent_support(&a1, &b1, &inconsistent, &consistent, config)?;
    let after = classify_orbital_types(&a1, &b2)?;
    trace.push(
        "cleanup",
        vec![n as i64, mpow as i64],
        census,
        after.clone(),
    );

    // final powers: conjugate once to span, then power the bump until its
    // support clears inside the conjugate
    let (stable, base, j, k) = final_powers(&a1, &b2, &inconsistent, config)?;
    let cert = bcert_check(&base, &stable);
    if !cert.cleared || !cert.verify() {
        return Err(EmbedError::BudgetExceeded { trace });
    }
    let final_census = classify_orbital_types(&stable, &base)?;
    trace.push("extract", vec![k as i64, j as i64], after, final_census);
    Ok(BExtraction {
        conjugator: stable,
        base,
        certificate: cert,
        trace,
    })
}

/// The cleanup commutator: finds `n` carrying the support of `b1` in each
/// inconsistent orbital inside the spanning orbital of `b1^{a1^n}` (and off
/// its own support in the consistent orbitals), then `m` clearing that
/// support within the conjugate, and verifies that
/// `[b1^m, (b1^m)^{a1^n}]` spans every fixed set and has no support left in
/// the consistent orbitals.
fn cleanup_consistent_support(
    a1: &PLMap,
    b1: &PLMap,
    inconsistent: &[Interval],
    consistent: &[Interval],
    config: &EmbedConfig,
) -> Result<(PLMap, u64, u64), EmbedError> {
    let mut n = 1u64;
    'outer: loop {
        if n > config.max_power {
            return Err(EmbedError::BudgetExceeded {
                trace: PipelineTrace::default(),
            });
        }
        let conj = b1.conjugate(&a1.power(n as i64));
        // (i) support hull of b1 in each inconsistent orbital sits inside
        // the spanning orbital of the conjugate
        let mut hosts: Vec<(Interval, (Rational, Rational))> = Vec::new();
        for z in inconsistent {
            let hull = match crate::structures::support_hull_in(b1, z) {
                Some(h) => h,
                None => continue,
            };
            let span = orbitals_of(&conj).into_iter().find(|o| {
                z.contains(o) && spans_hull(a1, z, o) && o.contains_closed(&hull.0, &hull.1)
            });
            match span {
                Some(s) => hosts.push((s, hull)),
                None => {
                    n *= 2;
                    continue 'outer;
                }
            }
        }
        // (ii) in consistent orbitals the conjugate's support is disjoint
        // from the original's
        for y in consistent {
            for o in orbitals_in(b1, y) {
                for oc in orbitals_in(&conj, y) {
                    if o.overlaps(&oc) {
                        n *= 2;
                        continue 'outer;
                    }
                }
            }
        }
        // m: clear each hull within its spanning orbital of the conjugate
        let mut m = 1u64;
        for (host, (lo, hi)) in &hosts {
            m = m.max(nonstrict_clearing(&conj, host, lo, hi, config.max_power)?);
        }
        let bm = b1.power(m as i64);
        let candidate = bm.commutator(&bm.conjugate(&a1.power(n as i64)));
        // verify: single spanning orbital per inconsistent orbital, and no
        // support outside them
        let spans_all = inconsistent
            .iter()
            .all(|z| spans_fixed_set(&candidate, a1, z));
        let confined = orbitals_of(&candidate)
            .iter()
            .all(|o| inconsistent.iter().any(|z| z.contains(o)));
        if spans_all && confined && !candidate.is_identity() {
            return Ok((candidate, n, m));
        }
        n *= 2;
    }
}

/// Final stage: replace the conjugating generator by the power whose
/// conjugate spans every cleaned support hull, then power the bump so the
/// hull clears within each orbital of the conjugate.
fn final_powers(
    a1: &PLMap,
    b2: &PLMap,
    inconsistent: &[Interval],
    config: &EmbedConfig,
) -> Result<(PLMap, PLMap, u64, u64), EmbedError> {
    let mut k = 1u64;
    let conj = loop {
        if k > config.max_power {
            return Err(EmbedError::BudgetExceeded {
                trace: PipelineTrace::default(),
            });
        }
        let conj = b2.conjugate(&a1.power(k as i64));
        let ok = inconsistent
            .iter()
            .all(|z| match crate::structures::support_hull_in(b2, z) {
                None => true,
                Some((lo, hi)) => orbitals_of(&conj).into_iter().any(|o| {
                    z.contains(&o) && spans_hull(a1, z, &o) && o.contains_closed(&lo, &hi)
                }),
            });
        if ok {
            break conj;
        }
        k *= 2;
    };
    let stable = a1.power(k as i64);

    // clear the support of b2 within each orbital of the conjugate it meets
    let mut j = 1u64;
    for host in orbitals_of(&conj) {
        if let Some((lo, hi)) = crate::structures::support_hull_in(b2, &host) {
            if !host.contains_closed(&lo, &hi) {
                return Err(EmbedError::CheckFailed(
                    "cleaned support leaks out of the conjugate's orbital".into(),
                ));
            }
            j = j.max(nonstrict_clearing(
                &conj,
                &host,
                &lo,
                &hi,
                config.max_power,
            )?);
        }
    }
    Ok((stable, b2.power(j as i64), j, k))
}

/// Improves an exemplary tower into certified wreath-product generators:
/// bottom-to-top signatures whose adjacent hull-clearing checks all pass.
/// Pairs whose hull already sits in a single orbital of the level above are
/// fixed by powering the upper level; pairs spread across several orbitals
/// are filtered through the double commutator (after raising to mutually
/// efficient powers), which keeps exactly the properly nested orbitals.
pub fn tower_to_wn(
    tower: &Tower,
    config: &EmbedConfig,
) -> Result<(GeneratorFamily, PipelineTrace), EmbedError> {
    if tower.height() == 0 {
        return Err(EmbedError::PreconditionFailed("empty tower".into()));
    }
    if !tower.is_exemplary() {
        return Err(EmbedError::NotExemplary);
    }
    let mut trace = PipelineTrace::default();
    let orbital_of_level: Vec<Interval> = tower
        .entries()
        .iter()
        .map(|e| e.orbital().clone())
        .collect();
    let mut levels: Vec<PLMap> = tower
        .entries()
        .iter()
        .map(|e| e.signature().clone())
        .collect();

    for _ in 0..config.tower_iterations {
        let failing = (0..levels.len().saturating_sub(1))
            .find(|&i| !crate::structures::hull_cleared(&levels[i], &levels[i + 1]));
        let i = match failing {
            None => {
                let family = build_wn_family(&levels);
                if !family.all_certs_valid() {
                    return Err(EmbedError::CheckFailed(
                        "certificate invalid after improvement".into(),
                    ));
                }
                return Ok((family, trace));
            }
            Some(i) => i,
        };
        let lower = levels[i].clone();
        let upper = levels[i + 1].clone();
        let hull = support_hull(&lower)
            .ok_or_else(|| EmbedError::CheckFailed("trivial signature inside the tower".into()))?;
        if let Some(host) = orbital_over(&upper, &hull.0, &hull.1) {
            // single-orbital case: power the upper level
            let m = nonstrict_clearing(&upper, &host, &hull.0, &hull.1, config.max_power)?;
            levels[i + 1] = upper.power(m as i64);
            trace.push(
                "power-upper",
                vec![(i + 1) as i64, m as i64],
                vec![],
                vec![],
            );
        } else {
            // spread case: double-commutator filter keeps the properly
            // nested orbitals and drops shared or external ones
            let (pa, pb) = efficiency_powers_capped(&lower, &upper, config.efficiency_cap)?;
            let filtered = lower
                .power(pa as i64)
                .double_commutator(&upper.power(pb as i64));
            if filtered.is_identity() {
                return Err(EmbedError::CheckFailed(
                    "double-commutator filter annihilated a level".into(),
                ));
            }
            if !orbitals_of(&filtered).contains(&orbital_of_level[i]) {
                return Err(EmbedError::CheckFailed(
                    "tower orbital lost by the double-commutator filter".into(),
                ));
            }
            // progress: the new support must be confined to orbitals of the
            // upper level that properly contain orbitals of the old lower
            let ok_confined = orbitals_of(&filtered).iter().all(|o| {
                orbitals_of(&upper)
                    .iter()
                    .any(|u| u.properly_contains_closure(o))
            });
            if !ok_confined || filtered == lower {
                return Err(EmbedError::BudgetExceeded { trace });
            }
            levels[i] = filtered;
            trace.push(
                "dc-filter",
                vec![i as i64, pa as i64, pb as i64],
                vec![],
                vec![],
            );
        }
    }
    Err(EmbedError::BudgetExceeded { trace })
}

fn build_wn_family(levels: &[PLMap]) -> GeneratorFamily {
    let members: Vec<FamilyMember> = levels
        .iter()
        .enumerate()
        .map(|(k, map)| FamilyMember {
            index: vec![k as i64],
            map: map.clone(),
        })
        .collect();
    let ids: Vec<usize> = (0..members.len()).collect();
    let cert = crate::builders::WreathCert::compute(levels.to_vec());
    GeneratorFamily {
        label: FamilyLabel::Wn,
        members,
        blocks: vec![crate::builders::FamilyBlock { members: ids, cert }],
        blocks_disjoint: true,
    }
}

/// Outcome of the best-effort search for disjoint certified wreath
/// families. Notes record every bounded-search failure; certificates are
/// never fabricated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WWitnessReport {
    pub families: Vec<GeneratorFamily>,
    pub requested: usize,
    pub notes: Vec<String>,
}

impl WWitnessReport {
    pub fn verify(&self) -> bool {
        if !self.families.iter().all(|f| f.verify()) {
            return false;
        }
        for (i, fi) in self.families.iter().enumerate() {
            for fj in self.families.iter().skip(i + 1) {
                for mi in &fi.members {
                    for mj in &fj.members {
                        if !crate::dynamics::supports_disjoint(&mi.map, &mj.map) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Best-effort construction of support-disjoint certified families of
/// heights `m, m−1, …, 1` inside the group generated by `gens`: harvest
/// towers from the ball (preferring elements clear of the supports already
/// used), rescue by conjugating whole towers with powers of a depth-one
/// element when one exists, and improve each tower through the
/// wreath-certificate pipeline.
pub fn w_witness(
    gens: &[PLMap],
    max_height: usize,
    config: &EmbedConfig,
) -> Result<WWitnessReport, EmbedError> {
    let mut report = WWitnessReport {
        families: Vec::new(),
        requested: max_height,
        notes: Vec::new(),
    };
    let ball = enumerate_ball_words(gens, config.tower_radius, config.element_cap)
        .map_err(|e| EmbedError::PreconditionFailed(e.to_string()))?;
    let support = group_support(gens);
    if support.is_empty() {
        report.notes.push("generators act trivially".to_string());
        return Ok(report);
    }
    // a depth-one element realizes a whole support component as an orbital
    let depth_one = ball
        .iter()
        .find(|(e, _)| !e.is_identity() && orbitals_of(e).iter().any(|o| support.contains(o)));

    let mut used: Vec<Interval> = Vec::new();
    for k in (1..=max_height).rev() {
        let eligible: Vec<(PLMap, crate::word::Word)> = ball
            .iter()
            .filter(|(e, _)| {
                !e.is_identity()
                    && orbitals_of(e)
                        .iter()
                        .all(|o| used.iter().all(|u| !o.overlaps(u)))
            })
            .cloned()
            .collect();
        let mut found = best_chain(&eligible, k);
        if found.is_none() {
            if let Some((d, _)) = depth_one {
                found = rescue_by_conjugation(&ball, d, k, &used, config);
            }
        }
        let entries = match found {
            Some(e) => e,
            None => {
                report.notes.push(format!(
                    "no support-disjoint tower of height {k} within radius {}",
                    config.tower_radius
                ));
                continue;
            }
        };
        let tower = Tower::new(entries).map_err(EmbedError::Structure)?;
        match tower_to_wn(&tower, config) {
            Ok((family, _)) => {
                for m in &family.members {
                    used.extend(orbitals_of(&m.map));
                }
                report.families.push(family);
            }
            Err(e) => report
                .notes
                .push(format!("tower of height {k} failed improvement: {e}")),
        }
    }
    report.families.reverse();
    Ok(report)
}

/// Longest exemplary chain among the given elements, truncated to `target`
/// entries from the bottom; `None` when no nonempty chain of height
/// `target` exists.
fn best_chain(
    elements: &[(PLMap, crate::word::Word)],
    target: usize,
) -> Option<Vec<SignedOrbital>> {
    let mut nodes: Vec<(Interval, usize)> = Vec::new();
    let mut elems: Vec<(PLMap, Vec<Interval>)> = Vec::new();
    for (e, _) in elements {
        let orbs = orbitals_of(e);
        let ei = elems.len();
        for o in &orbs {
            nodes.push((o.clone(), ei));
        }
        elems.push((e.clone(), orbs));
    }
    if nodes.is_empty() {
        return None;
    }
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&i, &j| {
        let wi = nodes[i].0.right() - nodes[i].0.left();
        let wj = nodes[j].0.right() - nodes[j].0.left();
        wi.cmp(&wj)
            .then_with(|| nodes[i].0.left().cmp(nodes[j].0.left()))
            .then_with(|| i.cmp(&j))
    });
    let edge = |lo: usize, hi: usize| -> bool {
        let (a, ei) = &nodes[lo];
        let (b, _) = &nodes[hi];
        if a == b || !b.contains(a) {
            return false;
        }
        for o in &elems[*ei].1 {
            if o.contains_point(b.left())
                || o.contains_point(b.right())
                || o.left() == b.left()
                || o.right() == b.right()
            {
                return false;
            }
        }
        true
    };
    let n = nodes.len();
    let mut best_len = vec![1usize; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for oi in 0..n {
        let j = order[oi];
        for &i in order[..oi].iter() {
            if edge(i, j) && best_len[i] + 1 > best_len[j] {
                best_len[j] = best_len[i] + 1;
                pred[j] = Some(i);
            }
        }
    }
    let mut end = 0usize;
    for i in 1..n {
        if best_len[i] > best_len[end] {
            end = i;
        }
    }
    if best_len[end] < target {
        return None;
    }
    let mut chain = Vec::new();
    let mut cur = Some(end);
    while let Some(i) = cur {
        chain.push(i);
        cur = pred[i];
    }
    chain.reverse();
    chain.truncate(target);
    let entries: Vec<SignedOrbital> = chain
        .iter()
        .map(|&i| {
            SignedOrbital::new(nodes[i].0.clone(), elems[nodes[i].1].0.clone())
                .expect("own orbital")
        })
        .collect();
    crate::structures::is_exemplary(&entries).then_some(entries)
}

/// Conjugates the best unfiltered tower of height `k` by escalating powers
/// of `d` until every signature's support avoids the used intervals.
fn rescue_by_conjugation(
    ball: &[(PLMap, crate::word::Word)],
    d: &PLMap,
    k: usize,
    used: &[Interval],
    config: &EmbedConfig,
) -> Option<Vec<SignedOrbital>> {
    let entries = best_chain(ball, k)?;
    let clear = |entries: &[SignedOrbital]| -> bool {
        entries.iter().all(|so| {
            orbitals_of(so.signature())
                .iter()
                .all(|o| used.iter().all(|u| !o.overlaps(u)))
        })
    };
    if clear(&entries) {
        return Some(entries);
    }
    let mut p = 1u64;
    while p <= config.max_power {
        for sign in [1i64, -1] {
            let conj = crate::structures::conjugate_tower(&entries, &d.power(sign * p as i64));
            if clear(&conj) && crate::structures::is_exemplary(&conj) {
                return Some(conj);
            }
        }
        p *= 2;
    }
    None
}
