//! Bounded word-ball enumeration and whole-group reports: orbital census,
//! transition chains, towers, depth lower bounds, and imbalance witnesses.
//!
//! Depth is only ever reported as a lower bound: the true depth of a group
//! may be infinite and is not decidable by finite search, so every absence
//! in a report is a bounded-search absence, never a claim about the group.

use crate::dynamics::{group_support, orbitals_of, Interval, SignedOrbital};
use crate::plmap::PLMap;
use crate::structures::{
    find_transition_chain2, imbalance_witness_search, is_exemplary, ImbalanceWitness, Tower,
    TransitionChainWitness,
};
use crate::word::{enumerate_ball_words, BallBudgetExceeded, Word};
use serde::{Deserialize, Serialize};

/// All distinct elements of the radius ball with their shortlex-least
/// words, in shortlex order.
pub fn enumerate_ball(
    gens: &[PLMap],
    radius: usize,
    cap: Option<usize>,
) -> Result<Vec<(PLMap, Word)>, BallBudgetExceeded> {
    enumerate_ball_words(gens, radius, cap)
}

/// A tower found by search, with the provenance words of its signatures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerWitness {
    pub tower: Tower,
    pub words: Vec<Word>,
}

/// Longest chain of signed element-orbitals of the ball under strict
/// orbital inclusion, as an exemplary tower.
///
/// The inclusion DAG carries an edge only where the lower signature's
/// orbitals also avoid the ends of the upper orbital, the chain found is
/// then fully re-verified for exemplarity (trimming offenders if needed),
/// and ties are broken by shortlex signature word, then leftmost orbital.
/// The result is truncated to at most `target_height` entries from the
/// bottom.
pub fn tower_search(
    gens: &[PLMap],
    radius: usize,
    target_height: usize,
    cap: Option<usize>,
) -> Result<Option<TowerWitness>, BallBudgetExceeded> {
    let ball = enumerate_ball_words(gens, radius, cap)?;
    // nodes in ball order: elements shortlex, orbitals left to right
    let mut nodes: Vec<(Interval, usize)> = Vec::new();
    let mut elements: Vec<(PLMap, Word, Vec<Interval>)> = Vec::new();
    for (elem, word) in ball {
        if elem.is_identity() {
            continue;
        }
        let orbs = orbitals_of(&elem);
        let ei = elements.len();
        for o in &orbs {
            nodes.push((o.clone(), ei));
        }
        elements.push((elem, word, orbs));
    }
    if nodes.is_empty() {
        return Ok(None);
    }

    // topological order by interval width; strict inclusion only ever goes
    // from narrower to wider
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&i, &j| {
        let (ai, _) = &nodes[i];
        let (aj, _) = &nodes[j];
        let wi = ai.right() - ai.left();
        let wj = aj.right() - aj.left();
        wi.cmp(&wj)
            .then_with(|| ai.left().cmp(aj.left()))
            .then_with(|| i.cmp(&j))
    });

    let edge = |lo: usize, hi: usize| -> bool {
        let (a, ei) = &nodes[lo];
        let (b, _) = &nodes[hi];
        if a == b || !b.contains(a) {
            return false;
        }
        // pairwise exemplarity for (lower signature, upper orbital)
        for o in &elements[*ei].2 {
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
    for oi in 0..order.len() {
        let j = order[oi];
        for &i in order[..oi].iter() {
            if edge(i, j) {
                let cand = best_len[i] + 1;
                let better =
                    cand > best_len[j] || (cand == best_len[j] && pred[j].is_some_and(|p| i < p));
                if better {
                    best_len[j] = cand;
                    pred[j] = Some(i);
                }
            }
        }
    }

    let mut end = 0usize;
    for i in 1..n {
        if best_len[i] > best_len[end] {
            end = i;
        }
    }
    let mut chain_nodes = Vec::new();
    let mut cur = Some(end);
    while let Some(i) = cur {
        chain_nodes.push(i);
        cur = pred[i];
    }
    chain_nodes.reverse();

    let mut entries = Vec::new();
    let mut words = Vec::new();
    for &i in &chain_nodes {
        let (orbital, ei) = &nodes[i];
        let (elem, word, _) = &elements[*ei];
        entries.push(SignedOrbital::new(orbital.clone(), elem.clone()).expect("own orbital"));
        words.push(word.clone());
    }

    // the edge filter checks consecutive pairs only; verify the whole chain
    // and trim the lower offender of the first bad pair
    while !is_exemplary(&entries) && entries.len() > 1 {
        let mut removed = false;
        'scan: for i in 0..entries.len() {
            for j in (i + 1)..entries.len() {
                if !is_exemplary(&[entries[i].clone(), entries[j].clone()]) {
                    entries.remove(i);
                    words.remove(i);
                    removed = true;
                    break 'scan;
                }
            }
        }
        if !removed {
            break;
        }
    }
    entries.truncate(target_height);
    words.truncate(target_height);
    let tower = Tower::new(entries).expect("chain is a tower");
    Ok(Some(TowerWitness { tower, words }))
}

/// Search budgets and thresholds for [`analyze`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzerConfig {
    pub radius: usize,
    pub target_height: usize,
    /// Ball element budget; exceeding it aborts with an error.
    pub element_cap: Option<usize>,
    /// How many leading ball elements feed the commutator sampling.
    pub derived_sample_elements: usize,
    /// Report a non-solvability witness when the tower height exceeds this.
    pub nonsolvable_threshold: Option<usize>,
}

impl Default for AnalyzerConfig {
    fn default() -> Self {
        AnalyzerConfig {
            radius: 3,
            target_height: 8,
            element_cap: Some(100_000),
            derived_sample_elements: 12,
            nonsolvable_threshold: None,
        }
    }
}

/// Finite-scale consistency of the derived series: sampled commutators of
/// ball elements must never reproduce a depth-one group orbital (commutator
/// germs at a group-fixed end are trivial, since all elements are affine
/// near that end).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedSeriesCheck {
    pub sampled_pairs: usize,
    pub depth_one_orbitals: Vec<Interval>,
    pub violations: usize,
}

/// Aggregate report of the bounded searches. Every embedded witness
/// re-verifies against its checker, and every absence is labelled as an
/// absence at the searched radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub radius: usize,
    pub element_count: usize,
    pub group_orbitals: Vec<Interval>,
    pub transition_chain: Option<TransitionChainWitness>,
    pub transition_chain_note: String,
    pub max_tower: Option<TowerWitness>,
    /// Greatest tower height seen; the group depth may exceed this.
    pub depth_lower_bound: usize,
    pub nonsolvable_witness: Option<String>,
    pub imbalance: Option<ImbalanceWitness>,
    pub imbalance_note: String,
    pub derived_series_check: DerivedSeriesCheck,
}

/// Runs every bounded search and assembles the report.
pub fn analyze(
    gens: &[PLMap],
    config: &AnalyzerConfig,
) -> Result<AnalysisReport, BallBudgetExceeded> {
    let radius = config.radius;
    let ball = enumerate_ball_words(gens, radius, config.element_cap)?;
    let group_orbitals = group_support(gens);

    let transition_chain = find_transition_chain2(gens, radius);
    let transition_chain_note = match &transition_chain {
        Some(_) => format!("interlocked pair found at radius {radius}"),
        None => format!(
            "no transition chain of length two at radius {radius} (bounded search, not a proof of absence)"
        ),
    };

    let max_tower = tower_search(gens, radius, config.target_height, config.element_cap)?;
    let depth_lower_bound = max_tower.as_ref().map_or(0, |t| t.tower.height());
    let nonsolvable_witness = config.nonsolvable_threshold.and_then(|t| {
        (depth_lower_bound > t).then(|| {
            format!(
                "tower of height {depth_lower_bound} exceeds threshold {t}; the generated group has depth > {t}"
            )
        })
    });

    let imbalance = imbalance_witness_search(gens, radius);
    let imbalance_note = match &imbalance {
        Some(_) => format!("imbalance witness found at radius {radius}"),
        None => format!(
            "no imbalance witness at radius {radius} (bounded search, not a balancedness claim)"
        ),
    };

    // depth-one group orbitals: support components realized by a ball element
    let depth_one_orbitals: Vec<Interval> = group_orbitals
        .iter()
        .filter(|z| {
            ball.iter()
                .any(|(e, _)| !e.is_identity() && orbitals_of(e).contains(z))
        })
        .cloned()
        .collect();
    let sample: Vec<&PLMap> = ball
        .iter()
        .map(|(e, _)| e)
        .filter(|e| !e.is_identity())
        .take(config.derived_sample_elements)
        .collect();
    let mut sampled_pairs = 0usize;
    let mut violations = 0usize;
    for i in 0..sample.len() {
        for j in (i + 1)..sample.len() {
            sampled_pairs += 1;
            let comm = sample[i].commutator(sample[j]);
            if orbitals_of(&comm)
                .iter()
                .any(|o| depth_one_orbitals.contains(o))
            {
                violations += 1;
            }
        }
    }

    Ok(AnalysisReport {
        schema_version: 1,
        radius,
        element_count: ball.len(),
        group_orbitals,
        transition_chain,
        transition_chain_note,
        max_tower,
        depth_lower_bound,
        nonsolvable_witness,
        imbalance,
        imbalance_note,
        derived_series_check: DerivedSeriesCheck {
            sampled_pairs,
            depth_one_orbitals,
            violations,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{alpha, beta, beta0};
    use crate::rational::rat;
    use std::collections::HashSet;

    fn iv(ln: i64, ld: i64, rn: i64, rd: i64) -> Interval {
        Interval::new(rat(ln, ld), rat(rn, rd)).unwrap()
    }

    #[test]
    fn ball_of_single_generator() {
        let ball = enumerate_ball(&[beta0()], 2, None).unwrap();
        assert_eq!(ball.len(), 5);
        let words: Vec<String> = ball.iter().map(|(_, w)| w.to_string()).collect();
        assert_eq!(words, vec!["1", "g0", "g0^-1", "g0^2", "g0^-2"]);
    }

    #[test]
    fn ball_of_identity() {
        let ball = enumerate_ball(&[PLMap::identity()], 5, None).unwrap();
        assert_eq!(ball.len(), 1);
    }

    #[test]
    fn ball_count_matches_naive_oracle() {
        // oracle: all raw letter strings of length <= 2, deduplicated by
        // canonical form
        let gens = [alpha(), beta0()];
        let letters = [alpha(), alpha().inverse(), beta0(), beta0().inverse()];
        let mut set: HashSet<PLMap> = HashSet::new();
        set.insert(PLMap::identity());
        for a in &letters {
            set.insert(a.clone());
            for b in &letters {
                set.insert(a.compose(b));
            }
        }
        let ball = enumerate_ball(&gens, 2, None).unwrap();
        assert_eq!(ball.len(), set.len());
    }

    #[test]
    fn ball_cap_is_enforced() {
        assert!(enumerate_ball(&[alpha(), beta0()], 3, Some(10)).is_err());
    }

    #[test]
    fn tower_search_on_nested_generators() {
        let tw = tower_search(&[beta0(), beta(1)], 1, 8, None)
            .unwrap()
            .unwrap();
        assert_eq!(tw.tower.height(), 2);
        assert_eq!(*tw.tower.entries()[0].orbital(), iv(7, 16, 9, 16));
        assert_eq!(*tw.tower.entries()[0].signature(), beta0());
        assert_eq!(*tw.tower.entries()[1].orbital(), iv(1, 4, 3, 4));
        assert_eq!(*tw.tower.entries()[1].signature(), beta(1));
        assert!(tw.tower.is_exemplary());
    }

    #[test]
    fn tower_search_reaches_height_three_in_radius_five() {
        let tw = tower_search(&[alpha(), beta0()], 5, 3, None)
            .unwrap()
            .unwrap();
        assert!(tw.tower.height() >= 3);
        assert!(tw.tower.is_exemplary());
        // provenance words realize the signatures
        let gens = [alpha(), beta0()];
        for (entry, word) in tw.tower.entries().iter().zip(&tw.words) {
            assert_eq!(&word.realize(&gens), entry.signature());
        }
    }

    #[test]
    fn tower_search_none_for_identity() {
        assert!(tower_search(&[PLMap::identity()], 3, 8, None)
            .unwrap()
            .is_none());
    }

    #[test]
    fn tower_height_is_monotone_in_radius() {
        let h3 = tower_search(&[alpha(), beta0()], 3, 8, None)
            .unwrap()
            .unwrap()
            .tower
            .height();
        let h4 = tower_search(&[alpha(), beta0()], 4, 8, None)
            .unwrap()
            .unwrap()
            .tower
            .height();
        assert!(h4 >= h3);
    }

    #[test]
    fn analyze_single_bump() {
        let report = analyze(&[beta0()], &AnalyzerConfig::default()).unwrap();
        assert_eq!(report.depth_lower_bound, 1);
        assert!(report.transition_chain.is_none());
        assert!(report.imbalance.is_none());
        assert_eq!(report.group_orbitals, vec![iv(7, 16, 9, 16)]);
        assert_eq!(report.derived_series_check.violations, 0);
    }

    #[test]
    fn analyze_generator_pair() {
        let config = AnalyzerConfig {
            radius: 5,
            ..AnalyzerConfig::default()
        };
        let report = analyze(&[alpha(), beta0()], &config).unwrap();
        assert!(report.transition_chain.is_some());
        assert!(report.depth_lower_bound >= 3);
        assert_eq!(report.group_orbitals, vec![iv(0, 1, 1, 1)]);
        assert_eq!(report.derived_series_check.violations, 0);
    }

    #[test]
    fn analyze_nested_pair() {
        let report = analyze(&[beta0(), beta(1)], &AnalyzerConfig::default()).unwrap();
        assert!(report.transition_chain.is_none());
        assert!(report.depth_lower_bound >= 2);
    }

    #[test]
    fn report_round_trips_bit_exactly() {
        let config = AnalyzerConfig {
            radius: 2,
            ..AnalyzerConfig::default()
        };
        let report = analyze(&[alpha(), beta0()], &config).unwrap();
        let s1 = serde_json::to_string(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&s1).unwrap();
        let s2 = serde_json::to_string(&back).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(back, report);
    }

    #[test]
    fn nonsolvable_threshold_reporting() {
        let config = AnalyzerConfig {
            radius: 5,
            nonsolvable_threshold: Some(2),
            ..AnalyzerConfig::default()
        };
        let report = analyze(&[alpha(), beta0()], &config).unwrap();
        assert!(report.nonsolvable_witness.is_some());
        let config = AnalyzerConfig {
            radius: 2,
            nonsolvable_threshold: Some(50),
            ..AnalyzerConfig::default()
        };
        let report = analyze(&[alpha(), beta0()], &config).unwrap();
        assert!(report.nonsolvable_witness.is_none());
    }
}
