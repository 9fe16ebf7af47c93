//! Words over a generating set, recording the provenance of searched
//! elements, plus the shortlex letter ordering used by every search.
//!
//! A letter is a generator or its inverse; the fixed letter order is
//! `g_0 < g_0⁻¹ < g_1 < g_1⁻¹ < …`. Shortlex compares first by letter count,
//! then lexicographically in that order. Searches enumerate words in
//! shortlex order, so the first witness found is the canonical one.

use crate::plmap::PLMap;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A reduced word: generator indices with nonzero exponents, adjacent
/// letters on distinct generators. Serializes as a bare list of
/// `{"gen": index, "exp": exponent}` records.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<WordLetter>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordLetter {
    pub gen: usize,
    pub exp: i64,
}

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word { letters: vec![] }
    }

    /// Builds a word from `(generator, exponent)` runs, merging adjacent
    /// runs on the same generator and dropping zero exponents.
    pub fn from_runs(runs: &[(usize, i64)]) -> Self {
        let mut w = Word::empty();
        for &(gen, exp) in runs {
            w.push(gen, exp);
        }
        w
    }

    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(WordLetter { gen, exp });
    }

    pub fn letters(&self) -> &[WordLetter] {
        &self.letters
    }

    /// Letter count: the sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.exp.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Realizes the word over the given generators.
    pub fn realize(&self, gens: &[PLMap]) -> PLMap {
        let mut out = PLMap::identity();
        for l in &self.letters {
            out = out.compose(&gens[l.gen].power(l.exp));
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.exp == 1 {
                    format!("g{}", l.gen)
                } else {
                    format!("g{}^{}", l.gen, l.exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A single search letter: generator index plus direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Whether appending `other` after `self` cancels freely.
    pub fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// The `2n` letters for `n` generators in shortlex order.
pub fn alphabet(gen_count: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(2 * gen_count);
    for gen in 0..gen_count {
        out.push(Letter {
            gen,
            inverse: false,
        });
        out.push(Letter { gen, inverse: true });
    }
    out
}

/// Appends a letter to a run-encoded word.
pub fn extend_word(word: &Word, letter: &Letter) -> Word {
    let mut runs: Vec<(usize, i64)> = word.letters.iter().map(|l| (l.gen, l.exp)).collect();
    runs.push((letter.gen, letter.exponent()));
    Word::from_runs(&runs)
}

/// Raised when a ball enumeration hits its element budget.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("element budget exceeded: ball already holds {count} distinct elements")]
pub struct BallBudgetExceeded {
    pub count: usize,
}

/// All distinct elements spelled by words of length at most `radius`, each
/// with its shortlex-least word, listed in shortlex order of those words.
///
/// Breadth-first over the element graph: the first word reaching an element
/// is shortlex-least, and expanding only first encounters loses nothing.
pub fn enumerate_ball_words(
    gens: &[PLMap],
    radius: usize,
    cap: Option<usize>,
) -> Result<Vec<(PLMap, Word)>, BallBudgetExceeded> {
    use std::collections::HashSet;

    let letters = alphabet(gens.len());
    let mut letter_maps = Vec::with_capacity(letters.len());
    for l in &letters {
        letter_maps.push(if l.inverse {
            gens[l.gen].inverse()
        } else {
            gens[l.gen].clone()
        });
    }

    let mut out: Vec<(PLMap, Word)> = vec![(PLMap::identity(), Word::empty())];
    let mut seen: HashSet<PLMap> = out.iter().map(|(m, _)| m.clone()).collect();
    let mut frontier: Vec<usize> = vec![0];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &i in &frontier {
            let (elem, word) = out[i].clone();
            for (li, l) in letters.iter().enumerate() {
                let neighbor = elem.compose(&letter_maps[li]);
                if seen.contains(&neighbor) {
                    continue;
                }
                if let Some(limit) = cap {
                    if out.len() >= limit {
                        return Err(BallBudgetExceeded { count: out.len() });
                    }
                }
                seen.insert(neighbor.clone());
                next.push(out.len());
                out.push((neighbor, extend_word(&word, l)));
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn runs_merge_and_cancel() {
        let w = Word::from_runs(&[(0, 2), (0, 1), (1, -1), (1, 1), (0, 3)]);
        // g0^3 then g1^-1 g1 cancels, then g0^3 merges with nothing pending
        assert_eq!(
            w.letters(),
            &[WordLetter { gen: 0, exp: 6 }][..] // 2+1 then cancel then +3
        );
        assert_eq!(w.len(), 6);
    }

    #[test]
    fn empty_word_realizes_identity() {
        let gens = vec![PLMap::identity()];
        assert!(Word::empty().realize(&gens).is_identity());
        assert!(Word::empty().is_empty());
    }

    #[test]
    fn realize_matches_direct_composition() {
        let tent = PLMap::new(vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 4), rat(1, 2)),
            (rat(1, 1), rat(1, 1)),
        ])
        .unwrap();
        let gens = vec![tent.clone()];
        let w = Word::from_runs(&[(0, 2)]);
        assert_eq!(w.realize(&gens), tent.compose(&tent));
        let winv = Word::from_runs(&[(0, -1)]);
        assert_eq!(winv.realize(&gens), tent.inverse());
    }

    #[test]
    fn alphabet_order_is_gen_then_inverse() {
        let a = alphabet(2);
        assert_eq!(a.len(), 4);
        assert!(!a[0].inverse && a[0].gen == 0);
        assert!(a[1].inverse && a[1].gen == 0);
        assert!(!a[2].inverse && a[2].gen == 1);
        assert!(a[3].inverse && a[3].gen == 1);
    }
}
