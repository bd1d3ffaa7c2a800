//! Braid words, the Artin representation, permutation bookkeeping and
//! strand removal.

use std::collections::BTreeSet;
use std::fmt;

use crate::words::{Family, Gen, Word};
use crate::{Error, Result};

/// A braid word: a strand count and a sequence of signed crossings.
///
/// Words are never normalised; only their Artin action and underlying
/// permutation are ever consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: u32,
    crossings: Vec<(u32, i8)>,
}

impl BraidWord {
    pub fn new<I: IntoIterator<Item = (u32, i8)>>(strands: u32, crossings: I) -> Result<BraidWord> {
        if strands == 0 {
            return Err(Error::NonPositive("braid strands"));
        }
        let crossings: Vec<(u32, i8)> = crossings.into_iter().collect();
        for &(i, s) in &crossings {
            if i == 0 || i >= strands {
                return Err(Error::BadCrossing { index: i, strands });
            }
            debug_assert!(s == 1 || s == -1);
        }
        Ok(BraidWord { strands, crossings })
    }

    pub fn identity(strands: u32) -> BraidWord {
        BraidWord::new(strands, []).expect("identity braid")
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn crossings(&self) -> &[(u32, i8)] {
        &self.crossings
    }

    pub fn mul(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::Param(format!(
                "cannot multiply braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);
        BraidWord::new(self.strands, crossings)
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            crossings: self.crossings.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> BraidWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut crossings = Vec::with_capacity(self.crossings.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            crossings.extend_from_slice(&base.crossings);
        }
        BraidWord {
            strands: self.strands,
            crossings,
        }
    }

    /// The same word on a larger strand count.
    pub fn embed(&self, strands: u32) -> Result<BraidWord> {
        if strands < self.strands {
            return Err(Error::Param(format!(
                "cannot embed a {}-strand braid into {} strands",
                self.strands, strands
            )));
        }
        BraidWord::new(strands, self.crossings.clone())
    }

    /// Right Artin action of the braid on a word over x_1 … x_n.
    ///
    /// Crossings act left to right, so (w·β)·γ = w·(βγ). A positive σ_i
    /// sends x_i ↦ x_i x_{i+1} x_i⁻¹ and x_{i+1} ↦ x_i; a negative one
    /// applies the inverse substitution.
    pub fn artin_act(&self, w: &Word) -> Result<Word> {
        for g in w.generators() {
            match (&g.family, g.index) {
                (Family::X, Some(i)) if 1 <= i && i <= self.strands => {}
                _ => return Err(Error::UnknownGenerator(g.to_string())),
            }
        }
        let mut current = w.clone();
        for &(i, sign) in &self.crossings {
            let mut next = Word::identity();
            for (g, e) in current.runs() {
                let idx = g.index.expect("checked above");
                if sign > 0 {
                    if idx == i {
                        // x_i ↦ x_i x_{i+1} x_i⁻¹
                        next.push(Gen::x(i), 1)?;
                        next.push(Gen::x(i + 1), *e)?;
                        next.push(Gen::x(i), -1)?;
                    } else if idx == i + 1 {
                        next.push(Gen::x(i), *e)?;
                    } else {
                        next.push(g.clone(), *e)?;
                    }
                } else if idx == i {
                    next.push(Gen::x(i + 1), *e)?;
                } else if idx == i + 1 {
                    // x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
                    next.push(Gen::x(i + 1), -1)?;
                    next.push(Gen::x(i), *e)?;
                    next.push(Gen::x(i + 1), 1)?;
                } else {
                    next.push(g.clone(), *e)?;
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// The permutation sending each starting position to its ending
    /// position, as a 1-based lookup table.
    pub fn underlying_permutation(&self) -> Permutation {
        let n = self.strands as usize;
        // occupant[p] = strand currently at position p (0-based)
        let mut occupant: Vec<u32> = (1..=self.strands).collect();
        for &(i, _) in &self.crossings {
            occupant.swap(i as usize - 1, i as usize);
        }
        let mut end = vec![0u32; n];
        for (pos, &strand) in occupant.iter().enumerate() {
            end[strand as usize - 1] = pos as u32 + 1;
        }
        Permutation { map: end }
    }

    /// Remove the strands with the given starting positions.
    ///
    /// Crossings involving a removed strand are deleted (the positional
    /// swap is still recorded); surviving crossings are reindexed by the
    /// number of retained strands to their left.
    pub fn remove_strands(&self, removed: &BTreeSet<u32>) -> Result<BraidWord> {
        for &p in removed {
            if p == 0 || p > self.strands {
                return Err(Error::BadStrand {
                    position: p,
                    strands: self.strands,
                });
            }
        }
        let perm = self.underlying_permutation();
        let image: BTreeSet<u32> = removed.iter().map(|&p| perm.apply(p)).collect();
        if image != *removed {
            return Err(Error::NotStabilised);
        }
        let mut occupant: Vec<u32> = (1..=self.strands).collect();
        let mut crossings = Vec::new();
        for &(i, s) in &self.crossings {
            let (a, b) = (occupant[i as usize - 1], occupant[i as usize]);
            if !removed.contains(&a) && !removed.contains(&b) {
                let left_retained = occupant[..i as usize - 1]
                    .iter()
                    .filter(|st| !removed.contains(st))
                    .count() as u32;
                crossings.push((left_retained + 1, s));
            }
            occupant.swap(i as usize - 1, i as usize);
        }
        BraidWord::new(self.strands - removed.len() as u32, crossings)
    }
}

/// A permutation of [n], 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<u32>,
}

impl Permutation {
    pub fn apply(&self, i: u32) -> u32 {
        self.map[i as usize - 1]
    }

    pub fn degree(&self) -> u32 {
        self.map.len() as u32
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    /// Disjoint cycle partition, each cycle starting from its least
    /// element, cycles ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize - 1] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur as usize - 1] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            return write!(f, "1");
        }
        for (k, &(i, s)) in self.crossings.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "s{i}")?;
            if s < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Parse "s3.s2.s1^-1" style text; the strand count is supplied separately.
pub fn parse_braid(text: &str, strands: u32) -> Result<BraidWord> {
    let text = text.trim();
    if text == "1" {
        return BraidWord::new(strands, []);
    }
    let mut crossings = Vec::new();
    for part in text.split('.') {
        let (name, exp) = match part.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?,
            ),
            None => (part, 1),
        };
        let idx = name
            .strip_prefix('s')
            .and_then(|d| d.parse::<u32>().ok())
            .ok_or_else(|| Error::Parse(format!("bad crossing {part:?}")))?;
        for _ in 0..exp.unsigned_abs() {
            crossings.push((idx, if exp < 0 { -1 } else { 1 }));
        }
    }
    BraidWord::new(strands, crossings)
}
