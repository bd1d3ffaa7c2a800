//! Freely reduced words over a named alphabet: the currency for free
//! groups, relators and homomorphism images.
//!
//! Letters are stored run-length encoded as (generator, exponent) pairs
//! with nonzero exponents and no two adjacent equal generators, so a word
//! is freely reduced by construction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Symbolic family of a generator name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    M,
    S,
    T,
    X,
    Y,
    Z,
    Custom(String),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "a"),
            Family::B => write!(f, "b"),
            Family::M => write!(f, "m"),
            Family::S => write!(f, "s"),
            Family::T => write!(f, "t"),
            Family::X => write!(f, "x"),
            Family::Y => write!(f, "y"),
            Family::Z => write!(f, "z"),
            Family::Custom(s) => write!(f, "{s}"),
        }
    }
}

impl Family {
    pub fn from_name(name: &str) -> Family {
        match name {
            "a" => Family::A,
            "b" => Family::B,
            "m" => Family::M,
            "s" => Family::S,
            "t" => Family::T,
            "x" => Family::X,
            "y" => Family::Y,
            "z" => Family::Z,
            other => Family::Custom(other.to_string()),
        }
    }
}

/// A generator name: a family plus an optional index, e.g. x1, a12, y.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub family: Family,
    pub index: Option<u32>,
}

impl Gen {
    pub fn new(family: Family, index: Option<u32>) -> Gen {
        Gen { family, index }
    }
    pub fn x(i: u32) -> Gen {
        Gen::new(Family::X, Some(i))
    }
    pub fn a(i: u32) -> Gen {
        Gen::new(Family::A, Some(i))
    }
    pub fn b(i: u32) -> Gen {
        Gen::new(Family::B, Some(i))
    }
    pub fn m(i: u32) -> Gen {
        Gen::new(Family::M, Some(i))
    }
    pub fn y() -> Gen {
        Gen::new(Family::Y, None)
    }
    pub fn z() -> Gen {
        Gen::new(Family::Z, None)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if let Some(i) = self.index {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Gen {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gen> {
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, digits) = s.split_at(split);
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(Error::Parse(format!("bad generator name {s:?}")));
        }
        let index = if digits.is_empty() {
            None
        } else {
            Some(
                digits
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad generator index {s:?}")))?,
            )
        };
        Ok(Gen::new(Family::from_name(name), index))
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<(Gen, i64)>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn gen(g: Gen) -> Word {
        Word::letter(g, 1)
    }

    pub fn letter(g: Gen, exponent: i64) -> Word {
        let mut w = Word::identity();
        w.push(g, exponent).expect("single letter cannot overflow");
        w
    }

    /// Reduce an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = (Gen, i64)>>(letters: I) -> Result<Word> {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e)?;
        }
        Ok(w)
    }

    /// Run-length view of the reduced word.
    pub fn runs(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    /// Expanded single-letter view: (generator, ±1) pairs.
    pub fn iter_letters(&self) -> impl Iterator<Item = (&Gen, i64)> + '_ {
        self.letters.iter().flat_map(|(g, e)| {
            let sign = e.signum();
            (0..e.unsigned_abs()).map(move |_| (g, sign))
        })
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total letter count, counting multiplicities.
    pub fn len(&self) -> usize {
        self.letters
            .iter()
            .map(|(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Append one run, merging and cancelling with the tail.
    pub fn push(&mut self, g: Gen, e: i64) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        if let Some((tg, te)) = self.letters.last_mut() {
            if *tg == g {
                *te = te.checked_add(e).ok_or(Error::Overflow("word exponent"))?;
                if *te == 0 {
                    self.letters.pop();
                }
                return Ok(());
            }
        }
        self.letters.push((g, e));
        Ok(())
    }

    pub fn append(&mut self, other: &Word) -> Result<()> {
        for (g, e) in &other.letters {
            self.push(g.clone(), *e)?;
        }
        Ok(())
    }

    pub fn mul(&self, other: &Word) -> Result<Word> {
        let mut w = self.clone();
        w.append(other)?;
        Ok(w)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(g, e)| (g.clone(), -e))
                .collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Word> {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w.append(&base)?;
        }
        Ok(w)
    }

    /// h · self · h⁻¹
    pub fn conjugate_by(&self, h: &Word) -> Result<Word> {
        let mut w = h.clone();
        w.append(self)?;
        w.append(&h.inverse())?;
        Ok(w)
    }

    pub fn generators(&self) -> impl Iterator<Item = &Gen> + '_ {
        self.letters.iter().map(|(g, _)| g)
    }

    /// Apply a generator-image mapping, reducing the result.
    pub fn substitute(&self, images: &BTreeMap<Gen, Word>) -> Result<Word> {
        let mut out = Word::identity();
        for (g, e) in &self.letters {
            let img = images
                .get(g)
                .ok_or_else(|| Error::MissingImage(g.to_string()))?;
            out.append(&img.pow(*e)?)?;
        }
        Ok(out)
    }

    /// Erase every letter whose generator satisfies the predicate.
    pub fn erase<F: Fn(&Gen) -> bool>(&self, kill: F) -> Word {
        let mut out = Word::identity();
        for (g, e) in &self.letters {
            if !kill(g) {
                out.push(g.clone(), *e).expect("erase cannot overflow");
            }
        }
        out
    }

    fn expanded(&self) -> Vec<(Gen, i64)> {
        self.iter_letters().map(|(g, s)| (g.clone(), s)).collect()
    }

    /// Cyclically reduced expanded form.
    fn cyclic_core(&self) -> Vec<(Gen, i64)> {
        let mut v = self.expanded();
        while v.len() >= 2 {
            let first = &v[0];
            let last = &v[v.len() - 1];
            if first.0 == last.0 && first.1 == -last.1 {
                v.pop();
                v.remove(0);
            } else {
                break;
            }
        }
        v
    }

    /// The cyclically reduced form (a conjugate of self).
    pub fn cyclic_reduced(&self) -> Word {
        Word::from_letters(self.cyclic_core()).expect("cyclic core is reduced")
    }

    /// Least rotation of the cyclic reduction, for cyclic comparison.
    fn cyclic_canonical(&self) -> Vec<(Gen, i64)> {
        let core = self.cyclic_core();
        if core.len() <= 1 {
            return core;
        }
        let k = core.len();
        let mut best: Option<Vec<(Gen, i64)>> = None;
        for shift in 0..k {
            let rot: Vec<(Gen, i64)> = (0..k).map(|i| core[(i + shift) % k].clone()).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
        best.unwrap()
    }
}

/// True iff the cyclic reductions agree up to rotation (and inversion when
/// the flag is set).
pub fn cyclic_equivalent(w1: &Word, w2: &Word, allow_inversion: bool) -> bool {
    let c1 = w1.cyclic_canonical();
    if c1 == w2.cyclic_canonical() {
        return true;
    }
    allow_inversion && c1 == w2.inverse().cyclic_canonical()
}

/// Product x_lo · x_{lo+1} ⋯ x_hi of an indexed family; identity when lo > hi.
pub fn range_product(family: Family, lo: u32, hi: u32) -> Word {
    let mut w = Word::identity();
    for i in lo..=hi {
        w.push(Gen::new(family.clone(), Some(i)), 1)
            .expect("range product cannot overflow");
    }
    if lo > hi {
        debug_assert!(w.is_identity());
    }
    w
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{g}")?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::identity());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word text".into()));
        }
        let mut w = Word::identity();
        for part in s.split('.') {
            let (name, exp) = match part.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?,
                ),
                None => (part, 1),
            };
            w.push(name.parse::<Gen>()?, exp)?;
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Gen {
        Gen::x(i)
    }

    #[test]
    fn reduce_examples() {
        let w = Word::from_letters([(x(1), 1), (x(1), -1)]).unwrap();
        assert!(w.is_identity());
        let w = Word::from_letters([(x(1), 1), (x(2), 1), (x(2), -1), (x(1), 1)]).unwrap();
        assert_eq!(w, Word::letter(x(1), 2));
        assert!(Word::from_letters([]).unwrap().is_identity());
    }

    #[test]
    fn substitute_examples() {
        // instance of φ for (n,m) = (2,3)
        let mut images = BTreeMap::new();
        images.insert(x(1), Word::gen(Gen::a(3)));
        images.insert(
            x(2),
            Word::from_letters([(Gen::a(1), 1), (Gen::a(3), 1), (Gen::a(1), -1)]).unwrap(),
        );
        let w = Word::from_letters([(x(1), 1), (x(2), 1)]).unwrap();
        let img = w.substitute(&images).unwrap();
        assert_eq!(img.to_string(), "a3.a1.a3.a1^-1");

        assert!(Word::identity().substitute(&images).unwrap().is_identity());
        let inv = Word::letter(x(1), -1).substitute(&images).unwrap();
        assert_eq!(inv, Word::letter(Gen::a(3), -1));

        let missing = Word::gen(Gen::y()).substitute(&images);
        assert_eq!(missing, Err(Error::MissingImage("y".into())));
    }

    #[test]
    fn substitute_identity_map_is_identity() {
        let w: Word = "x1.x2^-3.y.x1^2".parse().unwrap();
        let mut images = BTreeMap::new();
        for g in [x(1), x(2), Gen::y()] {
            images.insert(g.clone(), Word::gen(g));
        }
        assert_eq!(w.substitute(&images).unwrap(), w);
    }

    #[test]
    fn cyclic_equivalent_examples() {
        let w1: Word = "x1.x2".parse().unwrap();
        let w2: Word = "x2.x1".parse().unwrap();
        assert!(cyclic_equivalent(&w1, &w2, false));
        let w3: Word = "x2^-1.x1^-1".parse().unwrap();
        assert!(cyclic_equivalent(&w1, &w3, true));
        assert!(!cyclic_equivalent(&w1, &w3, false));
        assert!(!cyclic_equivalent(&Word::gen(x(1)), &Word::gen(x(2)), true));
    }

    #[test]
    fn grammar_round_trip() {
        for text in ["1", "x1", "y", "x1.x2^-1.y^3", "a12.b1^-2", "m3.t.z^4"] {
            let w: Word = text.parse().unwrap();
            assert_eq!(w.to_string(), text);
            let again: Word = w.to_string().parse().unwrap();
            assert_eq!(again, w);
        }
        // unreduced input serializes reduced
        let w: Word = "x1^1.x1^2.x2.x2^-1".parse().unwrap();
        assert_eq!(w.to_string(), "x1^3");
        assert!("".parse::<Word>().is_err());
        assert!("x^y".parse::<Word>().is_err());
        assert!("3x".parse::<Word>().is_err());
    }

    #[test]
    fn range_product_empty() {
        assert!(range_product(Family::X, 3, 2).is_identity());
        assert_eq!(range_product(Family::X, 1, 3).to_string(), "x1.x2.x3");
    }
}
