//! The word-problem engine for circular groups G(n, m): window simples,
//! greedy normal forms relative to the Garside element Δ (the common
//! length-m window value), and a brute-force rewriting oracle.
//!
//! The lattice model — proper windows are pairwise distinct, divisibility
//! of a proper window is prefix divisibility, and the right lcm of two
//! distinct generators is Δ — is a reconstruction, not something the
//! sources spell out. Construction therefore runs a validation suite per
//! parameter pair and refuses parameters that fail it. Since every
//! defining relation is a word of length exactly m, positive words
//! shorter than m are equal iff they are identical; the ball-based checks
//! certify the substantive part at and above length m.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::words::Word;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularParams {
    pub n: u32,
    pub m: u32,
}

impl CircularParams {
    pub fn new(n: u32, m: u32) -> Result<CircularParams> {
        if n == 0 || m == 0 {
            return Err(Error::NonPositive("circular parameters"));
        }
        Ok(CircularParams { n, m })
    }
}

/// A simple element: the window a_start · a_{start+1} ⋯ of the given
/// length, indices mod n. Canonical form stores start = 0 for the
/// identity (length 0) and for Δ (length m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simple {
    pub start: u32,
    pub len: u32,
}

impl Simple {
    pub const IDENTITY: Simple = Simple { start: 0, len: 0 };

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }
}

/// Garside normal form Δ^power · s_1 ⋯ s_k with proper simples s_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub power: i64,
    pub body: Vec<Simple>,
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{} :", self.power)?;
        for s in &self.body {
            write!(f, " ({},{})", s.start, s.len)?;
        }
        Ok(())
    }
}

/// How thoroughly a parameter pair was validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationLevel {
    /// Ball-based suite up to the recorded word length (≥ m).
    Ball(u32),
    /// Structural checks only; the ball through length m did not fit the
    /// word budget. Distinctness below length m holds syntactically.
    Structural,
}

static VALIDATED: OnceLock<Mutex<HashMap<CircularParams, ValidationLevel>>> = OnceLock::new();

/// Word-problem engine for one parameter pair.
#[derive(Debug, Clone)]
pub struct CircularGroup {
    params: CircularParams,
    level: ValidationLevel,
}

impl CircularGroup {
    /// Build the engine, running the lattice validation suite for new
    /// parameters (results are cached process-wide).
    pub fn new(n: u32, m: u32) -> Result<CircularGroup> {
        let params = CircularParams::new(n, m)?;
        let cache = VALIDATED.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(&level) = cache.lock().unwrap().get(&params) {
            return Ok(CircularGroup { params, level });
        }
        let level = validate(params, 150_000)?;
        cache.lock().unwrap().insert(params, level);
        Ok(CircularGroup { params, level })
    }

    pub fn params(&self) -> CircularParams {
        self.params
    }

    pub fn validation_level(&self) -> ValidationLevel {
        self.level
    }

    fn shift(&self, start: u32, by: i64) -> u32 {
        let n = self.params.n as i64;
        ((start as i64 - 1 + by).rem_euclid(n) + 1) as u32
    }

    fn canonical(&self, s: Simple) -> Simple {
        if s.len == 0 || s.len == self.params.m {
            Simple {
                start: 0,
                len: s.len,
            }
        } else {
            s
        }
    }

    /// The unique simple t with s·t = Δ.
    pub fn right_complement(&self, s: Simple) -> Simple {
        let m = self.params.m;
        if s.len == 0 {
            return Simple { start: 0, len: m };
        }
        if s.len == m {
            return Simple::IDENTITY;
        }
        Simple {
            start: self.shift(s.start, s.len as i64),
            len: m - s.len,
        }
    }

    /// Greatest common left divisor of two simples.
    pub fn left_gcd(&self, u: Simple, v: Simple) -> Simple {
        let m = self.params.m;
        if u.len == m {
            return self.canonical(v);
        }
        if v.len == m {
            return self.canonical(u);
        }
        if u.len == 0 || v.len == 0 {
            return Simple::IDENTITY;
        }
        if u.start == v.start {
            let s = Simple {
                start: u.start,
                len: u.len.min(v.len),
            };
            return self.canonical(s);
        }
        Simple::IDENTITY
    }

    /// Conjugation by Δ: shifts the start by +m mod n.
    pub fn tau(&self, s: Simple) -> Simple {
        if s.len == 0 || s.len == self.params.m {
            return self.canonical(s);
        }
        Simple {
            start: self.shift(s.start, self.params.m as i64),
            len: s.len,
        }
    }

    pub fn tau_inv(&self, s: Simple) -> Simple {
        if s.len == 0 || s.len == self.params.m {
            return self.canonical(s);
        }
        Simple {
            start: self.shift(s.start, -(self.params.m as i64)),
            len: s.len,
        }
    }

    /// Extract the signed generator indices of a word over one indexed
    /// family (the engine accepts any single indexed family as alphabet).
    fn letters_of(&self, w: &Word) -> Result<Vec<(u32, i64)>> {
        let mut out = Vec::new();
        let mut family = None;
        for (g, e) in w.runs() {
            match g.index {
                Some(i) if 1 <= i && i <= self.params.n => {
                    if *family.get_or_insert_with(|| g.family.clone()) != g.family {
                        return Err(Error::UnknownGenerator(g.to_string()));
                    }
                    out.push((i, *e));
                }
                _ => return Err(Error::UnknownGenerator(g.to_string())),
            }
        }
        Ok(out)
    }

    /// Greedy normal form of a word over the group generators.
    pub fn normal_form(&self, w: &Word) -> Result<NormalForm> {
        Ok(self.nf_of_indices(&self.letters_of(w)?))
    }

    fn nf_of_indices(&self, letters: &[(u32, i64)]) -> NormalForm {
        let mut nf = NfBuilder {
            group: self,
            power: 0,
            body: Vec::new(),
        };
        for &(idx, exp) in letters {
            if exp >= 0 {
                for _ in 0..exp {
                    nf.push_positive(idx);
                }
            } else {
                for _ in 0..exp.unsigned_abs() {
                    nf.push_negative(idx);
                }
            }
        }
        nf.finish()
    }

    /// Equality through normal forms.
    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }

    /// True iff the word commutes with every generator.
    pub fn is_central(&self, w: &Word) -> Result<bool> {
        let letters = self.letters_of(w)?;
        for i in 1..=self.params.n {
            let mut wa = letters.clone();
            wa.push((i, 1));
            let mut aw = vec![(i, 1)];
            aw.extend_from_slice(&letters);
            if self.nf_of_indices(&wa) != self.nf_of_indices(&aw) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The positive ball oracle for these parameters.
    pub fn positive_ball(&self, max_len: u32, word_limit: usize) -> Result<Ball> {
        Ball::build(self.params, max_len, word_limit)
    }
}

struct NfBuilder<'a> {
    group: &'a CircularGroup,
    power: i64,
    body: Vec<Simple>,
}

impl NfBuilder<'_> {
    fn push_positive(&mut self, idx: u32) {
        let m = self.group.params.m;
        if m == 1 {
            // every generator is Δ itself
            self.absorb_delta_at_end();
            return;
        }
        self.body.push(Simple { start: idx, len: 1 });
        self.normalize();
    }

    fn push_negative(&mut self, idx: u32) {
        // a_i⁻¹ = ∂(a_i) · Δ⁻¹
        let comp = self.group.right_complement(Simple { start: idx, len: 1 });
        if !comp.is_identity() {
            self.body.push(comp);
            self.normalize();
        }
        // append Δ⁻¹: shift the whole body by τ⁻¹ and decrement the power
        self.power -= 1;
        for s in &mut self.body {
            *s = self.group.tau_inv(*s);
        }
    }

    fn absorb_delta_at_end(&mut self) {
        // B·Δ = Δ·τ(B)
        self.power += 1;
        for s in &mut self.body {
            *s = self.group.tau(*s);
        }
    }

    /// Local left-weighting passes until stable.
    fn normalize(&mut self) {
        let m = self.group.params.m;
        loop {
            let mut changed = false;
            let mut j = 0;
            while j < self.body.len().saturating_sub(1) {
                let u = self.body[j];
                let v = self.body[j + 1];
                // the head of v divides ∂(u) iff v starts where u ends
                let boundary = self.group.shift(u.start, u.len as i64);
                if v.start == boundary {
                    let t = (m - u.len).min(v.len);
                    if t > 0 {
                        changed = true;
                        self.body[j] = Simple {
                            start: u.start,
                            len: u.len + t,
                        };
                        if v.len == t {
                            self.body.remove(j + 1);
                        } else {
                            self.body[j + 1] = Simple {
                                start: self.group.shift(v.start, t as i64),
                                len: v.len - t,
                            };
                        }
                        if self.body[j].len == m {
                            // a full window is Δ: push it to the front
                            self.body.remove(j);
                            for s in &mut self.body[..j] {
                                *s = self.group.tau(*s);
                            }
                            self.power += 1;
                        }
                        continue;
                    }
                }
                j += 1;
            }
            if !changed {
                return;
            }
        }
    }

    fn finish(self) -> NormalForm {
        debug_assert!(self
            .body
            .iter()
            .all(|s| s.len > 0 && s.len < self.group.params.m));
        NormalForm {
            power: self.power,
            body: self.body,
        }
    }
}

/// Partition of all positive words of bounded length into equality
/// classes, computed by saturating the window relations as bidirectional
/// subword rewrites. Independent of the normal-form engine.
pub struct Ball {
    params: CircularParams,
    /// all words of length ≤ max_len, in (length, lex) order
    pub words: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    root: Vec<usize>,
}

impl Ball {
    fn build(params: CircularParams, max_len: u32, word_limit: usize) -> Result<Ball> {
        let n = params.n as u64;
        let mut count: u64 = 0;
        let mut pow: u64 = 1;
        for _ in 0..=max_len {
            count = count
                .checked_add(pow)
                .ok_or(Error::LimitExceeded("positive ball size"))?;
            pow = pow.saturating_mul(n);
            if count > word_limit as u64 {
                return Err(Error::LimitExceeded("positive ball size"));
            }
        }
        // breadth-first enumeration in (length, lex) order
        let mut words: Vec<Vec<u32>> = vec![vec![]];
        let mut frontier: Vec<Vec<u32>> = vec![vec![]];
        for _ in 1..=max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 1..=params.n {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let index: HashMap<Vec<u32>, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut ball = Ball {
            params,
            root: (0..words.len()).collect(),
            words,
            index,
        };
        ball.saturate();
        Ok(ball)
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.root[i] != i {
            self.root[i] = self.root[self.root[i]];
            i = self.root[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the earlier word (shorter or lex-smaller) as root
            let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.root[drop] = keep;
        }
    }

    fn saturate(&mut self) {
        let (n, m) = (self.params.n as usize, self.params.m as usize);
        for wi in 0..self.words.len() {
            let w = self.words[wi].clone();
            if w.len() < m {
                continue;
            }
            for pos in 0..=w.len() - m {
                // does w[pos..pos+m] walk consecutively mod n?
                let start = w[pos];
                let consecutive =
                    (0..m).all(|j| w[pos + j] == ((start as usize - 1 + j) % n + 1) as u32);
                if !consecutive {
                    continue;
                }
                for other in 1..=n as u32 {
                    if other == start {
                        continue;
                    }
                    let mut v = w.clone();
                    for (j, slot) in v[pos..pos + m].iter_mut().enumerate() {
                        *slot = ((other as usize - 1 + j) % n + 1) as u32;
                    }
                    let vi = self.index[&v];
                    self.union(wi, vi);
                }
            }
        }
    }

    /// Class id of a positive word (must lie inside the ball).
    pub fn class_of(&mut self, w: &[u32]) -> Option<usize> {
        let i = *self.index.get(w)?;
        Some(self.find(i))
    }

    /// Number of equality classes.
    pub fn class_count(&mut self) -> usize {
        let mut roots = std::collections::BTreeSet::new();
        for i in 0..self.words.len() {
            let r = self.find(i);
            roots.insert(r);
        }
        roots.len()
    }

    /// Lexicographically least representative of each class, in order.
    pub fn representatives(&mut self) -> Vec<Vec<u32>> {
        let mut reps: Vec<Vec<u32>> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..self.words.len() {
            let r = self.find(i);
            if seen.insert(r) {
                reps.push(self.words[r].clone());
            }
        }
        reps
    }
}

/// Run the lattice-validation suite. Returns the achieved level or an
/// error when a check fails.
fn validate(params: CircularParams, word_limit: usize) -> Result<ValidationLevel> {
    let (n, m) = (params.n, params.m);
    let group = CircularGroup {
        params,
        level: ValidationLevel::Structural,
    };

    // window rotations all normalize to Δ
    for i in 1..=n {
        let w = window_word(params, i);
        let nf = group.normal_form(&word_from_indices(&w))?;
        if nf
            != (NormalForm {
                power: 1,
                body: vec![],
            })
        {
            return Err(Error::ValidationFailed(format!(
                "window at {i} does not normalize to D in G({n},{m})"
            )));
        }
    }
    // τ identity: a_i Δ = Δ a_{i+m}
    for i in 1..=n {
        let ai = Word::gen(crate::words::Gen::a(i));
        let shifted = Word::gen(crate::words::Gen::a((i - 1 + m % n) % n + 1));
        let delta = word_from_indices(&window_word(params, 1));
        if !group.equal(&ai.mul(&delta)?, &delta.mul(&shifted)?)? {
            return Err(Error::ValidationFailed(format!(
                "tau identity fails at generator {i} in G({n},{m})"
            )));
        }
    }
    // complement identity: a_i ∂(a_i) = Δ
    for i in 1..=n {
        let comp = group.right_complement(Simple { start: i, len: 1 });
        let mut w = vec![i];
        for j in 0..comp.len {
            w.push((comp.start - 1 + j) % n + 1);
        }
        let nf = group.normal_form(&word_from_indices(&w))?;
        if nf
            != (NormalForm {
                power: 1,
                body: vec![],
            })
        {
            return Err(Error::ValidationFailed(format!(
                "complement identity fails at generator {i} in G({n},{m})"
            )));
        }
    }

    // ball-based checks, budget permitting: reach at least length m
    let mut max_len = 0u32;
    let mut total: u64 = 1;
    let mut pow: u64 = 1;
    while max_len < m + 1 {
        pow = pow.saturating_mul(n as u64);
        match total.checked_add(pow) {
            Some(t) if t <= word_limit as u64 => {
                total = t;
                max_len += 1;
            }
            _ => break,
        }
    }
    if max_len < m {
        return Ok(ValidationLevel::Structural);
    }
    let mut ball = Ball::build(params, max_len, word_limit)?;
    ball_checks(&group, &mut ball, max_len)?;
    Ok(ValidationLevel::Ball(max_len))
}

/// The full ball suite: distinctness of proper windows, prefix
/// divisibility, generator lcm = Δ, and engine agreement with the oracle.
pub fn ball_checks(group: &CircularGroup, ball: &mut Ball, max_len: u32) -> Result<()> {
    let params = group.params();
    let (n, m) = (params.n, params.m);

    // proper windows are pairwise distinct
    let limit = m.saturating_sub(1).min(max_len);
    let mut seen: HashMap<usize, (u32, u32)> = HashMap::new();
    for len in 1..=limit {
        for start in 1..=n {
            let mut w = Vec::with_capacity(len as usize);
            for j in 0..len {
                w.push((start - 1 + j) % n + 1);
            }
            let class = ball.class_of(&w).expect("window inside ball");
            if let Some(&(s0, l0)) = seen.get(&class) {
                if (s0, l0) != (start, len) {
                    return Err(Error::ValidationFailed(format!(
                        "windows ({s0},{l0}) and ({start},{len}) collide in G({n},{m})"
                    )));
                }
            }
            seen.insert(class, (start, len));
        }
    }

    // below length m every class is a singleton (prefix divisibility)
    let short_count = {
        let mut c: u64 = 0;
        let mut p: u64 = 1;
        for _ in 0..m.min(max_len + 1) {
            c += p;
            p = p.saturating_mul(n as u64);
        }
        c as usize
    };
    for i in 0..short_count.min(ball.words.len()) {
        let r = ball.find(i);
        if r != i {
            return Err(Error::ValidationFailed(format!(
                "distinct short positive words collide in G({n},{m})"
            )));
        }
    }

    if max_len >= m {
        // Δ's class at length m is exactly the window rotations
        let delta_class = ball
            .class_of(&window_word(params, 1))
            .expect("delta inside ball");
        let mut members = 0usize;
        for i in 0..ball.words.len() {
            if ball.words[i].len() == m as usize && ball.find(i) == delta_class {
                members += 1;
                let w = ball.words[i].clone();
                let start = w[0];
                let consecutive = (0..m as usize)
                    .all(|j| w[j] == ((start as usize - 1 + j) % n as usize + 1) as u32);
                if !consecutive {
                    return Err(Error::ValidationFailed(format!(
                        "a non-window word of length m lies in Δ's class in G({n},{m})"
                    )));
                }
            }
        }
        let expected = if n == 1 { 1 } else { n as usize };
        if members != expected {
            return Err(Error::ValidationFailed(format!(
                "Δ's class has {members} length-m members, expected {expected} in G({n},{m})"
            )));
        }
        // every class with two distinct first letters is a Δ-multiple
        let mut firsts: HashMap<usize, std::collections::BTreeSet<u32>> = HashMap::new();
        for i in 0..ball.words.len() {
            if ball.words[i].is_empty() {
                continue;
            }
            let first = ball.words[i][0];
            let r = ball.find(i);
            firsts.entry(r).or_default().insert(first);
        }
        let roots: Vec<usize> = firsts
            .iter()
            .filter(|(_, f)| f.len() > 1)
            .map(|(&r, _)| r)
            .collect();
        for r in roots {
            let mut has_delta_prefix = false;
            for i in 0..ball.words.len() {
                if ball.words[i].len() < m as usize {
                    continue;
                }
                if ball.find(i) != r {
                    continue;
                }
                let prefix = ball.words[i][..m as usize].to_vec();
                if ball.class_of(&prefix) == Some(delta_class) {
                    has_delta_prefix = true;
                    break;
                }
            }
            if !has_delta_prefix {
                return Err(Error::ValidationFailed(format!(
                    "a two-headed class is not left-divisible by Δ in G({n},{m})"
                )));
            }
        }
    }

    // engine agreement: same class ⟺ same normal form
    let mut nf_by_class: HashMap<usize, NormalForm> = HashMap::new();
    let mut class_by_nf: HashMap<NormalForm, usize> = HashMap::new();
    for i in 0..ball.words.len() {
        let w = ball.words[i].clone();
        let r = ball.find(i);
        let nf = group.normal_form(&word_from_indices(&w))?;
        if let Some(prev) = nf_by_class.get(&r) {
            if *prev != nf {
                return Err(Error::ValidationFailed(format!(
                    "engine splits an oracle class in G({n},{m})"
                )));
            }
        } else {
            if let Some(&other) = class_by_nf.get(&nf) {
                if other != r {
                    return Err(Error::ValidationFailed(format!(
                        "engine merges distinct oracle classes in G({n},{m})"
                    )));
                }
            }
            class_by_nf.insert(nf.clone(), r);
            nf_by_class.insert(r, nf);
        }
    }
    Ok(())
}

pub(crate) fn window_word(params: CircularParams, start: u32) -> Vec<u32> {
    (0..params.m)
        .map(|j| (start - 1 + j) % params.n + 1)
        .collect()
}

pub(crate) fn word_from_indices(indices: &[u32]) -> Word {
    Word::from_letters(indices.iter().map(|&i| (crate::words::Gen::a(i), 1)))
        .expect("positive word")
}
