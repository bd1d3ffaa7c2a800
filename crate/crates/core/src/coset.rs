//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! Deterministic HLT strategy: cosets are processed in numeric order,
//! relators in presentation order, and new cosets are numbered
//! sequentially. When the table limit is reached a deduction-only
//! lookahead pass runs before concluding the enumeration is inconclusive.

use std::collections::VecDeque;

/// Outcome of an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enumeration {
    /// The table closed; the group order.
    Order(u64),
    /// The coset limit was reached; the group may be infinite or large.
    LimitExceeded,
}

struct Table {
    ncols: usize,
    rows: Vec<Vec<Option<u32>>>,
    parent: Vec<u32>,
    live: usize,
    queue: VecDeque<(u32, u32)>,
    limit: usize,
}

/// column for a signed generator (1-based, negative = inverse)
fn col(g: i32) -> usize {
    let base = 2 * (g.unsigned_abs() as usize - 1);
    if g > 0 {
        base
    } else {
        base + 1
    }
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl Table {
    fn new(num_gens: usize, limit: usize) -> Table {
        let mut t = Table {
            ncols: 2 * num_gens,
            rows: Vec::new(),
            parent: Vec::new(),
            live: 0,
            queue: VecDeque::new(),
            limit,
        };
        t.new_coset();
        t
    }

    fn new_coset(&mut self) -> Option<u32> {
        if self.rows.len() >= self.limit {
            return None;
        }
        let id = self.rows.len() as u32;
        self.rows.push(vec![None; self.ncols]);
        self.parent.push(id);
        self.live += 1;
        Some(id)
    }

    fn rep(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let p = self.parent[a as usize];
            self.parent[a as usize] = self.parent[p as usize];
            a = self.parent[a as usize];
        }
        a
    }

    fn get(&mut self, a: u32, c: usize) -> Option<u32> {
        let a = self.rep(a);
        self.rows[a as usize][c].map(|v| self.rep(v))
    }

    /// record a·c = b (both canonical), queueing coincidences
    fn set(&mut self, a: u32, c: usize, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        match self.rows[a as usize][c] {
            Some(e) => {
                let e = self.rep(e);
                if e != b {
                    self.queue.push_back((e, b));
                }
            }
            None => self.rows[a as usize][c] = Some(b),
        }
        match self.rows[b as usize][inv_col(c)] {
            Some(e) => {
                let e = self.rep(e);
                if e != a {
                    self.queue.push_back((e, a));
                }
            }
            None => self.rows[b as usize][inv_col(c)] = Some(a),
        }
    }

    fn process_coincidences(&mut self) {
        while let Some((a, b)) = self.queue.pop_front() {
            let a = self.rep(a);
            let b = self.rep(b);
            if a == b {
                continue;
            }
            let (keep, dead) = if a < b { (a, b) } else { (b, a) };
            self.parent[dead as usize] = keep;
            self.live -= 1;
            for c in 0..self.ncols {
                if let Some(d) = self.rows[dead as usize][c] {
                    let d = self.rep(d);
                    self.set(keep, c, d);
                }
            }
        }
    }

    /// Scan a relator from a coset; with `fill` new cosets may be defined.
    /// Returns false when a definition was needed but the limit is reached.
    fn scan(&mut self, alpha: u32, relator: &[i32], fill: bool) -> bool {
        loop {
            let alpha = self.rep(alpha);
            // forward
            let mut f = alpha;
            let mut i = 0;
            while i < relator.len() {
                match self.get(f, col(relator[i])) {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == relator.len() {
                if f != alpha {
                    self.queue.push_back((f, alpha));
                    self.process_coincidences();
                }
                return true;
            }
            // backward
            let mut b = alpha;
            let mut j = relator.len() - 1;
            while j > i {
                match self.get(b, inv_col(col(relator[j]))) {
                    Some(next) => {
                        b = next;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                // deduction closes the gap
                self.set(f, col(relator[i]), b);
                self.process_coincidences();
                return true;
            }
            if !fill {
                return true;
            }
            let Some(new) = self.new_coset() else {
                return false;
            };
            self.set(f, col(relator[i]), new);
            self.process_coincidences();
        }
    }

    fn is_complete(&mut self) -> bool {
        for a in 0..self.rows.len() as u32 {
            if self.rep(a) != a {
                continue;
            }
            for c in 0..self.ncols {
                if self.get(a, c).is_none() {
                    return false;
                }
            }
        }
        true
    }
}

/// Enumerate cosets of the trivial subgroup. Relators are sequences of
/// signed 1-based generator numbers.
pub fn enumerate(num_gens: usize, relators: &[Vec<i32>], limit: usize) -> Enumeration {
    if num_gens == 0 {
        return Enumeration::Order(1);
    }
    let mut t = Table::new(num_gens, limit.max(1));
    let mut alpha: u32 = 0;
    while (alpha as usize) < t.rows.len() {
        if t.rep(alpha) != alpha {
            alpha += 1;
            continue;
        }
        for relator in relators {
            if !t.scan(alpha, relator, true) {
                return lookahead(&mut t, relators);
            }
            if t.rep(alpha) != alpha {
                break;
            }
        }
        if t.rep(alpha) != alpha {
            alpha += 1;
            continue;
        }
        for c in 0..t.ncols {
            if t.get(alpha, c).is_none() {
                let Some(new) = t.new_coset() else {
                    return lookahead(&mut t, relators);
                };
                t.set(alpha, c, new);
                t.process_coincidences();
                if t.rep(alpha) != alpha {
                    break;
                }
            }
        }
        alpha += 1;
    }
    Enumeration::Order(t.live as u64)
}

/// Deduction-only pass after the limit is hit.
fn lookahead(t: &mut Table, relators: &[Vec<i32>]) -> Enumeration {
    loop {
        let before = t.live;
        for a in 0..t.rows.len() as u32 {
            if t.rep(a) != a {
                continue;
            }
            for relator in relators {
                t.scan(a, relator, false);
            }
        }
        if t.live == before {
            break;
        }
    }
    if t.is_complete() {
        Enumeration::Order(t.live as u64)
    } else {
        Enumeration::LimitExceeded
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_cyclic() {
        // <a | a> has order 1
        assert_eq!(enumerate(1, &[vec![1]], 100), Enumeration::Order(1));
        // <a | a^5> has order 5
        assert_eq!(enumerate(1, &[vec![1; 5]], 100), Enumeration::Order(5));
        // free group of rank 1 does not close
        assert_eq!(enumerate(1, &[], 50), Enumeration::LimitExceeded);
    }

    #[test]
    fn symmetric_and_dihedral() {
        // S_3 = <a,b | a^2, b^2, (ab)^3>
        let relators = vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]];
        assert_eq!(enumerate(2, &relators, 1000), Enumeration::Order(6));
        // D_5 = <r,s | r^5, s^2, (rs)^2>
        let relators = vec![vec![1; 5], vec![2, 2], vec![1, 2, 1, 2]];
        assert_eq!(enumerate(2, &relators, 1000), Enumeration::Order(10));
        // quaternion group <a,b | a^4, a^2 b^-2, b^-1 a b a>
        let relators = vec![vec![1; 4], vec![1, 1, -2, -2], vec![-2, 1, 2, 1]];
        assert_eq!(enumerate(2, &relators, 1000), Enumeration::Order(8));
    }

    #[test]
    fn deterministic() {
        let relators = vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]];
        let a = enumerate(2, &relators, 1000);
        let b = enumerate(2, &relators, 1000);
        assert_eq!(a, b);
    }
}
