//! Integer helpers behind the parameter bookkeeping: the gcd decomposition
//! d = n ∧ m with m = qn + r, the modular-inverse notation n_(m), the
//! residue notation [a]_b and Bézout pairs.

use crate::{Error, Result};

/// Euclidean data attached to a parameter pair (n, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamDecomposition {
    pub n: u64,
    pub m: u64,
    /// d = gcd(n, m)
    pub d: u64,
    /// n′ = n / d
    pub n_prime: u64,
    /// m′ = m / d
    pub m_prime: u64,
    /// quotient of m = q·n + r
    pub q: u64,
    /// remainder of m = q·n + r, 0 ≤ r < n
    pub r: u64,
    /// r′ = r / d (gcd(n, r) = gcd(n, m))
    pub r_prime: u64,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Decompose a parameter pair into its gcd and euclidean data.
pub fn decompose(n: u64, m: u64) -> Result<ParamDecomposition> {
    if n == 0 || m == 0 {
        return Err(Error::NonPositive("decompose"));
    }
    let d = gcd(n, m);
    let q = m / n;
    let r = m % n;
    debug_assert_eq!(gcd(n, r), d);
    Ok(ParamDecomposition {
        n,
        m,
        d,
        n_prime: n / d,
        m_prime: m / d,
        q,
        r,
        r_prime: r / d,
    })
}

/// n_(m): the unique k in {1,…,m−1} with n·k ≡ 1 (mod m), and 1 when m = 1.
pub fn mod_inverse(n: u64, m: u64) -> Result<u64> {
    if n == 0 || m == 0 {
        return Err(Error::NonPositive("mod_inverse"));
    }
    if gcd(n, m) != 1 {
        return Err(Error::NotCoprime(n, m));
    }
    if m == 1 {
        return Ok(1);
    }
    // extended euclid on (n mod m, m)
    let (mut old_r, mut r) = ((n % m) as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    let k = old_s.rem_euclid(m as i64) as u64;
    debug_assert_eq!((n % m) * k % m, 1);
    Ok(k)
}

/// [a]_b: the unique representative of a mod b in {1,…,b}.
pub fn residue(a: i64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::NonPositive("residue"));
    }
    let b = b as i64;
    let mut r = a % b;
    if r <= 0 {
        r += b;
    }
    Ok(r as u64)
}

/// The pair (x, y) with x·n′_(m′) + y·(m′ − n′_(m′)) = 1, |x| minimal and
/// ties broken toward x ≥ 0.
pub fn bezout_pair(n_prime: u64, m_prime: u64) -> Result<(i64, i64)> {
    if n_prime == 0 || m_prime == 0 {
        return Err(Error::NonPositive("bezout_pair"));
    }
    if gcd(n_prime, m_prime) != 1 {
        return Err(Error::NotCoprime(n_prime, m_prime));
    }
    let a = mod_inverse(n_prime, m_prime)? as i64;
    let b = m_prime as i64 - a;
    if b == 0 {
        // m′ = 1 forces a = 1; the y-coefficient is irrelevant.
        return Ok((1, 0));
    }
    // gcd(a, b) = gcd(a, m′) = 1, so x ranges over a residue class mod b.
    let x0 = if b == 1 {
        0
    } else {
        mod_inverse(a.rem_euclid(b) as u64, b as u64)? as i64 % b
    };
    let candidates = [x0, x0 - b];
    let x = *candidates
        .iter()
        .min_by_key(|&&x| (x.abs(), if x >= 0 { 0 } else { 1 }))
        .unwrap();
    let y = (1 - x * a) / b;
    debug_assert_eq!(x * a + y * b, 1);
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_examples() {
        let p = decompose(3, 4).unwrap();
        assert_eq!(
            (p.d, p.n_prime, p.m_prime, p.q, p.r, p.r_prime),
            (1, 3, 4, 1, 1, 1)
        );
        let p = decompose(4, 6).unwrap();
        assert_eq!(
            (p.d, p.n_prime, p.m_prime, p.q, p.r, p.r_prime),
            (2, 2, 3, 1, 2, 1)
        );
        let p = decompose(2, 2).unwrap();
        assert_eq!(
            (p.d, p.n_prime, p.m_prime, p.q, p.r, p.r_prime),
            (2, 1, 1, 1, 0, 0)
        );
        assert_eq!(decompose(0, 3), Err(Error::NonPositive("decompose")));
        assert_eq!(decompose(3, 0), Err(Error::NonPositive("decompose")));
    }

    #[test]
    fn decompose_invariants() {
        for n in 1..=50u64 {
            for m in 1..=50u64 {
                let p = decompose(n, m).unwrap();
                assert_eq!(p.d, gcd(n, m));
                assert_eq!(p.n, p.d * p.n_prime);
                assert_eq!(p.m, p.d * p.m_prime);
                assert_eq!(p.m, p.q * p.n + p.r);
                assert!(p.r < p.n);
                assert_eq!(p.r, p.d * p.r_prime);
                assert_eq!(gcd(p.n_prime, p.m_prime), 1);
            }
        }
    }

    // independent oracle: scan k = 1..m for n·k ≡ 1
    fn inverse_by_scan(n: u64, m: u64) -> u64 {
        if m == 1 {
            return 1;
        }
        (1..m).find(|k| n * k % m == 1).unwrap()
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 4).unwrap(), inverse_by_scan(3, 4));
        assert_eq!(mod_inverse(3, 4).unwrap(), 3);
        assert_eq!(mod_inverse(7, 1).unwrap(), 1);
        assert_eq!(mod_inverse(2, 5).unwrap(), inverse_by_scan(2, 5));
        assert_eq!(mod_inverse(2, 5).unwrap(), 3);
        assert_eq!(mod_inverse(2, 4), Err(Error::NotCoprime(2, 4)));
    }

    #[test]
    fn mod_inverse_and_lemma_521() {
        for n in 2..=50u64 {
            for m in 2..=50u64 {
                if gcd(n, m) != 1 {
                    continue;
                }
                let nm = mod_inverse(n, m).unwrap();
                let mn = mod_inverse(m, n).unwrap();
                assert_eq!(n * nm % m, 1);
                // n·n_(m) + m·m_(n) = nm + 1
                assert_eq!(n * nm + m * mn, n * m + 1);
            }
        }
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(6, 3).unwrap(), 3);
        assert_eq!(residue(5, 3).unwrap(), 2);
        assert_eq!(residue(1, 5).unwrap(), 1);
        for a in -100..=100i64 {
            for b in 1..=20u64 {
                let r = residue(a, b).unwrap();
                assert!(1 <= r && r <= b);
                assert_eq!((a - r as i64).rem_euclid(b as i64), 0);
            }
        }
    }

    #[test]
    fn bezout_examples() {
        // m′ = 1 forces the convention branch
        assert_eq!(bezout_pair(3, 1).unwrap(), (1, 0));
        // n′=3, m′=5: n′_(m′)=2, so 2x + 3y = 1 with |x| minimal
        assert_eq!(bezout_pair(3, 5).unwrap(), (-1, 1));
        // n′=2, m′=3: n′_(m′)=2, so 2x + 1y = 1; |x| minimal gives x = 0
        assert_eq!(bezout_pair(2, 3).unwrap(), (0, 1));
        assert_eq!(bezout_pair(2, 4), Err(Error::NotCoprime(2, 4)));
    }

    #[test]
    fn bezout_equation_holds() {
        for n in 1..=50u64 {
            for m in 1..=50u64 {
                if gcd(n, m) != 1 {
                    continue;
                }
                let a = mod_inverse(n, m).unwrap() as i64;
                let (x, y) = bezout_pair(n, m).unwrap();
                assert_eq!(x * a + y * (m as i64 - a), 1, "n'={n} m'={m}");
                // minimality of |x| among nearby solutions
                let b = m as i64 - a;
                if b != 0 {
                    for other in [x - b, x + b] {
                        assert!(
                            x.abs() < other.abs() || (x.abs() == other.abs() && x >= other),
                            "n'={n} m'={m}: {x} vs {other}"
                        );
                    }
                }
            }
        }
    }
}
