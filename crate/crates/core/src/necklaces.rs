//! Builders for the torus-necklace and key-chain braids and the
//! closed-form Artin actions of their factors.
//!
//! Every closed form here is certified against the crossing-by-crossing
//! Artin action in the oracle tests; the builders emit the literal words.

use std::collections::BTreeMap;

use crate::arith::decompose;
use crate::braids::BraidWord;
use crate::words::{range_product, Family, Gen, Word};
use crate::{Error, Result};

/// The named braids of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NecklaceKind {
    /// U_{s,t} = σ_s σ_{s+1} ⋯ σ_t
    U { s: u32, t: u32 },
    /// D_{s,t} = σ_t σ_{t-1} ⋯ σ_s
    D { s: u32, t: u32 },
    /// V_n = D_{1,n+1} U_{1,n+1} in B_{n+2}
    V { n: u32 },
    /// β_n = U_{1,n} σ_n in B_{n+1}
    Beta { n: u32 },
    /// Δ_n = U_{1,n-1} U_{1,n-2} ⋯ U_{1,1} in B_n
    HalfTwist { n: u32 },
    /// b_{n,m} = V_n β_n^m in B_{n+2}
    Necklace { n: u32, m: u32 },
    /// K(k) closure braid σ_k ⋯ σ_2 σ_1² σ_2 ⋯ σ_k in B_{k+1}
    KeyChain { k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NecklaceSpec {
    pub kind: NecklaceKind,
    pub ambient: u32,
}

impl NecklaceKind {
    /// The strand count the braid naturally lives on.
    pub fn natural_ambient(&self) -> Result<u32> {
        match *self {
            NecklaceKind::U { s, t } | NecklaceKind::D { s, t } => {
                if s == 0 || s > t {
                    return Err(Error::Param(format!("U/D need 1 <= s <= t, got ({s},{t})")));
                }
                Ok(t + 1)
            }
            NecklaceKind::V { n } => positive(n, "V").map(|n| n + 2),
            NecklaceKind::Beta { n } => positive(n, "beta").map(|n| n + 1),
            NecklaceKind::HalfTwist { n } => positive(n, "half twist"),
            NecklaceKind::Necklace { n, m } => {
                positive(n, "necklace")?;
                positive(m, "necklace")?;
                Ok(n + 2)
            }
            NecklaceKind::KeyChain { k } => Ok(k + 1),
        }
    }

    pub fn spec(self) -> Result<NecklaceSpec> {
        Ok(NecklaceSpec {
            ambient: self.natural_ambient()?,
            kind: self,
        })
    }
}

fn positive(v: u32, what: &str) -> Result<u32> {
    if v == 0 {
        Err(Error::Param(format!("{what} parameter must be positive")))
    } else {
        Ok(v)
    }
}

fn up(s: u32, t: u32, ambient: u32) -> Result<BraidWord> {
    BraidWord::new(ambient, (s..=t).map(|i| (i, 1)))
}

fn down(s: u32, t: u32, ambient: u32) -> Result<BraidWord> {
    BraidWord::new(ambient, (s..=t).rev().map(|i| (i, 1)))
}

/// The literal braid word for a spec.
pub fn build(spec: &NecklaceSpec) -> Result<BraidWord> {
    let natural = spec.kind.natural_ambient()?;
    let ambient = spec.ambient;
    match spec.kind {
        NecklaceKind::HalfTwist { .. } => {
            if ambient < natural {
                return Err(Error::Param(format!(
                    "half twist needs at least {natural} strands, got {ambient}"
                )));
            }
        }
        NecklaceKind::U { .. } | NecklaceKind::D { .. } => {
            if ambient < natural {
                return Err(Error::Param(format!(
                    "U/D need t <= ambient - 1, got ambient {ambient}"
                )));
            }
        }
        _ => {
            if ambient != natural {
                return Err(Error::Param(format!(
                    "this braid lives in B_{natural}, got ambient {ambient}"
                )));
            }
        }
    }
    match spec.kind {
        NecklaceKind::U { s, t } => up(s, t, ambient),
        NecklaceKind::D { s, t } => down(s, t, ambient),
        NecklaceKind::V { n } => down(1, n + 1, ambient)?.mul(&up(1, n + 1, ambient)?),
        NecklaceKind::Beta { n } => up(1, n, ambient)?.mul(&BraidWord::new(ambient, [(n, 1)])?),
        NecklaceKind::HalfTwist { n } => {
            let mut b = BraidWord::identity(ambient);
            for t in (1..n).rev() {
                b = b.mul(&up(1, t, ambient)?)?;
            }
            Ok(b)
        }
        NecklaceKind::Necklace { n, m } => {
            let v = build(&NecklaceKind::V { n }.spec()?)?;
            let beta = build(&NecklaceKind::Beta { n }.spec()?)?.embed(n + 2)?;
            v.mul(&beta.pow(m as i64))
        }
        NecklaceKind::KeyChain { k } => {
            if k == 0 {
                return Ok(BraidWord::identity(1));
            }
            let mut crossings: Vec<(u32, i8)> = (2..=k).rev().map(|i| (i, 1)).collect();
            crossings.push((1, 1));
            crossings.push((1, 1));
            crossings.extend((2..=k).map(|i| (i, 1)));
            BraidWord::new(ambient, crossings)
        }
    }
}

/// Braids whose Artin action has a displayed closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    U { s: u32, t: u32 },
    D { s: u32, t: u32 },
    V { n: u32 },
    BetaPow { n: u32, power: u32 },
    HalfTwist { n: u32 },
    Necklace { n: u32, m: u32 },
}

fn xp(lo: u32, hi: u32) -> Word {
    range_product(Family::X, lo, hi)
}

/// The image of every ambient generator under the closed-form action,
/// computed from the displayed formulas rather than from crossings.
pub fn closed_form_action(kind: ActionKind, ambient: u32) -> Result<BTreeMap<Gen, Word>> {
    let required = match kind {
        ActionKind::U { s, t } | ActionKind::D { s, t } => {
            if s == 0 || s > t {
                return Err(Error::Param(format!("U/D need 1 <= s <= t, got ({s},{t})")));
            }
            t + 1
        }
        ActionKind::V { n } => positive(n, "V")? + 2,
        ActionKind::BetaPow { n, .. } => positive(n, "beta")? + 1,
        ActionKind::HalfTwist { n } => positive(n, "half twist")?,
        ActionKind::Necklace { n, m } => {
            positive(n, "necklace")?;
            positive(m, "necklace")?;
            n + 2
        }
    };
    if ambient < required {
        return Err(Error::Param(format!(
            "closed form needs at least {required} strands, got {ambient}"
        )));
    }

    let mut map = BTreeMap::new();
    let mut set = |i: u32, w: Word| {
        map.insert(Gen::x(i), w);
    };
    for i in 1..=ambient {
        set(i, Word::gen(Gen::x(i)));
    }

    match kind {
        ActionKind::U { s, t } => {
            set(s, Word::gen(Gen::x(t + 1)).conjugate_by(&xp(s, t))?);
            for i in s + 1..=t + 1 {
                set(i, Word::gen(Gen::x(i - 1)));
            }
        }
        ActionKind::D { s, t } => {
            for i in s..=t {
                set(
                    i,
                    Word::gen(Gen::x(i + 1)).conjugate_by(&Word::gen(Gen::x(s)))?,
                );
            }
            set(t + 1, Word::gen(Gen::x(s)));
        }
        ActionKind::V { n } => {
            let h = Word::gen(Gen::x(n + 2)).conjugate_by(&xp(1, n + 1))?;
            for i in 1..=n + 1 {
                set(i, Word::gen(Gen::x(i)).conjugate_by(&h)?);
            }
            set(n + 2, h);
        }
        ActionKind::BetaPow { n, power } => {
            let delta = xp(1, n + 1);
            let (q, r) = (power / n, power % n);
            if power == 0 {
                // identity action
            } else if r == 0 {
                let conj = delta.pow(q as i64)?;
                for i in 1..=n + 1 {
                    set(i, Word::gen(Gen::x(i)).conjugate_by(&conj)?);
                }
            } else {
                let dq = delta.pow(q as i64)?;
                let dq1 = delta.pow(q as i64 + 1)?;
                for i in 1..=r {
                    set(i, Word::gen(Gen::x(n - r + i)).conjugate_by(&dq1)?);
                }
                for i in r + 1..=n {
                    set(i, Word::gen(Gen::x(i - r)).conjugate_by(&dq)?);
                }
                set(
                    n + 1,
                    Word::gen(Gen::x(n + 1)).conjugate_by(&dq.mul(&xp(n - r + 1, n))?)?,
                );
            }
        }
        ActionKind::HalfTwist { n } => {
            for i in 1..=n {
                set(i, Word::gen(Gen::x(n - i + 1)).conjugate_by(&xp(1, n - i))?);
            }
        }
        ActionKind::Necklace { n, m } => {
            let p = decompose(n as u64, m as u64)?;
            let (q, r) = (p.q as i64, p.r as u32);
            let delta = xp(1, n + 1);
            let full = xp(1, n + 2);
            let cq = full.mul(&delta.pow(q)?)?;
            let cq1 = full.mul(&delta.pow(q - 1)?)?;
            for i in 1..=r {
                set(i, Word::gen(Gen::x(n - r + i)).conjugate_by(&cq)?);
            }
            for i in r + 1..=n {
                set(i, Word::gen(Gen::x(i - r)).conjugate_by(&cq1)?);
            }
            set(
                n + 1,
                Word::gen(Gen::x(n + 1)).conjugate_by(&cq1.mul(&xp(n - r + 1, n))?)?,
            );
            set(n + 2, Word::gen(Gen::x(n + 2)).conjugate_by(&delta)?);
        }
    }
    Ok(map)
}

/// The braid realizing an [`ActionKind`], embedded in the ambient count.
pub fn action_braid(kind: ActionKind, ambient: u32) -> Result<BraidWord> {
    let b = match kind {
        ActionKind::U { s, t } => build(&NecklaceSpec {
            kind: NecklaceKind::U { s, t },
            ambient: t + 1,
        })?,
        ActionKind::D { s, t } => build(&NecklaceSpec {
            kind: NecklaceKind::D { s, t },
            ambient: t + 1,
        })?,
        ActionKind::V { n } => build(&NecklaceKind::V { n }.spec()?)?,
        ActionKind::BetaPow { n, power } => {
            build(&NecklaceKind::Beta { n }.spec()?)?.pow(power as i64)
        }
        ActionKind::HalfTwist { n } => build(&NecklaceKind::HalfTwist { n }.spec()?)?,
        ActionKind::Necklace { n, m } => build(&NecklaceKind::Necklace { n, m }.spec()?)?,
    };
    b.embed(ambient)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let b = build(&NecklaceKind::Necklace { n: 2, m: 3 }.spec().unwrap()).unwrap();
        assert_eq!(
            b.to_string(),
            "s3.s2.s1.s1.s2.s3.s1.s2.s2.s1.s2.s2.s1.s2.s2"
        );
        assert_eq!(b.strands(), 4);

        let k = build(&NecklaceKind::KeyChain { k: 2 }.spec().unwrap()).unwrap();
        assert_eq!(k.to_string(), "s2.s1.s1.s2");
        assert_eq!(k.strands(), 3);

        let d = build(&NecklaceKind::HalfTwist { n: 1 }.spec().unwrap()).unwrap();
        assert_eq!(d, BraidWord::identity(1));

        assert!(build(&NecklaceSpec {
            kind: NecklaceKind::U { s: 2, t: 1 },
            ambient: 4
        })
        .is_err());
        assert!(build(&NecklaceSpec {
            kind: NecklaceKind::V { n: 2 },
            ambient: 9
        })
        .is_err());
    }

    #[test]
    fn necklace_permutation_components() {
        let b = build(&NecklaceKind::Necklace { n: 2, m: 3 }.spec().unwrap()).unwrap();
        let cycles = b.underlying_permutation().cycles();
        assert_eq!(cycles, vec![vec![1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn closed_form_paper_values() {
        let u = closed_form_action(ActionKind::U { s: 1, t: 2 }, 4).unwrap();
        assert_eq!(u[&Gen::x(1)].to_string(), "x1.x2.x3.x2^-1.x1^-1");
        assert_eq!(u[&Gen::x(2)].to_string(), "x1");
        assert_eq!(u[&Gen::x(3)].to_string(), "x2");
        assert_eq!(u[&Gen::x(4)].to_string(), "x4");

        let h = closed_form_action(ActionKind::HalfTwist { n: 3 }, 5).unwrap();
        assert_eq!(h[&Gen::x(2)].to_string(), "x1.x2.x1^-1");
        assert_eq!(h[&Gen::x(3)].to_string(), "x1");
        assert_eq!(h[&Gen::x(4)].to_string(), "x4");

        let b = closed_form_action(ActionKind::Necklace { n: 2, m: 3 }, 4).unwrap();
        assert_eq!(b[&Gen::x(4)].to_string(), "x1.x2.x3.x4.x3^-1.x2^-1.x1^-1");
        assert_eq!(
            b[&Gen::x(2)].to_string(),
            "x1.x2.x3.x4.x1.x4^-1.x3^-1.x2^-1.x1^-1"
        );
    }

    #[test]
    fn closed_form_matches_artin_small() {
        // the full range runs in the acceptance suite
        for n in 1..=3u32 {
            for m in 1..=5u32 {
                let kind = ActionKind::Necklace { n, m };
                let ambient = n + 2;
                let map = closed_form_action(kind, ambient).unwrap();
                let braid = action_braid(kind, ambient).unwrap();
                for i in 1..=ambient {
                    let w = Word::gen(Gen::x(i));
                    assert_eq!(
                        map[&Gen::x(i)],
                        braid.artin_act(&w).unwrap(),
                        "n={n} m={m} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn d_fixes_window_product() {
        for (s, t, ambient) in [(1, 3, 5), (2, 4, 6), (1, 1, 3)] {
            let map = closed_form_action(ActionKind::D { s, t }, ambient).unwrap();
            let prod = xp(s, t + 1);
            assert_eq!(prod.substitute(&map).unwrap(), prod);
        }
    }

    #[test]
    fn half_twist_window_images() {
        // ρ_{Δ_n}(x_i ⋯ x_n) = x_1 ⋯ x_{n-i+1}
        for n in 1..=6u32 {
            let map = closed_form_action(ActionKind::HalfTwist { n }, n + 2).unwrap();
            for i in 1..=n {
                let img = xp(i, n).substitute(&map).unwrap();
                assert_eq!(img, xp(1, n - i + 1), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn beta_pow_branches_agree_with_oracle() {
        for n in 1..=4u32 {
            for power in 0..=2 * n + 3 {
                let kind = ActionKind::BetaPow { n, power };
                for ambient in [n + 1, n + 3] {
                    let map = closed_form_action(kind, ambient).unwrap();
                    let braid = action_braid(kind, ambient).unwrap();
                    for i in 1..=ambient {
                        let w = Word::gen(Gen::x(i));
                        assert_eq!(
                            map[&Gen::x(i)],
                            braid.artin_act(&w).unwrap(),
                            "n={n} p={power} i={i} ambient={ambient}"
                        );
                    }
                }
            }
        }
    }
}
