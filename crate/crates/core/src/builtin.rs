//! The built-in presentation families: circular groups, J-braid groups
//! and their quotient flavors, J-reflection groups, torus knot and torus
//! link groups, the commuting-frame necklace presentations, the all-pairs
//! J-braid form, and the augmented circular presentation of the internal
//! quotient.

use std::collections::BTreeSet;

use crate::arith::{decompose, mod_inverse};
use crate::braids::BraidWord;
use crate::necklaces::{build, NecklaceKind};
use crate::presentations::{from_braid, quotient_generators, FinitePresentation, Meta};
use crate::words::{range_product, Family, Gen, Word};
use crate::{Error, Result};

/// The four torus-necklace flavors, named by which core circles remain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// both circles (L**, B**)
    Full,
    /// internal-core circle kept, z killed (L_*, B_*)
    Internal,
    /// external-core circle kept, y killed (L^*, B^*)
    External,
    /// bare torus link (L, B)
    Plain,
}

impl Flavor {
    pub fn name(&self) -> &'static str {
        match self {
            Flavor::Full => "full",
            Flavor::Internal => "internal",
            Flavor::External => "external",
            Flavor::Plain => "plain",
        }
    }

    pub fn parse(s: &str) -> Result<Flavor> {
        match s {
            "full" => Ok(Flavor::Full),
            "internal" => Ok(Flavor::Internal),
            "external" => Ok(Flavor::External),
            "plain" => Ok(Flavor::Plain),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }

    /// Generators killed by the quotient.
    pub fn killed(&self) -> BTreeSet<Gen> {
        match self {
            Flavor::Full => BTreeSet::new(),
            Flavor::Internal => BTreeSet::from([Gen::z()]),
            Flavor::External => BTreeSet::from([Gen::y()]),
            Flavor::Plain => BTreeSet::from([Gen::y(), Gen::z()]),
        }
    }
}

fn xs(lo: u32, hi: u32) -> Word {
    range_product(Family::X, lo, hi)
}

/// The circular-group presentation: all length-m windows over a_1 … a_n
/// are equal, in adjacent-pair form.
pub fn circular(n: u64, m: u64) -> Result<FinitePresentation> {
    if n == 0 || m == 0 {
        return Err(Error::NonPositive("circular"));
    }
    let generators: Vec<Gen> = (1..=n as u32).map(Gen::a).collect();
    let relations = (1..n)
        .map(|i| Ok((window(i, n, m)?, window(i + 1, n, m)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut meta = Meta::family("circular");
    meta.n = Some(n);
    meta.m = Some(m);
    FinitePresentation::new(generators, relations, meta)
}

/// The window a_i a_{i+1} ⋯ a_{i+m-1} with indices mod n.
pub fn window(start: u64, n: u64, m: u64) -> Result<Word> {
    let mut w = Word::identity();
    for j in 0..m {
        let idx = (start - 1 + j) % n + 1;
        w.push(Gen::a(idx as u32), 1)?;
    }
    Ok(w)
}

/// δ = x_1 ⋯ x_n · y
fn delta_word(n: u32) -> Word {
    xs(1, n).mul(&Word::gen(Gen::y())).expect("delta")
}

/// The J-braid relations in adjacent-pair form over x_1 … x_n, y, z.
fn jbraid_relations(n: u64, m: u64) -> Result<Vec<(Word, Word)>> {
    let p = decompose(n, m)?;
    let (n, q, r) = (n as u32, p.q as i64, p.r as u32);
    let delta = delta_word(n);
    let y = Word::gen(Gen::y());
    let z = Word::gen(Gen::z());
    let mut relations = Vec::new();
    // δ z = z δ
    relations.push((delta.mul(&z)?, z.mul(&delta)?));
    let chain = |i: u32, power: i64, tail_hi: i64| -> Result<Word> {
        let mut w = xs(i, n);
        w.append(&y)?;
        w.append(&z)?;
        w.append(&delta.pow(power)?)?;
        if tail_hi >= 1 {
            w.append(&xs(1, tail_hi as u32))?;
        }
        Ok(w)
    };
    for i in 1..=n - r {
        relations.push((
            chain(i + 1, q - 1, i as i64 + r as i64)?,
            chain(i, q - 1, i as i64 + r as i64 - 1)?,
        ));
    }
    for i in n - r + 1..=n {
        relations.push((
            chain(i + 1, q, i as i64 + r as i64 - n as i64)?,
            chain(i, q, i as i64 + r as i64 - n as i64 - 1)?,
        ));
    }
    Ok(relations)
}

/// Presentation of a J-braid group in the requested flavor.
///
/// Flavors are only guaranteed to present the link group under the
/// hypotheses internal: n ≥ 2, external: m ≥ 2, plain: n, m ≥ 2;
/// `force` emits the quotient presentation regardless.
pub fn jbraid(n: u64, m: u64, flavor: Flavor, force: bool) -> Result<FinitePresentation> {
    if !force {
        let ok = match flavor {
            Flavor::Full => true,
            Flavor::Internal => n >= 2,
            Flavor::External => m >= 2,
            Flavor::Plain => n >= 2 && m >= 2,
        };
        if !ok {
            return Err(Error::Param(format!(
                "flavor {} is not defined for (n,m)=({n},{m}); pass force to emit anyway",
                flavor.name()
            )));
        }
    }
    let mut generators: Vec<Gen> = (1..=n as u32).map(Gen::x).collect();
    generators.push(Gen::y());
    generators.push(Gen::z());
    let full = FinitePresentation::new(generators, jbraid_relations(n, m)?, Meta::default())?;
    let mut p = quotient_generators(&full, &flavor.killed())?;
    p.meta = Meta::family("jbraid");
    p.meta.n = Some(n);
    p.meta.m = Some(m);
    p.meta.flavor = Some(flavor.name().to_string());
    Ok(p)
}

/// The all-pairs form of the full J-braid presentation, including the
/// redundant commutation of y with the common w-word.
pub fn jbraid_all_pairs(n: u64, m: u64) -> Result<FinitePresentation> {
    let p = decompose(n, m)?;
    let (n32, q, r) = (n as u32, p.q as i64, p.r as u32);
    let delta = delta_word(n32);
    let y = Word::gen(Gen::y());
    let z = Word::gen(Gen::z());

    let word_upper = |i: u32| -> Result<Word> {
        // x_i ⋯ x_n y z δ^q x_1 ⋯ x_{i+r-n-1}
        let mut w = xs(i, n32);
        w.append(&y)?;
        w.append(&z)?;
        w.append(&delta.pow(q)?)?;
        let hi = i as i64 + r as i64 - n as i64 - 1;
        if hi >= 1 {
            w.append(&xs(1, hi as u32))?;
        }
        Ok(w)
    };
    let word_lower = |i: u32| -> Result<Word> {
        // x_i ⋯ x_n y z δ^{q-1} x_1 ⋯ x_{i+r-1}
        let mut w = xs(i, n32);
        w.append(&y)?;
        w.append(&z)?;
        w.append(&delta.pow(q - 1)?)?;
        let hi = i as i64 + r as i64 - 1;
        if hi >= 1 {
            w.append(&xs(1, hi as u32))?;
        }
        Ok(w)
    };

    let mut relations = Vec::new();
    for i in n32 - r + 1..=n32 + 1 {
        for j in i + 1..=n32 + 1 {
            relations.push((word_upper(i)?, word_upper(j)?));
        }
    }
    for i in 1..=n32 - r + 1 {
        for j in i + 1..=n32 - r + 1 {
            relations.push((word_lower(i)?, word_lower(j)?));
        }
    }
    // y δ z δ^{q-1} x_1 ⋯ x_r = δ z δ^{q-1} x_1 ⋯ x_r y
    let mut w0 = delta.mul(&z)?;
    w0.append(&delta.pow(q - 1)?)?;
    w0.append(&xs(1, r))?;
    relations.push((y.mul(&w0)?, w0.mul(&y)?));
    relations.push((z.mul(&delta)?, delta.mul(&z)?));

    let mut generators: Vec<Gen> = (1..=n32).map(Gen::x).collect();
    generators.push(Gen::y());
    generators.push(Gen::z());
    let mut meta = Meta::family("jbraid-allpairs");
    meta.n = Some(n);
    meta.m = Some(m);
    FinitePresentation::new(generators, relations, meta)
}

/// Presentation of the (generalised) J-reflection group W_b^c(k, bn, cm):
/// the J-braid relations plus the torsion relations x_i^k = y^b = z^c = 1.
pub fn jreflection(
    k: u64,
    b: u64,
    n: u64,
    c: u64,
    m: u64,
    force: bool,
) -> Result<FinitePresentation> {
    if n == 0 || m == 0 || k == 0 || b == 0 || c == 0 {
        return Err(Error::NonPositive("jreflection"));
    }
    if !force && (k < 2 || b * n < 2 || c * m < 2) {
        return Err(Error::Param(format!(
            "jreflection needs k, bn, cm >= 2, got ({k},{},{})",
            b * n,
            c * m
        )));
    }
    let mut generators: Vec<Gen> = (1..=n as u32).map(Gen::x).collect();
    generators.push(Gen::y());
    generators.push(Gen::z());
    let mut relations = Vec::new();
    for i in 1..=n as u32 {
        relations.push((Word::letter(Gen::x(i), k as i64), Word::identity()));
    }
    relations.push((Word::letter(Gen::y(), b as i64), Word::identity()));
    relations.push((Word::letter(Gen::z(), c as i64), Word::identity()));
    relations.extend(jbraid_relations(n, m)?);
    let mut meta = Meta::family("jreflection");
    meta.n = Some(n);
    meta.m = Some(m);
    meta.k = Some(k);
    meta.b = Some(b);
    meta.c = Some(c);
    FinitePresentation::new(generators, relations, meta)
}

/// ⟨x, y | x^n = y^m⟩, the torus knot group for coprime parameters.
pub fn torus_knot(n: u64, m: u64) -> Result<FinitePresentation> {
    if n == 0 || m == 0 {
        return Err(Error::NonPositive("torus_knot"));
    }
    let x = Gen::new(Family::X, None);
    let y = Gen::new(Family::Y, None);
    let mut meta = Meta::family("torusknot");
    meta.n = Some(n);
    meta.m = Some(m);
    FinitePresentation::new(
        vec![x.clone(), y.clone()],
        vec![(Word::letter(x, n as i64), Word::letter(y, m as i64))],
        meta,
    )
}

/// The meridional torus-link presentation
/// ⟨x, y, m_1 … m_d | x^{n'} = y^{m'}, m_1⋯m_d = y^r x^s, [m_i, x^{n'}]⟩
/// with n'r + m's = 1.
pub fn torus_link(n: u64, m: u64) -> Result<FinitePresentation> {
    let p = decompose(n, m)?;
    let (r, s) = link_exponents(p.n_prime, p.m_prime)?;
    let x = Gen::new(Family::X, None);
    let y = Gen::new(Family::Y, None);
    let mut generators = vec![x.clone(), y.clone()];
    generators.extend((1..=p.d as u32).map(Gen::m));
    let xn = Word::letter(x.clone(), p.n_prime as i64);
    let mut relations = vec![(xn.clone(), Word::letter(y.clone(), p.m_prime as i64))];
    let mprod = Word::from_letters((1..=p.d as u32).map(|i| (Gen::m(i), 1)))?;
    let rhs = Word::letter(y, r).mul(&Word::letter(x, s))?;
    relations.push((mprod, rhs));
    for i in 1..=p.d as u32 {
        let mi = Word::gen(Gen::m(i));
        relations.push((mi.mul(&xn)?, xn.mul(&mi)?));
    }
    let mut meta = Meta::family("toruslink");
    meta.n = Some(n);
    meta.m = Some(m);
    FinitePresentation::new(generators, relations, meta)
}

/// Deterministic (r, s) with n'r + m's = 1: |r| minimal, ties toward r ≥ 0.
pub fn link_exponents(n_prime: u64, m_prime: u64) -> Result<(i64, i64)> {
    let np = n_prime as i64;
    let mp = m_prime as i64;
    if m_prime == 1 {
        return Ok((0, 1));
    }
    let r0 = mod_inverse(n_prime % m_prime, m_prime)? as i64;
    let candidates = [r0, r0 - mp];
    let r = *candidates
        .iter()
        .min_by_key(|&&r| (r.abs(), if r >= 0 { 0 } else { 1 }))
        .unwrap();
    let s = (1 - np * r) / mp;
    debug_assert_eq!(np * r + mp * s, 1);
    Ok((r, s))
}

/// The augmented circular presentation of the internal quotient:
/// G(d+2, d+2) windows plus a_2^{m'} = (a_1 ⋯ a_{d+2})^{m' - n'_(m')}.
pub fn cor526(n: u64, m: u64) -> Result<FinitePresentation> {
    let p = decompose(n, m)?;
    let size = p.d + 2;
    let base = circular(size, size)?;
    let npmp = mod_inverse(p.n_prime, p.m_prime)?;
    let alpha = window(1, size, size)?;
    let extra = (
        Word::letter(Gen::a(2), p.m_prime as i64),
        alpha.pow(p.m_prime as i64 - npmp as i64)?,
    );
    let mut relations = base.relations;
    relations.push(extra);
    let mut meta = Meta::family("cor526");
    meta.n = Some(n);
    meta.m = Some(m);
    FinitePresentation::new(base.generators, relations, meta)
}

/// Commuting-frame presentation of the full necklace group:
/// ⟨x, y, z, t | x^n z^m = y^m t^n, xz = zx, yt = ty⟩.
pub fn frame_full(n: u64, m: u64) -> Result<FinitePresentation> {
    if n == 0 || m == 0 {
        return Err(Error::NonPositive("frame_full"));
    }
    let x = Gen::new(Family::X, None);
    let y = Gen::new(Family::Y, None);
    let z = Gen::z();
    let t = Gen::new(Family::T, None);
    let lhs = Word::letter(x.clone(), n as i64).mul(&Word::letter(z.clone(), m as i64))?;
    let rhs = Word::letter(y.clone(), m as i64).mul(&Word::letter(t.clone(), n as i64))?;
    let relations = vec![
        (lhs, rhs),
        (
            Word::gen(x.clone()).mul(&Word::gen(z.clone()))?,
            Word::gen(z.clone()).mul(&Word::gen(x.clone()))?,
        ),
        (
            Word::gen(y.clone()).mul(&Word::gen(t.clone()))?,
            Word::gen(t.clone()).mul(&Word::gen(y.clone()))?,
        ),
    ];
    let mut meta = Meta::family("frame-full");
    meta.n = Some(n);
    meta.m = Some(m);
    FinitePresentation::new(vec![x, y, z, t], relations, meta)
}

/// Commuting-frame presentation of the internal necklace group:
/// ⟨x, y, t | x^n = y^m t^n, yt = ty⟩.
pub fn frame_internal(n: u64, m: u64) -> Result<FinitePresentation> {
    if n == 0 || m == 0 {
        return Err(Error::NonPositive("frame_internal"));
    }
    let x = Gen::new(Family::X, None);
    let y = Gen::new(Family::Y, None);
    let t = Gen::new(Family::T, None);
    let relations = vec![
        (
            Word::letter(x.clone(), n as i64),
            Word::letter(y.clone(), m as i64).mul(&Word::letter(t.clone(), n as i64))?,
        ),
        (
            Word::gen(y.clone()).mul(&Word::gen(t.clone()))?,
            Word::gen(t.clone()).mul(&Word::gen(y.clone()))?,
        ),
    ];
    let mut meta = Meta::family("frame-internal");
    meta.n = Some(n);
    meta.m = Some(m);
    FinitePresentation::new(vec![x, y, t], relations, meta)
}

/// The raw meridian presentation of a torus necklace in a given flavor,
/// computed from the braid closure with the appropriate strands removed.
pub fn necklace_closure(n: u64, m: u64, flavor: Flavor) -> Result<FinitePresentation> {
    let braid = necklace_braid(n, m, flavor)?;
    let mut p = from_braid(&braid)?;
    p.meta = Meta::family("necklace");
    p.meta.n = Some(n);
    p.meta.m = Some(m);
    p.meta.flavor = Some(flavor.name().to_string());
    p.meta.braid = Some(braid.to_string());
    p.meta.strands = Some(braid.strands());
    Ok(p)
}

/// The necklace braid for a flavor: b_{n,m} with the unused core strands
/// removed (strand n+1 carries the internal circle, n+2 the external one).
pub fn necklace_braid(n: u64, m: u64, flavor: Flavor) -> Result<BraidWord> {
    let b = build(
        &NecklaceKind::Necklace {
            n: n as u32,
            m: m as u32,
        }
        .spec()?,
    )?;
    let n = n as u32;
    let removed: BTreeSet<u32> = match flavor {
        Flavor::Full => BTreeSet::new(),
        Flavor::Internal => BTreeSet::from([n + 2]),
        Flavor::External => BTreeSet::from([n + 1]),
        Flavor::Plain => BTreeSet::from([n + 1, n + 2]),
    };
    b.remove_strands(&removed)
}

/// The key-chain link-group presentation from its braid closure.
pub fn keychain(k: u64) -> Result<FinitePresentation> {
    let braid = build(&NecklaceKind::KeyChain { k: k as u32 }.spec()?)?;
    let mut p = from_braid(&braid)?;
    p.meta = Meta::family("keychain");
    p.meta.k = Some(k);
    p.meta.braid = Some(braid.to_string());
    p.meta.strands = Some(braid.strands());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{abelianization, coset_enumeration};

    #[test]
    fn circular_examples() {
        let p = circular(2, 3).unwrap();
        assert_eq!(p.generators, vec![Gen::a(1), Gen::a(2)]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].0.to_string(), "a1.a2.a1");
        assert_eq!(p.relations[0].1.to_string(), "a2.a1.a2");
        assert!(circular(1, 4).unwrap().relations.is_empty());
    }

    #[test]
    fn jbraid_full_2_3() {
        let p = jbraid(2, 3, Flavor::Full, false).unwrap();
        let texts: Vec<(String, String)> = p
            .relations
            .iter()
            .map(|(l, r)| (l.to_string(), r.to_string()))
            .collect();
        assert_eq!(
            texts,
            vec![
                ("x1.x2.y.z".into(), "z.x1.x2.y".into()),
                ("x2.y.z.x1.x2".into(), "x1.x2.y.z.x1".into()),
                ("y.z.x1.x2.y.x1".into(), "x2.y.z.x1.x2.y".into()),
            ]
        );
    }

    #[test]
    fn jbraid_flavors_and_definedness() {
        let p = jbraid(2, 3, Flavor::Plain, false).unwrap();
        assert_eq!(p.generators, vec![Gen::x(1), Gen::x(2)]);
        assert!(jbraid(1, 3, Flavor::Plain, false).is_err());
        assert!(jbraid(1, 3, Flavor::Plain, true).is_ok());
        assert!(jbraid(1, 3, Flavor::Internal, false).is_err());
        assert!(jbraid(3, 1, Flavor::External, false).is_err());
        assert!(jbraid(1, 1, Flavor::Full, false).is_ok());
    }

    #[test]
    fn plain_flavor_presents_the_circular_group() {
        // killing y and z leaves window relations of G(n,m): every plain
        // relator is a window equality (the wrap-around one is a chain
        // consequence rather than a cyclic match, so decide in the group)
        use crate::garside::CircularGroup;
        use crate::presentations::rename_generators;
        use crate::words::cyclic_equivalent;
        use std::collections::BTreeMap;
        for (n, m) in [(2u64, 3u64), (3, 4), (4, 6), (2, 2), (3, 9)] {
            let p = jbraid(n, m, Flavor::Plain, false).unwrap();
            let relabel: BTreeMap<Gen, Gen> =
                (1..=n as u32).map(|i| (Gen::x(i), Gen::a(i))).collect();
            let p = rename_generators(&p, &relabel).unwrap();
            let c = circular(n, m).unwrap();
            let group = CircularGroup::new(n as u32, m as u32).unwrap();
            let prel = crate::presentations::simplify(&p).unwrap();
            let crel = crate::presentations::simplify(&c).unwrap();
            for (side, own, other) in [("plain", &prel, &crel), ("circular", &crel, &prel)] {
                for (r, _) in &own.relations {
                    let matched = other
                        .relations
                        .iter()
                        .any(|(s, _)| cyclic_equivalent(r, s, true));
                    let trivial = group.equal(r, &crate::words::Word::identity()).unwrap();
                    assert!(matched || trivial, "{side} relator {r} at ({n},{m})");
                }
            }
        }
    }

    #[test]
    fn jreflection_orders() {
        // W(2,2,3) is the symmetric group on 3 letters
        let p = jreflection(2, 1, 2, 1, 3, false).unwrap();
        assert_eq!(
            coset_enumeration(&p, 10_000).unwrap(),
            crate::coset::Enumeration::Order(6)
        );
        // W(2,2,2), generalised, is the Klein group
        let p = jreflection(2, 1, 2, 1, 2, false).unwrap();
        assert_eq!(
            coset_enumeration(&p, 10_000).unwrap(),
            crate::coset::Enumeration::Order(4)
        );
        assert!(jreflection(1, 1, 1, 1, 1, false).is_err());
    }

    #[test]
    fn cor526_example() {
        let p = cor526(2, 3).unwrap();
        assert_eq!(p.generators.len(), 3);
        let last = p.relations.last().unwrap();
        assert_eq!(last.0.to_string(), "a2^3");
        assert_eq!(last.1.to_string(), "a1.a2.a3");
    }

    #[test]
    fn torus_link_abelianization_has_component_rank() {
        for (n, m) in [(2u64, 3u64), (2, 4), (4, 6), (3, 3), (6, 4)] {
            let d = crate::arith::gcd(n, m);
            let ab = abelianization(&torus_link(n, m).unwrap()).unwrap();
            assert_eq!(ab.rank, d, "({n},{m})");
            assert!(ab.torsion.is_empty());
        }
    }

    #[test]
    fn frame_presentations_abelianize_to_component_count() {
        // coprime parameters: full has d+2 = 3 components, internal d+1 = 2
        for (n, m) in [(2u64, 3u64), (3, 4), (1, 1), (2, 5)] {
            let ab = abelianization(&frame_full(n, m).unwrap()).unwrap();
            assert_eq!((ab.rank, ab.torsion.len()), (3, 0));
            let ab = abelianization(&frame_internal(n, m).unwrap()).unwrap();
            assert_eq!((ab.rank, ab.torsion.len()), (2, 0));
        }
    }

    #[test]
    fn necklace_closure_flavors() {
        // removing both core strands of b_{2,3} leaves the trefoil braid
        let b = necklace_braid(2, 3, Flavor::Plain).unwrap();
        assert_eq!(b.to_string(), "s1.s1.s1");
        assert_eq!(b.strands(), 2);
        let p = necklace_closure(2, 3, Flavor::Full).unwrap();
        assert_eq!(p.generators.len(), 4);
        assert_eq!(abelianization(&p).unwrap().rank, 3);
    }

    #[test]
    fn keychain_presentation() {
        let p = keychain(2).unwrap();
        assert_eq!(p.generators.len(), 3);
        assert_eq!(abelianization(&p).unwrap().rank, 3);
    }
}
