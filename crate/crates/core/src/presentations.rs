//! Finite presentations: extraction from braid closures, automorphism
//! transport, generator-killing quotients, simplification, relator
//! matching, abelianization and coset enumeration.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::braids::BraidWord;
use crate::coset::{self, Enumeration};
use crate::snf;
use crate::words::{cyclic_equivalent, Family, Gen, Word};
use crate::{Error, Result};

/// Provenance record carried by every presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub braid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strands: Option<u32>,
}

impl Meta {
    pub fn family(name: &str) -> Meta {
        Meta {
            family: name.to_string(),
            ..Meta::default()
        }
    }
}

/// An ordered generator list plus relations stored as equalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    pub generators: Vec<Gen>,
    pub relations: Vec<(Word, Word)>,
    pub meta: Meta,
}

impl FinitePresentation {
    pub fn new(generators: Vec<Gen>, relations: Vec<(Word, Word)>, meta: Meta) -> Result<Self> {
        let p = FinitePresentation {
            generators,
            relations,
            meta,
        };
        p.check_generators()?;
        Ok(p)
    }

    fn check_generators(&self) -> Result<()> {
        let set: BTreeSet<&Gen> = self.generators.iter().collect();
        for (lhs, rhs) in &self.relations {
            for g in lhs.generators().chain(rhs.generators()) {
                if !set.contains(g) {
                    return Err(Error::UnknownGenerator(g.to_string()));
                }
            }
        }
        Ok(())
    }

    /// Relator forms lhs·rhs⁻¹, freely reduced.
    pub fn relators(&self) -> Result<Vec<Word>> {
        self.relations
            .iter()
            .map(|(l, r)| l.mul(&r.inverse()))
            .collect()
    }
}

/// The link-group presentation of the closure of a braid:
/// generators x_1 … x_n, relations x_i = x_i·β.
pub fn from_braid(beta: &BraidWord) -> Result<FinitePresentation> {
    let n = beta.strands();
    let generators: Vec<Gen> = (1..=n).map(Gen::x).collect();
    let mut relations = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let x = Word::gen(Gen::x(i));
        relations.push((x.clone(), beta.artin_act(&x)?));
    }
    let mut meta = Meta::family("braid_closure");
    meta.braid = Some(beta.to_string());
    meta.strands = Some(n);
    FinitePresentation::new(generators, relations, meta)
}

/// Apply the automorphism of a braid to both sides of every relation.
/// The generators must be x_1 … x_N with N at least the strand count.
pub fn transform(p: &FinitePresentation, sigma: &BraidWord) -> Result<FinitePresentation> {
    let mut max = 0u32;
    for g in &p.generators {
        match (&g.family, g.index) {
            (Family::X, Some(i)) => max = max.max(i),
            _ => return Err(Error::UnknownGenerator(g.to_string())),
        }
    }
    if p.generators.len() as u32 != max || max < sigma.strands() {
        return Err(Error::Param(format!(
            "transform needs generators x_1..x_N with N >= {}",
            sigma.strands()
        )));
    }
    let sigma = sigma.embed(max)?;
    let relations = p
        .relations
        .iter()
        .map(|(l, r)| Ok((sigma.artin_act(l)?, sigma.artin_act(r)?)))
        .collect::<Result<Vec<_>>>()?;
    FinitePresentation::new(p.generators.clone(), relations, p.meta.clone())
}

/// Quotient by the normal closure of a set of generators: the killed
/// generators disappear from the list and their letters are erased.
pub fn quotient_generators(
    p: &FinitePresentation,
    kill: &BTreeSet<Gen>,
) -> Result<FinitePresentation> {
    let set: BTreeSet<&Gen> = p.generators.iter().collect();
    for g in kill {
        if !set.contains(g) {
            return Err(Error::UnknownGenerator(g.to_string()));
        }
    }
    let generators = p
        .generators
        .iter()
        .filter(|g| !kill.contains(g))
        .cloned()
        .collect();
    let relations = p
        .relations
        .iter()
        .map(|(l, r)| (l.erase(|g| kill.contains(g)), r.erase(|g| kill.contains(g))))
        .collect();
    FinitePresentation::new(generators, relations, p.meta.clone())
}

/// Rename generators along an injective mapping; unmapped ones persist.
pub fn rename_generators(
    p: &FinitePresentation,
    mapping: &BTreeMap<Gen, Gen>,
) -> Result<FinitePresentation> {
    let rename = |g: &Gen| mapping.get(g).unwrap_or(g).clone();
    let targets: BTreeSet<Gen> = p.generators.iter().map(&rename).collect();
    if targets.len() != p.generators.len() {
        return Err(Error::NotBijective);
    }
    let rename_word = |w: &Word| -> Result<Word> {
        Word::from_letters(w.runs().iter().map(|(g, e)| (rename(g), *e)))
    };
    let generators = p.generators.iter().map(rename).collect();
    let relations = p
        .relations
        .iter()
        .map(|(l, r)| Ok((rename_word(l)?, rename_word(r)?)))
        .collect::<Result<Vec<_>>>()?;
    FinitePresentation::new(generators, relations, p.meta.clone())
}

/// Freely and cyclically reduce every relator, drop trivial ones and
/// deduplicate up to cyclic equivalence with inversion. Relations come
/// back in relator form (word, 1); the generator set is unchanged.
pub fn simplify(p: &FinitePresentation) -> Result<FinitePresentation> {
    let mut kept: Vec<Word> = Vec::new();
    for (l, r) in &p.relations {
        let relator = l.mul(&r.inverse())?.cyclic_reduced();
        if relator.is_identity() {
            continue;
        }
        if kept.iter().any(|k| cyclic_equivalent(k, &relator, true)) {
            continue;
        }
        kept.push(relator);
    }
    FinitePresentation::new(
        p.generators.clone(),
        kept.into_iter().map(|w| (w, Word::identity())).collect(),
        p.meta.clone(),
    )
}

/// True iff, after renaming, the relator sets agree up to cyclic
/// equivalence with inversion (trivial relators ignored).
pub fn relator_match(
    p1: &FinitePresentation,
    p2: &FinitePresentation,
    renaming: &BTreeMap<Gen, Gen>,
) -> Result<bool> {
    let dom: BTreeSet<&Gen> = renaming.keys().collect();
    let img: BTreeSet<&Gen> = renaming.values().collect();
    let gens1: BTreeSet<&Gen> = p1.generators.iter().collect();
    let gens2: BTreeSet<&Gen> = p2.generators.iter().collect();
    if dom != gens1 || img != gens2 || renaming.len() != p2.generators.len() {
        return Err(Error::NotBijective);
    }
    let r1: Vec<Word> = simplify(&rename_generators(p1, renaming)?)?
        .relations
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    let r2: Vec<Word> = simplify(p2)?
        .relations
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    let covers = |from: &[Word], to: &[Word]| {
        from.iter()
            .all(|r| to.iter().any(|s| cyclic_equivalent(r, s, true)))
    };
    Ok(covers(&r1, &r2) && covers(&r2, &r1))
}

/// Identity renaming for presentations over the same alphabet.
pub fn identity_renaming(p: &FinitePresentation) -> BTreeMap<Gen, Gen> {
    p.generators
        .iter()
        .map(|g| (g.clone(), g.clone()))
        .collect()
}

/// Smith-normal-form invariants of the abelianized relation matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub rank: u64,
    pub torsion: Vec<u64>,
}

pub fn abelianization(p: &FinitePresentation) -> Result<Abelianization> {
    let cols: BTreeMap<&Gen, usize> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let mut matrix = Vec::with_capacity(p.relations.len());
    for relator in p.relators()? {
        let mut row = vec![0i128; p.generators.len()];
        for (g, e) in relator.runs() {
            row[cols[g]] = row[cols[g]]
                .checked_add(*e as i128)
                .ok_or(Error::Overflow("abelianization"))?;
        }
        matrix.push(row);
    }
    let factors = snf::invariant_factors(matrix)?;
    let nonzero = factors.iter().filter(|&&d| d != 0).count();
    Ok(Abelianization {
        rank: (p.generators.len() - nonzero) as u64,
        torsion: factors
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect(),
    })
}

/// Todd–Coxeter enumeration of the cosets of the trivial subgroup.
pub fn coset_enumeration(p: &FinitePresentation, limit: usize) -> Result<Enumeration> {
    let index: BTreeMap<&Gen, i32> = p
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g, i as i32 + 1))
        .collect();
    let mut relators = Vec::new();
    for relator in p.relators()? {
        let mut seq = Vec::with_capacity(relator.len());
        for (g, s) in relator.iter_letters() {
            seq.push(index[g] * s as i32);
        }
        relators.push(seq);
    }
    Ok(coset::enumerate(p.generators.len(), &relators, limit))
}

// --- JSON interchange -------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RelationDoc {
    lhs: String,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    generators: Vec<String>,
    relations: Vec<RelationDoc>,
    meta: Meta,
}

impl FinitePresentation {
    /// Compact JSON document in the fixed interchange schema.
    pub fn to_json(&self) -> String {
        let doc = PresentationDoc {
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            relations: self
                .relations
                .iter()
                .map(|(l, r)| RelationDoc {
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                })
                .collect(),
            meta: self.meta.clone(),
        };
        serde_json::to_string(&doc).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<FinitePresentation> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let generators = doc
            .generators
            .iter()
            .map(|s| s.parse::<Gen>())
            .collect::<Result<Vec<_>>>()?;
        let relations = doc
            .relations
            .iter()
            .map(|r| Ok((r.lhs.parse::<Word>()?, r.rhs.parse::<Word>()?)))
            .collect::<Result<Vec<_>>>()?;
        FinitePresentation::new(generators, relations, doc.meta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braids::parse_braid;

    #[test]
    fn from_braid_hopf() {
        let hopf = parse_braid("s1.s1", 2).unwrap();
        let p = from_braid(&hopf).unwrap();
        // relations reduce to the commutator x1 x2 = x2 x1
        let commutator = FinitePresentation::new(
            vec![Gen::x(1), Gen::x(2)],
            vec![("x1.x2".parse().unwrap(), "x2.x1".parse().unwrap())],
            Meta::family("test"),
        )
        .unwrap();
        assert!(
            relator_match(&simplify(&p).unwrap(), &commutator, &identity_renaming(&p)).unwrap()
        );
    }

    #[test]
    fn from_braid_identity_and_trefoil() {
        let id = BraidWord::identity(2);
        let p = from_braid(&id).unwrap();
        assert!(simplify(&p).unwrap().relations.is_empty());

        let trefoil = parse_braid("s1.s1.s1", 2).unwrap();
        let p = simplify(&from_braid(&trefoil).unwrap()).unwrap();
        let braid_rel = FinitePresentation::new(
            vec![Gen::x(1), Gen::x(2)],
            vec![("x1.x2.x1".parse().unwrap(), "x2.x1.x2".parse().unwrap())],
            Meta::family("test"),
        )
        .unwrap();
        assert!(relator_match(&p, &braid_rel, &identity_renaming(&p)).unwrap());
    }

    #[test]
    fn transform_by_identity_is_identity() {
        let b = parse_braid("s1.s2.s2", 3).unwrap();
        let p = from_braid(&b).unwrap();
        let t = transform(&p, &BraidWord::identity(3)).unwrap();
        assert_eq!(p.relations, t.relations);
    }

    #[test]
    fn quotient_examples() {
        let b = parse_braid("s1.s1", 2).unwrap();
        let p = from_braid(&b).unwrap();
        assert_eq!(quotient_generators(&p, &BTreeSet::new()).unwrap(), p);
        let q = quotient_generators(&p, &BTreeSet::from([Gen::x(2)])).unwrap();
        assert_eq!(q.generators, vec![Gen::x(1)]);
        for (l, r) in &q.relations {
            assert!(l.generators().all(|g| *g == Gen::x(1)));
            assert!(r.generators().all(|g| *g == Gen::x(1)));
        }
        assert!(quotient_generators(&p, &BTreeSet::from([Gen::y()])).is_err());
    }

    #[test]
    fn simplify_examples() {
        let p = FinitePresentation::new(
            vec![Gen::x(1), Gen::x(2)],
            vec![
                ("x1.x1^-1".parse().unwrap(), "1".parse().unwrap()),
                ("x1.x2".parse().unwrap(), "x2.x1".parse().unwrap()),
                // conjugate duplicate of the commutator
                (
                    "x1.x1.x2.x1^-1.x2^-1.x1^-1".parse().unwrap(),
                    "1".parse().unwrap(),
                ),
            ],
            Meta::family("test"),
        )
        .unwrap();
        let s = simplify(&p).unwrap();
        assert_eq!(s.relations.len(), 1);
        let again = simplify(&s).unwrap();
        assert_eq!(s.relations, again.relations);
    }

    #[test]
    fn relator_match_requires_bijection() {
        let p1 = FinitePresentation::new(
            vec![Gen::x(1)],
            vec![("x1^2".parse().unwrap(), "1".parse().unwrap())],
            Meta::family("test"),
        )
        .unwrap();
        let p2 = FinitePresentation::new(
            vec![Gen::a(1), Gen::a(2)],
            vec![("a1^2".parse().unwrap(), "1".parse().unwrap())],
            Meta::family("test"),
        )
        .unwrap();
        assert!(relator_match(&p1, &p1, &identity_renaming(&p1)).unwrap());
        assert!(relator_match(&p1, &p2, &BTreeMap::from([(Gen::x(1), Gen::a(1))])).is_err());
    }

    #[test]
    fn abelianization_examples() {
        // Z^2 from the Hopf link
        let p = from_braid(&parse_braid("s1.s1", 2).unwrap()).unwrap();
        let ab = abelianization(&p).unwrap();
        assert_eq!((ab.rank, ab.torsion.len()), (2, 0));
        // torsion example: Z/2 x Z/4
        let p = FinitePresentation::new(
            vec![Gen::a(1), Gen::a(2)],
            vec![
                ("a1^2".parse().unwrap(), "1".parse().unwrap()),
                ("a2^4".parse().unwrap(), "1".parse().unwrap()),
                ("a1.a2".parse().unwrap(), "a2.a1".parse().unwrap()),
            ],
            Meta::family("test"),
        )
        .unwrap();
        let ab = abelianization(&p).unwrap();
        assert_eq!(ab.rank, 0);
        assert_eq!(ab.torsion, vec![2, 4]);
    }

    #[test]
    fn coset_enumeration_trivial() {
        let p = FinitePresentation::new(
            vec![Gen::a(1)],
            vec![("a1".parse().unwrap(), "1".parse().unwrap())],
            Meta::family("test"),
        )
        .unwrap();
        assert_eq!(coset_enumeration(&p, 100).unwrap(), Enumeration::Order(1));
    }

    #[test]
    fn json_round_trip() {
        let p = from_braid(&parse_braid("s1.s1", 2).unwrap()).unwrap();
        let text = p.to_json();
        let back = FinitePresentation::from_json(&text).unwrap();
        assert_eq!(p, back);
        assert_eq!(back.to_json(), text);
    }
}
