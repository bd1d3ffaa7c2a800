//! Acceptance suite: one test per criterion, each printed as its own
//! pass/fail line by the harness.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use necklace::arith::gcd;
use necklace::builtin::{self, Flavor};
use necklace::coset::Enumeration;
use necklace::garside::{ball_checks, CircularGroup};
use necklace::isomaps::{
    self, apply, build_map, psi_shadow, round_trip, MapName, RoundTrip, Status,
};
use necklace::necklaces::{action_braid, closed_form_action, ActionKind};
use necklace::presentations::{abelianization, coset_enumeration, from_braid};
use necklace::words::{Gen, Word};

#[test]
fn criterion_01_closed_form_actions_match_the_artin_oracle() {
    let mut cells = 0usize;
    let mut check = |kind: ActionKind, ambient: u32| {
        let map = closed_form_action(kind, ambient).unwrap();
        let braid = action_braid(kind, ambient).unwrap();
        for i in 1..=ambient {
            let x = Word::gen(Gen::x(i));
            let composed = braid.artin_act(&x).unwrap();
            assert_eq!(
                map[&Gen::x(i)],
                composed,
                "{kind:?} ambient {ambient} generator {i}"
            );
            cells += 1;
        }
    };
    for n in 1..=5u32 {
        for ambient in [n + 2, n + 3] {
            check(ActionKind::V { n }, ambient);
        }
        for ambient in [n, n + 2, n + 3] {
            check(ActionKind::HalfTwist { n }, ambient);
        }
        for s in 1..=n {
            for t in s..=n {
                check(ActionKind::U { s, t }, t + 1);
                check(ActionKind::U { s, t }, t + 3);
                check(ActionKind::D { s, t }, t + 1);
                check(ActionKind::D { s, t }, t + 3);
            }
        }
        for m in 0..=13u32 {
            check(ActionKind::BetaPow { n, power: m }, n + 1);
            check(ActionKind::BetaPow { n, power: m }, n + 2);
        }
        for m in 1..=13u32 {
            check(ActionKind::Necklace { n, m }, n + 2);
        }
    }
    assert!(cells > 1000, "oracle coverage too small: {cells}");
}

#[test]
fn criterion_02_theorem47_pipeline_passes_on_all_25_cells() {
    for n in 1..=5u64 {
        for m in 1..=5u64 {
            let report = isomaps::theorem47_check(n, m).unwrap();
            assert!(report.passed(), "theorem47 at ({n},{m}): {report:?}");
        }
    }
}

#[test]
fn criterion_03_garside_engine_agrees_with_the_rewriting_oracle() {
    for (n, m) in [(2u32, 3u32), (3, 2), (2, 2), (3, 4), (4, 6), (1, 3), (3, 1)] {
        let group = CircularGroup::new(n, m).unwrap();
        let mut ball = group.positive_ball(6, 200_000).unwrap();
        // the lattice-validation suite
        ball_checks(&group, &mut ball, 6).unwrap();
        // engine-vs-oracle agreement on every positive word pair of
        // length <= 6: same class iff same normal form
        let mut class_nf: HashMap<usize, String> = HashMap::new();
        let mut nf_class: HashMap<String, usize> = HashMap::new();
        let words = ball.words.clone();
        for w in words {
            let word = Word::from_letters(w.iter().map(|&i| (Gen::a(i), 1))).unwrap();
            let nf = group.normal_form(&word).unwrap().to_string();
            let class = ball.class_of(&w).unwrap();
            if let Some(prev) = class_nf.get(&class) {
                assert_eq!(prev, &nf, "G({n},{m}) splits the class of {w:?}");
            } else {
                class_nf.insert(class, nf.clone());
            }
            if let Some(prev) = nf_class.get(&nf) {
                assert_eq!(prev, &class, "G({n},{m}) merges classes at {w:?}");
            } else {
                nf_class.insert(nf, class);
            }
        }
    }
}

#[test]
fn criterion_04_homomorphism_suite_passes_on_all_25_cells() {
    for n in 1..=5u64 {
        for m in 1..=5u64 {
            let phi = build_map(MapName::Phi, n, m).unwrap();
            let report = isomaps::verify_relators(&phi).unwrap();
            assert!(report.passed(), "phi at ({n},{m}): {report:?}");
            let report = psi_shadow(n, m).unwrap();
            assert!(report.passed(), "psi shadow at ({n},{m}): {report:?}");
            let report = round_trip(n, m, RoundTrip::PhiPsi).unwrap();
            assert!(report.passed(), "round trip at ({n},{m}): {report:?}");
        }
    }
}

#[test]
fn criterion_05_special_element_suite_passes_on_all_25_cells() {
    for n in 1..=5u64 {
        for m in 1..=5u64 {
            let (_, report) = isomaps::special_elements(n, m).unwrap();
            assert!(report.passed(), "special elements at ({n},{m}): {report:?}");
            for tag in ["(a)", "(b)", "(c)", "(d)", "(e)", "(f)", "(g)"] {
                assert!(
                    report.items.iter().any(|i| i.name.starts_with(tag)),
                    "missing item {tag} at ({n},{m})"
                );
            }
        }
    }
}

#[test]
fn criterion_06_theorem57_suite_passes_on_all_25_cells() {
    for n in 1..=5u64 {
        for m in 1..=5u64 {
            let report = isomaps::theorem57_check(n, m).unwrap();
            assert!(report.passed(), "theorem57 at ({n},{m}): {report:?}");
        }
    }
}

#[test]
fn criterion_07_center_of_circular_groups() {
    for n in 1..=6u32 {
        for m in 1..=6u32 {
            let group = CircularGroup::new(n, m).unwrap();
            let alpha = Word::from_letters((1..=n).map(|i| (Gen::a(i), 1))).unwrap();
            let power = (m as u64 / gcd(n as u64, m as u64)) as i64;
            assert!(
                group.is_central(&alpha.pow(power).unwrap()).unwrap(),
                "alpha^(m/d) must be central in G({n},{m})"
            );
        }
    }
    let group = CircularGroup::new(2, 3).unwrap();
    assert!(!group.is_central(&Word::gen(Gen::a(1))).unwrap());
}

#[test]
fn criterion_08_abelianization_cross_checks() {
    for n in 1..=8u64 {
        for m in 1..=8u64 {
            let ab = abelianization(&builtin::circular(n, m).unwrap()).unwrap();
            assert_eq!(ab.rank, gcd(n, m), "circular ({n},{m})");
            assert!(ab.torsion.is_empty(), "circular ({n},{m})");
        }
    }
    for n in 1..=5u64 {
        for m in 1..=5u64 {
            let d = gcd(n, m);
            let expect = [d + 2, d + 1, d + 1, d];
            for (flavor, want) in [
                Flavor::Full,
                Flavor::Internal,
                Flavor::External,
                Flavor::Plain,
            ]
            .iter()
            .zip(expect)
            {
                let braid = builtin::necklace_braid(n, m, *flavor).unwrap();
                let ab = abelianization(&from_braid(&braid).unwrap()).unwrap();
                assert_eq!(ab.rank, want, "necklace ({n},{m}) flavor {}", flavor.name());
                assert!(ab.torsion.is_empty());
            }
        }
    }
    for k in 0..=5u64 {
        let ab = abelianization(&builtin::keychain(k).unwrap()).unwrap();
        assert_eq!(ab.rank, k + 1, "keychain {k}");
        assert!(ab.torsion.is_empty());
    }
}

/// permutations as lookup tables, for the independent finite models
fn perm_mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

fn closure_order(gens: &[Vec<usize>]) -> usize {
    let identity: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(cur) = frontier.pop() {
        for g in gens {
            let next = perm_mul(&cur, g);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.len()
}

#[test]
fn criterion_09_coset_enumeration_matches_permutation_models() {
    // W(2,2,3): model x1 -> (1 2), x2 -> (2 3), y, z -> id in Sym(3)
    let p = builtin::jreflection(2, 1, 2, 1, 3, false).unwrap();
    let model: BTreeMap<Gen, Vec<usize>> = BTreeMap::from([
        (Gen::x(1), vec![1, 0, 2]),
        (Gen::x(2), vec![0, 2, 1]),
        (Gen::y(), vec![0, 1, 2]),
        (Gen::z(), vec![0, 1, 2]),
    ]);
    let eval = |w: &Word, model: &BTreeMap<Gen, Vec<usize>>| -> Vec<usize> {
        let size = model.values().next().unwrap().len();
        let mut acc: Vec<usize> = (0..size).collect();
        for (g, s) in w.iter_letters() {
            let p = &model[g];
            let p = if s > 0 {
                p.clone()
            } else {
                let mut inv = vec![0; p.len()];
                for (i, &v) in p.iter().enumerate() {
                    inv[v] = i;
                }
                inv
            };
            acc = perm_mul(&acc, &p);
        }
        acc
    };
    for (lhs, rhs) in &p.relations {
        assert_eq!(
            eval(lhs, &model),
            eval(rhs, &model),
            "the Sym(3) model must satisfy {lhs} = {rhs}"
        );
    }
    let image_order = closure_order(&[model[&Gen::x(1)].clone(), model[&Gen::x(2)].clone()]);
    assert_eq!(image_order, 6);
    assert_eq!(
        coset_enumeration(&p, 10_000).unwrap(),
        Enumeration::Order(6)
    );

    // W(2,2,2): Klein model x1 -> (1 2), x2 -> (3 4), y, z -> id in Sym(4)
    let p = builtin::jreflection(2, 1, 2, 1, 2, false).unwrap();
    let model: BTreeMap<Gen, Vec<usize>> = BTreeMap::from([
        (Gen::x(1), vec![1, 0, 2, 3]),
        (Gen::x(2), vec![0, 1, 3, 2]),
        (Gen::y(), vec![0, 1, 2, 3]),
        (Gen::z(), vec![0, 1, 2, 3]),
    ]);
    for (lhs, rhs) in &p.relations {
        assert_eq!(eval(lhs, &model), eval(rhs, &model));
    }
    let image_order = closure_order(&[model[&Gen::x(1)].clone(), model[&Gen::x(2)].clone()]);
    assert_eq!(image_order, 4);
    assert_eq!(
        coset_enumeration(&p, 10_000).unwrap(),
        Enumeration::Order(4)
    );
}

#[test]
fn criterion_10_mutation_sensitivity_of_the_verification_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(40517);
    let mut failures_detected = 0usize;
    for trial in 0..20 {
        let use_phi = trial % 2 == 0;
        let name = if use_phi {
            MapName::Phi
        } else {
            MapName::PsiStar
        };
        let mut hom = build_map(name, 2, 3).unwrap();
        let target = match &hom.target {
            isomaps::HomTarget::Circular(p) => CircularGroup::new(p.n, p.m).unwrap(),
            _ => unreachable!(),
        };
        // corrupt one letter of one image, retrying the draw when the
        // corrupted word happens to represent the same element
        let keys: Vec<Gen> = hom.images.keys().cloned().collect();
        let (gen, corrupted) = loop {
            let gen = keys[rng.gen_range(0..keys.len())].clone();
            let original = hom.images[&gen].clone();
            let letters: Vec<(Gen, i64)> = original
                .iter_letters()
                .map(|(g, s)| (g.clone(), s))
                .collect();
            if letters.is_empty() {
                continue;
            }
            let pos = rng.gen_range(0..letters.len());
            let max_index = target.params().n;
            let mut mutated = letters.clone();
            if rng.gen_bool(0.5) {
                let mut other = rng.gen_range(1..=max_index);
                while Some(other) == mutated[pos].0.index {
                    other = rng.gen_range(1..=max_index);
                }
                mutated[pos].0 = Gen::new(mutated[pos].0.family.clone(), Some(other));
            } else {
                mutated[pos].1 = -mutated[pos].1;
            }
            let corrupted = Word::from_letters(mutated).unwrap();
            if !target.equal(&corrupted, &original).unwrap() {
                break (gen, corrupted);
            }
        };
        hom.images.insert(gen, corrupted);

        let relators_fail = !isomaps::verify_relators(&hom).unwrap().passed();
        let round_trip_fail = {
            let inverse = build_map(
                if use_phi {
                    MapName::Psi
                } else {
                    MapName::PhiStar
                },
                2,
                3,
            )
            .unwrap();
            inverse.source.generators.iter().any(|g| {
                let gw = Word::gen(g.clone());
                let round = apply(&hom, &apply(&inverse, &gw).unwrap()).unwrap();
                !target.equal(&round, &gw).unwrap()
            })
        };
        assert!(
            relators_fail || round_trip_fail,
            "corruption {trial} slipped through both suites"
        );
        failures_detected += 1;
    }
    assert_eq!(failures_detected, 20);
}

#[test]
fn criterion_11_conjecture_evidence_reports() {
    for n in 1..=5u64 {
        for m in 1..=5u64 {
            let report = isomaps::conjecture56_evidence(n, m).unwrap();
            let again = isomaps::conjecture56_evidence(n, m).unwrap();
            assert_eq!(
                report.to_json(),
                again.to_json(),
                "deterministic at ({n},{m})"
            );
            assert!(!report.items.is_empty());
            assert!(report.items.iter().all(|i| i.status != Status::Vacuous));
            if gcd(n, m) == 1 {
                assert!(
                    report.passed(),
                    "coprime cell ({n},{m}) must pass: {report:?}"
                );
            }
        }
    }
}
