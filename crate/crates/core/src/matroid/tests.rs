use super::*;
use crate::random::random_test_matroids;
use proptest::prelude::*;

fn mat(cols: usize, rows: &[Vec<i64>]) -> Matroid {
    Matroid::from_matrix(&QMatrix::from_i64_rows(cols, rows).unwrap()).unwrap()
}

fn set(items: &[usize]) -> ElementSet {
    ElementSet::from_indices(items.iter().copied())
}

fn explicit_copy(m: &Matroid) -> Matroid {
    Matroid::from_bases(m.n(), m.bases()).unwrap()
}

/// Components from minimal dependent sets: e ~ f iff some circuit holds both.
fn components_via_circuits(m: &Matroid) -> Vec<ElementSet> {
    let ground = m.ground_set();
    let circuits: Vec<ElementSet> = ground
        .subsets()
        .filter(|&c| !c.is_empty() && !m.is_independent(c) && c.iter().all(|e| m.is_independent(c.without(e))))
        .collect();
    let mut comps: Vec<ElementSet> = (1..=m.n()).map(ElementSet::singleton).collect();
    for c in circuits {
        let (touching, rest): (Vec<_>, Vec<_>) = comps.into_iter().partition(|k| !k.intersection(c).is_empty());
        comps = rest;
        comps.push(touching.into_iter().fold(c, ElementSet::union));
    }
    comps.sort_by_key(|c| c.first());
    comps
}

#[test]
fn from_matrix_examples() {
    let u13 = mat(3, &[vec![1, 1, 1]]);
    assert_eq!(u13.rank(), 1);
    assert!(!u13.is_independent(set(&[1, 2])));
    let u23 = mat(3, &[vec![1, 0, 1], vec![0, 1, 1]]);
    assert!(crate::random::is_uniform(&u23) && u23.rank() == 2);
    let looped = mat(3, &[vec![1, 0, 0], vec![0, 1, 0]]);
    assert_eq!(looped.rank(), 2);
    assert_eq!(looped.loops(), set(&[3]));
}

#[test]
fn rank_examples() {
    let u23 = Matroid::uniform(2, 3).unwrap();
    assert_eq!(u23.rank_of(set(&[1, 2, 3])), 2);
    assert_eq!(u23.rank_of(ElementSet::EMPTY), 0);
    let u34 = Matroid::uniform(3, 4).unwrap();
    assert_eq!(u34.rank_of(set(&[1, 2])), 2);
    assert_eq!(explicit_copy(&u34).rank_of(set(&[1, 2])), 2);
}

#[test]
fn closure_examples() {
    let u23 = Matroid::uniform(2, 3).unwrap();
    assert_eq!(u23.closure(set(&[1])), set(&[1]));
    let parallel = mat(3, &[vec![1, 2, 3]]);
    assert_eq!(parallel.closure(set(&[1])), set(&[1, 2, 3]));
    for m in random_test_matroids(11, 30, 7) {
        for s in m.ground_set().subsets().step_by(5) {
            let c = m.closure(s);
            assert_eq!(m.closure(c), c);
            assert_eq!(m.rank_of(c), m.rank_of(s));
        }
    }
}

#[test]
fn flat_lattice_examples() {
    let l = Matroid::uniform(2, 3).unwrap().flats();
    assert_eq!(l.len(), 5);
    assert_eq!(l.flats()[0], ElementSet::EMPTY);
    assert_eq!(l.mobius(l.bottom(), l.top()), Some(&BigInt::from(2)));

    let l = Matroid::uniform(1, 1).unwrap().flats();
    assert_eq!(l.flats(), &[ElementSet::EMPTY, set(&[1])]);
    assert_eq!(l.mobius(0, 1), Some(&BigInt::from(-1)));

    let l = Matroid::uniform(3, 4).unwrap().flats();
    assert_eq!(l.len(), 12);
    assert_eq!(l.mobius(l.bottom(), l.top()), Some(&BigInt::from(-3)));
}

#[test]
fn flat_lattice_json() {
    let l = Matroid::uniform(2, 3).unwrap().flats();
    assert_eq!(l.to_json().to_string(), r#"{"flats":[[],[1],[2],[3],[1,2,3]],"mobius_from_bottom":[1,-1,-1,-1,2]}"#);
}

#[test]
fn lattice_bottom_is_loop_closure() {
    let m = mat(3, &[vec![1, 1, 0]]);
    let l = m.flats();
    assert_eq!(l.flats()[0], set(&[3]));
    assert_eq!(l.flats()[l.top()], set(&[1, 2, 3]));
}

#[test]
fn flat_enumeration_strategies_agree() {
    for m in random_test_matroids(12, 40, 8) {
        let mut scan: Vec<_> = m.flats().flats().to_vec();
        let mut ext = lattice::flats_by_rank_extension(&m);
        scan.sort();
        ext.sort();
        assert_eq!(scan, ext, "{:?}", m.to_json());
    }
}

#[test]
fn mobius_sum_rule() {
    for m in random_test_matroids(13, 40, 8) {
        let l = m.flats();
        for lo in 0..l.len() {
            for hi in 0..l.len() {
                if lo == hi || l.mobius(lo, hi).is_none() {
                    continue;
                }
                let total: BigInt = l.interval(lo, hi).iter().map(|&g| l.mobius(lo, g).unwrap().clone()).sum();
                assert!(total.is_zero());
            }
            assert_eq!(l.mobius(lo, lo), Some(&BigInt::one()));
        }
    }
}

#[test]
fn minor_examples() {
    let u23 = Matroid::uniform(2, 3).unwrap();
    let (c, labels) = u23.contract(1);
    assert!(c.same_rank_function(&Matroid::uniform(1, 2).unwrap()));
    assert_eq!(labels, vec![2, 3]);
    let (d, labels) = u23.delete(1);
    assert!(d.same_rank_function(&Matroid::uniform(2, 2).unwrap()));
    assert_eq!(labels, vec![2, 3]);
    let (r, _) = u23.restrict(u23.ground_set());
    assert!(r.same_rank_function(&u23));
}

#[test]
fn realized_and_explicit_minors_agree() {
    for m in random_test_matroids(14, 60, 7) {
        let e = explicit_copy(&m);
        for s in m.ground_set().subsets().step_by(3) {
            let (a, la) = m.restrict(s);
            let (b, lb) = e.restrict(s);
            assert_eq!(la, lb);
            assert!(a.same_rank_function(&b));
            let (a, la) = m.contract_set(s);
            let (b, lb) = e.contract_set(s);
            assert_eq!(la, lb);
            assert!(a.same_rank_function(&b));
            // minor rank functions
            for t in a.ground_set().subsets() {
                let lifted = t.expand(&la);
                assert_eq!(a.rank_of(t), m.rank_of(lifted.union(s)) - m.rank_of(s));
            }
        }
    }
}

#[test]
fn subspace_minor_dimensions() {
    for m in random_test_matroids(15, 40, 7) {
        let l = m.subspace().unwrap();
        for s in m.ground_set().subsets() {
            assert_eq!(l.restrict(s).0.dim(), m.rank_of(s));
            assert_eq!(l.contract(s).0.dim(), m.rank() - m.rank_of(s));
        }
    }
}

#[test]
fn loops_and_coloops() {
    let boolean = Matroid::uniform(4, 4).unwrap();
    assert_eq!(boolean.coloops(), boolean.ground_set());
    assert_eq!(explicit_copy(&boolean).coloops(), boolean.ground_set());
    let looped = mat(3, &[vec![1, 0, 2], vec![0, 0, 1]]);
    assert_eq!(looped.loops(), set(&[2]));
    let u23 = Matroid::uniform(2, 3).unwrap();
    assert!(u23.loops().is_empty() && u23.coloops().is_empty());
    for m in random_test_matroids(16, 50, 8) {
        let e = explicit_copy(&m);
        assert_eq!(m.loops(), e.loops());
        assert_eq!(m.coloops(), e.coloops());
        for x in 1..=m.n() {
            assert_eq!(m.coloops().contains(x), m.is_coloop(x));
            assert_eq!(m.loops().contains(x), m.is_loop(x));
        }
    }
}

#[test]
fn partition_matroid_examples() {
    assert!(Matroid::uniform(1, 3).unwrap().is_partition_matroid());
    let sum = Matroid::uniform(1, 2).unwrap().direct_sum(&Matroid::uniform(1, 1).unwrap()).unwrap();
    assert!(sum.is_partition_matroid());
    assert_eq!(sum.components(), vec![set(&[1, 2]), set(&[3])]);
    assert!(!Matroid::uniform(2, 3).unwrap().is_partition_matroid());
    assert!(!mat(2, &[vec![1, 0]]).is_partition_matroid());
}

#[test]
fn components_match_circuit_connectivity() {
    for m in random_test_matroids(17, 80, 8) {
        let comps = m.components();
        assert_eq!(comps, components_via_circuits(&m), "{:?}", m.to_json());
        let total: usize = comps.iter().map(|&c| m.rank_of(c)).sum();
        assert_eq!(total, m.rank());
    }
}

#[test]
fn from_bases_validation() {
    assert!(Matroid::from_bases(3, vec![]).is_err());
    assert!(Matroid::from_bases(3, vec![set(&[1]), set(&[1, 2])]).is_err());
    // {1,2}, {3,4}: exchange fails
    assert!(Matroid::from_bases(4, vec![set(&[1, 2]), set(&[3, 4])]).is_err());
    assert!(Matroid::from_bases(2, vec![set(&[3])]).is_err());
    let m = Matroid::from_bases(3, vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]).unwrap();
    assert!(m.same_rank_function(&Matroid::uniform(2, 3).unwrap()));
}

#[test]
fn json_layouts() {
    let m = Matroid::uniform(2, 3).unwrap();
    let back = Matroid::from_json(&m.to_json()).unwrap();
    assert!(back.is_realized() && back.same_rank_function(&m));
    let e = explicit_copy(&m);
    assert_eq!(e.to_json().to_string(), r#"{"bases":[[1,2],[1,3],[2,3]],"n":3}"#);
    assert!(Matroid::from_json(&e.to_json()).unwrap().same_rank_function(&m));
    let bare = serde_json::json!({"rows": 1, "cols": 2, "entries": [["1", "1"]]});
    assert_eq!(Matroid::from_json(&bare).unwrap().rank(), 1);
    assert!(Matroid::from_json(&serde_json::json!({"n": 2, "bases": [[3]]})).is_err());
}

#[test]
fn rank_axioms_on_random_triples() {
    let mut rng = crate::random::rng_from_seed(99);
    use rand::Rng;
    for m in random_test_matroids(18, 40, 9) {
        let full = m.ground_set().bits();
        for _ in 0..30 {
            let s = ElementSet::from_bits(rng.gen::<u64>() & full);
            let e = rng.gen_range(1..=m.n());
            let r = m.rank_of(s);
            let re = m.rank_of(s.with(e));
            assert!(re == r || re == r + 1);
            assert!(r <= s.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn submodular(seed in 0u64..1000, a in any::<u64>(), b in any::<u64>()) {
        let m = &random_test_matroids(seed, 1, 9)[0];
        let full = m.ground_set().bits();
        let (s, t) = (ElementSet::from_bits(a & full), ElementSet::from_bits(b & full));
        prop_assert!(m.rank_of(s.union(t)) + m.rank_of(s.intersection(t)) <= m.rank_of(s) + m.rank_of(t));
        prop_assert!(m.rank_of(s.intersection(t)) <= m.rank_of(s));
    }
}
