use num_bigint::BigUint;

use schreier_lab::constructions::{
    almost_disjoint_family, flat_norm_power, flat_vector, jameson_extremal, l_set, lemma63_witness, mpb_partition,
    verify_corollary64,
};
use schreier_lab::gl_index::{domination_constant, gl_index_truncated, is_spread_of, theta_fiber_stats, ThetaMap};
use schreier_lab::norms::{
    baernstein_norm, decreasing_rearrangement, lp_norm_power, oracle_norm, schreier_norm, sigma_operator, sup_norm,
};
use schreier_lab::schreier::{
    enumerate_chains, enumerate_schreier_subsets, is_maximal_schreier, is_schreier, is_spread, maximal_chain_from,
    tau1_of, tau1_oracle,
};
use schreier_lab::{CoeffVector, Exponent, IndexSet, IntervalSet, Rational, Scalar, SchreierSet, Space};

fn int(v: i64) -> Rational {
    Rational::from_ratio(v, 1)
}

fn ones(n: u64) -> CoeffVector<Rational> {
    CoeffVector::from_dense(vec![int(1); n as usize])
}

fn p(v: u32) -> Exponent {
    Exponent::integer(v).unwrap()
}

fn set(e: &[u64]) -> SchreierSet {
    SchreierSet::new(e).unwrap()
}

#[test]
fn admissibility() {
    assert!(is_schreier(&[]).unwrap());
    assert!(!is_schreier(&[1, 2]).unwrap());
    assert!(is_schreier(&[3, 5, 9]).unwrap());
    assert!(is_maximal_schreier(&[1]).unwrap());
    assert!(is_maximal_schreier(&[3, 4, 5]).unwrap());
    assert!(!is_maximal_schreier(&[3, 4]).unwrap());
    assert!(is_spread(&[1, 2], &[2, 5]).unwrap());
    assert!(!is_spread(&[2, 5], &[2, 4]).unwrap());
    assert!(is_spread(&[], &[]).unwrap());
}

#[test]
fn covering_numbers() {
    assert_eq!(tau1_of(&[]).unwrap().count, 0);
    assert_eq!(tau1_of(&[1, 2, 3]).unwrap().count, 2);
    assert_eq!(tau1_oracle(&[2, 3], 14).unwrap(), 1);
    assert_eq!(tau1_oracle(&[1, 2, 3], 14).unwrap(), 2);
    let six = [1, 2, 3, 4, 5, 6];
    assert_eq!(tau1_oracle(&six, 14).unwrap(), tau1_of(&six).unwrap().count);
}

#[test]
fn enumerations() {
    assert_eq!(enumerate_schreier_subsets(&[1, 2], 14).unwrap().len(), 3);
    assert_eq!(enumerate_schreier_subsets(&[], 14).unwrap().len(), 1);
    assert_eq!(enumerate_schreier_subsets(&[2, 3], 14).unwrap().len(), 4);
    assert_eq!(enumerate_chains(&[1, 2, 3], 14).unwrap().len(), 9);
    assert_eq!(enumerate_chains(&[1], 14).unwrap().len(), 1);
    assert!(enumerate_chains(&[], 14).unwrap().is_empty());
}

#[test]
fn maximal_chains() {
    assert_eq!(maximal_chain_from(1, 1).unwrap().to_lists(), vec![vec![1]]);
    assert_eq!(
        maximal_chain_from(3, 2).unwrap().to_lists(),
        vec![vec![3, 4, 5], (6..=11).collect::<Vec<u64>>()]
    );
    assert_eq!(maximal_chain_from(2, 1).unwrap().to_lists(), vec![vec![2, 3]]);
    let union: Vec<u64> = maximal_chain_from(4, 3).unwrap().union().to_vec();
    assert_eq!(tau1_of(&union).unwrap().count, 3);
}

#[test]
fn small_norms() {
    let x = ones(3);
    let s1 = schreier_norm(&x, p(1)).unwrap();
    assert_eq!(s1.power, int(2));
    assert_eq!(s1.witness.as_set().unwrap().to_vec(), vec![2, 3]);
    let b2 = baernstein_norm(&x, p(2)).unwrap();
    assert_eq!(b2.power, int(5));
    assert_eq!(b2.witness.as_chain().unwrap().to_lists(), vec![vec![1], vec![2, 3]]);
    assert_eq!(oracle_norm(&x, p(1), Space::Sp, 14).unwrap(), int(2));
    assert_eq!(oracle_norm(&x, p(2), Space::Bp, 14).unwrap(), int(5));
    assert_eq!(lp_norm_power(&x, p(2)).unwrap(), int(3));
    for n in [1, 5, 40] {
        let e = CoeffVector::<Rational>::unit(n).unwrap();
        assert_eq!(schreier_norm(&e, p(2)).unwrap().power, int(1));
        assert_eq!(baernstein_norm(&e, p(3)).unwrap().power, int(1));
    }
    let y = CoeffVector::from_entries([(2, int(3)), (7, int(-4))]).unwrap();
    assert_eq!(sup_norm(&y), int(4));
    assert!(baernstein_norm(&x, p(1)).is_err());
}

#[test]
fn block_sums_and_rearrangement() {
    let x = ones(3);
    let out = sigma_operator(&x, &[set(&[1]), set(&[2, 3])]).unwrap();
    assert_eq!(out, CoeffVector::from_entries([(1, int(1)), (2, int(2))]).unwrap());
    let y = CoeffVector::from_entries([(2, int(1)), (3, int(-1))]).unwrap();
    assert!(sigma_operator(&y, &[set(&[2, 3])]).unwrap().is_zero());
    let z = CoeffVector::from_entries([(2, int(1)), (5, int(3))]).unwrap();
    assert_eq!(
        decreasing_rearrangement(&z),
        CoeffVector::from_entries([(1, int(3)), (2, int(1))]).unwrap()
    );
}

#[test]
fn index_sets_and_truncated_index() {
    let evens: IndexSet = "evens".parse().unwrap();
    assert_eq!(evens.select(&[1, 3]).unwrap(), vec![2, 6]);
    assert!(evens.select(&[]).unwrap().is_empty());
    let powers = IndexSet::explicit(vec![1, 2, 4, 8, 16]).unwrap();
    assert_eq!(powers.select(&[2, 3]).unwrap(), vec![2, 4]);

    let all: IndexSet = "all".parse().unwrap();
    let doubled = IndexSet::doubling_even(all.clone());
    assert!(is_spread_of(&doubled, &all, 12).unwrap());
    assert!(!is_spread_of(&all, &doubled, 12).unwrap());
    for k in 1..=12 {
        assert_eq!(gl_index_truncated(&evens, &evens, k).unwrap().value, 1);
        assert!(gl_index_truncated(&all, &doubled, k).unwrap().value <= 2);
        let c = domination_constant(&all, &doubled, k, p(2), Space::Bp).unwrap();
        assert!(c.value() <= 2.0);
    }
}

#[test]
fn fibers() {
    let window: Vec<SchreierSet> = (1..=10).map(|i| set(&[i])).collect();
    assert_eq!(theta_fiber_stats(&ThetaMap::new((1..=10).map(|i| (i, i))), &window), (1, 1));
    assert_eq!(theta_fiber_stats(&ThetaMap::new((1..=5).map(|i| (i, 7))), &[set(&[7])]), (5, 3));
    assert_eq!(theta_fiber_stats(&ThetaMap::default(), &window), (0, 0));
}

#[test]
fn flat_vectors() {
    let single = maximal_chain_from(1, 1).unwrap();
    for space in [Space::Sp, Space::Bp] {
        let x = flat_vector::<Rational>(&single, p(2), space).unwrap();
        assert_eq!(x, CoeffVector::unit(1).unwrap());
    }
    let c = maximal_chain_from(3, 3).unwrap();
    let v = flat_norm_power::<Rational>(&c, p(2), Space::Bp).unwrap();
    assert!(int(3) <= v && v <= int(12));
    let x = flat_vector::<Rational>(&c, p(2), Space::Bp).unwrap();
    assert_eq!(baernstein_norm(&x, p(2)).unwrap().power, v);
}

#[test]
fn partition_and_l_sets() {
    let part = mpb_partition(5).unwrap();
    part.check().unwrap();
    let big = |a: u64, b: u64| IntervalSet::interval(BigUint::from(a), BigUint::from(b));
    assert!(part.f(1).unwrap().is_empty());
    assert_eq!(part.g(1).unwrap(), &big(1, 1));
    assert_eq!(part.f(2).unwrap(), &big(2, 2));
    assert_eq!(part.g(2).unwrap(), &big(3, 11));
    assert_eq!(part.g_covering_numbers(), vec![1, 2, 3, 4, 5]);

    let one = IndexSet::explicit(vec![1]).unwrap();
    assert_eq!(l_set(&part, &one, 1).unwrap(), big(1, 1));
    let none = IndexSet::explicit_through(vec![], 3).unwrap();
    assert!(l_set(&part, &none, 3).unwrap().is_empty());
    let both = IndexSet::explicit(vec![1, 2]).unwrap();
    assert_eq!(l_set(&part, &both, 2).unwrap(), big(1, 11));
}

#[test]
fn divergence_witnesses() {
    let part = mpb_partition(8).unwrap();
    let all: IndexSet = "all".parse().unwrap();
    let evens: IndexSet = "evens".parse().unwrap();
    let w = lemma63_witness(&part, &all, &"odds".parse().unwrap(), 2).unwrap();
    assert_eq!(w.tau, 2);
    assert!(w.l_n_schreier);
    assert!(lemma63_witness(&part, &all, &evens, 2).is_err());
    assert!(verify_corollary64(&part, &all, &all, 6).unwrap().is_empty());
    let ms: Vec<u64> = verify_corollary64(&part, &all, &evens, 6)
        .unwrap()
        .iter()
        .map(|w| w.m)
        .collect();
    assert_eq!(ms, vec![3, 5]);
}

#[test]
fn extremal_family() {
    for k in 1..=6 {
        let x = jameson_extremal::<Rational>(k, k + 20).unwrap();
        assert_eq!(sup_norm(&x), Rational::inv_pow2(k));
        assert_eq!(schreier_norm(&x, p(1)).unwrap().power, int(1));
    }
}

#[test]
fn almost_disjoint_examples() {
    let fam = almost_disjoint_family(2, 3).unwrap();
    assert_eq!(fam.branches[0].word, "000");
    assert_eq!(fam.branches[1].word, "111");
    assert_eq!(fam.intersection(0, 1), vec![1]);
    assert_eq!(almost_disjoint_family(1, 4).unwrap().branches.len(), 1);
}
