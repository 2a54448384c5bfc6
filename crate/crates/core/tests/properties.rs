use proptest::collection::{btree_map, vec};
use proptest::prelude::*;

use schreier_lab::constructions::{almost_disjoint_family, family::shared_nodes, flat_bounds_power, flat_norm_power};
use schreier_lab::gl_index::{check_domination, gl_index_truncated, is_spread_of};
use schreier_lab::norms::{
    baernstein_norm, beta_p_power, decreasing_rearrangement, lp_norm_power, mu_p_power, oracle_norm, schreier_norm,
    sigma_operator, sup_norm,
};
use schreier_lab::schreier::{is_schreier, maximal_chain_from, tau1_of, tau1_oracle};
use schreier_lab::{CoeffVector, Exponent, IndexSet, Rational, Scalar, SchreierChain, SchreierSet, Space};

fn int(v: i64) -> Rational {
    Rational::from_ratio(v, 1)
}

fn p_of(p: u32) -> Exponent {
    Exponent::integer(p).unwrap()
}

fn norm_power(x: &CoeffVector<Rational>, p: u32, space: Space) -> Rational {
    match space {
        Space::Sp => schreier_norm(x, p_of(p)).unwrap().power,
        Space::Bp => baernstein_norm(x, p_of(p)).unwrap().power,
    }
}

fn value(v: i64) -> impl Strategy<Value = i64> {
    (1..=v).prop_flat_map(|a| prop_oneof![Just(a), Just(-a)])
}

/// Sparse rational vectors with integer entries in `-4..=4`.
fn sparse(window: u64, max_support: usize) -> impl Strategy<Value = Vec<(u64, i64)>> {
    btree_map(1..=window, value(4), 0..=max_support).prop_map(|m| m.into_iter().collect())
}

fn vector(entries: &[(u64, i64)]) -> CoeffVector<Rational> {
    CoeffVector::from_entries(entries.iter().map(|&(i, v)| (i, int(v)))).unwrap()
}

fn subset(n: u64) -> impl Strategy<Value = Vec<u64>> {
    vec(any::<bool>(), n as usize).prop_map(|bits| {
        bits.iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| i as u64 + 1)
            .collect()
    })
}

fn increasing(len: usize, max_gap: u64) -> impl Strategy<Value = Vec<u64>> {
    vec(1..=max_gap, len).prop_map(|gaps| {
        gaps.iter()
            .scan(0u64, |acc, g| {
                *acc += g;
                Some(*acc)
            })
            .collect()
    })
}

/// Admissible sets: a minimum and at most that many further gaps.
fn schreier_set() -> impl Strategy<Value = Vec<u64>> {
    (1..=8u64, vec(1..=3u64, 0..8)).prop_map(|(min, gaps)| {
        let mut f = vec![min];
        for g in gaps.into_iter().take(min as usize - 1) {
            f.push(f.last().unwrap() + g);
        }
        f
    })
}

/// Successive Schreier sets of consecutive integers: each is `(gap, size)`
/// with the size clipped to the start.
fn chain(max_sets: usize) -> impl Strategy<Value = Vec<SchreierSet>> {
    vec((1..=3u64, 1..=4u64), 1..=max_sets).prop_map(|parts| {
        let mut pos = 0;
        parts
            .into_iter()
            .map(|(gap, size)| {
                let start = pos + gap;
                let elems: Vec<u64> = (start..start + size.min(start)).collect();
                pos = *elems.last().unwrap();
                SchreierSet::new(&elems).unwrap()
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn greedy_cover_matches_oracle(a in subset(12)) {
        let cert = tau1_of(&a).unwrap();
        prop_assert!(cert.verify());
        prop_assert_eq!(cert.count, tau1_oracle(&a, 14).unwrap());
    }

    #[test]
    fn cover_is_monotone(b in subset(14), keep in vec(any::<bool>(), 14)) {
        let a: Vec<u64> = b.iter().copied().filter(|v| keep[*v as usize - 1]).collect();
        prop_assert!(tau1_of(&a).unwrap().count <= tau1_of(&b).unwrap().count);
    }

    #[test]
    fn spreads_stay_schreier(f in schreier_set(), bumps in vec(0..5u64, 8)) {
        prop_assert!(is_schreier(&f).unwrap());
        let mut g = Vec::new();
        let mut prev = 0;
        for (a, b) in f.iter().zip(&bumps) {
            let v = (a + b).max(prev + 1);
            g.push(v);
            prev = v;
        }
        prop_assert!(is_schreier(&g).unwrap());
    }

    #[test]
    fn norms_match_oracle(x in sparse(12, 8), p in 1..=3u32) {
        let x = vector(&x);
        prop_assert_eq!(norm_power(&x, p, Space::Sp), oracle_norm(&x, p_of(p), Space::Sp, 14).unwrap());
        if p > 1 {
            prop_assert_eq!(norm_power(&x, p, Space::Bp), oracle_norm(&x, p_of(p), Space::Bp, 14).unwrap());
        }
    }

    #[test]
    fn witnesses_reproduce_the_norm(x in sparse(40, 14), p in 2..=3u32) {
        let x = vector(&x);
        let s = schreier_norm(&x, p_of(p)).unwrap();
        prop_assert_eq!(mu_p_power(&x, s.witness.as_set().unwrap(), p_of(p)).unwrap(), s.power);
        let b = baernstein_norm(&x, p_of(p)).unwrap();
        match b.witness.as_chain() {
            Some(c) => prop_assert_eq!(beta_p_power(&x, c, p_of(p)).unwrap(), b.power),
            None => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn norms_ignore_signs(x in sparse(16, 10), flips in vec(any::<bool>(), 10), p in 2..=3u32) {
        let y: Vec<(u64, i64)> = x.iter().zip(flips.iter().cycle()).map(|(&(i, v), f)| (i, if *f { -v } else { v })).collect();
        let (x, y) = (vector(&x), vector(&y));
        for space in [Space::Sp, Space::Bp] {
            prop_assert_eq!(norm_power(&x, p, space), norm_power(&y, p, space));
        }
    }

    #[test]
    fn norms_are_homogeneous(x in sparse(16, 10), c in value(3), p in 2..=3u32) {
        let x = vector(&x);
        let cx = x.scale(&int(c));
        let factor = int(c.abs().pow(p));
        for space in [Space::Sp, Space::Bp] {
            prop_assert_eq!(norm_power(&cx, p, space), factor.clone() * norm_power(&x, p, space));
        }
    }

    #[test]
    fn triangle_inequality(x in sparse(14, 8), y in sparse(14, 8), p in 1..=3u32) {
        let (x, y) = (vector(&x), vector(&y));
        let sum = x.add(&y);
        let sp = |v: &CoeffVector<Rational>| schreier_norm(v, p_of(p)).unwrap().value;
        prop_assert!(sp(&sum) <= (sp(&x) + sp(&y)) * (1.0 + 1e-12));
        if p > 1 {
            let bp = |v: &CoeffVector<Rational>| baernstein_norm(v, p_of(p)).unwrap().value;
            prop_assert!(bp(&sum) <= (bp(&x) + bp(&y)) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn norms_are_monotone_in_absolute_value(x in sparse(16, 10), shrink in vec(0..=4i64, 10), p in 2..=3u32) {
        let smaller: Vec<(u64, i64)> = x.iter().zip(&shrink).map(|(&(i, v), s)| (i, v.signum() * (v.abs() - s).max(0))).filter(|(_, v)| *v != 0).collect();
        let (x, y) = (vector(&x), vector(&smaller));
        for space in [Space::Sp, Space::Bp] {
            prop_assert!(norm_power(&y, p, space) <= norm_power(&x, p, space));
        }
    }

    #[test]
    fn sup_below_schreier_and_single_set_agreement(x in sparse(16, 10), p in 1..=3u32) {
        let x = vector(&x);
        let s = schreier_norm(&x, p_of(p)).unwrap();
        prop_assert!(sup_norm(&x).pow_p(p_of(p)).unwrap() <= s.power);
        let f = s.witness.as_set().unwrap().clone();
        if !f.is_empty() {
            let one = SchreierChain::new(vec![f.clone()]).unwrap();
            prop_assert_eq!(mu_p_power(&x, &f, p_of(1)).unwrap().pow_p(p_of(p)).unwrap(), beta_p_power(&x, &one, p_of(p)).unwrap());
        }
    }

    #[test]
    fn sigma_is_a_contraction(x in sparse(30, 16), c in chain(8), p in 2..=3u32) {
        let x = vector(&x);
        let y = sigma_operator(&x, &c).unwrap();
        prop_assert!(lp_norm_power(&y, p_of(p)).unwrap() <= norm_power(&x, p, Space::Bp));
    }

    #[test]
    fn decreasing_rearrangement_minimizes(vals in vec(1..=6i64, 1..=9), perm_seed in any::<u64>(), p in 1..=3u32) {
        let mut vals = vals;
        vals.sort_unstable_by(|a, b| b.cmp(a));
        let x = CoeffVector::from_dense(vals.iter().map(|&v| int(v)).collect());
        prop_assert_eq!(decreasing_rearrangement(&x), x.clone());
        let mut idx: Vec<u64> = (1..=vals.len() as u64).collect();
        let mut s = perm_seed;
        for i in (1..idx.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            idx.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = CoeffVector::from_entries(idx.into_iter().zip(vals.iter().map(|&v| int(v)))).unwrap();
        prop_assert!(norm_power(&x, p, Space::Sp) <= norm_power(&permuted, p, Space::Sp));
    }

    #[test]
    fn flat_vectors_respect_bounds(start in 1..=9u64, m in 1..=8usize, p in 1..=3u32) {
        let c = maximal_chain_from(start, m).unwrap();
        let (lo, hi) = flat_bounds_power::<Rational>(1, p_of(p), Space::Sp).unwrap();
        let v = flat_norm_power::<Rational>(&c, p_of(p), Space::Sp).unwrap();
        prop_assert!(lo <= v && v <= hi);
        if p > 1 {
            let (lo, hi) = flat_bounds_power::<Rational>(m, p_of(p), Space::Bp).unwrap();
            let v = flat_norm_power::<Rational>(&c, p_of(p), Space::Bp).unwrap();
            prop_assert!(lo <= v && v <= hi);
        }
    }

    #[test]
    fn truncated_index_is_monotone_and_witnessed(m in increasing(10, 4), n in increasing(10, 4)) {
        let (ms, ns) = (IndexSet::explicit(m.clone()).unwrap(), IndexSet::explicit(n.clone()).unwrap());
        let mut prev = 0;
        for k in 1..=10 {
            let g = gl_index_truncated(&ms, &ns, k).unwrap();
            prop_assert!(g.value >= prev);
            prev = g.value;
            prop_assert!(g.witness.iter().all(|&j| j as usize <= k));
            let image_n: Vec<u64> = g.witness.iter().map(|&j| n[j as usize - 1]).collect();
            let image_m: Vec<u64> = g.witness.iter().map(|&j| m[j as usize - 1]).collect();
            prop_assert!(is_schreier(&image_n).unwrap());
            prop_assert_eq!(tau1_oracle(&image_m, 14).unwrap(), g.value);
        }
    }

    #[test]
    fn spreads_have_index_one(n in increasing(10, 4), bumps in vec(0..4u64, 10)) {
        // M is a spread of N, so every M(J) spreads the Schreier set N(J).
        let mut m = Vec::new();
        let mut prev = 0;
        for (a, b) in n.iter().zip(&bumps) {
            let v = (a + b).max(prev + 1);
            m.push(v);
            prev = v;
        }
        let (ms, ns) = (IndexSet::explicit(m).unwrap(), IndexSet::explicit(n).unwrap());
        prop_assert!(is_spread_of(&ms, &ns, 10).unwrap());
        prop_assert_eq!(gl_index_truncated(&ms, &ns, 10).unwrap().value, 1);
    }

    #[test]
    fn domination_holds(m in increasing(8, 4), n in increasing(8, 4), coeffs in vec(value(4), 1..=8), p in 1..=3u32) {
        let (ms, ns) = (IndexSet::explicit(m).unwrap(), IndexSet::explicit(n).unwrap());
        let coeffs: Vec<Rational> = coeffs.into_iter().map(int).collect();
        prop_assert!(check_domination(&ms, &ns, 8, p_of(p), Space::Sp, &coeffs).unwrap().holds);
        if p > 1 {
            prop_assert!(check_domination(&ms, &ns, 8, p_of(p), Space::Bp, &coeffs).unwrap().holds);
        }
    }

    #[test]
    fn branches_meet_in_their_common_prefix(count in 2..=40usize, depth in 6..=20u32) {
        let fam = almost_disjoint_family(count, depth).unwrap();
        for a in 0..count {
            for b in a + 1..count {
                let shared = fam.intersection(a, b);
                let (wa, wb) = (&fam.branches[a].word, &fam.branches[b].word);
                prop_assert_eq!(shared.len(), shared_nodes(wa, wb));
                prop_assert!(shared.len() <= depth as usize);
            }
        }
    }
}
