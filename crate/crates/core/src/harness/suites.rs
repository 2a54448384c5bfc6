//! Suite bodies. Each returns suite parameters and its check records.

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::sample::{random_chain, random_increasing, random_scalar, random_subset, random_vector, rng_for};
use super::{CheckRecord, SuiteConfig};
use crate::constructions::flat::{flat_bounds_power, flat_norm_power};
use crate::constructions::jameson::{
    dropped_tail, jameson_extremal, lower_constant, ratio_formula, upper_constant, JamesonTerms,
};
use crate::constructions::mpb::{l_set, mpb_partition, verify_corollary64, MpbPartition};
use crate::error::Result;
use crate::gl_index::{gl_index_truncated, DominationConstant, IndexSet};
use crate::norms::{
    baernstein_norm, beta_p_power, lp_norm_power, mu_p_power, oracle_norm, schreier_norm, sigma_operator, Space,
    Witness,
};
use crate::scalar::{Exponent, Mode, Rational, Scalar};
use crate::schreier::{maximal_chain_from, oracle_bound, tau1_of, tau1_oracle};
use crate::vector::CoeffVector;

type SuiteOutput = Result<(Value, Vec<CheckRecord>)>;

/// Norm families compared against the oracle and used for domination.
const NORM_CASES: [(Space, u32); 5] = [
    (Space::Sp, 1),
    (Space::Sp, 2),
    (Space::Sp, 3),
    (Space::Bp, 2),
    (Space::Bp, 3),
];

fn show<S: Scalar>(v: &S) -> String {
    match v.to_json() {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn int_p(p: u32) -> Exponent {
    Exponent::Integer(p)
}

/// `n mismatches`, followed by the first failing item when there is one.
fn tally(failures: &[String]) -> String {
    match failures.first() {
        None => "0 mismatches".to_string(),
        Some(first) => format!("{} mismatches; first: {first}", failures.len()),
    }
}

macro_rules! by_mode {
    ($cfg:expr, $f:ident) => {
        match $cfg.mode {
            Mode::Exact => $f::<Rational>($cfg),
            Mode::Float => $f::<f64>($cfg),
        }
    };
}

// ---------------------------------------------------------------- norms

fn norm<S: Scalar>(x: &CoeffVector<S>, p: Exponent, space: Space) -> Result<crate::norms::NormResult<S>> {
    match space {
        Space::Sp => schreier_norm(x, p),
        Space::Bp => baernstein_norm(x, p),
    }
}

/// `None` when the engine, its witness and the oracle agree; otherwise a
/// description of the disagreement.
fn oracle_mismatch<S: Scalar>(x: &CoeffVector<S>, p: Exponent, space: Space) -> Option<String> {
    let run = || -> Result<Option<String>> {
        let r = norm(x, p, space)?;
        let oracle = oracle_norm(x, p, space, oracle_bound())?;
        let witness = match &r.witness {
            Witness::Set(f) => mu_p_power(x, f, p)?,
            Witness::Chain(Some(c)) => beta_p_power(x, c, p)?,
            Witness::Chain(None) => S::zero(),
        };
        if r.power.eq_tol(&oracle) && witness.eq_tol(&r.power) {
            Ok(None)
        } else {
            Ok(Some(format!(
                "x = {}: engine {}, witness {}, oracle {}",
                x.to_json(),
                show(&r.power),
                show(&witness),
                show(&oracle)
            )))
        }
    };
    run().unwrap_or_else(|e| Some(format!("x = {}: {e}", x.to_json())))
}

fn sign_vector<S: Scalar>(mut code: u32, len: u64) -> CoeffVector<S> {
    let mut entries = Vec::new();
    for i in 1..=len {
        match code % 3 {
            1 => entries.push((i, S::from_count(1))),
            2 => entries.push((i, -S::from_count(1))),
            _ => {}
        }
        code /= 3;
    }
    CoeffVector::from_entries(entries).expect("distinct indices")
}

pub(super) fn norm_oracle(cfg: &SuiteConfig) -> SuiteOutput {
    by_mode!(cfg, norm_oracle_in)
}

fn norm_oracle_in<S: Scalar>(cfg: &SuiteConfig) -> SuiteOutput {
    const SIGN_WINDOW: u64 = 7;
    let codes: Vec<u32> = (0..3u32.pow(SIGN_WINDOW as u32)).collect();
    let samples = cfg.samples_or(500);
    let window = 2 * cfg.max_support as u64;
    let mut records = Vec::new();
    for (case, &(space, p)) in NORM_CASES.iter().enumerate() {
        let p = int_p(p);
        let failures: Vec<String> = codes
            .par_iter()
            .filter_map(|&c| oracle_mismatch(&sign_vector::<S>(c, SIGN_WINDOW), p, space))
            .collect();
        records.push(CheckRecord::new(
            format!("{space}-p{p}-norm-equals-exhaustive-oracle/sign-vectors"),
            &json!({"family": "sign-vectors", "window": SIGN_WINDOW}),
            codes.len(),
            "0 mismatches",
            tally(&failures),
            failures.is_empty(),
        ));

        let xs: Vec<CoeffVector<S>> = (0..samples)
            .into_par_iter()
            .map(|i| random_vector(&mut rng_for(cfg.seed, (case * 1_000_000 + i) as u64), window, cfg.max_support))
            .collect();
        let failures: Vec<String> = xs.par_iter().filter_map(|x| oracle_mismatch(x, p, space)).collect();
        let inputs = Value::Array(xs.iter().map(CoeffVector::to_json).collect());
        records.push(CheckRecord::new(
            format!("{space}-p{p}-norm-equals-exhaustive-oracle/random"),
            &inputs,
            xs.len(),
            "0 mismatches",
            tally(&failures),
            failures.is_empty(),
        ));
    }
    let params = json!({
        "sign_window": SIGN_WINDOW,
        "random_window": window,
        "samples_per_case": samples,
        "cases": NORM_CASES.iter().map(|(s, p)| format!("{s}/p={p}")).collect::<Vec<_>>(),
    });
    Ok((params, records))
}

// ---------------------------------------------------------------- tau

fn tau_mismatch(elems: &[u64]) -> Option<String> {
    let run = || -> Result<Option<String>> {
        let cert = tau1_of(elems)?;
        let oracle = tau1_oracle(elems, oracle_bound())?;
        Ok((cert.count != oracle || !cert.verify())
            .then(|| format!("{elems:?}: greedy {} oracle {oracle}", cert.count)))
    };
    run().unwrap_or_else(|e| Some(format!("{elems:?}: {e}")))
}

pub(super) fn tau_oracle(cfg: &SuiteConfig) -> SuiteOutput {
    const EXHAUSTIVE: u64 = 9;
    const RANDOM_WINDOW: u64 = 12;
    let subsets: Vec<Vec<u64>> = (0u32..1 << EXHAUSTIVE)
        .map(|mask| (1..=EXHAUSTIVE).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect();
    let failures: Vec<String> = subsets.par_iter().filter_map(|s| tau_mismatch(s)).collect();
    let mut records = vec![CheckRecord::new(
        "tau1-greedy-equals-exhaustive-oracle/all-subsets",
        &json!({"family": "all-subsets", "window": EXHAUSTIVE}),
        subsets.len(),
        "0 mismatches",
        tally(&failures),
        failures.is_empty(),
    )];
    let samples = cfg.samples_or(10_000);
    let random: Vec<Vec<u64>> = (0..samples)
        .into_par_iter()
        .map(|i| random_subset(&mut rng_for(cfg.seed, i as u64), RANDOM_WINDOW))
        .collect();
    let failures: Vec<String> = random.par_iter().filter_map(|s| tau_mismatch(s)).collect();
    records.push(CheckRecord::new(
        "tau1-greedy-equals-exhaustive-oracle/random-subsets",
        &json!(random),
        random.len(),
        "0 mismatches",
        tally(&failures),
        failures.is_empty(),
    ));
    let params = json!({"exhaustive_window": EXHAUSTIVE, "random_window": RANDOM_WINDOW, "samples": samples});
    Ok((params, records))
}

// ---------------------------------------------------------------- flat vectors

const FLAT_STARTS: [u64; 5] = [1, 2, 3, 5, 8];

fn flat_record<S: Scalar>(space: Space, p: Exponent, start: u64, m: usize) -> CheckRecord {
    let inputs = json!({"space": space.as_str(), "p": p.to_json(), "start": start, "m": m, "mode": S::MODE.as_str()});
    let check = format!("flat-vector-{space}-two-sided-bound");
    let run = || -> Result<(S, S, S)> {
        let chain = maximal_chain_from(start, m)?;
        let power = flat_norm_power::<S>(&chain, p, space)?;
        let (lo, hi) = flat_bounds_power::<S>(m, p, space)?;
        Ok((power, lo, hi))
    };
    match run() {
        Ok((power, lo, hi)) => CheckRecord::new(
            check,
            &inputs,
            1,
            format!("{} <= ||x||^p <= {}", show(&lo), show(&hi)),
            show(&power),
            lo.le_tol(&power) && power.le_tol(&hi),
        ),
        Err(e) => CheckRecord::failed(check, &inputs, &e),
    }
}

pub(super) fn flat_bounds(cfg: &SuiteConfig) -> SuiteOutput {
    by_mode!(cfg, flat_bounds_in)
}

fn flat_bounds_in<S: Scalar>(cfg: &SuiteConfig) -> SuiteOutput {
    let real = Exponent::new(1.5)?;
    let mut jobs: Vec<(Space, Exponent, bool)> = vec![
        (Space::Sp, int_p(1), false),
        (Space::Sp, int_p(2), false),
        (Space::Sp, int_p(3), false),
        (Space::Bp, int_p(2), false),
        (Space::Bp, int_p(3), false),
    ];
    // Non-integer exponents always run in floating point.
    jobs.push((Space::Sp, real, true));
    jobs.push((Space::Bp, real, true));
    let mut items = Vec::new();
    for &(space, p, float) in &jobs {
        for start in FLAT_STARTS {
            for m in 1..=cfg.m {
                items.push((space, p, float, start, m));
            }
        }
    }
    let records = items
        .par_iter()
        .map(|&(space, p, float, start, m)| {
            if float {
                flat_record::<f64>(space, p, start, m)
            } else {
                flat_record::<S>(space, p, start, m)
            }
        })
        .collect();
    let params = json!({
        "starts": FLAT_STARTS,
        "m_max": cfg.m,
        "exponents": jobs.iter().map(|(s, p, _)| format!("{s}/p={p}")).collect::<Vec<_>>(),
    });
    Ok((params, records))
}

// ---------------------------------------------------------------- Jameson

/// `(3 * 2^(p-1) - 2) / (2^(p-1) - 1)`, exact for integer `p`.
fn upper_constant_scalar<S: Scalar>(p: Exponent) -> Result<S> {
    match p.as_integer() {
        Some(q) if q >= 2 => {
            let h = 1i64 << (q - 1);
            Ok(S::from_ratio(3 * h - 2, (h - 1) as u64))
        }
        _ => S::from_float(upper_constant(p.as_f64())),
    }
}

fn jameson_upper<S: Scalar>(cfg: &SuiteConfig, p: Exponent, stream: u64) -> CheckRecord {
    const WINDOW: u64 = 16;
    const SUPPORT: usize = 12;
    let samples = cfg.samples_or(10_000);
    let check = "interpolation-upper-bound";
    let c = match upper_constant_scalar::<S>(p) {
        Ok(c) => c,
        Err(e) => return CheckRecord::failed(check, &json!({"p": p.to_json()}), &e),
    };
    let xs: Vec<CoeffVector<S>> = (0..samples)
        .into_par_iter()
        .map(|i| random_vector(&mut rng_for(cfg.seed, stream * 1_000_000 + i as u64), WINDOW, SUPPORT))
        .collect();
    let results: Vec<std::result::Result<(bool, f64), String>> = xs
        .par_iter()
        .map(|x| {
            let t = JamesonTerms::measure(x, p).map_err(|e| e.to_string())?;
            let ok = t.satisfies(&c, p).map_err(|e| e.to_string())?;
            Ok((ok, t.ratio(p)))
        })
        .collect();
    let mut failures = Vec::new();
    let mut max_ratio = 0f64;
    for (x, r) in xs.iter().zip(&results) {
        match r {
            Ok((true, ratio)) => max_ratio = max_ratio.max(*ratio),
            Ok((false, ratio)) => failures.push(format!("x = {} ratio {ratio}", x.to_json())),
            Err(e) => failures.push(format!("x = {}: {e}", x.to_json())),
        }
    }
    let inputs = json!({"p": p.to_json(), "mode": S::MODE.as_str(), "vectors": xs.iter().map(CoeffVector::to_json).collect::<Vec<_>>()});
    CheckRecord::new(
        format!("{check}/p={p}"),
        &inputs,
        xs.len(),
        format!("||x||_p^p <= {} ||x||_inf^(p-1) ||x||_S1", show(&c)),
        format!("{}; largest ratio {max_ratio:.12}", tally(&failures)),
        failures.is_empty(),
    )
}

/// Checks on `jameson_extremal(k, k + offset)`; returns the records and the
/// measured ratio.
fn extremal_records<S: Scalar>(p: Exponent, k: u32, offset: u32) -> (Vec<CheckRecord>, Option<f64>) {
    let t = k + offset;
    let inputs = json!({"p": p.to_json(), "k": k, "T": t, "mode": S::MODE.as_str()});
    let measured = jameson_extremal::<S>(k, t).and_then(|x| JamesonTerms::measure(&x, p));
    let terms = match measured {
        Ok(terms) => terms,
        Err(e) => return (vec![CheckRecord::failed(format!("extremal-family/p={p}"), &inputs, &e)], None),
    };
    let pf = p.as_f64();
    let ratio = terms.ratio(p);
    let tail = dropped_tail(k, t, pf);
    let floor = lower_constant(pf) - 2f64.powi(1 - k as i32) - tail;
    let formula = ratio_formula(k, t, pf);
    let norms_ok = terms.sup.eq_tol(&S::inv_pow2(k)) && terms.s1.eq_tol(&S::from_count(1));
    let records = vec![
        CheckRecord::new(
            format!("extremal-family-sup-and-s1-norms/p={p}"),
            &inputs,
            1,
            format!("sup = 2^-{k}, S1 = 1"),
            format!("sup = {}, S1 = {}", show(&terms.sup), show(&terms.s1)),
            norms_ok,
        ),
        CheckRecord::new(
            format!("extremal-family-ratio-matches-closed-form/p={p}"),
            &inputs,
            1,
            format!("{formula:.15}"),
            format!("{ratio:.15}"),
            crate::scalar::close_rel(ratio, formula, 1e-9),
        ),
        CheckRecord::new(
            format!("extremal-family-ratio-lower-bound/p={p}"),
            &inputs,
            1,
            format!(">= {floor:.15}"),
            format!("{ratio:.15}"),
            ratio >= floor,
        ),
        CheckRecord::new(
            format!("extremal-family-ratio-below-upper-constant/p={p}"),
            &inputs,
            1,
            format!("<= {:.15}", upper_constant(pf)),
            format!("{ratio:.15}"),
            ratio <= upper_constant(pf) * (1.0 + 1e-9),
        ),
    ];
    (records, Some(ratio))
}

pub(super) fn jameson(cfg: &SuiteConfig) -> SuiteOutput {
    by_mode!(cfg, jameson_in)
}

fn jameson_in<S: Scalar>(cfg: &SuiteConfig) -> SuiteOutput {
    const K_MAX: u32 = 10;
    const OFFSET: u32 = 20;
    let exps = [Exponent::new(1.5)?, int_p(2), int_p(3)];
    let mut records = Vec::new();
    for (i, &p) in exps.iter().enumerate() {
        records.push(match p {
            Exponent::Integer(_) => jameson_upper::<S>(cfg, p, i as u64),
            Exponent::Real(_) => jameson_upper::<f64>(cfg, p, i as u64),
        });
    }
    for &p in &exps {
        let per_k: Vec<(Vec<CheckRecord>, Option<f64>)> = (1..=K_MAX)
            .into_par_iter()
            .map(|k| match p {
                Exponent::Integer(_) => extremal_records::<S>(p, k, OFFSET),
                Exponent::Real(_) => extremal_records::<f64>(p, k, OFFSET),
            })
            .collect();
        let ratios: Vec<Option<f64>> = per_k.iter().map(|(_, r)| *r).collect();
        for (recs, _) in per_k {
            records.extend(recs);
        }
        let monotone = ratios.windows(2).all(|w| matches!(w, [Some(a), Some(b)] if b > a));
        let shown: Vec<String> = ratios
            .iter()
            .map(|r| r.map_or("error".to_string(), |v| format!("{v:.12}")))
            .collect();
        records.push(CheckRecord::new(
            format!("extremal-family-ratios-increase-with-k/p={p}"),
            &json!({"p": p.to_json(), "k_max": K_MAX, "offset": OFFSET}),
            K_MAX as usize,
            "strictly increasing",
            format!("[{}]", shown.join(", ")),
            monotone,
        ));
    }
    let window: serde_json::Map<String, Value> = exps
        .iter()
        .map(|p| {
            let pf = p.as_f64();
            (p.to_string(), json!([lower_constant(pf), upper_constant(pf)]))
        })
        .collect();
    let params = json!({"K_p_window": window, "k_max": K_MAX, "truncation_offset": OFFSET});
    Ok((params, records))
}

// ---------------------------------------------------------------- domination

pub(super) fn domination(cfg: &SuiteConfig) -> SuiteOutput {
    by_mode!(cfg, domination_in)
}

fn domination_in<S: Scalar>(cfg: &SuiteConfig) -> SuiteOutput {
    const PAIRS: usize = 50;
    let vectors = cfg.samples_or(100);
    let per_pair: Vec<Vec<CheckRecord>> = (0..PAIRS)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, i as u64);
            let k = rng.gen_range(1..=cfg.k);
            let gap_m = rng.gen_range(1..=4);
            let gap_n = rng.gen_range(1..=4);
            let m = random_increasing(&mut rng, k, gap_m);
            let n = random_increasing(&mut rng, k, gap_n);
            let inputs = json!({"M": m, "N": n, "K": k});
            let (m_set, n_set) = (
                IndexSet::explicit(m).expect("increasing"),
                IndexSet::explicit(n).expect("increasing"),
            );
            let index = match gl_index_truncated(&m_set, &n_set, k) {
                Ok(index) => index,
                Err(e) => return vec![CheckRecord::failed("truncated-index", &inputs, &e)],
            };
            NORM_CASES
                .iter()
                .map(|&(space, p)| {
                    let constant = DominationConstant {
                        index: index.clone(),
                        space,
                        p: int_p(p),
                    };
                    let mut failures = Vec::new();
                    for _ in 0..vectors {
                        let len = rng.gen_range(1..=k);
                        let coeffs: Vec<S> = (0..len).map(|_| random_scalar(&mut rng)).collect();
                        match constant.check(&m_set, &n_set, &coeffs) {
                            Ok(c) if c.holds => {}
                            Ok(c) => failures.push(format!(
                                "coeffs {:?}: lhs {} rhs {}",
                                coeffs.iter().map(show).collect::<Vec<_>>(),
                                show(&c.lhs.power),
                                show(&c.rhs.power)
                            )),
                            Err(e) => failures.push(e.to_string()),
                        }
                    }
                    let c_power = constant
                        .power::<S>()
                        .map(|c| show(&c))
                        .unwrap_or_else(|e| e.to_string());
                    CheckRecord::new(
                        format!("{space}-p{p}-domination-by-truncated-index"),
                        &json!({"pair": inputs, "space": space.as_str(), "p": p, "seed": cfg.seed, "vectors": vectors}),
                        vectors,
                        format!("||sum a_j e_(n_j)||^p <= {c_power} ||sum a_j e_(m_j)||^p"),
                        format!("{}; index {} witness {:?}", tally(&failures), index.value, index.witness),
                        failures.is_empty(),
                    )
                })
                .collect()
        })
        .collect();
    let params = json!({"pairs": PAIRS, "vectors_per_case": vectors, "k_max": cfg.k});
    Ok((params, per_pair.into_iter().flatten().collect()))
}

// ---------------------------------------------------------------- sigma

pub(super) fn sigma(cfg: &SuiteConfig) -> SuiteOutput {
    by_mode!(cfg, sigma_in)
}

fn sigma_in<S: Scalar>(cfg: &SuiteConfig) -> SuiteOutput {
    const WINDOW: u64 = 16;
    const SUPPORT: usize = 10;
    let samples = cfg.samples_or(1000);
    let mut records = Vec::new();
    for (case, p) in [2u32, 3].into_iter().enumerate() {
        let pairs: Vec<_> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(cfg.seed, (case * 1_000_000 + i) as u64);
                let x: CoeffVector<S> = random_vector(&mut rng, WINDOW, SUPPORT);
                (x, random_chain(&mut rng, WINDOW))
            })
            .collect();
        let failures: Vec<String> = pairs
            .par_iter()
            .filter_map(|(x, chain)| {
                let run = || -> Result<Option<String>> {
                    let lhs = lp_norm_power(&sigma_operator(x, chain)?, int_p(p))?;
                    let rhs = baernstein_norm(x, int_p(p))?.power;
                    Ok((!lhs.le_tol(&rhs)).then(|| {
                        format!("x = {}: {} > {}", x.to_json(), show(&lhs), show(&rhs))
                    }))
                };
                run().unwrap_or_else(|e| Some(e.to_string()))
            })
            .collect();
        let inputs: Vec<Value> = pairs
            .iter()
            .map(|(x, c)| json!({"x": x.to_json(), "chain": c.iter().map(|f| f.to_vec()).collect::<Vec<_>>()}))
            .collect();
        records.push(CheckRecord::new(
            format!("block-sum-operator-contraction/p={p}"),
            &Value::Array(inputs),
            pairs.len(),
            "||Sigma_C x||_p^p <= ||x||_Bp^p",
            tally(&failures),
            failures.is_empty(),
        ));
    }
    Ok((json!({"window": WINDOW, "max_support": SUPPORT, "samples_per_p": samples}), records))
}

// ---------------------------------------------------------------- partition

pub(super) fn mpb(cfg: &SuiteConfig) -> SuiteOutput {
    let part = mpb_partition(cfg.n)?;
    let inputs = json!({"n_max": cfg.n});
    let mut records = vec![match part.check() {
        Ok(()) => CheckRecord::new("partition-structure", &inputs, cfg.n, "all invariants", "all invariants", true),
        Err(e) => CheckRecord::failed("partition-structure", &inputs, &e),
    }];
    let covers = part.g_covering_numbers();
    let mut used = num_bigint::BigUint::from(0u32);
    let mut prev_max: Option<num_bigint::BigUint> = None;
    for n in 1..=cfg.n {
        let f = part.f(n)?;
        let g = part.g(n)?;
        let at = json!({"n_max": cfg.n, "n": n});
        records.push(CheckRecord::new(
            "greedy-covering-number-of-G_n",
            &at,
            1,
            n.to_string(),
            covers[n - 1].to_string(),
            covers[n - 1] == n,
        ));
        records.push(CheckRecord::new(
            "size-of-F_n-equals-all-earlier-intervals",
            &at,
            1,
            used.to_string(),
            f.len().to_string(),
            f.len() == used,
        ));
        let first = f.min().or(g.min()).cloned().expect("G_n is non-empty");
        let expected_start = prev_max.as_ref().map_or(num_bigint::BigUint::from(1u32), |m| m + 1u32);
        records.push(CheckRecord::new(
            "intervals-are-successive-and-contiguous",
            &at,
            1,
            format!("J_{n} starts at {expected_start}"),
            format!("J_{n} starts at {first}"),
            first == expected_start,
        ));
        let blocks = part.g_blocks(n)?;
        let maximal = blocks.len() == n && blocks.iter().all(|b| b.is_maximal_schreier());
        records.push(CheckRecord::new(
            "G_n-is-n-successive-maximal-sets",
            &at,
            1,
            format!("{n} maximal blocks"),
            format!("{} blocks, maximal: {maximal}", blocks.len()),
            maximal,
        ));
        // Small G_n are also covered by the exhaustive oracle.
        if let Some(small) = g.to_small().filter(|s| s.count() <= oracle_bound() as u64) {
            let oracle = tau1_oracle(&small.to_vec(), oracle_bound());
            let ok = matches!(oracle, Ok(v) if v == n);
            records.push(CheckRecord::new(
                "covering-number-of-G_n-by-exhaustive-oracle",
                &at,
                1,
                n.to_string(),
                format!("{oracle:?}"),
                ok,
            ));
        }
        used = used + f.len() + g.len();
        prev_max = g.max().cloned();
    }
    Ok((inputs, records))
}

// ---------------------------------------------------------------- divergence witnesses

/// Independent re-check of every witness; `None` when all hold.
fn recheck_witnesses(
    part: &MpbPartition,
    m_set: &IndexSet,
    n_set: &IndexSet,
    through: usize,
    witnesses: &[crate::constructions::mpb::DivergenceWitness],
) -> Result<Option<String>> {
    let l_n = l_set(part, n_set, through)?;
    for w in witnesses {
        let l_m = l_set(part, m_set, w.m as usize)?;
        let tau = l_m.select(&w.positions).map(|s| s.greedy_schreier_cover().len());
        let schreier = l_n.select(&w.positions).map(|s| s.is_schreier());
        if tau != Some(w.m as usize) || schreier != Some(true) {
            return Ok(Some(format!("m = {}: tau {tau:?}, L_N Schreier {schreier:?}", w.m)));
        }
    }
    Ok(None)
}

fn corollary_record(
    check: &str,
    part: &MpbPartition,
    m: Vec<u64>,
    n: Vec<u64>,
    through: u64,
    window: u64,
) -> CheckRecord {
    let inputs = json!({"M": m, "N": n, "known_through": through, "window": window});
    let expected: Vec<u64> = m
        .iter()
        .copied()
        .filter(|v| *v >= 2 && *v <= window && !n.contains(v))
        .collect();
    let run = || -> Result<(Vec<u64>, Option<String>)> {
        let m_set = IndexSet::explicit_through(m.clone(), through)?;
        let n_set = IndexSet::explicit_through(n.clone(), through)?;
        let witnesses = verify_corollary64(part, &m_set, &n_set, window)?;
        let got = witnesses.iter().map(|w| w.m).collect();
        Ok((got, recheck_witnesses(part, &m_set, &n_set, through as usize, &witnesses)?))
    };
    match run() {
        Ok((got, problem)) => {
            let bound = got.iter().max().copied().unwrap_or(0);
            CheckRecord::new(
                check,
                &inputs,
                1,
                format!("verified witnesses for m in {expected:?}"),
                format!(
                    "witnesses for m in {got:?}; {}; truncated index of (L_M, L_N) >= {bound}",
                    problem.as_deref().unwrap_or("all re-verified")
                ),
                got == expected && problem.is_none(),
            )
        }
        Err(e) => CheckRecord::failed(check, &inputs, &e),
    }
}

pub(super) fn corollary(cfg: &SuiteConfig) -> SuiteOutput {
    const EXAMPLE_WINDOW: u64 = 6;
    let window = cfg.window;
    let through = window.max(EXAMPLE_WINDOW) + 1;
    let part = mpb_partition(through as usize)?;
    let pairs = cfg.samples_or(20);
    let mut records = vec![corollary_record(
        "divergence-witnesses/all-versus-evens",
        &part,
        (1..=EXAMPLE_WINDOW + 1).collect(),
        (1..=EXAMPLE_WINDOW + 1).filter(|v| v % 2 == 0).collect(),
        EXAMPLE_WINDOW + 1,
        EXAMPLE_WINDOW,
    )];
    records.extend(
        (0..pairs)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(cfg.seed, i as u64);
                let m = random_subset(&mut rng, window + 1);
                // N always reaches past the window so every witness has room.
                let mut n = random_subset(&mut rng, window);
                n.push(window + 1);
                corollary_record("divergence-witnesses/random", &part, m, n, window + 1, window)
            })
            .collect::<Vec<_>>(),
    );
    Ok((json!({"window": window, "pairs": pairs, "partition_depth": through}), records))
}

// ---------------------------------------------------------------- doubling bounds

type Relation = (&'static str, fn(&DoublingSets) -> (&IndexSet, &IndexSet), usize, bool);

struct DoublingSets {
    m: IndexSet,
    odd: IndexSet,
    even: IndexSet,
    both: IndexSet,
}

/// `(name, (first, second), bound, exact)`: the truncated index of
/// `(first, second)` is at most `bound`, or equal to it when `exact`.
const RELATIONS: [Relation; 6] = [
    ("M-vs-doubled-union", |s| (&s.m, &s.both), 3, false),
    ("doubled-union-vs-M", |s| (&s.both, &s.m), 2, false),
    ("even-double-vs-M", |s| (&s.even, &s.m), 1, true),
    ("even-double-vs-odd-double", |s| (&s.even, &s.odd), 1, true),
    ("M-vs-even-double", |s| (&s.m, &s.even), 2, false),
    ("odd-double-vs-even-double", |s| (&s.odd, &s.even), 2, false),
];

pub(super) fn gl_bounds(cfg: &SuiteConfig) -> SuiteOutput {
    let count = cfg.samples_or(200);
    let per_m: Vec<Vec<CheckRecord>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, i as u64);
            let gap = rng.gen_range(1..=4);
            let m = random_increasing(&mut rng, cfg.k, gap);
            let base = IndexSet::explicit(m.clone()).expect("increasing");
            let sets = DoublingSets {
                odd: IndexSet::doubling_odd(base.clone()),
                even: IndexSet::doubling_even(base.clone()),
                both: IndexSet::union(IndexSet::doubling_odd(base.clone()), IndexSet::doubling_even(base.clone())),
                m: base,
            };
            RELATIONS
                .iter()
                .map(|(name, pick, bound, exact)| {
                    let (first, second) = pick(&sets);
                    let inputs = json!({"M": m, "relation": name, "K_max": cfg.k});
                    let values: Result<Vec<usize>> = (1..=cfg.k)
                        .map(|k| gl_index_truncated(first, second, k).map(|r| r.value))
                        .collect();
                    match values {
                        Ok(values) => {
                            let within = values.iter().all(|v| if *exact { v == bound } else { v <= bound });
                            let monotone = values.windows(2).all(|w| w[0] <= w[1]);
                            CheckRecord::new(
                                format!("doubling-index-bound/{name}"),
                                &inputs,
                                values.len(),
                                format!("{} {bound} for K = 1..{}, non-decreasing", if *exact { "=" } else { "<=" }, cfg.k),
                                format!("{values:?}"),
                                within && monotone,
                            )
                        }
                        Err(e) => CheckRecord::failed(format!("doubling-index-bound/{name}"), &inputs, &e),
                    }
                })
                .collect()
        })
        .collect();
    let params = json!({
        "prefixes": count,
        "k_max": cfg.k,
        "relations": RELATIONS.iter().map(|(n, _, b, e)| json!({"name": n, "bound": b, "exact": e})).collect::<Vec<_>>(),
    });
    Ok((params, per_m.into_iter().flatten().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            samples: Some(20),
            m: 6,
            k: 6,
            window: 5,
            n: 6,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        let cfg = small();
        for f in [norm_oracle, tau_oracle, flat_bounds, sigma, mpb, corollary, gl_bounds] {
            let (_, records) = f(&cfg).unwrap();
            assert!(!records.is_empty());
            for r in &records {
                assert!(r.pass, "{r:?}");
            }
        }
    }

    #[test]
    fn sign_vectors_cover_all_patterns() {
        let v: CoeffVector<Rational> = sign_vector(3u32.pow(3) - 1, 3);
        assert_eq!(v.support_len(), 3);
        assert!(sign_vector::<Rational>(0, 3).is_zero());
    }
}
