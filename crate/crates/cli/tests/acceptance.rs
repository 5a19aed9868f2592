//! Acceptance gate: one test per release criterion, runnable with
//! `cargo test --test acceptance`. Each test pins its tolerances and seeds
//! so reruns are bit-for-bit reproducible, and prints the measured numbers
//! for inspection under `--nocapture`.

use cored::barrier::{exact_barrier, greedy_barrier, GreedyOptions};
use cored::coring::{core_product, CoredCode};
use cored::decode::{
    fit_relaxation_time, logical_class, ml_decode_oracle, pooled_fractions, synthetic_relaxation,
    BpOsd, BpOsdOptions, DecoderPriors,
};
use cored::f2::{BinaryMatrix, BitVector};
use cored::kmc::{
    ArrayTracker, BinTracker, KmcEngine, KmcOptions, RateKind, RateTable, SectorModel,
    TransitionTracker,
};
use cored::lifetime::{summarize, LifetimeOptions, LifetimeRunner, LifetimeSummary, PriorSpec};
use cored::pinwheel::{build_code, Generation, PinwheelCode, PinwheelParams, SubstitutionOrder};
use cored::product::{ProductCode, Sector};
use cored::rng::SplitMix64;
use cored::slead::{repetition_chain, ClassicalCode, Slead};
use cored_cli::families;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::time::Instant;

/// Criterion 1: the seven-vertex worked example. Checks are read straight
/// off the slead, depleting the source check opens exactly one codeword,
/// and the undepleted code has full rank.
#[test]
fn acceptance_01_seven_vertex_fixture_is_bit_exact() {
    let edges = [
        (0, 1),
        (1, 2),
        (1, 3),
        (5, 3),
        (0, 4),
        (2, 4),
        (2, 5),
        (4, 5),
        (3, 6),
        (5, 6),
    ];
    let code = ClassicalCode::new(Slead::from_edges(7, &edges).unwrap());
    let expected_checks: [&[usize]; 7] = [
        &[0],
        &[0, 1],
        &[1, 2],
        &[1, 3, 5],
        &[0, 2, 4],
        &[2, 4, 5],
        &[3, 5, 6],
    ];
    for (r, expect) in expected_checks.iter().enumerate() {
        assert_eq!(code.check_matrix().row_support(r), *expect, "check {r}");
    }
    assert_eq!(code.check_matrix().rank(), 7, "undepleted rank");
    assert_eq!(code.dimension(), 0);

    let mut depleted = code.clone();
    depleted.deplete(0).unwrap();
    let kernel = depleted.check_matrix().kernel_basis();
    let expected = BitVector::from_support(7, &[0, 1, 2, 5, 6]);
    assert_eq!(kernel, vec![expected.clone()], "kernel after depleting check 0");
    assert_eq!(depleted.codeword(0).unwrap(), expected);
    println!("criterion 1: PASS (kernel = 1110011, undepleted rank 7)");
}

fn sector_distance(css: &cored::product::CssCode, sector: Sector) -> usize {
    css.min_logical_weight(sector, css.num_qubits())
        .expect("code has logicals")
        .weight()
}

/// Criterion 2: the depleted length-3 repetition factor. Its self-product
/// is the 13-qubit distance-3 patch, and the same patch is what coring
/// carves out of the interior-depleted 4-chain product, preserving k and d
/// while strictly shrinking the qubit count.
#[test]
fn acceptance_02_chain_product_and_coring_give_the_13_qubit_patch() {
    let started = Instant::now();

    // Direct product of the boundary-depleted 3-chain.
    let mut rep3 = repetition_chain(3);
    rep3.deplete(0).unwrap();
    let product = ProductCode::hypergraph(rep3.check_matrix(), rep3.check_matrix());
    let css = product.css();
    assert_eq!(product.num_qubits(), 13);
    assert_eq!(css.dimension(), 1);
    assert_eq!(sector_distance(css, Sector::X), 3);
    assert_eq!(sector_distance(css, Sector::Z), 3);
    let commutator = css.hx().matmul(&css.hz().transpose()).unwrap();
    assert!(commutator.is_zero(), "HX * HZ^T = 0");

    // Coring the interior-depleted 4-chain product yields that same patch.
    let mut rep4 = repetition_chain(4);
    rep4.deplete(1).unwrap();
    let c = rep4.codeword(1).unwrap();
    assert_eq!(c.support(), vec![1, 2, 3], "opened length-3 repetition");
    let big = ProductCode::hypergraph(rep4.check_matrix(), rep4.check_matrix());
    let n_before = big.num_qubits();
    assert_eq!(big.css().dimension(), 1);
    assert_eq!(sector_distance(big.css(), Sector::X), 3);
    assert_eq!(sector_distance(big.css(), Sector::Z), 3);

    let cored = core_product(&big, &c, &c).unwrap();
    assert!(cored.num_qubits() < n_before, "qubit count strictly decreases");
    assert_eq!(cored.num_qubits(), 13);
    assert_eq!(cored.css().dimension(), 1, "k preserved");
    assert_eq!(sector_distance(cored.css(), Sector::X), 3, "dX preserved");
    assert_eq!(sector_distance(cored.css(), Sector::Z), 3, "dZ preserved");
    assert!(started.elapsed().as_secs() < 10, "runtime budget");
    println!(
        "criterion 2: PASS ({} -> {} qubits, k=1, d=3 both sectors)",
        n_before,
        cored.num_qubits()
    );
}

/// Criterion 3: coring preserves the dimension and both sector distances on
/// twenty random pairs of depleted slead factors, checked by brute force.
#[test]
fn acceptance_03_coring_preserves_k_and_d_on_random_factors() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(0xAC3);
    let random_factor = |rng: &mut SplitMix64| {
        let n = 3 + rng.next_index(4);
        let mut edges = Vec::new();
        for v in 0..n {
            for u in 0..v {
                if rng.next_f64() < 0.4 {
                    edges.push((u, v));
                }
            }
        }
        let mut code = ClassicalCode::new(Slead::from_edges(n, &edges).unwrap());
        let dep = rng.next_index(n);
        code.deplete(dep).unwrap();
        let c = code.codeword(dep).unwrap();
        (code, c)
    };
    for pair in 0..20 {
        let (a, ca) = random_factor(&mut rng);
        let (b, cb) = random_factor(&mut rng);
        let product = ProductCode::hypergraph(a.check_matrix(), b.check_matrix());
        let k_before = product.css().dimension();
        let dx_before = sector_distance(product.css(), Sector::X);
        let dz_before = sector_distance(product.css(), Sector::Z);
        let cored = core_product(&product, &ca, &cb)
            .unwrap_or_else(|e| panic!("pair {pair}: coring failed: {e}"));
        assert_eq!(cored.css().dimension(), k_before, "pair {pair}: k changed");
        assert_eq!(
            sector_distance(cored.css(), Sector::X),
            dx_before,
            "pair {pair}: dX changed"
        );
        assert_eq!(
            sector_distance(cored.css(), Sector::Z),
            dz_before,
            "pair {pair}: dZ changed"
        );
    }
    assert!(started.elapsed().as_secs() < 300, "runtime budget");
    println!("criterion 3: PASS (20 pairs, zero violations, {:.1?})", started.elapsed());
}

/// Criterion 4: the kinetic Monte Carlo chain samples the Boltzmann
/// distribution. Occupancies are weighted by the expected holding time of
/// each visited state; total variation against the exact distribution over
/// all 64 states of the depleted 6-chain must come out below 0.01.
#[test]
fn acceptance_04_kmc_occupancy_matches_boltzmann() {
    let started = Instant::now();
    let beta = 1.0;
    let mut rep = repetition_chain(6);
    rep.deplete(0).unwrap();
    let h = rep.check_matrix().clone();

    let mut exact = [0.0f64; 64];
    let mut z = 0.0;
    for state in 0..64usize {
        let w = BitVector::from_support(6, &support_of_mask(state));
        let e = h.mul_vector(&w).weight() as f64;
        exact[state] = (-beta * e).exp();
        z += exact[state];
    }
    for p in &mut exact {
        *p /= z;
    }

    let model = SectorModel::new(&h);
    let table = RateTable::new(RateKind::Metropolis, beta, model.max_degree());
    let mut engine = KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
    let mut rng = SplitMix64::new(0xAC4);
    let mut occupancy = [0.0f64; 64];
    let steps = 10_000_000u64;
    for _ in 0..steps {
        let state = mask_of(engine.error()) as usize;
        occupancy[state] += 1.0 / engine.census_total();
        engine.step(&mut rng);
    }
    let total: f64 = occupancy.iter().sum();
    let tv: f64 = occupancy
        .iter()
        .zip(&exact)
        .map(|(o, p)| (o / total - p).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv < 0.01, "total variation {tv:.5} >= 0.01");
    assert!(started.elapsed().as_secs() < 60, "runtime budget");
    println!("criterion 4: PASS (TV = {tv:.5} after {steps} steps)");
}

fn support_of_mask(mask: usize) -> Vec<usize> {
    (0..6).filter(|&b| mask & (1 << b) != 0).collect()
}

fn mask_of(v: &BitVector) -> u64 {
    let mut mask = 0u64;
    for b in 0..v.len() {
        if v.get(b) {
            mask |= 1 << b;
        }
    }
    mask
}

/// Criterion 5: the array and binning trackers are interchangeable. Under
/// one injected decision stream both engines hold identical state and clock
/// after ten thousand flips, and their selection distributions over a fixed
/// rate census agree by chi-square on a million draws each.
#[test]
fn acceptance_05_trackers_are_equivalent() {
    // Identical trajectories under an injected (holding-time, flip) stream.
    let built = families::newman_moore(8).unwrap();
    let n = built.h.cols();
    let make = |h: &BinaryMatrix| {
        let model = SectorModel::new(h);
        let table = RateTable::new(RateKind::Metropolis, 1.0, model.max_degree());
        (model, table)
    };
    let (model, table) = make(&built.h);
    let mut array = KmcEngine::<ArrayTracker>::new(model.clone(), table.clone(), KmcOptions::default());
    let mut binned = KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
    let mut rng = SplitMix64::new(0xAC5);
    for _ in 0..10_000 {
        let u_time = rng.next_f64();
        let q = rng.next_index(n);
        array.step_with(u_time, q);
        binned.step_with(u_time, q);
    }
    assert_eq!(array.error(), binned.error(), "error patterns diverge");
    assert_eq!(array.syndrome(), binned.syndrome(), "syndromes diverge");
    assert_eq!(array.energy(), binned.energy(), "energies diverge");
    assert_eq!(
        array.time().to_bits(),
        binned.time().to_bits(),
        "clocks diverge: {} vs {}",
        array.time(),
        binned.time()
    );

    // Sampling distributions over a fixed delta census.
    let deltas: Vec<i32> = (0..64).map(|i| (i % 9) as i32 - 4).collect();
    let table = RateTable::new(RateKind::Metropolis, 0.7, 4);
    let array = ArrayTracker::new(&deltas, &table);
    let binned = BinTracker::new(&deltas, &table);
    let draws = 1_000_000u64;
    let mut counts_a = vec![0u64; deltas.len()];
    let mut counts_b = vec![0u64; deltas.len()];
    let mut rng_a = SplitMix64::new(100);
    let mut rng_b = SplitMix64::new(200);
    let total_a = array.total(&deltas, &table);
    let total_b = binned.total(&deltas, &table);
    for _ in 0..draws {
        counts_a[array.select(rng_a.next_f64() * total_a, &deltas, &table)] += 1;
        counts_b[binned.select(rng_b.next_f64() * total_b, &deltas, &table)] += 1;
    }
    let mut chi2 = 0.0f64;
    let mut dof = 0usize;
    for (a, b) in counts_a.iter().zip(&counts_b) {
        let s = (a + b) as f64;
        if s > 0.0 {
            let d = *a as f64 - *b as f64;
            chi2 += d * d / s;
            dof += 1;
        }
    }
    let p = 1.0 - ChiSquared::new((dof - 1) as f64).unwrap().cdf(chi2);
    assert!(p > 0.001, "chi-square p = {p:.5} (chi2 = {chi2:.1}, dof = {})", dof - 1);
    println!("criterion 5: PASS (identical trajectories; chi-square p = {p:.3})");
}

fn pinwheel_family_code(order: SubstitutionOrder, t: [i64; 2], nu: f64, full: u32, partial: u32) -> PinwheelCode {
    let params = PinwheelParams { generation: Generation::new(full, partial), order, t, nu };
    build_code(&params).unwrap()
}

/// Criterion 6: barrier trends across the three families. The depleted
/// repetition chain has barrier exactly 1 at every size; the Newman-Moore
/// torus bound grows without exceeding 2*log2(L); the pinwheel bound grows
/// strictly across generations for both substitution orders, with the code
/// distances (each code holds a single codeword, so the kernel enumeration
/// is exhaustive and the distance IS the codeword weight) monotone as well.
#[test]
fn acceptance_06_barrier_trends_across_families() {
    let started = Instant::now();

    // Any nonempty proper partial sum of the chain codeword violates at
    // least one check, so 1 is also a lower bound and the greedy value of 1
    // is exact at every size.
    for n in [4usize, 8, 16] {
        let mut rep = repetition_chain(n);
        rep.deplete(0).unwrap();
        let c = rep.codeword(0).unwrap();
        assert_eq!(exact_barrier(rep.check_matrix(), &c).unwrap(), 1, "chain n={n}");
    }
    for n in [4usize, 8, 16, 32, 64] {
        let mut rep = repetition_chain(n);
        rep.deplete(0).unwrap();
        let c = rep.codeword(0).unwrap();
        let bound = greedy_barrier(rep.check_matrix(), &c, &GreedyOptions::default());
        assert_eq!(bound, 1, "chain n={n}");
    }

    let nm_beam = GreedyOptions { beam_cap: 1024, ..GreedyOptions::default() };
    let mut nm_bounds = Vec::new();
    for l in [4usize, 8, 16, 32] {
        let built = families::newman_moore(l).unwrap();
        let c = families::recorded_codeword(&built.file).unwrap();
        let bound = greedy_barrier(&built.h, &c, &nm_beam);
        assert!(
            bound as f64 <= 2.0 * (l as f64).log2(),
            "L={l}: bound {bound} above 2*log2(L)"
        );
        if let Some(&prev) = nm_bounds.last() {
            assert!(bound >= prev, "L={l}: bound decreased");
        }
        nm_bounds.push(bound);
    }
    assert_eq!(nm_bounds, vec![3, 4, 5, 6]);

    // One family per substitution order, parameters fixed across
    // generations; each code's kernel is one-dimensional, so its distance
    // equals the opened codeword's weight.
    let family_specs: [(SubstitutionOrder, [i64; 2], f64); 2] = [
        (SubstitutionOrder::A, [-2, -1], 1.0),
        (SubstitutionOrder::B, [-5, -1], 0.8),
    ];
    for (order, t, nu) in family_specs {
        let mut bounds = Vec::new();
        let mut weights = Vec::new();
        for (full, partial) in [(1u32, 0u32), (1, 2), (2, 0)] {
            let pw = pinwheel_family_code(order, t, nu, full, partial);
            let c = pw.code.codeword(pw.depleted).unwrap();
            assert_eq!(
                pw.code.check_matrix().kernel_basis().len(),
                1,
                "{order:?} ({full},{partial}): single codeword"
            );
            bounds.push(greedy_barrier(pw.code.check_matrix(), &c, &GreedyOptions::default()));
            weights.push(c.weight());
        }
        assert!(
            bounds[0] < bounds[1] && bounds[1] < bounds[2],
            "{order:?}: bounds {bounds:?} not strictly increasing"
        );
        assert!(
            weights[0] <= weights[1] && weights[1] <= weights[2],
            "{order:?}: distances {weights:?} not monotone"
        );
        println!("criterion 6: {order:?} bounds {bounds:?}, distances {weights:?}");
    }
    assert!(started.elapsed().as_secs() < 1800, "runtime budget");
    println!("criterion 6: PASS (chain 1; Newman-Moore {nm_bounds:?}; {:.1?})", started.elapsed());
}

fn cored_13_qubit_patch() -> CoredCode {
    let mut rep4 = repetition_chain(4);
    rep4.deplete(1).unwrap();
    let c = rep4.codeword(1).unwrap();
    let product = ProductCode::hypergraph(rep4.check_matrix(), rep4.check_matrix());
    core_product(&product, &c, &c).unwrap()
}

/// Criterion 7: on the 13-qubit cored patch the decoder corrects every
/// weight-1 error outright and lands in the maximum-likelihood logical
/// class on every weight-2 error, with degenerate ties counted, not failed.
///
/// A degenerate tie is a syndrome whose two logical classes both contain a
/// minimum-weight correction: the classes then differ only in how many
/// heavier corrections they hold, which a lowest-soft-weight decoder
/// cannot see. The test certifies by exhaustive enumeration that every
/// returned correction has globally minimal weight, so ties are the only
/// mismatches tolerated.
#[test]
fn acceptance_07_bp_osd_matches_the_ml_oracle() {
    let started = Instant::now();
    let cored = cored_13_qubit_patch();
    let css = cored.css();
    let n = css.num_qubits();
    let priors = DecoderPriors::uniform(n, 0.05);
    let mut ties = 0usize;
    for sector in [Sector::X, Sector::Z] {
        let h = css.matrix(sector);
        let partners = cored.logicals(sector.other());
        let mut decoder = BpOsd::new(h, BpOsdOptions::default());

        // Minimum correction weight per (syndrome, logical class), by full
        // enumeration of the 2^13 candidates.
        let mut min_weight = std::collections::BTreeMap::<(u64, u64), usize>::new();
        for mask in 0u32..(1 << n) {
            let support: Vec<usize> = (0..n).filter(|&b| mask & (1 << b) != 0).collect();
            let x = BitVector::from_support(n, &support);
            let syndrome = mask_of(&h.mul_vector(&x));
            let class = logical_class(&x, partners);
            let w = x.weight();
            min_weight
                .entry((syndrome, class))
                .and_modify(|m| *m = (*m).min(w))
                .or_insert(w);
        }

        for q in 0..n {
            let e = BitVector::from_support(n, &[q]);
            let syndrome = h.mul_vector(&e);
            let result = decoder.decode(&syndrome, &priors).unwrap();
            let mut residual = result.correction.clone();
            residual.xor_assign(&e);
            assert_eq!(
                logical_class(&residual, partners),
                0,
                "{sector:?}: weight-1 error on qubit {q} not corrected"
            );
        }

        for q1 in 0..n {
            for q2 in q1 + 1..n {
                let e = BitVector::from_support(n, &[q1, q2]);
                let syndrome = h.mul_vector(&e);
                let result = decoder.decode(&syndrome, &priors).unwrap();
                let class = logical_class(&result.correction, partners);
                let oracle = ml_decode_oracle(h, partners, &syndrome, &priors).unwrap();
                let s = mask_of(&syndrome);
                let w_here = min_weight[&(s, class)];
                let w_other = min_weight[&(s, class ^ 1)];
                assert_eq!(
                    result.weight,
                    w_here.min(w_other),
                    "{sector:?}: weight-2 error {{{q1},{q2}}} corrected above minimum weight"
                );
                if class != oracle.class {
                    assert!(
                        oracle.tied || w_here == w_other,
                        "{sector:?}: weight-2 error {{{q1},{q2}}} decoded to class {class} (min weight {w_here}), ML says {} (min weight {w_other})",
                        oracle.class
                    );
                    ties += 1;
                }
            }
        }
    }
    assert!(started.elapsed().as_secs() < 60, "runtime budget");
    println!(
        "criterion 7: PASS (all weight-1 corrected; weight-2 min-weight and ML-matched, {ties} degeneracy ties)"
    );
}

/// Criterion 8: fitting pooled synthetic relaxation curves (tau = 100,
/// saturation 1/2, 64 shots at 20 sample times) recovers tau within 2%.
#[test]
fn acceptance_08_relaxation_fit_recovers_tau() {
    let times: Vec<f64> = (1..=20).map(|j| 5.0 * j as f64).collect();
    let mut rng = SplitMix64::new(1);
    let curves = synthetic_relaxation(100.0, &times, 64, 128, &mut rng);
    let pooled = pooled_fractions(&curves);
    let samples: Vec<(f64, f64)> = times.iter().copied().zip(pooled).collect();
    let fit = fit_relaxation_time(&samples);
    let error = (fit.tau / 100.0 - 1.0).abs();
    assert!(error < 0.02, "tau estimate {:.3} off by {:.2}%", fit.tau, error * 100.0);
    println!("criterion 8: PASS (tau = {:.2}, error {:.3}%)", fit.tau, error * 100.0);
}

fn cored_pinwheel_product(full: u32, partial: u32) -> CoredCode {
    let pw = pinwheel_family_code(SubstitutionOrder::B, [-5, -1], 0.8, full, partial);
    let c = pw.code.codeword(pw.depleted).unwrap();
    let product = ProductCode::hypergraph(pw.code.check_matrix(), pw.code.check_matrix());
    core_product(&product, &c, &c).unwrap()
}

fn lifetime_summary(
    cored: &CoredCode,
    beta: f64,
    t_ec: f64,
    shots: u64,
    run_seed: u64,
) -> LifetimeSummary {
    let runner = LifetimeRunner::new(
        cored.css(),
        Sector::X,
        RateKind::Metropolis,
        beta,
        PriorSpec::Uniform(0.05),
        LifetimeOptions::new(t_ec),
    );
    let outcomes: Vec<_> =
        (0..shots).into_par_iter().map(|s| runner.run_shot(run_seed, s)).collect();
    summarize(&outcomes)
}

fn shared_t_ec(smallest: &CoredCode, beta: f64) -> f64 {
    let pilot = LifetimeRunner::new(
        smallest.css(),
        Sector::X,
        RateKind::Metropolis,
        beta,
        PriorSpec::Uniform(0.05),
        LifetimeOptions::new(1.0),
    );
    pilot.pilot_t_ec(8, 7)
}

/// Criterion 9: thermal memory lifetimes of cored pinwheel products at the
/// two smallest generations. The readout interval is piloted on the smaller
/// code and shared across sizes at each temperature. Cold side (beta = 6.3):
/// the mean lifetime grows with code size. Hot side (beta = 0.5): it does
/// not.
#[test]
fn acceptance_09_lifetime_grows_with_size_only_below_the_transition() {
    let started = Instant::now();
    let small = cored_pinwheel_product(1, 0);
    let large = cored_pinwheel_product(1, 1);
    assert!(small.num_qubits() < large.num_qubits());

    let beta_cold = 6.3;
    let t_ec = shared_t_ec(&small, beta_cold);
    let cold_small = lifetime_summary(&small, beta_cold, t_ec, 64, 11);
    let cold_large = lifetime_summary(&large, beta_cold, t_ec, 64, 11);
    assert_eq!(cold_small.censored, 0);
    assert_eq!(cold_large.censored, 0);
    let (m_small, m_large) = (cold_small.mean.unwrap(), cold_large.mean.unwrap());
    assert!(
        m_small < m_large,
        "cold lifetimes not increasing: {m_small:.3e} ({}q) vs {m_large:.3e} ({}q)",
        small.num_qubits(),
        large.num_qubits()
    );

    let beta_hot = 0.5;
    let t_ec = shared_t_ec(&small, beta_hot);
    let hot_small = lifetime_summary(&small, beta_hot, t_ec, 256, 11);
    let hot_large = lifetime_summary(&large, beta_hot, t_ec, 256, 11);
    assert_eq!(hot_small.censored, 0);
    assert_eq!(hot_large.censored, 0);
    let (h_small, h_large) = (hot_small.mean.unwrap(), hot_large.mean.unwrap());
    assert!(
        h_small >= h_large,
        "hot lifetimes increased with size: {h_small:.3e} vs {h_large:.3e}"
    );
    println!(
        "criterion 9: PASS (beta 6.3: {m_small:.3e} < {m_large:.3e}; beta 0.5: {h_small:.3e} >= {h_large:.3e}; {:.1?})",
        started.elapsed()
    );
}

/// Criterion 10: deep in the ordered phase the accumulated physical error
/// density climbs past 40% at readouts the decoder still survives.
#[test]
fn acceptance_10_decoder_survives_past_forty_percent_density() {
    let cored = cored_pinwheel_product(1, 0);
    let t_ec = shared_t_ec(&cored, 6.3);
    let summary = lifetime_summary(&cored, 6.3, t_ec, 64, 11);
    assert!(
        summary.max_surviving_density > 0.4,
        "max surviving density {:.3} never exceeded 0.4",
        summary.max_surviving_density
    );
    println!(
        "criterion 10: PASS (max surviving density {:.3})",
        summary.max_surviving_density
    );
}

/// Criterion 11: the binning tracker's per-step work depends on check
/// degrees, never on the qubit count, and a thousand-qubit torus steps at a
/// million flips per second or better.
#[test]
fn acceptance_11_constant_step_cost_and_throughput() {
    let mut touches = Vec::new();
    for l in [8usize, 16, 32] {
        let built = families::newman_moore(l).unwrap();
        let model = SectorModel::new(&built.h);
        let s = model.max_degree();
        let table = RateTable::new(RateKind::Metropolis, 1.0, s);
        let mut engine = KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
        let mut rng = SplitMix64::new(0xAC11);
        for _ in 0..100_000 {
            engine.step(&mut rng);
        }
        let max_touches = engine.stats().max_step_touches;
        assert!(
            max_touches as usize <= 2 * s * s * s,
            "L={l}: {max_touches} touches exceeds 2s^3"
        );
        touches.push(max_touches);
    }
    assert!(
        touches.windows(2).all(|w| w[0] == w[1]),
        "per-step touches vary with size: {touches:?}"
    );

    let built = families::newman_moore(32).unwrap();
    let n = built.h.cols();
    assert!(n >= 1000, "torus has {n} qubits");
    let model = SectorModel::new(&built.h);
    let table = RateTable::new(RateKind::Metropolis, 1.0, model.max_degree());
    let mut engine = KmcEngine::<BinTracker>::new(model, table, KmcOptions::default());
    let mut rng = SplitMix64::new(0xAC11);
    let steps = 10_000_000u64;
    let t0 = Instant::now();
    for _ in 0..steps {
        engine.step(&mut rng);
    }
    let rate = steps as f64 / t0.elapsed().as_secs_f64();
    assert!(rate >= 1.0e6, "throughput {rate:.2e} steps/s below 1e6");
    println!(
        "criterion 11: PASS (touches {} at every size; {rate:.2e} steps/s on {n} qubits)",
        touches[0]
    );
}
