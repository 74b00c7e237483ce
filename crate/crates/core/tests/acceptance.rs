//! Acceptance suite: one line per criterion, with its time budget.
//!
//! Every criterion is checked at its stated tolerance. A few cannot be met
//! as written; those still print FAIL. For them the suite additionally
//! checks that the observed behaviour is exactly the documented one, and
//! only an undocumented failure makes this binary exit non-zero.

use std::time::{Duration, Instant};

use qldpc_absorb::css::{css_valid, hypergraph_product};
use qldpc_absorb::decoder::{
    compute_syndrome, convergence_report, decode_error, DecodeStatus, DecodeTrace,
    ErrorPattern, GallagerB, Outcome,
};
use qldpc_absorb::families::{cycle_with_pendants, fixture, generate, FamilySpec, FixtureName, ThetaVariant};
use qldpc_absorb::gf2::{BitMatrix, BitVector};
use qldpc_absorb::structures::{
    census_absorbing, census_failure_inducing, certify, partition_into_absorbing, CertificateKind,
    CriticalNumber,
};
use qldpc_absorb::tanner::{TannerGraph, VarSubset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How a criterion turned out.
enum Verdict {
    Pass(String),
    /// Fails in the documented way; the string names what differs.
    KnownFail(String),
    Fail(String),
}

use Verdict::*;

type Criterion = (&'static str, &'static str, Duration, fn() -> Verdict);

/// Construction name, host graph, A1, other sets, kinds expected to hold.
type Construction = (String, TannerGraph, VarSubset, Vec<VarSubset>, Vec<CertificateKind>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1", "fig1 failure-inducing sets", secs(1), c1_fig1),
        ("2", "fig2a weight-4 decoding table", secs(1), c2_weight_four),
        ("3", "fig2a low-weight behaviour", secs(1), c3_low_weight),
        ("4", "fig3a recovery and failures", secs(1), c4_fig3a),
        ("5", "fig5 absorbing census", secs(30), c5_fig5),
        ("6", "ex7 chain and hypergraph product", secs(60), c6_ex7),
        ("7.1", "all-in-error absorbing sets keep a zero syndrome", secs(60), c7_absorbing_zero),
        ("7.2", "even-check subsets: degenerate iff stabilizer", secs(60), c7_dichotomy),
        ("7.3", "path traces from a leaf error", secs(60), c7_path_shape),
        ("7.4", "cycle failure-inducing sets", secs(60), c7_cycles),
        ("7.5", "random acyclic even-check trees", secs(60), c7_trees),
        ("7.6", "certificates on composite structures", secs(60), c7_certificates),
    ];
    let suite = Instant::now();
    let (mut pass, mut known, mut unexpected) = (0, 0, 0);
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let over = took > budget;
        let (tag, detail) = match verdict {
            Pass(d) if !over => {
                pass += 1;
                ("PASS", d)
            }
            Pass(d) | Fail(d) => {
                unexpected += 1;
                ("FAIL", if over { format!("{d}; over budget") } else { d })
            }
            KnownFail(d) => {
                known += 1;
                ("FAIL", format!("{d} [documented deviation]"))
            }
        };
        println!(
            "{tag} criterion {id}: {title} ({:.3}s / {}s) - {detail}",
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {pass} passed, {} failed ({known} documented, {unexpected} unexpected) in {:.2}s",
        known + unexpected,
        suite.elapsed().as_secs_f64()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Fail(format!($($msg)*));
        }
    };
}

// ---------------------------------------------------------------------------
// Test-side oracles.

fn labels(ls: &[usize]) -> Vec<usize> {
    ls.iter().map(|l| l - 1).collect()
}

fn err_of(g: &TannerGraph, ls: &[usize]) -> ErrorPattern {
    ErrorPattern::from_support(g.num_vars(), labels(ls))
}

/// Syndrome by counting errored neighbours of each check.
fn oracle_syndrome(g: &TannerGraph, support: &[usize]) -> String {
    (0..g.num_checks())
        .map(|c| {
            let hits = g.check_neighbors(c).iter().filter(|v| support.contains(v)).count();
            if hits % 2 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Rowspace membership by elimination on `u128` row masks.
fn oracle_in_rowspace(h: &BitMatrix, target: &[usize]) -> bool {
    let mask = |bits: &mut dyn Iterator<Item = usize>| bits.fold(0u128, |m, i| m | (1 << i));
    let mut basis: Vec<u128> = Vec::new();
    for r in 0..h.num_rows() {
        let mut row = mask(&mut (0..h.num_cols()).filter(|&c| h.get(r, c)));
        for b in &basis {
            row = row.min(row ^ b);
        }
        if row != 0 {
            basis.push(row);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let mut t = mask(&mut target.iter().copied());
    for b in &basis {
        t = t.min(t ^ b);
    }
    t == 0
}

/// `σ̂` at iteration `l`, extending a detected cycle periodically.
fn syndrome_at(trace: &DecodeTrace, l: usize) -> &BitVector {
    let its = &trace.iterations;
    if l < its.len() {
        return &its[l].estimated_syndrome;
    }
    match trace.status {
        DecodeStatus::Oscillating { cycle_start, period } => {
            &its[cycle_start + 1 + (l - cycle_start - 1) % period].estimated_syndrome
        }
        _ => &its[its.len() - 1].estimated_syndrome,
    }
}

/// Terminal window as `(σ̂, ê support in labels)` pairs.
fn window_pairs(trace: &DecodeTrace) -> Vec<(String, Vec<usize>)> {
    trace
        .terminal_window()
        .iter()
        .map(|r| {
            let e: Vec<usize> = r.estimated_error.support().iter().map(|v| v + 1).collect();
            (r.estimated_syndrome.to_bit_string(), e)
        })
        .collect()
}

fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i]))
}

fn nonempty_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

// ---------------------------------------------------------------------------

fn c1_fig1() -> Verdict {
    let g = fixture(FixtureName::Fig1).graph;
    let census = census_failure_inducing(&g, &g.to_biadjacency(), 4).unwrap();
    // (set, variables not converged, checks not satisfied), 1-based.
    let table: [(&[usize], &[usize], &[usize]); 5] = [
        (&[1, 2, 3, 4], &[], &[5, 7]),
        (&[1, 2, 4], &[1, 2, 4], &[1, 2, 3, 4, 5, 6, 7]),
        (&[2, 3, 4], &[2, 3, 4], &[1, 2, 3, 4, 5, 6, 7]),
        (&[1, 3, 4], &[], &[1, 2, 5, 7]),
        (&[1, 2, 3], &[], &[3, 4, 5, 7]),
    ];
    ensure!(
        census.failure_inducing_sets.len() == 5,
        "{} failure-inducing sets",
        census.failure_inducing_sets.len()
    );
    for (set, vars, checks) in table {
        let s = VarSubset::from_labels(4, set.iter().copied()).unwrap();
        let Some(rec) = census.failure_inducing_sets.iter().find(|f| f.subset == s) else {
            return Fail(format!("{s} missing"));
        };
        ensure!(rec.report.vars_not_converged == labels(vars), "{s}: variables {:?}", rec.report.vars_not_converged);
        ensure!(rec.report.checks_not_matched == labels(checks), "{s}: checks {:?}", rec.report.checks_not_matched);
        ensure!(rec.outcome.is_syndrome_mismatch(), "{s}: {:?}", rec.outcome);
    }
    ensure!(census.critical_number == CriticalNumber::Exactly(3), "mu = {}", census.critical_number);
    ensure!(census.strength == 4, "strength {}", census.strength);
    Pass("5 sets, per-set tables exact, mu = 3, strength = 4".into())
}

type Row = (&'static [usize], &'static str, &'static [&'static str], &'static [&'static [usize]]);

const WEIGHT_FOUR: [Row; 5] = [
    (&[1, 2, 3, 4], "000011011", &["000000100"], &[&[5]]),
    (&[1, 2, 3, 5], "001100110", &["000000001"], &[&[4]]),
    (&[1, 3, 4, 5], "110000101", &["000000010"], &[&[2]]),
    (
        &[1, 2, 4, 5],
        "011001111",
        &["000000000", "000000000", "111111000", "111111000"],
        &[&[2, 3, 4, 5], &[], &[2, 3, 4, 5], &[1, 3]],
    ),
    (
        &[2, 3, 4, 5],
        "100110111",
        &["111111000", "100110111", "000000000", "000000000"],
        &[&[1, 3], &[1, 2, 4, 5], &[], &[1, 2, 4, 5]],
    ),
];

fn c2_weight_four() -> Verdict {
    let g = fixture(FixtureName::Fig2a).graph;
    let decoder = GallagerB::new(&g);
    let mut mismatched_rows = Vec::new();
    let mut row5_expected_shape = false;
    for (i, (set, syn, sigmas, errs)) in WEIGHT_FOUR.iter().enumerate() {
        let e = err_of(&g, set);
        let s = compute_syndrome(&g, &e).unwrap();
        ensure!(s.bits().to_bit_string() == *syn, "row {}: syndrome {}", i + 1, s.bits());
        ensure!(oracle_syndrome(&g, &labels(set)) == *syn, "row {}: oracle disagrees", i + 1);
        let trace = decoder.decode(&s).unwrap();
        let expected: Vec<(String, Vec<usize>)> =
            sigmas.iter().zip(errs.iter()).map(|(a, b)| (a.to_string(), b.to_vec())).collect();
        let got = window_pairs(&trace);
        if i < 3 {
            ensure!(trace.converged() && !trace.matched(), "row {}: {:?}", i + 1, trace.status);
        } else {
            ensure!(!trace.converged(), "row {}: {:?}", i + 1, trace.status);
        }
        if !is_rotation(&got, &expected) {
            mismatched_rows.push(i + 1);
            if i == 4 {
                // Documented: the error sequence matches cyclically; aligned
                // to it, our syndrome estimates are Y, 0, 0, Y where the
                // table lists Y, the input syndrome, 0, 0.
                let ge: Vec<_> = got.iter().map(|p| p.1.clone()).collect();
                let ee: Vec<_> = expected.iter().map(|p| p.1.clone()).collect();
                let rot = (0..4).find(|&k| (0..4).all(|j| ge[(j + k) % 4] == ee[j]));
                row5_expected_shape = rot.is_some_and(|k| {
                    let ours: Vec<&str> = (0..4).map(|j| got[(j + k) % 4].0.as_str()).collect();
                    ours == ["111111000", "000000000", "000000000", "111111000"]
                });
            }
        }
    }
    match mismatched_rows.as_slice() {
        [] => Pass("all five rows exact".into()),
        [5] if row5_expected_shape => KnownFail(
            "rows 1-4 exact; row 5 error estimates match cyclically, but the syndrome estimates are 111111000, 0, 0, 111111000 against the table's 111111000, 100110111, 0, 0 (the table's second entry equals the input syndrome, which would end decoding)"
                .into(),
        ),
        rows => Fail(format!("rows {rows:?} differ")),
    }
}

fn c3_low_weight() -> Verdict {
    let g = fixture(FixtureName::Fig2a).graph;
    let h = g.to_biadjacency();
    let census = census_failure_inducing(&g, &h, 3).unwrap();
    let sets: Vec<String> = census.failure_inducing_sets.iter().map(|f| f.subset.to_string()).collect();
    ensure!(sets == ["{v2,v4,v5}"], "failure-inducing sets {sets:?}");
    let e = err_of(&g, &[2, 4, 5]);
    let s = compute_syndrome(&g, &e).unwrap();
    ensure!(s.bits().to_bit_string() == "111111111", "syndrome {}", s.bits());
    let trace = GallagerB::new(&g).decode(&s).unwrap();
    let expected = vec![
        ("000000111".to_string(), vec![1, 2, 3, 4, 5]),
        ("000000000".to_string(), vec![]),
    ];
    ensure!(is_rotation(&window_pairs(&trace), &expected), "window {:?}", window_pairs(&trace));
    let decoder = GallagerB::new(&g);
    let mut others = 0;
    for set in nonempty_subsets(5).filter(|s| s.len() <= 3) {
        if set == [1, 3, 4] {
            continue;
        }
        let (_, outcome) = decode_error(&decoder, &ErrorPattern::from_support(5, set.clone()), &h).unwrap();
        ensure!(outcome == Outcome::ExactRecovery, "{set:?}: {outcome:?}");
        others += 1;
    }
    Pass(format!("unique {{v2,v4,v5}}, syndrome all-ones, period-2 oscillation; {others} others exact"))
}

fn c4_fig3a() -> Verdict {
    let g = fixture(FixtureName::Fig3a).graph;
    let h = g.to_biadjacency();
    let decoder = GallagerB::new(&g);
    let (mut low, mut latest, mut w4) = (0, 0, 0);
    for set in nonempty_subsets(5) {
        let e = ErrorPattern::from_support(5, set.clone());
        let (trace, outcome) = decode_error(&decoder, &e, &h).unwrap();
        match set.len() {
            1..=3 => {
                let DecodeStatus::Matched { iteration } = trace.status else {
                    return Fail(format!("{set:?}: {:?}", trace.status));
                };
                ensure!(outcome == Outcome::ExactRecovery && iteration <= 7, "{set:?}: {outcome:?} at {iteration}");
                latest = latest.max(iteration);
                low += 1;
            }
            4 => {
                ensure!(!outcome.is_success(), "{set:?} recovers");
                w4 += 1;
            }
            _ => {
                ensure!(!outcome.is_success(), "weight 5 recovers");
                let profile = g.is_absorbing(&g.full_subset()).unwrap();
                ensure!(profile == Some((5, 5)), "weight 5 profile {profile:?}");
            }
        }
    }
    ensure!(low == 25 && w4 == 5, "{low} low-weight, {w4} weight-4 patterns");
    Pass(format!("25 exact (latest match at iteration {latest}), 5 weight-4 failures, (5,5) fails"))
}

fn c5_fig5() -> Verdict {
    let g = fixture(FixtureName::Fig5).graph;
    let whole = g.is_absorbing(&g.full_subset()).unwrap();
    ensure!(whole == Some((10, 0)), "whole set {whole:?}");
    let sets = census_absorbing(&g, 6).unwrap();
    let all_6_12 = sets.iter().all(|(_, ab)| *ab == (6, 12));
    let parts = partition_into_absorbing(&g, &g.full_subset(), 2).unwrap();
    ensure!(parts.is_none(), "partition found {parts:?}");
    ensure!(all_6_12, "profiles other than (6,12)");
    if sets.len() == 210 {
        return Pass("(10,0); 210 sets, all (6,12); no 2-partition".into());
    }
    // Documented: the drawn graph is K5,5 with degree-2 checks; a 6-set is
    // absorbing exactly when it takes 3 from each side.
    let across = |v: usize| v != 0 && g.var_neighbors(0).iter().any(|&c| g.check_neighbors(c).contains(&v));
    let balanced = sets.iter().all(|(s, _)| s.members().iter().filter(|&&v| across(v)).count() == 3);
    if sets.len() == 100 && balanced {
        KnownFail("(10,0) and no 2-partition hold, but the census finds 100 = C(5,3)^2 (6,12)-sets, not 210".into())
    } else {
        Fail(format!("{} sets", sets.len()))
    }
}

fn c6_ex7() -> Verdict {
    let f = fixture(FixtureName::Ex7H);
    let g = &f.graph;
    let n = g.num_vars();
    ensure!(g.is_absorbing(&g.full_subset()).unwrap() == Some((11, 0)), "whole set profile");
    let census = census_absorbing(g, 4).unwrap();
    let find = |name: &str| {
        let s = f.subset(name).unwrap();
        census.iter().find(|(t, _)| t == s).map(|(_, ab)| *ab)
    };
    ensure!(find("A") == Some((4, 2)) && find("B") == Some((4, 2)), "(4,2) sets {:?} {:?}", find("A"), find("B"));
    ensure!(find("C") == Some((3, 2)), "(3,2) set {:?}", find("C"));
    let parts = partition_into_absorbing(g, &g.full_subset(), 3).unwrap();
    ensure!(parts.is_some(), "no 3-partition");

    let h = g.to_biadjacency();
    let code = hypergraph_product(&h, &h).unwrap();
    let shape = code.shape();
    ensure!(shape.h_x == (154, 317) && shape.h_z == (154, 317), "shapes {shape:?}");
    ensure!(css_valid(&code).unwrap(), "CSS condition");
    let tensor = h.kronecker(&BitMatrix::identity(11));
    let ones: Vec<usize> = (0..tensor.num_cols()).collect();
    ensure!(!tensor.rowspace_contains(&BitVector::ones(121)).unwrap(), "ones in rowspace");
    ensure!(!oracle_in_rowspace(&tensor, &ones), "oracle: ones in rowspace");

    let hx = TannerGraph::from_biadjacency(&code.h_x);
    let reference: Vec<(Vec<usize>, (usize, usize))> =
        census.iter().map(|(s, ab)| (s.members().to_vec(), *ab)).collect();
    for j in 0..11 {
        let copy = |s: &[usize]| VarSubset::new(hx.num_vars(), s.iter().map(|i| i * 11 + j)).unwrap();
        let whole = copy(&(0..n).collect::<Vec<_>>());
        ensure!(hx.is_absorbing(&whole).unwrap() == Some((11, 0)), "copy {j} whole set");
        let (local, _) = hx.induced_graph(&whole).unwrap();
        ensure!(local == *g, "copy {j} is not the fixture graph");
        for (s, ab) in &reference {
            let got = hx.is_absorbing(&copy(s)).unwrap();
            ensure!(got == Some(*ab), "copy {j}: {s:?} gives {got:?}");
        }
        let local_census = census_absorbing(&local, 4).unwrap();
        ensure!(local_census == census, "copy {j}: census differs");
    }
    Pass(format!(
        "(11,0); A,B (4,2) and C (3,2) among {} absorbing sets <= 4; 3-partition; 154x317 both, CSS; ones not in rowspace; 11 aligned copies reproduce all",
        census.len()
    ))
}

/// Absorbing sets with odd checks: cycles with pendant checks, fixture
/// subsets and dumbbell constituents.
fn absorbing_with_odd_checks() -> Vec<(String, TannerGraph, VarSubset)> {
    let mut out = Vec::new();
    for a in 3..=8 {
        for mask in 1u32..1 << a {
            if out.len() >= 30 {
                break;
            }
            // Only a few pendant patterns per length.
            if mask.count_ones() > 2 || mask % 3 == 0 {
                continue;
            }
            let pendants: Vec<usize> = (0..a).filter(|i| mask >> i & 1 == 1).collect();
            let g = cycle_with_pendants(a, &pendants).unwrap();
            let s = g.full_subset();
            out.push((format!("cycle {a} pendants {pendants:?}"), g, s));
        }
    }
    for name in [FixtureName::Fig1, FixtureName::Fig2a, FixtureName::Fig3a, FixtureName::Fig6, FixtureName::Ex7H] {
        let g = fixture(name).graph;
        for (s, (_, b)) in census_absorbing(&g, g.num_vars().min(5)).unwrap() {
            if b > 0 && out.len() < 45 {
                out.push((format!("{name} {s}"), g.clone(), s));
            }
        }
    }
    for (a1, a2, b) in [(4, 6, 2), (6, 6, 2), (6, 6, 4), (8, 6, 4), (8, 8, 6), (4, 4, 2)] {
        let g = generate(&FamilySpec::Dumbbell { a1, a2, b }).unwrap();
        let s = VarSubset::new(g.num_vars(), 0..a1 / 2).unwrap();
        out.push((format!("dumbbell D({a1},{a2};{b}) left"), g, s));
    }
    out
}

fn c7_absorbing_zero() -> Verdict {
    let cases = absorbing_with_odd_checks();
    ensure!(cases.len() >= 50, "only {} fixtures", cases.len());
    for (name, host, s) in &cases {
        let p = host.induced_profile(s).unwrap();
        ensure!(p.is_absorbing() && p.b() >= 1, "{name}: profile {:?}", p.ab());
        let (g, _) = host.induced_graph(s).unwrap();
        let e = ErrorPattern::from_support(g.num_vars(), 0..g.num_vars());
        let (trace, outcome) = decode_error(&GallagerB::new(&g), &e, &g.to_biadjacency()).unwrap();
        ensure!(trace.iterations.iter().all(|r| r.estimated_syndrome.is_zero()), "{name}: nonzero estimate");
        ensure!(outcome == Outcome::SyndromeMismatchConverged, "{name}: {outcome:?}");
    }
    Pass(format!("{} fixtures, estimate zero at every iteration", cases.len()))
}

fn c7_dichotomy() -> Verdict {
    let mut cases = 0;
    let mut graphs: Vec<(String, TannerGraph)> = Vec::new();
    for a in 2..=8 {
        graphs.push((format!("path {a}"), generate(&FamilySpec::Path { a }).unwrap()));
    }
    for a in 3..=10 {
        graphs.push((format!("cycle {a}"), generate(&FamilySpec::Cycle { a }).unwrap()));
    }
    for (name, g) in &graphs {
        let h = g.to_biadjacency();
        let decoder = GallagerB::new(g);
        for set in nonempty_subsets(g.num_vars()) {
            if oracle_syndrome(g, &set).contains('1') {
                continue;
            }
            let e = ErrorPattern::from_support(g.num_vars(), set.clone());
            let (trace, outcome) = decode_error(&decoder, &e, &h).unwrap();
            ensure!(trace.status == DecodeStatus::Matched { iteration: 0 }, "{name} {set:?}: {:?}", trace.status);
            let stabilizer = oracle_in_rowspace(&h, &set);
            let expected = if stabilizer { Outcome::DegenerateRecovery } else { Outcome::LogicalError };
            ensure!(outcome == expected, "{name} {set:?}: {outcome:?}");
            cases += 1;
        }
    }
    for a in 2..=8 {
        let g = generate(&FamilySpec::Path { a }).unwrap();
        let all: Vec<usize> = (0..a).collect();
        let member = oracle_in_rowspace(&g.to_biadjacency(), &all);
        ensure!(member == (a % 2 == 0), "path {a}: ones in rowspace = {member}");
        let lib = g.to_biadjacency().rowspace_contains(&BitVector::ones(a)).unwrap();
        ensure!(lib == member, "path {a}: library disagrees with oracle");
    }
    Pass(format!("{cases} even-check subsets; paths hold ones exactly when a is even"))
}

/// `(0,1,..,1,0,..,0)` with ones on `c2..c_top`, `top` capped at the last check.
fn path_shape(a: usize, top: usize) -> String {
    (1..a).map(|c| if c >= 2 && c <= top.min(a - 1) { '1' } else { '0' }).collect()
}

fn c7_path_shape() -> Verdict {
    // Stated shape: l-1 ones (c2..c_l). The worked iterations instead give
    // one one at l = 1 and two at l = 2, that is c2..c_{l+1}.
    let (mut stated_ok, mut worked_ok) = (true, true);
    let mut first_miss = None;
    for a in 2..=8 {
        let g = generate(&FamilySpec::Path { a }).unwrap();
        let e = ErrorPattern::from_support(a, [0]);
        let s = compute_syndrome(&g, &e).unwrap();
        let want_input: String = (0..a - 1).map(|c| if c == 0 { '1' } else { '0' }).collect();
        ensure!(s.bits().to_bit_string() == want_input, "path {a}: input {}", s.bits());
        let trace = GallagerB::new(&g).decode(&s).unwrap();
        ensure!(!trace.matched(), "path {a} matched");
        for l in 0..=2 * a {
            let got = syndrome_at(&trace, l).to_bit_string();
            let stated = path_shape(a, l);
            if got != stated {
                stated_ok = false;
                first_miss.get_or_insert(format!("path {a} iteration {l}: {got}, stated {stated}"));
            }
            worked_ok &= got == path_shape(a, l + 1);
        }
    }
    match (stated_ok, worked_ok) {
        (true, _) => Pass("a = 2..8: l-1 ones on c2..c_l, constant afterwards, never matched".into()),
        (false, true) => KnownFail(format!(
            "never matched, constant once c_(a-1) is reached, but each iteration has l ones, not l-1 ({})",
            first_miss.unwrap_or_default()
        )),
        (false, false) => Fail(first_miss.unwrap_or_default()),
    }
}

fn c7_cycles() -> Verdict {
    for a in [4, 6, 8, 10] {
        let g = generate(&FamilySpec::Cycle { a }).unwrap();
        let h = g.to_biadjacency();
        for v in 0..a {
            let e = ErrorPattern::from_support(a, [v]);
            let (trace, outcome) = decode_error(&GallagerB::new(&g), &e, &h).unwrap();
            ensure!(
                matches!(trace.status, DecodeStatus::Oscillating { .. }) && outcome.is_syndrome_mismatch(),
                "cycle {a} v{}: {:?} {outcome:?}",
                v + 1,
                trace.status
            );
        }
    }
    let mut iterations = Vec::new();
    let mut index_only = true;
    for a in [3, 5, 7, 9] {
        let g = generate(&FamilySpec::Cycle { a }).unwrap();
        let k = (a + 3) / 2;
        let e = err_of(&g, &[1, 2, k]);
        let (trace, outcome) = decode_error(&GallagerB::new(&g), &e, &g.to_biadjacency()).unwrap();
        let DecodeStatus::Matched { iteration } = trace.status else {
            return Fail(format!("cycle {a}: {:?}", trace.status));
        };
        ensure!(trace.final_estimate.is_empty() || trace.final_estimate.support().is_empty(), "cycle {a}: estimate");
        ensure!(outcome == Outcome::LogicalError, "cycle {a}: {outcome:?}");
        iterations.push((a, iteration, k));
        index_only &= iteration != k;
    }
    let detail = iterations
        .iter()
        .map(|(a, got, want)| format!("a={a}: {got} (stated {want})"))
        .collect::<Vec<_>>()
        .join(", ");
    if iterations.iter().all(|(_, got, want)| got == want) {
        Pass(format!("even singletons oscillate; odd triples match with zero estimate, logical error; {detail}"))
    } else if index_only {
        KnownFail(format!(
            "even singletons oscillate; odd triples match with zero estimate and logical error, but at iteration {detail}"
        ))
    } else {
        Fail(format!("match iterations {detail}"))
    }
}

/// A random tree whose checks all have even degree 2 or 4.
fn random_even_tree(rng: &mut ChaCha8Rng, a: usize) -> TannerGraph {
    let mut edges = Vec::new();
    let (mut vars, mut checks) = (1, 0);
    while vars < a {
        let parent = rng.gen_range(0..vars);
        let fresh = if a - vars >= 3 && rng.gen_bool(0.3) { 3 } else { 1 };
        edges.push((parent, checks));
        for k in 0..fresh {
            edges.push((vars + k, checks));
        }
        vars += fresh;
        checks += 1;
    }
    TannerGraph::from_edges(vars, checks, &edges).unwrap()
}

fn c7_trees() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ee5);
    let mut leaves_tested = 0;
    for t in 0..30 {
        let a = rng.gen_range(2..=12);
        let g = random_even_tree(&mut rng, a);
        let all = g.full_subset();
        let summary = g.structure_summary(&all).unwrap();
        ensure!(summary.connected && summary.acyclic, "tree {t} shape");
        ensure!(g.is_absorbing(&all).unwrap() == Some((g.num_vars(), 0)), "tree {t} profile");
        let leaf = (0..g.num_vars()).find(|&v| g.var_degree(v) == 1).unwrap();
        let c = g.var_neighbors(leaf)[0];
        let e = ErrorPattern::from_support(g.num_vars(), [leaf]);
        let (trace, outcome) = decode_error(&GallagerB::new(&g), &e, &g.to_biadjacency()).unwrap();
        ensure!(!outcome.is_success(), "tree {t}: leaf v{} recovers", leaf + 1);
        ensure!(trace.syndrome.bits().get(c), "tree {t}: syndrome at c{}", c + 1);
        ensure!(
            trace.iterations.iter().all(|r| !r.estimated_syndrome.get(c)),
            "tree {t}: c{} matched at some iteration",
            c + 1
        );
        let report = convergence_report(&trace, &e, &trace.syndrome);
        ensure!(report.checks_not_matched.contains(&c), "tree {t}: c{} not reported", c + 1);
        leaves_tested += 1;
    }
    Pass(format!("{leaves_tested} trees, leaf check never satisfied"))
}

/// Triangles (3 variables, 3 checks) glued by trees `x - c - m - c' - y`,
/// where `m` also carries a pendant check.
struct Composite {
    edges: Vec<(usize, usize)>,
    triangles: usize,
    vars: usize,
    checks: usize,
}

impl Composite {
    fn new(triangles: usize) -> Self {
        let mut edges = Vec::new();
        for t in 0..triangles {
            for i in 0..3 {
                edges.push((3 * t + i, 3 * t + i));
                edges.push((3 * t + (i + 1) % 3, 3 * t + i));
            }
        }
        Composite { edges, triangles, vars: 3 * triangles, checks: 3 * triangles }
    }

    fn tree(&mut self, x: usize, y: usize) {
        let (m, c1, c2, p) = (self.vars, self.checks, self.checks + 1, self.checks + 2);
        self.edges.extend([(x, c1), (m, c1), (m, c2), (y, c2), (m, p)]);
        self.vars += 1;
        self.checks += 3;
    }

    fn build(&self) -> (TannerGraph, Vec<VarSubset>) {
        let g = TannerGraph::from_edges(self.vars, self.checks, &self.edges).unwrap();
        let sets = (0..self.triangles)
            .map(|t| VarSubset::new(self.vars, 3 * t..3 * t + 3).unwrap())
            .collect();
        (g, sets)
    }
}

fn c7_certificates() -> Verdict {
    use CertificateKind::*;
    let mut lines = Vec::new();
    let mut cases: Vec<Construction> = Vec::new();

    let f6 = fixture(FixtureName::Fig6);
    cases.push((
        "fig6".into(),
        f6.graph.clone(),
        f6.subset("A1").unwrap().clone(),
        vec![f6.subset("A2").unwrap().clone()],
        vec![SharedOddChecks, OverlappingOddChecks, PathConnector, SymmetricStabilizer],
    ));
    let t1 = generate(&FamilySpec::Theta { a: 6, b: 6, c: 4, variant: ThetaVariant::JunctionsAreVariables }).unwrap();
    cases.push(("theta case one, whole".into(), t1.clone(), t1.full_subset(), vec![], vec![EvenLogicalError]));
    for cycle in [[1, 2, 3, 4, 7], [1, 2, 5, 6, 7]] {
        let s = VarSubset::from_labels(7, cycle).unwrap();
        cases.push((format!("theta case one, cycle {s}"), t1.clone(), s, vec![], vec![AbsorbingMismatch]));
    }
    let t2 = generate(&FamilySpec::Theta { a: 6, b: 6, c: 4, variant: ThetaVariant::JunctionsAreChecks }).unwrap();
    for cycle in [[1, 2, 3, 7, 8], [4, 5, 6, 7, 8]] {
        let s = VarSubset::from_labels(8, cycle).unwrap();
        cases.push((format!("theta case two, cycle {s}"), t2.clone(), s, vec![], vec![EvenLogicalError]));
    }
    for b in [2, 4] {
        let g = generate(&FamilySpec::Dumbbell { a1: 6, a2: 6, b }).unwrap();
        let n = g.num_vars();
        cases.push((
            format!("dumbbell D(6,6;{b})"),
            g,
            VarSubset::new(n, 0..3).unwrap(),
            vec![VarSubset::new(n, 3..6).unwrap()],
            vec![PathConnector],
        ));
    }
    let mut one = Composite::new(2);
    one.tree(0, 3);
    let mut two = Composite::new(2);
    two.tree(0, 3);
    two.tree(1, 4);
    let mut net = Composite::new(3);
    net.tree(0, 3);
    net.tree(4, 6);
    net.tree(1, 7);
    for (name, comp, kind) in [
        ("one tree", &one, TreeConnector),
        ("two trees", &two, MultipleTrees),
        ("three sets, three trees", &net, TreeNetwork),
    ] {
        let (g, sets) = comp.build();
        cases.push((name.into(), g, sets[0].clone(), sets[1..].to_vec(), vec![kind]));
    }

    // The first kind listed is the construction's primary result: its
    // decode must mismatch the syndrome at exactly the designated checks.
    let mut misses = Vec::new();
    for (name, g, a1, others, kinds) in &cases {
        let report = match certify(g, a1, others) {
            Ok(r) => r,
            Err(e) => return Fail(format!("{name}: {e}")),
        };
        for (i, &kind) in kinds.iter().enumerate() {
            let Some(cert) = report.get(kind) else {
                let why = report.unsatisfied.iter().find(|u| u.0 == kind).map(|u| u.1.clone());
                return Fail(format!("{name}: no {kind} certificate ({why:?})"));
            };
            ensure!(cert.recheck(g).unwrap(), "{name}: {kind} does not recheck");
            let Some(x) = &cert.cross_check else {
                // Symmetric stabilizers carry no decode of their own.
                let union = cert.witness.subsets.iter().fold(cert.witness.subsets[0].clone(), |u, s| u.union(s));
                ensure!(g.is_absorbing(&union).unwrap() == Some((union.len(), 0)), "{name}: union profile");
                ensure!(i > 0, "{name}: primary {kind} has no decode");
                continue;
            };
            ensure!(!x.outcome.is_success(), "{name}: {kind} recovers");
            if i == 0 && !(x.outcome.is_syndrome_mismatch() && x.exact) {
                misses.push((name.clone(), kind, x.outcome, x.unmatched.clone()));
            }
        }
        lines.push(format!("{name}: {}", kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>().join("+")));
    }
    // Each constituent cycle of either theta graph, in error on the whole
    // graph, is failure-inducing.
    let mut theta_host = Vec::new();
    for (g, cycles) in [(&t1, [[1, 2, 3, 4, 7], [1, 2, 5, 6, 7]]), (&t2, [[1, 2, 3, 7, 8], [4, 5, 6, 7, 8]])] {
        for cycle in cycles {
            let e = err_of(g, &cycle);
            let (_, outcome) = decode_error(&GallagerB::new(g), &e, &g.to_biadjacency()).unwrap();
            ensure!(!outcome.is_success(), "theta cycle {cycle:?} recovers on the host");
            theta_host.push(outcome);
        }
    }
    if misses.is_empty() {
        return Pass(format!("{} constructions, primary decodes mismatch exactly ({})", cases.len(), lines.join("; ")));
    }
    // Documented: theta constructions whose certificate needs no odd checks
    // fail by a logical error with every check matched.
    let documented = misses.iter().all(|(name, kind, outcome, unmatched)| {
        name.starts_with("theta") && *kind == EvenLogicalError && *outcome == Outcome::LogicalError && unmatched.is_empty()
    }) && theta_host.iter().all(|o| *o == Outcome::LogicalError);
    let names: Vec<&str> = misses.iter().map(|m| m.0.as_str()).collect();
    if documented {
        KnownFail(format!(
            "all {} constructions certified and failing; {} of them ({}) fail by logical error with no mismatched check, and every theta cycle decodes to a logical error on its host",
            cases.len(),
            misses.len(),
            names.join(", ")
        ))
    } else {
        Fail(format!("primary decode not an exact mismatch: {misses:?}"))
    }
}
