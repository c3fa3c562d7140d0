//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bundles::{build_canonical_flag, osculate_down, osculate_up, osculation_stats, MeromorphicBundle};
use canonical_enum::{enumerate_all_canonical, enumerate_i_canonical, enumerate_symmetric_canonical};
use extsol::{
    evaluate_phi, fixtures, matches_target, plus_eigenspace_dim, s1_invariant_model, verify, GradedModel, PhiOptions,
    VerifyOptions, Witness,
};
use lattice_core::{chi2, flag_type, grassmannian_target, in_lattice, leq, leq_root_oracle, LatticeElement, Target};
use polyalg::{ddz, random_poly_vector, scalar_rank, ExactScalar, PolyVector};
use uniton_cli::golden::{check_table, table1, table2};

type Outcome = Result<String, Vec<String>>;

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn(&mut Shared) -> Outcome,
}

/// Models built for criterion 8 and reused by criterion 10.
#[derive(Default)]
struct Shared {
    models: Vec<(LatticeElement, u64, GradedModel, bool)>,
}

fn el(n: usize, c: &[i64]) -> LatticeElement {
    LatticeElement::new(n, c.to_vec()).unwrap()
}

fn names(v: &[LatticeElement]) -> BTreeSet<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn collect(problems: Vec<String>, ok: String) -> Outcome {
    if problems.is_empty() {
        Ok(ok)
    } else {
        Err(problems)
    }
}

fn table_outcome(which: u8) -> Outcome {
    let report = check_table(&if which == 1 { table1() } else { table2() }).map_err(|e| vec![e.to_string()])?;
    let problems: Vec<String> = report
        .cells
        .iter()
        .filter(|c| !c.passed)
        .flat_map(|c| c.problems.iter().map(move |p| format!("{}: {p}", c.label)))
        .collect();
    collect(problems, format!("{} cells", report.cells.len()))
}

fn c1(_: &mut Shared) -> Outcome {
    table_outcome(1)
}

fn c2(_: &mut Shared) -> Outcome {
    let mut problems = table_outcome(2).err().unwrap_or_default();
    let two = enumerate_symmetric_canonical(2).map_err(|e| vec![e.to_string()])?;
    if !two.is_empty() {
        problems.push(format!("n = 2 is not empty: {:?}", names(&two)));
    }
    collect(problems, "n = 2 empty".into())
}

fn c3(_: &mut Shared) -> Outcome {
    let mut problems = Vec::new();
    for (n, want) in [(2, vec!["2H1"]), (3, vec!["H1+H2", "3H1", "3H2"])] {
        let got = names(&enumerate_all_canonical(n).map_err(|e| vec![e.to_string()])?);
        let want: BTreeSet<String> = want.into_iter().map(String::from).collect();
        if got != want {
            problems.push(format!("SU({n}): got {got:?}, want {want:?}"));
        }
    }
    collect(problems, "SU(2), SU(3)".into())
}

fn c4(_: &mut Shared) -> Outcome {
    let mut problems = Vec::new();
    for n in [3usize, 5, 7] {
        let full: Vec<usize> = (1..n).collect();
        let got = enumerate_i_canonical(n, &full).map_err(|e| vec![e.to_string()])?;
        if got != vec![el(n, &vec![1; n - 1])] {
            problems.push(format!("n = {n}: {:?}", names(&got)));
        }
    }
    collect(problems, "n = 3, 5, 7".into())
}

fn c5(_: &mut Shared) -> Outcome {
    let gr = |k, n| Target::Grassmannian { k, n };
    let five = el(5, &[5, 0, 0, 0]);
    let cases = [
        ("5H1", Ok(five.clone()), gr(1, 5)),
        ("chi2(5H1)", chi2(&five), gr(2, 5)),
        ("3H1+H2+5H3", Ok(el(5, &[3, 1, 5, 0])), gr(2, 5)),
    ];
    let mut problems = Vec::new();
    for (label, xi, want) in cases {
        match xi.and_then(|x| grassmannian_target(&x)) {
            Ok(t) if t == want => {}
            other => problems.push(format!("{label}: got {other:?}, want {want}")),
        }
    }
    collect(problems, "3 targets".into())
}

fn random_dominant(n: usize, rng: &mut ChaCha8Rng) -> LatticeElement {
    loop {
        let c: Vec<i64> = (1..n).map(|_| rng.gen_range(0..=5)).collect();
        let x = LatticeElement::new(n, c).unwrap();
        if in_lattice(&x) {
            return x;
        }
    }
}

fn c6(_: &mut Shared) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut problems = Vec::new();
    let mut comparable = 0;
    for n in 2..=8 {
        for t in 0..200 {
            let a = random_dominant(n, &mut rng);
            // every other pair is pushed towards comparability
            let b = if t % 2 == 0 {
                random_dominant(n, &mut rng)
            } else {
                loop {
                    let c: Vec<i64> = a.coeffs().iter().map(|&x| rng.gen_range(0..=x)).collect();
                    let b = LatticeElement::new(n, c).unwrap();
                    if in_lattice(&b) {
                        break b;
                    }
                }
            };
            for (x, y) in [(&a, &b), (&b, &a)] {
                let (p, q) = (leq(x, y), leq_root_oracle(x, y));
                if p != q {
                    problems.push(format!("n = {n}: {x} vs {y}: leq {p:?}, oracle {q:?}"));
                }
                comparable += usize::from(p == Ok(true));
            }
        }
    }
    collect(problems, format!("1400 pairs, {comparable} comparable directions"))
}

/// Generic rank of `cols`, as the largest rank at a few random rational points.
fn generic_rank(cols: &[PolyVector], rng: &mut ChaCha8Rng) -> usize {
    (0..3)
        .map(|_| {
            let z = ExactScalar::from_ratio(rng.gen_range(-40..=40), rng.gen_range(1..=13));
            let rows: Vec<Vec<ExactScalar>> = cols.iter().map(|v| v.eval(&z)).collect();
            scalar_rank(&rows)
        })
        .max()
        .unwrap_or(0)
}

fn with_derivatives(cols: &[PolyVector], order: usize) -> Vec<PolyVector> {
    let mut all = cols.to_vec();
    let mut cur = cols.to_vec();
    for _ in 0..order {
        cur = cur.iter().map(ddz).collect();
        all.extend(cur.iter().cloned());
    }
    all
}

fn osculation_problems(e: &MeromorphicBundle, rng: &mut ChaCha8Rng) -> Result<Vec<String>, String> {
    let err = |x: bundles::BundleError| x.to_string();
    let mut p = Vec::new();
    let rank = generic_rank(e.frame(), rng);
    let g = generic_rank(&with_derivatives(e.frame(), 1), rng) - rank;
    let stats = osculation_stats(e).map_err(err)?;
    if e.rank() != rank || stats.g != g {
        p.push(format!("rank/g {}/{} but pointwise {rank}/{g}", e.rank(), stats.g));
    }
    for i in 1..=3 {
        let up = osculate_up(e, i).map_err(err)?;
        let up_rank = generic_rank(&with_derivatives(e.frame(), i), rng);
        if up.rank() != up_rank {
            p.push(format!("rank E^({i}) = {} but the span of derivatives has rank {up_rank}", up.rank()));
        }
        if !up.contains_bundle(e).map_err(err)? {
            p.push(format!("E^({i}) does not contain E"));
        }
        if up.rank() > rank + i * g || (i == 1 && up.rank() != rank + g) {
            p.push(format!("rank E^({i}) = {} with rank E = {rank}, g = {g}", up.rank()));
        }
        if osculation_stats(&up).map_err(err)?.g > g {
            p.push(format!("g(E^({i})) exceeds g(E) = {g}"));
        }
        let down = osculate_down(e, i).map_err(err)?;
        for v in with_derivatives(down.frame(), i) {
            if !e.contains(&v).map_err(err)? {
                p.push(format!("a derivative of order <= {i} of E^(-{i}) leaves E"));
                break;
            }
        }
        if down.rank() + i * g < rank || (i == 1 && down.rank() + g != rank) {
            p.push(format!("rank E^(-{i}) = {} with rank E = {rank}, g = {g}", down.rank()));
        }
        if osculation_stats(&down).map_err(err)?.g > g {
            p.push(format!("g(E^(-{i})) exceeds g(E) = {g}"));
        }
    }
    Ok(p)
}

fn c7(_: &mut Shared) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut problems = Vec::new();
    let mut gs = BTreeSet::new();
    for b in 0..50 {
        let dim = rng.gen_range(2..=5);
        let k = rng.gen_range(1..=dim);
        let deg = rng.gen_range(0..=3);
        let cols: Vec<PolyVector> = (0..k).map(|_| random_poly_vector(dim, deg, rng.gen())).collect();
        let e = MeromorphicBundle::from_columns(dim, &cols).map_err(|e| vec![e.to_string()])?;
        gs.insert(osculation_stats(&e).map(|s| s.g).unwrap_or(0));
        match osculation_problems(&e, &mut rng) {
            Ok(p) => {
                problems.extend(p.into_iter().map(|x| format!("bundle {b} (dim {dim}, rank {k}, deg {deg}): {x}")))
            }
            Err(x) => problems.push(format!("bundle {b}: {x}")),
        }
    }
    collect(problems, format!("50 bundles, g in {gs:?}"))
}

const SEEDS: std::ops::Range<u64> = 0..5;

fn c8(shared: &mut Shared) -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0;
    for n in 2..=5 {
        let mut xs: Vec<(LatticeElement, bool)> =
            enumerate_all_canonical(n).map_err(|e| vec![e.to_string()])?.into_iter().map(|x| (x, false)).collect();
        xs.extend(enumerate_symmetric_canonical(n).map_err(|e| vec![e.to_string()])?.into_iter().map(|x| (x, true)));
        for (xi, symmetric) in xs {
            let ft = flag_type(&xi).map_err(|e| vec![e.to_string()])?;
            for seed in SEEDS {
                count += 1;
                let built = build_canonical_flag(&xi, seed)
                    .map_err(|e| e.to_string())
                    .and_then(|f| s1_invariant_model(&f, &ft).map_err(|e| e.to_string()));
                let w = match built {
                    Ok(w) => w,
                    Err(e) => {
                        problems.push(format!("{xi} seed {seed}: {e}"));
                        continue;
                    }
                };
                let rep = match verify(&w, &VerifyOptions { involution: true }) {
                    Ok(r) => r,
                    Err(e) => {
                        problems.push(format!("{xi} seed {seed}: {e}"));
                        continue;
                    }
                };
                let exact_ok = rep.lambda_module.passed && rep.pseudo_horizontal.passed && rep.su_condition.passed;
                let involution = rep.involution.as_ref().is_some_and(|c| c.passed);
                if !exact_ok || (symmetric && !involution) {
                    problems.push(format!("{xi} seed {seed}: failed {:?}", rep.failures()));
                }
                if rep.graded_type.as_ref() != Some(&ft) {
                    problems.push(format!("{xi} seed {seed}: graded type {:?}, flag type {ft}", rep.graded_type));
                }
                if exact_ok {
                    shared.models.push((xi.clone(), seed, w, involution));
                }
            }
        }
    }
    collect(problems, format!("{count} constructions"))
}

fn c9(_: &mut Shared) -> Outcome {
    let mut problems = Vec::new();
    for r in fixtures::all(true) {
        match r
            .model()
            .map_err(|e| e.to_string())
            .and_then(|w| verify(&w, &r.verify_options()).map_err(|e| e.to_string()))
        {
            Ok(rep) if rep.passed() => {}
            Ok(rep) => problems.push(format!("{} fails {:?} with its constraints in place", r.name, rep.failures())),
            Err(e) => problems.push(format!("{}: {e}", r.name)),
        }
    }
    let broken = fixtures::all(false);
    for r in &broken {
        match r
            .model()
            .map_err(|e| e.to_string())
            .and_then(|w| verify(&w, &r.verify_options()).map_err(|e| e.to_string()))
        {
            Ok(rep) => {
                let witnessed = matches!(rep.pseudo_horizontal.witness, Some(Witness::Membership { .. }));
                if rep.pseudo_horizontal.passed || !witnessed {
                    problems.push(format!("{} passes pseudo-horizontality with a constraint violated", r.name));
                }
            }
            Err(e) => problems.push(format!("{}: {e}", r.name)),
        }
    }
    collect(problems, format!("{} recipes both ways", broken.len()))
}

fn c10(shared: &mut Shared) -> Outcome {
    if shared.models.is_empty() {
        return Err(vec!["no models from criterion 8".into()]);
    }
    let points = [(1, 2), (-3, 4), (2, 1), (5, 3), (-7, 5)];
    let mut problems = Vec::new();
    let mut worst = 0.0f64;
    let mut evaluations = 0;
    for (xi, seed, w, involution) in &shared.models {
        let target = grassmannian_target(xi).map_err(|e| vec![e.to_string()])?;
        for (p, q) in points {
            evaluations += 1;
            let z = ExactScalar::from_ratio(p, q);
            match evaluate_phi(w, &z, &PhiOptions { tol: 1e-9, involutive: *involution }) {
                Ok(rep) => {
                    worst = worst.max(rep.unitarity).max(rep.det);
                    if *involution {
                        worst = worst.max(rep.involution);
                        let plus = plus_eigenspace_dim(&rep.phi);
                        if !matches_target(plus, xi.n(), &target) {
                            problems.push(format!("{xi} seed {seed} z={z}: +1-eigenspace {plus} vs {target}"));
                        }
                    }
                }
                Err(e) => problems.push(format!("{xi} seed {seed} z={z}: {e}")),
            }
        }
    }
    collect(problems, format!("{evaluations} evaluations, worst residual {worst:.1e}"))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "table 1 (SU(4), SU(5))", limit: secs(10), run: c1 },
        Criterion { id: 2, name: "table 2 (symmetric, n <= 5)", limit: secs(30), run: c2 },
        Criterion { id: 3, name: "SU(2) and SU(3) canonical elements", limit: None, run: c3 },
        Criterion { id: 4, name: "unique full-support element, odd n", limit: None, run: c4 },
        Criterion { id: 5, name: "Grassmannian targets", limit: None, run: c5 },
        Criterion { id: 6, name: "order vs root oracle", limit: None, run: c6 },
        Criterion { id: 7, name: "osculating-rank laws", limit: secs(120), run: c7 },
        Criterion { id: 8, name: "end-to-end construction, n <= 5", limit: secs(300), run: c8 },
        Criterion { id: 9, name: "recipes in both directions", limit: None, run: c9 },
        Criterion { id: 10, name: "harmonic map evaluation", limit: None, run: c10 },
    ];
    let mut shared = Shared::default();
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)(&mut shared);
        let took = start.elapsed();
        let late = c.limit.is_some_and(|l| took > l);
        let limit = c.limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        match (&outcome, late) {
            (Ok(msg), false) => println!("PASS {:>2} {}: {msg} [{:.2?}{limit}]", c.id, c.name, took),
            _ => {
                failed += 1;
                println!("FAIL {:>2} {} [{:.2?}{limit}]", c.id, c.name, took);
                if late {
                    println!("       over the time limit");
                }
                for p in outcome.err().unwrap_or_default().iter().take(20) {
                    println!("       {p}");
                }
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
