//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use equichar::character::{ingest_character_table, CharacterTable, RawCharacterTable};
use equichar::cli::report::{build_group, build_table, character_verdicts};
use equichar::cli::{builtin, RunOptions};
use equichar::dixon::dixon_character_table;
use equichar::equivariant::Analysis;
use equichar::group::{generate_group, FiniteMatrixGroup, DEFAULT_MAX_ORDER};
use equichar::linalg::{smith_normal_form, IntMatrix};
use equichar::oracle::{differential_check, DEFAULT_POINT_CAP};
use equichar::poly::Polynomial;

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const ORACLE_Q_MAX: u64 = 24;
const SNF_SAMPLES: usize = 100;
const GROUP_SAMPLES: usize = 20;
const GROUP_Q_MAX: i64 = 12;
const BUILTINS: [&str; 5] = ["c6-z2", "c6-z3", "s3-a2", "trivial-z2", "dihedral-z2"];

struct Outcome {
    failures: Vec<String>,
    note: String,
}

fn analysis(name: &str) -> Analysis {
    let spec = builtin(name).unwrap();
    let group = build_group(&spec, &RunOptions::default()).unwrap();
    let table = build_table(&spec, &group).unwrap();
    Analysis::new(group, table).unwrap()
}

fn cyclic_row(a: &Analysis, j: i64) -> usize {
    let sigma = a.group.generator_indices()[0];
    let target = a.table.field().zeta_power(j);
    (0..a.table.len()).find(|&i| a.table.row(i).value(a.group.class_of(sigma)) == &target).unwrap()
}

fn compare(a: &Analysis, row: usize, label: &str, expected: &[(i64, &[i64])], failures: &mut Vec<String>) {
    let m = a.multiplicity(row);
    if m.constituents().len() != expected.len() {
        failures.push(format!("{label}: {} constituents", m.constituents().len()));
    }
    for (d, nums) in expected {
        let want = Polynomial::from_ints_over(nums, 6);
        let got = m.constituent(&BigInt::from(*d));
        if got != want {
            failures.push(format!("{label} at gcd {d}: got {}, want {}", got.render("q"), want.render("q")));
        }
    }
}

fn timed(budget: Duration, f: impl FnOnce() -> Vec<String>) -> Outcome {
    let start = Instant::now();
    let mut failures = f();
    let elapsed = start.elapsed();
    if elapsed >= budget {
        failures.push(format!("took {elapsed:.2?}, budget {budget:?}"));
    }
    Outcome { failures, note: format!("{elapsed:.2?} < {budget:?}") }
}

fn golden_1() -> Outcome {
    timed(GOLDEN_BUDGET, || {
        let a = analysis("c6-z2");
        let mut f = Vec::new();
        let chi15: &[(i64, &[i64])] = &[(1, &[-1, 0, 1]), (2, &[-4, 0, 1]), (3, &[-3, 0, 1]), (6, &[-6, 0, 1])];
        let chi24: &[(i64, &[i64])] = &[(1, &[-1, 0, 1]), (2, &[2, 0, 1]), (3, &[-3, 0, 1]), (6, &[0, 0, 1])];
        let chi3: &[(i64, &[i64])] = &[(1, &[-1, 0, 1]), (2, &[-4, 0, 1]), (3, &[3, 0, 1]), (6, &[0, 0, 1])];
        let one: &[(i64, &[i64])] = &[(1, &[5, 0, 1]), (2, &[8, 0, 1]), (3, &[9, 0, 1]), (6, &[12, 0, 1])];
        for (j, exp) in [(1, chi15), (5, chi15), (2, chi24), (4, chi24), (3, chi3), (0, one)] {
            compare(&a, cyclic_row(&a, j), &format!("m(χ^{j})"), exp, &mut f);
        }
        f
    })
}

fn golden_2() -> Outcome {
    timed(GOLDEN_BUDGET, || {
        let a = analysis("c6-z3");
        let mut f = Vec::new();
        let chi15: &[(i64, &[i64])] =
            &[(1, &[1, -1, -1, 1]), (2, &[2, -1, -2, 1]), (3, &[3, -3, -1, 1]), (6, &[6, -3, -2, 1])];
        let chi24: &[(i64, &[i64])] =
            &[(1, &[-1, -1, 1, 1]), (2, &[-2, -1, 2, 1]), (3, &[-3, -3, 1, 1]), (6, &[-6, -3, 2, 1])];
        let chi3: &[(i64, &[i64])] =
            &[(1, &[-2, 2, -1, 1]), (2, &[-4, 2, -2, 1]), (3, &[-6, 6, -1, 1]), (6, &[-12, 6, -2, 1])];
        let one: &[(i64, &[i64])] = &[(1, &[2, 2, 1, 1]), (2, &[4, 2, 2, 1]), (3, &[6, 6, 1, 1]), (6, &[12, 6, 2, 1])];
        for (j, exp) in [(1, chi15), (5, chi15), (2, chi24), (4, chi24), (3, chi3), (0, one)] {
            compare(&a, cyclic_row(&a, j), &format!("m(χ^{j})"), exp, &mut f);
        }
        if a.reciprocity_index != cyclic_row(&a, 3) {
            f.push(format!("δ is row {}, χ^3 is row {}", a.reciprocity_index, cyclic_row(&a, 3)));
        }
        f
    })
}

fn golden_3() -> Outcome {
    timed(GOLDEN_BUDGET, || {
        let a = analysis("s3-a2");
        let mut f = Vec::new();
        // rows: trivial, sign, degree 2
        compare(&a, 0, "m(𝟏)", &[(1, &[2, 3, 1]), (3, &[6, 3, 1])], &mut f);
        compare(&a, 1, "m(δ)", &[(1, &[2, -3, 1]), (3, &[6, -3, 1])], &mut f);
        compare(&a, 2, "m(χ)", &[(1, &[-2, 0, 2]), (3, &[-6, 0, 2])], &mut f);
        let tau = a.group.generator_indices()[0];
        let sign_on_tau = a.table.row(1).value(a.group.class_of(tau)).to_integer();
        if a.reciprocity_index != 1 || sign_on_tau != Some(BigInt::from(-1)) {
            f.push(format!("δ is row {}", a.reciprocity_index));
        }
        f
    })
}

fn oracle_differential() -> Outcome {
    timed(ORACLE_BUDGET, || {
        let mut f = Vec::new();
        for name in BUILTINS {
            let a = analysis(name);
            match differential_check(&a, ORACLE_Q_MAX, DEFAULT_POINT_CAP) {
                Ok(verdicts) => f.extend(verdicts.iter().filter(|v| !v.passed).map(|v| format!("{name} {}: {}", v.check, v.detail))),
                Err(e) => f.push(format!("{name}: {e}")),
            }
        }
        f
    })
}

fn reciprocity() -> Outcome {
    let mut f = Vec::new();
    let mut count = 0;
    for name in BUILTINS {
        let a = analysis(name);
        for v in a.reciprocity_verdicts() {
            count += 1;
            if !v.passed {
                f.push(format!("{name} {}: {}", v.check, v.detail));
            }
        }
    }
    Outcome { failures: f, note: format!("{count} symbolic identities") }
}

fn structural() -> Outcome {
    let mut f = Vec::new();
    for (name, n) in [("c6-z2", 6), ("c6-z3", 6), ("s3-a2", 3), ("trivial-z2", 1), ("dihedral-z2", 2)] {
        let a = analysis(name);
        let ell = a.dim();
        let order = BigInt::from(a.group.order());
        for (i, m) in a.multiplicities.components().iter().enumerate() {
            if !m.has_gcd_property() {
                f.push(format!("{name} χ_{i}: gcd-property"));
            }
            let lead = BigRational::new(a.table.degrees()[i].into(), order.clone());
            for (d, p) in m.constituents() {
                if p.degree() != Some(ell) || p.leading_coefficient() != lead {
                    f.push(format!("{name} χ_{i} at gcd {d}: leading term of {}", p.render("q")));
                }
            }
        }
        let period = a.trivial_multiplicity().minimal_period();
        if period != BigInt::from(n) || a.period != BigInt::from(n) {
            f.push(format!("{name}: minimal period {period}, ñ = {}, expected {n}", a.period));
        }
    }
    Outcome { failures: f, note: "ñ = 6, 6, 3, 1, 2".into() }
}

fn d4_reference(group: &FiniteMatrixGroup) -> RawCharacterTable {
    let r = group.generator_indices()[0];
    let s = group.generator_indices()[1];
    let classes = vec![0, group.pow(r, 2), r, s, group.mul(r, s)];
    let int = |n: i64| vec![(n, 1)];
    let linear = |a: i64, b: i64| vec![int(1), int(1), int(a), int(b), int(a * b)];
    RawCharacterTable {
        conductor: 1,
        classes,
        rows: vec![
            linear(1, 1),
            linear(1, -1),
            linear(-1, 1),
            linear(-1, -1),
            vec![int(2), int(-2), int(0), int(0), int(0)],
        ],
    }
}

fn c6_reference(group: &FiniteMatrixGroup) -> RawCharacterTable {
    let sigma = group.generator_indices()[0];
    let classes = (0..6).map(|i| group.pow(sigma, i)).collect();
    let rows = (0..6)
        .map(|j| {
            (0..6)
                .map(|i| {
                    let mut v = vec![(0, 1); 6];
                    v[(i * j) % 6] = (1, 1);
                    v
                })
                .collect()
        })
        .collect();
    RawCharacterTable { conductor: 6, classes, rows }
}

fn s3_reference(group: &FiniteMatrixGroup) -> RawCharacterTable {
    let tau = group.generator_indices()[0];
    let sigma = group.generator_indices()[1];
    let int = |n: i64| vec![(n, 1)];
    RawCharacterTable {
        conductor: 1,
        classes: vec![0, tau, sigma],
        rows: vec![vec![int(1), int(1), int(1)], vec![int(1), int(-1), int(1)], vec![int(2), int(0), int(-1)]],
    }
}

fn rows_as_set(t: &CharacterTable) -> BTreeSet<Vec<equichar::cyclotomic::Cyclotomic>> {
    t.rows().iter().map(|r| r.values().to_vec()).collect()
}

fn characters() -> Outcome {
    let mut f = Vec::new();
    let references: [(&str, fn(&FiniteMatrixGroup) -> RawCharacterTable); 3] =
        [("c6-z2", c6_reference), ("s3-a2", s3_reference), ("dihedral-z2", d4_reference)];
    for (name, reference) in references {
        let spec = builtin(name).unwrap();
        let group = build_group(&spec, &RunOptions::default()).unwrap();
        let dixon = dixon_character_table(&group).unwrap();
        match ingest_character_table(&group, &reference(&group)) {
            Ok(ingested) if rows_as_set(&ingested) == rows_as_set(&dixon) => {}
            Ok(_) => f.push(format!("{name}: Dixon table differs from the reference")),
            Err(e) => f.push(format!("{name}: reference rejected: {e}")),
        }
    }
    for name in BUILTINS {
        let spec = builtin(name).unwrap();
        let group = build_group(&spec, &RunOptions::default()).unwrap();
        let table = build_table(&spec, &group).unwrap();
        match character_verdicts(&group, &table) {
            Ok(vs) => f.extend(vs.iter().filter(|v| !v.passed).map(|v| format!("{name} {}: {}", v.check, v.detail))),
            Err(e) => f.push(format!("{name}: {e}")),
        }
    }
    Outcome { failures: f, note: "orthogonality, reference tables, Frobenius on cyclic subgroups".into() }
}

fn random_matrix(rng: &mut StdRng, n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
    IntMatrix::from_rows(&rows).unwrap()
}

fn random_group(rng: &mut StdRng, n: usize) -> Vec<IntMatrix> {
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(0..4) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(k));
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, BigInt::from(-k));
        u = u.multiply(&e).unwrap();
        u_inv = e_inv.multiply(&u_inv).unwrap();
    }
    (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let mut rows = vec![vec![0i64; n]; n];
            for (col, &row) in perm.iter().enumerate() {
                rows[row][col] = if rng.gen_bool(0.5) { -1 } else { 1 };
            }
            let p = IntMatrix::from_rows(&rows).unwrap();
            u.multiply(&p).unwrap().multiply(&u_inv).unwrap()
        })
        .collect()
}

fn property_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut f = Vec::new();
    for k in 0..SNF_SAMPLES {
        let n = rng.gen_range(1..=5);
        let a = random_matrix(&mut rng, n);
        let snf = smith_normal_form(&a).unwrap();
        let unimodular = snf.left.determinant().unwrap().abs().is_one() && snf.right.determinant().unwrap().abs().is_one();
        let chain = snf.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()) && snf.divisors.iter().all(Signed::is_positive);
        if !snf.certifies(&a) || !unimodular || !chain {
            f.push(format!("SNF sample {k}: {a}"));
        }
    }
    let mut orders = Vec::new();
    for k in 0..GROUP_SAMPLES {
        let n = if k % 2 == 0 { 2 } else { 3 };
        let gens = random_group(&mut rng, n);
        let group = generate_group(n, &gens, DEFAULT_MAX_ORDER).unwrap();
        orders.push(group.order());
        let table = dixon_character_table(&group).unwrap();
        let a = Analysis::new(group, table).unwrap();
        for q in 1..=GROUP_Q_MAX {
            let qb = BigInt::from(q);
            let values = a.multiplicities.evaluate(&qb);
            let total: BigRational = values
                .iter()
                .zip(a.table.degrees())
                .map(|(v, d)| v * BigRational::from_integer((*d).into()))
                .sum();
            if values.iter().any(|v| !v.is_integer() || v.is_negative()) {
                f.push(format!("group sample {k}, q = {q}: nonintegral or negative multiplicity"));
            }
            if total != BigRational::from_integer(num_traits::pow(qb, n)) {
                f.push(format!("group sample {k}, q = {q}: dimension identity"));
            }
        }
    }
    orders.sort_unstable();
    orders.dedup();
    Outcome { failures: f, note: format!("{SNF_SAMPLES} matrices, {GROUP_SAMPLES} groups of orders {orders:?}") }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("golden example: C6 on Z^2", golden_1),
        ("golden example: C6 on Z^3", golden_2),
        ("golden example: S3 on A2", golden_3),
        ("oracle differential, q <= 24", oracle_differential),
        ("reciprocity identities", reciprocity),
        ("structural properties", structural),
        ("character tables", characters),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} [{}] {label} ({})", k + 1, outcome.note);
        for msg in &outcome.failures {
            println!("       {msg}");
        }
        failed += usize::from(!outcome.failures.is_empty());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
