//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use starconf::ara::{
    arrangement_bounds, stci_certificate, sv_generators, sv_partition, verify_sv_conditions,
    verify_zero_locus_match,
};
use starconf::coding::{
    component_subcodes, generator_matrix, maximal_subcodes_of_support_at_most, min_distance,
    minimum_weight_classes,
};
use starconf::exactalg::modp::{choose_good_prime, dot_mod, reduce_vector};
use starconf::gsc::{height, minimal_primes, prime_points_mod_p, zero_locus_mod_p};
use starconf::interpolate::{interpolate, verify_pigeonhole};
use starconf::planar::{planar_interpolate, poincare_crosscheck, ProjPoint};
use starconf::poly::{afold_index_sets, product_of_forms, vanishes_on_span};
use starconf::sampling::{random_arrangement, random_general_position, random_lambda, rng};
use starconf::subsets::binomial;
use starconf::{
    Arrangement, Budget, Error, FieldSpec, FormList, Gsc, LinearForm, LinearSpan, Matrix,
};

const Q: FieldSpec = FieldSpec::Rational;

type Check = Result<(), String>;

type Criterion = (&'static str, Option<Duration>, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn forms(rows: &[&[i64]]) -> FormList {
    FormList::from_int_rows(Q, rows).unwrap()
}

fn span(rows: &[&[i64]]) -> LinearSpan {
    LinearSpan::from_matrix(&Matrix::from_ints(Q, rows).unwrap())
}

fn sorted(mut v: Vec<LinearSpan>) -> Vec<LinearSpan> {
    v.sort();
    v
}

fn skew_lines() -> FormList {
    forms(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[1, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[0, 0, 1, 1],
    ])
}

fn five_points() -> Vec<ProjPoint> {
    [[0, 0, 1], [0, 1, 1], [0, 2, 1], [1, 0, 1], [1, 1, 1]]
        .iter()
        .map(|&c| ProjPoint::from_ints(c).unwrap())
        .collect()
}

fn skew_lines_golden() -> Check {
    let b = Budget::default();
    let g = Gsc::new(skew_lines(), 4).unwrap();
    let mp = minimal_primes(&g, &b).unwrap();
    let want = vec![
        span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]),
        span(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]),
    ];
    ensure(sorted(mp.spans()) == sorted(want), "minimal primes differ")?;
    ensure(mp.height == 2, format!("height {}", mp.height))?;
    let cert = stci_certificate(&g, &b).unwrap();
    ensure(!cert.stci_certified, "certified as s.t.c.i.")
}

fn plane_line_golden() -> Check {
    let b = Budget::default();
    // variables x, y, z, w
    let lambda = forms(&[
        &[1, 0, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[1, 0, 1, 1],
        &[0, 1, 0, 0],
        &[1, 1, 0, 0],
        &[1, -1, 0, 0],
    ]);
    let xzw = span(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let xy = span(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let mp = minimal_primes(&Gsc::new(lambda, 4).unwrap(), &b).unwrap();
    ensure(
        sorted(mp.spans()) == sorted(vec![xzw.clone(), xy.clone()]),
        "minimal primes differ",
    )?;
    let arr = Arrangement::from_spans(vec![xzw, xy]).unwrap();
    let r = interpolate(&arr, &b).unwrap();
    ensure(r.aleph == 4, format!("aleph {}", r.aleph))?;
    ensure(r.verification.equal, "interpolation verification failed")?;
    ensure(verify_pigeonhole(&r, &b).unwrap().holds, "pigeonhole fails")?;
    let bounds = arrangement_bounds(&arr);
    ensure(
        bounds.sv_bound == 4 && bounds.ee_bound == Some(3),
        format!("bounds {bounds:?}"),
    )
}

fn five_points_golden() -> Check {
    let b = Budget::default();
    let r = planar_interpolate(&five_points(), &b).unwrap();
    let mut want: Vec<LinearForm> = [
        [1, 0, 0],
        [1, 0, 0],
        [1, 0, -1],
        [1, -1, 0],
        [0, 1, 0],
        [1, 1, -1],
        [0, 1, -1],
        [2, 1, -2],
        [1, 1, -2],
    ]
    .iter()
    .map(|c| LinearForm::from_ints(Q, c).unwrap())
    .collect();
    want.sort();
    let mut got = r.lambda.forms().to_vec();
    got.sort();
    ensure(got == want, "Λ_X differs")?;
    ensure(r.a == 6, format!("a = {}", r.a))?;
    let ideals: Vec<LinearSpan> = [
        [[1, 0, 0], [0, 1, 0]],
        [[1, 0, 0], [0, 1, -1]],
        [[1, 0, 0], [0, 1, -2]],
        [[0, 1, 0], [1, 0, -1]],
        [[1, 0, -1], [0, 1, -1]],
    ]
    .iter()
    .map(|[u, v]| span(&[u, v]))
    .collect();
    let mp = minimal_primes(&r.gsc(), &b).unwrap();
    ensure(
        sorted(mp.spans()) == sorted(ideals),
        "minimal primes are not the point ideals",
    )?;
    for s in &r.profile.table {
        if s.in_x {
            ensure(s.nu == 4, format!("ν({}) = {}", s.point, s.nu))?;
        } else {
            ensure(s.nu <= 3, format!("ν({}) = {}", s.point, s.nu))?;
        }
    }
    ensure(
        r.profile.table.iter().filter(|s| s.in_x).count() == 5,
        "missing points of X",
    )?;
    let pc = poincare_crosscheck(&five_points()).unwrap();
    ensure(pc.sum_mu == 9, format!("Möbius sum {}", pc.sum_mu))
}

fn sv_system_check() -> Check {
    let b = Budget::default();
    let part = sv_partition(6, 4).unwrap();
    ensure(
        part.sizes() == vec![1, 4, 10],
        format!("sizes {:?}", part.sizes()),
    )?;
    ensure(
        verify_sv_conditions(&part, &b).unwrap().holds,
        "conditions fail",
    )?;
    let mut sys = sv_generators(&skew_lines(), 4, &BTreeMap::new(), &b).unwrap();
    ensure(sys.q.len() == 3, "expected 3 generators")?;
    let report = verify_zero_locus_match(&sys, &[5, 7], &b).unwrap();
    ensure(report.all_match, format!("loci differ: {report:?}"))?;
    let dropped = product_of_forms(&skew_lines(), &sys.partition.families[1][0]).unwrap();
    sys.q[1] = sys.q[1].sub(&dropped).unwrap();
    let mutated = verify_zero_locus_match(&sys, &[5, 7], &b).unwrap();
    ensure(!mutated.all_match, "mutated system not detected")
}

fn interpolation_properties() -> Check {
    let small = Budget {
        subsets: 100_000,
        scan: 2_000_000,
    };
    let mut r = rng(101);
    let mut passed = 0;
    let mut redrawn = 0;
    while passed < 25 {
        let arr = random_arrangement(&mut r, 5, 3);
        let res = match interpolate(&arr, &small) {
            Ok(res) => res,
            Err(Error::BudgetExceeded { .. }) => {
                redrawn += 1;
                continue;
            }
            Err(e) => return Err(format!("interpolate failed: {e}")),
        };
        ensure(
            binomial(res.lambda.len(), res.aleph) <= 100_000,
            "oversized instance",
        )?;
        ensure(
            res.verification.equal,
            format!("radical mismatch on draw {passed}"),
        )?;
        let pig = verify_pigeonhole(&res, &small).map_err(|e| e.to_string())?;
        ensure(pig.holds, format!("pigeonhole fails on draw {passed}"))?;
        passed += 1;
    }
    ensure(redrawn < 1000, "too many oversized draws")
}

fn radical_consistency() -> Check {
    let b = Budget::default();
    let mut r = rng(202);
    for draw in 0..10 {
        let lambda = random_lambda(&mut r, 8, 4);
        let n = lambda.len();
        let m = lambda.matrix();
        let (p1, _) = choose_good_prime(&m, &[7, 11, 13, 17, 19, 23], &b).unwrap();
        let after: Vec<u32> = [7, 11, 13, 17, 19, 23, 29, 31]
            .into_iter()
            .filter(|&q| q > p1)
            .collect();
        let (p2, _) = choose_good_prime(&m, &after, &b).unwrap();
        let mut previous: BTreeMap<u32, BTreeSet<Vec<u32>>> = BTreeMap::new();
        for a in 1..=n {
            let g = Gsc::new(lambda.clone(), a).unwrap();
            let mp = minimal_primes(&g, &b).unwrap();
            for idx in afold_index_sets(n, a).unwrap() {
                let f = product_of_forms(&lambda, &idx).unwrap();
                for s in mp.spans() {
                    ensure(
                        vanishes_on_span(&f, &s).unwrap(),
                        format!("draw {draw}, a={a}: product {idx:?} does not vanish"),
                    )?;
                }
            }
            for p in [p1, p2] {
                let locus = zero_locus_mod_p(&g, p, &b).unwrap();
                let points = prime_points_mod_p(&lambda, &mp, p, &b).unwrap();
                ensure(
                    locus == points,
                    format!("draw {draw}, a={a}, p={p}: loci differ"),
                )?;
                // independent count oracle for the locus
                let reduced: Vec<Vec<u32>> = lambda
                    .forms()
                    .iter()
                    .map(|f| reduce_vector(f.coeffs(), p).unwrap())
                    .collect();
                ensure(
                    locus
                        .iter()
                        .all(|x| reduced.iter().filter(|f| dot_mod(f, x, p) != 0).count() < a),
                    "locus point with too many nonzero forms",
                )?;
                let set: BTreeSet<Vec<u32>> = locus.into_iter().collect();
                if let Some(prev) = previous.get(&p) {
                    ensure(
                        prev.is_subset(&set),
                        format!("draw {draw}: V_{} not inside V_{a}", a - 1),
                    )?;
                }
                previous.insert(p, set);
            }
        }
    }
    Ok(())
}

fn coding() -> Check {
    let b = Budget::default();
    let planar = planar_interpolate(&five_points(), &b).unwrap();
    let g = generator_matrix(&planar.lambda).unwrap();
    let d = min_distance(&g, 101, &b).unwrap();
    ensure(d == 5 && d == planar.a - 1, format!("min distance {d}"))?;
    let classes = minimum_weight_classes(&g, 101, &b).unwrap();
    let got: BTreeSet<Vec<u32>> = classes.iter().map(|c| c.message.clone()).collect();
    let want: BTreeSet<Vec<u32>> = five_points()
        .iter()
        .map(|p| {
            let v = reduce_vector(&p.to_scalars(), 101).unwrap();
            starconf::exactalg::modp::normalize(&v, 101).unwrap()
        })
        .collect();
    ensure(
        got == want,
        "minimum-weight classes are not the points of X",
    )?;
    let mut comps = component_subcodes(&g, &planar.point_ideals()).unwrap();
    comps.sort();
    let max = maximal_subcodes_of_support_at_most(&g, 5, &b).unwrap();
    ensure(
        max == comps,
        "maximal subcodes differ from component subcodes",
    )?;
    let h = generator_matrix(&skew_lines()).unwrap();
    for p in [5, 7] {
        let d = min_distance(&h, p, &b).unwrap();
        ensure(d == 2, format!("skew lines min distance {d} over F_{p}"))?;
    }
    Ok(())
}

fn stci() -> Check {
    let b = Budget::default();
    let mut r = rng(303);
    for draw in 0..10 {
        let (lambda, c) = random_general_position(&mut r, 8, 4);
        let n = lambda.len();
        let a = n - c + 1;
        let g = Gsc::new(lambda, a).unwrap();
        let h = height(&g, &b).unwrap();
        ensure(
            h == n - a + 1,
            format!("draw {draw}: height {h}, expected {}", n - a + 1),
        )?;
        ensure(
            stci_certificate(&g, &b).unwrap().stci_certified,
            format!("draw {draw}: not certified"),
        )?;
    }
    let lambda = forms(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, -1, 2]]);
    let g = Gsc::new(lambda.clone(), 5).unwrap();
    ensure(
        stci_certificate(&g, &b).unwrap().stci_certified,
        "product case not certified",
    )?;
    let sys = sv_generators(&lambda, 5, &BTreeMap::new(), &b).unwrap();
    ensure(sys.q.len() == 1, "product case needs one generator")
}

fn trivial_cases() -> Check {
    let b = Budget::default();
    let hyperplanes = Arrangement::from_spans(vec![
        span(&[&[1, 0, 0]]),
        span(&[&[0, 1, 0]]),
        span(&[&[0, 0, 1]]),
        span(&[&[1, 1, 1]]),
    ])
    .unwrap();
    let r = interpolate(&hyperplanes, &b).unwrap();
    ensure(
        r.aleph == 1 && r.a == r.lambda.len(),
        format!("aleph {} a {} n {}", r.aleph, r.a, r.lambda.len()),
    )?;
    ensure(r.verification.equal, "hyperplane verification failed")?;
    let mp = minimal_primes(&Gsc::new(skew_lines(), 1).unwrap(), &b).unwrap();
    ensure(mp.is_empty_variety(), "a = 1 is not empty")?;
    let tri: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .iter()
        .map(|&c| ProjPoint::from_ints(c).unwrap())
        .collect();
    let t = planar_interpolate(&tri, &b).unwrap();
    ensure(t.a == 2, format!("triangle a = {}", t.a))?;
    let want = vec![
        span(&[&[0, 1, 0], &[0, 0, 1]]),
        span(&[&[1, 0, 0], &[0, 0, 1]]),
        span(&[&[1, 0, 0], &[0, 1, 0]]),
    ];
    let got = minimal_primes(&t.gsc(), &b).unwrap().spans();
    ensure(
        sorted(got) == sorted(want),
        "triangle primes are not the coordinate points",
    )
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "skew lines golden",
            Some(Duration::from_secs(1)),
            skew_lines_golden,
        ),
        (
            "two-block golden",
            Some(Duration::from_secs(1)),
            plane_line_golden,
        ),
        (
            "five-point planar golden",
            Some(Duration::from_secs(1)),
            five_points_golden,
        ),
        ("generators up to radical", None, sv_system_check),
        (
            "interpolation property suite",
            Some(Duration::from_secs(60)),
            interpolation_properties,
        ),
        ("radical formula consistency", None, radical_consistency),
        ("coding", Some(Duration::from_secs(10)), coding),
        ("s.t.c.i. certification", None, stci),
        ("trivial cases", None, trivial_cases),
    ];
    let mut failures = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(()) => println!("PASS [{}] {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL [{}] {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
