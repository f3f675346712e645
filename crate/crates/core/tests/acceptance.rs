//! Acceptance criteria: worked examples plus a seeded 500-instance corpus.
//! Prints one PASS/FAIL line per criterion; the process fails if any does.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use common::*;
use itertools::Itertools;
use mmw_core::algebra::{maxmin_omega, maxmin_omega_by_subsets, vector_i64, SubsetForm};
use mmw_core::boxes::box_union_subset;
use mmw_core::relax::{admits_relaxation, decreasable, increasable, joint_box, single_bound};
use mmw_core::search::{Cardinality, SizeClass};
use mmw_core::relax;
use mmw_core::*;
use rayon::prelude::*;

#[derive(Default)]
struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn w(n: i64, d: i64) -> Omega {
    Omega::ratio(n, d).unwrap()
}

fn fin(v: i64) -> Extended {
    Extended::Finite(Scalar::from(v))
}

fn iv(lo: Extended, hi: Extended) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn pt(v: i64) -> Interval {
    Interval::point(Scalar::from(v))
}

fn union(dim: usize, boxes: Vec<Vec<Interval>>) -> BoxUnion {
    BoxUnion::new(dim, boxes.into_iter().map(IntervalBox).collect()).unwrap()
}

fn tuples(list: &[&[usize]]) -> Vec<IndexTuple> {
    list.iter().map(|t| IndexTuple::one_based(t)).collect()
}

fn vectors(list: &[&[i64]]) -> BTreeSet<Vec<Scalar>> {
    list.iter().map(|v| vector_i64(v)).collect()
}

fn fully_active_set(a: &Matrix, om: &Omega) -> BTreeSet<Vec<Scalar>> {
    fully_active_solutions(a, om).fully_active.into_iter().map(|f| f.x).collect()
}

fn exact(a: &Matrix, om: &Omega) -> BoxUnion {
    exact_solution_set(a, om, DEFAULT_CELL_BUDGET).unwrap()
}

fn show(ts: &[IndexTuple]) -> String {
    ts.iter().join(" ")
}

fn ex31() -> Matrix {
    Matrix::from_i64(&[[5, 5, -2, 3], [2, 4, 6, 1], [6, -1, 7, 2]]).unwrap()
}

fn ex32() -> Matrix {
    Matrix::from_i64(&[[4, 7, 2], [5, 2, 5], [8, 3, 1]]).unwrap()
}

fn ex41() -> Matrix {
    Matrix::from_i64(&[[1, 4, 2], [1, 2, 4], [3, 1, 3], [4, 3, 1]]).unwrap()
}

fn ex42() -> Matrix {
    Matrix::from_i64(&[[-3, 2, 6], [-3, 4, 3], [5, 4, 0]]).unwrap()
}

fn ex53() -> Matrix {
    Matrix::from_i64(&[[2, -1, 7, -3], [2, 5, 2, 0], [2, 6, 3, 2], [2, -1, 6, 4]]).unwrap()
}

/// Candidate list against a stated list and count; reports the extras.
fn candidates_vs_stated(c: &mut Check, a: &Matrix, om: &Omega, stated: &[IndexTuple], label: &str) {
    let found = candidate_tuples(&principal_order(a), om);
    let missing: Vec<IndexTuple> = stated.iter().filter(|t| !found.contains(t)).cloned().collect();
    c.expect(missing.is_empty(), format!("{label}: stated candidates not found: {}", show(&missing)));
    let extra: Vec<IndexTuple> = found.iter().filter(|t| !stated.contains(t)).cloned().collect();
    c.expect(
        found.len() == stated.len(),
        format!("{label}: {} candidates, stated exactly {}", found.len(), stated.len()),
    );
    if !extra.is_empty() {
        let all_fail = extra.iter().all(|t| verify_candidate(a, om, t).is_none());
        c.note(format!(
            "{label}: extra candidate(s) {} meet both necessary conditions and {} verification",
            show(&extra),
            if all_fail { "fail" } else { "pass" }
        ));
    }
}

fn criterion_1() -> Check {
    let mut c = Check::default();
    let a = ex31();
    let pom = principal_order(&a);

    c.expect(candidate_tuples(&pom, &w(1, 4)) == tuples(&[&[2, 3, 1, 2]]), "w=1/4 candidates");
    c.expect(fully_active_set(&a, &w(1, 4)) == vectors(&[&[-2, 1, 2, -1]]), "w=1/4 solutions");

    let half = tuples(&[
        &[1, 2, 1, 3],
        &[1, 3, 2, 2],
        &[1, 3, 2, 3],
        &[2, 1, 1, 3],
        &[2, 2, 1, 3],
        &[2, 3, 1, 1],
        &[2, 3, 2, 1],
        &[3, 2, 1, 2],
        &[3, 3, 1, 2],
    ]);
    candidates_vs_stated(&mut c, &a, &w(1, 2), &half, "w=1/2");
    c.expect(
        fully_active_set(&a, &w(1, 2)) == vectors(&[&[-2, 1, 2, -3], &[-2, 1, -6, -3], &[-6, -4, 2, -1], &[-6, 1, 2, -1]]),
        "w=1/2 solutions",
    );

    let three = tuples(&[
        &[1, 1, 2, 3],
        &[1, 1, 3, 2],
        &[1, 2, 3, 1],
        &[1, 2, 3, 3],
        &[2, 1, 3, 1],
        &[2, 2, 3, 1],
        &[3, 1, 2, 2],
        &[3, 1, 2, 3],
        &[3, 1, 3, 2],
        &[3, 2, 1, 1],
        &[3, 2, 2, 1],
        &[3, 3, 2, 1],
    ]);
    candidates_vs_stated(&mut c, &a, &w(3, 4), &three, "w=3/4");
    c.expect(
        fully_active_set(&a, &w(3, 4)) == vectors(&[&[-6, -4, 2, -3], &[-6, -4, -6, -3], &[-6, 1, -6, -3]]),
        "w=3/4 solutions",
    );

    c.expect(candidate_tuples(&pom, &w(1, 1)).is_empty(), "w=1 candidates");
    c.expect(exact(&a, &w(1, 1)).is_empty(), "w=1 exact set");
    c
}

fn criterion_2() -> Check {
    let mut c = Check::default();
    let a = ex32();
    for (om, x) in [(w(1, 3), [-4, -2, -1]), (w(1, 1), [-8, -7, -5])] {
        let s = exact(&a, &om);
        c.expect(s.boxes() == [IntervalBox::point(&vector_i64(&x))], format!("w={om}: S = {{{x:?}}}"));
        let verdict = classical_solvable(&classical_principal(&a, &om), &a, &om).unwrap();
        c.expect(verdict.solvable && verdict.unique, format!("w={om}: covering test says unique"));
    }
    let om = w(2, 3);
    let expected = vectors(&[&[-4, -3, -5], &[-5, -3, -2], &[-5, -7, -1], &[-8, -2, -2]]);
    c.expect(fully_active_set(&a, &om) == expected, "w=2/3 fully active");
    let s = exact(&a, &om);
    c.expect(s.cardinality() == Cardinality::Finite(4), "w=2/3: |S| = 4");
    let points: BTreeSet<Vec<Scalar>> = s.boxes().iter().filter_map(IntervalBox::as_point).collect();
    c.expect(points == expected, "w=2/3: S is the four listed points");
    c
}

fn criterion_3() -> Check {
    let mut c = Check::default();
    let a = ex41();
    let res = fully_active_solutions(&a, &w(1, 3));
    c.expect(res.indices == tuples(&[&[1, 3, 4], &[2, 3, 4]]), "w=1/3: I");
    c.expect(exact(&a, &w(1, 3)).boxes() == [IntervalBox::point(&vector_i64(&[-1, -1, -1]))], "w=1/3: S");
    for om in [w(2, 3), w(1, 1)] {
        let s = exact(&a, &om);
        let res = fully_active_solutions(&a, &om);
        c.expect(res.indices.is_empty(), format!("w={om}: I empty, found {}", show(&res.indices)));
        c.expect(s.is_empty(), format!("w={om}: S empty, found {s:?}"));
        for fa in &res.fully_active {
            let direct = is_solution(&a, &om, &fa.x, &vector_i64(&[0, 0, 0, 0])).unwrap();
            c.note(format!(
                "w={om}: x = ({}) from tuple {} evaluates directly to {}",
                fa.x.iter().join(", "),
                fa.tuple,
                if direct { "a solution" } else { "a non-solution" }
            ));
        }
    }
    c
}

fn criterion_4() -> Check {
    let mut c = Check::default();
    let a = ex42();
    let om = w(2, 3);
    let sols = [[3, -4, -6], [3, -4, -3], [3, -4, 0], [-5, -2, -3]];
    c.expect(
        fully_active_set(&a, &om) == sols.iter().map(|x| vector_i64(x)).collect(),
        "four fully active solutions",
    );
    let rel: Vec<BoxUnion> = sols.iter().map(|x| rel_set(&a, &om, &vector_i64(x)).unwrap()).collect();
    let displayed_rel = [
        union(3, vec![vec![iv(fin(3), Extended::PosInf), pt(-4), pt(-6)], vec![pt(3), pt(-4), iv(fin(-6), fin(0))]]),
        union(3, vec![vec![pt(3), pt(-4), iv(fin(-6), fin(0))]]),
        union(3, vec![vec![pt(3), iv(Extended::NegInf, fin(-4)), pt(-6)], vec![pt(3), pt(-4), iv(fin(-6), fin(0))]]),
        union(3, vec![vec![pt(-5), pt(-2), pt(-3)]]),
    ];
    for (k, (got, shown)) in rel.iter().zip(&displayed_rel).enumerate() {
        c.expect(
            box_union_equal(got, shown).unwrap(),
            format!("Rel({}) = {} differs from the display {}", sols[k].iter().join(","), got_text(got), got_text(shown)),
        );
    }
    c.expect(box_union_subset(&rel[1], &rel[0]).unwrap(), "second Rel set inside the first");
    c.expect(box_union_subset(&rel[1], &rel[2]).unwrap(), "second Rel set inside the third");

    let s = exact(&a, &om);
    let displayed_s = union(
        3,
        vec![
            vec![iv(fin(3), Extended::PosInf), pt(-4), pt(-6)],
            vec![pt(3), iv(Extended::NegInf, fin(-4)), pt(-6)],
            vec![pt(3), pt(-4), iv(fin(-6), fin(0))],
            vec![pt(-5), pt(-2), pt(-3)],
        ],
    );
    c.expect(box_union_equal(&s, &displayed_s).unwrap(), format!("exact set {} differs from the display", got_text(&s)));

    let zero = vector_i64(&[0, 0, 0]);
    let probe = vector_i64(&[3, -5, -6]);
    c.note(format!(
        "the displayed box [3,3]x[-inf,-4]x[-6,-6] contains (3,-5,-6), which evaluates to {}",
        if is_solution(&a, &om, &probe, &zero).unwrap() { "a solution" } else { "a non-solution" }
    ));
    let corrected = union(
        3,
        vec![
            vec![iv(fin(3), Extended::PosInf), pt(-4), pt(-6)],
            vec![pt(3), iv(Extended::NegInf, fin(-4)), pt(0)],
            vec![pt(3), pt(-4), iv(fin(-6), fin(0))],
            vec![pt(-5), pt(-2), pt(-3)],
        ],
    );
    c.note(format!(
        "with x3 = 0 in that box the exact set {} the display",
        if box_union_equal(&s, &corrected).unwrap() { "equals" } else { "still differs from" }
    ));
    c
}

fn got_text(u: &BoxUnion) -> String {
    u.boxes().iter().map(|b| format!("{{{b}}}")).join(" u ")
}

fn criterion_5() -> Check {
    let mut c = Check::default();
    let a = ex31();
    let posinf = Extended::PosInf;
    let neginf = Extended::NegInf;
    let s1 = union(
        4,
        vec![
            vec![iv(fin(-2), posinf.clone()), pt(1), pt(2), pt(-1)],
            vec![pt(-2), pt(1), pt(2), iv(fin(-1), posinf.clone())],
        ],
    );
    c.expect(box_union_equal(&exact(&a, &w(1, 4)), &s1).unwrap(), "S(A,1/4) two-box union");
    let rel1 = rel_set(&a, &w(1, 4), &vector_i64(&[-2, 1, 2, -1])).unwrap();
    c.expect(box_union_equal(&rel1, &s1).unwrap(), "Rel(x) = S(A,1/4)");

    let s2 = union(
        4,
        vec![
            vec![pt(-2), pt(1), iv(fin(-6), fin(2)), pt(-3)],
            vec![pt(-2), pt(1), pt(2), iv(neginf.clone(), fin(-3))],
            vec![iv(fin(-2), posinf.clone()), pt(1), pt(-6), pt(-3)],
            vec![pt(-6), iv(fin(-4), fin(1)), pt(2), pt(-1)],
            vec![pt(-6), iv(fin(-4), fin(1)), pt(2), iv(fin(-1), posinf.clone())],
            vec![iv(neginf.clone(), fin(-6)), pt(1), pt(2), pt(-1)],
        ],
    );
    let half = exact(&a, &w(1, 2));
    c.expect(box_union_equal(&half, &s2).unwrap(), format!("S(A,1/2) = {} differs from the six-box display", got_text(&half)));
    let zero = vec![Scalar::zero(); 3];
    let probe = vector_i64(&[-6, 1, 2, 5]);
    c.note(format!(
        "the displayed box [-6,-6]x[-4,1]x[2,2]x[-1,+inf] contains (-6,1,2,5), which evaluates to {}",
        if is_solution(&a, &w(1, 2), &probe, &zero).unwrap() { "a solution" } else { "a non-solution" }
    ));
    let mut fixed = s2.boxes().to_vec();
    fixed[4] = IntervalBox(vec![pt(-6), pt(-4), pt(2), iv(fin(-1), posinf.clone())]);
    c.note(format!(
        "with x2 = -4 in that box S(A,1/2) {} the display",
        if box_union_equal(&half, &BoxUnion::new(4, fixed).unwrap()).unwrap() { "equals" } else { "still differs from" }
    ));

    let s3 = union(
        4,
        vec![
            vec![pt(-6), pt(-4), iv(fin(-6), fin(2)), pt(-3)],
            vec![pt(-6), pt(-4), pt(2), iv(neginf, fin(-3))],
            vec![iv(Extended::NegInf, fin(-6)), pt(1), pt(-6), pt(-3)],
            vec![pt(-6), iv(fin(-4), fin(1)), pt(-6), pt(-3)],
        ],
    );
    c.expect(box_union_equal(&exact(&a, &w(3, 4)), &s3).unwrap(), "S(A,3/4) four-box union");

    let om = w(1, 2);
    let tx = tableau(&a, &om, &vector_i64(&[-2, 1, 2, -3])).unwrap();
    c.expect(single_bound(&tx, 2, Direction::Down) == fin(8), "|delta_3| = 8");
    c.expect(single_bound(&tx, 3, Direction::Down) == posinf, "delta_4 unbounded below");
    let ty = tableau(&a, &om, &vector_i64(&[-2, 1, -6, -3])).unwrap();
    c.expect(single_bound(&ty, 0, Direction::Up) == posinf, "epsilon_1 = +inf for y");
    c.expect(single_bound(&ty, 2, Direction::Up) == fin(8), "epsilon_3 = 8 for y");
    let t14 = tableau(&a, &w(1, 4), &vector_i64(&[-2, 1, 2, -1])).unwrap();
    c.expect(single_bound(&t14, 0, Direction::Up) == posinf, "epsilon_1 = +inf at w=1/4");
    c.expect(single_bound(&t14, 3, Direction::Up) == posinf, "epsilon_4 = +inf at w=1/4");
    c
}

fn criterion_6() -> Check {
    let mut c = Check::default();
    let a = ex53();
    let om = w(1, 2);
    let y = vector_i64(&[-2, 1, -3, 3]);
    let t = tableau(&a, &om, &y).unwrap();
    c.expect(increasable(&t) == vec![3], "only index 4 increasable");
    c.expect(decreasable(&t) == vec![1, 2, 3], "indices 2, 3, 4 decreasable");
    let posinf = Extended::PosInf;
    let shown = [
        IntervalBox(vec![pt(-2), iv(fin(-5), fin(1)), pt(-3), iv(fin(3), posinf.clone())]),
        IntervalBox(vec![pt(-2), pt(1), iv(Extended::NegInf, fin(-3)), iv(fin(3), posinf.clone())]),
        IntervalBox(vec![pt(-2), pt(1), pt(-3), iv(fin(0), posinf.clone())]),
        IntervalBox(vec![pt(-2), iv(fin(-5), fin(1)), iv(fin(-6), fin(-3)), iv(fin(3), posinf.clone())]),
        IntervalBox(vec![pt(-2), pt(1), iv(fin(-7), fin(-3)), iv(fin(0), fin(3))]),
    ];
    c.expect(joint_box(&t, &[1], &[3]).unwrap() == shown[0], "Q={2}, R={4}");
    c.expect(joint_box(&t, &[2], &[3]).unwrap() == shown[1], "Q={3}, R={4}");
    let x4_only = union(4, vec![joint_box(&t, &[3], &[]).unwrap().0, joint_box(&t, &[], &[3]).unwrap().0]);
    c.expect(box_union_equal(&x4_only, &union(4, vec![shown[2].0.clone()])).unwrap(), "x4 alone");
    c.expect(joint_box(&t, &[1, 2], &[3]).unwrap() == shown[3], "Q={2,3}, R={4}");
    c.expect(joint_box(&t, &[2, 3], &[]).unwrap() == shown[4], "Q={3,4}");
    c.expect(shown[3].contains_box(&shown[0]), "first box inside the fourth");
    let rel = rel_set(&a, &om, &y).unwrap();
    let all = BoxUnion::new(4, shown.to_vec()).unwrap();
    c.expect(box_union_equal(&rel, &all).unwrap(), format!("Rel(y) = union of the five boxes, got {}", got_text(&rel)));
    c
}

/// Everything computed once per corpus instance and level.
struct Case {
    rows: Rows,
    p: usize,
    a: Matrix,
    omega: Omega,
    exact: BoxUnion,
    search: SearchResult,
}

fn cases() -> Vec<Case> {
    corpus()
        .into_par_iter()
        .flat_map_iter(|rows| {
            let n = rows[0].len();
            (1..=n).map(move |p| {
                let a = matrix(&rows);
                let om = omega(p, n);
                let exact = exact_solution_set(&a, &om, DEFAULT_CELL_BUDGET).unwrap();
                let search = fully_active_solutions(&a, &om);
                Case { rows: rows.clone(), p, a, omega: om, exact, search }
            })
        })
        .collect()
}

fn criterion_7(cases: &[Case]) -> Check {
    let mut c = Check::default();
    let problems: Vec<String> = cases
        .par_iter()
        .flat_map_iter(|k| {
            let mut out = Vec::new();
            let (xs, ts) = brute_force(&k.rows, k.p);
            let got_x: BTreeSet<Vec<Scalar>> = k.search.fully_active.iter().map(|f| f.x.clone()).collect();
            let want_x: BTreeSet<Vec<Scalar>> = xs.iter().map(|x| scalars(x)).collect();
            if got_x != want_x {
                out.push(format!("{:?} p={}: fully active vectors differ", k.rows, k.p));
            }
            let got_t: BTreeSet<Vec<usize>> = k.search.indices.iter().map(|t| t.rows().to_vec()).collect();
            if got_t != ts {
                out.push(format!("{:?} p={}: index sets differ", k.rows, k.p));
            }
            for x2 in grid_points2(&k.rows) {
                if member(&k.exact, &halves(&x2)) != solves2(&k.rows, k.p, &x2) {
                    out.push(format!("{:?} p={}: membership differs at 2x = {x2:?}", k.rows, k.p));
                    break;
                }
            }
            out
        })
        .collect();
    let points: usize = cases.iter().map(|k| grid_points2(&k.rows).len()).sum();
    c.note(format!("{} instance-levels, {points} grid points", cases.len()));
    for p in problems {
        c.expect(false, p);
    }
    c
}

fn theory_violations(k: &Case) -> Vec<String> {
    let mut out = Vec::new();
    let tag = format!("{:?} p={}", k.rows, k.p);
    let (m, n) = (k.rows.len(), k.rows[0].len());
    let freqs = frequencies(&k.rows);
    let f: usize = freqs.iter().sum();
    let distinct = column_distinct(&k.rows);

    // subset identities, on rows and columns of A
    let multisets = k.a.to_rows().into_iter().chain((0..n).map(|j| k.a.column(j).cloned().collect()));
    for s in multisets {
        let om = omega(k.p.min(s.len()).max(1), s.len().max(1));
        let direct = maxmin_omega(&s, &om).unwrap();
        for form in [SubsetForm::MinOfMax, SubsetForm::MaxOfMin] {
            if maxmin_omega_by_subsets(&s, &om, form).unwrap() != direct {
                out.push(format!("{tag}: subset identity {form:?} on {s:?}"));
            }
        }
    }

    // indices are unchanged by replacing A with its ranks
    let (_, ts) = brute_force(&k.rows, k.p);
    let (_, rank_ts) = brute_force(&ranks(&k.rows), k.p);
    if ts != rank_ts {
        out.push(format!("{tag}: indices change under rank substitution"));
    }

    if m > f && !k.exact.is_empty() {
        out.push(format!("{tag}: m > f but S is nonempty"));
    }

    if m == f {
        let bound = (m * k.p + n - m) as i64;
        let rk = ranks(&k.rows);
        for t in &ts {
            if !t.iter().all_unique() {
                out.push(format!("{tag}: index {:?} repeats a row", to_one_based(t)));
            }
            let sum: i64 = t.iter().enumerate().map(|(k, &i)| rk[i][k]).sum();
            if sum != bound {
                out.push(format!("{tag}: index {:?} has rank sum {sum}, not {bound}", to_one_based(t)));
            }
        }
        let points: Option<BTreeSet<Vec<Scalar>>> = k.exact.boxes().iter().map(IntervalBox::as_point).collect();
        let fa: BTreeSet<Vec<Scalar>> = k.search.fully_active.iter().map(|x| x.x.clone()).collect();
        if points.as_ref() != Some(&fa) {
            out.push(format!("{tag}: m = f but S is not the set of fully active solutions"));
        }
        let per_solution: usize = freqs.iter().product();
        if ts.len() != fa.len() * per_solution {
            out.push(format!("{tag}: |I| = {} but |S| * prod f_j = {}", ts.len(), fa.len() * per_solution));
        }
        if distinct && ts.len() != fa.len() {
            out.push(format!("{tag}: |I| != |S| for a column-distinct square system"));
        }
    }

    let zeros = vec![Scalar::zero(); m];
    for fa in &k.search.fully_active {
        let t = tableau(&k.a, &k.omega, &fa.x).unwrap();
        let inc = increasable(&t);
        let dec = decreasable(&t);
        if k.p == 1 && !dec.is_empty() {
            out.push(format!("{tag}: decreasable index at p = 1"));
        }
        if k.p == n && !inc.is_empty() {
            out.push(format!("{tag}: increasable index at p = n"));
        }
        let share_zero = |j: usize, l: usize| (0..m).any(|i| t.zero_set(i).contains(&j) && t.zero_set(i).contains(&l));
        if k.p == 2 {
            for (&j, &l) in dec.iter().tuple_combinations() {
                if share_zero(j, l) && admits_relaxation(&t, &[j, l], &[]).unwrap() {
                    out.push(format!("{tag}: decreasable {j},{l} share a zero yet decrease together"));
                }
            }
        }
        if n >= 2 && k.p == n - 1 {
            for (&j, &l) in inc.iter().tuple_combinations() {
                if share_zero(j, l) && admits_relaxation(&t, &[], &[j, l]).unwrap() {
                    out.push(format!("{tag}: increasable {j},{l} share a zero yet increase together"));
                }
            }
        }
        if distinct && m == n && !(inc.is_empty() && dec.is_empty()) {
            out.push(format!("{tag}: square column-distinct solution can move"));
        }
        if distinct && m < n && inc.is_empty() && dec.is_empty() && relax::admissible_pairs(&t).len() <= 1 {
            out.push(format!("{tag}: m < n but ({}) cannot be relaxed", fa.x.iter().join(",")));
        }
        if !is_solution(&k.a, &k.omega, &fa.x, &zeros).unwrap() {
            out.push(format!("{tag}: reported solution does not solve"));
        }
    }
    if distinct && m == n && matches!(k.exact.cardinality(), Cardinality::Infinite) {
        out.push(format!("{tag}: square column-distinct system with infinitely many solutions"));
    }
    out
}

/// `|S| <= 1` at levels 1 and n for square column-distinct systems; for
/// n = 3 with one solution at both, four at level 2.
fn square_distinct_counts(rows: &Rows) -> Vec<String> {
    let n = rows[0].len();
    if rows.len() != n || !column_distinct(rows) {
        return Vec::new();
    }
    let a = matrix(rows);
    let size = |p: usize| exact_solution_set(&a, &omega(p, n), DEFAULT_CELL_BUDGET).unwrap().cardinality();
    let mut out = Vec::new();
    let ends = [size(1), size(n)];
    for s in ends {
        if !matches!(s, Cardinality::Finite(0 | 1)) {
            out.push(format!("{rows:?}: |S| = {s:?} at level 1 or n"));
        }
    }
    if n == 3 && ends == [Cardinality::Finite(1); 2] && size(2) != Cardinality::Finite(4) {
        out.push(format!("{rows:?}: n = 3 unique at both ends but |S| at level 2 is {:?}", size(2)));
    }
    out
}

fn criterion_8(cases: &[Case]) -> Check {
    let mut c = Check::default();
    let mut problems: Vec<String> = cases.par_iter().flat_map_iter(theory_violations).collect();
    problems.extend(corpus().iter().flat_map(square_distinct_counts));
    let mf = cases.iter().filter(|k| k.rows.len() == frequencies(&k.rows).iter().sum::<usize>()).count();
    let sq = cases.iter().filter(|k| k.rows.len() == k.rows[0].len() && column_distinct(&k.rows)).count();
    c.note(format!("{mf} instance-levels with m = f, {sq} square column-distinct"));
    for p in problems {
        c.expect(false, p);
    }
    c
}

fn criterion_9(cases: &[Case]) -> Check {
    let mut c = Check::default();
    let mut seen = BTreeSet::new();
    for k in cases {
        let class = size_classification(&k.a).class;
        let observed = if k.exact.boxes().iter().any(|b| !b.is_point()) {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(k.exact.boxes().len())
        };
        seen.insert(format!("{class}"));
        c.expect(class.admits(observed), format!("{:?} p={}: class {class} vs {observed:?}", k.rows, k.p));
        if class == SizeClass::Empty && !k.search.fully_active.is_empty() {
            c.expect(false, format!("{:?}: class {{0}} with a fully active solution", k.rows));
        }
    }
    c.note(format!("classes seen: {}", seen.iter().join(" ")));
    c
}

fn main() -> ExitCode {
    let all = cases();
    let results: Vec<(&str, Check)> = vec![
        ("3x4 column-distinct example: candidates and fully active solutions", criterion_1()),
        ("3x3 column-distinct example: unique at 1/3 and 1, four at 2/3", criterion_2()),
        ("4x3 duplicate example: I and S at 1/3, empty at 2/3 and 1", criterion_3()),
        ("3x3 duplicate example at 2/3: solutions, Rel sets, four-box S", criterion_4()),
        ("3x4 example: S unions at 1/4, 1/2, 3/4 and single-index bounds", criterion_5()),
        ("4x4 example at 1/2: five relaxation boxes", criterion_6()),
        ("oracle equivalence on the seeded corpus", criterion_7(&all)),
        ("theory conformance on the seeded corpus", criterion_8(&all)),
        ("classification consistency on the seeded corpus", criterion_9(&all)),
    ];
    let mut failed = 0;
    for (k, (title, check)) in results.iter().enumerate() {
        let ok = check.failures.is_empty();
        failed += usize::from(!ok);
        println!("acceptance criterion {}: {} - {title}", k + 1, if ok { "PASS" } else { "FAIL" });
        for f in check.failures.iter().take(10) {
            println!("    failed: {f}");
        }
        if check.failures.len() > 10 {
            println!("    ... {} more", check.failures.len() - 10);
        }
        for n in &check.notes {
            println!("    note: {n}");
        }
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
