//! The library checked against the brute-force oracles in `common`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::*;
use tracecode::bounds;
use tracecode::charsum::{self, QuadraticTrace};
use tracecode::code::{self, Family};
use tracecode::dual;
use tracecode::weights;
use tracecode::Field;

fn pair(p: u32, s: u32) -> (Arc<Field>, NaiveField) {
    let f = Arc::new(Field::new(p, s).unwrap());
    let naive = NaiveField::new(p, f.modulus());
    (f, naive)
}

fn nonzero(counts: &BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    counts.iter().filter(|(&w, _)| w > 0).map(|(&w, &a)| (w, a)).collect()
}

#[test]
fn multiplication_agrees_with_schoolbook() {
    for (p, s) in [(2, 6), (3, 4), (5, 2), (3, 1)] {
        let (f, naive) = pair(p, s);
        for a in f.elements() {
            for b in f.elements() {
                let want = naive.mul(&f.coeffs(a), &f.coeffs(b));
                assert_eq!(f.coeffs(f.mul(a, b).unwrap()), want, "p={p} s={s}");
            }
        }
    }
}

#[test]
fn traces_agree_with_repeated_powering() {
    let (f, naive) = pair(3, 4);
    for x in f.elements() {
        let c = f.coeffs(x);
        assert_eq!(f.trace(x).unwrap(), naive.abs_trace(&c));
        assert_eq!(f.coeffs(f.relative_trace(x, 2).unwrap()), naive.trace(&c, 4, 2));
        assert_eq!(f.coeffs(f.norm_to_half(x).unwrap()), naive.norm_to_half(&c));
    }
}

#[test]
fn defining_sets_agree() {
    for (p, m, e) in [(2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 3, 1), (5, 2, 1), (3, 2, 2)] {
        let (f, naive) = pair(p, 2 * m);
        let d1 = code::defining_set_d1(&f, e).unwrap();
        let got: BTreeSet<Vec<u32>> = d1.elements().iter().map(|&x| f.coeffs(x)).collect();
        let want: BTreeSet<Vec<u32>> = naive_d1(&naive, e as usize).into_iter().collect();
        assert_eq!(got, want, "({p},{m},{e})");
    }
}

#[test]
fn weight_distributions_agree() {
    for (p, m, e) in [(2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 3, 1), (5, 2, 1)] {
        let (f, naive) = pair(p, 2 * m);
        let set = naive_d1(&naive, e);
        let want = naive_distribution(&trace_generator(&naive, &set), p);
        let got = weights::weight_distribution(&code::build_family(Family::D1, &f, Some(e as u32)).unwrap()).unwrap();
        assert_eq!(got.counts, want, "D1 ({p},{m},{e})");

        let reps = naive_orbit_reps(&naive, &set);
        let want = naive_distribution(&trace_generator(&naive, &reps), p);
        let got =
            weights::weight_distribution(&code::build_family(Family::D1Bar, &f, Some(e as u32)).unwrap()).unwrap();
        assert_eq!(got.counts, want, "D1BAR ({p},{m},{e})");
    }
    for (p, m) in [(2, 2), (3, 1), (5, 1), (3, 2), (2, 3)] {
        let (f, naive) = pair(p, 2 * m);
        let want = naive_distribution(&d2_generator(&naive), p);
        let got = weights::weight_distribution(&code::code_d2(&f).unwrap()).unwrap();
        assert_eq!(got.counts, want, "D2 ({p},{m})");
    }
}

#[test]
fn published_enumerators_from_the_oracle_alone() {
    let naive = NaiveField::new(3, Field::new(3, 4).unwrap().modulus());
    let d = naive_distribution(&trace_generator(&naive, &naive_d1(&naive, 1)), 3);
    assert_eq!(nonzero(&d), BTreeMap::from([(12, 60), (18, 20)]));
    let naive = NaiveField::new(5, Field::new(5, 2).unwrap().modulus());
    let d = naive_distribution(&d2_generator(&naive), 5);
    assert_eq!(nonzero(&d), BTreeMap::from([(19, 96), (20, 24), (24, 4)]));
    let naive = NaiveField::new(3, Field::new(3, 4).unwrap().modulus());
    let d = naive_distribution(&d2_generator(&naive), 3);
    assert_eq!(nonzero(&d), BTreeMap::from([(51, 480), (54, 80), (60, 168)]));
}

#[test]
fn dual_distances_agree() {
    let cases: Vec<(Family, u32, u32, Option<u32>)> = vec![
        (Family::D1, 3, 2, Some(1)),
        (Family::D1, 2, 3, Some(1)),
        (Family::D1, 2, 2, Some(1)),
        (Family::D1Bar, 3, 2, Some(1)),
        (Family::D2, 5, 1, None),
        (Family::D2, 2, 2, None),
        (Family::D2, 3, 2, None),
    ];
    for (family, p, m, e) in cases {
        let f = Arc::new(Field::new(p, 2 * m).unwrap());
        let c = code::build_family(family, &f, e).unwrap();
        let report = dual::dual_min_distance(&c, 5).unwrap();
        let naive = naive_dual_distance(c.generator(), p, 5);
        // the search normalizes the first coefficient to 1
        let got = report
            .d_dual
            .exact()
            .map(|d| (d, report.witnesses.len() * (p as usize - 1)));
        assert_eq!(got, naive, "{family:?} ({p},{m},{e:?})");
    }
}

#[test]
fn odd_characteristic_d1_has_a_weight_two_dual_word() {
    // x and -x both lie in D1 and their trace columns are negatives
    let (f, naive) = pair(3, 4);
    let set = naive_d1(&naive, 1);
    let x = &set[0];
    let minus_x = naive.scale(2, x);
    assert!(set.contains(&minus_x));
    let gen = trace_generator(&naive, &set);
    let i = 0;
    let j = set.iter().position(|y| *y == minus_x).unwrap();
    for row in &gen {
        assert_eq!((row[i] + row[j]) % 3, 0);
    }
    let c = code::build_family(Family::D1, &f, Some(1)).unwrap();
    assert_eq!(dual::dual_min_distance(&c, 5).unwrap().d_dual.exact(), Some(2));
}

#[test]
fn weil_sums_agree_with_floating_point() {
    for (p, m) in [(3, 1), (3, 2), (5, 1), (2, 2)] {
        let (f, naive) = pair(p, 2 * m);
        let q = f.order();
        let units: Vec<_> = f.nonzero_elements().collect();
        let subfield: Vec<_> = units
            .iter()
            .copied()
            .filter(|&x| f.in_subfield(x, m).unwrap())
            .collect();
        for &lambda in &subfield {
            for beta in f.elements() {
                let exps = (0..q).map(|i| {
                    let x = naive.elem(u64::from(i));
                    let quad = naive.trace(&naive.mul(&f.coeffs(lambda), &naive.norm_to_half(&x)), m as usize, 1)[0];
                    quad + naive.abs_trace(&naive.mul(&f.coeffs(beta), &x))
                });
                let (re, im) = complex_sum(p, exps);
                let exact = charsum::weil_sum(&f, lambda, beta, QuadraticTrace::Half).unwrap();
                let (er, ei) = complex_sum(
                    p,
                    exact
                        .counts()
                        .iter()
                        .enumerate()
                        .flat_map(|(j, &a)| std::iter::repeat_n(j as u32, a as usize)),
                );
                assert!((re - er).abs() < 1e-6 && (im - ei).abs() < 1e-6);
                // closed form -p^m ζ^t
                let closed = charsum::weil_closed_form(&f, lambda, beta).unwrap();
                assert_eq!(exact, closed);
                let mag = (re * re + im * im).sqrt();
                assert!((mag - f64::from(p).powi(m as i32)).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn sum_a_agrees_with_floating_point() {
    for (p, m, e) in [(3, 2, 1), (2, 3, 1), (5, 2, 1)] {
        let (f, naive) = pair(p, 2 * m);
        let q = f.order();
        let lambdas: Vec<_> = f.nonzero_elements().filter(|&x| f.in_subfield(x, e).unwrap()).collect();
        let mut total = 0.0;
        for &lambda in &lambdas {
            let exps = (0..q).map(|i| {
                let x = naive.elem(u64::from(i));
                naive.trace(&naive.mul(&f.coeffs(lambda), &naive.norm_to_half(&x)), m as usize, 1)[0]
            });
            total += complex_sum(p, exps).0;
        }
        let r = charsum::sum_a(&f, e).unwrap();
        assert!((total - r.value.unwrap() as f64).abs() < 1e-6);
    }
}

#[test]
fn griesmer_by_linear_scan() {
    for q in [2u64, 3, 5] {
        for k in 1..6u64 {
            for n in k..60 {
                let naive = (1..=n)
                    .filter(|&d| (0..k).map(|i| d.div_ceil(q.pow(i as u32))).sum::<u64>() <= n)
                    .max()
                    .unwrap();
                assert_eq!(bounds::griesmer_max_d(n, k, q).unwrap(), naive);
            }
        }
    }
}
