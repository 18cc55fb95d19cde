use std::collections::BTreeMap;

use pierimaps::algebra::{Domain, Polynomial};
use pierimaps::resolution::*;
use pierimaps::tableaux::{dimension, pieri_expand};

fn ds(d: &[i64]) -> DegreeSequence {
    DegreeSequence::new(d.to_vec()).unwrap()
}

fn squash(s: &str) -> Vec<String> {
    s.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect()
}

const PRINTED_PRESENTATION: &str = "\
| 3a 0  b  0  c  0  0  0  0     0 0   0  0  0  0  |
| 0  3a 0  b  0  c  0  0  0     0 0   0  0  0  0  |
| 0  0  2a 0  0  0  2b 0  c     0 0   0  0  0  0  |
| 0  0  0  2a 0  0  0  2b 0     c 0   0  0  0  0  |
| 0  0  0  0  2a 0  0  0  b     0 2c  0  0  0  0  |
| 0  0  0  0  0  2a 0  0  0     b 0   2c 0  0  0  |
| 0  0  0  0  0  0  0  a  -1/2a 0 0   0  3b c  0  |
| 0  0  0  0  0  0  0  0  0     a -2a 0  0  2b 2c |";

#[test]
fn presentation_matches_printed_matrix() {
    let m = pure_free(&ds(&[0, 1, 3, 5]), 3, 0).unwrap();
    assert_eq!(squash(&m.to_m2()), squash(PRINTED_PRESENTATION));
}

#[test]
fn koszul_presentation_is_the_maximal_ideal() {
    let m = pure_free(&ds(&[0, 1, 2, 3]), 3, 0).unwrap();
    let vars: Vec<Polynomial> = (1..=3).map(|i| Polynomial::var(3, i, Domain::Rational)).collect();
    let row: Vec<Polynomial> = (0..3).map(|c| m.get(0, c).clone()).collect();
    let lead = row[0].terms().next().unwrap().1.clone();
    for (got, x) in row.iter().zip(&vars) {
        assert_eq!(got, &x.checked_scale(&lead).unwrap());
    }
}

// Theorem 3.1: M(d) is the sum of the S_ν in A ⊗ S_λ with ν ⊉ α(d,1).
fn character_dims(d: &DegreeSequence) -> BTreeMap<i64, usize> {
    let n = d.rank();
    let lambda = alpha(d, 0).unwrap();
    let avoid = alpha(d, 1).unwrap();
    let mut out = BTreeMap::new();
    for e in 0.. {
        let dim: usize = pieri_expand(e, &lambda, n)
            .iter()
            .filter(|nu| !nu.contains(&avoid))
            .map(|nu| dimension(nu, n))
            .sum();
        if dim == 0 {
            break;
        }
        out.insert(d.get(0) + e as i64, dim);
    }
    out
}

#[test]
fn cokernel_matches_character_description() {
    for d in degree_sequences(3, 6).into_iter().chain(degree_sequences(2, 5)) {
        let m = coker_module(&pure_free(&d, d.rank(), 0).unwrap(), None).unwrap();
        let got: BTreeMap<i64, usize> = m.hilbert_function().into_iter().collect();
        assert_eq!(got, character_dims(&d), "d = {d}");
    }
    let d = ds(&[0, 1, 3, 5]);
    assert_eq!(character_dims(&d).into_values().collect::<Vec<_>>(), vec![8, 9, 3]);
}

#[test]
fn hilbert_function_is_euler_characteristic() {
    for d in degree_sequences(3, 6) {
        let c = build_complex(&d).unwrap();
        let m = coker_module(c.map(1), None).unwrap();
        for e in d.get(0)..=m.top() + 1 {
            let chi: i64 = (0..=3).map(|i| (-1i64).pow(i as u32) * c.piece_dim(i, e) as i64).sum();
            assert_eq!(chi, m.dim(e) as i64, "d = {d}, e = {e}");
        }
    }
}

#[test]
fn printed_betti_table_in_characteristic_zero() {
    let d = ds(&[0, 1, 3, 5]);
    let t = pure_free_betti(&d, 0).unwrap();
    assert_eq!(t, BettiTable::pure(&d, &[8, 15, 10, 3]));
    assert_eq!(t.valid_through(), None);
}

#[test]
fn printed_betti_table_in_characteristic_two() {
    let t = pure_free_betti(&ds(&[0, 1, 3, 5]), 2).unwrap();
    let want = BettiTable::new([((0, 0), 8), ((1, 1), 15), ((2, 2), 9), ((3, 3), 3), ((2, 4), 1)]);
    assert_eq!(t.entries().collect::<Vec<_>>(), want.entries().collect::<Vec<_>>());
    assert!(!t.is_pure());
}

#[test]
fn complexes_are_exact_pure_and_proportional() {
    for d in degree_sequences(3, 6).into_iter().chain(degree_sequences(2, 5)) {
        let c = build_complex(&d).unwrap();
        assert_eq!(c.ranks(), predicted_ranks(&d).unwrap());
        let report = verify_exactness(&c, default_bound(&c).unwrap()).unwrap();
        assert!(report.passed(), "d = {d}: {:?}", report.failures().collect::<Vec<_>>());
        let t = pure_free_betti(&d, 0).unwrap();
        let ranks: Vec<usize> = (0..=d.rank()).map(|i| t.get(i, d.get(i))).collect();
        assert_eq!(ranks, c.ranks(), "d = {d}");
        assert!(herzog_kuhl_check(&t, &d).unwrap(), "d = {d}");
    }
}

#[test]
fn corrupted_differential_is_caught() {
    let c = build_complex(&ds(&[0, 1, 3, 5])).unwrap();
    let d2 = c.map(2);
    let (r, col) = (0..d2.num_rows())
        .flat_map(|r| (0..d2.num_cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !d2.get(r, c).is_zero())
        .unwrap();
    let broken = c
        .with_map(2, d2.with_entry(r, col, Polynomial::zero(3, Domain::Rational)).unwrap())
        .unwrap();
    let report = verify_exactness(&broken, 10).unwrap();
    assert!(!report.passed());
    assert!(report.failures().count() > 0 || !report.is_complex);
}

#[test]
fn exactness_report_json() {
    let c = build_complex(&ds(&[0, 1, 2, 3])).unwrap();
    let report = verify_exactness(&c, 4).unwrap();
    assert!(report.passed());
    let v = serde_json::to_value(&report.entries).unwrap();
    assert_eq!(
        v[0],
        serde_json::json!({"i": 1, "e": 1, "expected_rank_sum": 3, "actual": 3})
    );
}
