use num_bigint::BigInt;
use num_rational::BigRational;
use pierimaps::algebra::{Domain, Polynomial};
use pierimaps::pieri::{is_gl_equivariant, olver_map, pieri_map, scalar_ratio, RemovalPlan};
use pierimaps::tableaux::Partition;

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

#[test]
fn single_box_maps_commute_with_gl() {
    for n in 2..=3 {
        for mu in [
            vec![1],
            vec![2],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![2, 1, 1],
            vec![2, 2, 1],
            vec![3, 2, 1],
        ] {
            let mu = p(&mu);
            if mu.length() > n {
                continue;
            }
            for k in 1..=mu.length() {
                if mu.can_remove_from(k) {
                    let m = olver_map(&mu, k, n).unwrap();
                    assert!(is_gl_equivariant(&m).unwrap(), "mu={mu} k={k} n={n}");
                }
            }
        }
    }
}

fn removal(order: Vec<usize>) -> pierimaps::algebra::PolyMatrix {
    pieri_map(&RemovalPlan::new(p(&[2, 1]), order, 3).unwrap()).unwrap()
}

#[test]
fn removal_order_changes_map_by_two() {
    let a = removal(vec![2, 1]);
    let b = removal(vec![1, 2]);
    assert_eq!((a.num_rows(), a.num_cols()), (3, 8));
    assert_eq!(scalar_ratio(&b, &a), Some(BigRational::from_integer(BigInt::from(2))));
    let half = Polynomial::parse("-1/2*x1*x2", 3, Domain::Rational).unwrap();
    let whole = Polynomial::parse("-1*x1*x2", 3, Domain::Rational).unwrap();
    assert_eq!(a.get(1, 2), &half);
    assert_eq!(b.get(1, 2), &whole);
}

#[test]
fn removal_order_rows_match_printed_session() {
    let a = removal(vec![2, 1]);
    let want = [
        "| ab  ac  1/2b2  1/2bc 1/2bc  1/2c2  0   0      |",
        "| -a2 0   -1/2ab 1/2ac -ac    0      bc  1/2c2  |",
        "| 0   -a2 0      -ab   1/2ab  -1/2ac -b2 -1/2bc |",
    ];
    let got: Vec<String> = a
        .to_m2()
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    let want: Vec<String> = want
        .iter()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    assert_eq!(got, want);
}
