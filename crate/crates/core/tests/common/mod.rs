#![allow(dead_code)]

use gpoincare::algebra::{AbelianGroup, Character, CycloField, Poly1};
use gpoincare::curves::{Branch, GroupAction2};
use num::integer::gcd;
use rand::Rng;

/// A faithful diagonal action of a product of at most two cyclic groups.
pub fn random_action<R: Rng>(rng: &mut R, cyclic_only: bool) -> GroupAction2 {
    loop {
        let orders: Vec<u64> = if cyclic_only || rng.gen_bool(0.7) {
            vec![rng.gen_range(3..=15)]
        } else {
            vec![rng.gen_range(2..=4), rng.gen_range(2..=6)]
        };
        let g = AbelianGroup::new(orders.clone()).unwrap();
        let cx: Vec<u64> = orders.iter().map(|&n| rng.gen_range(0..n)).collect();
        let cy: Vec<u64> = orders.iter().map(|&n| rng.gen_range(0..n)).collect();
        if orders.len() == 1 && gcd(gcd(cx[0], cy[0]), orders[0]) != 1 {
            continue;
        }
        let (cx, cy) = (Character::new(&g, cx).unwrap(), Character::new(&g, cy).unwrap());
        if let Ok(a) = GroupAction2::new(g, cx, cy, None) {
            return a;
        }
    }
}

fn monomial_sum(field: &std::sync::Arc<CycloField>, terms: &[(usize, i64)]) -> Poly1 {
    let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut c = vec![0i64; deg + 1];
    for &(k, v) in terms {
        c[k] += v;
    }
    Poly1::from_ints(field, &c)
}

fn nonzero<R: Rng>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) { v } else { -v }
}

/// A random branch: a smooth germ y = c₁ x^k + c₂ x^m, a monomial curve
/// (t^p, c t^q) with coprime p < q, or a Puiseux pair with a higher term.
pub fn random_branch<R: Rng>(rng: &mut R, field: &std::sync::Arc<CycloField>, name: &str) -> Branch {
    let swap = rng.gen_bool(0.5);
    let (x, y) = match rng.gen_range(0..3) {
        0 => {
            let k = rng.gen_range(1..=3);
            let m = k + rng.gen_range(1..=2);
            let mut terms = vec![(k, nonzero(rng))];
            if rng.gen_bool(0.5) {
                terms.push((m, nonzero(rng)));
            }
            if rng.gen_bool(0.2) {
                terms = vec![(k, 0)];
            }
            (monomial_sum(field, &[(1, 1)]), monomial_sum(field, &terms))
        }
        1 => {
            let (p, q) = [(2, 3), (2, 5), (3, 4), (3, 5)][rng.gen_range(0..4)];
            (monomial_sum(field, &[(p, 1)]), monomial_sum(field, &[(q, nonzero(rng))]))
        }
        _ => {
            let c = nonzero(rng);
            (monomial_sum(field, &[(2, 1)]), monomial_sum(field, &[(3, c), (4, nonzero(rng))]))
        }
    };
    let (x, y) = if swap { (y, x) } else { (x, y) };
    Branch::new(name, x, y).unwrap()
}

/// A pair of curvettes (t^p, c t^q + …) differing in the last coefficient.
pub fn random_curvette_pair<R: Rng>(rng: &mut R, field: &std::sync::Arc<CycloField>, k: usize) -> (Branch, Branch) {
    let swap = rng.gen_bool(0.5);
    let (c1, c2) = loop {
        let (a, b) = (nonzero(rng), nonzero(rng));
        if a != b {
            break (a, b);
        }
    };
    let (x, y1, y2) = match rng.gen_range(0..3) {
        0 => {
            let j = rng.gen_range(1..=4);
            (monomial_sum(field, &[(1, 1)]), monomial_sum(field, &[(j, c1)]), monomial_sum(field, &[(j, c2)]))
        }
        1 => {
            let j = rng.gen_range(1..=2);
            let m = j + rng.gen_range(1..=2);
            let a = if rng.gen_bool(0.3) { 0 } else { nonzero(rng) };
            (
                monomial_sum(field, &[(1, 1)]),
                monomial_sum(field, &[(j, a), (m, c1)]),
                monomial_sum(field, &[(j, a), (m, c2)]),
            )
        }
        _ => {
            let (p, q) = [(2, 3), (2, 5), (3, 4)][rng.gen_range(0..3)];
            (monomial_sum(field, &[(p, 1)]), monomial_sum(field, &[(q, c1)]), monomial_sum(field, &[(q, c2)]))
        }
    };
    let mk = |y: Poly1, s: &str| {
        let (a, b) = if swap { (y, x.clone()) } else { (x.clone(), y) };
        Branch::new(format!("D{k}{s}"), a, b).unwrap()
    };
    (mk(y1, "a"), mk(y2, "b"))
}
