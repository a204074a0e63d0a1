use gpoincare::algebra::{CycloField, LocalChar};
use gpoincare::blowup::Mode;
use gpoincare::curves::{Branch, GroupAction2};
use gpoincare::grring::{AcampoForm, GRClass, GrRing};
use gpoincare::poincare::*;
use gpoincare::resgraph::{compare_topology, TopologyVerdict};

fn branches(act: &GroupAction2, spec: &[(&[i64], &[i64])]) -> Vec<Branch> {
    spec.iter()
        .enumerate()
        .map(|(k, (x, y))| Branch::from_ints(&format!("C{}", k + 1), act.field(), x, y).unwrap())
        .collect()
}

fn lines_and_parabola(act: &GroupAction2, primed: bool) -> ValuationSet {
    let spec: [(&[i64], &[i64]); 3] = if primed {
        [(&[], &[0, 1]), (&[0, 1], &[]), (&[0, 0, 1], &[0, 1])]
    } else {
        [(&[0, 1], &[]), (&[], &[0, 1]), (&[0, 1], &[0, 0, 1])]
    };
    ValuationSet::new(act.clone(), Mode::Curves, branches(act, &spec)).unwrap()
}

fn single_free_factor(n: u64, a: u64, b: u64) {
    let act = GroupAction2::cyclic(n, a, b).unwrap();
    for primed in [false, true] {
        let g = lines_and_parabola(&act, primed).resolve().unwrap();
        let (form, _) = equivariant_poincare(&g, 10).unwrap();
        let mut expected = AcampoForm::new();
        expected.push(GRClass::free(act.group(), vec![2, 1, 2]), 1);
        assert_eq!(form, expected);
        let (t, _) = form.factors().next().unwrap();
        assert_eq!(t.size(), n as usize);
        assert!(t.alpha().is_trivial());
    }
}

#[test]
fn z15_lines_and_parabola() {
    single_free_factor(15, 3, 5);
}

#[test]
fn z7_lines_and_parabola() {
    single_free_factor(7, 1, 3);
}

#[test]
fn equal_series_but_different_topology() {
    let act = GroupAction2::cyclic(15, 3, 5).unwrap();
    let a = lines_and_parabola(&act, false).resolve().unwrap();
    let b = lines_and_parabola(&act, true).resolve().unwrap();
    let (fa, _) = equivariant_poincare(&a, 10).unwrap();
    let (fb, _) = equivariant_poincare(&b, 10).unwrap();
    assert_eq!(compare_series(&fa, &fb), SeriesVerdict::Equal);
    assert!(matches!(compare_topology(&a, &b).unwrap(), TopologyVerdict::NotEquivalent { .. }));
    assert!(matches!(compare_topology(&a, &a).unwrap(), TopologyVerdict::Equivalent { .. }));
}

fn divisor(primed: bool) -> ValuationSet {
    let act = GroupAction2::cyclic(15, 3, 5).unwrap();
    let spec: [(&[i64], &[i64]); 2] =
        if primed { [(&[0, 0, 1], &[0, 1]), (&[0, 0, -1], &[0, 1])] } else { [(&[0, 1], &[0, 0, 1]), (&[0, 1], &[0, 0, -1])] };
    ValuationSet::new(act.clone(), Mode::Divisorial, branches(&act, &spec)).unwrap()
}

#[test]
fn divisorial_pair_differs_in_alpha() {
    let act = GroupAction2::cyclic(15, 3, 5).unwrap();
    let g = act.group();
    let char_values = |k: u64| LocalChar::from_values(g.elements().map(|x| (k * x as u64) % 15).collect());
    let point = |w: u64, k: u64| GRClass::point(g, vec![w], char_values(k)).unwrap();
    let (fv, _) = equivariant_poincare(&divisor(false).resolve().unwrap(), 6).unwrap();
    let (fw, _) = equivariant_poincare(&divisor(true).resolve().unwrap(), 6).unwrap();
    let mut ev = AcampoForm::new();
    ev.push(point(1, 3), -1);
    ev.push(point(2, 5), -1);
    let mut ew = AcampoForm::new();
    ew.push(point(1, 5), -1);
    ew.push(point(2, 3), -1);
    assert_eq!(fv, ev);
    assert_eq!(fw, ew);
    match compare_series(&fv, &fw) {
        SeriesVerdict::Different { class, .. } => assert_eq!(class.w()[0], vec![1]),
        SeriesVerdict::Equal => panic!("series must differ"),
    }
}

fn semigroup_series(gens: &[u64], bound: u64) -> Vec<i64> {
    let mut member = vec![false; bound as usize + 1];
    member[0] = true;
    for k in 1..=bound as usize {
        member[k] = gens.iter().any(|&g| k >= g as usize && member[k - g as usize]);
    }
    member.into_iter().map(i64::from).collect()
}

#[test]
fn plain_series_match_jets_and_semigroups() {
    let q = CycloField::new(1);
    let b = |x: &[i64], y: &[i64]| Branch::from_ints("B", &q, x, y).unwrap();
    let configs: Vec<(Vec<Branch>, Option<Vec<u64>>)> = vec![
        (vec![b(&[0, 0, 1], &[0, 0, 0, 1])], Some(vec![2, 3])),
        (vec![b(&[0, 0, 0, 1], &[0, 0, 0, 0, 1])], Some(vec![3, 4])),
        (vec![b(&[0, 1], &[0, 0, 1])], Some(vec![1])),
        (vec![b(&[0, 1], &[]), b(&[], &[0, 1])], None),
        (vec![b(&[0, 1], &[0, 0, 1]), b(&[0, 1], &[0, 0, -1])], None),
        (vec![b(&[0, 0, 1], &[0, 0, 0, 1]), b(&[0, 1], &[])], None),
    ];
    for (bs, gens) in configs {
        let r = bs.len();
        let bound = if r == 1 { 12 } else { 8 };
        let vs = ValuationSet::new(GroupAction2::trivial(), Mode::Curves, bs.clone()).unwrap();
        let (_, plain) = plain_poincare(&vs.resolve().unwrap(), bound).unwrap();
        assert_eq!(jets_oracle(&bs, bound).unwrap(), plain);
        if let Some(gens) = gens {
            let coeffs: Vec<i64> = (0..=bound).map(|k| plain.coeff(&[k])).collect();
            assert_eq!(coeffs, semigroup_series(&gens, bound));
        }
    }
}

#[test]
fn shift_extension_reduces_to_plain_series() {
    for (n, a, b) in [(15, 3, 5), (7, 1, 3), (4, 1, 1)] {
        let act = GroupAction2::cyclic(n, a, b).unwrap();
        let g = lines_and_parabola(&act, false).resolve().unwrap();
        let (form, _) = equivariant_poincare(&g, 6).unwrap();
        let ext = extend_to_shifts(&g, &form).unwrap();
        let ring = GrRing::new(act.group().clone(), 3 * n as usize, 6);
        assert_eq!(ring.reduce_acampo(&ext), plain_poincare_shifted(&g, 6).unwrap().0);
    }
    let act = GroupAction2::cyclic(15, 3, 5).unwrap();
    let g = divisor(false).resolve().unwrap();
    let (form, _) = equivariant_poincare(&g, 6).unwrap();
    let ring = GrRing::new(act.group().clone(), 15, 6);
    assert_eq!(ring.reduce_acampo(&extend_to_shifts(&g, &form).unwrap()), plain_poincare_shifted(&g, 6).unwrap().0);
}

#[test]
fn trivial_group_forget_is_plain() {
    let q = CycloField::new(1);
    let bs = vec![Branch::from_ints("K", &q, &[0, 0, 1], &[0, 0, 0, 1]).unwrap()];
    let g = ValuationSet::new(GroupAction2::trivial(), Mode::Curves, bs).unwrap().resolve().unwrap();
    let (_, series) = equivariant_poincare(&g, 12).unwrap();
    let ring = GrRing::new(g.res.action.group().clone(), 1, 12);
    assert_eq!(ring.forget(&series), plain_poincare(&g, 12).unwrap().1);
}

#[test]
fn invariant_under_equivariant_coordinate_changes() {
    let act = GroupAction2::cyclic(6, 1, 2).unwrap();
    let f = act.field().clone();
    let base = vec![
        Branch::from_ints("A", &f, &[0, 0, 1], &[0, 0, 0, 1]).unwrap(),
        Branch::from_ints("B", &f, &[0, 1], &[0, 0, 0, 1]).unwrap(),
    ];
    // (x, y) ↦ (2x, 3y + x²) commutes with the action since χy = 2χx.
    let change = |b: &Branch| {
        let x = b.x().scale(&gpoincare::algebra::CycloNum::from_int(&f, 2));
        let y = b.y().scale(&gpoincare::algebra::CycloNum::from_int(&f, 3)).add(&b.x().mul(b.x()));
        Branch::new(b.name(), x, y).unwrap()
    };
    let moved: Vec<Branch> = base.iter().map(change).collect();
    let p = |bs: Vec<Branch>| {
        let g = ValuationSet::new(act.clone(), Mode::Curves, bs).unwrap().resolve().unwrap();
        equivariant_poincare(&g, 6).unwrap().0
    };
    assert_eq!(p(base.clone()), p(moved));

    // Swapping the coordinates together with the characters.
    let swapped_act = GroupAction2::cyclic(6, 2, 1).unwrap();
    let swapped: Vec<Branch> = base.iter().map(|b| Branch::new(b.name(), b.y().clone(), b.x().clone()).unwrap()).collect();
    let g = ValuationSet::new(swapped_act, Mode::Curves, swapped).unwrap().resolve().unwrap();
    assert_eq!(p(base), equivariant_poincare(&g, 6).unwrap().0);
}

#[test]
fn inference_examples() {
    let g = divisor(false).resolve().unwrap();
    let (form, _) = equivariant_poincare(&g, 6).unwrap();
    let inf = infer_representation(&form, &g).unwrap();
    assert_eq!(inf.chi_x.unwrap().residues(), &[3]);
    assert_eq!(inf.chi_y.unwrap().residues(), &[5]);
    assert!(!inf.ambiguous);
}

#[test]
fn hypotheses_of_determination() {
    let act = GroupAction2::cyclic(15, 3, 5).unwrap();
    let vs = lines_and_parabola(&act, false);
    let reasons = check_determination_hypotheses(&vs.branches, &act).unwrap();
    assert!(reasons.iter().any(|r| r.contains("smooth invariant branch")));
}
