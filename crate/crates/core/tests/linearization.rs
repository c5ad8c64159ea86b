mod common;

use common::*;
use nijenhuis::linearize::{
    counterexample_suite, formal_linearize, gen_counterexample, linearize_by_invariants, obstruction_is_sound,
    pushforward, vf_normal_form, LinearizeOutcome, Table5Row, VectorField,
};
use nijenhuis::nij::{is_nijenhuis, isotropy_algebra, torsion};
use nijenhuis::{JetMap, NormalForm, OperatorField, Poly, Vars};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bracket(u: &[Poly], v: &[Poly]) -> Vec<Poly> {
    let n = u.len();
    (0..n)
        .map(|k| {
            (0..n).fold(Poly::zero(u[0].vars()), |acc, s| acc + &u[s] * &v[k].d(s) - &v[s] * &u[k].d(s))
        })
        .collect()
}

fn apply(r: &OperatorField, u: &[Poly]) -> Vec<Poly> {
    let n = u.len();
    (0..n)
        .map(|k| (0..n).fold(Poly::zero(u[0].vars()), |acc, i| acc + r.entry(k, i) * &u[i]))
        .collect()
}

fn sub(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `R[R∂i, ∂j] + R[∂i, R∂j] − R²[∂i, ∂j] − [R∂i, R∂j]` on coordinate fields.
fn invariant_torsion(r: &OperatorField, i: usize, j: usize) -> Vec<Poly> {
    let n = r.dim();
    let vars = r.vars().clone();
    let unit = |i: usize| -> Vec<Poly> {
        (0..n).map(|k| if k == i { Poly::one(&vars) } else { Poly::zero(&vars) }).collect()
    };
    let (ei, ej) = (unit(i), unit(j));
    let (rei, rej) = (apply(r, &ei), apply(r, &ej));
    let a = apply(r, &bracket(&rei, &ej));
    let b = apply(r, &bracket(&ei, &rej));
    let c = bracket(&rei, &rej);
    let ab: Vec<Poly> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    sub(&c, &ab).into_iter().map(|p| -p).collect()
}

#[test]
fn torsion_agrees_with_bracket_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let r = rand_operator(&mut rng, 3);
        let t = torsion(&r);
        let oracle = invariant_torsion(&r, 0, 1);
        for k in 0..2 {
            assert_eq!(t.get(k, 0, 1), -&oracle[k]);
        }
    }
    let vars = Vars::indexed(3);
    for _ in 0..20 {
        let entries = (0..3)
            .map(|_| (0..3).map(|_| rand_poly(&mut rng, &vars, 0, 2, -2, 2, 0.3)).collect())
            .collect();
        let r = OperatorField::new(&vars, entries).unwrap();
        let t = torsion(&r);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let oracle = invariant_torsion(&r, i, j);
            for k in 0..3 {
                assert_eq!(t.get(k, i, j), -&oracle[k]);
            }
        }
    }
}

#[test]
fn isotropy_algebras_of_the_suite_are_left_symmetric() {
    for form in counterexample_suite() {
        let r = gen_counterexample(&form).unwrap();
        assert!(isotropy_algebra(&r, &origin()).unwrap().is_left_symmetric(), "{form}");
    }
}

#[test]
fn negative_ratio_witness_is_obstructed_at_degree_three() {
    let r = gen_counterexample(&NormalForm::b1(-1, 1)).unwrap();
    let out = formal_linearize(&r, 6).unwrap();
    let o = out.obstruction().expect("obstructed");
    assert_eq!(o.degree, 3);
    assert_eq!(o.monomial_text, "x^2*y");
    assert_eq!((o.component, o.column), (1, 2));
    assert!(obstruction_is_sound(&r, o).unwrap());
    assert!(formal_linearize(&r, 2).unwrap().is_linearized());
}

#[test]
fn other_negative_ratios_meet_their_resonance() {
    for (p, q) in [(2, 3), (1, 2), (3, 1)] {
        let r = gen_counterexample(&NormalForm::b1(-p, q)).unwrap();
        let o = formal_linearize(&r, (p + q + 1) as u32 + 1).unwrap();
        let o = o.obstruction().expect("obstructed").clone();
        assert_eq!(o.degree, (p + q + 1) as u32, "-{p}/{q}");
        assert_eq!(o.monomial, vec![p as u32 + 1, q as u32]);
    }
}

#[test]
fn resonant_witnesses_are_obstructed() {
    for (n, d, degree) in [(1, 2, 2), (1, 3, 3), (3, 1, 2), (4, 1, 3)] {
        let r = gen_counterexample(&NormalForm::b1(n, d)).unwrap();
        let out = formal_linearize(&r, 6).unwrap();
        let o = out.obstruction().unwrap_or_else(|| panic!("b1,{n}/{d}"));
        assert_eq!(o.degree, degree, "b1,{n}/{d}");
        assert!(obstruction_is_sound(&r, o).unwrap());
    }
}

#[test]
fn b3_witness_off_one_is_linearizable() {
    let form = NormalForm::b3(2, 1).unwrap();
    let r = gen_counterexample(&form).unwrap();
    assert!(is_nijenhuis(&r));
    let out = formal_linearize(&r, 6).unwrap();
    assert!(out.is_linearized());
    let explicit = JetMap::new(vec![p("x + 2*y^2"), p("y")], 6).unwrap();
    assert_eq!(pushforward(&r, &explicit).unwrap(), form.algebra().linear_operator_field());
    let one = gen_counterexample(&NormalForm::b3(1, 1).unwrap()).unwrap();
    assert!(!formal_linearize(&one, 6).unwrap().is_linearized());
}

#[test]
fn invariant_pipeline_matches_formal_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for label in ["c5+", "c5-", "b5+", "b5-"] {
        let form: NormalForm = label.parse().unwrap();
        let r1 = form.algebra().linear_operator_field();
        for trial in 0..6 {
            let phi = rand_jetmap(&mut rng, 3, 5, trial % 2 == 0);
            let r = pushforward(&r1, &phi).unwrap();
            let inv = linearize_by_invariants(&r, 5).unwrap_or_else(|e| panic!("{label} #{trial}: {e}"));
            let via_invariants = pushforward(&r, &inv.map).unwrap();
            assert!(is_nijenhuis(&via_invariants));
            assert_eq!(via_invariants.truncate(5), inv.reconstructed, "{label} #{trial}");
            let LinearizeOutcome::Linearized(lin) = formal_linearize(&r, 5).unwrap() else {
                panic!("{label} #{trial} obstructed");
            };
            let via_solver = pushforward(&r, &lin.map).unwrap();
            assert_eq!(via_solver, r.homogeneous_part(1));
            assert_eq!(via_invariants.homogeneous_part(1).degree(), Some(1));
            assert_eq!(via_invariants.truncate(5).sub(&via_invariants.homogeneous_part(1)).truncate(5), OperatorField::zeros(&Vars::xy()));
        }
    }
}

#[test]
fn resonance_rule_for_vector_fields() {
    let v = VectorField::from_strs(&Vars::xy(), &["x + x*y + y^2 + x^2", "2*y + x^2 + x*y"]).unwrap();
    let nf = vf_normal_form(&v, 5).unwrap();
    assert_eq!(nf.row, Table5Row::ResonantNode { r: 2, a: 1 });
    let f = &nf.field.components()[1];
    for (m, _) in f.terms() {
        let e = m.exps();
        assert!(e == [1, 0] || e == [0, 1] || e == [2, 0], "{f}");
    }
    assert!(nf.field.components()[0].homogeneous_part(2).is_zero());
    assert_eq!(v.pushforward(&nf.map).unwrap().truncate(5), nf.field);
    let saddle = VectorField::from_strs(&Vars::xy(), &["x + x^2*y + x*y", "-y + x*y^2"]).unwrap();
    let nf = vf_normal_form(&saddle, 4).unwrap();
    assert_eq!(nf.row, Table5Row::ResonantSaddle { p: 1, q: 1 });
    assert_eq!(nf.field.components()[0], p("x + x^2*y"));
    assert_eq!(nf.field.components()[1], p("-y + x*y^2"));
}
