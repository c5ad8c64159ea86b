#![allow(dead_code)]

use nijenhuis::quad::rat;
use nijenhuis::{JetMap, Label, Lsa, Matrix, Monomial, NormalForm, OperatorField, Poly, Quad, Vars};
use rand::Rng;

pub fn xy() -> Vars {
    Vars::xy()
}

pub fn p(s: &str) -> Poly {
    Poly::parse(s, &xy()).unwrap()
}

/// Dense-ish random polynomial with integer coefficients in `lo..=hi`.
pub fn rand_poly(rng: &mut impl Rng, vars: &Vars, mindeg: u32, maxdeg: u32, lo: i64, hi: i64, density: f64) -> Poly {
    let mut terms = Vec::new();
    for d in mindeg..=maxdeg {
        for m in Monomial::all_of_degree(vars.len(), d) {
            if rng.gen_bool(density) {
                terms.push((m, Quad::from_int(rng.gen_range(lo..=hi))));
            }
        }
    }
    Poly::from_terms(vars, terms)
}

pub fn rand_operator(rng: &mut impl Rng, maxdeg: u32) -> OperatorField {
    let vars = xy();
    let entries = (0..2)
        .map(|_| (0..2).map(|_| rand_poly(rng, &vars, 0, maxdeg, -2, 2, 0.3)).collect())
        .collect();
    OperatorField::new(&vars, entries).unwrap()
}

pub fn rand_invertible(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix {
    loop {
        let rows: Vec<Vec<Quad>> = (0..n)
            .map(|_| (0..n).map(|_| Quad::from_int(rng.gen_range(-bound..=bound))).collect())
            .collect();
        let m = Matrix::from_rows(rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// `x ↦ C x + (terms of degree 2..=top)`, known to degree `trunc`.
pub fn rand_jetmap(rng: &mut impl Rng, top: u32, trunc: u32, linear_identity: bool) -> JetMap {
    let vars = xy();
    let c = if linear_identity { Matrix::identity(2) } else { rand_invertible(rng, 2, 2) };
    let lin = JetMap::linear(&vars, &c, trunc).unwrap();
    let comps = lin
        .components()
        .iter()
        .map(|l| l + &rand_poly(rng, &vars, 2, top, -2, 2, 0.4))
        .collect();
    JetMap::new(comps, trunc).unwrap()
}

/// Structure constants in `lo..=hi`, each nonzero with probability `density`.
pub fn rand_lsa_array(rng: &mut impl Rng, n: usize, density: f64) -> Lsa {
    let mut a = Lsa::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rng.gen_bool(density) {
                    a = a.with(i, j, k, Quad::from_int(rng.gen_range(-2..=2)));
                }
            }
        }
    }
    a
}

pub fn alpha_grid() -> Vec<(i64, i64)> {
    vec![(-2, 1), (-1, 1), (-1, 2), (1, 3), (1, 1), (2, 1), (5, 2)]
}

pub fn all_forms() -> Vec<NormalForm> {
    let mut out = Vec::new();
    for label in Label::ALL {
        if label.has_alpha() {
            for (n, d) in alpha_grid() {
                out.push(NormalForm::with_alpha(label, rat(n, d)).unwrap());
            }
        } else {
            out.push(NormalForm::plain(label));
        }
    }
    out
}

pub fn origin() -> Vec<Quad> {
    vec![Quad::zero(), Quad::zero()]
}
