use std::collections::BTreeSet;

use gvdual::kernel::{kron, rat, Matrix, Rational, Subspace};
use gvdual::operad::*;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn modules() -> Vec<S2Module> {
    vec![
        S2Module::trivial(),
        S2Module::sign(),
        S2Module::regular(),
        S2Module::new(Matrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap(),
        S2Module::new(Matrix::from_i64(&[&[0, -1], &[-1, 0]])).unwrap(),
        S2Module::new(Matrix::identity(3)).unwrap(),
    ]
}

fn stock() -> Vec<QuadOperad> {
    vec![op_lie(), op_comm(), op_assoc()]
}

fn random_operads(seed: u64, count: usize) -> Vec<QuadOperad> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_stable_operad(&mut rng, 2)).collect()
}

#[test]
fn action_is_a_group_action() {
    for e in modules() {
        for p in &S3 {
            for q in &S3 {
                assert_eq!(s3_action(&e, &compose(p, q)), &s3_action(&e, p) * &s3_action(&e, q));
            }
        }
    }
}

#[test]
fn free_arity_three_dimension() {
    for d in 1..=3 {
        let e = S2Module::new(Matrix::identity(d)).unwrap();
        assert_eq!(e.arity3_dim(), 3 * d * d);
        assert_eq!(s3_action(&e, &S3[0]).rows(), 3 * d * d);
    }
}

/// Orthogonal complement for the pairing `diag(s_t)`, computed as the
/// null space of `rel · diag(s)`.
fn signed_complement(rel: &Subspace, d: usize, s: [i64; 3]) -> Subspace {
    let dim = 3 * d * d;
    let diag = Matrix::from_fn(dim, dim, |i, j| if i == j { rat(s[i / (d * d)], 1) } else { Rational::zero() });
    Subspace::row_space(&(rel.basis() * &diag).nullspace())
}

#[test]
fn pairing_signs_are_forced() {
    let mut solutions = BTreeSet::new();
    for mask in 0..8 {
        let s = [0, 1, 2].map(|t| if mask >> t & 1 == 1 { -1 } else { 1 });
        let twisted_equivariant = modules().iter().all(|e| {
            let dim = e.arity3_dim();
            let d = e.d();
            let diag = Matrix::from_fn(dim, dim, |i, j| if i == j { rat(s[i / (d * d)], 1) } else { Rational::zero() });
            S3_GENERATORS.iter().all(|g| {
                let lhs = &(&s3_action(e, g).transpose() * &diag) * &s3_action(&e.twisted_dual(), g);
                lhs == diag.scale(&rat(perm_sign(g), 1))
            })
        });
        let lie = op_lie();
        let dual_is_comm = signed_complement(lie.rel(), 1, s) == *op_comm().rel();
        if twisted_equivariant && dual_is_comm {
            solutions.insert(s);
        }
    }
    assert_eq!(solutions, BTreeSet::from([[1, -1, 1], [-1, 1, -1]]));
    assert!(solutions.contains(&PAIRING_SIGNS));
}

#[test]
fn dual_agrees_with_signed_complement_oracle() {
    for p in stock().into_iter().chain(random_operads(1, 20)) {
        let d = op_dual(&p);
        assert_eq!(*d.rel(), signed_complement(p.rel(), p.d(), PAIRING_SIGNS));
        assert!(d.is_valid());
        assert_eq!(op_dual(&d), p);
    }
}

#[test]
fn lie_comm_duality() {
    assert_eq!(op_dual(&op_lie()), op_comm());
    assert_eq!(op_dual(&op_comm()), op_lie());
}

#[test]
fn assoc_is_self_dual_up_to_identification() {
    let a = op_assoc();
    let da = op_dual(&a);
    let j = assoc_dual_identification();
    assert_eq!(&j * da.e().sigma(), a.e().sigma() * &j);
    assert_eq!(op_transport(&da, &j).unwrap(), a);
    // the plain swap of μ and σμ is not equivariant for the twisted action
    let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
    assert_ne!(&swap * da.e().sigma(), a.e().sigma() * &swap);
}

#[test]
fn stock_relations_are_stable() {
    for p in stock() {
        assert!(is_s3_stable(p.e(), p.rel()));
    }
}

#[test]
fn units() {
    for q in stock().into_iter().chain(random_operads(2, 20)) {
        assert_eq!(op_black(&op_lie(), &q), q);
        assert_eq!(op_black(&q, &op_lie()), q);
        assert_eq!(op_white(&op_comm(), &q), q);
        assert_eq!(op_white(&q, &op_comm()), q);
    }
}

#[test]
fn exchange_law() {
    let mut objs = stock();
    objs.extend(random_operads(3, 8));
    for p in &objs {
        for q in &objs {
            if p.d() * q.d() > 4 {
                continue;
            }
            assert_eq!(op_dual(&op_black(p, q)), op_white(&op_dual(p), &op_dual(q)));
            assert_eq!(op_dual(&op_white(p, q)), op_black(&op_dual(p), &op_dual(q)));
        }
    }
}

#[test]
fn products_are_stable() {
    let objs = random_operads(4, 12);
    for pair in objs.chunks(2) {
        assert!(op_black(&pair[0], &pair[1]).is_valid());
        assert!(op_white(&pair[0], &pair[1]).is_valid());
    }
}

#[test]
fn phi_is_equivariant_and_psi_splits_it() {
    for e1 in modules().into_iter().take(3) {
        for e2 in modules().into_iter().take(3) {
            let phi = phi3(&e1, &e2);
            let psi = psi3(&e1, &e2);
            let e12 = e1.tensor(&e2);
            for g in &S3_GENERATORS {
                let lhs = &phi * &s3_action(&e12, g);
                let rhs = &kron(&s3_action(&e1, g), &s3_action(&e2, g)) * &phi;
                assert_eq!(lhs, rhs);
            }
            assert_eq!(&psi * &phi, Matrix::identity(e12.arity3_dim()));
            // phi∘psi kills every pair of basis trees with different lone leaves
            let proj = &phi * &psi;
            let (f1, f2) = (e1.arity3_dim(), e2.arity3_dim());
            for x in 0..f1 {
                for y in 0..f2 {
                    let col = x * f2 + y;
                    let matched = x / (e1.d() * e1.d()) == y / (e2.d() * e2.d());
                    let zero_col = (0..proj.rows()).all(|r| proj.get(r, col).is_zero());
                    assert_eq!(zero_col, !matched);
                }
            }
        }
    }
}

#[test]
fn white_dimension_matches_intersection_with_image() {
    let (p, q) = (op_lie(), op_lie());
    let target = p
        .rel()
        .tensor(&Subspace::full(3))
        .sum(&Subspace::full(3).tensor(q.rel()))
        .unwrap();
    let phi = phi3(p.e(), q.e());
    let image = Subspace::row_space(&phi.transpose());
    let w = op_white(&p, &q);
    assert_eq!(w.rel().dim(), image.intersect(&target).unwrap().dim());
    assert_eq!(w.rel().dim(), 0);
}

#[test]
fn associativity() {
    let objs = stock();
    for p in &objs {
        for q in &objs {
            for r in &objs {
                if p.d() * q.d() * r.d() > 4 {
                    continue;
                }
                assert_eq!(op_black(&op_black(p, q), r), op_black(p, &op_black(q, r)));
                assert_eq!(op_white(&op_white(p, q), r), op_white(p, &op_white(q, r)));
            }
        }
    }
}

#[test]
fn flip_symmetry() {
    let mut objs = stock();
    objs.extend(random_operads(5, 4));
    for p in &objs {
        for q in &objs {
            if p.d() * q.d() > 4 {
                continue;
            }
            assert_eq!(op_flip(&op_black(p, q), p.d(), q.d()).unwrap(), op_black(q, p));
            assert_eq!(op_flip(&op_white(p, q), p.d(), q.d()).unwrap(), op_white(q, p));
        }
    }
}

#[test]
fn morphisms() {
    let lie = op_lie();
    assert!(op_morphism_check(&Matrix::identity(1), &lie, &lie).unwrap());
    assert!(op_morphism_check(&Matrix::from_i64(&[&[-1]]), &lie, &lie).unwrap());
    let a = op_assoc();
    // μ ↦ μ, σμ ↦ σμ composed with the S2-equivariant projection to Comm
    let to_comm = Matrix::from_i64(&[&[1, 1]]);
    assert!(op_morphism_check(&to_comm, &a, &op_comm()).unwrap());
    // the commutator map Lie → Assoc
    let commutator = Matrix::from_i64(&[&[1], &[-1]]);
    assert!(op_morphism_check(&commutator, &lie, &a).unwrap());
    assert!(op_morphism_check(&Matrix::from_i64(&[&[1, 0]]), &a, &op_comm()).is_err());
}

#[test]
fn adjunction_components_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut objs = stock();
    objs.extend(random_operads(7, 12));
    let mut agree = 0;
    let mut outcomes = BTreeSet::new();
    for round in 0..600 {
        let p = &objs[round % objs.len()];
        let q = &objs[(round / objs.len() + round) % objs.len()];
        if p.d() * q.d() > 4 {
            continue;
        }
        let r = &objs[(round * 7 + 3) % objs.len()];
        let src = op_black(p, q);
        let g = if round % 5 == 0 {
            Matrix::zeros(r.d(), src.d())
        } else {
            random_equivariant(&mut rng, src.e(), r.e())
        };
        let (lhs, rhs) = op_adjunction_witness(p, q, r, &g).unwrap();
        assert_eq!(lhs, rhs, "p={p:?} q={q:?} r={r:?} g={g:?}");
        outcomes.insert(lhs);
        agree += 1;
    }
    assert!(agree >= 500);
    assert_eq!(outcomes, BTreeSet::from([false, true]));
}

#[test]
fn comparison_inclusion_fails_for_lie_lie() {
    let lie = op_lie();
    let black = op_black(&lie, &lie);
    let white = op_white(&lie, &lie);
    assert_eq!(black, lie);
    assert!(white.rel().is_zero());
    assert!(!black.rel().is_subspace_of(white.rel()));
    // reading the black product without the sign twist does not help
    assert!(!black_rel_untwisted(&lie, &lie).is_subspace_of(white.rel()));
}
