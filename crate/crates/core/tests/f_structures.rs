use gvdual::fman::*;
use gvdual::kernel::{rat, Rational, TruncSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(samples: usize) -> CheckConfig {
    CheckConfig { samples, seed: 17 }
}

fn unit_series_in(n: usize, var: usize, cap: u32, c0: i64, c1: i64, c2: i64) -> TruncSeries {
    let mut e1 = vec![0; n];
    e1[var] = 1;
    let mut e2 = vec![0; n];
    e2[var] = 2;
    series(n, cap, &[(&vec![0; n], c0), (&e1, c1), (&e2, c2)])
}

#[test]
fn f_structures_are_coisotropic_and_control_is_not() {
    let structures = [semisimple(2, 6), semisimple(3, 6), i2_3(6), non_f_control(6)];
    for f in &structures {
        let check = check_f_structure(f, &cfg(20)).unwrap();
        let cois = check_coisotropy(f).unwrap();
        assert_eq!(check.passed(), cois.passed(), "{f:?}");
    }
    assert!(!check_f_structure(&non_f_control(6), &cfg(0)).unwrap().passed());
}

#[test]
fn defect_is_linear_in_first_slot() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for f in [i2_3(5), non_f_control(5)] {
        for _ in 0..10 {
            let fields: Vec<VField> = (0..4).map(|_| random_vfield(&mut rng, 2, 5)).collect();
            let g = random_series(&mut rng, 2, 5, 2, 3);
            let lhs = f_identity_defect(&f, &fields[0].scale_by(&g), &fields[1], &fields[2], &fields[3]).unwrap();
            let rhs = f_identity_defect(&f, &fields[0], &fields[1], &fields[2], &fields[3]).unwrap().scale_by(&g);
            assert!((&lhs - &rhs).is_zero());
        }
    }
}

#[test]
fn product_laws_on_random_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = i2_3(6);
    for _ in 0..10 {
        let x = random_vfield(&mut rng, 2, 6);
        let y = random_vfield(&mut rng, 2, 6);
        assert_eq!(vf_mul(&f, &x, &y).unwrap(), vf_mul(&f, &y, &x).unwrap());
        assert_eq!(vf_mul(&f, f.e(), &x).unwrap(), x);
    }
}

#[test]
fn diagonal_eventual_identities_both_directions() {
    let f = semisimple(2, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut seen = [false; 2];
    for _ in 0..16 {
        // each coefficient a series in u1, u2 with random support
        let own = rng.gen_bool(0.5);
        let coeffs: Vec<TruncSeries> = (0..2)
            .map(|i| {
                let c0 = rng.gen_range(-2i64..=2);
                let c1 = rng.gen_range(-2i64..=2);
                let var = if own || rng.gen_bool(0.3) { i } else { 1 - i };
                let mut s = unit_series_in(2, var, 6, c0, c1, 1);
                if !own && var == i {
                    s = &s + &unit_series_in(2, 1 - i, 6, 0, 1, 0);
                }
                s
            })
            .collect();
        let expected = coeffs.iter().enumerate().all(|(i, s)| s.depends_only_on(i) && s.is_unit());
        let eps = VField::new(coeffs).unwrap();
        assert_eq!(is_eventual_identity(&f, &eps, &cfg(5)).unwrap().passed(), expected, "{eps:?}");
        seen[usize::from(expected)] = true;
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn dubrovin_dual_is_unital_and_diagonal() {
    for f in [semisimple(2, 6), i2_3(6)] {
        assert_eq!(dubrovin_dual(&f, f.e(), &cfg(5)).unwrap(), f);
    }
    let f = semisimple(3, 4);
    let fs: Vec<TruncSeries> = (0..3).map(|i| unit_series_in(3, i, 4, 1 + i as i64, 1, 0)).collect();
    let eps = VField::new(fs.clone()).unwrap();
    let g = dubrovin_dual(&f, &eps, &cfg(5)).unwrap();
    for i in 0..3 {
        assert_eq!(g.c(i, i, i), &fs[i].inverse().unwrap());
    }
    assert!(check_f_structure(&g, &cfg(5)).unwrap().passed());
}

#[test]
fn non_invertible_field_is_rejected() {
    let f = semisimple(2, 4);
    let eps = VField::new(vec![series(2, 4, &[(&[1, 0], 1)]), series(2, 4, &[(&[0, 0], 1)])]).unwrap();
    assert!(!is_invertible(&f, &eps).unwrap());
    assert!(dubrovin_dual(&f, &eps, &cfg(2)).is_err());
}

#[test]
fn fiber_points() {
    let f = i2_3(6);
    let alg = |u2: i64| fiber_algebra(&f, &[Rational::from_integer(0.into()), rat(u2, 1)]).unwrap();
    assert!(!is_semisimple_fiber(&alg(0)));
    assert!(is_semisimple_fiber(&alg(1)));
    assert!(is_semisimple_fiber(&alg(-4)));
}
