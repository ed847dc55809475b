use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::vfield::{random_series, vf_bracket, VField};
use crate::error::{Error, Result};
use crate::kernel::{Poly, Rational, TruncSeries};

/// Default truncation degree for structure functions.
pub const DEFAULT_CAP: u32 = 6;

/// A commutative multiplication `∂_i • ∂_j = Σ_k c_ij^k ∂_k` with identity `e`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FStructure {
    n: usize,
    c: Vec<TruncSeries>,
    e: VField,
}

impl FStructure {
    /// `c` is indexed by `(i*n + j)*n + k` and must be symmetric in `(i, j)`.
    pub fn new(n: usize, c: Vec<TruncSeries>, e: VField) -> Result<Self> {
        if c.len() != n * n * n {
            return Err(Error::ShapeMismatch(format!("expected {} structure functions, got {}", n * n * n, c.len())));
        }
        if e.n() != n || c.iter().any(|s| s.nvars() != n) {
            return Err(Error::ShapeMismatch(format!("data not on {n} coordinates")));
        }
        for i in 0..n {
            for j in 0..i {
                for k in 0..n {
                    if c[(i * n + j) * n + k] != c[(j * n + i) * n + k] {
                        return Err(Error::InvalidPresentation(format!(
                            "c[{i},{j},{k}] differs from c[{j},{i},{k}]"
                        )));
                    }
                }
            }
        }
        Ok(FStructure { n, c, e })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &TruncSeries {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn structure_functions(&self) -> &[TruncSeries] {
        &self.c
    }

    pub fn e(&self) -> &VField {
        &self.e
    }

    pub fn cap(&self) -> u32 {
        self.c.iter().map(TruncSeries::cap).chain([self.e.cap()]).min().unwrap_or(0)
    }

    pub fn coordinate(&self, i: usize) -> VField {
        VField::coordinate(self.n, i, self.cap())
    }

    /// `(X•Y)^k = Σ X^i Y^j c_ij^k`.
    pub fn mul(&self, x: &VField, y: &VField) -> Result<VField> {
        vf_mul(self, x, y)
    }
}

fn constant_series(n: usize, c: i64, cap: u32) -> TruncSeries {
    TruncSeries::constant(n, Rational::from_integer(c.into()), cap)
}

/// `∂_i • ∂_j = δ_ij ∂_i`, identity `Σ ∂_i`.
pub fn semisimple(n: usize, cap: u32) -> FStructure {
    let mut c = vec![TruncSeries::zero(n, cap); n * n * n];
    for i in 0..n {
        c[(i * n + i) * n + i] = constant_series(n, 1, cap);
    }
    let e = VField::new(vec![constant_series(n, 1, cap); n]).expect("shape");
    FStructure::new(n, c, e).expect("symmetric")
}

/// Two coordinates, `e = ∂_1`, `∂_2 • ∂_2 = g ∂_1`.
fn two_dim_with_square(g: TruncSeries, cap: u32) -> FStructure {
    let n = 2;
    let one = constant_series(n, 1, cap);
    let mut c = vec![TruncSeries::zero(n, cap); 8];
    c[0] = one.clone(); // ∂1∂1 → ∂1
    c[3] = one.clone(); // ∂1∂2 → ∂2
    c[5] = one; // ∂2∂1 → ∂2
    c[6] = g; // ∂2∂2 → ∂1
    FStructure::new(n, c, VField::coordinate(n, 0, cap)).expect("symmetric")
}

/// The `I2(3)` structure: `∂_2 • ∂_2 = u_2 ∂_1`.
pub fn i2_3(cap: u32) -> FStructure {
    two_dim_with_square(TruncSeries::var(2, 1, cap), cap)
}

/// `∂_2 • ∂_2 = u_1 ∂_1`: commutative and associative with identity,
/// but the F-identity fails.
pub fn non_f_control(cap: u32) -> FStructure {
    two_dim_with_square(TruncSeries::var(2, 0, cap), cap)
}

pub fn vf_mul(f: &FStructure, x: &VField, y: &VField) -> Result<VField> {
    x.check_same_n(y)?;
    if x.n() != f.n {
        return Err(Error::ShapeMismatch(format!("field on {} coordinates, structure on {}", x.n(), f.n)));
    }
    let n = f.n;
    let cap = f.cap().min(x.cap()).min(y.cap());
    let mut out = vec![TruncSeries::zero(n, cap); n];
    for i in 0..n {
        if x.coeff(i).is_zero() {
            continue;
        }
        for j in 0..n {
            if y.coeff(j).is_zero() {
                continue;
            }
            let xy = x.coeff(i) * y.coeff(j);
            for (k, slot) in out.iter_mut().enumerate() {
                let c = f.c(i, j, k);
                if !c.is_zero() {
                    *slot = &*slot + &(&xy * c);
                }
            }
        }
    }
    VField::new(out)
}

/// `P_a(b,c) = [a, b•c] − [a,b]•c − b•[a,c]`.
pub fn poisson_tensor(f: &FStructure, a: &VField, b: &VField, c: &VField) -> Result<VField> {
    let bc = vf_mul(f, b, c)?;
    let t1 = vf_bracket(a, &bc)?;
    let t2 = vf_mul(f, &vf_bracket(a, b)?, c)?;
    let t3 = vf_mul(f, b, &vf_bracket(a, c)?)?;
    Ok(&(&t1 - &t2) - &t3)
}

/// The nine-term expansion of `P_{X•Y}(Z,W) − X•P_Y(Z,W) − Y•P_X(Z,W)`.
pub fn f_identity_defect(f: &FStructure, x: &VField, y: &VField, z: &VField, w: &VField) -> Result<VField> {
    let m = |a: &VField, b: &VField| vf_mul(f, a, b);
    let br = vf_bracket;
    let xy = m(x, y)?;
    let zw = m(z, w)?;
    let terms = [
        (1, br(&xy, &zw)?),
        (-1, m(&br(&xy, z)?, w)?),
        (-1, m(z, &br(&xy, w)?)?),
        (-1, m(x, &br(y, &zw)?)?),
        (1, m(&m(x, &br(y, z)?)?, w)?),
        (1, m(&m(x, z)?, &br(y, w)?)?),
        (-1, m(y, &br(x, &zw)?)?),
        (1, m(&m(y, &br(x, z)?)?, w)?),
        (1, m(&m(y, z)?, &br(x, w)?)?),
    ];
    let mut acc = VField::zero(f.n, f.cap());
    for (sign, t) in &terms {
        acc = if *sign > 0 { &acc + t } else { &acc - t };
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            samples: 100,
            seed: crate::DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FCheckReport {
    pub commutative: bool,
    pub associative: bool,
    pub identity: bool,
    pub coordinate_quadruples: usize,
    pub random_quadruples: usize,
    pub defect_zero: bool,
    pub failures: Vec<String>,
}

impl FCheckReport {
    pub fn passed(&self) -> bool {
        self.commutative && self.associative && self.identity && self.defect_zero
    }
}

fn quadruples(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..n.pow(4)).map(move |q| [q / (n * n * n), (q / (n * n)) % n, (q / n) % n, q % n])
}

/// Commutativity, associativity and identity on coordinate fields, and a
/// vanishing F-identity defect on all coordinate quadruples and on
/// `samples` quadruples `g_r · ∂_{i_r}` with random polynomial `g_r`.
pub fn check_f_structure(f: &FStructure, cfg: &CheckConfig) -> Result<FCheckReport> {
    let n = f.n;
    let d: Vec<VField> = (0..n).map(|i| f.coordinate(i)).collect();
    let mut failures = Vec::new();

    let mut commutative = true;
    let mut identity = true;
    for i in 0..n {
        if vf_mul(f, &f.e, &d[i])? != d[i].with_cap(f.cap()) {
            identity = false;
            failures.push(format!("e•∂{} ≠ ∂{}", i + 1, i + 1));
        }
        for j in 0..n {
            if vf_mul(f, &d[i], &d[j])? != vf_mul(f, &d[j], &d[i])? {
                commutative = false;
                failures.push(format!("∂{}•∂{} ≠ ∂{}•∂{}", i + 1, j + 1, j + 1, i + 1));
            }
        }
    }

    let mut associative = true;
    for i in 0..n {
        for j in 0..n {
            let ij = vf_mul(f, &d[i], &d[j])?;
            for k in 0..n {
                let jk = vf_mul(f, &d[j], &d[k])?;
                if !(&vf_mul(f, &ij, &d[k])? - &vf_mul(f, &d[i], &jk)?).is_zero() {
                    associative = false;
                    failures.push(format!("(∂{}•∂{})•∂{} ≠ ∂{}•(∂{}•∂{})", i + 1, j + 1, k + 1, i + 1, j + 1, k + 1));
                }
            }
        }
    }

    let mut defect_zero = true;
    let mut coordinate_quadruples = 0;
    for [a, b, c, dd] in quadruples(n) {
        coordinate_quadruples += 1;
        if !f_identity_defect(f, &d[a], &d[b], &d[c], &d[dd])?.is_zero() {
            defect_zero = false;
            failures.push(format!("F-identity defect at (∂{}, ∂{}, ∂{}, ∂{})", a + 1, b + 1, c + 1, dd + 1));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cap = f.cap();
    for s in 0..cfg.samples {
        let fields: Vec<VField> = (0..4)
            .map(|_| {
                let i = rng.gen_range(0..n);
                d[i].scale_by(&random_series(&mut rng, n, cap, 2, 3))
            })
            .collect();
        if !f_identity_defect(f, &fields[0], &fields[1], &fields[2], &fields[3])?.is_zero() {
            defect_zero = false;
            failures.push(format!("F-identity defect on random quadruple #{s}"));
        }
    }

    Ok(FCheckReport {
        commutative,
        associative,
        identity,
        coordinate_quadruples,
        random_quadruples: cfg.samples,
        defect_zero,
        failures,
    })
}

/// Wraps a single series `p` in `n` variables at `cap`.
pub fn series(n: usize, cap: u32, terms: &[(&[u32], i64)]) -> TruncSeries {
    TruncSeries::new(
        Poly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), Rational::from_integer((*c).into())))),
        cap,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> CheckConfig {
        CheckConfig { samples: 10, seed: 5 }
    }

    #[test]
    fn semisimple_products() {
        let f = semisimple(2, 6);
        let (d1, d2) = (f.coordinate(0), f.coordinate(1));
        assert!(vf_mul(&f, &d1, &d2).unwrap().is_zero());
        assert_eq!(vf_mul(&f, &d1, &d1).unwrap(), d1);
    }

    #[test]
    fn asymmetric_structure_rejected() {
        let mut c = semisimple(2, 3).structure_functions().to_vec();
        // c_01^0 = 1 while c_10^0 = 0
        c[2] = series(2, 3, &[(&[0, 0], 1)]);
        assert!(FStructure::new(2, c, VField::coordinate(2, 0, 3)).is_err());
    }

    #[test]
    fn poisson_of_flat_identity_vanishes() {
        let f = semisimple(2, 6);
        let x = f.coordinate(0).scale_by(&series(2, 6, &[(&[1, 1], 2), (&[0, 0], 1)]));
        let y = f.coordinate(1).scale_by(&series(2, 6, &[(&[0, 2], 1)]));
        assert!(poisson_tensor(&f, f.e(), &x, &y).unwrap().is_zero());
    }

    #[test]
    fn poisson_symmetric_and_linear() {
        let f = i2_3(6);
        let a = f.coordinate(1).scale_by(&series(2, 6, &[(&[1, 0], 1)]));
        let b = &f.coordinate(0) + &f.coordinate(1).scale_by(&series(2, 6, &[(&[0, 1], 3)]));
        let c = f.coordinate(1);
        let g = series(2, 6, &[(&[1, 1], 1), (&[0, 0], 2)]);
        assert_eq!(
            poisson_tensor(&f, &a, &b, &c).unwrap(),
            poisson_tensor(&f, &a, &c, &b).unwrap()
        );
        let lhs = poisson_tensor(&f, &a, &b.scale_by(&g), &c).unwrap();
        let rhs = poisson_tensor(&f, &a, &b, &c).unwrap().scale_by(&g);
        assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn stock_structures() {
        for f in [semisimple(2, 6), semisimple(3, 4), i2_3(6)] {
            let r = check_f_structure(&f, &quick()).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
        let r = check_f_structure(&non_f_control(6), &quick()).unwrap();
        assert!(r.commutative && r.associative && r.identity);
        assert!(!r.defect_zero);
    }

    #[test]
    fn defect_matches_poisson_form() {
        let f = non_f_control(6);
        let d: Vec<VField> = (0..2).map(|i| f.coordinate(i)).collect();
        for [a, b, c, dd] in quadruples(2) {
            let (x, y, z, w) = (&d[a], &d[b], &d[c], &d[dd]);
            let xy = vf_mul(&f, x, y).unwrap();
            let via_p = &(&poisson_tensor(&f, &xy, z, w).unwrap()
                - &vf_mul(&f, x, &poisson_tensor(&f, y, z, w).unwrap()).unwrap())
                - &vf_mul(&f, y, &poisson_tensor(&f, x, z, w).unwrap()).unwrap();
            assert!((&via_p - &f_identity_defect(&f, x, y, z, w).unwrap()).is_zero());
        }
    }
}
