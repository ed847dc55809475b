//! Generic axiom suite for a monoidal category with a dualizing object.
//!
//! An instance supplies objects, the two products, the duality, the unit
//! `1`, the dualizing object `K` and an equality predicate. The suite never
//! looks inside the objects except through [`GvInstance::describe`], which
//! is used to record counterexamples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub trait GvInstance {
    type Obj: Clone;

    fn name(&self) -> String;
    fn sample_objects(&self, seed: u64) -> Vec<Self::Obj>;
    fn black(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn white(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn dual(&self, x: &Self::Obj) -> Self::Obj;
    fn unit(&self) -> Self::Obj;
    fn dualizing(&self) -> Self::Obj;
    /// Equality after canonical elision of one-dimensional tensor factors.
    fn eq(&self, x: &Self::Obj, y: &Self::Obj) -> bool;
    /// Relation space of `x` is contained in that of `y` (same generators).
    fn rel_included(&self, x: &Self::Obj, y: &Self::Obj) -> bool;
    /// Whether `x` is a well-formed object of the category.
    fn is_valid(&self, x: &Self::Obj) -> bool;
    /// Transports a product of `left` and `right` to the swapped factor order.
    fn flip(&self, product: &Self::Obj, left: &Self::Obj, right: &Self::Obj) -> Self::Obj;
    /// Size used to bound the cost of triple products.
    fn size(&self, x: &Self::Obj) -> usize;
    fn describe(&self, x: &Self::Obj) -> serde_json::Value;
    /// Number of leading sampled objects whose pairs and triples are always
    /// checked, ahead of the random draw.
    fn anchors(&self) -> usize {
        0
    }
}

#[derive(Clone, Debug)]
pub struct GvConfig {
    pub seed: u64,
    pub max_pairs: usize,
    pub max_triples: usize,
    /// Triples `(x,y,z)` are only drawn when `size(x)*size(y)*size(z)` is at most this.
    pub triple_size_bound: usize,
}

impl Default for GvConfig {
    fn default() -> Self {
        GvConfig {
            seed: crate::DEFAULT_SEED,
            max_pairs: 60,
            max_triples: 20,
            triple_size_bound: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    EqIsEquivalence,
    DualInvolution,
    DualOfDualizingIsUnit,
    WhiteUnits,
    Exchange,
    FlipSymmetry,
    Comparison,
    Associativity,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub detail: String,
    pub objects: Vec<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GvReport {
    pub instance: String,
    pub seed: u64,
    pub objects: usize,
    pub pairs: usize,
    pub triples: usize,
    pub axioms: Vec<AxiomOutcome>,
}

impl GvReport {
    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn outcome(&self, axiom: Axiom) -> Option<&AxiomOutcome> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} (seed {}, {} objects, {} pairs, {} triples)\n",
            self.instance, self.seed, self.objects, self.pairs, self.triples
        );
        for a in &self.axioms {
            let tag = if a.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("  [{tag}] {:?} ({} cases)\n", a.axiom, a.cases));
            if let Some(c) = &a.counterexample {
                s.push_str(&format!("         counterexample: {}\n", c.detail));
            }
        }
        s
    }
}

/// Objects plus the pairs and triples the axioms quantify over.
pub struct Samples<O> {
    pub objects: Vec<O>,
    pub pairs: Vec<(usize, usize)>,
    pub triples: Vec<(usize, usize, usize)>,
}

impl<O: Clone> Samples<O> {
    pub fn draw<I: GvInstance<Obj = O>>(inst: &I, cfg: &GvConfig) -> Self {
        let objects = inst.sample_objects(cfg.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
        let n = objects.len();
        let k = inst.anchors().min(n);
        let anchored = |i: usize, j: usize| i < k && j < k;
        let mut pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
        let mut rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !anchored(i, j))
            .collect();
        rest.shuffle(&mut rng);
        pairs.extend(rest.into_iter().take(cfg.max_pairs.saturating_sub(pairs.len())));
        pairs.sort_unstable();
        let size3 = |t: (usize, usize, usize)| inst.size(&objects[t.0]) * inst.size(&objects[t.1]) * inst.size(&objects[t.2]);
        let mut triples: Vec<(usize, usize, usize)> = (0..k * k * k)
            .map(|x| (x / (k * k), (x / k) % k, x % k))
            .filter(|&t| size3(t) <= cfg.triple_size_bound)
            .collect();
        let small: Vec<usize> = (0..n).filter(|&i| inst.size(&objects[i]) <= cfg.triple_size_bound).collect();
        let mut attempts = 0;
        while !small.is_empty() && triples.len() < cfg.max_triples && attempts < 50 * cfg.max_triples {
            attempts += 1;
            let t = (
                small[rng.gen_range(0..small.len())],
                small[rng.gen_range(0..small.len())],
                small[rng.gen_range(0..small.len())],
            );
            if size3(t) <= cfg.triple_size_bound {
                triples.push(t);
            }
        }
        Samples { objects, pairs, triples }
    }

    /// Explicit objects, every ordered pair and every triple within the bound.
    pub fn exhaustive<I: GvInstance<Obj = O>>(inst: &I, objects: Vec<O>, triple_size_bound: usize) -> Self {
        let n = objects.len();
        let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = inst.size(&objects[i]) * inst.size(&objects[j]) * inst.size(&objects[k]);
                    if s <= triple_size_bound {
                        triples.push((i, j, k));
                    }
                }
            }
        }
        Samples { objects, pairs, triples }
    }
}

fn outcome(axiom: Axiom, cases: usize, failure: Option<Counterexample>) -> AxiomOutcome {
    AxiomOutcome {
        axiom,
        passed: failure.is_none(),
        cases,
        counterexample: failure,
    }
}

fn witness<I: GvInstance>(inst: &I, detail: impl Into<String>, objs: &[&I::Obj]) -> Counterexample {
    Counterexample {
        detail: detail.into(),
        objects: objs.iter().map(|o| inst.describe(o)).collect(),
    }
}

/// Spot-checks reflexivity, symmetry and transitivity of `eq`.
pub fn check_eq_equivalence<I: GvInstance>(inst: &I, s: &Samples<I::Obj>) -> AxiomOutcome {
    let o = &s.objects;
    let mut cases = 0;
    for x in o {
        cases += 1;
        if !inst.eq(x, x) {
            return outcome(Axiom::EqIsEquivalence, cases, Some(witness(inst, "eq(X,X) is false", &[x])));
        }
    }
    for &(i, j) in &s.pairs {
        cases += 1;
        if inst.eq(&o[i], &o[j]) != inst.eq(&o[j], &o[i]) {
            return outcome(
                Axiom::EqIsEquivalence,
                cases,
                Some(witness(inst, "eq is not symmetric", &[&o[i], &o[j]])),
            );
        }
    }
    for &(i, j, k) in &s.triples {
        cases += 1;
        if inst.eq(&o[i], &o[j]) && inst.eq(&o[j], &o[k]) && !inst.eq(&o[i], &o[k]) {
            return outcome(
                Axiom::EqIsEquivalence,
                cases,
                Some(witness(inst, "eq is not transitive", &[&o[i], &o[j], &o[k]])),
            );
        }
    }
    outcome(Axiom::EqIsEquivalence, cases, None)
}

/// `dual(X)` is an object and `dual(dual(X)) = X`.
pub fn check_dual_involution<I: GvInstance>(inst: &I, s: &Samples<I::Obj>) -> AxiomOutcome {
    for (n, x) in s.objects.iter().enumerate() {
        let d = inst.dual(x);
        if !inst.is_valid(&d) {
            return outcome(
                Axiom::DualInvolution,
                n + 1,
                Some(witness(inst, "dual(X) is not a valid object", &[x, &d])),
            );
        }
        let dd = inst.dual(&d);
        if !inst.eq(&dd, x) {
            return outcome(
                Axiom::DualInvolution,
                n + 1,
                Some(witness(inst, "dual(dual(X)) != X", &[x, &dd])),
            );
        }
    }
    outcome(Axiom::DualInvolution, s.objects.len(), None)
}

/// `dual(K) = 1` and `dual(1) = K`.
pub fn check_dk_of_k<I: GvInstance>(inst: &I) -> AxiomOutcome {
    let (one, k) = (inst.unit(), inst.dualizing());
    let dk = inst.dual(&k);
    if !inst.eq(&dk, &one) {
        return outcome(
            Axiom::DualOfDualizingIsUnit,
            1,
            Some(witness(inst, "dual(K) != 1", &[&k, &dk])),
        );
    }
    let d1 = inst.dual(&one);
    if !inst.eq(&d1, &k) {
        return outcome(
            Axiom::DualOfDualizingIsUnit,
            2,
            Some(witness(inst, "dual(1) != K", &[&one, &d1])),
        );
    }
    outcome(Axiom::DualOfDualizingIsUnit, 2, None)
}

/// `K∘X = X = X∘K`.
pub fn check_white_units<I: GvInstance>(inst: &I, s: &Samples<I::Obj>) -> AxiomOutcome {
    let k = inst.dualizing();
    for (n, x) in s.objects.iter().enumerate() {
        let l = inst.white(&k, x);
        if !inst.eq(&l, x) {
            return outcome(Axiom::WhiteUnits, n + 1, Some(witness(inst, "K∘X != X", &[x, &l])));
        }
        let r = inst.white(x, &k);
        if !inst.eq(&r, x) {
            return outcome(Axiom::WhiteUnits, n + 1, Some(witness(inst, "X∘K != X", &[x, &r])));
        }
    }
    outcome(Axiom::WhiteUnits, s.objects.len(), None)
}

/// `dual(X•Y) = dual(X)∘dual(Y)` and `dual(X∘Y) = dual(X)•dual(Y)`.
pub fn check_exchange<I: GvInstance>(inst: &I, s: &Samples<I::Obj>) -> AxiomOutcome {
    let o = &s.objects;
    for (n, &(i, j)) in s.pairs.iter().enumerate() {
        let (x, y) = (&o[i], &o[j]);
        let (dx, dy) = (inst.dual(x), inst.dual(y));
        let lhs = inst.dual(&inst.black(x, y));
        let rhs = inst.white(&dx, &dy);
        if !inst.eq(&lhs, &rhs) {
            return outcome(
                Axiom::Exchange,
                n + 1,
                Some(witness(inst, "dual(X•Y) != dual(X)∘dual(Y)", &[x, y, &lhs, &rhs])),
            );
        }
        let lhs = inst.dual(&inst.white(x, y));
        let rhs = inst.black(&dx, &dy);
        if !inst.eq(&lhs, &rhs) {
            return outcome(
                Axiom::Exchange,
                n + 1,
                Some(witness(inst, "dual(X∘Y) != dual(X)•dual(Y)", &[x, y, &lhs, &rhs])),
            );
        }
    }
    outcome(Axiom::Exchange, s.pairs.len(), None)
}

/// The factor swap carries `X•Y` to `Y•X` and `X∘Y` to `Y∘X`.
pub fn check_flip_symmetry<I: GvInstance>(inst: &I, s: &Samples<I::Obj>) -> AxiomOutcome {
    let o = &s.objects;
    for (n, &(i, j)) in s.pairs.iter().enumerate() {
        let (x, y) = (&o[i], &o[j]);
        let b = inst.flip(&inst.black(x, y), x, y);
        if !inst.eq(&b, &inst.black(y, x)) {
            return outcome(
                Axiom::FlipSymmetry,
                n + 1,
                Some(witness(inst, "flip(X•Y) != Y•X", &[x, y])),
            );
        }
        let w = inst.flip(&inst.white(x, y), x, y);
        if !inst.eq(&w, &inst.white(y, x)) {
            return outcome(
                Axiom::FlipSymmetry,
                n + 1,
                Some(witness(inst, "flip(X∘Y) != Y∘X", &[x, y])),
            );
        }
    }
    outcome(Axiom::FlipSymmetry, s.pairs.len(), None)
}

/// Relations of `X•Y` lie inside those of `X∘Y`.
pub fn check_comparison<I: GvInstance>(inst: &I, s: &Samples<I::Obj>) -> AxiomOutcome {
    let o = &s.objects;
    for (n, &(i, j)) in s.pairs.iter().enumerate() {
        let (x, y) = (&o[i], &o[j]);
        let (b, w) = (inst.black(x, y), inst.white(x, y));
        if !inst.rel_included(&b, &w) {
            return outcome(
                Axiom::Comparison,
                n + 1,
                Some(witness(inst, "R(X•Y) is not contained in R(X∘Y)", &[x, y, &b, &w])),
            );
        }
    }
    outcome(Axiom::Comparison, s.pairs.len(), None)
}

/// Strict associativity of both products in flattened coordinates.
pub fn check_associativity<I: GvInstance>(inst: &I, s: &Samples<I::Obj>) -> AxiomOutcome {
    let o = &s.objects;
    for (n, &(i, j, k)) in s.triples.iter().enumerate() {
        let (x, y, z) = (&o[i], &o[j], &o[k]);
        let l = inst.black(&inst.black(x, y), z);
        let r = inst.black(x, &inst.black(y, z));
        if !inst.eq(&l, &r) {
            return outcome(
                Axiom::Associativity,
                n + 1,
                Some(witness(inst, "(X•Y)•Z != X•(Y•Z)", &[x, y, z])),
            );
        }
        let l = inst.white(&inst.white(x, y), z);
        let r = inst.white(x, &inst.white(y, z));
        if !inst.eq(&l, &r) {
            return outcome(
                Axiom::Associativity,
                n + 1,
                Some(witness(inst, "(X∘Y)∘Z != X∘(Y∘Z)", &[x, y, z])),
            );
        }
    }
    outcome(Axiom::Associativity, s.triples.len(), None)
}

pub fn run_suite<I: GvInstance>(inst: &I, cfg: &GvConfig) -> GvReport {
    let samples = Samples::draw(inst, cfg);
    run_on(inst, &samples, cfg.seed)
}

pub fn run_on<I: GvInstance>(inst: &I, samples: &Samples<I::Obj>, seed: u64) -> GvReport {
    let axioms = vec![
        check_eq_equivalence(inst, samples),
        check_dual_involution(inst, samples),
        check_dk_of_k(inst),
        check_white_units(inst, samples),
        check_exchange(inst, samples),
        check_flip_symmetry(inst, samples),
        check_comparison(inst, samples),
        check_associativity(inst, samples),
    ];
    GvReport {
        instance: inst.name(),
        seed,
        objects: samples.objects.len(),
        pairs: samples.pairs.len(),
        triples: samples.triples.len(),
        axioms,
    }
}

/// Wraps an instance and replaces its dualizing object with its unit.
pub struct UnitAsDualizing<I>(pub I);

/// Wraps an instance and swaps the roles of the two products.
pub struct SwappedProducts<I>(pub I);

macro_rules! delegate_except {
    ($wrapper:ident, { $($overrides:item)* }) => {
        impl<I: GvInstance> GvInstance for $wrapper<I> {
            type Obj = I::Obj;
            $($overrides)*
            fn sample_objects(&self, seed: u64) -> Vec<Self::Obj> { self.0.sample_objects(seed) }
            fn dual(&self, x: &Self::Obj) -> Self::Obj { self.0.dual(x) }
            fn unit(&self) -> Self::Obj { self.0.unit() }
            fn eq(&self, x: &Self::Obj, y: &Self::Obj) -> bool { self.0.eq(x, y) }
            fn rel_included(&self, x: &Self::Obj, y: &Self::Obj) -> bool { self.0.rel_included(x, y) }
            fn is_valid(&self, x: &Self::Obj) -> bool { self.0.is_valid(x) }
            fn flip(&self, p: &Self::Obj, l: &Self::Obj, r: &Self::Obj) -> Self::Obj { self.0.flip(p, l, r) }
            fn size(&self, x: &Self::Obj) -> usize { self.0.size(x) }
            fn anchors(&self) -> usize { self.0.anchors() }
            fn describe(&self, x: &Self::Obj) -> serde_json::Value { self.0.describe(x) }
        }
    };
}

delegate_except!(UnitAsDualizing, {
    fn name(&self) -> String { format!("{} [1 in place of K]", self.0.name()) }
    fn black(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj { self.0.black(x, y) }
    fn white(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj { self.0.white(x, y) }
    fn dualizing(&self) -> Self::Obj { self.0.unit() }
});

delegate_except!(SwappedProducts, {
    fn name(&self) -> String { format!("{} [products swapped]", self.0.name()) }
    fn black(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj { self.0.white(x, y) }
    fn white(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj { self.0.black(x, y) }
    fn dualizing(&self) -> Self::Obj { self.0.dualizing() }
});
