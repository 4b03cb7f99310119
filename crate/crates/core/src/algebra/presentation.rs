use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::exact::{Rational, SparseVec};

use super::dsl::AlgebraSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    /// Homological degree; parity is `degree % 2`.
    pub degree: i64,
    pub weight: Vec<i64>,
}

impl GeneratorSpec {
    pub fn new(name: &str, degree: i64, weight: Vec<i64>) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            degree,
            weight,
        }
    }

    pub fn even(name: &str, weight: Vec<i64>) -> Self {
        Self::new(name, 0, weight)
    }

    pub fn odd(name: &str, weight: Vec<i64>) -> Self {
        Self::new(name, 1, weight)
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub degree: i64,
    pub weight: Vec<i64>,
    /// Some product with this element left the window.
    pub boundary: bool,
}

impl BasisElem {
    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// Per-coordinate inclusive weight bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Window {
    pub fn contains(&self, w: &[i64]) -> bool {
        w.iter().zip(&self.lo).all(|(a, b)| a >= b) && w.iter().zip(&self.hi).all(|(a, b)| a <= b)
    }
}

/// Polynomial in the generators of a free algebra: (coefficient, exponent vector).
pub type GenPoly = Vec<(Rational, Vec<u32>)>;

/// Extra data kept for free (skew-)commutative algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeData {
    pub gens: Vec<GeneratorSpec>,
    /// Exponent vector of every basis element.
    pub exps: Vec<Vec<u32>>,
    /// Differential on each generator, or empty when `δ = 0`.
    pub delta: Vec<GenPoly>,
}

impl FreeData {
    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.exps.iter().position(|e| e.as_slice() == exps)
    }
}

/// Module over the algebra: basis with weights and the action table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub basis: Vec<(String, Vec<i64>)>,
    /// Algebra basis element `a` and module element `m` to `a . m`.
    pub action: BTreeMap<(usize, usize), SparseVec>,
    /// Index in the ambient algebra of each module basis element, when the
    /// module sits inside it (square-zero extensions).
    pub embedding: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebraPresentation {
    pub(crate) basis: Vec<BasisElem>,
    pub(crate) unit: usize,
    pub(crate) products: BTreeMap<(usize, usize), SparseVec>,
    pub(crate) truncated: BTreeSet<(usize, usize)>,
    pub(crate) delta: Option<Vec<SparseVec>>,
    pub(crate) window: Window,
    pub(crate) free: Option<FreeData>,
    pub(crate) module: Option<ModuleSpec>,
    pub(crate) spec: AlgebraSpec,
}

fn add_into(acc: &mut BTreeMap<usize, Rational>, i: usize, c: Rational) {
    let slot = acc.entry(i).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&i);
    }
}

pub(crate) fn collect(acc: BTreeMap<usize, Rational>) -> SparseVec {
    acc.into_iter().collect()
}

impl GradedAlgebraPresentation {
    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn weight_arity(&self) -> usize {
        self.window.lo.len()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn free_data(&self) -> Option<&FreeData> {
        self.free.as_ref()
    }

    pub fn module(&self) -> Option<&ModuleSpec> {
        self.module.as_ref()
    }

    pub fn has_differential(&self) -> bool {
        self.delta.as_ref().is_some_and(|d| d.iter().any(|v| !v.is_empty()))
    }

    pub fn is_graded(&self) -> bool {
        self.basis.iter().any(|b| b.degree != 0)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Product of two basis elements; empty when zero or truncated.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        self.products.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    /// True when the product of `i` and `j` is nonzero but left the window.
    pub fn is_truncated(&self, i: usize, j: usize) -> bool {
        self.truncated.contains(&(i, j))
    }

    pub fn delta(&self, i: usize) -> &[(usize, Rational)] {
        self.delta.as_ref().map_or(&[], |d| d[i].as_slice())
    }

    /// Product of two elements; the flag reports whether any truncated product was used.
    pub fn mul(&self, a: &[(usize, Rational)], b: &[(usize, Rational)]) -> (SparseVec, bool) {
        let mut acc = BTreeMap::new();
        let mut trunc = false;
        for (i, x) in a {
            for (j, y) in b {
                trunc |= self.is_truncated(*i, *j);
                for (k, z) in self.product(*i, *j) {
                    add_into(&mut acc, *k, x * y * z);
                }
            }
        }
        (collect(acc), trunc)
    }

    pub fn apply_delta(&self, a: &[(usize, Rational)]) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (k, z) in self.delta(*i) {
                add_into(&mut acc, *k, x * z);
            }
        }
        collect(acc)
    }

    /// True when the span of the non-unit basis elements is an ideal, so
    /// that `A = C.1 + Ā` splits as needed for relative homology.
    pub fn augmentation_ideal_closed(&self) -> bool {
        self.products
            .iter()
            .all(|((i, j), v)| *i == self.unit || *j == self.unit || v.iter().all(|(k, _)| *k != self.unit))
    }

    /// Text form that parses back to this presentation.
    pub fn pretty(&self) -> String {
        self.spec.to_string()
    }

    /// Builds the product table on a basis given by a multiplication rule.
    /// `rule` returns the exact product, and whether it lies in the window.
    pub(crate) fn assemble(
        basis: Vec<BasisElem>,
        unit: usize,
        window: Window,
        spec: AlgebraSpec,
        mut rule: impl FnMut(usize, usize) -> (SparseVec, bool),
    ) -> Self {
        let n = basis.len();
        let mut products = BTreeMap::new();
        let mut truncated = BTreeSet::new();
        let mut basis = basis;
        for i in 0..n {
            for j in 0..n {
                let (v, inside) = rule(i, j);
                if !inside {
                    truncated.insert((i, j));
                    basis[i].boundary = true;
                    basis[j].boundary = true;
                } else if !v.is_empty() {
                    products.insert((i, j), v);
                }
            }
        }
        GradedAlgebraPresentation {
            basis,
            unit,
            products,
            truncated,
            delta: None,
            window,
            free: None,
            module: None,
            spec,
        }
    }
}

/// One violated axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Unit { element: usize },
    Commutativity { a: usize, b: usize },
    Associativity { a: usize, b: usize, c: usize },
    Weight { a: usize, b: usize },
    DeltaDegree { element: usize },
    DeltaWeight { element: usize },
    DeltaSquare { element: usize },
    Leibniz { a: usize, b: usize },
    ModuleUnit { element: usize },
    ModuleAssociativity { a: usize, b: usize, m: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub checked: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn koszul(a: &BasisElem, b: &BasisElem) -> Rational {
    if a.is_odd() && b.is_odd() {
        -Rational::one()
    } else {
        Rational::one()
    }
}

fn scaled(v: &[(usize, Rational)], c: &Rational) -> SparseVec {
    v.iter()
        .map(|(i, x)| (*i, x * c))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

fn sum(a: &[(usize, Rational)], b: &[(usize, Rational)]) -> SparseVec {
    let mut acc = BTreeMap::new();
    for (i, x) in a.iter().chain(b) {
        add_into(&mut acc, *i, x.clone());
    }
    collect(acc)
}

/// Checks the graded-commutative DGA axioms on every instance that stays inside the window.
pub fn check_presentation(a: &GradedAlgebraPresentation) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let n = a.dim();
    let one = |i: usize| vec![(i, Rational::one())];
    for i in 0..n {
        rep.checked += 2;
        if a.product(a.unit, i) != one(i).as_slice() || a.product(i, a.unit) != one(i).as_slice() {
            rep.violations.push(Violation::Unit { element: i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if a.is_truncated(i, j) {
                continue;
            }
            rep.checked += 1;
            let ab = a.product(i, j);
            let ba = scaled(a.product(j, i), &koszul(&a.basis[i], &a.basis[j]));
            if ab != ba.as_slice() {
                rep.violations.push(Violation::Commutativity { a: i, b: j });
            }
            let w: Vec<i64> = a.basis[i]
                .weight
                .iter()
                .zip(&a.basis[j].weight)
                .map(|(x, y)| x + y)
                .collect();
            let d = a.basis[i].degree + a.basis[j].degree;
            if ab
                .iter()
                .any(|(k, _)| a.basis[*k].weight != w || a.basis[*k].degree != d)
            {
                rep.violations.push(Violation::Weight { a: i, b: j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if a.is_truncated(i, j) {
                continue;
            }
            for k in 0..n {
                if a.is_truncated(j, k) {
                    continue;
                }
                let (l, t1) = a.mul(a.product(i, j), &one(k));
                let (r, t2) = a.mul(&one(i), a.product(j, k));
                if t1 || t2 {
                    continue;
                }
                rep.checked += 1;
                if l != r {
                    rep.violations.push(Violation::Associativity { a: i, b: j, c: k });
                }
            }
        }
    }
    if a.delta.is_some() {
        for i in 0..n {
            rep.checked += 3;
            let d = a.delta(i);
            if d.iter().any(|(k, _)| a.basis[*k].degree != a.basis[i].degree - 1) {
                rep.violations.push(Violation::DeltaDegree { element: i });
            }
            if d.iter().any(|(k, _)| a.basis[*k].weight != a.basis[i].weight) {
                rep.violations.push(Violation::DeltaWeight { element: i });
            }
            if !a.apply_delta(d).is_empty() {
                rep.violations.push(Violation::DeltaSquare { element: i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if a.is_truncated(i, j) {
                    continue;
                }
                let lhs = a.apply_delta(a.product(i, j));
                let (t1, f1) = a.mul(a.delta(i), &one(j));
                let sign = if a.basis[i].is_odd() {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let (t2, f2) = a.mul(&one(i), a.delta(j));
                if f1 || f2 {
                    continue;
                }
                rep.checked += 1;
                if lhs != sum(&t1, &scaled(&t2, &sign)) {
                    rep.violations.push(Violation::Leibniz { a: i, b: j });
                }
            }
        }
    }
    if let Some(m) = &a.module {
        let act = |x: usize, v: &[(usize, Rational)]| {
            let mut acc = BTreeMap::new();
            for (k, c) in v {
                for (l, z) in m.action.get(&(x, *k)).map_or(&[][..], |w| w.as_slice()) {
                    add_into(&mut acc, *l, c * z);
                }
            }
            collect(acc)
        };
        for k in 0..m.basis.len() {
            rep.checked += 1;
            if act(a.unit, &one(k)) != one(k) {
                rep.violations.push(Violation::ModuleUnit { element: k });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if a.is_truncated(i, j) {
                    continue;
                }
                for k in 0..m.basis.len() {
                    rep.checked += 1;
                    let mut lhs = BTreeMap::new();
                    for (l, c) in a.product(i, j) {
                        for (r, z) in act(*l, &one(k)) {
                            add_into(&mut lhs, r, c * z);
                        }
                    }
                    if collect(lhs) != act(i, &act(j, &one(k))) {
                        rep.violations.push(Violation::ModuleAssociativity { a: i, b: j, m: k });
                    }
                }
            }
        }
    }
    rep
}
