//! Basic algebras given by poset patterns over GF(p), their monomial quotients and opposites.

mod pattern;
mod ring_file;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use pattern::PosetPattern;
pub use ring_file::RingSpec;

use crate::error::{Error, Result};
use crate::linalg::{Elem, Mat, PrimeField, Subspace};

/// Matrix-unit label `(i, j)`, 1-indexed.
pub type Label = (usize, usize);

/// A finite-dimensional basic algebra with a basis of matrix units.
///
/// Basis elements are the surviving labels of a poset pattern, sorted lexicographically;
/// every coordinate vector in the crate refers to that order.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: PrimeField,
    labels: Vec<Label>,
    /// `table[a * dim + b]` holds the coordinates of `basis[a] · basis[b]`.
    table: Vec<Vec<Elem>>,
    unit: Vec<Elem>,
    radical: Subspace,
    /// `(vertex, basis index of e_vv)` in increasing vertex order.
    idempotents: Vec<(usize, usize)>,
}

/// A first failed identity found by [`FiniteAlgebra::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AlgebraViolation {
    Associativity { a: Label, b: Label, c: Label },
    Unit { label: Label },
    RadicalNotIdeal { radical: Label, other: Label },
    RadicalNotNilpotent,
    IdempotentsNotComplete,
    QuotientNotSemisimple,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub checks: Vec<(String, bool)>,
    pub violations: Vec<AlgebraViolation>,
}

impl AlgebraReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, name: &str, violation: Option<AlgebraViolation>) {
        self.checks.push((name.to_string(), violation.is_none()));
        self.violations.extend(violation);
    }
}

impl FiniteAlgebra {
    /// The pattern algebra: span of the matrix units `e_ij` for `(i, j)` in the relation.
    pub fn from_pattern(pattern: &PosetPattern, field: PrimeField) -> Arc<Self> {
        let labels: Vec<Label> = pattern.pairs().collect();
        Arc::new(Self::from_labels(field, labels))
    }

    fn from_labels(field: PrimeField, labels: Vec<Label>) -> Self {
        let dim = labels.len();
        let index = |l: Label| labels.binary_search(&l).ok();
        let mut table = Vec::with_capacity(dim * dim);
        for &(i, j) in &labels {
            for &(k, l) in &labels {
                let mut coords = vec![0; dim];
                if j == k {
                    if let Some(t) = index((i, l)) {
                        coords[t] = 1;
                    }
                }
                table.push(coords);
            }
        }
        let idempotents: Vec<(usize, usize)> =
            labels.iter().enumerate().filter(|(_, (i, j))| i == j).map(|(t, &(i, _))| (i, t)).collect();
        let mut unit = vec![0; dim];
        for &(_, t) in &idempotents {
            unit[t] = 1;
        }
        let off_diag: Vec<Vec<Elem>> = labels
            .iter()
            .enumerate()
            .filter(|(_, (i, j))| i != j)
            .map(|(t, _)| {
                let mut v = vec![0; dim];
                v[t] = 1;
                v
            })
            .collect();
        let radical = Subspace::span(field, dim, off_diag.iter().map(|v| v.as_slice()));
        Self { field, labels, table, unit, radical, idempotents }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label_index(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Coordinates of `basis[a] · basis[b]`.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> &[Elem] {
        &self.table[a * self.dim() + b]
    }

    pub fn multiply(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        let mut out = vec![0; self.dim()];
        for (a, &xa) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (b, &yb) in y.iter().enumerate().filter(|(_, &c)| c != 0) {
                f.axpy(&mut out, f.mul(xa, yb), self.product(a, b));
            }
        }
        out
    }

    pub fn basis_vector(&self, a: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim()];
        v[a] = 1;
        v
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    /// Span of the off-diagonal labels; this is the Jacobson radical.
    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    /// Primitive idempotents `e_ii` as `(vertex, basis index)`.
    pub fn idempotents(&self) -> &[(usize, usize)] {
        &self.idempotents
    }

    /// Vertex labels of the simple modules, in increasing order.
    pub fn simple_labels(&self) -> Vec<usize> {
        self.idempotents.iter().map(|&(v, _)| v).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    /// Basis index of the idempotent for `vertex`.
    pub fn idempotent_index(&self, vertex: usize) -> Result<usize> {
        self.idempotents
            .iter()
            .find(|&&(v, _)| v == vertex)
            .map(|&(_, t)| t)
            .ok_or(Error::IndexOutOfRange { index: vertex, n: self.idempotents.last().map_or(0, |&(v, _)| v) })
    }

    /// Quotient by the span of a set of labels, which must form a two-sided ideal.
    pub fn quotient(&self, ideal: &[Label]) -> Result<Arc<Self>> {
        let mut killed = BTreeSet::new();
        for &l in ideal {
            let t = self.label_index(l).ok_or_else(|| Error::NotAnIdeal(format!("({}, {}) is not a basis label", l.0, l.1)))?;
            killed.insert(t);
        }
        for &t in &killed {
            for b in 0..self.dim() {
                for prod in [self.product(t, b), self.product(b, t)] {
                    if let Some(s) = prod.iter().enumerate().position(|(s, &c)| c != 0 && !killed.contains(&s)) {
                        return Err(Error::NotAnIdeal(format!(
                            "product of ({}, {}) and ({}, {}) leaves the ideal at ({}, {})",
                            self.labels[t].0, self.labels[t].1, self.labels[b].0, self.labels[b].1, self.labels[s].0, self.labels[s].1
                        )));
                    }
                }
            }
        }
        let keep: Vec<usize> = (0..self.dim()).filter(|t| !killed.contains(t)).collect();
        let labels: Vec<Label> = keep.iter().map(|&t| self.labels[t]).collect();
        let dim = keep.len();
        let mut table = Vec::with_capacity(dim * dim);
        for &a in &keep {
            for &b in &keep {
                let prod = self.product(a, b);
                table.push(keep.iter().map(|&t| prod[t]).collect());
            }
        }
        let project = |v: &[Elem]| -> Vec<Elem> { keep.iter().map(|&t| v[t]).collect() };
        let unit = project(&self.unit);
        let radical_rows: Vec<Vec<Elem>> = self.radical.basis_vectors().map(project).collect();
        let radical = Subspace::span(self.field, dim, radical_rows.iter().map(|v| v.as_slice()));
        let idempotents = self
            .idempotents
            .iter()
            .filter_map(|&(v, t)| keep.iter().position(|&k| k == t).map(|s| (v, s)))
            .collect();
        Ok(Arc::new(Self { field: self.field, labels, table, unit, radical, idempotents }))
    }

    /// Same basis, multiplication reversed.
    pub fn opposite(&self) -> Arc<Self> {
        let dim = self.dim();
        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                table.push(self.product(b, a).to_vec());
            }
        }
        Arc::new(Self { table, ..self.clone() })
    }

    /// Dimensions of `J, J^2, ...` down to the first zero power (or a stationary nonzero one).
    pub fn radical_power_dims(&self) -> Vec<usize> {
        let mut dims = Vec::new();
        let mut power = self.radical.clone();
        while !power.is_zero() {
            dims.push(power.dim());
            let prods: Vec<Vec<Elem>> = power
                .basis_vectors()
                .flat_map(|x| self.radical.basis_vectors().map(move |y| (x, y)))
                .map(|(x, y)| self.multiply(x, y))
                .collect();
            let next = Subspace::span(self.field, self.dim(), prods.iter().map(|v| v.as_slice()));
            if next == power {
                break;
            }
            power = next;
        }
        dims
    }

    /// Exhaustive check of the algebra axioms and of the structural radical/idempotent data.
    pub fn verify(&self) -> AlgebraReport {
        let mut report = AlgebraReport::default();
        let dim = self.dim();
        let l = |t: usize| self.labels[t];

        let assoc = (|| {
            for a in 0..dim {
                for b in 0..dim {
                    let ab = self.product(a, b);
                    for c in 0..dim {
                        let left = self.multiply(ab, &self.basis_vector(c));
                        let right = self.multiply(&self.basis_vector(a), self.product(b, c));
                        if left != right {
                            return Some(AlgebraViolation::Associativity { a: l(a), b: l(b), c: l(c) });
                        }
                    }
                }
            }
            None
        })();
        report.record("associativity", assoc);

        let unit = (0..dim).find_map(|b| {
            let e = self.basis_vector(b);
            (self.multiply(&self.unit, &e) != e || self.multiply(&e, &self.unit) != e)
                .then(|| AlgebraViolation::Unit { label: l(b) })
        });
        report.record("unit", unit);

        let ideal = self.radical.basis_vectors().enumerate().find_map(|(r, x)| {
            (0..dim).find_map(|b| {
                let e = self.basis_vector(b);
                let ok = self.radical.contains(&self.multiply(x, &e)) && self.radical.contains(&self.multiply(&e, x));
                (!ok).then(|| AlgebraViolation::RadicalNotIdeal { radical: l(self.radical.pivots()[r]), other: l(b) })
            })
        });
        report.record("radical is a two-sided ideal", ideal);

        let powers = self.radical_power_dims();
        let nilpotent = {
            let mut power = self.radical.clone();
            for _ in 0..=powers.len() {
                let prods: Vec<Vec<Elem>> = power
                    .basis_vectors()
                    .flat_map(|x| self.radical.basis_vectors().map(move |y| (x, y)))
                    .map(|(x, y)| self.multiply(x, y))
                    .collect();
                power = Subspace::span(self.field, dim, prods.iter().map(|v| v.as_slice()));
            }
            power.is_zero()
        };
        report.record("radical is nilpotent", (!nilpotent).then_some(AlgebraViolation::RadicalNotNilpotent));

        let mut sum = vec![0; dim];
        for &(_, t) in &self.idempotents {
            sum[t] = self.field.add(sum[t], 1);
        }
        report.record(
            "idempotents sum to 1",
            (sum != self.unit).then_some(AlgebraViolation::IdempotentsNotComplete),
        );

        // A/J is spanned by the images of orthogonal idempotents, hence ≅ GF(p)^n.
        let semisimple = dim - self.radical.dim() == self.idempotents.len()
            && self.idempotents.iter().all(|&(_, s)| {
                self.idempotents.iter().all(|&(_, t)| {
                    let prod = self.product(s, t);
                    let expect = if s == t { self.basis_vector(s) } else { vec![0; dim] };
                    let diff: Vec<Elem> = prod.iter().zip(&expect).map(|(&a, &b)| self.field.sub(a, b)).collect();
                    self.radical.contains(&diff)
                })
            });
        report.record(
            "quotient by radical is semisimple",
            (!semisimple).then_some(AlgebraViolation::QuotientNotSemisimple),
        );
        report
    }

    /// The matrix of right multiplication `x ↦ x · basis[b]` on the regular module.
    pub fn right_multiplication(&self, b: usize) -> Mat {
        let dim = self.dim();
        let rows: Vec<&[Elem]> = (0..dim).map(|a| self.product(a, b)).collect();
        Mat::from_row_vecs(self.field, dim, rows)
    }

    pub fn label_name(&self, t: usize) -> String {
        let (i, j) = self.labels[t];
        format!("e{i}{j}")
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("field", &self.field)
            .field("labels", &self.labels)
            .field("radical_dim", &self.radical.dim())
            .finish()
    }
}

/// The 3x3 pattern ring with an extra pair of arrows out of vertex 1.
pub fn r3(field: PrimeField) -> Arc<FiniteAlgebra> {
    let pat = PosetPattern::new(3, [(1, 2), (1, 3)]).expect("valid pattern");
    FiniteAlgebra::from_pattern(&pat, field)
}

/// The 4x4 analogue of [`r3`] with three arrows out of vertex 1.
pub fn r4(field: PrimeField) -> Arc<FiniteAlgebra> {
    let pat = PosetPattern::new(4, [(1, 2), (1, 3), (1, 4)]).expect("valid pattern");
    FiniteAlgebra::from_pattern(&pat, field)
}

/// Upper-triangular `n x n` matrices.
pub fn upper_triangular(n: usize, field: PrimeField) -> Arc<FiniteAlgebra> {
    FiniteAlgebra::from_pattern(&PosetPattern::total_order(n), field)
}

/// The product of `n` copies of the field.
pub fn diagonal(n: usize, field: PrimeField) -> Arc<FiniteAlgebra> {
    FiniteAlgebra::from_pattern(&PosetPattern::discrete(n), field)
}
