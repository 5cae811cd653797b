//! Finite subgroups of GL_ℓ(ℤ) given by generators: closure, multiplication
//! table, inverses, element orders and conjugacy classes.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::linalg::{IntMatrix, LinalgError};

pub const DEFAULT_MAX_ORDER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("generator {index} has determinant {det}, not ±1")]
    NonUnimodularGenerator { index: usize, det: String },
    #[error("closure exceeded {cap} elements (infinite or too large group)")]
    OrderCapExceeded { cap: usize },
    #[error("generator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    DimensionMismatch { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("lattice rank must be positive")]
    ZeroDimension,
    #[error("element set {0:?} is not closed under multiplication")]
    NotASubgroup(Vec<usize>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest element index in the class.
    pub representative: usize,
    /// Sorted element indices.
    pub elements: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// A finite matrix group with its full multiplication table.
///
/// Element 0 is always the identity. Elements are stored in breadth-first
/// order of discovery from the identity, right-multiplying by generators in
/// input order.
#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    dim: usize,
    elements: Vec<IntMatrix>,
    generator_indices: Vec<usize>,
    cayley: Vec<usize>,
    inverse: Vec<usize>,
    orders: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    exponent: usize,
}

impl FiniteMatrixGroup {
    /// Closes `generators` under multiplication inside GL_dim(ℤ).
    pub fn generate(dim: usize, generators: &[IntMatrix], max_order: usize) -> Result<Self, GroupError> {
        if dim == 0 {
            return Err(GroupError::ZeroDimension);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::DimensionMismatch { index, rows: g.rows(), cols: g.cols(), dim });
            }
            let det = g.determinant()?;
            if !det.abs().is_one() {
                return Err(GroupError::NonUnimodularGenerator { index, det: det.to_string() });
            }
        }

        let mut elements = vec![IntMatrix::identity(dim)];
        let mut lookup: HashMap<IntMatrix, usize> = HashMap::new();
        lookup.insert(elements[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = elements[x].multiply(g)?;
                if !lookup.contains_key(&y) {
                    if elements.len() >= max_order {
                        return Err(GroupError::OrderCapExceeded { cap: max_order });
                    }
                    lookup.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let generator_indices = generators.iter().map(|g| lookup[g]).collect();

        let n = elements.len();
        let mut cayley = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = elements[i].multiply(&elements[j])?;
                // Closed by construction: the set is finite and generated.
                cayley[i * n + j] = *lookup.get(&p).ok_or(GroupError::OrderCapExceeded { cap: max_order })?;
            }
        }
        let mut inverse = vec![0usize; n];
        for i in 0..n {
            inverse[i] = (0..n).find(|&j| cayley[i * n + j] == 0).expect("finite group element has an inverse");
        }
        let mut orders = vec![1usize; n];
        for (i, order) in orders.iter_mut().enumerate() {
            let mut x = i;
            while x != 0 {
                x = cayley[x * n + i];
                *order += 1;
            }
        }
        let exponent = orders.iter().fold(1usize, |acc, &o| acc.lcm(&o));

        let mut group = FiniteMatrixGroup {
            dim,
            elements,
            generator_indices,
            cayley,
            inverse,
            orders,
            classes: Vec::new(),
            class_of: Vec::new(),
            exponent,
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut assigned = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                assigned[m] = classes.len();
            }
            classes.push(ConjugacyClass { representative: x, elements: members });
        }
        classes.sort_by_key(|c| (self.orders[c.representative], c.representative));
        let mut class_of = vec![0usize; n];
        for (ci, c) in classes.iter().enumerate() {
            for &e in &c.elements {
                class_of[e] = ci;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &IntMatrix {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g · x · g⁻¹`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k % self.orders[a] {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Conjugacy classes ordered by (representative order, representative index).
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjugacyClass::size).collect()
    }

    /// Class of the inverse of each class's representative.
    pub fn inverse_classes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| self.class_of(self.inv(c.representative))).collect()
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// True when `subset` is nonempty and closed under multiplication (which
    /// suffices for a finite group).
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        if subset.is_empty() || subset.iter().any(|&x| x >= self.order()) {
            return false;
        }
        let mut member = vec![false; self.order()];
        for &x in subset {
            member[x] = true;
        }
        subset.iter().all(|&a| subset.iter().all(|&b| member[self.mul(a, b)]))
    }
}

/// Free-function form of [`FiniteMatrixGroup::generate`].
pub fn generate_group(dim: usize, generators: &[IntMatrix], max_order: usize) -> Result<FiniteMatrixGroup, GroupError> {
    FiniteMatrixGroup::generate(dim, generators, max_order)
}

pub fn conjugacy_classes(group: &FiniteMatrixGroup) -> &[ConjugacyClass] {
    group.classes()
}

pub fn group_exponent(group: &FiniteMatrixGroup) -> usize {
    group.exponent()
}
