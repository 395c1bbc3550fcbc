//! Dense multi-index component arrays with typed index signatures.

use std::fmt;

use crate::exec::Execution;
use crate::symkernel::{Expr, SymError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexClass {
    /// Ranges over `1..=p`.
    Temporal,
    /// Ranges over `1..=n`.
    Spatial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Upper,
    Lower,
}

/// One index position. A vertical pair such as `^(α)_(i)` is two slots, a
/// temporal one and a spatial one, both flagged `paired`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSlot {
    pub class: IndexClass,
    pub variance: Variance,
    pub paired: bool,
}

impl IndexSlot {
    pub const fn new(class: IndexClass, variance: Variance) -> Self {
        Self { class, variance, paired: false }
    }

    pub const fn paired(self) -> Self {
        Self { paired: true, ..self }
    }

    pub fn extent(&self, p: usize, n: usize) -> usize {
        match self.class {
            IndexClass::Temporal => p,
            IndexClass::Spatial => n,
        }
    }
}

pub const T_UP: IndexSlot = IndexSlot::new(IndexClass::Temporal, Variance::Upper);
pub const T_LO: IndexSlot = IndexSlot::new(IndexClass::Temporal, Variance::Lower);
pub const S_UP: IndexSlot = IndexSlot::new(IndexClass::Spatial, Variance::Upper);
pub const S_LO: IndexSlot = IndexSlot::new(IndexClass::Spatial, Variance::Lower);

impl fmt::Display for IndexSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.variance {
            Variance::Upper => '^',
            Variance::Lower => '_',
        };
        let c = match self.class {
            IndexClass::Temporal => 't',
            IndexClass::Spatial => 's',
        };
        if self.paired {
            write!(f, "{v}({c})")
        } else {
            write!(f, "{v}{c}")
        }
    }
}

/// A documented symmetry between two slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric(usize, usize),
    Antisymmetric(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DTensor {
    name: String,
    signature: Vec<IndexSlot>,
    shape: Vec<usize>,
    data: Vec<Expr>,
    symmetries: Vec<Symmetry>,
}

impl DTensor {
    pub fn zeros(name: impl Into<String>, signature: &[IndexSlot], p: usize, n: usize) -> Self {
        let shape: Vec<usize> = signature.iter().map(|s| s.extent(p, n)).collect();
        let len = shape.iter().product();
        Self {
            name: name.into(),
            signature: signature.to_vec(),
            shape,
            data: vec![Expr::zero(); len],
            symmetries: Vec::new(),
        }
    }

    /// Fills every component from `f`, scheduled by `exec`.
    pub fn build<F>(
        name: impl Into<String>,
        signature: &[IndexSlot],
        p: usize,
        n: usize,
        exec: Execution,
        f: F,
    ) -> Result<Self, SymError>
    where
        F: Fn(&[usize]) -> Result<Expr, SymError> + Sync + Send,
    {
        let mut t = Self::zeros(name, signature, p, n);
        let shape = t.shape.clone();
        t.data = exec.try_map(t.data.len(), |k| f(&unravel(&shape, k)))?;
        Ok(t)
    }

    pub fn with_symmetry(mut self, s: Symmetry) -> Self {
        self.symmetries.push(s);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &[IndexSlot] {
        &self.signature
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn symmetries(&self) -> &[Symmetry] {
        &self.symmetries
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "rank mismatch for {}", self.name);
        idx.iter().zip(&self.shape).fold(0, |acc, (i, s)| {
            assert!(i < s, "index {idx:?} out of range for {} {:?}", self.name, self.shape);
            acc * s + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Expr) {
        let k = self.offset(idx);
        self.data[k] = value;
    }

    /// All `(index, component)` pairs in row-major order.
    pub fn components(&self) -> impl Iterator<Item = (Vec<usize>, &Expr)> + '_ {
        self.data.iter().enumerate().map(|(k, e)| (unravel(&self.shape, k), e))
    }

    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.data.len()).map(|k| unravel(&self.shape, k))
    }

    /// New tensor with the same signature and each component replaced.
    pub fn map<F>(&self, name: impl Into<String>, exec: Execution, f: F) -> Result<DTensor, SymError>
    where
        F: Fn(&[usize], &Expr) -> Result<Expr, SymError> + Sync + Send,
    {
        let data = exec.try_map(self.data.len(), |k| f(&unravel(&self.shape, k), &self.data[k]))?;
        Ok(DTensor {
            name: name.into(),
            signature: self.signature.clone(),
            shape: self.shape.clone(),
            data,
            symmetries: Vec::new(),
        })
    }

    pub fn all_zero_literal(&self) -> bool {
        self.data.iter().all(Expr::is_zero_literal)
    }

    /// `a[idx] ∓ a[swapped idx]` for every tagged symmetry, labelled by
    /// index key. Each defect should vanish.
    pub fn symmetry_defects(&self) -> Vec<(String, Expr)> {
        let mut out = Vec::new();
        for s in &self.symmetries {
            let (a, b, anti) = match *s {
                Symmetry::Symmetric(a, b) => (a, b, false),
                Symmetry::Antisymmetric(a, b) => (a, b, true),
            };
            for idx in self.indices() {
                if idx[a] > idx[b] || (idx[a] == idx[b] && !anti) {
                    continue;
                }
                let mut swapped = idx.clone();
                swapped.swap(a, b);
                let x = self.get(&idx).clone();
                let y = self.get(&swapped).clone();
                out.push((index_key(&idx), if anti { x + y } else { x - y }));
            }
        }
        out
    }
}

/// 1-based, comma-separated key of a 0-based index tuple.
pub fn index_key(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn unravel(shape: &[usize], mut k: usize) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for (slot, s) in idx.iter_mut().zip(shape).rev() {
        *slot = k % s;
        k /= s;
    }
    idx
}

/// Kronecker delta as an expression.
pub fn delta(a: usize, b: usize) -> Expr {
    if a == b {
        Expr::one()
    } else {
        Expr::zero()
    }
}
