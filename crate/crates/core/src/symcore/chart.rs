use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::SymError;

/// Bidegree of a generator: (form degree, internal/cohomological degree).
///
/// Commutation follows the bigraded convention: swapping `a` and `b` costs
/// `(-1)^(a.form*b.form + a.internal*b.internal)`. Singly graded charts put
/// everything in the `form` slot, where this is the usual Koszul rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    pub form: i32,
    pub internal: i32,
}

impl Degree {
    pub const ZERO: Degree = Degree { form: 0, internal: 0 };

    pub const fn new(form: i32, internal: i32) -> Self {
        Degree { form, internal }
    }

    pub fn total(self) -> i32 {
        self.form + self.internal
    }

    /// Exponent of the sign picked up when swapping two homogeneous factors.
    pub fn pairing(self, other: Degree) -> i64 {
        self.form as i64 * other.form as i64 + self.internal as i64 * other.internal as i64
    }

    /// True when `pairing(other)` is odd.
    pub fn anticommutes_with(self, other: Degree) -> bool {
        self.pairing(other).rem_euclid(2) == 1
    }

    /// Generators of odd total degree square to zero.
    pub fn is_odd(self) -> bool {
        self.total().rem_euclid(2) == 1
    }

    pub fn scale(self, k: i32) -> Degree {
        Degree::new(self.form * k, self.internal * k)
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        Degree::new(self.form + rhs.form, self.internal + rhs.internal)
    }
}

impl Sub for Degree {
    type Output = Degree;
    fn sub(self, rhs: Degree) -> Degree {
        Degree::new(self.form - rhs.form, self.internal - rhs.internal)
    }
}

impl Neg for Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree::new(-self.form, -self.internal)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.form, self.internal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: Degree,
}

/// Ordered list of generators. Declaration order fixes the canonical order of
/// factors inside every monomial.
#[derive(Clone, Debug)]
pub struct Chart {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for Chart {}

impl Chart {
    pub fn new(generators: Vec<Generator>) -> Result<Arc<Chart>, SymError> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(SymError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(Chart { generators, index }))
    }

    /// Singly graded chart from `(name, degree)` pairs.
    pub fn graded(spec: &[(&str, i32)]) -> Result<Arc<Chart>, SymError> {
        Chart::new(spec.iter().map(|(n, d)| Generator { name: n.to_string(), degree: Degree::new(*d, 0) }).collect())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.generators[i].degree
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, SymError> {
        self.position(name).ok_or_else(|| SymError::UnknownGenerator(name.to_string()))
    }
}
