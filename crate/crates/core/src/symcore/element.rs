use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::chart::{Chart, Degree};
use super::SymError;
use crate::scalar::Scalar;

/// Exponent vector over the chart's generators, in declaration order.
/// Exponents of odd generators are 0 or 1.
pub type Monomial = Vec<u32>;

/// Which side a graded derivative acts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A graded-commutative polynomial in normal form.
///
/// Each stored monomial is the product of its generators in chart order, and
/// every reordering sign has been folded into the coefficient, so two elements
/// are equal exactly when their term maps are equal.
#[derive(Clone, PartialEq)]
pub struct GradedElement<T: Scalar> {
    chart: Arc<Chart>,
    terms: BTreeMap<Monomial, T>,
}

fn sign_of<T: Scalar>(exponent: i64, value: T) -> T {
    if exponent.rem_euclid(2) == 1 {
        -value
    } else {
        value
    }
}

impl<T: Scalar> GradedElement<T> {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        GradedElement { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(chart: &Arc<Chart>, value: T) -> Self {
        let mut e = Self::zero(chart);
        e.add_term(vec![0; chart.len()], value);
        e
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Self::constant(chart, T::one())
    }

    pub fn generator_at(chart: &Arc<Chart>, index: usize) -> Self {
        let mut m = vec![0; chart.len()];
        m[index] = 1;
        let mut e = Self::zero(chart);
        e.add_term(m, T::one());
        e
    }

    pub fn generator(chart: &Arc<Chart>, name: &str) -> Result<Self, SymError> {
        Ok(Self::generator_at(chart, chart.require(name)?))
    }

    /// Builds an element from `(monomial, coefficient)` pairs where the
    /// monomial is already in canonical order.
    pub fn from_terms(chart: &Arc<Chart>, terms: impl IntoIterator<Item = (Monomial, T)>) -> Result<Self, SymError> {
        let mut e = Self::zero(chart);
        for (m, c) in terms {
            if m.len() != chart.len() {
                return Err(SymError::MonomialShape { expected: chart.len(), found: m.len() });
            }
            if m.iter().enumerate().any(|(i, &k)| k > 1 && chart.degree(i).is_odd()) {
                continue;
            }
            e.add_term(m, c);
        }
        Ok(e)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, T> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn same_chart(&self, other: &Self) -> Result<(), SymError> {
        if Arc::ptr_eq(&self.chart, &other.chart) || *self.chart == *other.chart {
            Ok(())
        } else {
            Err(SymError::ChartMismatch)
        }
    }

    pub fn monomial_degree(&self, m: &[u32]) -> Degree {
        m.iter().enumerate().fold(Degree::ZERO, |acc, (i, &k)| acc + self.chart.degree(i).scale(k as i32))
    }

    /// Degree of the element if all terms share one; `None` for zero or mixed.
    pub fn degree(&self) -> Option<Degree> {
        let mut it = self.terms.keys().map(|m| self.monomial_degree(m));
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous_of(&self, d: Degree) -> bool {
        self.terms.keys().all(|m| self.monomial_degree(m) == d)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        GradedElement {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&[u32]) -> bool) -> Self {
        GradedElement {
            chart: self.chart.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    /// Constant term.
    pub fn constant_term(&self) -> T {
        self.terms.get(&vec![0; self.chart.len()]).cloned().unwrap_or_else(T::zero)
    }

    fn mul_monomials(&self, a: &[u32], b: &[u32]) -> Option<(Monomial, bool)> {
        let n = a.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let k = a[i] + b[i];
            if k > 1 && self.chart.degree(i).is_odd() {
                return None;
            }
            out.push(k);
        }
        // moving each factor of b left past the factors of a with larger index
        let mut exponent: i64 = 0;
        let mut suffix = Degree::ZERO;
        let mut suffix_by_index = vec![Degree::ZERO; n + 1];
        for i in (0..n).rev() {
            suffix = suffix + self.chart.degree(i).scale(a[i] as i32);
            suffix_by_index[i] = suffix;
        }
        for h in 0..n {
            if b[h] == 0 {
                continue;
            }
            let dh = self.chart.degree(h).scale(b[h] as i32);
            exponent += dh.pairing(suffix_by_index[h + 1]);
        }
        Some((out, exponent.rem_euclid(2) == 1))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SymError> {
        self.same_chart(other)?;
        let mut out = Self::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = self.mul_monomials(ma, mb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SymError> {
        self.same_chart(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SymError> {
        self.try_add(&-other)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.chart);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Graded partial derivative with respect to generator `index`.
    pub fn derive_at(&self, index: usize, side: Side) -> Self {
        let dg = self.chart.degree(index);
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m[index];
            if e == 0 {
                continue;
            }
            let passed = match side {
                Side::Left => (0..index).fold(Degree::ZERO, |acc, h| acc + self.chart.degree(h).scale(m[h] as i32)),
                Side::Right => {
                    (index + 1..m.len()).fold(Degree::ZERO, |acc, h| acc + self.chart.degree(h).scale(m[h] as i32))
                }
            };
            let mut nm = m.clone();
            nm[index] -= 1;
            let coeff = c.clone() * T::from_i64(e as i64);
            out.add_term(nm, sign_of(dg.pairing(passed), coeff));
        }
        out
    }

    pub fn derive(&self, name: &str, side: Side) -> Result<Self, SymError> {
        Ok(self.derive_at(self.chart.require(name)?, side))
    }

    /// Applies the left derivation sending generator `g` to `images[g]`
    /// (`None` meaning zero): `D(f) = sum_g D(g) * dL_g f`.
    pub fn apply_derivation(&self, images: &[Option<GradedElement<T>>]) -> Self {
        assert_eq!(images.len(), self.chart.len(), "one image per generator");
        let mut out = Self::zero(&self.chart);
        for (g, image) in images.iter().enumerate() {
            let Some(image) = image else { continue };
            if image.is_zero() || self.terms.keys().all(|m| m[g] == 0) {
                continue;
            }
            let part = image * &self.derive_at(g, Side::Left);
            for (m, c) in part.terms {
                out.add_term(m, c);
            }
        }
        out
    }

    /// Substitutes values for degree-zero generators. Odd or positively
    /// graded generators cannot take scalar values.
    pub fn evaluate(&self, point: &HashMap<String, T>) -> Result<Self, SymError> {
        let mut by_index: Vec<Option<T>> = vec![None; self.chart.len()];
        for (name, value) in point {
            let i = self.chart.require(name)?;
            if self.chart.degree(i) != Degree::ZERO {
                return Err(SymError::NonScalarAssignment(name.clone()));
            }
            by_index[i] = Some(value.clone());
        }
        self.evaluate_indexed(&by_index)
    }

    pub(crate) fn evaluate_indexed(&self, values: &[Option<T>]) -> Result<Self, SymError> {
        let mut out = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut nm = m.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    for _ in 0..m[i] {
                        coeff = coeff * v.clone();
                    }
                    nm[i] = 0;
                }
            }
            out.add_term(nm, coeff);
        }
        Ok(out)
    }

    /// Homomorphic substitution of generators by elements of the same chart.
    pub fn substitute(&self, rules: &HashMap<String, GradedElement<T>>) -> Result<Self, SymError> {
        self.pullback(&self.chart.clone(), rules)
    }

    /// Homomorphic map into `target`: generators named in `rules` go to the
    /// given images, every other generator to the same-named generator of
    /// `target`.
    pub fn pullback(&self, target: &Arc<Chart>, rules: &HashMap<String, GradedElement<T>>) -> Result<Self, SymError> {
        let mut images: Vec<GradedElement<T>> = Vec::with_capacity(self.chart.len());
        for (i, g) in self.chart.generators().iter().enumerate() {
            let image = match rules.get(&g.name) {
                Some(img) => {
                    if !(Arc::ptr_eq(img.chart(), target) || **img.chart() == **target) {
                        return Err(SymError::ChartMismatch);
                    }
                    if !img.is_homogeneous_of(g.degree) {
                        return Err(SymError::DegreeMismatch {
                            generator: g.name.clone(),
                            expected: g.degree,
                            found: img.degree(),
                        });
                    }
                    img.clone()
                }
                None => {
                    let j = target.position(&g.name).ok_or_else(|| SymError::UnknownGenerator(g.name.clone()))?;
                    if target.degree(j) != g.degree {
                        return Err(SymError::DegreeMismatch {
                            generator: g.name.clone(),
                            expected: g.degree,
                            found: Some(target.degree(j)),
                        });
                    }
                    GradedElement::generator_at(target, j)
                }
            };
            debug_assert!(i == images.len());
            images.push(image);
        }
        let mut powers: HashMap<(usize, u32), GradedElement<T>> = HashMap::new();
        let mut out = GradedElement::zero(target);
        for (m, c) in &self.terms {
            let mut acc = GradedElement::constant(target, c.clone());
            for (i, &k) in m.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = powers.entry((i, k)).or_insert_with(|| images[i].pow(k)).clone();
                acc = &acc * &p;
                if acc.is_zero() {
                    break;
                }
            }
            for (nm, nc) in acc.terms {
                out.add_term(nm, nc);
            }
        }
        Ok(out)
    }

    /// Re-expresses the element in a chart whose generator list extends this
    /// one's by name.
    pub fn embed(&self, target: &Arc<Chart>) -> Result<Self, SymError> {
        let mut map = Vec::with_capacity(self.chart.len());
        for g in self.chart.generators() {
            let j = target.require(&g.name)?;
            if target.degree(j) != g.degree {
                return Err(SymError::DegreeMismatch {
                    generator: g.name.clone(),
                    expected: g.degree,
                    found: Some(target.degree(j)),
                });
            }
            map.push(j);
        }
        let monotone = map.windows(2).all(|w| w[0] < w[1]);
        if !monotone {
            return self.pullback(target, &HashMap::new());
        }
        let mut out = GradedElement::zero(target);
        for (m, c) in &self.terms {
            let mut nm = vec![0; target.len()];
            for (i, &k) in m.iter().enumerate() {
                nm[map[i]] = k;
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    pub fn map_coefficients<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GradedElement<U> {
        let mut out = GradedElement::zero(&self.chart);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for GradedElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> fmt::Display for GradedElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut first = true;
        for (m, c) in ordered {
            let mut factors = Vec::new();
            for (i, &k) in m.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.chart.generator(i).name.clone()),
                    _ => factors.push(format!("{}^{}", self.chart.generator(i).name, k)),
                }
            }
            let coeff = c.to_string();
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, coeff),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = c.is_one() || (-c.clone()).is_one();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if unit {
                write!(f, "{}", factors.join("*"))?;
            } else if mag.contains(['+', '-']) {
                write!(f, "({mag})*{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> Neg for &GradedElement<T> {
    type Output = GradedElement<T>;
    fn neg(self) -> GradedElement<T> {
        GradedElement {
            chart: self.chart.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<T: Scalar> Neg for GradedElement<T> {
    type Output = GradedElement<T>;
    fn neg(self) -> GradedElement<T> {
        -&self
    }
}

// Operator forms panic on chart mismatch; use the try_* methods at API
// boundaries where charts come from user input.
macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<T: Scalar> $tr<&GradedElement<T>> for &GradedElement<T> {
            type Output = GradedElement<T>;
            fn $method(self, rhs: &GradedElement<T>) -> GradedElement<T> {
                self.$try(rhs).expect("graded elements on different charts")
            }
        }
        impl<T: Scalar> $tr<GradedElement<T>> for GradedElement<T> {
            type Output = GradedElement<T>;
            fn $method(self, rhs: GradedElement<T>) -> GradedElement<T> {
                (&self).$try(&rhs).expect("graded elements on different charts")
            }
        }
        impl<T: Scalar> $tr<&GradedElement<T>> for GradedElement<T> {
            type Output = GradedElement<T>;
            fn $method(self, rhs: &GradedElement<T>) -> GradedElement<T> {
                (&self).$try(rhs).expect("graded elements on different charts")
            }
        }
        impl<T: Scalar> $tr<GradedElement<T>> for &GradedElement<T> {
            type Output = GradedElement<T>;
            fn $method(self, rhs: GradedElement<T>) -> GradedElement<T> {
                self.$try(&rhs).expect("graded elements on different charts")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
