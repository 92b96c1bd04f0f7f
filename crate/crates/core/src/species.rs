//! Labels, bijections, and finite formal sums over labeled structures.
//!
//! A *structure* is a basis element of a linear species: something built on
//! a finite vertex set that can be transported along bijections. Transport
//! may introduce a sign (free-operad trees with antisymmetric generators do),
//! so it reports one alongside the image.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The reserved label of a composition slot.
pub const HOLE: &str = "*";

const RESERVED_CHARS: &[char] = &[',', ';', '=', '-', '.', '>', '!', '(', ')', ' ', '\t', '\n'];

/// A vertex label. Nonempty, free of the characters used by the text formats.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(s: &str) -> Result<Label> {
        if s.is_empty() || s.contains(RESERVED_CHARS) {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        Ok(Label(Arc::from(s)))
    }

    pub fn hole() -> Label {
        Label(Arc::from(HOLE))
    }

    pub fn is_hole(&self) -> bool {
        &*self.0 == HOLE
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for building a label in code and tests; panics on invalid input.
pub fn lbl(s: &str) -> Label {
    Label::new(s).unwrap_or_else(|e| panic!("{e}"))
}

/// Builds a list of labels from a slice of strings; panics on invalid input.
pub fn labels(names: &[&str]) -> Vec<Label> {
    names.iter().map(|s| lbl(s)).collect()
}

/// The standard label set `a, b, c, ...` used for ambient enumerations.
pub fn standard_labels(n: usize) -> Vec<Label> {
    assert!(n <= 26, "standard labels stop at z");
    (0..n).map(|i| lbl(&((b'a' + i as u8) as char).to_string())).collect()
}

/// A bijection between two finite label sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bijection {
    map: BTreeMap<Label, Label>,
}

impl Bijection {
    pub fn new<I: IntoIterator<Item = (Label, Label)>>(pairs: I) -> Result<Bijection> {
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (k, v) in pairs {
            if !image.insert(v.clone()) {
                return Err(Error::NotBijection(format!("{v} is hit twice")));
            }
            if let Some(prev) = map.insert(k.clone(), v) {
                return Err(Error::NotBijection(format!("{k} is mapped twice (also to {prev})")));
            }
        }
        Ok(Bijection { map })
    }

    pub fn identity(domain: &[Label]) -> Bijection {
        Bijection { map: domain.iter().map(|l| (l.clone(), l.clone())).collect() }
    }

    /// The bijection sending `from[i]` to `to[i]`.
    pub fn zip(from: &[Label], to: &[Label]) -> Result<Bijection> {
        if from.len() != to.len() {
            return Err(Error::NotBijection("length mismatch".into()));
        }
        Bijection::new(from.iter().cloned().zip(to.iter().cloned()))
    }

    /// The identity on `domain` except that `from` is sent to `to`.
    pub fn rename(domain: &[Label], from: &Label, to: &Label) -> Result<Bijection> {
        Bijection::new(domain.iter().map(|l| {
            let image = if l == from { to.clone() } else { l.clone() };
            (l.clone(), image)
        }))
    }

    pub fn apply(&self, l: &Label) -> Option<&Label> {
        self.map.get(l)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Label> {
        self.map.keys()
    }

    pub fn codomain(&self) -> BTreeSet<Label> {
        self.map.values().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    pub fn inverse(&self) -> Bijection {
        Bijection { map: self.map.iter().map(|(k, v)| (v.clone(), k.clone())).collect() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Bijection) -> Result<Bijection> {
        let mut map = BTreeMap::new();
        for (k, mid) in &other.map {
            let v = self
                .map
                .get(mid)
                .ok_or_else(|| Error::NotBijection(format!("{mid} is outside the domain")))?;
            map.insert(k.clone(), v.clone());
        }
        if map.len() != self.map.len() {
            return Err(Error::NotBijection("codomain and domain differ".into()));
        }
        Ok(Bijection { map })
    }

    /// Whether the domain is exactly the given sorted vertex list.
    pub fn has_domain(&self, vertices: &[Label]) -> bool {
        self.map.len() == vertices.len() && vertices.iter().all(|v| self.map.contains_key(v))
    }

    /// All bijections from `domain` onto itself, in lexicographic order of images.
    pub fn all_permutations(domain: &[Label]) -> Vec<Bijection> {
        permutations(domain.len())
            .into_iter()
            .map(|p| Bijection {
                map: domain.iter().cloned().zip(p.into_iter().map(|i| domain[i].clone())).collect(),
            })
            .collect()
    }
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.map.iter()).finish()
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// A basis element of a linear species.
pub trait Structure: Clone + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync {
    /// The vertex set, sorted.
    fn vertices(&self) -> &[Label];

    /// Transports the structure along `sigma`, whose domain must be the vertex
    /// set. Returns `(negated, image)`.
    fn transport(&self, sigma: &Bijection) -> Result<(bool, Self)>;

    fn arity(&self) -> usize {
        self.vertices().len()
    }
}

/// A finite formal sum with exact rational coefficients; zero coefficients are
/// never stored and terms iterate in the basis order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b, Rational::one());
        LinComb { terms }
    }

    pub fn term(b: B, c: Rational) -> Self {
        let mut x = Self::zero();
        x.add_term(b, c);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Rational)>>(terms: I) -> Self {
        let mut x = Self::zero();
        for (b, c) in terms {
            x.add_term(b, c);
        }
        x
    }

    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<B>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
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

    pub fn coeff(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// The basis elements with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<B> {
        self.terms.keys().cloned().collect()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().sum()
    }

    /// The scalar product making the basis orthonormal.
    pub fn inner_product(&self, other: &LinComb<B>) -> Rational {
        let (small, large) =
            if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .terms
            .iter()
            .filter_map(|(b, x)| large.terms.get(b).map(|y| x * y))
            .sum()
    }

    /// Linear extension of a map on basis elements.
    pub fn flat_map<C, F>(&self, mut f: F) -> LinComb<C>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> LinComb<C>,
    {
        let mut out = LinComb::zero();
        for (b, x) in &self.terms {
            out.add_scaled(&f(b), x);
        }
        out
    }

    /// Fallible linear extension of a map on basis elements.
    pub fn try_flat_map<C, F>(&self, mut f: F) -> Result<LinComb<C>>
    where
        C: Ord + Clone,
        F: FnMut(&B) -> Result<LinComb<C>>,
    {
        let mut out = LinComb::zero();
        for (b, x) in &self.terms {
            out.add_scaled(&f(b)?, x);
        }
        Ok(out)
    }

    pub fn into_terms(self) -> BTreeMap<B, Rational> {
        self.terms
    }
}

impl<B: Structure> LinComb<B> {
    /// Transports every basis element along `sigma`.
    pub fn relabel(&self, sigma: &Bijection) -> Result<LinComb<B>> {
        let mut out = LinComb::zero();
        for (b, x) in &self.terms {
            if !sigma.has_domain(b.vertices()) {
                return Err(Error::DomainMismatch(b.to_string()));
            }
            let (neg, image) = b.transport(sigma)?;
            out.add_term(image, if neg { -x } else { x.clone() });
        }
        Ok(out)
    }

    /// The common vertex set of the support, if there is one.
    pub fn vertex_set(&self) -> Result<Option<Vec<Label>>> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Ok(None) };
        let vs = first.vertices();
        for b in it {
            if b.vertices() != vs {
                return Err(Error::MixedVertexSets(format!("{first} vs {b}")));
            }
        }
        Ok(Some(vs.to_vec()))
    }
}

/// The set of basis elements with nonzero coefficient.
pub fn support<B: Ord + Clone>(x: &LinComb<B>) -> BTreeSet<B> {
    x.support()
}

pub fn inner_product<B: Ord + Clone>(x: &LinComb<B>, y: &LinComb<B>) -> Rational {
    x.inner_product(y)
}

pub fn relabel<B: Structure>(x: &LinComb<B>, sigma: &Bijection) -> Result<LinComb<B>> {
    x.relabel(sigma)
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self += rhs;
        self
    }
}

impl<B: Ord + Clone> Add<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<B: Ord + Clone> AddAssign for LinComb<B> {
    fn add_assign(&mut self, rhs: LinComb<B>) {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
    }
}

impl<B: Ord + Clone> SubAssign for LinComb<B> {
    fn sub_assign(&mut self, rhs: LinComb<B>) {
        for (b, c) in rhs.terms {
            self.add_term(b, -c);
        }
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self -= rhs;
        self
    }
}

impl<B: Ord + Clone> Sub<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        LinComb { terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect() }
    }
}

impl<B: Ord + Clone> Mul<&Rational> for &LinComb<B> {
    type Output = LinComb<B>;
    fn mul(self, rhs: &Rational) -> LinComb<B> {
        self.scale(rhs)
    }
}

impl<B: Ord + Clone> FromIterator<(B, Rational)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        LinComb::from_terms(iter)
    }
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·[{b}]")?;
        }
        Ok(())
    }
}

impl<B: Ord + fmt::Display> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
