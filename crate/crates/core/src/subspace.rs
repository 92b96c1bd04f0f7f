//! Row-reduced spans of formal sums.
//!
//! A [`Subspace`] keeps its spanning rows in reduced row-echelon form over an
//! ordered list of basis elements (its columns). Columns are appended when a
//! vector mentions a basis element for the first time, so an ambient
//! enumeration supplied up front fixes the column order, and anything else is
//! ordered by first appearance.

use std::collections::{BTreeMap, HashMap};

use crate::rational::Rational;
use crate::species::LinComb;

type Row = Vec<(usize, Rational)>;

#[derive(Clone, Debug)]
pub struct Subspace<B: Ord + Clone + std::hash::Hash> {
    columns: Vec<B>,
    index: HashMap<B, usize>,
    /// pivot column -> row (leading coefficient 1, zero in every other pivot column)
    rows: BTreeMap<usize, Row>,
}

impl<B: Ord + Clone + std::hash::Hash> Default for Subspace<B> {
    fn default() -> Self {
        Subspace { columns: Vec::new(), index: HashMap::new(), rows: BTreeMap::new() }
    }
}

impl<B: Ord + Clone + std::hash::Hash> Subspace<B> {
    pub fn new() -> Self {
        Self::default()
    }

    /// An empty span over a fixed ambient enumeration.
    pub fn with_ambient(ambient: Vec<B>) -> Self {
        let index = ambient.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Subspace { columns: ambient, index, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> &[B] {
        &self.columns
    }

    pub fn ambient_dim(&self) -> usize {
        self.columns.len()
    }

    fn column(&mut self, b: &B) -> usize {
        if let Some(&i) = self.index.get(b) {
            return i;
        }
        let i = self.columns.len();
        self.columns.push(b.clone());
        self.index.insert(b.clone(), i);
        i
    }

    /// Residual of `v` after eliminating every pivot; columns not yet known
    /// are reported through `unknown`.
    fn residual(&self, v: &LinComb<B>, unknown: &mut Vec<(B, Rational)>) -> BTreeMap<usize, Rational> {
        let mut w: BTreeMap<usize, Rational> = BTreeMap::new();
        for (b, c) in v.iter() {
            match self.index.get(b) {
                Some(&i) => {
                    w.insert(i, c.clone());
                }
                None => unknown.push((b.clone(), c.clone())),
            }
        }
        let hits: Vec<(usize, Rational)> = w
            .iter()
            .filter(|(col, _)| self.rows.contains_key(col))
            .map(|(c, x)| (*c, x.clone()))
            .collect();
        for (col, factor) in hits {
            let row = &self.rows[&col];
            for (j, x) in row {
                let delta = x * &factor;
                match w.entry(*j) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let val = e.get() - &delta;
                        if val.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = val;
                        }
                    }
                }
            }
        }
        w
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &LinComb<B>) -> bool {
        let mut unknown = Vec::new();
        let w = self.residual(v, &mut unknown);
        w.is_empty() && unknown.is_empty()
    }

    /// The reduced form of `v` modulo the span (zero iff `v` is contained).
    pub fn reduce(&self, v: &LinComb<B>) -> LinComb<B> {
        let mut unknown = Vec::new();
        let w = self.residual(v, &mut unknown);
        let mut out: LinComb<B> =
            w.into_iter().map(|(i, c)| (self.columns[i].clone(), c)).collect();
        for (b, c) in unknown {
            out.add_term(b, c);
        }
        out
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &LinComb<B>) -> bool {
        if v.is_zero() {
            return false;
        }
        let mut unknown = Vec::new();
        let mut w = self.residual(v, &mut unknown);
        for (b, c) in unknown {
            let i = self.column(&b);
            w.insert(i, c);
        }
        let Some((&lead, lead_coeff)) = w.iter().next() else {
            return false;
        };
        let inv = lead_coeff.recip();
        let new_row: Row = w.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
        for row in self.rows.values_mut() {
            let Ok(pos) = row.binary_search_by_key(&lead, |(j, _)| *j) else {
                continue;
            };
            let factor = row[pos].1.clone();
            *row = axpy(row, &new_row, &factor);
        }
        self.rows.insert(lead, new_row);
        true
    }

    /// The row-reduced basis, in pivot order.
    pub fn basis(&self) -> Vec<LinComb<B>> {
        self.rows
            .values()
            .map(|row| row.iter().map(|(j, x)| (self.columns[*j].clone(), x.clone())).collect())
            .collect()
    }

    /// Pivot basis elements, in pivot order.
    pub fn pivots(&self) -> Vec<B> {
        self.rows.keys().map(|&j| self.columns[j].clone()).collect()
    }

    /// Rows as dense vectors over the current columns.
    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .values()
            .map(|row| {
                let mut dense = vec![Rational::zero(); self.columns.len()];
                for (j, x) in row {
                    dense[*j] = x.clone();
                }
                dense
            })
            .collect()
    }

    /// A basis of the vectors orthogonal to every row under the dot product
    /// of the columns.
    pub fn annihilator(&self) -> Vec<LinComb<B>> {
        (0..self.columns.len())
            .filter(|j| !self.rows.contains_key(j))
            .map(|j| {
                let mut v = LinComb::basis(self.columns[j].clone());
                for (&p, row) in &self.rows {
                    if let Ok(pos) = row.binary_search_by_key(&j, |(k, _)| *k) {
                        v.add_term(self.columns[p].clone(), -row[pos].1.clone());
                    }
                }
                v
            })
            .collect()
    }

    /// Basis elements of `ambient` that extend the span to everything, chosen
    /// greedily in the given order.
    pub fn complement_representatives(&self, ambient: &[B]) -> Vec<B> {
        let mut work = self.clone();
        let mut out = Vec::new();
        for b in ambient {
            if work.insert(&LinComb::basis(b.clone())) {
                out.push(b.clone());
            }
        }
        out
    }
}

/// `row - factor * other`, merged over sorted sparse rows.
fn axpy(row: &Row, other: &Row, factor: &Rational) -> Row {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < other.len() {
        let take_row = k >= other.len() || (i < row.len() && row[i].0 < other[k].0);
        let take_other = i >= row.len() || (k < other.len() && other[k].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_other {
            out.push((other[k].0, -(&other[k].1 * factor)));
            k += 1;
        } else {
            let val = &row[i].1 - &(&other[k].1 * factor);
            if !val.is_zero() {
                out.push((row[i].0, val));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

/// Spans keyed by a grade (arity, or arity plus an additive weight).
#[derive(Clone, Debug)]
pub struct GradedSubspace<K: Ord + Clone, B: Ord + Clone + std::hash::Hash> {
    grades: BTreeMap<K, Subspace<B>>,
}

impl<K: Ord + Clone, B: Ord + Clone + std::hash::Hash> Default for GradedSubspace<K, B> {
    fn default() -> Self {
        GradedSubspace { grades: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, B: Ord + Clone + std::hash::Hash> GradedSubspace<K, B> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_ambient(&mut self, key: K, ambient: Vec<B>) {
        let mut fresh = Subspace::with_ambient(ambient);
        if let Some(old) = self.grades.get(&key) {
            for v in old.basis() {
                fresh.insert(&v);
            }
        }
        self.grades.insert(key, fresh);
    }

    /// Inserts `v` into the grade `key`; returns whether the rank grew.
    pub fn span_insert(&mut self, key: K, v: &LinComb<B>) -> bool {
        if v.is_zero() {
            return false;
        }
        self.grades.entry(key).or_default().insert(v)
    }

    pub fn contains(&self, key: &K, v: &LinComb<B>) -> bool {
        if v.is_zero() {
            return true;
        }
        self.grades.get(key).is_some_and(|s| s.contains(v))
    }

    pub fn grade(&self, key: &K) -> Option<&Subspace<B>> {
        self.grades.get(key)
    }

    pub fn grade_mut(&mut self, key: K) -> &mut Subspace<B> {
        self.grades.entry(key).or_default()
    }

    pub fn rank(&self, key: &K) -> usize {
        self.grades.get(key).map_or(0, |s| s.rank())
    }

    pub fn grades(&self) -> impl Iterator<Item = (&K, &Subspace<B>)> {
        self.grades.iter()
    }

    pub fn complement_representatives(&self, key: &K, ambient: &[B]) -> Vec<B> {
        match self.grades.get(key) {
            Some(s) => s.complement_representatives(ambient),
            None => Subspace::new().complement_representatives(ambient),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vec_of(coeffs: &[i64]) -> LinComb<usize> {
        coeffs.iter().enumerate().map(|(i, &c)| (i, Rational::from_int(c))).collect()
    }

    #[test]
    fn annihilator_is_orthogonal_and_complementary() {
        let mut s = Subspace::with_ambient((0..4).collect());
        s.insert(&vec_of(&[1, 2, 0, 1]));
        s.insert(&vec_of(&[0, 1, 1, 3]));
        let ann = s.annihilator();
        assert_eq!(ann.len(), 2);
        for a in &ann {
            for r in [vec_of(&[1, 2, 0, 1]), vec_of(&[0, 1, 1, 3])] {
                assert!(a.inner_product(&r).is_zero());
            }
        }
    }

    #[test]
    fn insert_zero_and_repeat() {
        let mut s = Subspace::<usize>::new();
        assert!(!s.insert(&LinComb::zero()));
        let v = vec_of(&[1, 2, 0]);
        assert!(s.insert(&v));
        assert!(!s.insert(&v));
        assert!(!s.insert(&v.scale(&Rational::new(-3, 7))));
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn complement_of_zero_and_full() {
        let s = Subspace::<&str>::with_ambient(vec!["g1", "g2"]);
        assert_eq!(s.complement_representatives(&["g1", "g2"]), vec!["g1", "g2"]);
        let mut full = s.clone();
        full.insert(&LinComb::from_terms([("g1", Rational::one()), ("g2", Rational::one())]));
        full.insert(&LinComb::from_terms([("g1", Rational::one()), ("g2", -Rational::one())]));
        assert!(full.complement_representatives(&["g1", "g2"]).is_empty());
    }

    #[test]
    fn rows_are_reduced() {
        let mut s = Subspace::<usize>::new();
        s.insert(&vec_of(&[2, 4, 6, 0]));
        s.insert(&vec_of(&[0, 1, 1, 1]));
        s.insert(&vec_of(&[1, 0, 0, 5]));
        let rows = s.dense_rows();
        let pivots: Vec<usize> =
            rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (i, p) in pivots.iter().enumerate() {
            assert!(rows[i][*p].is_one());
            for (k, r) in rows.iter().enumerate() {
                if k != i {
                    assert!(r[*p].is_zero());
                }
            }
        }
        assert!(s.contains(&vec_of(&[3, 6, 8, 7])));
    }

    proptest! {
        #[test]
        fn rank_ignores_order_and_reduction_is_idempotent(
            rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..7),
            seed in any::<u64>(),
        ) {
            let vs: Vec<LinComb<usize>> = rows.iter().map(|r| vec_of(r)).collect();
            let ambient: Vec<usize> = (0..5).collect();
            let mut a = Subspace::with_ambient(ambient.clone());
            for v in &vs { a.insert(v); }
            let mut shuffled = vs.clone();
            use rand::{seq::SliceRandom, SeedableRng};
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let mut b = Subspace::with_ambient(ambient.clone());
            for v in &shuffled { b.insert(v); }
            prop_assert_eq!(a.rank(), b.rank());
            for v in &vs { prop_assert!(b.contains(v)); }
            prop_assert_eq!(a.basis(), b.basis());
            let mut again = Subspace::with_ambient(ambient);
            for v in a.basis() { again.insert(&v); }
            prop_assert_eq!(a.basis(), again.basis());
        }
    }
}
