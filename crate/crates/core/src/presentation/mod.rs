//! Free operads on binary generators, quadratic presentations, Koszul duality
//! and Hilbert series.

mod ideal;
mod series;
mod sp;

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lab::Operad;
use crate::species::{standard_labels, Bijection, Label, LinComb, Structure};

pub use ideal::{ideal_closure, koszul_pair, orthogonal_complement, quotient_dims, Presentation};
pub use series::{check_koszul_inverse, series_sp_dual, PowerSeries};
pub use sp::{evaluate, sp_dual_presentation, sp_generators, sp_presentation, sp_relations, sp_dual_relations};

/// A binary generator. The transposition of its two inputs acts by `+1`, or
/// by `-1` when `odd`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub name: String,
    pub odd: bool,
}

/// A species of binary generators, each an eigenvector of the transposition.
///
/// An involutive action is diagonalizable over ℚ with eigenvalues ±1, so a
/// basis of eigenvectors loses no generality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpecies {
    generators: Vec<Generator>,
}

impl GeneratorSpecies {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() || g.name.contains(['(', ')', ',', ' ']) {
                return Err(Error::InvalidSpecies(format!("bad generator name {:?}", g.name)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidSpecies(format!("duplicate generator {}", g.name)));
            }
        }
        if generators.is_empty() {
            return Err(Error::InvalidSpecies("no generators".into()));
        }
        Ok(GeneratorSpecies { generators })
    }

    /// Generators fixed by the transposition.
    pub fn symmetric(names: &[&str]) -> Result<Self> {
        Self::new(names.iter().map(|n| Generator { name: n.to_string(), odd: false }).collect())
    }

    /// The sign-twisted dual: `x ↦ sign(σ) x∘S[σ⁻¹]`, so parities flip.
    pub fn dual(&self) -> Self {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator { name: dual_name(&g.name), odd: !g.odd })
            .collect();
        GeneratorSpecies { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn get(&self, name: &str) -> Result<&Generator> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::InvalidSpecies(format!("unknown generator {name}")))
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('∨') {
        Some(primal) => primal.to_string(),
        None => format!("{name}∨"),
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Node {
    Leaf(Label),
    Op { generator: Generator, children: Box<[Node; 2]> },
}

impl Node {
    fn min_leaf(&self) -> &Label {
        match self {
            Node::Leaf(l) => l,
            Node::Op { children, .. } => children[0].min_leaf(),
        }
    }

    /// Puts children in least-leaf order; returns whether an odd number of
    /// odd generators were swapped.
    fn canonicalize(&mut self) -> bool {
        let Node::Op { generator, children } = self else { return false };
        let mut neg = children[0].canonicalize() ^ children[1].canonicalize();
        if children[0].min_leaf() > children[1].min_leaf() {
            children.swap(0, 1);
            neg ^= generator.odd;
        }
        neg
    }

    fn leaves(&self, out: &mut Vec<Label>) {
        match self {
            Node::Leaf(l) => out.push(l.clone()),
            Node::Op { children, .. } => children.iter().for_each(|c| c.leaves(out)),
        }
    }

    fn relabel(&mut self, sigma: &Bijection) {
        match self {
            Node::Leaf(l) => *l = sigma.apply(l).expect("domain checked").clone(),
            Node::Op { children, .. } => children.iter_mut().for_each(|c| c.relabel(sigma)),
        }
    }

    fn internal(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Op { children, .. } => 1 + children[0].internal() + children[1].internal(),
        }
    }

    /// Replaces leaf `hole` by `sub`; false when there is no such leaf.
    fn substitute(&mut self, hole: &Label, sub: &Node) -> bool {
        match self {
            Node::Leaf(l) if l == hole => {
                *self = sub.clone();
                true
            }
            Node::Leaf(_) => false,
            Node::Op { children, .. } => {
                children[0].substitute(hole, sub) || children[1].substitute(hole, sub)
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(l) => write!(f, "{l}"),
            Node::Op { generator, children } => {
                write!(f, "{}({},{})", generator.name, children[0], children[1])
            }
        }
    }
}

/// A nonplanar binary tree with labeled leaves and generator-decorated
/// internal nodes, stored with children in least-leaf order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeTree {
    root: Node,
    leaves: Vec<Label>,
}

impl FreeTree {
    pub fn leaf(l: Label) -> FreeTree {
        FreeTree { leaves: vec![l.clone()], root: Node::Leaf(l) }
    }

    fn from_node(mut root: Node) -> (bool, FreeTree) {
        let neg = root.canonicalize();
        let mut leaves = Vec::new();
        root.leaves(&mut leaves);
        leaves.sort();
        (neg, FreeTree { root, leaves })
    }

    /// `generator(left, right)` in canonical form, with the sign picked up by
    /// reordering.
    pub fn node(generator: &Generator, left: FreeTree, right: FreeTree) -> Result<(bool, FreeTree)> {
        if left.leaves.iter().any(|l| right.leaves.binary_search(l).is_ok()) {
            return Err(Error::OverlappingVertices(format!("{left} and {right}")));
        }
        Ok(Self::from_node(Node::Op {
            generator: generator.clone(),
            children: Box::new([left.root, right.root]),
        }))
    }

    /// `generator(a, b)` on two leaves, as a signed formal sum.
    pub fn corolla(generator: &Generator, a: &str, b: &str) -> Result<LinComb<FreeTree>> {
        let (neg, t) = Self::node(generator, Self::leaf(Label::new(a)?), Self::leaf(Label::new(b)?))?;
        Ok(signed(neg, t))
    }

    /// Number of internal nodes.
    pub fn internal_nodes(&self) -> usize {
        self.root.internal()
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.root, Node::Leaf(_))
    }

    /// For a two-node tree: the generator at the root, the leaf directly
    /// under the root, and the generator below.
    pub fn quadratic_parts(&self) -> Option<(&Generator, &Label, &Generator)> {
        let Node::Op { generator: top, children } = &self.root else { return None };
        match (&children[0], &children[1]) {
            (Node::Leaf(l), Node::Op { generator: low, children: c })
            | (Node::Op { generator: low, children: c }, Node::Leaf(l))
                if matches!((&c[0], &c[1]), (Node::Leaf(_), Node::Leaf(_))) =>
            {
                Some((top, l, low))
            }
            _ => None,
        }
    }
}

pub(crate) fn signed(neg: bool, t: FreeTree) -> LinComb<FreeTree> {
    let mut out = LinComb::basis(t.clone());
    if neg {
        out = -out;
    }
    out
}

impl Structure for FreeTree {
    fn vertices(&self) -> &[Label] {
        &self.leaves
    }

    fn transport(&self, sigma: &Bijection) -> Result<(bool, Self)> {
        if !sigma.has_domain(&self.leaves) {
            return Err(Error::DomainMismatch(self.to_string()));
        }
        let mut root = self.root.clone();
        root.relabel(sigma);
        Ok(Self::from_node(root))
    }
}

impl fmt::Display for FreeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)
    }
}

impl fmt::Debug for FreeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `t1 ∘_hole t2`: `t2` replaces the leaf `hole`.
pub fn graft(t1: &FreeTree, hole: &Label, t2: &FreeTree) -> Result<(bool, FreeTree)> {
    if t1.leaves.binary_search(hole).is_err() {
        return Err(Error::MissingHole { hole: hole.to_string(), outer: t1.to_string() });
    }
    if t2.leaves.iter().any(|l| l != hole && t1.leaves.binary_search(l).is_ok()) {
        return Err(Error::OverlappingVertices(format!("{t1} and {t2}")));
    }
    if t2.leaves.binary_search(hole).is_ok() && t2.leaves.len() > 1 {
        return Err(Error::HoleInInner { hole: hole.to_string(), inner: t2.to_string() });
    }
    let mut root = t1.root.clone();
    root.substitute(hole, &t2.root);
    Ok(FreeTree::from_node(root))
}

/// Nonplanar binary trees with leaves `labels`, one per shape and decoration.
fn trees_on(species: &GeneratorSpecies, labels: &[Label]) -> Vec<FreeTree> {
    if labels.len() == 1 {
        return vec![FreeTree::leaf(labels[0].clone())];
    }
    let (first, rest) = labels.split_first().expect("nonempty");
    let mut out = Vec::new();
    // the part holding the least label comes first; the other part is nonempty
    for mask in 0..(1u32 << rest.len()) - 1 {
        let mut left = vec![first.clone()];
        let mut right = Vec::new();
        for (i, l) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l.clone());
            } else {
                right.push(l.clone());
            }
        }
        let lefts = trees_on(species, &left);
        let rights = trees_on(species, &right);
        for g in species.generators() {
            for l in &lefts {
                for r in &rights {
                    let root = Node::Op { generator: g.clone(), children: Box::new([l.root.clone(), r.root.clone()]) };
                    out.push(FreeTree::from_node(root).1);
                }
            }
        }
    }
    out
}

/// The basis of the free operad on `a, b, ...` of arity `n`, sorted.
pub fn free_basis(species: &GeneratorSpecies, n: usize) -> Vec<FreeTree> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = trees_on(species, &standard_labels(n));
    out.sort();
    out
}

/// The free operad with grafting as composition.
#[derive(Clone, Debug)]
pub struct FreeOperad {
    species: GeneratorSpecies,
}

impl FreeOperad {
    pub fn new(species: GeneratorSpecies) -> Self {
        FreeOperad { species }
    }

    pub fn species(&self) -> &GeneratorSpecies {
        &self.species
    }
}

impl Operad for FreeOperad {
    type Basis = FreeTree;

    fn name(&self) -> String {
        let names: Vec<&str> = self.species.generators.iter().map(|g| g.name.as_str()).collect();
        format!("Free({})", names.join(","))
    }

    fn compose_at(&self, x: &FreeTree, hole: &Label, y: &FreeTree) -> Result<LinComb<FreeTree>> {
        let (neg, t) = graft(x, hole, y)?;
        Ok(signed(neg, t))
    }

    fn unit(&self, v: &Label) -> FreeTree {
        FreeTree::leaf(v.clone())
    }

    fn weight(&self, b: &FreeTree) -> usize {
        b.internal_nodes()
    }

    fn max_weight(&self, n: usize) -> Option<usize> {
        Some(n.saturating_sub(1))
    }

    fn ambient(&self, n: usize, weight: usize) -> Vec<FreeTree> {
        if weight + 1 == n {
            free_basis(&self.species, n)
        } else {
            Vec::new()
        }
    }

    fn random_element(&self, vertices: &[Label], rng: &mut ChaCha8Rng) -> FreeTree {
        let mut nodes: Vec<Node> = vertices.iter().cloned().map(Node::Leaf).collect();
        while nodes.len() > 1 {
            let i = rng.gen_range(0..nodes.len());
            let a = nodes.swap_remove(i);
            let j = rng.gen_range(0..nodes.len());
            let b = nodes.swap_remove(j);
            let g = self.species.generators[rng.gen_range(0..self.species.generators.len())].clone();
            nodes.push(Node::Op { generator: g, children: Box::new([a, b]) });
        }
        FreeTree::from_node(nodes.pop().expect("nonempty vertex set")).1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{check_axioms, random_samples, Diagram};
    use crate::species::lbl;

    /// `1·3·…·(2n-3)`
    fn odd_product(n: usize) -> usize {
        (1..n).map(|k| 2 * k - 1).product()
    }

    #[test]
    fn free_dimensions() {
        let one = GeneratorSpecies::symmetric(&["m"]).unwrap();
        let two = GeneratorSpecies::symmetric(&["P", "S"]).unwrap();
        assert_eq!(free_basis(&one, 2).len(), 1);
        assert_eq!(free_basis(&one, 4).len(), 15);
        assert_eq!(free_basis(&two, 3).len(), 12);
        for n in 2..=6 {
            // (2n-3)!! nonplanar binary trees, times a decoration per internal node
            assert_eq!(free_basis(&one, n).len(), odd_product(n));
            assert_eq!(free_basis(&two, n).len(), odd_product(n) << (n - 1));
            assert_eq!(free_basis(&two.dual(), n).len(), free_basis(&two, n).len());
        }
    }

    #[test]
    fn odd_generators_change_sign_under_swap() {
        let sp = GeneratorSpecies::symmetric(&["P", "S"]).unwrap().dual();
        let p = sp.get("P∨").unwrap();
        let ab = FreeTree::corolla(p, "a", "b").unwrap();
        let ba = FreeTree::corolla(p, "b", "a").unwrap();
        assert_eq!(ab, -ba);
        let even = GeneratorSpecies::symmetric(&["P"]).unwrap();
        let p = even.get("P").unwrap();
        assert_eq!(FreeTree::corolla(p, "a", "b").unwrap(), FreeTree::corolla(p, "b", "a").unwrap());
        assert_eq!(sp.dual(), GeneratorSpecies::symmetric(&["P", "S"]).unwrap());
    }

    #[test]
    fn grafting() {
        let sp = GeneratorSpecies::symmetric(&["m"]).unwrap();
        let m = sp.get("m").unwrap();
        let t1 = FreeTree::node(m, FreeTree::leaf(lbl("a")), FreeTree::leaf(Label::hole())).unwrap().1;
        let t2 = FreeTree::node(m, FreeTree::leaf(lbl("c")), FreeTree::leaf(lbl("b"))).unwrap().1;
        let (neg, t) = graft(&t1, &Label::hole(), &t2).unwrap();
        assert!(!neg);
        assert_eq!(t.to_string(), "m(a,m(b,c))");
        assert_eq!(t.internal_nodes(), 2);
        // unit
        let (_, u) = graft(&FreeTree::leaf(Label::hole()), &Label::hole(), &t2).unwrap();
        assert_eq!(u, t2);
        assert!(matches!(graft(&t2, &Label::hole(), &t1), Err(Error::MissingHole { .. })));
    }

    #[test]
    fn grafting_satisfies_the_axioms() {
        for species in [
            GeneratorSpecies::symmetric(&["P", "S"]).unwrap(),
            GeneratorSpecies::symmetric(&["P", "S"]).unwrap().dual(),
        ] {
            let op = FreeOperad::new(species);
            for d in [Diagram::Sequential, Diagram::Parallel, Diagram::Unit] {
                let samples = random_samples(&op, d, 40, 11);
                let report = check_axioms(&op, &samples).unwrap();
                assert!(report.passed(), "{:?}", report.failures.first());
            }
        }
    }

    #[test]
    fn invalid_species() {
        assert!(GeneratorSpecies::symmetric(&[]).is_err());
        assert!(GeneratorSpecies::symmetric(&["P", "P"]).is_err());
        assert!(GeneratorSpecies::symmetric(&["P(x"]).is_err());
    }
}
