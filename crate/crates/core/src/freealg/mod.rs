//! The free nonassociative algebra on decorated variables.
//!
//! Monomials are full binary bracket trees whose leaves carry a variable
//! `x_i` (1-based) and an optional decoration: either a basis element of the
//! acting algebra (`x_i^h2`) or a grade label (`x_i^(t)`). Polynomials are
//! finite rational combinations of monomials. Nothing is ever normalized
//! across brackets: `x1*(x2*x3)` and `(x1*x2)*x3` are different monomials,
//! which is the whole point of working in the free *nonassociative* algebra.
//!
//! Submodules: `parse` for the expression grammar and printing, `subst`
//! for evaluating polynomials in a concrete algebra, `generic` for the
//! generic-element membership test that needs no multilinearity.

mod generic;
mod parse;
mod subst;

pub use generic::{generic_span_dimension, is_identity_generic, GenericEvaluationRing, MPoly};
pub use parse::parse_polynomial;
pub use subst::{
    decoration_apply, decoration_column, evaluate_monomial_on_basis_tuple,
    is_identity_multilinear, substitute, ActionContext,
};

use crate::error::{Error, Result};
use crate::exactlin::Rational;
use itertools::Itertools;
use num::{BigUint, One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Marking attached to one variable occurrence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Decoration {
    /// Plain variable; evaluates to the assigned element unchanged.
    None,
    /// Apply the 0-based basis element of the acting algebra (written
    /// `^h1`, `^h2`, ... in expressions, 1-based there).
    HBasis(usize),
    /// Project onto the component of the named grade (written `^(t)`).
    Grade(String),
}

/// A bracket-tree monomial in the free nonassociative algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Monomial {
    Leaf { var: usize, decoration: Decoration },
    Product(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    pub fn leaf(var: usize, decoration: Decoration) -> Self {
        Monomial::Leaf { var, decoration }
    }

    pub fn product(left: Monomial, right: Monomial) -> Self {
        Monomial::Product(Box::new(left), Box::new(right))
    }

    /// Number of variable occurrences.
    pub fn degree(&self) -> usize {
        match self {
            Monomial::Leaf { .. } => 1,
            Monomial::Product(l, r) => l.degree() + r.degree(),
        }
    }

    /// Variables left to right, with multiplicity.
    pub fn variables(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Monomial::Leaf { var, .. } => out.push(*var),
            Monomial::Product(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Decorations left to right, aligned with [`Monomial::variables`].
    pub fn decorations(&self) -> Vec<&Decoration> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_decorations(&mut out);
        out
    }

    fn collect_decorations<'a>(&'a self, out: &mut Vec<&'a Decoration>) {
        match self {
            Monomial::Leaf { decoration, .. } => out.push(decoration),
            Monomial::Product(l, r) => {
                l.collect_decorations(out);
                r.collect_decorations(out);
            }
        }
    }

    /// Largest variable index used (0 for none, which cannot happen).
    pub fn max_var(&self) -> usize {
        match self {
            Monomial::Leaf { var, .. } => *var,
            Monomial::Product(l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// True when the variables are exactly `1..=n`, each once.
    pub fn is_multilinear(&self, n: usize) -> bool {
        let mut vars = self.variables();
        vars.sort_unstable();
        vars.len() == n && vars.iter().copied().eq(1..=n)
    }

    /// Rename every variable through `f` (decorations untouched).
    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> Monomial {
        match self {
            Monomial::Leaf { var, decoration } => Monomial::Leaf {
                var: f(*var),
                decoration: decoration.clone(),
            },
            Monomial::Product(l, r) => Monomial::product(l.relabel(f), r.relabel(f)),
        }
    }
}

/// A finite rational combination of bracket-tree monomials; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct HPolynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl HPolynomial {
    pub fn zero() -> Self {
        HPolynomial::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = HPolynomial::zero();
        p.add_term(m, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add `c * m`, merging and dropping zero results.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &HPolynomial) -> HPolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HPolynomial) -> HPolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> HPolynomial {
        let mut out = HPolynomial::zero();
        for (m, x) in self.terms() {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// The free (nonassociative) product: distribute and pair up monomials.
    pub fn mul(&self, other: &HPolynomial) -> HPolynomial {
        let mut out = HPolynomial::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(Monomial::product(m1.clone(), m2.clone()), c1 * c2);
            }
        }
        out
    }

    /// Largest variable index appearing in any term (0 for the zero
    /// polynomial).
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    /// True when every monomial is multilinear in exactly `x1..xn`.
    pub fn is_multilinear(&self, n: usize) -> bool {
        self.terms.keys().all(|m| m.is_multilinear(n))
    }
}

/// The decorations available to variable occurrences in one computation:
/// both the validation set for the parser and the per-leaf option list for
/// enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecorationAlphabet {
    options: Vec<Decoration>,
}

impl DecorationAlphabet {
    /// Undecorated variables only.
    pub fn plain() -> Self {
        DecorationAlphabet {
            options: vec![Decoration::None],
        }
    }

    /// One decoration per basis element of an acting algebra of dimension
    /// `hdim`.
    pub fn h_basis(hdim: usize) -> Self {
        DecorationAlphabet {
            options: (0..hdim).map(Decoration::HBasis).collect(),
        }
    }

    /// One decoration per grade label, in the given order.
    pub fn grades<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        DecorationAlphabet {
            options: labels
                .into_iter()
                .map(|l| Decoration::Grade(l.into()))
                .collect(),
        }
    }

    /// The per-leaf options, in enumeration order.
    pub fn options(&self) -> &[Decoration] {
        &self.options
    }

    /// Number of options per leaf.
    pub fn size(&self) -> usize {
        self.options.len()
    }

    /// Whether a parsed decoration is admissible. Undecorated leaves are
    /// always admissible.
    pub fn permits(&self, d: &Decoration) -> bool {
        matches!(d, Decoration::None) || self.options.contains(d)
    }
}

/// `catalan(m)`: the number of bracketings of a product of `m + 1` factors.
pub fn catalan(m: usize) -> BigUint {
    let m = m as u64;
    num::integer::binomial(BigUint::from(2 * m), BigUint::from(m)) / BigUint::from(m + 1)
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Number of multilinear monomials of degree `n` over an alphabet of `d`
/// decorations: every bracket shape, every variable order, every decoration
/// word.
pub fn count_multilinear_monomials(n: usize, d: usize) -> BigUint {
    catalan(n - 1) * factorial(n) * BigUint::from(d as u64).pow(n as u32)
}

/// All bracket shapes on `n` leaves, with leaves labeled `1..=n` from left
/// to right and no decorations. Ordered by increasing left-subtree size,
/// recursively (the documented "shape order").
fn shapes(n: usize) -> Vec<Monomial> {
    if n == 1 {
        return vec![Monomial::leaf(1, Decoration::None)];
    }
    let mut out = Vec::new();
    for left_size in 1..n {
        for l in shapes(left_size) {
            for r in shapes(n - left_size) {
                let shifted = r.relabel(&|v| v + left_size);
                out.push(Monomial::product(l.clone(), shifted));
            }
        }
    }
    out
}

/// The single left-combed shape `((x1*x2)*x3)*...`, used when evaluation is
/// restricted to associative algebras and one bracketing suffices.
fn left_comb(n: usize) -> Monomial {
    let mut m = Monomial::leaf(1, Decoration::None);
    for v in 2..=n {
        m = Monomial::product(m, Monomial::leaf(v, Decoration::None));
    }
    m
}

/// Instantiate a shape: leaf at position `p` (its placeholder variable)
/// becomes variable `vars[p-1]` with decoration `decos[p-1]`.
fn instantiate(shape: &Monomial, vars: &[usize], decos: &[&Decoration]) -> Monomial {
    match shape {
        Monomial::Leaf { var, .. } => Monomial::Leaf {
            var: vars[*var - 1],
            decoration: decos[*var - 1].clone(),
        },
        Monomial::Product(l, r) => {
            Monomial::product(instantiate(l, vars, decos), instantiate(r, vars, decos))
        }
    }
}

fn enumerate_over_shapes(
    shape_list: &[Monomial],
    n: usize,
    alphabet: &DecorationAlphabet,
) -> Vec<Monomial> {
    let perms: Vec<Vec<usize>> = (1..=n).permutations(n).collect();
    let deco_words: Vec<Vec<&Decoration>> = (0..n)
        .map(|_| alphabet.options().iter())
        .multi_cartesian_product()
        .collect();
    let mut out = Vec::with_capacity(shape_list.len() * perms.len() * deco_words.len());
    for shape in shape_list {
        for perm in &perms {
            for decos in &deco_words {
                out.push(instantiate(shape, perm, decos));
            }
        }
    }
    out
}

/// Every multilinear monomial of degree `n` over the alphabet, in the
/// documented deterministic order: bracket shapes (by increasing
/// left-subtree size, recursively), then variable permutations
/// (lexicographic), then decoration words (lexicographic in alphabet
/// order). Exactly `catalan(n-1) * n! * d^n` entries.
pub fn enumerate_multilinear_monomials(
    n: usize,
    alphabet: &DecorationAlphabet,
    cap: usize,
) -> Result<Vec<Monomial>> {
    if n == 0 {
        return Err(Error::DomainViolation {
            detail: "monomial degree must be at least 1".to_string(),
        });
    }
    let count = count_multilinear_monomials(n, alphabet.size());
    if count > BigUint::from(cap as u64) {
        return Err(Error::BudgetExceeded {
            what: "multilinear monomial enumeration".to_string(),
            limit: cap as u64,
            requested: count.to_u64().unwrap_or(u64::MAX),
        });
    }
    Ok(enumerate_over_shapes(&shapes(n), n, alphabet))
}

/// The left-combed multilinear monomials only (`n! * d^n` of them), in the
/// same permutation-then-decoration order. This is the spanning family when
/// the target algebra is associative.
pub fn enumerate_left_combed_monomials(
    n: usize,
    alphabet: &DecorationAlphabet,
    cap: usize,
) -> Result<Vec<Monomial>> {
    if n == 0 {
        return Err(Error::DomainViolation {
            detail: "monomial degree must be at least 1".to_string(),
        });
    }
    let count = factorial(n) * BigUint::from(alphabet.size() as u64).pow(n as u32);
    if count > BigUint::from(cap as u64) {
        return Err(Error::BudgetExceeded {
            what: "left-combed monomial enumeration".to_string(),
            limit: cap as u64,
            requested: count.to_u64().unwrap_or(u64::MAX),
        });
    }
    Ok(enumerate_over_shapes(&[left_comb(n)], n, alphabet))
}

/// All degree-`n` monomials on variables `1..=k` with repetition (every
/// shape, every variable word, every decoration word); the spanning family
/// for the span of `n`-fold products of decorated generic elements.
pub fn enumerate_degree_n_monomials(
    n: usize,
    k: usize,
    alphabet: &DecorationAlphabet,
    cap: usize,
) -> Result<Vec<Monomial>> {
    if n == 0 || k == 0 {
        return Err(Error::DomainViolation {
            detail: "degree and variable count must be at least 1".to_string(),
        });
    }
    let count = catalan(n - 1)
        * BigUint::from(k as u64).pow(n as u32)
        * BigUint::from(alphabet.size() as u64).pow(n as u32);
    if count > BigUint::from(cap as u64) {
        return Err(Error::BudgetExceeded {
            what: "degree-n monomial enumeration".to_string(),
            limit: cap as u64,
            requested: count.to_u64().unwrap_or(u64::MAX),
        });
    }
    let shape_list = shapes(n);
    let var_words: Vec<Vec<usize>> = (0..n)
        .map(|_| 1..=k)
        .multi_cartesian_product()
        .collect();
    let deco_words: Vec<Vec<&Decoration>> = (0..n)
        .map(|_| alphabet.options().iter())
        .multi_cartesian_product()
        .collect();
    let mut out = Vec::new();
    for shape in &shape_list {
        for vars in &var_words {
            for decos in &deco_words {
                out.push(instantiate(shape, vars, decos));
            }
        }
    }
    Ok(out)
}
