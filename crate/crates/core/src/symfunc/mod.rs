//! Symmetric-group machinery: partitions, Young tableaux, hook-length
//! dimensions, group-algebra arithmetic, Young symmetrizers, the variable
//! permutation action on multilinear monomials, and irreducible characters
//! via border-strip recursion.
//!
//! Everything here is exact: dimensions are big unsigned integers, group
//! algebra coefficients are rationals, characters are signed integers
//! computed by recursion rather than table lookup.

mod report;

pub use report::{
    cocharacter_report, cocharacter_report_from_matrix, colength_bound, multiplicity,
    CocharacterEntry, CocharacterReport, MethodTag,
};

use crate::error::{Error, Result};
use crate::exactlin::Rational;
use crate::freealg::Monomial;
use itertools::Itertools;
use num::{BigUint, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A partition: weakly decreasing positive parts. The empty partition
/// (of 0) is allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition {
                    detail: format!("parts must be weakly decreasing, got {parts:?}"),
                });
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition {
                detail: format!("parts must be positive, got {parts:?}"),
            });
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts (rows of the diagram).
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// The conjugate (transposed diagram) partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// All partitions of `n` with at most `max_height` parts, in descending
/// lexicographic order. `partitions(0, _)` is the singleton empty partition.
pub fn partitions(n: usize, max_height: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    descend(n, n, max_height, &mut stack, &mut out);
    out
}

fn descend(
    remaining: usize,
    max_part: usize,
    rows_left: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    if rows_left == 0 {
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        stack.push(p);
        descend(remaining - p, p, rows_left - 1, stack, out);
        stack.pop();
    }
}

/// Dimension of the irreducible symmetric-group module indexed by the
/// partition, by the hook-length formula: n! divided by the product of all
/// hook lengths.
pub fn dim_irreducible(lambda: &Partition) -> BigUint {
    let n = lambda.n();
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts.iter().enumerate() {
        for j in 0..row {
            let hook = (row - j) + (conj.parts[j] - i) - 1;
            hooks *= BigUint::from(hook);
        }
    }
    let mut fact = BigUint::one();
    for k in 2..=n {
        fact *= BigUint::from(k);
    }
    &fact / &hooks
}

/// A Young tableau: a partition shape with a bijective filling by 1..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    /// The canonical tableau: boxes numbered 1..n row by row.
    pub fn row_major(shape: Partition) -> Self {
        let mut next = 1usize;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        YoungTableau { shape, rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let cols = self.shape.parts().first().copied().unwrap_or(0);
        (0..cols)
            .map(|j| {
                self.rows
                    .iter()
                    .filter_map(|row| row.get(j).copied())
                    .collect()
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }
}

/// A permutation of 1..n stored as the image list: `p[i-1]` is the image
/// of `i`.
pub type Perm = Vec<usize>;

/// Identity permutation on 1..n.
pub fn perm_identity(n: usize) -> Perm {
    (1..=n).collect()
}

/// Composition acting left-to-right on points: `(compose(s, t))(i) = s(t(i))`.
pub fn perm_compose(s: &Perm, t: &Perm) -> Perm {
    t.iter().map(|&i| s[i - 1]).collect()
}

/// Sign of a permutation via its cycle count.
pub fn perm_sign(p: &Perm) -> i64 {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut cycles = 0usize;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] - 1;
        }
    }
    if (n - cycles).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// An element of the rational group algebra of the symmetric group:
/// a finitely supported map from permutations to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Perm, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = Self::zero(n);
        e.add_term(perm_identity(n), Rational::one());
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, p: Perm, c: Rational) {
        debug_assert_eq!(p.len(), self.n);
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, p: &Perm) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        GroupAlgebraElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(p, v)| (p.clone(), v * c))
                .collect(),
        }
    }

    /// Convolution product: permutations compose as `(st)(i) = s(t(i))`.
    pub fn multiply(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        debug_assert_eq!(self.n, other.n);
        let mut out = GroupAlgebraElement::zero(self.n);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(perm_compose(s, t), a * b);
            }
        }
        out
    }
}

/// Which product order the symmetrizer uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetrizerVariant {
    /// Row symmetrizer times column antisymmetrizer.
    RowColumn,
    /// Column antisymmetrizer times row symmetrizer.
    ColumnRow,
}

/// All permutations preserving each block of values setwise, as images
/// over 1..n.
fn block_stabilizer(blocks: &[Vec<usize>], n: usize) -> Vec<Perm> {
    let per_block: Vec<Vec<Vec<usize>>> = blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect())
        .collect();
    per_block
        .iter()
        .map(|choices| choices.iter())
        .multi_cartesian_product()
        .map(|choice| {
            let mut p = perm_identity(n);
            for (block, image) in blocks.iter().zip(choice) {
                for (&from, &to) in block.iter().zip(image.iter()) {
                    p[from - 1] = to;
                }
            }
            p
        })
        .collect()
}

/// Number of terms in the expanded symmetrizer before cancellation:
/// the product of the row-stabilizer and column-stabilizer orders.
pub fn symmetrizer_support_bound(lambda: &Partition) -> BigUint {
    let mut bound = BigUint::one();
    for &p in lambda.parts() {
        for k in 2..=p {
            bound *= BigUint::from(k);
        }
    }
    for &p in lambda.conjugate().parts() {
        for k in 2..=p {
            bound *= BigUint::from(k);
        }
    }
    bound
}

/// The Young symmetrizer of a tableau: the row symmetrizer (sum of all
/// row-preserving permutations) multiplied with the column antisymmetrizer
/// (signed sum of all column-preserving permutations), in the order given
/// by the variant.
pub fn young_symmetrizer(t: &YoungTableau, variant: SymmetrizerVariant) -> GroupAlgebraElement {
    let n = t.n();
    let mut row_sym = GroupAlgebraElement::zero(n);
    for p in block_stabilizer(t.rows(), n) {
        row_sym.add_term(p, Rational::one());
    }
    let mut col_anti = GroupAlgebraElement::zero(n);
    for p in block_stabilizer(&t.columns(), n) {
        let sign = Rational::from_integer(perm_sign(&p).into());
        col_anti.add_term(p, sign);
    }
    match variant {
        SymmetrizerVariant::RowColumn => row_sym.multiply(&col_anti),
        SymmetrizerVariant::ColumnRow => col_anti.multiply(&row_sym),
    }
}

/// Rename variable `i` to `sigma(i)` throughout a multilinear monomial;
/// bracketing and decorations stay attached to their positions.
pub fn sn_act(sigma: &Perm, m: &Monomial) -> Result<Monomial> {
    let vars = m.variables();
    let n = sigma.len();
    if vars.len() != n || {
        let mut sorted = vars.clone();
        sorted.sort_unstable();
        sorted != (1..=n).collect::<Vec<_>>()
    } {
        return Err(Error::DomainViolation {
            detail: format!(
                "permutation of {n} points applied to a monomial with variables {vars:?}"
            ),
        });
    }
    Ok(relabel(m, sigma))
}

fn relabel(m: &Monomial, sigma: &Perm) -> Monomial {
    match m {
        Monomial::Leaf { var, decoration } => Monomial::leaf(sigma[*var - 1], decoration.clone()),
        Monomial::Product(left, right) => {
            Monomial::product(relabel(left, sigma), relabel(right, sigma))
        }
    }
}

/// The irreducible symmetric-group character indexed by `lambda` evaluated
/// on the conjugacy class with cycle type `mu`, by border-strip
/// (Murnaghan–Nakayama) recursion on first-column hook lengths.
pub fn irreducible_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.n() != mu.n() {
        return Err(Error::DomainViolation {
            detail: format!(
                "character of {lambda} evaluated on class {mu} of a different symmetric group"
            ),
        });
    }
    // Beta set: strictly decreasing first-column hook lengths
    // lambda_i + (k - i).
    let k = lambda.height();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (k - 1 - i))
        .collect();
    Ok(strip_recursion(&beta, mu.parts()))
}

fn strip_recursion(beta: &[usize], mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // Removing a border strip moves one beta entry down by r; the
        // strip's height is the number of entries it jumps over.
        let jumped = beta
            .iter()
            .filter(|&&x| target < x && x < b)
            .count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        // The entry count stays fixed; a set of distinct nonnegative
        // entries of fixed size encodes exactly one partition.
        let mut next: Vec<usize> = beta.to_vec();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        total += sign * strip_recursion(&next, rest);
    }
    total
}

/// Size of the conjugacy class with cycle type `mu` inside its symmetric
/// group: n! / z, where z is the order of the centralizer,
/// the product over distinct part sizes i of i^(count) * count!.
pub fn conjugacy_class_size(mu: &Partition) -> BigUint {
    let n = mu.n();
    let mut fact = BigUint::one();
    for k in 2..=n {
        fact *= BigUint::from(k);
    }
    fact / centralizer_order(mu)
}

/// The centralizer order z of a cycle type.
pub fn centralizer_order(mu: &Partition) -> BigUint {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut z = BigUint::one();
    for (i, m) in counts {
        for _ in 0..m {
            z *= BigUint::from(i);
        }
        for k in 2..=m {
            z *= BigUint::from(k);
        }
    }
    z
}

/// A canonical representative of the conjugacy class: disjoint cycles of
/// the given lengths on consecutive points.
pub fn class_representative(mu: &Partition) -> Perm {
    let n = mu.n();
    let mut p = perm_identity(n);
    let mut start = 1usize;
    for &len in mu.parts() {
        for offset in 0..len {
            let from = start + offset;
            let to = start + (offset + 1) % len;
            p[from - 1] = to;
        }
        start += len;
    }
    p
}
