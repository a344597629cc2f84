//! Finite-dimensional algebras given by structure constants, and the
//! algebras realized from bound quivers and matrix blow-ups.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactla::{
    axpy, format_scalar, int, intertwiners, is_zero_vec, unit_vec, zero_vec, Matrix, Quotient,
    Scalar, Subspace,
};
use crate::quiver::{Path, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("unit is not a two-sided identity")]
    BadUnit,
    #[error("structure table has wrong shape: {0}")]
    BadTable(String),
    #[error("relation {index} is not a combination of parallel paths")]
    NonParallelRelation { index: usize },
    #[error("relation {index} has a trivial-path term; relations must lie in the arrow ideal")]
    RelationOutsideArrowIdeal { index: usize },
    #[error("relation {index} is empty")]
    EmptyRelation { index: usize },
    #[error("not admissible / not finite-dimensional at bound {bound}: path {path} is not reducible")]
    NotAdmissible { bound: usize, path: String },
    #[error("nilpotency bound must be at least 1")]
    ZeroBound,
    #[error("multiplicity at vertex {vertex} must be positive")]
    BadMultiplicity { vertex: String },
    #[error("blow-up needs a bound-quiver base algebra")]
    BlowUpNeedsBoundQuiver,
    #[error("no block decomposition available: {0}")]
    NoBlocks(String),
    #[error("invalid block data: {0}")]
    BadBlocks(String),
    #[error("invalid radical: {0}")]
    BadRadical(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Algebra with basis `b_0..b_{n-1}` and products `b_a b_b = Σ c_ab^k b_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstAlgebra {
    labels: Vec<String>,
    /// Sparse product of basis elements, indexed by `a * dim + b`.
    table: Vec<Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
}

impl StructureConstAlgebra {
    /// Builds the algebra and machine-checks associativity and the unit.
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<(usize, Scalar)>>,
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let a = Self::new_unchecked(labels, table, unit)?;
        a.check_associative()?;
        a.check_unit()?;
        Ok(a)
    }

    pub(crate) fn new_unchecked(
        labels: Vec<String>,
        table: Vec<Vec<(usize, Scalar)>>,
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if table.len() != n * n {
            return Err(AlgebraError::BadTable(format!(
                "expected {} products, got {}",
                n * n,
                table.len()
            )));
        }
        if unit.len() != n || table.iter().flatten().any(|(k, _)| *k >= n) {
            return Err(AlgebraError::BadTable("index out of range".into()));
        }
        let table = table
            .into_iter()
            .map(|terms| {
                let mut merged: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, c) in terms {
                    *merged.entry(k).or_insert_with(Scalar::zero) += c;
                }
                merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        Ok(StructureConstAlgebra {
            labels,
            table,
            unit,
        })
    }

    /// Builds from a dense table `c[a][b]` of coefficient vectors.
    pub fn from_dense(
        labels: Vec<String>,
        dense: &[Vec<Vec<Scalar>>],
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = dense
                    .get(a)
                    .and_then(|r| r.get(b))
                    .filter(|v| v.len() == n)
                    .ok_or_else(|| AlgebraError::BadTable(format!("missing product ({a},{b})")))?;
                table.push(
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k, c.clone()))
                        .collect(),
                );
            }
        }
        Self::new(labels, table, unit)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.dim(), i)
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.table[a * self.dim() + b]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let terms = &self.table[a * n + b];
                if terms.is_empty() {
                    continue;
                }
                let c = xa * yb;
                for (k, s) in terms {
                    out[*k] += &c * s;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y` on coordinate columns.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|b| self.mul(x, &self.basis(b))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x` on coordinate columns.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|b| self.mul(&self.basis(b), x)).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.sparse_to_dense(&self.table[a * n + b]);
                for c in 0..n {
                    let left = self.mul(&ab, &self.basis(c));
                    let bc = self.sparse_to_dense(&self.table[b * n + c]);
                    let right = self.mul(&self.basis(a), &bc);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(
                            self.labels[a].clone(),
                            self.labels[b].clone(),
                            self.labels[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<(), AlgebraError> {
        for b in 0..self.dim() {
            let e = self.basis(b);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::BadUnit);
            }
        }
        Ok(())
    }

    fn sparse_to_dense(&self, terms: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut v = zero_vec(self.dim());
        for (k, c) in terms {
            v[*k] += c;
        }
        v
    }

    /// `t(b_c) = tr ρ_{b_c}` for each basis element, ρ the right regular action.
    pub fn trace_vector(&self) -> Vec<Scalar> {
        let n = self.dim();
        (0..n)
            .map(|c| {
                // tr ρ_c = Σ_b coefficient of b in b·b_c
                (0..n)
                    .map(|b| {
                        self.table[b * n + c]
                            .iter()
                            .find(|(k, _)| *k == b)
                            .map(|(_, s)| s.clone())
                            .unwrap_or_else(Scalar::zero)
                    })
                    .fold(Scalar::zero(), |acc, s| acc + s)
            })
            .collect()
    }

    pub fn element_label(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                if c.is_one() {
                    self.labels[k].clone()
                } else {
                    format!("{}*{}", format_scalar(c), self.labels[k])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Trace of right multiplication by `x` on the algebra.
pub fn regular_trace(a: &StructureConstAlgebra, x: &[Scalar]) -> Scalar {
    a.trace_vector()
        .iter()
        .zip(x)
        .fold(Scalar::zero(), |acc, (t, c)| acc + t * c)
}

/// `{x : t(xy) = 0 for every basis y}`; the Jacobson radical in characteristic 0.
pub fn radical_traceform(a: &StructureConstAlgebra) -> Subspace {
    let n = a.dim();
    let tau = a.trace_vector();
    // G[y][x] = t(b_x b_y)
    let mut g = Matrix::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            let t = a
                .basis_product(x, y)
                .iter()
                .fold(Scalar::zero(), |acc, (k, c)| acc + c * &tau[*k]);
            g.set(y, x, t);
        }
    }
    Subspace::span(n, &g.nullspace())
}

/// Split semisimple algebra `M_{n_1}(k) × ... × M_{n_s}(k)` with the matrix
/// unit basis ordered by `(block, row, col)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitSemisimple {
    blocks: Vec<usize>,
}

impl SplitSemisimple {
    pub fn new(blocks: Vec<usize>) -> Result<Self, AlgebraError> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(AlgebraError::BadBlocks(format!(
                "block sizes must be positive and nonempty, got {blocks:?}"
            )));
        }
        Ok(SplitSemisimple { blocks })
    }

    pub fn field() -> Self {
        SplitSemisimple { blocks: vec![1] }
    }

    pub fn matrix(n: usize) -> Self {
        SplitSemisimple { blocks: vec![n] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn is_simple(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum()
    }

    /// Basis index of the matrix unit `E_{rc}` in `block`.
    pub fn unit_index(&self, block: usize, r: usize, c: usize) -> usize {
        let offset: usize = self.blocks[..block].iter().map(|n| n * n).sum();
        offset + r * self.blocks[block] + c
    }

    /// `(block, row, col)` of a basis index.
    pub fn unit_coords(&self, mut index: usize) -> (usize, usize, usize) {
        for (b, &n) in self.blocks.iter().enumerate() {
            if index < n * n {
                return (b, index / n, index % n);
            }
            index -= n * n;
        }
        panic!("basis index out of range");
    }

    pub fn labels(&self) -> Vec<String> {
        let single = self.blocks.len() == 1;
        let mut out = Vec::with_capacity(self.dim());
        for (b, &n) in self.blocks.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    out.push(match (single, n) {
                        (true, 1) => "e".to_string(),
                        (true, _) => format!("E{}{}", r + 1, c + 1),
                        (false, 1) => format!("e{}", b + 1),
                        (false, _) => format!("E{}_{}{}", b + 1, r + 1, c + 1),
                    });
                }
            }
        }
        out
    }

    /// Product of basis elements, a single basis element or zero.
    pub fn basis_product(&self, x: usize, y: usize) -> Option<usize> {
        let (b1, r1, c1) = self.unit_coords(x);
        let (b2, r2, c2) = self.unit_coords(y);
        (b1 == b2 && c1 == r2).then(|| self.unit_index(b1, r1, c2))
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = zero_vec(self.dim());
        for (b, &n) in self.blocks.iter().enumerate() {
            for r in 0..n {
                u[self.unit_index(b, r, r)] = Scalar::one();
            }
        }
        u
    }

    pub fn block_identity(&self, block: usize) -> Vec<Scalar> {
        let mut u = zero_vec(self.dim());
        for r in 0..self.blocks[block] {
            u[self.unit_index(block, r, r)] = Scalar::one();
        }
        u
    }

    pub fn to_structure_constants(&self) -> StructureConstAlgebra {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(
                    self.basis_product(x, y)
                        .map(|k| vec![(k, Scalar::one())])
                        .unwrap_or_default(),
                );
            }
        }
        StructureConstAlgebra::new_unchecked(self.labels(), table, self.unit())
            .expect("matrix unit table is well formed")
    }
}

/// Block data `(n_i, ε_i)` of a semisimple algebra `Π M_{n_i}(D_i)` with
/// `dim_k D_i = ε_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemisimpleSpec {
    blocks: Vec<(usize, usize)>,
}

impl SemisimpleSpec {
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self, AlgebraError> {
        if blocks.is_empty() || blocks.iter().any(|&(n, e)| n == 0 || e == 0) {
            return Err(AlgebraError::BadBlocks(format!(
                "n_i and ε_i must be positive, got {blocks:?}"
            )));
        }
        Ok(SemisimpleSpec { blocks })
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|&(n, e)| n * n * e).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_split(&self) -> bool {
        self.blocks.iter().all(|&(_, e)| e == 1)
    }

    /// Same data with blocks sorted, for comparison up to isomorphism.
    pub fn canonical(&self) -> SemisimpleSpec {
        let mut blocks = self.blocks.clone();
        blocks.sort();
        SemisimpleSpec { blocks }
    }
}

impl From<&SplitSemisimple> for SemisimpleSpec {
    fn from(s: &SplitSemisimple) -> Self {
        SemisimpleSpec {
            blocks: s.blocks().iter().map(|&n| (n, 1)).collect(),
        }
    }
}

/// `M_n(k)` by structure constants.
pub fn matrix_algebra(n: usize) -> StructureConstAlgebra {
    SplitSemisimple::matrix(n).to_structure_constants()
}

/// `k[x]/(x^m)` with basis `1, x, ..., x^{m-1}`.
pub fn truncated_polynomial(m: usize) -> StructureConstAlgebra {
    assert!(m >= 1);
    let labels = (0..m)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    let mut table = Vec::with_capacity(m * m);
    for a in 0..m {
        for b in 0..m {
            table.push(if a + b < m { vec![(a + b, Scalar::one())] } else { vec![] });
        }
    }
    StructureConstAlgebra::new_unchecked(labels, table, unit_vec(m, 0)).unwrap()
}

/// `kQ/I` presented by a quiver, relations, and a nilpotency bound `s` with `J^s ⊆ I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiverPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Vec<(Scalar, Path)>>,
    pub bound: usize,
}

impl BoundQuiverPresentation {
    pub fn new(
        quiver: Quiver,
        relations: Vec<Vec<(Scalar, Path)>>,
        bound: usize,
    ) -> Result<Self, AlgebraError> {
        if bound == 0 {
            return Err(AlgebraError::ZeroBound);
        }
        for (index, rel) in relations.iter().enumerate() {
            let Some((_, first)) = rel.first() else {
                return Err(AlgebraError::EmptyRelation { index });
            };
            if rel
                .iter()
                .any(|(_, p)| p.source != first.source || p.target != first.target)
            {
                return Err(AlgebraError::NonParallelRelation { index });
            }
            if rel.iter().any(|(_, p)| p.is_empty()) {
                return Err(AlgebraError::RelationOutsideArrowIdeal { index });
            }
        }
        Ok(BoundQuiverPresentation {
            quiver,
            relations,
            bound,
        })
    }

    /// Path algebra `kQ` truncated at `J^s`, no relations.
    pub fn free(quiver: Quiver, bound: usize) -> Result<Self, AlgebraError> {
        Self::new(quiver, Vec::new(), bound)
    }

    /// Relation given by `(coefficient, arrow names)` terms.
    pub fn relation(quiver: &Quiver, terms: &[(i64, &[&str])]) -> Result<Vec<(Scalar, Path)>, AlgebraError> {
        terms
            .iter()
            .map(|(c, arrows)| Ok((int(*c), quiver.path(arrows)?)))
            .collect()
    }
}

/// Ambient path space of all paths of length `≤ s`, longest paths first so
/// that row reduction pivots on long paths and short paths survive as
/// normal forms.
struct PathSpace {
    paths: Vec<Path>,
    index: BTreeMap<Path, usize>,
}

impl PathSpace {
    fn new(q: &Quiver, max_len: usize) -> Self {
        let mut paths = q.enumerate_paths(max_len);
        paths.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PathSpace { paths, index }
    }

    fn dim(&self) -> usize {
        self.paths.len()
    }

    fn vector(&self, terms: &[(Scalar, Path)]) -> Vec<Scalar> {
        let mut v = zero_vec(self.dim());
        for (c, p) in terms {
            if let Some(&i) = self.index.get(p) {
                v[i] += c;
            }
        }
        v
    }
}

/// Span of `u·ρ·v` for paths `u, v` and relations `ρ`, with terms longer than
/// `max_len` discarded. This is `(I + J^{max_len+1})` inside the span of
/// paths of length `≤ max_len`.
fn relation_closure(p: &BoundQuiverPresentation, space: &PathSpace, max_len: usize) -> Subspace {
    let paths = &space.paths;
    let mut generators = Vec::new();
    for rel in &p.relations {
        let min_len = rel.iter().map(|(_, q)| q.len()).min().unwrap_or(0);
        let (src, tgt) = (rel[0].1.source, rel[0].1.target);
        for u in paths.iter().filter(|u| u.target == src && u.len() + min_len <= max_len) {
            for v in paths
                .iter()
                .filter(|v| v.source == tgt && u.len() + v.len() + min_len <= max_len)
            {
                let terms: Vec<(Scalar, Path)> = rel
                    .iter()
                    .filter_map(|(c, q)| {
                        let w = u.concat(q)?.concat(v)?;
                        (w.len() <= max_len).then(|| (c.clone(), w))
                    })
                    .collect();
                let vec = space.vector(&terms);
                if !is_zero_vec(&vec) {
                    generators.push(vec);
                }
            }
        }
    }
    Subspace::span(space.dim(), &generators)
}

/// Outcome of [`verify_admissible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    /// Every relation term has length at least 2.
    pub relations_in_j2: bool,
    pub offending_relations: Vec<usize>,
    /// Every path of length `s` lies in `I + J^{s+1}`.
    pub power_in_ideal: bool,
    pub irreducible_paths: Vec<String>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.relations_in_j2 && self.power_in_ideal
    }
}

/// Checks `J^s ⊆ I ⊆ J²` for the presentation.
///
/// `J^s ⊆ I` is certified modulo `J^{s+1}`, which is exact whenever the
/// relations are homogeneous or the quiver is acyclic.
pub fn verify_admissible(p: &BoundQuiverPresentation) -> AdmissibilityReport {
    let offending_relations: Vec<usize> = p
        .relations
        .iter()
        .enumerate()
        .filter(|(_, rel)| rel.iter().any(|(_, q)| q.len() < 2))
        .map(|(i, _)| i)
        .collect();
    let s = p.bound;
    let space = PathSpace::new(&p.quiver, s);
    let closure = relation_closure(p, &space, s);
    let irreducible_paths: Vec<String> = space
        .paths
        .iter()
        .enumerate()
        .filter(|(_, q)| q.len() == s)
        .filter(|(i, _)| !closure.contains(&unit_vec(space.dim(), *i)))
        .map(|(_, q)| p.quiver.path_label(q))
        .collect();
    AdmissibilityReport {
        relations_in_j2: offending_relations.is_empty(),
        offending_relations,
        power_in_ideal: irreducible_paths.is_empty(),
        irreducible_paths,
    }
}

/// One simple block `A_i ≅ M_{n_i}(D_i)` of `A/r`, with lifted matrix units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub n: usize,
    pub eps: usize,
    /// `units[r][c]` lifts the matrix unit `E_{rc}` to the algebra.
    pub units: Vec<Vec<Vec<Scalar>>>,
}

impl Block {
    /// Primitive idempotent `u_i = E_{11}`.
    pub fn primitive(&self) -> &[Scalar] {
        &self.units[0][0]
    }

    pub fn identity(&self) -> Vec<Scalar> {
        let mut e = zero_vec(self.units[0][0].len());
        for r in 0..self.n {
            axpy(&mut e, &Scalar::one(), &self.units[r][r]);
        }
        e
    }

    /// All lifted matrix units in `(row, col)` order.
    pub fn unit_list(&self) -> Vec<&[Scalar]> {
        self.units.iter().flatten().map(Vec::as_slice).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    BoundQuiver {
        presentation: BoundQuiverPresentation,
        /// Normal-form path of each basis element.
        basis_paths: Vec<Path>,
    },
    BlowUp {
        base: Box<RealizedAlgebra>,
        multiplicities: Vec<usize>,
        /// `(base basis index, row, col)` of each basis element.
        triples: Vec<(usize, usize, usize)>,
    },
    Raw,
}

/// A finite-dimensional algebra together with its radical and the lifted
/// block structure of `A/r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedAlgebra {
    pub carrier: StructureConstAlgebra,
    pub provenance: Provenance,
    pub radical: Subspace,
    pub blocks: Option<Vec<Block>>,
    /// Names of the blocks (vertex names for quiver provenance).
    pub block_names: Vec<String>,
}

impl RealizedAlgebra {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn blocks(&self) -> Result<&[Block], AlgebraError> {
        self.blocks.as_deref().ok_or_else(|| {
            AlgebraError::NoBlocks("raw algebra without declared block data".into())
        })
    }

    /// Whether every block is `1×1`.
    pub fn is_basic(&self) -> Result<bool, AlgebraError> {
        Ok(self.blocks()?.iter().all(|b| b.n == 1))
    }

    /// Raw structure-constant algebra; the radical defaults to the trace-form
    /// radical and block data must be declared to use the natural-quiver tools.
    pub fn raw(
        carrier: StructureConstAlgebra,
        radical: Option<Subspace>,
        blocks: Option<(Vec<String>, Vec<Block>)>,
    ) -> Result<Self, AlgebraError> {
        let radical = radical.unwrap_or_else(|| radical_traceform(&carrier));
        let (block_names, blocks) = match blocks {
            Some((names, blocks)) => (names, Some(blocks)),
            None => (Vec::new(), None),
        };
        let a = RealizedAlgebra {
            carrier,
            provenance: Provenance::Raw,
            radical,
            blocks,
            block_names,
        };
        a.validate()?;
        Ok(a)
    }

    /// Checks the radical is a nilpotent ideal and the block data is a
    /// complete set of lifted matrix units for `A/r`.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let a = &self.carrier;
        let n = a.dim();
        for x in self.radical.basis() {
            for b in 0..n {
                let e = a.basis(b);
                if !self.radical.contains(&a.mul(x, &e)) || !self.radical.contains(&a.mul(&e, x)) {
                    return Err(AlgebraError::BadRadical("not a two-sided ideal".into()));
                }
            }
        }
        if radical_filtration_of(a, &self.radical).is_none() {
            return Err(AlgebraError::BadRadical("not nilpotent".into()));
        }
        let Some(blocks) = &self.blocks else {
            return Ok(());
        };
        let quotient_dim: usize = blocks.iter().map(|b| b.n * b.n * b.eps).sum();
        if quotient_dim != n - self.radical.dim() {
            return Err(AlgebraError::BadBlocks(format!(
                "Σ n_i²ε_i = {quotient_dim} but dim A/r = {}",
                n - self.radical.dim()
            )));
        }
        let mut total = zero_vec(n);
        for (i, bi) in blocks.iter().enumerate() {
            axpy(&mut total, &Scalar::one(), &bi.identity());
            for (j, bj) in blocks.iter().enumerate() {
                for r in 0..bi.n {
                    for c in 0..bi.n {
                        for r2 in 0..bj.n {
                            for c2 in 0..bj.n {
                                let prod = a.mul(&bi.units[r][c], &bj.units[r2][c2]);
                                let expected = if i == j && c == r2 {
                                    bi.units[r][c2].clone()
                                } else {
                                    zero_vec(n)
                                };
                                if prod != expected {
                                    return Err(AlgebraError::BadBlocks(format!(
                                        "matrix units of blocks {i},{j} do not multiply as matrix units"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        if total != a.unit() {
            return Err(AlgebraError::BadBlocks("block identities do not sum to 1".into()));
        }
        Ok(())
    }

    pub fn basis_paths(&self) -> Option<&[Path]> {
        match &self.provenance {
            Provenance::BoundQuiver { basis_paths, .. } => Some(basis_paths),
            _ => None,
        }
    }
}

/// Realizes `kQ/I` with the normal-form path basis.
pub fn realize_bound_quiver(p: &BoundQuiverPresentation) -> Result<RealizedAlgebra, AlgebraError> {
    let s = p.bound;
    let report = verify_admissible(p);
    if let Some(path) = report.irreducible_paths.first() {
        return Err(AlgebraError::NotAdmissible {
            bound: s,
            path: path.clone(),
        });
    }
    let space = PathSpace::new(&p.quiver, s);
    let closure = relation_closure(p, &space, s);
    // Kill J^s outright: it lies in I + J^{s+1} by the check above.
    let mut killed: Vec<Vec<Scalar>> = closure.basis().to_vec();
    killed.extend(
        space
            .paths
            .iter()
            .enumerate()
            .filter(|(_, q)| q.len() == s)
            .map(|(i, _)| unit_vec(space.dim(), i)),
    );
    let quotient = Quotient::by_span(space.dim(), &killed);

    // Present the basis shortest-first so idempotents come first.
    let mut basis_cols: Vec<usize> = quotient.basis_columns().to_vec();
    basis_cols.sort_by(|&a, &b| {
        let (pa, pb) = (&space.paths[a], &space.paths[b]);
        pa.len().cmp(&pb.len()).then(pa.cmp(pb))
    });
    let position: BTreeMap<usize, usize> = quotient
        .basis_columns()
        .iter()
        .enumerate()
        .map(|(k, &c)| (c, k))
        .collect();
    let reorder: Vec<usize> = basis_cols.iter().map(|c| position[c]).collect();
    let to_basis = |coords: Vec<Scalar>| -> Vec<Scalar> {
        reorder.iter().map(|&k| coords[k].clone()).collect()
    };

    let basis_paths: Vec<Path> = basis_cols.iter().map(|&c| space.paths[c].clone()).collect();
    let dim = basis_paths.len();
    let mut table = Vec::with_capacity(dim * dim);
    for x in &basis_paths {
        for y in &basis_paths {
            let terms = match x.concat(y) {
                Some(w) if w.len() < s => {
                    let v = to_basis(quotient.project(&unit_vec(space.dim(), space.index[&w])));
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect()
                }
                _ => Vec::new(),
            };
            table.push(terms);
        }
    }
    let mut unit = zero_vec(dim);
    let mut blocks = Vec::new();
    for v in 0..p.quiver.vertex_count() {
        let i = basis_paths
            .iter()
            .position(|q| q.is_empty() && q.source == v)
            .expect("trivial paths survive relations in the arrow ideal");
        unit[i] = Scalar::one();
        blocks.push(Block {
            n: 1,
            eps: 1,
            units: vec![vec![unit_vec(dim, i)]],
        });
    }
    let labels = basis_paths.iter().map(|q| p.quiver.path_label(q)).collect();
    let carrier = StructureConstAlgebra::new(labels, table, unit)?;
    let radical_vectors: Vec<Vec<Scalar>> = basis_paths
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_empty())
        .map(|(i, _)| unit_vec(dim, i))
        .collect();
    Ok(RealizedAlgebra {
        carrier,
        provenance: Provenance::BoundQuiver {
            presentation: p.clone(),
            basis_paths,
        },
        radical: Subspace::span(dim, &radical_vectors),
        blocks: Some(blocks),
        block_names: p.quiver.vertices().to_vec(),
    })
}

/// Checks that every product of `s` arrows vanishes in the realized algebra.
pub fn power_vanishes(a: &RealizedAlgebra, s: usize) -> bool {
    let Provenance::BoundQuiver {
        presentation,
        basis_paths,
    } = &a.provenance
    else {
        return false;
    };
    let dim = a.dim();
    let arrow_element = |k: usize| -> Option<Vec<Scalar>> {
        basis_paths
            .iter()
            .position(|q| q.arrows == [k])
            .map(|i| unit_vec(dim, i))
    };
    presentation.quiver.paths_of_length(s).iter().all(|q| {
        let mut acc: Option<Vec<Scalar>> = None;
        for &k in &q.arrows {
            let Some(x) = arrow_element(k) else {
                // the arrow itself was killed by a relation
                return true;
            };
            acc = Some(match acc {
                None => x,
                Some(prev) => a.carrier.mul(&prev, &x),
            });
        }
        acc.is_none_or(|v| is_zero_vec(&v))
    })
}

/// Morita blow-up: replaces vertex `i` by `n_i × n_i` matrices.
pub fn blow_up(base: &RealizedAlgebra, multiplicities: &[usize]) -> Result<RealizedAlgebra, AlgebraError> {
    let Provenance::BoundQuiver {
        presentation,
        basis_paths,
    } = &base.provenance
    else {
        return Err(AlgebraError::BlowUpNeedsBoundQuiver);
    };
    let q = &presentation.quiver;
    assert_eq!(multiplicities.len(), q.vertex_count(), "one multiplicity per vertex");
    if let Some(v) = multiplicities.iter().position(|&n| n == 0) {
        return Err(AlgebraError::BadMultiplicity {
            vertex: q.vertices()[v].clone(),
        });
    }
    let mut triples = Vec::new();
    for (k, p) in basis_paths.iter().enumerate() {
        for r in 0..multiplicities[p.source] {
            for c in 0..multiplicities[p.target] {
                triples.push((k, r, c));
            }
        }
    }
    let index: BTreeMap<(usize, usize, usize), usize> =
        triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let dim = triples.len();
    let mut table = Vec::with_capacity(dim * dim);
    for &(p, r, c) in &triples {
        for &(q2, r2, c2) in &triples {
            if c != r2 {
                table.push(Vec::new());
                continue;
            }
            let terms = base
                .carrier
                .basis_product(p, q2)
                .iter()
                .map(|(k, coef)| (index[&(*k, r, c2)], coef.clone()))
                .collect();
            table.push(terms);
        }
    }
    let labels = triples
        .iter()
        .map(|&(p, r, c)| format!("({},{},{})", base.carrier.labels()[p], r + 1, c + 1))
        .collect();
    let mut unit = zero_vec(dim);
    let mut blocks = Vec::new();
    for v in 0..q.vertex_count() {
        let e = basis_paths
            .iter()
            .position(|p| p.is_empty() && p.source == v)
            .expect("trivial path in base basis");
        let n = multiplicities[v];
        for r in 0..n {
            unit[index[&(e, r, r)]] = Scalar::one();
        }
        let units = (0..n)
            .map(|r| (0..n).map(|c| unit_vec(dim, index[&(e, r, c)])).collect())
            .collect();
        blocks.push(Block { n, eps: 1, units });
    }
    let carrier = StructureConstAlgebra::new(labels, table, unit)?;
    let radical_vectors: Vec<Vec<Scalar>> = triples
        .iter()
        .enumerate()
        .filter(|(_, (p, _, _))| !basis_paths[*p].is_empty())
        .map(|(i, _)| unit_vec(dim, i))
        .collect();
    Ok(RealizedAlgebra {
        carrier,
        provenance: Provenance::BlowUp {
            base: Box::new(base.clone()),
            multiplicities: multiplicities.to_vec(),
            triples,
        },
        radical: Subspace::span(dim, &radical_vectors),
        blocks: Some(blocks),
        block_names: base.block_names.clone(),
    })
}

/// Whether the linear map `φ` (columns = images of the basis of `a`) is a
/// unital algebra isomorphism `a → b`.
pub fn is_algebra_isomorphism(a: &StructureConstAlgebra, b: &StructureConstAlgebra, phi: &Matrix) -> bool {
    if phi.rows() != b.dim() || phi.cols() != a.dim() || phi.rank() != a.dim() || a.dim() != b.dim() {
        return false;
    }
    if phi.mul_vec(a.unit()) != b.unit() {
        return false;
    }
    let images: Vec<Vec<Scalar>> = (0..a.dim()).map(|x| phi.column(x)).collect();
    (0..a.dim()).all(|x| {
        (0..a.dim()).all(|y| {
            let lhs = phi.mul_vec(&a.mul(&a.basis(x), &a.basis(y)));
            lhs == b.mul(&images[x], &images[y])
        })
    })
}

/// Powers of the radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalFiltration {
    /// `powers[k]` is `r^{k+1}`; the last entry is the first zero power.
    pub powers: Vec<Subspace>,
    /// Smallest `s` with `r^s = 0`.
    pub nilpotency: usize,
}

impl RadicalFiltration {
    pub fn radical(&self) -> &Subspace {
        &self.powers[0]
    }

    pub fn radical_square(&self) -> Subspace {
        self.powers
            .get(1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.powers[0].ambient()))
    }
}

fn radical_filtration_of(a: &StructureConstAlgebra, r: &Subspace) -> Option<RadicalFiltration> {
    let mut powers = vec![r.clone()];
    while powers.last().unwrap().dim() > 0 {
        if powers.len() > a.dim() + 1 {
            return None;
        }
        let last = powers.last().unwrap();
        let products: Vec<Vec<Scalar>> = last
            .basis()
            .iter()
            .flat_map(|x| r.basis().iter().map(move |y| a.mul(x, y)))
            .collect();
        let next = Subspace::span(a.dim(), &products);
        if next.dim() == last.dim() {
            return None;
        }
        powers.push(next);
    }
    let nilpotency = powers.iter().position(|p| p.dim() == 0).map_or(1, |k| k + 1);
    Some(RadicalFiltration { powers, nilpotency })
}

/// `r`, `r²`, and the nilpotency degree of the radical.
pub fn radical_filtration(a: &RealizedAlgebra) -> RadicalFiltration {
    radical_filtration_of(&a.carrier, &a.radical).expect("radical of a realized algebra is nilpotent")
}

/// Outcome of [`check_trace_lemma`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLemmaReport {
    pub n: usize,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<Matrix>,
}

impl TraceLemmaReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.passed == self.trials
    }
}

/// For random nonzero `a ∈ M_n(ℚ)`, checks some matrix unit `y` has `t(ay) ≠ 0`.
pub fn check_trace_lemma(n: usize, trials: usize, seed: u64) -> TraceLemmaReport {
    let alg = matrix_algebra(n);
    let tau = alg.trace_vector();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut passed = 0;
    for _ in 0..trials {
        let a: Vec<Scalar> = loop {
            let v: Vec<Scalar> = (0..n * n).map(|_| int(rng.gen_range(-3..=3))).collect();
            if !is_zero_vec(&v) {
                break v;
            }
        };
        let hit = (0..alg.dim()).any(|y| {
            let ay = alg.mul(&a, &alg.basis(y));
            let t = ay.iter().zip(&tau).fold(Scalar::zero(), |acc, (c, t)| acc + c * t);
            !t.is_zero()
        });
        if hit {
            passed += 1;
        } else {
            failures.push(Matrix::from_vec(n, n, a).unwrap());
        }
    }
    TraceLemmaReport {
        n,
        trials,
        passed,
        failures,
    }
}

/// A left module over a structure-constant algebra, given by the action
/// matrix of every basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftModule {
    pub dim: usize,
    pub actions: Vec<Matrix>,
}

impl LeftModule {
    /// Left regular restricted to a left ideal (any subspace stable under left multiplication).
    pub fn left_ideal(a: &StructureConstAlgebra, ideal: &Subspace) -> LeftModule {
        let actions = (0..a.dim())
            .map(|b| {
                let l = a.left_mul_matrix(&a.basis(b));
                let cols: Vec<Vec<Scalar>> = ideal
                    .basis()
                    .iter()
                    .map(|v| ideal.coords(&l.mul_vec(v)).expect("subspace is a left ideal"))
                    .collect();
                Matrix::from_columns(ideal.dim(), &cols)
            })
            .collect();
        LeftModule {
            dim: ideal.dim(),
            actions,
        }
    }

    /// Submodule on a stable subspace.
    pub fn submodule(&self, sub: &Subspace) -> LeftModule {
        let actions = self
            .actions
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Scalar>> = sub
                    .basis()
                    .iter()
                    .map(|v| sub.coords(&m.mul_vec(v)).expect("subspace is a submodule"))
                    .collect();
                Matrix::from_columns(sub.dim(), &cols)
            })
            .collect();
        LeftModule {
            dim: sub.dim(),
            actions,
        }
    }

    /// Quotient by a stable subspace.
    pub fn quotient(&self, sub: &Subspace) -> LeftModule {
        let q = Quotient::new(sub.clone());
        LeftModule {
            dim: q.dim(),
            actions: self.actions.iter().map(|m| q.induced_map(m)).collect(),
        }
    }

    /// `Hom_A(self, other)` as intertwiners.
    pub fn hom(&self, other: &LeftModule) -> Vec<Matrix> {
        let pairs: Vec<(&Matrix, &Matrix)> = self.actions.iter().zip(&other.actions).collect();
        intertwiners(other.dim, self.dim, &pairs)
    }

    pub fn hom_dim(&self, other: &LeftModule) -> usize {
        self.hom(other).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::named::*;

    fn a3_with_zero_relation() -> BoundQuiverPresentation {
        let q = linear(3);
        let rel = BoundQuiverPresentation::relation(&q, &[(1, &["a1", "a2"])]).unwrap();
        BoundQuiverPresentation::new(q, vec![rel], 2).unwrap()
    }

    #[test]
    fn realize_examples() {
        let a2 = realize_bound_quiver(&BoundQuiverPresentation::free(linear(2), 2).unwrap()).unwrap();
        assert_eq!((a2.dim(), a2.radical.dim()), (3, 1));

        let k = realize_bound_quiver(&BoundQuiverPresentation::free(kronecker(2), 2).unwrap()).unwrap();
        assert_eq!((k.dim(), k.radical.dim()), (4, 2));

        let a3 = realize_bound_quiver(&a3_with_zero_relation()).unwrap();
        assert_eq!(a3.dim(), 5);
        assert_eq!(radical_filtration(&a3).radical_square().dim(), 0);
    }

    #[test]
    fn realize_rejects_non_admissible_bound() {
        let p = BoundQuiverPresentation::free(loops(1), 3).unwrap();
        assert!(matches!(
            realize_bound_quiver(&p),
            Err(AlgebraError::NotAdmissible { bound: 3, .. })
        ));
    }

    #[test]
    fn admissibility_examples() {
        assert!(verify_admissible(&a3_with_zero_relation()).passed());

        let q = linear(2);
        let rel = BoundQuiverPresentation::relation(&q, &[(1, &["a1"])]).unwrap();
        let p = BoundQuiverPresentation::new(q, vec![rel], 2).unwrap();
        let report = verify_admissible(&p);
        assert!(!report.relations_in_j2);
        assert_eq!(report.offending_relations, vec![0]);

        let report = verify_admissible(&BoundQuiverPresentation::free(loops(1), 3).unwrap());
        assert!(!report.power_in_ideal);
        assert_eq!(report.irreducible_paths, vec!["x*x*x".to_string()]);
    }

    #[test]
    fn trivial_path_relation_rejected() {
        let q = linear(2);
        let rel = vec![(int(1), Path::trivial(0))];
        assert_eq!(
            BoundQuiverPresentation::new(q, vec![rel], 2).unwrap_err(),
            AlgebraError::RelationOutsideArrowIdeal { index: 0 }
        );
    }

    #[test]
    fn commutativity_relation_identifies_paths() {
        let q = Quiver::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let rel = BoundQuiverPresentation::relation(&q, &[(1, &["a", "b"]), (-1, &["c", "d"])]).unwrap();
        let alg = realize_bound_quiver(&BoundQuiverPresentation::new(q, vec![rel], 3).unwrap()).unwrap();
        assert_eq!(alg.dim(), 9);
        let f = radical_filtration(&alg);
        assert_eq!((f.radical().dim(), f.radical_square().dim(), f.nilpotency), (5, 1, 3));
    }

    #[test]
    fn blow_up_dimensions() {
        let a2 = realize_bound_quiver(&BoundQuiverPresentation::free(linear(2), 2).unwrap()).unwrap();
        assert_eq!(blow_up(&a2, &[1, 1]).unwrap().dim(), 3);
        assert_eq!(blow_up(&a2, &[2, 3]).unwrap().dim(), 19);
        let k = realize_bound_quiver(&BoundQuiverPresentation::free(kronecker(2), 2).unwrap()).unwrap();
        assert_eq!(blow_up(&k, &[1, 2]).unwrap().dim(), 9);
        assert!(matches!(
            blow_up(&a2, &[0, 1]),
            Err(AlgebraError::BadMultiplicity { .. })
        ));
    }

    #[test]
    fn identity_blow_up_has_same_structure_constants() {
        let a3 = realize_bound_quiver(&a3_with_zero_relation()).unwrap();
        let b = blow_up(&a3, &[1, 1, 1]).unwrap();
        let n = a3.dim();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(a3.carrier.basis_product(x, y), b.carrier.basis_product(x, y));
            }
        }
    }

    #[test]
    fn blown_up_blocks_validate() {
        let a2 = realize_bound_quiver(&BoundQuiverPresentation::free(linear(2), 2).unwrap()).unwrap();
        let b = blow_up(&a2, &[2, 3]).unwrap();
        b.validate().unwrap();
        let blocks = b.blocks().unwrap();
        assert_eq!(blocks.iter().map(|b| b.n).collect::<Vec<_>>(), [2, 3]);
    }

    #[test]
    fn trace_examples() {
        let m2 = matrix_algebra(2);
        let e11 = m2.basis(SplitSemisimple::matrix(2).unit_index(0, 0, 0));
        assert_eq!(regular_trace(&m2, &e11), int(2));
        assert_eq!(regular_trace(&m2, &zero_vec(4)), int(0));
        let dual = truncated_polynomial(2);
        assert_eq!(regular_trace(&dual, &dual.basis(1)), int(0));
    }

    #[test]
    fn trace_form_radical_examples() {
        assert_eq!(radical_traceform(&matrix_algebra(2)).dim(), 0);
        let a2 = realize_bound_quiver(&BoundQuiverPresentation::free(linear(2), 2).unwrap()).unwrap();
        assert_eq!(radical_traceform(&a2.carrier), a2.radical);
        let dual = truncated_polynomial(2);
        assert_eq!(radical_traceform(&dual), Subspace::span(2, &[dual.basis(1)]));
    }

    #[test]
    fn filtration_examples() {
        let a2 = realize_bound_quiver(&BoundQuiverPresentation::free(linear(2), 2).unwrap()).unwrap();
        let f = radical_filtration(&a2);
        assert_eq!((f.radical().dim(), f.radical_square().dim(), f.nilpotency), (1, 0, 2));

        let a3 = realize_bound_quiver(&BoundQuiverPresentation::free(linear(3), 3).unwrap()).unwrap();
        let f = radical_filtration(&a3);
        assert_eq!((f.radical().dim(), f.radical_square().dim(), f.nilpotency), (3, 1, 3));

        let ss = RealizedAlgebra::raw(matrix_algebra(2), None, None).unwrap();
        let f = radical_filtration(&ss);
        assert_eq!((f.radical().dim(), f.nilpotency), (0, 1));
    }

    #[test]
    fn trace_lemma_small_sizes() {
        assert!(check_trace_lemma(2, 50, 7).all_passed());
        assert!(check_trace_lemma(3, 50, 7).all_passed());
    }

    #[test]
    fn non_associative_table_rejected() {
        // e·e = e, e·x = x, x·e = 0, x·x = x: (x·e)·x = 0 but x·(e·x) = x
        let labels = vec!["e".to_string(), "x".to_string()];
        let one = Scalar::one();
        let table = vec![
            vec![(0, one.clone())],
            vec![(1, one.clone())],
            vec![],
            vec![(1, one.clone())],
        ];
        assert!(StructureConstAlgebra::new(labels, table, vec![one, Scalar::zero()]).is_err());
    }
}
