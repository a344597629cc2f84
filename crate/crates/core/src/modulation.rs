//! Pseudo-modulations over split semisimple algebras (concrete) or block
//! data (symbolic): bimodule ranks, freeness, Hom duality, classification,
//! group species and isomorphism.

use std::collections::BTreeMap;

use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{SemisimpleSpec, SplitSemisimple, StructureConstAlgebra};
use crate::exactla::{ceil_div, intertwiners, unit_vec, zero_vec, Matrix, Scalar, Subspace};
use crate::quiver::{
    search_bijections, valuation_witness, PseudoValuedQuiver, QuiverError, ValuedEdge,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModulationError {
    #[error("rank computation requires semisimple blocks")]
    NotSemisimple,
    #[error("bimodule action invalid: {0}")]
    BadAction(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("bimodule {from}->{to} does not match the vertex algebras")]
    AlgebraMismatch { from: String, to: String },
    #[error("duplicate bimodule {from}->{to}")]
    DuplicateBimodule { from: String, to: String },
    #[error("symbolic bimodule {from}->{to} has exactly one zero rank ({d_ij}, {d_ji})")]
    HalfZeroRanks { from: String, to: String, d_ij: u64, d_ji: u64 },
    #[error("group {vertex}: Σ n²ε = {found} but |Γ| = {order}")]
    GroupBlocks { vertex: String, order: usize, found: usize },
    #[error("group {0}: no block data and not cyclic")]
    MissingGroupBlocks(String),
    #[error("bimodule {from}->{to} is not free")]
    NotFree { from: String, to: String },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A finitely generated `A_i`-`A_j`-bimodule over split semisimple algebras,
/// given by the action matrix of every matrix-unit basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteBimodule {
    left: SplitSemisimple,
    right: SplitSemisimple,
    dim: usize,
    /// `left_actions[a]` is `m ↦ b_a·m`.
    left_actions: Vec<Matrix>,
    /// `right_actions[b]` is `m ↦ m·b_b`.
    right_actions: Vec<Matrix>,
}

impl ConcreteBimodule {
    /// Validates unitality, associativity of both actions and that they commute.
    pub fn new(
        left: SplitSemisimple,
        right: SplitSemisimple,
        dim: usize,
        left_actions: Vec<Matrix>,
        right_actions: Vec<Matrix>,
    ) -> Result<Self, ModulationError> {
        let m = ConcreteBimodule {
            left,
            right,
            dim,
            left_actions,
            right_actions,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), ModulationError> {
        let bad = |s: &str| Err(ModulationError::BadAction(s.to_string()));
        if self.left_actions.len() != self.left.dim() || self.right_actions.len() != self.right.dim() {
            return bad("one action matrix per basis element expected");
        }
        let square = |m: &Matrix| m.rows() == self.dim && m.cols() == self.dim;
        if !self.left_actions.iter().chain(&self.right_actions).all(square) {
            return bad("action matrices must be dim × dim");
        }
        let zero = Matrix::zeros(self.dim, self.dim);
        for (alg, acts, name) in [
            (&self.left, &self.left_actions, "left"),
            (&self.right, &self.right_actions, "right"),
        ] {
            let mut sum = zero.clone();
            for (k, u) in alg.unit().iter().enumerate() {
                if !u.is_zero() {
                    sum = sum.add(&acts[k]);
                }
            }
            if sum != Matrix::identity(self.dim) {
                return Err(ModulationError::BadAction(format!("{name} action is not unital")));
            }
            for x in 0..alg.dim() {
                for y in 0..alg.dim() {
                    let xy = alg.basis_product(x, y).map_or(&zero, |k| &acts[k]);
                    // left: L_x L_y = L_{xy}; right: R_y R_x = R_{xy}
                    let composed = if name == "left" {
                        acts[x].mul(&acts[y])
                    } else {
                        acts[y].mul(&acts[x])
                    };
                    if &composed != xy {
                        return Err(ModulationError::BadAction(format!(
                            "{name} action is not associative"
                        )));
                    }
                }
            }
        }
        for l in &self.left_actions {
            for r in &self.right_actions {
                if l.mul(r) != r.mul(l) {
                    return bad("left and right actions do not commute");
                }
            }
        }
        Ok(())
    }

    pub fn zero(left: SplitSemisimple, right: SplitSemisimple) -> Self {
        let left_actions = vec![Matrix::zeros(0, 0); left.dim()];
        let right_actions = vec![Matrix::zeros(0, 0); right.dim()];
        ConcreteBimodule {
            left,
            right,
            dim: 0,
            left_actions,
            right_actions,
        }
    }

    /// `(A_i ⊗ A_j)^t` with basis `(copy, a, b)` and actions on the outer factors.
    pub fn free(left: SplitSemisimple, right: SplitSemisimple, t: usize) -> Self {
        let (p, q) = (left.dim(), right.dim());
        let dim = t * p * q;
        let index = |copy: usize, a: usize, b: usize| (copy * p + a) * q + b;
        let left_actions = (0..p)
            .map(|x| {
                let mut m = Matrix::zeros(dim, dim);
                for copy in 0..t {
                    for a in 0..p {
                        if let Some(xa) = left.basis_product(x, a) {
                            for b in 0..q {
                                m.set(index(copy, xa, b), index(copy, a, b), Scalar::one());
                            }
                        }
                    }
                }
                m
            })
            .collect();
        let right_actions = (0..q)
            .map(|y| {
                let mut m = Matrix::zeros(dim, dim);
                for copy in 0..t {
                    for a in 0..p {
                        for b in 0..q {
                            if let Some(by) = right.basis_product(b, y) {
                                m.set(index(copy, a, by), index(copy, a, b), Scalar::one());
                            }
                        }
                    }
                }
                m
            })
            .collect();
        ConcreteBimodule {
            left,
            right,
            dim,
            left_actions,
            right_actions,
        }
    }

    /// The simple bimodule `S_a ⊗ S_b^*` of `p_a × q_b` matrices.
    pub fn simple(left: SplitSemisimple, a: usize, right: SplitSemisimple, b: usize) -> Self {
        let (p, q) = (left.blocks()[a], right.blocks()[b]);
        let dim = p * q;
        let left_actions = (0..left.dim())
            .map(|x| {
                let mut m = Matrix::zeros(dim, dim);
                let (blk, r, c) = left.unit_coords(x);
                if blk == a {
                    // E_rc · m_{cy} = m_{ry}
                    for y in 0..q {
                        m.set(r * q + y, c * q + y, Scalar::one());
                    }
                }
                m
            })
            .collect();
        let right_actions = (0..right.dim())
            .map(|x| {
                let mut m = Matrix::zeros(dim, dim);
                let (blk, r, c) = right.unit_coords(x);
                if blk == b {
                    // m_{xr} · E_rc = m_{xc}
                    for row in 0..p {
                        m.set(row * q + c, row * q + r, Scalar::one());
                    }
                }
                m
            })
            .collect();
        ConcreteBimodule {
            left,
            right,
            dim,
            left_actions,
            right_actions,
        }
    }

    /// `⊕_{a,b} (S_a ⊗ S_b^*)^{mult[a][b]}`.
    pub fn from_multiplicities(
        left: SplitSemisimple,
        right: SplitSemisimple,
        mult: &[Vec<usize>],
    ) -> Result<Self, ModulationError> {
        if mult.len() != left.blocks().len() || mult.iter().any(|r| r.len() != right.blocks().len()) {
            return Err(ModulationError::BadAction(
                "multiplicity matrix must be (left blocks) × (right blocks)".into(),
            ));
        }
        let mut acc = ConcreteBimodule::zero(left.clone(), right.clone());
        for (a, row) in mult.iter().enumerate() {
            for (b, &k) in row.iter().enumerate() {
                for _ in 0..k {
                    acc = acc.direct_sum(&ConcreteBimodule::simple(left.clone(), a, right.clone(), b));
                }
            }
        }
        Ok(acc)
    }

    pub fn direct_sum(&self, other: &ConcreteBimodule) -> ConcreteBimodule {
        assert!(self.left == other.left && self.right == other.right, "same algebras");
        ConcreteBimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: self.dim + other.dim,
            left_actions: self
                .left_actions
                .iter()
                .zip(&other.left_actions)
                .map(|(x, y)| x.direct_sum(y))
                .collect(),
            right_actions: self
                .right_actions
                .iter()
                .zip(&other.right_actions)
                .map(|(x, y)| x.direct_sum(y))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &SplitSemisimple {
        &self.left
    }

    pub fn right_algebra(&self) -> &SplitSemisimple {
        &self.right
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left_actions
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right_actions
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// `mult[a][b]` = number of copies of `S_a ⊗ S_b^*`, read off as
    /// `rank(L_{E^a_11} R_{E^b_11})`.
    pub fn multiplicities(&self) -> Vec<Vec<usize>> {
        block_multiplicities(
            &self.left,
            &self.right,
            |a| &self.left_actions[self.left.unit_index(a, 0, 0)],
            |b| &self.right_actions[self.right.unit_index(b, 0, 0)],
        )
    }
}

fn block_multiplicities<'a>(
    left: &SplitSemisimple,
    right: &SplitSemisimple,
    left_e11: impl Fn(usize) -> &'a Matrix,
    right_e11: impl Fn(usize) -> &'a Matrix,
) -> Vec<Vec<usize>> {
    (0..left.blocks().len())
        .map(|a| {
            (0..right.blocks().len())
                .map(|b| left_e11(a).mul(right_e11(b)).rank())
                .collect()
        })
        .collect()
}

/// `(d_ij, d_ji, t)`: right rank over `A_j`, left rank over `A_i`, bimodule rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BimoduleRanks {
    pub d_ij: u64,
    pub d_ji: u64,
    pub t: u64,
}

/// Minimal generator counts of `M` on each side and as a bimodule.
pub fn bimodule_ranks(m: &ConcreteBimodule) -> BimoduleRanks {
    let (p, q) = (m.left.blocks(), m.right.blocks());
    // the regular module of M_n contains n copies of the simple module
    let d_ij = (0..q.len())
        .map(|b| {
            let mult = m.right_actions[m.right.unit_index(b, 0, 0)].rank();
            ceil_div(mult as u64, q[b] as u64)
        })
        .max()
        .unwrap_or(0);
    let d_ji = (0..p.len())
        .map(|a| {
            let mult = m.left_actions[m.left.unit_index(a, 0, 0)].rank();
            ceil_div(mult as u64, p[a] as u64)
        })
        .max()
        .unwrap_or(0);
    let mult = m.multiplicities();
    let t = mult
        .iter()
        .enumerate()
        .flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(move |(b, &k)| ceil_div(k as u64, (p[a] * q[b]) as u64))
        })
        .max()
        .unwrap_or(0);
    BimoduleRanks { d_ij, d_ji, t }
}

/// Whether `M ≅ (A_i ⊗ A_j^op)^t` for some `t`.
pub fn is_free_bimodule(m: &ConcreteBimodule) -> bool {
    free_rank(m).is_some()
}

/// The `t` with `M ≅ (A_i ⊗ A_j^op)^t`, if any.
pub fn free_rank(m: &ConcreteBimodule) -> Option<u64> {
    let (p, q) = (m.left.blocks(), m.right.blocks());
    let mult = m.multiplicities();
    let t = mult[0][0] / (p[0] * q[0]);
    let free = mult.iter().enumerate().all(|(a, row)| {
        row.iter()
            .enumerate()
            .all(|(b, &k)| k == t * p[a] * q[b])
    });
    free.then_some(t as u64)
}

/// Dimensions of the two Hom duals and whether they agree as bimodules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDuality {
    /// `dim Hom_{A_i}(M, A_i)`.
    pub left_dual_dim: usize,
    /// `dim Hom_{A_j}(M, A_j)`.
    pub right_dual_dim: usize,
    /// `A_j`-`A_i` block multiplicities of the left dual.
    pub left_dual_multiplicities: Vec<Vec<usize>>,
    pub right_dual_multiplicities: Vec<Vec<usize>>,
    pub iso: bool,
}

/// Action matrices on a space of `rows × cols` matrices spanned by `basis`,
/// for the maps `X ↦ f(X)`.
fn induced_actions(space: &Subspace, rows: usize, cols: usize, f: impl Fn(&Matrix) -> Matrix) -> Matrix {
    let images: Vec<Vec<Scalar>> = space
        .basis()
        .iter()
        .map(|v| {
            let x = Matrix::from_vec(rows, cols, v.clone()).expect("hom shape");
            let y = f(&x);
            let flat: Vec<Scalar> = (0..rows).flat_map(|i| y.row(i).to_vec()).collect();
            space.coords(&flat).expect("Hom space is a sub-bimodule")
        })
        .collect();
    Matrix::from_columns(space.dim(), &images)
}

/// Computes `Hom_{A_i}(M, A_i)` and `Hom_{A_j}(M, A_j)` with the intertwiner
/// solver and compares their `A_j`-`A_i` bimodule structure.
pub fn hom_dual_dims(m: &ConcreteBimodule) -> HomDuality {
    let ai = m.left.to_structure_constants();
    let aj = m.right.to_structure_constants();
    let flatten = |xs: Vec<Matrix>| -> Vec<Vec<Scalar>> {
        xs.into_iter()
            .map(|x| (0..x.rows()).flat_map(|i| x.row(i).to_vec()).collect())
            .collect()
    };
    let left_mults = |alg: &StructureConstAlgebra| -> Vec<Matrix> {
        (0..alg.dim()).map(|a| alg.left_mul_matrix(&alg.basis(a))).collect()
    };
    let right_mults = |alg: &StructureConstAlgebra| -> Vec<Matrix> {
        (0..alg.dim()).map(|a| alg.right_mul_matrix(&alg.basis(a))).collect()
    };
    let (li, ri, lj, rj) = (left_mults(&ai), right_mults(&ai), left_mults(&aj), right_mults(&aj));

    // f(a·m) = a·f(m)
    let pairs: Vec<(&Matrix, &Matrix)> = m.left_actions.iter().zip(&li).collect();
    let left_hom = Subspace::span(ai.dim() * m.dim, &flatten(intertwiners(ai.dim(), m.dim, &pairs)));
    // g(m·b) = g(m)·b
    let pairs: Vec<(&Matrix, &Matrix)> = m.right_actions.iter().zip(&rj).collect();
    let right_hom = Subspace::span(aj.dim() * m.dim, &flatten(intertwiners(aj.dim(), m.dim, &pairs)));

    let e11 = |alg: &SplitSemisimple, blk: usize| alg.unit_index(blk, 0, 0);
    // (b·f)(m) = f(m·b), (f·a)(m) = f(m)·a
    let lb: Vec<Matrix> = (0..m.right.blocks().len())
        .map(|b| {
            induced_actions(&left_hom, ai.dim(), m.dim, |x| x.mul(&m.right_actions[e11(&m.right, b)]))
        })
        .collect();
    let la: Vec<Matrix> = (0..m.left.blocks().len())
        .map(|a| induced_actions(&left_hom, ai.dim(), m.dim, |x| ri[e11(&m.left, a)].mul(x)))
        .collect();
    // (b·g)(m) = b·g(m), (g·a)(m) = g(a·m)
    let rb: Vec<Matrix> = (0..m.right.blocks().len())
        .map(|b| induced_actions(&right_hom, aj.dim(), m.dim, |y| lj[e11(&m.right, b)].mul(y)))
        .collect();
    let ra: Vec<Matrix> = (0..m.left.blocks().len())
        .map(|a| {
            induced_actions(&right_hom, aj.dim(), m.dim, |y| y.mul(&m.left_actions[e11(&m.left, a)]))
        })
        .collect();
    let left_dual_multiplicities = block_multiplicities(&m.right, &m.left, |b| &lb[b], |a| &la[a]);
    let right_dual_multiplicities = block_multiplicities(&m.right, &m.left, |b| &rb[b], |a| &ra[a]);
    HomDuality {
        left_dual_dim: left_hom.dim(),
        right_dual_dim: right_hom.dim(),
        iso: left_hom.dim() == right_hom.dim() && left_dual_multiplicities == right_dual_multiplicities,
        left_dual_multiplicities,
        right_dual_multiplicities,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexAlgebra {
    Split(SplitSemisimple),
    /// Block data only; non-split blocks are never realized.
    Symbolic(SemisimpleSpec),
}

impl VertexAlgebra {
    pub fn field() -> Self {
        VertexAlgebra::Split(SplitSemisimple::field())
    }

    pub fn dim(&self) -> usize {
        match self {
            VertexAlgebra::Split(s) => s.dim(),
            VertexAlgebra::Symbolic(s) => s.dim(),
        }
    }

    pub fn spec(&self) -> SemisimpleSpec {
        match self {
            VertexAlgebra::Split(s) => s.into(),
            VertexAlgebra::Symbolic(s) => s.clone(),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.spec().is_simple()
    }

    /// A division algebra: one block with `n = 1`.
    pub fn is_division(&self) -> bool {
        matches!(self.spec().blocks(), [(1, _)])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BimoduleData {
    Concrete(ConcreteBimodule),
    Symbolic {
        d_ij: u64,
        d_ji: u64,
        free: bool,
        /// Declared answer to the Hom-duality condition, if known.
        hom_duality: Option<bool>,
    },
}

impl BimoduleData {
    pub fn is_zero(&self) -> bool {
        match self {
            BimoduleData::Concrete(m) => m.is_zero(),
            BimoduleData::Symbolic { d_ij, d_ji, .. } => *d_ij == 0 && *d_ji == 0,
        }
    }

    pub fn ranks(&self) -> (u64, u64) {
        match self {
            BimoduleData::Concrete(m) => {
                let r = bimodule_ranks(m);
                (r.d_ij, r.d_ji)
            }
            BimoduleData::Symbolic { d_ij, d_ji, .. } => (*d_ij, *d_ji),
        }
    }
}

/// How the generalized (Hom-duality) flag was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// Both Hom duals computed and compared.
    Verified,
    /// Applied from the semisimple characteristic-0 rule under declaration.
    RuleDerived,
    /// Taken from user-declared data.
    Declared,
    /// Not decidable from the given data.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub pseudo: bool,
    pub pre: bool,
    pub generalized: bool,
    pub generalized_evidence: Evidence,
    pub regular: bool,
    pub normal: bool,
    pub seminormal: bool,
    /// Classical modulation: division algebras with duality.
    pub classical: bool,
    pub valued_graph: bool,
    /// Ordered pairs with `_iM_j ≠ 0` but `_jM_i = 0`.
    pub asymmetric_pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoModulation {
    vertices: Vec<String>,
    algebras: Vec<VertexAlgebra>,
    bimodules: BTreeMap<(usize, usize), BimoduleData>,
    algebraically_closed_char0: bool,
    classification: Classification,
}

impl PseudoModulation {
    pub fn new(
        vertices: Vec<String>,
        algebras: Vec<VertexAlgebra>,
        bimodules: Vec<(usize, usize, BimoduleData)>,
        algebraically_closed_char0: bool,
    ) -> Result<Self, ModulationError> {
        assert_eq!(vertices.len(), algebras.len(), "one algebra per vertex");
        let mut map = BTreeMap::new();
        for (i, j, data) in bimodules {
            let name = |v: usize| {
                vertices
                    .get(v)
                    .cloned()
                    .ok_or_else(|| ModulationError::UnknownVertex(format!("#{v}")))
            };
            let (from, to) = (name(i)?, name(j)?);
            match &data {
                BimoduleData::Concrete(m) => {
                    let matches = matches!(&algebras[i], VertexAlgebra::Split(a) if a == m.left_algebra())
                        && matches!(&algebras[j], VertexAlgebra::Split(b) if b == m.right_algebra());
                    if !matches {
                        return Err(ModulationError::AlgebraMismatch { from, to });
                    }
                }
                BimoduleData::Symbolic { d_ij, d_ji, .. } => {
                    if (*d_ij == 0) != (*d_ji == 0) {
                        return Err(ModulationError::HalfZeroRanks {
                            from,
                            to,
                            d_ij: *d_ij,
                            d_ji: *d_ji,
                        });
                    }
                }
            }
            if data.is_zero() {
                continue;
            }
            if map.insert((i, j), data).is_some() {
                return Err(ModulationError::DuplicateBimodule { from, to });
            }
        }
        let mut m = PseudoModulation {
            vertices,
            algebras,
            bimodules: map,
            algebraically_closed_char0,
            classification: Classification {
                pseudo: true,
                pre: false,
                generalized: false,
                generalized_evidence: Evidence::Undetermined,
                regular: false,
                normal: false,
                seminormal: false,
                classical: false,
                valued_graph: false,
                asymmetric_pairs: Vec::new(),
            },
        };
        m.classification = compute_classification(&m);
        Ok(m)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn algebras(&self) -> &[VertexAlgebra] {
        &self.algebras
    }

    /// Nonzero bimodules keyed by `(i, j)`.
    pub fn bimodules(&self) -> &BTreeMap<(usize, usize), BimoduleData> {
        &self.bimodules
    }

    pub fn bimodule(&self, i: usize, j: usize) -> Option<&BimoduleData> {
        self.bimodules.get(&(i, j))
    }

    pub fn algebraically_closed_char0(&self) -> bool {
        self.algebraically_closed_char0
    }

    pub fn is_concrete(&self) -> bool {
        self.algebras.iter().all(|a| matches!(a, VertexAlgebra::Split(_)))
            && self.bimodules.values().all(|b| matches!(b, BimoduleData::Concrete(_)))
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }
}

fn compute_classification(m: &PseudoModulation) -> Classification {
    let pre = m.bimodules.values().all(|b| match b {
        BimoduleData::Concrete(c) => is_free_bimodule(c),
        BimoduleData::Symbolic { free, .. } => *free,
    });
    let mut generalized = true;
    let mut evidence = Evidence::Verified;
    let weaker = |current: Evidence, next: Evidence| match (current, next) {
        (Evidence::Undetermined, _) | (_, Evidence::Undetermined) => Evidence::Undetermined,
        (Evidence::Declared, _) | (_, Evidence::Declared) => Evidence::Declared,
        (Evidence::RuleDerived, _) | (_, Evidence::RuleDerived) => Evidence::RuleDerived,
        _ => Evidence::Verified,
    };
    for b in m.bimodules.values() {
        let (ok, ev) = match b {
            BimoduleData::Concrete(c) => (hom_dual_dims(c).iso, Evidence::Verified),
            BimoduleData::Symbolic {
                hom_duality: Some(d),
                ..
            } => (*d, Evidence::Declared),
            BimoduleData::Symbolic { hom_duality: None, .. } => {
                if m.algebraically_closed_char0 {
                    (true, Evidence::RuleDerived)
                } else {
                    (false, Evidence::Undetermined)
                }
            }
        };
        generalized &= ok;
        evidence = weaker(evidence, ev);
    }
    let normal = m.algebras.iter().all(VertexAlgebra::is_simple);
    let asymmetric_pairs = m
        .bimodules
        .keys()
        .filter(|(i, j)| !m.bimodules.contains_key(&(*j, *i)))
        .map(|&(i, j)| (m.vertices[i].clone(), m.vertices[j].clone()))
        .collect();
    let valued_graph = pseudo_valued_quiver_of(m)
        .ok()
        .and_then(|q| valuation_witness(&q))
        .is_some();
    Classification {
        pseudo: true,
        pre,
        generalized,
        generalized_evidence: evidence,
        regular: pre && generalized,
        normal,
        seminormal: true,
        classical: generalized && m.algebras.iter().all(VertexAlgebra::is_division),
        valued_graph,
        asymmetric_pairs,
    }
}

pub fn classify(m: &PseudoModulation) -> Classification {
    m.classification.clone()
}

/// One oriented edge `i → j` per nonzero `_iM_j`, valued by its ranks.
pub fn pseudo_valued_quiver_of(m: &PseudoModulation) -> Result<PseudoValuedQuiver, QuiverError> {
    let edges = m
        .bimodules
        .iter()
        .map(|(&(from, to), b)| {
            let (d_ij, d_ji) = b.ranks();
            ValuedEdge { from, to, d_ij, d_ji }
        })
        .collect();
    PseudoValuedQuiver::new(m.vertices.clone(), edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum BimoduleSignature {
    Concrete { dim: usize, ranks: BimoduleRanks },
    Symbolic { d_ij: u64, d_ji: u64, free: bool, hom_duality: Option<bool> },
}

fn signature(b: &BimoduleData) -> BimoduleSignature {
    match b {
        BimoduleData::Concrete(c) => BimoduleSignature::Concrete {
            dim: c.dim(),
            ranks: bimodule_ranks(c),
        },
        BimoduleData::Symbolic {
            d_ij,
            d_ji,
            free,
            hom_duality,
        } => BimoduleSignature::Symbolic {
            d_ij: *d_ij,
            d_ji: *d_ji,
            free: *free,
            hom_duality: *hom_duality,
        },
    }
}

fn vertex_label(a: &VertexAlgebra) -> (bool, SemisimpleSpec) {
    (matches!(a, VertexAlgebra::Split(_)), a.spec().canonical())
}

/// A vertex bijection `θ` under which vertex algebras and bimodules agree.
///
/// Concrete bimodules over split semisimple algebras are compared through
/// their block multiplicities, allowing a consistent permutation of the
/// blocks of each vertex algebra.
pub fn modulation_iso(
    m1: &PseudoModulation,
    m2: &PseudoModulation,
    cap: usize,
) -> Result<Option<Vec<usize>>, QuiverError> {
    if m1.vertices.len() != m2.vertices.len() || m1.is_concrete() != m2.is_concrete() {
        return Ok(None);
    }
    let cells = |m: &PseudoModulation| -> Vec<Vec<Option<BimoduleSignature>>> {
        let n = m.vertices.len();
        (0..n)
            .map(|i| (0..n).map(|j| m.bimodule(i, j).map(signature)).collect())
            .collect()
    };
    let la: Vec<_> = m1.algebras.iter().map(vertex_label).collect();
    let lb: Vec<_> = m2.algebras.iter().map(vertex_label).collect();
    let mults = |m: &PseudoModulation| -> BTreeMap<(usize, usize), Vec<Vec<usize>>> {
        m.bimodules
            .iter()
            .filter_map(|(&k, b)| match b {
                BimoduleData::Concrete(c) => Some((k, c.multiplicities())),
                BimoduleData::Symbolic { .. } => None,
            })
            .collect()
    };
    let (mult1, mult2) = (mults(m1), mults(m2));
    search_bijections(&cells(m1), &cells(m2), Some(&la), Some(&lb), cap, |theta| {
        block_permutations_exist(m1, m2, theta, &mult1, &mult2)
    })
}

fn block_permutations_exist(
    m1: &PseudoModulation,
    m2: &PseudoModulation,
    theta: &[usize],
    mult1: &BTreeMap<(usize, usize), Vec<Vec<usize>>>,
    mult2: &BTreeMap<(usize, usize), Vec<Vec<usize>>>,
) -> bool {
    if mult1.is_empty() {
        return true;
    }
    let sizes = |m: &PseudoModulation, v: usize| -> Vec<usize> {
        m.algebras[v].spec().blocks().iter().map(|&(n, _)| n).collect()
    };
    let n = theta.len();
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(n);
    fn consistent(
        perms: &[Vec<usize>],
        theta: &[usize],
        mult1: &BTreeMap<(usize, usize), Vec<Vec<usize>>>,
        mult2: &BTreeMap<(usize, usize), Vec<Vec<usize>>>,
    ) -> bool {
        let v = perms.len() - 1;
        (0..=v).all(|k| {
            [(v, k), (k, v)].iter().all(|&(i, j)| match (mult1.get(&(i, j)), mult2.get(&(theta[i], theta[j]))) {
                (None, None) => true,
                (Some(a), Some(b)) => a.iter().enumerate().all(|(x, row)| {
                    row.iter()
                        .enumerate()
                        .all(|(y, &c)| b[perms[i][x]][perms[j][y]] == c)
                }),
                _ => false,
            })
        })
    }
    fn assign(
        v: usize,
        perms: &mut Vec<Vec<usize>>,
        candidates: &[Vec<Vec<usize>>],
        theta: &[usize],
        mult1: &BTreeMap<(usize, usize), Vec<Vec<usize>>>,
        mult2: &BTreeMap<(usize, usize), Vec<Vec<usize>>>,
    ) -> bool {
        if v == candidates.len() {
            return true;
        }
        for p in &candidates[v] {
            perms.push(p.clone());
            if consistent(perms, theta, mult1, mult2) && assign(v + 1, perms, candidates, theta, mult1, mult2) {
                return true;
            }
            perms.pop();
        }
        false
    }
    let candidates: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| size_preserving_permutations(&sizes(m1, v), &sizes(m2, theta[v])))
        .collect();
    assign(0, &mut perms, &candidates, theta, mult1, mult2)
}

/// All `π` with `b[π(x)] == a[x]`.
fn size_preserving_permutations(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    fn go(a: &[usize], b: &[usize], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a.len() {
            out.push(cur.clone());
            return;
        }
        for t in 0..b.len() {
            if !used[t] && b[t] == a[cur.len()] {
                used[t] = true;
                cur.push(t);
                go(a, b, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    if a.len() == b.len() {
        go(a, b, &mut vec![false; b.len()], &mut Vec::new(), &mut out);
    }
    out
}

/// Bimodule data attached to an ordered pair of a group species.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpeciesBimodule {
    /// `(kΓ_i ⊗ kΓ_j)^t`.
    Free { t: usize },
    /// Block multiplicities; split group algebras only.
    Multiplicities(Vec<Vec<usize>>),
    Ranks { d_ij: u64, d_ji: u64, free: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub order: usize,
    /// Wedderburn blocks of `kΓ_i`; computed over ℚ when absent and cyclic.
    pub blocks: Option<SemisimpleSpec>,
    pub cyclic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpeciesSpec {
    pub vertices: Vec<String>,
    pub groups: Vec<GroupData>,
    pub bimodules: Vec<(usize, usize, SpeciesBimodule)>,
    pub algebraically_closed_char0: bool,
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// `ℚC_m ≅ Π_{d | m} ℚ(ζ_d)`: one `(1, φ(d))` block per divisor.
pub fn cyclic_group_blocks(m: usize) -> SemisimpleSpec {
    assert!(m >= 1);
    let blocks = (1..=m).filter(|&d| m.is_multiple_of(d)).map(|d| (1, euler_phi(d))).collect();
    SemisimpleSpec::new(blocks).expect("positive blocks")
}

/// Ingests a group species as a pseudo-modulation over its group algebras.
pub fn from_group_species(g: &GroupSpeciesSpec) -> Result<PseudoModulation, ModulationError> {
    let mut algebras = Vec::with_capacity(g.groups.len());
    for (v, group) in g.vertices.iter().zip(&g.groups) {
        let spec = match (&group.blocks, group.cyclic) {
            (Some(s), _) => s.clone(),
            (None, true) => cyclic_group_blocks(group.order),
            (None, false) => return Err(ModulationError::MissingGroupBlocks(v.clone())),
        };
        if spec.dim() != group.order {
            return Err(ModulationError::GroupBlocks {
                vertex: v.clone(),
                order: group.order,
                found: spec.dim(),
            });
        }
        algebras.push(if spec.is_split() {
            VertexAlgebra::Split(
                SplitSemisimple::new(spec.blocks().iter().map(|&(n, _)| n).collect())
                    .expect("positive blocks"),
            )
        } else {
            VertexAlgebra::Symbolic(spec)
        });
    }
    let mut bimodules = Vec::new();
    for (i, j, data) in &g.bimodules {
        let (ai, aj) = (&algebras[*i], &algebras[*j]);
        let b = match (data, ai, aj) {
            (SpeciesBimodule::Free { t }, VertexAlgebra::Split(a), VertexAlgebra::Split(b)) => {
                BimoduleData::Concrete(ConcreteBimodule::free(a.clone(), b.clone(), *t))
            }
            (SpeciesBimodule::Free { t }, _, _) => BimoduleData::Symbolic {
                d_ij: (t * ai.dim()) as u64,
                d_ji: (t * aj.dim()) as u64,
                free: true,
                hom_duality: None,
            },
            (SpeciesBimodule::Multiplicities(mult), VertexAlgebra::Split(a), VertexAlgebra::Split(b)) => {
                BimoduleData::Concrete(ConcreteBimodule::from_multiplicities(a.clone(), b.clone(), mult)?)
            }
            (SpeciesBimodule::Multiplicities(_), _, _) => {
                return Err(ModulationError::Unsupported(
                    "multiplicity data needs split group algebras".into(),
                ))
            }
            (SpeciesBimodule::Ranks { d_ij, d_ji, free }, _, _) => BimoduleData::Symbolic {
                d_ij: *d_ij,
                d_ji: *d_ji,
                free: *free,
                hom_duality: None,
            },
        };
        bimodules.push((*i, *j, b));
    }
    PseudoModulation::new(g.vertices.clone(), algebras, bimodules, g.algebraically_closed_char0)
}

/// Every `ε_i` is a square `n_i²` and the `n_i` are pairwise coprime.
pub fn coprime_split_check(spec: &SemisimpleSpec) -> bool {
    let roots: Option<Vec<usize>> = spec
        .blocks()
        .iter()
        .map(|&(_, e)| {
            let r = e.sqrt();
            (r * r == e).then_some(r)
        })
        .collect();
    let Some(roots) = roots else {
        return false;
    };
    roots
        .iter()
        .enumerate()
        .all(|(i, a)| roots[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

/// `v ∈ A` as a coefficient vector in the matrix-unit basis.
pub fn matrix_unit(alg: &SplitSemisimple, block: usize, r: usize, c: usize) -> Vec<Scalar> {
    unit_vec(alg.dim(), alg.unit_index(block, r, c))
}

/// The zero vector of `A`.
pub fn zero_element(alg: &SplitSemisimple) -> Vec<Scalar> {
    zero_vec(alg.dim())
}
