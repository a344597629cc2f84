//! Natural quiver, natural valued quiver and valued Ext-quiver of a realized
//! algebra, with two independent routes to `dim Ext¹` between simples.

use thiserror::Error;

use crate::algebra::{
    radical_filtration, AlgebraError, Block, LeftModule, Provenance, RealizedAlgebra, SplitSemisimple,
};
use crate::exactla::{ceil_div, Matrix, Scalar, Subspace};
use crate::gpa::{gpa_build, induced_valued_quiver, GpaError, GpaVertexAlgebra};
use crate::modulation::{bimodule_ranks, ConcreteBimodule, ModulationError};
use crate::quiver::{PseudoValuedQuiver, Quiver, QuiverError, ValuedEdge, ValuedQuiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatextError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Modulation(#[from] ModulationError),
    #[error(transparent)]
    Gpa(#[from] GpaError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("no associated basic algebra: the input is not a blow-up")]
    MissingBase,
    #[error("blocks with ε > 1 are symbolic only")]
    NonSplit,
}

/// One simple block of `A/r` with its lifted idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInfo {
    pub index: usize,
    pub name: String,
    pub n: usize,
    pub eps: usize,
    /// Block identity `E_i = Σ_r E^i_rr`.
    pub identity: Vec<Scalar>,
    /// Primitive idempotent `u_i = E^i_11`.
    pub primitive: Vec<Scalar>,
}

pub fn semisimple_blocks(a: &RealizedAlgebra) -> Result<Vec<BlockInfo>, NatextError> {
    Ok(a.blocks()?
        .iter()
        .enumerate()
        .map(|(index, b)| BlockInfo {
            index,
            name: a.block_names.get(index).cloned().unwrap_or_else(|| (index + 1).to_string()),
            n: b.n,
            eps: b.eps,
            identity: b.identity(),
            primitive: b.primitive().to_vec(),
        })
        .collect())
}

/// `span{x·v·y : v ∈ space}`.
fn sandwich(a: &RealizedAlgebra, x: &[Scalar], space: &Subspace, y: &[Scalar]) -> Subspace {
    let images: Vec<Vec<Scalar>> = space
        .basis()
        .iter()
        .map(|v| a.carrier.mul(&a.carrier.mul(x, v), y))
        .collect();
    Subspace::span(a.dim(), &images)
}

/// `_iM_j = E_i(r/r²)E_j` as a concrete `M_{n_i}`-`M_{n_j}`-bimodule.
pub fn peirce_bimodule(a: &RealizedAlgebra, i: usize, j: usize) -> Result<ConcreteBimodule, NatextError> {
    let blocks = a.blocks()?;
    if blocks.iter().any(|b| b.eps != 1) {
        return Err(NatextError::NonSplit);
    }
    let f = radical_filtration(a);
    let (bi, bj) = (&blocks[i], &blocks[j]);
    let (ei, ej) = (bi.identity(), bj.identity());
    let s = sandwich(a, &ei, f.radical(), &ej);
    let t = sandwich(a, &ei, &f.radical_square(), &ej);
    let t_coords: Vec<Vec<Scalar>> = t
        .basis()
        .iter()
        .map(|v| s.coords(v).expect("E_i r² E_j ⊆ E_i r E_j"))
        .collect();
    let quotient = crate::exactla::Quotient::new(Subspace::span(s.dim(), &t_coords));
    let action = |f: &dyn Fn(&[Scalar]) -> Vec<Scalar>| -> Matrix {
        let cols: Vec<Vec<Scalar>> = s
            .basis()
            .iter()
            .map(|v| s.coords(&f(v)).expect("matrix units preserve E_i r E_j"))
            .collect();
        quotient.induced_map(&Matrix::from_columns(s.dim(), &cols))
    };
    let units = |b: &Block| -> Vec<Vec<Scalar>> { b.unit_list().into_iter().map(<[Scalar]>::to_vec).collect() };
    let left_actions = units(bi)
        .iter()
        .map(|u| action(&|v| a.carrier.mul(u, v)))
        .collect();
    let right_actions = units(bj)
        .iter()
        .map(|u| action(&|v| a.carrier.mul(v, u)))
        .collect();
    Ok(ConcreteBimodule::new(
        SplitSemisimple::matrix(bi.n),
        SplitSemisimple::matrix(bj.n),
        quotient.dim(),
        left_actions,
        right_actions,
    )?)
}

/// Vertices are the blocks of `A/r`; `t[i][j]` arrows `i → j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalQuiver {
    pub vertices: Vec<String>,
    pub t: Vec<Vec<u64>>,
    pub bimodule_dims: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
}

impl NaturalQuiver {
    pub fn to_quiver(&self) -> Quiver {
        let mut q = Quiver::new(&self.vertices, &[] as &[(String, String, String)]).expect("distinct block names");
        for (i, row) in self.t.iter().enumerate() {
            for (j, &t) in row.iter().enumerate() {
                for k in 0..t {
                    let name = if t == 1 {
                        format!("{}>{}", self.vertices[i], self.vertices[j])
                    } else {
                        format!("{}>{}#{}", self.vertices[i], self.vertices[j], k + 1)
                    };
                    q.add_arrow(&name, &self.vertices[i], &self.vertices[j])
                        .expect("fresh arrow name");
                }
            }
        }
        q
    }
}

pub fn natural_quiver(a: &RealizedAlgebra) -> Result<NaturalQuiver, NatextError> {
    let blocks = semisimple_blocks(a)?;
    let s = blocks.len();
    let mut t = vec![vec![0; s]; s];
    let mut dims = vec![vec![0; s]; s];
    for i in 0..s {
        for j in 0..s {
            let m = peirce_bimodule(a, i, j)?;
            dims[i][j] = m.dim();
            t[i][j] = bimodule_ranks(&m).t;
        }
    }
    Ok(NaturalQuiver {
        vertices: blocks.iter().map(|b| b.name.clone()).collect(),
        t,
        bimodule_dims: dims,
        block_sizes: blocks.iter().map(|b| b.n).collect(),
    })
}

/// The induced valued quiver of the associated generalized path algebra
/// `k(Δ_A, {M_{n_i}(k)})`.
pub fn natural_valued_quiver(a: &RealizedAlgebra) -> Result<ValuedQuiver, NatextError> {
    let nq = natural_quiver(a)?;
    let algebras = nq
        .block_sizes
        .iter()
        .map(|&n| GpaVertexAlgebra::split(SplitSemisimple::matrix(n)))
        .collect();
    let g = gpa_build(&nq.to_quiver(), algebras, Some(1))?;
    Ok(induced_valued_quiver(&g))
}

/// `m[i][j] = dim_k u_i(r/r²)u_j`.
pub fn ext_dims_lemma(a: &RealizedAlgebra) -> Result<Vec<Vec<usize>>, NatextError> {
    let blocks = semisimple_blocks(a)?;
    let f = radical_filtration(a);
    let r2 = f.radical_square();
    Ok(blocks
        .iter()
        .map(|bi| {
            blocks
                .iter()
                .map(|bj| {
                    sandwich(a, &bi.primitive, f.radical(), &bj.primitive).dim()
                        - sandwich(a, &bi.primitive, &r2, &bj.primitive).dim()
                })
                .collect()
        })
        .collect())
}

/// Projective cover `P_j = A·u_j`, its radical `r·u_j` and top `T_j`.
pub struct ProjectiveData {
    pub projective: LeftModule,
    pub radical: LeftModule,
    pub top: LeftModule,
}

pub fn projective_data(a: &RealizedAlgebra, u: &[Scalar]) -> ProjectiveData {
    let alg = &a.carrier;
    let p_vecs: Vec<Vec<Scalar>> = (0..alg.dim()).map(|b| alg.mul(&alg.basis(b), u)).collect();
    let p = Subspace::span(alg.dim(), &p_vecs);
    let rp_vecs: Vec<Vec<Scalar>> = a.radical.basis().iter().map(|x| alg.mul(x, u)).collect();
    let rp = Subspace::span(alg.dim(), &rp_vecs);
    let projective = LeftModule::left_ideal(alg, &p);
    let rp_in_p: Vec<Vec<Scalar>> = rp.basis().iter().map(|v| p.coords(v).expect("rP ⊆ P")).collect();
    let top = projective.quotient(&Subspace::span(p.dim(), &rp_in_p));
    ProjectiveData {
        projective,
        radical: LeftModule::left_ideal(alg, &rp),
        top,
    }
}

/// `dim Ext¹(T_j, T_i) = dim Hom(rP_j, T_i) − dim Hom(P_j, T_i) + dim Hom(T_j, T_i)`.
pub fn ext_dims_resolution(a: &RealizedAlgebra) -> Result<Vec<Vec<usize>>, NatextError> {
    let blocks = semisimple_blocks(a)?;
    let data: Vec<ProjectiveData> = blocks.iter().map(|b| projective_data(a, &b.primitive)).collect();
    Ok((0..blocks.len())
        .map(|i| {
            (0..blocks.len())
                .map(|j| {
                    let ti = &data[i].top;
                    data[j].radical.hom_dim(ti) + data[j].top.hom_dim(ti) - data[j].projective.hom_dim(ti)
                })
                .collect()
        })
        .collect())
}

/// `n_i = dim T_i / dim End(T_i)`.
pub fn simple_multiplicities(a: &RealizedAlgebra) -> Result<Vec<usize>, NatextError> {
    Ok(semisimple_blocks(a)?
        .iter()
        .map(|b| {
            let t = projective_data(a, &b.primitive).top;
            t.dim / t.hom_dim(&t)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedExtQuiver {
    /// Edge `i → j` valued `(e_ij, e_ji)` when `Ext¹(T_j, T_i) ≠ 0`.
    pub quiver: PseudoValuedQuiver,
    pub ext_dims: Vec<Vec<usize>>,
}

/// Over split blocks `D_i = k`, so `e_ij = e_ji = dim_k Ext¹(T_j, T_i)`.
pub fn valued_ext_quiver(a: &RealizedAlgebra) -> Result<ValuedExtQuiver, NatextError> {
    let blocks = semisimple_blocks(a)?;
    if blocks.iter().any(|b| b.eps != 1) {
        return Err(NatextError::NonSplit);
    }
    let dims = ext_dims_lemma(a)?;
    let mut edges = Vec::new();
    for (i, row) in dims.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if e > 0 {
                edges.push(ValuedEdge {
                    from: i,
                    to: j,
                    d_ij: e as u64,
                    d_ji: e as u64,
                });
            }
        }
    }
    Ok(ValuedExtQuiver {
        quiver: PseudoValuedQuiver::new(blocks.iter().map(|b| b.name.clone()).collect(), edges)?,
        ext_dims: dims,
    })
}

/// Same vertices and orientation, with `d_ij = e_ji` and `d_ji = e_ij`.
pub fn check_pair_opposite(nvq: &PseudoValuedQuiver, veq: &PseudoValuedQuiver) -> bool {
    nvq.vertices() == veq.vertices()
        && nvq.edges().len() == veq.edges().len()
        && nvq.edges().iter().zip(veq.edges()).all(|(d, e)| {
            (d.from, d.to) == (e.from, e.to) && d.d_ij == e.d_ji && d.d_ji == e.d_ij
        })
}

/// Symbolic pair-opposite check for a basic algebra with division blocks
/// of dimension `ε_i` and `m_ij` arrows: `d` is the induced valuation
/// `(m·ε_i, m·ε_j)`, `e` follows `e_ij = m_ij·ε_j`, `e_ji = m_ij·ε_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPairReport {
    pub d: Vec<ValuedEdge>,
    pub e: Vec<ValuedEdge>,
    pub passed: bool,
}

pub fn check_pair_opposite_symbolic(eps: &[u64], arrows: &[Vec<u64>]) -> Result<SymbolicPairReport, NatextError> {
    let names: Vec<String> = (1..=eps.len()).map(|i| i.to_string()).collect();
    let mut d = Vec::new();
    let mut e = Vec::new();
    for (i, row) in arrows.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if m == 0 {
                continue;
            }
            d.push(ValuedEdge { from: i, to: j, d_ij: m * eps[i], d_ji: m * eps[j] });
            e.push(ValuedEdge { from: i, to: j, d_ij: m * eps[j], d_ji: m * eps[i] });
        }
    }
    let dq = PseudoValuedQuiver::new(names.clone(), d.clone())?;
    let eq = PseudoValuedQuiver::new(names, e.clone())?;
    Ok(SymbolicPairReport {
        passed: check_pair_opposite(&dq, &eq),
        d,
        e,
    })
}

/// One checked identity with both sides printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        IdentityCheck {
            name: name.into(),
            passed: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaReport {
    pub checks: Vec<IdentityCheck>,
}

impl FormulaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Pipeline {
    names: Vec<String>,
    n: Vec<usize>,
    t: Vec<Vec<u64>>,
    m: Vec<Vec<u64>>,
    e: Vec<Vec<usize>>,
    e_resolution: Vec<Vec<usize>>,
    nvq: PseudoValuedQuiver,
    veq: PseudoValuedQuiver,
    declared: Vec<usize>,
}

fn pipeline(a: &RealizedAlgebra) -> Result<Pipeline, NatextError> {
    let Provenance::BlowUp { base, multiplicities, .. } = &a.provenance else {
        return Err(NatextError::MissingBase);
    };
    let nq = natural_quiver(a)?;
    Ok(Pipeline {
        names: nq.vertices.clone(),
        n: simple_multiplicities(a)?,
        m: natural_quiver(base)?.t,
        t: nq.t,
        e: ext_dims_lemma(a)?,
        e_resolution: ext_dims_resolution(a)?,
        nvq: natural_valued_quiver(a)?.quiver,
        veq: valued_ext_quiver(a)?.quiver,
        declared: multiplicities.clone(),
    })
}

fn common_checks(p: &Pipeline, checks: &mut Vec<IdentityCheck>) {
    checks.push(IdentityCheck::new("Ext routes agree", format!("{:?}", p.e), format!("{:?}", p.e_resolution)));
    checks.push(IdentityCheck::new("n_i = dim T_i / dim End T_i", format!("{:?}", p.n), format!("{:?}", p.declared)));
    checks.push(IdentityCheck::new(
        "vertex sets coincide",
        p.nvq.vertices().join(","),
        p.veq.vertices().join(","),
    ));
    let orient = |q: &PseudoValuedQuiver| format!("{:?}", q.edges().iter().map(|e| (e.from, e.to)).collect::<Vec<_>>());
    checks.push(IdentityCheck::new("orientations coincide", orient(&p.nvq), orient(&p.veq)));
}

/// `d_ji·m_ij = e_ij·n_j²·t_ij` and `d_ij·m_ij = e_ji·n_i²·t_ij` on every
/// edge of a blow-up, plus vertex and orientation agreement.
pub fn verify_main_formula(a: &RealizedAlgebra) -> Result<FormulaReport, NatextError> {
    let p = pipeline(a)?;
    let mut checks = Vec::new();
    common_checks(&p, &mut checks);
    for edge in p.nvq.edges() {
        let (i, j) = (edge.from, edge.to);
        let (m, t) = (p.m[i][j], p.t[i][j]);
        let (e_ij, e_ji) = p
            .veq
            .edge(i, j)
            .map_or((0, 0), |e| (e.d_ij, e.d_ji));
        let (ni, nj) = (p.n[i] as u64, p.n[j] as u64);
        let tag = format!("{}→{}", p.names[i], p.names[j]);
        checks.push(IdentityCheck::new(
            format!("{tag}: d_ji·m_ij = e_ij·n_j²·t_ij"),
            edge.d_ji * m,
            e_ij * nj * nj * t,
        ));
        checks.push(IdentityCheck::new(
            format!("{tag}: d_ij·m_ij = e_ji·n_i²·t_ij"),
            edge.d_ij * m,
            e_ji * ni * ni * t,
        ));
    }
    Ok(FormulaReport { checks })
}

/// `t_ij = ⌈m_ij/(n_i n_j)⌉` for all pairs and `d_ji·m_ij = e_ij·n_j²·⌈m_ij/(n_i n_j)⌉` on edges.
pub fn verify_ceil_formula(a: &RealizedAlgebra) -> Result<FormulaReport, NatextError> {
    let p = pipeline(a)?;
    let mut checks = Vec::new();
    common_checks(&p, &mut checks);
    let s = p.names.len();
    for i in 0..s {
        for j in 0..s {
            let c = ceil_div(p.m[i][j], (p.n[i] * p.n[j]) as u64);
            let tag = format!("{}→{}", p.names[i], p.names[j]);
            checks.push(IdentityCheck::new(format!("{tag}: t_ij = ⌈m_ij/(n_i n_j)⌉"), p.t[i][j], c));
            if let Some(edge) = p.nvq.edge(i, j) {
                let e_ij = p.veq.edge(i, j).map_or(0, |e| e.d_ij);
                let nj = p.n[j] as u64;
                checks.push(IdentityCheck::new(
                    format!("{tag}: d_ji·m_ij = e_ij·n_j²·⌈m_ij/(n_i n_j)⌉"),
                    edge.d_ji * p.m[i][j],
                    e_ij * nj * nj * c,
                ));
            }
        }
    }
    Ok(FormulaReport { checks })
}

/// Whether the two Ext matrices agree, e.g. across a Morita blow-up.
pub fn same_ext_data(a: &RealizedAlgebra, b: &RealizedAlgebra) -> Result<bool, NatextError> {
    Ok(ext_dims_lemma(a)? == ext_dims_lemma(b)?)
}
