//! Representations of concrete pseudo-modulations and the functors `F`, `G`
//! to and from right modules over the tensor algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra::SplitSemisimple;
use crate::exactla::{int, intertwiners, unit_vec, Matrix, Quotient, Scalar, Subspace};
use crate::gpa::{balanced_tensor, kron, total_bimodule, GpaError, TensorComponent};
use crate::modulation::{BimoduleData, ConcreteBimodule, PseudoModulation, VertexAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representations need a concrete pseudo-modulation: {0}")]
    NotConcrete(String),
    #[error(transparent)]
    Gpa(#[from] GpaError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a unital right module: {0}")]
    BadAction(String),
    #[error("structure map {0} is not linear over the target algebra")]
    NotLinear(String),
    #[error("malformed module: {0}")]
    Malformed(String),
}

/// A right module given by action matrices: `v·x = actions[x]·v` on column
/// vectors, so `actions[xy] = actions[y]·actions[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightModule {
    pub dim: usize,
    pub actions: Vec<Matrix>,
}

impl RightModule {
    pub fn zero(a: &SplitSemisimple) -> Self {
        RightModule {
            dim: 0,
            actions: vec![Matrix::zeros(0, 0); a.dim()],
        }
    }

    /// Row vectors of block `b`: `e_s·E_rc = δ_sr e_c`.
    pub fn simple(a: &SplitSemisimple, block: usize) -> Self {
        let n = a.blocks()[block];
        let actions = (0..a.dim())
            .map(|x| {
                let mut m = Matrix::zeros(n, n);
                let (b, r, c) = a.unit_coords(x);
                if b == block {
                    m.set(c, r, Scalar::one());
                }
                m
            })
            .collect();
        RightModule { dim: n, actions }
    }

    pub fn direct_sum(&self, other: &RightModule) -> Self {
        RightModule {
            dim: self.dim + other.dim,
            actions: self
                .actions
                .iter()
                .zip(&other.actions)
                .map(|(x, y)| x.direct_sum(y))
                .collect(),
        }
    }

    pub fn validate(&self, a: &SplitSemisimple) -> Result<(), RepError> {
        if self.actions.len() != a.dim() || self.actions.iter().any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            return Err(RepError::Shape(format!(
                "expected {} actions of size {}",
                a.dim(),
                self.dim
            )));
        }
        let mut unit = Matrix::zeros(self.dim, self.dim);
        for (x, c) in a.unit().iter().enumerate() {
            if !c.is_zero() {
                unit = unit.add(&self.actions[x].scale(c));
            }
        }
        if unit != Matrix::identity(self.dim) {
            return Err(RepError::BadAction("the unit does not act as the identity".into()));
        }
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let lhs = self.actions[y].mul(&self.actions[x]);
                let rhs = a
                    .basis_product(x, y)
                    .map_or_else(|| Matrix::zeros(self.dim, self.dim), |z| self.actions[z].clone());
                if lhs != rhs {
                    return Err(RepError::BadAction(format!("(v·{x})·{y} ≠ v·({x}{y})")));
                }
            }
        }
        Ok(())
    }
}

fn split_algebras(m: &PseudoModulation) -> Result<Vec<SplitSemisimple>, RepError> {
    m.algebras()
        .iter()
        .enumerate()
        .map(|(v, a)| match a {
            VertexAlgebra::Split(s) => Ok(s.clone()),
            VertexAlgebra::Symbolic(_) => Err(RepError::NotConcrete(format!("vertex {}", m.vertices()[v]))),
        })
        .collect()
}

fn concrete_bimodules(m: &PseudoModulation) -> Result<BTreeMap<(usize, usize), &ConcreteBimodule>, RepError> {
    m.bimodules()
        .iter()
        .map(|(&k, b)| match b {
            BimoduleData::Concrete(c) => Ok((k, c)),
            BimoduleData::Symbolic { .. } => Err(RepError::NotConcrete(format!(
                "bimodule {}→{}",
                m.vertices()[k.0],
                m.vertices()[k.1]
            ))),
        })
        .collect()
}

/// `V ⊗_{A_i} M` with its right `A_j`-action.
pub struct TensorSpace {
    pub quotient: Quotient,
    pub right_actions: Vec<Matrix>,
}

pub fn tensor_space(v: &RightModule, m: &ConcreteBimodule) -> TensorSpace {
    let quotient = balanced_tensor(v.dim, &v.actions, m.dim(), m.left_actions());
    let id = Matrix::identity(v.dim);
    let right_actions = m
        .right_actions()
        .iter()
        .map(|b| quotient.induced_map(&kron(&id, b)))
        .collect();
    TensorSpace { quotient, right_actions }
}

/// The map `V ⊗ M → W ⊗ M` induced by `f ⊗ id` on quotient coordinates.
fn tensor_map(source: &Quotient, target: &Quotient, f: &Matrix, m_dim: usize) -> Matrix {
    let ambient = kron(f, &Matrix::identity(m_dim));
    let cols: Vec<Vec<Scalar>> = source
        .basis_columns()
        .iter()
        .map(|&c| target.project(&ambient.column(c)))
        .collect();
    Matrix::from_columns(target.dim(), &cols)
}

/// `(V_i, _jφ_i)` over a concrete pseudo-modulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulationRep {
    modulation: PseudoModulation,
    spaces: Vec<RightModule>,
    maps: BTreeMap<(usize, usize), Matrix>,
}

impl ModulationRep {
    /// Missing structure maps default to zero.
    pub fn new(
        modulation: PseudoModulation,
        spaces: Vec<RightModule>,
        mut maps: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self, RepError> {
        let algebras = split_algebras(&modulation)?;
        if spaces.len() != algebras.len() {
            return Err(RepError::Shape(format!(
                "{} spaces for {} vertices",
                spaces.len(),
                algebras.len()
            )));
        }
        for (v, a) in spaces.iter().zip(&algebras) {
            v.validate(a)?;
        }
        let bimodules = concrete_bimodules(&modulation)?;
        if let Some(k) = maps.keys().find(|k| !bimodules.contains_key(k)) {
            return Err(RepError::Shape(format!("no bimodule for the map {}→{}", k.0, k.1)));
        }
        for (&(i, j), m) in &bimodules {
            let t = tensor_space(&spaces[i], m);
            let phi = maps
                .entry((i, j))
                .or_insert_with(|| Matrix::zeros(spaces[j].dim, t.quotient.dim()));
            let name = || format!("{}→{}", modulation.vertices()[i], modulation.vertices()[j]);
            if phi.rows() != spaces[j].dim || phi.cols() != t.quotient.dim() {
                return Err(RepError::Shape(format!(
                    "φ {} must be {}×{}",
                    name(),
                    spaces[j].dim,
                    t.quotient.dim()
                )));
            }
            for (tb, vb) in t.right_actions.iter().zip(&spaces[j].actions) {
                if phi.mul(tb) != vb.mul(phi) {
                    return Err(RepError::NotLinear(name()));
                }
            }
        }
        Ok(ModulationRep { modulation, spaces, maps })
    }

    pub fn zero(modulation: PseudoModulation) -> Result<Self, RepError> {
        let spaces = split_algebras(&modulation)?.iter().map(RightModule::zero).collect();
        Self::new(modulation, spaces, BTreeMap::new())
    }

    pub fn modulation(&self) -> &PseudoModulation {
        &self.modulation
    }

    pub fn spaces(&self) -> &[RightModule] {
        &self.spaces
    }

    pub fn maps(&self) -> &BTreeMap<(usize, usize), Matrix> {
        &self.maps
    }

    pub fn map(&self, i: usize, j: usize) -> Option<&Matrix> {
        self.maps.get(&(i, j))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|v| v.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|v| v.dim).sum()
    }

    fn bimodule(&self, i: usize, j: usize) -> &ConcreteBimodule {
        match self.modulation.bimodule(i, j) {
            Some(BimoduleData::Concrete(c)) => c,
            _ => unreachable!("validated at construction"),
        }
    }
}

/// A right module over `T(A₀, M)` given by the action of `A₀` and of the
/// degree-one generators (a basis of the total bimodule `M`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightTModule {
    modulation: PseudoModulation,
    base: SplitSemisimple,
    offsets: Vec<usize>,
    generators: TensorComponent,
    pub dim: usize,
    pub base_actions: Vec<Matrix>,
    pub generator_actions: Vec<Matrix>,
}

impl RightTModule {
    pub fn new(
        modulation: PseudoModulation,
        dim: usize,
        base_actions: Vec<Matrix>,
        generator_actions: Vec<Matrix>,
    ) -> Result<Self, RepError> {
        concrete_bimodules(&modulation)?;
        let (base, offsets, generators) = total_bimodule(&modulation)?;
        let module = RightTModule {
            modulation,
            base,
            offsets,
            generators,
            dim,
            base_actions,
            generator_actions,
        };
        module.validate()?;
        Ok(module)
    }

    /// Unital `A₀`-action, and `v·(a m) = (v·a)·m`, `v·(m a) = (v·m)·a`.
    pub fn validate(&self) -> Result<(), RepError> {
        RightModule {
            dim: self.dim,
            actions: self.base_actions.clone(),
        }
        .validate(&self.base)?;
        let g = &self.generators;
        if self.generator_actions.len() != g.dim
            || self.generator_actions.iter().any(|m| m.rows() != self.dim || m.cols() != self.dim)
        {
            return Err(RepError::Shape(format!("expected {} generator actions of size {}", g.dim, self.dim)));
        }
        let combine = |coeffs: Vec<Scalar>| -> Matrix {
            let mut out = Matrix::zeros(self.dim, self.dim);
            for (l, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&self.generator_actions[l].scale(c));
                }
            }
            out
        };
        for a in 0..self.base.dim() {
            for k in 0..g.dim {
                let ra = &self.base_actions[a];
                let rm = &self.generator_actions[k];
                if combine(g.left_actions[a].column(k)) != rm.mul(ra) {
                    return Err(RepError::Malformed(format!("v·(a{a}·m{k}) ≠ (v·a{a})·m{k}")));
                }
                if combine(g.right_actions[a].column(k)) != ra.mul(rm) {
                    return Err(RepError::Malformed(format!("v·(m{k}·a{a}) ≠ (v·m{k})·a{a}")));
                }
            }
        }
        Ok(())
    }

    pub fn zero(modulation: PseudoModulation) -> Result<Self, RepError> {
        let (base, _, g) = total_bimodule(&modulation)?;
        Self::new(
            modulation,
            0,
            vec![Matrix::zeros(0, 0); base.dim()],
            vec![Matrix::zeros(0, 0); g.dim],
        )
    }

    pub fn modulation(&self) -> &PseudoModulation {
        &self.modulation
    }

    /// Action of the tensor word `m_{k1} ⊗ … ⊗ m_{kr}`.
    pub fn word_action(&self, word: &[usize]) -> Matrix {
        word.iter()
            .fold(Matrix::identity(self.dim), |acc, &k| self.generator_actions[k].mul(&acc))
    }

    fn vertex_identity(&self, v: usize) -> Matrix {
        let a = &self.base;
        let start = self.offsets[v];
        let end = self.offsets.get(v + 1).copied().unwrap_or(a.dim());
        let mut e = Matrix::zeros(self.dim, self.dim);
        for (x, c) in a.unit().iter().enumerate().take(end).skip(start) {
            if !c.is_zero() {
                e = e.add(&self.base_actions[x]);
            }
        }
        e
    }

    /// First generator index of the bimodule `(i, j)` inside `M`.
    fn generator_offset(&self, i: usize, j: usize) -> usize {
        self.modulation
            .bimodules()
            .iter()
            .take_while(|(&k, _)| k != (i, j))
            .map(|(_, b)| match b {
                BimoduleData::Concrete(c) => c.dim(),
                BimoduleData::Symbolic { .. } => 0,
            })
            .sum()
    }
}

/// `V = ⊕V_i`; `A_i` acts on its own summand, `m ∈ _iM_j` sends `v_i` to
/// `_jφ_i(v_i ⊗ m)`.
pub fn functor_f(rep: &ModulationRep) -> RightTModule {
    let (base, offsets, generators) = total_bimodule(&rep.modulation).expect("validated at construction");
    let dims = rep.dims();
    let starts: Vec<usize> = dims
        .iter()
        .scan(0, |acc, d| {
            let s = *acc;
            *acc += d;
            Some(s)
        })
        .collect();
    let dim = rep.total_dim();
    let mut base_actions = vec![Matrix::zeros(dim, dim); base.dim()];
    for (v, space) in rep.spaces.iter().enumerate() {
        for (x, act) in space.actions.iter().enumerate() {
            place(&mut base_actions[offsets[v] + x], act, starts[v], starts[v]);
        }
    }
    let mut generator_actions = Vec::with_capacity(generators.dim);
    for (&(i, j), phi) in &rep.maps {
        let m = rep.bimodule(i, j);
        let t = balanced_tensor(dims[i], &rep.spaces[i].actions, m.dim(), m.left_actions());
        for l in 0..m.dim() {
            let cols: Vec<Vec<Scalar>> = (0..dims[i])
                .map(|x| phi.mul_vec(&t.project(&unit_vec(dims[i] * m.dim(), x * m.dim() + l))))
                .collect();
            let mut act = Matrix::zeros(dim, dim);
            place(&mut act, &Matrix::from_columns(dims[j], &cols), starts[j], starts[i]);
            generator_actions.push(act);
        }
    }
    RightTModule {
        modulation: rep.modulation.clone(),
        base,
        offsets,
        generators,
        dim,
        base_actions,
        generator_actions,
    }
}

fn place(target: &mut Matrix, block: &Matrix, row: usize, col: usize) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.get(r, c);
            if !v.is_zero() {
                target.set(row + r, col + c, v.clone());
            }
        }
    }
}

fn column_space(m: &Matrix) -> Subspace {
    let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|c| m.column(c)).collect();
    Subspace::span(m.rows(), &cols)
}

/// Matrix of `f` restricted to `from` with values in `to`, in subspace coordinates.
fn restrict(f: &Matrix, from: &Subspace, to: &Subspace) -> Option<Matrix> {
    let cols = from
        .basis()
        .iter()
        .map(|v| to.coords(&f.mul_vec(v)))
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_columns(to.dim(), &cols))
}

/// `V_i = V·A_i`, with `_jφ_i(v ⊗ m) = v·m`.
pub fn functor_g(module: &RightTModule) -> Result<ModulationRep, RepError> {
    let algebras = split_algebras(&module.modulation)?;
    let parts: Vec<Subspace> = (0..algebras.len())
        .map(|v| column_space(&module.vertex_identity(v)))
        .collect();
    let mut spaces = Vec::with_capacity(parts.len());
    for (v, (part, a)) in parts.iter().zip(&algebras).enumerate() {
        let actions = (0..a.dim())
            .map(|x| restrict(&module.base_actions[module.offsets[v] + x], part, part))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| RepError::Malformed(format!("V·A_{v} is not A_{v}-stable")))?;
        spaces.push(RightModule { dim: part.dim(), actions });
    }
    let mut maps = BTreeMap::new();
    for (&(i, j), m) in &concrete_bimodules(&module.modulation)? {
        let offset = module.generator_offset(i, j);
        let t = balanced_tensor(spaces[i].dim, &spaces[i].actions, m.dim(), m.left_actions());
        let ambient_cols = (0..parts[i].dim() * m.dim())
            .map(|idx| {
                let (x, l) = (idx / m.dim(), idx % m.dim());
                parts[j].coords(&module.generator_actions[offset + l].mul_vec(&parts[i].basis()[x]))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| RepError::Malformed(format!("V_{i}·M_{i}{j} ⊄ V_{j}")))?;
        let ambient = Matrix::from_columns(parts[j].dim(), &ambient_cols);
        if t.relations().basis().iter().any(|r| !ambient.mul_vec(r).iter().all(Zero::is_zero)) {
            return Err(RepError::Malformed(format!("action not balanced over A_{i}")));
        }
        let cols: Vec<Vec<Scalar>> = (0..t.dim())
            .map(|q| ambient.mul_vec(&t.lift(&unit_vec(t.dim(), q))))
            .collect();
        maps.insert((i, j), Matrix::from_columns(parts[j].dim(), &cols));
    }
    let rep = ModulationRep::new(module.modulation.clone(), spaces, maps)?;
    let expected: usize = parts.iter().map(Subspace::dim).sum();
    if expected != module.dim {
        return Err(RepError::Malformed("V ≠ ⊕ V·A_i".into()));
    }
    Ok(rep)
}

/// `F(α)`: block diagonal.
pub fn functor_f_morphism(alpha: &[Matrix]) -> Matrix {
    alpha
        .iter()
        .fold(Matrix::zeros(0, 0), |acc, a| acc.direct_sum(a))
}

/// `G(f)`: restriction to each `V·A_i`.
pub fn functor_g_morphism(f: &Matrix, from: &RightTModule, to: &RightTModule) -> Option<Vec<Matrix>> {
    (0..from.offsets.len())
        .map(|v| {
            restrict(
                f,
                &column_space(&from.vertex_identity(v)),
                &column_space(&to.vertex_identity(v)),
            )
        })
        .collect()
}

/// Each `α_i` is `A_i`-linear and every square `α_j ∘ φ = ψ ∘ (α_i ⊗ id)` commutes.
pub fn check_rep_morphism(alpha: &[Matrix], from: &ModulationRep, to: &ModulationRep) -> bool {
    if alpha.len() != from.spaces.len() || from.modulation != to.modulation {
        return false;
    }
    for ((a, v), w) in alpha.iter().zip(&from.spaces).zip(&to.spaces) {
        if a.rows() != w.dim || a.cols() != v.dim {
            return false;
        }
        if v.actions.iter().zip(&w.actions).any(|(rv, rw)| a.mul(rv) != rw.mul(a)) {
            return false;
        }
    }
    from.maps.iter().all(|(&(i, j), phi)| {
        let m = from.bimodule(i, j);
        let ts = balanced_tensor(from.spaces[i].dim, &from.spaces[i].actions, m.dim(), m.left_actions());
        let tt = balanced_tensor(to.spaces[i].dim, &to.spaces[i].actions, m.dim(), m.left_actions());
        let psi = &to.maps[&(i, j)];
        alpha[j].mul(phi) == psi.mul(&tensor_map(&ts, &tt, &alpha[i], m.dim()))
    })
}

/// `f` commutes with every `A₀` and generator action.
pub fn check_module_morphism(f: &Matrix, from: &RightTModule, to: &RightTModule) -> bool {
    f.rows() == to.dim
        && f.cols() == from.dim
        && from.modulation == to.modulation
        && from
            .base_actions
            .iter()
            .zip(&to.base_actions)
            .chain(from.generator_actions.iter().zip(&to.generator_actions))
            .all(|(x, y)| f.mul(x) == y.mul(f))
}

/// `G(F(rep)) = rep` and `F(G(F(rep))) = F(rep)`, exactly.
pub fn roundtrip_check(rep: &ModulationRep) -> bool {
    let module = functor_f(rep);
    if module.validate().is_err() {
        return false;
    }
    match functor_g(&module) {
        Ok(back) => back == *rep && functor_f(&back) == module,
        Err(_) => false,
    }
}

/// `g·V`: spaces and structure maps transported along invertible
/// `A_i`-linear `g_i`, so that `g` is an isomorphism `V → g·V`.
pub fn transport(rep: &ModulationRep, g: &[Matrix]) -> Result<ModulationRep, RepError> {
    if g.len() != rep.spaces.len() {
        return Err(RepError::Shape("one matrix per vertex".into()));
    }
    let inverses = g
        .iter()
        .map(Matrix::inverse)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| RepError::Shape("transport needs invertible matrices".into()))?;
    let spaces: Vec<RightModule> = rep
        .spaces
        .iter()
        .zip(g.iter().zip(&inverses))
        .map(|(v, (gi, inv))| RightModule {
            dim: v.dim,
            actions: v.actions.iter().map(|r| gi.mul(r).mul(inv)).collect(),
        })
        .collect();
    let mut maps = BTreeMap::new();
    for (&(i, j), phi) in &rep.maps {
        let m = rep.bimodule(i, j);
        let src = balanced_tensor(rep.spaces[i].dim, &rep.spaces[i].actions, m.dim(), m.left_actions());
        let dst = balanced_tensor(spaces[i].dim, &spaces[i].actions, m.dim(), m.left_actions());
        let back = tensor_map(&dst, &src, &inverses[i], m.dim());
        maps.insert((i, j), g[j].mul(phi).mul(&back));
    }
    ModulationRep::new(rep.modulation.clone(), spaces, maps)
}

/// Random invertible `A_i`-linear endomorphisms of each `V_i`.
pub fn random_automorphism<R: Rng>(rep: &ModulationRep, rng: &mut R) -> Vec<Matrix> {
    rep.spaces
        .iter()
        .map(|v| {
            let pairs: Vec<(&Matrix, &Matrix)> = v.actions.iter().map(|r| (r, r)).collect();
            let basis = intertwiners(v.dim, v.dim, &pairs);
            loop {
                let g = basis.iter().fold(Matrix::zeros(v.dim, v.dim), |acc, x| {
                    acc.add(&x.scale(&int(rng.gen_range(-3..=3))))
                });
                if g.inverse().is_some() {
                    break g;
                }
            }
        })
        .collect()
}

/// `V_i = copies[i]·(⊕ simple row modules)` and each `φ` a random integer
/// combination of an intertwiner basis.
pub fn random_rep<R: Rng>(m: &PseudoModulation, copies: &[usize], rng: &mut R) -> Result<ModulationRep, RepError> {
    let algebras = split_algebras(m)?;
    if copies.len() != algebras.len() {
        return Err(RepError::Shape("one multiplicity per vertex".into()));
    }
    let spaces: Vec<RightModule> = algebras
        .iter()
        .zip(copies)
        .map(|(a, &k)| {
            let one = (0..a.blocks().len())
                .map(|b| RightModule::simple(a, b))
                .fold(RightModule::zero(a), |acc, s| acc.direct_sum(&s));
            (0..k).fold(RightModule::zero(a), |acc, _| acc.direct_sum(&one))
        })
        .collect();
    let mut maps = BTreeMap::new();
    for (&(i, j), b) in &concrete_bimodules(m)? {
        let t = tensor_space(&spaces[i], b);
        let pairs: Vec<(&Matrix, &Matrix)> = t.right_actions.iter().zip(&spaces[j].actions).collect();
        let basis = intertwiners(spaces[j].dim, t.quotient.dim(), &pairs);
        let phi = basis.iter().fold(
            Matrix::zeros(spaces[j].dim, t.quotient.dim()),
            |acc, x| acc.add(&x.scale(&int(rng.gen_range(-3..=3)))),
        );
        maps.insert((i, j), phi);
    }
    ModulationRep::new(m.clone(), spaces, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> SplitSemisimple {
        SplitSemisimple::field()
    }

    fn modulation(algebras: Vec<SplitSemisimple>, bimodules: Vec<(usize, usize, ConcreteBimodule)>) -> PseudoModulation {
        PseudoModulation::new(
            (1..=algebras.len()).map(|i| i.to_string()).collect(),
            algebras.into_iter().map(VertexAlgebra::Split).collect(),
            bimodules
                .into_iter()
                .map(|(i, j, b)| (i, j, BimoduleData::Concrete(b)))
                .collect(),
            false,
        )
        .unwrap()
    }

    fn a2() -> PseudoModulation {
        modulation(vec![field(), field()], vec![(0, 1, ConcreteBimodule::free(field(), field(), 1))])
    }

    fn kronecker() -> PseudoModulation {
        modulation(vec![field(), field()], vec![(0, 1, ConcreteBimodule::free(field(), field(), 2))])
    }

    fn line(n: usize) -> RightModule {
        (0..n).fold(RightModule::zero(&field()), |acc, _| acc.direct_sum(&RightModule::simple(&field(), 0)))
    }

    fn a2_rep(phi: i64) -> ModulationRep {
        ModulationRep::new(
            a2(),
            vec![line(1), line(1)],
            BTreeMap::from([((0, 1), Matrix::from_i64(&[&[phi]]))]),
        )
        .unwrap()
    }

    #[test]
    fn f_on_a2() {
        let f = functor_f(&a2_rep(1));
        assert_eq!(f.dim, 2);
        assert_eq!(f.generator_actions, vec![Matrix::from_i64(&[&[0, 0], &[1, 0]])]);
        assert_eq!(f.base_actions[0], Matrix::from_i64(&[&[1, 0], &[0, 0]]));

        let r = ModulationRep::new(a2(), vec![line(1), line(0)], BTreeMap::new()).unwrap();
        let f = functor_f(&r);
        assert!(f.generator_actions[0].is_zero());
    }

    #[test]
    fn f_on_kronecker() {
        let phi = Matrix::from_i64(&[&[1, 0], &[2, 3]]);
        let r = ModulationRep::new(kronecker(), vec![line(1), line(2)], BTreeMap::from([((0, 1), phi)])).unwrap();
        let f = functor_f(&r);
        assert_eq!(f.dim, 3);
        assert_eq!(f.generator_actions[0], Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[2, 0, 0]]));
        assert_eq!(f.generator_actions[1], Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[3, 0, 0]]));
    }

    #[test]
    fn g_examples() {
        let r = a2_rep(1);
        assert_eq!(functor_g(&functor_f(&r)).unwrap(), r);

        let zero = RightTModule::zero(a2()).unwrap();
        let g = functor_g(&zero).unwrap();
        assert_eq!(g, ModulationRep::zero(a2()).unwrap());
    }

    #[test]
    fn g_on_regular_module() {
        // T(M) for kA₂ on basis (e1, e2, α): right action of e1 fixes e1,
        // e2 fixes e2 and α, α sends e1 to α.
        let e1 = Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let e2 = Matrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let alpha = Matrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        let module = RightTModule::new(a2(), 3, vec![e1, e2], vec![alpha]).unwrap();
        let rep = functor_g(&module).unwrap();
        assert_eq!(rep.dims(), vec![1, 2]);
        assert_eq!(rep.map(0, 1).unwrap(), &Matrix::from_i64(&[&[0], &[1]]));
    }

    #[test]
    fn g_rejects_unbalanced_module() {
        // α sends e1 back into the V·A_1 summand.
        let e1 = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let e2 = Matrix::from_i64(&[&[0, 0], &[0, 1]]);
        let alpha = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert!(matches!(
            RightTModule::new(a2(), 2, vec![e1, e2], vec![alpha]),
            Err(RepError::Malformed(_))
        ));
    }

    #[test]
    fn rep_morphisms() {
        let r = a2_rep(1);
        let id = vec![Matrix::identity(1), Matrix::identity(1)];
        assert!(check_rep_morphism(&id, &r, &r));
        let zero = vec![Matrix::zeros(1, 1), Matrix::zeros(1, 1)];
        assert!(check_rep_morphism(&zero, &r, &r));
        let scale = vec![Matrix::identity(1), Matrix::from_i64(&[&[2]])];
        assert!(!check_rep_morphism(&scale, &r, &r));
        assert!(check_rep_morphism(&scale, &r, &a2_rep(2)));
    }

    #[test]
    fn roundtrip_examples() {
        assert!(roundtrip_check(&a2_rep(1)));
        assert!(roundtrip_check(&ModulationRep::zero(a2()).unwrap()));
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d1 = rng.gen_range(0..=3);
            let d2 = rng.gen_range(0..=3);
            let r = random_rep(&kronecker(), &[d1, d2], &mut rng).unwrap();
            assert!(roundtrip_check(&r), "seed {seed}");
            assert_eq!(functor_f(&r).dim, d1 + d2);
        }
    }

    #[test]
    fn matrix_vertex_roundtrip() {
        let m2 = SplitSemisimple::matrix(2);
        let m = modulation(
            vec![m2.clone(), field()],
            vec![(0, 1, ConcreteBimodule::simple(m2.clone(), 0, field(), 0))],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = random_rep(&m, &[1, 2], &mut rng).unwrap();
        assert_eq!(r.spaces()[0], RightModule::simple(&m2, 0));
        assert_eq!(r.map(0, 1).unwrap().cols(), 1);
        assert!(roundtrip_check(&r));
    }

    #[test]
    fn functors_preserve_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = random_rep(&kronecker(), &[2, 2], &mut rng).unwrap();
        let a = vec![Matrix::from_i64(&[&[1, 2], &[0, 1]]), Matrix::from_i64(&[&[0, 1], &[1, 0]])];
        let b = vec![Matrix::from_i64(&[&[3, 0], &[1, 1]]), Matrix::from_i64(&[&[1, 0], &[0, 2]])];
        let ba: Vec<Matrix> = b.iter().zip(&a).map(|(x, y)| x.mul(y)).collect();
        assert_eq!(functor_f_morphism(&ba), functor_f_morphism(&b).mul(&functor_f_morphism(&a)));
        let f = functor_f(&r);
        let g = functor_g_morphism(&functor_f_morphism(&ba), &f, &f).unwrap();
        assert_eq!(g, ba);
        let s = Matrix::identity(4).scale(&int(5));
        assert!(check_module_morphism(&s, &f, &f));
    }

    #[test]
    fn transport_gives_isomorphisms() {
        let m2 = SplitSemisimple::matrix(2);
        let m = modulation(
            vec![m2.clone(), field()],
            vec![(0, 1, ConcreteBimodule::simple(m2, 0, field(), 0))],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = random_rep(&m, &[1, 2], &mut rng).unwrap();
        let g = random_automorphism(&v, &mut rng);
        let w = transport(&v, &g).unwrap();
        assert!(check_rep_morphism(&g, &v, &w));
        assert!(check_module_morphism(&functor_f_morphism(&g), &functor_f(&v), &functor_f(&w)));
        let inv: Vec<Matrix> = g.iter().map(|x| x.inverse().unwrap()).collect();
        assert!(check_rep_morphism(&inv, &w, &v));
        assert!(matches!(transport(&v, &[Matrix::zeros(2, 2), Matrix::identity(2)]), Err(RepError::Shape(_))));
    }
}
