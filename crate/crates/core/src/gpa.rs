//! Generalized path algebras `k(Q, A)` with A-path bases, and truncated
//! tensor algebras of modulations.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{SplitSemisimple, StructureConstAlgebra};
use crate::exactla::{
    format_scalar, parse_scalar, unit_vec, zero_vec, Matrix, Quotient, Scalar,
};
use crate::modulation::{
    free_rank, modulation_iso, BimoduleData, ConcreteBimodule, ModulationError, PseudoModulation,
    VertexAlgebra,
};
use crate::quiver::{PseudoValuedQuiver, Quiver, QuiverError, ValuedEdge, ValuedQuiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GpaError {
    #[error("quiver has oriented cycles; a truncation degree is required")]
    CyclicWithoutTruncation,
    #[error("element belongs to a different generalized path algebra")]
    ParentMismatch,
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("vertex algebra at {0} is not semisimple")]
    NotSemisimple(String),
    #[error("theorem hypotheses not met; refusing: {0}")]
    HypothesesNotMet(String),
    #[error("differential matrix must be {expected}×{expected}, got {rows}×{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("one vertex algebra per vertex expected ({expected}), got {found}")]
    AlgebraCount { expected: usize, found: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Modulation(#[from] ModulationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GpaVertexKind {
    Split(SplitSemisimple),
    /// Free algebra on the named loops, with words longer than `bound` set to zero.
    Loops { loops: Vec<String>, bound: usize },
}

/// A vertex algebra of a generalized path algebra, with its basis weights
/// (loop word lengths; zero for split algebras).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GpaVertexAlgebra {
    kind: GpaVertexKind,
    carrier: StructureConstAlgebra,
    weights: Vec<usize>,
}

impl GpaVertexAlgebra {
    pub fn split(s: SplitSemisimple) -> Self {
        let carrier = s.to_structure_constants();
        let weights = vec![0; carrier.dim()];
        GpaVertexAlgebra {
            kind: GpaVertexKind::Split(s),
            carrier,
            weights,
        }
    }

    pub fn field() -> Self {
        Self::split(SplitSemisimple::field())
    }

    /// `kΦ` on the given loops, truncated above word length `bound`.
    pub fn loops(loops: Vec<String>, bound: usize) -> Self {
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..bound {
            if loops.is_empty() {
                break;
            }
            let next: Vec<Vec<usize>> = frontier
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..loops.len()).map(move |x| {
                        let mut w = w.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let index: HashMap<&Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let n = words.len();
        let mut table = Vec::with_capacity(n * n);
        for x in &words {
            for y in &words {
                let mut w = x.clone();
                w.extend(y);
                table.push(index.get(&w).map(|&k| vec![(k, Scalar::one())]).unwrap_or_default());
            }
        }
        let labels = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "e".to_string()
                } else {
                    w.iter().map(|&x| loops[x].as_str()).collect::<Vec<_>>().join(".")
                }
            })
            .collect();
        let carrier = StructureConstAlgebra::new_unchecked(labels, table, unit_vec(n, 0))
            .expect("word table is well formed");
        GpaVertexAlgebra {
            kind: GpaVertexKind::Loops { loops, bound },
            carrier,
            weights: words.iter().map(Vec::len).collect(),
        }
    }

    pub fn kind(&self) -> &GpaVertexKind {
        &self.kind
    }

    pub fn carrier(&self) -> &StructureConstAlgebra {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn weight(&self, x: usize) -> usize {
        self.weights[x]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.carrier.labels()[x]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.carrier.labels().iter().position(|l| l == label)
    }

    pub fn split_algebra(&self) -> Option<&SplitSemisimple> {
        match &self.kind {
            GpaVertexKind::Split(s) => Some(s),
            GpaVertexKind::Loops { .. } => None,
        }
    }

    /// Product of basis elements and whether a nonzero word was cut off.
    fn product(&self, x: usize, y: usize) -> (&[(usize, Scalar)], bool) {
        let terms = self.carrier.basis_product(x, y);
        let overflow = match &self.kind {
            GpaVertexKind::Loops { bound, .. } => terms.is_empty() && self.weights[x] + self.weights[y] > *bound,
            GpaVertexKind::Split(_) => false,
        };
        (terms, overflow)
    }
}

/// `b₀ α₁ b₁ … αₙ bₙ` with `b_m` basis indices of the vertex algebras.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct APath {
    pub start: usize,
    pub arrows: Vec<usize>,
    pub elems: Vec<usize>,
}

impl APath {
    pub fn degree(&self) -> usize {
        self.arrows.len()
    }
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone)]
pub struct GPAlgebra {
    id: u64,
    quiver: Quiver,
    algebras: Vec<GpaVertexAlgebra>,
    truncation: Option<usize>,
    max_degree: usize,
    basis: Vec<APath>,
    index: HashMap<APath, usize>,
}

impl PartialEq for GPAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver
            && self.algebras == other.algebras
            && self.truncation == other.truncation
    }
}

/// Linear combination of A-paths; `truncated` records dropped overflow terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GPAElement {
    parent: u64,
    terms: BTreeMap<APath, Scalar>,
    truncated: bool,
}

impl GPAElement {
    pub fn terms(&self) -> &BTreeMap<APath, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    fn insert(&mut self, p: APath, c: Scalar) {
        let entry = self.terms.entry(p).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Same terms, ignoring the truncation flag.
    pub fn same_terms(&self, other: &GPAElement) -> bool {
        self.terms == other.terms
    }
}

/// Builds `k(Q, A)`; without a truncation degree the quiver must be acyclic.
pub fn gpa_build(
    q: &Quiver,
    algebras: Vec<GpaVertexAlgebra>,
    truncation: Option<usize>,
) -> Result<GPAlgebra, GpaError> {
    if algebras.len() != q.vertex_count() {
        return Err(GpaError::AlgebraCount {
            expected: q.vertex_count(),
            found: algebras.len(),
        });
    }
    let max_degree = match truncation {
        Some(d) => d,
        None => q.longest_path_length().ok_or(GpaError::CyclicWithoutTruncation)?,
    };
    let mut basis = Vec::new();
    for path in q.enumerate_paths(max_degree) {
        let mut vertices = vec![path.source];
        vertices.extend(path.arrows.iter().map(|&a| q.arrows()[a].target));
        let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
        for &v in &vertices {
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    (0..algebras[v].dim()).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        basis.extend(choices.into_iter().map(|elems| APath {
            start: path.source,
            arrows: path.arrows.clone(),
            elems,
        }));
    }
    basis.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
    let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(GPAlgebra {
        id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
        quiver: q.clone(),
        algebras,
        truncation,
        max_degree,
        basis,
        index,
    })
}

impl GPAlgebra {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn algebras(&self) -> &[GpaVertexAlgebra] {
        &self.algebras
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[APath] {
        &self.basis
    }

    pub fn basis_index(&self, p: &APath) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn degree_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.max_degree + 1];
        for p in &self.basis {
            dims[p.degree()] += 1;
        }
        dims
    }

    /// Arrow count plus the loop-word lengths of the junctions.
    pub fn total_count(&self, p: &APath) -> usize {
        let vertices = self.vertices_of(p);
        p.degree()
            + p.elems
                .iter()
                .zip(&vertices)
                .map(|(&x, &v)| self.algebras[v].weight(x))
                .sum::<usize>()
    }

    fn vertices_of(&self, p: &APath) -> Vec<usize> {
        let mut v = vec![p.start];
        v.extend(p.arrows.iter().map(|&a| self.quiver.arrows()[a].target));
        v
    }

    fn end(&self, p: &APath) -> usize {
        p.arrows
            .last()
            .map_or(p.start, |&a| self.quiver.arrows()[a].target)
    }

    pub fn zero(&self) -> GPAElement {
        GPAElement {
            parent: self.id,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn basis_element(&self, i: usize) -> GPAElement {
        let mut e = self.zero();
        e.insert(self.basis[i].clone(), Scalar::one());
        e
    }

    pub fn unit(&self) -> GPAElement {
        let mut e = self.zero();
        for (v, alg) in self.algebras.iter().enumerate() {
            for (x, c) in alg.carrier.unit().iter().enumerate() {
                if !c.is_zero() {
                    e.insert(
                        APath {
                            start: v,
                            arrows: vec![],
                            elems: vec![x],
                        },
                        c.clone(),
                    );
                }
            }
        }
        e
    }

    pub fn coords(&self, x: &GPAElement) -> Vec<Scalar> {
        let mut v = zero_vec(self.dim());
        for (p, c) in &x.terms {
            v[self.index[p]] += c;
        }
        v
    }

    pub fn from_coords(&self, v: &[Scalar]) -> GPAElement {
        let mut e = self.zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                e.insert(self.basis[i].clone(), c.clone());
            }
        }
        e
    }

    pub fn add(&self, x: &GPAElement, y: &GPAElement) -> Result<GPAElement, GpaError> {
        self.own(x)?;
        self.own(y)?;
        let mut out = x.clone();
        for (p, c) in &y.terms {
            out.insert(p.clone(), c.clone());
        }
        out.truncated |= y.truncated;
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar, x: &GPAElement) -> GPAElement {
        let mut out = self.zero();
        for (p, d) in &x.terms {
            out.insert(p.clone(), c * d);
        }
        out.truncated = x.truncated;
        out
    }

    fn own(&self, x: &GPAElement) -> Result<(), GpaError> {
        if x.parent == self.id {
            Ok(())
        } else {
            Err(GpaError::ParentMismatch)
        }
    }

    fn mul_apaths(&self, p: &APath, q: &APath, coef: &Scalar, out: &mut GPAElement) {
        let v = self.end(p);
        if v != q.start {
            return;
        }
        let alg = &self.algebras[v];
        let (terms, overflow) = alg.product(*p.elems.last().unwrap(), q.elems[0]);
        out.truncated |= overflow;
        if terms.is_empty() {
            return;
        }
        if p.degree() + q.degree() > self.max_degree {
            out.truncated = true;
            return;
        }
        for (k, c) in terms {
            let mut elems = p.elems[..p.elems.len() - 1].to_vec();
            elems.push(*k);
            elems.extend_from_slice(&q.elems[1..]);
            let mut arrows = p.arrows.clone();
            arrows.extend_from_slice(&q.arrows);
            out.insert(
                APath {
                    start: p.start,
                    arrows,
                    elems,
                },
                coef * c,
            );
        }
    }

    pub fn mul(&self, x: &GPAElement, y: &GPAElement) -> Result<GPAElement, GpaError> {
        self.own(x)?;
        self.own(y)?;
        let mut out = self.zero();
        out.truncated = x.truncated || y.truncated;
        for (p, a) in &x.terms {
            for (q, b) in &y.terms {
                self.mul_apaths(p, q, &(a * b), &mut out);
            }
        }
        Ok(out)
    }

    /// Structure constants on the A-path basis (overflow products are zero).
    pub fn to_structure_constants(&self) -> StructureConstAlgebra {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for p in &self.basis {
            for q in &self.basis {
                let mut out = self.zero();
                self.mul_apaths(p, q, &Scalar::one(), &mut out);
                table.push(out.terms.iter().map(|(r, c)| (self.index[r], c.clone())).collect());
            }
        }
        let labels = self.basis.iter().map(|p| self.format_apath(p)).collect();
        StructureConstAlgebra::new_unchecked(labels, table, self.coords(&self.unit()))
            .expect("A-path table is well formed")
    }

    fn format_apath(&self, p: &APath) -> String {
        let vertices = self.vertices_of(p);
        let mut out = String::new();
        for (m, (&x, &v)) in p.elems.iter().zip(&vertices).enumerate() {
            if m > 0 {
                let _ = write!(out, " {} ", self.quiver.arrows()[p.arrows[m - 1]].name);
            }
            if p.degree() == 0 {
                let _ = write!(out, "({}@{})", self.algebras[v].label(x), self.quiver.vertices()[v]);
            } else {
                let _ = write!(out, "({})", self.algebras[v].label(x));
            }
        }
        out
    }

    /// Canonical text form `coef * (b0) a1 (b1) + ...`.
    pub fn format(&self, x: &GPAElement) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<(&APath, &Scalar)> = x.terms.iter().collect();
        ordered.sort_by_key(|(p, _)| self.index.get(*p).copied());
        ordered
            .into_iter()
            .map(|(p, c)| format!("{} * {}", format_scalar(c), self.format_apath(p)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses `coef * (b0) a1 (b1) ...` terms joined by `+` or `-`.
    ///
    /// A junction `(label)` may be `(1)` for the unit of its vertex algebra;
    /// omitted junctions are units. Degree-0 terms name their vertex as
    /// `(label@vertex)` unless the label occurs at one vertex only.
    pub fn parse(&self, text: &str) -> Result<GPAElement, GpaError> {
        let err = |m: String| GpaError::Parse(m);
        let tokens = tokenize(text);
        let mut out = self.zero();
        let mut sign = Scalar::one();
        let mut current: Vec<String> = Vec::new();
        let flush = |toks: &mut Vec<String>, sign: &Scalar, out: &mut GPAElement| -> Result<(), GpaError> {
            if toks.is_empty() {
                return Err(err("empty term".into()));
            }
            let term = self.parse_term(toks)?;
            for (p, c) in term.terms {
                out.insert(p, sign * c);
            }
            toks.clear();
            Ok(())
        };
        for t in tokens {
            match t.as_str() {
                "+" | "-" => {
                    if !current.is_empty() {
                        flush(&mut current, &sign, &mut out)?;
                        sign = Scalar::one();
                    }
                    if t == "-" {
                        sign = -sign;
                    }
                }
                _ => current.push(t),
            }
        }
        flush(&mut current, &sign, &mut out)?;
        Ok(out)
    }

    fn parse_term(&self, toks: &[String]) -> Result<GPAElement, GpaError> {
        let err = |m: String| GpaError::Parse(m);
        let mut coef = Scalar::one();
        let mut rest = toks;
        if toks.len() >= 2 && toks[1] == "*" {
            coef = parse_scalar(&toks[0]).map_err(|_| err(format!("bad coefficient {}", toks[0])))?;
            rest = &toks[2..];
        } else if toks.len() == 1 {
            if let Ok(c) = parse_scalar(&toks[0]) {
                return Ok(self.scale(&c, &self.unit()));
            }
        }
        // atoms: Some(label) for junctions, None-marked arrows
        enum Atom {
            Junction(String, Option<String>),
            Arrow(usize),
        }
        let mut atoms = Vec::new();
        let mut k = 0;
        while k < rest.len() {
            if rest[k] == "(" {
                let label = rest.get(k + 1).ok_or_else(|| err("unclosed (".into()))?;
                if rest.get(k + 2).map(String::as_str) != Some(")") {
                    return Err(err(format!("expected ) after {label}")));
                }
                let (l, v) = match label.split_once('@') {
                    Some((l, v)) => (l.to_string(), Some(v.to_string())),
                    None => (label.clone(), None),
                };
                atoms.push(Atom::Junction(l, v));
                k += 3;
            } else {
                let a = self
                    .quiver
                    .arrow_index(&rest[k])
                    .map_err(|_| err(format!("unknown arrow {}", rest[k])))?;
                atoms.push(Atom::Arrow(a));
                k += 1;
            }
        }
        let arrows: Vec<usize> = atoms
            .iter()
            .filter_map(|a| match a {
                Atom::Arrow(x) => Some(*x),
                _ => None,
            })
            .collect();
        let mut junctions: Vec<Option<(String, Option<String>)>> = vec![None; arrows.len() + 1];
        let mut slot = 0;
        let mut filled = false;
        for a in atoms {
            match a {
                Atom::Arrow(_) => {
                    slot += 1;
                    filled = false;
                }
                Atom::Junction(l, v) => {
                    if filled {
                        return Err(err("two junctions without an arrow between them".into()));
                    }
                    junctions[slot] = Some((l, v));
                    filled = true;
                }
            }
        }
        let vertices: Vec<usize> = if arrows.is_empty() {
            let (label, v) = junctions[0]
                .clone()
                .ok_or_else(|| err("term without junction or arrow".into()))?;
            let v = match v {
                Some(name) => self
                    .quiver
                    .vertex_index(&name)
                    .map_err(|_| err(format!("unknown vertex {name}")))?,
                None => {
                    let hits: Vec<usize> = (0..self.algebras.len())
                        .filter(|&v| label == "1" || self.algebras[v].find_label(&label).is_some())
                        .collect();
                    match hits.as_slice() {
                        [v] => *v,
                        _ => return Err(err(format!("label {label} needs @vertex"))),
                    }
                }
            };
            vec![v]
        } else {
            let p = self.quiver.path_from_indices(&arrows).map_err(|e| err(e.to_string()))?;
            let mut v = vec![p.source];
            v.extend(arrows.iter().map(|&a| self.quiver.arrows()[a].target));
            v
        };
        let mut factors: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for (slot, j) in junctions.iter().enumerate() {
            let v = vertices[slot];
            let alg = &self.algebras[v];
            if let Some((_, Some(name))) = j {
                if self.quiver.vertex_index(name).ok() != Some(v) {
                    return Err(err(format!("junction vertex {name} does not match the path")));
                }
            }
            let vec: Vec<(usize, Scalar)> = match j {
                None => alg.carrier.unit().iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect(),
                Some((l, _)) if l == "1" => {
                    alg.carrier.unit().iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                }
                Some((l, _)) => vec![(
                    alg.find_label(l)
                        .ok_or_else(|| err(format!("unknown basis label {l} at vertex {}", self.quiver.vertices()[v])))?,
                    Scalar::one(),
                )],
            };
            factors.push(vec);
        }
        let mut out = self.zero();
        if arrows.len() > self.max_degree {
            out.truncated = true;
            return Ok(out);
        }
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), coef)];
        for f in &factors {
            partial = partial
                .into_iter()
                .flat_map(|(e, c)| {
                    f.iter().map(move |(x, d)| {
                        let mut e = e.clone();
                        e.push(*x);
                        (e, &c * d)
                    })
                })
                .collect();
        }
        for (elems, c) in partial {
            out.insert(
                APath {
                    start: vertices[0],
                    arrows: arrows.clone(),
                    elems,
                },
                c,
            );
        }
        Ok(out)
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<String>| {
        if !cur.is_empty() {
            out.push(std::mem::take(cur));
        }
    };
    let mut in_parens = false;
    for ch in text.chars() {
        match ch {
            '(' => {
                flush(&mut cur, &mut out);
                out.push("(".into());
                in_parens = true;
            }
            ')' => {
                flush(&mut cur, &mut out);
                out.push(")".into());
                in_parens = false;
            }
            '*' | '+' if !in_parens => {
                flush(&mut cur, &mut out);
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

pub fn gpa_multiply(g: &GPAlgebra, x: &GPAElement, y: &GPAElement) -> Result<GPAElement, GpaError> {
    g.mul(x, y)
}

/// `d_ij = |Ω(i,j)|·dim A_i`, `d_ji = |Ω(i,j)|·dim A_j`, witness `ε_i = dim A_i`.
pub fn induced_valued_quiver(g: &GPAlgebra) -> ValuedQuiver {
    let counts = g.quiver.arrow_count_matrix();
    let dims: Vec<u64> = g.algebras.iter().map(|a| a.dim() as u64).collect();
    let mut edges = Vec::new();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                edges.push(ValuedEdge {
                    from: i,
                    to: j,
                    d_ij: c as u64 * dims[i],
                    d_ji: c as u64 * dims[j],
                });
            }
        }
    }
    let pvq = PseudoValuedQuiver::new(g.quiver.vertices().to_vec(), edges)
        .expect("positive valuations from nonempty arrow sets");
    ValuedQuiver::new(pvq, dims).expect("dimension witness satisfies the valuation identity")
}

/// The pre-modulation `(A_i, A_iΩ(i,j)A_j)` of a split generalized path algebra.
pub fn premodulation_of(g: &GPAlgebra) -> Result<PseudoModulation, GpaError> {
    let split: Vec<SplitSemisimple> = g
        .algebras
        .iter()
        .enumerate()
        .map(|(v, a)| {
            a.split_algebra()
                .cloned()
                .ok_or_else(|| GpaError::NotSemisimple(g.quiver.vertices()[v].clone()))
        })
        .collect::<Result<_, _>>()?;
    let counts = g.quiver.arrow_count_matrix();
    let mut bimodules = Vec::new();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                let m = ConcreteBimodule::free(split[i].clone(), split[j].clone(), c);
                bimodules.push((i, j, BimoduleData::Concrete(m)));
            }
        }
    }
    Ok(PseudoModulation::new(
        g.quiver.vertices().to_vec(),
        split.into_iter().map(VertexAlgebra::Split).collect(),
        bimodules,
        false,
    )?)
}

/// Quiver with `t_ij` arrows `i → j` for the free rank `t_ij` of `_iM_j`.
pub fn gpa_from_premodulation(m: &PseudoModulation, truncation: Option<usize>) -> Result<GPAlgebra, GpaError> {
    let names = m.vertices();
    let mut algebras = Vec::new();
    for (v, a) in m.algebras().iter().enumerate() {
        match a {
            VertexAlgebra::Split(s) => algebras.push(GpaVertexAlgebra::split(s.clone())),
            VertexAlgebra::Symbolic(_) => {
                return Err(GpaError::Modulation(ModulationError::Unsupported(format!(
                    "vertex {} has symbolic algebra data",
                    names[v]
                ))))
            }
        }
    }
    let mut q = Quiver::new(names, &[] as &[(String, String, String)])?;
    for (&(i, j), b) in m.bimodules() {
        let not_free = || {
            GpaError::Modulation(ModulationError::NotFree {
                from: names[i].clone(),
                to: names[j].clone(),
            })
        };
        let t = match b {
            BimoduleData::Concrete(c) => free_rank(c).ok_or_else(not_free)?,
            BimoduleData::Symbolic { .. } => return Err(not_free()),
        };
        for k in 0..t {
            let name = if t == 1 {
                format!("{}>{}", names[i], names[j])
            } else {
                format!("{}>{}#{}", names[i], names[j], k + 1)
            };
            q.add_arrow(&name, &names[i], &names[j])?;
        }
    }
    gpa_build(&q, algebras, truncation)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopCountValuation {
    pub from: String,
    pub to: String,
    pub d_ij: u64,
    pub d_ji: u64,
    /// A zero entry on an existing edge.
    pub anomalous: bool,
}

#[derive(Debug, Clone)]
pub struct LoopElimination {
    pub bound: usize,
    pub reduced: Quiver,
    pub gpa: GPAlgebra,
    /// `d_ij = |Ω̆(i,j)|·|Φ_i|`, `d_ji = |Ω̆(i,j)|·|Φ_j|` from loop counts.
    pub loop_count_valuation: Vec<LoopCountValuation>,
    /// `d_ij = |Ω̆(i,j)|·dim A_i` with the truncated dimensions.
    pub rank_valuation: PseudoValuedQuiver,
}

/// Removes loops, moving them into truncated vertex algebras `kΦ_i`.
pub fn loop_eliminate(gamma: &Quiver, bound: usize) -> Result<LoopElimination, GpaError> {
    let reduced = gamma.subquiver(|a| a.source != a.target);
    let loop_names: Vec<Vec<String>> = (0..gamma.vertex_count())
        .map(|v| {
            gamma
                .arrows()
                .iter()
                .filter(|a| a.source == v && a.target == v)
                .map(|a| a.name.clone())
                .collect()
        })
        .collect();
    let algebras: Vec<GpaVertexAlgebra> = loop_names
        .iter()
        .map(|l| {
            if l.is_empty() {
                GpaVertexAlgebra::field()
            } else {
                GpaVertexAlgebra::loops(l.clone(), bound)
            }
        })
        .collect();
    let dims: Vec<u64> = algebras.iter().map(|a| a.dim() as u64).collect();
    let gpa = gpa_build(&reduced, algebras, Some(bound))?;
    let counts = reduced.arrow_count_matrix();
    let mut loop_count_valuation = Vec::new();
    let mut edges = Vec::new();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c == 0 || i == j {
                continue;
            }
            let c = c as u64;
            let (d_ij, d_ji) = (c * loop_names[i].len() as u64, c * loop_names[j].len() as u64);
            loop_count_valuation.push(LoopCountValuation {
                from: gamma.vertices()[i].clone(),
                to: gamma.vertices()[j].clone(),
                d_ij,
                d_ji,
                anomalous: d_ij == 0 || d_ji == 0,
            });
            edges.push(ValuedEdge {
                from: i,
                to: j,
                d_ij: c * dims[i],
                d_ji: c * dims[j],
            });
        }
    }
    Ok(LoopElimination {
        bound,
        reduced,
        gpa,
        loop_count_valuation,
        rank_valuation: PseudoValuedQuiver::new(gamma.vertices().to_vec(), edges)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionMatch {
    pub bound: usize,
    pub paths: usize,
    pub a_paths: usize,
}

impl DimensionMatch {
    pub fn matched(&self) -> bool {
        self.paths == self.a_paths
    }
}

/// Paths of `Γ` with at most `L` arrows against A-paths of `k(Γ̆, A)` with
/// total arrow count at most `L`.
pub fn dimension_match_check(gamma: &Quiver, bound: usize) -> Result<DimensionMatch, GpaError> {
    let elim = loop_eliminate(gamma, bound)?;
    let a_paths = elim
        .gpa
        .basis()
        .iter()
        .filter(|p| elim.gpa.total_count(p) <= bound)
        .count();
    Ok(DimensionMatch {
        bound,
        paths: gamma.enumerate_paths(bound).len(),
        a_paths,
    })
}

/// Decides isomorphism of normal generalized path algebras over acyclic
/// quivers through their pre-modulations; refuses outside that setting.
pub fn gpa_iso_check(g1: &GPAlgebra, g2: &GPAlgebra, cap: usize) -> Result<Option<Vec<usize>>, GpaError> {
    for g in [g1, g2] {
        if !g.quiver.is_acyclic() {
            return Err(GpaError::HypothesesNotMet("quiver has oriented cycles".into()));
        }
        for (v, a) in g.algebras.iter().enumerate() {
            let simple = a.split_algebra().is_some_and(SplitSemisimple::is_simple);
            if !simple {
                return Err(GpaError::HypothesesNotMet(format!(
                    "vertex algebra at {} is not simple; the isomorphism theorem needs normal \
                     algebras, and fails for semi-normal ones: k(Δ, {{S1⊕S2}}) ≅ S1⊕S2 ≅ k(Δ', {{S1, S2}}) \
                     although the two pre-modulations are not isomorphic",
                    g.quiver.vertices()[v]
                )));
            }
        }
    }
    Ok(modulation_iso(&premodulation_of(g1)?, &premodulation_of(g2)?, cap)?)
}

/// `X ⊗_A Y` as the quotient of `X ⊗_k Y` (index `x·dim Y + y`) by
/// `xa ⊗ y − x ⊗ ay`.
pub fn balanced_tensor(x_dim: usize, x_right: &[Matrix], y_dim: usize, y_left: &[Matrix]) -> Quotient {
    assert_eq!(x_right.len(), y_left.len(), "actions of the same algebra");
    let n = x_dim * y_dim;
    let mut rels = Vec::new();
    for (ra, la) in x_right.iter().zip(y_left) {
        for x in 0..x_dim {
            let xa = ra.column(x);
            for y in 0..y_dim {
                let ay = la.column(y);
                let mut v = zero_vec(n);
                for (x2, c) in xa.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    v[x2 * y_dim + y] += c;
                }
                for (y2, c) in ay.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    v[x * y_dim + y2] -= c;
                }
                if v.iter().any(|c| !c.is_zero()) {
                    rels.push(v);
                }
            }
        }
    }
    Quotient::by_span(n, &rels)
}

/// `f ⊗ g` on `X ⊗_k Y` with index `x·dim Y + y`.
pub fn kron(f: &Matrix, g: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(f.rows() * g.rows(), f.cols() * g.cols());
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            let a = f.get(i, j);
            if a.is_zero() {
                continue;
            }
            for k in 0..g.rows() {
                for l in 0..g.cols() {
                    let b = g.get(k, l);
                    if !b.is_zero() {
                        out.set(i * g.rows() + k, j * g.cols() + l, a * b);
                    }
                }
            }
        }
    }
    out
}

/// One graded piece `M^{⊗n}` with its `A₀`-bimodule structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorComponent {
    pub dim: usize,
    pub left_actions: Vec<Matrix>,
    pub right_actions: Vec<Matrix>,
}

/// `T(A₀, M)` through degree `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorAlgebra {
    /// `A₀ = Π A_i` with blocks concatenated vertex by vertex.
    pub base: SplitSemisimple,
    /// First basis index of each vertex algebra inside `A₀`.
    pub offsets: Vec<usize>,
    pub components: Vec<TensorComponent>,
}

impl TensorAlgebra {
    pub fn degree_dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.degree_dims().iter().sum()
    }
}

/// `M = ⊕ _iM_j` as an `A₀`-bimodule, with `A₀ = Π A_i`.
pub fn total_bimodule(m: &PseudoModulation) -> Result<(SplitSemisimple, Vec<usize>, TensorComponent), GpaError> {
    let split: Vec<&SplitSemisimple> = m
        .algebras()
        .iter()
        .enumerate()
        .map(|(v, a)| match a {
            VertexAlgebra::Split(s) => Ok(s),
            VertexAlgebra::Symbolic(_) => Err(GpaError::NotSemisimple(m.vertices()[v].clone())),
        })
        .collect::<Result<_, _>>()?;
    let base = SplitSemisimple::new(split.iter().flat_map(|s| s.blocks().iter().copied()).collect())
        .map_err(|e| GpaError::Modulation(ModulationError::Unsupported(e.to_string())))?;
    let mut offsets = Vec::new();
    let mut acc = 0;
    for s in &split {
        offsets.push(acc);
        acc += s.dim();
    }
    let mut pieces: Vec<(usize, usize, &ConcreteBimodule)> = Vec::new();
    for (&(i, j), b) in m.bimodules() {
        match b {
            BimoduleData::Concrete(c) => pieces.push((i, j, c)),
            BimoduleData::Symbolic { .. } => {
                return Err(GpaError::Modulation(ModulationError::Unsupported(
                    "tensor algebra needs concrete bimodules".into(),
                )))
            }
        }
    }
    let dim: usize = pieces.iter().map(|(_, _, c)| c.dim()).sum();
    let mut left_actions = vec![Matrix::zeros(dim, dim); base.dim()];
    let mut right_actions = vec![Matrix::zeros(dim, dim); base.dim()];
    let mut start = 0;
    for (i, j, c) in pieces {
        for (x, act) in c.left_actions().iter().enumerate() {
            place(&mut left_actions[offsets[i] + x], act, start);
        }
        for (y, act) in c.right_actions().iter().enumerate() {
            place(&mut right_actions[offsets[j] + y], act, start);
        }
        start += c.dim();
    }
    Ok((
        base,
        offsets,
        TensorComponent {
            dim,
            left_actions,
            right_actions,
        },
    ))
}

fn place(target: &mut Matrix, block: &Matrix, at: usize) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.get(r, c);
            if !v.is_zero() {
                target.set(at + r, at + c, v.clone());
            }
        }
    }
}

/// Graded pieces `M^{⊗n} = M^{⊗(n-1)} ⊗_{A₀} M` for `n ≤ D`.
pub fn tensor_algebra_of_modulation(m: &PseudoModulation, degree: usize) -> Result<TensorAlgebra, GpaError> {
    let (base, offsets, mm) = total_bimodule(m)?;
    let a0 = base.to_structure_constants();
    let regular = TensorComponent {
        dim: a0.dim(),
        left_actions: (0..a0.dim()).map(|x| a0.left_mul_matrix(&a0.basis(x))).collect(),
        right_actions: (0..a0.dim()).map(|x| a0.right_mul_matrix(&a0.basis(x))).collect(),
    };
    let mut components = vec![regular];
    if degree >= 1 {
        components.push(mm.clone());
    }
    for _ in 2..=degree {
        let prev = components.last().unwrap();
        let q = balanced_tensor(prev.dim, &prev.right_actions, mm.dim, &mm.left_actions);
        let id_m = Matrix::identity(mm.dim);
        let id_p = Matrix::identity(prev.dim);
        let next = TensorComponent {
            dim: q.dim(),
            left_actions: prev.left_actions.iter().map(|l| q.induced_map(&kron(l, &id_m))).collect(),
            right_actions: mm.right_actions.iter().map(|r| q.induced_map(&kron(&id_p, r))).collect(),
        };
        components.push(next);
    }
    Ok(TensorAlgebra {
        base,
        offsets,
        components,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub checked: usize,
    pub first_violation: Option<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            passed: true,
            checked: 0,
            first_violation: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.first_violation = Some(what());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialReport {
    pub grading: Verdict,
    pub leibniz: Verdict,
    pub square_zero: Verdict,
}

impl DifferentialReport {
    pub fn passed(&self) -> bool {
        self.grading.passed && self.leibniz.passed && self.square_zero.passed
    }
}

/// Checks a linear map `δ` (column `k` = `δ(basis_k)`) for degree `+1`,
/// the graded Leibniz rule and `δ² = 0` within the truncation.
pub fn differential_check(g: &GPAlgebra, delta: &Matrix) -> Result<DifferentialReport, GpaError> {
    let n = g.dim();
    if delta.rows() != n || delta.cols() != n {
        return Err(GpaError::Shape {
            expected: n,
            rows: delta.rows(),
            cols: delta.cols(),
        });
    }
    let d = g.max_degree();
    let deg: Vec<usize> = g.basis().iter().map(APath::degree).collect();
    let name = |k: usize| g.format_apath(&g.basis()[k]);
    let mut grading = Verdict::new();
    for k in 0..n {
        let col = delta.column(k);
        let ok = col
            .iter()
            .enumerate()
            .all(|(r, c)| c.is_zero() || deg[r] == deg[k] + 1);
        grading.record(ok, || format!("δ({}) has a component outside degree {}", name(k), deg[k] + 1));
    }
    let apply = |x: &GPAElement| g.from_coords(&delta.mul_vec(&g.coords(x)));
    let mut leibniz = Verdict::new();
    for a in 0..n {
        for b in 0..n {
            if deg[a] + deg[b] + 1 > d {
                continue;
            }
            let (ea, eb) = (g.basis_element(a), g.basis_element(b));
            let lhs = apply(&g.mul(&ea, &eb)?);
            let sign = if deg[a].is_multiple_of(2) { Scalar::one() } else { -Scalar::one() };
            let rhs = g.add(&g.mul(&apply(&ea), &eb)?, &g.scale(&sign, &g.mul(&ea, &apply(&eb))?))?;
            leibniz.record(lhs.same_terms(&rhs), || {
                format!(
                    "δ({}·{}) = {} but δ(a)b ± aδ(b) = {}",
                    name(a),
                    name(b),
                    g.format(&lhs),
                    g.format(&rhs)
                )
            });
        }
    }
    let square = delta.mul(delta);
    let mut square_zero = Verdict::new();
    for k in 0..n {
        if deg[k] + 2 > d {
            continue;
        }
        let col = square.column(k);
        square_zero.record(col.iter().all(Zero::is_zero), || format!("δ²({}) ≠ 0", name(k)));
    }
    Ok(DifferentialReport {
        grading,
        leibniz,
        square_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_algebra_isomorphism;
    use crate::exactla::int;
    use crate::quiver::named::*;

    fn field_algebras(n: usize) -> Vec<GpaVertexAlgebra> {
        vec![GpaVertexAlgebra::field(); n]
    }

    fn ka2() -> GPAlgebra {
        gpa_build(&linear(2), field_algebras(2), None).unwrap()
    }

    fn m2_q() -> GPAlgebra {
        gpa_build(
            &linear(2),
            vec![GpaVertexAlgebra::split(SplitSemisimple::matrix(2)), GpaVertexAlgebra::field()],
            None,
        )
        .unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(ka2().dim(), 3);
        let one = gpa_build(
            &Quiver::discrete(1),
            vec![GpaVertexAlgebra::split(SplitSemisimple::new(vec![1, 1]).unwrap())],
            None,
        )
        .unwrap();
        assert_eq!(one.dim(), 2);
        let g = m2_q();
        assert_eq!(g.degree_dims(), vec![5, 4]);
        assert_eq!(g.dim(), 9);
        assert_eq!(
            gpa_build(&loops(1), field_algebras(1), None).unwrap_err(),
            GpaError::CyclicWithoutTruncation
        );
    }

    #[test]
    fn multiply_examples() {
        let g = ka2();
        let e1 = g.parse("(e@1)").unwrap();
        let alpha = g.parse("a1").unwrap();
        assert_eq!(g.mul(&e1, &alpha).unwrap(), alpha);
        assert!(g.mul(&alpha, &e1).unwrap().is_zero());

        let g = m2_q();
        let x = g.parse("(E12) a1 (e)").unwrap();
        let at1 = g.parse("(E11@1)").unwrap();
        assert!(g.mul(&x, &at1).unwrap().is_zero());
        let e11 = g.parse("(E11@1)").unwrap();
        assert_eq!(g.mul(&e11, &x).unwrap(), x);
        let e12 = g.parse("(E12@1)").unwrap();
        assert!(g.mul(&e12, &g.parse("(E11) a1 (e)").unwrap()).unwrap().is_zero());
        assert_eq!(
            g.mul(&e12, &g.parse("(E21) a1 (e)").unwrap()).unwrap(),
            g.parse("(E11) a1 (e)").unwrap()
        );
    }

    #[test]
    fn parse_format_round_trip() {
        let g = m2_q();
        let x = g.parse("2 * (E12) a1 (e) + -1/3 * (E21@1) - (e@2)").unwrap();
        let text = g.format(&x);
        assert_eq!(g.parse(&text).unwrap(), x);
        assert_eq!(g.format(&g.parse(&text).unwrap()), text);
        assert!(g.parse("(E33@1)").is_err());
        assert!(g.parse("(e)").is_ok());
        assert!(g.parse("(E11)").is_ok());
    }

    #[test]
    fn parent_mismatch() {
        let (g, h) = (ka2(), ka2());
        assert_eq!(g.mul(&g.unit(), &h.unit()).unwrap_err(), GpaError::ParentMismatch);
    }

    #[test]
    fn truncation_flag_is_sticky() {
        let g = gpa_build(&loops(1), field_algebras(1), Some(2)).unwrap();
        let x = g.parse("x").unwrap();
        let x2 = g.mul(&x, &x).unwrap();
        assert!(!x2.truncated());
        let x3 = g.mul(&x2, &x).unwrap();
        assert!(x3.is_zero() && x3.truncated());
        assert!(g.add(&x3, &x).unwrap().truncated());
    }

    #[test]
    fn unit_is_identity() {
        let g = m2_q();
        let one = g.unit();
        for i in 0..g.dim() {
            let b = g.basis_element(i);
            assert_eq!(g.mul(&one, &b).unwrap(), b);
            assert_eq!(g.mul(&b, &one).unwrap(), b);
        }
    }

    #[test]
    fn structure_constants_are_associative() {
        m2_q().to_structure_constants().check_associative().unwrap();
        let g = gpa_build(&loops(2), field_algebras(1), Some(3)).unwrap();
        g.to_structure_constants().check_associative().unwrap();
    }

    #[test]
    fn induced_valued_quiver_examples() {
        let v = induced_valued_quiver(&ka2());
        assert_eq!(v.quiver.edge(0, 1).map(|e| (e.d_ij, e.d_ji)), Some((1, 1)));
        let v = induced_valued_quiver(&m2_q());
        assert_eq!(v.quiver.edge(0, 1).map(|e| (e.d_ij, e.d_ji)), Some((4, 1)));
        assert_eq!(v.witness, vec![4, 1]);
        let k = gpa_build(&kronecker(2), field_algebras(2), None).unwrap();
        let v = induced_valued_quiver(&k);
        assert_eq!(v.quiver.edge(0, 1).map(|e| (e.d_ij, e.d_ji)), Some((2, 2)));
    }

    #[test]
    fn premodulation_round_trip() {
        let m = premodulation_of(&m2_q()).unwrap();
        assert!(m.classification().pre);
        let BimoduleData::Concrete(b) = m.bimodule(0, 1).unwrap() else { panic!() };
        let r = crate::modulation::bimodule_ranks(b);
        assert_eq!((r.d_ij, r.d_ji), (4, 1));
        let g = gpa_from_premodulation(&m, None).unwrap();
        assert_eq!(g.quiver().arrows().len(), 1);
        let back = premodulation_of(&g).unwrap();
        assert!(modulation_iso(&m, &back, 10).unwrap().is_some());

        let k = gpa_build(&kronecker(2), field_algebras(2), None).unwrap();
        let g = gpa_from_premodulation(&premodulation_of(&k).unwrap(), None).unwrap();
        assert_eq!(g.quiver().arrow_count_matrix(), k.quiver().arrow_count_matrix());

        let edgeless = gpa_build(&Quiver::discrete(2), field_algebras(2), None).unwrap();
        assert!(premodulation_of(&edgeless).unwrap().bimodules().is_empty());
    }

    #[test]
    fn non_free_premodulation_rejected() {
        let m2 = SplitSemisimple::matrix(2);
        let q = SplitSemisimple::field();
        let m = PseudoModulation::new(
            vec!["1".into(), "2".into()],
            vec![VertexAlgebra::Split(m2.clone()), VertexAlgebra::Split(q.clone())],
            vec![(0, 1, BimoduleData::Concrete(ConcreteBimodule::simple(m2, 0, q, 0)))],
            false,
        )
        .unwrap();
        assert!(matches!(
            gpa_from_premodulation(&m, None),
            Err(GpaError::Modulation(ModulationError::NotFree { .. }))
        ));
    }

    #[test]
    fn loop_elimination_examples() {
        let one = loop_eliminate(&loops(1), 3).unwrap();
        assert!(one.reduced.arrows().is_empty());
        assert_eq!(one.gpa.dim(), 4);

        let q = Quiver::new(&["1", "2"], &[("x", "1", "1"), ("a", "1", "2")]).unwrap();
        let e = loop_eliminate(&q, 3).unwrap();
        assert_eq!(e.reduced.arrows().len(), 1);
        assert_eq!(e.loop_count_valuation.len(), 1);
        let p = &e.loop_count_valuation[0];
        assert_eq!((p.d_ij, p.d_ji, p.anomalous), (1, 0, true));
        assert_eq!(e.rank_valuation.edge(0, 1).map(|e| (e.d_ij, e.d_ji)), Some((4, 1)));

        let free = loop_eliminate(&linear(3), 2).unwrap();
        assert_eq!(free.reduced, linear(3));
        assert!(free.loop_count_valuation.iter().all(|p| p.anomalous));
    }

    #[test]
    fn dimension_match_examples() {
        let q = Quiver::new(&["1", "2"], &[("x", "1", "1"), ("a", "1", "2")]).unwrap();
        let m = dimension_match_check(&q, 3).unwrap();
        assert_eq!((m.paths, m.a_paths), (8, 8));
        for l in 0..4 {
            assert!(dimension_match_check(&linear(3), l).unwrap().matched());
        }
        assert!(dimension_match_check(&loops(2), 2).unwrap().matched());
    }

    #[test]
    fn iso_check_examples() {
        let g = ka2();
        let swapped = gpa_build(
            &Quiver::new(&["1", "2"], &[("b", "2", "1")]).unwrap(),
            field_algebras(2),
            None,
        )
        .unwrap();
        assert_eq!(gpa_iso_check(&g, &g, 10).unwrap(), Some(vec![0, 1]));
        assert_eq!(gpa_iso_check(&g, &swapped, 10).unwrap(), Some(vec![1, 0]));

        let semi = gpa_build(
            &Quiver::discrete(1),
            vec![GpaVertexAlgebra::split(SplitSemisimple::new(vec![1, 1]).unwrap())],
            None,
        )
        .unwrap();
        let two = gpa_build(&Quiver::discrete(2), field_algebras(2), None).unwrap();
        let err = gpa_iso_check(&semi, &two, 10).unwrap_err();
        assert!(err.to_string().contains("S1⊕S2"));

        // both are ℚ×ℚ as algebras
        let (a, b) = (semi.to_structure_constants(), two.to_structure_constants());
        assert!(is_algebra_isomorphism(&a, &b, &Matrix::identity(2)));
        assert!(modulation_iso(&premodulation_of(&semi).unwrap(), &premodulation_of(&two).unwrap(), 10)
            .unwrap()
            .is_none());
    }

    #[test]
    fn tensor_algebra_examples() {
        let m = premodulation_of(&ka2()).unwrap();
        assert_eq!(tensor_algebra_of_modulation(&m, 3).unwrap().degree_dims(), vec![2, 1, 0, 0]);

        let q = SplitSemisimple::field();
        let one = PseudoModulation::new(
            vec!["1".into()],
            vec![VertexAlgebra::Split(q.clone())],
            vec![(0, 0, BimoduleData::Concrete(ConcreteBimodule::free(q.clone(), q, 2)))],
            false,
        )
        .unwrap();
        assert_eq!(tensor_algebra_of_modulation(&one, 2).unwrap().degree_dims(), vec![1, 2, 4]);

        let none = premodulation_of(&gpa_build(&Quiver::discrete(2), field_algebras(2), None).unwrap()).unwrap();
        assert_eq!(tensor_algebra_of_modulation(&none, 2).unwrap().degree_dims(), vec![2, 0, 0]);
    }

    #[test]
    fn tensor_dims_match_gpa_for_free_bimodules() {
        let g = gpa_build(
            &linear(3),
            vec![
                GpaVertexAlgebra::split(SplitSemisimple::matrix(2)),
                GpaVertexAlgebra::field(),
                GpaVertexAlgebra::split(SplitSemisimple::new(vec![1, 1]).unwrap()),
            ],
            None,
        )
        .unwrap();
        let t = tensor_algebra_of_modulation(&premodulation_of(&g).unwrap(), 2).unwrap();
        assert_eq!(t.degree_dims(), g.degree_dims());
    }

    #[test]
    fn differential_examples() {
        let g = ka2();
        assert!(differential_check(&g, &Matrix::zeros(3, 3)).unwrap().passed());

        let idx = |s: &str| g.basis_index(g.parse(s).unwrap().terms().keys().next().unwrap()).unwrap();
        let (e1, e2, a) = (idx("(e@1)"), idx("(e@2)"), idx("a1"));
        let mut d = Matrix::zeros(3, 3);
        d.set(a, e1, int(1));
        d.set(a, e2, int(-1));
        let r = differential_check(&g, &d).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.leibniz.checked, 4);

        let mut bad = Matrix::zeros(3, 3);
        bad.set(a, a, int(1));
        let r = differential_check(&g, &bad).unwrap();
        assert!(!r.grading.passed);
        assert!(r.grading.first_violation.unwrap().contains("a1"));

        assert!(matches!(
            differential_check(&g, &Matrix::zeros(2, 2)),
            Err(GpaError::Shape { .. })
        ));
    }
}
