//! Quivers, pseudo-valued and valued quivers.
//!
//! Orientation convention used throughout the crate: `omega(i, j)` is the set
//! of arrows with source `i` and target `j`, i.e. the arrows *from* `i` *to*
//! `j`. Paths are written in traversal order, so the path `[a, b]` first
//! follows `a` and then `b`, and concatenation `p·q` is defined when `p` ends
//! where `q` starts.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

/// Default vertex cap for the brute-force isomorphism search.
pub const DEFAULT_MAX_ISO_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate arrow {0:?}")]
    DuplicateArrow(String),
    #[error("edge {from}->{to} has a zero valuation ({d_ij},{d_ji})")]
    ZeroValuation {
        from: String,
        to: String,
        d_ij: u64,
        d_ji: u64,
    },
    #[error("more than one oriented edge {from}->{to}")]
    DuplicateEdge { from: String, to: String },
    #[error("witness violates d_ij*eps_j = d_ji*eps_i on edge {from}->{to}")]
    BadWitness { from: String, to: String },
    #[error("arrows {0:?} and {1:?} are not composable")]
    NotComposable(String, String),
    #[error("isomorphism search limited to {cap} vertices, got {found}")]
    TooLarge { cap: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Finite directed multigraph with named vertices and arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(arrow, source, target)` triples.
    pub fn new<S: AsRef<str>>(
        vertices: &[S],
        arrows: &[(S, S, S)],
    ) -> Result<Self, QuiverError> {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        };
        for v in vertices {
            let v = v.as_ref();
            if q.vertices.iter().any(|w| w == v) {
                return Err(QuiverError::DuplicateVertex(v.to_string()));
            }
            q.vertices.push(v.to_string());
        }
        for (name, s, t) in arrows {
            q.add_arrow(name.as_ref(), s.as_ref(), t.as_ref())?;
        }
        Ok(q)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<usize, QuiverError> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        let source = self.vertex_index(source)?;
        let target = self.vertex_index(target)?;
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        Ok(self.arrows.len() - 1)
    }

    /// `n` isolated vertices named `1..=n`.
    pub fn discrete(n: usize) -> Self {
        Quiver {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            arrows: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize, QuiverError> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    /// Arrows from `i` to `j`.
    pub fn omega(&self, i: &str, j: &str) -> Result<Vec<&Arrow>, QuiverError> {
        let (i, j) = (self.vertex_index(i)?, self.vertex_index(j)?);
        Ok(self.omega_indices(i, j).into_iter().map(|a| &self.arrows[a]).collect())
    }

    pub fn omega_indices(&self, i: usize, j: usize) -> Vec<usize> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.source == i && a.target == j)
            .map(|(k, _)| k)
            .collect()
    }

    /// `C[i][j]` = number of arrows from `i` to `j`.
    pub fn arrow_count_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut c = vec![vec![0; n]; n];
        for a in &self.arrows {
            c[a.source][a.target] += 1;
        }
        c
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&k| self.arrows[k].source == self.arrows[k].target)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        seen == n
    }

    /// Length of the longest path, or `None` if the quiver has an oriented cycle.
    pub fn longest_path_length(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let n = self.vertices.len();
        let mut best = 0;
        let mut frontier: Vec<Path> = (0..n).map(Path::trivial).collect();
        while !frontier.is_empty() {
            best = frontier[0].len();
            frontier = frontier.iter().flat_map(|p| self.extensions(p)).collect();
        }
        Some(best)
    }

    fn extensions(&self, p: &Path) -> Vec<Path> {
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.source == p.target)
            .map(|(k, a)| {
                let mut arrows = p.arrows.clone();
                arrows.push(k);
                Path {
                    source: p.source,
                    target: a.target,
                    arrows,
                }
            })
            .collect()
    }

    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut frontier: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        for _ in 0..len {
            frontier = frontier.iter().flat_map(|p| self.extensions(p)).collect();
        }
        frontier
    }

    /// All paths with at most `max_len` arrows, grouped by length.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut frontier: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        for len in 0..=max_len {
            if len > 0 {
                frontier = frontier.iter().flat_map(|p| self.extensions(p)).collect();
            }
            if frontier.is_empty() {
                break;
            }
            out.extend(frontier.iter().cloned());
        }
        out
    }

    /// Path through the named arrows, in traversal order.
    pub fn path(&self, arrows: &[&str]) -> Result<Path, QuiverError> {
        let idx: Vec<usize> = arrows
            .iter()
            .map(|a| self.arrow_index(a))
            .collect::<Result<_, _>>()?;
        self.path_from_indices(&idx)
    }

    pub fn path_from_indices(&self, arrows: &[usize]) -> Result<Path, QuiverError> {
        let first = arrows.first().expect("use Path::trivial for length-0 paths");
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(QuiverError::NotComposable(
                    self.arrows[w[0]].name.clone(),
                    self.arrows[w[1]].name.clone(),
                ));
            }
        }
        Ok(Path {
            source: self.arrows[*first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    /// Same vertices, only the arrows selected by `keep`.
    pub fn subquiver(&self, keep: impl Fn(&Arrow) -> bool) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().filter(|a| keep(a)).cloned().collect(),
        }
    }

    /// Renames vertices by `theta` (vertex `i` becomes `names[theta[i]]`) and
    /// reorders them so that the new vertex list is `names`.
    pub fn relabeled(&self, theta: &[usize], names: &[String]) -> Quiver {
        Quiver {
            vertices: names.to_vec(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: theta[a.source],
                    target: theta[a.target],
                })
                .collect(),
        }
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path in a quiver; length-0 paths are the trivial paths at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }
}

/// One oriented valued edge `from -> to` carrying `(d_ij, d_ji)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuedEdge {
    pub from: usize,
    pub to: usize,
    pub d_ij: u64,
    pub d_ji: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoValuedQuiver {
    vertices: Vec<String>,
    edges: Vec<ValuedEdge>,
}

impl PseudoValuedQuiver {
    pub fn new(vertices: Vec<String>, mut edges: Vec<ValuedEdge>) -> Result<Self, QuiverError> {
        edges.sort();
        for (k, e) in edges.iter().enumerate() {
            let name = |v: usize| {
                vertices
                    .get(v)
                    .cloned()
                    .ok_or_else(|| QuiverError::UnknownVertex(format!("#{v}")))
            };
            let (from, to) = (name(e.from)?, name(e.to)?);
            if e.d_ij == 0 || e.d_ji == 0 {
                return Err(QuiverError::ZeroValuation {
                    from,
                    to,
                    d_ij: e.d_ij,
                    d_ji: e.d_ji,
                });
            }
            if k > 0 && (edges[k - 1].from, edges[k - 1].to) == (e.from, e.to) {
                return Err(QuiverError::DuplicateEdge { from, to });
            }
        }
        Ok(PseudoValuedQuiver { vertices, edges })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edges sorted by `(from, to)`.
    pub fn edges(&self) -> &[ValuedEdge] {
        &self.edges
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<&ValuedEdge> {
        self.edges.iter().find(|e| e.from == from && e.to == to)
    }

    /// `V[i][j] = Some((d_ij, d_ji))` for an oriented edge `i -> j`.
    pub fn valuation_matrix(&self) -> Vec<Vec<Option<(u64, u64)>>> {
        let n = self.vertices.len();
        let mut m = vec![vec![None; n]; n];
        for e in &self.edges {
            m[e.from][e.to] = Some((e.d_ij, e.d_ji));
        }
        m
    }

    /// Vertex order of `other` aligned with this quiver via `theta`.
    pub fn relabeled(&self, theta: &[usize], names: &[String]) -> PseudoValuedQuiver {
        let edges = self
            .edges
            .iter()
            .map(|e| ValuedEdge {
                from: theta[e.from],
                to: theta[e.to],
                ..*e
            })
            .collect();
        PseudoValuedQuiver::new(names.to_vec(), edges).expect("relabeling preserves validity")
    }
}

/// A pseudo-valued quiver together with positive integers `eps_i` such that
/// `d_ij * eps_j = d_ji * eps_i` on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedQuiver {
    pub quiver: PseudoValuedQuiver,
    pub witness: Vec<u64>,
}

impl ValuedQuiver {
    pub fn new(quiver: PseudoValuedQuiver, witness: Vec<u64>) -> Result<Self, QuiverError> {
        assert_eq!(witness.len(), quiver.vertex_count(), "witness length");
        for e in quiver.edges() {
            if !satisfies_valuation(e, &witness) {
                return Err(QuiverError::BadWitness {
                    from: quiver.vertices[e.from].clone(),
                    to: quiver.vertices[e.to].clone(),
                });
            }
        }
        Ok(ValuedQuiver { quiver, witness })
    }

    /// Uses [`valuation_witness`] to certify the pseudo-valued quiver.
    pub fn certify(quiver: PseudoValuedQuiver) -> Option<Self> {
        let witness = valuation_witness(&quiver)?;
        Some(ValuedQuiver { quiver, witness })
    }
}

pub fn satisfies_valuation(e: &ValuedEdge, eps: &[u64]) -> bool {
    e.d_ij as u128 * eps[e.to] as u128 == e.d_ji as u128 * eps[e.from] as u128
}

/// Sinks have no outgoing edge, sources no incoming edge.
pub fn sinks_and_sources(q: &PseudoValuedQuiver) -> (Vec<usize>, Vec<usize>) {
    let n = q.vertex_count();
    let mut out_deg = vec![0; n];
    let mut in_deg = vec![0; n];
    for e in q.edges() {
        out_deg[e.from] += 1;
        in_deg[e.to] += 1;
    }
    let sinks = (0..n).filter(|&v| out_deg[v] == 0).collect();
    let sources = (0..n).filter(|&v| in_deg[v] == 0).collect();
    (sinks, sources)
}

/// Positive integers `eps` with `d_ij * eps_j = d_ji * eps_i` on every edge,
/// normalized so each connected component has gcd 1.
///
/// Ratios are propagated along a spanning forest, then every non-tree edge is
/// checked; denominators are cleared per component at the end.
pub fn valuation_witness(q: &PseudoValuedQuiver) -> Option<Vec<u64>> {
    type Q = Ratio<u128>;
    let n = q.vertex_count();
    let mut adjacency: Vec<Vec<(usize, Q)>> = vec![Vec::new(); n];
    for e in q.edges() {
        // eps_to = eps_from * d_ji / d_ij
        let ratio = Q::new(e.d_ji as u128, e.d_ij as u128);
        adjacency[e.from].push((e.to, ratio));
        adjacency[e.to].push((e.from, ratio.recip()));
    }
    let mut value: Vec<Option<Q>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut components = 0;
    for root in 0..n {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some(Q::from_integer(1));
        component[root] = components;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let here = value[v].unwrap();
            for &(w, ratio) in &adjacency[v] {
                let expected = here * ratio;
                match value[w] {
                    None => {
                        value[w] = Some(expected);
                        component[w] = components;
                        queue.push_back(w);
                    }
                    Some(existing) if existing != expected => return None,
                    Some(_) => {}
                }
            }
        }
        components += 1;
    }
    let mut eps = vec![0u64; n];
    for c in 0..components {
        let members: Vec<usize> = (0..n).filter(|&v| component[v] == c).collect();
        let lcm = members
            .iter()
            .fold(1u128, |acc, &v| acc.lcm(value[v].unwrap().denom()));
        let scaled: Vec<u128> = members
            .iter()
            .map(|&v| {
                let x = value[v].unwrap() * Q::from_integer(lcm);
                *x.numer()
            })
            .collect();
        let g = scaled.iter().fold(0u128, |acc, &x| acc.gcd(&x));
        for (&v, &x) in members.iter().zip(&scaled) {
            eps[v] = u64::try_from(x / g).ok()?;
        }
    }
    Some(eps)
}

/// Anything the brute-force isomorphism search can compare: a square matrix
/// of per-ordered-pair data.
pub trait IsoShape {
    type Cell: PartialEq;
    fn vertex_count(&self) -> usize;
    fn cell_matrix(&self) -> Vec<Vec<Self::Cell>>;
}

impl IsoShape for Quiver {
    type Cell = usize;
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    fn cell_matrix(&self) -> Vec<Vec<usize>> {
        self.arrow_count_matrix()
    }
}

impl IsoShape for PseudoValuedQuiver {
    type Cell = Option<(u64, u64)>;
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    fn cell_matrix(&self) -> Vec<Vec<Option<(u64, u64)>>> {
        self.valuation_matrix()
    }
}

/// Searches vertex bijections `theta` with `a[i][j] == b[theta i][theta j]`
/// and `la[i] == lb[theta i]`, calling `accept` on each complete candidate
/// until it returns `true`.
pub fn search_bijections<T: PartialEq, L: PartialEq>(
    a: &[Vec<T>],
    b: &[Vec<T>],
    la: Option<&[L]>,
    lb: Option<&[L]>,
    cap: usize,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Result<Option<Vec<usize>>, QuiverError> {
    let n = a.len();
    if n != b.len() {
        return Ok(None);
    }
    if n > cap {
        return Err(QuiverError::TooLarge { cap, found: n });
    }
    let mut theta = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let found = extend(a, b, la, lb, &mut theta, &mut used, &mut accept);
    Ok(found.then_some(theta))
}

fn extend<T: PartialEq, L: PartialEq>(
    a: &[Vec<T>],
    b: &[Vec<T>],
    la: Option<&[L]>,
    lb: Option<&[L]>,
    theta: &mut Vec<usize>,
    used: &mut [bool],
    accept: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let i = theta.len();
    if i == a.len() {
        return accept(theta);
    }
    for t in 0..a.len() {
        if used[t] {
            continue;
        }
        if let (Some(la), Some(lb)) = (la, lb) {
            if la[i] != lb[t] {
                continue;
            }
        }
        if a[i][i] != b[t][t] {
            continue;
        }
        let consistent = theta
            .iter()
            .enumerate()
            .all(|(k, &tk)| a[i][k] == b[t][tk] && a[k][i] == b[tk][t]);
        if !consistent {
            continue;
        }
        theta.push(t);
        used[t] = true;
        if extend(a, b, la, lb, theta, used, accept) {
            return true;
        }
        theta.pop();
        used[t] = false;
    }
    false
}

/// Brute-force isomorphism preserving per-vertex labels when given.
pub fn labeled_iso<S: IsoShape, L: PartialEq>(
    x: &S,
    y: &S,
    labels: Option<(&[L], &[L])>,
    cap: usize,
) -> Result<Option<Vec<usize>>, QuiverError> {
    if x.vertex_count() != y.vertex_count() {
        return Ok(None);
    }
    let (la, lb) = match labels {
        Some((la, lb)) => (Some(la), Some(lb)),
        None => (None, None),
    };
    search_bijections(&x.cell_matrix(), &y.cell_matrix(), la, lb, cap, |_| true)
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with one labeled edge per arrow, vertices in declaration order.
pub fn quiver_to_dot(name: &str, q: &Quiver) -> String {
    let mut out = format!("digraph {} {{\n", dot_id(name));
    for v in q.vertices() {
        let _ = writeln!(out, "  {};", dot_id(v));
    }
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(&q.vertices[a.source]),
            dot_id(&q.vertices[a.target]),
            dot_id(&a.name)
        );
    }
    out.push_str("}\n");
    out
}

/// DOT digraph with valued edges labeled `(d_ij,d_ji)`.
pub fn valued_to_dot(name: &str, q: &PseudoValuedQuiver) -> String {
    let mut out = format!("digraph {} {{\n", dot_id(name));
    for v in q.vertices() {
        let _ = writeln!(out, "  {};", dot_id(v));
    }
    for e in q.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"({},{})\"];",
            dot_id(&q.vertices[e.from]),
            dot_id(&q.vertices[e.to]),
            e.d_ij,
            e.d_ji
        );
    }
    out.push_str("}\n");
    out
}

/// Arrow-count matrix as a sparse map, used in reports.
pub fn count_map(c: &[Vec<usize>]) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for (i, row) in c.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x > 0 {
                m.insert((i, j), x);
            }
        }
    }
    m
}

/// Standard small quivers used in tests and the bundled corpus.
pub mod named {
    use super::Quiver;

    /// Linearly oriented `A_n`: `1 -> 2 -> ... -> n`, arrows `a1..a{n-1}`.
    pub fn linear(n: usize) -> Quiver {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(&vertices, &arrows).unwrap()
    }

    /// Generalized Kronecker quiver with `m` arrows `1 -> 2`.
    pub fn kronecker(m: usize) -> Quiver {
        let arrows: Vec<(String, String, String)> = (0..m)
            .map(|k| (((b'a' + k as u8) as char).to_string(), "1".into(), "2".into()))
            .collect();
        Quiver::new(&["1".to_string(), "2".to_string()], &arrows).unwrap()
    }

    /// One vertex with `m` loops named `x`, `y`, `z`, ...
    pub fn loops(m: usize) -> Quiver {
        let arrows: Vec<(String, String, String)> = (0..m)
            .map(|k| (((b'x' + k as u8) as char).to_string(), "1".into(), "1".into()))
            .collect();
        Quiver::new(&["1".to_string()], &arrows).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn pvq(n: usize, edges: &[(usize, usize, u64, u64)]) -> PseudoValuedQuiver {
        PseudoValuedQuiver::new(
            (1..=n).map(|i| i.to_string()).collect(),
            edges
                .iter()
                .map(|&(from, to, d_ij, d_ji)| ValuedEdge {
                    from,
                    to,
                    d_ij,
                    d_ji,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn omega_follows_source_to_target() {
        let k = kronecker(2);
        let names: Vec<&str> = k.omega("1", "2").unwrap().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["a", "b"]);
        assert!(k.omega("2", "1").unwrap().is_empty());

        assert!(Quiver::discrete(1).omega("1", "1").unwrap().is_empty());
        let l = loops(1);
        assert_eq!(l.omega("1", "1").unwrap().len(), 1);
        assert_eq!(
            k.omega("1", "7").unwrap_err(),
            QuiverError::UnknownVertex("7".into())
        );
    }

    #[test]
    fn path_enumeration_examples() {
        assert_eq!(linear(2).enumerate_paths(2).len(), 3);
        let l = loops(1).enumerate_paths(3);
        assert_eq!(l.iter().map(Path::len).collect::<Vec<_>>(), [0, 1, 2, 3]);
        assert_eq!(kronecker(2).enumerate_paths(1).len(), 4);
    }

    #[test]
    fn sinks_sources_examples() {
        let (s, t) = sinks_and_sources(&pvq(2, &[(0, 1, 1, 1)]));
        assert_eq!((s, t), (vec![1], vec![0]));
        let (s, t) = sinks_and_sources(&pvq(3, &[]));
        assert_eq!((s.len(), t.len()), (3, 3));
        let (s, t) = sinks_and_sources(&pvq(3, &[(0, 1, 1, 1), (1, 2, 1, 1), (2, 0, 1, 1)]));
        assert!(s.is_empty() && t.is_empty());
    }

    #[test]
    fn witness_examples() {
        assert_eq!(valuation_witness(&pvq(2, &[(0, 1, 1, 2)])), Some(vec![1, 2]));
        assert_eq!(
            valuation_witness(&pvq(3, &[(0, 1, 1, 1), (1, 2, 1, 1)])),
            Some(vec![1, 1, 1])
        );
        let triangle = pvq(3, &[(0, 1, 1, 2), (1, 2, 1, 2), (0, 2, 2, 1)]);
        assert_eq!(valuation_witness(&triangle), None);
    }

    #[test]
    fn witness_is_per_component_primitive() {
        let q = pvq(4, &[(0, 1, 2, 4), (2, 3, 3, 1)]);
        assert_eq!(valuation_witness(&q), Some(vec![1, 2, 3, 1]));
    }

    #[test]
    fn zero_valuation_rejected() {
        let err = PseudoValuedQuiver::new(
            vec!["1".into(), "2".into()],
            vec![ValuedEdge {
                from: 0,
                to: 1,
                d_ij: 1,
                d_ji: 0,
            }],
        )
        .unwrap_err();
        assert!(matches!(err, QuiverError::ZeroValuation { .. }));
    }

    #[test]
    fn iso_examples() {
        let a2 = linear(2);
        assert_eq!(
            labeled_iso::<_, ()>(&a2, &a2, None, 10).unwrap(),
            Some(vec![0, 1])
        );
        let reversed = Quiver::new(&["1", "2"], &[("a1", "2", "1")]).unwrap();
        assert_eq!(
            labeled_iso::<_, ()>(&a2, &reversed, None, 10).unwrap(),
            Some(vec![1, 0])
        );
        assert_eq!(
            labeled_iso::<_, ()>(&a2, &Quiver::discrete(2), None, 10).unwrap(),
            None
        );
        assert_eq!(
            labeled_iso::<_, ()>(&a2, &Quiver::discrete(3), None, 10).unwrap(),
            None
        );
    }

    #[test]
    fn iso_respects_labels_and_cap() {
        let d = Quiver::discrete(2);
        let found = labeled_iso(&d, &d, Some((&["x", "y"][..], &["y", "x"][..])), 10).unwrap();
        assert_eq!(found, Some(vec![1, 0]));
        let big = Quiver::discrete(11);
        assert!(matches!(
            labeled_iso::<_, ()>(&big, &big, None, DEFAULT_MAX_ISO_VERTICES),
            Err(QuiverError::TooLarge { .. })
        ));
    }

    #[test]
    fn valued_iso_checks_both_valuations() {
        let x = pvq(2, &[(0, 1, 1, 2)]);
        let y = pvq(2, &[(1, 0, 1, 2)]);
        let z = pvq(2, &[(1, 0, 2, 1)]);
        assert_eq!(labeled_iso::<_, ()>(&x, &y, None, 10).unwrap(), Some(vec![1, 0]));
        assert_eq!(labeled_iso::<_, ()>(&x, &z, None, 10).unwrap(), None);
    }

    #[test]
    fn dot_output() {
        assert_eq!(
            quiver_to_dot("A2", &linear(2)),
            "digraph \"A2\" {\n  \"1\";\n  \"2\";\n  \"1\" -> \"2\" [label=\"a1\"];\n}\n"
        );
        let v = valued_to_dot("v", &pvq(2, &[(0, 1, 1, 2)]));
        assert!(v.contains("[label=\"(1,2)\"]"));
        let empty = quiver_to_dot("empty", &Quiver::discrete(0));
        assert_eq!(empty, "digraph \"empty\" {\n}\n");
    }

    #[test]
    fn acyclicity() {
        assert!(linear(3).is_acyclic());
        assert_eq!(linear(3).longest_path_length(), Some(2));
        assert!(!loops(1).is_acyclic());
        assert_eq!(loops(1).longest_path_length(), None);
    }
}
