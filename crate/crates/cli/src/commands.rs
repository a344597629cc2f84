//! Subcommand implementations. Each takes parsed documents and returns a
//! report; nothing here prints.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiverforge::algebra::{radical_traceform, verify_admissible, Provenance, RealizedAlgebra};
use quiverforge::exactla::{format_scalar, Scalar};
use quiverforge::gpa::{
    dimension_match_check, differential_check, gpa_iso_check, induced_valued_quiver, loop_eliminate,
    premodulation_of, GPAlgebra,
};
use quiverforge::modulation::{classify, modulation_iso, pseudo_valued_quiver_of, PseudoModulation};
use quiverforge::natext::{
    ext_dims_lemma, ext_dims_resolution, natural_quiver, natural_valued_quiver, valued_ext_quiver,
    verify_ceil_formula, verify_main_formula, FormulaReport, NaturalQuiver,
};
use quiverforge::quiver::{labeled_iso, quiver_to_dot, valued_to_dot, PseudoValuedQuiver, Quiver};
use quiverforge::reps::{functor_f, random_rep, roundtrip_check, ModulationRep};

use crate::document::{Document, InputError, Loaded, Located};
use crate::report::{Check, Section};

/// Global options shared by all subcommands.
#[derive(Debug, Clone)]
pub struct Options {
    pub truncate: Option<usize>,
    pub seed: Option<u64>,
    pub max_iso_vertices: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            truncate: None,
            seed: None,
            max_iso_vertices: 10,
        }
    }
}

/// Sections plus an optional DOT rendering.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub sections: Vec<Section>,
    pub dot: Option<String>,
}

impl Outcome {
    fn new(sections: Vec<Section>) -> Self {
        Outcome { sections, dot: None }
    }
}

fn wrong_kind(doc: &Loaded, expected: &str) -> InputError {
    doc.located(Located {
        at: "kind".into(),
        message: format!("expected {expected}, found {}", doc.document.kind()),
    })
}

fn algebra_of(doc: &Loaded) -> Result<RealizedAlgebra, InputError> {
    match doc.document.algebra() {
        Some(r) => r.map_err(|e| doc.located(e)),
        None => Err(wrong_kind(doc, "bound-quiver-algebra or blow-up")),
    }
}

fn library(doc: &Loaded, e: impl std::fmt::Display) -> InputError {
    doc.located(Located {
        at: "document".into(),
        message: e.to_string(),
    })
}

fn edges_text(q: &PseudoValuedQuiver) -> Vec<String> {
    q.edges()
        .iter()
        .map(|e| format!("{} -> {} ({},{})", q.vertices()[e.from], q.vertices()[e.to], e.d_ij, e.d_ji))
        .collect()
}

fn vectors_text(vs: &[Vec<Scalar>]) -> String {
    let rows: Vec<String> = vs
        .iter()
        .map(|v| format!("({})", v.iter().map(format_scalar).collect::<Vec<_>>().join(" ")))
        .collect();
    format!("dim {} [{}]", vs.len(), rows.join(" "))
}

/// `d_ij·ε_j = d_ji·ε_i` on every edge with the given `ε`.
pub fn valuation_identity(q: &PseudoValuedQuiver, eps: &[u64]) -> Check {
    let lhs: Vec<u64> = q.edges().iter().map(|e| e.d_ij * eps[e.to]).collect();
    let rhs: Vec<u64> = q.edges().iter().map(|e| e.d_ji * eps[e.from]).collect();
    Check::equal(
        format!("d_ij·ε_j = d_ji·ε_i with ε = {eps:?}"),
        format!("{lhs:?}"),
        format!("{rhs:?}"),
    )
}

fn block_dims(nq: &NaturalQuiver) -> Vec<u64> {
    nq.block_sizes.iter().map(|&n| (n * n) as u64).collect()
}

fn formula_checks(section: &mut Section, r: &FormulaReport) {
    for c in &r.checks {
        section.check(Check::equal(c.name.clone(), &c.lhs, &c.rhs));
    }
}

pub fn natural_quiver_cmd(doc: &Loaded) -> Result<Outcome, InputError> {
    let a = algebra_of(doc)?;
    let nq = natural_quiver(&a).map_err(|e| library(doc, e))?;
    let mut s = Section::new(format!("natural quiver of {}", doc.label()));
    for (v, n) in nq.vertices.iter().zip(&nq.block_sizes) {
        s.fact(format!("vertex {v}: M_{n}(k)"));
    }
    for (i, row) in nq.t.iter().enumerate() {
        for (j, &t) in row.iter().enumerate() {
            if t > 0 {
                s.fact(format!(
                    "{} -> {}: t = {} (dim E_i(r/r²)E_j = {})",
                    nq.vertices[i], nq.vertices[j], t, nq.bimodule_dims[i][j]
                ));
            }
        }
    }
    let f = quiverforge::algebra::radical_filtration(&a);
    let total: usize = nq.bimodule_dims.iter().flatten().sum();
    s.check(Check::equal(
        "Σ dim E_i(r/r²)E_j = dim r/r²",
        total,
        f.radical().dim() - f.radical_square().dim(),
    ));
    Ok(Outcome {
        dot: Some(quiver_to_dot(&doc.label(), &nq.to_quiver())),
        sections: vec![s],
    })
}

pub fn natural_valued_quiver_cmd(doc: &Loaded) -> Result<Outcome, InputError> {
    let a = algebra_of(doc)?;
    let nq = natural_quiver(&a).map_err(|e| library(doc, e))?;
    let v = natural_valued_quiver(&a).map_err(|e| library(doc, e))?;
    let mut s = Section::new(format!("natural valued quiver of {}", doc.label()));
    for line in edges_text(&v.quiver) {
        s.fact(line);
    }
    s.check(valuation_identity(&v.quiver, &block_dims(&nq)));
    Ok(Outcome {
        dot: Some(valued_to_dot(&doc.label(), &v.quiver)),
        sections: vec![s],
    })
}

pub fn ext_quiver_cmd(doc: &Loaded) -> Result<Outcome, InputError> {
    let a = algebra_of(doc)?;
    let v = valued_ext_quiver(&a).map_err(|e| library(doc, e))?;
    let resolution = ext_dims_resolution(&a).map_err(|e| library(doc, e))?;
    let mut s = Section::new(format!("valued Ext-quiver of {}", doc.label()));
    for line in edges_text(&v.quiver) {
        s.fact(line);
    }
    s.check(Check::equal(
        "dim u_i(r/r²)u_j = dim Ext¹(T_j,T_i)",
        format!("{:?}", v.ext_dims),
        format!("{resolution:?}"),
    ));
    Ok(Outcome {
        dot: Some(valued_to_dot(&doc.label(), &v.quiver)),
        sections: vec![s],
    })
}

fn algebra_sections(doc: &Loaded, a: &RealizedAlgebra) -> Result<Vec<Section>, InputError> {
    let err = |e: quiverforge::natext::NatextError| library(doc, e);
    let label = doc.label();
    let mut s = Section::new(format!("{label}: algebra"));
    s.fact(format!("dim A = {}", a.dim()));
    if let Document::BoundQuiverAlgebra(b) = &doc.document {
        let p = b.presentation().map_err(|e| doc.located(e))?;
        let adm = verify_admissible(&p);
        s.check(Check::flag(
            "admissible: I ⊆ J² and J^s ⊆ I + J^{s+1}",
            adm.passed(),
            format!(
                "relations in J² {}, J^s ⊆ I {}",
                adm.relations_in_j2, adm.power_in_ideal
            ),
        ));
    }
    let trace = radical_traceform(&a.carrier);
    s.check(Check::equal(
        "trace-form radical = arrow-ideal radical",
        vectors_text(trace.basis()),
        vectors_text(a.radical.basis()),
    ));
    let lemma = ext_dims_lemma(a).map_err(err)?;
    let resolution = ext_dims_resolution(a).map_err(err)?;
    s.check(Check::equal(
        "dim u_i(r/r²)u_j = dim Ext¹(T_j,T_i)",
        format!("{lemma:?}"),
        format!("{resolution:?}"),
    ));

    let nq = natural_quiver(a).map_err(err)?;
    let nvq = natural_valued_quiver(a).map_err(err)?;
    let veq = valued_ext_quiver(a).map_err(err)?;
    let mut q = Section::new(format!("{label}: valued quivers"));
    for line in edges_text(&nvq.quiver) {
        q.fact(format!("natural: {line}"));
    }
    for line in edges_text(&veq.quiver) {
        q.fact(format!("Ext: {line}"));
    }
    q.check(valuation_identity(&nvq.quiver, &block_dims(&nq)));
    let opposite = quiverforge::natext::check_pair_opposite(&nvq.quiver, &veq.quiver);
    let basic = a.is_basic().map_err(|e| library(doc, e))?;
    if basic {
        q.check(Check::flag("natural and Ext valued quivers are pair-opposite equal", opposite, opposite));
    } else {
        q.fact(format!("not basic; pair-opposite equality {opposite}"));
    }

    let mut sections = vec![s, q];
    if let Provenance::BlowUp { base, multiplicities, .. } = &a.provenance {
        let mut f = Section::new(format!("{label}: blow-up formulas, n = {multiplicities:?}"));
        formula_checks(&mut f, &verify_main_formula(a).map_err(err)?);
        for c in verify_ceil_formula(a).map_err(err)?.checks {
            if c.name.contains('⌈') {
                f.check(Check::equal(c.name, c.lhs, c.rhs));
            }
        }
        let base_veq = valued_ext_quiver(base).map_err(err)?;
        let base_nvq = natural_valued_quiver(base).map_err(err)?;
        f.check(Check::equal(
            "valued Ext-quiver of blow-up = of base",
            edges_text(&veq.quiver).join("; "),
            edges_text(&base_veq.quiver).join("; "),
        ));
        let enlarged = multiplicities.iter().any(|&n| n > 1);
        let differ = nvq != base_nvq;
        f.check(Check::equal(
            "natural valued quivers differ iff some n_i > 1",
            differ,
            enlarged,
        ));
        sections.push(f);
    }
    Ok(sections)
}

fn path_count_section(label: &str, q: &Quiver, max_len: usize) -> Section {
    let mut s = Section::new(format!("{label}: path counts"));
    let c = q.arrow_count_matrix();
    let n = q.vertex_count();
    let mut power: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
    let paths = q.enumerate_paths(max_len);
    for len in 0..=max_len {
        let mut counted = vec![vec![0usize; n]; n];
        for p in paths.iter().filter(|p| p.len() == len) {
            counted[p.source][p.target] += 1;
        }
        s.check(Check::equal(
            format!("paths of length {len} = C^{len}"),
            format!("{counted:?}"),
            format!("{power:?}"),
        ));
        power = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| power[i][k] * c[k][j]).sum()).collect())
            .collect();
    }
    s
}

fn loop_sections(doc: &Loaded, q: &Quiver, bounds: &[usize]) -> Result<Vec<Section>, InputError> {
    let mut out = Vec::new();
    for &l in bounds {
        let elim = loop_eliminate(q, l).map_err(|e| library(doc, e))?;
        let m = dimension_match_check(q, l).map_err(|e| library(doc, e))?;
        let mut s = Section::new(format!("{}: loop elimination at L = {l}", doc.label()));
        for v in &elim.loop_count_valuation {
            s.fact(format!(
                "|Ω̆|·|Φ| valuation {} -> {} ({},{}){}",
                v.from,
                v.to,
                v.d_ij,
                v.d_ji,
                if v.anomalous { " anomalous: zero entry, reported as is" } else { "" }
            ));
        }
        for line in edges_text(&elim.rank_valuation) {
            s.fact(format!("dim-weighted valuation {line}"));
        }
        s.check(Check::equal("paths of length ≤ L = A-paths of arrow count ≤ L", m.paths, m.a_paths));
        let dims: Vec<u64> = elim.gpa.algebras().iter().map(|a| a.dim() as u64).collect();
        s.check(valuation_identity(&elim.rank_valuation, &dims));
        out.push(s);
    }
    Ok(out)
}

fn gpa_section(label: &str, g: &GPAlgebra) -> Section {
    let mut s = Section::new(format!("{label}: generalized path algebra"));
    s.fact(format!("dim = {}, graded dims = {:?}", g.dim(), g.degree_dims()));
    let v = induced_valued_quiver(g);
    for line in edges_text(&v.quiver) {
        s.fact(format!("induced: {line}"));
    }
    let dims: Vec<u64> = g.algebras().iter().map(|a| a.dim() as u64).collect();
    s.check(valuation_identity(&v.quiver, &dims));
    if g.dim() <= 40 {
        let sc = g.to_structure_constants();
        s.check(Check::flag("associative with unit", sc.check_associative().is_ok() && sc.check_unit().is_ok(), g.dim()));
    }
    s
}

fn modulation_section(label: &str, m: &PseudoModulation) -> Section {
    let c = classify(m);
    let mut s = Section::new(format!("{label}: classification"));
    s.fact(format!(
        "pseudo {}, pre {}, generalized {} ({:?}), regular {}, normal {}, semi-normal {}, classical {}, valued graph {}",
        c.pseudo, c.pre, c.generalized, c.generalized_evidence, c.regular, c.normal, c.seminormal, c.classical, c.valued_graph
    ));
    for (a, b) in &c.asymmetric_pairs {
        s.fact(format!("asymmetric: {a} -> {b} without {b} -> {a}"));
    }
    match pseudo_valued_quiver_of(m) {
        Ok(q) => {
            for line in edges_text(&q) {
                s.fact(line);
            }
            if let Some(eps) = quiverforge::quiver::valuation_witness(&q) {
                s.check(valuation_identity(&q, &eps));
            }
        }
        Err(e) => s.fact(format!("no pseudo-valued quiver: {e}")),
    }
    s
}

fn rep_section(label: &str, rep: &ModulationRep) -> Section {
    let mut s = Section::new(format!("{label}: representation"));
    s.fact(format!("dims {:?}", rep.dims()));
    s.check(Check::equal("dim F(V) = Σ dim V_i", functor_f(rep).dim, rep.total_dim()));
    let ok = roundtrip_check(rep);
    s.check(Check::flag("G(F(V)) = V and F(G(F(V))) = F(V)", ok, ok));
    s
}

fn differential_section(doc: &Loaded, opts: &Options) -> Result<Section, InputError> {
    let Document::Differential(d) = &doc.document else {
        return Err(wrong_kind(doc, "differential"));
    };
    let (g, delta) = d.build(opts.truncate).map_err(|e| doc.located(e))?;
    let r = differential_check(&g, &delta).map_err(|e| library(doc, e))?;
    let mut s = Section::new(format!("{}: differential", doc.label()));
    for (name, v) in [("degree +1", &r.grading), ("Leibniz rule", &r.leibniz), ("δ² = 0", &r.square_zero)] {
        let detail = match &v.first_violation {
            Some(w) => format!("{} cases, first violation: {w}", v.checked),
            None => format!("{} cases", v.checked),
        };
        s.check(Check::flag(name, v.passed, detail));
    }
    Ok(s)
}

/// Every applicable check for one document.
pub fn verify_document(doc: &Loaded, opts: &Options) -> Result<Vec<Section>, InputError> {
    let label = doc.label();
    match &doc.document {
        Document::Quiver(q) => {
            let quiver = q.build().map_err(|e| doc.located(e))?;
            let mut out = vec![path_count_section(&label, &quiver, 4)];
            if !quiver.loops().is_empty() {
                out.extend(loop_sections(doc, &quiver, &[1, 2, 3, 4])?);
            }
            Ok(out)
        }
        Document::BoundQuiverAlgebra(_) | Document::BlowUp(_) => algebra_sections(doc, &algebra_of(doc)?),
        Document::Gpa(g) => {
            let g = g.build(opts.truncate).map_err(|e| doc.located(e))?;
            let mut out = vec![gpa_section(&label, &g)];
            if let Ok(m) = premodulation_of(&g) {
                out.push(modulation_section(&label, &m));
            }
            Ok(out)
        }
        Document::Modulation(_) | Document::GroupSpecies(_) => {
            let m = doc.document.modulation().expect("modulation kinds").map_err(|e| doc.located(e))?;
            Ok(vec![modulation_section(&label, &m)])
        }
        Document::Representation(r) => {
            let rep = r.build().map_err(|e| doc.located(e))?;
            Ok(vec![rep_section(&label, &rep)])
        }
        Document::Differential(_) => Ok(vec![differential_section(doc, opts)?]),
    }
}

/// Documents are checked concurrently; output keeps the input order.
pub fn verify_all(docs: &[Loaded], opts: &Options) -> Result<Outcome, InputError> {
    let results: Vec<Result<Vec<Section>, InputError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = docs
            .iter()
            .map(|d| scope.spawn(move || verify_document(d, opts)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verifier thread")).collect()
    });
    let mut sections = Vec::new();
    for r in results {
        sections.extend(r?);
    }
    Ok(Outcome::new(sections))
}

pub fn classify_cmd(doc: &Loaded, opts: &Options) -> Result<Outcome, InputError> {
    let m = match &doc.document {
        Document::Gpa(g) => {
            let g = g.build(opts.truncate).map_err(|e| doc.located(e))?;
            premodulation_of(&g).map_err(|e| library(doc, e))?
        }
        other => match other.modulation() {
            Some(m) => m.map_err(|e| doc.located(e))?,
            None => return Err(wrong_kind(doc, "modulation, group-species, representation or gpa")),
        },
    };
    Ok(Outcome::new(vec![modulation_section(&doc.label(), &m)]))
}

fn gpa_of(doc: &Loaded, opts: &Options) -> Result<GPAlgebra, InputError> {
    match &doc.document {
        Document::Gpa(g) => g.build(opts.truncate).map_err(|e| doc.located(e)),
        Document::Differential(d) => d.gpa.build(opts.truncate).map_err(|e| doc.located(e)),
        _ => Err(wrong_kind(doc, "gpa")),
    }
}

pub fn gpa_mul_cmd(doc: &Loaded, x: &str, y: &str, opts: &Options) -> Result<Outcome, InputError> {
    let g = gpa_of(doc, opts)?;
    let parse = |t: &str| {
        g.parse(t).map_err(|e| {
            doc.located(Located {
                at: format!("element {t:?}"),
                message: e.to_string(),
            })
        })
    };
    let (a, b) = (parse(x)?, parse(y)?);
    let p = g.mul(&a, &b).map_err(|e| library(doc, e))?;
    let mut s = Section::new(format!("{}: product", doc.label()));
    s.fact(format!("({}) · ({}) = {}", g.format(&a), g.format(&b), g.format(&p)));
    if p.truncated() {
        s.fact(format!("terms beyond degree {} were discarded", g.max_degree()));
    }
    Ok(Outcome::new(vec![s]))
}

pub fn loop_eliminate_cmd(doc: &Loaded, opts: &Options) -> Result<Outcome, InputError> {
    let Document::Quiver(q) = &doc.document else {
        return Err(wrong_kind(doc, "quiver"));
    };
    let quiver = q.build().map_err(|e| doc.located(e))?;
    let l = opts.truncate.unwrap_or(2);
    let sections = loop_sections(doc, &quiver, &[l])?;
    let elim = loop_eliminate(&quiver, l).map_err(|e| library(doc, e))?;
    Ok(Outcome {
        sections,
        dot: Some(valued_to_dot(&doc.label(), &elim.rank_valuation)),
    })
}

fn bijection_text(names_a: &[String], names_b: &[String], theta: &[usize]) -> String {
    theta
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{}↦{}", names_a[i], names_b[j]))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn iso_cmd(a: &Loaded, b: &Loaded, opts: &Options) -> Result<Outcome, InputError> {
    let cap = opts.max_iso_vertices;
    let (theta, names_a, names_b) = match (&a.document, &b.document) {
        (Document::Gpa(_), Document::Gpa(_)) => {
            let (ga, gb) = (gpa_of(a, opts)?, gpa_of(b, opts)?);
            let theta = gpa_iso_check(&ga, &gb, cap).map_err(|e| library(a, e))?;
            (theta, ga.quiver().vertices().to_vec(), gb.quiver().vertices().to_vec())
        }
        (Document::Quiver(x), Document::Quiver(y)) => {
            let (qa, qb) = (x.build().map_err(|e| a.located(e))?, y.build().map_err(|e| b.located(e))?);
            let theta = labeled_iso::<Quiver, ()>(&qa, &qb, None, cap).map_err(|e| library(a, e))?;
            (theta, qa.vertices().to_vec(), qb.vertices().to_vec())
        }
        (da, db) => match (da.modulation(), db.modulation()) {
            (Some(ma), Some(mb)) => {
                let (ma, mb) = (ma.map_err(|e| a.located(e))?, mb.map_err(|e| b.located(e))?);
                let theta = modulation_iso(&ma, &mb, cap).map_err(|e| library(a, e))?;
                (theta, ma.vertices().to_vec(), mb.vertices().to_vec())
            }
            _ => return Err(wrong_kind(b, &format!("a document comparable with {}", a.document.kind()))),
        },
    };
    let mut s = Section::new(format!("{} vs {}", a.label(), b.label()));
    match &theta {
        Some(t) => s.check(Check::flag("isomorphism", true, bijection_text(&names_a, &names_b, t))),
        None => s.check(Check::flag("isomorphism", false, "none exists")),
    }
    Ok(Outcome::new(vec![s]))
}

pub fn diff_check_cmd(doc: &Loaded, opts: &Options) -> Result<Outcome, InputError> {
    Ok(Outcome::new(vec![differential_section(doc, opts)?]))
}

pub fn rep_roundtrip_cmd(doc: &Loaded, opts: &Options) -> Result<Outcome, InputError> {
    let rep = match &doc.document {
        Document::Representation(r) => r.build().map_err(|e| doc.located(e))?,
        Document::Modulation(_) | Document::GroupSpecies(_) => {
            let m = doc.document.modulation().expect("modulation kinds").map_err(|e| doc.located(e))?;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(0));
            let copies: Vec<usize> = (0..m.vertices().len()).map(|_| rng.gen_range(0..=2)).collect();
            random_rep(&m, &copies, &mut rng).map_err(|e| library(doc, e))?
        }
        _ => return Err(wrong_kind(doc, "representation or modulation")),
    };
    Ok(Outcome::new(vec![rep_section(&doc.label(), &rep)]))
}

pub fn dot_cmd(doc: &Loaded, opts: &Options) -> Result<String, InputError> {
    let label = doc.label();
    Ok(match &doc.document {
        Document::Quiver(q) => quiver_to_dot(&label, &q.build().map_err(|e| doc.located(e))?),
        Document::BoundQuiverAlgebra(b) => {
            quiver_to_dot(&label, &b.presentation().map_err(|e| doc.located(e))?.quiver)
        }
        Document::BlowUp(b) => quiver_to_dot(&label, &b.base.presentation().map_err(|e| doc.located(e))?.quiver),
        Document::Gpa(_) | Document::Differential(_) => quiver_to_dot(&label, gpa_of(doc, opts)?.quiver()),
        Document::Modulation(_) | Document::GroupSpecies(_) | Document::Representation(_) => {
            let m = doc.document.modulation().expect("modulation kinds").map_err(|e| doc.located(e))?;
            valued_to_dot(&label, &pseudo_valued_quiver_of(&m).map_err(|e| library(doc, e))?)
        }
    })
}
