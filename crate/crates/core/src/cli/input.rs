//! The JSON input document and its conversion into structures.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{format_scalar, parse_scalar, BasedSpace, LinMap, Scalar, Tensor};
use crate::gamma::{transport, FiniteGroup, GammaLieBialgebra, GroupAction};
use crate::lie::{coboundary_cobracket, LieAlgebra, LieBialgebra, QuasitriangularData};

/// `[x_i, x_j] ∋ c·x_k` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

/// `δ(x_of) ∋ c·x_i∧x_j` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CobracketEntry {
    pub of: usize,
    pub i: usize,
    pub j: usize,
    pub c: String,
}

/// A coefficient `c` at `x_i⊗x_j`, or at `x_i∧x_j` for antisymmetric tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub c: String,
}

/// A finite group by element labels and a multiplication table of labels,
/// `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_order: Option<Vec<String>>,
    /// Input degree for the co-Poisson checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_degree: Option<usize>,
    /// Input degree for the axiom checks on a quantization.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom_degree: Option<usize>,
}

impl OptionsDocument {
    fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

/// Structure constants of a Lie bialgebra with optional `r`, group action
/// and twist family. Action matrices are dense with `m[row][col]` the
/// coefficient of `x_row` in `θ(x_col)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub basis: Vec<String>,
    pub bracket: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cobracket: Option<Vec<CobracketEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<PairEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twists: Option<BTreeMap<String, Vec<PairEntry>>>,
    #[serde(default, skip_serializing_if = "OptionsDocument::is_empty")]
    pub options: OptionsDocument,
}

/// A malformed document, located by a JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{pointer}: {message}")]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self { pointer: pointer.into(), message: message.into() }
    }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{key}")),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

/// Deserializes JSON bytes into `T`, reporting the location of any failure.
pub fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8]) -> Result<T, SchemaError> {
    let text = std::str::from_utf8(bytes).map_err(|e| SchemaError::new("/", format!("input is not UTF-8: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        SchemaError::new(pointer, e.inner().to_string())
    })
}

impl InputDocument {
    pub fn parse(bytes: &[u8]) -> Result<Self, SchemaError> {
        parse_json(bytes)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Validated structures built from an [`InputDocument`].
#[derive(Debug, Clone)]
pub struct Model {
    pub doc: InputDocument,
    pub bialg: LieBialgebra,
    pub r: Option<Tensor>,
    /// The cobracket exactly as written, when the document gives one.
    pub stated_cobracket: Option<Vec<Tensor>>,
    pub action: GroupAction,
    pub twists: Vec<Tensor>,
    pub twists_given: bool,
}

fn scalar(pointer: &str, s: &str) -> Result<Scalar, SchemaError> {
    parse_scalar(s).map_err(|e| SchemaError::new(pointer, e.to_string()))
}

fn index(pointer: &str, i: usize, n: usize) -> Result<usize, SchemaError> {
    if i >= n {
        return Err(SchemaError::new(pointer, format!("index {i} out of range for dimension {n}")));
    }
    Ok(i)
}

fn ordered_pair(pointer: &str, i: usize, j: usize, n: usize) -> Result<(usize, usize), SchemaError> {
    index(&format!("{pointer}/i"), i, n)?;
    index(&format!("{pointer}/j"), j, n)?;
    if i >= j {
        return Err(SchemaError::new(pointer, format!("entries must have i < j, got ({i}, {j})")));
    }
    Ok((i, j))
}

fn shape(pointer: &str, e: Error) -> SchemaError {
    SchemaError::new(pointer, e.to_string())
}

/// `Σ c·x_i∧x_j` from upper entries.
fn wedge_tensor(pointer: &str, entries: &[PairEntry], n: usize) -> Result<Tensor, SchemaError> {
    let mut t = Tensor::zero_square(n, 2);
    for (p, e) in entries.iter().enumerate() {
        let ptr = format!("{pointer}/{p}");
        let (i, j) = ordered_pair(&ptr, e.i, e.j, n)?;
        let c = scalar(&format!("{ptr}/c"), &e.c)?;
        t.add_term(vec![i, j], c.clone()).map_err(|e| shape(&ptr, e))?;
        t.add_term(vec![j, i], -c).map_err(|e| shape(&ptr, e))?;
    }
    Ok(t)
}

impl Model {
    pub fn from_document(doc: InputDocument) -> Result<Self, SchemaError> {
        let n = doc.dimension;
        if n == 0 {
            return Err(SchemaError::new("/dimension", "dimension must be positive"));
        }
        if doc.basis.len() != n {
            return Err(SchemaError::new("/basis", format!("expected {n} labels, got {}", doc.basis.len())));
        }
        let space = BasedSpace::new(doc.basis.iter().cloned()).map_err(|e| shape("/basis", e))?;
        let mut upper = Vec::new();
        for (p, e) in doc.bracket.iter().enumerate() {
            let ptr = format!("/bracket/{p}");
            let (i, j) = ordered_pair(&ptr, e.i, e.j, n)?;
            let k = index(&format!("{ptr}/k"), e.k, n)?;
            upper.push((i, j, k, scalar(&format!("{ptr}/c"), &e.c)?));
        }
        let alg = LieAlgebra::from_upper(space, upper).map_err(|e| shape("/bracket", e))?;

        let r = match &doc.r {
            None => None,
            Some(entries) => {
                let mut t = Tensor::zero_square(n, 2);
                for (p, e) in entries.iter().enumerate() {
                    let ptr = format!("/r/{p}");
                    let i = index(&format!("{ptr}/i"), e.i, n)?;
                    let j = index(&format!("{ptr}/j"), e.j, n)?;
                    t.add_term(vec![i, j], scalar(&format!("{ptr}/c"), &e.c)?).map_err(|e| shape(&ptr, e))?;
                }
                Some(t)
            }
        };

        let stated_cobracket = match &doc.cobracket {
            None => None,
            Some(entries) => {
                let mut cob = vec![Tensor::zero_square(n, 2); n];
                for (p, e) in entries.iter().enumerate() {
                    let ptr = format!("/cobracket/{p}");
                    let of = index(&format!("{ptr}/of"), e.of, n)?;
                    let (i, j) = ordered_pair(&ptr, e.i, e.j, n)?;
                    let c = scalar(&format!("{ptr}/c"), &e.c)?;
                    cob[of].add_term(vec![i, j], c.clone()).map_err(|e| shape(&ptr, e))?;
                    cob[of].add_term(vec![j, i], -c).map_err(|e| shape(&ptr, e))?;
                }
                Some(cob)
            }
        };
        let cobracket = match (&stated_cobracket, &r) {
            (Some(c), _) => c.clone(),
            (None, Some(r)) => coboundary_cobracket(&alg, r).map_err(|e| shape("/r", e))?,
            (None, None) => vec![Tensor::zero_square(n, 2); n],
        };
        let pointer = if stated_cobracket.is_some() { "/cobracket" } else { "/r" };
        let bialg = LieBialgebra::new_unchecked(alg, cobracket).map_err(|e| shape(pointer, e))?;

        let group = match &doc.group {
            None => FiniteGroup::trivial(),
            Some(g) => {
                let mut table = Vec::with_capacity(g.table.len());
                for (a, row) in g.table.iter().enumerate() {
                    let mut out = Vec::with_capacity(row.len());
                    for (b, l) in row.iter().enumerate() {
                        let idx = g.elements.iter().position(|x| x == l).ok_or_else(|| {
                            SchemaError::new(format!("/group/table/{a}/{b}"), format!("unknown element {l:?}"))
                        })?;
                        out.push(idx);
                    }
                    table.push(out);
                }
                FiniteGroup::new(g.elements.clone(), table).map_err(|e| shape("/group", e))?
            }
        };

        let mut theta = vec![LinMap::identity(n); group.order()];
        if let Some(action) = &doc.action {
            if doc.group.is_none() {
                return Err(SchemaError::new("/action", "an action needs a group"));
            }
            for (label, m) in action {
                let ptr = format!("/action/{label}");
                let g = group
                    .index_of(label)
                    .ok_or_else(|| SchemaError::new(&ptr, format!("unknown group element {label:?}")))?;
                if m.len() != n || m.iter().any(|row| row.len() != n) {
                    return Err(SchemaError::new(&ptr, format!("matrix must be {n}×{n}")));
                }
                let mut rows = Vec::with_capacity(n);
                for (a, row) in m.iter().enumerate() {
                    let vals = row
                        .iter()
                        .enumerate()
                        .map(|(b, s)| scalar(&format!("{ptr}/{a}/{b}"), s))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(vals);
                }
                theta[g] = LinMap::from_matrix(&rows).map_err(|e| shape(&ptr, e))?;
            }
        }
        let action = GroupAction::new(group, theta).map_err(|e| shape("/action", e))?;

        let grp = action.group();
        let (twists, twists_given) = match (&doc.twists, &r) {
            (Some(tw), _) => {
                if doc.group.is_none() {
                    return Err(SchemaError::new("/twists", "twists need a group"));
                }
                let mut out = vec![Tensor::zero_square(n, 2); grp.order()];
                for (label, entries) in tw {
                    let ptr = format!("/twists/{label}");
                    let g = grp
                        .index_of(label)
                        .ok_or_else(|| SchemaError::new(&ptr, format!("unknown group element {label:?}")))?;
                    out[g] = wedge_tensor(&ptr, entries, n)?;
                }
                (out, true)
            }
            (None, Some(r)) => {
                let mut out = Vec::with_capacity(grp.order());
                for g in grp.elements() {
                    let moved = transport(action.theta(g), r).map_err(|e| shape("/r", e))?;
                    out.push(moved.sub(r).map_err(|e| shape("/r", e))?);
                }
                (out, false)
            }
            (None, None) => (vec![Tensor::zero_square(n, 2); grp.order()], false),
        };

        if let Some(seed) = &doc.options.seed_order {
            seed_indices(grp, seed).map_err(|m| SchemaError::new("/options/seed_order", m))?;
        }
        Ok(Self { doc, bialg, r, stated_cobracket, action, twists, twists_given })
    }

    pub fn dim(&self) -> usize {
        self.bialg.dim()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    /// The Γ-structure without any axiom checks.
    pub fn gamma(&self) -> crate::Result<GammaLieBialgebra> {
        GammaLieBialgebra::new_unchecked(self.bialg.clone(), self.action.clone(), self.twists.clone())
    }

    pub fn quasitriangular(&self) -> Option<crate::Result<QuasitriangularData>> {
        self.r.as_ref().map(|r| QuasitriangularData::new(self.bialg.alg().clone(), r.clone()))
    }
}

/// Resolves seed labels to group indices; every non-identity element must
/// appear exactly once.
pub fn seed_indices(grp: &FiniteGroup, labels: &[String]) -> Result<Vec<usize>, String> {
    let mut out = Vec::with_capacity(labels.len());
    for l in labels {
        let g = grp.index_of(l).ok_or_else(|| format!("unknown group element {l:?}"))?;
        if g == grp.identity() {
            return Err(format!("the identity {l:?} cannot be seeded"));
        }
        if out.contains(&g) {
            return Err(format!("element {l:?} listed twice"));
        }
        out.push(g);
    }
    if out.len() + 1 != grp.order() {
        return Err(format!("expected all {} non-identity elements", grp.order() - 1));
    }
    Ok(out)
}

fn wedge_entries(t: &Tensor) -> Vec<PairEntry> {
    t.iter()
        .filter(|(idx, _)| idx[0] < idx[1])
        .map(|(idx, c)| PairEntry { i: idx[0], j: idx[1], c: format_scalar(c) })
        .collect()
}

/// The document describing a Γ-structure, with `r` recorded when given.
pub fn document_of(name: &str, g: &GammaLieBialgebra, r: Option<&Tensor>) -> InputDocument {
    let b = g.bialg();
    let alg = b.alg();
    let grp = g.action().group();
    let bracket =
        alg.upper_entries().into_iter().map(|(i, j, k, c)| BracketEntry { i, j, k, c: format_scalar(&c) }).collect();
    let cobracket = b
        .upper_cobracket_entries()
        .into_iter()
        .map(|(of, i, j, c)| CobracketEntry { of, i, j, c: format_scalar(&c) })
        .collect();
    let nontrivial = grp.order() > 1;
    let group = nontrivial.then(|| GroupDocument {
        elements: grp.labels().to_vec(),
        table: grp.table().iter().map(|row| row.iter().map(|&k| grp.label(k).to_string()).collect()).collect(),
    });
    let action = nontrivial.then(|| {
        grp.elements()
            .filter(|&x| !g.action().theta(x).is_identity())
            .map(|x| {
                let m = g.action().theta(x).to_matrix();
                (grp.label(x).to_string(), m.iter().map(|row| row.iter().map(format_scalar).collect()).collect())
            })
            .collect()
    });
    let twists = nontrivial.then(|| {
        grp.elements()
            .filter(|&x| !g.twist(x).is_zero())
            .map(|x| (grp.label(x).to_string(), wedge_entries(g.twist(x))))
            .collect()
    });
    let r = r.map(|r| r.iter().map(|(idx, c)| PairEntry { i: idx[0], j: idx[1], c: format_scalar(c) }).collect());
    InputDocument {
        name: Some(name.to_string()),
        dimension: b.dim(),
        basis: alg.space().labels().to_vec(),
        bracket,
        cobracket: Some(cobracket),
        r,
        group,
        action,
        twists,
        options: OptionsDocument::default(),
    }
}
