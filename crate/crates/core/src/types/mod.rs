//! r-types and dir-types, type embeddings, `K(ℋ)` enumeration, `f_K`,
//! edit distance and the edit-distance bounds for hereditary properties.
//!
//! A type on `k` vertices stores one label per ordered vertex pair, including
//! the diagonal, as a bitmask: bit `c − 1` stands for color `c` of an r-graph
//! or for the digraph state with color number `c` (none, bi, back, fwd). A
//! dir-type label `φ(x, y)` holds the states seen walking from a vertex of
//! fiber `x` to a vertex of fiber `y`.

mod construct;
mod edit;
mod enumerate;
mod fk;

pub use construct::{
    construct_type_from_partition, experiment_theorem_app, type_kind_for, ExperimentReport, ExperimentRow,
    TypeConstruction,
};
pub use edit::{
    distance_to_property, edit_distance, find_induced_copy, fit_to_type, Assignment, Fit, PropertyDistance,
    DIGRAPH_EXACT_CAP, RGRAPH_EXACT_CAP,
};
pub use enumerate::{enumerate_types, TypeFamily, ENUMERATION_CAP};
pub use fk::{error_term, f_k, lower_bound_fk, LowerBound};

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{palette_for_mask, AnyGraph, Arrow, ColoredGraph, Digraph, EdgeColoring, Palette};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeKind {
    RType { r: usize },
    DirType { palette: Palette },
}

impl TypeKind {
    /// Mask of every color or state the labels may use.
    pub fn universe(self) -> u8 {
        match self {
            TypeKind::RType { r } => ((1u16 << r) - 1) as u8,
            TypeKind::DirType { palette } => palette.mask(),
        }
    }

    pub fn is_directed(self) -> bool {
        matches!(self, TypeKind::DirType { .. })
    }
}

const NONE_BIT: u8 = 1 << Arrow::None.index();
const BI_BIT: u8 = 1 << Arrow::Bi.index();
const BACK_BIT: u8 = 1 << Arrow::Back.index();
const FWD_BIT: u8 = 1 << Arrow::Fwd.index();
const ARROW_BITS: u8 = BACK_BIT | FWD_BIT;

/// A label seen from the other endpoint: swaps back and fwd.
pub(crate) fn reverse_mask(m: u8) -> u8 {
    (m & !ARROW_BITS) | ((m & BACK_BIT) << 1) | ((m & FWD_BIT) >> 1)
}

fn bit(color: usize) -> u8 {
    1 << (color - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeGraph {
    kind: TypeKind,
    k: usize,
    labels: Vec<u8>,
}

impl TypeGraph {
    /// Builds a type from its row-major `k × k` label masks and validates it.
    pub fn from_labels(kind: TypeKind, k: usize, labels: Vec<u8>) -> Result<Self> {
        if k == 0 || labels.len() != k * k {
            return Err(Error::DimensionMismatch(format!("{} labels for a type on {k} vertices", labels.len())));
        }
        if let TypeKind::RType { r } = kind {
            if !(2..=8).contains(&r) {
                return Err(Error::BadGraph(format!("r-types support 2..=8 colors, got {r}")));
            }
        }
        let t = TypeGraph { kind, k, labels };
        t.validate()?;
        Ok(t)
    }

    /// An r-type from self labels and the labels of unordered pairs.
    pub fn rtype(r: usize, self_labels: &[Vec<usize>], edges: &[(usize, usize, Vec<usize>)]) -> Result<Self> {
        let k = self_labels.len();
        let mask = |colors: &[usize], x: usize, y: usize| -> Result<u8> {
            colors.iter().try_fold(0u8, |m, &c| {
                if c == 0 || c > r || c > 8 {
                    Err(Error::LabelOutOfRange(x, y))
                } else {
                    Ok(m | bit(c))
                }
            })
        };
        let mut labels = vec![0u8; k * k];
        for (x, colors) in self_labels.iter().enumerate() {
            labels[x * k + x] = mask(colors, x, x)?;
        }
        for (u, v, colors) in edges {
            if *u >= k || *v >= k || u == v {
                return Err(Error::VertexOutOfRange { vertex: (*u).max(*v), n: k });
            }
            let m = mask(colors, *u, *v)?;
            labels[u * k + v] = m;
            labels[v * k + u] = m;
        }
        TypeGraph::from_labels(TypeKind::RType { r }, k, labels)
    }

    /// A dir-type; each edge entry gives `φ(u, v)` and `φ(v, u)` is its mirror.
    pub fn dirtype(palette: Palette, self_labels: &[Vec<Arrow>], edges: &[(usize, usize, Vec<Arrow>)]) -> Result<Self> {
        let k = self_labels.len();
        let mask = |states: &[Arrow]| states.iter().fold(0u8, |m, a| m | a.bit());
        let mut labels = vec![0u8; k * k];
        for (x, states) in self_labels.iter().enumerate() {
            labels[x * k + x] = mask(states);
        }
        for (u, v, states) in edges {
            if *u >= k || *v >= k || u == v {
                return Err(Error::VertexOutOfRange { vertex: (*u).max(*v), n: k });
            }
            let m = mask(states);
            labels[u * k + v] = m;
            labels[v * k + u] = reverse_mask(m);
        }
        TypeGraph::from_labels(TypeKind::DirType { palette }, k, labels)
    }

    pub fn kind(&self) -> TypeKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Label mask `φ(x, y)`.
    pub fn label(&self, x: usize, y: usize) -> u8 {
        self.labels[x * self.k + y]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Color numbers in `φ(x, y)`, ascending.
    pub fn colors(&self, x: usize, y: usize) -> Vec<usize> {
        let m = self.label(x, y);
        (1..=8).filter(|&c| m & bit(c) != 0).collect()
    }

    /// Checks the label invariants of r-types or dir-types.
    pub fn validate(&self) -> Result<()> {
        let universe = self.kind.universe();
        let k = self.k;
        for x in 0..k {
            for y in 0..k {
                let m = self.label(x, y);
                if m == 0 {
                    return Err(Error::EmptyLabel(x, y));
                }
                if m & !universe != 0 {
                    return Err(Error::LabelOutOfRange(x, y));
                }
            }
            if self.label(x, x) == universe {
                return Err(Error::FullSelfLabel(x));
            }
        }
        for x in 0..k {
            for y in (x + 1)..k {
                let (m, w) = (self.label(x, y), self.label(y, x));
                if self.kind.is_directed() {
                    if (m ^ w) & (NONE_BIT | BI_BIT) != 0 {
                        return Err(Error::SymmetryViolation(x, y));
                    }
                    if reverse_mask(m) & ARROW_BITS != w & ARROW_BITS {
                        return Err(Error::ArrowClosureViolation(x, y));
                    }
                } else if m != w {
                    return Err(Error::SymmetryViolation(x, y));
                }
            }
        }
        Ok(())
    }

    /// The sub-type induced by `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> TypeGraph {
        let k = vertices.len();
        let labels = vertices.iter().flat_map(|&x| vertices.iter().map(move |&y| self.label(x, y))).collect();
        TypeGraph { kind: self.kind, k, labels }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("type files serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TypeFile = serde_json::from_str(text)?;
        file.into_type()
    }

    fn tokens(&self, x: usize, y: usize) -> Vec<Token> {
        self.colors(x, y)
            .into_iter()
            .map(|c| match self.kind {
                TypeKind::RType { .. } => Token::Color(c),
                TypeKind::DirType { .. } => Token::State(Arrow::from_color(c).expect("state colors are 1..=4")),
            })
            .collect()
    }

    fn to_file(&self) -> TypeFile {
        let (kind, r, palette) = match self.kind {
            TypeKind::RType { r } => ("rtype", Some(r), None),
            TypeKind::DirType { palette } => ("dirtype", None, Some(palette.to_string())),
        };
        let edges = (0..self.k)
            .flat_map(|u| ((u + 1)..self.k).map(move |v| (u, v)))
            .map(|(u, v)| EdgeEntry { u, v, labels: self.tokens(u, v) })
            .collect();
        TypeFile {
            kind: kind.into(),
            r,
            palette,
            k: self.k,
            self_labels: (0..self.k).map(|x| self.tokens(x, x)).collect(),
            edges,
        }
    }
}

impl Serialize for TypeGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Token {
    Color(usize),
    State(Arrow),
}

#[derive(Serialize, Deserialize)]
struct EdgeEntry {
    u: usize,
    v: usize,
    labels: Vec<Token>,
}

#[derive(Serialize, Deserialize)]
struct TypeFile {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    palette: Option<String>,
    k: usize,
    #[serde(rename = "self")]
    self_labels: Vec<Vec<Token>>,
    edges: Vec<EdgeEntry>,
}

impl TypeFile {
    fn into_type(self) -> Result<TypeGraph> {
        if self.self_labels.len() != self.k {
            return Err(Error::DimensionMismatch(format!("k = {} but {} self labels", self.k, self.self_labels.len())));
        }
        let bad = |what: &str| Error::KindMismatch(format!("{what} in a {} file", self.kind));
        match self.kind.as_str() {
            "rtype" => {
                let r = self.r.ok_or_else(|| Error::BadGraph("rtype needs \"r\"".into()))?;
                let colors = |ts: &[Token]| -> Result<Vec<usize>> {
                    ts.iter().map(|t| if let Token::Color(c) = t { Ok(*c) } else { Err(bad("state token")) }).collect()
                };
                let self_labels = self.self_labels.iter().map(|ts| colors(ts)).collect::<Result<Vec<_>>>()?;
                let edges =
                    self.edges.iter().map(|e| Ok((e.u, e.v, colors(&e.labels)?))).collect::<Result<Vec<_>>>()?;
                TypeGraph::rtype(r, &self_labels, &edges)
            }
            "dirtype" => {
                let palette: Palette = self.palette.as_deref().unwrap_or("P0").parse()?;
                let states = |ts: &[Token]| -> Result<Vec<Arrow>> {
                    ts.iter().map(|t| if let Token::State(a) = t { Ok(*a) } else { Err(bad("color number")) }).collect()
                };
                let self_labels = self.self_labels.iter().map(|ts| states(ts)).collect::<Result<Vec<_>>>()?;
                let edges =
                    self.edges.iter().map(|e| Ok((e.u, e.v, states(&e.labels)?))).collect::<Result<Vec<_>>>()?;
                TypeGraph::dirtype(palette, &self_labels, &edges)
            }
            other => Err(Error::KindMismatch(format!("unknown type kind {other:?}"))),
        }
    }
}

/// The finite generating family `ℱ(ℋ)` of a hereditary property.
#[derive(Clone, Debug, PartialEq)]
pub enum ForbiddenFamily {
    Colored(Vec<ColoredGraph>),
    Directed(Vec<Digraph>),
}

impl ForbiddenFamily {
    /// All members must be of one kind, and r-graphs must share `r`.
    pub fn new(members: Vec<AnyGraph>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::BadFamily("no members".into()));
        };
        match first {
            AnyGraph::Colored(g0) => {
                let r = g0.r();
                members
                    .into_iter()
                    .map(|m| match m {
                        AnyGraph::Colored(g) if g.r() == r => Ok(g),
                        AnyGraph::Colored(g) => Err(Error::BadFamily(format!("members use r = {r} and r = {}", g.r()))),
                        AnyGraph::Directed(_) => Err(Error::BadFamily("mixes r-graphs and digraphs".into())),
                    })
                    .collect::<Result<_>>()
                    .map(ForbiddenFamily::Colored)
            }
            AnyGraph::Directed(_) => members
                .into_iter()
                .map(|m| match m {
                    AnyGraph::Directed(g) => Ok(g),
                    AnyGraph::Colored(_) => Err(Error::BadFamily("mixes r-graphs and digraphs".into())),
                })
                .collect::<Result<_>>()
                .map(ForbiddenFamily::Directed),
        }
    }

    pub fn colored(members: Vec<ColoredGraph>) -> Result<Self> {
        ForbiddenFamily::new(members.into_iter().map(AnyGraph::Colored).collect())
    }

    pub fn directed(members: Vec<Digraph>) -> Result<Self> {
        ForbiddenFamily::new(members.into_iter().map(AnyGraph::Directed).collect())
    }

    pub fn len(&self) -> usize {
        match self {
            ForbiddenFamily::Colored(m) => m.len(),
            ForbiddenFamily::Directed(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Mask of the digraph states used by members, or 0 for r-graphs.
    pub(crate) fn used_states(&self) -> u8 {
        match self {
            ForbiddenFamily::Colored(_) => 0,
            ForbiddenFamily::Directed(m) => m.iter().fold(0, |acc, h| acc | h.used_states()),
        }
    }

    /// The type kind matching this family: `r` of the members, or the
    /// smallest palette holding their states.
    pub fn type_kind(&self) -> TypeKind {
        match self {
            ForbiddenFamily::Colored(m) => TypeKind::RType { r: m[0].r() },
            ForbiddenFamily::Directed(_) => TypeKind::DirType { palette: palette_for_mask(self.used_states()) },
        }
    }

    /// Whether some member embeds in `k`.
    pub fn embeds_in(&self, k: &TypeGraph) -> Result<bool> {
        match self {
            ForbiddenFamily::Colored(m) => {
                check_kind(false, Some(m[0].r()), k)?;
                Ok(m.iter().any(|h| embed_generic(h, k).is_some()))
            }
            ForbiddenFamily::Directed(m) => {
                check_kind(true, None, k)?;
                Ok(m.iter().any(|h| embed_generic(h, k).is_some()))
            }
        }
    }
}

fn check_kind(directed: bool, r: Option<usize>, k: &TypeGraph) -> Result<()> {
    match (k.kind, directed) {
        (TypeKind::RType { r: rk }, false) if r == Some(rk) => Ok(()),
        (TypeKind::RType { r: rk }, false) => {
            Err(Error::KindMismatch(format!("graph has r = {} but the type has r = {rk}", r.unwrap_or(0))))
        }
        (TypeKind::DirType { .. }, true) => Ok(()),
        _ => Err(Error::KindMismatch("r-graphs embed in r-types and digraphs in dir-types".into())),
    }
}

/// Whether the state with color number `c` may appear inside fiber `u`.
fn fiber_allows(kind: TypeKind, self_label: u8, c: usize) -> bool {
    if !kind.is_directed() || c <= 2 {
        return self_label & bit(c) != 0;
    }
    self_label & ARROW_BITS != 0
}

/// Searches for a map `γ: V(H) → U` witnessing `H ↦ K`. For dir-types the
/// fiber conditions apply: oriented pairs in a fiber need an arrow in
/// `φ(u, u)` and must be acyclic when only one arrow is present; nonedges
/// and bi-arcs need their own state in `φ(u, u)`.
pub fn embeds(h: &AnyGraph, k: &TypeGraph) -> Result<Option<Vec<usize>>> {
    match h {
        AnyGraph::Colored(g) => {
            check_kind(false, Some(g.r()), k)?;
            Ok(embed_generic(g, k))
        }
        AnyGraph::Directed(g) => {
            check_kind(true, None, k)?;
            Ok(embed_generic(g, k))
        }
    }
}

pub(crate) fn embed_generic<G: EdgeColoring>(h: &G, k: &TypeGraph) -> Option<Vec<usize>> {
    let mut map = Vec::with_capacity(h.vertex_count());
    extend_embedding(h, k, &mut map).then_some(map)
}

fn extend_embedding<G: EdgeColoring>(h: &G, k: &TypeGraph, map: &mut Vec<usize>) -> bool {
    let v = map.len();
    if v == h.vertex_count() {
        return true;
    }
    for u in 0..k.k {
        if placement_ok(h, k, map, v, u) {
            map.push(u);
            if extend_embedding(h, k, map) {
                return true;
            }
            map.pop();
        }
    }
    false
}

fn placement_ok<G: EdgeColoring>(h: &G, k: &TypeGraph, map: &[usize], v: usize, u: usize) -> bool {
    let self_label = k.label(u, u);
    for (w, &x) in map.iter().enumerate() {
        let c = h.color(w, v);
        let ok = if x == u { fiber_allows(k.kind, self_label, c) } else { k.label(x, u) & bit(c) != 0 };
        if !ok {
            return false;
        }
    }
    let one_arrow = k.kind.is_directed() && (self_label & ARROW_BITS).count_ones() == 1;
    !one_arrow || fiber_stays_acyclic(h, map, v, u)
}

/// With `v` joining fiber `u`, checks that no directed cycle through `v`
/// appears among the fiber's oriented pairs.
fn fiber_stays_acyclic<G: EdgeColoring>(h: &G, map: &[usize], v: usize, u: usize) -> bool {
    let fiber: Vec<usize> = (0..map.len()).filter(|&w| map[w] == u).collect();
    let fwd = Arrow::Fwd.color();
    let mut seen = vec![false; map.len()];
    let mut stack: Vec<usize> = fiber.iter().copied().filter(|&w| h.color(v, w) == fwd).collect();
    while let Some(w) = stack.pop() {
        if h.color(w, v) == fwd {
            return false;
        }
        if std::mem::replace(&mut seen[w], true) {
            continue;
        }
        stack.extend(fiber.iter().copied().filter(|&x| !seen[x] && h.color(w, x) == fwd));
    }
    true
}
