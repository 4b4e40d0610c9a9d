//! The textual exchange format: JSON documents distinguished by a `kind` field.
//!
//! Rationals are strings `"p/q"` (or `"p"`), matrices are `[rows, cols, [[...]]]`, germs are
//! `{"exceptional": {k: value}, "generic": value}` and graded dimensions are `{degree: dim}`.
//! Printing is canonical (sorted keys, two-space indent), so `print(parse(s)) == s` for
//! anything this module printed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::adams::{AdamsReport, ExtTerm, GeneratorLine, HomTerm};
use crate::burnside::{BurnsideElement, DihedralBurnside};
use crate::error::{Error, Result};
use crate::euler::{BaseRing, ModuleElement, QcPresentation};
use crate::exactlin::rat::{fmt_rat, parse_rat};
use crate::exactlin::{ChainCx, GradedMap, GradedVec, Matrix, Rat, WChainCx};
use crate::germ::Germ;
use crate::model_c::{CObject, Signs};
use crate::model_d::{make_d, DObject, RawDObject, SectionSpace, TailQuotient};
use crate::model_t::{TObject, TPart};

/// A rational written as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rat);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s)
            .map(Q)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermDoc<T> {
    #[serde(default = "BTreeMap::new", skip_serializing_if = "BTreeMap::is_empty")]
    pub exceptional: BTreeMap<u64, T>,
    pub generic: T,
}

impl<T: Clone + PartialEq> GermDoc<T> {
    fn from_germ<U: Clone + PartialEq>(g: &Germ<U>, f: impl Fn(&U) -> T) -> Self {
        GermDoc {
            exceptional: g.exceptional().iter().map(|(&k, v)| (k, f(v))).collect(),
            generic: f(g.generic()),
        }
    }

    fn to_germ<U: Clone + PartialEq>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Germ<U>> {
        let mut ex = BTreeMap::new();
        for (&k, v) in &self.exceptional {
            if k == 0 {
                return Err(Error::parse("germ indices start at 1"));
            }
            ex.insert(k, f(v)?);
        }
        Ok(Germ::new(ex, f(&self.generic)?))
    }
}

pub type Dims = BTreeMap<i64, usize>;

fn dims(v: &GradedVec) -> Dims {
    v.dims().clone()
}

fn graded(d: &Dims) -> GradedVec {
    GradedVec::new(d.iter().map(|(&k, &n)| (k, n)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BurnsideDoc {
    pub so2: Q,
    pub dihedral: GermDoc<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DihedralDoc {
    pub n: u64,
    pub cyclic: BTreeMap<u64, Q>,
    pub dihedral: BTreeMap<u64, Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub degree: i64,
    pub coords: GermDoc<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TPartDoc {
    pub nub: QcPresentation,
    pub beta: Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TObjectDoc {
    pub ring: BaseRing,
    pub vertex: Vec<i64>,
    pub parts: GermDoc<TPartDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CObjectDoc {
    pub base: TObjectDoc,
    pub nub_signs: GermDoc<Signs>,
    pub vertex_signs: Signs,
}

/// A chain complex: dimensions and the nonzero differentials `d_n : X_n -> X_{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CxDoc {
    pub dims: Dims,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub d: BTreeMap<i64, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WCxDoc {
    pub plus: CxDoc,
    pub minus: CxDoc,
}

/// `sigma` maps `infty` into the whole generic stalk, `+` rows first; blocks per degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DObjectDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub stalks: BTreeMap<u64, WCxDoc>,
    pub generic: WCxDoc,
    pub infty: CxDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sigma: BTreeMap<i64, Matrix>,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionsDoc {
    pub start: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exceptional: BTreeMap<u64, Dims>,
    pub generic_sum: Dims,
    pub generic_product: Dims,
    pub infinity: Dims,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailQuotientDoc {
    pub tails: Dims,
    pub constants: Dims,
}

/// Either per-degree dimensions or the string `"unavailable"`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ExtDoc {
    Computed(Dims),
    Marker(String),
}

// untagged derive buffers the map and then cannot read integer keys back
impl<'de> Deserialize<'de> for ExtDoc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = ExtDoc;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a map of degree dimensions or a marker string")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<ExtDoc, E> {
                Ok(ExtDoc::Marker(v.to_string()))
            }
            fn visit_map<A: serde::de::MapAccess<'de>>(self, m: A) -> std::result::Result<ExtDoc, A::Error> {
                Dims::deserialize(serde::de::value::MapAccessDeserializer::new(m)).map(ExtDoc::Computed)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdamsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom_sections: Option<SectionsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<Dims>,
    pub ext: ExtDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<Dims>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext_all_germs: Option<TailQuotientDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDoc {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// Per-degree `(hom, ext)` of the finite oracle on indices `1..=truncation`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncatedDoc {
    pub truncation: u64,
    pub hom: Dims,
    pub ext: Dims,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdempotentsDoc {
    pub n: u64,
    pub elements: Vec<DihedralDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HasseDoc {
    pub germ: GermDoc<Q>,
    pub so2: Q,
    pub o2: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDimsDoc {
    pub dims: Dims,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomExtDoc {
    pub hom: SectionsDoc,
    pub ext: Dims,
    pub ext_all_germs: TailQuotientDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated: Option<TruncatedDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub lines: Vec<LineDoc>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    pub sphere: TObjectDoc,
    /// Components where an extra generator was needed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub augmented: Vec<u64>,
    pub exponents: GermDoc<u64>,
    pub projective: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationDoc {
    pub object: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<String>,
}

macro_rules! documents {
    ($($variant:ident($ty:ty) = $kind:literal,)*) => {
        #[derive(Clone, Debug, PartialEq, Serialize)]
        #[serde(tag = "kind")]
        pub enum Document {
            $(#[serde(rename = $kind)] $variant($ty),)*
        }

        impl Document {
            pub fn kind(&self) -> &'static str {
                match self {
                    $(Document::$variant(_) => $kind,)*
                }
            }
        }

        const KINDS: &[&str] = &[$($kind),*];

        fn parse_kind(kind: &str, text: &str) -> serde_json::Result<Document> {
            let mut de = serde_json::Deserializer::from_str(text);
            let doc = match kind {
                $($kind => Document::$variant(de::WithoutKind::<$ty>::deserialize(&mut de)?.0),)*
                _ => unreachable!("kind checked against KINDS"),
            };
            de.end()?;
            Ok(doc)
        }
    };
}

documents! {
    Burnside(BurnsideDoc) = "burnside",
    DihedralBurnside(DihedralDoc) = "dihedral_burnside",
    ModuleElement(ElementDoc) = "module_element",
    TObject(TObjectDoc) = "t_object",
    CObject(CObjectDoc) = "c_object",
    DObject(DObjectDoc) = "d_object",
    Idempotents(IdempotentsDoc) = "idempotents",
    Hasse(HasseDoc) = "hasse",
    HomDims(HomDimsDoc) = "hom_dims",
    HomExt(HomExtDoc) = "hom_ext",
    Adams(AdamsDoc) = "adams",
    GeneratorTable(TableDoc) = "generator_table",
    Cover(CoverDoc) = "cover",
    Validation(ValidationDoc) = "validation",
}

mod de {
    //! Streams a struct out of a JSON object while skipping its `kind` key, so errors keep
    //! their positions.

    use std::fmt;

    use serde::de::{self, DeserializeSeed, Deserializer, IgnoredAny, IntoDeserializer, MapAccess, Visitor};
    use serde::Deserialize;

    pub struct WithoutKind<T>(pub T);

    impl<'de, T: Deserialize<'de>> Deserialize<'de> for WithoutKind<T> {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            T::deserialize(Filter(d)).map(WithoutKind)
        }
    }

    struct Filter<D>(D);

    impl<'de, D: Deserializer<'de>> Deserializer<'de> for Filter<D> {
        type Error = D::Error;

        fn deserialize_any<V: Visitor<'de>>(self, v: V) -> Result<V::Value, D::Error> {
            self.0.deserialize_map(Skip(v))
        }

        fn deserialize_struct<V: Visitor<'de>>(
            self,
            _name: &'static str,
            _fields: &'static [&'static str],
            v: V,
        ) -> Result<V::Value, D::Error> {
            self.0.deserialize_map(Skip(v))
        }

        serde::forward_to_deserialize_any! {
            bool i8 i16 i32 i64 i128 u8 u16 u32 u64 u128 f32 f64 char str string bytes byte_buf
            option unit unit_struct newtype_struct seq tuple tuple_struct map enum identifier
            ignored_any
        }
    }

    struct Skip<V>(V);

    impl<'de, V: Visitor<'de>> Visitor<'de> for Skip<V> {
        type Value = V::Value;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            self.0.expecting(f)
        }

        fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<V::Value, A::Error> {
            self.0.visit_map(SkipMap(map))
        }
    }

    struct SkipMap<A>(A);

    impl<'de, A: MapAccess<'de>> MapAccess<'de> for SkipMap<A> {
        type Error = A::Error;

        fn next_key_seed<K: DeserializeSeed<'de>>(&mut self, seed: K) -> Result<Option<K::Value>, A::Error> {
            loop {
                match self.0.next_key::<String>()? {
                    None => return Ok(None),
                    Some(k) if k == "kind" => {
                        self.0.next_value::<IgnoredAny>()?;
                    }
                    Some(k) => {
                        let key: de::value::StringDeserializer<A::Error> = k.into_deserializer();
                        return seed.deserialize(key).map(Some);
                    }
                }
            }
        }

        fn next_value_seed<S: DeserializeSeed<'de>>(&mut self, seed: S) -> Result<S::Value, A::Error> {
            self.0.next_value_seed(seed)
        }
    }
}

/// Parses a document; syntax and schema errors carry line and column.
pub fn parse(text: &str) -> Result<Document> {
    let pos = |e: serde_json::Error| Error::parse(format!("line {} column {}: {}", e.line(), e.column(), strip_position(&e)));
    let v: serde_json::Value = serde_json::from_str(text).map_err(pos)?;
    let kind = match v.get("kind") {
        Some(serde_json::Value::String(k)) => k.clone(),
        Some(_) => return Err(Error::parse("line 1 column 1: `kind` must be a string")),
        None => return Err(Error::parse("line 1 column 1: missing field `kind`")),
    };
    if !KINDS.contains(&kind.as_str()) {
        return Err(Error::parse(format!(
            "line 1 column 1: unknown kind {kind:?}, expected one of {}",
            KINDS.join(", ")
        )));
    }
    parse_kind(&kind, text).map_err(pos)
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

pub fn print(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

// Conversions between documents and the library types. `*_from_doc` validates.

fn rat_vec(v: &[Q]) -> Vec<Rat> {
    v.iter().map(|q| q.0.clone()).collect()
}

fn q_vec(v: &[Rat]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn burnside_doc(x: &BurnsideElement) -> BurnsideDoc {
    BurnsideDoc {
        so2: Q(x.so2.clone()),
        dihedral: GermDoc::from_germ(&x.dihedral, |q| Q(q.clone())),
    }
}

pub fn burnside_from_doc(d: &BurnsideDoc) -> Result<BurnsideElement> {
    Ok(BurnsideElement::new(d.so2.0.clone(), d.dihedral.to_germ(|q| Ok(q.0.clone()))?))
}

pub fn dihedral_doc(x: &DihedralBurnside) -> DihedralDoc {
    let conv = |m: &BTreeMap<u64, Rat>| m.iter().map(|(&k, q)| (k, Q(q.clone()))).collect();
    DihedralDoc {
        n: x.n,
        cyclic: conv(&x.cyclic),
        dihedral: conv(&x.dihedral),
    }
}

pub fn dihedral_from_doc(d: &DihedralDoc) -> Result<DihedralBurnside> {
    let conv = |m: &BTreeMap<u64, Q>| -> Result<BTreeMap<u64, Rat>> {
        m.iter()
            .map(|(&k, q)| {
                if d.n == 0 || k == 0 || d.n % k != 0 {
                    Err(Error::invalid(format!("{k} does not divide {}", d.n)))
                } else {
                    Ok((k, q.0.clone()))
                }
            })
            .collect()
    };
    let mut out = DihedralBurnside::zero(d.n);
    out.cyclic.extend(conv(&d.cyclic)?);
    out.dihedral.extend(conv(&d.dihedral)?);
    Ok(out)
}

pub fn element_doc(x: &ModuleElement) -> ElementDoc {
    ElementDoc {
        degree: x.degree,
        coords: GermDoc::from_germ(&x.coords, |v| q_vec(v)),
    }
}

pub fn element_from_doc(d: &ElementDoc) -> Result<ModuleElement> {
    Ok(ModuleElement {
        degree: d.degree,
        coords: d.coords.to_germ(|v| Ok(rat_vec(v)))?,
    })
}

pub fn t_doc(x: &TObject) -> TObjectDoc {
    TObjectDoc {
        ring: x.ring,
        vertex: x.vertex.clone(),
        parts: GermDoc::from_germ(&x.parts, |p| TPartDoc {
            nub: p.nub.clone(),
            beta: p.beta.clone(),
        }),
    }
}

pub fn t_from_doc(d: &TObjectDoc) -> Result<TObject> {
    let out = TObject {
        ring: d.ring,
        vertex: d.vertex.clone(),
        parts: d.parts.to_germ(|p| {
            Ok(TPart {
                nub: p.nub.clone(),
                beta: p.beta.clone(),
            })
        })?,
    };
    out.validate()?;
    Ok(out)
}

pub fn c_doc(x: &CObject) -> CObjectDoc {
    CObjectDoc {
        base: t_doc(&x.base),
        nub_signs: GermDoc::from_germ(&x.nub_signs, Clone::clone),
        vertex_signs: x.vertex_signs.clone(),
    }
}

pub fn c_from_doc(d: &CObjectDoc) -> Result<CObject> {
    let base = t_from_doc(&d.base).map_err(|e| e.context("base"))?;
    CObject::new(base, d.nub_signs.to_germ(|s| Ok(s.clone()))?, d.vertex_signs.clone())
}

fn cx_doc(c: &ChainCx) -> CxDoc {
    CxDoc {
        dims: dims(c.spaces()),
        d: c.differential().blocks().iter().filter(|(_, m)| !m.is_zero()).map(|(&n, m)| (n, m.clone())).collect(),
    }
}

fn cx_from_doc(d: &CxDoc) -> Result<ChainCx> {
    ChainCx::from_diffs(graded(&d.dims), d.d.clone())
}

fn wcx_doc(c: &WChainCx) -> WCxDoc {
    WCxDoc {
        plus: cx_doc(&c.plus),
        minus: cx_doc(&c.minus),
    }
}

fn wcx_from_doc(d: &WCxDoc) -> Result<WChainCx> {
    Ok(WChainCx::new(
        cx_from_doc(&d.plus).map_err(|e| e.context("plus part"))?,
        cx_from_doc(&d.minus).map_err(|e| e.context("minus part"))?,
    ))
}

pub fn d_doc(x: &DObject) -> DObjectDoc {
    let gen = x.generic();
    let mut sigma = BTreeMap::new();
    for n in x.infty.spaces().degrees() {
        let b = x.sigma.block(n);
        if !b.is_zero() {
            sigma.insert(n, b.vstack(&Matrix::zeros(gen.minus.spaces().dim(n), b.cols())));
        }
    }
    DObjectDoc {
        stalks: x.stalks.exceptional().iter().map(|(&k, c)| (k, wcx_doc(c))).collect(),
        generic: wcx_doc(gen),
        infty: cx_doc(&x.infty),
        sigma,
        bound: x.bound(),
    }
}

pub fn d_from_doc(d: &DObjectDoc) -> Result<DObject> {
    let mut stalks = BTreeMap::new();
    for (&k, c) in &d.stalks {
        stalks.insert(k, wcx_from_doc(c).map_err(|e| e.context(format!("stalk {k}")))?);
    }
    let generic = wcx_from_doc(&d.generic).map_err(|e| e.context("generic stalk"))?;
    let infty = cx_from_doc(&d.infty).map_err(|e| e.context("part at infinity"))?;
    let total = generic.spaces().total();
    let mut sigma = GradedMap::zero(infty.spaces().clone(), total.clone(), 0);
    for (&n, m) in &d.sigma {
        if m.rows() != total.dim(n) || m.cols() != infty.spaces().dim(n) {
            return Err(Error::invalid(format!("sigma has the wrong shape in degree {n}")));
        }
        sigma.set_block(n, m.clone());
    }
    make_d(RawDObject {
        stalks,
        generic,
        infty,
        sigma,
        bound: d.bound,
    })
}

pub fn sections_doc(s: &SectionSpace) -> SectionsDoc {
    SectionsDoc {
        start: s.start,
        exceptional: s.exceptional.iter().map(|(&k, v)| (k, dims(v))).collect(),
        generic_sum: dims(&s.generic_sum),
        generic_product: dims(&s.generic_product),
        infinity: dims(&s.infinity),
    }
}

pub fn sections_from_doc(d: &SectionsDoc) -> SectionSpace {
    SectionSpace {
        start: d.start,
        exceptional: d.exceptional.iter().map(|(&k, v)| (k, graded(v))).collect(),
        generic_sum: graded(&d.generic_sum),
        generic_product: graded(&d.generic_product),
        infinity: graded(&d.infinity),
    }
}

pub fn tail_doc(t: &TailQuotient) -> TailQuotientDoc {
    TailQuotientDoc {
        tails: dims(&t.tails),
        constants: dims(&t.constants),
    }
}

pub fn adams_doc(r: &AdamsReport) -> AdamsDoc {
    let (hom_sections, hom) = match &r.hom {
        HomTerm::Sections(s) => (Some(sections_doc(s)), None),
        HomTerm::Finite(v) => (None, Some(dims(v))),
    };
    let (ext, ext_reason) = match &r.ext {
        ExtTerm::Computed(v) => (ExtDoc::Computed(dims(v)), None),
        ExtTerm::Unavailable { reason } => (ExtDoc::Marker("unavailable".to_string()), Some(reason.clone())),
    };
    AdamsDoc {
        hom_sections,
        hom,
        ext,
        ext_reason,
        total: r.total.as_ref().map(dims),
        ext_all_germs: r.ext_all_germs.as_ref().map(tail_doc),
        notes: r.notes.clone(),
    }
}

pub fn adams_from_doc(d: &AdamsDoc) -> Result<AdamsReport> {
    let hom = match (&d.hom_sections, &d.hom) {
        (Some(s), None) => HomTerm::Sections(sections_from_doc(s)),
        (None, Some(v)) => HomTerm::Finite(graded(v)),
        _ => return Err(Error::parse("an adams report has exactly one of hom and hom_sections")),
    };
    let ext = match &d.ext {
        ExtDoc::Computed(v) => ExtTerm::Computed(graded(v)),
        ExtDoc::Marker(m) if m == "unavailable" => ExtTerm::Unavailable {
            reason: d.ext_reason.clone().unwrap_or_default(),
        },
        ExtDoc::Marker(m) => return Err(Error::parse(format!("unknown ext marker {m:?}"))),
    };
    Ok(AdamsReport {
        hom,
        ext,
        total: d.total.as_ref().map(graded),
        ext_all_germs: d.ext_all_germs.as_ref().map(|t| TailQuotient {
            tails: graded(&t.tails),
            constants: graded(&t.constants),
        }),
        notes: d.notes.clone(),
    })
}

pub fn line_doc(l: &GeneratorLine) -> LineDoc {
    LineDoc {
        label: l.label.clone(),
        expected: l.expected.clone(),
        computed: l.computed.clone(),
        pass: l.pass,
    }
}

// Text rendering.

fn dims_text(d: &Dims) -> String {
    let parts: Vec<String> = d.iter().filter(|(_, &n)| n > 0).map(|(k, n)| format!("{k}:{n}")).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

fn germ_text(g: &GermDoc<Q>) -> String {
    let mut s = String::new();
    for (k, q) in &g.exceptional {
        let _ = write!(s, "k={k}:{} ", fmt_rat(&q.0));
    }
    let _ = write!(s, "otherwise:{}", fmt_rat(&g.generic.0));
    s
}

fn dihedral_text(d: &DihedralDoc) -> String {
    let mut terms = Vec::new();
    for (k, q) in &d.cyclic {
        if q.0 != Rat::from_integer(0.into()) {
            terms.push(format!("{} e_C{k}", fmt_rat(&q.0)));
        }
    }
    for (k, q) in &d.dihedral {
        if q.0 != Rat::from_integer(0.into()) {
            terms.push(format!("{} e_D{}", fmt_rat(&q.0), 2 * k));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn sections_text(s: &SectionsDoc, out: &mut String) {
    for (k, v) in &s.exceptional {
        let _ = writeln!(out, "  at {k}: {}", dims_text(v));
    }
    let _ = writeln!(out, "  each other k >= {} (sum): {}", s.start, dims_text(&s.generic_sum));
    let _ = writeln!(out, "  each other k >= {} (product): {}", s.start, dims_text(&s.generic_product));
    let _ = writeln!(out, "  infinity: {}", dims_text(&s.infinity));
}

/// Human-readable report; dimensions are printed as `degree:dim`.
pub fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Burnside(b) => {
            let _ = writeln!(out, "burnside element");
            let _ = writeln!(out, "  SO(2): {}", fmt_rat(&b.so2.0));
            let _ = writeln!(out, "  D_2k: {}", germ_text(&b.dihedral));
        }
        Document::DihedralBurnside(d) => {
            let _ = writeln!(out, "A(D_{}) element: {}", 2 * d.n, dihedral_text(d));
        }
        Document::Idempotents(IdempotentsDoc { n, elements }) => {
            let _ = writeln!(out, "{} primitive idempotents of A(D_{})", elements.len(), 2 * n);
            for e in elements {
                let _ = writeln!(out, "  {}", dihedral_text(e));
            }
        }
        Document::Hasse(HasseDoc { germ, so2, o2 }) => {
            let _ = writeln!(out, "hasse square");
            let _ = writeln!(out, "  dihedral germ: {}", germ_text(germ));
            let _ = writeln!(out, "  corner: SO(2) {} O(2) {}", fmt_rat(&so2.0), fmt_rat(&o2.0));
        }
        Document::HomDims(HomDimsDoc { dims }) => {
            let _ = writeln!(out, "hom dimensions: {}", dims_text(dims));
        }
        Document::HomExt(HomExtDoc {
            hom,
            ext,
            ext_all_germs,
            truncated,
        }) => {
            let _ = writeln!(out, "hom");
            sections_text(hom, &mut out);
            let _ = writeln!(out, "ext: {}", dims_text(ext));
            let _ = writeln!(
                out,
                "ext over all germs: tails {} modulo constants {}",
                dims_text(&ext_all_germs.tails),
                dims_text(&ext_all_germs.constants)
            );
            if let Some(t) = truncated {
                let _ = writeln!(out, "finite oracle on 1..={}", t.truncation);
                let _ = writeln!(out, "  hom: {}", dims_text(&t.hom));
                let _ = writeln!(out, "  ext: {}", dims_text(&t.ext));
            }
        }
        Document::Adams(a) => {
            let _ = writeln!(out, "adams sequence");
            if let Some(s) = &a.hom_sections {
                let _ = writeln!(out, "hom");
                sections_text(s, &mut out);
            }
            if let Some(h) = &a.hom {
                let _ = writeln!(out, "hom: {}", dims_text(h));
            }
            match &a.ext {
                ExtDoc::Computed(e) => {
                    let _ = writeln!(out, "ext: {}", dims_text(e));
                }
                ExtDoc::Marker(m) => {
                    let _ = writeln!(out, "ext: {m} ({})", a.ext_reason.as_deref().unwrap_or(""));
                }
            }
            if let Some(t) = &a.total {
                let _ = writeln!(out, "total: {}", dims_text(t));
            }
            for n in &a.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        Document::GeneratorTable(TableDoc { lines, all_pass }) => {
            for l in lines {
                let _ = writeln!(
                    out,
                    "{} {}: expected {}, computed {}",
                    if l.pass { "PASS" } else { "FAIL" },
                    l.label,
                    l.expected,
                    l.computed
                );
            }
            let _ = writeln!(out, "{}", if *all_pass { "all lines pass" } else { "some lines fail" });
        }
        Document::Cover(CoverDoc {
            augmented,
            exponents,
            projective,
            sphere,
        }) => {
            let _ = writeln!(out, "wide sphere with vertex degrees {:?}", sphere.vertex);
            let ex: Vec<String> = exponents.exceptional.iter().map(|(k, e)| format!("k={k}:{e}")).collect();
            let _ = writeln!(out, "  exponents: {} otherwise:{}", ex.join(" "), exponents.generic);
            let _ = writeln!(out, "  nub projective: {projective}");
            if !augmented.is_empty() {
                let _ = writeln!(out, "  augmented at: {augmented:?}");
            }
        }
        Document::Validation(ValidationDoc { object, facts }) => {
            let _ = writeln!(out, "valid {object}");
            for f in facts {
                let _ = writeln!(out, "  {f}");
            }
        }
        Document::ModuleElement(_) | Document::TObject(_) | Document::CObject(_) | Document::DObject(_) => {
            out = print(doc);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::{e_c, e_n};
    use crate::euler::AdmissibleRep;
    use crate::exactlin::WVec;
    use crate::model_c::s0_c;
    use crate::model_d::{i_k, sum_of_stalks, unit_d};
    use crate::model_t::rep_sphere;

    fn round(doc: Document) {
        let s = print(&doc);
        let back = parse(&s).unwrap();
        assert_eq!(back, doc);
        assert_eq!(print(&back), s);
    }

    #[test]
    fn objects_round_trip() {
        let b = e_c().add(&e_n(3).unwrap());
        round(Document::Burnside(burnside_doc(&b)));
        assert_eq!(burnside_from_doc(&burnside_doc(&b)).unwrap(), b);
        let t = rep_sphere(&AdmissibleRep::new(vec![1, 2]).unwrap());
        round(Document::TObject(t_doc(&t)));
        assert_eq!(t_from_doc(&t_doc(&t)).unwrap(), t);
        let c = s0_c();
        assert_eq!(c_from_doc(&c_doc(&c)).unwrap(), c);
        let d = unit_d().direct_sum(&i_k(2, WChainCx::graded(&WVec::regular_power(2, 1))));
        round(Document::DObject(d_doc(&d)));
        assert_eq!(d_from_doc(&d_doc(&d)).unwrap(), d);
        let tails = sum_of_stalks(WChainCx::graded(&WVec::regular_power(1, 0)));
        assert_eq!(d_from_doc(&d_doc(&tails)).unwrap(), tails);
    }

    #[test]
    fn rationals_are_strings() {
        let s = print(&Document::Burnside(burnside_doc(&e_n(2).unwrap().scale(&crate::exactlin::rat::rat(-3, 4)))));
        assert!(s.contains("\"-3/4\""));
        assert!(parse(&s.replace("-3/4", "-3/0")).is_err());
    }

    #[test]
    fn errors_have_positions() {
        let e = parse("{\n  \"kind\": \"burnside\",\n  \"so2\": 1\n}").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        let e = parse("{\"kind\": \"nonsense\"}").unwrap_err();
        assert!(e.to_string().contains("column"), "{e}");
        let e = parse("{\"kind\": \"burnside\", \"so2\": \"0\", \"dihedral\": {\"generic\": \"0\"}, \"x\": 1}").unwrap_err();
        assert!(e.to_string().contains("unknown field"), "{e}");
    }

    #[test]
    fn ext_marker_round_trips() {
        let r = crate::adams::adams_cyclic_hom(&s0_c(), &s0_c(), 0, 1).unwrap();
        let doc = adams_doc(&r);
        assert_eq!(doc.ext, ExtDoc::Marker("unavailable".to_string()));
        round(Document::Adams(doc.clone()));
        assert_eq!(adams_from_doc(&doc).unwrap(), r);
        let s = crate::adams::adams_dihedral(&unit_d(), &unit_d()).unwrap();
        assert_eq!(adams_from_doc(&adams_doc(&s)).unwrap(), s);
        round(Document::Adams(adams_doc(&s)));
    }

    #[test]
    fn bad_sigma_is_a_math_error() {
        let mut d = d_doc(&unit_d());
        d.sigma.insert(0, Matrix::from_i64(&[&[0]]));
        d.generic.minus.dims.insert(0, 1);
        d.sigma.insert(0, Matrix::from_i64(&[&[1], &[1]]));
        assert!(matches!(d_from_doc(&d), Err(Error::Invalid(_))));
    }
}
