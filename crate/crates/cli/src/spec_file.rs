//! The space specification file.
//!
//! ```toml
//! dimension = 3
//! base_norm = "euclidean"      # or "maximum", or "p" together with `p = 3.0`
//! conorm = "maximum"           # "probabilistic-sum", "bounded-sum"
//!
//! [profile]
//! kind = "reciprocal"          # k; "exponential": lambda; "step"; "tabulated": knots
//! k = 1.0
//!
//! [subspaces.plane]
//! basis = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
//!
//! [sequences.harmonic]
//! kind = "generator"           # x_n = base + rate(n) * direction
//! base = [1.0, 0.0, 0.0]
//! direction = [0.0, 1.0, 0.0]
//! rate = "harmonic"            # "inverse-square", "geometric" (with q), "constant"
//! limit = [1.0, 0.0, 0.0]
//!
//! [sequences.listed]
//! kind = "explicit"
//! terms = [[1.0, 0.0, 0.0], [0.5, 0.0, 0.0]]   # or terms_file = "terms.csv"
//! limit = [0.0, 0.0, 0.0]
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::path::{Path, PathBuf};

use fuzzy_antinorm::riesz::Subspace;
use fuzzy_antinorm::{BaseNorm, DecayProfile, FuzzyAntiNorm, Rate, TConorm, VectorSequence, VectorSpaceSpec};
use serde::Deserialize;
use toml::Spanned;

/// A problem in the spec file, located by line where possible.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecError {
    pub file: PathBuf,
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file.display())?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if !self.field.is_empty() {
            write!(f, ": {}", self.field)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for SpecError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    dimension: Spanned<i64>,
    base_norm: Spanned<String>,
    p: Option<Spanned<f64>>,
    conorm: Spanned<String>,
    profile: Spanned<RawProfile>,
    #[serde(default)]
    subspaces: BTreeMap<String, Spanned<RawSubspace>>,
    #[serde(default)]
    sequences: BTreeMap<String, Spanned<RawSequence>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    kind: Spanned<String>,
    k: Option<Spanned<f64>>,
    lambda: Option<Spanned<f64>>,
    knots: Option<Spanned<Vec<(f64, f64)>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubspace {
    basis: Spanned<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    kind: Spanned<String>,
    base: Option<Spanned<Vec<f64>>>,
    direction: Option<Spanned<Vec<f64>>>,
    rate: Option<Spanned<String>>,
    q: Option<Spanned<f64>>,
    terms: Option<Spanned<Vec<Vec<f64>>>>,
    terms_file: Option<Spanned<String>>,
    limit: Option<Spanned<Vec<f64>>>,
}

/// A parsed and validated spec file.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    pub antinorm: FuzzyAntiNorm,
    pub subspaces: BTreeMap<String, Subspace>,
    pub sequences: BTreeMap<String, VectorSequence>,
    /// Raw bytes of the spec file followed by any referenced term files.
    pub digest_input: Vec<u8>,
}

struct Ctx<'a> {
    file: &'a Path,
    text: &'a str,
}

impl Ctx<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        self.text[..span.start.min(self.text.len())].matches('\n').count() + 1
    }

    fn err(&self, span: Option<Range<usize>>, field: impl Into<String>, message: impl Into<String>) -> SpecError {
        SpecError {
            file: self.file.to_path_buf(),
            line: span.map(|s| self.line(s)),
            field: field.into(),
            message: message.into(),
        }
    }

    fn at<T>(&self, v: &Spanned<T>, field: impl Into<String>, message: impl Into<String>) -> SpecError {
        self.err(Some(v.span()), field, message)
    }
}

pub fn load(path: &Path) -> Result<SpaceSpec, SpecError> {
    let bytes = std::fs::read(path).map_err(|e| SpecError {
        file: path.to_path_buf(),
        line: None,
        field: String::new(),
        message: e.to_string(),
    })?;
    let text = String::from_utf8(bytes).map_err(|_| SpecError {
        file: path.to_path_buf(),
        line: None,
        field: String::new(),
        message: "not valid UTF-8".into(),
    })?;
    parse(path, &text)
}

pub fn parse(path: &Path, text: &str) -> Result<SpaceSpec, SpecError> {
    let cx = Ctx { file: path, text };
    let raw: RawSpec = toml::from_str(text).map_err(|e| {
        let message = e.message().to_string();
        cx.err(e.span(), "", message)
    })?;

    let dim = *raw.dimension.get_ref();
    if dim < 1 {
        return Err(cx.at(&raw.dimension, "dimension", "must be a positive integer"));
    }
    let dim = dim as usize;

    let norm = match (raw.base_norm.get_ref().as_str(), &raw.p) {
        ("euclidean", None) => BaseNorm::Euclidean,
        ("maximum", None) => BaseNorm::Maximum,
        ("p", Some(p)) => {
            let n = BaseNorm::P { p: *p.get_ref() };
            n.validate().map_err(|e| cx.at(p, "p", e.to_string()))?;
            n
        }
        ("p", None) => return Err(cx.at(&raw.base_norm, "p", "required when base_norm = \"p\"")),
        ("euclidean" | "maximum", Some(p)) => {
            return Err(cx.at(p, "p", "only allowed when base_norm = \"p\""));
        }
        (other, _) => {
            return Err(cx.at(
                &raw.base_norm,
                "base_norm",
                format!("unknown norm `{other}` (expected euclidean, maximum or p)"),
            ))
        }
    };
    let space = VectorSpaceSpec::new(dim, norm).map_err(|e| cx.at(&raw.dimension, "dimension", e.to_string()))?;
    let conorm: TConorm = raw.conorm.get_ref().parse().map_err(|_| {
        cx.at(
            &raw.conorm,
            "conorm",
            format!("unknown conorm `{}`", raw.conorm.get_ref()),
        )
    })?;
    let profile = profile(&cx, raw.profile.get_ref())?;
    let antinorm =
        FuzzyAntiNorm::new(space, profile, conorm).map_err(|e| cx.at(&raw.profile, "profile", e.to_string()))?;

    let mut subspaces = BTreeMap::new();
    for (id, s) in &raw.subspaces {
        let field = format!("subspaces.{id}.basis");
        let basis = s.get_ref().basis.get_ref().clone();
        let w = Subspace::new(dim, basis).map_err(|e| cx.at(&s.get_ref().basis, field, e.to_string()))?;
        subspaces.insert(id.clone(), w);
    }

    let mut digest_input = text.as_bytes().to_vec();
    let mut sequences = BTreeMap::new();
    for (id, s) in &raw.sequences {
        let seq = sequence(&cx, id, s, dim, &mut digest_input)?;
        sequences.insert(id.clone(), seq);
    }

    Ok(SpaceSpec {
        antinorm,
        subspaces,
        sequences,
        digest_input,
    })
}

fn positive(cx: &Ctx, v: &Option<Spanned<f64>>, kind: &Spanned<String>, field: &str) -> Result<f64, SpecError> {
    let v = v
        .as_ref()
        .ok_or_else(|| cx.at(kind, field, format!("required for kind `{}`", kind.get_ref())))?;
    let x = *v.get_ref();
    if !(x.is_finite() && x > 0.0) {
        return Err(cx.at(v, field, format!("{x} must be a positive real")));
    }
    Ok(x)
}

fn profile(cx: &Ctx, raw: &RawProfile) -> Result<DecayProfile, SpecError> {
    let kind = &raw.kind;
    let allowed: &[&str] = match kind.get_ref().as_str() {
        "reciprocal" => &["k"],
        "exponential" => &["lambda"],
        "step" => &[],
        "tabulated" => &["knots"],
        other => {
            return Err(cx.at(
                kind,
                "profile.kind",
                format!("unknown profile `{other}` (expected reciprocal, exponential, step or tabulated)"),
            ))
        }
    };
    let given = [
        ("k", raw.k.as_ref().map(|v| v.span())),
        ("lambda", raw.lambda.as_ref().map(|v| v.span())),
        ("knots", raw.knots.as_ref().map(|v| v.span())),
    ];
    for (name, span) in given {
        if let Some(span) = span {
            if !allowed.contains(&name) {
                return Err(cx.err(
                    Some(span),
                    format!("profile.{name}"),
                    format!("not a parameter of `{}`", kind.get_ref()),
                ));
            }
        }
    }
    let built = match kind.get_ref().as_str() {
        "reciprocal" => DecayProfile::reciprocal(positive(cx, &raw.k, kind, "profile.k")?),
        "exponential" => DecayProfile::exponential(positive(cx, &raw.lambda, kind, "profile.lambda")?),
        "step" => Ok(DecayProfile::Step),
        _ => {
            let knots = raw
                .knots
                .as_ref()
                .ok_or_else(|| cx.at(kind, "profile.knots", "required for kind `tabulated`"))?;
            return DecayProfile::tabulated(knots.get_ref().clone())
                .map_err(|e| cx.at(knots, "profile.knots", e.to_string()));
        }
    };
    built.map_err(|e| cx.at(kind, "profile", e.to_string()))
}

fn vector(cx: &Ctx, v: &Spanned<Vec<f64>>, field: &str, dim: usize) -> Result<Vec<f64>, SpecError> {
    if v.get_ref().len() != dim {
        return Err(cx.at(v, field, format!("has {} entries, expected {dim}", v.get_ref().len())));
    }
    if v.get_ref().iter().any(|x| !x.is_finite()) {
        return Err(cx.at(v, field, "entries must be finite"));
    }
    Ok(v.get_ref().clone())
}

fn read_terms(cx: &Ctx, f: &Spanned<String>, field: &str, digest: &mut Vec<u8>) -> Result<Vec<Vec<f64>>, SpecError> {
    let base = cx.file.parent().unwrap_or(Path::new("."));
    let path = base.join(f.get_ref());
    let bytes = std::fs::read(&path).map_err(|e| cx.at(f, field, format!("{}: {e}", path.display())))?;
    digest.extend_from_slice(&bytes);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(bytes.as_slice());
    let mut terms = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| cx.at(f, field, format!("{}: {e}", path.display())))?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| cx.at(f, field, format!("{} row {}: {e}", path.display(), i + 1)))?;
        terms.push(row);
    }
    Ok(terms)
}

fn sequence(
    cx: &Ctx,
    id: &str,
    s: &Spanned<RawSequence>,
    dim: usize,
    digest: &mut Vec<u8>,
) -> Result<VectorSequence, SpecError> {
    let raw = s.get_ref();
    let field = |name: &str| format!("sequences.{id}.{name}");
    let limit = raw
        .limit
        .as_ref()
        .map(|l| vector(cx, l, &field("limit"), dim))
        .transpose()?;
    let forbid = |name: &str, present: Option<Range<usize>>| -> Result<(), SpecError> {
        match present {
            Some(span) => Err(cx.err(
                Some(span),
                field(name),
                format!("not allowed for kind `{}`", raw.kind.get_ref()),
            )),
            None => Ok(()),
        }
    };
    match raw.kind.get_ref().as_str() {
        "generator" => {
            forbid("terms", raw.terms.as_ref().map(|v| v.span()))?;
            forbid("terms_file", raw.terms_file.as_ref().map(|v| v.span()))?;
            let need = |v: &Option<Spanned<Vec<f64>>>, name: &str| {
                v.as_ref()
                    .ok_or_else(|| cx.at(s, field(name), "required for a generator"))
                    .and_then(|v| vector(cx, v, &field(name), dim))
            };
            let base = need(&raw.base, "base")?;
            let direction = need(&raw.direction, "direction")?;
            let rate_name = raw
                .rate
                .as_ref()
                .ok_or_else(|| cx.at(s, field("rate"), "required for a generator"))?;
            let rate = match (rate_name.get_ref().as_str(), &raw.q) {
                ("harmonic", None) => Rate::Harmonic,
                ("inverse-square", None) => Rate::InverseSquare,
                ("constant", None) => Rate::Constant,
                ("geometric", Some(q)) => {
                    let r = Rate::Geometric { q: *q.get_ref() };
                    r.validate().map_err(|e| cx.at(q, field("q"), e.to_string()))?;
                    r
                }
                ("geometric", None) => return Err(cx.at(rate_name, field("q"), "required for a geometric rate")),
                ("harmonic" | "inverse-square" | "constant", Some(q)) => {
                    return Err(cx.at(q, field("q"), "only allowed for a geometric rate"))
                }
                (other, _) => {
                    return Err(cx.at(
                        rate_name,
                        field("rate"),
                        format!("unknown rate `{other}` (expected harmonic, inverse-square, geometric or constant)"),
                    ))
                }
            };
            VectorSequence::generator(base, direction, rate, limit).map_err(|e| cx.at(s, field("kind"), e.to_string()))
        }
        "explicit" => {
            forbid("base", raw.base.as_ref().map(|v| v.span()))?;
            forbid("direction", raw.direction.as_ref().map(|v| v.span()))?;
            forbid("rate", raw.rate.as_ref().map(|v| v.span()))?;
            forbid("q", raw.q.as_ref().map(|v| v.span()))?;
            let (terms, span, name) = match (&raw.terms, &raw.terms_file) {
                (Some(t), None) => (t.get_ref().clone(), t.span(), field("terms")),
                (None, Some(f)) => (
                    read_terms(cx, f, &field("terms_file"), digest)?,
                    f.span(),
                    field("terms_file"),
                ),
                (Some(t), Some(_)) => {
                    return Err(cx.at(t, field("terms"), "give either terms or terms_file, not both"))
                }
                (None, None) => return Err(cx.at(s, field("terms"), "required for an explicit sequence")),
            };
            if let Some((i, t)) = terms.iter().enumerate().find(|(_, t)| t.len() != dim) {
                return Err(cx.err(
                    Some(span),
                    name,
                    format!("term {} has {} entries, expected {dim}", i + 1, t.len()),
                ));
            }
            VectorSequence::explicit(terms, limit).map_err(|e| cx.err(Some(span), name, e.to_string()))
        }
        other => Err(cx.at(
            &raw.kind,
            field("kind"),
            format!("unknown sequence kind `{other}` (expected generator or explicit)"),
        )),
    }
}
