//! The quantization artifact: solved tables plus enough context to rebuild
//! and re-verify them.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::envelope::{Envelope, Smash};
use crate::hquant::{GaugeEvent, GenMap, Pipeline, Ser, TruncatedGammaBialgebra};

use super::input::{InputDocument, Model, SchemaError};
use super::tables::{genmap_doc, genmap_from_doc, series_doc, series_from_doc, SeriesDoc};

pub const FORMAT: &str = "gammaq-artifact/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtifactSettings {
    pub order: usize,
    pub degree_cap: usize,
    pub seed_order: Vec<String>,
    pub axiom_degree: usize,
    pub window: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSeries {
    pub element: String,
    pub series: SeriesDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementMap {
    pub element: String,
    pub images: Vec<SeriesDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSeries {
    pub left: String,
    pub right: String,
    pub series: SeriesDoc,
}

/// `Δ` on generators, `F_γ`, `φ_γ`, `i_γ` and `v_{γ,γ′}`, in group order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tables {
    pub coproduct: Vec<SeriesDoc>,
    pub twists: Vec<ElementSeries>,
    pub phi: Vec<ElementMap>,
    pub iso: Vec<ElementMap>,
    pub v: Vec<PairSeries>,
}

/// Counts from one axiom check recorded at quantization time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectSummary {
    pub check: String,
    pub degree: usize,
    pub entries: usize,
    pub nonzero: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Artifact {
    pub format: String,
    pub tool: String,
    pub input: InputDocument,
    pub settings: ArtifactSettings,
    pub pipeline: String,
    pub tables: Tables,
    pub gauge_log: Vec<GaugeEvent>,
    pub defects: Vec<DefectSummary>,
    /// SHA-256 of the compact JSON of `input`, `settings`, `pipeline` and
    /// `tables`.
    pub digest: String,
}

#[derive(Serialize)]
struct DigestBody<'a> {
    input: &'a InputDocument,
    settings: &'a ArtifactSettings,
    pipeline: &'a str,
    tables: &'a Tables,
}

fn pipeline_name(p: Pipeline) -> &'static str {
    match p {
        Pipeline::Generic => "generic",
        Pipeline::Direct => "direct",
    }
}

impl Artifact {
    pub fn build(
        input: &InputDocument,
        settings: ArtifactSettings,
        a: &TruncatedGammaBialgebra,
        defects: Vec<DefectSummary>,
    ) -> crate::Result<Self> {
        let grp = a.group();
        let label = |g: usize| grp.label(g).to_string();
        let mut iso = Vec::new();
        for g in grp.elements() {
            iso.push(ElementMap { element: label(g), images: genmap_doc(a.iso(g)?.map()) });
        }
        let tables = Tables {
            coproduct: genmap_doc(a.delta_table()),
            twists: grp.elements().map(|g| ElementSeries { element: label(g), series: series_doc(a.twist(g).series()) }).collect(),
            phi: grp.elements().map(|g| ElementMap { element: label(g), images: genmap_doc(a.phi(g)) }).collect(),
            iso,
            v: grp
                .elements()
                .flat_map(|g| grp.elements().map(move |h| (g, h)))
                .map(|(g, h)| PairSeries { left: label(g), right: label(h), series: series_doc(a.v(g, h).series()) })
                .collect(),
        };
        let mut out = Self {
            format: FORMAT.to_string(),
            tool: format!("gammaq {}", env!("CARGO_PKG_VERSION")),
            input: input.clone(),
            settings,
            pipeline: pipeline_name(a.pipeline()).to_string(),
            tables,
            gauge_log: a.gauge_log().to_vec(),
            defects,
            digest: String::new(),
        };
        out.digest = out.compute_digest();
        Ok(out)
    }

    pub fn compute_digest(&self) -> String {
        let body = DigestBody { input: &self.input, settings: &self.settings, pipeline: &self.pipeline, tables: &self.tables };
        let bytes = serde_json::to_vec(&body).expect("serializable");
        hex::encode(Sha256::digest(bytes))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Reassembles `A` from the stored tables over the stored input.
    pub fn rebuild(&self, model: &Model) -> Result<TruncatedGammaBialgebra, SchemaError> {
        let n = model.dim();
        let grp = model.group();
        let m = grp.order();
        let order = self.settings.order;
        let pipeline = match self.pipeline.as_str() {
            "generic" => Pipeline::Generic,
            "direct" => Pipeline::Direct,
            other => return Err(SchemaError::new("/pipeline", format!("unknown pipeline {other:?}"))),
        };
        let element = |ptr: String, l: &str| {
            grp.index_of(l).ok_or_else(|| SchemaError::new(ptr, format!("unknown group element {l:?}")))
        };
        let delta = genmap_from_doc("/tables/coproduct", &self.tables.coproduct, n, 2, order)?;

        let mut twists: Vec<Option<Ser>> = vec![None; m];
        for (p, t) in self.tables.twists.iter().enumerate() {
            let ptr = format!("/tables/twists/{p}");
            let g = element(format!("{ptr}/element"), &t.element)?;
            twists[g] = Some(series_from_doc(&format!("{ptr}/series"), &t.series, 2, order)?);
        }
        let mut phis: Vec<Option<GenMap>> = vec![None; m];
        for (p, t) in self.tables.phi.iter().enumerate() {
            let ptr = format!("/tables/phi/{p}");
            let g = element(format!("{ptr}/element"), &t.element)?;
            phis[g] = Some(genmap_from_doc(&format!("{ptr}/images"), &t.images, n, 1, order)?);
        }
        let mut vs: Vec<Vec<Option<Ser>>> = vec![vec![None; m]; m];
        for (p, t) in self.tables.v.iter().enumerate() {
            let ptr = format!("/tables/v/{p}");
            let g = element(format!("{ptr}/left"), &t.left)?;
            let h = element(format!("{ptr}/right"), &t.right)?;
            vs[g][h] = Some(series_from_doc(&format!("{ptr}/series"), &t.series, 1, order)?);
        }
        let missing = |what: &str| SchemaError::new(format!("/tables/{what}"), "an entry is missing for some group element");
        let twists = twists.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| missing("twists"))?;
        let phis = phis.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| missing("phi"))?;
        let vs = vs
            .into_iter()
            .map(|r| r.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| missing("v"))?;

        let env = Envelope::new(model.bialg.alg().clone(), self.settings.window);
        let smash = Smash::new(env, model.action.clone()).map_err(|e| SchemaError::new("/input", e.to_string()))?;
        TruncatedGammaBialgebra::from_tables(smash, order, pipeline, delta, twists, phis, vs)
            .map_err(|e| SchemaError::new("/tables", e.to_string()))
    }

    /// Stored `i_γ` tables, by group index.
    pub fn stored_isos(&self, model: &Model) -> Result<Vec<GenMap>, SchemaError> {
        let grp = model.group();
        let mut out: Vec<Option<GenMap>> = vec![None; grp.order()];
        for (p, t) in self.tables.iso.iter().enumerate() {
            let ptr = format!("/tables/iso/{p}");
            let g = grp
                .index_of(&t.element)
                .ok_or_else(|| SchemaError::new(format!("{ptr}/element"), "unknown group element"))?;
            out[g] = Some(genmap_from_doc(&format!("{ptr}/images"), &t.images, model.dim(), 1, self.settings.order)?);
        }
        out.into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| SchemaError::new("/tables/iso", "an entry is missing for some group element"))
    }
}
