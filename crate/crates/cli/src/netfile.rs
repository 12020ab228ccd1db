//! Versioned JSON network files.
//!
//! ```json
//! {"format": "invertcert-net/1", "residual": false,
//!  "layers": [{"rows": 2, "cols": 1, "weight": ["1", "-1"], "bias": ["0", "0"]}]}
//! ```
//!
//! Residual files carry `"blocks": [{"layers": [...]}, ...]` instead. Floats
//! are written as shortest round-trip decimal strings; plain JSON numbers
//! are accepted on input.

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use invertcert_core::network::flatten_residual;
use invertcert_core::{Affine, ReluMlp, ResidualNet};

pub const FORMAT: &str = "invertcert-net/1";

#[derive(Debug, Clone, PartialEq)]
pub enum NetFile {
    Mlp(ReluMlp),
    Residual(ResidualNet),
}

impl NetFile {
    /// The network as a plain MLP, flattening residual blocks.
    pub fn into_mlp(self) -> ReluMlp {
        match self {
            NetFile::Mlp(n) => n,
            NetFile::Residual(r) => flatten_residual(&r),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Text(String),
    Number(f64),
}

impl Num {
    fn value(&self) -> Result<f64> {
        let v = match self {
            Num::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::Format(format!("not a number: {s:?}")))?,
            Num::Number(v) => *v,
        };
        if !v.is_finite() {
            return Err(CliError::Format(format!("non-finite entry {v}")));
        }
        Ok(v)
    }
}

fn text(v: f64) -> Num {
    // Debug formatting is the shortest string that parses back to `v`
    Num::Text(format!("{v:?}"))
}

#[derive(Serialize, Deserialize)]
struct LayerDoc {
    rows: usize,
    cols: usize,
    weight: Vec<Num>,
    bias: Vec<Num>,
}

#[derive(Serialize, Deserialize)]
struct BlockDoc {
    layers: Vec<LayerDoc>,
}

#[derive(Serialize, Deserialize)]
struct NetDoc {
    format: String,
    #[serde(default)]
    residual: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    layers: Option<Vec<LayerDoc>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    blocks: Option<Vec<BlockDoc>>,
}

fn layer_doc(a: &Affine) -> LayerDoc {
    LayerDoc {
        rows: a.rows(),
        cols: a.cols(),
        weight: a.weight().iter().map(|&v| text(v)).collect(),
        bias: a.bias().iter().map(|&v| text(v)).collect(),
    }
}

fn mlp_from(docs: &[LayerDoc]) -> Result<ReluMlp> {
    let mut layers = Vec::with_capacity(docs.len());
    for (k, d) in docs.iter().enumerate() {
        let weight = d.weight.iter().map(Num::value).collect::<Result<Vec<_>>>()?;
        let bias = d.bias.iter().map(Num::value).collect::<Result<Vec<_>>>()?;
        if weight.len() != d.rows * d.cols || bias.len() != d.rows {
            return Err(CliError::Format(format!(
                "layer {k}: {}x{} needs {} weights and {} biases, got {} and {}",
                d.rows,
                d.cols,
                d.rows * d.cols,
                d.rows,
                weight.len(),
                bias.len()
            )));
        }
        layers.push(Affine::new(d.rows, d.cols, weight, bias)?);
    }
    Ok(ReluMlp::new(layers)?)
}

pub fn save(net: &NetFile) -> String {
    let doc = match net {
        NetFile::Mlp(n) => NetDoc {
            format: FORMAT.into(),
            residual: false,
            layers: Some(n.layers().iter().map(layer_doc).collect()),
            blocks: None,
        },
        NetFile::Residual(r) => NetDoc {
            format: FORMAT.into(),
            residual: true,
            layers: None,
            blocks: Some(
                r.blocks()
                    .iter()
                    .map(|b| BlockDoc { layers: b.layers().iter().map(layer_doc).collect() })
                    .collect(),
            ),
        },
    };
    serde_json::to_string_pretty(&doc).expect("network documents always serialize")
}

pub fn load(bytes: &[u8]) -> Result<NetFile> {
    let doc: NetDoc = serde_json::from_slice(bytes).map_err(|e| CliError::Format(e.to_string()))?;
    if doc.format != FORMAT {
        return Err(CliError::Format(format!("unsupported format {:?}, expected {FORMAT:?}", doc.format)));
    }
    match (doc.residual, doc.layers, doc.blocks) {
        (false, Some(layers), None) => Ok(NetFile::Mlp(mlp_from(&layers)?)),
        (true, None, Some(blocks)) => {
            let nets = blocks.iter().map(|b| mlp_from(&b.layers)).collect::<Result<Vec<_>>>()?;
            Ok(NetFile::Residual(ResidualNet::new(nets)?))
        }
        (false, _, _) => Err(CliError::Format("plain networks need \"layers\" and no \"blocks\"".into())),
        (true, _, _) => Err(CliError::Format("residual networks need \"blocks\" and no \"layers\"".into())),
    }
}

pub fn read(path: &std::path::Path) -> Result<NetFile> {
    load(&std::fs::read(path)?)
}
