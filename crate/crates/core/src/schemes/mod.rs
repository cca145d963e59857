//! Semi-discrete residual operators on lines of cells: CPR with Radau
//! correction, the compact CNNW schemes on LGL flux points and the
//! second-order subcell schemes on Gauss-weight flux points.

mod line;
mod linear;

use serde::{Deserialize, Serialize};

use crate::basis::{DiffOperators, NodeSet};
use crate::error::{Error, Result};
use crate::nnw::{nnw2_geometry, FluxLayout, Nnw2Geometry, NnwTables, WeightMode, WeightScheme};

pub use line::{LineOperator, LineScratch};
pub use linear::{assemble_linear_operator, dense_operator, BlockTriple, CellScheme, LinearOperator};

/// Spatial scheme of one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeKind {
    #[serde(alias = "CPR5", alias = "cpr5", alias = "CPR3", alias = "cpr")]
    Cpr,
    #[serde(alias = "C5NNW5", alias = "c5nnw5", alias = "C3NNW3", alias = "c3nnw3")]
    C5Nnw5,
    #[serde(alias = "C2NNW5", alias = "c2nnw5")]
    C2Nnw5,
    #[serde(alias = "C2NNW2", alias = "c2nnw2")]
    C2Nnw2,
    #[serde(alias = "C5NNW1", alias = "c5nnw1")]
    C5Nnw1,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 5] = [
        SchemeKind::Cpr,
        SchemeKind::C5Nnw5,
        SchemeKind::C2Nnw5,
        SchemeKind::C2Nnw2,
        SchemeKind::C5Nnw1,
    ];

    /// Integer tag used in exported scheme maps.
    pub fn tag(self) -> u8 {
        match self {
            SchemeKind::Cpr => 0,
            SchemeKind::C5Nnw5 => 1,
            SchemeKind::C2Nnw5 => 2,
            SchemeKind::C2Nnw2 => 3,
            SchemeKind::C5Nnw1 => 4,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        Self::ALL.iter().copied().find(|s| s.tag() == tag)
    }

    /// Conventional name for degree `k` (K = 2 renames the high-order pair).
    pub fn label(self, k: usize) -> &'static str {
        match (self, k) {
            (SchemeKind::Cpr, 2) => "CPR3",
            (SchemeKind::Cpr, _) => "CPR5",
            (SchemeKind::C5Nnw5, 2) => "C3NNW3",
            (SchemeKind::C5Nnw5, _) => "C5NNW5",
            (SchemeKind::C2Nnw5, _) => "C2NNW5",
            (SchemeKind::C2Nnw2, _) => "C2NNW2",
            (SchemeKind::C5Nnw1, _) => "C5NNW1",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_uppercase().as_str() {
            "CPR" | "CPR5" | "CPR3" => Ok(SchemeKind::Cpr),
            "C5NNW5" | "C3NNW3" => Ok(SchemeKind::C5Nnw5),
            "C2NNW5" => Ok(SchemeKind::C2Nnw5),
            "C2NNW2" => Ok(SchemeKind::C2Nnw2),
            "C5NNW1" => Ok(SchemeKind::C5Nnw1),
            other => Err(Error::config(format!("unknown scheme '{other}'"))),
        }
    }

    /// Flux points on which the cell's fluxes live.
    pub fn layout(self) -> FluxLayout {
        match self {
            SchemeKind::C2Nnw5 | SchemeKind::C2Nnw2 => FluxLayout::GaussWeight,
            _ => FluxLayout::Lgl,
        }
    }
}

/// Variables in which the weighted interpolations act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariableSet {
    Conservative,
    Primitive,
    #[default]
    Characteristic,
}

/// Interpolation weights and variable set shared by every cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpConfig {
    pub weights: WeightMode,
    pub variables: VariableSet,
}

impl InterpConfig {
    pub fn linear() -> Self {
        Self {
            weights: WeightMode::Linear,
            variables: VariableSet::Conservative,
        }
    }

    pub fn nonlinear(ws: WeightScheme, variables: VariableSet) -> Self {
        Self {
            weights: WeightMode::Nonlinear(ws),
            variables,
        }
    }

    /// Variable set actually needed: linear interpolation commutes with
    /// any fixed linear change of variables, so it runs componentwise.
    pub(crate) fn effective_variables(&self) -> VariableSet {
        match (self.weights, self.variables) {
            (WeightMode::Linear, VariableSet::Characteristic) => VariableSet::Conservative,
            (_, v) => v,
        }
    }
}

impl Default for InterpConfig {
    fn default() -> Self {
        Self::nonlinear(WeightScheme::z(), VariableSet::Characteristic)
    }
}

/// Every operator table a residual evaluation needs, built once.
#[derive(Debug, Clone)]
pub struct OperatorTables {
    pub nodes: NodeSet,
    pub ops: DiffOperators,
    pub nnw_lgl: NnwTables,
    pub nnw_gauss: NnwTables,
    pub nnw2_gauss: Vec<Nnw2Geometry>,
}

impl OperatorTables {
    pub fn new(k: usize) -> Result<Self> {
        let nodes = NodeSet::new(k)?;
        let ops = DiffOperators::new(&nodes)?;
        let nnw_lgl = NnwTables::new(&nodes, FluxLayout::Lgl)?;
        let nnw_gauss = NnwTables::new(&nodes, FluxLayout::GaussWeight)?;
        let nnw2_gauss = nnw2_geometry(&nodes, FluxLayout::GaussWeight);
        Ok(Self {
            nodes,
            ops,
            nnw_lgl,
            nnw_gauss,
            nnw2_gauss,
        })
    }

    pub fn degree(&self) -> usize {
        self.nodes.degree
    }

    pub fn np(&self) -> usize {
        self.nodes.degree + 1
    }
}
