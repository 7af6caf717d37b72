use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{AbelianGroup, IntMatrix, Result, Slope, SurgeryError};
use crate::diagram::{LinkDiagram, TwistRegion};

pub const PRESENTATION_SCHEMA: &str = "surgeon.presentation/1";

/// Component names plus a symmetric linking-number table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractLinkData {
    pub names: Vec<String>,
    /// Symmetric; diagonal entries are ignored and stored as zero.
    pub linking: IntMatrix,
}

impl AbstractLinkData {
    pub fn new<T: Into<BigInt> + Clone>(names: &[&str], linking: &[Vec<T>]) -> Result<Self> {
        let linking = IntMatrix::from_rows(linking);
        let data = AbstractLinkData { names: names.iter().map(|s| s.to_string()).collect(), linking };
        data.validate()?;
        Ok(data.with_zero_diagonal())
    }

    pub fn from_diagram(d: &LinkDiagram) -> Self {
        let n = d.num_components();
        let mut linking = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    linking.set(i, j, d.linking_number(i, j).expect("planar diagram"));
                }
            }
        }
        let names =
            d.components().iter().enumerate().map(|(i, c)| c.name.clone().unwrap_or_else(|| format!("c{i}"))).collect();
        AbstractLinkData { names, linking }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn lk(&self, i: usize, j: usize) -> &BigInt {
        self.linking.get(i, j)
    }

    fn with_zero_diagonal(mut self) -> Self {
        for i in 0..self.len() {
            self.linking.set(i, i, 0);
        }
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.names.len();
        if self.linking.rows() != n || self.linking.cols() != n {
            return Err(SurgeryError::Shape(format!(
                "{n} names but a {}x{} linking table",
                self.linking.rows(),
                self.linking.cols()
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if self.linking.get(i, j) != self.linking.get(j, i) {
                    return Err(SurgeryError::Shape(format!("linking table not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(())
    }

    /// Drops component `c`.
    pub fn without(&self, c: usize) -> Self {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != c).collect();
        let mut linking = IntMatrix::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                linking.set(a, b, self.linking.get(i, j).clone());
            }
        }
        AbstractLinkData { names: keep.iter().map(|&i| self.names[i].clone()).collect(), linking }
    }
}

/// A surgery description: linking data, one slope per component, and the
/// optional diagram with its twist regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryPresentation {
    pub label: String,
    pub link: AbstractLinkData,
    pub slopes: Vec<Slope>,
    /// Author-supplied unknottedness certificates, one per component.
    pub unknotted: Vec<bool>,
    pub diagram: Option<LinkDiagram>,
    pub twist_regions: Vec<TwistRegion>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    schema: String,
    label: String,
    names: Vec<String>,
    slopes: Vec<Slope>,
    linking: IntMatrix,
    unknotted: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diagram: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    twist_regions: Vec<TwistRegion>,
}

impl SurgeryPresentation {
    pub fn from_link_data(label: impl Into<String>, link: AbstractLinkData, slopes: Vec<Slope>) -> Result<Self> {
        let n = link.len();
        let p = SurgeryPresentation {
            label: label.into(),
            link,
            slopes,
            unknotted: vec![false; n],
            diagram: None,
            twist_regions: Vec::new(),
        };
        p.validate()?;
        Ok(p)
    }

    /// Presentation whose linking table is read off `diagram`.
    pub fn from_diagram(label: impl Into<String>, diagram: LinkDiagram, slopes: Vec<Slope>) -> Result<Self> {
        let link = AbstractLinkData::from_diagram(&diagram);
        let mut p = Self::from_link_data(label, link, slopes)?;
        p.diagram = Some(diagram);
        Ok(p)
    }

    /// Marks component `c` as an unknot (trusted annotation).
    pub fn with_unknotted(mut self, c: usize) -> Self {
        self.unknotted[c] = true;
        self
    }

    pub fn with_region(mut self, region: TwistRegion) -> Self {
        self.twist_regions.push(region);
        self
    }

    pub fn with_slopes(mut self, slopes: Vec<Slope>) -> Result<Self> {
        self.slopes = slopes;
        self.validate()?;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.link.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.link.names.iter().position(|n| n == name)
    }

    pub fn lk(&self, i: usize, j: usize) -> &BigInt {
        self.link.lk(i, j)
    }

    pub fn region_for(&self, anchor: usize) -> Option<&TwistRegion> {
        self.twist_regions.iter().find(|r| r.anchor == Some(anchor))
    }

    pub fn validate(&self) -> Result<()> {
        self.link.validate()?;
        let n = self.link.len();
        if self.slopes.len() != n || self.unknotted.len() != n {
            return Err(SurgeryError::Shape(format!("{n} components but {} slopes", self.slopes.len())));
        }
        if let Some(d) = &self.diagram {
            if d.num_components() != n {
                return Err(SurgeryError::Shape(format!(
                    "diagram has {} components, table has {n}",
                    d.num_components()
                )));
            }
            let from_diagram = AbstractLinkData::from_diagram(d);
            if from_diagram.linking != self.link.linking {
                return Err(SurgeryError::DiagramMismatch);
            }
        }
        Ok(())
    }

    pub fn check_component(&self, c: usize) -> Result<()> {
        if c >= self.len() {
            return Err(SurgeryError::NoSuchComponent { index: c, count: self.len() });
        }
        Ok(())
    }

    /// Relation matrix for H1: one column per component, one row per filled
    /// component `i`: `p_i·μ_i + q_i·Σ_{j≠i} lk(i,j)·μ_j`.
    pub fn h1_relation_matrix(&self) -> IntMatrix {
        let n = self.len();
        let filled: Vec<usize> = (0..n).filter(|&i| !self.slopes[i].is_unfilled()).collect();
        let mut m = IntMatrix::zeros(filled.len(), n);
        for (r, &i) in filled.iter().enumerate() {
            let (p, q) = self.slopes[i].as_pq().expect("filled");
            for j in 0..n {
                let v = if i == j { p.clone() } else { q * self.lk(i, j) };
                m.set(r, j, v);
            }
        }
        m
    }

    /// First homology of the surgered manifold; unfilled components contribute
    /// meridian generators without relations (homology of the link exterior).
    pub fn first_homology(&self) -> AbelianGroup {
        AbelianGroup::cokernel(&self.h1_relation_matrix())
    }

    /// First homology of the closed manifold obtained by filling only the
    /// components with rational slopes and ignoring the unfilled ones.
    pub fn ambient_homology(&self) -> AbelianGroup {
        let filled: Vec<usize> = (0..self.len()).filter(|&i| !self.slopes[i].is_unfilled()).collect();
        let mut m = IntMatrix::zeros(filled.len(), filled.len());
        for (r, &i) in filled.iter().enumerate() {
            let (p, q) = self.slopes[i].as_pq().expect("filled");
            for (c, &j) in filled.iter().enumerate() {
                m.set(r, c, if i == j { p.clone() } else { q * self.lk(i, j) });
            }
        }
        AbelianGroup::cokernel(&m)
    }

    /// True iff every component is filled and H1 is trivial.
    pub fn is_homology_sphere(&self) -> bool {
        self.first_homology().is_trivial()
    }

    pub fn filled_count(&self) -> usize {
        self.slopes.iter().filter(|s| !s.is_unfilled()).count()
    }

    /// JSON snapshot; the diagram is included when `with_diagram` is set.
    pub fn to_json(&self, with_diagram: bool) -> serde_json::Value {
        serde_json::to_value(PresentationJson {
            schema: PRESENTATION_SCHEMA.to_string(),
            label: self.label.clone(),
            names: self.link.names.clone(),
            slopes: self.slopes.clone(),
            linking: self.link.linking.clone(),
            unknotted: self.unknotted.clone(),
            diagram: if with_diagram { self.diagram.as_ref().map(|d| d.to_json()) } else { None },
            twist_regions: if with_diagram { self.twist_regions.clone() } else { Vec::new() },
        })
        .expect("presentation serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: PresentationJson =
            serde_json::from_value(value.clone()).map_err(|e| SurgeryError::Json(e.to_string()))?;
        if j.schema != PRESENTATION_SCHEMA {
            return Err(SurgeryError::Json(format!("unsupported schema {:?}", j.schema)));
        }
        let diagram = match j.diagram {
            Some(v) => Some(LinkDiagram::from_json(&v)?),
            None => None,
        };
        let p = SurgeryPresentation {
            label: j.label,
            link: AbstractLinkData { names: j.names, linking: j.linking },
            slopes: j.slopes,
            unknotted: j.unknotted,
            diagram,
            twist_regions: j.twist_regions,
        };
        p.validate()?;
        Ok(p.normalized())
    }

    fn normalized(mut self) -> Self {
        self.link = self.link.with_zero_diagonal();
        self
    }

    /// Same slopes and linking table (labels, diagrams and annotations ignored).
    pub fn same_surgery_data(&self, other: &SurgeryPresentation) -> bool {
        self.slopes == other.slopes && self.link == other.link
    }
}

/// Unknot with one slope.
pub fn unknot(slope: Slope) -> SurgeryPresentation {
    let link = AbstractLinkData { names: vec!["u".into()], linking: IntMatrix::zeros(1, 1) };
    SurgeryPresentation::from_link_data("unknot", link, vec![slope]).expect("valid shape").with_unknotted(0)
}

/// Positive Hopf link with two slopes.
pub fn hopf_link(a: Slope, b: Slope) -> SurgeryPresentation {
    let link = AbstractLinkData {
        names: vec!["a".into(), "b".into()],
        linking: IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
    };
    SurgeryPresentation::from_link_data("hopf", link, vec![a, b])
        .expect("valid shape")
        .with_unknotted(0)
        .with_unknotted(1)
}
