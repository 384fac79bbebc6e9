//! Qualitative explainable graphs: one node per scene object, one edge per
//! object pair that co-appears in at least one frame, each edge labeled with
//! a per-frame chain of qualitative relations.
//!
//! Also holds the star-graph view around an acting object and the fixed
//! ordinal featurization of a single (actor, other) pair.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::calculi::{
    AllenRelation, CalculiConfig, QdcRelation, QtcApproach, QtcRelation, QtcSide, QualRelation,
};
use crate::error::{Error, Result};
use crate::scene::{ObjectType, Scene};

/// Relation chain along one edge: `(frame_index, relation)` with strictly
/// increasing frame indices, one entry per co-appearing frame.
pub type RelationChain = Vec<(usize, QualRelation)>;

/// Graph over scene objects. Edge keys are unordered pairs stored once with
/// the lexicographically smaller id first; chains are oriented accordingly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Qxg {
    pub scene_id: String,
    pub num_frames: usize,
    pub nodes: Vec<(String, ObjectType)>,
    pub edges: BTreeMap<(String, String), RelationChain>,
}

impl Qxg {
    pub fn node_type(&self, id: &str) -> Option<ObjectType> {
        self.nodes.iter().find(|(n, _)| n == id).map(|(_, t)| *t)
    }

    pub fn has_node(&self, id: &str) -> bool {
        self.nodes.iter().any(|(n, _)| n == id)
    }
}

/// Star subgraph: the edges incident to `center`, with each chain expressed
/// from the center's perspective (center as first role).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarGraph {
    pub center: String,
    pub center_type: ObjectType,
    pub spokes: Vec<Spoke>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spoke {
    pub other: String,
    pub other_type: ObjectType,
    pub chain: RelationChain,
}

/// Builds the QXG for a scene: every object becomes a node; every unordered
/// pair co-appearing in some frame gets an edge whose chain holds one
/// relation per co-appearing frame. The trajectory component at a frame uses
/// the previous frame when both objects are present there, and is neutral
/// otherwise.
pub fn build_qxg(scene: &Scene, cfg: &CalculiConfig) -> Result<Qxg> {
    scene.validate()?;
    cfg.validate()?;

    let mut nodes: Vec<(String, ObjectType)> = scene
        .objects
        .iter()
        .map(|o| (o.object_id.clone(), o.object_type))
        .collect();
    nodes.sort();

    let mut edges = BTreeMap::new();
    for i in 0..scene.objects.len() {
        for j in (i + 1)..scene.objects.len() {
            let (a, b) = if scene.objects[i].object_id <= scene.objects[j].object_id {
                (&scene.objects[i], &scene.objects[j])
            } else {
                (&scene.objects[j], &scene.objects[i])
            };
            let mut chain = RelationChain::new();
            for frame in 0..scene.num_frames {
                let (Some(ba), Some(bb)) = (a.boxes.get(&frame), b.boxes.get(&frame)) else {
                    continue;
                };
                let prev = if frame > 0 {
                    match (a.boxes.get(&(frame - 1)), b.boxes.get(&(frame - 1))) {
                        (Some(pa), Some(pb)) => Some((pa, pb)),
                        _ => None,
                    }
                } else {
                    None
                };
                chain.push((frame, QualRelation::compute(ba, bb, prev, cfg)?));
            }
            if !chain.is_empty() {
                edges.insert((a.object_id.clone(), b.object_id.clone()), chain);
            }
        }
    }

    Ok(Qxg {
        scene_id: scene.scene_id.clone(),
        num_frames: scene.num_frames,
        nodes,
        edges,
    })
}

/// Extracts the star graph around `center`: exactly the incident edges, each
/// chain re-expressed with the center as the first role.
pub fn extract_star_graph(qxg: &Qxg, center: &str) -> Result<StarGraph> {
    let center_type = qxg
        .node_type(center)
        .ok_or_else(|| Error::InvalidInput(format!("unknown center object '{center}'")))?;
    let mut spokes = Vec::new();
    for ((a, b), chain) in &qxg.edges {
        let (other, needs_swap) = if a == center {
            (b, false)
        } else if b == center {
            (a, true)
        } else {
            continue;
        };
        let chain = if needs_swap {
            chain.iter().map(|&(f, r)| (f, r.swap_roles())).collect()
        } else {
            chain.clone()
        };
        spokes.push(Spoke {
            other: other.clone(),
            other_type: qxg.node_type(other).unwrap(),
            chain,
        });
    }
    spokes.sort_by(|x, y| x.other.cmp(&y.other));
    Ok(StarGraph {
        center: center.to_string(),
        center_type,
        spokes,
    })
}

// ---------------------------------------------------------------------------
// Pair featurization
// ---------------------------------------------------------------------------

/// Fixed ordinal feature vector for one (actor, other) pair.
pub type FeatureVector = Vec<f64>;

/// Kinds of per-frame slots, in their fixed within-frame order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotKind {
    Qdc,
    QtcApproach1,
    QtcApproach2,
    QtcSide1,
    QtcSide2,
    RaX,
    RaY,
}

impl SlotKind {
    pub const PER_FRAME: [SlotKind; 7] = [
        SlotKind::Qdc,
        SlotKind::QtcApproach1,
        SlotKind::QtcApproach2,
        SlotKind::QtcSide1,
        SlotKind::QtcSide2,
        SlotKind::RaX,
        SlotKind::RaY,
    ];

    /// Number of valid relation values for this slot; the "absent" code is
    /// this value itself.
    pub fn cardinality(self) -> usize {
        match self {
            SlotKind::Qdc => QdcRelation::CARDINALITY,
            SlotKind::QtcApproach1 | SlotKind::QtcApproach2 => QtcApproach::CARDINALITY,
            SlotKind::QtcSide1 | SlotKind::QtcSide2 => QtcSide::CARDINALITY,
            SlotKind::RaX | SlotKind::RaY => AllenRelation::CARDINALITY,
        }
    }

    pub fn absent_code(self) -> usize {
        self.cardinality()
    }

    fn short_name(self) -> &'static str {
        match self {
            SlotKind::Qdc => "qdc",
            SlotKind::QtcApproach1 => "qtc1",
            SlotKind::QtcApproach2 => "qtc2",
            SlotKind::QtcSide1 => "qtc3",
            SlotKind::QtcSide2 => "qtc4",
            SlotKind::RaX => "ra_x",
            SlotKind::RaY => "ra_y",
        }
    }
}

/// Describes the flat feature layout: 7 relation slots per frame, then the
/// two object-type slots. Total length `7 * num_frames + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureLayout {
    pub num_frames: usize,
}

impl FeatureLayout {
    pub const SLOTS_PER_FRAME: usize = 7;

    pub fn new(num_frames: usize) -> Self {
        FeatureLayout { num_frames }
    }

    pub fn len(&self) -> usize {
        Self::SLOTS_PER_FRAME * self.num_frames + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn actor_type_index(&self) -> usize {
        Self::SLOTS_PER_FRAME * self.num_frames
    }

    pub fn other_type_index(&self) -> usize {
        self.actor_type_index() + 1
    }

    pub fn slot_index(&self, frame: usize, kind: SlotKind) -> usize {
        let within = SlotKind::PER_FRAME.iter().position(|&k| k == kind).unwrap();
        frame * Self::SLOTS_PER_FRAME + within
    }

    /// Human-readable name per feature index, used in CSV headers.
    pub fn feature_name(&self, index: usize) -> String {
        if index == self.actor_type_index() {
            return "actor_type".to_string();
        }
        if index == self.other_type_index() {
            return "other_type".to_string();
        }
        let frame = index / Self::SLOTS_PER_FRAME;
        let kind = SlotKind::PER_FRAME[index % Self::SLOTS_PER_FRAME];
        format!("f{frame}_{}", kind.short_name())
    }

    /// Number of distinct codes per feature index, counting the absent code.
    pub fn code_cardinality(&self, index: usize) -> usize {
        if index >= self.actor_type_index() {
            ObjectType::COUNT
        } else {
            SlotKind::PER_FRAME[index % Self::SLOTS_PER_FRAME].cardinality() + 1
        }
    }
}

/// Encodes one spoke into the fixed ordinal layout. Frames where the pair
/// does not co-appear carry the distinguished absent code in every slot.
pub fn featurize_pair(
    chain: &RelationChain,
    actor_type: ObjectType,
    other_type: ObjectType,
    num_frames: usize,
) -> Result<FeatureVector> {
    let layout = FeatureLayout::new(num_frames);
    if chain.len() > num_frames {
        return Err(Error::InvalidInput(format!(
            "relation chain length {} exceeds num_frames {}",
            chain.len(),
            num_frames
        )));
    }
    let mut v: Vec<f64> = (0..layout.len()).map(|i| {
        if i >= layout.actor_type_index() {
            0.0
        } else {
            SlotKind::PER_FRAME[i % FeatureLayout::SLOTS_PER_FRAME].absent_code() as f64
        }
    }).collect();
    let mut last_frame: Option<usize> = None;
    for &(frame, rel) in chain {
        if frame >= num_frames {
            return Err(Error::InvalidInput(format!(
                "chain frame {frame} outside scene range [0, {num_frames})"
            )));
        }
        if let Some(prev) = last_frame {
            if frame <= prev {
                return Err(Error::InvalidInput(
                    "chain frame indices must be strictly increasing".into(),
                ));
            }
        }
        last_frame = Some(frame);
        v[layout.slot_index(frame, SlotKind::Qdc)] = rel.qdc.code() as f64;
        v[layout.slot_index(frame, SlotKind::QtcApproach1)] = rel.qtc.approach1.code() as f64;
        v[layout.slot_index(frame, SlotKind::QtcApproach2)] = rel.qtc.approach2.code() as f64;
        v[layout.slot_index(frame, SlotKind::QtcSide1)] = rel.qtc.side1.code() as f64;
        v[layout.slot_index(frame, SlotKind::QtcSide2)] = rel.qtc.side2.code() as f64;
        v[layout.slot_index(frame, SlotKind::RaX)] = rel.ra_x.code() as f64;
        v[layout.slot_index(frame, SlotKind::RaY)] = rel.ra_y.code() as f64;
    }
    v[layout.actor_type_index()] = actor_type.code() as f64;
    v[layout.other_type_index()] = other_type.code() as f64;
    Ok(v)
}

/// Inverse of [`featurize_pair`]; used to verify the encoding is lossless.
pub fn decode_pair_features(
    v: &[f64],
    num_frames: usize,
) -> Result<(RelationChain, ObjectType, ObjectType)> {
    let layout = FeatureLayout::new(num_frames);
    if v.len() != layout.len() {
        return Err(Error::InvalidInput(format!(
            "feature vector length {} != layout length {}",
            v.len(),
            layout.len()
        )));
    }
    let code = |i: usize| -> Result<usize> {
        let raw = v[i];
        if !raw.is_finite() || raw.fract() != 0.0 || raw < 0.0 {
            return Err(Error::InvalidInput(format!("slot {i} holds non-ordinal value {raw}")));
        }
        Ok(raw as usize)
    };
    let mut chain = RelationChain::new();
    for frame in 0..num_frames {
        let qdc_code = code(layout.slot_index(frame, SlotKind::Qdc))?;
        let absent = qdc_code == SlotKind::Qdc.absent_code();
        if absent {
            for kind in SlotKind::PER_FRAME {
                if code(layout.slot_index(frame, kind))? != kind.absent_code() {
                    return Err(Error::InvalidInput(format!(
                        "frame {frame}: mixed absent and present slots"
                    )));
                }
            }
            continue;
        }
        let take = |kind: SlotKind| code(layout.slot_index(frame, kind));
        let rel = QualRelation {
            qdc: QdcRelation::from_code(qdc_code)
                .ok_or_else(|| Error::InvalidInput(format!("frame {frame}: bad qdc code")))?,
            qtc: QtcRelation {
                approach1: QtcApproach::from_code(take(SlotKind::QtcApproach1)?)
                    .ok_or_else(|| Error::InvalidInput(format!("frame {frame}: bad qtc code")))?,
                approach2: QtcApproach::from_code(take(SlotKind::QtcApproach2)?)
                    .ok_or_else(|| Error::InvalidInput(format!("frame {frame}: bad qtc code")))?,
                side1: QtcSide::from_code(take(SlotKind::QtcSide1)?)
                    .ok_or_else(|| Error::InvalidInput(format!("frame {frame}: bad qtc code")))?,
                side2: QtcSide::from_code(take(SlotKind::QtcSide2)?)
                    .ok_or_else(|| Error::InvalidInput(format!("frame {frame}: bad qtc code")))?,
            },
            ra_x: AllenRelation::from_code(take(SlotKind::RaX)?)
                .ok_or_else(|| Error::InvalidInput(format!("frame {frame}: bad allen code")))?,
            ra_y: AllenRelation::from_code(take(SlotKind::RaY)?)
                .ok_or_else(|| Error::InvalidInput(format!("frame {frame}: bad allen code")))?,
        };
        chain.push((frame, rel));
    }
    let actor = ObjectType::from_code(code(layout.actor_type_index())?)
        .ok_or_else(|| Error::InvalidInput("bad actor type code".into()))?;
    let other = ObjectType::from_code(code(layout.other_type_index())?)
        .ok_or_else(|| Error::InvalidInput("bad other type code".into()))?;
    Ok((chain, actor, other))
}
