//! Scene-level domain types: bounding boxes, tracked objects, action labels.
//!
//! A scene is a short multi-frame record of objects tracked as 2-D
//! axis-aligned boxes in a fixed bird's-eye frame (meters). Exactly one
//! object is the ego vehicle; the scene carries the ego's action label and,
//! optionally, the id of the object annotated as having caused it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis-aligned box in the bird's-eye scene frame, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl BoundingBox {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Result<Self> {
        let b = BoundingBox {
            x_min,
            y_min,
            x_max,
            y_max,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.x_min, self.y_min, self.x_max, self.y_max];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("bounding box has non-finite coordinate".into()));
        }
        if !(self.x_min < self.x_max) || !(self.y_min < self.y_max) {
            return Err(Error::InvalidInput(format!(
                "degenerate bounding box [{}, {}, {}, {}]",
                self.x_min, self.y_min, self.x_max, self.y_max
            )));
        }
        Ok(())
    }

    pub fn centroid(&self) -> (f64, f64) {
        (
            0.5 * (self.x_min + self.x_max),
            0.5 * (self.y_min + self.y_max),
        )
    }

    /// Box centered at `(cx, cy)` with full width `w` and full height `h`.
    pub fn from_center(cx: f64, cy: f64, w: f64, h: f64) -> Result<Self> {
        BoundingBox::new(cx - w / 2.0, cy - h / 2.0, cx + w / 2.0, cy + h / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectType {
    Ego,
    Car,
    Truck,
    Pedestrian,
    Cyclist,
    StaticObstacle,
}

impl ObjectType {
    pub const COUNT: usize = 6;

    pub fn code(self) -> usize {
        match self {
            ObjectType::Ego => 0,
            ObjectType::Car => 1,
            ObjectType::Truck => 2,
            ObjectType::Pedestrian => 3,
            ObjectType::Cyclist => 4,
            ObjectType::StaticObstacle => 5,
        }
    }

    pub fn from_code(code: usize) -> Option<Self> {
        match code {
            0 => Some(ObjectType::Ego),
            1 => Some(ObjectType::Car),
            2 => Some(ObjectType::Truck),
            3 => Some(ObjectType::Pedestrian),
            4 => Some(ObjectType::Cyclist),
            5 => Some(ObjectType::StaticObstacle),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ego" => Some(ObjectType::Ego),
            "car" => Some(ObjectType::Car),
            "truck" => Some(ObjectType::Truck),
            "pedestrian" => Some(ObjectType::Pedestrian),
            "cyclist" => Some(ObjectType::Cyclist),
            "static_obstacle" => Some(ObjectType::StaticObstacle),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ObjectType::Ego => "ego",
            ObjectType::Car => "car",
            ObjectType::Truck => "truck",
            ObjectType::Pedestrian => "pedestrian",
            ObjectType::Cyclist => "cyclist",
            ObjectType::StaticObstacle => "static_obstacle",
        }
    }
}

/// One tracked object: a stable id, a type, and a partial map from frame
/// index to its box in that frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackedObject {
    pub object_id: String,
    pub object_type: ObjectType,
    pub boxes: BTreeMap<usize, BoundingBox>,
}

impl TrackedObject {
    pub fn present_at(&self, frame: usize) -> bool {
        self.boxes.contains_key(&frame)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Steering {
    Straight,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Speed {
    Fast,
    Normal,
    Slow,
    Stopped,
}

/// Joint ego action: steering x speed, 12 values total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ActionLabel {
    pub steering: Steering,
    pub speed: Speed,
}

impl ActionLabel {
    pub const COUNT: usize = 12;

    pub fn new(steering: Steering, speed: Speed) -> Self {
        ActionLabel { steering, speed }
    }

    /// Stable index into the 12-way joint action space.
    pub fn class_index(self) -> usize {
        let s = match self.steering {
            Steering::Straight => 0,
            Steering::Left => 1,
            Steering::Right => 2,
        };
        let v = match self.speed {
            Speed::Fast => 0,
            Speed::Normal => 1,
            Speed::Slow => 2,
            Speed::Stopped => 3,
        };
        s * 4 + v
    }

    pub fn from_class_index(idx: usize) -> Option<Self> {
        if idx >= Self::COUNT {
            return None;
        }
        let steering = match idx / 4 {
            0 => Steering::Straight,
            1 => Steering::Left,
            _ => Steering::Right,
        };
        let speed = match idx % 4 {
            0 => Speed::Fast,
            1 => Speed::Normal,
            2 => Speed::Slow,
            _ => Speed::Stopped,
        };
        Some(ActionLabel { steering, speed })
    }

    pub fn all() -> impl Iterator<Item = ActionLabel> {
        (0..Self::COUNT).map(|i| ActionLabel::from_class_index(i).unwrap())
    }
}

/// A multi-frame scene with one ego object, an action label, and an optional
/// annotated relevant object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub scene_id: String,
    pub num_frames: usize,
    pub objects: Vec<TrackedObject>,
    pub action: ActionLabel,
    pub relevant_object: Option<String>,
}

impl Scene {
    /// Checks the structural invariants: frame range, unique ids, exactly one
    /// ego, non-empty presence, valid boxes, and a resolvable annotation.
    pub fn validate(&self) -> Result<()> {
        if self.num_frames < 2 {
            return Err(Error::InvalidInput(format!(
                "scene {}: num_frames must be >= 2, got {}",
                self.scene_id, self.num_frames
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut ego_count = 0usize;
        for obj in &self.objects {
            if !seen.insert(obj.object_id.clone()) {
                return Err(Error::InvalidInput(format!(
                    "scene {}: duplicate object id '{}'",
                    self.scene_id, obj.object_id
                )));
            }
            if obj.object_type == ObjectType::Ego {
                ego_count += 1;
            }
            if obj.boxes.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "scene {}: object '{}' has no boxes",
                    self.scene_id, obj.object_id
                )));
            }
            for (&frame, bbox) in &obj.boxes {
                if frame >= self.num_frames {
                    return Err(Error::InvalidInput(format!(
                        "scene {}: object '{}' has box at frame {} outside [0, {})",
                        self.scene_id, obj.object_id, frame, self.num_frames
                    )));
                }
                bbox.validate()?;
            }
        }
        if ego_count != 1 {
            return Err(Error::InvalidInput(format!(
                "scene {}: expected exactly one ego object, found {}",
                self.scene_id, ego_count
            )));
        }
        if let Some(rel) = &self.relevant_object {
            match self.objects.iter().find(|o| &o.object_id == rel) {
                None => {
                    return Err(Error::InvalidInput(format!(
                        "scene {}: relevant_object '{}' names no object",
                        self.scene_id, rel
                    )))
                }
                Some(o) if o.object_type == ObjectType::Ego => {
                    return Err(Error::InvalidInput(format!(
                        "scene {}: relevant_object '{}' must be a non-ego object",
                        self.scene_id, rel
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    pub fn ego(&self) -> Result<&TrackedObject> {
        self.objects
            .iter()
            .find(|o| o.object_type == ObjectType::Ego)
            .ok_or_else(|| Error::InvalidInput(format!("scene {}: no ego object", self.scene_id)))
    }

    pub fn object(&self, id: &str) -> Option<&TrackedObject> {
        self.objects.iter().find(|o| o.object_id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(frames: &[usize]) -> BTreeMap<usize, BoundingBox> {
        frames
            .iter()
            .map(|&f| (f, BoundingBox::new(0.0, 0.0, 1.0, 1.0).unwrap()))
            .collect()
    }

    fn minimal_scene() -> Scene {
        Scene {
            scene_id: "s0".into(),
            num_frames: 5,
            objects: vec![
                TrackedObject {
                    object_id: "ego".into(),
                    object_type: ObjectType::Ego,
                    boxes: boxed(&[0, 1, 2]),
                },
                TrackedObject {
                    object_id: "o1".into(),
                    object_type: ObjectType::Car,
                    boxes: boxed(&[0, 1]),
                },
            ],
            action: ActionLabel::new(Steering::Straight, Speed::Slow),
            relevant_object: Some("o1".into()),
        }
    }

    #[test]
    fn bounding_box_rejects_degenerate_and_non_finite() {
        assert!(BoundingBox::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(BoundingBox::new(2.0, 0.0, 1.0, 1.0).is_err());
        assert!(BoundingBox::new(0.0, 0.0, f64::NAN, 1.0).is_err());
        assert!(BoundingBox::new(0.0, 0.0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn action_class_index_roundtrip_covers_all_12() {
        let mut seen = std::collections::BTreeSet::new();
        for a in ActionLabel::all() {
            let idx = a.class_index();
            assert!(idx < 12);
            assert_eq!(ActionLabel::from_class_index(idx), Some(a));
            seen.insert(idx);
        }
        assert_eq!(seen.len(), 12);
    }

    #[test]
    fn scene_validation_accepts_minimal_scene() {
        minimal_scene().validate().unwrap();
    }

    #[test]
    fn scene_validation_rejects_bad_annotation_and_frames() {
        let mut s = minimal_scene();
        s.relevant_object = Some("missing".into());
        assert!(s.validate().is_err());

        let mut s = minimal_scene();
        s.relevant_object = Some("ego".into());
        assert!(s.validate().is_err());

        let mut s = minimal_scene();
        s.objects[1].boxes = boxed(&[7]);
        assert!(s.validate().is_err());

        let mut s = minimal_scene();
        s.objects[0].object_type = ObjectType::Car;
        assert!(s.validate().is_err());
    }
}
