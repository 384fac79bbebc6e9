//! Synthetic scene generation with a planted causal object, plus the
//! line-delimited scene file format.
//!
//! Every generated scene contains an ego vehicle on a linear track, one
//! cause object whose qualitative relation chain to the ego deterministically
//! implies the scene's action, and distractor objects whose chains do not.
//! Distractors are kept outside the `close` distance band so no distractor
//! can reproduce a cause signature on noiseless data.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::derive_seed;
use crate::error::{Error, Result};
use crate::scene::{ActionLabel, BoundingBox, ObjectType, Scene, Speed, Steering, TrackedObject};

/// Seconds between consecutive frames.
const FRAME_DT: f64 = 0.5;

/// Ego translational speed (m/s) per speed label.
fn ego_speed(speed: Speed) -> f64 {
    match speed {
        Speed::Fast => 9.0,
        Speed::Normal => 5.0,
        Speed::Slow => 2.0,
        // a crawl, not a dead stop: keeps the approach component engaged
        Speed::Stopped => 0.4,
    }
}

/// Lateral drift speed (m/s) while steering; left is negative x.
const LATERAL_SPEED: f64 = 1.8;

/// Distractors are rejected if they ever come nearer to the ego than this,
/// which keeps them out of the `close` band (theta2 = 5 by default).
const DISTRACTOR_MIN_DIST: f64 = 5.2;

fn box_size(ty: ObjectType) -> (f64, f64) {
    match ty {
        ObjectType::Ego | ObjectType::Car => (2.0, 4.5),
        ObjectType::Truck => (2.6, 7.0),
        ObjectType::Pedestrian => (0.6, 0.6),
        ObjectType::Cyclist => (0.8, 2.0),
        ObjectType::StaticObstacle => (1.0, 1.0),
    }
}

/// Which relational pattern the planted cause realizes, and therefore which
/// actions the scene can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CauseSignature {
    /// Object far ahead closes to (very) close; ego brakes: straight + slow/stopped.
    CloseApproachAhead,
    /// Object just ahead pulls away beyond the far band; ego speeds up: straight + fast.
    ClearRoad,
    /// Static object ahead, offset to one side; ego swerves: left/right + normal.
    LateralBlocker,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub num_scenes: usize,
    #[serde(default = "default_num_frames")]
    pub num_frames: usize,
    /// Total objects per scene (ego included), drawn uniformly per scene.
    #[serde(default = "default_objects_min")]
    pub objects_min: usize,
    #[serde(default = "default_objects_max")]
    pub objects_max: usize,
    /// Standard deviation of per-frame centroid jitter, meters.
    #[serde(default)]
    pub noise_sigma: f64,
    /// Fixed cause signature for every scene; `None` mixes all three.
    #[serde(default)]
    pub signature: Option<CauseSignature>,
    pub seed: u64,
    #[serde(default = "default_train_frac")]
    pub train_frac: f64,
    #[serde(default = "default_val_frac")]
    pub val_frac: f64,
}

fn default_num_frames() -> usize {
    5
}
fn default_objects_min() -> usize {
    3
}
fn default_objects_max() -> usize {
    6
}
fn default_train_frac() -> f64 {
    0.6
}
fn default_val_frac() -> f64 {
    0.2
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_scenes == 0 {
            return Err(Error::Config("num_scenes must be positive".into()));
        }
        if self.num_frames < 2 {
            return Err(Error::Config("num_frames must be >= 2".into()));
        }
        if self.objects_min < 2 || self.objects_min > self.objects_max {
            return Err(Error::Config(
                "objects_per_scene range must satisfy 2 <= min <= max".into(),
            ));
        }
        if self.noise_sigma < 0.0 {
            return Err(Error::Config("noise_sigma must be >= 0".into()));
        }
        if !(self.train_frac > 0.0 && self.val_frac > 0.0 && self.train_frac + self.val_frac < 1.0)
        {
            return Err(Error::Config(
                "split fractions must be positive with train + val < 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    Train,
    Val,
    Test,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Val => "val",
            Split::Test => "test",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "train" => Some(Split::Train),
            "val" => Some(Split::Val),
            "test" => Some(Split::Test),
            _ => None,
        }
    }
}

/// A scene corpus with its fixed train/val/test assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub scenes: Vec<Scene>,
    pub split: BTreeMap<String, Split>,
}

impl Dataset {
    pub fn scenes_in(&self, split: Split) -> Vec<&Scene> {
        self.scenes
            .iter()
            .filter(|s| self.split.get(&s.scene_id) == Some(&split))
            .collect()
    }
}

/// Linear track: centroid position at frame f is `pos0 + f * dt * vel`.
#[derive(Debug, Clone, Copy)]
struct Track {
    pos0: (f64, f64),
    vel: (f64, f64),
}

impl Track {
    fn at(&self, frame: usize) -> (f64, f64) {
        let t = frame as f64 * FRAME_DT;
        (self.pos0.0 + self.vel.0 * t, self.pos0.1 + self.vel.1 * t)
    }
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, options: &[T]) -> T {
    options[rng.gen_range(0..options.len())]
}

fn draw_action(rng: &mut ChaCha8Rng, sig: CauseSignature) -> ActionLabel {
    match sig {
        CauseSignature::CloseApproachAhead => ActionLabel::new(
            Steering::Straight,
            pick(rng, &[Speed::Slow, Speed::Stopped]),
        ),
        CauseSignature::ClearRoad => ActionLabel::new(Steering::Straight, Speed::Fast),
        CauseSignature::LateralBlocker => ActionLabel::new(
            pick(rng, &[Steering::Left, Steering::Right]),
            Speed::Normal,
        ),
    }
}

struct PlannedObject {
    object_type: ObjectType,
    track: Track,
    is_cause: bool,
}

fn generate_scene(index: usize, cfg: &GenConfig, master_seed: u64) -> Result<Scene> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(master_seed, index as u64));
    let sig = cfg.signature.unwrap_or_else(|| {
        pick(
            &mut rng,
            &[
                CauseSignature::CloseApproachAhead,
                CauseSignature::ClearRoad,
                CauseSignature::LateralBlocker,
            ],
        )
    });
    let action = draw_action(&mut rng, sig);
    let last = (cfg.num_frames - 1) as f64 * FRAME_DT;

    // scene origin jitter; relations only depend on relative geometry
    let origin = (rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));

    let lateral = match action.steering {
        Steering::Straight => 0.0,
        Steering::Left => -LATERAL_SPEED,
        Steering::Right => LATERAL_SPEED,
    };
    let ego_track = Track {
        pos0: origin,
        vel: (lateral, ego_speed(action.speed)),
    };

    // The cause's track is solved from the distance profile it must realize
    // relative to the ego, so the planted signature holds for any ego speed.
    let cause = match sig {
        CauseSignature::CloseApproachAhead => {
            let d0 = rng.gen_range(11.5..16.0);
            let d_end = match action.speed {
                Speed::Stopped => rng.gen_range(0.9..1.7),
                _ => rng.gen_range(2.6..4.4),
            };
            let rate = (d_end - d0) / last;
            PlannedObject {
                object_type: pick(&mut rng, &[ObjectType::Car, ObjectType::Truck]),
                track: Track {
                    pos0: (origin.0, origin.1 + d0),
                    vel: (ego_track.vel.0, ego_track.vel.1 + rate),
                },
                is_cause: true,
            }
        }
        CauseSignature::ClearRoad => {
            let d0 = rng.gen_range(2.6..4.4);
            let d_end = rng.gen_range(11.5..16.0);
            let rate = (d_end - d0) / last;
            PlannedObject {
                object_type: pick(&mut rng, &[ObjectType::Car, ObjectType::Cyclist]),
                track: Track {
                    pos0: (origin.0, origin.1 + d0),
                    vel: (ego_track.vel.0, ego_track.vel.1 + rate),
                },
                is_cause: true,
            }
        }
        CauseSignature::LateralBlocker => {
            let ahead = rng.gen_range(6.0..9.0);
            // blocker sits on the side the ego is steering away from
            let side = match action.steering {
                Steering::Left => 1.0,
                _ => -1.0,
            };
            let offset = side * rng.gen_range(0.8..1.6);
            PlannedObject {
                object_type: pick(&mut rng, &[ObjectType::StaticObstacle, ObjectType::Car]),
                track: Track {
                    pos0: (origin.0 + offset, origin.1 + ahead),
                    vel: (0.0, 0.0),
                },
                is_cause: true,
            }
        }
    };

    let n_objects = rng.gen_range(cfg.objects_min..=cfg.objects_max);
    let mut others = vec![cause];
    for _ in 0..n_objects.saturating_sub(2) {
        others.push(draw_distractor(&mut rng, &ego_track, cfg.num_frames, origin));
    }
    // shuffle id assignment so the cause holds no fixed position in id order
    for i in (1..others.len()).rev() {
        let j = rng.gen_range(0..=i);
        others.swap(i, j);
    }

    let noise = Normal::new(0.0, cfg.noise_sigma.max(f64::MIN_POSITIVE))
        .map_err(|e| Error::Config(format!("noise distribution: {e}")))?;
    let sigma = cfg.noise_sigma;
    let mut jitter = move |rng: &mut ChaCha8Rng| -> f64 {
        if sigma > 0.0 {
            noise.sample(rng)
        } else {
            0.0
        }
    };

    let mut objects = Vec::with_capacity(n_objects);
    let mut relevant = None;
    let mut make_object = |id: String, ty: ObjectType, track: &Track, rng: &mut ChaCha8Rng| {
        let (w, h) = box_size(ty);
        let boxes: BTreeMap<usize, BoundingBox> = (0..cfg.num_frames)
            .map(|f| {
                let (cx, cy) = track.at(f);
                let b = BoundingBox::from_center(cx + jitter(rng), cy + jitter(rng), w, h)
                    .expect("positive box size");
                (f, b)
            })
            .collect();
        TrackedObject {
            object_id: id,
            object_type: ty,
            boxes,
        }
    };

    objects.push(make_object("ego".into(), ObjectType::Ego, &ego_track, &mut rng));
    for (i, planned) in others.iter().enumerate() {
        let id = format!("obj_{i:02}");
        if planned.is_cause {
            relevant = Some(id.clone());
        }
        objects.push(make_object(id, planned.object_type, &planned.track, &mut rng));
    }

    let scene = Scene {
        scene_id: format!("scene_{index:06}"),
        num_frames: cfg.num_frames,
        objects,
        action,
        relevant_object: relevant,
    };
    scene.validate()?;
    Ok(scene)
}

fn draw_distractor(
    rng: &mut ChaCha8Rng,
    ego: &Track,
    num_frames: usize,
    origin: (f64, f64),
) -> PlannedObject {
    let ty = pick(
        rng,
        &[
            ObjectType::Car,
            ObjectType::Truck,
            ObjectType::Pedestrian,
            ObjectType::Cyclist,
            ObjectType::StaticObstacle,
        ],
    );
    for _ in 0..50 {
        let side = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let pos0 = (
            origin.0 + side * rng.gen_range(5.5..9.0),
            origin.1 + rng.gen_range(-4.0..14.0),
        );
        let vel = if ty == ObjectType::StaticObstacle {
            (0.0, 0.0)
        } else {
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            let speed = rng.gen_range(0.0..4.5);
            (speed * angle.cos(), speed * angle.sin())
        };
        let track = Track { pos0, vel };
        let min_dist = (0..num_frames)
            .map(|f| {
                let e = ego.at(f);
                let p = track.at(f);
                ((e.0 - p.0).powi(2) + (e.1 - p.1).powi(2)).sqrt()
            })
            .fold(f64::INFINITY, f64::min);
        if min_dist >= DISTRACTOR_MIN_DIST {
            return PlannedObject {
                object_type: ty,
                track,
                is_cause: false,
            };
        }
    }
    // rejection budget exhausted: park it well off to the side
    PlannedObject {
        object_type: ty,
        track: Track {
            pos0: (origin.0 + 8.0, origin.1),
            vel: (0.0, 0.0),
        },
        is_cause: false,
    }
}

/// Generates the corpus and its fixed split; a pure function of the config.
pub fn generate_dataset(cfg: &GenConfig) -> Result<Dataset> {
    cfg.validate()?;
    let mut scenes = Vec::with_capacity(cfg.num_scenes);
    for i in 0..cfg.num_scenes {
        scenes.push(generate_scene(i, cfg, cfg.seed)?);
    }

    // deterministic split: shuffle indices with a dedicated derived seed
    let mut order: Vec<usize> = (0..cfg.num_scenes).collect();
    let mut split_rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 0xFFFF_FFFF_0000_0001));
    for i in (1..order.len()).rev() {
        let j = split_rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let n_train = ((cfg.num_scenes as f64) * cfg.train_frac).floor() as usize;
    let n_val = ((cfg.num_scenes as f64) * cfg.val_frac).floor() as usize;
    let mut split = BTreeMap::new();
    for (pos, &idx) in order.iter().enumerate() {
        let s = if pos < n_train {
            Split::Train
        } else if pos < n_train + n_val {
            Split::Val
        } else {
            Split::Test
        };
        split.insert(scenes[idx].scene_id.clone(), s);
    }
    Ok(Dataset { scenes, split })
}

// ---------------------------------------------------------------------------
// Scene file format: one JSON object per line + a split sidecar
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawAction {
    steering: String,
    speed: String,
}

#[derive(Serialize, Deserialize)]
struct RawObject {
    id: String,
    #[serde(rename = "type")]
    object_type: String,
    boxes: BTreeMap<String, [f64; 4]>,
}

#[derive(Serialize, Deserialize)]
struct RawScene {
    scene_id: String,
    num_frames: usize,
    action: RawAction,
    relevant_object: Option<String>,
    objects: Vec<RawObject>,
}

fn steering_str(s: Steering) -> &'static str {
    match s {
        Steering::Straight => "straight",
        Steering::Left => "left",
        Steering::Right => "right",
    }
}

fn speed_str(s: Speed) -> &'static str {
    match s {
        Speed::Fast => "fast",
        Speed::Normal => "normal",
        Speed::Slow => "slow",
        Speed::Stopped => "stopped",
    }
}

fn to_raw(scene: &Scene) -> RawScene {
    RawScene {
        scene_id: scene.scene_id.clone(),
        num_frames: scene.num_frames,
        action: RawAction {
            steering: steering_str(scene.action.steering).to_string(),
            speed: speed_str(scene.action.speed).to_string(),
        },
        relevant_object: scene.relevant_object.clone(),
        objects: scene
            .objects
            .iter()
            .map(|o| RawObject {
                id: o.object_id.clone(),
                object_type: o.object_type.as_str().to_string(),
                boxes: o
                    .boxes
                    .iter()
                    .map(|(f, b)| (f.to_string(), [b.x_min, b.y_min, b.x_max, b.y_max]))
                    .collect(),
            })
            .collect(),
    }
}

fn from_raw(raw: RawScene, line: usize) -> Result<Scene> {
    let perr = |message: String| Error::Parse { line, message };
    let steering = match raw.action.steering.as_str() {
        "straight" => Steering::Straight,
        "left" => Steering::Left,
        "right" => Steering::Right,
        other => return Err(perr(format!("action.steering: unknown value '{other}'"))),
    };
    let speed = match raw.action.speed.as_str() {
        "fast" => Speed::Fast,
        "normal" => Speed::Normal,
        "slow" => Speed::Slow,
        "stopped" => Speed::Stopped,
        other => return Err(perr(format!("action.speed: unknown value '{other}'"))),
    };
    let mut objects = Vec::with_capacity(raw.objects.len());
    for (oi, o) in raw.objects.into_iter().enumerate() {
        let object_type = ObjectType::parse(&o.object_type).ok_or_else(|| {
            perr(format!(
                "objects[{oi}].type: unknown object_type '{}'",
                o.object_type
            ))
        })?;
        let mut boxes = BTreeMap::new();
        for (key, vals) in o.boxes {
            let frame: usize = key.parse().map_err(|_| {
                perr(format!(
                    "objects[{oi}].boxes: frame key '{key}' is not an integer"
                ))
            })?;
            let b = BoundingBox {
                x_min: vals[0],
                y_min: vals[1],
                x_max: vals[2],
                y_max: vals[3],
            };
            b.validate()
                .map_err(|e| perr(format!("objects[{oi}].boxes[{key}]: {e}")))?;
            boxes.insert(frame, b);
        }
        objects.push(TrackedObject {
            object_id: o.id,
            object_type,
            boxes,
        });
    }
    let scene = Scene {
        scene_id: raw.scene_id,
        num_frames: raw.num_frames,
        objects,
        action: ActionLabel::new(steering, speed),
        relevant_object: raw.relevant_object,
    };
    scene
        .validate()
        .map_err(|e| perr(format!("scene '{}': {e}", scene.scene_id)))?;
    Ok(scene)
}

fn splits_path(path: &Path) -> PathBuf {
    path.with_extension("splits.csv")
}

/// Writes the scenes as JSON lines at `path` and the split assignment to the
/// `.splits.csv` sidecar next to it.
pub fn save_scenes(ds: &Dataset, path: &Path) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    for scene in &ds.scenes {
        let line = serde_json::to_string(&to_raw(scene))?;
        writeln!(f, "{line}")?;
    }
    f.flush()?;

    let mut sf = std::io::BufWriter::new(std::fs::File::create(splits_path(path))?);
    writeln!(sf, "scene_id,split")?;
    for scene in &ds.scenes {
        let split = ds
            .split
            .get(&scene.scene_id)
            .ok_or_else(|| Error::InvalidInput(format!("scene {} has no split", scene.scene_id)))?;
        writeln!(sf, "{},{}", scene.scene_id, split.as_str())?;
    }
    sf.flush()?;
    Ok(())
}

/// Reads scenes from `path` and the split assignment from its sidecar.
pub fn load_scenes(path: &Path) -> Result<Dataset> {
    let f = std::fs::File::open(path)?;
    let mut scenes = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawScene = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        scenes.push(from_raw(raw, i + 1)?);
    }

    let sp = splits_path(path);
    if !sp.exists() {
        return Err(Error::MissingInput(format!(
            "split sidecar {} not found",
            sp.display()
        )));
    }
    let mut split = BTreeMap::new();
    for (i, line) in BufReader::new(std::fs::File::open(&sp)?).lines().enumerate() {
        let line = line?;
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let (id, s) = line.split_once(',').ok_or_else(|| Error::Parse {
            line: i + 1,
            message: "split row must be 'scene_id,split'".into(),
        })?;
        let s = Split::parse(s.trim()).ok_or_else(|| Error::Parse {
            line: i + 1,
            message: format!("unknown split '{s}'"),
        })?;
        split.insert(id.to_string(), s);
    }
    for scene in &scenes {
        if !split.contains_key(&scene.scene_id) {
            return Err(Error::Parse {
                line: 0,
                message: format!("scene {} missing from split sidecar", scene.scene_id),
            });
        }
    }
    Ok(Dataset { scenes, split })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::{CalculiConfig, QdcRelation, QtcApproach, QtcSide};
    use crate::qxg::{build_qxg, extract_star_graph, RelationChain};

    fn cfg(n: usize, seed: u64) -> GenConfig {
        GenConfig {
            num_scenes: n,
            num_frames: 5,
            objects_min: 3,
            objects_max: 6,
            noise_sigma: 0.0,
            signature: None,
            seed,
            train_frac: 0.6,
            val_frac: 0.2,
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let c = cfg(20, 7);
        let a = generate_dataset(&c).unwrap();
        let b = generate_dataset(&c).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    fn cause_chain(scene: &Scene) -> RelationChain {
        let g = build_qxg(scene, &CalculiConfig::default()).unwrap();
        let star = extract_star_graph(&g, "ego").unwrap();
        let cause = scene.relevant_object.clone().unwrap();
        star.spokes
            .into_iter()
            .find(|sp| sp.other == cause)
            .unwrap()
            .chain
    }

    #[test]
    fn close_approach_scene_ends_near_and_closing() {
        let c = GenConfig {
            signature: Some(CauseSignature::CloseApproachAhead),
            ..cfg(25, 3)
        };
        let ds = generate_dataset(&c).unwrap();
        for scene in &ds.scenes {
            let chain = cause_chain(scene);
            let (_, last) = *chain.last().unwrap();
            assert!(
                matches!(last.qdc, QdcRelation::VeryClose | QdcRelation::Close),
                "scene {}: last qdc {:?}",
                scene.scene_id,
                last.qdc
            );
            assert_eq!(last.qtc.approach1, QtcApproach::Towards);
        }
    }

    #[test]
    fn corpus_scan_counts_and_annotations() {
        let ds = generate_dataset(&cfg(100, 11)).unwrap();
        assert_eq!(ds.scenes.len(), 100);
        for scene in &ds.scenes {
            assert!(scene.relevant_object.is_some());
            let non_ego = scene.objects.len() - 1;
            assert!((2..=5).contains(&non_ego), "{non_ego} non-ego objects");
            scene.validate().unwrap();
        }
    }

    #[test]
    fn split_is_deterministic_disjoint_and_sized() {
        let a = generate_dataset(&cfg(100, 5)).unwrap();
        let b = generate_dataset(&cfg(100, 5)).unwrap();
        assert_eq!(a.split, b.split);
        let n = |s: Split| a.scenes_in(s).len();
        assert_eq!(n(Split::Train), 60);
        assert_eq!(n(Split::Val), 20);
        assert_eq!(n(Split::Test), 20);
        assert_eq!(a.split.len(), 100);
    }

    /// Decision rule over the cause chain alone; mirrors the generator's
    /// planted signatures and must recover every action on noiseless data.
    fn oracle(chain: &RelationChain) -> Option<ActionLabel> {
        let (_, first) = *chain.first()?;
        let (_, last) = *chain.last()?;
        match last.qtc.side1 {
            QtcSide::Left => return Some(ActionLabel::new(Steering::Left, Speed::Normal)),
            QtcSide::Right => return Some(ActionLabel::new(Steering::Right, Speed::Normal)),
            QtcSide::Steady => {}
        }
        match last.qdc {
            QdcRelation::VeryClose => Some(ActionLabel::new(Steering::Straight, Speed::Stopped)),
            QdcRelation::Close => Some(ActionLabel::new(Steering::Straight, Speed::Slow)),
            QdcRelation::Far | QdcRelation::VeryFar if first.qdc == QdcRelation::Close => {
                Some(ActionLabel::new(Steering::Straight, Speed::Fast))
            }
            _ => None,
        }
    }

    #[test]
    fn planted_cause_is_separable_without_noise() {
        let ds = generate_dataset(&cfg(200, 42)).unwrap();
        for scene in &ds.scenes {
            let chain = cause_chain(scene);
            assert_eq!(
                oracle(&chain),
                Some(scene.action),
                "scene {} action {:?}",
                scene.scene_id,
                scene.action
            );
        }
    }

    #[test]
    fn save_load_roundtrip() {
        let ds = generate_dataset(&cfg(30, 9)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scenes.jsonl");
        save_scenes(&ds, &path).unwrap();
        let loaded = load_scenes(&path).unwrap();
        assert_eq!(ds, loaded);
    }

    #[test]
    fn load_rejects_malformed_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");

        // x_min > x_max
        std::fs::write(&path, concat!(
            r#"{"scene_id":"s0","num_frames":5,"action":{"steering":"straight","speed":"slow"},"relevant_object":"a","objects":[{"id":"ego","type":"ego","boxes":{"0":[0,0,1,1]}},{"id":"a","type":"car","boxes":{"0":[5,0,3,1]}}]}"#,
            "\n"
        )).unwrap();
        std::fs::write(splits_path(&path), "scene_id,split\ns0,train\n").unwrap();
        let err = load_scenes(&path).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        assert!(err.to_string().contains("boxes"), "{err}");

        // unknown object type
        std::fs::write(&path, concat!(
            r#"{"scene_id":"s0","num_frames":5,"action":{"steering":"straight","speed":"slow"},"relevant_object":null,"objects":[{"id":"ego","type":"boat","boxes":{"0":[0,0,1,1]}}]}"#,
            "\n"
        )).unwrap();
        let err = load_scenes(&path).unwrap_err();
        assert!(err.to_string().contains("object_type"), "{err}");

        // relevant_object names a missing id
        std::fs::write(&path, concat!(
            r#"{"scene_id":"s0","num_frames":5,"action":{"steering":"straight","speed":"slow"},"relevant_object":"ghost","objects":[{"id":"ego","type":"ego","boxes":{"0":[0,0,1,1]}},{"id":"a","type":"car","boxes":{"0":[3,0,4,1]}}]}"#,
            "\n"
        )).unwrap();
        let err = load_scenes(&path).unwrap_err();
        assert!(err.to_string().contains("ghost"), "{err}");
    }

    #[test]
    fn infeasible_config_is_rejected() {
        let mut c = cfg(0, 1);
        assert!(generate_dataset(&c).is_err());
        c = cfg(5, 1);
        c.objects_min = 1;
        assert!(generate_dataset(&c).is_err());
        c = cfg(5, 1);
        c.num_frames = 1;
        assert!(generate_dataset(&c).is_err());
    }
}
