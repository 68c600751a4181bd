//! Procedural ground-truth scenes.
//!
//! Textured axis-aligned box rooms with optional interior boxes. Every query
//! is an analytic ray/slab intersection, so rendered depths are exact and the
//! rest of the crate can be checked against them at 1e-9 rather than against
//! meshes. The frame matches [`crate::sphere`]: y points down, so the floor
//! sits at `+ey/2` and the ceiling at `-ey/2`.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{Real, Rng, Vec3};
use crate::sphere::{pixel_to_dir_continuous, CubeCamera, GeomError, PanoDepth, PanoImage, Pose};

/// Camera clearance from any surface, meters.
pub const FREE_SPACE_CLEARANCE: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SceneError {
    #[error("pose at ({0:.3}, {1:.3}, {2:.3}) is outside free space")]
    PoseOutsideFreeSpace(f64, f64, f64),
    #[error("could not satisfy requested geometry after {attempts} attempts: {what}")]
    Unsatisfiable { what: &'static str, attempts: u32 },
    #[error("baseline range [{lo}, {hi}] is empty or exceeds the room")]
    BadBaselineRange { lo: f64, hi: f64 },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Two-color checker texture on a wall or box face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckerTexture {
    pub period: f64,
    pub color_a: [f32; 3],
    pub color_b: [f32; 3],
}

impl CheckerTexture {
    pub fn uniform(color: [f32; 3]) -> Self {
        CheckerTexture {
            period: 1.0,
            color_a: color,
            color_b: color,
        }
    }

    fn eval(&self, u: f64, v: f64) -> [f32; 3] {
        let iu = Real::floor(u / self.period) as i64;
        let iv = Real::floor(v / self.period) as i64;
        if (iu + iv).rem_euclid(2) == 0 {
            self.color_a
        } else {
            self.color_b
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteriorBox {
    pub center: Vec3,
    pub half_extents: Vec3,
    pub texture: CheckerTexture,
}

/// Axis-aligned sampling region for camera positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub min: Vec3,
    pub max: Vec3,
}

/// Procedural textured room; the ground-truth oracle for the whole pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxScene {
    pub seed: u64,
    /// Half extents of the room along x, y (height), z.
    pub half_extents: Vec3,
    /// Textures in face order +x, -x, +y (floor), -y (ceiling), +z, -z.
    pub wall_textures: [CheckerTexture; 6],
    pub boxes: Vec<InteriorBox>,
    /// Camera sampling region; defaults to the whole room interior.
    pub camera_region: Option<Region>,
}

/// Which procedural layout to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SceneKind {
    /// Random room, random textures, 0-3 interior boxes.
    Box,
    /// Featureless walls and a single textured box behind the camera region,
    /// so the only structure spans the panorama seam.
    Seam,
}

/// Deterministic scene from a seed.
pub fn make_scene(seed: u64) -> BoxScene {
    make_scene_of_kind(seed, SceneKind::Box)
}

pub fn make_scene_of_kind(seed: u64, kind: SceneKind) -> BoxScene {
    match kind {
        SceneKind::Box => make_box_scene(seed),
        SceneKind::Seam => make_seam_scene(seed),
    }
}

fn sample_texture(rng: &mut Rng) -> CheckerTexture {
    // Moderate contrast and >= 1.5 m periods keep the photometric targets
    // free of aliasing at 64x128.
    let base = [
        rng.uniform(0.30, 0.70) as f32,
        rng.uniform(0.30, 0.70) as f32,
        rng.uniform(0.30, 0.70) as f32,
    ];
    let delta = [
        rng.uniform(0.10, 0.22) as f32,
        rng.uniform(0.10, 0.22) as f32,
        rng.uniform(0.10, 0.22) as f32,
    ];
    CheckerTexture {
        period: rng.uniform(1.5, 2.5),
        color_a: [base[0] + delta[0], base[1] + delta[1], base[2] + delta[2]],
        color_b: [base[0] - delta[0], base[1] - delta[1], base[2] - delta[2]],
    }
}

fn make_box_scene(seed: u64) -> BoxScene {
    let mut rng = Rng::derive(seed, "scene", 0);
    let ex = rng.uniform(3.0, 8.0);
    let ez = rng.uniform(3.0, 8.0);
    let ey = rng.uniform(2.5, 4.0);
    let half = Vec3::new(ex / 2.0, ey / 2.0, ez / 2.0);
    let wall_textures = [
        sample_texture(&mut rng),
        sample_texture(&mut rng),
        sample_texture(&mut rng),
        sample_texture(&mut rng),
        sample_texture(&mut rng),
        sample_texture(&mut rng),
    ];
    let n_boxes = rng.below(4);
    let mut boxes = Vec::new();
    for _ in 0..n_boxes {
        let he = Vec3::new(
            rng.uniform(0.2, 0.6),
            rng.uniform(0.2, 0.6),
            rng.uniform(0.2, 0.6),
        );
        // Keep a wall margin so free space stays connected.
        let margin = 0.5;
        let cx = rng.uniform(-(half.x() - he.x() - margin), half.x() - he.x() - margin);
        let cz = rng.uniform(-(half.z() - he.z() - margin), half.z() - he.z() - margin);
        // Rest the box on the floor (y down: floor at +half.y()).
        let cy = half.y() - he.y();
        boxes.push(InteriorBox {
            center: Vec3::new(cx, cy, cz),
            half_extents: he,
            texture: sample_texture(&mut rng),
        });
    }
    BoxScene {
        seed,
        half_extents: half,
        wall_textures,
        boxes,
        camera_region: None,
    }
}

fn make_seam_scene(seed: u64) -> BoxScene {
    let mut rng = Rng::derive(seed, "seam-scene", 0);
    let half = Vec3::new(
        rng.uniform(2.4, 3.0),
        rng.uniform(1.3, 1.6),
        rng.uniform(2.6, 3.2),
    );
    let gray = |rng: &mut Rng| {
        let g = rng.uniform(0.35, 0.55) as f32;
        CheckerTexture::uniform([g, g, g])
    };
    let wall_textures = [
        gray(&mut rng),
        gray(&mut rng),
        gray(&mut rng),
        gray(&mut rng),
        gray(&mut rng),
        gray(&mut rng),
    ];
    // One strongly textured box behind the camera region (-z), so cameras at
    // +z see it across the phi = +-pi seam.
    let he = Vec3::new(
        rng.uniform(0.45, 0.6),
        rng.uniform(0.4, 0.55),
        rng.uniform(0.3, 0.45),
    );
    let seam_box = InteriorBox {
        center: Vec3::new(
            rng.uniform(-0.1, 0.1),
            half.y() - he.y(),
            -half.z() + he.z() + 0.4,
        ),
        half_extents: he,
        texture: CheckerTexture {
            period: 0.35,
            color_a: [0.85, 0.25, 0.2],
            color_b: [0.15, 0.35, 0.8],
        },
    };
    let region = Region {
        min: Vec3::new(-0.25, -0.35, seam_box.center.z() + he.z() + 1.0),
        max: Vec3::new(0.25, 0.35, half.z() - 0.6),
    };
    BoxScene {
        seed,
        half_extents: half,
        wall_textures,
        boxes: vec![seam_box],
        camera_region: Some(region),
    }
}

/// Nearest ray hit: distance, color, and the plane info tests verify against.
#[derive(Debug, Clone, Copy)]
pub struct Hit {
    pub t: f64,
    pub color: [f32; 3],
    /// 0, 1, 2 for x, y, z.
    pub axis: usize,
    /// Plane coordinate along `axis` in the frame of the hit primitive owner
    /// (world frame for walls, box-local for boxes).
    pub plane: f64,
    /// Index of the interior box hit, or `None` for a room wall.
    pub box_index: Option<usize>,
}

impl BoxScene {
    /// Point is at least `clearance` from every wall and interior box.
    pub fn is_free(&self, p: &Vec3, clearance: f64) -> bool {
        let h = self.half_extents;
        for k in 0..3 {
            if Real::abs(p.0[k]) > h.0[k] - clearance {
                return false;
            }
        }
        for b in &self.boxes {
            let mut inside = true;
            for k in 0..3 {
                if Real::abs(p.0[k] - b.center.0[k]) > b.half_extents.0[k] + clearance {
                    inside = false;
                    break;
                }
            }
            if inside {
                return false;
            }
        }
        true
    }

    /// Cast a ray from `origin` along unit `dir`; `origin` must be interior.
    pub fn cast_ray(&self, origin: &Vec3, dir: &Vec3) -> Hit {
        // Room walls: the nearest positive exit along each axis.
        let mut best_t = f64::INFINITY;
        let mut best = Hit {
            t: 0.0,
            color: [0.0; 3],
            axis: 0,
            plane: 0.0,
            box_index: None,
        };
        for axis in 0..3 {
            let d = dir.0[axis];
            if Real::abs(d) < 1e-15 {
                continue;
            }
            let bound = if d > 0.0 {
                self.half_extents.0[axis]
            } else {
                -self.half_extents.0[axis]
            };
            let t = (bound - origin.0[axis]) / d;
            if t > 0.0 && t < best_t {
                let hitp = *origin + dir.scale(t);
                let (u, v) = in_plane_coords(axis, &hitp);
                let face = wall_face_index(axis, d > 0.0);
                best_t = t;
                best = Hit {
                    t,
                    color: self.wall_textures[face].eval(u, v),
                    axis,
                    plane: bound,
                    box_index: None,
                };
            }
        }
        // Interior boxes: slab test, entry point only (cameras are outside).
        for (bi, b) in self.boxes.iter().enumerate() {
            let mut t_near = -f64::INFINITY;
            let mut t_far = f64::INFINITY;
            let mut near_axis = 0usize;
            let mut hit_possible = true;
            for axis in 0..3 {
                let o = origin.0[axis] - b.center.0[axis];
                let d = dir.0[axis];
                let he = b.half_extents.0[axis];
                if Real::abs(d) < 1e-15 {
                    if Real::abs(o) > he {
                        hit_possible = false;
                        break;
                    }
                    continue;
                }
                let mut t0 = (-he - o) / d;
                let mut t1 = (he - o) / d;
                if t0 > t1 {
                    core::mem::swap(&mut t0, &mut t1);
                }
                if t0 > t_near {
                    t_near = t0;
                    near_axis = axis;
                }
                t_far = Real::min_val(t_far, t1);
                if t_near > t_far {
                    hit_possible = false;
                    break;
                }
            }
            if !hit_possible || t_near <= 1e-12 || t_near >= best_t {
                continue;
            }
            let hitp = *origin + dir.scale(t_near);
            let local = hitp - b.center;
            let (u, v) = in_plane_coords(near_axis, &local);
            best_t = t_near;
            best = Hit {
                t: t_near,
                color: b.texture.eval(u, v),
                axis: near_axis,
                plane: local.0[near_axis],
                box_index: Some(bi),
            };
        }
        best
    }

    pub fn diagonal(&self) -> f64 {
        self.half_extents.scale(2.0).norm()
    }
}

fn in_plane_coords(axis: usize, p: &Vec3) -> (f64, f64) {
    match axis {
        0 => (p.y(), p.z()),
        1 => (p.x(), p.z()),
        _ => (p.x(), p.y()),
    }
}

fn wall_face_index(axis: usize, positive: bool) -> usize {
    2 * axis + usize::from(!positive)
}

/// Render an equirectangular RGB-D view; the pose must be in free space.
pub fn render_pano(
    scene: &BoxScene,
    pose: &Pose,
    h: usize,
    w: usize,
) -> Result<(PanoImage, PanoDepth), SceneError> {
    pose.validate()?;
    if !scene.is_free(&pose.translation, FREE_SPACE_CLEARANCE) {
        let t = pose.translation;
        return Err(SceneError::PoseOutsideFreeSpace(t.x(), t.y(), t.z()));
    }
    let mut rgb = vec![0.0f32; h * w * 3];
    let mut depth = vec![0.0f64; h * w];
    for row in 0..h {
        for col in 0..w {
            let dir = pose
                .rotation
                .mul_vec(&pixel_to_dir_continuous(row as f64, col as f64, h, w));
            let hit = scene.cast_ray(&pose.translation, &dir);
            let i = row * w + col;
            depth[i] = hit.t;
            rgb[i * 3..i * 3 + 3].copy_from_slice(&hit.color);
        }
    }
    let image = PanoImage::new(h, w, 3, rgb)?;
    let depth = PanoDepth::new(h, w, depth, vec![true; h * w])?;
    Ok((image, depth))
}

/// One rendered cube face: RGB plus exact radial depth.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceRgbd {
    pub size: usize,
    pub rgb: Vec<f32>,
    pub depth: Vec<f64>,
}

/// Render the six 90-degree cube faces at `pose` (RGB-D, analytic).
pub fn render_cubemap(
    scene: &BoxScene,
    pose: &Pose,
    size: usize,
) -> Result<[FaceRgbd; 6], SceneError> {
    if !scene.is_free(&pose.translation, FREE_SPACE_CLEARANCE) {
        let t = pose.translation;
        return Err(SceneError::PoseOutsideFreeSpace(t.x(), t.y(), t.z()));
    }
    let cams = CubeCamera::rig(*pose, size)?;
    let mut out = Vec::with_capacity(6);
    for cam in &cams {
        let mut rgb = vec![0.0f32; size * size * 3];
        let mut depth = vec![0.0f64; size * size];
        for row in 0..size {
            for col in 0..size {
                let dir = cam.pixel_ray_world(row as f64, col as f64);
                let hit = scene.cast_ray(&pose.translation, &dir);
                let i = row * size + col;
                depth[i] = hit.t;
                rgb[i * 3..i * 3 + 3].copy_from_slice(&hit.color);
            }
        }
        out.push(FaceRgbd { size, rgb, depth });
    }
    Ok(out.try_into().expect("six faces"))
}

/// A training/evaluation sample: two input views plus a supervision view.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenePair {
    pub scene_seed: u64,
    pub pair_seed: u64,
    pub pose1: Pose,
    pub pose2: Pose,
    pub supervision: Pose,
    pub baseline_m: f64,
}

/// Where the supervision pose sits relative to the two inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// On the segment between the inputs.
    Interpolate,
    /// Beyond either endpoint by up to 50% of the baseline.
    Extrapolate,
}

fn sample_free_position(
    scene: &BoxScene,
    rng: &mut Rng,
    attempts: u32,
) -> Result<Vec3, SceneError> {
    let region = scene.camera_region.unwrap_or(Region {
        min: -scene.half_extents,
        max: scene.half_extents,
    });
    for _ in 0..attempts {
        let p = Vec3::new(
            rng.uniform(region.min.x(), region.max.x()),
            rng.uniform(region.min.y(), region.max.y()),
            rng.uniform(region.min.z(), region.max.z()),
        );
        if scene.is_free(&p, FREE_SPACE_CLEARANCE) {
            return Ok(p);
        }
    }
    Err(SceneError::Unsatisfiable {
        what: "free-space camera position",
        attempts,
    })
}

/// Sample a camera pair at the requested baseline (+-5%) plus a supervision
/// pose. `max_yaw` (radians) adds an independent yaw to each pose; 0 keeps
/// all rotations identity.
pub fn sample_pair(
    scene: &BoxScene,
    baseline_range: (f64, f64),
    mode: PairMode,
    max_yaw: f64,
    seed: u64,
) -> Result<ScenePair, SceneError> {
    let (lo, hi) = baseline_range;
    if !(lo > 0.0 && hi >= lo && lo < scene.diagonal()) {
        return Err(SceneError::BadBaselineRange { lo, hi });
    }
    let mut rng = Rng::derive(seed, "pair", scene.seed);
    const ATTEMPTS: u32 = 1000;
    for _ in 0..ATTEMPTS {
        let p1 = sample_free_position(scene, &mut rng, ATTEMPTS)?;
        let baseline = rng.uniform(lo, hi) * rng.uniform(0.95, 1.05);
        let dir = rng.unit_vector();
        let p2 = p1 + dir.scale(baseline);
        if !scene.is_free(&p2, FREE_SPACE_CLEARANCE) {
            continue;
        }
        let u = match mode {
            PairMode::Interpolate => rng.uniform(0.05, 0.95),
            PairMode::Extrapolate => {
                let beyond = rng.uniform(0.05, 0.5);
                if rng.unit() < 0.5 {
                    -beyond
                } else {
                    1.0 + beyond
                }
            }
        };
        let ps = p1 + (p2 - p1).scale(u);
        if !scene.is_free(&ps, FREE_SPACE_CLEARANCE) {
            continue;
        }
        let yaw = |rng: &mut Rng| {
            if max_yaw > 0.0 {
                crate::math::Mat3::rotation_yaw(rng.uniform(-max_yaw, max_yaw))
            } else {
                crate::math::Mat3::IDENTITY
            }
        };
        let pose1 = Pose {
            rotation: yaw(&mut rng),
            translation: p1,
        };
        let pose2 = Pose {
            rotation: yaw(&mut rng),
            translation: p2,
        };
        let supervision = Pose {
            rotation: yaw(&mut rng),
            translation: ps,
        };
        return Ok(ScenePair {
            scene_seed: scene.seed,
            pair_seed: seed,
            pose1,
            pose2,
            supervision,
            baseline_m: (p2 - p1).norm(),
        });
    }
    Err(SceneError::Unsatisfiable {
        what: "camera pair at requested baseline",
        attempts: ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::depth_to_points;

    #[test]
    fn determinism_in_seed() {
        assert_eq!(make_scene(5), make_scene(5));
        assert_ne!(make_scene(0).half_extents, make_scene(1).half_extents);
    }

    #[test]
    fn center_of_empty_room_depth() {
        // 4x4 m footprint, 3 m height; +x ray hits the wall at 2 m.
        let mut scene = make_scene(11);
        scene.half_extents = Vec3::new(2.0, 1.5, 2.0);
        scene.boxes.clear();
        let hit = scene.cast_ray(&Vec3::ZERO, &Vec3::new(1.0, 0.0, 0.0));
        assert!((hit.t - 2.0).abs() < 1e-12);
        assert_eq!(hit.axis, 0);
    }

    #[test]
    fn moving_toward_wall_reduces_depth() {
        let mut scene = make_scene(3);
        scene.boxes.clear();
        let d = Vec3::new(0.0, 0.0, 1.0);
        let t0 = scene.cast_ray(&Vec3::ZERO, &d).t;
        let t1 = scene.cast_ray(&Vec3::new(0.0, 0.0, 0.5), &d).t;
        assert!((t0 - t1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rendered_depth_matches_analytic_cast() {
        let scene = make_scene(7);
        let pose = Pose::IDENTITY;
        let (h, w) = (16, 32);
        let (_, depth) = render_pano(&scene, &pose, h, w).unwrap();
        for row in (0..h).step_by(3) {
            for col in (0..w).step_by(5) {
                let dir = pixel_to_dir_continuous(row as f64, col as f64, h, w);
                let hit = scene.cast_ray(&pose.translation, &dir);
                assert!((depth.depth[row * w + col] - hit.t).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn depth_points_lie_on_planes() {
        let scene = make_scene(2);
        let pose = Pose::from_translation(Vec3::new(0.3, 0.1, -0.2));
        let (h, w) = (16, 32);
        let (_, depth) = render_pano(&scene, &pose, h, w).unwrap();
        let pm = depth_to_points(&depth, &pose).unwrap();
        for row in 0..h {
            for col in 0..w {
                let i = row * w + col;
                let dir = pose
                    .rotation
                    .mul_vec(&pixel_to_dir_continuous(row as f64, col as f64, h, w));
                let hit = scene.cast_ray(&pose.translation, &dir);
                let p = pm.points[i];
                let local = match hit.box_index {
                    Some(bi) => p - scene.boxes[bi].center,
                    None => p,
                };
                assert!(
                    (local.0[hit.axis] - hit.plane).abs() < 1e-6,
                    "pixel ({row},{col}) off its plane"
                );
            }
        }
    }

    #[test]
    fn seam_continuity_of_rays() {
        // Columns W-1 and 0 are physically adjacent: their rays differ by the
        // single-column angular step.
        let (h, w) = (16, 32);
        for row in 0..h {
            let a = pixel_to_dir_continuous(row as f64, 0.0, h, w);
            let b = pixel_to_dir_continuous(row as f64, (w - 1) as f64, h, w);
            let gap = Real::acos(a.dot(&b).clamp(-1.0, 1.0));
            let lat = core::f64::consts::FRAC_PI_2
                - core::f64::consts::PI * (row as f64 + 0.5) / h as f64;
            let expected = 2.0 * core::f64::consts::PI / w as f64 * Real::cos(lat);
            assert!((gap - expected).abs() < 1e-6);
        }
    }

    #[test]
    fn free_space_invariant_over_seeds() {
        for seed in 0..100 {
            let scene = make_scene(seed);
            let pair = sample_pair(&scene, (0.8, 1.2), PairMode::Interpolate, 0.0, seed + 1000);
            let pair = match pair {
                Ok(p) => p,
                Err(SceneError::Unsatisfiable { .. }) => continue,
                Err(e) => panic!("unexpected error: {e}"),
            };
            for pose in [&pair.pose1, &pair.pose2, &pair.supervision] {
                assert!(scene.is_free(&pose.translation, FREE_SPACE_CLEARANCE));
            }
        }
    }

    #[test]
    fn pair_contract() {
        let mut scene = make_scene(13);
        scene.boxes.clear();
        scene.half_extents = Vec3::new(4.0, 1.5, 4.0);
        let pair = sample_pair(&scene, (1.0, 1.0), PairMode::Interpolate, 0.0, 1).unwrap();
        assert!(pair.baseline_m >= 0.95 && pair.baseline_m <= 1.05);
        // Supervision pose is collinear with the two inputs.
        let ab = pair.pose2.translation - pair.pose1.translation;
        let asup = pair.supervision.translation - pair.pose1.translation;
        let cross = ab.cross(&asup).norm();
        assert!(cross < 1e-9);
        let u = asup.dot(&ab) / ab.norm_sq();
        assert!((0.0..=1.0).contains(&u));

        let pair = sample_pair(&scene, (1.0, 1.0), PairMode::Extrapolate, 0.0, 2).unwrap();
        let ab = pair.pose2.translation - pair.pose1.translation;
        let asup = pair.supervision.translation - pair.pose1.translation;
        let u = asup.dot(&ab) / ab.norm_sq();
        assert!(u < 0.0 || u > 1.0, "extrapolated u = {u}");
    }

    #[test]
    fn outside_pose_rejected() {
        let scene = make_scene(1);
        let outside = Pose::from_translation(Vec3::new(100.0, 0.0, 0.0));
        assert!(matches!(
            render_pano(&scene, &outside, 8, 16),
            Err(SceneError::PoseOutsideFreeSpace(..))
        ));
    }

    #[test]
    fn cross_view_depth_consistency() {
        // Points lifted from view 2 must be exactly the surfaces view 1 sees
        // along the same rays (convex empty room: everything is mutually
        // visible). Compares against a fresh analytic cast, not a resampled
        // grid, so the tolerance can stay at 1e-6.
        let mut scene = make_scene(21);
        scene.boxes.clear();
        let (h, w) = (32, 64);
        let pose1 = Pose::from_translation(Vec3::new(0.2, 0.0, 0.1));
        let pose2 = Pose::from_translation(Vec3::new(-0.3, 0.1, -0.2));
        let (_, d2) = render_pano(&scene, &pose2, h, w).unwrap();
        let pm2 = depth_to_points(&d2, &pose2).unwrap();
        for i in (0..h * w).step_by(7) {
            let p = pm2.points[i];
            let offset = p - pose1.translation;
            let expected = offset.norm();
            let dir = offset.normalized().unwrap();
            let hit = scene.cast_ray(&pose1.translation, &dir);
            assert!(
                (hit.t - expected).abs() < 1e-6,
                "pixel {i}: cast {} vs expected {}",
                hit.t,
                expected
            );
        }
    }
}
