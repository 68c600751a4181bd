//! Equirectangular and cubemap geometry.
//!
//! Conventions, fixed once and shared by every module:
//! - frame: x right, y down, z forward; right-handed
//! - longitude `phi = 2*pi*(col+0.5)/W - pi`, latitude
//!   `theta = pi/2 - pi*(row+0.5)/H` (pixel centers)
//! - ray `d = (cos(theta)sin(phi), -sin(theta), cos(theta)cos(phi))`
//! - depth is the radial ray length in meters, not planar z
//! - panoramas are `W = 2H`; bilinear sampling wraps horizontally and
//!   clamps vertically

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{Mat3, Real, Vec3};

pub const POLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("pixel index ({row}, {col}) out of range for {h}x{w}")]
    PixelOutOfRange { row: i64, col: i64, h: usize, w: usize },
    #[error("direction has near-zero norm")]
    ZeroNormDirection,
    #[error("panorama must satisfy W = 2H, got {h}x{w}")]
    BadAspect { h: usize, w: usize },
    #[error("data length {got} does not match {h}x{w}x{c}")]
    DataLength { got: usize, h: usize, w: usize, c: usize },
    #[error("image values must be finite and within [0, 1]")]
    ValueRange,
    #[error("invalid depth at ({row}, {col}): must be finite and > 0")]
    BadDepth { row: usize, col: usize },
    #[error("cube faces must share one size, got {a} and {b}")]
    FaceSizeMismatch { a: usize, b: usize },
    #[error("cube face size must be >= 2, got {s}")]
    FaceTooSmall { s: usize },
    #[error("rotation is not orthonormal within 1e-9")]
    NotARotation,
    #[error("shape mismatch: {what}")]
    ShapeMismatch { what: &'static str },
}

/// Rigid transform: `x_world = rotation * x_local + translation` (meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl Pose {
    pub const IDENTITY: Pose = Pose {
        rotation: Mat3::IDENTITY,
        translation: Vec3::ZERO,
    };

    pub fn new(rotation: Mat3, translation: Vec3) -> Result<Pose, GeomError> {
        let pose = Pose { rotation, translation };
        pose.validate()?;
        Ok(pose)
    }

    pub fn from_translation(translation: Vec3) -> Pose {
        Pose {
            rotation: Mat3::IDENTITY,
            translation,
        }
    }

    /// Orthonormality and determinant within 1e-9.
    pub fn validate(&self) -> Result<(), GeomError> {
        if !self.rotation.is_finite() || !self.translation.is_finite() {
            return Err(GeomError::NotARotation);
        }
        if self.rotation.orthonormality_error() > 1e-9
            || Real::abs(self.rotation.det() - 1.0) > 1e-9
        {
            return Err(GeomError::NotARotation);
        }
        Ok(())
    }

    pub fn apply(&self, p: &Vec3) -> Vec3 {
        self.rotation.mul_vec(p) + self.translation
    }

    pub fn apply_rotation(&self, d: &Vec3) -> Vec3 {
        self.rotation.mul_vec(d)
    }

    pub fn inverse(&self) -> Pose {
        let rt = self.rotation.transpose();
        Pose {
            rotation: rt,
            translation: -rt.mul_vec(&self.translation),
        }
    }

    /// `self` then `other`: `(other * self)(x) = other(self(x))`.
    pub fn compose(&self, other: &Pose) -> Pose {
        Pose {
            rotation: other.rotation.mul_mat(&self.rotation),
            translation: other.rotation.mul_vec(&self.translation) + other.translation,
        }
    }

    /// Pose of `self` expressed in `reference`'s frame.
    pub fn relative_to(&self, reference: &Pose) -> Pose {
        self.compose(&reference.inverse())
    }
}

/// Equirectangular RGB (or generic C-channel) image, row-major, values in [0,1].
#[derive(Debug, Clone, PartialEq)]
pub struct PanoImage {
    pub h: usize,
    pub w: usize,
    pub channels: usize,
    pub data: Vec<f32>,
}

impl PanoImage {
    pub fn new(h: usize, w: usize, channels: usize, data: Vec<f32>) -> Result<Self, GeomError> {
        if w != 2 * h {
            return Err(GeomError::BadAspect { h, w });
        }
        if data.len() != h * w * channels {
            return Err(GeomError::DataLength {
                got: data.len(),
                h,
                w,
                c: channels,
            });
        }
        if !data.iter().all(|v| v.is_finite() && (0.0..=1.0).contains(v)) {
            return Err(GeomError::ValueRange);
        }
        Ok(PanoImage { h, w, channels, data })
    }

    pub fn constant(h: usize, w: usize, color: &[f32]) -> Result<Self, GeomError> {
        let mut data = Vec::with_capacity(h * w * color.len());
        for _ in 0..h * w {
            data.extend_from_slice(color);
        }
        PanoImage::new(h, w, color.len(), data)
    }

    pub fn pixel(&self, row: usize, col: usize) -> &[f32] {
        let base = (row * self.w + col) * self.channels;
        &self.data[base..base + self.channels]
    }

    pub fn pixel_mut(&mut self, row: usize, col: usize) -> &mut [f32] {
        let base = (row * self.w + col) * self.channels;
        &mut self.data[base..base + self.channels]
    }
}

/// Per-pixel radial depth with a validity mask.
#[derive(Debug, Clone, PartialEq)]
pub struct PanoDepth {
    pub h: usize,
    pub w: usize,
    pub depth: Vec<f64>,
    pub valid: Vec<bool>,
}

impl PanoDepth {
    pub fn new(h: usize, w: usize, depth: Vec<f64>, valid: Vec<bool>) -> Result<Self, GeomError> {
        if depth.len() != h * w || valid.len() != h * w {
            return Err(GeomError::DataLength {
                got: depth.len(),
                h,
                w,
                c: 1,
            });
        }
        for i in 0..depth.len() {
            if valid[i] && !(depth[i].is_finite() && depth[i] > 0.0) {
                return Err(GeomError::BadDepth {
                    row: i / w,
                    col: i % w,
                });
            }
        }
        Ok(PanoDepth { h, w, depth, valid })
    }
}

/// Per-pixel 3D points (meters, shared frame) with a validity mask.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMap {
    pub h: usize,
    pub w: usize,
    pub points: Vec<Vec3>,
    pub valid: Vec<bool>,
}

impl PointMap {
    pub fn invalid(h: usize, w: usize) -> Self {
        PointMap {
            h,
            w,
            points: vec![Vec3::ZERO; h * w],
            valid: vec![false; h * w],
        }
    }
}

/// The six axis-aligned cube faces in the panorama frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubeFace {
    Front,
    Right,
    Back,
    Left,
    Up,
    Down,
}

impl CubeFace {
    /// Tie-breaking and iteration order: front > right > back > left > up > down.
    pub const ALL: [CubeFace; 6] = [
        CubeFace::Front,
        CubeFace::Right,
        CubeFace::Back,
        CubeFace::Left,
        CubeFace::Up,
        CubeFace::Down,
    ];

    /// Rotation taking face-camera coordinates into the panorama frame.
    pub fn rotation(&self) -> Mat3 {
        let x = Vec3::new(1.0, 0.0, 0.0);
        let y = Vec3::new(0.0, 1.0, 0.0);
        let z = Vec3::new(0.0, 0.0, 1.0);
        match self {
            CubeFace::Front => Mat3::IDENTITY,
            CubeFace::Right => Mat3::from_cols(-z, y, x),
            CubeFace::Back => Mat3::from_cols(-x, y, -z),
            CubeFace::Left => Mat3::from_cols(z, y, -x),
            CubeFace::Up => Mat3::from_cols(x, z, -y),
            CubeFace::Down => Mat3::from_cols(x, -z, y),
        }
    }

    pub fn index(&self) -> usize {
        CubeFace::ALL.iter().position(|f| f == self).unwrap()
    }
}

/// 90-degree-FOV pinhole camera on one cube face.
///
/// Intrinsics are fixed by the face size: focal = S/2 and principal point at
/// S/2 with pixel-center convention, so the four pixel borders span exactly
/// 90 degrees.
#[derive(Debug, Clone, Copy)]
pub struct CubeCamera {
    pub face: CubeFace,
    pub pose: Pose,
    pub size: usize,
}

impl CubeCamera {
    pub fn new(face: CubeFace, pose: Pose, size: usize) -> Result<Self, GeomError> {
        if size < 2 {
            return Err(GeomError::FaceTooSmall { s: size });
        }
        pose.validate()?;
        Ok(CubeCamera { face, pose, size })
    }

    /// The six cameras of a cubemap rig at `pose`.
    pub fn rig(pose: Pose, size: usize) -> Result<[CubeCamera; 6], GeomError> {
        if size < 2 {
            return Err(GeomError::FaceTooSmall { s: size });
        }
        pose.validate()?;
        Ok(CubeFace::ALL.map(|face| CubeCamera { face, pose, size }))
    }

    pub fn focal(&self) -> f64 {
        self.size as f64 / 2.0
    }

    /// World rotation of the face camera (face orientation composed with pose).
    pub fn world_rotation(&self) -> Mat3 {
        self.pose.rotation.mul_mat(&self.face.rotation())
    }

    /// Unnormalized camera-frame ray through the center of pixel `(row, col)`.
    pub fn pixel_ray_local(&self, row: f64, col: f64) -> Vec3 {
        let f = self.focal();
        Vec3::new((col + 0.5 - f) / f, (row + 0.5 - f) / f, 1.0)
    }

    /// Unit world-frame ray through the center of pixel `(row, col)`.
    pub fn pixel_ray_world(&self, row: f64, col: f64) -> Vec3 {
        self.world_rotation()
            .mul_vec(&self.pixel_ray_local(row, col))
            .normalized()
            .expect("pinhole ray cannot be zero")
    }
}

/// Unit ray through the center of equirectangular pixel `(row, col)`.
pub fn pixel_to_dir(row: usize, col: usize, h: usize, w: usize) -> Result<Vec3, GeomError> {
    if row >= h || col >= w {
        return Err(GeomError::PixelOutOfRange {
            row: row as i64,
            col: col as i64,
            h,
            w,
        });
    }
    Ok(pixel_to_dir_continuous(row as f64, col as f64, h, w))
}

/// Same mapping on continuous pixel coordinates (no range check).
pub fn pixel_to_dir_continuous(row: f64, col: f64, h: usize, w: usize) -> Vec3 {
    let phi = 2.0 * core::f64::consts::PI * (col + 0.5) / w as f64 - core::f64::consts::PI;
    let theta = core::f64::consts::FRAC_PI_2 - core::f64::consts::PI * (row + 0.5) / h as f64;
    let (ct, st) = (Real::cos(theta), Real::sin(theta));
    Vec3::new(ct * Real::sin(phi), -st, ct * Real::cos(phi))
}

/// Continuous pixel coordinates of direction `d`; inverts [`pixel_to_dir`].
///
/// The column wraps to `[-0.5, W-0.5)`; the row is clamped to
/// `[-0.5, H-0.5]`. At the poles (`cos(theta) < 1e-12`) the column is
/// defined as 0.
pub fn dir_to_pixel(d: &Vec3, h: usize, w: usize) -> Result<(f64, f64), GeomError> {
    let n = d.norm();
    if n < 1e-12 {
        return Err(GeomError::ZeroNormDirection);
    }
    let u = d.scale(1.0 / n);
    let sin_theta = (-u.y()).clamp(-1.0, 1.0);
    let theta = Real::asin(sin_theta);
    let cos_theta = Real::sqrt(Real::max_val(1.0 - sin_theta * sin_theta, 0.0));
    let row_raw = (core::f64::consts::FRAC_PI_2 - theta) * h as f64 / core::f64::consts::PI - 0.5;
    let row = row_raw.clamp(-0.5, h as f64 - 0.5);
    if cos_theta < POLE_EPS {
        return Ok((row, 0.0));
    }
    let phi = Real::atan2(u.x(), u.z());
    let mut col = (phi + core::f64::consts::PI) * w as f64 / (2.0 * core::f64::consts::PI) - 0.5;
    // atan2 returns (-pi, pi]; fold the half-open range so col is in [-0.5, W-0.5).
    if col >= w as f64 - 0.5 {
        col -= w as f64;
    }
    Ok((row, col))
}

/// Lift a depth map to 3D points: `point = R * (depth * ray) + t`.
pub fn depth_to_points(depth: &PanoDepth, pose: &Pose) -> Result<PointMap, GeomError> {
    pose.validate()?;
    let (h, w) = (depth.h, depth.w);
    let mut out = PointMap::invalid(h, w);
    for row in 0..h {
        for col in 0..w {
            let i = row * w + col;
            if !depth.valid[i] {
                continue;
            }
            let dir = pixel_to_dir_continuous(row as f64, col as f64, h, w);
            out.points[i] = pose.apply(&dir.scale(depth.depth[i]));
            out.valid[i] = true;
        }
    }
    Ok(out)
}

/// Project a world point into the panorama at `pose`; returns continuous
/// `(row, col)` and the radial depth.
pub fn point_to_pixel(
    point: &Vec3,
    pose: &Pose,
    h: usize,
    w: usize,
) -> Result<(f64, f64, f64), GeomError> {
    let local = pose.inverse().apply(point);
    let depth = local.norm();
    let (row, col) = dir_to_pixel(&local, h, w)?;
    Ok((row, col, depth))
}

/// Bilinear sample with horizontal wrap and vertical clamp; `row`/`col` are
/// continuous pixel-center coordinates.
pub fn sample_pano_bilinear(img: &PanoImage, row: f64, col: f64, out: &mut [f32]) {
    let (h, w, c) = (img.h as i64, img.w as i64, img.channels);
    let r0 = Real::floor(row) as i64;
    let c0 = Real::floor(col) as i64;
    let fr = (row - r0 as f64) as f32;
    let fc = (col - c0 as f64) as f32;
    let rc = |r: i64| -> usize { r.clamp(0, h - 1) as usize };
    let cw = |cc: i64| -> usize { cc.rem_euclid(w) as usize };
    let (ra, rb) = (rc(r0), rc(r0 + 1));
    let (ca, cb) = (cw(c0), cw(c0 + 1));
    let p00 = img.pixel(ra, ca);
    let p01 = img.pixel(ra, cb);
    let p10 = img.pixel(rb, ca);
    let p11 = img.pixel(rb, cb);
    for k in 0..c {
        let top = p00[k] * (1.0 - fc) + p01[k] * fc;
        let bot = p10[k] * (1.0 - fc) + p11[k] * fc;
        out[k] = top * (1.0 - fr) + bot * fr;
    }
}

/// Square image used for cube faces (any channel count, plain clamp sampling).
#[derive(Debug, Clone, PartialEq)]
pub struct FaceImage {
    pub size: usize,
    pub channels: usize,
    pub data: Vec<f32>,
}

impl FaceImage {
    pub fn new(size: usize, channels: usize, data: Vec<f32>) -> Result<Self, GeomError> {
        if data.len() != size * size * channels {
            return Err(GeomError::DataLength {
                got: data.len(),
                h: size,
                w: size,
                c: channels,
            });
        }
        Ok(FaceImage { size, channels, data })
    }

    pub fn zeros(size: usize, channels: usize) -> Self {
        FaceImage {
            size,
            channels,
            data: vec![0.0; size * size * channels],
        }
    }

    pub fn pixel(&self, row: usize, col: usize) -> &[f32] {
        let base = (row * self.size + col) * self.channels;
        &self.data[base..base + self.channels]
    }

    pub fn pixel_mut(&mut self, row: usize, col: usize) -> &mut [f32] {
        let base = (row * self.size + col) * self.channels;
        &mut self.data[base..base + self.channels]
    }

    pub fn sample_bilinear_clamped(&self, row: f64, col: f64, out: &mut [f32]) {
        let s = self.size as i64;
        let r0 = Real::floor(row) as i64;
        let c0 = Real::floor(col) as i64;
        let fr = (row - r0 as f64) as f32;
        let fc = (col - c0 as f64) as f32;
        let cl = |v: i64| -> usize { v.clamp(0, s - 1) as usize };
        let p00 = self.pixel(cl(r0), cl(c0));
        let p01 = self.pixel(cl(r0), cl(c0 + 1));
        let p10 = self.pixel(cl(r0 + 1), cl(c0));
        let p11 = self.pixel(cl(r0 + 1), cl(c0 + 1));
        for k in 0..self.channels {
            let top = p00[k] * (1.0 - fc) + p01[k] * fc;
            let bot = p10[k] * (1.0 - fc) + p11[k] * fc;
            out[k] = top * (1.0 - fr) + bot * fr;
        }
    }
}

/// Resample a panorama onto the six cube faces (bilinear, seam-aware).
pub fn pano_to_cubemap(pano: &PanoImage, size: usize) -> Result<[FaceImage; 6], GeomError> {
    if size < 2 {
        return Err(GeomError::FaceTooSmall { s: size });
    }
    let mut faces = [
        FaceImage::zeros(size, pano.channels),
        FaceImage::zeros(size, pano.channels),
        FaceImage::zeros(size, pano.channels),
        FaceImage::zeros(size, pano.channels),
        FaceImage::zeros(size, pano.channels),
        FaceImage::zeros(size, pano.channels),
    ];
    for (fi, face) in CubeFace::ALL.iter().enumerate() {
        let rot = face.rotation();
        let f = size as f64 / 2.0;
        for row in 0..size {
            for col in 0..size {
                let local = Vec3::new(
                    (col as f64 + 0.5 - f) / f,
                    (row as f64 + 0.5 - f) / f,
                    1.0,
                );
                let dir = rot.mul_vec(&local);
                let (pr, pc) = dir_to_pixel(&dir, pano.h, pano.w)?;
                let dst = faces[fi].pixel_mut(row, col);
                sample_pano_bilinear(pano, pr, pc, dst);
            }
        }
    }
    Ok(faces)
}

/// Pick the face whose viewing axis best aligns with `dir` (ties resolved in
/// [`CubeFace::ALL`] order) and return face index plus continuous face pixel.
pub fn face_for_direction(dir: &Vec3, size: usize) -> (usize, f64, f64) {
    let mut best = 0usize;
    let mut best_dot = f64::MIN;
    for (fi, face) in CubeFace::ALL.iter().enumerate() {
        let axis = face.rotation().col(2);
        let dot = axis.dot(dir);
        if dot > best_dot {
            best_dot = dot;
            best = fi;
        }
    }
    let rot = CubeFace::ALL[best].rotation();
    let local = rot.transpose().mul_vec(dir);
    let f = size as f64 / 2.0;
    let col = local.x() / local.z() * f + f - 0.5;
    let row = local.y() / local.z() * f + f - 0.5;
    (best, row, col)
}

/// Assemble a panorama from six equal-size cube faces.
pub fn cubemap_to_pano(faces: &[FaceImage; 6], h: usize, w: usize) -> Result<PanoImage, GeomError> {
    let size = faces[0].size;
    let channels = faces[0].channels;
    for face in faces.iter().skip(1) {
        if face.size != size {
            return Err(GeomError::FaceSizeMismatch {
                a: size,
                b: face.size,
            });
        }
        if face.channels != channels {
            return Err(GeomError::ShapeMismatch {
                what: "cube face channel counts differ",
            });
        }
    }
    if w != 2 * h {
        return Err(GeomError::BadAspect { h, w });
    }
    let mut data = vec![0.0f32; h * w * channels];
    for row in 0..h {
        for col in 0..w {
            let dir = pixel_to_dir_continuous(row as f64, col as f64, h, w);
            let (fi, fr, fc) = face_for_direction(&dir, size);
            let base = (row * w + col) * channels;
            faces[fi].sample_bilinear_clamped(fr, fc, &mut data[base..base + channels]);
        }
    }
    PanoImage::new(h, w, channels, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_vec3_close(a: &Vec3, b: &Vec3, tol: f64) {
        for i in 0..3 {
            assert!(
                (a.0[i] - b.0[i]).abs() <= tol,
                "{a:?} vs {b:?} (component {i})"
            );
        }
    }

    #[test]
    fn forward_axis_by_convention() {
        // phi = 0, theta = 0 lies between pixels; evaluate continuously.
        let d = pixel_to_dir_continuous(1.5, 3.5, 4, 8);
        assert_vec3_close(&d, &Vec3::new(0.0, 0.0, 1.0), 1e-12);
    }

    #[test]
    fn stated_convention_example() {
        let d = pixel_to_dir(0, 2, 2, 4).unwrap();
        assert_vec3_close(&d, &Vec3::new(0.5, -0.70710678, 0.5), 1e-6);
    }

    #[test]
    fn latitude_symmetry() {
        for col in 0..8 {
            let top = pixel_to_dir(0, col, 4, 8).unwrap();
            let bottom = pixel_to_dir(3, col, 4, 8).unwrap();
            assert!((top.x() - bottom.x()).abs() < 1e-12);
            assert!((top.z() - bottom.z()).abs() < 1e-12);
            assert!((top.y() + bottom.y()).abs() < 1e-12);
        }
    }

    #[test]
    fn out_of_range_is_error() {
        assert!(matches!(
            pixel_to_dir(4, 0, 4, 8),
            Err(GeomError::PixelOutOfRange { .. })
        ));
        assert!(matches!(
            pixel_to_dir(0, 8, 4, 8),
            Err(GeomError::PixelOutOfRange { .. })
        ));
    }

    #[test]
    fn dir_to_pixel_examples() {
        let (row, col) = dir_to_pixel(&Vec3::new(0.0, 0.0, 1.0), 4, 8).unwrap();
        assert!((row - 1.5).abs() < 1e-9);
        assert!((col - 3.5).abs() < 1e-9);

        let (row, col) = dir_to_pixel(&Vec3::new(0.0, -1.0, 0.0), 4, 8).unwrap();
        assert!((row + 0.5).abs() < 1e-9);
        assert_eq!(col, 0.0);

        assert!(matches!(
            dir_to_pixel(&Vec3::ZERO, 4, 8),
            Err(GeomError::ZeroNormDirection)
        ));
    }

    #[test]
    fn round_trip_all_pixels() {
        let (h, w) = (8, 16);
        for row in 0..h {
            for col in 0..w {
                let d = pixel_to_dir(row, col, h, w).unwrap();
                assert!((d.norm() - 1.0).abs() < 1e-9);
                let (r, c) = dir_to_pixel(&d, h, w).unwrap();
                assert!((r - row as f64).abs() < 1e-5, "row {row} -> {r}");
                assert!((c - col as f64).abs() < 1e-5, "col {col} -> {c}");
            }
        }
    }

    #[test]
    fn column_periodicity() {
        let (h, w) = (6, 12);
        for row in 0..h {
            for col in 0..w {
                let a = pixel_to_dir_continuous(row as f64, col as f64, h, w);
                let b = pixel_to_dir_continuous(row as f64, (col + w) as f64, h, w);
                assert_vec3_close(&a, &b, 1e-12);
            }
        }
    }

    #[test]
    fn depth_point_examples() {
        // Center ray with identity pose.
        let dir = Vec3::new(0.0, 0.0, 1.0);
        let p = Pose::IDENTITY.apply(&dir.scale(2.0));
        assert_vec3_close(&p, &Vec3::new(0.0, 0.0, 2.0), 1e-12);
        // Translated pose.
        let pose = Pose::from_translation(Vec3::new(1.0, 0.0, 0.0));
        let p = pose.apply(&dir.scale(2.0));
        assert_vec3_close(&p, &Vec3::new(1.0, 0.0, 2.0), 1e-12);
    }

    #[test]
    fn depth_to_points_grid_and_reprojection() {
        let (h, w) = (8, 16);
        let axis = Vec3::new(0.2, 1.0, -0.3).normalized().unwrap();
        let pose = Pose::new(
            Mat3::rotation_axis_angle(&axis, 0.7),
            Vec3::new(0.4, -0.2, 1.1),
        )
        .unwrap();
        let depth: Vec<f64> = (0..h * w).map(|i| 1.0 + 0.01 * i as f64).collect();
        let pd = PanoDepth::new(h, w, depth.clone(), vec![true; h * w]).unwrap();
        let pm = depth_to_points(&pd, &pose).unwrap();
        for row in 0..h {
            for col in 0..w {
                let i = row * w + col;
                let (r, c, d) = point_to_pixel(&pm.points[i], &pose, h, w).unwrap();
                assert!((r - row as f64).abs() < 1e-6);
                assert!((c - col as f64).abs() < 1e-6);
                assert!((d - depth[i]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn rigid_invariance_of_pairwise_distances() {
        let (h, w) = (4, 8);
        let depth: Vec<f64> = (0..h * w).map(|i| 2.0 + 0.05 * i as f64).collect();
        let pd = PanoDepth::new(h, w, depth, vec![true; h * w]).unwrap();
        let base = Pose::new(
            Mat3::rotation_axis_angle(&Vec3::new(0.0, 1.0, 0.0), 0.3),
            Vec3::new(0.5, 0.1, -0.2),
        )
        .unwrap();
        let extra = Pose::new(
            Mat3::rotation_axis_angle(
                &Vec3::new(1.0, 0.2, 0.1).normalized().unwrap(),
                -1.2,
            ),
            Vec3::new(-1.0, 0.7, 2.0),
        )
        .unwrap();
        let a = depth_to_points(&pd, &base).unwrap();
        let b = depth_to_points(&pd, &base.compose(&extra)).unwrap();
        for i in (0..h * w).step_by(5) {
            for j in (1..h * w).step_by(7) {
                let da = (a.points[i] - a.points[j]).norm();
                let db = (b.points[i] - b.points[j]).norm();
                assert!((da - db).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn cube_face_rotations_are_rotations() {
        for face in CubeFace::ALL {
            let r = face.rotation();
            assert!(r.orthonormality_error() < 1e-15, "{face:?}");
            assert!((r.det() - 1.0).abs() < 1e-15, "{face:?}");
        }
        // Axes point where the names say.
        assert_vec3_close(
            &CubeFace::Front.rotation().col(2),
            &Vec3::new(0.0, 0.0, 1.0),
            0.0,
        );
        assert_vec3_close(
            &CubeFace::Right.rotation().col(2),
            &Vec3::new(1.0, 0.0, 0.0),
            0.0,
        );
        assert_vec3_close(
            &CubeFace::Up.rotation().col(2),
            &Vec3::new(0.0, -1.0, 0.0),
            0.0,
        );
    }

    #[test]
    fn constant_pano_to_constant_faces() {
        let pano = PanoImage::constant(8, 16, &[0.25, 0.5, 0.75]).unwrap();
        let faces = pano_to_cubemap(&pano, 4).unwrap();
        for face in &faces {
            for v in face.data.chunks(3) {
                assert!((v[0] - 0.25).abs() < 1e-6);
                assert!((v[1] - 0.5).abs() < 1e-6);
                assert!((v[2] - 0.75).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn front_center_pixel_matches_forward_color() {
        // Odd face size puts a pixel center exactly on the forward axis.
        let (h, w) = (8, 16);
        let mut pano = PanoImage::constant(h, w, &[0.0]).unwrap();
        for row in 0..h {
            for col in 0..w {
                pano.pixel_mut(row, col)[0] = ((row * w + col) as f32) / (h * w) as f32;
            }
        }
        let faces = pano_to_cubemap(&pano, 5).unwrap();
        let center = faces[0].pixel(2, 2)[0];
        let (pr, pc) = dir_to_pixel(&Vec3::new(0.0, 0.0, 1.0), h, w).unwrap();
        let mut expect = [0.0f32];
        sample_pano_bilinear(&pano, pr, pc, &mut expect);
        assert!((center - expect[0]).abs() < 1e-6);
    }

    #[test]
    fn distinct_faces_partition_pano() {
        let size = 6;
        let mut faces: Vec<FaceImage> = Vec::new();
        for fi in 0..6 {
            let v = fi as f32 / 6.0 + 0.05;
            faces.push(FaceImage::new(size, 1, vec![v; size * size]).unwrap());
        }
        let faces: [FaceImage; 6] = faces.try_into().unwrap();
        let pano = cubemap_to_pano(&faces, 12, 24).unwrap();
        // Every pano pixel carries exactly one of the six face colors, and the
        // face chosen maximizes alignment with the pixel ray.
        for row in 0..12 {
            for col in 0..24 {
                let v = pano.pixel(row, col)[0];
                let fi = ((v - 0.05) * 6.0).round() as usize;
                let dir = pixel_to_dir(row, col, 12, 24).unwrap();
                let chosen_dot = CubeFace::ALL[fi].rotation().col(2).dot(&dir);
                for other in CubeFace::ALL {
                    assert!(other.rotation().col(2).dot(&dir) <= chosen_dot + 1e-12);
                }
            }
        }
    }

    #[test]
    fn mismatched_face_sizes_error() {
        let a = FaceImage::zeros(4, 1);
        let b = FaceImage::zeros(5, 1);
        let faces = [a.clone(), b, a.clone(), a.clone(), a.clone(), a];
        assert!(matches!(
            cubemap_to_pano(&faces, 8, 16),
            Err(GeomError::FaceSizeMismatch { .. })
        ));
    }

    #[test]
    fn cubemap_round_trip_low_frequency() {
        // Texture smooth as a function of direction (so it is continuous on
        // the sphere, poles included); round-trip error is then bounded by
        // bilinear softening alone.
        let (h, w) = (16, 32);
        let mut pano = PanoImage::constant(h, w, &[0.0, 0.0, 0.0]).unwrap();
        for row in 0..h {
            for col in 0..w {
                let d = pixel_to_dir(row, col, h, w).unwrap();
                let px = pano.pixel_mut(row, col);
                px[0] = (0.5 + 0.4 * d.x()) as f32;
                px[1] = (0.5 + 0.4 * d.y()) as f32;
                px[2] = (0.5 + 0.2 * d.z()) as f32;
            }
        }
        let faces = pano_to_cubemap(&pano, w / 2).unwrap();
        let back = cubemap_to_pano(&faces, h, w).unwrap();
        let mut max_err = 0.0f32;
        for (a, b) in pano.data.iter().zip(back.data.iter()) {
            max_err = max_err.max((a - b).abs());
        }
        assert!(max_err <= 0.02, "round-trip error {max_err}");
    }

    #[test]
    fn pose_validate_rejects_non_rotation() {
        let bad = Mat3([[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(Pose::new(bad, Vec3::ZERO).is_err());
    }
}
