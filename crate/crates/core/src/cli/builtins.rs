//! Named inputs reachable as `builtin:<name>`.

use crate::algebra::{
    direct_sum, field, functions_on_points, matrix_algebra, truncated_polynomial, Algebra,
};
use crate::site::spaces::{self, circle_refinement};
use crate::site::{Cover, FiniteSpace};

use super::manifest::{AlgebraManifest, CoverManifest, JobManifest, Manifest, SpaceManifest};

pub const ALGEBRAS: &[&str] = &["field", "field2", "mat2", "mat3", "dual", "points3", "x3"];
pub const SPACES: &[&str] = &[
    "point",
    "discrete2",
    "sierpinski",
    "chain3",
    "interval3",
    "discrete3",
    "pseudocircle4",
    "circle12",
    "sphere14",
];
pub const COVERS: &[&str] = &["circle3", "circle4", "sphere4", "point", "points3"];
pub const JOBS: &[&str] = &["circle"];

pub fn algebra(name: &str) -> Option<Algebra> {
    Some(match name {
        "field" => field(),
        "field2" => direct_sum(&field(), &field()),
        "mat2" => matrix_algebra(2),
        "mat3" => matrix_algebra(3),
        "dual" => truncated_polynomial(2),
        "points3" => functions_on_points(3),
        "x3" => truncated_polynomial(3),
        _ => return None,
    })
}

pub fn space(name: &str) -> Option<FiniteSpace> {
    if let Some((_, s)) = spaces::small_spaces().into_iter().find(|(n, _)| *n == name) {
        return Some(s);
    }
    match name {
        "circle12" => Some(spaces::circle12()),
        "sphere14" => Some(spaces::sphere14()),
        _ => None,
    }
}

pub fn cover(name: &str) -> Option<Cover> {
    Some(match name {
        "circle3" => spaces::circle3_cover(),
        "circle4" => spaces::circle4_cover(),
        "sphere4" => spaces::sphere4_cover(),
        "point" => spaces::single_cover(spaces::point()),
        "points3" => spaces::points_cover(3),
        _ => return None,
    })
}

pub fn job(name: &str) -> Option<JobManifest> {
    match name {
        "circle" => {
            let (coarse, fine, assignment) = circle_refinement();
            Some(JobManifest {
                space: SpaceManifest::from_space(coarse.space()),
                coarse: coarse.members().to_vec(),
                fine: fine.members().to_vec(),
                assignment,
                rank: 1,
            })
        }
        _ => None,
    }
}

/// The manifest of a builtin of the given kind.
pub fn manifest(kind: &str, name: &str) -> Option<Manifest> {
    match kind {
        "algebra" => algebra(name).map(|a| Manifest::Algebra(AlgebraManifest::from_algebra(&a))),
        "space" => space(name).map(|s| Manifest::Space(SpaceManifest::from_space(&s))),
        "cover" => cover(name).map(|c| Manifest::Cover(CoverManifest::from_cover(&c))),
        "job" => job(name).map(Manifest::Job),
        _ => None,
    }
}
