//! Bundled finite spaces and covers.

use std::sync::Arc;

use super::{Cover, FiniteSpace, OpenSet};

fn set(points: &[usize]) -> OpenSet {
    OpenSet::from_points(points)
}

fn range(lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).collect()
}

pub fn point() -> FiniteSpace {
    FiniteSpace::new(1, [OpenSet::EMPTY, set(&[0])]).expect("point")
}

/// `{∅, {0}, {0,1}}`.
pub fn sierpinski() -> FiniteSpace {
    FiniteSpace::new(2, [OpenSet::EMPTY, set(&[0]), set(&[0, 1])]).expect("Sierpiński space")
}

/// `{∅, {0}, {0,1}, {0,1,2}}`.
pub fn chain3() -> FiniteSpace {
    FiniteSpace::new(
        3,
        [OpenSet::EMPTY, set(&[0]), set(&[0, 1]), set(&[0, 1, 2])],
    )
    .expect("chain")
}

pub fn discrete(n: usize) -> FiniteSpace {
    FiniteSpace::discrete(n).expect("discrete space")
}

/// Two open points `0, 1` and two closed points `2, 3`, each closed point
/// in the closure of both open ones: the four-point model of the circle.
pub fn pseudocircle4() -> FiniteSpace {
    FiniteSpace::generated_by(4, [set(&[0]), set(&[1]), set(&[0, 1, 2]), set(&[0, 1, 3])])
        .expect("pseudocircle")
}

/// The open points `0` and `2` with the closed point `1` between them.
pub fn interval3() -> FiniteSpace {
    FiniteSpace::generated_by(3, [set(&[0]), set(&[2])]).expect("interval")
}

/// Named spaces with at most four points.
pub fn small_spaces() -> Vec<(&'static str, FiniteSpace)> {
    vec![
        ("point", point()),
        ("discrete2", discrete(2)),
        ("sierpinski", sierpinski()),
        ("chain3", chain3()),
        ("interval3", interval3()),
        ("discrete3", discrete(3)),
        ("pseudocircle4", pseudocircle4()),
    ]
}

/// Arcs of a 12-point circle: three arcs meeting pairwise in one spot and
/// four arcs each inside one of them.
fn circle_arcs() -> (Vec<OpenSet>, Vec<OpenSet>) {
    let coarse = vec![set(&range(0, 6)), set(&range(5, 9)), set(&[9, 10, 11, 0])];
    let fine = vec![
        set(&range(0, 3)),
        set(&range(3, 6)),
        set(&range(6, 9)),
        set(&[9, 10, 11, 0]),
    ];
    (coarse, fine)
}

/// The 12-point circle generated by both arc families.
pub fn circle12() -> FiniteSpace {
    let (coarse, fine) = circle_arcs();
    FiniteSpace::generated_by(12, coarse.into_iter().chain(fine)).expect("circle")
}

/// Three arcs; pairwise intersections nonempty, triple intersection empty.
pub fn circle3_cover() -> Cover {
    Cover::new(Arc::new(circle12()), circle_arcs().0).expect("3-arc cover")
}

/// Four arcs, a refinement of [`circle3_cover`] via [`CIRCLE_REFINEMENT`].
pub fn circle4_cover() -> Cover {
    Cover::new(Arc::new(circle12()), circle_arcs().1).expect("4-arc cover")
}

/// Fine arc `b` lies in coarse arc `CIRCLE_REFINEMENT[b]`.
pub const CIRCLE_REFINEMENT: [usize; 4] = [0, 0, 1, 2];

/// The three-arc and four-arc covers of one space, with the refinement.
pub fn circle_refinement() -> (Cover, Cover, Vec<usize>) {
    let space = Arc::new(circle12());
    let (coarse, fine) = circle_arcs();
    (
        Cover::new(space.clone(), coarse).expect("3-arc cover"),
        Cover::new(space, fine).expect("4-arc cover"),
        CIRCLE_REFINEMENT.to_vec(),
    )
}

/// The 14 simplices of the boundary of a tetrahedron as points, each
/// simplex given by its vertex set.
pub fn sphere_simplices() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=3 {
        for mask in 0u32..16 {
            if mask.count_ones() as usize == size {
                out.push((0..4).filter(|v| mask >> v & 1 == 1).collect());
            }
        }
    }
    out
}

fn vertex_stars() -> Vec<OpenSet> {
    let simplices = sphere_simplices();
    (0..4)
        .map(|v| {
            let pts: Vec<usize> = (0..simplices.len())
                .filter(|&i| simplices[i].contains(&v))
                .collect();
            set(&pts)
        })
        .collect()
}

/// Face poset of the tetrahedron boundary with the open-star topology.
pub fn sphere14() -> FiniteSpace {
    FiniteSpace::generated_by(14, vertex_stars()).expect("sphere")
}

/// Open stars of the four vertices.
pub fn sphere4_cover() -> Cover {
    Cover::new(Arc::new(sphere14()), vertex_stars()).expect("vertex-star cover")
}

/// The whole space as a one-member cover.
pub fn single_cover(space: FiniteSpace) -> Cover {
    let whole = space.whole();
    Cover::new(Arc::new(space), vec![whole]).expect("single-member cover")
}

/// The discrete `n`-point space covered by its points.
pub fn points_cover(n: usize) -> Cover {
    Cover::new(Arc::new(discrete(n)), (0..n).map(|p| set(&[p])).collect()).expect("point cover")
}
