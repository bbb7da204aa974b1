use crate::graph::{Bfs, Graph};

/// Whether every component is a subdivided star whose legs have length at
/// most two: a tree with a centre from which every vertex is at distance at
/// most two, where every vertex at distance two is a leaf.
pub fn is_2_spider_forest(g: &Graph) -> bool {
    let mut bfs = Bfs::new(g.num_vertices());
    g.components().into_iter().all(|comp| {
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges + 1 != comp.len() {
            return false;
        }
        comp.iter().any(|&c| {
            let ball = bfs.run(g, c, 2, |_| true, |_| true);
            ball.len() == comp.len()
                && ball.iter().all(|&(v, d)| match d {
                    0 => true,
                    1 => g.degree(v) <= 2,
                    _ => g.degree(v) == 1,
                })
        })
    })
}
