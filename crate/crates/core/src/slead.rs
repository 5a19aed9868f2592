//! Sleads: self-loop enriched acyclic digraphs and the classical codes they
//! define.
//!
//! Every vertex hosts one bit and one parity check; the check on vertex `v`
//! reads the bit on `v` (its self-loop) plus the bits on the direct
//! predecessors of `v`. An edge `(u, v)` therefore means "the check on `v`
//! reads the bit on `u`". Geometric sleads additionally carry a position per
//! vertex and a seam direction `t`; every edge must advance strictly along
//! `t`, which is what forbids cycles in the constructions built from tilings.
//!
//! With all checks present the check matrix is unitriangular in topological
//! order, so the code is trivial. [`ClassicalCode::deplete`] removes one check
//! and opens exactly one new codeword, constructed level by level by
//! [`ClassicalCode::codeword`].

use crate::f2::{BinaryMatrix, BitVector};
use crate::math;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Validation and operation errors for sleads.
#[derive(Debug, Clone, PartialEq)]
pub enum SleadError {
    /// The non-self edges contain a directed cycle (one witness listed in
    /// traversal order).
    CycleFound(Vec<usize>),
    /// A non-depleted vertex is missing its self-loop.
    MissingSelfLoop(usize),
    /// Edge whose displacement does not advance strictly along `t`
    /// (ties are rejected rather than arbitrarily oriented).
    HalfSpaceViolation { from: usize, to: usize, dot: f64 },
    /// Edge endpoint or position index outside the vertex range.
    VertexOutOfRange(usize),
    /// Duplicate directed edge; parallel edges would cancel over GF(2).
    DuplicateEdge { from: usize, to: usize },
    /// The seam direction has the wrong dimension or is all zero.
    BadDirection,
    /// Position list has inconsistent dimension.
    BadPositions,
    /// `deplete` called twice on the same vertex.
    AlreadyDepleted(usize),
    /// Codeword requested for a vertex that is not depleted.
    NotDepleted(usize),
    /// `mediate_edges` needs a strictly positive radius.
    BadRadius(f64),
}

impl fmt::Display for SleadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SleadError::CycleFound(cycle) => write!(f, "directed cycle through {cycle:?}"),
            SleadError::MissingSelfLoop(v) => write!(f, "vertex {v} has no self-loop"),
            SleadError::HalfSpaceViolation { from, to, dot } => {
                write!(f, "edge ({from}, {to}) has seam projection {dot} <= 0")
            }
            SleadError::VertexOutOfRange(v) => write!(f, "vertex index {v} out of range"),
            SleadError::DuplicateEdge { from, to } => {
                write!(f, "duplicate edge ({from}, {to})")
            }
            SleadError::BadDirection => write!(f, "seam direction must be nonzero with matching dimension"),
            SleadError::BadPositions => write!(f, "positions must share one dimension"),
            SleadError::AlreadyDepleted(v) => write!(f, "vertex {v} is already depleted"),
            SleadError::NotDepleted(v) => write!(f, "vertex {v} is not depleted"),
            SleadError::BadRadius(r) => write!(f, "mediation radius {r} must be positive"),
        }
    }
}

impl core::error::Error for SleadError {}

/// Validated slead graph: geometry, edges, self-loops, topological levels.
///
/// Immutable once built; depletion state lives on [`ClassicalCode`].
#[derive(Debug, Clone)]
pub struct Slead {
    dim: usize,
    /// Flattened positions, `dim` coordinates per vertex.
    coords: Vec<f64>,
    /// Seam direction used for half-space validation.
    t: Vec<f64>,
    /// Non-self edges `(from, to)`: check on `to` reads the bit on `from`.
    edges: Vec<(u32, u32)>,
    self_loop: Vec<bool>,
    /// Direct predecessors per vertex (the check support minus the self-loop).
    preds: Vec<Vec<u32>>,
    /// Direct successors per vertex.
    succs: Vec<Vec<u32>>,
    /// Topological level: 0 for sources, else 1 + max over predecessors.
    levels: Vec<u32>,
}

impl Slead {
    /// Validate and build a slead with explicit geometry.
    ///
    /// Checks, in order: index ranges, duplicate edges, self-loop flags,
    /// the strict half-space condition `(x_to - x_from) . t > 0` for every
    /// edge, and acyclicity (computing levels as a side effect).
    pub fn new(
        positions: Vec<Vec<f64>>,
        t: Vec<f64>,
        edges: &[(usize, usize)],
        self_loop: Vec<bool>,
    ) -> Result<Self, SleadError> {
        let n = positions.len();
        let dim = positions.first().map_or(t.len(), Vec::len);
        if positions.iter().any(|p| p.len() != dim) {
            return Err(SleadError::BadPositions);
        }
        if t.len() != dim || t.iter().all(|&c| c == 0.0) {
            return Err(SleadError::BadDirection);
        }
        if self_loop.len() != n {
            return Err(SleadError::BadPositions);
        }
        let mut coords = Vec::with_capacity(n * dim);
        for p in &positions {
            coords.extend_from_slice(p);
        }
        let slead = Self::build(dim, coords, t, edges, self_loop)?;
        for &(u, v) in &slead.edges {
            let d = math::dot(
                &slead.delta(u as usize, v as usize),
                &slead.t,
            );
            if d <= 0.0 {
                return Err(SleadError::HalfSpaceViolation {
                    from: u as usize,
                    to: v as usize,
                    dot: d,
                });
            }
        }
        Ok(slead)
    }

    /// Build a slead from edges alone, synthesizing positions from the
    /// topological levels (vertex `v` sits at `(level(v), v)` with seam
    /// direction `(1, 0)`, which satisfies the half-space condition for any
    /// DAG). Useful for fixtures given as explicit check tables.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, SleadError> {
        let slead = Self::build(2, vec![0.0; n * 2], vec![1.0, 0.0], edges, vec![true; n])?;
        let mut coords = Vec::with_capacity(n * 2);
        for v in 0..n {
            coords.push(slead.levels[v] as f64);
            coords.push(v as f64);
        }
        Ok(Self { coords, ..slead })
    }

    fn build(
        dim: usize,
        coords: Vec<f64>,
        t: Vec<f64>,
        edges: &[(usize, usize)],
        self_loop: Vec<bool>,
    ) -> Result<Self, SleadError> {
        let n = self_loop.len();
        for (v, &has_loop) in self_loop.iter().enumerate() {
            if !has_loop {
                return Err(SleadError::MissingSelfLoop(v));
            }
        }
        let mut sorted: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(SleadError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(SleadError::VertexOutOfRange(v));
            }
            sorted.push((u as u32, v as u32));
        }
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(SleadError::DuplicateEdge {
                    from: pair[0].0 as usize,
                    to: pair[0].1 as usize,
                });
            }
        }
        // A self-edge is a cycle of length one.
        if let Some(&(u, _)) = sorted.iter().find(|&&(u, v)| u == v) {
            return Err(SleadError::CycleFound(vec![u as usize]));
        }
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut succs: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(u, v) in &sorted {
            preds[v as usize].push(u);
            succs[u as usize].push(v);
        }
        let levels = levels_via_kahn(n, &preds, &succs)?;
        Ok(Self {
            dim,
            coords,
            t,
            edges: sorted,
            self_loop,
            preds,
            succs,
            levels,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.self_loop.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn position(&self, v: usize) -> &[f64] {
        &self.coords[v * self.dim..(v + 1) * self.dim]
    }

    pub fn direction(&self) -> &[f64] {
        &self.t
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn predecessors(&self, v: usize) -> &[u32] {
        &self.preds[v]
    }

    pub fn successors(&self, v: usize) -> &[u32] {
        &self.succs[v]
    }

    pub fn level(&self, v: usize) -> u32 {
        self.levels[v]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    fn delta(&self, u: usize, v: usize) -> Vec<f64> {
        self.position(v)
            .iter()
            .zip(self.position(u))
            .map(|(a, b)| a - b)
            .collect()
    }

    /// Vertices reachable from `v` along non-self edges, including `v`
    /// itself, ascending.
    pub fn causal_cone(&self, v: usize) -> Vec<usize> {
        assert!(v < self.num_vertices());
        let mut seen = vec![false; self.num_vertices()];
        let mut stack = vec![v as u32];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for &w in &self.succs[u as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(i, &s)| s.then_some(i))
            .collect()
    }
}

/// Kahn's algorithm; returns levels or a witness cycle.
fn levels_via_kahn(
    n: usize,
    preds: &[Vec<u32>],
    succs: &[Vec<u32>],
) -> Result<Vec<u32>, SleadError> {
    let mut indegree: Vec<u32> = preds.iter().map(|p| p.len() as u32).collect();
    let mut levels = vec![0u32; n];
    let mut queue: Vec<u32> = (0..n as u32).filter(|&v| indegree[v as usize] == 0).collect();
    let mut processed = 0usize;
    let mut head = 0usize;
    while head < queue.len() {
        let v = queue[head] as usize;
        head += 1;
        processed += 1;
        for &w in &succs[v] {
            let w = w as usize;
            levels[w] = levels[w].max(levels[v] + 1);
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push(w as u32);
            }
        }
    }
    if processed == n {
        return Ok(levels);
    }
    // Walk predecessors inside the unprocessed set until a vertex repeats.
    let stuck: Vec<usize> = (0..n).filter(|&v| indegree[v] > 0).collect();
    let mut on_path = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut v = stuck[0];
    loop {
        if on_path[v] != usize::MAX {
            path.drain(..on_path[v]);
            path.reverse();
            return Err(SleadError::CycleFound(path));
        }
        on_path[v] = path.len();
        path.push(v);
        v = *preds[v]
            .iter()
            .find(|&&p| indegree[p as usize] > 0)
            .expect("stuck vertex must have a stuck predecessor") as usize;
    }
}

/// A slead together with its depletion state and check matrix.
#[derive(Debug, Clone)]
pub struct ClassicalCode {
    slead: Slead,
    /// Depleted vertices, ascending.
    depleted: Vec<usize>,
    /// Check matrix: one row per non-depleted vertex (ascending vertex
    /// order), row support = predecessors plus the self-loop.
    h: BinaryMatrix,
}

impl ClassicalCode {
    pub fn new(slead: Slead) -> Self {
        let h = build_check_matrix(&slead, &[]);
        Self {
            slead,
            depleted: Vec::new(),
            h,
        }
    }

    pub fn slead(&self) -> &Slead {
        &self.slead
    }

    pub fn num_bits(&self) -> usize {
        self.slead.num_vertices()
    }

    pub fn num_checks(&self) -> usize {
        self.h.rows()
    }

    pub fn check_matrix(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn depleted(&self) -> &[usize] {
        &self.depleted
    }

    pub fn is_depleted(&self, v: usize) -> bool {
        self.depleted.binary_search(&v).is_ok()
    }

    /// Non-depleted vertices in row order of the check matrix.
    pub fn check_vertices(&self) -> Vec<usize> {
        (0..self.num_bits()).filter(|&v| !self.is_depleted(v)).collect()
    }

    /// Code dimension `k = n - rank(H)`.
    pub fn dimension(&self) -> usize {
        self.num_bits() - self.h.rank()
    }

    /// Remove the check on `v`, keeping its bit. Each depletion of a slead
    /// code raises `k` by exactly one (the full check matrix is invertible,
    /// so any subset of its rows stays independent).
    pub fn deplete(&mut self, v: usize) -> Result<(), SleadError> {
        if v >= self.num_bits() {
            return Err(SleadError::VertexOutOfRange(v));
        }
        match self.depleted.binary_search(&v) {
            Ok(_) => return Err(SleadError::AlreadyDepleted(v)),
            Err(pos) => self.depleted.insert(pos, v),
        }
        self.h = build_check_matrix(&self.slead, &self.depleted);
        Ok(())
    }

    /// The codeword opened by depleting `v`: flip the bit on `v`, then sweep
    /// the vertices in increasing topological level (index order within a
    /// level), flipping the co-located bit of every violated check. The
    /// result satisfies all remaining checks and is supported inside the
    /// causal cone of `v`.
    pub fn codeword(&self, v: usize) -> Result<BitVector, SleadError> {
        if v >= self.num_bits() {
            return Err(SleadError::VertexOutOfRange(v));
        }
        if !self.is_depleted(v) {
            return Err(SleadError::NotDepleted(v));
        }
        let n = self.num_bits();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&u| (self.slead.level(u), u));
        let mut w = BitVector::zeros(n);
        w.set(v, true);
        for u in order {
            if self.is_depleted(u) {
                continue;
            }
            let mut parity = w.get(u);
            for &p in self.slead.predecessors(u) {
                parity ^= w.get(p as usize);
            }
            if parity {
                w.flip(u);
            }
        }
        debug_assert!(self.h.mul_vector(&w).is_zero());
        Ok(w)
    }

    /// Whether `c` leaves every original (pre-depletion) check satisfied,
    /// except possibly the depleted ones. This is the stopping-set property
    /// that coring relies on: the codeword looks like a valid configuration
    /// to every surviving check.
    pub fn stopping_set_check(&self, c: &BitVector) -> bool {
        assert_eq!(c.len(), self.num_bits());
        for u in 0..self.num_bits() {
            if self.is_depleted(u) {
                continue;
            }
            let mut parity = c.get(u);
            for &p in self.slead.predecessors(u) {
                parity ^= c.get(p as usize);
            }
            if parity {
                return false;
            }
        }
        true
    }

    /// Replace every edge longer than `radius` by a chain of repetition-check
    /// vertices placed uniformly on the straight segment (consecutive
    /// spacing at most `radius`). Preserves the code dimension: each new
    /// vertex brings one bit and one degree-2 check that copies its
    /// predecessor's bit forward.
    pub fn mediate_edges(&self, radius: f64) -> Result<ClassicalCode, SleadError> {
        if !(radius > 0.0) {
            return Err(SleadError::BadRadius(radius));
        }
        let s = &self.slead;
        let dim = s.dim();
        let mut positions: Vec<Vec<f64>> =
            (0..s.num_vertices()).map(|v| s.position(v).to_vec()).collect();
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(s.edges().len());
        for &(u, v) in s.edges() {
            let (u, v) = (u as usize, v as usize);
            let len = math::distance(s.position(u), s.position(v));
            if len <= radius {
                edges.push((u, v));
                continue;
            }
            let hops = (len / radius) as usize + usize::from(len % radius != 0.0) - 1;
            // `hops` interior vertices split the edge into hops+1 pieces.
            let pieces = hops + 1;
            let mut prev = u;
            for i in 1..=hops {
                let frac = i as f64 / pieces as f64;
                let p: Vec<f64> = (0..dim)
                    .map(|d| s.position(u)[d] + frac * (s.position(v)[d] - s.position(u)[d]))
                    .collect();
                let idx = positions.len();
                positions.push(p);
                edges.push((prev, idx));
                prev = idx;
            }
            edges.push((prev, v));
        }
        let n_new = positions.len();
        let slead = Slead::new(positions, s.direction().to_vec(), &edges, vec![true; n_new])?;
        let mut code = ClassicalCode::new(slead);
        for &d in &self.depleted {
            code.deplete(d)?;
        }
        Ok(code)
    }
}

fn build_check_matrix(slead: &Slead, depleted: &[usize]) -> BinaryMatrix {
    let n = slead.num_vertices();
    let supports: Vec<Vec<usize>> = (0..n)
        .filter(|v| depleted.binary_search(v).is_err())
        .map(|v| {
            let mut s: Vec<usize> =
                slead.predecessors(v).iter().map(|&p| p as usize).collect();
            s.push(v);
            s
        })
        .collect();
    BinaryMatrix::from_supports(supports.len(), n, &supports)
}

/// Chain code on `n` bits: vertex `i` at position `(i, 0)`, edges
/// `i -> i+1`, so every check reads a bit and its left neighbour. Depleting
/// vertex 0 opens the all-ones codeword (a repetition code).
pub fn repetition_chain(n: usize) -> ClassicalCode {
    assert!(n >= 1);
    let positions: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64, 0.0]).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let slead = Slead::new(positions, vec![1.0, 0.0], &edges, vec![true; n])
        .expect("chain is a valid slead");
    ClassicalCode::new(slead)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Seven-vertex fixture used throughout: checks
    /// {0}, {0,1}, {1,2}, {1,3,5}, {0,2,4}, {2,4,5}, {3,5,6}.
    pub(crate) fn seven_vertex_fixture() -> ClassicalCode {
        let edges = [
            (0, 1),
            (1, 2),
            (1, 3),
            (5, 3),
            (0, 4),
            (2, 4),
            (2, 5),
            (4, 5),
            (3, 6),
            (5, 6),
        ];
        ClassicalCode::new(Slead::from_edges(7, &edges).unwrap())
    }

    #[test]
    fn fixture_check_supports() {
        let code = seven_vertex_fixture();
        let expected: [&[usize]; 7] = [
            &[0],
            &[0, 1],
            &[1, 2],
            &[1, 3, 5],
            &[0, 2, 4],
            &[2, 4, 5],
            &[3, 5, 6],
        ];
        for (row, want) in expected.iter().enumerate() {
            assert_eq!(code.check_matrix().row_support(row), *want, "check {row}");
        }
    }

    #[test]
    fn undepleted_fixture_has_full_rank() {
        let code = seven_vertex_fixture();
        assert_eq!(code.check_matrix().rank(), 7);
        assert_eq!(code.dimension(), 0);
    }

    #[test]
    fn depleting_source_opens_expected_codeword() {
        let mut code = seven_vertex_fixture();
        code.deplete(0).unwrap();
        assert_eq!(code.dimension(), 1);
        let kernel = code.check_matrix().kernel_basis();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0].support(), vec![0, 1, 2, 5, 6]);
        assert_eq!(code.codeword(0).unwrap(), kernel[0]);
    }

    #[test]
    fn deplete_twice_errors() {
        let mut code = seven_vertex_fixture();
        code.deplete(3).unwrap();
        assert_eq!(code.deplete(3), Err(SleadError::AlreadyDepleted(3)));
    }

    #[test]
    fn codeword_requires_depletion() {
        let code = seven_vertex_fixture();
        assert_eq!(code.codeword(2), Err(SleadError::NotDepleted(2)));
    }

    #[test]
    fn cycle_is_reported_with_witness() {
        // 2 -> 4 -> 5 -> 2 closes a cycle.
        let edges = [(0, 1), (2, 4), (4, 5), (5, 2)];
        let err = Slead::from_edges(6, &edges).unwrap_err();
        match err {
            SleadError::CycleFound(cycle) => {
                assert_eq!(cycle.len(), 3);
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, vec![2, 4, 5]);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn missing_self_loop_rejected() {
        let positions = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        let err = Slead::new(
            positions,
            vec![1.0, 0.0],
            &[(0, 1)],
            vec![true, false],
        )
        .unwrap_err();
        assert_eq!(err, SleadError::MissingSelfLoop(1));
    }

    #[test]
    fn half_space_tie_rejected() {
        // Both vertices at the same seam coordinate: dot = 0 must fail.
        let positions = vec![vec![0.0, 0.0], vec![0.0, 1.0]];
        let err = Slead::new(positions, vec![1.0, 0.0], &[(0, 1)], vec![true; 2]).unwrap_err();
        assert!(matches!(err, SleadError::HalfSpaceViolation { from: 0, to: 1, .. }));
    }

    #[test]
    fn levels_are_longest_paths() {
        let code = seven_vertex_fixture();
        let s = code.slead();
        assert_eq!(
            (0..7).map(|v| s.level(v)).collect::<Vec<_>>(),
            vec![0, 1, 2, 5, 3, 4, 6]
        );
    }

    #[test]
    fn causal_cone_of_fixture_source() {
        let code = seven_vertex_fixture();
        assert_eq!(code.slead().causal_cone(0), vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(code.slead().causal_cone(6), vec![6]);
        assert_eq!(code.slead().causal_cone(3), vec![3, 6]);
    }

    #[test]
    fn codeword_stays_inside_causal_cone() {
        let mut code = seven_vertex_fixture();
        code.deplete(1).unwrap();
        let w = code.codeword(1).unwrap();
        let cone = code.slead().causal_cone(1);
        for v in w.support() {
            assert!(cone.contains(&v), "support vertex {v} outside cone");
        }
        // No vertex at or below the depleted vertex's level participates,
        // except the depleted vertex itself.
        let p = code.slead().level(1);
        for v in w.support() {
            assert!(v == 1 || code.slead().level(v) > p);
        }
    }

    #[test]
    fn stopping_set_accepts_codeword_rejects_others() {
        let mut code = seven_vertex_fixture();
        code.deplete(0).unwrap();
        let w = code.codeword(0).unwrap();
        assert!(code.stopping_set_check(&w));
        let mut bad = w.clone();
        bad.flip(6);
        assert!(!code.stopping_set_check(&bad));
    }

    #[test]
    fn repetition_chain_code() {
        let mut code = repetition_chain(5);
        assert_eq!(code.dimension(), 0);
        code.deplete(0).unwrap();
        assert_eq!(code.dimension(), 1);
        assert_eq!(code.codeword(0).unwrap().weight(), 5);
    }

    #[test]
    fn mediation_splits_long_edges_and_preserves_k() {
        // Chain with one stretched edge.
        let positions = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![4.0, 0.0]];
        let edges = [(0, 1), (1, 2)];
        let slead = Slead::new(positions, vec![1.0, 0.0], &edges, vec![true; 3]).unwrap();
        let mut code = ClassicalCode::new(slead);
        code.deplete(0).unwrap();
        let before = code.codeword(0).unwrap();
        assert_eq!(before.weight(), 3);

        let mediated = code.mediate_edges(1.0).unwrap();
        // Edge of length 3 needs 2 interior vertices.
        assert_eq!(mediated.num_bits(), 5);
        assert_eq!(mediated.dimension(), 1);
        let after = mediated.codeword(0).unwrap();
        assert_eq!(after.weight(), 5);
        // With the source check depleted, every surviving check reads
        // exactly two bits: a vertex and its predecessor on the chain.
        for r in 0..mediated.check_matrix().rows() {
            assert_eq!(mediated.check_matrix().row_support(r).len(), 2);
        }
        // Spacing never exceeds the radius.
        let s = mediated.slead();
        for &(u, v) in s.edges() {
            let len = crate::math::distance(s.position(u as usize), s.position(v as usize));
            assert!(len <= 1.0 + 1e-12, "edge ({u},{v}) has length {len}");
        }
    }

    #[test]
    fn mediation_rejects_bad_radius() {
        let code = repetition_chain(3);
        assert!(matches!(code.mediate_edges(0.0), Err(SleadError::BadRadius(_))));
    }

    #[test]
    fn short_edges_untouched_by_mediation() {
        let code = repetition_chain(4);
        let mediated = code.mediate_edges(2.0).unwrap();
        assert_eq!(mediated.num_bits(), 4);
        assert_eq!(mediated.slead().edges(), code.slead().edges());
    }
}
