//! Pinwheel tilings as a slead family, with exact integer geometry.
//!
//! The pinwheel substitution splits a 1:2:sqrt(5) right triangle into five
//! half-size copies rotated by an angle with irrational ratio to pi, so the
//! tilings it generates have tile orientations that never repeat. That
//! aperiodicity is what the slead construction inherits: one vertex per tile
//! at the incenter, one edge per shared boundary segment, directed along the
//! fixed seam `t = (-1, -1)` so all paths drain toward the lower-left.
//!
//! Coordinates stay exact throughout. Each substitution round multiplies the
//! global scale by ten, so child vertices are integer combinations of parent
//! vertices; adjacency is decided by exact segment overlap on shared support
//! lines; and the edge orientation comes from comparing incenter projections
//! in the ring Z[sqrt(5)], where ties are genuinely impossible rather than
//! merely unlikely. Floating point appears only in the published vertex
//! positions, normalized to the unit square.
//!
//! Triangles are stored by their canonical vertex triple `(R, L, S)`: the
//! right-angle vertex, the far end of the long leg, and the far end of the
//! short leg.

use crate::slead::{ClassicalCode, Slead, SleadError};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest substitution round count the exact arithmetic supports: at
/// eighteen rounds the incenter comparator's `5 p^2` products would exceed
/// `i128`.
pub const MAX_ROUNDS: u32 = 17;

type Point = [i64; 2];

/// One tile: right-angle vertex, long-leg end, short-leg end, and the child
/// label (1 to 5) it received from its last substitution. Prototiles carry
/// their square-quadrant index instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tile {
    pub r: Point,
    pub l: Point,
    pub s: Point,
    pub label: u8,
}

/// Barycentric weights (tenths) of each child vertex in the parent frame.
/// Row per child, then weights of the child's R, L, S as combinations of
/// the parent's (R, L, S).
const CHILD_WEIGHTS: [[[i64; 3]; 3]; 5] = [
    [[0, 2, 8], [10, 0, 0], [0, 0, 10]],
    [[5, 1, 4], [5, 5, 0], [10, 0, 0]],
    [[0, 6, 4], [0, 10, 0], [5, 5, 0]],
    [[5, 5, 0], [5, 1, 4], [0, 6, 4]],
    [[0, 2, 8], [0, 6, 4], [5, 1, 4]],
];

impl Tile {
    fn combine(&self, w: [i64; 3]) -> Point {
        [
            w[0] * self.r[0] + w[1] * self.l[0] + w[2] * self.s[0],
            w[0] * self.r[1] + w[1] * self.l[1] + w[2] * self.s[1],
        ]
    }

    /// The five children at ten times the parent scale.
    pub fn children(&self) -> [Tile; 5] {
        core::array::from_fn(|i| Tile {
            r: self.combine(CHILD_WEIGHTS[i][0]),
            l: self.combine(CHILD_WEIGHTS[i][1]),
            s: self.combine(CHILD_WEIGHTS[i][2]),
            label: i as u8 + 1,
        })
    }

    fn scaled(&self) -> Tile {
        let ten = |p: Point| [p[0] * 10, p[1] * 10];
        Tile {
            r: ten(self.r),
            l: ten(self.l),
            s: ten(self.s),
            label: self.label,
        }
    }

    /// Twice the signed area; the sign records the tile's chirality.
    pub fn double_signed_area(&self) -> i128 {
        let u = [self.l[0] - self.r[0], self.l[1] - self.r[1]];
        let v = [self.s[0] - self.r[0], self.s[1] - self.r[1]];
        u[0] as i128 * v[1] as i128 - u[1] as i128 * v[0] as i128
    }

    fn edges(&self) -> [(Point, Point); 3] {
        [(self.r, self.l), (self.r, self.s), (self.l, self.s)]
    }

    /// Incenter projection onto an integer direction `t`, as `(p, q)`
    /// meaning `sqrt(5) p + q` up to the positive factor shared by all
    /// tiles.
    fn incenter_key(&self, t: [i64; 2]) -> (i128, i128) {
        let dot = |v: Point| t[0] as i128 * v[0] as i128 + t[1] as i128 * v[1] as i128;
        let p = dot(self.r);
        let q = dot(self.l) + 2 * dot(self.s);
        (p, q)
    }

    /// Incenter in tiling coordinates.
    pub fn incenter(&self) -> [f64; 2] {
        let sqrt5 = crate::math::sqrt(5.0);
        let denom = 3.0 + sqrt5;
        core::array::from_fn(|i| {
            (sqrt5 * self.r[i] as f64 + self.l[i] as f64 + 2.0 * self.s[i] as f64) / denom
        })
    }
}

/// Which label classes an incomplete round substitutes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubstitutionOrder {
    #[default]
    A,
    B,
}

impl SubstitutionOrder {
    /// Label sequence consumed by partial substitution steps.
    pub fn labels(self) -> [u8; 5] {
        match self {
            SubstitutionOrder::A => [1, 2, 3, 4, 5],
            SubstitutionOrder::B => [2, 4, 3, 1, 5],
        }
    }
}

impl fmt::Display for SubstitutionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstitutionOrder::A => f.write_str("A"),
            SubstitutionOrder::B => f.write_str("B"),
        }
    }
}

/// Generation counter: `full` complete rounds plus a partial round covering
/// the first `partial` label classes of the substitution order. Five partial
/// steps make a full round, so `(g, 5)` normalizes to `(g + 1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generation {
    full: u32,
    partial: u8,
}

impl Generation {
    pub fn new(full: u32, partial: u32) -> Self {
        Self {
            full: full + partial / 5,
            partial: (partial % 5) as u8,
        }
    }

    pub fn full(&self) -> u32 {
        self.full
    }

    pub fn partial(&self) -> u8 {
        self.partial
    }

    /// Substitution rounds performed, counting a partial round as one.
    pub fn rounds(&self) -> u32 {
        self.full + u32::from(self.partial > 0)
    }
}

impl fmt::Display for Generation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.full, self.partial)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PinwheelError {
    /// The generation needs more substitution rounds than the exact
    /// arithmetic supports.
    TooManyRounds { requested: u32 },
    /// The seam direction is zero or too large for exact comparisons.
    BadSeam([i64; 2]),
    /// The tiling produced an invalid slead; indicates a geometry bug.
    BadSlead(SleadError),
}

impl fmt::Display for PinwheelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PinwheelError::TooManyRounds { requested } => {
                write!(f, "{requested} substitution rounds exceed the exact limit of {MAX_ROUNDS}")
            }
            PinwheelError::BadSeam(t) => {
                write!(f, "seam direction ({}, {}) is zero or too large", t[0], t[1])
            }
            PinwheelError::BadSlead(e) => write!(f, "tiling produced an invalid slead: {e}"),
        }
    }
}

impl core::error::Error for PinwheelError {}

/// A pinwheel tiling of the square, built by exact substitution.
#[derive(Debug, Clone)]
pub struct PinwheelTiling {
    tiles: Vec<Tile>,
    generation: Generation,
    order: SubstitutionOrder,
}

/// The four prototiles splitting `[0, 2]^2` with half-turn symmetry.
fn prototiles() -> Vec<Tile> {
    vec![
        Tile { r: [2, 0], l: [0, 0], s: [2, 1], label: 1 },
        Tile { r: [0, 1], l: [2, 1], s: [0, 0], label: 2 },
        Tile { r: [0, 2], l: [2, 2], s: [0, 1], label: 3 },
        Tile { r: [2, 1], l: [0, 1], s: [2, 2], label: 4 },
    ]
}

fn advance(tiles: &[Tile], substitute: &[u8]) -> Vec<Tile> {
    let mut next = Vec::with_capacity(tiles.len() * 5);
    for tile in tiles {
        if substitute.contains(&tile.label) {
            next.extend_from_slice(&tile.children());
        } else {
            next.push(tile.scaled());
        }
    }
    next
}

impl PinwheelTiling {
    pub fn new(generation: Generation, order: SubstitutionOrder) -> Result<Self, PinwheelError> {
        let rounds = generation.rounds();
        if rounds > MAX_ROUNDS {
            return Err(PinwheelError::TooManyRounds { requested: rounds });
        }
        let mut tiles = prototiles();
        for _ in 0..generation.full {
            tiles = advance(&tiles, &[1, 2, 3, 4, 5]);
        }
        if generation.partial > 0 {
            let labels = order.labels();
            tiles = advance(&tiles, &labels[..generation.partial as usize]);
        }
        Ok(Self { tiles, generation, order })
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn num_tiles(&self) -> usize {
        self.tiles.len()
    }

    pub fn generation(&self) -> Generation {
        self.generation
    }

    pub fn order(&self) -> SubstitutionOrder {
        self.order
    }

    /// Global coordinate scale: the square spans `[0, 2 * scale]^2`.
    pub fn scale(&self) -> i64 {
        10i64.pow(self.generation.rounds())
    }

    /// Incenter of tile `i`, normalized to the unit square.
    pub fn normalized_incenter(&self, i: usize) -> [f64; 2] {
        let side = 2.0 * self.scale() as f64;
        let c = self.tiles[i].incenter();
        [c[0] / side, c[1] / side]
    }

    /// Unordered pairs of tiles sharing a boundary segment of positive
    /// length, decided by exact interval overlap on the shared support line.
    pub fn adjacency(&self) -> Vec<(usize, usize)> {
        // Segments grouped by their supporting line. The key is the reduced
        // normal and offset; the interval is the segment's projection onto
        // the reduced direction.
        let mut lines: BTreeMap<(i64, i64, i128), Vec<(u32, i128, i128)>> = BTreeMap::new();
        for (index, tile) in self.tiles.iter().enumerate() {
            for (a, b) in tile.edges() {
                let (key, lo, hi) = line_key_and_span(a, b);
                lines.entry(key).or_default().push((index as u32, lo, hi));
            }
        }
        let mut pairs = Vec::new();
        for segments in lines.values_mut() {
            segments.sort_unstable_by_key(|&(_, lo, _)| lo);
            for i in 0..segments.len() {
                let (ti, _, hi_i) = segments[i];
                for &(tj, lo_j, _) in &segments[i + 1..] {
                    if lo_j >= hi_i {
                        break;
                    }
                    pairs.push((ti.min(tj) as usize, ti.max(tj) as usize));
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// Directed slead edges for the seam direction `t`: every edge advances
    /// strictly along `t` when incenters are compared exactly; adjacent
    /// pairs whose incenters tie on `t` get no edge.
    ///
    /// # Panics
    ///
    /// Panics when `t` is rejected by [`validate_seam`].
    pub fn slead_edges(&self, t: [i64; 2]) -> Vec<(usize, usize)> {
        let t = validate_seam(t).expect("seam direction");
        let keys: Vec<(i128, i128)> =
            self.tiles.iter().map(|tile| tile.incenter_key(t)).collect();
        self.adjacency()
            .into_iter()
            .filter_map(|(i, j)| {
                match compare_sqrt5(
                    keys[j].0 - keys[i].0,
                    keys[j].1 - keys[i].1,
                ) {
                    core::cmp::Ordering::Greater => Some((i, j)),
                    core::cmp::Ordering::Less => Some((j, i)),
                    core::cmp::Ordering::Equal => None,
                }
            })
            .collect()
    }

    /// The slead over this tiling: vertices at normalized incenters, edges
    /// oriented along the seam `t`.
    pub fn slead(&self, t: [i64; 2]) -> Result<Slead, PinwheelError> {
        let t = validate_seam(t)?;
        let positions: Vec<Vec<f64>> = (0..self.num_tiles())
            .map(|i| self.normalized_incenter(i).to_vec())
            .collect();
        let edges = self.slead_edges(t);
        Slead::new(
            positions,
            vec![t[0] as f64, t[1] as f64],
            &edges,
            vec![true; self.num_tiles()],
        )
        .map_err(PinwheelError::BadSlead)
    }
}

/// Checks and canonicalizes a seam direction: rejects zero, divides out the
/// gcd, and bounds the reduced magnitude so the exact `sqrt(5)` comparison
/// cannot overflow `i128` at the maximum round count.
pub fn validate_seam(t: [i64; 2]) -> Result<[i64; 2], PinwheelError> {
    if t == [0, 0] {
        return Err(PinwheelError::BadSeam(t));
    }
    let g = gcd(t[0].unsigned_abs(), t[1].unsigned_abs()) as i64;
    let reduced = [t[0] / g, t[1] / g];
    if reduced[0].abs() + reduced[1].abs() > 8 {
        return Err(PinwheelError::BadSeam(t));
    }
    Ok(reduced)
}

/// Sign of `sqrt(5) * p + q`, exactly. Zero only at `p = q = 0`.
fn compare_sqrt5(p: i128, q: i128) -> core::cmp::Ordering {
    use core::cmp::Ordering;
    match (p.signum(), q.signum()) {
        (0, s) | (s, 0) if p == 0 || q == 0 => match s {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        },
        (1, 1) => Ordering::Greater,
        (-1, -1) => Ordering::Less,
        (ps, _) => {
            // Opposite signs: |sqrt(5) p| vs |q| decides.
            let five_p2 = 5 * p * p;
            let q2 = q * q;
            if five_p2 > q2 {
                if ps > 0 { Ordering::Greater } else { Ordering::Less }
            } else if five_p2 < q2 {
                if ps > 0 { Ordering::Less } else { Ordering::Greater }
            } else {
                unreachable!("sqrt(5) is irrational; 5p^2 = q^2 forces p = q = 0")
            }
        }
    }
}

/// Supporting-line key (reduced normal and offset) and the segment's exact
/// projection interval on the reduced direction.
fn line_key_and_span(a: Point, b: Point) -> ((i64, i64, i128), i128, i128) {
    let mut dx = b[0] - a[0];
    let mut dy = b[1] - a[1];
    let g = gcd(dx.unsigned_abs(), dy.unsigned_abs()) as i64;
    dx /= g;
    dy /= g;
    if dx < 0 || (dx == 0 && dy < 0) {
        dx = -dx;
        dy = -dy;
    }
    let normal = (-dy, dx);
    let offset = normal.0 as i128 * a[0] as i128 + normal.1 as i128 * a[1] as i128;
    let ta = dx as i128 * a[0] as i128 + dy as i128 * a[1] as i128;
    let tb = dx as i128 * b[0] as i128 + dy as i128 * b[1] as i128;
    ((normal.0, normal.1, offset), ta.min(tb), ta.max(tb))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Parameters for building a pinwheel memory code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinwheelParams {
    pub generation: Generation,
    pub order: SubstitutionOrder,
    /// Seam direction the slead edges advance along.
    pub t: [i64; 2],
    /// Target exponent for the depletion site: the site is sought near the
    /// diagonal point at distance `L^(nu - 1)` from the origin, where
    /// `L = sqrt(num_tiles)` is the linear system size.
    pub nu: f64,
}

impl Default for PinwheelParams {
    fn default() -> Self {
        Self {
            generation: Generation::new(1, 0),
            order: SubstitutionOrder::A,
            t: [-1, -1],
            nu: 0.6,
        }
    }
}

/// A depleted pinwheel slead code, with the tiling it came from.
#[derive(Debug, Clone)]
pub struct PinwheelCode {
    pub code: ClassicalCode,
    /// The depleted vertex (tile index).
    pub depleted: usize,
    pub tiling: PinwheelTiling,
}

/// Build the pinwheel code for the given parameters: tile, wire the slead,
/// then deplete the best site near the diagonal target point.
///
/// Site selection: among the six vertices closest to the target, deplete the
/// one whose codeword has the largest support; ties go to the lowest index.
/// That keeps the choice deterministic and steers it away from vertices
/// whose causal cone is accidentally shallow.
pub fn build_code(params: &PinwheelParams) -> Result<PinwheelCode, PinwheelError> {
    let tiling = PinwheelTiling::new(params.generation, params.order)?;
    let slead = tiling.slead(params.t)?;
    let n = slead.num_vertices();
    let linear_size = crate::math::sqrt(n as f64);
    let h = crate::math::powf(linear_size, params.nu - 1.0) / crate::math::sqrt(2.0);
    let target = [h, h];

    let mut by_distance: Vec<usize> = (0..n).collect();
    let dist2 = |v: usize| {
        let p = slead.position(v);
        let dx = p[0] - target[0];
        let dy = p[1] - target[1];
        dx * dx + dy * dy
    };
    by_distance.sort_by(|&a, &b| {
        dist2(a)
            .partial_cmp(&dist2(b))
            .expect("positions are finite")
            .then(a.cmp(&b))
    });

    let base = ClassicalCode::new(slead);
    let mut best: Option<(usize, usize)> = None;
    for &v in by_distance.iter().take(6) {
        let mut candidate = base.clone();
        candidate.deplete(v).expect("fresh code has no depletions");
        let weight = candidate
            .codeword(v)
            .expect("depleted vertex has a codeword")
            .weight();
        let better = match best {
            None => true,
            Some((best_weight, best_vertex)) => {
                weight > best_weight || (weight == best_weight && v < best_vertex)
            }
        };
        if better {
            best = Some((weight, v));
        }
    }
    let (_, depleted) = best.expect("tiling has at least one tile");
    let mut code = base;
    code.deplete(depleted).expect("fresh code has no depletions");
    Ok(PinwheelCode { code, depleted, tiling })
}
