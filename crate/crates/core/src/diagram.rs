//! Oriented link diagrams in PD form, Seifert circles and the signed
//! Seifert graph, blocks, nesting, and the homogeneity predicates.
//!
//! A PD entry `[a, b, c, d]` lists the four edge labels around a crossing
//! in rotation order, starting from the incoming under-edge `a`; `c` is the
//! outgoing under-edge. The crossing is positive when the over strand runs
//! from `b` to `d` (so `d` is the successor of `b`), negative when it runs
//! from `d` to `b`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{self, BlockDecomposition, UnionFind};
use crate::word::Sign;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    crossings: Vec<[usize; 4]>,
    #[serde(default)]
    unknots: usize,
}

/// Position of a label occurrence: (crossing index, slot 0..4).
pub type Slot = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub valid: bool,
    /// Name of the first violated rule, if any.
    pub rule: Option<String>,
    pub detail: Option<String>,
}

/// Orientation data recovered from the labels.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub signs: Vec<Sign>,
    /// Slot (1 or 3) where the over strand enters, per crossing.
    pub over_in: Vec<usize>,
    /// For each label (index 0 unused): [tail, head] occurrences.
    pub ends: Vec<[Slot; 2]>,
    /// Link components as label sequences in traversal order.
    pub components: Vec<Vec<usize>>,
    /// Connected piece of the underlying 4-valent graph, per crossing.
    pub piece_of_crossing: Vec<usize>,
    pub pieces: usize,
}

impl Analysis {
    pub fn diagram_components(&self) -> usize {
        self.pieces
    }
}

impl Diagram {
    pub fn new(crossings: Vec<[usize; 4]>, unknots: usize) -> Self {
        Diagram { crossings, unknots }
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn unknots(&self) -> usize {
        self.unknots
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("diagram json: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn validate(&self) -> Validation {
        match self.analyze() {
            Ok(_) => Validation { valid: true, rule: None, detail: None },
            Err(Error::Invalid(msg)) => {
                let (rule, detail) = msg.split_once(": ").map(|(a, b)| (a.to_string(), b.to_string())).unwrap_or((msg.clone(), msg));
                Validation { valid: false, rule: Some(rule), detail: Some(detail) }
            }
            Err(e) => Validation { valid: false, rule: Some("internal".into()), detail: Some(e.to_string()) },
        }
    }

    /// Check the invariants and recover orientations and signs.
    pub fn analyze(&self) -> Result<Analysis, Error> {
        let c = self.crossings.len();
        let labels = 2 * c;
        let mut occ: Vec<Vec<Slot>> = vec![Vec::new(); labels + 1];
        for (i, x) in self.crossings.iter().enumerate() {
            for (s, &l) in x.iter().enumerate() {
                if l == 0 || l > labels {
                    return Err(Error::invalid(format!(
                        "label range: label {l} at crossing {i} outside 1..={labels}"
                    )));
                }
                occ[l].push((i, s));
            }
        }
        for (l, o) in occ.iter().enumerate().skip(1) {
            if o.len() != 2 {
                return Err(Error::invalid(format!("arc multiplicity: label {l} occurs {} times", o.len())));
            }
        }
        // head[c][s]: Some(true) if the edge at this slot enters the crossing.
        let mut head: Vec<[Option<bool>; 4]> = vec![[None; 4]; c];
        let mut queue: Vec<Slot> = Vec::new();
        let set = |head: &mut Vec<[Option<bool>; 4]>, queue: &mut Vec<Slot>, (ci, s): Slot, v: bool| -> Result<(), Error> {
            match head[ci][s] {
                Some(old) if old != v => Err(Error::invalid(format!(
                    "orientation: inconsistent direction at crossing {ci} slot {s}"
                ))),
                Some(_) => Ok(()),
                None => {
                    head[ci][s] = Some(v);
                    queue.push((ci, s));
                    Ok(())
                }
            }
        };
        for i in 0..c {
            set(&mut head, &mut queue, (i, 0), true)?;
            set(&mut head, &mut queue, (i, 2), false)?;
        }
        let mut seed = 0;
        loop {
            while let Some((ci, s)) = queue.pop() {
                let v = head[ci][s].unwrap();
                let l = self.crossings[ci][s];
                let other = if occ[l][0] == (ci, s) { occ[l][1] } else { occ[l][0] };
                set(&mut head, &mut queue, other, !v)?;
                set(&mut head, &mut queue, (ci, s ^ 2), !v)?;
            }
            // Components passing only over crossings: orient along labels.
            while seed < c && head[seed][1].is_some() {
                seed += 1;
            }
            if seed == c {
                break;
            }
            let b = self.crossings[seed][1];
            let d = self.crossings[seed][3];
            let forward = d == b + 1 || (b != d + 1);
            set(&mut head, &mut queue, (seed, 1), forward)?;
        }
        let mut ends = vec![[(0usize, 0usize); 2]; labels + 1];
        for l in 1..=labels {
            let (p, q) = (occ[l][0], occ[l][1]);
            let p_head = head[p.0][p.1].unwrap();
            ends[l] = if p_head { [q, p] } else { [p, q] };
        }
        let over_in: Vec<usize> = (0..c).map(|i| if head[i][1] == Some(true) { 1 } else { 3 }).collect();
        let signs: Vec<Sign> = over_in.iter().map(|&h| if h == 1 { 1 } else { -1 }).collect();
        // Components: follow each label through its head crossing.
        let next = |l: usize| -> usize {
            let (ci, s) = ends[l][1];
            self.crossings[ci][s ^ 2]
        };
        let mut seen = vec![false; labels + 1];
        let mut components = Vec::new();
        for start in 1..=labels {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut l = start;
            while !seen[l] {
                seen[l] = true;
                comp.push(l);
                l = next(l);
            }
            let lo = *comp.iter().min().unwrap();
            let hi = *comp.iter().max().unwrap();
            if hi - lo + 1 != comp.len() {
                return Err(Error::invalid(format!(
                    "successor: component through label {start} does not use consecutive labels"
                )));
            }
            for &x in &comp {
                let want = if x == hi { lo } else { x + 1 };
                if next(x) != want {
                    return Err(Error::invalid(format!(
                        "successor: label {x} is followed by {} instead of {want}",
                        next(x)
                    )));
                }
            }
            let pos = comp.iter().position(|&x| x == lo).unwrap();
            comp.rotate_left(pos);
            components.push(comp);
        }
        components.sort();
        let mut uf = UnionFind::new(c.max(1));
        for l in 1..=labels {
            uf.union(occ[l][0].0, occ[l][1].0);
        }
        let mut piece_id = vec![usize::MAX; c];
        let mut pieces = 0;
        let mut piece_of_crossing = vec![0; c];
        for i in 0..c {
            let r = uf.find(i);
            if piece_id[r] == usize::MAX {
                piece_id[r] = pieces;
                pieces += 1;
            }
            piece_of_crossing[i] = piece_id[r];
        }
        Ok(Analysis { signs, over_in, ends, components, piece_of_crossing, pieces })
    }

    /// Number of link components, including split unknots.
    pub fn link_components(&self) -> Result<usize, Error> {
        Ok(self.analyze()?.components.len() + self.unknots)
    }

    pub fn seifert(&self) -> Result<Seifert, Error> {
        Seifert::build(self)
    }

    /// Mirror image: every crossing changes sign.
    pub fn mirror(&self) -> Diagram {
        // Rotating each entry by one slot keeps the edge labels but moves
        // the under strand to the former over strand.
        let a = match self.analyze() {
            Ok(a) => a,
            Err(_) => return self.clone(),
        };
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, x)| {
                // New incoming under-edge is the old incoming over-edge.
                if a.over_in[i] == 1 {
                    [x[1], x[2], x[3], x[0]]
                } else {
                    [x[3], x[0], x[1], x[2]]
                }
            })
            .collect();
        Diagram { crossings, unknots: self.unknots }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circle {
    /// Edge labels along the circle in orientation order.
    pub arcs: Vec<usize>,
    /// Crossings met along the circle, in orientation order.
    pub crossings: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertBand {
    /// Circle through the incoming under-edge.
    pub under: usize,
    /// Circle through the incoming over-edge.
    pub over: usize,
    pub sign: Sign,
    pub crossing: usize,
}

/// Seifert circles with their planar embedding data.
#[derive(Clone, Debug)]
pub struct Seifert {
    pub analysis: Analysis,
    pub circles: Vec<Circle>,
    pub bands: Vec<SeifertBand>,
    /// Region on each side of a circle; `None` for split unknots.
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    /// Region containing each band.
    pub band_region: Vec<usize>,
    pub regions: usize,
    /// Connected piece of each circle (split unknots get their own).
    pub piece_of_circle: Vec<usize>,
    pub pieces: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestingForest {
    /// Parent circle, if nested.
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    /// Region chosen as the outside, per connected piece.
    pub root_region: Vec<Option<usize>>,
}

impl NestingForest {
    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

impl Seifert {
    fn build(d: &Diagram) -> Result<Seifert, Error> {
        let a = d.analyze()?;
        let c = d.crossings.len();
        let labels = 2 * c;
        // Smoothing successor of an edge label.
        let smooth_next = |l: usize| -> usize {
            let (ci, s) = a.ends[l][1];
            let h = a.over_in[ci];
            let out = if s == 0 { h ^ 2 } else { 2 };
            d.crossings[ci][out]
        };
        let mut circle_of = vec![usize::MAX; labels + 1];
        let mut circles = Vec::new();
        for start in 1..=labels {
            if circle_of[start] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut arcs = Vec::new();
            let mut l = start;
            while circle_of[l] == usize::MAX {
                circle_of[l] = id;
                arcs.push(l);
                l = smooth_next(l);
            }
            let crossings = arcs.iter().map(|&x| a.ends[x][1].0).collect();
            circles.push(Circle { arcs, crossings });
        }
        let mut bands = Vec::with_capacity(c);
        for i in 0..c {
            let under = circle_of[d.crossings[i][0]];
            let over = circle_of[d.crossings[i][a.over_in[i]]];
            if under == over {
                return Err(Error::internal(format!("crossing {i} joins a circle to itself")));
            }
            bands.push(SeifertBand { under, over, sign: a.signs[i], crossing: i });
        }
        // Faces by tracing darts: from (c, p) walk the edge, turn to p+1.
        let mut face = vec![[usize::MAX; 4]; c];
        let mut faces = 0;
        let other_end = |ci: usize, s: usize| -> Slot {
            let l = d.crossings[ci][s];
            let [t, h] = a.ends[l];
            if t == (ci, s) {
                h
            } else {
                t
            }
        };
        let mut faces_per_piece = vec![0usize; a.pieces];
        for ci in 0..c {
            for s in 0..4 {
                if face[ci][s] != usize::MAX {
                    continue;
                }
                let (mut x, mut y) = (ci, s);
                while face[x][y] == usize::MAX {
                    face[x][y] = faces;
                    let (x2, y2) = other_end(x, y);
                    x = x2;
                    y = (y2 + 1) % 4;
                }
                faces_per_piece[a.piece_of_crossing[ci]] += 1;
                faces += 1;
            }
        }
        let mut crossings_per_piece = vec![0usize; a.pieces];
        for ci in 0..c {
            crossings_per_piece[a.piece_of_crossing[ci]] += 1;
        }
        for p in 0..a.pieces {
            if faces_per_piece[p] != crossings_per_piece[p] + 2 {
                return Err(Error::invalid(format!(
                    "not a planar diagram: piece {p} has {} crossings and {} faces",
                    crossings_per_piece[p], faces_per_piece[p]
                )));
            }
        }
        // Regions of the plane minus the circles: faces glued across the
        // two corners each smoothing opens up.
        let mut uf = UnionFind::new(faces.max(1));
        let corner = |ci: usize, k: usize| face[ci][(k + 1) % 4];
        for ci in 0..c {
            if a.over_in[ci] == 1 {
                uf.union(corner(ci, 0), corner(ci, 2));
            } else {
                uf.union(corner(ci, 1), corner(ci, 3));
            }
        }
        let mut region_id = vec![usize::MAX; faces];
        let mut regions = 0;
        let mut region_of_face = vec![0; faces];
        for f in 0..faces {
            let r = uf.find(f);
            if region_id[r] == usize::MAX {
                region_id[r] = regions;
                regions += 1;
            }
            region_of_face[f] = region_id[r];
        }
        let band_region: Vec<usize> = (0..c)
            .map(|ci| {
                let k = if a.over_in[ci] == 1 { 0 } else { 1 };
                region_of_face[corner(ci, k)]
            })
            .collect();
        let mut left = Vec::with_capacity(circles.len() + d.unknots);
        let mut right = Vec::with_capacity(circles.len() + d.unknots);
        for (id, circ) in circles.iter().enumerate() {
            let mut l_set = None;
            let mut r_set = None;
            for &l in &circ.arcs {
                let [t, h] = a.ends[l];
                let rf = region_of_face[face[t.0][t.1]];
                let lf = region_of_face[face[h.0][h.1]];
                if l_set.is_some_and(|x| x != lf) || r_set.is_some_and(|x| x != rf) {
                    return Err(Error::internal(format!("circle {id} does not bound consistent regions")));
                }
                l_set = Some(lf);
                r_set = Some(rf);
            }
            if l_set == r_set {
                return Err(Error::internal(format!("circle {id} has the same region on both sides")));
            }
            left.push(l_set);
            right.push(r_set);
        }
        let mut piece_of_circle: Vec<usize> = circles.iter().map(|circ| a.piece_of_crossing[circ.crossings[0]]).collect();
        let mut pieces = a.pieces;
        for _ in 0..d.unknots {
            circles.push(Circle { arcs: Vec::new(), crossings: Vec::new() });
            left.push(None);
            right.push(None);
            piece_of_circle.push(pieces);
            pieces += 1;
        }
        Ok(Seifert { analysis: a, circles, bands, left, right, band_region, regions, piece_of_circle, pieces })
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    /// Seifert graph edges (circle pairs), one per crossing.
    pub fn graph_edges(&self) -> Vec<(usize, usize)> {
        self.bands.iter().map(|b| (b.under, b.over)).collect()
    }

    pub fn blocks(&self) -> BlockDecomposition {
        graph::blocks(self.circle_count(), &self.graph_edges())
    }

    /// Per block: the set of signs occurring in it.
    pub fn block_signs(&self) -> Vec<Vec<Sign>> {
        self.blocks()
            .blocks
            .iter()
            .map(|blk| {
                let mut s: Vec<Sign> = blk.iter().map(|&e| self.bands[e].sign).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.block_signs().iter().all(|s| s.len() <= 1)
    }

    /// Containment forest. On the sphere nesting depends on which region
    /// is taken as the outside; per piece we take the region minimizing the
    /// deepest nesting, preferring regions touching more circles.
    pub fn nesting_forest(&self) -> NestingForest {
        let n = self.circle_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut root_region = vec![None; self.pieces];
        // Region tree adjacency: region -> (circle, other region).
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.regions];
        for ci in 0..n {
            if let (Some(l), Some(r)) = (self.left[ci], self.right[ci]) {
                adj[l].push((ci, r));
                adj[r].push((ci, l));
            }
        }
        let mut region_piece = vec![usize::MAX; self.regions];
        for ci in 0..n {
            for r in [self.left[ci], self.right[ci]].into_iter().flatten() {
                region_piece[r] = self.piece_of_circle[ci];
            }
        }
        for p in 0..self.pieces {
            let cand: Vec<usize> = (0..self.regions).filter(|&r| region_piece[r] == p).collect();
            if cand.is_empty() {
                continue;
            }
            let bfs = |root: usize| -> (Vec<Option<usize>>, Vec<usize>, usize) {
                // Returns per-circle (parent circle, depth) and eccentricity.
                let mut par = vec![None; n];
                let mut dep = vec![0; n];
                let mut dist = vec![usize::MAX; self.regions];
                let mut via = vec![None; self.regions];
                dist[root] = 0;
                let mut q = std::collections::VecDeque::from([root]);
                let mut ecc = 0;
                while let Some(r) = q.pop_front() {
                    for &(ci, r2) in &adj[r] {
                        if dist[r2] == usize::MAX {
                            dist[r2] = dist[r] + 1;
                            via[r2] = Some(ci);
                            par[ci] = via[r];
                            dep[ci] = dist[r];
                            ecc = ecc.max(dist[r]);
                            q.push_back(r2);
                        }
                    }
                }
                (par, dep, ecc)
            };
            let best = cand
                .iter()
                .map(|&r| {
                    let (_, _, ecc) = bfs(r);
                    (ecc, std::cmp::Reverse(adj[r].len()), r)
                })
                .min()
                .unwrap()
                .2;
            let (par, dep, _) = bfs(best);
            for ci in 0..n {
                if self.piece_of_circle[ci] == p {
                    parent[ci] = par[ci];
                    depth[ci] = dep[ci];
                }
            }
            root_region[p] = Some(best);
        }
        NestingForest { parent, depth, root_region }
    }

    pub fn all_one_sign(&self) -> bool {
        self.bands.windows(2).all(|w| w[0].sign == w[1].sign)
    }

    pub fn is_primitive_flat(&self) -> bool {
        self.all_one_sign() && self.nesting_forest().max_depth() == 0
    }

    pub fn report(&self) -> SeifertReport {
        let blocks = self.blocks();
        let signs = self.block_signs();
        SeifertReport {
            circles: self.circle_count(),
            crossings: self.bands.len(),
            bands: self.bands.clone(),
            circle_crossings: self.circles.iter().map(|c| c.crossings.clone()).collect(),
            cut_vertices: blocks.cut_vertices.clone(),
            blocks: blocks
                .blocks
                .iter()
                .zip(signs)
                .map(|(edges, s)| BlockReport { crossings: edges.clone(), signs: s })
                .collect(),
            homogeneous: self.is_homogeneous(),
            nesting: self.nesting_forest(),
            primitive_flat: self.is_primitive_flat(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockReport {
    pub crossings: Vec<usize>,
    pub signs: Vec<Sign>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeifertReport {
    pub circles: usize,
    pub crossings: usize,
    pub bands: Vec<SeifertBand>,
    pub circle_crossings: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    pub blocks: Vec<BlockReport>,
    pub homogeneous: bool,
    pub nesting: NestingForest,
    pub primitive_flat: bool,
}

/// Diagram of the closure of an Artin word, strands drawn left to right
/// and closed around one side. Every strand must be touched by a letter
/// (otherwise it is recorded as a split unknot).
pub fn closed_braid_diagram(w: &crate::word::ArtinWord) -> Result<Diagram, Error> {
    let n = w.strands();
    let letters = w.letters();
    // Each crossing consumes the current edge on two adjacent strands and
    // produces two new edges. Labels are assigned per link component later.
    let mut cur: Vec<usize> = (0..n).collect(); // temporary edge ids
    let mut next_id = n;
    let mut raw: Vec<[usize; 4]> = Vec::new();
    let mut edge_strand_start: Vec<usize> = (0..n).collect();
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        let (in_l, in_r) = (cur[i], cur[i + 1]);
        let (out_l, out_r) = (next_id, next_id + 1);
        next_id += 2;
        edge_strand_start.push(i);
        edge_strand_start.push(i + 1);
        // Strands run upward; positions i (left) and i+1 (right). The strand
        // from bottom-left goes to top-right and vice versa.
        // Rotation order of the four ends: bottom-left, bottom-right,
        // top-right, top-left. Positive letters put the left-to-right strand
        // under, so the entry starts at bottom-left.
        if l > 0 {
            // under: in_l -> out_r ; over: in_r -> out_l
            raw.push([in_l, in_r, out_r, out_l]);
        } else {
            // under: in_r -> out_l ; over: in_l -> out_r
            raw.push([in_r, out_r, out_l, in_l]);
        }
        cur[i] = out_l;
        cur[i + 1] = out_r;
    }
    // Close up: the final edge on each strand is identified with the first.
    let mut alias: Vec<usize> = (0..next_id).collect();
    for (s, &e) in cur.iter().enumerate() {
        alias[e] = s;
    }
    let touched: Vec<bool> = (0..n).map(|s| letters.iter().any(|&l| {
        let i = l.unsigned_abs() as usize;
        i == s + 1 || i == s
    })).collect();
    let raw: Vec<[usize; 4]> = raw.into_iter().map(|x| x.map(|e| alias[e])).collect();
    let unknots = touched.iter().filter(|t| !**t).count();
    if raw.is_empty() {
        return Ok(Diagram::new(Vec::new(), unknots));
    }
    // Relabel edges consecutively along each component.
    let mut succ: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for x in &raw {
        succ.insert(x[0], x[2]);
    }
    for (ci, x) in raw.iter().enumerate() {
        let l = letters[ci];
        if l > 0 {
            succ.insert(x[1], x[3]);
        } else {
            succ.insert(x[3], x[1]);
        }
    }
    Ok(relabel(&raw, &succ, unknots))
}

/// Renumber arbitrary edge ids consecutively along each component, given
/// the successor of every edge.
fn relabel(raw: &[[usize; 4]], succ: &std::collections::HashMap<usize, usize>, unknots: usize) -> Diagram {
    let mut label = std::collections::HashMap::new();
    let mut next_label = 1;
    let mut keys: Vec<usize> = succ.keys().copied().collect();
    keys.sort_unstable();
    for k in keys {
        if label.contains_key(&k) {
            continue;
        }
        let mut e = k;
        while !label.contains_key(&e) {
            label.insert(e, next_label);
            next_label += 1;
            e = succ[&e];
        }
    }
    let crossings = raw.iter().map(|x| x.map(|e| label[&e])).collect();
    Diagram::new(crossings, unknots)
}

/// Connected sum: cut edge `e1` of `d1` and edge `e2` of `d2` and join
/// the loose ends crosswise.
pub fn connected_sum(d1: &Diagram, e1: usize, d2: &Diagram, e2: usize) -> Result<Diagram, Error> {
    let a1 = d1.analyze()?;
    let a2 = d2.analyze()?;
    let off = 2 * d1.crossings.len();
    if e1 == 0 || e1 > off || e2 == 0 || e2 > 2 * d2.crossings.len() {
        return Err(Error::invalid("connected sum: edge label out of range"));
    }
    let mut raw: Vec<[usize; 4]> = d1.crossings.clone();
    raw.extend(d2.crossings.iter().map(|x| x.map(|l| l + off)));
    let c1 = d1.crossings.len();
    let mut heads: Vec<(usize, Slot)> = Vec::new();
    for l in 1..=off {
        heads.push((l, a1.ends[l][1]));
    }
    for l in 1..=2 * d2.crossings.len() {
        let (c, s) = a2.ends[l][1];
        heads.push((l + off, (c + c1, s)));
    }
    let head_of: std::collections::HashMap<usize, Slot> = heads.into_iter().collect();
    let (h1, h2) = (head_of[&e1], head_of[&(e2 + off)]);
    raw[h1.0][h1.1] = e2 + off;
    raw[h2.0][h2.1] = e1;
    let mut succ = std::collections::HashMap::new();
    for (&l, &(c, s)) in &head_of {
        let into = if l == e1 { h2 } else if l == e2 + off { h1 } else { (c, s) };
        succ.insert(l, raw[into.0][into.1 ^ 2]);
    }
    Ok(relabel(&raw, &succ, d1.unknots + d2.unknots))
}
