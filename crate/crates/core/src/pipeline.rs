//! Homogeneous diagram to homogeneous band word.
//!
//! The Seifert graph splits at cut circles into blocks. A block of a
//! homogeneous diagram is single-signed, and all its bands sit in one region
//! `R` adjacent to every circle of the block, so its surface is flat. Each
//! block is laid out as a fence: circles become discs placed left to right,
//! circles with `R` on their left only send bands to the right, the others
//! only receive from the left, and bands are stacked so that every disc
//! meets its bands in the circle's cyclic order and no band passes a disc
//! whose bands lie both above and below it. Blocks are then plumbed along
//! the shared circles.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Seifert};
use crate::error::Error;
use crate::plumbing::{plumb, ShufflePattern};
use crate::word::{Band, BklWord, Sign};

/// Upper bound on circle orders tried per block.
const ORDER_LIMIT: usize = 20_000;
/// Upper bound on search states per circle order.
const STATE_LIMIT: usize = 200_000;

/// A word whose letters remember the crossing they came from, with the
/// disc index of every Seifert circle it contains.
#[derive(Clone, Debug)]
struct Tagged {
    discs: usize,
    letters: Vec<(Band, usize)>,
    disc_of: HashMap<usize, usize>,
}

impl Tagged {
    fn word(&self) -> BklWord {
        BklWord::new(self.discs, self.letters.iter().map(|x| x.0).collect()).expect("valid tagged word")
    }

    /// Cyclically shift disc indices down by one (leftmost goes last).
    fn twirl(&mut self) {
        let n = self.discs;
        let f = |a: usize| if a == 1 { n } else { a - 1 };
        for (b, _) in &mut self.letters {
            let (x, y) = (f(b.r), f(b.s));
            *b = Band::new(x.min(y), x.max(y), b.e);
        }
        for d in self.disc_of.values_mut() {
            *d = f(*d);
        }
    }

    fn twirl_to(&mut self, circle: usize, target: usize) {
        for _ in 0..self.discs {
            if self.disc_of[&circle] == target {
                return;
            }
            self.twirl();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlumbingTree {
    Leaf {
        circles: Vec<usize>,
        crossings: Vec<usize>,
        sign: Sign,
        word: String,
    },
    Joint {
        circle: usize,
        first: Box<PlumbingTree>,
        second: Box<PlumbingTree>,
        pattern: String,
    },
    Split {
        parts: Vec<PlumbingTree>,
    },
}

impl PlumbingTree {
    pub fn leaves(&self) -> usize {
        match self {
            PlumbingTree::Leaf { .. } => 1,
            PlumbingTree::Joint { first, second, .. } => first.leaves() + second.leaves(),
            PlumbingTree::Split { parts } => parts.iter().map(|p| p.leaves()).sum(),
        }
    }

    pub fn joints(&self) -> usize {
        match self {
            PlumbingTree::Leaf { .. } => 0,
            PlumbingTree::Joint { first, second, .. } => 1 + first.joints() + second.joints(),
            PlumbingTree::Split { parts } => parts.iter().map(|p| p.joints()).sum(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Homogenized {
    pub word: BklWord,
    pub tree: PlumbingTree,
}

struct BlockData {
    circles: Vec<usize>,
    crossings: Vec<usize>,
    sign: Sign,
    region: usize,
}

fn block_data(s: &Seifert) -> Result<Vec<BlockData>, Error> {
    let blocks = s.blocks();
    let mut out = Vec::new();
    for edges in &blocks.blocks {
        let sign = s.bands[edges[0]].sign;
        if edges.iter().any(|&e| s.bands[e].sign != sign) {
            return Err(Error::precondition("homogenize", "diagram is not homogeneous"));
        }
        let region = s.band_region[edges[0]];
        if edges.iter().any(|&e| s.band_region[e] != region) {
            return Err(Error::Unsupported("unsupported nesting pattern: block bands in several regions".into()));
        }
        let mut circles: Vec<usize> = edges.iter().flat_map(|&e| [s.bands[e].under, s.bands[e].over]).collect();
        circles.sort_unstable();
        circles.dedup();
        out.push(BlockData { circles, crossings: edges.clone(), sign, region });
    }
    Ok(out)
}

/// Lay out one flat block as a word; letters tagged with crossings.
fn layout_block(s: &Seifert, b: &BlockData) -> Result<Tagged, Error> {
    let m = b.circles.len();
    let local: HashMap<usize, usize> = b.circles.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let in_block: HashSet<usize> = b.crossings.iter().copied().collect();
    // Band ends in local numbering, and each circle's cyclic band order.
    let band_idx: HashMap<usize, usize> = b.crossings.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let ends: Vec<(usize, usize)> =
        b.crossings.iter().map(|&x| (local[&s.bands[x].under], local[&s.bands[x].over])).collect();
    let cyc: Vec<Vec<usize>> = b
        .circles
        .iter()
        .map(|&c| s.circles[c].crossings.iter().filter(|x| in_block.contains(x)).map(|x| band_idx[x]).collect())
        .collect();
    let mut source = vec![false; m];
    for (i, &c) in b.circles.iter().enumerate() {
        if s.left[c] == Some(b.region) {
            source[i] = true;
        } else if s.right[c] != Some(b.region) {
            return Err(Error::internal(format!("circle {c} does not bound the region of its block")));
        }
    }
    for &(u, v) in &ends {
        if source[u] == source[v] {
            return Err(Error::Unsupported("unsupported nesting pattern: band joins two circles of one rotation".into()));
        }
    }
    let orders = circle_orders(m, &ends, &source);
    for order in &orders {
        if let Some(seq) = stack_bands(order, &ends, &cyc) {
            let pos: Vec<usize> = {
                let mut p = vec![0; m];
                for (k, &c) in order.iter().enumerate() {
                    p[c] = k + 1;
                }
                p
            };
            let letters = seq
                .iter()
                .map(|&e| {
                    let (u, v) = ends[e];
                    let (x, y) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
                    (Band::new(x, y, b.sign), b.crossings[e])
                })
                .collect();
            let disc_of = b.circles.iter().enumerate().map(|(i, &c)| (c, pos[i])).collect();
            return Ok(Tagged { discs: m, letters, disc_of });
        }
    }
    Err(Error::Unsupported(format!(
        "no braided layout found for a block with {m} circles and {} crossings",
        b.crossings.len()
    )))
}

/// Linear orders of the circles with every band running from a source on
/// the left to a sink on the right. Orders keeping sources early come first.
fn circle_orders(m: usize, ends: &[(usize, usize)], source: &[bool]) -> Vec<Vec<usize>> {
    let mut preds = vec![Vec::new(); m];
    for &(u, v) in ends {
        let (a, z) = if source[u] { (u, v) } else { (v, u) };
        if !preds[z].contains(&a) {
            preds[z].push(a);
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; m];
    fn rec(
        m: usize,
        preds: &[Vec<usize>],
        source: &[bool],
        cur: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= ORDER_LIMIT {
            return;
        }
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let mut cand: Vec<usize> = (0..m).filter(|&c| !used[c] && preds[c].iter().all(|&p| used[p])).collect();
        cand.sort_by_key(|&c| (!source[c], c));
        for c in cand {
            used[c] = true;
            cur.push(c);
            rec(m, preds, source, cur, used, out);
            cur.pop();
            used[c] = false;
        }
    }
    rec(m, &preds, source, &mut cur, &mut used, &mut out);
    out
}

/// Stack the bands top to bottom for a fixed circle order.
fn stack_bands(order: &[usize], ends: &[(usize, usize)], cyc: &[Vec<usize>]) -> Option<Vec<usize>> {
    let m = order.len();
    let nb = ends.len();
    let mut pos = vec![0; m];
    for (k, &c) in order.iter().enumerate() {
        pos[c] = k;
    }
    let mut at_pos = vec![0; m];
    for (c, &p) in pos.iter().enumerate() {
        at_pos[p] = c;
    }
    let mut index_in = vec![HashMap::new(); m];
    for c in 0..m {
        for (k, &e) in cyc[c].iter().enumerate() {
            index_in[c].insert(e, k);
        }
    }
    struct St<'a> {
        ends: &'a [(usize, usize)],
        cyc: &'a [Vec<usize>],
        pos: Vec<usize>,
        at_pos: Vec<usize>,
        index_in: Vec<HashMap<usize, usize>>,
        placed: Vec<bool>,
        start: Vec<Option<usize>>,
        progress: Vec<usize>,
        seq: Vec<usize>,
        dead: HashSet<(Vec<bool>, Vec<Option<usize>>)>,
        visited: usize,
    }
    impl St<'_> {
        fn ok(&self, e: usize) -> bool {
            let (u, v) = self.ends[e];
            for c in [u, v] {
                if self.progress[c] > 0 {
                    let k = (self.start[c].unwrap() + self.progress[c]) % self.cyc[c].len();
                    if self.cyc[c][k] != e {
                        return false;
                    }
                }
            }
            let (a, b) = (self.pos[u].min(self.pos[v]), self.pos[u].max(self.pos[v]));
            ((a + 1)..b).all(|p| {
                let c = self.at_pos[p];
                self.progress[c] == 0 || self.progress[c] == self.cyc[c].len()
            })
        }

        fn dfs(&mut self) -> Option<bool> {
            if self.seq.len() == self.ends.len() {
                return Some(true);
            }
            self.visited += 1;
            if self.visited > STATE_LIMIT {
                return None;
            }
            let key = (self.placed.clone(), self.start.clone());
            if self.dead.contains(&key) {
                return Some(false);
            }
            for e in 0..self.ends.len() {
                if self.placed[e] || !self.ok(e) {
                    continue;
                }
                let (u, v) = self.ends[e];
                let saved = (self.start[u], self.start[v]);
                for c in [u, v] {
                    if self.progress[c] == 0 {
                        self.start[c] = Some(self.index_in[c][&e]);
                    }
                    self.progress[c] += 1;
                }
                self.placed[e] = true;
                self.seq.push(e);
                match self.dfs() {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                self.seq.pop();
                self.placed[e] = false;
                for c in [u, v] {
                    self.progress[c] -= 1;
                }
                self.start[u] = saved.0;
                self.start[v] = saved.1;
            }
            self.dead.insert(key);
            Some(false)
        }
    }
    let mut st = St {
        ends,
        cyc,
        pos,
        at_pos,
        index_in,
        placed: vec![false; nb],
        start: vec![None; m],
        progress: vec![0; m],
        seq: Vec::new(),
        dead: HashSet::new(),
        visited: 0,
    };
    match st.dfs() {
        Some(true) => Some(st.seq),
        _ => None,
    }
}

/// Plumb `b` onto `w` along circle `v`, interleaving the bands at `v` in
/// the circle's cyclic order. `b_after` puts `b` on the higher-index side.
fn attach(
    s: &Seifert,
    mut w: Tagged,
    mut b: Tagged,
    v: usize,
    b_after: bool,
) -> Result<(Tagged, ShufflePattern), Error> {
    if b_after {
        w.twirl_to(v, w.discs);
        b.twirl_to(v, 1);
    } else {
        w.twirl_to(v, 1);
        b.twirl_to(v, b.discs);
    }
    let in_w: HashSet<usize> = w.letters.iter().map(|x| x.1).collect();
    let in_b: HashSet<usize> = b.letters.iter().map(|x| x.1).collect();
    let order: Vec<usize> =
        s.circles[v].crossings.iter().copied().filter(|x| in_w.contains(x) || in_b.contains(x)).collect();
    let vw = w.disc_of[&v];
    let first_w = w
        .letters
        .iter()
        .find(|(bd, _)| bd.touches(vw))
        .map(|x| x.1)
        .ok_or_else(|| Error::internal(format!("circle {v} carries no band of the merged word")))?;
    let k = order.iter().position(|&x| x == first_w).unwrap();
    let mut linear = order.clone();
    linear.rotate_left(k);
    let first_b = *linear.iter().find(|x| in_b.contains(x)).unwrap();
    let kb = b.letters.iter().position(|x| x.1 == first_b).unwrap();
    b.letters.rotate_left(kb);
    let (mut iw, mut ib) = (0, 0);
    let mut marks: Vec<u8> = Vec::new();
    let (wm, bm) = if b_after { (1u8, 2u8) } else { (2u8, 1u8) };
    for &x in &linear {
        if in_w.contains(&x) {
            while iw < w.letters.len() {
                marks.push(wm);
                iw += 1;
                if w.letters[iw - 1].1 == x {
                    break;
                }
            }
            if w.letters[iw - 1].1 != x {
                return Err(Error::internal("bands at a shared circle out of cyclic order"));
            }
        } else {
            while ib < b.letters.len() {
                marks.push(bm);
                ib += 1;
                if b.letters[ib - 1].1 == x {
                    break;
                }
            }
            if b.letters[ib - 1].1 != x {
                return Err(Error::internal("bands at a shared circle out of cyclic order"));
            }
        }
    }
    marks.extend(std::iter::repeat_n(wm, w.letters.len() - iw));
    marks.extend(std::iter::repeat_n(bm, b.letters.len() - ib));
    let pattern = ShufflePattern::new(marks)?;
    let (first, second) = if b_after { (&w, &b) } else { (&b, &w) };
    let word = plumb(&first.word(), &second.word(), &pattern)?;
    // Re-tag: walk the pattern to recover crossing ids.
    let (mut i1, mut i2) = (0, 0);
    let mut letters = Vec::with_capacity(word.len());
    for (k, &mk) in pattern.marks().iter().enumerate() {
        let id = if mk == 1 {
            i1 += 1;
            first.letters[i1 - 1].1
        } else {
            i2 += 1;
            second.letters[i2 - 1].1
        };
        letters.push((word.letters()[k], id));
    }
    let shift = first.discs - 1;
    let mut disc_of = first.disc_of.clone();
    for (&c, &d) in &second.disc_of {
        disc_of.insert(c, d + shift);
    }
    Ok((Tagged { discs: word.strands(), letters, disc_of }, pattern))
}

/// Which side of the merged word a block goes on: blocks in the region on
/// the left of the shared circle go on the higher-index side.
fn goes_after(s: &Seifert, v: usize, region: usize) -> bool {
    s.left[v] == Some(region)
}

/// Convert a homogeneous diagram into a homogeneous band word whose
/// surface is the diagram's canonical Seifert surface.
pub fn homogenize(d: &Diagram) -> Result<Homogenized, Error> {
    let s = d.seifert()?;
    if !s.is_homogeneous() {
        return Err(Error::precondition("homogenize", "diagram is not homogeneous"));
    }
    let blocks = block_data(&s)?;
    let mut blocks_at: Vec<Vec<usize>> = vec![Vec::new(); s.circle_count()];
    for (k, b) in blocks.iter().enumerate() {
        for &c in &b.circles {
            blocks_at[c].push(k);
        }
    }
    let mut done = vec![false; blocks.len()];
    let mut parts: Vec<(Tagged, PlumbingTree)> = Vec::new();
    let mut circle_done = vec![false; s.circle_count()];
    for root in 0..blocks.len() {
        if done[root] {
            continue;
        }
        done[root] = true;
        let leaf = |k: usize, t: &Tagged| PlumbingTree::Leaf {
            circles: blocks[k].circles.clone(),
            crossings: blocks[k].crossings.clone(),
            sign: blocks[k].sign,
            word: t.word().to_string(),
        };
        let mut w = layout_block(&s, &blocks[root])?;
        let mut tree = leaf(root, &w);
        let mut queue: VecDeque<usize> = blocks[root].circles.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            if circle_done[v] {
                continue;
            }
            circle_done[v] = true;
            for &k in &blocks_at[v] {
                if done[k] {
                    continue;
                }
                done[k] = true;
                let b = layout_block(&s, &blocks[k])?;
                let after = goes_after(&s, v, blocks[k].region);
                let leaf_k = leaf(k, &b);
                let (merged, pattern) = attach(&s, w, b, v, after)?;
                w = merged;
                let (first, second) = if after { (tree, leaf_k) } else { (leaf_k, tree) };
                tree = PlumbingTree::Joint {
                    circle: v,
                    first: Box::new(first),
                    second: Box::new(second),
                    pattern: pattern.to_string(),
                };
                queue.extend(blocks[k].circles.iter().copied());
            }
        }
        parts.push((w, tree));
    }
    // Circles without crossings are split unknots: one bare disc each.
    let mut discs = 0;
    let mut letters = Vec::new();
    let mut trees = Vec::new();
    for (w, t) in parts {
        letters.extend(w.letters.iter().map(|(b, _)| Band::new(b.r + discs, b.s + discs, b.e)));
        discs += w.discs;
        trees.push(t);
    }
    for c in 0..s.circle_count() {
        if blocks_at[c].is_empty() {
            discs += 1;
            trees.push(PlumbingTree::Leaf { circles: vec![c], crossings: Vec::new(), sign: 1, word: "e".into() });
        }
    }
    let word = BklWord::new(discs.max(1), letters)?;
    let tree = if trees.len() == 1 { trees.pop().unwrap() } else { PlumbingTree::Split { parts: trees } };
    Ok(Homogenized { word, tree })
}

/// Word of a primitive flat diagram: a single-sign word with one disc per
/// circle and one band per crossing.
pub fn primitive_flat_to_bkl(d: &Diagram) -> Result<BklWord, Error> {
    let s = d.seifert()?;
    if !s.is_primitive_flat() {
        return Err(Error::precondition("primitive_flat_to_bkl", "diagram is not primitive flat"));
    }
    Ok(homogenize(d)?.word)
}

/// Decomposition of a homogeneous diagram into single-sign flat pieces
/// joined by plumbing.
pub fn decompose_generalized_flat(d: &Diagram) -> Result<PlumbingTree, Error> {
    Ok(homogenize(d)?.tree)
}
