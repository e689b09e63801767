//! Transverse n-stars on braided surfaces and their δ_b reduction.
//!
//! Each disc is cut by its front edge into a linear order of slots, top
//! to bottom: gap 0, the attaching region of its highest band, gap 1, and
//! so on. Inside an attaching region the points where rays cross are
//! numbered top to bottom at that end of the band; inside a gap the tips
//! are numbered the same way. The half twist of a band reverses the
//! vertical order between its two ends.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::surface::{BraidedSurface, MoveSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum End {
    L,
    R,
}

impl End {
    fn idx(self) -> usize {
        match self {
            End::L => 0,
            End::R => 1,
        }
    }

    fn swap(self) -> End {
        match self {
            End::L => End::R,
            End::R => End::L,
        }
    }
}

/// A band arc: enters band `band` at end `from`, slot `enter`, and leaves
/// at end `to`, slot `exit`. `from == to` is a band arc re-entering its
/// own attaching region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hop {
    pub band: usize,
    pub from: End,
    pub to: End,
    pub enter: usize,
    pub exit: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tip {
    pub disc: usize,
    pub gap: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub hops: Vec<Hop>,
    pub tip: Tip,
}

impl Ray {
    pub fn delta_b(&self) -> usize {
        self.hops.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: usize,
    pub rays: Vec<Ray>,
}

impl Star {
    /// Rays that never leave the center disc, with tips listed top to
    /// bottom as `(gap, slot)`.
    pub fn in_disc(center: usize, tips: &[(usize, usize)]) -> Star {
        let rays = tips
            .iter()
            .map(|&(gap, slot)| Ray { hops: Vec::new(), tip: Tip { disc: center, gap, slot } })
            .collect();
        Star { center, rays }
    }

    pub fn delta_b(&self) -> usize {
        self.rays.iter().map(Ray::delta_b).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("star serializes")
    }

    pub fn from_json(text: &str) -> Result<Star, Error> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("star json: {e}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RayClass {
    pub long: bool,
    pub slack: bool,
    pub loose: bool,
}

fn end_disc(s: &BraidedSurface, band: usize, end: End) -> usize {
    match end {
        End::L => s.left(band),
        End::R => s.right(band),
    }
}

/// Bands meeting disc `d`, top to bottom.
fn regions_at(s: &BraidedSurface, d: usize) -> Vec<usize> {
    (0..s.bands().len()).filter(|&k| s.bands()[k].touches(d)).collect()
}

fn check_ray_shape(s: &BraidedSurface, r: &Ray) -> Result<(), Error> {
    let nb = s.bands().len();
    for h in &r.hops {
        if h.band >= nb {
            return Err(Error::invalid(format!("ray uses band {} of a surface with {nb}", h.band)));
        }
    }
    Ok(())
}

pub fn classify_ray(s: &BraidedSurface, r: &Ray) -> Result<RayClass, Error> {
    check_ray_shape(s, r)?;
    let mut c = RayClass { long: !r.hops.is_empty(), ..RayClass::default() };
    c.slack = r.hops.iter().any(|h| h.from == h.to)
        || r.hops.windows(2).any(|w| w[0].band == w[1].band && w[0].to == w[1].from);
    if let Some(last) = r.hops.last() {
        let x = end_disc(s, last.band, last.to);
        if r.tip.disc != x {
            return Err(Error::invalid(format!("tip on disc {} but tail on disc {x}", r.tip.disc)));
        }
        let regions = regions_at(s, x);
        let rb = regions.iter().position(|&k| k == last.band).expect("band meets its disc");
        if r.tip.gap > regions.len() {
            return Err(Error::invalid(format!("gap {} on disc {x} with {} regions", r.tip.gap, regions.len())));
        }
        let between = between_regions(r.tip.gap, rb);
        c.loose = between == 0 || regions.len() - 1 - between == 0;
    }
    Ok(c)
}

/// Regions strictly between gap `g` and region `rb` on one disc.
fn between_regions(g: usize, rb: usize) -> usize {
    if g <= rb {
        rb - g
    } else {
        g - rb - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Item {
    Region(usize),
    Tip(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Pt {
    Port(u32),
    Tip(usize),
}

#[derive(Clone, Copy, Debug)]
struct H {
    band: usize,
    from: End,
    to: End,
    enter: u32,
    exit: u32,
}

/// Working form of a star: ports carry stable ids so arcs can be removed
/// or merged without renumbering.
#[derive(Clone, Debug)]
struct Frame {
    s: BraidedSurface,
    center: usize,
    rays: Vec<Vec<H>>,
    ports: Vec<[Vec<u32>; 2]>,
    seqs: Vec<Vec<Item>>,
}

impl Frame {
    fn new(s: &BraidedSurface, star: &Star) -> Result<Frame, Error> {
        let n = s.discs();
        let nb = s.bands().len();
        if star.center == 0 || star.center > n {
            return Err(Error::invalid(format!("center disc {} not in 1..={n}", star.center)));
        }
        let mut slots: Vec<[Vec<(usize, u32)>; 2]> = vec![[Vec::new(), Vec::new()]; nb];
        let mut rays = Vec::new();
        let mut next = 0u32;
        for r in &star.rays {
            check_ray_shape(s, r)?;
            let mut hs = Vec::new();
            for h in &r.hops {
                let (a, b) = (next, next + 1);
                next += 2;
                slots[h.band][h.from.idx()].push((h.enter, a));
                slots[h.band][h.to.idx()].push((h.exit, b));
                hs.push(H { band: h.band, from: h.from, to: h.to, enter: a, exit: b });
            }
            rays.push(hs);
        }
        let mut ports = Vec::with_capacity(nb);
        for (k, pair) in slots.into_iter().enumerate() {
            let mut out: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
            for (e, mut v) in pair.into_iter().enumerate() {
                v.sort();
                if v.iter().enumerate().any(|(i, &(p, _))| p != i) {
                    return Err(Error::invalid(format!("slots at end {e} of band {k} are not 0..{}", v.len())));
                }
                out[e] = v.into_iter().map(|(_, id)| id).collect();
            }
            ports.push(out);
        }
        let mut tips: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (i, r) in star.rays.iter().enumerate() {
            let t = r.tip;
            if t.disc == 0 || t.disc > n {
                return Err(Error::invalid(format!("tip disc {} not in 1..={n}", t.disc)));
            }
            tips.entry((t.disc, t.gap)).or_default().push((t.slot, i));
        }
        let mut seqs = Vec::with_capacity(n);
        for d in 1..=n {
            let regions = regions_at(s, d);
            let mut seq = Vec::new();
            for g in 0..=regions.len() {
                if let Some(v) = tips.get_mut(&(d, g)) {
                    v.sort();
                    if v.iter().enumerate().any(|(i, &(p, _))| p != i) {
                        return Err(Error::invalid(format!("tip slots in gap {g} of disc {d} are not 0..{}", v.len())));
                    }
                    seq.extend(v.iter().map(|&(_, i)| Item::Tip(i)));
                }
                if g < regions.len() {
                    seq.push(Item::Region(regions[g]));
                }
            }
            seqs.push(seq);
        }
        let placed: usize = seqs.iter().map(|q| q.iter().filter(|it| matches!(it, Item::Tip(_))).count()).sum();
        if placed != star.rays.len() {
            return Err(Error::invalid("a tip lies in a gap that does not exist"));
        }
        let f = Frame { s: s.clone(), center: star.center, rays, ports, seqs };
        f.check()?;
        Ok(f)
    }

    fn to_star(&self) -> Star {
        let mut pos: HashMap<u32, usize> = HashMap::new();
        for pair in &self.ports {
            for v in pair {
                for (i, &id) in v.iter().enumerate() {
                    pos.insert(id, i);
                }
            }
        }
        let mut tips = vec![Tip { disc: 0, gap: 0, slot: 0 }; self.rays.len()];
        for (di, seq) in self.seqs.iter().enumerate() {
            let (mut g, mut slot) = (0, 0);
            for it in seq {
                match *it {
                    Item::Region(_) => {
                        g += 1;
                        slot = 0;
                    }
                    Item::Tip(r) => {
                        tips[r] = Tip { disc: di + 1, gap: g, slot };
                        slot += 1;
                    }
                }
            }
        }
        let rays = self
            .rays
            .iter()
            .zip(tips)
            .map(|(hs, tip)| Ray {
                hops: hs
                    .iter()
                    .map(|h| Hop { band: h.band, from: h.from, to: h.to, enter: pos[&h.enter], exit: pos[&h.exit] })
                    .collect(),
                tip,
            })
            .collect();
        Star { center: self.center, rays }
    }

    fn disc(&self, band: usize, end: End) -> usize {
        end_disc(&self.s, band, end)
    }

    fn tip_disc(&self, ray: usize) -> usize {
        self.seqs
            .iter()
            .position(|q| q.contains(&Item::Tip(ray)))
            .map(|i| i + 1)
            .expect("every tip is placed")
    }

    /// Points of disc `d` along its front edge, top to bottom.
    fn points(&self, d: usize) -> Vec<Pt> {
        let mut out = Vec::new();
        for it in &self.seqs[d - 1] {
            match *it {
                Item::Tip(r) => out.push(Pt::Tip(r)),
                Item::Region(k) => {
                    let e = if self.s.left(k) == d { 0 } else { 1 };
                    out.extend(self.ports[k][e].iter().map(|&id| Pt::Port(id)));
                }
            }
        }
        out
    }

    fn fan_point(&self, ray: usize) -> Pt {
        match self.rays[ray].first() {
            Some(h) => Pt::Port(h.enter),
            None => Pt::Tip(ray),
        }
    }

    /// Disc arcs as (disc, a, b).
    fn chords(&self) -> Vec<(usize, Pt, Pt)> {
        let mut out = Vec::new();
        for (i, hs) in self.rays.iter().enumerate() {
            for w in hs.windows(2) {
                out.push((self.disc(w[0].band, w[0].to), Pt::Port(w[0].exit), Pt::Port(w[1].enter)));
            }
            if let Some(h) = hs.last() {
                out.push((self.disc(h.band, h.to), Pt::Port(h.exit), Pt::Tip(i)));
            }
        }
        out
    }

    fn check(&self) -> Result<(), Error> {
        let s = &self.s;
        for d in 1..=s.discs() {
            let want = regions_at(s, d);
            let got: Vec<usize> = self.seqs[d - 1]
                .iter()
                .filter_map(|it| if let Item::Region(k) = it { Some(*k) } else { None })
                .collect();
            if want != got {
                return Err(Error::internal(format!("front edge of disc {d} out of step with its bands")));
            }
        }
        for (i, hs) in self.rays.iter().enumerate() {
            let mut at = self.center;
            for (j, h) in hs.iter().enumerate() {
                if self.disc(h.band, h.from) != at {
                    return Err(Error::invalid(format!("ray {i} arc {j} starts on the wrong disc")));
                }
                at = self.disc(h.band, h.to);
            }
            if self.tip_disc(i) != at {
                return Err(Error::invalid(format!("ray {i} ends on disc {at}, tip is elsewhere")));
            }
        }
        // Band arcs: the rectangle boundary reads L top to bottom, then R top to bottom.
        let mut partner: HashMap<u32, u32> = HashMap::new();
        for hs in &self.rays {
            for h in hs {
                partner.insert(h.enter, h.exit);
                partner.insert(h.exit, h.enter);
            }
        }
        for (k, pair) in self.ports.iter().enumerate() {
            let seq: Vec<u32> = pair[0].iter().chain(pair[1].iter()).copied().collect();
            let mut stack: Vec<u32> = Vec::new();
            let mut open = HashSet::new();
            for id in seq {
                let p = partner[&id];
                if open.contains(&p) {
                    if stack.pop() != Some(p) {
                        return Err(Error::invalid(format!("band arcs cross on band {k}")));
                    }
                } else {
                    open.insert(id);
                    stack.push(id);
                }
            }
        }
        let fans: HashSet<Pt> = (0..self.rays.len()).map(|i| self.fan_point(i)).collect();
        let mut by_disc: HashMap<usize, Vec<(Pt, Pt)>> = HashMap::new();
        for (d, a, b) in self.chords() {
            by_disc.entry(d).or_default().push((a, b));
        }
        for d in 1..=s.discs() {
            let pts = self.points(d);
            let idx: HashMap<Pt, usize> = pts.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let chords = by_disc.remove(&d).unwrap_or_default();
            let mut owner = vec![usize::MAX; pts.len()];
            for (c, (a, b)) in chords.iter().enumerate() {
                for p in [a, b] {
                    let i = *idx.get(p).ok_or_else(|| Error::invalid(format!("arc endpoint missing from disc {d}")))?;
                    owner[i] = c;
                }
            }
            let mut stack = Vec::new();
            let mut seen = vec![false; chords.len()];
            let mut fan_before = vec![0usize; pts.len() + 1];
            for (i, p) in pts.iter().enumerate() {
                let is_fan = d == self.center && fans.contains(p);
                fan_before[i + 1] = fan_before[i] + usize::from(is_fan);
                let c = owner[i];
                if c == usize::MAX {
                    continue;
                }
                if seen[c] {
                    if stack.pop() != Some(c) {
                        return Err(Error::invalid(format!("disc arcs cross on disc {d}")));
                    }
                } else {
                    seen[c] = true;
                    stack.push(c);
                }
            }
            if d == self.center {
                let total = fan_before[pts.len()];
                for (a, b) in &chords {
                    let (x, y) = (idx[a].min(idx[b]), idx[a].max(idx[b]));
                    let inside = fan_before[y] - fan_before[x + 1];
                    if inside != 0 && inside != total {
                        return Err(Error::invalid(format!("a disc arc on disc {d} separates the center's arcs")));
                    }
                }
            }
        }
        Ok(())
    }

    fn remove_port(&mut self, band: usize, end: End, id: u32) -> usize {
        let v = &mut self.ports[band][end.idx()];
        let i = v.iter().position(|&x| x == id).expect("port present");
        v.remove(i);
        i
    }

    fn port_index(&self, band: usize, end: End, id: u32) -> usize {
        self.ports[band][end.idx()].iter().position(|&x| x == id).expect("port present")
    }

    /// Removes one innermost slack arc, if any.
    fn remove_slack(&mut self) -> bool {
        for i in 0..self.rays.len() {
            for j in 0..self.rays[i].len() {
                let h = self.rays[i][j];
                if h.from == h.to {
                    let (a, b) = (self.port_index(h.band, h.from, h.enter), self.port_index(h.band, h.to, h.exit));
                    if a.abs_diff(b) == 1 {
                        self.remove_port(h.band, h.from, h.enter);
                        self.remove_port(h.band, h.to, h.exit);
                        self.rays[i].remove(j);
                        return true;
                    }
                }
                if j + 1 < self.rays[i].len() {
                    let g = self.rays[i][j + 1];
                    if g.band == h.band && g.from == h.to {
                        let (a, b) = (self.port_index(h.band, h.to, h.exit), self.port_index(g.band, g.from, g.enter));
                        if a.abs_diff(b) == 1 {
                            self.remove_port(h.band, h.to, h.exit);
                            self.remove_port(g.band, g.from, g.enter);
                            self.rays[i][j] = H { band: h.band, from: h.from, to: g.to, enter: h.enter, exit: g.exit };
                            self.rays[i].remove(j + 1);
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Pulls back the tip of one innermost loose ray, if any.
    fn remove_loose(&mut self) -> bool {
        for i in 0..self.rays.len() {
            let Some(&h) = self.rays[i].last() else { continue };
            if h.from == h.to {
                continue;
            }
            let x = self.disc(h.band, h.to);
            let seq = &self.seqs[x - 1];
            let ti = seq.iter().position(|&it| it == Item::Tip(i)).expect("tip on tail disc");
            let ri = seq.iter().position(|&it| it == Item::Region(h.band)).expect("region on disc");
            let (lo, hi) = (ti.min(ri), ti.max(ri));
            let regions_between = seq[lo + 1..hi].iter().filter(|it| matches!(it, Item::Region(_))).count();
            let regions_total = seq.iter().filter(|it| matches!(it, Item::Region(_))).count();
            let pts = self.points(x);
            let pq = pts.iter().position(|&p| p == Pt::Port(h.exit)).expect("exit on disc");
            let pt = pts.iter().position(|&p| p == Pt::Tip(i)).expect("tip on disc");
            let (a, b) = (pq.min(pt), pq.max(pt));
            let tip_above = ti < ri;
            let edge_top = if regions_between == 0 && b - a == 1 {
                tip_above
            } else if regions_total - 1 - regions_between == 0 && a == 0 && b == pts.len() - 1 {
                !tip_above
            } else {
                continue;
            };
            self.seqs[x - 1].remove(ti);
            self.remove_port(h.band, h.to, h.exit);
            self.remove_port(h.band, h.from, h.enter);
            self.rays[i].pop();
            let y = self.disc(h.band, h.from);
            let seq = &mut self.seqs[y - 1];
            let r = seq.iter().position(|&it| it == Item::Region(h.band)).expect("region on disc");
            // The half twist swaps the top and bottom edges of the band.
            if edge_top {
                seq.insert(r + 1, Item::Tip(i));
            } else {
                seq.insert(r, Item::Tip(i));
            }
            return true;
        }
        false
    }

    fn flip(&self) -> Frame {
        let nb = self.s.bands().len();
        let m = |k: usize| nb - 1 - k;
        let s = self.s.apply(MoveSpec::FlipVertical).expect("flip always applies");
        let rays = self.rays.iter().map(|hs| hs.iter().map(|h| H { band: m(h.band), ..*h }).collect()).collect();
        let mut ports = vec![[Vec::new(), Vec::new()]; nb];
        for (k, pair) in self.ports.iter().enumerate() {
            for e in 0..2 {
                ports[m(k)][e] = pair[e].iter().rev().copied().collect();
            }
        }
        let seqs = self
            .seqs
            .iter()
            .map(|q| {
                q.iter()
                    .rev()
                    .map(|&it| match it {
                        Item::Region(k) => Item::Region(m(k)),
                        t => t,
                    })
                    .collect()
            })
            .collect();
        Frame { s, center: self.center, rays, ports, seqs }
    }

    fn mirror(&self) -> Frame {
        let n = self.s.discs();
        let s = self.s.apply(MoveSpec::Mirror).expect("mirror always applies");
        let rays = self
            .rays
            .iter()
            .map(|hs| hs.iter().map(|h| H { from: h.from.swap(), to: h.to.swap(), ..*h }).collect())
            .collect();
        let ports = self.ports.iter().map(|[l, r]| [r.clone(), l.clone()]).collect();
        let seqs = self.seqs.iter().rev().cloned().collect();
        Frame { s, center: n + 1 - self.center, rays, ports, seqs }
    }

    fn twirl(&self) -> Frame {
        let n = self.s.discs();
        let s = self.s.apply(MoveSpec::Twirl).expect("twirl always applies");
        let moved: Vec<bool> = self.s.bands().iter().map(|b| b.r == 1).collect();
        let rays = self
            .rays
            .iter()
            .map(|hs| {
                hs.iter()
                    .map(|h| if moved[h.band] { H { from: h.from.swap(), to: h.to.swap(), ..*h } } else { *h })
                    .collect()
            })
            .collect();
        let ports = self
            .ports
            .iter()
            .enumerate()
            .map(|(k, [l, r])| if moved[k] { [r.clone(), l.clone()] } else { [l.clone(), r.clone()] })
            .collect();
        let mut seqs: Vec<Vec<Item>> = self.seqs[1..].to_vec();
        seqs.push(self.seqs[0].clone());
        let center = if self.center == 1 { n } else { self.center - 1 };
        Frame { s, center, rays, ports, seqs }
    }

    fn long_candidate(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (i, hs) in self.rays.iter().enumerate() {
            let Some(h) = hs.last() else { continue };
            let x = self.disc(h.band, h.to);
            let (g, rb) = self.tip_and_region(i, x, h.band);
            if between_regions(g, rb) == 0 {
                continue;
            }
            let dist = (2 * g).abs_diff(2 * rb + 1);
            if best.is_none_or(|(d, _)| dist < d) {
                best = Some((dist, i));
            }
        }
        best.map(|(_, i)| i)
    }

    /// Gap of the tip of `ray` and region index of `band` on disc `x`.
    fn tip_and_region(&self, ray: usize, x: usize, band: usize) -> (usize, usize) {
        let (mut g, mut tip, mut reg) = (0, None, None);
        for it in &self.seqs[x - 1] {
            match *it {
                Item::Tip(r) if r == ray => tip = Some(g),
                Item::Region(k) => {
                    if k == band {
                        reg = Some(g);
                    }
                    g += 1;
                }
                _ => {}
            }
        }
        (tip.expect("tip on disc"), reg.expect("region on disc"))
    }
}

/// Checks that `star` is a transverse star on `s` with non-crossing arcs.
pub fn validate(s: &BraidedSurface, star: &Star) -> Result<(), Error> {
    Frame::new(s, star).map(|_| ())
}

/// Removes innermost slack arcs until none is left.
pub fn remove_slack(s: &BraidedSurface, star: &Star) -> Result<Star, Error> {
    let mut f = Frame::new(s, star)?;
    while f.remove_slack() {}
    Ok(f.to_star())
}

/// Removes innermost slack arcs and loose tails until neither applies.
pub fn minimize(s: &BraidedSurface, star: &Star) -> Result<Star, Error> {
    let mut f = Frame::new(s, star)?;
    while f.remove_slack() || f.remove_loose() {}
    Ok(f.to_star())
}

/// Pushes the tip of `ray` across the band whose attaching region sits
/// right above it (`up`) or right below it. The inverse of pulling back a
/// loose tail.
pub fn push_tip(s: &BraidedSurface, star: &Star, ray: usize, up: bool) -> Result<Star, Error> {
    let mut f = Frame::new(s, star)?;
    if ray >= f.rays.len() {
        return Err(Error::invalid(format!("no ray {ray}")));
    }
    let y = f.tip_disc(ray);
    let seq = &f.seqs[y - 1];
    let ti = seq.iter().position(|&it| it == Item::Tip(ray)).expect("tip placed");
    let neighbour = if up { ti.checked_sub(1).map(|i| seq[i]) } else { seq.get(ti + 1).copied() };
    let Some(Item::Region(k)) = neighbour else {
        return Err(Error::precondition("push_tip", "no attaching region next to the tip"));
    };
    let from = if f.s.left(k) == y { End::L } else { End::R };
    let to = from.swap();
    let next = f.ports.iter().flat_map(|p| p.iter().flatten()).max().map_or(0, |m| m + 1);
    let (a, b) = (next, next + 1);
    f.seqs[y - 1].remove(ti);
    if up {
        f.ports[k][from.idx()].push(a);
        f.ports[k][to.idx()].insert(0, b);
    } else {
        f.ports[k][from.idx()].insert(0, a);
        f.ports[k][to.idx()].push(b);
    }
    f.rays[ray].push(H { band: k, from, to, enter: a, exit: b });
    let z = f.disc(k, to);
    let seq = &mut f.seqs[z - 1];
    let r = seq.iter().position(|&it| it == Item::Region(k)).expect("region placed");
    if up {
        seq.insert(r, Item::Tip(ray));
    } else {
        seq.insert(r + 1, Item::Tip(ray));
    }
    f.check()?;
    Ok(f.to_star())
}

/// Slides the tip of `ray` around the back of its disc, from the very top
/// of the front edge to the very bottom or back.
pub fn wrap_tip(s: &BraidedSurface, star: &Star, ray: usize) -> Result<Star, Error> {
    let mut f = Frame::new(s, star)?;
    if ray >= f.rays.len() {
        return Err(Error::invalid(format!("no ray {ray}")));
    }
    let y = f.tip_disc(ray);
    let seq = &mut f.seqs[y - 1];
    if seq.first() == Some(&Item::Tip(ray)) {
        let t = seq.remove(0);
        seq.push(t);
    } else if seq.last() == Some(&Item::Tip(ray)) {
        let t = seq.pop().expect("nonempty");
        seq.insert(0, t);
    } else {
        return Err(Error::precondition("wrap_tip", "tip is not at either end of the front edge"));
    }
    f.check()?;
    Ok(f.to_star())
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub label: String,
    pub word: String,
    pub delta_b: usize,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub surface: BraidedSurface,
    pub star: Star,
    pub steps: usize,
    pub trace: Vec<TraceStep>,
}

fn trace_push(trace: &mut Vec<TraceStep>, label: impl Into<String>, f: &Frame) {
    trace.push(TraceStep {
        label: label.into(),
        word: f.s.to_word().to_string(),
        delta_b: f.rays.iter().map(Vec::len).sum(),
    });
}

/// One round of the reduction: two new bands and one new disc replace the
/// coccyx band of an innermost tail, and that tail loses its last band
/// crossing.
pub fn reduce_step(s: &BraidedSurface, star: &Star) -> Result<Reduction, Error> {
    let f = Frame::new(s, star)?;
    let mut trace = Vec::new();
    trace_push(&mut trace, "start", &f);
    let f = reduce_frame(f, &mut trace)?;
    Ok(Reduction { surface: f.s.clone(), star: f.to_star(), steps: 1, trace })
}

fn reduce_frame(mut f: Frame, trace: &mut Vec<TraceStep>) -> Result<Frame, Error> {
    let pre = |d: &str| Error::precondition("reduce_step", d);
    if !f.s.to_word().is_homogeneous() {
        return Err(pre("surface word is not homogeneous"));
    }
    if f.rays.iter().all(Vec::is_empty) {
        return Err(pre("star already lies in a disc"));
    }
    if f.clone().remove_slack() {
        return Err(pre("star has a slack ray"));
    }
    let tau = f.long_candidate().ok_or_else(|| pre("every tail cuts off a disc region free of other bands"))?;

    // Step 0: tip above the coccyx band, positive coccyx band, tail on its left disc.
    let h = *f.rays[tau].last().expect("long ray");
    let (g, rb) = f.tip_and_region(tau, f.disc(h.band, h.to), h.band);
    let flipped = g > rb;
    if flipped {
        f = f.flip();
        trace_push(trace, "flip_vertical", &f);
    }
    let b0 = f.rays[tau].last().expect("long ray").band;
    let mirrored = f.s.sign(b0) < 0;
    if mirrored {
        f = f.mirror();
        trace_push(trace, "mirror", &f);
    }
    while f.rays[tau].last().expect("long ray").to != End::L {
        f = f.twirl();
        trace_push(trace, "twirl", &f);
    }
    let h = *f.rays[tau].last().expect("long ray");
    let (x0, x1) = (f.s.left(b0), f.s.right(b0));

    // Step 1: bands between the coccyx band and the tip.
    let regions = regions_at(&f.s, x0);
    let (g, _) = f.tip_and_region(tau, x0, b0);
    let top = regions[g];

    // Steps 2 to 4 and 6 as surface moves.
    let mut s = f.s.apply(MoveSpec::Inflate { i: x0, sign: 1, at: top })?;
    trace_push(trace, format!("inflate:{x0}:+:{top}"), &Frame { s: s.clone(), ..f.clone() });
    for pos in top..b0 {
        let m = if s.bands()[pos + 1].touches(x0) { MoveSpec::SlideUp { pos } } else { MoveSpec::Slip { pos } };
        s = s.apply(m)?;
        trace_push(trace, m.to_string(), &Frame { s: s.clone(), ..f.clone() });
    }
    let m = MoveSpec::SlideUp { pos: b0 };
    s = s.apply(m)?;
    trace_push(trace, m.to_string(), &Frame { s: s.clone(), ..f.clone() });
    trace_push(trace, "retract", &Frame { s: s.clone(), ..f.clone() });
    s = s.apply(m)?;
    trace_push(trace, m.to_string(), &Frame { s: s.clone(), ..f.clone() });

    let relabel = |d: usize| if d <= x0 { d } else { d + 1 };
    let expected: Vec<_> = f
        .s
        .bands()
        .iter()
        .enumerate()
        .flat_map(|(k, b)| {
            let mut c = crate::word::Band::new(relabel(b.r), relabel(b.s), b.e);
            if (top..b0).contains(&k) && b.touches(x0) {
                c = if b.r == x0 {
                    crate::word::Band::new(x0 + 1, c.s, b.e)
                } else {
                    crate::word::Band::new(c.r, x0 + 1, b.e)
                };
            }
            if k == b0 {
                vec![crate::word::Band::new(x0, x1 + 1, 1), crate::word::Band::new(x0 + 1, x1 + 1, 1)]
            } else {
                vec![c]
            }
        })
        .collect();
    if s.bands() != expected.as_slice() {
        return Err(Error::internal("reduction moves did not give the expected bands"));
    }

    let mut g2 = cut_along_tail(&f, tau, h, s)?;
    trace_push(trace, "retract", &g2);
    if mirrored {
        g2 = g2.mirror();
        trace_push(trace, "mirror", &g2);
    }
    if flipped {
        g2 = g2.flip();
        trace_push(trace, "flip_vertical", &g2);
    }
    g2.check().map_err(|e| Error::internal(format!("reduced star is invalid: {e}")))?;
    Ok(g2)
}

/// Star bookkeeping of the reduction in the normalized frame: the part of
/// disc x0 cut off by the tail moves to the new disc x0+1, and the coccyx
/// band splits along the ray into an upper band on x0 and a lower band on
/// x0+1, with the shortened ray ending between them on disc x1+1.
fn cut_along_tail(f: &Frame, tau: usize, h: H, s: BraidedSurface) -> Result<Frame, Error> {
    let b0 = h.band;
    let (x0, x1) = (f.s.left(b0), f.s.right(b0));
    if h.from != End::R || h.to != End::L {
        return Err(Error::internal("tail arc not in normal position"));
    }
    let (upper, lower) = (b0, b0 + 1);
    let mb = |k: usize| if k < b0 { k } else { k + 1 };
    let md = |d: usize| if d <= x0 { d } else { d + 1 };

    let lq = f.port_index(b0, End::L, h.exit);
    let rp = f.port_index(b0, End::R, h.enter);
    let old = &f.ports[b0];
    let mut ports: Vec<[Vec<u32>; 2]> = Vec::with_capacity(f.ports.len() + 1);
    for (k, p) in f.ports.iter().enumerate() {
        if k == b0 {
            ports.push([old[0][lq + 1..].to_vec(), old[1][..rp].to_vec()]);
            ports.push([old[0][..lq].to_vec(), old[1][rp + 1..].to_vec()]);
        } else {
            ports.push(p.clone());
        }
    }
    let lower_ids: HashSet<u32> = ports[lower].iter().flatten().copied().collect();
    let mut rays = f.rays.clone();
    rays[tau].pop();
    for hs in &mut rays {
        for x in hs.iter_mut() {
            if x.band == b0 {
                let lo = lower_ids.contains(&x.enter);
                if lo != lower_ids.contains(&x.exit) {
                    return Err(Error::internal("arc through the coccyx band changes sides"));
                }
                x.band = if lo { lower } else { upper };
            } else {
                x.band = mb(x.band);
            }
        }
    }

    let map_items = |v: &[Item]| -> Vec<Item> {
        v.iter()
            .map(|&it| match it {
                Item::Region(k) => Item::Region(mb(k)),
                t => t,
            })
            .collect()
    };
    let n = f.s.discs();
    let mut seqs = vec![Vec::new(); n + 1];
    let s0 = &f.seqs[x0 - 1];
    let it = s0.iter().position(|&i| i == Item::Tip(tau)).expect("tip on x0");
    let ib = s0.iter().position(|&i| i == Item::Region(b0)).expect("coccyx on x0");
    for d in 1..=n {
        let q = &f.seqs[d - 1];
        if d == x0 {
            let mut a = map_items(&q[..it]);
            a.push(Item::Region(upper));
            a.extend(map_items(&q[ib + 1..]));
            seqs[x0 - 1] = a;
            let mut b = map_items(&q[it + 1..ib]);
            b.push(Item::Region(lower));
            seqs[x0] = b;
        } else if d == x1 {
            let mut a = Vec::new();
            for &i in q {
                if i == Item::Region(b0) {
                    a.extend([Item::Region(upper), Item::Tip(tau), Item::Region(lower)]);
                } else {
                    a.extend(map_items(&[i]));
                }
            }
            seqs[md(d) - 1] = a;
        } else {
            seqs[md(d) - 1] = map_items(q);
        }
    }

    let center = if f.center == x0 {
        let pts = f.points(x0);
        let at = |p: Pt| pts.iter().position(|&x| x == p).expect("point on x0");
        let (a, b) = (at(Pt::Tip(tau)), at(Pt::Port(h.exit)));
        let fan = at(f.fan_point(0));
        if a < fan && fan < b {
            x0 + 1
        } else {
            x0
        }
    } else {
        md(f.center)
    };
    let g = Frame { s, center, rays, ports, seqs };
    g.check().map_err(|e| Error::internal(format!("cut star is invalid: {e}")))?;
    Ok(g)
}

/// Minimizes, then reduces until every ray stays in one disc.
pub fn reduce_to_disc(s: &BraidedSurface, star: &Star) -> Result<Reduction, Error> {
    if !s.to_word().is_homogeneous() {
        return Err(Error::precondition("reduce_to_disc", "surface word is not homogeneous"));
    }
    let mut f = Frame::new(s, star)?;
    let mut trace = Vec::new();
    trace_push(&mut trace, "start", &f);
    while f.remove_slack() || f.remove_loose() {}
    trace_push(&mut trace, "minimize", &f);
    let bound = f.rays.iter().map(Vec::len).sum::<usize>();
    let mut steps = 0;
    while f.rays.iter().any(|r| !r.is_empty()) {
        if steps == bound {
            return Err(Error::internal("reduction did not finish within the initial δ_b"));
        }
        f = reduce_frame(f, &mut trace)?;
        while f.remove_slack() || f.remove_loose() {}
        trace_push(&mut trace, "minimize", &f);
        steps += 1;
    }
    Ok(Reduction { surface: f.s.clone(), star: f.to_star(), steps, trace })
}
