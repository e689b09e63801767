//! Corpus diagrams and random generators for property tests.

use std::collections::HashMap;

use braidhom::diagram::{closed_braid_diagram, connected_sum, Diagram};
use braidhom::plumbing::ShufflePattern;
use braidhom::stars::{push_tip, wrap_tip, Star};
use braidhom::surface::BraidedSurface;
use braidhom::word::{ArtinWord, Band, BklWord};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn trefoil() -> Diagram {
    Diagram::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0)
}

pub fn figure_eight() -> Diagram {
    Diagram::new(vec![[8, 5, 1, 6], [4, 1, 5, 2], [2, 8, 3, 7], [6, 4, 7, 3]], 0)
}

/// Five-crossing twist knot, all crossings negative as written.
pub fn five_two() -> Diagram {
    Diagram::new(vec![[5, 1, 6, 10], [1, 7, 2, 6], [9, 3, 10, 2], [3, 9, 4, 8], [7, 5, 8, 4]], 0)
}

pub fn nine_43() -> Diagram {
    Diagram::new(
        vec![
            [7, 18, 8, 1],
            [1, 6, 2, 7],
            [17, 3, 18, 2],
            [3, 11, 4, 10],
            [11, 5, 12, 4],
            [5, 17, 6, 16],
            [8, 14, 9, 13],
            [14, 10, 15, 9],
            [12, 16, 13, 15],
        ],
        0,
    )
}

fn relabel(raw: &[[usize; 4]], succ: &HashMap<usize, usize>) -> Diagram {
    let mut label = HashMap::new();
    let mut next = 1;
    let mut keys: Vec<usize> = succ.keys().copied().collect();
    keys.sort_unstable();
    for k in keys {
        let mut e = k;
        while !label.contains_key(&e) {
            label.insert(e, next);
            next += 1;
            e = succ[&e];
        }
    }
    Diagram::new(raw.iter().map(|x| x.map(|e| label[&e])).collect(), 0)
}

/// Run a new Seifert circle alongside circle `v` on its left (`left`) or
/// right side, joined to `v` by one crossing of sign `sign` per entry of
/// `arcs` (indices into the circle's arc list; repeats allowed).
pub fn add_parallel_circle(d: &Diagram, v: usize, left: bool, arcs: &[usize], sign: i8) -> Diagram {
    let s = d.seifert().unwrap();
    let a = &s.analysis;
    let labels = 2 * d.crossings().len();
    let mut raw: Vec<[usize; 4]> = d.crossings().to_vec();
    let mut succ: HashMap<usize, usize> = HashMap::new();
    for l in 1..=labels {
        let (c, sl) = a.ends[l][1];
        succ.insert(l, raw[c][sl ^ 2]);
    }
    let mut picks = arcs.to_vec();
    picks.sort_unstable();
    let k = picks.len();
    let u = |j: usize| labels + 1 + j;
    let mut fresh = labels + 1 + k;
    let mut j = 0;
    while j < k {
        let ai = picks[j];
        let m = picks[j..].iter().take_while(|&&x| x == ai).count();
        let e = s.circles[v].arcs[ai];
        let after = succ[&e];
        let (c, sl) = a.ends[e][1];
        let mut cur = e;
        for i in 0..m {
            let out = fresh;
            fresh += 1;
            let g = j + i;
            let (in_u, out_u) = (u((g + k - 1) % k), u(g));
            let (in_l, in_r, out_l, out_r) = if left { (in_u, cur, out_u, out) } else { (cur, in_u, out, out_u) };
            raw.push(if sign > 0 { [in_l, in_r, out_r, out_l] } else { [in_r, out_r, out_l, in_l] });
            succ.insert(in_l, out_r);
            succ.insert(in_r, out_l);
            cur = out;
        }
        raw[c][sl] = cur;
        succ.insert(cur, after);
        j += m;
    }
    relabel(&raw, &succ)
}

/// Random homogeneous Artin word touching every strand.
pub fn homogeneous_artin<R: Rng>(rng: &mut R, max_strands: usize, max_len: usize) -> ArtinWord {
    let n = rng.gen_range(2..=max_strands);
    let signs: Vec<i32> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let len = rng.gen_range(1..=max_len);
    let mut letters: Vec<i32> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            i * signs[i as usize]
        })
        .collect();
    for i in 1..n as i32 {
        if !letters.iter().any(|l| l.abs() == i) {
            letters.push(i * signs[i as usize]);
        }
    }
    ArtinWord::new(n, letters).unwrap()
}

pub fn random_sum<R: Rng>(rng: &mut R, base: &[Diagram], parts: usize) -> Diagram {
    let mut d = base[rng.gen_range(0..base.len())].clone();
    for _ in 1..parts {
        let e = &base[rng.gen_range(0..base.len())];
        let e1 = rng.gen_range(1..=2 * d.crossings().len());
        let e2 = rng.gen_range(1..=2 * e.crossings().len());
        d = connected_sum(&d, e1, e, e2).unwrap();
    }
    d
}

pub fn closed_braid(w: &ArtinWord) -> Diagram {
    closed_braid_diagram(w).unwrap()
}

/// Random band word where every generator b(r,s) keeps one sign.
pub fn homogeneous_bkl<R: Rng>(rng: &mut R, max_discs: usize, max_len: usize) -> BklWord {
    let n = rng.gen_range(2..=max_discs);
    let mut sign = HashMap::new();
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len)
        .map(|_| {
            let r = rng.gen_range(1..n);
            let s = rng.gen_range(r + 1..=n);
            let e = *sign.entry((r, s)).or_insert(if rng.gen_bool(0.5) { 1 } else { -1 });
            Band::new(r, s, e)
        })
        .collect();
    BklWord::new(n, letters).expect("bands in range")
}

/// Star reached from rays inside one disc by random tip pushes and wraps.
pub fn random_star<R: Rng>(rng: &mut R, s: &BraidedSurface, rays: usize, moves: usize) -> Star {
    let center = rng.gen_range(1..=s.discs());
    let gaps = s.bands().iter().filter(|b| b.touches(center)).count() + 1;
    let mut tips: Vec<usize> = (0..rays).map(|_| rng.gen_range(0..gaps)).collect();
    tips.sort();
    let mut placed = Vec::new();
    for (i, &g) in tips.iter().enumerate() {
        let slot = tips[..i].iter().filter(|&&h| h == g).count();
        placed.push((g, slot));
    }
    let mut star = Star::in_disc(center, &placed);
    for _ in 0..moves {
        let ray = rng.gen_range(0..rays);
        let next = match rng.gen_range(0..3) {
            0 => push_tip(s, &star, ray, true),
            1 => push_tip(s, &star, ray, false),
            _ => wrap_tip(s, &star, ray),
        };
        if let Ok(t) = next {
            star = t;
        }
    }
    star
}

/// Adds a circle parallel to a random circle of `d`, attached by 1 to 3
/// crossings of one sign that stay inside one stretch of the chosen side
/// between existing bands. Keeps homogeneous diagrams homogeneous often
/// enough to grow deep pseudoalternating examples.
pub fn grow<R: Rng>(rng: &mut R, d: &Diagram) -> Option<Diagram> {
    let s = d.seifert().unwrap();
    let v = rng.gen_range(0..s.circle_count());
    let left = rng.gen_bool(0.5);
    let side = if left { s.left[v] } else { s.right[v] }?;
    let circ = &s.circles[v];
    let on_side: Vec<bool> = circ
        .arcs
        .iter()
        .map(|&l| {
            let c = s.analysis.ends[l][1].0;
            s.band_region[c] == side
        })
        .collect();
    let m = circ.arcs.len();
    let k = rng.gen_range(1..4);
    let picks: Vec<usize> = if on_side.iter().any(|&x| x) {
        let start = rng.gen_range(0..m);
        let mut stretch = vec![start];
        let mut i = start;
        while !on_side[i] {
            i = (i + 1) % m;
            if i == start {
                break;
            }
            stretch.push(i);
        }
        (0..k).map(|_| stretch[rng.gen_range(0..stretch.len())]).collect()
    } else {
        (0..k).map(|_| rng.gen_range(0..m)).collect()
    };
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    Some(add_parallel_circle(d, v, left, &picks, sign))
}

pub fn corpus_bases() -> Vec<Diagram> {
    vec![trefoil(), trefoil().mirror(), figure_eight(), five_two(), five_two().mirror(), nine_43(), nine_43().mirror()]
}

/// Random homogeneous diagram: grown from a corpus knot, a connected sum
/// of corpus knots, or a closed homogeneous braid.
pub fn random_homogeneous_diagram<R: Rng>(rng: &mut R) -> Diagram {
    loop {
        let d = match rng.gen_range(0..3) {
            0 => {
                let base = corpus_bases();
                let mut d = base[rng.gen_range(0..base.len())].clone();
                for _ in 0..rng.gen_range(1..6) {
                    if let Some(e) = grow(rng, &d) {
                        d = e;
                    }
                }
                d
            }
            1 => {
                let parts = rng.gen_range(2..4);
                random_sum(rng, &corpus_bases(), parts)
            }
            _ => closed_braid(&homogeneous_artin(rng, 5, 10)),
        };
        if d.validate().valid && d.seifert().unwrap().is_homogeneous() {
            return d;
        }
    }
}

pub fn random_pattern<R: Rng>(rng: &mut R, n1: usize, n2: usize) -> ShufflePattern {
    let mut marks = vec![1u8; n1];
    marks.extend(std::iter::repeat_n(2u8, n2));
    marks.shuffle(rng);
    ShufflePattern::new(marks).unwrap()
}
