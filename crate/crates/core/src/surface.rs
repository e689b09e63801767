//! Braided Seifert surfaces: `n` parallel discs and a height-ordered list
//! of half-twisted bands, one per letter of a band-generator word.
//!
//! Bands are listed from the top down, so band `k` is the `k`-th letter.
//! Positions in moves are 0-based indices into that list.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph;
use crate::word::{Band, BklWord, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidedSurface {
    discs: usize,
    bands: Vec<Band>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveSpec {
    /// Split disc `i` off a new disc `i+1` joined by a band of sign `sign`,
    /// inserted at band position `at` (0 = top).
    Inflate { i: usize, sign: Sign, at: usize },
    /// Remove band `band`, which must be `σ_{i,i+1}` and the only band on
    /// disc `i+1`.
    Deflate { band: usize },
    /// Exchange bands `pos` and `pos+1`.
    Slip { pos: usize },
    SlideUp { pos: usize },
    SlideDown { pos: usize },
    Twirl,
    Turn,
    FlipVertical,
    Mirror,
}

impl MoveSpec {
    pub fn name(&self) -> &'static str {
        match self {
            MoveSpec::Inflate { .. } => "inflate",
            MoveSpec::Deflate { .. } => "deflate",
            MoveSpec::Slip { .. } => "slip",
            MoveSpec::SlideUp { .. } => "slide_up",
            MoveSpec::SlideDown { .. } => "slide_down",
            MoveSpec::Twirl => "twirl",
            MoveSpec::Turn => "turn",
            MoveSpec::FlipVertical => "flip_vertical",
            MoveSpec::Mirror => "mirror",
        }
    }

    /// Parse `kind[:arg...]`, e.g. `slip:3`, `inflate:2:+:0`, `deflate:4`,
    /// `turn`.
    pub fn parse(text: &str) -> Result<MoveSpec, Error> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        let num = |k: usize| -> Result<usize, Error> {
            parts
                .get(k)
                .ok_or_else(|| Error::invalid(format!("move `{text}` needs argument {k}")))?
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("move `{text}`: argument {k} is not a number")))
        };
        let arity = |n: usize| -> Result<(), Error> {
            if parts.len() != n + 1 {
                return Err(Error::invalid(format!("move `{}` takes {n} argument(s)", parts[0])));
            }
            Ok(())
        };
        let m = match parts[0].trim().replace('-', "_").as_str() {
            "inflate" => {
                arity(3)?;
                let sign = match parts[2].trim() {
                    "+" | "+1" | "1" => 1,
                    "-" | "-1" => -1,
                    s => return Err(Error::invalid(format!("bad sign `{s}`"))),
                };
                MoveSpec::Inflate { i: num(1)?, sign, at: num(3)? }
            }
            "deflate" => {
                arity(1)?;
                MoveSpec::Deflate { band: num(1)? }
            }
            "slip" => {
                arity(1)?;
                MoveSpec::Slip { pos: num(1)? }
            }
            "slide_up" => {
                arity(1)?;
                MoveSpec::SlideUp { pos: num(1)? }
            }
            "slide_down" => {
                arity(1)?;
                MoveSpec::SlideDown { pos: num(1)? }
            }
            "twirl" => {
                arity(0)?;
                MoveSpec::Twirl
            }
            "turn" => {
                arity(0)?;
                MoveSpec::Turn
            }
            "flip_vertical" | "flip" => {
                arity(0)?;
                MoveSpec::FlipVertical
            }
            "mirror" => {
                arity(0)?;
                MoveSpec::Mirror
            }
            k => return Err(Error::invalid(format!("unknown move `{k}`"))),
        };
        Ok(m)
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveSpec::Inflate { i, sign, at } => {
                write!(f, "inflate:{i}:{}:{at}", if sign > 0 { "+" } else { "-" })
            }
            MoveSpec::Deflate { band } => write!(f, "deflate:{band}"),
            MoveSpec::Slip { pos } => write!(f, "slip:{pos}"),
            MoveSpec::SlideUp { pos } => write!(f, "slide_up:{pos}"),
            MoveSpec::SlideDown { pos } => write!(f, "slide_down:{pos}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Do the chords `{a,b}` and `{c,d}` on a line interleave?
fn separates(a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d) && c != lo && c != hi && d != lo && d != hi
}

/// Can two adjacent bands be exchanged by a slip?
pub fn slip_allowed(x: Band, y: Band) -> bool {
    let shares = x.r == y.r || x.r == y.s || x.s == y.r || x.s == y.s;
    !shares && !separates(x.r, x.s, y.r, y.s)
}

/// Slide the lower band `y` over the upper band `x`: returns the new
/// (upper, lower) pair if the pair matches one of the four patterns.
pub fn slide_up_pair(x: Band, y: Band) -> Option<(Band, Band)> {
    // Patterns for i < j < k, written (upper, lower) -> (upper', lower').
    let b = Band::new;
    if y.s == x.r && x.e > 0 {
        // σ_jk^+ σ_ij^± -> σ_ik^± σ_jk^+
        return Some((b(y.r, x.s, y.e), x));
    }
    if x.s == y.r && x.e < 0 {
        // σ_ij^- σ_jk^± -> σ_ik^± σ_ij^-
        return Some((b(x.r, y.s, y.e), x));
    }
    if x.r == y.r && x.s < y.s && x.e > 0 {
        // σ_ij^+ σ_ik^± -> σ_jk^± σ_ij^+
        return Some((b(x.s, y.s, y.e), x));
    }
    if x.s == y.s && x.r > y.r && x.e < 0 {
        // σ_jk^- σ_ik^± -> σ_ij^± σ_jk^-
        return Some((b(y.r, x.r, y.e), x));
    }
    None
}

/// Inverse of [`slide_up_pair`].
pub fn slide_down_pair(x: Band, y: Band) -> Option<(Band, Band)> {
    let b = Band::new;
    if y.e > 0 && x.s == y.s && x.r < y.r {
        // σ_ik^± σ_jk^+ -> σ_jk^+ σ_ij^±
        return Some((y, b(x.r, y.r, x.e)));
    }
    if y.e < 0 && x.r == y.r && y.s < x.s {
        // σ_ik^± σ_ij^- -> σ_ij^- σ_jk^±
        return Some((y, b(y.s, x.s, x.e)));
    }
    if y.e > 0 && x.r == y.s {
        // σ_jk^± σ_ij^+ -> σ_ij^+ σ_ik^±
        return Some((y, b(y.r, x.s, x.e)));
    }
    if y.e < 0 && x.s == y.r {
        // σ_ij^± σ_jk^- -> σ_jk^- σ_ik^±
        return Some((y, b(x.r, y.s, x.e)));
    }
    None
}

impl BraidedSurface {
    pub fn new(discs: usize, bands: Vec<Band>) -> Result<Self, Error> {
        let w = BklWord::new(discs, bands)?;
        Ok(Self::from_word(&w))
    }

    pub fn from_word(w: &BklWord) -> Self {
        BraidedSurface { discs: w.strands(), bands: w.letters().to_vec() }
    }

    pub fn to_word(&self) -> BklWord {
        BklWord::new(self.discs, self.bands.clone()).expect("surface bands are valid")
    }

    pub fn discs(&self) -> usize {
        self.discs
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// Left disc of band `k` (0-based from the top).
    pub fn left(&self, k: usize) -> usize {
        self.bands[k].r
    }

    pub fn right(&self, k: usize) -> usize {
        self.bands[k].s
    }

    pub fn sign(&self, k: usize) -> Sign {
        self.bands[k].e
    }

    pub fn apply(&self, m: MoveSpec) -> Result<BraidedSurface, Error> {
        let n = self.discs;
        let nb = self.bands.len();
        let pre = |detail: String| Error::precondition(m.name(), detail);
        let mut out = self.clone();
        match m {
            MoveSpec::Inflate { i, sign, at } => {
                if i == 0 || i > n {
                    return Err(pre(format!("disc {i} not in 1..={n}")));
                }
                if at > nb {
                    return Err(pre(format!("height {at} not in 0..={nb}")));
                }
                if sign != 1 && sign != -1 {
                    return Err(pre("sign must be +1 or -1".into()));
                }
                let f = |a: usize| if a <= i { a } else { a + 1 };
                out.discs = n + 1;
                out.bands = self.bands.iter().map(|b| Band::new(f(b.r), f(b.s), b.e)).collect();
                out.bands.insert(at, Band::new(i, i + 1, sign));
            }
            MoveSpec::Deflate { band } => {
                let b = *self.bands.get(band).ok_or_else(|| pre(format!("no band {band}")))?;
                if b.s != b.r + 1 {
                    return Err(pre(format!("band {band} joins discs {} and {}, not neighbours", b.r, b.s)));
                }
                let i = b.r;
                if self.bands.iter().enumerate().any(|(k, c)| k != band && c.touches(i + 1)) {
                    return Err(pre(format!("disc {} carries other bands", i + 1)));
                }
                let g = |a: usize| if a <= i { a } else { a - 1 };
                out.discs = n - 1;
                out.bands.remove(band);
                for c in &mut out.bands {
                    *c = Band::new(g(c.r), g(c.s), c.e);
                }
            }
            MoveSpec::Slip { pos } | MoveSpec::SlideUp { pos } | MoveSpec::SlideDown { pos } => {
                if pos + 1 >= nb {
                    return Err(pre(format!("position {pos} needs bands {pos} and {}", pos + 1)));
                }
                let (x, y) = (self.bands[pos], self.bands[pos + 1]);
                let (u, l) = match m {
                    MoveSpec::Slip { .. } => {
                        if !slip_allowed(x, y) {
                            return Err(pre(format!("bands {x:?} and {y:?} are linked or share a disc")));
                        }
                        (y, x)
                    }
                    MoveSpec::SlideUp { .. } => {
                        slide_up_pair(x, y).ok_or_else(|| pre("pair matches no slide pattern".into()))?
                    }
                    _ => slide_down_pair(x, y).ok_or_else(|| pre("pair matches no slide pattern".into()))?,
                };
                out.bands[pos] = u;
                out.bands[pos + 1] = l;
            }
            MoveSpec::Twirl => {
                for b in &mut out.bands {
                    *b = if b.r != 1 { Band::new(b.r - 1, b.s - 1, b.e) } else { Band::new(b.s - 1, n, b.e) };
                }
            }
            MoveSpec::Turn => {
                if let Some(last) = out.bands.pop() {
                    out.bands.insert(0, last);
                }
            }
            MoveSpec::FlipVertical => out.bands.reverse(),
            MoveSpec::Mirror => {
                for b in &mut out.bands {
                    *b = Band::new(n + 1 - b.s, n + 1 - b.r, -b.e);
                }
            }
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        let edges: Vec<(usize, usize)> = self.bands.iter().map(|b| (b.r - 1, b.s - 1)).collect();
        let labels = graph::component_labels(self.discs, &edges);
        labels.iter().all(|&l| l == 0)
    }

    pub fn euler_genus(&self) -> Result<Genus, Error> {
        if !self.is_connected() {
            return Err(Error::precondition("euler_genus", "surface is not connected"));
        }
        let chi = self.discs as i64 - self.bands.len() as i64;
        let mu = self.to_word().permutation().cycle_count() as i64;
        let twice = 2 - chi - mu;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::internal(format!("χ = {chi}, μ = {mu} give no integral genus")));
        }
        Ok(Genus { chi, boundary_components: mu as usize, genus: (twice / 2) as usize })
    }

    pub fn to_repr(&self) -> SurfaceRepr {
        SurfaceRepr {
            discs: self.discs,
            bands: self.bands.iter().map(|b| BandRepr { l: b.r, r: b.s, e: b.e }).collect(),
        }
    }

    pub fn from_repr(r: &SurfaceRepr) -> Result<Self, Error> {
        Self::new(r.discs, r.bands.iter().map(|b| Band::new(b.l, b.r, b.e)).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("surface serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let r: SurfaceRepr = serde_json::from_str(text).map_err(|e| Error::invalid(format!("surface json: {e}")))?;
        Self::from_repr(&r)
    }

    /// Band diagram: discs as vertical bars, bands as horizontal strips
    /// marked with their sign.
    pub fn to_svg(&self) -> String {
        let dx = 60;
        let dz = 30;
        let w = dx * (self.discs + 1);
        let h = dz * (self.bands.len() + 2);
        let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\">\n");
        for d in 1..=self.discs {
            let x = d * dx;
            s += &format!(
                "<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"{}\" fill=\"#9ab\"/>\n<text x=\"{}\" y=\"{}\" font-size=\"12\">{d}</text>\n",
                x - 5,
                dz / 2,
                h - dz,
                x - 4,
                h - 2
            );
        }
        for (k, b) in self.bands.iter().enumerate() {
            let y = dz * (k + 1);
            let (x1, x2) = (b.r * dx, b.s * dx);
            let color = if b.e > 0 { "#c33" } else { "#33c" };
            s += &format!(
                "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"{color}\" stroke-width=\"6\"/>\n<text x=\"{}\" y=\"{}\" font-size=\"14\">{}</text>\n",
                (x1 + x2) / 2,
                y - 5,
                if b.e > 0 { "+" } else { "\u{2212}" }
            );
        }
        s += "</svg>\n";
        s
    }
}

impl fmt::Display for BraidedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus {
    pub chi: i64,
    pub boundary_components: usize,
    pub genus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandRepr {
    pub l: usize,
    pub r: usize,
    pub e: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRepr {
    pub discs: usize,
    pub bands: Vec<BandRepr>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_bkl;

    fn surf(s: &str, n: usize) -> BraidedSurface {
        BraidedSurface::from_word(&parse_bkl(s, Some(n)).unwrap())
    }

    #[test]
    fn turn_and_twirl() {
        let s = surf("b(1,3) b(1,2)^-1 b(1,3)^-1", 3);
        assert_eq!(s.apply(MoveSpec::Turn).unwrap().to_string(), "b(1,3)^-1 b(1,3) b(1,2)^-1");
        let t = surf("b(1,3) b(1,2)", 3);
        assert_eq!(t.apply(MoveSpec::Twirl).unwrap().to_string(), "b(2,3) b(1,3)");
    }

    #[test]
    fn slide_up_example() {
        let s = surf("b(2,3) b(1,2)", 3);
        let t = s.apply(MoveSpec::SlideUp { pos: 0 }).unwrap();
        assert_eq!(t.to_string(), "b(1,3) b(2,3)");
        assert_eq!(t.apply(MoveSpec::SlideDown { pos: 0 }).unwrap(), s);
    }

    #[test]
    fn inflate_deflate() {
        let s = surf("b(1,3) b(2,3)^-1", 3);
        let t = s.apply(MoveSpec::Inflate { i: 2, sign: 1, at: 1 }).unwrap();
        assert_eq!(t.to_string(), "b(1,4) b(2,3) b(2,4)^-1");
        assert_eq!(t.apply(MoveSpec::Deflate { band: 1 }).unwrap(), s);
        assert!(t.apply(MoveSpec::Deflate { band: 0 }).is_err());
    }

    #[test]
    fn slip_rules() {
        assert!(slip_allowed(Band::new(1, 2, 1), Band::new(3, 4, 1)));
        assert!(slip_allowed(Band::new(1, 4, 1), Band::new(2, 3, 1)));
        assert!(!slip_allowed(Band::new(1, 3, 1), Band::new(2, 4, 1)));
        assert!(!slip_allowed(Band::new(1, 3, 1), Band::new(3, 4, 1)));
    }

    #[test]
    fn genus_of_trefoil_surface() {
        let g = surf("b(1,2)^3", 2).euler_genus().unwrap();
        assert_eq!(g, Genus { chi: -1, boundary_components: 1, genus: 1 });
        assert!(surf("e", 3).euler_genus().is_err());
    }

    #[test]
    fn move_spec_round_trip() {
        for t in ["inflate:2:-:0", "deflate:3", "slip:1", "slide_up:0", "slide_down:2", "twirl", "turn", "flip_vertical", "mirror"] {
            assert_eq!(MoveSpec::parse(t).unwrap().to_string(), t);
        }
        assert!(MoveSpec::parse("slip").is_err());
    }
}
