//! Braid words in Artin generators `s_i` and band generators `b(r,s)`.
//!
//! Letters are stored expanded (one entry per unit exponent). An Artin
//! letter is a nonzero `i32`: `+i` is `σ_i`, `-i` is `σ_i^-1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Sign of a letter or band.
pub type Sign = i8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArtinWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Band {
    pub r: usize,
    pub s: usize,
    pub e: Sign,
}

impl Band {
    pub fn new(r: usize, s: usize, e: Sign) -> Self {
        Band { r, s, e }
    }

    pub fn inverse(self) -> Self {
        Band { e: -self.e, ..self }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.r == x || self.s == x
    }

    /// The other end of the band, if `x` is one of its ends.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.r == x {
            Some(self.s)
        } else if self.s == x {
            Some(self.r)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BklWord {
    strands: usize,
    letters: Vec<Band>,
}

impl ArtinWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, Error> {
        if strands == 0 {
            return Err(Error::invalid("strand count must be at least 1"));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(Error::invalid(format!("letter s{l} out of range on {strands} strands")));
            }
        }
        Ok(ArtinWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        ArtinWord { strands: strands.max(1), letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ArtinWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &ArtinWord) -> Result<Self, Error> {
        same_strands(self.strands, other.strands)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(ArtinWord { strands: self.strands, letters })
    }

    /// Letter-for-letter embedding `σ_i ↦ σ_{i,i+1}`.
    pub fn to_bkl(&self) -> BklWord {
        let letters = self
            .letters
            .iter()
            .map(|&l| {
                let i = l.unsigned_abs() as usize;
                Band::new(i, i + 1, l.signum() as Sign)
            })
            .collect();
        BklWord { strands: self.strands, letters }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            p.apply_transposition(i, i + 1);
        }
        p
    }

    pub fn homogeneity(&self) -> HomogeneityReport {
        let mut seen: BTreeMap<String, (bool, bool)> = BTreeMap::new();
        for &l in &self.letters {
            let entry = seen.entry(format!("s{}", l.unsigned_abs())).or_default();
            if l > 0 {
                entry.0 = true;
            } else {
                entry.1 = true;
            }
        }
        HomogeneityReport::from_seen(seen)
    }
}

impl BklWord {
    pub fn new(strands: usize, letters: Vec<Band>) -> Result<Self, Error> {
        if strands == 0 {
            return Err(Error::invalid("strand count must be at least 1"));
        }
        for b in &letters {
            if !(1 <= b.r && b.r < b.s && b.s <= strands) {
                return Err(Error::invalid(format!(
                    "band b({},{}) out of range on {strands} strands",
                    b.r, b.s
                )));
            }
            if b.e != 1 && b.e != -1 {
                return Err(Error::invalid("band sign must be +1 or -1"));
            }
        }
        Ok(BklWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BklWord { strands: strands.max(1), letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Band] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        BklWord { strands: self.strands, letters }
    }

    /// Expand every band generator into Artin letters:
    /// `σ_rs = (σ_{s-2}…σ_r)^-1 σ_{s-1} (σ_{s-2}…σ_r)`.
    pub fn to_artin(&self) -> ArtinWord {
        let mut letters = Vec::new();
        for b in &self.letters {
            let (r, s) = (b.r as i32, b.s as i32);
            for i in r..s - 1 {
                letters.push(-i);
            }
            letters.push((s - 1) * b.e as i32);
            for i in (r..s - 1).rev() {
                letters.push(i);
            }
        }
        ArtinWord { strands: self.strands, letters }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|b| b.e as i64).sum()
    }

    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for b in &self.letters {
            p.apply_transposition(b.r, b.s);
        }
        p
    }

    pub fn homogeneity(&self) -> HomogeneityReport {
        let mut seen: BTreeMap<String, (bool, bool)> = BTreeMap::new();
        for b in &self.letters {
            let entry = seen.entry(format!("b({},{})", b.r, b.s)).or_default();
            if b.e > 0 {
                entry.0 = true;
            } else {
                entry.1 = true;
            }
        }
        HomogeneityReport::from_seen(seen)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity().homogeneous
    }
}

fn same_strands(a: usize, b: usize) -> Result<(), Error> {
    if a != b {
        return Err(Error::invalid(format!("strand counts differ: {a} vs {b}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub homogeneous: bool,
    /// Generators that occur with both signs.
    pub mixed: Vec<String>,
}

impl HomogeneityReport {
    fn from_seen(seen: BTreeMap<String, (bool, bool)>) -> Self {
        let mixed: Vec<String> = seen.into_iter().filter(|(_, (p, n))| *p && *n).map(|(g, _)| g).collect();
        HomogeneityReport { homogeneous: mixed.is_empty(), mixed }
    }
}

/// Bijection of `{1..n}` stored as an image array (index 0 unused).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..=n).collect() }
    }

    pub fn size(&self) -> usize {
        self.image.len() - 1
    }

    pub fn image(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Post-compose with the transposition `(a b)`: the strand sitting at
    /// position `a` moves to `b` and vice versa.
    fn apply_transposition(&mut self, a: usize, b: usize) {
        for v in self.image.iter_mut().skip(1) {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.image[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn as_vec(&self) -> Vec<usize> {
        self.image[1..].to_vec()
    }
}

/// Free and handle reduction of `u·v⁻¹`; `true` iff the braids coincide.
pub fn braids_equal(u: &ArtinWord, v: &ArtinWord) -> Result<bool, Error> {
    same_strands(u.strands, v.strands)?;
    let w = u.concat(&v.inverse())?;
    Ok(handle_reduce(w.letters).is_empty())
}

pub fn bkl_braids_equal(u: &BklWord, v: &BklWord) -> Result<bool, Error> {
    braids_equal(&u.to_artin(), &v.to_artin())
}

/// Dehornoy handle reduction. The returned word is handle-free, hence
/// empty exactly when the input is the trivial braid.
pub fn handle_reduce(mut w: Vec<i32>) -> Vec<i32> {
    while let Some((p, q)) = first_handle(&w) {
        let i = w[p].abs();
        let e = w[p].signum();
        let mut mid = Vec::with_capacity((q - p) * 3);
        for &x in &w[p + 1..q] {
            if x.abs() == i + 1 {
                mid.push(-(i + 1) * e);
                mid.push(i * x.signum());
                mid.push((i + 1) * e);
            } else {
                mid.push(x);
            }
        }
        free_reduce_into(&mut mid);
        let mut next = Vec::with_capacity(w.len() + mid.len());
        next.extend_from_slice(&w[..p]);
        next.extend(mid);
        next.extend_from_slice(&w[q + 1..]);
        w = next;
    }
    w
}

fn free_reduce_into(w: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    *w = out;
}

/// The handle `σ_i^e … σ_i^-e` whose right end comes first. Its interior
/// has no `σ_i`, `σ_{i-1}`, and no nested handle, so it is permitted.
fn first_handle(w: &[i32]) -> Option<(usize, usize)> {
    // last[k] = position of the latest letter with index k seen so far.
    let maxi = w.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0);
    let mut last: Vec<Option<usize>> = vec![None; maxi + 2];
    for (q, &x) in w.iter().enumerate() {
        let i = x.unsigned_abs() as usize;
        if let Some(p) = last[i] {
            let blocked = i > 1 && last[i - 1].is_some_and(|b| b > p);
            if !blocked && w[p] == -x {
                return Some((p, q));
            }
        }
        last[i] = Some(q);
    }
    None
}

impl fmt::Display for ArtinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.letters.len() {
            let x = self.letters[k];
            let mut run = 1;
            while k + run < self.letters.len() && self.letters[k + run] == x {
                run += 1;
            }
            let exp = run as i64 * x.signum() as i64;
            parts.push(if exp == 1 { format!("s{}", x.abs()) } else { format!("s{}^{}", x.abs(), exp) });
            k += run;
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Display for BklWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let mut parts = Vec::new();
        let mut k = 0;
        while k < self.letters.len() {
            let b = self.letters[k];
            let mut run = 1;
            while k + run < self.letters.len() && self.letters[k + run] == b {
                run += 1;
            }
            let exp = run as i64 * b.e as i64;
            parts.push(if exp == 1 {
                format!("b({},{})", b.r, b.s)
            } else {
                format!("b({},{})^{}", b.r, b.s, exp)
            });
            k += run;
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// A parsed word: pure Artin input stays Artin, anything containing a
/// band token becomes a band word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Artin(ArtinWord),
    Bkl(BklWord),
}

impl Word {
    pub fn strands(&self) -> usize {
        match self {
            Word::Artin(w) => w.strands(),
            Word::Bkl(w) => w.strands(),
        }
    }

    pub fn to_artin(&self) -> ArtinWord {
        match self {
            Word::Artin(w) => w.clone(),
            Word::Bkl(w) => w.to_artin(),
        }
    }

    pub fn to_bkl(&self) -> BklWord {
        match self {
            Word::Artin(w) => w.to_bkl(),
            Word::Bkl(w) => w.clone(),
        }
    }

    pub fn homogeneity(&self) -> HomogeneityReport {
        match self {
            Word::Artin(w) => w.homogeneity(),
            Word::Bkl(w) => w.homogeneity(),
        }
    }

    pub fn exponent_sum(&self) -> i64 {
        match self {
            Word::Artin(w) => w.exponent_sum(),
            Word::Bkl(w) => w.exponent_sum(),
        }
    }

    pub fn permutation(&self) -> Permutation {
        match self {
            Word::Artin(w) => w.permutation(),
            Word::Bkl(w) => w.permutation(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Artin(w) => w.fmt(f),
            Word::Bkl(w) => w.fmt(f),
        }
    }
}

enum Token {
    Artin(i32, i64),
    Band(usize, usize, i64),
}

fn parse_exponent(rest: &str, tok: &str) -> Result<i64, Error> {
    if rest.is_empty() {
        return Ok(1);
    }
    let k = rest
        .strip_prefix('^')
        .and_then(|e| e.parse::<i64>().ok())
        .ok_or_else(|| Error::invalid(format!("bad exponent in token `{tok}`")))?;
    if k == 0 {
        return Err(Error::invalid(format!("zero exponent in token `{tok}`")));
    }
    Ok(k)
}

fn parse_token(tok: &str) -> Result<Token, Error> {
    if let Some(body) = tok.strip_prefix('s') {
        let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
        let i: i32 = digits.parse().map_err(|_| Error::invalid(format!("bad token `{tok}`")))?;
        if i < 1 {
            return Err(Error::invalid(format!("generator index must be positive in `{tok}`")));
        }
        let k = parse_exponent(&body[digits.len()..], tok)?;
        return Ok(Token::Artin(i, k));
    }
    if let Some(body) = tok.strip_prefix("b(") {
        let close = body.find(')').ok_or_else(|| Error::invalid(format!("unclosed band `{tok}`")))?;
        let inner = &body[..close];
        let mut parts = inner.split(',');
        let r = parts.next().and_then(|x| x.trim().parse::<usize>().ok());
        let s = parts.next().and_then(|x| x.trim().parse::<usize>().ok());
        match (r, s, parts.next()) {
            (Some(r), Some(s), None) if r >= 1 && r < s => {
                let k = parse_exponent(&body[close + 1..], tok)?;
                Ok(Token::Band(r, s, k))
            }
            _ => Err(Error::invalid(format!("bad band `{tok}` (need b(r,s) with r<s)"))),
        }
    } else {
        Err(Error::invalid(format!("unknown token `{tok}`")))
    }
}

/// Parse the word grammar: whitespace separated `s<i>[^k]`, `b(r,s)[^k]`
/// or the literal `e`. Without an explicit strand count, `n` is one more
/// than the largest Artin index, or the largest band index.
pub fn parse_word(text: &str, strands: Option<usize>) -> Result<Word, Error> {
    let mut tokens = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "e" {
            continue;
        }
        tokens.push(parse_token(tok)?);
    }
    let any_band = tokens.iter().any(|t| matches!(t, Token::Band(..)));
    let need = tokens
        .iter()
        .map(|t| match t {
            Token::Artin(i, _) => *i as usize + 1,
            Token::Band(_, s, _) => *s,
        })
        .max()
        .unwrap_or(1);
    let n = strands.unwrap_or(need);
    if any_band {
        let mut letters = Vec::new();
        for t in tokens {
            let (r, s, k) = match t {
                Token::Artin(i, k) => (i as usize, i as usize + 1, k),
                Token::Band(r, s, k) => (r, s, k),
            };
            let e: Sign = if k > 0 { 1 } else { -1 };
            letters.extend(std::iter::repeat_n(Band::new(r, s, e), k.unsigned_abs() as usize));
        }
        Ok(Word::Bkl(BklWord::new(n, letters)?))
    } else {
        let mut letters = Vec::new();
        for t in tokens {
            if let Token::Artin(i, k) = t {
                letters.extend(std::iter::repeat_n(i * k.signum() as i32, k.unsigned_abs() as usize));
            }
        }
        Ok(Word::Artin(ArtinWord::new(n, letters)?))
    }
}

pub fn parse_artin(text: &str, strands: Option<usize>) -> Result<ArtinWord, Error> {
    match parse_word(text, strands)? {
        Word::Artin(w) => Ok(w),
        Word::Bkl(_) => Err(Error::invalid("expected an Artin word")),
    }
}

/// Parse as a band word; Artin tokens are embedded as `b(i,i+1)`.
pub fn parse_bkl(text: &str, strands: Option<usize>) -> Result<BklWord, Error> {
    Ok(parse_word(text, strands)?.to_bkl())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str, n: usize) -> ArtinWord {
        parse_artin(s, Some(n)).unwrap()
    }

    #[test]
    fn grammar() {
        let w = parse_word("s1^2 s2^-1 e", None).unwrap();
        assert_eq!(w.strands(), 3);
        assert_eq!(w.to_artin().letters(), &[1, 1, -2]);
        let b = parse_word("b(1,3)^-2 s2", Some(4)).unwrap();
        assert_eq!(b.to_string(), "b(1,3)^-2 b(2,3)");
        assert!(parse_word("s0", None).is_err());
        assert!(parse_word("b(3,1)", None).is_err());
        assert!(parse_word("s1^0", None).is_err());
        assert!(parse_word("s3", Some(3)).is_err());
        assert_eq!(parse_word("e", Some(2)).unwrap().to_string(), "e");
    }

    #[test]
    fn band_expansion() {
        let w = parse_bkl("b(1,3)", Some(3)).unwrap();
        assert_eq!(w.to_artin().letters(), &[-1, 2, 1]);
        let w = parse_bkl("b(1,2)^-1", Some(2)).unwrap();
        assert_eq!(w.to_artin().letters(), &[-1]);
    }

    #[test]
    fn handle_reduction_basics() {
        assert!(braids_equal(&a("s1 s2 s1", 3), &a("s2 s1 s2", 3)).unwrap());
        assert!(braids_equal(&a("s1^-1 s2 s1", 3), &a("s2 s1 s2^-1", 3)).unwrap());
        assert!(!braids_equal(&a("s1", 2), &a("s1^-1", 2)).unwrap());
        assert!(braids_equal(&a("s1 s3", 4), &a("s3 s1", 4)).unwrap());
        assert!(!braids_equal(&a("s1 s2", 3), &a("s2 s1", 3)).unwrap());
        assert!(braids_equal(&a("e", 3), &a("s2 s1 s1^-1 s2^-1", 3)).unwrap());
    }

    #[test]
    fn permutation_cycles() {
        assert_eq!(a("s1", 2).permutation().cycle_count(), 1);
        assert_eq!(a("e", 3).permutation().cycle_count(), 3);
        assert_eq!(a("s1 s2", 3).permutation().cycle_count(), 1);
        assert_eq!(a("s1 s1", 3).permutation().cycle_count(), 3);
    }

    #[test]
    fn homogeneity_reports_mixed_generators() {
        let r = a("s1 s2^-1 s1 s2", 3).homogeneity();
        assert!(!r.homogeneous);
        assert_eq!(r.mixed, vec!["s2".to_string()]);
    }
}
