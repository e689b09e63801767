//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;

use braidhom::diagram::Diagram;
use braidhom::oracle::{alexander_from_braid, alexander_from_diagram, burau_reduced, components_of_word};
use braidhom::pipeline::{homogenize, primitive_flat_to_bkl};
use braidhom::plumbing::{deplumb, plumb};
use braidhom::stars::{reduce_step, reduce_to_disc, remove_slack, validate, End, Hop, Ray, Star, Tip};
use braidhom::surface::{BraidedSurface, MoveSpec};
use braidhom::word::{bkl_braids_equal, braids_equal, parse_artin, parse_bkl, Band, BklWord, Word};
use braidhom::Error;
use common::gen::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn err(e: Error) -> String {
    e.to_string()
}

fn closure_invariants(w: &BklWord) -> Result<(usize, String), String> {
    let w = Word::Bkl(w.clone());
    Ok((components_of_word(&w), alexander_from_braid(&w).map_err(err)?.to_string()))
}

fn criterion_1() -> Outcome {
    let wp = parse_bkl("b(3,4) b(2,4) b(2,3) b(1,2)^-1 b(2,4) b(2,3) b(1,2)^-1", Some(4)).map_err(err)?;
    let w = parse_artin("s3^2 s2 s3^-1 s2 s3 s1^-1 s2 s3^-1 s2 s1^-1", Some(4)).map_err(err)?;
    ensure!(braids_equal(&wp.to_artin(), &w).map_err(err)?, "words are different braids");
    ensure!(wp.is_homogeneous(), "band word not homogeneous");
    ensure!(!w.homogeneity().homogeneous, "Artin word reported homogeneous");
    ensure!(wp.exponent_sum() == 3 && w.exponent_sum() == 3, "exponent sums {} {}", wp.exponent_sum(), w.exponent_sum());
    let (a, b) = (components_of_word(&Word::Bkl(wp)), components_of_word(&Word::Artin(w)));
    ensure!(a == 1 && b == 1, "components {a} {b}");
    Ok("equal braids, homogeneous band word, Artin word mixed, e = 3, knot".into())
}

fn criterion_2() -> Outcome {
    let w = parse_bkl("b(2,5)^-1 b(1,5) b(2,4) b(1,5) b(3,4)^-1 b(1,3) b(2,5)^-1", Some(5)).map_err(err)?;
    let s = BraidedSurface::from_word(&w);
    let got = [(s.left(0), s.right(0), s.sign(0)), (s.left(5), s.right(5), s.sign(5))];
    ensure!(got == [(2, 5, -1), (1, 3, 1)], "got {got:?}");
    Ok("z1 = (2,5,-), z6 = (1,3,+)".into())
}

fn criterion_3() -> Outcome {
    let w1 = parse_bkl("b(1,3) b(1,2)^-1 b(1,3)^-1", Some(3)).map_err(err)?;
    let w2 = parse_bkl("b(1,4)^-1 b(1,3) b(2,3)^-1 b(1,4)^-1", Some(4)).map_err(err)?;
    let p = "2121212".parse().map_err(err)?;
    let w = plumb(&w1, &w2, &p).map_err(err)?;
    let want = "b(3,6)^-1 b(1,3) b(3,5) b(1,2)^-1 b(4,5)^-1 b(1,3)^-1 b(3,6)^-1";
    ensure!(w.to_string() == want, "got {w}");
    ensure!(w.strands() == 6 && w.len() == 7, "{} discs {} bands", w.strands(), w.len());
    let d = deplumb(&w, 3).map_err(err)?;
    ensure!(d.first == w1 && d.second == w2 && d.pattern == p, "deplumb gave {} | {} | {}", d.first, d.second, d.pattern);
    Ok(want.into())
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..1000 {
        let w1 = homogeneous_bkl(&mut rng, 5, 8);
        let w2 = homogeneous_bkl(&mut rng, 5, 8);
        let p = random_pattern(&mut rng, w1.len(), w2.len());
        let w = plumb(&w1, &w2, &p).map_err(err)?;
        ensure!(w.is_homogeneous(), "pair {i}: plumb({w1}, {w2}, {p}) = {w} not homogeneous");
        ensure!(w.strands() == w1.strands() + w2.strands() - 1 && w.len() == w1.len() + w2.len(), "pair {i}: counts");
    }
    for i in 0..1000 {
        let n = rng.gen_range(2..8);
        let k = rng.gen_range(1..=n);
        let w = random_plumbed(&mut rng, n, k);
        let d = deplumb(&w, k).map_err(err)?;
        ensure!(d.first.is_homogeneous() && d.second.is_homogeneous(), "word {i}: {w} parts not homogeneous");
        let back = plumb(&d.first, &d.second, &d.pattern).map_err(err)?;
        ensure!(back == w, "word {i}: {w} came back as {back}");
    }
    Ok("1000 plumbings homogeneous, 1000 deplumbings homogeneous and inverted".into())
}

/// Homogeneous word on `n` discs with every band on one side of disc `k`.
fn random_plumbed<R: Rng>(rng: &mut R, n: usize, k: usize) -> BklWord {
    let mut sign = std::collections::HashMap::new();
    let len = rng.gen_range(0..10);
    let letters = (0..len)
        .filter_map(|_| {
            let (lo, hi) = if rng.gen_bool(0.5) { (1, k) } else { (k, n) };
            if hi <= lo {
                return None;
            }
            let r = rng.gen_range(lo..hi);
            let s = rng.gen_range(r + 1..=hi);
            let e = *sign.entry((r, s)).or_insert(if rng.gen_bool(0.5) { 1 } else { -1 });
            Some(Band::new(r, s, e))
        })
        .collect();
    BklWord::new(n, letters).unwrap()
}

fn random_bkl<R: Rng>(rng: &mut R) -> BklWord {
    let n = rng.gen_range(2..6);
    let len = rng.gen_range(1..9);
    let letters = (0..len)
        .map(|_| {
            let r = rng.gen_range(1..n);
            let s = rng.gen_range(r + 1..=n);
            Band::new(r, s, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    BklWord::new(n, letters).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counts = [0usize; 3];
    for i in 0..1000 {
        let w = random_bkl(&mut rng);
        let s = BraidedSurface::from_word(&w);
        let nb = s.bands().len();
        let makers: [fn(usize) -> MoveSpec; 3] =
            [|pos| MoveSpec::Slip { pos }, |pos| MoveSpec::SlideUp { pos }, |pos| MoveSpec::SlideDown { pos }];
        for (c, make) in makers.into_iter().enumerate() {
            let legal: Vec<usize> = (0..nb.saturating_sub(1)).filter(|&p| s.apply(make(p)).is_ok()).collect();
            if legal.is_empty() {
                continue;
            }
            let m = make(legal[rng.gen_range(0..legal.len())]);
            let t = s.apply(m).map_err(err)?;
            ensure!(bkl_braids_equal(&w, &t.to_word()).map_err(err)?, "surface {i}: {m} changed the braid of {w}");
            counts[c] += 1;
        }
        let base = closure_invariants(&w)?;
        let i_disc = rng.gen_range(1..=s.discs());
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let at = rng.gen_range(0..=nb);
        let inflated = s.apply(MoveSpec::Inflate { i: i_disc, sign, at }).map_err(err)?;
        let deflated = inflated.apply(MoveSpec::Deflate { band: at }).map_err(err)?;
        ensure!(deflated == s, "surface {i}: deflate did not undo inflate");
        for (name, t) in [
            ("turn", s.apply(MoveSpec::Turn).map_err(err)?),
            ("twirl", s.apply(MoveSpec::Twirl).map_err(err)?),
            ("inflate", inflated),
        ] {
            ensure!(closure_invariants(&t.to_word())? == base, "surface {i}: {name} changed the closure of {w}");
        }
        if let Some(b) = (0..nb).find(|&b| s.apply(MoveSpec::Deflate { band: b }).is_ok()) {
            let t = s.apply(MoveSpec::Deflate { band: b }).map_err(err)?;
            ensure!(closure_invariants(&t.to_word())? == base, "surface {i}: deflate changed the closure of {w}");
        }
        let f = s.apply(MoveSpec::FlipVertical).map_err(err)?.apply(MoveSpec::FlipVertical).map_err(err)?;
        ensure!(f == s, "surface {i}: flip_vertical twice is not the identity");
    }
    ensure!(counts.iter().all(|&c| c >= 100), "too few applicable slips/slides: {counts:?}");
    Ok(format!("1000 surfaces; slip {} slide_up {} slide_down {} braid-preserving", counts[0], counts[1], counts[2]))
}

fn golden_star() -> (BraidedSurface, Star) {
    let s = BraidedSurface::from_word(&parse_bkl("b(1,2) b(1,2)", Some(2)).unwrap());
    let hop = Hop { band: 1, from: End::L, to: End::R, enter: 0, exit: 0 };
    let star = Star { center: 1, rays: vec![Ray { hops: vec![hop], tip: Tip { disc: 2, gap: 0, slot: 0 } }] };
    (s, star)
}

fn check_step(s: &BraidedSurface, star: &Star) -> Result<BraidedSurface, String> {
    let r = reduce_step(s, star).map_err(err)?;
    validate(&r.surface, &r.star).map_err(err)?;
    let (w, w2) = (s.to_word(), r.surface.to_word());
    ensure!(r.star.delta_b() < star.delta_b(), "{w}: δ_b {} -> {}", star.delta_b(), r.star.delta_b());
    ensure!(r.surface.discs() == s.discs() + 1 && r.surface.bands().len() == s.bands().len() + 1, "{w}: counts");
    ensure!(w2.is_homogeneous(), "{w} -> {w2} not homogeneous");
    ensure!(closure_invariants(&w)? == closure_invariants(&w2)?, "{w} -> {w2} changed the closure");
    Ok(r.surface)
}

fn criterion_6() -> Outcome {
    let (s, star) = golden_star();
    let t = check_step(&s, &star)?;
    ensure!(t.to_word().to_string() == "b(2,3) b(1,3) b(2,3)", "golden gave {}", t.to_word());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut steps, mut tries, mut walks) = (0, 0, 0);
    while steps < 150 {
        tries += 1;
        ensure!(tries < 20_000, "only {steps} generated instances met the preconditions");
        let s = BraidedSurface::from_word(&homogeneous_bkl(&mut rng, 5, 7));
        let star = remove_slack(&s, &random_star(&mut rng, &s, 3, 30)).map_err(err)?;
        match reduce_step(&s, &star) {
            Err(Error::Precondition { .. }) => {}
            _ => {
                check_step(&s, &star)?;
                steps += 1;
            }
        }
        let r = reduce_to_disc(&s, &star).map_err(err)?;
        ensure!(r.star.delta_b() == 0 && r.steps <= star.delta_b(), "reduce_to_disc took {} steps from δ_b {}", r.steps, star.delta_b());
        ensure!(r.surface.to_word().is_homogeneous(), "reduce_to_disc lost homogeneity");
        walks += usize::from(r.steps > 0);
    }
    Ok(format!("golden plus {steps} generated steps; {tries} reductions to a disc, {walks} needing steps"))
}

fn criterion_7() -> Outcome {
    let check = |name: &str, d: &Diagram| -> Result<(), String> {
        let s = d.seifert().map_err(err)?;
        let h = homogenize(d).map_err(|e| format!("{name}: {e}"))?;
        let w = &h.word;
        ensure!(w.is_homogeneous(), "{name}: {w} not homogeneous");
        ensure!(w.strands() == s.circle_count(), "{name}: {} strands for {} circles", w.strands(), s.circle_count());
        ensure!(w.len() == d.crossings().len(), "{name}: {} letters for {} crossings", w.len(), d.crossings().len());
        let bw = Word::Bkl(w.clone());
        ensure!(components_of_word(&bw) == d.link_components().map_err(err)?, "{name}: components differ");
        let (a, b) = (alexander_from_braid(&bw).map_err(err)?, alexander_from_diagram(d).map_err(err)?);
        ensure!(a == b, "{name}: Alexander {a} from {w} vs {b}");
        Ok(())
    };
    let corpus = [
        ("positive trefoil", trefoil()),
        ("negative trefoil", trefoil().mirror()),
        ("figure-eight", figure_eight()),
        ("positive 5_2", five_two().mirror()),
        ("9_43", nine_43()),
    ];
    for (name, d) in &corpus {
        check(name, d)?;
    }
    ensure!(
        matches!(primitive_flat_to_bkl(&figure_eight()), Err(Error::Precondition { .. })),
        "figure-eight accepted as primitive flat"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..60 {
        let d = random_homogeneous_diagram(&mut rng);
        check(&format!("random {i}"), &d)?;
    }
    Ok("5 corpus diagrams and 60 random homogeneous diagrams".into())
}

fn criterion_8() -> Outcome {
    let pairs = [
        ("trefoil", "s1^3", trefoil(), "t^2 - t + 1"),
        ("figure-eight", "s1 s2^-1 s1 s2^-1", figure_eight(), "t^2 - 3*t + 1"),
        ("5_2", "s2^-3 s1^-1 s2 s1^-1", five_two(), "2*t^2 - 3*t + 2"),
    ];
    for (name, braid, d, table) in pairs {
        let a = alexander_from_braid(&Word::Artin(parse_artin(braid, None).map_err(err)?)).map_err(err)?;
        let b = alexander_from_diagram(&d).map_err(err)?;
        ensure!(a == b && a.to_string() == table, "{name}: braid {a}, diagram {b}, table {table}");
    }
    for n in [3, 4] {
        let g = |t: &str| burau_reduced(&parse_artin(t, Some(n)).unwrap());
        ensure!(g("s1 s2 s1") == g("s2 s1 s2"), "B{n}: braid relation s1 s2 s1");
        ensure!(g("s1 s1^-1") == g("e"), "B{n}: inverse");
        if n == 4 {
            ensure!(g("s2 s3 s2") == g("s3 s2 s3"), "B4: braid relation s2 s3 s2");
            ensure!(g("s1 s3") == g("s3 s1"), "B4: far commutation");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8 + n as u64);
        for _ in 0..50 {
            let mut rand_word = || -> braidhom::ArtinWord {
                let len = rng.gen_range(0..7);
                let letters = (0..len)
                    .map(|_| rng.gen_range(1..n as i32) * if rng.gen_bool(0.5) { 1 } else { -1 })
                    .collect();
                braidhom::ArtinWord::new(n, letters).unwrap()
            };
            let (u, v) = (rand_word(), rand_word());
            let uv = u.concat(&v).map_err(err)?;
            ensure!(burau_reduced(&uv) == burau_reduced(&u).mul(&burau_reduced(&v)), "B{n}: not multiplicative on {u} | {v}");
        }
    }
    Ok("trefoil, figure-eight, 5_2 agree with tables; Burau relations on B3, B4".into())
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 8] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        match c() {
            Ok(msg) => println!("criterion {}: PASS ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL ({msg})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
