//! Normalized Kauffman bracket `(-A^3)^(-writhe) <D>`, computed by
//! contracting crossings one at a time while tracking how the open edge
//! ends are joined. Detects chirality, unlike the Alexander polynomial.

use std::collections::{BTreeMap, HashMap};

use braidhom::diagram::Diagram;
use braidhom::Laurent;

type State = Vec<(usize, usize)>;

fn loop_value() -> Laurent {
    // d = -A^2 - A^-2
    Laurent::from_i64s(-2, &[-1, 0, 0, 0, -1])
}

/// Join `p` and `q` in a partial matching; returns true if a loop closed.
fn join(partner: &mut HashMap<usize, usize>, deg: &mut HashMap<usize, u8>, p: usize, q: usize) -> bool {
    let dp = *deg.get(&p).unwrap_or(&0);
    let dq = *deg.get(&q).unwrap_or(&0);
    *deg.entry(p).or_insert(0) += 1;
    *deg.entry(q).or_insert(0) += 1;
    if p == q {
        return true;
    }
    let ep = if dp == 1 { partner.remove(&p).unwrap() } else { p };
    let eq = if dq == 1 { partner.remove(&q).unwrap() } else { q };
    if dp == 1 {
        partner.remove(&ep);
    }
    if dq == 1 {
        partner.remove(&eq);
    }
    if dp == 1 && dq == 1 && ep == q {
        return true;
    }
    partner.insert(ep, eq);
    partner.insert(eq, ep);
    false
}

pub fn bracket_invariant(d: &Diagram) -> Laurent {
    let xs = d.crossings();
    let signs = d.analyze().unwrap().signs;
    let writhe: i64 = signs.iter().map(|&s| s as i64).sum();
    // Greedy order keeping the frontier small.
    let mut order = Vec::new();
    let mut used = vec![false; xs.len()];
    let mut seen: HashMap<usize, u8> = HashMap::new();
    for _ in 0..xs.len() {
        let best = (0..xs.len())
            .filter(|&i| !used[i])
            .max_by_key(|&i| (xs[i].iter().filter(|l| seen.contains_key(l)).count(), std::cmp::Reverse(i)))
            .unwrap();
        used[best] = true;
        for &l in &xs[best] {
            *seen.entry(l).or_insert(0) += 1;
        }
        order.push(best);
    }
    let dv = loop_value();
    let mut states: BTreeMap<State, Laurent> = BTreeMap::new();
    states.insert(Vec::new(), Laurent::one());
    let mut deg: HashMap<usize, u8> = HashMap::new();
    for &ci in &order {
        let [a, b, c, e] = xs[ci];
        let mut next: BTreeMap<State, Laurent> = BTreeMap::new();
        for (st, val) in &states {
            for (pairs, weight) in [([(a, b), (c, e)], -1i64), ([(a, e), (b, c)], 1i64)] {
                let mut partner: HashMap<usize, usize> = st.iter().flat_map(|&(x, y)| [(x, y), (y, x)]).collect();
                let mut dg = deg.clone();
                let mut v = val * &Laurent::monomial(1, weight);
                for (p, q) in pairs {
                    if join(&mut partner, &mut dg, p, q) {
                        v = &v * &dv;
                    }
                }
                let mut key: State = partner.iter().filter(|(x, y)| x < y).map(|(&x, &y)| (x, y)).collect();
                key.sort_unstable();
                let slot = next.entry(key).or_insert_with(Laurent::zero);
                *slot = &*slot + &v;
            }
        }
        for &l in &xs[ci] {
            *deg.entry(l).or_insert(0) += 1;
        }
        states = next;
    }
    let mut total = states.remove(&Vec::new()).unwrap_or_else(Laurent::zero);
    if !xs.is_empty() {
        total = total.div_exact(&dv).expect("at least one loop");
    }
    for _ in 1..d.unknots().max(1) {
        total = &total * &dv;
    }
    if xs.is_empty() && d.unknots() == 0 {
        return Laurent::one();
    }
    let w = Laurent::monomial(if writhe % 2 == 0 { 1 } else { -1 }, -3 * writhe);
    &total * &w
}
