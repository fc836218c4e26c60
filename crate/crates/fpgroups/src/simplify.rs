//! Bounded Tietze simplification.
//!
//! Moves, in a fixed order each round:
//! 1. commutation closure: a relator `h = v` with `h` occurring once adds `[g, h]`
//!    whenever every letter of `v` is `g` or already commutes with `g`;
//! 2. reduction of every relator modulo the known commuting pairs;
//! 3. one generator elimination from the shortest relator with a letter of
//!    exponent +-1 occurring once (lowest relator index, then lowest generator id).
//!
//! Every move is a Tietze transformation or adds a consequence, so the group
//! presented never changes.

use std::collections::{BTreeSet, HashSet};

use crate::presentation::Presentation;
use crate::word::{Letter, Word};
use crate::Scalar;

/// Rotations are only searched for relators up to this many syllables.
const ROTATION_LIMIT: usize = 96;

pub fn simplify<E: Scalar>(p: &Presentation<E>, budget: usize) -> Presentation<E> {
    let mut cur = normalize(p, &BTreeSet::new());
    let mut moves = 0usize;
    while moves < budget {
        let edges = commuting_pairs(&cur);
        if let Some(added) = closure_round(&cur, &edges, budget - moves) {
            moves += added.len();
            let mut gens = cur.generators().to_vec();
            let mut rels = cur.relators().to_vec();
            for (g, h) in added {
                rels.push(Word::commutator(&Word::gen(g), &Word::gen(h)));
            }
            cur = Presentation::from_parts(std::mem::take(&mut gens), rels);
            continue;
        }
        let reduced = normalize(&cur, &edges);
        if reduced != cur {
            cur = reduced;
            continue;
        }
        match pick_elimination(&cur) {
            Some((ri, g)) => {
                let image = solve_for(&cur.relators()[ri], g);
                let mut rest = cur.clone();
                let mut rels = rest.relators().to_vec();
                rels.remove(ri);
                rest = Presentation::from_parts(rest.generators().to_vec(), rels);
                cur = rest.eliminate(g, &image);
                moves += 1;
            }
            None => break,
        }
    }
    cur
}

/// `Some((g, h))` when `w` is `[g^+-1, h^+-1]` up to rotation.
pub fn generator_commutator<E: Scalar>(w: &Word<E>) -> Option<(usize, usize)> {
    let l = w.letters();
    if l.len() != 4 || l.iter().any(|x| !x.exp.abs().is_one()) {
        return None;
    }
    let (g, h) = (l[0].gen, l[1].gen);
    if g == h || l[2].gen != g || l[3].gen != h {
        return None;
    }
    if l[2].exp != -l[0].exp.clone() || l[3].exp != -l[1].exp.clone() {
        return None;
    }
    Some((g.min(h), g.max(h)))
}

fn commuting_pairs<E: Scalar>(p: &Presentation<E>) -> BTreeSet<(usize, usize)> {
    p.relators().iter().filter_map(generator_commutator).collect()
}

fn commutes(edges: &BTreeSet<(usize, usize)>, a: usize, b: usize) -> bool {
    a == b || edges.contains(&(a.min(b), a.max(b)))
}

/// Solves `r = 1` for `g`, which must occur exactly once with exponent +-1.
fn solve_for<E: Scalar>(r: &Word<E>, g: usize) -> Word<E> {
    let pos = r.letters().iter().position(|l| l.gen == g).expect("generator occurs");
    let rot = r.rotate(pos);
    let first = &rot.letters()[0];
    debug_assert_eq!(first.gen, g);
    let rest = Word::from_letters(rot.letters()[1..].iter().map(|l| (l.gen, l.exp.clone())));
    if first.exp.is_one() {
        rest.inverse()
    } else {
        rest
    }
}

fn eliminable<E: Scalar>(r: &Word<E>) -> impl Iterator<Item = usize> + '_ {
    let mut seen = BTreeSet::new();
    r.letters()
        .iter()
        .filter(|l| l.exp.abs().is_one())
        .map(|l| l.gen)
        .filter(move |&g| seen.insert(g))
        .filter(move |&g| r.occurrences(g) == 1)
}

fn pick_elimination<E: Scalar>(p: &Presentation<E>) -> Option<(usize, usize)> {
    let mut best: Option<(E, usize, usize)> = None;
    for (ri, r) in p.relators().iter().enumerate() {
        let Some(g) = eliminable(r).min() else { continue };
        let len = r.length();
        match &best {
            Some((bl, _, _)) if *bl <= len => {}
            _ => best = Some((len, ri, g)),
        }
    }
    best.map(|(_, ri, g)| (ri, g))
}

fn closure_round<E: Scalar>(
    p: &Presentation<E>,
    edges: &BTreeSet<(usize, usize)>,
    room: usize,
) -> Option<Vec<(usize, usize)>> {
    let mut added: Vec<(usize, usize)> = Vec::new();
    let mut known = edges.clone();
    for r in p.relators() {
        if generator_commutator(r).is_some() {
            continue;
        }
        let hs: Vec<usize> = eliminable(r).collect();
        for h in hs {
            let v = solve_for(r, h);
            if v.is_identity() {
                continue;
            }
            let letters: BTreeSet<usize> = v.letters().iter().map(|l| l.gen).collect();
            for g in 0..p.rank() {
                if g == h || commutes(&known, g, h) {
                    continue;
                }
                if letters.iter().all(|&x| commutes(&known, g, x)) {
                    known.insert((g.min(h), g.max(h)));
                    added.push((g, h));
                    if added.len() >= room {
                        return Some(added);
                    }
                }
            }
        }
    }
    if added.is_empty() {
        None
    } else {
        Some(added)
    }
}

/// Pushes `g^e`, merging with an earlier `g` reachable across commuting letters.
fn push_commuting<E: Scalar>(out: &mut Vec<Letter<E>>, g: usize, e: E, edges: &BTreeSet<(usize, usize)>) {
    let mut j = out.len();
    while j > 0 {
        j -= 1;
        if out[j].gen == g {
            let s = out[j].exp.clone() + e;
            if s.is_zero() {
                out.remove(j);
            } else {
                out[j].exp = s;
            }
            return;
        }
        if !commutes(edges, out[j].gen, g) {
            break;
        }
    }
    out.push(Letter { gen: g, exp: e });
}

pub fn reduce_commuting<E: Scalar>(w: &Word<E>, edges: &BTreeSet<(usize, usize)>) -> Word<E> {
    let mut cur = w.clone();
    loop {
        let mut out: Vec<Letter<E>> = Vec::with_capacity(cur.syllables());
        for l in cur.letters() {
            push_commuting(&mut out, l.gen, l.exp.clone(), edges);
        }
        let next = Word::from_letters(out.into_iter().map(|l| (l.gen, l.exp)));
        if next.syllables() == cur.syllables() && next.length() == cur.length() {
            return next;
        }
        cur = next;
    }
}

fn reduce_relator<E: Scalar>(w: &Word<E>, edges: &BTreeSet<(usize, usize)>) -> Word<E> {
    let mut cur = reduce_commuting(&w.cyclic_reduce(), edges).cyclic_reduce();
    if edges.is_empty() {
        return cur;
    }
    'outer: loop {
        let n = cur.syllables();
        if n < 2 || n > ROTATION_LIMIT {
            return cur;
        }
        for k in 1..n {
            let cand = reduce_commuting(&cur.rotate(k), edges).cyclic_reduce();
            if cand.length() < cur.length() {
                cur = cand;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Reduces all relators, drops trivial and repeated ones. Generator commutators
/// are kept verbatim since they carry the commuting pairs.
fn normalize<E: Scalar>(p: &Presentation<E>, edges: &BTreeSet<(usize, usize)>) -> Presentation<E> {
    let mut seen_words: HashSet<Word<E>> = HashSet::new();
    let mut seen_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut rels = Vec::new();
    for r in p.relators() {
        if let Some(pair) = generator_commutator(r) {
            if seen_pairs.insert(pair) {
                rels.push(r.clone());
            }
            continue;
        }
        let w = reduce_relator(r, edges);
        if w.is_identity() {
            continue;
        }
        if let Some(pair) = generator_commutator(&w) {
            if seen_pairs.insert(pair) {
                rels.push(w);
            }
            continue;
        }
        if seen_words.insert(w.clone()) && seen_words.insert(w.inverse()) {
            rels.push(w);
        }
    }
    Presentation::from_parts(p.generators().to_vec(), rels)
}
