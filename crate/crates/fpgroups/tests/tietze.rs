use fpgroups::abelian::abelianization;
use fpgroups::presentation::Presentation;
use fpgroups::simplify::simplify;
use fpgroups::word::{free_reduce, Word};
use proptest::prelude::*;

type P = Presentation<i64>;
type W = Word<i64>;

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = W> {
    prop::collection::vec((0..gens, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]), 0..=max_len)
        .prop_map(W::from_letters)
}

fn presentation() -> impl Strategy<Value = P> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(word(n, 6), 0..=4).prop_map(move |rels| {
            let p = P::new((0..n).map(|i| format!("x{i}"))).unwrap();
            p.with_relators(rels).unwrap()
        })
    })
}

#[derive(Clone, Debug)]
enum Move {
    /// append r_i * w r_j w^-1 (a consequence)
    Consequence(usize, usize, Vec<(usize, i64)>),
    /// new generator defined as a word in the old ones
    Define(Vec<(usize, i64)>),
    /// replace a relator by a conjugate of its inverse
    Flip(usize, Vec<(usize, i64)>),
    /// eliminate a generator through a relator where it occurs once
    Eliminate(usize),
}

fn moves() -> impl Strategy<Value = Vec<Move>> {
    let raw = prop::collection::vec((0usize..8, 1i64..=2), 0..4)
        .prop_map(|v| v.into_iter().map(|(g, e)| (g, if g % 2 == 0 { e } else { -e })).collect::<Vec<_>>());
    let mv = prop_oneof![
        (0usize..8, 0usize..8, raw.clone()).prop_map(|(i, j, w)| Move::Consequence(i, j, w)),
        raw.clone().prop_map(Move::Define),
        (0usize..8, raw).prop_map(|(i, w)| Move::Flip(i, w)),
        (0usize..8).prop_map(Move::Eliminate),
    ];
    prop::collection::vec(mv, 10)
}

fn clamp(p: &P, raw: &[(usize, i64)]) -> W {
    if p.rank() == 0 {
        return W::identity();
    }
    W::from_letters(raw.iter().map(|&(g, e)| (g % p.rank(), e)))
}

fn apply(p: &P, m: &Move) -> P {
    let rels = p.relators();
    match m {
        Move::Consequence(i, j, w) if !rels.is_empty() => {
            let (a, b) = (&rels[i % rels.len()], &rels[j % rels.len()]);
            let c = clamp(p, w);
            p.quotient(&[a.mul(&c).mul(b).mul(&c.inverse())]).unwrap()
        }
        Move::Define(w) => {
            let image = clamp(p, w);
            let mut q = p.clone();
            let name = (0..).map(|i| format!("y{i}")).find(|n| p.index_of(n).is_none()).unwrap();
            let g = q.add_generator(name).unwrap();
            q.add_relator(W::gen(g).mul(&image.inverse())).unwrap();
            q
        }
        Move::Flip(i, w) if !rels.is_empty() => {
            let c = clamp(p, w);
            let mut v = rels.to_vec();
            let k = i % v.len();
            v[k] = c.mul(&v[k].inverse()).mul(&c.inverse());
            p.with_relators(v).unwrap()
        }
        Move::Eliminate(i) if !rels.is_empty() => {
            // a one-step budget performs at most one Tietze elimination
            let k = i % rels.len();
            let mut v = rels.to_vec();
            v.rotate_left(k);
            simplify(&p.with_relators(v).unwrap(), 1)
        }
        _ => p.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // 100 presentations x 10 moves = 1000 random valid Tietze moves
    #[test]
    fn abelianization_survives_tietze_moves(p in presentation(), ms in moves()) {
        let ab = abelianization(&p);
        let mut cur = p.clone();
        for m in &ms {
            cur = apply(&cur, m);
            prop_assert_eq!(abelianization(&cur), ab.clone(), "after {:?}: {}", m, cur);
        }
        prop_assert_eq!(abelianization(&simplify(&cur, 200)), ab);
    }

    #[test]
    fn simplify_preserves_abelianization(p in presentation()) {
        let s = simplify(&p, 100);
        prop_assert_eq!(abelianization(&s), abelianization(&p));
        prop_assert!(s.rank() <= p.rank());
    }

    #[test]
    fn free_reduce_idempotent_and_shrinking(raw in prop::collection::vec((0usize..3, -3i64..=3), 0..20)) {
        let w = W::from_letters(raw.iter().copied());
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        let naive: i64 = raw.iter().map(|&(_, e)| e.abs()).sum();
        prop_assert!(r.length() <= naive);
        prop_assert_eq!(r.cyclic_reduce().cyclic_reduce(), r.cyclic_reduce());
    }

    #[test]
    fn quotient_and_amalgamate_counts(a in presentation(), b in presentation(), w in word(1, 3)) {
        let q = a.quotient(&[w.clone()]).unwrap();
        prop_assert_eq!(q.rank(), a.rank());
        let c = P::amalgamate(&a, &b.prefixed("r"), &[(w.clone(), w)], &[]).unwrap();
        prop_assert_eq!(c.rank(), a.rank() + b.rank());
    }
}
