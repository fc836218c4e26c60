//! The plan language and its interpreter.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use fpgroups::{abelianization, verify_cyclic, AbelianGroup, CyclicVerdict, GroupError, Int, Presentation, VerdictLevel, Word};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::catalog::{BlockRef, BlockSpec, CatalogError, SurfaceSpec};
use crate::invariants::{blowup_invariants, chern_coords, sum_invariants, CharInvariants, InvariantError, Minimality};

pub const DEFAULT_BUDGET: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pi1 {
    Infinite,
    Finite(u64),
}

impl Pi1 {
    pub fn abelian(&self) -> AbelianGroup {
        match self {
            Pi1::Infinite => AbelianGroup::integers(),
            Pi1::Finite(p) => AbelianGroup::cyclic(Int::from(*p)),
        }
    }

    /// `z` or `zp:P`.
    pub fn descriptor(&self) -> String {
        match self {
            Pi1::Infinite => "z".into(),
            Pi1::Finite(p) => format!("zp:{p}"),
        }
    }
}

impl fmt::Display for Pi1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1::Infinite => f.write_str("Z"),
            Pi1::Finite(p) => write!(f, "Z_{p}"),
        }
    }
}

impl FromStr for Pi1 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("z") {
            return Ok(Pi1::Infinite);
        }
        let p = s
            .strip_prefix("zp:")
            .or_else(|| s.strip_prefix("Z_"))
            .ok_or_else(|| format!("expected `z` or `zp:P`, got `{s}`"))?;
        match p.parse::<u64>() {
            Ok(p) if p >= 2 => Ok(Pi1::Finite(p)),
            _ => Err(format!("bad order in `{s}` (need an integer >= 2)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Target {
    pub c1sq: i64,
    pub chi_h: i64,
    pub pi1: Pi1,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) with pi1 = {}", self.c1sq, self.chi_h, self.pi1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanStep {
    /// Symplectic sum. Words may use `@m`, `@l`, `@mu`, `@a1`, ... for the curves of
    /// the surface on their own side; kill words are read in the summed group.
    Sum {
        left_surface: String,
        right_block: BlockRef,
        right_surface: String,
        identifications: Vec<(String, String)>,
        kill: Vec<String>,
    },
    BlowUp {
        count: u32,
    },
    Luttinger {
        torus: String,
        curve: String,
        coefficient: Ratio<i64>,
    },
    TorusSurgery {
        torus: String,
        curve: String,
        coefficient: Ratio<i64>,
    },
}

impl PlanStep {
    pub fn luttinger(torus: &str, curve: &str, num: i64, den: i64) -> Self {
        PlanStep::Luttinger { torus: torus.into(), curve: curve.into(), coefficient: Ratio::new(num, den) }
    }

    pub fn torus_surgery(torus: &str, curve: &str, num: i64, den: i64) -> Self {
        PlanStep::TorusSurgery { torus: torus.into(), curve: curve.into(), coefficient: Ratio::new(num, den) }
    }

    /// Sum along tori with the usual pairing of push-offs and meridians.
    pub fn torus_sum(left: &str, block: BlockRef, right: &str) -> Self {
        PlanStep::Sum {
            left_surface: left.into(),
            right_block: block,
            right_surface: right.into(),
            identifications: vec![
                ("@m".into(), "@m".into()),
                ("@l".into(), "@l".into()),
                ("@mu".into(), "@mu^-1".into()),
            ],
            kill: Vec::new(),
        }
    }
}

fn fmt_coefficient(c: &Ratio<i64>) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanStep::Sum { left_surface, right_block, right_surface, .. } => {
                write!(f, "sum {left_surface} = {right_block}.{right_surface}")
            }
            PlanStep::BlowUp { count } => write!(f, "blow up {count}"),
            PlanStep::Luttinger { torus, curve, coefficient } => {
                write!(f, "luttinger {torus} along {curve}, {}", fmt_coefficient(coefficient))
            }
            PlanStep::TorusSurgery { torus, curve, coefficient } => {
                write!(f, "torus surgery {torus} along {curve}, {}", fmt_coefficient(coefficient))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub base: BlockRef,
    pub steps: Vec<PlanStep>,
    pub target: Option<Target>,
}

impl ConstructionPlan {
    pub fn new(base: BlockRef) -> Self {
        ConstructionPlan { base, steps: Vec::new(), target: None }
    }

    pub fn then(mut self, step: PlanStep) -> Self {
        self.steps.push(step);
        self
    }

    pub fn with_target(mut self, target: Target) -> Self {
        self.target = Some(target);
        self
    }

    /// Sets the free coefficient of every `n/1` torus surgery to `n` times its sign.
    pub fn with_dial(&self, n: i64) -> Self {
        let mut out = self.clone();
        for s in &mut out.steps {
            if let PlanStep::TorusSurgery { coefficient, .. } = s {
                if coefficient.denom().is_one() {
                    *coefficient = Ratio::from_integer(coefficient.numer().signum() * n);
                }
            }
        }
        out
    }

    pub fn has_dial(&self) -> bool {
        self.steps.iter().any(|s| matches!(s, PlanStep::TorusSurgery { coefficient, .. } if coefficient.denom().is_one()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("no surface `{0}` in the current inventory")]
    UnknownSurface(String),
    #[error("surface `{0}` was already consumed")]
    SurfaceConsumed(String),
    #[error("`{0}` is not a torus")]
    NonTorusSurgery(String),
    #[error("torus `{torus}` has no word for `{curve}`")]
    MissingWordData { torus: String, curve: String },
    #[error("coefficient {0} not allowed here")]
    BadCoefficient(String),
    #[error("cannot sum a genus {left} surface with a genus {right} surface")]
    GenusMismatch { left: u32, right: u32 },
    #[error("surface `{0}` has nonzero self-intersection")]
    NonzeroSquare(String),
    #[error("target mismatch: computed {computed}, expected {expected}")]
    TargetMismatch { computed: String, expected: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Group data of the closed manifold, filled in at the end of a plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub presentation: Presentation,
    pub abelianization: AbelianGroup,
    pub verdict: Option<CyclicVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldState {
    pub invariants: CharInvariants,
    /// Fundamental group of the complement of `surfaces`.
    pub presentation: Presentation,
    pub surfaces: Vec<SurfaceSpec>,
    pub consumed: BTreeSet<String>,
    pub admits_infinite_family: bool,
    pub history: Vec<PlanStep>,
    pub closure: Option<Closure>,
    sums: usize,
}

impl ManifoldState {
    pub fn from_block(b: &BlockSpec) -> Self {
        ManifoldState {
            invariants: b.invariants,
            presentation: b.presentation.clone(),
            surfaces: b.surfaces.clone(),
            consumed: BTreeSet::new(),
            admits_infinite_family: false,
            history: Vec::new(),
            closure: None,
            sums: 0,
        }
    }

    pub fn surface(&self, name: &str) -> Result<&SurfaceSpec, SurgeryError> {
        if let Some(s) = self.surfaces.iter().find(|s| s.name == name) {
            return Ok(s);
        }
        if self.consumed.contains(name) {
            Err(SurgeryError::SurfaceConsumed(name.into()))
        } else {
            Err(SurgeryError::UnknownSurface(name.into()))
        }
    }

    fn consume(&mut self, name: &str) {
        self.surfaces.retain(|s| s.name != name);
        self.consumed.insert(name.into());
    }

    /// The closed manifold's group: the complement's group with the meridian of
    /// every surviving surface killed.
    pub fn closed_presentation(&self) -> Presentation {
        let meridians: Vec<Word> = self.surfaces.iter().map(|s| s.meridian.word()).collect();
        self.presentation.quotient(&meridians).expect("meridians live in the state group")
    }

    pub fn verdict_level(&self) -> Option<VerdictLevel> {
        self.closure.as_ref().and_then(|c| c.verdict.as_ref()).map(|v| v.level)
    }
}

/// `mu * m^p * l^q` where `m` is the push-off named `curve` and `l` the other one.
pub fn luttinger_relation(t: &SurfaceSpec, curve: &str, p: i64, q: i64) -> Result<Word, SurgeryError> {
    if !t.is_torus() {
        return Err(SurgeryError::NonTorusSurgery(t.name.clone()));
    }
    if p == 0 && q == 0 {
        return Err(SurgeryError::BadCoefficient("0/0".into()));
    }
    let missing = || SurgeryError::MissingWordData { torus: t.name.clone(), curve: curve.into() };
    let m = t.pushoff(curve).ok_or_else(missing)?;
    let l = t.complementary(curve).ok_or_else(missing)?;
    Ok(t.meridian.word().mul(&m.pow(&Int::from(p))).mul(&l.pow(&Int::from(q))))
}

/// `mu^a * curve^b` for coefficient `a/b`.
pub fn surgery_relation(t: &SurfaceSpec, curve: &str, coefficient: &Ratio<i64>) -> Result<Word, SurgeryError> {
    if !t.is_torus() {
        return Err(SurgeryError::NonTorusSurgery(t.name.clone()));
    }
    if coefficient.is_zero() {
        return Err(SurgeryError::BadCoefficient(fmt_coefficient(coefficient)));
    }
    let c = t
        .pushoff(curve)
        .ok_or_else(|| SurgeryError::MissingWordData { torus: t.name.clone(), curve: curve.into() })?;
    let mu = t.meridian.word().pow(&Int::from(*coefficient.numer()));
    Ok(mu.mul(&c.pow(&Int::from(*coefficient.denom()))))
}

/// Replaces every `@token` by the parenthesized word of that curve on `s`.
fn expand_tokens(text: &str, s: &SurfaceSpec, render: impl Fn(&Word) -> String) -> Result<String, SurgeryError> {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.char_indices().peekable();
    while let Some((_, ch)) = chars.next() {
        if ch != '@' {
            out.push(ch);
            continue;
        }
        let mut token = String::new();
        while let Some(&(_, c)) = chars.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                token.push(c);
                chars.next();
            } else {
                break;
            }
        }
        let w = s
            .curve(&token)
            .ok_or_else(|| SurgeryError::MissingWordData { torus: s.name.clone(), curve: token.clone() })?;
        out.push('(');
        out.push_str(&render(&w));
        out.push(')');
    }
    Ok(out)
}

fn side_ok(inv: &CharInvariants, s: &SurfaceSpec) -> Option<bool> {
    match inv.minimal {
        Minimality::Minimal => Some(true),
        Minimality::NonMinimal => Some(s.absorbs_exceptional),
        Minimality::Unknown => None,
    }
}

fn sum_minimality(l: Option<bool>, r: Option<bool>) -> Minimality {
    match (l, r) {
        (Some(true), Some(true)) => Minimality::Minimal,
        (Some(false), _) | (_, Some(false)) => Minimality::NonMinimal,
        _ => Minimality::Unknown,
    }
}

fn apply_sum(
    mut s: ManifoldState,
    left_surface: &str,
    right_block: &BlockRef,
    right_surface: &str,
    identifications: &[(String, String)],
    kill: &[String],
) -> Result<ManifoldState, SurgeryError> {
    let left = s.surface(left_surface)?.clone();
    let block = right_block.lookup()?;
    let right = block
        .surface(right_surface)
        .ok_or_else(|| SurgeryError::UnknownSurface(format!("{}.{}", block.name, right_surface)))?
        .clone();
    if left.genus != right.genus {
        return Err(SurgeryError::GenusMismatch { left: left.genus, right: right.genus });
    }
    for side in [&left, &right] {
        if side.self_intersection != 0 {
            return Err(SurgeryError::NonzeroSquare(side.name.clone()));
        }
    }

    s.sums += 1;
    let tag = format!("s{}", s.sums);
    let shift = s.presentation.rank();
    let rp = &block.presentation;
    let mut pairs = Vec::with_capacity(identifications.len());
    for (u, v) in identifications {
        let u = expand_tokens(u, &left, |w| s.presentation.render_word(w))?;
        let v = expand_tokens(v, &right, |w| rp.render_word(w))?;
        pairs.push((s.presentation.parse_word(&u)?, rp.parse_word(&v)?));
    }
    let glued = Presentation::amalgamate(&s.presentation, &rp.prefixed(&tag), &pairs, &[])?;
    let mut kills = Vec::with_capacity(kill.len());
    for k in kill {
        let k = expand_tokens(k, &left, |w| s.presentation.render_word(w))?;
        kills.push(glued.parse_word(&k)?);
    }
    let glued = glued.quotient(&kills)?;

    let mut inv = sum_invariants(&s.invariants, &block.invariants, left.genus)?;
    assert_eq!(inv.e, s.invariants.e + block.invariants.e + 4 * i64::from(left.genus) - 4);
    assert_eq!(inv.sigma, s.invariants.sigma + block.invariants.sigma);
    inv.minimal = sum_minimality(side_ok(&s.invariants, &left), side_ok(&block.invariants, &right));

    s.consume(left_surface);
    let taken: BTreeSet<String> = s.surfaces.iter().map(|x| x.name.clone()).collect();
    for r in block.surfaces.iter().filter(|x| x.name != right_surface) {
        let mut moved = r.map_gens(|g| g + shift);
        if taken.contains(&moved.name) {
            moved.name = format!("{tag}.{}", r.name);
        }
        s.consumed.remove(&moved.name);
        s.surfaces.push(moved);
    }
    s.presentation = glued;
    s.invariants = inv;
    Ok(s)
}

fn apply_torus_step(
    mut s: ManifoldState,
    torus: &str,
    curve: &str,
    coefficient: &Ratio<i64>,
    luttinger: bool,
) -> Result<ManifoldState, SurgeryError> {
    if coefficient.is_zero() || (luttinger && !coefficient.numer().abs().is_one()) {
        return Err(SurgeryError::BadCoefficient(fmt_coefficient(coefficient)));
    }
    let t = s.surface(torus)?.clone();
    let r = surgery_relation(&t, curve, coefficient)?;
    s.presentation = s.presentation.quotient(&[r])?;
    if !luttinger {
        s.admits_infinite_family = true;
        if !coefficient.numer().abs().is_one() {
            s.invariants.symplectic = false;
        }
    }
    s.consume(torus);
    Ok(s)
}

pub fn apply_step(s: ManifoldState, step: &PlanStep) -> Result<ManifoldState, SurgeryError> {
    let mut out = match step {
        PlanStep::Sum { left_surface, right_block, right_surface, identifications, kill } => {
            apply_sum(s, left_surface, right_block, right_surface, identifications, kill)?
        }
        PlanStep::BlowUp { count } => {
            let mut s = s;
            s.invariants = blowup_invariants(&s.invariants, *count);
            s
        }
        PlanStep::Luttinger { torus, curve, coefficient } => apply_torus_step(s, torus, curve, coefficient, true)?,
        PlanStep::TorusSurgery { torus, curve, coefficient } => apply_torus_step(s, torus, curve, coefficient, false)?,
    };
    out.closure = None;
    out.history.push(step.clone());
    Ok(out)
}

/// Folds the steps, closes up the surviving surfaces and checks the target.
pub fn evaluate_plan(plan: &ConstructionPlan) -> Result<ManifoldState, SurgeryError> {
    evaluate_plan_with(plan, DEFAULT_BUDGET)
}

pub fn evaluate_plan_with(plan: &ConstructionPlan, budget: usize) -> Result<ManifoldState, SurgeryError> {
    let block = plan.base.lookup()?;
    let mut s = ManifoldState::from_block(&block);
    for step in &plan.steps {
        s = apply_step(s, step)?;
    }
    let closed = s.closed_presentation();
    let ab = abelianization(&closed);
    s.invariants.b1 = ab.free_rank as u32;
    let verdict = plan.target.map(|t| verify_cyclic(&closed, &t.pi1.abelian(), budget));
    s.closure = Some(Closure { presentation: closed, abelianization: ab.clone(), verdict: verdict.clone() });

    if let Some(t) = plan.target {
        let cc = chern_coords(&s.invariants);
        let coords_ok = cc.lattice() == Some((t.c1sq, t.chi_h));
        let group_ok = verdict.map_or(false, |v| v.level != VerdictLevel::Mismatch);
        if !coords_ok || !group_ok {
            return Err(SurgeryError::TargetMismatch {
                computed: format!("{cc} with pi1^ab = {ab}"),
                expected: t.to_string(),
            });
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn plan(name: &str) -> ConstructionPlan {
        ConstructionPlan::new(BlockRef::new(name))
    }

    fn ab(s: &ManifoldState) -> String {
        s.closure.as_ref().unwrap().abelianization.to_string()
    }

    #[test]
    fn relations() {
        let b = lookup("B", &Default::default()).unwrap();
        let t1 = b.surface("T1").unwrap();
        let t2 = b.surface("T2").unwrap();
        let r = |w: &Word| b.presentation.render_word(w);
        assert_eq!(r(&luttinger_relation(t1, "l", 1, 0).unwrap()), "t2");
        assert_eq!(r(&luttinger_relation(t2, "m", 3, 0).unwrap()), "t1^3");
        assert_eq!(r(&surgery_relation(t2, "m", &Ratio::new(1, 3)).unwrap()), "t1^3");
        let z = lookup("Z8", &Default::default()).unwrap();
        let s3 = z.surface("S3").unwrap();
        assert_eq!(z.presentation.render_word(&luttinger_relation(s3, "m", 1, 0).unwrap()), "b2^-1 y1^-1 b2 y1 x1");
        assert!(matches!(
            luttinger_relation(b.surface("F").unwrap(), "m", 1, 0),
            Err(SurgeryError::NonTorusSurgery(_))
        ));
    }

    #[test]
    fn telescoping_examples() {
        let z = evaluate_plan(&plan("B").then(PlanStep::luttinger("T2", "m", 1, 1))).unwrap();
        assert_eq!(ab(&z), "Z");
        assert_eq!(chern_coords(&z.invariants).lattice(), Some((6, 1)));
        let zp = evaluate_plan(
            &plan("B").then(PlanStep::luttinger("T2", "m", 1, 1)).then(PlanStep::luttinger("T1", "l", 1, 3)),
        )
        .unwrap();
        assert_eq!(ab(&zp), "Z_3");
        let id = evaluate_plan(&plan("Z8")).unwrap();
        assert_eq!((id.invariants.e, id.invariants.sigma), (4, 0));
    }

    #[test]
    fn sum_with_elliptic() {
        let p = plan("D").then(PlanStep::torus_sum("T1", BlockRef::new("E").with("k", 1), "T"));
        let s = evaluate_plan(&p).unwrap();
        assert_eq!((s.invariants.e, s.invariants.sigma, s.invariants.b1), (22, -14, 1));
        assert_eq!(ab(&s), "Z");
        assert!(matches!(apply_step(s.clone(), &PlanStep::luttinger("T1", "l", 1, 1)), Err(SurgeryError::SurfaceConsumed(_))));
        assert!(matches!(apply_step(s.clone(), &PlanStep::luttinger("Q", "l", 1, 1)), Err(SurgeryError::UnknownSurface(_))));
        assert!(matches!(apply_step(s, &PlanStep::luttinger("T2", "l", 2, 1)), Err(SurgeryError::BadCoefficient(_))));
    }

    #[test]
    fn blowup_zero_is_identity() {
        let b = lookup("B", &Default::default()).unwrap();
        let s = ManifoldState::from_block(&b);
        let t = apply_step(s.clone(), &PlanStep::BlowUp { count: 0 }).unwrap();
        assert_eq!((t.invariants, &t.presentation, &t.surfaces), (s.invariants, &s.presentation, &s.surfaces));
    }

    #[test]
    fn dial_and_target() {
        let p = plan("B")
            .then(PlanStep::luttinger("T2", "m", 1, 3))
            .then(PlanStep::torus_surgery("T1", "l", 1, 1))
            .with_target(Target { c1sq: 6, chi_h: 1, pi1: Pi1::Finite(3) });
        let a = evaluate_plan(&p).unwrap();
        let b = evaluate_plan(&p.with_dial(2)).unwrap();
        assert!(a.invariants.symplectic && !b.invariants.symplectic);
        assert!(a.admits_infinite_family && b.admits_infinite_family);
        assert_eq!(a.verdict_level(), Some(VerdictLevel::ProvenCyclic));
        let mut bad = p.clone();
        bad.target = Some(Target { c1sq: 6, chi_h: 1, pi1: Pi1::Infinite });
        assert!(matches!(evaluate_plan(&bad), Err(SurgeryError::TargetMismatch { .. })));
    }

    #[test]
    fn pi1_text() {
        assert_eq!("z".parse::<Pi1>(), Ok(Pi1::Infinite));
        assert_eq!("zp:3".parse::<Pi1>(), Ok(Pi1::Finite(3)));
        assert!("zp:1".parse::<Pi1>().is_err());
        assert_eq!(Pi1::Finite(5).to_string(), "Z_5");
    }
}
