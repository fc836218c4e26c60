//! Building blocks: invariants, surface inventories and the words that
//! describe their fundamental groups.
//!
//! Presentations are for the complement of every listed surface. Words are
//! stored parsed against the block's own generator names.

use std::collections::BTreeMap;
use std::fmt;

use fpgroups::{Presentation, Word};
use thiserror::Error;

use crate::invariants::{betti, chern_coords, CharInvariants, Minimality, Parity};

pub type Params = BTreeMap<String, u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown block `{0}`")]
    UnknownBlock(String),
    #[error("parameter `{param}` = {value} out of range for `{block}` ({range})")]
    ParamOutOfRange { block: String, param: String, value: i64, range: &'static str },
}

/// A block name with its family parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockRef {
    pub name: String,
    pub params: Params,
}

impl BlockRef {
    pub fn new(name: &str) -> Self {
        BlockRef { name: name.to_string(), params: Params::new() }
    }

    pub fn with(mut self, key: &str, value: u32) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn lookup(&self) -> Result<BlockSpec, CatalogError> {
        lookup(&self.name, &self.params)
    }
}

impl fmt::Display for BlockRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", ps.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meridian {
    Trivial,
    Word(Word),
}

impl Meridian {
    pub fn word(&self) -> Word {
        match self {
            Meridian::Trivial => Word::identity(),
            Meridian::Word(w) => w.clone(),
        }
    }

    fn map_gens(&self, f: impl Fn(usize) -> usize) -> Self {
        match self {
            Meridian::Trivial => Meridian::Trivial,
            Meridian::Word(w) => Meridian::Word(w.map_gens(f)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub name: String,
    pub genus: u32,
    pub self_intersection: i64,
    pub meridian: Meridian,
    /// `m` then `l` for tori used in surgeries.
    pub pushoffs: Vec<(String, Word)>,
    /// Images of `a1, b1, a2, b2, ...` in the ambient group.
    pub pi1_images: Vec<(String, Word)>,
    pub lagrangian: bool,
    pub geometric_dual: Option<String>,
    /// Every exceptional sphere of the block meets this surface.
    pub absorbs_exceptional: bool,
}

impl SurfaceSpec {
    pub fn is_torus(&self) -> bool {
        self.genus == 1
    }

    pub fn pushoff(&self, curve: &str) -> Option<&Word> {
        self.pushoffs.iter().find(|(c, _)| c == curve).map(|(_, w)| w)
    }

    /// The push-off other than `curve` (the canonical order is `m`, `l`).
    pub fn complementary(&self, curve: &str) -> Option<&Word> {
        if self.pushoffs.len() != 2 || self.pushoff(curve).is_none() {
            return None;
        }
        self.pushoffs.iter().find(|(c, _)| c != curve).map(|(_, w)| w)
    }

    /// Resolves a curve token: `mu`, a push-off name, or a `pi1_images` name.
    pub fn curve(&self, token: &str) -> Option<Word> {
        if token == "mu" {
            return Some(self.meridian.word());
        }
        self.pushoff(token)
            .or_else(|| self.pi1_images.iter().find(|(c, _)| c == token).map(|(_, w)| w))
            .cloned()
    }

    /// Same surface with every word moved by `f` (used when a block joins a larger group).
    pub fn map_gens(&self, f: impl Fn(usize) -> usize + Copy) -> Self {
        SurfaceSpec {
            meridian: self.meridian.map_gens(f),
            pushoffs: self.pushoffs.iter().map(|(c, w)| (c.clone(), w.map_gens(f))).collect(),
            pi1_images: self.pi1_images.iter().map(|(c, w)| (c.clone(), w.map_gens(f))).collect(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    E,
    Sigma,
    C1sq,
    ChiH,
    B2Plus,
    B2Minus,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quantity::E => "e",
            Quantity::Sigma => "sigma",
            Quantity::C1sq => "c1^2",
            Quantity::ChiH => "chi_h",
            Quantity::B2Plus => "b2+",
            Quantity::B2Minus => "b2-",
        };
        f.write_str(s)
    }
}

/// A number recorded for a block, kept separate from the invariants actually used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stated {
    pub quantity: Quantity,
    pub value: i64,
    pub citation: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSpec {
    pub name: String,
    pub params: Params,
    pub invariants: CharInvariants,
    pub presentation: Presentation,
    pub surfaces: Vec<SurfaceSpec>,
    pub telescoping: bool,
    pub notes: &'static str,
    pub stated: Vec<Stated>,
}

impl BlockSpec {
    pub fn surface(&self, name: &str) -> Option<&SurfaceSpec> {
        self.surfaces.iter().find(|s| s.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistency {
    pub subject: String,
    pub citation: String,
    pub detail: String,
}

impl fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [{}]", self.subject, self.detail, self.citation)
    }
}

/// Every block name with default parameters, in catalog order.
pub const NAMES: &[&str] = &[
    "B", "B_g", "C", "D", "A", "Btilde", "E", "E'", "T4", "T4#n", "T2xS2#n", "T2xSigma2", "T2xSigma2#2",
    "Sigma2xSigma_n", "Z8", "ZBK", "X1", "S11", "R21", "R22", "X3_12", "JPark", "P", "P58", "H", "M94", "S364",
];

fn default_params(name: &str) -> Params {
    let mut p = Params::new();
    match name {
        "B_g" => {
            p.insert("g".into(), 1);
        }
        "E" | "E'" | "P" => {
            p.insert("k".into(), if name == "P" { 2 } else { 1 });
        }
        "JPark" => {
            p.insert("k".into(), 10);
        }
        "T4#n" | "T2xS2#n" => {
            p.insert("n".into(), 1);
        }
        "Sigma2xSigma_n" => {
            p.insert("n".into(), 3);
        }
        _ => {}
    }
    p
}

/// All blocks at their default parameters.
pub fn all_blocks() -> Vec<BlockSpec> {
    NAMES.iter().map(|n| lookup(n, &default_params(n)).expect("catalog default")).collect()
}

fn param(name: &str, params: &Params, key: &str, min: u32, max: u32, range: &'static str) -> Result<u32, CatalogError> {
    let v = *params.get(key).ok_or_else(|| CatalogError::ParamOutOfRange {
        block: name.into(),
        param: key.into(),
        value: -1,
        range,
    })?;
    if v < min || v > max {
        return Err(CatalogError::ParamOutOfRange { block: name.into(), param: key.into(), value: v.into(), range });
    }
    Ok(v)
}

pub fn lookup(name: &str, params: &Params) -> Result<BlockSpec, CatalogError> {
    let mut block = match name {
        "B" => telescoping_b(),
        "B_g" => {
            let g = param(name, params, "g", 1, 10_000, "g >= 1")?;
            telescoping_bg(g)
        }
        "C" => telescoping_cd("C", 8, -4),
        "D" => telescoping_cd("D", 10, -6),
        "A" => telescoping_a(),
        "Btilde" => btilde(),
        "E" | "E'" => {
            let k = param(name, params, "k", 1, 10_000, "k >= 1")?;
            elliptic(name, k)
        }
        "T4" => four_torus(),
        "T4#n" => {
            let n = param(name, params, "n", 1, 10_000, "n >= 1")?;
            blown_up_four_torus(n)
        }
        "T2xS2#n" => {
            let n = param(name, params, "n", 1, 10_000, "n >= 1")?;
            ruled(n)
        }
        "T2xSigma2" => torus_times_genus_two(),
        "T2xSigma2#2" => torus_times_genus_two_blown(),
        "Sigma2xSigma_n" => {
            let n = param(name, params, "n", 2, 10_000, "n >= 2")?;
            genus_two_product(n)
        }
        "Z8" => eight_tori(),
        "ZBK" => six_tori(),
        "X1" => cyclic_with_torus("X1", 6, -2, &[], "Z-block with a torus carrying the generator"),
        "S11" => simply_connected("S11", 23, -15, &[(Quantity::E, 23, "S11: e"), (Quantity::Sigma, -15, "S11: sigma")]),
        "R21" => simply_connected("R21", 21, -13, &[]),
        "R22" => simply_connected("R22", 19, -11, &[]),
        "X3_12" => simply_connected(
            "X3_12",
            17,
            -9,
            &[(Quantity::E, 17, "X3_12: e"), (Quantity::Sigma, -9, "X3_12: sigma"), (Quantity::C1sq, 7, "X3_12: c1^2")],
        ),
        "JPark" => {
            let k = param(name, params, "k", 10, 18, "10 <= k <= 18")?;
            let mut b = simply_connected("JPark", 5 + i64::from(k), 3 - i64::from(k), &[]);
            b.stated = vec![
                Stated { quantity: Quantity::ChiH, value: 2, citation: "JPark(k): chi_h" },
                Stated { quantity: Quantity::C1sq, value: 19 - i64::from(k), citation: "JPark(k): c1^2 = 19 - k" },
            ];
            b
        }
        "P" => {
            let k = param(name, params, "k", 1, 10_000, "k >= 1")?;
            let e = 7 + 4 * i64::from(k);
            let mut b = cyclic_with_torus("P", e, -3, &[], "telescoping-line family P_{1+2k,4+2k}");
            b.stated = vec![
                Stated { quantity: Quantity::E, value: e, citation: "P(k): e = 7 + 4k" },
                Stated { quantity: Quantity::Sigma, value: -3, citation: "P(k): sigma = -3" },
            ];
            b
        }
        "P58" => cyclic_with_torus(
            "P58",
            15,
            -3,
            &[
                (Quantity::E, 14, "P58: e = 14"),
                (Quantity::Sigma, -3, "P58: sigma = -3"),
                (Quantity::C1sq, 21, "P58: c1^2 = 21"),
                (Quantity::ChiH, 3, "P58: chi_h = 3"),
            ],
            "invariants follow the stated Chern coordinates",
        ),
        "H" => fibration_h(),
        "M94" => {
            let mut b = simply_connected("M94", 94, 2, &[(Quantity::E, 94, "M94: e"), (Quantity::Sigma, 2, "M94: sigma")]);
            b.surfaces.push(trivial_torus("Tp"));
            b.stated.push(Stated { quantity: Quantity::C1sq, value: 194, citation: "M94: c1^2" });
            b.stated.push(Stated { quantity: Quantity::ChiH, value: 24, citation: "M94: chi_h" });
            b
        }
        "S364" => seed_364(),
        other => return Err(CatalogError::UnknownBlock(other.to_string())),
    };
    block.params = params.clone();
    Ok(block)
}

// ---------------------------------------------------------------------------
// construction helpers

fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
    let mut p = Presentation::new(gens.iter().copied()).expect("catalog generators");
    for r in rels {
        let w = p.parse_word(r).expect("catalog relator");
        p.add_relator(w).expect("catalog relator");
    }
    p
}

fn word(p: &Presentation, text: &str) -> Word {
    p.parse_word(text).unwrap_or_else(|e| panic!("catalog word `{text}`: {e}"))
}

fn meridian(p: &Presentation, text: &str) -> Meridian {
    let w = word(p, text);
    if w.is_identity() {
        Meridian::Trivial
    } else {
        Meridian::Word(w)
    }
}

fn torus(p: &Presentation, name: &str, mu: &str, m: &str, l: &str) -> SurfaceSpec {
    SurfaceSpec {
        name: name.into(),
        genus: 1,
        self_intersection: 0,
        meridian: meridian(p, mu),
        pushoffs: vec![("m".into(), word(p, m)), ("l".into(), word(p, l))],
        pi1_images: vec![("a1".into(), word(p, m)), ("b1".into(), word(p, l))],
        lagrangian: true,
        geometric_dual: None,
        absorbs_exceptional: false,
    }
}

/// Symplectic torus with simply connected complement (all words trivial).
fn trivial_torus(name: &str) -> SurfaceSpec {
    SurfaceSpec {
        name: name.into(),
        genus: 1,
        self_intersection: 0,
        meridian: Meridian::Trivial,
        pushoffs: vec![("m".into(), Word::identity()), ("l".into(), Word::identity())],
        pi1_images: vec![("a1".into(), Word::identity()), ("b1".into(), Word::identity())],
        lagrangian: false,
        geometric_dual: None,
        absorbs_exceptional: false,
    }
}

fn surface(p: &Presentation, name: &str, square: i64, mu: &str, images: &[&str]) -> SurfaceSpec {
    assert!(images.len() % 2 == 0 && !images.is_empty());
    let genus = (images.len() / 2) as u32;
    let pi1_images = images
        .iter()
        .enumerate()
        .map(|(i, w)| (format!("{}{}", if i % 2 == 0 { 'a' } else { 'b' }, i / 2 + 1), word(p, w)))
        .collect();
    SurfaceSpec {
        name: name.into(),
        genus,
        self_intersection: square,
        meridian: meridian(p, mu),
        pushoffs: Vec::new(),
        pi1_images,
        lagrangian: false,
        geometric_dual: None,
        absorbs_exceptional: false,
    }
}

fn absorbing(mut s: SurfaceSpec) -> SurfaceSpec {
    s.absorbs_exceptional = true;
    s
}

fn dual(mut s: SurfaceSpec, other: &str) -> SurfaceSpec {
    s.geometric_dual = Some(other.into());
    s
}

fn parity_from_sigma(sigma: i64) -> Parity {
    if sigma % 8 != 0 {
        Parity::Odd
    } else {
        Parity::Unknown
    }
}

fn inv(e: i64, sigma: i64) -> CharInvariants {
    CharInvariants::new(e, sigma).with_parity(parity_from_sigma(sigma)).with_minimal(Minimality::Minimal)
}

fn stated_pair(e: i64, sigma: i64, citation: &'static str) -> Vec<Stated> {
    vec![
        Stated { quantity: Quantity::E, value: e, citation },
        Stated { quantity: Quantity::Sigma, value: sigma, citation },
    ]
}

fn block(name: &str, invariants: CharInvariants, presentation: Presentation, surfaces: Vec<SurfaceSpec>) -> BlockSpec {
    BlockSpec {
        name: name.into(),
        params: Params::new(),
        invariants,
        presentation,
        surfaces,
        telescoping: false,
        notes: "",
        stated: Vec::new(),
    }
}

// ---------------------------------------------------------------------------
// telescoping triples

fn telescoping_pres() -> Presentation {
    pres(&["t1", "t2"], &["[t1, t2]"])
}

fn telescoping_tori(p: &Presentation) -> Vec<SurfaceSpec> {
    vec![torus(p, "T1", "1", "1", "t2"), torus(p, "T2", "1", "t1", "t2")]
}

fn telescoping(name: &str, e: i64, sigma: i64, extra: Vec<SurfaceSpec>, citation: &'static str) -> BlockSpec {
    let p = telescoping_pres();
    let mut surfaces = telescoping_tori(&p);
    surfaces.extend(extra);
    let mut b = block(name, inv(e, sigma), p, surfaces);
    b.invariants.parity = Parity::Odd;
    b.telescoping = true;
    b.stated = stated_pair(e, sigma, citation);
    b
}

fn genus_two_f(p: &Presentation) -> SurfaceSpec {
    dual(surface(p, "F", 0, "1", &["1", "1", "1", "t2"]), "H1")
}

fn telescoping_b() -> BlockSpec {
    let p = telescoping_pres();
    let h1 = dual(surface(&p, "H1", -1, "1", &["1", "t1"]), "F");
    let mut b = telescoping("B", 6, -2, vec![genus_two_f(&p), h1], "B: e = 6, sigma = -2");
    b.notes = "pi1 of the complement of F, H1, T1, T2 is Z^2; odd through the square -1 torus H1";
    b
}

fn telescoping_bg(g: u32) -> BlockSpec {
    let p = telescoping_pres();
    let images: Vec<String> = (0..2 * (g + 1)).map(|i| if i == 2 * g + 1 { "t1".into() } else { "1".into() }).collect();
    let image_refs: Vec<&str> = images.iter().map(String::as_str).collect();
    let hg = surface(&p, "Hg", -1, "1", &image_refs);
    let e = 6 + 4 * i64::from(g);
    let mut b = telescoping("B_g", e, -2, vec![genus_two_f(&p), hg], "B_g: e = 6 + 4g, sigma = -2");
    b.notes = "odd through the square -1 surface Hg of genus g + 1";
    b
}

fn telescoping_cd(name: &str, e: i64, sigma: i64) -> BlockSpec {
    let p = telescoping_pres();
    let h1 = surface(&p, "H1", -1, "1", &["1", "t1"]);
    let citation = if name == "C" { "C: e = 8, sigma = -4" } else { "D: e = 10, sigma = -6" };
    telescoping(name, e, sigma, vec![h1], citation)
}

fn telescoping_a() -> BlockSpec {
    let p = telescoping_pres();
    let images: Vec<&str> = (0..36).map(|i| match i {
        33 => "t2",
        35 => "t1",
        _ => "1",
    }).collect();
    let f18 = absorbing(surface(&p, "F18", 0, "1", &images));
    let mut b = telescoping("A", 22, -18, vec![f18], "A: blow-up of B at 16 points");
    b.invariants.minimal = Minimality::NonMinimal;
    b.notes = "B blown up 16 times; every exceptional sphere meets F18";
    b
}

fn btilde() -> BlockSpec {
    let p = telescoping_pres();
    let f3 = absorbing(surface(&p, "F3", 0, "1", &["1", "1", "1", "t2", "1", "t1"]));
    let mut b = telescoping("Btilde", 7, -3, vec![f3], "Btilde: B blown up once");
    b.invariants.minimal = Minimality::NonMinimal;
    b.notes = "B blown up once on the resolved genus 3 surface F3";
    b
}

// ---------------------------------------------------------------------------
// simply connected and small cyclic blocks

fn elliptic(name: &str, k: u32) -> BlockSpec {
    let k = i64::from(k);
    let mut surfaces = vec![trivial_torus("T")];
    let mut invariants = inv(12 * k, -8 * k);
    if name == "E'" {
        surfaces.push(trivial_torus("Tp"));
        invariants.parity = Parity::Odd;
    } else {
        invariants.parity = if k % 2 == 1 { Parity::Odd } else { Parity::Even };
    }
    let mut b = block(name, invariants, pres(&[], &[]), surfaces);
    b.stated = stated_pair(12 * k, -8 * k, "E(k): e = 12k, sigma = -8k");
    b.notes = "simply connected; fibers with simply connected complement";
    b
}

fn simply_connected(name: &str, e: i64, sigma: i64, stated: &[(Quantity, i64, &'static str)]) -> BlockSpec {
    let mut b = block(name, inv(e, sigma), pres(&[], &[]), vec![trivial_torus("F1")]);
    if name == "M94" {
        b.surfaces[0].name = "T".into();
    }
    b.stated = stated.iter().map(|&(quantity, value, citation)| Stated { quantity, value, citation }).collect();
    b.notes = "simply connected; torus with simply connected complement";
    b
}

fn cyclic_with_torus(
    name: &str,
    e: i64,
    sigma: i64,
    stated: &[(Quantity, i64, &'static str)],
    notes: &'static str,
) -> BlockSpec {
    let p = pres(&["s"], &[]);
    let t = torus(&p, "T", "1", "s", "1");
    let mut b = block(name, inv(e, sigma), p, vec![t]);
    b.stated = stated.iter().map(|&(quantity, value, citation)| Stated { quantity, value, citation }).collect();
    b.notes = notes;
    b
}

fn fibration_h() -> BlockSpec {
    let p = pres(&["k1", "k2", "k3", "k4"], &["[k1, k2][k3, k4]"]);
    let mut b = block("H", inv(75, 25), p, Vec::new());
    b.stated = stated_pair(75, 25, "H: e = 75, sigma = 25");
    b.notes = "genus 16 fibration over a genus 2 surface; used for invariant arithmetic only";
    b
}

fn seed_364() -> BlockSpec {
    let p = pres(&["s"], &[]);
    let mut b = block(
        "S364",
        inv(176, 4).with_parity(Parity::Odd),
        p.clone(),
        vec![torus(&p, "Tc", "1", "1", "s"), trivial_torus("Tx")],
    );
    b.stated = vec![
        Stated { quantity: Quantity::E, value: 176, citation: "S364: e = 176" },
        Stated { quantity: Quantity::Sigma, value: 4, citation: "S364: sigma = 4" },
        Stated { quantity: Quantity::C1sq, value: 364, citation: "S364: c1^2 = 364" },
        Stated { quantity: Quantity::ChiH, value: 45, citation: "S364: chi_h = 45" },
    ];
    b.notes = "cyclic seed; Tc carries the generator, Tx includes trivially";
    b
}

// ---------------------------------------------------------------------------
// products and their blow-ups

fn four_torus() -> BlockSpec {
    let p = pres(
        &["x1", "x2", "x3", "x4"],
        &["[x1, x2]", "[x1, x3]", "[x1, x4]", "[x2, x3]", "[x2, x4]", "[x3, x4]"],
    );
    let surfaces = vec![
        torus(&p, "Tf", "1", "x1", "x2"),
        torus(&p, "T1", "1", "x1", "x4"),
        torus(&p, "T2", "1", "x3", "x4"),
    ];
    let mut b = block("T4", inv(0, 0).with_parity(Parity::Even), p, surfaces);
    b.stated = stated_pair(0, 0, "T4: e = 0, sigma = 0");
    b.notes = "abelian model; Tf symplectic, T1 and T2 Lagrangian";
    b
}

fn blown_up_four_torus(n: u32) -> BlockSpec {
    let p = pres(&["alpha1", "alpha2", "alpha3", "alpha4"], &["[alpha1, alpha2]", "[alpha2, alpha3]", "[alpha2, alpha4]"]);
    let sigma2 = absorbing(surface(&p, "Sigma2", 0, "[alpha3, alpha4]", &["alpha1", "alpha2", "alpha3^2", "alpha4"]));
    let f3 = absorbing(surface(&p, "F3", 0, "1", &["alpha1", "alpha2", "alpha1", "alpha2", "alpha3", "alpha4"]));
    let surfaces = vec![
        sigma2,
        f3,
        torus(&p, "A23", "[alpha1^-1, alpha4^-1]", "alpha3", "alpha2"),
        torus(&p, "A24", "[alpha1, alpha3^-1]", "alpha4", "alpha2"),
    ];
    let n = i64::from(n);
    let mut b = block("T4#n", inv(n, -n).with_parity(Parity::Odd).with_minimal(Minimality::NonMinimal), p, surfaces);
    b.stated = stated_pair(n, -n, "T4#n: e = n, sigma = -n");
    b.notes = "Sigma2 meets an exceptional sphere, so its meridian may be killed in a sum";
    b
}

fn ruled(n: u32) -> BlockSpec {
    let p = pres(&["c", "d"], &["[c, d]"]);
    let sigma2 = absorbing(surface(&p, "Sigma2", 0, "1", &["c", "d", "c^-1", "d^-1"]));
    let n = i64::from(n);
    let mut b = block("T2xS2#n", inv(n, -n).with_parity(Parity::Odd).with_minimal(Minimality::NonMinimal), p, vec![sigma2]);
    b.stated = stated_pair(n, -n, "T2xS2#n: e = n, sigma = -n");
    b
}

fn torus_times_genus_two() -> BlockSpec {
    let p = pres(
        &["a1", "b1", "a2", "b2", "c", "d"],
        &["[a1, c]", "[b1, c]", "[a2, c]", "[a2, d]", "[a1, b1][a2, b2]"],
    );
    let sigma2 = surface(&p, "Sigma2", 0, "[c, d]", &["a1", "b1", "a2", "b2"]);
    let surfaces = vec![
        sigma2,
        torus(&p, "A1C", "[b1^-1, d^-1]", "a1", "c"),
        torus(&p, "B1C", "[a1^-1, d]", "b1", "c"),
        torus(&p, "A2D", "[c^-1, b2]", "d", "a2"),
        torus(&p, "A2C", "[b2^-1, d^-1]", "c", "a2"),
    ];
    let mut b = block("T2xSigma2", inv(0, 0).with_parity(Parity::Even), p, surfaces);
    b.stated = stated_pair(0, 0, "T2xSigma2: e = 0, sigma = 0");
    b.notes = "the meridian of A2C is modelled on the pattern of A1C";
    b
}

fn torus_times_genus_two_blown() -> BlockSpec {
    let p = pres(
        &["x", "y", "a1", "b1", "a2", "b2"],
        &[
            "[x, y]", "[x, a1]", "[x, b1]", "[x, a2]", "[x, b2]", "[y, a1]", "[y, b1]", "[y, a2]", "[y, b2]",
            "[a1, b1][a2, b2]",
        ],
    );
    let f3 = absorbing(surface(&p, "F3", 0, "1", &["x", "y", "a1", "b1", "a2", "b2"]));
    let mut b = block("T2xSigma2#2", inv(2, -2).with_parity(Parity::Odd).with_minimal(Minimality::NonMinimal), p, vec![f3]);
    b.stated = stated_pair(2, -2, "T2xSigma2#2: e = 2, sigma = -2");
    b
}

fn genus_two_product(n: u32) -> BlockSpec {
    let n = n as usize;
    let mut gens: Vec<String> = ["a1", "b1", "a2", "b2"].iter().map(|s| s.to_string()).collect();
    for j in 1..=n {
        gens.push(format!("c{j}"));
        gens.push(format!("d{j}"));
    }
    // (name, meridian, m, l)
    let mut tori: Vec<(String, String, String, String)> = vec![
        ("A1C1".into(), "[b1^-1, d1^-1]".into(), "a1".into(), "c1".into()),
        ("B1C1".into(), "[a1^-1, d1]".into(), "b1".into(), "c1".into()),
        ("A2C2".into(), "[b2^-1, d2^-1]".into(), "a2".into(), "c2".into()),
        ("B2C2".into(), "[a2^-1, d2]".into(), "b2".into(), "c2".into()),
        ("A2C1".into(), "[d1^-1, b2^-1]".into(), "c1".into(), "a2".into()),
        ("A2D1".into(), "[c1^-1, b2]".into(), "d1".into(), "a2".into()),
        ("A1C2".into(), "[d2^-1, b1^-1]".into(), "c2".into(), "a1".into()),
        ("A1D2".into(), "[c2^-1, b1]".into(), "d2".into(), "a1".into()),
    ];
    for j in 3..=n {
        tori.push((format!("A1C{j}"), format!("[d{j}^-1, b1^-1]"), format!("c{j}"), "a1".into()));
        tori.push((format!("A1D{j}"), format!("[c{j}^-1, b1]"), format!("d{j}"), "a1".into()));
    }
    let mut rels: Vec<String> = tori.iter().map(|(_, _, m, l)| format!("[{m}, {l}]")).collect();
    rels.push("[a1, b1][a2, b2]".into());
    let gen_refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let rel_refs: Vec<&str> = rels.iter().map(String::as_str).collect();
    let p = pres(&gen_refs, &rel_refs);
    let meridian: Vec<String> = (1..=n).map(|j| format!("[c{j}, d{j}]")).collect();
    let mut surfaces = vec![surface(&p, "Sigma2", 0, &meridian.join(" "), &["a1", "b1", "a2", "b2"])];
    for (name, mu, m, l) in &tori {
        surfaces.push(torus(&p, name, mu, m, l));
    }
    let e = 4 * n as i64 - 4;
    let mut b = block("Sigma2xSigma_n", inv(e, 0).with_parity(Parity::Even), p, surfaces);
    b.stated = stated_pair(e, 0, "Sigma2xSigma_n: e = 4n - 4, sigma = 0");
    b.notes = "relators are the push-off commutations of the surgery tori and the surface relation";
    b
}

fn eight_tori() -> BlockSpec {
    let table: [(&str, &str, &str, &str); 8] = [
        ("S1", "[b1^-1, y1^-1]", "x1", "a1"),
        ("S2", "[x1^-1, b1]", "y1", "b1 a1 b1^-1"),
        ("S3", "[b2^-1, y1^-1]", "x1", "a2"),
        ("S4", "[x1^-1, b2]", "y1", "b2 a2 b2^-1"),
        ("S5", "[b1 a1^-1 b1^-1, y2^-1]", "x2", "b1^-1"),
        ("S6", "[x2^-1, b1 a1 b1^-1]", "y2", "b1 a1 b1^-1 a1^-1 b1^-1"),
        ("S7", "[b2 a2^-1 b2^-1, y2^-1]", "x2", "b2^-1"),
        ("S8", "[x2^-1, b2 a2 b2^-1]", "y2", "b2 a2 b2^-1 a2^-1 b2^-1"),
    ];
    let mut rels: Vec<String> = vec!["[a1, b1][a2, b2]".into()];
    for (_, _, m, l) in &table {
        rels.push(format!("[{m}, {l}]"));
    }
    let rel_refs: Vec<&str> = rels.iter().map(String::as_str).collect();
    let p = pres(&["x1", "y1", "x2", "y2", "a1", "b1", "a2", "b2"], &rel_refs);
    let surfaces = table.iter().map(|(n, mu, m, l)| torus(&p, n, mu, m, l)).collect();
    let mut b = block("Z8", inv(4, 0), p, surfaces);
    b.stated = stated_pair(4, 0, "Z8: e = 4, sigma = 0");
    b.notes = "push-off pairs of each torus commute (boundary 3-torus)";
    b
}

fn six_tori() -> BlockSpec {
    let p = pres(
        &["x", "y", "a1", "b1", "a2", "b2"],
        &["[b1, b2]", "[a1, b2]", "[b1, a1]", "[b2, a2]", "[x, a1]", "[y, a1]", "[x, a2]", "[y, a2]"],
    );
    let surfaces = vec![
        surface(&p, "F", 0, "[x, y]", &["a1", "b1", "a2", "b2"]),
        torus(&p, "T1'", "[a2^-1, a1^-1]", "b1^-1", "b2^-1"),
        torus(&p, "T2'", "[b1, a2]", "b1 a2 b1^-1", "b2^-1"),
        torus(&p, "T1", "[b1^-1, y^-1]", "x", "a1"),
        torus(&p, "T2", "[x^-1, b1]", "y", "a1"),
        torus(&p, "T3", "[b2^-1, y^-1]", "x", "a2"),
        torus(&p, "T4", "[x^-1, b2]", "y", "a2"),
    ];
    let mut b = block("ZBK", inv(6, -2), p, surfaces);
    b.stated = stated_pair(6, -2, "ZBK: e = 6, sigma = -2");
    b
}

// ---------------------------------------------------------------------------
// audit

fn computed(inv: &CharInvariants, q: Quantity) -> Option<i64> {
    let cc = chern_coords(inv);
    match q {
        Quantity::E => Some(inv.e),
        Quantity::Sigma => Some(inv.sigma),
        Quantity::C1sq => Some(cc.c1sq),
        Quantity::ChiH => cc.lattice().map(|(_, chi)| chi),
        Quantity::B2Plus => betti(inv).ok().map(|(_, p, _)| p),
        Quantity::B2Minus => betti(inv).ok().map(|(_, _, m)| m),
    }
}

/// One finding per block whose stated numbers disagree with each other.
pub fn audit_catalog() -> Vec<Inconsistency> {
    let mut out = Vec::new();
    for b in all_blocks() {
        let clashes: Vec<&Stated> =
            b.stated.iter().filter(|s| computed(&b.invariants, s.quantity) != Some(s.value)).collect();
        if clashes.is_empty() {
            continue;
        }
        let all: Vec<String> = b.stated.iter().map(|s| format!("{} = {}", s.quantity, s.value)).collect();
        let cc = chern_coords(&b.invariants);
        out.push(Inconsistency {
            subject: b.name.clone(),
            citation: clashes.iter().map(|s| s.citation).collect::<Vec<_>>().join("; "),
            detail: format!(
                "stated {} are not simultaneously consistent (c1^2 = 2e + 3 sigma, chi_h = (e + sigma)/4; \
                 kept e = {}, sigma = {} giving {})",
                all.join(", "),
                b.invariants.e,
                b.invariants.sigma,
                cc
            ),
        });
    }
    out
}

/// `(K_e, K_sigma)` as `(a, b)` pairs meaning `a + b (g + r)`.
pub const BKY_CHOICES: [((i64, i64), (i64, i64)); 4] =
    [((12, 12), (-8, -8)), ((12, 8), (-8, -4)), ((10, 6), (-2, -2)), ((10, 4), (-2, 0))];

/// Invariants of the formula family `M(G, n)` for a presentation with `gr = g + r`.
pub fn bky_invariants(choice: usize, n: i64, gr: i64) -> CharInvariants {
    let ((ea, eb), (sa, sb)) = BKY_CHOICES[choice];
    let e = 75 * n * n + 256 * n + 130 + ea + eb * gr;
    let sigma = 25 * n * n - 68 * n - 78 + sa + sb * gr;
    CharInvariants::new(e, sigma)
}

/// The surface images as a `(name, word)` list rendered with the block's names.
pub fn render_surface(b: &BlockSpec, s: &SurfaceSpec) -> String {
    let p = &b.presentation;
    let mut parts = vec![format!("genus {} square {}", s.genus, s.self_intersection)];
    if let Meridian::Word(w) = &s.meridian {
        parts.push(format!("mu = {}", p.render_word(w)));
    } else {
        parts.push("mu = 1".into());
    }
    for (c, w) in &s.pushoffs {
        parts.push(format!("{c} = {}", p.render_word(w)));
    }
    if s.pushoffs.is_empty() {
        for (c, w) in &s.pi1_images {
            if !w.is_identity() {
                parts.push(format!("{c} -> {}", p.render_word(w)));
            }
        }
    }
    parts.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::chern_coords;
    use fpgroups::abelianization;

    fn get(name: &str) -> BlockSpec {
        lookup(name, &default_params(name)).unwrap()
    }

    #[test]
    fn lookups() {
        let b = get("B");
        assert_eq!((b.invariants.e, b.invariants.sigma), (6, -2));
        assert!(b.telescoping);
        assert_eq!(b.surface("F").unwrap().genus, 2);
        let bg = lookup("B_g", &BlockRef::new("B_g").with("g", 3).params).unwrap();
        assert_eq!((bg.invariants.e, bg.invariants.sigma), (18, -2));
        let e = BlockRef::new("E'").with("k", 2).lookup().unwrap();
        assert_eq!((e.invariants.e, e.invariants.sigma), (24, -16));
        let z = get("Z8");
        assert_eq!((z.invariants.e, z.invariants.sigma), (4, 0));
        assert_eq!(z.surfaces.len(), 8);
        let s1 = z.surface("S1").unwrap();
        assert_eq!(z.presentation.render_word(&s1.meridian.word()), "b1^-1 y1^-1 b1 y1");
        assert_eq!(z.presentation.render_word(s1.pushoff("l").unwrap()), "a1");
    }

    #[test]
    fn errors() {
        assert_eq!(lookup("nope", &Params::new()), Err(CatalogError::UnknownBlock("nope".into())));
        assert!(matches!(
            BlockRef::new("B_g").with("g", 0).lookup(),
            Err(CatalogError::ParamOutOfRange { .. })
        ));
        assert!(matches!(BlockRef::new("JPark").with("k", 9).lookup(), Err(CatalogError::ParamOutOfRange { .. })));
        assert!(lookup("B_g", &Params::new()).is_err());
    }

    #[test]
    fn audit_examples() {
        let c = get("C");
        let cc = chern_coords(&c.invariants);
        assert_eq!(cc.lattice(), Some((4, 1)));
        let h = chern_coords(&get("H").invariants);
        assert_eq!(h.lattice(), Some((225, 25)));
        let found = audit_catalog();
        assert_eq!(found.len(), 1, "{found:?}");
        assert_eq!(found[0].subject, "P58");
    }

    #[test]
    fn telescoping_blocks_are_z2() {
        for b in all_blocks().into_iter().filter(|b| b.telescoping) {
            let ab = abelianization(&b.presentation);
            assert_eq!((ab.free_rank, ab.torsion.len()), (2, 0), "{}", b.name);
            for t in ["T1", "T2"] {
                assert_eq!(b.surface(t).unwrap().meridian, Meridian::Trivial);
            }
        }
    }

    #[test]
    fn words_reference_declared_generators() {
        for b in all_blocks() {
            let rank = b.presentation.rank();
            for s in &b.surfaces {
                let mut words = vec![s.meridian.word()];
                words.extend(s.pushoffs.iter().map(|(_, w)| w.clone()));
                words.extend(s.pi1_images.iter().map(|(_, w)| w.clone()));
                for w in words {
                    assert!(w.max_gen().map_or(true, |g| g < rank), "{} {}", b.name, s.name);
                }
            }
        }
    }

    #[test]
    fn bky_family() {
        let a = bky_invariants(0, 2, 0);
        assert_eq!((a.e, a.sigma), (75 * 4 + 512 + 130 + 12, 100 - 136 - 78 - 8));
    }
}
