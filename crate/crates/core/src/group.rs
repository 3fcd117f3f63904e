//! The side-pairing Fuchsian group of the octagon: generators, the surface
//! relation, side-pairing checks, and balls in the Cayley graph.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::disk::{half_turn, m_half_turn, rotation, Complex, DiskPoint, Mobius, I};
use crate::error::{Error, Result};
use crate::octagon::{OctagonGeometry, OctagonParams};

/// A generator `g_k` or its inverse, `k ∈ 0..4`.
///
/// Letters are ordered `g₀ < g₀⁻¹ < g₁ < … < g₃⁻¹`; words compare
/// lexicographically in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub const ALL: [Letter; 8] = [
        Letter(0),
        Letter(1),
        Letter(2),
        Letter(3),
        Letter(4),
        Letter(5),
        Letter(6),
        Letter(7),
    ];

    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!(generator < 4, "generator index {generator} out of range");
        Letter((2 * generator + inverse as usize) as u8)
    }

    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// `a b c d` for `g₀..g₃`, upper case for inverses.
    pub fn symbol(self) -> char {
        let base = b"abcd"[self.generator()] as char;
        if self.is_inverse() {
            base.to_ascii_uppercase()
        } else {
            base
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        let generator = "abcd".find(c.to_ascii_lowercase())?;
        Some(Letter::new(generator, c.is_ascii_uppercase()))
    }
}

/// `g₀ g₁⁻¹ g₂ g₃⁻¹ g₀⁻¹ g₁ g₂⁻¹ g₃`, the single defining relator.
pub const RELATOR: [Letter; 8] = [
    Letter(0),
    Letter(3),
    Letter(4),
    Letter(7),
    Letter(1),
    Letter(2),
    Letter(5),
    Letter(6),
];

/// A word over the eight letters; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn pushed(&self, letter: Letter) -> Word {
        let mut w = self.0.clone();
        w.push(letter);
        Word(w)
    }

    /// Parses the [`Display`](fmt::Display) form (`"e"` or e.g. `"aBcD"`).
    pub fn parse(s: &str) -> Option<Word> {
        if s == "e" {
            return Some(Word::identity());
        }
        s.chars().map(Letter::from_symbol).collect::<Option<Vec<_>>>().map(Word)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

/// The four side pairings `g₀..g₃` and their inverses.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub params: OctagonParams,
    /// `N(a, α̃) = −cos α̃ / √((1−a²)(2a²cos²α̃ − 1))`.
    pub normalization: f64,
    pub g: [Mobius; 4],
    pub g_inv: [Mobius; 4],
}

fn normalized(u: Complex, v: Complex) -> Mobius {
    let s = (u.norm_sqr() - v.norm_sqr()).sqrt().recip();
    Mobius::from_parts(u * s, v * s)
}

/// Generators from the explicit closed forms for `g₀`, `g₁`; `g₂`, `g₃` by
/// conjugation with the quarter turn.
pub fn generators(params: &OctagonParams) -> GeneratorSet {
    let a = params.a();
    let at = params.alpha_tilde();
    let (a2, t, c) = (a * a, at.tan(), at.cos());
    let n = -c / ((1.0 - a2) * (2.0 * a2 * c * c - 1.0)).sqrt();
    let g0 = normalized(
        Complex::new(n * a * (1.0 - t), 0.0),
        Complex::new(n * (a2 - t), n * (1.0 - a2)),
    );
    let g1 = normalized(
        Complex::new(n * a * (1.0 + t), 0.0),
        Complex::new(n * (1.0 - a2), n * (a2 + t)),
    );
    let quarter = rotation(FRAC_PI_2);
    let g = [g0, g1, g0.conjugate_by(&quarter), g1.conjugate_by(&quarter)];
    GeneratorSet {
        params: *params,
        normalization: n,
        g,
        g_inv: g.map(|x| x.inverse()),
    }
}

/// `M₀..M₅` with `ω₀..ω₃ = ω₊, ω₋, iω₊, iω₋`, `ω₄ = 2a/(1+a²)`, `ω₅ = 0`.
pub fn m_matrices(geom: &OctagonGeometry) -> [Mobius; 6] {
    let omegas = [
        geom.omega_plus,
        geom.omega_minus,
        I * geom.omega_plus,
        I * geom.omega_minus,
        Complex::new(geom.omega4, 0.0),
        Complex::new(0.0, 0.0),
    ];
    omegas.map(|w| m_half_turn(w).expect("in-domain ω lies inside the disk"))
}

/// Largest entry-wise distance between `x` and `±y`, relative to the entry scale.
pub fn relative_projective_distance(x: &Mobius, y: &Mobius) -> f64 {
    x.projective_distance(y) / x.u().norm().max(1.0)
}

impl GeneratorSet {
    pub fn letter(&self, l: Letter) -> Mobius {
        if l.is_inverse() {
            self.g_inv[l.generator()]
        } else {
            self.g[l.generator()]
        }
    }

    pub fn word(&self, w: &Word) -> Mobius {
        w.letters()
            .iter()
            .fold(Mobius::IDENTITY, |acc, &l| acc * self.letter(l))
    }

    pub fn relation_product(&self) -> Mobius {
        RELATOR
            .iter()
            .fold(Mobius::IDENTITY, |acc, &l| acc * self.letter(l))
    }

    /// Distance of the relator product from `±id` and the realized sign.
    pub fn relation_defect(&self) -> (f64, i8) {
        self.relation_product().identity_defect()
    }

    /// `g_k = M_k · M₅`.
    pub fn via_m_matrices(geom: &OctagonGeometry) -> [Mobius; 4] {
        let m = m_matrices(geom);
        core::array::from_fn(|k| m[k] * m[5])
    }

    /// `g_k = H(p_k)` with `p_k` the midpoint of side `s_k`.
    pub fn via_half_turns(geom: &OctagonGeometry) -> [Mobius; 4] {
        core::array::from_fn(|k| half_turn(geom.side_midpoint(k)))
    }

    /// Worst relative disagreement (up to sign) among the closed form,
    /// `M_k M₅`, and `H(p_k)`.
    pub fn construction_agreement(&self, geom: &OctagonGeometry) -> f64 {
        let via_m = Self::via_m_matrices(geom);
        let via_h = Self::via_half_turns(geom);
        (0..4).fold(0.0f64, |worst, k| {
            worst
                .max(relative_projective_distance(&self.g[k], &via_m[k]))
                .max(relative_projective_distance(&self.g[k], &via_h[k]))
                .max(relative_projective_distance(&via_m[k], &via_h[k]))
        })
    }

    /// Worst defect of `g_{2,3} = R_{π/2} g_{0,1} R_{π/2}⁻¹` and
    /// `g_k⁻¹ = R_π g_k R_π⁻¹`.
    pub fn rotation_identity_defect(&self) -> f64 {
        let quarter = rotation(FRAC_PI_2);
        let half = rotation(PI);
        let mut worst = 0.0f64;
        for k in 0..2 {
            let rotated = self.g[k].conjugate_by(&quarter);
            worst = worst.max(relative_projective_distance(&self.g[k + 2], &rotated));
        }
        for k in 0..4 {
            let flipped = self.g[k].conjugate_by(&half);
            worst = worst.max(relative_projective_distance(&self.g_inv[k], &flipped));
        }
        worst
    }

    /// Smallest `|Tr g_k|` over the four generators.
    pub fn min_abs_trace(&self) -> f64 {
        self.g.iter().map(|g| g.trace().abs()).fold(f64::INFINITY, f64::min)
    }
}

/// Per-side residuals of the side-pairing check.
#[derive(Debug, Clone, PartialEq)]
pub struct SidePairingReport {
    /// `g_k` maps the endpoints of `s_{k+4}` onto those of `s_k` (as sets).
    pub endpoint_residuals: [f64; 4],
    /// `|g_k[−p_k] − p_k|`.
    pub midpoint_residuals: [f64; 4],
    pub interior_samples: usize,
    /// Interior sample points whose image under some `g_k^{±1}` stays inside.
    pub interior_violations: usize,
}

impl SidePairingReport {
    pub fn max_residual(&self) -> f64 {
        self.endpoint_residuals
            .iter()
            .chain(self.midpoint_residuals.iter())
            .fold(0.0, |m, &r| m.max(r))
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual() <= tol && self.interior_violations == 0
    }
}

/// Uniform samples from the interior of the octagon by rejection.
pub fn interior_samples<R: Rng + ?Sized>(
    geom: &OctagonGeometry,
    n: usize,
    rng: &mut R,
) -> Vec<DiskPoint> {
    let r = geom.params.a().max(geom.b);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let z = Complex::new(rng.random_range(-r..r), rng.random_range(-r..r));
        if geom.contains(z) {
            out.push(DiskPoint::new_unchecked(z));
        }
    }
    out
}

pub fn side_pairing_check<R: Rng + ?Sized>(
    geom: &OctagonGeometry,
    gens: &GeneratorSet,
    samples: usize,
    rng: &mut R,
) -> SidePairingReport {
    let mut endpoint_residuals = [0.0; 4];
    let mut midpoint_residuals = [0.0; 4];
    for k in 0..4 {
        let g = gens.g[k];
        let (p, q) = geom.side_endpoints(k + 4);
        let (x, y) = geom.side_endpoints(k);
        let (gp, gq) = (g.apply(p).z(), g.apply(q).z());
        let straight = (gp - x.z()).norm().max((gq - y.z()).norm());
        let crossed = (gp - y.z()).norm().max((gq - x.z()).norm());
        endpoint_residuals[k] = straight.min(crossed);

        let pk = geom.side_midpoint(k).z();
        midpoint_residuals[k] = (g.apply_complex(-pk) - pk).norm();
    }
    let mut interior_violations = 0;
    for z in interior_samples(geom, samples, rng) {
        if Letter::ALL
            .iter()
            .any(|&l| geom.contains(gens.letter(l).apply_complex(z.z())))
        {
            interior_violations += 1;
        }
    }
    SidePairingReport {
        endpoint_residuals,
        midpoint_residuals,
        interior_samples: samples,
        interior_violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallOptions {
    /// Dedup tolerance on matrix entries, relative to `max(1, |u|)`.
    pub tolerance: f64,
    /// Maximum number of elements before enumeration fails.
    pub cap: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            tolerance: 1e-9,
            cap: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallElement {
    /// Shortlex-minimal word reaching this element.
    pub word: Word,
    /// Canonical-sign representative.
    pub transform: Mobius,
}

/// All group elements of word length `≤ radius`, in shortlex order of their
/// minimal words.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub radius: usize,
    pub elements: Vec<BallElement>,
    /// `sphere_sizes[k]` is the number of elements of word length exactly `k`.
    pub sphere_sizes: Vec<usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[derive(Clone, Copy)]
struct Key(f64);

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Elements indexed by `|Re u| = |Tr|/2`, which is sign-invariant.
struct DedupIndex {
    by_trace: BTreeMap<Key, Vec<usize>>,
    tolerance: f64,
}

impl DedupIndex {
    fn find(&self, m: &Mobius, elements: &[BallElement]) -> Option<usize> {
        let scale = m.u().norm().max(1.0);
        let tol = self.tolerance * scale;
        let key = m.u().re.abs();
        self.by_trace
            .range(Key(key - tol)..=Key(key + tol))
            .flat_map(|(_, ids)| ids.iter().copied())
            .find(|&i| elements[i].transform.projective_distance(m) <= tol)
    }

    fn insert(&mut self, m: &Mobius, id: usize) {
        self.by_trace
            .entry(Key(m.u().re.abs()))
            .or_default()
            .push(id);
    }
}

/// Breadth-first enumeration of the ball of radius `radius` in the Cayley
/// graph, deduplicating group elements numerically up to sign.
pub fn ball(gens: &GeneratorSet, radius: usize, opts: BallOptions) -> Result<Ball> {
    let mut elements = alloc::vec![BallElement {
        word: Word::identity(),
        transform: Mobius::IDENTITY,
    }];
    let mut index = DedupIndex {
        by_trace: BTreeMap::new(),
        tolerance: opts.tolerance,
    };
    index.insert(&Mobius::IDENTITY, 0);
    let mut sphere_sizes = alloc::vec![1];
    let mut frontier = 0..1;
    for _ in 0..radius {
        let start = elements.len();
        for parent in frontier.clone() {
            let parent_word = elements[parent].word.clone();
            let parent_m = elements[parent].transform;
            for &l in &Letter::ALL {
                if parent_word.last() == Some(l.inverse()) {
                    continue;
                }
                let m = (parent_m * gens.letter(l)).canonical();
                if index.find(&m, &elements).is_some() {
                    continue;
                }
                if elements.len() >= opts.cap {
                    return Err(Error::Capacity { cap: opts.cap });
                }
                index.insert(&m, elements.len());
                elements.push(BallElement {
                    word: parent_word.pushed(l),
                    transform: m,
                });
            }
        }
        sphere_sizes.push(elements.len() - start);
        frontier = start..elements.len();
    }
    Ok(Ball {
        radius,
        elements,
        sphere_sizes,
    })
}

/// One tile of the tessellation: the image of the octagon under a group element.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub word: Word,
    pub vertices: [Complex; 8],
}

/// Images of the octagon's vertices under every element of the ball.
pub fn cells(ball: &Ball, geom: &OctagonGeometry) -> Vec<Cell> {
    ball.elements
        .iter()
        .map(|e| Cell {
            word: e.word.clone(),
            vertices: geom.vertices.map(|v| e.transform.apply_complex(v.z())),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octagon::build_geometry;
    use alloc::string::ToString;

    #[test]
    fn letter_roundtrip() {
        for l in Letter::ALL {
            assert_eq!(Letter::from_symbol(l.symbol()), Some(l));
            assert_eq!(l.inverse().inverse(), l);
            assert_ne!(l.inverse(), l);
        }
        assert_eq!(Letter::from_symbol('x'), None);
    }

    #[test]
    fn relator_spelling() {
        let w = Word::from(RELATOR.to_vec());
        assert_eq!(w.to_string(), "aBcDAbCd");
        assert_eq!(Word::parse("aBcDAbCd"), Some(w));
        assert_eq!(Word::parse("e"), Some(Word::identity()));
        assert_eq!(Word::identity().to_string(), "e");
        assert_eq!(Word::parse("az"), None);
    }

    #[test]
    fn ball_zero_and_cap() {
        let p = OctagonParams::regular();
        let gens = generators(&p);
        let b0 = ball(&gens, 0, BallOptions::default()).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.elements[0].word, Word::identity());
        let err = ball(
            &gens,
            2,
            BallOptions {
                cap: 20,
                ..BallOptions::default()
            },
        );
        assert_eq!(err, Err(Error::Capacity { cap: 20 }));
    }

    #[test]
    fn identity_cell_is_octagon() {
        let geom = build_geometry(OctagonParams::new(0.8, PI / 12.0).unwrap());
        let gens = generators(&geom.params);
        let b = ball(&gens, 1, BallOptions::default()).unwrap();
        let cs = cells(&b, &geom);
        assert_eq!(cs.len(), 9);
        for (v, w) in cs[0].vertices.iter().zip(geom.vertices.iter()) {
            assert_eq!(*v, w.z());
        }
    }
}
