//! Diagonal affine maps of `T⁷ = ℝ⁷/ℤ⁷`, their fixed coordinate subtori and
//! orbit counts under finite groups of such maps.
//!
//! Everything here is exact: translation parts are rationals reduced mod 1 and
//! subtori are classified by reading coefficients of φ₀ and ψ₀ over ℚ.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::kform::{phi0, psi0};
use crate::scalar::{ratio, Rational};

/// Bail-out order for group closure.
pub const GROUP_LIMIT: usize = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TorusError {
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid subtorus: {0}")]
    InvalidSubtorus(String),
    #[error("only 3- and 4-dimensional subtori can be classified, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("group closure exceeded {0} elements")]
    GroupOverflow(usize),
}

/// Reduce to the representative in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("cannot parse {s:?} as a rational: {e}"))
}

/// Serde adapter writing rationals as decimal strings such as `"1/2"`.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

fn rational_strings<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// `x ↦ (ε₁x₁ + c₁, …, ε₇x₇ + c₇)` with `εᵢ = ±1` and `cᵢ ∈ ℚ/ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineTorusMap {
    signs: [i8; 7],
    shift: [Rational; 7],
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    signs: Vec<i64>,
    shift: Vec<String>,
}

impl Serialize for AffineTorusMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MapJson {
            signs: self.signs.iter().map(|&e| e as i64).collect(),
            shift: self.shift.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineTorusMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = MapJson::deserialize(d)?;
        let shift = raw
            .shift
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| serde::de::Error::custom(format!("shift: {e}")))?;
        AffineTorusMap::from_parts(&raw.signs, &shift).map_err(serde::de::Error::custom)
    }
}

impl AffineTorusMap {
    pub fn new(signs: [i8; 7], shift: [Rational; 7]) -> Result<Self, TorusError> {
        if let Some(i) = signs.iter().position(|&e| e != 1 && e != -1) {
            return Err(TorusError::InvalidMap(format!("signs[{i}] = {} is not ±1", signs[i])));
        }
        Ok(AffineTorusMap { signs, shift: shift.map(|c| frac(&c)) })
    }

    /// Build from slices, checking that both have length 7.
    pub fn from_parts(signs: &[i64], shift: &[Rational]) -> Result<Self, TorusError> {
        if signs.len() != 7 {
            return Err(TorusError::InvalidMap(format!("signs has {} entries, expected 7", signs.len())));
        }
        if shift.len() != 7 {
            return Err(TorusError::InvalidMap(format!("shift has {} entries, expected 7", shift.len())));
        }
        let mut eps = [1i8; 7];
        for (i, &e) in signs.iter().enumerate() {
            eps[i] = match e {
                1 => 1,
                -1 => -1,
                _ => return Err(TorusError::InvalidMap(format!("signs[{i}] = {e} is not ±1"))),
            };
        }
        AffineTorusMap::new(eps, std::array::from_fn(|i| shift[i].clone()))
    }

    /// Shorthand with shifts given as `(numerator, denominator)` pairs.
    pub fn with_quarters(signs: [i8; 7], shift: [(i64, i64); 7]) -> Self {
        AffineTorusMap::new(signs, shift.map(|(n, d)| ratio(n, d))).expect("signs are ±1")
    }

    pub fn identity() -> Self {
        AffineTorusMap { signs: [1; 7], shift: std::array::from_fn(|_| Rational::zero()) }
    }

    pub fn signs(&self) -> &[i8; 7] {
        &self.signs
    }

    pub fn shift(&self) -> &[Rational; 7] {
        &self.shift
    }

    pub fn negated_count(&self) -> usize {
        self.signs.iter().filter(|&&e| e == -1).count()
    }

    fn act(&self, i: usize, x: &Rational) -> Rational {
        let y = if self.signs[i] == 1 { x.clone() } else { -x.clone() };
        frac(&(y + &self.shift[i]))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        AffineTorusMap {
            signs: std::array::from_fn(|i| self.signs[i] * other.signs[i]),
            shift: std::array::from_fn(|i| self.act(i, &other.shift[i])),
        }
    }

    pub fn apply(&self, point: &[Rational; 7]) -> [Rational; 7] {
        std::array::from_fn(|i| self.act(i, &point[i]))
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineTorusMap::identity()
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }
}

impl fmt::Display for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..7)
            .map(|i| {
                let x = format!("x{}", i + 1);
                let lin = if self.signs[i] == 1 { x } else { format!("-{x}") };
                if self.shift[i].is_zero() {
                    lin
                } else {
                    format!("{}{}", self.shift[i], if self.signs[i] == 1 { format!("+{lin}") } else { lin })
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `{x : xᵢ free for i ∈ free, xᵢ = fixedᵢ otherwise}`. Coordinates are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoordSubtorus {
    free: Vec<usize>,
    #[serde(serialize_with = "rational_strings")]
    fixedvals: Vec<Rational>,
}

#[derive(Deserialize)]
struct SubtorusJson {
    free: Vec<usize>,
    fixedvals: Vec<String>,
}

impl<'de> Deserialize<'de> for CoordSubtorus {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SubtorusJson::deserialize(d)?;
        let vals = raw
            .fixedvals
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| serde::de::Error::custom(format!("fixedvals: {e}")))?;
        CoordSubtorus::new(raw.free, vals).map_err(serde::de::Error::custom)
    }
}

impl CoordSubtorus {
    /// `fixedvals` lists the values of the non-free coordinates in increasing order.
    pub fn new(mut free: Vec<usize>, fixedvals: Vec<Rational>) -> Result<Self, TorusError> {
        free.sort_unstable();
        if free.windows(2).any(|w| w[0] == w[1]) {
            return Err(TorusError::InvalidSubtorus("free contains a repeated coordinate".into()));
        }
        if let Some(&i) = free.iter().find(|&&i| !(1..=7).contains(&i)) {
            return Err(TorusError::InvalidSubtorus(format!("free coordinate {i} is outside 1..7")));
        }
        if fixedvals.len() + free.len() != 7 {
            return Err(TorusError::InvalidSubtorus(format!(
                "{} free coordinates need {} fixed values, got {}",
                free.len(),
                7 - free.len(),
                fixedvals.len()
            )));
        }
        Ok(CoordSubtorus { free, fixedvals: fixedvals.iter().map(frac).collect() })
    }

    fn from_values(values: [Option<Rational>; 7]) -> Self {
        let free = (1..=7).filter(|&i| values[i - 1].is_none()).collect();
        let fixedvals = values.into_iter().flatten().map(|x| frac(&x)).collect();
        CoordSubtorus { free, fixedvals }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn fixedvals(&self) -> &[Rational] {
        &self.fixedvals
    }

    /// Per-coordinate view: `None` for free coordinates.
    pub fn values(&self) -> [Option<Rational>; 7] {
        let mut out: [Option<Rational>; 7] = Default::default();
        let mut vals = self.fixedvals.iter();
        for (i, slot) in out.iter_mut().enumerate() {
            if !self.free.contains(&(i + 1)) {
                *slot = vals.next().cloned();
            }
        }
        out
    }

    pub fn contains(&self, point: &[Rational; 7]) -> bool {
        self.values().iter().zip(point).all(|(v, x)| v.as_ref().is_none_or(|v| *v == frac(x)))
    }

    /// A point of the subtorus with the free coordinates set to `params` (cycled).
    pub fn point(&self, params: &[Rational]) -> [Rational; 7] {
        let values = self.values();
        let mut k = 0;
        std::array::from_fn(|i| match &values[i] {
            Some(v) => v.clone(),
            None => {
                let p = params.get(k % params.len().max(1)).cloned().unwrap_or_else(Rational::zero);
                k += 1;
                frac(&p)
            }
        })
    }
}

impl fmt::Display for CoordSubtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> =
            self.values().iter().map(|v| v.as_ref().map_or_else(|| ".".to_string(), |v| v.to_string())).collect();
        write!(f, "T{}[{}]", self.dim(), cells.join(" "))
    }
}

/// Fixed point set of `m` as a list of coordinate subtori, in lexicographic order.
pub fn fixed_locus(m: &AffineTorusMap) -> Vec<CoordSubtorus> {
    let half = ratio(1, 2);
    let mut choices: Vec<Vec<Option<Rational>>> = Vec::with_capacity(7);
    for i in 0..7 {
        let c = &m.shift[i];
        if m.signs[i] == 1 {
            if !c.is_zero() {
                return Vec::new();
            }
            choices.push(vec![None]);
        } else {
            let x = c / Rational::from_integer(2.into());
            choices.push(vec![Some(frac(&x)), Some(frac(&(x + &half)))]);
        }
    }
    let mut out: Vec<[Option<Rational>; 7]> = vec![Default::default()];
    for (i, opts) in choices.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|partial| {
                opts.iter().map(move |o| {
                    let mut p = partial.clone();
                    p[i] = o.clone();
                    p
                })
            })
            .collect();
    }
    let mut tori: Vec<CoordSubtorus> = out.into_iter().map(CoordSubtorus::from_values).collect();
    tori.sort();
    tori
}

/// Calibration type of a coordinate 3- or 4-torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubtorusClass {
    Associative,
    Coassociative,
    Neither,
}

/// φ₀ (dimension 3) or ψ₀ (dimension 4) on `e_{free}` in increasing order.
pub fn calibration_coefficient(t: &CoordSubtorus) -> Result<Rational, TorusError> {
    let form = match t.dim() {
        3 => phi0::<Rational>(),
        4 => psi0::<Rational>(),
        d => return Err(TorusError::UnsupportedDimension(d)),
    };
    Ok(form.coeff(&t.free).expect("indices are distinct and in range"))
}

pub fn classify_subtorus(t: &CoordSubtorus) -> Result<SubtorusClass, TorusError> {
    let c = calibration_coefficient(t)?;
    Ok(match (t.dim(), c.abs().is_one()) {
        (3, true) => SubtorusClass::Associative,
        (4, true) => SubtorusClass::Coassociative,
        _ => SubtorusClass::Neither,
    })
}

/// Image of `t` under `m`.
pub fn apply_map(m: &AffineTorusMap, t: &CoordSubtorus) -> CoordSubtorus {
    let values = t.values();
    CoordSubtorus::from_values(std::array::from_fn(|i| values[i].as_ref().map(|v| m.act(i, v))))
}

/// Whether the two subtori share a point.
pub fn subtorus_intersect(s: &CoordSubtorus, t: &CoordSubtorus) -> bool {
    s.values().iter().zip(t.values().iter()).all(|(a, b)| match (a, b) {
        (Some(a), Some(b)) => a == b,
        _ => true,
    })
}

/// A named group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMap {
    pub name: String,
    pub map: AffineTorusMap,
}

impl NamedMap {
    pub fn new(name: impl Into<String>, map: AffineTorusMap) -> Self {
        NamedMap { name: name.into(), map }
    }
}

/// A finite group of diagonal affine maps, listed in breadth-first order from `Id`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteGroup {
    pub elements: Vec<NamedMap>,
}

impl FiniteGroup {
    /// Closure of the generators. Elements are named by the shortest word found,
    /// written left to right as a composition.
    pub fn generate(gens: &[NamedMap]) -> Result<Self, TorusError> {
        Self::generate_with_limit(gens, GROUP_LIMIT)
    }

    pub fn generate_with_limit(gens: &[NamedMap], limit: usize) -> Result<Self, TorusError> {
        let mut elements = vec![NamedMap::new("Id", AffineTorusMap::identity())];
        let mut seen: BTreeSet<AffineTorusMap> = BTreeSet::from([AffineTorusMap::identity()]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in gens {
                let product = elements[k].map.compose(&g.map);
                if seen.insert(product.clone()) {
                    if elements.len() >= limit {
                        return Err(TorusError::GroupOverflow(limit));
                    }
                    let name = if k == 0 { g.name.clone() } else { format!("{}{}", elements[k].name, g.name) };
                    elements.push(NamedMap::new(name, product));
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(FiniteGroup { elements })
    }

    pub fn trivial() -> Self {
        FiniteGroup { elements: vec![NamedMap::new("Id", AffineTorusMap::identity())] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn find(&self, name: &str) -> Option<&AffineTorusMap> {
        self.elements.iter().find(|e| e.name == name).map(|e| &e.map)
    }
}

/// One orbit: the full set of images, which of the input items fell into it,
/// and the stabilizer of the representative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Orbit {
    pub representative: CoordSubtorus,
    pub members: Vec<CoordSubtorus>,
    pub items: Vec<usize>,
    pub stabilizer: Vec<String>,
    pub stabilizer_order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitCensus {
    pub group_order: usize,
    pub item_count: usize,
    pub orbit_count: usize,
    pub orbits: Vec<Orbit>,
    /// Every stabilizer is trivial.
    pub free: bool,
}

impl OrbitCensus {
    /// Orbit counts keyed by subtorus dimension.
    pub fn orbits_by_dim(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for o in &self.orbits {
            *out.entry(o.representative.dim()).or_insert(0) += 1;
        }
        out
    }

    /// Rows `(representative, orbit size, stabilizer order, stabilizer)`.
    pub fn stabilizer_table(&self) -> String {
        let mut s = format!("{:<40} {:>5} {:>5}  stabilizer\n", "representative", "orbit", "|Stab|");
        for o in &self.orbits {
            s.push_str(&format!(
                "{:<40} {:>5} {:>5}  {{{}}}\n",
                o.representative.to_string(),
                o.members.len(),
                o.stabilizer_order,
                o.stabilizer.join(", ")
            ));
        }
        s
    }
}

/// Partition `items` into orbits of `group`.
pub fn orbit_census(group: &FiniteGroup, items: &[CoordSubtorus]) -> OrbitCensus {
    let mut orbit_of: BTreeMap<CoordSubtorus, usize> = BTreeMap::new();
    let mut orbits: Vec<Orbit> = Vec::new();
    for (k, t) in items.iter().enumerate() {
        if let Some(&o) = orbit_of.get(t) {
            orbits[o].items.push(k);
            continue;
        }
        let images: BTreeSet<CoordSubtorus> = group.elements.iter().map(|g| apply_map(&g.map, t)).collect();
        let stabilizer: Vec<String> =
            group.elements.iter().filter(|g| apply_map(&g.map, t) == *t).map(|g| g.name.clone()).collect();
        let idx = orbits.len();
        for m in &images {
            orbit_of.insert(m.clone(), idx);
        }
        orbits.push(Orbit {
            representative: t.clone(),
            members: images.into_iter().collect(),
            items: vec![k],
            stabilizer_order: stabilizer.len(),
            stabilizer,
        });
    }
    OrbitCensus {
        group_order: group.order(),
        item_count: items.len(),
        orbit_count: orbits.len(),
        free: orbits.iter().all(|o| o.stabilizer_order == 1),
        orbits,
    }
}

/// Fixed locus of `base ∘ δ` for one group element `δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComposedRow {
    pub delta: String,
    pub components: usize,
    pub dimension: Option<usize>,
    pub loci: Vec<CoordSubtorus>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComposedCensus {
    pub rows: Vec<ComposedRow>,
    /// Orbits of the union of all rows under the group.
    pub quotient: OrbitCensus,
}

impl ComposedCensus {
    pub fn row(&self, delta: &str) -> Option<&ComposedRow> {
        self.rows.iter().find(|r| r.delta == delta)
    }

    pub fn nonempty(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| r.components > 0).map(|r| r.delta.as_str()).collect()
    }
}

/// Fixed loci of `base ∘ δ` for every `δ` in the group, and their orbits.
pub fn composed_fixed_census(base: &AffineTorusMap, group: &FiniteGroup) -> ComposedCensus {
    let rows: Vec<ComposedRow> = group
        .elements
        .iter()
        .map(|d| {
            let loci = fixed_locus(&base.compose(&d.map));
            ComposedRow {
                delta: d.name.clone(),
                components: loci.len(),
                dimension: loci.first().map(CoordSubtorus::dim),
                loci,
            }
        })
        .collect();
    let all: Vec<CoordSubtorus> = rows.iter().flat_map(|r| r.loci.iter().cloned()).collect();
    ComposedCensus { quotient: orbit_census(group, &all), rows }
}

/// The named maps appearing in the worked examples.
pub mod presets {
    use super::*;

    const P: i8 = 1;
    const M: i8 = -1;
    const O: (i64, i64) = (0, 1);
    const H: (i64, i64) = (1, 2);

    /// Flat example: fixes the associative 3-tori `(x₁, x₂, x₃, a₄, a₅, a₆, a₇)`.
    pub fn flat_sigma() -> AffineTorusMap {
        AffineTorusMap::with_quarters([P, P, P, M, M, M, M], [O; 7])
    }

    /// Flat example: fixes the coassociative 4-tori `(a₁, x₂, x₃, x₄, x₅, a₆, a₇)`.
    pub fn flat_tau() -> AffineTorusMap {
        AffineTorusMap::with_quarters([M, P, P, P, P, M, M], [O; 7])
    }

    pub fn alpha() -> AffineTorusMap {
        AffineTorusMap::with_quarters([P, P, P, M, M, M, M], [O; 7])
    }

    pub fn beta() -> AffineTorusMap {
        AffineTorusMap::with_quarters([P, M, M, P, P, M, M], [O, O, O, O, O, H, O])
    }

    pub fn gamma() -> AffineTorusMap {
        AffineTorusMap::with_quarters([M, P, M, P, M, P, M], [O, O, O, O, H, O, H])
    }

    pub fn gamma_generators() -> Vec<NamedMap> {
        vec![NamedMap::new("α", alpha()), NamedMap::new("β", beta()), NamedMap::new("γ", gamma())]
    }

    /// `Γ = ⟨α, β, γ⟩`.
    pub fn gamma_group() -> FiniteGroup {
        FiniteGroup::generate(&gamma_generators()).expect("Γ is finite")
    }

    pub fn warmup_sigma() -> AffineTorusMap {
        AffineTorusMap::with_quarters([P, M, M, P, P, M, M], [O, H, H, O, O, O, H])
    }

    pub fn warmup_tau() -> AffineTorusMap {
        AffineTorusMap::with_quarters([P, P, M, M, P, P, M], [O, O, H, H, O, O, H])
    }

    pub fn second_sigma() -> AffineTorusMap {
        AffineTorusMap::with_quarters([P, M, M, P, P, M, M], [O, H, H, O, O, O, O])
    }

    pub fn second_tau() -> AffineTorusMap {
        AffineTorusMap::with_quarters([M, P, P, P, P, M, M], [H, O, O, O, O, O, O])
    }
}

/// The singular locus census: fixed tori of `α`, `β`, `γ` under `Γ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularCensus {
    pub per_generator: Vec<(String, usize)>,
    pub census: OrbitCensus,
    /// Distinct tori from different orbits never meet.
    pub pairwise_disjoint: bool,
}

pub fn singular_census(group: &FiniteGroup, gens: &[NamedMap]) -> SingularCensus {
    let mut items = Vec::new();
    let mut per_generator = Vec::new();
    for g in gens {
        let locus = fixed_locus(&g.map);
        per_generator.push((g.name.clone(), locus.len()));
        items.extend(locus);
    }
    let census = orbit_census(group, &items);
    let mut label: BTreeMap<&CoordSubtorus, usize> = BTreeMap::new();
    for (k, o) in census.orbits.iter().enumerate() {
        for m in &o.members {
            label.insert(m, k);
        }
    }
    let tori: Vec<(&CoordSubtorus, usize)> = label.iter().map(|(t, &k)| (*t, k)).collect();
    let pairwise_disjoint = tori
        .iter()
        .enumerate()
        .all(|(i, (s, a))| tori[i + 1..].iter().all(|(t, b)| a == b || !subtorus_intersect(s, t)));
    SingularCensus { per_generator, census, pairwise_disjoint }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        ratio(n, d)
    }

    #[test]
    fn composition_follows_the_affine_rule() {
        let a = beta();
        let b = gamma();
        let ab = a.compose(&b);
        let p: [Rational; 7] = std::array::from_fn(|i| q(i as i64 + 1, 11));
        assert_eq!(ab.apply(&p), a.apply(&b.apply(&p)));
        for m in [alpha(), beta(), gamma(), flat_sigma(), warmup_tau()] {
            assert!(m.is_involution());
        }
        let shift = AffineTorusMap::with_quarters([1; 7], [(1, 4), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(!shift.is_involution());
    }

    #[test]
    fn flat_fixed_loci() {
        let s = fixed_locus(&flat_sigma());
        assert_eq!(s.len(), 16);
        assert!(s.iter().all(|t| t.free() == [1, 2, 3]));
        assert!(s.iter().all(|t| classify_subtorus(t) == Ok(SubtorusClass::Associative)));
        let t = fixed_locus(&flat_tau());
        assert_eq!(t.len(), 8);
        assert!(t.iter().all(|x| x.free() == [2, 3, 4, 5]));
        assert!(t.iter().all(|x| classify_subtorus(x) == Ok(SubtorusClass::Coassociative)));
    }

    #[test]
    fn translation_without_reflection_has_no_fixed_points() {
        let m = AffineTorusMap::with_quarters([1; 7], [(1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert!(fixed_locus(&m).is_empty());
    }

    #[test]
    fn classification_examples() {
        let t = |free: Vec<usize>| CoordSubtorus::new(free.clone(), vec![q(0, 1); 7 - free.len()]).unwrap();
        assert_eq!(classify_subtorus(&t(vec![1, 2, 3])), Ok(SubtorusClass::Associative));
        assert_eq!(classify_subtorus(&t(vec![2, 3, 4, 5])), Ok(SubtorusClass::Coassociative));
        assert_eq!(classify_subtorus(&t(vec![1, 2, 4])), Ok(SubtorusClass::Neither));
        assert_eq!(classify_subtorus(&t(vec![1, 2])), Err(TorusError::UnsupportedDimension(2)));
    }

    #[test]
    fn beta_moves_an_alpha_torus() {
        let src = CoordSubtorus::new(vec![1, 2, 3], vec![q(0, 1); 4]).unwrap();
        let dst = CoordSubtorus::new(vec![1, 2, 3], vec![q(0, 1), q(0, 1), q(1, 2), q(0, 1)]).unwrap();
        assert_eq!(apply_map(&beta(), &src), dst);
        assert_eq!(apply_map(&AffineTorusMap::identity(), &src), src);
        for t in fixed_locus(&flat_sigma()) {
            assert_eq!(apply_map(&flat_sigma(), &t), t);
        }
    }

    #[test]
    fn gamma_has_order_eight() {
        let g = gamma_group();
        assert_eq!(g.order(), 8);
        assert!(g.find("βγ").is_some());
        assert!(g.elements.iter().all(|e| e.map.is_involution()));
    }

    #[test]
    fn closure_overflow_is_reported() {
        let gens = gamma_generators();
        assert_eq!(FiniteGroup::generate_with_limit(&gens, 4), Err(TorusError::GroupOverflow(4)));
        let step = AffineTorusMap::with_quarters([1; 7], [(1, 2000), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(FiniteGroup::generate(&[NamedMap::new("t", step)]), Err(TorusError::GroupOverflow(GROUP_LIMIT)));
    }

    #[test]
    fn alpha_tori_orbits() {
        let items = fixed_locus(&alpha());
        let full = orbit_census(&gamma_group(), &items);
        assert_eq!(full.orbit_count, 4);
        assert!(full.orbits.iter().all(|o| o.stabilizer == ["Id", "α"]));
        let bg = FiniteGroup::generate(&[NamedMap::new("β", beta()), NamedMap::new("γ", gamma())]).unwrap();
        let sub = orbit_census(&bg, &items);
        assert_eq!(sub.orbit_count, 4);
        assert!(sub.free);
        let trivial = orbit_census(&FiniteGroup::trivial(), &items);
        assert_eq!(trivial.orbit_count, 16);
    }

    #[test]
    fn singular_locus_has_twelve_classes() {
        let s = singular_census(&gamma_group(), &gamma_generators());
        assert_eq!(s.per_generator.iter().map(|p| p.1).collect::<Vec<_>>(), vec![16, 16, 16]);
        assert_eq!(s.census.orbit_count, 12);
        assert!(s.pairwise_disjoint);
    }

    #[test]
    fn warmup_tau_census() {
        let c = composed_fixed_census(&warmup_tau(), &gamma_group());
        assert_eq!(c.nonempty(), vec!["Id", "βγ"]);
        let id = c.row("Id").unwrap();
        assert_eq!((id.components, id.dimension), (8, Some(4)));
        assert!(id.loci.iter().all(|t| t.free() == [1, 2, 5, 6]));
        let bg = c.row("βγ").unwrap();
        assert_eq!((bg.components, bg.dimension), (128, Some(0)));
        let by_dim = c.quotient.orbits_by_dim();
        assert_eq!(by_dim[&4], 1);
        assert_eq!(by_dim[&0], 16);
    }

    #[test]
    fn warmup_sigma_and_second_example() {
        let g = gamma_group();
        let c = composed_fixed_census(&warmup_sigma(), &g);
        assert_eq!(c.nonempty(), vec!["Id"]);
        assert_eq!(c.row("Id").unwrap().components, 16);
        let c2 = composed_fixed_census(&second_sigma(), &g);
        assert_eq!(c2.nonempty(), vec!["Id", "α"]);
        assert!(c2.rows.iter().filter(|r| r.components > 0).all(|r| r.components == 16 && r.dimension == Some(3)));
    }

    #[test]
    fn intersection() {
        let s = &fixed_locus(&flat_sigma())[0];
        assert!(subtorus_intersect(s, s));
        let a = CoordSubtorus::new(vec![1, 2, 3], vec![q(0, 1); 4]).unwrap();
        let b = CoordSubtorus::new(vec![1, 2, 3], vec![q(1, 2), q(0, 1), q(0, 1), q(0, 1)]).unwrap();
        assert!(!subtorus_intersect(&a, &b));
    }

    #[test]
    fn json_round_trip() {
        let m = warmup_tau();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"signs":[1,1,-1,-1,1,1,-1],"shift":["0","0","1/2","1/2","0","0","1/2"]}"#);
        assert_eq!(serde_json::from_str::<AffineTorusMap>(&text).unwrap(), m);
        let t = CoordSubtorus::new(vec![2, 3], vec![q(1, 4), q(0, 1), q(3, 4), q(1, 2), q(0, 1)]).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<CoordSubtorus>(&text).unwrap(), t);
        assert!(serde_json::from_str::<AffineTorusMap>(
            r#"{"signs":[1,1,2,1,1,1,1],"shift":["0","0","0","0","0","0","0"]}"#
        )
        .is_err());
    }

    #[test]
    fn shifts_are_reduced_mod_one() {
        let m = AffineTorusMap::with_quarters([-1; 7], [(5, 4), (-1, 4), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(m.shift()[0], q(1, 4));
        assert_eq!(m.shift()[1], q(3, 4));
    }
}
