//! Group-ring arithmetic over `Z` or `Z/m`, the oriented involution
//! `φ_σ(Σ r_g g) = Σ r_g σ(g) g⁻¹`, the generating set of the antisymmetric
//! elements, and the brute-force commutativity decision.

use std::fmt;
use std::sync::Arc;

use crate::group::FiniteGroup;
use crate::orient::Orientation;
use crate::ring::{CoeffRing, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupRingError {
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("operands live over different coefficient rings ({0} vs {1})")]
    RingMismatch(CoeffRing, CoeffRing),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A dense element `Σ r_g g` of `RG`.
#[derive(Clone)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    ring: CoeffRing,
    coeffs: Vec<i64>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other) && self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    /// `a + a^-1`, `2*a*b - 2*a^-1*b^-1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, c) in self.support() {
            let c = self.ring.display_value(c);
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let name = self.group.name(g);
            match (mag, name) {
                (1, n) => f.write_str(n)?,
                (m, "1") => write!(f, "{m}")?,
                (m, n) => write!(f, "{m}*{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl GroupRingElement {
    pub fn zero(group: Arc<FiniteGroup>, ring: CoeffRing) -> Self {
        let n = group.order();
        GroupRingElement {
            group,
            ring,
            coeffs: vec![0; n],
        }
    }

    /// The basis element `g` (coefficient one).
    pub fn basis(group: Arc<FiniteGroup>, ring: CoeffRing, g: usize) -> Self {
        Self::monomial(group, ring, ring.one(), g)
    }

    /// `r·g`.
    pub fn monomial(group: Arc<FiniteGroup>, ring: CoeffRing, r: i64, g: usize) -> Self {
        let mut e = Self::zero(group, ring);
        e.coeffs[g] = ring.reduce(r);
        e
    }

    /// Builds an element from `(group element, coefficient)` terms.
    pub fn from_terms(
        group: Arc<FiniteGroup>,
        ring: CoeffRing,
        terms: &[(usize, i64)],
    ) -> Result<Self, GroupRingError> {
        let mut e = Self::zero(group, ring);
        for &(g, c) in terms {
            e.coeffs[g] = ring.add(e.coeffs[g], ring.reduce(c))?;
        }
        Ok(e)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn coeff(&self, g: usize) -> i64 {
        self.coeffs[g]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero `(element, coefficient)` pairs in element-index order.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(g, &c)| (g, c))
    }

    fn same_group(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    fn check_compatible(&self, other: &Self) -> Result<(), GroupRingError> {
        if !self.same_group(other) {
            return Err(GroupRingError::GroupMismatch);
        }
        if self.ring != other.ring {
            return Err(GroupRingError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&x, &y)| self.ring.add(x, y))
            .collect::<Result<_, _>>()?;
        Ok(GroupRingElement {
            group: self.group.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    pub fn neg(&self) -> Result<Self, GroupRingError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| self.ring.neg(x))
            .collect::<Result<_, _>>()?;
        Ok(GroupRingElement {
            group: self.group.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.add(&other.neg()?)
    }

    pub fn scalar_mul(&self, r: i64) -> Result<Self, GroupRingError> {
        let r = self.ring.reduce(r);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| self.ring.mul(r, x))
            .collect::<Result<_, _>>()?;
        Ok(GroupRingElement {
            group: self.group.clone(),
            ring: self.ring,
            coeffs,
        })
    }

    /// Convolution product, the bilinear extension of the group law.
    pub fn mul(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.group.clone(), self.ring);
        let rhs: Vec<(usize, i64)> = other.support().collect();
        for (g, x) in self.support() {
            for &(h, y) in &rhs {
                let gh = self.group.mul(g, h);
                let p = self.ring.mul(x, y)?;
                out.coeffs[gh] = self.ring.add(out.coeffs[gh], p)?;
            }
        }
        Ok(out)
    }
}

/// `xy - yx`.
pub fn commutator(
    x: &GroupRingElement,
    y: &GroupRingElement,
) -> Result<GroupRingElement, GroupRingError> {
    x.mul(y)?.sub(&y.mul(x)?)
}

/// The oriented involution: the coefficient of `g⁻¹` in the result is
/// `σ(g)` times the coefficient of `g`.
pub fn phi_sigma(
    o: &Orientation,
    x: &GroupRingElement,
) -> Result<GroupRingElement, GroupRingError> {
    if !(Arc::ptr_eq(o.group(), &x.group) || **o.group() == *x.group) {
        return Err(GroupRingError::GroupMismatch);
    }
    let mut out = GroupRingElement::zero(x.group.clone(), x.ring);
    for (g, c) in x.support() {
        let v = if o.sigma(g) > 0 { c } else { x.ring.neg(c)? };
        out.coeffs[x.group.inv(g)] = v;
    }
    Ok(out)
}

/// Which family of the antisymmetric generating set an element comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// `g` with `g ∉ N`, `g² = 1`
    InvolutionOutsideN,
    /// `g - g⁻¹` with `g ∈ N`
    DifferenceInN,
    /// `g + g⁻¹` with `g ∉ N`, `g² ≠ 1`
    SumOutsideN,
    /// `r·g` with `g ∈ N`, `g² = 1`, `r` a 2-torsion generator
    TorsionInN,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::InvolutionOutsideN => "involution-outside-kernel",
            Provenance::DifferenceInN => "difference-in-kernel",
            Provenance::SumOutsideN => "sum-outside-kernel",
            Provenance::TorsionInN => "torsion-in-kernel",
        }
    }
}

/// Generators of the antisymmetric elements as an `R`-module.
#[derive(Debug, Clone)]
pub struct SkewGeneratorSet {
    pub generators: Vec<GroupRingElement>,
    pub provenance: Vec<Provenance>,
}

impl SkewGeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn of_family(&self, p: Provenance) -> impl Iterator<Item = &GroupRingElement> + '_ {
        self.generators
            .iter()
            .zip(&self.provenance)
            .filter(move |(_, &q)| q == p)
            .map(|(g, _)| g)
    }
}

/// Whether `antisym_generators` keeps one element per inverse pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dedup {
    /// One representative per `{g, g⁻¹}` (the lower index).
    InversePairs,
    /// Both `g` and `g⁻¹` produce an element.
    None,
}

/// The four generator families, in the order: involutions outside `N`,
/// differences in `N`, sums outside `N`, torsion multiples in `N`. Within each
/// family elements appear in element-index order.
pub fn antisym_generators(o: &Orientation, ring: CoeffRing) -> SkewGeneratorSet {
    antisym_generators_with(o, ring, Dedup::InversePairs)
}

pub fn antisym_generators_with(o: &Orientation, ring: CoeffRing, dedup: Dedup) -> SkewGeneratorSet {
    let g = o.group();
    let one = ring.one();
    let minus_one = ring.reduce(-1);
    let mut set = SkewGeneratorSet {
        generators: Vec::new(),
        provenance: Vec::new(),
    };
    let mut push = |e: GroupRingElement, p: Provenance| {
        if !e.is_zero() {
            set.generators.push(e);
            set.provenance.push(p);
        }
    };
    let keep = |x: usize| dedup == Dedup::None || x <= g.inv(x);
    let involution = |x: usize| g.mul(x, x) == 0;

    for x in g.elements().filter(|&x| !o.kernel().contains(x) && involution(x)) {
        push(GroupRingElement::basis(g.clone(), ring, x), Provenance::InvolutionOutsideN);
    }
    for x in g.elements().filter(|&x| o.kernel().contains(x) && keep(x)) {
        let e = GroupRingElement::from_terms(g.clone(), ring, &[(x, one), (g.inv(x), minus_one)])
            .expect("small coefficients");
        push(e, Provenance::DifferenceInN);
    }
    for x in g
        .elements()
        .filter(|&x| !o.kernel().contains(x) && !involution(x) && keep(x))
    {
        let e = GroupRingElement::from_terms(g.clone(), ring, &[(x, one), (g.inv(x), one)])
            .expect("small coefficients");
        push(e, Provenance::SumOutsideN);
    }
    for r in ring.r2_generators() {
        for x in g.elements().filter(|&x| o.kernel().contains(x) && involution(x)) {
            push(GroupRingElement::monomial(g.clone(), ring, r, x), Provenance::TorsionInN);
        }
    }
    set
}

/// Two generators whose commutator is nonzero.
#[derive(Debug, Clone)]
pub struct Witness {
    pub left: GroupRingElement,
    pub right: GroupRingElement,
    pub left_family: Provenance,
    pub right_family: Provenance,
    pub commutator: GroupRingElement,
}

impl Witness {
    /// `[x, y] = ...` on one line.
    pub fn summary(&self) -> String {
        format!("[{}, {}] = {}", self.left, self.right, self.commutator)
    }
}

#[derive(Debug, Clone)]
pub enum SkewVerdict {
    Commutative,
    NotCommutative(Box<Witness>),
}

impl SkewVerdict {
    pub fn is_commutative(&self) -> bool {
        matches!(self, SkewVerdict::Commutative)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SkewVerdict::Commutative => None,
            SkewVerdict::NotCommutative(w) => Some(w),
        }
    }
}

/// Decides commutativity of the antisymmetric elements by checking every
/// pair of module generators; by bilinearity this is equivalent. The first
/// failing pair (in generator order) is returned as a witness.
pub fn is_skew_commutative(o: &Orientation, ring: CoeffRing) -> Result<SkewVerdict, GroupRingError> {
    decide(&antisym_generators(o, ring))
}

/// Same decision over an explicit generator set.
pub fn decide(set: &SkewGeneratorSet) -> Result<SkewVerdict, GroupRingError> {
    let gens = &set.generators;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = commutator(&gens[i], &gens[j])?;
            if !c.is_zero() {
                return Ok(SkewVerdict::NotCommutative(Box::new(Witness {
                    left: gens[i].clone(),
                    right: gens[j].clone(),
                    left_family: set.provenance[i],
                    right_family: set.provenance[j],
                    commutator: c,
                })));
            }
        }
    }
    Ok(SkewVerdict::Commutative)
}
