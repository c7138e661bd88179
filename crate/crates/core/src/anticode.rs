//! Anticode families: perfect spaces, closure-type anticodes
//! `A^(1) ⊗ … ⊗ A^(r)`, their duals `Σ_i F ⊗ … ⊗ A^(i) ⊗ … ⊗ F`, and the
//! Delsarte- and Ravagnani-type anticodes with a single proper component.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::code::TensorCode;
use crate::error::{Error, Result};
use crate::linalg::{self, ProjectivePoints};
use crate::qcomb::gaussian;
use crate::subspace::{all_subspaces, enumerate_subspaces, Subspace};
use crate::tensor::{kron, rank_one_factors, Shape, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Perfect,
    ClosureType,
    DualClosureType,
    Delsarte,
    Ravagnani,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Perfect,
        Family::ClosureType,
        Family::DualClosureType,
        Family::Delsarte,
        Family::Ravagnani,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Perfect => "perfect",
            Family::ClosureType => "closure",
            Family::DualClosureType => "dual-closure",
            Family::Delsarte => "delsarte",
            Family::Ravagnani => "ravagnani",
        }
    }

    /// Accepts the long names and the short CLI selectors `ps`, `cl`, `dcl`.
    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "ps" | "perfect" => Ok(Family::Perfect),
            "cl" | "closure" => Ok(Family::ClosureType),
            "dcl" | "dual-closure" => Ok(Family::DualClosureType),
            "d" | "delsarte" => Ok(Family::Delsarte),
            "r" | "ravagnani" => Ok(Family::Ravagnani),
            _ => Err(Error::Invalid(format!("unknown anticode family {s:?}"))),
        }
    }

    /// The family `{A^⊥ : A ∈ family}`, when it is again a family of anticodes.
    pub fn dual(self) -> Result<Family> {
        match self {
            Family::Perfect => Err(Error::NoDualFamily("perfect")),
            Family::ClosureType => Ok(Family::DualClosureType),
            Family::DualClosureType => Ok(Family::ClosureType),
            f => Ok(f),
        }
    }

    pub fn is_enumerable(self) -> bool {
        self != Family::Perfect
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Modes that may carry the proper component of a Delsarte- or
/// Ravagnani-type anticode.
///
/// Delsarte: some mode of maximal dimension other than the proper one stays
/// full, so the proper mode is any mode unless it is the only maximal one.
/// Ravagnani: the proper mode has minimal dimension.
pub fn free_modes(shape: &Shape, family: Family) -> Vec<usize> {
    let dims = shape.dims();
    match family {
        Family::Delsarte => {
            let max = shape.max_dim();
            let tops: Vec<usize> = (0..dims.len()).filter(|&i| dims[i] == max).collect();
            (0..dims.len())
                .filter(|&i| tops.iter().any(|&p| p != i))
                .collect()
        }
        Family::Ravagnani => {
            let min = shape.min_dim();
            (0..dims.len()).filter(|&i| dims[i] == min).collect()
        }
        _ => (0..dims.len()).collect(),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Anticode {
    /// Spanned by the given simple tensors.
    Perfect {
        shape: Shape,
        generators: Vec<Tensor>,
    },
    /// `A^(1) ⊗ … ⊗ A^(r)`; if any component is zero, all are.
    ClosureType {
        shape: Shape,
        components: Vec<Subspace>,
    },
    /// `Σ_i F ⊗ … ⊗ A^(i) ⊗ … ⊗ F`; if any component is full, all are.
    DualClosureType {
        shape: Shape,
        components: Vec<Subspace>,
    },
    /// `F ⊗ … ⊗ A ⊗ … ⊗ F` with `A` at `mode`. The zero and full anticodes use
    /// the first free mode.
    Delsarte {
        shape: Shape,
        mode: usize,
        subspace: Subspace,
    },
    Ravagnani {
        shape: Shape,
        mode: usize,
        subspace: Subspace,
    },
}

impl fmt::Debug for Anticode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anticode::Perfect { generators, .. } => {
                write!(f, "Perfect({} generators)", generators.len())
            }
            Anticode::ClosureType { components, .. } => write!(f, "ClosureType{components:?}"),
            Anticode::DualClosureType { components, .. } => {
                write!(f, "DualClosureType{components:?}")
            }
            Anticode::Delsarte { mode, subspace, .. } => {
                write!(f, "Delsarte(mode {mode}, {subspace:?})")
            }
            Anticode::Ravagnani { mode, subspace, .. } => {
                write!(f, "Ravagnani(mode {mode}, {subspace:?})")
            }
        }
    }
}

fn check_components(shape: &Shape, components: &[Subspace]) -> Result<()> {
    if components.len() != shape.order()
        || components
            .iter()
            .zip(shape.dims())
            .any(|(c, &n)| c.ambient_dim() != n || c.field() != shape.field())
    {
        return Err(Error::Shape(format!(
            "components do not match dims {:?}",
            shape.dims()
        )));
    }
    Ok(())
}

impl Anticode {
    pub fn closure_type(shape: &Shape, components: Vec<Subspace>) -> Result<Anticode> {
        check_components(shape, &components)?;
        Ok(Anticode::ClosureType {
            shape: shape.clone(),
            components,
        }
        .canonical())
    }

    pub fn dual_closure_type(shape: &Shape, components: Vec<Subspace>) -> Result<Anticode> {
        check_components(shape, &components)?;
        Ok(Anticode::DualClosureType {
            shape: shape.clone(),
            components,
        }
        .canonical())
    }

    pub fn single_mode(
        shape: &Shape,
        family: Family,
        mode: usize,
        subspace: Subspace,
    ) -> Result<Anticode> {
        if mode >= shape.order()
            || subspace.ambient_dim() != shape.dims()[mode]
            || subspace.field() != shape.field()
        {
            return Err(Error::Shape(format!(
                "mode {mode} subspace does not fit dims {:?}",
                shape.dims()
            )));
        }
        let trivial = subspace.is_zero() || subspace.is_full();
        if !trivial && !free_modes(shape, family).contains(&mode) {
            return Err(Error::Invalid(format!(
                "mode {mode} cannot be proper in a {family} anticode"
            )));
        }
        let shape = shape.clone();
        let a = match family {
            Family::Delsarte => Anticode::Delsarte {
                shape,
                mode,
                subspace,
            },
            Family::Ravagnani => Anticode::Ravagnani {
                shape,
                mode,
                subspace,
            },
            _ => {
                return Err(Error::FamilyMismatch(
                    "single-mode anticodes are Delsarte or Ravagnani",
                ))
            }
        };
        Ok(a.canonical())
    }

    pub fn zero(shape: &Shape, family: Family) -> Result<Anticode> {
        let f = shape.field();
        match family {
            Family::Perfect => Ok(Anticode::Perfect {
                shape: shape.clone(),
                generators: Vec::new(),
            }),
            Family::ClosureType => Anticode::closure_type(
                shape,
                shape.dims().iter().map(|&n| Subspace::zero(f, n)).collect(),
            ),
            Family::DualClosureType => Anticode::dual_closure_type(
                shape,
                shape.dims().iter().map(|&n| Subspace::zero(f, n)).collect(),
            ),
            _ => Anticode::single_mode(shape, family, 0, Subspace::zero(f, shape.dims()[0])),
        }
    }

    pub fn full(shape: &Shape, family: Family) -> Result<Anticode> {
        let f = shape.field();
        match family {
            Family::Perfect => {
                let gens = (0..shape.n())
                    .map(|j| {
                        let mut e = vec![0u8; shape.n()];
                        e[j] = 1;
                        Tensor::from_parts(f, shape.dims(), e)
                    })
                    .collect();
                Ok(Anticode::Perfect {
                    shape: shape.clone(),
                    generators: gens,
                })
            }
            Family::ClosureType => Anticode::closure_type(
                shape,
                shape.dims().iter().map(|&n| Subspace::full(f, n)).collect(),
            ),
            Family::DualClosureType => Anticode::dual_closure_type(
                shape,
                shape.dims().iter().map(|&n| Subspace::full(f, n)).collect(),
            ),
            _ => Anticode::single_mode(shape, family, 0, Subspace::full(f, shape.dims()[0])),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Anticode::Perfect { .. } => Family::Perfect,
            Anticode::ClosureType { .. } => Family::ClosureType,
            Anticode::DualClosureType { .. } => Family::DualClosureType,
            Anticode::Delsarte { .. } => Family::Delsarte,
            Anticode::Ravagnani { .. } => Family::Ravagnani,
        }
    }

    pub fn shape(&self) -> &Shape {
        match self {
            Anticode::Perfect { shape, .. }
            | Anticode::ClosureType { shape, .. }
            | Anticode::DualClosureType { shape, .. }
            | Anticode::Delsarte { shape, .. }
            | Anticode::Ravagnani { shape, .. } => shape,
        }
    }

    /// The normal form: equal anticodes of one family have equal payloads
    /// (perfect spaces excepted, whose generators are not canonical).
    pub fn canonical(self) -> Anticode {
        match self {
            Anticode::ClosureType { shape, components }
                if components.iter().any(Subspace::is_zero) =>
            {
                let f = shape.field().clone();
                let components = shape
                    .dims()
                    .iter()
                    .map(|&n| Subspace::zero(&f, n))
                    .collect();
                Anticode::ClosureType { shape, components }
            }
            Anticode::DualClosureType { shape, components }
                if components.iter().any(Subspace::is_full) =>
            {
                let f = shape.field().clone();
                let components = shape
                    .dims()
                    .iter()
                    .map(|&n| Subspace::full(&f, n))
                    .collect();
                Anticode::DualClosureType { shape, components }
            }
            Anticode::Delsarte {
                shape,
                mode,
                subspace,
            } if subspace.is_zero() || subspace.is_full() => {
                let (mode, subspace) = trivial_single(&shape, Family::Delsarte, mode, &subspace);
                Anticode::Delsarte {
                    shape,
                    mode,
                    subspace,
                }
            }
            Anticode::Ravagnani {
                shape,
                mode,
                subspace,
            } if subspace.is_zero() || subspace.is_full() => {
                let (mode, subspace) = trivial_single(&shape, Family::Ravagnani, mode, &subspace);
                Anticode::Ravagnani {
                    shape,
                    mode,
                    subspace,
                }
            }
            a => a,
        }
    }

    pub fn dim(&self) -> usize {
        let n = self.shape().n();
        match self {
            Anticode::Perfect { .. } => self.to_subspace().dim(),
            Anticode::ClosureType { components, .. } => {
                components.iter().map(Subspace::dim).product()
            }
            Anticode::DualClosureType { shape, components } => {
                n - components
                    .iter()
                    .zip(shape.dims())
                    .map(|(c, &ni)| ni - c.dim())
                    .product::<usize>()
            }
            Anticode::Delsarte {
                shape,
                mode,
                subspace,
            }
            | Anticode::Ravagnani {
                shape,
                mode,
                subspace,
            } => subspace.dim() * (n / shape.dims()[*mode]),
        }
    }

    /// Mode components for the closure-type view of the anticode, if it has one.
    pub fn components(&self) -> Option<Vec<Subspace>> {
        match self {
            Anticode::ClosureType { components, .. } => Some(components.clone()),
            Anticode::Delsarte {
                shape,
                mode,
                subspace,
            }
            | Anticode::Ravagnani {
                shape,
                mode,
                subspace,
            } => {
                let f = shape.field();
                Some(
                    shape
                        .dims()
                        .iter()
                        .enumerate()
                        .map(|(i, &n)| {
                            if i == *mode {
                                subspace.clone()
                            } else {
                                Subspace::full(f, n)
                            }
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// The anticode as a subspace of the flattened ambient space.
    pub fn to_subspace(&self) -> Subspace {
        let shape = self.shape();
        let (f, n) = (shape.field(), shape.n());
        match self {
            Anticode::Perfect { generators, .. } => Subspace::span_unchecked(
                f,
                n,
                generators.iter().map(|t| t.entries().to_vec()).collect(),
            ),
            Anticode::DualClosureType { components, .. } => {
                let mut rows = Vec::new();
                for (i, c) in components.iter().enumerate() {
                    rows.extend(single_mode_generators(shape, i, c));
                }
                Subspace::span_unchecked(f, n, rows)
            }
            _ => product_subspace(shape, &self.components().expect("closure-type view")),
        }
    }

    /// `A^⊥` within the dual family.
    pub fn dual(&self) -> Result<Anticode> {
        let shape = self.shape().clone();
        let perp = |cs: &[Subspace]| {
            cs.iter()
                .map(Subspace::orthogonal_complement)
                .collect::<Vec<_>>()
        };
        Ok(match self {
            Anticode::Perfect { .. } => return Err(Error::NoDualFamily("perfect")),
            Anticode::ClosureType { components, .. } => Anticode::DualClosureType {
                shape,
                components: perp(components),
            }
            .canonical(),
            Anticode::DualClosureType { components, .. } => Anticode::ClosureType {
                shape,
                components: perp(components),
            }
            .canonical(),
            Anticode::Delsarte { mode, subspace, .. } => Anticode::Delsarte {
                shape,
                mode: *mode,
                subspace: subspace.orthogonal_complement(),
            }
            .canonical(),
            Anticode::Ravagnani { mode, subspace, .. } => Anticode::Ravagnani {
                shape,
                mode: *mode,
                subspace: subspace.orthogonal_complement(),
            }
            .canonical(),
        })
    }

    fn same_family(&self, other: &Anticode) -> Result<()> {
        if self.family() != other.family() || self.shape() != other.shape() {
            return Err(Error::FamilyMismatch(
                "lattice operations need two anticodes of one family and shape",
            ));
        }
        Ok(())
    }

    pub fn contains(&self, other: &Anticode) -> Result<bool> {
        self.to_subspace().contains(&other.to_subspace())
    }

    pub fn join(&self, other: &Anticode) -> Result<Anticode> {
        self.same_family(other)?;
        let shape = self.shape().clone();
        let sums = |a: &[Subspace], b: &[Subspace]| -> Result<Vec<Subspace>> {
            a.iter().zip(b).map(|(x, y)| x.sum(y)).collect()
        };
        Ok(match (self, other) {
            (Anticode::Perfect { generators: a, .. }, Anticode::Perfect { generators: b, .. }) => {
                Anticode::Perfect {
                    shape,
                    generators: a.iter().chain(b).cloned().collect(),
                }
            }
            (
                Anticode::ClosureType { components: a, .. },
                Anticode::ClosureType { components: b, .. },
            ) => Anticode::ClosureType {
                shape,
                components: sums(a, b)?,
            }
            .canonical(),
            (
                Anticode::DualClosureType { components: a, .. },
                Anticode::DualClosureType { components: b, .. },
            ) => Anticode::DualClosureType {
                shape,
                components: sums(a, b)?,
            }
            .canonical(),
            _ => self.single_mode_op(other, true)?,
        })
    }

    pub fn meet(&self, other: &Anticode, budget: &Budget) -> Result<Anticode> {
        self.same_family(other)?;
        let shape = self.shape().clone();
        let caps = |a: &[Subspace], b: &[Subspace]| -> Result<Vec<Subspace>> {
            a.iter().zip(b).map(|(x, y)| x.intersect(y)).collect()
        };
        Ok(match (self, other) {
            (Anticode::Perfect { .. }, Anticode::Perfect { .. }) => {
                let cap = self.to_subspace().intersect(&other.to_subspace())?;
                let gens = simple_members(&shape, &cap, budget)?;
                Anticode::Perfect {
                    shape,
                    generators: gens,
                }
            }
            (
                Anticode::ClosureType { components: a, .. },
                Anticode::ClosureType { components: b, .. },
            ) => Anticode::ClosureType {
                shape,
                components: caps(a, b)?,
            }
            .canonical(),
            (
                Anticode::DualClosureType { components: a, .. },
                Anticode::DualClosureType { components: b, .. },
            ) => Anticode::DualClosureType {
                shape,
                components: caps(a, b)?,
            }
            .canonical(),
            _ => self.single_mode_op(other, false)?,
        })
    }

    fn single_mode_op(&self, other: &Anticode, join: bool) -> Result<Anticode> {
        let shape = self.shape();
        let fam = self.family();
        let (Some((ma, sa)), Some((mb, sb))) = (self.single(), other.single()) else {
            return Err(Error::FamilyMismatch("expected single-mode anticodes"));
        };
        let proper = |s: &Subspace| !s.is_zero() && !s.is_full();
        if join {
            if !proper(sa) {
                return Ok(if sa.is_zero() {
                    other.clone()
                } else {
                    self.clone()
                });
            }
            if !proper(sb) {
                return Ok(if sb.is_zero() {
                    self.clone()
                } else {
                    other.clone()
                });
            }
            if ma == mb {
                return Anticode::single_mode(shape, fam, ma, sa.sum(sb)?);
            }
            Anticode::full(shape, fam)
        } else {
            if !proper(sa) {
                return Ok(if sa.is_full() {
                    other.clone()
                } else {
                    self.clone()
                });
            }
            if !proper(sb) {
                return Ok(if sb.is_full() {
                    self.clone()
                } else {
                    other.clone()
                });
            }
            if ma == mb {
                return Anticode::single_mode(shape, fam, ma, sa.intersect(sb)?);
            }
            Anticode::zero(shape, fam)
        }
    }

    fn single(&self) -> Option<(usize, &Subspace)> {
        match self {
            Anticode::Delsarte { mode, subspace, .. }
            | Anticode::Ravagnani { mode, subspace, .. } => Some((*mode, subspace)),
            _ => None,
        }
    }
}

fn trivial_single(shape: &Shape, family: Family, mode: usize, s: &Subspace) -> (usize, Subspace) {
    let m = free_modes(shape, family).first().copied().unwrap_or(mode);
    let n = shape.dims()[m];
    let s = if s.is_zero() {
        Subspace::zero(shape.field(), n)
    } else {
        Subspace::full(shape.field(), n)
    };
    (m, s)
}

/// Generators of `F ⊗ … ⊗ A ⊗ … ⊗ F` with `A` at mode `i`.
fn single_mode_generators(shape: &Shape, i: usize, a: &Subspace) -> Vec<Vec<u8>> {
    let mut comps: Vec<Subspace> = shape
        .dims()
        .iter()
        .map(|&n| Subspace::full(shape.field(), n))
        .collect();
    comps[i] = a.clone();
    product_rows(shape, &comps)
}

fn product_rows(shape: &Shape, comps: &[Subspace]) -> Vec<Vec<u8>> {
    let f = shape.field();
    let mut rows: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
    for c in comps {
        let mut next = Vec::with_capacity(rows.len() * c.dim());
        for prefix in &rows {
            for b in c.basis() {
                let mut p = prefix.clone();
                p.push(b.clone());
                next.push(p);
            }
        }
        rows = next;
    }
    rows.iter().map(|factors| kron(f, factors)).collect()
}

/// `A^(1) ⊗ … ⊗ A^(r)` as a subspace; products of bases form a basis.
pub fn product_subspace(shape: &Shape, comps: &[Subspace]) -> Subspace {
    Subspace::span_unchecked(shape.field(), shape.n(), product_rows(shape, comps))
}

/// A basis of simple tensors of the perfect part of `v`: the span of its rank-one elements.
fn simple_members(shape: &Shape, v: &Subspace, budget: &Budget) -> Result<Vec<Tensor>> {
    let f = shape.field();
    budget.charge(
        "projective vectors",
        ProjectivePoints::count(f.q(), v.dim()),
    )?;
    let mut acc: Vec<Vec<u8>> = Vec::new();
    let mut out = Vec::new();
    for c in ProjectivePoints::new(f, v.dim()) {
        let x = linalg::combine(f, &c, v.basis(), shape.n());
        if rank_one_factors(f, shape.dims(), &x).is_some() {
            let mut probe = acc.clone();
            probe.push(x.clone());
            if linalg::rank(f, &probe) > acc.len() {
                acc = probe;
                out.push(Tensor::from_parts(f, shape.dims(), x));
                if out.len() == v.dim() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Decides membership of `v` in `family` and returns its canonical payload.
pub fn is_member(
    shape: &Shape,
    v: &Subspace,
    family: Family,
    budget: &Budget,
) -> Result<Option<Anticode>> {
    if v.ambient_dim() != shape.n() || v.field() != shape.field() {
        return Err(Error::Shape(
            "subspace does not live in this tensor space".into(),
        ));
    }
    let closure = |v: &Subspace| -> Result<Option<Vec<Subspace>>> {
        let code = TensorCode::from_subspace(shape, v.clone())?;
        let cl = code.closure();
        let d: usize = if v.is_zero() {
            0
        } else {
            cl.iter().map(Subspace::dim).product()
        };
        Ok((d == v.dim()).then_some(cl))
    };
    Ok(match family {
        Family::Perfect => {
            let gens = simple_members(shape, v, budget)?;
            (gens.len() == v.dim()).then(|| Anticode::Perfect {
                shape: shape.clone(),
                generators: gens,
            })
        }
        Family::ClosureType => closure(v)?.map(|cl| {
            Anticode::ClosureType {
                shape: shape.clone(),
                components: cl,
            }
            .canonical()
        }),
        Family::DualClosureType => closure(&v.orthogonal_complement())?.map(|cl| {
            let comps = cl.iter().map(Subspace::orthogonal_complement).collect();
            Anticode::DualClosureType {
                shape: shape.clone(),
                components: comps,
            }
            .canonical()
        }),
        Family::Delsarte | Family::Ravagnani => {
            if v.is_zero() {
                return Ok(Some(Anticode::zero(shape, family)?));
            }
            if v.is_full() {
                return Ok(Some(Anticode::full(shape, family)?));
            }
            let Some(cl) = closure(v)? else {
                return Ok(None);
            };
            let proper: Vec<usize> = (0..cl.len()).filter(|&i| !cl[i].is_full()).collect();
            match proper.as_slice() {
                [i] if free_modes(shape, family).contains(i) => {
                    Some(Anticode::single_mode(shape, family, *i, cl[*i].clone())?)
                }
                _ => None,
            }
        }
    })
}

/// Dimension tuples `(d_1, …, d_r)` with `0 <= d_i <= n_i`, in lexicographic order.
fn dim_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in dims {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=n).map(move |d| {
                    let mut q = p.clone();
                    q.push(d);
                    q
                })
            })
            .collect();
    }
    out
}

fn subspace_products(shape: &Shape, dims: &[usize], budget: &Budget) -> Result<Vec<Vec<Subspace>>> {
    let mut out: Vec<Vec<Subspace>> = vec![Vec::new()];
    for (i, &d) in dims.iter().enumerate() {
        let subs: Vec<Subspace> =
            enumerate_subspaces(shape.field(), shape.dims()[i], d, budget)?.collect();
        let mut next = Vec::with_capacity(out.len() * subs.len());
        for p in &out {
            for s in &subs {
                let mut q = p.clone();
                q.push(s.clone());
                next.push(q);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Every member of `family` of dimension `a`, each exactly once, in a fixed order.
pub fn enumerate_anticodes(
    shape: &Shape,
    family: Family,
    a: usize,
    budget: &Budget,
) -> Result<Vec<Anticode>> {
    if !family.is_enumerable() {
        return Err(Error::NotEnumerable("perfect spaces"));
    }
    let n = shape.n();
    if a > n {
        return Ok(Vec::new());
    }
    let count = family_size(shape, family, a)?;
    let count: u64 = count.try_into().map_err(|_| Error::Budget {
        what: "anticodes",
        limit: budget.objects_limit(),
    })?;
    budget.charge("anticodes", count)?;
    if a == 0 {
        return Ok(vec![Anticode::zero(shape, family)?]);
    }
    if a == n {
        return Ok(vec![Anticode::full(shape, family)?]);
    }
    let dims = shape.dims();
    let mut out = Vec::new();
    match family {
        Family::ClosureType => {
            for t in dim_tuples(dims) {
                if t.iter().product::<usize>() == a && t.iter().all(|&d| d > 0) {
                    for comps in subspace_products(shape, &t, budget)? {
                        out.push(Anticode::ClosureType {
                            shape: shape.clone(),
                            components: comps,
                        });
                    }
                }
            }
        }
        Family::DualClosureType => {
            for t in dim_tuples(dims) {
                let co: usize = t
                    .iter()
                    .zip(dims)
                    .map(|(&d, &ni)| ni.saturating_sub(d))
                    .product();
                if t.iter().zip(dims).all(|(&d, &ni)| d < ni) && n - co == a {
                    for comps in subspace_products(shape, &t, budget)? {
                        out.push(Anticode::DualClosureType {
                            shape: shape.clone(),
                            components: comps,
                        });
                    }
                }
            }
        }
        _ => {
            for i in free_modes(shape, family) {
                let step = n / dims[i];
                if a.is_multiple_of(step) && a / step < dims[i] {
                    for s in enumerate_subspaces(shape.field(), dims[i], a / step, budget)? {
                        out.push(Anticode::single_mode(shape, family, i, s)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All members of an enumerable family, by increasing dimension.
pub fn all_anticodes(shape: &Shape, family: Family, budget: &Budget) -> Result<Vec<Anticode>> {
    let mut out = Vec::new();
    for a in 0..=shape.n() {
        out.extend(enumerate_anticodes(shape, family, a, budget)?);
    }
    Ok(out)
}

/// `|A_a|` from products and sums of Gaussian binomials.
pub fn family_size(shape: &Shape, family: Family, a: usize) -> Result<BigInt> {
    let (n, q, dims) = (shape.n(), shape.q() as u64, shape.dims());
    if !family.is_enumerable() {
        return Err(Error::NotEnumerable("perfect spaces"));
    }
    if a > n {
        return Ok(BigInt::zero());
    }
    if a == 0 || a == n {
        return Ok(BigInt::one());
    }
    let prod = |t: &[usize]| {
        t.iter()
            .zip(dims)
            .map(|(&d, &ni)| gaussian(q, ni, d))
            .product::<BigInt>()
    };
    let mut total = BigInt::zero();
    match family {
        Family::ClosureType => {
            for t in dim_tuples(dims) {
                if t.iter().all(|&d| d > 0) && t.iter().product::<usize>() == a {
                    total += prod(&t);
                }
            }
        }
        Family::DualClosureType => {
            for t in dim_tuples(dims) {
                let co: usize = t
                    .iter()
                    .zip(dims)
                    .map(|(&d, &ni)| ni.saturating_sub(d))
                    .product();
                if t.iter().zip(dims).all(|(&d, &ni)| d < ni) && n - co == a {
                    total += prod(&t);
                }
            }
        }
        Family::Delsarte | Family::Ravagnani => {
            for i in free_modes(shape, family) {
                let step = n / dims[i];
                if a.is_multiple_of(step) && a / step < dims[i] {
                    total += gaussian(q, dims[i], a / step);
                }
            }
        }
        Family::Perfect => unreachable!(),
    }
    Ok(total)
}

/// `dim(C ∩ A)` computed in the flattened ambient space.
pub fn intersection_dim(code: &TensorCode, a: &Anticode) -> Result<usize> {
    if code.shape() != a.shape() {
        return Err(Error::Shape(
            "code and anticode live in different spaces".into(),
        ));
    }
    code.space().intersection_dim(&a.to_subspace())
}

/// `dim(C ∩ A)` as the dimension of `{c ∈ C : c * Y = 0 for all Y ∈ A^⊥}`,
/// taking generators of `A^⊥` from the closure-type/dual-closure-type duality
/// rather than from an orthogonal complement.
pub fn intersection_dim_by_constraints(code: &TensorCode, a: &Anticode) -> Result<usize> {
    let shape = code.shape();
    let constraints: Vec<Vec<u8>> = match a.dual()? {
        Anticode::DualClosureType { components, .. } => components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| single_mode_generators(shape, i, c))
            .collect(),
        d => d.to_subspace().basis().to_vec(),
    };
    let f = code.field();
    let m: Vec<Vec<u8>> = code
        .space()
        .basis()
        .iter()
        .map(|c| constraints.iter().map(|y| linalg::dot(f, c, y)).collect())
        .collect();
    Ok(code.k()
        - if constraints.is_empty() {
            0
        } else {
            linalg::rank(f, &m)
        })
}

/// Every subspace of every mode, shared by exhaustive checks.
pub fn mode_lattices(shape: &Shape, budget: &Budget) -> Result<Vec<Vec<Subspace>>> {
    shape
        .dims()
        .iter()
        .map(|&n| all_subspaces(shape.field(), n, budget))
        .collect()
}
