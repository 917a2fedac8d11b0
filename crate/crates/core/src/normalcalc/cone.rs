use crate::error::{check_dim, Result};
use crate::polyhedra::{Polyhedron, VRep};
use crate::rational::{neg, primitive, primitive_unsigned, zeros, Point, Rational};

/// Polyhedral cone `{sum l_i g_i + sum m_j v_j : l >= 0}` in dual
/// coordinates, with generators `g_i` and lineality vectors `v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCone {
    pub dim: usize,
    pub generators: Vec<Point>,
    pub lineality: Vec<Point>,
}

impl PolyCone {
    pub fn new(dim: usize, generators: Vec<Point>, lineality: Vec<Point>) -> Result<Self> {
        for g in generators.iter().chain(&lineality) {
            check_dim(dim, g.len())?;
        }
        let mut gens: Vec<Point> = Vec::new();
        for g in generators {
            if let Some(p) = primitive(&g) {
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        let mut lines: Vec<Point> = Vec::new();
        for l in lineality {
            if let Some(p) = primitive_unsigned(&l) {
                if !lines.contains(&p) {
                    lines.push(p);
                }
            }
        }
        Ok(PolyCone {
            dim,
            generators: gens,
            lineality: lines,
        })
    }

    pub fn trivial(dim: usize) -> Self {
        PolyCone {
            dim,
            generators: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn to_polyhedron(&self) -> Polyhedron {
        let mut rays = self.generators.clone();
        for l in &self.lineality {
            rays.push(l.clone());
            rays.push(neg(l));
        }
        Polyhedron::from_vrep(VRep::new(self.dim, vec![zeros(self.dim)], rays))
    }

    /// Reads a cone back from a polyhedron that is a cone with apex 0,
    /// returning a minimal generating system.
    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        let v = p.vrep();
        let lines = v.lines();
        let generators = v
            .rays
            .iter()
            .filter(|r| !v.rays.contains(&neg(r)))
            .cloned()
            .collect();
        PolyCone::new(p.dim(), generators, lines).expect("dimensions agree")
    }

    pub fn contains(&self, f: &[Rational]) -> Result<bool> {
        self.to_polyhedron().contains(f)
    }

    pub fn minimized(&self) -> Self {
        Self::from_polyhedron(&self.to_polyhedron())
    }

    pub fn set_equal(&self, other: &PolyCone) -> Result<bool> {
        self.to_polyhedron().set_equal(&other.to_polyhedron())
    }
}

pub fn cone_sum(a: &PolyCone, b: &PolyCone) -> Result<PolyCone> {
    check_dim(a.dim, b.dim)?;
    PolyCone::new(
        a.dim,
        a.generators.iter().chain(&b.generators).cloned().collect(),
        a.lineality.iter().chain(&b.lineality).cloned().collect(),
    )
}

pub fn cone_neg(c: &PolyCone) -> PolyCone {
    PolyCone::new(
        c.dim,
        c.generators.iter().map(|g| neg(g)).collect(),
        c.lineality.clone(),
    )
    .expect("dimensions agree")
}

pub fn cone_intersect(a: &PolyCone, b: &PolyCone) -> Result<PolyCone> {
    check_dim(a.dim, b.dim)?;
    let p = a.to_polyhedron().intersect(&b.to_polyhedron())?;
    Ok(PolyCone::from_polyhedron(&p))
}

pub fn cone_is_trivial(c: &PolyCone) -> bool {
    let m = c.minimized();
    m.generators.is_empty() && m.lineality.is_empty()
}
