//! Polyhedral cones `{x : q_i·x >= 0}` and the double description method.
//!
//! The same machinery gives facets, and hence vertices, of the convex hull of a finite
//! point set through the homogenized dual cone.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{echelon_pivots, rat_rank, IntMatrix};
use crate::num::{dot, make_primitive, to_rats, Rat};

/// Largest ambient dimension accepted by the double description routines.
pub const MAX_CONE_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

impl Cone {
    pub fn new(dim: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Shape(format!("cone inequalities must have length {dim}")));
        }
        Ok(Self { dim, rows })
    }

    /// The nonnegative orthant of `R^dim`.
    pub fn orthant(dim: usize) -> Self {
        let rows = IntMatrix::identity(dim).to_rows();
        Self { dim, rows }
    }

    /// Orthant intersected with the extra half-spaces `q·x >= 0`.
    pub fn orthant_with(dim: usize, extra: Vec<Vec<BigInt>>) -> Result<Self> {
        let mut c = Self::orthant(dim);
        for q in extra {
            if q.len() != dim {
                return Err(Error::Shape(format!("cone inequalities must have length {dim}")));
            }
            c.rows.push(q);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// True when every inequality is implied by `x >= 0`, i.e. the cone is the orthant.
    pub fn is_orthant(&self) -> bool {
        (0..self.dim).all(|i| {
            self.rows.iter().any(|r| {
                r.iter()
                    .enumerate()
                    .all(|(j, v)| v.is_zero() != (i == j) && !v.is_negative())
            })
        }) && self.rows.iter().all(|r| r.iter().all(|v| !v.is_negative()))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.rows.iter().all(|r| !dot(r, x).is_negative())
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.rows.iter().all(|r| {
            let s: Rat = r.iter().zip(x).map(|(q, v)| Rat::from_integer(q.clone()) * v).sum();
            !s.is_negative()
        })
    }
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    tight: Vec<u64>,
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Double description on `{x : row·x >= 0}`; `rows` must have rank `dim`.
fn double_description(dim: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let words = rows.len().div_ceil(64).max(1);

    let mut init: Vec<usize> = Vec::with_capacity(dim);
    let mut chosen: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    for (i, r) in rows.iter().enumerate() {
        if init.len() == dim {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(to_rats(r));
        if rat_rank(&trial) > chosen.len() {
            chosen = trial;
            init.push(i);
        }
    }
    let m = IntMatrix::from_big_rows(init.iter().map(|&i| rows[i].clone()).collect()).expect("square selection");
    let det = m.det();
    let adj = m.adjugate();
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col = adj.column(j);
            let v = if det.is_negative() {
                col.into_iter().map(|x| -x).collect()
            } else {
                col
            };
            let mut tight = vec![0u64; words];
            for (k, &i) in init.iter().enumerate() {
                if k != j {
                    set_bit(&mut tight, i);
                }
            }
            Ray {
                v: make_primitive(v),
                tight,
            }
        })
        .collect();

    let mut processed: Vec<bool> = vec![false; rows.len()];
    for &i in &init {
        processed[i] = true;
    }
    for (h, row) in rows.iter().enumerate() {
        if processed[h] || row.iter().all(Zero::is_zero) {
            continue;
        }
        processed[h] = true;
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    set_bit(&mut r.tight, h);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = intersect(&rays[p].tight, &rays[n].tight);
                if popcount(&common) + 2 < dim {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != n && subset(&common, &r.tight));
                if blocked {
                    continue;
                }
                let v: Vec<BigInt> = rays[n]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| &vals[p] * x - &vals[n] * y)
                    .collect();
                let mut tight = common;
                set_bit(&mut tight, h);
                fresh.push(Ray {
                    v: make_primitive(v),
                    tight,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                set_bit(&mut r.tight, h);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

/// Primitive integer generators of the extreme rays of a pointed cone, sorted lexicographically.
pub fn extreme_rays(cone: &Cone) -> Result<Vec<Vec<BigInt>>> {
    if cone.dim > MAX_CONE_DIM {
        return Err(Error::DimensionTooLarge(cone.dim, MAX_CONE_DIM));
    }
    let rats: Vec<Vec<Rat>> = cone.rows.iter().map(|r| to_rats(r)).collect();
    if rat_rank(&rats) < cone.dim {
        return Err(Error::ConeNotPointed);
    }
    Ok(double_description(cone.dim, &cone.rows))
}

/// Vertices of the convex hull of a finite point set, sorted lexicographically.
///
/// The points are first projected injectively onto coordinates spanning their affine
/// hull; facets are the extreme rays of the homogenized dual cone and a point is a
/// vertex iff its tight facets have full rank.
pub fn hull_vertices(points: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    hull_vertices_with_rays(points, &[])
}

/// Vertices of `conv(points) + cone(rays)`, returned as a sorted subset of `points`.
pub fn hull_vertices_with_rays(points: &[Vec<BigInt>], rays: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 1 {
        return Ok(pts);
    }
    let base = &pts[0];
    let dirs: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, y)| Rat::from_integer(x - y)).collect())
        .chain(rays.iter().map(|r| to_rats(r)))
        .collect();
    let coords = echelon_pivots(&dirs);
    let k = coords.len();
    if k + 1 > MAX_CONE_DIM {
        return Err(Error::DimensionTooLarge(k, MAX_CONE_DIM - 1));
    }
    let homog = |lead: u32, p: &[BigInt]| {
        let mut v = Vec::with_capacity(k + 1);
        v.push(BigInt::from(lead));
        v.extend(coords.iter().map(|&c| p[c].clone()));
        v
    };
    let lifted: Vec<Vec<BigInt>> = pts.iter().map(|p| homog(1, p)).collect();
    let mut rows = lifted.clone();
    rows.extend(rays.iter().map(|r| homog(0, r)));
    let facets = double_description(k + 1, &rows);
    let mut out = Vec::new();
    for (p, h) in pts.iter().zip(&lifted) {
        let tight: Vec<Vec<Rat>> = facets
            .iter()
            .filter(|f| dot(f, h).is_zero())
            .map(|f| to_rats(f))
            .collect();
        if tight.len() >= k && rat_rank(&tight) == k {
            out.push(p.clone());
        }
    }
    Ok(out)
}
