//! Periodic elements `γ^p = Δ^q`: exponent reduction, Bézout roots of
//! commuting roots of the full twist, and root existence through divided
//! categories.

use serde::Serialize;
use thiserror::Error;

use crate::divided::{CategoryError, CentralizerSummary, DividedCategory};
use crate::garside::{GarsideStructure, NormalForm, NormalFormJson};
use crate::par::Execution;
use crate::presentation::Budget;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodicError {
    #[error("exponents must be positive, got ({0}, {1})")]
    NonPositive(i64, i64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("{which}^{power} is not the full twist")]
    NotARoot { which: &'static str, power: u64 },
    #[error("the two roots do not commute")]
    NotCommuting,
    #[error("identity {0} fails for the Bézout root")]
    IdentityFails(String),
    #[error("the Bézout root depends on the chosen pair")]
    PairDependence,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `(p, q)` divided by their gcd.
pub fn reduce_exponents(p: i64, q: i64) -> Result<(u64, u64), PeriodicError> {
    if p < 1 || q < 1 {
        return Err(PeriodicError::NonPositive(p, q));
    }
    let (p, q) = (p as u64, q as u64);
    let g = gcd(p, q);
    Ok((p / g, q / g))
}

/// `(u, v)` with `u ≥ 0`, `v ≤ 0`, `p·u + q·v = 1` and `u` least.
pub fn bezout_pair(p: u64, q: u64) -> Result<(i64, i64), PeriodicError> {
    if p == 0 || q == 0 {
        return Err(PeriodicError::NonPositive(p as i64, q as i64));
    }
    if gcd(p, q) != 1 {
        return Err(PeriodicError::NotCoprime(p, q));
    }
    // u = 0 would need q·v = 1 with v ≤ 0
    let u = (1..=q)
        .find(|u| (p * u) % q == 1 % q)
        .expect("p is invertible mod q");
    let v = (1 - (p * u) as i64) / q as i64;
    Ok((u as i64, v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutRoot {
    pub root: NormalForm,
    pub pair: (i64, i64),
    pub second_pair: (i64, i64),
    /// `lcm(d, r)`.
    pub order: u64,
}

/// `q(ρ) = ρ^v δ^u` for roots `ρ^d = z_P = δ^r`, with `d'u + r'v = 1`.
pub fn bezout_root(
    g: &GarsideStructure,
    rho: &NormalForm,
    delta: &NormalForm,
    d: u64,
    r: u64,
    zp: &NormalForm,
) -> Result<BezoutRoot, PeriodicError> {
    if d == 0 || r == 0 {
        return Err(PeriodicError::NonPositive(d as i64, r as i64));
    }
    if g.power(rho, d as i64) != *zp {
        return Err(PeriodicError::NotARoot {
            which: "ρ",
            power: d,
        });
    }
    if g.power(delta, r as i64) != *zp {
        return Err(PeriodicError::NotARoot {
            which: "δ",
            power: r,
        });
    }
    if !g.commute(rho, delta) {
        return Err(PeriodicError::NotCommuting);
    }
    let k = gcd(d, r);
    let (dp, rp) = (d / k, r / k);
    let (u, v) = bezout_pair(dp, rp)?;
    let at = |u: i64, v: i64| g.multiply(&g.power(rho, v), &g.power(delta, u));
    let q = at(u, v);
    let second = (u + rp as i64, v - dp as i64);
    if at(second.0, second.1) != q {
        return Err(PeriodicError::PairDependence);
    }
    let order = lcm(d, r);
    if g.power(&q, order as i64) != *zp {
        return Err(PeriodicError::IdentityFails(format!("q^{order} = z_P")));
    }
    if g.power(&q, dp as i64) != *delta {
        return Err(PeriodicError::IdentityFails(format!("q^{dp} = δ")));
    }
    if g.power(&q, rp as i64) != *rho {
        return Err(PeriodicError::IdentityFails(format!("q^{rp} = ρ")));
    }
    if g.length(&q) * order as i64 != g.length(zp) {
        return Err(PeriodicError::IdentityFails(
            "ℓ(q)·lcm(d,r) = ℓ(z_P)".into(),
        ));
    }
    Ok(BezoutRoot {
        root: q,
        pair: (u, v),
        second_pair: second,
        order,
    })
}

/// Divisors of `ℓ(z_P) = zp_delta_power · ℓ(Δ)`.
pub fn candidate_root_orders(g: &GarsideStructure, zp_delta_power: u64) -> Vec<u64> {
    divisors(zp_delta_power * g.delta_length() as u64)
}

/// Whether `Δ^zp_delta_power` is central.
pub fn full_twist_is_central(g: &GarsideStructure, zp_delta_power: i64) -> bool {
    g.is_central(&NormalForm::delta_power(zp_delta_power))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub d: u64,
    pub reduced: (u64, u64),
    pub objects: usize,
    pub morphisms: usize,
    pub relations: usize,
    pub components: usize,
    pub connected: bool,
    pub exists: bool,
    pub centralizer: Option<CentralizerSummary>,
}

impl RootReport {
    pub fn centralizer_collapse(&self) -> Option<&NormalFormJson> {
        self.centralizer.as_ref().and_then(|c| c.collapse.as_ref())
    }
}

/// Decide whether `z_P = Δ^zp_delta_power` has a `d`-th root through
/// `C_{p'}^{q'}` with `(p', q') = reduce(d, zp_delta_power)`.
pub fn roots_report(
    g: &GarsideStructure,
    zp_delta_power: u64,
    d: u64,
    centralizer: bool,
    budget: &Budget,
    exec: Execution,
) -> Result<RootReport, CategoryError> {
    let (p, q) = reduce_exponents(d as i64, zp_delta_power as i64)
        .expect("d and the twist exponent are positive");
    let c = DividedCategory::build(g, p as usize, q, budget, exec)?;
    let components = c.components().len();
    let centralizer = (centralizer && components > 0).then(|| c.centralizer(g, 0));
    Ok(RootReport {
        d,
        reduced: (p, q),
        objects: c.objects.len(),
        morphisms: c.morphisms.len(),
        relations: c.relations.len(),
        components,
        connected: components == 1,
        exists: components >= 1,
        centralizer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn reduction() {
        assert_eq!(reduce_exponents(8, 6), Ok((4, 3)));
        assert_eq!(reduce_exponents(12, 6), Ok((2, 1)));
        for k in 1..20 {
            assert_eq!(reduce_exponents(k, k), Ok((1, 1)));
        }
        assert!(reduce_exponents(0, 3).is_err());
    }

    #[test]
    fn bezout_pairs() {
        assert_eq!(bezout_pair(4, 3), Ok((1, -1)));
        assert_eq!(bezout_pair(2, 1), Ok((1, -1)));
        assert_eq!(bezout_pair(1, 7), Ok((1, 0)));
        assert_eq!(bezout_pair(2, 3), Ok((2, -1)));
        assert_eq!(bezout_pair(4, 6), Err(PeriodicError::NotCoprime(4, 6)));
    }

    #[test]
    fn g12_roots() {
        let g = GarsideStructure::from_gar(data::G12_GAR).unwrap();
        let zp = NormalForm::delta_power(6);
        let stu = g.parse_element("s t u").unwrap();
        let q = bezout_root(&g, &stu, &NormalForm::delta_power(3), 8, 2, &zp).unwrap();
        assert_eq!(q.root, stu);
        let q = bezout_root(
            &g,
            &NormalForm::delta_power(3),
            &NormalForm::delta_power(2),
            2,
            3,
            &zp,
        )
        .unwrap();
        assert_eq!(q.root, NormalForm::delta_power(1));
        let q = bezout_root(&g, &zp, &zp, 1, 1, &zp).unwrap();
        assert_eq!(q.root, zp);
        assert_eq!(
            bezout_root(&g, &stu, &stu, 4, 8, &zp),
            Err(PeriodicError::NotARoot {
                which: "ρ",
                power: 4
            })
        );
        assert_eq!(candidate_root_orders(&g, 6), vec![1, 2, 3, 4, 6, 8, 12, 24]);
        assert!(full_twist_is_central(&g, 6));
    }

    #[test]
    fn single_atom_candidates() {
        let g = GarsideStructure::from_gar("gens: a\ndelta: a\n").unwrap();
        assert_eq!(candidate_root_orders(&g, 1), vec![1]);
    }
}
