//! Chevalley-basis structure constants.
//!
//! Signs are fixed by declaring `N(alpha, beta) = +(p + 1)` on every
//! extraspecial pair, where the extraspecial pair of a positive root `xi` is
//! the decomposition `xi = alpha + beta` with `alpha` earliest in the root
//! order. All remaining constants follow from the standard relations
//!
//! * `N(x, y) = -N(y, x)` and `N(-x, -y) = -N(x, y)`,
//! * `N(x, y) / (z, z) = N(y, z) / (x, x) = N(z, x) / (y, y)` when `x + y + z = 0`,
//! * the four-root identity for `x1 + x2 + x3 + x4 = 0` with no opposite pair.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::Zero;

use crate::rootsystem::RootSystem;

pub(crate) struct RootConstants<'a> {
    rs: &'a RootSystem,
    /// `N(a, b)` for positive root indices `a < b` whose sum is a root.
    special: HashMap<(usize, usize), i64>,
}

fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn neg(x: &[i64]) -> Vec<i64> {
    x.iter().map(|a| -a).collect()
}

fn exact_div(num: i64, den: i64) -> i64 {
    assert!(num % den == 0, "structure constant {num}/{den} is not integral");
    num / den
}

impl<'a> RootConstants<'a> {
    pub(crate) fn new(rs: &'a RootSystem) -> Self {
        let mut rc = Self {
            rs,
            special: HashMap::new(),
        };
        rc.fill_special();
        rc
    }

    fn norm(&self, x: &[i64]) -> i64 {
        self.rs.inner(x, x)
    }

    fn fill_special(&mut self) {
        let rs = self.rs;
        let npos = rs.num_positive();
        for xi in 0..npos {
            let target = &rs.roots()[xi].coords;
            let pairs: Vec<(usize, usize)> = (0..xi)
                .filter_map(|a| {
                    let rest = sub(target, &rs.roots()[a].coords);
                    let b = rs.index_of(&rest)?;
                    (b < npos && b > a).then_some((a, b))
                })
                .collect();
            let Some(&(alpha, beta)) = pairs.first() else {
                continue;
            };
            let a = &rs.roots()[alpha].coords;
            let b = &rs.roots()[beta].coords;
            let mut p = 0;
            let mut probe = sub(b, a);
            while rs.is_root(&probe) {
                p += 1;
                probe = sub(&probe, a);
            }
            let n_ab = p + 1;
            self.special.insert((alpha, beta), n_ab);

            let xi_norm = self.norm(target);
            for &(z, e) in &pairs[1..] {
                let zc = rs.roots()[z].coords.clone();
                let ec = rs.roots()[e].coords.clone();
                let mut acc = Ratio::<i64>::zero();
                let bz = sub(b, &zc);
                if rs.is_root(&bz) {
                    let t = self.n(b, &neg(&zc)) * self.n(a, &neg(&ec));
                    acc += Ratio::new(t, self.norm(&bz));
                }
                let az = sub(a, &zc);
                if rs.is_root(&az) {
                    let t = self.n(&neg(&zc), a) * self.n(b, &neg(&ec));
                    acc += Ratio::new(t, self.norm(&az));
                }
                let val = acc * Ratio::new(xi_norm, n_ab);
                assert!(val.is_integer(), "non-integral structure constant");
                self.special.insert((z, e), val.to_integer());
            }
        }
    }

    /// `N(x, y)` for arbitrary roots; zero when `x + y` is not a root.
    pub(crate) fn n(&self, x: &[i64], y: &[i64]) -> i64 {
        let rs = self.rs;
        let z = add(x, y);
        if z.iter().all(|c| *c == 0) || !rs.is_root(&z) {
            return 0;
        }
        let xi = rs.index_of(x).expect("x is a root");
        let yi = rs.index_of(y).expect("y is a root");
        let npos = rs.num_positive();
        let (px, py) = (xi < npos, yi < npos);
        match (px, py) {
            (true, true) => {
                if xi < yi {
                    self.special[&(xi, yi)]
                } else {
                    -self.special[&(yi, xi)]
                }
            }
            (false, false) => -self.n(&neg(x), &neg(y)),
            (false, true) => -self.n(y, x),
            (true, false) => {
                let z_pos = rs.index_of(&z).unwrap() < npos;
                if z_pos {
                    // triple (x, y, -z): N(x,y)/(z,z) = N(y,-z)/(x,x), N(y,-z) = -N(-y,z)
                    exact_div(-self.norm(&z) * self.n(&neg(y), &z), self.norm(x))
                } else {
                    // N(x,y)/(z,z) = N(-z,x)/(y,y)
                    exact_div(self.norm(&z) * self.n(&neg(&z), x), self.norm(y))
                }
            }
        }
    }

    /// `p + 1` where `y - p x` is the bottom of the `x`-string through `y`.
    #[cfg(test)]
    pub(crate) fn p_plus_one(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut p = 0;
        let mut probe = sub(y, x);
        while self.rs.is_root(&probe) {
            p += 1;
            probe = sub(&probe, x);
        }
        p + 1
    }
}

/// Coefficients of the coroot `h_x` in the simple coroot basis.
pub(crate) fn coroot_coeffs(rs: &RootSystem, x: &[i64]) -> Vec<i64> {
    let nx = rs.inner(x, x);
    x.iter()
        .zip(rs.norms())
        .map(|(c, ni)| exact_div(c * ni, nx))
        .collect()
}
