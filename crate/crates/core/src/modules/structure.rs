use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{RightModule, Submodule};
use crate::linalg::{Mat, Subspace};

/// Multiset of simple-module labels: vertex -> multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multiset(pub BTreeMap<usize, usize>);

impl Multiset {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn multiplicity(&self, label: usize) -> usize {
        self.0.get(&label).copied().unwrap_or(0)
    }

    pub fn is_square_free(&self) -> bool {
        self.0.values().all(|&m| m <= 1)
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    fn add(&mut self, other: &Multiset) {
        for (&k, &v) in &other.0 {
            *self.0.entry(k).or_default() += v;
        }
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .flat_map(|(&k, &m)| std::iter::repeat_n(format!("S{k}"), m))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl RightModule {
    /// `Soc(M) = {m : m·J = 0}`.
    pub fn socle(&self) -> Submodule {
        self.socle_over(&self.zero_submodule())
    }

    /// `{m : m·J ⊆ base}`, the preimage of `Soc(M/base)`.
    fn socle_over(&self, base: &Submodule) -> Submodule {
        let f = self.field();
        let ann = base.space().annihilator();
        let blocks: Vec<Mat> = self.radical_actions().iter().map(|r| r.mul(&ann)).collect();
        let stacked = blocks.iter().fold(Mat::zeros(f, self.dim(), 0), |acc, b| acc.hstack(b));
        Submodule(stacked.left_kernel())
    }

    /// `rad(M) = M·J`.
    pub fn radical(&self) -> Submodule {
        self.radical_of(&self.whole())
    }

    fn radical_of(&self, sub: &Submodule) -> Submodule {
        let f = self.field();
        let images = self
            .radical_actions()
            .iter()
            .fold(Mat::zeros(f, 0, self.dim()), |acc, r| acc.vstack(&sub.space().basis().mul(r)));
        Submodule(Subspace::from_mat(images))
    }

    /// `0 = soc_0 ⊂ soc_1 ⊂ ... ⊂ M`, ending at `M`.
    pub fn socle_series(&self) -> Vec<Submodule> {
        let mut series = vec![self.zero_submodule()];
        loop {
            let last = series.last().expect("nonempty");
            if last.dim() == self.dim() {
                return series;
            }
            let next = self.socle_over(last);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    /// `M ⊃ MJ ⊃ MJ² ⊃ ... ⊃ 0`, starting at `M`.
    pub fn radical_series(&self) -> Vec<Submodule> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_zero() {
                return series;
            }
            let next = self.radical_of(last);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn radical_series_dims(&self) -> Vec<usize> {
        self.radical_series().iter().map(Submodule::dim).collect()
    }

    /// Multiplicity of each simple label in a submodule: `dim(N·e_vv)` per vertex.
    pub fn labels_of(&self, sub: &Submodule) -> Multiset {
        let mut out = BTreeMap::new();
        for v in self.algebra().simple_labels() {
            let d = sub.space().basis().mul(&self.idempotent_action(v)).rank();
            if d > 0 {
                out.insert(v, d);
            }
        }
        Multiset(out)
    }

    pub fn socle_labels(&self) -> Multiset {
        self.labels_of(&self.socle())
    }

    /// Labels of `M / rad(M)`.
    pub fn top_labels(&self) -> Multiset {
        let mut top = self.labels_of(&self.whole());
        for (k, v) in self.labels_of(&self.radical()).0 {
            let e = top.0.get_mut(&k).expect("radical labels occur in M");
            *e -= v;
            if *e == 0 {
                top.0.remove(&k);
            }
        }
        top
    }

    /// Composition factors read layer by layer from the radical series.
    pub fn composition_factors(&self) -> Multiset {
        let series = self.radical_series();
        let mut total = Multiset::default();
        for w in series.windows(2) {
            let upper = self.labels_of(&w[0]);
            let lower = self.labels_of(&w[1]);
            let layer = Multiset(
                upper
                    .0
                    .iter()
                    .filter_map(|(&k, &m)| {
                        let d = m - lower.multiplicity(k);
                        (d > 0).then_some((k, d))
                    })
                    .collect(),
            );
            total.add(&layer);
        }
        if let Some(last) = series.last() {
            total.add(&self.labels_of(last));
        }
        total
    }

    pub fn composition_length(&self) -> usize {
        self.composition_factors().total()
    }

    /// Number of simple summands of the socle.
    pub fn goldie_dimension(&self) -> usize {
        self.socle().dim()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::algebra::{r3, upper_triangular};

    fn ms(pairs: &[(usize, usize)]) -> Multiset {
        Multiset(pairs.iter().copied().collect())
    }

    #[test]
    fn socle_of_projectives() {
        let m = e11r_r3();
        assert_eq!(m.socle().dim(), 2);
        assert_eq!(m.socle_labels(), ms(&[(2, 1), (3, 1)]));
        let m4 = e11r_r4();
        assert_eq!(m4.socle().dim(), 3);
        assert_eq!(m4.socle_labels(), ms(&[(2, 1), (3, 1), (4, 1)]));
    }

    #[test]
    fn simple_module_layers() {
        let s = RightModule::simple(&r3(gf2()), 2).unwrap();
        assert!(s.radical().is_zero());
        assert_eq!(s.socle(), s.whole());
        assert_eq!(s.composition_factors(), ms(&[(2, 1)]));
    }

    #[test]
    fn radical_of_e11r() {
        let m = e11r_r3();
        assert_eq!(m.radical(), m.socle());
        assert_eq!(m.radical_series_dims(), vec![3, 2, 0]);
        assert_eq!(m.top_labels(), ms(&[(1, 1)]));
    }

    #[test]
    fn series_over_longer_chain() {
        let t3 = upper_triangular(3, gf2());
        let p = RightModule::projective(&t3, 1).unwrap();
        assert_eq!(p.radical_series_dims(), vec![3, 2, 1, 0]);
        let soc: Vec<usize> = p.socle_series().iter().map(Submodule::dim).collect();
        assert_eq!(soc, vec![0, 1, 2, 3]);
        assert_eq!(p.composition_factors(), ms(&[(1, 1), (2, 1), (3, 1)]));
    }

    #[test]
    fn composition_of_zero_and_e11r_r4() {
        let z = RightModule::zero(&r3(gf2()));
        assert_eq!(z.composition_length(), 0);
        assert_eq!(z.composition_factors(), Multiset::default());
        let m = e11r_r4();
        assert_eq!(m.composition_length(), 4);
        assert_eq!(m.composition_factors(), ms(&[(1, 1), (2, 1), (3, 1), (4, 1)]));
    }

    #[test]
    fn goldie_dimension_examples() {
        assert_eq!(RightModule::simple(&r3(gf2()), 1).unwrap().goldie_dimension(), 1);
        assert_eq!(e11r_r3().goldie_dimension(), 2);
    }

    #[test]
    fn quotient_socles() {
        let m = e11r_r4();
        let n = m.spin([vector(&[0, 0, 0, 1]).as_slice()]);
        let (q, _) = m.quotient(&n).unwrap();
        assert_eq!(q.socle_labels(), ms(&[(2, 1), (3, 1)]));
        let m3 = e11r_r3();
        let (s1, _) = m3.quotient(&m3.socle()).unwrap();
        assert_eq!(s1.dim(), 1);
        assert_eq!(s1.composition_factors(), ms(&[(1, 1)]));
    }
}
