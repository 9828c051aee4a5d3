//! Scalar electronic descriptors: occupation-weighted orbital energies,
//! per-group statistics and binding energies. Energies are in atomic units.

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::molgraph::Element;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DescriptorError {
    #[error("occupancies sum to zero or are missing")]
    DegenerateWeights,
    #[error("negative occupancy {0}")]
    NegativeOccupancy(f64),
    #[error("no reference energy for element {0}")]
    MissingReference(Element),
}

/// One localized orbital: occupancy and energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitalRecord {
    pub occupancy: f64,
    pub energy: f64,
}

/// Occupation-weighted mean orbital energy `sum(o_i e_i) / sum(o_i)`.
pub fn e_gcn0(records: &[OrbitalRecord]) -> Result<f64, DescriptorError> {
    let mut weight = 0.0;
    let mut acc = 0.0;
    for r in records {
        if r.occupancy < 0.0 {
            return Err(DescriptorError::NegativeOccupancy(r.occupancy));
        }
        weight += r.occupancy;
        acc += r.occupancy * r.energy;
    }
    if weight <= 0.0 {
        return Err(DescriptorError::DegenerateWeights);
    }
    Ok(acc / weight)
}

/// Running count/mean/second-moment accumulator. `merge` is associative,
/// so shards can be reduced in any grouping.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    /// Population standard deviation.
    pub fn std(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            libm::sqrt((self.m2 / self.count as f64).max(0.0))
        }
    }
}

/// Summary of one group.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupStat {
    pub count: u64,
    pub mean: f64,
    pub std: f64,
}

/// Count, mean and population standard deviation per group label.
pub fn group_stats<'a, I>(values: I) -> BTreeMap<String, GroupStat>
where
    I: IntoIterator<Item = (&'a str, f64)>,
{
    let mut acc: BTreeMap<String, Moments> = BTreeMap::new();
    for (label, x) in values {
        match acc.get_mut(label) {
            Some(m) => m.push(x),
            None => {
                let mut m = Moments::default();
                m.push(x);
                acc.insert(String::from(label), m);
            }
        }
    }
    acc.into_iter()
        .map(|(k, m)| {
            (
                k,
                GroupStat {
                    count: m.count,
                    mean: m.mean,
                    std: m.std(),
                },
            )
        })
        .collect()
}

/// Isolated-atom reference energies per element.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AtomRefTable {
    refs: BTreeMap<Element, f64>,
}

impl AtomRefTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Element, energy: f64) {
        self.refs.insert(e, energy);
    }

    pub fn get(&self, e: Element) -> Option<f64> {
        self.refs.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, f64)> + '_ {
        self.refs.iter().map(|(&e, &v)| (e, v))
    }
}

impl FromIterator<(Element, f64)> for AtomRefTable {
    fn from_iter<T: IntoIterator<Item = (Element, f64)>>(iter: T) -> Self {
        AtomRefTable {
            refs: iter.into_iter().collect(),
        }
    }
}

/// `E_tot - sum_i N_i E_i`.
pub fn binding_energy(
    total: f64,
    composition: &BTreeMap<Element, u32>,
    refs: &AtomRefTable,
) -> Result<f64, DescriptorError> {
    let mut atoms = 0.0;
    for (&e, &n) in composition {
        if n == 0 {
            continue;
        }
        let r = refs.get(e).ok_or(DescriptorError::MissingReference(e))?;
        atoms += f64::from(n) * r;
    }
    Ok(total - atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rec(o: f64, e: f64) -> OrbitalRecord {
        OrbitalRecord {
            occupancy: o,
            energy: e,
        }
    }

    #[test]
    fn weighted_means() {
        assert_eq!(e_gcn0(&[rec(2.0, -0.5)]).unwrap(), -0.5);
        assert_eq!(e_gcn0(&[rec(2.0, -1.0), rec(2.0, -3.0)]).unwrap(), -2.0);
        assert_eq!(e_gcn0(&[rec(2.0, -3.0), rec(1.0, 0.0)]).unwrap(), -2.0);
        assert_eq!(e_gcn0(&[rec(0.0, -3.0)]), Err(DescriptorError::DegenerateWeights));
        assert_eq!(e_gcn0(&[]), Err(DescriptorError::DegenerateWeights));
        assert!(e_gcn0(&[rec(-1.0, 1.0)]).is_err());
    }

    #[test]
    fn groups() {
        let s = group_stats(vec![("A", 1.0), ("A", 3.0), ("B", 5.0)]);
        assert_eq!(
            s["A"],
            GroupStat {
                count: 2,
                mean: 2.0,
                std: 1.0
            }
        );
        assert_eq!(s["B"].std, 0.0);
    }

    #[test]
    fn moments_merge_matches_sequential() {
        let xs = [1.5, -2.0, 3.25, 7.0, 0.0, -4.5, 2.0];
        let mut all = Moments::default();
        xs.iter().for_each(|&x| all.push(x));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..3].iter().for_each(|&x| a.push(x));
        xs[3..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        assert_eq!(a.count, all.count);
        assert!((a.mean - all.mean).abs() < 1e-12);
        assert!((a.std() - all.std()).abs() < 1e-12);
    }

    #[test]
    fn binding() {
        let refs: AtomRefTable = [(Element::C, -37.8), (Element::H, -0.5)].into_iter().collect();
        let comp: BTreeMap<Element, u32> = [(Element::C, 1), (Element::H, 4)].into_iter().collect();
        assert!((binding_energy(-5.0, &comp, &refs).unwrap() - 34.8).abs() < 1e-12);
        let lone: BTreeMap<Element, u32> = [(Element::C, 1)].into_iter().collect();
        assert_eq!(binding_energy(-37.8, &lone, &refs).unwrap(), 0.0);
        let nitro: BTreeMap<Element, u32> = [(Element::N, 1)].into_iter().collect();
        assert_eq!(
            binding_energy(-1.0, &nitro, &refs),
            Err(DescriptorError::MissingReference(Element::N))
        );
    }
}
