use crate::error::{param, Error, Result};

/// Fixed total-magnetization sector.
///
/// Basis states are encoded as base-(2s+1) integers with digit `v` holding
/// the local state of vertex `v`; digit `d` means `2 s^z = 2d − 2s`. For
/// spin-1/2 this is one bit per vertex, set for spin up. `m` is the total
/// `Σ_v 2 s^z_v`, i.e. the magnetization in Pauli units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorBasis {
    pub l: usize,
    pub two_s: u8,
    pub m: i64,
    states: Vec<u64>,
}

impl SectorBasis {
    pub fn new(l: usize, two_s: u8, m: i64) -> Result<Self> {
        let two_s_i = i64::from(two_s);
        let span = l as i64 * two_s_i;
        if m.abs() > span || (m + span) % 2 != 0 {
            return param(format!(
                "magnetization {m} not attainable for L = {l}, s = {two_s}/2"
            ));
        }
        let digit_sum = ((m + span) / 2) as usize;
        let base = u64::from(two_s) + 1;
        if (base as f64).powi(l as i32) > u64::MAX as f64 / 2.0 {
            return Err(Error::Capacity {
                what: "basis encoding",
                needed: l as u64,
                cap: 63,
            });
        }
        let mut states = Vec::new();
        if two_s == 1 {
            if digit_sum == 0 {
                states.push(0);
            } else {
                let mut c: u64 = (1u64 << digit_sum) - 1;
                let limit = 1u64 << l;
                while c < limit {
                    states.push(c);
                    let t = c & c.wrapping_neg();
                    let r = c + t;
                    c = (((r ^ c) >> 2) / t) | r;
                }
            }
        } else {
            let mut place = vec![1u64; l];
            for v in 1..l {
                place[v] = place[v - 1] * base;
            }
            enumerate_digits(l, two_s as usize, digit_sum, 0, &place, &mut states);
        }
        Ok(SectorBasis {
            l,
            two_s,
            m,
            states,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.states.binary_search(&code).ok()
    }

    /// All attainable magnetizations, ascending.
    pub fn magnetizations(l: usize, two_s: u8) -> Vec<i64> {
        let span = l as i64 * i64::from(two_s);
        (0..=l * two_s as usize).map(|k| -span + 2 * k as i64).collect()
    }
}

/// Emit codes whose digits sum to `remaining`, filling vertices from the most
/// significant down so the output is ascending.
fn enumerate_digits(
    vertices_left: usize,
    max_digit: usize,
    remaining: usize,
    prefix: u64,
    place: &[u64],
    out: &mut Vec<u64>,
) {
    if vertices_left == 0 {
        if remaining == 0 {
            out.push(prefix);
        }
        return;
    }
    let v = vertices_left - 1;
    let capacity_below = v * max_digit;
    let lo = remaining.saturating_sub(capacity_below);
    let hi = remaining.min(max_digit);
    for d in lo..=hi {
        enumerate_digits(v, max_digit, remaining - d, prefix + d as u64 * place[v], place, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn examples() {
        assert_eq!(SectorBasis::new(4, 1, 0).unwrap().len(), 6);
        let up = SectorBasis::new(4, 1, 4).unwrap();
        assert_eq!(up.states(), &[0b1111]);
        assert_eq!(SectorBasis::new(3, 2, 0).unwrap().len(), 7);
        assert!(SectorBasis::new(4, 1, 1).is_err());
        assert!(SectorBasis::new(4, 1, 6).is_err());
    }

    #[test]
    fn counts_and_order() {
        for l in 1..=12 {
            let mut total = 0;
            for m in SectorBasis::magnetizations(l, 1) {
                let b = SectorBasis::new(l, 1, m).unwrap();
                assert_eq!(b.len(), binom(l, (l as i64 + m) as usize / 2));
                assert!(b.states().windows(2).all(|w| w[0] < w[1]));
                total += b.len();
            }
            assert_eq!(total, 1 << l);
        }
        // spin-1 and spin-3/2: sectors partition the full space, sorted
        for two_s in [2u8, 3] {
            let l = 4;
            let base = two_s as u64 + 1;
            let mut all: Vec<u64> = Vec::new();
            for m in SectorBasis::magnetizations(l, two_s) {
                let b = SectorBasis::new(l, two_s, m).unwrap();
                assert!(b.states().windows(2).all(|w| w[0] < w[1]));
                for &c in b.states() {
                    let mut x = c;
                    let mut twice_sz = 0i64;
                    for _ in 0..l {
                        twice_sz += 2 * (x % base) as i64 - two_s as i64;
                        x /= base;
                    }
                    assert_eq!(twice_sz, m);
                }
                all.extend_from_slice(b.states());
            }
            all.sort_unstable();
            assert_eq!(all, (0..base.pow(l as u32)).collect::<Vec<_>>());
        }
    }
}
