use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use super::Cell;

/// An axis-aligned integer box whose side intervals have length 0 or 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    lo: SmallVec<[i64; 4]>,
    /// bit `i` set means the `i`-th interval is `[lo_i, lo_i + 1]`
    spans: u32,
}

impl Cube {
    pub fn new(lo: &[i64], spans: &[bool]) -> Self {
        assert_eq!(lo.len(), spans.len());
        assert!(lo.len() <= 32);
        let mut mask = 0u32;
        for (i, s) in spans.iter().enumerate() {
            if *s {
                mask |= 1 << i;
            }
        }
        Cube {
            lo: lo.iter().copied().collect(),
            spans: mask,
        }
    }

    pub fn point(p: &[i64]) -> Self {
        Cube {
            lo: p.iter().copied().collect(),
            spans: 0,
        }
    }

    /// Builds a box from `[lo, hi]` intervals; `hi - lo` must be 0 or 1.
    pub fn from_intervals(iv: &[(i64, i64)]) -> Option<Self> {
        let mut lo = SmallVec::new();
        let mut mask = 0u32;
        for (i, &(a, b)) in iv.iter().enumerate() {
            match b - a {
                0 => {}
                1 => mask |= 1 << i,
                _ => return None,
            }
            lo.push(a);
        }
        Some(Cube { lo, spans: mask })
    }

    pub fn ambient_dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn spans(&self, axis: usize) -> bool {
        self.spans & (1 << axis) != 0
    }

    pub fn intervals(&self) -> Vec<(i64, i64)> {
        (0..self.lo.len())
            .map(|i| (self.lo[i], self.lo[i] + self.spans(i) as i64))
            .collect()
    }

    /// The face obtained by pinning `axis` at `lo` (`upper == false`) or `lo + 1`.
    pub fn pin(&self, axis: usize, upper: bool) -> Cube {
        debug_assert!(self.spans(axis));
        let mut c = self.clone();
        c.spans &= !(1 << axis);
        if upper {
            c.lo[axis] += 1;
        }
        c
    }

    /// Releases a pinned axis, extending the box in the positive (`forward`)
    /// or negative direction.
    pub fn extend(&self, axis: usize, forward: bool) -> Cube {
        debug_assert!(!self.spans(axis));
        let mut c = self.clone();
        c.spans |= 1 << axis;
        if !forward {
            c.lo[axis] -= 1;
        }
        c
    }

    /// Corner points of the box.
    pub fn corners(&self) -> Vec<Vec<i64>> {
        let axes: Vec<usize> = (0..self.lo.len()).filter(|&i| self.spans(i)).collect();
        (0u32..(1 << axes.len()))
            .map(|m| {
                let mut p: Vec<i64> = self.lo.to_vec();
                for (k, &a) in axes.iter().enumerate() {
                    if m & (1 << k) != 0 {
                        p[a] += 1;
                    }
                }
                p
            })
            .collect()
    }
}

impl Cell for Cube {
    fn dim(&self) -> usize {
        self.spans.count_ones() as usize
    }

    fn boundary(&self) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 0..self.lo.len() {
            if self.spans(i) {
                out.push(self.pin(i, false));
                out.push(self.pin(i, true));
            }
        }
        out
    }

    fn is_face_of(&self, other: &Self) -> bool {
        if self.lo.len() != other.lo.len() {
            return false;
        }
        (0..self.lo.len()).all(|i| {
            let (a, b) = (self.lo[i], self.lo[i] + self.spans(i) as i64);
            let (c, d) = (other.lo[i], other.lo[i] + other.spans(i) as i64);
            c <= a && b <= d
        })
    }

    fn all_faces(&self) -> Vec<Self> {
        let axes: Vec<usize> = (0..self.lo.len()).filter(|&i| self.spans(i)).collect();
        let mut out = Vec::new();
        // each spanning axis: 0 = lo, 1 = hi, 2 = keep
        let total = 3usize.pow(axes.len() as u32);
        for code in 0..total {
            let mut c = self.clone();
            let mut k = code;
            for &a in &axes {
                match k % 3 {
                    0 => c = c.pin(a, false),
                    1 => c = c.pin(a, true),
                    _ => {}
                }
                k /= 3;
            }
            out.push(c);
        }
        out
    }

    fn vertex_cells(&self) -> Vec<Self> {
        self.corners().iter().map(|p| Cube::point(p)).collect()
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.intervals().into_iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            if a == b {
                write!(f, "[{}]", a)?;
            } else {
                write!(f, "[{},{}]", a, b)?;
            }
        }
        Ok(())
    }
}
