//! Depth-first enumeration of integer points of `{x in box : A x = b}` with
//! interval pruning on the remaining equality rows.

use super::IntError;

/// Integer system with `i64` data; `rows` are the equality rows.
pub(crate) struct SmallSystem {
    pub rows: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
}

struct Search<'a> {
    sys: &'a SmallSystem,
    upper: &'a [i64],
    /// `suffix_min[i][k]` = min of `sum_{j >= k} a_ij x_j` over the box.
    suffix_min: Vec<Vec<i128>>,
    suffix_max: Vec<Vec<i128>>,
    nodes: u64,
    cap: u64,
    out: Vec<Vec<i64>>,
}

pub(crate) fn enumerate(sys: &SmallSystem, upper: &[i64], cap: u64) -> Result<(Vec<Vec<i64>>, u64), IntError> {
    let n = upper.len();
    if upper.iter().any(|&u| u < 0) {
        return Ok((Vec::new(), 0));
    }
    let mut suffix_min = Vec::with_capacity(sys.rows.len());
    let mut suffix_max = Vec::with_capacity(sys.rows.len());
    for row in &sys.rows {
        let mut lo = vec![0i128; n + 1];
        let mut hi = vec![0i128; n + 1];
        for k in (0..n).rev() {
            let t = i128::from(row[k]) * i128::from(upper[k]);
            lo[k] = lo[k + 1] + t.min(0);
            hi[k] = hi[k + 1] + t.max(0);
        }
        suffix_min.push(lo);
        suffix_max.push(hi);
    }
    let mut s = Search {
        sys,
        upper,
        suffix_min,
        suffix_max,
        nodes: 0,
        cap,
        out: Vec::new(),
    };
    let residual: Vec<i128> = sys.rhs.iter().map(|&b| i128::from(b)).collect();
    let mut point = vec![0i64; n];
    s.recurse(0, &residual, &mut point)?;
    Ok((s.out, s.nodes))
}

impl Search<'_> {
    fn feasible_suffix(&self, k: usize, residual: &[i128]) -> bool {
        residual
            .iter()
            .enumerate()
            .all(|(i, &r)| self.suffix_min[i][k] <= r && r <= self.suffix_max[i][k])
    }

    fn recurse(&mut self, k: usize, residual: &[i128], point: &mut [i64]) -> Result<(), IntError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(IntError::BudgetExceeded(format!(
                "enumeration exceeded {} nodes",
                self.cap
            )));
        }
        let n = point.len();
        if k == n {
            if residual.iter().all(|&r| r == 0) {
                self.out.push(point.to_vec());
            }
            return Ok(());
        }
        if !self.feasible_suffix(k, residual) {
            return Ok(());
        }
        let mut next = residual.to_vec();
        for v in 0..=self.upper[k] {
            for (i, row) in self.sys.rows.iter().enumerate() {
                next[i] = residual[i] - i128::from(row[k]) * i128::from(v);
            }
            if !self.feasible_suffix(k + 1, &next) {
                continue;
            }
            point[k] = v;
            self.recurse(k + 1, &next, point)?;
        }
        point[k] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_agreement() {
        let sys = SmallSystem {
            rows: vec![vec![1, 2, -1, 3], vec![0, 1, 1, -1]],
            rhs: vec![5, 2],
        };
        let upper = [6, 4, 5, 3];
        let (pts, _) = enumerate(&sys, &upper, 1_000_000).unwrap();
        let mut brute = Vec::new();
        for a in 0..=6 {
            for b in 0..=4 {
                for c in 0..=5 {
                    for d in 0..=3 {
                        let x = [a, b, c, d];
                        let ok = sys
                            .rows
                            .iter()
                            .zip(&sys.rhs)
                            .all(|(r, &rhs)| r.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() == rhs);
                        if ok {
                            brute.push(x.to_vec());
                        }
                    }
                }
            }
        }
        assert_eq!(pts, brute);
    }

    #[test]
    fn cap_is_enforced() {
        let sys = SmallSystem {
            rows: vec![vec![1, 1, 1]],
            rhs: vec![30],
        };
        assert!(enumerate(&sys, &[30, 30, 30], 10).is_err());
    }
}
