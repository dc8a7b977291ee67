//! Integer row reduction: Hermite and Smith forms over ℤ.
//!
//! Matrices are dense `Vec<Vec<i128>>` in row-major order. Lattices are
//! generated by the *rows* of a matrix throughout.

pub type IMat = Vec<Vec<i128>>;

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn row_axpy(m: &mut IMat, dst: usize, src: usize, q: i128) {
    if q == 0 {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x += q * *y;
    }
}

fn col_axpy(m: &mut IMat, dst: usize, src: usize, q: i128) {
    if q == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] += q * row[src];
    }
}

fn col_swap(m: &mut IMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Row Hermite form `h = u · a`.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IMat,
    pub u: IMat,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows of `h`.
    pub pivots: Vec<usize>,
}

pub fn hermite(a: &IMat, ncols: usize) -> Hermite {
    let m = a.len();
    let mut h = a.clone();
    let mut u = identity(m);
    let mut pivots = Vec::new();
    let mut p = 0;
    for c in 0..ncols {
        if p == m {
            break;
        }
        loop {
            // smallest nonzero |entry| among rows p.. in column c
            let best = (p..m)
                .filter(|&i| h[i][c] != 0)
                .min_by_key(|&i| h[i][c].abs());
            let Some(b) = best else { break };
            h.swap(p, b);
            u.swap(p, b);
            let mut done = true;
            for i in p + 1..m {
                if h[i][c] != 0 {
                    let q = h[i][c].div_euclid(h[p][c]);
                    row_axpy(&mut h, i, p, -q);
                    row_axpy(&mut u, i, p, -q);
                    if h[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[p][c] == 0 {
            continue;
        }
        if h[p][c] < 0 {
            h[p].iter_mut().for_each(|x| *x = -*x);
            u[p].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..p {
            let q = h[i][c].div_euclid(h[p][c]);
            row_axpy(&mut h, i, p, -q);
            row_axpy(&mut u, i, p, -q);
        }
        pivots.push(c);
        p += 1;
    }
    Hermite {
        h,
        u,
        rank: p,
        pivots,
    }
}

/// Rows `x` with `x · a = 0`, as a basis of the left kernel.
pub fn left_kernel(a: &IMat, ncols: usize) -> IMat {
    let hf = hermite(a, ncols);
    hf.u[hf.rank..].to_vec()
}

pub fn rank(a: &IMat, ncols: usize) -> usize {
    hermite(a, ncols).rank
}

impl Hermite {
    /// Integer `x` with `x · a = target`, if the target lies in the row lattice.
    pub fn solve(&self, target: &[i128]) -> Option<Vec<i128>> {
        let mut rem = target.to_vec();
        let mut y = vec![0i128; self.rank];
        for (i, &c) in self.pivots.iter().enumerate() {
            if rem[c] == 0 {
                continue;
            }
            let piv = self.h[i][c];
            if rem[c] % piv != 0 {
                return None;
            }
            let q = rem[c] / piv;
            y[i] = q;
            for (r, hv) in rem.iter_mut().zip(self.h[i].iter()) {
                *r -= q * hv;
            }
        }
        if rem.iter().any(|&v| v != 0) {
            return None;
        }
        let m = self.u.len();
        let mut x = vec![0i128; m];
        for (i, &yi) in y.iter().enumerate() {
            if yi != 0 {
                for (xj, uj) in x.iter_mut().zip(self.u[i].iter()) {
                    *xj += yi * uj;
                }
            }
        }
        Some(x)
    }

    pub fn contains(&self, target: &[i128]) -> bool {
        self.solve(target).is_some()
    }
}

/// Smith form `u · a · v = diag(d_1, …, d_rank, 0, …)` with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub u: IMat,
    pub v: IMat,
    pub v_inv: IMat,
    pub nrows: usize,
    pub ncols: usize,
}

pub fn smith(a: &IMat, ncols: usize) -> Smith {
    let m = a.len();
    let n = ncols;
    let mut s = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut vi = identity(n);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s[i][j] != 0 && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap(t, pi);
        u.swap(t, pi);
        col_swap(&mut s, t, pj);
        col_swap(&mut v, t, pj);
        vi.swap(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[i][t] != 0 {
                    let q = s[i][t].div_euclid(s[t][t]);
                    row_axpy(&mut s, i, t, -q);
                    row_axpy(&mut u, i, t, -q);
                    if s[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if s[t][j] != 0 {
                    let q = s[t][j].div_euclid(s[t][t]);
                    col_axpy(&mut s, j, t, -q);
                    col_axpy(&mut v, j, t, -q);
                    row_axpy(&mut vi, t, j, q);
                    if s[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest remaining entry of row/column t onto the pivot
                let mut bi = None;
                for i in t + 1..m {
                    if s[i][t] != 0 && s[i][t].abs() < s[t][t].abs() {
                        bi = Some(i);
                    }
                }
                if let Some(i) = bi {
                    s.swap(t, i);
                    u.swap(t, i);
                    continue;
                }
                let mut bj = None;
                for j in t + 1..n {
                    if s[t][j] != 0 && s[t][j].abs() < s[t][t].abs() {
                        bj = Some(j);
                    }
                }
                if let Some(j) = bj {
                    col_swap(&mut s, t, j);
                    col_swap(&mut v, t, j);
                    vi.swap(t, j);
                }
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| s[i][j] % s[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    row_axpy(&mut s, t, i, 1);
                    row_axpy(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if s[t][t] < 0 {
            s[t].iter_mut().for_each(|x| *x = -*x);
            u[t].iter_mut().for_each(|x| *x = -*x);
        }
        diag.push(s[t][t]);
        t += 1;
    }
    Smith {
        diag,
        u,
        v,
        v_inv: vi,
        nrows: m,
        ncols: n,
    }
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Coordinates of a row vector `x` against the basis in which the row
    /// lattice is diagonal: `x · v`.
    pub fn coords(&self, x: &[i128]) -> Vec<i128> {
        mat_vec_left(x, &self.v, self.ncols)
    }

    pub fn from_coords(&self, y: &[i128]) -> Vec<i128> {
        mat_vec_left(y, &self.v_inv, self.ncols)
    }

    /// Integer `z` with `z · a = x`, if `x` lies in the row lattice of `a`.
    pub fn solve(&self, x: &[i128]) -> Option<Vec<i128>> {
        let y = self.coords(x);
        let mut w = vec![0i128; self.nrows];
        for (i, yi) in y.iter().enumerate() {
            if i < self.diag.len() {
                if yi % self.diag[i] != 0 {
                    return None;
                }
                w[i] = yi / self.diag[i];
            } else if *yi != 0 {
                return None;
            }
        }
        Some(mat_vec_left(&w, &self.u, self.nrows))
    }
}

/// Row vector times matrix.
pub fn mat_vec_left(x: &[i128], a: &IMat, ncols: usize) -> Vec<i128> {
    let mut out = vec![0i128; ncols];
    for (xi, row) in x.iter().zip(a.iter()) {
        if *xi != 0 {
            for (o, r) in out.iter_mut().zip(row.iter()) {
                *o += xi * r;
            }
        }
    }
    out
}

pub fn mat_mul(a: &IMat, b: &IMat, ncols: usize) -> IMat {
    a.iter().map(|row| mat_vec_left(row, b, ncols)).collect()
}
