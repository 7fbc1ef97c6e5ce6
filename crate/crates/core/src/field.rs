//! Dense row-major field arrays.

/// 2D array indexed `(i, j)`, `j` contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2 {
    ni: usize,
    nj: usize,
    data: Vec<f64>,
}

impl Field2 {
    pub fn zeros(ni: usize, nj: usize) -> Self {
        Field2 {
            ni,
            nj,
            data: vec![0.0; ni * nj],
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.ni, self.nj)
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.nj + j
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.nj + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.nj + j] = v;
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.nj + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.nj..(i + 1) * self.nj]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn sum_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// First non-finite entry, if any.
    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|v| !v.is_finite())
            .map(|p| (p / self.nj, p % self.nj))
    }
}

/// 3D array indexed `(i, j, k)`, `k` contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct Field3 {
    ni: usize,
    nj: usize,
    nk: usize,
    data: Vec<f64>,
}

impl Field3 {
    pub fn zeros(ni: usize, nj: usize, nk: usize) -> Self {
        Field3 {
            ni,
            nj,
            nk,
            data: vec![0.0; ni * nj * nk],
        }
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.ni, self.nj, self.nk)
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.nj + j) * self.nk + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.nj + j) * self.nk + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let n = self.idx(i, j, k);
        self.data[n] = v;
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize, k: usize) -> &mut f64 {
        let n = self.idx(i, j, k);
        &mut self.data[n]
    }

    /// Number of elements in one `i` plane.
    pub fn plane_len(&self) -> usize {
        self.nj * self.nk
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn sum_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    pub fn first_non_finite(&self) -> Option<(usize, usize, usize)> {
        self.data.iter().position(|v| !v.is_finite()).map(|p| {
            let plane = self.nj * self.nk;
            (p / plane, (p % plane) / self.nk, p % self.nk)
        })
    }
}
