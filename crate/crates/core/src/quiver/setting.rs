use std::sync::Arc;

use super::CartanMatrix;
use crate::error::{Error, Result};
use crate::scalars::{cyclotomic_field, ell, CycField, ResidueVector};

/// The pair (C, n): Cartan data, the root-of-unity order, and derived constants.
#[derive(Debug)]
pub struct Setting {
    cartan: CartanMatrix,
    n: u32,
    ell: u32,
    field: &'static CycField,
    columns: Vec<ResidueVector>,
}

impl Setting {
    pub fn new(cartan: CartanMatrix, n: u32) -> Result<Arc<Setting>> {
        Setting::with_override(cartan, n, false)
    }

    /// `allow_small_n` admits 3 <= n < 5 for experimentation; nothing is
    /// claimed about the results outside n >= 5.
    pub fn with_override(cartan: CartanMatrix, n: u32, allow_small_n: bool) -> Result<Arc<Setting>> {
        if n < 5 && !(allow_small_n && n >= 3) {
            return Err(Error::UnsupportedParameter(format!("n = {n}: the construction requires n ≥ 5")));
        }
        let columns = (0..cartan.rank())
            .map(|j| ResidueVector::new(n, cartan.column(j)))
            .collect();
        Ok(Arc::new(Setting { ell: ell(n), field: cyclotomic_field(n), columns, cartan, n }))
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Rank t of the Cartan matrix.
    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    /// Column c^i (0-based i) as a residue vector.
    pub fn column(&self, i: usize) -> &ResidueVector {
        &self.columns[i]
    }

    pub fn vertex_count(&self) -> usize {
        (self.n as usize).pow(self.rank() as u32)
    }

    pub fn vertex_id(&self, x: &ResidueVector) -> u32 {
        x.index() as u32
    }

    pub fn vertex(&self, id: u32) -> ResidueVector {
        ResidueVector::from_index(self.n, self.rank(), id as usize)
    }

    pub fn vertices(&self) -> impl Iterator<Item = ResidueVector> {
        ResidueVector::all(self.n, self.rank())
    }

    /// Default degree cap 2·N₊·(ℓ−1) + t·(n−1).
    pub fn default_cap(&self) -> usize {
        let np = self.cartan.positive_root_count();
        2 * np * (self.ell as usize - 1) + self.rank() * (self.n as usize - 1)
    }

    /// n^t · ℓ^(2N₊), the expected PBW dimension of the restricted algebras.
    pub fn pbw_dimension(&self) -> u128 {
        let np = self.cartan.positive_root_count() as u32;
        (self.n as u128).pow(self.rank() as u32) * (self.ell as u128).pow(2 * np)
    }
}
