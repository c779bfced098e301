use crate::ff_linalg::{PrimeField, PrimeFieldMatrix};
use crate::graded::GradedQuotientRing;

/// A graded module over k[x_1..x_n] given by its pieces M_0, M_1, … and the
/// matrices of multiplication by each variable.
///
/// Pieces are known through `top()`. If `complete` is set the module
/// vanishes above that degree; otherwise higher pieces are unknown.
#[derive(Clone, Debug)]
pub struct ModulePieces {
    field: PrimeField,
    n: usize,
    dims: Vec<usize>,
    /// `action[d][k]`: x_k as a dims[d+1] × dims[d] matrix.
    action: Vec<Vec<PrimeFieldMatrix>>,
    complete: bool,
}

impl ModulePieces {
    /// Assemble from explicit data; `action` must have one entry per degree
    /// below the top, each holding n matrices of the right shapes.
    pub fn new(
        field: PrimeField,
        n: usize,
        dims: Vec<usize>,
        action: Vec<Vec<PrimeFieldMatrix>>,
        complete: bool,
    ) -> Self {
        assert!(!dims.is_empty(), "module needs at least one degree");
        assert_eq!(action.len(), dims.len() - 1, "one action per degree below the top");
        for (d, mats) in action.iter().enumerate() {
            assert_eq!(mats.len(), n);
            for m in mats {
                assert_eq!((m.rows(), m.cols()), (dims[d + 1], dims[d]));
            }
        }
        ModulePieces { field, n, dims, action, complete }
    }

    /// The ring as a module over its polynomial ring.
    pub fn from_ring(ring: &GradedQuotientRing) -> Self {
        let mut top = ring.cutoff();
        if ring.vanishes_at_cutoff() {
            top = ring.top_degree().unwrap_or(0);
        }
        Self::from_ring_through(ring, top)
    }

    /// Pieces of the ring through degree `top` (at most the cutoff).
    pub fn from_ring_through(ring: &GradedQuotientRing, top: usize) -> Self {
        let top = top.min(ring.cutoff());
        let dims: Vec<usize> = (0..=top).map(|d| ring.h(d)).collect();
        let action = (0..top).map(|d| ring.var_matrices(d).to_vec()).collect();
        let complete = ring.vanishes_at_cutoff() && (top + 1..=ring.cutoff()).all(|d| ring.h(d) == 0);
        ModulePieces { field: ring.field(), n: ring.n(), dims, action, complete }
    }

    /// The residue field k = S/m.
    pub fn residue_field(field: PrimeField, n: usize) -> Self {
        ModulePieces { field, n, dims: vec![1], action: Vec::new(), complete: true }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest degree whose piece is known.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// dim M_d, or None if the piece is unknown.
    pub fn dim(&self, d: usize) -> Option<usize> {
        match self.dims.get(d) {
            Some(&x) => Some(x),
            None if self.complete => Some(0),
            None => None,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// x_k : M_d → M_{d+1}; None when M_{d+1} is zero or unknown.
    pub fn action(&self, d: usize, k: usize) -> Option<&PrimeFieldMatrix> {
        self.action.get(d).map(|m| &m[k])
    }

    /// Drop everything above degree `top`.
    pub fn truncate(&self, top: usize) -> Self {
        if top >= self.top() {
            return self.clone();
        }
        ModulePieces {
            field: self.field,
            n: self.n,
            dims: self.dims[..=top].to_vec(),
            action: self.action[..top].to_vec(),
            complete: false,
        }
    }
}
