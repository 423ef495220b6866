use crate::base_rings::{FieldElem, Poly};

/// `num / ∏_k l_k^{den_k}` over the fixed affine linear forms `l_k`.
/// Kept reduced by the owning [`super::CoverAlgebra`]: no `l_k` with
/// `den_k > 0` divides `num`, and zero has the trivial denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseFraction {
    pub(super) num: Poly<FieldElem>,
    pub(super) den: Vec<u32>,
}

impl BaseFraction {
    pub(super) fn from_parts(num: Poly<FieldElem>, den: Vec<u32>) -> Self {
        BaseFraction { num, den }
    }

    pub fn numerator(&self) -> &Poly<FieldElem> {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
