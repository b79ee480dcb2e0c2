//! Group-ring ideals, the quotient rings `Λ_d = Zπ/<Φ_d(σ)>`, the verified devissage towers,
//! the ψ-isomorphism, the idempotent splitting of `Λ_d`, Reiner decompositions over `C_2`
//! and the building blocks for `C_{q^f} x D_m`.

mod ring;
mod split;
mod tower;

pub use ring::{
    cyclic_poly, group_ring_mul, lambda_ring, sigma_of, sigma_to_group_ring, sigma_to_matrix, tilde_phi,
    QuotientRing, TildePhi, TwoSidedIdeal,
};
pub use split::{
    cyclotomic_integers, idempotent_split, lemma45_decomposition, lemma45_verify, reiner_c2_decompose,
    theorem46_sequence, ReinerDecomposition, SplitReport, Theorem46Report,
};
pub use tower::{psi_isomorphism, verify_tower, IsoVerdict, PsiReport, TowerReport, TowerStep};
