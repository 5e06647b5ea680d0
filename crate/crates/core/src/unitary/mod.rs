//! Classical group orders and predicted images, extension-matrix identities,
//! the zero-sum subsequence search, and unipotent radicals.

mod classical;
mod extension;
mod radical;
mod subsequence;

pub use classical::{
    classical_group_order, expected_image, sl2_generators, su_transvection_generators,
    ClassicalKind, ExpectedImage, ImageKind, TheoremHypotheses,
};
pub use extension::{
    model_gram, solve_norm_equation, verify_extension_identities, ExtensionMatrix,
    ExtensionReport,
};
pub use radical::{radical_transvections, Radical, RadicalSummary};
pub use subsequence::{
    find_degenerate_subsequence, SubsequenceCertificate, SubsequenceMethod, EXHAUSTIVE_LIMIT,
};
