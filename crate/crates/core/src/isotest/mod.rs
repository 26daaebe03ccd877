//! Isomorphism tests: a gallery of hard pairs, WL-style color refinement,
//! exact isospectrality and method-by-method distinguishability reports.

mod distinguish;
mod gallery;
mod search;
mod spectral;
mod wl;

pub use distinguish::{distinguish, DistinguishParams, DistinguishReport, Method, MethodResult, Verdict};
pub use gallery::{
    cycle, fig1, fig5a, fig5b, gallery, path, rook4x4, shrikhande, star, two_triangles, GalleryObject, GALLERY_NAMES,
};
pub use search::{
    all_order_isospectral_pairs, graphs_with_l0_poly, IsospectralPair, SEARCH_CANDIDATE_CAP, SEARCH_NODE_CAP,
};
pub use spectral::{isospectral, laplacian_char_poly, IsospectralVerdict};
pub use wl::{compare_fwl2, compare_wl1, fwl2, wl1, ColorHistogram, RefinementComparison, WlInit, FWL2_NODE_CAP};
