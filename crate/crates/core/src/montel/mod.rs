//! Desk-scale Montel extraction: finite families stand in for sequences and
//! every conclusion comes back as a certificate (achieved moduli, diameters,
//! norm bounds) rather than an existence claim.

mod compact;
mod dense;
mod diagonal;
mod dirichlet;
mod family;

pub use compact::{box_distance, build_eps_net, CompactBox, DiscLattice, EpsNet, DEFAULT_NET_CAP};
pub use dense::{dense_enumerate, dense_enumerate_in, dyadic};
pub use diagonal::{
    certify_uniform_cauchy, coefficientwise_median, diagonal_extract, limit_norm_check,
    montel_extract, tail_half, AuditConfig, MontelConfig, ToleranceSchedule,
};
pub use dirichlet::{dirichlet_montel, minimal_tail_cut, DirichletMontelConfig};
pub use family::{
    DirichletCertificate, ExtractionReport, Holomorphic, LimitCandidate, Probe, StageCertificate,
};
