"""Capacity bound families, polytope certification, and DoF analysis
for the two-user Gaussian interference channel with a common message."""

from .bounds import (
    BoundCoeffs,
    GapDeltas,
    cap,
    coeff_deltas,
    deltas_within_limits,
    gap_deltas,
    inner_coeffs,
    outer_coeffs,
    power_split,
)
from .channel import ChannelGains, GdofExponents, SnrView
from .gaussian_mi import (
    CovarianceError,
    DecodeChainReport,
    DecodeStage,
    MiTerms,
    mi_discrepancy,
    mutual_info_terms,
    successive_decode_chain,
)
from .gdof import (
    GdofCoeffs,
    SymmetricGdofPoint,
    build_gdof_region,
    dof_curve_samples,
    dof_ic,
    dof_ic_lp,
    dof_icci,
    dof_icci_lp,
    dof_uplift,
    gdof_coeffs,
    multiplexing_gain,
    multiplexing_targets,
    per_user_dof_optimum,
    symmetric_region,
    write_curve_csv,
)
from .region import (
    GapCertificate,
    HalfSpace,
    RateRegion,
    RateTriple,
    VertexSet,
    build_inner,
    build_outer,
    containment_slack,
    contains,
    region_as_dict,
    vertices,
    within_bits,
    within_bits_slack,
)
from .sweep import (
    ChannelCheck,
    SweepConfig,
    SweepReport,
    check_channel,
    run_gap_sweep,
    sample_gains,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCoeffs",
    "ChannelCheck",
    "ChannelGains",
    "CovarianceError",
    "DecodeChainReport",
    "DecodeStage",
    "GapCertificate",
    "GapDeltas",
    "GdofCoeffs",
    "GdofExponents",
    "HalfSpace",
    "MiTerms",
    "RateRegion",
    "RateTriple",
    "SnrView",
    "SweepConfig",
    "SweepReport",
    "SymmetricGdofPoint",
    "VertexSet",
    "build_gdof_region",
    "build_inner",
    "build_outer",
    "cap",
    "check_channel",
    "coeff_deltas",
    "containment_slack",
    "contains",
    "deltas_within_limits",
    "dof_curve_samples",
    "dof_ic",
    "dof_ic_lp",
    "dof_icci",
    "dof_icci_lp",
    "dof_uplift",
    "gap_deltas",
    "gdof_coeffs",
    "inner_coeffs",
    "mi_discrepancy",
    "multiplexing_gain",
    "multiplexing_targets",
    "mutual_info_terms",
    "outer_coeffs",
    "per_user_dof_optimum",
    "power_split",
    "region_as_dict",
    "run_gap_sweep",
    "sample_gains",
    "successive_decode_chain",
    "symmetric_region",
    "vertices",
    "within_bits",
    "within_bits_slack",
    "write_curve_csv",
]
