"""Reduction behaviour over p-adic fields (p >= 5) for elliptic curves,
Kummer surfaces of products, and K3 surfaces with a Shioda-Inose structure
of product type."""

__version__ = "0.1.0"

from .padic import (
    DEFAULT_PRECISION,
    ExtensionDescriptor,
    NewtonPolygon,
    OutOfScopeError,
    PadicNumber,
    PrecisionExhausted,
    hensel_root,
    newton_polygon,
    padic_arith,
    run_with_precision,
    sqrt_class,
)
from .localfield import QpContext, QuadContext, QuadElement, QuadraticField
from .ramification import splitting_ramification_cubic
from .kodaira import (
    KodairaType,
    LocalInvariants,
    classify_from_invariants,
    euler_number,
    recognize_config,
    standard_config,
)
from .elliptic import (
    ReductionReport,
    SingularFiber,
    WeierstrassCurve,
    minimal_model,
    quadratic_twist,
    reduction_type,
    two_torsion_ramification,
)
from .pencil import (
    INFINITY,
    SIPencil,
    SurfacePencil,
    euler_sum,
    fiber_at,
    recognize_and_normalize_si,
)
from .sandwich import (
    InvolutionData,
    JPair,
    RamificationCertificate,
    SIVerdict,
    inose_pencil,
    involution_fixed_fibers,
    kummer_transform,
    ramification_index,
    recover_j_pair,
    si_verdict,
)
from .kummer import (
    CurveConfig,
    DivisorClass,
    KummerDecision,
    kummer_config,
    kummer_reduction_decision,
    pair,
    validate_fibration,
)
from .bounds import gl_order, si_composite_bound, torsion_bound

__all__ = [name for name in dir() if not name.startswith("_")]
