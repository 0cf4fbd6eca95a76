"""Certificate-producing classification of operator symbols."""

from .cancellation import (
    CANCELING,
    DOES_NOT_SPAN,
    FAILS,
    FAILS_SAMPLED,
    HOLDS,
    NOT_CANCELING,
    NOT_CANCELING_SAMPLED,
    SPANS,
    CancelingVerdict,
    IntersectionResult,
    PartialCancelingVerdict,
    SpanningVerdict,
    check_bb_spanning,
    check_canceling,
    check_partial_canceling,
    image_intersection,
    membership_residual,
    sample_directions,
    verify_canceling,
    verify_spanning,
)
from .cocancellation import (
    COCANCELING,
    NOT_COCANCELING,
    CocancelingVerdict,
    check_cocanceling,
    joint_kernel,
    left_inverses,
    verify_cocanceling,
)
from .ellipticity import (
    ELLIPTIC,
    NOT_ELLIPTIC,
    UNDECIDED,
    CertifiedBox,
    EllipticityVerdict,
    FaceBox,
    check_ellipticity,
    verify_ellipticity,
)

__all__ = [
    "CANCELING",
    "NOT_CANCELING",
    "NOT_CANCELING_SAMPLED",
    "SPANS",
    "DOES_NOT_SPAN",
    "HOLDS",
    "FAILS",
    "FAILS_SAMPLED",
    "COCANCELING",
    "NOT_COCANCELING",
    "ELLIPTIC",
    "NOT_ELLIPTIC",
    "UNDECIDED",
    "CancelingVerdict",
    "IntersectionResult",
    "PartialCancelingVerdict",
    "SpanningVerdict",
    "CocancelingVerdict",
    "EllipticityVerdict",
    "CertifiedBox",
    "FaceBox",
    "check_bb_spanning",
    "check_canceling",
    "check_cocanceling",
    "check_ellipticity",
    "check_partial_canceling",
    "image_intersection",
    "joint_kernel",
    "left_inverses",
    "membership_residual",
    "sample_directions",
    "verify_canceling",
    "verify_cocanceling",
    "verify_ellipticity",
    "verify_spanning",
]
