"""Exact analysis of the shift-invariance equation X + Y ~ X on finite abelian groups."""

from .analysis import (
    CircleClassification,
    FixedPointSpace,
    InvarianceAnalysis,
    LambdaSet,
    annihilator,
    circle_classify,
    embed_circle_support,
    fixed_point_space,
    haar_forced,
    independence_check,
    invariance_subgroup,
    is_fixed_point,
    lambda_set,
    power_invariance,
    stabilizer,
    verify_converse,
    verify_forward,
)
from .errors import (
    PreconditionFailed,
    ScaleExceeded,
    ShiftInvError,
    SpecMismatchError,
    TheoremViolation,
    ValidationError,
)
from .groups import (
    Character,
    CircleRational,
    GroupElement,
    GroupSpec,
    Subgroup,
    add,
    character_kernel,
    circle_add,
    coset_partition,
    generated_subgroup,
    pairing_phase,
    subgroup_intersection,
)
from .measure import (
    CharTable,
    Distribution,
    FloatTable,
    char_hat_one_exact,
    char_table,
    convolution_power,
    convolve,
    dirac,
    inverse_fourier,
    shift,
    tv_distance,
    uniform,
)

__version__ = "0.1.0"
