"""fusionkit: characters, weight systems and level-k fusion rings of simple
Lie algebras, with machine verification of the character identities that tie
them together."""

from .algebra import (
    AlgebraSpec,
    SignedDominant,
    build_algebra,
    cartan_determinant,
    cartan_inverse,
    comarks,
    dominant_conjugate,
    inner_product,
    positive_roots,
    reflect_to_dominant,
    simple_reflection,
    weyl_elements,
    weyl_orbit,
)
from .characters import (
    GenericPoint,
    VarietyPoint,
    VirtualChar,
    char_su2_closed,
    eval_char,
    eval_char_trace,
    eval_D,
    virtual_normalize,
)
from .csmodel import (
    FourierOperator,
    GaussianModel,
    LatticeOperator,
    build_model,
    character_as_inner_product,
    check_clock_commutator,
    check_s_conjugation,
    clock_op,
    fusion_from_operators,
    primary_state,
    s_operator,
    shift_op,
    vacuum_state,
    wilson_operator,
)
from .errors import (
    CapExceeded,
    Caps,
    DEFAULT_CAPS,
    FusionkitError,
    OracleMismatchError,
    SingularPointError,
    caps_from_env,
)
from .fusion import (
    fuse_level_k,
    is_integrable,
    level_k_weights,
    level_pairing,
    tensor_decompose,
    verlinde_N,
    verlinde_table,
)
from .identity import (
    VerificationReport,
    conjugacy_square_check,
    dim_bound,
    lhs_char_sum,
    parseval_bound,
    rhs_fusion_sum,
    verify_lemma_weightsum,
    verify_numerator_identity,
)
from .theta import (
    ThetaContext,
    check_heat_equation,
    check_T_transform,
    kac_weyl_char,
    su2_numerator_closed,
    theta_sum,
    theta_weyl,
    verify_kw_identity,
)
from .weights import (
    WeightSystem,
    conjugate,
    dimension,
    mult_sum_squares,
    weight_system,
    weyl_dimension,
)

__version__ = "0.1.0"
