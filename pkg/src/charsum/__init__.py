"""Exact closed forms for power sums over consecutive quadratic-residue
classes and for sums of distinct polynomial values over finite fields,
with brute-force oracles and a sweep harness that checks closed form
against oracle over every small field."""

from .field import (
    DEFAULT_MAX_Q,
    Field,
    FieldElement,
    PreconditionError,
    binom_mod_p,
    build_field,
    chi,
    field_arith,
    from_integer,
    is_prime_power,
    parse_element,
    parse_field_spec,
    trace_to_prime,
)
from .charsums import (
    DSpec,
    ExponentReduction,
    coefficient_sum,
    count_D_closed,
    power_sum_closed,
    reduce_exponent,
)
from .valuesets import (
    Char3Analysis,
    LowDegreePoly,
    TClass,
    artin_schreier_remark_sum,
    char3_h_analysis,
    classify_T,
    cubic_image_size,
    low_degree_sum_closed,
    make_T_set,
    power_poly_sum_closed,
    quartic_image_size,
    quartic_sum_closed,
    shifted_sum,
    twisted_poly,
    twisted_sum_zero,
)
from .oracles import (
    T_oracle,
    ValueSetSummary,
    enumerate_D,
    power_sum_oracle,
    theta_phi_check,
    value_set,
)
from .harness import (
    CaseRecord,
    SkipRecord,
    SweepConfig,
    VerificationReport,
    canonical_json,
    class_representatives,
    emit_report,
    enumerate_prime_powers,
    run_suite,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
