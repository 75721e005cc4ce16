"""parityforge: engineered pairs x, x+n sharing a multiplicative statistic.

The package builds admissible triplets of linear forms, plants prime
powers on them, and searches the substituted variable for indices where
two forms are simultaneously E2 (a product of two large primes). Each
hit assembles into a witness pair whose omega, Omega, divisor count or
full exponent pattern is forced by construction and re-verified from
scratch.
"""

from .arith import (
    Factorization,
    ResidueClass,
    arith_stats,
    crt_solve,
    exponent_pattern,
    factorize,
    is_prime,
    next_prime,
    sieve_primes,
    solve_linear_congruence,
    valuation,
)
from .catalog import (
    Claim,
    Construction,
    PairPrediction,
    ProfileClaim,
    SidePrediction,
    Stage2Input,
    TheoremInfo,
    VerificationReport,
    build_construction,
    build_stage2,
    construction_to_dict,
    list_theorems,
    make_stage2_input,
    stage1_cutoff,
    stage1_system,
    stage2_case_for_pair,
    theorem_info,
    verify_construction,
)
from .construction import (
    AdjoinRecipe,
    AdjoinedSystem,
    Plant,
    ValuationReport,
    adjoin_factors,
    fixed_divisor_profile,
    guaranteed_valuation,
)
from .errors import (
    CaseUnavailable,
    ClaimMismatch,
    FormParseError,
    Incompatible,
    InternalCheckFailed,
    NoRelation,
    NotDivisible,
    NotOdd,
    OutOfDomain,
    ParityForgeError,
)
from .forms import (
    AdmissibilityCertificate,
    FormSystem,
    LinearForm,
    Relation,
    check_admissible,
    compose,
    divide_form,
    evaluate,
    find_relation,
    is_reduced,
    parse_form,
    parse_system,
)
from .kernels import NUMBA_ACTIVE
from .search import (
    E2Hit,
    Witness,
    assemble_witness,
    e2_check,
    e2_gap_scan,
    find_simultaneous_e2,
    oracle_scan,
    search_witnesses,
    stage2_input_from_hit,
    verify_witness,
    witness_to_dict,
)
from .twins import (
    HypTReport,
    TwinPair,
    check_hypothesis_t,
    first_strong_pair,
    iter_twin_pairs,
    twin_pairs,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
