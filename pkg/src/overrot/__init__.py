"""Over-rotation numbers and intervals for interval maps: patterns,
kneading theory, exact Markov computations and parameter sweeps."""
from .errors import (
    AcyclicGraphError,
    FormatError,
    HorseshoeError,
    InfiniteCriticalDataError,
    OverRotError,
    PreconditionError,
    TrivialDynamicsError,
)
from .orders import (
    HALF,
    OverRotationPair,
    PeriodSet,
    RhoResult,
    RotationInterval,
    pair_forces,
    sharkovskii_sharper,
    sharkovskii_tail,
)
from .plmap import PLMap, compose, frac
from .patterns import (
    CyclicPattern,
    NonCyclicPattern,
    classify_shape,
    code_of,
    gamma,
    gamma_prime,
    is_overtwist,
    over_rotation_pair,
    realize_p_linear,
    unimodal_overtwists,
)
from .graph import TransitionGraph, min_mean_cycle, transition_graph
from .kneading import (
    Itinerary,
    compare,
    kneading,
    mt_compare,
    nu_prime,
    nu_rho,
    parse_itinerary,
    rho_from_kneading,
)
from .unimodal import (
    EvaluableMap,
    landmarks,
    membership_witness,
    minimal_orbit_region,
    over_rotation_interval,
    polynomial_map,
    quadratic,
    rho_exact_markov,
    tent,
    truncate,
)
from .lift import rotation_number, water_lift
from .families import (
    FamilySpec,
    Verdict,
    class_check,
    compare_lemma32,
    dominance_check,
    repellence_check,
    scaling_check,
    sweep,
)

__version__ = "0.1.0"
