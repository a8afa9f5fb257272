"""Finite thin concurrent games: event structures with symmetry, strategy
composition, and exact witness counting up to symmetry."""

from .events import (
    Configuration,
    CycleDetected,
    EventStructure,
    NEG,
    POS,
    Polarity,
    SizeLimitExceeded,
    config,
    enumerate_configurations,
    es_isomorphic,
    is_plus_covered,
    make_event_structure,
    maximal_events,
    validate_es,
)
from .symmetry import (
    AllOrderIsos,
    ConfigIso,
    EndoGroup,
    MaximalGenerators,
    NoFactorization,
    NonUniqueFactorization,
    NotRepresentable,
    RuleBased,
    SymmetryClass,
    Tcg,
    FULL,
    POSF,
    NEGF,
    check_family_axioms,
    endo_group,
    enumerate_symmetries,
    factorize,
    identity_only,
    is_canonical,
    is_representable,
    order_isos,
    symmetry_classes,
)
from .games import (
    ArityMismatch,
    NotNegative,
    atom,
    bang_ajm,
    bang_ho,
    dual,
    empty_game,
    game_sum,
    is_forestial,
    linear_arrow,
    parallel,
    shift_down,
    shift_up,
)
from .strategies import (
    AmbiguousBeyondSymmetry,
    Interaction,
    NoSolution,
    NonUnique,
    State,
    Strategy,
    SyncResult,
    compose,
    copycat,
    interaction,
    is_secured,
    negative_action,
    no_deadlock,
    pcov_bijection,
    strategies_isomorphic,
    validate_strategy,
    weak_bipullback,
)
from .collapse import (
    Atlas,
    BijectionFailure,
    DimensionMismatch,
    INF,
    TheoremViolation,
    WeightedRelation,
    act,
    atlas,
    check_theorem,
    check_wit_vs_witplus,
    collapse,
    compatible_pairs,
    corollary_f_fibers,
    eq3_check,
    int_plus,
    int_plus_ac,
    matching_witnesses,
    matrix_compose,
    nat_add,
    nat_mul,
    plus_witnesses,
    swint_plus,
    swit,
    swit_plus,
    swit_plus_single,
    upsilon,
    wit,
    wit_count,
    wit_plus,
)
from .fixtures import REGISTRY, load_fixture
from .render import class_name
from .scenario import (
    ParseError,
    build_scenario,
    parse_scenario,
    print_scenario,
)
