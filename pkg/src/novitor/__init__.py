"""novitor: exact arithmetic for Novikov complexes, Lefschetz zeta functions
of gradient flows, and torsion of based chain complexes."""

from .complexes import (
    BasedChainComplex,
    ChainMap,
    LevelFiltration,
    TorsionResult,
    Tower,
    algebraic_mapping_torus,
    base_change,
    chain_maps_homotopic,
    direct_sum,
    euler_characteristic,
    filtration_check,
    homology_ranks,
    inverse_limit,
    is_acyclic,
    mapping_cone,
    torsion,
    torsion_of_map,
    tower_check,
    truncation_tower,
    validate_complex,
    zero_complex,
)
from .descent import (
    DescentSystem,
    VerificationReport,
    WFiltrationSystem,
    build_E,
    build_E_prime,
    build_W_complex,
    delta_p_matrix,
    torsion_closed_form,
    torsion_generic,
    verify_instance,
    xi_map,
)
from .matrices import Matrix, mat_det, mat_rank_ff
from .morse import (
    CriticalPoint,
    MNInstance,
    MorseIncidence,
    NovikovIncidence,
    build_morse_complex,
    build_novikov_complex,
    novikov_homology_ranks,
    novikov_tower,
    truncate_novikov,
)
from .polynomial import LaurentPolynomial
from .rational import RationalFunction, rf_expand
from .series import (
    DEFAULT_ORDER,
    TruncatedSeries,
    WittVector,
    exp_eta,
    is_integral,
    log_series,
    series_add,
    series_invert,
    series_mul,
    series_neg,
)
from .zeta import (
    ClosedOrbit,
    OrbitSet,
    PrimeOrbit,
    cat_map_oracle,
    eta_from_lefschetz_numbers,
    eta_from_orbits,
    expand_prime_orbit,
    orbit_set_from_primes,
    zeta_from_descent,
    zeta_from_homology,
    zeta_from_orbits,
    zeta_from_primes,
    zeta_v,
)

__version__ = "0.1.0"
