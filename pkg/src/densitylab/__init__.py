"""densitylab: finite-scale experiments with logarithmic and Banach
densities, harmonic window measures, approximate progression searches, and
productset gap analysis."""

from .density import (
    DensityProfile,
    banach_window_sup,
    bd_estimate,
    bdm_window_sup,
    counting_profile,
    lbd_estimate,
    log_profile,
)
from .errors import CapacityError, DensityLabError, DomainError, ValidationError
from .intset import (
    IntegerSetSpec,
    IntervalSet,
    Window,
    classify,
    contains,
    example2_set,
    invert_intervals,
    materialize,
)
from .monad import (
    RatioCut,
    WindowMeasureReport,
    big_estimate,
    density_plus,
    equivalent,
    interval_measure,
    inversion_check,
    invert_point,
    monad_of,
    nu,
    nu_m,
    phi,
    root_shift,
    scale_check,
)
from .productset import GapReport, gap_witness, max_gap_ratio, products_in
from .progressions import (
    ApproxWitness,
    GeoProgression,
    PowerProgression,
    approx_subset,
    find_geo,
    find_gp3,
    find_power_ap,
    gp_free_certify,
    is_n_approx,
)

__version__ = "0.1.0"
