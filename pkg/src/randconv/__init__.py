"""Random infinite convolutions: truncations, spectra, criteria and dimensions."""

__version__ = "0.1.0"

from .admissibility import find_spectrum_set, rescale_pair, verify_hadamard  # noqa: E402
from .core import (  # noqa: E402
    AdmissiblePair,
    AtomOverflowError,
    DigitPair,
    DiscreteMeasure,
    ScaleMap,
    convolve,
    dirac_uniform,
    pushforward,
)
from .criteria import run_all  # noqa: E402
from .dimension import build_ivp_system, dim_formula, empirical_dimension, solve_dimension  # noqa: E402
from .families import FiniteFamily, PeriodicFamily, RuleFamily, tnc_family  # noqa: E402
from .randomness import birkhoff_frequencies, recurrence_times  # noqa: E402
from .sequence_space import ExponentSequence, ProbabilityVector, SequenceModel  # noqa: E402
from .spectra import orthogonality_check, parseval_Q, scale_spectrum, tower_spectrum  # noqa: E402
from .transform import PairSystem, ft_truncated, mask_eval, truncate  # noqa: E402
