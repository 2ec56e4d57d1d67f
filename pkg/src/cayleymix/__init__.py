"""Random walks on random Cayley graphs of finite Abelian groups.

Numerically verifies cutoff at the entropic time, the Gaussian cutoff
profile, the deterministic TV lower bound, the modified-L2 control
quantity, and concentration of typical graph distances at lattice-ball
radii.
"""

from ._kernels import HAVE_EXT
from .entropic import EntropicSchedule, asymptotic_t0, default_omega, solve_t0, solve_t_alpha, validate_hypotheses
from .group import (
    AbelianGroupSpec,
    GeneratorMultiset,
    add,
    dot,
    element_of,
    index_of,
    make_group,
    parse_group,
    sample_generators,
    scale,
    subgroup_generated,
)
from .mixingstats import (
    QSample,
    TypicalitySpec,
    clt_profile,
    estimate_D_alpha,
    lower_bound_estimate,
    psi,
    sample_Q,
    verify_vz_uniform,
)
from .spectral import (
    CharacterSpectrum,
    DistributionOverGroup,
    detect_non_generating,
    eigenvalues,
    l2_distance,
    tv_curve,
    tv_distance,
    walk_distribution,
)
from .typdist import (
    BallCount,
    DistanceHistogram,
    ball_count_l1,
    ball_count_linf,
    ball_count_lp,
    ball_volume_lp,
    graph_distances,
    lp_distances,
    minimal_radius,
    quantile,
    reference_radius,
)
from .walklaw import (
    LatticeWalkLaw,
    QMoments,
    entropy,
    entropy_directed_closed_form,
    make_law,
    p_alpha,
    poisson_law,
    q_moments,
    r_alpha,
    srw_law,
    tail_stats,
)

__version__ = "0.1.0"
