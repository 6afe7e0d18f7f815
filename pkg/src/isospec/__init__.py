"""Almost-isospectral partner operators between different finite-dimensional
Hilbert spaces, with intertwiners taken from frames and g-frames."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    CommutatorViolation,
    DimensionMismatch,
    EigenResidualViolation,
    InvalidPartition,
    IsospecError,
    NotAFrame,
    NotHermitian,
    NotInvertible,
    NotIsometryLike,
    NotTight,
    ParseError,
    ShapeError,
)
from .frames import (  # noqa: F401
    Frame,
    FrameBounds,
    analysis_operator,
    cross_gram,
    dual_frame,
    frame_bounds,
    frame_operator,
    is_tight,
    reconstruct,
    synthesis_operator,
)
from .gframes import (  # noqa: F401
    BlockVector,
    GFrame,
    composed_gframe,
    g_analysis,
    g_dual,
    g_frame_bounds,
    g_frame_operator,
    g_synthesis,
    gframe_partner,
    grid_characteristic_gframe,
    projection_gframe,
    stacked_analysis_matrix,
)
from .intertwining import (  # noqa: F401
    OptionChoice,
    PartnerInput,
    PartnerResult,
    SpectralReport,
    build_partner,
    build_reverse_partner,
    map_eigenpairs,
    option_select,
    spectral_inclusion,
    validate_compatibility,
)
from .numerics import (  # noqa: F401
    DEFAULT_TOL,
    EigenDecomposition,
    Tolerances,
    adjoint,
    commutator,
    hermitian_eig,
    singular_values,
    strict_inverse,
)
