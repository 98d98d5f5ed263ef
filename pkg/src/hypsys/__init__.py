"""Exact dilatation spectra of hyperelliptic Rauzy diagrams."""

__version__ = "0.1.0"

from .errors import HypsysError
from .permutations import (
    LabeledPermutation,
    MoveKind,
    PathCoordinates,
    RauzyDiagram,
    build_diagram,
    central_permutation,
    coordinates,
    permutation_from_coordinates,
    rauzy_move,
)
from .matrices import (
    RauzyPath,
    TransitionMatrix,
    charpoly_exact,
    elementary_matrix,
    is_primitive,
    min_column_sum,
    path_matrix,
    rome_charpoly,
)
from .polynomials import (
    IntPolynomial,
    Ordering,
    RootEnclosure,
    compare_roots,
    perron_root,
)
from .families import (
    loop_polynomial_even,
    loop_polynomial_odd,
    minimal_path_polynomial,
    second_minimum_polynomial,
    systole_polynomial,
)
from .paths import central_loop_start, loop_path, minimal_path
from .inequalities import verify_inequalities
from .suspension import (
    EigenData,
    IetState,
    Side,
    eigen_data,
    height_window,
    rauzy_step_dynamic,
    sample_pure_admissible,
    weak_suspension,
    zrl_coding_successors,
    zrl_normalize,
    zrl_step,
)
from .search import (
    SearchConfig,
    SpectrumEntry,
    enumerate_admissible,
    second_length,
    spectrum,
    systole,
    census_table,
)

__all__ = [
    "HypsysError",
    "IntPolynomial",
    "LabeledPermutation",
    "MoveKind",
    "Ordering",
    "PathCoordinates",
    "RauzyDiagram",
    "RauzyPath",
    "RootEnclosure",
    "SearchConfig",
    "SpectrumEntry",
    "TransitionMatrix",
    "build_diagram",
    "central_loop_start",
    "central_permutation",
    "charpoly_exact",
    "compare_roots",
    "coordinates",
    "eigen_data",
    "elementary_matrix",
    "enumerate_admissible",
    "height_window",
    "is_primitive",
    "loop_path",
    "loop_polynomial_even",
    "loop_polynomial_odd",
    "min_column_sum",
    "minimal_path",
    "minimal_path_polynomial",
    "path_matrix",
    "permutation_from_coordinates",
    "perron_root",
    "rauzy_move",
    "rome_charpoly",
    "second_length",
    "second_minimum_polynomial",
    "spectrum",
    "sample_pure_admissible",
    "systole",
    "systole_polynomial",
    "census_table",
    "verify_inequalities",
    "zrl_coding_successors",
    "zrl_normalize",
    "zrl_step",
    "EigenData",
    "IetState",
    "Side",
    "eigen_data",
    "rauzy_step_dynamic",
    "weak_suspension",
]
