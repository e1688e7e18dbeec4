"""monadlab: exact computer algebra for rank-2 Horrocks monads on P^3."""

from .rings import QQ, Fp, PolyRing
from .poly import Poly, parse_poly, poly_str, variables, ZERO_DEGREE
from .hilbert import HilbertSeries
from .groebner import (
    FreeModuleOrder,
    GroebnerBasis,
    groebner_basis,
    hilbert_function,
    hilbert_series,
    krull_dim,
    normal_form,
    saturate,
    syzygies,
    verify_buchberger,
)
from .graded import (
    GradedFree,
    GradedMap,
    Subquotient,
    ext_module,
    free_resolution,
    homology_module,
    image_module,
    kernel_module,
    make_map,
    minimalize,
    tensor_modules,
    twist,
)

__version__ = "0.1.0"
