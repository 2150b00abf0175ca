"""Computational topology: homology, persistence, discrete Morse theory and edge-path groups."""

from .complex import (CellComplex, ChainComplexView, CubicalComplex, ElementaryCube, Filtration,
                      Simplex, SimplicialComplex, boundary_matrices, euler_characteristic,
                      make_filtration)
from .errors import (CapabilityError, DegenerateInputError, DisconnectedError, MonotonicityError,
                     NotMorseFunctionError, TopologyError, ValidationError)
from .homology import (cohomology_gf2, cup_product_gf2, euler_poincare, homology_gf2, homology_z,
                       mayer_vietoris_check)
from .persistence import (bottleneck_distance, compute_persistence, persistent_betti,
                          render_diagram)

__version__ = "0.1.0"
