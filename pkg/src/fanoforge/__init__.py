"""Exact intersection theory on P^1-bundles over surfaces, and the p-cover
construction of Fano 3-folds in positive characteristic."""

from .bundles import (ExtensionData, ext_space_dim, locally_free_check,
                      section_zero_locus_length, whitney_chern)
from .chow import (GEOMETRIC, PAPER_FORMAL, BundleData, ChowClass, ConventionMode,
                   Expansion, anticanonical_cube, canonical_class, closed_degree_formula,
                   integrate, multiply)
from .errors import (AmbiguousRange, ClassSyntaxError, FanoForgeError, Inconsistent,
                     Infeasible, InvalidInput, UnknownName)
from .lattice import (DivisorClass, SurfaceModel, h0_vanishes, hodge_index_check,
                      intersect, is_positive_on_ample)

__version__ = "0.1.0"
