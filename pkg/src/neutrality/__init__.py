"""Exact neutrality decisions for finite matrix subgroups of GL and PGL.

The package decides, with machine-checkable certificates, whether a finite
subgroup of GL_n or PGL_n (n <= 3) is neutral or rho-neutral, and evaluates
the permutation-lattice neutrality criterion for diagonal subgroups in any
dimension.  Everything is computed in exact cyclotomic and integer
arithmetic; there is no floating point anywhere.
"""

from ._backend import BACKEND as kernel_backend
from .classify import (
    ClassificationReport,
    FieldContext,
    classify,
    classify_gl1,
    classify_gl2,
    classify_gl3,
    classify_pgl2,
    classify_pgl3,
    convert_presentation,
    diag_criterion,
    singularity_type_r,
)
from .cyclo import CycNum, parse, format_cyc, root_of_unity, zeta
from .diaggrp import DiagonalGroup, FamilySpec, ProjectiveDiagonalGroup, sl_preimage
from .latcoh import (
    FiniteModule,
    GLattice,
    h1_finite,
    h1_lattice,
    permutation_summand_test,
)
from .matgrp import CycMatrix, MatrixGroup, ProjGroup, simultaneous_diagonalize

__version__ = "0.1.0"
