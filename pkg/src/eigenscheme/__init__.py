"""Exact eigenscheme ideals of rational matrices.

Submodules: :mod:`qpoly` (polynomials), :mod:`groebner` (Buchberger and ideal
operations), :mod:`eigenideal` (the ideal of a matrix), :mod:`jordanstruct`
(closed forms for Jordan matrices), :mod:`hilbert`, :mod:`oracle` (classical
linear algebra) and :mod:`cli`.
"""

from .eigenideal import JordanSpec, eigenscheme_ideal, jordan_matrix, transport
from .groebner import GroebnerBasis, Ideal, buchberger, ideal_equal
from .matrix import QMatrix
from .qpoly import GREVLEX, LEX, MonomialOrder, Polynomial, Ring, parse_poly

__version__ = "0.1.0"
