"""Suspension splittings of simply connected 6-manifolds away from 2.

Modules, bottom-up: ``abelian`` (exact integer algebra), ``spaces`` (space
expressions and their rewrite system), ``homotopy_tables`` and ``hilton``
(odd-primary homotopy groups), ``splitter`` (the wedge decomposition of
Sigma M), ``cohomology``, ``gauge`` and ``cli``.
"""

from .abelian import FgAbGroup, smith_normal_form
from .spaces import normalize, parse
from .splitter import ManifoldInvariants, split_suspension, validate

__version__ = "0.1.0"

__all__ = [
    "FgAbGroup",
    "smith_normal_form",
    "normalize",
    "parse",
    "ManifoldInvariants",
    "split_suspension",
    "validate",
]
