"""Free-boundary spherical catenoids in hyperbolic 3-space.

Thin package wrapper around the compiled extension: surface geometry in the
hyperboloid model, the free-boundary solve s0(a)/r(a), mode-decomposed Robin
spectra with a finite-difference oracle, asymptotic constants and tables,
and the sweep/report layer shared with the command-line tool.
"""

from ._hypcat import *  # noqa: F401,F403
from ._hypcat import __version__  # noqa: F401
