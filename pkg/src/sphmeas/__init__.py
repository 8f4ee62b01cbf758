"""Spherical Fourier eigenmeasures and modular Fourier expansions.

Modules:

* arith     integer and multiplier-system arithmetic
* qseries   truncated Fourier expansions with certified tails
* schwartz  polynomial Gaussian test functions with exact transforms
* measures  spherical measures, line distributions, descent, pairing
* modforms  concrete forms with transformation laws and eigenvalues
* verify    residual reports for the summation and transform identities
* hilbert   real quadratic fields and two-variable theta demos
* cli       the sphmeas command line tool
"""

from . import arith, cli, hilbert, measures, modforms, qseries, schwartz, verify

__version__ = "0.1.0"

__all__ = [
    "arith",
    "cli",
    "hilbert",
    "measures",
    "modforms",
    "qseries",
    "schwartz",
    "verify",
    "__version__",
]
