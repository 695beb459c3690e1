"""qflag: exact symbolic computation with Lusztig root vectors and the
covariant differential calculi they generate on type-A quantum flag
manifolds.

All arithmetic is over the field Q(q) with q generic; every equality the
library reports is exact.
"""

from qflag.scalars import RatQ

__all__ = ["RatQ"]
__version__ = "0.1.0"
