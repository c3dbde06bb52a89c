"""Equal kernels and equal images dimension vectors of generalized Kronecker quivers."""

from ._ekpdim import *  # noqa: F401,F403
from ._ekpdim import CapExceeded, FormatError, PreconditionError  # noqa: F401
