from .single import SingleSiteProblem
from .array import ArrayProblem
from .bands import BandProblem
from .disorder import DisorderProblem

__all__ = [
    "SingleSiteProblem",
    "ArrayProblem",
    "BandProblem",
    "DisorderProblem",
]
