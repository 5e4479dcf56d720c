"""Generalised score distributions on {1,...,M}.

Thin re-export of the compiled extension: exact probabilities and moments,
sampling, moments/grid/gradient estimation, bootstrapped goodness-of-fit,
an ordered-probit baseline, model-vs-empirical bootstrap comparison, and
the multidimensional rater/stimulus model.
"""

from gsdlib._core import *  # noqa: F401,F403
from gsdlib._core import __version__  # noqa: F401
