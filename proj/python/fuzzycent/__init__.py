"""Fuzzy-graph influence analysis: NFDC/NFRH centrality, weighted SIR and evaluation."""

from ._fuzzycent import *  # noqa: F401,F403
from ._fuzzycent import __version__

ALL_METHODS = [Method.FD, Method.FRD, Method.FRH, Method.NFDC, Method.NFRH]
