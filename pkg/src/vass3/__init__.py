"""Reachability tools for low-dimensional vector addition systems with states.

Submodules: ``vass`` (core model), ``diophantine``, ``lp``, ``geometry``,
``semilinear``, ``oracle``, ``reach2``, ``reach3``, ``textformat``,
``families`` and ``cli``.
"""
from .vass import (Configuration, Transition, Vass, VassError, WitnessPath, geometric_dimension, replay,
                   reverse, sequential_decompose, simple_cycle_effects, step)
from .oracle import SearchBudget, bfs_reach, coverable, z_reach_exact
from .reach3 import Policy, classify, decide_reach3
from .textformat import parse, serialize

__version__ = "0.1.0"

__all__ = [
    "Configuration", "Transition", "Vass", "VassError", "WitnessPath",
    "geometric_dimension", "replay", "reverse", "sequential_decompose", "simple_cycle_effects", "step",
    "SearchBudget", "bfs_reach", "coverable", "z_reach_exact",
    "Policy", "classify", "decide_reach3", "parse", "serialize",
]
