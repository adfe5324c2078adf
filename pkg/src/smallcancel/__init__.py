"""Small cancellation over amalgamated free products with a free amalgamated subgroup."""

__version__ = "0.1.0"

from .amalgam import AmalgamWord, CyclicWord, cyclically_reduce, interleave_equal, normalize, word
from .cancellation import (CPrimeResult, PieceReport, SymmetrizedSet, check_c_prime, pieces,
                           symmetrize)
from .dehn import (DehnVerdict, Outcome, UncertifiedSet, ball_injectivity, max_fragment,
                   membership, replay, verify_trace)
from .factors import ConfigError, FactorSystem, FactorWord, load_system, make_system, preset
from .relators import CapTooSmall, build_r0, build_rn
from .shelah import (CountTooLarge, HypothesisFailed, StepPresentation, TopologyBase,
                     assemble_step, build_topology_base, verify_conditions)

__all__ = [
    "AmalgamWord", "CyclicWord", "cyclically_reduce", "interleave_equal", "normalize", "word",
    "CPrimeResult", "PieceReport", "SymmetrizedSet", "check_c_prime", "pieces", "symmetrize",
    "DehnVerdict", "Outcome", "UncertifiedSet", "ball_injectivity", "max_fragment",
    "membership", "replay", "verify_trace",
    "ConfigError", "FactorSystem", "FactorWord", "load_system", "make_system", "preset",
    "CapTooSmall", "build_r0", "build_rn",
    "CountTooLarge", "HypothesisFailed", "StepPresentation", "TopologyBase",
    "assemble_step", "build_topology_base", "verify_conditions",
]
