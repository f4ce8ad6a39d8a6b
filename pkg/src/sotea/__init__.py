"""Population-based search with a self-organizing population topology.

The package bundles the topology-evolving search engine and its cellular
and panmictic baselines, the twelve-problem constrained benchmark suite,
the graph rewiring rules and network analysis used to study the evolved
population structure, reference network growth models, and an experiment
harness with nonparametric statistics.
"""

from .engines import EngineConfig, RunRecord, design_matrix, run
from .graph import PopulationGraph
from .problems import Evaluation, ProblemSpec, get, registry
from .rewiring import SetPointPolicy, apply_topology_step
from .selection import FitnessComparator
from .stats import mann_whitney_u

__version__ = "0.1.0"

__all__ = [
    "EngineConfig",
    "RunRecord",
    "design_matrix",
    "run",
    "PopulationGraph",
    "Evaluation",
    "ProblemSpec",
    "get",
    "registry",
    "SetPointPolicy",
    "apply_topology_step",
    "FitnessComparator",
    "mann_whitney_u",
    "__version__",
]
