"""AIG logic-optimization workbench.

Core pieces: the AIG representation and AIGER I/O (`aig`), a catalog of
function-preserving transformations (`transforms`), a cut-based technology
mapper with static timing analysis (`techmap`, `library`), graph feature
extraction (`features`), gradient-boosted regression trees (`gbdt`), and a
simulated-annealing optimizer with three interchangeable cost oracles
(`optimizer`).  `pipeline` and `cli` orchestrate corpus generation, model
training and flow comparison.
"""

from .aig import (Aig, AigBuilder, AigStats, AigerError, compute_stats,
                  emit_aiger, load_aiger, parse_aiger, save_aiger, simulate)
from .library import Cell, CellLibrary, default_library, load_library, parse_library
from .techmap import GroundTruth, MappedNetlist, ground_truth, sta
from .transforms import (EquivalenceVerdict, Transform, apply,
                         check_equivalence, default_catalog, random_move)
from .features import FeatureConfig, FeatureVector, extract, feature_names
from .gbdt import (AccuracyReport, Dataset, GbdtHyperparams, GbdtModel,
                   evaluate, fit, load_model, parse_dataset, save_dataset,
                   save_model)
from .optimizer import (CostConfig, CostOracle, SaConfig, SaRun, anneal,
                        compare_flows, default_grid, hypervolume, pareto,
                        sweep)
from .pipeline import DatagenConfig, cmd_bench, cmd_datagen, generate_corpus
from .fixtures import FIXTURE_NAMES, load_fixture

__all__ = [
    "Aig", "AigBuilder", "AigStats", "AigerError", "compute_stats",
    "emit_aiger", "load_aiger", "parse_aiger", "save_aiger", "simulate",
    "Cell", "CellLibrary", "default_library", "load_library", "parse_library",
    "GroundTruth", "MappedNetlist", "ground_truth", "sta",
    "EquivalenceVerdict", "Transform", "apply", "check_equivalence",
    "default_catalog", "random_move",
    "FeatureConfig", "FeatureVector", "extract", "feature_names",
    "AccuracyReport", "Dataset", "GbdtHyperparams", "GbdtModel", "evaluate",
    "fit", "load_model", "parse_dataset", "save_dataset", "save_model",
    "CostConfig", "CostOracle", "SaConfig", "SaRun", "anneal",
    "compare_flows", "default_grid", "hypervolume", "pareto", "sweep",
    "DatagenConfig", "cmd_bench", "cmd_datagen", "generate_corpus",
    "FIXTURE_NAMES", "load_fixture",
]

__version__ = "0.1.0"
