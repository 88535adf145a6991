"""Self-healing reconfigurable network simulator.

Deterministic, seedable simulation of adversarial node deletion with
locality-aware healing (dash, sdash and naive baselines), attack strategies
including the level-by-level lower-bound adversary, and runtime verification
oracles for the potential-function analysis.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .graph import (
    DeadNodeError,
    DeletionContext,
    ForestMergeError,
    Graph,
    NodeState,
    apply_plan,
    capture_and_delete,
    degree_delta,
    propagate_component_id,
    transfer_weight,
    unique_neighbors,
)
from .generators import TreeShape, complete_kary_tree, fixture, preferential_attachment
from .healing import (
    HEALERS,
    ID_TRACKING,
    ReconnectionPlan,
    complete_binary_tree_edges,
    heal_binary_tree,
    heal_dash,
    heal_graph,
    heal_sdash,
)
from .attack import (
    LevelAttack,
    make_attack,
    pick_max_node,
    pick_neighbor_of_max,
    pick_random,
    prune_sequence,
)
from .metrics import (
    DisconnectedError,
    ForestView,
    LemmaHistory,
    LemmaReport,
    MetricsRecord,
    check_round,
    degree_stats,
    message_stats,
    rem,
    stretch,
)
from .harness import (
    ConfigError,
    ExperimentConfig,
    HealingFailure,
    RunResult,
    load_config,
    read_csv,
    run_experiment,
    run_replicate,
    write_csv,
)
from .rng import SplitMix64, child_seed

__version__ = "0.1.0"
