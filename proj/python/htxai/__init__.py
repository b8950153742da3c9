# Copyright 2026 The htxai Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Hardware trojan detection on gate-level netlists, with explanations.

Thin Python surface over the C++ core: feature extraction, boosted-tree
training, Shapley and gradient attributions, case-based neighbours and the
evaluation statistics.
"""

import json as _json

from ._htxai import (
    FEATURE_NAMES,
    BoostedTreeModel,
    CaseIndex,
    CellLibrary,
    Dataset,
    HtxaiError,
    __version__,
    correspondence,
    emit_netlist,
    enumerate_properties,
    extract,
    gradient,
    mcnemar,
    metrics,
    shapley,
    spearman,
    stratified_split,
    threshold_sweep,
    train,
)
from ._htxai import generate_corpus as _generate_corpus


def generate_corpus(**config):
    """Synthetic labelled corpus. Keyword arguments override GenConfig fields,
    e.g. ``generate_corpus(n_circuits=4, gates_per_circuit=[40, 80])``."""
    return _generate_corpus(_json.dumps(config))


__all__ = [
    "FEATURE_NAMES",
    "BoostedTreeModel",
    "CaseIndex",
    "CellLibrary",
    "Dataset",
    "HtxaiError",
    "__version__",
    "correspondence",
    "emit_netlist",
    "enumerate_properties",
    "extract",
    "generate_corpus",
    "gradient",
    "mcnemar",
    "metrics",
    "shapley",
    "spearman",
    "stratified_split",
    "threshold_sweep",
    "train",
]
