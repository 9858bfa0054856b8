# Copyright 2026 The contam-audit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the contam-audit contamination detector."""

import json
import os

from ._contam import (
    ContamError,
    chi2_sf_df1,
    generate,
    mcnemar,
    min_k_score,
    mock_embed,
    ngram_overlap,
    percentile,
    run_cli,
    student_t_sf,
)
from . import _contam

__all__ = [
    "ContamError",
    "chi2_sf_df1",
    "detect",
    "flag_cliff",
    "generate",
    "mcnemar",
    "min_k_score",
    "mock_embed",
    "ngram_overlap",
    "percentile",
    "run_cli",
    "student_t_sf",
]


def _config_text(config):
    out = {}
    for key, value in (config or {}).items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        out[key] = str(value)
    return out


def detect(synthetic, benchmark, config=None, jobs=1):
    """Audit a synthetic JSONL file against a benchmark JSONL file.

    Returns the report as a dict with config, verdicts and summary.
    """
    text = _contam.detect(os.fspath(synthetic), os.fspath(benchmark),
                          _config_text(config), jobs)
    return json.loads(text)


def flag_cliff(original, variants, p=0.05, two_sided=False):
    """Paired test on accuracy lost under paraphrase; returns a dict."""
    return json.loads(_contam.flag_cliff([bool(x) for x in original],
                                         [[bool(x) for x in col] for col in variants],
                                         p, two_sided))
