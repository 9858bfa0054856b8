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

import json
import math

import pytest

import contam_audit as ca


def test_mock_embed_is_unit_and_deterministic():
    a = ca.mock_embed("Tom has 3 apples")
    b = ca.mock_embed("Tom has 3 apples")
    assert a == b
    assert len(a) == 256
    assert math.isclose(sum(x * x for x in a), 1.0, rel_tol=1e-12)


def test_min_k_bottom_forty_percent():
    value, used = ca.min_k_score([-0.1, -5.0, -2.0, -0.2, -8.0], 40)
    assert value == pytest.approx(-6.5)
    assert used == 2


def test_min_k_rejects_positive_logprob():
    with pytest.raises(ValueError):
        ca.min_k_score([-1.0, 0.5], 20)


def test_ngram_overlap_identity():
    text = " ".join(f"w{i}" for i in range(20))
    assert ca.ngram_overlap(text, text) == (1.0, True)


def test_statistics_fixtures():
    assert ca.student_t_sf(2.776, 4) == pytest.approx(0.025, abs=1e-4)
    assert ca.chi2_sf_df1(3.841) == pytest.approx(0.05, abs=1e-4)
    chi2, p = ca.mcnemar(15, 5)
    assert chi2 == pytest.approx(4.05)
    assert p == pytest.approx(0.0442, abs=1e-3)
    assert ca.percentile([4, 1, 3, 2], 50) == 2.5


def test_flag_cliff_equal_columns_is_quiet():
    original = [i % 3 != 0 for i in range(30)]
    r = ca.flag_cliff(original, [original] * 5)
    assert r["delta"] == 0.0
    assert not r["flagged"]


def test_flag_cliff_detects_drop():
    original = [i < 164 for i in range(200)]
    variants = [[(i + 37 * k) % 200 < 128 for i in range(200)] for k in range(5)]
    r = ca.flag_cliff(original, variants)
    assert r["delta"] == pytest.approx(0.18)
    assert r["flagged"]


def test_generate_then_detect(tmp_path):
    ca.generate("S1", tmp_path, n_syn=50, n_bench=30, rate=0.2, seed=3)
    labels = json.loads((tmp_path / "labels.json").read_text())["labels"]
    report = ca.detect(tmp_path / "synthetic.jsonl", tmp_path / "benchmark.jsonl",
                       config={"l2_require_gaussian": True}, jobs=2)
    flagged = {v["sample_id"] for v in report["verdicts"] if v["flagged_level"]}
    contaminated = {k for k, v in labels.items() if v}
    assert contaminated <= flagged
    assert report["summary"]["level1"] == len(contaminated)


def test_detect_rejects_unknown_config_key(tmp_path):
    ca.generate("S1", tmp_path, n_syn=20, n_bench=10, rate=0.2, seed=0)
    with pytest.raises(ValueError):
        ca.detect(tmp_path / "synthetic.jsonl", tmp_path / "benchmark.jsonl",
                  config={"bogus": 1})


def test_run_cli_exit_codes(tmp_path):
    code, _, _ = ca.run_cli(["generate", "--scenario", "S1", "--out-dir", str(tmp_path),
                             "--n-syn", "20", "--n-bench", "10"])
    assert code == 0
    code, _, err = ca.run_cli(["detect", "--synthetic", str(tmp_path / "synthetic.jsonl"),
                               "--benchmark", str(tmp_path / "benchmark.jsonl"),
                               "--report", str(tmp_path / "r.json")])
    assert code == 2, err
    code, _, err = ca.run_cli(["detect", "--synthetic", str(tmp_path / "missing.jsonl"),
                               "--benchmark", str(tmp_path / "benchmark.jsonl"),
                               "--report", str(tmp_path / "r.json")])
    assert code == 1
    assert err
