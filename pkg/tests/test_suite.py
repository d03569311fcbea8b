"""Tests for the property registry, run configuration and report format."""

import json

import numpy as np
import pytest

from qmetric import suite
from qmetric.errors import BadConfig
from qmetric.suite import FAIL, PASS, REPORT_ONLY, RunConfig

FAST = [
    "matops.eig.reconstruction",
    "states.bloch.roundtrip",
    "metrics.pg.qubit_equals_trace",
    "metrics.g.squared_convexity",
    "example1.regression",
    "channels.pg.contractivity",
    "example2.G.expansivity.violation",
]


def strip_timing(report):
    out = json.loads(json.dumps(report))
    for v in out["verdicts"]:
        v.pop("seconds")
    return out


class TestRunConfig:
    def test_defaults(self):
        cfg = RunConfig().validate()
        assert cfg.seed == 0x5EED
        assert cfg.dims is None and cfg.samples_per_property is None

    @pytest.mark.parametrize("data", [
        {"samples_per_property": 0},
        {"dims": [1, 2]},
        {"dims": []},
        {"only": ["no.such.property"]},
        {"colour": "blue"},
        {"optimizer": {"tolerance": -1}},
        {"optimizer": {"nonsense": 1}},
    ])
    def test_rejects(self, data):
        with pytest.raises(BadConfig):
            RunConfig.from_dict(data)

    def test_dict_roundtrip(self):
        cfg = RunConfig.from_dict({"seed": 3, "dims": [2, 3], "samples_per_property": 4,
                                   "optimizer": {"restarts": 2}})
        assert RunConfig.from_dict(cfg.to_dict()) == cfg


class TestChecks:
    def test_worst_is_relative_to_tolerance(self):
        c = suite.Checks()
        c.record("loose", -1e-3, 1e-2)
        c.record("tight", -1e-8, 1e-9)
        name, entry = c.worst()
        assert name == "tight"
        assert c.failed() == ["tight"]

    def test_zero_tolerance(self):
        c = suite.Checks()
        c.record("exact", 0.0, 0.0)
        c.record("ok", -1e-12, 1e-9)
        assert c.worst()[0] == "ok"
        assert c.failed() == []

    def test_nan_fails(self):
        c = suite.Checks()
        c.record("x", float("nan"), 1.0)
        assert c.failed() == ["x"]


class TestRegistry:
    def test_ids_unique_and_stable_format(self):
        ids = list(suite.REGISTRY)
        assert len(ids) == len(set(ids))
        assert all(pid == pid.strip() and " " not in pid for pid in ids)

    def test_required_properties_present(self):
        for pid in ["example2.G.expansivity.violation", "metrics.g.optimizer_soundness",
                    "metrics.g.squared_convexity", "channels.g.contractivity_search",
                    "channels.pg.contractivity", "metrics.pg.joint_convexity", "metrics.g.upper_bound"]:
            assert pid in suite.REGISTRY

    def test_report_only_split(self):
        soft = {pid for pid, p in suite.REGISTRY.items() if not p.hard}
        assert {"metrics.g.squared_convexity", "channels.g.contractivity_search"} <= soft
        assert "channels.pg.contractivity" not in soft

    def test_sub_seeds_differ(self):
        assert suite.sub_seed(1, "a") != suite.sub_seed(1, "b")
        assert suite.sub_seed(1, "a") == suite.sub_seed(1, "a")


@pytest.fixture(scope="module")
def small_run():
    cfg = RunConfig(samples_per_property=6, only=FAST)
    return cfg, suite.run_suite(cfg)


class TestRun:
    def test_statuses(self, small_run):
        _, verdicts = small_run
        by_id = {v.property_id: v for v in verdicts}
        assert by_id["example2.G.expansivity.violation"].status == PASS
        assert by_id["metrics.g.squared_convexity"].status == REPORT_ONLY
        for v in verdicts:
            if v.status == FAIL:
                assert v.counterexample is not None
            if v.status == PASS:
                assert v.worst_margin >= -v.tolerance

    def test_report_is_deterministic(self, small_run):
        cfg, verdicts = small_run
        again = suite.run_suite(cfg)
        assert strip_timing(suite.build_report(verdicts, cfg)) == strip_timing(suite.build_report(again, cfg))

    def test_report_serializes(self, small_run):
        cfg, verdicts = small_run
        report = json.loads(suite.report_json(suite.build_report(verdicts, cfg)))
        assert set(report) == {"summary", "config", "verdicts"}
        assert sum(report["summary"].values()) == len(FAST)

    def test_order_independent(self):
        # each property has its own sub-generator, so running it alone gives the same verdict
        cfg_pair = RunConfig(samples_per_property=5, only=["states.bloch.roundtrip", "matops.eig.reconstruction"])
        cfg_one = RunConfig(samples_per_property=5, only=["matops.eig.reconstruction"])
        a = [v for v in suite.run_suite(cfg_pair) if v.property_id == "matops.eig.reconstruction"][0]
        b = suite.run_suite(cfg_one)[0]
        assert a.worst_margin == b.worst_margin

    def test_contractivity_counterexample_reproduces(self):
        from qmetric import io, metrics
        v = suite.run_property(suite.REGISTRY["channels.pg.contractivity"], RunConfig())
        assert v.status == FAIL
        ce = v.counterexample
        phi = io.channel_from_json(ce["channel"])
        rho, sigma = io.state_from_json(ce["rho"]), io.state_from_json(ce["sigma"])
        after = metrics.pg_metric(phi(rho), phi(sigma)).value
        np.testing.assert_allclose(metrics.pg_metric(rho, sigma).value - after, v.worst_margin, atol=1e-12)
