"""Test configuration, caching, the certificate and the command line"""

import json
import shutil
from fractions import Fraction

import pytest
from click.testing import CliRunner

import twodist
from twodist import pipeline
from twodist.base import ArtifactCache, PipelineConfig, fingerprint
from twodist.base.pipeline_config import default_workers
from twodist.cli import main
from twodist.construction import PointSet277, read_point_set, write_point_set
from twodist.exactla import IntMatrix
from twodist.lattice import GramLattice, read_lattice, write_lattice
from twodist.maximality import ExtensionCertificate
from twodist.maximality.certificate import jsonable
from twodist.pipeline import RunContext
from twodist.system.exceptions import (
    CacheInvalid,
    ConfigurationError,
    ConstructionFailed,
    CountMismatch,
    DimensionMismatch,
    SchemaError,
    UnknownStage,
)
from twodist.utils import Stage


@pytest.fixture(scope="module")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("cache")


def test_stage_order():
    """tester for stage dependencies"""

    config = PipelineConfig(stages=["construct"], progress=False)
    assert config.resolved_stages() == [Stage.code, Stage.graph, Stage.embed, Stage.construct], (
        "construct needs code, graph and embed but not the spectra."
    )
    assert PipelineConfig(stages=["spectrum"]).resolved_stages() == [
        Stage.code,
        Stage.graph,
        Stage.spectrum,
    ], "spectrum needs the graph."
    assert Stage.embed == "embed", "Stages compare to their names."


def test_config_validation(monkeypatch):
    """tester for invalid configurations"""

    with pytest.raises(ConfigurationError):
        PipelineConfig(workers=0)
    with pytest.raises(ConfigurationError):
        PipelineConfig(block_size=0)
    with pytest.raises(UnknownStage):
        PipelineConfig(stages=["code", "lattice"])

    monkeypatch.setenv("TWODIST_WORKERS", "3")
    assert default_workers() == 3, "Worker count has to come from the environment."
    monkeypatch.setenv("TWODIST_WORKERS", "many")
    with pytest.raises(ConfigurationError):
        default_workers()


def test_code_only_run():
    """tester for a run of the code stage alone"""

    certificate = twodist.run(PipelineConfig(stages=["code"], progress=False))
    assert list(certificate.sections) == ["code"], "Only the code stage has to run."
    section = certificate["code"]
    assert section["code_size"] == 729 and section["dual_size"] == 243, "Code sizes are wrong."
    assert section["dual_weight_6"] == 132, "Dual has 132 words of weight 6."
    assert section["minimum_distance"] == 5 and section["perfect"], "Golay parameters are wrong."
    assert "code" in certificate.timing, "Stage has to be timed."


def test_certificate_json(tmp_path):
    """tester for the certificate document"""

    certificate = ExtensionCertificate(workers=4)
    certificate.record("maximality", {"minimum": Fraction(5, 2), "survivor": (1, -2)}, 1.23456)
    path = tmp_path / "certificate.json"
    certificate.write(path)

    loaded = ExtensionCertificate.read(path)
    assert loaded["maximality"] == {"minimum": "5/2", "survivor": [1, -2]}, "Values changed."
    assert loaded.workers == 4 and loaded.timing == {"maximality": 1.235}, "Metadata changed."

    data = json.loads(path.read_text())
    data["schema_version"] = "2.0.0"
    with pytest.raises(SchemaError):
        ExtensionCertificate.from_json(json.dumps(data))
    del data["schema_version"]
    with pytest.raises(SchemaError):
        ExtensionCertificate.from_json(json.dumps(data))

    assert jsonable({1: {Fraction(1, 2), Fraction(1, 3)}}) == {"1": ["1/3", "1/2"]}, (
        "Sets are written in increasing order."
    )
    assert jsonable({"norm": Fraction(5), "det": Fraction(-12, 4)}) == {"norm": 5, "det": -3}, (
        "Integral rationals have to be written as integers."
    )
    assert jsonable({Fraction(6), Fraction(9, 2)}) == ["9/2", 6], "Mixed sets are ordered by value."


def test_artifact_cache(tmp_path):
    """tester for stored artifacts and their hashes"""

    cache = ArtifactCache(tmp_path)
    key = fingerprint("graph", b"\x01\x02")
    assert key != fingerprint("graph\x01", b"\x02"), "Parts have to be separated."

    cache.store(Stage.code, key, lambda path: path.write_text("42"), name="answer.txt")
    read = lambda path: int(path.read_text())
    assert cache.load(Stage.code, key, read, name="answer.txt") == 42, "Stored value is lost."
    assert cache.load(Stage.code, "other", read, name="answer.txt") is None, "Key has to match."
    with cache.pause():
        assert cache.load(Stage.code, key, read, name="answer.txt") is None, "Paused cache loads."
    assert cache.is_on(), "Cache has to resume after the context."

    (tmp_path / "code" / "answer.txt").write_text("43")
    with pytest.raises(CacheInvalid):
        cache.load(Stage.code, key, read, name="answer.txt")


def test_corrupted_artifact_is_recomputed(tmp_path):
    """tester for the warning on a corrupted cache entry"""

    context = RunContext(config=PipelineConfig(progress=False), cache=ArtifactCache(tmp_path))
    calls = []

    def compute():
        calls.append(1)
        return {"edges": 21_879}

    def cached():
        return context.cached(
            Stage.graph,
            "key",
            compute,
            reader=lambda path: json.loads(path.read_text()),
            writer=lambda value, path: path.write_text(json.dumps(value)),
            name="graph.json",
        )

    assert cached() == {"edges": 21_879} and len(calls) == 1, "First call computes."
    assert cached() == {"edges": 21_879} and len(calls) == 1, "Second call reads the cache."
    (tmp_path / "graph" / "graph.json").write_text('{"edges": 0}')
    with pytest.warns(RuntimeWarning):
        assert cached() == {"edges": 21_879}, "Corrupted entry has to be recomputed."
    assert len(calls) == 2, "Recomputation has to happen once."


def test_construct_run_with_cache(cache_dir, tmp_path):
    """tester for the construction stages with caching and a certificate file"""

    config = PipelineConfig(
        stages=["construct"],
        cache_dir=cache_dir,
        certificate_path=tmp_path / "certificate.json",
        progress=False,
    )
    certificate = twodist.run(config)
    assert list(certificate.sections) == ["code", "graph", "embed", "construct"], "Wrong stages."
    assert certificate["graph"]["quotient_matrix"] == [[30, 162], [22, 132]], "Quotient is wrong."
    assert certificate["embed"]["rank"] == 24, "Embedding rank is wrong."
    construct = certificate["construct"]
    assert construct["points"] == 277 and construct["u_norm"] == 5, "Point set is wrong."
    assert construct["root_count"] == 1 and construct["root_norm"] == 2, "Root has to be unique."
    assert construct["root_formula"] and construct["u_part_independent"], "Root checks are missing."
    assert construct["distances"] == {"pairs": 38_226, "distance_4": 21_912, "distance_6": 16_314}, (
        "Distance counts are wrong."
    )
    assert (cache_dir / "embed" / "embedding.lat").is_file(), "Embedding has to be cached."
    assert (cache_dir / "construct" / "points.lat").is_file(), "Points have to be cached."

    stored = ExtensionCertificate.read(tmp_path / "certificate.json")
    assert stored.sections == certificate.sections, "Written certificate differs."

    again = twodist.run(PipelineConfig(stages=["construct"], cache_dir=cache_dir, progress=False))
    assert again.sections == certificate.sections, "Cached run has to certify the same values."
    assert again["construct"]["root_count"] == 1, "Cached run has to recount the roots."


def test_cli(cache_dir, tmp_path):
    """tester for the command line interface"""

    runner = CliRunner()
    path = tmp_path / "cli.json"
    result = runner.invoke(
        main, ["construct", "--quiet", "--cache", str(cache_dir), "--certificate", str(path)]
    )
    assert result.exit_code == 0, result.output
    assert "construct" in result.output, "Stage timing has to be printed."
    assert ExtensionCertificate.read(path)["construct"]["points"] == 277, "Certificate is wrong."

    result = runner.invoke(main, ["construct", "--quiet", "--workers", "0"])
    assert result.exit_code == 2, "Configuration errors exit with 2."


def test_cached_points_with_other_root(cache_dir, tmp_path):
    """tester for the root check on a cached point set"""

    copy = tmp_path / "cache"
    shutil.copytree(cache_dir, copy)
    config = PipelineConfig(stages=["construct"], cache_dir=copy, progress=False)
    twodist.run(config)

    stored = copy / "construct" / "points.lat"
    points = read_point_set(stored)
    key = json.loads((copy / "construct" / "manifest.json").read_text())["key"]
    flipped = PointSet277(points.lattice, -points.root)
    ArtifactCache(copy).store(
        Stage.construct, key, lambda path: write_point_set(flipped, path), name="points.lat"
    )
    with pytest.raises(ConstructionFailed):
        twodist.run(config)


def test_unreadable_artifact_is_recomputed(tmp_path):
    """tester for a cached file that passes its hash but cannot be parsed"""

    cache = ArtifactCache(tmp_path)
    context = RunContext(config=PipelineConfig(progress=False), cache=cache)
    cache.store(Stage.embed, "key", lambda path: path.write_text("2 1\n2 1\n1 2\nnothing 0\n"), name="l.lat")
    with pytest.raises(CacheInvalid):
        cache.load(Stage.embed, "key", read_lattice, name="l.lat")

    a2 = GramLattice(IntMatrix([[2, 1], [1, 2]]))
    with pytest.warns(RuntimeWarning):
        value = context.cached(Stage.embed, "key", lambda: a2, read_lattice, write_lattice, name="l.lat")
    assert value.gram == a2.gram, "Unreadable entry has to be recomputed."
    assert cache.load(Stage.embed, "key", read_lattice, name="l.lat").gram == a2.gram, (
        "Recomputed lattice has to replace the broken file."
    )


def _failing_stage(error):
    def stage(context):
        raise error

    return stage


def test_cli_exit_codes(monkeypatch):
    """tester for the exit codes of failed claims and invalid input"""

    runner = CliRunner()
    monkeypatch.setitem(pipeline.STAGES, Stage.code, _failing_stage(CountMismatch("72 words.")))
    result = runner.invoke(main, ["construct", "--quiet"])
    assert result.exit_code == 1, "A failed claim exits with 1."
    assert "CountMismatch" in result.output, "The failing claim has to be reported."

    monkeypatch.setitem(pipeline.STAGES, Stage.code, _failing_stage(DimensionMismatch("2 != 3")))
    result = runner.invoke(main, ["construct", "--quiet"])
    assert result.exit_code == 2, "Malformed input exits with 2."
    assert "DimensionMismatch" in result.output, "The input error has to be reported."

    monkeypatch.setenv("TWODIST_WORKERS", "many")
    result = runner.invoke(main, ["construct", "--quiet"])
    assert result.exit_code == 2, "An invalid worker count exits with 2."
