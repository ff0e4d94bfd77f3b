"""Stage registry and the end to end run"""

import json
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Text, TypeVar

from twodist.base import ArtifactCache, PipelineConfig, fingerprint
from twodist.construction import (
    PointSet277,
    affine_hyperplane_check,
    assemble_point_set,
    build_u,
    distance_report,
    embed_points,
    find_switching_root,
    read_point_set,
    verify_parts_lemma,
    verify_root_formula,
    verify_two_distance,
    write_point_set,
)
from twodist.exactla.matrices import IntMatrix
from twodist.exactla.spectrum import certify_spectrum_gamma, certify_spectrum_seidel
from twodist.gf3codes import (
    TernaryCode,
    dual,
    is_perfect,
    minimum_distance,
    ternary_golay,
    weight_enumerator,
)
from twodist.lattice import GramLattice, enumerate_short, norm, read_lattice, write_lattice
from twodist.maximality import (
    ExtensionCertificate,
    TranslatedSet,
    bounded_checks,
    build_m,
    certify_unique_extension,
    hyperplane_maximality,
    prepare_dual,
    translated_set,
    verify_w_extension,
)
from twodist.system.exceptions import (
    CacheInvalid,
    CodeSizeMismatch,
    ConstructionFailed,
    CountMismatch,
    NotEquitable,
    RootNotFound,
)
from twodist.twograph import (
    PARTS,
    Graph276,
    build_gamma,
    degrees,
    edge_count,
    quotient_matrix,
    seidel_matrix,
    x_block_is_complete_multipartite,
)
from twodist.utils import Stage

__all__ = ["run", "RunContext", "STAGES"]


def __dir__():
    return __all__


T = TypeVar("T")

EXPECTED_QUOTIENT = [[30, 162], [22, 132]]
EXPECTED_EDGES = 21_879
EXPECTED_DISTANCES = {"pairs": 38_226, "distance_4": 21_912, "distance_6": 16_314}


@dataclass
class RunContext:
    """Objects handed from one stage to the next"""

    config: PipelineConfig
    cache: Optional[ArtifactCache] = None
    y_code: Optional[TernaryCode] = None
    graph: Optional[Graph276] = None
    graph_key: Optional[Text] = None
    lattice: Optional[GramLattice] = None
    points: Optional[PointSet277] = None
    points_key: Optional[Text] = None
    translated: Optional[TranslatedSet] = None

    def cached(
        self,
        stage: Stage,
        key: Text,
        compute: Callable[[], T],
        reader: Callable[[Path], T],
        writer: Callable[[T, Path], None],
        name: Text = "artifact",
    ) -> T:
        """Reuse a stored artifact with matching key, otherwise compute and store it"""
        if self.cache is None:
            return compute()
        try:
            value = self.cache.load(stage, key, reader, name)
        except CacheInvalid as err:
            warnings.warn(f"{err} Recomputing.", category=RuntimeWarning)
            self.cache.invalidate(stage)
            value = None
        if value is None:
            value = compute()
            self.cache.store(stage, key, lambda path: writer(value, path), name)
        return value


def _lattice_key(lattice: GramLattice) -> Text:
    return fingerprint(
        json.dumps([[str(x) for x in row] for row in lattice.gram.tolist()]),
        json.dumps({label: list(p.coords) for label, p in lattice.named_points.items()}),
    )


def _code_stage(context: RunContext) -> Dict[Text, Any]:
    golay = ternary_golay()
    y_code = dual(golay)
    if len(y_code) != 243:
        raise CodeSizeMismatch(f"Dual code has {len(y_code)} words, expected 243.")
    enumerator = weight_enumerator(y_code)
    if enumerator.get(6, 0) != 132:
        raise CountMismatch(f"Dual code has {enumerator.get(6, 0)} words of weight 6, expected 132.")
    context.y_code = y_code
    return {
        "code_size": len(golay),
        "dual_size": len(y_code),
        "minimum_distance": minimum_distance(golay),
        "perfect": is_perfect(golay, 2),
        "dual_weight_enumerator": dict(sorted(enumerator.items())),
        "dual_weight_6": enumerator.get(6, 0),
    }


def _graph_stage(context: RunContext) -> Dict[Text, Any]:
    graph = build_gamma(context.y_code)
    quotient = quotient_matrix(graph).tolist()
    if quotient != EXPECTED_QUOTIENT:
        raise NotEquitable(f"Quotient matrix is {quotient}, expected {EXPECTED_QUOTIENT}.")
    if not x_block_is_complete_multipartite(graph):
        raise NotEquitable("X does not induce the complete 11-partite graph.")
    edges = edge_count(graph)
    if edges != EXPECTED_EDGES:
        raise CountMismatch(f"Graph has {edges} edges, expected {EXPECTED_EDGES}.")
    context.graph = graph
    context.graph_key = fingerprint(graph.adjacency.astype("uint8").tobytes())
    return {
        "x_size": graph.x_size,
        "y_size": len(graph.y_vertices),
        "quotient_matrix": quotient,
        "degrees": degrees(graph),
        "edges": edges,
    }


def _spectrum_stage(context: RunContext) -> Dict[Text, Any]:
    def compute() -> Dict[Text, Any]:
        gamma = certify_spectrum_gamma(context.graph.adjacency_matrix())
        seidel = certify_spectrum_seidel(seidel_matrix(context.graph))
        return {"gamma": gamma.to_dict(), "seidel": seidel.to_dict()}

    return context.cached(
        Stage.spectrum,
        context.graph_key,
        compute,
        reader=lambda path: json.loads(path.read_text(encoding="utf-8")),
        writer=lambda value, path: path.write_text(json.dumps(value), encoding="utf-8"),
        name="spectrum.json",
    )


def _embed_stage(context: RunContext) -> Dict[Text, Any]:
    lattice = context.cached(
        Stage.embed,
        context.graph_key,
        lambda: embed_points(context.graph),
        reader=read_lattice,
        writer=write_lattice,
        name="embedding.lat",
    )
    gram = lattice.point_gram()
    if gram.to_int64().diagonal().tolist() != [3] * gram.rows:
        raise CountMismatch("Embedded points do not all have norm 3.")
    expected = context.graph.adjacency_matrix() + IntMatrix.identity(gram.rows) * 3
    if not gram == expected:
        raise CountMismatch("Gram matrix of the embedded points differs from A + 3I.")
    report = distance_report(lattice)
    context.lattice = lattice
    return {"rank": lattice.rank, "determinant": lattice.determinant, "distances": report.to_dict()}


def _construct_stage(context: RunContext) -> Dict[Text, Any]:
    lattice = context.lattice
    lattice_key = _lattice_key(lattice)
    root_count = enumerate_short(lattice, Fraction(2), Fraction(2)).count()
    if root_count != 1:
        raise RootNotFound(f"Found {root_count} pairs of norm 2 vectors, expected one.")
    root = find_switching_root(lattice)
    verify_root_formula(lattice, root)

    points = context.cached(
        Stage.construct,
        lattice_key,
        lambda: assemble_point_set(lattice, root),
        read_point_set,
        write_point_set,
        name="points.lat",
    )
    if points.root != root:
        raise ConstructionFailed("Stored point set was built on a different switching root.")
    u_part_independent = all(build_u(lattice, root, part) == points.u for part in range(1, PARTS + 1))
    if not u_part_independent:
        raise ConstructionFailed("The parts of X do not give the same u.")
    report = verify_two_distance(points).to_dict()
    if report != EXPECTED_DISTANCES:
        raise CountMismatch(f"Distance counts {report}, expected {EXPECTED_DISTANCES}.")
    verify_parts_lemma(points)
    context.points = points
    context.points_key = fingerprint(lattice_key, _lattice_key(points.lattice), str(points.root.coords))
    return {
        "points": len(points),
        "root": points.root.coords,
        "root_count": root_count,
        "root_norm": norm(points.lattice, points.root),
        "root_formula": True,
        "u": points.u.coords,
        "u_norm": norm(points.lattice, points.u),
        "u_part_independent": u_part_independent,
        "affine_hyperplane": affine_hyperplane_check(points),
        "distances": report,
    }


def _maximality_stage(context: RunContext) -> Dict[Text, Any]:
    config = context.config
    points = context.points
    translated = translated_set(points)
    m = context.cached(
        Stage.maximality, context.points_key, lambda: build_m(translated), read_lattice, write_lattice, name="m.lat"
    )
    dual = context.cached(
        Stage.maximality, context.points_key, lambda: prepare_dual(m), read_lattice, write_lattice, name="dual.lat"
    )
    values: Dict[Text, Any] = bounded_checks(m, translated, dual)
    values["w_extension"] = verify_w_extension(points, points.root)
    values["no_extension_in_hyperplane"] = hyperplane_maximality(
        points, points.root, values["survivor_ambient"]
    )
    values["long"] = config.long_test_enabled
    if config.long_test_enabled:
        certificate = certify_unique_extension(
            m,
            translated,
            points.root,
            points.u,
            workers=config.workers,
            progress=config.progress,
            warmup_size=config.warmup_size,
            block_size=config.block_size,
            dual=dual,
        )
        values.update(certificate["maximality"])
    context.translated = translated
    return values


STAGES: Dict[Stage, Callable[[RunContext], Dict[Text, Any]]] = {
    Stage.code: _code_stage,
    Stage.graph: _graph_stage,
    Stage.spectrum: _spectrum_stage,
    Stage.embed: _embed_stage,
    Stage.construct: _construct_stage,
    Stage.maximality: _maximality_stage,
}
"""Stage implementations, each records its certified values"""


def run(config: PipelineConfig) -> ExtensionCertificate:
    """
    Execute the requested stages and everything they depend on.

    Args:
        config (~twodist.base.pipeline_config.PipelineConfig): run configuration.

    Raises:
        :obj:`~twodist.system.exceptions.VerificationError`: from the first
          stage whose claim fails.

    Returns:
        ~twodist.maximality.certificate.ExtensionCertificate:
        one section per executed stage, also written to
        ``config.certificate_path`` if set.
    """
    context = RunContext(
        config=config,
        cache=None if config.cache_dir is None else ArtifactCache(config.cache_dir),
    )
    certificate = ExtensionCertificate(workers=config.workers)
    for stage in config.resolved_stages():
        start = time.perf_counter()
        values = STAGES[stage](context)
        certificate.record(stage, values, time.perf_counter() - start)
    if config.certificate_path is not None:
        certificate.write(config.certificate_path)
    return certificate
