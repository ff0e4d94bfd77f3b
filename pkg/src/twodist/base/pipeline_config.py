"""Configuration of a pipeline run"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import FrozenSet, Iterable, List, Optional, Text, Union

from twodist.system.exceptions import ConfigurationError, UnknownStage
from twodist.utils import Stage

__all__ = ["PipelineConfig", "default_workers"]


def __dir__():
    return __all__


def default_workers() -> int:
    """Worker count from ``TWODIST_WORKERS``, one if unset"""
    value = os.environ.get("TWODIST_WORKERS", "1")
    try:
        return int(value)
    except ValueError as err:
        raise ConfigurationError(f"TWODIST_WORKERS has to be an integer, got {value!r}.") from err


@dataclass
class PipelineConfig:
    r"""
    Container for everything that changes how the pipeline runs but not what
    it certifies.

    Args:
        cache_dir (``Path``, default ``None``): directory for intermediate
          artifacts, no caching if ``None``.
        workers (``int``, default ``1``): processes used by the enumeration.
        stages (``Iterable[Text]``, default all): requested stages. Stages they
          depend on are added by :meth:`resolved_stages`.
        long_test_enabled (``bool``, default ``True``): run the full
          enumeration of the dual lattice instead of the bounded checks only.
        certificate_path (``Path``, default ``None``): where to write the
          certificate JSON.
        progress (``bool``, default ``True``): show progress bars.
        block_size (``int``, default ``65536``): rows per enumeration block.
        warmup_size (``int``, default ``10000``): candidates used to order the
          admissibility tests.

    Raises:
        :obj:`~twodist.system.exceptions.ConfigurationError`: for non-positive
          sizes or worker counts.
        :obj:`~twodist.system.exceptions.UnknownStage`: for a stage name that
          does not exist.
    """

    cache_dir: Optional[Union[Text, Path]] = None
    """Directory holding cached artifacts"""
    workers: int = 1
    """Number of processes for the short vector enumeration"""
    stages: Iterable[Union[Text, Stage]] = field(default_factory=Stage.names)
    """Requested stages"""
    long_test_enabled: bool = True
    """Full enumeration of :math:`M^*` over :math:`[5/2, 6]`"""
    certificate_path: Optional[Union[Text, Path]] = None
    """Output path of the certificate"""
    progress: bool = True
    """Show progress bars"""
    block_size: int = 65536
    """Rows per enumeration block"""
    warmup_size: int = 10_000
    """Sample size for the admissibility ordering"""

    def __post_init__(self):
        if isinstance(self.workers, bool) or not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigurationError(f"Number of workers has to be a positive integer, got {self.workers}.")
        if self.block_size < 1:
            raise ConfigurationError(f"Block size has to be positive, got {self.block_size}.")
        if self.warmup_size < 0:
            raise ConfigurationError(f"Warmup size can not be negative, got {self.warmup_size}.")
        stages = []
        for stage in self.stages:
            name = str(stage)
            if name not in Stage.names():
                raise UnknownStage(f"Unknown stage {name!r}, available: {', '.join(Stage.names())}.")
            stages.append(Stage[name])
        self.stages = frozenset(stages)
        if self.cache_dir is not None:
            self.cache_dir = Path(self.cache_dir)
        if self.certificate_path is not None:
            self.certificate_path = Path(self.certificate_path)

    def resolved_stages(self) -> List[Stage]:
        """Requested stages and everything they need, in execution order"""
        needed = set()
        pending = list(self.stages)
        while pending:
            stage = pending.pop()
            if stage.name not in needed:
                needed.add(stage.name)
                pending.extend(stage.requires)
        return [stage for stage in Stage if stage.name in needed]

    @property
    def requested(self) -> FrozenSet[Stage]:
        return frozenset(self.stages)
