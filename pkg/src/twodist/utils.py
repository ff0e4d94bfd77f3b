from enum import Enum, auto
from typing import List, Text

__all__ = ["Stage"]


class Stage(Enum):
    """
    Stages of the pipeline, in execution order. :attr:`requires` names the
    direct prerequisites of a stage; ``PipelineConfig.resolved_stages`` closes
    a selection under them, so ``construct`` pulls in ``code``, ``graph`` and
    ``embed`` but not ``spectrum``.

        * :obj:`code`: ternary Golay code and its dual.
        * :obj:`graph`: the graph on :math:`X\\cup Y`, equitable partition.
        * :obj:`spectrum`: exact spectra of :math:`A(\\Gamma)` and :math:`S`.
        * :obj:`embed`: lattice embedding of the 276 points.
        * :obj:`construct`: switching root, the point :math:`u`, two-distance check.
        * :obj:`maximality`: dual lattice enumeration and admissibility.

    Stages can be compared against their names:

    .. code-block:: python3

        >>> Stage.embed == "embed"
        True
    """

    code = auto()
    graph = auto()
    spectrum = auto()
    embed = auto()
    construct = auto()
    maximality = auto()

    def __repr__(self):
        return self.name

    def __str__(self):
        return self.name

    def __hash__(self):
        return hash(self.name)

    def __eq__(self, other):
        if isinstance(other, Stage):
            return self.name == other.name
        if isinstance(other, str):
            return self.name == other
        if other is None:
            return False

        raise ValueError(f"Unknown comparison: type({other}) = {type(other)}")

    @property
    def requires(self) -> List["Stage"]:
        """Stages that have to run before this one"""
        return {
            Stage.code: [],
            Stage.graph: [Stage.code],
            Stage.spectrum: [Stage.graph],
            Stage.embed: [Stage.graph],
            Stage.construct: [Stage.embed],
            Stage.maximality: [Stage.construct],
        }[self]

    @staticmethod
    def names() -> List[Text]:
        return [stage.name for stage in Stage]
