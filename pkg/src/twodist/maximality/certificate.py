"""Machine readable record of every certified number"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Text, Union

from semantic_version import SimpleSpec, Version

from twodist.system.exceptions import SchemaError

__all__ = ["ExtensionCertificate", "SCHEMA_VERSION", "jsonable"]


def __dir__():
    return __all__


SCHEMA_VERSION = "1.0.0"
SUPPORTED_SCHEMAS = ">=1.0.0,<2.0.0"


def jsonable(value: Any) -> Any:
    """Integral rationals become ints, others ``"p/q"`` strings; tuples and sets become lists"""
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, (set, frozenset)):
        try:
            ordered = sorted(value)
        except TypeError:
            ordered = sorted(value, key=str)
        return [jsonable(item) for item in ordered]
    if hasattr(value, "item"):
        return value.item()
    return value


@dataclass
class ExtensionCertificate:
    """
    Results of a pipeline run, one section per stage.

    Sections keep the order in which they were recorded, timing fields live
    under ``timing`` only, so two runs of the same configuration produce the
    same document apart from that entry.

    Args:
        sections (``Dict[Text, Dict[Text, Any]]``): certified values per stage.
        timing (``Dict[Text, float]``): wall-clock seconds per stage.
        workers (``int``, default ``1``): processes used for the enumeration.
        schema_version (``Text``): version of the document layout.
    """

    sections: Dict[Text, Dict[Text, Any]] = field(default_factory=dict)
    timing: Dict[Text, float] = field(default_factory=dict)
    workers: int = 1
    schema_version: Text = SCHEMA_VERSION

    def __contains__(self, stage: Text) -> bool:
        return str(stage) in self.sections

    def __getitem__(self, stage: Text) -> Dict[Text, Any]:
        return self.sections[str(stage)]

    def record(self, stage: Text, values: Dict[Text, Any], seconds: Optional[float] = None) -> None:
        """Store the values of a stage, replacing earlier ones"""
        self.sections[str(stage)] = jsonable(values)
        if seconds is not None:
            self.timing[str(stage)] = round(float(seconds), 3)

    def update(self, other: "ExtensionCertificate") -> None:
        for stage, values in other.sections.items():
            self.record(stage, values, other.timing.get(stage))

    def to_dict(self) -> Dict[Text, Any]:
        return {
            "schema_version": self.schema_version,
            "workers": self.workers,
            "sections": self.sections,
            "timing": {"wall_clock_seconds": self.timing},
        }

    def to_json(self) -> Text:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: Text) -> "ExtensionCertificate":
        """
        Raises:
            :obj:`~twodist.system.exceptions.SchemaError`: if the document
              has no schema version or one this version cannot read.
        """
        data = json.loads(text)
        version = data.get("schema_version")
        if version is None:
            raise SchemaError("Certificate without schema version.")
        if Version(version) not in SimpleSpec(SUPPORTED_SCHEMAS):
            raise SchemaError(
                f"Certificate schema {version} is not supported, expected {SUPPORTED_SCHEMAS}."
            )
        return cls(
            sections=data.get("sections", {}),
            timing=data.get("timing", {}).get("wall_clock_seconds", {}),
            workers=data.get("workers", 1),
            schema_version=version,
        )

    def write(self, path: Union[Text, Path]) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def read(cls, path: Union[Text, Path]) -> "ExtensionCertificate":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))
