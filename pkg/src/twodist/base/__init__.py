from .artifact_cache import ArtifactCache, fingerprint
from .pipeline_config import PipelineConfig

__all__ = ["ArtifactCache", "PipelineConfig", "fingerprint"]
