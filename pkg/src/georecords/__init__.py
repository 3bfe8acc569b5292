"""Left-to-right maxima of words with i.i.d. geometric letters."""

__version__ = "0.1.0"

from .model import Mode, ModelParams, RecordQuery

__all__ = ["Mode", "ModelParams", "RecordQuery", "__version__"]
