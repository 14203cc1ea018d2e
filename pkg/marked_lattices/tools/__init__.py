"""Command implementations for marked-lattices.

Every tool takes a validated pydantic input and returns a report dict with a
``status`` key; failures come back as error reports carrying their exit code.
"""

from .compactify import compactify
from .compare import compare
from .reduce import reduce
from .split import split
from .verify import verify

__all__ = ["compactify", "compare", "reduce", "split", "verify"]
