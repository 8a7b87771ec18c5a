"""Computing, normalizing, proving and deciding equations over meadows."""
from __future__ import annotations

__version__ = "0.1.0"
