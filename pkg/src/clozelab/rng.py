"""Deterministic seed derivation.

Every random draw in the package comes from ``random.Random`` (Mersenne
Twister) seeded with an integer. Substream seeds are derived by hashing a
path of labels with SHA-256, so the same (root seed, path) pair yields the
same stream on any machine and any PYTHONHASHSEED.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(root: int, *path: object) -> int:
    """Derive a child seed from a root seed and a label path."""
    text = str(root) + "".join("/" + str(p) for p in path)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def substream(root: int, *path: object) -> random.Random:
    """A fresh Mersenne Twister positioned at the derived substream."""
    return random.Random(derive_seed(root, *path))
