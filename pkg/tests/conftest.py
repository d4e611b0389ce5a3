from __future__ import annotations

import os
import tempfile

# keep catalog caches out of the user's home during tests
_CACHE = tempfile.mkdtemp(prefix="cochar-test-cache-")
os.environ["COCHAR_CACHE_DIR"] = _CACHE
