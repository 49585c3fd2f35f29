"""Force-layout kernel selection.

The compiled Cython extension is preferred when present; the numpy fallback is
picked automatically otherwise. GTRBENCH_FORCE_FALLBACK=1 pins the fallback,
which the layout benchmark uses to compare both paths.
"""

from __future__ import annotations

import os

from . import fallback

if os.environ.get("GTRBENCH_FORCE_FALLBACK") == "1":
    _impl = fallback
    HAVE_COMPILED = False
else:
    try:
        from . import _forcelayout as _impl  # type: ignore[attr-defined]

        HAVE_COMPILED = True
    except ImportError:
        _impl = fallback
        HAVE_COMPILED = False

fr_steps = _impl.fr_steps

__all__ = ["fr_steps", "fallback", "HAVE_COMPILED"]
