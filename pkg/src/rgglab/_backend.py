"""Kernel backend selection.

The compiled extension (rgglab._core) is preferred; the pure-Python twin
(rgglab._core_py) is a drop-in replacement with bit-identical output.
Set RGGLAB_BACKEND=python or RGGLAB_BACKEND=compiled to force a choice;
forcing "compiled" raises if the extension is missing.
"""

import os

_choice = os.environ.get("RGGLAB_BACKEND", "auto").lower()

if _choice == "python":
    from rgglab import _core_py as core
    BACKEND = "python"
elif _choice == "compiled":
    from rgglab import _core as core  # type: ignore[no-redef]
    BACKEND = "compiled"
elif _choice == "auto":
    try:
        from rgglab import _core as core  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        from rgglab import _core_py as core  # type: ignore[no-redef]
        BACKEND = "python"
else:
    raise RuntimeError(f"unknown RGGLAB_BACKEND value: {_choice!r}")
