"""Kernel backend selection.

The compiled extension is preferred; the NumPy fallback is bit-identical and
is used when the extension was not built or when FUSIONLAB_PURE=1 is set in
the environment (read once, at import).
"""

import os

from . import _fallback

if os.environ.get("FUSIONLAB_PURE", "0") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

MAX_DP_VERTICES = _fallback.MAX_DP_VERTICES

auc_scores = _impl.auc_scores
pair_fused_aucs = _impl.pair_fused_aucs
matching_dp_pairs = _impl.matching_dp_pairs


def backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return BACKEND
