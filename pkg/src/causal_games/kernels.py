"""Kernel dispatch: the compiled extension when it was built, else pure Python.

Set ``CAUSAL_GAMES_PURE=1`` to force the fallback.
"""

import os

from causal_games import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("CAUSAL_GAMES_PURE") != "1":
    try:
        from causal_games import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

CODE_H = _pykernels.CODE_H
CODE_E = _pykernels.CODE_E
CODE_Z = _pykernels.CODE_Z

closure_restrict = _impl.closure_restrict
has_cycle = _impl.has_cycle
mrel_encode = _impl.mrel_encode
mrel_decode = _impl.mrel_decode
