"""Backend selection shared by the facade modules."""

import importlib
import os


def pure():
    return bool(os.environ.get("LINPBT_PURE"))


def load(compiled, fallback):
    """Import ``compiled`` unless pure mode is forced or it is not built."""
    if not pure():
        try:
            return importlib.import_module(compiled, __package__)
        except ImportError:
            pass
    return importlib.import_module(fallback, __package__)
