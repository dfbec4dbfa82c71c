"""Method loader - resolves registered method names to adapters."""

import importlib
from typing import Any

from zerobench.core.errors import UnknownNameError
from zerobench.methods.base import MethodAdapter

# Built-in method mappings (name -> module:attribute)
BUILTIN_METHODS: dict[str, str] = {
    "t_hard": "zerobench.methods.denoising:T_HARD",
    "t_soft": "zerobench.methods.denoising:T_SOFT",
    "empty_space": "zerobench.methods.denoising:EMPTY_SPACE",
    "delaunay": "zerobench.methods.denoising:DELAUNAY",
    "sst_rd": "zerobench.methods.denoising:SST_RD",
    "envelope_test": "zerobench.methods.detection:ENVELOPE_TEST",
    "mad_test": "zerobench.methods.detection:MAD_TEST",
    "rank_test": "zerobench.methods.detection:RANK_TEST",
}


def _load_attribute(path: str) -> Any:
    """Load an object from a "module.path:name" reference."""
    module_name, attribute = path.split(":")
    mod = importlib.import_module(module_name)
    return getattr(mod, attribute)


def load_method(name: str) -> MethodAdapter:
    """Resolve a method name to its adapter.

    Raises:
        UnknownNameError: If the name is not registered.
    """
    if name not in BUILTIN_METHODS:
        raise UnknownNameError("method", name, list(BUILTIN_METHODS))
    adapter = _load_attribute(BUILTIN_METHODS[name])
    if not isinstance(adapter, MethodAdapter):
        raise TypeError(f"{BUILTIN_METHODS[name]} is not a MethodAdapter")
    return adapter


def available_methods() -> list[MethodAdapter]:
    """All registered adapters in name order."""
    return [load_method(name) for name in sorted(BUILTIN_METHODS)]
