"""Global size caps.

Defaults are deliberately small; every check in the library runs on tiny
instances.  ``WORKBENCH_MAX_CELLS`` in the environment overrides all caps at
once, and :func:`size_caps` overrides them locally.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

from .errors import SizeBoundExceeded

ENV_VAR = "WORKBENCH_MAX_CELLS"


@dataclass(frozen=True)
class Caps:
    max_objects: int = 64
    max_morphisms: int = 512
    max_cells: int = 50_000
    max_enumeration: int = 500_000


_override: ContextVar[Caps | None] = ContextVar("fincatlab_caps", default=None)


def caps() -> Caps:
    local = _override.get()
    if local is not None:
        return local
    env = os.environ.get(ENV_VAR)
    if env:
        n = int(env)
        return Caps(n, n, n, max(n, Caps.max_enumeration))
    return Caps()


@contextmanager
def size_caps(**kwargs):
    token = _override.set(replace(caps(), **kwargs))
    try:
        yield caps()
    finally:
        _override.reset(token)


def check_category_size(n_objects: int, n_morphisms: int, what: str = "category") -> None:
    c = caps()
    if n_objects > c.max_objects:
        raise SizeBoundExceeded(
            f"{what}: {n_objects} objects exceeds cap {c.max_objects}",
            {"objects": n_objects, "cap": c.max_objects},
        )
    if n_morphisms > c.max_morphisms:
        raise SizeBoundExceeded(
            f"{what}: {n_morphisms} morphisms exceeds cap {c.max_morphisms}",
            {"morphisms": n_morphisms, "cap": c.max_morphisms},
        )


def check_cells(n_cells: int, level: int, what: str = "simplicial set") -> None:
    c = caps()
    if n_cells > c.max_cells:
        raise SizeBoundExceeded(
            f"{what}: {n_cells} cells at level {level} exceeds cap {c.max_cells}",
            {"level": level, "cells": n_cells, "cap": c.max_cells},
        )
