"""Kernel backend selection and seeded RNG streams.

The env var HEIS_KERNELS picks the kernel lane:

* unset or "auto": numba JIT when importable, pure numpy otherwise
* "numba": require numba, fail loudly if missing
* "numpy": never import numba, use the fallback lane

Random streams are counter-based (Philox): every unit of work (solver
restart, rounding trial, search restart) draws from a generator that is a
pure function of (seed, domain, index), so units can run in any order or
concurrently and still reproduce bitwise.
"""

from __future__ import annotations

import os

import numpy as np

_choice = os.environ.get("HEIS_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "", "numba", "numpy"):
    raise RuntimeError(
        f"HEIS_KERNELS={_choice!r} not understood; use 'auto', 'numba' or 'numpy'"
    )

HAS_NUMBA = False
if _choice != "numpy":
    try:
        import numba  # noqa: F401

        HAS_NUMBA = True
    except ImportError:
        if _choice == "numba":
            raise
        numba = None
else:
    numba = None

USE_NUMBA = HAS_NUMBA and _choice != "numpy"


def maybe_jit(**kwargs):
    """Decorator: numba.njit(cache=True, **kwargs) on the JIT lane, no-op otherwise."""

    def wrap(fn):
        if USE_NUMBA:
            return numba.njit(cache=True, **kwargs)(fn)
        return fn

    return wrap


# Stream domains. Keeping them distinct means a pipeline can reuse one user
# seed for solving, rounding and searching without correlating the draws.
DOMAIN_SOLVER = 0
DOMAIN_ROUNDING = 1
DOMAIN_PRODUCT_SEARCH = 2
DOMAIN_GENERATE = 3
DOMAIN_POWER = 4

_MASK64 = (1 << 64) - 1


def rng_for(seed: int, domain: int, index: int) -> np.random.Generator:
    """Generator that is a pure function of (seed, domain, index)."""
    key = np.array([seed & _MASK64, index & _MASK64], dtype=np.uint64)
    counter = np.array([0, 0, 0, domain], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))
