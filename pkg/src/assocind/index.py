"""Index of the Lie algebra ``A^L`` derived from an associative algebra ``A``.

The index is ``dim A - rank B`` where ``B`` is the commutator (bracket) form
``F([e_i, e_j])``, taken at a generic functional.  Two routes:

* randomized: rank of ``B`` at seeded uniform functionals over a large prime
  field, minimum kernel dimension over the trials;
* symbolic: rank of ``B`` with indeterminate entries, by fraction-free
  elimination over ``QQ[f_1..f_n]``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .algebra import Functional, StructureConstants, commutator_matrix_at
from .scalars.fields import DEFAULT_PRIME, PrimeField

DEFAULT_TRIALS = 5
DEFAULT_SEED = 0
SYMBOLIC_INDEX_CAP = 12


@dataclass(frozen=True)
class IndexReport:
    dim: int
    generic_rank: int
    index: int
    mode: str
    trials: int
    seed: int | None
    prime: int | None

    def to_json(self) -> dict:
        return asdict(self)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial, derived from ``(seed, trial)`` only."""
    return np.random.default_rng([seed, trial])


def sample_functional(dim: int, K: PrimeField, seed: int, trial: int) -> Functional:
    """The ``trial``-th seeded uniform functional; shared by every randomized routine."""
    return Functional.random(dim, K, trial_rng(seed, trial))


def index_randomized(sc: StructureConstants, trials: int = DEFAULT_TRIALS,
                     seed: int = DEFAULT_SEED, prime: int = DEFAULT_PRIME) -> IndexReport:
    if trials < 1:
        raise ValueError("index_randomized needs trials >= 1")
    K = PrimeField(prime)
    best = None
    for t in range(trials):
        F = sample_functional(sc.dim, K, seed, t)
        r = commutator_matrix_at(sc, F).rank()
        if best is None or r > best:
            best = r
    return IndexReport(dim=sc.dim, generic_rank=best, index=sc.dim - best, mode="randomized",
                       trials=trials, seed=seed, prime=prime)


def kernel_dims_randomized(sc: StructureConstants, trials: int, seed: int, prime: int) -> list[int]:
    """Per-trial ``dim ker B(F)``; the index is their minimum."""
    K = PrimeField(prime)
    return [sc.dim - commutator_matrix_at(sc, sample_functional(sc.dim, K, seed, t)).rank()
            for t in range(trials)]


def index_symbolic(sc: StructureConstants, cap: int = SYMBOLIC_INDEX_CAP) -> IndexReport:
    if sc.dim > cap:
        raise ValueError(f"dimension {sc.dim} exceeds the symbolic cap {cap}; "
                         "use the randomized mode")
    F = Functional.symbolic(sc)
    r = commutator_matrix_at(sc, F).rank()
    return IndexReport(dim=sc.dim, generic_rank=r, index=sc.dim - r, mode="symbolic",
                       trials=0, seed=None, prime=None)
