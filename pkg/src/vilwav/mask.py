"""Tree-generated masks: the p^2 values lambda_{i+pj} defining m0.

The mask lives on the cosets of the level -1 annihilator inside the level 1
annihilator, indexed by the digit pair (alpha_-1, alpha_0) = (i, j) as
i + p*j.  lambda_0 = 1, every edge j->i of the tree carries a unimodular
value, everything else is zero; evaluation off the level-1 annihilator uses
the periodic extension (digits at positions >= 1 are ignored).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import CHARACTER, DigitVector, digit_table, is_prime, unit_roots
from .tree import RootedTree, TreeError


class MaskError(ValueError):
    pass


@dataclass(frozen=True)
class MaskTable:
    p: int
    lam: np.ndarray = field(repr=False)  # length p^2, entry i + p*j

    def __post_init__(self):
        if not is_prime(self.p):
            raise MaskError(f"p={self.p} is not prime")
        lam = np.asarray(self.lam, dtype=complex)
        lam.setflags(write=False)
        object.__setattr__(self, "lam", lam)
        if lam.shape != (self.p**2,):
            raise MaskError(f"lambda table must have length {self.p**2}")

    def value(self, i: int, j: int) -> complex:
        return complex(self.lam[i + self.p * j])

    def eval(self, chi: DigitVector) -> complex:
        """m0 at a coset representative; periodic in the digits at positions >= 1.

        The representative must have no digits below position -1 (the mask is
        constant on those cosets, callers canonicalize explicitly).
        """
        if chi.kind != CHARACTER:
            raise MaskError("mask is evaluated on characters")
        for nu in range(chi.lo, min(-1, chi.hi)):
            if chi.digit(nu) != 0:
                raise MaskError(f"nonzero digit at position {nu} < -1; not a coset representative")
        return self.value(chi.digit(-1), chi.digit(0))


def mask_from_tree(tree: RootedTree, phases: dict[tuple[int, int], float] | None = None) -> MaskTable:
    """Build the mask of a tree; phases map edge (parent, child) -> turns in [0, 1)."""
    p = tree.p
    phases = dict(phases or {})
    edges = set(tree.edges())
    for edge in phases:
        if tuple(edge) not in edges:
            raise MaskError(f"phase given for non-edge {edge}")
    lam = np.zeros(p * p, dtype=complex)
    lam[0] = 1.0
    for j, i in edges:
        turn = float(phases.get((j, i), 0.0))
        lam[i + p * j] = np.exp(2j * np.pi * turn) if turn else 1.0
    return MaskTable(p, lam)


def mask_to_tree(mask: MaskTable, tol: float = 1e-10) -> tuple[RootedTree, dict[tuple[int, int], float]]:
    """Recover the generating tree and edge phases from a {0,1}-modulus mask.

    Raises MaskError when a row violates the unit-sum condition and TreeError
    (with the cycle named) when the recovered parent graph is not a tree.
    """
    p = mask.p
    mods = np.abs(mask.lam)
    if np.any(np.minimum(mods, np.abs(mods - 1.0)) > tol):
        raise MaskError("mask moduli are not {0,1}-valued")
    if abs(mask.lam[0] - 1.0) > tol:
        raise MaskError(f"lambda_0 = {mask.lam[0]}, expected exactly 1")
    parent = [0] * p
    phases: dict[tuple[int, int], float] = {}
    for i in range(1, p):
        js = [j for j in range(p) if mods[i + p * j] > 0.5]
        if len(js) != 1:
            raise MaskError(
                f"row i={i} has {len(js)} unimodular entries, expected exactly 1 "
                "(unit row-sum condition fails)"
            )
        parent[i] = js[0]
        value = mask.lam[i + p * js[0]]
        if abs(value - 1.0) > tol:
            phases[(js[0], i)] = float(np.angle(value) / (2 * np.pi)) % 1.0
    return RootedTree.validate(parent, p), phases


@dataclass(frozen=True)
class RowReport:
    sums: tuple[float, ...]
    max_deviation: float

    @property
    def ok(self) -> bool:
        return self.max_deviation < 1e-10


def check_row_condition(mask: MaskTable) -> RowReport:
    """Per-residue sums sum_j |lambda_{i+pj}|^2, which must all equal 1."""
    p = mask.p
    sums = np.abs(mask.lam.reshape(p, p)) ** 2  # [j, i]
    row = sums.sum(axis=0)
    return RowReport(tuple(float(s) for s in row), float(np.abs(row - 1.0).max()))


@dataclass(frozen=True)
class VanishingReport:
    max_abs_product: float
    worst_string: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.max_abs_product == 0.0


def check_vanishing(mask: MaskTable, M: int) -> VanishingReport:
    """Exhaustive product check on the shell between levels M and M+1.

    For every digit string (alpha_-1, ..., alpha_M) with alpha_M != 0 the
    product of mask values along the dilation orbit must vanish.
    """
    p = mask.p
    w = M + 2  # digits alpha_-1 .. alpha_M
    digits = digit_table(p, w)
    prod = np.ones(p**w, dtype=complex)
    for k in range(w):
        lo = digits[:, k]
        hi = digits[:, k + 1] if k + 1 < w else np.zeros(len(digits), dtype=int)
        prod *= mask.lam[lo + p * hi]
    shell = digits[:, w - 1] != 0
    mags = np.abs(prod[shell])
    worst = int(np.argmax(mags))
    worst_string = tuple(int(d) for d in digits[shell][worst])
    return VanishingReport(float(mags.max()), worst_string if mags.max() > 0 else None)
