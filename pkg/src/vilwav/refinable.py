"""Spectra, step functions, and the finite Fourier machinery between them.

The refinable function is built in frequency as a table over cosets of the
level -1 annihilator (one digit string per coset) and recovered in time as a
step function on cells.  Both sides live on a common digit window, so every
integral here is a finite measure-weighted sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import char_kernel_apply, check_table_size, digit_table
from .mask import MaskTable
from .tree import RootedTree


@dataclass(frozen=True)
class SpectrumTable:
    """Values of a transform on cosets of the level -1 annihilator.

    Entry k holds the value at the coset with digits digits_of(k) on the
    window [-1, band); for the refinable function band = M.
    """

    p: int
    band: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.shape != (self.p ** (self.band + 1),):
            raise ValueError(f"expected {self.p ** (self.band + 1)} entries")

    @property
    def M(self) -> int:
        return self.band

    def norm2(self) -> float:
        """Squared L2 norm against the character-side measure (coset mass 1/p)."""
        return float((np.abs(self.values) ** 2).sum() / self.p)


@dataclass(frozen=True)
class StepFunction:
    """A step function: support in G_{support_level}, constant on G_{resolution_level} cells.

    Entry k is the value on the cell whose digits over the window
    [support_level, resolution_level) are digits_of(k).
    """

    p: int
    support_level: int
    resolution_level: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.resolution_level <= self.support_level:
            raise ValueError("resolution_level must exceed support_level")
        values = np.asarray(self.values, dtype=complex)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.shape != (self.p**self.width,):
            raise ValueError(f"expected {self.p**self.width} cell values")

    @property
    def width(self) -> int:
        return self.resolution_level - self.support_level

    def norm2(self) -> float:
        """Squared L2 norm, cell values against mu-measure p^-resolution."""
        return float((np.abs(self.values) ** 2).sum() * float(self.p) ** -self.resolution_level)


def phi_hat_from_tree(tree: RootedTree, mask: MaskTable) -> SpectrumTable:
    """Spectrum of the refinable function by path products over the tree.

    For each vertex v with root path (0, u_j, ..., v) the digit string
    (v, ..., u_j, 0, ...) receives the product of mask values along the
    path edges times the first-level value; every other entry is zero.
    """
    p, M = tree.p, tree.support_exponent
    check_table_size(p ** (M + 1))
    values = np.zeros(p ** (M + 1), dtype=complex)
    for v in range(p):
        rev = tree.path_to(v)[::-1]  # (v, parent, ..., 0)
        prod = 1.0 + 0j
        for a, b in zip(rev, rev[1:]):
            prod *= mask.value(a, b)
        idx = sum(d * p**t for t, d in enumerate(rev[:-1]))
        values[idx] = prod
    return SpectrumTable(p, M, values)


def spectrum_from_mask_orbit(mask: MaskTable, M: int) -> SpectrumTable:
    """Oracle route: the truncated product of mask values along the dilation orbit."""
    p = mask.p
    w = M + 1
    digits = digit_table(p, w)
    prod = np.ones(p**w, dtype=complex)
    for n in range(M + 2):
        lo = digits[:, n] if n < w else np.zeros(len(digits), dtype=int)
        hi = digits[:, n + 1] if n + 1 < w else np.zeros(len(digits), dtype=int)
        prod = prod * mask.lam[lo + p * hi]
    return SpectrumTable(p, M, prod)


def inverse_transform(spec: SpectrumTable) -> StepFunction:
    """Invert a level -1 coset table to a step function on [-1, band)."""
    p, w = spec.p, spec.band + 1
    check_table_size(p**w)
    values = char_kernel_apply(np.asarray(spec.values), p, w, +1) / p
    return StepFunction(p, -1, spec.band, values)


def forward_transform(f: StepFunction) -> SpectrumTable:
    """Fourier transform of a step function supported in G_{-1}."""
    if f.support_level != -1:
        raise ValueError("forward_transform expects support level -1")
    p, w = f.p, f.width
    values = char_kernel_apply(np.asarray(f.values), p, w, -1) * float(p) ** -f.resolution_level
    return SpectrumTable(p, f.resolution_level, values)


@dataclass(frozen=True)
class ElementaryReport:
    cosets_ok: bool
    contains_base_coset: bool
    shells_ok: bool
    missing_shells: tuple[int, ...]
    message: str

    @property
    def ok(self) -> bool:
        return self.cosets_ok and self.contains_base_coset and self.shells_ok


def check_elementary(spec: SpectrumTable, tol: float = 1e-10) -> ElementaryReport:
    """Is the support a (1, band)-elementary set?

    Needs exactly p support cosets with distinct lowest digits tiling the
    level-0 annihilator, the trivial coset among them, and at least one
    support coset in every shell between consecutive annihilators.
    """
    p, M = spec.p, spec.band
    support = np.flatnonzero(np.abs(spec.values) > tol)
    mods = np.abs(spec.values[support])
    if np.any(np.abs(mods - 1.0) > tol):
        return ElementaryReport(False, False, False, (), "support values are not unimodular")
    xi = support % p
    cosets_ok = len(support) == p and len(set(int(r) for r in xi)) == p
    contains_base = 0 in support
    digits = digit_table(p, M + 1)[support]
    missing = []
    for l in range(M + 1):
        in_shell = (digits[:, l] != 0) & (digits[:, l + 1:] == 0).all(axis=1)
        if not in_shell.any():
            missing.append(l)
    msg = "ok"
    if not cosets_ok:
        msg = f"support is {len(support)} cosets with {len(set(int(r) for r in xi))} distinct residues, wanted p={p} of each"
    elif not contains_base:
        msg = "trivial coset not in support"
    elif missing:
        msg = f"empty shells at levels {missing}"
    return ElementaryReport(cosets_ok, contains_base, not missing, tuple(missing), msg)


@dataclass(frozen=True)
class SpectralOrthoReport:
    sums: tuple[float, ...]
    max_deviation: float

    @property
    def ok(self) -> bool:
        return self.max_deviation < 1e-10


def check_orthonormality_spectral(spec: SpectrumTable) -> SpectralOrthoReport:
    """Partial sums of |values|^2 over each lowest-digit residue; all must be 1."""
    p = spec.p
    sums = (np.abs(spec.values) ** 2).reshape(-1, p).sum(axis=0)
    return SpectralOrthoReport(tuple(float(s) for s in sums), float(np.abs(sums - 1.0).max()))


# -- cell-level machinery: embedding, translation, dilation, Gram oracles --


def embed(f: StepFunction, lo: int, hi: int) -> np.ndarray:
    """Cell values of f on the enclosing window [lo, hi), one entry per G_hi cell."""
    if lo > f.support_level or hi < f.resolution_level:
        raise ValueError("embedding window must contain the function's window")
    p = f.p
    check_table_size(p ** (hi - lo))
    k = np.arange(p ** (hi - lo))
    low_width = f.support_level - lo
    mid = (k // p**low_width) % p**f.width
    out = np.asarray(f.values)[mid].copy()
    if low_width:
        out[k % p**low_width != 0] = 0.0
    return out


def shift_digit(shift: tuple[int, ...], nu: int) -> int:
    """Digit of a translation lattice element at position nu (< 0), little-endian from -1."""
    i = -1 - nu
    if 0 <= i < len(shift):
        return shift[i]
    return 0


def all_shifts(p: int, width: int) -> list[tuple[int, ...]]:
    """Every lattice shift with digits at positions -1 .. -width, canonical order."""
    return [tuple((k // p**i) % p for i in range(width)) for k in range(p**width)]


def translate_dilate(
    f: StepFunction,
    j_dilate: int,
    shift: tuple[int, ...] = (),
    normalized: bool = True,
) -> StepFunction:
    """The function x -> p^(j/2) f(A^j x - h) as a step function.

    `shift` holds the digits of h from position -1 downward; `normalized`
    drops the p^(j/2) basis factor when False.
    """
    p = f.p
    r_new = f.resolution_level + j_dilate
    forced = [mu for mu in range(-len(shift), f.support_level) if shift_digit(shift, mu)]
    s_new = min(forced) + j_dilate if forced else f.support_level + j_dilate
    w = r_new - s_new
    check_table_size(p**w)
    digits = digit_table(p, w)
    ok = np.ones(p**w, dtype=bool)
    for nu in range(s_new, f.support_level + j_dilate):
        ok &= digits[:, nu - s_new] == shift_digit(shift, nu - j_dilate)
    idx = np.zeros(p**w, dtype=np.int64)
    for mu in range(f.support_level, f.resolution_level):
        d = (digits[:, mu + j_dilate - s_new] - shift_digit(shift, mu)) % p
        idx += d * p ** (mu - f.support_level)
    scale = float(p) ** (j_dilate / 2) if normalized else 1.0
    values = np.where(ok, np.asarray(f.values)[idx], 0.0) * scale
    return StepFunction(p, s_new, r_new, values)


def inner_product(f: StepFunction, g: StepFunction) -> complex:
    """Exact integral of f * conj(g) over the common cell refinement."""
    lo = min(f.support_level, g.support_level)
    hi = max(f.resolution_level, g.resolution_level)
    vf = embed(f, lo, hi)
    vg = embed(g, lo, hi)
    return complex(vf @ vg.conj() * float(f.p) ** -hi)


def translated_cell_matrix(f: StepFunction, shifts, lo: int, hi: int) -> np.ndarray:
    """Rows of cell values of f(x - h) on [lo, hi), one row per shift."""
    p = f.p
    w = hi - lo
    check_table_size(p**w * len(shifts))
    base = embed(f, lo, hi)
    digits = digit_table(p, w)
    powers = p ** np.arange(w, dtype=np.int64)
    hmat = np.array([[shift_digit(h, lo + slot) for slot in range(w)] for h in shifts])
    idx = ((digits[None, :, :] - hmat[:, None, :]) % p) @ powers
    return base[idx]


def gram_matrix(f: StepFunction, g: StepFunction, shifts) -> np.ndarray:
    """Gram matrix of the translate families of f and g over the given shifts."""
    lo = min(f.support_level, g.support_level, -max((len(h) for h in shifts), default=0))
    hi = max(f.resolution_level, g.resolution_level)
    F = translated_cell_matrix(f, shifts, lo, hi)
    G = F if g is f else translated_cell_matrix(g, shifts, lo, hi)
    return F @ G.conj().T * float(f.p) ** -hi
