"""JSON artifacts: trees, wavelet systems, signals, coefficient pyramids.

Everything is plain JSON with complex numbers as [re, im] pairs and all
tables in canonical little-endian index order, so the files stay
human-auditable and byte-stable across runs.
"""

from __future__ import annotations

import json

import numpy as np

from .mask import MaskTable
from .refinable import SpectrumTable, StepFunction
from .transform import CoeffGrid, CoeffPyramid, shift_key_digits
from .tree import RootedTree
from .wavelet import WaveletSystem


class FormatError(ValueError):
    """Malformed or mistyped input file."""


def _cpx_out(values) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


def _cpx_in(pairs) -> np.ndarray:
    try:
        return np.array([complex(re, im) for re, im in pairs])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad complex array: {exc}") from exc


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top-level JSON object expected")
    return data


def _require(data: dict, key: str):
    if key not in data:
        raise FormatError(f"missing key {key!r}")
    return data[key]


# -- trees --


def tree_to_dict(tree: RootedTree, phases: dict | None = None) -> dict:
    out = {"p": tree.p, "parent": list(tree.parent)}
    if phases:
        out["phases_turns"] = {f"{j}->{i}": float(t) for (j, i), t in sorted(phases.items())}
    return out


def tree_from_dict(data: dict) -> tuple[RootedTree, dict]:
    p = int(_require(data, "p"))
    tree = RootedTree.validate(_require(data, "parent"), p)
    phases = {}
    for key, turn in (data.get("phases_turns") or {}).items():
        try:
            j, i = key.split("->")
            phases[(int(j), int(i))] = float(turn)
        except ValueError as exc:
            raise FormatError(f"bad phase key {key!r}") from exc
    return tree, phases


# -- step functions / signals --


def step_to_dict(f: StepFunction) -> dict:
    return {
        "p": f.p,
        "support_level": f.support_level,
        "resolution_level": f.resolution_level,
        "values": _cpx_out(f.values),
    }


def step_from_dict(data: dict) -> StepFunction:
    try:
        return StepFunction(
            int(_require(data, "p")),
            int(_require(data, "support_level")),
            int(_require(data, "resolution_level")),
            _cpx_in(_require(data, "values")),
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# -- wavelet systems --


def system_to_dict(system: WaveletSystem) -> dict:
    return {
        "p": system.p,
        "M": system.M,
        "parent": list(system.tree.parent),
        "lambda": _cpx_out(system.mask.lam),
        "beta": _cpx_out(system.beta),
        "beta_l": [_cpx_out(bl) for bl in system.beta_l],
        "phi": step_to_dict(system.phi),
        "psi": [step_to_dict(f) for f in system.psi],
        "phi_hat": {"band": system.phi_hat.band, "values": _cpx_out(system.phi_hat.values)},
    }


def system_from_dict(data: dict) -> WaveletSystem:
    try:
        p = int(_require(data, "p"))
        tree = RootedTree.validate(_require(data, "parent"), p)
        mask = MaskTable(p, _cpx_in(_require(data, "lambda")))
        phi_hat_raw = _require(data, "phi_hat")
        phi_hat = SpectrumTable(p, int(_require(phi_hat_raw, "band")), _cpx_in(phi_hat_raw["values"]))
        return WaveletSystem(
            p=p,
            M=int(_require(data, "M")),
            tree=tree,
            mask=mask,
            beta=_cpx_in(_require(data, "beta")),
            beta_l=tuple(_cpx_in(bl) for bl in _require(data, "beta_l")),
            phi=step_from_dict(_require(data, "phi")),
            phi_hat=phi_hat,
            psi=tuple(step_from_dict(d) for d in _require(data, "psi")),
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# -- coefficient grids and pyramids --


def grid_to_dict(grid: CoeffGrid) -> dict:
    entries = []
    for key in sorted(grid.entries):
        v = complex(grid.entries[key])
        entries.append({"shift": list(shift_key_digits(key, grid.p)), "value": [v.real, v.imag]})
    return {"level": grid.level, "entries": entries}


def grid_from_dict(data: dict, p: int) -> CoeffGrid:
    entries = {}
    for item in _require(data, "entries"):
        digits = _require(item, "shift")
        key = sum(int(d) * p**i for i, d in enumerate(digits))
        re, im = _require(item, "value")
        entries[key] = complex(re, im)
    return CoeffGrid(p, int(_require(data, "level")), entries)


def pyramid_to_dict(pyramid: CoeffPyramid) -> dict:
    return {
        "p": pyramid.p,
        "approx": grid_to_dict(pyramid.approx),
        "details": [[grid_to_dict(g) for g in level] for level in pyramid.details],
    }


def pyramid_from_dict(data: dict) -> CoeffPyramid:
    p = int(_require(data, "p"))
    approx = grid_from_dict(_require(data, "approx"), p)
    details = tuple(
        tuple(grid_from_dict(g, p) for g in level) for level in _require(data, "details")
    )
    return CoeffPyramid(p, approx, details)
