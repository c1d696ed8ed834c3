"""Command-line front end.

Exit codes are a stable contract: 0 success, 1 mathematical validation
failure, 2 input/format failure.  All output files are deterministic given
the inputs and --seed.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import serialize, transform, wavelet
from .config import DEFAULT_TOL, SizeCapError
from .mask import MaskError, mask_to_tree
from .refinable import StepFunction
from .tree import RootedTree, TreeError, enumerate_trees
from .wavelet import build_system, verify_wavelet_system

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2


def _write(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        fh.write(serialize.dumps(payload))


def _random_phases(tree: RootedTree, seed) -> dict:
    rng = np.random.default_rng(seed)
    return {edge: float(rng.uniform(0.0, 1.0)) for edge in tree.edges()}


def cmd_tree_validate(args) -> int:
    data = serialize.load_json(args.path)
    try:
        tree, _ = serialize.tree_from_dict(data)
    except TreeError as exc:
        print(f"invalid: {exc}")
        return EXIT_MATH
    print(
        f"valid, height={tree.height()}, M={tree.support_exponent}, "
        f"first_level={list(tree.first_level())}"
    )
    return EXIT_OK


def cmd_build(args) -> int:
    tree, file_phases = serialize.tree_from_dict(serialize.load_json(args.tree))
    if args.phases == "zero":
        phases = {}
    elif args.phases == "random":
        phases = _random_phases(tree, args.seed)
    else:
        phases = file_phases
    try:
        system = build_system(tree, phases)
    except (SizeCapError, MaskError) as exc:
        print(f"build failed: {exc}")
        return EXIT_MATH
    _write(args.out, serialize.system_to_dict(system))
    print(f"wrote system p={system.p} M={system.M} to {args.out}")
    return EXIT_OK


def _print_report(checks) -> bool:
    ok = True
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name:28s} max_dev={c.max_deviation:.3e}")
        ok = ok and c.passed
    print("overall:", "PASS" if ok else "FAIL")
    return ok


def _verify_one_tree(payload) -> tuple[str, bool, float]:
    p, parent, spectral_only = payload
    tree = RootedTree.validate(parent, p)
    system = build_system(tree)
    checks = verify_wavelet_system(system, spectral_only=spectral_only)
    worst = max(c.max_deviation for c in checks)
    return str(parent), all(c.passed for c in checks), worst


def cmd_verify(args) -> int:
    spectral_only = args.level == "spectral"
    if args.all_trees is not None:
        p = args.all_trees
        jobs = [(p, list(t.parent), spectral_only) for t in enumerate_trees(p, cap=max(p, 5))]
        t0 = time.time()
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_verify_one_tree, jobs))
        else:
            results = [_verify_one_tree(j) for j in jobs]
        bad = [r for r in results if not r[1]]
        worst = max(r[2] for r in results)
        print(
            f"{len(results)} trees at p={p}: {len(results) - len(bad)} PASS, "
            f"{len(bad)} FAIL, worst deviation {worst:.3e}, {time.time() - t0:.1f}s"
        )
        for parent, _, dev in bad:
            print(f"FAIL parent={parent} dev={dev:.3e}")
        return EXIT_OK if not bad else EXIT_MATH
    system = serialize.system_from_dict(serialize.load_json(args.system))
    checks = verify_wavelet_system(system, spectral_only=spectral_only)
    return EXIT_OK if _print_report(checks) else EXIT_MATH


def cmd_transform(args) -> int:
    system = serialize.system_from_dict(serialize.load_json(args.system))
    if args.action == "analyze":
        signal = serialize.step_from_dict(serialize.load_json(args.signal))
        if signal.p != system.p:
            print(f"signal p={signal.p} incompatible with system p={system.p}")
            return EXIT_INPUT
        level = args.level if args.level is not None else signal.resolution_level - system.M
        try:
            grid = transform.project(signal, system, level)
        except ValueError as exc:
            print(str(exc))
            return EXIT_MATH
        pyramid = transform.analyze(grid, system, args.levels)
        back = transform.synthesize(pyramid, system)
        keys = set(grid.entries) | set(back.entries)
        err = max(
            (abs(grid.entries.get(k, 0.0) - back.entries.get(k, 0.0)) for k in keys),
            default=0.0,
        )
        _write(args.out, serialize.pyramid_to_dict(pyramid))
        print(f"wrote pyramid ({args.levels} levels) to {args.out}; round-trip error {err:.3e}")
        return EXIT_OK if err < args.tol else EXIT_MATH
    pyramid = serialize.pyramid_from_dict(serialize.load_json(args.pyramid))
    if pyramid.p != system.p:
        print(f"pyramid p={pyramid.p} incompatible with system p={system.p}")
        return EXIT_INPUT
    grid = transform.synthesize(pyramid, system)
    signal = transform.materialize(grid, system)
    _write(args.out, serialize.step_to_dict(signal))
    print(f"wrote reconstructed signal to {args.out}")
    return EXIT_OK


def cmd_mask_to_tree(args) -> int:
    data = serialize.load_json(args.path)
    if "lambda" not in data:
        print("input file carries no mask table")
        return EXIT_INPUT
    from .mask import MaskTable

    p = int(data["p"])
    mask = MaskTable(p, serialize._cpx_in(data["lambda"]))
    try:
        tree, phases = mask_to_tree(mask, tol=args.tol)
    except (MaskError, TreeError) as exc:
        print(f"mask does not come from a tree: {exc}")
        return EXIT_MATH
    _write(args.out, serialize.tree_to_dict(tree, phases))
    print(f"wrote tree parent={list(tree.parent)} to {args.out}")
    return EXIT_OK


def _table_rows(name: str, system) -> list[tuple[str, StepFunction | np.ndarray]]:
    if name == "phi":
        return [("phi", system.phi)]
    if name == "psi":
        return [(f"psi_{l}", f) for l, f in enumerate(system.psi, start=1)]
    return [("beta", system.beta)] + [
        (f"beta_{l}", bl) for l, bl in enumerate(system.beta_l, start=1)
    ]


def cmd_show(args) -> int:
    system = serialize.system_from_dict(serialize.load_json(args.system))
    rows = _table_rows(args.table, system)
    if args.format == "json":
        payload = {}
        for name, obj in rows:
            if isinstance(obj, StepFunction):
                payload[name] = serialize.step_to_dict(obj)
            else:
                payload[name] = serialize._cpx_out(obj)
        sys.stdout.write(serialize.dumps(payload))
    else:
        print("name,index,re,im")
        for name, obj in rows:
            values = obj.values if isinstance(obj, StepFunction) else obj
            for i, v in enumerate(np.asarray(values, dtype=complex)):
                print(f"{name},{i},{v.real!r},{v.imag!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vilwav", description="Tree-generated wavelet systems on p-adic Vilenkin groups"
    )
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL, help="comparison tolerance")
    sub = parser.add_subparsers(dest="command", required=True)

    tree_p = sub.add_parser("tree", help="tree file operations")
    tree_sub = tree_p.add_subparsers(dest="tree_command", required=True)
    val = tree_sub.add_parser("validate", help="validate a tree file")
    val.add_argument("path")
    val.set_defaults(func=cmd_tree_validate)

    build_p = sub.add_parser("build", help="build a wavelet system from a tree file")
    build_p.add_argument("tree")
    build_p.add_argument("-o", "--out", required=True)
    build_p.add_argument("--phases", choices=["file", "zero", "random"], default="file")
    build_p.add_argument("--seed", type=int, default=0)
    build_p.set_defaults(func=cmd_build)

    verify_p = sub.add_parser("verify", help="verify a built system")
    verify_p.add_argument("system", nargs="?")
    verify_p.add_argument("--level", choices=["spectral", "full"], default="full")
    verify_p.add_argument("--all-trees", type=int, default=None, metavar="P")
    verify_p.add_argument("--jobs", type=int, default=1)
    verify_p.set_defaults(func=cmd_verify)

    trans_p = sub.add_parser("transform", help="run the filter bank")
    trans_sub = trans_p.add_subparsers(dest="action", required=True)
    ana = trans_sub.add_parser("analyze")
    ana.add_argument("--system", required=True)
    ana.add_argument("--signal", required=True)
    ana.add_argument("--levels", type=int, default=1)
    ana.add_argument("--level", type=int, default=None, help="projection level (default: finest exact)")
    ana.add_argument("-o", "--out", required=True)
    ana.set_defaults(func=cmd_transform, action="analyze")
    syn = trans_sub.add_parser("synthesize")
    syn.add_argument("--system", required=True)
    syn.add_argument("--pyramid", required=True)
    syn.add_argument("-o", "--out", required=True)
    syn.set_defaults(func=cmd_transform, action="synthesize")

    mask_p = sub.add_parser("mask", help="mask operations")
    mask_sub = mask_p.add_subparsers(dest="mask_command", required=True)
    m2t = mask_sub.add_parser("to-tree", help="recover the tree behind a mask")
    m2t.add_argument("path")
    m2t.add_argument("-o", "--out", required=True)
    m2t.set_defaults(func=cmd_mask_to_tree)

    show_p = sub.add_parser("show", help="print system tables")
    show_p.add_argument("table", choices=["phi", "psi", "beta"])
    show_p.add_argument("--system", required=True)
    show_p.add_argument("--format", choices=["json", "csv"], default="json")
    show_p.set_defaults(func=cmd_show)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.func is cmd_verify and args.system is None and args.all_trees is None:
        parser.error("verify needs a system file or --all-trees P")
    try:
        return args.func(args)
    except serialize.FormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeCapError as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
