"""Command-line interface: analyze pencils, verify the bundled catalog,
realify, check hyperbolicity, curve and quadric structure, run searches,
and export surface meshes."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog as catalog_mod
from . import curves, search, spectra, x2_geometry as xg
from .homotopy import FloatPoly
from .pencil import HermitianMatrix, HermitianPencil
from .scalar_poly import GQ
from .singularities import SolverConfig, profile, profile_report

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2


class InputError(Exception):
    pass


def _load_pencil(args) -> tuple:
    """(pencil, definite_point or None, name) from --entry or a file path."""
    if getattr(args, "entry", None):
        try:
            ent = catalog_mod.get_entry(args.entry)
        except KeyError as exc:
            raise InputError(str(exc))
        return ent.pencil, ent.definite_point, ent.name
    path = getattr(args, "file", None)
    if not path:
        raise InputError("give a pencil JSON file or --entry")
    try:
        data = json.loads(Path(path).read_text())
        pencil = HermitianPencil.from_json_dict(data)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read pencil from {path}: {exc}")
    dp = data.get("definite_point")
    e = tuple(Fraction(v) for v in dp) if dp else None
    return pencil, e, data.get("name", path)


def _emit(args, payload: dict, text_lines) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _solver_config(args) -> SolverConfig:
    cfg = SolverConfig(seed=args.seed)
    if args.tol is not None:
        cfg.path_tolerance = args.tol
    return cfg


def cmd_analyze(args) -> int:
    pencil, e, name = _load_pencil(args)
    prof = profile(pencil, e, _solver_config(args))
    rep = profile_report(prof)
    rep["name"] = name
    lines = [
        f"{name}: (eta, rho, sigma) = ({prof.eta}, {prof.rho}, {prof.sigma})",
        f"degenerate: {prof.degenerate}",
        f"points: {len(prof.points)}",
    ] + [f"warning: {w}" for w in sorted(prof.warnings)]
    _emit(args, rep, lines)
    return EXIT_MISMATCH if prof.degenerate else EXIT_OK


def _verify_one(ent, args) -> dict:
    cfg = _solver_config(args)
    definite = ent.pencil.is_definite_at(ent.definite_point).is_definite
    prof = profile(ent.pencil, ent.definite_point, cfg)
    got = (prof.eta, prof.rho, prof.sigma)
    square = ent.pencil.verify_square_identity()
    hyp = spectra.hyperbolicity_check(
        ent.pencil, ent.definite_point, n_lines=args.lines, seed=args.seed,
        tol=args.tol if args.tol is not None else 1e-6,
    )
    ok = definite and square and got == ent.claimed and hyp.fraction_real == 1.0
    return {
        "name": ent.name,
        "definite": definite,
        "claimed": list(ent.claimed),
        "profile": list(got),
        "degenerate": prof.degenerate,
        "square_identity": square,
        "hyperbolic_fraction": hyp.fraction_real,
        "ok": ok,
    }


def cmd_verify_catalog(args) -> int:
    entries = catalog_mod.surface_entries()
    if args.entry:
        try:
            entries = [catalog_mod.get_entry(args.entry)]
        except KeyError as exc:
            raise InputError(str(exc))
        if not entries[0].is_surface:
            raise InputError(f"{args.entry} is not a surface entry")
    threads = max(1, int(os.environ.get("DETQUARTIC_THREADS", "1")))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        rows = list(pool.map(lambda e: _verify_one(e, args), entries))
    rows.sort(key=lambda r: r["name"])
    n_ok = sum(r["ok"] for r in rows)
    lines = []
    for r in rows:
        flag = "ok" if r["ok"] else "MISMATCH"
        extra = " degenerate" if r["degenerate"] else ""
        lines.append(
            f"{r['name']}: claimed {tuple(r['claimed'])} got {tuple(r['profile'])}"
            f" definite={r['definite']} square={r['square_identity']}"
            f" hyperbolic={r['hyperbolic_fraction']:.3f} [{flag}{extra}]"
        )
    lines.append(f"{n_ok}/{len(rows)} entries verified")
    _emit(args, {"entries": rows, "verified": n_ok, "total": len(rows)}, lines)
    return EXIT_OK if n_ok == len(rows) else EXIT_MISMATCH


def cmd_realify(args) -> int:
    pencil, _, name = _load_pencil(args)
    rs = pencil.realify()
    identity = pencil.verify_square_identity()
    payload = {
        "name": name,
        "vars": 4,
        "size": 8,
        "coeffs": [[[str(v) for v in row] for row in m] for m in rs.coeffs],
        "square_identity": identity,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK if identity else EXIT_MISMATCH


def cmd_hyperbolicity(args) -> int:
    pencil, e, name = _load_pencil(args)
    if e is None:
        raise InputError("hyperbolicity needs a definite point in the input")
    res = spectra.hyperbolicity_check(
        pencil, e, n_lines=args.lines, seed=args.seed,
        tol=args.tol if args.tol is not None else 1e-6,
    )
    payload = {"name": name, "fraction_real": res.fraction_real, "lines": res.n_lines}
    _emit(args, payload, [f"{name}: {res.fraction_real:.6f} of {res.n_lines} lines all-real"])
    return EXIT_OK if res.fraction_real == 1.0 else EXIT_MISMATCH


def cmd_curves_check(args) -> int:
    pencil, _, name = _load_pencil(args)
    f = pencil.determinant()
    rows = curves.sextic_family(pencil, "rows", 0)
    cols = curves.sextic_family(pencil, "cols", 0)
    conj_exact = all(
        a == b for a, b in zip(rows.conj().generators, cols.generators)
    )
    s3 = curves.common_minor_surface(pencil, 0, 0)
    report = curves.complete_intersection_check(
        f, s3, rows, cols, n_samples=20, seed=args.seed,
        tol=args.tol if args.tol is not None else 1e-8,
    )
    ok = conj_exact and report.all_pass
    payload = {
        "name": name,
        "conjugate_families_exact": conj_exact,
        "samples": len(report.residuals),
        "max_residual": report.max_residual,
        "ok": ok,
    }
    _emit(args, payload, [
        f"{name}: conjugate families exact: {conj_exact}",
        f"intersection samples: {len(report.residuals)}, max residual {report.max_residual:.3e}",
    ])
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_x2_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    n = args.budget if args.budget is not None else 25
    failures = []
    for k in range(n):
        h = search._rank2_plant(rng, bool(rng.integers(0, 2)))
        q = xg.cp15_to_quadric(xg.hermitian_to_cp15(h))
        if not xg.base_locus_check(q):
            failures.append(f"sample {k}: base locus")
            continue
        if xg.quadric_to_hermitian(q) != h:
            failures.append(f"sample {k}: round trip")
            continue
        codim = xg.x2_tangent_codim(h)
        if codim != 4:
            failures.append(f"sample {k}: tangent codim {codim}")
    payload = {"samples": n, "failures": failures, "ok": not failures}
    _emit(args, payload, [f"{n} samples, {len(failures)} failures"] + failures)
    return EXIT_OK if not failures else EXIT_MISMATCH


def cmd_search(args) -> int:
    try:
        parts = [int(v) for v in args.target.split(",")]
        target = search.SearchTarget(*parts)
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad target {args.target!r}: {exc}")
    budget = args.budget if args.budget is not None else 10_000
    seeds = [args.seed, args.seed + 1, args.seed + 2]
    starts = None
    if target.eta >= 4:
        starts = [
            e.pencil
            for e in catalog_mod.surface_entries()
            if e.claimed and e.claimed[0] == target.eta
        ] or None
    results = search.run_search(target, budget, seeds, out_dir=".",
                                catalog_starts=starts)
    payload = {
        "target": [target.eta, target.rho, target.sigma],
        "found": [ex.to_json_dict() for ex in results],
        "stats": results.stats,
    }
    lines = [f"target ({target.eta},{target.rho},{target.sigma}): "
             f"{len(results)} found, stats {results.stats}"]
    _emit(args, payload, lines)
    return EXIT_OK if results else EXIT_MISMATCH


def export_mesh(pencil: HermitianPencil, chart: int, resolution: int, bound: float = 3.0):
    """Marching-cubes mesh of the real surface det = 0 in an affine chart."""
    f = pencil.determinant()
    keep = [i for i in range(4) if i != chart]
    fp = FloatPoly.from_multipoly(f, keep=keep, sub={chart: 1})
    axis = np.linspace(-bound, bound, resolution)
    g0, g1, g2 = np.meshgrid(axis, axis, axis, indexing="ij")
    pts = np.stack([g0.ravel(), g1.ravel(), g2.ravel()], axis=1)
    vals = fp.eval(pts.astype(np.complex128)).real.reshape(g0.shape)
    from skimage.measure import marching_cubes

    if vals.min() > 0 or vals.max() < 0:
        return np.zeros((0, 3)), np.zeros((0, 3), dtype=int)
    spacing = (axis[1] - axis[0],) * 3
    verts, faces, _, _ = marching_cubes(vals, level=0.0, spacing=spacing)
    verts = verts - bound
    return verts, faces


def cmd_export_surface(args) -> int:
    pencil, _, name = _load_pencil(args)
    resolution = args.resolution if args.resolution is not None else 64
    verts, faces = export_mesh(pencil, args.chart, resolution)
    src = getattr(args, "file", None)
    stem = Path(src).stem if src else name.replace("/", "_")
    out = Path(f"{stem}.obj")
    with out.open("w") as fh:
        fh.write(f"# quartic surface mesh, chart x{args.chart} = 1\n")
        for v in verts:
            fh.write(f"v {v[0]:.9g} {v[1]:.9g} {v[2]:.9g}\n")
        for f3 in faces:
            fh.write(f"f {f3[0]+1} {f3[1]+1} {f3[2]+1}\n")
    payload = {"output": str(out), "vertices": len(verts), "faces": len(faces)}
    _emit(args, payload, [f"wrote {out} ({len(verts)} vertices, {len(faces)} faces)"])
    return EXIT_OK if len(verts) > 0 else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="detquartic",
        description="Hermitian determinantal representations of quartic surfaces",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, file_arg=True):
        if file_arg:
            sp.add_argument("file", nargs="?", help="pencil JSON file")
        sp.add_argument("--entry", help="bundled catalog entry name")
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--lines", type=int, default=200)
        sp.add_argument("--budget", type=int, default=None)
        sp.add_argument("--chart", type=int, default=3, choices=range(4))
        sp.add_argument("--resolution", type=int, default=None)

    sp = sub.add_parser("analyze", help="compute the (eta, rho, sigma) profile")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("verify-catalog", help="verify the bundled catalog")
    common(sp, file_arg=False)
    sp.set_defaults(func=cmd_verify_catalog)

    sp = sub.add_parser("realify", help="print the 8x8 real symmetric pencil")
    common(sp)
    sp.set_defaults(func=cmd_realify)

    sp = sub.add_parser("hyperbolicity", help="sample real-rootedness along lines")
    common(sp)
    sp.set_defaults(func=cmd_hyperbolicity)

    sp = sub.add_parser("curves-check", help="sextic curve structure checks")
    common(sp)
    sp.set_defaults(func=cmd_curves_check)

    sp = sub.add_parser("x2-check", help="rank-2 locus geometry checks")
    common(sp, file_arg=False)
    sp.set_defaults(func=cmd_x2_check)

    sp = sub.add_parser("search", help="search for a target profile")
    sp.add_argument("target", help="eta,rho,sigma")
    common(sp, file_arg=False)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("export-surface", help="export an OBJ mesh of the real surface")
    common(sp)
    sp.set_defaults(func=cmd_export_surface)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
