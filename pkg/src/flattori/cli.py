"""Command-line front end.

Exit codes: 0 when the checked property holds, 1 when it fails (the report
says why), 2 for malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import obstruction, search, torus
from .affine import affine_log
from .linalg import StructureKind, is_unipotent
from .reporting import to_jsonable
from .specfile import SpecFormatError, dump_spec, dumps, load_spec

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.format_usage()}{self.prog}: error: {message}")


def _load_torus(path):
    spec = load_spec(path)
    if isinstance(spec, torus.GalleryNegative):
        raise SpecFormatError("expected a torus spec, got a gallery negative", str(path))
    return spec


def _emit(out, fmt, payload, text):
    out.write(dumps(payload) if fmt == "json" else text.rstrip("\n") + "\n")


def _bool_lines(d: dict) -> str:
    return "\n".join(f"{k}: {v}" for k, v in d.items())


def cmd_validate(args, out):
    spec = _load_torus(args.file)
    report = torus.validate_spec(spec)
    _emit(out, args.format, report.to_dict(), report.render())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_classify(args, out):
    spec = load_spec(args.file)
    if isinstance(spec, torus.FlatAffineTorusSpec):
        report = torus.validate_spec(spec)
        if not report.ok:
            _emit(out, args.format, {"classification": None, "validation": report.to_dict()}, report.render())
            return EXIT_FAIL
    c = torus.classify(spec)
    d = to_jsonable(c)
    _emit(out, args.format, {"classification": d}, _bool_lines(d))
    return EXIT_OK


def cmd_psi(args, out):
    spec = _load_torus(args.file)
    try:
        psi = obstruction.build_psi(spec)
    except torus.InvalidSpecError as exc:
        _emit(out, args.format, {"error": str(exc)}, f"cannot build Psi: {exc}")
        return EXIT_FAIL
    sym = obstruction.psi_symmetric(psi)
    payload = {"psi": psi.to_dict(), "symmetric": sym}
    lines = [f"Psi(t_{c['i'] + 1}, t_{c['j'] + 1}) has t_{c['k'] + 1}-coefficient {c['value']}"
             for c in payload["psi"]["nonzero_components"]] or ["Psi = 0"]
    lines.append(f"symmetric (compatibility (L_i - Id)t_j = (L_j - Id)t_i): {sym}")
    ok = sym
    if spec.structure is not None:
        lin = obstruction.psi_structure_linear(psi, spec.structure)
        payload["structure_linear"] = lin
        lines.append(f"{spec.structure.kind.value}-linear in the second slot: {lin}")
        ok = ok and lin
    _emit(out, args.format, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_kernel_dim(args, out):
    try:
        S = obstruction.structure_for(args.mode, args.dim)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    space = obstruction.constrained_tensor_space(args.dim, S)
    d = space.to_dict()
    _emit(out, args.format, d,
          f"symmetric {args.mode}-linear (2,1)-tensors on R^{args.dim}: dimension {space.dimension}")
    return EXIT_OK


def cmd_freeness(args, out):
    spec = _load_torus(args.file)
    if args.bound < 1:
        raise _Usage("--bound must be positive")
    rep = torus.check_free(spec, args.bound)
    text = (f"free on |m| <= {rep.bound}: {rep.free} ({rep.checked} nonzero exponent vectors)")
    if not rep.free:
        m, p = rep.first_violation
        text += f"\nfirst violation: m = {list(m)} fixes {to_jsonable(p)}"
    _emit(out, args.format, rep.to_dict(), text)
    return EXIT_OK if rep.free else EXIT_FAIL


def cmd_lattice(args, out):
    spec = _load_torus(args.file)
    report = torus.validate_spec(spec)
    if not report.ok:
        _emit(out, args.format, {"lattice": None, "validation": report.to_dict()}, report.render())
        return EXIT_FAIL
    rep = torus.check_lattice(spec)
    _emit(out, args.format, rep.to_dict(), rep.render())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_flag(args, out):
    spec = _load_torus(args.file)
    report = torus.validate_spec(spec)
    if not report.ok:
        _emit(out, args.format, {"flag": None, "validation": report.to_dict()}, report.render())
        return EXIT_FAIL
    flag = torus.build_flag(spec)
    lines = [f"V_{j + 1} (dim {len(b)}): {[to_jsonable(v) for v in b]}" for j, b in enumerate(flag.subspaces)]
    _emit(out, args.format, flag.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_log(args, out):
    spec = _load_torus(args.file)
    k = args.generator
    if not 1 <= k <= len(spec.generators):
        raise _Usage(f"--generator must be between 1 and {len(spec.generators)}")
    g = spec.generators[k - 1]
    if not is_unipotent(g.linear):
        _emit(out, args.format, {"generator": k, "log": None, "unipotent": False},
              f"tau_{k} has non-unipotent linear part; log undefined")
        return EXIT_FAIL
    X = affine_log(g)
    d = {"generator": k, "log": {"linear": to_jsonable(X.linear), "translation": to_jsonable(X.translation)},
         "unipotent": True}
    _emit(out, args.format, d, f"log(tau_{k}): linear {d['log']['linear']}, translation {d['log']['translation']}")
    return EXIT_OK


def cmd_prove_trivial(args, out):
    spec = _load_torus(args.file)
    try:
        cert = obstruction.prove_trivial(spec)
    except torus.InvalidSpecError as exc:
        payload = {"ok": False, "refused": str(exc)}
        text = f"refused: {exc}"
        if exc.report is not None:
            payload["validation"] = exc.report.to_dict()
            text += "\n" + exc.report.render()
        _emit(out, args.format, payload, text)
        return EXIT_FAIL
    _emit(out, args.format, cert.to_dict(), cert.render())
    return EXIT_OK


def cmd_gallery(args, out):
    try:
        spec = torus.gallery(args.name)
    except (KeyError, ValueError) as exc:
        raise _Usage(str(exc.args[0] if exc.args else exc)) from None
    text = dump_spec(spec)
    if args.out:
        Path(args.out).write_text(text)
        _emit(out, args.format, {"written": args.out}, f"wrote {args.out}")
    else:
        out.write(text)
    return EXIT_OK


def cmd_search(args, out):
    try:
        config = search.SearchConfig(StructureKind(args.mode), args.dim, seed=args.seed,
                                     iterations=args.iters, workers=args.threads)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    result = search.random_search(config)
    d = result.to_dict()
    text = (f"{d['trials']} trials, {d['accepted']} accepted, {d['distinct']} distinct specs, "
            f"{d['nonstandard']} non-standard ({d['nonstandard_not_lattice']} not a lattice)\nrejects: {d['rejects']}")
    _emit(out, args.format, d, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    p = _Parser(prog="flattori", description="Exact checks for complete flat affine tori.")
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    for name, func, help_ in (
        ("validate", cmd_validate, "check every defining condition"),
        ("classify", cmd_classify, "standard / complete / volume-preserving"),
        ("psi", cmd_psi, "the (2,1)-tensor of the holonomy"),
        ("lattice", cmd_lattice, "Z^n embeds as a lattice acting simply transitively"),
        ("flag", cmd_flag, "filtration with trivial graded action"),
        ("prove-trivial", cmd_prove_trivial, "vanishing certificate for a quaternionic torus"),
    ):
        add(name, func, help_).add_argument("file")

    sp = add("kernel-dim", cmd_kernel_dim, "dimension of the constrained tensor space")
    sp.add_argument("--mode", required=True, choices=[k.value for k in StructureKind])
    sp.add_argument("--dim", required=True, type=int)

    sp = add("freeness", cmd_freeness, "no fixed points on a box of group elements")
    sp.add_argument("file")
    sp.add_argument("--bound", type=int, default=3)

    sp = add("log", cmd_log, "affine logarithm of one generator")
    sp.add_argument("file")
    sp.add_argument("--generator", type=int, required=True, help="1-based generator index")

    sp = add("gallery", cmd_gallery, "write a named example spec")
    sp.add_argument("name")
    sp.add_argument("--out")

    sp = add("search", cmd_search, "seeded randomized search with exact acceptance")
    sp.add_argument("--mode", required=True, choices=[k.value for k in StructureKind])
    sp.add_argument("--dim", required=True, type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--iters", type=int, default=1000)
    sp.add_argument("--threads", type=int, default=1)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except _Usage as exc:
        err.write(f"{exc}\n")
        return EXIT_MALFORMED
    except SpecFormatError as exc:
        err.write(f"malformed spec: {exc}\n")
        return EXIT_MALFORMED
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_MALFORMED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
