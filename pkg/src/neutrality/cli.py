"""Command-line front end.

Subcommands:
  classify <file>             decide neutrality of the group in the spec file
  diag-criterion <file>       run the permutation-lattice criterion
  normalizer <file>           permutation part of the torus normalizer
  convert-presentation        convert between the two diagonal presentations
  cohomology <action-file>    H^1 of a lattice or finite module with action
  singularity <file>          type-R status of the quotient singularity
  catalog verify              re-verify the Hessian fixture facts

Input files are JSON; see the schemas in the README.  Reports go to stdout,
human-readable by default or as JSON with --json.  Exit codes: 0 for decided
verdicts and passing verification, 2 for Undetermined, 1 for input errors.
"""

import argparse
import json
import sys
import time

from . import catalog as catalog_mod
from .classify import (
    ClassificationError,
    FieldContext,
    UNDETERMINED,
    classify,
    convert_presentation,
    diag_criterion,
    recheck,
    singularity_type_r,
)
from .cyclo import CycParseError, parse
from .latcoh import FiniteModule, GLattice, h1_finite, h1_lattice
from .matgrp import (
    CycMatrix,
    GroupTooLargeError,
    MatrixGroup,
    simultaneous_diagonalize,
)


class InputError(ValueError):
    """Malformed input file; message carries the JSON path."""


def _fail(msg):
    raise InputError(msg)


def load_group_spec(path, cap):
    """Parse and validate a GroupSpecFile; returns (group, ambient, ctx, raw)."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        _fail(f"file not found: {path}")
    except json.JSONDecodeError as exc:
        _fail(f"malformed JSON: {exc}")
    if not isinstance(raw, dict):
        _fail("$: expected an object")
    ambient = raw.get("ambient", "GL")
    if ambient not in ("GL", "PGL"):
        _fail('ambient: must be "GL" or "PGL"')
    dim = raw.get("dimension")
    if not isinstance(dim, int) or dim < 1:
        _fail("dimension: must be a positive integer")
    level = raw.get("cyclotomic_level", 1)
    if not isinstance(level, int) or level < 1:
        _fail("cyclotomic_level: must be a positive integer")
    p = raw.get("characteristic", 0)
    if not isinstance(p, int) or p < 0:
        _fail("characteristic: must be an integer >= 0")
    contains = raw.get("base_field_contains", [])
    if not isinstance(contains, list) or any(
        not isinstance(x, int) or x < 1 for x in contains
    ):
        _fail("base_field_contains: must be a list of positive integers")
    ctx = FieldContext(
        characteristic=p,
        contains_zeta3=any(x % 3 == 0 for x in contains),
    )
    gens_raw = raw.get("generators")
    if not isinstance(gens_raw, list) or not gens_raw:
        _fail("generators: must be a non-empty list of matrices")
    gens = []
    for gi, mat in enumerate(gens_raw):
        if not isinstance(mat, list) or len(mat) != dim:
            _fail(f"generators[{gi}]: expected {dim} rows")
        rows = []
        for ri, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != dim:
                _fail(f"generators[{gi}][{ri}]: expected {dim} entries")
            out = []
            for ci, ent in enumerate(row):
                if not isinstance(ent, str):
                    _fail(
                        f"generators[{gi}][{ri}][{ci}]: entries are strings "
                        f"in the cyclotomic grammar"
                    )
                try:
                    out.append(parse(ent, level))
                except CycParseError as exc:
                    _fail(f"generators[{gi}][{ri}][{ci}]: {exc}")
            rows.append(out)
        m = CycMatrix(rows, level)
        if m.det().is_zero():
            _fail(f"generators[{gi}]: matrix is singular")
        gens.append(m)
    if ambient == "PGL":
        gens = [_det_one_lift(m, gi) for gi, m in enumerate(gens)]
    try:
        group = MatrixGroup.generate(gens, cap=cap)
    except GroupTooLargeError as exc:
        _fail(str(exc))
    return group, ambient, ctx, raw


def canonical_group_spec(raw):
    """The validated GroupSpecFile with defaults filled, key-sorted."""
    return {
        "ambient": raw.get("ambient", "GL"),
        "dimension": raw["dimension"],
        "cyclotomic_level": raw.get("cyclotomic_level", 1),
        "characteristic": raw.get("characteristic", 0),
        "base_field_contains": sorted(raw.get("base_field_contains", [])),
        "generators": raw["generators"],
    }


def write_group_spec(raw) -> str:
    """Serialize a validated spec; parse(write(parse(x))) == parse(x)."""
    return json.dumps(canonical_group_spec(raw), indent=2, sort_keys=True)


def _det_one_lift(m, gi):
    """Scale a PGL generator to determinant 1 (finite order)."""
    det = m.det()
    nk = det.as_root_of_unity()
    if nk is None:
        _fail(
            f"generators[{gi}]: determinant is not a root of unity; rescale "
            f"the projective representative"
        )
    n_, k_ = nk
    from .cyclo import root_of_unity

    mu = root_of_unity(m.n * n_, k_)
    return m.scale(mu.inverse())


def _diagonal_of(group):
    if not group.is_abelian():
        _fail("the requested operation needs an abelian (diagonalizable) group")
    _, d = simultaneous_diagonalize(group)
    return d


def emit(obj, human_lines, as_json):
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


# -- subcommand handlers ------------------------------------------------------


def cmd_classify(args):
    t0 = time.time()
    group, ambient, ctx, _ = load_group_spec(args.file, args.cap)
    if group.n == 3 and ctx.characteristic != 0:
        _fail("dim-3 classification requires characteristic 0")
    rep = classify(group, ambient, ctx)
    obj = rep.to_obj()
    obj["command"] = "classify"
    if args.recheck:
        ok = recheck(rep, group, ctx)
        obj["recheck"] = bool(ok)
        if not ok:
            _fail("certificate recheck failed")
    obj["timing_seconds"] = round(time.time() - t0, 6)
    lines = [
        f"ambient:    {rep.ambient}_{rep.dim}",
        f"group:      order {group.order} at level {group.level}",
        f"verdict:    {rep.verdict}",
    ]
    if rep.family:
        lines.append(f"family:     {rep.family}")
    if rep.parameters:
        params = ", ".join(f"{k}={v}" for k, v in sorted(rep.parameters.items()))
        lines.append(f"parameters: {params}")
    if args.recheck:
        lines.append(f"recheck:    {'ok' if obj['recheck'] else 'FAILED'}")
    emit(obj, lines, args.json)
    return 2 if rep.verdict == UNDETERMINED else 0


def cmd_diag_criterion(args):
    t0 = time.time()
    group, ambient, ctx, _ = load_group_spec(args.file, args.cap)
    d = _diagonal_of(group)
    rep = diag_criterion(d, box=args.box)
    obj = rep.to_obj()
    obj["command"] = "diag-criterion"
    obj["timing_seconds"] = round(time.time() - t0, 6)
    lines = [
        f"group:      diagonal, order {d.order}, dimension {d.n}",
        f"normalizer: {rep.normalizer_order} permutations",
        f"verdict:    {rep.verdict}",
    ]
    if rep.basis is not None:
        lines.append(f"basis:      {[list(v) for v in rep.basis]}")
    if rep.witness_h1:
        lines.append(f"H1 witness: Z/{' x Z/'.join(map(str, rep.witness_h1))}")
    if rep.index_bound:
        lines.append(
            f"index bound: divides {rep.index_bound[2]} "
            f"(= {rep.index_bound[0]} * {rep.index_bound[1]})"
        )
    if rep.note:
        lines.append(f"note:       {rep.note}")
    emit(obj, lines, args.json)
    return 2 if rep.verdict == UNDETERMINED else 0


def cmd_normalizer(args):
    t0 = time.time()
    group, ambient, ctx, _ = load_group_spec(args.file, args.cap)
    d = _diagonal_of(group)
    if not d.axis_characters_distinct():
        _fail("normalizer permutations need one-dimensional eigenspaces")
    perms = d.normalizer_perms()
    obj = {
        "command": "normalizer",
        "order": len(perms),
        "permutations": [list(p) for p in perms],
        "diagonal_form": {"level": d.canonical().level,
                          "hnf_basis": [list(r) for r in d.canonical().rows],
                          "order": d.order},
        "timing_seconds": round(time.time() - t0, 6),
    }
    lines = [
        f"group:       diagonal of order {d.order} in GL_{d.n}",
        f"normalizer:  torus extended by {len(perms)} permutations",
        f"permutations: {[list(p) for p in perms]}",
    ]
    emit(obj, lines, args.json)
    return 0


def cmd_convert(args):
    t0 = time.time()
    params = {}
    for piece in args.params.split(","):
        if "=" not in piece:
            _fail(f"--params: expected key=value, got {piece!r}")
        k, v = piece.split("=", 1)
        try:
            params[k.strip()] = int(v)
        except ValueError:
            _fail(f"--params: {k.strip()} must be an integer")
    direction = args.dir
    try:
        out = convert_presentation(direction, params)
    except KeyError as exc:
        _fail(f"--params: missing {exc.args[0]}")
    obj = {
        "command": "convert-presentation",
        "direction": direction,
        "input": params,
        "output": out,
        "timing_seconds": round(time.time() - t0, 6),
    }
    kv = ", ".join(f"{k}={v}" for k, v in out.items())
    emit(obj, [f"converted:  {kv}"], args.json)
    return 0


def cmd_cohomology(args):
    t0 = time.time()
    try:
        with open(args.file) as fh:
            raw = json.load(fh)
    except FileNotFoundError:
        _fail(f"file not found: {args.file}")
    except json.JSONDecodeError as exc:
        _fail(f"malformed JSON: {exc}")
    module = raw.get("module")
    action = raw.get("action", {})
    gens = action.get("generators")
    if not isinstance(module, dict):
        _fail("module: expected an object")
    if not isinstance(gens, list) or not gens:
        _fail("action.generators: expected a non-empty list")
    kind = module.get("type")
    if kind == "lattice":
        n = module.get("ambient_dim")
        basis = module.get("basis")
        if not isinstance(n, int) or n < 1:
            _fail("module.ambient_dim: positive integer required")
        if not isinstance(basis, list):
            _fail("module.basis: expected a list of rows")
        try:
            glat = GLattice(n, basis, gens)
        except ValueError as exc:
            _fail(f"module: {exc}")
        divs = h1_lattice(glat)
    elif kind == "finite":
        divisors_ = module.get("divisors")
        gen_actions = raw.get("module_action")
        if not isinstance(divisors_, list) or not divisors_:
            _fail("module.divisors: expected a non-empty list")
        if not isinstance(gen_actions, list) or len(gen_actions) != len(gens):
            _fail("module_action: one matrix per action generator required")
        try:
            fm = FiniteModule(divisors_, gens, gen_actions)
        except ValueError as exc:
            _fail(f"module_action: {exc}")
        divs = h1_finite(fm)
    else:
        _fail('module.type: must be "lattice" or "finite"')
    obj = {
        "command": "cohomology",
        "h1_elementary_divisors": list(divs),
        "trivial": not divs,
        "timing_seconds": round(time.time() - t0, 6),
    }
    desc = " x ".join(f"Z/{d}" for d in divs) if divs else "0"
    emit(obj, [f"H^1 = {desc}"], args.json)
    return 0


def cmd_singularity(args):
    t0 = time.time()
    group, ambient, ctx, _ = load_group_spec(args.file, args.cap)
    if ambient != "GL":
        _fail("singularities are quotients by linear groups: use ambient GL")
    rep = singularity_type_r(group, ctx)
    obj = rep.to_obj()
    obj["command"] = "singularity"
    obj["timing_seconds"] = round(time.time() - t0, 6)
    lines = [f"singularity: {rep.kind}"]
    if rep.classification is not None:
        lines.append(f"neutrality:  {rep.classification.verdict}")
    if rep.note:
        lines.append(f"note:        {rep.note}")
    emit(obj, lines, args.json)
    return 2 if rep.kind == "undetermined" else 0


def cmd_catalog(args):
    t0 = time.time()
    if args.action != "verify":
        _fail('catalog supports the single action "verify"')
    facts = catalog_mod.verify()
    ok = all(f.ok for f in facts)
    obj = {
        "command": "catalog verify",
        "facts": [
            {"name": f.name, "pass": f.ok, "computed": str(f.computed)}
            for f in facts
        ],
        "all_pass": ok,
        "timing_seconds": round(time.time() - t0, 6),
    }
    lines = [repr(f) for f in facts]
    lines.append(f"{'all facts pass' if ok else 'SOME FACTS FAILED'}")
    emit(obj, lines, args.json)
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="neutrality",
        description="Exact neutrality decisions for finite matrix groups "
        "in dimensions 1-3, with certificates.",
    )
    ap.add_argument("--json", action="store_true", help="emit a JSON report")
    ap.add_argument(
        "--cap", type=int, default=20000,
        help="group closure element cap (default 20000)",
    )
    ap.add_argument(
        "--box", type=int, default=None,
        help="permutation-basis search box override",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a group spec file")
    p.add_argument("file")
    p.add_argument(
        "--recheck", action="store_true",
        help="rebuild the matched family from parameters and re-match",
    )
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("diag-criterion", help="permutation-lattice criterion")
    p.add_argument("file")
    p.set_defaults(func=cmd_diag_criterion)

    p = sub.add_parser("normalizer", help="normalizer permutations")
    p.add_argument("file")
    p.set_defaults(func=cmd_normalizer)

    p = sub.add_parser("convert-presentation", help="presentation conversion")
    p.add_argument("--dir", required=True, choices=["12", "21"])
    p.add_argument("--params", required=True, help="comma list, e.g. m=2,n=3")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("cohomology", help="H^1 of a module with group action")
    p.add_argument("file")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("singularity", help="type-R status of the quotient")
    p.add_argument("file")
    p.set_defaults(func=cmd_singularity)

    p = sub.add_parser("catalog", help="catalog operations")
    p.add_argument("action", choices=["verify"])
    p.set_defaults(func=cmd_catalog)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ClassificationError, CycParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
