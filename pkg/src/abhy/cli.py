"""Command-line entry point: ``abhy <subcommand> [input] [flags]``.

Every subcommand reads a matrix document (JSON ``{"n", "m", "rows"}``) from
a file or stdin and writes JSON to stdout.  Indices on the command line and
in documents are 1-based.

Exit codes: 0 success, 1 verification failed, 2 invalid input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence, TextIO

from abhy.cluster import (
    CapExceeded,
    ExchangeMatrix,
    explore,
    f_polynomial,
    g_vectors,
    mutate_word,
    principal_extension,
)
from abhy.exact import IntMatrix
from abhy.moment import (
    a_polytope,
    alternate_seed,
    build_slice,
    format_equation,
    kernel_matrix,
    kernel_span_matches,
    moment_equations,
    realized_fan,
    u_polytope,
    vertex_clusters,
    verify_theorem,
)
from abhy.polytope import VPolytope, fans_equal, newton_polytope, outer_normal_fan
from abhy.universal import check_univ_compatibility, universal_extension

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class InvalidInput(ValueError):
    pass


# -- documents ----------------------------------------------------------------


def parse_matrix_document(doc: Any) -> IntMatrix:
    """Validate a matrix document and return its rows (``n + m`` rows of length ``n``)."""
    if not isinstance(doc, dict):
        raise InvalidInput("document must be a JSON object")
    for key in ("n", "rows"):
        if key not in doc:
            raise InvalidInput(f"missing field '{key}'")
    n, m, rows = doc["n"], doc.get("m", 0), doc["rows"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidInput("field 'n' must be a positive integer")
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise InvalidInput("field 'm' must be a nonnegative integer")
    if not isinstance(rows, list) or len(rows) != n + m:
        raise InvalidInput(f"field 'rows' must hold n + m = {n + m} rows")
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InvalidInput(f"field 'rows[{r}]' must hold {n} entries")
        if any(not isinstance(x, int) or isinstance(x, bool) for x in row):
            raise InvalidInput(f"field 'rows[{r}]' must hold integers")
    mat = tuple(tuple(row) for row in rows)
    try:
        ExchangeMatrix(mat)
    except ValueError as exc:
        raise InvalidInput(f"field 'rows': {exc}") from exc
    return mat


def matrix_document(rows: Sequence[Sequence[int]], n: int | None = None) -> dict:
    n = len(rows[0]) if n is None else n
    return {"n": n, "m": len(rows) - n, "rows": [list(r) for r in rows]}


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: Any, where: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InvalidInput(f"field '{where}' must be a rational string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"field '{where}' is not a rational: {s!r}") from exc


def polytope_document(p: VPolytope, labels: Sequence | None = None) -> dict:
    doc: dict = {
        "ambientDim": p.dim,
        "vertices": [[rational_str(x) for x in v] for v in p.vertices],
    }
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


def parse_polytope_document(doc: Any) -> tuple[VPolytope, list | None]:
    if not isinstance(doc, dict):
        raise InvalidInput("document must be a JSON object")
    if "ambientDim" not in doc or "vertices" not in doc:
        raise InvalidInput("missing field 'ambientDim' or 'vertices'")
    dim = doc["ambientDim"]
    verts = []
    for i, v in enumerate(doc["vertices"]):
        if len(v) != dim:
            raise InvalidInput(f"field 'vertices[{i}]' has wrong length")
        verts.append(tuple(parse_rational(x, f"vertices[{i}]") for x in v))
    if verts != sorted(verts):
        raise InvalidInput("field 'vertices' is not lexicographically sorted")
    return VPolytope(dim, verts), doc.get("labels")


def off_text(p: VPolytope, precision: int = 6) -> str:
    lines = ["OFF", f"{len(p.vertices)} 0 0"]
    for v in p.vertices:
        lines.append(" ".join(f"{float(x):.{precision}f}" for x in v))
    return "\n".join(lines) + "\n"


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- helpers ------------------------------------------------------------------


def _word(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        word = tuple(int(t) - 1 for t in text.split(","))
    except ValueError as exc:
        raise InvalidInput(f"bad mutation word {text!r}") from exc
    if any(k < 0 for k in word):
        raise InvalidInput("mutation directions are 1-based")
    return word


def _rationals(text: str | None, flag: str) -> tuple[Fraction, ...] | None:
    if text is None:
        return None
    try:
        return tuple(Fraction(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"bad value for {flag}: {text!r}") from exc


def _read_input(path: str, stdin: TextIO) -> Any:
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from exc


def _base(mat: IntMatrix, args) -> IntMatrix:
    """Principal part, moved to the alternate initial seed if requested."""
    n = len(mat[0])
    b = mat[:n]
    word = _word(args.seed_mutations)
    if any(k >= n for k in word):
        raise InvalidInput("--seed-mutations direction out of range")
    return alternate_seed(b, word) if word else b


def _random_chat(rng: random.Random, n: int, v: int) -> tuple[Fraction, ...]:
    free = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n))
    pos = tuple(Fraction(rng.randint(1, 12), rng.randint(1, 5)) for _ in range(v - n))
    return free + pos


# -- subcommands ----------------------------------------------------------------


def cmd_mutate(mat, args, out) -> int:
    word = _word(args.word)
    bt = ExchangeMatrix(mat)
    if any(k >= bt.n for k in word):
        raise InvalidInput("--word direction out of range")
    out.write(dumps(matrix_document(mutate_word(bt, word).mat, bt.n)))
    return EXIT_OK


def cmd_explore(mat, args, out) -> int:
    atlas = explore(ExchangeMatrix(mat), cap=args.cap)
    doc = {
        "variables": [str(v) for v in atlas.variables],
        "clusters": [[i + 1 for i in c] for c in atlas.clusters],
        "paths": [[k + 1 for k in p] for p in atlas.paths],
        "numVariables": atlas.num_variables,
        "numClusters": atlas.num_clusters,
    }
    out.write(dumps(doc))
    return EXIT_OK


def cmd_gvectors(mat, args, out) -> int:
    atlas = explore(principal_extension(_base(mat, args)), cap=args.cap)
    out.write(dumps({"gvectors": [list(g) for g in g_vectors(atlas)]}))
    return EXIT_OK


def cmd_fpolys(mat, args, out) -> int:
    atlas = explore(principal_extension(_base(mat, args)), cap=args.cap)
    fs = [str(f_polynomial(atlas, i)) for i in range(atlas.num_variables)]
    out.write(dumps({"fpolynomials": fs}))
    return EXIT_OK


def cmd_univ(mat, args, out) -> int:
    u = universal_extension(_base(mat, args), cap=args.cap)
    out.write(dumps(matrix_document(u.full.mat, u.n)))
    return EXIT_OK


def cmd_kernel(mat, args, out) -> int:
    u = universal_extension(_base(mat, args), cap=args.cap)
    kb = kernel_matrix(u)
    out.write(dumps({"n": kb.n, "v": kb.v, "rows": [list(r) for r in kb.k]}))
    return EXIT_OK


def _slice(b: IntMatrix, args):
    c = _rationals(args.c, "--c")
    try:
        return build_slice(b, c, strict=not args.allow_zero)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def cmd_slice(mat, args, out) -> int:
    spec = _slice(_base(mat, args), args)
    n = spec.n
    eqs = []
    for (coeffs, rhs), (i, j, _) in zip(spec.slice.equations, spec.witnesses):
        eqs.append({
            "index": i + 1,
            "partner": j + 1,
            "coefficients": [int(a) for a in coeffs],
            "rhs": rational_str(rhs),
            "text": format_equation([0] * n + [int(a) for a in coeffs], f"c{i + 1}", n),
        })
    doc: dict = {"ambientDim": spec.v, "equations": eqs}
    chat = _rationals(args.chat, "--chat")
    if chat is not None:
        kb = kernel_matrix(universal_extension(spec.b, cap=args.cap))
        if len(chat) != kb.v:
            raise InvalidInput(f"--chat needs {kb.v} entries")
        doc["momentEquations"] = [
            {"coefficients": list(row), "rhs": rational_str(rhs),
             "text": format_equation(row, f"c{r + 1}", n)}
            for r, (row, rhs) in enumerate(moment_equations(kb, chat))
        ]
    out.write(dumps(doc))
    return EXIT_OK


def cmd_polytope(mat, args, out) -> int:
    spec = _slice(_base(mat, args), args)
    if args.which == "U":
        poly = u_polytope(spec)
        labels = [None if c is None else c + 1 for c in vertex_clusters(spec, poly)]
    else:
        poly = a_polytope(spec)
        labels = None
    if args.format == "off":
        out.write(off_text(poly, args.precision))
    else:
        out.write(dumps(polytope_document(poly, labels)))
    return EXIT_OK


def cmd_newton(mat, args, out) -> int:
    atlas = explore(principal_extension(_base(mat, args)), cap=args.cap)
    docs = []
    for i in range(atlas.num_variables):
        f = f_polynomial(atlas, i)
        doc = polytope_document(newton_polytope(f))
        doc["fpolynomial"] = str(f)
        doc["index"] = i + 1
        docs.append(doc)
    out.write(dumps({"newton": docs}))
    return EXIT_OK


def cmd_verify(mat, args, out) -> int:
    b = _base(mat, args)
    target = args.target
    if target == "theorem":
        if args.random:
            u = universal_extension(b, cap=args.cap)
            rng = random.Random(args.rng_seed)
            levels = [_random_chat(rng, u.n, u.v) for _ in range(args.random)]
        else:
            levels = [_rationals(args.chat, "--chat")]
        results = []
        ok = True
        for chat in levels:
            try:
                rep = verify_theorem(b, chat, check_fan=not args.no_fan)
            except ValueError as exc:
                raise InvalidInput(str(exc)) from exc
            ok &= rep.ok
            results.append({"chat": [rational_str(x) for x in rep.chat], "ok": rep.ok,
                            "report": rep.summary()})
        out.write(dumps({"target": "theorem", "ok": ok, "cases": results}))
    elif target == "univ":
        rep = check_univ_compatibility(b, _word(args.word), cap=args.cap)
        ok = rep.ok
        out.write(dumps({
            "target": "univ", "ok": ok, "word": [k + 1 for k in rep.word],
            "mutatedRows": [list(r) for r in rep.mutated_rows],
            "recomputedRows": [list(r) for r in rep.recomputed_rows],
        }))
    elif target == "kernel":
        u = universal_extension(b, cap=args.cap)
        ok = kernel_span_matches(kernel_matrix(u), u)
        out.write(dumps({"target": "kernel", "ok": ok}))
    else:  # fan
        spec = _slice(b, args)
        cmp = fans_equal(outer_normal_fan(a_polytope(spec)), realized_fan(b))
        ok = cmp.equal
        out.write(dumps({"target": "fan", "ok": ok, "mismatch": cmp.mismatch}))
    return EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "mutate": cmd_mutate,
    "explore": cmd_explore,
    "gvectors": cmd_gvectors,
    "fpolys": cmd_fpolys,
    "univ": cmd_univ,
    "kernel": cmd_kernel,
    "slice": cmd_slice,
    "polytope": cmd_polytope,
    "newton": cmd_newton,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abhy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "verify":
            p.add_argument("target", choices=["theorem", "univ", "kernel", "fan"])
        p.add_argument("input", nargs="?", default="-", help="matrix document (.cluster.json) or - for stdin")
        p.add_argument("--cap", type=int, default=None, help="exploration cap on clusters (env ABHY_CAP)")
        p.add_argument("--seed-mutations", default=None, help="move to another initial seed first, e.g. 1,2")
        if name == "verify":
            p.add_argument("--random", type=int, default=0, help="number of random c_hat levels")
            p.add_argument("--rng-seed", type=int, default=0)
            p.add_argument("--no-fan", action="store_true")
        if name in ("mutate", "verify"):
            p.add_argument("--word", default=None, help="mutation sequence, e.g. 1,2")
        if name in ("slice", "polytope", "verify"):
            p.add_argument("--c", default=None, help="slice constants for non-initial variables")
            p.add_argument("--chat", default=None, help="reduction level c_hat (n + (v-n) entries)")
            p.add_argument("--allow-zero", action="store_true", help="admit zero slice constants")
        if name == "polytope":
            p.add_argument("--which", choices=["U", "A"], default="U")
            p.add_argument("--format", choices=["json", "off"], default="json")
            p.add_argument("--precision", type=int, default=6)
    return parser


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        mat = parse_matrix_document(_read_input(args.input, stdin))
        return COMMANDS[args.command](mat, args, stdout)
    except InvalidInput as exc:
        print(f"abhy: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapExceeded as exc:
        print(f"abhy: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
