"""``tenskit`` command line.

Exit codes: 0 success, 1 a ``check`` law failed, 2 usage/parse/validation
error, 3 domain or arithmetic error, 4 file input/output error.  Every error
prints one line ``ERROR <kind>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import __version__
from .basis import basis_change, transform
from .bilateral import BilateralTensor, bilateral_contract
from .checks import SUITES, SuiteConfig, run_suite
from .errors import LabelError, ParseError, TensorError, ValidationError
from .exprlang import GRAMMAR, evaluate, parse, pretty_print, validate
from .io import FileFormatError, dumps, load_array, load_env, load_tensor, tensor_to_json
from .metric import lower_index, metric_new, raise_index
from .tensormap import as_label, contract

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    p = _Parser(prog="tenskit", formatter_class=fmt,
                description="Exact tensor-map algebra in abstract index notation.",
                epilog="expression grammar:\n" + GRAMMAR)
    p.add_argument("--version", action="version", version=f"tenskit {__version__}")
    sub = p.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)

    def verb(name, help_text):
        v = sub.add_parser(name, help=help_text, description=help_text, formatter_class=fmt,
                           epilog="expression grammar:\n" + GRAMMAR if name in ("eval", "parse") else None)
        v.add_argument("--out", help="write the result to this file instead of stdout")
        return v

    v = verb("eval", "evaluate an expression against tensors from files")
    v.add_argument("--env", action="append", required=True,
                   help="directory of tensor files or a file with a 'tensors' list (repeatable)")
    v.add_argument("--expr", required=True)
    v.add_argument("--name", default="result", help="name stored in the output file")
    v.add_argument("--format", choices=("json", "text"), default="json")

    v = verb("parse", "parse an expression and print it back")
    v.add_argument("--expr", required=True)
    v.add_argument("--plan", action="store_true", help="also print the evaluation plan")

    v = verb("transform", "re-express a tensor map in a new basis")
    v.add_argument("--tensor", required=True)
    v.add_argument("--change", required=True, help="array file [a_j^i] of the change of basis")
    v.add_argument("--target", default="ebar", help="name of the new basis")

    for name, what in (("raise", "subscript"), ("lower", "superscript")):
        v = verb(name, f"{name} a {what} with a metric")
        v.add_argument("--tensor", required=True)
        v.add_argument("--metric", required=True)
        v.add_argument("--label", required=True)

    v = verb("contract", "contract (subscript, superscript) label pairs")
    v.add_argument("--tensor", required=True)
    v.add_argument("--pairs", required=True, help="comma-separated sub:super pairs, e.g. a:b,c:d")

    v = verb("check", "run randomized property suites")
    v.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    v.add_argument("--dim", type=int, help="fix the dimension (1-4); default draws it per case")
    v.add_argument("--cases", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    return p


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _tensor_text(name: str, t) -> str:
    if t.coeffs.rank == 0:
        return f"{t.coeffs.item()}\n"
    rows = "\n".join("  " + " ".join(str(x) for x in r) for r in t.coeffs.rows())
    return f"{name}{t.signature()} [{t.basis}]\n{rows}\n"


def _load_map(path) -> tuple:
    name, t = load_tensor(path)
    if isinstance(t, BilateralTensor):
        raise TensorError(f"{path} holds a bilateral tensor; this verb needs a tensor map")
    return name, t


def _cmd_eval(args):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        env = load_env(args.env)
    for w in caught:
        print(f"WARNING: {w.message}", file=sys.stderr)
    e = parse(args.expr)
    result = evaluate(validate(e, env), env)
    if args.format == "text":
        _emit(_tensor_text(args.name, result), args.out)
    else:
        _emit(dumps(tensor_to_json(result, args.name)), args.out)


def _cmd_parse(args):
    e = parse(args.expr)
    text = pretty_print(e) + "\n"
    if args.plan:
        text += str(validate(e)) + "\n"
    _emit(text, args.out)


def _cmd_transform(args):
    name, t = _load_map(args.tensor)
    a, role = load_array(args.change)
    if role not in (None, "basis_change"):
        raise TensorError(f"{args.change} has role {role!r}, expected 'basis_change'")
    _emit(dumps(tensor_to_json(transform(t, basis_change(a, None, args.target)), name)), args.out)


def _cmd_metric(args):
    name, t = _load_map(args.tensor)
    g, role = load_array(args.metric)
    if role not in (None, "metric"):
        raise TensorError(f"{args.metric} has role {role!r}, expected 'metric'")
    op = raise_index if args.verb == "raise" else lower_index
    _emit(dumps(tensor_to_json(op(t, _label_arg(args.label), metric_new(g)), name)), args.out)


def _label_arg(text):
    try:
        return as_label(text)
    except LabelError as exc:
        raise UsageError(str(exc)) from None


def _cmd_contract(args):
    pairs = []
    for item in args.pairs.split(","):
        left, sep, right = item.strip().partition(":")
        if not sep:
            raise UsageError(f"pair {item!r} is not of the form sub:super")
        pairs.append((_label_arg(left), _label_arg(right)))
    name, t = load_tensor(args.tensor)
    out = bilateral_contract(t, pairs) if isinstance(t, BilateralTensor) else contract(t, pairs)
    _emit(dumps(tensor_to_json(out, name)), args.out)


def _cmd_check(args):
    if args.dim is not None and not 1 <= args.dim <= 4:
        raise UsageError("--dim must be between 1 and 4")
    if args.cases < 1:
        raise UsageError("--cases must be positive")
    cfg = SuiteConfig(cases=args.cases, seed=args.seed, dim=args.dim)
    names = sorted(SUITES, key=lambda n: SUITES[n].criterion) if args.suite == "all" else [args.suite]
    lines, ok = [], True
    for name in names:
        for r in run_suite(name, cfg):
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {name}/{r.name}: {r.cases - r.failures}/{r.cases} cases passed"
            if r.first_failure:
                line += f" (first failure {r.first_failure})"
            lines.append(line)
            ok = ok and r.passed
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_CHECK


_COMMANDS = {
    "eval": _cmd_eval, "parse": _cmd_parse, "transform": _cmd_transform, "raise": _cmd_metric,
    "lower": _cmd_metric, "contract": _cmd_contract, "check": _cmd_check,
}


def _fail(kind: str, message, code: int) -> int:
    print(f"ERROR {kind}: {' '.join(str(message).split())}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError("a verb is required (eval, parse, transform, raise, lower, contract, check)")
        return _COMMANDS[args.verb](args) or EXIT_OK
    except UsageError as exc:
        return _fail("usage", exc, EXIT_USAGE)
    except ParseError as exc:
        return _fail("parse", exc, EXIT_USAGE)
    except ValidationError as exc:
        return _fail("validate", exc, EXIT_USAGE)
    except FileFormatError as exc:
        return _fail("io", exc, EXIT_IO)
    except OSError as exc:
        return _fail("io", f"{exc.strerror or exc}: {exc.filename or ''}".rstrip(": "), EXIT_IO)
    except TensorError as exc:
        return _fail("domain", exc, EXIT_DOMAIN)
    except ArithmeticError as exc:
        return _fail("domain", exc, EXIT_DOMAIN)


if __name__ == "__main__":
    sys.exit(main())
