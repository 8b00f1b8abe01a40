"""Command-line interface: normal forms, traces, inner products, bases and verification runs.

Settings for ``verify`` and ``basis`` are resolved with the precedence
flags > environment (``NCTORUS_*``) > JSON config file > defaults.

Exit codes: 0 success (for ``verify``: every exact check passed), 1 an exact
check failed, 2 invalid input (bad config, bad literal, truncation above the cap).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import fields
from typing import Dict, List, Optional, Sequence

from .basis import complement_basis, epsilon_basis, w1_decomposition
from .field import eval_numeric, format_scalar
from .literals import ParseError, parse_vector
from .vectors import format_vector, inner, trace, vector_to_json
from .verify.suite import TRUNCATION_CAP, ConfigError, SuiteConfig, all_lemma_ids, run_suite
from .words import ScaledWord, format_scaled_word

log = logging.getLogger("nctorus")

ENV_PREFIX = "NCTORUS_"
EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID = 0, 1, 2
FORMATS = ("json", "markdown")
BASIS_CLASSES = ("Zero", "One", "Two", "OneBeta", "OneAlpha1", "OneAlpha2", "epsilon")

# keys accepted outside SuiteConfig
_OUTPUT_KEYS = ("format", "out")


class InputError(ValueError):
    pass


# literal commands ------------------------------------------------------------------


def _parse(text: str, what: str = "expression"):
    try:
        return parse_vector(text)
    except ParseError as exc:
        raise InputError(f"cannot parse {what} {text!r}: {exc}") from None


def _scalar_lines(value, theta: Optional[float]) -> List[str]:
    lines = [format_scalar(value)]
    if theta is not None:
        z = eval_numeric(value, theta)
        lines.append(f"{z.real:.15g}{z.imag:+.15g}j")
    return lines


def cmd_nf(args) -> int:
    v = _parse(args.word, "word")
    if len(v) > 1:
        raise InputError(f"{args.word!r} is not a single word")
    if v.is_zero():
        print("0")
        return EXIT_OK
    (w, c), = v.items()
    print(format_scaled_word(ScaledWord(c, w)))
    return EXIT_OK


def _expr_arg(args) -> str:
    text = args.expr if args.expr is not None else args.literal
    if text is None:
        raise InputError("no expression given (positional or --expr)")
    return text


def cmd_trace(args) -> int:
    v = _parse(_expr_arg(args))
    print("\n".join(_scalar_lines(trace(v), args.theta)))
    return EXIT_OK


def cmd_inner(args) -> int:
    texts = list(args.literals) + list(args.expr or [])
    if not texts or len(texts) > 2:
        raise InputError("inner takes one or two expressions")
    x = _parse(texts[0])
    y = _parse(texts[1]) if len(texts) == 2 else x
    print("\n".join(_scalar_lines(inner(x, y), args.theta)))
    return EXIT_OK


# settings ----------------------------------------------------------------------------


def _load_config_file(path: Optional[str]) -> Dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def _env_settings(environ) -> Dict:
    names = {f.name for f in fields(SuiteConfig)} | set(_OUTPUT_KEYS) | {"lemma"}
    out = {}
    for key, value in environ.items():
        if not key.startswith(ENV_PREFIX):
            continue
        name = key[len(ENV_PREFIX):].lower()
        if name not in names:
            continue
        if name in ("lemma", "lemmas"):
            out["lemmas"] = [s.strip() for s in value.split(",") if s.strip()]
        elif name == "unsafe_truncation":
            out[name] = value.strip().lower() in ("1", "true", "yes", "on")
        else:
            out[name] = value
    return out


def _flag_settings(args) -> Dict:
    out = {}
    for name in ("theta", "truncation", "seed", "lmax", "format", "out"):
        value = getattr(args, name, None)
        if value is not None:
            out[name] = value
    if getattr(args, "lemma", None):
        out["lemmas"] = list(args.lemma)
    if getattr(args, "unsafe_truncation", False):
        out["unsafe_truncation"] = True
    return out


def resolve_settings(args, environ=None) -> Dict:
    """Merge defaults < config file < environment < flags; returns config and output settings."""
    environ = os.environ if environ is None else environ
    merged: Dict = {}
    merged.update(_load_config_file(getattr(args, "config", None)))
    merged.update(_env_settings(environ))
    merged.update(_flag_settings(args))
    output = {"format": merged.pop("format", "json"), "out": merged.pop("out", None)}
    if output["format"] not in FORMATS:
        raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
    config = SuiteConfig.from_mapping(merged)
    config.validate()
    return {"config": config, **output}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


# basis / verify -------------------------------------------------------------------


def _basis_family(l: int, cls: str):
    if cls == "epsilon":
        if l != 1:
            raise InputError("the epsilon family exists for l = 1 only")
        return list(epsilon_basis())
    if cls == "OneAlpha1":
        return list(w1_decomposition(l).alpha1.members)
    if cls == "OneAlpha2":
        return list(w1_decomposition(l).alpha2.members)
    return list(complement_basis(l, cls).members)


def cmd_basis(args) -> int:
    settings = resolve_settings(args)
    cfg = settings["config"]
    l = args.length
    if l < 1:
        raise InputError("length must be >= 1")
    if l > cfg.truncation:
        raise ConfigError(f"length {l} exceeds the truncation {cfg.truncation}")
    classes = [args.cls] if args.cls else ["Zero", "One", "Two"]
    families = {cls: _basis_family(l, cls) for cls in classes}
    if settings["format"] == "json":
        payload = [{"l": l, "class": cls, "members": [vector_to_json(v) for v in vs]}
                   for cls, vs in families.items()]
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = []
        for cls, vs in families.items():
            lines.append(f"## l = {l}, class {cls} ({len(vs)} vectors)")
            lines.append("")
            lines.extend(f"- `{format_vector(v)}`" for v in vs)
            lines.append("")
        text = "\n".join(lines)
    _emit(text, settings["out"])
    return EXIT_OK


def cmd_verify(args) -> int:
    settings = resolve_settings(args)
    cfg = settings["config"]
    report = run_suite(cfg, progress=lambda name: log.info("running %s", name))
    if settings["format"] == "json":
        text = report.to_json(timing=not args.no_timing) + "\n"
    else:
        text = report.to_markdown()
    _emit(text, settings["out"])
    for r in report.exact_failures:
        log.warning("FAIL %s %s", r.lemma_id, json.dumps(r.params, sort_keys=True))
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def cmd_lemmas(args) -> int:
    print("\n".join(all_lemma_ids()))
    return EXIT_OK


# parser ------------------------------------------------------------------------------


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with settings (keys as in the report params)")
    p.add_argument("--theta", type=float, help="rotation angle for numeric checks")
    p.add_argument("--truncation", type=int, help=f"word-length truncation (cap {TRUNCATION_CAP})")
    p.add_argument("--unsafe-truncation", action="store_true", help="allow truncation above the cap")
    p.add_argument("--seed", type=int, help="base seed for sampled checks")
    p.add_argument("--lemma", action="append", metavar="ID", help="restrict to this lemma id (repeatable)")
    p.add_argument("--lmax", type=int, help="largest l for the chi recursion")
    p.add_argument("--out", help="write the output to this file instead of stdout")
    p.add_argument("--format", choices=FORMATS, default=None, help="output format (default json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nctorus", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", help="normal form of a word literal")
    p.add_argument("word", help='e.g. "u1 v1 u1 v1^-1"')
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("trace", help="trace of a vector expression")
    p.add_argument("literal", nargs="?", help='e.g. "1*<identity> + 2*u1"')
    p.add_argument("--expr", help="expression (alternative to the positional argument)")
    p.add_argument("--theta", type=float, help="also print the value at this angle")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("inner", help="inner product <x, y> = tau(y^* x) (y defaults to x)")
    p.add_argument("literals", nargs="*", help="one or two expressions")
    p.add_argument("--expr", action="append", help="expression (repeatable, alternative to positionals)")
    p.add_argument("--theta", type=float, help="also print the value at this angle")
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("basis", help="orthogonal basis of a complement class W_l (-) S_l")
    p.add_argument("length", type=int, help="word length l")
    p.add_argument("--class", dest="cls", choices=BASIS_CLASSES, help="class (default: Zero, One, Two)")
    _add_run_options(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", help="run the verification suite and write a report")
    _add_run_options(p)
    p.add_argument("--no-timing", action="store_true", help="zero the millis fields (reproducible output)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemmas", help="list the lemma ids accepted by --lemma")
    p.set_defaults(func=cmd_lemmas)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ConfigError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
