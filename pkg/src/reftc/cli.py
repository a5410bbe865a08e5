"""Command-line front end.

Four commands: check runs the type checker over program files, verify
additionally certifies every definition against the finite model, laws
runs the structural law suites, and dump prints denotations of checked
definitions.  Files are processed in argument order and reporting order
is fixed, so output is byte-for-byte deterministic; REFTC_SEED is
accepted and ignored, nothing here is randomised.

A program file may open with a comment line `; model: MONAD LIFTING`
naming the model it is written against, since constant declarations are
validated relative to the chosen monad.  Explicit --monad/--lifting
flags take precedence over the pragma.

Exit codes, stable across commands: 0 success, 2 a judgement failed to
check or verify or a law found a counterexample, 3 parse error, 4 file
system error, 5 invalid model configuration (including a signature that
the chosen model rejects).  With several files the first failing class
in argument order wins.

In structured mode every text line becomes one JSON record on its own
line, carrying the same fields, so golden tests can diff either stream.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checker, interp, laws
from . import parse as P
from . import syntax as S
from .effects import MONADS, liftings_for
from .errors import CheckError, KernelError, ModelError, ParseError, Unsupported
from .finset import render_atom
from .interp import ModelEnv

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_PARSE = 3
EXIT_IO = 4
EXIT_CONFIG = 5


class Emitter:
    """Writes the text stream or the structured mirror of it."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def emit(self, text: str, **fields):
        if self.fmt == "structured":
            rec = dict(fields)
            rec["text"] = text
            print(json.dumps(rec, sort_keys=True), file=self.out)
        else:
            print(text, file=self.out)

    def diagnostic(self, path: str, loc, code: str, message: str):
        line, col = loc if isinstance(loc, tuple) else (0, 0)
        self.emit(
            "error %s:%d:%d %s %s" % (path, line, col, code, message),
            kind="diagnostic",
            severity="error",
            path=path,
            line=line,
            col=col,
            code=code,
            message=message,
        )


def _resolve_lifting(monad: str, lifting):
    table = liftings_for(monad)
    if lifting is None:
        return interp._DEFAULT_LIFTING[monad]
    if lifting not in table:
        raise ModelError(
            "lifting %r is not available for the %s monad (choose from %s)"
            % (lifting, monad, ", ".join(sorted(table)))
        )
    return lifting


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _model_pragma(text: str):
    """A leading comment line `; model: MONAD LIFTING` names the model a
    file is written against; flags still win."""
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if not stripped.startswith(";"):
            break
        body = stripped.lstrip(";").strip()
        if body.startswith("model:"):
            words = body[len("model:"):].split()
            if len(words) != 2:
                raise ModelError(
                    "model pragma needs a monad and a lifting, got %r" % body
                )
            return words[0], words[1]
    return None


def _make_env(prog, args, text=""):
    monad, lifting = args.monad, args.lifting
    if monad is None:
        pragma = _model_pragma(text)
        if pragma:
            monad = pragma[0]
            if lifting is None:
                lifting = pragma[1]
        else:
            monad = "none"
    if monad not in MONADS:
        raise ModelError(
            "unknown monad %r (choose from %s)" % (monad, ", ".join(sorted(MONADS)))
        )
    lifting = _resolve_lifting(monad, lifting)
    return ModelEnv(prog, monad=monad, lifting=lifting, layer=args.layer)


def _worst(codes):
    for c in codes:
        if c != EXIT_OK:
            return c
    return EXIT_OK


def _per_file(paths, args, em, handler):
    """Parse and model-load each file, then hand off; maps the error
    classes to diagnostics and exit codes uniformly."""
    codes = []
    for path in paths:
        try:
            text = _load(path)
        except OSError as e:
            em.diagnostic(path, None, "E-IO", str(e))
            codes.append(EXIT_IO)
            continue
        try:
            prog = P.parse_program(text)
        except ParseError as e:
            em.diagnostic(path, (e.line, e.col), "E-PARSE", str(e))
            codes.append(EXIT_PARSE)
            continue
        try:
            env = _make_env(prog, args, text)
        except (ModelError, Unsupported) as e:
            em.diagnostic(path, None, "E-MODEL", str(e))
            codes.append(EXIT_CONFIG)
            continue
        try:
            codes.append(handler(path, prog, env))
        except CheckError as e:
            em.diagnostic(path, e.loc, e.code, str(e))
            codes.append(EXIT_FAIL)
        except Unsupported as e:
            em.diagnostic(path, None, "E-MODEL", str(e))
            codes.append(EXIT_CONFIG)
        except KernelError as e:
            em.diagnostic(path, None, "E-KERNEL", str(e))
            codes.append(EXIT_FAIL)
    return _worst(codes)


def cmd_check(args, em: Emitter) -> int:
    def handler(path, prog, env):
        report = checker.check_program(env, prog, args.layer)
        for r in report.results:
            em.emit(
                "ok %s %s (%s)" % (r.kind, r.name, r.detail),
                kind="result",
                path=path,
                name=r.name,
                form=r.kind,
                detail=r.detail,
            )
        em.emit(
            "%s: %d forms checked" % (path, len(report.results)),
            kind="summary",
            path=path,
            checked=len(report.results),
        )
        return EXIT_OK

    return _per_file(args.paths, args, em, handler)


def cmd_verify(args, em: Emitter) -> int:
    if args.layer != "refinement":
        em.diagnostic(
            "-", None, "E-MODEL", "verification requires the refinement layer"
        )
        return EXIT_CONFIG

    def handler(path, prog, env):
        checker.check_program(env, prog, "refinement")
        failed = False
        for d in prog.defs:
            rctx = tuple(t for _, t in d.ctx)
            if isinstance(d.ty, S.COMP_TYPES):
                res = interp.verify_comp(env, rctx, d.term, d.ty)
            else:
                res = interp.verify_value(env, rctx, d.term, d.ty)
            if res.ok:
                em.emit(
                    "PASS %s: %s" % (d.name, res.describe()),
                    kind="certificate",
                    path=path,
                    name=d.name,
                    ok=True,
                    environments=len(res.witness),
                )
                for image in res.witness:
                    g, e = image
                    em.emit(
                        "  at %s = %s" % (render_atom(g), render_atom(e)),
                        kind="witness",
                        path=path,
                        name=d.name,
                        env=render_atom(g),
                        value=render_atom(e),
                    )
            else:
                failed = True
                em.emit(
                    "FAIL %s: %s" % (d.name, res.describe()),
                    kind="certificate",
                    path=path,
                    name=d.name,
                    ok=False,
                    counterexample=render_atom(res.counterexample),
                )
        return EXIT_FAIL if failed else EXIT_OK

    return _per_file(args.paths, args, em, handler)


def cmd_laws(args, em: Emitter) -> int:
    try:
        if args.suite:
            results = laws.run_suite(args.suite, args.bound)
        else:
            results = laws.run_all(args.bound, kernel_bound=args.kernel_bound)
    except KeyError as e:
        em.diagnostic("-", None, "E-MODEL", str(e.args[0]))
        return EXIT_CONFIG
    bad = 0
    for r in results:
        status = "ok" if r.ok else "FAIL"
        em.emit(
            "%s %s/%s instances=%d" % (status, r.suite, r.law, r.instances),
            kind="law",
            suite=r.suite,
            law=r.law,
            instances=r.instances,
            ok=r.ok,
        )
        for f in r.failures:
            em.emit(
                "  counterexample: %s" % f,
                kind="counterexample",
                suite=r.suite,
                law=r.law,
                detail=str(f),
            )
        bad += 0 if r.ok else 1
    em.emit(
        "%d laws checked, %d failed" % (len(results), bad),
        kind="summary",
        laws=len(results),
        failed=bad,
    )
    return EXIT_FAIL if bad else EXIT_OK


def cmd_dump(args, em: Emitter) -> int:
    def handler(path, prog, env):
        checker.check_program(env, prog, args.layer)
        for d in prog.defs:
            em.emit("def %s" % d.name, kind="def", path=path, name=d.name)
            rctx = tuple(t for _, t in d.ctx)
            ctx = interp.erase_ctx(rctx)
            ty = S.erase(d.ty)
            if isinstance(ty, S.COMP_TYPES):
                fam = interp.denote_ctype(env, ctx, ty).carrier
                sec = interp.denote_cterm(env, ctx, S.erase(d.term), ty)
            else:
                fam = interp.denote_vtype(env, ctx, ty)
                sec = interp.denote_vterm(env, ctx, S.erase(d.term))
            for line in interp.dump_family(fam):
                em.emit("  " + line, kind="family", name=d.name, detail=line)
            for line in interp.dump_section(sec):
                em.emit("  " + line, kind="section", name=d.name, detail=line)
            if args.layer == "refinement":
                p = interp.denote_rctx(env, rctx)
                for line in interp.dump_pred(p):
                    em.emit(
                        "  context %s" % line,
                        kind="context-pred",
                        name=d.name,
                        detail=line,
                    )
                if isinstance(d.ty, S.COMP_TYPES):
                    o = interp.denote_rctype(env, rctx, d.ty).refined
                else:
                    o = interp.denote_rvtype(env, rctx, d.ty)
                for line in interp.dump_pred(o.q):
                    em.emit(
                        "  refined %s" % line,
                        kind="refined-pred",
                        name=d.name,
                        detail=line,
                    )
        return EXIT_OK

    return _per_file(args.paths, args, em, handler)


def _add_model_flags(sp):
    sp.add_argument(
        "--layer",
        choices=("underlying", "refinement"),
        default="refinement",
        help="which type system to run (default refinement)",
    )
    sp.add_argument(
        "--monad",
        choices=tuple(sorted(MONADS)),
        default=None,
        help="effect interpretation (default: the file's model pragma, "
        "else none)",
    )
    sp.add_argument(
        "--lifting",
        default=None,
        help="predicate lifting; defaults to the monad's canonical one",
    )
    sp.add_argument(
        "--format",
        dest="fmt",
        choices=("text", "structured"),
        default="text",
        help="output mode (default text)",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="reftc",
        description="Type checker and finite-model soundness verifier.",
        epilog="REFTC_SEED is read and ignored; all output is deterministic.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="parse and type-check program files")
    sp.add_argument("paths", nargs="+")
    _add_model_flags(sp)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser(
        "verify", help="type-check, then certify soundness in the model"
    )
    sp.add_argument("paths", nargs="+")
    _add_model_flags(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("laws", help="run the structural law suites")
    sp.add_argument(
        "suite",
        nargs="?",
        default=None,
        help="one of %s (default: all)" % ", ".join(laws.SUITES),
    )
    sp.add_argument(
        "--bound", type=int, default=2, help="carrier size bound (default 2)"
    )
    sp.add_argument(
        "--kernel-bound",
        type=int,
        default=None,
        help="deeper bound for the kernel and fixpoint suites",
    )
    sp.add_argument(
        "--format",
        dest="fmt",
        choices=("text", "structured"),
        default="text",
        help="output mode (default text)",
    )
    sp.set_defaults(fn=cmd_laws)

    sp = sub.add_parser("dump", help="print denotations of checked programs")
    sp.add_argument("paths", nargs="+")
    _add_model_flags(sp)
    sp.set_defaults(fn=cmd_dump)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    em = Emitter(args.fmt)
    try:
        return args.fn(args, em)
    except ModelError as e:
        em.diagnostic("-", None, "E-MODEL", str(e))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
