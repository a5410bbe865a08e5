"""Corpus discovery and in-process command running shared by the tests."""

import contextlib
import io
from pathlib import Path

CORPUS = Path(__file__).parent / "corpus"
GOLDEN = Path(__file__).parent / "golden"


def corpus_files(kind: str) -> list[Path]:
    return sorted((CORPUS / kind).glob("*.rtc"))


def read_header(path: Path):
    """The leading comment pragmas: the model a file is written against
    and, for rejected files, the expected failure stage and code."""
    model = ("none", "id")
    fails = None
    for line in path.read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if not stripped.startswith(";"):
            break
        body = stripped.lstrip(";").strip()
        if body.startswith("model:"):
            model = tuple(body[len("model:"):].split())
        elif body.startswith("fails:"):
            stage, code = body[len("fails:"):].split()
            fails = (stage, code)
    return model, fails


def run_cli(argv: list[str]):
    """Drive the command line in-process, returning (exit code, stdout)."""
    from reftc import cli

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()
