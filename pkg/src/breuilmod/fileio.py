"""Line-oriented text formats for modules and counterexample bundles, and report lines.

A module file::

    bmod 1
    p 3 m 1 d 2 N 12
    hbar T1^2*T2^2
    rank 2
    T1^2; 0
    0; T2^2
    cert f T1^2*T2^2
    T2^2; 0
    0; T1^2

A series whose precision is below N carries a suffix ``@k``.  A field with a
non-default modulus appends ``modulus c0 c1 ... cm`` to the header line.
"""

from __future__ import annotations

from pathlib import Path

from .errors import BreuilError, FormatError
from .field import GroundField, default_modulus, make_field
from .healthiness import CounterexampleBundle, Verdict, verify_bundle
from .modules import BreuilModP, Certificate, MorphismP
from .semilinear import SeriesMatrix
from .series import RingContext, Series

MODULE_HEADER = "bmod 1"
BUNDLE_HEADER = "bbundle 1"


# -- series and matrices ------------------------------------------------------

def format_series(s: Series) -> str:
    text = str(s)
    return text if s.prec == s.ctx.N else f"{text} @{s.prec}"


def parse_entry(text: str, ctx: RingContext) -> Series:
    body, sep, prec = text.partition("@")
    try:
        s = ctx.parse(body.strip())
    except BreuilError as exc:
        raise FormatError(f"bad series {body.strip()!r}: {exc}") from exc
    if sep:
        try:
            k = int(prec.strip())
        except ValueError:
            raise FormatError(f"bad precision suffix in {text!r}") from None
        s = s.truncate(k)
    return s


def _format_rows(M: SeriesMatrix) -> list[str]:
    return ["; ".join(format_series(x) for x in row) for row in M.rows]


def _parse_rows(lines, ctx: RingContext, nrows: int, ncols: int) -> SeriesMatrix:
    rows = []
    for _ in range(nrows):
        line = _next(lines, "matrix row")
        cells = [c for c in line.split(";")]
        if len(cells) != ncols:
            raise FormatError(f"expected {ncols} entries, got {len(cells)} in {line!r}")
        rows.append([parse_entry(c, ctx) for c in cells])
    return SeriesMatrix(ctx, rows)


def _next(lines, what: str) -> str:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            return line
    raise FormatError(f"unexpected end of file, expected {what}")


def _expect(line: str, key: str) -> str:
    head, _, rest = line.partition(" ")
    if head != key:
        raise FormatError(f"expected '{key} ...', got {line!r}")
    return rest.strip()


# -- modules --------------------------------------------------------------------

def format_context(ctx: RingContext) -> str:
    F = ctx.field
    line = f"p {F.p} m {F.m} d {ctx.d} N {ctx.N}"
    if F.m > 1 and F.modulus != default_modulus(F.p, F.m):
        line += " modulus " + " ".join(str(c) for c in F.modulus)
    return line


def parse_context(line: str) -> RingContext:
    tok = line.split()
    try:
        vals = dict(zip(tok[0:8:2], (int(x) for x in tok[1:8:2])))
        if [tok[i] for i in (0, 2, 4, 6)] != ["p", "m", "d", "N"]:
            raise ValueError
        modulus = None
        if len(tok) > 8:
            if tok[8] != "modulus":
                raise ValueError
            modulus = [int(x) for x in tok[9:]]
    except (ValueError, IndexError):
        raise FormatError(f"bad ring line {line!r}") from None
    F: GroundField = make_field(vals["p"], vals["m"], modulus)
    return RingContext(F, vals["d"], vals["N"])


def format_module(M: BreuilModP) -> str:
    lines = [MODULE_HEADER, format_context(M.ctx), f"hbar {format_series(M.hbar)}", f"rank {M.rank}"]
    lines += _format_rows(M.A)
    if M.cert is not None:
        lines.append(f"cert f {format_series(M.cert.f)}")
        lines += _format_rows(M.cert.B)
    return "\n".join(lines) + "\n"


def _read_module(lines) -> BreuilModP:
    if _next(lines, "header") != MODULE_HEADER:
        raise FormatError(f"module block must start with '{MODULE_HEADER}'")
    ctx = parse_context(_next(lines, "ring line"))
    hbar = parse_entry(_expect(_next(lines, "hbar"), "hbar"), ctx)
    try:
        r = int(_expect(_next(lines, "rank"), "rank"))
    except ValueError:
        raise FormatError("rank must be an integer") from None
    A = _parse_rows(lines, ctx, r, r)
    cert = None
    peek = lines.peek()
    if peek is not None and peek.startswith("cert"):
        line = _next(lines, "cert")
        rest = _expect(line, "cert")
        f = parse_entry(_expect(rest, "f"), ctx)
        cert = Certificate(_parse_rows(lines, ctx, r, r), f)
    return BreuilModP(hbar, A, cert)


class _Lines:
    """Line iterator with one line of lookahead."""

    def __init__(self, text: str):
        self._lines = text.splitlines()
        self._pos = 0

    def __iter__(self):
        return self

    def __next__(self) -> str:
        if self._pos >= len(self._lines):
            raise StopIteration
        self._pos += 1
        return self._lines[self._pos - 1]

    def peek(self) -> str | None:
        pos = self._pos
        while pos < len(self._lines):
            line = self._lines[pos].strip()
            if line and not line.startswith("#"):
                return line
            pos += 1
        return None


def parse_module(text: str) -> BreuilModP:
    lines = _Lines(text)
    M = _read_module(lines)
    if lines.peek() is not None:
        raise FormatError(f"trailing content: {lines.peek()!r}")
    return M


# -- bundles --------------------------------------------------------------------

def format_bundle(b: CounterexampleBundle) -> str:
    U = b.alpha.U
    parts = [BUNDLE_HEADER, f"case {b.case}", "source", format_module(b.M1).rstrip("\n"),
             "target", format_module(b.M2).rstrip("\n"), f"morphism {U.nrows} {U.ncols}"]
    parts += _format_rows(U)
    return "\n".join(parts) + "\n"


def parse_bundle(text: str, verify: bool = True) -> CounterexampleBundle:
    lines = _Lines(text)
    if _next(lines, "header") != BUNDLE_HEADER:
        raise FormatError(f"bundle must start with '{BUNDLE_HEADER}'")
    case = _expect(_next(lines, "case"), "case")
    if _next(lines, "source") != "source":
        raise FormatError("expected 'source'")
    M1 = _read_module(lines)
    if _next(lines, "target") != "target":
        raise FormatError("expected 'target'")
    M2 = _read_module(lines)
    dims = _expect(_next(lines, "morphism"), "morphism").split()
    try:
        r, c = int(dims[0]), int(dims[1])
    except (ValueError, IndexError):
        raise FormatError("morphism line needs two integers") from None
    U = _parse_rows(lines, M1.ctx, r, c)
    bundle = CounterexampleBundle(case, M1, M2, MorphismP(M1, M2, U))
    if verify:
        bundle.checks = verify_bundle(bundle)
    return bundle


def is_bundle_text(text: str) -> bool:
    first = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    return first == BUNDLE_HEADER


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def write_text(path, text: str) -> None:
    Path(path).write_text(text)


# -- reports --------------------------------------------------------------------

def format_verdict(v: Verdict, witness_file: str | None = None) -> str:
    rules = ",".join(v.rules) if v.rules else "none"
    summary = (f"# quasi-healthy: {v.quasi_healthy}; p-quasi-healthy: {v.p_quasi_healthy}; "
               f"decided by: {rules}")
    lines = [summary, f"e={v.e}", f"quasi_healthy={v.quasi_healthy}",
             f"p_quasi_healthy={v.p_quasi_healthy}", f"rules={rules}"]
    if witness_file is not None:
        lines.append(f"witness_file={witness_file}")
    lines += [f"note={n}" for n in v.notes]
    return "\n".join(lines) + "\n"
