"""Plain-text file formats for matrices, signals, spectra, grams, reports.

All floats are serialized with Python's shortest round-trip repr (17
significant digits when needed), so write -> read -> write is byte
identical.  Writers go through a temp file in the target directory and a
rename, so readers never observe a half-written file.

    matrix    key=value pairs: n plus either preset=... with its
              parameters, or explicit row-major A=, B=, C=, D= arrays
    signal    header "kind=signal; n=..; counts=..; spacing=..; origin=.."
              then one "re,im" line per sample, row-major
    spectrum  like signal (grid metadata describes the *source* grid) plus
              warp=<row-major B>; samples run over the ascending lattice
    gram      header adds stride, warp, matrix (row-major 2n x 2n) and a
              window label; rows are "u,w,re,im" with flat row-major u, w
    report    CSV with one verification record per line, trailing
              "# floor ..." comment lines carry the per-suite margin floors
"""
from __future__ import annotations

import os
import tempfile

import numpy as np

from .errors import NSLCTError
from .grids import Grid, Gram, SampledSignal, Spectrum, WarpedGrid, frequency_grid
from .symplectic import FreeSymplecticMatrix, preset, validate


class ParseError(Exception):
    """Malformed input file; carries the offending line number when known."""

    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _fmt(x: float) -> str:
    return repr(float(x))


def _fmt_list(values) -> str:
    return ",".join(_fmt(v) for v in np.asarray(values, dtype=float).ravel())


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_pairs(text: str, line_no: int) -> dict[str, str]:
    out = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ParseError(f"expected key=value, got {chunk!r}", line_no)
        key, _, val = chunk.partition("=")
        out[key.strip().lower()] = val.strip()
    return out


def _floats(text: str, line_no: int, count: int | None = None) -> np.ndarray:
    try:
        vals = np.array([float(tok) for tok in text.split(",") if tok.strip() != ""])
    except ValueError:
        raise ParseError(f"bad float list {text!r}", line_no) from None
    if count is not None and vals.size != count:
        raise ParseError(f"expected {count} numbers, got {vals.size}", line_no)
    return vals


def _int(fields: dict, key: str, line_no: int) -> int:
    try:
        return int(fields[key])
    except KeyError:
        raise ParseError(f"missing field {key!r}", line_no) from None
    except ValueError:
        raise ParseError(f"field {key!r} is not an integer", line_no) from None


def _lines(path: str) -> list[tuple[int, str]]:
    with open(path, "r") as fh:
        raw = fh.read().splitlines()
    return [
        (i + 1, ln) for i, ln in enumerate(raw)
        if ln.strip() and not ln.lstrip().startswith("#")
    ]


# ---------------------------------------------------------------------------
# matrices


def read_matrix(path: str) -> FreeSymplecticMatrix:
    """Parse a matrix file; malformed text raises ParseError, constraint
    failures propagate as the usual validation errors."""
    lines = _lines(path)
    if not lines:
        raise ParseError("empty matrix file", 1)
    fields: dict[str, str] = {}
    last_line = lines[0][0]
    for line_no, text in lines:
        last_line = line_no
        fields.update(_parse_pairs(text, line_no))
    n = _int(fields, "n", last_line)
    if "preset" in fields:
        kind = fields.pop("preset")
        params = {}
        for key in ("alpha",):
            if key in fields:
                params[key] = float(_floats(fields[key], last_line, 1)[0])
        if "b" in fields and kind.lower() == "fresnel":
            vals = _floats(fields["b"], last_line)
            params["b"] = float(vals[0]) if vals.size == 1 else vals.reshape(n, n)
        if kind.lower() == "separable":
            for key in ("a", "b", "c", "d"):
                if key not in fields:
                    raise ParseError(f"separable needs field {key!r}", last_line)
                params[key] = _floats(fields[key], last_line)
        return preset(kind, n, **params)
    blocks = []
    for key in ("a", "b", "c", "d"):
        if key not in fields:
            raise ParseError(f"matrix file needs preset= or block {key.upper()}=", last_line)
        blocks.append(_floats(fields[key], last_line, n * n).reshape(n, n))
    return validate(*blocks)


# ---------------------------------------------------------------------------
# grids and value tables


def _grid_header(grid: Grid) -> str:
    return (
        f"n={grid.n}; counts={','.join(str(c) for c in grid.counts)}; "
        f"spacing={_fmt_list(grid.spacing)}; origin={_fmt_list(grid.origin)}"
    )


def _grid_from(fields: dict, line_no: int) -> Grid:
    n = _int(fields, "n", line_no)
    try:
        counts = tuple(int(tok) for tok in fields["counts"].split(","))
    except (KeyError, ValueError):
        raise ParseError("bad or missing counts", line_no) from None
    spacing = tuple(_floats(fields.get("spacing", ""), line_no, n))
    origin = tuple(_floats(fields.get("origin", ""), line_no, n))
    if len(counts) != n:
        raise ParseError(f"counts must list {n} axes", line_no)
    try:
        return Grid(counts, spacing, origin)
    except NSLCTError as exc:
        raise ParseError(str(exc), line_no) from None


def _complex_col(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    # re + 1j*im would turn a -0.0 imaginary part into +0.0; assign fields
    # instead so serialized signed zeros survive the round trip
    out = np.empty(re.shape, dtype=np.complex128)
    out.real = re
    out.imag = im
    return out


def _read_rows(lines, expected: int, columns: int, path_kind: str) -> np.ndarray:
    if len(lines) != expected:
        got_line = lines[-1][0] if lines else 1
        raise ParseError(
            f"{path_kind} needs {expected} sample lines, found {len(lines)}", got_line
        )
    out = np.empty((expected, columns))
    for row, (line_no, text) in enumerate(lines):
        out[row] = _floats(text, line_no, columns)
    return out


def write_signal(path: str, sig: SampledSignal):
    rows = [f"kind=signal; {_grid_header(sig.grid)}"]
    rows.extend(f"{_fmt(v.real)},{_fmt(v.imag)}" for v in sig.values.ravel())
    _atomic_write(path, "\n".join(rows) + "\n")


def read_signal(path: str) -> SampledSignal:
    lines = _lines(path)
    if not lines:
        raise ParseError("empty signal file", 1)
    head_no, head = lines[0]
    fields = _parse_pairs(head, head_no)
    if fields.get("kind") != "signal":
        raise ParseError("not a signal file (kind=signal missing)", head_no)
    grid = _grid_from(fields, head_no)
    table = _read_rows(lines[1:], grid.size, 2, "signal")
    values = _complex_col(table[:, 0], table[:, 1]).reshape(grid.counts)
    if not np.all(np.isfinite(values)):
        raise ParseError("signal contains non-finite samples", head_no)
    return SampledSignal(grid, values)


def write_spectrum(path: str, spec: Spectrum):
    head = (
        f"kind=spectrum; {_grid_header(spec.signal_grid)}; "
        f"warp={_fmt_list(spec.wgrid.warp)}"
    )
    rows = [head]
    rows.extend(f"{_fmt(v.real)},{_fmt(v.imag)}" for v in spec.values.ravel())
    _atomic_write(path, "\n".join(rows) + "\n")


def read_spectrum(path: str) -> Spectrum:
    lines = _lines(path)
    if not lines:
        raise ParseError("empty spectrum file", 1)
    head_no, head = lines[0]
    fields = _parse_pairs(head, head_no)
    if fields.get("kind") != "spectrum":
        raise ParseError("not a spectrum file (kind=spectrum missing)", head_no)
    grid = _grid_from(fields, head_no)
    warp = _floats(fields.get("warp", ""), head_no, grid.n * grid.n).reshape(grid.n, grid.n)
    table = _read_rows(lines[1:], grid.size, 2, "spectrum")
    values = _complex_col(table[:, 0], table[:, 1]).reshape(grid.counts)
    return Spectrum(WarpedGrid(frequency_grid(grid), warp), values, grid)


def write_gram(path: str, gram: Gram, signal_grid: Grid, stride: int,
               m: FreeSymplecticMatrix, window_label: str):
    base = gram.wgrid.base
    head = (
        f"kind=gram; {_grid_header(signal_grid)}; stride={stride}; "
        f"warp={_fmt_list(gram.wgrid.warp)}; matrix={_fmt_list(m.as_matrix())}; "
        f"window={window_label}"
    )
    rows = [head]
    usize = gram.ugrid.size
    wsize = base.size
    flat = gram.values.reshape(usize, wsize)
    for u in range(usize):
        for w in range(wsize):
            v = flat[u, w]
            rows.append(f"{u},{w},{_fmt(v.real)},{_fmt(v.imag)}")
    _atomic_write(path, "\n".join(rows) + "\n")


def read_gram(path: str) -> tuple[Gram, dict]:
    lines = _lines(path)
    if not lines:
        raise ParseError("empty gram file", 1)
    head_no, head = lines[0]
    fields = _parse_pairs(head, head_no)
    if fields.get("kind") != "gram":
        raise ParseError("not a gram file (kind=gram missing)", head_no)
    grid = _grid_from(fields, head_no)
    stride = _int(fields, "stride", head_no)
    if stride < 1 or any(N % stride for N in grid.counts):
        raise ParseError(f"stride {stride} does not divide {grid.counts}", head_no)
    warp = _floats(fields.get("warp", ""), head_no, grid.n * grid.n).reshape(grid.n, grid.n)
    two_n = 2 * grid.n
    matrix = _floats(fields.get("matrix", ""), head_no, two_n * two_n).reshape(two_n, two_n)
    ugrid = Grid(
        tuple(N // stride for N in grid.counts),
        tuple(stride * d for d in grid.spacing),
        grid.origin,
    )
    usize, wsize = ugrid.size, grid.size
    table = _read_rows(lines[1:], usize * wsize, 4, "gram")
    uu = table[:, 0].astype(int)
    ww = table[:, 1].astype(int)
    if np.any(uu < 0) or np.any(uu >= usize) or np.any(ww < 0) or np.any(ww >= wsize):
        raise ParseError("gram row indices out of range", head_no)
    flat = np.zeros((usize, wsize), dtype=np.complex128)
    flat[uu, ww] = _complex_col(table[:, 2], table[:, 3])
    gram = Gram(
        WarpedGrid(frequency_grid(grid), warp),
        ugrid,
        flat.reshape(ugrid.counts + grid.counts),
    )
    meta = {
        "grid": grid,
        "stride": stride,
        "matrix": matrix,
        "window": fields.get("window", ""),
    }
    return gram, meta


# ---------------------------------------------------------------------------
# point lists and reports


def read_wpoints(path: str, n: int) -> np.ndarray:
    lines = _lines(path)
    if not lines:
        raise ParseError("empty point list", 1)
    out = np.empty((len(lines), n))
    for row, (line_no, text) in enumerate(lines):
        out[row] = _floats(text, line_no, n)
    return out


def write_points(path: str, points: np.ndarray, values: np.ndarray, n: int):
    rows = [f"kind=points; n={n}"]
    for pt, v in zip(np.asarray(points).reshape(-1, n), values):
        rows.append(f"{_fmt_list(pt)},{_fmt(v.real)},{_fmt(v.imag)}")
    _atomic_write(path, "\n".join(rows) + "\n")


def write_report(path: str, records, floors: dict[str, float]):
    rows = ["suite,name,params,lhs,rhs,constant,margin,tol,passed"]
    for r in records:
        rows.append(
            f"{r.suite},{r.name},{r.params},{_fmt(r.lhs)},{_fmt(r.rhs)},"
            f"{_fmt(r.constant)},{_fmt(r.margin)},{_fmt(r.tol)},{int(r.passed)}"
        )
    for suite in sorted(floors):
        rows.append(f"# floor suite={suite} min_relative_margin={_fmt(floors[suite])}")
    _atomic_write(path, "\n".join(rows) + "\n")
