"""LIBSVM-format dataset ingestion and the versioned model file format.

Data files: one example per line, ``<label> <idx>:<val> ...`` with 1-based,
strictly increasing indices (converted to 0-based internally).  Lines that
are empty or start with ``#`` are skipped.  Explicit ``:0`` values are
dropped so the nonzero count stays meaningful.

Model files (text, version ``v1``)::

    sparselin-model v1
    loss squared
    dim 3
    bias 2
    0:2
    2:-0.5

Floats are serialized with the shortest decimal representation that parses
back to the identical bits, so write/read round-trips are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

import numpy as np

from .errors import (
    DimensionError,
    EmptyDatasetError,
    FormatError,
    IndexOrderError,
    ParseError,
)
from .losses import LossKind
from .solvers import LinearModel
from .sparse_core import SparseVec

MODEL_MAGIC = "sparselin-model v1"


@dataclass
class Dataset:
    """Labeled sparse examples sharing one feature-space dimension."""

    examples: list[tuple[SparseVec, float]]
    dim: int

    def __post_init__(self):
        for i, (x, _) in enumerate(self.examples):
            if x.dim != self.dim:
                raise DimensionError(
                    f"example {i + 1} has dim {x.dim}, dataset dim is {self.dim}"
                )

    @property
    def m(self) -> int:
        return len(self.examples)


def fmt_float(x: float) -> str:
    """Shortest decimal that round-trips; integral values drop the '.0'."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def _parse_feature(tok: str, line_no: int) -> tuple[int, float]:
    idx_s, sep, val_s = tok.partition(":")
    if not sep:
        raise ParseError(line_no, f"expected <index>:<value>, got {tok!r}")
    try:
        idx = int(idx_s)
    except ValueError:
        raise ParseError(line_no, f"bad feature index {idx_s!r}") from None
    if idx < 1:
        raise ParseError(line_no, f"feature indices are 1-based, got {idx}")
    try:
        val = float(val_s)
    except ValueError:
        raise ParseError(line_no, f"bad feature value {val_s!r}") from None
    return idx - 1, val


def parse_libsvm(
    lines: Iterable[str],
    dim_override: int | None = None,
    require_labels: bool = True,
) -> Dataset:
    """Parse a LIBSVM text stream into a Dataset.

    ``dim_override`` fixes the dimension (indices at or beyond it are an
    error); otherwise the dimension is max observed index + 1.  With
    ``require_labels=False`` a line whose first token contains ':' is
    treated as all features with a placeholder label of 0 (prediction
    inputs).
    """
    rows: list[tuple[float, list[int], list[float]]] = []
    max_index = -1
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if require_labels or ":" not in tokens[0]:
            try:
                y = float(tokens[0])
            except ValueError:
                raise ParseError(line_no, f"bad label {tokens[0]!r}") from None
            feats = tokens[1:]
        else:
            y = 0.0
            feats = tokens
        indices: list[int] = []
        values: list[float] = []
        prev = -1
        for tok in feats:
            idx, val = _parse_feature(tok, line_no)
            if idx <= prev:
                raise IndexOrderError(
                    line_no, f"index {idx + 1} after {prev + 1}: must be strictly increasing"
                )
            prev = idx
            if dim_override is not None and idx >= dim_override:
                raise DimensionError(
                    f"line {line_no}: index {idx + 1} exceeds dimension {dim_override}"
                )
            if val == 0.0:
                continue
            indices.append(idx)
            values.append(val)
        if indices:
            max_index = max(max_index, indices[-1])
        rows.append((y, indices, values))
    if not rows:
        raise EmptyDatasetError("no data lines found")
    dim = dim_override if dim_override is not None else max_index + 1
    examples = [(SparseVec(idx, vals, dim), y) for y, idx, vals in rows]
    return Dataset(examples=examples, dim=dim)


def write_libsvm(data: Dataset, stream: IO[str]) -> None:
    """Inverse of parse_libsvm (indices back to 1-based)."""
    for x, y in data.examples:
        parts = [fmt_float(y)]
        parts.extend(f"{i + 1}:{fmt_float(v)}" for i, v in zip(x.indices, x.values))
        stream.write(" ".join(parts) + "\n")


def load_dataset(
    path: str, dim_override: int | None = None, require_labels: bool = True
) -> Dataset:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_libsvm(fh, dim_override, require_labels)


def write_model(model: LinearModel, stream: IO[str]) -> None:
    if not math.isfinite(model.b) or not np.all(np.isfinite(model.w)):
        raise FormatError("model contains non-finite values")
    stream.write(MODEL_MAGIC + "\n")
    stream.write(f"loss {model.loss.value}\n")
    stream.write(f"dim {model.dim}\n")
    stream.write(f"bias {fmt_float(model.b)}\n")
    for i in np.nonzero(model.w)[0]:
        stream.write(f"{i}:{fmt_float(model.w[i])}\n")


def _model_lines(stream: Iterable[str]) -> Iterator[tuple[int, str]]:
    for line_no, raw in enumerate(stream, start=1):
        yield line_no, raw.rstrip("\r\n")


def read_model(stream: Iterable[str]) -> LinearModel:
    lines = _model_lines(stream)

    def next_line(what: str) -> tuple[int, str]:
        try:
            return next(lines)
        except StopIteration:
            raise FormatError(f"unexpected end of model file, expected {what}") from None

    line_no, magic = next_line("header")
    if magic != MODEL_MAGIC:
        raise FormatError(f"unknown model version {magic!r}", line_no)

    line_no, loss_line = next_line("loss")
    if not loss_line.startswith("loss "):
        raise FormatError(f"expected 'loss <name>', got {loss_line!r}", line_no)
    loss_name = loss_line[5:]
    try:
        loss = LossKind(loss_name)
    except ValueError:
        raise FormatError(f"unknown loss {loss_name!r}", line_no) from None

    line_no, dim_line = next_line("dim")
    try:
        assert dim_line.startswith("dim ")
        dim = int(dim_line[4:])
        assert dim >= 0
    except (AssertionError, ValueError):
        raise FormatError(f"expected 'dim <n>', got {dim_line!r}", line_no) from None

    line_no, bias_line = next_line("bias")
    try:
        assert bias_line.startswith("bias ")
        bias = float(bias_line[5:])
    except (AssertionError, ValueError):
        raise FormatError(f"expected 'bias <float>', got {bias_line!r}", line_no) from None
    if not math.isfinite(bias):
        raise FormatError("bias is not finite", line_no)

    w = np.zeros(dim)
    prev = -1
    for line_no, line in lines:
        idx_s, sep, val_s = line.partition(":")
        try:
            assert sep
            idx = int(idx_s)
            val = float(val_s)
        except (AssertionError, ValueError):
            raise FormatError(f"expected '<idx>:<float>', got {line!r}", line_no) from None
        if idx <= prev:
            raise FormatError(f"weight index {idx} out of order", line_no)
        if not 0 <= idx < dim:
            raise FormatError(f"weight index {idx} outside [0, {dim})", line_no)
        if not math.isfinite(val):
            raise FormatError(f"weight {idx} is not finite", line_no)
        prev = idx
        w[idx] = val
    return LinearModel(w=w, b=bias, loss=loss, dim=dim)


def load_model(path: str) -> LinearModel:
    with open(path, "r", encoding="utf-8") as fh:
        return read_model(fh)


def save_model(model: LinearModel, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_model(model, fh)
