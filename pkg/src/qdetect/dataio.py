"""Dataset parsing, deterministic splits, and model serialization.

The dataset format is line-oriented text: ``LABEL idx:val [idx:val ...]`` with
0-based, strictly increasing integer indices and positive decimal values;
``#``-prefixed lines are comments.  Models are stored as JSON with matrices
rendered at 17 significant digits, which round-trips doubles bit-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from qdetect.binary import BinaryModel
from qdetect.errors import (
    FormatError,
    ParseError,
    SplitError,
    UnsupportedVersionError,
)
from qdetect.multiclass import Measurement, MulticlassModel
from qdetect.states import FeatureVector


@dataclass(frozen=True)
class LabeledDataset:
    """Ordered labeled documents over a shared feature space."""

    dim: int
    documents: tuple[tuple[str, FeatureVector], ...]

    def __post_init__(self):
        if not self.documents:
            raise ValueError("a dataset needs at least one document")
        for label, doc in self.documents:
            if not label:
                raise ValueError("labels must be nonempty strings")
            if doc.dim != self.dim:
                raise ValueError("all documents must share the dataset dim")

    @property
    def class_index(self) -> dict[str, int]:
        """Label -> dense index, assigned in first-appearance order."""
        index: dict[str, int] = {}
        for label, _ in self.documents:
            if label not in index:
                index[label] = len(index)
        return index

    def __len__(self) -> int:
        return len(self.documents)


def parse_sparse(source: Iterable[str] | IO[str], dim: int | None = None) -> LabeledDataset:
    """Parse the line-oriented sparse format; ``dim`` may widen the feature space."""
    rows: list[tuple[str, list[tuple[int, float]]]] = []
    max_index = -1
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise ParseError(f"line {lineno}: expected LABEL followed by idx:val pairs")
        label = tokens[0]
        pairs: list[tuple[int, float]] = []
        previous = -1
        for token in tokens[1:]:
            head, sep, tail = token.partition(":")
            if not sep:
                raise ParseError(f"line {lineno}: malformed pair {token!r}")
            try:
                idx = int(head)
                value = float(tail)
            except ValueError:
                raise ParseError(f"line {lineno}: malformed pair {token!r}") from None
            if idx < 0:
                raise ParseError(f"line {lineno}: negative feature index {idx}")
            if idx <= previous:
                raise ParseError(
                    f"line {lineno}: feature indices must be strictly increasing "
                    f"({idx} after {previous})"
                )
            if not value > 0.0:
                raise ParseError(f"line {lineno}: feature value must be positive, got {tail}")
            previous = idx
            pairs.append((idx, value))
        max_index = max(max_index, previous)
        rows.append((label, pairs))
    if not rows:
        raise ParseError("dataset contains no documents")
    inferred = max_index + 1
    if dim is None:
        dim = inferred
    elif dim < inferred:
        raise ParseError(
            f"requested dim {dim} is smaller than the largest feature index + 1 ({inferred})"
        )
    documents = tuple(
        (label, FeatureVector(dim=dim, entries=dict(pairs))) for label, pairs in rows
    )
    return LabeledDataset(dim=dim, documents=documents)


def serialize_sparse(ds: LabeledDataset) -> str:
    """Render a dataset back to the sparse text format (parse round-trips it)."""
    lines = []
    for label, doc in ds.documents:
        pairs = " ".join(
            f"{idx}:{format(value, '.17g')}" for idx, value in sorted(doc.entries.items())
        )
        lines.append(f"{label} {pairs}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SplitSpec:
    """Deterministic train/test split parameters."""

    train_fraction: float
    seed: int
    stratified: bool = False

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly inside (0, 1)")


class Lcg:
    """64-bit linear congruential generator, fixed across platforms.

    ``x <- (6364136223846793005 * x + 1442695040888963407) mod 2**64``; draws
    below ``n`` use the top 31 bits: ``(x >> 33) % n``.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) & self.MASK
        return self.state

    def next_below(self, n: int) -> int:
        return (self.next_u64() >> 33) % n


def _shuffle(indices: list[int], rng: Lcg) -> list[int]:
    out = list(indices)
    for i in range(len(out) - 1, 0, -1):
        j = rng.next_below(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def split(ds: LabeledDataset, spec: SplitSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """Deterministic split; stratified mode keeps per-class proportions."""
    rng = Lcg(spec.seed)
    train_idx: list[int] = []
    if spec.stratified:
        by_class: dict[str, list[int]] = {}
        for i, (label, _) in enumerate(ds.documents):
            by_class.setdefault(label, []).append(i)
        for label, indices in by_class.items():
            if len(indices) < 2:
                raise SplitError(
                    f"class {label!r} has only one document; stratified split needs >= 2"
                )
            shuffled = _shuffle(indices, rng)
            take = _round_half_up(spec.train_fraction * len(indices))
            train_idx.extend(shuffled[:take])
    else:
        shuffled = _shuffle(list(range(len(ds))), rng)
        take = _round_half_up(spec.train_fraction * len(ds))
        train_idx = shuffled[:take]
    chosen = set(train_idx)
    train_docs = tuple(ds.documents[i] for i in range(len(ds)) if i in chosen)
    test_docs = tuple(ds.documents[i] for i in range(len(ds)) if i not in chosen)
    if not train_docs or not test_docs:
        raise SplitError(
            f"split produced an empty side (train {len(train_docs)}, test {len(test_docs)})"
        )
    return (
        LabeledDataset(dim=ds.dim, documents=train_docs),
        LabeledDataset(dim=ds.dim, documents=test_docs),
    )


# ---------------------------------------------------------------------------
# Canonical JSON with 17-significant-digit floats (bit-exact double round trip)


def _canonical(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not np.isfinite(value):
            raise ValueError("cannot serialize non-finite numbers")
        text = format(value, ".17g")
        # keep the literal float-typed so loads round-trip the schema
        if "." not in text and "e" not in text and "E" not in text:
            text += ".0"
        return text
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canonical(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _canonical(obj.tolist())
    if isinstance(obj, dict):
        items = ",".join(f"{json.dumps(k)}:{_canonical(v)}" for k, v in obj.items())
        return "{" + items + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_canonical(obj) -> str:
    """Compact JSON, insertion-ordered keys, floats at 17 significant digits."""
    return _canonical(obj) + "\n"


FORMAT_VERSION = 1


def _matrix(m: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in np.asarray(m)]


def _binary_payload(model: BinaryModel) -> dict:
    return {
        "prior_negative": model.prior_negative,
        "lambda": model.lam,
        "eta": model.eta,
        "beta": model.beta,
        "threshold": model.threshold,
        "projector": _matrix(model.projector),
    }


def model_to_dict(model) -> dict:
    if isinstance(model, BinaryModel):
        doc = {
            "format_version": FORMAT_VERSION,
            "strategy": "binary",
            "dim": model.dim,
            "labels": list(model.labels),
        }
        doc.update(_binary_payload(model))
        return doc
    if isinstance(model, MulticlassModel) and model.strategy == "pgm":
        m = model.measurement
        return {
            "format_version": FORMAT_VERSION,
            "strategy": "pgm",
            "dim": model.dim,
            "labels": list(model.labels),
            "priors": list(model.priors),
            "kind": m.kind,
            "elements": [_matrix(e) for e in m.elements],
            "residual": None if m.residual is None else _matrix(m.residual),
        }
    if isinstance(model, MulticlassModel) and model.strategy == "one_vs_rest":
        return {
            "format_version": FORMAT_VERSION,
            "strategy": "one_vs_rest",
            "dim": model.dim,
            "labels": list(model.labels),
            "priors": list(model.priors),
            "detectors": [_binary_payload(det) for det in model.detectors],
        }
    raise TypeError(f"cannot serialize model of type {type(model).__name__}")


def save_model(model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(model_to_dict(model)))


def _require(doc: dict, key: str, kinds) -> object:
    if key not in doc:
        raise FormatError(f"model file is missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kinds):
        raise FormatError(f"model field {key!r} has the wrong type")
    return value


def _binary_from_payload(payload: dict, dim: int, labels: tuple[str, str]) -> BinaryModel:
    return BinaryModel(
        dim=dim,
        projector=np.array(_require(payload, "projector", list), dtype=float),
        lam=float(_require(payload, "lambda", (int, float))),
        eta=float(_require(payload, "eta", (int, float))),
        beta=float(_require(payload, "beta", (int, float))),
        threshold=float(_require(payload, "threshold", (int, float))),
        prior_negative=float(_require(payload, "prior_negative", (int, float))),
        labels=labels,
    )


def model_from_dict(doc: dict):
    if not isinstance(doc, dict):
        raise FormatError("model file must contain a JSON object")
    version = _require(doc, "format_version", int)
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"unsupported model format_version {version} (expected {FORMAT_VERSION})"
        )
    strategy = _require(doc, "strategy", str)
    dim = int(_require(doc, "dim", int))
    labels = [str(x) for x in _require(doc, "labels", list)]
    try:
        if strategy == "binary":
            if len(labels) != 2:
                raise FormatError("binary models need exactly two labels")
            return _binary_from_payload(doc, dim, (labels[0], labels[1]))
        if strategy == "pgm":
            elements = tuple(
                np.array(e, dtype=float) for e in _require(doc, "elements", list)
            )
            residual = doc.get("residual")
            measurement = Measurement(
                elements=elements,
                kind=str(_require(doc, "kind", str)),
                residual=None if residual is None else np.array(residual, dtype=float),
            )
            priors = [float(x) for x in _require(doc, "priors", list)]
            return MulticlassModel(
                strategy="pgm",
                dim=dim,
                labels=tuple(labels),
                priors=tuple(priors),
                measurement=measurement,
            )
        if strategy == "one_vs_rest":
            priors = [float(x) for x in _require(doc, "priors", list)]
            detectors = tuple(
                _binary_from_payload(payload, dim, (label, f"not-{label}"))
                for label, payload in zip(labels, _require(doc, "detectors", list))
            )
            if len(detectors) != len(labels):
                raise FormatError("one detector per label is required")
            return MulticlassModel(
                strategy="one_vs_rest",
                dim=dim,
                labels=tuple(labels),
                priors=tuple(priors),
                detectors=detectors,
            )
    except (ValueError, TypeError) as exc:
        raise FormatError(f"model file is inconsistent: {exc}") from exc
    raise FormatError(f"unknown strategy {strategy!r}")


def load_model(path):
    """Load a model JSON file; raises FormatError / UnsupportedVersionError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"model file is not valid JSON: {exc}") from exc
    return model_from_dict(doc)


def load_cost_matrix(path, n: int) -> np.ndarray:
    """Read an N x N nonnegative cost matrix from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"cost file is not valid JSON: {exc}") from exc
    matrix = np.asarray(doc, dtype=float) if isinstance(doc, list) else None
    if matrix is None or matrix.shape != (n, n) or np.any(matrix < 0.0):
        raise FormatError(f"cost file must hold a nonnegative {n}x{n} JSON array")
    return matrix
