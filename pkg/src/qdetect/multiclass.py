"""N-hypothesis measurements: square-root construction, Bayes costs, classification.

A measurement is a family of PSD operators resolving the identity, one element
per hypothesis plus an optional residual element covering the complement of
the training support.  The square-root ("pretty good") measurement is the
constructive default; a one-vs-rest bank of binary detectors is the pragmatic
alternative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from qdetect import linalg
from qdetect.binary import BinaryModel, score as binary_score, train_binary
from qdetect.errors import (
    DegenerateCorpusError,
    DimensionMismatchError,
    NotRankOneError,
)
from qdetect.states import FeatureVector, density_from_vector, feature_statistics

PSD_ATOL = 1e-10
RESOLUTION_ATOL = 1e-10


@dataclass(frozen=True)
class HypothesisSet:
    """Priors paired with per-class density operators (and pure vectors if rank-1)."""

    priors: np.ndarray
    states: tuple[np.ndarray, ...]
    labels: tuple[str, ...]
    pure_vectors: tuple[np.ndarray, ...] | None = None

    def __post_init__(self):
        priors = np.asarray(self.priors, dtype=float)
        if priors.ndim != 1 or priors.size != len(self.states):
            raise ValueError("priors and states must have matching lengths")
        if len(self.labels) != priors.size:
            raise ValueError("labels and states must have matching lengths")
        if np.any(priors <= 0.0):
            raise ValueError("all priors must be strictly positive")
        if abs(float(np.sum(priors)) - 1.0) > 1e-12:
            raise ValueError("priors must sum to 1 within 1e-12")
        dim = self.states[0].shape[0]
        for rho in self.states:
            if rho.shape != (dim, dim):
                raise DimensionMismatchError("hypothesis states have mixed dimensions")
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "states", tuple(np.asarray(s, float) for s in self.states))

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]


def _is_projective(elements: Sequence[np.ndarray]) -> bool:
    for i, p in enumerate(elements):
        if float(np.linalg.norm(p @ p - p)) > PSD_ATOL:
            return False
        for q in elements[i + 1 :]:
            if float(np.linalg.norm(p @ q)) > PSD_ATOL:
                return False
    return True


@dataclass(frozen=True)
class Measurement:
    """PSD elements summing to the identity; ``elements[k]`` answers hypothesis k.

    ``residual`` (when present) absorbs the complement of the support of the
    averaged state so the resolution of the identity holds exactly in
    rank-deficient feature spaces.
    """

    elements: tuple[np.ndarray, ...]
    kind: str = "povm"
    residual: np.ndarray | None = None

    def __post_init__(self):
        elements = tuple(np.asarray(e, dtype=float) for e in self.elements)
        if not elements:
            raise ValueError("a measurement needs at least one element")
        dim = elements[0].shape[0]
        for e in self.all_elements(elements):
            if e.shape != (dim, dim):
                raise DimensionMismatchError("measurement elements have mixed dimensions")
            if float(np.min(np.linalg.eigvalsh((e + e.T) / 2.0))) < -PSD_ATOL:
                raise ValueError("measurement element is not PSD within 1e-10")
        total = sum(self.all_elements(elements), np.zeros((dim, dim)))
        if float(np.linalg.norm(total - np.eye(dim))) > RESOLUTION_ATOL:
            raise ValueError("measurement elements do not resolve the identity")
        if self.kind == "projective" and not _is_projective(list(self.all_elements(elements))):
            raise ValueError("projective measurement fails idempotency/orthogonality")
        if self.kind not in ("projective", "povm"):
            raise ValueError(f"unknown measurement kind {self.kind!r}")
        object.__setattr__(self, "elements", elements)
        if self.residual is not None:
            object.__setattr__(self, "residual", np.asarray(self.residual, dtype=float))

    def all_elements(self, elements=None):
        """Per-hypothesis elements followed by the residual element, if any."""
        elements = self.elements if elements is None else elements
        if self.residual is not None:
            return list(elements) + [np.asarray(self.residual, dtype=float)]
        return list(elements)

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


def zero_one_cost(n: int) -> np.ndarray:
    """Cost matrix with free correct decisions and unit-cost mistakes."""
    return np.ones((n, n)) - np.eye(n)


def check_cost_matrix(k, n: int) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    if k.shape != (n, n):
        raise DimensionMismatchError(f"cost matrix shape {k.shape} does not match N={n}")
    if np.any(k < 0.0):
        raise ValueError("cost matrix entries must be nonnegative")
    return k


def _group_by_label(
    corpus: Sequence[tuple[str, FeatureVector]],
) -> tuple[list[str], dict[str, list[FeatureVector]]]:
    labels: list[str] = []
    groups: dict[str, list[FeatureVector]] = {}
    for label, doc in corpus:
        if label not in groups:
            labels.append(label)
            groups[label] = []
        groups[label].append(doc)
    return labels, groups


def build_hypotheses(
    corpus: Sequence[tuple[str, FeatureVector]], dim: int
) -> HypothesisSet:
    """One prior/density pair per class, priors from document frequencies."""
    labels, groups = _group_by_label(corpus)
    if len(labels) < 2:
        raise DegenerateCorpusError(
            f"multi-class training needs at least 2 classes, found {len(labels)}"
        )
    total = sum(len(docs) for docs in groups.values())
    priors = np.array([len(groups[label]) / total for label in labels])
    stats = [feature_statistics(groups[label], dim, label=label) for label in labels]
    states = tuple(density_from_vector(s) for s in stats)
    pure = tuple(s.values / np.linalg.norm(s.values) for s in stats)
    return HypothesisSet(priors=priors, states=states, labels=tuple(labels), pure_vectors=pure)


def pgm(h: HypothesisSet) -> Measurement:
    """Square-root measurement of the hypothesis set.

    ``mu_k = S^(-1/2) (xi_k rho_k) S^(-1/2)`` with ``S`` the prior-weighted
    average state and the inverse square root taken on the support of ``S``.
    When the support is a proper subspace, the complement is appended as a
    residual element so the identity is resolved exactly.
    """
    s = sum(xi * rho for xi, rho in zip(h.priors, h.states))
    root = linalg.inv_sqrt_psd(s)
    elements = []
    for k in range(h.n):
        if h.pure_vectors is not None:
            u = root @ h.pure_vectors[k]
            mu = float(h.priors[k]) * np.outer(u, u)
        else:
            mu = root @ (float(h.priors[k]) * h.states[k]) @ root
        elements.append(linalg.symmetrize(mu))
    support_rank = int(np.sum(
        np.linalg.eigvalsh(s) > linalg.SUPPORT_RTOL * np.max(np.abs(np.linalg.eigvalsh(s)))
    ))
    residual = None
    if support_rank < h.dim:
        residual = linalg.symmetrize(np.eye(h.dim) - sum(elements))
    kind = "projective" if _is_projective(elements + ([residual] if residual is not None else [])) else "povm"
    return Measurement(elements=tuple(elements), kind=kind, residual=residual)


def measurement_vectors(m: Measurement) -> list[np.ndarray]:
    """Unit vectors generating each rank-1 element (element = trace * outer(v, v)).

    Raises
    ------
    NotRankOneError
        If any non-residual element has numerical rank above one.
    """
    vectors = []
    for k, element in enumerate(m.elements):
        es = linalg.eigh(element)
        top = float(es.eigenvalues[0])
        if top <= 0.0:
            raise NotRankOneError(f"measurement element {k} is numerically zero")
        rest = float(np.max(np.abs(es.eigenvalues[1:]))) if es.dim > 1 else 0.0
        if rest > 1e-8 * top:
            raise NotRankOneError(
                f"measurement element {k} has rank > 1 (second eigenvalue {rest:.3e})"
            )
        vectors.append(es.eigenvectors[:, 0])
    return vectors


def average_cost(m: Measurement, h: HypothesisSet, cost) -> float:
    """Prior-weighted expected decision cost of the measurement.

    ``sum_ij xi_j K[i][j] Tr(rho_j mu_i)``; a residual outcome is charged the
    maximum cost of its true class's column.
    """
    if m.n != h.n:
        raise DimensionMismatchError(
            f"measurement has {m.n} elements for {h.n} hypotheses"
        )
    if m.dim != h.dim:
        raise DimensionMismatchError(
            f"measurement dim {m.dim} does not match hypothesis dim {h.dim}"
        )
    k = check_cost_matrix(cost, h.n)
    total = 0.0
    for j, (xi, rho) in enumerate(zip(h.priors, h.states)):
        for i, mu in enumerate(m.elements):
            total += float(xi) * k[i, j] * float(np.trace(rho @ mu))
        if m.residual is not None:
            total += float(xi) * float(np.max(k[:, j])) * float(np.trace(rho @ m.residual))
    return total


@dataclass(frozen=True)
class MulticlassModel:
    """Trained multi-class classifier: a measurement or a bank of detectors."""

    strategy: str
    dim: int
    labels: tuple[str, ...]
    priors: tuple[float, ...]
    measurement: Measurement | None = None
    detectors: tuple[BinaryModel, ...] | None = None

    def __post_init__(self):
        if self.strategy == "pgm":
            if self.measurement is None or self.measurement.n != len(self.labels):
                raise ValueError("pgm strategy requires one measurement element per label")
        elif self.strategy == "one_vs_rest":
            if self.detectors is None or len(self.detectors) != len(self.labels):
                raise ValueError("one_vs_rest strategy requires one detector per label")
        else:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if len(self.priors) != len(self.labels):
            raise ValueError("priors and labels must have matching lengths")


def train_pgm(corpus: Sequence[tuple[str, FeatureVector]], dim: int) -> MulticlassModel:
    """Hypotheses from the corpus, then the square-root measurement over them."""
    h = build_hypotheses(corpus, dim)
    return MulticlassModel(
        strategy="pgm",
        dim=dim,
        labels=h.labels,
        priors=tuple(float(x) for x in h.priors),
        measurement=pgm(h),
    )


def train_one_vs_rest(
    corpus: Sequence[tuple[str, FeatureVector]],
    dim: int,
    neg_priors: Sequence[float] | None = None,
    threshold: float = 0.5,
) -> MulticlassModel:
    """One binary detector per class against the union of all other classes.

    Each detector's negative-class prior defaults to one minus the class
    proportion; prediction picks the class with the highest acceptance score.
    """
    labels, groups = _group_by_label(corpus)
    if len(labels) < 2:
        raise DegenerateCorpusError(
            f"one-vs-rest training needs at least 2 classes, found {len(labels)}"
        )
    total = sum(len(docs) for docs in groups.values())
    detectors = []
    for k, label in enumerate(labels):
        pos = groups[label]
        neg = [doc for other, docs in groups.items() if other != label for doc in docs]
        xi = 1.0 - len(pos) / total if neg_priors is None else float(neg_priors[k])
        detectors.append(
            train_binary(pos, neg, dim, prior_negative=xi, threshold=threshold,
                         labels=(label, f"not-{label}"))
        )
    return MulticlassModel(
        strategy="one_vs_rest",
        dim=dim,
        labels=tuple(labels),
        priors=tuple(len(groups[label]) / total for label in labels),
        detectors=tuple(detectors),
    )


def class_scores(model: MulticlassModel, x: np.ndarray) -> np.ndarray:
    """Per-class decision scores of a unit vector, aligned with ``model.labels``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (model.dim,):
        raise DimensionMismatchError(
            f"document dim {x.shape} does not match model dim {model.dim}"
        )
    if model.strategy == "pgm":
        return np.array([float(x @ mu @ x) for mu in model.measurement.elements])
    return np.array([binary_score(det, x) for det in model.detectors])


def classify(model: MulticlassModel, x: np.ndarray) -> str:
    """Label with the highest score; exact ties go to the lowest class index."""
    scores = class_scores(model, x)
    return model.labels[int(np.argmax(scores))]
