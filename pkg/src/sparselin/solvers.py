"""Training algorithms that keep every per-step operation O(k).

The step-size schedule 1/(lam*t) lets the SGD recurrence be folded into a
gradient-sum representation that is updated sparsely:

    [v_t, a_t] = sum_{j<=t} g_j [x_j, 1],      [w_t, b_t] = -[v_t, a_t] / (lam*t)

``sgd_train`` maintains (v, a) alone.  ``asgd_train`` additionally keeps the
harmonic gradient sum u (each gradient weighted by the harmonic number of
the *previous* step) and the bias average accumulator c, from which the
iterate average is recovered as -(h*v - u)/(lam*T), -c/(lam*T).
``casgd_train`` trains on implicitly mean-centered data: the mean feature
vector xbar and theta = 1 + |xbar|^2 are computed once, and the scalar
projection sum z = v . xbar is maintained incrementally so that centering
never needs a dense operation inside the loop.

All three solvers charge only ``sparse_touches`` inside their loops; the
model recovery at the end is a single dense pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

import numpy as np

from .errors import DimensionError, EmptyDatasetError, NonFiniteError
from .losses import LossKind, loss_subgradient, validate_labels
from .sparse_core import (
    DenseVec,
    SparseVec,
    TouchCounter,
    axpy,
    dot,
    finalize_combine,
    mean_vector,
    squared_norm,
)

if TYPE_CHECKING:
    from .data_io import Dataset


_MASK64 = (1 << 64) - 1
_SM64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM64_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_MUL2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class TrainConfig:
    steps: int
    lam: float
    seed: int
    loss: LossKind

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"lambda must be a positive finite real, got {self.lam}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass
class LinearModel:
    """Deployable predictor (w, b) plus the metadata needed to apply it."""

    w: DenseVec
    b: float
    loss: LossKind
    dim: int

    def __post_init__(self):
        if self.w.shape != (self.dim,):
            raise DimensionError(f"weight length {self.w.shape} != dim {self.dim}")

    @classmethod
    def zero(cls, dim: int, loss: LossKind) -> "LinearModel":
        return cls(w=np.zeros(dim), b=0.0, loss=loss, dim=dim)


@dataclass
class SgdState:
    """Lazy representation of the current iterate: gradient sums v, a."""

    v: DenseVec
    a: float
    t: int


@dataclass
class AsgdState(SgdState):
    u: DenseVec
    c: float
    h: float


@dataclass
class CasgdState(AsgdState):
    xbar: DenseVec
    theta: float
    z: float
    r: float
    s: float


# Called after every completed step with a snapshot of the solver state and
# the prediction p used at that step (0.0 for step 1).  Test-only hook.
Observer = Callable[[SgdState, float], None]


def draw_indices(seed: int, steps: int, m: int) -> np.ndarray:
    """The pinned index sequence: splitmix64, then floor(m * (u >> 11) * 2^-53).

    splitmix64's state after i calls is seed + i*GAMMA mod 2^64, so the whole
    sequence vectorizes.  (u >> 11) * 2^-53 is exact in float64 (53 bits,
    power-of-two scale), leaving a single rounding in the multiply by m; the
    result is always < m.
    """
    if m < 1:
        raise EmptyDatasetError("cannot draw indices from an empty dataset")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if not 0 <= seed <= _MASK64:
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    if steps == 0:
        return np.empty(0, dtype=np.int64)
    z = np.uint64(seed) + np.arange(1, steps + 1, dtype=np.uint64) * _SM64_GAMMA
    z = (z ^ (z >> np.uint64(30))) * _SM64_MUL1
    z = (z ^ (z >> np.uint64(27))) * _SM64_MUL2
    z ^= z >> np.uint64(31)
    unit = (z >> np.uint64(11)).astype(np.float64) * 2.0**-53
    return np.floor(m * unit).astype(np.int64)


def predict(model: LinearModel, x: SparseVec, counter: TouchCounter | None = None) -> float:
    """w . x + b via the O(k) kernel."""
    if x.dim != model.dim:
        raise DimensionError(f"input dim {x.dim} != model dim {model.dim}")
    return dot(model.w, x, counter) + model.b


def _prepare(data: "Dataset", cfg: TrainConfig) -> list[int]:
    if data.m == 0:
        raise EmptyDatasetError("training needs at least one example")
    validate_labels(data, cfg.loss)
    return draw_indices(cfg.seed, cfg.steps, data.m).tolist()


def _nonfinite(t: int, p: float, g: float) -> NonFiniteError:
    return NonFiniteError(
        f"non-finite value at step {t} (p={p}, g={g}); lambda may be too small for the data"
    )


def sgd_train(
    data: "Dataset",
    cfg: TrainConfig,
    counter: TouchCounter | None = None,
    observer: Observer | None = None,
) -> LinearModel:
    """Plain SGD; returns the last iterate."""
    order = _prepare(data, cfg)
    lam, T, kind = cfg.lam, cfg.steps, cfg.loss
    examples = data.examples

    x, y = examples[order[0]]
    g = loss_subgradient(kind, 0.0, y)
    if not math.isfinite(g):
        raise _nonfinite(1, 0.0, g)
    v = np.zeros(data.dim)
    axpy(v, g, x, counter)
    a = g
    if observer is not None:
        observer(SgdState(v=v.copy(), a=a, t=1), 0.0)

    for t in range(2, T + 1):
        x, y = examples[order[t - 1]]
        d = dot(v, x, counter)
        p = -(d + a) / (lam * (t - 1))
        g = loss_subgradient(kind, p, y)
        if not (math.isfinite(p) and math.isfinite(g)):
            raise _nonfinite(t, p, g)
        axpy(v, g, x, counter)
        a += g
        if observer is not None:
            observer(SgdState(v=v.copy(), a=a, t=t), p)

    scale = -1.0 / (lam * T)
    w = finalize_combine([(scale, v)], counter)
    return LinearModel(w=w, b=scale * a, loss=kind, dim=data.dim)


def asgd_train(
    data: "Dataset",
    cfg: TrainConfig,
    counter: TouchCounter | None = None,
    observer: Observer | None = None,
) -> LinearModel:
    """SGD returning the average of all iterates instead of the last one."""
    order = _prepare(data, cfg)
    lam, T, kind = cfg.lam, cfg.steps, cfg.loss
    examples = data.examples

    x, y = examples[order[0]]
    g = loss_subgradient(kind, 0.0, y)
    if not math.isfinite(g):
        raise _nonfinite(1, 0.0, g)
    v = np.zeros(data.dim)
    axpy(v, g, x, counter)
    a = g
    u = np.zeros(data.dim)
    c = a
    h = 1.0
    if observer is not None:
        observer(AsgdState(v=v.copy(), a=a, t=1, u=u.copy(), c=c, h=h), 0.0)

    for t in range(2, T + 1):
        x, y = examples[order[t - 1]]
        d = dot(v, x, counter)
        p = -(d + a) / (lam * (t - 1))
        g = loss_subgradient(kind, p, y)
        if not (math.isfinite(p) and math.isfinite(g)):
            raise _nonfinite(t, p, g)
        axpy(v, g, x, counter)
        a += g
        axpy(u, h * g, x, counter)  # weight is the harmonic number of step t-1
        c += a / t
        h += 1.0 / t
        if observer is not None:
            observer(AsgdState(v=v.copy(), a=a, t=t, u=u.copy(), c=c, h=h), p)

    scale = 1.0 / (lam * T)
    w = finalize_combine([(-h * scale, v), (scale, u)], counter)
    return LinearModel(w=w, b=-c * scale, loss=kind, dim=data.dim)


def casgd_train(
    data: "Dataset",
    cfg: TrainConfig,
    counter: TouchCounter | None = None,
    observer: Observer | None = None,
) -> LinearModel:
    """Averaged SGD on implicitly mean-centered data.

    Predictions from the returned model apply directly to raw, uncentered
    inputs: the centering shift lives in the bias term, which makes the
    trained predictor invariant to translating the whole training set.
    """
    order = _prepare(data, cfg)
    lam, T, kind = cfg.lam, cfg.steps, cfg.loss
    examples = data.examples

    xbar = mean_vector(data, counter)
    theta = 1.0 + squared_norm(xbar, counter)

    x, y = examples[order[0]]
    g = loss_subgradient(kind, 0.0, y)
    if not math.isfinite(g):
        raise _nonfinite(1, 0.0, g)
    v = np.zeros(data.dim)
    axpy(v, g, x, counter)
    a = g
    u = np.zeros(data.dim)
    c = a
    h = 1.0
    q = dot(xbar, x, counter)
    z = g * q
    r = a * theta - z
    s = r
    if observer is not None:
        observer(
            CasgdState(
                v=v.copy(), a=a, t=1, u=u.copy(), c=c, h=h,
                xbar=xbar, theta=theta, z=z, r=r, s=s,
            ),
            0.0,
        )

    for t in range(2, T + 1):
        x, y = examples[order[t - 1]]
        d = dot(v, x, counter)
        q = dot(xbar, x, counter)
        p = -(d + r - a * q) / (lam * (t - 1))
        g = loss_subgradient(kind, p, y)
        if not (math.isfinite(p) and math.isfinite(g)):
            raise _nonfinite(t, p, g)
        axpy(v, g, x, counter)
        a += g
        axpy(u, h * g, x, counter)
        c += a / t
        h += 1.0 / t
        z += g * q
        r = a * theta - z
        s += r / t
        if observer is not None:
            observer(
                CasgdState(
                    v=v.copy(), a=a, t=t, u=u.copy(), c=c, h=h,
                    xbar=xbar, theta=theta, z=z, r=r, s=s,
                ),
                p,
            )

    scale = 1.0 / (lam * T)
    w = finalize_combine([(-h * scale, v), (scale, u), (c * scale, xbar)], counter)
    return LinearModel(w=w, b=-s * scale, loss=kind, dim=data.dim)


# Recovery of predictors from solver state at any step t; used by the
# equivalence tests.

def recover_sgd_iterate(state: SgdState, lam: float) -> tuple[DenseVec, float]:
    """(w_t, b_t) = -[v_t, a_t] / (lam*t)."""
    scale = -1.0 / (lam * state.t)
    return scale * state.v, scale * state.a


def recover_averaged(state: AsgdState, lam: float) -> tuple[DenseVec, float]:
    """Average of iterates 1..t from (h, v, u) and c."""
    scale = 1.0 / (lam * state.t)
    return -scale * (state.h * state.v - state.u), -scale * state.c


def recover_centered_iterate(state: CasgdState, lam: float) -> tuple[DenseVec, float]:
    """Current centered-data iterate with its implicit (uncentered-input) bias."""
    scale = -1.0 / (lam * state.t)
    return scale * (state.v - state.a * state.xbar), scale * state.r


def recover_centered_averaged(state: CasgdState, lam: float) -> tuple[DenseVec, float]:
    """Averaged centered-data predictor with its implicit bias."""
    scale = -1.0 / (lam * state.t)
    return scale * (state.h * state.v - state.u - state.c * state.xbar), scale * state.s
