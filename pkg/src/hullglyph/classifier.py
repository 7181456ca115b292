"""One-hidden-layer perceptron trained by online backpropagation with momentum.

Both layers use the logistic sigmoid, the loss per sample is
``E = 0.5 * sum((t - o)**2)`` with 1/0 one-hot targets, and each weight
update is ``dw = -eta * dE/dw + alpha * dw_prev``.  Biases are folded into
the last column of each weight matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import EmptyDataset, FormatError, ShapeError
from .features import N_FEATURES

MAGIC = "hullglyph-mlp v1"


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


@dataclass
class MinMaxScaler:
    lo: np.ndarray
    hi: np.ndarray

    @classmethod
    def fit(cls, X) -> "MinMaxScaler":
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] == 0:
            raise EmptyDataset("cannot fit a scaler on no samples")
        return cls(X.min(axis=0), X.max(axis=0))

    @classmethod
    def identity(cls, n: int) -> "MinMaxScaler":
        return cls(np.zeros(n), np.ones(n))

    def transform(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        span = self.hi - self.lo
        safe = np.where(span > 0, span, 1.0)
        out = np.where(span > 0, (X - self.lo) / safe, 0.0)
        return np.clip(out, 0.0, 1.0)


@dataclass
class MlpModel:
    hidden_weights: np.ndarray  # (n_hidden, n_in + 1)
    output_weights: np.ndarray  # (n_out, n_hidden + 1)
    labels: tuple[str, ...]
    hidden_velocity: np.ndarray = None
    output_velocity: np.ndarray = None
    scaler: MinMaxScaler | None = None

    def __post_init__(self):
        if self.hidden_velocity is None:
            self.hidden_velocity = np.zeros_like(self.hidden_weights)
        if self.output_velocity is None:
            self.output_velocity = np.zeros_like(self.output_weights)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("class labels must be distinct")
        if len(self.labels) != self.n_out:
            raise ShapeError(f"{len(self.labels)} labels for {self.n_out} output units")
        if self.output_weights.shape[1] != self.n_hidden + 1:
            raise ShapeError("output weight columns must equal n_hidden + 1")

    @property
    def n_in(self) -> int:
        return self.hidden_weights.shape[1] - 1

    @property
    def n_hidden(self) -> int:
        return self.hidden_weights.shape[0]

    @property
    def n_out(self) -> int:
        return self.output_weights.shape[0]


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.8
    momentum: float = 0.7
    epochs: int = 100
    seed: int = 0
    shuffle: bool = True

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError("learning rate must be positive")
        if not 0 <= self.momentum < 1:
            raise ValueError("momentum must lie in [0, 1)")
        if self.epochs < 1:
            raise ValueError("epochs must be positive")


@dataclass
class EvalReport:
    count: int
    correct: int
    confusion: np.ndarray = field(repr=False)
    labels: tuple[str, ...] = ()

    @property
    def success_rate(self) -> float:
        return 100.0 * self.correct / self.count


def init_model(n_hidden: int, n_out: int, seed: int, n_in: int = N_FEATURES,
               labels=None) -> MlpModel:
    """Weights i.i.d. uniform on [-0.5, 0.5] from a PCG64 stream seeded with ``seed``."""
    if n_hidden < 1 or n_out < 1 or n_in < 1:
        raise ValueError("layer sizes must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    w1 = rng.uniform(-0.5, 0.5, size=(n_hidden, n_in + 1))
    w2 = rng.uniform(-0.5, 0.5, size=(n_out, n_hidden + 1))
    if labels is None:
        labels = tuple(str(k) for k in range(n_out))
    return MlpModel(w1, w2, tuple(labels))


def _check_input(model, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.n_in:
        raise ShapeError(f"expected {model.n_in} inputs, got {x.shape[-1]}")
    return x


def forward(model: MlpModel, x):
    """Hidden and output activations for one input vector (or a batch of rows)."""
    x = _check_input(model, x)
    w1, w2 = model.hidden_weights, model.output_weights
    h = sigmoid(x @ w1[:, :-1].T + w1[:, -1])
    o = sigmoid(h @ w2[:, :-1].T + w2[:, -1])
    return h, o


def gradients(model: MlpModel, x, target):
    """Analytic ``(dE/d hidden_weights, dE/d output_weights)`` for one sample."""
    x = _check_input(model, x)
    t = np.asarray(target, dtype=np.float64)
    h, o = forward(model, x)
    delta_o = (o - t) * o * (1.0 - o)
    delta_h = (model.output_weights[:, :-1].T @ delta_o) * h * (1.0 - h)
    g2 = np.outer(delta_o, np.append(h, 1.0))
    g1 = np.outer(delta_h, np.append(x, 1.0))
    return g1, g2


def sample_loss(model: MlpModel, x, target) -> float:
    _, o = forward(model, x)
    return 0.5 * float(np.sum((np.asarray(target) - o) ** 2))


def train_targets(model: MlpModel, X, T, cfg: TrainConfig):
    """Online backpropagation on explicit target rows.

    Mutates ``model`` in place and returns ``(model, trace)`` where
    ``trace[k]`` is the mean squared output error over epoch ``k``,
    accumulated sample by sample before each update.
    """
    X = np.asarray(X, dtype=np.float64)
    T = np.asarray(T, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyDataset("no training samples")
    if X.shape[1] != model.n_in:
        raise ShapeError(f"expected {model.n_in} inputs, got {X.shape[1]}")
    if T.shape != (X.shape[0], model.n_out):
        raise ShapeError(f"targets must have shape {(X.shape[0], model.n_out)}")

    eta, alpha = cfg.learning_rate, cfg.momentum
    w1, w2 = model.hidden_weights, model.output_weights
    v1, v2 = model.hidden_velocity, model.output_velocity
    X1 = np.hstack([X, np.ones((X.shape[0], 1))])
    h1 = np.ones(model.n_hidden + 1)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    order = np.arange(X.shape[0])
    trace = []
    for _ in range(cfg.epochs):
        if cfg.shuffle:
            order = rng.permutation(X.shape[0])
        sq = 0.0
        for i in order:
            x, t = X1[i], T[i]
            h = sigmoid(w1 @ x)
            h1[:-1] = h
            o = sigmoid(w2 @ h1)
            err = o - t
            sq += float(err @ err)
            delta_o = err * o * (1.0 - o)
            delta_h = (w2[:, :-1].T @ delta_o) * h * (1.0 - h)
            v2 *= alpha
            v2 -= eta * np.outer(delta_o, h1)
            v1 *= alpha
            v1 -= eta * np.outer(delta_h, x)
            w2 += v2
            w1 += v1
        trace.append(sq / (X.shape[0] * model.n_out))
    return model, trace


def one_hot(model: MlpModel, labels) -> np.ndarray:
    index = {lab: k for k, lab in enumerate(model.labels)}
    T = np.zeros((len(labels), model.n_out))
    for row, lab in enumerate(labels):
        try:
            T[row, index[lab]] = 1.0
        except KeyError:
            raise ValueError(f"label {lab!r} is not in the model's class table") from None
    return T


def train(model: MlpModel, samples, cfg: TrainConfig):
    """Train on ``(features, label)`` pairs with one-hot 1/0 targets."""
    samples = list(samples)
    if not samples:
        raise EmptyDataset("no training samples")
    X = np.array([s[0] for s in samples], dtype=np.float64)
    return train_targets(model, X, one_hot(model, [s[1] for s in samples]), cfg)


def predict_index(model: MlpModel, x) -> np.ndarray | int:
    _, o = forward(model, x)
    # argmax returns the first maximum, i.e. the lowest class index on ties
    return np.argmax(o, axis=-1)


def predict(model: MlpModel, x) -> str:
    return model.labels[int(predict_index(model, x))]


def evaluate(model: MlpModel, samples) -> EvalReport:
    samples = list(samples)
    if not samples:
        raise EmptyDataset("no samples to evaluate")
    X = np.array([s[0] for s in samples], dtype=np.float64)
    index = {lab: k for k, lab in enumerate(model.labels)}
    truth = np.array([index[s[1]] for s in samples])
    pred = np.atleast_1d(predict_index(model, X))
    confusion = np.zeros((model.n_out, model.n_out), dtype=np.int64)
    np.add.at(confusion, (truth, pred), 1)
    return EvalReport(len(samples), int(np.trace(confusion)), confusion, model.labels)


def _fmt(row) -> str:
    return " ".join("%.17g" % v for v in row)


def dumps(model: MlpModel) -> str:
    scaler = model.scaler or MinMaxScaler.identity(model.n_in)
    lines = [MAGIC, f"{model.n_in} {model.n_hidden} {model.n_out}", " ".join(model.labels)]
    lines += [_fmt(r) for r in model.hidden_weights]
    lines += [_fmt(r) for r in model.output_weights]
    lines += [_fmt(scaler.lo), _fmt(scaler.hi)]
    return "\n".join(lines) + "\n"


def loads(text: str) -> MlpModel:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise FormatError("not a hullglyph-mlp v1 model file")
    try:
        n_in, n_hidden, n_out = (int(v) for v in lines[1].split())
        labels = tuple(lines[2].split())
        rows = [np.array([float(v) for v in ln.split()]) for ln in lines[3:]]
    except (IndexError, ValueError) as exc:
        raise FormatError(f"malformed model file: {exc}") from None
    if len(rows) != n_hidden + n_out + 2:
        raise FormatError(f"expected {n_hidden + n_out + 2} numeric rows, got {len(rows)}")
    try:
        w1 = np.vstack(rows[:n_hidden])
        w2 = np.vstack(rows[n_hidden:n_hidden + n_out])
    except ValueError as exc:
        raise FormatError(f"ragged weight rows: {exc}") from None
    if w1.shape != (n_hidden, n_in + 1) or w2.shape != (n_out, n_hidden + 1):
        raise FormatError("weight shapes disagree with the header")
    lo, hi = rows[-2], rows[-1]
    if lo.shape != (n_in,) or hi.shape != (n_in,):
        raise FormatError("scaler vectors must have n_in entries")
    return MlpModel(w1, w2, labels, scaler=MinMaxScaler(lo, hi))


def save_model(model: MlpModel, path) -> None:
    Path(path).write_text(dumps(model))


def load_model(path) -> MlpModel:
    return loads(Path(path).read_text())
