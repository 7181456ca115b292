"""Dataset manifests, stratified splits, feature files and hidden-layer sweeps."""
from __future__ import annotations

import csv
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classifier
from .errors import EmptyDataset, HullglyphError, ManifestError, SplitError
from .features import N_FEATURES, extract_features
from .imaging import CHARACTERS, DIGITS, NormalizationSpec, normalize_cg
from .pnm import read_binary

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Modality:
    name: str
    labels: tuple[str, ...]
    normalization: NormalizationSpec


MODALITIES = {
    "digits": Modality("digits", tuple(str(k) for k in range(10)), DIGITS),
    "chars": Modality("chars", tuple(str(k) for k in range(50)), CHARACTERS),
}
MODALITIES["characters"] = MODALITIES["chars"]


def get_modality(name: str) -> Modality:
    try:
        return MODALITIES[name]
    except KeyError:
        raise ValueError(f"unknown modality {name!r}; use digits or chars") from None


@dataclass(frozen=True)
class Record:
    path: Path
    label: str


@dataclass
class DatasetManifest:
    records: list[Record]
    modality: Modality

    def __len__(self):
        return len(self.records)

    @property
    def labels(self):
        return [r.label for r in self.records]


def load_manifest(path, modality="digits", check_files=True) -> DatasetManifest:
    """Read a ``path,label`` CSV; image paths resolve against the manifest's directory."""
    path = Path(path)
    mod = get_modality(modality) if isinstance(modality, str) else modality
    allowed = set(mod.labels)
    if not path.is_file():
        raise ManifestError(f"manifest {path} not found")
    records = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"path", "label"} <= set(reader.fieldnames):
            raise ManifestError("header must contain 'path' and 'label'", row=1)
        # header is row 1
        for row_no, row in enumerate(reader, start=2):
            label = (row["label"] or "").strip()
            if label not in allowed:
                raise ManifestError(f"label {label!r} is not a {mod.name} class", row=row_no)
            img = path.parent / (row["path"] or "").strip()
            if check_files and not img.is_file():
                raise ManifestError(f"image {img} does not exist", row=row_no)
            records.append(Record(img, label))
    return DatasetManifest(records, mod)


def stratified_split(labels, train_fraction: float, seed: int):
    """Index arrays ``(train, test)``, split class by class.

    Each class of ``n`` samples sends ``floor(n * (1 - train_fraction))`` to
    test and the rest to train, so any remainder goes to train.  Both index
    arrays are returned in ascending order.
    """
    if not 0 < train_fraction <= 1:
        raise SplitError(f"train fraction {train_fraction} outside (0, 1]")
    labels = list(labels)
    by_class = {}
    for i, lab in enumerate(labels):
        by_class.setdefault(lab, []).append(i)
    rng = np.random.Generator(np.random.PCG64(seed))
    train, test = [], []
    for lab in sorted(by_class, key=_label_key):
        idx = np.array(by_class[lab])
        if idx.size < 2:
            raise SplitError(f"class {lab!r} has {idx.size} sample(s); need at least 2")
        n_test = math.floor(idx.size * (1 - train_fraction) + 1e-9)
        if n_test >= idx.size:
            raise SplitError(f"class {lab!r} would have no training samples")
        perm = idx[rng.permutation(idx.size)]
        test.extend(perm[:n_test].tolist())
        train.extend(perm[n_test:].tolist())
    if not test:
        raise SplitError("test partition is empty; lower the train fraction")
    return np.array(sorted(train)), np.array(sorted(test))


def split(manifest: DatasetManifest, train_fraction: float, seed: int):
    tr, te = stratified_split(manifest.labels, train_fraction, seed)
    pick = lambda idx: DatasetManifest([manifest.records[i] for i in idx], manifest.modality)
    return pick(tr), pick(te)


def _label_key(label):
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


@dataclass
class FeatureTable:
    labels: list[str]
    X: np.ndarray
    paths: list[str] = field(default_factory=list)

    def __len__(self):
        return len(self.labels)

    def subset(self, idx) -> "FeatureTable":
        paths = [self.paths[i] for i in idx] if self.paths else []
        return FeatureTable([self.labels[i] for i in idx], self.X[idx], paths)

    def samples(self, X=None):
        X = self.X if X is None else X
        return list(zip(X, self.labels))


def glyph_features(path, spec: NormalizationSpec, threshold=None) -> np.ndarray:
    img = read_binary(path, threshold)
    return extract_features(normalize_cg(img, spec))


def _work(args):
    path, spec, threshold = args
    try:
        return glyph_features(path, spec, threshold), None
    except (HullglyphError, OSError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def worker_count(requested=None) -> int:
    cap = os.environ.get("HULLGLYPH_THREADS")
    n = requested or os.cpu_count() or 1
    if cap:
        n = min(n, max(int(cap), 1))
    return max(n, 1)


def build_features(manifest: DatasetManifest, threshold=None, workers=None) -> FeatureTable:
    """Binarize, normalize and extract features for every record, in manifest order.

    Unreadable or empty images are logged and skipped.
    """
    jobs = [(r.path, manifest.modality.normalization, threshold) for r in manifest.records]
    n = worker_count(workers)
    if n > 1 and len(jobs) > n:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_work, jobs, chunksize=32))
    else:
        results = [_work(j) for j in jobs]
    labels, rows, paths = [], [], []
    for rec, (vec, err) in zip(manifest.records, results):
        if err is not None:
            log.warning("skipping %s: %s", rec.path, err)
            continue
        labels.append(rec.label)
        rows.append(vec)
        paths.append(str(rec.path))
    X = np.array(rows) if rows else np.zeros((0, N_FEATURES))
    return FeatureTable(labels, X, paths)


def write_feature_csv(table: FeatureTable, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label"] + [f"f{k}" for k in range(table.X.shape[1])])
        for lab, row in zip(table.labels, table.X):
            w.writerow([lab] + [repr(float(v)) for v in row])


def read_feature_csv(path) -> FeatureTable:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0] != "label":
            raise ManifestError(f"{path}: header must start with 'label'", row=1)
        labels, rows = [], []
        for row_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ManifestError(f"{path}: expected {len(header)} fields", row=row_no)
            labels.append(row[0])
            try:
                rows.append([float(v) for v in row[1:]])
            except ValueError:
                raise ManifestError(f"{path}: non-numeric feature", row=row_no) from None
    X = np.array(rows) if rows else np.zeros((0, len(header) - 1))
    return FeatureTable(labels, X)


def class_table(*tables) -> tuple[str, ...]:
    return tuple(sorted({lab for t in tables for lab in t.labels}, key=_label_key))


def fit_model(train: FeatureTable, n_hidden: int, cfg: classifier.TrainConfig,
              labels=None) -> classifier.MlpModel:
    """Fresh seeded model, min-max scaler fitted on ``train``, online training."""
    if len(train) == 0:
        raise EmptyDataset("empty training set")
    labels = tuple(labels) if labels else class_table(train)
    scaler = classifier.MinMaxScaler.fit(train.X)
    model = classifier.init_model(n_hidden, len(labels), cfg.seed,
                                  n_in=train.X.shape[1], labels=labels)
    model.scaler = scaler
    classifier.train(model, train.samples(scaler.transform(train.X)), cfg)
    return model


def evaluate_table(model: classifier.MlpModel, table: FeatureTable) -> classifier.EvalReport:
    X = model.scaler.transform(table.X) if model.scaler is not None else table.X
    return classifier.evaluate(model, table.samples(X))


@dataclass
class SweepRow:
    n_hidden: int
    train_success: float
    test_success: float


@dataclass
class SweepReport:
    rows: list[SweepRow]

    @property
    def best(self) -> SweepRow:
        # rows are sorted by n_hidden, so max() keeps the smaller count on ties
        return max(self.rows, key=lambda r: r.test_success)

    def to_csv(self) -> str:
        best = self.best
        lines = ["n_hidden,train_success,test_success,best"]
        for r in self.rows:
            lines.append(f"{r.n_hidden},{r.train_success:.4f},{r.test_success:.4f},"
                         f"{int(r is best)}")
        return "\n".join(lines) + "\n"

    def plot_data(self) -> str:
        lines = ["n_hidden,test_success"]
        lines += [f"{r.n_hidden},{r.test_success:.4f}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def table(self) -> str:
        best = self.best
        out = ["No. of Hidden Neurons  % Success Rate (test)  % Success Rate (train)"]
        for r in self.rows:
            mark = "  *" if r is best else ""
            out.append(f"{r.n_hidden:>21d}  {r.test_success:>21.2f}  {r.train_success:>22.2f}{mark}")
        return "\n".join(out)


def sweep(train: FeatureTable, test: FeatureTable, hidden_counts, cfg: classifier.TrainConfig,
          labels=None, model_dir=None) -> SweepReport:
    """Train and evaluate one fresh model per hidden-layer size."""
    counts = sorted(set(int(n) for n in hidden_counts))
    if not counts:
        raise ValueError("no hidden-layer sizes given")
    labels = tuple(labels) if labels else class_table(train, test)
    rows = []
    for n in counts:
        model = fit_model(train, n, cfg, labels)
        tr = evaluate_table(model, train).success_rate
        te = evaluate_table(model, test).success_rate
        log.info("n_hidden=%d train=%.2f%% test=%.2f%%", n, tr, te)
        if model_dir is not None:
            classifier.save_model(model, Path(model_dir) / f"model_h{n}.txt")
        rows.append(SweepRow(n, tr, te))
    return SweepReport(rows)


def parse_hidden(spec: str) -> list[int]:
    """``"20:65:5"`` -> 20, 25, ..., 65 (inclusive); ``"40"`` or ``"20,40"`` also accepted."""
    spec = spec.strip()
    if ":" in spec:
        parts = [int(p) for p in spec.split(":")]
        if len(parts) not in (2, 3):
            raise ValueError(f"bad range {spec!r}")
        start, stop = parts[0], parts[1]
        step = parts[2] if len(parts) == 3 else 1
        if step < 1 or stop < start:
            raise ValueError(f"bad range {spec!r}")
        return list(range(start, stop + 1, step))
    return [int(p) for p in spec.split(",") if p.strip()]
