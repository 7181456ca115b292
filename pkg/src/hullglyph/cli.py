"""Command-line harness: ``hullglyph <command> ...``.

Exit status is 0 on success and 2 on validation errors.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import classifier, harness
from .deficiency import analyze_deficiency, render_ascii
from .errors import HullglyphError
from .features import extract_features
from .geometry import hull_center, hull_of_mask, polygon_area, rasterize_hull
from .imaging import normalize_cg
from .pnm import read_binary
from .synth import generate_corpus


def cmd_hull(args):
    img = read_binary(args.image, args.threshold)
    if args.normalize:
        img = normalize_cg(img, harness.get_modality(args.normalize).normalization)
    hull = hull_of_mask(img.pixels)
    print(f"vertices ({hull.vertex_count}):",
          " ".join(f"({p.col},{p.row})" for p in hull.vertices))
    print(f"area: {polygon_area(hull):g}")
    cx, cy = hull_center(hull)
    print(f"centroid: ({cx:.4f}, {cy:.4f})")
    mask = rasterize_hull(hull, img.width, img.height)
    dmap = analyze_deficiency(img, mask)
    print(f"bays: {dmap.n_bays}  lakes: {dmap.n_lakes}")
    print(render_ascii(dmap, mask))
    if args.features:
        vec = extract_features(img)
        print(" ".join(repr(float(v)) for v in vec))


def cmd_features(args):
    manifest = harness.load_manifest(args.manifest, args.modality)
    table = harness.build_features(manifest, threshold=args.threshold, workers=args.jobs)
    harness.write_feature_csv(table, args.out)
    skipped = len(manifest) - len(table)
    print(f"wrote {len(table)} rows to {args.out} ({skipped} skipped)")


def _read_rows(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        rows = list(reader)
    if not header or "label" not in header:
        raise harness.ManifestError(f"{path}: no 'label' column", row=1)
    return header, rows


def cmd_split(args):
    header, rows = _read_rows(args.table)
    col = header.index("label")
    tr, te = harness.stratified_split([r[col] for r in rows], args.train_fraction, args.seed)
    base = Path(args.table)
    for name, idx, out in (("train", tr, args.train_out), ("test", te, args.test_out)):
        out = Path(out) if out else base.with_name(f"{base.stem}_{name}{base.suffix}")
        with out.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows[i] for i in idx)
        print(f"{name}: {len(idx)} rows -> {out}")


def _config(args):
    return classifier.TrainConfig(learning_rate=args.eta, momentum=args.alpha,
                                  epochs=args.epochs, seed=args.seed,
                                  shuffle=not args.no_shuffle)


def cmd_train(args):
    table = harness.read_feature_csv(args.features)
    labels = harness.get_modality(args.modality).labels if args.modality else None
    model = harness.fit_model(table, args.hidden, _config(args), labels)
    classifier.save_model(model, args.out)
    report = harness.evaluate_table(model, table)
    print(f"train success: {report.success_rate:.2f}% ({report.correct}/{report.count})")
    print(f"model -> {args.out}")


def cmd_eval(args):
    model = classifier.load_model(args.model)
    table = harness.read_feature_csv(args.features)
    report = harness.evaluate_table(model, table)
    print(f"success rate: {report.success_rate:.2f}% ({report.correct}/{report.count})")
    if args.confusion:
        width = max(len(lab) for lab in model.labels) + 1
        print(" " * width + "".join(f"{lab:>6}" for lab in model.labels))
        for lab, row in zip(model.labels, report.confusion):
            print(f"{lab:>{width - 1}} " + "".join(f"{v:>6d}" for v in row))


def cmd_sweep(args):
    table = harness.read_feature_csv(args.features)
    if args.test:
        train, test = table, harness.read_feature_csv(args.test)
    else:
        tr, te = harness.stratified_split(table.labels, args.train_fraction, args.seed)
        train, test = table.subset(tr), table.subset(te)
    labels = harness.get_modality(args.modality).labels if args.modality else None
    if args.model_dir:
        Path(args.model_dir).mkdir(parents=True, exist_ok=True)
    report = harness.sweep(train, test, harness.parse_hidden(args.hidden), _config(args),
                           labels, model_dir=args.model_dir)
    print(report.table())
    if args.out:
        Path(args.out).write_text(report.to_csv())
    if args.plot_data:
        Path(args.plot_data).write_text(report.plot_data())


def cmd_synth(args):
    manifest = generate_corpus(args.out, args.classes, args.per_class, args.seed)
    print(f"wrote {args.classes * args.per_class} glyphs, manifest -> {manifest}")


def _add_train_opts(p):
    p.add_argument("--eta", type=float, default=0.8, help="learning rate")
    p.add_argument("--alpha", type=float, default=0.7, help="momentum")
    p.add_argument("--epochs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-shuffle", action="store_true")
    p.add_argument("--modality", choices=sorted(harness.MODALITIES),
                   help="fix the class table to the modality's classes")


def build_parser():
    parser = argparse.ArgumentParser(prog="hullglyph", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hull", help="hull, area, centroid and bay/lake map of one image")
    p.add_argument("image")
    p.add_argument("--threshold", type=int, help="fixed gray threshold (default: Otsu)")
    p.add_argument("--normalize", choices=sorted(harness.MODALITIES),
                   help="normalize to the modality's raster first")
    p.add_argument("--features", action="store_true", help="also print the 125 features")
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("features", help="extract the feature CSV for a manifest")
    p.add_argument("manifest")
    p.add_argument("--modality", choices=sorted(harness.MODALITIES), default="digits")
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=int, help="fixed gray threshold (default: Otsu)")
    p.add_argument("--jobs", type=int, help="worker processes (capped by HULLGLYPH_THREADS)")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("split", help="stratified train/test split of a manifest or feature CSV")
    p.add_argument("table")
    p.add_argument("--train-fraction", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-out")
    p.add_argument("--test-out")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train", help="train one MLP on a feature CSV")
    p.add_argument("features")
    p.add_argument("--hidden", type=int, required=True)
    p.add_argument("--out", required=True)
    _add_train_opts(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate a saved model on a feature CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--confusion", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="train/evaluate across hidden-layer sizes")
    p.add_argument("features", help="feature CSV (training set if --test is given)")
    p.add_argument("--test", help="separate test feature CSV")
    p.add_argument("--train-fraction", type=float, default=0.8)
    p.add_argument("--hidden", default="20:65:5", help="start:stop:step (inclusive) or a,b,c")
    p.add_argument("--out", help="report CSV")
    p.add_argument("--plot-data", help="n_hidden vs test success CSV")
    p.add_argument("--model-dir", help="save each trained model here")
    _add_train_opts(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("synth", help="generate a seeded synthetic glyph corpus")
    p.add_argument("--classes", type=int, default=10)
    p.add_argument("--per-class", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="synth")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (HullglyphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
