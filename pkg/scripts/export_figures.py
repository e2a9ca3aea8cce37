"""Write the data behind the four set plots (primary and consequent sets, both controllers).

    python scripts/export_figures.py --out figures [--plot]

``--plot`` additionally renders PNGs with matplotlib if it is installed.
"""

import argparse
from pathlib import Path

from parafuzz.controller import PRESETS
from parafuzz.harness import consequent_csv, parse_strengths
from parafuzz.membership import make_partition, partition_csv

FIGURES = [
    ("fig1_primary_triangular.csv", "primary", "conventional"),
    ("fig2_consequent_clipped.csv", "consequent", "conventional"),
    ("fig3_primary_parabolic.csv", "primary", "parabolic"),
    ("fig4_consequent_scaled.csv", "consequent", "parabolic"),
]


def plot(csv_path: Path):
    import csv

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with csv_path.open() as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], [[float(v) for v in r] for r in rows[1:]]
    xs = [r[0] for r in data]
    fig, ax = plt.subplots(figsize=(7, 3))
    for j, name in enumerate(header[1:], start=1):
        style = {"color": "k", "lw": 2, "alpha": 0.4} if name == "envelope" else {}
        ax.plot(xs, [r[j] for r in data], label=name, **style)
    ax.set_xlabel("normalized universe")
    ax.set_ylabel("membership")
    ax.legend(ncol=8, fontsize=7)
    fig.tight_layout()
    fig.savefig(csv_path.with_suffix(".png"), dpi=120)
    plt.close(fig)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="figures")
    parser.add_argument("--samples", type=int, default=401)
    parser.add_argument("--strengths", default="NS=0.4,ZE=1.0,PS=0.7")
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    strengths = parse_strengths(args.strengths)
    for filename, what, preset in FIGURES:
        spec = PRESETS[preset]
        if what == "primary":
            text = partition_csv(make_partition(spec.kind), args.samples)
        else:
            text = consequent_csv(spec, strengths, args.samples)
        path = out / filename
        path.write_text(text)
        if args.plot:
            plot(path)
        print(path)


if __name__ == "__main__":
    main()
