"""Plot DI curves and metric sweeps written by reproduce_examples.py.

Needs matplotlib (``pip install -e .[plot]``).
"""

import argparse
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--results", default="results")
    args = ap.parse_args()
    res = Path(args.results)

    for ex in (1, 2, 3):
        fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4))
        for path in sorted(res.glob(f"curve_{ex}_*.csv")):
            param = path.stem.split("_")[-1]
            series = defaultdict(lambda: ([], []))
            for row in read(path):
                xs, ys = series[row["group"]]
                xs.append(float(row["proportion"]))
                ys.append(float(row["bin_di"]))
            for group, (xs, ys) in series.items():
                left.plot(xs, ys, label=f"{group}, param={param}")
        left.axhline(0.8, color="grey", ls="--", lw=0.8)
        left.set_xlabel("proportion rejected")
        left.set_ylabel("BinDI")
        left.legend(fontsize=7)

        sweep = defaultdict(lambda: ([], []))
        for row in read(res / f"sweep_{ex}.csv"):
            xs, ys = sweep[(row["group"], row["metric"])]
            xs.append(float(row["parameter"]))
            ys.append(float(row["value"]))
        for (group, metric), (xs, ys) in sorted(sweep.items()):
            right.plot(xs, ys, marker="o", ms=3, ls="-" if group == "a" else ":", label=f"{metric} ({group})")
        right.axhline(0.8, color="grey", ls="--", lw=0.8)
        right.set_xlabel("delta" if ex == 1 else "sigma")
        right.legend(fontsize=7, ncol=2)
        fig.suptitle(f"example {ex}")
        fig.tight_layout()
        fig.savefig(res / f"example_{ex}.png", dpi=120)
        plt.close(fig)


if __name__ == "__main__":
    main()
