#!/usr/bin/env python3
"""Plot the fig3 detection-probability curves produced by `fbs fig3`."""

import argparse
import csv
import pathlib

import matplotlib.pyplot as plt


def read_curves(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, data = rows[0], rows[1:]
    gt = [float(r[0]) for r in data]
    curves = {h: [float(r[i]) for r in data]
              for i, h in enumerate(header) if i > 0}
    return gt, curves


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=pathlib.Path,
                    help="output directory of an `fbs fig3` run")
    ap.add_argument("--save", type=pathlib.Path,
                    help="write the figure here instead of showing it")
    args = ap.parse_args()

    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharey=True)
    for ax, name, title in zip(axes,
                               ("fig3_lossless.csv", "fig3_lossy.csv"),
                               ("lossless", "gamma = g")):
        gt, curves = read_curves(args.out_dir / name)
        for label, ys in curves.items():
            ax.plot(gt, ys, label=label)
        ax.set_title(title)
        ax.set_xlabel("gt")
        ax.legend()
    axes[0].set_ylabel("detection probability")
    fig.tight_layout()

    if args.save:
        fig.savefig(args.save, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
