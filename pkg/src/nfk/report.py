"""Figures written next to the tabular/JSON reports."""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_invariants(fi, path):
    """log10 of the torsion order against p, one marker per prime ideal."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    by_f = {}
    for r in fi.records:
        if r.ord is not None and r.ord > 0:
            by_f.setdefault(r.f, []).append((r.p, math.log10(r.ord)))
    for f in sorted(by_f):
        xs, ys = zip(*by_f[f])
        ax.scatter(xs, ys, s=14, label=f"f = {f}")
    bad = [r.p for r in fi.records if not r.good]
    for p in bad:
        ax.axvline(p, color="0.8", lw=0.8, zorder=0)
    ax.set_xlabel("p")
    ax.set_ylabel("log10 ord")
    ax.set_title(f"unit class torsion orders, {fi.field}")
    if by_f:
        ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_equiv(left, right, verdict, path, labels=("left", "right")):
    """Splitting numbers of both fields against p; excluded primes greyed out."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for fp, label, style in ((left, labels[0], "o"), (right, labels[1], "x")):
        pts = [(p, e["g"]) for p, e in sorted(fp.primes.items()) if "g" in e]
        if pts:
            xs, ys = zip(*pts)
            ax.plot(xs, ys, style, ms=4, label=label)
    for p in verdict.excluded:
        ax.axvline(p, color="0.85", lw=0.8, zorder=0)
    if not verdict.equivalent:
        ax.axvline(verdict.prime, color="red", lw=1.0)
    ax.set_xlabel("p")
    ax.set_ylabel("g(p)")
    ax.set_title(verdict.describe())
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
