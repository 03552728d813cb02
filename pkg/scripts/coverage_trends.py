"""Sweep altitude and plot coverage mean and variance for two shell densities.

The dense shell (1e-12 per m^2, roughly a thousand visible-capable
satellites) loses mean coverage monotonically with altitude while its
variance peaks mid-sweep; the sparse shell gains coverage up to an
interior optimum because higher shells keep the cap populated.

Usage:
    python scripts/coverage_trends.py --out trends.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from leometa import SystemConfig, default_rules, derive, moment


def sweep(density, theta, alts_km, rules):
    m1s, variances = [], []
    for alt_km in alts_km:
        cfg = SystemConfig(altitude=alt_km * 1e3, density=density, sir_threshold=theta)
        geo = derive(cfg)
        m1 = moment(1, theta, cfg, geo, rules).value
        m2 = moment(2, theta, cfg, geo, rules).value
        m1s.append(m1)
        variances.append(m2 - m1 * m1)
    return np.array(m1s), np.array(variances)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta", type=float, default=0.1, help="SIR threshold (linear)")
    ap.add_argument("--quad-order", type=int, default=768)
    ap.add_argument("--out", default="coverage_trends.png")
    args = ap.parse_args()

    alts_km = np.arange(200, 1501, 50)
    rules = default_rules(args.quad_order)

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for density, label in ((1e-12, "dense shell 1e-12"), (1e-13, "sparse shell 1e-13")):
        m1s, variances = sweep(density, args.theta, alts_km, rules)
        axes[0].plot(alts_km, m1s, marker=".", label=label)
        axes[1].plot(alts_km, variances, marker=".", label=label)
    axes[0].set_xlabel("altitude [km]")
    axes[0].set_ylabel("mean conditional coverage")
    axes[1].set_xlabel("altitude [km]")
    axes[1].set_ylabel("variance across realizations")
    for ax in axes:
        ax.grid(alpha=0.3)
        ax.legend()
    fig.suptitle(f"theta = {args.theta:g}")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
