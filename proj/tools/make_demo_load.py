#!/usr/bin/env python3
"""Write the synthetic hourly demo load (one year, W, positive = extraction)."""

import argparse

import numpy as np


def demo_load(seed: int = 7) -> np.ndarray:
    hours = np.arange(8760)
    day = hours / 24.0
    rng = np.random.default_rng(seed)
    # Cooling peaks in mid-summer (day ~200), heating in winter.
    seasonal = -45e3 * np.cos(2 * np.pi * (day - 200) / 365)
    daily = 10e3 * np.cos(2 * np.pi * (hours % 24 - 15) / 24) * np.where(seasonal < 0, -1.0, 1.0)
    noise = 3e3 * rng.standard_normal(hours.size)
    return -15e3 + seasonal + daily + noise


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    load = demo_load(args.seed)
    with open(args.output, "w") as f:
        f.write("hour,power_w\n")
        for h, p in enumerate(load):
            f.write(f"{h},{p:.1f}\n")


if __name__ == "__main__":
    main()
