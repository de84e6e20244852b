#!/usr/bin/env python3
"""Regenerate the built-in category fixture files."""

import json
import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "cardyalg", "fixtures")


def c(z):
    z = complex(z)
    return [z.real, z.imag]


def write(name, doc):
    path = os.path.join(OUT, name + ".json")
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    print("wrote", path)


def vec():
    return {
        "name": "vec",
        "rank": 1,
        "labels": ["1"],
        "dual": [0],
        "N": [[0, 0, 0, 1]],
        "F": [],
        "R": [],
        "theta": [c(1)],
        "tolerance": 1e-9,
        "dims": [c(1)],
    }


def vec_z2():
    # rank-2 modular category on Z2 fusion rules: the semion braiding
    i = 1j
    return {
        "name": "vec_z2",
        "rank": 2,
        "labels": ["1", "s"],
        "dual": [0, 1],
        "N": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]],
        "F": [[[1, 1, 1, 1, 0, 0], c(-1)]],
        "R": [[[1, 1, 0], c(i)]],
        "theta": [c(1), c(i)],
        "tolerance": 1e-9,
        "dims": [c(1), c(1)],
    }


def fibonacci():
    phi = (1 + math.sqrt(5)) / 2
    t = 1
    F = [
        [[t, t, t, t, 0, 0], c(1 / phi)],
        [[t, t, t, t, 0, t], c(1 / math.sqrt(phi))],
        [[t, t, t, t, t, 0], c(1 / math.sqrt(phi))],
        [[t, t, t, t, t, t], c(-1 / phi)],
    ]
    import cmath

    R = [
        [[t, t, 0], c(cmath.exp(-4j * cmath.pi / 5))],
        [[t, t, t], c(cmath.exp(3j * cmath.pi / 5))],
    ]
    return {
        "name": "fibonacci",
        "rank": 2,
        "labels": ["1", "tau"],
        "dual": [0, 1],
        "N": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]],
        "F": F,
        "R": R,
        "theta": [c(1), c(cmath.exp(4j * cmath.pi / 5))],
        "tolerance": 1e-9,
        "dims": [c(1), c(phi)],
    }


def ising(broken=False):
    import cmath

    s, p = 1, 2  # sigma, psi
    rt2 = math.sqrt(2)
    F = [
        [[s, s, s, s, 0, 0], c(1 / rt2)],
        [[s, s, s, s, 0, p], c(1 / rt2)],
        [[s, s, s, s, p, 0], c(1 / rt2)],
        [[s, s, s, s, p, p], c((1 if broken else -1) / rt2)],
        [[s, p, s, p, s, s], c(-1)],
        [[p, s, p, s, s, s], c(-1)],
    ]
    R = [
        [[s, s, 0], c(cmath.exp(-1j * cmath.pi / 8))],
        [[s, s, p], c(cmath.exp(3j * cmath.pi / 8))],
        [[s, p, s], c(-1j)],
        [[p, s, s], c(-1j)],
        [[p, p, 0], c(-1)],
    ]
    N = [
        [0, 0, 0, 1],
        [0, s, s, 1],
        [0, p, p, 1],
        [s, 0, s, 1],
        [p, 0, p, 1],
        [s, s, 0, 1],
        [s, s, p, 1],
        [s, p, s, 1],
        [p, s, s, 1],
        [p, p, 0, 1],
    ]
    doc = {
        "name": "ising_broken" if broken else "ising",
        "rank": 3,
        "labels": ["1", "sigma", "psi"],
        "dual": [0, 1, 2],
        "N": N,
        "F": F,
        "R": R,
        "theta": [c(1), c(cmath.exp(1j * cmath.pi / 8)), c(-1)],
        "tolerance": 1e-9,
    }
    if not broken:
        doc["dims"] = [c(1), c(rt2), c(1)]
    return doc


def main():
    os.makedirs(OUT, exist_ok=True)
    write("vec", vec())
    write("vec_z2", vec_z2())
    write("fibonacci", fibonacci())
    write("ising", ising())
    write("ising_broken", ising(broken=True))


if __name__ == "__main__":
    main()
