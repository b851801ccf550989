import numpy as np
import pytest

import almostconv as ac


@pytest.fixture(scope="session")
def generator_corpus():
    """Generators with exactly known almost-convergence limits, rendered.

    Each entry: (name, spec, signal, known_limit or None).
    """
    entries = []

    def add(name, spec, signal):
        entries.append((name, spec, signal, ac.known_limit(spec)))

    add("constant", ac.TrigPoly(((2.0, 0.0),)),
        ac.render_discrete(ac.TrigPoly(((2.0, 0.0),)), 0, 4096))
    add("char_half", ac.Character(0.5),
        ac.render_discrete(ac.Character(0.5), 0, 2 ** 14))
    add("char_seventh", ac.Character(1 / 7),
        ac.render_discrete(ac.Character(1 / 7), -2 ** 14, 2 ** 14))
    add("trig_poly", ac.TrigPoly(((0.7, 0.0), (0.4, 1 / 8), (0.2 - 0.1j, -1 / 4))),
        ac.render_discrete(
            ac.TrigPoly(((0.7, 0.0), (0.4, 1 / 8), (0.2 - 0.1j, -1 / 4))),
            0, 2 ** 14))
    add("measure", ac.MeasureTransform(((0.0, 0.3), (0.2, 0.35), (-0.2, 0.35))),
        ac.render_continuous(
            ac.MeasureTransform(((0.0, 0.3), (0.2, 0.35), (-0.2, 0.35))),
            -2048.0, 0.5, 8193))
    add("dirichlet", ac.DirichletLine((1, 1), 2.0),
        ac.render_continuous(ac.DirichletLine((1, 1), 2.0), 0.0, 0.05, 81921))
    add("convergent", ac.Convergent(2.0),
        ac.render_continuous(ac.Convergent(2.0), 0.0, 0.25, 2049))
    add("blocks", ac.BlockSequence(),
        ac.render_discrete(ac.BlockSequence(), 0, 2 ** 16))
    add("partial_sums", ac.PartialSums(ac.Character(0.5)),
        ac.render_discrete(ac.PartialSums(ac.Character(0.5)), 0, 2 ** 14))
    return entries


def brute_window_mean(values, n_min, k, shift, sidedness="two"):
    """Independent window-mean oracle: explicit Python summation."""
    if sidedness == "two":
        idx = range(shift - k, shift + k + 1)
        width = 2 * k + 1
    else:
        idx = range(shift, shift + k)
        width = k
    total = 0
    for n in idx:
        total += values[n - n_min]
    return total / width
