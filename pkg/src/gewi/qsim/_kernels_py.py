"""Pure-Python amplitude kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors every
function here with identical semantics. Amplitude vectors are plain lists of
``complex`` over ``n`` qubits, with the first member of a group stored in the
most significant bit of the index.
"""

from math import sqrt

_INV_SQRT2 = 1.0 / sqrt(2.0)

BACKEND = "python"


def kron(a, b):
    return [x * y for x in a for y in b]


def apply_x(amps, n, k):
    step = 1 << (n - 1 - k)
    out = list(amps)
    for i in range(len(amps)):
        if not i & step:
            out[i] = amps[i | step]
            out[i | step] = amps[i]
    return out


def apply_z(amps, n, k):
    step = 1 << (n - 1 - k)
    return [-a if i & step else a for i, a in enumerate(amps)]


def apply_h(amps, n, k):
    step = 1 << (n - 1 - k)
    out = list(amps)
    for i in range(len(amps)):
        if not i & step:
            a0 = amps[i]
            a1 = amps[i | step]
            out[i] = (a0 + a1) * _INV_SQRT2
            out[i | step] = (a0 - a1) * _INV_SQRT2
    return out


def apply_cnot(amps, n, c, t):
    cbit = 1 << (n - 1 - c)
    tbit = 1 << (n - 1 - t)
    out = list(amps)
    for i in range(len(amps)):
        if i & cbit and not i & tbit:
            out[i] = amps[i | tbit]
            out[i | tbit] = amps[i]
    return out


def prob_one(amps, n, k):
    """Probability that qubit ``k`` reads 1."""
    step = 1 << (n - 1 - k)
    total = 0.0
    for i in range(len(amps)):
        if i & step:
            a = amps[i]
            total += a.real * a.real + a.imag * a.imag
    return total


def collapse(amps, n, k, outcome, prob):
    """Project qubit ``k`` onto ``outcome`` and drop it from the vector.

    ``prob`` is the probability of ``outcome``; the result is renormalised
    by it and has length ``2 ** (n - 1)``.
    """
    step = 1 << (n - 1 - k)
    want = step if outcome else 0
    scale = 1.0 / sqrt(prob)
    return [a * scale for i, a in enumerate(amps) if i & step == want]
