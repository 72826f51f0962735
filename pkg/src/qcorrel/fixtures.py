"""The two worked example states, plus a Bell state for contrast."""

import math

from .core import BipartiteState, make_classical_mixture

QUTRIT_TERMS = ((1 / 3, 1, 1), (1 / 3, 2, 0), (1 / 3, 2, 2))


def qubit_terms(alpha):
    return ((alpha, 0, 0), (1.0 - alpha, 1, 1))


def qubit_state(alpha):
    """``alpha |00><00| + (1 - alpha) |11><11|`` for ``0 < alpha <= 1``."""
    if alpha == 1.0:
        return make_classical_mixture(2, 2, [(1.0, 0, 0)])
    return make_classical_mixture(2, 2, qubit_terms(alpha))


def qutrit_state():
    """``(|11><11| + |20><20| + |22><22|) / 3``."""
    return make_classical_mixture(3, 3, QUTRIT_TERMS)


def bell_state():
    """``(|00> + |11>) / sqrt(2)`` as a density matrix."""
    amp = 1.0 / math.sqrt(2.0)
    return BipartiteState.from_ket([amp, 0.0, 0.0, amp], 2, 2)


def _mixture_doc(dims, terms):
    return {"dims": list(dims), "mixture": [{"w": w, "i": i, "j": j} for w, i, j in terms]}


def qubit_document(alpha=0.3):
    return _mixture_doc((2, 2), qubit_terms(alpha))


def qutrit_document():
    return _mixture_doc((3, 3), QUTRIT_TERMS)


FIXTURE_FILES = {
    "qubit_alpha.json": qubit_document,
    "qutrit.json": qutrit_document,
}
