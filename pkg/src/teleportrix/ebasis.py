"""Two-parameter family of entangled two-qubit bases and resource states.

The family splits into an even-parity pair supported on |00>, |11> and
an odd-parity pair supported on |01>, |10>:

    PhiPlus  = L (|00> + l |11>)        PsiPlus  = P (|01> + p |10>)
    PhiMinus = L (l* |00> - |11>)       PsiMinus = P (p* |01> - |10>)

with L = 1/sqrt(1 + |l|^2) and P = 1/sqrt(1 + |p|^2). l = p = 0 gives
the computational basis, l = p = 1 the Bell basis, and intermediate
values carry intermediate entanglement. The conjugates in the minus
vectors are kept exactly as written; no re-phasing is applied, so the
teleportation transfer matrices read off the same coefficients.

The shared resource is the one-parameter cousin N (|00> + n |11>).
Anywhere these entry points take a complex parameter they also accept
the text format of complexfmt.parse_complex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .complexfmt import finite_complex
from .errors import ParseError
from .qcore import PureState

BASIS_LABELS = ("PhiPlus", "PhiMinus", "PsiPlus", "PsiMinus")

# Coefficients of each computational basis vector on its parity pair:
# |00> = L (PhiPlus + l PhiMinus)      |01> = P (PsiPlus + p PsiMinus)
# |11> = L (l* PhiPlus - PhiMinus)     |10> = P (p* PsiPlus - PsiMinus)
_EXPANSIONS = {
    "00": ("ell", lambda c, w: (w, w * c)),
    "11": ("ell", lambda c, w: (w * c.conjugate(), -w)),
    "01": ("p", lambda c, w: (w, w * c)),
    "10": ("p", lambda c, w: (w * c.conjugate(), -w)),
}


@dataclass(frozen=True)
class BasisParams:
    """Parameters (l, p) of one entangled basis; finite complex numbers."""

    ell: complex
    p: complex

    def __post_init__(self):
        object.__setattr__(self, "ell", finite_complex(self.ell, "ell"))
        object.__setattr__(self, "p", finite_complex(self.p, "p"))


@dataclass(frozen=True, eq=False)
class EntangledBasis:
    """Four orthonormal two-qubit vectors keyed by outcome label."""

    params: BasisParams
    vectors: dict

    def vector(self, label: str) -> PureState:
        return self.vectors[label]


def _weight(c: complex) -> float:
    return 1.0 / math.sqrt(1.0 + abs(c) ** 2)


def general_basis(params: BasisParams, labels: Sequence = ("0", "1")) -> EntangledBasis:
    """Construct the basis for given (l, p) on a named qubit pair."""
    if not isinstance(params, BasisParams):
        params = BasisParams(*params)
    l, p = params.ell, params.p
    lw, pw = _weight(l), _weight(p)
    labels_t = tuple(labels)
    vectors = {
        "PhiPlus": PureState(labels_t, np.array([lw, 0, 0, lw * l])),
        "PhiMinus": PureState(labels_t, np.array([lw * l.conjugate(), 0, 0, -lw])),
        "PsiPlus": PureState(labels_t, np.array([0, pw, pw * p, 0])),
        "PsiMinus": PureState(labels_t, np.array([0, pw * p.conjugate(), -pw, 0])),
    }
    return EntangledBasis(params, vectors)


def resource_state(n, labels: Sequence = ("1", "2")) -> PureState:
    """Shared resource N (|00> + n |11>) with N = 1/sqrt(1 + |n|^2)."""
    n = finite_complex(n, "n")
    w = _weight(n)
    return PureState(tuple(labels), np.array([w, 0, 0, w * n]))


def basis_entropy(c) -> float:
    """Entanglement (ebits) of a family vector with parameter c.

    Evaluates -w log2 w - w |c|^2 log2(w |c|^2) with w = 1/(1 + |c|^2),
    reading 0 log 0 as 0. Equals the von Neumann entropy of either
    one-qubit reduction of the vector.
    """
    c = finite_complex(c, "c")
    w0 = 1.0 / (1.0 + abs(c) ** 2)
    w1 = w0 * abs(c) ** 2
    h = 0.0
    for w in (w0, w1):
        if w > 0.0:
            h -= w * math.log2(w)
    return min(max(h, 0.0), 1.0)


def expand_computational(bits: str, params: BasisParams) -> tuple:
    """Coefficients of a computational vector on its parity pair.

    Returns (coefficient on the plus vector, coefficient on the minus
    vector); the pair is (PhiPlus, PhiMinus) for "00"/"11" and
    (PsiPlus, PsiMinus) for "01"/"10".
    """
    if not isinstance(params, BasisParams):
        params = BasisParams(*params)
    try:
        which, rule = _EXPANSIONS[bits]
    except KeyError:
        raise ParseError(f"computational label must be 00/01/10/11, got {bits!r}") from None
    c = params.ell if which == "ell" else params.p
    return rule(c, _weight(c))
