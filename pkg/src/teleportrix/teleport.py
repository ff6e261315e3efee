"""Single-qubit teleportation over a partially entangled resource.

Alice holds an unknown qubit a = alpha |0> + beta |1> and qubit 1 of the
shared pair N (|00> + n |11>); Bob holds qubit 2. Alice measures (a, 1)
in the entangled family with parameters (l, p). Conditioned on outcome
k, Bob's unnormalized amplitudes are M_k (alpha, beta)^T for a fixed
2x2 transfer matrix M_k, so the four matrices carry the whole protocol:

    PhiPlus   N L diag(1, n l*)        PsiPlus   N P [[0, p*], [n, 0]]
    PhiMinus  N L diag(l, -n)          PsiMinus  N P [[0, -1], [n p, 0]]

An outcome teleports every input exactly (is "faithful") when
M^dag M = c I for some c > 0: Bob applies the adjoint of the polar
unitary factor of M and recovers the input with unit fidelity. For a
faithful outcome the probability ||M psi||^2 = c is the same for every
input, which is what makes the success probability state independent.
Faithfulness of each branch depends only on |l| or |p| versus |n| and
1/|n|; each faithful branch occurs with probability |n|^2/(1+|n|^2)^2.

Success probabilities reported by classify and run always come from
the matrices themselves; success_probability_analytic is the closed
form kept as a cross-check, never as the source of truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import measure, qcore
from .complexfmt import finite_complex
from .ebasis import BASIS_LABELS, BasisParams, general_basis, resource_state
from .errors import BadInput, NonFinite, SingularMatrix
from .qcore import PureState, _svd2
from .tolerances import TOL_EQ, TOL_NORM, TOL_PROB

INFINITE = math.inf

# Parameter choices with two faithful outcomes, indexed 0..3: join the
# basis parameters to the resource as (l, p) = (n, n*), (n, 1/n),
# (1/n*, 1/n), (1/n*, n*). Each leaves exactly the named pair faithful.
_TWO_FAITHFUL = (
    (lambda n: (n, n.conjugate()), ("PhiMinus", "PsiPlus")),
    (lambda n: (n, 1 / n), ("PhiMinus", "PsiMinus")),
    (lambda n: (1 / n.conjugate(), 1 / n), ("PhiPlus", "PsiMinus")),
    (lambda n: (1 / n.conjugate(), n.conjugate()), ("PhiPlus", "PsiPlus")),
)


@dataclass(frozen=True)
class ProtocolParams:
    """Resource parameter n and measurement basis parameters (l, p)."""

    n: complex
    ell: complex
    p: complex

    def __post_init__(self):
        object.__setattr__(self, "n", finite_complex(self.n, "n"))
        object.__setattr__(self, "ell", finite_complex(self.ell, "ell"))
        object.__setattr__(self, "p", finite_complex(self.p, "p"))

    @property
    def basis_params(self) -> BasisParams:
        return BasisParams(self.ell, self.p)


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """Map from input amplitudes to Bob's unnormalized conditioned pair."""

    label: str
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class OutcomeRecord:
    """One measurement branch of a protocol run.

    bob_state is the conditioned state after the correction unitary; it
    is None when the branch probability falls below TOL_PROB (then
    fidelity is None as well). faithful is a property of the transfer
    matrix, not of the particular input, so fidelity can be 1 for a
    lucky input even on an unfaithful branch.
    """

    label: str
    probability: float
    faithful: bool
    correction: np.ndarray
    bob_state: PureState | None
    fidelity: float | None


@dataclass(frozen=True)
class RegimeReport:
    """Classification of a parameter tuple by its faithful outcome count."""

    regime: str
    faithful_outcomes: tuple
    success_probability: float
    expected_repetitions: float


@dataclass(frozen=True, eq=False)
class RunResult:
    """Outcome records plus regime report; sampling fields when sampled."""

    records: tuple
    report: RegimeReport
    shots: int | None = None
    seed: int | None = None
    frequencies: dict | None = None
    shot_labels: tuple | None = None


def transfer_matrices(params: ProtocolParams) -> tuple:
    """The four transfer matrices, in canonical outcome-label order.

    They satisfy the completeness relation sum_k M_k^dag M_k = I, which
    is what makes the four branch probabilities sum to 1.
    """
    n, l, p = params.n, params.ell, params.p
    nw = 1.0 / math.sqrt(1.0 + abs(n) ** 2)
    lw = 1.0 / math.sqrt(1.0 + abs(l) ** 2)
    pw = 1.0 / math.sqrt(1.0 + abs(p) ** 2)
    mats = (
        TransferMatrix("PhiPlus", nw * lw * np.array([[1, 0], [0, n * l.conjugate()]], dtype=complex)),
        TransferMatrix("PhiMinus", nw * lw * np.array([[l, 0], [0, -n]], dtype=complex)),
        TransferMatrix("PsiPlus", nw * pw * np.array([[0, p.conjugate()], [n, 0]], dtype=complex)),
        TransferMatrix("PsiMinus", nw * pw * np.array([[0, -1], [n * p, 0]], dtype=complex)),
    )
    total = sum(tm.matrix.conj().T @ tm.matrix for tm in mats)
    assert np.max(np.abs(total - np.eye(2))) < TOL_NORM, "completeness violated"
    return mats


def is_faithful(tm: TransferMatrix) -> bool:
    """True iff M^dag M = c I for some c > 1e-12 (relative tolerance 1e-9)."""
    gram = tm.matrix.conj().T @ tm.matrix
    c = float(gram[0, 0].real + gram[1, 1].real) / 2.0
    if c <= 1e-12:
        return False
    return bool(np.max(np.abs(gram - c * np.eye(2))) <= TOL_EQ * c)


def branch_probability(tm: TransferMatrix) -> float:
    """Input-independent probability of a faithful branch (tr M^dag M / 2)."""
    gram = tm.matrix.conj().T @ tm.matrix
    return float(gram[0, 0].real + gram[1, 1].real) / 2.0


def correction_unitary(tm: TransferMatrix) -> np.ndarray:
    """Adjoint of the polar unitary factor of the transfer matrix.

    For a faithful matrix, U M is proportional to the identity, so Bob's
    application of U restores the input exactly. In the maximally
    entangled case the four corrections are the Pauli operators up to
    global phase. The same polar recipe is applied to unfaithful
    branches; it is input independent and gives a principled fidelity
    number there too.
    """
    u, sv, v = _svd2(tm.matrix)
    if sv[0] < 1e-12:
        raise SingularMatrix("transfer matrix is numerically zero")
    return v @ u.conj().T


def classify(params: ProtocolParams) -> RegimeReport:
    """Count faithful outcomes and total their state-independent probability."""
    mats = transfer_matrices(params)
    faithful = tuple(tm.label for tm in mats if is_faithful(tm))
    success = sum(branch_probability(tm) for tm in mats if is_faithful(tm))
    k = len(faithful)
    if k == 4:
        regime = "Deterministic"
    elif k == 0:
        regime = "NoFaithful"
    else:
        regime = f"Probabilistic(k={k})"
    repetitions = 1.0 / success if success > 0.0 else INFINITE
    return RegimeReport(regime, faithful, float(success), repetitions)


def success_probability_analytic(n, k: int = 2) -> float:
    """Closed form k |n|^2 / (1 + |n|^2)^2 for k faithful outcomes (k = 1 or 2)."""
    if k not in (1, 2):
        raise BadInput(f"k must be 1 or 2, got {k!r}")
    n = finite_complex(n, "n")
    mod2 = abs(n) ** 2
    return k * mod2 / (1.0 + mod2) ** 2


def expected_repetitions(n) -> float:
    """Literal repetition count (1 + |n|^2)^2 / |n|^2; INFINITE at n = 0.

    At |n| = 1 this evaluates to 4 while the reciprocal of the
    two-outcome success probability is 2; repetition_counts carries both
    numbers so reports can show them side by side.
    """
    n = finite_complex(n, "n")
    mod2 = abs(n) ** 2
    if mod2 == 0.0:
        return INFINITE
    return (1.0 + mod2) ** 2 / mod2


def repetition_counts(n) -> dict:
    """Both repetition figures: the literal formula and 1/P for two outcomes."""
    p2 = success_probability_analytic(n, k=2)
    return {
        "by_formula": expected_repetitions(n),
        "by_inverse_success": 1.0 / p2 if p2 > 0.0 else INFINITE,
    }


def two_faithful_choice(n, index: int) -> ProtocolParams:
    """One of the four basis choices leaving exactly two faithful outcomes."""
    n = finite_complex(n, "n")
    make, _ = _TWO_FAITHFUL[index]
    if index != 0 and n == 0:
        raise NonFinite("choice needs a nonzero resource parameter")
    l, p = make(n)
    return ProtocolParams(n, l, p)


def two_faithful_labels(index: int) -> tuple:
    """The outcome pair that choice `index` makes faithful."""
    return _TWO_FAITHFUL[index][1]


def one_faithful_choice(n, index: int) -> ProtocolParams:
    """One of the four single conditions, the other parameter kept generic.

    The generic value max(|n|, 1/|n|) + 1 is strictly larger than both
    moduli that would make its branch pair faithful.
    """
    n = finite_complex(n, "n")
    generic = complex(max(abs(n), 1.0 / abs(n) if n != 0 else 0.0) + 1.0)
    if index in (0, 3) and n == 0:
        raise NonFinite("choice needs a nonzero resource parameter")
    if index == 0:
        return ProtocolParams(n, 1 / n.conjugate(), generic)
    if index == 1:
        return ProtocolParams(n, n, generic)
    if index == 2:
        return ProtocolParams(n, generic, n.conjugate())
    if index == 3:
        return ProtocolParams(n, generic, 1 / n)
    raise BadInput(f"index must be 0..3, got {index!r}")


def one_faithful_labels(index: int) -> str:
    """The single outcome that one_faithful_choice(index) makes faithful."""
    return ("PhiPlus", "PhiMinus", "PsiPlus", "PsiMinus")[index]


def joint_state(input_amps, n) -> PureState:
    """Assembled three-qubit state: input on a, resource on (1, 2)."""
    alpha, beta = (finite_complex(a, "input amplitude") for a in input_amps)
    input_state = PureState(("a",), np.array([alpha, beta]))
    return qcore.tensor(input_state, resource_state(n))


def _validated_input(input_amps) -> np.ndarray:
    try:
        alpha, beta = (finite_complex(a, "input amplitude") for a in input_amps)
    except NonFinite as exc:
        raise BadInput(str(exc)) from None
    psi = np.array([alpha, beta], dtype=complex)
    if abs(float(np.vdot(psi, psi).real) - 1.0) > TOL_EQ:
        raise BadInput("input amplitudes must satisfy |alpha|^2 + |beta|^2 = 1")
    return psi


def run(input_amps, params: ProtocolParams, shots: int | None = None, seed: int | None = None) -> RunResult:
    """Run the protocol on one input state.

    With shots=None the result is exhaustive: all four outcome records
    with exact probabilities. With shots set, per-shot outcomes are
    drawn by inverse CDF from one generator seeded with `seed`, and the
    result additionally carries empirical frequencies and the shot
    labels (exhaustive records are still included).
    """
    psi = _validated_input(input_amps)
    mats = transfer_matrices(params)
    records = []
    for tm in mats:
        conditioned = tm.matrix @ psi
        prob = float(np.vdot(conditioned, conditioned).real)
        faithful = is_faithful(tm)
        try:
            correction = correction_unitary(tm)
        except SingularMatrix:
            correction = np.eye(2, dtype=complex)
        if prob < TOL_PROB:
            records.append(OutcomeRecord(tm.label, prob, faithful, correction, None, None))
            continue
        bob = PureState(("2",), correction @ conditioned / math.sqrt(prob))
        fid = qcore.fidelity(bob, PureState(("2",), psi))
        records.append(OutcomeRecord(tm.label, prob, faithful, correction, bob, fid))
    report = classify(params)
    if shots is None:
        return RunResult(tuple(records), report)
    if shots < 1:
        raise BadInput(f"shots must be >= 1, got {shots!r}")
    if seed is None:
        seed = 0
    cdf = np.cumsum([r.probability for r in records])
    draws = np.random.default_rng(seed).random(shots)
    indices = np.minimum(np.searchsorted(cdf, draws, side="right"), 3)
    labels = tuple(BASIS_LABELS[i] for i in indices)
    counts = {label: 0 for label in BASIS_LABELS}
    for label in labels:
        counts[label] += 1
    freqs = {label: counts[label] / shots for label in BASIS_LABELS}
    return RunResult(tuple(records), report, shots, seed, freqs, labels)


def measured_probabilities(input_amps, params: ProtocolParams) -> dict:
    """Branch probabilities via an actual projective measurement.

    Assembles the three-qubit state and projects the pair (a, 1); equals
    ||M_k psi||^2 from the transfer matrices. Kept as the independent
    route for verification.
    """
    state = joint_state(input_amps, params.n)
    basis = general_basis(params.basis_params)
    outcomes = measure.project_all(state, ("a", "1"), basis)
    return {o.label: o.probability for o in outcomes}
